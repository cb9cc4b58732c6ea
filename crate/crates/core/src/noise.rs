//! Pauli-frame Monte Carlo for a noisy logical circuit between an ideal
//! encoder and ideal syndrome readout.
//!
//! Only the binary part of the frame is tracked: a global sign never changes
//! the syndrome or the logical action.

use std::io::{BufRead, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::circuit::{Circuit, Gate};
use crate::code::CodeInstance;
use crate::error::{Error, Result};
use crate::pauli::{PauliKind, PauliOperator, Sign};

/// Two-sided 95% normal quantile used for all intervals.
pub const Z95: f64 = 1.96;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    p1: f64,
    p2: f64,
}

impl NoiseModel {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        for p in [p1, p2] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidProbability(p));
            }
        }
        Ok(Self { p1, p2 })
    }

    pub fn noiseless() -> Self {
        Self { p1: 0.0, p2: 0.0 }
    }

    pub fn p1(&self) -> f64 {
        self.p1
    }

    pub fn p2(&self) -> f64 {
        self.p2
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0
    }
}

/// Sign-free frame, `[x | z]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Frame {
    x: BitVec,
    z: BitVec,
}

impl Frame {
    fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
        }
    }

    /// Conjugation by `g`, wires 0-based, sign dropped.
    fn conjugate(&mut self, g: &Gate) {
        match *g {
            Gate::H(q) => {
                let (x, z) = (self.x.get(q - 1), self.z.get(q - 1));
                self.x.set(q - 1, z);
                self.z.set(q - 1, x);
            }
            Gate::P(q) | Gate::Pdg(q) => {
                if self.x.get(q - 1) {
                    self.z.flip(q - 1);
                }
            }
            Gate::X(_) | Gate::Z(_) => {}
            Gate::CX { control, target } => {
                let (c, t) = (control - 1, target - 1);
                if self.x.get(c) {
                    self.x.flip(t);
                }
                if self.z.get(t) {
                    self.z.flip(c);
                }
            }
            Gate::CZ(a, b) => {
                let (a, b) = (a - 1, b - 1);
                let (xa, xb) = (self.x.get(a), self.x.get(b));
                if xb {
                    self.z.flip(a);
                }
                if xa {
                    self.z.flip(b);
                }
            }
        }
    }

    /// Left-multiplies by a single-site Pauli, 0-based wire.
    fn hit(&mut self, q: usize, kind: PauliKind) {
        let (x, z) = kind.bits();
        if x {
            self.x.flip(q);
        }
        if z {
            self.z.flip(q);
        }
    }

    fn into_pauli(self) -> PauliOperator {
        PauliOperator::from_bits(self.x, self.z, Sign::Plus).expect("equal lengths")
    }
}

const KINDS: [PauliKind; 4] = [PauliKind::I, PauliKind::X, PauliKind::Y, PauliKind::Z];

/// Error after one gate as at most two `(wire, kind)` sites, 1-based wires.
fn draw_error<R: Rng + ?Sized>(
    g: &Gate,
    model: &NoiseModel,
    rng: &mut R,
) -> Option<[(usize, PauliKind); 2]> {
    let (wires, arity) = g.wires().as_slice();
    if arity == 1 {
        if model.p1 > 0.0 && rng.random::<f64>() < model.p1 {
            let k = KINDS[rng.random_range(1..4)];
            return Some([(wires[0], k), (wires[0], PauliKind::I)]);
        }
    } else if model.p2 > 0.0 && rng.random::<f64>() < model.p2 {
        let idx = rng.random_range(1..16);
        return Some([(wires[0], KINDS[idx / 4]), (wires[1], KINDS[idx % 4])]);
    }
    None
}

/// The Pauli (possibly identity) that the channel after `g` applies on an
/// `n`-qubit register.
pub fn sample_gate_error<R: Rng + ?Sized>(
    n: usize,
    g: &Gate,
    model: &NoiseModel,
    rng: &mut R,
) -> Result<PauliOperator> {
    g.validate(n)?;
    let mut f = Frame::identity(n);
    if let Some(sites) = draw_error(g, model, rng) {
        for (w, k) in sites {
            f.hit(w - 1, k);
        }
    }
    Ok(f.into_pauli())
}

fn propagate<R: Rng + ?Sized>(c: &Circuit, model: &NoiseModel, rng: &mut R) -> Frame {
    let mut f = Frame::identity(c.n());
    for g in c.gates() {
        f.conjugate(g);
        if let Some(sites) = draw_error(g, model, rng) {
            for (w, k) in sites {
                f.hit(w - 1, k);
            }
        }
    }
    f
}

/// Net Pauli error at the end of `c`, sign dropped.
pub fn run_frame<R: Rng + ?Sized>(c: &Circuit, model: &NoiseModel, rng: &mut R) -> PauliOperator {
    propagate(c, model, rng).into_pauli()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameOutcome {
    Rejected,
    AcceptedFault,
    Success,
}

fn classify_bits(x: &BitVec, z: &BitVec) -> FrameOutcome {
    let n = x.len();
    // syndrome bit of X_[n] is |z| mod 2, of Z_[n] is |x| mod 2
    if x.count_ones() % 2 == 1 || z.count_ones() % 2 == 1 {
        return FrameOutcome::Rejected;
    }
    let trivial = |v: &BitVec| v.count_ones() == 0 || v.count_ones() == n;
    if trivial(x) && trivial(z) {
        FrameOutcome::Success
    } else {
        FrameOutcome::AcceptedFault
    }
}

pub fn classify_frame(e: &PauliOperator, code: &CodeInstance) -> Result<FrameOutcome> {
    if e.n() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            found: e.n(),
        });
    }
    Ok(classify_bits(e.x_bits(), e.z_bits()))
}

/// Wilson score interval for `hits` out of `n` at normal quantile `z`.
pub fn wilson_interval(hits: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let nf = n as f64;
    let p = hits as f64 / nf;
    let z2 = z * z;
    let denom = 1.0 + z2 / nf;
    let centre = (p + z2 / (2.0 * nf)) / denom;
    let half = z / denom * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt();
    ((centre - half).max(0.0), (centre + half).min(1.0))
}

/// Half the width of the 95% Wilson interval.
pub fn wilson_half_width(hits: u64, n: u64) -> f64 {
    let (lo, hi) = wilson_interval(hits, n, Z95);
    (hi - lo) / 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimStats {
    pub shots: u64,
    pub accepted: u64,
    pub successes: u64,
    pub seed: u64,
}

impl SimStats {
    pub fn p_acc(&self) -> f64 {
        self.accepted as f64 / self.shots as f64
    }

    pub fn p_succ(&self) -> f64 {
        self.successes as f64 / self.shots as f64
    }

    pub fn p_acc_ci(&self) -> f64 {
        wilson_half_width(self.accepted, self.shots)
    }

    pub fn p_succ_ci(&self) -> f64 {
        wilson_half_width(self.successes, self.shots)
    }
}

/// Generator for shot `shot` under `seed`; independent of scheduling.
pub fn shot_rng(seed: u64, shot: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shot);
    rng
}

pub fn simulate(c: &Circuit, model: &NoiseModel, shots: u64, seed: u64) -> Result<SimStats> {
    if shots == 0 {
        return Err(Error::NoShots);
    }
    if c.n() % 2 == 1 {
        return Err(Error::OddK(c.n().saturating_sub(2)));
    }
    let (accepted, successes) = (0..shots)
        .into_par_iter()
        .map(|shot| {
            let f = propagate(c, model, &mut shot_rng(seed, shot));
            match classify_bits(&f.x, &f.z) {
                FrameOutcome::Rejected => (0u64, 0u64),
                FrameOutcome::AcceptedFault => (1, 0),
                FrameOutcome::Success => (1, 1),
            }
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(SimStats {
        shots,
        accepted,
        successes,
        seed,
    })
}

/// splitmix64 finalizer folded over `parts`, for deriving independent seeds.
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mix = |mut z: u64| {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    parts.iter().fold(mix(base), |acc, &p| mix(acc ^ p))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub k: usize,
    pub h: usize,
    pub placement: String,
    /// `sas` or `pbs:<strategy>`
    pub strategy: String,
    pub p1: f64,
    pub p2: f64,
    pub shots: u64,
    pub seed: u64,
    pub p_acc: f64,
    pub p_acc_ci: f64,
    pub p_succ: f64,
    pub p_succ_ci: f64,
    pub depth: usize,
    pub twoq: usize,
}

impl SimRow {
    pub fn new(
        placement: &crate::kernel::HadamardPlacement,
        strategy: String,
        model: &NoiseModel,
        circuit: &Circuit,
        stats: &SimStats,
    ) -> Self {
        Self {
            k: placement.k(),
            h: placement.h(),
            placement: placement.indices_string(";"),
            strategy,
            p1: model.p1,
            p2: model.p2,
            shots: stats.shots,
            seed: stats.seed,
            p_acc: stats.p_acc(),
            p_acc_ci: stats.p_acc_ci(),
            p_succ: stats.p_succ(),
            p_succ_ci: stats.p_succ_ci(),
            depth: circuit.depth(),
            twoq: circuit.two_qubit_count(),
        }
    }
}

pub const SIM_CSV_TAG: &str = "# qsk simulate v1";

pub fn write_sim_csv<W: Write>(rows: &[SimRow], mut out: W) -> Result<()> {
    writeln!(out, "{SIM_CSV_TAG}")?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sim_csv<R: BufRead>(input: R) -> Result<Vec<SimRow>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    let rows = r.deserialize().collect::<std::result::Result<Vec<SimRow>, _>>()?;
    Ok(rows)
}
