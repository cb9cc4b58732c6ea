//! Logical-constraint synthesis: every physical Clifford that implements a
//! kernel on the code, preserves both stabilizers, and fixes each stabilizer
//! with sign `+1`.
//!
//! A solution is determined by where it sends a pair of pure errors. Inputs
//! use `E_1 = Z_n` and `E_2 = X_1`; the outputs are any partners `E'_j` of
//! the stabilizers that commute with all logical images, and the freedom left
//! is `E'_j -> E'_j + sum_m A_jm S_m` with `A` symmetric over GF(2), i.e.
//! eight maps. Label `a11 + 2 a12 + 4 a22` names each one.

use std::collections::BTreeSet;
use std::io::{BufRead, Write};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{solve_combination, solve_linear_system, BitVec};
use crate::circuit::Circuit;
use crate::code::CodeInstance;
use crate::error::{Error, Result};
use crate::kernel::{logical_action, HadamardPlacement};
use crate::pauli::{PauliOperator, Sign};
use crate::strategies::{emit, StrategyId};
use crate::synth::synthesize;
use crate::tableau::{tableau_of, SymplecticMatrix};
use crate::verify::verify;

/// `2k + 2` input/output pairs: logical rows `X_1, Z_1, X_2, ...`, then the
/// two stabilizers mapped to themselves.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    placement: HadamardPlacement,
    code: CodeInstance,
    rows: Vec<(PauliOperator, PauliOperator)>,
}

impl ConstraintSystem {
    pub fn placement(&self) -> &HadamardPlacement {
        &self.placement
    }

    pub fn code(&self) -> &CodeInstance {
        &self.code
    }

    pub fn rows(&self) -> &[(PauliOperator, PauliOperator)] {
        &self.rows
    }

    pub fn logical_rows(&self) -> &[(PauliOperator, PauliOperator)] {
        &self.rows[..2 * self.code.k()]
    }
}

pub fn build_constraints(p: &HadamardPlacement) -> Result<ConstraintSystem> {
    let code = CodeInstance::new(p.k())?;
    let action = logical_action(p);
    let mut rows = Vec::with_capacity(2 * p.k() + 2);
    for i in 1..=p.k() {
        let (lx, lz) = code.logical_reps(i)?;
        rows.push((lx, code.embed(action.x_image(i))?));
        rows.push((lz, code.embed(action.z_image(i))?));
    }
    for s in code.stabilizer_list() {
        rows.push((s.clone(), s));
    }
    Ok(ConstraintSystem {
        placement: p.clone(),
        code,
        rows,
    })
}

/// Symmetric `2x2` GF(2) matrix, indexed by its label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SymmetricBlock {
    pub a11: bool,
    pub a12: bool,
    pub a22: bool,
}

impl SymmetricBlock {
    pub fn from_label(label: u8) -> Self {
        Self {
            a11: label & 1 != 0,
            a12: label & 2 != 0,
            a22: label & 4 != 0,
        }
    }

    pub fn label(self) -> u8 {
        self.a11 as u8 | (self.a12 as u8) << 1 | (self.a22 as u8) << 2
    }

    pub fn all() -> impl Iterator<Item = SymmetricBlock> {
        (0..8).map(Self::from_label)
    }

    fn row(self, j: usize) -> [bool; 2] {
        match j {
            0 => [self.a11, self.a12],
            _ => [self.a12, self.a22],
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolutionDescriptor {
    pub block: SymmetricBlock,
    pub tableau: SymplecticMatrix,
    pub circuit: Circuit,
}

impl SolutionDescriptor {
    pub fn label(&self) -> u8 {
        self.block.label()
    }
}

/// Partners of the two stabilizers that commute with every given logical
/// operator and with each other.
fn pure_errors(logicals: &[PauliOperator], stabs: &[PauliOperator; 2]) -> Result<[PauliOperator; 2]> {
    let n = stabs[0].n();
    // <v, w> = v . swap(w)
    let swapped = |w: &PauliOperator| w.z_bits().concat(w.x_bits());
    let mut out: Vec<PauliOperator> = Vec::with_capacity(2);
    for m in 0..2 {
        let mut eqs: Vec<BitVec> = logicals.iter().map(swapped).collect();
        let mut rhs: Vec<bool> = vec![false; logicals.len()];
        for (j, s) in stabs.iter().enumerate() {
            eqs.push(swapped(s));
            rhs.push(j == m);
        }
        for e in &out {
            eqs.push(swapped(e));
            rhs.push(false);
        }
        let v = solve_linear_system(&eqs, 2 * n, &BitVec::from_bools(&rhs)).ok_or_else(|| {
            Error::InconsistentConstraints("no pure error for the stabilizers".into())
        })?;
        out.push(PauliOperator::from_row(&v, Sign::Plus));
    }
    Ok([out[0].clone(), out[1].clone()])
}

/// Product of `factors` in order, as `i^q * P` with `P` Hermitian.
fn ordered_product<'a>(n: usize, factors: impl Iterator<Item = &'a PauliOperator>) -> (PauliOperator, u32) {
    let mut acc = PauliOperator::identity(n);
    let mut q = 0u32;
    for f in factors {
        let (next, odd) = acc.mul_raw(f);
        acc = next;
        if odd {
            q += 3;
        }
    }
    (acc, q % 4)
}

/// The unique Clifford tableau sending `basis_in[j] -> basis_out[j]`, where
/// both lists are full symplectic bases in the same pairing.
fn assemble(basis_in: &[PauliOperator], basis_out: &[PauliOperator]) -> Result<SymplecticMatrix> {
    let n = basis_in[0].n();
    let rows: Vec<BitVec> = basis_in.iter().map(PauliOperator::row).collect();
    let generators = (1..=n)
        .map(|w| PauliOperator::x_on(n, [w]))
        .chain((1..=n).map(|w| PauliOperator::z_on(n, [w])));
    let mut images = Vec::with_capacity(2 * n);
    for g in generators {
        let c = solve_combination(&rows, &g.row()).ok_or(Error::NotSymplectic)?;
        let (pin, qa) = ordered_product(n, c.iter_ones().map(|j| &basis_in[j]));
        let (pout, qb) = ordered_product(n, c.iter_ones().map(|j| &basis_out[j]));
        let dq = (qb + 4 - qa) % 4;
        if dq % 2 == 1 {
            return Err(Error::ImaginaryResidual);
        }
        // g = sign(pin) i^-qa prod(in), so its image is sign(pin) i^(qb-qa) pout.
        let mut image = pout;
        if pin.sign().is_negative() ^ (dq == 2) {
            image = image.negated();
        }
        images.push(image);
    }
    SymplecticMatrix::from_images(images)
}

struct BaseSolution {
    inputs: Vec<PauliOperator>,
    outputs: Vec<PauliOperator>,
    stabs: [PauliOperator; 2],
}

fn base_solution(cs: &ConstraintSystem) -> Result<BaseSolution> {
    let n = cs.code.n();
    let stabs = cs.code.stabilizer_list();
    let (lin, lout): (Vec<_>, Vec<_>) = cs.logical_rows().iter().cloned().unzip();
    // Z_n pairs with X_[n], X_1 with Z_[n].
    let e_in = [PauliOperator::z_on(n, [n]), PauliOperator::x_on(n, [1])];
    let e_out = pure_errors(&lout, &stabs)?;
    let mut inputs = lin;
    inputs.extend(stabs.iter().cloned());
    inputs.extend(e_in);
    let mut outputs = lout;
    outputs.extend(stabs.iter().cloned());
    outputs.extend(e_out);
    Ok(BaseSolution {
        inputs,
        outputs,
        stabs,
    })
}

fn solution_tableau(base: &BaseSolution, block: SymmetricBlock) -> Result<SymplecticMatrix> {
    let m = base.outputs.len();
    let mut outputs = base.outputs.clone();
    for j in 0..2 {
        for (s, take) in base.stabs.iter().zip(block.row(j)) {
            if take {
                let row = outputs[m - 2 + j].row().xor(&s.row());
                outputs[m - 2 + j] = PauliOperator::from_row(&row, Sign::Plus);
            }
        }
    }
    assemble(&base.inputs, &outputs)
}

fn check_against(cs: &ConstraintSystem, t: &SymplecticMatrix) -> Result<()> {
    for (input, output) in &cs.rows {
        if &t.apply(input)? != output {
            return Err(Error::InconsistentConstraints(format!(
                "{input} is not sent to {output}"
            )));
        }
    }
    Ok(())
}

/// One solution tableau (label 0).
pub fn solve_base(cs: &ConstraintSystem) -> Result<SymplecticMatrix> {
    let t = solution_tableau(&base_solution(cs)?, SymmetricBlock::from_label(0))?;
    check_against(cs, &t)?;
    Ok(t)
}

/// All eight solutions, ordered by label, each with a synthesized circuit.
pub fn enumerate_solutions(cs: &ConstraintSystem) -> Result<Vec<SolutionDescriptor>> {
    let base = base_solution(cs)?;
    SymmetricBlock::all()
        .map(|block| {
            let tableau = solution_tableau(&base, block)?;
            check_against(cs, &tableau)?;
            let circuit = synthesize(&tableau)?;
            Ok(SolutionDescriptor {
                block,
                tableau,
                circuit,
            })
        })
        .collect()
}

/// Appends a residual Clifford `C^-1 T` to `candidate` for the first solution
/// `T` that makes the result pass verification.
pub fn complete_to_solution(candidate: &Circuit, p: &HadamardPlacement) -> Result<Circuit> {
    let cs = build_constraints(p)?;
    let have = tableau_of(candidate);
    let undo = tableau_of(&candidate.inverse());
    let base = base_solution(&cs)?;
    for block in SymmetricBlock::all() {
        let target = solution_tableau(&base, block)?;
        let residual = undo.then(&target)?;
        debug_assert_eq!(have.then(&residual)?, target);
        let mut out = candidate.clone();
        out.extend(synthesize(&residual)?.gates().iter().copied())?;
        if verify(&out, p)?.pass {
            return Ok(out);
        }
    }
    Err(Error::FallbackFailed)
}

/// Which solution a circuit realizes. Signs on the pure-error images are a
/// Pauli frame (appending `X_[n]` or `Z_[n]` flips one of them and nothing
/// else), so solutions are compared on their binary part.
pub fn solution_label(c: &Circuit, p: &HadamardPlacement) -> Result<Option<u8>> {
    let cs = build_constraints(p)?;
    let t = tableau_of(c);
    if check_against(&cs, &t).is_err() {
        return Ok(None);
    }
    let base = base_solution(&cs)?;
    for block in SymmetricBlock::all() {
        if solution_tableau(&base, block)?.same_symplectic_part(&t) {
            return Ok(Some(block.label()));
        }
    }
    Ok(None)
}

fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Placements for a Hadamard count: every one when there are at most `cap`,
/// otherwise `samples` distinct seeded draws.
pub fn placements_for(
    k: usize,
    h: usize,
    cap: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<HadamardPlacement>> {
    if h > k {
        return Err(Error::InvalidPlacement(format!("h = {h} exceeds k = {k}")));
    }
    if binomial(k, h) <= cap as u128 {
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (1..=h).collect();
        loop {
            out.push(HadamardPlacement::new(k, idx.iter().copied())?);
            // next combination in lexicographic order
            let Some(pos) = (0..h).rev().find(|&i| idx[i] < k - h + i + 1) else {
                break;
            };
            idx[pos] += 1;
            for i in pos + 1..h {
                idx[i] = idx[i - 1] + 1;
            }
        }
        return Ok(out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 32) ^ h as u64);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    while out.len() < samples {
        let mut pick: Vec<usize> = sample(&mut rng, k, h).into_iter().map(|i| i + 1).collect();
        pick.sort_unstable();
        if seen.insert(pick.clone()) {
            out.push(HadamardPlacement::new(k, pick)?);
        }
    }
    Ok(out)
}

/// Labels whose synthesized depth is the same for every placement examined at
/// this `(k, h)`.
pub fn classify_position_invariant(
    k: usize,
    h: usize,
    cap: usize,
    samples: usize,
    seed: u64,
) -> Result<BTreeSet<u8>> {
    let placements = placements_for(k, h, cap, samples, seed)?;
    let counts = placements
        .par_iter()
        .map(|p| {
            let cs = build_constraints(p)?;
            Ok(enumerate_solutions(&cs)?
                .into_iter()
                .map(|s| s.circuit.depth())
                .collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((0..8u8)
        .filter(|&l| counts.iter().all(|c| c[l as usize] == counts[0][l as usize]))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepLabel {
    Strategy(StrategyId),
    Lcs(u8),
}

impl std::fmt::Display for SweepLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepLabel::Strategy(s) => write!(f, "{s}"),
            SweepLabel::Lcs(l) => write!(f, "lcs{l}"),
        }
    }
}

impl std::str::FromStr for SweepLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        if let Some(rest) = s.strip_prefix("lcs") {
            return match rest.parse::<u8>() {
                Ok(l) if l < 8 => Ok(SweepLabel::Lcs(l)),
                _ => Err(format!("bad solution label '{s}'")),
            };
        }
        s.parse().map(SweepLabel::Strategy)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub k: usize,
    pub h: usize,
    /// `1;3;5`
    pub placement: String,
    pub label: String,
    pub depth: usize,
    pub twoq: usize,
}

fn sweep_one(p: &HadamardPlacement, labels: &[SweepLabel]) -> Result<Vec<SweepRow>> {
    let mut lcs: Option<Vec<SolutionDescriptor>> = None;
    let mut rows = Vec::with_capacity(labels.len());
    for &label in labels {
        let circuit = match label {
            SweepLabel::Strategy(s) => emit(s, p)?.into_circuit(),
            SweepLabel::Lcs(l) => {
                if lcs.is_none() {
                    lcs = Some(enumerate_solutions(&build_constraints(p)?)?);
                }
                lcs.as_ref().expect("filled above")[l as usize].circuit.clone()
            }
        };
        rows.push(SweepRow {
            k: p.k(),
            h: p.h(),
            placement: p.indices_string(";"),
            label: label.to_string(),
            depth: circuit.depth(),
            twoq: circuit.two_qubit_count(),
        });
    }
    Ok(rows)
}

/// Depth and two-qubit counts for each label at each placement, in input
/// order.
pub fn depth_sweep(placements: &[HadamardPlacement], labels: &[SweepLabel]) -> Result<Vec<SweepRow>> {
    let per = placements
        .par_iter()
        .map(|p| sweep_one(p, labels))
        .collect::<Result<Vec<_>>>()?;
    Ok(per.into_iter().flatten().collect())
}

pub const SWEEP_CSV_TAG: &str = "# qsk sweep v1";

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut out: W) -> Result<()> {
    writeln!(out, "{SWEEP_CSV_TAG}")?;
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep_csv<R: BufRead>(input: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    let rows = r.deserialize().collect::<std::result::Result<Vec<SweepRow>, _>>()?;
    Ok(rows)
}
