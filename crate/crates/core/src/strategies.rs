//! Closed-form emitters for the low/mid/high compilation strategies.
//!
//! Every strategy is three blocks on the `n = k + 2` physical wires:
//!
//! 1. a CX block with controls on `B` and targets on `A` (controls above
//!    targets first, then controls below targets),
//! 2. an IQP-like block `H . P . CZ . H`,
//! 3. a Z-diagonal block of `P` and `CZ` gates,
//!
//! where `A = E(I_h)` and `B = E(complement of I_h)`, and for odd `h` wire 1 joins
//! `A` and wire `n` joins `B`. The odd-`h` operations touching wires 1 and `n` are
//! exactly what that augmentation adds; otherwise even and odd rules coincide.
//!
//! The low and high strategies also carry a Pauli layer (`Z_B` for low, `X_A`
//! for high) that commutes with every other gate of the circuit and fixes the
//! signs of the logical images. It is scheduled next to block 3's `P` layer on
//! idle wires, so it does not add depth.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::circuit::{Circuit, Gate};
use crate::code::CodeInstance;
use crate::error::{Error, Result};
use crate::kernel::HadamardPlacement;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StrategyId {
    Low,
    Mid,
    High,
}

impl StrategyId {
    pub const ALL: [StrategyId; 3] = [StrategyId::Low, StrategyId::Mid, StrategyId::High];

    pub fn as_str(self) -> &'static str {
        match self {
            StrategyId::Low => "low",
            StrategyId::Mid => "mid",
            StrategyId::High => "high",
        }
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StrategyId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "low" => Ok(StrategyId::Low),
            "mid" => Ok(StrategyId::Mid),
            "high" => Ok(StrategyId::High),
            other => Err(format!("unknown strategy `{other}` (expected low|mid|high)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A compiled circuit with metrics computed from it at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompilationResult {
    circuit: Circuit,
    strategy: StrategyId,
    parity: Parity,
    depth: usize,
    two_qubit_count: usize,
}

impl CompilationResult {
    pub fn new(circuit: Circuit, strategy: StrategyId, parity: Parity) -> Self {
        let depth = circuit.depth();
        let two_qubit_count = circuit.two_qubit_count();
        Self {
            circuit,
            strategy,
            parity,
            depth,
            two_qubit_count,
        }
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn into_circuit(self) -> Circuit {
        self.circuit
    }

    pub fn strategy(&self) -> StrategyId {
        self.strategy
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn two_qubit_count(&self) -> usize {
        self.two_qubit_count
    }
}

/// Order of the mutually commuting gates inside each block. The unitary is
/// the same either way; only the ASAP depth differs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GateOrder {
    /// Round-robin layers indexed by position within the wire sets, so any
    /// two placements with the same `h` give circuits that differ only by a
    /// wire relabeling (equal depth).
    #[default]
    Layered,
    /// Wire-number order: CX controls above targets first, then below; CZ
    /// pairs lexicographic. Depth then depends on where the Hadamards sit.
    Reference,
}

/// Wire sets shared by all emitters.
struct Layout {
    n: usize,
    order: GateOrder,
    /// Hadamard-side wires (CX targets).
    a: Vec<usize>,
    /// Non-Hadamard-side wires (CX controls).
    b: Vec<usize>,
    /// Wires in neither set: `{1, n}` for even `h`, empty for odd.
    rest: Vec<usize>,
}

impl Layout {
    fn new(p: &HadamardPlacement, order: GateOrder) -> Result<Self> {
        let code = CodeInstance::new(p.k())?;
        let n = code.n();
        let odd = !p.is_even();
        let mut a: Vec<usize> = p.hadamards().map(|i| code.embed_wire(i)).collect();
        let mut b: Vec<usize> = p.complement().map(|i| code.embed_wire(i)).collect();
        if odd {
            a.insert(0, 1);
            b.push(n);
        }
        let rest = if odd { Vec::new() } else { vec![1, n] };
        Ok(Self { n, order, a, b, rest })
    }

    /// `first` followed by `second`, as one role-ordered list.
    fn joined(first: &[usize], second: &[usize]) -> Vec<usize> {
        first.iter().chain(second).copied().collect()
    }

    /// CZ on every pair of `[n]` not inside `excluded`; `kept` lists the other
    /// wires in role order.
    fn cz_outside(&self, out: &mut Vec<Gate>, kept: &[usize], excluded: &[usize]) {
        match self.order {
            GateOrder::Reference => {
                let all: Vec<usize> = self.all().collect();
                let ex = |w: usize| excluded.contains(&w);
                cz_pairs(out, &all, |i, j| !(ex(i) && ex(j)));
            }
            GateOrder::Layered => {
                out.extend(clique_rounds(kept).into_iter().map(|(i, j)| Gate::cz(i, j)));
                out.extend(
                    bipartite_rounds(kept, excluded)
                        .into_iter()
                        .map(|(i, j)| Gate::cz(i, j)),
                );
            }
        }
    }

    /// CZ on every pair inside `wires`.
    fn cz_within(&self, out: &mut Vec<Gate>, wires: &[usize]) {
        match self.order {
            GateOrder::Reference => cz_pairs(out, wires, |_, _| true),
            GateOrder::Layered => {
                out.extend(clique_rounds(wires).into_iter().map(|(i, j)| Gate::cz(i, j)))
            }
        }
    }

    fn in_a(&self, w: usize) -> bool {
        self.a.binary_search(&w).is_ok()
    }

    fn in_b(&self, w: usize) -> bool {
        self.b.binary_search(&w).is_ok()
    }

    fn all(&self) -> impl Iterator<Item = usize> {
        1..=self.n
    }

    /// Block 1: CX from every `B` wire onto every `A` wire.
    fn cx_block(&self, out: &mut Vec<Gate>) {
        if self.order == GateOrder::Layered {
            out.extend(
                bipartite_rounds(&self.b, &self.a)
                    .into_iter()
                    .map(|(c, t)| Gate::cx(c, t)),
            );
            return;
        }
        for &c in &self.b {
            out.extend(self.a.iter().filter(|&&t| c > t).map(|&t| Gate::cx(c, t)));
        }
        for &c in &self.b {
            out.extend(self.a.iter().filter(|&&t| c < t).map(|&t| Gate::cx(c, t)));
        }
    }

    /// Block 2 of the mid/low strategies: `H_A P_A CZ(A x A) H_A`.
    fn iqp_on_a(&self, out: &mut Vec<Gate>) {
        out.extend(self.a.iter().map(|&w| Gate::H(w)));
        out.extend(self.a.iter().map(|&w| Gate::P(w)));
        self.cz_within(out, &self.a);
        out.extend(self.a.iter().map(|&w| Gate::H(w)));
    }

    /// Block 2 of the high strategy: `H_[n] P_{[n]\A} CZ([n]^2 \ A^2) H_[n]`.
    fn iqp_full(&self, out: &mut Vec<Gate>) {
        let all: Vec<usize> = self.all().collect();
        out.extend(all.iter().map(|&w| Gate::H(w)));
        out.extend(all.iter().filter(|&&w| !self.in_a(w)).map(|&w| Gate::P(w)));
        self.cz_outside(out, &Self::joined(&self.b, &self.rest), &self.a);
        out.extend(all.iter().map(|&w| Gate::H(w)));
    }

    /// Block 3 of the mid/high strategies: `P_B CZ(B x B)`.
    fn diag_on_b(&self, out: &mut Vec<Gate>) {
        out.extend(self.b.iter().map(|&w| Gate::P(w)));
        self.cz_within(out, &self.b);
    }

    /// Block 3 of the low strategy: `Z_B P_{[n]\B} CZ([n]^2 \ B^2)`.
    fn diag_low(&self, out: &mut Vec<Gate>) {
        let all: Vec<usize> = self.all().collect();
        out.extend(self.b.iter().map(|&w| Gate::Z(w)));
        out.extend(all.iter().filter(|&&w| !self.in_b(w)).map(|&w| Gate::P(w)));
        self.cz_outside(out, &Self::joined(&self.a, &self.rest), &self.b);
    }

    fn finish(&self, gates: Vec<Gate>) -> Circuit {
        Circuit::from_gates(self.n, gates).expect("emitted wires lie in 1..=n")
    }
}

/// CZ on every ascending pair `(i, j)` of `wires` accepted by `keep`, in
/// lexicographic order.
fn cz_pairs(out: &mut Vec<Gate>, wires: &[usize], keep: impl Fn(usize, usize) -> bool) {
    for (idx, &i) in wires.iter().enumerate() {
        for &j in &wires[idx + 1..] {
            if keep(i, j) {
                out.push(Gate::cz(i, j));
            }
        }
    }
}

/// Complete bipartite graph `left x right` as rounds of disjoint pairs
/// `(left[i], right[j])`; `max(|left|, |right|)` rounds.
fn bipartite_rounds(left: &[usize], right: &[usize]) -> Vec<(usize, usize)> {
    let (l, r) = (left.len(), right.len());
    let mut out = Vec::with_capacity(l * r);
    if l <= r {
        for shift in 0..r {
            out.extend((0..l).map(|i| (left[i], right[(i + shift) % r])));
        }
    } else {
        for shift in 0..l {
            out.extend((0..r).map(|j| (left[(j + shift) % l], right[j])));
        }
    }
    out
}

/// Complete graph on `wires` as rounds of disjoint pairs (circle method).
fn clique_rounds(wires: &[usize]) -> Vec<(usize, usize)> {
    let m = wires.len();
    if m < 2 {
        return Vec::new();
    }
    // Pad to even size with a bye.
    let size = m + m % 2;
    let mut out = Vec::with_capacity(m * (m - 1) / 2);
    for round in 0..size - 1 {
        let seat = |pos: usize| if pos == 0 { 0 } else { (pos - 1 + round) % (size - 1) + 1 };
        for i in 0..size / 2 {
            let (u, v) = (seat(i), seat(size - 1 - i));
            if u < m && v < m {
                out.push((wires[u], wires[v]));
            }
        }
    }
    out
}

fn require_parity(p: &HadamardPlacement, even: bool) -> Result<()> {
    if p.is_even() != even {
        return Err(Error::ParityViolation {
            expected: if even { "an even" } else { "an odd" },
            h: p.h(),
        });
    }
    Ok(())
}

fn emit_mid(p: &HadamardPlacement, order: GateOrder) -> Result<Circuit> {
    let l = Layout::new(p, order)?;
    let mut g = Vec::new();
    l.cx_block(&mut g);
    l.iqp_on_a(&mut g);
    l.diag_on_b(&mut g);
    Ok(l.finish(g))
}

fn emit_low(p: &HadamardPlacement, order: GateOrder) -> Result<Circuit> {
    let l = Layout::new(p, order)?;
    let mut g = Vec::new();
    l.cx_block(&mut g);
    l.iqp_on_a(&mut g);
    l.diag_low(&mut g);
    Ok(l.finish(g))
}

fn emit_high(p: &HadamardPlacement, order: GateOrder) -> Result<Circuit> {
    let l = Layout::new(p, order)?;
    let mut g = Vec::new();
    l.cx_block(&mut g);
    l.iqp_full(&mut g);
    g.extend(l.a.iter().map(|&w| Gate::X(w)));
    l.diag_on_b(&mut g);
    Ok(l.finish(g))
}

pub fn emit_mid_even(p: &HadamardPlacement) -> Result<Circuit> {
    require_parity(p, true)?;
    emit_mid(p, GateOrder::default())
}

/// Mid strategy for odd `h`; the operations on wires 1 and `n` come from the
/// augmented wire sets.
pub fn emit_mid_odd(p: &HadamardPlacement) -> Result<Circuit> {
    require_parity(p, false)?;
    emit_mid(p, GateOrder::default())
}

pub fn emit_low_even(p: &HadamardPlacement) -> Result<Circuit> {
    require_parity(p, true)?;
    emit_low(p, GateOrder::default())
}

pub fn emit_low_odd(p: &HadamardPlacement) -> Result<Circuit> {
    require_parity(p, false)?;
    emit_low(p, GateOrder::default())
}

pub fn emit_high_even(p: &HadamardPlacement) -> Result<Circuit> {
    require_parity(p, true)?;
    emit_high(p, GateOrder::default())
}

pub fn emit_high_odd(p: &HadamardPlacement) -> Result<Circuit> {
    require_parity(p, false)?;
    emit_high(p, GateOrder::default())
}

/// Dispatches on parity and fills in the metrics.
pub fn emit(strategy: StrategyId, p: &HadamardPlacement) -> Result<CompilationResult> {
    emit_ordered(strategy, p, GateOrder::default())
}

pub fn emit_ordered(
    strategy: StrategyId,
    p: &HadamardPlacement,
    order: GateOrder,
) -> Result<CompilationResult> {
    let parity = if p.is_even() { Parity::Even } else { Parity::Odd };
    let circuit = match strategy {
        StrategyId::Low => emit_low(p, order)?,
        StrategyId::Mid => emit_mid(p, order)?,
        StrategyId::High => emit_high(p, order)?,
    };
    Ok(CompilationResult::new(circuit, strategy, parity))
}

fn choose2(m: usize) -> usize {
    m * m.saturating_sub(1) / 2
}

/// Two-qubit gate count of `strategy` for any placement with `h` Hadamards on
/// `k` logical qubits, from the pair-set sizes of the three blocks.
pub fn closed_form_two_qubit_count(strategy: StrategyId, k: usize, h: usize) -> usize {
    let n = k + 2;
    let (a, b) = if h.is_multiple_of(2) { (h, k - h) } else { (h + 1, k - h + 1) };
    let cx = a * b;
    match strategy {
        StrategyId::Mid => cx + choose2(a) + choose2(b),
        StrategyId::Low => cx + choose2(a) + choose2(n) - choose2(b),
        StrategyId::High => cx + choose2(b) + choose2(n) - choose2(a),
    }
}
