//! Clifford simulation kernels: the logical circuit fixed by a Hadamard
//! placement and its action on the logical Pauli generators.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::tableau::{tableau_of, SymplecticMatrix};

/// Kernel width `k` together with the set `I_h` of wires carrying Hadamards.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HadamardPlacement {
    k: usize,
    hadamards: BTreeSet<usize>,
}

impl HadamardPlacement {
    pub fn new(k: usize, hadamards: impl IntoIterator<Item = usize>) -> Result<Self> {
        if k < 2 {
            return Err(Error::KernelTooSmall(k));
        }
        let hadamards: BTreeSet<usize> = hadamards.into_iter().collect();
        if let Some(&bad) = hadamards.iter().find(|&&i| i == 0 || i > k) {
            return Err(Error::InvalidPlacement(format!(
                "index {bad} outside 1..={k}"
            )));
        }
        Ok(Self { k, hadamards })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn h(&self) -> usize {
        self.hadamards.len()
    }

    pub fn is_even(&self) -> bool {
        self.h().is_multiple_of(2)
    }

    /// `I_h`, ascending.
    pub fn hadamards(&self) -> impl Iterator<Item = usize> + '_ {
        self.hadamards.iter().copied()
    }

    /// The complement `[k] \ I_h`, ascending.
    pub fn complement(&self) -> impl Iterator<Item = usize> + '_ {
        (1..=self.k).filter(move |i| !self.hadamards.contains(i))
    }

    pub fn contains(&self, i: usize) -> bool {
        self.hadamards.contains(&i)
    }

    /// Compact `1;3;5` rendering of `I_h` used in CSV output.
    pub fn indices_string(&self, sep: &str) -> String {
        self.hadamards
            .iter()
            .map(usize::to_string)
            .collect::<Vec<_>>()
            .join(sep)
    }
}

impl fmt::Display for HadamardPlacement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k={};Ih={}", self.k, self.indices_string(","))
    }
}

impl FromStr for HadamardPlacement {
    type Err = Error;

    /// Parses `k=20;Ih=1,3,5` (the index list may be empty).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidPlacement(format!("`{s}`: {why}"));
        let (kpart, ipart) = s.split_once(';').ok_or_else(|| bad("missing `;`"))?;
        let k = kpart
            .trim()
            .strip_prefix("k=")
            .ok_or_else(|| bad("expected `k=`"))?
            .parse::<usize>()
            .map_err(|_| bad("k is not an integer"))?;
        let list = ipart
            .trim()
            .strip_prefix("Ih=")
            .ok_or_else(|| bad("expected `Ih=`"))?;
        let indices = parse_index_list(list)?;
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != indices {
            return Err(bad("indices must be ascending and distinct"));
        }
        HadamardPlacement::new(k, indices)
    }
}

/// Parses a comma-separated list of positive integers; empty input is the empty list.
pub fn parse_index_list(list: &str) -> Result<Vec<usize>> {
    let list = list.trim();
    if list.is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidPlacement(format!("`{t}` is not an index")))
        })
        .collect()
}

/// `H_{I_h} . CX(1->k) ... CX(k-1->k) . P_k . CX(k-1->k) ... CX(1->k) . H_{I_h}`.
pub fn build_cqsk(p: &HadamardPlacement) -> Circuit {
    let k = p.k();
    let mut gates: Vec<Gate> = p.hadamards().map(Gate::H).collect();
    gates.extend((1..k).map(|i| Gate::cx(i, k)));
    gates.push(Gate::P(k));
    gates.extend((1..k).rev().map(|i| Gate::cx(i, k)));
    gates.extend(p.hadamards().map(Gate::H));
    Circuit::from_gates(k, gates).expect("kernel wires lie in 1..=k")
}

/// Images of the logical generators under the kernel, with signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalAction {
    tableau: SymplecticMatrix,
}

impl LogicalAction {
    pub fn k(&self) -> usize {
        self.tableau.n()
    }

    pub fn x_image(&self, i: usize) -> &PauliOperator {
        self.tableau.x_image(i)
    }

    pub fn z_image(&self, i: usize) -> &PauliOperator {
        self.tableau.z_image(i)
    }

    pub fn image(&self, p: &PauliOperator) -> Result<PauliOperator> {
        self.tableau.apply(p)
    }

    pub fn tableau(&self) -> &SymplecticMatrix {
        &self.tableau
    }
}

pub fn logical_action(p: &HadamardPlacement) -> LogicalAction {
    LogicalAction {
        tableau: tableau_of(&build_cqsk(p)),
    }
}
