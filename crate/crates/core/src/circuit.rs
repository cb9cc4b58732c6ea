//! Gate and circuit representation, depth/two-qubit metrics and the JSON
//! interchange format.
//!
//! Wires are 1-based everywhere in this module. `CZ` is symmetric and is
//! stored with ascending wires; `CX` keeps `(control, target)` order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gate {
    H(usize),
    /// Phase gate `P = R_z(pi/2)`.
    P(usize),
    /// Inverse phase gate. Only produced by [`Circuit::inverse`]; serialized
    /// as three `P` gates.
    Pdg(usize),
    X(usize),
    Z(usize),
    CX { control: usize, target: usize },
    CZ(usize, usize),
}

impl Gate {
    pub fn cx(control: usize, target: usize) -> Self {
        Gate::CX { control, target }
    }

    /// `CZ` with canonical (ascending) wire order.
    pub fn cz(a: usize, b: usize) -> Self {
        Gate::CZ(a.min(b), a.max(b))
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::CX { .. } | Gate::CZ(..))
    }

    pub fn wires(&self) -> Wires {
        match *self {
            Gate::H(q) | Gate::P(q) | Gate::Pdg(q) | Gate::X(q) | Gate::Z(q) => Wires::One(q),
            Gate::CX { control, target } => Wires::Two(control, target),
            Gate::CZ(a, b) => Wires::Two(a, b),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::P(_) => "P",
            Gate::Pdg(_) => "Pdg",
            Gate::X(_) => "X",
            Gate::Z(_) => "Z",
            Gate::CX { .. } => "CX",
            Gate::CZ(..) => "CZ",
        }
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::P(q) => Gate::Pdg(q),
            Gate::Pdg(q) => Gate::P(q),
            g => g,
        }
    }

    /// Range and degeneracy check on `n` wires; returns the canonical form.
    pub fn validate(self, n: usize) -> Result<Gate> {
        let check = |w: usize| {
            if w == 0 || w > n {
                Err(Error::WireOutOfRange { wire: w, n })
            } else {
                Ok(())
            }
        };
        match self.wires() {
            Wires::One(q) => check(q)?,
            Wires::Two(a, b) => {
                check(a)?;
                check(b)?;
                if a == b {
                    return Err(Error::DegenerateTwoQubitGate(a));
                }
            }
        }
        Ok(match self {
            Gate::CZ(a, b) => Gate::cz(a, b),
            g => g,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Wires {
    One(usize),
    Two(usize, usize),
}

impl Wires {
    pub fn as_slice(&self) -> ([usize; 2], usize) {
        match *self {
            Wires::One(q) => ([q, 0], 1),
            Wires::Two(a, b) => ([a, b], 2),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.wires() {
            Wires::One(q) => write!(f, "{}{}", self.name(), q),
            Wires::Two(a, b) => match self {
                Gate::CX { .. } => write!(f, "CX({a}->{b})"),
                _ => write!(f, "CZ({a},{b})"),
            },
        }
    }
}

/// An ordered gate list on `n` wires. All gates are validated on insertion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyRegister);
        }
        Ok(Self {
            n,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n: usize, gates: impl IntoIterator<Item = Gate>) -> Result<Self> {
        let mut c = Self::new(n)?;
        c.extend(gates)?;
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        self.gates.push(gate.validate(self.n)?);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        for g in gates {
            self.push(g)?;
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&other.gates);
        Ok(Circuit { n: self.n, gates })
    }

    pub fn inverse(&self) -> Circuit {
        Circuit {
            n: self.n,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Number of layers under ASAP scheduling: each gate lands one layer after
    /// the latest layer already occupied on any of its wires. Single- and
    /// two-qubit gates count the same.
    pub fn depth(&self) -> usize {
        let mut frontier = vec![0usize; self.n + 1];
        let mut depth = 0;
        for g in &self.gates {
            let (w, k) = g.wires().as_slice();
            let layer = w[..k].iter().map(|&q| frontier[q]).max().unwrap_or(0) + 1;
            for &q in &w[..k] {
                frontier[q] = layer;
            }
            depth = depth.max(layer);
        }
        depth
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// The circuit with every `Pdg` replaced by three `P` gates, i.e. over the
    /// external gate alphabet only.
    pub fn expanded(&self) -> Circuit {
        let mut gates = Vec::with_capacity(self.gates.len());
        for &g in &self.gates {
            match g {
                Gate::Pdg(q) => gates.extend([Gate::P(q); 3]),
                g => gates.push(g),
            }
        }
        Circuit { n: self.n, gates }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&CircuitJson::from(self)).expect("circuit JSON is infallible")
    }

    pub fn from_json(text: &str) -> Result<Circuit> {
        let raw: CircuitJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[n={}]", self.n)?;
        for g in &self.gates {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitJson {
    n: usize,
    gates: Vec<GateJson>,
}

#[derive(Serialize, Deserialize)]
struct GateJson {
    g: String,
    q: Vec<usize>,
}

impl From<&Circuit> for CircuitJson {
    fn from(c: &Circuit) -> Self {
        let gates = c
            .expanded()
            .gates
            .iter()
            .map(|g| {
                let (w, k) = g.wires().as_slice();
                GateJson {
                    g: g.name().to_string(),
                    q: w[..k].to_vec(),
                }
            })
            .collect();
        CircuitJson { n: c.n, gates }
    }
}

impl TryFrom<CircuitJson> for Circuit {
    type Error = Error;

    fn try_from(raw: CircuitJson) -> Result<Circuit> {
        let mut c = Circuit::new(raw.n)?;
        for gj in raw.gates {
            let arity = match gj.g.as_str() {
                "H" | "P" | "X" | "Z" => 1,
                "CX" | "CZ" => 2,
                other => return Err(Error::UnknownGate(other.to_string())),
            };
            if gj.q.len() != arity {
                return Err(Error::GateArity {
                    kind: gj.g,
                    expected: arity,
                    found: gj.q.len(),
                });
            }
            let g = match gj.g.as_str() {
                "H" => Gate::H(gj.q[0]),
                "P" => Gate::P(gj.q[0]),
                "X" => Gate::X(gj.q[0]),
                "Z" => Gate::Z(gj.q[0]),
                "CX" => Gate::cx(gj.q[0], gj.q[1]),
                _ => Gate::CZ(gj.q[0], gj.q[1]),
            };
            c.push(g)?;
        }
        Ok(c)
    }
}
