//! Pauli operators in binary symplectic form with exact sign tracking.
//!
//! A [`PauliOperator`] on `n` qubits stores an x-part `a`, a z-part `b` and a
//! sign, and denotes `sign * prod_j i^(a_j b_j) X_j^(a_j) Z_j^(b_j)`. The
//! `i^(a_j b_j)` factor makes `a_j = b_j = 1` exactly `Y_j`, so every value of
//! the type is Hermitian and its sign lives in {+1, -1}.
//!
//! Internally, products and conjugations are done in "XZ form"
//! `i^r X^a Z^b` with `r` mod 4, where the bookkeeping rules are simplest, and
//! converted back at the end.

use std::fmt;
use std::str::FromStr;

use crate::bits::{solve_combination, BitVec};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    fn from_negative(neg: bool) -> Self {
        if neg {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_negative(self.is_negative() ^ rhs.is_negative())
    }
}

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PauliKind {
    I,
    X,
    Y,
    Z,
}

impl PauliKind {
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => PauliKind::I,
            (true, false) => PauliKind::X,
            (true, true) => PauliKind::Y,
            (false, true) => PauliKind::Z,
        }
    }

    pub fn bits(self) -> (bool, bool) {
        match self {
            PauliKind::I => (false, false),
            PauliKind::X => (true, false),
            PauliKind::Y => (true, true),
            PauliKind::Z => (false, true),
        }
    }

    fn letter(self) -> char {
        match self {
            PauliKind::I => 'I',
            PauliKind::X => 'X',
            PauliKind::Y => 'Y',
            PauliKind::Z => 'Z',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    x: BitVec,
    z: BitVec,
    negative: bool,
}

/// Result of [`PauliOperator::mul`]: the true product is `(-i)^i_parity * product`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliProduct {
    pub product: PauliOperator,
    pub i_parity: bool,
}

/// Result of a successful [`reduce_mod_span`]: `p = residual_sign * prod_j g_j^(c_j)`
/// with the product taken in generator order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanReduction {
    pub combination: BitVec,
    pub residual_sign: Sign,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            negative: false,
        }
    }

    pub fn from_bits(x: BitVec, z: BitVec, sign: Sign) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self {
            x,
            z,
            negative: sign.is_negative(),
        })
    }

    /// Builds from a symplectic row `[x | z]` of length `2n`.
    pub fn from_row(row: &BitVec, sign: Sign) -> Self {
        let n = row.len() / 2;
        Self {
            x: row.slice(0, n),
            z: row.slice(n, n),
            negative: sign.is_negative(),
        }
    }

    /// Operator with the given letter on each listed 1-based wire.
    pub fn from_sites(n: usize, sites: &[(usize, PauliKind)]) -> Result<Self> {
        let mut p = Self::identity(n);
        for &(w, kind) in sites {
            if w == 0 || w > n {
                return Err(Error::WireOutOfRange { wire: w, n });
            }
            let (xb, zb) = kind.bits();
            p.x.set(w - 1, xb);
            p.z.set(w - 1, zb);
        }
        Ok(p)
    }

    /// `X` on every listed 1-based wire.
    pub fn x_on(n: usize, wires: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::identity(n);
        for w in wires {
            p.x.set(w - 1, true);
        }
        p
    }

    /// `Z` on every listed 1-based wire.
    pub fn z_on(n: usize, wires: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::identity(n);
        for w in wires {
            p.z.set(w - 1, true);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn sign(&self) -> Sign {
        Sign::from_negative(self.negative)
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.negative = sign.is_negative();
        self
    }

    pub fn negated(mut self) -> Self {
        self.negative = !self.negative;
        self
    }

    /// Letter on a 1-based wire.
    pub fn kind(&self, wire: usize) -> PauliKind {
        PauliKind::from_bits(self.x.get(wire - 1), self.z.get(wire - 1))
    }

    pub fn weight(&self) -> usize {
        (0..self.n())
            .filter(|&i| self.x.get(i) || self.z.get(i))
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// The `[x | z]` row vector.
    pub fn row(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Phase exponent `r` (mod 4) of the XZ form `i^r X^a Z^b`.
    fn xz_phase(&self) -> u32 {
        (2 * self.negative as u32 + self.x.and_count(&self.z)) % 4
    }

    /// Sets the sign from an XZ-form phase; returns `true` if the phase was
    /// imaginary relative to the Hermitian representative (odd difference).
    fn set_from_xz_phase(&mut self, r: u32) -> bool {
        let d = (r + 4 * 16 - self.x.and_count(&self.z) % 4) % 4;
        match d {
            0 => {
                self.negative = false;
                false
            }
            2 => {
                self.negative = true;
                false
            }
            // i * H  = (-i) * (-H);  -i * H = (-i) * H
            1 => {
                self.negative = true;
                true
            }
            _ => {
                self.negative = false;
                true
            }
        }
    }

    fn check_dim(&self, other: &PauliOperator) -> Result<()> {
        if self.n() != other.n() {
            Err(Error::DimensionMismatch {
                expected: self.n(),
                found: other.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Operator product `self * other`. Hermitian products come back with
    /// `i_parity = false`; when the factors anticommute the product is
    /// `(-i) * product` and `i_parity` is set.
    pub fn mul(&self, other: &PauliOperator) -> Result<PauliProduct> {
        self.check_dim(other)?;
        let (product, i_parity) = self.mul_raw(other);
        Ok(PauliProduct { product, i_parity })
    }

    pub(crate) fn mul_raw(&self, other: &PauliOperator) -> (PauliOperator, bool) {
        let r = self.xz_phase() + other.xz_phase() + 2 * (self.z.and_count(&other.x) % 2);
        let mut out = PauliOperator {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            negative: false,
        };
        let odd = out.set_from_xz_phase(r % 4);
        (out, odd)
    }

    /// Product of commuting operators; panics in debug builds otherwise.
    pub(crate) fn mul_commuting(&self, other: &PauliOperator) -> PauliOperator {
        let (p, odd) = self.mul_raw(other);
        debug_assert!(!odd, "mul_commuting on anticommuting operators");
        p
    }

    /// `<a, b'> + <b, a'>` over GF(2); `false` iff the operators commute.
    pub fn symplectic_product(&self, other: &PauliOperator) -> Result<bool> {
        self.check_dim(other)?;
        Ok(self.anticommutes(other))
    }

    pub(crate) fn anticommutes(&self, other: &PauliOperator) -> bool {
        self.x.dot(&other.z) ^ self.z.dot(&other.x)
    }

    /// Replaces `self` by `g self g^dagger`.
    pub fn apply_gate(&mut self, g: &Gate) -> Result<()> {
        let n = self.n();
        let check = |w: usize| {
            if w == 0 || w > n {
                Err(Error::WireOutOfRange { wire: w, n })
            } else {
                Ok(w - 1)
            }
        };
        let mut r = self.xz_phase();
        match *g {
            Gate::H(q) => {
                let q = check(q)?;
                let (xb, zb) = (self.x.get(q), self.z.get(q));
                r += 2 * (xb && zb) as u32;
                self.x.set(q, zb);
                self.z.set(q, xb);
            }
            Gate::P(q) => {
                let q = check(q)?;
                if self.x.get(q) {
                    r += 1;
                    self.z.flip(q);
                }
            }
            Gate::Pdg(q) => {
                let q = check(q)?;
                if self.x.get(q) {
                    r += 3;
                    self.z.flip(q);
                }
            }
            Gate::X(q) => {
                let q = check(q)?;
                r += 2 * self.z.get(q) as u32;
            }
            Gate::Z(q) => {
                let q = check(q)?;
                r += 2 * self.x.get(q) as u32;
            }
            Gate::CX { control, target } => {
                let (c, t) = (check(control)?, check(target)?);
                if self.x.get(c) {
                    self.x.flip(t);
                }
                if self.z.get(t) {
                    self.z.flip(c);
                }
            }
            Gate::CZ(a, b) => {
                let (a, b) = (check(a)?, check(b)?);
                let (xa, xb) = (self.x.get(a), self.x.get(b));
                r += 2 * (xa && xb) as u32;
                if xb {
                    self.z.flip(a);
                }
                if xa {
                    self.z.flip(b);
                }
            }
        }
        let odd = self.set_from_xz_phase(r % 4);
        debug_assert!(!odd, "Clifford conjugation preserves Hermiticity");
        Ok(())
    }

    pub fn conjugate_by_gate(&self, g: &Gate) -> Result<PauliOperator> {
        let mut p = self.clone();
        p.apply_gate(g)?;
        Ok(p)
    }

    /// `U p U^dagger` for the unitary `U` of `c` (gates applied left to right).
    pub fn conjugate_by_circuit(&self, c: &Circuit) -> Result<PauliOperator> {
        if c.n() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: c.n(),
                found: self.n(),
            });
        }
        let mut p = self.clone();
        for g in c.gates() {
            p.apply_gate(g)?;
        }
        Ok(p)
    }
}

/// Decides whether `p` lies in the GF(2) span of `generators` and, if so,
/// returns the combination and the sign of `p` relative to the ordered
/// product of the selected generators.
pub fn reduce_mod_span(
    p: &PauliOperator,
    generators: &[PauliOperator],
) -> Result<Option<SpanReduction>> {
    for g in generators {
        p.check_dim(g)?;
    }
    let rows: Vec<BitVec> = generators.iter().map(PauliOperator::row).collect();
    let Some(combination) = solve_combination(&rows, &p.row()) else {
        return Ok(None);
    };
    let n = p.n();
    // XZ-form phase of the ordered product.
    let mut acc = PauliOperator::identity(n);
    let mut r_acc = 0u32;
    for j in combination.iter_ones() {
        let g = &generators[j];
        r_acc += g.xz_phase() + 2 * (acc.z.and_count(&g.x) % 2);
        acc.x.xor_assign(&g.x);
        acc.z.xor_assign(&g.z);
    }
    debug_assert!(acc.x == p.x && acc.z == p.z);
    match (p.xz_phase() + 4 - r_acc % 4) % 4 {
        0 => Ok(Some(SpanReduction {
            combination,
            residual_sign: Sign::Plus,
        })),
        2 => Ok(Some(SpanReduction {
            combination,
            residual_sign: Sign::Minus,
        })),
        _ => Err(Error::ImaginaryResidual),
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.negative { "-" } else { "+" })?;
        for w in 1..=self.n() {
            write!(f, "{}", self.kind(w).letter())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Parses `[+|-]` followed by one letter from `IXYZ` per qubit.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPauliString(s.to_string());
        let (negative, body) = match s.as_bytes().first() {
            Some(b'+') => (false, &s[1..]),
            Some(b'-') => (true, &s[1..]),
            _ => (false, s),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let n = body.len();
        let mut p = PauliOperator::identity(n);
        p.negative = negative;
        for (i, ch) in body.chars().enumerate() {
            let (xb, zb) = match ch {
                'I' => (false, false),
                'X' => (true, false),
                'Y' => (true, true),
                'Z' => (false, true),
                _ => return Err(bad()),
            };
            p.x.set(i, xb);
            p.z.set(i, zb);
        }
        Ok(p)
    }
}
