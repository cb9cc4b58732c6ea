//! Clifford tableaux as symplectic matrices with phases.
//!
//! Row-vector convention: a Pauli with row `[a | b]` is mapped to
//! `[a | b] F`. Row `i` of `F` (0-based, `i < n`) is the image of `X_{i+1}`,
//! row `n + i` the image of `Z_{i+1}`, and the phase bit of each row is the sign
//! of that image. For circuits `c1` then `c2`,
//! `tableau_of(c1 ++ c2).F = tableau_of(c1).F * tableau_of(c2).F`.

use crate::bits::BitVec;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::pauli::{PauliOperator, Sign};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymplecticMatrix {
    n: usize,
    /// Signed images of X_1..X_n, Z_1..Z_n.
    images: Vec<PauliOperator>,
}

impl SymplecticMatrix {
    pub fn identity(n: usize) -> Self {
        let mut images = Vec::with_capacity(2 * n);
        for w in 1..=n {
            images.push(PauliOperator::x_on(n, [w]));
        }
        for w in 1..=n {
            images.push(PauliOperator::z_on(n, [w]));
        }
        Self { n, images }
    }

    /// Builds from the `2n` generator images; rejects non-symplectic input.
    pub fn from_images(images: Vec<PauliOperator>) -> Result<Self> {
        let n = images.len() / 2;
        if images.len() != 2 * n || n == 0 {
            return Err(Error::NotSymplectic);
        }
        for im in &images {
            if im.n() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: im.n(),
                });
            }
        }
        let m = Self { n, images };
        if !m.is_symplectic() {
            return Err(Error::NotSymplectic);
        }
        Ok(m)
    }

    /// Builds from a `2n x 2n` binary matrix (rows `[a | b]`) and phase bits.
    pub fn from_rows(rows: &[BitVec], phases: &BitVec) -> Result<Self> {
        let images = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                PauliOperator::from_row(r, if phases.get(i) { Sign::Minus } else { Sign::Plus })
            })
            .collect();
        Self::from_images(images)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[PauliOperator] {
        &self.images
    }

    /// Signed image of `X_wire` (1-based).
    pub fn x_image(&self, wire: usize) -> &PauliOperator {
        &self.images[wire - 1]
    }

    /// Signed image of `Z_wire` (1-based).
    pub fn z_image(&self, wire: usize) -> &PauliOperator {
        &self.images[self.n + wire - 1]
    }

    /// The binary matrix `F`, one `[a | b]` row per generator.
    pub fn rows(&self) -> Vec<BitVec> {
        self.images.iter().map(PauliOperator::row).collect()
    }

    pub fn phase_bits(&self) -> BitVec {
        BitVec::from_bools(
            &self
                .images
                .iter()
                .map(|p| p.sign().is_negative())
                .collect::<Vec<_>>(),
        )
    }

    /// `F Omega F^T = Omega` with `Omega = [[0, I], [I, 0]]`: every `X_i` image
    /// anticommutes with the matching `Z_i` image and commutes with the rest.
    pub fn is_symplectic(&self) -> bool {
        let n = self.n;
        for i in 0..2 * n {
            for j in i + 1..2 * n {
                let want = j == i + n;
                if self.images[i].anticommutes(&self.images[j]) != want {
                    return false;
                }
            }
        }
        true
    }

    /// Conjugates an arbitrary Pauli by the Clifford this tableau describes.
    pub fn apply(&self, p: &PauliOperator) -> Result<PauliOperator> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: p.n(),
            });
        }
        // p = sign * prod_j i^(a_j b_j) X_j^a_j Z_j^b_j
        //   = sign * i^(|a&b|) * (prod_j X_j^a_j) (prod_j Z_j^b_j)
        // with a single reordering of each Z_j past X_j already absorbed in
        // the (X, Z)-per-site order, which matches (prod X)(prod Z) exactly
        // because factors on different sites commute.
        let mut acc = PauliOperator::identity(self.n);
        let mut quarter_turns = p.x_bits().and_count(p.z_bits()) % 4;
        for j in p.x_bits().iter_ones() {
            let (next, odd) = acc.mul_raw(&self.images[j]);
            acc = next;
            if odd {
                quarter_turns += 3;
            }
        }
        for j in p.z_bits().iter_ones() {
            let (next, odd) = acc.mul_raw(&self.images[self.n + j]);
            acc = next;
            if odd {
                quarter_turns += 3;
            }
        }
        debug_assert_eq!(quarter_turns % 2, 0, "image of a Hermitian Pauli");
        let mut out = acc;
        if quarter_turns % 4 == 2 {
            out = out.negated();
        }
        if p.sign().is_negative() {
            out = out.negated();
        }
        Ok(out)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SymplecticMatrix) -> Result<SymplecticMatrix> {
        if self.n != next.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: next.n,
            });
        }
        let images = self
            .images
            .iter()
            .map(|im| next.apply(im))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymplecticMatrix { n: self.n, images })
    }

    /// Same binary matrix, ignoring phases.
    pub fn same_symplectic_part(&self, other: &SymplecticMatrix) -> bool {
        self.n == other.n
            && self
                .images
                .iter()
                .zip(&other.images)
                .all(|(a, b)| a.x_bits() == b.x_bits() && a.z_bits() == b.z_bits())
    }
}

/// Tableau of a circuit: the signed images of all `2n` generators.
pub fn tableau_of(c: &Circuit) -> SymplecticMatrix {
    let mut t = SymplecticMatrix::identity(c.n());
    for im in t.images.iter_mut() {
        for g in c.gates() {
            im.apply_gate(g).expect("circuit wires are validated on insertion");
        }
    }
    debug_assert!(t.is_symplectic());
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    #[test]
    fn identity_circuit() {
        let t = tableau_of(&Circuit::new(3).unwrap());
        assert_eq!(t, SymplecticMatrix::identity(3));
        assert!(t.phase_bits().is_zero());
    }

    #[test]
    fn hadamard_swaps_blocks() {
        let t = tableau_of(&Circuit::from_gates(1, [Gate::H(1)]).unwrap());
        assert_eq!(
            t.rows(),
            vec![
                BitVec::from_bools(&[false, true]),
                BitVec::from_bools(&[true, false])
            ]
        );
        assert!(t.phase_bits().is_zero());
    }

    #[test]
    fn non_symplectic_rejected() {
        let bad = vec![
            PauliOperator::x_on(2, [1]),
            PauliOperator::x_on(2, [2]),
            PauliOperator::x_on(2, [1]),
            PauliOperator::z_on(2, [2]),
        ];
        assert!(matches!(
            SymplecticMatrix::from_images(bad),
            Err(Error::NotSymplectic)
        ));
    }

    #[test]
    fn apply_matches_direct_conjugation_on_y() {
        let c = Circuit::from_gates(2, [Gate::P(1), Gate::cx(1, 2), Gate::H(2)]).unwrap();
        let t = tableau_of(&c);
        for s in ["+YI", "-YY", "+XZ", "+ZY"] {
            let p: PauliOperator = s.parse().unwrap();
            assert_eq!(t.apply(&p).unwrap(), p.conjugate_by_circuit(&c).unwrap(), "{s}");
        }
    }
}
