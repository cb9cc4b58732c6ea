//! The `[[n, n-2, 2]]` code family with stabilizers `X_[n]`, `Z_[n]` and
//! logical representatives `X_1 X_{i+1}`, `Z_{i+1} Z_n`.

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CodeInstance {
    k: usize,
}

impl CodeInstance {
    /// Requires `k >= 2` and `k` even (so that `n = k + 2` is even).
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::KernelTooSmall(k));
        }
        if k % 2 == 1 {
            return Err(Error::OddK(k));
        }
        Ok(Self { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.k + 2
    }

    /// Physical wire carrying logical qubit `i`: `E(i) = i + 1`.
    pub fn embed_wire(&self, i: usize) -> usize {
        debug_assert!((1..=self.k).contains(&i));
        i + 1
    }

    /// `(X_[n], Z_[n])`, both with sign `+1`.
    pub fn stabilizers(&self) -> (PauliOperator, PauliOperator) {
        let n = self.n();
        (
            PauliOperator::x_on(n, 1..=n),
            PauliOperator::z_on(n, 1..=n),
        )
    }

    pub fn stabilizer_list(&self) -> [PauliOperator; 2] {
        let (sx, sz) = self.stabilizers();
        [sx, sz]
    }

    /// `(X_1 X_{E(i)}, Z_{E(i)} Z_n)` for logical index `1 <= i <= k`.
    pub fn logical_reps(&self, i: usize) -> Result<(PauliOperator, PauliOperator)> {
        if i == 0 || i > self.k {
            return Err(Error::LogicalIndex { index: i, k: self.k });
        }
        let n = self.n();
        let w = self.embed_wire(i);
        Ok((
            PauliOperator::x_on(n, [1, w]),
            PauliOperator::z_on(n, [w, n]),
        ))
    }

    /// Substitutes `X_i -> X_1 X_{E(i)}`, `Z_i -> Z_{E(i)} Z_n` into a logical
    /// Pauli. Factors are multiplied in ascending logical index, X before Z on
    /// each index, so `Y_i` maps to `i X_bar_i Z_bar_i` and the sign is exact.
    pub fn embed(&self, p: &PauliOperator) -> Result<PauliOperator> {
        if p.n() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: p.n(),
            });
        }
        let n = self.n();
        let mut acc = PauliOperator::identity(n);
        for i in 1..=self.k {
            let (xb, zb) = (p.x_bits().get(i - 1), p.z_bits().get(i - 1));
            if !xb && !zb {
                continue;
            }
            let (lx, lz) = self.logical_reps(i)?;
            let site = match (xb, zb) {
                (true, false) => lx,
                (false, true) => lz,
                _ => {
                    // Y = i X Z; X_bar Z_bar = (-i) * (i X_bar Z_bar)
                    let (prod, odd) = lx.mul_raw(&lz);
                    debug_assert!(odd);
                    prod
                }
            };
            // Distinct logical indices commute, so the product stays Hermitian.
            acc = acc.mul_commuting(&site);
        }
        let sign = acc.sign() * p.sign();
        Ok(acc.with_sign(sign))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn validity() {
        assert!(matches!(CodeInstance::new(3), Err(Error::OddK(3))));
        assert!(matches!(CodeInstance::new(0), Err(Error::KernelTooSmall(0))));
        assert_eq!(CodeInstance::new(2).unwrap().n(), 4);
    }

    #[test]
    fn stabilizers_k2() {
        let (sx, sz) = CodeInstance::new(2).unwrap().stabilizers();
        assert_eq!(sx, p("+XXXX"));
        assert_eq!(sz, p("+ZZZZ"));
        assert!(!sx.symplectic_product(&sz).unwrap());
        let (sx, _) = CodeInstance::new(20).unwrap().stabilizers();
        assert_eq!(sx.weight(), 22);
    }

    #[test]
    fn logical_reps_formula() {
        let c = CodeInstance::new(2).unwrap();
        assert_eq!(c.logical_reps(1).unwrap(), (p("XXII"), p("IZIZ")));
        let c20 = CodeInstance::new(20).unwrap();
        let (x, z) = c20.logical_reps(20).unwrap();
        assert_eq!(x, PauliOperator::x_on(22, [1, 21]));
        assert_eq!(z, PauliOperator::z_on(22, [21, 22]));
        assert!(matches!(c.logical_reps(3), Err(Error::LogicalIndex { .. })));
    }

    #[test]
    fn logical_commutation_relations() {
        for k in [2, 4, 6, 8] {
            let c = CodeInstance::new(k).unwrap();
            let stabs = c.stabilizer_list();
            for i in 1..=k {
                let (xi, zi) = c.logical_reps(i).unwrap();
                for s in &stabs {
                    assert!(!xi.anticommutes(s) && !zi.anticommutes(s));
                }
                for j in 1..=k {
                    let (xj, zj) = c.logical_reps(j).unwrap();
                    assert_eq!(xi.anticommutes(&zj), i == j);
                    assert!(!xi.anticommutes(&xj));
                    assert!(!zi.anticommutes(&zj));
                }
            }
        }
    }

    #[test]
    fn embed_examples() {
        let c = CodeInstance::new(2).unwrap();
        assert_eq!(c.embed(&p("XI")).unwrap(), p("XXII"));
        assert_eq!(c.embed(&p("XX")).unwrap(), p("IXXI"));
        assert_eq!(c.embed(&p("-II")).unwrap(), p("-IIII"));
        assert_eq!(c.embed(&p("II")).unwrap(), p("+IIII"));
        // Y_1 -> i (X1 X2)(Z2 Z4) = X1 (i X2 Z2) Z4 = X1 Y2 Z4
        assert_eq!(c.embed(&p("YI")).unwrap(), p("XYIZ"));
        assert!(c.embed(&p("XXX")).is_err());
    }

    #[test]
    fn embed_is_a_homomorphism() {
        let c = CodeInstance::new(4).unwrap();
        let letters = ["I", "X", "Y", "Z"];
        let all: Vec<PauliOperator> = (0..256)
            .map(|m| {
                let s: String = (0..4).map(|q| letters[(m >> (2 * q)) & 3]).collect();
                p(&s)
            })
            .collect();
        for a in all.iter().step_by(7) {
            for b in all.iter().step_by(5) {
                let (ab, odd) = a.mul_raw(b);
                if odd {
                    continue;
                }
                let lhs = c.embed(&ab).unwrap();
                let (rhs, odd2) = c.embed(a).unwrap().mul_raw(&c.embed(b).unwrap());
                assert!(!odd2);
                assert_eq!(lhs, rhs, "{a} * {b}");
            }
        }
    }
}
