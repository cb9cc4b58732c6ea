//! Circuit synthesis from a signed symplectic matrix.
//!
//! Staged elimination: gates are appended to the tableau until every row is a
//! bare generator, qubit by qubit. For each qubit the X row is brought to
//! `X_q` with `H`/`CX`/`CZ`/`P`, then the Z row is turned Z-type on the
//! remaining wires with local gates, folded onto `q` with `CX`, and any
//! leftover `Y_q` is cleared with `H P H`. The reversed gate list realizes the
//! matrix up to signs, which a trailing `X`/`Z` layer then fixes.

use crate::bits::{solve_linear_system, BitVec};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::tableau::{tableau_of, SymplecticMatrix};

struct Reducer {
    rows: Vec<PauliOperator>,
    gates: Vec<Gate>,
}

impl Reducer {
    fn apply(&mut self, g: Gate) {
        for r in self.rows.iter_mut() {
            r.apply_gate(&g).expect("synthesis gates stay in range");
        }
        self.gates.push(g);
    }

    fn x(&self, row: usize, q: usize) -> bool {
        self.rows[row].x_bits().get(q - 1)
    }

    fn z(&self, row: usize, q: usize) -> bool {
        self.rows[row].z_bits().get(q - 1)
    }
}

pub fn synthesize(f: &SymplecticMatrix) -> Result<Circuit> {
    if !f.is_symplectic() {
        return Err(Error::NotSymplectic);
    }
    let n = f.n();
    let mut red = Reducer {
        rows: f.images().to_vec(),
        gates: Vec::new(),
    };

    for q in 1..=n {
        let xr = q - 1;
        let zr = n + q - 1;

        // X row: get an X component onto wire q.
        if !red.x(xr, q) {
            if red.z(xr, q) {
                red.apply(Gate::H(q));
            } else {
                let j = (q + 1..=n)
                    .find(|&j| red.x(xr, j) || red.z(xr, j))
                    .ok_or(Error::NotSymplectic)?;
                if !red.x(xr, j) {
                    red.apply(Gate::H(j));
                }
                red.apply(Gate::cx(j, q));
            }
        }
        for j in q + 1..=n {
            if red.x(xr, j) {
                red.apply(Gate::cx(q, j));
            }
        }
        for j in q + 1..=n {
            if red.z(xr, j) {
                red.apply(Gate::cz(q, j));
            }
        }
        if red.z(xr, q) {
            red.apply(Gate::P(q));
        }

        // Z row: make the tail Z-type, fold it onto q, clear a Y on q.
        for j in q + 1..=n {
            match (red.x(zr, j), red.z(zr, j)) {
                (true, false) => red.apply(Gate::H(j)),
                (true, true) => {
                    red.apply(Gate::P(j));
                    red.apply(Gate::H(j));
                }
                _ => {}
            }
        }
        for j in q + 1..=n {
            if red.z(zr, j) {
                red.apply(Gate::cx(j, q));
            }
        }
        if red.x(zr, q) {
            red.apply(Gate::H(q));
            red.apply(Gate::P(q));
            red.apply(Gate::H(q));
        }
    }

    // F . G is now diagonal in signs only, so F ~ G^-1 on the binary part.
    // P^-1 and P share a binary matrix; keep the external alphabet.
    let mut circuit = Circuit::new(n)?;
    for g in red.gates.iter().rev() {
        circuit.push(*g)?;
    }
    fix_phases(&mut circuit, f)?;
    debug_assert_eq!(&tableau_of(&circuit), f);
    Ok(circuit)
}

/// Appends the Pauli layer that flips exactly the rows whose sign disagrees
/// with `target`.
fn fix_phases(circuit: &mut Circuit, target: &SymplecticMatrix) -> Result<()> {
    let n = target.n();
    let have = tableau_of(circuit);
    if !have.same_symplectic_part(target) {
        return Err(Error::NotSymplectic);
    }
    let mut flips = have.phase_bits();
    flips.xor_assign(&target.phase_bits());
    if flips.is_zero() {
        return Ok(());
    }
    // A trailing Pauli Q flips row s iff <F_s, Q> = 1, i.e. F_s . [Q_z | Q_x] = 1.
    let rows = target.rows();
    let v = solve_linear_system(&rows, 2 * n, &flips).ok_or(Error::NotSymplectic)?;
    let qz: BitVec = v.slice(0, n);
    let qx: BitVec = v.slice(n, n);
    for w in 1..=n {
        if qx.get(w - 1) {
            circuit.push(Gate::X(w))?;
        }
        if qz.get(w - 1) {
            circuit.push(Gate::Z(w))?;
        }
    }
    Ok(())
}
