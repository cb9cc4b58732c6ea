//! Oracles shared by the integration tests. None of them go through the
//! crate's Pauli algebra: the dense model multiplies complex matrices and the
//! noise oracle propagates a full distribution over frames.

#![allow(dead_code)]

use std::collections::HashMap;

use num_complex::Complex64;
use qsk_core::{Circuit, Gate};
use rand::Rng;

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> Matrix {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    let mut out = vec![vec![c(0.0, 0.0); d]; d];
    for i in 0..d {
        for k in 0..d {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..d {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn dagger(a: &Matrix) -> Matrix {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (da, db) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); da * db]; da * db];
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    out[i * db + k][j * db + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn close(a: &Matrix, b: &Matrix) -> bool {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .all(|(x, y)| (x - y).norm() < 1e-9)
}

fn single(ch: char) -> Matrix {
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match ch {
        'I' => vec![vec![one, z], vec![z, one]],
        'X' => vec![vec![z, one], vec![one, z]],
        'Y' => vec![vec![z, -i], vec![i, z]],
        'Z' => vec![vec![one, z], vec![z, -one]],
        _ => panic!("bad Pauli letter {ch}"),
    }
}

/// Dense matrix of a signed Pauli string such as `-XYZ`; wire 1 is the most
/// significant tensor factor.
pub fn pauli_matrix(s: &str) -> Matrix {
    let (sign, body) = match s.as_bytes()[0] {
        b'+' => (1.0, &s[1..]),
        b'-' => (-1.0, &s[1..]),
        _ => (1.0, s),
    };
    let mut m = vec![vec![c(sign, 0.0)]];
    for ch in body.chars() {
        m = kron(&m, &single(ch));
    }
    m
}

fn embed_single(n: usize, w: usize, u: &Matrix) -> Matrix {
    let mut m = vec![vec![c(1.0, 0.0)]];
    for q in 1..=n {
        m = kron(&m, &if q == w { u.clone() } else { identity(2) });
    }
    m
}

fn bit(idx: usize, n: usize, w: usize) -> bool {
    idx >> (n - w) & 1 == 1
}

pub fn gate_matrix(n: usize, g: &Gate) -> Matrix {
    let d = 1 << n;
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match *g {
        Gate::H(w) => embed_single(n, w, &vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]]),
        Gate::P(w) => embed_single(n, w, &vec![vec![one, z], vec![z, c(0.0, 1.0)]]),
        Gate::Pdg(w) => embed_single(n, w, &vec![vec![one, z], vec![z, c(0.0, -1.0)]]),
        Gate::X(w) => embed_single(n, w, &single('X')),
        Gate::Z(w) => embed_single(n, w, &single('Z')),
        Gate::CX { control, target } => {
            let mut m = vec![vec![z; d]; d];
            for col in 0..d {
                let row = if bit(col, n, control) { col ^ (1 << (n - target)) } else { col };
                m[row][col] = one;
            }
            m
        }
        Gate::CZ(a, b) => {
            let mut m = vec![vec![z; d]; d];
            for i in 0..d {
                m[i][i] = if bit(i, n, a) && bit(i, n, b) { -one } else { one };
            }
            m
        }
    }
}

pub fn circuit_matrix(circ: &Circuit) -> Matrix {
    let mut u = identity(1 << circ.n());
    for g in circ.gates() {
        u = matmul(&gate_matrix(circ.n(), g), &u);
    }
    u
}

/// Uniformly random gate over the full alphabet on `n` wires.
pub fn random_gate<R: Rng>(n: usize, rng: &mut R) -> Gate {
    let a = rng.random_range(1..=n);
    let pick = if n == 1 { rng.random_range(0..5) } else { rng.random_range(0..7) };
    let other = |rng: &mut R| loop {
        let b = rng.random_range(1..=n);
        if b != a {
            return b;
        }
    };
    match pick {
        0 => Gate::H(a),
        1 => Gate::P(a),
        2 => Gate::Pdg(a),
        3 => Gate::X(a),
        4 => Gate::Z(a),
        5 => Gate::cx(a, other(rng)),
        _ => Gate::cz(a, other(rng)),
    }
}

pub fn random_circuit<R: Rng>(n: usize, len: usize, rng: &mut R) -> Circuit {
    Circuit::from_gates(n, (0..len).map(|_| random_gate(n, rng))).unwrap()
}

/// Exact `(p_acc, p_succ)` by pushing the whole frame distribution through
/// the circuit. Frames are `(x mask, z mask)` with wire `w` at bit `w - 1`.
pub fn exact_rates(circ: &Circuit, p1: f64, p2: f64) -> (f64, f64) {
    let n = circ.n();
    let mut dist: HashMap<(u64, u64), f64> = HashMap::from([((0, 0), 1.0)]);
    let get = |m: u64, w: usize| m >> (w - 1) & 1 == 1;
    for g in circ.gates() {
        // propagate through g
        dist = dist
            .into_iter()
            .map(|((mut x, mut z), pr)| {
                match *g {
                    Gate::H(w) => {
                        let (xb, zb) = (get(x, w), get(z, w));
                        x = (x & !(1 << (w - 1))) | (zb as u64) << (w - 1);
                        z = (z & !(1 << (w - 1))) | (xb as u64) << (w - 1);
                    }
                    Gate::P(w) | Gate::Pdg(w) => z ^= (get(x, w) as u64) << (w - 1),
                    Gate::X(_) | Gate::Z(_) => {}
                    Gate::CX { control, target } => {
                        x ^= (get(x, control) as u64) << (target - 1);
                        z ^= (get(z, target) as u64) << (control - 1);
                    }
                    Gate::CZ(a, b) => {
                        let (xa, xb) = (get(x, a), get(x, b));
                        z ^= (xb as u64) << (a - 1);
                        z ^= (xa as u64) << (b - 1);
                    }
                }
                ((x, z), pr)
            })
            .collect();
        // then the channel
        let (ws, p, count): (Vec<usize>, f64, usize) = match *g {
            Gate::CX { control, target } => (vec![control, target], p2, 15),
            Gate::CZ(a, b) => (vec![a, b], p2, 15),
            Gate::H(w) | Gate::P(w) | Gate::Pdg(w) | Gate::X(w) | Gate::Z(w) => (vec![w], p1, 3),
        };
        if p == 0.0 {
            continue;
        }
        let mut next: HashMap<(u64, u64), f64> = HashMap::new();
        for (&(x, z), &pr) in &dist {
            *next.entry((x, z)).or_default() += pr * (1.0 - p);
            for e in 1..=count {
                // e encodes one letter (I, X, Y, Z) per wire, first wire high
                let (mut ex, mut ez) = (0u64, 0u64);
                for (slot, &w) in ws.iter().enumerate() {
                    let letter = if ws.len() == 2 { [e / 4, e % 4][slot] } else { e };
                    let (lx, lz) = [(0, 0), (1, 0), (1, 1), (0, 1)][letter];
                    ex |= lx << (w - 1);
                    ez |= lz << (w - 1);
                }
                *next.entry((x ^ ex, z ^ ez)).or_default() += pr * p / count as f64;
            }
        }
        dist = next;
    }
    let full = (1u64 << n) - 1;
    let mut acc = 0.0;
    let mut succ = 0.0;
    for (&(x, z), &pr) in &dist {
        if x.count_ones() % 2 == 0 && z.count_ones() % 2 == 0 {
            acc += pr;
            if (x == 0 || x == full) && (z == 0 || z == full) {
                succ += pr;
            }
        }
    }
    (acc, succ)
}
