//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails. Run with `cargo test -p qsk-core --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use qsk_core::lcs::{build_constraints, enumerate_solutions, placements_for};
use qsk_core::noise::{derive_seed, simulate, NoiseModel, SimStats};
use qsk_core::pbs::{compile_pbs, SelectionPolicy};
use qsk_core::verify::{check_logical_constraints, check_stabilizer_preservation, ConstraintStatus};
use qsk_core::{
    emit, synthesize, tableau_of, Circuit, Gate, HadamardPlacement, PauliOperator, StrategyId,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn all_placements(k: usize) -> Vec<HadamardPlacement> {
    (0..1u32 << k)
        .map(|mask| HadamardPlacement::new(k, (1..=k).filter(|i| mask >> (i - 1) & 1 == 1)).unwrap())
        .collect()
}

fn binom(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Expected image of `X_1 X_{w}` under the even mid strategy when `w` is the
/// embedded wire of a logical qubit without a Hadamard: `X_1 Y_w X_A Z_{B - w}`
/// with `A`, `B` the embedded Hadamard and non-Hadamard wires.
fn reference_image(p: &HadamardPlacement, w: usize) -> String {
    let n = p.k() + 2;
    let a: BTreeSet<usize> = p.hadamards().map(|i| i + 1).collect();
    let b: BTreeSet<usize> = p.complement().map(|i| i + 1).collect();
    let mut s = String::from("+");
    for q in 1..=n {
        s.push(if q == 1 {
            'X'
        } else if q == w {
            'Y'
        } else if a.contains(&q) {
            'X'
        } else if b.contains(&q) {
            'Z'
        } else {
            'I'
        });
    }
    s
}

fn criterion_1() -> Outcome {
    let mut placements = 0;
    let mut references = 0;
    for k in [2, 4, 6, 8] {
        for p in all_placements(k) {
            placements += 1;
            for s in StrategyId::ALL {
                let c = emit(s, &p).map_err(|e| format!("{s} {p}: {e}"))?.into_circuit();
                let logical = check_logical_constraints(&c, &p).map_err(|e| e.to_string())?;
                if let Some(bad) = logical.iter().find(|r| {
                    !matches!(r.status, ConstraintStatus::Exact | ConstraintStatus::UpToStabilizer)
                }) {
                    return Err(format!("{s} {p}: {} is {:?}", bad.id, bad.status));
                }
                let stabs = check_stabilizer_preservation(&c).map_err(|e| e.to_string())?;
                if !stabs.iter().all(|r| r.preserved && r.sign.abs() == 1) {
                    return Err(format!("{s} {p}: stabilizer not preserved"));
                }
            }
            if p.is_even() {
                let c = emit(StrategyId::Mid, &p).unwrap().into_circuit();
                for i in p.complement() {
                    let w = i + 1;
                    let input = PauliOperator::x_on(k + 2, [1, w]);
                    let got = input.conjugate_by_circuit(&c).unwrap().to_string();
                    let want = reference_image(&p, w);
                    if got != want {
                        return Err(format!("{p}: X1X{w} -> {got}, expected {want}"));
                    }
                    references += 1;
                }
            }
        }
    }
    Ok(format!(
        "{placements} placements x 3 strategies verified; {references} reference images matched exactly"
    ))
}

fn criterion_2() -> Outcome {
    let mut instances = 0;
    for k in [2, 4, 6] {
        for p in all_placements(k) {
            let sols = enumerate_solutions(&build_constraints(&p).map_err(|e| e.to_string())?)
                .map_err(|e| format!("{p}: {e}"))?;
            let distinct: BTreeSet<_> = sols.iter().map(|s| s.tableau.rows()).collect();
            if sols.len() != 8 || distinct.len() != 8 {
                return Err(format!("{p}: {} solutions, {} distinct", sols.len(), distinct.len()));
            }
            for s in &sols {
                if !qsk_core::verify(&s.circuit, &p).map_err(|e| e.to_string())?.pass {
                    return Err(format!("{p}: solution {} fails verification", s.label()));
                }
                if tableau_of(&s.circuit) != s.tableau {
                    return Err(format!("{p}: solution {} circuit/tableau mismatch", s.label()));
                }
            }
            instances += 1;
        }
    }
    Ok(format!("{instances} instances, 8 distinct verifier-passing solutions each"))
}

fn criterion_3() -> Outcome {
    let k = 8;
    for h in 0..=k {
        let ps = placements_for(k, h, usize::MAX, 0, 0).map_err(|e| e.to_string())?;
        if ps.len() != binom(k, h) {
            return Err(format!("h={h}: {} placements", ps.len()));
        }
        for s in StrategyId::ALL {
            let metrics: BTreeSet<(usize, usize)> = ps
                .iter()
                .map(|p| {
                    let r = emit(s, p).unwrap();
                    (r.depth(), r.two_qubit_count())
                })
                .collect();
            if metrics.len() != 1 {
                return Err(format!("{s} h={h}: metrics vary {metrics:?}"));
            }
        }
    }
    Ok("k=8: depth and two-qubit count constant over all placements for every h and strategy".into())
}

/// Two-qubit counts written out from the block structure: CX block `a b`,
/// CZ(A^2) and CZ(B^2) for mid, the complementary CZ sets for low/high.
fn formula(s: StrategyId, k: usize, h: usize) -> usize {
    let (a, b) = if h.is_multiple_of(2) { (h, k - h) } else { (h + 1, k - h + 1) };
    let n = k + 2;
    match s {
        StrategyId::Mid => a * b + binom(a, 2) + binom(b, 2),
        StrategyId::Low => a * b + binom(a, 2) + binom(n, 2) - binom(b, 2),
        StrategyId::High => a * b + binom(b, 2) + binom(n, 2) - binom(a, 2),
    }
}

fn criterion_4() -> Outcome {
    let k = 20;
    let mut strict = Vec::new();
    for h in 1..k {
        let mut ps = placements_for(k, h, 0, 3, 404).map_err(|e| e.to_string())?;
        ps.push(HadamardPlacement::new(k, 1..=h).unwrap());
        for p in &ps {
            let pbs = compile_pbs(p, SelectionPolicy::RuleBased).map_err(|e| e.to_string())?;
            let mid = emit(StrategyId::Mid, p).unwrap();
            let (np, nm) = (pbs.two_qubit_count(), mid.two_qubit_count());
            if np > nm {
                return Err(format!("{p}: PBS {np} > mid {nm}"));
            }
            if (h <= 4 || h >= 16) && np >= nm {
                return Err(format!("{p}: PBS {np} not below mid {nm}"));
            }
            if h % 2 == 0 && nm != h * (k - h) + binom(h, 2) + binom(k - h, 2) {
                return Err(format!("{p}: mid count {nm} off the even formula"));
            }
            for s in StrategyId::ALL {
                let got = emit(s, p).unwrap().two_qubit_count();
                if got != formula(s, k, h) {
                    return Err(format!("{p}: {s} count {got} != formula {}", formula(s, k, h)));
                }
            }
            if np < nm {
                strict.push(h);
            }
        }
    }
    strict.dedup();
    Ok(format!("k=20: PBS <= mid for h=1..19, strict at h in {strict:?}; counts match formulas"))
}

fn combined(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

fn criterion_5() -> Outcome {
    let (k, shots, base) = (20, 100_000u64, 7u64);
    let model = NoiseModel::new(0.01, 0.01).unwrap();
    let mut rows: Vec<(usize, SimStats, SimStats)> = Vec::new();
    for h in 1..k {
        let p = placements_for(k, h, 0, 1, base).map_err(|e| e.to_string())?.remove(0);
        let sas = emit(StrategyId::Mid, &p).unwrap().into_circuit();
        let pbs = compile_pbs(&p, SelectionPolicy::RuleBased).unwrap().into_circuit();
        let s = simulate(&sas, &model, shots, derive_seed(base, &[h as u64, 0])).unwrap();
        let q = simulate(&pbs, &model, shots, derive_seed(base, &[h as u64, 1])).unwrap();
        rows.push((h, s, q));
    }
    let mut worst_on_par = 0.0f64;
    let mut weakest_edge = f64::INFINITY;
    for (h, s, q) in &rows {
        let acc_tol = combined(s.p_acc_ci(), q.p_acc_ci());
        let succ_tol = combined(s.p_succ_ci(), q.p_succ_ci());
        if (6..=14).contains(h) {
            let da = (q.p_acc() - s.p_acc()).abs() / acc_tol;
            let ds = (q.p_succ() - s.p_succ()).abs() / succ_tol;
            worst_on_par = worst_on_par.max(da).max(ds);
            if da > 3.0 || ds > 3.0 {
                return Err(format!(
                    "h={h}: p_acc {:.4}/{:.4}, p_succ {:.4}/{:.4} differ by {:.2}/{:.2} half-widths",
                    s.p_acc(), q.p_acc(), s.p_succ(), q.p_succ(), da, ds
                ));
            }
        }
        if [1, 2, 3, 17, 18, 19].contains(h) {
            let gain = (q.p_succ() - s.p_succ()) / succ_tol;
            weakest_edge = weakest_edge.min(gain);
            if gain <= 3.0 {
                return Err(format!(
                    "h={h}: PBS p_succ {:.4} vs SAS {:.4}, gain {gain:.2} half-widths",
                    q.p_succ(),
                    s.p_succ()
                ));
            }
        }
    }
    Ok(format!(
        "k=20, p=0.01, 100k shots: on-par band max deviation {worst_on_par:.2} half-widths; edge gain min {weakest_edge:.1} half-widths"
    ))
}

fn criterion_6() -> Outcome {
    let circuits = [
        Circuit::from_gates(
            4,
            [Gate::H(1), Gate::cx(1, 2), Gate::cx(2, 3), Gate::cx(3, 4), Gate::P(2), Gate::H(4)],
        )
        .unwrap(),
        Circuit::from_gates(
            4,
            [
                Gate::cz(1, 2),
                Gate::cz(3, 4),
                Gate::H(2),
                Gate::H(3),
                Gate::cx(2, 3),
                Gate::P(1),
                Gate::cx(4, 1),
                Gate::Z(3),
                Gate::cz(1, 3),
                Gate::H(1),
            ],
        )
        .unwrap(),
        Circuit::from_gates(
            4,
            [
                Gate::P(2),
                Gate::cx(2, 1),
                Gate::Pdg(3),
                Gate::cz(2, 4),
                Gate::X(1),
                Gate::cx(3, 4),
                Gate::H(2),
                Gate::cz(1, 2),
                Gate::cx(4, 3),
            ],
        )
        .unwrap(),
    ];
    let model = NoiseModel::new(0.03, 0.06).unwrap();
    let mut worst = 0.0f64;
    for (i, c) in circuits.iter().enumerate() {
        if c.len() > 10 || c.n() != 4 {
            return Err(format!("circuit {i} has {} gates on {} wires", c.len(), c.n()));
        }
        let clean = simulate(c, &NoiseModel::noiseless(), 1000, i as u64).unwrap();
        if clean.p_acc() != 1.0 || clean.p_succ() != 1.0 {
            return Err(format!("circuit {i}: zero noise gave {}/{}", clean.p_acc(), clean.p_succ()));
        }
        let (acc, succ) = common::exact_rates(c, model.p1(), model.p2());
        let s = simulate(c, &model, 50_000, 600 + i as u64).unwrap();
        let da = (s.p_acc() - acc).abs() / s.p_acc_ci();
        let ds = (s.p_succ() - succ).abs() / s.p_succ_ci();
        worst = worst.max(da).max(ds);
        if da > 3.0 || ds > 3.0 {
            return Err(format!(
                "circuit {i}: MC {:.4}/{:.4} vs exact {acc:.4}/{succ:.4}",
                s.p_acc(),
                s.p_succ()
            ));
        }
    }
    Ok(format!("3 circuits, 50k shots: max deviation {worst:.2} half-widths; zero noise exact"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for t in 0..500 {
        let n = rng.random_range(1..=3);
        let len = rng.random_range(0..=20);
        let c = common::random_circuit(n, len, &mut rng);
        let u = common::circuit_matrix(&c);
        let ud = common::dagger(&u);
        for body in all_bodies(n) {
            let sign = if rng.random::<bool>() { "-" } else { "+" };
            let s = format!("{sign}{body}");
            let got = s.parse::<PauliOperator>().unwrap().conjugate_by_circuit(&c).unwrap();
            let want = common::matmul(&common::matmul(&u, &common::pauli_matrix(&s)), &ud);
            if !common::close(&common::pauli_matrix(&got.to_string()), &want) {
                return Err(format!("circuit {t}: {s} -> {got} disagrees with dense"));
            }
        }
    }
    for t in 0..1000 {
        let n = if t % 2 == 0 { 4 } else { 6 };
        let c = common::random_circuit(n, 80, &mut rng);
        let f = tableau_of(&c);
        let s = synthesize(&f).map_err(|e| e.to_string())?;
        if tableau_of(&s) != f {
            return Err(format!("round trip {t} on n={n} changed the tableau"));
        }
        let probe: String = (0..n).map(|_| ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)]).collect();
        let p: PauliOperator = probe.parse().unwrap();
        if p.conjugate_by_circuit(&s).unwrap() != p.conjugate_by_circuit(&c).unwrap() {
            return Err(format!("round trip {t}: behavior differs on {probe}"));
        }
    }
    Ok("500 circuits (n<=3) match dense conjugation with signs; 1000 synthesis round trips exact".into())
}

fn all_bodies(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|s| ['I', 'X', 'Y', 'Z'].map(|c| format!("{s}{c}")))
            .collect();
    }
    out
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("strategy correctness over all placements, k<=8", criterion_1),
        ("eight logical-constraint solutions, k<=6", criterion_2),
        ("placement invariance at k=8", criterion_3),
        ("PBS two-qubit dominance at k=20", criterion_4),
        ("SAS vs PBS under noise at k=20", criterion_5),
        ("frame simulator vs exact enumeration", criterion_6),
        ("dense-matrix and synthesis oracles", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
