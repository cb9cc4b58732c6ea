use std::fs;
use std::io::{self, Write};
use std::path::Path;

use qsk_core::kernel::parse_index_list;
use qsk_core::lcs::{
    build_constraints, depth_sweep, enumerate_solutions, placements_for, write_sweep_csv, SweepLabel,
};
use qsk_core::noise::{derive_seed, write_sim_csv, SimRow};
use qsk_core::{
    compile_pbs, emit, simulate as run_sim, verify as check, Circuit, CodeInstance,
    HadamardPlacement, NoiseModel, SelectionPolicy, StrategyId,
};
use serde::Serialize;

use crate::{
    CompileArgs, EnumerateArgs, Failure, Format, PlacementArgs, SimulateArgs, SweepArgs,
    VerifyArgs,
};

type Result<T> = std::result::Result<T, Failure>;

fn io_err(e: io::Error) -> Failure {
    Failure::Internal(e.to_string())
}

fn placement_from(k: usize, ih: Option<&str>, h: Option<usize>, seed: u64) -> Result<HadamardPlacement> {
    CodeInstance::new(k)?;
    match (ih, h) {
        (Some(list), _) => Ok(HadamardPlacement::new(k, parse_index_list(list)?)?),
        (None, Some(h)) => Ok(placements_for(k, h, 0, 1, seed)?.remove(0)),
        (None, None) => Err(Failure::Usage("one of --ih or --h is required".into())),
    }
}

fn placement(a: &PlacementArgs) -> Result<HadamardPlacement> {
    placement_from(a.k, a.ih.as_deref(), a.h, a.placement_seed)
}

/// Writes `bytes` to `out`, or stdout when absent.
fn emit_output(out: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(io_err),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes).map_err(io_err)?;
            stdout.flush().map_err(io_err)
        }
    }
}

fn require_pass(c: &Circuit, p: &HadamardPlacement, what: &str) -> Result<()> {
    let report = check(c, p)?;
    if report.pass {
        return Ok(());
    }
    let failing: Vec<&str> = report.failing_constraints().map(|r| r.id.as_str()).collect();
    Err(Failure::Verification(format!(
        "{what} for {p} failed verification (constraints {failing:?})"
    )))
}

#[derive(Serialize)]
struct Metrics {
    strategy: StrategyId,
    depth: usize,
    twoq: usize,
}

pub fn compile(a: CompileArgs) -> Result<()> {
    let p = placement(&a.placement)?;
    let result = match (a.strategy, a.policy) {
        (Some(s), _) => emit(s.into(), &p)?,
        (None, policy) => compile_pbs(&p, policy.map(Into::into).unwrap_or_default())?,
    };
    if !a.no_verify {
        require_pass(result.circuit(), &p, result.strategy().as_str())?;
    }
    let mut json = result.circuit().to_json();
    json.push('\n');
    emit_output(a.out.as_deref(), json.as_bytes())?;
    let m = Metrics {
        strategy: result.strategy(),
        depth: result.depth(),
        twoq: result.two_qubit_count(),
    };
    match a.format {
        Format::Json => eprintln!("{}", serde_json::to_string(&m).expect("metrics serialize")),
        Format::Csv => eprintln!("strategy,depth,twoq\n{},{},{}", m.strategy, m.depth, m.twoq),
    }
    Ok(())
}

pub fn verify(a: VerifyArgs) -> Result<()> {
    let p = placement(&a.placement)?;
    let text = fs::read_to_string(&a.circuit)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.circuit.display())))?;
    let c = Circuit::from_json(&text)?;
    let report = check(&c, &p)?;
    let mut json = report.to_json();
    json.push('\n');
    emit_output(a.out.as_deref(), json.as_bytes())?;
    if report.pass {
        Ok(())
    } else {
        let failing: Vec<&str> = report.failing_constraints().map(|r| r.id.as_str()).collect();
        Err(Failure::Verification(format!(
            "circuit does not implement {p}: failing constraints {failing:?}"
        )))
    }
}

pub fn sweep(a: SweepArgs) -> Result<()> {
    CodeInstance::new(a.k)?;
    if a.samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let mut labels: Vec<SweepLabel> = a
        .strategies
        .iter()
        .map(|&s| SweepLabel::Strategy(s.into()))
        .collect();
    if labels.is_empty() && !a.lcs_all {
        labels = StrategyId::ALL.iter().map(|&s| SweepLabel::Strategy(s)).collect();
    }
    if a.lcs_all {
        labels.extend((0..8).map(SweepLabel::Lcs));
    }
    let cap = if a.exhaustive { usize::MAX } else { a.samples };
    let mut placements = Vec::new();
    for h in 0..=a.k {
        placements.extend(placements_for(a.k, h, cap, a.samples, a.seed)?);
    }
    let rows = depth_sweep(&placements, &labels)?;
    let mut buf = Vec::new();
    write_sweep_csv(&rows, &mut buf)?;
    emit_output(a.out.as_deref(), &buf)
}

pub fn simulate(a: SimulateArgs) -> Result<()> {
    CodeInstance::new(a.k)?;
    let model = NoiseModel::new(a.p1, a.p2)?;
    if a.shots == 0 {
        return Err(qsk_core::Error::NoShots.into());
    }
    let pseed = a.placement_seed.unwrap_or(a.seed);
    let placements: Vec<HadamardPlacement> = match (&a.ih, a.h) {
        (Some(_), _) | (_, Some(_)) => vec![placement_from(a.k, a.ih.as_deref(), a.h, pseed)?],
        (None, None) => (1..a.k)
            .map(|h| placement_from(a.k, None, Some(h), pseed))
            .collect::<Result<_>>()?,
    };
    let policy: SelectionPolicy = a.policy.into();
    let mut rows = Vec::with_capacity(2 * placements.len());
    for p in &placements {
        let sas = emit(StrategyId::Mid, p)?;
        let pbs = compile_pbs(p, policy)?;
        for (tag, name, result) in [
            (0u64, "sas".to_string(), &sas),
            (1, format!("pbs:{}", pbs.strategy()), &pbs),
        ] {
            if !a.no_verify {
                require_pass(result.circuit(), p, &name)?;
            }
            let seed = derive_seed(a.seed, &[p.h() as u64, tag]);
            let stats = run_sim(result.circuit(), &model, a.shots, seed)?;
            rows.push(SimRow::new(p, name, &model, result.circuit(), &stats));
        }
    }
    let mut buf = Vec::new();
    write_sim_csv(&rows, &mut buf)?;
    emit_output(a.out.as_deref(), &buf)
}

#[derive(Serialize)]
struct SolutionJson {
    label: u8,
    a11: bool,
    a12: bool,
    a22: bool,
    depth: usize,
    twoq: usize,
    circuit: serde_json::Value,
}

pub fn enumerate_lcs(a: EnumerateArgs) -> Result<()> {
    let p = placement(&a.placement)?;
    let sols = enumerate_solutions(&build_constraints(&p)?)?;
    for s in &sols {
        require_pass(&s.circuit, &p, &format!("solution {}", s.label()))?;
    }
    let bytes = match a.format {
        Format::Json => {
            let list: Vec<SolutionJson> = sols
                .iter()
                .map(|s| SolutionJson {
                    label: s.label(),
                    a11: s.block.a11,
                    a12: s.block.a12,
                    a22: s.block.a22,
                    depth: s.circuit.depth(),
                    twoq: s.circuit.two_qubit_count(),
                    circuit: serde_json::from_str(&s.circuit.to_json()).expect("own JSON parses"),
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&list).expect("solutions serialize");
            text.push('\n');
            text.into_bytes()
        }
        Format::Csv => {
            let mut text = String::from("label,a11,a12,a22,depth,twoq\n");
            for s in &sols {
                text.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    s.label(),
                    s.block.a11 as u8,
                    s.block.a12 as u8,
                    s.block.a22 as u8,
                    s.circuit.depth(),
                    s.circuit.two_qubit_count()
                ));
            }
            text.into_bytes()
        }
    };
    emit_output(a.out.as_deref(), &bytes)
}
