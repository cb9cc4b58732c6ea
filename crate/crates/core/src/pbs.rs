//! Piecewise-best selection: pick a strategy from `(k, h)` alone.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernel::HadamardPlacement;
use crate::strategies::{closed_form_two_qubit_count, emit, CompilationResult, StrategyId};

/// Smallest `k` for which the threshold rule is used as given; below it the
/// rule falls back to the empirical argmin.
pub const RULE_MIN_K: usize = 11;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SelectionPolicy {
    /// Low below `k/4`, Mid on `[k/4, 3k/4]`, High above.
    #[default]
    RuleBased,
    /// Fewest two-qubit gates among the three, ties broken Low < Mid < High.
    Empirical,
}

impl SelectionPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            SelectionPolicy::RuleBased => "rule",
            SelectionPolicy::Empirical => "empirical",
        }
    }
}

impl fmt::Display for SelectionPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SelectionPolicy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rule" | "rule_based" => Ok(SelectionPolicy::RuleBased),
            "empirical" => Ok(SelectionPolicy::Empirical),
            _ => Err(format!("unknown policy '{s}' (expected rule or empirical)")),
        }
    }
}

/// Threshold rule, extended to `h = 0` (Low) and `h = k` (High).
pub fn rule_strategy(k: usize, h: usize) -> StrategyId {
    if 4 * h < k {
        StrategyId::Low
    } else if 4 * h <= 3 * k {
        StrategyId::Mid
    } else {
        StrategyId::High
    }
}

/// Argmin of the closed-form two-qubit counts. These equal the emitted counts
/// for every placement, so the canonical placement stands in for all of them.
pub fn empirical_strategy(k: usize, h: usize) -> StrategyId {
    StrategyId::ALL
        .into_iter()
        .min_by_key(|&s| closed_form_two_qubit_count(s, k, h))
        .expect("three strategies")
}

pub fn select_strategy(k: usize, h: usize, policy: SelectionPolicy) -> Result<StrategyId> {
    if k < 2 || k % 2 == 1 {
        return Err(Error::OddK(k));
    }
    if h > k {
        return Err(Error::InvalidPlacement(format!("h = {h} exceeds k = {k}")));
    }
    Ok(match policy {
        SelectionPolicy::RuleBased if k >= RULE_MIN_K => rule_strategy(k, h),
        _ => empirical_strategy(k, h),
    })
}

pub fn compile_pbs(p: &HadamardPlacement, policy: SelectionPolicy) -> Result<CompilationResult> {
    emit(select_strategy(p.k(), p.h(), policy)?, p)
}

/// `h` values at which the empirical choice changes, as `(h, from, to)`.
pub fn empirical_crossovers(k: usize) -> Vec<(usize, StrategyId, StrategyId)> {
    let mut out = Vec::new();
    let mut prev = empirical_strategy(k, 0);
    for h in 1..=k {
        let s = empirical_strategy(k, h);
        if s != prev {
            out.push((h, prev, s));
            prev = s;
        }
    }
    out
}
