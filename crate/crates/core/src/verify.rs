//! Executable correctness checks for compiled logical circuits: the logical
//! Pauli constraints of a kernel, and preservation of `X_[n]` and `Z_[n]`.

use serde::Serialize;

use crate::circuit::Circuit;
use crate::code::CodeInstance;
use crate::error::{Error, Result};
use crate::kernel::{logical_action, HadamardPlacement};
use crate::pauli::{reduce_mod_span, PauliOperator, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintStatus {
    Exact,
    UpToStabilizer,
    SignFlip,
    Fail,
}

/// One logical constraint `P_bar -> target` checked against the candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintRecord {
    /// `X3`, `Z1`, ...
    pub id: String,
    pub status: ConstraintStatus,
    /// Which of `(X_[n], Z_[n])` separate the image from the target.
    pub stabilizer_factor: [bool; 2],
    pub sign: i8,
    pub image: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerRecord {
    /// `X_[n]` or `Z_[n]`.
    pub id: String,
    pub preserved: bool,
    pub sign: i8,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub placement: String,
    pub constraints: Vec<ConstraintRecord>,
    pub stabilizers: Vec<StabilizerRecord>,
    pub pass: bool,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report JSON is infallible")
    }

    pub fn failing_constraints(&self) -> impl Iterator<Item = &ConstraintRecord> {
        self.constraints.iter().filter(|r| {
            !matches!(
                r.status,
                ConstraintStatus::Exact | ConstraintStatus::UpToStabilizer
            )
        })
    }
}

fn classify(
    image: &PauliOperator,
    target: &PauliOperator,
    stabs: &[PauliOperator; 2],
) -> (ConstraintStatus, [bool; 2], i8) {
    // image * target^-1 with target Hermitian
    let (diff, imaginary) = image.mul_raw(target);
    if imaginary {
        return (ConstraintStatus::Fail, [false; 2], 0);
    }
    match reduce_mod_span(&diff, stabs) {
        Ok(Some(red)) => {
            let factor = [red.combination.get(0), red.combination.get(1)];
            let status = match (red.residual_sign, factor == [false, false]) {
                (Sign::Minus, _) => ConstraintStatus::SignFlip,
                (Sign::Plus, true) => ConstraintStatus::Exact,
                (Sign::Plus, false) => ConstraintStatus::UpToStabilizer,
            };
            (status, factor, red.residual_sign.as_i8())
        }
        _ => (ConstraintStatus::Fail, [false; 2], 0),
    }
}

/// Checks all `2k` logical constraints of the kernel fixed by `p`.
pub fn check_logical_constraints(
    candidate: &Circuit,
    p: &HadamardPlacement,
) -> Result<Vec<ConstraintRecord>> {
    let code = CodeInstance::new(p.k())?;
    if candidate.n() != code.n() {
        return Err(Error::DimensionMismatch {
            expected: code.n(),
            found: candidate.n(),
        });
    }
    let action = logical_action(p);
    let stabs = code.stabilizer_list();
    let k = p.k();
    let mut records = Vec::with_capacity(2 * k);
    for i in 1..=k {
        let (lx, lz) = code.logical_reps(i)?;
        for (label, input, logical_image) in [
            ('X', lx, action.x_image(i)),
            ('Z', lz, action.z_image(i)),
        ] {
            let image = input.conjugate_by_circuit(candidate)?;
            let target = code.embed(logical_image)?;
            let (status, stabilizer_factor, sign) = classify(&image, &target, &stabs);
            records.push(ConstraintRecord {
                id: format!("{label}{i}"),
                status,
                stabilizer_factor,
                sign,
                image: image.to_string(),
                target: target.to_string(),
            });
        }
    }
    Ok(records)
}

/// Conjugates `X_[n]` and `Z_[n]`; each must land in the stabilizer group up
/// to a sign.
pub fn check_stabilizer_preservation(candidate: &Circuit) -> Result<Vec<StabilizerRecord>> {
    let n = candidate.n();
    if n % 2 == 1 {
        return Err(Error::OddK(n.saturating_sub(2)));
    }
    let stabs = [
        PauliOperator::x_on(n, 1..=n),
        PauliOperator::z_on(n, 1..=n),
    ];
    let mut out = Vec::with_capacity(2);
    for (id, s) in ["X_[n]", "Z_[n]"].into_iter().zip(&stabs) {
        let image = s.conjugate_by_circuit(candidate)?;
        let red = reduce_mod_span(&image, &stabs)?;
        out.push(StabilizerRecord {
            id: id.to_string(),
            preserved: red.is_some(),
            sign: red.map_or(0, |r| r.residual_sign.as_i8()),
            image: image.to_string(),
        });
    }
    Ok(out)
}

/// Passes iff every logical constraint holds with sign `+1` (possibly up to a
/// stabilizer) and both stabilizers are preserved up to sign.
pub fn verify(candidate: &Circuit, p: &HadamardPlacement) -> Result<VerificationReport> {
    let constraints = check_logical_constraints(candidate, p)?;
    let stabilizers = check_stabilizer_preservation(candidate)?;
    let pass = constraints.iter().all(|r| {
        matches!(
            r.status,
            ConstraintStatus::Exact | ConstraintStatus::UpToStabilizer
        )
    }) && stabilizers.iter().all(|s| s.preserved);
    Ok(VerificationReport {
        placement: p.to_string(),
        constraints,
        stabilizers,
        pass,
    })
}
