//! Compilation and verification of the quantum-Schur-kernel family of logical
//! Clifford circuits on the `[[k+2, k, 2]]` iceberg code, plus a Pauli-frame
//! noise simulator for comparing strategies.

pub mod bits;
pub mod circuit;
pub mod code;
pub mod error;
pub mod kernel;
pub mod lcs;
pub mod noise;
pub mod pauli;
pub mod pbs;
pub mod strategies;
pub mod synth;
pub mod tableau;
pub mod verify;

pub use bits::BitVec;
pub use circuit::{Circuit, Gate};
pub use code::CodeInstance;
pub use error::{Error, Result};
pub use kernel::{build_cqsk, logical_action, HadamardPlacement, LogicalAction};
pub use noise::{simulate, NoiseModel, SimStats};
pub use pauli::{PauliKind, PauliOperator, Sign};
pub use pbs::{compile_pbs, select_strategy, SelectionPolicy};
pub use strategies::{emit, CompilationResult, Parity, StrategyId};
pub use synth::synthesize;
pub use tableau::{tableau_of, SymplecticMatrix};
pub use verify::{verify, ConstraintStatus, VerificationReport};
