//! Shared helpers for the benchmarks.

use qsk_core::HadamardPlacement;

/// Hadamards on every other qubit starting at 1, up to `h` of them, then
/// filling the even positions.
pub fn spread_placement(k: usize, h: usize) -> HadamardPlacement {
    let order = (1..=k).step_by(2).chain((2..=k).step_by(2));
    HadamardPlacement::new(k, order.take(h).collect::<Vec<_>>()).expect("valid placement")
}
