//! Impedance-matching oracles and the small-network falsification harness.

mod check;
mod fit;

pub use check::{impedance_residual, verify_exact, verify_numeric};
pub use fit::{
    falsify_small, fit_topology, instantiate, FalsifyEntry, FalsifyReport, FitOptions, FitResult,
    FALSIFY_MAX_ELEMENTS,
};
