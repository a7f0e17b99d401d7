//! Property checks, residual sweeps and refinement studies, each producing
//! a serializable report.

mod checks;
mod refinement;
mod report;
mod sweep;

pub use checks::{
    check_dft_equivalence, check_linearity, check_periodic_sum, run_suite, Suite, DFT_TOLERANCE, LINEARITY_TOLERANCE,
    PERIODIC_TOLERANCE,
};
pub use refinement::{refinement_study, TestFunction, REFINEMENT_TOLERANCE};
pub use report::{CheckReport, SuiteReport, SweepRow, SweepTable};
pub use sweep::{residual_sweep, SignalFamily, CLASSICAL_ROUNDTRIP_TOLERANCE};
