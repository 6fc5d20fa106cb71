//! Desk-scale experiments: residual counting for the order relation,
//! exhaustive cross-checks, and the refinement figure.

mod checks;
mod figure;
mod nerode;

pub use checks::{
    mk_density_scan, modulo_cross_check, mq_separator_probe, roundtrip_check, DensityReport, ModuloMismatch,
    ModuloReport, RoundTripReport, SeparatorVerdict,
};
pub use figure::{refinement_figure, refinement_rows};
pub use nerode::{nerode_automaton_growth, nerode_order_growth, NerodeReport, NerodeRow, PREFIX_GUARD};
