//! Chernoff approximations to the transport and heat semigroups.
//!
//! Every Chernoff function studied here is a convex combination of shift
//! operators, so it is represented by an atomic [`ShiftMeasure`] and its n-th
//! composition degree by the n-fold convolution power of that measure. The
//! crate measures the sup-norm distance between these approximations and
//! the exact solutions, and estimates empirical convergence orders.
//!
//! Modules:
//!
//! * [`func`] and [`measure`]: initial conditions, grids, sup-norm, the
//!   convolution engine.
//! * [`transport`]: translation semigroup, power-law and slow families.
//! * [`heat`]: exact heat solutions, `erfc`, schemes G1/G2/G3, exact
//!   binomial coefficients.
//! * [`analysis`]: error curves, log-log regression, leading constants,
//!   bound probes.
//! * [`experiment`]: configuration, presets, the experiment runner and
//!   CSV/JSON/SVG output.

pub mod analysis;
pub mod error;
pub mod experiment;
pub mod func;
pub mod heat;
pub mod measure;
pub mod transport;

pub use analysis::{
    conjecture_bound_probe, error_curve, leading_coefficient, loglog_fit, loglog_fit_window,
    ErrorRecord, LeadingCoefficient, ProbeResult, Problem, RegressionFit, Scheme, Trend,
};
pub use error::{Error, Result};
pub use func::{eval_initial, sup_norm_diff, Grid, InitialCondition, Tabulated};
pub use heat::{HeatParams, HeatScheme};
pub use measure::{apply_measure, convolve_measures, measure_power, Atom, ShiftMeasure};
pub use transport::{PowerLawScheme, SlowScheme, TransportScheme};
