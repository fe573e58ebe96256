//! Curvature of the invariant metrics `g = (x1, x2, x3, x4)` on
//! `M = H×H/ΔK`, where `H/K` is an irreducible symmetric space and `ΔK`
//! the diagonal copy of `K`.
//!
//! The crate evaluates the Ricci tensor, the scalar curvature and the
//! normalized scalar curvature of this family, produces its closed-form
//! Einstein metrics, and classifies them as critical points of the
//! normalized scalar curvature through Hessians on the `x3 = 1` slice.
//!
//! ```
//! use hxh_einstein::{normalized_scalar, Metric4, SpaceParams};
//!
//! // SU(4)×SU(4)/ΔSp(2): n = 5, d = 10, a = 3/4
//! let space = SpaceParams::with_single_a(10.0, 0.75);
//! let g5 = Metric4::new(0.5, 1.5, 1.0, 0.5)?;
//! let value = normalized_scalar(&space, &g5);
//! assert!((value - 20.0 * 2f64.powf(-1.25)).abs() < 1e-12);
//! # Ok::<(), hxh_einstein::Error>(())
//! ```
//!
//! See the guide under `book/` for the background of each module.

pub mod catalog;
pub mod curvature;
pub mod einstein;
mod error;
pub mod grid;
pub mod linalg;
pub mod metric;
pub mod stability;

pub use catalog::{
    builtin_catalog, builtin_families, load_catalog, validate, IsotropyIdeal, SpaceDescriptor,
    SpaceParams, FamilyParams, SpaceFamily, Violation,
};
pub use curvature::{
    compute_r, grad_slice, hess_slice, normalized_scalar, normalized_scalar_slice,
    ricci_components, scalar_curvature, scalar_trace_oracle, slice_gradient, volume_det,
    RicciComponents,
};
pub use einstein::{
    closed_form_einstein_metrics, closed_form_normalized_scalar, einstein_check,
    refine_critical_point, EinsteinCheck, EinsteinSolution, Label, NewtonOptions, NewtonOutcome,
};
pub use error::{Error, Result};
pub use grid::{GridSpec, Plane};
pub use linalg::{Eigen3, SymMatrix3};
pub use metric::{Metric4, SlicePoint};
pub use stability::{
    analytic_hessian_g3, analytic_hessian_g5, stated_determinant, stability_report,
    StatedDeterminant, StabilityReport,
};

// Code blocks in the guide run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/metrics.md")]
    pub struct Metrics;
    #[doc = include_str!("../../../book/src/curvature.md")]
    pub struct Curvature;
    #[doc = include_str!("../../../book/src/einstein.md")]
    pub struct Einstein;
    #[doc = include_str!("../../../book/src/stability.md")]
    pub struct Stability;
    #[doc = include_str!("../../../book/src/catalog.md")]
    pub struct Catalog;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
