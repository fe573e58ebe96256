//! Second variation of the normalized scalar curvature at Einstein metrics.
//!
//! The Hessians live on the `x3 = 1` slice in coordinates `(x1, x2, x4)`.
//! Since `scal_N` is scale invariant, the slice is a transversal to the
//! homothety orbits, and the coindex of a critical point is the number of
//! positive eigenvalues of the slice Hessian.
//!
//! Two closed-form Hessians are provided as stated in closed form:
//!
//! * `H(g5)` is stated with an asymmetric `(2,3)`/`(3,2)` pair. Only the
//!   `(2,3)` value reproduces the stated determinant `2·β³·n³`, so that
//!   value is used for both entries.
//! * `H(g3)` is kept verbatim. Its `(1,3)` and `(2,3)` entries are a quarter
//!   of the finite-difference values and its diagonal is positive, while its
//!   stated determinant agrees with the finite-difference one. Coindex
//!   claims therefore rest on the finite-difference Hessian.

use crate::catalog::SpaceParams;
use crate::curvature::{grad_slice, hess_slice, DEFAULT_REL_STEP};
use crate::error::{Error, Result};
use crate::linalg::SymMatrix3;
use crate::metric::SlicePoint;

/// Eigenvalues with `|λ| ≤ DEGENERACY_TOL·max|λ|` count as zero.
pub const DEGENERACY_TOL: f64 = 1e-8;
/// Gradient norm above which a point is flagged as not critical.
pub const CRITICALITY_TOL: f64 = 1e-5;
/// Relative deviation from an analytic Hessian that triggers a note.
pub const ANALYTIC_MATCH_TOL: f64 = 1e-3;

/// `β = 2^{−n/(d+2n)}`
fn beta(n: f64, d: f64) -> f64 {
    2f64.powf(-n / (d + 2.0 * n))
}

/// Closed-form Hessian of `scal_N` at `g5 = (1/2, 3/2, 1/2)`, symmetrized with
/// the row-2 value of the `(2,3)` entry.
pub fn analytic_hessian_g5(n: f64, d: f64) -> SymMatrix3 {
    let b = beta(n, d);
    let big_d = d + 2.0 * n;
    SymMatrix3::from_upper(
        -b * n * (7.0 * d + 23.0 * n) / (2.0 * big_d),
        -b * n * (n - d) / (2.0 * big_d),
        b * n * (d + 5.0 * n) / big_d,
        b * n * (d + n) / (2.0 * big_d),
        -b * n * (d + n) / big_d,
        -2.0 * b * n * n / big_d,
    )
}

/// The other symmetrization of the stated `H(g5)`, taking the `(3,2)`
/// value `+β·n·(d+n)/(2D)`.
pub fn analytic_hessian_g5_row3(n: f64, d: f64) -> SymMatrix3 {
    let b = beta(n, d);
    let u = analytic_hessian_g5(n, d).upper();
    SymMatrix3::from_upper(u[0], u[1], u[2], u[3], b * n * (d + n) / (2.0 * (d + 2.0 * n)), u[5])
}

/// `C = ((9 − 6a)/(8 − 4a))^{−2(a−1)d/(5d − 4ad)}`
pub fn g3_constant(a: f64, d: f64) -> f64 {
    ((9.0 - 6.0 * a) / (8.0 - 4.0 * a)).powf(-2.0 * (a - 1.0) * d / (5.0 * d - 4.0 * a * d))
}

fn check_g3_range(a: f64) -> Result<()> {
    if a > 0.5 && a < 1.0 {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("g3 requires 1/2 < a < 1, got a={a}")))
    }
}

/// Closed-form Hessian of `scal_N` at `g3 = (1, 1, y+)`, as stated.
pub fn analytic_hessian_g3(a: f64, d: f64) -> Result<SymMatrix3> {
    check_g3_range(a)?;
    Ok(analytic_hessian_g3_with_c(a, d, g3_constant(a, d)))
}

/// [`analytic_hessian_g3`] with the constant `C` supplied by the caller.
pub fn analytic_hessian_g3_with_c(a: f64, d: f64, c: f64) -> SymMatrix3 {
    let den = (3.0 - 2.0 * a).powi(2) * (4.0 * a - 5.0);
    let root = ((1.0 - 2.0 * a) / (a - 2.0)).sqrt();
    let h11 = 4.0 * c * (a - 2.0).powi(2) * (a - 1.0) * d / (3.0 * den);
    let h12 = 4.0 * c * (a - 2.0) * (16.0 * a.powi(3) - 53.0 * a * a + 56.0 * a - 19.0) * d / (9.0 * den);
    let h13 = 4.0 * c * root * (a - 2.0).powi(3) * (a - 1.0) * d / (9.0 * den);
    let h33 = 16.0 * c * (a - 2.0).powi(2) * (2.0 * a * a - 3.0 * a + 1.0) * d / (9.0 * den);
    SymMatrix3::from_upper(h11, h12, h13, h11, h13, h33)
}

/// Which stated closed-form determinant to evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StatedDeterminant {
    G5 { n: f64, d: f64 },
    G3 { a: f64, d: f64 },
    /// `g3` with an explicit `C`.
    G3WithC { a: f64, d: f64, c: f64 },
}

/// `2·(2^{−n})^{3/(d+2n)}·n³` for `g5`;
/// `−256·C³(a−2)⁴(a−1)³(2a−1)d³ / (243(2a−3)⁵)` for `g3`.
pub fn stated_determinant(which: StatedDeterminant) -> f64 {
    match which {
        StatedDeterminant::G5 { n, d } => 2.0 * 2f64.powf(-n).powf(3.0 / (d + 2.0 * n)) * n.powi(3),
        StatedDeterminant::G3 { a, d } => stated_determinant(StatedDeterminant::G3WithC {
            a,
            d,
            c: g3_constant(a, d),
        }),
        StatedDeterminant::G3WithC { a, d, c } => {
            -256.0 * c.powi(3) * (a - 2.0).powi(4) * (a - 1.0).powi(3) * (2.0 * a - 1.0) * d.powi(3)
                / (243.0 * (2.0 * a - 3.0).powi(5))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StabilityReport {
    /// Slice Hessian the report was computed from.
    pub hessian: SymMatrix3,
    /// Ascending.
    pub eigenvalues: [f64; 3],
    /// Positive eigenvalues above the degeneracy threshold.
    pub coindex: usize,
    /// Negative eigenvalues below minus the degeneracy threshold.
    pub index: usize,
    pub degenerate: usize,
    pub nondegenerate: bool,
    pub determinant: f64,
    pub gradient_norm: f64,
    /// `|numeric − analytic| / |analytic|` per entry, when an analytic
    /// Hessian was supplied.
    pub analytic_match: Option<[[f64; 3]; 3]>,
    pub notes: Vec<String>,
}

impl StabilityReport {
    pub fn max_analytic_deviation(&self) -> Option<f64> {
        self.analytic_match
            .map(|m| m.iter().flatten().fold(0.0, |acc: f64, x| acc.max(*x)))
    }
}

/// Classifies a slice Hessian. `gradient_norm` is recorded and flagged when
/// above [`CRITICALITY_TOL`].
pub fn classify(
    hessian: SymMatrix3,
    gradient_norm: f64,
    analytic: Option<&SymMatrix3>,
) -> StabilityReport {
    let eigen = hessian.eigen();
    let radius = eigen.values.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()));
    let threshold = DEGENERACY_TOL * radius;
    let coindex = eigen.values.iter().filter(|&&v| v > threshold).count();
    let index = eigen.values.iter().filter(|&&v| v < -threshold).count();
    let degenerate = 3 - coindex - index;
    let mut notes = Vec::new();
    if gradient_norm > CRITICALITY_TOL {
        notes.push(format!(
            "gradient norm {gradient_norm:.3e} exceeds {CRITICALITY_TOL:e}; point may not be critical"
        ));
    }

    let analytic_match = analytic.map(|an| {
        let floor = 1e-6 * an.max_abs();
        let mut dev = [[0.0; 3]; 3];
        for (i, row) in dev.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (hessian[(i, j)] - an[(i, j)]).abs() / an[(i, j)].abs().max(floor);
            }
        }
        dev
    });
    if let Some(dev) = &analytic_match {
        let off: Vec<String> = (0..3)
            .flat_map(|i| (i..3).map(move |j| (i, j)))
            .filter(|&(i, j)| dev[i][j] > ANALYTIC_MATCH_TOL)
            .map(|(i, j)| {
                format!(
                    "({},{}) numeric {:.9e} vs analytic {:.9e}",
                    i + 1,
                    j + 1,
                    hessian[(i, j)],
                    analytic.unwrap()[(i, j)]
                )
            })
            .collect();
        if !off.is_empty() {
            notes.push(format!(
                "analytic Hessian deviates beyond {ANALYTIC_MATCH_TOL:e}: {}",
                off.join(", ")
            ));
        }
    }

    StabilityReport {
        hessian,
        eigenvalues: eigen.values,
        coindex,
        index,
        degenerate,
        nondegenerate: degenerate == 0,
        determinant: hessian.det(),
        gradient_norm,
        analytic_match,
        notes,
    }
}

/// Finite-difference stability analysis of `scal_N` at a slice point.
pub fn stability_report(
    space: &SpaceParams,
    critical: SlicePoint,
    analytic: Option<&SymMatrix3>,
) -> Result<StabilityReport> {
    let grad = grad_slice(space, critical, DEFAULT_REL_STEP)?;
    let gradient_norm = grad.iter().map(|x| x * x).sum::<f64>().sqrt();
    let hessian = hess_slice(space, critical, DEFAULT_REL_STEP)?;
    Ok(classify(hessian, gradient_norm, analytic))
}
