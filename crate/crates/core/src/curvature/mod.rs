//! Ricci tensor, scalar curvature and normalized scalar curvature of the
//! metrics `g = (x1, x2, x3, x4)`.
//!
//! All bilinear forms are expressed in units of the positive-definite form
//! `−κ_h`: for `X̄ = (X, 0) ∈ p1`, `ric(X̄, X̄) = r11·(−κ_h)(X, X)`, and so on.
//! On `p3` the metric itself carries a factor two,
//! `g((Z,−Z),(Z,−Z)) = 2·x3·(−κ_h)(Z, Z)`, so the Einstein ratio there is
//! `r33/(2·x3)`.

mod derivatives;

pub use derivatives::{grad_slice, hess_slice, slice_gradient, DEFAULT_REL_STEP, DOMAIN_GUARD};

use crate::catalog::SpaceParams;
use crate::error::Result;
use crate::metric::{Metric4, SlicePoint};

/// Ricci coefficients in `−κ_h` units.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciComponents {
    /// `p1 × p1`
    pub r11: f64,
    /// `p2 × p2`
    pub r22: f64,
    /// `p1 × p2`, coefficient of `(−κ_h)(X, Y)`
    pub r12: f64,
    /// `p3^l × p3^l`, one per ideal
    pub r33: Vec<f64>,
    /// The auxiliary scalar `R`
    pub r: f64,
}

/// The scalar `R` entering the Ricci tensor on `p3`. Homogeneous of degree 0.
pub fn compute_r(g: &Metric4) -> f64 {
    let [x1, x2, x3, x4] = g.coords();
    let delta = x1 * x2 - x4 * x4;
    let x1s = x1 * x1;
    let x3s = x3 * x3;
    let x4s = x4 * x4;
    -2.0 * x4s / delta
        + x3s / (4.0 * x1s)
        + x3s * (x1s - x4s).powi(2) / (4.0 * x1s * delta * delta)
        + x3s * x4s / (2.0 * x1s * delta)
}

/// `(r11, r22, r12)`, the Ricci coefficients on `p1 ⊕ p2`. They do not
/// depend on the space.
pub fn ricci_q_block(g: &Metric4) -> [f64; 3] {
    let [x1, x2, x3, x4] = g.coords();
    let delta = x1 * x2 - x4 * x4;
    let x4s = x4 * x4;
    let sum = x1 * x2 + x4s;
    let k11 = x3 / (8.0 * x1) + x3 * x4s / (8.0 * x1 * delta)
        - x1 * x4s / (2.0 * delta * x3)
        - 0.5;
    let k22 = x1 * x3 / (8.0 * delta) + delta / (8.0 * x1 * x3)
        - sum * sum / (8.0 * x1 * delta * x3)
        - 0.5;
    let k12 = x3 * x4 / (8.0 * delta) - x4 / (4.0 * x3) - x4 * sum / (4.0 * delta * x3);
    // the coefficients above are in κ_h units
    [-k11, -k22, -k12]
}

pub fn ricci_components(space: &SpaceParams, g: &Metric4) -> Result<RicciComponents> {
    let ratios = space.ideal_ratios()?;
    let [r11, r22, r12] = ricci_q_block(g);
    let r = compute_r(g);
    let r33 = ratios.iter().map(|&(_, a)| r - a * (r - 1.0)).collect();
    Ok(RicciComponents {
        r11,
        r22,
        r12,
        r33,
        r,
    })
}

/// Closed-form scalar curvature; needs only `(n, d)`.
pub fn scalar_curvature(space: &SpaceParams, g: &Metric4) -> f64 {
    let [x1, x2, x3, x4] = g.coords();
    let (n, d) = (space.n, space.d);
    let x1s = x1 * x1;
    let x2s = x2 * x2;
    let x3s = x3 * x3;
    let x4s = x4 * x4;
    let num = x2s * x3s + x1s * (4.0 * x2s - 8.0 * x2 * x3 + x3s) + 8.0 * x2 * x3 * x4s
        + 8.0 * x1 * x3 * (x4s - x2s)
        - 2.0 * x4s * (x3s + 2.0 * x4s);
    let den = 16.0 * x3 * (x4s - x1 * x2).powi(2);
    d / (2.0 * x3) - n * num / den
}

/// Scalar curvature as the `g`-trace of the Ricci tensor over
/// `g`-orthonormal bases of `q1 = p1`, `q2 = {(−x4·X, x1·X)}` and `q3 = p3`.
/// Independent of [`scalar_curvature`]; requires Killing-ratio data.
pub fn scalar_trace_oracle(space: &SpaceParams, g: &Metric4) -> Result<f64> {
    let ric = ricci_components(space, g)?;
    let ratios = space.ideal_ratios()?;
    let [x1, _, x3, x4] = g.coords();
    let delta = g.block_det();

    // Y¹ = (e, 0)/√x1
    let on_q1 = ric.r11 / x1;
    // Y² = (−x4·e, x1·e)/√(x1·Δ)
    let on_q2 = (x4 * x4 * ric.r11 - 2.0 * x1 * x4 * ric.r12 + x1 * x1 * ric.r22) / (x1 * delta);
    // Y³ = (Z, −Z)/√(2·x3)
    let on_q3: f64 = ratios
        .iter()
        .zip(&ric.r33)
        .map(|(&(dim, _), r33)| dim * r33 / (2.0 * x3))
        .sum();

    Ok(space.n * (on_q1 + on_q2) + on_q3)
}

/// `det_{g_B} g = (x1·x2 − x4²)^n · x3^d`.
pub fn volume_det(space: &SpaceParams, g: &Metric4) -> f64 {
    g.block_det().powf(space.n) * g.x3().powf(space.d)
}

/// `scal(g)·(det g)^{1/dim M}`, scale invariant.
pub fn normalized_scalar(space: &SpaceParams, g: &Metric4) -> f64 {
    // through logarithms: Δ^n overflows for the exceptional spaces
    let log_vol = space.n * g.block_det().ln() + space.d * g.x3().ln();
    scalar_curvature(space, g) * (log_vol / space.dim_m()).exp()
}

/// Closed form of the normalized scalar curvature on the `x3 = 1` slice.
pub fn normalized_scalar_slice(space: &SpaceParams, p: SlicePoint) -> f64 {
    let SlicePoint { x1, x2, x4 } = p;
    let (n, d) = (space.n, space.d);
    let x4s = x4 * x4;
    let delta = x1 * x2 - x4s;
    let sq = (x4s - x1 * x2).powi(2);
    let poly = x2 * x2 + x1 * x1 * (4.0 * x2 * x2 - 8.0 * x2 + 1.0) - 2.0 * x4s + 8.0 * x2 * x4s
        - 4.0 * x4s * x4s
        - 8.0 * x1 * (x2 * x2 - x4s);
    delta.powf(n / (d + 2.0 * n)) * (8.0 * d * sq - n * poly) / (16.0 * sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn g5() -> Metric4 {
        Metric4::new(0.5, 1.5, 1.0, 0.5).unwrap()
    }

    #[test]
    fn r_values() {
        assert_relative_eq!(compute_r(&Metric4::standard()), 0.5, epsilon = 1e-15);
        assert_relative_eq!(compute_r(&g5()), 1.0, epsilon = 1e-15);
        let big = Metric4::new(2.0, 2.0, 2.0, 0.0).unwrap();
        assert_relative_eq!(compute_r(&big), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn ricci_at_g5() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        let ric = ricci_components(&space, &g5()).unwrap();
        assert_relative_eq!(ric.r11, 0.25, epsilon = 1e-15);
        assert_relative_eq!(ric.r22, 0.75, epsilon = 1e-15);
        assert_relative_eq!(ric.r12, 0.25, epsilon = 1e-15);
        assert_eq!(ric.r33.len(), 1);
        assert_relative_eq!(ric.r33[0], 1.0, epsilon = 1e-15);

        let split = SpaceParams::with_ideals(8.0, 6.0, vec![(3.0, 0.1), (3.0, 0.23)]);
        let ric = ricci_components(&split, &g5()).unwrap();
        assert!(ric.r33.iter().all(|r| (r - 1.0).abs() < 1e-15));
    }

    #[test]
    fn cross_term_vanishes_on_diagonal_metrics() {
        let g = Metric4::new(1.3, 0.4, 2.2, 0.0).unwrap();
        assert_eq!(ricci_q_block(&g)[2], 0.0);
    }

    #[test]
    fn missing_killing_data() {
        let space = SpaceParams::new(8.0, 6.0);
        assert!(ricci_components(&space, &g5()).is_err());
        assert!(scalar_trace_oracle(&space, &g5()).is_err());
    }

    #[test]
    fn scalar_values() {
        for (n, d) in [(8.0, 6.0), (5.0, 10.0), (109.0, 139.0)] {
            let space = SpaceParams::new(n, d);
            assert_relative_eq!(
                scalar_curvature(&space, &Metric4::standard()),
                d / 2.0 + 5.0 * n / 8.0,
                max_relative = 1e-15
            );
            assert_relative_eq!(scalar_curvature(&space, &g5()), d / 2.0 + n, max_relative = 1e-15);
        }
        let space = SpaceParams::new(7.0, 3.0);
        let a = Metric4::new(2.0, 3.0, 1.0, 1.0).unwrap();
        assert_eq!(scalar_curvature(&space, &a), scalar_curvature(&space, &a.swapped()));
    }

    #[test]
    fn trace_oracle_values() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        assert_relative_eq!(
            scalar_trace_oracle(&space, &Metric4::standard()).unwrap(),
            5.0 + 25.0 / 8.0,
            max_relative = 1e-14
        );
        assert_relative_eq!(scalar_trace_oracle(&space, &g5()).unwrap(), 10.0, max_relative = 1e-14);
    }

    #[test]
    fn volume_values() {
        let space = SpaceParams::new(5.0, 10.0);
        assert_eq!(volume_det(&space, &Metric4::standard()), 1.0);
        assert_relative_eq!(volume_det(&space, &g5()), 0.03125, max_relative = 1e-15);
        let c = 1.7;
        let cg = Metric4::new(c, c, c, 0.0).unwrap();
        assert_relative_eq!(volume_det(&space, &cg), c.powi(20), max_relative = 1e-13);
    }

    #[test]
    fn normalized_scalar_at_g5() {
        let space = SpaceParams::new(5.0, 10.0);
        let expected = 20.0 * 2f64.powf(-1.25);
        assert_relative_eq!(normalized_scalar(&space, &g5()), expected, max_relative = 1e-14);
        assert_relative_eq!(expected, 8.408964152537145, max_relative = 1e-15);
        assert_relative_eq!(
            normalized_scalar(&space, &g5().scaled(2.0)),
            expected,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            normalized_scalar_slice(&space, SlicePoint::new(0.5, 1.5, 0.5)),
            expected,
            max_relative = 1e-14
        );
    }
}
