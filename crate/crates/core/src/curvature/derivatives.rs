//! Derivatives of the normalized scalar curvature on the `x3 = 1` slice.

use crate::catalog::SpaceParams;
use crate::error::{Error, Result};
use crate::linalg::SymMatrix3;
use crate::metric::{Metric4, SlicePoint};

use super::normalized_scalar;

/// Per-axis step `h_i = DEFAULT_REL_STEP·(1 + |p_i|)`.
pub const DEFAULT_REL_STEP: f64 = 1e-5;

/// Stencil points with `x1·x2 − x4² ≤ DOMAIN_GUARD` are rejected.
pub const DOMAIN_GUARD: f64 = 1e-12;

fn eval(space: &SpaceParams, p: [f64; 3]) -> Result<f64> {
    let [x1, x2, x4] = p;
    if !(x1 > 0.0 && x2 > 0.0 && x1 * x2 - x4 * x4 > DOMAIN_GUARD) {
        return Err(Error::StencilOutOfDomain { x1, x2, x4 });
    }
    Ok(normalized_scalar(space, &Metric4::on_slice(x1, x2, x4)?))
}

fn steps(p: [f64; 3], rel_step: f64) -> [f64; 3] {
    p.map(|x| rel_step * (1.0 + x.abs()))
}

fn shifted(p: [f64; 3], moves: &[(usize, f64)]) -> [f64; 3] {
    let mut q = p;
    for &(i, dx) in moves {
        q[i] += dx;
    }
    q
}

/// Central-difference gradient, error `O(h²)`.
pub fn grad_slice(space: &SpaceParams, p: SlicePoint, rel_step: f64) -> Result<[f64; 3]> {
    let p = p.to_array();
    let h = steps(p, rel_step);
    let mut grad = [0.0; 3];
    for i in 0..3 {
        let fp = eval(space, shifted(p, &[(i, h[i])]))?;
        let fm = eval(space, shifted(p, &[(i, -h[i])]))?;
        grad[i] = (fp - fm) / (2.0 * h[i]);
    }
    Ok(grad)
}

/// Central-difference Hessian: three-point second differences on the
/// diagonal, four-point cross stencils off it, symmetrized.
pub fn hess_slice(space: &SpaceParams, p: SlicePoint, rel_step: f64) -> Result<SymMatrix3> {
    let p = p.to_array();
    let h = steps(p, rel_step);
    let f0 = eval(space, p)?;
    let mut rows = [[0.0; 3]; 3];
    for i in 0..3 {
        let fp = eval(space, shifted(p, &[(i, h[i])]))?;
        let fm = eval(space, shifted(p, &[(i, -h[i])]))?;
        rows[i][i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i]);
        for j in i + 1..3 {
            let fpp = eval(space, shifted(p, &[(i, h[i]), (j, h[j])]))?;
            let fpm = eval(space, shifted(p, &[(i, h[i]), (j, -h[j])]))?;
            let fmp = eval(space, shifted(p, &[(i, -h[i]), (j, h[j])]))?;
            let fmm = eval(space, shifted(p, &[(i, -h[i]), (j, -h[j])]))?;
            let v = (fpp - fpm - fmp + fmm) / (4.0 * h[i] * h[j]);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    Ok(SymMatrix3::from_rows(rows))
}

/// Exact gradient of the slice closed form
/// `F = (d/2 − n·P/(16Δ²))·Δ^{n/(2n+d)}` with `Δ = x1·x2 − x4²`.
pub fn slice_gradient(space: &SpaceParams, p: SlicePoint) -> Result<[f64; 3]> {
    let SlicePoint { x1, x2, x4 } = p;
    let delta = p.block_det();
    if !(x1 > 0.0 && x2 > 0.0 && delta > DOMAIN_GUARD) {
        return Err(Error::StencilOutOfDomain { x1, x2, x4 });
    }
    let (n, d) = (space.n, space.d);
    let expo = n / (2.0 * n + d);
    let x4s = x4 * x4;

    let poly = x2 * x2 + x1 * x1 * (4.0 * x2 * x2 - 8.0 * x2 + 1.0) + 8.0 * x2 * x4s
        + 8.0 * x1 * (x4s - x2 * x2)
        - 2.0 * x4s * (1.0 + 2.0 * x4s);
    let dpoly = [
        2.0 * x1 * (4.0 * x2 * x2 - 8.0 * x2 + 1.0) + 8.0 * (x4s - x2 * x2),
        2.0 * x2 + x1 * x1 * (8.0 * x2 - 8.0) + 8.0 * x4s - 16.0 * x1 * x2,
        16.0 * x2 * x4 + 16.0 * x1 * x4 - 4.0 * x4 - 16.0 * x4s * x4,
    ];
    let ddelta = [x2, x1, -2.0 * x4];

    let scal = d / 2.0 - n * poly / (16.0 * delta * delta);
    let weight = delta.powf(expo);
    let mut grad = [0.0; 3];
    for k in 0..3 {
        let dscal = -n / 16.0
            * (dpoly[k] / (delta * delta) - 2.0 * poly * ddelta[k] / (delta * delta * delta));
        grad[k] = weight * (dscal + scal * expo * ddelta[k] / delta);
    }
    Ok(grad)
}
