//! Closed-form Einstein metrics, the componentwise Einstein test, and a
//! Newton refinement of critical points of the normalized scalar curvature.

use std::fmt;

use crate::catalog::SpaceParams;
use crate::curvature::{hess_slice, ricci_components, ricci_q_block, slice_gradient, DEFAULT_REL_STEP, DOMAIN_GUARD};
use crate::error::{Error, Result};
use crate::metric::{Metric4, SlicePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    G1,
    G2,
    G3,
    G4,
    G5,
    G6,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::G1 => "g1",
            Label::G2 => "g2",
            Label::G3 => "g3",
            Label::G4 => "g4",
            Label::G5 => "g5",
            Label::G6 => "g6",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinSolution {
    pub label: Label,
    pub metric: Metric4,
    pub exists_condition: &'static str,
    /// Set on the second member of an isometric pair (`g4 ↦ g3`, `g6 ↦ g5`).
    pub isometric_to: Option<Label>,
    /// `λ` with `ric = λ·g`, both in `−κ_h` units.
    pub einstein_constant: f64,
}

/// `x± = (1 ± √(1 − a(3 − 2a)))/(2a)`, the diagonal solutions for `a < 1/2`.
pub fn diagonal_roots(a: f64) -> (f64, f64) {
    let root = (1.0 - a * (3.0 - 2.0 * a)).sqrt();
    ((1.0 + root) / (2.0 * a), (1.0 - root) / (2.0 * a))
}

/// `y+ = (1/2)·√((2a − 1)/(2 − a))` for `a > 1/2`; `y− = −y+`.
pub fn cross_root(a: f64) -> f64 {
    0.5 * ((2.0 * a - 1.0) / (2.0 - a)).sqrt()
}

fn solution(label: Label, metric: Metric4, cond: &'static str, iso: Option<Label>) -> EinsteinSolution {
    let [r11, ..] = ricci_q_block(&metric);
    EinsteinSolution {
        label,
        metric,
        exists_condition: cond,
        isometric_to: iso,
        einstein_constant: r11 / metric.x1(),
    }
}

/// The non-diagonal metrics `g5`, `g6` always; `g1`, `g2` when `a < 1/2`;
/// `g3`, `g4` when `a > 1/2`. Without a single Killing ratio only `g5`, `g6`
/// are returned.
pub fn closed_form_einstein_metrics(a: Option<f64>) -> Result<Vec<EinsteinSolution>> {
    let mut out = Vec::new();
    if let Some(a) = a {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::OutOfRange(format!("Killing ratio a={a} outside (0, 1)")));
        }
        if a < 0.5 {
            let (xp, xm) = diagonal_roots(a);
            out.push(solution(Label::G1, Metric4::new(xp, xp, 1.0, 0.0)?, "a<1/2", None));
            out.push(solution(Label::G2, Metric4::new(xm, xm, 1.0, 0.0)?, "a<1/2", None));
        } else if a > 0.5 {
            let y = cross_root(a);
            out.push(solution(Label::G3, Metric4::new(1.0, 1.0, 1.0, y)?, "a>1/2", None));
            out.push(solution(
                Label::G4,
                Metric4::new(1.0, 1.0, 1.0, -y)?,
                "a>1/2",
                Some(Label::G3),
            ));
        }
    }
    out.push(solution(Label::G5, Metric4::new(0.5, 1.5, 1.0, 0.5)?, "any H/K", None));
    out.push(solution(
        Label::G6,
        Metric4::new(1.5, 0.5, 1.0, 0.5)?,
        "any H/K",
        Some(Label::G5),
    ));
    Ok(out)
}

/// The normalized scalar curvature of a closed-form Einstein metric, from
/// its own closed form (not from the curvature formulas). `a` is required
/// for `g1` to `g4`.
pub fn closed_form_normalized_scalar(space: &SpaceParams, label: Label) -> Result<f64> {
    let dim_m = space.dim_m();
    let alpha = space.alpha();
    let need_a = || {
        space
            .single_a()
            .ok_or_else(|| Error::MissingKillingData(format!("n={}, d={}", space.n, space.d)))
    };
    Ok(match label {
        Label::G1 | Label::G2 => {
            let (xp, xm) = diagonal_roots(need_a()?);
            let x = if label == Label::G1 { xp } else { xm };
            dim_m * (4.0 * x - 1.0) / (8.0 * x.powf(2.0 * alpha))
        }
        Label::G3 | Label::G4 => {
            let a = need_a()?;
            3.0 * dim_m / 8.0 * (4.0 * (2.0 - a) / (3.0 * (3.0 - 2.0 * a))).powf(alpha)
        }
        Label::G5 | Label::G6 => dim_m * 2f64.powf(alpha - 2.0),
    })
}

/// The closed-form solution within `tol` (max-norm, after rescaling to
/// `x3 = 1`) of `g`, if any.
pub fn match_closed_form(space: &SpaceParams, g: &Metric4, tol: f64) -> Option<EinsteinSolution> {
    let p = SlicePoint::from(*g);
    closed_form_einstein_metrics(space.single_a())
        .ok()?
        .into_iter()
        .find(|s| SlicePoint::from(s.metric).distance(p) <= tol)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinCheck {
    pub is_einstein: bool,
    /// Mean candidate, present when `is_einstein`.
    pub lambda: Option<f64>,
    /// Largest deviation of a candidate from their mean, relative to `|mean|`.
    pub residual: f64,
    /// Candidate Einstein constants: `r11/x1`, `r22/x2`, `r12/x4` (skipped
    /// when `x4 ≈ 0`), then `r33[l]/(2·x3)` per ideal.
    pub candidates: Vec<f64>,
}

/// Tests `ric = λ·g` componentwise in `−κ_h` units.
pub fn einstein_check(space: &SpaceParams, g: &Metric4, tol: f64) -> Result<EinsteinCheck> {
    let ric = ricci_components(space, g)?;
    let [x1, x2, x3, x4] = g.coords();
    let mut candidates = vec![ric.r11 / x1, ric.r22 / x2];
    let cross_skipped = x4.abs() < 1e-14;
    if !cross_skipped {
        candidates.push(ric.r12 / x4);
    }
    candidates.extend(ric.r33.iter().map(|r| r / (2.0 * x3)));

    let mean = candidates.iter().sum::<f64>() / candidates.len() as f64;
    let scale = mean.abs().max(f64::MIN_POSITIVE);
    let mut residual = candidates
        .iter()
        .map(|c| (c - mean).abs() / scale)
        .fold(0.0, f64::max);
    if cross_skipped {
        // 0 = λ·0 requires r12 = 0
        residual = residual.max(ric.r12.abs() / scale);
    }
    let is_einstein = residual <= tol;
    Ok(EinsteinCheck {
        is_einstein,
        lambda: is_einstein.then_some(mean),
        residual,
        candidates,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub max_iter: usize,
    /// Convergence threshold on the Euclidean norm of the gradient.
    pub tol: f64,
    /// Relative step of the finite-difference Hessian.
    pub rel_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            max_iter: 50,
            tol: 1e-12,
            rel_step: DEFAULT_REL_STEP,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonOutcome {
    pub point: SlicePoint,
    pub iterations: usize,
    pub grad_norm: f64,
    /// Norm of each accepted step.
    pub step_norms: Vec<f64>,
}

impl NewtonOutcome {
    /// `|last step| / |previous step|`; small for a quadratic tail.
    pub fn final_step_ratio(&self) -> Option<f64> {
        match self.step_norms.as_slice() {
            [.., prev, last] if *prev > 0.0 => Some(last / prev),
            _ => None,
        }
    }
}

fn norm(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn in_domain(p: [f64; 3]) -> bool {
    p[0] > 0.0 && p[1] > 0.0 && p[0] * p[1] - p[2] * p[2] > DOMAIN_GUARD
}

/// Newton iteration for a zero of the slice gradient, with the
/// finite-difference Hessian as Jacobian. Steps that leave the metric domain
/// are halved up to 30 times.
pub fn refine_critical_point(
    space: &SpaceParams,
    guess: SlicePoint,
    opts: &NewtonOptions,
) -> Result<NewtonOutcome> {
    if !in_domain(guess.to_array()) {
        return Err(Error::InvalidMetric(format!("guess {guess:?} outside the metric domain")));
    }
    let mut x = guess.to_array();
    let mut step_norms = Vec::new();
    let mut grad_norm = f64::INFINITY;
    for iteration in 0..=opts.max_iter {
        let grad = slice_gradient(space, SlicePoint::from_array(x))?;
        grad_norm = norm(grad);
        let stalled = step_norms
            .last()
            .is_some_and(|s: &f64| *s <= 1e-15 * (1.0 + norm(x)));
        if grad_norm <= opts.tol || stalled {
            return Ok(NewtonOutcome {
                point: SlicePoint::from_array(x),
                iterations: iteration,
                grad_norm,
                step_norms,
            });
        }
        if iteration == opts.max_iter {
            break;
        }
        let hess = hess_slice(space, SlicePoint::from_array(x), opts.rel_step)?;
        let dx = hess
            .solve(grad.map(|g| -g))
            .ok_or(Error::SingularHessian { det: hess.det() })?;

        let mut t = 1.0;
        let mut halvings = 0;
        let next = loop {
            let cand = [x[0] + t * dx[0], x[1] + t * dx[1], x[2] + t * dx[2]];
            if in_domain(cand) {
                break cand;
            }
            halvings += 1;
            if halvings > 30 {
                return Err(Error::LeftDomain { halvings: 30 });
            }
            t *= 0.5;
        };
        step_norms.push(t * norm(dx));
        x = next;
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        grad_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn roots() {
        assert_relative_eq!(cross_root(0.75), 0.31622776601683794, max_relative = 1e-15);
        let (xp, xm) = diagonal_roots(1.0 / 3.0);
        assert_relative_eq!(xp, 1.5 * (1.0 + (2.0f64 / 9.0).sqrt()), max_relative = 1e-15);
        assert_relative_eq!(xm, 1.5 * (1.0 - (2.0f64 / 9.0).sqrt()), max_relative = 1e-14);
        assert_relative_eq!(xp, 2.2071068, epsilon = 1e-7);
        assert_relative_eq!(xm, 0.7928932, epsilon = 1e-7);
    }

    #[test]
    fn solution_sets() {
        let labels = |a| {
            closed_form_einstein_metrics(a)
                .unwrap()
                .iter()
                .map(|s| s.label)
                .collect::<Vec<_>>()
        };
        use Label::*;
        assert_eq!(labels(Some(0.75)), vec![G3, G4, G5, G6]);
        assert_eq!(labels(Some(1.0 / 3.0)), vec![G1, G2, G5, G6]);
        assert_eq!(labels(Some(0.5)), vec![G5, G6]);
        assert_eq!(labels(None), vec![G5, G6]);
        assert!(closed_form_einstein_metrics(Some(1.0)).is_err());
        assert!(closed_form_einstein_metrics(Some(0.0)).is_err());
    }

    #[test]
    fn isometric_pairs() {
        let sols = closed_form_einstein_metrics(Some(0.8)).unwrap();
        let get = |l| sols.iter().find(|s| s.label == l).unwrap();
        assert_eq!(get(Label::G4).isometric_to, Some(Label::G3));
        assert_eq!(get(Label::G6).isometric_to, Some(Label::G5));
        assert_eq!(get(Label::G6).metric, get(Label::G5).metric.swapped());
        assert_eq!(get(Label::G4).metric.x4(), -get(Label::G3).metric.x4());
        assert_eq!(get(Label::G5).einstein_constant, 0.5);
    }

    #[test]
    fn g5_is_einstein_with_half() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        let g5 = Metric4::new(0.5, 1.5, 1.0, 0.5).unwrap();
        let check = einstein_check(&space, &g5, 1e-10).unwrap();
        assert!(check.is_einstein);
        assert_relative_eq!(check.lambda.unwrap(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn standard_metric_is_not_einstein_for_three_quarters() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        let check = einstein_check(&space, &Metric4::standard(), 1e-10).unwrap();
        assert!(!check.is_einstein);
        assert_eq!(check.candidates.len(), 3);
        assert_relative_eq!(check.candidates[0], 3.0 / 8.0, epsilon = 1e-15);
        assert_relative_eq!(check.candidates[1], 3.0 / 8.0, epsilon = 1e-15);
        assert_relative_eq!(check.candidates[2], 7.0 / 16.0, epsilon = 1e-15);
    }

    #[test]
    fn newton_from_nearby_guesses() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        let opts = NewtonOptions::default();
        let g5 = refine_critical_point(&space, SlicePoint::new(0.45, 1.6, 0.45), &opts).unwrap();
        assert!(g5.point.distance(SlicePoint::new(0.5, 1.5, 0.5)) <= 1e-10, "{g5:?}");
        let g3 = refine_critical_point(&space, SlicePoint::new(0.95, 1.05, 0.3), &opts).unwrap();
        assert!(g3.point.distance(SlicePoint::new(1.0, 1.0, cross_root(0.75))) <= 1e-10, "{g3:?}");

        let third = SpaceParams::with_single_a(10.0, 1.0 / 3.0);
        let g1 = refine_critical_point(&third, SlicePoint::new(2.1, 2.1, 0.05), &opts).unwrap();
        let xp = diagonal_roots(1.0 / 3.0).0;
        assert!(g1.point.distance(SlicePoint::new(xp, xp, 0.0)) <= 1e-10, "{g1:?}");
    }

    #[test]
    fn newton_reports_failures() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        let opts = NewtonOptions {
            max_iter: 1,
            ..Default::default()
        };
        assert!(matches!(
            refine_critical_point(&space, SlicePoint::new(0.3, 2.0, 0.2), &opts),
            Err(Error::NoConvergence { .. })
        ));
        assert!(refine_critical_point(&space, SlicePoint::new(1.0, 1.0, 1.0), &opts).is_err());
    }

    #[test]
    fn closed_form_match() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        let g = Metric4::new(1.0, 3.0, 2.0, 1.0).unwrap();
        assert_eq!(match_closed_form(&space, &g, 1e-3).unwrap().label, Label::G5);
        assert!(match_closed_form(&space, &Metric4::standard(), 1e-3).is_none());
    }
}
