//! The verification suite run by `verify`. Every check is independent and
//! deterministic: random samples come from a fixed-seed ChaCha stream.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use hxh_einstein::catalog::{ideals_from_weights, normalize_name};
use hxh_einstein::einstein::{cross_root, diagonal_roots};
use hxh_einstein::grid::{critical_points, evaluate, write_csv, CriticalOnPlane};
use hxh_einstein::stability::analytic_hessian_g5_row3;
use hxh_einstein::{
    analytic_hessian_g3, analytic_hessian_g5, closed_form_einstein_metrics,
    closed_form_normalized_scalar, einstein_check, grad_slice, hess_slice, normalized_scalar,
    stated_determinant, refine_critical_point, scalar_curvature, scalar_trace_oracle,
    stability_report, validate, GridSpec, Label, Metric4, NewtonOptions, Plane,
    StatedDeterminant, SlicePoint, SpaceDescriptor, SpaceParams, SpaceFamily,
};

pub const SEED: u64 = 0x4858_4845;

/// `a` values with `a > 1/2`: 0.55, 0.60, …, 0.95.
pub fn a_grid_high() -> Vec<f64> {
    (11..=19).map(|k| f64::from(k) / 20.0).collect()
}

/// `a` values with `a < 1/2`: 0.10, 0.15, …, 0.45.
pub fn a_grid_low() -> Vec<f64> {
    (2..=9).map(|k| f64::from(k) / 20.0).collect()
}

pub const D_GRID: [f64; 3] = [4.0, 10.0, 24.0];

/// Largest family parameter in the sweeps over symmetric-space families.
pub const SWEEP_MAX: u32 = 10;

const SPLITTINGS: usize = 20;
const SOLVER_TRIALS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A documented discrepancy in stated closed-form values, reproduced as expected.
    KnownMismatch,
}

impl Status {
    pub fn is_ok(self) -> bool {
        self != Status::Fail
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check_id: &'static str,
    pub status: Status,
    pub measured: Value,
    pub expected: Value,
    pub tolerance: Option<f64>,
    pub notes: Vec<String>,
}

impl CheckResult {
    fn new(check_id: &'static str, ok: bool, measured: Value, expected: Value, tolerance: Option<f64>) -> Self {
        Self {
            check_id,
            status: if ok { Status::Pass } else { Status::Fail },
            measured,
            expected,
            tolerance,
            notes: Vec::new(),
        }
    }

    fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    fn notes(mut self, texts: impl IntoIterator<Item = String>) -> Self {
        self.notes.extend(texts);
        self
    }

    fn failed(check_id: &'static str, error: impl std::fmt::Display) -> Self {
        Self::new(check_id, false, Value::Null, Value::Null, None).note(format!("error: {error}"))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub catalog: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

pub struct Context {
    pub catalog: Vec<SpaceDescriptor>,
}

type CheckFn = fn(&Context) -> CheckResult;

const CHECKS: &[(&str, CheckFn)] = &[
    ("catalog.validate", catalog_validate),
    ("catalog.dim_h", catalog_dim_h),
    ("oracle.trace", oracle_trace),
    ("scal_n.closed_forms", scal_n_closed_forms),
    ("einstein.g5", einstein_g5),
    ("einstein.g3", einstein_g3),
    ("criticality.g5", criticality_g5),
    ("criticality.g3", criticality_g3),
    ("hessian.g5.fd", hessian_g5_fd),
    ("hessian.g5.det", hessian_g5_det),
    ("stability.g5", stability_g5),
    ("stability.g3", stability_g3),
    ("hessian.g3.stated", hessian_g3_stated),
    ("solver.recovery", solver_recovery),
    ("grid.landscape", grid_landscape),
];

pub fn check_ids() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|(id, _)| *id)
}

/// Runs every check whose id contains `only` (all when `None`), in
/// registry order.
pub fn run(catalog_label: &str, ctx: &Context, only: Option<&str>) -> Report {
    let selected: Vec<&(&str, CheckFn)> = CHECKS
        .iter()
        .filter(|(id, _)| only.map_or(true, |p| id.contains(p)))
        .collect();
    let checks: Vec<CheckResult> = selected.par_iter().map(|(_, f)| f(ctx)).collect();
    Report {
        catalog: catalog_label.to_string(),
        passed: checks.iter().all(|c| c.status.is_ok()),
        checks,
    }
}

/// A report for a catalog that failed to load.
pub fn load_failure(catalog_label: &str, error: &hxh_einstein::Error) -> Report {
    Report {
        catalog: catalog_label.to_string(),
        passed: false,
        checks: vec![CheckResult::new(
            "catalog.validate",
            false,
            json!("load failed"),
            json!("every entry valid"),
            None,
        )
        .note(error.to_string())],
    }
}

fn rel(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs().max(f64::MIN_POSITIVE)
}

fn norm(v: [f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn single_a_grid(a_values: &[f64]) -> Vec<(f64, f64, SpaceParams)> {
    a_values
        .iter()
        .flat_map(|&a| D_GRID.iter().map(move |&d| (a, d, SpaceParams::with_single_a(d, a))))
        .collect()
}

fn g3_point(a: f64) -> SlicePoint {
    SlicePoint::new(1.0, 1.0, cross_root(a))
}

const G5: SlicePoint = SlicePoint::new(0.5, 1.5, 0.5);

/// Every family row in the sweep, by normalized name.
fn family_index() -> HashMap<String, SpaceFamily> {
    SpaceFamily::sweep(SWEEP_MAX)
        .into_iter()
        .map(|row| (normalize_name(&row.name()), row))
        .collect()
}

/// `(n, d)` of every family row in the sweep and every catalog entry.
fn all_family_dims(ctx: &Context) -> Vec<(String, f64, f64)> {
    let mut out: Vec<(String, f64, f64)> = SpaceFamily::sweep(SWEEP_MAX)
        .iter()
        .map(|r| (r.name(), f64::from(r.n()), f64::from(r.d())))
        .collect();
    out.extend(
        ctx.catalog
            .iter()
            .map(|s| (s.name.clone(), f64::from(s.n), f64::from(s.d))),
    );
    out
}

fn catalog_validate(ctx: &Context) -> CheckResult {
    let problems: Vec<String> = ctx
        .catalog
        .iter()
        .flat_map(|s| validate(s).into_iter().map(move |v| format!("{}: {v}", s.name)))
        .collect();
    CheckResult::new(
        "catalog.validate",
        problems.is_empty(),
        json!({ "entries": ctx.catalog.len(), "violations": problems.len() }),
        json!({ "violations": 0 }),
        None,
    )
    .notes(problems)
}

fn catalog_dim_h(ctx: &Context) -> CheckResult {
    let index = family_index();
    let mut mismatches = Vec::new();
    for row in SpaceFamily::sweep(SWEEP_MAX) {
        if row.n() + row.d() != row.dim_h() {
            mismatches.push(format!(
                "{}: n+d = {} but dim H = {}",
                row.name(),
                row.n() + row.d(),
                row.dim_h()
            ));
        }
    }
    let mut entries = 0;
    for s in &ctx.catalog {
        if let Some(row) = index.get(&normalize_name(&s.name)) {
            entries += 1;
            if s.n + s.d != row.dim_h() || (s.n, s.d) != (row.n(), row.d()) {
                mismatches.push(format!(
                    "{}: catalog (n, d) = ({}, {}) against dim H = {}",
                    s.name,
                    s.n,
                    s.d,
                    row.dim_h()
                ));
            }
        }
    }
    CheckResult::new(
        "catalog.dim_h",
        mismatches.is_empty(),
        json!({ "table_rows": SpaceFamily::sweep(SWEEP_MAX).len(), "catalog_rows": entries, "mismatches": mismatches.len() }),
        json!({ "mismatches": 0 }),
        Some(0.0),
    )
    .notes(mismatches)
}

/// A random metric with `x1, x2, x3 ∈ (0.05, 5)` and `|x4| < 0.98·√(x1x2)`.
pub fn random_metric(rng: &mut impl Rng) -> Metric4 {
    let x1 = rng.gen_range(0.05..5.0);
    let x2 = rng.gen_range(0.05..5.0);
    let x3 = rng.gen_range(0.05..5.0);
    let t: f64 = rng.gen_range(-0.98..0.98);
    Metric4::new(x1, x2, x3, t * f64::sqrt(x1 * x2)).expect("sampled inside the domain")
}

fn oracle_trace(_: &Context) -> CheckResult {
    const TOL: f64 = 1e-10;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    let mut worst_at = String::new();
    for _ in 0..1000 {
        let a = rng.gen_range(0.01..0.99);
        let d = f64::from(rng.gen_range(1u32..=150));
        let space = SpaceParams::with_single_a(d, a);
        let g = random_metric(&mut rng);
        let scal = scalar_curvature(&space, &g);
        let err = match scalar_trace_oracle(&space, &g) {
            Ok(oracle) => rel(scal, oracle),
            Err(e) => return CheckResult::failed("oracle.trace", e),
        };
        if err > worst {
            worst = err;
            worst_at = format!("a={a}, d={d}, g={:?}", g.coords());
        }
    }
    CheckResult::new("oracle.trace", worst <= TOL, json!({ "samples": 1000, "max_rel_error": worst }), json!(0.0), Some(TOL))
        .note(format!("worst sample {worst_at}"))
}

fn scal_n_closed_forms(_: &Context) -> CheckResult {
    const TOL: f64 = 1e-12;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    let mut notes = Vec::new();
    let grids = single_a_grid(&a_grid_high())
        .into_iter()
        .chain(single_a_grid(&a_grid_low()));
    for (a, d, space) in grids {
        let solutions = match closed_form_einstein_metrics(Some(a)) {
            Ok(s) => s,
            Err(e) => return CheckResult::failed("scal_n.closed_forms", e),
        };
        for s in solutions {
            let closed = match closed_form_normalized_scalar(&space, s.label) {
                Ok(v) => v,
                Err(e) => return CheckResult::failed("scal_n.closed_forms", e),
            };
            let err = rel(normalized_scalar(&space, &s.metric), closed);
            count += 1;
            if err > TOL {
                notes.push(format!("{} at a={a}, d={d}: rel error {err:.3e}", s.label));
            }
            worst = worst.max(err);
        }
    }
    CheckResult::new(
        "scal_n.closed_forms",
        worst <= TOL,
        json!({ "evaluations": count, "max_rel_error": worst }),
        json!(0.0),
        Some(TOL),
    )
    .notes(notes)
}

/// A random splitting of `dim K` into up to four ideals whose ratios satisfy
/// the Casimir identity.
fn random_splitting(rng: &mut impl Rng, n: u32, d: u32) -> Option<Vec<(f64, f64)>> {
    for _ in 0..100 {
        let k = rng.gen_range(1..=d.min(4));
        let mut cuts: Vec<u32> = (0..k - 1).map(|_| rng.gen_range(1..d)).collect();
        cuts.sort_unstable();
        cuts.dedup();
        let mut dims = Vec::new();
        let mut prev = 0;
        for c in cuts.into_iter().chain(std::iter::once(d)) {
            dims.push(c - prev);
            prev = c;
        }
        let weights: Vec<f64> = dims.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
        if let Some(ideals) = ideals_from_weights(n, d, &dims, &weights) {
            let desc = SpaceDescriptor::new("split", n, d).with_ideals(ideals);
            if validate(&desc).is_empty() {
                return desc.params().ideal_ratios().ok();
            }
        }
    }
    None
}

fn einstein_g5(ctx: &Context) -> CheckResult {
    const TOL: f64 = 1e-10;
    const LAMBDA_TOL: f64 = 1e-12;
    let g5 = G5.metric().expect("g5 is a metric");
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0x35);
    let mut worst_residual: f64 = 0.0;
    let mut worst_lambda: f64 = 0.0;
    let mut checked = 0;
    let mut notes = Vec::new();
    for s in &ctx.catalog {
        let mut variants = Vec::new();
        if s.has_killing_data() {
            variants.push(s.params());
        }
        for _ in 0..SPLITTINGS {
            match random_splitting(&mut rng, s.n, s.d) {
                Some(ideals) => variants.push(SpaceParams::with_ideals(f64::from(s.n), f64::from(s.d), ideals)),
                None => notes.push(format!("{}: no admissible splitting found", s.name)),
            }
        }
        for space in variants {
            checked += 1;
            match einstein_check(&space, &g5, TOL) {
                Ok(c) => {
                    worst_residual = worst_residual.max(c.residual);
                    match c.lambda {
                        Some(l) => worst_lambda = worst_lambda.max((l - 0.5).abs()),
                        None => {
                            worst_lambda = f64::INFINITY;
                            notes.push(format!("{}: not Einstein, residual {:.3e}", s.name, c.residual));
                        }
                    }
                }
                Err(e) => notes.push(format!("{}: {e}", s.name)),
            }
        }
    }
    let ok = notes.is_empty() && worst_residual <= TOL && worst_lambda <= LAMBDA_TOL;
    CheckResult::new(
        "einstein.g5",
        ok,
        json!({ "spaces_checked": checked, "max_residual": worst_residual, "max_lambda_error": worst_lambda }),
        json!({ "lambda": 0.5 }),
        Some(TOL),
    )
    .note(format!("lambda tolerance {LAMBDA_TOL:e}; {SPLITTINGS} random ideal splittings per space"))
    .notes(notes)
}

fn einstein_g3(_: &Context) -> CheckResult {
    const TOL: f64 = 1e-10;
    let mut worst_residual: f64 = 0.0;
    let mut worst_lambda: f64 = 0.0;
    let mut notes = Vec::new();
    for (a, d, space) in single_a_grid(&a_grid_high()) {
        for s in closed_form_einstein_metrics(Some(a)).unwrap_or_default() {
            if !matches!(s.label, Label::G3 | Label::G4) {
                continue;
            }
            match einstein_check(&space, &s.metric, TOL) {
                Ok(c) => {
                    worst_residual = worst_residual.max(c.residual);
                    match c.lambda {
                        Some(l) => worst_lambda = worst_lambda.max(rel(l, s.einstein_constant)),
                        None => notes.push(format!("{} at a={a}, d={d}: residual {:.3e}", s.label, c.residual)),
                    }
                }
                Err(e) => notes.push(format!("{} at a={a}, d={d}: {e}", s.label)),
            }
        }
    }
    CheckResult::new(
        "einstein.g3",
        notes.is_empty() && worst_residual <= TOL && worst_lambda <= TOL,
        json!({ "max_residual": worst_residual, "max_lambda_rel_error": worst_lambda }),
        json!(0.0),
        Some(TOL),
    )
    .notes(notes)
}

fn criticality(check_id: &'static str, points: Vec<(String, SpaceParams, SlicePoint)>) -> CheckResult {
    const TOL: f64 = 1e-6;
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (what, space, p) in &points {
        match grad_slice(space, *p, hxh_einstein::curvature::DEFAULT_REL_STEP) {
            Ok(g) => {
                let n = norm(g);
                if n > TOL {
                    notes.push(format!("{what}: gradient norm {n:.3e}"));
                }
                worst = worst.max(n);
            }
            Err(e) => notes.push(format!("{what}: {e}")),
        }
    }
    CheckResult::new(
        check_id,
        notes.is_empty(),
        json!({ "points": points.len(), "max_gradient_norm": worst }),
        json!(0.0),
        Some(TOL),
    )
    .notes(notes)
}

fn criticality_g5(ctx: &Context) -> CheckResult {
    let mut points: Vec<(String, SpaceParams, SlicePoint)> = single_a_grid(&a_grid_high())
        .into_iter()
        .chain(single_a_grid(&a_grid_low()))
        .map(|(a, d, s)| (format!("a={a}, d={d}"), s, G5))
        .collect();
    points.extend(ctx.catalog.iter().map(|s| (s.name.clone(), s.params(), G5)));
    criticality("criticality.g5", points)
}

fn criticality_g3(_: &Context) -> CheckResult {
    let points = single_a_grid(&a_grid_high())
        .into_iter()
        .map(|(a, d, s)| (format!("a={a}, d={d}"), s, g3_point(a)))
        .collect();
    criticality("criticality.g3", points)
}

pub const HESSIAN_CASES: [(f64, f64); 3] = [(5.0, 10.0), (8.0, 6.0), (12.0, 9.0)];

fn hessian_g5_fd(_: &Context) -> CheckResult {
    const TOL: f64 = 1e-3;
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (n, d) in HESSIAN_CASES {
        let space = SpaceParams::new(n, d);
        let fd = match hess_slice(&space, G5, hxh_einstein::curvature::DEFAULT_REL_STEP) {
            Ok(h) => h,
            Err(e) => return CheckResult::failed("hessian.g5.fd", e),
        };
        let an = analytic_hessian_g5(n, d);
        for i in 0..3 {
            for j in i..3 {
                let err = rel(fd[(i, j)], an[(i, j)]);
                if err > TOL {
                    notes.push(format!(
                        "(n,d)=({n},{d}) entry ({},{}): fd {:.9e} vs analytic {:.9e}",
                        i + 1,
                        j + 1,
                        fd[(i, j)],
                        an[(i, j)]
                    ));
                }
                worst = worst.max(err);
            }
        }
    }
    CheckResult::new(
        "hessian.g5.fd",
        worst <= TOL,
        json!({ "cases": HESSIAN_CASES.len(), "max_rel_error": worst }),
        json!(0.0),
        Some(TOL),
    )
    .note("stated (2,3)/(3,2) pair symmetrized with the (2,3) value")
    .notes(notes)
}

fn hessian_g5_det(ctx: &Context) -> CheckResult {
    const TOL: f64 = 1e-10;
    let dims = all_family_dims(ctx);
    let mut worst: f64 = 0.0;
    let mut notes = Vec::new();
    for (name, n, d) in &dims {
        let stated = stated_determinant(StatedDeterminant::G5 { n: *n, d: *d });
        let err = rel(analytic_hessian_g5(*n, *d).det(), stated);
        if err > TOL {
            notes.push(format!("{name}: rel error {err:.3e}"));
        }
        worst = worst.max(err);
    }
    let (n, d) = HESSIAN_CASES[0];
    let alt = rel(
        analytic_hessian_g5_row3(n, d).det(),
        stated_determinant(StatedDeterminant::G5 { n, d }),
    );
    CheckResult::new(
        "hessian.g5.det",
        worst <= TOL,
        json!({ "spaces": dims.len(), "max_rel_error": worst }),
        json!(0.0),
        Some(TOL),
    )
    .note(format!(
        "the (3,2) symmetrization misses the stated determinant by {alt:.3e} (relative) at (n,d)=({n},{d})"
    ))
    .notes(notes)
}

fn stability_g5(ctx: &Context) -> CheckResult {
    let mut cases: Vec<(String, SpaceParams)> = SpaceFamily::sweep(SWEEP_MAX)
        .iter()
        .map(|r| (r.name(), SpaceParams::new(f64::from(r.n()), f64::from(r.d()))))
        .collect();
    cases.extend(ctx.catalog.iter().map(|s| (s.name.clone(), s.params())));
    let mut notes = Vec::new();
    let mut min_det = f64::INFINITY;
    for (name, space) in &cases {
        match stability_report(space, G5, None) {
            Ok(r) => {
                min_det = min_det.min(r.determinant);
                if r.coindex != 1 || !r.nondegenerate || r.determinant <= 0.0 {
                    notes.push(format!(
                        "{name}: coindex {}, degenerate {}, det {:.6e}",
                        r.coindex, r.degenerate, r.determinant
                    ));
                }
            }
            Err(e) => notes.push(format!("{name}: {e}")),
        }
    }
    CheckResult::new(
        "stability.g5",
        notes.is_empty(),
        json!({ "spaces": cases.len(), "min_det": min_det }),
        json!({ "coindex": 1, "nondegenerate": true, "det_sign": "+" }),
        None,
    )
    .notes(notes)
}

fn stability_g3(_: &Context) -> CheckResult {
    let grid = single_a_grid(&a_grid_high());
    let mut notes = Vec::new();
    let mut max_det = f64::NEG_INFINITY;
    for (a, d, space) in &grid {
        match stability_report(space, g3_point(*a), None) {
            Ok(r) => {
                max_det = max_det.max(r.determinant);
                if r.coindex != 2 || !r.nondegenerate || r.determinant >= 0.0 {
                    notes.push(format!(
                        "a={a}, d={d}: coindex {}, degenerate {}, det {:.6e}",
                        r.coindex, r.degenerate, r.determinant
                    ));
                }
            }
            Err(e) => notes.push(format!("a={a}, d={d}: {e}")),
        }
    }
    CheckResult::new(
        "stability.g3",
        notes.is_empty(),
        json!({ "grid_points": grid.len(), "max_det": max_det }),
        json!({ "coindex": 2, "nondegenerate": true, "det_sign": "-" }),
        None,
    )
    .notes(notes)
}

/// At `a = 3/4`, `d = 10` the stated `H(g3)` has a positive `h11` and an
/// entrywise determinant whose sign differs from the stated determinant
/// formula. Both facts must reproduce for the check to report
/// `known-mismatch`.
fn hessian_g3_stated(_: &Context) -> CheckResult {
    let (a, d) = (0.75, 10.0);
    let stated = match analytic_hessian_g3(a, d) {
        Ok(h) => h,
        Err(e) => return CheckResult::failed("hessian.g3.stated", e),
    };
    let formula = stated_determinant(StatedDeterminant::G3 { a, d });
    let entrywise = stated.det();
    let h11_positive = stated[(0, 0)] > 0.0;
    let sign_differs = entrywise.signum() != formula.signum();
    let space = SpaceParams::with_single_a(d, a);
    let fd = hess_slice(&space, g3_point(a), hxh_einstein::curvature::DEFAULT_REL_STEP);

    let mut result = CheckResult::new(
        "hessian.g3.stated",
        false,
        json!({
            "h11": stated[(0, 0)],
            "entrywise_det": entrywise,
            "stated_det_formula": formula,
            "fd_det": fd.as_ref().map(|h| h.det()).ok(),
        }),
        json!({ "h11_positive": true, "det_sign_differs": true }),
        None,
    );
    result.status = if h11_positive && sign_differs {
        Status::KnownMismatch
    } else {
        Status::Fail
    };
    if !h11_positive {
        result.notes.push("stated h11 is not positive here".into());
    }
    if !sign_differs {
        result.notes.push(format!(
            "entrywise determinant {entrywise:.6e} has the same sign as the stated formula {formula:.6e}"
        ));
    }
    if let Ok(fd) = fd {
        let ratio = |i: usize, j: usize| fd[(i, j)] / stated[(i, j)];
        result.notes.push(format!(
            "finite-difference reference: h11 {:.9e}, h12 {:.9e}, h13 {:.9e}, h33 {:.9e}; \
             fd/stated ratios (1,3) {:.6}, (2,3) {:.6}",
            fd[(0, 0)],
            fd[(0, 1)],
            fd[(0, 2)],
            fd[(2, 2)],
            ratio(0, 2),
            ratio(1, 2)
        ));
    }
    result
        .notes
        .push("coindex claims at g3 use the finite-difference Hessian (stability.g3)".into());
    result
}

/// Start points within 5% (of the largest coordinate) of `target`.
fn perturb(rng: &mut impl Rng, target: SlicePoint) -> SlicePoint {
    let scale = 0.05 * target.to_array().iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let t = target.to_array();
    SlicePoint::from_array([
        t[0] + scale * rng.gen_range(-1.0..1.0),
        t[1] + scale * rng.gen_range(-1.0..1.0),
        t[2] + scale * rng.gen_range(-1.0..1.0),
    ])
}

pub struct RecoveryTarget {
    pub label: &'static str,
    pub space: SpaceParams,
    pub point: SlicePoint,
}

pub fn recovery_targets() -> Vec<RecoveryTarget> {
    let (xp, xm) = diagonal_roots(1.0 / 3.0);
    vec![
        RecoveryTarget {
            label: "g1 (a=1/3, d=10)",
            space: SpaceParams::with_single_a(10.0, 1.0 / 3.0),
            point: SlicePoint::new(xp, xp, 0.0),
        },
        RecoveryTarget {
            label: "g2 (a=1/3, d=10)",
            space: SpaceParams::with_single_a(10.0, 1.0 / 3.0),
            point: SlicePoint::new(xm, xm, 0.0),
        },
        RecoveryTarget {
            label: "g3 (a=3/4, d=10)",
            space: SpaceParams::with_single_a(10.0, 0.75),
            point: g3_point(0.75),
        },
        RecoveryTarget {
            label: "g5 (a=3/4, d=10)",
            space: SpaceParams::with_single_a(10.0, 0.75),
            point: G5,
        },
    ]
}

/// Fraction of `SOLVER_TRIALS` perturbed starts from which Newton lands
/// within `1e-10` of the target, and the largest final step ratio among them.
pub fn recovery_rate(target: &RecoveryTarget, seed: u64) -> (f64, f64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = NewtonOptions::default();
    let mut hits = 0;
    let mut worst_ratio: f64 = 0.0;
    for _ in 0..SOLVER_TRIALS {
        let start = perturb(&mut rng, target.point);
        if let Ok(out) = refine_critical_point(&target.space, start, &opts) {
            if out.point.distance(target.point) <= 1e-10 {
                hits += 1;
                if let Some(r) = out.final_step_ratio() {
                    worst_ratio = worst_ratio.max(r);
                }
            }
        }
    }
    (hits as f64 / SOLVER_TRIALS as f64, worst_ratio)
}

fn solver_recovery(_: &Context) -> CheckResult {
    const RATE: f64 = 0.95;
    let targets = recovery_targets();
    let rates: Vec<(f64, f64)> = targets
        .par_iter()
        .enumerate()
        .map(|(i, t)| recovery_rate(t, SEED + i as u64))
        .collect();
    let measured: serde_json::Map<String, Value> = targets
        .iter()
        .zip(&rates)
        .map(|(t, (rate, ratio))| (t.label.to_string(), json!({ "rate": rate, "max_final_step_ratio": ratio })))
        .collect();
    CheckResult::new(
        "solver.recovery",
        rates.iter().all(|(r, _)| *r >= RATE),
        Value::Object(measured),
        json!({ "min_rate": RATE, "distance": 1e-10 }),
        Some(1e-10),
    )
    .note(format!("{SOLVER_TRIALS} starts per target, each coordinate moved by up to 5% of the largest"))
}

fn parse_critical(csv: &str) -> Vec<(String, f64, f64, f64)> {
    csv.lines()
        .filter_map(|l| l.strip_prefix("# critical: "))
        .filter_map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            Some((f.first()?.to_string(), f.get(1)?.parse().ok()?, f.get(2)?.parse().ok()?, f.get(3)?.parse().ok()?))
        })
        .collect()
}

/// Landscape grid for `(n, d, a) = (5, 10, 3/4)`: the critical rows written
/// to the CSV header carry the closed-form values, and `scal_N(g3) <
/// scal_N(g5)`.
fn grid_landscape(_: &Context) -> CheckResult {
    const TOL: f64 = 1e-9;
    let a = 0.75;
    let space = SpaceParams::with_single_a(10.0, a);
    let mut notes = Vec::new();
    let mut worst: f64 = 0.0;
    let mut values: HashMap<String, f64> = HashMap::new();
    for plane in [Plane::Sum2, Plane::Equal] {
        let spec = GridSpec {
            plane,
            range1: (0.0, 2.0),
            range2: (-1.0, 1.0),
            steps: (40, 40),
        };
        let critical: Vec<CriticalOnPlane> = critical_points(&space, &spec);
        let mut buf = Vec::new();
        if let Err(e) = write_csv(&mut buf, "n=5, d=10, a=0.75", &spec, &[], &critical) {
            return CheckResult::failed("grid.landscape", e);
        }
        let parsed = parse_critical(&String::from_utf8_lossy(&buf));
        if parsed.is_empty() {
            notes.push(format!("plane {plane}: no critical rows"));
        }
        for (label, c1, c2, value) in parsed {
            let lab = match label.as_str() {
                "g3" | "g4" => Label::G3,
                "g5" | "g6" => Label::G5,
                other => {
                    notes.push(format!("plane {plane}: unexpected critical label {other}"));
                    continue;
                }
            };
            let closed = closed_form_normalized_scalar(&space, lab).unwrap_or(f64::NAN);
            let at_coords = evaluate(&space, plane, c1, c2).unwrap_or(f64::NAN);
            let err = rel(value, closed).max(rel(at_coords, closed));
            if !(err <= TOL) {
                notes.push(format!("plane {plane} {label}: {value} vs closed form {closed}"));
            }
            worst = worst.max(err);
            values.insert(label, value);
        }
    }
    // the grid node (0.5, 0.5) on sum2 is g5
    if let Some(node) = evaluate(&space, Plane::Sum2, 0.5, 0.5) {
        let closed = closed_form_normalized_scalar(&space, Label::G5).unwrap_or(f64::NAN);
        worst = worst.max(rel(node, closed));
    }
    let (g3, g5) = (values.get("g3").copied(), values.get("g5").copied());
    let ordered = matches!((g3, g5), (Some(x), Some(y)) if x < y);
    if !ordered {
        notes.push(format!("expected scal_N(g3) < scal_N(g5), got {g3:?} and {g5:?}"));
    }
    CheckResult::new(
        "grid.landscape",
        notes.is_empty() && worst <= TOL,
        json!({ "scal_n_g3": g3, "scal_n_g5": g5, "max_rel_error": worst }),
        json!({
            "scal_n_g3": closed_form_normalized_scalar(&space, Label::G3).ok(),
            "scal_n_g5": closed_form_normalized_scalar(&space, Label::G5).ok(),
        }),
        Some(TOL),
    )
    .notes(notes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_have_the_stated_nodes() {
        assert_eq!(a_grid_high().len(), 9);
        assert_eq!(a_grid_high()[0], 0.55);
        assert_eq!(*a_grid_high().last().unwrap(), 0.95);
        assert_eq!(a_grid_low(), vec![0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45]);
    }

    #[test]
    fn splittings_satisfy_the_casimir_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let ideals = random_splitting(&mut rng, 8, 6).unwrap();
            let dims: f64 = ideals.iter().map(|(dim, _)| dim).sum();
            let trace: f64 = ideals.iter().map(|(dim, a)| dim * (1.0 - a)).sum();
            assert_eq!(dims, 6.0);
            assert!((trace - 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn filter_selects_by_substring() {
        let ctx = Context { catalog: Vec::new() };
        let report = run("empty", &ctx, Some("catalog."));
        let ids: Vec<_> = report.checks.iter().map(|c| c.check_id).collect();
        assert_eq!(ids, vec!["catalog.validate", "catalog.dim_h"]);
    }
}
