use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use hxh_einstein::einstein::match_closed_form;
use hxh_einstein::grid::{critical_points, evaluate, write_csv, GridRow};
use hxh_einstein::{
    builtin_catalog, compute_r, einstein_check, load_catalog, normalized_scalar, ricci_components,
    scalar_curvature, validate, GridSpec, Metric4, SpaceDescriptor,
};

use crate::error::CliError;
use crate::selector::{self, Selected};
use crate::verify;

pub const CATALOG_ENV: &str = "EINSTEIN_CATALOG";

/// Tolerance of the Einstein test reported by `analyze`.
pub const EINSTEIN_TOL: f64 = 1e-10;
/// Max-norm distance on the `x3 = 1` slice for naming a closed-form metric.
pub const MATCH_TOL: f64 = 1e-3;

pub enum CatalogSource {
    Builtin,
    File(PathBuf),
}

impl CatalogSource {
    /// An explicit path wins over the environment, which wins over the
    /// builtin catalog.
    pub fn resolve(path: Option<PathBuf>) -> Self {
        match path.or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from)) {
            Some(p) => CatalogSource::File(p),
            None => CatalogSource::Builtin,
        }
    }

    pub fn label(&self) -> String {
        match self {
            CatalogSource::Builtin => "builtin".into(),
            CatalogSource::File(p) => p.display().to_string(),
        }
    }

    /// Outer error: the file could not be read. Inner error: it did not
    /// parse or validate.
    pub fn load(&self) -> Result<hxh_einstein::Result<Vec<SpaceDescriptor>>, CliError> {
        match self {
            CatalogSource::Builtin => Ok(Ok(builtin_catalog())),
            CatalogSource::File(p) => {
                let text = fs::read_to_string(p).map_err(|source| CliError::Io {
                    context: format!("reading catalog {}", p.display()),
                    source,
                })?;
                Ok(load_catalog(&text))
            }
        }
    }
}

/// Six significant digits, trailing zeros dropped.
pub fn fmt6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&exp) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - exp).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn parse_metric(text: &str) -> Result<Metric4, CliError> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::BadArg(format!("`{t}` is not a number")))
        })
        .collect::<Result<_, _>>()?;
    match parts.as_slice() {
        &[x1, x2, x3, x4] => Ok(Metric4::new(x1, x2, x3, x4)?),
        _ => Err(CliError::BadArg(format!(
            "--metric takes x1,x2,x3,x4, got {} values",
            parts.len()
        ))),
    }
}

pub fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::BadArg(format!("expected a:b, got `{text}`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

pub fn parse_steps(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::BadArg(format!("expected N:M, got `{text}`"));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn catalog_for_selection(source: &CatalogSource) -> Result<Vec<SpaceDescriptor>, CliError> {
    Ok(source.load()??)
}

pub fn select(space: Option<&str>, source: &CatalogSource) -> Result<Selected, CliError> {
    let space = space.ok_or_else(|| CliError::BadArg("--space is required".into()))?;
    let catalog = catalog_for_selection(source)?;
    selector::resolve(space, &catalog)
}

#[derive(Debug, Serialize)]
pub struct RicciReport {
    pub r11: f64,
    pub r22: f64,
    pub r12: f64,
    pub r33: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct EinsteinReport {
    pub is_einstein: bool,
    pub lambda: Option<f64>,
    pub residual: f64,
    pub tolerance: f64,
    pub candidates: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeReport {
    pub space: String,
    pub n: f64,
    pub d: f64,
    pub a: Option<f64>,
    pub metric: [f64; 4],
    pub scal: f64,
    pub scal_n: f64,
    pub r: f64,
    /// Absent without Killing ratios for the isotropy ideals.
    pub ricci: Option<RicciReport>,
    pub einstein: Option<EinsteinReport>,
    pub label: Option<String>,
    pub notes: Vec<String>,
}

pub fn analyze(selected: &Selected, g: &Metric4) -> Result<AnalyzeReport, CliError> {
    let space = &selected.params;
    let mut notes = Vec::new();
    let (ricci, einstein) = match ricci_components(space, g) {
        Ok(ric) => {
            let check = einstein_check(space, g, EINSTEIN_TOL)?;
            (
                Some(RicciReport {
                    r11: ric.r11,
                    r22: ric.r22,
                    r12: ric.r12,
                    r33: ric.r33,
                }),
                Some(EinsteinReport {
                    is_einstein: check.is_einstein,
                    lambda: check.lambda,
                    residual: check.residual,
                    tolerance: EINSTEIN_TOL,
                    candidates: check.candidates,
                }),
            )
        }
        Err(e @ hxh_einstein::Error::MissingKillingData(_)) => {
            notes.push(format!("Ricci on p3 and the Einstein test need Killing ratios ({e})"));
            (None, None)
        }
        Err(e) => return Err(e.into()),
    };
    let label = match_closed_form(space, g, MATCH_TOL).map(|s| s.label.to_string());
    Ok(AnalyzeReport {
        space: selected.label.clone(),
        n: space.n,
        d: space.d,
        a: space.single_a(),
        metric: g.coords(),
        scal: scalar_curvature(space, g),
        scal_n: normalized_scalar(space, g),
        r: compute_r(g),
        ricci,
        einstein,
        label,
        notes,
    })
}

pub fn print_analyze(out: &mut impl Write, r: &AnalyzeReport) -> io::Result<()> {
    let m = r.metric.map(fmt6);
    writeln!(out, "space     {}", r.space)?;
    writeln!(out, "metric    ({}, {}, {}, {})", m[0], m[1], m[2], m[3])?;
    writeln!(out, "scal      {}", fmt6(r.scal))?;
    writeln!(out, "scal_N    {}", fmt6(r.scal_n))?;
    writeln!(out, "R         {}", fmt6(r.r))?;
    if let Some(ric) = &r.ricci {
        let r33: Vec<String> = ric.r33.iter().map(|x| fmt6(*x)).collect();
        writeln!(
            out,
            "ricci     r11={} r22={} r12={} r33=[{}]",
            fmt6(ric.r11),
            fmt6(ric.r22),
            fmt6(ric.r12),
            r33.join(", ")
        )?;
    }
    if let Some(e) = &r.einstein {
        match e.lambda {
            Some(l) => writeln!(out, "einstein  yes, lambda={} (residual {:.1e})", fmt6(l), e.residual)?,
            None => writeln!(out, "einstein  no (residual {:.3e} > {:e})", e.residual, e.tolerance)?,
        }
    }
    match &r.label {
        Some(l) => writeln!(out, "label     {l}")?,
        None => writeln!(out, "label     none within {MATCH_TOL:e}")?,
    }
    for n in &r.notes {
        writeln!(out, "note      {n}")?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub n: u32,
    pub d: u32,
    pub dim_h: u32,
    pub single_a: Option<f64>,
    pub ideals: Vec<(u32, f64)>,
    pub valid: bool,
}

pub fn catalog_entries(catalog: &[SpaceDescriptor]) -> Vec<CatalogEntry> {
    catalog
        .iter()
        .map(|s| CatalogEntry {
            name: s.name.clone(),
            n: s.n,
            d: s.d,
            dim_h: s.dim_h(),
            single_a: s.single_a,
            ideals: s.ideals.iter().map(|i| (i.dim, i.a)).collect(),
            valid: validate(s).is_empty(),
        })
        .collect()
}

pub fn print_catalog(out: &mut impl Write, source: &str, entries: &[CatalogEntry]) -> io::Result<()> {
    writeln!(out, "# catalog: {source} ({} spaces)", entries.len())?;
    let width = entries.iter().map(|e| e.name.len()).max().unwrap_or(4);
    writeln!(out, "{:width$}  {:>4}  {:>4}  {:>5}  killing ratios", "name", "n", "d", "dim H")?;
    for e in entries {
        let ratios = match (e.single_a, e.ideals.is_empty()) {
            (Some(a), _) => format!("a={}", fmt6(a)),
            (None, false) => e
                .ideals
                .iter()
                .map(|(dim, a)| format!("{dim}:{}", fmt6(*a)))
                .collect::<Vec<_>>()
                .join(" "),
            (None, true) => "-".into(),
        };
        writeln!(out, "{:width$}  {:>4}  {:>4}  {:>5}  {ratios}", e.name, e.n, e.d, e.dim_h)?;
    }
    Ok(())
}

/// Evaluates the grid on the worker pool and writes it as CSV to `out`, or
/// to stdout when `out` is `None`. Returns the number of data rows.
pub fn grid(selected: &Selected, spec: &GridSpec, out: Option<&Path>) -> Result<usize, CliError> {
    spec.check()?;
    let space = &selected.params;
    let rows: Vec<GridRow> = spec
        .nodes()
        .par_iter()
        .map(|&(coord1, coord2)| GridRow {
            coord1,
            coord2,
            value: evaluate(space, spec.plane, coord1, coord2),
        })
        .collect();
    let critical = critical_points(space, spec);
    let io_err = |context: String| move |source| CliError::Io { context, source };
    match out {
        Some(path) => {
            let file = File::create(path).map_err(io_err(format!("creating {}", path.display())))?;
            let mut w = BufWriter::new(file);
            write_csv(&mut w, &selected.label, spec, &rows, &critical)
                .and_then(|()| w.flush())
                .map_err(io_err(format!("writing {}", path.display())))?;
        }
        None => {
            let stdout = io::stdout();
            write_csv(stdout.lock(), &selected.label, spec, &rows, &critical)
                .map_err(io_err("writing stdout".into()))?;
        }
    }
    Ok(rows.len())
}

/// Runs the suite against the selected catalog. A catalog that fails to
/// load becomes a failed `catalog.validate` check.
pub fn verify(source: &CatalogSource, only: Option<&str>) -> Result<verify::Report, CliError> {
    if let Some(pattern) = only {
        if !verify::check_ids().any(|id| id.contains(pattern)) {
            let ids: Vec<&str> = verify::check_ids().collect();
            return Err(CliError::BadArg(format!(
                "no check matches `{pattern}`; available: {}",
                ids.join(", ")
            )));
        }
    }
    let label = source.label();
    Ok(match source.load()? {
        Ok(catalog) => verify::run(&label, &verify::Context { catalog }, only),
        Err(e) => verify::load_failure(&label, &e),
    })
}

pub fn print_verify(out: &mut impl Write, report: &verify::Report) -> io::Result<()> {
    writeln!(out, "# catalog: {}", report.catalog)?;
    for c in &report.checks {
        let status = match c.status {
            verify::Status::Pass => "PASS",
            verify::Status::Fail => "FAIL",
            verify::Status::KnownMismatch => "KNOWN-MISMATCH",
        };
        writeln!(out, "{status:<14} {:<22} measured {}", c.check_id, c.measured)?;
        for n in &c.notes {
            writeln!(out, "{:<14} {:<22} note: {n}", "", "")?;
        }
    }
    let ok = report.checks.iter().filter(|c| c.status.is_ok()).count();
    writeln!(out, "{ok}/{} checks ok", report.checks.len())
}
