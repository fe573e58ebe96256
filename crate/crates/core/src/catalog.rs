//! Homogeneous-space descriptors.
//!
//! A space `M = H×H/ΔK` with `H/K` an irreducible symmetric space enters
//! every formula only through `n = dim H/K`, `d = dim K` and the Killing
//! ratios `a_l` of the ideals `k_l` of `k` (`κ_{k_l} = a_l·κ_h|_{k_l}`,
//! `a_0 = 0` for the center). This module ships the symmetric spaces without
//! a single Killing ratio, reads user catalogs, and checks the structural
//! identities every descriptor must satisfy.

use std::fmt;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Absolute tolerance of the floating-point invariants, scaled by `max(1, n/2)`.
pub const INVARIANT_TOL: f64 = 1e-12;

static BUILTIN_CATALOG: &str = include_str!("../data/builtin.toml");

/// An ideal `k_l` of the isotropy algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropyIdeal {
    pub dim: u32,
    /// Killing ratio `a_l`, in `[0, 1)`.
    pub a: f64,
}

impl IsotropyIdeal {
    pub fn new(dim: u32, a: f64) -> Self {
        Self { dim, a }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceDescriptor {
    pub name: String,
    /// `dim H/K`
    pub n: u32,
    /// `dim K`
    pub d: u32,
    /// May be empty when the Killing ratios are unknown.
    pub ideals: Vec<IsotropyIdeal>,
    /// Present when `κ_k = a·κ_h|_k` for a single `a`.
    pub single_a: Option<f64>,
}

impl SpaceDescriptor {
    pub fn new(name: impl Into<String>, n: u32, d: u32) -> Self {
        Self {
            name: name.into(),
            n,
            d,
            ideals: Vec::new(),
            single_a: None,
        }
    }

    pub fn with_single_a(mut self, a: f64) -> Self {
        self.single_a = Some(a);
        self
    }

    pub fn with_ideals(mut self, ideals: Vec<IsotropyIdeal>) -> Self {
        self.ideals = ideals;
        self
    }

    pub fn dim_m(&self) -> u32 {
        2 * self.n + self.d
    }

    pub fn dim_h(&self) -> u32 {
        self.n + self.d
    }

    pub fn has_killing_data(&self) -> bool {
        !self.ideals.is_empty() || self.single_a.is_some()
    }

    /// The real-valued parameters consumed by the curvature formulas.
    pub fn params(&self) -> SpaceParams {
        let n = f64::from(self.n);
        let d = f64::from(self.d);
        let ratios = if !self.ideals.is_empty() {
            KillingRatios::Ideals(
                self.ideals
                    .iter()
                    .map(|i| (f64::from(i.dim), i.a))
                    .collect(),
            )
        } else if let Some(a) = self.single_a {
            KillingRatios::Single(a)
        } else {
            KillingRatios::Unknown
        };
        SpaceParams {
            n,
            d,
            ratios,
            single_a: self.single_a,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum KillingRatios {
    Unknown,
    Single(f64),
    Ideals(Vec<(f64, f64)>),
}

/// Dimension and Killing-ratio data with real `n` and `d`.
///
/// The formulas are rational in `n` and `d`, so they can be evaluated on the
/// formal family `n = 2d(1 − a)` for any real `a`, which is how the
/// single-ratio spaces are swept.
#[derive(Debug, Clone, PartialEq)]
pub struct SpaceParams {
    pub n: f64,
    pub d: f64,
    ratios: KillingRatios,
    single_a: Option<f64>,
}

impl SpaceParams {
    /// Only `(n, d)`: enough for scalar curvature and its derivatives.
    pub fn new(n: f64, d: f64) -> Self {
        Self {
            n,
            d,
            ratios: KillingRatios::Unknown,
            single_a: None,
        }
    }

    /// A single-ratio space, `n = 2d(1 − a)`.
    pub fn with_single_a(d: f64, a: f64) -> Self {
        Self {
            n: 2.0 * d * (1.0 - a),
            d,
            ratios: KillingRatios::Single(a),
            single_a: Some(a),
        }
    }

    /// Explicit `(dim_l, a_l)` pairs.
    pub fn with_ideals(n: f64, d: f64, ideals: Vec<(f64, f64)>) -> Self {
        Self {
            n,
            d,
            ratios: KillingRatios::Ideals(ideals),
            single_a: None,
        }
    }

    pub fn single_a(&self) -> Option<f64> {
        self.single_a
    }

    pub fn dim_m(&self) -> f64 {
        2.0 * self.n + self.d
    }

    /// `α = (n + d)/(2n + d)`.
    pub fn alpha(&self) -> f64 {
        (self.n + self.d) / self.dim_m()
    }

    /// `(dim_l, a_l)` for each ideal; a single ratio counts as one ideal of
    /// dimension `d`.
    pub fn ideal_ratios(&self) -> Result<Vec<(f64, f64)>> {
        match &self.ratios {
            KillingRatios::Unknown => Err(Error::MissingKillingData(format!(
                "n={}, d={}",
                self.n, self.d
            ))),
            KillingRatios::Single(a) => Ok(vec![(self.d, *a)]),
            KillingRatios::Ideals(v) => Ok(v.clone()),
        }
    }
}

impl From<&SpaceDescriptor> for SpaceParams {
    fn from(s: &SpaceDescriptor) -> Self {
        s.params()
    }
}

/// A violated descriptor invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    NonPositiveDimension { field: &'static str, value: i64 },
    IdealDimension { index: usize, dim: i64 },
    IdealRatioRange { index: usize, a: f64 },
    IdealDimSum { sum: u64, d: u32 },
    CasimirTrace { trace: f64, expected: f64 },
    SingleARange { a: f64 },
    SingleAMismatch { index: usize, a: f64, single_a: f64 },
    SingleARelation { n: u32, expected: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NonPositiveDimension { field, value } => {
                write!(f, "{field} must be a positive integer, got {value}")
            }
            Violation::IdealDimension { index, dim } => {
                write!(f, "ideal {index}: dim must be >= 1, got {dim}")
            }
            Violation::IdealRatioRange { index, a } => {
                write!(f, "ideal {index}: Killing ratio a={a} outside [0, 1)")
            }
            Violation::IdealDimSum { sum, d } => {
                write!(f, "ideal dimensions sum to {sum}, expected d={d}")
            }
            Violation::CasimirTrace { trace, expected } => write!(
                f,
                "Casimir trace sum (1-a_l) d_l = {trace} differs from n/2 = {expected}"
            ),
            Violation::SingleARange { a } => write!(f, "single_a={a} outside (0, 1)"),
            Violation::SingleAMismatch { index, a, single_a } => {
                write!(f, "ideal {index}: a={a} differs from single_a={single_a}")
            }
            Violation::SingleARelation { n, expected } => {
                write!(f, "n={n} violates n = 2d(1-a) = {expected}")
            }
        }
    }
}

/// Every violated invariant of `space`; empty when valid.
pub fn validate(space: &SpaceDescriptor) -> Vec<Violation> {
    let mut out = Vec::new();
    if space.n == 0 {
        out.push(Violation::NonPositiveDimension {
            field: "n",
            value: 0,
        });
    }
    if space.d == 0 {
        out.push(Violation::NonPositiveDimension {
            field: "d",
            value: 0,
        });
    }
    let half_n = f64::from(space.n) / 2.0;
    let tol = INVARIANT_TOL * half_n.max(1.0);

    if !space.ideals.is_empty() {
        for (index, ideal) in space.ideals.iter().enumerate() {
            if ideal.dim == 0 {
                out.push(Violation::IdealDimension { index, dim: 0 });
            }
            if !(0.0..1.0).contains(&ideal.a) {
                out.push(Violation::IdealRatioRange { index, a: ideal.a });
            }
        }
        let sum: u64 = space.ideals.iter().map(|i| u64::from(i.dim)).sum();
        if sum != u64::from(space.d) {
            out.push(Violation::IdealDimSum { sum, d: space.d });
        }
        let trace: f64 = space
            .ideals
            .iter()
            .map(|i| (1.0 - i.a) * f64::from(i.dim))
            .sum();
        if (trace - half_n).abs() > tol {
            out.push(Violation::CasimirTrace {
                trace,
                expected: half_n,
            });
        }
    }

    if let Some(a) = space.single_a {
        if !(a > 0.0 && a < 1.0) {
            out.push(Violation::SingleARange { a });
        }
        for (index, ideal) in space.ideals.iter().enumerate() {
            if (ideal.a - a).abs() > INVARIANT_TOL {
                out.push(Violation::SingleAMismatch {
                    index,
                    a: ideal.a,
                    single_a: a,
                });
            }
        }
        let expected = 2.0 * f64::from(space.d) * (1.0 - a);
        if (f64::from(space.n) - expected).abs() > tol {
            out.push(Violation::SingleARelation {
                n: space.n,
                expected,
            });
        }
    }
    out
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogDoc {
    spaces: Vec<RawEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    n: i64,
    d: i64,
    single_a: Option<f64>,
    ideals: Option<Vec<RawIdeal>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    dim: i64,
    a: f64,
}

impl RawEntry {
    fn into_descriptor(self) -> Result<SpaceDescriptor> {
        let mut early = Vec::new();
        let n = positive(self.n, "n", &mut early);
        let d = positive(self.d, "d", &mut early);
        let mut ideals = Vec::new();
        for (index, raw) in self.ideals.unwrap_or_default().into_iter().enumerate() {
            match u32::try_from(raw.dim) {
                Ok(dim) if dim > 0 => ideals.push(IsotropyIdeal::new(dim, raw.a)),
                _ => early.push(Violation::IdealDimension {
                    index,
                    dim: raw.dim,
                }),
            }
        }
        if !early.is_empty() {
            return Err(Error::Validation {
                entry: self.name,
                violations: early,
            });
        }
        let space = SpaceDescriptor {
            name: self.name,
            n,
            d,
            ideals,
            single_a: self.single_a,
        };
        let violations = validate(&space);
        if violations.is_empty() {
            Ok(space)
        } else {
            Err(Error::Validation {
                entry: space.name,
                violations,
            })
        }
    }
}

fn positive(value: i64, field: &'static str, out: &mut Vec<Violation>) -> u32 {
    match u32::try_from(value) {
        Ok(v) if v > 0 => v,
        _ => {
            out.push(Violation::NonPositiveDimension { field, value });
            0
        }
    }
}

/// Parses and validates a TOML catalog. Either every entry is returned or
/// the first failing entry is reported.
///
/// ```
/// let spaces = hxh_einstein::load_catalog(r#"
/// [[spaces]]
/// name = "SU(4)/Sp(2)"
/// n = 5
/// d = 10
/// single_a = 0.75
/// "#).unwrap();
/// assert_eq!(spaces[0].dim_m(), 20);
/// ```
pub fn load_catalog(source: &str) -> Result<Vec<SpaceDescriptor>> {
    let doc: CatalogDoc = toml::from_str(source).map_err(|e| Error::Parse(e.to_string()))?;
    doc.spaces
        .into_iter()
        .map(RawEntry::into_descriptor)
        .collect()
}

/// The shipped catalog: instances of every family row of symmetric spaces
/// without a single Killing ratio, plus `SU(4)/Sp(2)` (`a = 3/4`).
pub fn builtin_catalog() -> Vec<SpaceDescriptor> {
    load_catalog(BUILTIN_CATALOG).expect("builtin catalog is valid")
}

/// Source text of the shipped catalog.
pub fn builtin_catalog_source() -> &'static str {
    BUILTIN_CATALOG
}

/// Builds ideals with prescribed dimensions whose Killing ratios are
/// proportional to `weights` and satisfy the Casimir trace identity
/// `Σ (1 − a_l) d_l = n/2`. Returns `None` when no such ratios lie in
/// `[0, 1)`.
pub fn ideals_from_weights(
    n: u32,
    d: u32,
    dims: &[u32],
    weights: &[f64],
) -> Option<Vec<IsotropyIdeal>> {
    if dims.len() != weights.len() || dims.iter().map(|&x| u64::from(x)).sum::<u64>() != u64::from(d) {
        return None;
    }
    // Σ a_l d_l must equal d − n/2.
    let target = f64::from(d) - f64::from(n) / 2.0;
    if target < 0.0 || weights.iter().any(|w| *w < 0.0) {
        return None;
    }
    let weighted: f64 = dims
        .iter()
        .zip(weights)
        .map(|(&dim, w)| f64::from(dim) * w)
        .sum();
    let scale = if target == 0.0 {
        0.0
    } else if weighted > 0.0 {
        target / weighted
    } else {
        return None;
    };
    let ideals: Vec<_> = dims
        .iter()
        .zip(weights)
        .map(|(&dim, w)| IsotropyIdeal::new(dim, w * scale))
        .collect();
    ideals.iter().all(|i| i.a < 1.0).then_some(ideals)
}

/// Rows of the table of irreducible symmetric spaces `H/K` for which
/// `κ_k ≠ a·κ_h|_k` for every `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceFamily {
    /// `SU(p+q)/SU(p)×SU(q)×S¹`, `1 ≤ p ≤ q`
    SuPq { p: u32, q: u32 },
    /// `SO(2m)/U(m)`, `m ≥ 2`
    So2mUm { m: u32 },
    /// `SO(p+q)/SO(p)×SO(q)`, `1 ≤ p < q`, `p+q ≥ 7`
    SoPq { p: u32, q: u32 },
    /// `Sp(m)/SU(m)×S¹`, `m ≥ 2`
    SpmUm { m: u32 },
    /// `Sp(p+q)/Sp(p)×Sp(q)`, `1 ≤ p < q`
    SpPq { p: u32, q: u32 },
    G2So4,
    F4Sp3Su2,
    E6Su6Su2,
    E6So10S1,
    E7So12Su2,
    E7E6S1,
    E8E7Su2,
}

impl SpaceFamily {
    pub const SPORADIC: [SpaceFamily; 7] = [
        SpaceFamily::G2So4,
        SpaceFamily::F4Sp3Su2,
        SpaceFamily::E6Su6Su2,
        SpaceFamily::E6So10S1,
        SpaceFamily::E7So12Su2,
        SpaceFamily::E7E6S1,
        SpaceFamily::E8E7Su2,
    ];

    /// Checks the parameter range stated for the row.
    pub fn check_range(&self) -> Result<()> {
        let ok = match *self {
            SpaceFamily::SuPq { p, q } => 1 <= p && p <= q,
            SpaceFamily::So2mUm { m } | SpaceFamily::SpmUm { m } => m >= 2,
            SpaceFamily::SoPq { p, q } => 1 <= p && p < q && p + q >= 7,
            SpaceFamily::SpPq { p, q } => 1 <= p && p < q,
            _ => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!(
                "{} outside the stated range ({})",
                self.name(),
                self.range_text()
            )))
        }
    }

    fn range_text(&self) -> &'static str {
        match self {
            SpaceFamily::SuPq { .. } => "1 <= p <= q",
            SpaceFamily::So2mUm { .. } | SpaceFamily::SpmUm { .. } => "m >= 2",
            SpaceFamily::SoPq { .. } => "1 <= p < q, p+q >= 7",
            SpaceFamily::SpPq { .. } => "1 <= p < q",
            _ => "no parameters",
        }
    }

    pub fn name(&self) -> String {
        match *self {
            SpaceFamily::SuPq { p, q } => format!("SU(p+q)/SU(p)xSU(q)xS1, p={p}, q={q}"),
            SpaceFamily::So2mUm { m } => format!("SO(2m)/U(m), m={m}"),
            SpaceFamily::SoPq { p, q } => format!("SO(p+q)/SO(p)xSO(q), p={p}, q={q}"),
            SpaceFamily::SpmUm { m } => format!("Sp(m)/SU(m)xS1, m={m}"),
            SpaceFamily::SpPq { p, q } => format!("Sp(p+q)/Sp(p)xSp(q), p={p}, q={q}"),
            SpaceFamily::G2So4 => "G2/SO(4)".into(),
            SpaceFamily::F4Sp3Su2 => "F4/Sp(3)xSU(2)".into(),
            SpaceFamily::E6Su6Su2 => "E6/SU(6)xSU(2)".into(),
            SpaceFamily::E6So10S1 => "E6/SO(10)xS1".into(),
            SpaceFamily::E7So12Su2 => "E7/SO(12)xSU(2)".into(),
            SpaceFamily::E7E6S1 => "E7/E6xS1".into(),
            SpaceFamily::E8E7Su2 => "E8/E7xSU(2)".into(),
        }
    }

    /// `dim H`, from the table's own column.
    pub fn dim_h(&self) -> u32 {
        match *self {
            SpaceFamily::SuPq { p, q } => (p + q) * (p + q) - 1,
            SpaceFamily::So2mUm { m } => 2 * m * m - m,
            SpaceFamily::SoPq { p, q } => (p * p + q * q + 2 * p * q - p - q) / 2,
            SpaceFamily::SpmUm { m } => m * (2 * m + 1),
            SpaceFamily::SpPq { p, q } => (p + q) * (2 * p + 2 * q + 1),
            SpaceFamily::G2So4 => 14,
            SpaceFamily::F4Sp3Su2 => 52,
            SpaceFamily::E6Su6Su2 | SpaceFamily::E6So10S1 => 78,
            SpaceFamily::E7So12Su2 | SpaceFamily::E7E6S1 => 133,
            SpaceFamily::E8E7Su2 => 248,
        }
    }

    /// `d = dim K`
    pub fn d(&self) -> u32 {
        match *self {
            SpaceFamily::SuPq { p, q } => p * p + q * q - 1,
            SpaceFamily::So2mUm { m } => m * m,
            SpaceFamily::SoPq { p, q } => (p * p - p + q * q - q) / 2,
            SpaceFamily::SpmUm { m } => m * m,
            SpaceFamily::SpPq { p, q } => p * (2 * p + 1) + q * (2 * q + 1),
            SpaceFamily::G2So4 => 6,
            SpaceFamily::F4Sp3Su2 => 24,
            SpaceFamily::E6Su6Su2 => 38,
            SpaceFamily::E6So10S1 => 46,
            SpaceFamily::E7So12Su2 => 69,
            SpaceFamily::E7E6S1 => 79,
            // verbatim from the table
            SpaceFamily::E8E7Su2 => 139,
        }
    }

    /// `n = dim H/K`
    pub fn n(&self) -> u32 {
        match *self {
            SpaceFamily::SuPq { p, q } => 2 * p * q,
            SpaceFamily::So2mUm { m } => m * (m - 1),
            SpaceFamily::SoPq { p, q } => p * q,
            SpaceFamily::SpmUm { m } => m * (m + 1),
            SpaceFamily::SpPq { p, q } => 4 * p * q,
            SpaceFamily::G2So4 => 8,
            SpaceFamily::F4Sp3Su2 => 28,
            SpaceFamily::E6Su6Su2 => 40,
            SpaceFamily::E6So10S1 => 32,
            SpaceFamily::E7So12Su2 => 64,
            SpaceFamily::E7E6S1 => 54,
            SpaceFamily::E8E7Su2 => 109,
        }
    }

    pub fn descriptor(&self) -> Result<SpaceDescriptor> {
        self.check_range()?;
        Ok(SpaceDescriptor::new(self.name(), self.n(), self.d()))
    }

    /// Every valid row whose parameters are at most `max_param`.
    pub fn sweep(max_param: u32) -> Vec<SpaceFamily> {
        let mut rows = Vec::new();
        for p in 1..=max_param {
            for q in p..=max_param {
                rows.push(SpaceFamily::SuPq { p, q });
            }
        }
        rows.extend((2..=max_param).map(|m| SpaceFamily::So2mUm { m }));
        for p in 1..=max_param {
            for q in p + 1..=max_param {
                if p + q >= 7 {
                    rows.push(SpaceFamily::SoPq { p, q });
                }
            }
        }
        rows.extend((2..=max_param).map(|m| SpaceFamily::SpmUm { m }));
        for p in 1..=max_param {
            for q in p + 1..=max_param {
                rows.push(SpaceFamily::SpPq { p, q });
            }
        }
        rows.extend(SpaceFamily::SPORADIC);
        rows
    }
}

/// Family parameters used by [`builtin_families`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FamilyParams {
    pub su: (u32, u32),
    pub so_2m: u32,
    pub so: (u32, u32),
    pub sp_m: u32,
    pub sp: (u32, u32),
}

impl Default for FamilyParams {
    fn default() -> Self {
        Self {
            su: (1, 2),
            so_2m: 3,
            so: (3, 4),
            sp_m: 2,
            sp: (1, 2),
        }
    }
}

/// The twelve table rows, with the five families instantiated at `params`.
pub fn builtin_families(params: &FamilyParams) -> Result<Vec<SpaceDescriptor>> {
    let mut rows = vec![
        SpaceFamily::SuPq {
            p: params.su.0,
            q: params.su.1,
        },
        SpaceFamily::So2mUm { m: params.so_2m },
        SpaceFamily::SoPq {
            p: params.so.0,
            q: params.so.1,
        },
        SpaceFamily::SpmUm { m: params.sp_m },
        SpaceFamily::SpPq {
            p: params.sp.0,
            q: params.sp.1,
        },
    ];
    rows.extend(SpaceFamily::SPORADIC);
    rows.iter().map(SpaceFamily::descriptor).collect()
}

/// Lower-cased name with whitespace and parentheses removed, used to match
/// user-typed selectors such as `G2/SO4` against `G2/SO(4)`.
pub fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace() && *c != '(' && *c != ')')
        .map(|c| match c {
            '×' => 'x',
            ':' => ',',
            '¹' => '1',
            c => c.to_ascii_lowercase(),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn so2m_u3_entry() {
        let spaces = load_catalog(
            r#"
            [[spaces]]
            name = "SO(2m)/U(m), m=3"
            n = 6
            d = 9
            "#,
        )
        .unwrap();
        assert_eq!(spaces[0].dim_m(), 21);
    }

    #[test]
    fn single_a_relation() {
        let ok = SpaceDescriptor::new("x", 5, 10).with_single_a(0.75);
        assert!(validate(&ok).is_empty());

        let doc = r#"
            [[spaces]]
            name = "bad"
            n = 4
            d = 10
            single_a = 0.75
        "#;
        match load_catalog(doc) {
            Err(Error::Validation { entry, violations }) => {
                assert_eq!(entry, "bad");
                assert!(matches!(
                    violations[0],
                    Violation::SingleARelation { n: 4, .. }
                ));
            }
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn casimir_trace_cases() {
        let ok = SpaceDescriptor::new("x", 6, 9).with_ideals(vec![IsotropyIdeal::new(9, 2.0 / 3.0)]);
        assert!(validate(&ok).is_empty());

        let bad = SpaceDescriptor::new("x", 6, 9).with_ideals(vec![IsotropyIdeal::new(9, 0.5)]);
        let report = validate(&bad);
        assert_eq!(report.len(), 1);
        match report[0] {
            Violation::CasimirTrace { trace, expected } => {
                assert_eq!(trace, 4.5);
                assert_eq!(expected, 3.0);
            }
            ref v => panic!("unexpected {v}"),
        }
    }

    #[test]
    fn ideal_dimension_sum() {
        let s = SpaceDescriptor::new("x", 6, 9).with_ideals(vec![
            IsotropyIdeal::new(1, 0.0),
            IsotropyIdeal::new(7, 0.5),
        ]);
        assert!(validate(&s)
            .iter()
            .any(|v| matches!(v, Violation::IdealDimSum { sum: 8, d: 9 })));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(load_catalog("spaces = 3"), Err(Error::Parse(_))));
        let unknown = r#"
            [[spaces]]
            name = "x"
            n = 5
            d = 10
            colour = "red"
        "#;
        assert!(matches!(load_catalog(unknown), Err(Error::Parse(_))));
        let negative = r#"
            [[spaces]]
            name = "neg"
            n = -5
            d = 10
        "#;
        assert!(matches!(load_catalog(negative), Err(Error::Validation { .. })));
    }

    #[test]
    fn catalog_fails_atomically() {
        let doc = r#"
            [[spaces]]
            name = "good"
            n = 5
            d = 10
            single_a = 0.75

            [[spaces]]
            name = "broken"
            n = 6
            d = 9
            ideals = [{ dim = 9, a = 0.5 }]
        "#;
        let err = load_catalog(doc).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("broken"), "{msg}");
        assert!(msg.contains("Casimir"), "{msg}");
    }

    #[test]
    fn family_examples() {
        let so = SpaceFamily::SoPq { p: 3, q: 4 }.descriptor().unwrap();
        assert_eq!((so.n, so.d), (12, 9));
        let g2 = SpaceFamily::G2So4.descriptor().unwrap();
        assert_eq!((g2.n, g2.d), (8, 6));
        let e8 = SpaceFamily::E8E7Su2.descriptor().unwrap();
        assert_eq!((e8.n, e8.d, e8.dim_h()), (109, 139, 248));
    }

    #[test]
    fn family_ranges() {
        assert!(SpaceFamily::SoPq { p: 2, q: 4 }.descriptor().is_err());
        assert!(SpaceFamily::SuPq { p: 3, q: 2 }.descriptor().is_err());
        assert!(SpaceFamily::So2mUm { m: 1 }.descriptor().is_err());
        assert!(SpaceFamily::SpPq { p: 2, q: 2 }.descriptor().is_err());
        let params = FamilyParams {
            so: (1, 5),
            ..Default::default()
        };
        assert!(matches!(builtin_families(&params), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn builtin_families_has_twelve_valid_rows() {
        let rows = builtin_families(&FamilyParams::default()).unwrap();
        assert_eq!(rows.len(), 12);
        assert!(rows.iter().all(|s| validate(s).is_empty() && !s.has_killing_data()));
    }

    #[test]
    fn builtin_catalog_matches_table_rows() {
        let catalog = builtin_catalog();
        let sweep = SpaceFamily::sweep(8);
        let mut matched = 0;
        for space in &catalog {
            if let Some(row) = sweep.iter().find(|r| r.name() == space.name) {
                assert_eq!((space.n, space.d), (row.n(), row.d()), "{}", space.name);
                matched += 1;
            } else {
                assert_eq!(space.name, "SU(4)/Sp(2)");
                assert_eq!(space.single_a, Some(0.75));
            }
        }
        assert_eq!(matched, catalog.len() - 1);
    }

    #[test]
    fn weights_produce_casimir_consistent_ideals() {
        let ideals = ideals_from_weights(8, 6, &[3, 3], &[0.2, 0.7]).unwrap();
        let s = SpaceDescriptor::new("G2/SO(4)", 8, 6).with_ideals(ideals);
        assert!(validate(&s).is_empty(), "{:?}", validate(&s));
        // circle with n = 2d forces a = 0
        let circle = ideals_from_weights(2, 1, &[1], &[0.3]).unwrap();
        assert_eq!(circle[0].a, 0.0);
        assert!(ideals_from_weights(8, 6, &[3, 2], &[0.2, 0.7]).is_none());
    }

    #[test]
    fn selector_normalization() {
        assert_eq!(normalize_name("G2/SO4"), normalize_name("G2/SO(4)"));
        assert_eq!(
            normalize_name("SO(2m)/U(m):m=3"),
            normalize_name("SO(2m)/U(m), m=3")
        );
    }
}
