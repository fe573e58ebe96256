//! Normalized scalar curvature sampled on the planes `x1 + x2 = 2` and
//! `x1 = x2` of the `x3 = 1` slice, written as CSV.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::catalog::SpaceParams;
use crate::curvature::normalized_scalar;
use crate::einstein::{closed_form_einstein_metrics, Label};
use crate::error::{Error, Result};
use crate::metric::{Metric4, SlicePoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    /// `x1 + x2 = 2`, free coordinates `(x1, x4)`.
    Sum2,
    /// `x1 = x2`, free coordinates `(x1, x4)`.
    Equal,
}

impl Plane {
    pub fn point(self, coord1: f64, coord2: f64) -> SlicePoint {
        match self {
            Plane::Sum2 => SlicePoint::new(coord1, 2.0 - coord1, coord2),
            Plane::Equal => SlicePoint::new(coord1, coord1, coord2),
        }
    }

    /// Plane coordinates of `p`, if it lies on the plane.
    pub fn coords(self, p: SlicePoint) -> Option<(f64, f64)> {
        let on = match self {
            Plane::Sum2 => (p.x1 + p.x2 - 2.0).abs() < 1e-12,
            Plane::Equal => (p.x1 - p.x2).abs() < 1e-12,
        };
        on.then_some((p.x1, p.x4))
    }

    fn describe(self) -> &'static str {
        match self {
            Plane::Sum2 => "sum2 (x1+x2=2, x3=1); coord1=x1, coord2=x4",
            Plane::Equal => "equal (x1=x2, x3=1); coord1=x1, coord2=x4",
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Plane::Sum2 => "sum2",
            Plane::Equal => "equal",
        })
    }
}

impl FromStr for Plane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sum2" => Ok(Plane::Sum2),
            "equal" => Ok(Plane::Equal),
            _ => Err(Error::OutOfRange(format!("unknown plane `{s}` (expected sum2 or equal)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub plane: Plane,
    pub range1: (f64, f64),
    pub range2: (f64, f64),
    /// Number of intervals per axis; `steps + 1` nodes including both ends.
    pub steps: (usize, usize),
}

impl GridSpec {
    pub fn check(&self) -> Result<()> {
        let ok_range = |r: (f64, f64)| r.0.is_finite() && r.1.is_finite() && r.0 <= r.1;
        if !ok_range(self.range1) || !ok_range(self.range2) {
            return Err(Error::OutOfRange("grid ranges must be finite with a <= b".into()));
        }
        if self.steps.0 == 0 || self.steps.1 == 0 {
            return Err(Error::OutOfRange("grid steps must be positive".into()));
        }
        Ok(())
    }

    /// Nodes in row-major order, `coord1` outer.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        let axis = |(lo, hi): (f64, f64), steps: usize| {
            (0..=steps)
                .map(move |i| lo + (hi - lo) * i as f64 / steps as f64)
                .collect::<Vec<_>>()
        };
        let a = axis(self.range1, self.steps.0);
        let b = axis(self.range2, self.steps.1);
        a.iter()
            .flat_map(|&u| b.iter().map(move |&v| (u, v)))
            .collect()
    }

    fn contains(&self, (u, v): (f64, f64)) -> bool {
        let eps = 1e-12;
        u >= self.range1.0 - eps && u <= self.range1.1 + eps && v >= self.range2.0 - eps && v <= self.range2.1 + eps
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub coord1: f64,
    pub coord2: f64,
    /// `None` outside the metric domain.
    pub value: Option<f64>,
}

/// `scal_N` at a plane point, `None` where `(x1, x2, 1, x4)` is not a metric.
pub fn evaluate(space: &SpaceParams, plane: Plane, coord1: f64, coord2: f64) -> Option<f64> {
    let p = plane.point(coord1, coord2);
    let g = Metric4::on_slice(p.x1, p.x2, p.x4).ok()?;
    Some(normalized_scalar(space, &g))
}

pub fn evaluate_grid(space: &SpaceParams, spec: &GridSpec) -> Vec<GridRow> {
    spec.nodes()
        .into_iter()
        .map(|(coord1, coord2)| GridRow {
            coord1,
            coord2,
            value: evaluate(space, spec.plane, coord1, coord2),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalOnPlane {
    pub label: Label,
    pub coord1: f64,
    pub coord2: f64,
    pub value: f64,
}

/// Closed-form Einstein metrics lying on the plane within the grid ranges,
/// with `scal_N` evaluated at their exact coordinates.
pub fn critical_points(space: &SpaceParams, spec: &GridSpec) -> Vec<CriticalOnPlane> {
    let Ok(solutions) = closed_form_einstein_metrics(space.single_a()) else {
        return Vec::new();
    };
    solutions
        .iter()
        .filter_map(|s| {
            let (coord1, coord2) = spec.plane.coords(SlicePoint::from(s.metric))?;
            spec.contains((coord1, coord2)).then(|| CriticalOnPlane {
                label: s.label,
                coord1,
                coord2,
                value: normalized_scalar(space, &s.metric),
            })
        })
        .collect()
}

/// 17 significant digits.
pub fn fmt_value(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the grid: `#` comment header (space, plane, critical points),
/// then `coord1,coord2,scal_N` rows with an empty cell outside the domain.
pub fn write_csv<W: Write>(
    mut out: W,
    space_label: &str,
    spec: &GridSpec,
    rows: &[GridRow],
    critical: &[CriticalOnPlane],
) -> io::Result<()> {
    writeln!(out, "# space: {space_label}")?;
    writeln!(out, "# plane: {}", spec.plane.describe())?;
    for c in critical {
        writeln!(
            out,
            "# critical: {},{},{},{}",
            c.label,
            fmt_value(c.coord1),
            fmt_value(c.coord2),
            fmt_value(c.value)
        )?;
    }
    writeln!(out, "coord1,coord2,scal_N")?;
    for row in rows {
        let value = row.value.map(fmt_value).unwrap_or_default();
        writeln!(out, "{},{},{}", fmt_value(row.coord1), fmt_value(row.coord2), value)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(plane: Plane) -> GridSpec {
        GridSpec {
            plane,
            range1: (0.0, 2.0),
            range2: (-1.0, 1.0),
            steps: (40, 40),
        }
    }

    #[test]
    fn nodes_hit_exact_fractions() {
        let nodes = spec(Plane::Sum2).nodes();
        assert_eq!(nodes.len(), 41 * 41);
        assert!(nodes.contains(&(0.5, 0.5)));
        assert_eq!(nodes[0], (0.0, -1.0));
        assert_eq!(*nodes.last().unwrap(), (2.0, 1.0));
    }

    #[test]
    fn out_of_domain_cells_are_empty() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        assert!(evaluate(&space, Plane::Equal, 1.0, 1.0).is_none());
        assert!(evaluate(&space, Plane::Sum2, 2.0, 0.0).is_none());
        let mut buf = Vec::new();
        let s = GridSpec {
            steps: (1, 1),
            range1: (1.0, 1.0),
            range2: (1.0, 1.0),
            ..spec(Plane::Equal)
        };
        write_csv(&mut buf, "x", &s, &evaluate_grid(&space, &s), &[]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().last().unwrap().ends_with(','), "{text}");
    }

    #[test]
    fn critical_points_per_plane() {
        let space = SpaceParams::with_single_a(10.0, 0.75);
        let labels = |plane| {
            critical_points(&space, &spec(plane))
                .iter()
                .map(|c| c.label)
                .collect::<Vec<_>>()
        };
        assert_eq!(labels(Plane::Sum2), vec![Label::G3, Label::G4, Label::G5, Label::G6]);
        assert_eq!(labels(Plane::Equal), vec![Label::G3, Label::G4]);
    }

    #[test]
    fn bad_specs() {
        let mut s = spec(Plane::Sum2);
        s.steps = (0, 3);
        assert!(s.check().is_err());
        s.steps = (3, 3);
        s.range1 = (2.0, 1.0);
        assert!(s.check().is_err());
        assert!("diagonal".parse::<Plane>().is_err());
    }
}
