//! The invariant metrics `g = (x1, x2, x3, x4)`.
//!
//! With respect to the standard metric `-κ_g`, the matrix of `g` is the
//! block matrix
//!
//! ```text
//! [ x1·I_n  x4·I_n    0    ]
//! [ x4·I_n  x2·I_n    0    ]
//! [   0       0     x3·I_d ]
//! ```
//!
//! so `g` is positive definite iff `x1, x2, x3 > 0` and `x1·x2 > x4²`.

use std::fmt;

use crate::error::{Error, Result};

/// An invariant metric of the 4-parameter family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Metric4 {
    x1: f64,
    x2: f64,
    x3: f64,
    x4: f64,
}

impl Metric4 {
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Result<Self> {
        if ![x1, x2, x3, x4].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidMetric("non-finite coordinate".into()));
        }
        if x1 <= 0.0 || x2 <= 0.0 || x3 <= 0.0 {
            return Err(Error::InvalidMetric("x1, x2, x3 > 0 violated".into()));
        }
        if x1 * x2 - x4 * x4 <= 0.0 {
            return Err(Error::InvalidMetric("x1x2>x4^2 violated".into()));
        }
        Ok(Self { x1, x2, x3, x4 })
    }

    /// The metric `(x1, x2, 1, x4)` on the `x3 = 1` slice.
    pub fn on_slice(x1: f64, x2: f64, x4: f64) -> Result<Self> {
        Self::new(x1, x2, 1.0, x4)
    }

    /// The standard metric `(1, 1, 1, 0)`.
    pub fn standard() -> Self {
        Self {
            x1: 1.0,
            x2: 1.0,
            x3: 1.0,
            x4: 0.0,
        }
    }

    pub fn x1(&self) -> f64 {
        self.x1
    }

    pub fn x2(&self) -> f64 {
        self.x2
    }

    pub fn x3(&self) -> f64 {
        self.x3
    }

    pub fn x4(&self) -> f64 {
        self.x4
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    /// `x1·x2 − x4²`, the determinant of the `p1 ⊕ p2` block per copy of `q`.
    pub fn block_det(&self) -> f64 {
        self.x1 * self.x2 - self.x4 * self.x4
    }

    pub fn is_diagonal(&self) -> bool {
        self.x4 == 0.0
    }

    /// `c·g`, panics unless `c > 0`.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c > 0.0 && c.is_finite(), "scale factor must be positive");
        Self {
            x1: c * self.x1,
            x2: c * self.x2,
            x3: c * self.x3,
            x4: c * self.x4,
        }
    }

    /// The homothetic representative with `x3 = 1`.
    pub fn normalized(&self) -> Self {
        self.scaled(1.0 / self.x3)
    }

    /// Exchanges the two `H` factors: `(x1, x2) ↦ (x2, x1)`.
    pub fn swapped(&self) -> Self {
        Self {
            x1: self.x2,
            x2: self.x1,
            ..*self
        }
    }
}

impl fmt::Display for Metric4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.x1, self.x2, self.x3, self.x4)
    }
}

/// A point `(x1, x2, x4)` of the `x3 = 1` slice, the coordinates used for
/// gradients and Hessians of the normalized scalar curvature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlicePoint {
    pub x1: f64,
    pub x2: f64,
    pub x4: f64,
}

impl SlicePoint {
    pub const fn new(x1: f64, x2: f64, x4: f64) -> Self {
        Self { x1, x2, x4 }
    }

    pub fn from_array(p: [f64; 3]) -> Self {
        Self::new(p[0], p[1], p[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x4]
    }

    pub fn metric(self) -> Result<Metric4> {
        Metric4::on_slice(self.x1, self.x2, self.x4)
    }

    pub fn block_det(self) -> f64 {
        self.x1 * self.x2 - self.x4 * self.x4
    }

    pub fn distance(self, other: SlicePoint) -> f64 {
        let a = self.to_array();
        let b = other.to_array();
        a.iter()
            .zip(b)
            .map(|(u, v)| (u - v).abs())
            .fold(0.0, f64::max)
    }
}

impl From<Metric4> for SlicePoint {
    /// Projects onto the slice after rescaling to `x3 = 1`.
    fn from(g: Metric4) -> Self {
        let g = g.normalized();
        Self::new(g.x1, g.x2, g.x4)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_boundary_and_negative() {
        assert!(Metric4::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(Metric4::new(1.0, 1.0, 1.0, 2.0).is_err());
        assert!(Metric4::new(0.0, 1.0, 1.0, 0.0).is_err());
        assert!(Metric4::new(1.0, 1.0, -1.0, 0.0).is_err());
        assert!(Metric4::new(f64::NAN, 1.0, 1.0, 0.0).is_err());
        assert!(Metric4::new(1.0, 1.0, 1.0, -0.99).is_ok());
    }

    #[test]
    fn message_names_the_cross_constraint() {
        let err = Metric4::new(1.0, 1.0, 1.0, 2.0).unwrap_err();
        assert!(err.to_string().contains("x1x2>x4^2 violated"));
    }

    #[test]
    fn normalization_projects_to_slice() {
        let g = Metric4::new(1.0, 3.0, 2.0, 1.0).unwrap();
        let p = SlicePoint::from(g);
        assert_eq!(p, SlicePoint::new(0.5, 1.5, 0.5));
    }
}
