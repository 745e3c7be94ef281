//! Charts, points, tangent vectors, and the ray-boundary intersection.
//!
//! The ambient model is a Euclidean disc of radius `r` centered at the
//! origin, carrying a reference Riemannian metric of constant curvature
//! `eps` in {-1, 0, +1}. All downstream closed forms are expressed in
//! these chart coordinates.

use crate::error::{FunkError, Result};

/// Relative margin below the boundary inside which base points are accepted.
/// All closed forms carry `(r^2 - |x|^2)` denominators; rejecting points in
/// the outermost `1e-9 * r` shell keeps condition numbers bounded.
pub const INTERIOR_MARGIN: f64 = 1e-9;

/// The ambient disc model: curvature sign and radius.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiscChart {
    eps: i32,
    r: f64,
}

impl DiscChart {
    /// Validates `eps` in {-1, 0, +1}, `r > 0`, and `r <= 1` when `eps != 0`.
    pub fn new(eps: i32, r: f64) -> Result<Self> {
        if !(-1..=1).contains(&eps) {
            return Err(FunkError::InvalidEps(eps));
        }
        if !(r > 0.0) || (eps != 0 && r > 1.0) {
            return Err(FunkError::InvalidRadius { r, eps });
        }
        Ok(DiscChart { eps, r })
    }

    pub fn eps(&self) -> i32 {
        self.eps
    }

    /// Curvature sign as a float, for use in the closed forms.
    pub fn eps_f(&self) -> f64 {
        self.eps as f64
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Strict interior test: `|p| < r`.
    pub fn contains(&self, p: Point2) -> bool {
        p.norm() < self.r
    }

    /// Domain guard for pointwise operations: rejects `|x| > r * (1 - 1e-9)`.
    pub fn require_interior(&self, p: Point2) -> Result<()> {
        let n = p.norm();
        if n <= self.r * (1.0 - INTERIOR_MARGIN) {
            Ok(())
        } else {
            Err(FunkError::PointOutsideDisc { norm: n, r: self.r })
        }
    }

    /// The boundary exit point `a = x + t* dir` with `t* > 0` the positive
    /// root of `|x + t dir|^2 = r^2`.
    pub fn ray_boundary_intersection(&self, x: Point2, dir: Tangent2) -> Result<Point2> {
        let t = self.ray_boundary_parameter(x, dir)?;
        Ok(Point2::new(x.x1 + t * dir.xi1, x.x2 + t * dir.xi2))
    }

    /// The parameter `t*` of the boundary exit point along `t -> x + t dir`.
    pub fn ray_boundary_parameter(&self, x: Point2, dir: Tangent2) -> Result<f64> {
        self.require_interior(x)?;
        let d2 = dir.norm_sq();
        if d2 == 0.0 {
            return Err(FunkError::DegenerateDirection);
        }
        let b = x.x1 * dir.xi1 + x.x2 * dir.xi2;
        let gap = self.r * self.r - x.norm_sq();
        let disc = (b * b + d2 * gap).sqrt();
        // sign-aware root to avoid cancellation near the boundary
        let t = if b <= 0.0 {
            (disc - b) / d2
        } else {
            gap / (disc + b)
        };
        Ok(t)
    }
}

/// A point in chart coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point2 {
    pub x1: f64,
    pub x2: f64,
}

impl Point2 {
    pub fn new(x1: f64, x2: f64) -> Self {
        Point2 { x1, x2 }
    }

    pub fn norm_sq(&self) -> f64 {
        self.x1 * self.x1 + self.x2 * self.x2
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn to_array(&self) -> [f64; 2] {
        [self.x1, self.x2]
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(v: [f64; 2]) -> Self {
        Point2::new(v[0], v[1])
    }
}

/// A tangent vector in chart coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tangent2 {
    pub xi1: f64,
    pub xi2: f64,
}

impl Tangent2 {
    pub fn new(xi1: f64, xi2: f64) -> Self {
        Tangent2 { xi1, xi2 }
    }

    pub fn norm_sq(&self) -> f64 {
        self.xi1 * self.xi1 + self.xi2 * self.xi2
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(&self, c: f64) -> Self {
        Tangent2::new(c * self.xi1, c * self.xi2)
    }

    pub fn to_array(&self) -> [f64; 2] {
        [self.xi1, self.xi2]
    }
}

impl From<[f64; 2]> for Tangent2 {
    fn from(v: [f64; 2]) -> Self {
        Tangent2::new(v[0], v[1])
    }
}

/// A base point together with a nonzero direction: the argument of every
/// pointwise metric and curvature operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TangentSample {
    pub base: Point2,
    pub dir: Tangent2,
}

impl TangentSample {
    pub fn new(base: Point2, dir: Tangent2) -> Self {
        TangentSample { base, dir }
    }

    /// Checks the base-point and nonzero-direction invariants against a chart.
    pub fn validate(&self, chart: &DiscChart) -> Result<()> {
        chart.require_interior(self.base)?;
        if self.dir.norm_sq() == 0.0 {
            return Err(FunkError::DegenerateDirection);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_validation() {
        assert!(DiscChart::new(0, 1.0).is_ok());
        assert!(DiscChart::new(0, 5.0).is_ok()); // any r > 0 for eps = 0
        assert!(DiscChart::new(1, 1.0).is_ok());
        assert_eq!(DiscChart::new(2, 1.0), Err(FunkError::InvalidEps(2)));
        assert_eq!(
            DiscChart::new(1, 1.5),
            Err(FunkError::InvalidRadius { r: 1.5, eps: 1 })
        );
        assert!(DiscChart::new(-1, 0.0).is_err());
        assert!(DiscChart::new(0, -1.0).is_err());
    }

    #[test]
    fn contains_examples() {
        let c = DiscChart::new(0, 1.0).unwrap();
        assert!(c.contains(Point2::new(0.0, 0.0)));
        assert!(!c.contains(Point2::new(1.0, 0.0))); // boundary excluded
        // |(0.3, 0.3)| = 0.3 sqrt(2) ~ 0.4243 < 0.5
        let c = DiscChart::new(1, 0.5).unwrap();
        assert!(c.contains(Point2::new(0.3, 0.3)));
    }

    #[test]
    fn ray_boundary_examples() {
        let c = DiscChart::new(0, 1.0).unwrap();
        let a = c
            .ray_boundary_intersection(Point2::new(0.0, 0.0), Tangent2::new(1.0, 0.0))
            .unwrap();
        assert!((a.x1 - 1.0).abs() < 1e-12 && a.x2.abs() < 1e-12);

        let a = c
            .ray_boundary_intersection(Point2::new(0.5, 0.0), Tangent2::new(0.0, 1.0))
            .unwrap();
        assert!((a.x1 - 0.5).abs() < 1e-12);
        assert!((a.x2 - 0.75f64.sqrt()).abs() < 1e-12);

        let a = c
            .ray_boundary_intersection(Point2::new(0.5, 0.0), Tangent2::new(-1.0, 0.0))
            .unwrap();
        assert!((a.x1 + 1.0).abs() < 1e-12 && a.x2.abs() < 1e-12);
    }

    #[test]
    fn ray_boundary_degenerate() {
        let c = DiscChart::new(0, 1.0).unwrap();
        assert_eq!(
            c.ray_boundary_intersection(Point2::new(0.0, 0.0), Tangent2::new(0.0, 0.0)),
            Err(FunkError::DegenerateDirection)
        );
    }

    #[test]
    fn exit_point_lies_on_boundary() {
        let c = DiscChart::new(0, 1.0).unwrap();
        for &(x, d) in &[
            ([0.9, 0.0], [1.0, 0.01]),
            ([0.9, 0.0], [-1.0, 0.3]),
            ([-0.2, 0.7], [0.4, -0.1]),
            ([0.0, 0.0], [3.0, -4.0]),
        ] {
            let t = c
                .ray_boundary_parameter(x.into(), d.into())
                .unwrap();
            assert!(t > 0.0);
            let a = c.ray_boundary_intersection(x.into(), d.into()).unwrap();
            assert!((a.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn scaling_invariance_of_exit_point() {
        let c = DiscChart::new(0, 1.0).unwrap();
        let x = Point2::new(0.3, -0.4);
        let d = Tangent2::new(0.7, 0.2);
        let a1 = c.ray_boundary_intersection(x, d).unwrap();
        let a2 = c.ray_boundary_intersection(x, d.scale(17.0)).unwrap();
        assert!((a1.x1 - a2.x1).abs() < 1e-12 && (a1.x2 - a2.x2).abs() < 1e-12);
    }
}
