//! Funk distances in all three geometries, line integrals of F along
//! straight segments, the spherical chord distance, and inversion of the
//! distance along a ray (geodesic parametrization by arc).

use crate::error::{FunkError, Result};
use crate::geometry::{DiscChart, Point2, Tangent2, TangentSample};
use crate::metric::eval_f;

/// Nodes of the 8-point Gauss-Legendre rule on [-1, 1] (positive half).
const GL8_NODES: [f64; 4] = [
    0.18343464249564980,
    0.52553240991632899,
    0.79666647741362674,
    0.96028985649753623,
];
const GL8_WEIGHTS: [f64; 4] = [
    0.36268378337836198,
    0.31370664587788729,
    0.22238103445337447,
    0.10122853629037626,
];

/// Closed-form Funk distance
/// `d(x, y) = log(|x-a|/|y-a|) + 1/2 log((1+eps|y|^2)/(1+eps|x|^2))`
/// with `a` the boundary exit point of the ray from `x` through `y`.
/// Returns 0 when `x = y`.
pub fn funk_distance(chart: &DiscChart, x: Point2, y: Point2) -> Result<f64> {
    chart.require_interior(x)?;
    chart.require_interior(y)?;
    let dir = Tangent2::new(y.x1 - x.x1, y.x2 - x.x2);
    if dir.norm_sq() == 0.0 {
        return Ok(0.0);
    }
    let t_star = chart.ray_boundary_parameter(x, dir)?;
    // |x-a| = t* |dir|, |y-a| = (t*-1)|dir|
    let log_ratio = (t_star / (t_star - 1.0)).ln();
    let e = chart.eps_f();
    let klein_part = 0.5 * ((1.0 + e * y.norm_sq()) / (1.0 + e * x.norm_sq())).ln();
    Ok(log_ratio + klein_part)
}

/// Composite 8-point Gauss-Legendre quadrature of `t -> F(x + t(y-x), y-x)`
/// over [0, 1], split into `n_steps` equal panels. Converges to
/// [`funk_distance`] by projective flatness of the metric.
pub fn integrate_f_along_segment(
    chart: &DiscChart,
    x: Point2,
    y: Point2,
    n_steps: usize,
) -> Result<f64> {
    chart.require_interior(x)?;
    chart.require_interior(y)?;
    let dir = Tangent2::new(y.x1 - x.x1, y.x2 - x.x2);
    if dir.norm_sq() == 0.0 {
        return Ok(0.0);
    }
    let n = n_steps.max(16);
    let h = 1.0 / n as f64;
    let mut total = 0.0;
    for panel in 0..n {
        let mid = (panel as f64 + 0.5) * h;
        let mut acc = 0.0;
        for k in 0..4 {
            for sgn in [-1.0, 1.0] {
                let t = mid + sgn * 0.5 * h * GL8_NODES[k];
                let p = Point2::new(x.x1 + t * dir.xi1, x.x2 + t * dir.xi2);
                // interior endpoints of a convex disc keep the segment interior
                debug_assert!(chart.contains(p));
                acc += GL8_WEIGHTS[k] * eval_f(chart, &TangentSample::new(p, dir))?;
            }
        }
        total += 0.5 * h * acc;
    }
    Ok(total)
}

/// Immersion of the chart into the upper hemisphere:
/// `phi(x) = (x, 1) / sqrt(1 + |x|^2)`.
pub fn hemisphere_immersion(x: Point2) -> [f64; 3] {
    let s = 1.0 / (1.0 + x.norm_sq()).sqrt();
    [s * x.x1, s * x.x2, s]
}

/// Great-circle distance between `phi(x)` and `phi(y)`.
pub fn spherical_chord_distance(x: Point2, y: Point2) -> f64 {
    let u = hemisphere_immersion(x);
    let v = hemisphere_immersion(y);
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    let cross = [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ];
    let cross_norm = (cross[0] * cross[0] + cross[1] * cross[1] + cross[2] * cross[2]).sqrt();
    cross_norm.atan2(dot)
}

/// The sine-ratio form of the spherical (eps = +1) Funk distance:
/// `d(x, y) = log(sin d_s(x, a) / sin d_s(y, a))` with `a` the boundary
/// exit point and `d_s` the great-circle distance under the hemisphere
/// immersion. Agrees with [`funk_distance`] for eps = +1.
pub fn spherical_sine_ratio_distance(chart: &DiscChart, x: Point2, y: Point2) -> Result<f64> {
    chart.require_interior(x)?;
    chart.require_interior(y)?;
    let dir = Tangent2::new(y.x1 - x.x1, y.x2 - x.x2);
    if dir.norm_sq() == 0.0 {
        return Ok(0.0);
    }
    let a = chart.ray_boundary_intersection(x, dir)?;
    let sx = spherical_chord_distance(x, a).sin();
    let sy = spherical_chord_distance(y, a).sin();
    Ok((sx / sy).ln())
}

/// Forward difference quotient `d(x, x + t xi) / t`; converges to `F(x, xi)`
/// linearly in `t`.
pub fn busemann_mayer_estimate(chart: &DiscChart, s: &TangentSample, t: f64) -> Result<f64> {
    s.validate(chart)?;
    let y = Point2::new(s.base.x1 + t * s.dir.xi1, s.base.x2 + t * s.dir.xi2);
    let d = funk_distance(chart, s.base, y)?;
    Ok(d / t)
}

/// The unique point `y` on the forward ray with `funk_distance(x, y) = arc`.
/// Bisection brackets the monotone closed-form distance, Newton polishes
/// (the derivative along the ray is `F(y, xi)`).
pub fn geodesic_point(chart: &DiscChart, s: &TangentSample, arc: f64) -> Result<Point2> {
    s.validate(chart)?;
    if arc < 0.0 {
        return Err(FunkError::NegativeArc(arc));
    }
    if arc == 0.0 {
        return Ok(s.base);
    }
    let t_star = chart.ray_boundary_parameter(s.base, s.dir)?;
    let at = |t: f64| Point2::new(s.base.x1 + t * s.dir.xi1, s.base.x2 + t * s.dir.xi2);
    let dist = |t: f64| -> f64 {
        let e = chart.eps_f();
        let y = at(t);
        (t_star / (t_star - t)).ln()
            + 0.5 * ((1.0 + e * y.norm_sq()) / (1.0 + e * s.base.norm_sq())).ln()
    };
    let mut lo = 0.0;
    let mut hi = t_star * (1.0 - 1e-14);
    for _ in 0..48 {
        let mid = 0.5 * (lo + hi);
        if dist(mid) < arc {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut t = 0.5 * (lo + hi);
    for _ in 0..8 {
        let slope = eval_f(chart, &TangentSample::new(at(t), s.dir))?;
        let step = (dist(t) - arc) / slope;
        let next = (t - step).clamp(lo, hi);
        if (next - t).abs() <= 1e-13 * t_star.max(1.0) {
            t = next;
            break;
        }
        t = next;
    }
    Ok(at(t))
}

/// A directed straight geodesic chord with its boundary exit point.
#[derive(Clone, Copy, Debug)]
pub struct GeodesicSegment {
    pub start: Point2,
    pub end: Point2,
    pub boundary_point: Point2,
}

impl GeodesicSegment {
    pub fn new(chart: &DiscChart, start: Point2, end: Point2) -> Result<Self> {
        chart.require_interior(start)?;
        chart.require_interior(end)?;
        let dir = Tangent2::new(end.x1 - start.x1, end.x2 - start.x2);
        if dir.norm_sq() == 0.0 {
            return Err(FunkError::CoincidentPoints);
        }
        let boundary_point = chart.ray_boundary_intersection(start, dir)?;
        Ok(GeodesicSegment {
            start,
            end,
            boundary_point,
        })
    }
}
