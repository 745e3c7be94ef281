//! A generic Finsler oracle: starting from nothing but a scalar metric
//! function `F(x, xi)`, nested dual numbers produce the fundamental tensor,
//! spray, Riemann curvature, S-curvature, and flag curvature by
//! differentiation alone. None of the closed forms elsewhere in the crate
//! are consulted, which makes these routines an independent cross-check.

use crate::curvature::spray_generic_closed;
use crate::dual::{con2, seed2, Dual, Scalar};
use crate::error::{FunkError, Result};
use crate::geometry::{DiscChart, Point2, Tangent2, TangentSample};
use crate::mat::{dot, Mat2};
use crate::metric::{alpha_generic, bh_density, bh_density_generic, f_generic};

/// A positively 1-homogeneous metric function, generic over the scalar type
/// so any derivative order can be pushed through it.
pub trait MetricFn {
    fn eval<T: Scalar>(&self, x: [T; 2], xi: [T; 2]) -> T;
    fn name(&self) -> &'static str;
}

impl<M: MetricFn> MetricFn for &M {
    fn eval<T: Scalar>(&self, x: [T; 2], xi: [T; 2]) -> T {
        (**self).eval(x, xi)
    }
    fn name(&self) -> &'static str {
        (**self).name()
    }
}

/// The Funk-Finsler metric itself.
#[derive(Clone, Copy, Debug)]
pub struct FunkMetricFn {
    pub eps: f64,
    pub r: f64,
}

impl FunkMetricFn {
    pub fn new(chart: &DiscChart) -> Self {
        FunkMetricFn {
            eps: chart.eps_f(),
            r: chart.r(),
        }
    }
}

impl MetricFn for FunkMetricFn {
    fn eval<T: Scalar>(&self, x: [T; 2], xi: [T; 2]) -> T {
        f_generic(self.eps, self.r, x, xi)
    }
    fn name(&self) -> &'static str {
        "funk"
    }
}

/// The Riemannian Klein-type norm `alpha` alone.
#[derive(Clone, Copy, Debug)]
pub struct KleinAlphaFn {
    pub r: f64,
}

impl MetricFn for KleinAlphaFn {
    fn eval<T: Scalar>(&self, x: [T; 2], xi: [T; 2]) -> T {
        alpha_generic(self.r, x, xi)
    }
    fn name(&self) -> &'static str {
        "klein-alpha"
    }
}

/// The flat Euclidean norm, a degenerate-free sanity case.
#[derive(Clone, Copy, Debug)]
pub struct EuclNorm;

impl MetricFn for EuclNorm {
    fn eval<T: Scalar>(&self, _x: [T; 2], xi: [T; 2]) -> T {
        (xi[0] * xi[0] + xi[1] * xi[1]).sqrt()
    }
    fn name(&self) -> &'static str {
        "euclidean"
    }
}

/// Relative defect of positive 1-homogeneity `F(x, lam xi) = lam F(x, xi)`.
pub fn homogeneity_defect<M: MetricFn>(m: &M, x: [f64; 2], xi: [f64; 2], lam: f64) -> f64 {
    let f = m.eval(x, xi);
    let fs = m.eval(x, [lam * xi[0], lam * xi[1]]);
    (fs - lam * f).abs() / (lam * f).abs().max(1e-300)
}

/// Outer-seeds component `j` of a pair already living in the inner layer.
fn outer_seed<T: Scalar>(v: [Dual<T>; 2], j: usize) -> [Dual<Dual<T>>; 2] {
    let mut out = con2(v);
    out[j] = Dual {
        re: v[j],
        eps: Dual::con(T::one()),
    };
    out
}

/// Fundamental tensor `g_ij = 1/2 [F^2]_{xi^i xi^j}` straight from the
/// metric function.
pub fn oracle_g<M: MetricFn>(m: &M, x: [f64; 2], xi: [f64; 2]) -> Mat2 {
    let mut g = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let xd: [Dual<Dual<f64>>; 2] = con2(con2(x));
            let xid = outer_seed(seed2(xi, i), j);
            let f = m.eval(xd, xid);
            let f2 = f * f;
            g[i][j] = 0.5 * f2.eps.eps;
        }
    }
    Mat2(g)
}

/// Spray coefficients from the metric function alone:
/// `G^i = 1/4 g^{il} ([F^2]_{x^k xi^l} xi^k - [F^2]_{x^l})`,
/// generic over `T` so the Riemann oracle can differentiate it twice more.
pub fn spray_generic<M: MetricFn, T: Scalar>(m: &M, x: [T; 2], xi: [T; 2]) -> [T; 2] {
    let mut g = [[T::zero(); 2]; 2];
    let mut rhs = [T::zero(); 2];
    for l in 0..2 {
        // [F^2]_{x^l}
        let f = m.eval(seed2(x, l), con2(xi));
        let f2 = f * f;
        let mut acc = -f2.eps;
        // [F^2]_{x^k xi^l} xi^k: inner seed x^k, outer seed xi^l
        for k in 0..2 {
            let xd = con2(seed2(x, k));
            let xid = outer_seed(con2(xi), l);
            let f = m.eval(xd, xid);
            let f2 = f * f;
            acc = acc + f2.eps.eps * xi[k];
        }
        rhs[l] = acc;
        for mm in 0..2 {
            let xd: [Dual<Dual<T>>; 2] = con2(con2(x));
            let xid = outer_seed(seed2(xi, l), mm);
            let f = m.eval(xd, xid);
            let f2 = f * f;
            g[l][mm] = T::from_f64(0.5) * f2.eps.eps;
        }
    }
    let det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    let ginv = [
        [g[1][1] / det, -g[0][1] / det],
        [-g[1][0] / det, g[0][0] / det],
    ];
    let quarter = T::from_f64(0.25);
    [
        quarter * (ginv[0][0] * rhs[0] + ginv[0][1] * rhs[1]),
        quarter * (ginv[1][0] * rhs[0] + ginv[1][1] * rhs[1]),
    ]
}

/// A spray, generic over the scalar type.
pub trait SprayFn {
    fn spray<T: Scalar>(&self, x: [T; 2], xi: [T; 2]) -> [T; 2];
    fn name(&self) -> &'static str;
}

/// The spray obtained from a metric function by the oracle formula.
#[derive(Clone, Copy, Debug)]
pub struct OracleSpray<M: MetricFn>(pub M);

impl<M: MetricFn> SprayFn for OracleSpray<M> {
    fn spray<T: Scalar>(&self, x: [T; 2], xi: [T; 2]) -> [T; 2] {
        spray_generic(&self.0, x, xi)
    }
    fn name(&self) -> &'static str {
        "oracle"
    }
}

/// The hand-derived closed-form spray of the Funk-Finsler metric.
#[derive(Clone, Copy, Debug)]
pub struct ClosedFormSpray {
    pub eps: f64,
    pub r: f64,
}

impl ClosedFormSpray {
    pub fn new(chart: &DiscChart) -> Self {
        ClosedFormSpray {
            eps: chart.eps_f(),
            r: chart.r(),
        }
    }
}

impl SprayFn for ClosedFormSpray {
    fn spray<T: Scalar>(&self, x: [T; 2], xi: [T; 2]) -> [T; 2] {
        spray_generic_closed(self.eps, self.r, x, xi)
    }
    fn name(&self) -> &'static str {
        "closed-form"
    }
}

/// Riemann curvature `R^i_k` from a spray alone:
/// `R^i_k = 2 dG^i/dx^k - xi^j d2G^i/dx^j dxi^k
///          + 2 G^j d2G^i/dxi^j dxi^k - dG^i/dxi^j dG^j/dxi^k`.
pub fn riemann_from_spray<S: SprayFn>(s: &S, x: [f64; 2], xi: [f64; 2]) -> Mat2 {
    let mut g0 = [0.0; 2];
    let mut dgdx = [[0.0; 2]; 2];
    let mut dgdxi = [[0.0; 2]; 2];
    let mut d2_x_xi = [[[0.0; 2]; 2]; 2];
    let mut d2_xi_xi = [[[0.0; 2]; 2]; 2];
    for j in 0..2 {
        for k in 0..2 {
            // inner seed x^j, outer seed xi^k
            let xd = con2(seed2(x, j));
            let xid = outer_seed(con2(xi), k);
            let g = s.spray(xd, xid);
            for i in 0..2 {
                g0[i] = g[i].re.re;
                dgdx[i][j] = g[i].re.eps;
                dgdxi[i][k] = g[i].eps.re;
                d2_x_xi[i][j][k] = g[i].eps.eps;
            }
            // inner seed xi^j, outer seed xi^k
            let xd: [Dual<Dual<f64>>; 2] = con2(con2(x));
            let xid = outer_seed(seed2(xi, j), k);
            let g = s.spray(xd, xid);
            for i in 0..2 {
                d2_xi_xi[i][j][k] = g[i].eps.eps;
            }
        }
    }
    let mut r = [[0.0; 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            let mut val = 2.0 * dgdx[i][k];
            for j in 0..2 {
                val -= xi[j] * d2_x_xi[i][j][k];
                val += 2.0 * g0[j] * d2_xi_xi[i][j][k];
                val -= dgdxi[i][j] * dgdxi[j][k];
            }
            r[i][k] = val;
        }
    }
    Mat2(r)
}

/// S-curvature from a spray and the Busemann-Hausdorff density:
/// `S = dG^m/dxi^m - xi^m d(ln sigma_BH)/dx^m`.
pub fn oracle_s_curvature<S: SprayFn>(
    chart: &DiscChart,
    spray_fn: &S,
    s: &TangentSample,
) -> Result<f64> {
    s.validate(chart)?;
    let x = s.base.to_array();
    let xi = s.dir.to_array();
    let mut div_g = 0.0;
    for m in 0..2 {
        let g = spray_fn.spray(con2(x), seed2(xi, m));
        div_g += g[m].eps;
    }
    let mut advect = 0.0;
    for m in 0..2 {
        let sig = bh_density_generic(chart.eps_f(), chart.r(), seed2(x, m));
        advect += xi[m] * sig.eps / sig.re;
    }
    Ok(div_g - advect)
}

/// The g-orthogonal quotient `K = g(R u, u) / (F^2 g(u, u))` with `u`
/// Gram-Schmidt-orthogonalized against the flagpole `xi`.
fn flag_quotient(g: &Mat2, f: f64, xi: [f64; 2], r: &Mat2) -> Result<f64> {
    // start from the Euclidean rotation of xi, then remove the g-parallel part
    let u0 = [-xi[1], xi[0]];
    let g_xi = g.apply(xi);
    let coeff = dot(g_xi, u0) / dot(g_xi, xi);
    let u = [u0[0] - coeff * xi[0], u0[1] - coeff * xi[1]];
    let gu = g.apply(u);
    let denom = f * f * dot(gu, u);
    if !(denom > 1e-14) {
        return Err(FunkError::DegenerateFlag(denom));
    }
    let ru = r.apply(u);
    Ok(dot(g.apply(ru), u) / denom)
}

/// Flag curvature of the Funk-Finsler metric from a Riemann matrix by the
/// quotient route.
pub fn flag_from_riemann_quotient(
    chart: &DiscChart,
    s: &TangentSample,
    r: &Mat2,
) -> Result<f64> {
    s.validate(chart)?;
    let xi = s.dir.to_array();
    let g = oracle_g(&FunkMetricFn::new(chart), s.base.to_array(), xi);
    let f = f_generic(chart.eps_f(), chart.r(), s.base.to_array(), xi);
    flag_quotient(&g, f, xi, r)
}

/// Flag curvature of an arbitrary metric function, entirely from the oracle
/// chain: spray -> Riemann -> quotient.
pub fn oracle_flag_metric<M: MetricFn>(m: &M, x: [f64; 2], xi: [f64; 2]) -> Result<f64> {
    let rm = riemann_from_spray(&OracleSpray(m), x, xi);
    let g = oracle_g(m, x, xi);
    let f = m.eval(x, xi);
    flag_quotient(&g, f, xi, &rm)
}

/// Flag curvature from a Riemann matrix by least squares against the
/// isotropic model `R^i_k = K (F^2 delta^i_k - F F_{xi^k} xi^i)`.
pub fn flag_from_riemann_least_squares(
    chart: &DiscChart,
    s: &TangentSample,
    r: &Mat2,
) -> Result<f64> {
    s.validate(chart)?;
    let (eps, rr) = (chart.eps_f(), chart.r());
    let x = s.base.to_array();
    let xi = s.dir.to_array();
    let f = f_generic(eps, rr, x, xi);
    let mut fk = [0.0; 2];
    for k in 0..2 {
        fk[k] = f_generic(eps, rr, con2(x), seed2(xi, k)).eps;
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..2 {
        for k in 0..2 {
            let delta = if i == k { 1.0 } else { 0.0 };
            let a = f * f * delta - f * fk[k] * xi[i];
            num += r.0[i][k] * a;
            den += a * a;
        }
    }
    if !(den > 1e-14) {
        return Err(FunkError::DegenerateFlag(den));
    }
    Ok(num / den)
}

/// Which implementation produced a Busemann-Hausdorff density value.
pub trait DensityFn {
    fn density(&self, chart: &DiscChart, x: Point2) -> Result<f64>;
    fn name(&self) -> &'static str;
}

/// The closed-form density.
pub struct ClosedFormDensity;

impl DensityFn for ClosedFormDensity {
    fn density(&self, chart: &DiscChart, x: Point2) -> Result<f64> {
        bh_density(chart, x)
    }
    fn name(&self) -> &'static str {
        "closed-form"
    }
}

/// Black-box density `sigma_BH = pi / area(B)` where `B` is the unit ball
/// `{xi : F(x, xi) <= 1}`, computed by the polar-area quadrature
/// `area = 1/2 integral rho(theta)^2 dtheta`, `rho = 1/F(x, e_theta)`.
/// The midpoint rule on a periodic smooth integrand converges spectrally.
pub struct QuadratureDensity {
    pub n_theta: usize,
}

impl Default for QuadratureDensity {
    fn default() -> Self {
        QuadratureDensity { n_theta: 720 }
    }
}

impl DensityFn for QuadratureDensity {
    fn density(&self, chart: &DiscChart, x: Point2) -> Result<f64> {
        chart.require_interior(x)?;
        Ok(indicatrix_density_generic(
            &FunkMetricFn::new(chart),
            x.to_array(),
            self.n_theta,
        ))
    }
    fn name(&self) -> &'static str {
        "quadrature"
    }
}

/// The polar-area density for an arbitrary metric function, generic over the
/// scalar type so it can be differentiated in `x` through the quadrature.
pub fn indicatrix_density_generic<M: MetricFn, T: Scalar>(
    m: &M,
    x: [T; 2],
    n_theta: usize,
) -> T {
    let n = n_theta.max(8);
    let h = 2.0 * std::f64::consts::PI / n as f64;
    let mut area = T::zero();
    for k in 0..n {
        let th = (k as f64 + 0.5) * h;
        let f = m.eval(x, [T::from_f64(th.cos()), T::from_f64(th.sin())]);
        area = area + T::from_f64(0.5 * h) / (f * f);
    }
    T::from_f64(std::f64::consts::PI) / area
}

/// Black-box S-curvature: oracle spray divergence minus the advected log of
/// the quadrature density. Uses nothing but the metric function.
pub fn oracle_s_black_box<M: MetricFn>(
    m: &M,
    x: [f64; 2],
    xi: [f64; 2],
    n_theta: usize,
) -> f64 {
    let mut div_g = 0.0;
    for k in 0..2 {
        div_g += spray_generic(m, con2(x), seed2(xi, k))[k].eps;
    }
    let mut advect = 0.0;
    for k in 0..2 {
        let sig = indicatrix_density_generic(m, seed2(x, k), n_theta);
        advect += xi[k] * sig.eps / sig.re;
    }
    div_g - advect
}

/// RK4 integration of the geodesic equation `x'' = -2 G(x, x')` from a
/// tangent sample, over `t_end` in `n_steps` steps. Returns the discrete
/// path including the initial state; errors with [`FunkError::BoundaryExit`]
/// if the trajectory leaves the disc.
pub fn integrate_geodesic_ode<S: SprayFn>(
    chart: &DiscChart,
    spray_fn: &S,
    s: &TangentSample,
    t_end: f64,
    n_steps: usize,
) -> Result<Vec<(Point2, Tangent2)>> {
    s.validate(chart)?;
    let n = n_steps.max(1);
    let h = t_end / n as f64;
    let rhs = |x: [f64; 2], v: [f64; 2]| -> Result<([f64; 2], [f64; 2])> {
        let p = Point2::from(x);
        if !chart.contains(p) {
            // reported with the step index by the caller
            return Err(FunkError::BoundaryExit { step: 0, total: 0 });
        }
        let g = spray_fn.spray(x, v);
        Ok((v, [-2.0 * g[0], -2.0 * g[1]]))
    };
    let mut x = s.base.to_array();
    let mut v = s.dir.to_array();
    let mut path = Vec::with_capacity(n + 1);
    path.push((Point2::from(x), Tangent2::from(v)));
    for step in 0..n {
        let exit = |_e: FunkError| FunkError::BoundaryExit {
            step: step + 1,
            total: n,
        };
        let (k1x, k1v) = rhs(x, v).map_err(exit)?;
        let half = 0.5 * h;
        let (k2x, k2v) = rhs(
            [x[0] + half * k1x[0], x[1] + half * k1x[1]],
            [v[0] + half * k1v[0], v[1] + half * k1v[1]],
        )
        .map_err(exit)?;
        let (k3x, k3v) = rhs(
            [x[0] + half * k2x[0], x[1] + half * k2x[1]],
            [v[0] + half * k2v[0], v[1] + half * k2v[1]],
        )
        .map_err(exit)?;
        let (k4x, k4v) = rhs(
            [x[0] + h * k3x[0], x[1] + h * k3x[1]],
            [v[0] + h * k3v[0], v[1] + h * k3v[1]],
        )
        .map_err(exit)?;
        for i in 0..2 {
            x[i] += h / 6.0 * (k1x[i] + 2.0 * k2x[i] + 2.0 * k3x[i] + k4x[i]);
            v[i] += h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
        }
        let p = Point2::from(x);
        if !chart.contains(p) {
            return Err(FunkError::BoundaryExit {
                step: step + 1,
                total: n,
            });
        }
        path.push((p, Tangent2::from(v)));
    }
    Ok(path)
}

/// Largest Euclidean distance of any path point from the straight line
/// through the initial point along the initial velocity.
pub fn max_chord_deviation(path: &[(Point2, Tangent2)]) -> f64 {
    if path.len() < 2 {
        return 0.0;
    }
    let (p0, v0) = path[0];
    let vn = v0.norm();
    let mut worst = 0.0f64;
    for &(p, _) in &path[1..] {
        let dx = [p.x1 - p0.x1, p.x2 - p0.x2];
        let cross = (dx[0] * v0.xi2 - dx[1] * v0.xi1).abs();
        worst = worst.max(cross / vn);
    }
    worst
}
