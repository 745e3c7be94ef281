//! Closed-form evaluation of the Randers data on a constant-curvature disc:
//! alpha, beta, F = alpha + beta, the Riemannian tensor `a_ij` and its
//! inverse, the 1-form coefficients `b_i`, `||beta||_alpha^2`, the
//! fundamental tensor `g_ij`, the Busemann-Hausdorff density, and the
//! distortion.

use crate::dual::{con2, seed2, Dual, Scalar};
use crate::error::{FunkError, Result};
use crate::geometry::{DiscChart, Point2, TangentSample};
use crate::mat::{dot, Mat2};

/// `alpha(x, xi) = sqrt((r^2-|x|^2)|xi|^2 + <x,xi>^2) / (r^2-|x|^2)`,
/// generic over the scalar type so dual numbers flow through.
pub fn alpha_generic<T: Scalar>(r: f64, x: [T; 2], xi: [T; 2]) -> T {
    let r2 = T::from_f64(r * r);
    let w = r2 - (x[0] * x[0] + x[1] * x[1]);
    let q = x[0] * xi[0] + x[1] * xi[1];
    let xin = xi[0] * xi[0] + xi[1] * xi[1];
    (w * xin + q * q).sqrt() / w
}

/// `beta(x, xi) = (1 + eps r^2) <x,xi> / ((r^2-|x|^2)(1 + eps |x|^2))`.
pub fn beta_generic<T: Scalar>(eps: f64, r: f64, x: [T; 2], xi: [T; 2]) -> T {
    let r2 = T::from_f64(r * r);
    let e = T::from_f64(eps);
    let one = T::one();
    let x2 = x[0] * x[0] + x[1] * x[1];
    let w = r2 - x2;
    let q = x[0] * xi[0] + x[1] * xi[1];
    (one + e * r2) * q / (w * (one + e * x2))
}

/// The Funk-Finsler metric `F = alpha + beta`.
pub fn f_generic<T: Scalar>(eps: f64, r: f64, x: [T; 2], xi: [T; 2]) -> T {
    alpha_generic(r, x, xi) + beta_generic(eps, r, x, xi)
}

/// The potential of the closed 1-form:
/// `f(x) = 1/2 log((1 + eps|x|^2) / (r^2 - |x|^2))`, with `beta = df`.
pub fn beta_potential_generic<T: Scalar>(eps: f64, r: f64, x: [T; 2]) -> T {
    let x2 = x[0] * x[0] + x[1] * x[1];
    let num = T::one() + T::from_f64(eps) * x2;
    let den = T::from_f64(r * r) - x2;
    (num / den).ln() / T::from_f64(2.0)
}

/// Coefficients `b_i(x)` of the 1-form, generic for covariant differentiation.
pub fn b_form_generic<T: Scalar>(eps: f64, r: f64, x: [T; 2]) -> [T; 2] {
    let r2 = T::from_f64(r * r);
    let e = T::from_f64(eps);
    let one = T::one();
    let x2 = x[0] * x[0] + x[1] * x[1];
    let c = (one + e * r2) / ((r2 - x2) * (one + e * x2));
    [c * x[0], c * x[1]]
}

pub fn eval_alpha(chart: &DiscChart, s: &TangentSample) -> Result<f64> {
    s.validate(chart)?;
    Ok(alpha_generic(chart.r(), s.base.to_array(), s.dir.to_array()))
}

pub fn eval_beta(chart: &DiscChart, s: &TangentSample) -> Result<f64> {
    s.validate(chart)?;
    Ok(beta_generic(
        chart.eps_f(),
        chart.r(),
        s.base.to_array(),
        s.dir.to_array(),
    ))
}

pub fn eval_f(chart: &DiscChart, s: &TangentSample) -> Result<f64> {
    s.validate(chart)?;
    Ok(f_generic(
        chart.eps_f(),
        chart.r(),
        s.base.to_array(),
        s.dir.to_array(),
    ))
}

/// `||beta||_alpha^2 = |x|^2 (1+eps r^2)^2 / (r^2 (1+eps|x|^2)^2)`.
pub fn beta_norm_sq(chart: &DiscChart, x: Point2) -> Result<f64> {
    chart.require_interior(x)?;
    let (e, r2, x2) = (chart.eps_f(), chart.r() * chart.r(), x.norm_sq());
    let num = x2 * (1.0 + e * r2) * (1.0 + e * r2);
    let den = r2 * (1.0 + e * x2) * (1.0 + e * x2);
    Ok(num / den)
}

/// The Klein-type Riemannian tensor `a_ij`.
pub fn a_matrix(chart: &DiscChart, x: Point2) -> Result<Mat2> {
    chart.require_interior(x)?;
    let w = chart.r() * chart.r() - x.norm_sq();
    let s = 1.0 / (w * w);
    Ok(Mat2([
        [s * (w + x.x1 * x.x1), s * x.x1 * x.x2],
        [s * x.x1 * x.x2, s * (w + x.x2 * x.x2)],
    ]))
}

/// The closed-form inverse `a^ij`.
pub fn a_inv_matrix(chart: &DiscChart, x: Point2) -> Result<Mat2> {
    chart.require_interior(x)?;
    let r2 = chart.r() * chart.r();
    let w = r2 - x.norm_sq();
    let s = w / r2;
    Ok(Mat2([
        [s * (w + x.x2 * x.x2), -s * x.x1 * x.x2],
        [-s * x.x1 * x.x2, s * (w + x.x1 * x.x1)],
    ]))
}

pub fn b_form(chart: &DiscChart, x: Point2) -> Result<[f64; 2]> {
    chart.require_interior(x)?;
    Ok(b_form_generic(chart.eps_f(), chart.r(), x.to_array()))
}

/// Which computation produced a fundamental tensor value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GTensorPath {
    /// The standard Randers closed form
    /// `g_ij = (F/alpha)(a_ij - alpha_i alpha_j) + F_i F_j`.
    ClosedForm,
    /// Dual-number Hessian of `F^2 / 2` in `xi` (the canonical path).
    DualHessian,
}

/// `g_ij(x, xi)` with the path that produced it.
pub fn fundamental_tensor(
    chart: &DiscChart,
    s: &TangentSample,
    path: GTensorPath,
) -> Result<(Mat2, GTensorPath)> {
    s.validate(chart)?;
    let g = match path {
        GTensorPath::ClosedForm => g_closed_form(chart, s)?,
        GTensorPath::DualHessian => g_dual_hessian(chart, s),
    };
    let min_eig = g.sym_eigenvalues()[0];
    if min_eig <= 0.0 {
        return Err(FunkError::ConvexityViolation {
            min_eigenvalue: min_eig,
        });
    }
    Ok((g, path))
}

fn g_closed_form(chart: &DiscChart, s: &TangentSample) -> Result<Mat2> {
    let a = a_matrix(chart, s.base)?;
    let b = b_form(chart, s.base)?;
    let xi = s.dir.to_array();
    let y = a.apply(xi); // y_i = a_ij xi^j
    let alpha = dot(y, xi).sqrt();
    let beta = dot(b, xi);
    let f = alpha + beta;
    let ai = [y[0] / alpha, y[1] / alpha]; // alpha_i = d alpha / d xi^i
    let fi = [ai[0] + b[0], ai[1] + b[1]];
    let mut g = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            g[i][j] = f / alpha * (a.0[i][j] - ai[i] * ai[j]) + fi[i] * fi[j];
        }
    }
    Ok(Mat2(g))
}

fn g_dual_hessian(chart: &DiscChart, s: &TangentSample) -> Mat2 {
    let (eps, r) = (chart.eps_f(), chart.r());
    let x = s.base.to_array();
    let xi = s.dir.to_array();
    let mut g = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let xd: [Dual<Dual<f64>>; 2] = con2(con2(x));
            let xid = seed_two(xi, i, j);
            let f = f_generic(eps, r, xd, xid);
            let f2 = f * f;
            g[i][j] = 0.5 * f2.eps.eps;
        }
    }
    Mat2(g)
}

/// Seed `v[i]` in the inner dual layer and `v[j]` in the outer one.
pub(crate) fn seed_two(v: [f64; 2], i: usize, j: usize) -> [Dual<Dual<f64>>; 2] {
    let inner: [Dual<f64>; 2] = seed2(v, i);
    let mut out = con2(inner);
    out[j] = Dual {
        re: inner[j],
        eps: Dual::con(1.0),
    };
    out
}

/// Busemann-Hausdorff density
/// `sigma_BH = (1 - ||beta||^2)^{3/2} sqrt(r^2 / (r^2 - |x|^2)^3)`.
pub fn bh_density(chart: &DiscChart, x: Point2) -> Result<f64> {
    chart.require_interior(x)?;
    let bn2 = beta_norm_sq(chart, x)?;
    let w = chart.r() * chart.r() - x.norm_sq();
    let det_a = chart.r() * chart.r() / (w * w * w);
    Ok((1.0 - bn2).powf(1.5) * det_a.sqrt())
}

/// Generic BH density for dual-number x-derivatives (the `rho` route).
pub fn bh_density_generic<T: Scalar>(eps: f64, r: f64, x: [T; 2]) -> T {
    let r2 = T::from_f64(r * r);
    let e = T::from_f64(eps);
    let one = T::one();
    let x2 = x[0] * x[0] + x[1] * x[1];
    let w = r2 - x2;
    let t = one + e * r2;
    let u = one + e * x2;
    let bn2 = x2 * t * t / (r2 * u * u);
    let c = one - bn2;
    (c * c * c).sqrt() * (r2 / (w * w * w)).sqrt()
}

/// Distortion `tau = ln(sqrt(det g) / sigma_BH)`.
pub fn distortion(chart: &DiscChart, s: &TangentSample) -> Result<f64> {
    let (g, _) = fundamental_tensor(chart, s, GTensorPath::DualHessian)?;
    let sigma = bh_density(chart, s.base)?;
    Ok((g.det().sqrt() / sigma).ln())
}

/// All pointwise metric data at one tangent sample.
#[derive(Clone, Debug)]
pub struct MetricEval {
    pub f: f64,
    pub alpha: f64,
    pub beta: f64,
    pub a: Mat2,
    pub a_inv: Mat2,
    pub b: [f64; 2],
    pub beta_norm_sq: f64,
    pub g: Mat2,
    pub g_path: GTensorPath,
}

pub fn metric_eval(chart: &DiscChart, s: &TangentSample) -> Result<MetricEval> {
    let alpha = eval_alpha(chart, s)?;
    let beta = eval_beta(chart, s)?;
    let (g, g_path) = fundamental_tensor(chart, s, GTensorPath::DualHessian)?;
    Ok(MetricEval {
        f: alpha + beta,
        alpha,
        beta,
        a: a_matrix(chart, s.base)?,
        a_inv: a_inv_matrix(chart, s.base)?,
        b: b_form(chart, s.base)?,
        beta_norm_sq: beta_norm_sq(chart, s.base)?,
        g,
        g_path,
    })
}
