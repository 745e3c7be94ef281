//! Covariant pipeline and curvatures of the Funk-Finsler metric:
//! Christoffel symbols, covariant derivatives of the 1-form, spray
//! coefficients, S-curvature, Riemann/Ricci/flag curvature, the signed
//! bound gaps, and the Douglas/Berwald classification checks.
//!
//! Every closed form here has an independent numeric counterpart in
//! [`crate::oracle`]; the two are held together by the verification suite.

use crate::dual::{con2, seed2, Scalar};
use crate::error::Result;
use crate::geometry::{DiscChart, Point2, Tangent2, TangentSample};
use crate::mat::{dot, Mat2};
use crate::metric::{
    alpha_generic, b_form_generic, beta_norm_sq, eval_f, f_generic,
};
use crate::sampling::Sampler;

/// Christoffel symbols of the Klein-type metric alpha:
/// `Gamma^k_ij = (x^i delta_kj + x^j delta_ki) / (r^2 - |x|^2)`,
/// indexed `[k][i][j]`; independent of eps.
pub fn christoffel(chart: &DiscChart, x: Point2) -> Result<[[[f64; 2]; 2]; 2]> {
    chart.require_interior(x)?;
    let w = chart.r() * chart.r() - x.norm_sq();
    let xa = x.to_array();
    let mut g = [[[0.0; 2]; 2]; 2];
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let mut v = 0.0;
                if k == j {
                    v += xa[i];
                }
                if k == i {
                    v += xa[j];
                }
                g[k][i][j] = v / w;
            }
        }
    }
    Ok(g)
}

/// Closed-form covariant derivative `b_{i|j}`, generic over the scalar type
/// so that `b_{i|j|k}` can be formed by dual-number differentiation.
pub fn b_cov_generic<T: Scalar>(eps: f64, r: f64, x: [T; 2]) -> [[T; 2]; 2] {
    let r2 = T::from_f64(r * r);
    let e = T::from_f64(eps);
    let one = T::one();
    let two = T::from_f64(2.0);
    let x2 = x[0] * x[0] + x[1] * x[1];
    let u = one + e * x2;
    let c = (one + e * r2) / ((r2 - x2) * u);
    let mut out = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let delta = if i == j { one } else { T::zero() };
            out[i][j] = c * (delta - two * e * x[i] * x[j] / u);
        }
    }
    out
}

/// Covariant data of the 1-form at a base point.
#[derive(Clone, Debug)]
pub struct CovariantData {
    /// Christoffel symbols, `gamma[k][i][j]`.
    pub gamma: [[[f64; 2]; 2]; 2],
    /// Partials `db[i][j] = d b_i / d x^j` (dual numbers).
    pub db: [[f64; 2]; 2],
    /// `b_{i|j}` assembled from `db` and `gamma`.
    pub b_cov: [[f64; 2]; 2],
    /// `b_{i|j}` from the closed form; agrees with `b_cov`.
    pub b_cov_closed: [[f64; 2]; 2],
    /// `b_{i|j|k}`, indexed `[i][j][k]`.
    pub b_cov2: [[[f64; 2]; 2]; 2],
    /// Symmetric part `r_ij`.
    pub r_sym: [[f64; 2]; 2],
    /// Antisymmetric part `s_ij`; vanishes identically for this metric.
    pub s_skew: [[f64; 2]; 2],
    /// `s^i_j = a^{ih} s_hj`.
    pub s_up: [[f64; 2]; 2],
    /// `s_j = b_i s^i_j`.
    pub s_vec: [f64; 2],
    /// `e_ij = r_ij + b_i s_j + b_j s_i`.
    pub e: [[f64; 2]; 2],
    /// `rho = 1/2 log(1 - ||beta||^2)`.
    pub rho: f64,
}

pub fn covariant_b(chart: &DiscChart, x: Point2) -> Result<CovariantData> {
    chart.require_interior(x)?;
    let (eps, r) = (chart.eps_f(), chart.r());
    let xa = x.to_array();
    let gamma = christoffel(chart, x)?;
    let b = b_form_generic::<f64>(eps, r, xa);

    // db[i][j] = d b_i / d x^j by seeding x^j
    let mut db = [[0.0; 2]; 2];
    for j in 0..2 {
        let xd = seed2(xa, j);
        let bd = b_form_generic(eps, r, xd);
        for i in 0..2 {
            db[i][j] = bd[i].eps;
        }
    }

    let mut b_cov = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let mut corr = 0.0;
            for k in 0..2 {
                corr += b[k] * gamma[k][i][j];
            }
            b_cov[i][j] = db[i][j] - corr;
        }
    }
    let b_cov_closed = b_cov_generic::<f64>(eps, r, xa);

    // b_{i|j|k} = d b_{i|j} / d x^k - b_{i|m} Gamma^m_jk - b_{j|m} Gamma^m_ik
    let mut b_cov2 = [[[0.0; 2]; 2]; 2];
    for k in 0..2 {
        let xd = seed2(xa, k);
        let bc = b_cov_generic(eps, r, xd);
        for i in 0..2 {
            for j in 0..2 {
                let mut corr = 0.0;
                for m in 0..2 {
                    corr += b_cov_closed[i][m] * gamma[m][j][k];
                    corr += b_cov_closed[j][m] * gamma[m][i][k];
                }
                b_cov2[i][j][k] = bc[i][j].eps - corr;
            }
        }
    }

    let mut r_sym = [[0.0; 2]; 2];
    let mut s_skew = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r_sym[i][j] = 0.5 * (b_cov[i][j] + b_cov[j][i]);
            s_skew[i][j] = 0.5 * (b_cov[i][j] - b_cov[j][i]);
        }
    }
    let a_inv = crate::metric::a_inv_matrix(chart, x)?;
    let mut s_up = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            s_up[i][j] = a_inv.0[i][0] * s_skew[0][j] + a_inv.0[i][1] * s_skew[1][j];
        }
    }
    let s_vec = [
        b[0] * s_up[0][0] + b[1] * s_up[1][0],
        b[0] * s_up[0][1] + b[1] * s_up[1][1],
    ];
    let mut e = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            e[i][j] = r_sym[i][j] + b[i] * s_vec[j] + b[j] * s_vec[i];
        }
    }
    let rho = 0.5 * (1.0 - beta_norm_sq(chart, x)?).ln();

    Ok(CovariantData {
        gamma,
        db,
        b_cov,
        b_cov_closed,
        b_cov2,
        r_sym,
        s_skew,
        s_up,
        s_vec,
        e,
        rho,
    })
}

/// `rho_0 = rho_{x^i} xi^i` in closed form:
/// `-(1+eps r^2)^2 (1-eps|x|^2) <x,xi> / ((r^2-|x|^2)(1-eps^2 r^2|x|^2)(1+eps|x|^2))`.
pub fn rho_0(chart: &DiscChart, s: &TangentSample) -> Result<f64> {
    s.validate(chart)?;
    let (e, r2) = (chart.eps_f(), chart.r() * chart.r());
    let x2 = s.base.norm_sq();
    let q = dot(s.base.to_array(), s.dir.to_array());
    let t = 1.0 + e * r2;
    Ok(-t * t * (1.0 - e * x2) * q / ((r2 - x2) * (1.0 - e * e * r2 * x2) * (1.0 + e * x2)))
}

/// Closed-form spray coefficients, generic so the oracle can differentiate
/// them. `G^i = pref * xi^i` makes projective flatness explicit.
pub fn spray_generic_closed<T: Scalar>(eps: f64, r: f64, x: [T; 2], xi: [T; 2]) -> [T; 2] {
    let r2 = T::from_f64(r * r);
    let e = T::from_f64(eps);
    let one = T::one();
    let two = T::from_f64(2.0);
    let x2 = x[0] * x[0] + x[1] * x[1];
    let xin = xi[0] * xi[0] + xi[1] * xi[1];
    let q = x[0] * xi[0] + x[1] * xi[1];
    let w = r2 - x2;
    let u = one + e * x2;
    let f = f_generic(eps, r, x, xi);
    let pref = (q + (one + e * r2) * (u * xin - two * e * q * q) / (two * f * u * u)) / w;
    [xi[0] * pref, xi[1] * pref]
}

/// Spray coefficients `G^i` at a sample.
pub fn spray(chart: &DiscChart, s: &TangentSample) -> Result<[f64; 2]> {
    s.validate(chart)?;
    Ok(spray_generic_closed(
        chart.eps_f(),
        chart.r(),
        s.base.to_array(),
        s.dir.to_array(),
    ))
}

/// S-curvature, closed form (with the eps factor on the `<x,xi>^2` term;
/// dropping it breaks agreement with the oracle at eps = -1).
pub fn s_curvature(chart: &DiscChart, s: &TangentSample) -> Result<f64> {
    s.validate(chart)?;
    let (e, r2) = (chart.eps_f(), chart.r() * chart.r());
    let x2 = s.base.norm_sq();
    let xin = s.dir.norm_sq();
    let q = dot(s.base.to_array(), s.dir.to_array());
    let w = r2 - x2;
    let u = 1.0 + e * x2;
    let t = 1.0 + e * r2;
    let f = eval_f(chart, s)?;
    let first = 3.0 * t * (u * xin - 2.0 * e * q * q) / (2.0 * f * w * u * u);
    let second = 3.0 * q * t * t * (1.0 - e * x2) / (w * (1.0 - e * e * r2 * x2) * u);
    Ok(first + second)
}

/// S-curvature through the general Randers pipeline
/// `S = (n+1)[e_00/(2F) - (s_0 + rho_0)]` with n = 2.
pub fn s_curvature_randers(chart: &DiscChart, s: &TangentSample) -> Result<f64> {
    let cov = covariant_b(chart, s.base)?;
    let xi = s.dir.to_array();
    let mut e00 = 0.0;
    let mut s0 = 0.0;
    for i in 0..2 {
        s0 += cov.s_vec[i] * xi[i];
        for j in 0..2 {
            e00 += cov.e[i][j] * xi[i] * xi[j];
        }
    }
    let f = eval_f(chart, s)?;
    Ok(3.0 * (e00 / (2.0 * f) - (s0 + rho_0(chart, s)?)))
}

/// Riemann curvature and the scalars entering it.
#[derive(Clone, Debug)]
pub struct RiemannData {
    /// `R^i_k`, row index i (up), column index k (down).
    pub r: Mat2,
    /// `phi = b_{i|j} xi^i xi^j`.
    pub phi: f64,
    /// `psi = b_{i|j|k} xi^i xi^j xi^k` (covariant pipeline).
    pub psi: f64,
    /// `tau_k = (b_{i|j|k} - b_{i|k|j}) xi^i xi^j / F`.
    pub tau: [f64; 2],
    /// `Ric = R^i_i`.
    pub ric: f64,
    /// Flag curvature `K = Ric / F^2`.
    pub k: f64,
}

pub fn riemann(chart: &DiscChart, s: &TangentSample) -> Result<RiemannData> {
    s.validate(chart)?;
    let (eps, r) = (chart.eps_f(), chart.r());
    let x = s.base.to_array();
    let xi = s.dir.to_array();
    let cov = covariant_b(chart, s.base)?;
    let f = eval_f(chart, s)?;
    let alpha = alpha_generic::<f64>(r, x, xi);

    let mut phi = 0.0;
    let mut psi = 0.0;
    let mut tau = [0.0; 2];
    for i in 0..2 {
        for j in 0..2 {
            phi += cov.b_cov[i][j] * xi[i] * xi[j];
            for k in 0..2 {
                psi += cov.b_cov2[i][j][k] * xi[i] * xi[j] * xi[k];
                tau[k] += (cov.b_cov2[i][j][k] - cov.b_cov2[i][k][j]) * xi[i] * xi[j] / f;
            }
        }
    }

    // alpha_k and F_{xi^k} by dual numbers
    let mut alpha_k = [0.0; 2];
    let mut f_k = [0.0; 2];
    for k in 0..2 {
        let xid = seed2(xi, k);
        let xd = con2(x);
        alpha_k[k] = alpha_generic(r, xd, xid).eps;
        f_k[k] = f_generic(eps, r, xd, xid).eps;
    }

    let bracket = 3.0 * (phi / (2.0 * f)).powi(2) - psi / (2.0 * f);
    let mut rm = [[0.0; 2]; 2];
    for i in 0..2 {
        for k in 0..2 {
            let delta = if i == k { 1.0 } else { 0.0 };
            rm[i][k] = -(delta * alpha * alpha - alpha * alpha_k[k] * xi[i])
                + bracket * (delta - f_k[k] / f * xi[i])
                + tau[k] * xi[i];
        }
    }
    let rmat = Mat2(rm);
    let ric = rmat.trace();
    Ok(RiemannData {
        r: rmat,
        phi,
        psi,
        tau,
        ric,
        k: ric / (f * f),
    })
}

/// Two candidate closed forms of `psi` (they differ in one factor); returned as
/// `(with_eps, without_eps)` for the verification report. The covariant
/// pipeline in [`riemann`] is the ground truth and matches the first.
pub fn psi_variants(chart: &DiscChart, s: &TangentSample) -> Result<(f64, f64)> {
    s.validate(chart)?;
    let (e, r2) = (chart.eps_f(), chart.r() * chart.r());
    let x2 = s.base.norm_sq();
    let xin = s.dir.norm_sq();
    let q = dot(s.base.to_array(), s.dir.to_array());
    let w = r2 - x2;
    let u = 1.0 + e * x2;
    let pref = -2.0 * (1.0 + e * r2) * q / (u * u * u * w * w);
    let tail = 2.0 * e * q * q * (1.0 - e * x2 + 2.0 * e * r2);
    let with_eps = pref * (u * xin * (3.0 * e * r2 - 2.0 * e * x2 + 1.0) - tail);
    let without_eps = pref * ((1.0 + x2) * xin * (3.0 * e * r2 - 2.0 * e * x2 + 1.0) - tail);
    Ok((with_eps, without_eps))
}

pub fn flag_curvature(chart: &DiscChart, s: &TangentSample) -> Result<f64> {
    Ok(riemann(chart, s)?.k)
}

/// The signed bound gaps through two routes each.
#[derive(Clone, Copy, Debug)]
pub struct BoundGaps {
    /// `S - (3/2) F` by subtraction of the primary operations.
    pub s_gap: f64,
    /// `K + 1/4` by subtraction.
    pub k_gap: f64,
    /// `S - (3/2) F` from the simplified signed expression.
    pub s_gap_direct: f64,
    /// `K + 1/4` from the simplified signed expression.
    pub k_gap_direct: f64,
}

pub fn bound_gaps(chart: &DiscChart, s: &TangentSample) -> Result<BoundGaps> {
    let f = eval_f(chart, s)?;
    let s_gap = s_curvature(chart, s)? - 1.5 * f;
    let k_gap = flag_curvature(chart, s)? + 0.25;

    let (e, r2) = (chart.eps_f(), chart.r() * chart.r());
    let x2 = s.base.norm_sq();
    let xin = s.dir.norm_sq();
    let q = dot(s.base.to_array(), s.dir.to_array());
    let w = r2 - x2;
    let u = 1.0 + e * x2;
    let t = 1.0 + e * r2;
    let root_q = (w * xin + q * q).sqrt();
    let d = u * root_q + t * q; // = (r^2-|x|^2)(1+eps|x|^2) F
    let s_gap_direct =
        1.5 * e * (d * d + e * w * t * u * (q * q - x2 * xin)) / (u * (1.0 - e * e * r2 * x2) * d);
    let k_gap_direct = 3.0 * e * w * w * (xin + e * (x2 * xin - q * q)) / (4.0 * d.powi(4))
        * (t * u * (root_q + q).powi(2) + d * d);
    Ok(BoundGaps {
        s_gap,
        k_gap,
        s_gap_direct,
        k_gap_direct,
    })
}

/// Grid-based classification of the metric.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Classification {
    pub douglas: bool,
    pub berwald: bool,
    pub projectively_flat: bool,
    /// Largest `|s_ij|` seen over the grid (Douglas witness).
    pub max_s_skew: f64,
    /// `|b_{1|1}|` at the origin, `(1+eps r^2)/r^2` (non-Berwald witness).
    pub berwald_witness: f64,
    /// Largest `|G^1 xi^2 - G^2 xi^1|` over the grid.
    pub max_spray_cross: f64,
}

/// Seed for the random half of the classification grid; fixed so the
/// classification is deterministic.
const CLASSIFY_SEED: u64 = 42;

pub fn classify(chart: &DiscChart) -> Classification {
    let mut max_s_skew = 0.0f64;
    let mut max_spray_cross = 0.0f64;
    let mut visit = |x: Point2, dirs: &[Tangent2]| {
        if let Ok(cov) = covariant_b(chart, x) {
            for i in 0..2 {
                for j in 0..2 {
                    max_s_skew = max_s_skew.max(cov.s_skew[i][j].abs());
                }
            }
        }
        for &d in dirs {
            let sm = TangentSample::new(x, d);
            if let Ok(g) = spray(chart, &sm) {
                max_spray_cross = max_spray_cross.max((g[0] * d.xi2 - g[1] * d.xi1).abs());
            }
        }
    };

    // 32 x 32 polar grid up to 0.95 r, 16 directions
    let n_dirs = 16;
    let dirs: Vec<Tangent2> = (0..n_dirs)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n_dirs as f64;
            Tangent2::new(th.cos(), th.sin())
        })
        .collect();
    for i in 0..32 {
        let rad = 0.95 * chart.r() * (i as f64 + 0.5) / 32.0;
        for j in 0..32 {
            let th = 2.0 * std::f64::consts::PI * j as f64 / 32.0;
            visit(Point2::new(rad * th.cos(), rad * th.sin()), &dirs);
        }
    }
    // plus 1000 random samples with a fixed seed
    let mut sampler = Sampler::new(CLASSIFY_SEED);
    for _ in 0..1000 {
        let s = sampler.tangent_sample(chart);
        visit(s.base, &[s.dir]);
    }

    let berwald_witness = (1.0 + chart.eps_f() * chart.r() * chart.r()) / (chart.r() * chart.r());
    Classification {
        douglas: max_s_skew <= 1e-10,
        berwald: berwald_witness.abs() <= 0.1,
        projectively_flat: max_spray_cross <= 1e-10,
        max_s_skew,
        berwald_witness,
        max_spray_cross,
    }
}

/// All curvature data at one sample, for serialization.
#[derive(Clone, Debug)]
pub struct CurvatureReport {
    pub spray: [f64; 2],
    pub s: f64,
    pub r: Mat2,
    pub ric: f64,
    pub k: f64,
    pub phi: f64,
    pub psi: f64,
    pub tau: [f64; 2],
    pub s_gap: f64,
    pub k_gap: f64,
}

pub fn curvature_report(chart: &DiscChart, s: &TangentSample) -> Result<CurvatureReport> {
    let rie = riemann(chart, s)?;
    let gaps = bound_gaps(chart, s)?;
    Ok(CurvatureReport {
        spray: spray(chart, s)?,
        s: s_curvature(chart, s)?,
        r: rie.r,
        ric: rie.ric,
        k: rie.k,
        phi: rie.phi,
        psi: rie.psi,
        tau: rie.tau,
        s_gap: gaps.s_gap,
        k_gap: gaps.k_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(x: [f64; 2], xi: [f64; 2]) -> TangentSample {
        TangentSample::new(Point2::from(x), Tangent2::from(xi))
    }

    #[test]
    fn christoffel_examples() {
        let c = DiscChart::new(0, 1.0).unwrap();
        let g = christoffel(&c, Point2::new(0.0, 0.0)).unwrap();
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(g[k][i][j], 0.0);
                }
            }
        }
        let g = christoffel(&c, Point2::new(0.5, 0.0)).unwrap();
        assert!((g[0][0][0] - 4.0 / 3.0).abs() < 1e-12); // Gamma^1_11
        assert_eq!(g[0][1][1], 0.0); // Gamma^1_22
        assert!((g[1][0][1] - 2.0 / 3.0).abs() < 1e-12); // Gamma^2_12
    }

    #[test]
    fn covariant_b_at_origin() {
        for (eps, r) in [(0, 1.0), (1, 0.8), (-1, 0.6)] {
            let c = DiscChart::new(eps, r).unwrap();
            let cov = covariant_b(&c, Point2::new(0.0, 0.0)).unwrap();
            let expect = (1.0 + eps as f64 * r * r) / (r * r);
            for i in 0..2 {
                for j in 0..2 {
                    let want = if i == j { expect } else { 0.0 };
                    assert!((cov.b_cov[i][j] - want).abs() < 1e-12);
                }
            }
            let s = sample([0.0, 0.0], [0.3, 0.7]);
            assert_eq!(rho_0(&c, &s).unwrap(), 0.0);
        }
    }

    #[test]
    fn covariant_pipeline_matches_closed_form() {
        for eps in [-1, 0, 1] {
            let c = DiscChart::new(eps, 0.9).unwrap();
            let cov = covariant_b(&c, Point2::new(0.3, -0.2)).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert!(
                        (cov.b_cov[i][j] - cov.b_cov_closed[i][j]).abs() < 1e-10,
                        "eps = {eps}"
                    );
                    // db symmetric in (i, j)
                    assert!((cov.db[i][j] - cov.db[j][i]).abs() < 1e-10);
                    // s_ij vanishes
                    assert!(cov.s_skew[i][j].abs() < 1e-12);
                    // e_ij = r_ij since s_j = 0
                    assert!((cov.e[i][j] - cov.r_sym[i][j]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn rho_zero_matches_dual_derivative_of_rho() {
        use crate::dual::seed2;
        for eps in [-1, 0, 1] {
            let c = DiscChart::new(eps, 0.85).unwrap();
            let s = sample([0.31, -0.17], [0.6, 0.4]);
            let expect = rho_0(&c, &s).unwrap();
            let mut got = 0.0;
            for m in 0..2 {
                let xd = seed2(s.base.to_array(), m);
                let bn2 = {
                    let r2 = c.r() * c.r();
                    let e = c.eps_f();
                    let x2 = xd[0] * xd[0] + xd[1] * xd[1];
                    let t = crate::dual::Dual::con(1.0 + e * r2);
                    let u = crate::dual::Dual::con(1.0) + crate::dual::Dual::con(e) * x2;
                    x2 * t * t / (crate::dual::Dual::con(r2) * u * u)
                };
                let rho = ((crate::dual::Dual::con(1.0) - bn2).ln()
                    * crate::dual::Dual::con(0.5))
                .eps;
                got += rho * s.dir.to_array()[m];
            }
            assert!((got - expect).abs() < 1e-10, "eps = {eps}");
        }
    }

    #[test]
    fn spray_examples() {
        // eps = 0: G^i = F xi^i / 2 (classical Funk identity)
        let c = DiscChart::new(0, 1.0).unwrap();
        let s = sample([0.3, -0.2], [0.8, 0.5]);
        let g = spray(&c, &s).unwrap();
        let f = eval_f(&c, &s).unwrap();
        assert!((g[0] - 0.5 * f * 0.8).abs() < 1e-12);
        assert!((g[1] - 0.5 * f * 0.5).abs() < 1e-12);
        // origin example
        let g = spray(&c, &sample([0.0, 0.0], [1.0, 0.0])).unwrap();
        assert!((g[0] - 0.5).abs() < 1e-14 && g[1].abs() < 1e-14);
    }

    #[test]
    fn s_curvature_examples() {
        let c = DiscChart::new(0, 1.0).unwrap();
        let s = sample([0.5, 0.0], [1.0, 0.0]);
        assert!((s_curvature(&c, &s).unwrap() - 3.0).abs() < 1e-12);
        // at the origin: S = 3 (1 + eps r^2)|xi| / (2 r)
        for (eps, r) in [(1, 1.0), (-1, 0.7), (0, 2.0)] {
            let c = DiscChart::new(eps, r).unwrap();
            let s = sample([0.0, 0.0], [0.0, 2.0]);
            let expect = 3.0 * (1.0 + eps as f64 * r * r) * 2.0 / (2.0 * r);
            assert!((s_curvature(&c, &s).unwrap() - expect).abs() < 1e-12);
        }
        // hyperbolic case sits strictly below (3/2) F
        let c = DiscChart::new(-1, 0.5).unwrap();
        let s = sample([0.25, 0.0], [1.0, 0.0]);
        let f = eval_f(&c, &s).unwrap();
        assert!((f - 56.0 / 15.0).abs() < 1e-12);
        assert!(s_curvature(&c, &s).unwrap() < 1.5 * f);
    }

    #[test]
    fn s_curvature_routes_agree() {
        for eps in [-1, 0, 1] {
            let c = DiscChart::new(eps, 0.9).unwrap();
            let s = sample([0.3, 0.1], [0.2, 0.7]);
            let a = s_curvature(&c, &s).unwrap();
            let b = s_curvature_randers(&c, &s).unwrap();
            assert!((a - b).abs() <= 1e-10 * a.abs().max(1.0), "eps = {eps}");
        }
    }

    #[test]
    fn riemann_at_origin() {
        let c = DiscChart::new(1, 1.0).unwrap();
        let s = sample([0.0, 0.0], [0.4, 0.3]);
        let rie = riemann(&c, &s).unwrap();
        assert!(rie.psi.abs() < 1e-12);
        assert!(rie.tau[0].abs() < 1e-12 && rie.tau[1].abs() < 1e-12);
        let expect_phi = (1.0 + 1.0) * s.dir.norm_sq();
        assert!((rie.phi - expect_phi).abs() < 1e-12);
    }

    #[test]
    fn euclidean_flag_curvature_constant() {
        let c = DiscChart::new(0, 1.0).unwrap();
        for s in [
            sample([0.0, 0.0], [1.0, 0.0]),
            sample([0.5, 0.0], [1.0, 0.0]),
            sample([0.3, -0.4], [-0.2, 0.9]),
            sample([-0.7, 0.1], [0.5, 0.5]),
        ] {
            let k = flag_curvature(&c, &s).unwrap();
            assert!((k + 0.25).abs() < 1e-10, "K = {k}");
        }
    }

    #[test]
    fn flag_curvature_sign_examples() {
        let c = DiscChart::new(-1, 1.0).unwrap();
        let k = flag_curvature(&c, &sample([0.5, 0.0], [0.0, 1.0])).unwrap();
        assert!(k < -0.25);
        let c = DiscChart::new(1, 1.0).unwrap();
        let k = flag_curvature(&c, &sample([0.5, 0.0], [0.0, 1.0])).unwrap();
        assert!(k > -0.25);
    }

    #[test]
    fn trace_identity() {
        for eps in [-1, 0, 1] {
            let c = DiscChart::new(eps, 0.9).unwrap();
            let s = sample([0.3, 0.1], [0.2, 0.7]);
            let rie = riemann(&c, &s).unwrap();
            let f = eval_f(&c, &s).unwrap();
            assert!((rie.ric - (rie.r.0[0][0] + rie.r.0[1][1])).abs() < 1e-12);
            assert!((rie.k * f * f - rie.ric).abs() < 1e-10);
            // tau_k xi^k = 0
            let t = rie.tau[0] * s.dir.xi1 + rie.tau[1] * s.dir.xi2;
            assert!(t.abs() < 1e-10);
        }
    }

    #[test]
    fn psi_matches_eps_variant() {
        for eps in [-1, 1] {
            let c = DiscChart::new(eps, 0.9).unwrap();
            let s = sample([0.3, 0.1], [0.2, 0.7]);
            let rie = riemann(&c, &s).unwrap();
            let (with_eps, without_eps) = psi_variants(&c, &s).unwrap();
            assert!((rie.psi - with_eps).abs() < 1e-10, "eps = {eps}");
            // the two variants coincide when eps = 1; they split at eps = -1
            if eps == -1 {
                assert!((rie.psi - without_eps).abs() > 1e-3);
            }
        }
    }

    #[test]
    fn bound_gap_routes_and_signs() {
        for eps in [-1, 0, 1] {
            let c = DiscChart::new(eps, 0.9).unwrap();
            for s in [
                sample([0.3, 0.1], [0.2, 0.7]),
                sample([-0.5, 0.2], [1.0, -0.3]),
                sample([0.0, 0.0], [1.0, 1.0]),
            ] {
                let g = bound_gaps(&c, &s).unwrap();
                let scale_s = g.s_gap.abs().max(1.0);
                let scale_k = g.k_gap.abs().max(1.0);
                assert!(
                    (g.s_gap - g.s_gap_direct).abs() <= 1e-8 * scale_s,
                    "eps={eps} s_gap {} vs {}",
                    g.s_gap,
                    g.s_gap_direct
                );
                assert!(
                    (g.k_gap - g.k_gap_direct).abs() <= 1e-8 * scale_k,
                    "eps={eps} k_gap {} vs {}",
                    g.k_gap,
                    g.k_gap_direct
                );
                match eps {
                    0 => {
                        assert!(g.s_gap.abs() < 1e-10 && g.k_gap.abs() < 1e-10);
                    }
                    1 => {
                        assert!(g.s_gap > 0.0 && g.k_gap > 0.0);
                    }
                    _ => {
                        assert!(g.s_gap < 0.0 && g.k_gap < 0.0);
                    }
                }
            }
        }
    }

    #[test]
    fn classification_all_eps() {
        for (eps, r) in [(0, 1.0), (-1, 0.5), (1, 1.0)] {
            let c = DiscChart::new(eps, r).unwrap();
            let cl = classify(&c);
            assert!(cl.douglas, "eps = {eps}");
            assert!(!cl.berwald, "eps = {eps}");
            assert!(cl.projectively_flat, "eps = {eps}");
            assert!(cl.berwald_witness.abs() > 0.1);
        }
    }

    #[test]
    fn homogeneity_grades() {
        for eps in [-1, 0, 1] {
            let c = DiscChart::new(eps, 0.9).unwrap();
            let x = [0.25, -0.15];
            let xi = [0.4, 0.9];
            for scale in [0.5, 3.0] {
                let s1 = sample(x, xi);
                let s2 = sample(x, [xi[0] * scale, xi[1] * scale]);
                let g1 = spray(&c, &s1).unwrap();
                let g2 = spray(&c, &s2).unwrap();
                for i in 0..2 {
                    assert!((g2[i] - scale * scale * g1[i]).abs() <= 1e-9 * g2[i].abs().max(1.0));
                }
                let sc1 = s_curvature(&c, &s1).unwrap();
                let sc2 = s_curvature(&c, &s2).unwrap();
                assert!((sc2 - scale * sc1).abs() <= 1e-9 * sc2.abs().max(1.0));
                let k1 = flag_curvature(&c, &s1).unwrap();
                let k2 = flag_curvature(&c, &s2).unwrap();
                assert!((k1 - k2).abs() <= 1e-9 * k1.abs().max(1.0));
            }
        }
    }
}
