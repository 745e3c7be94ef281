//! Zermelo navigation data: the Riemannian sea metric `h` and wind `W`
//! whose navigation problem reproduces the Funk-Finsler metric, plus the
//! inverse transform back to the Randers pair `(a, b)`.

use crate::error::{FunkError, Result};
use crate::geometry::{DiscChart, Point2};
use crate::mat::Mat2;

/// Navigation data at a point: `F` solves the Zermelo problem for the sea
/// metric `h_ij` under the wind `W^i`, with `c = 1 - ||W||_h^2`.
#[derive(Clone, Copy, Debug)]
pub struct ZermeloData {
    pub h: Mat2,
    pub w: [f64; 2],
    /// `c = (r^2-|x|^2)(1 - eps^2 r^2 |x|^2) / (r^2 (1+eps|x|^2)^2)`.
    pub c: f64,
}

/// Closed-form navigation data of the Funk-Finsler metric.
pub fn to_zermelo(chart: &DiscChart, x: Point2) -> Result<ZermeloData> {
    chart.require_interior(x)?;
    let (e, r2) = (chart.eps_f(), chart.r() * chart.r());
    let x2 = x.norm_sq();
    let u = 1.0 + e * x2;
    let m = 1.0 - e * e * r2 * x2;
    let c = (r2 - x2) * m / (r2 * u * u);

    let xa = x.to_array();
    let s = m / (r2 * u.powi(4));
    let mut h = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            let delta = if i == j { 1.0 } else { 0.0 };
            h[i][j] = s * (delta * u * u - e * xa[i] * xa[j] * (2.0 + e * r2 + e * x2));
        }
    }
    let wc = (1.0 + e * r2) * u / m;
    Ok(ZermeloData {
        h: Mat2(h),
        w: [wc * xa[0], wc * xa[1]],
        c,
    })
}

/// Inverts navigation data back to a Randers pair `(a_ij, b_i)` via
/// `lambda = 1 - ||W||_h^2`, `a = (lambda h + W_flat W_flat^T)/lambda^2`,
/// `b = W_flat / lambda`. Requires `||W||_h < 1`.
///
/// The sign of `b` follows the wind orientation of [`to_zermelo`]
/// (`W = +b^sharp / c`); the opposite orientation would flip it. The round
/// trip with `to_zermelo` is the correctness criterion.
pub fn from_zermelo(data: &ZermeloData) -> Result<(Mat2, [f64; 2])> {
    let w_flat = data.h.apply(data.w);
    let wn2 = w_flat[0] * data.w[0] + w_flat[1] * data.w[1];
    let lambda = 1.0 - wn2;
    if !(lambda > 0.0) {
        return Err(FunkError::WindTooStrong(wn2));
    }
    let mut a = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            a[i][j] = (lambda * data.h.0[i][j] + w_flat[i] * w_flat[j]) / (lambda * lambda);
        }
    }
    Ok((Mat2(a), [w_flat[0] / lambda, w_flat[1] / lambda]))
}
