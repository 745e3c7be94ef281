//! Forward-mode dual numbers, nestable to arbitrary derivative order.
//!
//! `Dual<f64>` carries one first derivative, `Dual<Dual<f64>>` a mixed
//! second derivative, and so on. All metric and spray evaluations in this
//! crate are generic over [`Scalar`] so the same closed-form code yields
//! exact derivatives at any nesting depth.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Arithmetic closure shared by `f64` and nested dual numbers.
pub trait Scalar:
    Copy
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn sqrt(self) -> Self;
    fn ln(self) -> Self;
    /// Real part, stripping all infinitesimal components.
    fn real(self) -> f64;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn real(self) -> f64 {
        self
    }
}

/// A dual number `re + eps * d` with `d^2 = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub eps: T,
}

impl<T: Scalar> Dual<T> {
    /// A constant (zero derivative seed).
    pub fn con(re: T) -> Self {
        Dual {
            re,
            eps: T::zero(),
        }
    }

    /// A variable (unit derivative seed).
    pub fn var(re: T) -> Self {
        Dual { re, eps: T::one() }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual {
            re: self.re + o.re,
            eps: self.eps + o.eps,
        }
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual {
            re: self.re - o.re,
            eps: self.eps - o.eps,
        }
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual {
            re: self.re * o.re,
            eps: self.re * o.eps + self.eps * o.re,
        }
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q = self.re / o.re;
        Dual {
            re: q,
            eps: (self.eps - q * o.eps) / o.re,
        }
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual {
            re: -self.re,
            eps: -self.eps,
        }
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn from_f64(v: f64) -> Self {
        Dual::con(T::from_f64(v))
    }
    fn sqrt(self) -> Self {
        let r = self.re.sqrt();
        Dual {
            re: r,
            eps: self.eps / (r + r),
        }
    }
    fn ln(self) -> Self {
        Dual {
            re: self.re.ln(),
            eps: self.eps / self.re,
        }
    }
    fn real(self) -> f64 {
        self.re.real()
    }
}

/// Lift an `f64` pair into any scalar type as constants.
pub fn lift2<T: Scalar>(v: [f64; 2]) -> [T; 2] {
    [T::from_f64(v[0]), T::from_f64(v[1])]
}

/// Wrap a pair as dual constants.
pub fn con2<T: Scalar>(v: [T; 2]) -> [Dual<T>; 2] {
    [Dual::con(v[0]), Dual::con(v[1])]
}

/// Wrap a pair as duals with component `i` seeded as the variable.
pub fn seed2<T: Scalar>(v: [T; 2], i: usize) -> [Dual<T>; 2] {
    let mut out = con2(v);
    out[i] = Dual::var(v[i]);
    out
}

/// First derivative of a scalar function of one variable.
pub fn derivative<F: Fn(Dual<f64>) -> Dual<f64>>(f: F, at: f64) -> f64 {
    f(Dual::var(at)).eps
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derivative_of_square() {
        // differentiation self-test: d/dt t^2 at t = 1 is 2
        let d = derivative(|t| t * t, 1.0);
        assert!((d - 2.0).abs() < 1e-10);
    }

    #[test]
    fn second_derivative_via_nesting() {
        // d^2/dt^2 of t^3 at t = 2 is 12
        let t: Dual<Dual<f64>> = Dual::var(Dual::var(2.0));
        let y = t * t * t;
        assert!((y.eps.eps - 12.0).abs() < 1e-10);
    }

    #[test]
    fn sqrt_and_ln_chain() {
        // d/dt ln(sqrt(t)) = 1/(2t)
        let d = derivative(|t| t.sqrt().ln(), 3.0);
        assert!((d - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn division_rule() {
        // d/dt (t / (1 + t^2)) at t=1 is (1 - t^2)/(1+t^2)^2 = 0
        let d = derivative(|t| t / (Dual::con(1.0) + t * t), 1.0);
        assert!(d.abs() < 1e-12);
    }
}
