//! Exact values that are either rational numbers or polynomials in the
//! non-Hermiticity parameter.
//!
//! Arithmetic promotes to the polynomial form as needed and demotes constant
//! polynomials back to rationals, so equality and printing are canonical.

use super::rational::Rational;
use super::taupoly::TauPoly;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(Rational),
    Poly(TauPoly),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rational::one())
    }

    /// The formal parameter `t`.
    pub fn tau() -> Self {
        Scalar::Poly(TauPoly::var())
    }

    /// Canonicalise: constant polynomials collapse to `Rat`.
    pub fn from_poly(p: TauPoly) -> Self {
        if p.is_constant() {
            Scalar::Rat(p.coeff(0))
        } else {
            Scalar::Poly(p)
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Poly(_) => None,
        }
    }

    /// View as a polynomial (constants embed).
    pub fn to_poly(&self) -> TauPoly {
        match self {
            Scalar::Rat(r) => TauPoly::constant(r.clone()),
            Scalar::Poly(p) => p.clone(),
        }
    }

    /// Substitute `t := x`; rationals are unaffected.
    pub fn eval_tau(&self, x: &Rational) -> Rational {
        match self {
            Scalar::Rat(r) => r.clone(),
            Scalar::Poly(p) => p.eval(x),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r.pow(e as i64)),
            Scalar::Poly(p) => Scalar::from_poly(p.pow(e)),
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(r * c),
            Scalar::Poly(p) => Scalar::from_poly(p.scale(c)),
        }
    }

    /// Division by a nonzero rational.
    pub fn div_rat(&self, c: &Rational) -> Scalar {
        self.scale(&c.recip())
    }

    /// Exact division. For polynomial divisors the remainder must vanish;
    /// a nonzero remainder means a formula was implemented wrongly, so this
    /// fails hard rather than rounding.
    pub fn div_exact(&self, den: &Scalar) -> Scalar {
        match den {
            Scalar::Rat(r) => self.div_rat(r),
            Scalar::Poly(d) => {
                let q = self
                    .to_poly()
                    .div_exact(d)
                    .unwrap_or_else(|| panic!("inexact polynomial division: ({self}) / ({den})"));
                Scalar::from_poly(q)
            }
        }
    }

    /// `f64` rendering. Polynomials need a numeric value for `t`.
    pub fn to_f64(&self, tau: Option<f64>) -> Option<f64> {
        match self {
            Scalar::Rat(r) => Some(r.to_f64()),
            Scalar::Poly(p) => {
                let t = tau?;
                let mut acc = 0.0;
                for c in p.coeffs().iter().rev() {
                    acc = acc * t + c.to_f64();
                }
                Some(acc)
            }
        }
    }

    /// Parse the `Display` format: a rational or a polynomial in `t`.
    pub fn parse(s: &str) -> Result<Scalar, String> {
        if let Ok(r) = Rational::from_str(s) {
            return Ok(Scalar::Rat(r));
        }
        TauPoly::from_str(s)
            .map(Scalar::from_poly)
            .map_err(|e| e.to_string())
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rat(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::Rat(Rational::from(n))
    }
}

impl From<TauPoly> for Scalar {
    fn from(p: TauPoly) -> Self {
        Scalar::from_poly(p)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a.$method(b)),
                    _ => Scalar::from_poly((&self.to_poly()).$method(&rhs.to_poly())),
                }
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Poly(p) => Scalar::Poly(-p),
        }
    }
}
impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}
impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = &*self + &rhs;
    }
}
impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}
impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = &*self - &rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_arithmetic_demotes_constants() {
        let t = Scalar::tau();
        let two = Scalar::from(2i64);
        let sum = &t + &two;
        assert!(matches!(sum, Scalar::Poly(_)));
        // t*t - t^2 collapses to a rational zero
        let diff = &(&t * &t) - &t.pow(2);
        assert!(matches!(diff, Scalar::Rat(_)));
        assert!(diff.is_zero());
        assert_eq!(&t - &t, Scalar::zero());
    }

    #[test]
    fn substitution_is_a_homomorphism() {
        let t = Scalar::tau();
        let f = &(&t * &t) + &Scalar::from(3i64);
        let g = &t - &Scalar::from(1i64);
        let x = Rational::new(2, 5);
        assert_eq!(
            (&f * &g).eval_tau(&x),
            f.eval_tau(&x) * g.eval_tau(&x)
        );
    }

    #[test]
    fn exact_division() {
        let t = Scalar::tau();
        let one = Scalar::one();
        // (1 - t^4)/(1 - t^2) = 1 + t^2
        let num = &one - &t.pow(4);
        let den = &one - &t.pow(2);
        assert_eq!(num.div_exact(&den), &one + &t.pow(2));
        assert_eq!(Scalar::zero().div_exact(&den), Scalar::zero());
    }

    #[test]
    #[should_panic]
    fn inexact_division_panics() {
        let t = Scalar::tau();
        let den = &Scalar::one() - &t.pow(2);
        (&Scalar::one() + &t).div_exact(&den);
    }

    #[test]
    fn parse_both_forms() {
        assert_eq!(Scalar::parse("27/4").unwrap(), Scalar::Rat(Rational::new(27, 4)));
        let p = Scalar::parse("1 + 3*t^2").unwrap();
        assert_eq!(p.eval_tau(&Rational::from(2i64)), Rational::from(13i64));
    }
}
