//! The three planar weight families, their recurrence coefficients and
//! orthogonal-norm ratios.
//!
//! Absolute norms carry square-root prefactors and are therefore float-only
//! (see `oracle`); everything here works with exact norm *ratios*, in which
//! those prefactors cancel.

use crate::exact::comb::{factorial_ratio, pochhammer};
use crate::exact::{Rational, Scalar};
use std::fmt;

/// Parameter validation error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamError(pub String);

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl std::error::Error for ParamError {}

/// A planar weight family with its parameters.
///
/// The non-Hermiticity parameter may be a rational in `[0, 1]` (the value 1
/// only makes sense inside exact formulas, as the Hermitian limit) or, for
/// the Hermite and Laguerre families, the formal variable `t`.
#[derive(Clone, PartialEq, Eq)]
pub enum WeightFamily {
    Hermite { tau: Scalar },
    Laguerre { tau: Scalar, nu: Rational },
    Gegenbauer { tau: Rational, a: Rational },
}

fn validate_tau(tau: &Scalar, allow_symbolic: bool) -> Result<(), ParamError> {
    match tau {
        Scalar::Rat(r) => {
            if r.is_negative() || r > &Rational::one() {
                Err(ParamError(format!("tau = {r} outside [0, 1]")))
            } else {
                Ok(())
            }
        }
        Scalar::Poly(p) => {
            if !allow_symbolic {
                Err(ParamError("symbolic tau is not supported for this family".into()))
            } else if *p != crate::exact::TauPoly::var() {
                Err(ParamError("symbolic tau must be the plain variable t".into()))
            } else {
                Ok(())
            }
        }
    }
}

impl WeightFamily {
    pub fn hermite(tau: Scalar) -> Result<Self, ParamError> {
        validate_tau(&tau, true)?;
        Ok(WeightFamily::Hermite { tau })
    }

    pub fn laguerre(tau: Scalar, nu: Rational) -> Result<Self, ParamError> {
        validate_tau(&tau, true)?;
        if nu <= Rational::from(-1i64) {
            return Err(ParamError(format!("nu = {nu} must exceed -1")));
        }
        Ok(WeightFamily::Laguerre { tau, nu })
    }

    pub fn gegenbauer(tau: Rational, a: Rational) -> Result<Self, ParamError> {
        validate_tau(&Scalar::Rat(tau.clone()), false)?;
        if a <= Rational::from(-1i64) {
            return Err(ParamError(format!("a = {a} must exceed -1")));
        }
        Ok(WeightFamily::Gegenbauer { tau, a })
    }

    pub fn tau(&self) -> Scalar {
        match self {
            WeightFamily::Hermite { tau } | WeightFamily::Laguerre { tau, .. } => tau.clone(),
            WeightFamily::Gegenbauer { tau, .. } => Scalar::Rat(tau.clone()),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self.tau(), Scalar::Poly(_))
    }

    pub fn is_hermite(&self) -> bool {
        matches!(self, WeightFamily::Hermite { .. })
    }

    /// `alpha^p` for the scaling `p_k(z) = alpha^k P_k(z/alpha)` relating the
    /// planar polynomials to their real-line counterparts. `alpha` is
    /// `sqrt(tau)` for Hermite/Gegenbauer (so `p` must be even there) and
    /// `tau` for Laguerre.
    pub fn alpha_pow(&self, p: u32) -> Scalar {
        match self {
            WeightFamily::Hermite { tau } => {
                assert!(p % 2 == 0, "alpha^p irrational for odd p in the Hermite family");
                tau.pow(p / 2)
            }
            WeightFamily::Gegenbauer { tau, .. } => {
                assert!(p % 2 == 0, "alpha^p irrational for odd p in the Gegenbauer family");
                Scalar::Rat(tau.pow(p as i64 / 2))
            }
            WeightFamily::Laguerre { tau, .. } => tau.pow(p),
        }
    }

    /// Three-term recurrence coefficients `z p_k = p_{k+1} + b_k p_k + c_k p_{k-1}`.
    pub fn recurrence(&self, k: usize) -> RecurrenceCoeffs {
        let kq = Rational::from(k as u64);
        match self {
            WeightFamily::Hermite { tau } => RecurrenceCoeffs {
                b: Scalar::zero(),
                c: tau.scale(&kq),
            },
            WeightFamily::Laguerre { tau, nu } => {
                let b = tau.scale(&(Rational::from(2 * k as u64 + 1) + nu));
                let c = tau.pow(2).scale(&(&kq * (&kq + nu)));
                RecurrenceCoeffs { b, c }
            }
            WeightFamily::Gegenbauer { tau, a } => {
                // (tau/4) k (k+1+2a) / ((k+a)(k+1+a)); zero at k = 0
                let c = if k == 0 {
                    Scalar::zero()
                } else {
                    let num = &kq * (&kq + Rational::one() + Rational::from(2i64) * a);
                    let den = (&kq + a) * (&kq + Rational::one() + a);
                    Scalar::Rat(tau * num / (Rational::from(4i64) * den))
                };
                RecurrenceCoeffs {
                    b: Scalar::zero(),
                    c,
                }
            }
        }
    }

    /// Exact norm ratio `h_j / h_k`.
    pub fn norm_ratio(&self, j: usize, k: usize) -> Scalar {
        match self {
            WeightFamily::Hermite { .. } => Scalar::Rat(factorial_ratio(j, k)),
            WeightFamily::Laguerre { nu, .. } => {
                // j! Γ(j+ν+1) / (k! Γ(k+ν+1)) as a telescoping product
                let gamma_ratio = if j >= k {
                    pochhammer(&(Rational::from(k as u64) + nu + Rational::one()), (j - k) as u32)
                } else {
                    pochhammer(&(Rational::from(j as u64) + nu + Rational::one()), (k - j) as u32)
                        .recip()
                };
                Scalar::Rat(factorial_ratio(j, k) * gamma_ratio)
            }
            WeightFamily::Gegenbauer { tau, a } => {
                let jq = Rational::from(j as u64);
                let kq = Rational::from(k as u64);
                let one = Rational::one();
                // ((k+1+a)/(j+1+a)) * (j!/(1+a)_j)^2 / (k!/(1+a)_k)^2 * 4^(k-j) * G_j/G_k
                let head = (&kq + &one + a) / (&jq + &one + a);
                let poch_ratio = if j >= k {
                    factorial_ratio(j, k)
                        / pochhammer(&(&kq + &one + a), (j - k) as u32)
                } else {
                    factorial_ratio(j, k)
                        * pochhammer(&(&jq + &one + a), (k - j) as u32)
                };
                let four = Rational::from(4i64).pow(k as i64 - j as i64);
                let g = reversed_gegenbauer(a, j.max(k), tau);
                let g_ratio = &g[j] / &g[k];
                Scalar::Rat(head * &poch_ratio * &poch_ratio * four * g_ratio)
            }
        }
    }
}

impl fmt::Display for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightFamily::Hermite { tau } => write!(f, "hermite(tau={tau})"),
            WeightFamily::Laguerre { tau, nu } => write!(f, "laguerre(tau={tau}, nu={nu})"),
            WeightFamily::Gegenbauer { tau, a } => write!(f, "gegenbauer(tau={tau}, a={a})"),
        }
    }
}

impl fmt::Debug for WeightFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Recurrence coefficients `(b_k, c_k)` of a family at index `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceCoeffs {
    pub b: Scalar,
    pub c: Scalar,
}

/// Reversed Gegenbauer polynomials `G_k(tau) = tau^k C^{(1+a)}_k(1/tau)`,
/// generated by `(k+1) G_{k+1} = 2(k+1+a) G_k - (k+1+2a) tau^2 G_{k-1}` so
/// that `tau = 0` is regular. Returns `G_0..=G_n` evaluated at `tau`.
fn reversed_gegenbauer(a: &Rational, n: usize, tau: &Rational) -> Vec<Rational> {
    let tau2 = tau * tau;
    let one = Rational::one();
    let two = Rational::from(2i64);
    let mut g = Vec::with_capacity(n + 1);
    g.push(Rational::one());
    if n >= 1 {
        g.push(&two * (&one + a));
    }
    for k in 1..n {
        let kq = Rational::from(k as u64);
        let next = (&two * (&kq + &one + a) * &g[k]
            - (&kq + &one + &two * a) * &tau2 * &g[k - 1])
            / (&kq + &one);
        g.push(next);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn parameter_validation() {
        assert!(WeightFamily::hermite(Scalar::Rat(Rational::new(3, 2))).is_err());
        assert!(WeightFamily::hermite(Scalar::Rat(Rational::new(-1, 2))).is_err());
        assert!(WeightFamily::hermite(Scalar::Rat(Rational::one())).is_ok());
        assert!(WeightFamily::hermite(Scalar::tau()).is_ok());
        assert!(WeightFamily::laguerre(Scalar::tau(), Rational::new(-3, 2)).is_err());
        assert!(WeightFamily::gegenbauer(half(), Rational::from(-2i64)).is_err());
        // symbolic tau is a Hermite/Laguerre-only mode
        let sym = Scalar::tau();
        assert!(matches!(sym, Scalar::Poly(_)));
    }

    #[test]
    fn hermite_recurrence() {
        let fam = WeightFamily::hermite(Scalar::Rat(half())).unwrap();
        let rc = fam.recurrence(3);
        assert_eq!(rc.b, Scalar::zero());
        assert_eq!(rc.c, Scalar::Rat(Rational::new(3, 2)));
        let sym = WeightFamily::hermite(Scalar::tau()).unwrap();
        assert_eq!(sym.recurrence(3).c, Scalar::tau().scale(&Rational::from(3i64)));
    }

    #[test]
    fn laguerre_recurrence() {
        // k = 0, nu = 1/2: b = 3/2 tau, c = 0
        let fam = WeightFamily::laguerre(Scalar::tau(), half()).unwrap();
        let rc = fam.recurrence(0);
        assert_eq!(rc.b, Scalar::tau().scale(&Rational::new(3, 2)));
        assert!(rc.c.is_zero());
    }

    #[test]
    fn gegenbauer_recurrence() {
        // k = 1, a = 0: c = tau * 1*(1+1) / (4 * 1 * 2) = tau/4
        let fam = WeightFamily::gegenbauer(half(), Rational::zero()).unwrap();
        let rc = fam.recurrence(1);
        assert_eq!(rc.c, Scalar::Rat(Rational::new(1, 8)));
        assert_eq!(fam.recurrence(0).c, Scalar::zero());
    }

    #[test]
    fn hermite_norm_ratios() {
        let fam = WeightFamily::hermite(Scalar::Rat(half())).unwrap();
        assert_eq!(fam.norm_ratio(3, 1), Scalar::from(6i64));
        assert_eq!(fam.norm_ratio(1, 3), Scalar::Rat(Rational::new(1, 6)));
        assert_eq!(fam.norm_ratio(4, 4), Scalar::one());
    }

    #[test]
    fn laguerre_norm_ratios() {
        // nu = 1: h_1/h_0 = 1! Γ(3)/Γ(2) = 2
        let fam = WeightFamily::laguerre(Scalar::Rat(half()), Rational::one()).unwrap();
        assert_eq!(fam.norm_ratio(1, 0), Scalar::from(2i64));
        let r = fam.norm_ratio(4, 2);
        let r_inv = fam.norm_ratio(2, 4);
        assert_eq!(
            r.as_rational().unwrap() * r_inv.as_rational().unwrap(),
            Rational::one()
        );
    }

    #[test]
    fn reversed_gegenbauer_matches_classical() {
        // G_k(tau) = tau^k C_k^{(1+a)}(1/tau): check against the classical
        // recurrence at tau = 1/2 (so 1/tau = 2) with a = 1/2 -> lambda = 3/2.
        let a = half();
        let lambda = Rational::new(3, 2);
        let x = Rational::from(2i64);
        let tau = half();
        let n = 8;
        let g = reversed_gegenbauer(&a, n, &tau);
        let mut c_prev = Rational::one();
        let mut c_cur = Rational::from(2i64) * &lambda * &x;
        for k in 1..n {
            let kq = Rational::from(k as u64);
            let next = (Rational::from(2i64) * (&kq + &lambda) * &x * &c_cur
                - (&kq + Rational::from(2i64) * &lambda - Rational::one()) * &c_prev)
                / (&kq + Rational::one());
            c_prev = c_cur;
            c_cur = next;
        }
        assert_eq!(g[n], tau.pow(n as i64) * c_cur);
        // regular at tau = 0: G_k(0) = 2^k (1+a)_k / k!
        let g0 = reversed_gegenbauer(&a, 5, &Rational::zero());
        for (k, gk) in g0.iter().enumerate() {
            let expect = Rational::from(2i64).pow(k as i64)
                * pochhammer(&(Rational::one() + &a), k as u32)
                / crate::exact::comb::factorial(k as i64);
            assert_eq!(gk, &expect);
        }
    }

    #[test]
    fn gegenbauer_norm_ratio_against_closed_form() {
        // Chebyshev case a = 0 (lambda = 1): C_k^{(1)} = U_k, and
        // h_j/h_k from the closed form with U_k(1/tau) computed directly.
        let fam = WeightFamily::gegenbauer(half(), Rational::zero()).unwrap();
        // U_k(2): 1, 4, 15, 56, 209
        let u = [1i64, 4, 15, 56, 209];
        let h = |k: usize| {
            // (1+a)/(k+1+a) (k!/(1+a)_k)^2 (tau/4)^k U_k(1/tau) with a=0, tau=1/2
            Rational::one() / Rational::from(k as u64 + 1)
                * Rational::new(1, 8).pow(k as i64)
                * Rational::from(u[k])
        };
        for j in 0..5 {
            for k in 0..5 {
                assert_eq!(
                    fam.norm_ratio(j, k),
                    Scalar::Rat(h(j) / h(k)),
                    "j={j} k={k}"
                );
            }
        }
    }
}
