//! Mixed spectral moments of the complex (determinantal) planar ensembles.
//!
//! The general orthogonal-polynomial sum works for every family with a
//! three-term recurrence. For the elliptic Ginibre (planar Hermite) case two
//! further routes are provided — a Christoffel–Darboux-type kernel identity
//! and a direct factorial sum — plus the Ginibre and Gaussian closed forms.

use crate::acoeff::ATables;
use crate::exact::comb::{binomial, factorial, factorial_ratio, pow2, recip_factorial};
use crate::exact::{Rational, Scalar};
use crate::weights::WeightFamily;

/// Mixed moment by the general formula
/// `sum_{k<N} sum_j (h_j/h_k) (A^{p1})^j_k (A^{p2})^j_k`.
pub fn moment(t: &ATables, p1: u32, p2: u32, n: usize) -> Scalar {
    // symmetric in (p1, p2); order so the shorter table drives the j window
    let (p1, p2) = if p1 >= p2 { (p1, p2) } else { (p2, p1) };
    let fam = t.family();
    let m = p2 as i64;
    let mut acc = Scalar::zero();
    for k in 0..n {
        for j in (k as i64 - m).max(0)..=k as i64 + m {
            let a1 = t.a(p1, j, k);
            if a1.is_zero() {
                continue;
            }
            let a2 = t.a(p2, j, k);
            if a2.is_zero() {
                continue;
            }
            acc += fam.norm_ratio(j as usize, k) * a1 * a2;
        }
    }
    acc
}

/// Fast path for `p2 = 0`: `sum_{k<N} (A^p)^k_k`.
pub fn holomorphic_moment(t: &ATables, p: u32, n: usize) -> Scalar {
    let mut acc = Scalar::zero();
    for k in 0..n {
        acc += t.a(p, k as i64, k);
    }
    acc
}

/// Moment of the Hermitian unitary ensemble obtained by removing the scaling
/// factor: `M^R_{p,N} = M^C_{p,0,N} / alpha^p`.
///
/// For the Hermite and Gegenbauer families odd moments vanish and zero is
/// returned directly. Panics at `tau = 0`, where the scaling degenerates.
pub fn hermitian_moment(t: &ATables, p: u32, n: usize) -> Scalar {
    let fam = t.family();
    if !matches!(fam, WeightFamily::Laguerre { .. }) && p % 2 != 0 {
        return Scalar::zero();
    }
    assert!(
        !fam.tau().is_zero(),
        "Hermitian-ensemble moment undefined at tau = 0; use symbolic tau or the closed forms"
    );
    holomorphic_moment(t, p, n).div_exact(&fam.alpha_pow(p))
}

/// Ginibre unitary ensemble closed form:
/// `(N+p)!/((p+1) (N-1)!)` when `p1 = p2 = p`, zero otherwise.
pub fn ginue_moment(p1: u32, p2: u32, n: usize) -> Rational {
    if p1 != p2 || n == 0 {
        return Rational::zero();
    }
    factorial_ratio(n + p1 as usize, n - 1) / Rational::from(p1 + 1)
}

/// Gaussian unitary ensemble moment of order `2p` for the weight
/// `exp(-x^2/2)`: `sum_l (2p)!/(2^l l! (p-l)!) C(N, p-l+1)`.
pub fn gue_moment(p: u32, n: usize) -> Rational {
    let p = p as i64;
    let mut acc = Rational::zero();
    for l in 0..=p {
        acc += factorial(2 * p)
            * pow2(-l)
            * recip_factorial(l)
            * recip_factorial(p - l)
            * binomial(n as i64, p - l + 1);
    }
    acc
}

/// Elliptic Ginibre moment through the kernel differentiation identity:
/// a two-term combination of coefficients at the top indices, divided by
/// `(1 - tau^2)`. Hermite family only; at rational `tau` the division
/// requires `tau < 1`, in symbolic mode it is an exact polynomial division.
pub fn cd_moment(t: &ATables, p1: u32, p2: u32, n: usize) -> Scalar {
    let fam = t.family();
    assert!(fam.is_hermite(), "kernel identity applies to the Hermite family");
    assert!(n >= 1);
    let tau = fam.tau();
    let reach = (p1 + 1).max(p2) as i64;
    let mut bracket = Scalar::zero();
    for j in (n as i64 - 1 - reach).max(0)..=n as i64 + reach {
        let t1 = &t.a(p1 + 1, j, n - 1) * &t.a(p2, j, n);
        let t2 = &t.a(p1 + 1, j, n) * &t.a(p2, j, n - 1);
        let term = t1 - &tau * t2;
        if term.is_zero() {
            continue;
        }
        bracket += term.scale(&factorial_ratio(j as usize, n - 1));
    }
    let denom = &Scalar::one() - &tau.pow(2);
    bracket
        .div_rat(&Rational::from(p1 as u64 + 1))
        .div_exact(&denom)
}

/// Elliptic Ginibre moment as a direct quadruple factorial sum (no
/// coefficient tables). Hermite family only.
pub fn explicit_moment(tau: &Scalar, p1: u32, p2: u32, n: usize) -> Scalar {
    if (p1 + p2) % 2 != 0 {
        return Scalar::zero();
    }
    let (p1, p2) = (p1 as i64, p2 as i64);
    let m = p1.min(p2);
    let mut acc = Scalar::zero();
    for k in 0..n as i64 {
        let mut r = -m;
        while r <= m {
            if k - r >= 0 {
                let mut coeff = Rational::zero();
                for l1 in 0..=p1 / 2 {
                    let f1 = factorial(p1)
                        * pow2(-l1)
                        * recip_factorial(l1)
                        * recip_factorial((p1 - r) / 2 - l1)
                        * binomial(k, (p1 + r) / 2 - l1);
                    if f1.is_zero() {
                        continue;
                    }
                    for l2 in 0..=p2 / 2 {
                        let f2 = factorial(p2)
                            * pow2(-l2)
                            * recip_factorial(l2)
                            * recip_factorial((p2 - r) / 2 - l2)
                            * binomial(k, (p2 + r) / 2 - l2);
                        if f2.is_zero() {
                            continue;
                        }
                        coeff += &f1 * f2;
                    }
                }
                if !coeff.is_zero() {
                    coeff *= factorial_ratio((k - r) as usize, k as usize);
                    let e = (p1 + p2) / 2 + r;
                    debug_assert!(e >= 0);
                    acc += tau.pow(e as u32).scale(&coeff);
                }
            }
            r += 2;
        }
    }
    acc
}
