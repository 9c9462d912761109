//! Mixed spectral moments of the symplectic (Pfaffian) planar ensembles.
//!
//! The skew-orthogonal polynomials are linear combinations of the orthogonal
//! ones with coefficients built from the norm ratios and the recurrence, so
//! everything here reduces to the coefficient tables of `acoeff` plus the
//! skew-norm bookkeeping in `SkewData`.

use crate::acoeff::ATables;
use crate::exact::comb::{
    binomial, factorial, factorial_ratio, pow2, recip_double_factorial, recip_factorial,
};
use crate::exact::{Rational, Scalar};
use crate::weights::WeightFamily;
use std::cell::RefCell;

/// Skew-norm data of a family: the construction coefficients `lambda_l`,
/// their running products `mu_{k,j}`, and skew-norm ratios `r_n/r_k` with
/// `r_k = 2(h_{2k+1} - c_{2k+1} h_{2k})`.
///
/// Both quantities telescope, so they are stored through prefix products:
/// `mu_{k,j} = L_k/L_j` with `L_m = prod_{l<m} lambda_l`, and
/// `r_n/r_k = R_n/R_k` with `R_m = prod_{l<m} (r_{l+1}/r_l)`. The
/// square-root prefactors of the absolute norms cancel structurally in both
/// factors; in symbolic mode that cancellation is an exact polynomial
/// division, asserted rather than assumed.
pub struct SkewData {
    family: WeightFamily,
    lam_prefix: RefCell<Vec<Scalar>>,
    r_prefix: RefCell<Vec<Scalar>>,
}

impl SkewData {
    pub fn new(family: WeightFamily) -> Self {
        SkewData {
            family,
            lam_prefix: RefCell::new(vec![Scalar::one()]),
            r_prefix: RefCell::new(vec![Scalar::one()]),
        }
    }

    /// `lambda_l = (h_{2l+2} - c_{2l+2} h_{2l+1}) / (h_{2l+1} - c_{2l+1} h_{2l})`,
    /// computed from exact norm ratios.
    pub fn lambda(&self, l: usize) -> Scalar {
        let fam = &self.family;
        let num = fam.norm_ratio(2 * l + 2, 2 * l + 1) - fam.recurrence(2 * l + 2).c;
        let den = Scalar::one() - fam.recurrence(2 * l + 1).c * fam.norm_ratio(2 * l, 2 * l + 1);
        num.div_exact(&den)
    }

    /// `r_{l+1}/r_l`, the skew-norm step.
    fn r_step(&self, l: usize) -> Scalar {
        let fam = &self.family;
        let num = fam.norm_ratio(2 * l + 3, 2 * l + 1)
            - fam.recurrence(2 * l + 3).c * fam.norm_ratio(2 * l + 2, 2 * l + 1);
        let den = Scalar::one() - fam.recurrence(2 * l + 1).c * fam.norm_ratio(2 * l, 2 * l + 1);
        num.div_exact(&den)
    }

    /// `mu_{k,j} = prod_{l=j}^{k-1} lambda_l` for `j <= k`.
    pub fn mu(&self, k: usize, j: usize) -> Scalar {
        assert!(j <= k);
        {
            let mut prefix = self.lam_prefix.borrow_mut();
            while prefix.len() <= k {
                let l = prefix.len() - 1;
                let next = prefix.last().unwrap() * self.lambda(l);
                prefix.push(next);
            }
        }
        let prefix = self.lam_prefix.borrow();
        prefix[k].div_exact(&prefix[j])
    }

    /// `r_n / r_k` for any pair of indices.
    pub fn r_ratio(&self, n: usize, k: usize) -> Scalar {
        {
            let mut prefix = self.r_prefix.borrow_mut();
            while prefix.len() <= n.max(k) {
                let l = prefix.len() - 1;
                let next = prefix.last().unwrap() * self.r_step(l);
                prefix.push(next);
            }
        }
        let prefix = self.r_prefix.borrow();
        prefix[n].div_exact(&prefix[k])
    }
}

/// Change-of-basis coefficient `(B^p)^target_source` expanding
/// `z^p q_source` over the skew-orthogonal basis, reduced to the orthogonal
/// coefficients by the parity of the indices. Zero for `target < 0`.
pub fn b_coeff(t: &ATables, skew: &SkewData, p: u32, target: i64, source: usize) -> Scalar {
    if target < 0 {
        return Scalar::zero();
    }
    match (target % 2 == 1, source % 2 == 1) {
        (true, true) => t.a(p, target, source),
        (false, true) => {
            let lam = skew.lambda((target / 2) as usize);
            t.a(p, target, source) - lam * t.a(p, target + 2, source)
        }
        (true, false) => {
            let k = source / 2;
            let mut acc = Scalar::zero();
            for j in even_source_range(p, target, k) {
                let a = t.a(p, target, 2 * j);
                if !a.is_zero() {
                    acc += skew.mu(k, j) * a;
                }
            }
            acc
        }
        (false, false) => {
            let k = source / 2;
            let lam = skew.lambda((target / 2) as usize);
            let mut acc = Scalar::zero();
            for j in even_source_range(p, target, k) {
                let term = t.a(p, target, 2 * j) - &lam * t.a(p, target + 2, 2 * j);
                if !term.is_zero() {
                    acc += skew.mu(k, j) * term;
                }
            }
            acc
        }
    }
}

/// Indices `j <= k` for which `(A^p)` with target near `target` and source
/// `2j` can be nonzero.
fn even_source_range(p: u32, target: i64, k: usize) -> std::ops::RangeInclusive<usize> {
    let lo = ((target - p as i64) / 2 - 1).max(0) as usize;
    let hi = (((target + p as i64) / 2 + 1).max(0) as usize).min(k);
    lo.min(k)..=hi
}

/// The per-index combination entering the symplectic moment formula: four
/// skew-basis pairings weighted by skew-norm ratios.
pub fn frak_m(t: &ATables, skew: &SkewData, p1: u32, p2: u32, k: usize) -> Scalar {
    let reach = (p1.max(p2) as i64 + 1) / 2 + 1;
    let mut acc = Scalar::zero();
    for n in (k as i64 - reach).max(0)..=k as i64 + reach {
        let nn = n as usize;
        let r = skew.r_ratio(nn, k);
        let mut combo = Scalar::zero();

        let b1 = b_coeff(t, skew, p1, 2 * n + 1, 2 * k + 1);
        if !b1.is_zero() {
            combo += b1 * b_coeff(t, skew, p2, 2 * n, 2 * k);
        }
        let b2 = b_coeff(t, skew, p2, 2 * n + 1, 2 * k + 1);
        if !b2.is_zero() {
            combo += b_coeff(t, skew, p1, 2 * n, 2 * k) * b2;
        }
        let b3 = b_coeff(t, skew, p1, 2 * n, 2 * k + 1);
        if !b3.is_zero() {
            combo -= b3 * b_coeff(t, skew, p2, 2 * n + 1, 2 * k);
        }
        let b4 = b_coeff(t, skew, p2, 2 * n, 2 * k + 1);
        if !b4.is_zero() {
            combo -= b_coeff(t, skew, p1, 2 * n + 1, 2 * k) * b4;
        }

        if !combo.is_zero() {
            acc += r * combo;
        }
    }
    acc
}

/// Symplectic mixed moment: `(1/2) sum_{k<N} frak_m(p1, p2, k)`.
pub fn moment(t: &ATables, skew: &SkewData, p1: u32, p2: u32, n: usize) -> Scalar {
    let mut acc = Scalar::zero();
    for k in 0..n {
        acc += frak_m(t, skew, p1, p2, k);
    }
    acc.div_rat(&Rational::from(2i64))
}

/// Fast path for `p2 = 0`:
/// `M^H_{p,0,N} = (1/2) M^C_{p,0,2N} - (1/2) sum_j mu_{N,j} (A^p)^{2N}_{2j}`.
pub fn holomorphic_moment(t: &ATables, skew: &SkewData, p: u32, n: usize) -> Scalar {
    let mut corr = Scalar::zero();
    for j in 0..n {
        let a = t.a(p, 2 * n as i64, 2 * j);
        if !a.is_zero() {
            corr += skew.mu(n, j) * a;
        }
    }
    (crate::complex::holomorphic_moment(t, p, 2 * n) - corr).div_rat(&Rational::from(2i64))
}

/// Ginibre symplectic ensemble closed form (two branches).
pub fn ginse_moment(p1: u32, p2: u32, n: usize) -> Rational {
    let (p1, p2) = if p1 >= p2 { (p1, p2) } else { (p2, p1) };
    if (p1 + p2) % 2 != 0 {
        return Rational::zero();
    }
    let (p1, p2) = (p1 as i64, p2 as i64);
    let mut acc = Rational::zero();
    if p1 == p2 {
        for k in 0..n {
            acc += factorial_ratio(2 * k + 1 + p1 as usize, 2 * k + 1);
        }
    } else {
        for k in 0..n as i64 {
            acc += factorial_ratio((2 * k + 1 + p2) as usize, (2 * k + 1) as usize)
                * double_factorial_even(2 * k)
                * recip_double_factorial(2 * k + 2 - p1 + p2);
        }
        acc = -Rational::from(p1) / Rational::from(2i64) * acc;
    }
    acc
}

fn double_factorial_even(n: i64) -> Rational {
    crate::exact::comb::double_factorial(n)
}

/// Gaussian symplectic ensemble moment of order `2p` for the weight
/// `exp(-x^2/2)`.
pub fn gse_moment(p: u32, n: usize) -> Rational {
    let p = p as i64;
    let two_n = 2 * n as i64;
    let mut corr = Rational::zero();
    for r in 1..=p.min(n as i64) {
        // terms with 2N - 2r < 0 vanish through the binomial convention
        let dfr = double_factorial_ratio(two_n, two_n - 2 * r);
        for l in 0..=p {
            corr += &dfr
                * factorial(2 * p)
                * pow2(-l)
                * recip_factorial(l)
                * recip_factorial(p - l + r)
                * binomial(two_n - 2 * r, p - l - r);
        }
    }
    (crate::complex::gue_moment(p as u32, 2 * n) - corr) / Rational::from(2i64)
}

/// `(2N)!!/(2m)!!` for `2m <= 2N`.
fn double_factorial_ratio(top: i64, bottom: i64) -> Rational {
    assert!(top >= bottom && bottom >= 0 && top % 2 == 0 && bottom % 2 == 0);
    let mut acc = Rational::one();
    let mut m = bottom + 2;
    while m <= top {
        acc *= Rational::from(m);
        m += 2;
    }
    acc
}

/// Elliptic Ginibre symplectic moment by the kernel-decomposition recursion:
/// half the complex moment at `2N` plus a lower-order symplectic moment and
/// an explicit correction sum. Hermite family only.
pub fn recursive_moment(t: &ATables, p1: u32, p2: u32, n: usize) -> Scalar {
    let fam = t.family();
    assert!(fam.is_hermite(), "recursion applies to the Hermite family");
    if p1 + p2 == 0 {
        return Scalar::from(n as i64);
    }
    let tau = fam.tau();
    let half = Rational::new(1, 2);
    let ptot = Rational::from(p1 as u64 + p2 as u64);

    let mut acc = crate::complex::moment(t, p1, p2, 2 * n).scale(&half);

    if p1 > 0 && p2 > 0 {
        let coeff = Rational::from(p1 as u64) * Rational::from(p2 as u64) / &ptot;
        let lower = recursive_moment(t, p1 - 1, p2 - 1, n);
        acc += (&Scalar::one() - &tau.pow(2)) * lower.scale(&coeff);
    }

    let reach = p1.max(p2) as i64;
    let w1 = Rational::from(p1 as u64) / &ptot;
    let w2 = Rational::from(p2 as u64) / &ptot;
    let two_n = 2 * n as i64;
    let mut corr = Scalar::zero();
    for k in 0..n {
        let mu = double_factorial_ratio(two_n, 2 * k as i64);
        for j in (two_n - reach).max(0)..=two_n + reach {
            let mut combo = Scalar::zero();
            let a1 = t.a(p1, j, 2 * k);
            if !a1.is_zero() {
                combo += (a1 * t.a(p2, j, 2 * n)).scale(&w1);
            }
            let a2 = t.a(p2, j, 2 * k);
            if !a2.is_zero() {
                combo += (t.a(p1, j, 2 * n) * a2).scale(&w2);
            }
            if !combo.is_zero() {
                corr += combo.scale(&(factorial_ratio(j as usize, 2 * n) * &mu));
            }
        }
    }
    acc - corr.scale(&half)
}

/// Elliptic Ginibre symplectic moment as a direct factorial sum (no
/// coefficient tables): the even/even and odd/odd pairings of the skew
/// expansion written out explicitly. Hermite family only.
pub fn explicit_moment(tau: &Scalar, p1: u32, p2: u32, n: usize) -> Scalar {
    if (p1 + p2) % 2 != 0 {
        return Scalar::zero();
    }
    let (p1, p2) = (p1 as i64, p2 as i64);
    let mut acc = Scalar::zero();
    for k in 0..n as i64 {
        for s in 0..=k.min((p1 + p2) / 2) {
            let mu = double_factorial_ratio(2 * k, 2 * k - 2 * s);
            let inner = &explicit_pair_sum(tau, k, s, p1, p2)
                + &explicit_pair_sum(tau, k, s, p2, p1);
            if !inner.is_zero() {
                acc += inner.scale(&mu);
            }
        }
    }
    acc.div_rat(&Rational::from(2i64))
}

/// `sum_{l1, l2} (q1!/(2^{l1} l1!)) (q2!/(2^{l2} l2!)) f_{k,s,l1,l2}(q1, q2)`
/// where `f` is the parity-matched factorial kernel.
fn explicit_pair_sum(tau: &Scalar, k: i64, s: i64, q1: i64, q2: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for l1 in 0..=q1 / 2 {
        let w1 = factorial(q1) * pow2(-l1) * recip_factorial(l1);
        for l2 in 0..=q2 / 2 {
            let w2 = factorial(q2) * pow2(-l2) * recip_factorial(l2);
            let f = if q1 % 2 == 0 {
                explicit_f_even(tau, k, s, l1, l2, q1, q2)
            } else {
                explicit_f_odd(tau, k, s, l1, l2, q1, q2)
            };
            if !f.is_zero() {
                acc += f.scale(&(&w1 * &w2));
            }
        }
    }
    acc
}

fn explicit_f_even(tau: &Scalar, k: i64, s: i64, l1: i64, l2: i64, q1: i64, q2: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for r in l1 - q1 / 2..=q1 / 2 - l1 + 1 {
        // shared gate from the odd-odd coefficient pairing
        let g1 = binomial(2 * k + 1, q1 / 2 - l1 + r) * recip_factorial(q1 / 2 - l1 - r);
        if g1.is_zero() {
            continue;
        }
        let e = (q1 + q2) / 2 + 2 * r - s;
        let t1 = binomial(2 * k - 2 * s, q2 / 2 - l2 + r - s)
            * recip_factorial(q2 / 2 - l2 + s - r);
        if !t1.is_zero() {
            debug_assert!(e >= 0 && 2 * k + 1 - 2 * r >= 0);
            let coeff = &g1 * t1 * factorial_ratio((2 * k + 1 - 2 * r) as usize, (2 * k + 1) as usize);
            acc += tau.pow(e as u32).scale(&coeff);
        }
        let t2 = binomial(2 * k - 2 * s, q2 / 2 - l2 + r - s - 1)
            * recip_factorial(q2 / 2 - l2 + s - r + 1);
        if !t2.is_zero() {
            debug_assert!(e >= 1 && 2 * k + 2 - 2 * r >= 0);
            let coeff = &g1 * t2 * factorial_ratio((2 * k + 2 - 2 * r) as usize, (2 * k + 1) as usize);
            acc -= tau.pow((e - 1) as u32).scale(&coeff);
        }
    }
    acc
}

fn explicit_f_odd(tau: &Scalar, k: i64, s: i64, l1: i64, l2: i64, q1: i64, q2: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for r in l1 - (q1 + 1) / 2..=(q1 + 1) / 2 - l1 {
        let e = (q1 + q2) / 2 + 2 * r - s;
        let g2 = binomial(2 * k - 2 * s, (q2 - 1) / 2 - l2 + r - s)
            * recip_factorial((q2 + 1) / 2 - l2 + s - r);
        if g2.is_zero() {
            continue;
        }
        let t1 = binomial(2 * k + 1, (q1 + 1) / 2 - l1 + r)
            * recip_factorial((q1 - 1) / 2 - l1 - r);
        if !t1.is_zero() {
            debug_assert!(e >= 0 && 2 * k + 1 - 2 * r >= 0);
            let coeff = t1 * &g2 * factorial_ratio((2 * k + 1 - 2 * r) as usize, (2 * k + 1) as usize);
            acc -= tau.pow(e as u32).scale(&coeff);
        }
        let t2 = binomial(2 * k + 1, (q1 - 1) / 2 - l1 + r)
            * recip_factorial((q1 + 1) / 2 - l1 - r);
        if !t2.is_zero() {
            debug_assert!(e >= 1 && 2 * k + 2 - 2 * r >= 0);
            let coeff = t2 * &g2 * factorial_ratio((2 * k + 2 - 2 * r) as usize, (2 * k + 1) as usize);
            acc += tau.pow((e - 1) as u32).scale(&coeff);
        }
    }
    acc
}
