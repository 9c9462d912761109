//! Large-N expansion coefficients of the spectral moments and the machinery
//! to verify them against exact finite-N values: leading/subleading
//! coefficients for the elliptic Ginibre ensembles, the limiting coefficient
//! of the non-Hermitian Wishart ensemble, the genus expansion of the
//! Gaussian unitary moments, and the conformal-map route to the elliptic-law
//! moments.

use crate::acoeff::ATables;
use crate::exact::comb::{binomial, pow2, recip_factorial, stirling_first};
use crate::exact::{Rational, Scalar};
use crate::weights::WeightFamily;

/// Leading coefficient of `M^C_{p1,p2,N} / N^{(p1+p2)/2+1}` for the elliptic
/// Ginibre ensemble (and, after a power-of-two rescaling, its symplectic
/// counterpart). Zero for odd `p1+p2`.
pub fn c1(p1: u32, p2: u32, tau: &Scalar) -> Scalar {
    if (p1 + p2) % 2 != 0 {
        return Scalar::zero();
    }
    let (p1, p2) = (p1 as i64, p2 as i64);
    let m = p1.min(p2);
    let mut acc = Scalar::zero();
    let mut r = -m;
    while r <= m {
        let coeff = binomial(p1, (p1 + r) / 2) * binomial(p2, (p2 + r) / 2);
        if !coeff.is_zero() {
            let e = (p1 + p2) / 2 + r;
            debug_assert!(e >= 0);
            acc += tau.pow(e as u32).scale(&coeff);
        }
        r += 2;
    }
    acc.div_rat(&Rational::from((p1 + p2) / 2 + 1))
}

/// Subleading (`1/N`) coefficient for the complex elliptic Ginibre ensemble.
pub fn c2(p1: u32, p2: u32, tau: &Scalar) -> Scalar {
    if (p1 + p2) % 2 != 0 {
        return Scalar::zero();
    }
    let (p1, p2) = (p1 as i64, p2 as i64);
    let m = p1.min(p2);
    let mut acc = Scalar::zero();
    let mut r = -m;
    while r <= m {
        let coeff =
            binomial(p1, (p1 + r) / 2) * binomial(p2, (p2 + r) / 2) * Rational::new(r, 2);
        if !coeff.is_zero() {
            acc -= tau.pow(((p1 + p2) / 2 + r) as u32).scale(&coeff);
        }
        r += 2;
    }
    acc
}

/// Subleading coefficient for the symplectic elliptic Ginibre ensemble
/// (after the `2^{(p1+p2)/2}` rescaling).
pub fn c2_prime(p1: u32, p2: u32, tau: &Scalar) -> Scalar {
    if p1 + p2 == 0 || (p1 + p2) % 2 != 0 {
        return Scalar::zero();
    }
    let half = Rational::new(1, 2);
    let ptot = Rational::from(p1 as u64 + p2 as u64);

    let mut acc = c2(p1, p2, tau).scale(&half);
    if p1 > 0 && p2 > 0 {
        let coeff = Rational::from(p1 as u64) * Rational::from(p2 as u64) / &ptot * &half;
        let lower = c1(p1 - 1, p2 - 1, tau);
        acc += ((&Scalar::one() - &tau.pow(2)) * lower).scale(&coeff);
    }

    let (q1, q2) = (p1 as i64, p2 as i64);
    let m = q1.max(q2);
    let w1 = Rational::from(p1 as u64) / &ptot;
    let w2 = Rational::from(p2 as u64) / &ptot;
    let mut corr = Scalar::zero();
    for s in 1..=m {
        let mut r = -m;
        while r <= m {
            let part1 = binomial(q1, (q1 + r) / 2 - s) * binomial(q2, (q2 + r) / 2);
            let part2 = binomial(q1, (q1 + r) / 2) * binomial(q2, (q2 + r) / 2 - s);
            let coeff = &w1 * part1 + &w2 * part2;
            if !coeff.is_zero() {
                let e = (q1 + q2) / 2 + r - s;
                debug_assert!(e >= 0);
                corr += tau.pow(e as u32).scale(&coeff);
            }
            r += 2;
        }
    }
    acc - corr.scale(&half)
}

/// Limiting coefficient of `M^{L,C}_{p1,p2,N} / N^{p1+p2+1}` for the
/// non-Hermitian Wishart ensemble with `nu/N -> alpha`.
pub fn l1(p1: u32, p2: u32, tau: &Scalar, alpha: &Rational) -> Scalar {
    let (p1, p2) = (p1 as i64, p2 as i64);
    let m = p1.min(p2);
    let mut acc = Scalar::zero();
    for r in -m..=m {
        let mut coeff = Rational::zero();
        for l1 in 0..=p1 {
            let f1 = binomial(p1, l1) * binomial(p1 + l1, l1 + r);
            if f1.is_zero() {
                continue;
            }
            for l2 in 0..=p2 {
                let f2 = binomial(p2, l2) * binomial(p2 + l2, l2 - r);
                if f2.is_zero() {
                    continue;
                }
                coeff += &f1 * f2 * alpha.pow(p1 + p2 - l1 - l2)
                    / Rational::from(l1 + l2 + 1);
            }
        }
        if !coeff.is_zero() {
            let e = p1 + p2 + 2 * r;
            debug_assert!(e >= 0);
            acc += tau.pow(e as u32).scale(&coeff);
        }
    }
    acc
}

/// Genus-expansion coefficient of the Gaussian unitary moments:
/// `E_g(p) = (2p-1)!! sum_{m<=2g} s(p+1-m, p+1-2g)/(p+1-m)! C(p,m) 2^{p-m}`.
pub fn genus_coeff(g: u32, p: u32) -> Rational {
    assert!(2 * g <= p + 1, "genus {g} out of range for moment order {p}");
    let (g, p) = (g as i64, p as i64);
    let mut acc = Rational::zero();
    for m in 0..=2 * g {
        acc += stirling_first((p + 1 - m) as u32, (p + 1 - 2 * g) as u32)
            * recip_factorial(p + 1 - m)
            * binomial(p, m)
            * pow2(p - m);
    }
    acc * double_factorial_odd(2 * p - 1)
}

fn double_factorial_odd(n: i64) -> Rational {
    crate::exact::comb::double_factorial(n)
}

/// Mixed moment of the elliptic law by conformal-map coefficient extraction:
/// the coefficient of `w^{p1+p2+2}` in
/// `(w^2+tau)^{p1} (tau w^2+1)^{p2+1} (w^2-tau)`, divided by `(p2+1)` and by
/// `(1-tau^2)`. Equals `c1(p1, p2)` identically.
pub fn elliptic_law_moment(p1: u32, p2: u32, tau: &Scalar) -> Scalar {
    if (p1 + p2) % 2 != 0 {
        return Scalar::zero();
    }
    // Work in u = w^2: extract [u^{(p1+p2)/2+1}] of (u+tau)^{p1} (tau u+1)^{p2+1} (u-tau).
    let a = poly_pow(&[tau.clone(), Scalar::one()], p1);
    let b = poly_pow(&[Scalar::one(), tau.clone()], p2 + 1);
    let c = vec![-tau, Scalar::one()];
    let prod = poly_mul(&poly_mul(&a, &b), &c);
    let idx = ((p1 + p2) / 2 + 1) as usize;
    let bracket = prod.get(idx).cloned().unwrap_or_else(Scalar::zero);
    let denom = &Scalar::one() - &tau.pow(2);
    bracket
        .div_rat(&Rational::from(p2 as u64 + 1))
        .div_exact(&denom)
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_pow(base: &[Scalar], e: u32) -> Vec<Scalar> {
    let mut acc = vec![Scalar::one()];
    for _ in 0..e {
        acc = poly_mul(&acc, base);
    }
    acc
}

/// Exact coefficients of a function of N known to be a polynomial of the
/// given degree: Lagrange interpolation at `N = 1..=degree+1`, validated at
/// the held-out point `N = degree+2`. A nonzero residual there means the
/// degree bound is wrong and is a hard failure.
pub fn poly_in_n(f: &mut dyn FnMut(usize) -> Scalar, degree: usize) -> Vec<Scalar> {
    let nodes: Vec<i64> = (1..=degree as i64 + 1).collect();
    let values: Vec<Scalar> = nodes.iter().map(|&n| f(n as usize)).collect();
    let mut coeffs = vec![Scalar::zero(); degree + 1];
    for (i, xi) in nodes.iter().enumerate() {
        // expand prod_{j != i} (x - x_j) / (x_i - x_j)
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, xj) in nodes.iter().enumerate() {
            if i == j {
                continue;
            }
            denom *= Rational::from(xi - xj);
            let mut next = vec![Rational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= Rational::from(*xj) * c;
            }
            basis = next;
        }
        let weight = values[i].div_rat(&denom);
        for (d, c) in basis.iter().enumerate() {
            coeffs[d] += weight.scale(c);
        }
    }
    // held-out validation
    let held_out = degree + 2;
    let expect = f(held_out);
    let mut got = Scalar::zero();
    let x = Rational::from(held_out as u64);
    for c in coeffs.iter().rev() {
        got = got.scale(&x) + c;
    }
    assert!(
        got == expect,
        "interpolation degree bound violated at N = {held_out}: got {got}, expected {expect}"
    );
    coeffs
}

/// Outcome of comparing exact finite-N elliptic Ginibre moments against the
/// predicted leading and subleading expansion coefficients.
#[derive(Debug, Clone)]
pub struct CoeffComparison {
    pub leading_extracted: Scalar,
    pub leading_predicted: Scalar,
    pub subleading_extracted: Scalar,
    pub subleading_predicted: Scalar,
}

impl CoeffComparison {
    pub fn passed(&self) -> bool {
        self.leading_extracted == self.leading_predicted
            && self.subleading_extracted == self.subleading_predicted
    }
}

/// Exact polynomial-in-N extraction for the Hermite family: the moment is a
/// polynomial of degree `(p1+p2)/2 + 1` in N; its top two coefficients must
/// match `c1` and `c2` (complex) or, after dividing `2^{(p1+p2)/2}`, `c1`
/// and `c2'` (symplectic).
pub fn hermite_coeff_comparison(
    family: &WeightFamily,
    symplectic: bool,
    p1: u32,
    p2: u32,
) -> CoeffComparison {
    assert!(family.is_hermite());
    let tau = family.tau();
    if (p1 + p2) % 2 != 0 {
        // odd moments vanish identically and so do the predictions
        return CoeffComparison {
            leading_extracted: Scalar::zero(),
            leading_predicted: c1(p1, p2, &tau),
            subleading_extracted: Scalar::zero(),
            subleading_predicted: if symplectic {
                c2_prime(p1, p2, &tau)
            } else {
                c2(p1, p2, &tau)
            },
        };
    }
    let degree = ((p1 + p2) / 2 + 1) as usize;
    let t = ATables::new(family.clone());
    let skew = crate::symplectic::SkewData::new(family.clone());
    let mut f = |n: usize| {
        if symplectic {
            crate::symplectic::moment(&t, &skew, p1, p2, n)
        } else {
            crate::complex::moment(&t, p1, p2, n)
        }
    };
    let mut coeffs = poly_in_n(&mut f, degree);
    if symplectic {
        let scale = pow2(((p1 + p2) / 2) as i64).recip();
        for c in coeffs.iter_mut() {
            *c = c.scale(&scale);
        }
    }
    CoeffComparison {
        leading_extracted: coeffs[degree].clone(),
        leading_predicted: c1(p1, p2, &tau),
        subleading_extracted: coeffs[degree - 1].clone(),
        subleading_predicted: if symplectic {
            c2_prime(p1, p2, &tau)
        } else {
            c2(p1, p2, &tau)
        },
    }
}

/// One row of a numeric Wishart-limit comparison.
#[derive(Debug, Clone)]
pub struct LimitRow {
    pub n: usize,
    pub nu: i64,
    pub scaled_moment: f64,
    pub predicted: f64,
    pub abs_diff: f64,
}

/// Outcome of the numeric non-Hermitian-Wishart limit check: the deviation
/// of the scaled moment from `l1` must decay like `K/N`, with `K` fitted on
/// the smallest N and a slack factor applied to the rest.
#[derive(Debug, Clone)]
pub struct LimitReport {
    pub rows: Vec<LimitRow>,
    pub fitted_k: f64,
    pub slack: f64,
    pub passed: bool,
}

/// Compare exact Laguerre moments at `nu = round(alpha N)` against the
/// limiting coefficient. The symplectic moments carry the `2^{p1+p2}`
/// rescaling.
pub fn laguerre_limit_report(
    tau: &Rational,
    alpha: &Rational,
    p1: u32,
    p2: u32,
    symplectic: bool,
    n_list: &[usize],
    slack: f64,
) -> LimitReport {
    assert!(!n_list.is_empty());
    let predicted_exact = l1(p1, p2, &Scalar::Rat(tau.clone()), alpha);
    let predicted = predicted_exact.to_f64(None).unwrap();
    let mut rows = Vec::new();
    for &n in n_list {
        let nu = (alpha * Rational::from(n as u64)).round();
        let nu_r = Rational::from_bigint(nu.clone());
        let fam = WeightFamily::laguerre(Scalar::Rat(tau.clone()), nu_r).unwrap();
        let t = ATables::new(fam.clone());
        let m = if symplectic {
            let skew = crate::symplectic::SkewData::new(fam);
            crate::symplectic::moment(&t, &skew, p1, p2, n)
        } else {
            crate::complex::moment(&t, p1, p2, n)
        };
        let mut scale = Rational::from(n as u64).pow((p1 + p2 + 1) as i64);
        if symplectic {
            scale *= pow2((p1 + p2) as i64);
        }
        let scaled = m.div_rat(&scale).to_f64(None).unwrap();
        rows.push(LimitRow {
            n,
            nu: i64::try_from(&nu).unwrap_or(i64::MAX),
            scaled_moment: scaled,
            predicted,
            abs_diff: (scaled - predicted).abs(),
        });
    }
    rows.sort_by_key(|r| r.n);
    let fitted_k = rows[0].n as f64 * rows[0].abs_diff;
    let passed = rows
        .iter()
        .all(|r| r.abs_diff <= slack * fitted_k / r.n as f64 + 1e-15);
    LimitReport {
        rows,
        fitted_k,
        slack,
        passed,
    }
}
