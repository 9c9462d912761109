//! Expansion coefficients of `z^p p_k(z)` in the polynomial basis, computed
//! by three independent routes: repeated application of the three-term
//! recurrence, closed-form factorial sums, and composition of the classical
//! inversion and linearisation coefficients.
//!
//! The recursive route is the production path; the other two exist to verify
//! it and each other.

use crate::exact::comb::{
    binomial, binomial_rat, factorial, pochhammer, pow2, recip_factorial,
};
use crate::exact::{Rational, Scalar};
use crate::weights::WeightFamily;
use std::cell::RefCell;

/// Selects one of the three computation routes for `a_coeff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AMethod {
    Recursive,
    Explicit,
    Scaling,
}

/// Parity support set membership: for the Hermite and Gegenbauer families the
/// coefficient vanishes unless `j - k` has the parity of `p`.
fn in_support(family: &WeightFamily, p: u32, j: i64, k: usize) -> bool {
    if j < 0 || (j - k as i64).unsigned_abs() > p as u64 {
        return false;
    }
    match family {
        WeightFamily::Laguerre { .. } => true,
        _ => (j - k as i64 - p as i64) % 2 == 0,
    }
}

/// Memoized tables of the coefficients `(A^p)^j_k` for one family instance.
///
/// Row `k` of the table for power `p` holds the entries for
/// `j = k-p ..= k+p`; rows are built on demand from the table for `p-1`
/// using the recurrence, in O(p) per entry.
pub struct ATables {
    family: WeightFamily,
    tables: RefCell<Vec<Vec<Vec<Scalar>>>>,
}

impl ATables {
    pub fn new(family: WeightFamily) -> Self {
        ATables {
            family,
            tables: RefCell::new(vec![Vec::new()]),
        }
    }

    pub fn family(&self) -> &WeightFamily {
        &self.family
    }

    /// `(A^p)^j_k`; zero outside the support.
    pub fn a(&self, p: u32, j: i64, k: usize) -> Scalar {
        if !in_support(&self.family, p, j, k) {
            return Scalar::zero();
        }
        self.ensure(p as usize, k);
        let tables = self.tables.borrow();
        let d = (j - (k as i64 - p as i64)) as usize;
        tables[p as usize][k][d].clone()
    }

    fn ensure(&self, p: usize, k_max: usize) {
        let mut tables = self.tables.borrow_mut();
        while tables.len() <= p {
            tables.push(Vec::new());
        }
        // T_0 rows are the identity.
        while tables[0].len() <= k_max {
            tables[0].push(vec![Scalar::one()]);
        }
        for q in 1..=p {
            while tables[q].len() <= k_max {
                let k = tables[q].len();
                let prev = &tables[q - 1][k];
                let lookup = |j: i64| -> Scalar {
                    let lo = k as i64 - (q as i64 - 1);
                    if j < lo.max(0) || j > k as i64 + q as i64 - 1 {
                        return Scalar::zero();
                    }
                    prev[(j - lo) as usize].clone()
                };
                let mut row = Vec::with_capacity(2 * q + 1);
                for d in 0..=2 * q {
                    let j = k as i64 - q as i64 + d as i64;
                    if j < 0 {
                        row.push(Scalar::zero());
                        continue;
                    }
                    let bj = self.family.recurrence(j as usize).b;
                    let cj1 = self.family.recurrence(j as usize + 1).c;
                    let mut v = lookup(j - 1);
                    v += &bj * lookup(j);
                    v += &cj1 * lookup(j + 1);
                    row.push(v);
                }
                tables[q].push(row);
            }
        }
    }
}

/// `(A^p)^j_k` by the chosen route. All three routes agree exactly.
pub fn a_coeff(family: &WeightFamily, p: u32, j: i64, k: usize, method: AMethod) -> Scalar {
    match method {
        AMethod::Recursive => ATables::new(family.clone()).a(p, j, k),
        AMethod::Explicit => a_coeff_explicit(family, p, j, k),
        AMethod::Scaling => a_coeff_scaling(family, p, j, k),
    }
}

fn a_coeff_explicit(family: &WeightFamily, p: u32, j: i64, k: usize) -> Scalar {
    if !in_support(family, p, j, k) {
        return Scalar::zero();
    }
    let tau = family.tau();
    let (p, j, k) = (p as i64, j, k as i64);
    match family {
        WeightFamily::Hermite { .. } => {
            // tau^((p+k-j)/2) sum_l p! / (2^l l! ((p-k+j)/2 - l)!) C(k, (p+k-j)/2 - l)
            let mut sum = Rational::zero();
            for l in 0..=p / 2 {
                let term = factorial(p)
                    * pow2(-l)
                    * recip_factorial(l)
                    * recip_factorial((p - k + j) / 2 - l)
                    * binomial(k, (p + k - j) / 2 - l);
                sum += term;
            }
            tau.pow(((p + k - j) / 2) as u32).scale(&sum)
        }
        WeightFamily::Laguerre { nu, .. } => {
            let mut sum = Rational::zero();
            for l in 0..=p {
                let head = factorial(p) * recip_factorial(p - l)
                    * pochhammer(&(Rational::from(l) + nu + Rational::one()), (p - l) as u32);
                let s_lo = j.max(k).max(l);
                let s_hi = (j + k + l) / 2;
                let mut inner = Rational::zero();
                for s in s_lo..=s_hi {
                    inner += pochhammer(&(Rational::from(j) + nu + Rational::one()), (s - j) as u32)
                        * pow2(j + k + l - 2 * s)
                        * recip_factorial(s - j)
                        * recip_factorial(s - k)
                        * recip_factorial(s - l)
                        * recip_factorial(j + k + l - 2 * s);
                }
                sum += head * factorial(k) * inner;
            }
            tau.pow((p + k - j) as u32).scale(&sum)
        }
        WeightFamily::Gegenbauer { a, .. } => {
            let one = Rational::one();
            let lam = &one + a; // a+1
            let mut sum = Rational::zero();
            for l in 0..=p / 2 {
                let m1 = (k + p - j) / 2 - l;
                let m2 = (j + p - k) / 2 - l;
                let m3 = (j + k - p) / 2 + l;
                let m4 = (j + k + p) / 2 - l;
                let gate = recip_factorial(m1) * recip_factorial(m2) * recip_factorial(m3);
                if gate.is_zero() {
                    continue;
                }
                let norm = factorial(k) * pow2(j - k) * pochhammer(&lam, j as u32)
                    / pochhammer(&lam, k as u32);
                let head = factorial(p) * pow2(-p)
                    * (Rational::from(p - 2 * l) + a + &one)
                    * recip_factorial(l)
                    / pochhammer(&lam, (p + 1 - l) as u32);
                let mid = (Rational::from(j) + a + &one)
                    / (Rational::from((p - 2 * l + k + j) / 2) + a + &one);
                let nums = pochhammer(&lam, m1 as u32)
                    * pochhammer(&lam, m2 as u32)
                    * pochhammer(&lam, m3 as u32)
                    * pochhammer(&(Rational::from(2i64) * &lam), m4 as u32);
                let dens = pochhammer(&lam, m4 as u32)
                    * pochhammer(&(Rational::from(2i64) * &lam), j as u32);
                sum += norm * head * mid * gate * nums / dens;
            }
            tau.pow(((p + k - j) / 2) as u32).scale(&sum)
        }
    }
}

fn a_coeff_scaling(family: &WeightFamily, p: u32, j: i64, k: usize) -> Scalar {
    if !in_support(family, p, j, k) {
        return Scalar::zero();
    }
    let mut sum = Rational::zero();
    for l in 0..=p as i64 {
        let a = inversion_coeff(family, p, l);
        if a.is_zero() {
            continue;
        }
        sum += a * linearisation_coeff(family, l as u32, k as u32, j);
    }
    if sum.is_zero() {
        return Scalar::zero();
    }
    let tau = family.tau();
    let (p, k) = (p as i64, k as i64);
    // Convert from the classical normalisation of the real-line polynomials
    // to the monic planar one, picking up the alpha powers of the scaling.
    match family {
        WeightFamily::Hermite { .. } => {
            let factor = pow2((p + j - k) / 2) * sum;
            tau.pow(((p + k - j) / 2) as u32).scale(&factor)
        }
        WeightFamily::Laguerre { .. } => {
            let sign = if (k - j) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            let factor = sign * factorial(k) * recip_factorial(j) * sum;
            tau.pow((p + k - j) as u32).scale(&factor)
        }
        WeightFamily::Gegenbauer { a, .. } => {
            let lam = Rational::one() + a;
            let factor = factorial(k) * recip_factorial(j) * pow2(j - k)
                * pochhammer(&lam, j as u32)
                / pochhammer(&lam, k as u32)
                * sum;
            tau.pow(((p + k - j) / 2) as u32).scale(&factor)
        }
    }
}

/// Coefficient of the degree-`idx` classical polynomial in the expansion of
/// `x^n` over the family's classical real-line basis (Hermite `H`,
/// generalised Laguerre `L^nu`, Gegenbauer `C^(1+a)`). Zero out of range.
pub fn inversion_coeff(family: &WeightFamily, n: u32, idx: i64) -> Rational {
    let n = n as i64;
    if idx < 0 || idx > n {
        return Rational::zero();
    }
    match family {
        WeightFamily::Hermite { .. } => {
            if (n - idx) % 2 != 0 {
                return Rational::zero();
            }
            let l = (n - idx) / 2;
            factorial(n) * pow2(-n) * recip_factorial(l) * recip_factorial(idx)
        }
        WeightFamily::Laguerre { nu, .. } => {
            let sign = if idx % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            sign * factorial(n) * binomial_rat(&(Rational::from(n) + nu), n - idx)
        }
        WeightFamily::Gegenbauer { a, .. } => {
            if (n - idx) % 2 != 0 {
                return Rational::zero();
            }
            let l = (n - idx) / 2;
            let lam = Rational::one() + a;
            factorial(n) * pow2(-n) * (Rational::from(n) + &lam - Rational::from(2 * l))
                * recip_factorial(l)
                / pochhammer(&lam, (n + 1 - l) as u32)
        }
    }
}

/// Coefficient of the degree-`k` classical polynomial in the product of the
/// degree-`n` and degree-`m` classical polynomials. Zero out of range; the
/// Laguerre inner sum truncates through the reciprocal-factorial convention.
pub fn linearisation_coeff(family: &WeightFamily, n: u32, m: u32, k: i64) -> Rational {
    let (n, m) = (n as i64, m as i64);
    if k < 0 || k > n + m {
        return Rational::zero();
    }
    match family {
        WeightFamily::Hermite { .. } => {
            if (n + m - k) % 2 != 0 {
                return Rational::zero();
            }
            let s = (n + m - k) / 2;
            pow2(s) * factorial(s) * binomial(n, s) * binomial(m, s)
        }
        WeightFamily::Laguerre { nu, .. } => {
            let mut sum = Rational::zero();
            let s_lo = n.max(m).max(k);
            let s_hi = (n + m + k) / 2;
            for s in s_lo..=s_hi {
                let sign = if (k + n + m) % 2 == 0 {
                    Rational::one()
                } else {
                    -Rational::one()
                };
                sum += sign
                    * pow2(k + n + m - 2 * s)
                    * factorial(k)
                    * pochhammer(&(Rational::from(k) + nu + Rational::one()), (s - k) as u32)
                    * recip_factorial(s - k)
                    * recip_factorial(s - n)
                    * recip_factorial(s - m)
                    * recip_factorial(k + n + m - 2 * s);
            }
            sum
        }
        WeightFamily::Gegenbauer { a, .. } => {
            if (n + m - k) % 2 != 0 {
                return Rational::zero();
            }
            let l = (n + m - k) / 2;
            if l < 0 || l > n.min(m) {
                return Rational::zero();
            }
            let lam = Rational::one() + a;
            let two_lam = Rational::from(2i64) * &lam;
            let head = (Rational::from(n + m - 2 * l) + &lam)
                / (Rational::from(n + m - l) + &lam);
            head * pochhammer(&lam, l as u32)
                * pochhammer(&lam, (n - l) as u32)
                * pochhammer(&lam, (m - l) as u32)
                * pochhammer(&two_lam, (n + m - l) as u32)
                * factorial(n + m - 2 * l)
                * recip_factorial(l)
                * recip_factorial(n - l)
                * recip_factorial(m - l)
                / pochhammer(&lam, (n + m - l) as u32)
                / pochhammer(&two_lam, (n + m - 2 * l) as u32)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::TauPoly;

    fn hermite_sym() -> WeightFamily {
        WeightFamily::hermite(Scalar::tau()).unwrap()
    }

    fn hermite_at(tau: Rational) -> WeightFamily {
        WeightFamily::hermite(Scalar::Rat(tau)).unwrap()
    }

    #[test]
    fn sign_convention_smoke() {
        // (-2)^odd must come out negative in the Laguerre linearisation.
        let fam = WeightFamily::laguerre(Scalar::tau(), Rational::zero()).unwrap();
        // L_1 L_1 = 2 L_2 - 4 L_1 + 2 ... check against direct expansion:
        // L_1 = 1-x, L_1^2 = 1 - 2x + x^2; L_2 = 1 - 2x + x^2/2;
        // so L_1^2 = 2 L_2 - ... solve: 2L_2 = 2 - 4x + x^2; L_1^2 - 2L_2 = -1 + 2x = -2L_1 + 1.
        // Hence L_1^2 = 2 L_2 - 2 L_1 + L_0.
        assert_eq!(linearisation_coeff(&fam, 1, 1, 2), Rational::from(2i64));
        assert_eq!(linearisation_coeff(&fam, 1, 1, 1), Rational::from(-2i64));
        assert_eq!(linearisation_coeff(&fam, 1, 1, 0), Rational::one());
    }

    #[test]
    fn hermite_inversion_x_squared() {
        // x^2 = (1/4) H_2 + (1/2) H_0
        let fam = hermite_sym();
        assert_eq!(inversion_coeff(&fam, 2, 2), Rational::new(1, 4));
        assert_eq!(inversion_coeff(&fam, 2, 0), Rational::new(1, 2));
        assert_eq!(inversion_coeff(&fam, 2, 1), Rational::zero());
        assert_eq!(inversion_coeff(&fam, 0, 0), Rational::one());
    }

    #[test]
    fn laguerre_inversion_x() {
        // nu = 0: x = L_0 - L_1
        let fam = WeightFamily::laguerre(Scalar::tau(), Rational::zero()).unwrap();
        assert_eq!(inversion_coeff(&fam, 1, 0), Rational::one());
        assert_eq!(inversion_coeff(&fam, 1, 1), -Rational::one());
    }

    #[test]
    fn hermite_linearisation_h1_squared() {
        // H_1^2 = H_2 + 2 H_0
        let fam = hermite_sym();
        assert_eq!(linearisation_coeff(&fam, 1, 1, 2), Rational::one());
        assert_eq!(linearisation_coeff(&fam, 1, 1, 0), Rational::from(2i64));
        assert_eq!(linearisation_coeff(&fam, 1, 1, 1), Rational::zero());
    }

    #[test]
    fn linearisation_by_constant_is_identity() {
        for fam in [
            hermite_sym(),
            WeightFamily::laguerre(Scalar::tau(), Rational::new(1, 2)).unwrap(),
            WeightFamily::gegenbauer(Rational::new(1, 2), Rational::new(1, 2)).unwrap(),
        ] {
            for m in 0..5u32 {
                for k in 0..=6i64 {
                    let expect = if k == m as i64 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(linearisation_coeff(&fam, 0, m, k), expect);
                }
            }
        }
    }

    #[test]
    fn gegenbauer_linearisation_c1_squared() {
        // parameter 1 (a = 0): C_1^2 = 4x^2 = C_2 + C_0
        let fam = WeightFamily::gegenbauer(Rational::new(1, 2), Rational::zero()).unwrap();
        assert_eq!(linearisation_coeff(&fam, 1, 1, 2), Rational::one());
        assert_eq!(linearisation_coeff(&fam, 1, 1, 0), Rational::one());
    }

    #[test]
    fn hermite_a_entries() {
        let t = ATables::new(hermite_sym());
        let tau = Scalar::tau();
        for k in 0..12usize {
            assert_eq!(t.a(1, k as i64 + 1, k), Scalar::one());
            assert_eq!(t.a(1, k as i64 - 1, k), tau.scale(&Rational::from(k as u64)));
            assert_eq!(
                t.a(2, k as i64, k),
                tau.scale(&Rational::from(2 * k as u64 + 1))
            );
            // (A^0) is the identity
            for j in -1..=k as i64 + 1 {
                let expect = if j == k as i64 { Scalar::one() } else { Scalar::zero() };
                assert_eq!(t.a(0, j, k), expect);
            }
        }
        // out of support
        assert_eq!(t.a(1, 0, 5), Scalar::zero());
        assert_eq!(t.a(3, -1, 1), Scalar::zero());
        assert_eq!(t.a(2, 3, 2), Scalar::zero());
    }

    #[test]
    fn three_methods_agree_small() {
        let families = vec![
            hermite_sym(),
            hermite_at(Rational::zero()),
            hermite_at(Rational::new(1, 3)),
            WeightFamily::laguerre(Scalar::tau(), Rational::new(1, 2)).unwrap(),
            WeightFamily::laguerre(Scalar::Rat(Rational::new(1, 2)), Rational::from(2i64)).unwrap(),
            WeightFamily::gegenbauer(Rational::new(1, 2), Rational::new(1, 2)).unwrap(),
            WeightFamily::gegenbauer(Rational::zero(), Rational::zero()).unwrap(),
        ];
        for fam in &families {
            let t = ATables::new(fam.clone());
            for p in 0..=4u32 {
                for k in 0..=8usize {
                    for j in k as i64 - p as i64..=k as i64 + p as i64 {
                        let rec = t.a(p, j, k);
                        let exp = a_coeff(fam, p, j, k, AMethod::Explicit);
                        let sca = a_coeff(fam, p, j, k, AMethod::Scaling);
                        assert_eq!(rec, exp, "{fam} explicit p={p} j={j} k={k}");
                        assert_eq!(rec, sca, "{fam} scaling p={p} j={j} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn composition_law_small() {
        // T_{p+q} = T_p T_q: sum_m (A^p)^m_k (A^q)^j_m = (A^{p+q})^j_k
        let fam = WeightFamily::laguerre(Scalar::tau(), Rational::new(1, 2)).unwrap();
        let t = ATables::new(fam);
        for (p, q) in [(1u32, 1u32), (2, 1), (2, 2)] {
            for k in 0..=5usize {
                for j in k as i64 - (p + q) as i64..=k as i64 + (p + q) as i64 {
                    let mut sum = Scalar::zero();
                    for m in (k as i64 - p as i64).max(0)..=k as i64 + p as i64 {
                        sum += t.a(p, m, k) * t.a(q, j, m as usize);
                    }
                    assert_eq!(sum, t.a(p + q, j, k), "p={p} q={q} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn hermite_tau_power_structure() {
        // Symbolic entries are monomials tau^((p+k-j)/2)
        let t = ATables::new(hermite_sym());
        for p in 1..=5u32 {
            for k in 0..=8usize {
                for j in (k as i64 - p as i64).max(0)..=k as i64 + p as i64 {
                    let v = t.a(p, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    let e = ((p as i64 + k as i64 - j) / 2) as usize;
                    let poly = v.to_poly();
                    let mono = TauPoly::monomial(poly.coeff(e), e);
                    assert_eq!(poly, mono, "p={p} j={j} k={k}");
                }
            }
        }
    }

    #[test]
    fn laguerre_tau_power_structure() {
        // Lowest tau power >= 0 and the overall tau^(p+k-j) factor visible:
        // entries are tau^(p+k-j) times a polynomial in tau of nonnegative powers.
        let fam = WeightFamily::laguerre(Scalar::tau(), Rational::new(1, 2)).unwrap();
        let t = ATables::new(fam);
        for p in 1..=4u32 {
            for k in 0..=6usize {
                for j in (k as i64 - p as i64).max(0)..=k as i64 + p as i64 {
                    let v = t.a(p, j, k);
                    if v.is_zero() {
                        continue;
                    }
                    let poly = v.to_poly();
                    let low = (p as i64 + k as i64 - j) as usize;
                    for i in 0..low.min(poly.coeffs().len()) {
                        assert!(poly.coeff(i).is_zero(), "p={p} j={j} k={k} i={i}");
                    }
                }
            }
        }
    }
}
