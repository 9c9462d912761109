//! Dense univariate polynomials in the non-Hermiticity parameter.
//!
//! Coefficients are stored in ascending degree order; the vector is empty for
//! the zero polynomial and otherwise ends in a nonzero coefficient. Printed
//! and parsed with the variable letter `t`, e.g. `"1/2 + 3*t^2"`.

use super::rational::Rational;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TauPoly {
    coeffs: Vec<Rational>,
}

impl TauPoly {
    pub fn zero() -> Self {
        TauPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        TauPoly::constant(Rational::one())
    }

    /// The indeterminate `t`.
    pub fn var() -> Self {
        TauPoly {
            coeffs: vec![Rational::zero(), Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        TauPoly::from_coeffs(vec![c])
    }

    /// `c * t^deg`.
    pub fn monomial(c: Rational, deg: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        TauPoly::from_coeffs(coeffs)
    }

    /// Coefficients in ascending degree order; trailing zeros are stripped.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = TauPoly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rational) -> TauPoly {
        if c.is_zero() {
            return TauPoly::zero();
        }
        TauPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Substitute `t := x` (Horner evaluation).
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> TauPoly {
        let mut acc = TauPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division: returns `q` with `self = q * den`, or `None` if the
    /// remainder is nonzero. Panics if `den` is zero.
    pub fn div_exact(&self, den: &TauPoly) -> Option<TauPoly> {
        assert!(!den.is_zero(), "polynomial division by zero");
        if self.is_zero() {
            return Some(TauPoly::zero());
        }
        let dd = den.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        let lead = den.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let q = &rem[i] / &lead;
            for j in 0..=dd {
                let delta = &q * &den.coeffs[j];
                rem[i - dd + j] -= &delta;
            }
            quot[i - dd] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(TauPoly::from_coeffs(quot))
    }
}

impl Add<&TauPoly> for &TauPoly {
    type Output = TauPoly;
    fn add(self, rhs: &TauPoly) -> TauPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        TauPoly::from_coeffs(coeffs)
    }
}

impl Sub<&TauPoly> for &TauPoly {
    type Output = TauPoly;
    fn sub(self, rhs: &TauPoly) -> TauPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        TauPoly::from_coeffs(coeffs)
    }
}

impl Mul<&TauPoly> for &TauPoly {
    type Output = TauPoly;
    fn mul(self, rhs: &TauPoly) -> TauPoly {
        if self.is_zero() || rhs.is_zero() {
            return TauPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TauPoly::from_coeffs(coeffs)
    }
}

impl Neg for &TauPoly {
    type Output = TauPoly;
    fn neg(self) -> TauPoly {
        TauPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TauPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error parsing a polynomial from text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseTauPolyError(pub String);

impl fmt::Display for ParseTauPolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid polynomial: {}", self.0)
    }
}
impl std::error::Error for ParseTauPolyError {}

impl FromStr for TauPoly {
    type Err = ParseTauPolyError;

    /// Parses the `Display` format: terms `a/b`, `a/b*t^k`, `t^k`, `t`,
    /// joined by `+`/`-`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseTauPolyError(s.to_string());
        let mut terms: Vec<(Rational, usize)> = Vec::new();
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(err());
        }
        let mut sign = Rational::one();
        if let Some(r) = rest.strip_prefix('-') {
            sign = -Rational::one();
            rest = r.trim_start();
        } else if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
        }
        loop {
            // term ends at the next top-level ' + ' or ' - '
            let end = rest
                .char_indices()
                .find(|&(i, c)| {
                    (c == '+' || c == '-') && rest[..i].ends_with(' ')
                })
                .map(|(i, _)| i);
            let (term, tail) = match end {
                Some(i) => (rest[..i].trim(), Some(&rest[i..])),
                None => (rest.trim(), None),
            };
            terms.push(parse_term(term, &sign).ok_or_else(err)?);
            match tail {
                None => break,
                Some(t) => {
                    sign = if t.starts_with('-') {
                        -Rational::one()
                    } else {
                        Rational::one()
                    };
                    rest = t[1..].trim_start();
                    if rest.is_empty() {
                        return Err(err());
                    }
                }
            }
        }
        let deg = terms.iter().map(|&(_, d)| d).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (c, d) in terms {
            coeffs[d] += c;
        }
        Ok(TauPoly::from_coeffs(coeffs))
    }
}

fn parse_term(term: &str, sign: &Rational) -> Option<(Rational, usize)> {
    let (coeff_str, var_str) = match term.split_once('*') {
        Some((c, v)) => (c.trim(), Some(v.trim())),
        None => {
            if term.starts_with('t') {
                ("1", Some(term))
            } else {
                (term, None)
            }
        }
    };
    let coeff: Rational = coeff_str.parse().ok()?;
    let deg = match var_str {
        None => 0,
        Some("t") => 1,
        Some(v) => {
            let e = v.strip_prefix("t^")?;
            e.parse::<usize>().ok()?
        }
    };
    Some((sign * coeff, deg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> TauPoly {
        TauPoly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    #[test]
    fn canonical_zero() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 2]);
        let b = p(&[3, 0, 1]);
        assert_eq!(&a + &b, p(&[4, 2, 1]));
        assert_eq!(&a * &b, p(&[3, 6, 1, 2]));
        assert_eq!(&(&a * &b) - &(&b * &a), TauPoly::zero());
    }

    #[test]
    fn exact_division() {
        // (1 - t^4) / (1 - t^2) = 1 + t^2
        let num = p(&[1, 0, 0, 0, -1]);
        let den = p(&[1, 0, -1]);
        assert_eq!(num.div_exact(&den), Some(p(&[1, 0, 1])));
        assert_eq!(TauPoly::zero().div_exact(&den), Some(TauPoly::zero()));
        // 1 + t has no exact quotient by 1 - t^2
        assert_eq!(p(&[1, 0, 1]).div_exact(&den), None);
    }

    #[test]
    fn display_format() {
        assert_eq!(p(&[0]).to_string(), "0");
        assert_eq!(p(&[1, 0, 3]).to_string(), "1 + 3*t^2");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
        assert_eq!(
            TauPoly::from_coeffs(vec![
                Rational::new(1, 2),
                Rational::zero(),
                Rational::new(-3, 4),
            ])
            .to_string(),
            "1/2 - 3/4*t^2"
        );
    }

    #[test]
    fn parse_round_trip() {
        let polys = [
            p(&[0]),
            p(&[5]),
            p(&[0, 1]),
            p(&[-1, 0, 2, 7]),
            TauPoly::from_coeffs(vec![
                Rational::new(-1, 2),
                Rational::new(22, 7),
                Rational::new(0, 1),
                Rational::new(-5, 3),
            ]),
        ];
        for q in polys {
            let s = q.to_string();
            let back: TauPoly = s.parse().unwrap();
            assert_eq!(back, q, "round trip of {s}");
        }
        assert!("".parse::<TauPoly>().is_err());
        assert!("t^".parse::<TauPoly>().is_err());
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-40i64..=40, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn arb_poly() -> impl Strategy<Value = TauPoly> {
        proptest::collection::vec(arb_rational(), 0..6).prop_map(TauPoly::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_distributivity(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            let lhs = &(&f + &g) * &h;
            let rhs = &(&f * &h) + &(&g * &h);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_commutativity_and_associativity(f in arb_poly(), g in arb_poly(), h in arb_poly()) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        }

        #[test]
        fn substitution_is_ring_homomorphism(f in arb_poly(), g in arb_poly(), x in arb_rational()) {
            prop_assert_eq!((&f * &g).eval(&x), f.eval(&x) * g.eval(&x));
            prop_assert_eq!((&f + &g).eval(&x), f.eval(&x) + g.eval(&x));
        }

        #[test]
        fn display_parse_round_trip(f in arb_poly()) {
            let back: TauPoly = f.to_string().parse().unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn exact_division_inverts_multiplication(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!g.is_zero());
            let prod = &f * &g;
            prop_assert_eq!(prod.div_exact(&g), Some(f));
        }
    }
}
