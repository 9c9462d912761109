//! Moment queries: a family, indices, component and formula selector, with
//! dispatch to the right computation route and an automatic cross-check.

use crate::acoeff::ATables;
use crate::exact::Scalar;
use crate::symplectic::SkewData;
use crate::weights::WeightFamily;
use crate::Component;
use std::fmt;

/// Formula selector. `Auto` picks the general route and silently
/// cross-checks a second formula when that is cheap, failing loudly on any
/// mismatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    /// General orthogonal-polynomial sum (every family).
    Main,
    /// Kernel differentiation identity (Hermite, complex only).
    Kernel,
    /// Direct factorial sums (Hermite only).
    Explicit,
    /// Ginibre closed forms (Hermite at tau = 0).
    Closed,
}

impl Method {
    pub fn parse(s: &str) -> Option<Method> {
        match s {
            "auto" => Some(Method::Auto),
            "main" => Some(Method::Main),
            "cd" => Some(Method::Kernel),
            "appendixB" => Some(Method::Explicit),
            "closed-form" => Some(Method::Closed),
            _ => None,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Auto => "auto",
            Method::Main => "main",
            Method::Kernel => "cd",
            Method::Explicit => "appendixB",
            Method::Closed => "closed-form",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Debug)]
pub struct MomentQuery {
    pub family: WeightFamily,
    pub p1: u32,
    pub p2: u32,
    pub n: usize,
    pub component: Component,
    pub method: Method,
}

#[derive(Clone, Debug)]
pub struct MomentResult {
    pub value: Scalar,
    /// Which formula produced the value.
    pub formula: &'static str,
    pub cross_checked: bool,
}

#[derive(Debug, Clone)]
pub struct EvalError(pub String);

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl std::error::Error for EvalError {}

/// Shared computation context for one family instance.
pub struct Tables {
    pub a: ATables,
    pub skew: SkewData,
}

impl Tables {
    pub fn new(family: WeightFamily) -> Self {
        Tables {
            a: ATables::new(family.clone()),
            skew: SkewData::new(family),
        }
    }

    pub fn family(&self) -> &WeightFamily {
        self.a.family()
    }
}

pub fn evaluate(q: &MomentQuery) -> Result<MomentResult, EvalError> {
    let t = Tables::new(q.family.clone());
    evaluate_with(&t, q)
}

/// Evaluate against pre-built tables (reusable across queries of one family).
pub fn evaluate_with(t: &Tables, q: &MomentQuery) -> Result<MomentResult, EvalError> {
    if q.n == 0 {
        return Err(EvalError("N must be at least 1".into()));
    }
    let fam = q.family.clone();
    let is_hermite = fam.is_hermite();
    let tau = fam.tau();
    match (q.method, q.component) {
        (Method::Main, Component::Complex) => Ok(MomentResult {
            value: crate::complex::moment(&t.a, q.p1, q.p2, q.n),
            formula: "main",
            cross_checked: false,
        }),
        (Method::Main, Component::Symplectic) => Ok(MomentResult {
            value: crate::symplectic::moment(&t.a, &t.skew, q.p1, q.p2, q.n),
            formula: "main",
            cross_checked: false,
        }),
        (Method::Kernel, Component::Complex) => {
            require_hermite(&fam, "cd")?;
            if !fam.is_symbolic() && tau == Scalar::one() {
                return Err(EvalError(
                    "cd divides by (1 - tau^2): tau = 1 needs symbolic mode".into(),
                ));
            }
            Ok(MomentResult {
                value: crate::complex::cd_moment(&t.a, q.p1, q.p2, q.n),
                formula: "cd",
                cross_checked: false,
            })
        }
        (Method::Kernel, Component::Symplectic) => {
            require_hermite(&fam, "cd")?;
            Ok(MomentResult {
                value: crate::symplectic::recursive_moment(&t.a, q.p1, q.p2, q.n),
                formula: "cd",
                cross_checked: false,
            })
        }
        (Method::Explicit, Component::Complex) => {
            require_hermite(&fam, "appendixB")?;
            Ok(MomentResult {
                value: crate::complex::explicit_moment(&tau, q.p1, q.p2, q.n),
                formula: "appendixB",
                cross_checked: false,
            })
        }
        (Method::Explicit, Component::Symplectic) => {
            require_hermite(&fam, "appendixB")?;
            Ok(MomentResult {
                value: crate::symplectic::explicit_moment(&tau, q.p1, q.p2, q.n),
                formula: "appendixB",
                cross_checked: false,
            })
        }
        (Method::Closed, component) => {
            if !is_hermite || !tau.is_zero() {
                return Err(EvalError(
                    "closed-form requires the Hermite family at tau = 0".into(),
                ));
            }
            let value = match component {
                Component::Complex => {
                    Scalar::Rat(crate::complex::ginue_moment(q.p1, q.p2, q.n))
                }
                Component::Symplectic => {
                    Scalar::Rat(crate::symplectic::ginse_moment(q.p1, q.p2, q.n))
                }
            };
            Ok(MomentResult {
                value,
                formula: "closed-form",
                cross_checked: false,
            })
        }
        (Method::Auto, component) => {
            let value = match component {
                Component::Complex => crate::complex::moment(&t.a, q.p1, q.p2, q.n),
                Component::Symplectic => {
                    crate::symplectic::moment(&t.a, &t.skew, q.p1, q.p2, q.n)
                }
            };
            let mut cross_checked = false;
            if q.p1 + q.p2 <= 6 {
                let check = if is_hermite {
                    match component {
                        Component::Complex => {
                            crate::complex::explicit_moment(&tau, q.p1, q.p2, q.n)
                        }
                        Component::Symplectic => {
                            crate::symplectic::explicit_moment(&tau, q.p1, q.p2, q.n)
                        }
                    }
                } else if q.p2 == 0 {
                    match component {
                        Component::Complex => crate::complex::holomorphic_moment(&t.a, q.p1, q.n),
                        Component::Symplectic => {
                            crate::symplectic::holomorphic_moment(&t.a, &t.skew, q.p1, q.n)
                        }
                    }
                } else {
                    // conjugation symmetry
                    match component {
                        Component::Complex => crate::complex::moment(&t.a, q.p2, q.p1, q.n),
                        Component::Symplectic => {
                            crate::symplectic::moment(&t.a, &t.skew, q.p2, q.p1, q.n)
                        }
                    }
                };
                if check != value {
                    return Err(EvalError(format!(
                        "cross-check mismatch for ({}, {}, {}) {}: {} vs {}",
                        q.p1, q.p2, q.n, component, value, check
                    )));
                }
                cross_checked = true;
            }
            Ok(MomentResult {
                value,
                formula: "main",
                cross_checked,
            })
        }
    }
}

fn require_hermite(fam: &WeightFamily, what: &str) -> Result<(), EvalError> {
    if fam.is_hermite() {
        Ok(())
    } else {
        Err(EvalError(format!(
            "method {what} applies to the Hermite family only"
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn query(method: Method, component: Component) -> MomentQuery {
        MomentQuery {
            family: WeightFamily::hermite(Scalar::Rat(Rational::new(1, 2))).unwrap(),
            p1: 1,
            p2: 1,
            n: 3,
            component,
            method,
        }
    }

    #[test]
    fn all_methods_agree_for_hermite() {
        let expect = Scalar::Rat(Rational::new(27, 4));
        for m in [Method::Auto, Method::Main, Method::Kernel, Method::Explicit] {
            let r = evaluate(&query(m, Component::Complex)).unwrap();
            assert_eq!(r.value, expect, "method {m}");
        }
        let auto = evaluate(&query(Method::Auto, Component::Complex)).unwrap();
        assert!(auto.cross_checked);
    }

    #[test]
    fn closed_form_requires_ginibre_point() {
        assert!(evaluate(&query(Method::Closed, Component::Complex)).is_err());
        let mut q = query(Method::Closed, Component::Symplectic);
        q.family = WeightFamily::hermite(Scalar::Rat(Rational::zero())).unwrap();
        q.p1 = 2;
        q.p2 = 0;
        q.n = 5;
        let r = evaluate(&q).unwrap();
        assert_eq!(r.value, Scalar::from(-5i64));
    }

    #[test]
    fn method_gating() {
        let mut q = query(Method::Kernel, Component::Complex);
        q.family =
            WeightFamily::laguerre(Scalar::Rat(Rational::new(1, 2)), Rational::one()).unwrap();
        assert!(evaluate(&q).is_err());
        q.method = Method::Auto;
        assert!(evaluate(&q).is_ok());
    }

    #[test]
    fn method_strings_round_trip() {
        for s in ["auto", "main", "cd", "appendixB", "closed-form"] {
            assert_eq!(Method::parse(s).unwrap().to_string(), s);
        }
        assert!(Method::parse("bogus").is_none());
    }
}
