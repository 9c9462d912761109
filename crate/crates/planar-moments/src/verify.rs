//! Verification suites: every suite pins the index ranges, parameter grids
//! and tolerances of one acceptance-level claim, and reports pass/fail with
//! the first counterexamples.

use crate::acoeff::{a_coeff, AMethod, ATables};
use crate::asympt;
use crate::exact::comb::{binomial, catalan, narayana};
use crate::exact::{Rational, Scalar};
use crate::oracle;
use crate::query::Tables;
use crate::weights::WeightFamily;
use crate::Component;
use std::fmt;
use std::time::{Duration, Instant};

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(
                f,
                "PASS {} ({} checks, {:.2}s)",
                self.name,
                self.checks,
                self.elapsed.as_secs_f64()
            )
        } else {
            write!(
                f,
                "FAIL {} ({} checks, {} failures, {:.2}s; first: {})",
                self.name,
                self.checks,
                self.failures.len(),
                self.elapsed.as_secs_f64(),
                self.failures[0]
            )
        }
    }
}

struct Recorder {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
    start: Instant,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Recorder {
            name,
            checks: 0,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 16 {
            self.failures.push(msg());
        }
    }

    fn eq(&mut self, got: &Scalar, expect: &Scalar, msg: impl FnOnce() -> String) {
        self.check(got == expect, || format!("{}: {} != {}", msg(), got, expect));
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            checks: self.checks,
            failures: self.failures,
            elapsed: self.start.elapsed(),
        }
    }
}

/// The tau values every Hermite suite runs at, plus symbolic mode.
fn hermite_modes() -> Vec<WeightFamily> {
    vec![
        WeightFamily::hermite(Scalar::Rat(Rational::zero())).unwrap(),
        WeightFamily::hermite(Scalar::Rat(Rational::new(1, 3))).unwrap(),
        WeightFamily::hermite(Scalar::Rat(Rational::new(1, 2))).unwrap(),
        WeightFamily::hermite(Scalar::tau()).unwrap(),
    ]
}

fn index_pairs(p_sum_max: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p1 in 0..=p_sum_max {
        for p2 in 0..=p_sum_max - p1 {
            out.push((p1, p2));
        }
    }
    out
}

/// Complex cross-formula exactness: general sum vs kernel identity vs
/// explicit factorial sum, `p1+p2 <= 8`, `N <= 12`, all tau modes. Exact.
pub fn cross_formula_complex() -> SuiteReport {
    let mut rec = Recorder::new("cross-formula-complex");
    for fam in hermite_modes() {
        let t = ATables::new(fam.clone());
        let tau = fam.tau();
        for &(p1, p2) in &index_pairs(8) {
            for n in 1..=12 {
                let main = crate::complex::moment(&t, p1, p2, n);
                let cd = crate::complex::cd_moment(&t, p1, p2, n);
                let exp = crate::complex::explicit_moment(&tau, p1, p2, n);
                rec.eq(&cd, &main, || format!("cd {fam} ({p1},{p2},{n})"));
                rec.eq(&exp, &main, || format!("appendixB {fam} ({p1},{p2},{n})"));
            }
        }
    }
    rec.finish()
}

/// Symplectic cross-formula exactness: general sum vs recursion vs explicit
/// factorial sum, `p1+p2 <= 8`, `N <= 8`, all tau modes. Exact.
pub fn cross_formula_symplectic() -> SuiteReport {
    let mut rec = Recorder::new("cross-formula-symplectic");
    for fam in hermite_modes() {
        let t = Tables::new(fam.clone());
        let tau = fam.tau();
        for &(p1, p2) in &index_pairs(8) {
            for n in 1..=8 {
                let main = crate::symplectic::moment(&t.a, &t.skew, p1, p2, n);
                let rec_m = crate::symplectic::recursive_moment(&t.a, p1, p2, n);
                let exp = crate::symplectic::explicit_moment(&tau, p1, p2, n);
                rec.eq(&rec_m, &main, || format!("recursion {fam} ({p1},{p2},{n})"));
                rec.eq(&exp, &main, || format!("appendixB {fam} ({p1},{p2},{n})"));
            }
        }
    }
    rec.finish()
}

/// Closed-form reductions: tau = 0 gives the Ginibre values (both branches),
/// symbolic tau evaluated at 1 gives the Gaussian values. Exact.
pub fn closed_forms() -> SuiteReport {
    let mut rec = Recorder::new("closed-form");
    let zero = WeightFamily::hermite(Scalar::Rat(Rational::zero())).unwrap();
    let t0 = Tables::new(zero.clone());
    for &(p1, p2) in &index_pairs(8) {
        for n in 1..=10 {
            let c = crate::complex::moment(&t0.a, p1, p2, n);
            rec.eq(
                &c,
                &Scalar::Rat(crate::complex::ginue_moment(p1, p2, n)),
                || format!("ginue ({p1},{p2},{n})"),
            );
            let s = crate::symplectic::moment(&t0.a, &t0.skew, p1, p2, n);
            rec.eq(
                &s,
                &Scalar::Rat(crate::symplectic::ginse_moment(p1, p2, n)),
                || format!("ginse ({p1},{p2},{n})"),
            );
        }
    }
    // spot values
    rec.check(
        crate::complex::ginue_moment(2, 2, 5) == Rational::from(70i64),
        || "ginue (2,2,5) != 70".into(),
    );
    for n in 1..=10usize {
        rec.check(
            crate::symplectic::ginse_moment(2, 0, n) == Rational::from(-(n as i64)),
            || format!("ginse (2,0,{n}) != -{n}"),
        );
    }
    // Hermitian limit through symbolic mode
    let sym = Tables::new(WeightFamily::hermite(Scalar::tau()).unwrap());
    let one = Rational::one();
    for n in 1..=8 {
        for p in 0..=6u32 {
            let m = crate::complex::moment(&sym.a, 2 * p, 0, n).eval_tau(&one);
            rec.check(m == crate::complex::gue_moment(p, n), || {
                format!("gue p={p} n={n}")
            });
        }
        for p in 0..=4u32 {
            let m = crate::symplectic::moment(&sym.a, &sym.skew, 2 * p, 0, n).eval_tau(&one);
            rec.check(m == crate::symplectic::gse_moment(p, n), || {
                format!("gse p={p} n={n}")
            });
        }
    }
    rec.finish()
}

/// Scaling relation: `M^C_{2p,0,N}/tau^p` is tau-independent and equals the
/// Gaussian unitary moment, `p <= 6`, `N <= 12`. Exact.
pub fn scaling_relation() -> SuiteReport {
    let mut rec = Recorder::new("scaling");
    for tau in [
        Rational::new(1, 4),
        Rational::new(1, 2),
        Rational::new(3, 4),
    ] {
        let fam = WeightFamily::hermite(Scalar::Rat(tau.clone())).unwrap();
        let t = ATables::new(fam);
        for p in 0..=6u32 {
            for n in 1..=12 {
                let m = crate::complex::hermitian_moment(&t, 2 * p, n);
                rec.eq(
                    &m,
                    &Scalar::Rat(crate::complex::gue_moment(p, n)),
                    || format!("tau={tau} p={p} n={n}"),
                );
            }
        }
    }
    rec.finish()
}

/// Expansion coefficients: exact polynomial-in-N extraction reproduces the
/// leading and subleading coefficients for both components, `p1+p2 <= 6`,
/// as identities of polynomials in tau.
pub fn asymptotic_coefficients() -> SuiteReport {
    let mut rec = Recorder::new("asympt-coeffs");
    let fam = WeightFamily::hermite(Scalar::tau()).unwrap();
    for symplectic in [false, true] {
        for &(p1, p2) in &index_pairs(6) {
            let cmp = asympt::hermite_coeff_comparison(&fam, symplectic, p1, p2);
            rec.eq(&cmp.leading_extracted, &cmp.leading_predicted, || {
                format!("leading sympl={symplectic} ({p1},{p2})")
            });
            rec.eq(&cmp.subleading_extracted, &cmp.subleading_predicted, || {
                format!("subleading sympl={symplectic} ({p1},{p2})")
            });
        }
    }
    // spot value C1(2,2)
    let expect = Scalar::tau().pow(4).div_rat(&Rational::from(3i64))
        + Scalar::tau().pow(2).scale(&Rational::new(4, 3))
        + Scalar::Rat(Rational::new(1, 3));
    rec.eq(&asympt::c1(2, 2, &Scalar::tau()), &expect, || {
        "C1(2,2)".into()
    });
    rec.finish()
}

/// Numeric Wishart-ensemble limit: the scaled moments approach the limiting
/// coefficient at rate 1/N, both components.
pub fn laguerre_limits() -> SuiteReport {
    let mut rec = Recorder::new("laguerre-limit");
    let taus = [Rational::zero(), Rational::new(1, 2)];
    let alphas = [Rational::zero(), Rational::one()];
    for tau in &taus {
        for alpha in &alphas {
            for &(p1, p2) in &index_pairs(3) {
                if p1 + p2 == 0 {
                    continue;
                }
                let c = asympt::laguerre_limit_report(tau, alpha, p1, p2, false, &[50, 100, 200], 3.0);
                rec.check(c.passed, || {
                    format!("complex tau={tau} alpha={alpha} ({p1},{p2}): {:?}", c.rows)
                });
                let s = asympt::laguerre_limit_report(tau, alpha, p1, p2, true, &[25, 50], 3.0);
                rec.check(s.passed, || {
                    format!("symplectic tau={tau} alpha={alpha} ({p1},{p2}): {:?}", s.rows)
                });
            }
        }
    }
    rec.finish()
}

/// Conformal-map route: the elliptic-law moment equals the leading expansion
/// coefficient as a polynomial identity, all even `p1+p2 <= 12`.
pub fn elliptic_law() -> SuiteReport {
    let mut rec = Recorder::new("elliptic-law");
    let tau = Scalar::tau();
    for p1 in 0..=12u32 {
        for p2 in 0..=12 - p1 {
            if (p1 + p2) % 2 != 0 {
                continue;
            }
            rec.eq(
                &asympt::elliptic_law_moment(p1, p2, &tau),
                &asympt::c1(p1, p2, &tau),
                || format!("({p1},{p2})"),
            );
        }
    }
    rec.finish()
}

/// Genus expansion of the Gaussian unitary moments, `p <= 6`, `N <= 20`,
/// plus the planar (genus-zero) Catalan identity. Exact.
pub fn genus_expansion() -> SuiteReport {
    let mut rec = Recorder::new("genus");
    for p in 0..=6u32 {
        rec.check(asympt::genus_coeff(0, p) == catalan(p), || {
            format!("E_0({p}) != Catalan")
        });
        for n in 1..=20usize {
            let mut acc = Rational::zero();
            for g in 0..=(p + 1) / 2 {
                acc += asympt::genus_coeff(g, p)
                    * Rational::from(n as u64).pow(p as i64 + 1 - 2 * g as i64);
            }
            rec.check(acc == crate::complex::gue_moment(p, n), || {
                format!("genus sum p={p} N={n}")
            });
        }
    }
    rec.finish()
}

/// Hermitian-limit identities of the expansion coefficients at tau = 1.
pub fn hermitian_limits() -> SuiteReport {
    let mut rec = Recorder::new("hermitian-limits");
    let t = Scalar::tau();
    let one = Rational::one();
    for p in 0..=8u32 {
        rec.check(asympt::c1(p, p, &t).eval_tau(&one) == catalan(p), || {
            format!("C1({p},{p})|1 != Catalan")
        });
    }
    for alpha in [Rational::zero(), Rational::new(1, 2), Rational::one()] {
        let g = &one + &alpha;
        for &(p1, p2) in &index_pairs(5) {
            if p1 + p2 == 0 {
                continue;
            }
            rec.check(
                asympt::l1(p1, p2, &t, &alpha).eval_tau(&one) == narayana(p1 + p2, &g),
                || format!("L1({p1},{p2})|1 alpha={alpha} != Narayana"),
            );
        }
    }
    for &(p1, p2) in &index_pairs(8) {
        rec.check(asympt::c2(p1, p2, &t).eval_tau(&one).is_zero(), || {
            format!("C2({p1},{p2})|1 != 0")
        });
        if (p1 + p2) % 2 == 0 && p1 + p2 > 0 {
            let p = ((p1 + p2) / 2) as i64;
            let mut expect = Rational::zero();
            for l in 0..p {
                expect -= binomial(2 * p, l);
            }
            expect = expect / Rational::from(2i64);
            rec.check(asympt::c2_prime(p1, p2, &t).eval_tau(&one) == expect, || {
                format!("C2'({p1},{p2})|1")
            });
        }
    }
    rec.finish()
}

/// Fixed parameter grid for the quadrature oracle suite.
fn oracle_grid() -> Vec<(WeightFamily, f64)> {
    vec![
        (
            WeightFamily::hermite(Scalar::Rat(Rational::zero())).unwrap(),
            1e-7,
        ),
        (
            WeightFamily::hermite(Scalar::Rat(Rational::new(1, 2))).unwrap(),
            1e-7,
        ),
        (
            WeightFamily::laguerre(Scalar::Rat(Rational::zero()), Rational::one()).unwrap(),
            1e-5,
        ),
        (
            WeightFamily::laguerre(Scalar::Rat(Rational::new(1, 2)), Rational::new(1, 2)).unwrap(),
            1e-5,
        ),
        (
            WeightFamily::gegenbauer(Rational::new(1, 2), Rational::zero()).unwrap(),
            1e-7,
        ),
        (
            WeightFamily::gegenbauer(Rational::new(1, 3), Rational::one()).unwrap(),
            1e-7,
        ),
    ]
}

/// Quadrature oracle agreement for every family and component, `p1+p2 <= 4`,
/// `N <= 6`, including the density normalisation, plus the limiting-measure
/// quadrature against the Wishart limit coefficient.
pub fn oracle_agreement() -> SuiteReport {
    oracle_agreement_for(None)
}

/// Oracle suite restricted to one family name (`hermite`, `laguerre`,
/// `gegenbauer`); `None` runs the full grid.
pub fn oracle_agreement_for(family_filter: Option<&str>) -> SuiteReport {
    let mut rec = Recorder::new("oracle");
    let pairs: Vec<(u32, u32)> = index_pairs(4);
    let grid = oracle_grid().into_iter().filter(|(fam, _)| {
        family_filter.is_none_or(|name| fam.to_string().starts_with(name))
    });
    for (fam, tol) in grid {
        let t = Tables::new(fam.clone());
        for component in [Component::Complex, Component::Symplectic] {
            for n in 1..=6usize {
                let grid_n = match component {
                    Component::Complex => n,
                    Component::Symplectic => 2 * n,
                };
                let grid = oracle::QuadratureGrid::for_family(&fam, grid_n);
                // the full refinement-checked integral once per family at the
                // largest size; single-grid evaluation elsewhere
                let nums = if n == 6 {
                    oracle::quadrature_moments(&fam, n, component, &pairs, &grid, 1e-8)
                } else {
                    Ok(oracle::quadrature_moments_single(
                        &fam, n, component, &pairs, &grid,
                    ))
                };
                let nums = match nums {
                    Ok(v) => v,
                    Err(e) => {
                        rec.check(false, || format!("{e}"));
                        continue;
                    }
                };
                for (&(p1, p2), num) in pairs.iter().zip(&nums) {
                    let exact = match component {
                        Component::Complex => crate::complex::moment(&t.a, p1, p2, n),
                        Component::Symplectic => {
                            crate::symplectic::moment(&t.a, &t.skew, p1, p2, n)
                        }
                    };
                    let e = exact.to_f64(None).unwrap();
                    let ok = (num - e).abs() <= tol * e.abs().max(1.0);
                    rec.check(ok, || {
                        format!("{fam} {component} ({p1},{p2},{n}): exact {e} quad {num}")
                    });
                }
            }
        }
    }
    // limiting-measure quadrature vs the Wishart limit coefficient
    let mp_cases: &[(Rational, Rational)] = if matches!(family_filter, Some("hermite" | "gegenbauer"))
    {
        &[]
    } else {
        &[
            (Rational::zero(), Rational::zero()),
            (Rational::new(1, 2), Rational::zero()),
            (Rational::new(1, 2), Rational::one()),
        ]
    };
    for (tau, alpha) in mp_cases {
        for &(p1, p2) in &index_pairs(2) {
            let expect = asympt::l1(p1, p2, &Scalar::Rat(tau.clone()), alpha)
                .to_f64(None)
                .unwrap();
            let got = oracle::mp_law_moment(p1, p2, tau.to_f64(), alpha.to_f64(), 1);
            rec.check((got - expect).abs() <= 1e-5 * expect.abs().max(1.0), || {
                format!("mp-law ({p1},{p2}) tau={tau} alpha={alpha}: {got} vs {expect}")
            });
        }
    }
    rec.finish()
}

/// Coefficient-table machinery: three-method agreement, the composition law,
/// and the large-index asymptotics of the coefficients.
pub fn a_coefficients() -> SuiteReport {
    let mut rec = Recorder::new("a-coeff");
    let mut families = Vec::new();
    for tau in [Rational::zero(), Rational::new(1, 3), Rational::one()] {
        families.push(WeightFamily::hermite(Scalar::Rat(tau)).unwrap());
    }
    for tau in [Rational::zero(), Rational::new(1, 2)] {
        for nu in [Rational::zero(), Rational::new(1, 2), Rational::from(2i64)] {
            families.push(WeightFamily::laguerre(Scalar::Rat(tau.clone()), nu).unwrap());
        }
        for a in [Rational::zero(), Rational::new(1, 2)] {
            families.push(WeightFamily::gegenbauer(tau.clone(), a).unwrap());
        }
    }
    for fam in &families {
        let t = ATables::new(fam.clone());
        for p in 0..=6u32 {
            for k in 0..=20usize {
                for j in (k as i64 - p as i64)..=(k as i64 + p as i64) {
                    let rec_v = t.a(p, j, k);
                    let exp_v = a_coeff(fam, p, j, k, AMethod::Explicit);
                    let sca_v = a_coeff(fam, p, j, k, AMethod::Scaling);
                    rec.eq(&exp_v, &rec_v, || format!("explicit {fam} p={p} j={j} k={k}"));
                    rec.eq(&sca_v, &rec_v, || format!("scaling {fam} p={p} j={j} k={k}"));
                }
            }
        }
    }
    // composition law T_{p+q} = T_p T_q
    for fam in &families {
        let t = ATables::new(fam.clone());
        for p in 1..=3u32 {
            for q in 1..=3u32 {
                for k in 0..=12usize {
                    for j in (k as i64 - (p + q) as i64)..=(k as i64 + (p + q) as i64) {
                        let mut sum = Scalar::zero();
                        for m in (k as i64 - p as i64).max(0)..=(k as i64 + p as i64) {
                            let a1 = t.a(p, m, k);
                            if !a1.is_zero() {
                                sum += a1 * t.a(q, j, m as usize);
                            }
                        }
                        rec.eq(&sum, &t.a(p + q, j, k), || {
                            format!("composition {fam} p={p} q={q} j={j} k={k}")
                        });
                    }
                }
            }
        }
    }
    // large-index asymptotics of the Hermite coefficients
    let tau = Rational::new(1, 2);
    let fam = WeightFamily::hermite(Scalar::Rat(tau.clone())).unwrap();
    let k = 10_000usize;
    for p in 1..=4u32 {
        let mut r = -(p as i64);
        while r <= p as i64 {
            let a = a_coeff(&fam, p, k as i64 - r, k, AMethod::Explicit);
            let scale = Scalar::Rat(
                tau.pow((p as i64 + r) / 2)
                    * binomial(p as i64, (p as i64 + r) / 2)
                    * Rational::from(k as u64).pow((p as i64 + r) / 2),
            );
            let ratio = a
                .div_exact(&scale)
                .to_f64(None)
                .unwrap();
            rec.check((ratio - 1.0).abs() < 0.01, || {
                format!("asymptotics p={p} r={r}: ratio {ratio}")
            });
            r += 2;
        }
    }
    rec.finish()
}

/// All suite names recognised by `run_suite`, in execution order.
pub const SUITE_NAMES: &[&str] = &[
    "cross-formula",
    "closed-form",
    "scaling",
    "asympt-coeffs",
    "laguerre-limit",
    "elliptic-law",
    "genus",
    "hermitian-limits",
    "oracle",
    "a-coeff",
];

/// Run one suite by name (`cross-formula` bundles both components).
pub fn run_suite(name: &str) -> Option<Vec<SuiteReport>> {
    match name {
        "cross-formula" => Some(vec![cross_formula_complex(), cross_formula_symplectic()]),
        "closed-form" => Some(vec![closed_forms()]),
        "scaling" => Some(vec![scaling_relation()]),
        "asympt-coeffs" => Some(vec![asymptotic_coefficients()]),
        "laguerre-limit" => Some(vec![laguerre_limits()]),
        "elliptic-law" => Some(vec![elliptic_law()]),
        "genus" => Some(vec![genus_expansion()]),
        "hermitian-limits" => Some(vec![hermitian_limits()]),
        "oracle" => Some(vec![oracle_agreement()]),
        "a-coeff" => Some(vec![a_coefficients()]),
        _ => None,
    }
}

/// Run every suite.
pub fn run_all() -> Vec<SuiteReport> {
    SUITE_NAMES
        .iter()
        .flat_map(|name| run_suite(name).unwrap())
        .collect()
}
