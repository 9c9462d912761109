//! Structural invariants of the moment engines across all weight families:
//! conjugation symmetry, positivity of the diagonal moments, and the
//! decomposition of symplectic holomorphic moments into complex halves.

use planar_moments::exact::{Rational, Scalar};
use planar_moments::query::Tables;
use planar_moments::weights::WeightFamily;
use planar_moments::{complex, symplectic};

fn families() -> Vec<WeightFamily> {
    vec![
        WeightFamily::hermite(Scalar::Rat(Rational::zero())).unwrap(),
        WeightFamily::hermite(Scalar::Rat(Rational::new(1, 2))).unwrap(),
        WeightFamily::laguerre(Scalar::Rat(Rational::new(1, 2)), Rational::new(1, 2)).unwrap(),
        WeightFamily::laguerre(Scalar::Rat(Rational::new(1, 3)), Rational::from(2i64)).unwrap(),
        WeightFamily::gegenbauer(Rational::new(1, 2), Rational::new(1, 2)).unwrap(),
        WeightFamily::gegenbauer(Rational::new(1, 3), Rational::zero()).unwrap(),
    ]
}

#[test]
fn conjugation_symmetry_complex() {
    for fam in families() {
        let t = Tables::new(fam.clone());
        for p1 in 0..=8u32 {
            for p2 in 0..p1 {
                if p1 + p2 > 8 {
                    continue;
                }
                for n in 1..=10usize {
                    assert_eq!(
                        complex::moment(&t.a, p1, p2, n),
                        complex::moment(&t.a, p2, p1, n),
                        "{fam} ({p1},{p2},{n})"
                    );
                }
            }
        }
    }
}

#[test]
fn conjugation_symmetry_symplectic() {
    for fam in families() {
        let t = Tables::new(fam.clone());
        for p1 in 0..=6u32 {
            for p2 in 0..p1 {
                if p1 + p2 > 6 {
                    continue;
                }
                for n in 1..=6usize {
                    assert_eq!(
                        symplectic::moment(&t.a, &t.skew, p1, p2, n),
                        symplectic::moment(&t.a, &t.skew, p2, p1, n),
                        "{fam} ({p1},{p2},{n})"
                    );
                }
            }
        }
    }
}

#[test]
fn diagonal_moments_are_positive_rationals() {
    for fam in families() {
        let t = Tables::new(fam.clone());
        for p in 0..=4u32 {
            for n in 1..=6usize {
                for (what, m) in [
                    ("complex", complex::moment(&t.a, p, p, n)),
                    ("symplectic", symplectic::moment(&t.a, &t.skew, p, p, n)),
                ] {
                    let r = m
                        .as_rational()
                        .unwrap_or_else(|| panic!("{fam} {what} ({p},{p},{n}) not rational"));
                    assert!(r.is_positive(), "{fam} {what} ({p},{p},{n}) = {r}");
                }
            }
        }
    }
}

#[test]
fn zeroth_moment_counts_points() {
    for fam in families() {
        let t = Tables::new(fam.clone());
        for n in 1..=8usize {
            assert_eq!(complex::moment(&t.a, 0, 0, n), Scalar::from(n as i64));
            assert_eq!(
                symplectic::moment(&t.a, &t.skew, 0, 0, n),
                Scalar::from(n as i64)
            );
        }
    }
}

#[test]
fn symplectic_holomorphic_half_decomposition() {
    // M^H_{p,0,N} - (1/2) M^C_{p,0,2N} = -(1/2) sum_j mu_{N,j} (A^p)^{2N}_{2j}
    // with both sides computed through independent code paths.
    for fam in families() {
        let t = Tables::new(fam.clone());
        for p in 0..=6u32 {
            for n in 1..=5usize {
                let lhs = symplectic::moment(&t.a, &t.skew, p, 0, n)
                    - complex::moment(&t.a, p, 0, 2 * n).div_rat(&Rational::from(2i64));
                let mut corr = Scalar::zero();
                for j in 0..n {
                    corr += t.skew.mu(n, j) * t.a.a(p, 2 * n as i64, 2 * j);
                }
                assert_eq!(
                    lhs,
                    -corr.div_rat(&Rational::from(2i64)),
                    "{fam} p={p} n={n}"
                );
            }
        }
    }
}
