//! Combinatorial primitives: factorials, binomials, Pochhammer symbols,
//! Stirling numbers, Catalan and Narayana numbers.
//!
//! The zero conventions for out-of-range arguments live here and nowhere
//! else: `recip_factorial(n) = 0` for negative `n` (the reciprocal-gamma
//! convention) and `binomial(n, k) = 0` for `k < 0`, `k > n`, or `n < 0`.
//! Formula code relies on these to truncate its sums.

use super::rational::Rational;
use num_bigint::BigInt;
use num_traits::One;
use std::cell::RefCell;

thread_local! {
    static FACTORIALS: RefCell<Vec<BigInt>> = RefCell::new(vec![BigInt::one()]);
    static STIRLING: RefCell<Vec<Vec<BigInt>>> = RefCell::new(vec![vec![BigInt::one()]]);
}

/// Grow the per-thread factorial table so `factorial(0..=cap)` are lookups.
pub fn prewarm_factorials(cap: usize) {
    FACTORIALS.with(|f| {
        let mut table = f.borrow_mut();
        while table.len() <= cap {
            let next = table.last().unwrap() * table.len();
            table.push(next);
        }
    });
}

fn factorial_bigint(n: usize) -> BigInt {
    FACTORIALS.with(|f| {
        {
            let table = f.borrow();
            if n < table.len() {
                return table[n].clone();
            }
        }
        prewarm_factorials(n);
        f.borrow()[n].clone()
    })
}

/// `n!` for `n >= 0`. Panics on negative input; use `recip_factorial` where
/// the zero convention applies.
pub fn factorial(n: i64) -> Rational {
    assert!(n >= 0, "factorial of negative integer {n}");
    Rational::from_bigint(factorial_bigint(n as usize))
}

/// `1/n!`, with `1/Γ(n+1) = 0` for negative integer `n`.
pub fn recip_factorial(n: i64) -> Rational {
    if n < 0 {
        Rational::zero()
    } else {
        Rational::from_ratio(BigInt::one(), factorial_bigint(n as usize))
    }
}

/// Binomial coefficient; zero when `k < 0`, `k > n`, or `n < 0`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 || n < 0 || k > n {
        return Rational::zero();
    }
    let (n, k) = (n as usize, k as usize);
    Rational::from_ratio(
        factorial_bigint(n),
        factorial_bigint(k) * factorial_bigint(n - k),
    )
}

/// Generalised binomial `C(a, k) = a(a-1)...(a-k+1)/k!` for rational `a`;
/// zero when `k < 0`.
pub fn binomial_rat(a: &Rational, k: i64) -> Rational {
    if k < 0 {
        return Rational::zero();
    }
    let mut num = Rational::one();
    for i in 0..k {
        num *= a - Rational::from(i);
    }
    num * recip_factorial(k)
}

/// Double factorial `n!!` for `n >= -1`, with `0!! = (-1)!! = 1`.
pub fn double_factorial(n: i64) -> Rational {
    assert!(n >= -1, "double factorial of {n}");
    let mut acc = BigInt::one();
    let mut m = n;
    while m >= 2 {
        acc *= m;
        m -= 2;
    }
    Rational::from_bigint(acc)
}

/// `1/n!!` extended by the reciprocal-gamma convention: zero for negative
/// even `n`. Negative odd arguments below -1 do not occur in the formulas
/// handled here and panic.
pub fn recip_double_factorial(n: i64) -> Rational {
    if n >= -1 {
        double_factorial(n).recip()
    } else if n % 2 == 0 {
        Rational::zero()
    } else {
        panic!("reciprocal double factorial of negative odd {n}");
    }
}

/// Pochhammer symbol `(a)_k = a(a+1)...(a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= a + Rational::from(i);
    }
    acc
}

/// Signed Stirling number of the first kind `s(n, k)`: the coefficient of
/// `x^k` in the falling factorial `x(x-1)...(x-n+1)`. Zero out of range.
pub fn stirling_first(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    STIRLING.with(|s| {
        let mut table = s.borrow_mut();
        while table.len() <= n as usize {
            let m = table.len(); // building row for s(m, .)
            let prev = table[m - 1].clone();
            let mut row = vec![BigInt::from(0); m + 1];
            // s(m, k) = s(m-1, k-1) - (m-1) * s(m-1, k)
            for k in 0..=m {
                let mut v = BigInt::from(0);
                if k >= 1 {
                    v += &prev[k - 1];
                }
                if k < prev.len() {
                    v -= &prev[k] * (m - 1);
                }
                row[k] = v;
            }
            table.push(row);
        }
        Rational::from_bigint(table[n as usize][k as usize].clone())
    })
}

/// The `p`-th Catalan number `binom(2p, p)/(p+1)`.
pub fn catalan(p: u32) -> Rational {
    binomial(2 * p as i64, p as i64) / Rational::from(p + 1)
}

/// Narayana polynomial `N_p(y) = sum_{k=1}^{p} (1/p) C(p,k) C(p,k-1) y^k`.
pub fn narayana(p: u32, y: &Rational) -> Rational {
    assert!(p >= 1, "narayana requires p >= 1");
    let mut acc = Rational::zero();
    let mut ypow = Rational::one();
    for k in 1..=p as i64 {
        ypow *= y;
        acc += binomial(p as i64, k) * binomial(p as i64, k - 1) * &ypow;
    }
    acc / Rational::from(p)
}

/// `2^e` for any integer `e`.
pub fn pow2(e: i64) -> Rational {
    Rational::from(2i64).pow(e)
}

/// `j!/k!` as an exact rational, for any `j, k >= 0`.
pub fn factorial_ratio(j: usize, k: usize) -> Rational {
    let mut acc = Rational::one();
    if j >= k {
        for i in k + 1..=j {
            acc *= Rational::from(i as u64);
        }
        acc
    } else {
        for i in j + 1..=k {
            acc *= Rational::from(i as u64);
        }
        acc.recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(5), Rational::from(120i64));
        assert_eq!(factorial(0), Rational::one());
        assert_eq!(recip_factorial(-3), Rational::zero());
        assert_eq!(recip_factorial(4), Rational::new(1, 24));
    }

    #[test]
    #[should_panic]
    fn factorial_negative_panics() {
        factorial(-1);
    }

    #[test]
    fn binomial_zero_conventions() {
        assert_eq!(binomial(3, -1), Rational::zero());
        assert_eq!(binomial(3, 4), Rational::zero());
        assert_eq!(binomial(-2, 0), Rational::zero());
        assert_eq!(binomial(6, 2), Rational::from(15i64));
    }

    #[test]
    fn binomial_matches_factorial_ratio() {
        for n in 0..=12i64 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k),
                    factorial(n) / (factorial(k) * factorial(n - k))
                );
            }
        }
    }

    #[test]
    fn binomial_rational_top() {
        // C(1+1/2, 1) = 3/2
        let a = Rational::new(3, 2);
        assert_eq!(binomial_rat(&a, 1), Rational::new(3, 2));
        assert_eq!(binomial_rat(&a, -2), Rational::zero());
        // integer top agrees with the integer version
        for n in 0..8i64 {
            for k in -1..=n + 1 {
                assert_eq!(binomial_rat(&Rational::from(n), k), binomial(n, k));
            }
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(6), Rational::from(48i64));
        assert_eq!(double_factorial(7), Rational::from(105i64));
        assert_eq!(double_factorial(0), Rational::one());
        assert_eq!(double_factorial(-1), Rational::one());
        assert_eq!(recip_double_factorial(-2), Rational::zero());
        assert_eq!(recip_double_factorial(-4), Rational::zero());
        assert_eq!(recip_double_factorial(4), Rational::new(1, 8));
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&Rational::new(1, 2), 3), Rational::new(15, 8));
        assert_eq!(pochhammer(&Rational::from(5i64), 0), Rational::one());
    }

    #[test]
    fn stirling_small_values() {
        assert_eq!(stirling_first(3, 3), Rational::one());
        assert_eq!(stirling_first(3, 2), Rational::from(-3i64));
        assert_eq!(stirling_first(3, 1), Rational::from(2i64));
        assert_eq!(stirling_first(4, 2), Rational::from(11i64));
        assert_eq!(stirling_first(4, 5), Rational::zero());
    }

    #[test]
    fn stirling_generates_falling_factorial() {
        // sum_k s(n,k) x^k = x(x-1)...(x-n+1), evaluated at x = 0..=n
        for n in 0..=8u32 {
            for x in 0..=n as i64 {
                let mut lhs = Rational::zero();
                for k in 0..=n {
                    lhs += stirling_first(n, k) * Rational::from(x).pow(k as i64);
                }
                let mut rhs = Rational::one();
                for i in 0..n as i64 {
                    rhs *= Rational::from(x - i);
                }
                assert_eq!(lhs, rhs, "n={n} x={x}");
            }
        }
    }

    #[test]
    fn catalan_and_narayana() {
        assert_eq!(catalan(4), Rational::from(14i64));
        assert_eq!(catalan(0), Rational::one());
        // N_p(1) = C_p
        for p in 1..=12 {
            assert_eq!(narayana(p, &Rational::one()), catalan(p));
        }
        // N_2(y) = y + y^2 at a few sample points
        for y in [Rational::new(2, 1), Rational::new(-1, 3), Rational::new(7, 5)] {
            assert_eq!(narayana(2, &y), &y + &y * &y);
        }
    }
}
