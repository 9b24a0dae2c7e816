use alloc::vec::Vec;

use num_traits::One;

use super::IntPoly;

pub(crate) fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn mobius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// The `n`-th cyclotomic polynomial, via `∏_{d|n} (t^d - 1)^{μ(n/d)}`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index starts at 1");
    let mut num = IntPoly::one();
    let mut den = IntPoly::one();
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        match mobius(n / d) {
            1 => num = &num * &IntPoly::x_pow_minus_one(d as usize),
            -1 => den = &den * &IntPoly::x_pow_minus_one(d as usize),
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

/// Every `n` with `φ(n) <= max_degree`, ascending.
pub(crate) fn indices_up_to_degree(max_degree: usize) -> Vec<u64> {
    // φ(n) >= sqrt(n/2), so n <= 2 d^2 suffices.
    let d = max_degree as u64;
    let bound = (2 * d * d).max(2);
    (1..=bound).filter(|&n| euler_phi(n) <= d).collect()
}

/// Divides out every cyclotomic factor of `p` exactly.
///
/// Returns the list of `(n, multiplicity)` found and the cofactor.
pub fn strip_cyclotomic(p: &IntPoly) -> (Vec<(u64, usize)>, IntPoly) {
    let mut rest = p.clone();
    let mut found = Vec::new();
    let Some(deg) = p.degree() else { return (found, rest) };
    for n in indices_up_to_degree(deg) {
        if rest.degree().unwrap_or(0) < euler_phi(n) as usize {
            continue;
        }
        let phi = cyclotomic_poly(n);
        let mut mult = 0;
        while let Some(q) = rest.div_exact(&phi) {
            rest = q;
            mult += 1;
            if rest.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        if mult > 0 {
            found.push((n, mult));
        }
    }
    (found, rest)
}

/// Kronecker's criterion: `p` is a monomial times a product of cyclotomic
/// polynomials, i.e. `M(p) = 1`.
pub fn is_kronecker(p: &IntPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    let (_, rest) = strip_cyclotomic(&p.strip_monomial());
    rest.degree() == Some(0) && rest.leading().magnitude().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        // Φ_105 is the first with a coefficient of absolute value 2.
        let c = cyclotomic_poly(105);
        assert_eq!(c.degree(), Some(48));
        assert!(c.coeffs().iter().any(|x| *x == (-2).into()));
    }

    #[test]
    fn product_of_phi_d_over_divisors() {
        for n in 1..40u64 {
            let mut prod = IntPoly::one();
            for d in (1..=n).filter(|d| n % d == 0) {
                prod = &prod * &cyclotomic_poly(d);
            }
            assert_eq!(prod, IntPoly::x_pow_minus_one(n as usize));
        }
    }

    #[test]
    fn kronecker() {
        assert!(is_kronecker(&IntPoly::x_pow_minus_one(12)));
        assert!(is_kronecker(&IntPoly::from_i64(&[0, 0, 1, -1, 1])));
        assert!(!is_kronecker(&IntPoly::from_i64(&[1, -3, 1])));
        assert!(!is_kronecker(&IntPoly::from_i64(&[-1, 2])));
        assert!(!is_kronecker(&IntPoly::from_i64(&[2, 0, 2])));
    }
}
