//! Integer and Laurent polynomials, resultants and Mahler measures.

mod cyclotomic;
mod int_poly;
mod laurent;
mod mahler;
mod parse;
mod resultant;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use cyclotomic::{cyclotomic_poly, is_kronecker, strip_cyclotomic};
pub use int_poly::IntPoly;
pub use laurent::LaurentPoly;
pub use mahler::{mahler_measure, mahler_measure_with_tolerance, MahlerMeasure, DEFAULT_TOLERANCE};
pub use mahler::{ln_bigint, ln_rational, rational_to_f64};
pub use parse::{format_laurent, parse_laurent, parse_poly};
pub use resultant::{branched_cover_order, resultant};

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::ring::berkowitz;

/// `det(t I - A)`.
pub fn charpoly(a: &IntMatrix) -> Result<IntPoly> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    Ok(IntPoly::new(berkowitz(a.entries(), a.rows())))
}

/// Product of the nonzero eigenvalues of `A`, in absolute value: the lowest
/// nonzero coefficient of the characteristic polynomial.
pub fn detprime(a: &IntMatrix) -> Result<BigInt> {
    let cp = charpoly(a)?;
    Ok(cp.coeffs().iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigInt::one).abs())
}

#[derive(Clone, Debug, PartialEq)]
pub struct GelfondLindPoint {
    pub n: usize,
    /// `det'(1 - A^N)`
    pub detprime: BigInt,
    /// `log det'(1 - A^N) / N`
    pub value: f64,
}

/// `(1/N) log det'(1 - A^N)` for `N = 1..=n_max`; converges to
/// `log M(charpoly A)`.
pub fn gelfond_lind_sequence(a: &IntMatrix, n_max: usize) -> Result<Vec<GelfondLindPoint>> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let id = IntMatrix::identity(a.rows());
    let mut power = id.clone();
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        power = &power * a;
        let d = detprime(&(&id - &power))?;
        let value = ln_bigint(&d) / n as f64;
        out.push(GelfondLindPoint { n, detprime: d, value });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct MultivariateEstimate {
    /// Midpoint-rule value on the finer grid.
    pub estimate: f64,
    pub coarse: f64,
    /// `|estimate - coarse|`; not a rigorous bound.
    pub error_heuristic: f64,
    pub resolution: usize,
}

/// `log M(p) = ∫_{T^m} log|p|` by tensor midpoint rules at `resolution` and
/// `2 * resolution` points per axis.
pub fn mahler_multivariate_estimate(
    p: &LaurentPoly,
    resolution: usize,
) -> Result<MultivariateEstimate> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if resolution == 0 {
        return Err(Error::InvalidArgument("resolution must be positive".into()));
    }
    let coarse = torus_mean_log(p, resolution)?;
    let fine = torus_mean_log(p, 2 * resolution)?;
    Ok(MultivariateEstimate {
        estimate: fine,
        coarse,
        error_heuristic: (fine - coarse).abs(),
        resolution: 2 * resolution,
    })
}

fn torus_mean_log(p: &LaurentPoly, r: usize) -> Result<f64> {
    let m = p.nvars();
    if m == 0 {
        let c = p.coeff(&[]);
        return Ok(ln_bigint(&c.abs()));
    }
    let total = r.checked_pow(m as u32).ok_or_else(|| {
        Error::InvalidArgument("grid too large".into())
    })?;
    let mut idx = alloc::vec![0usize; m];
    let mut theta = alloc::vec![0.0f64; m];
    // Kahan summation
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for _ in 0..total {
        for k in 0..m {
            theta[k] = (idx[k] as f64 + 0.5) / r as f64;
        }
        let v = p.eval_torus(&theta).norm();
        if v == 0.0 {
            return Err(Error::NumericalFailure("grid point hits the zero set".into()));
        }
        let y = libm::log(v) - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        for k in 0..m {
            idx[k] += 1;
            if idx[k] < r {
                break;
            }
            idx[k] = 0;
        }
    }
    Ok(sum / total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cat() -> IntMatrix {
        IntMatrix::from_rows(&[[2i64, 1], [1, 1]])
    }

    #[test]
    fn cat_map_charpoly() {
        assert_eq!(charpoly(&cat()).unwrap(), IntPoly::from_i64(&[1, -3, 1]));
        assert!(charpoly(&IntMatrix::zeros(2, 3)).is_err());
    }

    /// `det(1 - A^N) = 2 - L_{2N}` for the cat map, computed from the Lucas
    /// recurrence rather than from matrix powers.
    fn lucas_oracle(n: usize) -> BigInt {
        let (mut a, mut b) = (BigInt::from(2), BigInt::from(1));
        for _ in 0..2 * n {
            let c = &a + &b;
            a = b;
            b = c;
        }
        (a - BigInt::from(2)).abs()
    }

    #[test]
    fn gelfond_lind_cat_map() {
        let seq = gelfond_lind_sequence(&cat(), 40).unwrap();
        let first: Vec<i64> = seq.iter().take(5).map(|p| i64::try_from(&p.detprime).unwrap()).collect();
        assert_eq!(first, [1, 5, 16, 45, 121]);
        for p in &seq {
            assert_eq!(p.detprime, lucas_oracle(p.n));
        }
        assert!((seq[2].value - libm::log(16.0) / 3.0).abs() < 1e-15);
        let target = libm::log((3.0 + libm::sqrt(5.0)) / 2.0);
        assert!((seq[39].value - target).abs() < 0.02);
    }

    #[test]
    fn detprime_skips_zero_eigenvalues() {
        // 1 - A^N is singular for a finite-order A.
        let rot = IntMatrix::from_rows(&[[0i64, -1, 0], [1, 0, 0], [0, 0, 2]]);
        let seq = gelfond_lind_sequence(&rot, 4).unwrap();
        // N = 4: eigenvalues of 1 - A^4 are 0, 0, -15.
        assert_eq!(seq[3].detprime, BigInt::from(15));
    }

    #[test]
    fn multivariate_smyth() {
        let p = parse_laurent("1 + x + y").unwrap();
        let est = mahler_multivariate_estimate(&p, 400).unwrap();
        // (3√3 / 4π) L(χ_{-3}, 2); the L-value by its alternating series.
        let mut l = 0.0;
        for k in 0..200_000u64 {
            let a = 3.0 * k as f64 + 1.0;
            l += 1.0 / (a * a) - 1.0 / ((a + 1.0) * (a + 1.0));
        }
        let oracle = 3.0 * libm::sqrt(3.0) / (4.0 * core::f64::consts::PI) * l;
        assert!((est.estimate - oracle).abs() < 1e-4, "{est:?} vs {oracle}");
        assert!(est.error_heuristic < 1e-3);
    }

    #[test]
    fn univariate_estimate_matches_exact() {
        let p = LaurentPoly::from_int_poly(&IntPoly::from_i64(&[1, -3, 1]));
        let est = mahler_multivariate_estimate(&p, 500).unwrap();
        let exact = mahler_measure(&IntPoly::from_i64(&[1, -3, 1])).unwrap().log_value;
        assert!((est.estimate - exact).abs() < 1e-9);
    }
}
