use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::strip_cyclotomic;
use super::IntPoly;
use crate::error::{Error, Result};

/// Default bound on the certified error of `M(p)`.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// A Mahler measure together with a rigorous error radius.
#[derive(Clone, Debug, PartialEq)]
pub struct MahlerMeasure {
    pub value: f64,
    /// `|M(p) - value| <= error`, up to final f64 rounding. The tolerance is
    /// absolute for `M(p) <= 1` and relative above.
    pub error: f64,
    pub log_value: f64,
    pub log_error: f64,
    /// Set when `p` is a monomial times cyclotomic factors; then `value == 1`.
    pub kronecker: bool,
}

/// `M(p) = |lc(p)| ∏ max(1, |α|)`, certified to within [`DEFAULT_TOLERANCE`].
pub fn mahler_measure(p: &IntPoly) -> Result<MahlerMeasure> {
    mahler_measure_with_tolerance(p, DEFAULT_TOLERANCE)
}

pub fn mahler_measure_with_tolerance(p: &IntPoly, tol: f64) -> Result<MahlerMeasure> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, rest) = strip_cyclotomic(&p.strip_monomial());
    if rest.degree() == Some(0) {
        let c = rest.leading().abs();
        let kronecker = c.is_one();
        let log_value = ln_bigint(&c);
        return Ok(MahlerMeasure {
            value: c.to_f64().unwrap_or(f64::INFINITY),
            error: 0.0,
            log_value,
            log_error: 0.0,
            kronecker,
        });
    }
    let mut log_value = ln_bigint(&rest.content());
    let mut log_error = 0.0;
    let factors = rest.squarefree_decomposition();
    let total_deg: usize = factors
        .iter()
        .enumerate()
        .map(|(i, f)| (i + 1) * f.degree().unwrap_or(0))
        .sum();
    for (i, f) in factors.iter().enumerate() {
        if f.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mult = (i + 1) as f64;
        // Split the log tolerance in proportion to each factor's share of
        // the degree.
        let share = mult * f.degree().unwrap_or(0) as f64 / total_deg as f64;
        let budget = share * tol / 4.0;
        let (lv, le) = log_mahler_squarefree(f, budget)?;
        log_value += mult * lv;
        log_error += mult * le;
    }
    let value = libm::exp(log_value);
    let error = value * libm::expm1(log_error) + value * 4.0 * f64::EPSILON;
    if !(error <= tol * value.max(1.0)) {
        return Err(Error::NumericalFailure(alloc::format!(
            "Mahler measure error {error:e} exceeds tolerance {tol:e}"
        )));
    }
    Ok(MahlerMeasure { value, error, log_value, log_error, kronecker: false })
}

/// `log M(f)` and an error bound, for square-free `f` of positive degree.
fn log_mahler_squarefree(f: &IntPoly, log_tol: f64) -> Result<(f64, f64)> {
    let deg = f.degree().unwrap_or(0);
    let lc_log = ln_bigint(&f.leading().abs());
    if deg == 1 {
        // Single rational root, exactly.
        let root = BigRational::new(-f.coeff(0), f.coeff(1));
        let m = ln_rational(&root.abs()).max(0.0);
        return Ok((lc_log + m, 4.0 * f64::EPSILON));
    }
    let coeffs: Vec<f64> = f.coeffs().iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(Error::NumericalFailure("coefficients exceed f64 range".into()));
    }
    let approx = aberth(&coeffs);
    let mut roots: Vec<ExactComplex> = approx.iter().map(|z| ExactComplex::from_f64(*z)).collect();
    let df = f.derivative();
    let mut bits = 53usize;
    loop {
        let cert = certify(f, &roots);
        let (sum, err) = cert.log_plus_sum();
        if err <= log_tol || bits > 8192 {
            if err > log_tol {
                return Err(Error::NumericalFailure(alloc::format!(
                    "root certification stalled at error {err:e}"
                )));
            }
            return Ok((lc_log + sum, err));
        }
        bits *= 2;
        for z in roots.iter_mut() {
            for _ in 0..3 {
                *z = z.newton_step(f, &df).round_to(bits);
            }
        }
    }
}

/// Weierstrass-style inclusion disks `D(z_i, r_i)` for all roots.
struct Certificate {
    centers: Vec<Complex64>,
    radii: Vec<f64>,
}

impl Certificate {
    /// `Σ log⁺|α|` evaluated at the centers, with an error bound.
    ///
    /// Within each connected component of overlapping disks the roots can be
    /// matched to centers only up to the component's diameter.
    fn log_plus_sum(&self) -> (f64, f64) {
        let n = self.centers.len();
        let sum: f64 = self.centers.iter().map(|z| libm::log(z.norm()).max(0.0)).sum();
        let rounding = 4.0 * n as f64 * f64::EPSILON * (1.0 + sum.abs());
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], i: usize) -> usize {
            let mut r = i;
            while c[r] != r {
                r = c[r];
            }
            c[i] = r;
            r
        }
        for i in 0..n {
            for j in i + 1..n {
                if (self.centers[i] - self.centers[j]).norm() <= self.radii[i] + self.radii[j] {
                    let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                    comp[a] = b;
                }
            }
        }
        let mut radius_sum = vec![0.0; n];
        let mut size = vec![0usize; n];
        for i in 0..n {
            let r = find(&mut comp, i);
            radius_sum[r] += self.radii[i];
            size[r] += 1;
        }
        let mut err = 0.0;
        for i in 0..n {
            if size[i] == 1 {
                err += radius_sum[i];
            } else if size[i] > 1 {
                err += size[i] as f64 * 2.0 * radius_sum[i];
            }
        }
        (sum, err + rounding)
    }
}

fn certify(f: &IntPoly, roots: &[ExactComplex]) -> Certificate {
    let n = roots.len();
    let ln_n = libm::log(n as f64);
    let ln_lc = ln_bigint(&f.leading().abs());
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let v = roots[i].eval(f);
        let norm_sq = v.norm_sq();
        if norm_sq.is_zero() {
            radii.push(0.0);
            continue;
        }
        let mut log_r = ln_n + 0.5 * ln_rational(&norm_sq) - ln_lc;
        let mut degenerate = false;
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = roots[i].sub(&roots[j]).norm_sq();
            if d.is_zero() {
                degenerate = true;
                break;
            }
            log_r -= 0.5 * ln_rational(&d);
        }
        radii.push(if degenerate { f64::INFINITY } else { libm::exp(log_r) * (1.0 + 1e-12) });
    }
    Certificate { centers: roots.iter().map(ExactComplex::to_f64).collect(), radii }
}

/// Simultaneous Aberth–Ehrlich iteration for all roots of a real polynomial.
fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n].abs();
    let c0 = coeffs[0].abs().max(f64::MIN_POSITIVE);
    let radius = libm::pow(c0 / lead, 1.0 / n as f64);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let a = 2.0 * core::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::new(radius * libm::cos(a), radius * libm::sin(a))
        })
        .collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner_with_derivative(coeffs, z[i]);
            if p == Complex64::zero() {
                continue;
            }
            let w = p / dp;
            let s: Complex64 =
                (0..n).filter(|&j| j != i).map(|j| Complex64::one() / (z[i] - z[j])).sum();
            let step = w / (Complex64::one() - w * s);
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

fn horner_with_derivative(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

#[derive(Clone, Debug)]
struct ExactComplex {
    re: BigRational,
    im: BigRational,
}

impl ExactComplex {
    fn from_f64(z: Complex64) -> Self {
        let conv = |x: f64| BigRational::from_float(x).unwrap_or_else(BigRational::zero);
        ExactComplex { re: conv(z.re), im: conv(z.im) }
    }

    fn to_f64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(&self.re), rational_to_f64(&self.im))
    }

    fn sub(&self, o: &Self) -> Self {
        ExactComplex { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    fn mul(&self, o: &Self) -> Self {
        ExactComplex {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn eval(&self, f: &IntPoly) -> Self {
        let mut acc = ExactComplex { re: BigRational::zero(), im: BigRational::zero() };
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            acc.re += BigRational::from_integer(c.clone());
        }
        acc
    }

    fn newton_step(&self, f: &IntPoly, df: &IntPoly) -> Self {
        let p = self.eval(f);
        let d = self.eval(df);
        let den = d.norm_sq();
        if den.is_zero() {
            return self.clone();
        }
        // p / d = p * conj(d) / |d|^2
        let q = ExactComplex {
            re: (&p.re * &d.re + &p.im * &d.im) / &den,
            im: (&p.im * &d.re - &p.re * &d.im) / &den,
        };
        self.sub(&q)
    }

    fn round_to(&self, bits: usize) -> Self {
        let scale = BigRational::from_integer(BigInt::one() << bits);
        let r = |x: &BigRational| (x * &scale).round() / &scale;
        ExactComplex { re: r(&self.re), im: r(&self.im) }
    }
}

/// Natural log of a positive integer, valid far beyond the f64 range.
pub fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().unwrap_or(f64::NAN));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

/// Natural log of a positive rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

/// Nearest-ish f64 of a rational, including values outside the direct
/// conversion range of numerator and denominator.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    sign * libm::exp(ln_rational(&x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn golden_ratio_square() {
        let m = mahler_measure(&p(&[1, -3, 1])).unwrap();
        let expect = (3.0 + libm::sqrt(5.0)) / 2.0;
        assert!((m.value - expect).abs() <= 1e-12, "{m:?}");
        assert!(m.error <= 1e-9);
        assert!(!m.kronecker);
    }

    #[test]
    fn cyclotomic_is_exactly_one() {
        let m = mahler_measure(&IntPoly::x_pow_minus_one(12)).unwrap();
        assert_eq!(m.value, 1.0);
        assert_eq!(m.error, 0.0);
        assert!(m.kronecker);
        let m = mahler_measure(&p(&[0, 0, 1, 1])).unwrap();
        assert_eq!(m.value, 1.0);
    }

    #[test]
    fn linear_and_constant() {
        assert_eq!(mahler_measure(&p(&[-1, 2])).unwrap().value, 2.0);
        assert_eq!(mahler_measure(&p(&[-5])).unwrap().value, 5.0);
        assert!(mahler_measure(&p(&[])).is_err());
    }

    #[test]
    fn lehmer_polynomial() {
        let lehmer = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m = mahler_measure(&lehmer).unwrap();
        assert!((m.value - 1.176_280_818_259_917_5).abs() < 1e-12, "{m:?}");
    }

    #[test]
    fn repeated_factors() {
        // (t^2 - 3t + 1)^3 (t - 1)^2 (2t + 1)
        let cat = p(&[1, -3, 1]);
        let f = &(&(&cat * &cat) * &cat) * &(&(&p(&[-1, 1]) * &p(&[-1, 1])) * &p(&[1, 2]));
        let m = mahler_measure(&f).unwrap();
        let expect = 2.0 * libm::pow((3.0 + libm::sqrt(5.0)) / 2.0, 3.0);
        assert!((m.value - expect).abs() < 1e-9 * expect, "{m:?}");
    }

    #[test]
    fn clustered_roots_need_refinement() {
        // (t - 10)(t - 10 - 2^-40) scaled up: 2^80 (t-10)^2 - 2^40 (t - 10)
        let a = BigInt::one() << 40u32;
        let t10 = p(&[-10, 1]);
        let f = &(&t10 * &t10).scale(&a) - &t10;
        let m = mahler_measure(&f).unwrap();
        let expect = (a.to_f64().unwrap()) * 10.0 * (10.0 + libm::pow(2.0, -40.0));
        assert!((m.value - expect).abs() <= m.error + 1e-6 * expect);
        assert!(m.error <= 1e-9 * m.value);
    }

    #[test]
    fn big_logs() {
        let x = BigInt::one() << 5000u32;
        assert!((ln_bigint(&x) - 5000.0 * core::f64::consts::LN_2).abs() < 1e-9);
    }

    /// Independent oracle: `log M(f) = ∫ log|f(e^{2πiθ})| dθ` by a fine
    /// midpoint rule, for polynomials with no roots near the unit circle.
    fn jensen_integral(c: &[i64]) -> f64 {
        let n = 20000;
        let mut s = 0.0;
        for k in 0..n {
            let th = 2.0 * core::f64::consts::PI * (k as f64 + 0.5) / n as f64;
            let z = Complex64::new(libm::cos(th), libm::sin(th));
            let mut v = Complex64::zero();
            for &a in c.iter().rev() {
                v = v * z + a as f64;
            }
            s += libm::log(v.norm());
        }
        s / n as f64
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn agrees_with_jensen(c in proptest::collection::vec(-5i64..=5, 2..7)) {
            let f = p(&c);
            prop_assume!(f.degree().unwrap_or(0) >= 1);
            let m = mahler_measure(&f).unwrap();
            // Skip ones where the oracle quadrature is poor: roots close to
            // the unit circle.
            let coeffs: Vec<f64> = f.coeffs().iter().map(|x| x.to_f64().unwrap()).collect();
            let stripped: Vec<f64> = coeffs[f.valuation()..].to_vec();
            if stripped.len() > 1 {
                let roots = aberth(&stripped);
                prop_assume!(roots.iter().all(|z| (z.norm() - 1.0).abs() > 0.05));
            }
            let oracle = jensen_integral(&c);
            prop_assert!((m.log_value - oracle).abs() < 1e-6, "{} vs {}", m.log_value, oracle);
        }
    }
}
