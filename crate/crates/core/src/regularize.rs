//! Zeta-regularized products of arithmetic progressions, the smoothed
//! "naive" estimator of a regularized product, and regularized integrals of
//! even polynomials against `log(x² + a²)`.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::l2_constants::SymbolicReal;

/// `∏^_{n≥1} c·n = c^{ζ(0)} exp(-ζ'(0)) = √(2π/c)`.
pub fn zeta_reg_product_scaled(c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {c}")));
    }
    Ok(libm::sqrt(2.0 * PI / c))
}

/// Eigenvalue sequence for [`smoothed_log_product`].
#[derive(Clone, Debug, PartialEq)]
pub enum RegProductSpec {
    /// `c·n` for `1 ≤ n` and `c·n ≤ lambda_max`.
    Progression { scale: f64, lambda_max: f64 },
    /// An explicit finite list of positive eigenvalues.
    Finite(Vec<f64>),
}

impl RegProductSpec {
    fn validate(&self) -> Result<()> {
        match self {
            RegProductSpec::Progression { scale, lambda_max } => {
                if !(*scale > 0.0) || !(*lambda_max >= *scale) {
                    return Err(Error::InvalidArgument(format!(
                        "need 0 < scale <= lambda_max, got scale {scale}, lambda_max {lambda_max}"
                    )));
                }
            }
            RegProductSpec::Finite(v) => {
                if let Some(x) = v.iter().find(|&&x| !(x > 0.0)) {
                    return Err(Error::InvalidArgument(format!("eigenvalue {x} is not positive")));
                }
            }
        }
        Ok(())
    }

    /// `Σ h(λ/T) log λ`, compensated.
    fn smoothed_sum(&self, h: Cutoff, t: f64) -> f64 {
        let mut sum = 0.0;
        let mut comp = 0.0;
        let mut add = |x: f64| {
            let y = x - comp;
            let s = sum + y;
            comp = (s - sum) - y;
            sum = s;
        };
        match self {
            RegProductSpec::Progression { scale, lambda_max } => {
                let top = libm::floor((lambda_max / scale).min(t * h.support() / scale)) as u64;
                for n in 1..=top {
                    let lam = scale * n as f64;
                    let w = h.eval(lam / t);
                    if w != 0.0 {
                        add(w * libm::log(lam));
                    }
                }
            }
            RegProductSpec::Finite(v) => {
                for &lam in v {
                    add(h.eval(lam / t) * libm::log(lam));
                }
            }
        }
        sum
    }
}

/// Smooth cutoffs equal to 1 on `[0, plateau]` and 0 from 1 on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Cutoff {
    /// Transition built from `exp(-1/u)`.
    Exp { plateau: f64 },
    /// Transition built from `exp(-1/u²)`.
    ExpSquared { plateau: f64 },
}

impl Default for Cutoff {
    fn default() -> Self {
        Cutoff::Exp { plateau: 0.5 }
    }
}

impl Cutoff {
    pub fn support(&self) -> f64 {
        1.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (plateau, psi): (f64, fn(f64) -> f64) = match *self {
            Cutoff::Exp { plateau } => (plateau, |u| if u > 0.0 { libm::exp(-1.0 / u) } else { 0.0 }),
            Cutoff::ExpSquared { plateau } => {
                (plateau, |u| if u > 0.0 { libm::exp(-1.0 / (u * u)) } else { 0.0 })
            }
        };
        if x <= plateau {
            return 1.0;
        }
        if x >= 1.0 {
            return 0.0;
        }
        let u = (x - plateau) / (1.0 - plateau);
        let a = psi(1.0 - u);
        a / (a + psi(u))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SmoothedFit {
    /// `exp(q(0, 0))`, the estimate of the regularized product.
    pub constant: f64,
    pub log_constant: f64,
    /// Coefficients of `T log T, T, log T, 1`.
    pub coefficients: [f64; 4],
    /// Root mean square residual of the fit.
    pub residual: f64,
    /// Ratio of extreme diagonal entries of the column-scaled `R`.
    pub condition: f64,
}

/// Geometric grid of `points` values of `T` over `[t_max/16, t_max]`.
pub fn default_t_grid(t_max: f64, points: usize) -> Vec<f64> {
    let points = points.max(4);
    let lo = t_max / 16.0;
    (0..points)
        .map(|i| lo * libm::pow(16.0, i as f64 / (points - 1) as f64))
        .collect()
}

const MAX_CONDITION: f64 = 1e12;

/// Fits `Σ h(λ_i/T) log λ_i ≈ a T log T + b T + c log T + d` over the grid and
/// returns `exp(d)`.
pub fn smoothed_log_product(spec: &RegProductSpec, h: Cutoff, t_grid: &[f64]) -> Result<SmoothedFit> {
    spec.validate()?;
    if t_grid.len() < 4 {
        return Err(Error::InvalidArgument("need at least four grid points".into()));
    }
    if let Some(t) = t_grid.iter().find(|&&t| !(t > 1.0) || !t.is_finite()) {
        return Err(Error::InvalidArgument(format!("grid value {t} must exceed 1")));
    }
    if let RegProductSpec::Progression { lambda_max, .. } = spec {
        if let Some(t) = t_grid.iter().find(|&&t| t * h.support() > *lambda_max) {
            return Err(Error::InvalidArgument(format!(
                "T = {t} puts the cutoff beyond the truncation {lambda_max}"
            )));
        }
    }
    let rows: Vec<[f64; 4]> = t_grid
        .iter()
        .map(|&t| {
            let l = libm::log(t);
            [t * l, t, l, 1.0]
        })
        .collect();
    let rhs: Vec<f64> = t_grid.iter().map(|&t| spec.smoothed_sum(h, t)).collect();
    let (coefficients, condition) = least_squares4(&rows, &rhs)?;
    let residual = libm::sqrt(
        rows.iter()
            .zip(&rhs)
            .map(|(r, y)| {
                let fit: f64 = r.iter().zip(&coefficients).map(|(a, b)| a * b).sum();
                (fit - y) * (fit - y)
            })
            .sum::<f64>()
            / rows.len() as f64,
    );
    let log_constant = coefficients[3];
    Ok(SmoothedFit { constant: libm::exp(log_constant), log_constant, coefficients, residual, condition })
}

/// Householder QR on the column-scaled design matrix.
fn least_squares4(rows: &[[f64; 4]], rhs: &[f64]) -> Result<([f64; 4], f64)> {
    let m = rows.len();
    let mut scale = [0.0f64; 4];
    for r in rows {
        for j in 0..4 {
            scale[j] = scale[j].max(r[j].abs());
        }
    }
    let mut a: Vec<[f64; 4]> = rows.iter().map(|r| core::array::from_fn(|j| r[j] / scale[j])).collect();
    let mut b = rhs.to_vec();
    for k in 0..4 {
        let norm = libm::sqrt((k..m).map(|i| a[i][k] * a[i][k]).sum::<f64>());
        if norm == 0.0 {
            return Err(Error::NumericalFailure("rank-deficient fit".into()));
        }
        let alpha = if a[k][k] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (k..m).map(|i| a[i][k]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in k..4 {
            let dot: f64 = (k..m).map(|i| v[i - k] * a[i][j]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in k..m {
                a[i][j] -= f * v[i - k];
            }
        }
        let dot: f64 = (k..m).map(|i| v[i - k] * b[i]).sum();
        let f = 2.0 * dot / vnorm2;
        for i in k..m {
            b[i] -= f * v[i - k];
        }
    }
    let diag: [f64; 4] = core::array::from_fn(|k| a[k][k].abs());
    let condition = diag.iter().cloned().fold(0.0, f64::max) / diag.iter().cloned().fold(f64::INFINITY, f64::min);
    if !(condition < MAX_CONDITION) {
        return Err(Error::NumericalFailure(format!("ill-conditioned fit (condition {condition:.3e})")));
    }
    let mut x = [0.0f64; 4];
    for k in (0..4).rev() {
        let s: f64 = (k + 1..4).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    for j in 0..4 {
        x[j] /= scale[j];
    }
    Ok((x, condition))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegIntegral {
    /// `∫^ (ix)^k log(x² + a²) dx` from the Beta-function continuation.
    pub lhs: SymbolicReal,
    /// `π ∫_{-a}^{a} x^k dx`.
    pub rhs: SymbolicReal,
    pub equal: bool,
}

fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// `Γ(m + 1/2) / √π` and `Γ(-(m + 1/2)) / √π`.
fn half_integer_gammas(m: u64) -> (BigRational, BigRational) {
    let four_m = BigInt::from(4).pow(m as u32);
    let pos = BigRational::new(factorial(2 * m), four_m.clone() * factorial(m));
    // Γ(1/2 - j) = (-4)^j j! / (2j)! · √π with j = m + 1.
    let j = m + 1;
    let mut neg = BigRational::new(BigInt::from(4).pow(j as u32) * factorial(j), factorial(2 * j));
    if j % 2 == 1 {
        neg = -neg;
    }
    (pos, neg)
}

/// Both sides of `∫^ p(ix) log(x² + a²) dx = π ∫_{-a}^a p(x) dx` for
/// `p(x) = x^k`.
///
/// The left side is `-d/ds|_{s=0}` of `a^{k+1-2s} s Γ(h) Γ(s-h) / Γ(s+1)`,
/// `h = (k+1)/2`, times the `i^k` coming from `p(ix)`.
pub fn reg_integral_even_poly(k: u32, a: &BigRational) -> Result<RegIntegral> {
    if k % 2 == 1 {
        return Err(Error::InvalidArgument(format!("k = {k} must be even")));
    }
    if !a.is_positive() {
        return Err(Error::InvalidArgument(format!("a = {a} must be positive")));
    }
    let a_pow = a.pow((k + 1) as i32);
    let (g_pos, g_neg) = half_integer_gammas(k as u64 / 2);
    // The s-derivative at 0 only sees the factor s; Γ(1) = 1. Product has a π.
    let derivative = &a_pow * &g_pos * &g_neg;
    let i_pow_k = if (k / 2) % 2 == 0 { BigRational::one() } else { -BigRational::one() };
    let lhs = SymbolicReal::new(-derivative * i_pow_k, 0, 1);
    let rhs = SymbolicReal::new(BigRational::from_integer(2.into()) * &a_pow / BigInt::from(k + 1), 0, 1);
    let equal = lhs == rhs;
    Ok(RegIntegral { lhs, rhs, equal })
}
