//! Closed-form L²-torsion constants `t_S^(2)(ρ)` of the symmetric spaces
//! `H^{2n+1}`, `SL₂(C)/SU₂` and `SL₃(R)/SO₃`.

mod symbolic;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use symbolic::SymbolicReal;

use crate::error::{Error, Result};

/// `ζ(3)`.
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

/// `ζ(2)ζ(3)/(8π²) = ζ(3)/48`, the volume of `SL₃(Z)\SL₃(R)/SO₃` for the
/// trace-form metric.
pub fn sl3z_volume() -> f64 {
    ZETA3 / 48.0
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Highest weight `λ₁ ≥ … ≥ λ_{n+1} ≥ 0` of `SO_{2n+2}`; `a_j = λ_{n+1-j} + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSO {
    n: usize,
    lambda: Vec<i64>,
    a: Vec<i64>,
}

impl WeightSO {
    pub fn new(lambda: Vec<i64>) -> Result<Self> {
        if lambda.len() < 2 {
            return Err(Error::WeightOrder(format!("need n + 1 >= 2 entries, got {}", lambda.len())));
        }
        if lambda.windows(2).any(|w| w[0] < w[1]) || *lambda.last().unwrap() < 0 {
            return Err(Error::WeightOrder(format!("{lambda:?} is not non-increasing and non-negative")));
        }
        let n = lambda.len() - 1;
        let a = (0..=n).map(|j| lambda[n - j] + j as i64).collect();
        Ok(WeightSO { n, lambda, a })
    }

    pub fn trivial(n: usize) -> Self {
        Self::new(vec![0; n.max(1) + 1]).expect("zero weight is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> &[i64] {
        &self.lambda
    }

    /// `a_j` for `j = 0..=n`, strictly increasing in `j`.
    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn strongly_acyclic(&self) -> bool {
        self.a[0] != 0
    }
}

/// `SU₂ × SU₂` weight `(p, q)`; `(a₁, a₀) = (p + q + 1, |p - q|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightSL2C {
    pub p: u32,
    pub q: u32,
}

impl WeightSL2C {
    pub fn new(p: u32, q: u32) -> Self {
        WeightSL2C { p, q }
    }

    pub fn a1(&self) -> i64 {
        self.p as i64 + self.q as i64 + 1
    }

    pub fn a0(&self) -> i64 {
        (self.p as i64 - self.q as i64).abs()
    }

    pub fn strongly_acyclic(&self) -> bool {
        self.p != self.q
    }

    /// The same representation seen through `SO_{3,1}`.
    pub fn to_so(&self) -> WeightSO {
        WeightSO::new(vec![self.a1() - 1, self.a0()]).expect("p + q >= |p - q|")
    }
}

/// `λ = p ε₁ + q ε₂ + r ε₃` with `p ≥ q ≥ r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeightSL3 {
    p: i64,
    q: i64,
    r: i64,
}

impl WeightSL3 {
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self> {
        if p < q || q < r {
            return Err(Error::WeightOrder(format!("need p >= q >= r, got ({p}, {q}, {r})")));
        }
        Ok(WeightSL3 { p, q, r })
    }

    pub fn pqr(&self) -> (i64, i64, i64) {
        (self.p, self.q, self.r)
    }

    /// `(A₁, A₂, A₃)`.
    pub fn a(&self) -> [BigRational; 3] {
        let (p, q, r) = (self.p, self.q, self.r);
        let half = |x: i64| BigRational::new(x.into(), 2.into());
        [half(p + 1 - q), half(p - r + 2), half(q - r + 1)]
    }

    /// `(C₁, C₂, C₃)`.
    pub fn c(&self) -> [BigRational; 3] {
        let (p, q, r) = (self.p, self.q, self.r);
        let third = |x: i64| BigRational::new(x.into(), 3.into());
        [third(p + q - 2 * r + 3), third(p + r - 2 * q), third(2 * p - q - r + 3)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    Hyperbolic(WeightSO),
    Sl2c(WeightSL2C),
    Sl3(WeightSL3),
}

impl Weight {
    /// `dim S`.
    pub fn symmetric_space_dim(&self) -> usize {
        match self {
            Weight::Hyperbolic(w) => 2 * w.n + 1,
            Weight::Sl2c(_) => 3,
            Weight::Sl3(_) => 5,
        }
    }

    /// `None` for `SL₃`, where no criterion is implemented.
    pub fn strongly_acyclic(&self) -> Option<bool> {
        match self {
            Weight::Hyperbolic(w) => Some(w.strongly_acyclic()),
            Weight::Sl2c(w) => Some(w.strongly_acyclic()),
            Weight::Sl3(_) => None,
        }
    }
}

/// Dense polynomial over `Q`, lowest degree first.
#[derive(Clone, Debug)]
struct QPoly(Vec<BigRational>);

impl QPoly {
    fn one() -> Self {
        QPoly(vec![BigRational::one()])
    }

    /// `self · (t² - c)`
    fn mul_t2_minus(&self, c: &BigRational) -> Self {
        let mut out = vec![BigRational::zero(); self.0.len() + 2];
        for (i, x) in self.0.iter().enumerate() {
            out[i + 2] += x;
            out[i] -= x * c;
        }
        QPoly(out)
    }

    fn scale(&self, c: &BigRational) -> Self {
        QPoly(self.0.iter().map(|x| x * c).collect())
    }

    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let z = BigRational::zero();
        QPoly((0..n).map(|i| self.0.get(i).unwrap_or(&z) + other.0.get(i).unwrap_or(&z)).collect())
    }

    fn antiderivative_at(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, c) in self.0.iter().enumerate().rev() {
            acc = (acc + c / q(i as i64 + 1)) * x;
        }
        acc
    }

    fn integrate(&self, lo: &BigRational, hi: &BigRational) -> BigRational {
        self.antiderivative_at(hi) - self.antiderivative_at(lo)
    }
}

/// `Π_k(t) = ∏_{j≠k} (t² - a_j²)/(a_k² - a_j²)`.
fn lagrange_even(a: &[i64], k: usize) -> QPoly {
    let ak2 = q(a[k] * a[k]);
    let mut p = QPoly::one();
    for (j, &aj) in a.iter().enumerate() {
        if j == k {
            continue;
        }
        let aj2 = q(aj * aj);
        p = p.mul_t2_minus(&aj2).scale(&(BigRational::one() / (&ak2 - &aj2)));
    }
    p
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).map(BigInt::from).product()
}

/// `E / F` with `E = ∏_{i<j}(a_j² - a_i²)`, `F = ∏_{i<j}(j² - i²)`.
fn weyl_ratio(a: &[i64]) -> BigRational {
    let mut e = BigInt::one();
    let mut f = BigInt::one();
    for j in 0..a.len() {
        for i in 0..j {
            e *= BigInt::from(a[j] * a[j] - a[i] * a[i]);
            f *= BigInt::from((j * j - i * i) as i64);
        }
    }
    BigRational::new(e, f)
}

/// `(-1)^n (n!/(2π^n)) (E/F) Σ_k ∫_0^{a_k} Π_k`.
pub fn t2_hyperbolic(w: &WeightSO) -> SymbolicReal {
    let a = &w.a;
    let zero = BigRational::zero();
    let sum = (0..=w.n).fold(BigRational::zero(), |acc, k| acc + lagrange_even(a, k).integrate(&zero, &q(a[k])));
    let mut coef = sum * weyl_ratio(a) * BigRational::new(factorial(w.n), 2.into());
    if w.n % 2 == 1 {
        coef = -coef;
    }
    SymbolicReal::new(coef, 0, -(w.n as i32))
}

/// `∫_{a_{k-1}}^{a_k} Q_k` for `k = 0..=n`, `Q_k = Π_k + … + Π_n`, `a_{-1} = 0`.
///
/// They sum to `Σ_k ∫_0^{a_k} Π_k`.
pub fn hyperbolic_monotonicity_integrals(w: &WeightSO) -> Vec<BigRational> {
    let a = &w.a;
    let pis: Vec<QPoly> = (0..=w.n).map(|k| lagrange_even(a, k)).collect();
    (0..=w.n)
        .map(|k| {
            let qk = pis[k..].iter().skip(1).fold(pis[k].clone(), |acc, p| acc.add(p));
            let lo = if k == 0 { BigRational::zero() } else { q(a[k - 1]) };
            qk.integrate(&lo, &q(a[k]))
        })
        .collect()
}

/// `-(1/(6π)) (a₁³ - a₀³ + 3 a₁ a₀ (a₁ - a₀))`.
pub fn t2_sl2c(w: WeightSL2C) -> SymbolicReal {
    let (a1, a0) = (BigInt::from(w.a1()), BigInt::from(w.a0()));
    let inner = &a1 * &a1 * &a1 - &a0 * &a0 * &a0 + BigInt::from(3) * &a1 * &a0 * (&a1 - &a0);
    SymbolicReal::new(BigRational::new(-inner, 6.into()), 0, -1)
}

/// `Σ_{k=1}^3 (-1)^{k+1} A_k |C_k| (3 C_k² - 4 A_k²)`.
pub fn sl3_alternating_sum(w: &WeightSL3) -> BigRational {
    let (a, c) = (w.a(), w.c());
    (0..3).fold(BigRational::zero(), |acc, k| {
        let term = &a[k] * c[k].abs() * (q(3) * &c[k] * &c[k] - q(4) * &a[k] * &a[k]);
        if k % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// `8A₁A₃C₁C₃ + 8A₂|C₂|·(A₃C₃ if C₂ ≥ 0, else A₁C₁)`.
pub fn sl3_factored_sum(w: &WeightSL3) -> BigRational {
    let (a, c) = (w.a(), w.c());
    let tail = if !c[1].is_negative() { &a[2] * &c[2] } else { &a[0] * &c[0] };
    q(8) * &a[0] * &a[2] * &c[0] * &c[2] + q(8) * &a[1] * c[1].abs() * tail
}

/// `(2√2/π²) · ¼ · Σ_k (-1)^{k+1} A_k |C_k| (3C_k² - 4A_k²)`.
pub fn t2_sl3(w: &WeightSL3) -> SymbolicReal {
    SymbolicReal::new(sl3_alternating_sum(w) / q(2), 1, -2)
}

pub fn t2(w: &Weight) -> SymbolicReal {
    match w {
        Weight::Hyperbolic(w) => t2_hyperbolic(w),
        Weight::Sl2c(w) => t2_sl2c(*w),
        Weight::Sl3(w) => t2_sl3(w),
    }
}

/// `c_{G,M} = |t_S^(2)(ρ)|`, after checking strong acyclicity and the sign
/// `(-1)^{(dim S - 1)/2} t_S^(2) > 0`.
pub fn growth_constant(w: &Weight) -> Result<SymbolicReal> {
    if w.strongly_acyclic() == Some(false) {
        let why = match w {
            Weight::Hyperbolic(_) => "a_0 = λ_{n+1} = 0",
            _ => "p = q",
        };
        return Err(Error::NotStronglyAcyclic(why.into()));
    }
    let t = t2(w);
    let expected_positive = ((w.symmetric_space_dim() - 1) / 2) % 2 == 0;
    if t.is_positive() != expected_positive || t.is_zero() {
        return Err(Error::NumericalFailure(format!("sign law fails for {w:?}: t = {t}")));
    }
    Ok(t.abs())
}

/// Predicted `lim log|H_tors| / vol` scaled by `volume`: `c_{G,M} · volume`.
pub fn predicted_growth(w: &Weight, volume: f64) -> Result<f64> {
    Ok(growth_constant(w)?.to_f64() * volume)
}
