use alloc::collections::btree_map::Entry;
use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `Z[t_1^±, ..., t_m^±]`.
///
/// Polynomials in fewer variables embed into ones with more: arithmetic and
/// equality pad missing trailing exponents with zeros.
#[derive(Clone, Default)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl LaurentPoly {
    pub fn zero_in(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero_in(0);
        p.add_term(Vec::new(), c);
        p
    }

    /// `c · t^exps`.
    pub fn monomial(c: BigInt, exps: Vec<i64>) -> Self {
        let mut p = Self::zero_in(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The variable `t_i` among `nvars`.
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(BigInt::one(), e)
    }

    /// Univariate, from `(exponent, coefficient)` pairs.
    pub fn from_terms_1d(terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero_in(1);
        for &(e, c) in terms {
            p.add_term(vec![e], BigInt::from(c));
        }
        p
    }

    pub fn from_int_poly(p: &IntPoly) -> Self {
        let mut out = Self::zero_in(1);
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(vec![k as i64], c.clone());
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[i64]) -> BigInt {
        if exps.len() != self.nvars {
            let n = exps.len().max(self.nvars);
            let mut e = exps.to_vec();
            e.resize(n, 0);
            return self.with_nvars(n).map(|p| p.coeff(&e)).unwrap_or_default();
        }
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        assert_eq!(exps.len(), self.nvars, "exponent length must match variable count");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Embeds into `nvars >= self.nvars()` variables, padding exponents.
    pub fn with_nvars(&self, nvars: usize) -> Result<Self> {
        if self.nvars == nvars {
            return Ok(self.clone());
        }
        if self.nvars > nvars {
            return Err(Error::VariableCount { expected: nvars, found: self.nvars });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.resize(nvars, 0);
                (e, c.clone())
            })
            .collect();
        Ok(LaurentPoly { nvars, terms })
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let n = a.nvars.max(b.nvars);
        let fix = |p: &Self| p.with_nvars(n).expect("padding up always succeeds");
        (fix(a), fix(b))
    }

    /// `t_i -> t_i^{-1}` for every variable: the involution of the group ring.
    pub fn conj(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    /// For each variable the smallest and largest exponent present.
    pub fn exponent_range(&self) -> Vec<(i64, i64)> {
        let mut r = vec![(i64::MAX, i64::MIN); self.nvars];
        for e in self.terms.keys() {
            for (k, &x) in e.iter().enumerate() {
                r[k].0 = r[k].0.min(x);
                r[k].1 = r[k].1.max(x);
            }
        }
        r
    }

    /// Univariate case: `(q, s)` with `self = t^s q(t)` and `q(0) != 0`.
    pub fn to_int_poly(&self) -> Result<(IntPoly, i64)> {
        if self.nvars > 1 {
            return Err(Error::VariableCount { expected: 1, found: self.nvars });
        }
        if self.terms.is_empty() {
            return Ok((IntPoly::default(), 0));
        }
        let p = self.with_nvars(1)?;
        let lo = p.terms.keys().map(|e| e[0]).min().unwrap_or(0);
        let hi = p.terms.keys().map(|e| e[0]).max().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &p.terms {
            v[(e[0] - lo) as usize] = c.clone();
        }
        Ok((IntPoly::new(v), lo))
    }

    /// Value at `t_k = e^{2πi θ_k}`.
    pub fn eval_torus(&self, theta: &[f64]) -> Complex64 {
        let mut acc = Complex64::zero();
        for (e, c) in &self.terms {
            let phase: f64 = e.iter().zip(theta).map(|(&k, &t)| k as f64 * t).sum();
            let a = 2.0 * core::f64::consts::PI * (phase - libm::floor(phase));
            let c = c.to_f64().unwrap_or(f64::NAN);
            acc += Complex64::new(c * libm::cos(a), c * libm::sin(a));
        }
        acc
    }

    /// Value at an integer point; negative powers need `±1` coordinates.
    pub fn eval_unit(&self, point: &[i64]) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (&k, &x) in e.iter().zip(point) {
                if k < 0 && x.abs() != 1 {
                    return Err(Error::InvalidArgument(
                        "negative exponent at a non-unit point".into(),
                    ));
                }
                term *= num_traits::pow(BigInt::from(x), k.unsigned_abs() as usize);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Formats with the given variable names (`t` for univariate by default).
    pub fn display_with(&self, names: &[&str]) -> String {
        let mut s = String::new();
        if self.terms.is_empty() {
            s.push('0');
            return s;
        }
        for (e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let constant = e.iter().all(|&x| x == 0);
            if constant || !a.is_one() {
                let _ = write!(s, "{a}");
            }
            let mut first_var = constant || !a.is_one();
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if first_var {
                    s.push('*');
                }
                first_var = true;
                s.push_str(names.get(k).copied().unwrap_or("?"));
                if x != 1 {
                    let _ = write!(s, "^{x}");
                }
            }
        }
        s
    }
}

pub(crate) fn default_names(nvars: usize) -> Vec<&'static str> {
    const MULTI: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    match nvars {
        0 | 1 => vec!["t"],
        n => MULTI.iter().copied().take(n).collect(),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_names(self.nvars)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({self})", self.nvars)
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.nvars == other.nvars {
            return self.terms == other.terms;
        }
        let (a, b) = LaurentPoly::aligned(self, other);
        a.terms == b.terms
    }
}

impl Eq for LaurentPoly {}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = LaurentPoly::aligned(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (mut a, b) = LaurentPoly::aligned(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut out = LaurentPoly::zero_in(a.nvars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *out.terms.entry(e).or_default() += ca * cb;
            }
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero_in(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::constant(BigInt::one())
    }
}
