use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense polynomial over `Z`, coefficients in ascending degree.
///
/// Trailing zero coefficients are never stored; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut v = vec![BigInt::zero(); n + 1];
        v[0] = -BigInt::one();
        v[n] += BigInt::one();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    /// Largest `k` with `t^k | p`.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `p / t^valuation(p)`.
    pub fn strip_monomial(&self) -> IntPoly {
        IntPoly { coeffs: self.coeffs[self.valuation()..].to_vec() }
    }

    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); k];
        v.extend_from_slice(&self.coeffs);
        IntPoly { coeffs: v }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> IntPoly {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect(),
        )
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// `p / content(p)` with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        IntPoly { coeffs: self.coeffs.iter().map(|x| x / &c).collect() }
    }

    pub fn reversed(&self) -> IntPoly {
        let mut v = self.strip_monomial().coeffs;
        v.reverse();
        Self::new(v)
    }

    /// Pseudo-remainder: `lc(d)^(deg p - deg d + 1) p = q d + r`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero(), "pseudo-division by zero");
        let dd = d.coeffs.len() - 1;
        let Some(dp) = self.degree() else { return IntPoly::default() };
        if dp < dd {
            return self.clone();
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut steps = dp - dd + 1;
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let top = r.last().cloned().unwrap_or_default();
            for x in r.iter_mut() {
                *x *= &lc;
            }
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &top * c;
            }
            steps -= 1;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        let mut out = Self::new(r);
        if steps > 0 {
            out = out.scale(&num_traits::pow(lc, steps));
        }
        out
    }

    /// Exact division over `Z`; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::default());
        }
        let dd = d.coeffs.len() - 1;
        let dp = self.coeffs.len() - 1;
        if dp < dd {
            return None;
        }
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); dp - dd + 1];
        for k in (0..=dp - dd).rev() {
            let top = &r[k + dd];
            if top.is_zero() {
                continue;
            }
            let (c, rem) = top.div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        r.iter().all(Zero::is_zero).then(|| Self::new(q))
    }

    /// Exact division by an integer; panics if not exact.
    pub fn div_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    let (q, r) = x.div_rem(c);
                    assert!(r.is_zero(), "inexact scalar division");
                    q
                })
                .collect(),
        }
    }

    /// Primitive gcd with positive leading coefficient (content ignored).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            core::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Square-free decomposition of the primitive part: returns
    /// `(f_1, f_2, ...)` with `pp(self) = ± ∏ f_i^i`, each `f_i` square-free
    /// and primitive. Trailing trivial factors are dropped.
    pub fn squarefree_decomposition(&self) -> Vec<IntPoly> {
        let f = self.primitive_part();
        if f.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        // a_i = gcd(a_{i-1}, a_{i-1}'), b_i = a_{i-1} / a_i collects the
        // distinct factors of multiplicity >= i.
        let mut bs = Vec::new();
        let mut a = f;
        while a.degree().unwrap_or(0) > 0 {
            let next = a.gcd(&a.derivative());
            bs.push(a.div_exact(&next).expect("gcd divides").primitive_part());
            a = next;
        }
        let mut out = Vec::with_capacity(bs.len());
        for i in 0..bs.len() {
            let fi = match bs.get(i + 1) {
                Some(nb) => bs[i].div_exact(nb).expect("nested radicals divide"),
                None => bs[i].clone(),
            };
            out.push(fi.primitive_part());
        }
        while out.last().is_some_and(|p| p.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Human-readable form using `var` as the indeterminate.
    pub fn display_with(&self, var: &str) -> String {
        let mut s = String::new();
        if self.is_zero() {
            s.push('0');
            return s;
        }
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let first = s.is_empty();
            let neg = c.is_negative();
            if first {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            if k == 0 || !a.is_one() {
                let _ = write!(s, "{a}");
            }
            match k {
                0 => {}
                1 => s.push_str(var),
                _ => {
                    let _ = write!(s, "{var}^{k}");
                }
            }
        }
        s
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("t"))
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::default();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        -&self
    }
}

impl Zero for IntPoly {
    fn zero() -> Self {
        IntPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for IntPoly {
    fn one() -> Self {
        IntPoly::from_i64(&[1])
    }
}
