use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `coef · (√2)^sqrt2_pow · π^pi_pow`, kept canonical: `sqrt2_pow ∈ {0, 1}`
/// and zero is stored with both powers zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolicReal {
    coef: BigRational,
    sqrt2_pow: u8,
    pi_pow: i32,
}

impl SymbolicReal {
    pub fn new(coef: BigRational, sqrt2_pow: u32, pi_pow: i32) -> Self {
        if coef.is_zero() {
            return Self::zero();
        }
        // (√2)^2 = 2
        let two = BigRational::from_integer(BigInt::from(2));
        let mut c = coef;
        for _ in 0..sqrt2_pow / 2 {
            c *= &two;
        }
        SymbolicReal { coef: c, sqrt2_pow: (sqrt2_pow % 2) as u8, pi_pow }
    }

    pub fn rational(coef: BigRational) -> Self {
        Self::new(coef, 0, 0)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::rational(BigRational::new(num.into(), den.into()))
    }

    pub fn zero() -> Self {
        SymbolicReal { coef: BigRational::zero(), sqrt2_pow: 0, pi_pow: 0 }
    }

    pub fn pi() -> Self {
        Self::new(BigRational::one(), 0, 1)
    }

    pub fn sqrt2() -> Self {
        Self::new(BigRational::one(), 1, 0)
    }

    pub fn coef(&self) -> &BigRational {
        &self.coef
    }

    pub fn sqrt2_pow(&self) -> u32 {
        self.sqrt2_pow as u32
    }

    pub fn pi_pow(&self) -> i32 {
        self.pi_pow
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.coef.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.coef.is_negative()
    }

    pub fn abs(&self) -> Self {
        SymbolicReal { coef: self.coef.abs(), ..self.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(&self.coef * c, self.sqrt2_pow as u32, self.pi_pow)
    }

    pub fn to_f64(&self) -> f64 {
        let c = self.coef.numer().to_f64().unwrap_or(f64::NAN) / self.coef.denom().to_f64().unwrap_or(f64::NAN);
        let s = if self.sqrt2_pow == 1 { core::f64::consts::SQRT_2 } else { 1.0 };
        c * s * libm::pow(core::f64::consts::PI, self.pi_pow as f64)
    }
}

impl Mul for &SymbolicReal {
    type Output = SymbolicReal;
    fn mul(self, rhs: &SymbolicReal) -> SymbolicReal {
        SymbolicReal::new(
            &self.coef * &rhs.coef,
            (self.sqrt2_pow + rhs.sqrt2_pow) as u32,
            self.pi_pow + rhs.pi_pow,
        )
    }
}

impl Neg for SymbolicReal {
    type Output = SymbolicReal;
    fn neg(self) -> SymbolicReal {
        SymbolicReal { coef: -self.coef, ..self }
    }
}

fn power(base: &str, k: u32) -> String {
    match k {
        1 => base.to_string(),
        2 => alloc::format!("{base}²"),
        3 => alloc::format!("{base}³"),
        _ => alloc::format!("{base}^{k}"),
    }
}

/// `-1/(6π)`, `31/(45π²)`, `√2/π²`, `55√2/(9π²)`.
impl fmt::Display for SymbolicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        if self.coef.is_negative() {
            f.write_str("-")?;
        }
        let num = self.coef.numer().abs();
        let den = self.coef.denom().clone();
        let mut top = String::new();
        if self.sqrt2_pow == 1 {
            top.push('√');
            top.push('2');
        }
        if self.pi_pow > 0 {
            top.push_str(&power("π", self.pi_pow as u32));
        }
        if !num.is_one() || top.is_empty() {
            top.insert_str(0, &num.to_string());
        }
        let mut factors = 0;
        let mut bottom = String::new();
        if !den.is_one() {
            bottom.push_str(&den.to_string());
            factors += 1;
        }
        if self.pi_pow < 0 {
            bottom.push_str(&power("π", self.pi_pow.unsigned_abs()));
            factors += 1;
        }
        match factors {
            0 => f.write_str(&top),
            1 => write!(f, "{top}/{bottom}"),
            _ => write!(f, "{top}/({bottom})"),
        }
    }
}
