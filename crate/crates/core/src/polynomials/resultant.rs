use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// `Res(a, b) = lc(a)^{deg b} ∏_{a(α)=0} b(α)`, by the subresultant PRS.
///
/// Zero if either argument is zero.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    let (mut a, mut b, mut s) = if da < db {
        (b.clone(), a.clone(), if (da * db) % 2 == 1 { -1 } else { 1 })
    } else {
        (a.clone(), b.clone(), 1)
    };
    let (da, db) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
    if db == 0 {
        return BigInt::from(s) * num_traits::pow(b.leading(), da);
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_scalar(&ca);
    b = b.div_scalar(&cb);
    let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let (dega, degb) = (a.degree().unwrap_or(0), b.degree().unwrap_or(0));
        let delta = dega - degb;
        if dega % 2 == 1 && degb % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        if r.is_zero() {
            return BigInt::zero();
        }
        b = r.div_scalar(&(&g * num_traits::pow(h.clone(), delta)));
        g = a.leading();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta) / num_traits::pow(h, delta - 1)
        };
        if b.degree() == Some(0) {
            let dega = a.degree().unwrap_or(0);
            let hh = num_traits::pow(b.leading(), dega) / num_traits::pow(h, dega - 1);
            return BigInt::from(s) * t * hh;
        }
    }
}

/// `|H_1(N-fold cyclic branched cover)| = |Res(Δ, 1 + t + ... + t^{N-1})|`.
pub fn branched_cover_order(alexander: &IntPoly, n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("cover degree must be positive".into()));
    }
    check_alexander(alexander)?;
    let g = IntPoly::from_i64(&alloc::vec![1; n]);
    Ok(num_traits::Signed::abs(&resultant(alexander, &g)))
}

pub(crate) fn check_alexander(p: &IntPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let v = p.eval(&BigInt::one());
    if !v.magnitude().is_one() {
        return Err(Error::NotAlexander { value_at_one: alloc::format!("{v}") });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linalg::IntMatrix;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn sylvester(a: &IntPoly, b: &IntPoly) -> IntMatrix {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let size = m + n;
        let mut s = IntMatrix::zeros(size, size);
        for i in 0..n {
            for (k, c) in a.coeffs().iter().rev().enumerate() {
                s.set(i, i + k, c.clone());
            }
        }
        for i in 0..m {
            for (k, c) in b.coeffs().iter().rev().enumerate() {
                s.set(n + i, i + k, c.clone());
            }
        }
        s
    }

    #[test]
    fn small_examples() {
        let cat = IntPoly::from_i64(&[1, -3, 1]);
        assert_eq!(resultant(&cat, &IntPoly::from_i64(&[-1, 1])), BigInt::from(-1));
        assert_eq!(resultant(&cat, &IntPoly::from_i64(&[-1, 0, 1])), BigInt::from(-5));
        assert_eq!(
            resultant(&IntPoly::from_i64(&[-2, 1]), &IntPoly::from_i64(&[-5, 1])),
            BigInt::from(-3)
        );
    }

    #[test]
    fn trefoil_covers() {
        let d = IntPoly::from_i64(&[1, -1, 1]);
        let orders: Vec<_> = (1..=6).map(|n| branched_cover_order(&d, n).unwrap()).collect();
        let expect: Vec<BigInt> = [1, 3, 4, 3, 1, 0].iter().map(|&x| x.into()).collect();
        assert_eq!(orders, expect);
        assert!(branched_cover_order(&IntPoly::from_i64(&[-1, 3]), 2).is_err());
    }

    #[test]
    fn cat_map_covers() {
        let d = IntPoly::from_i64(&[1, -3, 1]);
        assert_eq!(branched_cover_order(&d, 2).unwrap(), BigInt::from(5));
        assert_eq!(branched_cover_order(&d, 3).unwrap(), BigInt::from(16));
    }

    fn poly_strategy() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec(-6i64..=6, 2..7)
            .prop_map(|mut v| {
                if *v.last().unwrap() == 0 {
                    *v.last_mut().unwrap() = 1;
                }
                IntPoly::from_i64(&v)
            })
    }

    proptest! {
        #[test]
        fn matches_sylvester_determinant(a in poly_strategy(), b in poly_strategy()) {
            prop_assert_eq!(resultant(&a, &b), sylvester(&a, &b).det().unwrap());
        }
    }
}
