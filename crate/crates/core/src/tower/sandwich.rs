//! Torsion of `coker(1 - A^N)` when `A` has the eigenvalue 1.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact_linalg::{cokernel_invariants, rat_to_int, saturated_image, smith_normal_form, IntMatrix, RatMatrix};
use crate::polynomials::{charpoly, strip_cyclotomic, IntPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SandwichReport {
    pub n: usize,
    /// `|coker(1 - A^N)_tors|`.
    pub torsion_order: BigInt,
    /// `|det C|` for `C = 1 + A + ... + A^{N-1}` on the saturated image of `1 - A`.
    pub lower: BigInt,
    /// `|det(1 - B^N)|` for the action `B` of `A` on `Z^n / ker(1 - A)`.
    pub upper: BigInt,
    pub holds: bool,
}

/// Checks `lower ≤ |coker(1 - A^N)_tors| ≤ upper`.
///
/// Requires 1 to be a simple eigenvalue and no other eigenvalue to be a root
/// of unity.
pub fn coker_sandwich_check(a: &IntMatrix, n: usize) -> Result<SandwichReport> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("cover degree must be at least 1".into()));
    }
    let dim = a.rows();
    let cp = charpoly(a)?;
    let t_minus_one = IntPoly::from_i64(&[-1, 1]);
    let rest = cp
        .div_exact(&t_minus_one)
        .ok_or_else(|| Error::Precondition("1 is not an eigenvalue".into()))?;
    if rest.is_zero() || rest.degree() == Some(0) {
        return Err(Error::Precondition("no eigenvalues besides 1".into()));
    }
    let (cyclo, _) = strip_cyclotomic(&rest);
    if !cyclo.is_empty() {
        let orders: Vec<u64> = cyclo.iter().map(|&(k, _)| k).collect();
        return Err(Error::Precondition(format!(
            "remaining eigenvalues include roots of unity of orders {orders:?}"
        )));
    }

    let id = IntMatrix::identity(dim);
    let one_minus_a = &id - a;
    let an = a.pow(n as u32);
    let torsion_order = cokernel_invariants(&(&id - &an)).torsion_order();

    // C = Σ_{k<N} A^k preserves L = saturated image of 1 - A; C S = S X.
    let mut c = IntMatrix::zeros(dim, dim);
    let mut pw = IntMatrix::identity(dim);
    for _ in 0..n {
        c = &c + &pw;
        pw = &pw * a;
    }
    let s = saturated_image(&one_minus_a);
    let lower = restricted_det(&c, &s)?;

    // Put ker(1 - A) last in a unimodular basis; the leading block is B.
    let snf = smith_normal_form(&one_minus_a);
    let r = snf.rank();
    let w = snf.v.clone();
    let w_inv = integral(&w.to_rat().inverse()?)?;
    let conj = &(&w_inv * a) * &w;
    let idx: Vec<usize> = (0..r).collect();
    let b = conj.select_rows(&idx).select_columns(&idx);
    let upper = (&IntMatrix::identity(r) - &b.pow(n as u32)).det()?.abs();

    let holds = lower <= torsion_order && torsion_order <= upper;
    Ok(SandwichReport { n, torsion_order, lower, upper, holds })
}

fn integral(m: &RatMatrix) -> Result<IntMatrix> {
    let data = m
        .entries()
        .iter()
        .map(|x| rat_to_int(x).ok_or_else(|| Error::NumericalFailure("expected an integral matrix".into())))
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_entries(m.rows(), m.cols(), data)
}

/// `|det|` of `m` restricted to the invariant lattice spanned by the columns of `s`.
fn restricted_det(m: &IntMatrix, s: &IntMatrix) -> Result<BigInt> {
    if s.cols() == 0 {
        return Ok(BigInt::from(1));
    }
    let sr = s.to_rat();
    let st = sr.transpose();
    let x = &(&(&st * &sr).inverse()? * &st) * &(&m.to_rat() * &sr);
    let x = integral(&x)?;
    Ok(x.det()?.abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn block() -> IntMatrix {
        IntMatrix::from_rows(&[[1i64, 0, 0], [0, 2, 1], [0, 1, 1]])
    }

    #[test]
    fn block_at_two() {
        let r = coker_sandwich_check(&block(), 2).unwrap();
        assert_eq!(r.torsion_order, BigInt::from(5));
        assert_eq!((r.lower.clone(), r.upper.clone()), (BigInt::from(5), BigInt::from(5)));
        assert!(r.holds);
    }

    #[test]
    fn block_sweep() {
        let cat = IntMatrix::from_rows(&[[2i64, 1], [1, 1]]);
        let id = IntMatrix::identity(2);
        for n in 1..=12u32 {
            let r = coker_sandwich_check(&block(), n as usize).unwrap();
            assert!(r.holds, "{r:?}");
            assert_eq!(r.upper, (&id - &cat.pow(n)).det().unwrap().abs());
        }
    }

    #[test]
    fn hidden_eigenvalue_one() {
        // Conjugated so that ker(1 - A) is not a coordinate axis.
        let u = IntMatrix::from_rows(&[[1i64, 2, 0], [0, 1, 1], [1, 3, 2]]);
        let u_inv = integral(&u.to_rat().inverse().unwrap()).unwrap();
        let a = &(&u * &block()) * &u_inv;
        for n in 1..=8 {
            assert!(coker_sandwich_check(&a, n).unwrap().holds);
        }
    }

    #[test]
    fn preconditions() {
        assert!(matches!(coker_sandwich_check(&IntMatrix::identity(1), 2), Err(Error::Precondition(_))));
        let cat = IntMatrix::from_rows(&[[2i64, 1], [1, 1]]);
        assert!(matches!(coker_sandwich_check(&cat, 2), Err(Error::Precondition(_))));
        let rot = IntMatrix::from_rows(&[[1i64, 0, 0], [0, 0, -1], [0, 1, 0]]);
        assert!(matches!(coker_sandwich_check(&rot, 2), Err(Error::Precondition(_))));
    }
}
