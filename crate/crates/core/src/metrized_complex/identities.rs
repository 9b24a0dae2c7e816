use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::One;

use super::MetrizedComplex;
use crate::error::Result;
use crate::exact_linalg::{detprime_of_diagonalizable, detprime_sq_rat};

/// Both sides of an exact identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityReport {
    pub lhs: BigRational,
    pub rhs: BigRational,
    /// `∏* vol(A^i)^2 = ∏* det G_i`, already multiplied into `rhs`; it is 1
    /// when every metric is unimodular.
    pub volume_factor: BigRational,
    pub holds: bool,
}

impl IdentityReport {
    fn new(lhs: BigRational, rhs: BigRational, volume_factor: BigRational) -> Self {
        let holds = lhs == rhs;
        IdentityReport { lhs, rhs, volume_factor, holds }
    }
}

fn signed_pow(x: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), e.unsigned_abs() as usize)
    }
}

fn sign(i: usize) -> i64 {
    if i % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `∏_i (det' d_i)^{2(-1)^i}`.
fn detprime_product_sq(c: &MetrizedComplex) -> Result<BigRational> {
    let mut acc = BigRational::one();
    for (i, d) in c.differentials().iter().enumerate() {
        let dp = detprime_sq_rat(&d.to_rat(), &c.grams()[i], &c.grams()[i + 1])?;
        acc *= signed_pow(&dp, sign(i));
    }
    Ok(acc)
}

/// Squared Reidemeister torsion identity:
/// `∏* R_i^2 · ∏* |H^i_tors|^{-2} = ∏* det'(d_i)^2 · ∏* vol(A^i)^2`.
///
/// The volume factor disappears for metrics with `vol(A^i) = 1`.
pub fn check_rt_identity(c: &MetrizedComplex) -> Result<IdentityReport> {
    let mut vol = BigRational::one();
    for (i, g) in c.grams().iter().enumerate() {
        vol *= signed_pow(&g.det()?, sign(i));
    }
    let mut lhs = BigRational::one();
    for h in c.cohomology_all()? {
        let s = sign(h.degree);
        let tors = BigRational::from_integer(h.torsion_order());
        lhs *= signed_pow(&h.regulator_sq, s);
        lhs *= signed_pow(&(&tors * &tors), -s);
    }
    let rhs = detprime_product_sq(c)? * &vol;
    Ok(IdentityReport::new(lhs, rhs, vol))
}

/// `(∏* det' d_i)^2 = ∏_i (det' Δ_i)^{i (-1)^{i+1}}`.
pub fn check_dlap_identity(c: &MetrizedComplex) -> Result<IdentityReport> {
    let lhs = detprime_product_sq(c)?;
    let mut rhs = BigRational::one();
    for i in 0..=c.top_degree() {
        if i == 0 {
            continue;
        }
        let lap = c.laplacian(i)?;
        let dp = detprime_of_diagonalizable(&lap)?;
        rhs *= signed_pow(&dp, i as i64 * -sign(i));
    }
    Ok(IdentityReport::new(lhs, rhs, BigRational::one()))
}

/// Transposed differentials, reversed grading and inverse metrics:
/// degree `j` of the dual is `Hom(A^{n-j}, Z)`.
pub fn dual_complex(c: &MetrizedComplex) -> MetrizedComplex {
    let n = c.top_degree();
    let dims: Vec<usize> = c.dims().iter().rev().copied().collect();
    let differentials = (0..n).map(|j| c.differentials()[n - 1 - j].transpose()).collect();
    let grams = (0..=n)
        .map(|j| c.grams()[n - j].inverse().expect("validated grams are invertible"))
        .collect();
    MetrizedComplex::new(dims, differentials, Some(grams))
        .expect("dual of a valid complex is valid")
}

/// `R̂^{n-j}² · R^j²` for every `j`; each entry is 1 by duality.
pub fn duality_products(c: &MetrizedComplex) -> Result<Vec<BigRational>> {
    let dual = dual_complex(c);
    let n = c.top_degree();
    (0..=n)
        .map(|j| Ok(dual.cohomology(n - j)?.regulator_sq * c.cohomology(j)?.regulator_sq))
        .collect()
}
