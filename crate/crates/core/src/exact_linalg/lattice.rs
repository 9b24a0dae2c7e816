use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, RatMatrix};
use crate::error::{Error, Result};

/// A lattice `⊕ Z b_i` inside `Q^ambient_dim` with the inner product `gram`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lattice {
    ambient_dim: usize,
    basis: Vec<Vec<BigRational>>,
    gram: RatMatrix,
}

impl Lattice {
    /// Validates the ambient Gram matrix and linear independence of the basis.
    pub fn new(basis: Vec<Vec<BigRational>>, gram: RatMatrix) -> Result<Self> {
        gram.validate_gram()?;
        let ambient_dim = gram.rows();
        for b in &basis {
            if b.len() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    context: "lattice basis vector",
                    expected: (ambient_dim, 1),
                    found: (b.len(), 1),
                });
            }
        }
        let lattice = Lattice { ambient_dim, basis, gram };
        if lattice.basis_matrix().rank() != lattice.basis.len() {
            return Err(Error::InvalidArgument("lattice basis is linearly dependent".into()));
        }
        Ok(lattice)
    }

    /// Lattice spanned by the columns of an integer matrix.
    pub fn from_columns(cols: &IntMatrix, gram: RatMatrix) -> Result<Self> {
        let basis = (0..cols.cols())
            .map(|j| cols.column(j).into_iter().map(BigRational::from_integer).collect())
            .collect();
        Self::new(basis, gram)
    }

    pub fn standard(n: usize) -> Self {
        let basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                    .collect()
            })
            .collect();
        Lattice { ambient_dim: n, basis, gram: RatMatrix::identity(n) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn gram(&self) -> &RatMatrix {
        &self.gram
    }

    /// Basis vectors as columns.
    pub fn basis_matrix(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.ambient_dim, self.basis.len());
        for (j, b) in self.basis.iter().enumerate() {
            for (i, x) in b.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// `⟨b_i, b_j⟩`.
    pub fn basis_gram(&self) -> RatMatrix {
        let b = self.basis_matrix();
        &(&b.transpose() * &self.gram) * &b
    }
}

/// `vol(L)^2`, the determinant of the basis Gram matrix.
pub fn lattice_volume_sq(lattice: &Lattice) -> Result<BigRational> {
    let g = lattice.basis_gram();
    let v = g.det()?;
    if !v.is_positive() {
        return Err(Error::NotPositiveDefinite { index: lattice.rank() });
    }
    Ok(v)
}

/// `det'(f)^2`: the product of the nonzero eigenvalues of `f* f`, where the
/// adjoint is taken with respect to the two Gram matrices.
///
/// Computed exactly as the lowest nonzero coefficient of the characteristic
/// polynomial of `f* f`, which is diagonalizable so the zero eigenvalue has
/// no Jordan blocks.
pub fn detprime_sq(f: &IntMatrix, gram_src: &RatMatrix, gram_dst: &RatMatrix) -> Result<BigRational> {
    if gram_src.rows() != f.cols() || gram_dst.rows() != f.rows() {
        return Err(Error::DimensionMismatch {
            context: "detprime_sq grams",
            expected: (f.rows(), f.cols()),
            found: (gram_dst.rows(), gram_src.rows()),
        });
    }
    gram_src.validate_gram()?;
    gram_dst.validate_gram()?;
    detprime_sq_rat(&f.to_rat(), gram_src, gram_dst)
}

/// Same as [`detprime_sq`] for a rational map; grams are assumed valid.
pub(crate) fn detprime_sq_rat(f: &RatMatrix, gram_src: &RatMatrix, gram_dst: &RatMatrix) -> Result<BigRational> {
    let ff = adjoint_product(f, gram_src, gram_dst)?;
    Ok(detprime_of_diagonalizable(&ff)?)
}

/// `f* f` with `f* = G_src^{-1} fᵀ G_dst`.
pub(crate) fn adjoint_product(f: &RatMatrix, gram_src: &RatMatrix, gram_dst: &RatMatrix) -> Result<RatMatrix> {
    let adj = adjoint(f, gram_src, gram_dst)?;
    Ok(&adj * f)
}

pub(crate) fn adjoint(f: &RatMatrix, gram_src: &RatMatrix, gram_dst: &RatMatrix) -> Result<RatMatrix> {
    let gsi = if gram_src.is_identity() { gram_src.clone() } else { gram_src.inverse()? };
    let ft = f.transpose();
    let left = if gsi.is_identity() { ft } else { &gsi * &ft };
    Ok(if gram_dst.is_identity() { left } else { &left * gram_dst })
}

/// Product of nonzero eigenvalues of a diagonalizable matrix, up to sign
/// (returned as an absolute value).
pub(crate) fn detprime_of_diagonalizable(m: &RatMatrix) -> Result<BigRational> {
    let cp = m.charpoly()?;
    let low = cp.iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigRational::one);
    Ok(low.abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn standard_volume_is_one() {
        assert_eq!(lattice_volume_sq(&Lattice::standard(3)).unwrap(), q(1));
    }

    #[test]
    fn kernel_line_of_mk() {
        for k in 0..6 {
            let l = Lattice::new(alloc::vec![alloc::vec![q(1), q(k)]], RatMatrix::identity(2)).unwrap();
            assert_eq!(lattice_volume_sq(&l).unwrap(), q(k * k + 1));
        }
    }

    #[test]
    fn diagonal_sublattice() {
        let l = Lattice::from_columns(&IntMatrix::from_rows(&[[2, 0], [0, 3]]), RatMatrix::identity(2)).unwrap();
        assert_eq!(lattice_volume_sq(&l).unwrap(), q(36));
    }

    #[test]
    fn degenerate_gram_rejected() {
        let g = RatMatrix::from_fractions(&[[(1, 1), (0, 1)], [(0, 1), (0, 1)]]);
        assert!(matches!(
            Lattice::new(alloc::vec![alloc::vec![q(1), q(0)]], g),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn detprime_examples() {
        let id = RatMatrix::identity(2);
        for k in 0..6 {
            let mk = IntMatrix::from_rows(&[[k * k, -k], [-k, 1]]);
            assert_eq!(detprime_sq(&mk, &id, &id).unwrap(), q((k * k + 1) * (k * k + 1)));
        }
        assert_eq!(detprime_sq(&IntMatrix::zeros(2, 2), &id, &id).unwrap(), q(1));
        let d = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        assert_eq!(detprime_sq(&d, &id, &id).unwrap(), q(36));
        assert!(detprime_sq(&d, &RatMatrix::identity(3), &id).is_err());
    }
}
