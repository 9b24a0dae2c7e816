//! Finite cochain complexes of free `Z`-modules with rational metrics.

mod gaction;
mod identities;

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub use gaction::{verify_gaction_bound, GactionDegreeReport, GactionReport, GroupActionData};
pub use identities::{
    check_dlap_identity, check_rt_identity, dual_complex, duality_products, IdentityReport,
};

use crate::error::{Error, Result};
use crate::exact_linalg::{
    adjoint, cokernel_invariants, integer_kernel, rat_to_int, saturated_image,
    smith_normal_form, IntMatrix, RatMatrix,
};

/// `0 -> A^0 -> A^1 -> ... -> A^n -> 0` with `d_j : A^j -> A^{j+1}` and an
/// inner product on each `A^j ⊗ Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetrizedComplex {
    dims: Vec<usize>,
    differentials: Vec<IntMatrix>,
    grams: Vec<RatMatrix>,
}

/// Structure of `H^j = ker d_j / im d_{j-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologySummary {
    pub degree: usize,
    pub free_rank: usize,
    /// Invariant factors `> 1`, each dividing the next.
    pub torsion_factors: Vec<BigInt>,
    /// Squared covolume of `H^j_free` in its harmonic representatives.
    pub regulator_sq: BigRational,
}

impl HomologySummary {
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors.iter().fold(BigInt::one(), |a, b| a * b)
    }
}

impl MetrizedComplex {
    /// `grams = None` means the standard inner product in every degree.
    pub fn new(
        dims: Vec<usize>,
        differentials: Vec<IntMatrix>,
        grams: Option<Vec<RatMatrix>>,
    ) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidArgument("a complex needs at least one degree".into()));
        }
        if differentials.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch {
                context: "number of differentials",
                expected: (dims.len() - 1, 1),
                found: (differentials.len(), 1),
            });
        }
        for (j, d) in differentials.iter().enumerate() {
            if d.rows() != dims[j + 1] || d.cols() != dims[j] {
                return Err(Error::DimensionMismatch {
                    context: "differential shape",
                    expected: (dims[j + 1], dims[j]),
                    found: (d.rows(), d.cols()),
                });
            }
        }
        for j in 1..differentials.len() {
            if !(&differentials[j] * &differentials[j - 1]).is_zero() {
                return Err(Error::NotAComplex { degree: j - 1 });
            }
        }
        let grams = match grams {
            None => dims.iter().map(|&n| RatMatrix::identity(n)).collect(),
            Some(g) => {
                if g.len() != dims.len() {
                    return Err(Error::DimensionMismatch {
                        context: "number of grams",
                        expected: (dims.len(), 1),
                        found: (g.len(), 1),
                    });
                }
                for (j, gj) in g.iter().enumerate() {
                    if gj.rows() != dims[j] || gj.cols() != dims[j] {
                        return Err(Error::DimensionMismatch {
                            context: "gram shape",
                            expected: (dims[j], dims[j]),
                            found: (gj.rows(), gj.cols()),
                        });
                    }
                    gj.validate_gram()?;
                }
                g
            }
        };
        Ok(MetrizedComplex { dims, differentials, grams })
    }

    /// Top degree `n`.
    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[IntMatrix] {
        &self.differentials
    }

    pub fn grams(&self) -> &[RatMatrix] {
        &self.grams
    }

    fn check_degree(&self, j: usize) -> Result<()> {
        if j > self.top_degree() {
            return Err(Error::DegreeOutOfRange { degree: j, max: self.top_degree() });
        }
        Ok(())
    }

    /// `d_j`, or the zero map to the zero module in the top degree.
    pub fn outgoing(&self, j: usize) -> IntMatrix {
        match self.differentials.get(j) {
            Some(d) => d.clone(),
            None => IntMatrix::zeros(0, self.dims[j]),
        }
    }

    /// `d_{j-1}`, or the zero map from the zero module in degree 0.
    pub fn incoming(&self, j: usize) -> IntMatrix {
        if j == 0 {
            IntMatrix::zeros(self.dims[0], 0)
        } else {
            self.differentials[j - 1].clone()
        }
    }

    /// Free rank, torsion and squared regulator of `H^j`.
    pub fn cohomology(&self, j: usize) -> Result<HomologySummary> {
        self.check_degree(j)?;
        let d_in = self.incoming(j);
        let d_out = self.outgoing(j);
        let coker = cokernel_invariants(&d_in);
        let rank_out = if d_out.rows() == 0 { 0 } else { cokernel_invariants(&d_out).rank };
        let free_rank = self.dims[j] - rank_out - coker.rank;
        let regulator_sq = if free_rank == 0 {
            BigRational::one()
        } else {
            harmonic_regulator_sq(&d_in, &d_out, &self.grams[j])?
        };
        Ok(HomologySummary { degree: j, free_rank, torsion_factors: coker.torsion_factors, regulator_sq })
    }

    pub fn cohomology_all(&self) -> Result<Vec<HomologySummary>> {
        (0..=self.top_degree()).map(|j| self.cohomology(j)).collect()
    }

    /// `Δ_j = d_j^* d_j + d_{j-1} d_{j-1}^*`, adjoints taken for the grams.
    pub fn laplacian(&self, j: usize) -> Result<RatMatrix> {
        self.check_degree(j)?;
        let n = self.dims[j];
        let mut lap = RatMatrix::zeros(n, n);
        if j < self.differentials.len() {
            let d = self.differentials[j].to_rat();
            let adj = adjoint(&d, &self.grams[j], &self.grams[j + 1])?;
            lap = &lap + &(&adj * &d);
        }
        if j > 0 {
            let d = self.differentials[j - 1].to_rat();
            let adj = adjoint(&d, &self.grams[j - 1], &self.grams[j])?;
            lap = &lap + &(&d * &adj);
        }
        Ok(lap)
    }

    /// Regulator by the quotient `vol(ker d_j)^2 / vol(sat im d_{j-1})^2`.
    ///
    /// Used as an independent check of the harmonic computation.
    pub fn regulator_sq_by_quotient(&self, j: usize) -> Result<BigRational> {
        self.check_degree(j)?;
        let k = integer_kernel(&self.outgoing(j));
        let s = saturated_image(&self.incoming(j));
        let g = &self.grams[j];
        let vk = gram_det(&k.to_rat(), g)?;
        let vs = gram_det(&s.to_rat(), g)?;
        Ok(vk / vs)
    }

}

/// `det(Bᵀ G B)`; 1 for an empty basis.
pub(crate) fn gram_det(b: &RatMatrix, g: &RatMatrix) -> Result<BigRational> {
    if b.cols() == 0 {
        return Ok(BigRational::one());
    }
    (&(&b.transpose() * g) * b).det()
}

/// Projects a complement of `sat(im d_in)` in `ker d_out` onto the
/// orthogonal complement of `im d_in` and takes its squared covolume.
fn harmonic_regulator_sq(d_in: &IntMatrix, d_out: &IntMatrix, g: &RatMatrix) -> Result<BigRational> {
    let k = integer_kernel(d_out);
    let s = saturated_image(d_in);
    let (kq, sq) = (k.to_rat(), s.to_rat());
    let r = s.cols();
    // Coordinates of the image lattice inside the kernel lattice.
    let coords = kq
        .solve(&sq)
        .ok_or_else(|| Error::NumericalFailure("image not contained in kernel".into()))?;
    let coords = int_matrix_of(&coords)?;
    let snf = smith_normal_form(&coords);
    let compl: Vec<usize> = (r..k.cols()).collect();
    let w = (&k * &snf.u_inv).select_columns(&compl).to_rat();
    let p = if r == 0 {
        w
    } else {
        let sgs = &(&sq.transpose() * g) * &sq;
        let coef = &(&(&sgs.inverse()? * &sq.transpose()) * g) * &w;
        &w - &(&sq * &coef)
    };
    gram_det(&p, g)
}

fn int_matrix_of(m: &RatMatrix) -> Result<IntMatrix> {
    let data = m
        .entries()
        .iter()
        .map(|x| rat_to_int(x).ok_or_else(|| Error::NumericalFailure("non-integral coordinates".into())))
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_entries(m.rows(), m.cols(), data)
}
