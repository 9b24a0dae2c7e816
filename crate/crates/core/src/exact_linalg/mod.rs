//! Exact linear algebra over `Z` and `Q`.
//!
//! Everything here is dense and exact: integers are arbitrary precision and
//! rationals are always reduced. Gram matrices are validated eagerly.

mod int_matrix;
mod lattice;
mod rat_matrix;
mod smith;

pub use int_matrix::IntMatrix;
pub use lattice::{detprime_sq, lattice_volume_sq, Lattice};
pub(crate) use int_matrix::rat_to_int;
pub(crate) use lattice::{adjoint, detprime_of_diagonalizable, detprime_sq_rat};
pub use rat_matrix::RatMatrix;
pub use smith::{
    cokernel_invariants, integer_kernel, normalize_diagonal, saturated_image, smith_normal_form,
    CokernelInvariants, SmithDecomposition,
};
