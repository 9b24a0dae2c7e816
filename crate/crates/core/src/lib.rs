//! Exact torsion in the homology of finite cyclic covers.
//!
//! The crate is `no_std` (with `alloc`): every routine here is a pure
//! function of its inputs. File formats, the command-line frontend and the
//! worker pool live in the `torsion-cli` crate.
//!
//! Layout:
//!
//! * [`exact_linalg`]: integer/rational matrices, Smith normal form,
//!   lattice volumes and `det'`.
//! * [`metrized_complex`]: cochain complexes of metrized lattices,
//!   regulators, the Reidemeister-torsion and Laplacian identities, duality
//!   and the group-action regulator bound.
//! * [`polynomials`]: integer and Laurent polynomials, resultants, Mahler
//!   measures, Gelfond–Lind sequences, branched-cover orders.
//! * [`tower`]: complexes over `Z[t^±]`, their finite cyclic covers and
//!   combinatorial ℓ²-torsion.
//! * [`l2_constants`]: closed-form L²-torsion constants for `H^{2n+1}`,
//!   `SL₂(C)` and `SL₃(R)`.
//! * [`regularize`]: zeta-regularized products and regularized integrals.
#![cfg_attr(not(test), no_std)]
#![warn(rust_2018_idioms)]

extern crate alloc;

pub mod error;
pub mod exact_linalg;
pub mod l2_constants;
pub mod metrized_complex;
pub mod polynomials;
pub mod regularize;
pub mod ring;
pub mod tower;

pub use error::{Error, Result};
pub use exact_linalg::{IntMatrix, Lattice, RatMatrix, SmithDecomposition};
pub use metrized_complex::{GroupActionData, HomologySummary, MetrizedComplex};
pub use polynomials::{IntPoly, LaurentPoly};
pub use tower::{LaurentMatrix, TorsionSequencePoint, TowerComplex};
