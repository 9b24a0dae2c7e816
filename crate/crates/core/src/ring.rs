//! Division-free algorithms over commutative rings.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};
use num_traits::{One, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Characteristic polynomial `det(tI - A)` of a square matrix given row-major,
/// by the Samuelson–Berkowitz algorithm. Coefficients are ascending.
pub fn berkowitz<T: Ring>(a: &[T], n: usize) -> Vec<T> {
    debug_assert_eq!(a.len(), n * n);
    if n == 0 {
        return vec![T::one()];
    }
    let at = |i: usize, j: usize| &a[i * n + j];
    // Descending coefficients of the trailing principal submatrix.
    let mut v = vec![T::one(), -at(n - 1, n - 1).clone()];
    for i in (0..n - 1).rev() {
        let m = n - i;
        // Toeplitz column: 1, -a11, -R C, -R A1 C, ...
        let mut t = Vec::with_capacity(m + 1);
        t.push(T::one());
        t.push(-at(i, i).clone());
        let mut w: Vec<T> = (i + 1..n).map(|r| at(r, i).clone()).collect();
        for k in 0..m - 1 {
            let rw = (i + 1..n)
                .zip(w.iter())
                .fold(T::zero(), |acc, (c, wc)| acc + at(i, c).clone() * wc.clone());
            t.push(-rw);
            if k + 2 < m {
                w = (i + 1..n)
                    .map(|r| {
                        (i + 1..n)
                            .zip(w.iter())
                            .fold(T::zero(), |acc, (c, wc)| acc + at(r, c).clone() * wc.clone())
                    })
                    .collect();
            }
        }
        let mut nv = Vec::with_capacity(m + 1);
        for r in 0..=m {
            let mut acc = T::zero();
            for (c, vc) in v.iter().enumerate().take(r.min(m - 1) + 1) {
                acc = acc + t[r - c].clone() * vc.clone();
            }
            nv.push(acc);
        }
        v = nv;
    }
    v.reverse();
    v
}

/// Determinant via [`berkowitz`]; needs no division.
pub fn determinant<T: Ring>(a: &[T], n: usize) -> T {
    let cp = berkowitz(a, n);
    let c0 = cp[0].clone();
    if n % 2 == 0 {
        c0
    } else {
        -c0
    }
}
