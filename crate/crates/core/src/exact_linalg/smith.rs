//! Smith normal form over `Z`.
//!
//! Two engines share the same elimination loop:
//!
//! * [`smith_normal_form`] tracks the unimodular transforms and enforces the
//!   divisibility chain on the diagonal of `D` itself.
//! * [`cokernel_invariants`] only needs the invariant factors. For a square
//!   nonsingular input it works modulo `|det M|`: the column lattice contains
//!   `det(M) Z^n`, so every entry can be kept reduced, which stops the entry
//!   growth that otherwise dominates on large circulant blocks.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int_matrix::bareiss;
use super::IntMatrix;

/// `U · M · V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    /// Inverse of `u`, maintained alongside it.
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `d`, each dividing the next.
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Structure of `coker(M) = Z^rows / M Z^cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelInvariants {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion_factors: Vec<BigInt>,
    /// Rank of `M`.
    pub rank: usize,
}

impl CokernelInvariants {
    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors.iter().product()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    cols: usize,
    /// (U, U^{-1}, V) when tracking transforms.
    tr: Option<(Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>)>,
    modulus: Option<BigInt>,
}

/// Symmetric residue in `(-m/2, m/2]`.
fn sym_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if (&r << 1u32) > *m {
        r - m
    } else {
        r
    }
}

/// `b / a` rounded to the nearest integer.
fn round_div(b: &BigInt, a: &BigInt) -> BigInt {
    let (q, r) = b.div_mod_floor(a);
    // r carries the sign of a, so stepping q up always shrinks |r|.
    if (&r << 1u32).abs() > a.abs() {
        q + 1
    } else {
        q
    }
}

impl Work {
    fn reduce_row(&mut self, i: usize) {
        if let Some(m) = &self.modulus {
            for x in self.a[i].iter_mut() {
                *x = sym_mod(x, m);
            }
        }
    }

    fn reduce_col(&mut self, j: usize) {
        if let Some(m) = &self.modulus {
            for row in self.a.iter_mut() {
                row[j] = sym_mod(&row[j], m);
            }
        }
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        self.a.swap(i, k);
        if let Some((u, uinv, _)) = &mut self.tr {
            u.swap(i, k);
            for row in uinv.iter_mut() {
                row.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(j, k);
        }
        if let Some((_, _, v)) = &mut self.tr {
            for row in v.iter_mut() {
                row.swap(j, k);
            }
        }
    }

    /// `row_i += q * row_k`.
    fn add_row(&mut self, i: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        let (src, dst) = pick_two(&mut self.a, k, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d += q * s;
            }
        }
        if let Some((u, uinv, _)) = &mut self.tr {
            let (src, dst) = pick_two(u, k, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d += q * s;
                }
            }
            // U' = E U  =>  U'^{-1} = U^{-1} E^{-1}: col_k -= q col_i.
            for row in uinv.iter_mut() {
                if !row[i].is_zero() {
                    let t = q * &row[i];
                    row[k] -= t;
                }
            }
        }
        self.reduce_row(i);
    }

    /// `col_j += q * col_k`.
    fn add_col(&mut self, j: usize, k: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[k].is_zero() {
                let t = q * &row[k];
                row[j] += t;
            }
        }
        if let Some((_, _, v)) = &mut self.tr {
            for row in v.iter_mut() {
                if !row[k].is_zero() {
                    let t = q * &row[k];
                    row[j] += t;
                }
            }
        }
        self.reduce_col(j);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -core::mem::take(x);
        }
        if let Some((u, uinv, _)) = &mut self.tr {
            for x in u[i].iter_mut() {
                *x = -core::mem::take(x);
            }
            for row in uinv.iter_mut() {
                row[i] = -core::mem::take(&mut row[i]);
            }
        }
    }

    /// Position of the nonzero entry of least absolute value in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, &BigInt)> = None;
        for (i, row) in self.a.iter().enumerate().skip(t) {
            for (j, x) in row.iter().enumerate().skip(t) {
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(_, _, b)| x.magnitude() < b.magnitude()) {
                    best = Some((i, j, x));
                    if x.magnitude().is_one() {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Clears row and column `t` using Euclidean steps with pivot at `(t, t)`.
    fn clear_cross(&mut self, t: usize) {
        let rows = self.a.len();
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if self.a[i][t].is_zero() {
                    continue;
                }
                let q = round_div(&self.a[i][t], &self.a[t][t]);
                self.add_row(i, t, &-q);
                if !self.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..self.cols {
                if self.a[t][j].is_zero() {
                    continue;
                }
                let q = round_div(&self.a[t][j], &self.a[t][t]);
                self.add_col(j, t, &-q);
                if !self.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                return;
            }
            // Move the smallest remainder in the cross to the pivot.
            let mut best = (t, t);
            let mut mag = self.a[t][t].magnitude().clone();
            for i in t + 1..rows {
                if !self.a[i][t].is_zero() && self.a[i][t].magnitude() < &mag {
                    mag = self.a[i][t].magnitude().clone();
                    best = (i, t);
                }
            }
            for j in t + 1..self.cols {
                if !self.a[t][j].is_zero() && self.a[t][j].magnitude() < &mag {
                    mag = self.a[t][j].magnitude().clone();
                    best = (t, j);
                }
            }
            self.swap_rows(t, best.0);
            self.swap_cols(t, best.1);
        }
    }

    /// Diagonalizes; with `chain`, also enforces divisibility on the diagonal.
    fn run(&mut self, chain: bool) -> Vec<BigInt> {
        let rows = self.a.len();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < rows.min(self.cols) {
            let Some((pi, pj)) = self.min_entry(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                self.clear_cross(t);
                if !chain {
                    break;
                }
                let p = self.a[t][t].clone();
                let bad = (t + 1..rows).find(|&i| {
                    self.a[i][t + 1..].iter().any(|x| !x.is_zero() && !x.is_multiple_of(&p))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[t][t].clone());
            t += 1;
        }
        diag
    }
}

fn pick_two<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            let mut r = vec![BigInt::zero(); n];
            r[i] = BigInt::one();
            r
        })
        .collect()
}

fn rows_to_matrix(rows: Vec<Vec<BigInt>>, cols: usize) -> IntMatrix {
    let n = rows.len();
    IntMatrix::from_entries(n, cols, rows.into_iter().flatten().collect())
        .expect("rectangular rows")
}

/// Smith normal form with transforms.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (r, c) = (m.rows(), m.cols());
    let mut w = Work {
        a: (0..r).map(|i| m.row(i).to_vec()).collect(),
        cols: c,
        tr: Some((identity_rows(r), identity_rows(r), identity_rows(c))),
        modulus: None,
    };
    let invariant_factors = w.run(true);
    let (u, uinv, v) = w.tr.take().expect("transforms tracked");
    SmithDecomposition {
        u: rows_to_matrix(u, r),
        u_inv: rows_to_matrix(uinv, r),
        d: rows_to_matrix(w.a, c),
        v: rows_to_matrix(v, c),
        invariant_factors,
    }
}

/// Turns an arbitrary diagonal into a divisibility chain (zeros last) using
/// `diag(a, b) ~ diag(gcd, lcm)`.
pub fn normalize_diagonal(diag: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.iter().map(|x| x.abs()).collect();
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            if d[i].is_zero() && d[j].is_zero() {
                continue;
            }
            let g = d[i].gcd(&d[j]);
            let l = if g.is_zero() { BigInt::zero() } else { &d[i] / &g * &d[j] };
            // lcm(0, x) = 0 pushes zeros to the end.
            let l = if d[i].is_zero() || d[j].is_zero() { BigInt::zero() } else { l };
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Free rank and torsion of `Z^rows / M Z^cols`.
pub fn cokernel_invariants(m: &IntMatrix) -> CokernelInvariants {
    let (r, c) = (m.rows(), m.cols());
    if r == 0 {
        return CokernelInvariants { free_rank: 0, torsion_factors: Vec::new(), rank: 0 };
    }
    let det = if r == c { bareiss(m).det.filter(|d| !d.is_zero()) } else { None };
    let factors = match det {
        Some(d) => {
            let d = d.abs();
            let mut w = Work {
                a: (0..r).map(|i| m.row(i).iter().map(|x| sym_mod(x, &d)).collect()).collect(),
                cols: c,
                tr: None,
                modulus: Some(d.clone()),
            };
            let mut diag = w.run(false);
            // Blocks that vanish modulo d contribute d each.
            diag.resize(r, BigInt::zero());
            let diag: Vec<BigInt> = diag.iter().map(|x| x.gcd(&d)).collect();
            normalize_diagonal(&diag)
        }
        None => {
            let mut w = Work {
                a: (0..r).map(|i| m.row(i).to_vec()).collect(),
                cols: c,
                tr: None,
                modulus: None,
            };
            let diag = w.run(false);
            normalize_diagonal(&diag)
        }
    };
    let nonzero: Vec<BigInt> = factors.into_iter().filter(|x| !x.is_zero()).collect();
    let rank = nonzero.len();
    CokernelInvariants {
        free_rank: r - rank,
        torsion_factors: nonzero.into_iter().filter(|x| !x.is_one()).collect(),
        rank,
    }
}

/// Columns form a `Z`-basis of `ker M ⊂ Z^cols`.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let rank = s.rank();
    let cols: Vec<usize> = (rank..m.cols()).collect();
    s.v.select_columns(&cols)
}

/// Columns form a `Z`-basis of `(M Z^cols ⊗ Q) ∩ Z^rows`.
pub fn saturated_image(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let cols: Vec<usize> = (0..s.rank()).collect();
    s.u_inv.select_columns(&cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.u * m) * &s.v, s.d);
        assert!((&s.u * &s.u_inv) == IntMatrix::identity(m.rows()));
        assert!(s.u.det().unwrap().abs().is_one());
        assert!(s.v.det().unwrap().abs().is_one());
        for w in s.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        s
    }

    #[test]
    fn identity_3x3() {
        let s = check(&IntMatrix::identity(3));
        assert_eq!(s.d, IntMatrix::identity(3));
        assert_eq!(s.invariant_factors, big(&[1, 1, 1]));
    }

    #[test]
    fn two_by_two_example() {
        // gcd of entries is 2 and |det| = 8, so the factors are 2 and 4.
        let s = check(&IntMatrix::from_rows(&[[2, 4], [6, 8]]));
        assert_eq!(s.invariant_factors, big(&[2, 4]));
    }

    #[test]
    fn zero_and_empty() {
        let s = check(&IntMatrix::from_rows(&[[0]]));
        assert_eq!(s.d, IntMatrix::from_rows(&[[0]]));
        assert!(s.invariant_factors.is_empty());
        let e = smith_normal_form(&IntMatrix::zeros(0, 0));
        assert!(e.invariant_factors.is_empty());
        let e = smith_normal_form(&IntMatrix::zeros(0, 3));
        assert_eq!(e.v, IntMatrix::identity(3));
    }

    #[test]
    fn cokernel_of_cat_map() {
        let a = IntMatrix::from_rows(&[[2, 1], [1, 1]]);
        let one = IntMatrix::identity(2);
        let c1 = cokernel_invariants(&(&one - &a));
        assert_eq!((c1.free_rank, c1.torsion_factors.clone()), (0, vec![]));
        let c2 = cokernel_invariants(&(&one - &a.pow(2)));
        assert_eq!((c2.free_rank, c2.torsion_factors.clone()), (0, big(&[5])));
        let z = cokernel_invariants(&IntMatrix::zeros(2, 2));
        assert_eq!((z.free_rank, z.torsion_factors.len()), (2, 0));
    }

    #[test]
    fn modular_path_agrees_with_transforms() {
        let m = IntMatrix::from_rows(&[[4, 6, 2], [8, 2, 0], [6, 2, 10]]);
        let c = cokernel_invariants(&m);
        let s = check(&m);
        let expect: Vec<BigInt> = s.invariant_factors.into_iter().filter(|x| !x.is_one()).collect();
        assert_eq!(c.torsion_factors, expect);
    }

    #[test]
    fn kernel_and_saturation() {
        let m = IntMatrix::from_rows(&[[2, 4, 6], [1, 2, 3]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 2);
        assert!((&m * &k).is_zero());
        let s = saturated_image(&m);
        assert_eq!(s.cols(), 1);
        // The image is spanned by (2,1) over Q; its saturation is Z·(2,1).
        let col = s.column(0);
        assert!(col == big(&[2, 1]) || col == big(&[-2, -1]));
    }

    #[test]
    fn negative_pivots_terminate() {
        let m = IntMatrix::from_rows(&[[-4i64, 4, 6, 2], [7, -2, 0, -3], [4, 0, 0, -2], [0, 9, 4, -3], [0, -6, 0, -5]]);
        let s = check(&m);
        assert_eq!(s.rank(), cokernel_invariants(&m).rank);
    }

    #[test]
    fn normalize_chain() {
        assert_eq!(normalize_diagonal(&big(&[4, 6])), big(&[2, 12]));
        assert_eq!(normalize_diagonal(&big(&[0, 3, 2])), big(&[1, 6, 0]));
    }
}
