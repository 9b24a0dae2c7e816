use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::polynomials::LaurentPoly;
use crate::ring::determinant;

/// Dense matrix over `Z[t_1^±, ..., t_m^±]`, row-major.
#[derive(Clone, PartialEq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        LaurentMatrix { rows, cols, nvars, data: alloc::vec![LaurentPoly::zero_in(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.data[i * n + i] = LaurentPoly::constant(BigInt::one()).with_nvars(nvars).expect("pad");
        }
        m
    }

    /// Every entry is embedded into `nvars` variables; entries in more
    /// variables are rejected.
    pub fn from_entries(rows: usize, cols: usize, nvars: usize, data: Vec<LaurentPoly>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                context: "Laurent matrix entries",
                expected: (rows, cols),
                found: (data.len(), 1),
            });
        }
        let data = data.into_iter().map(|p| p.with_nvars(nvars)).collect::<Result<Vec<_>>>()?;
        Ok(LaurentMatrix { rows, cols, nvars, data })
    }

    pub fn from_int(m: &IntMatrix, nvars: usize) -> Self {
        let data = m
            .entries()
            .iter()
            .map(|c| LaurentPoly::constant(c.clone()).with_nvars(nvars).expect("pad"))
            .collect();
        LaurentMatrix { rows: m.rows(), cols: m.cols(), nvars, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        self.data[i * self.cols + j] = p.with_nvars(self.nvars).expect("variable count");
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows, self.nvars);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Transpose composed with `t -> t^{-1}`: the adjoint for the metric in
    /// which group elements are orthonormal.
    pub fn adjoint(&self) -> Self {
        let mut out = self.transpose();
        for p in out.data.iter_mut() {
            *p = p.conj();
        }
        out
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                context: "Laurent matrix product",
                expected: (self.cols, rhs.cols),
                found: (rhs.rows, rhs.cols),
            });
        }
        let nvars = self.nvars.max(rhs.nvars);
        let mut out = Self::zeros(self.rows, rhs.cols, nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.data[idx] = &out.data[idx] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch {
                context: "Laurent matrix sum",
                expected: (self.rows, self.cols),
                found: (rhs.rows, rhs.cols),
            });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        Ok(LaurentMatrix { rows: self.rows, cols: self.cols, nvars: self.nvars.max(rhs.nvars), data })
    }

    pub fn det(&self) -> Result<LaurentPoly> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        let d = determinant(&self.data, self.rows);
        d.with_nvars(self.nvars)
    }

    /// Entrywise substitution `t = 1`.
    pub fn at_one(&self) -> Result<IntMatrix> {
        let ones = alloc::vec![1i64; self.nvars];
        let data = self.data.iter().map(|p| p.eval_unit(&ones)).collect::<Result<Vec<_>>>()?;
        IntMatrix::from_entries(self.rows, self.cols, data)
    }

    /// Univariate blow-up: `t^k` becomes the `k`-th power of the `N`-cycle
    /// `e_a -> e_{a+1}`. Entry `(i, j)` becomes the block at rows
    /// `i N .. (i+1) N`, columns `j N .. (j+1) N`.
    pub fn circulant_blowup(&self, n: usize) -> Result<IntMatrix> {
        if self.nvars > 1 {
            return Err(Error::VariableCount { expected: 1, found: self.nvars });
        }
        if n == 0 {
            return Err(Error::InvalidArgument("cover degree must be positive".into()));
        }
        let nn = n as i64;
        let mut out = IntMatrix::zeros(self.rows * n, self.cols * n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                for (e, c) in self.get(i, j).terms() {
                    let k = e.first().copied().unwrap_or(0).rem_euclid(nn) as usize;
                    for a in 0..n {
                        let r = i * n + (a + k) % n;
                        let col = j * n + a;
                        let v = out.get(r, col) + c;
                        out.set(r, col, v);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> LaurentPoly {
        LaurentPoly::var(0, 1)
    }

    #[test]
    fn blowup_of_t_is_cycle() {
        let m = LaurentMatrix::from_entries(1, 1, 1, alloc::vec![t()]).unwrap();
        let p = m.circulant_blowup(3).unwrap();
        assert_eq!(p, IntMatrix::from_rows(&[[0i64, 0, 1], [1, 0, 0], [0, 1, 0]]));
        assert_eq!(m.circulant_blowup(1).unwrap(), IntMatrix::from_rows(&[[1i64]]));
        let inv = LaurentMatrix::from_entries(1, 1, 1, alloc::vec![t().conj()]).unwrap();
        assert_eq!(inv.circulant_blowup(3).unwrap(), p.transpose());
    }

    #[test]
    fn blowup_is_multiplicative() {
        let a = LaurentMatrix::from_entries(
            2,
            2,
            1,
            alloc::vec![
                &LaurentPoly::one() - &t(),
                t().conj(),
                LaurentPoly::constant(3.into()),
                &t() * &t()
            ],
        )
        .unwrap();
        let b = a.adjoint();
        let ab = a.try_mul(&b).unwrap();
        for n in 1..5 {
            let lhs = ab.circulant_blowup(n).unwrap();
            let rhs = &a.circulant_blowup(n).unwrap() * &b.circulant_blowup(n).unwrap();
            assert_eq!(lhs, rhs);
            // adjoint blows up to the transpose
            assert_eq!(b.circulant_blowup(n).unwrap(), a.circulant_blowup(n).unwrap().transpose());
        }
    }
}
