#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use torsion_core::exact_linalg::integer_kernel;
use torsion_core::{IntMatrix, MetrizedComplex, RatMatrix};

pub const MAX_ENTRY: i64 = 9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

fn small_entry(rng: &mut ChaCha8Rng) -> i64 {
    if rng.gen_bool(0.35) {
        0
    } else {
        rng.gen_range(-MAX_ENTRY..=MAX_ENTRY)
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntMatrix {
    // Low rank samples give free cohomology more often.
    if rows > 1 && cols > 1 && rng.gen_bool(0.4) {
        let inner = rng.gen_range(1..rows.min(cols).max(2));
        for _ in 0..20 {
            let a = IntMatrix::from_rows(
                &(0..rows).map(|_| (0..inner).map(|_| rng.gen_range(-2..=2)).collect::<Vec<i64>>()).collect::<Vec<_>>(),
            );
            let b = IntMatrix::from_rows(
                &(0..inner).map(|_| (0..cols).map(|_| rng.gen_range(-3..=3)).collect::<Vec<i64>>()).collect::<Vec<_>>(),
            );
            let m = &a * &b;
            if m.max_abs_entry() <= BigInt::from(MAX_ENTRY) {
                return m;
            }
        }
    }
    IntMatrix::from_rows(
        &(0..rows).map(|_| (0..cols).map(|_| small_entry(rng)).collect::<Vec<i64>>()).collect::<Vec<_>>(),
    )
}

/// A row vector `r` with `r · d = 0`, entries bounded by [`MAX_ENTRY`].
fn left_kernel_row(rng: &mut ChaCha8Rng, left_kernel: &IntMatrix) -> Vec<BigInt> {
    let n = left_kernel.rows();
    let k = left_kernel.cols();
    if k == 0 {
        return vec![BigInt::zero(); n];
    }
    for _ in 0..30 {
        let coef: Vec<BigInt> = (0..k)
            .map(|_| BigInt::from(if rng.gen_bool(0.5) { 0 } else { rng.gen_range(-2..=2) }))
            .collect();
        let row = left_kernel.mul_vec(&coef);
        if row.iter().all(|x| x.abs() <= BigInt::from(MAX_ENTRY)) {
            return row;
        }
    }
    vec![BigInt::zero(); n]
}

fn random_gram(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    match rng.gen_range(0..3) {
        0 => RatMatrix::identity(n),
        1 => {
            let mut g = RatMatrix::zeros(n, n);
            for i in 0..n {
                g.set(i, i, BigRational::new(rng.gen_range(1..=6).into(), rng.gen_range(1..=4).into()));
            }
            g
        }
        _ => {
            // Bᵀ B + I for small B
            let b = IntMatrix::from_rows(
                &(0..n).map(|_| (0..n).map(|_| rng.gen_range(-1..=1)).collect::<Vec<i64>>()).collect::<Vec<_>>(),
            );
            &(&b.transpose() * &b).to_rat() + &RatMatrix::identity(n)
        }
    }
}

/// Random complex with at most `max_degrees` nonzero modules of rank at
/// most `max_dim` and differential entries bounded by [`MAX_ENTRY`].
pub fn random_complex(rng: &mut ChaCha8Rng, max_dim: usize, max_degrees: usize, metrics: bool) -> MetrizedComplex {
    let ndeg = rng.gen_range(2..=max_degrees);
    let dims: Vec<usize> = (0..ndeg).map(|_| rng.gen_range(1..=max_dim)).collect();
    let mut diffs: Vec<IntMatrix> = Vec::new();
    for j in 0..ndeg - 1 {
        let d = if j == 0 {
            random_matrix(rng, dims[1], dims[0])
        } else {
            let prev = &diffs[j - 1];
            let lk = integer_kernel(&prev.transpose());
            let mut rows = Vec::with_capacity(dims[j + 1]);
            for _ in 0..dims[j + 1] {
                rows.push(left_kernel_row(rng, &lk));
            }
            let data = rows.into_iter().flatten().collect();
            IntMatrix::from_entries(dims[j + 1], dims[j], data).unwrap()
        };
        diffs.push(d);
    }
    let grams = metrics.then(|| dims.iter().map(|&n| random_gram(rng, n)).collect());
    MetrizedComplex::new(dims, diffs, grams).expect("generated complex is valid")
}

/// Product of random elementary operations: unimodular.
pub fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            let m = IntMatrix::from_rows(&[[-1i64]]);
            return (m.clone(), m);
        }
        return (u, u_inv);
    }
    for _ in 0..(2 * n) {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let c = rng.gen_range(-2i64..=2);
        let mut e = IntMatrix::identity(n);
        e.set(i, j, c.into());
        let mut einv = IntMatrix::identity(n);
        einv.set(i, j, (-c).into());
        u = &u * &e;
        u_inv = &einv * &u_inv;
    }
    (u, u_inv)
}

/// New basis given by the columns of `U_j` in each degree.
pub fn change_basis(c: &MetrizedComplex, rng: &mut ChaCha8Rng) -> MetrizedComplex {
    let us: Vec<(IntMatrix, IntMatrix)> = c.dims().iter().map(|&n| random_unimodular(rng, n)).collect();
    let diffs = c
        .differentials()
        .iter()
        .enumerate()
        .map(|(j, d)| &(&us[j + 1].1 * d) * &us[j].0)
        .collect();
    let grams = c
        .grams()
        .iter()
        .zip(&us)
        .map(|(g, (u, _))| {
            let uq = u.to_rat();
            &(&uq.transpose() * g) * &uq
        })
        .collect();
    MetrizedComplex::new(c.dims().to_vec(), diffs, Some(grams)).unwrap()
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
