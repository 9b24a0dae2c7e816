//! Cochain complexes over `Z[Λ]` for `Λ = Z^m`, their finite cyclic covers
//! and the growth of torsion along the tower.

mod laurent_matrix;
mod sandwich;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use laurent_matrix::LaurentMatrix;
pub use sandwich::{coker_sandwich_check, SandwichReport};

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::metrized_complex::{GroupActionData, HomologySummary, MetrizedComplex};
use crate::polynomials::{
    ln_bigint, ln_rational, mahler_measure, mahler_multivariate_estimate, IntPoly, LaurentPoly,
};

/// `C^0 -> C^1 -> ... -> C^n` with `C^j = Z[Λ]^{dims_j}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TowerComplex {
    nvars: usize,
    dims: Vec<usize>,
    differentials: Vec<LaurentMatrix>,
}

impl TowerComplex {
    pub fn new(nvars: usize, dims: Vec<usize>, differentials: Vec<LaurentMatrix>) -> Result<Self> {
        if dims.is_empty() || differentials.len() + 1 != dims.len() {
            return Err(Error::DimensionMismatch {
                context: "number of differentials",
                expected: (dims.len().saturating_sub(1), 1),
                found: (differentials.len(), 1),
            });
        }
        for (j, d) in differentials.iter().enumerate() {
            if d.rows() != dims[j + 1] || d.cols() != dims[j] {
                return Err(Error::DimensionMismatch {
                    context: "tower differential shape",
                    expected: (dims[j + 1], dims[j]),
                    found: (d.rows(), d.cols()),
                });
            }
            if d.nvars() > nvars {
                return Err(Error::VariableCount { expected: nvars, found: d.nvars() });
            }
        }
        for j in 1..differentials.len() {
            if !differentials[j].try_mul(&differentials[j - 1])?.is_zero() {
                return Err(Error::NotAComplex { degree: j - 1 });
            }
        }
        Ok(TowerComplex { nvars, dims, differentials })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn differentials(&self) -> &[LaurentMatrix] {
        &self.differentials
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// `Δ_j = d_j^* d_j + d_{j-1} d_{j-1}^*` over the group ring.
    pub fn laplacian(&self, j: usize) -> Result<LaurentMatrix> {
        if j > self.top_degree() {
            return Err(Error::DegreeOutOfRange { degree: j, max: self.top_degree() });
        }
        let n = self.dims[j];
        let mut lap = LaurentMatrix::zeros(n, n, self.nvars);
        if let Some(d) = self.differentials.get(j) {
            lap = lap.try_add(&d.adjoint().try_mul(d)?)?;
        }
        if j > 0 {
            let d = &self.differentials[j - 1];
            lap = lap.try_add(&d.try_mul(&d.adjoint())?)?;
        }
        Ok(lap)
    }

    /// `det Δ_j` for every degree.
    pub fn laplacian_determinants(&self) -> Result<Vec<LaurentPoly>> {
        (0..=self.top_degree()).map(|j| self.laplacian(j)?.det()).collect()
    }
}

/// `0 -> Z[t^±]^m --(1 - tA)--> Z[t^±]^m -> 0`: the circle with local system
/// of monodromy `A`.
pub fn circle_complex(a: &IntMatrix) -> Result<TowerComplex> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if !a.det()?.magnitude().is_one() {
        return Err(Error::NotUnimodular);
    }
    let m = a.rows();
    let t = LaurentPoly::var(0, 1);
    let mut d = LaurentMatrix::identity(m, 1);
    for i in 0..m {
        for j in 0..m {
            let c = a.get(i, j);
            if c.is_zero() {
                continue;
            }
            let entry = d.get(i, j) - &(&t * &LaurentPoly::constant(c.clone()));
            d.set(i, j, entry);
        }
    }
    TowerComplex::new(1, alloc::vec![m, m], alloc::vec![d])
}

/// Two-generator presentation of a knot exterior with Alexander polynomial
/// `Δ`: `Z[t^±] -> Z[t^±]^2 -> Z[t^±]` with `d_0 = (t-1, t-1)ᵀ` and
/// `d_1 = (Δ, -Δ)`.
pub fn knot_exterior(alexander: &IntPoly) -> Result<TowerComplex> {
    if alexander.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let t = LaurentPoly::var(0, 1);
    let tm1 = &t - &LaurentPoly::one();
    let delta = LaurentPoly::from_int_poly(alexander);
    let d0 = LaurentMatrix::from_entries(2, 1, 1, alloc::vec![tm1.clone(), tm1])?;
    let d1 = LaurentMatrix::from_entries(1, 2, 1, alloc::vec![delta.clone(), -&delta])?;
    TowerComplex::new(1, alloc::vec![1, 2, 1], alloc::vec![d0, d1])
}

/// Infinite cyclic cover of the mapping torus of a torus automorphism `F`,
/// with `C^k = C^k(T²) ⊕ C^{k-1}(T²)` and `d(a, b) = (0, (1 - t φ_k) a)`,
/// where `φ_0 = 1`, `φ_1 = Fᵀ`, `φ_2 = det F`.
pub fn fibered_torus_bundle(f: &IntMatrix) -> Result<TowerComplex> {
    if f.rows() != 2 || f.cols() != 2 {
        return Err(Error::DimensionMismatch { context: "torus monodromy", expected: (2, 2), found: (f.rows(), f.cols()) });
    }
    let det = f.det()?;
    if !det.magnitude().is_one() {
        return Err(Error::NotUnimodular);
    }
    let t = LaurentPoly::var(0, 1);
    let one = LaurentPoly::one();
    let lp = |c: &BigInt| LaurentPoly::constant(c.clone());
    // d_0: C^0 = Z -> C^1 = Z^2 ⊕ Z
    let mut d0 = LaurentMatrix::zeros(3, 1, 1);
    d0.set(2, 0, &one - &t);
    // d_1: C^1 = Z^2 ⊕ Z -> C^2 = Z ⊕ Z^2, (a, b) -> (0, (1 - t Fᵀ) a)
    let mut d1 = LaurentMatrix::zeros(3, 3, 1);
    for i in 0..2 {
        for j in 0..2 {
            let mut e = -&(&t * &lp(f.get(j, i)));
            if i == j {
                e = &e + &one;
            }
            d1.set(1 + i, j, e);
        }
    }
    // d_2: C^2 = Z ⊕ Z^2 -> C^3 = Z, (a, b) -> (1 - t det F) a
    let mut d2 = LaurentMatrix::zeros(1, 3, 1);
    d2.set(0, 0, &one - &(&t * &lp(&det)));
    TowerComplex::new(1, alloc::vec![1, 3, 3, 1], alloc::vec![d0, d1, d2])
}

/// The finite cover `K_N`: every `t^k` becomes the `k`-th power of the
/// `N`-cycle; cells form an orthonormal basis.
pub fn finite_cover(t: &TowerComplex, n: usize) -> Result<MetrizedComplex> {
    if t.nvars > 1 {
        return Err(Error::VariableCount { expected: 1, found: t.nvars });
    }
    let diffs = t.differentials.iter().map(|d| d.circulant_blowup(n)).collect::<Result<Vec<_>>>()?;
    MetrizedComplex::new(t.dims.iter().map(|&d| d * n).collect(), diffs, None)
}

/// Deck transformations `Z/N` of `K_N`, generated by the cyclic shift.
pub fn deck_group(t: &TowerComplex, n: usize) -> Result<GroupActionData> {
    let shift = LaurentMatrix::from_entries(1, 1, 1, alloc::vec![LaurentPoly::var(0, 1)])?.circulant_blowup(n)?;
    let mats = t
        .dims
        .iter()
        .map(|&d| {
            let mut m = IntMatrix::zeros(0, 0);
            for _ in 0..d {
                m = m.direct_sum(&shift);
            }
            m
        })
        .collect();
    Ok(GroupActionData::new(alloc::vec![mats]))
}

/// Per degree: is `det Δ_j` not identically zero.
pub fn l2_acyclic(t: &TowerComplex) -> Result<Vec<bool>> {
    Ok(t.laplacian_determinants()?.iter().map(|p| !p.is_zero()).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tau2Report {
    /// `½ Σ_j (-1)^{j+1} j m(det Δ_j)`.
    pub tau2: f64,
    /// The same sum without the factor `½`.
    pub unhalved: f64,
    /// `m(det Δ_j) = ∫ log|det Δ_j|` for each degree.
    pub log_mahler: Vec<f64>,
    /// Certified for one variable, a two-grid heuristic otherwise.
    pub error: f64,
}

/// Default per-axis grid for the torus integrals when `m >= 2`.
pub const DEFAULT_GRID: usize = 256;

pub fn tau2(t: &TowerComplex) -> Result<f64> {
    Ok(tau2_report(t, DEFAULT_GRID)?.tau2)
}

pub fn tau2_report(t: &TowerComplex, grid: usize) -> Result<Tau2Report> {
    let dets = t.laplacian_determinants()?;
    let mut log_mahler = Vec::with_capacity(dets.len());
    let mut error = 0.0;
    let mut sum = 0.0;
    for (j, p) in dets.iter().enumerate() {
        if p.is_zero() {
            return Err(Error::NotAcyclic { degree: j });
        }
        let (lm, err) = if t.nvars <= 1 {
            let (q, _) = p.to_int_poly()?;
            let m = mahler_measure(&q)?;
            (m.log_value, m.log_error)
        } else {
            let e = mahler_multivariate_estimate(p, grid)?;
            (e.estimate, e.error_heuristic)
        };
        let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * j as f64 * lm;
        error += j as f64 * err;
        log_mahler.push(lm);
    }
    Ok(Tau2Report { tau2: 0.5 * sum, unhalved: sum, log_mahler, error: 0.5 * error })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TorsionSequencePoint {
    pub n: usize,
    /// `log T(K_N) = Σ_i (-1)^i log |H^i_tors|`.
    pub log_t: f64,
    /// `log T / [Λ : Λ_N]`, here `log T / N`.
    pub log_t_over_index: f64,
    pub per_degree: Vec<HomologySummary>,
    /// `log R^i = ½ log R_i²`.
    pub regulator_logs: Vec<f64>,
}

impl TorsionSequencePoint {
    pub fn torsion_orders(&self) -> Vec<BigInt> {
        self.per_degree.iter().map(HomologySummary::torsion_order).collect()
    }

    pub fn max_log_regulator_over_index(&self) -> f64 {
        self.regulator_logs.iter().fold(0.0f64, |a, &r| a.max(r.abs())) / self.n as f64
    }
}

/// Exact cohomology of `K_N`.
pub fn torsion_point(t: &TowerComplex, n: usize) -> Result<TorsionSequencePoint> {
    let cover = finite_cover(t, n)?;
    let per_degree = cover.cohomology_all()?;
    let mut log_t = 0.0;
    let mut regulator_logs = Vec::with_capacity(per_degree.len());
    for h in &per_degree {
        let sign = if h.degree % 2 == 0 { 1.0 } else { -1.0 };
        log_t += sign * ln_bigint(&h.torsion_order());
        regulator_logs.push(0.5 * ln_rational(&h.regulator_sq));
    }
    Ok(TorsionSequencePoint { n, log_t, log_t_over_index: log_t / n as f64, per_degree, regulator_logs })
}

/// Sequential sweep over the given cover degrees.
pub fn torsion_sequence(t: &TowerComplex, ns: &[usize]) -> Result<Vec<TorsionSequencePoint>> {
    ns.iter().map(|&n| torsion_point(t, n)).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PapproxReport {
    pub n: usize,
    pub tau2: f64,
    pub unhalved_tau2: f64,
    pub log_t_over_n: f64,
    /// `|log T(K_N)/N + τ^(2)|`
    pub residual: f64,
    pub max_log_regulator_over_n: f64,
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Checks the torsion limit and regulator decay at `N = n_max`.
pub fn verify_papprox(t: &TowerComplex, n_max: usize, tol: f64) -> Result<PapproxReport> {
    let tr = tau2_report(t, DEFAULT_GRID)?;
    let p = torsion_point(t, n_max)?;
    Ok(papprox_from_point(&tr, &p, tol))
}

/// The comparison of [`verify_papprox`] for an already computed point.
pub fn papprox_from_point(tr: &Tau2Report, p: &TorsionSequencePoint, tol: f64) -> PapproxReport {
    let residual = (p.log_t_over_index + tr.tau2).abs();
    let mut failures = Vec::new();
    if !(residual <= tol) {
        failures.push(format!("N = {}: |log T/N + tau2| = {residual:.6} > {tol}", p.n));
    }
    for (i, r) in p.regulator_logs.iter().enumerate() {
        let v = r.abs() / p.n as f64;
        if !(v <= tol) {
            failures.push(format!("N = {}, degree {i}: |log R|/N = {v:.6} > {tol}", p.n));
        }
    }
    PapproxReport {
        n: p.n,
        tau2: tr.tau2,
        unhalved_tau2: tr.unhalved,
        log_t_over_n: p.log_t_over_index,
        residual,
        max_log_regulator_over_n: p.max_log_regulator_over_index(),
        passed: failures.is_empty(),
        failures,
    }
}
