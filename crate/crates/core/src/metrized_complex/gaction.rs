use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::MetrizedComplex;
use crate::error::{Error, Result};
use crate::exact_linalg::{adjoint, integer_kernel, saturated_image, IntMatrix};

/// Generators of a finite group acting on a complex, one integer matrix per
/// degree for each generator.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupActionData {
    generators: Vec<Vec<IntMatrix>>,
}

impl GroupActionData {
    pub fn new(generators: Vec<Vec<IntMatrix>>) -> Self {
        GroupActionData { generators }
    }

    /// The trivial group, acting on a complex with the given dims.
    pub fn trivial(dims: &[usize]) -> Self {
        GroupActionData { generators: alloc::vec![dims.iter().map(|&n| IntMatrix::identity(n)).collect()] }
    }

    pub fn generators(&self) -> &[Vec<IntMatrix>] {
        &self.generators
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GactionDegreeReport {
    pub degree: usize,
    /// Dimension of the isotypic part of `A^i` for characters of `H^i`.
    pub isotypic_dim: usize,
    pub regulator_sq: BigRational,
    /// `(M² ν² |G|^{10})^{-D}`.
    pub bound_sq: BigRational,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GactionReport {
    pub group_order: usize,
    pub abelian: bool,
    /// Upper bound for the squared operator norm of every differential.
    pub m_sq: BigRational,
    /// Largest squared length of a basis vector.
    pub nu_sq: BigRational,
    pub degrees: Vec<GactionDegreeReport>,
    pub holds: bool,
}

const MAX_GROUP_ORDER: usize = 4096;

struct Element {
    mats: Vec<IntMatrix>,
    word: Vec<i64>,
    /// Index of `self · g_k` for each generator.
    next: Vec<usize>,
}

fn key(mats: &[IntMatrix]) -> Vec<BigInt> {
    mats.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::GroupAction(msg.into()))
}

fn validate(c: &MetrizedComplex, g: &GroupActionData) -> Result<()> {
    for (k, gen) in g.generators.iter().enumerate() {
        if gen.len() != c.dims().len() {
            return fail(alloc::format!("generator {k} has {} matrices, expected {}", gen.len(), c.dims().len()));
        }
        for (j, m) in gen.iter().enumerate() {
            if m.rows() != c.dims()[j] || m.cols() != c.dims()[j] {
                return fail(alloc::format!("generator {k} has the wrong shape in degree {j}"));
            }
            if !m.det()?.magnitude().is_one() {
                return fail(alloc::format!("generator {k} is not invertible over Z in degree {j}"));
            }
            let q = m.to_rat();
            let gram = &c.grams()[j];
            if &(&q.transpose() * gram) * &q != *gram {
                return fail(alloc::format!("generator {k} does not preserve the metric in degree {j}"));
            }
        }
        for (j, d) in c.differentials().iter().enumerate() {
            if d * &gen[j] != &gen[j + 1] * d {
                return fail(alloc::format!("generator {k} does not commute with d_{j}"));
            }
        }
    }
    Ok(())
}

fn closure(c: &MetrizedComplex, g: &GroupActionData) -> Result<Vec<Element>> {
    let id: Vec<IntMatrix> = c.dims().iter().map(|&n| IntMatrix::identity(n)).collect();
    let s = g.generators.len();
    let mut seen = BTreeMap::new();
    seen.insert(key(&id), 0usize);
    let mut elems = alloc::vec![Element { mats: id, word: alloc::vec![0; s], next: Vec::new() }];
    let mut head = 0;
    while head < elems.len() {
        for gen in &g.generators {
            let mats: Vec<IntMatrix> = elems[head].mats.iter().zip(gen).map(|(a, b)| a * b).collect();
            let kk = key(&mats);
            let k = elems[head].next.len();
            let idx = match seen.get(&kk) {
                Some(&i) => i,
                None => {
                    let mut word = elems[head].word.clone();
                    word[k] += 1;
                    let i = elems.len();
                    seen.insert(kk, i);
                    elems.push(Element { mats, word, next: Vec::new() });
                    if elems.len() > MAX_GROUP_ORDER {
                        return fail("group generated is too large (or infinite)");
                    }
                    i
                }
            };
            elems[head].next.push(idx);
        }
        head += 1;
    }
    Ok(elems)
}

fn is_abelian(g: &GroupActionData) -> bool {
    let gens = &g.generators;
    for a in gens {
        for b in gens {
            for (x, y) in a.iter().zip(b) {
                if x * y != y * x {
                    return false;
                }
            }
        }
    }
    true
}

/// Trace of `g` restricted to the invariant subspace spanned by `basis`.
fn restricted_trace(g: &IntMatrix, basis: &IntMatrix) -> Result<BigRational> {
    if basis.cols() == 0 {
        return Ok(BigRational::zero());
    }
    let b = basis.to_rat();
    let gb = (g * basis).to_rat();
    let x = b
        .solve(&gb)
        .ok_or_else(|| Error::GroupAction("subspace is not invariant".into()))?;
    Ok(x.trace())
}

/// All characters of an abelian group, as phases `c_k / l` of the
/// generators; returns them with the common denominator `l`.
fn characters(elems: &[Element], gens: usize) -> (Vec<Vec<u64>>, u64) {
    let orders: Vec<u64> = (0..gens)
        .map(|k| {
            let mut i = elems[0].next[k];
            let mut o = 1u64;
            while i != 0 {
                i = elems[i].next[k];
                o += 1;
            }
            o
        })
        .collect();
    let l = orders.iter().fold(1u64, |a, &b| num_integer::lcm(a, b));
    let phase = |c: &[u64], e: &Element| -> u64 {
        let p: i128 = c.iter().zip(&e.word).map(|(&c, &w)| c as i128 * w as i128).sum();
        p.rem_euclid(l as i128) as u64
    };
    let total: u64 = orders.iter().product();
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut c = Vec::with_capacity(gens);
        for &o in &orders {
            c.push((code % o) * (l / o));
            code /= o;
        }
        // Words are only one representative per element: keep the tuple if
        // it is multiplicative along every edge of the Cayley graph.
        let consistent = elems.iter().all(|e| {
            e.next
                .iter()
                .enumerate()
                .all(|(k, &n)| (phase(&c, e) + c[k]) % l == phase(&c, &elems[n]))
        });
        if consistent {
            out.push(c);
        }
    }
    (out, l)
}

/// Checks `R_i ≥ (M ν |G|^5)^{-D}` in every degree, in squared form.
pub fn verify_gaction_bound(c: &MetrizedComplex, g: &GroupActionData) -> Result<GactionReport> {
    validate(c, g)?;
    let elems = closure(c, g)?;
    let order = elems.len();
    let abelian = is_abelian(g);

    let mut m_sq = BigRational::one();
    for (j, d) in c.differentials().iter().enumerate() {
        let dq = d.to_rat();
        let f = (&adjoint(&dq, &c.grams()[j], &c.grams()[j + 1])? * &dq).trace();
        if f > m_sq {
            m_sq = f;
        }
    }
    let mut nu_sq = BigRational::one();
    for gram in c.grams() {
        for i in 0..gram.rows() {
            if *gram.get(i, i) > nu_sq {
                nu_sq = gram.get(i, i).clone();
            }
        }
    }
    let g10 = BigRational::from_integer(num_traits::pow(BigInt::from(order), 10));
    let base = &(&m_sq * &nu_sq) * &g10;

    let chars = if abelian && order > 1 { Some(characters(&elems, g.generators.len())) } else { None };
    let mut degrees = Vec::new();
    for i in 0..=c.top_degree() {
        let h = c.cohomology(i)?;
        let d = if h.free_rank == 0 {
            0
        } else if let Some((chars, l)) = &chars {
            isotypic_dim(c, i, &elems, chars, *l, h.free_rank)?
        } else {
            // Trivial or non-abelian group: the whole cochain group contains
            // the isotypic part.
            c.dims()[i]
        };
        let bound_sq = num_traits::pow(base.recip(), d);
        let holds = h.regulator_sq >= bound_sq;
        degrees.push(GactionDegreeReport { degree: i, isotypic_dim: d, regulator_sq: h.regulator_sq, bound_sq, holds });
    }
    let holds = degrees.iter().all(|d| d.holds);
    Ok(GactionReport { group_order: order, abelian, m_sq, nu_sq, degrees, holds })
}

fn isotypic_dim(
    c: &MetrizedComplex,
    i: usize,
    elems: &[Element],
    chars: &[Vec<u64>],
    l: u64,
    free_rank: usize,
) -> Result<usize> {
    let ker = integer_kernel(&c.outgoing(i));
    let im = saturated_image(&c.incoming(i));
    let mut chi_h = Vec::with_capacity(elems.len());
    let mut chi_a = Vec::with_capacity(elems.len());
    for e in elems {
        let gi = &e.mats[i];
        let th = restricted_trace(gi, &ker)? - restricted_trace(gi, &im)?;
        chi_h.push(th.to_f64().unwrap_or(f64::NAN));
        chi_a.push(gi.trace().to_f64().unwrap_or(f64::NAN));
    }
    let n = elems.len() as f64;
    let mut total_h = 0usize;
    let mut total_a = 0usize;
    let mut d = 0usize;
    for ch in chars {
        let mut sh = Complex64::zero();
        let mut sa = Complex64::zero();
        for (k, e) in elems.iter().enumerate() {
            let p: i128 = ch.iter().zip(&e.word).map(|(&c, &w)| c as i128 * w as i128).sum();
            let p = p.rem_euclid(l as i128) as f64 / l as f64;
            let a = 2.0 * core::f64::consts::PI * p;
            let conj = Complex64::new(libm::cos(a), -libm::sin(a));
            sh += conj * chi_h[k];
            sa += conj * chi_a[k];
        }
        let mh = round_multiplicity(sh / n)?;
        let ma = round_multiplicity(sa / n)?;
        total_h += mh;
        total_a += ma;
        if mh > 0 {
            d += ma;
        }
    }
    if total_h != free_rank || total_a != c.dims()[i] {
        return Err(Error::GroupAction(alloc::format!(
            "character decomposition inconsistent in degree {i}: {total_h}/{free_rank}, {total_a}/{}",
            c.dims()[i]
        )));
    }
    Ok(d)
}

fn round_multiplicity(z: Complex64) -> Result<usize> {
    let m = libm::round(z.re);
    if (z.re - m).abs() > 1e-6 || z.im.abs() > 1e-6 || m < 0.0 {
        return Err(Error::GroupAction("character inner product is not a multiplicity".into()));
    }
    Ok(m as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn trivial_group_mk() {
        let c = super::super::tests::mk_complex(3);
        let r = verify_gaction_bound(&c, &GroupActionData::trivial(c.dims())).unwrap();
        assert_eq!(r.group_order, 1);
        assert!(r.holds);
        assert_eq!(r.degrees[1].isotypic_dim, 2);
    }

    #[test]
    fn swap_action() {
        // Z/2 swapping coordinates of 0 -> Z^2 -> 0
        let c = MetrizedComplex::new(vec![2], vec![], None).unwrap();
        let swap = IntMatrix::from_rows(&[[0i64, 1], [1, 0]]);
        let r = verify_gaction_bound(&c, &GroupActionData::new(vec![vec![swap]])).unwrap();
        assert_eq!(r.group_order, 2);
        assert!(r.abelian);
        assert_eq!(r.degrees[0].isotypic_dim, 2);
        assert!(r.holds);
    }

    #[test]
    fn sign_action_isotypic_part() {
        // Z/2 acting by (+1, -1) on Z^2 with d = 0 into A^1 = Z^1 (first coordinate)
        let d = IntMatrix::from_rows(&[[1i64, 0]]);
        let c = MetrizedComplex::new(vec![2, 1], vec![d], None).unwrap();
        let g0 = IntMatrix::from_rows(&[[1i64, 0], [0, -1]]);
        let g1 = IntMatrix::from_rows(&[[1i64]]);
        let r = verify_gaction_bound(&c, &GroupActionData::new(vec![vec![g0, g1]])).unwrap();
        // H^0 = Z e_2 carries the sign character; only e_2 is in that part.
        assert_eq!(r.degrees[0].isotypic_dim, 1);
        assert_eq!(r.degrees[1].isotypic_dim, 0);
    }

    #[test]
    fn dependent_generators() {
        // Z/4 generated by a 90-degree rotation and its square.
        let c = MetrizedComplex::new(vec![2], vec![], None).unwrap();
        let rot = IntMatrix::from_rows(&[[0i64, -1], [1, 0]]);
        let half = &rot * &rot;
        let r = verify_gaction_bound(&c, &GroupActionData::new(vec![vec![half], vec![rot]])).unwrap();
        assert_eq!(r.group_order, 4);
        assert_eq!(r.degrees[0].isotypic_dim, 2);
    }

    #[test]
    fn rejects_non_equivariant() {
        let d = IntMatrix::from_rows(&[[1i64, 0]]);
        let c = MetrizedComplex::new(vec![2, 1], vec![d], None).unwrap();
        let swap = IntMatrix::from_rows(&[[0i64, 1], [1, 0]]);
        let r = verify_gaction_bound(&c, &GroupActionData::new(vec![vec![swap, IntMatrix::identity(1)]]));
        assert!(matches!(r, Err(Error::GroupAction(_))));
        let scale = IntMatrix::from_rows(&[[2i64]]);
        let c = MetrizedComplex::new(vec![1], vec![], None).unwrap();
        assert!(verify_gaction_bound(&c, &GroupActionData::new(vec![vec![scale]])).is_err());
    }
}
