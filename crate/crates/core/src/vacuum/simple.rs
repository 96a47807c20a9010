//! Graded dimensions and singular vectors of the simple quotient.
//!
//! Ranks of Gram blocks are computed mod a 61-bit prime, which only gives
//! lower bounds for the rational ranks. At a rational level they are
//! certified from the other side: the submodule generated by the exact
//! singular vectors found so far is rebuilt degree by degree (its vectors
//! lie in the radical and their span mod p has dimension at most the
//! rational nullity). When that span fills the modular kernel the rank is
//! exact; otherwise the computation reports `Uncertified`.
//!
//! At the generic level the Gram matrix is evaluated at two random points
//! mod p; a block that is not visibly of full rank goes through fraction
//! free elimination over Z[k].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{Engine, GramStore, SVec};
use super::basis::{Gen, PbwBasis, PbwMonomial};
use super::gram::{modular_matrix, symbolic_rank};
use super::ring::{LevelPolynomials, ModP, Rationals};
use crate::error::{Error, Result};
use crate::level::LevelSpec;
use crate::linalg::{exact_kernel, DenseMatrix, SparseRow, Zp, PRIMES};
use crate::rational::{fmt_q, Q};

const GENERIC_SEED: u64 = 0x9e37_79b9_7f4a_7c15;

/// A singular vector as a primitive integer combination of one block's
/// basis, coordinates in basis order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularVector {
    pub degree: usize,
    pub weight: i64,
    pub basis: Vec<PbwMonomial>,
    pub coords: Vec<Q>,
}

impl SingularVector {
    /// Nonzero terms.
    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &Q)> {
        self.basis.iter().zip(&self.coords).filter(|(_, c)| !c.is_zero())
    }
}

impl Serialize for SingularVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<(String, String)> = self.terms().map(|(m, c)| (m.to_string(), fmt_q(c))).collect();
        let mut st = s.serialize_struct("SingularVector", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

/// Certified data of `L_k(sl2)` through a truncation degree.
#[derive(Debug, Clone)]
pub struct SimpleQuotient {
    pub level: LevelSpec,
    pub truncation: usize,
    pub block_ranks: BTreeMap<(usize, i64), usize>,
    pub graded_dims: Vec<usize>,
    pub singular_vectors: Vec<SingularVector>,
}

impl SimpleQuotient {
    pub fn singular_at(&self, d: usize) -> Vec<SingularVector> {
        self.singular_vectors.iter().filter(|s| s.degree == d).cloned().collect()
    }
}

fn field_for(k: &Q) -> Result<ModP> {
    PRIMES
        .iter()
        .find_map(|&p| ModP::new(Zp::new(p), k))
        .ok_or_else(|| Error::Uncertified(format!("no working prime for level {}", fmt_q(k))))
}

fn dense_block(basis: &PbwBasis, rows: &[SVec<u64>], d: usize, w: i64) -> DenseMatrix {
    let range = basis.block(d, w);
    let mut m = DenseMatrix::zeros(rows.len(), range.len());
    for (i, r) in rows.iter().enumerate() {
        for (id, c) in r {
            m.set(i, (id - range.start) as usize, *c);
        }
    }
    m
}

fn ranks_parallel(mats: Vec<DenseMatrix>, f: Zp) -> Vec<usize> {
    mats.into_par_iter().map(|mut m| m.eliminate(f, false).rank).collect()
}

/// Scales a rational vector to a primitive integer vector whose first
/// nonzero entry is positive.
fn primitive(v: &[Q]) -> Vec<Q> {
    let l = crate::rational::lcm_of_denominators(v.iter());
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

struct RationalRun {
    k: Q,
    modp: Engine<ModP>,
    exact: Option<Engine<Rationals>>,
    /// Radical span mod p, per block, built from singular vectors.
    span: BTreeMap<(usize, i64), Vec<SVec<u64>>>,
}

impl RationalRun {
    fn exact_engine(&mut self) -> &mut Engine<Rationals> {
        let basis = self.modp.basis().clone();
        let k = self.k.clone();
        self.exact.get_or_insert_with(|| Engine::new(basis, Rationals { k }))
    }

    /// Rows of the stacked map `v -> (e(0) v, f(1) v)` on block `(d, w)`,
    /// as sparse rows indexed by local column.
    fn stacked_rows_modp(&mut self, d: usize, w: i64) -> Result<DenseMatrix> {
        let basis = self.modp.basis().clone();
        let cols = basis.block(d, w);
        let up = basis.block(d, w + 2);
        let down = basis.block(d - 1, w - 2);
        let mut m = DenseMatrix::zeros(up.len() + down.len(), cols.len());
        for (j, id) in cols.clone().enumerate() {
            for (t, c) in self.modp.annihilate(Gen::E, 0, id)?.iter() {
                m.set((t - up.start) as usize, j, *c);
            }
            for (t, c) in self.modp.annihilate(Gen::F, 1, id)?.iter() {
                m.set(up.len() + (t - down.start) as usize, j, *c);
            }
        }
        Ok(m)
    }

    fn exact_singular(&mut self, d: usize, w: i64) -> Result<Vec<SingularVector>> {
        let basis = self.modp.basis().clone();
        let cols = basis.block(d, w);
        let up = basis.block(d, w + 2);
        let down = basis.block(d - 1, w - 2);
        let mut rows: Vec<SparseRow> = vec![Vec::new(); up.len() + down.len()];
        let engine = self.exact_engine();
        for (j, id) in cols.clone().enumerate() {
            for (t, c) in engine.annihilate(Gen::E, 0, id)?.iter() {
                rows[(t - up.start) as usize].push((j, c.clone()));
            }
            for (t, c) in engine.annihilate(Gen::F, 1, id)?.iter() {
                rows[up.len() + (t - down.start) as usize].push((j, c.clone()));
            }
        }
        rows.retain(|r| !r.is_empty());
        let kernel = exact_kernel(&rows, cols.len());
        let mono: Vec<PbwMonomial> = cols.map(|id| basis.monomial(id).clone()).collect();
        Ok(kernel
            .iter()
            .map(|v| SingularVector { degree: d, weight: w, basis: mono.clone(), coords: primitive(v) })
            .collect())
    }

    /// `s, f(0) s, f(0)^2 s, ...` reduced mod p.
    fn orbit_modp(&mut self, s: &SingularVector) -> Result<Vec<(i64, SVec<u64>)>> {
        let basis = self.modp.basis().clone();
        let f = self.modp.ring().field;
        let start = basis.block(s.degree, s.weight).start;
        let mut v: SVec<u64> = s
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (start + i as u32, f.from_bigint(c.numer())))
            .filter(|(_, c)| *c != 0)
            .collect();
        let mut out = Vec::new();
        let mut w = s.weight;
        while !v.is_empty() {
            out.push((w, v.clone()));
            v = self.modp.apply(Gen::F, 0, &v)?;
            w -= 2;
        }
        Ok(out)
    }
}

/// Computes certified graded dimensions and all singular vectors through
/// degree `n_max`.
pub fn analyze(level: &LevelSpec, n_max: usize) -> Result<SimpleQuotient> {
    let basis = Arc::new(PbwBasis::new(n_max));
    match level {
        LevelSpec::Generic => analyze_generic(basis, n_max),
        LevelSpec::Rational(k) => analyze_rational(basis, k.value(), n_max),
    }
}

fn analyze_generic(basis: Arc<PbwBasis>, n_max: usize) -> Result<SimpleQuotient> {
    let field = Zp::new(PRIMES[0]);
    let mut rng = ChaCha8Rng::seed_from_u64(GENERIC_SEED);
    let mut engines: Vec<Engine<ModP>> = (0..2)
        .map(|_| {
            let k = rng.gen_range(1..field.modulus());
            Engine::new(basis.clone(), ModP { field, k })
        })
        .collect();
    let mut stores: Vec<GramStore<u64>> = vec![GramStore::default(), GramStore::default()];
    let mut symbolic: Option<(Engine<LevelPolynomials>, GramStore<Vec<BigInt>>)> = None;
    let mut block_ranks = BTreeMap::new();
    let mut graded_dims = Vec::with_capacity(n_max + 1);
    for d in 0..=n_max {
        let weights = basis.weights(d);
        let mut rank_sets = Vec::new();
        for (engine, store) in engines.iter_mut().zip(stores.iter_mut()) {
            let mut mats = Vec::new();
            for &w in &weights {
                mats.push(modular_matrix(&engine.gram(store, d, w)?));
            }
            rank_sets.push(ranks_parallel(mats, field));
        }
        let mut total = 0;
        for (i, &w) in weights.iter().enumerate() {
            let n = basis.block(d, w).len();
            let mut r = rank_sets[0][i].max(rank_sets[1][i]);
            if r < n {
                let (engine, store) = symbolic
                    .get_or_insert_with(|| (Engine::new(basis.clone(), LevelPolynomials), GramStore::default()));
                r = symbolic_rank(&engine.gram(store, d, w)?);
            }
            block_ranks.insert((d, w), r);
            total += r;
        }
        graded_dims.push(total);
    }
    Ok(SimpleQuotient { level: LevelSpec::Generic, truncation: n_max, block_ranks, graded_dims, singular_vectors: Vec::new() })
}

fn analyze_rational(basis: Arc<PbwBasis>, k: &Q, n_max: usize) -> Result<SimpleQuotient> {
    let ring = field_for(k)?;
    let f = ring.field;
    let mut run = RationalRun { k: k.clone(), modp: Engine::new(basis.clone(), ring), exact: None, span: BTreeMap::new() };
    let mut store: GramStore<u64> = GramStore::default();
    let mut block_ranks = BTreeMap::new();
    let mut graded_dims = Vec::with_capacity(n_max + 1);
    let mut singular = Vec::new();
    for d in 0..=n_max {
        let weights = basis.weights(d);
        let mut mats = Vec::new();
        for &w in &weights {
            mats.push(modular_matrix(&run.modp.gram(&mut store, d, w)?));
        }
        let ranks = ranks_parallel(mats, f);
        let rank_of: BTreeMap<i64, usize> = weights.iter().copied().zip(ranks.iter().copied()).collect();

        // Singular vectors live in the radical and have weight >= 0.
        let mut found: Vec<SingularVector> = Vec::new();
        if d > 0 {
            let cand: Vec<i64> =
                weights.iter().copied().filter(|&w| w >= 0 && rank_of[&w] < basis.block(d, w).len()).collect();
            let mut stacked = Vec::new();
            for &w in &cand {
                stacked.push(run.stacked_rows_modp(d, w)?);
            }
            let sranks = ranks_parallel(stacked, f);
            for (&w, r) in cand.iter().zip(sranks) {
                if r < basis.block(d, w).len() {
                    found.extend(run.exact_singular(d, w)?);
                }
            }
        }

        // Rebuild the radical: x(-1) applied to the previous degree plus the
        // sl2-orbits of the new singular vectors.
        let mut rows: BTreeMap<i64, Vec<SVec<u64>>> = BTreeMap::new();
        for s in &found {
            for (w, v) in run.orbit_modp(s)? {
                rows.entry(w).or_default().push(v);
            }
        }
        let mut targets = Vec::new();
        for &w in &weights {
            let n = basis.block(d, w).len();
            if rank_of[&w] == n {
                continue;
            }
            let mut r = rows.remove(&w).unwrap_or_default();
            if d > 0 {
                for x in Gen::ALL {
                    let src = run.span.get(&(d - 1, w - x.weight())).cloned().unwrap_or_default();
                    for v in &src {
                        r.push(run.modp.apply(x, -1, v)?);
                    }
                }
            }
            targets.push((w, r));
        }
        let bases: Vec<(i64, usize, Vec<SVec<u64>>)> = targets
            .into_par_iter()
            .map(|(w, r)| {
                let mut m = dense_block(&basis, &r, d, w);
                let e = m.eliminate(f, false);
                let kept: Vec<SVec<u64>> = e.pivot_rows.iter().map(|&i| r[i].clone()).collect();
                (w, e.rank, kept)
            })
            .collect();
        for (w, span_rank, kept) in bases {
            let n = basis.block(d, w).len();
            let nullity = n - rank_of[&w];
            if span_rank != nullity {
                return Err(Error::Uncertified(format!(
                    "level {}, degree {d}, weight {w}: modular nullity {nullity} but only {span_rank} radical vectors \
                     constructed (radical not generated by singular vectors of degree <= {d})",
                    fmt_q(k)
                )));
            }
            run.span.insert((d, w), kept);
        }
        if d >= 1 {
            run.span.retain(|&(dd, _), _| dd + 1 >= d);
        }
        let mut total = 0;
        for &w in &weights {
            block_ranks.insert((d, w), rank_of[&w]);
            total += rank_of[&w];
        }
        graded_dims.push(total);
        singular.extend(found);
    }
    Ok(SimpleQuotient {
        level: LevelSpec::Rational(k.clone().into()),
        truncation: n_max,
        block_ranks,
        graded_dims,
        singular_vectors: singular,
    })
}

/// Dimension of degree `d` of `L_k(sl2)`.
pub fn graded_dim_simple(level: &LevelSpec, d: usize) -> Result<usize> {
    Ok(analyze(level, d)?.graded_dims[d])
}

/// Basis of the singular vectors of degree `d`.
pub fn singular_vectors(level: &LevelSpec, d: usize) -> Result<Vec<SingularVector>> {
    Ok(analyze(level, d)?.singular_at(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::level::Level;
    use crate::rational::{q, qi};
    use crate::vacuum::basis::universal_dimensions;

    fn lv(k: Q) -> LevelSpec {
        LevelSpec::Rational(Level::from(k))
    }

    #[test]
    fn level_zero_is_trivial() {
        let a = analyze(&lv(qi(0)), 4).unwrap();
        assert_eq!(a.graded_dims, vec![1, 0, 0, 0, 0]);
        let s = a.singular_at(1);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].terms().map(|(m, c)| (m.to_string(), c.clone())).collect::<Vec<_>>(), vec![("e(-1)".into(), qi(1))]);
    }

    #[test]
    fn level_one_singular_vector() {
        let a = analyze(&lv(qi(1)), 3).unwrap();
        // 9 monomials minus the 5-dimensional sl2-orbit of e(-1)^2
        assert_eq!(a.graded_dims[2], 4);
        let s = a.singular_at(2);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].weight, 4);
        assert!(a.singular_at(1).is_empty());
    }

    #[test]
    fn generic_is_full() {
        let a = analyze(&LevelSpec::Generic, 6).unwrap();
        let u = universal_dimensions(6);
        for d in 0..=6 {
            assert_eq!(BigInt::from(a.graded_dims[d]), u[d]);
        }
        assert!(a.singular_vectors.is_empty());
    }

    #[test]
    fn admissible_minus_four_thirds() {
        let a = analyze(&lv(q(-4, 3)), 4).unwrap();
        let s = a.singular_at(3);
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].degree, s[0].weight), (3, 2));
        assert!(a.singular_at(1).is_empty() && a.singular_at(2).is_empty());
        assert_eq!(&a.graded_dims[..3], &[1, 3, 9]);
    }
}
