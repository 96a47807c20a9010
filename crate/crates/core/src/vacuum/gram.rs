//! Contravariant Gram blocks over Q, Z[k] and Z/pZ.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use super::algebra::{Engine, GramStore};
use super::basis::{PbwBasis, PbwMonomial};
use super::ring::{CoeffRing, LevelPolynomials, ModP, PolyK, Rationals};
use crate::error::Result;
use crate::linalg::{DenseMatrix, Zp};
use crate::rational::{fmt_q, Q};

/// Gram matrix of one `(degree, weight)` slice at a rational level.
#[derive(Debug, Clone, PartialEq)]
pub struct GramBlock {
    pub degree: usize,
    pub weight: i64,
    pub level: Q,
    pub basis: Vec<PbwMonomial>,
    pub matrix: Vec<Vec<Q>>,
}

impl GramBlock {
    pub fn size(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..i).all(|j| self.matrix[i][j] == self.matrix[j][i]))
    }

    pub fn rank(&self) -> usize {
        crate::linalg::exact::rank(&self.matrix)
    }
}

impl Serialize for GramBlock {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let m: Vec<Vec<String>> = self.matrix.iter().map(|r| r.iter().map(fmt_q).collect()).collect();
        let mut st = s.serialize_struct("GramBlock", 5)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("level", &fmt_q(&self.level))?;
        st.serialize_field("basis", &self.basis)?;
        st.serialize_field("matrix", &m)?;
        st.end()
    }
}

/// Gram matrix with entries in Z[k].
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolicGramBlock {
    pub degree: usize,
    pub weight: i64,
    pub basis: Vec<PbwMonomial>,
    pub matrix: Vec<Vec<PolyK>>,
}

fn block_basis(basis: &PbwBasis, d: usize, w: i64) -> Vec<PbwMonomial> {
    basis.block(d, w).map(|id| basis.monomial(id).clone()).collect()
}

pub fn contravariant_gram(k: &Q, d: usize, w: i64) -> Result<GramBlock> {
    let basis = Arc::new(PbwBasis::new(d));
    let mut engine = Engine::new(basis.clone(), Rationals { k: k.clone() });
    let mut store = GramStore::default();
    let m = engine.gram(&mut store, d, w)?;
    Ok(GramBlock { degree: d, weight: w, level: k.clone(), basis: block_basis(&basis, d, w), matrix: (*m).clone() })
}

pub fn symbolic_gram(d: usize, w: i64) -> Result<SymbolicGramBlock> {
    let basis = Arc::new(PbwBasis::new(d));
    let mut engine = Engine::new(basis.clone(), LevelPolynomials);
    let mut store = GramStore::default();
    let m = engine.gram(&mut store, d, w)?;
    Ok(SymbolicGramBlock { degree: d, weight: w, basis: block_basis(&basis, d, w), matrix: (*m).clone() })
}

pub fn modular_matrix(rows: &[Vec<u64>]) -> DenseMatrix {
    let n = rows.first().map_or(0, |r| r.len());
    DenseMatrix::from_rows(rows, n)
}

/// Gram block reduced mod p, via the mod-p engine.
pub fn modular_gram(engine: &mut Engine<ModP>, store: &mut GramStore<u64>, d: usize, w: i64) -> Result<DenseMatrix> {
    let g = engine.gram(store, d, w)?;
    Ok(modular_matrix(&g))
}

fn poly_sub(a: &PolyK, b: &PolyK) -> PolyK {
    let r = LevelPolynomials;
    let nb: PolyK = b.iter().map(|c| -c).collect();
    r.add(a, &nb)
}

/// Exact quotient `a / b` in Z[k]; panics if `b` does not divide `a`.
fn poly_div_exact(a: &PolyK, b: &PolyK) -> PolyK {
    if a.is_empty() {
        return Vec::new();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len().saturating_sub(db).max(1)];
    while rem.len() > db && !rem.is_empty() {
        let dr = rem.len() - 1;
        let (c, r) = rem[dr].div_rem(lb);
        assert!(r.is_zero(), "inexact polynomial division");
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            rem[shift + i] -= &c * bc;
        }
        quot[shift] = c;
        while rem.last().is_some_and(|x| x.is_zero()) {
            rem.pop();
        }
    }
    assert!(rem.is_empty(), "inexact polynomial division");
    while quot.last().is_some_and(|x| x.is_zero()) {
        quot.pop();
    }
    quot
}

/// Rank over Q(k) by fraction-free elimination.
pub fn symbolic_rank(m: &[Vec<PolyK>]) -> usize {
    let ring = LevelPolynomials;
    let mut a: Vec<Vec<PolyK>> = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut prev: PolyK = ring.one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_empty()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let t = poly_sub(&ring.mul(&a[i][j], &a[r][c]), &ring.mul(&a[i][c], &a[r][j]));
                a[i][j] = poly_div_exact(&t, &prev);
            }
            a[i][c] = Vec::new();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank of the block at a random point `k mod p`.
pub fn rank_at(field: Zp, k: u64, m: &[Vec<PolyK>]) -> usize {
    let rows: Vec<Vec<u64>> =
        m.iter().map(|r| r.iter().map(|p| super::ring::eval_poly_mod(p, k, field)).collect()).collect();
    modular_matrix(&rows).rank(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn example_blocks() {
        let k = q(3, 5);
        assert_eq!(contravariant_gram(&k, 1, 2).unwrap().matrix, vec![vec![k.clone()]]);
        assert_eq!(contravariant_gram(&qi(0), 1, 2).unwrap().rank(), 0);
        assert_eq!(contravariant_gram(&k, 0, 0).unwrap().matrix, vec![vec![qi(1)]]);
    }

    #[test]
    fn degree_two_weight_zero() {
        let b = contravariant_gram(&q(7, 2), 2, 0).unwrap();
        assert_eq!(b.size(), 3);
        assert!(b.is_symmetric());
        let s = symbolic_gram(2, 0).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(super::super::ring::eval_poly(&s.matrix[i][j], &q(7, 2)), b.matrix[i][j]);
            }
        }
        assert_eq!(symbolic_rank(&s.matrix), 3);
    }

    #[test]
    fn exact_division() {
        let a: PolyK = vec![BigInt::from(-2), BigInt::from(1), BigInt::from(1)]; // (k+2)(k-1)
        let b: PolyK = vec![BigInt::from(2), BigInt::from(1)];
        assert_eq!(poly_div_exact(&a, &b), vec![BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn symbolic_rank_detects_dependence() {
        let k: PolyK = vec![BigInt::zero(), BigInt::from(1)];
        let two_k: PolyK = vec![BigInt::zero(), BigInt::from(2)];
        let one: PolyK = vec![BigInt::from(1)];
        let two: PolyK = vec![BigInt::from(2)];
        assert_eq!(symbolic_rank(&[vec![k.clone(), one.clone()], vec![two_k, two]]), 1);
        assert_eq!(symbolic_rank(&[vec![k.clone(), one.clone()], vec![one, k]]), 2);
    }
}
