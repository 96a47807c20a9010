//! PBW basis of the universal affine vertex algebra of sl2.
//!
//! A creation operator `x(-n)` (x in {e, h, f}, n >= 1) is encoded as the
//! byte `3(n-1) + x`. A PBW monomial is a nondecreasing sequence of such
//! bytes applied to the vacuum, so every basis vector has exactly one
//! representation.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Gen {
    E = 0,
    H = 1,
    F = 2,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::E, Gen::H, Gen::F];

    pub fn from_index(i: u8) -> Gen {
        Gen::ALL[i as usize]
    }

    /// h-eigenvalue.
    pub fn weight(self) -> i64 {
        match self {
            Gen::E => 2,
            Gen::H => 0,
            Gen::F => -2,
        }
    }

    /// Image under the anti-involution e <-> f, h <-> h.
    pub fn bar(self) -> Gen {
        match self {
            Gen::E => Gen::F,
            Gen::H => Gen::H,
            Gen::F => Gen::E,
        }
    }

    /// `[a, b] = c * z`.
    pub fn bracket(a: Gen, b: Gen) -> Option<(i64, Gen)> {
        use Gen::*;
        match (a, b) {
            (E, F) => Some((1, H)),
            (F, E) => Some((-1, H)),
            (H, E) => Some((2, E)),
            (E, H) => Some((-2, E)),
            (H, F) => Some((-2, F)),
            (F, H) => Some((2, F)),
            _ => None,
        }
    }

    /// Invariant form with `(e|f) = 1`, `(h|h) = 2`.
    pub fn form(a: Gen, b: Gen) -> i64 {
        use Gen::*;
        match (a, b) {
            (E, F) | (F, E) => 1,
            (H, H) => 2,
            _ => 0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Gen::E => 'e',
            Gen::H => 'h',
            Gen::F => 'f',
        }
    }
}

#[inline]
pub fn creation(gen: Gen, mode: u32) -> u8 {
    debug_assert!(mode >= 1);
    (3 * (mode - 1) + gen as u32) as u8
}

#[inline]
pub fn split_creation(c: u8) -> (Gen, u32) {
    (Gen::from_index(c % 3), c as u32 / 3 + 1)
}

/// A canonical PBW monomial `x_1(-n_1) ... x_r(-n_r)|0>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMonomial {
    factors: Vec<u8>,
}

impl PbwMonomial {
    pub fn vacuum() -> Self {
        PbwMonomial { factors: Vec::new() }
    }

    /// Builds a monomial from `(generator, n)` pairs meaning `x(-n)`, in
    /// any order.
    pub fn from_factors(factors: &[(Gen, u32)]) -> Self {
        let mut f: Vec<u8> = factors.iter().map(|&(g, n)| creation(g, n)).collect();
        f.sort_unstable();
        PbwMonomial { factors: f }
    }

    pub fn raw(&self) -> &[u8] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|&c| split_creation(c).1 as usize).sum()
    }

    pub fn weight(&self) -> i64 {
        self.factors.iter().map(|&c| split_creation(c).0.weight()).sum()
    }

    /// Exponents keyed by `(generator, mode)` with mode `-n`.
    pub fn exponents(&self) -> BTreeMap<(Gen, i64), u32> {
        let mut m = BTreeMap::new();
        for &c in &self.factors {
            let (g, n) = split_creation(c);
            *m.entry((g, -(n as i64))).or_insert(0) += 1;
        }
        m
    }

    /// Exponents `(a, b, c)` of `e(-1), h(-1), f(-1)` when only `-1` modes
    /// occur.
    pub fn depth_one_exponents(&self) -> Option<[u32; 3]> {
        let mut e = [0u32; 3];
        for &c in &self.factors {
            let (g, n) = split_creation(c);
            if n != 1 {
                return None;
            }
            e[g as usize] += 1;
        }
        Some(e)
    }
}

impl fmt::Display for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("|0>");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.factors.len() {
            let c = self.factors[i];
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == c {
                j += 1;
            }
            let (g, n) = split_creation(c);
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}(-{})", g.symbol(), n)?;
            if j - i > 1 {
                write!(f, "^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Serialize for PbwMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All canonical monomials of one `(degree, weight)` slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedComponent {
    pub degree: usize,
    pub weight: i64,
    pub basis: Vec<PbwMonomial>,
}

/// Interned PBW basis up to a maximal degree. Ids are contiguous within
/// each `(degree, weight)` block.
#[derive(Debug)]
pub struct PbwBasis {
    max_degree: usize,
    monomials: Vec<PbwMonomial>,
    info: Vec<(usize, i64)>,
    index: HashMap<Vec<u8>, u32>,
    blocks: BTreeMap<(usize, i64), Range<u32>>,
}

fn monomials_of_degree(d: usize) -> Vec<Vec<u8>> {
    fn rec(rem: usize, min: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        let max_c = 3 * rem as u8 - 1;
        for c in min..=max_c {
            let n = split_creation(c).1 as usize;
            if n <= rem {
                cur.push(c);
                rec(rem - n, c, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(d, 0, &mut Vec::new(), &mut out);
    out
}

impl PbwBasis {
    pub fn new(max_degree: usize) -> Self {
        assert!(max_degree <= 80, "creation byte encoding supports degree <= 80");
        let mut monomials = Vec::new();
        let mut info = Vec::new();
        let mut index = HashMap::new();
        let mut blocks = BTreeMap::new();
        for d in 0..=max_degree {
            let mut by_weight: BTreeMap<i64, Vec<Vec<u8>>> = BTreeMap::new();
            for m in monomials_of_degree(d) {
                let w = PbwMonomial { factors: m.clone() }.weight();
                by_weight.entry(w).or_default().push(m);
            }
            for (w, mut ms) in by_weight {
                ms.sort();
                let start = monomials.len() as u32;
                for m in ms {
                    index.insert(m.clone(), monomials.len() as u32);
                    monomials.push(PbwMonomial { factors: m });
                    info.push((d, w));
                }
                blocks.insert((d, w), start..monomials.len() as u32);
            }
        }
        PbwBasis { max_degree, monomials, info, index, blocks }
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree {
            Err(Error::Truncation { requested: d, bound: self.max_degree })
        } else {
            Ok(())
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, id: u32) -> &PbwMonomial {
        &self.monomials[id as usize]
    }

    pub fn degree_weight(&self, id: u32) -> (usize, i64) {
        self.info[id as usize]
    }

    pub fn id(&self, factors: &[u8]) -> Option<u32> {
        self.index.get(factors).copied()
    }

    pub fn id_of(&self, m: &PbwMonomial) -> Option<u32> {
        self.id(&m.factors)
    }

    /// Id range of the `(d, w)` block (empty when the block is empty).
    pub fn block(&self, d: usize, w: i64) -> Range<u32> {
        self.blocks.get(&(d, w)).cloned().unwrap_or(0..0)
    }

    /// Weights occurring in degree `d`, ascending.
    pub fn weights(&self, d: usize) -> Vec<i64> {
        self.blocks.range((d, i64::MIN)..=(d, i64::MAX)).map(|(&(_, w), _)| w).collect()
    }

    pub fn component(&self, d: usize, w: i64) -> GradedComponent {
        let basis = self.block(d, w).map(|i| self.monomials[i as usize].clone()).collect();
        GradedComponent { degree: d, weight: w, basis }
    }
}

/// All canonical monomials of degree `d` and weight `w`, in basis order.
pub fn enumerate_basis(d: usize, w: i64) -> GradedComponent {
    let mut basis: Vec<PbwMonomial> = monomials_of_degree(d)
        .into_iter()
        .map(|f| PbwMonomial { factors: f })
        .filter(|m| m.weight() == w)
        .collect();
    basis.sort();
    GradedComponent { degree: d, weight: w, basis }
}

/// Coefficients of `prod_{n>=1} (1 - q^n)^{-3}` through `q^n_max`.
pub fn universal_dimensions(n_max: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::from(0); n_max + 1];
    c[0] = BigInt::from(1);
    for n in 1..=n_max {
        for _ in 0..3 {
            // multiply by 1/(1 - q^n)
            for i in n..=n_max {
                let add = c[i - n].clone();
                c[i] += add;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_components() {
        let c = enumerate_basis(0, 0);
        assert_eq!(c.basis, vec![PbwMonomial::vacuum()]);
        let c = enumerate_basis(1, 2);
        assert_eq!(c.basis, vec![PbwMonomial::from_factors(&[(Gen::E, 1)])]);
        let c = enumerate_basis(2, 0);
        let mut want = vec![
            PbwMonomial::from_factors(&[(Gen::H, 2)]),
            PbwMonomial::from_factors(&[(Gen::H, 1), (Gen::H, 1)]),
            PbwMonomial::from_factors(&[(Gen::E, 1), (Gen::F, 1)]),
        ];
        want.sort();
        assert_eq!(c.basis, want);
    }

    #[test]
    fn pbw_monomial_bookkeeping() {
        let m = PbwMonomial::from_factors(&[(Gen::F, 3), (Gen::E, 1), (Gen::E, 1)]);
        assert_eq!(m.degree(), 5);
        assert_eq!(m.weight(), 2);
        assert_eq!(m.to_string(), "e(-1)^2 f(-3)");
        assert_eq!(m.exponents().get(&(Gen::E, -1)), Some(&2));
        assert_eq!(m.depth_one_exponents(), None);
        assert_eq!(
            PbwMonomial::from_factors(&[(Gen::E, 1), (Gen::F, 1)]).depth_one_exponents(),
            Some([1, 0, 1])
        );
    }

    #[test]
    fn basis_blocks_match_generating_function() {
        let n = 10;
        let basis = PbwBasis::new(n);
        let dims = universal_dimensions(n);
        for d in 0..=n {
            let total: usize = basis.weights(d).iter().map(|&w| basis.block(d, w).len()).sum();
            assert_eq!(BigInt::from(total), dims[d]);
            for w in basis.weights(d) {
                assert_eq!(basis.component(d, w), enumerate_basis(d, w));
            }
        }
        assert!(basis.check_degree(n + 1).is_err());
    }
}
