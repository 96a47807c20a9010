//! Normal ordering in the vacuum module of affine sl2.
//!
//! Vectors are sparse lists of `(basis id, coefficient)` sorted by id.
//! Creation operators are pushed into canonical position with
//! `[x(-a), y(-b)] = [x,y](-a-b)`, and modes `n >= 0` are commuted to the
//! right with `[x(m), y(n)] = [x,y](m+n) + m δ_{m+n,0} (x|y) k` until they
//! hit the vacuum. Both reductions are memoized per basis monomial.

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use super::basis::{creation, split_creation, Gen, PbwBasis};
use super::ring::CoeffRing;
use crate::error::Result;

pub type SVec<E> = Vec<(u32, E)>;

/// Sparse accumulator.
pub struct Acc<'a, R: CoeffRing> {
    ring: &'a R,
    terms: HashMap<u32, R::Elem>,
}

impl<'a, R: CoeffRing> Acc<'a, R> {
    pub fn new(ring: &'a R) -> Self {
        Acc { ring, terms: HashMap::new() }
    }

    pub fn add(&mut self, id: u32, c: &R::Elem) {
        match self.terms.get_mut(&id) {
            Some(x) => self.ring.add_assign(x, c),
            None => {
                self.terms.insert(id, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, v: &SVec<R::Elem>, s: &R::Elem) {
        for (id, c) in v {
            let t = self.ring.mul(c, s);
            self.add(*id, &t);
        }
    }

    pub fn finish(self) -> SVec<R::Elem> {
        let ring = self.ring;
        let mut v: SVec<R::Elem> = self.terms.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        v.sort_unstable_by_key(|(id, _)| *id);
        v
    }
}

pub struct Engine<R: CoeffRing> {
    basis: Arc<PbwBasis>,
    ring: R,
    create_memo: HashMap<(u8, u32), Rc<SVec<R::Elem>>>,
    annihilate_memo: HashMap<(u8, u32, u32), Rc<SVec<R::Elem>>>,
}

impl<R: CoeffRing> Engine<R> {
    pub fn new(basis: Arc<PbwBasis>, ring: R) -> Self {
        Engine { basis, ring, create_memo: HashMap::new(), annihilate_memo: HashMap::new() }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn basis(&self) -> &Arc<PbwBasis> {
        &self.basis
    }

    fn prepend(&self, c: u8, id: u32) -> u32 {
        let m = self.basis.monomial(id).raw();
        debug_assert!(m.first().is_none_or(|&f| c <= f));
        let mut f = Vec::with_capacity(m.len() + 1);
        f.push(c);
        f.extend_from_slice(m);
        self.basis.id(&f).expect("prepended monomial within degree bound")
    }

    /// `x(-n) · m` for the creation byte `c`, in canonical form.
    pub fn create(&mut self, c: u8, id: u32) -> Result<Rc<SVec<R::Elem>>> {
        if let Some(v) = self.create_memo.get(&(c, id)) {
            return Ok(v.clone());
        }
        let basis = self.basis.clone();
        let (d, _) = basis.degree_weight(id);
        let (g, n) = split_creation(c);
        basis.check_degree(d + n as usize)?;
        let m = basis.monomial(id).raw();
        let result = if m.first().is_none_or(|&f| c <= f) {
            vec![(self.prepend(c, id), self.ring.one())]
        } else {
            let c1 = m[0];
            let rest = basis.id(&m[1..]).unwrap();
            let inner = self.create(c, rest)?;
            let (g1, n1) = split_creation(c1);
            let bracket = match Gen::bracket(g, g1) {
                Some((s, z)) => Some((self.ring.from_i64(s), self.create(creation(z, n + n1), rest)?)),
                None => None,
            };
            let ring = self.ring.clone();
            let mut acc = Acc::new(&ring);
            for (mid, coef) in inner.iter() {
                // Every factor of `inner` is at least c1, so prepending
                // keeps the monomial canonical.
                acc.add(self.prepend(c1, *mid), coef);
            }
            if let Some((s, t)) = bracket {
                acc.add_scaled(&t, &s);
            }
            acc.finish()
        };
        let rc = Rc::new(result);
        self.create_memo.insert((c, id), rc.clone());
        Ok(rc)
    }

    /// `x(n) · m` for `n >= 0`.
    pub fn annihilate(&mut self, x: Gen, n: u32, id: u32) -> Result<Rc<SVec<R::Elem>>> {
        let key = (x as u8, n, id);
        if let Some(v) = self.annihilate_memo.get(&key) {
            return Ok(v.clone());
        }
        let basis = self.basis.clone();
        let m = basis.monomial(id).raw();
        let ring = self.ring.clone();
        let result = if m.is_empty() {
            Vec::new()
        } else {
            let c1 = m[0];
            let rest = basis.id(&m[1..]).unwrap();
            let (g1, b) = split_creation(c1);
            let mut acc = Acc::new(&ring);
            let inner = self.annihilate(x, n, rest)?;
            for (mid, coef) in inner.iter() {
                let v = self.create(c1, *mid)?;
                acc.add_scaled(&v, coef);
            }
            if let Some((s, z)) = Gen::bracket(x, g1) {
                let v = if n < b {
                    self.create(creation(z, b - n), rest)?
                } else {
                    self.annihilate(z, n - b, rest)?
                };
                acc.add_scaled(&v, &ring.from_i64(s));
            }
            let form = Gen::form(x, g1);
            if n == b && form != 0 {
                let c = ring.mul(&ring.from_i64(n as i64 * form), &ring.level());
                acc.add(rest, &c);
            }
            acc.finish()
        };
        let rc = Rc::new(result);
        self.annihilate_memo.insert(key, rc.clone());
        Ok(rc)
    }

    /// Applies `x(mode)` for any integer mode to a vector.
    pub fn apply(&mut self, x: Gen, mode: i64, v: &SVec<R::Elem>) -> Result<SVec<R::Elem>> {
        let ring = self.ring.clone();
        let mut acc = Acc::new(&ring);
        for (id, c) in v {
            let img = if mode < 0 {
                self.create(creation(x, (-mode) as u32), *id)?
            } else {
                self.annihilate(x, mode as u32, *id)?
            };
            acc.add_scaled(&img, c);
        }
        Ok(acc.finish())
    }

    /// Drops memoized reductions (memory relief between large jobs).
    pub fn clear_memo(&mut self) {
        self.create_memo.clear();
        self.annihilate_memo.clear();
    }
}

/// Dense Gram blocks keyed by `(degree, weight)`.
pub struct GramStore<E> {
    blocks: HashMap<(usize, i64), Rc<Vec<Vec<E>>>>,
}

impl<E> Default for GramStore<E> {
    fn default() -> Self {
        GramStore { blocks: HashMap::new() }
    }
}

impl<E> GramStore<E> {
    pub fn get(&self, d: usize, w: i64) -> Option<Rc<Vec<Vec<E>>>> {
        self.blocks.get(&(d, w)).cloned()
    }

    /// Forgets every block of degree `< d`.
    pub fn drop_below(&mut self, d: usize) {
        self.blocks.retain(|&(dd, _), _| dd >= d);
    }
}

impl<R: CoeffRing> Engine<R> {
    /// Gram matrix of the contravariant form on the `(d, w)` block, fixed
    /// by `<0|0> = 1` and the anti-involution `e(n) <-> f(-n)`,
    /// `h(n) <-> h(-n)`. Lower blocks are computed on demand and cached.
    pub fn gram(&mut self, store: &mut GramStore<R::Elem>, d: usize, w: i64) -> Result<Rc<Vec<Vec<R::Elem>>>> {
        if let Some(g) = store.get(d, w) {
            return Ok(g);
        }
        self.basis.check_degree(d)?;
        let basis = self.basis.clone();
        let range = basis.block(d, w);
        let size = range.len();
        let ring = self.ring.clone();
        let mut g = vec![vec![ring.zero(); size]; size];
        if d == 0 {
            if size == 1 {
                g[0][0] = ring.one();
            }
        } else {
            let mut by_first: Vec<(u8, Vec<(usize, u32)>)> = Vec::new();
            for (i, id) in range.clone().enumerate() {
                let m = basis.monomial(id).raw();
                let rest = basis.id(&m[1..]).unwrap();
                match by_first.iter_mut().find(|(c, _)| *c == m[0]) {
                    Some((_, rows)) => rows.push((i, rest)),
                    None => by_first.push((m[0], vec![(i, rest)])),
                }
            }
            for (c1, rows) in by_first {
                let (x, n) = split_creation(c1);
                let (ld, lw) = (d - n as usize, w - x.weight());
                let lower = self.gram(store, ld, lw)?;
                let lstart = basis.block(ld, lw).start;
                let mut cols = Vec::with_capacity(size);
                for id in range.clone() {
                    cols.push(self.annihilate(x.bar(), n, id)?);
                }
                for (i, rest) in rows {
                    let lrow = &lower[(rest - lstart) as usize];
                    for (j, col) in cols.iter().enumerate() {
                        let mut s = ring.zero();
                        for (cid, a) in col.iter() {
                            let t = ring.mul(a, &lrow[(cid - lstart) as usize]);
                            ring.add_assign(&mut s, &t);
                        }
                        g[i][j] = s;
                    }
                }
            }
        }
        let rc = Rc::new(g);
        store.blocks.insert((d, w), rc.clone());
        Ok(rc)
    }
}
