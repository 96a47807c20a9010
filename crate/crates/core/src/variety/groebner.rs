//! Buchberger's algorithm over Q.

use std::collections::VecDeque;

use num_traits::One;

use super::poly::{Monomial, MonomialOrder, Poly};

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Full normal form of `f` modulo the (monic) polynomials `g`.
pub fn reduce(f: &Poly, g: &[Poly], order: MonomialOrder) -> Poly {
    let n = f.nvars();
    let leads: Vec<(Monomial, Poly)> = g
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let m = p.monic(order);
            (m.leading(order).unwrap().0.clone(), m)
        })
        .collect();
    let mut p = f.clone();
    let mut rem = Poly::zero(n);
    while let Some((lm, lc)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        match leads.iter().find(|(l, _)| divides(l, &lm)) {
            Some((l, gi)) => {
                p = p.sub(&gi.mul_term(&quotient(&lm, l), &lc));
            }
            None => {
                rem.add_term(lm.clone(), &lc);
                p = p.sub(&Poly::monomial(n, lm, lc));
            }
        }
    }
    rem
}

fn s_poly(a: &Poly, b: &Poly, order: MonomialOrder) -> Poly {
    let (la, ca) = a.leading(order).unwrap();
    let (lb, cb) = b.leading(order).unwrap();
    let l = lcm(la, lb);
    a.mul_term(&quotient(&l, la), &ca.recip()).sub(&b.mul_term(&quotient(&l, lb), &cb.recip()))
}

/// Reduced Groebner basis: monic, sorted by decreasing leading monomial.
/// The zero ideal gives the empty list, the unit ideal `[1]`.
pub fn groebner_basis(gens: &[Poly], order: MonomialOrder) -> Vec<Poly> {
    let mut basis: Vec<Poly> = Vec::new();
    for g in gens {
        let r = reduce(g, &basis, order);
        if !r.is_zero() {
            basis.push(r.monic(order));
        }
    }
    if basis.iter().any(|p| p.is_constant()) {
        return vec![Poly::one(gens[0].nvars())];
    }
    let mut pairs: VecDeque<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop_front() {
        let (li, lj) = (basis[i].leading(order).unwrap().0, basis[j].leading(order).unwrap().0);
        if coprime(li, lj) {
            continue;
        }
        let s = s_poly(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, order);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Poly::one(r.nvars())];
        }
        let k = basis.len();
        basis.push(r.monic(order));
        pairs.extend((0..k).map(|i| (i, k)));
    }
    interreduce(basis, order)
}

fn interreduce(mut basis: Vec<Poly>, order: MonomialOrder) -> Vec<Poly> {
    // drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Poly> = Vec::new();
    basis.sort_by(|a, b| order.cmp(a.leading(order).unwrap().0, b.leading(order).unwrap().0));
    for p in basis {
        let lp = p.leading(order).unwrap().0.clone();
        if !keep.iter().any(|q| divides(q.leading(order).unwrap().0, &lp)) {
            keep.push(p);
        }
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<Poly> = keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        out.push(reduce(&keep[i], &others, order).monic(order));
    }
    out.sort_by(|a, b| order.cmp(b.leading(order).unwrap().0, a.leading(order).unwrap().0));
    out
}

/// Whether a reduced basis describes the unit ideal.
pub fn is_unit(basis: &[Poly]) -> bool {
    basis.len() == 1 && basis[0].is_constant() && basis[0].terms().next().is_some_and(|(_, c)| c.is_one())
}
