//! Monic modular linear differential equations
//! `D^n f + sum_j g_j D^{n-j} f = 0`, with `g_j` of weight `2j`: fitting
//! to characters, indicial roots, and Frobenius solutions.

pub mod forms;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::exact::{solve, Solution};
use crate::qseries::QSeries;
use crate::rational::{fmt_q, lcm_of_denominators, q, qi, Q};
pub use forms::{basis_monomials, dim_modular_forms, eisenstein, iterated_serre, serre_derivative, ModularForm, PowerCache};

/// Extra equations demanded beyond the number of unknowns.
pub const DEFAULT_MARGIN: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mlde {
    pub order: usize,
    /// `g_1, ..., g_n`; `g_j` has weight `2j`.
    pub coeff_forms: Vec<ModularForm>,
}

impl Mlde {
    pub fn new(coeff_forms: Vec<ModularForm>) -> Self {
        for (j, g) in coeff_forms.iter().enumerate() {
            assert_eq!(g.weight as usize, 2 * (j + 1));
        }
        Mlde { order: coeff_forms.len(), coeff_forms }
    }

    /// `D^n f = 0`.
    pub fn trivial(order: usize) -> Self {
        Mlde::new((1..=order).map(|j| ModularForm::zero(2 * j as u32)).collect())
    }

    /// Number of unknown coordinates of an order-`n` operator.
    pub fn unknowns(order: usize) -> usize {
        (1..=order).map(|j| dim_modular_forms(2 * j as u32)).sum()
    }

    /// Applies the operator to a weight-zero series.
    pub fn apply(&self, f: &QSeries) -> QSeries {
        let n = self.order;
        let ds = iterated_serre(f, 0, n);
        let mut cache = PowerCache::new(f.truncation());
        let mut out = ds[n].clone();
        for (j, g) in self.coeff_forms.iter().enumerate() {
            let j = j + 1;
            for ((a, b), c) in basis_monomials(g.weight).into_iter().zip(&g.coords) {
                if !c.is_zero() {
                    let t = cache.monomial(a, b).mul(&ds[n - j]).scale(c);
                    out = out.add(&t).expect("same exponent");
                }
            }
        }
        out
    }

    /// Residual `L f`; zero through the truncation means `f` solves `L`.
    pub fn residual(&self, f: &QSeries) -> QSeries {
        self.apply(f)
    }

    /// Coefficients (low degree first) of the indicial polynomial
    /// `prod_{i<n} (x - i/6) + sum_j g_j(i inf) prod_{i<n-j} (x - i/6)`.
    pub fn indicial_polynomial(&self) -> Vec<Q> {
        let n = self.order;
        let falling = |m: usize| -> Vec<Q> {
            let mut p = vec![Q::one()];
            for i in 0..m {
                let r = q(i as i64, 6);
                let mut np = vec![Q::zero(); p.len() + 1];
                for (d, c) in p.iter().enumerate() {
                    np[d + 1] += c;
                    np[d] -= c * &r;
                }
                p = np;
            }
            p
        };
        let mut poly = falling(n);
        for (j, g) in self.coeff_forms.iter().enumerate() {
            let c = g.constant_term();
            if c.is_zero() {
                continue;
            }
            for (d, x) in falling(n - j - 1).iter().enumerate() {
                poly[d] += x * &c;
            }
        }
        poly
    }
}

impl Serialize for Mlde {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Coeff {
            weight: u32,
            monomials: BTreeMap<String, String>,
        }
        let coeffs: Vec<Coeff> =
            self.coeff_forms.iter().map(|g| Coeff { weight: g.weight, monomials: g.named_coords() }).collect();
        let mut st = s.serialize_struct("Mlde", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// Outcome of an exact fit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fit {
    /// `unique` is false when the system left free parameters (set to 0).
    Found { mlde: Mlde, unique: bool },
    NoSolution,
}

impl Fit {
    pub fn mlde(&self) -> Option<&Mlde> {
        match self {
            Fit::Found { mlde, .. } => Some(mlde),
            Fit::NoSolution => None,
        }
    }
}

/// Fits a monic order-`n` MLDE satisfied by every series in `chars`,
/// requiring every available coefficient to vanish.
pub fn fit_mlde(chars: &[QSeries], order: usize, margin: usize) -> Result<Fit> {
    let unknowns = Mlde::unknowns(order);
    let rows = chars.iter().map(|c| c.coeffs.len()).min().unwrap_or(0);
    if rows < unknowns + margin {
        return Err(Error::InsufficientTruncation { rows, needed: unknowns + margin });
    }
    let layout: Vec<(usize, u32, u32)> = (1..=order)
        .flat_map(|j| basis_monomials(2 * j as u32).into_iter().map(move |(a, b)| (j, a, b)))
        .collect();
    let mut a_rows: Vec<Vec<Q>> = Vec::new();
    let mut rhs: Vec<Q> = Vec::new();
    for chi in chars {
        let n = chi.truncation();
        let ds = iterated_serre(chi, 0, order);
        let mut cache = PowerCache::new(n);
        let cols: Vec<QSeries> = layout.iter().map(|&(j, a, b)| cache.monomial(a, b).mul(&ds[order - j])).collect();
        for m in 0..=n {
            a_rows.push(cols.iter().map(|c| c.coeffs[m].clone()).collect());
            rhs.push(-ds[order].coeffs[m].clone());
        }
    }
    let (x, unique) = if unknowns == 0 {
        if rhs.iter().all(|r| r.is_zero()) {
            (Vec::new(), true)
        } else {
            return Ok(Fit::NoSolution);
        }
    } else {
        match solve(&a_rows, &rhs, unknowns) {
            Solution::Found { x, unique } => (x, unique),
            Solution::Inconsistent => return Ok(Fit::NoSolution),
        }
    };
    let mut forms: Vec<ModularForm> = (1..=order).map(|j| ModularForm::zero(2 * j as u32)).collect();
    let mut pos = vec![0usize; order + 1];
    for (&(j, _, _), v) in layout.iter().zip(x) {
        forms[j - 1].coords[pos[j]] = v;
        pos[j] += 1;
    }
    Ok(Fit::Found { mlde: Mlde::new(forms), unique })
}

/// Smallest order `<= max_order` with a fit.
pub fn minimal_mlde(chars: &[QSeries], max_order: usize, margin: usize) -> Result<Option<(usize, Mlde)>> {
    for n in 1..=max_order {
        if let Fit::Found { mlde, .. } = fit_mlde(chars, n, margin)? {
            return Ok(Some((n, mlde)));
        }
    }
    Ok(None)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // trial division; cofactors above the bound are treated as prime
    let mut n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2);
    let bound = BigInt::from(1_000_000u32);
    while &d * &d <= n && d <= bound {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if n > BigInt::one() {
        primes.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for x in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(x * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

fn eval(poly: &[Q], x: &Q) -> Q {
    poly.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn deflate(poly: &[Q], r: &Q) -> Vec<Q> {
    // synthetic division by (x - r)
    let n = poly.len() - 1;
    let mut out = vec![Q::zero(); n];
    let mut carry = Q::zero();
    for i in (0..n).rev() {
        carry = &poly[i + 1] + &carry * r;
        out[i] = carry.clone();
    }
    out
}

/// Exact roots of the indicial polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndicialRoots {
    /// Polynomial coefficients, low degree first, as "num/den".
    pub polynomial: Vec<String>,
    /// Rational roots with multiplicity, ascending.
    #[serde(serialize_with = "ser_qs")]
    pub roots: Vec<Q>,
    /// Factor without rational roots, when nontrivial.
    pub irrational_factor: Option<Vec<String>>,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(fmt_q).collect::<Vec<_>>().serialize(s)
}

impl IndicialRoots {
    pub fn sum(&self) -> Q {
        self.roots.iter().sum()
    }
}

pub fn rational_roots(poly: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut p: Vec<Q> = poly.to_vec();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0].is_zero() {
        roots.push(Q::zero());
        p.remove(0);
    }
    loop {
        if p.len() <= 1 {
            break;
        }
        let l = lcm_of_denominators(p.iter());
        let ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
        let num = divisors(&ints[0]);
        let den = divisors(ints.last().unwrap());
        let mut found = None;
        'search: for a in &num {
            for b in &den {
                for sgn in [1, -1] {
                    let r = Q::new(a * sgn, b.clone());
                    if eval(&p, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = deflate(&p, &r);
                roots.push(r);
            }
            None => break,
        }
    }
    roots.sort();
    (roots, p)
}

pub fn indicial_roots(m: &Mlde) -> IndicialRoots {
    let poly = m.indicial_polynomial();
    let (roots, rest) = rational_roots(&poly);
    IndicialRoots {
        polynomial: poly.iter().map(fmt_q).collect(),
        roots,
        irrational_factor: if rest.len() > 1 { Some(rest.iter().map(fmt_q).collect()) } else { None },
    }
}

/// Normalized series solution `q^root (1 + a_1 q + ...)` through `q^n`.
pub fn frobenius_solve(m: &Mlde, root: &Q, n: usize) -> Result<QSeries> {
    let poly = m.indicial_polynomial();
    if !eval(&poly, root).is_zero() {
        return Err(Error::NotIndicialRoot(fmt_q(root)));
    }
    let ir = indicial_roots(m);
    if ir.roots.iter().filter(|r| *r == root).count() > 1 {
        return Err(Error::LogarithmicCase(fmt_q(root)));
    }
    for r in &ir.roots {
        let d = r - root;
        if d.is_integer() && d.is_positive() {
            return Err(Error::ResonantRoot { root: fmt_q(root), shift: d.to_integer().to_usize().unwrap_or(usize::MAX) });
        }
    }
    // Column j: L applied to q^(root + j), coefficients of q^(root + j + l).
    let cols: Vec<QSeries> = (0..=n)
        .map(|j| {
            let mut c = vec![Q::zero(); n - j + 1];
            c[0] = Q::one();
            m.apply(&QSeries::new(root + qi(j as i64), c))
        })
        .collect();
    let mut a = vec![Q::one()];
    for k in 1..=n {
        let mut s = Q::zero();
        for (j, aj) in a.iter().enumerate() {
            if !aj.is_zero() {
                s += aj * &cols[j].coeffs[k - j];
            }
        }
        let p = &cols[k].coeffs[0];
        a.push(-s / p);
    }
    Ok(QSeries::new(root.clone(), a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vacuum::integrable_character_theta;

    #[test]
    fn constant_satisfies_first_order() {
        let one = QSeries::one(20);
        let fit = fit_mlde(std::slice::from_ref(&one), 1, DEFAULT_MARGIN).unwrap();
        assert_eq!(fit, Fit::Found { mlde: Mlde::trivial(1), unique: true });
        let r = indicial_roots(&Mlde::trivial(1));
        assert_eq!(r.roots, vec![qi(0)]);
        assert_eq!(frobenius_solve(&Mlde::trivial(1), &qi(0), 10).unwrap(), QSeries::one(10));
        assert_eq!(minimal_mlde(&[one], 4, DEFAULT_MARGIN).unwrap().unwrap().0, 1);
    }

    #[test]
    fn level_one_character() {
        let chi = integrable_character_theta(1, 40);
        assert_eq!(fit_mlde(std::slice::from_ref(&chi), 1, DEFAULT_MARGIN).unwrap(), Fit::NoSolution);
        let m = fit_mlde(std::slice::from_ref(&chi), 2, DEFAULT_MARGIN).unwrap().mlde().unwrap().clone();
        assert_eq!(m.coeff_forms[1].coords, vec![q(-5, 576)]);
        let r = indicial_roots(&m);
        assert_eq!(r.roots, vec![q(-1, 24), q(5, 24)]);
        assert_eq!(r.sum(), q(1, 6));
        let other = frobenius_solve(&m, &q(5, 24), 10).unwrap();
        assert!(other.coeffs.iter().all(|c| c.is_integer() && !c.is_negative()));
        assert_eq!(frobenius_solve(&m, &chi.alpha, 40).unwrap(), chi);
    }

    #[test]
    fn errors() {
        assert!(matches!(fit_mlde(&[QSeries::one(5)], 1, DEFAULT_MARGIN), Err(Error::InsufficientTruncation { .. })));
        let m = Mlde::trivial(2); // roots 0, 1/6
        assert!(matches!(frobenius_solve(&m, &q(1, 2), 5), Err(Error::NotIndicialRoot(_))));
        // g_2 = E4/36 gives x^2 - x/6 + 1/36... roots 1/12 twice
        let m = Mlde::new(vec![ModularForm::zero(2), ModularForm::new(4, vec![q(1, 144)])]);
        assert!(matches!(frobenius_solve(&m, &q(1, 12), 5), Err(Error::LogarithmicCase(_))));
    }

    #[test]
    fn resonance() {
        // roots r and r + 1 with r + (r + 1) = 1/6: r = -5/12, product -7/144 * ... = c
        let r = q(-5, 12);
        let c = &r * (&r + qi(1));
        let m = Mlde::new(vec![ModularForm::zero(2), ModularForm::new(4, vec![c])]);
        assert_eq!(indicial_roots(&m).roots, vec![r.clone(), &r + qi(1)]);
        assert!(matches!(frobenius_solve(&m, &r, 5), Err(Error::ResonantRoot { shift: 1, .. })));
        assert!(frobenius_solve(&m, &(&r + qi(1)), 5).is_ok());
    }
}
