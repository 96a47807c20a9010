//! Eisenstein series, level one modular forms in the `E4^a E6^b` basis,
//! and the Serre derivative.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rational::{fmt_q, q, Q};

fn sigma(k: u32, n: u64) -> BigInt {
    let mut s = BigInt::zero();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            s += BigInt::from(d).pow(k);
            let e = n / d;
            if e != d {
                s += BigInt::from(e).pow(k);
            }
        }
        d += 1;
    }
    s
}

/// `E2, E4, E6` through `q^n`, normalized to constant term 1.
pub fn eisenstein(weight: u32, n: usize) -> Result<QSeries> {
    let (k, c) = match weight {
        2 => (1, -24),
        4 => (3, 240),
        6 => (5, -504),
        w => return Err(Error::Parse(format!("no Eisenstein series of weight {w} here (use 2, 4 or 6)"))),
    };
    let mut coeffs = vec![Q::one()];
    for m in 1..=n as u64 {
        coeffs.push(Q::from_integer(sigma(k, m) * BigInt::from(c)));
    }
    Ok(QSeries::new(Q::zero(), coeffs))
}

/// Exponent pairs `(a, b)` with `4a + 6b = weight`, by increasing `a`.
pub fn basis_monomials(weight: u32) -> Vec<(u32, u32)> {
    (0..=weight / 4).filter(|a| (weight - 4 * a).is_multiple_of(6)).map(|a| (a, (weight - 4 * a) / 6)).collect()
}

pub fn dim_modular_forms(weight: u32) -> usize {
    if weight % 2 == 1 {
        0
    } else {
        basis_monomials(weight).len()
    }
}

pub fn monomial_name(a: u32, b: u32) -> String {
    format!("E4^{a}*E6^{b}")
}

/// Modular form of level one as coordinates on `E4^a E6^b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularForm {
    pub weight: u32,
    pub coords: Vec<Q>,
}

impl ModularForm {
    pub fn zero(weight: u32) -> Self {
        ModularForm { weight, coords: vec![Q::zero(); dim_modular_forms(weight)] }
    }

    pub fn new(weight: u32, coords: Vec<Q>) -> Self {
        assert_eq!(coords.len(), dim_modular_forms(weight), "coordinate count for weight {weight}");
        ModularForm { weight, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Value at the cusp.
    pub fn constant_term(&self) -> Q {
        self.coords.iter().sum()
    }

    pub fn mul(&self, other: &ModularForm) -> ModularForm {
        let w = self.weight + other.weight;
        let basis = basis_monomials(w);
        let mut coords = vec![Q::zero(); basis.len()];
        for ((a1, b1), c1) in basis_monomials(self.weight).into_iter().zip(&self.coords) {
            for ((a2, b2), c2) in basis_monomials(other.weight).into_iter().zip(&other.coords) {
                let i = basis.iter().position(|&m| m == (a1 + a2, b1 + b2)).expect("product monomial has the sum weight");
                coords[i] += c1 * c2;
            }
        }
        ModularForm { weight: w, coords }
    }

    pub fn expand(&self, n: usize) -> QSeries {
        let mut cache = PowerCache::new(n);
        let mut s = QSeries::zero(Q::zero(), n);
        for ((a, b), c) in basis_monomials(self.weight).into_iter().zip(&self.coords) {
            if !c.is_zero() {
                s = s.add(&cache.monomial(a, b).scale(c)).expect("weight zero exponents align");
            }
        }
        s
    }

    /// Monomial name to rational string, keys sorted.
    pub fn named_coords(&self) -> std::collections::BTreeMap<String, String> {
        basis_monomials(self.weight).into_iter().zip(&self.coords).map(|((a, b), c)| (monomial_name(a, b), fmt_q(c))).collect()
    }
}

/// Memoized expansions of `E4^a E6^b`.
pub struct PowerCache {
    n: usize,
    e4: QSeries,
    e6: QSeries,
    memo: HashMap<(u32, u32), QSeries>,
}

impl PowerCache {
    pub fn new(n: usize) -> Self {
        PowerCache {
            n,
            e4: eisenstein(4, n).unwrap(),
            e6: eisenstein(6, n).unwrap(),
            memo: HashMap::new(),
        }
    }

    pub fn monomial(&mut self, a: u32, b: u32) -> QSeries {
        if let Some(s) = self.memo.get(&(a, b)) {
            return s.clone();
        }
        let s = if a > 0 {
            self.monomial(a - 1, b).mul(&self.e4)
        } else if b > 0 {
            self.monomial(0, b - 1).mul(&self.e6)
        } else {
            QSeries::one(self.n)
        };
        self.memo.insert((a, b), s.clone());
        s
    }
}

/// `D_w f = q df/dq - (w/12) E2 f`, same truncation as `f`.
pub fn serre_derivative(f: &QSeries, weight: i64) -> QSeries {
    let e2 = eisenstein(2, f.truncation()).unwrap();
    let lhs = f.q_derivative();
    if weight == 0 {
        return lhs;
    }
    let rhs = e2.mul(f).scale(&q(weight, 12));
    lhs.sub(&rhs).expect("same exponent")
}

/// `D^n f` with weights `w, w+2, ..., w+2(n-1)` threaded through.
pub fn iterated_serre(f: &QSeries, weight: i64, n: usize) -> Vec<QSeries> {
    let mut out = vec![f.clone()];
    for i in 0..n {
        let next = serre_derivative(&out[i], weight + 2 * i as i64);
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn ints(s: &QSeries, n: usize) -> Vec<Q> {
        s.coeffs[..n].to_vec()
    }

    #[test]
    fn eisenstein_examples() {
        assert_eq!(ints(&eisenstein(4, 5).unwrap(), 3), vec![qi(1), qi(240), qi(2160)]);
        assert_eq!(ints(&eisenstein(2, 5).unwrap(), 3), vec![qi(1), qi(-24), qi(-72)]);
        assert_eq!(ints(&eisenstein(6, 5).unwrap(), 3), vec![qi(1), qi(-504), qi(-16632)]);
        assert!(eisenstein(8, 5).is_err());
    }

    #[test]
    fn dimensions() {
        let d: Vec<usize> = (0..=24).step_by(2).map(dim_modular_forms).collect();
        assert_eq!(d, vec![1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3]);
    }

    #[test]
    fn serre_examples() {
        let n = 20;
        assert!(serre_derivative(&QSeries::one(n), 0).is_zero());
        let e4 = eisenstein(4, n).unwrap();
        let e6 = eisenstein(6, n).unwrap();
        assert_eq!(serre_derivative(&e4, 4), e6.scale(&q(-1, 3)));
        let single = QSeries::new(q(2, 7), vec![qi(1)]);
        assert_eq!(serre_derivative(&single, 0).coeffs[0], q(2, 7));
    }

    #[test]
    fn product_expansion_is_multiplicative() {
        let f = ModularForm::new(8, vec![qi(3)]);
        let g = ModularForm::new(12, vec![qi(1), qi(-2)]);
        let n = 15;
        assert_eq!(f.mul(&g).expand(n), f.expand(n).mul(&g.expand(n)));
    }
}
