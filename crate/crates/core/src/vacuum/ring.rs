//! Coefficient rings for the normal-ordering engine. The engine only needs
//! ring operations and the value of the level, so the same code computes
//! over Q, over Z/pZ and over Z[k].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::linalg::Zp;
use crate::rational::{qi, Q};

pub trait CoeffRing: Clone {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// The level `k` as a ring element.
    fn level(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn one(&self) -> Self::Elem {
        self.from_i64(1)
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }
}

/// Q with a fixed rational level.
#[derive(Debug, Clone)]
pub struct Rationals {
    pub k: Q,
}

impl CoeffRing for Rationals {
    type Elem = Q;
    fn zero(&self) -> Q {
        Q::zero()
    }
    fn from_i64(&self, n: i64) -> Q {
        qi(n)
    }
    fn level(&self) -> Q {
        self.k.clone()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add_assign(&self, a: &mut Q, b: &Q) {
        *a += b;
    }
}

/// Z/pZ with the level reduced mod p.
#[derive(Debug, Clone, Copy)]
pub struct ModP {
    pub field: Zp,
    pub k: u64,
}

impl ModP {
    /// `None` when p divides the denominator of `k`.
    pub fn new(field: Zp, k: &Q) -> Option<Self> {
        field.from_rational(k).map(|k| ModP { field, k })
    }
}

impl CoeffRing for ModP {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.field.from_i64(n)
    }
    fn level(&self) -> u64 {
        self.k
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.field.add(*a, *b)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.field.mul(*a, *b)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
}

/// Z[k]: integer polynomials in the level, coefficients low degree first.
#[derive(Debug, Clone, Copy, Default)]
pub struct LevelPolynomials;

pub type PolyK = Vec<BigInt>;

fn trim(mut v: PolyK) -> PolyK {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

impl CoeffRing for LevelPolynomials {
    type Elem = PolyK;
    fn zero(&self) -> PolyK {
        Vec::new()
    }
    fn from_i64(&self, n: i64) -> PolyK {
        trim(vec![BigInt::from(n)])
    }
    fn level(&self) -> PolyK {
        vec![BigInt::zero(), BigInt::one()]
    }
    fn add(&self, a: &PolyK, b: &PolyK) -> PolyK {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                let y = b.get(i).cloned().unwrap_or_default();
                x + y
            })
            .collect();
        trim(v)
    }
    fn mul(&self, a: &PolyK, b: &PolyK) -> PolyK {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        trim(v)
    }
    fn is_zero(&self, a: &PolyK) -> bool {
        a.is_empty()
    }
}

/// Evaluates a level polynomial at a rational point.
pub fn eval_poly(p: &PolyK, k: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * k + Q::from_integer(c.clone()))
}

/// Evaluates a level polynomial mod p.
pub fn eval_poly_mod(p: &PolyK, k: u64, f: Zp) -> u64 {
    p.iter().rev().fold(0, |acc, c| f.add(f.mul(acc, k), f.from_bigint(c)))
}
