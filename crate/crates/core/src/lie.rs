//! Root-system data for the simple Lie algebras of types A–G.
//!
//! Positive roots are generated from the Cartan matrix by root-string
//! closure, and the marks/comarks are read off the highest root, so every
//! number reported here is derived from the Cartan matrix alone.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{q, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.letter().to_string())
    }
}

/// Constants of one simple Lie algebra, in the normalization where long
/// roots have squared length 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimpleLieAlgebraData {
    pub series: Series,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_i^vee, alpha_j>`.
    #[serde(skip)]
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in the simple-root basis, sorted by height then
    /// lexicographically.
    #[serde(skip)]
    pub positive_roots: Vec<Vec<i64>>,
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
    /// Half squared lengths `(alpha_i, alpha_i)/2` of the simple roots.
    #[serde(skip)]
    pub half_lengths: Vec<Q>,
}

impl fmt::Display for SimpleLieAlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for SimpleLieAlgebraData {
    type Err = Error;

    /// Parses names such as `A1`, `e8`, `G2`.
    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidType(s.to_string());
        let mut chars = s.trim().chars();
        let series = chars.next().and_then(Series::from_letter).ok_or_else(invalid)?;
        let rank: usize = chars.as_str().parse().map_err(|_| invalid())?;
        build(series, rank)
    }
}

fn cartan_matrix(series: Series, n: usize) -> Result<Vec<Vec<i64>>> {
    let valid = match series {
        Series::A => n >= 1,
        Series::B | Series::C => n >= 2,
        Series::D => n >= 4,
        Series::E => (6..=8).contains(&n),
        Series::F => n == 4,
        Series::G => n == 2,
    };
    if !valid {
        return Err(Error::InvalidType(format!("{}{}", series.letter(), n)));
    }
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    // Bourbaki numbering, 0-based.
    match series {
        Series::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
        Series::B => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -1, -2);
        }
        Series::C => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 2, n - 1, -2, -1);
        }
        Series::D => {
            (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
            link(n - 3, n - 1, -1, -1);
        }
        Series::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Series::G => link(0, 1, -3, -1),
    }
    Ok(a)
}

/// Solves `d_i a_ij = d_j a_ji` along the Dynkin diagram and scales so the
/// longest simple root has `d = 1`.
fn symmetrizer(a: &[Vec<i64>]) -> Vec<Q> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::one());
    let mut stack = vec![0usize];
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if i != j && a[i][j] != 0 && d[j].is_none() {
                let dj = d[i].clone().unwrap() * q(a[i][j], a[j][i]);
                d[j] = Some(dj);
                stack.push(j);
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
    let max = d.iter().max().cloned().unwrap();
    d.into_iter().map(|x| x / &max).collect()
}

fn pairing_with_coroot(a: &[Vec<i64>], beta: &[i64], i: usize) -> i64 {
    beta.iter().enumerate().map(|(j, b)| a[i][j] * b).sum()
}

fn root_closure(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let simple: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut all: HashSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut roots = simple.clone();
    let mut layer = simple;
    while !layer.is_empty() {
        let mut next: Vec<Vec<i64>> = Vec::new();
        for beta in &layer {
            for i in 0..n {
                // p = length of the alpha_i-string below beta.
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if all.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let up = p - pairing_with_coroot(a, beta, i);
                if up > 0 {
                    let mut gamma = beta.clone();
                    gamma[i] += 1;
                    if all.insert(gamma.clone()) {
                        next.push(gamma);
                    }
                }
            }
        }
        next.sort();
        roots.extend(next.iter().cloned());
        layer = next;
    }
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| x.cmp(y))
    });
    roots
}

/// Builds the root-system record for `(series, rank)`.
pub fn build(series: Series, rank: usize) -> Result<SimpleLieAlgebraData> {
    let cartan = cartan_matrix(series, rank)?;
    let half_lengths = symmetrizer(&cartan);
    let positive_roots = root_closure(&cartan);
    let theta = positive_roots.last().unwrap().clone();
    let comarks = theta
        .iter()
        .zip(&half_lengths)
        .map(|(m, d)| {
            let c = qi(*m) * d;
            assert!(c.is_integer());
            c.to_integer().try_into().unwrap()
        })
        .collect();
    Ok(SimpleLieAlgebraData {
        series,
        rank,
        cartan,
        positive_roots,
        marks: theta,
        comarks,
        half_lengths,
    })
}

impl SimpleLieAlgebraData {
    pub fn dim(&self) -> usize {
        self.rank + 2 * self.positive_roots.len()
    }

    /// h = 1 + sum of marks.
    pub fn coxeter_number(&self) -> i64 {
        1 + self.marks.iter().sum::<i64>()
    }

    /// h∨ = 1 + sum of comarks.
    pub fn dual_coxeter_number(&self) -> i64 {
        1 + self.comarks.iter().sum::<i64>()
    }

    /// Ratio of long to short squared root lengths.
    pub fn lacing_number(&self) -> i64 {
        let min = self.half_lengths.iter().min().unwrap();
        let r = Q::one() / min;
        r.to_integer().try_into().unwrap()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.lacing_number() == 1
    }

    /// Squared length `(beta, beta)` of a root given in the simple basis.
    pub fn squared_length(&self, beta: &[i64]) -> Q {
        let n = self.rank;
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                // (alpha_i, alpha_j) = d_i a_ij
                s += qi(beta[i] * beta[j] * self.cartan[i][j]) * &self.half_lengths[i];
            }
        }
        s
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

/// All nine families at a few ranks, plus the exceptional types.
pub fn sample_types() -> Vec<(Series, usize)> {
    let mut v = Vec::new();
    for n in 1..=8 {
        v.push((Series::A, n));
    }
    for n in 2..=7 {
        v.push((Series::B, n));
        v.push((Series::C, n));
    }
    for n in 4..=8 {
        v.push((Series::D, n));
    }
    v.extend([
        (Series::E, 6),
        (Series::E, 7),
        (Series::E, 8),
        (Series::F, 4),
        (Series::G, 2),
    ]);
    v
}
