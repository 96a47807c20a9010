//! Associated varieties of truncations of `L_k(sl2)`.
//!
//! Singular vectors are sent to Zhu's C2-algebra of the universal affine
//! vertex algebra, identified with `Q[x_e, x_h, x_f]`: a PBW monomial
//! survives only if all its modes are `-1`. The images are closed under
//! the Kirillov-Kostant brackets and analysed by Groebner bases. Since
//! only singular vectors up to the truncation degree are used, the
//! computed variety contains the true one.

pub mod groebner;
pub mod poly;

use std::sync::OnceLock;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::level::{Level, LevelSpec, PredictedVariety};
use crate::rational::{qi, Q};
use crate::vacuum::{analyze, SimpleQuotient, SingularVector};
pub use groebner::{groebner_basis, is_unit, reduce};
pub use poly::{casimir, MonomialOrder, Poly};

/// Index of `x_e, x_h, x_f` among the variables.
pub const XE: usize = 0;
pub const XH: usize = 1;
pub const XF: usize = 2;

/// A finitely generated ideal of `Q[x_1..x_n]` with a cached degrevlex
/// Groebner basis.
#[derive(Debug, Clone)]
pub struct PolyIdeal {
    nvars: usize,
    generators: Vec<Poly>,
    groebner: OnceLock<Vec<Poly>>,
}

impl PartialEq for PolyIdeal {
    /// Equality of ideals, not of generating sets.
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.groebner() == other.groebner()
    }
}

impl PolyIdeal {
    pub fn new(nvars: usize, generators: Vec<Poly>) -> Self {
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        PolyIdeal { nvars, generators, groebner: OnceLock::new() }
    }

    pub fn zero(nvars: usize) -> Self {
        PolyIdeal::new(nvars, Vec::new())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn groebner(&self) -> &[Poly] {
        self.groebner.get_or_init(|| groebner_basis(&self.generators, MonomialOrder::DegRevLex))
    }

    pub fn groebner_in(&self, order: MonomialOrder) -> Vec<Poly> {
        match order {
            MonomialOrder::DegRevLex => self.groebner().to_vec(),
            _ => groebner_basis(&self.generators, order),
        }
    }

    pub fn is_unit(&self) -> bool {
        is_unit(self.groebner())
    }

    pub fn contains(&self, f: &Poly) -> bool {
        reduce(f, self.groebner(), MonomialOrder::DegRevLex).is_zero()
    }

    pub fn contains_ideal(&self, other: &PolyIdeal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }
}

impl Serialize for PolyIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators.serialize(s)
    }
}

/// Image of a vector of the vacuum module in `R_V = Q[x_e, x_h, x_f]`.
pub fn symbol_in_rv(v: &SingularVector) -> Poly {
    let mut p = Poly::zero(3);
    for (m, c) in v.terms() {
        if let Some([a, b, f]) = m.depth_one_exponents() {
            p.add_term(vec![a, b, f], c);
        }
    }
    p
}

/// `{x_i, p}` for the Kirillov-Kostant bracket with
/// `{x_h, x_e} = 2 x_e`, `{x_h, x_f} = -2 x_f`, `{x_e, x_f} = x_h`.
pub fn kk_bracket(i: usize, p: &Poly) -> Poly {
    let n = p.nvars();
    let x = |j| Poly::var(n, j);
    // {x_i, x_j} for j = e, h, f
    let row: [Poly; 3] = match i {
        XE => [Poly::zero(n), x(XE).scale(&qi(-2)), x(XH)],
        XH => [x(XE).scale(&qi(2)), Poly::zero(n), x(XF).scale(&qi(-2))],
        XF => [x(XH).scale(&qi(-1)), x(XF).scale(&qi(2)), Poly::zero(n)],
        _ => panic!("bracket with a non-linear generator"),
    };
    let mut out = Poly::zero(n);
    for (j, b) in row.iter().enumerate() {
        if !b.is_zero() {
            out = out.add(&b.mul(&p.derivative(j)));
        }
    }
    out
}

/// Linear span bookkeeping: polynomials in echelon form keyed by their
/// leading monomial.
struct Span {
    rows: Vec<Poly>,
}

impl Span {
    fn reduce(&self, p: &Poly) -> Poly {
        let o = MonomialOrder::DegRevLex;
        let mut p = p.clone();
        loop {
            let mut changed = false;
            for r in &self.rows {
                let (lm, _) = r.leading(o).unwrap();
                let c = p.coeff(lm);
                if !c.is_zero() {
                    p = p.sub(&r.scale(&c));
                    changed = true;
                }
            }
            if !changed {
                return p;
            }
        }
    }

    /// Adds `p` if it is independent; returns whether it was.
    fn insert(&mut self, p: &Poly) -> bool {
        let r = self.reduce(p);
        if r.is_zero() {
            return false;
        }
        let r = r.monic(MonomialOrder::DegRevLex);
        let lm = r.leading(MonomialOrder::DegRevLex).unwrap().0.clone();
        for row in self.rows.iter_mut() {
            let c = row.coeff(&lm);
            if !c.is_zero() {
                *row = row.sub(&r.scale(&c));
            }
        }
        self.rows.push(r);
        true
    }
}

/// Smallest ad-stable subspace containing `polys`, returned as an ideal
/// whose generators are a basis of that subspace.
pub fn adjoint_closure(polys: &[Poly]) -> PolyIdeal {
    let n = polys.first().map_or(3, |p| p.nvars());
    let mut span = Span { rows: Vec::new() };
    let mut queue: Vec<Poly> = polys.to_vec();
    while let Some(p) = queue.pop() {
        if span.insert(&p) {
            for i in [XE, XH, XF] {
                queue.push(kk_bracket(i, &p));
            }
        }
    }
    let mut rows = span.rows;
    rows.sort_by(|a, b| {
        let o = MonomialOrder::DegRevLex;
        o.cmp(b.leading(o).unwrap().0, a.leading(o).unwrap().0)
    });
    PolyIdeal::new(n, rows)
}

/// Dimension of the zero locus: the largest set of variables containing
/// no leading monomial of the Groebner basis; `-1` for the unit ideal.
pub fn krull_dim(ideal: &PolyIdeal) -> i64 {
    if ideal.is_unit() {
        return -1;
    }
    let n = ideal.nvars();
    let leads: Vec<Vec<u32>> =
        ideal.groebner().iter().map(|g| g.leading(MonomialOrder::DegRevLex).unwrap().0.clone()).collect();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones();
        if size <= best {
            continue;
        }
        let independent = leads.iter().all(|m| m.iter().enumerate().any(|(i, &e)| e > 0 && mask & (1 << i) == 0));
        if independent {
            best = size;
        }
    }
    best as i64
}

/// Whether `f` lies in the radical of `ideal`: `ideal + (1 - t f)` is the
/// unit ideal in one more variable.
pub fn radical_contains(ideal: &PolyIdeal, f: &Poly) -> bool {
    let n = ideal.nvars();
    let mut gens: Vec<Poly> = ideal.generators().iter().map(|g| g.extend_vars(n + 1)).collect();
    let t = Poly::var(n + 1, n);
    gens.push(Poly::one(n + 1).sub(&t.mul(&f.extend_vars(n + 1))));
    is_unit(&groebner_basis(&gens, MonomialOrder::DegRevLex))
}

/// Whether the zero locus lies in the nilpotent cone.
pub fn nilcone_containment(ideal: &PolyIdeal) -> Result<bool> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    Ok(radical_contains(ideal, &casimir(ideal.nvars())))
}

/// `sqrt(I) = (Omega)`: Omega lies in the radical and `I` lies in the
/// prime ideal `(Omega)`.
pub fn radical_is_nilcone(ideal: &PolyIdeal) -> bool {
    let omega = PolyIdeal::new(3, vec![casimir(3)]);
    !ideal.is_zero() && omega.contains_ideal(ideal) && radical_contains(ideal, &casimir(3))
}

/// `sqrt(I) = (x_e, x_h, x_f)`.
pub fn radical_is_origin(ideal: &PolyIdeal) -> bool {
    !ideal.is_unit() && (0..3).all(|i| radical_contains(ideal, &Poly::var(3, i)))
}

fn univariate_coeffs(p: &Poly) -> Vec<Q> {
    let d = p.total_degree().unwrap_or(0) as usize;
    let mut c = vec![Q::zero(); d + 1];
    for (m, a) in p.terms() {
        c[m[0] as usize] = a.clone();
    }
    c
}

fn univariate_gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (univariate_coeffs(a), univariate_coeffs(b));
    let trim = |v: &mut Vec<Q>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        // x mod y
        let ly = y.last().unwrap().clone();
        while x.len() >= y.len() {
            let c = x.last().unwrap() / &ly;
            let s = x.len() - y.len();
            for (i, yc) in y.iter().enumerate() {
                x[s + i] -= &c * yc;
            }
            trim(&mut x);
            if x.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
    let p = Poly::from_terms(1, x.into_iter().enumerate().map(|(i, c)| (vec![i as u32], c)));
    p.monic(MonomialOrder::DegRevLex)
}

/// Intersection with the Slodowy slice through `f`, parametrized by
/// `x_f = 1, x_h = 0, x_e = s`.
#[derive(Debug, Clone, Serialize)]
pub struct SlodowyRestriction {
    /// Restricted generators in `Q[s]`.
    pub generators: Vec<Poly>,
    /// Monic generator of the restricted ideal (`0` for the zero ideal).
    pub generator: Poly,
    /// 1 (whole slice), 0 (finitely many points) or -1 (empty).
    pub dim: i64,
}

pub fn slodowy_restrict(ideal: &PolyIdeal) -> SlodowyRestriction {
    let s = Poly::var(1, 0);
    let vals = [s, Poly::zero(1), Poly::one(1)];
    let generators: Vec<Poly> =
        ideal.generators().iter().map(|g| g.substitute(&vals)).filter(|p| !p.is_zero()).collect();
    let generator = generators.iter().fold(Poly::zero(1), |g, p| univariate_gcd(&g, p));
    let dim = if generator.is_zero() {
        1
    } else if generator.is_constant() {
        -1
    } else {
        0
    };
    SlodowyRestriction { generators, generator, dim }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    Inconclusive,
    Inconsistent,
}

/// Location and symbol of one singular vector.
#[derive(Debug, Clone, Serialize)]
pub struct SingularSummary {
    pub degree: usize,
    pub weight: i64,
    pub symbol: Poly,
}

#[derive(Debug, Clone, Serialize)]
pub struct VarietyReport {
    pub k: Level,
    pub truncation_degree: usize,
    pub singular_vectors: Vec<SingularSummary>,
    /// Basis of the ad-stable span of the symbols.
    pub ideal: PolyIdeal,
    pub groebner_basis: Vec<Poly>,
    pub proper_ideal_detected: bool,
    pub krull_dim: i64,
    pub in_nilcone: bool,
    pub lisse: bool,
    pub quasi_lisse_sl2: bool,
    pub note: String,
}

/// Associated variety (upper bound) from an existing analysis of the
/// vacuum module.
pub fn variety_from_analysis(a: &SimpleQuotient) -> Result<VarietyReport> {
    let k = match &a.level {
        LevelSpec::Rational(k) => k.clone(),
        LevelSpec::Generic => return Err(Error::Parse("variety needs a rational level".into())),
    };
    let n = a.truncation;
    let summaries: Vec<SingularSummary> = a
        .singular_vectors
        .iter()
        .map(|v| SingularSummary { degree: v.degree, weight: v.weight, symbol: symbol_in_rv(v) })
        .collect();
    let symbols: Vec<Poly> = summaries.iter().map(|s| s.symbol.clone()).filter(|p| !p.is_zero()).collect();
    let ideal = adjoint_closure(&symbols);
    let dim = krull_dim(&ideal);
    let in_nilcone = nilcone_containment(&ideal).unwrap_or(true);
    let note = if a.singular_vectors.is_empty() {
        format!("no singular vector found ≤ {n}")
    } else if symbols.is_empty() {
        format!("singular vectors found ≤ {n} all have zero symbol")
    } else {
        format!("upper bound from singular vectors of degree ≤ {n}")
    };
    Ok(VarietyReport {
        k,
        truncation_degree: n,
        singular_vectors: summaries,
        groebner_basis: ideal.groebner().to_vec(),
        proper_ideal_detected: !ideal.is_zero(),
        ideal,
        krull_dim: dim,
        in_nilcone,
        lisse: dim == 0,
        quasi_lisse_sl2: in_nilcone,
        note,
    })
}

pub fn variety_of_level(k: &Level, n_max: usize) -> Result<VarietyReport> {
    if k.value() == &qi(-2) {
        return Err(Error::CriticalLevel { module: "assoc_variety", level: k.to_string() });
    }
    variety_from_analysis(&analyze(&LevelSpec::Rational(k.clone()), n_max)?)
}

/// Compares a computed upper bound with a predicted variety. The computed
/// variety always contains the true one, so a computed variety smaller
/// than the prediction is a contradiction, a larger one only inconclusive.
pub fn consistency(predicted: PredictedVariety, r: &VarietyReport) -> Verdict {
    use PredictedVariety::*;
    match predicted {
        Point => match r.krull_dim {
            0 => Verdict::Consistent,
            d if d < 0 => Verdict::Inconsistent,
            _ => Verdict::Inconclusive,
        },
        NilpotentCone | MinimalOrbitClosure => match r.krull_dim {
            2 if r.in_nilcone => Verdict::Consistent,
            d if d < 2 => Verdict::Inconsistent,
            _ => Verdict::Inconclusive,
        },
        FullDual => {
            if r.proper_ideal_detected {
                Verdict::Inconsistent
            } else {
                Verdict::Consistent
            }
        }
        OrbitClosureUnspecified => {
            if r.in_nilcone && r.krull_dim >= 0 {
                Verdict::Consistent
            } else {
                Verdict::Inconclusive
            }
        }
        Unknown => Verdict::Inconclusive,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn closure_examples() {
        let c = adjoint_closure(&[x(XE)]);
        assert_eq!(c.generators().len(), 3);
        let c = adjoint_closure(&[x(XE).pow(2)]);
        assert_eq!(c.generators().len(), 5);
        let c = adjoint_closure(&[casimir(3)]);
        assert_eq!(c.generators().len(), 1);
        for i in [XE, XH, XF] {
            assert!(kk_bracket(i, &casimir(3)).is_zero());
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(krull_dim(&PolyIdeal::zero(3)), 3);
        assert_eq!(krull_dim(&PolyIdeal::new(3, vec![casimir(3)])), 2);
        assert_eq!(krull_dim(&PolyIdeal::new(3, vec![x(0), x(1), x(2)])), 0);
        assert_eq!(krull_dim(&PolyIdeal::new(3, vec![Poly::one(3)])), -1);
        assert_eq!(krull_dim(&adjoint_closure(&[x(XE).pow(2)])), 0);
    }

    #[test]
    fn nilcone_examples() {
        assert!(nilcone_containment(&PolyIdeal::new(3, vec![x(0), x(1), x(2)])).unwrap());
        assert!(nilcone_containment(&PolyIdeal::new(3, vec![casimir(3)])).unwrap());
        assert!(!nilcone_containment(&PolyIdeal::new(3, vec![x(XH)])).unwrap());
        assert_eq!(nilcone_containment(&PolyIdeal::new(3, vec![Poly::one(3)])), Err(Error::UnitIdeal));
    }

    #[test]
    fn slodowy_examples() {
        let r = slodowy_restrict(&PolyIdeal::new(3, vec![casimir(3)]));
        assert_eq!(r.generators[0].to_string(), "4*s");
        assert_eq!(r.generator.to_string(), "s");
        assert_eq!(r.dim, 0);
        assert_eq!(slodowy_restrict(&PolyIdeal::zero(3)).dim, 1);
        assert_eq!(slodowy_restrict(&PolyIdeal::new(3, vec![x(0), x(1), x(2)])).dim, -1);
    }

    #[test]
    fn radical_equalities() {
        let cone = adjoint_closure(&[x(XE).mul(&casimir(3))]);
        assert!(radical_is_nilcone(&cone));
        assert!(!radical_is_origin(&cone));
        let origin = adjoint_closure(&[x(XE).pow(2)]);
        assert!(radical_is_origin(&origin));
        assert!(!radical_is_nilcone(&origin));
    }
}
