//! Classification of rational levels of affine vertex algebras.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{Series, SimpleLieAlgebraData};
use crate::rational::{fmt_q, is_nonneg_integer, parse_rational, qi, Q};

/// An exact rational level, kept in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(Q);

impl Level {
    pub fn new(value: Q) -> Self {
        Level(value)
    }

    pub fn integer(n: i64) -> Self {
        Level(qi(n))
    }

    pub fn value(&self) -> &Q {
        &self.0
    }
}

impl From<Q> for Level {
    fn from(q: Q) -> Self {
        Level(q)
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Level)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_q(&self.0))
    }
}

impl Serialize for Level {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_q(&self.0))
    }
}

/// A level that is either an exact rational or the symbolic generic level
/// (no singular vectors assumed).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LevelSpec {
    Rational(Level),
    Generic,
}

impl From<Level> for LevelSpec {
    fn from(k: Level) -> Self {
        LevelSpec::Rational(k)
    }
}

impl fmt::Display for LevelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LevelSpec::Rational(k) => k.fmt(f),
            LevelSpec::Generic => f.write_str("GENERIC"),
        }
    }
}

impl FromStr for LevelSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().eq_ignore_ascii_case("generic") {
            Ok(LevelSpec::Generic)
        } else {
            s.parse().map(LevelSpec::Rational)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PredictedVariety {
    Point,
    MinimalOrbitClosure,
    NilpotentCone,
    OrbitClosureUnspecified,
    FullDual,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Admissibility {
    pub admissible: bool,
    pub p: Option<BigInt>,
    pub q: Option<BigInt>,
}

/// `k + h∨ = p/q` with coprime positive `p, q` and `p ≥ h∨` when
/// `gcd(r∨, q) = 1`, `p ≥ h` otherwise.
pub fn is_admissible(g: &SimpleLieAlgebraData, k: &Level) -> Admissibility {
    let shifted = k.value() + qi(g.dual_coxeter_number());
    let no = Admissibility { admissible: false, p: None, q: None };
    if !shifted.is_positive() {
        return no;
    }
    let (p, q) = (shifted.numer().clone(), shifted.denom().clone());
    let lacing = BigInt::from(g.lacing_number());
    let threshold = if q.gcd(&lacing).is_one() {
        g.dual_coxeter_number()
    } else {
        g.coxeter_number()
    };
    if p >= BigInt::from(threshold) {
        Admissibility { admissible: true, p: Some(p), q: Some(q) }
    } else {
        no
    }
}

pub fn is_integrable(_g: &SimpleLieAlgebraData, k: &Level) -> bool {
    is_nonneg_integer(k.value())
}

pub fn is_critical(g: &SimpleLieAlgebraData, k: &Level) -> bool {
    *k.value() == -qi(g.dual_coxeter_number())
}

pub fn is_deligne_series(g: &SimpleLieAlgebraData) -> bool {
    matches!(
        (g.series, g.rank),
        (Series::A, 1)
            | (Series::A, 2)
            | (Series::G, 2)
            | (Series::D, 4)
            | (Series::F, 4)
            | (Series::E, 6)
            | (Series::E, 7)
            | (Series::E, 8)
    )
}

/// The eight members of the Deligne series, in order.
pub fn deligne_series() -> Vec<SimpleLieAlgebraData> {
    ["A1", "A2", "G2", "D4", "F4", "E6", "E7", "E8"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

fn deligne_base(g: &SimpleLieAlgebraData) -> Q {
    -Q::new(BigInt::from(g.dual_coxeter_number()), BigInt::from(6)) - Q::one()
}

/// `k = -h∨/6 - 1 + n`.
pub fn deligne_level(g: &SimpleLieAlgebraData, n: u64) -> Result<Level> {
    if !is_deligne_series(g) {
        return Err(Error::NotDeligneSeries(g.name()));
    }
    let k = deligne_base(g) + Q::from_integer(BigInt::from(n));
    if is_nonneg_integer(&k) {
        return Err(Error::ExcludedLevel(fmt_q(&k)));
    }
    Ok(Level(k))
}

/// Returns `n` when `k = -h∨/6 - 1 + n` is an allowed Deligne level.
pub fn deligne_index(g: &SimpleLieAlgebraData, k: &Level) -> Option<u64> {
    if !is_deligne_series(g) || is_nonneg_integer(k.value()) {
        return None;
    }
    let n = k.value() - deligne_base(g);
    if is_nonneg_integer(&n) {
        n.to_integer().to_u64()
    } else {
        None
    }
}

/// `c = k dim g / (k + h∨)`.
pub fn sugawara_central_charge(g: &SimpleLieAlgebraData, k: &Level) -> Result<Q> {
    let shifted = k.value() + qi(g.dual_coxeter_number());
    if shifted.is_zero() {
        return Err(Error::CriticalLevel { module: "level_class", level: k.to_string() });
    }
    Ok(k.value() * qi(g.dim() as i64) / shifted)
}

pub fn c4d_to_c2d(c4d: &Q) -> Q {
    -qi(12) * c4d
}

/// Note attached to D4 and F4 Deligne levels, which the usual admissible
/// and non-admissible membership lists both claim; the admissibility
/// criterion settles each case on its own.
pub fn deligne_discrepancy_note(g: &SimpleLieAlgebraData, k: &Level) -> Option<String> {
    let flagged = matches!((g.series, g.rank), (Series::D, 4) | (Series::F, 4));
    if !flagged || deligne_index(g, k).is_none() {
        return None;
    }
    let verdict = if is_admissible(g, k).admissible { "admissible" } else { "not admissible" };
    Some(format!(
        "commonly listed both among admissible and among non-admissible Deligne levels; \
         the admissibility criterion gives: {verdict}"
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub g: String,
    pub k: Level,
    pub admissible: bool,
    #[serde(serialize_with = "ser_opt_int")]
    pub p: Option<BigInt>,
    #[serde(serialize_with = "ser_opt_int")]
    pub q: Option<BigInt>,
    pub integrable: bool,
    pub critical: bool,
    pub deligne_index: Option<u64>,
    /// Absent at the critical level, where the Sugawara construction fails.
    #[serde(serialize_with = "ser_opt_q")]
    pub c_sugawara: Option<Q>,
    pub predicted_variety: PredictedVariety,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub discrepancy_note: Option<String>,
}

fn ser_opt_int<S: serde::Serializer>(v: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(x) => match x.to_u64() {
            Some(u) => s.serialize_u64(u),
            None => s.serialize_str(&x.to_string()),
        },
    }
}

fn ser_opt_q<S: serde::Serializer>(v: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(x) => s.serialize_str(&fmt_q(x)),
    }
}

pub fn classify(g: &SimpleLieAlgebraData, k: &Level) -> LevelReport {
    let adm = is_admissible(g, k);
    let integrable = is_integrable(g, k);
    let critical = is_critical(g, k);
    let deligne = deligne_index(g, k);
    let is_a1 = g.series == Series::A && g.rank == 1;
    // sl2 has a single nonzero nilpotent orbit, so its minimal orbit
    // closure is the whole nilpotent cone.
    let predicted_variety = if integrable {
        PredictedVariety::Point
    } else if critical {
        PredictedVariety::NilpotentCone
    } else if deligne.is_some() {
        if is_a1 {
            PredictedVariety::NilpotentCone
        } else {
            PredictedVariety::MinimalOrbitClosure
        }
    } else if adm.admissible {
        if is_a1 {
            PredictedVariety::NilpotentCone
        } else {
            PredictedVariety::OrbitClosureUnspecified
        }
    } else {
        PredictedVariety::Unknown
    };
    LevelReport {
        g: g.name(),
        k: k.clone(),
        admissible: adm.admissible,
        p: adm.p,
        q: adm.q,
        integrable,
        critical,
        deligne_index: deligne,
        c_sugawara: sugawara_central_charge(g, k).ok(),
        predicted_variety,
        discrepancy_note: deligne_discrepancy_note(g, k),
    }
}

/// Prediction for the symbolic generic level: the universal algebra is
/// simple and its variety is all of g*.
pub fn classify_generic(_g: &SimpleLieAlgebraData) -> PredictedVariety {
    PredictedVariety::FullDual
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use proptest::prelude::*;

    fn g(s: &str) -> SimpleLieAlgebraData {
        s.parse().unwrap()
    }

    fn lv(n: i64, d: i64) -> Level {
        Level(q(n, d))
    }

    #[test]
    fn admissibility_examples() {
        let a = is_admissible(&g("A1"), &lv(-1, 2));
        assert!(a.admissible);
        assert_eq!((a.p.unwrap(), a.q.unwrap()), (BigInt::from(3), BigInt::from(2)));
        assert!(!is_admissible(&g("A1"), &lv(-1, 1)).admissible);
        assert!(!is_admissible(&g("A1"), &lv(-2, 1)).admissible);
        assert!(!is_admissible(&g("A1"), &lv(-7, 3)).admissible);
        let f = is_admissible(&g("F4"), &lv(-5, 2));
        assert!(f.admissible);
        assert_eq!((f.p.unwrap(), f.q.unwrap()), (BigInt::from(13), BigInt::from(2)));
        // Same p with odd q uses the h∨ threshold instead.
        assert!(is_admissible(&g("F4"), &lv(-14, 3)).admissible);
        assert!(!is_admissible(&g("F4"), &lv(-7, 2)).admissible);
    }

    #[test]
    fn integrability() {
        assert!(is_integrable(&g("A1"), &Level::integer(0)));
        assert!(is_integrable(&g("A1"), &Level::integer(2)));
        assert!(!is_integrable(&g("E8"), &Level::integer(-6)));
        assert!(!is_integrable(&g("A1"), &lv(1, 2)));
    }

    #[test]
    fn deligne_levels() {
        assert_eq!(deligne_level(&g("A1"), 0).unwrap(), lv(-4, 3));
        assert_eq!(deligne_level(&g("E8"), 0).unwrap(), Level::integer(-6));
        assert!(matches!(deligne_level(&g("D4"), 2), Err(Error::ExcludedLevel(_))));
        assert!(matches!(deligne_level(&g("B3"), 0), Err(Error::NotDeligneSeries(_))));
        assert_eq!(deligne_index(&g("A1"), &lv(-4, 3)), Some(0));
        assert_eq!(deligne_index(&g("A1"), &lv(-1, 3)), Some(1));
        assert_eq!(deligne_index(&g("A1"), &lv(-1, 2)), None);
        // k = 0 would be n = 2 for D4 but is excluded.
        assert_eq!(deligne_index(&g("D4"), &Level::integer(0)), None);
    }

    #[test]
    fn deligne_partition() {
        let admissible: Vec<String> = deligne_series()
            .iter()
            .filter(|g| is_admissible(g, &deligne_level(g, 0).unwrap()).admissible)
            .map(|g| g.name())
            .collect();
        assert_eq!(admissible, ["A1", "A2", "G2", "F4"]);
    }

    #[test]
    fn classify_examples() {
        let r = classify(&g("A1"), &lv(-4, 3));
        assert!(r.admissible);
        assert_eq!(r.deligne_index, Some(0));
        assert_eq!(r.c_sugawara, Some(qi(-6)));
        assert_eq!(r.predicted_variety, PredictedVariety::NilpotentCone);

        let r = classify(&g("A1"), &Level::integer(1));
        assert!(r.integrable && r.admissible);
        assert_eq!(r.predicted_variety, PredictedVariety::Point);
        assert_eq!(r.c_sugawara, Some(qi(1)));

        let r = classify(&g("E6"), &Level::integer(-3));
        assert_eq!(r.deligne_index, Some(0));
        assert!(!r.admissible);
        assert_eq!(r.predicted_variety, PredictedVariety::MinimalOrbitClosure);

        let r = classify(&g("A1"), &Level::integer(-2));
        assert!(r.critical && !r.admissible);
        assert_eq!(r.c_sugawara, None);
        assert_eq!(r.predicted_variety, PredictedVariety::NilpotentCone);

        let r = classify(&g("G2"), &lv(1, 2));
        assert_eq!(r.predicted_variety, PredictedVariety::OrbitClosureUnspecified);
        assert_eq!(classify(&g("A1"), &Level::integer(-1)).predicted_variety, PredictedVariety::Unknown);

        assert!(classify(&g("D4"), &Level::integer(-2)).discrepancy_note.is_some());
        assert!(classify(&g("F4"), &lv(-5, 2)).discrepancy_note.is_some());
        assert!(classify(&g("E8"), &Level::integer(-6)).discrepancy_note.is_none());
    }

    #[test]
    fn sugawara_and_c4d() {
        assert_eq!(sugawara_central_charge(&g("A1"), &Level::integer(1)).unwrap(), qi(1));
        assert_eq!(sugawara_central_charge(&g("A1"), &lv(-1, 2)).unwrap(), qi(-1));
        assert_eq!(sugawara_central_charge(&g("A1"), &lv(-4, 3)).unwrap(), qi(-6));
        assert!(matches!(
            sugawara_central_charge(&g("A1"), &Level::integer(-2)),
            Err(Error::CriticalLevel { .. })
        ));
        assert_eq!(c4d_to_c2d(&qi(0)), qi(0));
        assert_eq!(c4d_to_c2d(&qi(1)), qi(-12));
        assert_eq!(c4d_to_c2d(&q(5, 6)), qi(-10));
    }

    #[test]
    fn integrable_implies_admissible_with_q_one() {
        for (s, n) in crate::lie::sample_types() {
            let g = crate::lie::build(s, n).unwrap();
            for k in 0..6 {
                let a = is_admissible(&g, &Level::integer(k));
                assert!(a.admissible, "{g} at {k}");
                assert_eq!(a.q, Some(BigInt::one()));
                assert_eq!(a.p, Some(BigInt::from(k + g.dual_coxeter_number())));
            }
        }
    }

    /// Exhaustive scan over denominators up to the canonical one.
    fn admissible_by_scan(g: &SimpleLieAlgebraData, k: &Level) -> Option<(BigInt, BigInt)> {
        let s = k.value() + qi(g.dual_coxeter_number());
        let dmax = s.denom().to_u64()?;
        for qd in 1..=dmax {
            let p = &s * qi(qd as i64);
            if !p.is_integer() || !p.is_positive() {
                continue;
            }
            let p = p.to_integer();
            let qd = BigInt::from(qd);
            if !p.gcd(&qd).is_one() {
                continue;
            }
            let r = BigInt::from(g.lacing_number());
            let t = if qd.gcd(&r).is_one() { g.dual_coxeter_number() } else { g.coxeter_number() };
            return (p >= BigInt::from(t)).then_some((p, qd));
        }
        None
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]
        #[test]
        fn admissibility_matches_denominator_scan(
            idx in 0usize..27, num in -400i64..400, den in 1i64..60
        ) {
            let types = crate::lie::sample_types();
            let (s, n) = types[idx % types.len()];
            let g = crate::lie::build(s, n).unwrap();
            let k = lv(num, den);
            let a = is_admissible(&g, &k);
            let scan = admissible_by_scan(&g, &k);
            prop_assert_eq!(a.admissible, scan.is_some());
            if let Some((p, qd)) = scan {
                prop_assert_eq!(a.p, Some(p));
                prop_assert_eq!(a.q, Some(qd));
            }
            if a.admissible {
                prop_assert!(!is_critical(&g, &k));
            }
        }
    }
}
