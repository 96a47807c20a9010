//! Report assembly behind the `qlk` binary. Every command builds a JSON
//! value; the text format is rendered from that value.

use serde::Serialize;
use serde_json::{json, Map, Value};

use qlk_core::level::{classify, deligne_level, deligne_series, Level, PredictedVariety};
use qlk_core::lie::SimpleLieAlgebraData;
use qlk_core::mlde::{fit_mlde, frobenius_solve, indicial_roots, Fit, Mlde, DEFAULT_MARGIN};
use qlk_core::qseries::QSeries;
use qlk_core::rational::{fmt_q, Q};
use qlk_core::vacuum::character::character_of;
use qlk_core::vacuum::{analyze, simple_character, vacuum_alpha};
use qlk_core::variety::{consistency, slodowy_restrict, variety_from_analysis, Verdict};
use qlk_core::{Error, Result};

pub const SCHEMA: &str = "1";
pub const DEFAULT_N: usize = 12;
pub const DEFAULT_MAX_ORDER: usize = 4;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn with_schema(v: Value) -> Value {
    let mut m = match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("result".into(), other);
            m
        }
    };
    m.insert("schema".into(), Value::String(SCHEMA.into()));
    Value::Object(m)
}

fn verdict(v: Verdict) -> Value {
    to_value(&v)
}

pub fn parse_algebra(g: &str) -> Result<SimpleLieAlgebraData> {
    g.parse()
}

pub fn parse_level(k: &str) -> Result<Level> {
    k.parse()
}

fn require_sl2(g: &SimpleLieAlgebraData, module: &'static str) -> Result<()> {
    if g.name() == "A1" {
        Ok(())
    } else {
        Err(Error::Unsupported { module, message: format!("only A1 is implemented, got {}", g.name()) })
    }
}

pub fn cmd_classify(g: &str, k: &str) -> Result<Value> {
    let g = parse_algebra(g)?;
    let k = parse_level(k)?;
    Ok(with_schema(to_value(&classify(&g, &k))))
}

/// The eight Deligne levels with `n = 0`.
pub fn cmd_deligne() -> Result<Value> {
    let mut rows = Vec::new();
    for g in deligne_series() {
        let k = deligne_level(&g, 0)?;
        let r = classify(&g, &k);
        let mut row = json!({
            "g": r.g,
            "k": r.k,
            "admissible": r.admissible,
            "predicted_variety": PredictedVariety::MinimalOrbitClosure,
        });
        if let Some(note) = r.discrepancy_note {
            row["discrepancy_note"] = Value::String(note);
        }
        rows.push(row);
    }
    Ok(with_schema(json!({ "n": 0, "rows": rows })))
}

pub fn cmd_variety(g: &str, k: &str, n: usize) -> Result<Value> {
    require_sl2(&parse_algebra(g)?, "assoc_variety")?;
    let k = parse_level(k)?;
    let r = qlk_core::variety::variety_of_level(&k, n)?;
    let predicted = classify(&parse_algebra(g)?, &k).predicted_variety;
    let mut v = to_value(&r);
    v["predicted_variety"] = to_value(&predicted);
    v["verdict"] = verdict(consistency(predicted, &r));
    v["slodowy"] = to_value(&slodowy_restrict(&r.ideal));
    Ok(with_schema(v))
}

pub fn cmd_char(g: &str, k: &str, n: usize) -> Result<Value> {
    require_sl2(&parse_algebra(g)?, "vacuum_engine")?;
    let k = parse_level(k)?;
    let chi = simple_character(&k, n)?;
    let mut v = to_value(&chi);
    v["k"] = to_value(&k);
    v["truncation"] = json!(n);
    Ok(with_schema(v))
}

/// Where `mlde` takes its character from.
pub enum SeriesSource {
    Text(String),
    Level { k: String, n: usize },
}

/// MLDE section shared by `mlde` and the composite report.
pub fn mlde_section(chi: &QSeries, max_order: usize, frobenius_terms: usize) -> (Value, Verdict) {
    let mut attempts = Vec::new();
    for order in 1..=max_order {
        match fit_mlde(std::slice::from_ref(chi), order, DEFAULT_MARGIN) {
            Ok(Fit::Found { mlde, unique }) => {
                let body = found_section(chi, &mlde, unique, frobenius_terms);
                let ok = body["residual_zero"] == Value::Bool(true);
                let v = if ok { Verdict::Consistent } else { Verdict::Inconsistent };
                return (body, v);
            }
            Ok(Fit::NoSolution) => attempts.push(json!({ "order": order, "result": "NoSolution" })),
            Err(e) => {
                attempts.push(json!({ "order": order, "result": e.to_string() }));
                return (
                    json!({ "status": "InsufficientTruncation", "attempts": attempts, "error": e.to_string() }),
                    Verdict::Inconclusive,
                );
            }
        }
    }
    (json!({ "status": format!("NoSolution ≤ {max_order}"), "attempts": attempts }), Verdict::Inconclusive)
}

fn found_section(chi: &QSeries, mlde: &Mlde, unique: bool, n: usize) -> Value {
    let residual_zero = mlde.residual(chi).is_zero();
    let roots = indicial_roots(mlde);
    let mut solutions = Vec::new();
    for r in &roots.roots {
        let label = if r == &chi.alpha { "vacuum character" } else { "candidate character" };
        let entry = match frobenius_solve(mlde, r, n) {
            Ok(s) => json!({ "root": fmt_q(r), "label": label, "series": s }),
            Err(e) => json!({ "root": fmt_q(r), "label": label, "error": e.to_string() }),
        };
        solutions.push(entry);
    }
    json!({
        "status": "Found",
        "order": mlde.order,
        "unique": unique,
        "mlde": mlde,
        "residual_zero": residual_zero,
        "residual_checked_through": chi.truncation(),
        "indicial": roots,
        "indicial_root_sum": fmt_q(&roots.sum()),
        "solutions": solutions,
    })
}

pub fn cmd_mlde(source: SeriesSource, max_order: usize) -> Result<Value> {
    let chi = match source {
        SeriesSource::Text(t) => QSeries::parse(&t)?,
        SeriesSource::Level { k, n } => simple_character(&parse_level(&k)?, n)?,
    };
    let n = chi.truncation();
    let rows = Mlde::unknowns(1) + DEFAULT_MARGIN;
    if chi.coeffs.len() < rows {
        return Err(Error::InsufficientTruncation { rows: chi.coeffs.len(), needed: rows });
    }
    let (mut v, _) = mlde_section(&chi, max_order, n);
    v["input"] = to_value(&chi);
    Ok(with_schema(v))
}

fn worst(vs: &[Verdict]) -> Verdict {
    if vs.contains(&Verdict::Inconsistent) {
        Verdict::Inconsistent
    } else if vs.contains(&Verdict::Inconclusive) {
        Verdict::Inconclusive
    } else {
        Verdict::Consistent
    }
}

/// Classification, variety, Slodowy restriction, character and MLDE for
/// the sl2 Deligne level `k = -4/3`.
pub fn cmd_report_deligne_a1(n: usize, max_order: usize) -> Result<Value> {
    let g = parse_algebra("A1")?;
    let k = deligne_level(&g, 0)?;
    let level = classify(&g, &k);
    let analysis = analyze(&k.clone().into(), n)?;
    let variety = variety_from_analysis(&analysis)?;
    let slodowy = slodowy_restrict(&variety.ideal);
    let alpha = vacuum_alpha(&k)?;
    let chi = character_of(&analysis, alpha.clone());

    let v_level = if level.admissible && level.deligne_index == Some(0) {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    let v_variety = consistency(PredictedVariety::NilpotentCone, &variety);
    // the reduced algebra is expected to be lisse: finitely many points
    let v_slodowy = match slodowy.dim {
        0 => Verdict::Consistent,
        d if d < 0 => Verdict::Inconsistent,
        _ => Verdict::Inconclusive,
    };
    let expected_alpha = level.c_sugawara.as_ref().map(|c| -c / Q::from_integer(24.into()));
    let v_alpha = if expected_alpha.as_ref() == Some(&alpha) { Verdict::Consistent } else { Verdict::Inconsistent };
    let (mlde, v_mlde) = mlde_section(&chi, max_order, n);

    let verdicts = json!({
        "classification": verdict(v_level),
        "variety": verdict(v_variety),
        "slodowy": verdict(v_slodowy),
        "character_alpha": verdict(v_alpha),
        "mlde": verdict(v_mlde),
        "overall": verdict(worst(&[v_level, v_variety, v_slodowy, v_alpha, v_mlde])),
    });
    Ok(with_schema(json!({
        "truncation": n,
        "max_order": max_order,
        "classification": level,
        "variety": variety,
        "slodowy": slodowy,
        "character": chi,
        "mlde": mlde,
        "verdicts": verdicts,
    })))
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (key, x) in m {
                let p = if prefix.is_empty() { key.clone() } else { format!("{prefix}.{key}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

/// One `path  value` line per leaf, paths padded to a common width.
pub fn render_text(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let w = rows.iter().map(|(p, _)| p.chars().count()).max().unwrap_or(0);
    let mut s = String::new();
    for (p, x) in rows {
        let pad = w - p.chars().count();
        s.push_str(&p);
        s.push_str(&" ".repeat(pad + 2));
        s.push_str(&x);
        s.push('\n');
    }
    s
}
