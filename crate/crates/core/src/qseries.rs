//! Truncated q-series `q^alpha (a_0 + a_1 q + ... + a_N q^N)` with exact
//! rational coefficients.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_q, parse_rational, qi, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub alpha: Q,
    pub coeffs: Vec<Q>,
}

impl QSeries {
    pub fn new(alpha: Q, coeffs: Vec<Q>) -> Self {
        QSeries { alpha, coeffs }
    }

    pub fn from_integers(alpha: Q, coeffs: &[i64]) -> Self {
        QSeries { alpha, coeffs: coeffs.iter().map(|&c| qi(c)).collect() }
    }

    /// The constant series 1 through `q^n`.
    pub fn one(n: usize) -> Self {
        let mut c = vec![Q::zero(); n + 1];
        c[0] = Q::one();
        QSeries { alpha: Q::zero(), coeffs: c }
    }

    pub fn zero(alpha: Q, n: usize) -> Self {
        QSeries { alpha, coeffs: vec![Q::zero(); n + 1] }
    }

    /// Highest retained power offset N.
    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn truncate(&self, n: usize) -> Self {
        QSeries { alpha: self.alpha.clone(), coeffs: self.coeffs.iter().take(n + 1).cloned().collect() }
    }

    pub fn scale(&self, s: &Q) -> Self {
        QSeries { alpha: self.alpha.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Integer shift `m >= 0` such that `other.alpha = self.alpha + m`.
    fn offset(&self, other: &QSeries) -> Result<Option<usize>> {
        let d = &other.alpha - &self.alpha;
        if !d.is_integer() {
            return Err(Error::MisalignedSeries(fmt_q(&self.alpha), fmt_q(&other.alpha)));
        }
        if d.is_negative() {
            return Ok(None);
        }
        Ok(Some(d.to_integer().try_into().expect("shift fits in usize")))
    }

    /// Sum, expressed with the smaller leading exponent. Errors when the
    /// exponents do not differ by an integer.
    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        let Some(m) = self.offset(other)? else {
            return other.add(self);
        };
        let n = self.truncation().min(other.truncation() + m);
        let coeffs = (0..=n)
            .map(|i| {
                let mut c = self.coeffs[i].clone();
                if i >= m {
                    c += &other.coeffs[i - m];
                }
                c
            })
            .collect();
        Ok(QSeries { alpha: self.alpha.clone(), coeffs })
    }

    pub fn sub(&self, other: &QSeries) -> Result<QSeries> {
        self.add(&other.scale(&-Q::one()))
    }

    /// Product truncated to the common precision.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.truncation().min(other.truncation());
        let mut coeffs = vec![Q::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QSeries { alpha: &self.alpha + &other.alpha, coeffs }
    }

    /// `q d/dq`: multiplies the `q^(alpha+n)` term by `alpha + n`.
    pub fn q_derivative(&self) -> QSeries {
        let coeffs = self.coeffs.iter().enumerate().map(|(n, c)| c * (&self.alpha + qi(n as i64))).collect();
        QSeries { alpha: self.alpha.clone(), coeffs }
    }

    /// Reads the text format: a first line `alpha num/den`, then one
    /// rational coefficient per line. Blank lines and `#` comments are
    /// ignored.
    pub fn parse(text: &str) -> Result<QSeries> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| Error::Parse("empty q-series input".into()))?;
        let alpha = head
            .strip_prefix("alpha")
            .ok_or_else(|| Error::Parse(format!("expected 'alpha <rational>', got '{head}'")))?;
        let alpha = parse_rational(alpha.trim())?;
        let coeffs = lines.map(parse_rational).collect::<Result<Vec<_>>>()?;
        if coeffs.is_empty() {
            return Err(Error::Parse("q-series has no coefficients".into()));
        }
        Ok(QSeries { alpha, coeffs })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("alpha {}\n", fmt_q(&self.alpha));
        for c in &self.coeffs {
            s.push_str(&fmt_q(c));
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * [", fmt_q(&self.alpha))?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&fmt_q(c))?;
        }
        f.write_str("]")
    }
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QSeries", 2)?;
        st.serialize_field("alpha", &fmt_q(&self.alpha))?;
        st.serialize_field("coeffs", &self.coeffs.iter().map(fmt_q).collect::<Vec<_>>())?;
        st.end()
    }
}
