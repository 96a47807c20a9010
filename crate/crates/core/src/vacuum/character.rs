//! Characters of the universal and simple vacuum modules of affine sl2.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::basis::universal_dimensions;
use super::simple::{analyze, SimpleQuotient};
use crate::error::Result;
use crate::level::{is_admissible, sugawara_central_charge, Level, LevelSpec};
use crate::lie::{build, SimpleLieAlgebraData, Series};
use crate::qseries::QSeries;
use crate::rational::{qi, Q};

fn sl2() -> SimpleLieAlgebraData {
    build(Series::A, 1).expect("A1 is valid")
}

/// `-c/24` for the Sugawara central charge of sl2 at level `k`.
pub fn vacuum_alpha(k: &Level) -> Result<Q> {
    Ok(-sugawara_central_charge(&sl2(), k)? / qi(24))
}

/// `prod_{n>=1} (1 - q^n)^{-3}` through `q^n`, with leading exponent
/// `alpha`.
pub fn universal_character(n: usize, alpha: Q) -> QSeries {
    QSeries::new(alpha, universal_dimensions(n).into_iter().map(Q::from_integer).collect())
}

/// Character of `L_k(sl2)` from certified Gram ranks.
pub fn simple_character(k: &Level, n: usize) -> Result<QSeries> {
    let alpha = vacuum_alpha(k)?;
    let a = analyze(&LevelSpec::Rational(k.clone()), n)?;
    Ok(character_of(&a, alpha))
}

/// Character read off an existing analysis.
pub fn character_of(a: &SimpleQuotient, alpha: Q) -> QSeries {
    QSeries::new(alpha, a.graded_dims.iter().map(|&d| qi(d as i64)).collect())
}

/// Vacuum character at an admissible level `k + 2 = p/q` from the
/// Kac-Wakimoto numerator `sum_j (1 + 2pj) q^(pq j^2 + qj)` over the
/// universal denominator. `None` if `k` is not admissible.
pub fn admissible_character_theta(k: &Level, n: usize) -> Option<QSeries> {
    let adm = is_admissible(&sl2(), k);
    if !adm.admissible {
        return None;
    }
    let p = adm.p?.to_i64()?;
    let q = adm.q?.to_i64()?;
    let mut num = vec![BigInt::zero(); n + 1];
    let mut j: i64 = 0;
    loop {
        for t in if j == 0 { vec![0] } else { vec![j, -j] } {
            let e = p * q * t * t + q * t;
            if e >= 0 && (e as usize) <= n {
                num[e as usize] += BigInt::from(1 + 2 * p * t);
            }
        }
        if p * q * j * j - q * j > n as i64 {
            break;
        }
        j += 1;
    }
    let den = universal_dimensions(n);
    let mut c = vec![BigInt::zero(); n + 1];
    for (i, a) in num.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (l, b) in den.iter().enumerate().take(n + 1 - i) {
            c[i + l] += a * b;
        }
    }
    let alpha = vacuum_alpha(k).expect("admissible level is not critical");
    Some(QSeries::new(alpha, c.into_iter().map(Q::from_integer).collect()))
}

/// Weyl-Kac vacuum character of the integrable level `k`.
pub fn integrable_character_theta(k: u64, n: usize) -> QSeries {
    admissible_character_theta(&Level::integer(k as i64), n).expect("nonnegative integers are admissible")
}

/// Whether a series is a constant `1` followed by zeros.
pub fn is_trivial_character(s: &QSeries) -> bool {
    s.coeffs.first().is_some_and(|c| c.is_one()) && s.coeffs.iter().skip(1).all(|c| c.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn theta_level_zero_is_trivial() {
        let t = integrable_character_theta(0, 30);
        assert!(is_trivial_character(&t));
        assert_eq!(t.alpha, qi(0));
    }

    #[test]
    fn theta_level_one_leading_terms() {
        // L_1(sl2): the basic representation, dimensions 1, 3, 4, 7, 13, ...
        let t = integrable_character_theta(1, 5);
        assert_eq!(t.coeffs, [1, 3, 4, 7, 13, 19].iter().map(|&c| qi(c)).collect::<Vec<_>>());
        assert_eq!(t.alpha, q(-1, 24));
    }

    #[test]
    fn simple_character_alpha() {
        let c = simple_character(&Level::from(q(-4, 3)), 3).unwrap();
        assert_eq!(c.alpha, q(1, 4));
        assert!(simple_character(&Level::integer(-2), 2).is_err());
    }

    #[test]
    fn admissible_theta_leading_terms() {
        let t = admissible_character_theta(&Level::from(q(-4, 3)), 6).unwrap();
        assert_eq!(t.coeffs, [1, 3, 9, 19, 42, 81, 155].iter().map(|&c| qi(c)).collect::<Vec<_>>());
        let t = admissible_character_theta(&Level::from(q(-1, 2)), 4).unwrap();
        assert_eq!(t.coeffs, [1, 3, 9, 22, 46].iter().map(|&c| qi(c)).collect::<Vec<_>>());
        assert!(admissible_character_theta(&Level::integer(-1), 4).is_none());
    }
}
