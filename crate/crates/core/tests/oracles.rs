use qlk_core::level::{Level, LevelSpec};
use qlk_core::mlde::eisenstein;
use qlk_core::qseries::QSeries;
use qlk_core::rational::{q, qi, Q};
use qlk_core::vacuum::{admissible_character_theta, analyze, integrable_character_theta, simple_character, universal_character};

/// Partitions of `n` listed explicitly, counted by size.
fn partition_counts(n: usize) -> Vec<u64> {
    fn rec(rem: usize, max: usize, size: usize, out: &mut [u64]) {
        out[size] += 1;
        for part in 1..=max.min(rem) {
            rec(rem - part, part, size + part, out);
        }
    }
    let mut out = vec![0; n + 1];
    rec(n, n, 0, &mut out);
    out
}

/// Triples of partitions of total size `m`, for each `m <= n`.
fn three_coloured(n: usize) -> Vec<u64> {
    let p = partition_counts(n);
    let mut out = vec![0u64; n + 1];
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                out[a + b + c] += p[a] * p[b] * p[c];
            }
        }
    }
    out
}

fn ints(v: &[u64]) -> Vec<Q> {
    v.iter().map(|&c| qi(c as i64)).collect()
}

#[test]
fn universal_character_counts_coloured_partitions() {
    let u = universal_character(20, q(-1, 24));
    assert_eq!(u.coeffs, ints(&three_coloured(20)));
    assert_eq!(three_coloured(3), vec![1, 3, 9, 22]);
}

#[test]
fn gram_characters_match_weyl_kac() {
    for k in [1u64, 2] {
        let gram = simple_character(&Level::integer(k as i64), 8).unwrap();
        assert_eq!(gram, integrable_character_theta(k, 8), "k = {k}");
    }
}

#[test]
fn gram_characters_match_kac_wakimoto() {
    for (n, d, depth) in [(-4, 3, 12), (-1, 2, 10), (-5, 4, 8)] {
        let k = Level::from(q(n, d));
        let gram = simple_character(&k, depth).unwrap();
        assert_eq!(gram, admissible_character_theta(&k, depth).unwrap(), "k = {k}");
    }
}

#[test]
fn generic_level_is_universal() {
    let a = analyze(&LevelSpec::Generic, 8).unwrap();
    let dims: Vec<Q> = a.graded_dims.iter().map(|&d| qi(d as i64)).collect();
    assert_eq!(dims, universal_character(8, qi(0)).coeffs);
    assert!(a.singular_vectors.is_empty());
}

#[test]
fn ramanujan_identities_to_200() {
    let n = 200;
    let e2 = eisenstein(2, n).unwrap();
    let e4 = eisenstein(4, n).unwrap();
    let e6 = eisenstein(6, n).unwrap();
    let by = |s: QSeries, c: i64| s.scale(&q(1, c));
    assert_eq!(e2.q_derivative(), by(e2.mul(&e2).sub(&e4).unwrap(), 12));
    assert_eq!(e4.q_derivative(), by(e2.mul(&e4).sub(&e6).unwrap(), 3));
    assert_eq!(e6.q_derivative(), by(e2.mul(&e6).sub(&e4.mul(&e4)).unwrap(), 2));
}
