use std::sync::Arc;

use proptest::prelude::*;

use qlk_core::level::Level;
use qlk_core::linalg::exact::{solve, Solution};
use qlk_core::mlde::{
    eisenstein, fit_mlde, frobenius_solve, indicial_roots, serre_derivative, Fit, Mlde, ModularForm, DEFAULT_MARGIN,
};
use qlk_core::qseries::QSeries;
use qlk_core::rational::{q, qi, Q};
use qlk_core::vacuum::algebra::{Engine, SVec};
use qlk_core::vacuum::basis::split_creation;
use qlk_core::vacuum::ring::Rationals;
use qlk_core::vacuum::{contravariant_gram, Gen, PbwBasis};
use qlk_core::variety::poly::{MonomialOrder, Poly};
use qlk_core::variety::{adjoint_closure, kk_bracket, krull_dim, radical_contains, variety_of_level, PolyIdeal};

fn level() -> impl Strategy<Value = Q> {
    (-12i64..12, 1i64..6).prop_filter_map("not critical", |(n, d)| {
        let k = q(n, d);
        (k != qi(-2)).then_some(k)
    })
}

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn poly3(max_terms: usize, max_deg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, 3), small_q()), 1..=max_terms)
        .prop_map(|ts| Poly::from_terms(3, ts))
}

fn linear_form() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-3i64..=3).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
}

fn lin(c: [i64; 3]) -> Poly {
    Poly::from_terms(3, (0..3).map(|i| {
        let mut m = vec![0; 3];
        m[i] = 1;
        (m, qi(c[i]))
    }))
}

/// `<v, w>` by moving every creation operator of `v` across as its adjoint
/// and reading off the vacuum coefficient; `ops` are applied right to left.
fn pairing_by_adjoints(engine: &mut Engine<Rationals>, ops: &[(Gen, u32)], w: &SVec<Q>) -> Q {
    let mut cur = w.clone();
    for &(g, n) in ops {
        cur = engine.apply(g.bar(), n as i64, &cur).unwrap();
    }
    cur.iter().find(|(id, _)| *id == 0).map(|(_, c)| c.clone()).unwrap_or_else(|| qi(0))
}

fn build_vector(engine: &mut Engine<Rationals>, ops: &[(Gen, u32)]) -> SVec<Q> {
    let mut v: SVec<Q> = vec![(0, qi(1))];
    for &(g, n) in ops.iter().rev() {
        v = engine.apply(g, -(n as i64), &v).unwrap();
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, .. ProptestConfig::default() })]

    #[test]
    fn gram_is_symmetric(k in level(), d in 1usize..=4, wi in 0usize..9) {
        let basis = PbwBasis::new(d);
        let ws = basis.weights(d);
        let w = ws[wi % ws.len()];
        let g = contravariant_gram(&k, d, w).unwrap();
        prop_assert!(g.is_symmetric());
    }

    /// The Gram matrix pairing of reordered products agrees with pairing
    /// computed by adjoint annihilation in the reordered order.
    #[test]
    fn gram_independent_of_factor_order(
        k in level(),
        d in 2usize..=4,
        picks in (0usize..64, 0usize..64),
        seeds in (any::<u64>(), any::<u64>()),
    ) {
        let basis = Arc::new(PbwBasis::new(d));
        let ws = basis.weights(d);
        let w = ws[picks.0 % ws.len()];
        let block = basis.block(d, w);
        let size = block.len();
        let ids = [block.start + (picks.0 % size) as u32, block.start + (picks.1 % size) as u32];
        let mut engine = Engine::new(basis.clone(), Rationals { k: k.clone() });
        let shuffled = |id: u32, seed: u64| -> Vec<(Gen, u32)> {
            let mut f: Vec<(Gen, u32)> = basis.monomial(id).raw().iter().map(|&c| split_creation(c)).collect();
            let mut s = seed;
            for i in (1..f.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                f.swap(i, (s >> 33) as usize % (i + 1));
            }
            f
        };
        let ops_v = shuffled(ids[0], seeds.0);
        let ops_w = shuffled(ids[1], seeds.1);
        let v = build_vector(&mut engine, &ops_v);
        let wv = build_vector(&mut engine, &ops_w);
        let gram = contravariant_gram(&k, d, w).unwrap().matrix;
        let mut via_gram = qi(0);
        for (i, a) in &v {
            for (j, b) in &wv {
                via_gram += a * b * &gram[(*i - block.start) as usize][(*j - block.start) as usize];
            }
        }
        let direct = pairing_by_adjoints(&mut engine, &ops_v, &wv);
        prop_assert_eq!(via_gram, direct);
    }

    #[test]
    fn adjoint_closure_is_ad_stable(ps in prop::collection::vec(poly3(3, 3), 1..=2)) {
        let ideal = adjoint_closure(&ps);
        for p in &ps {
            prop_assert!(ideal.contains(p));
        }
        for g in ideal.generators() {
            for i in 0..3 {
                prop_assert!(ideal.contains(&kk_bracket(i, g)));
            }
        }
    }

    /// Radical membership by Rabinowitsch against vanishing on the two
    /// lines `l1 = l3 = 0` and `l2 = l3 = 0` of `V(l1^a l2^b, l3^c)`.
    #[test]
    fn rabinowitsch_matches_sampling(
        l in (linear_form(), linear_form(), linear_form()),
        e in (1u32..=2, 1u32..=2, 1u32..=2),
        f in poly3(3, 2),
        vanish in any::<bool>(),
    ) {
        let cross = |a: [i64; 3], b: [i64; 3]| [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        let dirs = [cross(l.0, l.2), cross(l.1, l.2)];
        prop_assume!(dirs.iter().all(|v| v.iter().any(|&c| c != 0)));
        let (l1, l2, l3) = (lin(l.0), lin(l.1), lin(l.2));
        let ideal = PolyIdeal::new(3, vec![l1.pow(e.0).mul(&l2.pow(e.1)), l3.pow(e.2)]);
        let f = if vanish { f.mul(&l3) } else { f };
        let deg = f.total_degree().unwrap_or(0) as i64;
        let on_lines = dirs.iter().all(|v| {
            (1..=deg + 1).all(|t| f.eval(&[qi(t * v[0]), qi(t * v[1]), qi(t * v[2])]) == qi(0))
        });
        prop_assert_eq!(radical_contains(&ideal, &f), on_lines);
    }

    #[test]
    fn lex_and_degrevlex_span_the_same_ideal(gens in prop::collection::vec(poly3(3, 2), 1..=3), f in poly3(3, 2)) {
        let ideal = PolyIdeal::new(3, gens.clone());
        let lex = ideal.groebner_in(MonomialOrder::Lex);
        let grevlex = ideal.groebner_in(MonomialOrder::DegRevLex);
        let lex_ideal = PolyIdeal::new(3, lex.clone());
        prop_assert!(lex_ideal == ideal);
        for g in gens.iter().chain(&grevlex) {
            prop_assert!(qlk_core::variety::groebner::reduce(g, &lex, MonomialOrder::Lex).is_zero());
        }
        let in_lex = qlk_core::variety::groebner::reduce(&f, &lex, MonomialOrder::Lex).is_zero();
        prop_assert_eq!(in_lex, ideal.contains(&f));
        prop_assert_eq!(krull_dim(&lex_ideal), krull_dim(&ideal));
    }

    /// Every monic MLDE has root sum `n(n-1)/12`, read off its indicial
    /// polynomial.
    #[test]
    fn indicial_sum(coords in prop::collection::vec(small_q(), 0..=8), order in 1usize..=5) {
        let mut it = coords.into_iter().chain(std::iter::repeat(qi(0)));
        let forms: Vec<ModularForm> = (1..=order)
            .map(|j| {
                let w = 2 * j as u32;
                let dim = qlk_core::mlde::dim_modular_forms(w);
                ModularForm::new(w, (0..dim).map(|_| it.next().unwrap()).collect())
            })
            .collect();
        let m = Mlde::new(forms);
        let p = m.indicial_polynomial();
        let n = order as i64;
        prop_assert_eq!(p[order].clone(), qi(1));
        prop_assert_eq!(-p[order - 1].clone(), q(n * (n - 1), 12));
        let roots = indicial_roots(&m);
        if roots.irrational_factor.is_none() {
            prop_assert_eq!(roots.sum(), q(n * (n - 1), 12));
        }
    }

    /// Order-2 MLDE built from a rational root pair: the Frobenius solution
    /// has zero residual and refitting recovers the operator.
    #[test]
    fn mlde_round_trip(r in (-24i64..=24).prop_map(|n| q(n, 24))) {
        let other = q(1, 6) - &r;
        let shift = &other - &r;
        prop_assume!(!(shift.is_integer() && shift > qi(0)));
        let m = Mlde::new(vec![ModularForm::zero(2), ModularForm::new(4, vec![&r * &other])]);
        let n = 30;
        let f = frobenius_solve(&m, &r, n).unwrap();
        prop_assert!(m.residual(&f).is_zero());
        prop_assert_eq!(fit_mlde(&[f], 2, DEFAULT_MARGIN).unwrap(), Fit::Found { mlde: m, unique: true });
    }

    #[test]
    fn order_three_round_trip(r in (-12i64..=12, -12i64..=12).prop_map(|(a, b)| (q(a, 12), q(b, 12)))) {
        let r3 = q(1, 2) - &r.0 - &r.1;
        let roots = [r.0.clone(), r.1.clone(), r3.clone()];
        // (x - r1)(x - r2)(x - r3) = x(x - 1/6)(x - 1/3) + c2 x + c3
        let e2 = &r.0 * &r.1 + &r.0 * &r3 + &r.1 * &r3;
        let c2 = e2 - q(1, 18);
        let c3 = -(&r.0 * &r.1 * &r3);
        let m = Mlde::new(vec![ModularForm::zero(2), ModularForm::new(4, vec![c2]), ModularForm::new(6, vec![c3])]);
        for root in &roots {
            match frobenius_solve(&m, root, 20) {
                Ok(f) => prop_assert!(m.residual(&f).is_zero()),
                Err(e) => {
                    let expected = matches!(e, qlk_core::Error::ResonantRoot { .. } | qlk_core::Error::LogarithmicCase(_));
                    prop_assert!(expected, "unexpected error {}", e);
                }
            }
        }
    }

    /// `serre_derivative` of a weight-`w` form is a weight-`w+2` form.
    #[test]
    fn serre_derivative_closure(wi in 0usize..5, coords in prop::collection::vec(small_q(), 2)) {
        let w = [4u32, 6, 8, 10, 12][wi];
        let dim = qlk_core::mlde::dim_modular_forms(w);
        let f = ModularForm::new(w, coords.into_iter().cycle().take(dim).collect());
        let n = 30;
        let df = serre_derivative(&f.expand(n), w as i64);
        let target = w + 2;
        let basis: Vec<QSeries> = (0..qlk_core::mlde::dim_modular_forms(target))
            .map(|i| {
                let mut c = vec![qi(0); qlk_core::mlde::dim_modular_forms(target)];
                c[i] = qi(1);
                ModularForm::new(target, c).expand(n)
            })
            .collect();
        let a: Vec<Vec<Q>> = (0..=n).map(|m| basis.iter().map(|b| b.coeffs[m].clone()).collect()).collect();
        let sol = solve(&a, &df.coeffs, basis.len());
        let closed = matches!(sol, Solution::Found { unique: true, .. });
        prop_assert!(closed);
    }

    #[test]
    fn qseries_ring_laws(
        a in prop::collection::vec(small_q(), 1..8),
        b in prop::collection::vec(small_q(), 1..8),
        alpha in small_q(),
    ) {
        let n = a.len().min(b.len());
        let x = QSeries::new(alpha.clone(), a[..n].to_vec());
        let y = QSeries::new(qi(0), b[..n].to_vec());
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        // q d/dq is a derivation
        let lhs = x.mul(&y).q_derivative();
        let rhs = x.q_derivative().mul(&y).add(&x.mul(&y.q_derivative())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

/// Associated variety upper bounds shrink (never grow) with `N`.
#[test]
fn krull_dim_monotone_in_truncation() {
    for k in [Level::integer(1), Level::from(q(-4, 3))] {
        let dims: Vec<i64> = [4, 6, 8, 10, 12].iter().map(|&n| variety_of_level(&k, n).unwrap().krull_dim).collect();
        assert!(dims.windows(2).all(|w| w[1] <= w[0]), "k = {k}: {dims:?}");
    }
}

#[test]
fn ramanujan_system() {
    let n = 60;
    let e2 = eisenstein(2, n).unwrap();
    let e4 = eisenstein(4, n).unwrap();
    let e6 = eisenstein(6, n).unwrap();
    let t = |s: QSeries, c: i64| s.scale(&q(1, c));
    assert_eq!(e2.q_derivative(), t(e2.mul(&e2).sub(&e4).unwrap(), 12));
    assert_eq!(e4.q_derivative(), t(e2.mul(&e4).sub(&e6).unwrap(), 3));
    assert_eq!(e6.q_derivative(), t(e2.mul(&e6).sub(&e4.mul(&e4)).unwrap(), 2));
}
