//! Property tests over random targets, chains and braid words.

use std::collections::{BTreeMap, BTreeSet};

use cqsres::cfrac::Fraction;
use cqsres::chain::{WahlResolution, WahlSingularity};
use cqsres::{
    apply_move, apply_word, arrows_from_homs, blow_down, check_braid_relations, check_q_abc, components, coprime_pairs,
    curve_from_delta, discrepancies, enumerate_c, hj_dual, hj_eval, hj_expand, hom_dims, k_dot_gamma, left_antiflip,
    parse_wahl, riemenschneider_zero, right_antiflip, signed_delta, wahl_cf, wahl_cf_dual, BigInt, BraidWord,
    Direction, Move, Rational, Relation,
};
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;

type Res = WahlResolution<BigInt>;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn coprime(max: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max).prop_flat_map(|d| (Just(d), 1..d)).prop_filter("coprime", |(d, o)| d.gcd(o) == 1)
}

fn wahl(max_n: i64) -> impl Strategy<Value = (i64, i64)> {
    (2..=max_n).prop_flat_map(|n| (Just(n), 1..n)).prop_filter("coprime", |(n, a)| n.gcd(a) == 1)
}

fn sing(n: i64, a: i64) -> WahlSingularity<BigInt> {
    if n == 1 {
        WahlSingularity::smooth()
    } else {
        WahlSingularity::new(big(n), big(a)).unwrap()
    }
}

/// All M-resolutions with Δ <= 40, computed once.
fn m_resolutions() -> &'static [Res] {
    use std::sync::OnceLock;
    static CELL: OnceLock<Vec<Res>> = OnceLock::new();
    CELL.get_or_init(|| {
        coprime_pairs(40)
            .into_iter()
            .flat_map(|(d, o)| {
                let f = Fraction::new(BigInt::from(d), BigInt::from(o)).unwrap();
                components(&f).unwrap().into_iter().map(|c| c.m_res)
            })
            .collect()
    })
}

/// A random Wahl resolution: an M-resolution moved by a random word, skipping
/// undefined steps.
fn random_resolution() -> impl Strategy<Value = Res> {
    let count = m_resolutions().len();
    (0..count, prop::collection::vec((any::<bool>(), 0usize..64), 0..8)).prop_map(|(idx, raw)| {
        let mut w = m_resolutions()[idx].clone();
        for (right, i) in raw {
            let index = i % w.r().max(1) + 1;
            let mv = if right { Move::right(index) } else { Move::left(index) };
            if w.r() > 0 {
                if let Ok(next) = apply_move(&w, mv) {
                    w = next;
                }
            }
        }
        w
    })
}

fn nonempty_resolution() -> impl Strategy<Value = Res> {
    random_resolution().prop_filter("has curves", |w| w.r() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn expansion_round_trip((d, o) in coprime(300)) {
        let f = Fraction::<i64>::from_i64(d, o).unwrap();
        prop_assert_eq!(hj_eval(&hj_expand(&f)), (d, o));
        prop_assert!(hj_expand(&f).iter().all(|&x| x >= 2));
    }

    #[test]
    fn dual_is_an_involution((d, o) in coprime(300)) {
        let f = Fraction::<i64>::from_i64(d, o).unwrap();
        let dual = Fraction::<i64>::from_i64(d, d - o).unwrap();
        prop_assert_eq!(hj_dual(&f), hj_expand(&dual));
        prop_assert_eq!(hj_dual(&dual), hj_expand(&f));
        prop_assert!(riemenschneider_zero(&f));
    }

    #[test]
    fn blow_down_is_idempotent(s in prop::collection::vec(-1i64..6, 0..10)) {
        let once = blow_down(&s);
        prop_assert!(!once.contains(&1));
        prop_assert_eq!(blow_down(&once), once);
    }

    #[test]
    fn wahl_chains((n, a) in wahl(60)) {
        let w = WahlSingularity::<i64>::from_i64(n, a).unwrap();
        let chain = wahl_cf(&w).unwrap();
        prop_assert_eq!(parse_wahl(&chain), Some(w.clone()));
        let f = Fraction::<i64>::from_i64(n * n, n * a - 1).unwrap();
        prop_assert_eq!(&chain, &hj_expand(&f));
        let g = Fraction::<i64>::from_i64(n * n, n * n - n * a + 1).unwrap();
        prop_assert_eq!(wahl_cf_dual(&w).unwrap(), hj_expand(&g));
        let d = discrepancies(&chain);
        prop_assert_eq!(d[0], Rational::new(a - n, n));
        prop_assert_eq!(d[d.len() - 1], Rational::new(-a, n));
    }

    #[test]
    fn closed_form_matches_linear_solve((nl, al) in wahl(25), (nr, ar) in wahl(25), c in 1i64..6, ls: bool, rs: bool) {
        let (nl, al) = if ls { (1, 1) } else { (nl, al) };
        let (nr, ar) = if rs { (1, 1) } else { (nr, ar) };
        let (l, r) = (sing(nl, al), sing(nr, ar));
        let solved = k_dot_gamma(&l, &big(c), &r);
        let s = signed_delta(&l, &big(c), &r);
        prop_assert_eq!(solved * Rational::from_integer(big(nl * nr)), Rational::from_integer(s.clone()));
        prop_assert_eq!(curve_from_delta(&l, &r, &s).unwrap(), big(c));
    }

    #[test]
    fn chain_text_round_trips(w in random_resolution()) {
        prop_assert_eq!(Res::parse(&w.to_string()).unwrap(), w.clone());
        prop_assert_eq!(Res::parse(&w.compact()).unwrap().contracts_to().unwrap(), w.target().clone());
    }

    #[test]
    fn antiflips_are_inverse(w in nonempty_resolution(), i in 0usize..64) {
        let i = i % w.r() + 1;
        if let Ok(x) = right_antiflip(&w, i) {
            prop_assert_eq!(left_antiflip(&x, i).unwrap(), w.clone());
        }
        if let Ok(x) = left_antiflip(&w, i) {
            prop_assert_eq!(right_antiflip(&x, i).unwrap(), w.clone());
        }
    }

    #[test]
    fn antiflip_invariants(w in nonempty_resolution(), i in 0usize..64, right: bool) {
        let i = i % w.r() + 1;
        let mv = if right { Move::right(i) } else { Move::left(i) };
        let Ok(x) = apply_move(&w, mv) else { return Ok(()) };
        prop_assert_eq!(x.target(), w.target());
        prop_assert_eq!(x.contracts_to().unwrap(), w.target().clone());
        // δ'_i = δ_i across the flipped curve
        prop_assert_eq!(x.deltas()[i - 1].clone(), w.deltas()[i - 1].clone());
        // K·Γ_{i-1} = K'·(Γ'_{i-1} + Γ'_i) for the right antiflip, mirrored for the left one
        let k = |v: &Res, j: usize| v.k_dot_gamma(j).unwrap();
        if right && i >= 2 {
            prop_assert_eq!(k(&w, i - 1), k(&x, i - 1) + k(&x, i));
        }
        if !right && i < w.r() {
            prop_assert_eq!(k(&w, i + 1), k(&x, i + 1) + k(&x, i));
        }
        // a K-trivial curve keeps its pair of singularities, swapped
        if w.deltas()[i - 1] == big(0) {
            let mut before: Vec<_> = w.sings()[i - 1..=i].iter().map(|p| p.n().clone()).collect();
            let mut after: Vec<_> = x.sings()[i - 1..=i].iter().map(|p| p.n().clone()).collect();
            before.sort();
            after.sort();
            prop_assert_eq!(before, after);
        }
    }

    #[test]
    fn flipping_negative_curves_lowers_indices(w in nonempty_resolution(), i in 0usize..64) {
        let i = i % w.r() + 1;
        if !w.delta_signed(i).unwrap().is_negative() {
            return Ok(());
        }
        let old: Vec<BigInt> = w.sings()[i - 1..=i].iter().map(|p| p.n().clone()).collect();
        let lowers = [Direction::Right, Direction::Left].into_iter().any(|dir| {
            let Ok(x) = apply_move(&w, Move { dir, index: i }) else { return false };
            let new: Vec<BigInt> = x.sings()[i - 1..=i].iter().map(|p| p.n().clone()).collect();
            let (mut a, mut b) = (old.clone(), new);
            a.sort();
            b.sort();
            b.iter().zip(&a).all(|(y, x)| y <= x) && b != a
        });
        prop_assert!(lowers, "{} at {}", w, i);
    }

    #[test]
    fn braid_relations_hold(w in nonempty_resolution(), i in 0usize..64, j in 0usize..64) {
        let (i, j) = (i % w.r() + 1, j % w.r() + 1);
        prop_assert_ne!(check_braid_relations(&w, i, j), Relation::Fails);
    }

    #[test]
    fn words_and_inverses_cancel(w in nonempty_resolution(), raw in prop::collection::vec((any::<bool>(), 0usize..64), 0..6)) {
        let word = BraidWord(raw.into_iter().map(|(r, i)| {
            let index = i % w.r() + 1;
            if r { Move::right(index) } else { Move::left(index) }
        }).collect());
        if let Ok(x) = apply_word(&w, &word) {
            prop_assert_eq!(apply_word(&x, &word.inverse()).unwrap(), w.clone());
        }
        prop_assert_eq!(word.to_string().parse::<BraidWord>().unwrap(), word);
    }

    #[test]
    fn q_abc_is_symmetric(a in 1i64..=12, b in 1i64..=12, c in 0i64..=12) {
        prop_assert_eq!(check_q_abc(&a, &b, &c).is_some(), check_q_abc(&b, &a, &c).is_some());
    }
}

/// `H = A + A² + ...`, counted by dynamic programming over paths.
fn path_counts(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut paths = vec![vec![big(0); n]; n];
    for j in 0..n {
        // paths[i][j] for all i > j, in increasing i
        for i in j + 1..n {
            let mut total = a[i][j].clone();
            for k in j + 1..i {
                total += &a[i][k] * &paths[k][j];
            }
            paths[i][j] = total;
        }
    }
    paths
}

#[test]
fn quiver_properties_on_all_components() {
    for (d, o) in coprime_pairs(60) {
        let f = Fraction::new(BigInt::from(d), BigInt::from(o)).unwrap();
        let reports = components(&f).unwrap();
        let ns: BTreeSet<String> = reports.iter().map(|c| c.n_res.to_string()).collect();
        let ms: BTreeSet<String> = reports.iter().map(|c| c.m_res.to_string()).collect();
        assert_eq!(ns.len(), reports.len(), "{d}/{o}: repeated N-resolution");
        assert_eq!(ms.len(), reports.len(), "{d}/{o}: repeated M-resolution");
        for c in &reports {
            let q = &c.quiver;
            assert_eq!(path_counts(&q.arrows), q.hom, "{d}/{o} {}", c.n_res);
            assert_eq!(arrows_from_homs(&q.hom).unwrap(), q.arrows);
            let trivial = q.hom.iter().flatten().all(|h| *h == big(0));
            assert_eq!(q.is_connected(), !trivial || q.len() == 1, "{d}/{o} {}", c.n_res);
            let all_zero = c.m_res.deltas().iter().all(|x| *x == big(0));
            assert_eq!(q.is_semisimple(), all_zero, "{d}/{o} {}", c.n_res);
            if all_zero {
                assert_eq!(c.m_res, c.n_res);
                assert!(cqsres::parse_t(&f).is_some(), "{d}/{o} is not a T-singularity");
            }
            for i in 1..q.len() {
                assert_eq!(q.hom[i][i - 1], c.n_res.deltas()[i - 1]);
            }
            assert_eq!(hom_dims(&c.n_res).unwrap(), *q);
        }
    }
}

#[test]
fn enumerate_c_matches_brute_force() {
    // every chain [2|1]-(x)-[2|1] with a positive signed invariant
    let p = sing(2, 1);
    let mut want = BTreeSet::new();
    for x in 1..60 {
        let s = signed_delta(&p, &big(x), &p);
        if s > big(0) && s <= big(20) {
            let w = WahlResolution::from_chain(vec![p.clone(), p.clone()], vec![big(x)]);
            if w.map(|w| !w.target().is_smooth()).unwrap_or(false) {
                want.insert(s);
            }
        }
    }
    assert_eq!(enumerate_c(&big(2), &big(2), &big(20)), want);
    assert!(want.iter().all(|c| c.is_even()));
}

#[test]
fn enumerate_c_matches_brute_force_on_mixed_indices() {
    for a in 1i64..=5 {
        for b in 1i64..=5 {
            let mut want = BTreeSet::new();
            let lefts: Vec<_> = (1..a.max(2)).filter(|e| a == 1 || e.gcd(&a) == 1).map(|e| sing(a, e)).collect();
            let rights: Vec<_> = (1..b.max(2)).filter(|e| b == 1 || e.gcd(&b) == 1).map(|e| sing(b, e)).collect();
            for l in &lefts {
                for r in &rights {
                    for x in 1..40 {
                        let s = signed_delta(l, &big(x), r);
                        if s <= big(0) || s > big(15) {
                            continue;
                        }
                        if let Ok(w) = WahlResolution::from_chain(vec![l.clone(), r.clone()], vec![big(x)]) {
                            if !w.target().is_smooth() {
                                want.insert(s);
                            }
                        }
                    }
                }
            }
            assert_eq!(enumerate_c(&big(a), &big(b), &big(15)), want, "a = {a}, b = {b}");
        }
    }
}

#[test]
fn mn_schedule_reversed_lowers_indices_at_each_flip() {
    for (d, o) in coprime_pairs(40) {
        let f = Fraction::new(BigInt::from(d), BigInt::from(o)).unwrap();
        for c in components(&f).unwrap() {
            let word = cqsres::mn_schedule(c.m_res.r()).inverse();
            let mut w = c.n_res.clone();
            for mv in word.0 {
                let next = apply_move(&w, mv).unwrap();
                let i = mv.index;
                if w.delta_signed(i).unwrap() < big(0) {
                    let sum = |v: &Res| v.sings()[i - 1].n() + v.sings()[i].n();
                    let max = |v: &Res| v.sings()[i - 1].n().max(v.sings()[i].n()).clone();
                    assert!(sum(&next) < sum(&w) && max(&next) <= max(&w), "{d}/{o}: {w} {mv}");
                }
                w = next;
            }
            assert_eq!(w, c.m_res);
        }
    }
}

#[test]
fn component_counts_by_length() {
    // number of components grows with the length of the dual expansion
    let mut by_len: BTreeMap<usize, usize> = BTreeMap::new();
    for (d, o) in coprime_pairs(30) {
        let f = Fraction::<i64>::from_i64(d as i64, o as i64).unwrap();
        let count = cqsres::enumerate_zero_fractions(&f).len();
        let len = hj_dual(&f).len();
        let e = by_len.entry(len).or_default();
        *e = (*e).max(count);
    }
    // at most the Catalan number C_{s-1} components for length s
    let catalan = |n: usize| (0..n).fold(1u128, |c, k| c * 2 * (2 * k as u128 + 1) / (k as u128 + 2));
    for (len, max) in by_len {
        assert!(max as u128 <= catalan(len - 1), "length {len}: {max}");
    }
}
