use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::Rng;
use stocheff::effectivity::lift_kernel;
use stocheff::finspace::measure_of;
use stocheff::logiclang::{
    eval_formula, eval_game, parse_formula, parse_game, Formula, GameTerm, NeighborhoodModel, StochModel,
};
use stocheff::rational::rat;
use stocheff::{FinSpace, Subset};
use stocheff_testkit as tk;

fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::Top),
        prop::sample::select(vec!["p", "q", "r_1"]).prop_map(|n| Formula::Atom(n.to_string())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::And(Box::new(a), Box::new(b))),
            ((1i64..=8), inner).prop_flat_map(|(d, f)| {
                (0..=d).prop_map(move |n| Formula::Dia(rat(n, d), Box::new(f.clone())))
            }),
        ]
    })
}

fn game() -> impl Strategy<Value = GameTerm> {
    let leaf = prop::sample::select(vec!["a", "b", "c"]).prop_map(|n| GameTerm::Prim(n.to_string()));
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GameTerm::Union(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| GameTerm::Seq(Box::new(a), Box::new(b))),
            inner.clone().prop_map(|g| GameTerm::Star(Box::new(g))),
            inner.prop_map(|g| GameTerm::Dual(Box::new(g))),
        ]
    })
}

fn prim(name: &str) -> Box<GameTerm> {
    Box::new(GameTerm::Prim(name.into()))
}

/// `N̆_prim(A)` straight from the generator lists.
fn prim_oracle(m: &NeighborhoodModel, name: &str, a: &Subset) -> Subset {
    let rows = &m.games()[name];
    let bits = (0..m.space().len())
        .filter(|&s| rows[s].iter().any(|g| g.is_subset_of(a).unwrap()))
        .fold(0u64, |acc, s| acc | 1 << s);
    m.space().subset_from_bits(bits).unwrap()
}

fn model(seed: u64, n: usize) -> NeighborhoodModel {
    let mut rng = tk::rng(seed);
    tk::nbhd_model(&mut rng, &tk::named_space("s", n), &["a", "b", "c"], 3)
}

proptest! {
    #[test]
    fn formulas_round_trip_through_text(f in formula()) {
        let text = f.to_string();
        let parsed = parse_formula(&text).unwrap();
        prop_assert_eq!(&parsed, &f);
        prop_assert_eq!(parsed.to_string(), text);
    }

    #[test]
    fn games_round_trip_through_text(g in game()) {
        let text = g.to_string();
        let parsed = parse_game(&text).unwrap();
        prop_assert_eq!(&parsed, &g);
        prop_assert_eq!(parsed.to_string(), text);
    }

    #[test]
    fn kernel_models_reduce_to_stochastic_kripke_semantics(seed in any::<u64>(), f in formula()) {
        let mut rng = tk::rng(seed);
        let s = tk::space(&mut rng, "s", 1, 4);
        let markov = rng.gen_bool(0.5);
        let k = tk::kernel(&mut rng, &s, &s, 8, markov);
        let val: BTreeMap<String, Subset> = ["p", "q", "r_1"]
            .iter()
            .map(|n| (n.to_string(), tk::subset(&mut rng, &s)))
            .collect();
        let m = StochModel::new(lift_kernel(&k), val.clone()).unwrap();
        let out = eval_formula(&m, &f).unwrap();
        let expected = kripke(&k, &val, &f, &s);
        prop_assert_eq!(out, expected);
    }

    #[test]
    fn diamond_is_monotone_in_the_valuation(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let s = tk::space(&mut rng, "s", 1, 4);
        let p = tk::eff_fn(&mut rng, &s, &s, 8, 2);
        let small = tk::subset(&mut rng, &s);
        let large = small.union(&tk::subset(&mut rng, &s)).unwrap();
        let phi = parse_formula(&format!("dia[{}] p", stocheff::rational::format_rational(&tk::unit_rational(&mut rng, 8)))).unwrap();
        let eval = |e: &Subset| {
            let m = StochModel::new(p.clone(), BTreeMap::from([("p".to_string(), e.clone())])).unwrap();
            eval_formula(&m, &phi).unwrap()
        };
        prop_assert!(eval(&small).is_subset_of(&eval(&large)).unwrap());
    }

    #[test]
    fn game_laws_hold(seed in any::<u64>(), g in game(), h in game()) {
        let m = model(seed, 3);
        let k = GameTerm::Prim("c".into());
        for a in m.space().all_subsets() {
            let ev = |t: &GameTerm| eval_game(&m, t, &a).unwrap();
            let union = GameTerm::Union(Box::new(g.clone()), Box::new(h.clone()));
            prop_assert_eq!(ev(&union), ev(&g).union(&ev(&h)).unwrap());
            let left = GameTerm::Seq(Box::new(GameTerm::Seq(Box::new(g.clone()), Box::new(h.clone()))), Box::new(k.clone()));
            let right = GameTerm::Seq(Box::new(g.clone()), Box::new(GameTerm::Seq(Box::new(h.clone()), Box::new(k.clone()))));
            prop_assert_eq!(ev(&left), ev(&right));
            let inner = eval_game(&m, &h, &a).unwrap();
            prop_assert_eq!(ev(&GameTerm::Seq(Box::new(g.clone()), Box::new(h.clone()))), eval_game(&m, &g, &inner).unwrap());
            let dd = GameTerm::Dual(Box::new(GameTerm::Dual(Box::new(g.clone()))));
            prop_assert_eq!(ev(&dd), ev(&g));
        }
    }
}

fn kripke(k: &stocheff::kernels::Kernel, val: &BTreeMap<String, Subset>, f: &Formula, s: &FinSpace) -> Subset {
    match f {
        Formula::Top => s.full_set(),
        Formula::Atom(n) => val[n].clone(),
        Formula::And(a, b) => kripke(k, val, a, s).intersection(&kripke(k, val, b, s)).unwrap(),
        Formula::Dia(q, body) => {
            let e = kripke(k, val, body, s);
            let bits = (0..s.len())
                .filter(|&x| measure_of(k.row(x), &e).unwrap() > *q)
                .fold(0u64, |acc, x| acc | 1 << x);
            s.subset_from_bits(bits).unwrap()
        }
    }
}

#[test]
fn union_law_is_exhaustive_on_primitives() {
    for seed in 0..50 {
        let m = model(seed, 3);
        for a in m.space().all_subsets() {
            let both = eval_game(&m, &GameTerm::Union(prim("a"), prim("b")), &a).unwrap();
            let expected = prim_oracle(&m, "a", &a).union(&prim_oracle(&m, "b", &a)).unwrap();
            assert_eq!(both, expected);
        }
    }
}

#[test]
fn star_is_the_union_of_all_iterates() {
    for seed in 0..50 {
        let m = model(seed, 3);
        let steps = 1usize << m.space().len();
        for name in ["a", "b", "c"] {
            for a in m.space().all_subsets() {
                let mut acc = a.clone();
                let mut cur = a.clone();
                for _ in 0..=steps {
                    cur = prim_oracle(&m, name, &cur);
                    acc = acc.union(&cur).unwrap();
                }
                assert_eq!(eval_game(&m, &GameTerm::Star(prim(name)), &a).unwrap(), acc);
            }
        }
    }
}

#[test]
fn dual_is_the_opponent_operator() {
    let m = model(3, 3);
    for a in m.space().all_subsets() {
        let dual = eval_game(&m, &GameTerm::Dual(prim("a")), &a).unwrap();
        let expected = prim_oracle(&m, "a", &a.complement()).complement();
        assert_eq!(dual, expected);
    }
}
