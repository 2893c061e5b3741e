//! Seeded random fixtures for the stocheff test suites.
//!
//! Everything is driven by [`ChaCha8Rng`] so a failing case can be replayed
//! from its seed. Probabilities are drawn on a common denominator, which keeps
//! them small and exact.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use stocheff::effectivity::{EffFn, Filter};
use stocheff::equiv::EffMorphism;
use stocheff::finspace::pushforward;
use stocheff::geometry::{GenKind, Generator};
use stocheff::kernels::Kernel;
use stocheff::logiclang::NeighborhoodModel;
use stocheff::rational::{one, rat, zero};
use stocheff::{FinSpace, MeasMap, Partition, Rational, SubProb, Subset};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A space named `prefix0`, `prefix1`, ...
pub fn named_space(prefix: &str, n: usize) -> FinSpace {
    FinSpace::new((0..n).map(|i| format!("{prefix}{i}"))).expect("n in 1..=64")
}

pub fn space(rng: &mut impl Rng, prefix: &str, min: usize, max: usize) -> FinSpace {
    named_space(prefix, rng.gen_range(min..=max))
}

/// `k/d` with `d ≤ max_denom`, uniformly over numerators `0..=d`.
pub fn unit_rational(rng: &mut impl Rng, max_denom: u32) -> Rational {
    let d = rng.gen_range(1..=max_denom) as i64;
    rat(rng.gen_range(0..=d), d)
}

/// Split `total` into `parts` nonnegative integers.
fn composition(rng: &mut impl Rng, total: i64, parts: usize) -> Vec<i64> {
    let mut cuts: Vec<i64> = (1..parts).map(|_| rng.gen_range(0..=total)).collect();
    cuts.push(0);
    cuts.push(total);
    cuts.sort_unstable();
    cuts.windows(2).map(|w| w[1] - w[0]).collect()
}

/// A subprobability with denominators dividing some `d ≤ max_denom`.
/// With `markov` the mass is exactly 1.
pub fn subprob(rng: &mut impl Rng, space: &FinSpace, max_denom: u32, markov: bool) -> SubProb {
    let d = rng.gen_range(1..=max_denom) as i64;
    let total = if markov { d } else { rng.gen_range(0..=d) };
    let weights = composition(rng, total, space.len())
        .into_iter()
        .map(|k| rat(k, d))
        .collect();
    SubProb::new(space, weights).expect("weights sum to at most 1")
}

pub fn kernel(rng: &mut impl Rng, dom: &FinSpace, cod: &FinSpace, max_denom: u32, markov: bool) -> Kernel {
    let rows = (0..dom.len())
        .map(|_| subprob(rng, cod, max_denom, markov))
        .collect();
    Kernel::new(dom, cod, rows).expect("rows over cod")
}

pub fn subset(rng: &mut impl Rng, space: &FinSpace) -> Subset {
    let bits = rng.gen_range(0..=space.full_set().bits());
    space.subset_from_bits(bits).expect("bits within the space")
}

pub fn map(rng: &mut impl Rng, dom: &FinSpace, cod: &FinSpace) -> MeasMap {
    let image = (0..dom.len()).map(|_| rng.gen_range(0..cod.len())).collect();
    MeasMap::new(dom, cod, image).expect("images within cod")
}

/// A surjection; requires `|cod| ≤ |dom|`.
pub fn surjection(rng: &mut impl Rng, dom: &FinSpace, cod: &FinSpace) -> MeasMap {
    assert!(cod.len() <= dom.len(), "no surjection onto a larger space");
    let mut image: Vec<usize> = (0..cod.len())
        .chain((cod.len()..dom.len()).map(|_| rng.gen_range(0..cod.len())))
        .collect();
    image.shuffle(rng);
    MeasMap::new(dom, cod, image).expect("images within cod")
}

pub fn bijection(rng: &mut impl Rng, dom: &FinSpace, cod: &FinSpace) -> MeasMap {
    assert_eq!(dom.len(), cod.len());
    surjection(rng, dom, cod)
}

pub fn partition(rng: &mut impl Rng, space: &FinSpace) -> Partition {
    let blocks = rng.gen_range(1..=space.len());
    let labels: Vec<usize> = (0..space.len()).map(|_| rng.gen_range(0..blocks)).collect();
    Partition::from_labels(space, &labels).expect("one label per state")
}

pub fn generator(rng: &mut impl Rng, space: &FinSpace, max_denom: u32, max_points: usize) -> Generator {
    let n = rng.gen_range(1..=max_points);
    let points = (0..n)
        .map(|_| subprob(rng, space, max_denom, false))
        .collect();
    let kind = if rng.gen_bool(0.5) {
        GenKind::Points
    } else {
        GenKind::Hull
    };
    Generator::new(kind, points).expect("at least one point")
}

/// A filter with up to `max_gens` generators; `0` generators gives the empty filter.
pub fn filter(rng: &mut impl Rng, space: &FinSpace, max_denom: u32, max_gens: usize) -> Filter {
    let n = rng.gen_range(0..=max_gens);
    let gens = (0..n).map(|_| generator(rng, space, max_denom, 3)).collect();
    Filter::new(space, gens).expect("generators over the space")
}

pub fn eff_fn(rng: &mut impl Rng, dom: &FinSpace, cod: &FinSpace, max_denom: u32, max_gens: usize) -> EffFn {
    let portfolio = (0..dom.len())
        .map(|_| filter(rng, cod, max_denom, max_gens))
        .collect();
    EffFn::new(dom, cod, portfolio).expect("one filter per state")
}

/// Some `μ` on `g.dom()` with `(𝕊g)(μ) = ν`; `g` must be onto.
pub fn preimage_measure(rng: &mut impl Rng, g: &MeasMap, nu: &SubProb) -> SubProb {
    let mut weights = vec![zero(); g.dom().len()];
    for u in 0..g.cod().len() {
        let fiber: Vec<usize> = (0..g.dom().len()).filter(|&t| g.apply(t) == u).collect();
        assert!(!fiber.is_empty(), "preimage_measure needs a surjection");
        let total = rng.gen_range(1..=3i64);
        for (t, c) in fiber.iter().zip(composition(rng, total, fiber.len())) {
            weights[*t] = nu.weight(u) * rat(c, total);
        }
    }
    SubProb::new(g.dom(), weights).expect("same mass as nu")
}

fn lift_generator(rng: &mut impl Rng, g: &MeasMap, gen: &Generator) -> Generator {
    let points = gen
        .points()
        .iter()
        .map(|p| preimage_measure(rng, g, p))
        .collect();
    Generator::new(gen.kind(), points).expect("same number of points")
}

/// An effectivity function `P` on `(f.dom(), g.dom())` such that
/// `(f, g): P → m` is a strong morphism. Both maps must be onto.
pub fn expand(rng: &mut impl Rng, m: &EffFn, f: &MeasMap, g: &MeasMap) -> EffFn {
    let portfolio = (0..f.dom().len())
        .map(|s| {
            let gens = m
                .portfolio(f.apply(s))
                .generators()
                .iter()
                .map(|gen| lift_generator(rng, g, gen))
                .collect();
            Filter::new(g.dom(), gens).expect("generators over g.dom()")
        })
        .collect();
    EffFn::new(f.dom(), g.dom(), portfolio).expect("one filter per state")
}

/// A strong morphism `(f, g): P → M` with `P` on at most `max_dom` states.
pub struct StrongMorphism {
    pub p: EffFn,
    pub target: EffFn,
    pub m: EffMorphism,
}

pub fn strong_morphism(rng: &mut impl Rng, max_dom: usize, max_cod: usize, max_denom: u32) -> StrongMorphism {
    let dom = space(rng, "s", 1, max_dom);
    let cod = space(rng, "t", 1, max_cod);
    let mdom = named_space("m", rng.gen_range(1..=dom.len()));
    let mcod = named_space("n", rng.gen_range(1..=cod.len()));
    let target = eff_fn(rng, &mdom, &mcod, max_denom, 2);
    let f = surjection(rng, &dom, &mdom);
    let g = surjection(rng, &cod, &mcod);
    let p = expand(rng, &target, &f, &g);
    StrongMorphism {
        p,
        target,
        m: EffMorphism::new(f, g),
    }
}

/// Kernels with `L(f(s)) = (𝕊g)(K(s))` for every `s`.
pub struct KernelMorphism {
    pub k: Kernel,
    pub l: Kernel,
    pub f: MeasMap,
    pub g: MeasMap,
}

pub fn kernel_morphism(rng: &mut impl Rng, max_states: usize, max_denom: u32) -> KernelMorphism {
    let kdom = space(rng, "s", 1, max_states);
    let kcod = space(rng, "t", 1, max_states);
    let ldom = space(rng, "u", 1, max_states);
    let lcod = named_space("v", rng.gen_range(1..=kcod.len()));
    let markov = rng.gen_bool(0.5);
    let l = kernel(rng, &ldom, &lcod, max_denom, markov);
    let f = map(rng, &kdom, &ldom);
    let g = surjection(rng, &kcod, &lcod);
    let rows = (0..kdom.len())
        .map(|s| preimage_measure(rng, &g, l.row(f.apply(s))))
        .collect();
    let k = Kernel::new(&kdom, &kcod, rows).expect("rows over kcod");
    KernelMorphism { k, l, f, g }
}

/// A subprobability different from `mu`, moving or adding a little mass.
pub fn perturb(rng: &mut impl Rng, mu: &SubProb) -> SubProb {
    let n = mu.space().len();
    let mut weights = mu.weights().to_vec();
    let delta = rat(1, rng.gen_range(2..=16));
    if let Some(from) = (0..n).find(|&i| weights[i] > zero()) {
        let step = delta.min(weights[from].clone());
        weights[from] -= &step;
        if n > 1 && rng.gen_bool(0.5) {
            let to = (from + rng.gen_range(1..n)) % n;
            weights[to] += step;
        }
    } else {
        weights[rng.gen_range(0..n)] = delta;
    }
    debug_assert!(weights.iter().fold(zero(), |a, w| a + w) <= one());
    SubProb::new(mu.space(), weights).expect("mass stays within [0, 1]")
}

pub fn with_row(k: &Kernel, state: usize, row: SubProb) -> Kernel {
    let mut rows = k.rows().to_vec();
    rows[state] = row;
    Kernel::new(k.dom(), k.cod(), rows).expect("row over k.cod()")
}

/// `(𝕊g)` applied rowwise, as a sanity oracle for morphism fixtures.
pub fn pushed_rows(g: &MeasMap, k: &Kernel) -> Vec<SubProb> {
    k.rows()
        .iter()
        .map(|r| pushforward(g, r).expect("g.dom() = k.cod()"))
        .collect()
}

/// A neighborhood model with the given primitive games; each state gets up
/// to `max_gens` random generators, possibly none.
pub fn nbhd_model(rng: &mut impl Rng, space: &FinSpace, games: &[&str], max_gens: usize) -> NeighborhoodModel {
    let table = games
        .iter()
        .map(|name| {
            let rows = (0..space.len())
                .map(|_| {
                    let n = rng.gen_range(0..=max_gens);
                    (0..n).map(|_| subset(rng, space)).collect()
                })
                .collect();
            (name.to_string(), rows)
        })
        .collect::<BTreeMap<_, _>>();
    NeighborhoodModel::new(space, table).expect("rows match the space")
}
