use proptest::prelude::*;
use rand::Rng;
use stocheff::effectivity::lift_kernel;
use stocheff::equiv::{is_morphism, EffMorphism};
use stocheff::kernels::{aggregate_kernel, is_kernel_morphism, kleisli, Kernel};
use stocheff::rational::rat;
use stocheff_testkit as tk;

/// `(K∗L)(s)({u})` by the defining double sum.
fn kleisli_entry(k: &Kernel, l: &Kernel, s: usize, u: usize) -> stocheff::Rational {
    (0..k.cod().len()).fold(rat(0, 1), |acc, t| acc + k.row(s).weight(t) * l.row(t).weight(u))
}

proptest! {
    #[test]
    fn kleisli_is_associative_with_identities(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let spaces: Vec<_> = ["s", "t", "u", "v"].iter().map(|p| tk::space(&mut rng, p, 1, 4)).collect();
        let markov = rng.gen_bool(0.5);
        let k = tk::kernel(&mut rng, &spaces[0], &spaces[1], 8, markov);
        let l = tk::kernel(&mut rng, &spaces[1], &spaces[2], 8, markov);
        let m = tk::kernel(&mut rng, &spaces[2], &spaces[3], 8, markov);
        let kl = kleisli(&k, &l).unwrap();
        for s in 0..spaces[0].len() {
            for u in 0..spaces[2].len() {
                prop_assert_eq!(kl.row(s).weight(u), &kleisli_entry(&k, &l, s, u));
            }
        }
        prop_assert_eq!(kleisli(&kl, &m).unwrap(), kleisli(&k, &kleisli(&l, &m).unwrap()).unwrap());
        prop_assert_eq!(&kleisli(&Kernel::identity(&spaces[0]), &k).unwrap(), &k);
        prop_assert_eq!(&kleisli(&k, &Kernel::identity(&spaces[1])).unwrap(), &k);
    }

    #[test]
    fn kernel_morphisms_lift_to_morphisms(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let km = tk::kernel_morphism(&mut rng, 4, 8);
        prop_assert!(is_kernel_morphism(&km.f, &km.g, &km.k, &km.l).unwrap());
        let m = EffMorphism::new(km.f.clone(), km.g.clone());
        prop_assert!(is_morphism(&lift_kernel(&km.k), &lift_kernel(&km.l), &m).unwrap());

        let s = rng.gen_range(0..km.k.dom().len());
        let target = km.f.apply(s);
        let bad = tk::with_row(&km.l, target, tk::perturb(&mut rng, km.l.row(target)));
        prop_assert!(!is_kernel_morphism(&km.f, &km.g, &km.k, &bad).unwrap());
        prop_assert!(!is_morphism(&lift_kernel(&km.k), &lift_kernel(&bad), &m).unwrap());
    }

    #[test]
    fn aggregation_reconstructs_the_target(seed in any::<u64>()) {
        let mut rng = tk::rng(seed);
        let km = tk::kernel_morphism(&mut rng, 4, 8);
        let agg = aggregate_kernel(&km.f, &km.g, &km.k).unwrap().expect("fibers agree");
        prop_assert!(is_kernel_morphism(&km.f, &km.g, &km.k, &agg).unwrap());
        for s in 0..km.k.dom().len() {
            prop_assert_eq!(agg.row(km.f.apply(s)), km.l.row(km.f.apply(s)));
        }
    }
}
