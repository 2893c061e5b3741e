//! Morphisms, congruences, quotients, and logical vs. behavioral equivalence.
//!
//! On finite power-set spaces a measurable map is final iff it is surjective,
//! and for surjective `f` the product map `f × id_[0,1]` is final as well,
//! because measurable subsets of `S × [0,1]` with finite `S` are finite unions
//! of `{s} × B` with `B` Borel. Every equivalence relation on a finite space
//! is tame for the same reason. So "strong" below means both maps are onto,
//! and no separate tameness condition appears anywhere in this module.

use crate::effectivity::{profile, EffFn, Filter, ProfileRel};
use crate::error::{Error, Result};
use crate::finspace::{kernel_of_map, FinSpace, MeasMap, Partition};
use crate::geometry::{generator_subset, map_generator};

/// `V g`: the image portfolio, generated by the direct images of the generators.
pub fn apply_vau(g: &MeasMap, filter: &Filter) -> Result<Filter> {
    g.dom().ensure_same(filter.space())?;
    let generators = filter
        .generators()
        .iter()
        .map(|gen| map_generator(g, gen))
        .collect::<Result<Vec<_>>>()?;
    Filter::new(g.cod(), generators)
}

/// `filter(small) ⊆ filter(large)`: every generator of `small` contains one of `large`.
fn dominated(small: &Filter, large: &Filter) -> Result<bool> {
    for g in small.generators() {
        let mut found = false;
        for h in large.generators() {
            if generator_subset(h, g)? {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn filters_equal(a: &Filter, b: &Filter) -> Result<bool> {
    a.space().ensure_same(b.space())?;
    Ok(dominated(a, b)? && dominated(b, a)?)
}

/// `(f, g): P → Q` with `f` on the domain side and `g` on the codomain side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EffMorphism {
    pub f: MeasMap,
    pub g: MeasMap,
}

impl EffMorphism {
    pub fn new(f: MeasMap, g: MeasMap) -> Self {
        EffMorphism { f, g }
    }

    pub fn identity(p: &EffFn) -> Self {
        EffMorphism {
            f: MeasMap::identity(p.dom()),
            g: MeasMap::identity(p.cod()),
        }
    }

    pub fn inverse(&self) -> Option<EffMorphism> {
        Some(EffMorphism {
            f: self.f.inverse()?,
            g: self.g.inverse()?,
        })
    }

    fn check_spaces(&self, p: &EffFn, q: &EffFn) -> Result<()> {
        self.f.dom().ensure_same(p.dom())?;
        self.f.cod().ensure_same(q.dom())?;
        self.g.dom().ensure_same(p.cod())?;
        self.g.cod().ensure_same(q.cod())
    }
}

/// The first state `s` at which `Q(f(s)) ≠ (V g)(P(s))`, if any.
pub fn morphism_violation(p: &EffFn, q: &EffFn, m: &EffMorphism) -> Result<Option<usize>> {
    m.check_spaces(p, q)?;
    for s in 0..p.dom().len() {
        let pushed = apply_vau(&m.g, p.portfolio(s))?;
        if !filters_equal(q.portfolio(m.f.apply(s)), &pushed)? {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

pub fn is_morphism(p: &EffFn, q: &EffFn, m: &EffMorphism) -> Result<bool> {
    Ok(morphism_violation(p, q, m)?.is_none())
}

/// Both maps surjective, which is finality on finite power-set spaces.
pub fn is_strong(m: &EffMorphism) -> bool {
    m.f.is_surjective() && m.g.is_surjective()
}

/// Bijective maps forming a morphism in both directions.
pub fn is_isomorphism(p: &EffFn, q: &EffFn, m: &EffMorphism) -> Result<bool> {
    let Some(inv) = m.inverse() else {
        return Ok(false);
    };
    Ok(is_morphism(p, q, m)? && is_morphism(q, p, &inv)?)
}

/// The threshold-level morphism condition: for every event `B` over `Q.cod`
/// and `rel ∈ {>, ≥}`, the profile of `Q` at `B` pulled back along `f` equals
/// the profile of `P` at `g⁻¹(B)`.
pub fn is_profile_morphism(p: &EffFn, q: &EffFn, m: &EffMorphism) -> Result<bool> {
    m.check_spaces(p, q)?;
    for event in q.cod().all_subsets() {
        let pulled = m.g.preimage(&event)?;
        for rel in [ProfileRel::Gt, ProfileRel::Ge] {
            let qp = profile(q, &event, rel)?;
            let pp = profile(p, &pulled, rel)?;
            for s in 0..p.dom().len() {
                if qp.critical[m.f.apply(s)] != pp.critical[s] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A pair of equivalences on the domain and the codomain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Congruence {
    pub alpha: Partition,
    pub beta: Partition,
}

impl Congruence {
    pub fn new(alpha: Partition, beta: Partition) -> Self {
        Congruence { alpha, beta }
    }

    pub fn discrete(p: &EffFn) -> Self {
        Congruence {
            alpha: Partition::discrete(p.dom()),
            beta: Partition::discrete(p.cod()),
        }
    }

    fn check_spaces(&self, p: &EffFn) -> Result<()> {
        self.alpha.space().ensure_same(p.dom())?;
        self.beta.space().ensure_same(p.cod())
    }
}

/// Two `α`-related states whose portfolios differ after pushing along `f_β`.
pub fn congruence_violation(p: &EffFn, c: &Congruence) -> Result<Option<(usize, usize)>> {
    c.check_spaces(p)?;
    let fb = c.beta.factor_map();
    let pushed = p
        .portfolios()
        .iter()
        .map(|f| apply_vau(&fb, f))
        .collect::<Result<Vec<_>>>()?;
    for block in c.alpha.blocks() {
        let mut members = block.members();
        let rep = members.next().expect("blocks are nonempty");
        for s in members {
            if !filters_equal(&pushed[rep], &pushed[s])? {
                return Ok(Some((rep, s)));
            }
        }
    }
    Ok(None)
}

pub fn is_congruence(p: &EffFn, c: &Congruence) -> Result<bool> {
    Ok(congruence_violation(p, c)?.is_none())
}

/// `P/c` on `(S/α, T/β)`, with `[s] ↦ (V f_β)(P(s))`.
pub fn quotient(p: &EffFn, c: &Congruence) -> Result<EffFn> {
    if let Some((s, t)) = congruence_violation(p, c)? {
        return Err(Error::NotACongruence(
            p.dom().name(s).to_string(),
            p.dom().name(t).to_string(),
        ));
    }
    let fb = c.beta.factor_map();
    let portfolio = c
        .alpha
        .blocks()
        .iter()
        .map(|block| {
            let rep = block.members().next().expect("blocks are nonempty");
            apply_vau(&fb, p.portfolio(rep))
        })
        .collect::<Result<Vec<_>>>()?;
    EffFn::new(&c.alpha.factor_space(), fb.cod(), portfolio)
}

fn ensure_strong_morphism(p: &EffFn, q: &EffFn, m: &EffMorphism) -> Result<()> {
    if let Some(s) = morphism_violation(p, q, m)? {
        return Err(Error::NotAMorphism(p.dom().name(s).to_string()));
    }
    if !m.f.is_surjective() {
        return Err(Error::NotStrong("domain map is not onto".into()));
    }
    if !m.g.is_surjective() {
        return Err(Error::NotStrong("codomain map is not onto".into()));
    }
    Ok(())
}

/// `(Kern f, Kern g)` for a strong morphism `(f, g): P → Q`.
pub fn kernel_congruence(p: &EffFn, q: &EffFn, m: &EffMorphism) -> Result<Congruence> {
    ensure_strong_morphism(p, q, m)?;
    Ok(Congruence {
        alpha: kernel_of_map(&m.f),
        beta: kernel_of_map(&m.g),
    })
}

/// A co-span `P → M ← Q` of strong morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cospan {
    pub mediator: EffFn,
    pub left: EffMorphism,
    pub right: EffMorphism,
}

/// Congruences for `P` and `Q` with an isomorphism `P/left ≅ Q/right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalWitness {
    pub left: Congruence,
    pub right: Congruence,
    pub iso: EffMorphism,
}

/// Turns a logical-equivalence witness into a behavioral one, mediated by `Q/cQ`.
pub fn cospan_from_logical(
    p: &EffFn,
    q: &EffFn,
    cp: &Congruence,
    cq: &Congruence,
    iso: &EffMorphism,
) -> Result<Cospan> {
    let qp = quotient(p, cp)?;
    let qq = quotient(q, cq)?;
    iso.check_spaces(&qp, &qq)
        .map_err(|e| Error::InvalidIsomorphism(e.to_string()))?;
    if !is_isomorphism(&qp, &qq, iso)? {
        return Err(Error::InvalidIsomorphism(
            "maps are not bijective morphisms in both directions".into(),
        ));
    }
    let left = EffMorphism {
        f: cp.alpha.factor_map().then(&iso.f)?,
        g: cp.beta.factor_map().then(&iso.g)?,
    };
    let right = EffMorphism {
        f: cq.alpha.factor_map(),
        g: cq.beta.factor_map(),
    };
    Ok(Cospan {
        mediator: qq,
        left,
        right,
    })
}

/// Maps each fiber of `left` to the fiber of `right` over the same point.
fn match_fibers(left: &MeasMap, right: &MeasMap) -> Result<MeasMap> {
    let (kl, kr) = (kernel_of_map(left), kernel_of_map(right));
    let image = kl
        .blocks()
        .iter()
        .map(|block| {
            let s = block.members().next().expect("blocks are nonempty");
            let target = left.apply(s);
            let u = (0..right.dom().len())
                .find(|&u| right.apply(u) == target)
                .ok_or_else(|| Error::NotStrong("mediating map is not onto".into()))?;
            Ok(kr.block_of(u))
        })
        .collect::<Result<Vec<_>>>()?;
    MeasMap::new(&kl.factor_space(), &kr.factor_space(), image)
}

/// Turns a co-span of strong morphisms into congruences with isomorphic quotients.
pub fn logical_from_behavioral(
    p: &EffFn,
    q: &EffFn,
    mediator: &EffFn,
    mp: &EffMorphism,
    mq: &EffMorphism,
) -> Result<LogicalWitness> {
    ensure_strong_morphism(p, mediator, mp)?;
    ensure_strong_morphism(q, mediator, mq)?;
    let iso = EffMorphism {
        f: match_fibers(&mp.f, &mq.f)?,
        g: match_fibers(&mp.g, &mq.g)?,
    };
    Ok(LogicalWitness {
        left: Congruence::new(kernel_of_map(&mp.f), kernel_of_map(&mp.g)),
        right: Congruence::new(kernel_of_map(&mq.f), kernel_of_map(&mq.g)),
        iso,
    })
}

/// All partitions of a space, finest first, then lexicographic in block labels.
pub fn all_partitions(space: &FinSpace) -> Vec<Partition> {
    let n = space.len();
    let mut labels = vec![0usize; n];
    let mut out = Vec::new();
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, space: &FinSpace, out: &mut Vec<Partition>) {
        if i == labels.len() {
            out.push(Partition::from_labels(space, labels).expect("labels cover the space"));
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            rec(i + 1, max.max(l), labels, space, out);
        }
    }
    if n > 0 {
        rec(1, 0, &mut labels, space, &mut out);
    }
    out.sort_by(|a, b| {
        b.n_blocks()
            .cmp(&a.n_blocks())
            .then_with(|| a.labels().cmp(b.labels()))
    });
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn spend(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::SearchBoundExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

fn congruences(p: &EffFn, budget: &mut Budget) -> Result<Vec<(Congruence, EffFn)>> {
    let betas = all_partitions(p.cod());
    let mut out = Vec::new();
    for alpha in all_partitions(p.dom()) {
        for beta in &betas {
            budget.spend()?;
            let c = Congruence::new(alpha.clone(), beta.clone());
            if is_congruence(p, &c)? {
                let qt = quotient(p, &c)?;
                out.push((c, qt));
            }
        }
    }
    Ok(out)
}

/// An isomorphism between two effectivity functions, trying codomain
/// bijections in lexicographic order and matching domain states by backtracking.
fn find_isomorphism(a: &EffFn, b: &EffFn, budget: &mut Budget) -> Result<Option<EffMorphism>> {
    if a.dom().len() != b.dom().len() || a.cod().len() != b.cod().len() {
        return Ok(None);
    }
    for perm in permutations(a.cod().len()) {
        budget.spend()?;
        let g = MeasMap::new(a.cod(), b.cod(), perm)?;
        let pushed = a
            .portfolios()
            .iter()
            .map(|f| apply_vau(&g, f))
            .collect::<Result<Vec<_>>>()?;
        let mut compatible = vec![vec![false; b.dom().len()]; a.dom().len()];
        for (x, row) in compatible.iter_mut().enumerate() {
            for (u, slot) in row.iter_mut().enumerate() {
                *slot = filters_equal(b.portfolio(u), &pushed[x])?;
            }
        }
        let mut assignment = Vec::with_capacity(a.dom().len());
        let mut used = vec![false; b.dom().len()];
        if assign(&compatible, &mut assignment, &mut used) {
            let f = MeasMap::new(a.dom(), b.dom(), assignment)?;
            let m = EffMorphism { f, g };
            if is_isomorphism(a, b, &m)? {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

fn assign(compatible: &[Vec<bool>], assignment: &mut Vec<usize>, used: &mut [bool]) -> bool {
    let x = assignment.len();
    if x == compatible.len() {
        return true;
    }
    for u in 0..used.len() {
        if compatible[x][u] && !used[u] {
            used[u] = true;
            assignment.push(u);
            if assign(compatible, assignment, used) {
                return true;
            }
            assignment.pop();
            used[u] = false;
        }
    }
    false
}

/// Searches congruence pairs (finest first) and bijections between the
/// quotients for a logical-equivalence witness.
///
/// `max_search` bounds the number of congruence candidates plus codomain
/// bijections examined; running out is an error, distinct from `Ok(None)`.
pub fn logically_equivalent(p: &EffFn, q: &EffFn, max_search: u64) -> Result<Option<LogicalWitness>> {
    let mut budget = Budget {
        used: 0,
        limit: max_search,
    };
    let cps = congruences(p, &mut budget)?;
    let cqs = congruences(q, &mut budget)?;
    for (cp, qp) in &cps {
        for (cq, qq) in &cqs {
            if let Some(iso) = find_isomorphism(qp, qq, &mut budget)? {
                return Ok(Some(LogicalWitness {
                    left: cp.clone(),
                    right: cq.clone(),
                    iso,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effectivity::lift_kernel;
    use crate::finspace::SubProb;
    use crate::geometry::Generator;
    use crate::kernels::{aggregate_kernel, Kernel};
    use crate::rational::rat;

    fn ab() -> FinSpace {
        FinSpace::new(["a", "b"]).unwrap()
    }

    fn pt(s: &FinSpace, w: &[(i64, i64)]) -> SubProb {
        SubProb::new(s, w.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn k_ab() -> Kernel {
        Kernel::from_weights(
            &ab(),
            &ab(),
            vec![vec![rat(1, 2), rat(1, 4)], vec![rat(0, 1), rat(1, 1)]],
        )
        .unwrap()
    }

    #[test]
    fn apply_vau_examples() {
        let s = ab();
        let x = FinSpace::new(["x"]).unwrap();
        let f = Filter::principal(Generator::single(pt(&s, &[(1, 2), (1, 4)])));
        assert_eq!(apply_vau(&MeasMap::identity(&s), &f).unwrap(), f);
        let collapse = MeasMap::new(&s, &x, vec![0, 0]).unwrap();
        assert_eq!(
            apply_vau(&collapse, &f).unwrap(),
            Filter::principal(Generator::single(pt(&x, &[(3, 4)])))
        );
    }

    #[test]
    fn filters_equal_examples() {
        let s = ab();
        let (p, q) = (pt(&s, &[(1, 2), (1, 4)]), pt(&s, &[(0, 1), (1, 1)]));
        let single = Filter::principal(Generator::single(p.clone()));
        let dup = Filter::new(&s, vec![Generator::single(p.clone()), Generator::single(p.clone())]).unwrap();
        assert!(filters_equal(&single, &dup).unwrap());
        let two = Filter::new(&s, vec![Generator::single(p.clone()), Generator::single(q.clone())]).unwrap();
        assert!(!filters_equal(&single, &two).unwrap());
        let hull = Filter::principal(Generator::hull_of(vec![p.clone(), q.clone()]).unwrap());
        let pts = Filter::principal(Generator::points_of(vec![p, q]).unwrap());
        assert!(!filters_equal(&hull, &pts).unwrap());
        assert!(filters_equal(&Filter::empty(&s), &Filter::empty(&s)).unwrap());
    }

    #[test]
    fn morphism_examples() {
        let s = ab();
        let p = lift_kernel(&k_ab());
        assert!(is_morphism(&p, &p, &EffMorphism::identity(&p)).unwrap());

        let x = FinSpace::new(["x"]).unwrap();
        let g = MeasMap::new(&s, &x, vec![0, 0]).unwrap();
        let id = MeasMap::identity(&s);
        let l = aggregate_kernel(&id, &g, &k_ab()).unwrap().unwrap();
        let m = EffMorphism::new(id.clone(), g.clone());
        assert!(is_morphism(&p, &lift_kernel(&l), &m).unwrap());

        let wrong = Kernel::from_weights(&s, &x, vec![vec![rat(1, 2)], vec![rat(1, 1)]]).unwrap();
        assert!(!is_morphism(&p, &lift_kernel(&wrong), &m).unwrap());
        assert_eq!(morphism_violation(&p, &lift_kernel(&wrong), &m).unwrap(), Some(0));
    }

    #[test]
    fn strong_examples() {
        let s = ab();
        let x = FinSpace::new(["x"]).unwrap();
        let p = lift_kernel(&k_ab());
        assert!(is_strong(&EffMorphism::identity(&p)));
        let collapse = MeasMap::new(&s, &x, vec![0, 0]).unwrap();
        assert!(is_strong(&EffMorphism::new(collapse.clone(), collapse)));
        let abc = FinSpace::new(["a", "b", "c"]).unwrap();
        let into = MeasMap::new(&s, &abc, vec![0, 1]).unwrap();
        assert!(!is_strong(&EffMorphism::new(into, MeasMap::identity(&s))));
    }

    #[test]
    fn congruence_examples() {
        let s = ab();
        let p = lift_kernel(&k_ab());
        let discrete_alpha = Congruence::new(Partition::discrete(&s), Partition::indiscrete(&s));
        assert!(is_congruence(&p, &discrete_alpha).unwrap());

        let row = pt(&s, &[(1, 3), (1, 3)]);
        let same = lift_kernel(&Kernel::new(&s, &s, vec![row.clone(), row]).unwrap());
        let c = Congruence::new(Partition::indiscrete(&s), Partition::discrete(&s));
        assert!(is_congruence(&same, &c).unwrap());
        assert!(!is_congruence(&p, &c).unwrap());
        assert!(matches!(quotient(&p, &c), Err(Error::NotACongruence(..))));
    }

    #[test]
    fn quotient_examples() {
        let s = ab();
        let p = lift_kernel(&k_ab());
        let q = quotient(&p, &Congruence::discrete(&p)).unwrap();
        let iso = EffMorphism::new(
            Partition::discrete(&s).factor_map(),
            Partition::discrete(&s).factor_map(),
        );
        assert!(is_isomorphism(&p, &q, &iso).unwrap());

        let row = pt(&s, &[(1, 3), (1, 3)]);
        let same = lift_kernel(&Kernel::new(&s, &s, vec![row.clone(), row]).unwrap());
        let c = Congruence::new(Partition::indiscrete(&s), Partition::indiscrete(&s));
        let q = quotient(&same, &c).unwrap();
        assert_eq!(q.dom().len(), 1);
        let x = q.cod().clone();
        assert_eq!(
            q.portfolio(0),
            &Filter::principal(Generator::single(pt(&x, &[(2, 3)])))
        );
    }

    #[test]
    fn kernel_congruence_examples() {
        let s = ab();
        let p = lift_kernel(&k_ab());
        let c = kernel_congruence(&p, &p, &EffMorphism::identity(&p)).unwrap();
        assert_eq!(c, Congruence::discrete(&p));

        let abc = FinSpace::new(["a", "b", "c"]).unwrap();
        let into = MeasMap::new(&s, &abc, vec![0, 1]).unwrap();
        let k3 = Kernel::from_weights(
            &abc,
            &s,
            vec![vec![rat(1, 2), rat(1, 4)], vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]],
        )
        .unwrap();
        let m = EffMorphism::new(into, MeasMap::identity(&s));
        assert!(is_morphism(&p, &lift_kernel(&k3), &m).unwrap());
        assert!(matches!(
            kernel_congruence(&p, &lift_kernel(&k3), &m),
            Err(Error::NotStrong(_))
        ));
    }

    #[test]
    fn cospan_and_back() {
        let s = ab();
        let p = lift_kernel(&k_ab());
        let c = Congruence::discrete(&p);
        let qp = quotient(&p, &c).unwrap();
        let iso = EffMorphism::identity(&qp);
        let cs = cospan_from_logical(&p, &p, &c, &c, &iso).unwrap();
        assert!(is_morphism(&p, &cs.mediator, &cs.left).unwrap());
        assert!(is_strong(&cs.left) && is_strong(&cs.right));

        let w = logical_from_behavioral(&p, &p, &cs.mediator, &cs.left, &cs.right).unwrap();
        assert_eq!(w.left, c);
        assert_eq!(w.right, c);

        let swap = MeasMap::new(qp.dom(), qp.dom(), vec![1, 0]).unwrap();
        let bad = EffMorphism::new(swap, MeasMap::identity(qp.cod()));
        assert!(matches!(
            cospan_from_logical(&p, &p, &c, &c, &bad),
            Err(Error::InvalidIsomorphism(_))
        ));
        let _ = s;
    }

    #[test]
    fn partitions_are_ordered_finest_first() {
        let abc = FinSpace::new(["a", "b", "c"]).unwrap();
        let parts = all_partitions(&abc);
        assert_eq!(parts.len(), 5);
        assert!(parts[0].is_discrete());
        assert_eq!(parts[4].n_blocks(), 1);
        let four = FinSpace::new(["a", "b", "c", "d"]).unwrap();
        assert_eq!(all_partitions(&four).len(), 15);
    }

    #[test]
    fn search_examples() {
        let p = lift_kernel(&k_ab());
        let w = logically_equivalent(&p, &p, 10_000).unwrap().unwrap();
        assert_eq!(w.left, Congruence::discrete(&p));
        assert_eq!(w.right, Congruence::discrete(&p));
        assert!(w.iso.f.images().iter().enumerate().all(|(i, &j)| i == j));

        let x = FinSpace::new(["x"]).unwrap();
        let half = lift_kernel(&Kernel::from_weights(&x, &x, vec![vec![rat(1, 2)]]).unwrap());
        let third = lift_kernel(&Kernel::from_weights(&x, &x, vec![vec![rat(1, 3)]]).unwrap());
        assert_eq!(logically_equivalent(&half, &third, 1_000).unwrap(), None);
        assert_eq!(
            logically_equivalent(&p, &p, 3),
            Err(Error::SearchBoundExceeded(3))
        );
    }
}
