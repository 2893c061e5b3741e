//! Finite measurable spaces with the full power set as σ-algebra.
//!
//! Subsets are bitmasks over the state order of their space, so a space holds
//! at most 64 states. Everything here is immutable once built.

use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{format_rational, one, Rational};

const MAX_STATES: usize = 64;

/// An ordered, nonempty list of distinct state names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSpace(Arc<[String]>);

impl FinSpace {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptySpace);
        }
        if names.len() > MAX_STATES {
            return Err(Error::SpaceTooLarge(names.len()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateState(n.clone()));
            }
        }
        Ok(FinSpace(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn states(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownState(name.to_string()))
    }

    pub fn ensure_same(&self, other: &FinSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            })
        }
    }

    fn full_mask(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn empty_set(&self) -> Subset {
        Subset {
            space: self.clone(),
            bits: 0,
        }
    }

    pub fn full_set(&self) -> Subset {
        Subset {
            space: self.clone(),
            bits: self.full_mask(),
        }
    }

    pub fn singleton(&self, index: usize) -> Subset {
        assert!(index < self.len(), "state index out of range");
        Subset {
            space: self.clone(),
            bits: 1 << index,
        }
    }

    pub fn subset_from_bits(&self, bits: u64) -> Result<Subset> {
        if bits & !self.full_mask() != 0 {
            return Err(Error::InvalidPartition(format!(
                "bitmask {bits:#x} exceeds a space of {} states",
                self.len()
            )));
        }
        Ok(Subset {
            space: self.clone(),
            bits,
        })
    }

    pub fn subset<I, S>(&self, names: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut bits = 0u64;
        for n in names {
            bits |= 1 << self.index_of(n.as_ref())?;
        }
        Ok(Subset {
            space: self.clone(),
            bits,
        })
    }

    /// All `2^n` subsets in bitmask order. Only sensible at desk scale.
    pub fn all_subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        assert!(self.len() < 32, "power set enumeration needs fewer than 32 states");
        (0..(1u64 << self.len())).map(move |bits| Subset {
            space: self.clone(),
            bits,
        })
    }
}

impl fmt::Display for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(", "))
    }
}

impl fmt::Debug for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSpace{self}")
    }
}

/// A measurable subset (every subset is measurable).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    space: FinSpace,
    bits: u64,
}

impl Subset {
    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, index: usize) -> bool {
        index < 64 && self.bits & (1 << index) != 0
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.space.len()).filter(move |&i| self.contains(i))
    }

    pub fn names(&self) -> Vec<&str> {
        self.members().map(|i| self.space.name(i)).collect()
    }

    fn with_bits(&self, bits: u64) -> Subset {
        Subset {
            space: self.space.clone(),
            bits,
        }
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.space.ensure_same(&other.space)?;
        Ok(self.with_bits(self.bits | other.bits))
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.space.ensure_same(&other.space)?;
        Ok(self.with_bits(self.bits & other.bits))
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.space.ensure_same(&other.space)?;
        Ok(self.with_bits(self.bits & !other.bits))
    }

    pub fn complement(&self) -> Subset {
        self.with_bits(!self.bits & self.space.full_mask())
    }

    pub fn is_subset_of(&self, other: &Subset) -> Result<bool> {
        self.space.ensure_same(&other.space)?;
        Ok(self.bits & !other.bits == 0)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset{self}")
    }
}

/// An equivalence relation on a space, stored as a block index per state.
///
/// Blocks are numbered in order of their first member, so two partitions with
/// the same blocks compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    space: FinSpace,
    block_of: Vec<usize>,
    n_blocks: usize,
}

impl Partition {
    /// Builds a partition from arbitrary per-state labels; equal labels share a block.
    pub fn from_labels<L: PartialEq>(space: &FinSpace, labels: &[L]) -> Result<Self> {
        if labels.len() != space.len() {
            return Err(Error::InvalidPartition(format!(
                "expected {} labels, got {}",
                space.len(),
                labels.len()
            )));
        }
        let mut block_of = Vec::with_capacity(labels.len());
        let mut seen: Vec<&L> = Vec::new();
        for l in labels {
            let b = match seen.iter().position(|x| *x == l) {
                Some(b) => b,
                None => {
                    seen.push(l);
                    seen.len() - 1
                }
            };
            block_of.push(b);
        }
        Ok(Partition {
            space: space.clone(),
            n_blocks: seen.len(),
            block_of,
        })
    }

    pub fn from_blocks(space: &FinSpace, blocks: &[Subset]) -> Result<Self> {
        let mut labels = vec![usize::MAX; space.len()];
        for (b, block) in blocks.iter().enumerate() {
            space.ensure_same(block.space())?;
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for i in block.members() {
                if labels[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "state `{}` occurs in two blocks",
                        space.name(i)
                    )));
                }
                labels[i] = b;
            }
        }
        if let Some(i) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "state `{}` is not covered",
                space.name(i)
            )));
        }
        Self::from_labels(space, &labels)
    }

    pub fn from_names(space: &FinSpace, blocks: &[Vec<String>]) -> Result<Self> {
        let subsets = blocks
            .iter()
            .map(|b| {
                let s = space.subset(b)?;
                if s.len() != b.len() {
                    return Err(Error::InvalidPartition("repeated state inside a block".into()));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_blocks(space, &subsets)
    }

    pub fn discrete(space: &FinSpace) -> Self {
        Partition {
            space: space.clone(),
            block_of: (0..space.len()).collect(),
            n_blocks: space.len(),
        }
    }

    pub fn indiscrete(space: &FinSpace) -> Self {
        Partition {
            space: space.clone(),
            block_of: vec![0; space.len()],
            n_blocks: 1,
        }
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn block_of(&self, state: usize) -> usize {
        self.block_of[state]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn block(&self, b: usize) -> Subset {
        let bits = self
            .block_of
            .iter()
            .enumerate()
            .filter(|(_, &x)| x == b)
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        Subset {
            space: self.space.clone(),
            bits,
        }
    }

    pub fn blocks(&self) -> Vec<Subset> {
        (0..self.n_blocks).map(|b| self.block(b)).collect()
    }

    pub fn is_discrete(&self) -> bool {
        self.n_blocks == self.space.len()
    }

    /// `true` iff `subset` is a union of blocks.
    pub fn is_invariant(&self, subset: &Subset) -> Result<bool> {
        self.space.ensure_same(subset.space())?;
        Ok(self
            .blocks()
            .iter()
            .all(|b| b.bits & subset.bits == 0 || b.bits & !subset.bits == 0))
    }

    /// The factor space; block `b` is named `[x,y,...]` after its members.
    pub fn factor_space(&self) -> FinSpace {
        let names: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| format!("[{}]", b.names().join(",")))
            .collect();
        FinSpace::new(names).expect("block names are distinct and nonempty")
    }

    /// The factor map `s ↦ [s]`.
    pub fn factor_map(&self) -> MeasMap {
        MeasMap {
            dom: self.space.clone(),
            cod: self.factor_space(),
            image: self.block_of.clone(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks().iter().map(|b| b.names().join(",")).collect();
        write!(f, "{}", blocks.join("|"))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

/// The finite Boolean algebra of unions of blocks; `2^blocks` sets.
pub fn invariant_sets(part: &Partition) -> Vec<Subset> {
    let blocks = part.blocks();
    assert!(blocks.len() < 32, "too many blocks to enumerate invariant sets");
    (0..(1u64 << blocks.len()))
        .map(|choice| {
            let bits = blocks
                .iter()
                .enumerate()
                .filter(|(j, _)| choice & (1 << j) != 0)
                .fold(0u64, |acc, (_, b)| acc | b.bits);
            Subset {
                space: part.space.clone(),
                bits,
            }
        })
        .collect()
}

/// A total map between finite spaces; measurable automatically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MeasMap {
    dom: FinSpace,
    cod: FinSpace,
    image: Vec<usize>,
}

impl MeasMap {
    pub fn new(dom: &FinSpace, cod: &FinSpace, image: Vec<usize>) -> Result<Self> {
        if image.len() != dom.len() {
            return Err(Error::InvalidMap(format!(
                "expected {} images, got {}",
                dom.len(),
                image.len()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&t| t >= cod.len()) {
            return Err(Error::InvalidMap(format!("image index {bad} outside codomain")));
        }
        Ok(MeasMap {
            dom: dom.clone(),
            cod: cod.clone(),
            image,
        })
    }

    /// Builds a map from `(source, target)` name pairs covering the domain.
    pub fn from_pairs<S: AsRef<str>>(dom: &FinSpace, cod: &FinSpace, pairs: &[(S, S)]) -> Result<Self> {
        let mut image = vec![usize::MAX; dom.len()];
        for (s, t) in pairs {
            let i = dom.index_of(s.as_ref())?;
            if image[i] != usize::MAX {
                return Err(Error::InvalidMap(format!("state `{}` mapped twice", s.as_ref())));
            }
            image[i] = cod.index_of(t.as_ref())?;
        }
        if let Some(i) = image.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidMap(format!("state `{}` is unmapped", dom.name(i))));
        }
        Self::new(dom, cod, image)
    }

    pub fn identity(space: &FinSpace) -> Self {
        MeasMap {
            dom: space.clone(),
            cod: space.clone(),
            image: (0..space.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn apply(&self, state: usize) -> usize {
        self.image[state]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &MeasMap) -> Result<MeasMap> {
        self.cod.ensure_same(&then.dom)?;
        Ok(MeasMap {
            dom: self.dom.clone(),
            cod: then.cod.clone(),
            image: self.image.iter().map(|&t| then.image[t]).collect(),
        })
    }

    pub fn preimage(&self, set: &Subset) -> Result<Subset> {
        self.cod.ensure_same(set.space())?;
        let bits = self
            .image
            .iter()
            .enumerate()
            .filter(|(_, &t)| set.contains(t))
            .fold(0u64, |acc, (i, _)| acc | 1 << i);
        Ok(Subset {
            space: self.dom.clone(),
            bits,
        })
    }

    pub fn direct_image(&self, set: &Subset) -> Result<Subset> {
        self.dom.ensure_same(set.space())?;
        let bits = set.members().fold(0u64, |acc, i| acc | 1 << self.image[i]);
        Ok(Subset {
            space: self.cod.clone(),
            bits,
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &t in &self.image {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<MeasMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut image = vec![0; self.cod.len()];
        for (s, &t) in self.image.iter().enumerate() {
            image[t] = s;
        }
        Some(MeasMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            image,
        })
    }
}

impl fmt::Debug for MeasMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self
            .image
            .iter()
            .enumerate()
            .map(|(s, &t)| format!("{}->{}", self.dom.name(s), self.cod.name(t)))
            .collect();
        write!(f, "MeasMap[{}]", pairs.join(", "))
    }
}

/// Partition of `f.dom` into the nonempty fibers `f⁻¹({t})`.
pub fn kernel_of_map(f: &MeasMap) -> Partition {
    Partition::from_labels(&f.dom, &f.image).expect("one label per domain state")
}

/// A subprobability vector: nonnegative weights with total mass at most 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubProb {
    space: FinSpace,
    weights: Vec<Rational>,
}

impl SubProb {
    pub fn new(space: &FinSpace, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != space.len() {
            return Err(Error::InvalidMeasure(format!(
                "expected {} weights, got {}",
                space.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(Error::InvalidMeasure(format!(
                "negative weight {} at `{}`",
                format_rational(&weights[i]),
                space.name(i)
            )));
        }
        let total: Rational = weights.iter().sum();
        if total > one() {
            return Err(Error::InvalidMeasure(format!(
                "total mass {} exceeds 1",
                format_rational(&total)
            )));
        }
        Ok(SubProb {
            space: space.clone(),
            weights,
        })
    }

    pub fn zero(space: &FinSpace) -> Self {
        SubProb {
            space: space.clone(),
            weights: vec![Rational::zero(); space.len()],
        }
    }

    pub fn dirac(space: &FinSpace, state: usize) -> Self {
        let mut weights = vec![Rational::zero(); space.len()];
        weights[state] = one();
        SubProb {
            space: space.clone(),
            weights,
        }
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn weight(&self, state: usize) -> &Rational {
        &self.weights[state]
    }

    pub fn mass(&self) -> Rational {
        self.weights.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.iter().all(Zero::is_zero)
    }

    /// `Σ_t weights[t] · μ({t})`; the weighted generalization of `μ(A)`.
    pub(crate) fn dot(&self, weights: &[Rational]) -> Rational {
        self.weights
            .iter()
            .zip(weights)
            .filter(|(w, _)| !w.is_zero())
            .map(|(w, c)| w * c)
            .sum()
    }
}

impl fmt::Display for SubProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(format_rational).collect();
        write!(f, "({})", ws.join(", "))
    }
}

impl fmt::Debug for SubProb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubProb{self}")
    }
}

pub fn measure_of(mu: &SubProb, event: &Subset) -> Result<Rational> {
    mu.space.ensure_same(event.space())?;
    Ok(event.members().map(|i| &mu.weights[i]).sum())
}

/// `(𝕊f)(μ)(B) = μ(f⁻¹(B))`.
pub fn pushforward(f: &MeasMap, mu: &SubProb) -> Result<SubProb> {
    f.dom.ensure_same(&mu.space)?;
    let mut weights = vec![Rational::zero(); f.cod.len()];
    for (s, w) in mu.weights.iter().enumerate() {
        weights[f.image[s]] += w;
    }
    Ok(SubProb {
        space: f.cod.clone(),
        weights,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rel {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Rel {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Rel::Lt => lhs < rhs,
            Rel::Le => lhs <= rhs,
            Rel::Gt => lhs > rhs,
            Rel::Ge => lhs >= rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Le => "<=",
            Rel::Gt => ">",
            Rel::Ge => ">=",
        }
    }
}

impl fmt::Display for Rel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// The threshold set `β(event, rel bound)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ThresholdQuery {
    pub event: Subset,
    pub rel: Rel,
    pub bound: Rational,
}

impl ThresholdQuery {
    pub fn new(event: Subset, rel: Rel, bound: Rational) -> Result<Self> {
        crate::rational::check_unit_interval(&bound)?;
        Ok(ThresholdQuery { event, rel, bound })
    }
}

pub fn query_holds(query: &ThresholdQuery, mu: &SubProb) -> Result<bool> {
    let m = measure_of(mu, &query.event)?;
    Ok(query.rel.holds(&m, &query.bound))
}

/// `∫₀^∞ μ({s | f(s) > t}) dt`, summed exactly over the distinct values of `f`.
pub fn choquet_area(values: &[Rational], mu: &SubProb) -> Result<Rational> {
    if values.len() != mu.space.len() {
        return Err(Error::InvalidMap(format!(
            "expected {} function values, got {}",
            mu.space.len(),
            values.len()
        )));
    }
    if let Some(i) = values.iter().position(|v| v.is_negative()) {
        return Err(Error::NegativeValue {
            state: mu.space.name(i).to_string(),
            value: format_rational(&values[i]),
        });
    }
    let mut levels: Vec<&Rational> = values.iter().collect();
    levels.sort();
    levels.dedup();
    let mut area = Rational::zero();
    let mut previous = Rational::zero();
    for level in levels {
        // On [previous, level) the strict super-level set is {f >= level}.
        let mass: Rational = values
            .iter()
            .zip(&mu.weights)
            .filter(|(v, _)| *v >= level)
            .map(|(_, w)| w)
            .sum();
        area += (level - &previous) * mass;
        previous = level.clone();
    }
    Ok(area)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ab() -> FinSpace {
        FinSpace::new(["a", "b"]).unwrap()
    }

    fn mu_ab() -> SubProb {
        SubProb::new(&ab(), vec![rat(1, 2), rat(1, 4)]).unwrap()
    }

    #[test]
    fn space_invariants() {
        assert_eq!(FinSpace::new(Vec::<String>::new()), Err(Error::EmptySpace));
        assert_eq!(
            FinSpace::new(["a", "a"]),
            Err(Error::DuplicateState("a".into()))
        );
        let many: Vec<String> = (0..65).map(|i| format!("s{i}")).collect();
        assert_eq!(FinSpace::new(many), Err(Error::SpaceTooLarge(65)));
    }

    #[test]
    fn measure_examples() {
        let s = ab();
        let mu = mu_ab();
        assert_eq!(measure_of(&mu, &s.subset(["b"]).unwrap()).unwrap(), rat(1, 4));
        assert_eq!(measure_of(&mu, &s.full_set()).unwrap(), rat(3, 4));
        assert_eq!(measure_of(&mu, &s.empty_set()).unwrap(), rat(0, 1));
        let other = FinSpace::new(["x"]).unwrap();
        assert!(matches!(
            measure_of(&mu, &other.full_set()),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn subprob_rejects_excess_mass_and_negatives() {
        assert!(SubProb::new(&ab(), vec![rat(3, 4), rat(3, 8)]).is_err());
        assert!(SubProb::new(&ab(), vec![rat(-1, 4), rat(1, 4)]).is_err());
        assert!(SubProb::new(&ab(), vec![rat(1, 4)]).is_err());
    }

    #[test]
    fn pushforward_examples() {
        let s = ab();
        let x = FinSpace::new(["x"]).unwrap();
        let collapse = MeasMap::new(&s, &x, vec![0, 0]).unwrap();
        assert_eq!(pushforward(&collapse, &mu_ab()).unwrap().weights(), &[rat(3, 4)]);
        let id = MeasMap::identity(&s);
        assert_eq!(pushforward(&id, &mu_ab()).unwrap(), mu_ab());
        let swap = MeasMap::new(&s, &s, vec![1, 0]).unwrap();
        assert_eq!(
            pushforward(&swap, &mu_ab()).unwrap().weights(),
            &[rat(1, 4), rat(1, 2)]
        );
    }

    #[test]
    fn query_examples() {
        let s = ab();
        let b = s.subset(["b"]).unwrap();
        let q = |rel, bound| ThresholdQuery::new(b.clone(), rel, bound).unwrap();
        assert!(query_holds(&q(Rel::Gt, rat(1, 8)), &mu_ab()).unwrap());
        assert!(!query_holds(&q(Rel::Gt, rat(1, 4)), &mu_ab()).unwrap());
        let empty = ThresholdQuery::new(s.empty_set(), Rel::Ge, rat(0, 1)).unwrap();
        assert!(query_holds(&empty, &mu_ab()).unwrap());
        assert!(ThresholdQuery::new(b, Rel::Gt, rat(3, 2)).is_err());
    }

    #[test]
    fn choquet_examples() {
        let s = FinSpace::new(["a", "b", "c"]).unwrap();
        let mu = SubProb::new(&s, vec![rat(1, 2), rat(1, 4), rat(1, 4)]).unwrap();
        let f = [rat(0, 1), rat(1, 1), rat(2, 1)];
        assert_eq!(choquet_area(&f, &mu).unwrap(), rat(3, 4));
        let c = [rat(5, 3), rat(5, 3), rat(5, 3)];
        assert_eq!(choquet_area(&c, &mu).unwrap(), rat(5, 3) * mu.mass());
        assert_eq!(choquet_area(&f, &SubProb::zero(&s)).unwrap(), rat(0, 1));
        let neg = [rat(0, 1), rat(-1, 2), rat(1, 1)];
        assert!(matches!(
            choquet_area(&neg, &mu),
            Err(Error::NegativeValue { .. })
        ));
    }

    #[test]
    fn invariant_set_examples() {
        let s = ab();
        let sets = invariant_sets(&Partition::discrete(&s));
        assert_eq!(sets.len(), 4);
        let sets = invariant_sets(&Partition::indiscrete(&s));
        assert_eq!(sets, vec![s.empty_set(), s.full_set()]);

        let abc = FinSpace::new(["a", "b", "c"]).unwrap();
        let p = Partition::from_names(&abc, &[vec!["a".into(), "b".into()], vec!["c".into()]]).unwrap();
        let sets = invariant_sets(&p);
        assert_eq!(sets.len(), 4);
        assert!(sets.contains(&abc.subset(["a", "b"]).unwrap()));
        assert!(sets.contains(&abc.subset(["c"]).unwrap()));
        assert!(!sets.contains(&abc.subset(["a"]).unwrap()));
    }

    #[test]
    fn kernel_of_map_examples() {
        let s = ab();
        let x = FinSpace::new(["x"]).unwrap();
        let collapse = MeasMap::new(&s, &x, vec![0, 0]).unwrap();
        assert_eq!(kernel_of_map(&collapse), Partition::indiscrete(&s));
        assert_eq!(kernel_of_map(&MeasMap::identity(&s)), Partition::discrete(&s));

        let abc = FinSpace::new(["a", "b", "c"]).unwrap();
        let xy = FinSpace::new(["x", "y"]).unwrap();
        let f = MeasMap::from_pairs(&abc, &xy, &[("a", "x"), ("b", "x"), ("c", "y")]).unwrap();
        let k = kernel_of_map(&f);
        assert_eq!(k.blocks(), vec![abc.subset(["a", "b"]).unwrap(), abc.subset(["c"]).unwrap()]);
    }

    #[test]
    fn partition_validation() {
        let abc = FinSpace::new(["a", "b", "c"]).unwrap();
        let overlapping = [abc.subset(["a", "b"]).unwrap(), abc.subset(["b", "c"]).unwrap()];
        assert!(Partition::from_blocks(&abc, &overlapping).is_err());
        let uncovered = [abc.subset(["a"]).unwrap()];
        assert!(Partition::from_blocks(&abc, &uncovered).is_err());
        let with_empty = [abc.full_set(), abc.empty_set()];
        assert!(Partition::from_blocks(&abc, &with_empty).is_err());
    }

    #[test]
    fn factor_names_and_inverse() {
        let abc = FinSpace::new(["a", "b", "c"]).unwrap();
        let p = Partition::from_labels(&abc, &[1, 0, 1]).unwrap();
        assert_eq!(p.factor_space().states(), &["[a,c]".to_string(), "[b]".to_string()]);
        let swap = MeasMap::new(&abc, &abc, vec![1, 2, 0]).unwrap();
        let inv = swap.inverse().unwrap();
        assert_eq!(swap.then(&inv).unwrap(), MeasMap::identity(&abc));
        assert!(p.factor_map().inverse().is_none());
    }
}
