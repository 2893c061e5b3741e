//! Characteristic relations `R ⊆ [0,1] × 𝒫(T)` and their deduction rules.
//!
//! Each event carries one down-set section `{r | ⟨r, A⟩ ∈ R}`, which is
//! empty, `[0, c)` or `[0, c]`. Downward closure in `r` (rule 2) therefore
//! holds by construction, and the decreasing-chain rule (rule 7) holds because
//! chains of subsets of a finite set stabilize. The remaining rules are
//! decided exactly: every quantifier over thresholds ranges over a sum or a
//! complement of down-sets, whose extreme points are section bounds, their
//! sums, and their attainment flags.
//!
//! The additivity rule is checked in its intersection form
//! `⟨r, A∩B⟩, ⟨s, A∖B⟩ ∈ R, r+s ≤ 1 ⟹ ⟨r+s, A⟩ ∈ R`; read with unions it would
//! reject every relation induced by a measure with positive mass.

use std::fmt;

use num_traits::{One, Zero};

use crate::effectivity::Filter;
use crate::error::{Error, Result};
use crate::finspace::{measure_of, FinSpace, SubProb, Subset};
use crate::geometry::indicator;
use crate::rational::{check_unit_interval, format_rational, midpoint, one, parse_rational, rat, zero, Rational};

/// A down-set of `[0, 1]`: `∅`, `[0, c)` or `[0, c]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DownSet {
    Empty,
    UpTo { bound: Rational, closed: bool },
}

impl DownSet {
    /// Normalizes `[0, 0)` to `Empty`.
    pub fn up_to(bound: Rational, closed: bool) -> Result<Self> {
        check_unit_interval(&bound)?;
        if bound.is_zero() && !closed {
            return Ok(DownSet::Empty);
        }
        Ok(DownSet::UpTo { bound, closed })
    }

    pub fn closed(bound: Rational) -> Result<Self> {
        Self::up_to(bound, true)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        match self {
            DownSet::Empty => false,
            DownSet::UpTo { bound, closed } => {
                !(r < &zero()) && (r < bound || (*closed && r == bound))
            }
        }
    }

    /// The supremum, `0` for the empty set.
    pub fn sup(&self) -> Rational {
        match self {
            DownSet::Empty => zero(),
            DownSet::UpTo { bound, .. } => bound.clone(),
        }
    }

    pub fn is_subset_of(&self, other: &DownSet) -> bool {
        match (self, other) {
            (DownSet::Empty, _) => true,
            (_, DownSet::Empty) => false,
            (
                DownSet::UpTo { bound: a, closed: ca },
                DownSet::UpTo { bound: b, closed: cb },
            ) => a < b || (a == b && (!ca || *cb)),
        }
    }

    /// Some `r ∈ self ∖ other`, if there is one.
    fn witness_outside(&self, other: &DownSet) -> Option<Rational> {
        if self.is_subset_of(other) {
            return None;
        }
        let (DownSet::UpTo { bound, .. }, other) = (self, other) else {
            return None;
        };
        match other {
            DownSet::Empty => Some(zero()),
            DownSet::UpTo { bound: ob, .. } if bound > ob => Some(midpoint(bound, ob)),
            DownSet::UpTo { .. } => Some(bound.clone()),
        }
    }
}

impl fmt::Display for DownSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DownSet::Empty => f.write_str("empty"),
            DownSet::UpTo { bound, closed: true } => write!(f, "[0,{}]", format_rational(bound)),
            DownSet::UpTo { bound, closed: false } => write!(f, "[0,{})", format_rational(bound)),
        }
    }
}

impl std::str::FromStr for DownSet {
    type Err = Error;

    /// Parses the display forms `empty`, `[0,c]` and `[0,c)`.
    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "empty" {
            return Ok(DownSet::Empty);
        }
        let bad = || Error::InvalidRational(t.to_string());
        let inner = t.strip_prefix('[').ok_or_else(bad)?;
        let (inner, closed) = if let Some(i) = inner.strip_suffix(']') {
            (i, true)
        } else {
            (inner.strip_suffix(')').ok_or_else(bad)?, false)
        };
        let (lo, hi) = inner.split_once(',').ok_or_else(bad)?;
        if !parse_rational(lo)?.is_zero() {
            return Err(bad());
        }
        DownSet::up_to(parse_rational(hi)?, closed)
    }
}

/// One section per event, indexed by the event's bitmask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharRel {
    space: FinSpace,
    sections: Vec<DownSet>,
}

impl CharRel {
    pub fn new(space: &FinSpace, sections: Vec<DownSet>) -> Result<Self> {
        if space.len() >= 20 {
            return Err(Error::SpaceTooLarge(space.len()));
        }
        let expected = 1usize << space.len();
        if sections.len() != expected {
            return Err(Error::InvalidMap(format!(
                "characteristic relation needs {expected} sections, got {}",
                sections.len()
            )));
        }
        Ok(CharRel {
            space: space.clone(),
            sections,
        })
    }

    /// `R_μ` with closed sections `[0, μ(B)]`.
    pub fn of_measure(mu: &SubProb) -> Self {
        let space = mu.space().clone();
        let sections = space
            .all_subsets()
            .map(|b| DownSet::UpTo {
                bound: measure_of(mu, &b).expect("same space"),
                closed: true,
            })
            .collect();
        CharRel { space, sections }
    }

    /// `R(Q) = {⟨r, B⟩ | β(B, ≥r) ∈ Q}`.
    pub fn of_filter(filter: &Filter) -> Self {
        let space = filter.space().clone();
        let sections = space
            .all_subsets()
            .map(|b| match filter.critical_value(&indicator(&b)) {
                None => DownSet::Empty,
                Some(m) => DownSet::UpTo {
                    bound: m,
                    closed: true,
                },
            })
            .collect();
        CharRel { space, sections }
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn section(&self, event: &Subset) -> &DownSet {
        &self.sections[event.bits() as usize]
    }

    pub fn sections(&self) -> &[DownSet] {
        &self.sections
    }

    pub fn with_section(&self, event: &Subset, section: DownSet) -> Self {
        let mut out = self.clone();
        out.sections[event.bits() as usize] = section;
        out
    }

    fn sec(&self, bits: u64) -> &DownSet {
        &self.sections[bits as usize]
    }

    fn set(&self, bits: u64) -> Subset {
        self.space.subset_from_bits(bits).expect("bits within the space")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `⟨r,A⟩ ∈ R, A ⊆ B ⟹ ⟨r,B⟩ ∈ R`
    Monotone,
    /// `⟨r,A⟩ ∈ R, r ≥ s ⟹ ⟨s,A⟩ ∈ R`
    DownwardClosed,
    /// `⟨r,A⟩ ∉ R, ⟨s,B⟩ ∉ R, r+s ≤ 1 ⟹ ⟨r+s, A∪B⟩ ∉ R`
    Subadditive,
    /// `⟨r,A∩B⟩ ∈ R, ⟨s,A∖B⟩ ∈ R, r+s ≤ 1 ⟹ ⟨r+s, A⟩ ∈ R`
    Superadditive,
    /// `⟨r,A⟩ ∈ R, r+s > 1 ⟹ ⟨s, T∖A⟩ ∉ R`
    Complement,
    /// `⟨r,∅⟩ ∈ R ⟹ r = 0`
    NullEvent,
    /// decreasing chains: `∀n ⟨r,A_n⟩ ∈ R ⟹ ⟨r, ∩A_n⟩ ∈ R`
    DecreasingChain,
}

impl Rule {
    pub fn number(self) -> u8 {
        self as u8 + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub rule: Rule,
    pub events: Vec<Subset>,
    pub r: Rational,
    pub s: Option<Rational>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let events: Vec<String> = self.events.iter().map(ToString::to_string).collect();
        write!(
            f,
            "rule {} ({:?}) violated at events {} with r = {}",
            self.rule.number(),
            self.rule,
            events.join(", "),
            format_rational(&self.r)
        )?;
        if let Some(s) = &self.s {
            write!(f, ", s = {}", format_rational(s))?;
        }
        Ok(())
    }
}

/// Complement of a section inside `[0, 1]`: its infimum and whether that is attained.
fn complement_inf(d: &DownSet) -> Option<(Rational, bool)> {
    match d {
        DownSet::Empty => Some((zero(), true)),
        DownSet::UpTo { bound, closed } => {
            if *closed && bound.is_one() {
                None
            } else {
                Some((bound.clone(), !closed))
            }
        }
    }
}

pub fn check_rules(rel: &CharRel) -> Vec<Violation> {
    let n = rel.space.len();
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();

    // Rule 1.
    for a in 0..=full {
        for b in 0..=full {
            if a & !b != 0 || a == b {
                continue;
            }
            if let Some(r) = rel.sec(a).witness_outside(rel.sec(b)) {
                out.push(Violation {
                    rule: Rule::Monotone,
                    events: vec![rel.set(a), rel.set(b)],
                    r,
                    s: None,
                });
            }
        }
    }

    // Rule 3: the smallest sum of non-members is the sum of the complements' infima.
    for a in 0..=full {
        for b in 0..=full {
            let (Some((ia, ta)), Some((ib, tb))) = (complement_inf(rel.sec(a)), complement_inf(rel.sec(b))) else {
                continue;
            };
            let union = rel.sec(a | b);
            let base = &ia + &ib;
            let witness = if ta && tb {
                (base <= one() && union.contains(&base)).then(|| (ia.clone(), ib.clone()))
            } else {
                let top = union.sup().min(one());
                (base < top && !matches!(union, DownSet::Empty)).then(|| {
                    let delta = (&top - &base) / rat(4, 1);
                    (&ia + &delta, &ib + &delta)
                })
            };
            if let Some((r, s)) = witness {
                out.push(Violation {
                    rule: Rule::Subadditive,
                    events: vec![rel.set(a), rel.set(b), rel.set(a | b)],
                    r,
                    s: Some(s),
                });
            }
        }
    }

    // Rule 4, over disjoint pairs (A∩B, A∖B).
    for x in 0..=full {
        for y in 0..=full {
            if x & y != 0 {
                continue;
            }
            let (dx, dy) = (rel.sec(x), rel.sec(y));
            let (DownSet::UpTo { bound: cx, closed: kx }, DownSet::UpTo { bound: cy, closed: ky }) = (dx, dy) else {
                continue;
            };
            let target = rel.sec(x | y);
            let top = cx + cy;
            let top_attained = *kx && *ky;
            // Smallest admissible sum outside the target section.
            let bad_sum = match target {
                DownSet::Empty => Some(zero()),
                DownSet::UpTo { bound: c, closed: true } => {
                    let cap = top.clone().min(one());
                    if c < &cap {
                        Some(if top > one() || top_attained { cap } else { midpoint(c, &cap) })
                    } else {
                        None
                    }
                }
                DownSet::UpTo { bound: c, closed: false } => {
                    (c <= &one() && (&top > c || (&top == c && top_attained))).then(|| c.clone())
                }
            };
            if let Some(sum) = bad_sum {
                let (r, s) = if top.is_zero() {
                    (zero(), zero())
                } else {
                    let r = &sum * cx / &top;
                    let s = &sum - &r;
                    (r, s)
                };
                out.push(Violation {
                    rule: Rule::Superadditive,
                    events: vec![rel.set(x), rel.set(y), rel.set(x | y)],
                    r,
                    s: Some(s),
                });
            }
        }
    }

    // Rule 5.
    for a in 0..=full {
        let (da, dc) = (rel.sec(a), rel.sec(full & !a));
        if matches!(da, DownSet::Empty) || matches!(dc, DownSet::Empty) {
            continue;
        }
        let excess = da.sup() + dc.sup() - one();
        if excess > zero() {
            let shrink = &excess / rat(3, 1);
            out.push(Violation {
                rule: Rule::Complement,
                events: vec![rel.set(a), rel.set(full & !a)],
                r: da.sup() - &shrink,
                s: Some(dc.sup() - &shrink),
            });
        }
    }

    // Rule 6.
    let null = rel.sec(0);
    if null.sup() > zero() {
        out.push(Violation {
            rule: Rule::NullEvent,
            events: vec![rel.set(0)],
            r: null.sup() / rat(2, 1),
            s: None,
        });
    }

    // Rule 7: a decreasing chain of subsets of a finite set is eventually
    // constant at some A_N, so the conclusion is the premise at A_N. Checked
    // over nested pairs, where the intersection is the smaller set.
    for a in 0..=full {
        for b in 0..=full {
            if b & !a != 0 {
                continue;
            }
            for r in [rel.sec(a).sup(), rel.sec(b).sup()] {
                if rel.sec(a).contains(&r) && rel.sec(b).contains(&r) && !rel.sec(a & b).contains(&r) {
                    out.push(Violation {
                        rule: Rule::DecreasingChain,
                        events: vec![rel.set(a), rel.set(b)],
                        r,
                        s: None,
                    });
                }
            }
        }
    }

    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtractionDefect {
    NullEventPositive(Rational),
    NotAdditive { a: Subset, b: Subset },
    MassExceedsOne(Rational),
}

impl fmt::Display for ExtractionDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtractionDefect::NullEventPositive(v) => {
                write!(f, "sup of the empty event is {}", format_rational(v))
            }
            ExtractionDefect::NotAdditive { a, b } => {
                write!(f, "not additive on disjoint events {a} and {b}")
            }
            ExtractionDefect::MassExceedsOne(v) => {
                write!(f, "total mass {} exceeds 1", format_rational(v))
            }
        }
    }
}

/// `μ_R(B) = sup{r | ⟨r, B⟩ ∈ R}` together with whether it is a subprobability.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extraction {
    pub space: FinSpace,
    /// `μ_R` at every singleton, in state order.
    pub weights: Vec<Rational>,
    pub verdict: std::result::Result<(), ExtractionDefect>,
}

impl Extraction {
    pub fn measure(&self) -> Option<SubProb> {
        self.verdict.as_ref().ok()?;
        SubProb::new(&self.space, self.weights.clone()).ok()
    }
}

pub fn extract_measure(rel: &CharRel) -> Extraction {
    let n = rel.space.len();
    let full = (1u64 << n) - 1;
    let sup = |bits: u64| rel.sec(bits).sup();
    let weights: Vec<Rational> = (0..n).map(|i| sup(1 << i)).collect();
    let verdict = (|| {
        if sup(0) > zero() {
            return Err(ExtractionDefect::NullEventPositive(sup(0)));
        }
        for a in 0..=full {
            for b in (a + 1)..=full {
                if a & b == 0 && sup(a | b) != sup(a) + sup(b) {
                    return Err(ExtractionDefect::NotAdditive {
                        a: rel.set(a),
                        b: rel.set(b),
                    });
                }
            }
        }
        if sup(full) > one() {
            return Err(ExtractionDefect::MassExceedsOne(sup(full)));
        }
        Ok(())
    })();
    Extraction {
        space: rel.space.clone(),
        weights,
        verdict,
    }
}

/// `⟨q, A⟩ ∈ R ⟺ β(A, ≥q) ∈ Q` for every event and every `q ∈ [0, 1]`.
pub fn satisfies(filter: &Filter, rel: &CharRel) -> Result<bool> {
    filter.space().ensure_same(&rel.space)?;
    Ok(CharRel::of_filter(filter).sections == rel.sections)
}

/// `μ(A) ≥ q ⟺ β(A, ≥q) ∈ Q` for every event and every `q ∈ [0, 1]`.
pub fn implements(filter: &Filter, mu: &SubProb) -> Result<bool> {
    filter.space().ensure_same(mu.space())?;
    Ok(CharRel::of_filter(filter) == CharRel::of_measure(mu))
}

/// The literal strict reading `μ(A) ≥ q ⟺ β(A, >q) ∈ Q`, kept for comparison.
///
/// At `q = μ(A)` the left side holds while a strict threshold at the same
/// value never contains a point of mass exactly `μ(A)`, so finitely generated
/// filters essentially never pass it.
pub fn implements_strict(filter: &Filter, mu: &SubProb) -> Result<bool> {
    filter.space().ensure_same(mu.space())?;
    for event in mu.space().all_subsets() {
        let m = measure_of(mu, &event)?;
        let crit = filter.critical_value(&indicator(&event));
        // {q ∈ [0,1] | β(A,>q) ∈ Q} = [0, crit) must equal [0, m].
        let agrees = crit.is_some_and(|c| c > one() && m == one());
        if !agrees {
            return Ok(false);
        }
    }
    Ok(true)
}
