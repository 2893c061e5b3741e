//! Convolution of effectivity functions and its agreement with the Kleisli product.
//!
//! For `Q: T ↠ U` and an event `E ⊆ U`, the set `{r ∈ [0,1] | t ∈ Q̂(E, r)}` is
//! the interval `[0, m_t)` given by the `>`-profile of `Q`. Hence
//! `∫₀¹ ν(Q̂(E, r)) dr = Σ_t ν({t})·m_t`, a linear functional in `ν`, and the
//! convolution asks whether its strict super-level set lies in `P(s)`.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::effectivity::{lift_kernel, profile, weighted_profile, EffFn, ProfileRel};
use crate::error::Result;
use crate::finspace::{measure_of, FinSpace, Subset};
use crate::kernels::{kleisli, Kernel};
use crate::rational::{check_unit_interval, midpoint, one, Rational};

/// `m_t(E)`: Lebesgue measure of `{r ∈ [0,1] | β(E, >r) ∈ Q(t)}`.
pub fn averaging_threshold(q: &EffFn, event: &Subset) -> Result<Vec<Rational>> {
    let pr = profile(q, event, ProfileRel::Gt)?;
    Ok(pr
        .critical
        .into_iter()
        .map(|m| m.unwrap_or_else(Rational::zero))
        .collect())
}

/// The predicate `ν ↦ Σ_t ν({t})·weights[t] > bound` describing `G_Q(E, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedQuery {
    pub space: FinSpace,
    pub weights: Vec<Rational>,
    pub bound: Rational,
}

impl WeightedQuery {
    pub fn holds(&self, nu: &crate::finspace::SubProb) -> Result<bool> {
        self.space.ensure_same(nu.space())?;
        Ok(nu.dot(&self.weights) > self.bound)
    }
}

pub fn g_set(q: &EffFn, event: &Subset, bound: &Rational) -> Result<WeightedQuery> {
    check_unit_interval(bound)?;
    Ok(WeightedQuery {
        space: q.dom().clone(),
        weights: averaging_threshold(q, event)?,
        bound: bound.clone(),
    })
}

/// `(P̂∗Q̂)(E, q) = {s | G_Q(E, q) ∈ P(s)}`.
pub fn convolve(p: &EffFn, q: &EffFn, event: &Subset, bound: &Rational) -> Result<Subset> {
    p.cod().ensure_same(q.dom())?;
    let g = g_set(q, event, bound)?;
    let critical = weighted_profile(p, &g.weights);
    let bits = critical
        .iter()
        .enumerate()
        .filter(|(_, m)| m.as_ref().is_some_and(|m| *m > g.bound))
        .fold(0u64, |acc, (s, _)| acc | 1 << s);
    p.dom().subset_from_bits(bits)
}

/// Signature of a convolution implementation, so alternatives can be checked.
pub type Convolver = dyn Fn(&EffFn, &EffFn, &Subset, &Rational) -> Result<Subset>;

/// Breakpoints for a piecewise-constant function of `q ∈ [0,1]` whose jumps
/// lie in `values`: the values, midpoints between consecutive ones, 0 and 1.
pub fn breakpoints(values: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    let mut sorted: BTreeSet<Rational> = values.into_iter().collect();
    sorted.insert(Rational::zero());
    sorted.insert(one());
    let sorted: Vec<Rational> = sorted.into_iter().collect();
    let mut out = sorted.clone();
    out.extend(sorted.windows(2).map(|w| midpoint(&w[0], &w[1])));
    out.sort();
    out.retain(|v| *v >= Rational::zero() && *v <= one());
    out
}

/// `P̂_K ∗ P̂_L = P̂_{K∗L}` at every event and every breakpoint threshold.
pub fn check_conv_ok(k: &Kernel, l: &Kernel) -> Result<bool> {
    check_conv_ok_with(k, l, &convolve)
}

pub fn check_conv_ok_with(k: &Kernel, l: &Kernel, conv: &Convolver) -> Result<bool> {
    let kl = kleisli(k, l)?;
    let (pk, pl, pkl) = (lift_kernel(k), lift_kernel(l), lift_kernel(&kl));
    for event in l.cod().all_subsets() {
        let values = kl
            .rows()
            .iter()
            .map(|row| measure_of(row, &event))
            .collect::<Result<Vec<_>>>()?;
        let pr = profile(&pkl, &event, ProfileRel::Gt)?;
        for q in breakpoints(values) {
            let lhs = conv(&pk, &pl, &event, &q)?;
            let bits = (0..k.dom().len())
                .filter(|&s| pr.contains(s, &q))
                .fold(0u64, |acc, s| acc | 1 << s);
            if lhs.bits() != bits {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
