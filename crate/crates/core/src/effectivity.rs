//! Stochastic effectivity functions with finitely generated portfolios.
//!
//! A portfolio `P(s)` is the upward-closed family of all measurable sets of
//! distributions containing at least one generator. Because each generator is
//! a finite point set or a polytope, threshold membership is decided exactly by
//! evaluating vertices, and the `(state, threshold)` sections of every
//! threshold family are finite unions of intervals `{s} × [0, m_s)`. That is
//! the finite form of t-measurability, surfaced here as [`Profile`].

use std::fmt;

use crate::error::{Error, Result};
use crate::finspace::{FinSpace, Rel, SubProb, Subset, ThresholdQuery};
use crate::geometry::{indicator, GenKind, Generator};
use crate::kernels::Kernel;
use crate::rational::{format_rational, Rational};

/// A finitely generated upward-closed family; no generators means the empty family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Filter {
    space: FinSpace,
    generators: Vec<Generator>,
}

impl Filter {
    pub fn new(space: &FinSpace, generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            space.ensure_same(g.space())?;
        }
        Ok(Filter {
            space: space.clone(),
            generators,
        })
    }

    pub fn empty(space: &FinSpace) -> Self {
        Filter {
            space: space.clone(),
            generators: Vec::new(),
        }
    }

    pub fn principal(generator: Generator) -> Self {
        Filter {
            space: generator.space().clone(),
            generators: vec![generator],
        }
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// `max_G min_{μ∈G} Σ_t w_t μ({t})`, or `None` for the empty family.
    pub(crate) fn critical_value(&self, weights: &[Rational]) -> Option<Rational> {
        self.generators
            .iter()
            .map(|g| g.weighted_extrema(weights).0)
            .max()
    }

    pub fn contains_query(&self, query: &ThresholdQuery) -> Result<bool> {
        self.space.ensure_same(query.event.space())?;
        let w = indicator(&query.event);
        Ok(self.generators.iter().any(|g| {
            let (lo, hi) = g.weighted_extrema(&w);
            match query.rel {
                Rel::Gt => lo > query.bound,
                Rel::Ge => lo >= query.bound,
                Rel::Lt => hi < query.bound,
                Rel::Le => hi <= query.bound,
            }
        }))
    }
}

/// `P: S ↠ T`, one portfolio over the distributions on `cod` per state of `dom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EffFn {
    dom: FinSpace,
    cod: FinSpace,
    portfolio: Vec<Filter>,
}

impl EffFn {
    pub fn new(dom: &FinSpace, cod: &FinSpace, portfolio: Vec<Filter>) -> Result<Self> {
        if portfolio.len() != dom.len() {
            return Err(Error::InvalidMap(format!(
                "effectivity function needs {} portfolios, got {}",
                dom.len(),
                portfolio.len()
            )));
        }
        for f in &portfolio {
            cod.ensure_same(f.space())?;
        }
        Ok(EffFn {
            dom: dom.clone(),
            cod: cod.clone(),
            portfolio,
        })
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn portfolio(&self, state: usize) -> &Filter {
        &self.portfolio[state]
    }

    pub fn portfolios(&self) -> &[Filter] {
        &self.portfolio
    }
}

/// Is `β(q.event, q.rel q.bound)` in the portfolio `P(s)`?
pub fn member(p: &EffFn, state: usize, query: &ThresholdQuery) -> Result<bool> {
    let filter = p
        .portfolio
        .get(state)
        .ok_or_else(|| Error::UnknownState(format!("#{state}")))?;
    p.cod.ensure_same(query.event.space())?;
    filter.contains_query(query)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProfileRel {
    Gt,
    Ge,
}

impl From<ProfileRel> for Rel {
    fn from(r: ProfileRel) -> Rel {
        match r {
            ProfileRel::Gt => Rel::Gt,
            ProfileRel::Ge => Rel::Ge,
        }
    }
}

/// Per-state critical values of `{q | β(event, rel q) ∈ P(s)}`.
///
/// `None` marks an empty portfolio. Otherwise the section is `[0, m)` for
/// `Gt` and `[0, m]` for `Ge`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    pub event: Subset,
    pub rel: ProfileRel,
    pub critical: Vec<Option<Rational>>,
}

impl Profile {
    /// Membership of `q ∈ [0, 1]` in the section at `state`.
    pub fn contains(&self, state: usize, q: &Rational) -> bool {
        match &self.critical[state] {
            None => false,
            Some(m) => match self.rel {
                ProfileRel::Gt => q < m,
                ProfileRel::Ge => q <= m,
            },
        }
    }

    pub fn section_string(&self, state: usize) -> String {
        match (&self.critical[state], self.rel) {
            (None, _) => "empty".to_string(),
            (Some(m), ProfileRel::Gt) => format!("[0,{})", format_rational(m)),
            (Some(m), ProfileRel::Ge) => format!("[0,{}]", format_rational(m)),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let space = self.event.space();
        let parts: Vec<String> = (0..space.len())
            .map(|s| format!("{}: {}", space.name(s), self.section_string(s)))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

pub fn profile(p: &EffFn, event: &Subset, rel: ProfileRel) -> Result<Profile> {
    p.cod.ensure_same(event.space())?;
    let w = indicator(event);
    Ok(Profile {
        event: event.clone(),
        rel,
        critical: p.portfolio.iter().map(|f| f.critical_value(&w)).collect(),
    })
}

/// `P_K(s)` is the principal filter at the single distribution `K(s)`.
pub fn lift_kernel(k: &Kernel) -> EffFn {
    EffFn {
        dom: k.dom().clone(),
        cod: k.cod().clone(),
        portfolio: k
            .rows()
            .iter()
            .map(|row| Filter::principal(Generator::single(row.clone())))
            .collect(),
    }
}

fn check_family(kernels: &[Kernel]) -> Result<&Kernel> {
    let first = kernels.first().ok_or(Error::EmptyFamily)?;
    for k in kernels {
        first.dom().ensure_same(k.dom())?;
        first.cod().ensure_same(k.cod())?;
    }
    Ok(first)
}

/// Weak inverse: sets containing `K_n(s)` for some `n`.
pub fn lift_family_exists(kernels: &[Kernel]) -> Result<EffFn> {
    let first = check_family(kernels)?;
    let portfolio = (0..first.dom().len())
        .map(|s| Filter {
            space: first.cod().clone(),
            generators: kernels
                .iter()
                .map(|k| Generator::single(k.row(s).clone()))
                .collect(),
        })
        .collect();
    EffFn::new(first.dom(), first.cod(), portfolio)
}

/// Strong inverse: sets containing `K_n(s)` for every `n`.
pub fn lift_family_forall(kernels: &[Kernel]) -> Result<EffFn> {
    let first = check_family(kernels)?;
    let portfolio = (0..first.dom().len())
        .map(|s| {
            let points = kernels.iter().map(|k| k.row(s).clone()).collect();
            Generator::points_of(points).map(Filter::principal)
        })
        .collect::<Result<Vec<_>>>()?;
    EffFn::new(first.dom(), first.cod(), portfolio)
}

/// All mixtures `Σ α_j K_j` with `α_j ∈ {0, 1/d, …, 1}` and `Σ α_j ≤ 1`,
/// in lexicographic order of the weight numerators.
pub fn lift_convex_family(kernels: &[Kernel], denom_bound: u32) -> Result<Vec<Kernel>> {
    check_family(kernels)?;
    if denom_bound == 0 {
        return Err(Error::InvalidDenominatorBound);
    }
    let d = denom_bound as usize;
    let mut out = Vec::new();
    let mut numerators = vec![0usize; kernels.len()];
    loop {
        let alphas: Vec<Rational> = numerators
            .iter()
            .map(|&n| Rational::new((n as i64).into(), (d as i64).into()))
            .collect();
        out.push(Kernel::mixture(kernels, &alphas)?);
        // Odometer step over numerators with bounded sum.
        let mut pos = kernels.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            numerators[pos] += 1;
            if numerators.iter().sum::<usize>() <= d {
                break;
            }
            numerators[pos] = 0;
        }
    }
}

/// Weighted successors: `P(s)` is generated by the hull of the zero vector and
/// the unit vectors of the successors of `s`.
pub fn lift_transition_system(space: &FinSpace, edges: &[(usize, usize)]) -> Result<EffFn> {
    for &(s, t) in edges {
        if s >= space.len() || t >= space.len() {
            return Err(Error::InvalidMap(format!("edge ({s}, {t}) outside the space")));
        }
    }
    let portfolio = (0..space.len())
        .map(|s| {
            let mut points = vec![SubProb::zero(space)];
            for t in 0..space.len() {
                if edges.contains(&(s, t)) {
                    points.push(SubProb::dirac(space, t));
                }
            }
            Generator::hull_of(points).map(Filter::principal)
        })
        .collect::<Result<Vec<_>>>()?;
    EffFn::new(space, space, portfolio)
}

/// `P(s)` is the principal filter of supersets of `κ(s)`.
pub fn lift_nlmp(dom: &FinSpace, cod: &FinSpace, kappa: Vec<Generator>) -> Result<EffFn> {
    let portfolio = kappa.into_iter().map(Filter::principal).collect();
    EffFn::new(dom, cod, portfolio)
}

/// The kernel `K` with `P = P_K`, if every portfolio is a point ultrafilter.
pub fn detect_pointed(p: &EffFn) -> Option<Kernel> {
    let rows = p
        .portfolio
        .iter()
        .map(|f| {
            let mut points = f.generators.iter().map(Generator::single_point);
            let first = points.next()??;
            points
                .all(|q| q == Some(first))
                .then(|| first.clone())
        })
        .collect::<Option<Vec<_>>>()?;
    Kernel::new(&p.dom, &p.cod, rows).ok()
}

/// Critical value of a weighted functional at one filter, exposed for [`crate::compose`].
pub(crate) fn weighted_profile(p: &EffFn, weights: &[Rational]) -> Vec<Option<Rational>> {
    p.portfolio.iter().map(|f| f.critical_value(weights)).collect()
}

/// Kind-agnostic description of a generator, used in diagnostics.
pub fn describe_generator(g: &Generator) -> String {
    let kind = match g.kind() {
        GenKind::Points => "points",
        GenKind::Hull => "hull",
    };
    let pts: Vec<String> = g.points().iter().map(ToString::to_string).collect();
    format!("{kind}{{{}}}", pts.join(", "))
}
