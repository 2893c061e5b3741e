//! Exact convex geometry over subprobability vectors.
//!
//! A [`Generator`] is either a finite point set or the closed convex hull of
//! its points. Linear functionals attain their extrema over a hull at listed
//! points, so every threshold question reduces to evaluating the point list.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::finspace::{measure_of, pushforward, FinSpace, MeasMap, SubProb, Subset};
use crate::lp;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// The finite set of listed points.
    Points,
    /// The closed convex hull of the listed points.
    Hull,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    kind: GenKind,
    space: FinSpace,
    points: Vec<SubProb>,
}

impl Generator {
    pub fn new(kind: GenKind, points: Vec<SubProb>) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyGenerator)?;
        let space = first.space().clone();
        for p in &points[1..] {
            space.ensure_same(p.space())?;
        }
        Ok(Generator {
            kind,
            space,
            points,
        })
    }

    pub fn points_of(points: Vec<SubProb>) -> Result<Self> {
        Self::new(GenKind::Points, points)
    }

    pub fn hull_of(points: Vec<SubProb>) -> Result<Self> {
        Self::new(GenKind::Hull, points)
    }

    pub fn single(point: SubProb) -> Self {
        Generator {
            kind: GenKind::Points,
            space: point.space().clone(),
            points: vec![point],
        }
    }

    pub fn kind(&self) -> GenKind {
        self.kind
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn points(&self) -> &[SubProb] {
        &self.points
    }

    /// The point this generator denotes when it denotes exactly one.
    pub fn single_point(&self) -> Option<&SubProb> {
        let first = &self.points[0];
        self.points[1..].iter().all(|p| p == first).then_some(first)
    }

    /// Min and max of `μ ↦ Σ_t weights[t]·μ({t})` over the generator.
    pub(crate) fn weighted_extrema(&self, weights: &[Rational]) -> (Rational, Rational) {
        let mut values = self.points.iter().map(|p| p.dot(weights));
        let first = values.next().expect("generators are nonempty");
        values.fold((first.clone(), first), |(lo, hi), v| {
            if v < lo {
                (v, hi)
            } else if v > hi {
                (lo, v)
            } else {
                (lo, hi)
            }
        })
    }
}

pub(crate) fn indicator(event: &Subset) -> Vec<Rational> {
    (0..event.space().len())
        .map(|i| {
            if event.contains(i) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// Min and max of `μ(A)` over `G`.
pub fn linear_extrema(gen: &Generator, event: &Subset) -> Result<(Rational, Rational)> {
    gen.space.ensure_same(event.space())?;
    Ok(gen.weighted_extrema(&indicator(event)))
}

/// Convex weights `λ` with `Σ λ_i p_i = μ`, re-verified before being returned.
pub fn hull_witness(mu: &SubProb, points: &[SubProb]) -> Result<Option<Vec<Rational>>> {
    let space = mu.space();
    for p in points {
        space.ensure_same(p.space())?;
    }
    let mut a: Vec<Vec<Rational>> = (0..space.len())
        .map(|t| points.iter().map(|p| p.weight(t).clone()).collect())
        .collect();
    a.push(vec![Rational::one(); points.len()]);
    let mut b: Vec<Rational> = mu.weights().to_vec();
    b.push(Rational::one());
    Ok(lp::nonnegative_solution(&a, &b).filter(|x| lp::verify_solution(&a, &b, x)))
}

pub fn point_in_generator(mu: &SubProb, gen: &Generator) -> Result<bool> {
    gen.space.ensure_same(mu.space())?;
    match gen.kind {
        GenKind::Points => Ok(gen.points.contains(mu)),
        GenKind::Hull => {
            if gen.points.contains(mu) {
                return Ok(true);
            }
            Ok(hull_witness(mu, &gen.points)?.is_some())
        }
    }
}

/// `true` iff the point set denoted by `inner` lies inside the one denoted by `outer`.
pub fn generator_subset(inner: &Generator, outer: &Generator) -> Result<bool> {
    inner.space.ensure_same(&outer.space)?;
    match (inner.kind, outer.kind) {
        // A hull of two distinct points is uncountable and cannot sit in a finite set.
        (GenKind::Hull, GenKind::Points) => Ok(inner
            .single_point()
            .is_some_and(|p| outer.points.contains(p))),
        // For a hull inside a convex set it suffices to check the vertices.
        _ => {
            for p in &inner.points {
                if !point_in_generator(p, outer)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

/// Direct image of a generator under `𝕊f`.
pub fn map_generator(f: &MeasMap, gen: &Generator) -> Result<Generator> {
    f.dom().ensure_same(&gen.space)?;
    let points = gen
        .points
        .iter()
        .map(|p| pushforward(f, p))
        .collect::<Result<Vec<_>>>()?;
    Ok(Generator {
        kind: gen.kind,
        space: f.cod().clone(),
        points,
    })
}

/// Evaluates `μ(A)` at every listed point; convenient for diagnostics.
pub fn point_values(gen: &Generator, event: &Subset) -> Result<Vec<Rational>> {
    gen.points.iter().map(|p| measure_of(p, event)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn ab() -> FinSpace {
        FinSpace::new(["a", "b"]).unwrap()
    }

    fn p(s: &FinSpace, w: &[(i64, i64)]) -> SubProb {
        SubProb::new(s, w.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn extrema_examples() {
        let s = ab();
        let a = s.subset(["a"]).unwrap();
        let hull = Generator::hull_of(vec![p(&s, &[(1, 1), (0, 1)]), p(&s, &[(0, 1), (1, 1)])]).unwrap();
        assert_eq!(linear_extrema(&hull, &a).unwrap(), (rat(0, 1), rat(1, 1)));
        let pts = Generator::points_of(vec![p(&s, &[(1, 2), (1, 4)]), p(&s, &[(1, 1), (0, 1)])]).unwrap();
        assert_eq!(linear_extrema(&pts, &a).unwrap(), (rat(1, 2), rat(1, 1)));
        let one = Generator::single(p(&s, &[(1, 3), (1, 3)]));
        assert_eq!(linear_extrema(&one, &s.full_set()).unwrap(), (rat(2, 3), rat(2, 3)));
    }

    #[test]
    fn membership_examples() {
        let s = ab();
        let hull = Generator::hull_of(vec![p(&s, &[(1, 1), (0, 1)]), p(&s, &[(0, 1), (1, 1)])]).unwrap();
        assert!(point_in_generator(&p(&s, &[(1, 2), (1, 2)]), &hull).unwrap());
        assert!(!point_in_generator(&p(&s, &[(1, 4), (1, 2)]), &hull).unwrap());
        let pts = Generator::single(p(&s, &[(0, 1), (1, 1)]));
        assert!(!point_in_generator(&p(&s, &[(1, 1), (0, 1)]), &pts).unwrap());
        let h1 = Generator::hull_of(vec![p(&s, &[(2, 3), (1, 3)])]).unwrap();
        assert!(point_in_generator(&p(&s, &[(2, 3), (1, 3)]), &h1).unwrap());
    }

    #[test]
    fn subset_examples() {
        let s = ab();
        let e1 = p(&s, &[(1, 1), (0, 1)]);
        let e2 = p(&s, &[(0, 1), (1, 1)]);
        let hull = Generator::hull_of(vec![e1.clone(), e2.clone()]).unwrap();
        let pts = Generator::points_of(vec![e1.clone(), e2.clone()]).unwrap();
        let mid = Generator::single(p(&s, &[(1, 2), (1, 2)]));
        assert!(generator_subset(&mid, &hull).unwrap());
        assert!(!generator_subset(&hull, &pts).unwrap());
        assert!(generator_subset(&pts, &hull).unwrap());
        assert!(generator_subset(&hull, &hull).unwrap());
        let degenerate = Generator::hull_of(vec![e1.clone(), e1.clone()]).unwrap();
        assert!(generator_subset(&degenerate, &pts).unwrap());
    }

    #[test]
    fn map_examples() {
        let s = ab();
        let x = FinSpace::new(["x"]).unwrap();
        let g = Generator::single(p(&s, &[(1, 2), (1, 4)]));
        assert_eq!(map_generator(&MeasMap::identity(&s), &g).unwrap(), g);
        let collapse = MeasMap::new(&s, &x, vec![0, 0]).unwrap();
        assert_eq!(
            map_generator(&collapse, &g).unwrap(),
            Generator::single(p(&x, &[(3, 4)]))
        );
        let swap = MeasMap::new(&s, &s, vec![1, 0]).unwrap();
        let hull = Generator::hull_of(vec![p(&s, &[(1, 1), (0, 1)]), p(&s, &[(0, 1), (1, 1)])]).unwrap();
        assert_eq!(
            map_generator(&swap, &hull).unwrap(),
            Generator::hull_of(vec![p(&s, &[(0, 1), (1, 1)]), p(&s, &[(1, 1), (0, 1)])]).unwrap()
        );
    }

    #[test]
    fn mixed_spaces_rejected() {
        let s = ab();
        let x = FinSpace::new(["x"]).unwrap();
        assert!(Generator::points_of(vec![SubProb::zero(&s), SubProb::zero(&x)]).is_err());
        assert_eq!(Generator::hull_of(vec![]), Err(Error::EmptyGenerator));
    }
}
