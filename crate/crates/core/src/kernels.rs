//! Stochastic relations (sub-Markov kernels) between finite spaces.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::finspace::{pushforward, FinSpace, MeasMap, SubProb};
use crate::rational::Rational;

/// One subprobability row over `cod` per state of `dom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Kernel {
    dom: FinSpace,
    cod: FinSpace,
    rows: Vec<SubProb>,
}

impl Kernel {
    pub fn new(dom: &FinSpace, cod: &FinSpace, rows: Vec<SubProb>) -> Result<Self> {
        if rows.len() != dom.len() {
            return Err(Error::InvalidMap(format!(
                "kernel needs {} rows, got {}",
                dom.len(),
                rows.len()
            )));
        }
        for row in &rows {
            cod.ensure_same(row.space())?;
        }
        Ok(Kernel {
            dom: dom.clone(),
            cod: cod.clone(),
            rows,
        })
    }

    /// Builds a kernel from raw weight rows, naming the offending state on error.
    pub fn from_weights(dom: &FinSpace, cod: &FinSpace, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(s, w)| {
                SubProb::new(cod, w).map_err(|e| match e {
                    Error::InvalidMeasure(reason) => Error::InvalidRow {
                        state: dom.states().get(s).cloned().unwrap_or_default(),
                        reason,
                    },
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dom, cod, rows)
    }

    pub fn identity(space: &FinSpace) -> Self {
        Kernel {
            dom: space.clone(),
            cod: space.clone(),
            rows: (0..space.len()).map(|s| SubProb::dirac(space, s)).collect(),
        }
    }

    pub fn zero(dom: &FinSpace, cod: &FinSpace) -> Self {
        Kernel {
            dom: dom.clone(),
            cod: cod.clone(),
            rows: vec![SubProb::zero(cod); dom.len()],
        }
    }

    pub fn dom(&self) -> &FinSpace {
        &self.dom
    }

    pub fn cod(&self) -> &FinSpace {
        &self.cod
    }

    pub fn row(&self, state: usize) -> &SubProb {
        &self.rows[state]
    }

    pub fn rows(&self) -> &[SubProb] {
        &self.rows
    }

    /// `Σ_j α_j · K_j` for kernels over common spaces; the caller keeps `Σ α_j ≤ 1`.
    pub fn mixture(kernels: &[Kernel], alphas: &[Rational]) -> Result<Kernel> {
        let first = kernels.first().ok_or(Error::EmptyFamily)?;
        for k in kernels {
            first.dom.ensure_same(&k.dom)?;
            first.cod.ensure_same(&k.cod)?;
        }
        let rows = (0..first.dom.len())
            .map(|s| {
                let weights = (0..first.cod.len())
                    .map(|t| {
                        kernels
                            .iter()
                            .zip(alphas)
                            .map(|(k, a)| a * k.rows[s].weight(t))
                            .sum()
                    })
                    .collect();
                SubProb::new(&first.cod, weights)
            })
            .collect::<Result<Vec<_>>>()?;
        Kernel::new(&first.dom, &first.cod, rows)
    }
}

/// Kleisli product: `(K∗L)(s)({u}) = Σ_t K(s)({t})·L(t)({u})`.
pub fn kleisli(k: &Kernel, l: &Kernel) -> Result<Kernel> {
    k.cod.ensure_same(&l.dom)?;
    let rows = k
        .rows
        .iter()
        .map(|row| {
            let mut weights = vec![Rational::zero(); l.cod.len()];
            for (t, kt) in row.weights().iter().enumerate() {
                if kt.is_zero() {
                    continue;
                }
                for (u, lu) in l.rows[t].weights().iter().enumerate() {
                    weights[u] += kt * lu;
                }
            }
            SubProb::new(&l.cod, weights)
        })
        .collect::<Result<Vec<_>>>()?;
    Kernel::new(&k.dom, &l.cod, rows)
}

/// `L(f(s)) = (𝕊g)(K(s))` for every state `s`.
pub fn is_kernel_morphism(f: &MeasMap, g: &MeasMap, k: &Kernel, l: &Kernel) -> Result<bool> {
    f.dom().ensure_same(&k.dom)?;
    f.cod().ensure_same(&l.dom)?;
    g.dom().ensure_same(&k.cod)?;
    g.cod().ensure_same(&l.cod)?;
    for s in 0..k.dom.len() {
        if l.rows[f.apply(s)] != pushforward(g, &k.rows[s])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The kernel `L` on the image spaces making `(f, g): K → L` a morphism, when
/// `f`-related states push forward to the same row. Unhit `f`-targets get the zero row.
pub fn aggregate_kernel(f: &MeasMap, g: &MeasMap, k: &Kernel) -> Result<Option<Kernel>> {
    f.dom().ensure_same(&k.dom)?;
    g.dom().ensure_same(&k.cod)?;
    let mut rows: Vec<Option<SubProb>> = vec![None; f.cod().len()];
    for s in 0..k.dom.len() {
        let pushed = pushforward(g, &k.rows[s])?;
        match &rows[f.apply(s)] {
            Some(existing) if *existing != pushed => return Ok(None),
            _ => rows[f.apply(s)] = Some(pushed),
        }
    }
    let rows = rows
        .into_iter()
        .map(|r| r.unwrap_or_else(|| SubProb::zero(g.cod())))
        .collect();
    Kernel::new(f.cod(), g.cod(), rows).map(Some)
}
