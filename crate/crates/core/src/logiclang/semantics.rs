//! Evaluation of threshold formulas over stochastic effectivity functions and
//! of game terms over classical neighborhood models.

use std::collections::BTreeMap;

use crate::effectivity::{profile, EffFn, ProfileRel};
use crate::error::{Error, Result};
use crate::finspace::{FinSpace, Subset};

use super::syntax::{Formula, GameTerm};

/// A stochastic effectivity function on one space plus a valuation of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StochModel {
    space: FinSpace,
    eff: EffFn,
    valuation: BTreeMap<String, Subset>,
}

impl StochModel {
    pub fn new(eff: EffFn, valuation: BTreeMap<String, Subset>) -> Result<Self> {
        eff.dom().ensure_same(eff.cod())?;
        for event in valuation.values() {
            eff.dom().ensure_same(event.space())?;
        }
        Ok(StochModel {
            space: eff.dom().clone(),
            eff,
            valuation,
        })
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn eff(&self) -> &EffFn {
        &self.eff
    }

    pub fn valuation(&self) -> &BTreeMap<String, Subset> {
        &self.valuation
    }
}

/// `⟦φ⟧`, with `⟦dia[q] φ⟧ = {s | β(⟦φ⟧, >q) ∈ P(s)}`.
pub fn eval_formula(model: &StochModel, phi: &Formula) -> Result<Subset> {
    match phi {
        Formula::Top => Ok(model.space.full_set()),
        Formula::Atom(name) => model
            .valuation
            .get(name)
            .cloned()
            .ok_or_else(|| Error::UnboundAtom(name.clone())),
        Formula::And(l, r) => eval_formula(model, l)?.intersection(&eval_formula(model, r)?),
        Formula::Dia(q, body) => {
            let event = eval_formula(model, body)?;
            let pr = profile(&model.eff, &event, ProfileRel::Gt)?;
            let bits = (0..model.space.len())
                .filter(|&s| pr.contains(s, q))
                .fold(0u64, |acc, s| acc | 1 << s);
            model.space.subset_from_bits(bits)
        }
    }
}

/// Primitive games given by minimal winning sets per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodModel {
    space: FinSpace,
    games: BTreeMap<String, Vec<Vec<Subset>>>,
}

fn minimal_antichain(mut sets: Vec<Subset>) -> Vec<Subset> {
    sets.sort_by_key(|s| (s.len(), s.bits()));
    sets.dedup();
    let mut out: Vec<Subset> = Vec::new();
    for s in sets {
        if !out.iter().any(|m| m.bits() & !s.bits() == 0) {
            out.push(s);
        }
    }
    out.sort_by_key(Subset::bits);
    out
}

impl NeighborhoodModel {
    /// `games[name][s]` lists generators of the upward-closed family `N_name(s)`.
    /// Non-minimal generators are dropped.
    pub fn new(space: &FinSpace, games: BTreeMap<String, Vec<Vec<Subset>>>) -> Result<Self> {
        let mut normalized = BTreeMap::new();
        for (name, per_state) in games {
            if per_state.len() != space.len() {
                return Err(Error::InvalidMap(format!(
                    "game `{name}` lists {} states, space has {}",
                    per_state.len(),
                    space.len()
                )));
            }
            let mut rows = Vec::with_capacity(per_state.len());
            for gens in per_state {
                for g in &gens {
                    space.ensure_same(g.space())?;
                }
                rows.push(minimal_antichain(gens));
            }
            normalized.insert(name, rows);
        }
        Ok(NeighborhoodModel {
            space: space.clone(),
            games: normalized,
        })
    }

    pub fn space(&self) -> &FinSpace {
        &self.space
    }

    pub fn games(&self) -> &BTreeMap<String, Vec<Vec<Subset>>> {
        &self.games
    }

    fn primitive(&self, name: &str, target: u64) -> Result<u64> {
        let rows = self
            .games
            .get(name)
            .ok_or_else(|| Error::UnboundGame(name.to_string()))?;
        Ok(rows
            .iter()
            .enumerate()
            .filter(|(_, gens)| gens.iter().any(|g| g.bits() & !target == 0))
            .fold(0u64, |acc, (s, _)| acc | 1 << s))
    }

    fn eval_bits(&self, g: &GameTerm, target: u64) -> Result<u64> {
        let full = self.space.full_set().bits();
        match g {
            GameTerm::Prim(name) => self.primitive(name, target),
            GameTerm::Union(l, r) => Ok(self.eval_bits(l, target)? | self.eval_bits(r, target)?),
            GameTerm::Seq(l, r) => {
                let inner = self.eval_bits(r, target)?;
                self.eval_bits(l, inner)
            }
            GameTerm::Star(body) => {
                let mut seen: Vec<u64> = Vec::new();
                let mut current = target;
                while !seen.contains(&current) {
                    seen.push(current);
                    current = self.eval_bits(body, current)?;
                }
                Ok(seen.iter().fold(0, |acc, s| acc | s))
            }
            GameTerm::Dual(body) => Ok(full & !self.eval_bits(body, full & !target)?),
        }
    }
}

/// `N̆_g(A)`: the states from which the first player can force the outcome into `A`.
pub fn eval_game(model: &NeighborhoodModel, g: &GameTerm, target: &Subset) -> Result<Subset> {
    model.space.ensure_same(target.space())?;
    let bits = model.eval_bits(g, target.bits())?;
    model.space.subset_from_bits(bits)
}
