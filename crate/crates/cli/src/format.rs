//! The on-disk JSON format.
//!
//! Every document is one JSON object carrying `"format": 1` and a `"kind"`
//! tag. States are referenced by name, rationals are strings `"p/q"`, and
//! everything a document lists per state is keyed by state name. Saving
//! always writes states in the order of their space, so a saved document
//! loads back to the same model and saves to the same bytes.

use std::fmt;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use stocheff::charrel::{CharRel, DownSet};
use stocheff::effectivity::{lift_kernel, lift_nlmp, lift_transition_system, EffFn, Filter};
use stocheff::equiv::Congruence;
use stocheff::geometry::{GenKind, Generator};
use stocheff::kernels::Kernel;
use stocheff::logiclang::NeighborhoodModel;
use stocheff::rational::{format_rational, parse_rational};
use stocheff::{FinSpace, Partition, SubProb, Subset};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read `{path}`: {cause}")]
    Io { path: String, cause: std::io::Error },
    #[error("malformed document: {0}")]
    Json(serde_json::Error),
    #[error("unsupported format version {0}; expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("{context}: {cause}")]
    Model { context: String, cause: stocheff::Error },
    #[error("{0}")]
    Invalid(String),
}

// Displayed inline rather than chained, so `{:#}` reports each cause once.
impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json(e)
    }
}

type Result<T> = std::result::Result<T, FormatError>;

trait Context<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T>;
}

impl<T> Context<T> for stocheff::Result<T> {
    fn context(self, what: impl FnOnce() -> String) -> Result<T> {
        self.map_err(|cause| FormatError::Model { context: what(), cause })
    }
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    format: u32,
    #[serde(flatten)]
    body: Body,
}

#[derive(Serialize, Deserialize)]
struct GenDoc {
    kind: String,
    points: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
struct SectionDoc {
    event: Vec<String>,
    section: String,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
enum Body {
    Space {
        states: Vec<String>,
    },
    Kernel {
        dom: Vec<String>,
        cod: Vec<String>,
        rows: IndexMap<String, Vec<String>>,
    },
    Effectivity {
        dom: Vec<String>,
        cod: Vec<String>,
        portfolio: IndexMap<String, Vec<GenDoc>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        valuation: Option<IndexMap<String, Vec<String>>>,
    },
    NbhdModel {
        states: Vec<String>,
        games: IndexMap<String, IndexMap<String, Vec<Vec<String>>>>,
    },
    Charrel {
        states: Vec<String>,
        sections: Vec<SectionDoc>,
    },
    Congruence {
        dom: Vec<String>,
        cod: Vec<String>,
        alpha: Vec<Vec<String>>,
        beta: Vec<Vec<String>>,
    },
    TransitionSystem {
        states: Vec<String>,
        edges: Vec<(String, String)>,
    },
    Nlmp {
        dom: Vec<String>,
        cod: Vec<String>,
        kappa: IndexMap<String, GenDoc>,
    },
}

/// An effectivity function with an optional valuation of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffModel {
    pub eff: EffFn,
    pub valuation: Option<IndexMap<String, Subset>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionSystem {
    pub space: FinSpace,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nlmp {
    pub dom: FinSpace,
    pub cod: FinSpace,
    pub kappa: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Space(FinSpace),
    Kernel(Kernel),
    Effectivity(EffModel),
    Nbhd(NeighborhoodModel),
    CharRel(CharRel),
    Congruence(Congruence),
    TransitionSystem(TransitionSystem),
    Nlmp(Nlmp),
}

impl Model {
    pub fn kind(&self) -> &'static str {
        match self {
            Model::Space(_) => "space",
            Model::Kernel(_) => "kernel",
            Model::Effectivity(_) => "effectivity",
            Model::Nbhd(_) => "nbhd-model",
            Model::CharRel(_) => "charrel",
            Model::Congruence(_) => "congruence",
            Model::TransitionSystem(_) => "transition-system",
            Model::Nlmp(_) => "nlmp",
        }
    }

    /// The effectivity function a document denotes, lifting kernels,
    /// transition systems and nondeterministic processes.
    pub fn to_eff(&self) -> Option<stocheff::Result<EffFn>> {
        match self {
            Model::Kernel(k) => Some(Ok(lift_kernel(k))),
            Model::Effectivity(m) => Some(Ok(m.eff.clone())),
            Model::TransitionSystem(ts) => Some(lift_transition_system(&ts.space, &ts.edges)),
            Model::Nlmp(n) => Some(lift_nlmp(&n.dom, &n.cod, n.kappa.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&save(self))
    }
}

fn space_of(names: &[String], role: &str) -> Result<FinSpace> {
    FinSpace::new(names.iter().cloned()).context(|| format!("{role} space"))
}

fn rationals(texts: &[String], space: &FinSpace, context: &dyn Fn() -> String) -> Result<SubProb> {
    let weights = texts
        .iter()
        .map(|t| parse_rational(t))
        .collect::<stocheff::Result<Vec<_>>>()
        .context(context)?;
    SubProb::new(space, weights).context(context)
}

fn generator(doc: &GenDoc, space: &FinSpace, context: &dyn Fn() -> String) -> Result<Generator> {
    let kind = match doc.kind.as_str() {
        "points" => GenKind::Points,
        "hull" => GenKind::Hull,
        other => {
            return Err(FormatError::Invalid(format!(
                "{}: unknown generator kind `{other}`; expected `points` or `hull`",
                context()
            )))
        }
    };
    let points = doc
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| rationals(p, space, &|| format!("{}, point {}", context(), i + 1)))
        .collect::<Result<Vec<_>>>()?;
    Generator::new(kind, points).context(context)
}

/// Looks up one entry per state of `space`, rejecting missing and unknown names.
fn per_state<'a, V>(map: &'a IndexMap<String, V>, space: &FinSpace, what: &str) -> Result<Vec<&'a V>> {
    for key in map.keys() {
        space.index_of(key).context(|| format!("{what} entry"))?;
    }
    space
        .states()
        .iter()
        .map(|s| {
            map.get(s)
                .ok_or_else(|| FormatError::Invalid(format!("{what} has no entry for state `{s}`")))
        })
        .collect()
}

fn subset(space: &FinSpace, names: &[String], what: &dyn Fn() -> String) -> Result<Subset> {
    space.subset(names).context(what)
}

fn from_body(body: Body) -> Result<Model> {
    Ok(match body {
        Body::Space { states } => Model::Space(space_of(&states, "state")?),
        Body::Kernel { dom, cod, rows } => {
            let (dom, cod) = (space_of(&dom, "domain")?, space_of(&cod, "codomain")?);
            let rows = per_state(&rows, &dom, "kernel rows")?
                .into_iter()
                .zip(dom.states())
                .map(|(r, s)| rationals(r, &cod, &|| format!("kernel row `{s}`")))
                .collect::<Result<Vec<_>>>()?;
            Model::Kernel(Kernel::new(&dom, &cod, rows).context(|| "kernel".into())?)
        }
        Body::Effectivity {
            dom,
            cod,
            portfolio,
            valuation,
        } => {
            let (dom, cod) = (space_of(&dom, "domain")?, space_of(&cod, "codomain")?);
            let filters = per_state(&portfolio, &dom, "portfolio")?
                .into_iter()
                .zip(dom.states())
                .map(|(gens, s)| {
                    let gens = gens
                        .iter()
                        .enumerate()
                        .map(|(i, g)| generator(g, &cod, &|| format!("portfolio of `{s}`, generator {}", i + 1)))
                        .collect::<Result<Vec<_>>>()?;
                    Filter::new(&cod, gens).context(|| format!("portfolio of `{s}`"))
                })
                .collect::<Result<Vec<_>>>()?;
            let eff = EffFn::new(&dom, &cod, filters).context(|| "effectivity function".into())?;
            let valuation = valuation
                .map(|v| {
                    v.into_iter()
                        .map(|(atom, names)| {
                            let set = subset(&dom, &names, &|| format!("valuation of `{atom}`"))?;
                            Ok((atom, set))
                        })
                        .collect::<Result<IndexMap<_, _>>>()
                })
                .transpose()?;
            if valuation.is_some() && dom != cod {
                return Err(FormatError::Invalid(
                    "a valuation needs an effectivity function from a space to itself".into(),
                ));
            }
            Model::Effectivity(EffModel { eff, valuation })
        }
        Body::NbhdModel { states, games } => {
            let space = space_of(&states, "state")?;
            let mut table = std::collections::BTreeMap::new();
            for (name, rows) in games {
                for key in rows.keys() {
                    space.index_of(key).context(|| format!("game `{name}`"))?;
                }
                let per = space
                    .states()
                    .iter()
                    .map(|s| {
                        rows.get(s)
                            .map(|sets| {
                                sets.iter()
                                    .map(|names| subset(&space, names, &|| format!("game `{name}` at `{s}`")))
                                    .collect::<Result<Vec<_>>>()
                            })
                            .unwrap_or_else(|| Ok(Vec::new()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                table.insert(name, per);
            }
            Model::Nbhd(NeighborhoodModel::new(&space, table).context(|| "neighborhood model".into())?)
        }
        Body::Charrel { states, sections } => {
            let space = space_of(&states, "state")?;
            let mut slots: Vec<Option<DownSet>> = vec![None; 1usize << space.len()];
            for doc in sections {
                let event = subset(&space, &doc.event, &|| "section event".into())?;
                let section = doc
                    .section
                    .parse::<DownSet>()
                    .context(|| format!("section of {event}"))?;
                let slot = &mut slots[event.bits() as usize];
                if slot.is_some() {
                    return Err(FormatError::Invalid(format!("event {event} is listed twice")));
                }
                *slot = Some(section);
            }
            let sections = slots
                .into_iter()
                .enumerate()
                .map(|(bits, s)| {
                    s.ok_or_else(|| {
                        let event = space.subset_from_bits(bits as u64).expect("bits within the space");
                        FormatError::Invalid(format!("no section for event {event}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Model::CharRel(CharRel::new(&space, sections).context(|| "characteristic relation".into())?)
        }
        Body::Congruence { dom, cod, alpha, beta } => {
            let (dom, cod) = (space_of(&dom, "domain")?, space_of(&cod, "codomain")?);
            let alpha = Partition::from_names(&dom, &alpha).context(|| "alpha".into())?;
            let beta = Partition::from_names(&cod, &beta).context(|| "beta".into())?;
            Model::Congruence(Congruence::new(alpha, beta))
        }
        Body::TransitionSystem { states, edges } => {
            let space = space_of(&states, "state")?;
            let edges = edges
                .iter()
                .map(|(a, b)| {
                    let ctx = || format!("edge ({a}, {b})");
                    Ok((space.index_of(a).context(ctx)?, space.index_of(b).context(ctx)?))
                })
                .collect::<Result<Vec<_>>>()?;
            Model::TransitionSystem(TransitionSystem { space, edges })
        }
        Body::Nlmp { dom, cod, kappa } => {
            let (dom, cod) = (space_of(&dom, "domain")?, space_of(&cod, "codomain")?);
            let kappa = per_state(&kappa, &dom, "kappa")?
                .into_iter()
                .zip(dom.states())
                .map(|(g, s)| generator(g, &cod, &|| format!("kappa of `{s}`")))
                .collect::<Result<Vec<_>>>()?;
            Model::Nlmp(Nlmp { dom, cod, kappa })
        }
    })
}

pub fn load_str(text: &str) -> Result<Model> {
    let env: Envelope = serde_json::from_str(text)?;
    if env.format != FORMAT_VERSION {
        return Err(FormatError::Version(env.format));
    }
    from_body(env.body)
}

pub fn load_file(path: &Path) -> Result<Model> {
    let text = std::fs::read_to_string(path).map_err(|cause| FormatError::Io {
        path: path.display().to_string(),
        cause,
    })?;
    load_str(&text)
}

fn names(space: &FinSpace) -> Vec<String> {
    space.states().to_vec()
}

fn set_names(set: &Subset) -> Vec<String> {
    set.names().into_iter().map(String::from).collect()
}

fn point_doc(mu: &SubProb) -> Vec<String> {
    mu.weights().iter().map(format_rational).collect()
}

fn gen_doc(g: &Generator) -> GenDoc {
    GenDoc {
        kind: match g.kind() {
            GenKind::Points => "points".into(),
            GenKind::Hull => "hull".into(),
        },
        points: g.points().iter().map(point_doc).collect(),
    }
}

fn blocks(p: &Partition) -> Vec<Vec<String>> {
    p.blocks().iter().map(set_names).collect()
}

fn to_body(model: &Model) -> Body {
    match model {
        Model::Space(s) => Body::Space { states: names(s) },
        Model::Kernel(k) => Body::Kernel {
            dom: names(k.dom()),
            cod: names(k.cod()),
            rows: k
                .dom()
                .states()
                .iter()
                .zip(k.rows())
                .map(|(s, r)| (s.clone(), point_doc(r)))
                .collect(),
        },
        Model::Effectivity(m) => Body::Effectivity {
            dom: names(m.eff.dom()),
            cod: names(m.eff.cod()),
            portfolio: m
                .eff
                .dom()
                .states()
                .iter()
                .zip(m.eff.portfolios())
                .map(|(s, f)| (s.clone(), f.generators().iter().map(gen_doc).collect()))
                .collect(),
            valuation: m
                .valuation
                .as_ref()
                .map(|v| v.iter().map(|(a, set)| (a.clone(), set_names(set))).collect()),
        },
        Model::Nbhd(n) => Body::NbhdModel {
            states: names(n.space()),
            games: n
                .games()
                .iter()
                .map(|(name, rows)| {
                    let per = n
                        .space()
                        .states()
                        .iter()
                        .zip(rows)
                        .map(|(s, sets)| (s.clone(), sets.iter().map(set_names).collect()))
                        .collect();
                    (name.clone(), per)
                })
                .collect(),
        },
        Model::CharRel(r) => Body::Charrel {
            states: names(r.space()),
            sections: r
                .space()
                .all_subsets()
                .map(|e| SectionDoc {
                    section: r.section(&e).to_string(),
                    event: set_names(&e),
                })
                .collect(),
        },
        Model::Congruence(c) => Body::Congruence {
            dom: names(c.alpha.space()),
            cod: names(c.beta.space()),
            alpha: blocks(&c.alpha),
            beta: blocks(&c.beta),
        },
        Model::TransitionSystem(ts) => Body::TransitionSystem {
            states: names(&ts.space),
            edges: ts
                .edges
                .iter()
                .map(|&(a, b)| (ts.space.name(a).to_string(), ts.space.name(b).to_string()))
                .collect(),
        },
        Model::Nlmp(n) => Body::Nlmp {
            dom: names(&n.dom),
            cod: names(&n.cod),
            kappa: n
                .dom
                .states()
                .iter()
                .zip(&n.kappa)
                .map(|(s, g)| (s.clone(), gen_doc(g)))
                .collect(),
        },
    }
}

/// Pretty-printed JSON with a trailing newline.
pub fn save(model: &Model) -> String {
    let env = Envelope {
        format: FORMAT_VERSION,
        body: to_body(model),
    };
    let value = serde_json::to_value(&env).expect("documents always serialize");
    let mut text = String::new();
    write_value(&mut text, &value, 0);
    text.push('\n');
    text
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_array() && !i.is_object()),
        Value::Object(map) => map.is_empty(),
        _ => true,
    }
}

/// Pretty JSON that keeps arrays of scalars, and arrays of those, on one line.
fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) if items.iter().all(is_flat) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(out, item, indent);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

/// Parses a comma-separated list of state names; the empty string is `∅`.
pub fn parse_subset(space: &FinSpace, text: &str) -> stocheff::Result<Subset> {
    let names: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    space.subset(names)
}

/// Parses `a,b|c` into a partition of `space`.
pub fn parse_partition(space: &FinSpace, text: &str) -> stocheff::Result<Partition> {
    let blocks: Vec<Vec<String>> = text
        .split('|')
        .map(|b| b.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
        .collect();
    Partition::from_names(space, &blocks)
}
