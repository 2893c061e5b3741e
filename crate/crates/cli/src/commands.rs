//! Subcommands. Each returns its stdout text and an exit code; errors map to
//! code 2, or 3 when an equivalence search runs out of budget.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use stocheff::charrel::{check_rules, extract_measure};
use stocheff::compose::{check_conv_ok, convolve};
use stocheff::effectivity::{detect_pointed, profile, EffFn, ProfileRel};
use stocheff::equiv::{congruence_violation, cospan_from_logical, logically_equivalent, quotient, Congruence};
use stocheff::logiclang::{eval_formula, eval_game, parse_formula, parse_game, StochModel};
use stocheff::rational::{check_unit_interval, format_rational, parse_rational};
use stocheff::{MeasMap, Partition};

use crate::format::{load_file, parse_partition, parse_subset, save, EffModel, Model};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "stocheff", version, about = "Exact checks for finite stochastic effectivity functions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a model file; optionally print threshold profiles per event.
    Check {
        model: PathBuf,
        #[arg(long)]
        profiles: bool,
    },
    /// Print the states satisfying a threshold formula.
    Modelcheck {
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Print the states from which a game forces the target set.
    Gameeval {
        model: PathBuf,
        #[arg(long)]
        game: String,
        /// Comma-separated state names; empty for the empty set.
        #[arg(long, allow_hyphen_values = true)]
        target: String,
    },
    /// Print the convolution of two effectivity functions at an event and threshold.
    Compose {
        #[arg(value_name = "P.json")]
        first: PathBuf,
        #[arg(value_name = "Q.json")]
        second: PathBuf,
        #[arg(long)]
        event: String,
        #[arg(long = "q", value_name = "P/Q")]
        threshold: String,
        /// Also compare with the Kleisli product when both inputs are pointed.
        #[arg(long)]
        verify_kleisli: bool,
    },
    /// Verify a congruence and emit the quotient model.
    Quotient {
        model: PathBuf,
        /// Domain blocks such as `a,b|c`; discrete when omitted.
        #[arg(long)]
        alpha: Option<String>,
        /// Codomain blocks; discrete when omitted.
        #[arg(long)]
        beta: Option<String>,
        /// A congruence document instead of --alpha/--beta.
        #[arg(long, conflicts_with_all = ["alpha", "beta"])]
        congruence: Option<PathBuf>,
        /// Write the quotient here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide logical or behavioral equivalence and print a witness.
    Equiv {
        mode: EquivMode,
        #[arg(value_name = "P.json")]
        first: PathBuf,
        #[arg(value_name = "Q.json")]
        second: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        max_search: u64,
    },
    /// Check the deduction rules of a characteristic relation or extract its measure.
    Charrel { action: CharrelAction, relation: PathBuf },
    /// Emit the effectivity function induced by a kernel, transition system or process.
    Lift { from: LiftKind, input: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EquivMode {
    Logical,
    Behavioral,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum CharrelAction {
    Check,
    Extract,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LiftKind {
    Kernel,
    Ts,
    Nlmp,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn verdict(stdout: String, holds: bool) -> Self {
        Outcome {
            stdout,
            code: if holds { EXIT_TRUE } else { EXIT_FALSE },
        }
    }

    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: EXIT_TRUE }
    }
}

/// Exit code for a failed command.
pub fn error_code(err: &anyhow::Error) -> i32 {
    let bound = err
        .chain()
        .any(|e| matches!(e.downcast_ref::<stocheff::Error>(), Some(stocheff::Error::SearchBoundExceeded(_))));
    if bound {
        EXIT_BOUND
    } else {
        EXIT_INPUT
    }
}

fn load(path: &Path) -> Result<Model> {
    Ok(load_file(path)?)
}

fn load_eff(path: &Path) -> Result<EffFn> {
    let model = load(path)?;
    match model.to_eff() {
        Some(eff) => Ok(eff?),
        None => bail!(
            "`{}` is a {} document; expected an effectivity function, kernel, transition system or nlmp",
            path.display(),
            model.kind()
        ),
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Check { model, profiles } => check(model, *profiles),
        Command::Modelcheck { model, formula } => modelcheck(model, formula),
        Command::Gameeval { model, game, target } => gameeval(model, game, target),
        Command::Compose {
            first,
            second,
            event,
            threshold,
            verify_kleisli,
        } => compose(first, second, event, threshold, *verify_kleisli),
        Command::Quotient {
            model,
            alpha,
            beta,
            congruence,
            out,
        } => quotient_cmd(model, alpha.as_deref(), beta.as_deref(), congruence.as_deref(), out.as_deref()),
        Command::Equiv {
            mode,
            first,
            second,
            max_search,
        } => equiv(*mode, first, second, *max_search),
        Command::Charrel { action, relation } => charrel(*action, relation),
        Command::Lift { from, input } => lift(*from, input),
    }
}

fn summary(model: &Model) -> String {
    match model {
        Model::Space(s) => format!("space with {} states", s.len()),
        Model::Kernel(k) => format!("kernel from {} to {} states", k.dom().len(), k.cod().len()),
        Model::Effectivity(m) => format!(
            "effectivity function from {} to {} states{}",
            m.eff.dom().len(),
            m.eff.cod().len(),
            match &m.valuation {
                Some(v) => format!(" with {} atoms", v.len()),
                None => String::new(),
            }
        ),
        Model::Nbhd(n) => format!("neighborhood model with {} states and {} games", n.space().len(), n.games().len()),
        Model::CharRel(r) => format!("characteristic relation over {} states", r.space().len()),
        Model::Congruence(c) => format!("congruence {} / {}", c.alpha, c.beta),
        Model::TransitionSystem(ts) => format!("transition system with {} states and {} edges", ts.space.len(), ts.edges.len()),
        Model::Nlmp(n) => format!("nondeterministic process from {} to {} states", n.dom.len(), n.cod.len()),
    }
}

fn check(path: &Path, profiles: bool) -> Result<Outcome> {
    let model = load(path)?;
    let mut out = format!("ok: {}\n", summary(&model));
    if profiles {
        let eff = model
            .to_eff()
            .ok_or_else(|| anyhow!("--profiles needs an effectivity function, kernel, transition system or nlmp"))??;
        for event in eff.cod().all_subsets() {
            let gt = profile(&eff, &event, ProfileRel::Gt)?;
            let ge = profile(&eff, &event, ProfileRel::Ge)?;
            writeln!(out, "event {event}")?;
            for s in 0..eff.dom().len() {
                writeln!(
                    out,
                    "  {}: > {}  >= {}",
                    eff.dom().name(s),
                    gt.section_string(s),
                    ge.section_string(s)
                )?;
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn modelcheck(path: &Path, formula: &str) -> Result<Outcome> {
    let Model::Effectivity(EffModel { eff, valuation }) = load(path)? else {
        bail!("modelcheck needs an effectivity document with a valuation");
    };
    let phi = parse_formula(formula)?;
    let valuation = valuation.unwrap_or_default().into_iter().collect();
    let model = StochModel::new(eff, valuation)?;
    Ok(Outcome::ok(format!("{}\n", eval_formula(&model, &phi)?)))
}

fn gameeval(path: &Path, game: &str, target: &str) -> Result<Outcome> {
    let Model::Nbhd(model) = load(path)? else {
        bail!("gameeval needs a nbhd-model document");
    };
    let g = parse_game(game)?;
    let a = parse_subset(model.space(), target).context("--target")?;
    Ok(Outcome::ok(format!("{}\n", eval_game(&model, &g, &a)?)))
}

fn compose(first: &Path, second: &Path, event: &str, threshold: &str, verify: bool) -> Result<Outcome> {
    let (p, q) = (load_eff(first)?, load_eff(second)?);
    let e = parse_subset(q.cod(), event).context("--event")?;
    let bound = parse_rational(threshold).context("--q")?;
    check_unit_interval(&bound).context("--q")?;
    let mut out = format!("{}\n", convolve(&p, &q, &e, &bound)?);
    if !verify {
        return Ok(Outcome::ok(out));
    }
    match (detect_pointed(&p), detect_pointed(&q)) {
        (Some(k), Some(l)) => {
            let agrees = check_conv_ok(&k, &l)?;
            writeln!(out, "kleisli: {}", if agrees { "agrees" } else { "differs" })?;
            Ok(Outcome::verdict(out, agrees))
        }
        _ => {
            writeln!(out, "kleisli: skipped (inputs are not both pointed)")?;
            Ok(Outcome::ok(out))
        }
    }
}

fn quotient_cmd(
    path: &Path,
    alpha: Option<&str>,
    beta: Option<&str>,
    congruence: Option<&Path>,
    out: Option<&Path>,
) -> Result<Outcome> {
    let eff = load_eff(path)?;
    let c = match congruence {
        Some(file) => match load(file)? {
            Model::Congruence(c) => c,
            other => bail!("`{}` is a {} document; expected a congruence", file.display(), other.kind()),
        },
        None => {
            let alpha = match alpha {
                Some(t) => parse_partition(eff.dom(), t).context("--alpha")?,
                None => Partition::discrete(eff.dom()),
            };
            let beta = match beta {
                Some(t) => parse_partition(eff.cod(), t).context("--beta")?,
                None => Partition::discrete(eff.cod()),
            };
            Congruence::new(alpha, beta)
        }
    };
    if let Some((s, t)) = congruence_violation(&eff, &c)? {
        return Ok(Outcome::verdict(
            format!(
                "not a congruence: `{}` and `{}` are related but their portfolios differ modulo {}\n",
                eff.dom().name(s),
                eff.dom().name(t),
                c.beta
            ),
            false,
        ));
    }
    let doc = save(&Model::Effectivity(EffModel {
        eff: quotient(&eff, &c)?,
        valuation: None,
    }));
    match out {
        Some(file) => {
            std::fs::write(file, doc).with_context(|| format!("cannot write `{}`", file.display()))?;
            Ok(Outcome::ok(format!("wrote {}\n", file.display())))
        }
        None => Ok(Outcome::ok(doc)),
    }
}

fn map_text(m: &MeasMap) -> String {
    (0..m.dom().len())
        .map(|s| format!("{} -> {}", m.dom().name(s), m.cod().name(m.apply(s))))
        .collect::<Vec<_>>()
        .join(", ")
}

fn equiv(mode: EquivMode, first: &Path, second: &Path, max_search: u64) -> Result<Outcome> {
    let (p, q) = (load_eff(first)?, load_eff(second)?);
    let Some(w) = logically_equivalent(&p, &q, max_search)? else {
        let kind = match mode {
            EquivMode::Logical => "logically",
            EquivMode::Behavioral => "behaviorally",
        };
        return Ok(Outcome::verdict(format!("not {kind} equivalent\n"), false));
    };
    let mut out = String::new();
    match mode {
        EquivMode::Logical => {
            writeln!(out, "logically equivalent")?;
            writeln!(out, "left alpha: {}", w.left.alpha)?;
            writeln!(out, "left beta: {}", w.left.beta)?;
            writeln!(out, "right alpha: {}", w.right.alpha)?;
            writeln!(out, "right beta: {}", w.right.beta)?;
            writeln!(out, "iso states: {}", map_text(&w.iso.f))?;
            writeln!(out, "iso outcomes: {}", map_text(&w.iso.g))?;
        }
        EquivMode::Behavioral => {
            let cs = cospan_from_logical(&p, &q, &w.left, &w.right, &w.iso)?;
            writeln!(out, "behaviorally equivalent")?;
            writeln!(
                out,
                "mediator: {} states, {} outcomes",
                cs.mediator.dom().len(),
                cs.mediator.cod().len()
            )?;
            writeln!(out, "left states: {}", map_text(&cs.left.f))?;
            writeln!(out, "left outcomes: {}", map_text(&cs.left.g))?;
            writeln!(out, "right states: {}", map_text(&cs.right.f))?;
            writeln!(out, "right outcomes: {}", map_text(&cs.right.g))?;
        }
    }
    Ok(Outcome::ok(out))
}

fn charrel(action: CharrelAction, path: &Path) -> Result<Outcome> {
    let Model::CharRel(rel) = load(path)? else {
        bail!("charrel needs a charrel document");
    };
    match action {
        CharrelAction::Check => {
            let violations = check_rules(&rel);
            if violations.is_empty() {
                return Ok(Outcome::ok("all rules hold\n".into()));
            }
            let mut out = String::new();
            for v in &violations {
                writeln!(out, "{v}")?;
            }
            Ok(Outcome::verdict(out, false))
        }
        CharrelAction::Extract => {
            let ex = extract_measure(&rel);
            let mut out = String::new();
            for (s, w) in ex.weights.iter().enumerate() {
                writeln!(out, "{}: {}", ex.space.name(s), format_rational(w))?;
            }
            match &ex.verdict {
                Ok(()) => writeln!(out, "verdict: subprobability")?,
                Err(defect) => writeln!(out, "verdict: not a subprobability ({defect})")?,
            }
            Ok(Outcome::verdict(out, ex.verdict.is_ok()))
        }
    }
}

fn lift(from: LiftKind, path: &Path) -> Result<Outcome> {
    let model = load(path)?;
    let expected = match from {
        LiftKind::Kernel => "kernel",
        LiftKind::Ts => "transition-system",
        LiftKind::Nlmp => "nlmp",
    };
    if model.kind() != expected {
        bail!("`{}` is a {} document; expected {expected}", path.display(), model.kind());
    }
    let eff = model.to_eff().expect("liftable kinds denote effectivity functions")?;
    Ok(Outcome::ok(save(&Model::Effectivity(EffModel { eff, valuation: None }))))
}
