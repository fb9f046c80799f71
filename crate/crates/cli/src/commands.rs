//! Subcommands, their reports and exit codes.
//!
//! Exit codes: 0 when the query was answered (a false verdict or a found
//! countermodel still counts), 1 for document, usage and `--expect`
//! failures, 2 when a search exceeds its budget.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use manymodal::frames::{
    class_check, countermodel_search, frame_satisfies, ClassKind, ClassName, Countermodel,
    FrameClassSpec, FrameError, FrameVerdict, SearchConfig, SearchTarget, ValidityMode,
    DEFAULT_BUDGET,
};
use manymodal::semantics::{
    bisim_equivalence_check, greatest_bisimulation, BisimError, EvalError, EvalOptions, Frame,
    Structure, Valuation,
};
use manymodal::twist::{build_twist, subset_name, NoncVariant, TwistSubset};
use manymodal::{parse, render, Direction, Exec, Formula, SubUniverse};
use serde_json::{json, Value};
use thiserror::Error;

use crate::document::{load_document, DocumentError, Registry};
use crate::dot::{frame_dot, lattice_dot};

#[derive(Debug, Parser)]
#[command(name = "manymodal", version, about = "Model checker for modal logic over finite lattices")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Print a machine-readable report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Valuations allowed per frame in searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET as u64)]
    pub budget: u64,
    /// Seed for sampled frame validity.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Fail with exit code 1 unless the answer equals this value.
    #[arg(long, global = true)]
    pub expect: Option<String>,
    /// Non-contradiction comparison used by the classicality relation.
    #[arg(long, global = true, default_value = "sum")]
    pub neg_variant: NoncVariant,
    /// Interpretation of connective results in a world's universe.
    #[arg(long, global = true, default_value = "down")]
    pub interp: Direction,
    /// Run searches on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load a document and report what it declares.
    Validate { file: PathBuf },
    /// Value of a formula at a world.
    Eval {
        file: PathBuf,
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        world: String,
        #[arg(long)]
        formula: String,
    },
    /// Satisfaction at a world, or at every world of the model.
    Check {
        file: PathBuf,
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        world: Option<String>,
        #[arg(long)]
        formula: String,
    },
    /// Greatest bisimulation between two models.
    Bisim {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Checks that bisimilar worlds agree on all formulas up to a size.
    BisimVerify {
        file: PathBuf,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Validity of a formula on a frame over all (or sampled) valuations.
    FrameValid {
        file: PathBuf,
        #[arg(long)]
        frame: Option<String>,
        #[arg(long)]
        formula: String,
        /// Check this many seeded random valuations instead of all.
        #[arg(long)]
        sample: Option<u64>,
    },
    /// Bounded validity over a frame class.
    ClassCheck {
        file: PathBuf,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        class: ClassName,
        /// Universe of a uniform class.
        #[arg(long)]
        universe: Option<String>,
        #[arg(long)]
        serial: bool,
        /// Drop the transitivity requirement of inc/dec classes.
        #[arg(long)]
        no_transitive: bool,
        #[arg(long)]
        max_worlds: usize,
        #[arg(long)]
        formula: String,
    },
    /// Twist structure over a Boolean lattice of the document.
    Twist {
        file: PathBuf,
        #[arg(long)]
        base: String,
        #[arg(long)]
        subset: Option<TwistSubset>,
        /// Print the classicality relation between the standard subsets.
        #[arg(long)]
        compare: bool,
    },
    /// Searches small models over given universes for a world meeting a target.
    Search {
        file: PathBuf,
        /// Universe allowed at worlds; repeat for several.
        #[arg(long = "universe", required = true)]
        universes: Vec<String>,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        max_worlds: usize,
        /// `fail` or `hold`.
        #[arg(long, default_value = "fail")]
        target: String,
        /// Only report failures whose successors all satisfy this formula.
        #[arg(long)]
        support: Option<String>,
        /// Named filter of the universes' lattice.
        #[arg(long)]
        filter: Option<String>,
    },
    /// Graphviz text for a lattice, model or frame.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        object: String,
    },
    /// Runs the queries stored in a document.
    Replay { file: PathBuf },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("formula `{text}`: {source}")]
    Syntax {
        text: String,
        #[source]
        source: manymodal::SyntaxError,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Bisim(#[from] BisimError),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("{0}")]
    Usage(String),
    #[error("expected `{expected}`, got `{actual}`")]
    Mismatch { expected: String, actual: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Frame(FrameError::BudgetExceeded { .. }) => 2,
            _ => 1,
        }
    }
}

/// A command's answer: `answer` is what `--expect` compares against.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub answer: String,
    pub text: String,
    pub json: Value,
    /// Exit code when no `--expect` is given.
    pub code: i32,
}

impl Outcome {
    fn new(answer: impl Into<String>, text: impl Into<String>, json: Value) -> Outcome {
        Outcome {
            answer: answer.into(),
            text: text.into(),
            json,
            code: 0,
        }
    }
}

/// Parses `argv` (program name first), runs the command and writes its
/// report. Returns the process exit code.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    let json = cli.global.json;
    let expect = cli.global.expect.clone();
    match execute(&cli, err) {
        Ok(outcome) => {
            if json {
                let mut v = outcome.json.clone();
                if let Value::Object(m) = &mut v {
                    m.insert("answer".into(), Value::String(outcome.answer.clone()));
                }
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            } else {
                let _ = write!(out, "{}", outcome.text);
                if !outcome.text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            match expect {
                Some(e) if e != outcome.answer => {
                    let mismatch = CliError::Mismatch {
                        expected: e,
                        actual: outcome.answer,
                    };
                    let _ = writeln!(err, "error: {mismatch}");
                    1
                }
                _ => outcome.code,
            }
        }
        Err(e) => {
            if json {
                let v = json!({"error": e.to_string(), "exit": e.exit_code()});
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).unwrap_or_default());
            }
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load(file: &Path, err: &mut dyn Write) -> Result<Registry, CliError> {
    let registry = load_document(file)?;
    for w in &registry.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    Ok(registry)
}

fn formula(text: &str) -> Result<Formula, CliError> {
    parse(text).map_err(|source| CliError::Syntax {
        text: text.to_string(),
        source,
    })
}

/// The named object, or the only one when no name is given.
fn pick<'a>(kind: &str, given: Option<&'a str>, names: &'a [String]) -> Result<&'a str, CliError> {
    match (given, names) {
        (Some(n), _) => Ok(n),
        (None, [only]) => Ok(only),
        (None, []) => Err(CliError::Usage(format!("the document declares no {kind}"))),
        (None, _) => Err(CliError::Usage(format!(
            "the document declares several {kind}s; choose one with --{kind}"
        ))),
    }
}

fn world(m: &Structure, id: &str) -> Result<usize, CliError> {
    m.world_index(id)
        .map_err(|_| CliError::Usage(format!("model `{}` has no world `{id}`", m.name())))
}

fn set_text<I: IntoIterator<Item = S>, S: AsRef<str>>(items: I) -> String {
    let parts: Vec<String> = items.into_iter().map(|s| s.as_ref().to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let g = &cli.global;
    let opts = EvalOptions { interp: g.interp };
    let exec = if g.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    };
    let config = |max_worlds| SearchConfig {
        max_worlds,
        budget: g.budget as u128,
        eval: opts,
        exec,
    };
    match &cli.command {
        Command::Validate { file } => {
            let r = load(file, err)?;
            Ok(validate_report(&r))
        }
        Command::Eval {
            file,
            model,
            world: w,
            formula: f,
        } => {
            let r = load(file, err)?;
            let m = r.model(pick("model", model.as_deref(), r.model_names())?)?;
            let f = formula(f)?;
            let wi = world(m, w)?;
            let v = m.evaluate_with(wi, &f, opts)?;
            let name = m.base().name_of(v).to_string();
            let holds = m.frame().filter().contains(v);
            Ok(Outcome::new(
                name.clone(),
                format!("{name}\n"),
                json!({"model": m.name(), "world": w, "formula": render(&f), "value": name, "designated": holds}),
            ))
        }
        Command::Check {
            file,
            model,
            world: w,
            formula: f,
        } => {
            let r = load(file, err)?;
            let m = r.model(pick("model", model.as_deref(), r.model_names())?)?;
            let f = formula(f)?;
            check(m, w.as_deref(), &f, opts)
        }
        Command::Bisim { file, left, right } => {
            let r = load(file, err)?;
            let (l, rt) = (r.model(left)?, r.model(right)?);
            let b = greatest_bisimulation(l, rt)?;
            let pairs = b.named(l, rt);
            let answer = set_text(pairs.iter().map(|(a, b)| format!("({a},{b})")));
            Ok(Outcome::new(
                answer.clone(),
                format!("{answer}\n"),
                json!({"left": left, "right": right, "pairs": pairs}),
            ))
        }
        Command::BisimVerify {
            file,
            left,
            right,
            max_size,
        } => {
            let r = load(file, err)?;
            let (l, rt) = (r.model(left)?, r.model(right)?);
            let b = greatest_bisimulation(l, rt)?;
            let report = bisim_equivalence_check(l, rt, &b, *max_size, opts)?;
            let mut text = format!(
                "{} pairs, {} formulas up to size {max_size}, {} disagreements\n",
                report.pairs,
                report.formulas,
                report.violations.len()
            );
            for d in &report.violations {
                writeln!(
                    text,
                    "  ({},{}) {}: {} vs {}",
                    d.left,
                    d.right,
                    render(&d.formula),
                    d.left_value,
                    d.right_value
                )
                .unwrap();
            }
            let list: Vec<Value> = report
                .violations
                .iter()
                .map(|d| {
                    json!({"left": d.left, "right": d.right, "formula": render(&d.formula),
                           "left_value": d.left_value, "right_value": d.right_value})
                })
                .collect();
            Ok(Outcome::new(
                report.violations.len().to_string(),
                text,
                json!({"pairs": report.pairs, "formulas": report.formulas, "disagreements": list}),
            ))
        }
        Command::FrameValid {
            file,
            frame,
            formula: f,
            sample,
        } => {
            let r = load(file, err)?;
            let fr = r.frame(pick("frame", frame.as_deref(), r.frame_names())?)?;
            let f = formula(f)?;
            let mode = match sample {
                Some(count) => ValidityMode::Sample {
                    count: *count,
                    seed: g.seed,
                },
                None => ValidityMode::Exhaustive,
            };
            let verdict = frame_satisfies(fr, &f, mode, g.budget as u128, opts, exec)?;
            Ok(match verdict {
                FrameVerdict::Valid { valuations } => Outcome::new(
                    "valid",
                    format!("valid ({valuations} valuations)\n"),
                    json!({"valid": true, "valuations": valuations.to_string()}),
                ),
                FrameVerdict::Counter(c) => {
                    let (text, j) = countermodel_report(&c.frame, &c.valuation, c.world, c.value_name());
                    Outcome::new("countermodel", text, json!({"valid": false, "countermodel": j}))
                }
            })
        }
        Command::ClassCheck {
            file,
            family,
            class,
            universe,
            serial,
            no_transitive,
            max_worlds,
            formula: f,
        } => {
            let r = load(file, err)?;
            let names = r.family_names();
            let names: Vec<String> = names.into_iter().map(String::from).collect();
            let fam_name = pick("family", family.as_deref(), &names)?;
            let (fam, filter) = r.family(fam_name, g.neg_variant)?;
            let kind = match (class, universe) {
                (ClassName::Uniform, Some(u)) => ClassKind::Uniform(
                    fam.index_by_name(u)
                        .ok_or_else(|| CliError::Usage(format!("`{u}` is not in family `{fam_name}`")))?,
                ),
                (ClassName::Uniform, None) => {
                    return Err(CliError::Usage("--class uniform needs --universe".into()))
                }
                (_, Some(_)) => {
                    return Err(CliError::Usage("--universe only applies to --class uniform".into()))
                }
                (ClassName::Inc, None) => ClassKind::Increasing,
                (ClassName::Dec, None) => ClassKind::Decreasing,
                (ClassName::Dial, None) => ClassKind::Dialectic,
            };
            let mut spec = FrameClassSpec::new(Arc::new(fam), kind, filter).serial(*serial);
            if *no_transitive {
                spec = spec.transitive(false);
            }
            let f = formula(f)?;
            let report = class_check(&spec, &f, &config(*max_worlds))?;
            Ok(match report.countermodel {
                None => Outcome::new(
                    "none",
                    format!(
                        "no countermodel ({} frames with up to {} worlds)\n",
                        report.frames, report.max_worlds
                    ),
                    json!({"countermodel": null, "frames": report.frames, "max_worlds": report.max_worlds}),
                ),
                Some(c) => {
                    let Countermodel {
                        frame,
                        valuation,
                        world,
                        ..
                    } = &*c;
                    let (text, j) = countermodel_report(frame, valuation, *world, c.value_name());
                    Outcome::new(
                        c.value_name(),
                        text,
                        json!({"countermodel": j, "frames": report.frames, "max_worlds": report.max_worlds}),
                    )
                }
            })
        }
        Command::Twist {
            file,
            base,
            subset,
            compare,
        } => {
            let r = load(file, err)?;
            twist_report(&r, base, subset.as_ref(), *compare, g.neg_variant)
        }
        Command::Search {
            file,
            universes,
            formula: f,
            max_worlds,
            target,
            support,
            filter,
        } => {
            let r = load(file, err)?;
            let us: Vec<Arc<SubUniverse>> = universes
                .iter()
                .map(|u| r.subuniverse(u).cloned())
                .collect::<Result<_, _>>()?;
            let lattice = r.lattice_name_of(us[0].base());
            let filter = r.filter(
                &lattice,
                filter.clone().map(crate::document::FilterRef::Named).as_ref(),
            )?;
            let target = match (target.as_str(), support) {
                ("fail", None) => SearchTarget::FailAtSomeWorld,
                ("fail", Some(s)) => SearchTarget::FailWithSupport(formula(s)?),
                ("hold", None) => SearchTarget::HoldAtSomeWorld,
                ("hold", Some(_)) => {
                    return Err(CliError::Usage("--support only applies to --target fail".into()))
                }
                (other, _) => {
                    return Err(CliError::Usage(format!(
                        "unknown target `{other}` (expected fail or hold)"
                    )))
                }
            };
            let f = formula(f)?;
            let hit = countermodel_search(us, filter, &f, &target, &config(*max_worlds))?;
            Ok(match hit {
                None => Outcome::new("none", "no model found\n", json!({"model": null})),
                Some(h) => {
                    let name = h.frame.base().name_of(h.value).to_string();
                    let (text, j) = countermodel_report(&h.frame, &h.valuation, h.world, &name);
                    Outcome::new(name, text, json!({"model": j}))
                }
            })
        }
        Command::ExportDot { file, object } => {
            let r = load(file, err)?;
            let text = if let Ok(l) = r.lattice(object) {
                lattice_dot(l)
            } else if let Ok(m) = r.model(object) {
                frame_dot(&m.frame().as_ref().clone().with_name(m.name()))
            } else if let Ok(f) = r.frame(object) {
                frame_dot(f)
            } else {
                return Err(CliError::Usage(format!(
                    "no lattice, model or frame named `{object}`"
                )));
            };
            Ok(Outcome::new(object.clone(), text.clone(), json!({"dot": text})))
        }
        Command::Replay { file } => {
            let r = load(file, err)?;
            replay(&r, file, err)
        }
    }
}

fn validate_report(r: &Registry) -> Outcome {
    let mut text = String::new();
    let families: Vec<String> = r.family_names().into_iter().map(String::from).collect();
    let groups: [(&str, &[String]); 5] = [
        ("lattices", r.lattice_names()),
        ("subuniverses", r.subuniverse_names()),
        ("families", &families),
        ("models", r.model_names()),
        ("frames", r.frame_names()),
    ];
    let mut j = serde_json::Map::new();
    for (label, names) in groups {
        if !names.is_empty() {
            writeln!(text, "{label}: {}", names.join(", ")).unwrap();
        }
        j.insert(label.into(), json!(names));
    }
    writeln!(text, "queries: {}", r.queries.len()).unwrap();
    j.insert("queries".into(), json!(r.queries.len()));
    j.insert("warnings".into(), json!(r.warnings));
    Outcome::new("ok", text, Value::Object(j))
}

fn check(m: &Structure, w: Option<&str>, f: &Formula, opts: EvalOptions) -> Result<Outcome, CliError> {
    let filter = m.frame().filter();
    let worlds: Vec<usize> = match w {
        Some(id) => vec![world(m, id)?],
        None => (0..m.frame().len()).collect(),
    };
    let mut failing = Vec::new();
    let mut values = BTreeMap::new();
    for wi in worlds {
        let v = m.evaluate_with(wi, f, opts)?;
        let id = m.frame().worlds()[wi].id.clone();
        if !filter.contains(v) {
            failing.push(id.clone());
        }
        values.insert(id, m.base().name_of(v).to_string());
    }
    let holds = failing.is_empty();
    let mut text = format!("{holds}\n");
    if !holds {
        writeln!(text, "fails at: {}", failing.join(", ")).unwrap();
    }
    Ok(Outcome::new(
        holds.to_string(),
        text,
        json!({"model": m.name(), "formula": render(f), "holds": holds, "failing": failing, "values": values}),
    ))
}

fn countermodel_report(frame: &Frame, val: &Valuation, world: usize, value: &str) -> (String, Value) {
    let base = frame.base();
    let mut text = String::new();
    writeln!(
        text,
        "countermodel: {} fails with value {value}",
        frame.worlds()[world].id
    )
    .unwrap();
    let mut worlds = Vec::new();
    for (i, w) in frame.worlds().iter().enumerate() {
        let succ: Vec<&str> = frame
            .successors(i)
            .iter()
            .map(|&s| frame.worlds()[s].id.as_str())
            .collect();
        let mut assigned = BTreeMap::new();
        for p in val.atoms() {
            if let Some(v) = val.get(i, p) {
                assigned.insert(p.to_string(), base.name_of(v).to_string());
            }
        }
        let shown: Vec<String> = assigned.iter().map(|(p, v)| format!("{p}={v}")).collect();
        writeln!(
            text,
            "  {} : {}  -> [{}]  {}",
            w.id,
            w.universe.name(),
            succ.join(", "),
            shown.join(" ")
        )
        .unwrap();
        worlds.push(json!({"id": w.id, "universe": w.universe.name(), "successors": succ, "valuation": assigned}));
    }
    let j = json!({"world": frame.worlds()[world].id, "value": value, "worlds": worlds});
    (text, j)
}

fn twist_report(
    r: &Registry,
    base: &str,
    subset: Option<&TwistSubset>,
    compare: bool,
    variant: NoncVariant,
) -> Result<Outcome, CliError> {
    let b = Arc::clone(r.lattice(base)?);
    let t = build_twist(format!("T({base})"), Arc::clone(&b))
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let carrier = t.carrier();
    let names = |xs: &[manymodal::Elem]| -> Vec<String> {
        xs.iter().map(|&x| carrier.name_of(x).to_string()).collect()
    };
    if compare {
        let mut kinds = vec![TwistSubset::Boolean, TwistSubset::Paraconsistent];
        kinds.extend(b.elements().map(|z| TwistSubset::AtLeast(b.name_of(z).to_string())));
        let members: Vec<Vec<manymodal::Elem>> = kinds
            .iter()
            .map(|k| t.subset_members(k))
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let labels: Vec<String> = kinds.iter().map(subset_name).collect();
        let mut text = format!("classicality ({variant} non-contradiction):\n");
        let mut pairs = Vec::new();
        for (i, a) in members.iter().enumerate() {
            let above: Vec<&str> = members
                .iter()
                .enumerate()
                .filter(|&(j, b)| i != j && t.geq_cl(a, b, variant))
                .map(|(j, _)| labels[j].as_str())
                .collect();
            writeln!(text, "  {} >= {}", labels[i], set_text(&above)).unwrap();
            pairs.extend(above.iter().map(|b| format!("{}>={b}", labels[i])));
        }
        let answer = set_text(&pairs);
        return Ok(Outcome::new(answer, text, json!({"variant": variant.to_string(), "geq": pairs})));
    }
    let (label, elems) = match subset {
        Some(k) => (
            subset_name(k),
            t.subset_members(k).map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        None => ("carrier".to_string(), carrier.elements().collect()),
    };
    let shown = names(&elems);
    let answer = set_text(&shown);
    Ok(Outcome::new(
        answer.clone(),
        format!("{label}: {answer}\n"),
        json!({"subset": label, "members": shown}),
    ))
}

/// Command-line words for a stored query.
pub fn query_argv(q: &crate::document::Query, file: &Path) -> Vec<OsString> {
    let mut argv: Vec<OsString> = vec!["manymodal".into(), q.command.clone().into(), file.into()];
    for (k, v) in &q.args {
        let flag = format!("--{}", k.replace('_', "-"));
        match v {
            Value::Bool(true) => argv.push(flag.into()),
            Value::Bool(false) | Value::Null => {}
            Value::Array(items) => {
                for item in items {
                    argv.push(flag.clone().into());
                    argv.push(scalar(item).into());
                }
            }
            other => {
                argv.push(flag.into());
                argv.push(scalar(other).into());
            }
        }
    }
    if let Some(e) = &q.expect {
        argv.push("--expect".into());
        argv.push(e.into());
    }
    argv
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn replay(r: &Registry, file: &Path, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let mut text = String::new();
    let mut results = Vec::new();
    let mut code = 0;
    for (i, q) in r.queries.iter().enumerate() {
        if q.command == "replay" {
            return Err(CliError::Usage(format!("query {i} replays recursively")));
        }
        let argv = query_argv(q, file);
        let mut out = Vec::new();
        let mut qerr = Vec::new();
        let c = run_command(argv, &mut out, &mut qerr);
        // Load warnings were already reported for the whole document.
        for line in String::from_utf8_lossy(&qerr).lines() {
            if !line.starts_with("warning:") {
                let _ = writeln!(err, "{line}");
            }
        }
        let status = match c {
            0 => "ok",
            2 => "budget exceeded",
            _ => "FAILED",
        };
        if c != 0 {
            code = 1;
        }
        let shown = String::from_utf8_lossy(&out).trim_end().replace('\n', "\n    ");
        writeln!(text, "[{i}] {} {status}\n    {shown}", q.command).unwrap();
        results.push(json!({"command": q.command, "exit": c, "output": String::from_utf8_lossy(&out)}));
    }
    let failed = results.iter().filter(|j| j["exit"] != 0).count();
    writeln!(text, "{} queries, {failed} failed", r.queries.len()).unwrap();
    let mut outcome = Outcome::new(failed.to_string(), text, json!({"queries": results}));
    outcome.code = code;
    Ok(outcome)
}
