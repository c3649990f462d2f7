//! Command-line interface of the `sprout` binary.
//!
//! Exit status: 0 for success or a positive verdict, 1 for a negative
//! verdict or counterexample, 2 for errors.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::charsample::{characteristic_sample, condition_sample, congruence_sample};
use crate::condition::{induced_partial_condition, AccType, AcceptanceCondition, Automaton, Conflict};
use crate::consistency::solve;
use crate::error::{Error, Result};
use crate::io::{automaton_dot, emit_hoa, emit_sample, parse_hoa, parse_sample_with_warnings, trace_dot};
use crate::oracle::{brute_force_consistency, equivalence, parity_equiv_fast};
use crate::reductions::{coloring_to_genbuchi_instance, coloring_to_rabin_instance, decode_coloring, DiGraph};
use crate::sample::Sample;
use crate::sprout::{sprout_traced, LearnerConfig};
use crate::ts::TransitionSystem;

pub const SCHEMA: &str = "v1";

#[derive(Debug, Parser)]
#[command(name = "sprout", version, about = "Learn deterministic omega-automata from ultimately periodic samples")]
pub struct Cli {
    /// Print a machine-readable JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

fn acc_type(s: &str) -> std::result::Result<AccType, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SampleKind {
    Congruence,
    Condition,
    Full,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn an automaton from a sample file.
    Learn {
        #[arg(long = "type", value_parser = acc_type)]
        acc_type: AccType,
        #[arg(long)]
        sample: PathBuf,
        /// Write the HOA document here instead of standard output.
        #[arg(long)]
        hoa: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Directory receiving one DOT file per learner iteration.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Decide whether the transition system of a HOA file admits a
    /// condition of the given type consistent with a sample. The
    /// acceptance condition of the file is ignored.
    Check {
        #[arg(long = "type", value_parser = acc_type)]
        acc_type: AccType,
        #[arg(long)]
        hoa: PathBuf,
        #[arg(long)]
        sample: PathBuf,
        /// Search exhaustively for a condition of at most this size.
        #[arg(long)]
        size: Option<usize>,
    },
    /// Print a characteristic sample of an automaton.
    Gensample {
        #[arg(long)]
        hoa: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        kind: SampleKind,
    },
    /// Decide membership of an ultimately periodic word `u(v)`.
    Member {
        #[arg(long)]
        hoa: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Decide language equivalence of two automata.
    Equiv {
        #[arg(long)]
        hoa: PathBuf,
        #[arg(long)]
        hoa2: PathBuf,
        /// Use the product search specialised to parity automata.
        #[arg(long)]
        fast_parity: bool,
    },
    /// Turn a graph into a consistency instance whose solutions of size k
    /// are k-colorings.
    Reduce {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_parser = acc_type)]
        target: AccType,
        /// Directory receiving `ts.hoa` and `sample.txt`.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Also search for a condition with at most this many components
        /// or pairs and decode it into a coloring.
        #[arg(long)]
        check: Option<usize>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Learn { .. } => "learn",
            Command::Check { .. } => "check",
            Command::Gensample { .. } => "gensample",
            Command::Member { .. } => "member",
            Command::Equiv { .. } => "equiv",
            Command::Reduce { .. } => "reduce",
        }
    }
}

/// Result of a command: exit status, text output and JSON fields.
pub struct Outcome {
    pub code: i32,
    pub text: String,
    pub json: Value,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::PreconditionViolated(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::PreconditionViolated(format!("cannot write {}: {e}", path.display())))
}

fn load_sample(path: &Path) -> Result<(Sample, Vec<String>)> {
    parse_sample_with_warnings(&read(path)?)
}

fn load_hoa(path: &Path) -> Result<Automaton> {
    parse_hoa(&read(path)?)
}

fn describe_conflict(c: &Conflict, s: &Sample) -> String {
    let a = s.alphabet();
    match c {
        Conflict::SharedInfinitySet { positive, negative, .. } => format!(
            "positive {} and negative {} visit the same transitions infinitely often",
            positive.display(a),
            negative.display(a)
        ),
        Conflict::Indistinguishable { positive, negative } => format!(
            "positive {} and negative {} leave the system with the same exit",
            positive.display(a),
            negative.display(a)
        ),
    }
}

fn learn(acc_type: AccType, sample: &Path, hoa: Option<&Path>, dot: Option<&Path>, trace: Option<&Path>) -> Result<Outcome> {
    let (s, warnings) = load_sample(sample)?;
    let mut cfg = LearnerConfig::new(acc_type);
    cfg.trace = trace.is_some();
    let learned = sprout_traced(&s, &cfg)?;
    let a = &learned.automaton;
    let doc = emit_hoa(a);
    if let Some(dir) = trace {
        fs::create_dir_all(dir).map_err(|e| Error::PreconditionViolated(format!("cannot create {}: {e}", dir.display())))?;
        for step in &learned.trace {
            write(&dir.join(format!("step-{:03}.dot", step.iteration)), &trace_dot(step))?;
        }
        write(&dir.join("final.dot"), &automaton_dot(a))?;
    }
    if let Some(p) = dot {
        write(p, &automaton_dot(a))?;
    }
    let text = match hoa {
        Some(p) => {
            write(p, &doc)?;
            format!("learned {}-state {} automaton\n", a.num_states(), acc_type)
        }
        None => doc.clone(),
    };
    Ok(Outcome {
        code: 0,
        text,
        json: json!({
            "type": acc_type.name(),
            "states": a.num_states(),
            "threshold": learned.threshold,
            "iterations": learned.iterations,
            "extended": learned.extended(),
            "warnings": warnings,
            "hoa": doc,
        }),
    })
}

/// Runs the exact solver, or the size-bounded exhaustive search when
/// `size` is given.
fn find_condition(
    ts: &TransitionSystem,
    s: &Sample,
    acc_type: AccType,
    size: Option<usize>,
) -> Result<std::result::Result<Option<AcceptanceCondition>, String>> {
    let h = match induced_partial_condition(ts, s)? {
        Err(c) => return Ok(Err(describe_conflict(&c, s))),
        Ok(h) => h,
    };
    let universe = ts.universe();
    Ok(Ok(match size {
        Some(k) => brute_force_consistency(&universe, &h, acc_type, Some(k))?,
        None => solve(&h, &universe, acc_type)?,
    }))
}

fn check(acc_type: AccType, hoa: &Path, sample: &Path, size: Option<usize>) -> Result<Outcome> {
    let ts = load_hoa(hoa)?.ts;
    let (s, _) = load_sample(sample)?;
    if ts.alphabet() != s.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    Ok(match find_condition(&ts, &s, acc_type, size)? {
        Ok(Some(cond)) => {
            let doc = emit_hoa(&Automaton::new(ts, cond)?);
            Outcome {
                code: 0,
                text: format!("CONSISTENT\n{doc}"),
                json: json!({ "consistent": true, "hoa": doc }),
            }
        }
        Ok(None) => Outcome {
            code: 1,
            text: "NOT CONSISTENT\n".into(),
            json: json!({ "consistent": false }),
        },
        Err(conflict) => Outcome {
            code: 1,
            text: format!("NOT CONSISTENT\n{conflict}\n"),
            json: json!({ "consistent": false, "conflict": conflict }),
        },
    })
}

fn gensample(hoa: &Path, kind: SampleKind) -> Result<Outcome> {
    let a = load_hoa(hoa)?;
    let s = match kind {
        SampleKind::Congruence => congruence_sample(&a)?,
        SampleKind::Condition => condition_sample(&a)?,
        SampleKind::Full => characteristic_sample(&a)?,
    };
    let text = emit_sample(&s);
    let words = |ws: &[crate::word::OmegaWord]| -> Vec<String> { ws.iter().map(|w| w.display(s.alphabet()).to_string()).collect() };
    Ok(Outcome {
        code: 0,
        json: json!({ "positive": words(s.positives()), "negative": words(s.negatives()), "sample": text }),
        text,
    })
}

fn member(hoa: &Path, word: &str) -> Result<Outcome> {
    let a = load_hoa(hoa)?;
    let w = a.ts.alphabet().parse_word(word)?;
    let accepted = a.accepts(&w)?;
    Ok(Outcome {
        code: if accepted { 0 } else { 1 },
        text: if accepted { "accept\n" } else { "reject\n" }.into(),
        json: json!({ "word": w.display(a.ts.alphabet()).to_string(), "accepted": accepted }),
    })
}

fn equiv(hoa: &Path, hoa2: &Path, fast: bool) -> Result<Outcome> {
    let a = load_hoa(hoa)?;
    let b = load_hoa(hoa2)?;
    let witness = if fast { parity_equiv_fast(&a, &b)? } else { equivalence(&a, &b)? };
    Ok(match witness {
        None => Outcome {
            code: 0,
            text: "EQUIVALENT\n".into(),
            json: json!({ "equivalent": true }),
        },
        Some(w) => {
            let shown = w.display(a.ts.alphabet()).to_string();
            let first = a.accepts(&w)?;
            Outcome {
                code: 1,
                text: format!("counterexample: {shown}\n"),
                json: json!({ "equivalent": false, "counterexample": shown, "accepted_by_first": first }),
            }
        }
    })
}

fn reduce(graph: &Path, target: AccType, out: &Path, check: Option<usize>) -> Result<Outcome> {
    let g = DiGraph::parse(&read(graph)?)?;
    let (ts, s) = match target {
        AccType::GenBuchi => coloring_to_genbuchi_instance(&g)?,
        AccType::Rabin => coloring_to_rabin_instance(&g)?,
        other => return Err(Error::UnsupportedType(format!("{other} is not a reduction target"))),
    };
    fs::create_dir_all(out).map_err(|e| Error::PreconditionViolated(format!("cannot create {}: {e}", out.display())))?;
    let ts_path = out.join("ts.hoa");
    let sample_path = out.join("sample.txt");
    write(&ts_path, &emit_hoa(&Automaton::new(ts.clone(), AcceptanceCondition::GenBuchi(vec![]))?))?;
    write(&sample_path, &emit_sample(&s))?;
    let mut text = format!("wrote {} and {}\n", ts_path.display(), sample_path.display());
    let mut fields = json!({ "ts": ts_path.display().to_string(), "sample": sample_path.display().to_string() });
    let mut code = 0;
    if let Some(k) = check {
        match find_condition(&ts, &s, target, Some(k))? {
            Ok(Some(cond)) => {
                let colors = decode_coloring(&cond, &g)?;
                let shown: Vec<String> = colors.iter().map(|c| c.to_string()).collect();
                text.push_str(&format!("CONSISTENT at k={k}\ncoloring: {}\n", shown.join(" ")));
                fields["consistent"] = json!(true);
                fields["coloring"] = json!(colors);
            }
            _ => {
                text.push_str(&format!("NOT CONSISTENT at k={k}\n"));
                fields["consistent"] = json!(false);
                code = 1;
            }
        }
        fields["k"] = json!(k);
    }
    Ok(Outcome { code, text, json: fields })
}

pub fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Learn { acc_type, sample, hoa, dot, trace } => {
            learn(*acc_type, sample, hoa.as_deref(), dot.as_deref(), trace.as_deref())
        }
        Command::Check { acc_type, hoa, sample, size } => check(*acc_type, hoa, sample, *size),
        Command::Gensample { hoa, kind } => gensample(hoa, *kind),
        Command::Member { hoa, word } => member(hoa, word),
        Command::Equiv { hoa, hoa2, fast_parity } => equiv(hoa, hoa2, *fast_parity),
        Command::Reduce { graph, target, out, check } => reduce(graph, *target, out, *check),
    }
}

/// Parses arguments, runs the command and prints its output. Returns the
/// exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let name = cli.command.name();
    let mut stdout = std::io::stdout().lock();
    match execute(&cli.command) {
        Ok(o) => {
            if cli.json {
                let mut v = json!({ "schema": SCHEMA, "command": name, "status": o.code });
                if let (Value::Object(m), Value::Object(extra)) = (&mut v, o.json) {
                    m.extend(extra);
                }
                let _ = writeln!(stdout, "{v}");
            } else {
                let _ = stdout.write_all(o.text.as_bytes());
            }
            o.code
        }
        Err(e) => {
            if cli.json {
                let v = json!({
                    "schema": SCHEMA,
                    "command": name,
                    "status": 2,
                    "error": { "kind": e.kind(), "message": e.to_string() },
                });
                let _ = writeln!(stdout, "{v}");
            } else {
                eprintln!("error: {e}");
            }
            2
        }
    }
}
