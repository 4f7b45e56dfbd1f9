use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bdsa::boolcore::{HARD_MAX_ATOMS, SOFT_MAX_ATOMS};
use bdsa::ideals::{self, LatticeMode, MinimalityRoute};
use bdsa::oracle::{self, GeneratorParams};
use bdsa::props::{self, KRoute};
use bdsa::report::Value;
use bdsa::{parse_instance, relgen, render_instance, report, topograph, Error, Instance, PrincipalIdeal};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "bdsa", version, about = "Decide Conditions (L) and (K), minimality and simplicity of finite Boolean dynamical systems")]
struct Cli {
    /// Worker threads for parallel enumeration (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate an instance file.
    Validate { file: PathBuf },
    /// Decide a single property.
    Check {
        file: PathBuf,
        property: Property,
        #[arg(long, value_enum, default_value_t = Method::Main)]
        method: Method,
    },
    /// List hereditary saturated ideals.
    Ideals {
        file: PathBuf,
        /// Saturate relative to J instead of all regular sets.
        #[arg(long)]
        relative: bool,
    },
    /// List the pairs (H, S) indexing gauge-invariant ideals.
    GaugeIdeals { file: PathBuf },
    /// List maximal tails by their complements.
    Tails { file: PathBuf },
    /// Summarize the topological graph, or export it as DOT.
    Graph {
        file: PathBuf,
        /// Write DOT to this path ("-" for stdout).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the quotient by a hereditary ideal.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        top: String,
    },
    /// Print the generalized system obtained by absorbing J.
    Bprime { file: PathBuf },
    /// Run every analysis with all cross-checks.
    Report {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Print a random instance.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        labels: usize,
        #[arg(long, default_value_t = 0.4)]
        density: f64,
        #[arg(long, default_value_t = 0.0)]
        slack: f64,
        #[arg(long, default_value_t = 0.0)]
        shrink: f64,
    },
    /// Cross-check every route on a run of corpus seeds.
    Crosscheck {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    L,
    K,
    Minimal,
    Simple,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Main,
    All,
}

/// What went wrong, and the exit code it earns.
enum Failure {
    Input(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CrossCheckMismatch { .. } => Failure::Mismatch(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn soft_cap() -> usize {
    std::env::var("BDSA_MAX_ATOMS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(SOFT_MAX_ATOMS)
        .min(HARD_MAX_ATOMS)
}

fn load(file: &PathBuf) -> Result<Instance, Failure> {
    let text = fs::read_to_string(file).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let inst = parse_instance(&text).map_err(|e| Failure::Input(e.to_string()))?;
    let limit = soft_cap();
    if inst.atom_count() > limit {
        let line = text
            .lines()
            .position(|l| l.trim_start().starts_with("atoms"))
            .map_or(1, |i| i + 1);
        let kind = Error::TooManyAtoms {
            count: inst.atom_count(),
            limit,
        };
        return Err(Failure::Input(format!("line {line}: {kind} (set BDSA_MAX_ATOMS to raise)")));
    }
    Ok(inst)
}

fn yes(b: bool) -> &'static str {
    if b {
        "YES"
    } else {
        "NO"
    }
}

fn check(inst: &Instance, property: Property, method: Method) -> Result<String, Failure> {
    let all = method == Method::All;
    Ok(match property {
        Property::L => {
            let (holds, witness) = if all {
                report::verify_condition_l(inst)?
            } else {
                props::check_condition_l(inst)
            };
            match witness {
                None if holds => "Condition (L): HOLDS".to_string(),
                Some(w) => format!(
                    "Condition (L): FAILS; cycle word={} base={}",
                    inst.render_word(&w.word),
                    inst.universe().name(w.atom)
                ),
                None => unreachable!("a failing check carries a witness"),
            }
        }
        Property::K => {
            let holds = if all {
                report::verify_condition_k(inst)?
            } else {
                props::condition_k_by(inst, KRoute::Direct)
            };
            match props::direct_k_failure(inst) {
                _ if holds => "Condition (K): HOLDS".to_string(),
                Some((c, beta)) => format!(
                    "Condition (K): FAILS; base={} beta={}",
                    inst.universe().name(c),
                    inst.render_word(&beta)
                ),
                None => unreachable!("a failing check carries a witness"),
            }
        }
        Property::Minimal => {
            let minimal = if all {
                report::verify_minimal(inst)?
            } else {
                ideals::minimal_by(inst, MinimalityRoute::Lattice)
            };
            match ideals::nontrivial_saturated_top(inst) {
                _ if minimal => "minimal: YES".to_string(),
                Some(top) => format!("minimal: NO (saturated hereditary ideal top={})", inst.render(top)),
                None => unreachable!("a non-minimal system has a proper ideal"),
            }
        }
        Property::Simple => {
            let v = if all {
                report::verify_simple(inst)?
            } else {
                ideals::is_simple(inst)?
            };
            format!("simple: {} ({})", yes(v.simple), v.explanation)
        }
    })
}

fn run(cli: Cli) -> Result<String, Failure> {
    Ok(match cli.command {
        Command::Validate { file } => {
            let inst = load(&file)?;
            format!("ok: {} atoms, {} labels", inst.atom_count(), inst.label_count())
        }
        Command::Check { file, property, method } => check(&load(&file)?, property, method)?,
        Command::Ideals { file, relative } => {
            let inst = load(&file)?;
            let mode = if relative {
                LatticeMode::JSaturated
            } else {
                LatticeMode::Saturated
            };
            let lattice = ideals::enumerate_lattice(&inst, mode);
            let mut out: Vec<String> = lattice
                .entries
                .iter()
                .map(|e| {
                    format!(
                        "top={} hereditary={} saturated={} jSaturated={}",
                        inst.render(e.top),
                        e.hereditary,
                        e.saturated,
                        e.j_saturated
                    )
                })
                .collect();
            out.push(format!("count: {}", lattice.len()));
            out.join("\n")
        }
        Command::GaugeIdeals { file } => {
            let inst = load(&file)?;
            let pairs = ideals::gauge_pairs(&inst);
            let mut out: Vec<String> = pairs
                .iter()
                .map(|p| format!("H={} S={}", inst.render(p.h_top), inst.render(p.s_top)))
                .collect();
            out.push(format!("count: {}", pairs.len()));
            out.join("\n")
        }
        Command::Tails { file } => {
            let inst = load(&file)?;
            let tails = props::enumerate_maximal_tails(&inst);
            let mut out: Vec<String> = tails
                .iter()
                .map(|t| match &t.cyclic {
                    Some((c, beta)) => format!(
                        "complement={} cyclic base={} beta={}",
                        inst.render(t.complement),
                        inst.universe().name(*c),
                        inst.render_word(beta)
                    ),
                    None => format!("complement={} noncyclic", inst.render(t.complement)),
                })
                .collect();
            out.push(format!("count: {}", tails.len()));
            out.join("\n")
        }
        Command::Graph { file, dot } => {
            let inst = load(&file)?;
            let g = topograph::build_graph(&inst);
            match dot {
                Some(path) if path.as_os_str() == "-" => {
                    let mut text = topograph::to_dot(&inst, &g);
                    text.pop();
                    text
                }
                Some(path) => {
                    fs::write(&path, topograph::to_dot(&inst, &g))
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    format!("wrote {}", path.display())
                }
                None => format!(
                    "vertices: {}\nedges: {}\ndom(r): {}\nloops without entrances: {}",
                    g.vertex_count,
                    g.edges.len(),
                    g.dom_r_size(),
                    topograph::loops_without_entrances(&g).len()
                ),
            }
        }
        Command::Quotient { file, top } => {
            let inst = load(&file)?;
            let top = inst.universe().parse(&top)?;
            let q = ideals::quotient_instance(&inst, PrincipalIdeal::new(top))?;
            render_instance(&q).trim_end().to_string()
        }
        Command::Bprime { file } => {
            let inst = load(&file)?;
            relgen::to_generalized(&inst).render(&inst).trim_end().to_string()
        }
        Command::Report { file, json } => {
            let inst = load(&file)?;
            let r = report::analyze(&inst)?;
            if json {
                r.to_json().trim_end().to_string()
            } else {
                summary(&r.value)
            }
        }
        Command::Gen {
            seed,
            atoms,
            labels,
            density,
            slack,
            shrink,
        } => {
            if atoms > soft_cap() {
                return Err(Failure::Input(
                    Error::TooManyAtoms {
                        count: atoms,
                        limit: soft_cap(),
                    }
                    .to_string(),
                ));
            }
            for p in [density, slack, shrink] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(Failure::Input(format!("probability {p} outside [0, 1]")));
                }
            }
            let p = GeneratorParams {
                seed,
                atoms,
                labels,
                density,
                slack,
                shrink,
            };
            render_instance(&oracle::random_instance(&p)).trim_end().to_string()
        }
        Command::Crosscheck { seed, count } => {
            let results: Vec<(u64, Instance, Result<(), Error>)> = (seed..seed + count)
                .into_par_iter()
                .map(|s| {
                    let inst = oracle::random_instance(&GeneratorParams::corpus(s));
                    let res = report::analyze(&inst).map(|_| ()).and_then(|_| {
                        let prime = props::find_cycle_no_exit(&relgen::to_generalized(&inst).instance).is_none();
                        if prime != relgen::prime_condition_l(&inst) {
                            return Err(Error::CrossCheckMismatch {
                                check: "B′ Condition (L)".into(),
                                detail: format!("built={prime} predicted={}", !prime),
                            });
                        }
                        Ok(())
                    });
                    (s, inst, res)
                })
                .collect();
            for (s, inst, res) in &results {
                if let Err(e) = res {
                    return Err(Failure::Mismatch(format!(
                        "seed {s}: {e}\n{}",
                        render_instance(inst).trim_end()
                    )));
                }
            }
            format!("crosscheck: {count} instances, 0 mismatches")
        }
    })
}

/// Plain-text rendering of a report.
fn summary(r: &Value) -> String {
    let v = &r["verdicts"];
    let c = &r["counts"];
    let simple = match v["simple"].get("value") {
        Some(b) => format!("{b} ({})", v["simple"]["explanation"].as_str().unwrap_or("")),
        None => format!("refused ({})", v["simple"]["refused"].as_str().unwrap_or("")),
    };
    let mut out = vec![
        format!("Condition (L): {}", v["conditionL"]),
        format!("Condition (K): {}", v["conditionK"]),
        format!("minimal: {}", v["minimal"]),
        format!("simple: {simple}"),
        format!(
            "saturated hereditary ideals: {}, maximal tails: {} ({} cyclic), gauge pairs: {}",
            c["satHereditaryIdeals"], c["maximalTails"], c["cyclicMaximalTails"], c["gaugePairs"]
        ),
    ];
    let w = &r["witnesses"];
    if let Some(cy) = w.get("cycle") {
        out.push(format!("cycle: word={} base={}", cy["word"].as_str().unwrap_or(""), cy["atom"].as_str().unwrap_or("")));
    }
    if let Some(k) = w.get("kFailure") {
        out.push(format!("K failure: base={} beta={}", k["base"].as_str().unwrap_or(""), k["beta"].as_str().unwrap_or("")));
    }
    out.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .expect("thread pool is configured once");
    }
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}
