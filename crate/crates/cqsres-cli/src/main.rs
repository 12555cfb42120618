//! `cqsres`: command-line front end for the cqsres library.

mod report;

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cqsres::chain::{parse_chain, WahlResolution, WahlSingularity};
use cqsres::quiver::QabcWitness;
use cqsres::{
    apply_word, check_q_abc, check_target, components, coprime_pairs, dolgachev, enumerate_c, enumerate_zero_fractions,
    format_string, hj_dual, hj_expand, hom_dims, mn_schedule, random_braid_checks, BigInt, BraidWord, Fraction,
    Summary,
};
use rayon::prelude::*;
use report::Style;
use serde_json::{json, Value};

const GRAMMAR: &str = "\
input grammar:
  fraction  DELTA/OMEGA with 0 < OMEGA < DELTA coprime, e.g. 19/7
  chain     node-(c)-node-...; node is [n|a], * (smooth) or a Wahl chain [5,2];
            smooth end points may be omitted, e.g. (3)-[2|1]-(2)
  word      comma-separated R<i> / L<i>, e.g. R2,R1,R2";

#[derive(Parser)]
#[command(name = "cqsres", version, about = "Deformation components, Wahl resolutions and antiflips of 1/Δ(1,Ω)")]
#[command(after_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to FILE instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,

    /// Seed for randomised checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for `sweep` (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Colour for text output.
    #[arg(long, global = true, env = "CQSRES_COLOR", value_enum, default_value_t = Color::Auto, hide_env_values = true)]
    color: Color,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Color {
    Auto,
    Always,
    Never,
}

type Chain = (Vec<WahlSingularity>, Vec<BigInt>);

#[derive(Subcommand)]
enum Command {
    /// Hirzebruch–Jung expansion of Δ/Ω.
    Expand {
        #[arg(value_parser = fraction)]
        target: Fraction,
    },
    /// Expansion of the dual Δ/(Δ-Ω).
    Dual {
        #[arg(value_parser = fraction)]
        target: Fraction,
    },
    /// Zero continued fractions indexing the deformation components.
    ZeroFractions {
        #[arg(value_parser = fraction)]
        target: Fraction,
    },
    /// Full report for every component.
    Components {
        #[arg(value_parser = fraction)]
        target: Fraction,
    },
    /// M-resolutions, one per component.
    Mres {
        #[arg(value_parser = fraction)]
        target: Fraction,
    },
    /// N-resolutions, one per component.
    Nres {
        #[arg(value_parser = fraction)]
        target: Fraction,
    },
    /// δ-vectors, one per component.
    Delta {
        #[arg(value_parser = fraction)]
        target: Fraction,
    },
    /// Apply a braid word of antiflips to a chain.
    Antiflip {
        #[arg(long, value_parser = chain)]
        chain: Chain,
        /// Expected contraction of the chain.
        #[arg(long, value_parser = fraction)]
        target: Option<Fraction>,
        #[arg(long, value_parser = word)]
        word: BraidWord,
        /// Print every intermediate chain.
        #[arg(long)]
        trace: bool,
    },
    /// The antiflip word taking an M-resolution with M curves to its N-resolution.
    Schedule { m: usize },
    /// Quiver of an N-resolution, given as a chain or as a component of a target.
    Quiver {
        #[arg(value_parser = chain, required_unless_present = "target", conflicts_with = "target")]
        chain: Option<Chain>,
        #[arg(long, value_parser = fraction)]
        target: Option<Fraction>,
        /// 1-based component index (with --target).
        #[arg(long, default_value_t = 1, requires = "target")]
        component: usize,
    },
    /// Whether Q_{a,b,c} comes from an N-resolution, or all realisable c up to a bound.
    Qabc {
        a: u64,
        b: u64,
        /// Omit together with --max to enumerate.
        c: Option<u64>,
        #[arg(long, conflicts_with = "c")]
        max: Option<u64>,
    },
    /// Degeneration data of the Dolgachev surface D_{p,q}.
    Dolgachev { p: u64, q: u64 },
    /// Cross-check every target with Δ <= MAX and sample braid relations.
    Sweep {
        #[arg(value_parser = clap::value_parser!(u64).range(2..))]
        max: u64,
        /// Random braid relation checks.
        #[arg(long, default_value_t = 500)]
        braid: usize,
    },
}

fn fraction(s: &str) -> Result<Fraction, String> {
    s.parse().map_err(|e| format!("{e}; expected DELTA/OMEGA, e.g. 19/7"))
}

fn chain(s: &str) -> Result<Chain, String> {
    parse_chain(s).map_err(|e| format!("{e}; expected e.g. [2|1]-(1)-[3|1]"))
}

fn word(s: &str) -> Result<BraidWord, String> {
    s.parse().map_err(|e| format!("{e}; expected e.g. R2,R1,R2"))
}

enum Failure {
    Domain(String),
    Io(std::io::Error),
}

impl From<cqsres::Error> for Failure {
    fn from(e: cqsres::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

struct Output {
    format: Format,
    style: Style,
}

impl Output {
    /// Render with one function per format; DOT falls back to text.
    fn pick(&self, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) -> String {
        match self.format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&json()).expect("serialisable")),
            _ => text(),
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let color = match cli.color {
        Color::Always => true,
        Color::Never => false,
        Color::Auto => cli.out.is_none() && std::io::stdout().is_terminal(),
    };
    let out = Output { format: cli.format, style: Style { color: color && cli.format == Format::Text } };
    let text = match cli.command {
        Command::Expand { target } => {
            let e = hj_expand(&target);
            out.pick(
                || format!("{}\n", format_string(&e)),
                || json!({ "target": target.to_string(), "expansion": report::nums(&e) }),
            )
        }
        Command::Dual { target } => {
            let e = hj_dual(&target);
            out.pick(
                || format!("{}\n", format_string(&e)),
                || json!({ "target": target.to_string(), "dual": report::nums(&e) }),
            )
        }
        Command::ZeroFractions { target } => {
            let zs = enumerate_zero_fractions(&target);
            out.pick(
                || zs.iter().map(|z| format!("{z}\n")).collect(),
                || json!({ "target": target.to_string(), "zero_fractions": zs.iter().map(|z| report::nums(z.k())).collect::<Vec<_>>() }),
            )
        }
        Command::Components { target } => {
            let cs = components(&target)?;
            match out.format {
                Format::Dot => report::components_dot(&cs),
                _ => out.pick(
                    || report::components_text(&target, &cs, out.style),
                    || report::components_json(&target, &cs),
                ),
            }
        }
        Command::Mres { target } => {
            listing(&out, &target, |c| report::resolution_json(&c.m_res), |c| c.m_res.compact())?
        }
        Command::Nres { target } => {
            listing(&out, &target, |c| report::resolution_json(&c.n_res), |c| c.n_res.compact())?
        }
        Command::Delta { target } => {
            listing(&out, &target, |c| report::nums(&c.delta.delta), |c| report::tuple(&c.delta.delta))?
        }
        Command::Antiflip { chain: (sings, curves), target, word, trace } => {
            let start = WahlResolution::from_chain(sings, curves)?;
            if let Some(t) = target {
                if start.target() != &t {
                    return Err(cqsres::Error::TargetMismatch {
                        expected: t.to_string(),
                        found: start.target().to_string(),
                    }
                    .into());
                }
            }
            let mut steps = vec![start.clone()];
            for (k, mv) in word.0.iter().enumerate() {
                let next = apply_word(steps.last().expect("nonempty"), &BraidWord(vec![*mv]))
                    .map_err(|e| cqsres::Error::Step { step: k + 1, source: Box::new(e) })?;
                steps.push(next);
            }
            let last = steps.last().expect("nonempty").clone();
            out.pick(
                || {
                    if trace {
                        let mut s = format!("{}\n", steps[0]);
                        for (mv, w) in word.0.iter().zip(&steps[1..]) {
                            s.push_str(&format!("{mv}: {w}\n"));
                        }
                        s
                    } else {
                        format!("{last}\n")
                    }
                },
                || {
                    json!({
                        "target": start.target().to_string(),
                        "word": word.to_string(),
                        "result": report::resolution_json(&last),
                        "steps": steps.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                    })
                },
            )
        }
        Command::Schedule { m } => {
            let w = mn_schedule(m);
            out.pick(|| format!("{w}\n"), || json!({ "m": m, "word": w.to_string(), "length": w.0.len() }))
        }
        Command::Quiver { chain, target, component } => {
            let n = match (chain, target) {
                (Some((sings, curves)), _) => WahlResolution::from_chain(sings, curves)?,
                (None, Some(t)) => {
                    let cs = components(&t)?;
                    let count = cs.len();
                    cs.into_iter()
                        .nth(component.wrapping_sub(1))
                        .ok_or(cqsres::Error::IndexOutOfRange { index: component, max: count })?
                        .n_res
                }
                (None, None) => unreachable!("clap requires one of them"),
            };
            let q = hom_dims(&n)?;
            match out.format {
                Format::Dot => report::quiver_dot("quiver", &q),
                _ => out.pick(
                    || report::quiver_text(&n, &q, out.style),
                    || json!({ "n_resolution": report::resolution_json(&n), "quiver": report::quiver_json(&q) }),
                ),
            }
        }
        Command::Qabc { a, b, c, max } => {
            let (a, b) = (BigInt::from(a), BigInt::from(b));
            match (c, max) {
                (Some(c), _) => {
                    let c = BigInt::from(c);
                    let w = check_q_abc(&a, &b, &c);
                    let label = format!("Q_{{{a},{b},{c}}}");
                    out.pick(
                        || match &w {
                            None => format!("{label}: not realised\n"),
                            Some(QabcWitness::Semisimple) => format!("{label}: semisimple\n"),
                            Some(QabcWitness::Degenerate) => format!("{label}: degenerate (one index is 0)\n"),
                            Some(QabcWitness::Extremal(x)) => format!("{label}: {}\n", report::witness_text(x)),
                        },
                        || {
                            let witness = match &w {
                                None => Value::Null,
                                Some(QabcWitness::Semisimple) => json!("semisimple"),
                                Some(QabcWitness::Degenerate) => json!("degenerate"),
                                Some(QabcWitness::Extremal(x)) => report::witness_json(x),
                            };
                            json!({ "a": report::num(&a), "b": report::num(&b), "c": report::num(&c), "realised": w.is_some(), "witness": witness })
                        },
                    )
                }
                (None, Some(max)) => {
                    if a == BigInt::from(0) || b == BigInt::from(0) {
                        return Err(Failure::Domain("enumeration needs a, b >= 1".into()));
                    }
                    let cs: Vec<BigInt> = enumerate_c(&a, &b, &BigInt::from(max)).into_iter().collect();
                    out.pick(
                        || format!("{}\n", cs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")),
                        || json!({ "a": report::num(&a), "b": report::num(&b), "max": max, "c": report::nums(&cs) }),
                    )
                }
                (None, None) => return Err(Failure::Domain("give c, or --max to enumerate".into())),
            }
        }
        Command::Dolgachev { p, q } => {
            let r = dolgachev(&BigInt::from(p), &BigInt::from(q))?;
            match out.format {
                Format::Dot => report::quiver_dot("dolgachev", &r.quiver),
                _ => out.pick(|| report::dolgachev_text(&r, out.style), || report::dolgachev_json(&r)),
            }
        }
        Command::Sweep { max, braid } => sweep(&out, max, braid, cli.seed, cli.jobs)?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(Failure::Io)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(Failure::Io)?;
        }
    }
    Ok(())
}

fn listing(
    out: &Output,
    target: &Fraction,
    as_json: impl Fn(&cqsres::ComponentReport) -> Value,
    as_text: impl Fn(&cqsres::ComponentReport) -> String,
) -> Result<String, Failure> {
    let cs = components(target)?;
    Ok(out.pick(
        || cs.iter().map(|c| format!("{:<16} {}\n", c.zero_fraction.to_string(), as_text(c))).collect(),
        || {
            let items: Vec<Value> = cs
                .iter()
                .map(|c| json!({ "zero_fraction": report::nums(c.zero_fraction.k()), "value": as_json(c) }))
                .collect();
            json!({ "target": target.to_string(), "components": items })
        },
    ))
}

fn sweep(out: &Output, max: u64, braid: usize, seed: u64, jobs: usize) -> Result<String, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Failure::Domain(format!("thread pool: {e}")))?;
    let start = std::time::Instant::now();
    let pairs = coprime_pairs(max);
    let results: Vec<((u64, u64), Result<Summary, cqsres::Error>)> = pool.install(|| {
        pairs
            .par_iter()
            .map(|&(d, o)| {
                let f = Fraction::new(BigInt::from(d), BigInt::from(o)).expect("coprime pair");
                ((d, o), check_target(&f))
            })
            .collect()
    });
    let mut summary = Summary::default();
    let mut failures = Vec::new();
    for (pair, r) in results {
        match r {
            Ok(s) => summary = summary.merge(s),
            Err(e) => failures.push(format!("{}/{}: {e}", pair.0, pair.1)),
        }
    }
    let sample = if braid > 0 && max >= 3 { Some(random_braid_checks::<BigInt>(max, braid, seed)?) } else { None };
    for (w, i, j) in sample.iter().flat_map(|s| &s.failures) {
        failures.push(format!("braid relation fails on {w} at ({i},{j})"));
    }
    let secs = start.elapsed().as_secs_f64();
    let text = out.pick(
        || {
            let mut s = format!(
                "checked {} pairs, {} components, {} antiflips\n",
                summary.targets, summary.components, summary.antiflips
            );
            if let Some(b) = &sample {
                s.push_str(&format!("braid relations: {} hold, {} vacuous (seed {seed})\n", b.holds, b.vacuous));
            }
            s.push_str(&format!("{} failures\n", failures.len()));
            if let Some(first) = failures.first() {
                s.push_str(&format!("first failure: {first}\n"));
            }
            s.push_str(&format!("elapsed {secs:.2}s\n"));
            s
        },
        || {
            json!({
                "max": max,
                "pairs": summary.targets,
                "components": summary.components,
                "antiflips": summary.antiflips,
                "braid": sample.as_ref().map(|b| json!({ "holds": b.holds, "vacuous": b.vacuous, "seed": seed })),
                "failures": failures,
                "elapsed_seconds": secs,
            })
        },
    );
    if failures.is_empty() {
        Ok(text)
    } else {
        print!("{text}");
        Err(Failure::Domain(format!("{} failures", failures.len())))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            if code == 2 {
                eprintln!("\n{GRAMMAR}");
            }
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(_) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
