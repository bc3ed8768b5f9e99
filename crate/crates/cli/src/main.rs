//! `locgame`: generate designs, check them, bound and solve their
//! localization numbers, and replay certificates.
//!
//! Inputs are read from a file argument or, when it is absent or `-`, from
//! standard input. Exit status: 0 success, 1 a negative answer (invalid
//! design, counterexample, failed replay), 2 usage or input error, 3 budget
//! exhausted.

use std::fs;
use std::io::{self as stdio, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use locgame::design::{detect_groups, validate_bibd, validate_steiner, Design};
use locgame::game::{play, verify_strategy_exhaustive, RandomCell, Verdict, VerifyError, VerifyOptions};
use locgame::generators::{
    affine_plane, derive_td_from_affine, derive_td_from_pp, projective_plane, sqs_boolean, sts,
    transversal_design,
};
use locgame::graph::{incidence_graph, Graph};
use locgame::io;
use locgame::solver::{can_win, Budgets, Certificate, SolveStatus};
use locgame::strategies::{bounds_report, f_of_design, f_value, upper_strategies, ReportOptions, RowVerdict};

#[derive(Parser)]
#[command(name = "locgame", version, about = "Localization game on incidence graphs of block designs")]
struct Cli {
    /// Seed for randomized robbers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for verification and solving.
    #[arg(long, global = true, env = "LOCGAME_THREADS")]
    threads: Option<usize>,
    /// Solver state budget; also the verifier's node budget per branch.
    #[arg(long, global = true)]
    budget_states: Option<usize>,
    /// Longest game explored by the verifier and deepest solver rank.
    #[arg(long, global = true)]
    budget_rounds: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Projective plane PG(2,q): `pp q`.
    Pp,
    /// Affine plane AG(2,q): `ag q`.
    Ag,
    /// Steiner triple system: `sts v`.
    Sts,
    /// Boolean Steiner quadruple system: `sqs v` with v a power of two.
    Sqs,
    /// Transversal design from MOLS: `td k n`.
    Td,
    /// TD(q+1, q) from PG(2,q): `td-from-pp q`.
    TdFromPp,
    /// TD(q, q) from AG(2,q): `td-from-ag q`.
    TdFromAg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Write a design file to standard output.
    Gen {
        family: Family,
        #[arg(required = true, num_args = 1..=2)]
        params: Vec<usize>,
    },
    /// Print the design's parameters; violations go to standard error.
    Validate { file: Option<PathBuf> },
    /// Lower bounds and verified upper strategies.
    Bounds {
        file: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest incidence graph whose strategies are verified.
        #[arg(long, default_value_t = 400)]
        max_vertices: usize,
    },
    /// f(u) for every point and the minimum f(G).
    FValue { file: Option<PathBuf> },
    /// Exact solver on a design's incidence graph or a graph file.
    Solve {
        file: Option<PathBuf>,
        /// Decide this cop count only.
        #[arg(long, conflicts_with = "k_max")]
        k: Option<usize>,
        /// Search k = 1, 2, ... up to this value.
        #[arg(long, default_value_t = 6)]
        k_max: usize,
        /// Where to write the certificate of the last decided k.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Exhaustively verify a named strategy.
    Verify {
        file: Option<PathBuf>,
        /// Strategy name or tag: scan (Cor2.5), bibd (Thm2.4), symmetric
        /// (Thm3.2), near-symmetric (Thm3.4), affine (Thm3.6), sts-half
        /// (Thm4.2), sts-matching (Thm4.3), sqs (Thm4.5), steiner-matching
        /// (Thm4.6), td (Thm5.1).
        #[arg(long)]
        theorem: String,
        /// Expected cop count; a mismatch is an error.
        #[arg(long)]
        cops: Option<usize>,
        /// Also play one game against a seeded random robber and write
        /// its transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Check a certificate against a design or graph file.
    Replay {
        certificate: PathBuf,
        file: Option<PathBuf>,
    },
    /// Adjacency list of the incidence graph.
    ExportGraph { file: Option<PathBuf> },
}

struct Fail(u8, String);

impl Fail {
    fn usage(msg: impl Into<String>) -> Self {
        Fail(2, msg.into())
    }
}

type Outcome = Result<u8, Fail>;

fn read_input(file: Option<&Path>) -> Result<String, Fail> {
    match file {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).map_err(|e| Fail::usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            stdio::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Fail::usage(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn load_design(file: Option<&Path>) -> Result<Design, Fail> {
    io::read_design(&read_input(file)?).map_err(|e| Fail::usage(e.to_string()))
}

fn load_graph(file: Option<&Path>) -> Result<Graph, Fail> {
    let text = read_input(file)?;
    if io::is_graph_file(&text) {
        return io::read_graph(&text).map_err(|e| Fail::usage(e.to_string()));
    }
    let d = io::read_design(&text).map_err(|e| Fail::usage(e.to_string()))?;
    let g = incidence_graph(&d).map_err(|e| Fail::usage(e.to_string()))?;
    Ok((*g).clone())
}

fn verify_options(cli: &Cli) -> VerifyOptions {
    let mut o = VerifyOptions {
        round_budget: cli.budget_rounds,
        threads: cli.threads,
        ..VerifyOptions::default()
    };
    if let Some(n) = cli.budget_states {
        o.node_budget = n;
    }
    o
}

fn tag_of(name: &str) -> Option<&'static str> {
    const NAMES: [(&str, &str); 10] = [
        ("scan", "Cor2.5"),
        ("bibd", "Thm2.4"),
        ("symmetric", "Thm3.2"),
        ("near-symmetric", "Thm3.4"),
        ("affine", "Thm3.6"),
        ("sts-half", "Thm4.2"),
        ("sts-matching", "Thm4.3"),
        ("sqs", "Thm4.5"),
        ("steiner-matching", "Thm4.6"),
        ("td", "Thm5.1"),
    ];
    NAMES
        .iter()
        .find(|(n, t)| n.eq_ignore_ascii_case(name) || t.eq_ignore_ascii_case(name))
        .map(|&(_, t)| t)
}

fn gen(family: Family, params: &[usize]) -> Outcome {
    let arg = |i: usize| {
        params
            .get(i)
            .copied()
            .ok_or_else(|| Fail::usage("missing order parameter"))
    };
    let err = |e: locgame::generators::GenError| Fail::usage(e.to_string());
    let design = match family {
        Family::Pp => projective_plane(arg(0)?).map_err(err)?,
        Family::Ag => affine_plane(arg(0)?).map_err(err)?.design,
        Family::Sts => sts(arg(0)?).map_err(err)?,
        Family::Sqs => {
            let v = arg(0)?;
            if !v.is_power_of_two() || v < 4 {
                return Err(Fail::usage(format!("sqs order {v} is not a power of two")));
            }
            sqs_boolean(v.trailing_zeros() as usize).map_err(err)?
        }
        Family::Td => transversal_design(arg(0)?, arg(1)?).map_err(err)?.design,
        Family::TdFromPp => {
            let pp = projective_plane(arg(0)?).map_err(err)?;
            derive_td_from_pp(&pp, 0).map_err(err)?.design
        }
        Family::TdFromAg => {
            let ap = affine_plane(arg(0)?).map_err(err)?;
            derive_td_from_affine(&ap, 0).map_err(err)?.design
        }
    };
    print!("{}", io::write_design(&design));
    Ok(0)
}

fn validate(file: Option<&Path>) -> Outcome {
    let d = load_design(file)?;
    match validate_bibd(&d) {
        Ok(p) => {
            println!("{p}");
            for t in [2, 3] {
                let k = d.uniform_block_size().unwrap_or(0);
                if k > t && validate_steiner(&d, t).holds {
                    println!("S({t},{k},{})", d.v());
                }
            }
            Ok(0)
        }
        Err(bibd_err) => match detect_groups(&d).map(|td| td.validate_td()) {
            Some(Ok(td)) => {
                println!("TD({},{})", td.k, td.n);
                Ok(0)
            }
            _ => {
                eprintln!("{bibd_err}");
                Ok(1)
            }
        },
    }
}

fn bounds(cli: &Cli, file: Option<&Path>, format: Format, max_vertices: usize) -> Outcome {
    let d = load_design(file)?;
    let opts = ReportOptions {
        max_vertices,
        verify: verify_options(cli),
        ..ReportOptions::default()
    };
    let report = bounds_report(&d, &opts);
    match format {
        Format::Text => print!("{}", io::write_report_text(&report)),
        Format::Json => print!("{}", io::write_report_json(&report)),
    }
    let exhausted = report
        .rows
        .iter()
        .any(|r| r.verdict == RowVerdict::BudgetExhausted);
    Ok(if exhausted { 3 } else { 0 })
}

fn fvalue(file: Option<&Path>) -> Outcome {
    let d = load_design(file)?;
    println!("{}", io::FORMAT_LINE);
    for u in 0..d.v() {
        println!("point {u} f {}", f_value(&d, u));
    }
    println!("f(G) {}", f_of_design(&d));
    Ok(0)
}

fn solve(cli: &Cli, file: Option<&Path>, k: Option<usize>, k_max: usize, cert_path: Option<&Path>) -> Outcome {
    let g = load_graph(file)?;
    let budgets = Budgets {
        states: cli.budget_states.unwrap_or(Budgets::default().states),
        rounds: cli.budget_rounds,
        threads: cli.threads,
    };
    let ks: Vec<usize> = match k {
        Some(0) => return Err(Fail::usage("--k must be at least 1")),
        Some(k) => vec![k],
        None => (1..=k_max).collect(),
    };
    println!("{}", io::FORMAT_LINE);
    let mut lower = 1;
    let mut clean = true;
    let mut last = None;
    let mut value = None;
    for k in ks {
        let r = can_win(&g, k, &budgets);
        match &r.status {
            SolveStatus::CopsWin { rounds } => {
                println!("k {k} COPS_WIN rounds {rounds} states {}", r.states)
            }
            SolveStatus::RobberWins => {
                println!("k {k} ROBBER_WINS states {}", r.states);
                if clean {
                    lower = k + 1;
                }
            }
            SolveStatus::Unknown { reason } => {
                println!("k {k} UNKNOWN states {} # {reason}", r.states);
                clean = false;
            }
        }
        let won = matches!(r.status, SolveStatus::CopsWin { .. });
        last = Some(r);
        if won {
            value = Some(k);
            break;
        }
    }
    match value {
        Some(v) if k.is_some() => println!("zeta <= {v}"),
        Some(v) if clean => println!("zeta {v}"),
        Some(v) => println!("zeta in [{lower},{v}]"),
        None => println!("zeta >= {lower}"),
    }
    if let (Some(path), Some(r)) = (cert_path, &last) {
        if let Some(c) = &r.certificate {
            fs::write(path, io::write_certificate(c, g.n()))
                .map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
        }
    }
    Ok(if clean { 0 } else { 3 })
}

fn verify(cli: &Cli, file: Option<&Path>, theorem: &str, cops: Option<usize>, transcript: Option<&Path>) -> Outcome {
    let tag = tag_of(theorem).ok_or_else(|| Fail::usage(format!("unknown strategy {theorem:?}")))?;
    let d = load_design(file)?;
    let g = incidence_graph(&d).map_err(|e| Fail::usage(e.to_string()))?;
    let up = upper_strategies(&d, ReportOptions::default().packing_budget)
        .into_iter()
        .find(|u| u.tag == tag)
        .ok_or_else(|| Fail::usage(format!("{tag} does not apply to this design")))?;
    let used = up.strategy.cops();
    if let Some(c) = cops {
        if c != used {
            return Err(Fail::usage(format!("{tag} uses {used} cops, not {c}")));
        }
    }
    if let Some(path) = transcript {
        let budget = cli.budget_rounds.unwrap_or(4 * g.n());
        let r = play(&g, up.strategy.as_ref(), &mut RandomCell::new(cli.seed), budget);
        fs::write(path, io::write_transcript(&r.transcript))
            .map_err(|e| Fail::usage(format!("{}: {e}", path.display())))?;
    }
    match verify_strategy_exhaustive(&g, up.strategy.as_ref(), &verify_options(cli)) {
        Ok(Verdict::Proven { rounds }) => {
            println!("PROVEN {tag} cops {used} rounds {rounds}");
            Ok(0)
        }
        Ok(Verdict::Counterexample { transcript }) => {
            println!("COUNTEREXAMPLE {tag} cops {used}");
            print!("{}", io::write_transcript(&transcript));
            Ok(1)
        }
        Err(e @ VerifyError::BudgetExhausted { .. }) => {
            println!("BUDGET {tag} cops {used} # {e}");
            Ok(3)
        }
        Err(e) => Err(Fail(1, e.to_string())),
    }
}

fn replay(cli: &Cli, cert_path: &Path, file: Option<&Path>) -> Outcome {
    let text = read_input(Some(cert_path))?;
    let (cert, n) = io::read_certificate(&text).map_err(|e| Fail::usage(e.to_string()))?;
    let g = load_graph(file)?;
    if g.n() != n {
        println!("FAIL certificate is for {n} vertices, graph has {}", g.n());
        return Ok(1);
    }
    let checked = match &cert {
        Certificate::Cops(c) => c.check(&g, &verify_options(cli)),
        Certificate::Robber(c) => c.check(&g),
    };
    match checked {
        Ok(()) => {
            println!("PASS");
            Ok(0)
        }
        Err(e) => {
            println!("FAIL {e}");
            Ok(1)
        }
    }
}

fn export_graph(file: Option<&Path>) -> Outcome {
    let d = load_design(file)?;
    let ig = incidence_graph(&d).map_err(|e| Fail::usage(e.to_string()))?;
    print!("{}", io::write_graph(&ig, Some(&ig)));
    Ok(0)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Gen { family, params } => gen(*family, params),
        Command::Validate { file } => validate(file.as_deref()),
        Command::Bounds {
            file,
            format,
            max_vertices,
        } => bounds(cli, file.as_deref(), *format, *max_vertices),
        Command::FValue { file } => fvalue(file.as_deref()),
        Command::Solve {
            file,
            k,
            k_max,
            certificate,
        } => solve(cli, file.as_deref(), *k, *k_max, certificate.as_deref()),
        Command::Verify {
            file,
            theorem,
            cops,
            transcript,
        } => verify(cli, file.as_deref(), theorem, *cops, transcript.as_deref()),
        Command::Replay { certificate, file } => replay(cli, certificate, file.as_deref()),
        Command::ExportGraph { file } => export_graph(file.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let code = match run(&cli) {
        Ok(code) => code,
        Err(Fail(code, msg)) => {
            eprintln!("locgame: {msg}");
            code
        }
    };
    let _ = stdio::stdout().flush();
    ExitCode::from(code)
}
