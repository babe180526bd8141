//! One binary, subcommand style: parse, stab, saturate, eliminate,
//! certify, brute and check. Human-readable text by default, `--json` for
//! machines. Every subcommand is a pure function of (input file, flags,
//! seed); nothing in the output depends on timing or thread count.
//!
//! Exit codes: 0 success, 1 other failure, 2 parse error, 3 cap exceeded,
//! 4 unsound audit outcome, 64 usage.

mod output;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::exit;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use boolcert::algebra::{eliminate_univariate, ElimOptions, Mode};
use boolcert::certificate::{certify, PipelineConfig, Verdict};
use boolcert::oracle::{audit, brute_force, random_system, AuditClass};
use boolcert::saturation::{build_g, term_bound};
use boolcert::symmetry::PolySystem;
use boolcert::sysfile::{format_system_file, parse_system_file};
use boolcert::Error;

const EXIT_FAILURE: i32 = 1;
const EXIT_PARSE: i32 = 2;
const EXIT_CAP: i32 = 3;
const EXIT_UNSOUND: i32 = 4;
const EXIT_USAGE: i32 = 64;

#[derive(Parser)]
#[command(
    name = "boolcert",
    version,
    about = "Symmetry-based emptiness certificates for Boolean polynomial systems"
)]
struct Cli {
    /// Emit machine-readable JSON on stdout
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the parallel scans (0 = automatic)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Eliminate inside the quotient ring (exact, complete for it)
    Quotient,
    /// Eliminate among plain polynomials with bounded multipliers
    Raw,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Quotient => Mode::Quotient,
            ModeArg::Raw => Mode::Raw,
        }
    }
}

#[derive(Args)]
struct PipelineArgs {
    /// Elimination engine
    #[arg(long, value_enum, default_value_t = ModeArg::Quotient)]
    mode: ModeArg,
    /// Variable the elimination keeps
    #[arg(long, default_value_t = 0)]
    var: usize,
    /// Raw-mode multiplier degree cap (defaults to the ambient size)
    #[arg(long)]
    raw_degree_cap: Option<usize>,
    /// Most candidate points the zero-column scan will evaluate
    #[arg(long, default_value_t = 10_000)]
    beta_budget: usize,
    /// Largest ambient size whose symmetric group is enumerated
    #[arg(long, default_value_t = 8)]
    group_cap: usize,
    /// Largest ambient size the exhaustive cube oracle accepts
    #[arg(long, default_value_t = 16)]
    cube_cap: usize,
    /// Warn on stderr when the destabilizer size c exceeds this threshold
    #[arg(long)]
    c0: Option<usize>,
}

impl PipelineArgs {
    fn validate(&self) -> Result<(), CliError> {
        if self.beta_budget == 0 || self.group_cap == 0 || self.cube_cap == 0 {
            return Err(CliError {
                code: EXIT_USAGE,
                msg: "caps and budgets must be positive".to_string(),
            });
        }
        Ok(())
    }

    fn config(&self) -> PipelineConfig {
        PipelineConfig {
            mode: self.mode.into(),
            elim_var: self.var,
            raw_degree_cap: self.raw_degree_cap,
            beta_budget: self.beta_budget,
            group_cap: self.group_cap,
            cube_cap: self.cube_cap,
            ..PipelineConfig::default()
        }
    }

    fn warn_c0(&self, c: usize) {
        if let Some(c0) = self.c0 {
            if c > c0 {
                eprintln!("warning: destabilizer size c = {c} exceeds the c0 threshold {c0}");
            }
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse a system file and echo its canonical form
    Parse { file: PathBuf },
    /// Split the symmetric group into stabilizer and destabilizer
    Stab {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        group_cap: usize,
    },
    /// Compute the symmetrized products G of the system
    Saturate {
        file: PathBuf,
        #[arg(long, default_value_t = 8)]
        group_cap: usize,
    },
    /// Eliminate down to one variable, with a cofactor certificate
    Eliminate {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Quotient)]
        mode: ModeArg,
        #[arg(long, default_value_t = 0)]
        var: usize,
        #[arg(long)]
        raw_degree_cap: Option<usize>,
        #[arg(long, default_value_t = 8)]
        group_cap: usize,
    },
    /// Run the full pipeline and report a verdict
    Certify {
        file: PathBuf,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
    /// Enumerate the zero set over the whole Boolean cube
    Brute {
        file: PathBuf,
        #[arg(long, default_value_t = 16)]
        cube_cap: usize,
    },
    /// Audit verdicts against the exhaustive oracle (files and/or --random)
    Check {
        files: Vec<PathBuf>,
        /// Also audit this many seeded random systems
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Seed for the random systems
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest ambient size for random systems
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Most members per random system
        #[arg(long, default_value_t = 3)]
        max_k: usize,
        /// Most terms per random member
        #[arg(long, default_value_t = 3)]
        max_terms: usize,
        #[command(flatten)]
        pipeline: PipelineArgs,
    },
}

struct CliError {
    code: i32,
    msg: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::Parse { .. } | Error::SystemFile { .. } => EXIT_PARSE,
            e if e.is_cap_exceeded() => EXIT_CAP,
            _ => EXIT_FAILURE,
        };
        CliError {
            code,
            msg: e.to_string(),
        }
    }
}

fn read_system(path: &Path) -> Result<PolySystem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        code: EXIT_FAILURE,
        msg: format!("{}: {e}", path.display()),
    })?;
    parse_system_file(&text).map_err(|e| CliError {
        code: EXIT_PARSE,
        msg: format!("{}: {e}", path.display()),
    })
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                exit(0);
            }
            _ => {
                eprint!("{e}");
                exit(EXIT_USAGE);
            }
        },
    };
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    match run(&cli) {
        Ok(code) => exit(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            exit(e.code);
        }
    }
}

fn run(cli: &Cli) -> Result<i32, CliError> {
    match &cli.cmd {
        Cmd::Parse { file } => {
            let sys = read_system(file)?;
            if cli.json {
                println!("{}", output::system_json(&sys));
            } else {
                print!("{}", format_system_file(&sys));
            }
            Ok(0)
        }
        Cmd::Stab { file, group_cap } => {
            let sys = read_system(file)?;
            let split = sys.stabilizer(*group_cap)?;
            if cli.json {
                println!("{}", output::stab_json(&split));
            } else {
                println!("n: {}", split.n());
                println!("group order: {}", split.stab_order() + split.c());
                println!("stab_order: {}", split.stab_order());
                println!("c: {}", split.c());
                if split.stab_order() <= 64 {
                    println!("stabilizer:");
                    for sigma in split.stab() {
                        println!("  {sigma}");
                    }
                } else {
                    println!("stabilizer: (order {}, use --json)", split.stab_order());
                }
            }
            Ok(0)
        }
        Cmd::Saturate { file, group_cap } => {
            let sys = read_system(file)?;
            let split = sys.stabilizer(*group_cap)?;
            let sat = build_g(&sys, &split);
            if cli.json {
                println!("{}", output::saturate_json(&sat));
            } else {
                println!("# c = {}", split.c());
                for ((_, f), g) in sys.iter().zip(sat.g_polys()) {
                    println!(
                        "# {} terms (bound {})",
                        g.term_count(),
                        term_bound(f.term_count(), split.c())
                    );
                }
                print!("{}", format_system_file(&sat.g_system()));
            }
            Ok(0)
        }
        Cmd::Eliminate {
            file,
            mode,
            var,
            raw_degree_cap,
            group_cap,
        } => {
            let sys = read_system(file)?;
            let split = sys.stabilizer(*group_cap)?;
            let sat = build_g(&sys, &split);
            let opts = ElimOptions {
                raw_degree_cap: *raw_degree_cap,
                ..ElimOptions::default()
            };
            let elim = eliminate_univariate(&sat, *var, (*mode).into(), &opts)?;
            if cli.json {
                println!("{}", output::elimination_json(sys.names(), &elim));
            } else {
                println!("mode: {}", elim.mode);
                println!("var: x{}", elim.var);
                match &elim.p {
                    Some(p) => println!("p: {p}"),
                    None => println!("p: NONE (no univariate member within the degree cap)"),
                }
                let roots: Vec<String> = elim.beta.iter().map(|r| r.to_string()).collect();
                println!("beta: [{}]", roots.join(", "));
                println!("cofactors:");
                for (name, h) in sys.names().iter().zip(&elim.cofactors) {
                    println!("  {name} : {h}");
                }
                println!("verified: {}", elim.verified);
            }
            Ok(0)
        }
        Cmd::Certify { file, pipeline } => {
            pipeline.validate()?;
            let sys = read_system(file)?;
            let verdict = certify(&sys, &pipeline.config())?;
            pipeline.warn_c0(verdict.c);
            if cli.json {
                println!("{}", output::verdict_json(&verdict));
            } else {
                print!("{}", verdict_text(&verdict));
            }
            Ok(0)
        }
        Cmd::Brute { file, cube_cap } => {
            let sys = read_system(file)?;
            let report = brute_force(&sys, *cube_cap)?;
            if cli.json {
                println!("{}", output::brute_json(&report));
            } else {
                println!("n: {}", report.n);
                println!("count: {}", report.count);
                for point in &report.points {
                    println!("{}", output::point_text(point));
                }
            }
            Ok(0)
        }
        Cmd::Check {
            files,
            random,
            seed,
            max_n,
            max_k,
            max_terms,
            pipeline,
        } => {
            pipeline.validate()?;
            if files.is_empty() && *random == 0 {
                return Err(CliError {
                    code: EXIT_USAGE,
                    msg: "nothing to check: pass system files and/or --random N".to_string(),
                });
            }
            if *random > 0 && (*max_n == 0 || *max_k == 0 || *max_terms == 0) {
                return Err(CliError {
                    code: EXIT_USAGE,
                    msg: "--max-n, --max-k and --max-terms must be positive".to_string(),
                });
            }
            let config = pipeline.config();
            let mut systems: Vec<(String, PolySystem)> = Vec::new();
            for file in files {
                systems.push((file.display().to_string(), read_system(file)?));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for i in 0..*random {
                systems.push((
                    format!("random-{i}"),
                    random_system(&mut rng, *max_n, *max_k, *max_terms),
                ));
            }

            let mut sound = 0usize;
            let mut gaps = 0usize;
            let mut unsound = 0usize;
            let mut inconclusive = 0usize;
            for (label, sys) in &systems {
                let report = audit(sys, &config)?;
                pipeline.warn_c0(report.verdict.c);
                match report.class {
                    AuditClass::Sound => sound += 1,
                    AuditClass::PaperGap => gaps += 1,
                    AuditClass::Unsound => unsound += 1,
                }
                if report.verdict.tag == boolcert::certificate::VerdictTag::Inconclusive {
                    inconclusive += 1;
                }
                if cli.json {
                    println!("{}", output::audit_json(label, sys, &report));
                } else {
                    println!(
                        "{label}: {} {} — {}",
                        report.class, report.verdict.tag, report.detail
                    );
                }
            }
            let total = systems.len();
            let rate = 100.0 * inconclusive as f64 / total as f64;
            let summary = format!(
                "checked {total}: {sound} SOUND, {gaps} PAPER_GAP, {unsound} UNSOUND \
                 (inconclusive rate {rate:.1}%)"
            );
            if cli.json {
                // keep stdout pure JSONL; the summary goes to stderr
                eprintln!("{summary}");
            } else {
                println!("{summary}");
            }
            Ok(if unsound > 0 { EXIT_UNSOUND } else { 0 })
        }
    }
}

fn verdict_text(v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict: {}", v.tag);
    match &v.witness {
        Some(w) => {
            let _ = writeln!(out, "witness: {}", output::point_text(w));
        }
        None => {
            let _ = writeln!(out, "witness: none");
        }
    }
    let _ = writeln!(out, "mode: {}", v.mode);
    let _ = writeln!(out, "c: {}", v.c);
    let _ = writeln!(out, "stab_order: {}", v.stab_order);
    match &v.p {
        Some(p) => {
            let _ = writeln!(out, "p: {p}");
        }
        None => {
            let _ = writeln!(out, "p: NONE");
        }
    }
    let _ = writeln!(out, "candidates tried: {}", v.beta_candidates_tried);
    let _ = writeln!(out, "evidence: {}", v.evidence);
    out
}
