use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use qlogic::checker::{self, Strategy};
use qlogic::fol::{self, Form, LatticeSentence, Solver};
use qlogic::formulas::Named;
use qlogic::suites::{run_suites, Suite, SuiteConfig};
use qlogic::{eval, Assignment, Equation, Error, Term};

/// Exit codes.
const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const PARSE: u8 = 3;
const BINDING: u8 = 4;

#[derive(Parser)]
#[command(name = "qlogic", version, about = "Exact workbench for the subspace lattices of C^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term under a fixture and print the resulting subspace.
    Eval {
        /// Term text, e.g. `(p v q) ^ ~r`.
        term: Option<String>,
        /// Use a named formula (see `emit`) instead of term text.
        #[arg(long, conflicts_with = "term")]
        named: Option<Named>,
        /// Assignment fixture file.
        #[arg(long, short)]
        fixture: PathBuf,
    },
    /// Search for a counterexample to an equation in C^n.
    Check {
        /// Equation text, e.g. `p ^ (q v r) = (p ^ q) v (p ^ r)`; a bare term `t` means `t = 0`.
        equation: Option<String>,
        #[arg(long, conflicts_with = "equation")]
        named: Option<Named>,
        #[arg(long, short = 'n')]
        ambient: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Random assignments after the structured families.
        #[arg(long, default_value_t = checker::DEFAULT_SAMPLES)]
        samples: usize,
        /// Non-coordinate lines added to the coordinate family.
        #[arg(long, default_value_t = 4)]
        extra_lines: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Print a named formula: alpha, beta, alpha-iter:M, gamma:K, oml,
    /// modular, distributive, eq-char, eq-char-dual, separation:I.
    Emit { name: Named },
    /// Print the witness fixture of a named formula.
    Witness { name: Named },
    /// Run acceptance suites: all, beta, alpha-bound (lemma2), alpha-lines
    /// (lemma3), separation, laws, embedding (lemma4), oracle, gamma.
    Suite {
        name: String,
        #[arg(long)]
        max_i: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// One JSON record per check instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Compile a first-order lattice sentence into SMT-LIB over the reals.
    Compile {
        /// Sentence file; `-` reads stdin.
        path: Option<PathBuf>,
        /// Sentence text instead of a file.
        #[arg(long, short = 'e', conflicts_with_all = ["path", "named"])]
        sentence: Option<String>,
        /// Universal closure of a named equation.
        #[arg(long, conflicts_with = "path")]
        named: Option<Named>,
        #[arg(long, short = 'n')]
        n: usize,
        #[arg(long, default_value = "validity")]
        form: Form,
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Run an SMT solver (e.g. `z3`) on the result.
        #[arg(long)]
        solver: Option<String>,
        /// Solver timeout in seconds.
        #[arg(long, default_value_t = 60)]
        timeout: u64,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => PARSE,
        Error::UnboundVariable(_)
        | Error::NotClosed(_)
        | Error::AmbientMismatch { .. }
        | Error::DimensionMismatch(_) => BINDING,
        Error::Certification(_) => FAIL,
        _ => USAGE,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: exit_code(&err),
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn set_jobs(jobs: usize) -> Result<(), Failure> {
    if jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build_global()
        .map_err(|e| usage(e.to_string()))
}

fn pick<T>(
    text: Option<String>,
    named: Option<Named>,
    parse: impl Fn(&str) -> qlogic::Result<T>,
    build: impl Fn(Named) -> qlogic::Result<T>,
) -> Result<T, Failure> {
    match (text, named) {
        (Some(t), _) => Ok(parse(&t)?),
        (None, Some(n)) => Ok(build(n)?),
        (None, None) => Err(usage("give the formula as text or with --named")),
    }
}

fn parse_equation(src: &str) -> qlogic::Result<Equation> {
    match Equation::parse(src) {
        Ok(eq) => Ok(eq),
        Err(eq_err) => match Term::parse(src) {
            Ok(t) => Ok(Equation::new(t, Term::bot())),
            Err(_) => Err(eq_err),
        },
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Eval { term, named, fixture } => {
            let t = pick(term, named, Term::parse, |n| match n.build()? {
                qlogic::formulas::Formula::Term(t) => Ok(t),
                qlogic::formulas::Formula::Equation(_) => {
                    Err(Error::InvalidArgument(format!("`{n:?}` is an equation, not a term")))
                }
            })?;
            let a = Assignment::parse_fixture(&read_text(&fixture)?)?;
            let s = eval(&t, &a)?;
            println!("dim {} of C^{}", s.dim(), s.ambient());
            print!("{}", s.basis());
            Ok(PASS)
        }
        Command::Check {
            equation,
            named,
            ambient,
            seed,
            samples,
            extra_lines,
            jobs,
        } => {
            set_jobs(jobs)?;
            let eq = pick(equation, named, parse_equation, |n| Ok(n.build()?.into_equation()))?;
            let mut strategies = vec![Strategy::NamedWitnesses];
            if ambient <= checker::MAX_FAMILY_AMBIENT {
                strategies.push(Strategy::coordinate(extra_lines));
            }
            strategies.push(Strategy::random(seed, samples));
            println!("checking {eq} in C^{ambient} (seed {seed})");
            let verdict = checker::check(&eq, ambient, &strategies)?;
            print!("{verdict}");
            Ok(if verdict.is_counterexample() { FAIL } else { PASS })
        }
        Command::Emit { name } => {
            println!("{}", name.build()?);
            Ok(PASS)
        }
        Command::Witness { name } => match name.witness() {
            Some(a) => {
                print!("{a}");
                Ok(PASS)
            }
            None => Err(usage(format!("no witness is stored for `{name:?}`"))),
        },
        Command::Suite {
            name,
            max_i,
            seed,
            samples,
            jobs,
            json,
        } => {
            set_jobs(jobs)?;
            let suites = Suite::parse_list(&name)?;
            let mut cfg = SuiteConfig::default();
            if let Some(i) = max_i {
                cfg.max_i = i;
            }
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(n) = samples {
                cfg.samples = n;
                cfg.separation_samples = cfg.separation_samples.min(n);
            }
            let report = run_suites(&suites, &cfg)?;
            if json {
                print!("{}", report.to_json_lines());
            } else {
                println!("seed {} samples {} max-i {}", cfg.seed, cfg.samples, cfg.max_i);
                print!("{report}");
            }
            Ok(if report.passed() { PASS } else { FAIL })
        }
        Command::Compile {
            path,
            sentence,
            named,
            n,
            form,
            out,
            solver,
            timeout,
        } => {
            let s: LatticeSentence = match (path, sentence, named) {
                (Some(p), _, _) => fol::parse_sentence(&read_text(&p)?)?,
                (None, Some(t), _) => fol::parse_sentence(&t)?,
                (None, None, Some(nm)) => fol::universal_closure(&nm.build()?.into_equation()),
                (None, None, None) => return Err(usage("give a sentence file, --sentence or --named")),
            };
            let c = fol::compile_full(&s, n)?;
            let text = c.solver_text(form);
            match &out {
                Some(p) => {
                    fs::write(p, &text).map_err(|e| usage(format!("{}: {e}", p.display())))?;
                    println!("{}", c.stats);
                }
                None => {
                    print!("{text}");
                    eprintln!("{}", c.stats);
                }
            }
            let Some(program) = solver else {
                return Ok(PASS);
            };
            let solver = Solver::for_program(&program);
            let verdict = solver.run(&text, Duration::from_secs(timeout))?;
            let report = format!("solver: {}", verdict.label());
            if out.is_some() {
                println!("{report}");
            } else {
                eprintln!("{report}");
            }
            if let fol::SolverVerdict::Invalid(model) = &verdict {
                if form == Form::Refutation && out.is_some() {
                    println!("{model}");
                }
            }
            Ok(if matches!(verdict, fol::SolverVerdict::Invalid(_)) {
                FAIL
            } else {
                PASS
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { PASS };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
