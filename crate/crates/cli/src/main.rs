use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use liecorr::collection::{
    collect, expand, hall_petresco_tau, log_valuation, verify_hall_petresco,
};
use liecorr::format::{self, AlgebraDoc, EquationDoc, SeriesDoc};
use liecorr::group::{bch_series, exp, log, GroupElement};
use liecorr::lie::series_to_lie;
use liecorr::lyndon::{enumerate_lyndon, lyndon_counts};
use liecorr::models::solver::group_equation_residual;
use liecorr::models::{solve_group_equation, SCLieAlgebra};
use liecorr::scalar::{parse_rational, Rational};
use liecorr::series::{TruncatedSeries, Valuation};
use liecorr::terms::{lie_term_truncations, term_to_lie, MixedTerm};
use liecorr::verify::{run_suite, VerifyOptions, SUITES};
use liecorr::Error;

const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_PROPERTY: u8 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "liecorr",
    version,
    about = "Exact BCH, Lyndon bases, commutator collection and nilpotent models"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// BCH product of two series, printed in Lyndon coordinates.
    Bch {
        a: PathBuf,
        b: PathBuf,
        /// Truncate both inputs to this degree first.
        #[arg(short = 'N', long)]
        truncation: Option<usize>,
    },
    /// Exponential of a series with zero constant term.
    Exp { input: Option<PathBuf> },
    /// Logarithm of a series with constant term 1.
    Log {
        input: Option<PathBuf>,
        /// Print the result in Lyndon coordinates (requires a group-like input).
        #[arg(long)]
        lyndon: bool,
    },
    /// Rational power of a group element.
    Power {
        input: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Decomposes a group-like element into Lyndon-commutator powers.
    Collect {
        input: Option<PathBuf>,
        /// Re-expand the decomposition and check it reproduces the input.
        #[arg(long)]
        verify: bool,
    },
    /// Multiplies out a decomposition.
    Expand { input: Option<PathBuf> },
    /// Lyndon words up to a degree, in graded-lex order.
    Lyndon {
        #[arg(short, long)]
        m: usize,
        #[arg(short, long)]
        d: usize,
    },
    /// Layer dimensions of a nilpotent model (free model by default).
    Dims {
        #[arg(short, long, default_value_t = 2)]
        m: usize,
        #[arg(short, long, default_value_t = 3)]
        c: usize,
        /// Algebra document or builtin name (heisenberg, abelian<d>, free-<m>-<c>).
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Compiles a mixed term to a Lie element.
    Term {
        /// Term such as `x0 * [x0, x1] + scale(1/2, x1)`.
        term: String,
        #[arg(short, long)]
        m: Option<usize>,
        #[arg(short = 'N', long, default_value_t = 3)]
        truncation: usize,
        /// Also print the group-word normal form valid in class below this value.
        #[arg(long)]
        class: Option<usize>,
    },
    /// Checks the Hall–Petresco identity and prints the words τ_i.
    HallPetresco {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        class: usize,
    },
    /// Solves g₁ f^λ₁ ⋯ g_n f^λ_n = 1 in a nilpotent model.
    Solve {
        /// Equation document.
        equation: PathBuf,
        /// Algebra document or builtin name; defaults to the equation's algebra-ref.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Runs a property suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = liecorr::random::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        class: Option<usize>,
    },
}

enum Failure {
    Engine(Error),
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type CmdResult = Result<String, Failure>;

fn read_input(path: Option<&PathBuf>) -> Result<String, Error> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn read_series(path: Option<&PathBuf>) -> Result<TruncatedSeries<Rational>, Error> {
    format::series_from_doc(&format::parse_series_doc(&read_input(path)?)?)
}

fn read_group(path: Option<&PathBuf>) -> Result<GroupElement<Rational>, Error> {
    GroupElement::new(read_series(path)?)
}

fn render_series_doc(doc: &SeriesDoc, f: Format) -> String {
    match f {
        Format::Json => format::to_json(doc),
        Format::Text => format::series_doc_to_text(doc),
    }
}

fn render_value(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialise")
}

fn load_algebra(source: &str) -> Result<SCLieAlgebra, Error> {
    if let Some(a) = format::builtin_algebra(source) {
        return Ok(a);
    }
    let text = fs::read_to_string(source).map_err(|e| {
        Error::Parse(format!(
            "algebra {source:?} is neither builtin nor readable: {e}"
        ))
    })?;
    let doc: AlgebraDoc = format::from_json(&text)?;
    format::algebra_from_doc(&doc)
}

fn run(cli: &Cli) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Bch { a, b, truncation } => {
            let mut x = read_series(Some(a))?;
            let mut y = read_series(Some(b))?;
            if let Some(n) = truncation {
                x = x.truncate(*n);
                y = y.truncate(*n);
            }
            let z = bch_series(&x, &y)?;
            Ok(render_series_doc(&format::lie_to_doc(&z), fmt))
        }
        Command::Exp { input } => {
            let x = read_series(input.as_ref())?;
            let g = exp(&x)?;
            Ok(render_series_doc(&format::series_to_doc(g.series()), fmt))
        }
        Command::Log { input, lyndon } => {
            let g = read_group(input.as_ref())?;
            let l = log(&g);
            let doc = if *lyndon {
                format::lie_to_doc(
                    &series_to_lie(&l).map_err(|e| Error::NotGroupLike(e.to_string()))?,
                )
            } else {
                format::series_to_doc(&l)
            };
            Ok(render_series_doc(&doc, fmt))
        }
        Command::Power { input, lambda } => {
            let g = read_group(input.as_ref())?;
            let l = parse_rational(lambda)?;
            Ok(render_series_doc(
                &format::series_to_doc(g.pow(&l).series()),
                fmt,
            ))
        }
        Command::Collect { input, verify } => {
            let g = read_group(input.as_ref())?;
            let d = collect(&g)?;
            let (m, n) = g.shape();
            if *verify && expand(&d, m, n)? != g {
                return Err(Failure::Property(
                    "expand(collect(Q)) differs from Q".into(),
                ));
            }
            let doc = format::decomposition_to_doc(&d, m, n);
            Ok(match fmt {
                Format::Json => format::to_json(&doc),
                Format::Text => format::decomposition_doc_to_text(&doc),
            })
        }
        Command::Expand { input } => {
            let doc = format::parse_decomposition_doc(&read_input(input.as_ref())?)?;
            let d = format::decomposition_from_doc::<Rational>(&doc)?;
            let g = expand(&d, doc.generators, doc.truncation)?;
            Ok(render_series_doc(&format::series_to_doc(g.series()), fmt))
        }
        Command::Lyndon { m, d } => {
            if *m == 0 {
                return Err(Error::Parse("m must be at least 1".into()).into());
            }
            let words = enumerate_lyndon(*m, *d);
            let counts = lyndon_counts(*m, *d);
            Ok(match fmt {
                Format::Json => render_value(&json!({
                    "generators": m,
                    "max_degree": d,
                    "counts": counts,
                    "words": words.iter().map(|w| w.letters().to_vec()).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut out = String::new();
                    for w in &words {
                        out.push_str(&format!("{w}\n"));
                    }
                    let c: Vec<String> = counts.iter().map(usize::to_string).collect();
                    out.push_str(&format!("counts: {}\n", c.join(" ")));
                    out
                }
            })
        }
        Command::Dims { m, c, algebra } => {
            let a = match algebra {
                Some(source) => load_algebra(source)?,
                None => {
                    if *m == 0 || *c == 0 {
                        return Err(Error::Parse("m and c must be at least 1".into()).into());
                    }
                    SCLieAlgebra::free_nilpotent(*m, *c)
                }
            };
            let lcs: Vec<usize> = a.lower_central_series().iter().map(|s| s.dim()).collect();
            let layers: Vec<usize> = lcs.windows(2).map(|w| w[0] - w[1]).collect();
            Ok(match fmt {
                Format::Json => render_value(&json!({
                    "dimension": a.dim(),
                    "class": a.class(),
                    "lower_central_series": lcs,
                    "layers": layers,
                })),
                Format::Text => format!(
                    "dimension: {}\nclass: {}\nlayers: {}\n",
                    a.dim(),
                    a.class(),
                    layers
                        .iter()
                        .map(usize::to_string)
                        .collect::<Vec<_>>()
                        .join(" ")
                ),
            })
        }
        Command::Term {
            term,
            m,
            truncation,
            class,
        } => {
            let t = MixedTerm::parse(term)?;
            let m = m.unwrap_or_else(|| t.arity().max(1));
            match class {
                None => {
                    let l = term_to_lie(&t, m, *truncation)?;
                    Ok(render_series_doc(&format::lie_to_doc(&l), fmt))
                }
                Some(c) => {
                    let (l, w) = lie_term_truncations(&t, m, *c)?;
                    Ok(match fmt {
                        Format::Json => render_value(&json!({
                            "lie": serde_json::to_value(format::lie_to_doc(&l)).expect("serialisable"),
                            "group_word": w.to_string(),
                        })),
                        Format::Text => format!(
                            "{}group word: {w}\n",
                            format::series_doc_to_text(&format::lie_to_doc(&l))
                        ),
                    })
                }
            }
        }
        Command::HallPetresco { n, class } => {
            if *n < 2 || *class < 2 {
                return Err(Error::TruncationTooSmall {
                    got: (*n).min(*class),
                    need: 2,
                }
                .into());
            }
            let holds = verify_hall_petresco(*n, *class);
            let taus = hall_petresco_tau(*n, *class);
            let layered = taus
                .iter()
                .enumerate()
                .all(|(k, t)| log_valuation(t) >= Valuation::Finite(k + 2));
            if !holds || !layered {
                return Err(Failure::Property(format!(
                    "Hall–Petresco identity fails for n={n}, class={class}"
                )));
            }
            Ok(match fmt {
                Format::Json => render_value(&json!({
                    "n": n,
                    "class": class,
                    "holds": true,
                    "taus": taus
                        .iter()
                        .map(|t| serde_json::to_value(format::series_to_doc(t.series())).expect("serialisable"))
                        .collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut out = format!("n: {n}\nclass: {class}\nholds: true\n");
                    for (k, t) in taus.iter().enumerate() {
                        out.push_str(&format!("tau_{} = {}\n", k + 2, t));
                    }
                    out
                }
            })
        }
        Command::Solve { equation, algebra } => {
            let doc: EquationDoc = format::from_json(&read_input(Some(equation))?)?;
            let source = algebra
                .clone()
                .or_else(|| doc.algebra_ref.clone())
                .ok_or_else(|| Error::Parse("no algebra given".into()))?;
            let a = load_algebra(&source)?;
            let (gs, ls) = format::equation_from_doc(&doc)?;
            for g in &gs {
                a.check_vector(g)?;
            }
            let f = solve_group_equation(&a, &gs, &ls)?;
            let residual = group_equation_residual(&a, &gs, &ls, &f);
            if !residual.is_zero() {
                return Err(Failure::Property(format!(
                    "residual {residual} is not the unit"
                )));
            }
            Ok(match fmt {
                Format::Json => render_value(&json!({
                    "f": format::vector_to_strings(&f),
                    "residual": format::vector_to_strings(&residual),
                })),
                Format::Text => format!("f: {f}\nresidual: {residual}\n"),
            })
        }
        Command::Verify {
            suite,
            seed,
            cases,
            n,
            class,
        } => {
            let opts = VerifyOptions {
                seed: *seed,
                cases: *cases,
                n: *n,
                class: *class,
            };
            let rep = run_suite(suite, &opts)?;
            if !rep.is_success() {
                return Err(Failure::Property(rep.to_string()));
            }
            Ok(match fmt {
                Format::Json => render_value(&json!({
                    "suite": rep.suite,
                    "seed": seed,
                    "passed": rep.passed,
                    "failed": rep.failed,
                })),
                Format::Text => format!("{rep}\n"),
            })
        }
    }
}

fn error_record(kind: &str, message: &str, code: u8) -> String {
    json!({"error": kind, "message": message, "exit": code}).to_string()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Verify { suite, .. } = &cli.command {
        if !SUITES.contains(&suite.as_str()) {
            let msg = format!(
                "unknown suite {suite:?}; expected one of {}",
                SUITES.join(", ")
            );
            eprintln!("{}", error_record("Parse", &msg, EXIT_USAGE));
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Engine(e)) => {
            let code = if e.is_parse() {
                EXIT_USAGE
            } else {
                EXIT_PRECONDITION
            };
            eprintln!("{}", error_record(e.kind(), &e.to_string(), code));
            ExitCode::from(code)
        }
        Err(Failure::Property(msg)) => {
            eprintln!("{}", error_record("PropertyFailure", &msg, EXIT_PROPERTY));
            ExitCode::from(EXIT_PROPERTY)
        }
    }
}
