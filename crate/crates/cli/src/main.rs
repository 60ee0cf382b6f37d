use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use meshknit::center::{a_inf_obstruction, check_propagation, mu_element, single_orbit_element, support_report};
use meshknit::mesh::{diamond_cokernel, knit_layers, path_sign_check};
use meshknit::oracle::{Oracle, DEFAULT_ORACLE_FIELD};
use meshknit::report::{self, Body, Format, RunConfig};
use meshknit::{Error, FieldSpec, QuiverKind, TranslationQuiver};

const EXIT_COUNTEREXAMPLE: u8 = 1;
const EXIT_WINDOW: u8 = 2;
const EXIT_TRUNCATED: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "meshknit", version, about = "Mesh-category Hom spaces, knitting and graded-center supports")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// q or p:<prime>; defaults to q, and to p:5 for `oracle`.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value = "tsv")]
    format: String,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, env = "MESHKNIT_WINDOW", default_value_t = 2)]
    window: u32,
    #[arg(long, global = true, default_value_t = 4)]
    kmax: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Radical layers of Hom(-, M) by knitting.
    Knit {
        /// dihedral, zainf or tube:<n>
        #[arg(long, default_value = "dihedral")]
        quiver: String,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        vertex: String,
    },
    /// Cokernel of the two diamond legs into a dihedral vertex.
    Diamond {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "0,0", allow_hyphen_values = true)]
        vertex: String,
    },
    /// Support report of a graded-center element.
    Center {
        #[arg(long, default_value = "dihedral")]
        quiver: String,
        /// Diamond element of size n (dihedral only).
        #[arg(long, conflicts_with_all = ["orbit", "obstruction"])]
        mu: Option<u32>,
        /// Single-orbit element through this vertex; needs --degree.
        #[arg(long, requires = "degree", allow_hyphen_values = true)]
        orbit: Option<String>,
        /// Rim obstruction on zainf; needs --degree.
        #[arg(long, requires = "degree")]
        obstruction: bool,
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
        /// Add the propagation hypotheses and conclusion.
        #[arg(long)]
        report: bool,
    },
    /// Verifier suite on stmod k[t]/(t^n).
    Oracle {
        #[arg(long)]
        n: u32,
        /// Check names or `all`; repeatable or comma separated.
        #[arg(long = "check", value_delimiter = ',', default_value = "all")]
        checks: Vec<String>,
    },
    /// Signs relating parallel paths u -> v.
    Signcheck {
        #[arg(long, default_value = "dihedral")]
        quiver: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
    },
}

struct Outcome {
    text: String,
    code: u8,
    witness: Option<String>,
}

fn build_quiver(spec: &str, window: u32) -> Result<TranslationQuiver, Error> {
    let kind: QuiverKind = spec.parse()?;
    meshknit::quiver::QuiverDescription { kind, window }.build()
}

fn done(config: &RunConfig, body: &Body) -> Outcome {
    Outcome { text: report::render(config, body), code: 0, witness: None }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let c = &cli.common;
    let default_field = match cli.command {
        Command::Oracle { .. } => DEFAULT_ORACLE_FIELD,
        _ => FieldSpec::Rationals,
    };
    let field: FieldSpec = match &c.field {
        Some(f) => f.parse()?,
        None => default_field,
    };
    let format: Format = c.format.parse()?;
    let base = |name: &str| RunConfig::new(name, field, c.window, c.kmax, format, c.seed);
    match &cli.command {
        Command::Knit { quiver, vertex } => {
            let q = build_quiver(quiver, c.window)?;
            let v = q.parse_vertex(vertex)?;
            let config = base("knit")?.param("quiver", q.kind()).param("vertex", v);
            let table = knit_layers(&q, &v, c.kmax, c.window)?;
            let mut out = done(&config, &report::layer_table(&table));
            if table.truncated() {
                out.code = EXIT_TRUNCATED;
                out.witness = Some(format!("knitting left its validity range after layer {}", table.valid_through));
            }
            Ok(out)
        }
        Command::Diamond { n, vertex } => {
            let q = build_quiver("dihedral", c.window)?;
            let v = q.parse_vertex(vertex)?;
            let config = base("diamond")?.param("n", n).param("vertex", v);
            let table = diamond_cokernel(&q, &v, *n, c.window, field)?;
            Ok(done(&config, &report::layer_table(&table)))
        }
        Command::Center { quiver, mu, orbit, obstruction, degree, report: with_report } => {
            let q = build_quiver(quiver, c.window)?;
            let mut config = base("center")?.param("quiver", q.kind()).param("report", with_report);
            if *obstruction {
                let r = degree.expect("clap requires --degree");
                config = config.param("obstruction", r);
                let rep = a_inf_obstruction(&q, r, c.window, field)?;
                let mut out = done(&config, &report::obstruction(&rep));
                if !rep.certified {
                    out.code = EXIT_COUNTEREXAMPLE;
                    out.witness = rep.witness.clone();
                }
                return Ok(out);
            }
            let element = match (mu, orbit) {
                (Some(n), None) => {
                    config = config.param("mu", n);
                    mu_element(&q, *n)?
                }
                (None, Some(v)) => {
                    let v = q.parse_vertex(v)?;
                    let r = degree.expect("clap requires --degree");
                    config = config.param("orbit", v).param("degree", r);
                    single_orbit_element(&q, &v, r, c.window)?
                }
                _ => return Err(Error::Unsupported("center needs one of --mu, --orbit or --obstruction".into())),
            };
            let support = support_report(&element, c.window)?;
            let propagation = if *with_report { Some(check_propagation(&q, &element, c.window)?) } else { None };
            Ok(done(&config, &report::support(&support, propagation.as_ref())))
        }
        Command::Oracle { n, checks } => {
            let config = base("oracle")?.param("n", n).param("checks", checks.join(","));
            let oracle = Oracle::new(*n, field)?;
            let verdicts = oracle.run_checks(checks)?;
            let mut out = done(&config, &report::verdicts(&verdicts));
            if let Some(bad) = verdicts.iter().find(|v| !v.passed) {
                out.code = EXIT_COUNTEREXAMPLE;
                out.witness = Some(format!("{}: {}", bad.check, bad.witness.as_deref().unwrap_or("no witness")));
            }
            Ok(out)
        }
        Command::Signcheck { quiver, from, to } => {
            let q = build_quiver(quiver, c.window)?;
            let (u, v) = (q.parse_vertex(from)?, q.parse_vertex(to)?);
            let config = base("signcheck")?.param("quiver", q.kind()).param("from", u).param("to", v);
            let rep = path_sign_check(&q, &u, &v, None, c.window, field)?;
            let mut out = done(&config, &report::sign_report(&rep));
            if let Some(first) = rep.counterexamples.first() {
                out.code = EXIT_COUNTEREXAMPLE;
                out.witness = Some(first.clone());
            }
            Ok(out)
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Window { .. } => EXIT_WINDOW,
        Error::Counterexample(_) | Error::Consistency(_) => EXIT_COUNTEREXAMPLE,
        _ => EXIT_USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.common.out {
                if let Err(e) = fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            } else {
                print!("{}", out.text);
            }
            if let Some(w) = &out.witness {
                eprintln!("{}: {w}", if out.code == EXIT_TRUNCATED { "truncated" } else { "witness" });
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
