use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use equisphere::exact::{format_rational, parse_rational, Rational};
use equisphere::plane::{johnson_solution, orthocenter_cartesian_oracle, TriangleParams};
use equisphere::pyramid::{classify_value, EtaValue};
use equisphere::rbody::classify_rbody;
use equisphere::sweep::{sweep, CSV_HEADER};
use equisphere::verify::{run_all, run_criterion};
use equisphere::{general_tetra, Error};

#[derive(Parser, Debug)]
#[command(
    name = "equisphere",
    version,
    about = "Equal-radius circle and sphere configurations, computed exactly"
)]
struct Cli {
    /// Decimal digits in printed approximations.
    #[arg(long, global = true, env = "EQUISPHERE_PRECISION", default_value_t = 20,
          value_parser = clap::value_parser!(u32).range(1..=1000))]
    precision: u32,

    /// Output format; `sweep` defaults to csv, everything else to json.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write the report here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Three equal circles through a point for the triangle with squared sides A, B, C.
    Johnson {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long = "C")]
        c: String,
    },
    /// Classify the sphere configurations of the pyramid with squared base edge eta.
    Pyramid {
        /// Rational in (0, 3), or `etabar`.
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        /// Include O* and the four sphere centers of each solution.
        #[arg(long)]
        centers: bool,
    },
    /// Decide whether the pyramid vertices admit an R*-body configuration.
    Rbody {
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
    },
    /// The solution set for the regular tetrahedron with unit edges.
    RegularTetra,
    /// Tabulate pyramid classifications over an eta range.
    Sweep {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        steps: usize,
    },
    /// Run the acceptance suite and report pass/fail per criterion.
    Verify {
        /// Run one criterion only.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        criterion: Option<u32>,
    },
}

struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(format!("i/o: {e}"))
    }
}

struct Report {
    body: String,
    verified: bool,
}

fn rational(s: &str) -> Result<Rational, Failure> {
    Ok(parse_rational(s)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn text_lines(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                text_lines(x, &format!("{prefix}{k}."), out);
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                text_lines(x, &format!("{prefix}{i}."), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{}: {s}\n", prefix.trim_end_matches('.'))),
        other => out.push_str(&format!("{}: {other}\n", prefix.trim_end_matches('.'))),
    }
}

fn render(v: &Value, format: Format) -> Result<String, Failure> {
    match format {
        Format::Json => Ok(pretty(v) + "\n"),
        Format::Text => {
            let mut s = String::new();
            text_lines(v, "", &mut s);
            Ok(s)
        }
        Format::Csv => Err(Failure("csv output is only available for sweep".into())),
    }
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let digits = cli.precision as usize;
    let fmt = cli.format;
    let done = |v: Value| -> Result<Report, Failure> {
        Ok(Report {
            body: render(&v, fmt.unwrap_or(Format::Json))?,
            verified: true,
        })
    };
    match &cli.command {
        Command::Johnson { a, b, c } => {
            let t = TriangleParams::new(rational(a)?, rational(b)?, rational(c)?)?;
            let s = johnson_solution(&t)?;
            let (e, h) = orthocenter_cartesian_oracle(&t)?;
            let oracle = e.distance_coords(&h);
            let matches = oracle
                .iter()
                .zip(&s.coords)
                .all(|(o, x)| o.to_rational().as_ref() == Some(x));
            let v = json!({
                "A": format_rational(t.a()),
                "B": format_rational(t.b()),
                "C": format_rational(t.c()),
                "RT2": format_rational(&t.circumradius_sq()),
                "solution": s.to_json(digits),
                "oracle": {
                    "orthocenter": e.to_f64(&h),
                    "distance_coords": oracle.iter().map(|q| match q.to_rational() {
                        Some(r) => json!(format_rational(&r)),
                        None => json!(q.to_json()),
                    }).collect::<Vec<_>>(),
                    "matches": matches,
                },
            });
            let mut r = done(v)?;
            r.verified = matches;
            Ok(r)
        }
        Command::Pyramid { eta, centers } => {
            let e = EtaValue::parse(eta)?;
            let c = classify_value(&e)?;
            done(c.to_json(digits, *centers))
        }
        Command::Rbody { eta } => {
            let e = match EtaValue::parse(eta)? {
                EtaValue::Rational(r) => r,
                EtaValue::Bar => {
                    return Err(Failure("rbody needs a rational eta".into()));
                }
            };
            done(classify_rbody(&e)?.to_json(digits))
        }
        Command::RegularTetra => done(general_tetra::regular_report(digits)?),
        Command::Sweep { from, to, steps } => {
            let rows = sweep(&rational(from)?, &rational(to)?, *steps, digits)?;
            let body = match fmt.unwrap_or(Format::Csv) {
                Format::Csv | Format::Text => {
                    let mut s = String::from(CSV_HEADER);
                    s.push('\n');
                    for r in &rows {
                        s.push_str(&r.to_csv());
                        s.push('\n');
                    }
                    s
                }
                Format::Json => {
                    let keys: Vec<&str> = CSV_HEADER.split(',').collect();
                    let v: Vec<Value> = rows
                        .iter()
                        .map(|r| {
                            let cols = r.to_csv();
                            let m: serde_json::Map<String, Value> = keys
                                .iter()
                                .zip(cols.split(','))
                                .map(|(k, c)| (k.to_string(), Value::String(c.to_string())))
                                .collect();
                            Value::Object(m)
                        })
                        .collect();
                    pretty(&Value::Array(v)) + "\n"
                }
            };
            Ok(Report {
                body,
                verified: true,
            })
        }
        Command::Verify { criterion } => {
            let reports = match criterion {
                Some(i) => vec![run_criterion(*i as usize)],
                None => run_all(),
            };
            let verified = reports.iter().all(|r| r.passed);
            let body = match fmt.unwrap_or(Format::Text) {
                Format::Json => pretty(&json!(reports)) + "\n",
                _ => {
                    let mut s = String::new();
                    for r in &reports {
                        s.push_str(&r.summary_line());
                        s.push('\n');
                        for c in r.checks.iter().filter(|c| !c.passed) {
                            s.push_str(&format!("    {}: {}\n", c.name, c.detail));
                        }
                    }
                    s
                }
            };
            Ok(Report { body, verified })
        }
    }
}

fn emit(cli: &Cli, body: &str) -> io::Result<()> {
    match &cli.output {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(body.as_bytes())?;
            w.flush()
        }
        None => io::stdout().lock().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(&cli) {
        Ok(r) => {
            if let Err(e) = emit(&cli, &r.body) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            if r.verified {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(2)
            }
        }
        Err(Failure(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
