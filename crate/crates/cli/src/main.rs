use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use umbral_mzv::bernoulli::{apostol_bernoulli_poly, ApostolParams};
use umbral_mzv::extbern::{beta_symbolic, beta_tilde, connection_probe, TailConvention};
use umbral_mzv::mzv::{zeta, ZetaMethod};
use umbral_mzv::powersum::{symbolic_h, symbolic_h_at, symbolic_li, symbolic_s};
use umbral_mzv::verify::{run_suite, Suite};
use umbral_mzv::{MultiIndex, Rational};

#[derive(Parser)]
#[command(name = "umbral-mzv", version, about = "Exact multiple power sums, extended Bernoulli polynomials and zeta values at non-positive integers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Shifted,
    Tilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Raabe,
    Renorm,
    ConstantTerm,
    Depth2,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Tilde,
    ShiftedZero,
}

#[derive(Subcommand)]
enum Command {
    /// Bernoulli or Apostol-Bernoulli polynomial B_n(x|lambda).
    Bern {
        #[arg(long)]
        n: u64,
        /// Evaluate at this point instead of printing coefficients.
        #[arg(long)]
        x: Option<Rational>,
        #[arg(long, default_value = "1")]
        lambda: Rational,
    },
    /// Multiple power sum H (or the weak sum S with --weak).
    Powersum {
        #[arg(long)]
        indices: MultiIndex,
        #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
        upper: Option<Rational>,
        /// Print the polynomial in N, ascending coefficients.
        #[arg(long)]
        poly: bool,
        #[arg(long)]
        weak: bool,
    },
    /// Truncated polylogarithm at negative indices.
    Polylog {
        #[arg(long)]
        indices: MultiIndex,
        #[arg(long)]
        z: Rational,
        #[arg(long)]
        upper: u64,
    },
    /// Extended Bernoulli polynomial.
    Extbern {
        #[arg(long)]
        indices: MultiIndex,
        #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
        z: Option<Rational>,
        #[arg(long)]
        poly: bool,
        #[arg(long, value_enum, default_value_t = VariantArg::Shifted)]
        variant: VariantArg,
    },
    /// Multiple zeta value at non-positive integers.
    Zeta {
        #[arg(long)]
        indices: MultiIndex,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },
    /// Run a named property sweep.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_depth: Option<usize>,
        /// Largest exponent; for zeta-triple, the largest exponent sum.
        #[arg(long)]
        max_weight: Option<u32>,
        #[arg(long)]
        max_upper: Option<u64>,
        /// Total-degree bound for the generating-function suites.
        #[arg(long)]
        bound: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Diagnostic probes that report residuals and never fail.
    #[command(subcommand)]
    Probe(Probe),
}

#[derive(Subcommand)]
enum Probe {
    BetaConnection {
        #[arg(long)]
        indices: MultiIndex,
        #[arg(long)]
        upper: u64,
        #[arg(long, value_enum)]
        convention: ConventionArg,
    },
}

/// Result of a command: the document to print and the exit status.
struct Output {
    doc: Value,
    status: u8,
}

impl From<Value> for Output {
    fn from(doc: Value) -> Self {
        Output { doc, status: 0 }
    }
}

fn coeffs(p: &umbral_mzv::Poly) -> Value {
    json!({ "coeffs": p })
}

fn run(cmd: Command) -> Result<Output, String> {
    Ok(match cmd {
        Command::Bern { n, x, lambda } => {
            if lambda.is_zero() {
                return Err("lambda must be non-zero".into());
            }
            let p = apostol_bernoulli_poly(n, &ApostolParams::new(lambda));
            match x {
                Some(x) => json!({ "value": p.eval(&x) }).into(),
                None => coeffs(&p).into(),
            }
        }
        Command::Powersum { indices, upper, poly, weak } => {
            if poly {
                let p = if weak { symbolic_s(&indices) } else { symbolic_h(&indices).poly };
                coeffs(&p).into()
            } else {
                let n = upper.expect("clap enforces --upper or --poly");
                let v = if weak { symbolic_s(&indices).eval(&n) } else { symbolic_h_at(&indices, &n) };
                json!({ "value": v }).into()
            }
        }
        Command::Polylog { indices, z, upper } => {
            let v = symbolic_li(&indices, &z, upper).map_err(|e| e.to_string())?;
            json!({ "value": v }).into()
        }
        Command::Extbern { indices, z, poly, variant } => {
            let b = match variant {
                VariantArg::Shifted => beta_symbolic(&indices),
                VariantArg::Tilde => beta_tilde(&indices),
            };
            if poly {
                coeffs(&b.poly).into()
            } else {
                json!({ "value": b.eval(&z.expect("clap enforces --z or --poly")) }).into()
            }
        }
        Command::Zeta { indices, method } => {
            let one = |m| zeta(&indices, m).map(|z| z.value).map_err(|e| e.to_string());
            match method {
                MethodArg::All => {
                    let r = one(ZetaMethod::Raabe)?;
                    let n = one(ZetaMethod::Renorm)?;
                    let c = one(ZetaMethod::ConstantTerm)?;
                    let agree = r == n && r == c;
                    json!({ "raabe": r, "renorm": n, "constant_term": c, "agree": agree }).into()
                }
                m => {
                    let m = match m {
                        MethodArg::Raabe => ZetaMethod::Raabe,
                        MethodArg::Renorm => ZetaMethod::Renorm,
                        MethodArg::ConstantTerm => ZetaMethod::ConstantTerm,
                        _ => ZetaMethod::Depth2,
                    };
                    json!({ "value": one(m)? }).into()
                }
            }
        }
        Command::Verify { suite, max_depth, max_weight, max_upper, bound, jobs } => {
            let suite: Suite = suite.parse().map_err(|e: umbral_mzv::Error| e.to_string())?;
            let mut limits = suite.default_limits();
            limits.max_depth = max_depth.unwrap_or(limits.max_depth);
            limits.max_weight = max_weight.unwrap_or(limits.max_weight);
            limits.max_upper = max_upper.unwrap_or(limits.max_upper);
            limits.bound = bound.unwrap_or(limits.bound);
            let report = run_suite(suite, &limits, jobs.max(1));
            let status = if report.passed() { 0 } else { 1 };
            Output { doc: serde_json::to_value(&report).map_err(|e| e.to_string())?, status }
        }
        Command::Probe(Probe::BetaConnection { indices, upper, convention }) => {
            let convention = match convention {
                ConventionArg::Tilde => TailConvention::Tilde,
                ConventionArg::ShiftedZero => TailConvention::ShiftedZero,
            };
            let report = connection_probe(&indices, upper, convention).map_err(|e| e.to_string())?;
            serde_json::to_value(&report).map_err(|e| e.to_string())?.into()
        }
    })
}

fn render_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => render_map(map, prefix, out),
        Value::Array(items) if items.iter().all(|i| !i.is_object() && !i.is_array()) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                render_text(item, &format!("{prefix}[{i}]"), out);
            }
            if items.is_empty() {
                out.push_str(&format!("{prefix}: []\n"));
            }
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

fn render_map(map: &Map<String, Value>, prefix: &str, out: &mut String) {
    for (k, v) in map {
        let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
        render_text(v, &key, out);
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output { doc, status }) => {
            match cli.format {
                Format::Json => println!("{doc}"),
                Format::Text => {
                    let mut s = String::new();
                    render_text(&doc, "", &mut s);
                    print!("{s}");
                }
            }
            ExitCode::from(status)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
