use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use bqsynth::hp::{self, Hp};
use bqsynth::network::catalog::ConfigId;
use bqsynth::network::{apply_transform, enumerate_labeled, enumerate_topologies, impedance, netlist, FilterSet, Template, Transform};
use bqsynth::ratpoly::{isolate_all, sturm_count, Poly, RationalFn};
use bqsynth::realize::{classify, synth_config};
use bqsynth::scalar::{display_scalar, format_decimal, format_rational, parse_rational, Rat, Scalar};
use bqsynth::verify::{falsify_small, verify_exact, verify_numeric, FitOptions};
use bqsynth::{CanonicalBiquad, Error, SpNet, Target};

#[derive(Parser)]
#[command(name = "bqsynth", version, about = "Realizability and synthesis for k(s+z)^2/(s+p)^2 impedances")]
struct Cli {
    /// Working precision of the high-precision float, in bits.
    #[arg(long, global = true, default_value_t = hp::DEFAULT_PRECISION_BITS)]
    precision_bits: usize,
    /// Residual tolerance for numeric verification.
    #[arg(long, global = true, default_value = "1e-20")]
    tol: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for the fitter's multistarts.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Spice,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    Inv,
    Dual,
    Gdu,
}

impl From<Op> for Transform {
    fn from(op: Op) -> Self {
        match op {
            Op::Inv => Transform::Inv,
            Op::Dual => Transform::Dual,
            Op::Gdu => Transform::GDu,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Filter {
    CutSet,
    SeriesArm,
    Resistor,
    Irreducible,
}

#[derive(clap::Args)]
struct Params {
    #[arg(long)]
    k: String,
    #[arg(long)]
    z: String,
    #[arg(long)]
    p: String,
}

impl Params {
    fn biquad(&self) -> anyhow::Result<CanonicalBiquad<Rat>> {
        Ok(CanonicalBiquad::new(parse_rational(&self.k)?, parse_rational(&self.z)?, parse_rational(&self.p)?)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify a canonical biquadratic impedance and report every condition.
    Classify(Params),
    /// Synthesize a seven-element network.
    Synth {
        #[command(flatten)]
        params: Params,
        /// fig3a, n4a or n5a; defaults to whatever classify finds.
        #[arg(long)]
        config: Option<String>,
    },
    /// Impedance of a netlist.
    Impedance { netlist: String },
    /// Apply a network transform.
    Transform {
        #[arg(long, value_enum)]
        op: Op,
        netlist: String,
    },
    /// Check a netlist against a target impedance.
    Verify {
        netlist: String,
        /// Target JSON, inline or a file path.
        #[arg(long)]
        target: String,
    },
    /// List series-parallel topologies with N elements.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Label leaves with R, L and C.
        #[arg(long)]
        labeled: bool,
        /// Structural filters for labeled output.
        #[arg(long, value_enum, value_delimiter = ',')]
        filters: Vec<Filter>,
        /// Keep only labelings with this many reactive elements.
        #[arg(long)]
        reactive: Option<usize>,
    },
    /// Count and isolate the real roots of a polynomial in (lo, hi].
    Roots {
        /// Ascending coefficients as a JSON array, inline or a file path.
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: String,
        #[arg(long, allow_hyphen_values = true)]
        hi: String,
        /// Width of the reported isolating intervals.
        #[arg(long, default_value = "1e-30")]
        width: String,
    },
    /// Positive-realness of a target.
    PrCheck {
        #[arg(long)]
        target: String,
    },
    /// Fit every small labeled topology to a target.
    Falsify {
        #[arg(long)]
        target: String,
        #[arg(long)]
        nmax: usize,
        /// Multistarts per topology.
        #[arg(long, default_value_t = 32)]
        starts: usize,
        /// Success threshold for a fit.
        #[arg(long, default_value_t = 1e-8)]
        fit_tol: f64,
    },
}

/// Result of a command: printed output and whether it counts as success.
struct Outcome {
    output: String,
    ok: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome { output, ok: true }
    }
}

fn read_json(arg: &str) -> anyhow::Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{arg}: {e}")).into())
}

/// A netlist, or any report holding one under `"network"`.
fn read_netlist(arg: &str) -> anyhow::Result<SpNet<Rat>> {
    let v = read_json(arg)?;
    let v = match v.get("network") {
        Some(inner) if !inner.is_null() => inner.clone(),
        _ => v,
    };
    Ok(netlist::from_json(&v)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn poly_json<T: Scalar>(p: &Poly<T>) -> Value {
    Value::Array(p.coeffs().iter().map(|c| json!(display_scalar(c))).collect())
}

fn net_output<T: Scalar>(net: &SpNet<T>, format: Format, extra: Value) -> String {
    match format {
        Format::Spice => netlist::to_spice(net),
        Format::Text => format!("{net}"),
        Format::Json => {
            let mut v = extra;
            v["network"] = netlist::to_json(net);
            pretty(&v)
        }
    }
}

fn template_list(ts: &[Template], format: Format, n: usize) -> String {
    match format {
        Format::Json => pretty(&json!({
            "n": n,
            "count": ts.len(),
            "topologies": ts.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = format!("{} topologies\n", ts.len());
            for t in ts {
                s.push_str(&format!("{t}\n"));
            }
            s
        }
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    if cli.precision_bits < 64 {
        return Err(Error::InvalidInput("--precision-bits must be at least 64".into()).into());
    }
    hp::set_precision(cli.precision_bits);
    let tol = parse_rational(&cli.tol)?;
    if tol <= Rat::from_int(0) {
        return Err(Error::InvalidInput("--tol must be positive".into()).into());
    }
    let format = cli.format;
    match &cli.command {
        Command::Classify(params) => {
            let report = classify(&params.biquad()?);
            let output = match format {
                Format::Json => pretty(&report.to_json()),
                Format::Spice => match &report.network {
                    Some(n) => netlist::to_spice(n),
                    None => bail!(Error::InvalidInput(format!("{} has no network to export", report.class))),
                },
                Format::Text => {
                    let mut s = format!("class: {}\n", report.class);
                    for c in &report.conditions {
                        let v = c.value.as_deref().unwrap_or("-");
                        s.push_str(&format!("  {:<40} {:>6}  {v}\n", c.name, if c.pass { "pass" } else { "fail" }));
                    }
                    if let Some(n) = &report.network {
                        s.push_str(&format!("network: {n}\n"));
                    }
                    s
                }
            };
            Ok(Outcome { output, ok: report.class.is_realizable() })
        }
        Command::Synth { params, config } => {
            let b = params.biquad()?;
            let config = match config {
                Some(c) => ConfigId::parse(c)?,
                None => match classify(&b).class {
                    bqsynth::RealizationClass::SevenElementCatalog { config, .. } => config,
                    other => {
                        return Err(Error::NotRealizable(format!(
                            "classified as {other}; no closed-form seven-element synthesis applies"
                        ))
                        .into())
                    }
                },
            };
            let (net, transform) = synth_config(&b, config)?;
            let target = b.map(Hp::from_rational).to_rational_fn();
            let tol_hp = Hp::from_rational(&tol);
            let (ok, residual) = verify_numeric(&net, &target, &tol_hp);
            let extra = json!({
                "config": config.name(),
                "transform": transform.map(|t| t.name()),
                "residual": display_scalar(&residual),
                "verified": ok,
                "precision_bits": hp::precision(),
            });
            Ok(Outcome { output: net_output(&net, format, extra), ok })
        }
        Command::Impedance { netlist: path } => {
            let net = read_netlist(path)?;
            let z = impedance(&net);
            let output = match format {
                Format::Json => pretty(&json!({"num": poly_json(z.num()), "den": poly_json(z.den())})),
                _ => format!("({}) / ({})\n", z.num(), z.den()),
            };
            Ok(Outcome::ok(output))
        }
        Command::Transform { op, netlist: path } => {
            let net = read_netlist(path)?;
            let out = apply_transform(&net, (*op).into());
            Ok(Outcome::ok(net_output(&out, format, json!({}))))
        }
        Command::Verify { netlist: path, target } => {
            let net = read_netlist(path)?;
            let target = Target::from_json(&read_json(target)?)?.to_rational_fn();
            let exact = verify_exact(&net, &target)?;
            let (ok, residual) = if exact {
                (true, Hp::from_int(0))
            } else {
                let net_hp = net.map_scalar(Hp::from_rational);
                let t_hp = target.map(Hp::from_rational)?;
                verify_numeric(&net_hp, &t_hp, &Hp::from_rational(&tol))
            };
            let output = match format {
                Format::Json => pretty(&json!({
                    "exact": exact,
                    "pass": ok,
                    "residual": display_scalar(&residual),
                    "tol": format_rational(&tol),
                })),
                _ => format!("{} (residual {})\n", if ok { "pass" } else { "fail" }, display_scalar(&residual)),
            };
            Ok(Outcome { output, ok })
        }
        Command::Enumerate { n, labeled, filters, reactive } => {
            let list = if *labeled || !filters.is_empty() || reactive.is_some() {
                let mut f = FilterSet::none();
                for x in filters {
                    match x {
                        Filter::CutSet => f.cut_set = true,
                        Filter::SeriesArm => f.no_pure_reactive_series_arm = true,
                        Filter::Resistor => f.require_resistor = true,
                        Filter::Irreducible => f.irreducible = true,
                    }
                }
                f.reactive_count = *reactive;
                enumerate_labeled(*n, &f)?
            } else {
                enumerate_topologies(*n)?
            };
            Ok(Outcome::ok(template_list(&list, format, *n)))
        }
        Command::Roots { poly, lo, hi, width } => {
            let coeffs = match read_json(poly)? {
                Value::Array(items) => items
                    .iter()
                    .map(|v| match v {
                        Value::String(s) => parse_rational(s),
                        Value::Number(x) => parse_rational(&x.to_string()),
                        _ => Err(Error::Parse(format!("coefficient must be a number or string, got {v}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?,
                other => bail!(Error::Parse(format!("--poly must be a JSON array, got {other}"))),
            };
            let p = Poly::new(coeffs);
            if p.is_zero_poly() {
                bail!(Error::InvalidInput("zero polynomial".into()));
            }
            let (lo, hi, width) = (parse_rational(lo)?, parse_rational(hi)?, parse_rational(width)?);
            if lo >= hi {
                bail!(Error::InvalidInput("--lo must be below --hi".into()));
            }
            let count = sturm_count(&p, &lo, &hi)?;
            let roots = isolate_all(&p, &lo, &hi, &width)?;
            let sig = hp::precision() * 3 / 10;
            let items: Vec<Value> = roots
                .iter()
                .map(|(a, b)| {
                    let mid = (a.clone() + b.clone()) / Rat::from_int(2);
                    json!({"lo": format_rational(a), "hi": format_rational(b), "approx": format_decimal(&mid, sig)})
                })
                .collect();
            let output = match format {
                Format::Json => pretty(&json!({"count": count, "roots": items})),
                _ => {
                    let mut s = format!("{count} roots\n");
                    for r in &items {
                        s.push_str(&format!("{}\n", r["approx"].as_str().unwrap_or_default()));
                    }
                    s
                }
            };
            Ok(Outcome::ok(output))
        }
        Command::PrCheck { target } => {
            let t = Target::from_json(&read_json(target)?)?;
            let pr = t.is_positive_real();
            let output = match format {
                Format::Json => pretty(&json!({"target": t.to_json(), "positive_real": pr})),
                _ => format!("positive real: {pr}\n"),
            };
            Ok(Outcome { output, ok: pr })
        }
        Command::Falsify { target, nmax, starts, fit_tol } => {
            let t = Target::from_json(&read_json(target)?)?.to_rational_fn();
            let tf: RationalFn<f64> = t.map(|x| x.to_f64())?;
            let opts = FitOptions { starts: *starts, seed: cli.seed, tol: *fit_tol, ..FitOptions::default() };
            let report = falsify_small(&tf, *nmax, &opts)?;
            let output = match format {
                Format::Json => pretty(&report.to_json()),
                _ => {
                    let mut s = String::new();
                    for n in 1..=*nmax {
                        let best = report.best_residual(n).map_or("-".into(), |r| format!("{r:.3e}"));
                        s.push_str(&format!("n={n}: best residual {best}\n"));
                    }
                    for e in report.successes() {
                        s.push_str(&format!("fit: {}\n", e.topology));
                    }
                    s
                }
            };
            Ok(Outcome::ok(output))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::NotRealizable(_)) | Some(Error::Precondition(_)) | Some(Error::Inconsistent(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let mut text = out.output;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = std::io::stdout().write_all(text.as_bytes());
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
