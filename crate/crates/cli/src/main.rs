use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ntcodes::distance::{exact_min_distance, geil_bound_variant, DistanceConfig, DEFAULT_BUDGET};
use ntcodes::ent::{build_code, check_duality};
use ntcodes::matrix_io::export_matrix;
use ntcodes::reduction::curve_ideal_basis;
use ntcodes::report::{run_report, subfield_subcode, sweep, CodeReport, ReportOptions};
use ntcodes::subfield::trace_span;
use ntcodes::{CurveSpec, DeltaVariant, Error, LinearCode, Result};

/// Extended Norm-Trace codes and their subfield subcodes.
#[derive(Parser, Debug)]
#[command(name = "ntcodes", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Characteristic.
    #[arg(long, global = true, default_value_t = 2)]
    p: u32,
    /// `q = p^l`.
    #[arg(long, global = true, default_value_t = 1)]
    l: u32,
    /// The code alphabet is `F_{q^r}`.
    #[arg(long, global = true, default_value_t = 4)]
    r: u32,
    /// Exponent of X; must divide `(q^r - 1)/(q - 1)`.
    #[arg(long, global = true)]
    u: Option<u64>,
    /// Weight bound of the code.
    #[arg(long, global = true, allow_negative_numbers = true)]
    s: Option<i64>,
    /// Order of the subfield.
    #[arg(long, global = true)]
    t: Option<u64>,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Fail when the exact distance does not fit in the budget.
    #[arg(long, global = true)]
    exact: bool,
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Variant::Footprint)]
    delta_variant: Variant,
    /// Worker threads for exact distance searches.
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Variant {
    Footprint,
    Paper,
}

impl From<Variant> for DeltaVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Footprint => DeltaVariant::Footprint,
            Variant::Paper => DeltaVariant::Paper,
        }
    }
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Which {
    Super,
    Subfield,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curve parameters and the ideal basis.
    Curve,
    /// Rational points as field-element encodings.
    Points,
    /// The code NT_u(s) over the big field.
    Code,
    /// Check that NT_u(s) and NT_u(s') are dual.
    Dual,
    /// Dimension of the trace code of NT_u(s).
    TraceDim,
    /// Full report on the subfield subcode NT_u(s)|F_t.
    Subfield,
    /// Order bound on the minimum distance of NT_u(s).
    Bound,
    /// Exact minimum distance of NT_u(s), or of its subfield subcode with --t.
    Mindist,
    /// Reports for a range of s, cached as JSON lines.
    Sweep {
        #[arg(long, allow_negative_numbers = true)]
        s_from: i64,
        #[arg(long, allow_negative_numbers = true)]
        s_to: i64,
        #[arg(long)]
        cache: PathBuf,
        /// Recompute cached entries and rewrite the cache.
        #[arg(long)]
        force: bool,
    },
    /// Write a generator matrix as text.
    Export {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Which::Super)]
        code: Which,
    },
}

impl Common {
    fn curve(&self) -> Result<CurveSpec> {
        let u = self
            .u
            .ok_or_else(|| Error::InvalidParameter("--u is required".into()))?;
        CurveSpec::new(self.p, self.l, self.r, u)
    }

    fn s(&self) -> Result<i64> {
        self.s
            .ok_or_else(|| Error::InvalidParameter("--s is required".into()))
    }

    fn t(&self) -> Result<u64> {
        self.t
            .ok_or_else(|| Error::InvalidParameter("--t is required".into()))
    }

    fn options(&self) -> ReportOptions {
        let mut opts = ReportOptions {
            exact: self.exact,
            budget: self.budget,
            delta_variant: self.delta_variant.into(),
            ..ReportOptions::default()
        };
        if let Some(w) = self.workers {
            opts.workers = w.max(1);
        }
        opts
    }
}

fn print_report(r: &CodeReport, as_json: bool) -> Result<()> {
    if as_json {
        println!("{}", serde_json::to_string(r)?);
        return Ok(());
    }
    let d = r
        .exact_distance
        .map_or_else(|| format!(">={}", r.geil_bound), |d| d.to_string());
    println!(
        "NT_{}({})|F_{}: [{}, {}, {}]",
        r.curve.u, r.s, r.t, r.curve.n, r.dim_subfield, d
    );
    println!("  supercode dimension {}", r.dim_supercode);
    println!(
        "  dual weight {}, trace code dimension {}",
        r.dual_weight_used, r.trace_dim_of_dual
    );
    println!("  order bound {}", r.geil_bound);
    if let Some(m) = r.distance_method {
        println!("  exact distance by {}", m.as_str());
    }
    if let Some(e) = r.even_weight {
        println!("  even weight {e}");
    }
    if let Some(delta) = &r.paper_claim_delta {
        println!("  differs from published values: {delta}");
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<()> {
    let common = &cli.common;
    let c = common.curve()?;
    match &cli.command {
        Command::Curve => {
            let basis = curve_ideal_basis(&c);
            let [g1, g2] = basis.generators();
            if common.json {
                let v = json!({
                    "curve": c.params(),
                    "q": c.q(),
                    "weights": [c.weight_x(), c.weight_y()],
                    "ideal_basis": [g1.to_string(), g2.to_string()],
                });
                println!("{v}");
            } else {
                let p = c.params();
                println!(
                    "NT_{} over F_{}^{}: n = {}, genus = {}",
                    p.u,
                    c.q(),
                    p.r,
                    p.n,
                    p.genus
                );
                println!("weights: X -> {}, Y -> {}", c.weight_x(), c.weight_y());
                println!("ideal basis: {g1}, {g2}");
            }
        }
        Command::Points => {
            let pts: Vec<[u32; 2]> = c
                .points()
                .iter()
                .map(|pt| [pt.x.encoding(), pt.y.encoding()])
                .collect();
            if common.json {
                println!("{}", serde_json::to_string(&pts)?);
            } else {
                for [x, y] in pts {
                    println!("{x} {y}");
                }
            }
        }
        Command::Code => {
            let code = build_code(&c, common.s()?)?;
            let monomials: Vec<String> = code.monomials.iter().map(|m| m.to_string()).collect();
            if common.json {
                let v = json!({"n": code.n(), "k": code.k(), "s": code.s, "monomials": monomials});
                println!("{v}");
            } else {
                println!("NT_{}({}): [{}, {}]", c.u(), code.s, code.n(), code.k());
                println!("M(s) = {{{}}}", monomials.join(", "));
            }
        }
        Command::Dual => {
            let r = check_duality(&c, common.s()?)?;
            if common.json {
                println!("{}", serde_json::to_string(&r)?);
            } else {
                println!(
                    "NT_{}({})^perp = NT_{}({}): {} + {} = {}, orthogonal {}",
                    c.u(),
                    r.s,
                    c.u(),
                    r.dual_s,
                    r.dim,
                    r.dual_dim,
                    r.n,
                    r.orthogonal
                );
            }
            if !r.passed() {
                return Err(Error::Inconsistent(format!("duality fails: {r:?}")));
            }
        }
        Command::TraceDim => {
            let r = trace_span(&c, common.s()?, common.t()?)?;
            let generators: Vec<String> = r.generators.iter().map(|g| g.to_string()).collect();
            if common.json {
                let v = json!({"s": r.s, "t": r.t, "m": r.m, "dimension": r.dimension, "generators": generators});
                println!("{v}");
            } else {
                println!(
                    "dim Tr(NT_{}({})) over F_{} = {}",
                    c.u(),
                    r.s,
                    r.t,
                    r.dimension
                );
                for g in generators {
                    println!("  {g}");
                }
            }
        }
        Command::Subfield => {
            let r = run_report(&c, common.s()?, common.t()?, &common.options())?;
            print_report(&r, common.json)?;
        }
        Command::Bound => {
            let s = common.s()?;
            let b = geil_bound_variant(&c, s, common.delta_variant.into())?;
            if common.json {
                println!("{}", json!({"s": s, "geil_bound": b}));
            } else {
                println!("d(NT_{}({s})) >= {b}", c.u());
            }
        }
        Command::Mindist => {
            let s = common.s()?;
            let code = match common.t {
                Some(t) => subfield_subcode(&c, s, t)?,
                None => build_code(&c, s)?.code,
            };
            let opts = common.options();
            let cfg = DistanceConfig {
                budget: opts.budget,
                workers: opts.workers,
            };
            let mut d = exact_min_distance(&code, &cfg)?;
            d.lower_bound = Some(geil_bound_variant(&c, s, opts.delta_variant)?);
            if common.json {
                println!("{}", serde_json::to_string(&d)?);
            } else {
                let method = d.method.map_or("", |m| m.as_str());
                println!(
                    "[{}, {}, {}] by {method}",
                    code.n(),
                    code.k(),
                    d.exact.expect("exact methods report a distance")
                );
            }
        }
        Command::Sweep {
            s_from,
            s_to,
            cache,
            force,
        } => {
            let out = sweep(
                &c,
                *s_from,
                *s_to,
                common.t()?,
                cache,
                *force,
                &common.options(),
            )?;
            for r in &out.reports {
                print_report(r, common.json)?;
            }
            eprintln!("{} computed, {} cached", out.computed, out.cached);
        }
        Command::Export { out, code } => {
            let s = common.s()?;
            let matrix: LinearCode = match code {
                Which::Super => build_code(&c, s)?.code,
                Which::Subfield => subfield_subcode(&c, s, common.t()?)?,
            };
            export_matrix(&matrix, out)?;
            if !common.json {
                println!(
                    "wrote {} x {} matrix to {}",
                    matrix.k(),
                    matrix.n(),
                    out.display()
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
