use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypersym::algebra::FlatStructure;
use hypersym::invariants::{
    closedness_report, cone_compare, five_dim_forms, jacobi_check, nilpotency_step, positive_norm_points,
    pseudo_sphere_points, sasaki_check, LieAlgebra, RadialReading,
};
use hypersym::scalar::parse_rational;
use hypersym::toric::{fiber_enumerate, AnalysisOptions, ConePoint, ToricConfig};
use hypersym::{Error, Rational, Result};
use hypersym_cli::{analyze, emit_report, load_config, ConfigDocument, Format};

#[derive(Parser)]
#[command(name = "hypersym", version, about = "Toric hypersymplectic quotients and flat split-quaternionic structures")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => Format::Json,
            OutputFormat::Text => Format::Text,
        }
    }
}

#[derive(clap::Args)]
struct Tuning {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    sweep_resolution: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    stratum_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: OutputFormat,
}

impl Tuning {
    fn apply(&self, base: Option<AnalysisOptions>) -> AnalysisOptions {
        let mut o = base.unwrap_or_default();
        if let Some(s) = self.seed {
            o.seed = s;
        }
        if let Some(r) = self.sweep_resolution {
            o.sweep_resolution = r;
        }
        if let Some(s) = self.samples {
            o.samples = s;
        }
        if self.stratum_cap.is_some() {
            o.stratum_cap = self.stratum_cap;
        }
        o
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a configuration file.
    Analyze {
        config: PathBuf,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Enumerate the torus orbits over a point of K.
    Fiber {
        config: PathBuf,
        /// `a1,..,an;b1,..,bn` with each `b` entry `re` or `re:im`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Analyze the built-in example family.
    Example {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Check the flat structure relations and closedness.
    VerifyCore {
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// Jacobi, nilpotency and closedness for the five-dimensional example.
    VerifyLie,
    /// Pseudo-sphere fields and the cone comparison.
    VerifySasaki {
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_point(n: usize, text: &str) -> Result<ConePoint> {
    let (a, b) = text
        .split_once(';')
        .ok_or_else(|| Error::Config("point must be `a1,..,an;b1,..,bn`".into()))?;
    let list = |s: &str| -> Vec<String> { s.split(',').map(|x| x.trim().to_string()).collect() };
    let a = list(a)
        .iter()
        .map(|x| parse_rational(x))
        .collect::<std::result::Result<Vec<Rational>, _>>()?;
    let (mut re, mut im) = (Vec::new(), Vec::new());
    for entry in list(b) {
        let (r, i) = entry.split_once(':').unwrap_or((&entry, "0"));
        re.push(parse_rational(r)?);
        im.push(parse_rational(i)?);
    }
    if a.len() != n || re.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if a.len() != n { a.len() } else { re.len() },
        });
    }
    Ok(ConePoint::new(a, re, im))
}

fn report(cfg: &ToricConfig, doc: &ConfigDocument, tuning: &Tuning) -> ExitCode {
    let opts = tuning.apply(doc.options.clone());
    let r = analyze(cfg, doc, &opts);
    print!("{}", emit_report(&r, tuning.format.into()));
    if r.has_unknown() {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn verify_core(n: usize) -> bool {
    let flat = FlatStructure::<Rational>::new(n);
    let rel = flat.relations();
    let closed = flat.is_closed();
    println!("relations: {}", if rel.all_hold() { "hold" } else { "fail" });
    println!("closed: {closed}");
    rel.all_hold() && closed
}

fn verify_lie() -> bool {
    let l = LieAlgebra::five_dim_example();
    let jacobi = jacobi_check(&l);
    let step = nilpotency_step(&l);
    println!("jacobi: {}", if jacobi.is_empty() { "holds".to_string() } else { format!("fails on {jacobi:?}") });
    println!("nilpotency step: {}", step.map_or("not nilpotent".into(), |s| s.to_string()));
    for e in closedness_report(&l, &five_dim_forms()) {
        if e.closed() {
            println!("d {}: 0", e.name);
        } else {
            println!("d {}: {}", e.name, e.residue);
        }
    }
    jacobi.is_empty()
}

fn verify_sasaki(n: usize, count: usize, seed: u64) -> bool {
    let pts = pseudo_sphere_points(n, count, seed);
    let ok = match sasaki_check(n, &pts) {
        Ok(r) => {
            println!("{}", serde_json::to_string(&r).unwrap_or_default());
            r.all_hold()
        }
        Err(e) => {
            println!("sasaki: {e}");
            false
        }
    };
    let radial = positive_norm_points(n, count, seed);
    for reading in [RadialReading::Euler, RadialReading::UnitRadial] {
        let c = cone_compare(n, &radial, reading);
        println!("cone ({reading:?}): max discrepancy {:e}, exact {:?}", c.max_discrepancy, c.exact);
    }
    ok
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Analyze { config, tuning } => {
            let (doc, cfg) = load_config(&config)?;
            Ok(report(&cfg, &doc, &tuning))
        }
        Command::Example { n, lambda, tuning } => {
            let cfg = ToricConfig::example_family(n, parse_rational(&lambda)?)?;
            let doc = ConfigDocument::from_config(&cfg)?;
            Ok(report(&cfg, &doc, &tuning))
        }
        Command::Fiber { config, point } => {
            let (_, cfg) = load_config(&config)?;
            let p = parse_point(cfg.n(), &point)?;
            let orbits = fiber_enumerate(&cfg, &p)?;
            println!("{} orbit(s)", orbits.len());
            for o in &orbits {
                let (z, w) = o.representative_f64();
                let fmt = |v: &[num_complex::Complex<f64>]| {
                    v.iter().map(|c| format!("{:.6}{:+.6}i", c.re, c.im)).collect::<Vec<_>>().join(", ")
                };
                println!("z = [{}]  w = [{}]", fmt(&z), fmt(&w));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyCore { n } => Ok(exit(verify_core(n))),
        Command::VerifyLie => Ok(exit(verify_lie())),
        Command::VerifySasaki { n, points, seed } => Ok(exit(verify_sasaki(n, points, seed))),
    }
}

fn exit(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
