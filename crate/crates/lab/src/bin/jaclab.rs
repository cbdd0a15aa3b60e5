use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use invariant_core::covariants::{
    affine_jacobian, d_i, dehomogenize, eta, eta_tilde, gamma, jacobian_covariant, jc, torus_rescaled_gamma, x3,
    ChartedMap,
};
use invariant_core::elimination::pair_covariant;
use invariant_core::poly::Poly;
use invariant_core::sl2::transvectant;
use invariant_core::sl3::{harmonic_projection, rho, tau, Epsilon, HarmonicForm};
use invariant_core::{BigradedForm, BinaryForm, MapPair};
use jacobian_lab::lemmas::lemma_suite;
use jacobian_lab::quarantine::quarantine;
use jacobian_lab::scans::{conjecture1_scan, eta_vanishing_scan};
use jacobian_lab::witness::witness_scan;
use jacobian_lab::{LabError, Outcome, ScanConfig, ScanKind, ScanReport};

#[derive(Parser)]
#[command(name = "jaclab", version, about = "Covariant evaluation and seeded Jacobian-conjecture scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate covariants on polynomials given in text form.
    Covariant {
        #[command(subcommand)]
        action: CovariantAction,
    },
    /// Run a seeded scan over tame automorphisms.
    Scan {
        #[command(subcommand)]
        kind: ScanCommand,
    },
    /// Compute the witness value for every split of n.
    Witness {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the identity checks for every degree 2..=n.
    Lemmas {
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        height: i64,
        /// Flip the sign of permutation K (0..6) in the contraction kernel of eta.
        #[arg(long, value_name = "K", value_parser = clap::value_parser!(u8).range(0..6))]
        mutate_rho: Option<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CovariantAction {
    /// Print the named covariant.
    Eval(EvalArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CovariantName {
    Q,
    J,
    Jc,
    D,
    Eta,
    EtaTilde,
    Gamma,
    Torus,
    Psi,
    Rho,
    Tau,
    Pi,
    Dehomogenize,
    AffineJacobian,
}

#[derive(Args)]
struct EvalArgs {
    name: CovariantName,
    /// Linear form in x1, x2, x3.
    #[arg(long, default_value = "x3")]
    h: String,
    #[arg(long)]
    f1: Option<String>,
    #[arg(long)]
    f2: Option<String>,
    /// First argument of psi, rho, tau and pi.
    #[arg(long)]
    f: Option<String>,
    /// Second argument of psi, rho and tau.
    #[arg(long)]
    g: Option<String>,
    /// Third argument of gamma, a coordinate form of degree 2n-2.
    #[arg(long)]
    j: Option<String>,
    /// Order of D, psi, rho and tau.
    #[arg(long)]
    i: Option<u32>,
    /// Degree of the pair; inferred when omitted.
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Subcommand)]
enum ScanCommand {
    /// D_2 vanishing on tame samples, with a control population.
    Conjecture1 {
        #[command(flatten)]
        common: ScanArgs,
        /// Number of control pairs; defaults to the sample count.
        #[arg(long)]
        controls: Option<usize>,
    },
    /// eta~ vanishing on tame samples.
    EtaVanishing {
        #[command(flatten)]
        common: ScanArgs,
    },
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long, default_value_t = 3)]
    n: u32,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    height: i64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Append-only file for conjecture-violation candidates.
    #[arg(long, default_value = "jaclab-quarantine.jsonl")]
    quarantine: PathBuf,
    /// Record per-sample wall-clock times (reports then differ between runs).
    #[arg(long)]
    timings: bool,
}

fn parse(s: &str) -> anyhow::Result<Poly> {
    s.parse::<Poly>().with_context(|| format!("cannot parse {s:?}"))
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> anyhow::Result<&'a str> {
    v.as_deref().ok_or_else(|| anyhow!("--{flag} is required"))
}

fn order(args: &EvalArgs) -> anyhow::Result<u32> {
    args.i.ok_or_else(|| anyhow!("--i is required"))
}

fn pair(args: &EvalArgs) -> anyhow::Result<MapPair> {
    let f1 = parse(required(&args.f1, "f1")?)?;
    let f2 = parse(required(&args.f2, "f2")?)?;
    Ok(match args.n {
        Some(n) => MapPair::new(f1, f2, n)?,
        None => MapPair::from_polys(f1, f2)?,
    })
}

fn coord(s: &str) -> anyhow::Result<BigradedForm> {
    Ok(BigradedForm::from_poly(parse(s)?)?)
}

fn harmonic(s: &str) -> anyhow::Result<HarmonicForm> {
    Ok(HarmonicForm::new(BigradedForm::from_poly(parse(s)?)?)?)
}

fn binary(s: &str) -> anyhow::Result<BinaryForm> {
    let p = parse(s)?;
    let d = p.total_degree().ok_or_else(|| anyhow!("binary form must be nonzero"))?;
    Ok(BinaryForm::new(p, d)?)
}

fn eval(args: &EvalArgs) -> anyhow::Result<String> {
    let h = coord(&args.h)?;
    Ok(match args.name {
        CovariantName::Q => pair_covariant(&pair(args)?)?.poly().to_string(),
        CovariantName::J => jacobian_covariant(&h, &pair(args)?)?.to_string(),
        CovariantName::Jc => jc(&h, &pair(args)?)?.poly().to_string(),
        CovariantName::D => d_i(&h, &pair(args)?, order(args)?)?.to_string(),
        CovariantName::Eta => {
            let f = pair(args)?;
            eta(&h, f.f1(), f.f2())?.poly().to_string()
        }
        CovariantName::EtaTilde => eta_tilde(&h, &pair(args)?)?.poly().to_string(),
        CovariantName::Gamma => {
            let f = pair(args)?;
            let j = BigradedForm::coord(parse(required(&args.j, "j")?)?, 2 * f.n().saturating_sub(1))?;
            gamma(&h, &f, &j)?.to_string()
        }
        CovariantName::Torus => {
            if h != x3() {
                bail!("the torus check is defined at h = x3");
            }
            let laurent = torus_rescaled_gamma(&pair(args)?)?;
            let lines: Vec<String> = laurent.iter().map(|(k, c)| format!("t^{k}: {c}")).collect();
            if lines.is_empty() {
                "0".into()
            } else {
                lines.join("\n")
            }
        }
        CovariantName::Psi => {
            let f = binary(required(&args.f, "f")?)?;
            let g = binary(required(&args.g, "g")?)?;
            transvectant(&f, &g, order(args)?)?.poly().to_string()
        }
        CovariantName::Rho | CovariantName::Tau => {
            let f = harmonic(required(&args.f, "f")?)?;
            let g = harmonic(required(&args.g, "g")?)?;
            let i = order(args)?;
            let r = if matches!(args.name, CovariantName::Rho) { rho(&f, &g, i)? } else { tau(&f, &g, i)? };
            r.poly().to_string()
        }
        CovariantName::Pi => harmonic_projection(&BigradedForm::from_poly(parse(required(&args.f, "f")?)?)?)?
            .poly()
            .to_string(),
        CovariantName::Dehomogenize => dehomogenize(&h, &pair(args)?)?.to_string(),
        CovariantName::AffineJacobian => {
            let f1 = parse(required(&args.f1, "f1")?)?;
            let f2 = parse(required(&args.f2, "f2")?)?;
            affine_jacobian(&ChartedMap::new(f1, f2)?).to_string()
        }
    })
}

fn emit(report: &ScanReport, out: Option<&PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => report.write(path).with_context(|| format!("cannot write {}", path.display()))?,
        None => println!("{}", report.to_json()?),
    }
    let s = &report.summary;
    eprintln!(
        "passed {} skipped {} failed {} hypothesis-failures {} candidates {} controls {}/{}",
        s.passed,
        s.skipped,
        s.failed,
        s.hypothesis_failures,
        s.counterexample_candidates,
        s.controls_passed,
        s.controls_passed + s.controls_failed
    );
    Ok(())
}

fn scan_config(kind: ScanKind, a: &ScanArgs) -> ScanConfig {
    let mut c = ScanConfig::new(kind, a.n, a.samples, a.seed, a.height);
    c.timings = a.timings;
    c
}

fn run_scan(report: ScanReport, a: &ScanArgs) -> anyhow::Result<Outcome> {
    if !report.counterexamples.is_empty() {
        let k = quarantine(&a.quarantine, &report)
            .with_context(|| format!("cannot write quarantine file {}", a.quarantine.display()))?;
        log::error!("{k} conjecture-violation candidates written to {}", a.quarantine.display());
    }
    emit(&report, a.out.as_ref())?;
    Ok(report.outcome())
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Covariant { action: CovariantAction::Eval(args) } => {
            println!("{}", eval(&args)?);
            Ok(Outcome::AllPass)
        }
        Command::Scan { kind: ScanCommand::Conjecture1 { common, controls } } => {
            let mut c = scan_config(ScanKind::Conjecture1, &common);
            c.controls = controls.unwrap_or(common.samples);
            run_scan(conjecture1_scan(&c)?, &common)
        }
        Command::Scan { kind: ScanCommand::EtaVanishing { common } } => {
            run_scan(eta_vanishing_scan(&scan_config(ScanKind::EtaVanishing, &common))?, &common)
        }
        Command::Witness { n, out } => {
            let report = witness_scan(n)?;
            emit(&report, out.as_ref())?;
            Ok(report.outcome())
        }
        Command::Lemmas { n, samples, seed, height, mutate_rho, out } => {
            let eps = mutate_rho.map_or_else(Epsilon::levi_civita, |k| Epsilon::with_flipped(k as usize));
            let report = lemma_suite(&ScanConfig::new(ScanKind::LemmaSuite, n, samples, seed, height), &eps)?;
            emit(&report, out.as_ref())?;
            Ok(report.outcome())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(outcome) => ExitCode::from(outcome.exit_code() as u8),
        Err(e) => {
            let internal = matches!(e.downcast_ref::<LabError>(), Some(LabError::UnsoundSample { .. }));
            eprintln!("error: {e:#}");
            ExitCode::from(if internal { 2 } else { 1 })
        }
    }
}
