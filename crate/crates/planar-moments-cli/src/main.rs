//! Command-line front end: compute single moments, emit tables, run the
//! verification suites, and report asymptotic comparisons.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
//! 3 oracle disagreement beyond tolerance.

use clap::{Args, Parser, Subcommand, ValueEnum};
use planar_moments::asympt;
use planar_moments::exact::comb::{catalan, narayana};
use planar_moments::oracle::{self, QuadratureGrid};
use planar_moments::query::{evaluate_with, Method, MomentQuery, Tables};
use planar_moments::verify;
use planar_moments::{Component, Rational, Scalar, WeightFamily};
use rayon::prelude::*;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "planar-moments",
    about = "Exact spectral moments of complex and symplectic planar random-matrix ensembles",
    version
)]
struct Cli {
    /// Size of the worker pool for table and verify runs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one mixed moment.
    Compute(ComputeArgs),
    /// Tabulate moments over an index grid.
    Table(TableArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Compare exact finite-N moments against the large-N predictions.
    Asympt(AsymptArgs),
    /// Check the combinatorial limit identities.
    Limits(LimitsArgs),
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// Weight family.
    #[arg(long, value_enum)]
    family: FamilyKind,
    /// Non-Hermiticity parameter: a rational in [0,1] or "symbolic".
    #[arg(long, default_value = "0")]
    tau: String,
    /// Laguerre parameter (> -1).
    #[arg(long)]
    nu: Option<String>,
    /// Gegenbauer parameter (> -1).
    #[arg(long)]
    a: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyKind {
    Hermite,
    Laguerre,
    Gegenbauer,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ensemble {
    Complex,
    Symplectic,
}

impl From<Ensemble> for Component {
    fn from(e: Ensemble) -> Component {
        match e {
            Ensemble::Complex => Component::Complex,
            Ensemble::Symplectic => Component::Symplectic,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    p1: u32,
    #[arg(long)]
    p2: u32,
    #[arg(long = "N")]
    n: usize,
    #[arg(long, value_enum, default_value = "complex")]
    ensemble: Ensemble,
    /// Formula: auto, main, cd, appendixB, closed-form.
    #[arg(long, default_value = "auto")]
    method: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also integrate the one-point density numerically and compare.
    #[arg(long)]
    oracle: bool,
    /// Override the oracle agreement tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Largest p1 + p2.
    #[arg(long = "p-max")]
    p_max: u32,
    /// Largest matrix size; rows run over N = 1..=N.
    #[arg(long = "N")]
    n: usize,
    #[arg(long, value_enum, default_value = "complex")]
    ensemble: Ensemble,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name or "all".
    #[arg(long, default_value = "all")]
    suite: String,
    /// Restrict the oracle suite to one family.
    #[arg(long, value_enum)]
    family: Option<FamilyKind>,
}

#[derive(Args)]
struct AsymptArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    p1: u32,
    #[arg(long)]
    p2: u32,
    /// Matrix sizes, comma separated.
    #[arg(long = "N-list", value_delimiter = ',')]
    n_list: Vec<usize>,
    #[arg(long, value_enum, default_value = "complex")]
    ensemble: Ensemble,
    /// Wishart limit ratio nu/N (Laguerre only).
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct LimitsArgs {
    /// Which identity: genus, catalan, narayana, subleading, all.
    #[arg(long, default_value = "all")]
    check: String,
    #[arg(long = "p-max", default_value = "6")]
    p_max: u32,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialised");
        }
    }
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Table(args) => cmd_table(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Asympt(args) => cmd_asympt(args),
        Command::Limits(args) => cmd_limits(args),
    };
    match outcome {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, String> {
    s.parse::<Rational>()
        .map_err(|_| format!("{what} must be a rational number, got {s:?}"))
}

fn build_family(args: &FamilyArgs) -> Result<WeightFamily, String> {
    let tau = if args.tau == "symbolic" {
        if args.family == FamilyKind::Gegenbauer {
            return Err("symbolic tau is not supported for the Gegenbauer family".into());
        }
        Scalar::tau()
    } else {
        Scalar::Rat(parse_rational(&args.tau, "--tau")?)
    };
    match args.family {
        FamilyKind::Hermite => WeightFamily::hermite(tau).map_err(|e| e.to_string()),
        FamilyKind::Laguerre => {
            let nu = parse_rational(args.nu.as_deref().unwrap_or("0"), "--nu")?;
            WeightFamily::laguerre(tau, nu).map_err(|e| e.to_string())
        }
        FamilyKind::Gegenbauer => {
            let a = parse_rational(args.a.as_deref().unwrap_or("0"), "--a")?;
            let t = match tau {
                Scalar::Rat(r) => r,
                Scalar::Poly(_) => unreachable!(),
            };
            WeightFamily::gegenbauer(t, a).map_err(|e| e.to_string())
        }
    }
}

fn default_tolerance(family: &WeightFamily) -> f64 {
    match family {
        WeightFamily::Laguerre { .. } => 1e-5,
        _ => 1e-7,
    }
}

fn float_str(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x}"),
        None => String::new(),
    }
}

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode, String> {
    let family = build_family(&args.family)?;
    let method = Method::parse(&args.method)
        .ok_or_else(|| format!("unknown method {:?}", args.method))?;
    if args.n == 0 {
        return Err("--N must be at least 1".into());
    }
    let query = MomentQuery {
        family: family.clone(),
        p1: args.p1,
        p2: args.p2,
        n: args.n,
        component: args.ensemble.into(),
        method,
    };
    let tables = Tables::new(family.clone());
    let result = evaluate_with(&tables, &query).map_err(|e| e.to_string())?;
    let float = result.value.to_f64(None);

    let mut oracle_json = None;
    let mut oracle_failed = false;
    let mut oracle_text = String::new();
    if args.oracle {
        if family.is_symbolic() {
            return Err("--oracle requires a rational tau".into());
        }
        if let WeightFamily::Gegenbauer { a, .. } = &family {
            if a.is_negative() {
                return Err("--oracle requires a >= 0 for the Gegenbauer family".into());
            }
        }
        if let WeightFamily::Laguerre { nu, .. } = &family {
            if nu.is_negative() {
                return Err("--oracle requires nu >= 0 for the Laguerre family".into());
            }
        }
        let tol = args.tolerance.unwrap_or_else(|| default_tolerance(&family));
        let grid_n = match query.component {
            Component::Complex => args.n,
            Component::Symplectic => 2 * args.n,
        };
        let grid = QuadratureGrid::for_family(&family, grid_n);
        let quad = oracle::quadrature_moment(
            &family,
            args.p1,
            args.p2,
            args.n,
            query.component,
            &grid,
            1e-8,
        )
        .map_err(|e| e.to_string())?;
        let exact_f = float.expect("rational tau gives a float rendering");
        let diff = (quad - exact_f).abs() / exact_f.abs().max(1.0);
        oracle_failed = diff > tol;
        oracle_text = format!("  oracle {quad} (relative discrepancy {diff:.3e}, tolerance {tol:.1e})");
        oracle_json = Some(serde_json::json!({
            "value": quad,
            "discrepancy": diff,
            "tolerance": tol,
        }));
    }

    match args.format {
        Format::Text => {
            match float {
                Some(f) => println!("{} ({f})", result.value),
                None => println!("{}", result.value),
            }
            if args.oracle {
                println!("{oracle_text}");
            }
        }
        Format::Json => {
            let mut obj = serde_json::json!({
                "query": {
                    "family": family.to_string(),
                    "p1": args.p1,
                    "p2": args.p2,
                    "N": args.n,
                    "ensemble": query.component.to_string(),
                },
                "exact": result.value.to_string(),
                "float": float,
                "method": result.formula,
            });
            if let Some(o) = oracle_json {
                obj["oracle"] = o;
            }
            println!("{obj}");
        }
        Format::Csv => {
            println!("p1,p2,N,exact,float");
            println!(
                "{},{},{},{},{}",
                args.p1,
                args.p2,
                args.n,
                result.value,
                float_str(float)
            );
        }
    }
    Ok(if oracle_failed {
        eprintln!("oracle disagreement beyond tolerance");
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, String> {
    let family = build_family(&args.family)?;
    if args.n == 0 {
        return Err("--N must be at least 1".into());
    }
    let component: Component = args.ensemble.into();
    let mut cells = Vec::new();
    for p1 in 0..=args.p_max {
        for p2 in 0..=args.p_max - p1 {
            for n in 1..=args.n {
                cells.push((p1, p2, n));
            }
        }
    }
    let rows: Vec<(u32, u32, usize, Scalar)> = cells
        .par_iter()
        .map_init(
            || Tables::new(family.clone()),
            |tables, &(p1, p2, n)| {
                let value = match component {
                    Component::Complex => planar_moments::complex::moment(&tables.a, p1, p2, n),
                    Component::Symplectic => {
                        planar_moments::symplectic::moment(&tables.a, &tables.skew, p1, p2, n)
                    }
                };
                (p1, p2, n, value)
            },
        )
        .collect();
    match args.format {
        Format::Csv => {
            println!("p1,p2,N,exact,float");
            for (p1, p2, n, v) in &rows {
                println!("{p1},{p2},{n},{v},{}", float_str(v.to_f64(None)));
            }
        }
        Format::Json => {
            let arr: Vec<serde_json::Value> = rows
                .iter()
                .map(|(p1, p2, n, v)| {
                    serde_json::json!({
                        "p1": p1, "p2": p2, "N": n,
                        "exact": v.to_string(),
                        "float": v.to_f64(None),
                    })
                })
                .collect();
            println!("{}", serde_json::Value::Array(arr));
        }
        Format::Text => {
            println!("  p1   p2    N  moment");
            for (p1, p2, n, v) in &rows {
                println!("{p1:>4} {p2:>4} {n:>4}  {v}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, String> {
    let reports = if args.suite == "all" {
        verify::run_all()
    } else if args.suite == "oracle" {
        let filter = args.family.map(|f| match f {
            FamilyKind::Hermite => "hermite",
            FamilyKind::Laguerre => "laguerre",
            FamilyKind::Gegenbauer => "gegenbauer",
        });
        vec![verify::oracle_agreement_for(filter)]
    } else {
        verify::run_suite(&args.suite).ok_or_else(|| {
            format!(
                "unknown suite {:?}; available: {}, all",
                args.suite,
                verify::SUITE_NAMES.join(", ")
            )
        })?
    };
    let mut all_ok = true;
    for r in &reports {
        println!("{r}");
        for f in r.failures.iter().take(3) {
            println!("    counterexample: {f}");
        }
        all_ok &= r.passed();
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_asympt(args: AsymptArgs) -> Result<ExitCode, String> {
    let family = build_family(&args.family)?;
    if args.n_list.is_empty() {
        return Err("--N-list must be nonempty".into());
    }
    let symplectic = args.ensemble == Ensemble::Symplectic;
    match &family {
        WeightFamily::Hermite { .. } => {
            let tau = family.tau();
            let (p1, p2) = (args.p1, args.p2);
            let cmp = asympt::hermite_coeff_comparison(&family, symplectic, p1, p2);
            let half_deg = ((p1 + p2) / 2 + 1) as i64;
            let c1 = asympt::c1(p1, p2, &tau);
            let sub = if symplectic {
                asympt::c2_prime(p1, p2, &tau)
            } else {
                asympt::c2(p1, p2, &tau)
            };
            let tables = Tables::new(family.clone());
            let mut rows = Vec::new();
            for &n in &args.n_list {
                let m = if symplectic {
                    planar_moments::symplectic::moment(&tables.a, &tables.skew, p1, p2, n)
                } else {
                    planar_moments::complex::moment(&tables.a, p1, p2, n)
                };
                let mut scale = Rational::from(n as u64).pow(half_deg);
                if symplectic {
                    scale *= Rational::from(2i64).pow(((p1 + p2) / 2) as i64);
                }
                let scaled = m.div_rat(&scale);
                let nq = Rational::from(n as u64);
                let pred = &c1 + &sub.div_rat(&nq);
                let resid = (&scaled - &pred).to_f64(None);
                rows.push((n, scaled, pred, resid));
            }
            match args.format {
                Format::Csv => {
                    println!("N,scaled,predicted,residual");
                    for (n, s, p, r) in &rows {
                        println!("{n},{s},{p},{}", float_str(*r));
                    }
                }
                Format::Json => {
                    let arr: Vec<serde_json::Value> = rows
                        .iter()
                        .map(|(n, s, p, r)| {
                            serde_json::json!({
                                "N": n,
                                "scaled": s.to_string(),
                                "predicted": p.to_string(),
                                "residual": r,
                            })
                        })
                        .collect();
                    let obj = serde_json::json!({
                        "leading": {
                            "extracted": cmp.leading_extracted.to_string(),
                            "predicted": cmp.leading_predicted.to_string(),
                        },
                        "subleading": {
                            "extracted": cmp.subleading_extracted.to_string(),
                            "predicted": cmp.subleading_predicted.to_string(),
                        },
                        "rows": arr,
                    });
                    println!("{obj}");
                }
                Format::Text => {
                    println!(
                        "leading coefficient:    extracted {} | predicted {}",
                        cmp.leading_extracted, cmp.leading_predicted
                    );
                    println!(
                        "subleading coefficient: extracted {} | predicted {}",
                        cmp.subleading_extracted, cmp.subleading_predicted
                    );
                    println!("{:>6}  {:<28} {:<28} residual", "N", "scaled moment", "prediction");
                    for (n, s, p, r) in &rows {
                        let sf = float_str(s.to_f64(None));
                        let pf = float_str(p.to_f64(None));
                        println!("{n:>6}  {sf:<28} {pf:<28} {}", float_str(*r));
                    }
                }
            }
            Ok(if cmp.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        WeightFamily::Laguerre { tau, .. } => {
            let tau = match tau {
                Scalar::Rat(r) => r.clone(),
                Scalar::Poly(_) => return Err("asympt needs a rational tau".into()),
            };
            let alpha = parse_rational(args.alpha.as_deref().unwrap_or("0"), "--alpha")?;
            let report = asympt::laguerre_limit_report(
                &tau,
                &alpha,
                args.p1,
                args.p2,
                symplectic,
                &args.n_list,
                3.0,
            );
            match args.format {
                Format::Csv => {
                    println!("N,nu,scaled,predicted,abs_diff");
                    for r in &report.rows {
                        println!(
                            "{},{},{},{},{}",
                            r.n, r.nu, r.scaled_moment, r.predicted, r.abs_diff
                        );
                    }
                }
                Format::Json => {
                    let arr: Vec<serde_json::Value> = report
                        .rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "N": r.n,
                                "nu": r.nu,
                                "scaled": r.scaled_moment,
                                "predicted": r.predicted,
                                "abs_diff": r.abs_diff,
                            })
                        })
                        .collect();
                    let obj = serde_json::json!({
                        "fitted_k": report.fitted_k,
                        "passed": report.passed,
                        "rows": arr,
                    });
                    println!("{obj}");
                }
                Format::Text => {
                    println!(
                        "limit coefficient {} ; fitted K = {}",
                        report.rows[0].predicted, report.fitted_k
                    );
                    println!("{:>6} {:>8}  {:<24} {:<24} |diff|", "N", "nu", "scaled", "limit");
                    for r in &report.rows {
                        println!(
                            "{:>6} {:>8}  {:<24} {:<24} {}",
                            r.n, r.nu, r.scaled_moment, r.predicted, r.abs_diff
                        );
                    }
                }
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        WeightFamily::Gegenbauer { .. } => {
            Err("asymptotic predictions cover the Hermite and Laguerre families".into())
        }
    }
}

fn cmd_limits(args: LimitsArgs) -> Result<ExitCode, String> {
    let t = Scalar::tau();
    let one = Rational::one();
    let mut ok = true;
    let mut ran = false;
    if args.check == "genus" || args.check == "all" {
        ran = true;
        let mut pass = true;
        for p in 0..=args.p_max {
            pass &= asympt::genus_coeff(0, p) == catalan(p);
            for n in 1..=20usize {
                let mut acc = Rational::zero();
                for g in 0..=(p + 1) / 2 {
                    acc += asympt::genus_coeff(g, p)
                        * Rational::from(n as u64).pow(p as i64 + 1 - 2 * g as i64);
                }
                pass &= acc == planar_moments::complex::gue_moment(p, n);
            }
        }
        println!("{} genus expansion (p <= {}, N <= 20)", pf(pass), args.p_max);
        ok &= pass;
    }
    if args.check == "catalan" || args.check == "all" {
        ran = true;
        let mut pass = true;
        for p in 0..=args.p_max {
            pass &= asympt::c1(p, p, &t).eval_tau(&one) == catalan(p);
        }
        println!("{} leading coefficient at tau=1 is Catalan (p <= {})", pf(pass), args.p_max);
        ok &= pass;
    }
    if args.check == "narayana" || args.check == "all" {
        ran = true;
        let mut pass = true;
        for alpha in [Rational::zero(), Rational::new(1, 2), Rational::one()] {
            let g = &one + &alpha;
            for p1 in 0..=args.p_max.min(5) {
                for p2 in 0..=args.p_max.min(5) - p1 {
                    if p1 + p2 == 0 {
                        continue;
                    }
                    pass &= asympt::l1(p1, p2, &t, &alpha).eval_tau(&one)
                        == narayana(p1 + p2, &g);
                }
            }
        }
        println!("{} Wishart limit at tau=1 is Narayana (p1+p2 <= {})", pf(pass), args.p_max.min(5));
        ok &= pass;
    }
    if args.check == "subleading" || args.check == "all" {
        ran = true;
        let mut pass = true;
        for p1 in 0..=args.p_max {
            for p2 in 0..=args.p_max - p1 {
                pass &= asympt::c2(p1, p2, &t).eval_tau(&one).is_zero();
            }
        }
        println!("{} subleading complex coefficient vanishes at tau=1 (p1+p2 <= {})", pf(pass), args.p_max);
        ok &= pass;
    }
    if !ran {
        return Err(format!(
            "unknown check {:?}; available: genus, catalan, narayana, subleading, all",
            args.check
        ));
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn pf(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}
