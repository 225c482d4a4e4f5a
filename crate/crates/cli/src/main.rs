use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wildquot::curve;
use wildquot::graph::{self, DualGraph};
use wildquot::group::build_group;
use wildquot::local;
use wildquot::rep::{self, FieldKind};
use wildquot::report::{check_q, verify_q, Report, Status, VerifyOptions};
use wildquot::Error;

#[derive(Parser)]
#[command(name = "wildquot", version, about = "Exact checks for quotients of Hermitian curves by their special p-group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct QArgs {
    /// One value or a comma-separated list.
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the whole claim suite.
    Verify {
        #[command(flatten)]
        qs: QArgs,
        /// Write the report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        fmax: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Order, distinguished subgroups, exponent and classes.
    Group {
        #[command(flatten)]
        qs: QArgs,
    },
    /// Lower ramification filtration and Swan conductor.
    Ramify {
        #[command(flatten)]
        qs: QArgs,
    },
    /// Irreducible censuses and the cohomology character.
    Reps {
        #[command(flatten)]
        qs: QArgs,
    },
    /// Point counts against the supersingular prediction.
    Curve {
        #[command(flatten)]
        qs: QArgs,
        #[arg(long, default_value_t = 3)]
        fmax: u32,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Hirzebruch–Jung data of type m/b.
    Hj {
        m: i64,
        b: i64,
        /// Characteristic exponent (1 for characteristic zero).
        #[arg(long, default_value_t = 1)]
        p: u64,
    },
    /// The singular fiber, as DOT or as an adjacency table.
    Fiber {
        #[command(flatten)]
        qs: QArgs,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Euler number, K² and Picard number of the surface.
    Invariants {
        #[command(flatten)]
        qs: QArgs,
    },
}

/// Failures of the program, mapped to exit codes 1 and 2.
enum Failure {
    Claims,
    Math(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type Outcome = Result<(), Failure>;

fn validated(qs: &QArgs) -> Result<Vec<u64>, Failure> {
    for &q in &qs.q {
        check_q(q).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(qs.q.clone())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            qs,
            json,
            fmax,
            threads,
        } => cmd_verify(&qs, json, fmax, threads),
        Command::Group { qs } => each(&qs, cmd_group),
        Command::Ramify { qs } => each(&qs, cmd_ramify),
        Command::Reps { qs } => each(&qs, cmd_reps),
        Command::Curve { qs, fmax, threads } => each(&qs, |q| cmd_curve(q, fmax, threads)),
        Command::Hj { m, b, p } => cmd_hj(m, b, p),
        Command::Fiber { qs, dot } => cmd_fiber(&qs, dot),
        Command::Invariants { qs } => each(&qs, cmd_invariants),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Claims) => ExitCode::from(1),
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn each(qs: &QArgs, f: impl Fn(u64) -> Outcome) -> Outcome {
    for q in validated(qs)? {
        f(q)?;
    }
    Ok(())
}

fn print_report(r: &Report) {
    println!("q = {}", r.q);
    for c in &r.claims {
        let mark = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        println!("  {mark}  {:<34} {}", c.id, c.observed);
        if c.status == Status::Fail {
            println!("        {:<34} expected {}", "", c.expected);
        }
    }
    println!("  overall: {}", if r.overall { "pass" } else { "FAIL" });
}

fn cmd_verify(qs: &QArgs, json: Option<PathBuf>, fmax: u32, threads: usize) -> Outcome {
    let qs = validated(qs)?;
    if threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let opts = VerifyOptions {
        fmax,
        threads,
        ..VerifyOptions::default()
    };
    let mut reports = Vec::new();
    for q in qs {
        let r = verify_q(q, &opts)?;
        print_report(&r);
        reports.push(r);
    }
    if let Some(path) = json {
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0])
        } else {
            serde_json::to_string_pretty(&reports)
        }
        .expect("reports serialize");
        fs::write(&path, text + "\n")
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
    }
    if reports.iter().all(|r| r.overall) {
        Ok(())
    } else {
        Err(Failure::Claims)
    }
}

fn cmd_group(q: u64) -> Outcome {
    let g = build_group(q)?;
    let census = g.subgroup_census()?;
    let classes = g.conjugacy_classes()?;
    println!("q = {q}: G over F_({}^{})", g.p(), g.field().degree());
    println!("  order                {}", g.order());
    println!("  |Z| = |G'| = |Phi|   {}", census.center.len());
    println!("  exponent             {}", g.exponent());
    println!("  conjugacy classes    {}", classes.classes.len());
    println!("  p-th power form      {:?}", g.pth_power_form());
    Ok(())
}

fn cmd_ramify(q: u64) -> Outcome {
    let g = build_group(q)?;
    let profile = local::filtration(&g)?;
    println!("q = {q}");
    for (i, n) in &profile.filtration {
        println!("  |G_{i}| = {n}");
    }
    let classes = g.conjugacy_classes()?;
    let chi = rep::cohomology_character(&g, &classes);
    let dims = rep::swan_dims(&profile, &chi, g.identity_index())?;
    println!("  Swan conductor of H^1: {}", local::swan_conductor(&profile, &dims)?);
    Ok(())
}

fn cmd_reps(q: u64) -> Outcome {
    let g = build_group(q)?;
    let classes = g.conjugacy_classes()?;
    println!("q = {q}");
    for kind in FieldKind::ALL {
        let census = rep::basic_set(q, kind)?;
        rep::wedderburn_audit(&census)?;
        println!(
            "  {kind:?}: {} irreducibles ({} class orbits)",
            rep::irr_count(q, kind)?,
            rep::irr_count_by_orbits(&g, &classes, kind)?
        );
        for e in &census.entries {
            println!(
                "    {:<8} count {:<4} degree {:<4} endo {}",
                e.label, e.count, e.degree, e.endo_dim
            );
        }
    }
    let chi = rep::cohomology_character(&g, &classes);
    rep::trace_vs_lefschetz(&g, &classes)?;
    let d = rep::invariant_dims(&g, &classes, &chi)?;
    println!("  chi(e) = {}, chi = -{q} on Z \\ e, 0 elsewhere", chi.at(g.identity_index()));
    println!(
        "  dim H1^G = {}, dim H1^Z = {}, dim (H1 x H1)^G = {}",
        d.h1_g, d.h1_z, d.h1_tensor_h1_g
    );
    Ok(())
}

fn cmd_curve(q: u64, fmax: u32, threads: usize) -> Outcome {
    if threads == 0 {
        return Err(Failure::Usage("--threads must be at least 1".into()));
    }
    let r = curve::verify_supersingular(q, fmax, threads)?;
    println!("q = {q}, eigenvalue sign {}", r.sign);
    for (rec, predicted) in &r.levels {
        println!("  f = {}: #C = {}, predicted {predicted}", rec.f, rec.count);
    }
    Ok(())
}

fn cmd_hj(m: i64, b: i64, p: u64) -> Outcome {
    let usage = |e: Error| Failure::Usage(e.to_string());
    if p == 0 || (p > 1 && !wildquot::gf::is_prime(p)) {
        return Err(Failure::Usage(format!("--p {p} is neither 1 nor a prime")));
    }
    let hj = graph::cf_expand(m, b).map_err(usage)?;
    let rev = hj.reversed()?;
    let phi = graph::discriminant_group(&hj.graph())?;
    println!("type {m}/{b}");
    println!("  expansion            {:?}", hj.expansion);
    println!("  reversed             {}/{} ({b}*{} = 1 mod {m})", rev.m, rev.b, rev.b);
    println!("  discriminant group   {}", phi.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" + "));
    println!("  fundamental cycle    {:?}", graph::fundamental_cycle(&hj.graph())?);
    println!("  local pi_1 order     {}", graph::local_pi1_order(m as u64, p));
    Ok(())
}

fn cmd_fiber(qs: &QArgs, dot: Option<PathBuf>) -> Outcome {
    let qs = validated(qs)?;
    if dot.is_some() && qs.len() != 1 {
        return Err(Failure::Usage("--dot takes a single q".into()));
    }
    for q in qs {
        let g: DualGraph = graph::solve_self_intersections(&graph::build_fiber_graph(q)?)?;
        match &dot {
            Some(path) => fs::write(path, g.to_dot(&format!("fiber_q{q}")))
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
            None => {
                println!("q = {q}: {} vertices, {} nodes", g.vertex_count(), g.node_count());
                print!("{}", g.adjacency_table());
            }
        }
    }
    Ok(())
}

fn cmd_invariants(q: u64) -> Outcome {
    let qi = q as i64;
    let g = build_group(q)?;
    let classes = g.conjugacy_classes()?;
    let chi = rep::cohomology_character(&g, &classes);
    let dims = rep::invariant_dims(&g, &classes, &chi)?;
    let profile = local::filtration(&g)?;
    let delta = local::swan_conductor(&profile, &rep::swan_dims(&profile, &chi, g.identity_index())?)?;
    let s = graph::surface_invariants(q, delta, dims.h1_tensor_h1_g as i64)?;
    println!("q = {q}");
    println!("  Swan conductor   {delta} (expected {})", qi * qi - 1);
    println!("  e                {}", s.e);
    println!("  K^2              {}", s.k2);
    println!("  rho              {} = 2 + ({} - 1) + {}", s.rho, s.components_c, s.mw_rank_r);
    Ok(())
}
