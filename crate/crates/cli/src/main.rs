use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use dtl_core::algebra::augmentation_ideal_basis;
use dtl_core::bar::{bar_tor, IdealProducts};
use dtl_core::coeff::{AnyRing, DeltaSpec, PolyRing, RingKind};
use dtl_core::homology::{complex_homology, ComplexJson, DegreeHomology};
use dtl_core::ideal::{cup_module, ideal_j, ideal_k, ideal_l, intersect};
use dtl_core::idempotent::certify;
use dtl_core::linalg::{invariant_factors, smith_with_transforms, MatrixJson, SparseMatrix};
use dtl_core::link::enumerate_link_states;
use dtl_core::mv::{ext_from_resolution, tor_from_resolution, verify_acyclic, witness_for, Resolution};
use dtl_core::tl::tl_bar_tor;
use dtl_core::verify::{run_verify_theorem, Report, RunConfig};
use dtl_core::{enumerate_basis, with_exact_ring, Diagram, Error, IdealBasis, Integers, LinkState, Ring};

const OUTPUT_DIR_ENV: &str = "DTL_OUTPUT_DIR";

#[derive(Parser)]
#[command(name = "dtl", version, about = "Exact computations in dilute Temperley-Lieb algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RingArgs {
    /// `Z`, `Q`, `Fp:<prime>` or `Z[delta]`.
    #[arg(long, default_value = "Z")]
    ring: String,
    /// An integer, or `generic` with `Z[delta]`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    delta: String,
}

#[derive(Subcommand)]
enum Command {
    /// List or count the diagram basis.
    Basis {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
        #[arg(long)]
        json: bool,
    },
    /// Multiply two diagrams.
    Multiply {
        #[arg(long)]
        n: usize,
        left: String,
        right: String,
    },
    /// Describe one link state, or list all of them.
    LinkState {
        #[arg(long)]
        n: usize,
        state: Option<String>,
    },
    /// Build an ideal and certify its idempotent generator.
    Ideal {
        #[arg(long)]
        n: usize,
        /// `I`, `J:<state>`, `K:<R-indices>`, `L:<indices>` (intersection) or `Cup`.
        kind: String,
        #[arg(long)]
        list: bool,
    },
    /// Idempotent generator of `J_p` with its condition flags.
    Idempotent {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        link_state: String,
    },
    /// Mayer-Vietoris complex: ranks, acyclicity and Tor/Ext.
    Mv {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        emit_matrices: Option<PathBuf>,
    },
    /// Homology of a dumped integer complex.
    Homology {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// Tor from the reduced bar complex.
    BarTor {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Smith normal form of an integer matrix.
    Snf {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        transforms: bool,
    },
    /// Side-by-side bar Tor of TL_n and dTL_n.
    TlCompare {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run every check and write a JSON report.
    Verify {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',')]
        rings: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        deltas: Option<Vec<i64>>,
        #[arg(long)]
        max_bar_degree: Option<usize>,
        #[arg(long)]
        output_dir: Option<PathBuf>,
        #[arg(long)]
        emit_matrices: bool,
        #[arg(long)]
        seed: Option<u64>,
    },
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn print_json(v: &impl serde::Serialize) -> Outcome {
    let text = serde_json::to_string_pretty(v)?;
    match writeln!(std::io::stdout(), "{text}") {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("n must be at least 1".into()));
    }
    Ok(())
}

fn parse_diagram(n: usize, text: &str) -> Result<Diagram, Failure> {
    let d: Diagram = text.parse()?;
    if d.n() != n {
        return Err(Failure::Usage(format!("{text} has n = {}, expected {n}", d.n())));
    }
    Ok(d)
}

fn parse_state(n: usize, text: &str) -> Result<LinkState, Failure> {
    let p: LinkState = text.parse()?;
    if p.n() != n {
        return Err(Failure::Usage(format!("{text:?} has length {}, expected {n}", p.n())));
    }
    Ok(p)
}

fn index_set(text: &str) -> Result<BTreeSet<usize>, Failure> {
    text.split(',')
        .map(|t| t.trim().trim_start_matches('R').parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Usage(format!("bad index list {text:?}")))
}

fn build_ideal(basis: &[Diagram], n: usize, kind: &str) -> Result<IdealBasis, Failure> {
    let (head, arg) = kind.split_once(':').unwrap_or((kind, ""));
    Ok(match head {
        "I" => augmentation_ideal_basis(n),
        "J" => ideal_j(basis, &parse_state(n, arg)?),
        "K" => ideal_k(basis, n, &index_set(arg)?)?,
        "L" => {
            let parts = index_set(arg)?.into_iter().map(|i| ideal_l(basis, n, i)).collect::<Result<Vec<_>, _>>()?;
            intersect(&parts)?
        }
        "Cup" => cup_module(basis, n)?,
        _ => return Err(Failure::Usage(format!("unknown ideal {kind:?}"))),
    })
}

fn homology_rows(h: &[DegreeHomology]) -> Value {
    serde_json::to_value(h).expect("plain data")
}

fn render<T: ToString>(a: &[Vec<T>]) -> Vec<Vec<String>> {
    a.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect()
}

fn write_dump(path: &Path, dump: &ComplexJson) -> Outcome {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, serde_json::to_string(dump)?)?;
    Ok(())
}

fn cmd_mv(n: usize, ring: &RingArgs, emit: Option<&Path>) -> Outcome {
    check_n(n)?;
    let any = AnyRing::parse(&ring.ring, &ring.delta)?;
    let res = Resolution::new(n)?;
    let notes = res.complex.shape_notes(&res.cover);
    if let AnyRing::IntegerPolynomial(_) = any {
        let c = res.complex.chain_complex(&PolyRing);
        let d_squared = c.check_d_squared().is_ok();
        if let Some(path) = emit {
            write_dump(path, &c.to_json())?;
        }
        print_json(&json!({
            "n": n, "ring": any.kind(), "delta": "generic",
            "ranks": res.complex.ranks(), "d_squared_zero": d_squared, "notes": notes,
        }))?;
        return if d_squared { Ok(()) } else { Err(Failure::Check("d^2 is nonzero".into())) };
    }
    if let Some(path) = emit {
        write_dump(path, &res.complex.chain_complex(&Integers::new(0)).to_json())?;
    }
    let (acyclic, homology, tor, ext) = with_exact_ring!(&any, r => {
        let h = verify_acyclic(&res.complex, r)?;
        let tor = tor_from_resolution(&res.complex, &res.action, r)?;
        let ext = ext_from_resolution(&res.complex, &res.action, r)?;
        (h.is_zero(), h.degrees, tor, ext)
    }, poly => unreachable!());
    let concentrated =
        |h: &[DegreeHomology]| h.iter().all(|d| if d.degree == 0 { d.is_ground_ring() } else { d.is_zero() });
    let ok = acyclic && concentrated(&tor) && concentrated(&ext);
    print_json(&json!({
        "n": n, "ring": any.kind(), "delta": any.delta_spec().to_string(),
        "ranks": res.complex.ranks(), "acyclic": acyclic, "homology": homology_rows(&homology),
        "tor": homology_rows(&tor), "ext": homology_rows(&ext), "notes": notes,
    }))?;
    if ok { Ok(()) } else { Err(Failure::Check("homology is not concentrated in degree 0".into())) }
}

fn cmd_homology(input: &Path, ring: &str) -> Outcome {
    let dump: ComplexJson = serde_json::from_str(&std::fs::read_to_string(input)?)?;
    let integral = dump.to_integral()?;
    let any = AnyRing::new(&ring.parse::<RingKind>()?, &DeltaSpec::Value(0))?;
    let h = with_exact_ring!(&any, r => complex_homology(&integral.map_ring(r, |x| r.from_int(x)))?, poly => unreachable!());
    print_json(&h.degrees)
}

fn cmd_snf(input: &Path, transforms: bool) -> Outcome {
    let m: MatrixJson = serde_json::from_str(&std::fs::read_to_string(input)?)?;
    let m = SparseMatrix::from_json(&m)?;
    let factors: Vec<String> = invariant_factors(&m).iter().map(ToString::to_string).collect();
    if !transforms {
        return print_json(&json!({ "rows": m.rows(), "cols": m.cols(), "invariant_factors": factors }));
    }
    let smith = smith_with_transforms(&m);
    let verified = smith.verify(&m);
    print_json(&json!({
        "rows": m.rows(), "cols": m.cols(), "invariant_factors": factors,
        "u": render(&smith.u), "v": render(&smith.v), "verified": verified,
    }))?;
    if verified { Ok(()) } else { Err(Failure::Check("U m V does not reproduce the diagonal".into())) }
}

fn cmd_tl_compare(n: usize, ring: &RingArgs, max_degree: usize, as_json: bool) -> Outcome {
    check_n(n)?;
    let any = AnyRing::parse(&ring.ring, &ring.delta)?;
    let (tl, dtl) = with_exact_ring!(&any, r => (
        tl_bar_tor(n, r, max_degree)?,
        bar_tor(&IdealProducts::dilute(n)?, r, max_degree)?,
    ), poly => return Err(Failure::Usage("tl-compare needs a specialized ring".into())));
    if as_json {
        return print_json(&json!({
            "n": n, "ring": any.kind(), "delta": any.delta_spec().to_string(),
            "tl": homology_rows(&tl), "dtl": homology_rows(&dtl),
        }));
    }
    let cell = |h: &DegreeHomology| {
        let mut s = h.betti.to_string();
        for t in &h.torsion {
            s.push_str(&format!(" + Z/{t}"));
        }
        s
    };
    println!("{:>6}  {:>12}  {:>12}", "degree", format!("TL_{n}"), format!("dTL_{n}"));
    for (a, b) in tl.iter().zip(&dtl) {
        println!("{:>6}  {:>12}  {:>12}", a.degree, cell(a), cell(b));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    config: Option<&Path>,
    n: Option<Vec<usize>>,
    rings: Option<Vec<String>>,
    deltas: Option<Vec<i64>>,
    max_bar_degree: Option<usize>,
    output_dir: Option<PathBuf>,
    emit_matrices: bool,
    seed: Option<u64>,
) -> Outcome {
    let mut cfg = match config {
        Some(path) => RunConfig::from_toml(&std::fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
        cfg.output_dir = Some(PathBuf::from(dir));
    }
    if let Some(v) = n {
        cfg.n_values = v;
    }
    if let Some(v) = rings {
        cfg.rings = v.iter().map(|r| r.parse()).collect::<Result<_, _>>()?;
    }
    if let Some(v) = deltas {
        cfg.deltas = v;
    }
    if let Some(v) = max_bar_degree {
        cfg.max_bar_degree = v;
    }
    if output_dir.is_some() {
        cfg.output_dir = output_dir;
    }
    cfg.emit_matrices |= emit_matrices;
    if let Some(v) = seed {
        cfg.seed = v;
    }
    let report = run_verify_theorem(&cfg)?;
    print_summary(&report);
    if report.all_passed {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} check(s) failed", report.failures().count())))
    }
}

fn print_summary(report: &Report) {
    println!("{:<18} {:<28} {:>6} {:>10}", "check", "params", "result", "time_us");
    for r in &report.records {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let verdict = if r.passed { "pass" } else { "FAIL" };
        println!("{:<18} {:<28} {:>6} {:>10}", r.name, params.join(" "), verdict, r.wall_time_us);
    }
    for note in &report.notes {
        println!("note: {note}");
    }
    if let Some(dir) = &report.config.output_dir {
        println!("report: {}", dir.join("report.json").display());
    }
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Basis { n, count, json } => {
            check_n(n)?;
            let basis = enumerate_basis(n);
            if count {
                println!("{}", basis.len());
            } else if json {
                print_json(&basis)?;
            } else {
                basis.iter().for_each(|d| println!("{d}"));
            }
            Ok(())
        }
        Command::Multiply { n, left, right } => {
            let (a, b) = (parse_diagram(n, &left)?, parse_diagram(n, &right)?);
            println!("{}", a.multiply(&b)?);
            Ok(())
        }
        Command::LinkState { n, state } => {
            check_n(n)?;
            match state {
                Some(s) => {
                    let p = parse_state(n, &s)?;
                    let closure: Vec<String> = p.splice_closure().iter().map(ToString::to_string).collect();
                    print_json(&json!({ "link_state": p, "splice_closure": closure }))
                }
                None => {
                    enumerate_link_states(n).iter().for_each(|p| println!("{p}"));
                    Ok(())
                }
            }
        }
        Command::Ideal { n, kind, list } => {
            check_n(n)?;
            let basis = enumerate_basis(n);
            let ideal = build_ideal(&basis, n, &kind)?;
            if ideal.is_empty() {
                return print_json(&json!({ "label": ideal.label(), "size": 0 }));
            }
            let witness = witness_for(&basis, n, &ideal);
            let members: Option<Vec<String>> = list.then(|| ideal.diagrams().iter().map(ToString::to_string).collect());
            let ok = witness.is_ok();
            print_json(&json!({
                "label": ideal.label(), "size": ideal.len(), "members": members,
                "witness": witness.as_ref().ok(), "error": witness.as_ref().err().map(ToString::to_string),
            }))?;
            if ok { Ok(()) } else { Err(Failure::Check(format!("{} is not certified", ideal.label()))) }
        }
        Command::Idempotent { n, link_state } => {
            let p = parse_state(n, &link_state)?;
            let cert = certify(&enumerate_basis(n), &p)?;
            print_json(&cert)
        }
        Command::Mv { n, ring, emit_matrices } => cmd_mv(n, &ring, emit_matrices.as_deref()),
        Command::Homology { input, ring } => cmd_homology(&input, &ring),
        Command::BarTor { n, ring, max_degree } => {
            check_n(n)?;
            let any = AnyRing::parse(&ring.ring, &ring.delta)?;
            let tor = with_exact_ring!(&any, r => bar_tor(&IdealProducts::dilute(n)?, r, max_degree)?,
                poly => return Err(Failure::Usage("bar-tor needs a specialized ring".into())));
            print_json(&tor)
        }
        Command::Snf { input, transforms } => cmd_snf(&input, transforms),
        Command::TlCompare { n, ring, max_degree, json } => cmd_tl_compare(n, &ring, max_degree, json),
        Command::Verify { config, n, rings, deltas, max_bar_degree, output_dir, emit_matrices, seed } => {
            cmd_verify(config.as_deref(), n, rings, deltas, max_bar_degree, output_dir, emit_matrices, seed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}
