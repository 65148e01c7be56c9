//! Command-line surface: describe and export the named constructions, emit
//! and verify certificates, run the verification suites, and print the
//! trusted-rule registry.
//!
//! Exit codes: 0 on success, 1 on verification failure, 2 on usage or
//! parse errors.

use std::collections::BTreeSet;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use twarrow::anodyne::{render_trust, verify, CertStore, RuleId};
use twarrow::certs::{lemma36_entry, parse_file, render_file};
use twarrow::complex::{Ambient, Face, Subcomplex};
use twarrow::constructions::{
    cosegal_q, cosegal_t, e_nerve, k_complex, lambda_bar_t, lambda_bar_t_cart,
    lambda_bar_t_prime, lambda_t, latching, omega_full, q, s_complex,
    spine, t, u_complex, v_complex, x_cart, x_complex, Family, TVariant,
};
use twarrow::scaling::{ScaledComplex, ScalingMode};
use twarrow::suites::{
    render_records, render_text, run_all, run_suite, SuiteConfig, DEFAULT_N_MAX, DEFAULT_SEED,
    SUITE_NAMES,
};

#[derive(Parser)]
#[command(name = "twarrow", version, about = "scaled-complex combinatorics engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the face list (and thin lines) of a named construction.
    Describe(DescribeArgs),
    /// Write the face list of a named construction to a file.
    Export(ExportArgs),
    /// Emit and verify certificates.
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
    /// Run verification suites.
    Suite {
        #[command(subcommand)]
        action: SuiteAction,
    },
    /// Print the generator and trusted-rule registry.
    Rules,
}

#[derive(Clone, Copy, ValueEnum)]
enum DescribeTarget {
    Q,
    T,
    Tcart,
    Omega,
    Horn,
    Filtration,
    Latching,
    Cosegal,
}

#[derive(Clone, Copy, ValueEnum)]
enum FiltrationKind {
    LambdaT,
    LambdaBarT,
    X,
    U,
    V,
    Xcart,
    LambdaBarTCart,
    LambdaBarTPrime,
    K,
    Spine,
    SComplex,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Q,
    T,
    Delta,
    E,
}

#[derive(Args)]
struct DescribeArgs {
    #[arg(value_enum)]
    target: DescribeTarget,
    /// Level of the construction.
    #[arg(long)]
    n: Option<u32>,
    /// Horn pivot or filtration index.
    #[arg(long)]
    i: Option<u32>,
    /// Filtration stage.
    #[arg(long)]
    s: Option<u32>,
    /// Filtration index k.
    #[arg(long)]
    k: Option<u32>,
    /// Filtration index l (or j).
    #[arg(long)]
    l: Option<u32>,
    /// Vertex list for `horn`, comma separated.
    #[arg(long, value_name = "I", allow_hyphen_values = true)]
    i_set: Option<String>,
    #[arg(long = "I", value_name = "V0,V1,..")]
    big_i: Option<String>,
    #[arg(long = "M", value_name = "M0,M1,..")]
    big_m: Option<String>,
    /// Filtration kind for `filtration`.
    #[arg(long, value_enum)]
    kind: Option<FiltrationKind>,
    /// Cosimplicial family for `latching`/`cosegal`.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Truncation dimension for the path complex.
    #[arg(long)]
    d: Option<u32>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    describe: DescribeArgs,
    /// Output path.
    #[arg(long)]
    out: String,
}

#[derive(Subcommand)]
enum CertAction {
    /// Emit a horn-lemma certificate for `Λ^n_M → Δ^n` with the given scaling.
    EmitLemma36 {
        #[arg(long)]
        n: u32,
        /// The horn set, comma separated.
        #[arg(long)]
        m: String,
        /// Thin triangles, semicolon-separated vertex triples: "2 4 5;3 4 5".
        #[arg(long, default_value = "")]
        thin: String,
        /// Use the dual form of the lemma.
        #[arg(long)]
        dual: bool,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<String>,
    },
    /// Replay a certificate file and print PASS/FAIL with its trust base.
    Verify { file: String },
}

#[derive(Subcommand)]
enum SuiteAction {
    /// Run one suite by name, or `all`.
    Run {
        name: String,
        #[arg(long, default_value_t = DEFAULT_N_MAX)]
        n_max: u32,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the report to a file instead of stdout.
        #[arg(long)]
        report: Option<String>,
        #[arg(long, default_value = "text")]
        format: String,
        /// Record real elapsed milliseconds (off keeps reports byte-identical).
        #[arg(long)]
        timings: bool,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_u32_list(s: &str) -> Result<Vec<u32>, String> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<u32>().map_err(|_| format!("bad number {p}")))
        .collect()
}

fn describe_output(args: &DescribeArgs) -> Result<String, String> {
    let need_n = || args.n.ok_or_else(|| "--n is required".to_string());
    match args.target {
        DescribeTarget::Q => Ok(q(need_n()?).render()),
        DescribeTarget::T => Ok(t(need_n()?, TVariant::Plain).map_err(|e| e.to_string())?.render()),
        DescribeTarget::Tcart => {
            Ok(t(need_n()?, TVariant::Cart).map_err(|e| e.to_string())?.render())
        }
        DescribeTarget::Omega => Ok(omega_full(need_n()?).render_face_list()),
        DescribeTarget::Horn => {
            let i_raw = args
                .big_i
                .clone()
                .or(args.i_set.clone())
                .ok_or_else(|| "--I is required".to_string())?;
            let verts = parse_u32_list(&i_raw)?;
            let m = parse_u32_list(&args.big_m.clone().unwrap_or_default())?;
            if verts.is_empty() {
                return Err("--I must be nonempty".into());
            }
            let n = *verts.iter().max().unwrap();
            let ambient = Ambient::simplex(n);
            let i_face = Face::from_positions(verts.iter().map(|&v| v as usize));
            let m_face = Face::from_positions(m.iter().map(|&v| v as usize));
            let horn = Subcomplex::horn(ambient, i_face, m_face).map_err(|e| e.to_string())?;
            Ok(horn.render_face_list())
        }
        DescribeTarget::Filtration => {
            let kind = args.kind.ok_or_else(|| "--kind is required".to_string())?;
            let n = need_n()?;
            let get = |v: Option<u32>, name: &str| {
                v.ok_or_else(|| format!("--{name} is required for this kind"))
            };
            let scaled = match kind {
                FiltrationKind::LambdaT => lambda_t(n, get(args.i, "i")?),
                FiltrationKind::LambdaBarT => lambda_bar_t(n, get(args.i, "i")?),
                FiltrationKind::X => x_complex(n, get(args.i, "i")?, get(args.s, "s")?),
                FiltrationKind::U => u_complex(n, get(args.k, "k")?),
                FiltrationKind::V => v_complex(n, get(args.k, "k")?, get(args.l, "l")?),
                FiltrationKind::Xcart => x_cart(n, get(args.s, "s")?),
                FiltrationKind::LambdaBarTCart => lambda_bar_t_cart(n),
                FiltrationKind::LambdaBarTPrime => lambda_bar_t_prime(n),
                FiltrationKind::K => k_complex(n, get(args.i, "i")?),
                FiltrationKind::Spine => {
                    let i = args.i.unwrap_or(0);
                    let j = args.l.unwrap_or(n);
                    return spine(n, i, j).map(|s| s.render_face_list()).map_err(|e| e.to_string());
                }
                FiltrationKind::SComplex => {
                    return s_complex(n, get(args.i, "i")?)
                        .map(|s| s.render_face_list())
                        .map_err(|e| e.to_string());
                }
            };
            scaled.map(|s| s.render()).map_err(|e| e.to_string())
        }
        DescribeTarget::Latching => {
            let n = need_n()?;
            match args.family.ok_or_else(|| "--family is required".to_string())? {
                FamilyArg::Q => latching(Family::Q, n).map(|s| s.render()).map_err(|e| e.to_string()),
                FamilyArg::T => latching(Family::T, n).map(|s| s.render()).map_err(|e| e.to_string()),
                FamilyArg::Delta => {
                    latching(Family::DeltaSharp, n).map(|s| s.render()).map_err(|e| e.to_string())
                }
                FamilyArg::E => {
                    let d = args.d.unwrap_or(n + 2);
                    let pc = e_nerve(n, d, true);
                    let mut out = String::new();
                    for (dim, level) in pc.paths.iter().enumerate() {
                        for p in level {
                            let verts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
                            out.push_str(&format!("{dim}: {}\n", verts.join(" ")));
                        }
                    }
                    Ok(out)
                }
            }
        }
        DescribeTarget::Cosegal => {
            let n = need_n()?;
            match args.family.ok_or_else(|| "--family is required".to_string())? {
                FamilyArg::Q => Ok(cosegal_q(n).render()),
                FamilyArg::T => Ok(cosegal_t(n).render()),
                _ => Err("cosegal is defined for the q and t families".into()),
            }
        }
    }
}

fn cmd_cert(action: CertAction) -> ExitCode {
    match action {
        CertAction::EmitLemma36 { n, m, thin, dual, out } => {
            let m_set: BTreeSet<u32> = match parse_u32_list(&m) {
                Ok(v) if !v.is_empty() => v.into_iter().collect(),
                Ok(_) => return usage_error("--m must be nonempty"),
                Err(e) => return usage_error(&e),
            };
            if n < 2 {
                return usage_error("need n ≥ 2");
            }
            let ambient = Ambient::simplex(n);
            let mut thin_set: BTreeSet<Face> = BTreeSet::new();
            for part in thin.split(';').filter(|p| !p.trim().is_empty()) {
                let verts = match parse_u32_list(&part.replace(' ', ",")) {
                    Ok(v) => v,
                    Err(e) => return usage_error(&e),
                };
                if verts.len() != 3 || verts.iter().any(|&v| v > n) {
                    return usage_error(&format!("bad thin triangle '{part}'"));
                }
                thin_set.insert(Face::from_positions(verts.iter().map(|&v| v as usize)));
            }
            let scaling =
                match ScaledComplex::explicit(Subcomplex::full(ambient), thin_set) {
                    Ok(s) => s,
                    Err(e) => return usage_error(&e.to_string()),
                };
            match lemma36_entry(&scaling, &m_set, dual) {
                Ok(entry) => {
                    let text = render_file(std::slice::from_ref(&entry));
                    match out {
                        Some(path) => {
                            if let Err(e) = fs::write(&path, text) {
                                return usage_error(&format!("cannot write {path}: {e}"));
                            }
                            println!("wrote certificate {} to {path}", entry.cert.id);
                        }
                        None => print!("{text}"),
                    }
                    ExitCode::SUCCESS
                }
                Err(violation) => usage_error(&violation),
            }
        }
        CertAction::Verify { file } => {
            let text = match fs::read_to_string(&file) {
                Ok(t) => t,
                Err(e) => return usage_error(&format!("cannot read {file}: {e}")),
            };
            let store = CertStore::new();
            let entries = match parse_file(&text, &store) {
                Ok(e) => e,
                Err(pe) => return usage_error(&pe.to_string()),
            };
            if entries.is_empty() {
                return usage_error("no certificates in file");
            }
            let mut replay_store = CertStore::new();
            let mut ok = true;
            for entry in &entries {
                let report = verify(&entry.cert, &replay_store);
                if report.pass {
                    println!("{}: PASS trust={}", entry.cert.id, render_trust(&report.trust));
                } else {
                    ok = false;
                    let f = report.failure.unwrap();
                    println!("{}: FAIL at step {}: {}", entry.cert.id, f.step, f.reason);
                }
                replay_store.insert(entry.cert.clone());
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn cmd_suite(action: SuiteAction) -> ExitCode {
    let SuiteAction::Run { name, n_max, seed, report, format, timings } = action;
    let cfg = SuiteConfig { n_max, seed, timings };
    let suite_report = if name == "all" {
        run_all(&cfg)
    } else {
        match run_suite(&name, &cfg) {
            Some(r) => r,
            None => {
                return usage_error(&format!(
                    "unknown suite {name}; known: all, {}",
                    SUITE_NAMES.join(", ")
                ))
            }
        }
    };
    let rendered = match format.as_str() {
        "text" => render_text(&suite_report.records),
        "records" => render_records(&suite_report.records),
        other => return usage_error(&format!("unknown format {other}")),
    };
    match report {
        Some(path) => {
            if let Err(e) = fs::write(&path, &rendered) {
                return usage_error(&format!("cannot write {path}: {e}"));
            }
            println!("digest {}", suite_report.digest());
        }
        None => print!("{rendered}"),
    }
    if suite_report.has_failure() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_rules() -> ExitCode {
    println!("generators:");
    println!("  An1(n,i): (Λ^n_i, {{i-1,i,i+1}}) -> (Δ^n, {{i-1,i,i+1}}), 0 < i < n");
    println!("  An2: (Δ^4, T) -> (Δ^4, T ∪ {{034, 014}}), T = {{024, 123, 013, 134, 012}};");
    println!("       embeddings may collapse one adjacent vertex pair");
    println!("  An3: (Λ^n_0 ⊔_Δ¹ Δ^0, T|) -> (Δ^n ⊔_Δ¹ Δ^0, T), n ≥ 3; listed for");
    println!("       completeness; no matcher (its codomain is a quotient, not a");
    println!("       subcomplex), and no certificate here uses it");
    println!("trusted rules:");
    for rule in RuleId::all() {
        println!("  {}: {}", rule.name(), rule.citation());
    }
    let _ = ScalingMode::Sharp;
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Describe(args) => match describe_output(&args) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&e),
        },
        Command::Export(args) => match describe_output(&args.describe) {
            Ok(text) => {
                if let Err(e) = fs::write(&args.out, text) {
                    return usage_error(&format!("cannot write {}: {e}", args.out));
                }
                ExitCode::SUCCESS
            }
            Err(e) => usage_error(&e),
        },
        Command::Cert { action } => cmd_cert(action),
        Command::Suite { action } => cmd_suite(action),
        Command::Rules => cmd_rules(),
    }
}
