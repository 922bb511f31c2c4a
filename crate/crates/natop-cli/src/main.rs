//! Command-line surface for the classification engine: classification runs,
//! numeric verification, the symbolic identity suite, and the degree
//! equation, with machine-readable reports.

use natop_cli::report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use natop_core::catalog::{self, Catalog, Naturality};
use natop_core::homogeneity;
use natop_core::jets::{self, FieldClass, NatConfig};
use natop_core::pipeline;
use natop_core::{EngineError, TensorSignature};
use report::{build_report, ClassificationReport, ConstraintFlags};

#[derive(Parser)]
#[command(
    name = "natop",
    version,
    about = "Classification and verification of natural bilinear first-order operators on tensor fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SignatureArgs {
    /// Covariant rank p of the (1,p) first field
    #[arg(long = "phi")]
    phi: usize,
    /// Valence r,s of the second field
    #[arg(long = "psi", value_parser = parse_valence)]
    psi: (usize, usize),
}

impl SignatureArgs {
    fn signature(&self) -> TensorSignature {
        TensorSignature::new(self.phi, self.psi.0, self.psi.1)
    }
}

fn parse_valence(s: &str) -> Result<(usize, usize), String> {
    let (r, sv) = s
        .split_once(',')
        .ok_or_else(|| "expected R,S (for example 0,2)".to_string())?;
    let r = r.trim().parse().map_err(|_| format!("bad contravariant rank {r}"))?;
    let sv = sv.trim().parse().map_err(|_| format!("bad covariant rank {sv}"))?;
    Ok((r, sv))
}

#[derive(Subcommand)]
enum Command {
    /// Classify all natural bilinear first-order operators for a signature
    Classify {
        #[command(flatten)]
        sig: SignatureArgs,
        /// Symmetry of the second field: sym | antisym | closed
        #[arg(long = "sym-psi")]
        sym_psi: Option<String>,
        /// Restrict the (1,2) first field to tangent-valued 2-forms
        #[arg(long = "alt-phi")]
        alt_phi: bool,
        /// Post-compose with alternation of the output covariant slots
        #[arg(long = "alt-output")]
        alt_output: bool,
        /// Write the report as JSON
        #[arg(long = "json")]
        json: Option<PathBuf>,
        /// Dump the generated ansatz (term list with stable ids) as JSON
        #[arg(long = "ansatz-json")]
        ansatz_json: Option<PathBuf>,
        /// Dump the extracted constraint system with row provenance as JSON
        #[arg(long = "system-json")]
        system_json: Option<PathBuf>,
    },
    /// Numerically certify naturality of an operator or a computed basis
    Verify {
        /// Catalog operator name
        #[arg(long = "op", conflicts_with = "basis_from")]
        op: Option<String>,
        /// Verify every basis element of a classification report
        #[arg(long = "basis-from")]
        basis_from: Option<PathBuf>,
        #[arg(long, default_value_t = 50)]
        trials: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Chart dimension
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Write the verification reports as JSON
        #[arg(long = "json")]
        json: Option<PathBuf>,
    },
    /// Run the symbolic identity suite
    Identities {
        /// all, or one suite name
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Solve the integer degree equation and certify first order
    Homogeneity {
        #[command(flatten)]
        sig: SignatureArgs,
        #[arg(long = "max-order", default_value_t = 4)]
        max_order: u32,
        /// Restrict to degree one in each input
        #[arg(long)]
        bilinear: bool,
    },
    /// List the operator catalog
    Catalog {
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                EngineError::Invalid(_)
                | EngineError::UnknownName(_)
                | EngineError::IncompatibleConstraint(_)
                | EngineError::Hypotheses(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, EngineError> {
    match cli.command {
        Command::Classify { sig, sym_psi, alt_phi, alt_output, json, ansatz_json, system_json } => {
            let sig = sig.signature();
            let flags = ConstraintFlags { sym_psi, alt_phi, alt_output };
            let constraints = flags.to_constraints(&sig)?;
            let catalog = Catalog::new();
            let start = Instant::now();
            let outcome = pipeline::classify(&sig, &constraints, Some(&catalog))?;
            let report = build_report(&outcome, start.elapsed().as_millis());
            print_classification(&report);
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
            if let Some(path) = ansatz_json {
                write_json(&path, &natop_core::ansatz::family_to_json(&outcome.family))?;
            }
            if let Some(path) = system_json {
                write_json(&path, &natop_core::connection::system_to_json(&outcome.system))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { op, basis_from, trials, seed, dim, json } => {
            let cfg = NatConfig { dim, trials, seed, ..NatConfig::default() };
            let reports = match (op, basis_from) {
                (Some(name), None) => verify_catalog_op(&name, &cfg)?,
                (None, Some(path)) => verify_basis_file(&path, &cfg)?,
                _ => {
                    return Err(EngineError::Invalid(
                        "pass exactly one of --op or --basis-from".into(),
                    ))
                }
            };
            let mut all_pass = true;
            for r in &reports {
                let verdict = if r.pass { "pass" } else { "FAIL" };
                println!(
                    "{verdict}  {}  ({} jet trials, {} linear trials, seed {})",
                    r.operator, r.trials, r.gl_trials, r.seed
                );
                if let Some(w) = &r.witness {
                    println!(
                        "      witness: {} trial {} component {:?}: {} != {}",
                        w.kind, w.trial, w.component, w.lhs, w.rhs
                    );
                }
                all_pass &= r.pass;
            }
            if let Some(path) = json {
                write_json(&path, &reports)?;
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Identities { suite } => {
            let catalog = Catalog::new();
            let which = if suite == "all" { None } else { Some(suite.as_str()) };
            let reports = catalog::run_suite(&catalog, which)?;
            let mut all_pass = true;
            for r in &reports {
                for c in &r.checks {
                    let verdict = if c.pass { "pass" } else { "FAIL" };
                    println!("{verdict}  {}: {}", r.name, c.label);
                    if let Some(res) = &c.residual {
                        println!("      residual: {res}");
                    }
                }
                all_pass &= r.pass;
            }
            Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Homogeneity { sig, max_order, bilinear } => {
            let sig = sig.signature();
            let sols = homogeneity::solve_degree_equation(&sig, max_order, bilinear)?;
            println!(
                "degree equation for {sig}, max order {max_order}{}:",
                if bilinear { ", bilinear" } else { "" }
            );
            for s in &sols {
                println!("  degrees in first-field jets {:?}, second-field jets {:?}", s.a, s.b);
            }
            if bilinear {
                let cert = homogeneity::certify_first_order(&sig)?;
                println!(
                    "first-order certificate: {} solutions, shapes {:?}",
                    cert.solutions.len(),
                    cert.shapes
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Catalog { json } => {
            let catalog = Catalog::new();
            let listing = catalog::listing(&catalog);
            if json {
                println!("{}", serde_json::to_string_pretty(&listing).unwrap());
            } else {
                for e in &listing {
                    println!("{}  [{}]  {}", e.name, e.signature, e.natural);
                    println!("    {}", e.expansion);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify_catalog_op(name: &str, cfg: &NatConfig) -> Result<Vec<jets::NatReport>, EngineError> {
    let catalog = Catalog::new();
    let entry = catalog.get(name)?;
    let report = match entry.naturality {
        Naturality::PurePairs => {
            let mut cfg = cfg.clone();
            cfg.trials = cfg.trials.min(20);
            jets::check_pure_case(&entry.expr, &cfg)?
        }
        Naturality::OnReduced(r) => jets::check_naturality(
            &entry.signature,
            name,
            &entry.expr,
            FieldClass::from_reduction(r),
            cfg,
        )?,
        _ => jets::check_naturality(
            &entry.signature,
            name,
            &entry.expr,
            FieldClass::Generic,
            cfg,
        )?,
    };
    Ok(vec![report])
}

fn verify_basis_file(
    path: &PathBuf,
    cfg: &NatConfig,
) -> Result<Vec<jets::NatReport>, EngineError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| EngineError::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let report: ClassificationReport = serde_json::from_str(&text)
        .map_err(|e| EngineError::Invalid(format!("bad report JSON: {e}")))?;
    let sig = report.signature_struct();
    let class = match report.constraints.sym_psi.as_deref() {
        Some("sym") => FieldClass::SymmetricPsi,
        Some("antisym") => FieldClass::AntisymmetricPsi,
        Some("closed") if sig.psi_s == 1 => FieldClass::Closed1FormPsi,
        Some("closed") => FieldClass::Closed2FormPsi,
        _ if report.constraints.alt_phi => FieldClass::AntisymmetricPhi,
        _ => FieldClass::Generic,
    };
    let ops: Vec<(String, natop_core::expr::Expression)> = report
        .basis
        .iter()
        .zip(report.basis_expressions()?)
        .map(|(b, e)| (b.id.clone(), e))
        .collect();
    jets::check_naturality_many(&sig, &ops, class, cfg)
}

fn print_classification(r: &ClassificationReport) {
    println!(
        "signature (1,{}) x ({},{}) -> ({},{})",
        r.signature.phi_p,
        r.signature.psi_r,
        r.signature.psi_s,
        r.signature.out_contra,
        r.signature.out_cov
    );
    let mut notes = Vec::new();
    if let Some(s) = &r.constraints.sym_psi {
        notes.push(format!("second field {s}"));
    }
    if r.constraints.alt_phi {
        notes.push("first field tangent-valued 2-form".into());
    }
    if r.constraints.alt_output {
        notes.push("output alternated".into());
    }
    if !notes.is_empty() {
        println!("constraints: {}", notes.join(", "));
    }
    println!(
        "ansatz size {}, constraint rows {}, rank {}",
        r.ansatz_size, r.rows, r.rank
    );
    println!("nullspace dimension {}", r.nullspace_dim);
    for b in &r.basis {
        println!("  {}: {}", b.id, b.rendered);
    }
    match &r.catalog_match {
        Some(m) if m.spans_match => println!(
            "catalog: spans the same space as {{{}}} (invertible change of basis)",
            m.names.join(", ")
        ),
        Some(m) => println!(
            "catalog: mismatch against {{{}}}: {}",
            m.names.join(", "),
            m.mismatch.clone().unwrap_or_default()
        ),
        None => {}
    }
    println!("timing: {} ms", r.timing_ms);
}

fn write_json<T: serde::Serialize>(path: &PathBuf, value: &T) -> Result<(), EngineError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| EngineError::Invalid(format!("serialize: {e}")))?;
    std::fs::write(path, text)
        .map_err(|e| EngineError::Invalid(format!("cannot write {}: {e}", path.display())))
}
