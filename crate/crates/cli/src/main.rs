//! `bispec`: batch front end for the bispectral workbench.
//!
//! Results go to stdout as JSON. Exit status is 0 when every check passes, 1
//! when a check ran and came out false, 2 on malformed input or I/O failure
//! (with a JSON error object on stderr).

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bispectral_core::calogero::{build_l, calogero_fixture, calogero_wave};
use bispectral_core::closure::certify_generators;
use bispectral_core::nilpotent::{
    basis_e, build_b, gamma_membership_theoremgen, gamma_relations, schrodinger, theoremgen_conditions, wave,
};
use bispectral_core::operator::{ad_power, check_left_eigen, check_right_eigen};
use bispectral_core::pierce::verify_pierce;
use bispectral_core::properties::{run_suite, suite_names};
use bispectral_core::rational::rat;
use bispectral_core::{BiFraction, MatF, MatPoly, NilpotentData, OperatorX, QMatrix, Var};
use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bispec", version, about = "Exact checks for matrix bispectral triples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check Lψ = -z²ψ for the nilpotent family.
    VerifyNilpotent {
        #[arg(long)]
        n: usize,
        /// Nilpotency degree; defaults to N, or to the index of --s.
        #[arg(long)]
        d: Option<usize>,
        /// JSON matrix file for S; defaults to the standard shift.
        #[arg(long)]
        s: Option<PathBuf>,
    },
    /// Membership of θ in Γ with its residuals.
    Membership {
        #[arg(long)]
        theta: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = Form::Both)]
        form: Form,
    },
    /// Build the right operator B with ψB = θψ.
    BuildB {
        #[arg(long)]
        theta: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Basis of the members of Γ of degree below 2D.
    BasisE {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// Check the Pierce decomposition of the identity.
    Pierce {
        #[arg(long)]
        n: usize,
    },
    /// Certify the tail covered by the closure of the explicit generators.
    Generators {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Eigen-equations of the spin Calogero fixture.
    VerifyCalogero,
    /// Build ℒ with ℒψ = ψF for a spectral member F of degree at most 2.
    CalogeroBuildL {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        verify: bool,
    },
    /// Check (ad L)^{deg θ + 1}(θ) = 0.
    AdCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        theta: PathBuf,
    },
    /// Run a seeded invariant suite, or `all`.
    Properties {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Relations,
    Theoremgen,
    Both,
}

struct Failure {
    kind: &'static str,
    message: String,
    /// The input was well formed but failed a mathematical precondition.
    checked: bool,
}

impl Failure {
    fn new(kind: &'static str, message: impl fmt::Display) -> Self {
        Failure { kind, message: message.to_string(), checked: false }
    }
}

impl From<bispectral_core::Error> for Failure {
    fn from(e: bispectral_core::Error) -> Self {
        let checked = e == bispectral_core::Error::NotInGamma;
        Failure { kind: "math", message: e.to_string(), checked }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::new("json", e)
    }
}

/// A JSON result and whether every check in it passed.
struct Outcome {
    value: Value,
    pass: bool,
}

fn pass(value: Value) -> Outcome {
    Outcome { value, pass: true }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::new("json", format!("{}: {e}", path.display())))
}

fn read_poly(path: &Path, n: usize, var: Var) -> Result<MatPoly, Failure> {
    let p: MatPoly = read_json(path)?;
    if p.n() != n {
        return Err(bispectral_core::Error::DimensionMismatch { expected: n, found: p.n() }.into());
    }
    if p.var() != var {
        return Err(Failure::new("input", format!("{}: expected a polynomial in {var:?}", path.display())));
    }
    Ok(p)
}

fn constant_matrix(m: &MatF) -> Result<QMatrix, Failure> {
    if m.depends_on_x() || m.depends_on_z() {
        return Err(Failure::new("input", "S must be a constant matrix"));
    }
    Ok(m.coeff_x(0)?)
}

/// Smallest `D` with `S^D = 0`.
fn nilpotency_index(s: &QMatrix) -> Result<usize, Failure> {
    let mut p = s.clone();
    for d in 1..=s.n() {
        if p.is_zero() {
            return Ok(d);
        }
        p = &p * s;
    }
    Err(Failure::new("input", "S is not nilpotent"))
}

fn nilpotent_data(n: usize, d: Option<usize>, s: Option<&Path>) -> Result<NilpotentData, Failure> {
    match s {
        None => Ok(NilpotentData::standard(n, d.unwrap_or(n))?),
        Some(path) => {
            let s = constant_matrix(&read_json::<MatF>(path)?)?;
            if s.n() != n {
                return Err(bispectral_core::Error::DimensionMismatch { expected: n, found: s.n() }.into());
            }
            let d = match d {
                Some(d) => d,
                None => nilpotency_index(&s)?,
            };
            Ok(NilpotentData::new(s, d)?)
        }
    }
}

fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::VerifyNilpotent { n, d, s } => {
            let nd = nilpotent_data(n, d, s.as_deref())?;
            let f = MatF::scalar(n, BiFraction::monomial(rat(-1), 0, 2));
            let ok = check_left_eigen(&schrodinger(&nd), &wave(&nd), &f)?;
            Ok(Outcome { value: json!({ "n": n, "D": nd.degree(), "eigenvalue": "-z^2", "pass": ok }), pass: ok })
        }
        Command::Membership { theta, n, d, form } => {
            let nd = NilpotentData::standard(n, d)?;
            let th = read_poly(&theta, n, Var::X)?;
            let mut value = json!({});
            let mut verdicts = Vec::new();
            if matches!(form, Form::Relations | Form::Both) {
                let rel = gamma_relations(&th, &nd)?;
                let as_json = |ms: &[QMatrix]| ms.iter().map(MatF::from).collect::<Vec<_>>();
                verdicts.push(rel.holds());
                value["relations"] =
                    json!({ "holds": rel.holds(), "first": as_json(&rel.first), "second": as_json(&rel.second) });
            }
            if matches!(form, Form::Theoremgen | Form::Both) {
                let conds: Vec<Value> = theoremgen_conditions(&th, &nd)?
                    .into_iter()
                    .map(|c| json!({ "name": c.name, "residual": MatF::from(c.residual) }))
                    .collect();
                let holds = gamma_membership_theoremgen(&th, &nd)?;
                verdicts.push(holds);
                value["theoremgen"] = json!({ "holds": holds, "conditions": conds });
            }
            let member = verdicts[0];
            value["member"] = json!(member);
            if verdicts.len() == 2 {
                value["agree"] = json!(verdicts[0] == verdicts[1]);
            }
            Ok(Outcome { value, pass: member })
        }
        Command::BuildB { theta, n, d, verify } => {
            let nd = NilpotentData::standard(n, d)?;
            let th = read_poly(&theta, n, Var::X)?;
            let b = build_b(&th, &nd, false)?;
            if verify {
                let ok = check_right_eigen(&wave(&nd), &b, &th.to_matf())?;
                Ok(Outcome { value: json!({ "operator": b, "verified": ok }), pass: ok })
            } else {
                Ok(pass(serde_json::to_value(&b)?))
            }
        }
        Command::BasisE { n, d } => {
            let nd = NilpotentData::standard(n, d)?;
            let basis = basis_e(&nd);
            Ok(pass(json!({ "n": n, "D": d, "dimension": basis.len(), "basis": basis })))
        }
        Command::Pierce { n } => {
            let report = verify_pierce(n)?;
            Ok(Outcome { pass: report.passed(), value: serde_json::to_value(&report)? })
        }
        Command::Generators { n, cap } => {
            let report = certify_generators(n, cap)?;
            Ok(Outcome { pass: report.pass, value: serde_json::to_value(&report)? })
        }
        Command::VerifyCalogero => {
            let fx = calogero_fixture();
            let left = check_left_eigen(&fx.l, &fx.psi, &fx.f)?;
            let right = check_right_eigen(&fx.psi, &fx.b, &fx.theta)?;
            Ok(Outcome { value: json!({ "left_eigen": left, "right_eigen": right }), pass: left && right })
        }
        Command::CalogeroBuildL { f, verify } => {
            let f = read_poly(&f, 2, Var::Z)?;
            let l = build_l(&f)?;
            if verify {
                let ok = check_left_eigen(&l, &calogero_wave(), &f.to_matf())?;
                Ok(Outcome { value: json!({ "operator": l, "verified": ok }), pass: ok })
            } else {
                Ok(pass(serde_json::to_value(&l)?))
            }
        }
        Command::AdCheck { n, d, theta } => {
            let nd = NilpotentData::standard(n, d)?;
            let th = read_poly(&theta, n, Var::X)?;
            let l = schrodinger(&nd);
            let op = OperatorX::multiplication(th.to_matf())?;
            let top = th.degree() + 1;
            let orders = (1..=top).map(|r| Ok(ad_power(&l, &op, r)?.order())).collect::<Result<Vec<_>, Failure>>()?;
            let vanishes = orders.last().is_some_and(Option::is_none);
            Ok(Outcome { value: json!({ "degree": th.degree(), "power": top, "orders": orders, "vanishes": vanishes }), pass: vanishes })
        }
        Command::Properties { suite, trials, seed } => {
            if suite == "all" {
                let reports = suite_names().map(|s| run_suite(s, trials, seed)).collect::<Result<Vec<_>, _>>()?;
                let ok = reports.iter().all(|r| r.all_passed());
                Ok(Outcome { value: serde_json::to_value(&reports)?, pass: ok })
            } else {
                let report = run_suite(&suite, trials, seed).map_err(|e| {
                    let names: Vec<_> = suite_names().collect();
                    Failure::new("input", format!("{e}; available: all, {}", names.join(", ")))
                })?;
                Ok(Outcome { pass: report.all_passed(), value: serde_json::to_value(&report)? })
            }
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    json!({ "error": { "kind": kind, "message": message } }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            eprintln!("{}", error_json("usage", e.to_string().trim_end()));
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.value).expect("JSON values serialize");
            // a closed downstream pipe is not an error of ours
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            if out.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("{}", error_json(f.kind, &f.message));
            ExitCode::from(if f.checked { 1 } else { 2 })
        }
    }
}
