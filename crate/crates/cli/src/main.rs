use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use thetalg::acceptance::run_all;
use thetalg::algebra::{chain_element, relations_check};
use thetalg::exactnum::{minimal_polynomial, poly};
use thetalg::indexing::{
    build_stabilization, co, enumerate_theta_matrices, monomial_chain, ro, StabilizationVariant, ThetaMatrix,
};
use thetalg::limits::{admissible_residue, coherence_report, limit_generator, transfer_2n, transfer_n, LimitKind};
use thetalg::modules::{
    build_module, double_centralizer_check, faithfulness_check, grassmannian_module, nflag_module, singular_vectors,
    spectral_transfer_report, t_element_matrix, t_min_poly_check, tensor_module, twist_by_theta, ModuleJson,
    ModuleSpec, RepModule,
};
use thetalg::partitions::{
    ambient_dim, centralizer_dimension_oracle, dominance_leq, enumerate_eps_partitions, eps_collapse, is_eps_partition,
    nilcone_description, orbit_dimension, EpsSign, Partition,
};
use thetalg::{q, Rational};

/// Largest |μ| for which orbit-dim also runs the centralizer oracle.
const ORACLE_LIMIT: usize = 16;

#[derive(Parser)]
#[command(
    name = "thetalg",
    version,
    about = "Exact computations for the θ-fixed subalgebra of sl_n and its geometric modules"
)]
struct Cli {
    /// Print the full JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add wall-clock time to the report (makes reports non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Step {
    #[value(name = "2n")]
    TwoN,
    #[value(name = "n")]
    N,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    E,
    F,
    H,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of the nilpotent orbit of Jordan type MU.
    OrbitDim {
        mu: Partition,
        #[arg(allow_hyphen_values = true)]
        eps: EpsSign,
    },
    /// The ε-collapse of MU.
    Collapse {
        mu: Partition,
        #[arg(allow_hyphen_values = true)]
        eps: EpsSign,
    },
    /// Irreducible components of the n-nilcone.
    Nilcone {
        n: usize,
        v: usize,
        #[arg(allow_hyphen_values = true)]
        eps: EpsSign,
    },
    /// All ε-partitions of V.
    EnumeratePartitions {
        v: usize,
        #[arg(allow_hyphen_values = true)]
        eps: EpsSign,
    },
    /// All Θ-matrices of size N at level V, failing beyond CAP.
    ThetaEnumerate { n: usize, v: usize, cap: usize },
    /// The monomial chain of a Θ-matrix given as rows `a,b;c,d`.
    MonomialChain { a: String },
    /// The nilpotent and form of a stabilization variant.
    StabMatrices { variant: StabilizationVariant, n: usize },
    /// Check every defining relator on a module.
    VerifyRelations {
        n: usize,
        /// `grassmannian:v:eps`, `nflag:n:v:eps`, `tensor:n:d` or `rectified:n:v`.
        #[arg(allow_hyphen_values = true)]
        module: Option<String>,
        /// Read the module from a JSON file instead.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// The rank-one Grassmannian module.
    Grassmannian {
        v: usize,
        #[arg(allow_hyphen_values = true)]
        eps: EpsSign,
    },
    /// The isotropic n-flag module.
    Nflag {
        n: usize,
        v: usize,
        #[arg(allow_hyphen_values = true)]
        eps: EpsSign,
    },
    /// The tensor power module.
    Tensor { n: usize, d: usize },
    /// Compare the image of the algebra with the commutant of the signed permutations.
    DoubleCentralizer { n: usize, d: usize },
    /// Minimal polynomial and spectral transfers of the t-element.
    TMinpoly {
        v: usize,
        #[arg(allow_hyphen_values = true)]
        eps: EpsSign,
    },
    /// Certify independence of monomials given as `a,b,c;a,b,c;...`.
    Faithfulness { family: String },
    /// Singular vectors and their Cartan weights.
    SingularVectors {
        #[arg(allow_hyphen_values = true)]
        module: Option<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Twist the module by the involution first.
        #[arg(long)]
        theta_twist: bool,
    },
    /// Transfer a Θ-matrix one level down.
    Transfer { a: String, step: Step },
    /// Coherence of a limit generator over consecutive levels.
    LimitCoherence {
        kind: Kind,
        i: usize,
        n: usize,
        #[arg(allow_hyphen_values = true)]
        eps: EpsSign,
        /// Number of consecutive levels compared.
        levels: usize,
        /// Only this residue; all admissible residues otherwise.
        #[arg(long)]
        residue: Option<usize>,
    },
    /// Run the full acceptance suite.
    Acceptance,
}

#[derive(Serialize)]
struct Assertion {
    name: String,
    passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

#[derive(Serialize)]
struct Report {
    command: String,
    inputs: Value,
    outputs: Value,
    assertions: Vec<Assertion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

struct Outcome {
    inputs: Value,
    outputs: Value,
    assertions: Vec<Assertion>,
    text: String,
}

impl Outcome {
    fn new(inputs: Value, outputs: Value, text: impl Into<String>) -> Self {
        Outcome { inputs, outputs, assertions: Vec::new(), text: text.into() }
    }

    fn check(mut self, name: impl Into<String>, passed: bool, detail: Option<String>) -> Self {
        self.assertions.push(Assertion { name: name.into(), passed, detail });
        self
    }
}

type CmdResult = Result<Outcome, String>;

fn err(e: thetalg::Error) -> String {
    e.to_string()
}

fn parse_matrix(s: &str) -> Result<ThetaMatrix, String> {
    ThetaMatrix::parse(s, None).map_err(err)
}

fn load_module(module: Option<&str>, file: Option<&PathBuf>) -> Result<RepModule, String> {
    match (module, file) {
        (Some(s), None) => build_module(&s.parse::<ModuleSpec>().map_err(err)?).map_err(err),
        (None, Some(p)) => {
            let raw = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            let mut v: Value = serde_json::from_str(&raw).map_err(|e| format!("{}: {e}", p.display()))?;
            // A saved report of a module command carries the module under `outputs`.
            if let Some(inner) = v.get_mut("outputs") {
                v = inner.take();
            }
            let j: ModuleJson = serde_json::from_value(v).map_err(|e| format!("{}: {e}", p.display()))?;
            RepModule::from_json(&j).map_err(err)
        }
        _ => Err("give exactly one of a module spec or --file".into()),
    }
}

fn dense(m: &thetalg::QMatrix) -> Vec<Vec<String>> {
    m.to_dense().iter().map(|r| r.iter().map(Rational::to_string).collect()).collect()
}

fn module_outcome(kind: &str, inputs: Value, m: RepModule) -> CmdResult {
    let rep = relations_check(m.n(), &m).map_err(err)?;
    let failed: Vec<String> = rep.failures().map(|f| f.label.clone()).collect();
    let text = format!("{} ({kind}): dimension {}, labels {}", m.name(), m.dim(), {
        let l: Vec<String> = m.labels().iter().map(|l| l.to_string()).collect();
        l.join(" ")
    });
    let outputs = serde_json::to_value(m.to_json()).map_err(|e| e.to_string())?;
    Ok(Outcome::new(inputs, outputs, text).check(
        "defining relations vanish",
        failed.is_empty(),
        (!failed.is_empty()).then(|| failed.join(", ")),
    ))
}

fn run(cmd: &Command) -> CmdResult {
    match cmd {
        Command::OrbitDim { mu, eps } => {
            let d = orbit_dimension(mu, *eps).map_err(err)?;
            let inputs = json!({"mu": mu, "eps": eps.to_string()});
            let mut out = Outcome::new(inputs, json!({"dimension": d}), d.to_string());
            if mu.size() <= ORACLE_LIMIT {
                let oracle = ambient_dim(mu.size(), *eps).map_err(err)?
                    - centralizer_dimension_oracle(mu, *eps, None).map_err(err)?;
                out = out.check("matches the centralizer oracle", oracle == d, Some(format!("oracle {oracle}")));
            }
            Ok(out)
        }
        Command::Collapse { mu, eps } => {
            let c = eps_collapse(mu, *eps).map_err(err)?;
            let below = dominance_leq(&c, mu).map_err(err)?;
            Ok(Outcome::new(json!({"mu": mu, "eps": eps.to_string()}), json!({"collapse": c}), c.to_string())
                .check("result is an ε-partition", is_eps_partition(&c, *eps), None)
                .check("result is dominated by the input", below, None))
        }
        Command::Nilcone { n, v, eps } => {
            let d = nilcone_description(*n, *v, *eps).map_err(err)?;
            let outputs = json!({"components": d.components, "normal": d.normal, "very_even": d.very_even});
            Ok(Outcome::new(json!({"n": n, "v": v, "eps": eps.to_string()}), outputs.clone(), outputs.to_string()))
        }
        Command::EnumeratePartitions { v, eps } => {
            let ps = enumerate_eps_partitions(*v, *eps, None).map_err(err)?;
            let text = ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n");
            Ok(Outcome::new(
                json!({"v": v, "eps": eps.to_string()}),
                json!({"count": ps.len(), "partitions": ps}),
                text,
            ))
        }
        Command::ThetaEnumerate { n, v, cap } => {
            let ms = enumerate_theta_matrices(*n, *v, *cap).map_err(err)?;
            let labels: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
            Ok(Outcome::new(
                json!({"n": n, "v": v, "cap": cap}),
                json!({"count": ms.len(), "matrices": labels}),
                labels.join("\n"),
            ))
        }
        Command::MonomialChain { a } => {
            let m = parse_matrix(a)?;
            let steps = monomial_chain(&m).map_err(err)?;
            let x = chain_element(&m).map_err(err)?;
            let text = steps
                .iter()
                .map(|s| format!("{:?} band {} x{}: {}", s.pair, s.band, s.multiplicity, s.matrix))
                .chain([format!("element: {x}")])
                .collect::<Vec<_>>()
                .join("\n");
            let outputs = json!({"ro": ro(&m), "co": co(&m), "steps": steps, "element": x.to_string()});
            Ok(Outcome::new(json!({"a": a}), outputs, text))
        }
        Command::StabMatrices { variant, n } => {
            let s = build_stabilization(*variant, *n).map_err(err)?;
            let outputs = json!({
                "e_eps": dense(&s.e_eps),
                "form": dense(&s.form),
                "fixed_flag_dims": s.fixed_flag_dims,
            });
            let text =
                format!("e_eps {:?}\nform {:?}\nfixed flag {:?}", dense(&s.e_eps), dense(&s.form), s.fixed_flag_dims);
            Ok(Outcome::new(json!({"variant": format!("{variant:?}"), "n": n}), outputs, text).check(
                "isometry with the expected Jordan type",
                s.verify().map_err(err)?,
                None,
            ))
        }
        Command::VerifyRelations { n, module, file } => {
            let m = load_module(module.as_deref(), file.as_ref())?;
            if m.n() != *n {
                return Err(format!("module {} has n = {}, not {n}", m.name(), m.n()));
            }
            let rep = relations_check(*n, &m).map_err(err)?;
            let total = rep.entries.len();
            let mut out = Outcome::new(
                json!({"n": n, "module": m.name()}),
                json!({"dimension": m.dim(), "relators": total}),
                format!("{}: {} of {total} relators vanish", m.name(), total - rep.failures().count()),
            );
            for e in &rep.entries {
                out = out.check(e.label.clone(), e.passed(), None);
            }
            Ok(out)
        }
        Command::Grassmannian { v, eps } => module_outcome(
            "grassmannian",
            json!({"v": v, "eps": eps.to_string()}),
            grassmannian_module(*v, *eps).map_err(err)?,
        ),
        Command::Nflag { n, v, eps } => module_outcome(
            "flag",
            json!({"n": n, "v": v, "eps": eps.to_string()}),
            nflag_module(*n, *v, *eps).map_err(err)?,
        ),
        Command::Tensor { n, d } => {
            module_outcome("tensor", json!({"n": n, "d": d}), tensor_module(*n, *d).map_err(err)?)
        }
        Command::DoubleCentralizer { n, d } => {
            let r = double_centralizer_check(*n, *d).map_err(err)?;
            let text = format!("image {} commutant {}", r.image_dim, r.commutant_dim);
            let outputs = serde_json::to_value(&r).map_err(|e| e.to_string())?;
            Ok(Outcome::new(json!({"n": n, "d": d}), outputs, text).check("dimensions agree", r.equal, None))
        }
        Command::TMinpoly { v, eps } => {
            let t = t_element_matrix(*v, *eps).map_err(err)?;
            let p = minimal_polynomial(&t).map_err(err)?;
            let d = (*v / 2) as i64;
            let roots: Vec<Rational> = (0..=d).map(|k| q(d - 2 * k)).collect();
            let target = poly::from_roots(&roots);
            let divides = t_min_poly_check(*v, *eps).map_err(err)?;
            let spec = spectral_transfer_report(*v, *eps).map_err(err)?;
            let text = format!(
                "minimal polynomial {} divides {}: {}",
                poly::format_poly(&p),
                poly::format_poly(&target),
                if divides { "pass" } else { "fail" }
            );
            let outputs = json!({
                "minimal_polynomial": poly::format_poly(&p),
                "target": poly::format_poly(&target),
                "spectral_transfer": spec,
            });
            Ok(Outcome::new(json!({"v": v, "eps": eps.to_string()}), outputs, text)
                .check("top eigenvalue and minimal polynomial", divides, None)
                .check("spectral transfer", spec.passed, None))
        }
        Command::Faithfulness { family } => {
            let fam = family
                .split(';')
                .map(|t| {
                    let v: Vec<usize> = t
                        .split(',')
                        .map(|x| x.trim().parse::<usize>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| e.to_string())?;
                    match v.as_slice() {
                        [a, b, c] => Ok((*a, *b, *c)),
                        _ => Err(format!("monomial {t:?} needs three entries")),
                    }
                })
                .collect::<Result<Vec<_>, String>>()?;
            let cert = faithfulness_check(&fam).map_err(err)?;
            let outputs = serde_json::to_value(&cert).map_err(|e| e.to_string())?;
            let text = format!("{} stages, independent: {}", cert.stages.len(), cert.independent);
            Ok(Outcome::new(json!({"family": fam}), outputs, text).check("independent", cert.independent, None))
        }
        Command::SingularVectors { module, file, theta_twist } => {
            let mut m = load_module(module.as_deref(), file.as_ref())?;
            if *theta_twist {
                m = twist_by_theta(&m).map_err(err)?;
            }
            let r = singular_vectors(&m).map_err(err)?;
            let text = r
                .vectors
                .iter()
                .map(|s| format!("omega {:?} omega' {:?} on {}", s.omega, s.omega_prime, s.support.join(" + ")))
                .collect::<Vec<_>>()
                .join("\n");
            let outputs = serde_json::to_value(&r).map_err(|e| e.to_string())?;
            Ok(Outcome::new(json!({"module": m.name(), "theta_twist": theta_twist}), outputs, text)
                .check("a singular vector exists", !r.vectors.is_empty(), None)
                .check(
                    "joint kernel fully diagonalized",
                    r.unresolved == 0,
                    Some(format!("{} unresolved", r.unresolved)),
                ))
        }
        Command::Transfer { a, step } => {
            let m = parse_matrix(a)?;
            let t = match step {
                Step::TwoN => transfer_2n(&m),
                Step::N => {
                    let variant = if m.n() % 2 == 1 {
                        StabilizationVariant::OddOrthogonal
                    } else {
                        StabilizationVariant::SymplecticEven
                    };
                    transfer_n(&m, variant).map_err(err)?
                }
            };
            Ok(Outcome::new(
                json!({"a": a, "step": match step { Step::TwoN => "2n", Step::N => "n" }}),
                json!({"result": t.to_string()}),
                t.to_string(),
            ))
        }
        Command::LimitCoherence { kind, i, n, eps, levels, residue } => {
            if *levels < 2 {
                return Err("at least two levels are needed".into());
            }
            let residues: Vec<usize> = match residue {
                Some(r) => vec![*r],
                None => (1..=2 * n).filter(|&r| admissible_residue(*n, r, *eps)).collect(),
            };
            let k = match kind {
                Kind::E => LimitKind::E(*i),
                Kind::F => LimitKind::F(*i),
                Kind::H => LimitKind::H(*i),
            };
            let mut out = Outcome::new(
                json!({"kind": k.to_string(), "n": n, "eps": eps.to_string(), "levels": levels, "residues": residues}),
                Value::Null,
                String::new(),
            );
            let mut reports = Vec::new();
            let mut lines = Vec::new();
            for r in residues {
                let x = limit_generator(k.clone(), *n, r, *eps).map_err(err)?;
                let lv = x.levels(*levels);
                for &v in &lv[..lv.len() - 1] {
                    let rep = coherence_report(&x, v).map_err(err)?;
                    let passed = rep.passed();
                    lines.push(format!(
                        "{k} residue {r}: v={v} -> v={} {}",
                        v + 2 * n,
                        if passed { "ok" } else { "MISMATCH" }
                    ));
                    out = out.check(
                        format!("{k} residue {r} level {v}"),
                        passed,
                        (!passed).then(|| format!("{:?}", rep.mismatches)),
                    );
                    reports.push(rep);
                }
            }
            out.outputs = serde_json::to_value(&reports).map_err(|e| e.to_string())?;
            out.text = lines.join("\n");
            Ok(out)
        }
        Command::Acceptance => {
            let results = run_all();
            let lines: Vec<String> = results
                .iter()
                .map(|r| format!("{} [{:>2}] {} ({})", if r.passed { "PASS" } else { "FAIL" }, r.id, r.title, r.detail))
                .collect();
            let outputs = serde_json::to_value(&results).map_err(|e| e.to_string())?;
            let mut out = Outcome::new(json!({}), outputs, lines.join("\n"));
            for r in results {
                out = out.check(format!("{}: {}", r.id, r.title), r.passed, Some(r.detail));
            }
            Ok(out)
        }
    }
}

fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::OrbitDim { .. } => "orbit-dim",
        Command::Collapse { .. } => "collapse",
        Command::Nilcone { .. } => "nilcone",
        Command::EnumeratePartitions { .. } => "enumerate-partitions",
        Command::ThetaEnumerate { .. } => "theta-enumerate",
        Command::MonomialChain { .. } => "monomial-chain",
        Command::StabMatrices { .. } => "stab-matrices",
        Command::VerifyRelations { .. } => "verify-relations",
        Command::Grassmannian { .. } => "grassmannian",
        Command::Nflag { .. } => "nflag",
        Command::Tensor { .. } => "tensor",
        Command::DoubleCentralizer { .. } => "double-centralizer",
        Command::TMinpoly { .. } => "t-minpoly",
        Command::Faithfulness { .. } => "faithfulness",
        Command::SingularVectors { .. } => "singular-vectors",
        Command::Transfer { .. } => "transfer",
        Command::LimitCoherence { .. } => "limit-coherence",
        Command::Acceptance => "acceptance",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let failed = outcome.assertions.iter().any(|a| !a.passed);
    let report = Report {
        command: command_name(&cli.command).to_string(),
        inputs: outcome.inputs,
        outputs: outcome.outputs,
        assertions: outcome.assertions,
        elapsed_ms: cli.timing.then(|| start.elapsed().as_millis()),
    };
    let rendered = serde_json::to_string_pretty(&report).expect("reports serialize");
    if let Some(p) = &cli.out {
        if let Err(e) = std::fs::write(p, format!("{rendered}\n")) {
            eprintln!("error: {}: {e}", p.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{rendered}");
    } else {
        if !outcome.text.is_empty() {
            println!("{}", outcome.text);
        }
        for a in report.assertions.iter().filter(|a| !a.passed) {
            println!("FAIL {}{}", a.name, a.detail.as_ref().map(|d| format!(": {d}")).unwrap_or_default());
        }
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
