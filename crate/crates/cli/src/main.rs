//! `posetlab`: generate instances, compute invariants, test predicates and
//! run the audit suite.
//!
//! Results go to stdout (or `-o FILE`), diagnostics to stderr. Exit status
//! is 0 when everything checked holds, 1 when a predicate or audit check
//! fails, and 2 on usage or input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use posetlab::audit::{audit_suite, AuditOptions};
use posetlab::complex::{order_complex, SimplicialComplex};
use posetlab::generators::{builtin_suite, face_poset_of_complex, FamilyParams, Generated, SuiteInstance};
use posetlab::homology::{
    classify, is_buchsbaum_star, is_cohen_macaulay, poset_cm_failure, reduced_homology, PrimeField,
};
use posetlab::hvectors::{cubical_h, short_cubical_h, simplicial_h, toric_h, HVectorReport};
use posetlab::io::{complex_to_json, poset_to_json, read_instance, Instance};
use posetlab::FinitePoset;

#[derive(Parser)]
#[command(name = "posetlab", version, about = "Invariants of finite posets and audits of their inequalities")]
struct Cli {
    /// Prime characteristic for homology (default: $POSETLAB_FIELD, else 101).
    #[arg(long, global = true)]
    field: Option<u32>,

    /// Output format; TSV is available for h-vectors only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated poset or complex as JSON.
    Generate {
        /// Family name, e.g. boolean, cube, cube-boundary, grid, cycle, random-pure.
        family: String,
        /// Size parameters of the family.
        params: Vec<usize>,
        /// Seed for randomized families.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Name stored in the file (defaults to the family name with its parameters).
        #[arg(long)]
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute an invariant of a poset or complex file.
    Compute {
        #[arg(value_enum)]
        invariant: Invariant,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Test a predicate; exits 1 when it fails.
    Check {
        #[arg(value_enum)]
        predicate: Predicate,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run every audit check on a suite (`all`) or on one input file.
    Audit {
        suite: String,
        /// Restrict the built-in suite to a family or a single instance name.
        #[arg(long, default_value = "all")]
        family: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    Mobius,
    Psi,
    Chi,
    SimplicialH,
    ToricH,
    CubicalH,
    ShortCubicalH,
    Homology,
    Classify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Predicate {
    LowerEulerian,
    Cm,
    BuchsbaumStar,
    Simplicial,
    Cubical,
    MeetSemilattice,
}

/// Input or usage problem; reported with exit status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure(msg)) => {
            eprintln!("posetlab: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let field = match cli.field {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::from_env()?,
    };
    if cli.format == Format::Tsv && !matches!(cli.command, Command::Compute { invariant, .. } if is_h_vector(invariant))
    {
        return Err(Failure("--format tsv is only available for h-vector invariants".into()));
    }
    match cli.command {
        Command::Generate { family, params, seed, name, output } => generate(&family, &params, seed, name, output),
        Command::Compute { invariant, input, output } => compute(invariant, &input, output, field, cli.format),
        Command::Check { predicate, input, output } => check(predicate, &input, output, field),
        Command::Audit { suite, family, output } => audit(&suite, &family, output, field),
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON value serializes");
    s.push('\n');
    s
}

fn generate(family: &str, params: &[usize], seed: u64, name: Option<String>, output: Option<PathBuf>) -> Outcome {
    let recipe = FamilyParams::new(family, params, seed);
    let name = name.unwrap_or_else(|| recipe.name());
    let text = match recipe.build()? {
        Generated::Poset(p) => poset_to_json(&name, &p),
        Generated::Complex(c) => complex_to_json(&name, &c),
    };
    write_output(output.as_deref(), &text)?;
    Ok(true)
}

fn load(path: &Path) -> Result<Instance, Failure> {
    read_instance(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn as_poset(inst: &Instance) -> FinitePoset {
    match inst {
        Instance::Poset { poset, .. } => poset.clone(),
        Instance::Complex { complex, .. } => face_poset_of_complex(complex),
    }
}

/// The complex whose homology describes the input: the complex itself, or
/// the order complex of `P̄` (of `P` when there is no minimum).
fn as_complex(inst: &Instance) -> Result<SimplicialComplex, Failure> {
    match inst {
        Instance::Complex { complex, .. } => Ok(complex.clone()),
        Instance::Poset { poset, .. } if poset.minimum().is_some() => {
            if poset.len() == 1 {
                Ok(SimplicialComplex::void())
            } else {
                Ok(order_complex(&poset.remove_min()?))
            }
        }
        Instance::Poset { poset, .. } => Ok(order_complex(poset)),
    }
}

fn is_h_vector(inv: Invariant) -> bool {
    matches!(inv, Invariant::SimplicialH | Invariant::ToricH | Invariant::CubicalH | Invariant::ShortCubicalH)
}

fn h_vector_tsv(h: &HVectorReport) -> String {
    let kind = serde_json::to_value(h.kind).expect("kind serializes");
    let header: Vec<String> = (0..h.entries.len()).map(|i| format!("h_{i}")).collect();
    let row: Vec<String> = h.entries.iter().map(ToString::to_string).collect();
    format!(
        "instance\tkind\trank\t{}\n{}\t{}\t{}\t{}\n",
        header.join("\t"),
        h.source.as_deref().unwrap_or(""),
        kind.as_str().unwrap_or_default(),
        h.rank,
        row.join("\t")
    )
}

fn compute(inv: Invariant, input: &Path, output: Option<PathBuf>, field: PrimeField, format: Format) -> Outcome {
    let inst = load(input)?;
    let name = inst.name().to_owned();
    if is_h_vector(inv) {
        let p = as_poset(&inst);
        let h = match inv {
            Invariant::SimplicialH => simplicial_h(&p),
            Invariant::ToricH => toric_h(&p),
            Invariant::CubicalH => cubical_h(&p),
            _ => short_cubical_h(&p),
        }?
        .with_source(name);
        let text = match format {
            Format::Json => pretty(&serde_json::to_value(&h)?),
            Format::Tsv => h_vector_tsv(&h),
        };
        write_output(output.as_deref(), &text)?;
        return Ok(true);
    }
    let value = match inv {
        Invariant::Mobius => {
            let p = as_poset(&inst);
            let mu = p.mobius();
            let mut order: Vec<usize> = p.elements().collect();
            order.sort_by(|&a, &b| p.label(a).cmp(p.label(b)));
            let mut rows = Vec::new();
            for &x in &order {
                for &y in &order {
                    if let Some(m) = mu.get(x, y) {
                        rows.push(json!([p.label(x), p.label(y), m]));
                    }
                }
            }
            json!({ "instance": name, "mobius": rows })
        }
        Invariant::Psi => json!({ "instance": name, "psi": as_poset(&inst).psi()? }),
        Invariant::Chi => {
            let chi = match &inst {
                Instance::Complex { complex, .. } => complex.chi_tilde(),
                Instance::Poset { poset, .. } => poset.chi_tilde()?,
            };
            json!({ "instance": name, "chi": chi })
        }
        Invariant::Homology => {
            let h = reduced_homology(&as_complex(&inst)?, field);
            json!({ "instance": name, "field": h.field, "betti": h.betti })
        }
        Invariant::Classify => {
            let c = classify(&as_complex(&inst)?, field);
            json!({ "instance": name, "field": field.characteristic(), "classification": c })
        }
        _ => unreachable!("h-vectors handled above"),
    };
    write_output(output.as_deref(), &pretty(&value))?;
    Ok(true)
}

fn check(pred: Predicate, input: &Path, output: Option<PathBuf>, field: PrimeField) -> Outcome {
    let inst = load(input)?;
    let (holds, witness) = match pred {
        Predicate::LowerEulerian => {
            let w = as_poset(&inst).lower_eulerian_failure();
            (w.is_none(), json!(w))
        }
        Predicate::Cm => match &inst {
            Instance::Complex { complex, .. } => {
                let v = is_cohen_macaulay(complex, field);
                (v.holds, json!(v.witness))
            }
            Instance::Poset { poset, .. } => {
                let w = poset_cm_failure(poset, field);
                (w.is_none(), json!(w))
            }
        },
        Predicate::BuchsbaumStar => {
            let v = is_buchsbaum_star(&as_complex(&inst)?, field);
            (v.holds, json!(v.witness))
        }
        Predicate::Simplicial => (as_poset(&inst).is_simplicial()?, Value::Null),
        Predicate::Cubical => (as_poset(&inst).is_cubical()?, Value::Null),
        Predicate::MeetSemilattice => {
            let p = as_poset(&inst);
            let w = p.meet_failure().map(|(x, y)| json!([p.label(x), p.label(y)]));
            (w.is_none(), json!(w))
        }
    };
    let name = pred.to_possible_value().expect("no skipped variants").get_name().to_owned();
    let mut report = json!({ "instance": inst.name(), "predicate": name, "holds": holds });
    if !holds && !witness.is_null() {
        report["witness"] = witness;
    }
    if matches!(pred, Predicate::Cm | Predicate::BuchsbaumStar) {
        report["field"] = json!(field.characteristic());
    }
    write_output(output.as_deref(), &pretty(&report))?;
    eprintln!("{}: {name} {}", inst.name(), if holds { "holds" } else { "fails" });
    Ok(holds)
}

fn audit(suite: &str, family: &str, output: Option<PathBuf>, field: PrimeField) -> Outcome {
    let instances: Vec<SuiteInstance> = if suite == "all" {
        builtin_suite().into_iter().filter(|i| family == "all" || i.family == family || i.name == family).collect()
    } else if Path::new(suite).is_file() {
        let inst = load(Path::new(suite))?;
        let name = if inst.name().is_empty() { suite.to_owned() } else { inst.name().to_owned() };
        vec![SuiteInstance { name, family: "file".into(), poset: as_poset(&inst) }]
    } else {
        return Err(Failure(format!("unknown suite `{suite}` (use `all` or a poset/complex file)")));
    };
    if instances.is_empty() {
        return Err(Failure(format!("no suite instance matches `{family}`")));
    }
    let label = if family == "all" { suite.to_owned() } else { format!("{suite}:{family}") };
    let report = audit_suite(&label, &instances, AuditOptions::new(field));
    write_output(output.as_deref(), &report.to_json())?;
    let s = &report.summary;
    eprintln!(
        "audit {label}: {} instances, {} checks, {} pass, {} fail, {} inapplicable",
        s.instances, s.checks, s.pass, s.fail, s.inapplicable
    );
    for inst in &report.instances {
        for c in inst.failures() {
            eprintln!("  FAIL {} {}: lhs={} rhs={}", inst.instance, c.id, c.lhs, c.rhs);
        }
    }
    Ok(report.passed())
}
