use std::fmt;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use cliffrep::clifford::{self, Form, Representation, RepresentationJson, SplitOutcome};
use cliffrep::lattice::{self, DivisorClass};
use cliffrep::linearizer::{self, SolutionDump, SolutionJson, SolveOptions};
use cliffrep::{CyclotomicScalar, Matrix};

use crate::{Command, ConstructKind, SeedArg, SurfaceQuery, VerifyMethod};

#[derive(Debug)]
pub enum CliError {
    Core(cliffrep::Error),
    Io(String),
    MissingSeed,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::Io(msg) => write!(f, "io: {msg}"),
            CliError::MissingSeed => f.write_str("cli: this command is randomized; pass --seed or set GA_SEED"),
        }
    }
}

impl<E: Into<cliffrep::Error>> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Core(e.into())
    }
}

pub struct Outcome {
    pub positive: bool,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(payload: impl Serialize) -> Self {
        Self::verdict(true, payload)
    }

    fn verdict(positive: bool, payload: impl Serialize) -> Self {
        Outcome {
            positive,
            payload: serde_json::to_value(payload).expect("payloads serialize"),
            diagnostics: Vec::new(),
        }
    }
}

type CmdResult = Result<Outcome, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Core(cliffrep::Error::Format(format!("{}: {e}", path.display()))))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("payloads serialize") + "\n";
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

fn read_rep(path: &Path) -> Result<Representation, CliError> {
    let json: RepresentationJson = read_json(path)?;
    Ok(Representation::from_json(&json)?)
}

fn read_form(path: &Path) -> Result<Form, CliError> {
    let json: cliffrep::poly::PolyJson = read_json(path)?;
    Ok(Form::from_json(&json)?)
}

/// Form files carry no conductor of their own, so a form over a subfield is
/// embedded into the representation's field.
fn read_rep_and_form(rep: &Path, form: &Path) -> Result<(Representation, Form), CliError> {
    let rep = read_rep(rep)?;
    let mut form = read_form(form)?;
    if form.conductor() != rep.conductor() && rep.conductor() % form.conductor() == 0 {
        form = form.embed(rep.conductor())?;
    }
    Ok((rep, form))
}

fn seed(arg: &SeedArg) -> Result<u64, CliError> {
    arg.seed.ok_or(CliError::MissingSeed)
}

fn parse_scalar(text: &str, conductor: u32) -> Result<CyclotomicScalar, CliError> {
    let s: CyclotomicScalar = text.parse()?;
    Ok(s.embed(conductor)?)
}

fn parse_class(text: &str) -> Result<DivisorClass, CliError> {
    Ok(text.parse::<DivisorClass>()?)
}

fn rep_json(rep: &Representation) -> Value {
    serde_json::to_value(rep.to_json()).expect("representations serialize")
}

pub fn run(command: &Command) -> CmdResult {
    match command {
        Command::Relations { form } => {
            let form = read_form(form)?;
            let p = clifford::generate_relations(&form)?;
            Ok(Outcome::ok(json!({
                "n": form.nvars(),
                "d": form.degree(),
                "count": p.relations.len(),
                "relations": p.to_json(),
            })))
        }
        Command::Verify { rep, form, method } => {
            let (rep, form) = read_rep_and_form(rep, form)?;
            let report = match method {
                VerifyMethod::Expansion => clifford::verify(&rep, &form)?,
                VerifyMethod::Relations => clifford::verify_via_relations(&rep, &clifford::generate_relations(&form)?)?,
            };
            Ok(Outcome::verdict(report.passed, report))
        }
        Command::Irreducible { rep } => {
            let report = clifford::irreducible(&read_rep(rep)?);
            Ok(Outcome::verdict(report.irreducible, report))
        }
        Command::Equivalent { rep, other } => {
            let (a, b) = (read_rep(rep)?, read_rep(other)?);
            let report = clifford::equivalent(&a, &b)?;
            Ok(Outcome::verdict(
                report.equivalent,
                json!({
                    "equivalent": report.equivalent,
                    "intertwiner_dimension": report.intertwiners.dimension(),
                    "method": report.method,
                    "witness": report.witness.as_ref().map(Matrix::to_string_rows),
                }),
            ))
        }
        Command::Detid { rep, form } => {
            let (rep, form) = read_rep_and_form(rep, form)?;
            let id = clifford::determinant_identity(&rep, &form)?;
            Ok(Outcome::ok(json!({ "r": id.r, "sign": id.sign, "determinant": id.determinant.to_json() })))
        }
        Command::Nondegenerate { form } => {
            let verdict = clifford::nondegenerate(&read_form(form)?)?;
            Ok(Outcome::verdict(verdict, json!({ "nondegenerate": verdict })))
        }
        Command::Construct { kind } => construct(kind),
        Command::Split { rep, seed: s } => {
            let rep = read_rep(rep)?;
            let report = clifford::split(&rep, seed(s)?);
            let parts: Vec<Value> = report
                .parts
                .iter()
                .map(|p| json!({ "irreducible": p.irreducible, "representation": rep_json(&p.representation) }))
                .collect();
            Ok(Outcome::verdict(
                report.outcome != SplitOutcome::ReducibleUnsplit,
                json!({ "outcome": report.outcome, "parts": parts }),
            ))
        }
        Command::Sum { rep, other } => {
            let sum = clifford::direct_sum(&read_rep(rep)?, &read_rep(other)?)?;
            Ok(Outcome::ok(rep_json(&sum)))
        }
        Command::Transform { rep, matrix, form, form_out } => {
            let rep = read_rep(rep)?;
            let rows: Vec<Vec<String>> = read_json(matrix)?;
            let m = Matrix::from_string_rows(&rows)?;
            let m = if m.conductor() != rep.conductor() && rep.conductor() % m.conductor() == 0 {
                m.embed(rep.conductor())?
            } else {
                m
            };
            let out = clifford::transform_rep(&rep, &m)?;
            if let (Some(form), Some(path)) = (form, form_out) {
                let mut f = read_form(form)?;
                if f.conductor() != m.conductor() && m.conductor() % f.conductor() == 0 {
                    f = f.embed(m.conductor())?;
                }
                write_json(path, &f.change_of_variables(&m)?.to_json())?;
            }
            Ok(Outcome::ok(rep_json(&out)))
        }
        Command::Surface { query } => surface(query),
        Command::Solve3 { form, starts, seed: s, accept, max_iterations } => {
            let form = read_form(form)?;
            let opts =
                SolveOptions { starts: *starts, seed: seed(s)?, accept: *accept, max_iterations: *max_iterations };
            let outcome = linearizer::solve3(&form, &opts)?;
            let classes = linearizer::classify(&outcome.solutions, linearizer::MERGE, linearizer::GAP);
            let dump = SolutionDump {
                form: form.to_json(),
                seed: opts.seed,
                starts: opts.starts,
                accept: opts.accept,
                solutions: outcome.solutions.iter().map(SolutionJson::from_solution).collect(),
            };
            let mut result = Outcome::verdict(!dump.solutions.is_empty(), dump);
            result.diagnostics.push(format!(
                "accepted {} of {} starts; {} classes at the default tolerances",
                outcome.solutions.len(),
                opts.starts,
                classes.classes.len()
            ));
            if let Some(m) = &outcome.transform {
                result.diagnostics.push(format!("f(1,0,0) = 0; solved for f(Mx) with M = {:?}", m.to_string_rows()));
            }
            Ok(result)
        }
        Command::Classify { solutions, merge, gap } => {
            let dump: SolutionDump = read_json(solutions)?;
            let (_, sols) = dump.solutions()?;
            let c = linearizer::classify(&sols, *merge, *gap);
            Ok(Outcome::ok(json!({
                "class_count": c.classes.len(),
                "classes": c.classes,
                "borderline": c.borderline,
            })))
        }
    }
}

fn construct(kind: &ConstructKind) -> CmdResult {
    match kind {
        ConstructKind::ClockShift { d, c1, c2, gamma1, gamma2, conductor, form_out } => {
            let n = conductor.unwrap_or(*d);
            let (c1, c2) = (parse_scalar(c1, n)?, parse_scalar(c2, n)?);
            let rep = clifford::clock_shift(*d, &c1, &c2, &parse_scalar(gamma1, n)?, &parse_scalar(gamma2, n)?)?;
            if let Some(path) = form_out {
                write_json(path, &Form::binary_diagonal(*d, &c1, &c2)?.to_json())?;
            }
            Ok(Outcome::ok(rep_json(&rep)))
        }
        ConstructKind::Tensor { d, n, conductor, form_out } => {
            let conductor = conductor.unwrap_or(*d);
            let rep = clifford::tensor_diagonal(*d, *n, conductor)?;
            if let Some(path) = form_out {
                write_json(path, &Form::sum_of_powers(*n, *d, conductor).to_json())?;
            }
            Ok(Outcome::ok(rep_json(&rep)))
        }
    }
}

fn catalog(classes: &[DivisorClass], count: bool) -> Outcome {
    if count {
        Outcome::ok(classes.len())
    } else {
        Outcome::ok(classes)
    }
}

fn surface(query: &SurfaceQuery) -> CmdResult {
    match query {
        SurfaceQuery::Lines { count } => Ok(catalog(lattice::lines(), *count)),
        SurfaceQuery::Cubics { count } => Ok(catalog(lattice::twisted_cubics(), *count)),
        SurfaceQuery::Ulrich { class, r } => {
            let d = parse_class(class)?;
            let check = lattice::is_ulrich_class(&d, *r)?;
            let decompositions = if *r <= lattice::MAX_DECOMPOSE_RANK {
                Some(lattice::decompose_sum_of_cubics(&d, *r)?.len())
            } else {
                None
            };
            let verdict = check.ulrich && decompositions.is_none_or(|n| n > 0);
            Ok(Outcome::verdict(
                verdict,
                json!({
                    "class": d,
                    "r": r,
                    "ulrich": verdict,
                    "numerical_conditions": check.ulrich,
                    "degree": check.degree,
                    "degree_ok": check.degree_ok,
                    "violations": check.violations,
                    "decompositions": decompositions,
                }),
            ))
        }
        SurfaceQuery::Stable { class, r } => {
            let verdict = lattice::stable_exists(&parse_class(class)?, *r)?;
            Ok(Outcome::verdict(verdict.conditions_met, verdict))
        }
        SurfaceQuery::Decompose { class, r } => {
            let d = parse_class(class)?;
            let list = lattice::decompose_sum_of_cubics(&d, *r)?;
            Ok(Outcome::verdict(
                !list.is_empty(),
                json!({ "class": d, "r": r, "count": list.len(), "decompositions": list }),
            ))
        }
        SurfaceQuery::Families { r, count } => {
            let fam = lattice::count_families(*r)?;
            if *count {
                Ok(Outcome::ok(json!({
                    "r": r,
                    "ulrich": fam.ulrich.len(),
                    "excluded": fam.excluded.len(),
                    "stable": fam.stable.as_ref().map(Vec::len),
                })))
            } else {
                Ok(Outcome::ok(fam))
            }
        }
        SurfaceQuery::Moduli { class, r } => {
            let d = parse_class(class)?;
            Ok(Outcome::ok(json!({
                "class": d,
                "r": r,
                "dimension": lattice::moduli_dimension(&d, *r),
                "c2": lattice::chern_c2(&d, *r).to_string(),
            })))
        }
        SurfaceQuery::Genus { class } => {
            let d = parse_class(class)?;
            Ok(Outcome::ok(json!({ "class": d, "genus": d.arithmetic_genus() })))
        }
        SurfaceQuery::Hilbert { r, t } => {
            Ok(Outcome::ok(json!({ "r": r, "t": t, "value": lattice::hilbert_value(*r, *t) })))
        }
    }
}
