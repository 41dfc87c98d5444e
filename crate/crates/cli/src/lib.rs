//! Command-line front end. [`run`] parses arguments, executes one command and
//! returns the exit status together with the rendered report, so the binary
//! and the tests share a single code path.

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use b3rep::classify::{classify, ClassificationResult};
use b3rep::document::{element_to_json, matrix_to_json, parse_document, parse_element, DocumentError, MatrixDocument};
use b3rep::error::Error as CoreError;
use b3rep::families::{construct, FamilyId, FamilyInstance, Param, Params, Presentation, Sign};
use b3rep::field::DEFAULT_CONDUCTOR;
use b3rep::groebner::{verify_elimination_case_with, EliminationCase, VerifyOptions, DEFAULT_STEP_BUDGET};
use b3rep::linalg::ExactMatrix;
use b3rep::rep::{braid_defect, decompose, equivalence, make_rep, verify_decomposition, B3Rep, DecompositionReport, Equivalence};
use b3rep::spectra::{jordan_form_at, DEFAULT_PRECISION};
use b3rep::yangbaxter::{analyze_r_matrix, special_blocks_in_family, ybe_defect, RKind, RMatrixSpec, Regime};
use clap::{Parser, Subcommand, ValueEnum};
use num_integer::Integer;
use serde_json::{json, Map, Value};

mod render;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "b3rep", version, about = "Exact representations of the braid group B3")]
struct Cli {
    /// Conductor N of the working field Q(zeta_N). Documents are embedded
    /// into it when given.
    #[arg(long, global = true)]
    conductor: Option<u32>,
    /// Starting precision in bits of the eigenvalue reconstruction ladder.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION)]
    precision: u32,
    /// Maximum number of reduction steps per Groebner basis computation.
    #[arg(long, global = true, default_value_t = DEFAULT_STEP_BUDGET)]
    step_budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check ABA = BAB for matrices A and B, and the Yang-Baxter equation
    /// for a matrix R, in a document.
    Verify {
        /// Document path, or "-" for standard input.
        input: PathBuf,
    },
    /// Classify the representation (A, B) of a document.
    Classify { input: PathBuf },
    /// Emit the document of a family instance.
    Construct {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda2: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        lambda3: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Branch of the dependent eigenvalues.
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
        /// Use the second displayed presentation (W2 families).
        #[arg(long)]
        alternate: bool,
        /// Write the document here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Split the representation of a document into indecomposable summands.
    Decompose { input: PathBuf },
    /// Search for an intertwiner between two representations.
    Equiv { left: PathBuf, right: PathBuf },
    /// Recompute the listed relations of a case of the dimension 3 analysis.
    DeriveRelations {
        /// Case label such as 1.1 or 3.4.
        #[arg(long)]
        case: String,
    },
    /// Decompose the 8-dimensional representation built from an R-matrix.
    YangbaxterDemo {
        #[arg(long)]
        kind: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    code: &'static str,
    message: String,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure { code: core_code(&e), message: e.to_string() }
    }
}

impl From<DocumentError> for Failure {
    fn from(e: DocumentError) -> Self {
        let code = match e {
            DocumentError::Parse { .. } => "parse_error",
            DocumentError::ConductorMismatch { .. } => "conductor_mismatch",
            DocumentError::NotRectangular { .. } => "not_rectangular",
            DocumentError::Version(_) => "unsupported_version",
            DocumentError::MissingMatrix(_) => "missing_matrix",
            DocumentError::Element { .. } => "invalid_element",
        };
        Failure { code, message: e.to_string() }
    }
}

/// Stable machine-readable code of a library error.
pub fn core_code(e: &CoreError) -> &'static str {
    match e {
        CoreError::Field(_) => "field_error",
        CoreError::DimensionMismatch(_) => "dimension_mismatch",
        CoreError::Singular => "singular",
        CoreError::NotInvertible => "not_invertible",
        CoreError::BraidRelationViolated { .. } => "braid_relation_violated",
        CoreError::SpectrumNotInField { .. } => "spectrum_not_in_field",
        CoreError::PrecisionExhausted { .. } => "precision_exhausted",
        CoreError::UnknownFamily(_) => "unknown_family",
        CoreError::ConstraintViolated(_) => "constraint_violated",
        CoreError::ZeroEigenvalue => "zero_eigenvalue",
        CoreError::UnmatchedIndecomposable => "unmatched_indecomposable",
        CoreError::NotInFamily(_) => "not_in_family",
        CoreError::StepBudgetExceeded { .. } => "step_budget_exceeded",
        CoreError::UnknownCase(_) => "unknown_case",
        CoreError::DegenerateParameters => "degenerate_parameters",
        CoreError::NotYangBaxter => "not_yang_baxter",
    }
}

fn fail(code: &'static str, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

struct Ctx {
    conductor: Option<u32>,
    precision: u32,
    step_budget: u64,
}

impl Ctx {
    fn field(&self) -> u32 {
        self.conductor.unwrap_or(DEFAULT_CONDUCTOR)
    }
}

/// Report and exit status of a command that ran to completion.
struct Answer {
    status: i32,
    report: Value,
}

impl Answer {
    fn yes(report: Value) -> Self {
        Answer { status: EXIT_OK, report }
    }

    fn verdict(ok: bool, report: Value) -> Self {
        Answer { status: if ok { EXIT_OK } else { EXIT_NEGATIVE }, report }
    }
}

/// Runs one command. `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status: EXIT_ERROR, stdout: String::new(), stderr: text }
            } else {
                Outcome { status: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    let ctx = Ctx { conductor: cli.conductor, precision: cli.precision, step_budget: cli.step_budget };
    let format = cli.format;
    match execute(&ctx, cli.command, format) {
        Ok(Answer { status, report }) => Outcome { status, stdout: emit(&report, format), stderr: String::new() },
        Err(f) => {
            let report = json!({ "error": { "code": f.code, "message": f.message } });
            Outcome { status: EXIT_ERROR, stdout: String::new(), stderr: emit(&report, format) }
        }
    }
}

fn emit(report: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => render::text(report),
    }
}

fn execute(ctx: &Ctx, command: Command, format: Format) -> Result<Answer, Failure> {
    match command {
        Command::Verify { input } => verify(ctx, &input),
        Command::Classify { input } => {
            let Some(rep) = load_rep(ctx, &input)? else { return Ok(not_a_rep(ctx, &input)?) };
            classify_cmd(ctx, &rep)
        }
        Command::Construct { family, lambda, lambda1, lambda2, lambda3, beta, sign, alternate, output } => {
            let given = [
                (Param::Lambda, lambda),
                (Param::Lambda1, lambda1),
                (Param::Lambda2, lambda2),
                (Param::Lambda3, lambda3),
                (Param::Beta, beta),
            ];
            construct_cmd(ctx, &family, &given, sign, alternate, output.as_deref(), format)
        }
        Command::Decompose { input } => {
            let Some(rep) = load_rep(ctx, &input)? else { return Ok(not_a_rep(ctx, &input)?) };
            let report = decompose(&rep)?;
            let verified = verify_decomposition(&rep, &report);
            let mut out = decomposition_json(&report);
            out.insert("verified".into(), json!(verified));
            Ok(Answer::verdict(verified, Value::Object(out)))
        }
        Command::Equiv { left, right } => equiv_cmd(ctx, &left, &right),
        Command::DeriveRelations { case } => derive_relations(ctx, &case),
        Command::YangbaxterDemo { kind, a, b } => yangbaxter_demo(ctx, &kind, &a, &b),
    }
}

fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| fail("io_error", format!("standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| fail("io_error", format!("{}: {e}", path.display())))
}

fn load_document(ctx: &Ctx, path: &Path) -> Result<MatrixDocument, Failure> {
    let mut doc = parse_document(&read_input(path)?)?;
    if let Some(target) = ctx.conductor.filter(|&c| c != doc.conductor) {
        for m in doc.matrices.values_mut() {
            *m = m.embed(target).map_err(CoreError::from)?;
        }
        doc.conductor = target;
    }
    Ok(doc)
}

fn load_pair(ctx: &Ctx, path: &Path) -> Result<(ExactMatrix, ExactMatrix), Failure> {
    let doc = load_document(ctx, path)?;
    Ok((doc.matrix("A")?.clone(), doc.matrix("B")?.clone()))
}

/// The representation of a document, or `None` when (A, B) is not one.
fn load_rep(ctx: &Ctx, path: &Path) -> Result<Option<B3Rep>, Failure> {
    let (a, b) = load_pair(ctx, path)?;
    match make_rep(a, b) {
        Ok(rep) => Ok(Some(rep)),
        Err(CoreError::BraidRelationViolated { .. } | CoreError::NotInvertible | CoreError::Singular) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn not_a_rep(ctx: &Ctx, path: &Path) -> Result<Answer, Failure> {
    let (a, b) = load_pair(ctx, path)?;
    Ok(Answer { status: EXIT_NEGATIVE, report: Value::Object(pair_check(&a, &b)?) })
}

fn pair_check(a: &ExactMatrix, b: &ExactMatrix) -> Result<Map<String, Value>, Failure> {
    let defect = braid_defect(a, b)?;
    let invertible = !a.determinant()?.is_zero() && !b.determinant()?.is_zero();
    let mut out = Map::new();
    out.insert("dim".into(), json!(a.rows()));
    out.insert("braid_relation".into(), json!(defect.is_zero()));
    out.insert("invertible".into(), json!(invertible));
    if !defect.is_zero() {
        out.insert("braid_defect".into(), matrix_to_json(&defect));
    }
    Ok(out)
}

fn verify(ctx: &Ctx, path: &Path) -> Result<Answer, Failure> {
    let doc = load_document(ctx, path)?;
    let mut out = Map::new();
    let mut ok = true;
    let mut checked = false;
    if doc.matrices.contains_key("A") || doc.matrices.contains_key("B") {
        let (a, b) = (doc.matrix("A")?, doc.matrix("B")?);
        let check = pair_check(a, b)?;
        ok &= check["braid_relation"] == json!(true) && check["invertible"] == json!(true);
        out.insert("braid".into(), Value::Object(check));
        checked = true;
    }
    if let Some(r) = doc.matrices.get("R") {
        let defect = ybe_defect(r)?;
        let mut check = Map::new();
        check.insert("yang_baxter".into(), json!(defect.is_zero()));
        if !defect.is_zero() {
            check.insert("ybe_defect".into(), matrix_to_json(&defect));
        }
        ok &= defect.is_zero();
        out.insert("r_matrix".into(), Value::Object(check));
        checked = true;
    }
    if !checked {
        return Err(fail("missing_matrix", "document holds neither A and B nor R"));
    }
    Ok(Answer::verdict(ok, Value::Object(out)))
}

fn instance_json(inst: &FamilyInstance) -> Value {
    let params: Map<String, Value> = inst.params.iter().map(|(k, v)| (k.to_string(), element_to_json(v))).collect();
    json!({
        "id": inst.id.as_str(),
        "params": params,
        "sign": inst.sign.map(|s| match s { Sign::Plus => "plus", Sign::Minus => "minus" }),
        "presentation": match inst.presentation { Presentation::First => "first", Presentation::Alternate => "alternate" },
    })
}

fn classification_json(c: &ClassificationResult) -> Value {
    let mut out = Map::new();
    out.insert("classification".into(), json!(c.tag()));
    match c {
        ClassificationResult::Irreducible { tw_match } => {
            if let Some((inst, w)) = tw_match {
                out.insert("family".into(), instance_json(inst));
                out.insert("witness".into(), matrix_to_json(w));
            }
        }
        ClassificationResult::StrictlyIndecomposable { family, witness } => {
            out.insert("family".into(), instance_json(family));
            out.insert("witness".into(), matrix_to_json(witness));
        }
        ClassificationResult::Decomposable { report, leaves } => {
            out.insert("witness".into(), matrix_to_json(&report.witness));
            out.insert("complete".into(), json!(report.complete));
            let summands: Vec<Value> = report
                .summands
                .iter()
                .zip(leaves)
                .map(|(s, leaf)| {
                    json!({
                        "dim": s.rep.dim(),
                        "basis": matrix_to_json(&s.basis),
                        "result": classification_json(leaf),
                    })
                })
                .collect();
            out.insert("summands".into(), Value::Array(summands));
        }
    }
    Value::Object(out)
}

fn spectrum_json(ctx: &Ctx, m: &ExactMatrix) -> Value {
    match jordan_form_at(m, ctx.precision) {
        Ok(jd) => Value::Array(
            jd.blocks
                .iter()
                .map(|(lambda, sizes)| json!({ "eigenvalue": element_to_json(lambda), "blocks": sizes }))
                .collect(),
        ),
        Err(_) => Value::Null,
    }
}

fn classify_cmd(ctx: &Ctx, rep: &B3Rep) -> Result<Answer, Failure> {
    let result = classify(rep)?;
    let mut out = Map::new();
    out.insert("dim".into(), json!(rep.dim()));
    out.insert("jordan_type_a".into(), spectrum_json(ctx, rep.a()));
    if let Value::Object(m) = classification_json(&result) {
        out.extend(m);
    }
    Ok(Answer::yes(Value::Object(out)))
}

fn decomposition_json(report: &DecompositionReport) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("dims".into(), json!(report.dims()));
    out.insert("complete".into(), json!(report.complete));
    out.insert("witness".into(), matrix_to_json(&report.witness));
    let summands: Vec<Value> = report
        .summands
        .iter()
        .map(|s| {
            json!({
                "dim": s.rep.dim(),
                "basis": matrix_to_json(&s.basis),
                "A": matrix_to_json(s.rep.a()),
                "B": matrix_to_json(s.rep.b()),
            })
        })
        .collect();
    out.insert("summands".into(), Value::Array(summands));
    out
}

fn construct_cmd(
    ctx: &Ctx,
    family: &str,
    given: &[(Param, Option<String>)],
    sign: Option<SignArg>,
    alternate: bool,
    output: Option<&Path>,
    format: Format,
) -> Result<Answer, Failure> {
    let id: FamilyId = family.parse()?;
    let cond = ctx.field();
    let mut params = Params::new();
    for (p, text) in given {
        if let Some(text) = text {
            params.insert(*p, parse_element(text, cond)?);
        }
    }
    let sign = sign.map(|s| match s {
        SignArg::Plus => Sign::Plus,
        SignArg::Minus => Sign::Minus,
    });
    if alternate && !id.has_alternate() {
        return Err(fail("no_alternate", format!("{id} has a single presentation")));
    }
    let presentation = if alternate { Presentation::Alternate } else { Presentation::First };
    let inst = FamilyInstance::new(id, params, sign, presentation)?;
    let rep = construct(&inst)?;
    let mut doc = MatrixDocument::with_pair(rep.a(), rep.b());
    doc.metadata.insert("family".into(), id.as_str().into());
    for (k, v) in &inst.params {
        doc.metadata.insert(k.to_string(), v.to_string());
    }
    if let Some(s) = inst.sign {
        doc.metadata.insert("sign".into(), if s == Sign::Plus { "plus" } else { "minus" }.into());
    }
    if inst.presentation == Presentation::Alternate {
        doc.metadata.insert("presentation".into(), "alternate".into());
    }
    let text = doc.to_json();
    match output {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| fail("io_error", format!("{}: {e}", path.display())))?;
            Ok(Answer::yes(json!({
                "family": instance_json(&inst),
                "dim": rep.dim(),
                "output": path.display().to_string(),
            })))
        }
        // The document itself is the report; text mode shows it readably.
        None if format == Format::Json => Ok(Answer::yes(serde_json::from_str(&text).expect("document is JSON"))),
        None => Ok(Answer::yes(json!({
            "family": instance_json(&inst),
            "A": matrix_to_json(rep.a()),
            "B": matrix_to_json(rep.b()),
        }))),
    }
}

fn equiv_cmd(ctx: &Ctx, left: &Path, right: &Path) -> Result<Answer, Failure> {
    let (Some(r1), Some(r2)) = (load_rep(ctx, left)?, load_rep(ctx, right)?) else {
        return Err(fail("braid_relation_violated", "both inputs must be representations"));
    };
    let (r1, r2) = if r1.conductor() == r2.conductor() {
        (r1, r2)
    } else {
        let n = r1.conductor().lcm(&r2.conductor());
        (r1.embed(n)?, r2.embed(n)?)
    };
    match equivalence(&r1, &r2)? {
        Equivalence::Witness(m) => Ok(Answer::yes(json!({ "equivalent": true, "witness": matrix_to_json(&m) }))),
        Equivalence::Inequivalent => Ok(Answer::verdict(false, json!({ "equivalent": false, "result": "inequivalent" }))),
        Equivalence::Unknown => Err(fail("undetermined", "no intertwiner found and no certificate of inequivalence")),
    }
}

fn derive_relations(ctx: &Ctx, case: &str) -> Result<Answer, Failure> {
    let case: EliminationCase = case.parse()?;
    let opts = VerifyOptions { step_budget: ctx.step_budget, check_criterion: true };
    let report = verify_elimination_case_with(case, opts)?;
    let total = report.checks().count();
    let members = report.checks().filter(|c| c.member).count();
    let stages: Vec<Value> = report
        .stages
        .iter()
        .map(|s| {
            let relations: Vec<Value> = s
                .checks
                .iter()
                .map(|c| {
                    let mut r = Map::new();
                    r.insert("relation".into(), json!(c.relation.to_string()));
                    r.insert("member".into(), json!(c.member));
                    if let Some(rad) = c.radical_member {
                        r.insert("radical_member".into(), json!(rad));
                    }
                    if let Some((p, m)) = &c.correction {
                        r.insert("correction".into(), json!({ "relation": p.to_string(), "member": m }));
                    }
                    Value::Object(r)
                })
                .collect();
            json!({
                "label": s.label,
                "basis_size": s.basis_size,
                "steps": s.steps,
                "buchberger_criterion": s.criterion_holds,
                "relations": relations,
            })
        })
        .collect();
    let ok = report.all_listed_members();
    Ok(Answer::verdict(
        ok,
        json!({
            "case": case.to_string(),
            "members": format!("{members}/{total}"),
            "all_listed_members": ok,
            "all_resolved": report.all_resolved(),
            "stages": stages,
        }),
    ))
}

fn yangbaxter_demo(ctx: &Ctx, kind: &str, a: &str, b: &str) -> Result<Answer, Failure> {
    let kind: RKind = kind.parse()?;
    let cond = ctx.field();
    let spec = RMatrixSpec::new(kind, parse_element(a, cond)?, parse_element(b, cond)?)?;
    let report = analyze_r_matrix(&spec)?;
    let checks: Vec<Value> = report
        .genericity_checks
        .iter()
        .map(|c| json!({ "polynomial": c.polynomial, "value": element_to_json(&c.value), "nonzero": c.nonzero }))
        .collect();
    let summands: Vec<Value> = report
        .decomposition
        .summands
        .iter()
        .zip(&report.summand_classifications)
        .map(|(s, c)| json!({ "dim": s.rep.dim(), "basis": matrix_to_json(&s.basis), "result": classification_json(c) }))
        .collect();
    let mut out = Map::new();
    out.insert("kind".into(), json!(kind.to_string()));
    out.insert("a".into(), element_to_json(&spec.a));
    out.insert("b".into(), element_to_json(&spec.b));
    out.insert("regime".into(), json!(match report.regime { Regime::Generic => "generic", Regime::Special => "special" }));
    out.insert("ybe_defect_zero".into(), json!(report.ybe_defect_zero));
    out.insert("genericity_checks".into(), Value::Array(checks));
    out.insert("predicates_hold".into(), json!(report.predicates_hold()));
    out.insert("summand_dims".into(), json!(report.summand_dims));
    out.insert("decomposition_verified".into(), json!(report.decomposition_verified));
    out.insert("matches_display".into(), json!(report.matches_display));
    if report.regime == Regime::Special {
        out.insert("blocks_in_family_W1_2".into(), json!(special_blocks_in_family(&report)));
    }
    out.insert("summands".into(), Value::Array(summands));
    let ok = report.ybe_defect_zero && report.decomposition_verified && report.matches_display;
    Ok(Answer::verdict(ok, Value::Object(out)))
}
