//! Command-line front end: input parsing, dispatch and report rendering.
//!
//! Reports are JSON objects tagged `"schema": "k3kit/1"`. Rationals are
//! strings `"p/q"` in lowest terms (`q = 1` included). The text format
//! prints the same JSON tree flattened to `path: value` lines.

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cone::{self, AutVerdict, BoundaryRay, FibrationVerdict};
use crate::error::{Error, Result};
use crate::exactpoly::{parse_rational, BinaryForm};
use crate::lattice::{embedding_is_primitive, IntegerLattice, LatticeSummary};
use crate::overlattice::{all_overlattices, isotropic_elements, DEFAULT_ENUM_BOUND};
use crate::weierstrass::{self, WeierstrassModel};
use crate::Rational;

pub const SCHEMA: &str = "k3kit/1";
pub const DEFAULT_HEIGHT_BOUND: i64 = 1000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_ENGINE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Rank, signature, discriminant, evenness and uniqueness data
    Lattice,
    /// Discriminant group with its quadratic and bilinear forms
    Dform,
    /// All even overlattices
    Overlattices,
    /// Primitivity of an embedding
    Embed,
    /// Kodaira fibers, trivial lattice and torsion candidates of a Weierstrass model
    Weierstrass,
    /// Ample chamber of a rank-2 lattice
    Cone,
    /// Genus-one and elliptic fibration criteria
    Fibration,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Lattice => "lattice",
            Command::Dform => "dform",
            Command::Overlattices => "overlattices",
            Command::Embed => "embed",
            Command::Weierstrass => "weierstrass",
            Command::Cone => "cone",
            Command::Fibration => "fibration",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "k3kit", version, about = "Exact lattice invariants of K3 surfaces")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Input JSON file
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest discriminant group that is enumerated
    #[arg(long, default_value_t = DEFAULT_ENUM_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    pub enum_bound: u64,
    /// Coordinate bound for (-2)-class and isotropic searches
    #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND, value_parser = clap::value_parser!(i64).range(1..))]
    pub height_bound: i64,
    /// Ample class for `cone`, e.g. `3,1`
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub ample: Option<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub input_path: PathBuf,
    pub format: Format,
    pub enum_bound: u64,
    pub height_bound: i64,
    pub ample: Option<Vec<i64>>,
}

impl From<Cli> for JobSpec {
    fn from(c: Cli) -> Self {
        JobSpec {
            command: c.command,
            input_path: c.input,
            format: c.format,
            enum_bound: c.enum_bound,
            height_bound: c.height_bound,
            ample: c.ample,
        }
    }
}

impl JobSpec {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        JobSpec {
            command,
            input_path: input_path.into(),
            format: Format::Json,
            enum_bound: DEFAULT_ENUM_BOUND,
            height_bound: DEFAULT_HEIGHT_BOUND,
            ample: None,
        }
    }
}

// ---- input ----

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeInput {
    #[serde(default)]
    pub gram: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub named: Option<String>,
}

impl LatticeInput {
    pub fn build(&self) -> Result<IntegerLattice> {
        match (&self.gram, &self.named) {
            (Some(g), None) => IntegerLattice::new(g.clone()).map_err(validation),
            (None, Some(n)) => IntegerLattice::from_named_sum(n),
            _ => Err(Error::Validation("lattice input needs exactly one of \"gram\" or \"named\"".into())),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelInput {
    pub d: u32,
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbedInput {
    pub lattice: LatticeInput,
    /// Columns: images of the sublattice basis in the ambient basis.
    pub embedding: Vec<Vec<i64>>,
    #[serde(default)]
    pub sublattice: Option<LatticeInput>,
}

#[derive(Debug, Clone)]
pub enum ParsedInput {
    Lattice(IntegerLattice),
    Model(WeierstrassModel),
    Embedding { ambient: IntegerLattice, columns: Vec<Vec<i64>>, sub: Option<IntegerLattice> },
}

fn validation(e: Error) -> Error {
    match e {
        Error::Parse(_) | Error::Validation(_) => e,
        other => Error::Validation(other.to_string()),
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn parse_form(coeffs: &[String], what: &str) -> Result<BinaryForm> {
    let c = coeffs
        .iter()
        .map(|s| parse_rational(s).map_err(|e| Error::Parse(format!("{what}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    BinaryForm::new(c).map_err(|_| Error::Validation(format!("{what} has no coefficients")))
}

pub fn parse_model(text: &str) -> Result<WeierstrassModel> {
    let m: ModelInput = parse_json(text)?;
    let alpha = parse_form(&m.alpha, "alpha")?;
    let beta = parse_form(&m.beta, "beta")?;
    WeierstrassModel::new(m.d, alpha, beta).map_err(|e| match e {
        Error::DegreeMismatch(got, want) => {
            Error::Validation(format!("form of degree {got} where degree {want} is required for d = {}", m.d))
        }
        other => validation(other),
    })
}

/// Parse input text for a command.
pub fn parse_input(command: Command, text: &str) -> Result<ParsedInput> {
    match command {
        Command::Weierstrass => Ok(ParsedInput::Model(parse_model(text)?)),
        Command::Embed => {
            let e: EmbedInput = parse_json(text)?;
            Ok(ParsedInput::Embedding {
                ambient: e.lattice.build()?,
                columns: e.embedding,
                sub: e.sublattice.as_ref().map(LatticeInput::build).transpose()?,
            })
        }
        _ => Ok(ParsedInput::Lattice(parse_json::<LatticeInput>(text)?.build()?)),
    }
}

// ---- reports ----

pub fn rat(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QCount {
    pub q: String,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub rank: usize,
    pub signature: [usize; 2],
    pub discriminant: u64,
    pub even: bool,
    pub invariant_factors: Option<Vec<u64>>,
    pub q_multiset: Option<Vec<QCount>>,
    pub nikulin_unique: Option<bool>,
    pub polarization_admissible: bool,
    pub period_domain_dimension: Option<usize>,
}

impl LatticeReport {
    pub fn of(l: &IntegerLattice, bound: u64) -> Self {
        Self::from_summary(l, &l.summary(bound))
    }

    fn from_summary(l: &IntegerLattice, s: &LatticeSummary) -> Self {
        LatticeReport {
            rank: s.rank,
            signature: [s.signature.positive, s.signature.negative],
            discriminant: s.discriminant,
            even: s.even,
            invariant_factors: s.invariant_factors.clone(),
            q_multiset: s
                .q_multiset
                .as_ref()
                .map(|m| m.iter().map(|(q, c)| QCount { q: rat(q), count: *c }).collect()),
            nikulin_unique: l.nikulin_unique().ok(),
            polarization_admissible: l.polarization_admissible(),
            period_domain_dimension: l.period_domain_dimension().ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DformReport {
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub q_values: Vec<String>,
    pub b_matrix: Vec<Vec<String>>,
    pub generator_lifts: Vec<Vec<String>>,
    /// `None` when the group exceeds the enumeration bound.
    pub isotropic_elements: Option<Vec<Vec<u64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlatticeReport {
    pub generators: Vec<Vec<u64>>,
    pub index: u64,
    pub gram: Vec<Vec<i64>>,
    pub invariants: LatticeReport,
    pub q_values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbedReport {
    pub ambient_rank: usize,
    pub sublattice_rank: usize,
    pub primitive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiberJson {
    pub place: String,
    #[serde(rename = "type")]
    pub kodaira: String,
    pub count: usize,
    /// `null` stands for an identically vanishing form.
    pub nu_alpha: Option<u32>,
    pub nu_beta: Option<u32>,
    pub nu_delta: u32,
    pub euler: u32,
    pub root: Option<String>,
    pub singularity: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrivialLatticeJson {
    pub summands: Vec<String>,
    pub invariants: LatticeReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarizationJson {
    pub torsion: Vec<u64>,
    pub index: u64,
    pub invariants: LatticeReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeierstrassReport {
    pub d: u32,
    pub discriminant: Vec<String>,
    pub fibers: Vec<FiberJson>,
    pub euler: u64,
    pub trivial_lattice: TrivialLatticeJson,
    pub torsion_candidates: Vec<Vec<u64>>,
    pub polarization_candidates: Vec<PolarizationJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RayJson {
    Rational { class: Vec<i64> },
    /// Coordinates `rational[i] + irrational[i] * sqrt(d)`.
    Quadratic { rational: Vec<i64>, irrational: Vec<i64>, d: i64 },
}

impl From<&BoundaryRay> for RayJson {
    fn from(r: &BoundaryRay) -> Self {
        match r {
            BoundaryRay::Rational(v) => RayJson::Rational { class: v.clone() },
            BoundaryRay::Quadratic { rational, irrational, d } => {
                RayJson::Quadratic { rational: rational.clone(), irrational: irrational.clone(), d: *d }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeReport {
    pub ample: Vec<i64>,
    pub height_bound: i64,
    pub walls: Vec<Vec<i64>>,
    pub rays: Vec<RayJson>,
    pub rational_polyhedral: bool,
    pub weyl_trivial: bool,
    pub automorphisms: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FibrationReport {
    /// `null` when the bounded search is inconclusive.
    pub genus_one: Option<bool>,
    pub verdict: String,
    pub witness: Option<Vec<i64>>,
    /// Only decided for rank 2.
    pub elliptic_with_section: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorJson {
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    pub command: Command,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ErrorJson>,
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn dform_report(l: &IntegerLattice, bound: u64) -> Result<DformReport> {
    let a = l.discriminant_form()?;
    Ok(DformReport {
        order: a.order(),
        invariant_factors: a.invariant_factors().to_vec(),
        q_values: a.q_values().iter().map(rat).collect(),
        b_matrix: a.b_matrix().iter().map(|r| r.iter().map(rat).collect()).collect(),
        generator_lifts: a.generator_lifts().iter().map(|r| r.iter().map(rat).collect()).collect(),
        isotropic_elements: isotropic_elements(&a, bound).ok(),
    })
}

fn overlattices_report(l: &IntegerLattice, bound: u64) -> Result<Vec<OverlatticeReport>> {
    Ok(all_overlattices(l, bound)?
        .into_iter()
        .map(|e| OverlatticeReport {
            generators: e.subgroup.generators.clone(),
            index: e.overlattice.index,
            gram: e.overlattice.lattice.gram().to_vec(),
            invariants: LatticeReport::of(&e.overlattice.lattice, bound),
            q_values: e.form.q_values().iter().map(rat).collect(),
        })
        .collect())
}

fn weierstrass_report(m: &WeierstrassModel, bound: u64) -> Result<WeierstrassReport> {
    let delta = weierstrass::discriminant_model(m)?;
    let r = weierstrass::analyze(m, bound)?;
    let mut summands = vec!["H".to_string()];
    for (root, count) in &r.root_summands {
        for _ in 0..*count {
            summands.push(format!("-{root}"));
        }
    }
    Ok(WeierstrassReport {
        d: m.d(),
        discriminant: delta.coeffs().iter().map(rat).collect(),
        fibers: r
            .fibers
            .iter()
            .map(|f| FiberJson {
                place: f.place.to_string(),
                kodaira: f.kodaira.to_string(),
                count: f.count,
                nu_alpha: f.nu_alpha,
                nu_beta: f.nu_beta,
                nu_delta: f.nu_delta,
                euler: f.euler,
                root: f.root.map(|x| x.to_string()),
                singularity: f.singularity.map(|x| x.to_string()),
            })
            .collect(),
        euler: r.euler_total,
        trivial_lattice: TrivialLatticeJson { summands, invariants: LatticeReport::of(&r.trivial_lattice, bound) },
        torsion_candidates: r.torsion_candidates.iter().map(|c| c.invariant_factors.clone()).collect(),
        polarization_candidates: r
            .polarization_candidates
            .iter()
            .map(|p| PolarizationJson {
                torsion: p.torsion.clone(),
                index: p.index,
                invariants: LatticeReport::from_summary(&p.lattice, &p.summary),
            })
            .collect(),
    })
}

fn cone_report(l: &IntegerLattice, ample: Option<&[i64]>, height: i64) -> Result<ConeReport> {
    let h = ample.ok_or_else(|| Error::Validation("cone needs an ample class (--ample a,b)".into()))?;
    let c = cone::ample_chamber(l, h, height)?;
    let aut = if c.rational_polyhedral { AutVerdict::Finite } else { AutVerdict::Infinite };
    Ok(ConeReport {
        ample: c.ample.clone(),
        height_bound: c.height_bound,
        walls: c.walls.clone(),
        rays: c.rays.iter().map(RayJson::from).collect(),
        rational_polyhedral: c.rational_polyhedral,
        weyl_trivial: c.weyl_trivial,
        automorphisms: format!("{aut:?}").to_lowercase(),
    })
}

fn fibration_report(l: &IntegerLattice, height: i64) -> Result<FibrationReport> {
    let v = cone::genus_one_fibration_exists(l, height)?;
    let verdict = match &v {
        FibrationVerdict::Yes(_) => "yes",
        FibrationVerdict::YesNoWitness => "yes_no_witness",
        FibrationVerdict::No => "no",
        FibrationVerdict::Inconclusive => "inconclusive",
    };
    Ok(FibrationReport {
        genus_one: v.exists(),
        verdict: verdict.to_string(),
        witness: v.witness().map(<[i64]>::to_vec),
        elliptic_with_section: if l.rank() == 2 { Some(cone::admits_elliptic_section(l)?) } else { None },
    })
}

fn compute(job: &JobSpec, input: &ParsedInput) -> Result<Value> {
    let bound = job.enum_bound;
    match (job.command, input) {
        (Command::Lattice, ParsedInput::Lattice(l)) => Ok(to_value(&LatticeReport::of(l, bound))),
        (Command::Dform, ParsedInput::Lattice(l)) => Ok(to_value(&dform_report(l, bound)?)),
        (Command::Overlattices, ParsedInput::Lattice(l)) => Ok(to_value(&overlattices_report(l, bound)?)),
        (Command::Cone, ParsedInput::Lattice(l)) => Ok(to_value(&cone_report(l, job.ample.as_deref(), job.height_bound)?)),
        (Command::Fibration, ParsedInput::Lattice(l)) => Ok(to_value(&fibration_report(l, job.height_bound)?)),
        (Command::Weierstrass, ParsedInput::Model(m)) => Ok(to_value(&weierstrass_report(m, bound)?)),
        (Command::Embed, ParsedInput::Embedding { ambient, columns, sub }) => {
            // columns arrive as a list of column vectors
            let primitive = embedding_is_primitive(ambient, columns, sub.as_ref())?;
            Ok(to_value(&EmbedReport { ambient_rank: ambient.rank(), sublattice_rank: columns.len(), primitive }))
        }
        _ => Err(Error::Validation(format!("input does not fit command {}", job.command.name()))),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_ENGINE
    }
}

/// Run a job on already loaded input text.
pub fn run_on_text(job: &JobSpec, text: &str) -> (i32, String) {
    let outcome = parse_input(job.command, text).and_then(|input| compute(job, &input));
    let (code, envelope) = match outcome {
        Ok(v) => (EXIT_OK, Envelope { schema: SCHEMA.into(), command: job.command, result: Some(v), error: None }),
        Err(e) => (
            exit_code(&e),
            Envelope {
                schema: SCHEMA.into(),
                command: job.command,
                result: None,
                error: Some(ErrorJson { kind: e.kind().into(), message: e.to_string() }),
            },
        ),
    };
    (code, render(&envelope, job.format))
}

/// Read the input file and run the job. Returns the exit code and the report.
pub fn run(job: &JobSpec) -> (i32, String) {
    match std::fs::read_to_string(&job.input_path) {
        Ok(text) => run_on_text(job, &text),
        Err(e) => {
            let err = Error::Parse(format!("{}: {e}", job.input_path.display()));
            let env = Envelope {
                schema: SCHEMA.into(),
                command: job.command,
                result: None,
                error: Some(ErrorJson { kind: err.kind().into(), message: err.to_string() }),
            };
            (EXIT_INPUT, render(&env, job.format))
        }
    }
}

pub fn render(envelope: &Envelope, format: Format) -> String {
    let v = to_value(envelope);
    match format {
        Format::Json => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
        Format::Text => {
            let mut out = String::new();
            flatten("", &v, &mut out);
            out
        }
    }
}

fn flatten(path: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                flatten(&p, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array() && !is_flat(x)) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{path}[{i}]"), x, out);
            }
        }
        other => {
            let shown = match other {
                Value::String(s) => s.clone(),
                x => x.to_string(),
            };
            out.push_str(&format!("{path}: {shown}\n"));
        }
    }
}

fn is_flat(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(|x| !x.is_object() && !x.is_array()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(cmd: Command) -> JobSpec {
        JobSpec::new(cmd, "unused")
    }

    fn result(cmd: Command, text: &str) -> Value {
        let (code, out) = run_on_text(&job(cmd), text);
        assert_eq!(code, 0, "{out}");
        let env: Envelope = serde_json::from_str(&out).unwrap();
        assert_eq!(env.schema, SCHEMA);
        env.result.unwrap()
    }

    #[test]
    fn fibration_on_p1p2_gram() {
        let r = result(Command::Fibration, r#"{"gram": [[0,3],[3,2]]}"#);
        assert_eq!(r["genus_one"], Value::Bool(true));
        assert_eq!(r["witness"], serde_json::json!([1, 0]));
        assert_eq!(r["elliptic_with_section"], Value::Bool(false));
    }

    #[test]
    fn strict_parsing() {
        let (code, out) = run_on_text(&job(Command::Lattice), r#"{"gram": [[0,1],[1,0]], "extra": 1}"#);
        assert_eq!(code, EXIT_INPUT);
        assert!(out.contains("ParseError"));
        let (code, out) = run_on_text(&job(Command::Lattice), r#"{"gram": [[0,1],[2,0]]}"#);
        assert_eq!(code, EXIT_INPUT);
        assert!(out.contains("ValidationError"));
        let (code, _) = run_on_text(&job(Command::Lattice), "{\"gram\": [[0,1],\n[1,0]");
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn alpha_degree_is_validated() {
        let alpha: Vec<String> = vec!["1".into(); 8];
        let beta: Vec<String> = vec!["1".into(); 13];
        let text = serde_json::json!({"d": 2, "alpha": alpha, "beta": beta}).to_string();
        assert!(matches!(parse_model(&text), Err(Error::Validation(_))));
    }

    #[test]
    fn engine_errors_exit_3() {
        // non-minimal at s: alpha = s^4 t^4, beta = s^6 t^6
        let mut alpha = vec!["0"; 9];
        alpha[4] = "1";
        let mut beta = vec!["0"; 13];
        beta[6] = "1";
        let text = serde_json::json!({"d": 2, "alpha": alpha, "beta": beta}).to_string();
        let (code, out) = run_on_text(&job(Command::Weierstrass), &text);
        assert_eq!(code, EXIT_ENGINE);
        assert!(out.contains("NonMinimal"));
    }

    #[test]
    fn text_format_flattens() {
        let mut j = job(Command::Lattice);
        j.format = Format::Text;
        let (code, out) = run_on_text(&j, r#"{"named": "H"}"#);
        assert_eq!(code, 0);
        assert!(out.contains("result.rank: 2\n"));
        assert!(out.contains("result.signature: [1,1]\n"));
        assert!(out.contains("schema: k3kit/1\n"));
    }
}
