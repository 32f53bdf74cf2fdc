//! Command-line front end shared by the `valinf` binary and the tests.
//!
//! Exit codes: 0 success, 1 usage, I/O or parse error, 2 mathematically
//! invalid input, 3 search budget exhausted.

mod document;

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::curves::{approximate_roots, parse_poly, value_at_infinity, CurveError};
use crate::delta::{
    char_condition, classify, validate_core, DeltaCore, DeltaError, DeltaSequence, TypeD, DEFAULT_E_PREFIX,
};
use crate::proximity::{cluster_from_delta_prefix, emit_dot, DualGraph, ProximityError, Segment};
use crate::semigroup::{GeneratedSemigroup, Membership, SemigroupError};
use crate::values::{cf_expand, parse_rational, OrderedValue, ValueError};

pub use document::{RuleDocument, SequenceDocument, SurdDocument};

/// Points shown for infinite clusters when `--truncate` is not given.
pub const DEFAULT_TRUNCATION: usize = 32;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

fn value_code(e: &ValueError) -> i32 {
    match e {
        ValueError::BudgetExhausted(_) => EXIT_BUDGET,
        ValueError::Malformed(_) | ValueError::KindMismatch(..) => EXIT_USAGE,
        _ => EXIT_INVALID,
    }
}

fn semigroup_code(e: &SemigroupError) -> i32 {
    match e {
        SemigroupError::Budget(_) => EXIT_BUDGET,
        SemigroupError::Value(v) => value_code(v),
        SemigroupError::KindMismatch(..) | SemigroupError::TooLarge(_) | SemigroupError::Unbounded(_) => EXIT_USAGE,
        _ => EXIT_INVALID,
    }
}

fn delta_code(e: &DeltaError) -> i32 {
    match e {
        DeltaError::NotPrime(_) => EXIT_USAGE,
        DeltaError::Value(v) => value_code(v),
        DeltaError::Semigroup(s) => semigroup_code(s),
        _ => EXIT_INVALID,
    }
}

impl From<DeltaError> for CliError {
    fn from(e: DeltaError) -> Self {
        let message = match &e {
            DeltaError::Invalid(report) => format!("{report}invalid"),
            _ => e.to_string(),
        };
        CliError {
            code: delta_code(&e),
            message,
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        CliError {
            code: semigroup_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<ValueError> for CliError {
    fn from(e: ValueError) -> Self {
        CliError {
            code: value_code(&e),
            message: e.to_string(),
        }
    }
}

impl From<ProximityError> for CliError {
    fn from(e: ProximityError) -> Self {
        match e {
            ProximityError::Delta(d) => d.into(),
            ProximityError::Value(v) => v.into(),
            other => CliError::usage(other.to_string()),
        }
    }
}

impl From<CurveError> for CliError {
    fn from(e: CurveError) -> Self {
        let code = match &e {
            CurveError::Delta(d) => delta_code(d),
            CurveError::Semigroup(s) => semigroup_code(s),
            CurveError::Value(v) => value_code(v),
            CurveError::CommonFactor | CurveError::Postcondition(_) | CurveError::ZeroPolynomial => EXIT_INVALID,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "valinf", version, about = "δ-sequences of plane valuations at infinity")]
struct Cli {
    /// Prefix length used to read type E sequences.
    #[arg(long, global = true, default_value_t = DEFAULT_E_PREFIX)]
    e_prefix: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the defining conditions and classify the sequence.
    Validate { file: PathBuf },
    /// Print d, n, e/m pairs, continued fractions and maximal contact values.
    Invariants { file: PathBuf },
    /// Membership or enumeration in the semigroup spanned by the sequence.
    #[command(group(ArgGroup::new("query").required(true).args(["member", "enumerate"])))]
    Semigroup {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        member: Option<String>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true)]
        enumerate: Option<Vec<String>>,
        /// Use only the integer core δ0, …, δg.
        #[arg(long)]
        core: bool,
    },
    /// Cluster of infinitely near points as JSON, or the dual graph as DOT.
    Dualgraph {
        file: PathBuf,
        #[arg(long)]
        truncate: Option<usize>,
        #[arg(long)]
        dot: bool,
    },
    /// Approximate roots q0, …, q_{g+1} of the attached curve.
    Curve {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Option<Vec<String>>,
    },
    /// Value at infinity of a polynomial.
    Value {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        t: Option<Vec<String>>,
    },
}

fn big_json(n: &BigInt) -> Value {
    n.to_i64().map_or_else(|| Value::String(n.to_string()), Value::from)
}

/// Integers and pairs as JSON numbers, rationals as `"p/q"` strings and
/// quadratic numbers as `{a, b, c, d}` records.
pub fn value_json(v: &OrderedValue) -> Value {
    match v {
        OrderedValue::Integer(n) => big_json(n),
        OrderedValue::LexPair(a, b) => json!([big_json(a), big_json(b)]),
        OrderedValue::Rational(_) => Value::String(v.to_string()),
        OrderedValue::Quadratic(q) => json!({
            "a": big_json(q.a()),
            "b": big_json(q.b()),
            "c": big_json(q.c()),
            "d": big_json(q.d()),
        }),
    }
}

fn values_json(v: &[OrderedValue]) -> Value {
    Value::Array(v.iter().map(value_json).collect())
}

fn rational_json(r: &BigRational) -> Value {
    value_json(&OrderedValue::Rational(r.clone()))
}

fn read_input(path: &Path) -> Result<String, CliError> {
    let mut text = String::new();
    if path == Path::new("-") {
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::usage(format!("cannot read stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    }
    Ok(text)
}

fn load(path: &Path) -> Result<SequenceDocument, CliError> {
    SequenceDocument::parse(&read_input(path)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn require_core(seq: &DeltaSequence) -> Result<&DeltaCore, CliError> {
    seq.core()
        .ok_or_else(|| CliError::usage(format!("type {} sequences have no integer core", seq.tag())))
}

fn parse_t(t: &Option<Vec<String>>) -> Result<Option<Vec<BigRational>>, CliError> {
    t.as_ref()
        .map(|v| {
            v.iter()
                .map(|s| parse_rational(s.trim()).map_err(|e| CliError::usage(format!("bad t value {s:?}: {e}"))))
                .collect()
        })
        .transpose()
}

fn validate(doc: &SequenceDocument, e_prefix: usize) -> Result<String, CliError> {
    let mut out = String::new();
    if let Some(core) = &doc.core {
        let report = validate_core(core)?;
        let shown: Vec<String> = core.iter().map(i64::to_string).collect();
        out.push_str(&format!("core: {{{}}}\n{report}", shown.join(",")));
        if !report.is_valid() {
            out.push_str("invalid\n");
            return Err(CliError::invalid(out));
        }
    }
    let seq = doc.build().map_err(|mut e| {
        e.message = format!("{out}{}\ninvalid", e.message);
        e
    })?;
    match &seq {
        DeltaSequence::D(TypeD::General { witnesses, .. }) => {
            for w in witnesses {
                out.push_str(&format!(
                    "witness {} ≈ last entry {}: valid\n",
                    w.core,
                    OrderedValue::Rational(w.approximant.clone())
                ));
            }
        }
        DeltaSequence::E(stream) => {
            for j in 1..=e_prefix {
                match stream.validate_prefix(j) {
                    Ok(cert) => out.push_str(&format!("prefix δ0..δ{j}: core {}: valid\n", cert.core)),
                    Err(e) => {
                        let mut err = CliError::from(e);
                        err.message = format!("{out}prefix δ0..δ{j}: {}\ninvalid", err.message);
                        return Err(err);
                    }
                }
            }
        }
        _ => {}
    }
    if let (Some(p), Some(core)) = (doc.characteristic, seq.core()) {
        let ok = char_condition(core, p)?;
        out.push_str(&format!("characteristic {p}: {}\n", if ok { "holds" } else { "fails" }));
        if !ok {
            out.push_str("invalid\n");
            return Err(CliError::invalid(out));
        }
    }
    let c = classify(&seq);
    out.push_str(&format!("sequence: {seq}\ntype: {}\nrationale: {}\nvalid\n", c.tag, c.rationale));
    Ok(out)
}

fn invariants(doc: &SequenceDocument, e_prefix: usize) -> Result<String, CliError> {
    let seq = doc.build()?;
    let mut m = Map::new();
    m.insert("type".into(), json!(seq.tag().to_string()));
    m.insert("generators".into(), values_json(&seq.generators(Some(e_prefix))?));
    let pairs = seq.em_pairs(Some(e_prefix))?;
    let cfs: Vec<Value> = pairs
        .iter()
        .map(|(mm, e)| cf_expand(mm, e, None).map(|cf| json!(cf.to_string())))
        .collect::<Result<_, _>>()?;
    m.insert(
        "em_pairs".into(),
        Value::Array(pairs.iter().map(|(mm, e)| json!([value_json(mm), value_json(e)])).collect()),
    );
    m.insert("cf".into(), Value::Array(cfs));
    let core = match &seq {
        DeltaSequence::E(stream) => Some(stream.validate_prefix(e_prefix)?.core),
        _ => seq.core().cloned(),
    };
    if let Some(core) = core {
        m.insert("d".into(), json!(core.d_all()));
        m.insert("n".into(), json!(core.n_all()));
        m.insert(
            "case".into(),
            json!(if core.divides_case() { "divides" } else { "non-divides" }),
        );
        m.insert("beta".into(), json!(core.beta()));
        m.insert(
            "normalized".into(),
            Value::Array(core.normalize().iter().map(rational_json).collect()),
        );
    }
    if let DeltaSequence::D(TypeD::General { witnesses, .. }) = &seq {
        m.insert(
            "witnesses".into(),
            Value::Array(
                witnesses
                    .iter()
                    .map(|w| json!({"core": w.core.entries(), "approximant": rational_json(&w.approximant)}))
                    .collect(),
            ),
        );
    }
    if let Some(f) = seq.f_free() {
        m.insert("f_free".into(), json!(f));
    }
    Ok(pretty(&Value::Object(m)))
}

fn parse_value(s: &str) -> Result<OrderedValue, CliError> {
    s.parse::<OrderedValue>()
        .map_err(|e| CliError::usage(format!("bad value {s:?}: {e}")))
}

fn semigroup(
    doc: &SequenceDocument,
    e_prefix: usize,
    member: &Option<String>,
    enumerate: &Option<Vec<String>>,
    core_only: bool,
) -> Result<String, CliError> {
    let seq = doc.build()?;
    let s = if core_only {
        GeneratedSemigroup::from_integers(require_core(&seq)?.entries())?
    } else {
        GeneratedSemigroup::new(seq.generators(Some(e_prefix))?)?
    };
    let mut m = Map::new();
    if let Some(v) = member {
        let v = parse_value(v)?;
        match s.member(&v)? {
            Membership::Yes(w) => {
                m.insert("member".into(), json!(true));
                m.insert("witness".into(), Value::Array(w.iter().map(big_json).collect()));
            }
            Membership::No => {
                m.insert("member".into(), json!(false));
            }
            Membership::Unknown { budget } => {
                return Err(CliError {
                    code: EXIT_BUDGET,
                    message: format!("membership of {v} undecided after {budget} search nodes"),
                })
            }
        }
    }
    if let Some(bounds) = enumerate {
        let lo = parse_value(&bounds[0])?;
        let hi = parse_value(&bounds[1])?;
        m.insert("members".into(), values_json(&s.enumerate(&lo, &hi)?));
    }
    Ok(pretty(&Value::Object(m)))
}

fn dualgraph(doc: &SequenceDocument, e_prefix: usize, truncate: Option<usize>, dot: bool) -> Result<String, CliError> {
    let seq = doc.build()?;
    let limit = truncate.unwrap_or(match seq {
        DeltaSequence::A { .. } => usize::MAX,
        _ => DEFAULT_TRUNCATION,
    });
    let cluster = cluster_from_delta_prefix(&seq, limit, Some(e_prefix))?;
    let graph = DualGraph::from_cluster(&cluster);
    if dot {
        return Ok(emit_dot(&graph));
    }
    let points: Vec<Value> = cluster
        .points
        .iter()
        .map(|p| {
            json!({
                "index": p.index,
                "kind": format!("{:?}", p.kind).to_lowercase(),
                "proximate_to": p.proximate_to,
                "multiplicity": value_json(&p.multiplicity),
                "segment": match p.block.segment {
                    Segment::Pair(l) => json!(l + 1),
                    Segment::Free => json!("free"),
                },
                "block": p.block.block,
            })
        })
        .collect();
    let out = json!({
        "tail": cluster.tail.to_string(),
        "truncated": cluster.truncated,
        "points": points,
        "vertex_count": graph.vertex_count,
        "edges": graph.edges.iter().map(|&(a, b)| json!([a, b])).collect::<Vec<_>>(),
        "branch_vertices": graph.branch_vertices(),
        "is_tree": graph.is_tree(),
    });
    Ok(pretty(&out))
}

fn curve(doc: &SequenceDocument, t: &Option<Vec<String>>) -> Result<String, CliError> {
    let seq = doc.build()?;
    let core = require_core(&seq)?;
    let t = parse_t(t)?;
    let roots = approximate_roots(core, t.as_deref())?;
    let mut m = Map::new();
    for (i, q) in roots.iter().enumerate() {
        m.insert(format!("q{i}"), json!(q.to_string()));
    }
    let degrees: Vec<u32> = roots[2..].iter().map(|q| q.total_degree().unwrap_or(0)).collect();
    m.insert("degrees".into(), json!(degrees));
    Ok(pretty(&Value::Object(m)))
}

fn value(doc: &SequenceDocument, poly: &str, t: &Option<Vec<String>>) -> Result<String, CliError> {
    let seq = doc.build()?;
    let core = require_core(&seq)?;
    let f = parse_poly(poly)?;
    let t = parse_t(t)?;
    let roots = approximate_roots(core, t.as_deref())?;
    let v = value_at_infinity(&f, &seq, &roots)?;
    Ok(pretty(&json!({"value": value_json(&v.value), "generic": v.generic})))
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    let e = cli.e_prefix;
    match &cli.command {
        Command::Validate { file } => validate(&load(file)?, e),
        Command::Invariants { file } => invariants(&load(file)?, e),
        Command::Semigroup {
            file,
            member,
            enumerate,
            core,
        } => semigroup(&load(file)?, e, member, enumerate, *core),
        Command::Dualgraph { file, truncate, dot } => dualgraph(&load(file)?, e, *truncate, *dot),
        Command::Curve { file, t } => curve(&load(file)?, t),
        Command::Value { file, poly, t } => value(&load(file)?, poly, t),
    }
}

/// Runs one command, writing the report to `out` and diagnostics to `err`,
/// and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "{}", e.message.trim_end());
            e.code
        }
    }
}
