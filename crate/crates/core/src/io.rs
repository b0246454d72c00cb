//! State files and JSON reports.
//!
//! A state file is one of two JSON shapes:
//!
//! ```json
//! {"n": 2, "format": "sparse-rational",
//!  "amplitudes": [{"index": 0, "re": "1/1", "im": "0/1"},
//!                 {"index": 3, "re": "1/1", "im": "0/1"}],
//!  "norm_squared": "2/1", "label": "ghz"}
//!
//! {"n": 2, "format": "dense-float",
//!  "amplitudes": [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]]}
//! ```
//!
//! Sparse indices must be strictly increasing. `norm_squared`, when
//! present, must equal `sum |a_i|^2` of the listed amplitudes.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use crate::classify::{Measure, Outcome, Signature, Verdict};
use crate::determinant::LogComplex;
use crate::error::{Error, Result};
use crate::invariant::{InvariantScalar, InvariantValue};
use crate::layout::InvariantKind;
use crate::scalar::{format_rational, parse_rational, ExactScalar, Field, FloatScalar};
use crate::slocc::Residual;
use crate::state::{check_qubit_count, make_state, Amplitudes, NormSquared, PureState};

pub const SPARSE_RATIONAL: &str = "sparse-rational";
pub const DENSE_FLOAT: &str = "dense-float";

pub fn parse_state(bytes: &[u8]) -> Result<PureState> {
    let doc: Value = serde_json::from_slice(bytes).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::parse("$", "expected a JSON object"))?;

    let n = obj
        .get("n")
        .ok_or_else(|| Error::parse("n", "missing field"))?
        .as_u64()
        .ok_or_else(|| Error::parse("n", "expected a non-negative integer"))?;
    let n = usize::try_from(n).map_err(|_| Error::parse("n", "too large"))?;
    check_qubit_count(n)?;

    let format = obj
        .get("format")
        .ok_or_else(|| Error::parse("format", "missing field"))?
        .as_str()
        .ok_or_else(|| Error::parse("format", "expected a string"))?;
    let amps = obj
        .get("amplitudes")
        .ok_or_else(|| Error::parse("amplitudes", "missing field"))?
        .as_array()
        .ok_or_else(|| Error::parse("amplitudes", "expected an array"))?;

    let amplitudes = match format {
        SPARSE_RATIONAL => Amplitudes::Exact(parse_sparse(n, amps)?),
        DENSE_FLOAT => Amplitudes::Float(parse_dense(n, amps)?),
        other => {
            return Err(Error::parse(
                "format",
                format!("unknown format {other:?} (expected {SPARSE_RATIONAL:?} or {DENSE_FLOAT:?})"),
            ))
        }
    };
    let mut state = make_state(n, amplitudes)?;

    if let Some(v) = obj.get("norm_squared").filter(|v| !v.is_null()) {
        let s = v
            .as_str()
            .ok_or_else(|| Error::parse("norm_squared", "expected a rational string"))?;
        let recorded = parse_rational(s).map_err(|m| Error::parse("norm_squared", m))?;
        let actual = crate::invariant::exact_norm_squared(&state);
        if recorded != actual {
            return Err(Error::parse(
                "norm_squared",
                format!(
                    "recorded {} but amplitudes give {}",
                    format_rational(&recorded),
                    format_rational(&actual)
                ),
            ));
        }
    }
    if let Some(v) = obj.get("label").filter(|v| !v.is_null()) {
        let label = v
            .as_str()
            .ok_or_else(|| Error::parse("label", "expected a string"))?;
        state = state.with_label(label);
    }
    Ok(state)
}

fn parse_sparse(n: usize, entries: &[Value]) -> Result<Vec<ExactScalar>> {
    let len = 1usize << n;
    let mut amps = vec![ExactScalar::zero(); len];
    let mut last: Option<usize> = None;
    for (k, entry) in entries.iter().enumerate() {
        let path = |field: &str| format!("amplitudes[{k}].{field}");
        let obj = entry
            .as_object()
            .ok_or_else(|| Error::parse(format!("amplitudes[{k}]"), "expected an object"))?;
        let index = obj
            .get("index")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::parse(path("index"), "expected a non-negative integer"))?;
        let index = usize::try_from(index).unwrap_or(usize::MAX);
        if index >= len {
            return Err(Error::parse(
                path("index"),
                format!("index {index} out of range for {n} qubits (max {})", len - 1),
            ));
        }
        match last {
            Some(prev) if prev == index => return Err(Error::DuplicateIndex(index)),
            Some(prev) if prev > index => {
                return Err(Error::parse(
                    path("index"),
                    format!("indices must be strictly increasing ({index} after {prev})"),
                ))
            }
            _ => {}
        }
        last = Some(index);
        let part = |field: &str| -> Result<BigRational> {
            let s = obj
                .get(field)
                .and_then(Value::as_str)
                .ok_or_else(|| Error::parse(path(field), "expected a rational string \"p/q\""))?;
            parse_rational(s).map_err(|m| Error::parse(path(field), m))
        };
        amps[index] = ExactScalar::new(part("re")?, part("im")?);
    }
    Ok(amps)
}

fn parse_dense(n: usize, entries: &[Value]) -> Result<Vec<FloatScalar>> {
    let len = 1usize << n;
    if entries.len() != len {
        return Err(Error::DimensionMismatch {
            expected: len,
            found: entries.len(),
        });
    }
    entries
        .iter()
        .enumerate()
        .map(|(k, entry)| {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::parse(format!("amplitudes[{k}]"), "expected [re, im]"))?;
            let part = |j: usize| {
                pair[j]
                    .as_f64()
                    .ok_or_else(|| Error::parse(format!("amplitudes[{k}][{j}]"), "expected a number"))
            };
            FloatScalar::new(part(0)?, part(1)?)
                .map_err(|_| Error::parse(format!("amplitudes[{k}]"), "non-finite value"))
        })
        .collect()
}

#[derive(Serialize)]
struct SparseEntry {
    index: usize,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct StateDoc<A> {
    n: usize,
    format: &'static str,
    amplitudes: A,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm_squared: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

/// Exact states serialize as `sparse-rational`, float states as `dense-float`.
pub fn serialize_state(state: &PureState) -> String {
    let label = state.label().map(str::to_owned);
    let json = match (state.amplitudes(), state.norm_squared()) {
        (Amplitudes::Exact(v), NormSquared::Exact(norm)) => {
            let entries: Vec<SparseEntry> = v
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(index, a)| SparseEntry {
                    index,
                    re: format_rational(&a.re),
                    im: format_rational(&a.im),
                })
                .collect();
            serde_json::to_string_pretty(&StateDoc {
                n: state.n(),
                format: SPARSE_RATIONAL,
                amplitudes: entries,
                norm_squared: Some(format_rational(&norm)),
                label,
            })
        }
        (Amplitudes::Float(v), _) => {
            let pairs: Vec<[f64; 2]> = v.iter().map(|a| [a.re(), a.im()]).collect();
            serde_json::to_string_pretty(&StateDoc {
                n: state.n(),
                format: DENSE_FLOAT,
                amplitudes: pairs,
                norm_squared: None,
                label,
            })
        }
        (Amplitudes::Exact(_), NormSquared::Float(_)) => unreachable!("exact norm for exact state"),
    };
    let mut s = json.expect("state documents serialize");
    s.push('\n');
    s
}

/// Writes `contents` to a sibling temporary file and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

pub fn read_state(path: &Path) -> Result<PureState> {
    let bytes = fs::read(path)
        .map_err(|e| Error::parse(path.display().to_string(), e.to_string()))?;
    parse_state(&bytes)
}

// ---------------------------------------------------------------------------
// report documents

/// A polynomial value: exact parts as rational strings, float values in log form.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ValueDoc {
    Exact {
        re: String,
        im: String,
    },
    Float {
        /// `null` for an exact zero.
        log_magnitude: Option<f64>,
        phase: f64,
    },
}

impl From<&ExactScalar> for ValueDoc {
    fn from(z: &ExactScalar) -> Self {
        ValueDoc::Exact {
            re: format_rational(&z.re),
            im: format_rational(&z.im),
        }
    }
}

impl From<&LogComplex> for ValueDoc {
    fn from(z: &LogComplex) -> Self {
        ValueDoc::Float {
            log_magnitude: (!z.is_zero()).then_some(z.log_magnitude),
            phase: z.phase,
        }
    }
}

impl From<&InvariantScalar> for ValueDoc {
    fn from(v: &InvariantScalar) -> Self {
        match v {
            InvariantScalar::Exact(z) => z.into(),
            InvariantScalar::Float(z) => z.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantDoc {
    pub kind: &'static str,
    pub degree: usize,
    pub raw: ValueDoc,
    pub normalized: ValueDoc,
    pub is_zero: bool,
}

impl InvariantDoc {
    pub fn new(v: &InvariantValue, is_zero: bool) -> Self {
        Self {
            kind: v.kind.tag(),
            degree: v.degree,
            raw: (&v.raw).into(),
            normalized: (&v.normalized).into(),
            is_zero,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SignatureDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_factor: Option<f64>,
    /// Zero flags keyed by kind tag (lexicographic order matches kind order).
    pub pattern: BTreeMap<&'static str, bool>,
    pub invariants: Vec<InvariantDoc>,
}

impl SignatureDoc {
    pub fn new(sig: &Signature, label: Option<&str>) -> Self {
        Self {
            label: label.map(str::to_owned),
            zero_factor: sig.zero_factor,
            pattern: InvariantKind::ALL
                .iter()
                .map(|&k| (k.tag(), sig.is_zero(k)))
                .collect(),
            invariants: sig
                .entries
                .iter()
                .map(|e| InvariantDoc::new(&e.value, e.is_zero))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerdictDoc {
    pub outcome: &'static str,
    pub separating_kinds: Vec<&'static str>,
    pub left: SignatureDoc,
    pub right: SignatureDoc,
}

impl VerdictDoc {
    pub fn new(v: &Verdict, left: Option<&str>, right: Option<&str>) -> Self {
        Self {
            outcome: match v.outcome {
                Outcome::Inequivalent => "Inequivalent",
                Outcome::Inconclusive => "Inconclusive",
            },
            separating_kinds: v.separating_kinds.iter().map(|k| k.tag()).collect(),
            left: SignatureDoc::new(&v.left, left),
            right: SignatureDoc::new(&v.right, right),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ResidualDoc {
    Exact { difference: ValueDoc },
    Float { log_magnitude: f64, phase: f64 },
}

impl From<&Residual> for ResidualDoc {
    fn from(r: &Residual) -> Self {
        match r {
            Residual::Exact(d) => ResidualDoc::Exact {
                difference: d.into(),
            },
            Residual::Float {
                log_magnitude,
                phase,
            } => ResidualDoc::Float {
                log_magnitude: *log_magnitude,
                phase: *phase,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CovarianceKindDoc {
    pub kind: &'static str,
    pub exponent: String,
    pub checks: usize,
    pub failures: usize,
    pub worst_trial: usize,
    pub worst_residual: ResidualDoc,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CovarianceDoc {
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    pub passed: bool,
    pub kinds: Vec<CovarianceKindDoc>,
}

pub fn exponent_string(e: &BigUint) -> String {
    e.to_string()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MeasureDoc {
    pub kind: &'static str,
    /// `null` when the invariant vanishes.
    pub log_magnitude: Option<f64>,
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_modulus_squared: Option<String>,
}

impl From<&Measure> for MeasureDoc {
    fn from(m: &Measure) -> Self {
        Self {
            kind: m.kind.tag(),
            log_magnitude: m.log_magnitude.is_finite().then_some(m.log_magnitude),
            value: m.value,
            exact_modulus_squared: m.exact_modulus_squared.as_ref().map(format_rational),
        }
    }
}

/// Top-level report; absent sections are omitted.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportFile {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub backend: String,
    pub seed: Option<u64>,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Vec<InvariantDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signature: Option<SignatureDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<VerdictDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covariance: Option<CovarianceDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureDoc>,
}

impl ReportFile {
    pub fn new(command: &'static str, backend: impl ToString, n: usize) -> Self {
        Self {
            tool: "slocc",
            version: env!("CARGO_PKG_VERSION"),
            command,
            backend: backend.to_string(),
            seed: None,
            n,
            label: None,
            invariants: None,
            signature: None,
            verdict: None,
            covariance: None,
            measure: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{gen_chi, gen_ghz};

    #[test]
    fn parses_documented_ghz_example() {
        let doc = br#"{"n":2, "format":"sparse-rational", "amplitudes":[{"index":0,"re":"1/1","im":"0/1"},{"index":3,"re":"1/1","im":"0/1"}], "norm_squared":"2/1"}"#;
        let s = parse_state(doc).unwrap();
        assert_eq!(s.amplitudes(), gen_ghz(2).unwrap().amplitudes());
    }

    #[test]
    fn chi1_roundtrip() {
        let s = gen_chi(1, 4).unwrap();
        let back = parse_state(serialize_state(&s).as_bytes()).unwrap();
        assert_eq!(back, s);
        assert_eq!(back.label(), Some("chi1"));
    }

    #[test]
    fn float_roundtrip() {
        let s = gen_chi(2, 4).unwrap().converted(crate::state::Backend::Float);
        let back = parse_state(serialize_state(&s).as_bytes()).unwrap();
        assert_eq!(back.amplitudes(), s.amplitudes());
    }

    #[test]
    fn index_out_of_range() {
        let doc = br#"{"n":4,"format":"sparse-rational","amplitudes":[{"index":16,"re":"1/1","im":"0/1"}]}"#;
        match parse_state(doc) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "amplitudes[0].index"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn duplicate_and_unordered_indices() {
        let dup = br#"{"n":2,"format":"sparse-rational","amplitudes":[{"index":1,"re":"1","im":"0"},{"index":1,"re":"2","im":"0"}]}"#;
        assert_eq!(parse_state(dup), Err(Error::DuplicateIndex(1)));
        let unordered = br#"{"n":2,"format":"sparse-rational","amplitudes":[{"index":2,"re":"1","im":"0"},{"index":1,"re":"2","im":"0"}]}"#;
        assert!(matches!(parse_state(unordered), Err(Error::Parse { .. })));
    }

    #[test]
    fn malformed_rational_reports_path() {
        let doc = br#"{"n":2,"format":"sparse-rational","amplitudes":[{"index":0,"re":"1/1","im":"0/1"},{"index":3,"re":"1/0","im":"0/1"}]}"#;
        match parse_state(doc) {
            Err(Error::Parse { path, message }) => {
                assert_eq!(path, "amplitudes[1].re");
                assert!(message.contains("zero denominator"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_reports_line() {
        match parse_state(b"{\n\"n\": 2,\n\"format\": }") {
            Err(Error::Parse { path, .. }) => assert!(path.starts_with("line 3"), "{path}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn odd_n_and_norm_mismatch() {
        let odd = br#"{"n":3,"format":"sparse-rational","amplitudes":[]}"#;
        assert_eq!(parse_state(odd), Err(Error::InvalidQubitCount(3)));
        let bad_norm = br#"{"n":2,"format":"sparse-rational","amplitudes":[{"index":0,"re":"1/1","im":"0/1"}],"norm_squared":"2/1"}"#;
        assert!(matches!(parse_state(bad_norm), Err(Error::Parse { path, .. }) if path == "norm_squared"));
    }

    #[test]
    fn dense_float_length_checked() {
        let doc = br#"{"n":2,"format":"dense-float","amplitudes":[[1.0,0.0]]}"#;
        assert_eq!(
            parse_state(doc),
            Err(Error::DimensionMismatch {
                expected: 4,
                found: 1
            })
        );
    }
}
