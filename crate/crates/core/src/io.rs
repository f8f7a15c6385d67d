//! JSON encoding of spaces, diagrams, matchings, certificates and reports.
//!
//! Numbers are written with 12 significant digits; integral values are
//! written without a fractional part and infinite values as the string
//! `"inf"` (or `"-inf"` for coordinates). Points are encoded per space:
//!
//! | space id    | point encoding                                        |
//! |-------------|-------------------------------------------------------|
//! | `halfplane` | `[birth, death]`                                      |
//! | `intervals` | `[lo, hi]` for closed intervals, else `"[lo,hi)"` etc. |
//! | `anagram`   | a one-character string                                |
//! | `stargraph` | an integer (cyclic groups) or an array of residues    |
//! | `finite`    | the point's label                                     |
//!
//! The basepoint is written as `"basepoint"` wherever it appears.

use serde_json::{json, Map, Number, Value};

use crate::diagram::Diagram;
use crate::duality::{DualCertificate, SupportFunction};
use crate::error::{Error, Result};
use crate::metric::{ExtReal, FiniteSpace, PExponent, PointedSpace, QuotientPoint};
use crate::spaces::{AnagramSpace, HalfPlanePoint, HalfPlaneQuotient, Interval, IntervalSpace, StarGraphSpace};
use crate::universality::Report;
use crate::wasserstein::{Matching, Slot};

pub const SIGNIFICANT_DIGITS: usize = 12;

/// Rounds a finite `x` to [`SIGNIFICANT_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x + 0.0;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse::<f64>()
        .expect("formatted float parses")
        + 0.0
}

/// A JSON number rounded to 12 significant digits, or `"inf"` / `"-inf"`.
pub fn number(x: f64) -> Value {
    if x.is_nan() {
        return Value::String("nan".into());
    }
    if x.is_infinite() {
        return Value::String(if x > 0.0 { "inf" } else { "-inf" }.into());
    }
    let r = round_sig(x);
    if r.fract() == 0.0 && r.abs() < 1e15 {
        Value::from(r as i64)
    } else {
        Number::from_f64(r).map(Value::Number).expect("finite float")
    }
}

pub fn ext(x: ExtReal) -> Value {
    number(x.value())
}

pub fn exponent(p: PExponent) -> Value {
    number(p.as_f64())
}

/// Rounds every floating-point number in `v`, recursively.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => number(n.as_f64().expect("f64 number")),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

/// Parses a number or one of the strings `"inf"`, `"-inf"`.
pub fn parse_real(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| Error::Parse(format!("bad number {n}"))),
        Value::String(s) => match s.trim() {
            "inf" | "+inf" | "infinity" => Ok(f64::INFINITY),
            "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
            t => t.parse().map_err(|_| Error::Parse(format!("not a number: {s:?}"))),
        },
        _ => Err(Error::Parse(format!("expected a number, got {v}"))),
    }
}

fn is_basepoint_literal(v: &Value) -> bool {
    matches!(v.as_str(), Some("basepoint"))
}

/// Point encoding for a space that can appear in files.
pub trait PointCodec: PointedSpace {
    /// The `"space"` tag used in diagram files.
    fn space_id(&self) -> &'static str;

    fn encode_point(&self, x: &Self::Point) -> Value;

    /// Decodes a non-basepoint literal; `"basepoint"` is handled by
    /// [`PointCodec::decode`].
    fn decode_point(&self, v: &Value) -> Result<Self::Point>;

    fn encode(&self, x: &Self::Point) -> Value {
        if self.is_basepoint(x) {
            Value::String("basepoint".into())
        } else {
            self.encode_point(x)
        }
    }

    fn decode(&self, v: &Value) -> Result<Self::Point> {
        if is_basepoint_literal(v) {
            Ok(self.basepoint())
        } else {
            self.decode_point(v)
        }
    }
}

fn pair(v: &Value) -> Result<(f64, f64)> {
    match v.as_array().map(Vec::as_slice) {
        Some([a, b]) => Ok((parse_real(a)?, parse_real(b)?)),
        _ => Err(Error::Parse(format!("expected a pair of numbers, got {v}"))),
    }
}

impl PointCodec for HalfPlaneQuotient {
    fn space_id(&self) -> &'static str {
        "halfplane"
    }

    fn encode_point(&self, x: &Self::Point) -> Value {
        match x {
            QuotientPoint::Collapsed => Value::String("basepoint".into()),
            QuotientPoint::Point(pt) => json!([number(pt.birth()), number(pt.death())]),
        }
    }

    fn decode_point(&self, v: &Value) -> Result<Self::Point> {
        if v.as_str() == Some("diagonal") {
            return Ok(QuotientPoint::Collapsed);
        }
        let (b, d) = pair(v)?;
        Ok(QuotientPoint::Point(HalfPlanePoint::try_new(b, d)?))
    }
}

fn endpoint_text(x: f64) -> String {
    match number(x) {
        Value::String(s) => s,
        n => n.to_string(),
    }
}

/// `"[0,1)"`-style notation for an interval.
pub fn interval_text(i: &Interval) -> String {
    match *i {
        Interval::Empty => "empty".into(),
        Interval::Span {
            lo,
            hi,
            lo_closed,
            hi_closed,
        } => format!(
            "{}{},{}{}",
            if lo_closed { '[' } else { '(' },
            endpoint_text(lo.0),
            endpoint_text(hi.0),
            if hi_closed { ']' } else { ')' }
        ),
    }
}

/// Parses `"[a,b]"`, `"[a,b)"`, `"(a,b]"`, `"(a,b)"` or `"empty"`.
pub fn parse_interval(s: &str) -> Result<Interval> {
    let s = s.trim();
    if s == "empty" {
        return Ok(Interval::Empty);
    }
    let bad = || Error::Parse(format!("bad interval {s:?}"));
    let mut chars = s.chars();
    let lo_closed = match chars.next() {
        Some('[') => true,
        Some('(') => false,
        _ => return Err(bad()),
    };
    let hi_closed = match chars.next_back() {
        Some(']') => true,
        Some(')') => false,
        _ => return Err(bad()),
    };
    let (a, b) = chars.as_str().split_once(',').ok_or_else(bad)?;
    let lo = parse_real(&Value::String(a.into())).map_err(|_| bad())?;
    let hi = parse_real(&Value::String(b.into())).map_err(|_| bad())?;
    Interval::new(lo, hi, lo_closed, hi_closed)
}

impl PointCodec for IntervalSpace {
    fn space_id(&self) -> &'static str {
        "intervals"
    }

    fn encode_point(&self, x: &Interval) -> Value {
        match *x {
            Interval::Span {
                lo,
                hi,
                lo_closed: true,
                hi_closed: true,
            } => json!([number(lo.0), number(hi.0)]),
            _ => Value::String(interval_text(x)),
        }
    }

    fn decode_point(&self, v: &Value) -> Result<Interval> {
        match v {
            Value::String(s) => parse_interval(s),
            _ => {
                let (lo, hi) = pair(v)?;
                Interval::new(lo, hi, true, true)
            }
        }
    }
}

impl PointCodec for AnagramSpace {
    fn space_id(&self) -> &'static str {
        "anagram"
    }

    fn encode_point(&self, x: &char) -> Value {
        Value::String(x.to_string())
    }

    fn decode_point(&self, v: &Value) -> Result<char> {
        let s = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected a character, got {v}")))?;
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(Error::Parse(format!("expected a single character, got {s:?}"))),
        }
    }
}

impl PointCodec for StarGraphSpace {
    fn space_id(&self) -> &'static str {
        "stargraph"
    }

    fn encode_point(&self, x: &Vec<u32>) -> Value {
        match x.as_slice() {
            [g] => Value::from(*g),
            _ => Value::from(x.clone()),
        }
    }

    fn decode_point(&self, v: &Value) -> Result<Vec<u32>> {
        let residue = |v: &Value| {
            v.as_u64()
                .and_then(|g| u32::try_from(g).ok())
                .ok_or_else(|| Error::Parse(format!("expected a nonnegative integer, got {v}")))
        };
        match v {
            Value::Array(items) => items.iter().map(residue).collect(),
            _ => Ok(vec![residue(v)?]),
        }
    }
}

impl PointCodec for FiniteSpace {
    fn space_id(&self) -> &'static str {
        "finite"
    }

    fn encode_point(&self, x: &usize) -> Value {
        Value::String(self.label(*x).to_string())
    }

    fn decode_point(&self, v: &Value) -> Result<usize> {
        let label = v
            .as_str()
            .ok_or_else(|| Error::Parse(format!("expected a point label, got {v}")))?;
        self.index_of(label)
            .ok_or_else(|| Error::Domain(format!("unknown point label {label:?}")))
    }
}

/// `{"space": id, "atoms": [[point, count], ...]}` in canonical atom order.
pub fn diagram_to_json<S: PointCodec>(d: &Diagram<S::Point>, space: &S) -> Value {
    let atoms: Vec<Value> = d.counts().map(|(x, k)| json!([space.encode(x), k])).collect();
    json!({ "space": space.space_id(), "atoms": atoms })
}

/// Parses diagram JSON. Atoms may repeat and may be the basepoint (dropped);
/// a `"space"` tag different from the space's id is a domain error.
pub fn diagram_from_json<S: PointCodec>(v: &Value, space: &S) -> Result<Diagram<S::Point>> {
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Parse("a diagram must be a JSON object".into()))?;
    let tag = obj
        .get("space")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("diagram is missing its \"space\" id".into()))?;
    if tag != space.space_id() {
        return Err(Error::Domain(format!(
            "diagram belongs to space {tag:?}, expected {:?}",
            space.space_id()
        )));
    }
    let atoms = obj
        .get("atoms")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("diagram is missing its \"atoms\" array".into()))?;
    let mut parsed = Vec::with_capacity(atoms.len());
    for atom in atoms {
        match atom.as_array().map(Vec::as_slice) {
            Some([x, k]) => {
                let k = k
                    .as_u64()
                    .ok_or_else(|| Error::Parse(format!("bad multiplicity {k}")))?;
                parsed.push((space.decode(x)?, k as usize));
            }
            _ => return Err(Error::Parse(format!("an atom is [point, count], got {atom}"))),
        }
    }
    Diagram::from_counts(parsed, space)
}

pub fn parse_diagram<S: PointCodec>(text: &str, space: &S) -> Result<Diagram<S::Point>> {
    diagram_from_json(&serde_json::from_str(text)?, space)
}

fn slot(s: Slot) -> Value {
    match s {
        Slot::Atom(i) => Value::from(i),
        Slot::Basepoint => Value::String("basepoint".into()),
    }
}

/// `{"p", "total", "pairs": [{"left", "right", "cost"}]}`.
pub fn matching_to_json(m: &Matching) -> Value {
    let pairs: Vec<Value> = m
        .pairs
        .iter()
        .map(|pr| json!({ "left": slot(pr.left), "right": slot(pr.right), "cost": ext(pr.cost) }))
        .collect();
    json!({ "p": exponent(m.p), "total": ext(m.total), "pairs": pairs })
}

/// `{"primal", "dual", "y", "h": [[point, value], ...]}`; `dual` and `h`
/// are `null` without a certificate.
pub fn certificate_to_json<S: PointCodec>(
    cert: &DualCertificate,
    h: Option<&SupportFunction<S::Point>>,
    space: &S,
) -> Value {
    let mut obj = Map::new();
    obj.insert("primal".into(), ext(cert.primal));
    obj.insert("dual".into(), cert.dual.map_or(Value::Null, number));
    obj.insert("y".into(), Value::Array(cert.y.iter().map(|&y| number(y)).collect()));
    obj.insert(
        "h".into(),
        h.map_or(Value::Null, |h| {
            Value::Array(h.support().map(|(x, v)| json!([space.encode(x), number(v)])).collect())
        }),
    );
    Value::Object(obj)
}

pub fn report_to_json(r: &Report) -> Value {
    round_json(serde_json::to_value(r).expect("reports serialize"))
}

pub fn reports_to_json(rs: &[Report]) -> Value {
    Value::Array(rs.iter().map(report_to_json).collect())
}
