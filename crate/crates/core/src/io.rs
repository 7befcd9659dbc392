//! JSON input and output.
//!
//! Rationals are written as `"p/q"` strings; exact radical values use the
//! display form of [`Surd`] (e.g. `"3/2*2^(1/2)"`); floats are emitted with
//! 17 significant digits.  Column indices are 0-based, point labels 1-based.

use crate::arrangements::{BuildingSet, Element};
use crate::blowup::{BlowupPoint, Component, GoodPerspective};
use crate::bundlejet::{Jet2, JetBlown2, JetOffsets, JetPair2};
use crate::error::{Error, Result};
use crate::flat::Flat;
use crate::fm::{check_covering, FmModelPoint, Forest, IndexNest, Labels};
use crate::jets::{Polynomial, Series, WeightVector};
use crate::rational::{fmt_f64, fmt_q, parse_q, q, Q};
use crate::surd::Surd;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet};

pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

/// Hex SHA-256 of input bytes, echoed in outputs.
pub fn input_hash(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

fn bad(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, found {v}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(what, v))
}

pub fn usize_from(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| bad("a non-negative integer", v))
}

pub fn u32_list(v: &Value) -> Result<Vec<u32>> {
    array(v, "an integer list")?.iter().map(|x| x.as_u64().map(|n| n as u32).ok_or_else(|| bad("an integer", x))).collect()
}

pub fn usize_list(v: &Value) -> Result<Vec<usize>> {
    array(v, "an integer list")?.iter().map(usize_from).collect()
}

pub fn q_from(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) if n.is_i64() => Ok(q(n.as_i64().expect("i64"))),
        Value::Number(n) => parse_q(&n.to_string()),
        _ => Err(bad("a rational", v)),
    }
}

pub fn q_list(v: &Value) -> Result<Vec<Q>> {
    array(v, "a list of rationals")?.iter().map(q_from).collect()
}

pub fn surd_from(v: &Value) -> Result<Surd> {
    match v {
        Value::String(s) => s.parse(),
        _ => q_from(v).map(Surd::from_q),
    }
}

pub fn surd_list(v: &Value) -> Result<Vec<Surd>> {
    array(v, "a list of numbers")?.iter().map(surd_from).collect()
}

pub fn f64_from(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| bad("a float", v)),
        Value::String(s) => s.trim().parse::<f64>().or_else(|_| parse_q(s).map(|x| crate::rational::q_to_f64(&x))).map_err(|_| bad("a float", v)),
        _ => Err(bad("a float", v)),
    }
}

pub fn f64_list(v: &Value) -> Result<Vec<f64>> {
    array(v, "a list of floats")?.iter().map(f64_from).collect()
}

pub fn q_json(x: &Q) -> Value {
    Value::String(fmt_q(x))
}

pub fn surd_json(x: &Surd) -> Value {
    Value::String(x.to_string())
}

pub fn surds_json(x: &[Surd]) -> Value {
    Value::Array(x.iter().map(surd_json).collect())
}

pub fn f64_json(x: f64) -> Value {
    serde_json::Number::from_f64(x).map(Value::Number).unwrap_or(Value::Null)
}

pub fn f64s_json(x: &[f64]) -> Value {
    Value::Array(x.iter().map(|v| f64_json(*v)).collect())
}

/// Deterministic pretty printer: sorted keys, two-space indentation,
/// floats with 17 significant digits.
pub fn to_json_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out
}

fn write_value(v: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match v {
        Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                out.push_str(&n.to_string());
            } else {
                out.push_str(&fmt_f64(n.as_f64().unwrap_or(f64::NAN)));
            }
        }
        Value::Array(a) if a.is_empty() => out.push_str("[]"),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            out.push('[');
            for (i, x) in a.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(x, depth, out);
            }
            out.push(']');
        }
        Value::Array(a) => {
            out.push_str("[\n");
            for (i, x) in a.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_value(x, depth + 1, out);
                out.push_str(if i + 1 < a.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(o) if o.is_empty() => out.push_str("{}"),
        Value::Object(o) => {
            out.push_str("{\n");
            let keys: BTreeSet<&String> = o.keys().collect();
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(k).expect("string"));
                out.push_str(": ");
                write_value(&o[k.as_str()], depth + 1, out);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// An error as JSON.
pub fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Parse(_) => "parse",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::OrderExceeded { .. } => "order_exceeded",
        Error::NotAMorphism { .. } => "not_a_morphism",
        Error::OutsideDomain(_) => "outside_domain",
        Error::Invalid(_) => "invalid",
        Error::CapExceeded { .. } => "cap_exceeded",
        Error::Inexact(_) => "inexact",
    };
    json!({"error": {"kind": kind, "message": e.to_string()}})
}

/// A building-set description: explicit elements or the diagonals of an
/// FM configuration space.
#[derive(Clone, Debug)]
pub enum BuildingInput {
    Set(BuildingSet),
    Fm { s: usize, m: usize, weights: WeightVector },
}

/// `{"dim": m, "elements": [{"name", "weights"} | {"name", "zeros"} |
/// {"name", "equations"}]}` or `{"fm": {"s", "weights"}}`.
pub fn parse_building_input(v: &Value) -> Result<BuildingInput> {
    if let Some(fm) = v.get("fm") {
        let s = usize_from(field(fm, "s")?)?;
        let weights = WeightVector::new(u32_list(field(fm, "weights")?)?)?;
        return Ok(BuildingInput::Fm { s, m: weights.len(), weights });
    }
    parse_building_set(v).map(BuildingInput::Set)
}

pub fn parse_building_set(v: &Value) -> Result<BuildingSet> {
    let dim = usize_from(field(v, "dim")?)?;
    let mut elements = Vec::new();
    for e in array(field(v, "elements")?, "an element list")? {
        let name = field(e, "name")?.as_str().ok_or_else(|| bad("a name", e))?;
        if let Some(w) = e.get("weights") {
            elements.push(Element::weighted(name, &u32_list(w)?)?);
        } else if let Some(z) = e.get("zeros") {
            let zeros: BTreeSet<usize> = usize_list(z)?.into_iter().collect();
            if zeros.iter().any(|&i| i >= dim) {
                return Err(Error::Parse(format!("zero column out of range in {name:?}")));
            }
            elements.push(Element::unweighted(name, Flat::coordinate(dim, &zeros)));
        } else if let Some(eqs) = e.get("equations") {
            let rows = array(eqs, "a list of equations")?.iter().map(q_list).collect::<Result<Vec<_>>>()?;
            if rows.iter().any(|r| r.len() != dim) {
                return Err(Error::Parse(format!("equation of wrong length in {name:?}")));
            }
            elements.push(Element::unweighted(name, Flat::from_equations(dim, rows)));
        } else {
            return Err(Error::Parse(format!("element {name:?} needs weights, zeros or equations")));
        }
    }
    BuildingSet::new(dim, elements)
}

/// `{"nest": [names], "h": {name: column}, "s": {name: ±1}}` (signs default to +1).
pub fn parse_perspective(v: &Value, bs: &BuildingSet) -> Result<GoodPerspective> {
    let mut entries = Vec::new();
    let h = field(v, "h")?;
    for n in array(field(v, "nest")?, "a list of names")? {
        let name = n.as_str().ok_or_else(|| bad("a name", n))?;
        let col = usize_from(h.get(name).ok_or_else(|| Error::Parse(format!("no control column for {name:?}")))?)?;
        let sign = match v.get("s").and_then(|s| s.get(name)) {
            None => 1,
            Some(x) => x.as_i64().filter(|&x| x == 1 || x == -1).ok_or_else(|| bad("a sign ±1", x))? as i8,
        };
        entries.push((name.to_string(), col, sign));
    }
    let refs: Vec<(&str, usize, i8)> = entries.iter().map(|(n, c, s)| (n.as_str(), *c, *s)).collect();
    GoodPerspective::from_names(bs, &refs)
}

/// `{"components": {name: {"bulk": [..]} | {"divisor": [..]}}}`.
pub fn parse_blowup_point(v: &Value, bs: &BuildingSet) -> Result<BlowupPoint> {
    let comps = field(v, "components")?;
    let mut out = Vec::with_capacity(bs.len());
    for (g, e) in bs.elements().iter().enumerate() {
        let c = comps.get(&e.name).ok_or_else(|| Error::Parse(format!("missing component {:?}", e.name)))?;
        let comp = if let Some(x) = c.get("bulk") {
            Component::Bulk(surd_list(x)?)
        } else if let Some(n) = c.get("divisor") {
            Component::divisor(bs.weights(g)?, surd_list(n)?)?
        } else {
            return Err(Error::Parse(format!("component {:?} must be bulk or divisor", e.name)));
        };
        out.push(comp);
    }
    Ok(BlowupPoint { components: out })
}

pub fn blowup_point_json(p: &BlowupPoint, bs: &BuildingSet) -> Value {
    let mut comps = Map::new();
    for (e, c) in bs.elements().iter().zip(&p.components) {
        let v = match c {
            Component::Bulk(x) => json!({"bulk": surds_json(x)}),
            Component::Divisor(n) => json!({"divisor": surds_json(n)}),
        };
        comps.insert(e.name.clone(), v);
    }
    json!({"components": comps})
}

/// `{"coords": [..]}` or a bare list.
pub fn parse_coords(v: &Value) -> Result<Vec<Surd>> {
    surd_list(v.get("coords").unwrap_or(v))
}

pub fn coords_json(y: &[Surd]) -> Value {
    json!({"coords": surds_json(y), "float": f64s_json(&y.iter().map(Surd::to_f64).collect::<Vec<_>>())})
}

/// A nest as a list of label lists, `[[1,2,3],[5,6]]`.
pub fn parse_index_nest(v: &Value, s: usize) -> Result<IndexNest> {
    let members = array(v, "a list of label lists")?
        .iter()
        .map(|m| usize_list(m).map(|l| l.into_iter().collect::<Labels>()))
        .collect::<Result<Vec<_>>>()?;
    IndexNest::new(s, members)
}

pub fn index_nest_json(n: &IndexNest) -> Value {
    Value::Array(n.members().iter().map(|m| json!(m.iter().collect::<Vec<_>>())).collect())
}

fn parent_json(f: &Forest) -> Value {
    Value::Object(f.parent_map().iter().map(|(c, p)| (c.to_string(), json!(p))).collect())
}

fn parse_parent(v: &Value, s: usize) -> Result<Forest> {
    let obj = v.as_object().ok_or_else(|| bad("a parent map", v))?;
    let mut parent = BTreeMap::new();
    for (k, p) in obj {
        let c: usize = k.parse().map_err(|_| Error::Parse(format!("bad label {k:?}")))?;
        parent.insert(c, usize_from(p)?);
    }
    Forest::new(s, parent)
}

/// Points of a configuration: `{"points": [[..], ..]}` or a bare list.
pub fn parse_config(v: &Value) -> Result<Vec<Vec<f64>>> {
    array(v.get("points").unwrap_or(v), "a list of points")?.iter().map(f64_list).collect()
}

pub fn config_json(c: &[Vec<f64>]) -> Value {
    json!({"points": c.iter().map(|p| f64s_json(p)).collect::<Vec<_>>()})
}

/// A polynomial curve coordinate as `[[exponent, "coefficient"], ..]`.
pub fn parse_series(v: &Value) -> Result<Series> {
    let pairs = array(v, "a list of [exponent, coefficient] pairs")?
        .iter()
        .map(|p| {
            let a = array(p, "an [exponent, coefficient] pair")?;
            if a.len() != 2 {
                return Err(bad("an [exponent, coefficient] pair", p));
            }
            Ok((usize_from(&a[0])?, q_from(&a[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(crate::fm::series_from_pairs(&pairs))
}

pub fn parse_curve(v: &Value) -> Result<Vec<Series>> {
    array(v, "a list of coordinate series")?.iter().map(parse_series).collect()
}

/// `{"curves": [point → [coordinate → pairs]]}` or a bare list.
pub fn parse_curves(v: &Value) -> Result<Vec<Vec<Series>>> {
    array(v.get("curves").unwrap_or(v), "a list of curves")?.iter().map(parse_curve).collect()
}

pub fn fm_point_json(p: &FmModelPoint) -> Value {
    json!({
        "weights": p.weights.as_slice(),
        "s": p.covering.nest.s(),
        "nest": index_nest_json(&p.covering.nest),
        "parent": parent_json(&p.covering.forest),
        "controls": p.covering.controls.iter().map(|c| json!(c.iter().collect::<Vec<_>>())).collect::<Vec<_>>(),
        "roots": Value::Object(p.roots.iter().map(|(l, x)| (l.to_string(), f64s_json(x))).collect()),
        "screens": p.screens.iter().map(|s| f64s_json(s)).collect::<Vec<_>>(),
        "t": f64s_json(&p.t),
    })
}

pub fn parse_fm_point(v: &Value) -> Result<FmModelPoint> {
    let weights = WeightVector::new(u32_list(field(v, "weights")?)?)?;
    let s = usize_from(field(v, "s")?)?;
    let nest = parse_index_nest(field(v, "nest")?, s)?;
    let forest = parse_parent(field(v, "parent")?, s)?;
    let covering = check_covering(&nest, &forest)?;
    let mut roots = BTreeMap::new();
    for (k, x) in field(v, "roots")?.as_object().ok_or_else(|| Error::Parse("roots must be an object".into()))? {
        roots.insert(k.parse::<usize>().map_err(|_| Error::Parse(format!("bad label {k:?}")))?, f64_list(x)?);
    }
    let screens = array(field(v, "screens")?, "a list of screens")?.iter().map(f64_list).collect::<Result<Vec<_>>>()?;
    let t = f64_list(field(v, "t")?)?;
    if screens.len() != nest.len() || t.len() != nest.len() {
        return Err(Error::Parse("one screen and one control per nest member are required".into()));
    }
    for (k, sc) in screens.iter().enumerate() {
        if sc.len() != covering.controls[k].len() * weights.len() {
            return Err(Error::DimensionMismatch { expected: covering.controls[k].len() * weights.len(), found: sc.len() });
        }
    }
    Ok(FmModelPoint { weights, covering, roots, screens, t })
}

fn upper(h: &[Vec<Surd>]) -> Value {
    let m = h.len();
    Value::Array((0..m).flat_map(|i| (i..m).map(move |j| (i, j))).map(|(i, j)| surd_json(&h[i][j])).collect())
}

fn parse_upper(v: &Value, m: usize) -> Result<Vec<Vec<Surd>>> {
    let flat = surd_list(v)?;
    if flat.len() != m * (m + 1) / 2 {
        return Err(Error::DimensionMismatch { expected: m * (m + 1) / 2, found: flat.len() });
    }
    let mut h = vec![vec![Surd::from_i64(0); m]; m];
    let mut it = flat.into_iter();
    for i in 0..m {
        for j in i..m {
            let x = it.next().expect("length checked");
            h[j][i] = x.clone();
            h[i][j] = x;
        }
    }
    Ok(h)
}

/// `{"x": [..], "y": .., "p": [..], "h": [upper triangle, row-major]}`.
pub fn parse_jet(v: &Value) -> Result<Jet2> {
    let x = surd_list(field(v, "x")?)?;
    let m = x.len();
    Jet2::new(x, surd_from(field(v, "y")?)?, surd_list(field(v, "p")?)?, parse_upper(field(v, "h")?, m)?)
}

pub fn jet_json(j: &Jet2) -> Value {
    json!({"x": surds_json(&j.x), "y": surd_json(&j.y), "p": surds_json(&j.p), "h": upper(&j.h)})
}

pub fn parse_jet_pair(v: &Value) -> Result<JetPair2> {
    Ok(JetPair2 { first: parse_jet(field(v, "first")?)?, second: parse_jet(field(v, "second")?)? })
}

pub fn jet_pair_json(p: &JetPair2) -> Value {
    json!({"first": jet_json(&p.first), "second": jet_json(&p.second)})
}

pub fn parse_jet_blown(v: &Value) -> Result<JetBlown2> {
    let first = parse_jet(field(v, "first")?)?;
    let m = first.dim();
    Ok(JetBlown2 {
        lambda: surd_from(field(v, "lambda")?)?,
        dx: surd_list(field(v, "dx")?)?,
        dy: surd_from(field(v, "dy")?)?,
        dp: surd_list(field(v, "dp")?)?,
        dh: parse_upper(field(v, "dh")?, m)?,
        first,
    })
}

pub fn jet_blown_json(b: &JetBlown2) -> Value {
    json!({
        "first": jet_json(&b.first),
        "lambda": surd_json(&b.lambda),
        "dx": surds_json(&b.dx),
        "dy": surd_json(&b.dy),
        "dp": surds_json(&b.dp),
        "dh": upper(&b.dh),
    })
}

pub fn jet_offsets_json(o: &JetOffsets) -> Value {
    json!({"dx": surds_json(&o.dx), "dy": surd_json(&o.dy), "dp": surds_json(&o.dp), "dh": upper(&o.dh)})
}

/// `{"nvars": m, "terms": [[[exponents], "coefficient"], ..]}`.
pub fn parse_polynomial(v: &Value) -> Result<Polynomial> {
    let nvars = usize_from(field(v, "nvars")?)?;
    let terms = array(field(v, "terms")?, "a list of terms")?
        .iter()
        .map(|t| {
            let a = array(t, "an [exponents, coefficient] pair")?;
            if a.len() != 2 {
                return Err(bad("an [exponents, coefficient] pair", t));
            }
            Ok((u32_list(&a[0])?, q_from(&a[1])?))
        })
        .collect::<Result<Vec<_>>>()?;
    Polynomial::from_terms(nvars, terms)
}
