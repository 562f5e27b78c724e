//! JSON encodings of quantum sets, relations, states, posets and chains.
//!
//! ```text
//! set       {"atoms":[{"label":str,"dim":int},…]}
//! relation  {"dom":set,"cod":set,"blocks":[{"from":str,"to":str,"basis":[matrix,…]},…]}
//! state     {"space":set,"blocks":[{"atom":str,"matrix":matrix},…]}
//! chain     {"order":relation,"steps":[relation,…]}
//! ```
//!
//! A matrix is its entries in row-major order, each a pair `[re, im]`. Floats
//! are written with 17 significant digits so that decoding is exact. A
//! poset file is the relation of its order.

use std::fmt;
use std::io;

use num_complex::Complex64;
use qcpo_core::qset::Atom;
use qcpo_core::{
    Chain, ComplexMatrix, DensityState, OperatorSubspace, QFunction, QPoset, QRelation, QuantumSet,
};
use serde_json::ser::Formatter;
use serde_json::{json, Map, Value};

/// A violation of the schema, located by a JSON pointer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub pointer: String,
    pub message: String,
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.pointer.is_empty() {
            "/"
        } else {
            &self.pointer
        };
        write!(f, "{at}: {}", self.message)
    }
}

impl std::error::Error for SchemaError {}

type JResult<T> = Result<T, SchemaError>;

fn err<T>(pointer: &str, message: impl Into<String>) -> JResult<T> {
    Err(SchemaError {
        pointer: pointer.to_string(),
        message: message.into(),
    })
}

fn child(pointer: &str, key: impl fmt::Display) -> String {
    // RFC 6901 escaping
    let key = key.to_string().replace('~', "~0").replace('/', "~1");
    format!("{pointer}/{key}")
}

/// Compact output, floats in `{:.16e}`.
struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        // -0 and 0 print the same
        let value = if value == 0.0 { 0.0 } else { value };
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_string(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits);
    serde::Serialize::serialize(value, &mut ser).expect("serializing a Value cannot fail");
    String::from_utf8(out).expect("JSON output is UTF-8")
}

pub fn parse(text: &str) -> JResult<Value> {
    serde_json::from_str(text).or_else(|e| err("", format!("invalid JSON: {e}")))
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    let mut entries = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            entries.push(complex(m[(i, j)]));
        }
    }
    Value::Array(entries)
}

pub fn set_to_json(set: &QuantumSet) -> Value {
    let atoms: Vec<Value> = set
        .atoms()
        .iter()
        .map(|a| json!({"label": a.label, "dim": a.dim}))
        .collect();
    json!({ "atoms": atoms })
}

pub fn relation_to_json(r: &QRelation) -> Value {
    let blocks: Vec<Value> = r
        .blocks()
        .map(|((i, j), s)| {
            let basis: Vec<Value> = s.basis().iter().map(matrix_to_json).collect();
            json!({"from": r.dom().label(i), "to": r.cod().label(j), "basis": basis})
        })
        .collect();
    json!({"dom": set_to_json(r.dom()), "cod": set_to_json(r.cod()), "blocks": blocks})
}

pub fn state_to_json(m: &DensityState) -> Value {
    let blocks: Vec<Value> = m
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, b)| json!({"atom": m.space().label(i), "matrix": matrix_to_json(b)}))
        .collect();
    json!({"space": set_to_json(m.space()), "blocks": blocks})
}

pub fn chain_to_json(c: &Chain) -> Value {
    let steps: Vec<Value> = c.steps().iter().map(|k| relation_to_json(k)).collect();
    json!({"order": relation_to_json(c.target().order()), "steps": steps})
}

fn object<'a>(v: &'a Value, p: &str, keys: &[&str]) -> JResult<&'a Map<String, Value>> {
    let Some(obj) = v.as_object() else {
        return err(p, "expected an object");
    };
    for k in keys {
        if !obj.contains_key(*k) {
            return err(p, format!("missing field `{k}`"));
        }
    }
    if let Some(extra) = obj.keys().find(|k| !keys.contains(&k.as_str())) {
        return err(&child(p, extra), "unknown field");
    }
    Ok(obj)
}

fn array<'a>(v: &'a Value, p: &str) -> JResult<&'a Vec<Value>> {
    v.as_array().map_or_else(|| err(p, "expected an array"), Ok)
}

fn string<'a>(v: &'a Value, p: &str) -> JResult<&'a str> {
    v.as_str().map_or_else(|| err(p, "expected a string"), Ok)
}

fn number(v: &Value, p: &str) -> JResult<f64> {
    match v.as_f64() {
        Some(x) if x.is_finite() => Ok(x),
        _ => err(p, "expected a finite number"),
    }
}

fn matrix_from_json(v: &Value, p: &str, rows: usize, cols: usize) -> JResult<ComplexMatrix> {
    let entries = array(v, p)?;
    if entries.len() != rows * cols {
        return err(
            p,
            format!(
                "expected {} entries for a {rows}x{cols} matrix, found {}",
                rows * cols,
                entries.len()
            ),
        );
    }
    let mut m = ComplexMatrix::zeros(rows, cols);
    for (k, e) in entries.iter().enumerate() {
        let ep = child(p, k);
        let pair = array(e, &ep)?;
        if pair.len() != 2 {
            return err(&ep, "expected [re, im]");
        }
        let re = number(&pair[0], &child(&ep, 0))?;
        let im = number(&pair[1], &child(&ep, 1))?;
        m[(k / cols, k % cols)] = Complex64::new(re, im);
    }
    Ok(m)
}

pub fn set_from_json(v: &Value, p: &str) -> JResult<QuantumSet> {
    let obj = object(v, p, &["atoms"])?;
    let ap = child(p, "atoms");
    let mut atoms = Vec::new();
    for (k, a) in array(&obj["atoms"], &ap)?.iter().enumerate() {
        let kp = child(&ap, k);
        let o = object(a, &kp, &["label", "dim"])?;
        let label = string(&o["label"], &child(&kp, "label"))?;
        let dim = match o["dim"].as_u64() {
            Some(d) if d >= 1 => d as usize,
            _ => return err(&child(&kp, "dim"), "expected a positive integer"),
        };
        atoms.push(Atom::new(label, dim));
    }
    QuantumSet::new(atoms).or_else(|e| err(&ap, e.to_string()))
}

pub fn relation_from_json(v: &Value, p: &str) -> JResult<QRelation> {
    let obj = object(v, p, &["dom", "cod", "blocks"])?;
    let dom = set_from_json(&obj["dom"], &child(p, "dom"))?;
    let cod = set_from_json(&obj["cod"], &child(p, "cod"))?;
    let bp = child(p, "blocks");
    let mut blocks = Vec::new();
    for (k, b) in array(&obj["blocks"], &bp)?.iter().enumerate() {
        let kp = child(&bp, k);
        let o = object(b, &kp, &["from", "to", "basis"])?;
        let from = string(&o["from"], &child(&kp, "from"))?;
        let to = string(&o["to"], &child(&kp, "to"))?;
        let Some(i) = dom.index_of(from) else {
            return err(
                &child(&kp, "from"),
                format!("no atom `{from}` in the domain"),
            );
        };
        let Some(j) = cod.index_of(to) else {
            return err(&child(&kp, "to"), format!("no atom `{to}` in the codomain"));
        };
        let basis_p = child(&kp, "basis");
        let mats = array(&o["basis"], &basis_p)?
            .iter()
            .enumerate()
            .map(|(n, m)| matrix_from_json(m, &child(&basis_p, n), cod.dim(j), dom.dim(i)))
            .collect::<JResult<Vec<_>>>()?;
        let space = OperatorSubspace::orthonormalize(&mats, dom.dim(i), cod.dim(j))
            .or_else(|e| err(&basis_p, e.to_string()))?;
        blocks.push(((i, j), space));
    }
    QRelation::from_blocks(&dom, &cod, blocks).or_else(|e| err(&bp, e.to_string()))
}

pub fn function_from_json(v: &Value, p: &str) -> JResult<QFunction> {
    QFunction::new(relation_from_json(v, p)?).or_else(|e| err(p, e.to_string()))
}

pub fn poset_from_json(v: &Value, p: &str) -> JResult<QPoset> {
    QPoset::new(relation_from_json(v, p)?).or_else(|e| err(p, e.to_string()))
}

pub fn state_from_json(v: &Value, p: &str) -> JResult<DensityState> {
    let obj = object(v, p, &["space", "blocks"])?;
    let space = set_from_json(&obj["space"], &child(p, "space"))?;
    let mut blocks: Vec<ComplexMatrix> = (0..space.len())
        .map(|i| ComplexMatrix::zeros(space.dim(i), space.dim(i)))
        .collect();
    let mut seen = vec![false; space.len()];
    let bp = child(p, "blocks");
    for (k, b) in array(&obj["blocks"], &bp)?.iter().enumerate() {
        let kp = child(&bp, k);
        let o = object(b, &kp, &["atom", "matrix"])?;
        let label = string(&o["atom"], &child(&kp, "atom"))?;
        let Some(i) = space.index_of(label) else {
            return err(
                &child(&kp, "atom"),
                format!("no atom `{label}` in the space"),
            );
        };
        if std::mem::replace(&mut seen[i], true) {
            return err(&child(&kp, "atom"), format!("atom `{label}` given twice"));
        }
        let d = space.dim(i);
        blocks[i] = matrix_from_json(&o["matrix"], &child(&kp, "matrix"), d, d)?;
    }
    DensityState::new(space, blocks).or_else(|e| err(p, e.to_string()))
}

pub fn chain_from_json(v: &Value, p: &str) -> JResult<Chain> {
    let obj = object(v, p, &["order", "steps"])?;
    let order = poset_from_json(&obj["order"], &child(p, "order"))?;
    let sp = child(p, "steps");
    let steps = array(&obj["steps"], &sp)?
        .iter()
        .enumerate()
        .map(|(k, s)| function_from_json(s, &child(&sp, k)))
        .collect::<JResult<Vec<_>>>()?;
    Chain::new(order, steps).or_else(|e| err(&sp, e.to_string()))
}
