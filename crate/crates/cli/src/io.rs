//! JSON encodings of weights and module descriptors.
//!
//! Scalars are strings in the scalar grammar (bare integers are accepted).
//! Half-integer labels `lambda_{k-1/2}` live under `"half"` keyed by `k`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use qsigma_core::classifier::{ModuleDescriptor, RawLabels, SSqWeight};
use qsigma_core::glinf::{GlWeight, LabelSeq};
use qsigma_core::quasipoly::QuasiPolynomial;
use qsigma_core::syntax::parse_scalar;
use qsigma_core::Scalar;
use serde_json::{json, Map, Value};

/// A malformed input, located by a JSON path such as `$.labels.int.except.3[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl InputError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        InputError {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for InputError {}

type Res<T> = Result<T, InputError>;

pub fn read_json(path: &Path) -> Res<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| InputError::new("", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| InputError::new("$", format!("invalid JSON in {}: {e}", path.display())))
}

fn object<'a>(v: &'a Value, path: &str) -> Res<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| InputError::new(path, "expected an object"))
}

fn array<'a>(v: &'a Value, path: &str) -> Res<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| InputError::new(path, "expected an array"))
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Res<&'a Value> {
    obj.get(key)
        .ok_or_else(|| InputError::new(path, format!("missing field \"{key}\"")))
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Res<()> {
    for k in obj.keys() {
        if !allowed.contains(&k.as_str()) {
            return Err(InputError::new(format!("{path}.{k}"), "unknown field"));
        }
    }
    Ok(())
}

pub fn scalar(v: &Value, path: &str) -> Res<Scalar> {
    match v {
        Value::String(s) => {
            parse_scalar(s).map_err(|e| InputError::new(path, format!("bad scalar {s:?}: {e}")))
        }
        Value::Number(n) => n
            .as_i64()
            .map(Scalar::from_int)
            .ok_or_else(|| InputError::new(path, "numbers must be integers; use a string")),
        _ => Err(InputError::new(path, "expected a scalar string")),
    }
}

fn integer(v: &Value, path: &str) -> Res<i64> {
    v.as_i64()
        .ok_or_else(|| InputError::new(path, "expected an integer"))
}

pub fn quasipoly(v: &Value, path: &str) -> Res<QuasiPolynomial> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["terms"], path)?;
    let tpath = format!("{path}.terms");
    let mut out = QuasiPolynomial::zero();
    let mut seen = Vec::new();
    for (i, t) in array(field(obj, "terms", path)?, &tpath)?.iter().enumerate() {
        let p = format!("{tpath}[{i}]");
        let o = object(t, &p)?;
        reject_unknown(o, &["base", "coeffs"], &p)?;
        let base = scalar(field(o, "base", &p)?, &format!("{p}.base"))?;
        if base.is_zero() {
            return Err(InputError::new(format!("{p}.base"), "bases must be nonzero"));
        }
        if seen.contains(&base) {
            return Err(InputError::new(format!("{p}.base"), format!("duplicate base {base}")));
        }
        seen.push(base.clone());
        let cpath = format!("{p}.coeffs");
        let coeffs = array(field(o, "coeffs", &p)?, &cpath)?
            .iter()
            .enumerate()
            .map(|(j, c)| scalar(c, &format!("{cpath}[{j}]")))
            .collect::<Res<Vec<_>>>()?;
        out.add_term(base, coeffs)
            .map_err(|e| InputError::new(&p, e.to_string()))?;
    }
    Ok(out)
}

pub fn quasipoly_json(p: &QuasiPolynomial) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(b, c)| {
            json!({
                "base": b.to_string(),
                "coeffs": c.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "terms": terms })
}

/// `{"p12": .., "p21": .., "c": ..}` with optional `"zero_split": [d01, d02]`;
/// `c` defaults to `P21(0) - P12(0)`.
pub fn ssq_weight(v: &Value, path: &str) -> Res<SSqWeight> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["p12", "p21", "c", "zero_split"], path)?;
    let p12 = quasipoly(field(obj, "p12", path)?, &format!("{path}.p12"))?;
    let p21 = quasipoly(field(obj, "p21", path)?, &format!("{path}.p21"))?;
    let mut w = SSqWeight::from_pair(p12, p21);
    if let Some(c) = obj.get("c") {
        w.c = scalar(c, &format!("{path}.c"))?;
    }
    if let Some(z) = obj.get("zero_split") {
        let zp = format!("{path}.zero_split");
        let a = array(z, &zp)?;
        if a.len() != 2 {
            return Err(InputError::new(zp, "expected two scalars"));
        }
        w.zero_split = Some((scalar(&a[0], &format!("{zp}[0]"))?, scalar(&a[1], &format!("{zp}[1]"))?));
    }
    w.validate().map_err(|e| InputError::new(path, e.to_string()))?;
    Ok(w)
}

pub fn ssq_json(w: &SSqWeight) -> Value {
    let mut v = json!({
        "p12": quasipoly_json(&w.p12),
        "p21": quasipoly_json(&w.p21),
        "c": w.c.to_string(),
    });
    if let Some((a, b)) = &w.zero_split {
        v["zero_split"] = json!([a.to_string(), b.to_string()]);
    }
    v
}

/// A tail is one scalar shared by every order `l`, or one scalar per `l`.
fn tails(v: Option<&Value>, n: usize, path: &str) -> Res<Vec<Scalar>> {
    match v {
        None => Ok(vec![Scalar::zero(); n]),
        Some(Value::Array(a)) => {
            if a.len() != n {
                return Err(InputError::new(path, format!("expected {n} entries, one per order")));
            }
            a.iter()
                .enumerate()
                .map(|(i, x)| scalar(x, &format!("{path}[{i}]")))
                .collect()
        }
        Some(x) => Ok(vec![scalar(x, path)?; n]),
    }
}

fn label_family(v: Option<&Value>, n: usize, path: &str) -> Res<Vec<LabelSeq>> {
    let mut seqs = vec![LabelSeq::default(); n];
    let Some(v) = v else { return Ok(seqs) };
    let obj = object(v, path)?;
    reject_unknown(obj, &["neg_tail", "pos_tail", "except"], path)?;
    let neg = tails(obj.get("neg_tail"), n, &format!("{path}.neg_tail"))?;
    let pos = tails(obj.get("pos_tail"), n, &format!("{path}.pos_tail"))?;
    for (l, seq) in seqs.iter_mut().enumerate() {
        seq.neg_tail = neg[l].clone();
        seq.pos_tail = pos[l].clone();
    }
    if let Some(e) = obj.get("except") {
        let epath = format!("{path}.except");
        for (k, vals) in object(e, &epath)? {
            let kp = format!("{epath}.{k}");
            let key: i64 = k
                .parse()
                .map_err(|_| InputError::new(&kp, "keys must be integers"))?;
            let vals = array(vals, &kp)?;
            if vals.len() != n {
                return Err(InputError::new(kp, format!("expected {n} values, one per order")));
            }
            for (l, x) in vals.iter().enumerate() {
                seqs[l].except.insert(key, scalar(x, &format!("{kp}[{l}]"))?);
            }
        }
    }
    Ok(seqs.into_iter().map(|s| s.normalized()).collect())
}

pub fn gl_weight(v: &Value, path: &str) -> Res<GlWeight> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["m", "charges", "labels"], path)?;
    let m = integer(field(obj, "m", path)?, &format!("{path}.m"))?;
    let m = usize::try_from(m).map_err(|_| InputError::new(format!("{path}.m"), "must be >= 0"))?;
    let n = m + 1;
    let cpath = format!("{path}.charges");
    let charges = match obj.get("charges") {
        None => vec![Scalar::zero(); n],
        Some(c) => {
            let a = array(c, &cpath)?;
            if a.len() != n {
                return Err(InputError::new(cpath, format!("expected {n} charges")));
            }
            a.iter()
                .enumerate()
                .map(|(i, x)| scalar(x, &format!("{cpath}[{i}]")))
                .collect::<Res<Vec<_>>>()?
        }
    };
    let lpath = format!("{path}.labels");
    let (integral, half) = match obj.get("labels") {
        None => (vec![LabelSeq::default(); n], vec![LabelSeq::default(); n]),
        Some(l) => {
            let lo = object(l, &lpath)?;
            reject_unknown(lo, &["int", "half"], &lpath)?;
            (
                label_family(lo.get("int"), n, &format!("{lpath}.int"))?,
                label_family(lo.get("half"), n, &format!("{lpath}.half"))?,
            )
        }
    };
    Ok(GlWeight {
        m,
        charges,
        integral,
        half,
    })
}

fn tail_json(xs: Vec<&Scalar>) -> Value {
    if xs.windows(2).all(|w| w[0] == w[1]) {
        json!(xs[0].to_string())
    } else {
        json!(xs.iter().map(|x| x.to_string()).collect::<Vec<_>>())
    }
}

fn family_json(seqs: &[LabelSeq]) -> Value {
    let keys: std::collections::BTreeSet<i64> =
        seqs.iter().flat_map(|s| s.except.keys().copied()).collect();
    let mut except = BTreeMap::new();
    for k in keys {
        let vals: Vec<String> = seqs.iter().map(|s| s.get(k).to_string()).collect();
        except.insert(k, vals);
    }
    // Integer keys in numeric order.
    let except: Map<String, Value> = except
        .into_iter()
        .map(|(k, v)| (k.to_string(), json!(v)))
        .collect();
    json!({
        "neg_tail": tail_json(seqs.iter().map(|s| &s.neg_tail).collect()),
        "pos_tail": tail_json(seqs.iter().map(|s| &s.pos_tail).collect()),
        "except": except,
    })
}

pub fn gl_weight_json(w: &GlWeight) -> Value {
    json!({
        "m": w.m,
        "charges": w.charges.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "labels": {
            "int": family_json(&w.integral),
            "half": family_json(&w.half),
        },
    })
}

pub fn descriptor(v: &Value, path: &str) -> Res<ModuleDescriptor> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["s", "m", "weight"], path)?;
    let s = scalar(field(obj, "s", path)?, &format!("{path}.s"))?;
    let weight = gl_weight(field(obj, "weight", path)?, &format!("{path}.weight"))?;
    let m = match obj.get("m") {
        Some(m) => integer(m, &format!("{path}.m"))?,
        None => weight.m as i64,
    };
    let d = ModuleDescriptor {
        s,
        m: usize::try_from(m).map_err(|_| InputError::new(format!("{path}.m"), "must be >= 0"))?,
        weight,
    };
    d.validate().map_err(|e| InputError::new(path, e.to_string()))?;
    Ok(d)
}

/// A single descriptor or an array of them.
pub fn descriptors(v: &Value) -> Res<Vec<ModuleDescriptor>> {
    match v {
        Value::Array(a) => a
            .iter()
            .enumerate()
            .map(|(i, d)| descriptor(d, &format!("$[{i}]")))
            .collect(),
        _ => Ok(vec![descriptor(v, "$")?]),
    }
}

pub fn descriptor_json(d: &ModuleDescriptor) -> Value {
    json!({
        "s": d.s.to_string(),
        "m": d.m,
        "weight": gl_weight_json(&d.weight),
    })
}

/// `{"raw_labels": [{"l": 1, "i": 1, "value": "1"}, ...], "c": ".."}`.
pub fn raw_labels(v: &Value, path: &str) -> Res<RawLabels> {
    let obj = object(v, path)?;
    reject_unknown(obj, &["raw_labels", "c"], path)?;
    let rpath = format!("{path}.raw_labels");
    let mut labels = BTreeMap::new();
    for (n, e) in array(field(obj, "raw_labels", path)?, &rpath)?.iter().enumerate() {
        let p = format!("{rpath}[{n}]");
        let o = object(e, &p)?;
        reject_unknown(o, &["l", "i", "value"], &p)?;
        let l = integer(field(o, "l", &p)?, &format!("{p}.l"))?;
        let i = integer(field(o, "i", &p)?, &format!("{p}.i"))?;
        if !(1..=2).contains(&i) {
            return Err(InputError::new(format!("{p}.i"), "must be 1 or 2"));
        }
        let value = scalar(field(o, "value", &p)?, &format!("{p}.value"))?;
        if labels.insert((l, i as u8), value).is_some() {
            return Err(InputError::new(p, format!("label ({l}, {i}) given twice")));
        }
    }
    let c = match obj.get("c") {
        Some(c) => scalar(c, &format!("{path}.c"))?,
        None => Scalar::zero(),
    };
    Ok(RawLabels { labels, c })
}

/// Any of the weight encodings accepted by `qfcheck`.
#[derive(Debug, Clone)]
pub enum WeightFile {
    SSq(SSqWeight),
    Gl(GlWeight),
    Raw(RawLabels),
}

pub fn weight_file(v: &Value) -> Res<WeightFile> {
    let obj = object(v, "$")?;
    if obj.contains_key("p12") || obj.contains_key("p21") {
        Ok(WeightFile::SSq(ssq_weight(v, "$")?))
    } else if obj.contains_key("raw_labels") {
        Ok(WeightFile::Raw(raw_labels(v, "$")?))
    } else if obj.contains_key("m") {
        Ok(WeightFile::Gl(gl_weight(v, "$")?))
    } else {
        Err(InputError::new(
            "$",
            "expected a weight with \"p12\"/\"p21\", \"raw_labels\", or \"m\"/\"labels\"",
        ))
    }
}
