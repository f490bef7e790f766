//! JSON documents for spaces, functions, densities, capacities and points.
//!
//! Scores are JSON numbers, except bottom which is the string `"-inf"`; no
//! other non-numeric token is accepted. Object keys keep their document
//! order, which becomes the label order of any space inferred from them.

use std::collections::BTreeSet;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::capacity::{Capacity, PossibilityProfile};
use crate::convex::{GeneratorSet, TropicalPoint, WeightVector};
use crate::error::{Error, Result};
use crate::measure::{Density, MaxPlusDensity, MaxTimesDensity, MetaDensity, Support, SupportElement};
use crate::score::{format_significant, ExtendedScore, Semiring, UnitScore};
use crate::space::{FiniteSpace, RealFunction, SubsetMask};

fn bad(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

/// Reads a document from a file, or parses the argument itself as JSON when
/// no such file exists.
pub fn load(source: &str) -> Result<Value> {
    if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source)?;
        Ok(serde_json::from_str(&text)?)
    } else {
        serde_json::from_str(source).map_err(|e| bad(format!("{source:?} is neither a file nor valid JSON ({e})")))
    }
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| bad(format!("{what} must be a JSON object")))
}

fn field<'a>(v: &'a Value, key: &str, what: &str) -> Result<&'a Value> {
    object(v, what)?.get(key).ok_or_else(|| bad(format!("{what} lacks the {key:?} field")))
}

fn number(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| bad(format!("{what}: expected a number, got {v}")))
}

fn score(v: &Value, what: &str) -> Result<ExtendedScore> {
    match v {
        Value::String(s) if s == "-inf" => Ok(ExtendedScore::BOTTOM),
        Value::Number(_) => ExtendedScore::from_f64(number(v, what)?),
        _ => Err(bad(format!("{what}: expected a number or \"-inf\", got {v}"))),
    }
}

fn score_value(s: ExtendedScore) -> Value {
    match s.value() {
        None => Value::String("-inf".into()),
        Some(v) => json!(v),
    }
}

fn kind_of(v: &Value) -> Option<&str> {
    v.get("kind").and_then(Value::as_str)
}

/// `{"points": ["a", "b"]}`.
pub fn parse_space(v: &Value) -> Result<FiniteSpace> {
    let points =
        field(v, "points", "space document")?.as_array().ok_or_else(|| bad("\"points\" must be an array of labels"))?;
    let labels = points
        .iter()
        .map(|p| p.as_str().map(str::to_string).ok_or_else(|| bad(format!("point label {p} is not a string"))))
        .collect::<Result<Vec<_>>>()?;
    FiniteSpace::new(labels)
}

pub fn space_to_json(space: &FiniteSpace) -> Value {
    json!({ "points": space.labels() })
}

/// The space given explicitly, or the one spelled by the keys of `values`.
fn space_for(values: &Map<String, Value>, space: Option<&FiniteSpace>) -> Result<FiniteSpace> {
    match space {
        Some(s) => Ok(s.clone()),
        None => FiniteSpace::new(values.keys().cloned()),
    }
}

fn check_keys(values: &Map<String, Value>, space: &FiniteSpace) -> Result<()> {
    for key in values.keys() {
        if !space.contains(key) {
            return Err(Error::Coverage(format!("{key:?} is not a point of the space")));
        }
    }
    for label in space.labels() {
        if !values.contains_key(label) {
            return Err(Error::Coverage(format!("missing value for {label:?}")));
        }
    }
    Ok(())
}

/// `{"values": {"a": 2.0, "b": 5.0}}`.
pub fn parse_function(v: &Value, space: Option<&FiniteSpace>) -> Result<RealFunction> {
    let values = object(field(v, "values", "function document")?, "\"values\"")?;
    let space = space_for(values, space)?;
    check_keys(values, &space)?;
    let vals = space.labels().iter().map(|l| number(&values[l], l)).collect::<Result<Vec<_>>>()?;
    RealFunction::new(&space, vals)
}

pub fn function_to_json(phi: &RealFunction) -> Value {
    let values: Map<String, Value> =
        phi.space().labels().iter().zip(phi.values()).map(|(l, v)| (l.clone(), json!(v))).collect();
    json!({ "values": values })
}

/// `{"members": ["a", "c"]}`.
pub fn parse_subset(v: &Value, space: &FiniteSpace) -> Result<SubsetMask> {
    let members =
        field(v, "members", "subset document")?.as_array().ok_or_else(|| bad("\"members\" must be an array"))?;
    let labels = members
        .iter()
        .map(|m| m.as_str().ok_or_else(|| bad(format!("member {m} is not a string"))))
        .collect::<Result<Vec<_>>>()?;
    SubsetMask::from_labels(space, labels)
}

/// A density document of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyDensity {
    MaxPlus(MaxPlusDensity),
    MaxTimes(MaxTimesDensity),
}

/// `{"kind": "maxplus" | "maxtimes", "values": {...}}`.
pub fn parse_density(v: &Value, space: Option<&FiniteSpace>) -> Result<AnyDensity> {
    let kind = kind_of(v).ok_or_else(|| bad("density document lacks a \"kind\" tag"))?;
    let values = object(field(v, "values", "density document")?, "\"values\"")?;
    let space = space_for(values, space)?;
    check_keys(values, &space)?;
    match kind {
        "maxplus" => {
            let w = space.labels().iter().map(|l| score(&values[l], l)).collect::<Result<Vec<_>>>()?;
            Ok(AnyDensity::MaxPlus(Density::new(&space, w)?))
        }
        "maxtimes" => {
            let w =
                space.labels().iter().map(|l| UnitScore::new(number(&values[l], l)?)).collect::<Result<Vec<_>>>()?;
            Ok(AnyDensity::MaxTimes(Density::new(&space, w)?))
        }
        other => Err(bad(format!("unknown density kind {other:?}"))),
    }
}

pub fn parse_maxplus_density(v: &Value, space: Option<&FiniteSpace>) -> Result<MaxPlusDensity> {
    match parse_density(v, space)? {
        AnyDensity::MaxPlus(d) => Ok(d),
        AnyDensity::MaxTimes(_) => Err(bad("expected a maxplus density")),
    }
}

/// Conversion of library values into their JSON documents.
pub trait ToDocument {
    /// Key naming this value when it sits inside a support document.
    const ELEMENT_KEY: &'static str;
    fn to_document(&self) -> Value;
}

impl<S: Semiring + serde::Serialize> ToDocument for Density<S> {
    const ELEMENT_KEY: &'static str = "density";

    fn to_document(&self) -> Value {
        let values: Map<String, Value> = self
            .space()
            .labels()
            .iter()
            .zip(self.weights())
            .map(|(l, w)| (l.clone(), serde_json::to_value(w).expect("scores serialize")))
            .collect();
        json!({ "kind": S::KIND, "values": values })
    }
}

impl<T: ToDocument + SupportElement, S: Semiring + serde::Serialize> ToDocument for Support<T, S> {
    const ELEMENT_KEY: &'static str = "meta";

    fn to_document(&self) -> Value {
        let support: Vec<Value> = self
            .entries()
            .iter()
            .map(|(t, w)| {
                let mut entry = Map::new();
                entry.insert(T::ELEMENT_KEY.to_string(), t.to_document());
                entry.insert("weight".to_string(), serde_json::to_value(w).expect("scores serialize"));
                Value::Object(entry)
            })
            .collect();
        json!({ "support": support })
    }
}

impl ToDocument for PossibilityProfile {
    const ELEMENT_KEY: &'static str = "profile";

    fn to_document(&self) -> Value {
        profile_to_json(self)
    }
}

/// `{"support": [{"density": {...}, "weight": w}, ...]}` with maxplus densities.
pub fn parse_meta(v: &Value, space: Option<&FiniteSpace>) -> Result<MetaDensity> {
    let support =
        field(v, "support", "meta-density document")?.as_array().ok_or_else(|| bad("\"support\" must be an array"))?;
    let mut entries = Vec::with_capacity(support.len());
    let mut shared = space.cloned();
    for (i, entry) in support.iter().enumerate() {
        let density = parse_maxplus_density(field(entry, "density", "support entry")?, shared.as_ref())?;
        let weight = score(field(entry, "weight", "support entry")?, &format!("weight of entry {i}"))?;
        shared.get_or_insert_with(|| density.space().clone());
        entries.push((density, weight));
    }
    MetaDensity::new(entries)
}

/// A capacity document of either kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCapacity {
    Capacity(Capacity),
    Possibility(PossibilityProfile),
}

impl AnyCapacity {
    pub fn space(&self) -> &FiniteSpace {
        match self {
            AnyCapacity::Capacity(c) => c.space(),
            AnyCapacity::Possibility(p) => p.space(),
        }
    }

    /// The full table; possibility profiles are expanded.
    pub fn to_capacity(&self) -> Capacity {
        match self {
            AnyCapacity::Capacity(c) => c.clone(),
            AnyCapacity::Possibility(p) => crate::capacity::capacity_from_profile(p),
        }
    }
}

/// `{"kind": "capacity", "sets": {...}}` or `{"kind": "possibility", "singletons": {...}}`.
///
/// Without an explicit space, a capacity's space is the sorted set of labels
/// appearing in its keys.
pub fn parse_capacity(v: &Value, space: Option<&FiniteSpace>) -> Result<AnyCapacity> {
    match kind_of(v) {
        Some("possibility") => Ok(AnyCapacity::Possibility(parse_profile(v, space)?)),
        Some("capacity") => {
            let sets = object(field(v, "sets", "capacity document")?, "\"sets\"")?;
            let space = match space {
                Some(s) => s.clone(),
                None => {
                    let labels: BTreeSet<&str> =
                        sets.keys().flat_map(|k| k.split('|')).filter(|l| !l.is_empty()).collect();
                    FiniteSpace::new(labels)?
                }
            };
            if space.labels().iter().any(|l| l.contains('|')) {
                return Err(bad("labels of a capacity document may not contain '|'"));
            }
            if space.len() > crate::capacity::MAX_CAPACITY_POINTS {
                return Err(Error::SpaceTooLarge { found: space.len(), max: crate::capacity::MAX_CAPACITY_POINTS });
            }
            let mut table: Vec<Option<f64>> = vec![None; 1 << space.len()];
            for (key, value) in sets {
                let labels: Vec<&str> = key.split('|').filter(|l| !l.is_empty()).collect();
                let bits = SubsetMask::from_labels(&space, labels.iter().copied())?.bits();
                if labels.len() != SubsetMask::from_bits(&space, bits).len() {
                    return Err(bad(format!("set key {key:?} repeats a label")));
                }
                if table[bits].replace(number(value, key)?).is_some() {
                    return Err(bad(format!("set key {key:?} duplicates another key")));
                }
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(bits, v)| {
                    v.ok_or_else(|| bad(format!("missing set {:?}", set_key(&SubsetMask::from_bits(&space, bits)))))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(AnyCapacity::Capacity(Capacity::new(&space, table)?))
        }
        Some(other) => Err(bad(format!("unknown capacity kind {other:?}"))),
        None => Err(bad("capacity document lacks a \"kind\" tag")),
    }
}

/// `|`-joined sorted labels.
pub fn set_key(set: &SubsetMask) -> String {
    let mut labels = set.labels();
    labels.sort_unstable();
    labels.join("|")
}

pub fn capacity_to_json(c: &Capacity) -> Value {
    let mut entries: Vec<(String, f64)> = (0..c.table().len())
        .map(|bits| (set_key(&SubsetMask::from_bits(c.space(), bits)), c.value_bits(bits).get()))
        .collect();
    entries.sort_by(|a, b| {
        (a.0.matches('|').count() + usize::from(!a.0.is_empty()), &a.0)
            .cmp(&(b.0.matches('|').count() + usize::from(!b.0.is_empty()), &b.0))
    });
    let sets: Map<String, Value> = entries.into_iter().map(|(k, v)| (k, json!(v))).collect();
    json!({ "kind": "capacity", "sets": sets })
}

/// `{"kind": "possibility", "singletons": {...}}`.
pub fn parse_profile(v: &Value, space: Option<&FiniteSpace>) -> Result<PossibilityProfile> {
    let singletons = object(field(v, "singletons", "possibility document")?, "\"singletons\"")?;
    let space = space_for(singletons, space)?;
    check_keys(singletons, &space)?;
    let values = space.labels().iter().map(|l| number(&singletons[l], l)).collect::<Result<Vec<_>>>()?;
    PossibilityProfile::new(&space, values)
}

pub fn profile_to_json(p: &PossibilityProfile) -> Value {
    let singletons: Map<String, Value> =
        p.space().labels().iter().zip(p.singletons()).map(|(l, u)| (l.clone(), json!(u.get()))).collect();
    json!({ "kind": "possibility", "singletons": singletons })
}

/// A bare coordinate array `[0, 3]`.
pub fn parse_point(v: &Value) -> Result<TropicalPoint> {
    if let Some(points) = v.get("points") {
        let set = parse_points(&json!({ "points": points }))?;
        if set.len() != 1 {
            return Err(bad("expected a single point"));
        }
        return Ok(set.points()[0].clone());
    }
    let coords = v
        .as_array()
        .ok_or_else(|| bad("a point is a JSON array of numbers"))?
        .iter()
        .enumerate()
        .map(|(i, c)| number(c, &format!("coordinate {i}")))
        .collect::<Result<Vec<_>>>()?;
    TropicalPoint::new(coords)
}

/// `{"dim": 2, "points": [[0, 3], [2, 0]]}`; `dim` is optional but checked when present.
pub fn parse_points(v: &Value) -> Result<GeneratorSet> {
    let points = field(v, "points", "points document")?
        .as_array()
        .ok_or_else(|| bad("\"points\" must be an array of arrays"))?
        .iter()
        .map(parse_point)
        .collect::<Result<Vec<_>>>()?;
    if let Some(dim) = v.get("dim") {
        let dim = dim.as_u64().ok_or_else(|| bad("\"dim\" must be a positive integer"))? as usize;
        if let Some(p) = points.iter().find(|p| p.dim() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: p.dim() });
        }
    }
    GeneratorSet::new(points)
}

pub fn points_to_json(gens: &GeneratorSet) -> Value {
    json!({ "dim": gens.dim(), "points": gens.points().iter().map(|p| p.coordinates()).collect::<Vec<_>>() })
}

/// `{"weights": [0, "-inf", -2]}` or a bare array.
pub fn parse_weight_list(v: &Value) -> Result<Vec<ExtendedScore>> {
    let list = match v.get("weights") {
        Some(w) => w,
        None => v,
    };
    list.as_array()
        .ok_or_else(|| bad("weights must be an array"))?
        .iter()
        .enumerate()
        .map(|(i, w)| score(w, &format!("weight {i}")))
        .collect()
}

pub fn parse_weights(v: &Value) -> Result<WeightVector> {
    WeightVector::new(parse_weight_list(v)?)
}

pub fn weights_to_json(w: &WeightVector) -> Value {
    json!({ "weights": w.weights().iter().map(|&s| score_value(s)).collect::<Vec<_>>() })
}

/// `[0,3]`: coordinates with 9 significant digits.
pub fn format_point(p: &TropicalPoint) -> String {
    let coords: Vec<String> = p.coordinates().iter().map(|&c| format_significant(c)).collect();
    format!("[{}]", coords.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn space_and_function_documents() {
        let space = parse_space(&json!({"points": ["a", "b", "c"]})).unwrap();
        let phi = parse_function(&json!({"values": {"c": 2.0, "a": 0.0, "b": 1.0}}), Some(&space)).unwrap();
        assert_eq!(phi.values(), &[0.0, 1.0, 2.0]);
        let inferred = parse_function(&json!({"values": {"b": 5.0, "a": 2.0}}), None).unwrap();
        assert_eq!(inferred.space().labels(), &["b".to_string(), "a".to_string()]);
        assert!(matches!(parse_function(&json!({"values": {"a": 0.0}}), Some(&space)), Err(Error::Coverage(_))));
        assert!(parse_function(&json!({"values": {"a": 0.0, "b": 1.0, "c": 2.0, "d": 3.0}}), Some(&space)).is_err());
        let subset = parse_subset(&json!({"members": ["a", "c"]}), &space).unwrap();
        assert_eq!(subset.labels(), vec!["a", "c"]);
        assert!(parse_space(&json!({"points": []})).is_err());
    }

    #[test]
    fn density_documents() {
        let doc = json!({"kind": "maxplus", "values": {"a": 0, "b": "-inf", "c": -2}});
        let AnyDensity::MaxPlus(d) = parse_density(&doc, None).unwrap() else { panic!() };
        assert!(d.weight(1).is_bottom());
        assert_eq!(parse_maxplus_density(&d.to_document(), None).unwrap(), d);
        assert!(parse_density(&json!({"kind": "maxplus", "values": {"a": "inf"}}), None).is_err());
        assert!(parse_density(&json!({"kind": "maxplus", "values": {"a": -1}}), None).is_err());
        assert!(parse_density(&json!({"values": {"a": 0}}), None).is_err());
        let doc = json!({"kind": "maxtimes", "values": {"a": 1, "b": 0.5}});
        assert!(matches!(parse_density(&doc, None).unwrap(), AnyDensity::MaxTimes(_)));
    }

    #[test]
    fn meta_documents() {
        let doc = json!({"support": [
            {"density": {"kind": "maxplus", "values": {"a": 0, "b": "-inf"}}, "weight": 0},
            {"density": {"kind": "maxplus", "values": {"b": 0, "a": "-inf"}}, "weight": -1},
        ]});
        let meta = parse_meta(&doc, None).unwrap();
        assert_eq!(meta.len(), 2);
        assert_eq!(meta.entries()[1].0.weights()[1], ExtendedScore::ZERO);
        let again = parse_meta(&meta.to_document(), None).unwrap();
        assert!(meta.approx_eq(&again, 0.0));
    }

    #[test]
    fn capacity_documents() {
        let doc = json!({"kind": "capacity", "sets": {"": 0.0, "a": 0.3, "b": 0.3, "a|b": 1.0}});
        let AnyCapacity::Capacity(c) = parse_capacity(&doc, None).unwrap() else { panic!() };
        assert_eq!(c.value_bits(1).get(), 0.3);
        assert_eq!(capacity_to_json(&c), doc);
        let missing = json!({"kind": "capacity", "sets": {"": 0.0, "a": 0.3, "a|b": 1.0}});
        assert!(parse_capacity(&missing, None).is_err());
        let swapped = json!({"kind": "capacity", "sets": {"": 0.0, "a": 0.3, "b": 0.3, "b|a": 1.0}});
        assert!(parse_capacity(&swapped, None).is_ok());
        let not_full = json!({"kind": "capacity", "sets": {"": 0.0, "a": 0.3, "b": 0.3, "a|b": 0.9}});
        assert!(matches!(parse_capacity(&not_full, None), Err(Error::InvalidCapacity(_))));

        let doc = json!({"kind": "possibility", "singletons": {"a": 1.0, "b": 0.5}});
        let AnyCapacity::Possibility(p) = parse_capacity(&doc, None).unwrap() else { panic!() };
        assert_eq!(profile_to_json(&p), doc);
    }

    #[test]
    fn point_documents() {
        let gens = parse_points(&json!({"dim": 2, "points": [[0, 3], [2, 0]]})).unwrap();
        assert_eq!(gens.len(), 2);
        assert!(parse_points(&json!({"dim": 3, "points": [[0, 3], [2, 0]]})).is_err());
        assert!(parse_points(&json!({"points": [[0, 3], [2]]})).is_err());
        let w = parse_weights(&json!({"weights": [0, "-inf", -2]})).unwrap();
        assert!(w.weights()[1].is_bottom());
        assert_eq!(weights_to_json(&w), json!({"weights": [0.0, "-inf", -2.0]}));
        assert!(parse_weights(&json!({"weights": [-1, -2]})).is_err());
        assert_eq!(format_point(&parse_point(&json!([0.0, 3.0])).unwrap()), "[0,3]");
    }
}
