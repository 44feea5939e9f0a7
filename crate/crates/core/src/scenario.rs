//! Scenario documents: a curve, a sheaf or generated pair on it, and an
//! optional twist. The format is JSON with integers and booleans only.

use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::curve::{ChainCurve, GeneratedPairData, LineBundleTwist};
use crate::error::{Error, Result};

/// A sheaf given by multirank and multidegree, with optional per-component
/// semistability hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafInput {
    pub multirank: Vec<BigInt>,
    pub multidegree: Vec<BigInt>,
    pub restriction_semistable: Vec<bool>,
    pub restriction_stable: Vec<bool>,
}

impl SheafInput {
    /// No hypotheses declared.
    pub fn new(multirank: Vec<BigInt>, multidegree: Vec<BigInt>) -> Self {
        let n = multirank.len();
        SheafInput {
            multirank,
            multidegree,
            restriction_semistable: vec![false; n],
            restriction_stable: vec![false; n],
        }
    }

    pub fn validate(&self, curve: &ChainCurve) -> Result<()> {
        curve.check_len("sheaf.multirank", self.multirank.len())?;
        curve.check_len("sheaf.multidegree", self.multidegree.len())?;
        curve.check_len(
            "sheaf.restriction_semistable",
            self.restriction_semistable.len(),
        )?;
        curve.check_len("sheaf.restriction_stable", self.restriction_stable.len())?;
        for (j, (stable, semistable)) in self
            .restriction_stable
            .iter()
            .zip(&self.restriction_semistable)
            .enumerate()
        {
            if *stable && !semistable {
                return Err(Error::invalid(
                    format!("sheaf.restriction_stable[{j}]"),
                    "stable restriction must also be flagged semistable",
                ));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Sheaf(SheafInput),
    Pair(GeneratedPairData),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub curve: ChainCurve,
    pub subject: Subject,
    pub twist: Option<LineBundleTwist>,
}

const PAIR_FLAGS: [&str; 7] = [
    "restriction_semistable",
    "restriction_stable",
    "kernel_restriction_semistable",
    "kernel_restriction_stable",
    "ker_rho_nonzero",
    "twisted_sections_nonzero",
    "h1_vanishes",
];

fn object<'a>(
    value: &'a Value,
    path: &str,
    allowed: &[&str],
    required: &[&str],
) -> Result<&'a Map<String, Value>> {
    let map = value
        .as_object()
        .ok_or_else(|| Error::invalid(path, "expected an object"))?;
    if let Some(key) = map.keys().find(|k| !allowed.contains(&k.as_str())) {
        return Err(Error::invalid(
            join(path, key),
            format!("unknown field; expected one of {}", allowed.join(", ")),
        ));
    }
    if let Some(key) = required.iter().find(|k| !map.contains_key(**k)) {
        return Err(Error::invalid(join(path, key), "missing required field"));
    }
    Ok(map)
}

fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

fn integer(value: &Value, path: &str) -> Result<BigInt> {
    match value {
        Value::Number(n) => n
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| Error::invalid(path, format!("expected an integer, found {n}"))),
        other => Err(Error::invalid(
            path,
            format!("expected an integer, found {}", kind(other)),
        )),
    }
}

fn kind(value: &Value) -> &'static str {
    match value {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn array<'a>(value: &'a Value, path: &str) -> Result<&'a [Value]> {
    value
        .as_array()
        .map(Vec::as_slice)
        .ok_or_else(|| Error::invalid(path, format!("expected an array, found {}", kind(value))))
}

fn integers(value: &Value, path: &str) -> Result<Vec<BigInt>> {
    array(value, path)?
        .iter()
        .enumerate()
        .map(|(i, v)| integer(v, &format!("{path}[{i}]")))
        .collect()
}

fn booleans(value: &Value, path: &str) -> Result<Vec<bool>> {
    array(value, path)?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.as_bool().ok_or_else(|| {
                Error::invalid(
                    format!("{path}[{i}]"),
                    format!("expected a boolean, found {}", kind(v)),
                )
            })
        })
        .collect()
}

fn optional_flags(map: &Map<String, Value>, path: &str, key: &str, n: usize) -> Result<Vec<bool>> {
    match map.get(key) {
        Some(v) => booleans(v, &join(path, key)),
        None => Ok(vec![false; n]),
    }
}

fn parse_sheaf(value: &Value, n: usize) -> Result<SheafInput> {
    let path = "subject.sheaf";
    let map = object(
        value,
        path,
        &[
            "multirank",
            "multidegree",
            "restriction_semistable",
            "restriction_stable",
        ],
        &["multirank", "multidegree"],
    )?;
    Ok(SheafInput {
        multirank: integers(&map["multirank"], &join(path, "multirank"))?,
        multidegree: integers(&map["multidegree"], &join(path, "multidegree"))?,
        restriction_semistable: optional_flags(map, path, "restriction_semistable", n)?,
        restriction_stable: optional_flags(map, path, "restriction_stable", n)?,
    })
}

fn parse_pair(value: &Value, n: usize) -> Result<GeneratedPairData> {
    let path = "subject.pair";
    let mut allowed = vec!["rank", "dim_v", "multidegree"];
    allowed.extend(PAIR_FLAGS);
    let map = object(value, path, &allowed, &["rank", "dim_v", "multidegree"])?;
    let mut pair = GeneratedPairData::new(
        integer(&map["rank"], &join(path, "rank"))?,
        integer(&map["dim_v"], &join(path, "dim_v"))?,
        integers(&map["multidegree"], &join(path, "multidegree"))?,
    );
    let flags = PAIR_FLAGS
        .iter()
        .map(|key| optional_flags(map, path, key, n))
        .collect::<Result<Vec<_>>>()?;
    let [a, b, c, d, e, f, g]: [Vec<bool>; 7] = flags.try_into().expect("seven flag lists");
    pair.restriction_semistable = a;
    pair.restriction_stable = b;
    pair.kernel_restriction_semistable = c;
    pair.kernel_restriction_stable = d;
    pair.ker_rho_nonzero = e;
    pair.twisted_sections_nonzero = f;
    pair.h1_vanishes = g;
    Ok(pair)
}

impl Scenario {
    /// Parses and validates a scenario document. Syntax errors carry line
    /// and column; semantic errors carry the path of the offending field.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Value = serde_json::from_str(text).map_err(|e| {
            Error::invalid(
                format!("line {}, column {}", e.line(), e.column()),
                format!("{:?} error in JSON document", e.classify()).to_lowercase(),
            )
        })?;
        Self::from_value(&doc)
    }

    pub fn from_value(doc: &Value) -> Result<Self> {
        let top = object(
            doc,
            "",
            &["curve", "subject", "twist"],
            &["curve", "subject"],
        )?;
        let curve_map = object(&top["curve"], "curve", &["genera"], &["genera"])?;
        let curve = ChainCurve::new(integers(&curve_map["genera"], "curve.genera")?)?;
        let n = curve.components();
        let subject_map = object(&top["subject"], "subject", &["sheaf", "pair"], &[])?;
        let subject = match (subject_map.get("sheaf"), subject_map.get("pair")) {
            (Some(s), None) => {
                let input = parse_sheaf(s, n)?;
                input.validate(&curve)?;
                Subject::Sheaf(input)
            }
            (None, Some(p)) => {
                let pair = parse_pair(p, n)?;
                pair.validate(&curve)?;
                Subject::Pair(pair)
            }
            _ => {
                return Err(Error::invalid(
                    "subject",
                    "expected exactly one of \"sheaf\" or \"pair\"",
                ))
            }
        };
        let twist = match top.get("twist") {
            None | Some(Value::Null) => None,
            Some(t) => {
                let map = object(t, "twist", &["multidegree"], &["multidegree"])?;
                let degrees = integers(&map["multidegree"], "twist.multidegree")?;
                curve.check_len("twist.multidegree", degrees.len())?;
                Some(LineBundleTwist::new(degrees))
            }
        };
        Ok(Scenario {
            curve,
            subject,
            twist,
        })
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::invalid(path.display().to_string(), format!("cannot read file: {e}"))
        })?;
        Self::from_json(&text)
    }
}

/// JSON Schema of the scenario format.
pub fn schema() -> Value {
    let ints = json!({"type": "array", "items": {"type": "integer"}, "minItems": 2});
    let flags = json!({"type": "array", "items": {"type": "boolean"}, "minItems": 2});
    let mut pair_props = Map::new();
    pair_props.insert("rank".into(), json!({"type": "integer", "minimum": 1}));
    pair_props.insert("dim_v".into(), json!({"type": "integer", "minimum": 2}));
    pair_props.insert(
        "multidegree".into(),
        json!({"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2}),
    );
    for flag in PAIR_FLAGS {
        pair_props.insert(flag.into(), flags.clone());
    }
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "chainstab scenario",
        "description": "Lists are indexed by component in chain order and must all have the curve's length. Omitted flag lists default to all false.",
        "type": "object",
        "additionalProperties": false,
        "required": ["curve", "subject"],
        "properties": {
            "curve": {
                "type": "object",
                "additionalProperties": false,
                "required": ["genera"],
                "properties": {
                    "genera": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 2}
                }
            },
            "subject": {
                "type": "object",
                "oneOf": [
                    {
                        "additionalProperties": false,
                        "required": ["sheaf"],
                        "properties": {
                            "sheaf": {
                                "type": "object",
                                "additionalProperties": false,
                                "required": ["multirank", "multidegree"],
                                "properties": {
                                    "multirank": {"type": "array", "items": {"type": "integer", "minimum": 0}, "minItems": 2},
                                    "multidegree": ints.clone(),
                                    "restriction_semistable": flags,
                                    "restriction_stable": flags
                                }
                            }
                        }
                    },
                    {
                        "additionalProperties": false,
                        "required": ["pair"],
                        "properties": {
                            "pair": {
                                "type": "object",
                                "additionalProperties": false,
                                "required": ["rank", "dim_v", "multidegree"],
                                "properties": Value::Object(pair_props)
                            }
                        }
                    }
                ]
            },
            "twist": {
                "type": "object",
                "additionalProperties": false,
                "required": ["multidegree"],
                "properties": {"multidegree": ints}
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pair_with_default_flags() {
        let s = Scenario::from_json(
            r#"{"curve": {"genera": [2, 2]},
                "subject": {"pair": {"rank": 1, "dim_v": 3, "multidegree": [6, 6],
                                     "ker_rho_nonzero": [true, false]}}}"#,
        )
        .unwrap();
        let Subject::Pair(pair) = s.subject else {
            panic!()
        };
        assert_eq!(pair.ker_rho_nonzero, vec![true, false]);
        assert_eq!(pair.h1_vanishes, vec![false, false]);
        assert!(s.twist.is_none());
    }

    #[test]
    fn big_integers_survive() {
        let s = Scenario::from_json(
            r#"{"curve": {"genera": [2, 123456789012345678901234567890]},
                "subject": {"sheaf": {"multirank": [1, 1], "multidegree": [0, 0]}}}"#,
        )
        .unwrap();
        assert_eq!(
            s.curve.genera()[1].to_string(),
            "123456789012345678901234567890"
        );
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = Scenario::from_json(
            r#"{"curve": {"genera": [2, 2]}, "subject": {"sheaf": {"multirank": [1, 1], "multidegree": [0, 1.5]}}}"#,
        )
        .unwrap_err();
        assert!(
            err.to_string().contains("subject.sheaf.multidegree[1]"),
            "{err}"
        );

        let err =
            Scenario::from_json(r#"{"curve": {"genera": [2, 2]}, "subject": {}, "extra": 1}"#)
                .unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");

        let err = Scenario::from_json("{\n  \"curve\": [,\n}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");

        let err = Scenario::from_json(
            r#"{"curve": {"genera": [2, 1]}, "subject": {"sheaf": {"multirank": [1, 1], "multidegree": [0, 0]}}}"#,
        )
        .unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn twist_length_is_checked() {
        let err = Scenario::from_json(
            r#"{"curve": {"genera": [2, 2]}, "subject": {"sheaf": {"multirank": [1, 1], "multidegree": [0, 0]}},
                "twist": {"multidegree": [1]}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("twist.multidegree"), "{err}");
    }
}
