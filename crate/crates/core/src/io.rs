//! Instance documents: JSON with exact entries.
//!
//! Entries may be JSON numbers (converted exactly from their decimal text)
//! or fraction strings like `"7/16"`. Serialization always writes fraction
//! strings so round trips are bit-identical.

use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::model::{Instance, Player};
use crate::rational::{format_rational, parse_rational};

/// Parses an instance document. Rows must sum to 1 unless `normalize` is set.
pub fn instance_from_json_str(text: &str, normalize: bool) -> Result<Instance> {
    let doc: Value = serde_json::from_str(text)
        .map_err(|e| Error::ParseInstance(e.to_string()))?;
    instance_from_json(&doc, normalize)
}

pub fn instance_from_json(doc: &Value, normalize: bool) -> Result<Instance> {
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::ParseInstance("expected a JSON object".into()))?;
    let values = obj
        .get("values")
        .ok_or_else(|| Error::ParseInstance("missing \"values\"".into()))?
        .as_array()
        .ok_or_else(|| Error::ParseInstance("\"values\" must be an array".into()))?;
    if values.len() != 3 {
        return Err(Error::ParseInstance(format!(
            "\"values\" must have exactly 3 rows, got {}",
            values.len()
        )));
    }
    let mut rows: [Vec<BigRational>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (i, row) in values.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| {
            Error::ParseInstance(format!("row {} must be an array", i + 1))
        })?;
        for entry in row {
            rows[i].push(entry_to_rational(entry)?);
        }
    }
    let mut inst = Instance::new(rows, normalize)?;
    let players = match obj.get("players") {
        Some(v) => Some(string_list(v, "players")?),
        None => None,
    };
    let items = match obj.get("items") {
        Some(v) => Some(string_list(v, "items")?),
        None => None,
    };
    if players.is_some() || items.is_some() {
        let players: [String; 3] = match players {
            Some(list) => {
                if list.len() != 3 {
                    return Err(Error::ParseInstance("\"players\" must name 3 players".into()));
                }
                [list[0].clone(), list[1].clone(), list[2].clone()]
            }
            None => ["I".into(), "II".into(), "III".into()],
        };
        let items = items.unwrap_or_else(|| {
            (1..=inst.item_count()).map(|j| j.to_string()).collect()
        });
        inst = inst.with_labels(players, items)?;
    }
    Ok(inst)
}

fn entry_to_rational(entry: &Value) -> Result<BigRational> {
    match entry {
        // With arbitrary precision enabled the number keeps its source text,
        // so decimals convert exactly.
        Value::Number(n) => parse_rational(&n.to_string()),
        Value::String(s) => parse_rational(s),
        other => Err(Error::ParseInstance(format!("entry {other} is not a number or string"))),
    }
}

fn string_list(v: &Value, what: &str) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| Error::ParseInstance(format!("\"{what}\" must be an array")))?
        .iter()
        .map(|s| {
            s.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::ParseInstance(format!("\"{what}\" entries must be strings")))
        })
        .collect()
}

/// Document form of an instance with exact fraction strings.
pub fn instance_to_json(inst: &Instance) -> Value {
    let rows: Vec<Value> = Player::ALL
        .iter()
        .map(|p| {
            Value::Array(
                inst.row(*p)
                    .iter()
                    .map(|a| Value::String(format_rational(a)))
                    .collect(),
            )
        })
        .collect();
    let mut obj = Map::new();
    obj.insert("values".into(), Value::Array(rows));
    obj.insert("players".into(), json!(inst.player_labels()));
    obj.insert("items".into(), json!(inst.item_labels()));
    Value::Object(obj)
}

pub fn instance_to_json_string(inst: &Instance) -> String {
    serde_json::to_string_pretty(&instance_to_json(inst)).expect("valid document")
}
