//! JSON and SPICE renderings of networks.

use serde_json::{json, Map, Value};

use super::spnet::{Kind, SpNet, Template};
use super::structure::edges;
use crate::error::{Error, Result};
use crate::scalar::{display_scalar, format_decimal, parse_rational, Rat, Scalar};

pub(crate) fn element_names<T>(net: &SpNet<T>) -> Vec<String> {
    let mut counters = [0usize; 3];
    net.leaves()
        .map(|(k, _)| {
            counters[k as usize] += 1;
            format!("{}{}", k.symbol(), counters[k as usize])
        })
        .collect()
}

fn to_json_with<T>(net: &SpNet<T>, names: &mut std::slice::Iter<String>, value: &impl Fn(&T) -> Option<String>) -> Value {
    match net {
        SpNet::Element { kind, value: v } => {
            let mut m = Map::new();
            m.insert("type".into(), json!("element"));
            m.insert("kind".into(), json!(kind.symbol()));
            m.insert("name".into(), json!(names.next().expect("one name per leaf")));
            if let Some(v) = value(v) {
                m.insert("value".into(), json!(v));
            }
            Value::Object(m)
        }
        SpNet::Series(c) | SpNet::Parallel(c) => {
            let ty = if matches!(net, SpNet::Series(_)) { "series" } else { "parallel" };
            let kids: Vec<Value> = c.iter().map(|n| to_json_with(n, names, value)).collect();
            json!({ "type": ty, "children": kids })
        }
    }
}

/// Netlist JSON. Exact values are written as `n/d`, others as decimals.
pub fn to_json<T: Scalar>(net: &SpNet<T>) -> Value {
    let names = element_names(net);
    to_json_with(net, &mut names.iter(), &|v: &T| Some(display_scalar(v)))
}

pub fn template_to_json(t: &Template) -> Value {
    let names = element_names(t);
    to_json_with(t, &mut names.iter(), &|_: &()| None)
}

fn value_text(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(Error::Parse(format!("element value must be a string or number, got {v}"))),
    }
}

/// Parses a netlist with exact rational values; decimals are read exactly.
pub fn from_json(v: &Value) -> Result<SpNet<Rat>> {
    let ty = v
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("netlist node needs a \"type\" field".into()))?;
    match ty {
        "element" => {
            let kind = Kind::parse(
                v.get("kind")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Parse("element needs a \"kind\"".into()))?,
            )?;
            let value = parse_rational(&value_text(
                v.get("value").ok_or_else(|| Error::Parse("element needs a \"value\"".into()))?,
            )?)?;
            let n = SpNet::element(kind, value);
            n.validate()?;
            Ok(n)
        }
        "series" | "parallel" => {
            let kids = v
                .get("children")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse(format!("{ty} node needs a \"children\" array")))?
                .iter()
                .map(from_json)
                .collect::<Result<Vec<_>>>()?;
            if ty == "series" {
                SpNet::series(kids)
            } else {
                SpNet::parallel(kids)
            }
        }
        other => Err(Error::Parse(format!("unknown netlist node type {other:?}"))),
    }
}

pub fn from_json_str(s: &str) -> Result<SpNet<Rat>> {
    from_json(&serde_json::from_str(s)?)
}

/// SPICE element cards between terminal nodes 1 and 0.
pub fn to_spice<T: Scalar>(net: &SpNet<T>) -> String {
    let names = element_names(net);
    let values: Vec<String> = net
        .leaves()
        .map(|(_, v)| match v.to_rational() {
            Some(r) => format_decimal(&r, T::significant_digits()),
            None => v.to_string(),
        })
        .collect();
    let mut out = String::from("* series-parallel network, terminals 1 and 0\n");
    for (((a, b, _), name), value) in edges(net).into_iter().zip(&names).zip(&values) {
        out.push_str(&format!("{name} {a} {b} {value}\n"));
    }
    out.push_str(".end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn sample() -> SpNet<Rat> {
        SpNet::series(vec![
            SpNet::element(Kind::R, rat(3, 2)),
            SpNet::parallel(vec![SpNet::element(Kind::L, int(2)), SpNet::element(Kind::C, rat(1, 4))]).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn json_round_trip() {
        let n = sample();
        let v = to_json(&n);
        assert_eq!(from_json(&v).unwrap(), n);
        assert_eq!(v["children"][0]["value"], "3/2");
    }

    #[test]
    fn reads_decimals_exactly() {
        let n = from_json_str(r#"{"type":"element","kind":"C","value":"0.125"}"#).unwrap();
        assert_eq!(n, SpNet::element(Kind::C, rat(1, 8)));
        let n = from_json_str(r#"{"type":"element","kind":"R","value":2}"#).unwrap();
        assert_eq!(n, SpNet::element(Kind::R, int(2)));
    }

    #[test]
    fn rejects_malformed() {
        assert!(from_json_str(r#"{"type":"element","kind":"X","value":"1"}"#).is_err());
        assert!(from_json_str(r#"{"type":"element","kind":"R","value":"-1"}"#).is_err());
        assert!(from_json_str(r#"{"type":"series","children":[{"type":"element","kind":"R","value":"1"}]}"#).is_err());
        assert!(from_json_str(r#"{"type":"loop"}"#).is_err());
    }

    #[test]
    fn spice_cards() {
        let s = to_spice(&sample());
        assert!(s.contains("R1 1 2 1.5\n"));
        assert!(s.contains("L1 2 0 2\n"));
        assert!(s.contains("C1 2 0 2.5e-1\n"));
    }
}
