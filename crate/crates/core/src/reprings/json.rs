//! JSON rendering of ring elements. Integers are written as exact JSON
//! numbers of any size.

use num_bigint::BigInt;
use serde_json::{json, Number, Value};

use super::{EquivElem, Pin2Elem, VirtualRep};
use crate::error::{Error, Result};
use crate::groups::Group;

pub fn big_to_json(n: &BigInt) -> Value {
    Value::Number(serde_json::from_str::<Number>(&n.to_string()).expect("integers are JSON numbers"))
}

pub fn json_to_big(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().ok(),
        _ => None,
    }
}

fn bad(what: &str) -> Error {
    Error::Domain(format!("malformed JSON: {what}"))
}

fn key_json(group: &Group, l: crate::groups::Irrep) -> Value {
    Value::Array(group.irrep_key(l).into_iter().map(Value::from).collect())
}

fn key_from_json(group: &Group, v: &Value) -> Result<crate::groups::Irrep> {
    let key: Vec<i64> = v
        .as_array()
        .ok_or_else(|| bad("irrep must be an array"))?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| bad("irrep index")))
        .collect::<Result<_>>()?;
    group.irrep_from_key(&key)
}

fn group_from_json(v: &Value, group: Option<&Group>) -> Result<Group> {
    let name = v.get("group").and_then(Value::as_str).ok_or_else(|| bad("missing group"))?;
    match group {
        Some(g) if g.name() == name => Ok(g.clone()),
        Some(g) => Err(Error::Domain(format!("JSON is over {name}, expected {g}"))),
        None => Group::parse_spec(name),
    }
}

impl Pin2Elem {
    pub fn to_json(&self) -> Value {
        json!({
            "h": self.h_coeffs().iter().map(big_to_json).collect::<Vec<_>>(),
            "c": big_to_json(self.c_coeff()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let h = v
            .get("h")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing h"))?
            .iter()
            .map(|x| json_to_big(x).ok_or_else(|| bad("h coefficient")))
            .collect::<Result<Vec<_>>>()?;
        let c = v.get("c").and_then(json_to_big).ok_or_else(|| bad("missing c"))?;
        Ok(Pin2Elem::new(h, c))
    }
}

impl VirtualRep {
    pub fn to_json(&self) -> Value {
        let g = self.group();
        json!({
            "group": g.name(),
            "terms": self.terms().map(|(l, c)| json!({
                "irrep": key_json(g, l),
                "coeff": big_to_json(c),
            })).collect::<Vec<_>>(),
        })
    }

    /// `group` is needed for groups given by a character table; abelian
    /// groups are rebuilt from their name.
    pub fn from_json(v: &Value, group: Option<&Group>) -> Result<Self> {
        let g = group_from_json(v, group)?;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = Vec::new();
        for t in terms {
            let l = key_from_json(&g, t.get("irrep").ok_or_else(|| bad("missing irrep"))?)?;
            let c = t.get("coeff").and_then(json_to_big).ok_or_else(|| bad("missing coeff"))?;
            out.push((l, c));
        }
        Ok(VirtualRep::from_coeffs(&g, out))
    }
}

impl EquivElem {
    /// `{"group": .., "terms": [{"irrep": [..], "h": [c0, c1, ..], "c": n}]}`
    pub fn to_json(&self) -> Value {
        let g = self.group();
        json!({
            "group": g.name(),
            "terms": self.terms().map(|(l, p)| json!({
                "irrep": key_json(g, l),
                "h": p.h_coeffs().iter().map(big_to_json).collect::<Vec<_>>(),
                "c": big_to_json(p.c_coeff()),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value, group: Option<&Group>) -> Result<Self> {
        let g = group_from_json(v, group)?;
        let terms = v.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut out = Vec::new();
        for t in terms {
            let l = key_from_json(&g, t.get("irrep").ok_or_else(|| bad("missing irrep"))?)?;
            out.push((l, Pin2Elem::from_json(t)?));
        }
        Ok(EquivElem::from_terms(&g, out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Irrep;

    #[test]
    fn equiv_round_trip_with_huge_coefficients() {
        let g = Group::abelian(&[3, 3]).unwrap();
        let big = BigInt::from(2).pow(200);
        let x = EquivElem::from_terms(
            &g,
            [
                (Irrep(4), Pin2Elem::new(vec![big.clone(), 0.into(), (-3).into()], -&big)),
                (Irrep(0), Pin2Elem::c()),
            ],
        );
        let text = serde_json::to_string(&x.to_json()).unwrap();
        assert!(text.contains(&big.to_string()));
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(EquivElem::from_json(&v, None).unwrap(), x);
        assert_eq!(
            v["terms"][1]["irrep"],
            json!([1, 1]),
            "irreps are keyed by index tuple"
        );
    }

    #[test]
    fn virtual_rep_round_trip() {
        let g = Group::cyclic(5).unwrap();
        let v = VirtualRep::from_coeffs(&g, [(Irrep(2), 7.into()), (Irrep(4), (-1).into())]);
        assert_eq!(VirtualRep::from_json(&v.to_json(), Some(&g)).unwrap(), v);
        assert!(VirtualRep::from_json(&v.to_json(), Some(&Group::cyclic(3).unwrap())).is_err());
    }
}
