use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};

/// Basis key. Tensor bases use `Tuple`, one entry per leg; legs are opaque and may nest.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Key {
    Int(i64),
    Pair(i64, i64),
    Str(Arc<str>),
    Tuple(Arc<[Key]>),
}

impl Key {
    pub fn str(s: &str) -> Key {
        Key::Str(Arc::from(s))
    }

    pub fn tuple(legs: Vec<Key>) -> Key {
        Key::Tuple(Arc::from(legs))
    }

    pub fn pair(a: Key, b: Key) -> Key {
        Key::tuple(vec![a, b])
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Key::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(i64, i64)> {
        match self {
            Key::Pair(a, b) => Some((*a, *b)),
            _ => None,
        }
    }

    pub fn legs(&self) -> Option<&[Key]> {
        match self {
            Key::Tuple(l) => Some(l),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Key::Int(i) => Value::from(*i),
            Key::Pair(a, b) => Value::from(vec![*a, *b]),
            Key::Str(s) => Value::from(s.as_ref()),
            Key::Tuple(l) => serde_json::json!({ "t": l.iter().map(Key::to_json).collect::<Vec<_>>() }),
        }
    }

    pub fn from_json(v: &Value, path: &str) -> Result<Key> {
        match v {
            Value::Number(n) => n
                .as_i64()
                .map(Key::Int)
                .ok_or_else(|| Error::parse(path, "key must be an integer")),
            Value::String(s) => Ok(Key::str(s)),
            Value::Array(a) if a.len() == 2 => {
                let p = a[0].as_i64().ok_or_else(|| Error::parse(path, "pair key entries must be integers"))?;
                let q = a[1].as_i64().ok_or_else(|| Error::parse(path, "pair key entries must be integers"))?;
                Ok(Key::Pair(p, q))
            }
            Value::Object(o) => {
                let legs = o
                    .get("t")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::parse(path, "tuple key needs field \"t\""))?;
                let legs = legs
                    .iter()
                    .enumerate()
                    .map(|(i, l)| Key::from_json(l, &format!("{path}.t[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Key::tuple(legs))
            }
            _ => Err(Error::parse(path, "unrecognised key")),
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Key::Int(i) => write!(f, "{i}"),
            Key::Pair(a, b) => write!(f, "({a},{b})"),
            Key::Str(s) => write!(f, "{s}"),
            Key::Tuple(l) => {
                for (i, k) in l.iter().enumerate() {
                    if i > 0 {
                        write!(f, "⊗")?;
                    }
                    match k {
                        Key::Tuple(_) => write!(f, "({k})")?,
                        _ => write!(f, "{k}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let keys = [
            Key::Int(-3),
            Key::Pair(2, 5),
            Key::str("gx"),
            Key::tuple(vec![Key::Int(1), Key::tuple(vec![Key::Pair(0, 1), Key::str("t")])]),
        ];
        for k in keys {
            assert_eq!(Key::from_json(&k.to_json(), "$").unwrap(), k);
        }
        assert!(Key::from_json(&Value::Null, "$").is_err());
    }

    #[test]
    fn ordering_is_total_and_structural() {
        assert!(Key::Int(1) < Key::Int(2));
        assert!(Key::Int(9) < Key::Pair(0, 0));
        assert_eq!(Key::pair(Key::Int(1), Key::Int(2)).to_string(), "1⊗2");
    }
}
