// SPDX-License-Identifier: Apache-2.0

//! Serde helpers that write big integers as plain JSON numbers.

use std::fmt::Display;
use std::str::FromStr;

use serde::ser::SerializeSeq;
use serde::Serializer;

fn number<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&n, s)
}

pub fn nat<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    number(v, s)
}

pub fn nats<T: Display, S: Serializer>(vs: &[T], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for v in vs {
        let n = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
        seq.serialize_element(&n)?;
    }
    seq.end()
}

pub fn opt_nat<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => number(v, s),
        None => s.serialize_none(),
    }
}
