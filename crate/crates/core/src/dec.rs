//! Serialize wide integers as decimal strings (`#[serde(with = "dec")]`).

use std::fmt::Display;

use serde::ser::SerializeSeq;
use serde::Serializer;

pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub mod opt {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.collect_str(v),
            None => s.serialize_none(),
        }
    }
}

pub mod seq {
    use super::*;

    pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
        let mut out = s.serialize_seq(Some(v.len()))?;
        for x in v {
            out.serialize_element(&x.to_string())?;
        }
        out.end()
    }
}
