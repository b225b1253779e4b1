//! The instance document: TOML with every fraction written as a `"num/den"`
//! string.
//!
//! ```toml
//! threshold = "1/2"
//! edges = [["c1", "u1"]]
//!
//! [[contents]]
//! id = "s1"
//! size = 1
//!
//! [[caches]]
//! id = "c1"
//! capacity = 1
//!
//! [[users]]
//! id = "u1"
//! weight = "1"
//! requests = { s1 = "3/5", s2 = "2/5" }
//!
//! [allocation]
//! c1 = ["s1"]
//! ```
//!
//! `threshold` and `allocation` are optional. Serialization is canonical:
//! entities in id order, fractions in lowest terms.

use std::collections::BTreeMap;
use std::fmt;

use netcache_core::model::{Allocation, Instance, Rational};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{CliError, Position};

/// A parsed document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceFile {
    pub instance: Instance,
    pub threshold: Option<Rational>,
    pub allocation: Option<Allocation>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    threshold: Option<Fraction>,
    #[serde(default)]
    edges: Vec<(String, String)>,
    #[serde(default)]
    contents: Vec<ContentEntry>,
    #[serde(default)]
    caches: Vec<CacheEntry>,
    #[serde(default)]
    users: Vec<UserEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    allocation: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ContentEntry {
    id: String,
    size: Count,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CacheEntry {
    id: String,
    capacity: Count,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct UserEntry {
    id: String,
    weight: Fraction,
    requests: BTreeMap<String, Fraction>,
}

/// Always written as a string; read from a string or a TOML integer.
struct Fraction(Rational);

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Fraction;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a fraction such as \"3/5\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Fraction, E> {
                v.parse().map(Fraction).map_err(|e| E::custom(format!("bad fraction `{v}`: {e}")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Fraction, E> {
                Ok(Fraction(Rational::from_integer(v)))
            }
        }
        d.deserialize_any(V)
    }
}

/// A TOML integer while it fits in `i64`, a decimal string beyond that.
struct Count(BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.collect_str(&self.0),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Count;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Count, E> {
                if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::custom(format!("bad integer `{v}`")));
                }
                v.parse().map(Count).map_err(|_| E::custom(format!("bad integer `{v}`")))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Count, E> {
                u64::try_from(v).map(|n| Count(n.into())).map_err(|_| E::custom(format!("negative integer {v}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Parses a document. `origin` names the source in error messages.
pub fn parse_instance(text: &str, origin: &str) -> Result<InstanceFile, CliError> {
    let doc: Document = toml::from_str(text).map_err(|e| CliError::Parse {
        origin: origin.to_string(),
        at: Position::of_offset(text, e.span().map_or(0, |s| s.start)),
        message: e.message().trim_end().to_string(),
    })?;
    let mut b = Instance::builder();
    for c in doc.contents {
        b = b.content(c.id, c.size.0);
    }
    for c in doc.caches {
        b = b.cache(c.id, c.capacity.0);
    }
    for u in doc.users {
        b = b.user(u.id, u.weight.0, u.requests.into_iter().map(|(s, p)| (s, p.0)));
    }
    for (c, u) in doc.edges {
        b = b.edge(c, u);
    }
    let validation = |source| CliError::Validation { origin: origin.to_string(), source };
    let instance = b.build().map_err(validation)?;
    let allocation = doc.allocation.map(|stores| {
        let mut z = Allocation::new();
        for (cache, contents) in stores {
            for s in contents {
                z.insert(cache.as_str(), s);
            }
        }
        z
    });
    if let Some(z) = &allocation {
        instance.placement_of(z).map_err(validation)?;
    }
    Ok(InstanceFile { instance, threshold: doc.threshold.map(|t| t.0), allocation })
}

fn document(instance: &Instance, threshold: Option<&Rational>, allocation: Option<&Allocation>) -> Document {
    let contents = instance.contents();
    Document {
        threshold: threshold.cloned().map(Fraction),
        edges: instance
            .edges()
            .map(|(c, u)| (instance.caches()[c].id.to_string(), instance.users()[u].id.to_string()))
            .collect(),
        contents: contents.iter().map(|s| ContentEntry { id: s.id.to_string(), size: Count(s.size.clone()) }).collect(),
        caches: instance
            .caches()
            .iter()
            .map(|c| CacheEntry { id: c.id.to_string(), capacity: Count(c.capacity.clone()) })
            .collect(),
        users: instance
            .users()
            .iter()
            .map(|u| UserEntry {
                id: u.id.to_string(),
                weight: Fraction(u.weight.clone()),
                requests: u.requests.iter().map(|(s, p)| (contents[*s].id.to_string(), Fraction(p.clone()))).collect(),
            })
            .collect(),
        allocation: allocation.map(allocation_map),
    }
}

fn allocation_map(z: &Allocation) -> BTreeMap<String, Vec<String>> {
    z.iter().map(|(c, set)| (c.to_string(), set.iter().map(|s| s.to_string()).collect())).collect()
}

pub fn serialize_instance(instance: &Instance, threshold: Option<&Rational>) -> String {
    serialize_file(instance, threshold, None)
}

/// The full document, including an allocation section when given.
pub fn serialize_file(instance: &Instance, threshold: Option<&Rational>, allocation: Option<&Allocation>) -> String {
    toml::to_string(&document(instance, threshold, allocation)).expect("documents always serialize")
}

/// Just the `[allocation]` section, as `solve --witness` prints it.
pub fn serialize_allocation(z: &Allocation) -> String {
    #[derive(Serialize)]
    struct Section {
        allocation: BTreeMap<String, Vec<String>>,
    }
    toml::to_string(&Section { allocation: allocation_map(z) }).expect("allocations always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX1: &str = r#"edges = [["c1", "u1"]]

[[contents]]
id = "s1"
size = 1

[[contents]]
id = "s2"
size = 1

[[caches]]
id = "c1"
capacity = 1

[[users]]
id = "u1"
weight = "1"

[users.requests]
s1 = "3/5"
s2 = "2/5"
"#;

    #[test]
    fn canonical_text_round_trips() {
        let f = parse_instance(EX1, "ex1").unwrap();
        assert_eq!(serialize_instance(&f.instance, None), EX1);
    }

    #[test]
    fn inline_requests_and_big_sizes() {
        let text = "[[contents]]\nid = \"s\"\nsize = \"123456789012345678901234567890\"\n\n[[users]]\nid = \"u\"\nweight = 2\nrequests = { s = \"1\" }\n";
        let f = parse_instance(text, "t").unwrap();
        assert_eq!(f.instance.contents()[0].size.to_string(), "123456789012345678901234567890");
        let again = parse_instance(&serialize_instance(&f.instance, None), "t").unwrap();
        assert_eq!(again.instance, f.instance);
    }

    #[test]
    fn zero_denominator_is_positioned() {
        let text = EX1.replace("weight = \"1\"", "weight = \"1/0\"");
        match parse_instance(&text, "f.toml") {
            Err(CliError::Parse { at, message, .. }) => {
                assert_eq!(at.line, 17);
                assert!(message.contains("1/0"), "{message}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bad_sum_is_a_validation_error() {
        let text = EX1.replace("s2 = \"2/5\"", "s2 = \"3/10\"");
        assert!(matches!(parse_instance(&text, "f"), Err(CliError::Validation { .. })));
    }

    #[test]
    fn allocation_section() {
        let f = parse_instance(EX1, "ex1").unwrap();
        let z = Allocation::new().with("c1", &["s1"]);
        assert_eq!(serialize_allocation(&z), "[allocation]\nc1 = [\"s1\"]\n");
        let text = serialize_file(&f.instance, Some(&Rational::new(1, 2)), Some(&z));
        let back = parse_instance(&text, "t").unwrap();
        assert_eq!(back.allocation, Some(z));
        assert_eq!(back.threshold, Some(Rational::new(1, 2)));
        let unknown = format!("{EX1}\n[allocation]\nc9 = [\"s1\"]\n");
        assert!(matches!(parse_instance(&unknown, "t"), Err(CliError::Validation { .. })));
    }
}
