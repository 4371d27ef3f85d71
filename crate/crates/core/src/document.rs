//! JSON documents read and written by the command-line tool.
//!
//! Rationals are always written as strings (`"3/5"`, `"-5"`); on input a
//! JSON integer is accepted as well, a JSON float never is.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::Value;

use crate::dependent::{
    quality_from_order_distribution, FailureOrder, OrderDistribution, RelativeQuality,
};
use crate::error::{Error, Result};
use crate::exact::{parse_rational, Polynomial, Rational};
use crate::structure::{
    structure_from_pathsets, PathSetSpec, SetFunction, StructureFunction, SubsetMask,
};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDocument {
    n: usize,
    pathsets: Option<Vec<Vec<usize>>>,
    table: Option<String>,
}

/// A system given either by path sets or by its full truth table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemDefinition {
    PathSets(PathSetSpec),
    Table(StructureFunction),
}

impl SystemDefinition {
    pub fn n(&self) -> usize {
        match self {
            SystemDefinition::PathSets(spec) => spec.n(),
            SystemDefinition::Table(phi) => phi.n(),
        }
    }

    /// The structure function, checked to be semicoherent.
    pub fn structure(&self) -> Result<StructureFunction> {
        let phi = match self {
            SystemDefinition::PathSets(spec) => structure_from_pathsets(spec),
            SystemDefinition::Table(phi) => phi.clone(),
        };
        phi.validate_semicoherent()?;
        Ok(phi)
    }
}

pub fn parse_system(text: &str) -> Result<SystemDefinition> {
    let doc: SystemDocument = serde_json::from_str(text)?;
    match (doc.pathsets, doc.table) {
        (Some(sets), None) => Ok(SystemDefinition::PathSets(PathSetSpec::new(doc.n, &sets)?)),
        (None, Some(table)) => Ok(SystemDefinition::Table(StructureFunction::from_table_str(
            doc.n, &table,
        )?)),
        (Some(_), Some(_)) => Err(Error::Document(
            "system document has both `pathsets` and `table`".into(),
        )),
        (None, None) => Err(Error::Document(
            "system document needs one of `pathsets` or `table`".into(),
        )),
    }
}

pub fn parse_pathset_spec(text: &str) -> Result<PathSetSpec> {
    match parse_system(text)? {
        SystemDefinition::PathSets(spec) => Ok(spec),
        SystemDefinition::Table(_) => Err(Error::Document(
            "expected a `pathsets` document, found a `table` document".into(),
        )),
    }
}

pub fn parse_structure(text: &str) -> Result<StructureFunction> {
    parse_system(text)?.structure()
}

fn rational_value(value: &Value, context: &str) -> Result<Rational> {
    match value {
        Value::String(s) => parse_rational(s),
        Value::Number(num) if num.is_i64() || num.is_u64() => parse_rational(&num.to_string()),
        other => Err(Error::Document(format!(
            "{context}: expected a rational string or integer, found {other}"
        ))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OrderEntry {
    perm: Vec<usize>,
    prob: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QualityDocument {
    n: usize,
    q: Option<BTreeMap<String, Value>>,
    orders: Option<Vec<OrderEntry>>,
}

/// A relative quality given directly or through a failure-order distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QualityInput {
    Quality(RelativeQuality),
    Orders(OrderDistribution),
}

impl QualityInput {
    pub fn n(&self) -> usize {
        match self {
            QualityInput::Quality(q) => q.n(),
            QualityInput::Orders(dist) => dist.n(),
        }
    }

    pub fn quality(&self) -> Result<RelativeQuality> {
        match self {
            QualityInput::Quality(q) => Ok(q.clone()),
            QualityInput::Orders(dist) => quality_from_order_distribution(dist),
        }
    }
}

/// Parses a subset key such as `"1,3"`; `""` is the empty set.
pub fn parse_subset_key(key: &str, n: usize) -> Result<SubsetMask> {
    let mut mask = SubsetMask::EMPTY;
    if key.trim().is_empty() {
        return Ok(mask);
    }
    for part in key.split(',') {
        let index: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Document(format!("invalid subset key `{key}`")))?;
        if index == 0 || index > n {
            return Err(Error::ComponentOutOfRange { index, n });
        }
        if mask.contains(index) {
            return Err(Error::Document(format!(
                "subset key `{key}` repeats {index}"
            )));
        }
        mask = mask.with(index);
    }
    Ok(mask)
}

pub fn subset_key(mask: SubsetMask) -> String {
    mask.components()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Subsets missing from `q` are 0, except `∅` and the full set, which
/// default to 1 since every valid quality has those values.
pub fn parse_quality(text: &str) -> Result<QualityInput> {
    let doc: QualityDocument = serde_json::from_str(text)?;
    let n = doc.n;
    match (doc.q, doc.orders) {
        (Some(entries), None) => {
            let mut q = SetFunction::zero(n)?;
            q.set(SubsetMask::EMPTY, Rational::from_integer(1.into()));
            q.set(SubsetMask::full(n), Rational::from_integer(1.into()));
            for (key, value) in &entries {
                let mask = parse_subset_key(key, n)?;
                q.set(mask, rational_value(value, &format!("q[{key:?}]"))?);
            }
            Ok(QualityInput::Quality(RelativeQuality::new(q)?))
        }
        (None, Some(orders)) => {
            let orders = orders
                .into_iter()
                .enumerate()
                .map(|(i, entry)| {
                    Ok(FailureOrder {
                        perm: entry.perm,
                        prob: rational_value(&entry.prob, &format!("orders[{i}].prob"))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(QualityInput::Orders(OrderDistribution::explicit(
                n, orders,
            )?))
        }
        (Some(_), Some(_)) => Err(Error::Document(
            "quality document has both `q` and `orders`".into(),
        )),
        (None, None) => Err(Error::Document(
            "quality document needs one of `q` or `orders`".into(),
        )),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVectorDocument {
    representation: Option<String>,
    n: usize,
    values: Vec<Value>,
}

/// An untyped vector document; [`crate::convert`] gives it meaning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorDocument {
    pub representation: Option<String>,
    pub n: usize,
    pub values: Vec<Rational>,
}

pub fn parse_vector(text: &str) -> Result<VectorDocument> {
    let doc: RawVectorDocument = serde_json::from_str(text)?;
    let values = doc
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| rational_value(v, &format!("values[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    Ok(VectorDocument {
        representation: doc.representation,
        n: doc.n,
        values,
    })
}

/// True when the JSON object has a `values` field, i.e. is a vector
/// document rather than a system document.
pub fn looks_like_vector(text: &str) -> Result<bool> {
    let value: Value = serde_json::from_str(text)?;
    Ok(value.get("values").is_some())
}

pub fn rational_strings<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Vec<String> {
    values.into_iter().map(|v| v.to_string()).collect()
}

pub fn polynomial_strings(p: &Polynomial) -> Vec<String> {
    rational_strings(p.coeffs())
}

/// `{"1,2": "1/3", ...}` for the nonzero entries, keys in mask order.
pub fn set_function_strings<'a>(
    entries: impl IntoIterator<Item = (SubsetMask, &'a Rational)>,
) -> BTreeMap<String, String> {
    entries
        .into_iter()
        .filter(|(_, v)| !num_traits::Zero::is_zero(*v))
        .map(|(mask, v)| (subset_key(mask), v.to_string()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::ErrorKind;
    use crate::exact::{int, ratio};

    const BRIDGE: &str = r#"{"n": 5, "pathsets": [[1,4],[2,5],[1,3,5],[2,3,4]]}"#;

    #[test]
    fn system_documents() {
        let phi = parse_structure(BRIDGE).unwrap();
        assert_eq!(phi.level_counts(), vec![0, 0, 2, 8, 5, 1]);
        let spec = parse_pathset_spec(BRIDGE).unwrap();
        assert_eq!(spec.path_sets().len(), 4);

        let table = format!(r#"{{"n": 5, "table": "{}"}}"#, phi.to_table_string());
        assert_eq!(parse_structure(&table).unwrap(), phi);
        assert!(parse_pathset_spec(&table).is_err());
    }

    #[test]
    fn system_document_errors() {
        let syntax = parse_system(r#"{"n": 2, "pathsets": [[1,2]"#).unwrap_err();
        assert!(matches!(syntax, Error::Syntax { .. }));
        assert_eq!(syntax.kind(), ErrorKind::Parse);

        let both = parse_system(r#"{"n": 2, "pathsets": [[1]], "table": "0111"}"#).unwrap_err();
        assert_eq!(both.kind(), ErrorKind::Parse);
        let neither = parse_system(r#"{"n": 2}"#).unwrap_err();
        assert_eq!(neither.kind(), ErrorKind::Parse);
        let unknown = parse_system(r#"{"n": 2, "paths": [[1]]}"#).unwrap_err();
        assert_eq!(unknown.kind(), ErrorKind::Parse);

        let range = parse_system(r#"{"n": 2, "pathsets": [[1,3]]}"#).unwrap_err();
        assert!(matches!(
            range,
            Error::ComponentOutOfRange { index: 3, n: 2 }
        ));
        assert_eq!(range.kind(), ErrorKind::Validation);

        let non_monotone = parse_structure(r#"{"n": 2, "table": "0101"}"#);
        assert!(non_monotone.is_ok());
        let top = parse_structure(r#"{"n": 2, "table": "0110"}"#).unwrap_err();
        assert!(matches!(top, Error::FullSetNotPathSet));
        let non_monotone = parse_structure(r#"{"n": 3, "table": "01100001"}"#).unwrap_err();
        assert!(matches!(non_monotone, Error::NotMonotone { .. }));

        let huge = parse_system(r#"{"n": 40, "pathsets": [[1]]}"#).unwrap_err();
        assert_eq!(huge.kind(), ErrorKind::ResourceCap);
    }

    #[test]
    fn quality_documents() {
        let text = r#"{"n": 3, "q": {"1": "1/3", "2": "1/3", "3": "1/3",
                       "1,2": "1/2", "1,3": "1/6", "2,3": "1/3"}}"#;
        let q = parse_quality(text).unwrap().quality().unwrap();
        assert_eq!(q.get(SubsetMask::from_components(&[1, 3])), &ratio(1, 6));
        assert_eq!(q.get(SubsetMask::EMPTY), &int(1));
        assert_eq!(q.get(SubsetMask::full(3)), &int(1));

        let bad =
            r#"{"n": 3, "q": {"1": 1, "2": "1/3", "3": "1/3", "1,2": 1, "1,3": 1, "2,3": 0}}"#;
        assert!(matches!(parse_quality(bad), Err(Error::LevelSum { .. })));

        let orders = r#"{"n": 3, "orders": [{"perm": [1,2,3], "prob": "1/2"},
                                            {"perm": [3,2,1], "prob": "1/2"}]}"#;
        let q = parse_quality(orders).unwrap().quality().unwrap();
        assert_eq!(q.get(SubsetMask::from_components(&[2, 3])), &ratio(1, 2));

        let float = r#"{"n": 1, "orders": [{"perm": [1], "prob": 1.0}]}"#;
        assert_eq!(parse_quality(float).unwrap_err().kind(), ErrorKind::Parse);
    }

    #[test]
    fn subset_keys() {
        assert_eq!(parse_subset_key("", 3).unwrap(), SubsetMask::EMPTY);
        assert_eq!(
            parse_subset_key("3, 1", 3).unwrap(),
            SubsetMask::from_components(&[1, 3])
        );
        assert!(parse_subset_key("1,1", 3).is_err());
        assert!(parse_subset_key("4", 3).is_err());
        assert!(parse_subset_key("a", 3).is_err());
        assert_eq!(subset_key(SubsetMask::from_components(&[2, 3])), "2,3");
        assert_eq!(subset_key(SubsetMask::EMPTY), "");
    }

    #[test]
    fn vector_documents() {
        let doc = parse_vector(
            r#"{"representation": "domination", "n": 5,
                                   "values": ["0", 0, "2", "2", "-5", "2"]}"#,
        )
        .unwrap();
        assert_eq!(doc.representation.as_deref(), Some("domination"));
        assert_eq!(doc.values[4], int(-5));
        assert!(looks_like_vector(r#"{"n": 1, "values": []}"#).unwrap());
        assert!(!looks_like_vector(BRIDGE).unwrap());
        assert_eq!(rational_strings(&[ratio(3, 5), int(-5)]), vec!["3/5", "-5"]);
    }
}
