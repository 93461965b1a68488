//! The `lbz-1` JSON document format for structure tables.

use serde::{Deserialize, Serialize};

use crate::algebra::{Convention, StructureTable};
use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};
use crate::linalg;

pub const FORMAT_TAG: &str = "lbz-1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LbzProduct {
    pub left: String,
    pub right: String,
    /// label -> scalar string, nonzero coordinates only when emitted
    pub value: serde_json::Map<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LbzDocument {
    pub format: String,
    pub convention: Convention,
    pub field: String,
    pub dim: usize,
    pub basis: Vec<String>,
    pub products: Vec<LbzProduct>,
}

/// A parsed table over whichever field the document declared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTable {
    Rational(StructureTable<Rationals>),
    Prime(StructureTable<PrimeField>),
}

impl AnyTable {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyTable::Rational(_) => FieldSpec::Rationals,
            AnyTable::Prime(l) => l.field().spec(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            AnyTable::Rational(l) => l.dim(),
            AnyTable::Prime(l) => l.dim(),
        }
    }

    pub fn to_document(&self) -> LbzDocument {
        match self {
            AnyTable::Rational(l) => to_document(l),
            AnyTable::Prime(l) => to_document(l),
        }
    }
}

/// Runs the same generic code on either variant of an [`AnyTable`].
#[macro_export]
macro_rules! with_table {
    ($any:expr, $l:ident => $body:expr) => {
        match $any {
            $crate::lbz::AnyTable::Rational($l) => $body,
            $crate::lbz::AnyTable::Prime($l) => $body,
        }
    };
}

fn fmt_err(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

pub fn to_document<F: Field>(l: &StructureTable<F>) -> LbzDocument {
    let f = l.field();
    let n = l.dim();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = l.product(i, j);
            if linalg::is_zero_vector(f, v) {
                continue;
            }
            let value = v
                .iter()
                .enumerate()
                .filter(|(_, c)| !f.is_zero(c))
                .map(|(k, c)| (l.labels()[k].clone(), serde_json::Value::String(f.format(c))))
                .collect();
            products.push(LbzProduct {
                left: l.labels()[i].clone(),
                right: l.labels()[j].clone(),
                value,
            });
        }
    }
    LbzDocument {
        format: FORMAT_TAG.into(),
        convention: l.convention(),
        field: f.spec().to_string(),
        dim: n,
        basis: l.labels().to_vec(),
        products,
    }
}

pub fn emit<F: Field>(l: &StructureTable<F>) -> String {
    let mut s = serde_json::to_string_pretty(&to_document(l)).expect("documents serialize");
    s.push('\n');
    s
}

fn build<F: Field>(field: &F, doc: &LbzDocument) -> Result<StructureTable<F>> {
    let n = doc.dim;
    if doc.basis.len() != n {
        return Err(fmt_err(format!("dim is {n} but {} basis labels given", doc.basis.len())));
    }
    let index = |label: &str| {
        doc.basis
            .iter()
            .position(|b| b == label)
            .ok_or_else(|| fmt_err(format!("unknown basis label {label:?}")))
    };
    let mut t = StructureTable::zero_table(field, doc.basis.clone())?.with_convention(doc.convention);
    let mut seen = std::collections::HashSet::new();
    for p in &doc.products {
        let (i, j) = (index(&p.left)?, index(&p.right)?);
        if !seen.insert((i, j)) {
            return Err(fmt_err(format!("product [{}, {}] listed twice", p.left, p.right)));
        }
        let mut v = linalg::zero_vector(field, n);
        for (label, c) in &p.value {
            let k = index(label)?;
            let s = c
                .as_str()
                .ok_or_else(|| fmt_err(format!("coordinate of {label:?} must be a string")))?;
            v[k] = field.parse(s)?;
        }
        t.set_product(i, j, v)?;
    }
    Ok(t)
}

pub fn from_document(doc: &LbzDocument) -> Result<AnyTable> {
    if doc.format != FORMAT_TAG {
        return Err(fmt_err(format!("unsupported format {:?}", doc.format)));
    }
    let spec: FieldSpec = doc.field.parse()?;
    Ok(match spec {
        FieldSpec::Rationals => AnyTable::Rational(build(&Rationals, doc)?),
        FieldSpec::Prime(p) => AnyTable::Prime(build(&PrimeField::new(p as u64)?, doc)?),
    })
}

pub fn parse(text: &str) -> Result<AnyTable> {
    let doc: LbzDocument = serde_json::from_str(text).map_err(|e| fmt_err(e.to_string()))?;
    from_document(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn round_trip() {
        let f = PrimeField::new(5).unwrap();
        let d = families::diamond(&f).unwrap();
        let text = emit(&d);
        assert_eq!(parse(&text).unwrap(), AnyTable::Prime(d.clone()));
        assert_eq!(emit(&d), text);
        let q = families::cyclic_algebra(&Rationals, 3, &[num_rational::BigRational::new(1.into(), 2.into()), num_rational::BigRational::from_integer((-3).into())]).unwrap();
        let text = emit(&q);
        assert!(text.contains("\"1/2\"") && text.contains("\"-3\""));
        assert_eq!(parse(&text).unwrap(), AnyTable::Rational(q));
    }

    #[test]
    fn rejects_bad_documents() {
        let good = r#"{"format":"lbz-1","convention":"right","field":"GF(5)","dim":2,"basis":["a","b"],"products":[{"left":"b","right":"b","value":{"a":"1"}}]}"#;
        assert!(parse(good).is_ok());
        for bad in [
            good.replace("GF(5)", "GF(6)"),
            good.replace("\"1\"", "\"7\""),
            good.replace("\"dim\":2", "\"dim\":3"),
            good.replace("\"format\"", "\"extra\":1,\"format\""),
            good.replace("lbz-1", "lbz-2"),
            good.replace("\"left\":\"b\"", "\"left\":\"c\""),
            good.replace("\"right\"", "\"rite\""),
            good.replace("{\"a\":\"1\"}", "{\"a\":1}"),
            "not json".to_string(),
        ] {
            assert!(parse(&bad).is_err(), "accepted {bad}");
        }
    }
}
