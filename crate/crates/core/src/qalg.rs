//! The `qalg/1` JSON algebra format.
//!
//! ```json
//! {"schema":"qalg/1","field":"Q","dim":1,"parity":[0],"unit":0,"kind":"assoc",
//!  "labels":["1"],"products":[[0,0,[[0,"1"]]]]}
//! ```
//!
//! `field` is `"Q"`, `{"Fp":p}`, or `"Qnu"`. Absent `(i, j)` pairs are zero
//! products. The canonical form lists products by `(i, j)` and terms by
//! basis index, so `parse(serialize(a)) == a` and serialization of a parsed
//! canonical file is byte-identical.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraBuilder, AlgebraKind, Parity, SuperAlgebra};
use crate::error::{Error, Result};
use crate::scalar::FieldSpec;

pub const SCHEMA: &str = "qalg/1";

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum FieldJson {
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QalgFile {
    schema: String,
    field: FieldJson,
    dim: usize,
    parity: Vec<u8>,
    #[serde(default)]
    unit: Option<usize>,
    kind: String,
    #[serde(default)]
    labels: Option<Vec<String>>,
    products: Vec<(usize, usize, Vec<(usize, String)>)>,
}

fn field_json(f: FieldSpec) -> FieldJson {
    match f {
        FieldSpec::Rationals => FieldJson::Name("Q".into()),
        FieldSpec::PrimeField(p) => FieldJson::Prime { fp: p },
        FieldSpec::NuPolynomials => FieldJson::Name("Qnu".into()),
    }
}

pub fn to_json(a: &SuperAlgebra) -> String {
    let file = QalgFile {
        schema: SCHEMA.into(),
        field: field_json(a.field()),
        dim: a.dim(),
        parity: a.parities().iter().map(|p| p.bit()).collect(),
        unit: a.unit_index(),
        kind: a.kind().to_string(),
        labels: Some(a.labels().to_vec()),
        products: a
            .products()
            .map(|(i, j, terms)| {
                (
                    i,
                    j,
                    terms.iter().map(|(k, c)| (*k, c.to_string())).collect(),
                )
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("qalg serialization cannot fail")
}

/// Parses and structurally checks a file; axioms are left to
/// [`SuperAlgebra::validate`].
pub fn from_json(text: &str) -> Result<SuperAlgebra> {
    let file: QalgFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))?;
    if file.schema != SCHEMA {
        return Err(Error::Parse(format!(
            "schema: expected {SCHEMA:?}, got {:?}",
            file.schema
        )));
    }
    let field = match &file.field {
        FieldJson::Name(n) if n == "Q" => FieldSpec::Rationals,
        FieldJson::Name(n) if n == "Qnu" => FieldSpec::NuPolynomials,
        FieldJson::Name(n) => return Err(Error::Parse(format!("field: unknown field {n:?}"))),
        FieldJson::Prime { fp } => FieldSpec::prime(*fp)?,
    };
    let kind = match file.kind.as_str() {
        "assoc" => AlgebraKind::Associative,
        "liesuper" => AlgebraKind::LieSuper,
        other => return Err(Error::Parse(format!("kind: unknown kind {other:?}"))),
    };
    if file.parity.len() != file.dim {
        return Err(Error::Parse(format!(
            "parity: {} entries for dim {}",
            file.parity.len(),
            file.dim
        )));
    }
    let parity = file
        .parity
        .iter()
        .enumerate()
        .map(|(i, &b)| match b {
            0 => Ok(Parity::Even),
            1 => Ok(Parity::Odd),
            _ => Err(Error::Parse(format!(
                "parity[{i}]: expected 0 or 1, got {b}"
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut b = AlgebraBuilder::new(field, kind, parity).unit(file.unit);
    if let Some(labels) = file.labels {
        if labels.len() != file.dim {
            return Err(Error::Parse(format!(
                "labels: {} entries for dim {}",
                labels.len(),
                file.dim
            )));
        }
        b = b.labels(labels);
    }
    let mut seen = std::collections::BTreeSet::new();
    for (idx, (i, j, terms)) in file.products.into_iter().enumerate() {
        if i >= file.dim || j >= file.dim {
            return Err(Error::Parse(format!(
                "products[{idx}]: index ({i}, {j}) out of range for dim {}",
                file.dim
            )));
        }
        if !seen.insert((i, j)) {
            return Err(Error::Parse(format!(
                "products[{idx}]: duplicate entry for ({i}, {j})"
            )));
        }
        for (t, (k, s)) in terms.into_iter().enumerate() {
            if k >= file.dim {
                return Err(Error::Parse(format!(
                    "products[{idx}][2][{t}]: basis index {k} out of range for dim {}",
                    file.dim
                )));
            }
            let c = field
                .parse_scalar(&s)
                .map_err(|e| Error::Parse(format!("products[{idx}][2][{t}]: {e}")))?;
            b.add_term(i, j, k, c);
        }
    }
    b.build()
}
