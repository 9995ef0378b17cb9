//! The `NetFile` input format: one JSON document per object.
//!
//! ```json
//! {"p": 5, "kind": "net", "matrices": [[1,0,0,0,0,0,0,0,0], ...]}
//! ```
//!
//! Integers may be negative or exceed `p`; they are reduced on load.

use std::fmt;

use netclass::algebra::{MultTable, DIM};
use netclass::forms::{num_monomials, TernaryForm};
use netclass::gf::{FieldError, Fp, PrimeField};
use netclass::linalg::{is_symmetric, Mat3};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Net,
    Pencil,
    Ideal,
    Multtable,
}

/// A document as written, before reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetFile {
    pub p: u64,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<Vec<Vec<Vec<i64>>>>,
}

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("parse error: {0}")]
    Parse(ParseError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Where and why a document was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line of the document start, or of the JSON error.
    pub line: usize,
    pub column: usize,
    /// Path of the offending field, such as `matrices[1]`, empty for syntax errors.
    pub field: String,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)?;
        if !self.field.is_empty() {
            write!(f, ", field `{}`", self.field)?;
        }
        write!(f, ": {}", self.message)
    }
}

/// A validated object, reduced mod `p`.
#[derive(Clone, Debug)]
pub enum Object {
    Net([Mat3<Fp>; 3]),
    Pencil([Mat3<Fp>; 2]),
    Ideal(Vec<TernaryForm<Fp>>),
    Multtable(Box<MultTable>),
}

#[derive(Clone, Debug)]
pub struct Document {
    pub line: usize,
    pub field: PrimeField,
    pub object: Object,
}

/// Parses every JSON document in `text`; `prime` replaces each file's `p`.
pub fn parse_documents(text: &str, prime: Option<u64>) -> Result<Vec<Document>, InputError> {
    let mut docs = Vec::new();
    let mut stream = serde_json::Deserializer::from_str(text).into_iter::<Value>();
    loop {
        let start = stream.byte_offset();
        let value = match stream.next() {
            None => break,
            Some(Ok(v)) => v,
            Some(Err(e)) => {
                return Err(InputError::Parse(ParseError {
                    line: e.line(),
                    column: e.column(),
                    field: String::new(),
                    message: e.to_string(),
                }))
            }
        };
        let (line, column) = position(text, start);
        let at = |field: &str, message: String| {
            InputError::Parse(ParseError {
                line,
                column,
                field: field.to_string(),
                message,
            })
        };
        let raw: NetFile = serde_json::from_value(value).map_err(|e| at("", e.to_string()))?;
        let p = prime.unwrap_or(raw.p);
        let field = PrimeField::new(p)?;
        let object = raw.reduce(&field).map_err(|(f, m)| at(&f, m))?;
        docs.push(Document {
            line,
            field,
            object,
        });
    }
    if docs.is_empty() {
        return Err(InputError::Parse(ParseError {
            line: 1,
            column: 1,
            field: String::new(),
            message: "no document found".into(),
        }));
    }
    Ok(docs)
}

fn position(text: &str, offset: usize) -> (usize, usize) {
    // the stream offset sits before any whitespace preceding the document
    let skip = text[offset..].len() - text[offset..].trim_start().len();
    let before = &text[..offset + skip];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

type FieldResult<T> = Result<T, (String, String)>;

impl NetFile {
    fn reduce(&self, f: &PrimeField) -> FieldResult<Object> {
        match self.kind {
            Kind::Net => Ok(Object::Net(self.matrices::<3>(f)?)),
            Kind::Pencil => Ok(Object::Pencil(self.matrices::<2>(f)?)),
            Kind::Ideal => self.generators(f).map(Object::Ideal),
            Kind::Multtable => self.constants(f).map(|t| Object::Multtable(Box::new(t))),
        }
    }

    fn matrices<const R: usize>(&self, f: &PrimeField) -> FieldResult<[Mat3<Fp>; R]> {
        let mats = required(&self.matrices, "matrices", self.kind)?;
        if mats.len() != R {
            return Err((
                "matrices".into(),
                format!("expected {R} matrices, found {}", mats.len()),
            ));
        }
        let mut out = [[[Fp(0); 3]; 3]; R];
        for (k, entries) in mats.iter().enumerate() {
            let name = format!("matrices[{k}]");
            if entries.len() != 9 {
                return Err((name, format!("expected 9 entries, found {}", entries.len())));
            }
            for (i, &v) in entries.iter().enumerate() {
                out[k][i / 3][i % 3] = f.elem(v);
            }
            if !is_symmetric(&out[k]) {
                return Err((name, "matrix is not symmetric".into()));
            }
        }
        Ok(out)
    }

    fn generators(&self, f: &PrimeField) -> FieldResult<Vec<TernaryForm<Fp>>> {
        let gens = required(&self.generators, "generators", self.kind)?;
        gens.iter()
            .enumerate()
            .map(|(k, c)| {
                let degree = (1..=4)
                    .find(|&d| num_monomials(d) == c.len())
                    .ok_or_else(|| {
                        (
                            format!("generators[{k}]"),
                            format!("{} coefficients match no degree from 1 to 4", c.len()),
                        )
                    })?;
                Ok(TernaryForm::from_i64(f, degree, c))
            })
            .collect()
    }

    fn constants(&self, f: &PrimeField) -> FieldResult<MultTable> {
        let c = required(&self.constants, "constants", self.kind)?;
        let mut out = [[[0i64; DIM]; DIM]; DIM];
        let bad =
            |path: String, n: usize| Err((path, format!("expected {DIM} entries, found {n}")));
        if c.len() != DIM {
            return bad("constants".into(), c.len());
        }
        for (a, row) in c.iter().enumerate() {
            if row.len() != DIM {
                return bad(format!("constants[{a}]"), row.len());
            }
            for (b, v) in row.iter().enumerate() {
                if v.len() != DIM {
                    return bad(format!("constants[{a}][{b}]"), v.len());
                }
                out[a][b].copy_from_slice(v);
            }
        }
        Ok(MultTable::from_i64(f, &out))
    }
}

fn required<'a, T>(v: &'a Option<T>, name: &str, kind: Kind) -> FieldResult<&'a T> {
    v.as_ref()
        .ok_or_else(|| (name.to_string(), format!("required for kind {kind:?}")))
}

/// The document for a net, with entries as residues.
pub fn net_document(p: u64, basis: &[Mat3<Fp>; 3]) -> NetFile {
    NetFile {
        p,
        kind: Kind::Net,
        matrices: Some(
            basis
                .iter()
                .map(|m| m.iter().flatten().map(|x| x.0 as i64).collect())
                .collect(),
        ),
        generators: None,
        constants: None,
    }
}
