//! Finite partial algebras, terms with definedness, and theory checking.

mod check;
mod term;
mod theory;

pub use check::{
    check_quasi_identity, holds_strong_weak, holds_weak, AxiomReport, Checker, ClauseOutcome, Semantics, Verdict,
};
pub use term::Term;
pub use theory::{Atom, Clause, Formula, Theory};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Table entry marking an undefined result.
pub(crate) const UNDEF: u16 = u16::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpSym {
    pub name: String,
    pub arity: usize,
}

/// Operation symbols with arities; constants have arity 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    ops: Vec<OpSym>,
}

impl Signature {
    pub fn new(ops: impl IntoIterator<Item = (impl Into<String>, usize)>) -> Result<Self> {
        let ops: Vec<OpSym> = ops
            .into_iter()
            .map(|(name, arity)| OpSym {
                name: name.into(),
                arity,
            })
            .collect();
        for (i, op) in ops.iter().enumerate() {
            if ops[..i].iter().any(|o| o.name == op.name) {
                return Err(Error::SignatureMismatch(format!(
                    "operation `{}` declared twice",
                    op.name
                )));
            }
        }
        Ok(Signature { ops })
    }

    pub fn ops(&self) -> &[OpSym] {
        &self.ops
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn arity(&self, op: usize) -> usize {
        self.ops[op].arity
    }
}

/// A finite carrier with one partial table per operation symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAlgebraModel {
    signature: Signature,
    labels: Vec<String>,
    members: Option<Vec<Vec<String>>>,
    tables: Vec<Vec<u16>>,
}

impl PartialAlgebraModel {
    /// `tables[op]` lists results in row-major argument order, `None` for
    /// undefined entries.
    pub fn new(signature: Signature, labels: Vec<String>, tables: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = labels.len();
        if n >= UNDEF as usize {
            return Err(Error::SizeCapExceeded {
                what: "partial algebra carrier",
                size: n,
                cap: UNDEF as usize - 1,
            });
        }
        let mut seen = HashMap::new();
        for l in &labels {
            if seen.insert(l.as_str(), ()).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        if tables.len() != signature.ops.len() {
            return Err(Error::SignatureMismatch(format!(
                "{} tables for {} operations",
                tables.len(),
                signature.ops.len()
            )));
        }
        let mut packed = Vec::with_capacity(tables.len());
        for (op, table) in signature.ops.iter().zip(tables) {
            let expected = n.pow(op.arity as u32);
            if table.len() != expected {
                return Err(Error::SignatureMismatch(format!(
                    "table of `{}` has {} entries, expected {expected}",
                    op.name,
                    table.len()
                )));
            }
            let row = table
                .into_iter()
                .map(|v| match v {
                    None => Ok(UNDEF),
                    Some(x) if x < n => Ok(x as u16),
                    Some(x) => Err(Error::UnknownElement(format!("#{x} in table of `{}`", op.name))),
                })
                .collect::<Result<Vec<u16>>>()?;
            packed.push(row);
        }
        Ok(PartialAlgebraModel {
            signature,
            labels,
            members: None,
            tables: packed,
        })
    }

    pub fn with_members(mut self, members: Vec<Vec<String>>) -> Self {
        assert_eq!(members.len(), self.labels.len());
        self.members = Some(members);
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn members(&self) -> Option<&[Vec<String>]> {
        self.members.as_deref()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn op(&self, name: &str) -> Result<usize> {
        self.signature
            .index_of(name)
            .ok_or_else(|| Error::SignatureMismatch(format!("model has no operation `{name}`")))
    }

    fn offset(&self, args: &[usize]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.labels.len() + a)
    }

    /// `op(args)`, `None` where undefined.
    #[inline]
    pub fn apply(&self, op: usize, args: &[usize]) -> Option<usize> {
        debug_assert_eq!(args.len(), self.signature.arity(op));
        let v = self.tables[op][self.offset(args)];
        (v != UNDEF).then_some(v as usize)
    }

    #[inline]
    pub(crate) fn raw(&self, op: usize, offset: usize) -> u16 {
        self.tables[op][offset]
    }

    pub fn apply_named(&self, name: &str, args: &[usize]) -> Result<Option<usize>> {
        let op = self.op(name)?;
        let arity = self.signature.arity(op);
        if arity != args.len() {
            return Err(Error::ArityMismatch {
                op: name.to_string(),
                expected: arity,
                found: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.len()) {
            return Err(Error::UnknownElement(format!("#{bad}")));
        }
        Ok(self.apply(op, args))
    }

    /// Overwrites one table entry.
    pub fn set(&mut self, name: &str, args: &[usize], value: Option<usize>) -> Result<()> {
        self.apply_named(name, args)?;
        if let Some(v) = value.filter(|&v| v >= self.len()) {
            return Err(Error::UnknownElement(format!("#{v}")));
        }
        let op = self.op(name)?;
        let off = self.offset(args);
        self.tables[op][off] = value.map_or(UNDEF, |v| v as u16);
        Ok(())
    }

    /// Whether every entry of the table is defined.
    pub fn is_total(&self, op: usize) -> bool {
        !self.tables[op].contains(&UNDEF)
    }

    pub fn to_json(&self) -> ModelJson {
        let n = self.len();
        let value = |v: u16| {
            if v == UNDEF {
                Value::Null
            } else {
                Value::String(self.labels[v as usize].clone())
            }
        };
        let operations = self
            .signature
            .ops
            .iter()
            .zip(&self.tables)
            .map(|(op, table)| {
                let table = match op.arity {
                    0 => value(table[0]),
                    _ => nest(table, n, op.arity, &value),
                };
                OperationJson {
                    name: op.name.clone(),
                    arity: op.arity,
                    table,
                }
            })
            .collect();
        ModelJson {
            carrier: self.labels.clone(),
            members: self.members.clone(),
            operations,
        }
    }

    pub fn from_json(json: &ModelJson) -> Result<Self> {
        let index: HashMap<&str, usize> = json.carrier.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let n = json.carrier.len();
        let signature = Signature::new(json.operations.iter().map(|o| (o.name.clone(), o.arity)))?;
        let mut tables = Vec::new();
        for op in &json.operations {
            let mut flat = Vec::with_capacity(n.pow(op.arity as u32));
            flatten(&op.table, op.arity, n, &index, &op.name, &mut flat)?;
            tables.push(flat);
        }
        let model = Self::new(signature, json.carrier.clone(), tables)?;
        Ok(match &json.members {
            Some(m) if m.len() == n => model.with_members(m.clone()),
            Some(m) => {
                return Err(Error::Parse(format!(
                    "{} member lists for {n} carrier elements",
                    m.len()
                )));
            }
            None => model,
        })
    }
}

fn nest(table: &[u16], n: usize, arity: usize, value: &impl Fn(u16) -> Value) -> Value {
    if arity == 1 {
        Value::Array(table.iter().map(|&v| value(v)).collect())
    } else {
        let stride = n.pow(arity as u32 - 1);
        Value::Array(
            (0..n)
                .map(|i| nest(&table[i * stride..(i + 1) * stride], n, arity - 1, value))
                .collect(),
        )
    }
}

fn flatten(
    v: &Value,
    arity: usize,
    n: usize,
    index: &HashMap<&str, usize>,
    op: &str,
    out: &mut Vec<Option<usize>>,
) -> Result<()> {
    if arity == 0 {
        out.push(match v {
            Value::Null => None,
            Value::String(s) => Some(*index.get(s.as_str()).ok_or_else(|| Error::UnknownElement(s.clone()))?),
            other => return Err(Error::Parse(format!("table of `{op}`: unexpected entry {other}"))),
        });
        return Ok(());
    }
    match v {
        Value::Array(items) if items.len() == n => {
            items.iter().try_for_each(|x| flatten(x, arity - 1, n, index, op, out))
        }
        _ => Err(Error::Parse(format!(
            "table of `{op}` must be nested arrays of length {n}"
        ))),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperationJson {
    pub name: String,
    pub arity: usize,
    pub table: Value,
}

/// Carrier labels, optional member lists, and nested operation tables with
/// `null` for undefined entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelJson {
    pub carrier: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<Vec<String>>>,
    pub operations: Vec<OperationJson>,
}
