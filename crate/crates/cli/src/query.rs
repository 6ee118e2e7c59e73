//! Conjunctive filters over JSON records: `field OP value`.
//!
//! Fields are dotted paths (`ears.lr`). Operators are `=`, `!=`, `<`, `<=`,
//! `>`, `>=` (also `≤`, `≥`). Values are JSON (`5`, `null`, `[2,3]`,
//! `true`) or bare strings.

use std::cmp::Ordering;

use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Filter {
    pub path: Vec<String>,
    pub op: Op,
    pub value: Value,
}

const OPERATORS: [(&str, Op); 8] = [
    ("<=", Op::Le),
    (">=", Op::Ge),
    ("!=", Op::Ne),
    ("≤", Op::Le),
    ("≥", Op::Ge),
    ("=", Op::Eq),
    ("<", Op::Lt),
    (">", Op::Gt),
];

impl Filter {
    pub fn parse(expr: &str) -> Result<Self, CliError> {
        let bad = |why: &str| CliError::BadFilter(expr.to_string(), why.to_string());
        let (at, token, op) = OPERATORS
            .iter()
            .filter_map(|&(token, op)| expr.find(token).map(|at| (at, token, op)))
            // leftmost operator wins; the list order breaks ties toward two-character tokens
            .min_by_key(|&(at, _, _)| at)
            .ok_or_else(|| bad("no comparison operator"))?;
        let field = expr[..at].trim();
        let raw = expr[at + token.len()..].trim();
        if field.is_empty() || raw.is_empty() {
            return Err(bad("expected field OP value"));
        }
        let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
        if matches!(op, Op::Lt | Op::Le | Op::Gt | Op::Ge)
            && !(value.is_number() || value.is_string())
        {
            return Err(bad("ordering needs a number or string"));
        }
        Ok(Self {
            path: field.split('.').map(str::to_string).collect(),
            op,
            value,
        })
    }

    /// Errors if the path is absent from `template`.
    pub fn check_field(&self, template: &Value) -> Result<(), CliError> {
        match lookup(template, &self.path) {
            Some(_) => Ok(()),
            None => Err(CliError::BadFilter(
                self.path.join("."),
                "unknown field".into(),
            )),
        }
    }

    pub fn matches(&self, record: &Value) -> bool {
        let Some(actual) = lookup(record, &self.path) else {
            return false;
        };
        match self.op {
            Op::Eq => json_eq(actual, &self.value),
            Op::Ne => !json_eq(actual, &self.value),
            op => match compare(actual, &self.value) {
                Some(ord) => match op {
                    Op::Lt => ord == Ordering::Less,
                    Op::Le => ord != Ordering::Greater,
                    Op::Gt => ord == Ordering::Greater,
                    Op::Ge => ord != Ordering::Less,
                    Op::Eq | Op::Ne => unreachable!(),
                },
                None => false,
            },
        }
    }
}

pub fn matches_all(filters: &[Filter], record: &Value) -> bool {
    filters.iter().all(|f| f.matches(record))
}

fn lookup<'a>(mut v: &'a Value, path: &[String]) -> Option<&'a Value> {
    for key in path {
        v = v.as_object()?.get(key)?;
    }
    Some(v)
}

fn json_eq(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => x.as_f64() == y.as_f64(),
        _ => a == b,
    }
}

fn compare(a: &Value, b: &Value) -> Option<Ordering> {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => x.as_f64()?.partial_cmp(&y.as_f64()?),
        (Value::String(x), Value::String(y)) => Some(x.cmp(y)),
        _ => None,
    }
}
