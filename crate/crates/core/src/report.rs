//! A format-neutral report: ordered scalar fields plus an optional table.
//! Big integers are carried as decimal strings.

use crate::exactcomb::{BigNat, BigRat};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: String,
    pub fields: Vec<(String, Value)>,
    pub table: Option<Table>,
    /// None when the report carries no assertion.
    pub pass: Option<bool>,
}

pub fn big(v: &BigNat) -> Value {
    Value::String(v.to_string())
}

pub fn ratio(v: &BigRat) -> Value {
    Value::String(v.to_string())
}

impl Report {
    pub fn new(kind: &str) -> Self {
        Report { kind: kind.to_string(), fields: Vec::new(), table: None, pass: None }
    }

    pub fn field(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.fields.push((key.to_string(), v.into()));
        self
    }

    pub fn push(&mut self, key: &str, v: impl Into<Value>) {
        self.fields.push((key.to_string(), v.into()));
    }

    pub fn with_table(mut self, columns: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some(Table { columns: columns.iter().map(|c| c.to_string()).collect(), rows });
        self
    }

    pub fn with_pass(mut self, pass: bool) -> Self {
        self.pass = Some(pass);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), Value::String(self.kind.clone()));
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        if let Some(t) = &self.table {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| {
                    let mut o = Map::new();
                    for (c, v) in t.columns.iter().zip(r) {
                        o.insert(c.clone(), Value::String(v.clone()));
                    }
                    Value::Object(o)
                })
                .collect();
            m.insert("rows".into(), Value::Array(rows));
        }
        if let Some(p) = self.pass {
            m.insert("pass".into(), Value::Bool(p));
        }
        Value::Object(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcomb::nat;

    #[test]
    fn json_keeps_field_order_and_strings() {
        let r = Report::new("x").field("b", big(&nat(12))).field("a", 1).with_pass(true);
        let s = serde_json::to_string(&r.to_json()).unwrap();
        assert_eq!(s, r#"{"kind":"x","b":"12","a":1,"pass":true}"#);
    }
}
