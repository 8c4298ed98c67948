use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclotomic::CycNum;
use crate::lie_algebra::{Grading, StructureTable};
use crate::linalg::{dense_to_sparse, Matrix};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub case: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str, case: &str) -> Self {
        Report { schema: SCHEMA, command: command.into(), case: case.into(), checks: Vec::new(), passed: true }
    }

    pub fn push(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.push_with(name, passed, detail, None);
    }

    pub fn push_with(&mut self, name: &str, passed: bool, detail: impl Into<String>, witness: Option<Value>) {
        self.passed &= passed;
        self.checks.push(Check { name: name.into(), passed, detail: detail.into(), witness });
    }

    /// A check from a `Result`: the witness is the error value.
    pub fn push_result<T, E: Serialize>(&mut self, name: &str, r: Result<T, E>, ok: impl FnOnce(T) -> String) {
        match r {
            Ok(v) => self.push(name, true, ok(v)),
            Err(e) => self.push_with(name, false, "counterexample found", serde_json::to_value(e).ok()),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.command, self.case);
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(s, "{status}  {:width$}  {}", c.name, c.detail);
            if let Some(w) = &c.witness {
                let _ = write!(s, "  witness: {w}");
            }
            s.push('\n');
        }
        let _ = writeln!(s, "{}", if self.passed { "all checks passed" } else { "verification failed" });
        s
    }
}

fn terms(v: &[(usize, CycNum)]) -> Value {
    Value::Array(v.iter().map(|(k, c)| json!({"k": k, "coeff": c})).collect())
}

/// Structure constants for `i < j`, in the exported schema.
pub fn brackets_json(table: &StructureTable) -> Value {
    Value::Array(
        table
            .nonzero_pairs()
            .into_iter()
            .map(|(i, j)| json!({"i": i, "j": j, "terms": terms(&table.basis_bracket(i, j))}))
            .collect(),
    )
}

pub fn grading_json(grading: &Grading) -> Value {
    let bases: Vec<Value> = (0..grading.bases.len())
        .map(|j| Value::Array(grading.bases[j].iter().map(|v| terms(&dense_to_sparse(v))).collect()))
        .collect();
    json!({"dims": grading.dims(), "bases": bases})
}

pub fn structure_json(labels: &[String], table: &StructureTable, grading: Option<&Grading>, aut_order: Option<u64>) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "basis": labels,
        "dim": table.dim(),
        "field_order": table.field_order(),
        "brackets": brackets_json(table),
    });
    if let Some(g) = grading {
        v["grading"] = grading_json(g);
    }
    if let Some(d) = aut_order {
        v["aut_order"] = json!(d);
    }
    v
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|c| json!(c)).collect())).collect())
}

pub fn vectors_json(vs: &[Vec<CycNum>]) -> Value {
    Value::Array(vs.iter().map(|v| terms(&dense_to_sparse(v))).collect())
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("artifact serializes") + "\n"
}
