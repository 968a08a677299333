//! Instance-level audits of the main inequality, the identities used to
//! prove it, and the h-vector and classifier facts around it.
//!
//! Every check is stored with both sides of the relation it tests, and its
//! verdict is recomputed from those recorded values alone (see
//! [`recompute_verdict`]).

mod checks;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::generators::SuiteInstance;
use crate::homology::PrimeField;

pub use checks::audit_poset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

/// How `lhs` and `rhs` are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Exact equality of the recorded values.
    Eq,
    /// Integer comparison `lhs ≥ rhs`.
    Ge,
    /// Booleans with `lhs ⇒ rhs`.
    Implies,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub relation: Relation,
    pub lhs: Value,
    pub rhs: Value,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
}

impl CheckRecord {
    /// A check whose verdict is computed from `lhs` and `rhs`; the witness
    /// is kept only when the check fails.
    pub fn new(id: &str, anchor: &str, relation: Relation, lhs: Value, rhs: Value, witness: Value) -> Self {
        let mut rec = CheckRecord {
            id: id.to_owned(),
            anchor: anchor.to_owned(),
            relation,
            lhs,
            rhs,
            verdict: Verdict::Inapplicable,
            witness,
        };
        rec.verdict = recompute_verdict(&rec);
        if rec.verdict == Verdict::Pass {
            rec.witness = Value::Null;
        }
        rec
    }

    /// A check skipped because the named hypotheses do not hold.
    pub fn inapplicable(id: &str, anchor: &str, relation: Relation, missing: &[&str]) -> Self {
        CheckRecord {
            id: id.to_owned(),
            anchor: anchor.to_owned(),
            relation,
            lhs: Value::Null,
            rhs: Value::Null,
            verdict: Verdict::Inapplicable,
            witness: serde_json::json!({ "requires": missing }),
        }
    }

    /// A check that could not be evaluated although its hypotheses hold.
    pub fn error(id: &str, anchor: &str, relation: Relation, message: String) -> Self {
        CheckRecord {
            id: id.to_owned(),
            anchor: anchor.to_owned(),
            relation,
            lhs: Value::Null,
            rhs: Value::Bool(true),
            verdict: Verdict::Fail,
            witness: serde_json::json!({ "error": message }),
        }
    }
}

/// JSON integer when it fits in `i64`, decimal string otherwise.
pub fn int_value(v: &BigInt) -> Value {
    use num_traits::ToPrimitive;
    match v.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(v.to_string()),
    }
}

fn parse_int(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// The verdict implied by a record's relation and recorded sides.
/// Records with both sides null are inapplicable; values that do not fit
/// the relation fail.
pub fn recompute_verdict(rec: &CheckRecord) -> Verdict {
    if rec.lhs.is_null() && rec.rhs.is_null() {
        return Verdict::Inapplicable;
    }
    let ok = match rec.relation {
        Relation::Eq => rec.lhs == rec.rhs,
        Relation::Ge => matches!((parse_int(&rec.lhs), parse_int(&rec.rhs)), (Some(a), Some(b)) if a >= b),
        Relation::Implies => match (&rec.lhs, &rec.rhs) {
            (Value::Bool(a), Value::Bool(b)) => !a || *b,
            _ => false,
        },
    };
    if ok {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// A hypothesis evaluated before the checks that depend on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub id: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub instance: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    pub field: u32,
    pub elements: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    pub hypotheses: Vec<Hypothesis>,
    pub checks: Vec<CheckRecord>,
}

impl AuditReport {
    pub fn hypothesis(&self, id: &str) -> Option<bool> {
        self.hypotheses.iter().find(|h| h.id == id).map(|h| h.holds)
    }

    pub fn check(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.verdict == Verdict::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AuditOptions {
    pub field: PrimeField,
    /// Largest poset (by element count) whose interval poset homology is
    /// compared with its own.
    pub interval_homology_limit: usize,
    /// Largest order complex (by face count) handed to the classifiers.
    pub classifier_face_limit: usize,
}

impl AuditOptions {
    pub fn new(field: PrimeField) -> Self {
        AuditOptions { field, interval_homology_limit: 60, classifier_face_limit: 100_000 }
    }
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self::new(PrimeField::default())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub checks: usize,
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
}

impl Summary {
    fn add(&mut self, report: &AuditReport) {
        self.instances += 1;
        for c in &report.checks {
            self.checks += 1;
            match c.verdict {
                Verdict::Pass => self.pass += 1,
                Verdict::Fail => self.fail += 1,
                Verdict::Inapplicable => self.inapplicable += 1,
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub field: u32,
    pub instances: Vec<AuditReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Audits every instance (in parallel) and orders the reports by name.
pub fn audit_suite(suite: &str, instances: &[SuiteInstance], options: AuditOptions) -> SuiteReport {
    let mut reports: Vec<AuditReport> = instances
        .par_iter()
        .map(|inst| {
            let mut r = audit_poset(&inst.name, &inst.poset, options);
            r.family = Some(inst.family.clone());
            r
        })
        .collect();
    reports.sort_by(|a, b| a.instance.cmp(&b.instance));
    let mut summary = Summary::default();
    for r in &reports {
        summary.add(r);
    }
    SuiteReport { suite: suite.to_owned(), field: options.field.characteristic(), instances: reports, summary }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn verdicts_follow_values() {
        assert_eq!(CheckRecord::new("a", "x", Relation::Eq, json!(3), json!(3), json!("w")).witness, Value::Null);
        assert_eq!(CheckRecord::new("a", "x", Relation::Ge, json!(2), json!(3), Value::Null).verdict, Verdict::Fail);
        let big = json!("100000000000000000000000");
        assert_eq!(CheckRecord::new("a", "x", Relation::Ge, big, json!(3), Value::Null).verdict, Verdict::Pass);
        let imp = CheckRecord::new("a", "x", Relation::Implies, json!(false), json!(false), Value::Null);
        assert_eq!(imp.verdict, Verdict::Pass);
        assert_eq!(CheckRecord::new("a", "x", Relation::Ge, json!([1]), json!(0), Value::Null).verdict, Verdict::Fail);
        let skipped = CheckRecord::inapplicable("a", "x", Relation::Eq, &["graded"]);
        assert_eq!(recompute_verdict(&skipped), Verdict::Inapplicable);
        let err = CheckRecord::error("a", "x", Relation::Eq, "boom".into());
        assert_eq!(recompute_verdict(&err), Verdict::Fail);
    }
}
