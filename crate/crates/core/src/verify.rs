//! Recomputes every published number from the catalog inputs and compares.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use crate::catalog::{derive_c2_coeffs, hodge_numbers, Catalog, FanoFamily, TensorProvenance};
use crate::invariants::{geometric_tensor, invariant_record, InvariantRecord};
use crate::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckName {
    Hodge,
    Cubic,
    Kernel,
    Lambda,
    C2Coeffs,
    GeometricTensorAgreement,
}

impl CheckName {
    pub const ALL: [CheckName; 6] = [
        CheckName::Hodge,
        CheckName::Cubic,
        CheckName::Kernel,
        CheckName::Lambda,
        CheckName::C2Coeffs,
        CheckName::GeometricTensorAgreement,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Hodge => "hodge",
            CheckName::Cubic => "cubic",
            CheckName::Kernel => "kernel",
            CheckName::Lambda => "lambda",
            CheckName::C2Coeffs => "c2_coeffs",
            CheckName::GeometricTensorAgreement => "geometric_tensor_agreement",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Match => "Match",
            Status::Mismatch => "Mismatch",
            Status::NotApplicable => "NotApplicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub id: String,
    pub check: CheckName,
    pub computed: String,
    pub published: String,
    pub status: Status,
    /// Listed in the catalog's known discrepancies.
    pub known: bool,
}

/// Pairwise lambda-distinctness inside one Hodge-number group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCheck {
    pub hodge: (u64, u64),
    pub lambdas: Vec<(String, BigInt)>,
    pub status: Status,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub matched: usize,
    pub mismatched: usize,
    pub known_mismatches: usize,
    pub not_applicable: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub results: Vec<CheckResult>,
    pub groups: Vec<GroupCheck>,
    pub summary: Summary,
    /// Rows whose invariants could not be computed at all.
    pub errors: Vec<(String, String)>,
}

impl VerificationReport {
    pub fn get(&self, id: &str, check: CheckName) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.id == id && r.check == check)
    }

    pub fn unexpected_mismatches(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Mismatch && !r.known)
    }

    /// 0 when everything matches up to documented discrepancies (or with no
    /// mismatch at all under `strict`), 1 otherwise.
    pub fn exit_code(&self, strict: bool) -> i32 {
        let group_failure = self.groups.iter().any(|g| g.status == Status::Mismatch);
        let failing = if strict {
            self.results.iter().any(|r| r.status == Status::Mismatch)
        } else {
            self.unexpected_mismatches().next().is_some()
        };
        if failing || group_failure || !self.errors.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "results": self.results.iter().map(|r| json!({
                "id": r.id,
                "check": r.check.as_str(),
                "computed": r.computed,
                "published": r.published,
                "status": r.status.as_str(),
                "known_discrepancy": r.known,
            })).collect::<Vec<_>>(),
            "groups": self.groups.iter().map(|g| json!({
                "hodge": [g.hodge.0, g.hodge.1],
                "lambdas": g.lambdas.iter().map(|(id, l)| json!({"id": id, "lambda": json::number(l)})).collect::<Vec<_>>(),
                "status": g.status.as_str(),
            })).collect::<Vec<_>>(),
            "errors": self.errors.iter().map(|(id, e)| json!({"id": id, "error": e})).collect::<Vec<_>>(),
            "summary": {
                "match": self.summary.matched,
                "mismatch": self.summary.mismatched,
                "known_mismatch": self.summary.known_mismatches,
                "not_applicable": self.summary.not_applicable,
            },
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let tag = match (r.status, r.known) {
                (Status::Mismatch, true) => "Mismatch (known)",
                (s, _) => s.as_str(),
            };
            out.push_str(&format!(
                "{:<6} {:<28} {:<18} computed={} published={}\n",
                r.id,
                r.check.as_str(),
                tag,
                r.computed,
                r.published
            ));
        }
        for g in &self.groups {
            let lambdas: Vec<String> = g.lambdas.iter().map(|(id, l)| format!("{id}:{l}")).collect();
            out.push_str(&format!(
                "group ({},{}) lambda-distinct: {} [{}]\n",
                g.hodge.0,
                g.hodge.1,
                g.status.as_str(),
                lambdas.join(", ")
            ));
        }
        for (id, e) in &self.errors {
            out.push_str(&format!("{id}: error: {e}\n"));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "summary: {} match, {} mismatch ({} known), {} not applicable\n",
            s.matched, s.mismatched, s.known_mismatches, s.not_applicable
        ));
        out
    }
}

fn pair(a: &BigInt, b: &BigInt) -> String {
    format!("({a},{b})")
}

fn tuple4(v: &[BigInt; 4]) -> String {
    format!("({},{},{},{})", v[0], v[1], v[2], v[3])
}

fn compare(id: &str, check: CheckName, computed: String, published: Option<String>) -> CheckResult {
    let (published, status) = match published {
        Some(p) => {
            let status = if p == computed { Status::Match } else { Status::Mismatch };
            (p, status)
        }
        None => ("-".to_string(), Status::NotApplicable),
    };
    CheckResult { id: id.to_string(), check, computed, published, status, known: false }
}

fn sign_normalized(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    if a.is_negative() || (a.sign() == num_bigint::Sign::NoSign && b.is_negative()) {
        (-a, -b)
    } else {
        (a.clone(), b.clone())
    }
}

fn check_family(f: &FanoFamily, record: Option<&InvariantRecord>) -> Vec<CheckResult> {
    let id = f.id.as_str();
    let mut out = Vec::with_capacity(6);

    let (h11, h21) = hodge_numbers(f);
    let published_hodge = format!("({},{})", f.published.hodge.0, f.published.hodge.1);
    out.push(compare(id, CheckName::Hodge, format!("({h11},{h21})"), Some(published_hodge)));

    let published_cubic = f.published.cubic.as_ref().map(|c| tuple4(&c.to_array()));
    let published_kernel = f.published.kernel_generator.as_ref().map(|(a, b)| {
        let (a, b) = sign_normalized(a, b);
        pair(&a, &b)
    });
    let published_lambda = f.published.lambda.as_ref().map(|l| l.to_string());
    match record {
        Some(r) => {
            out.push(compare(id, CheckName::Cubic, tuple4(&r.cubic.to_array()), published_cubic));
            out.push(compare(id, CheckName::Kernel, pair(&r.kernel.0, &r.kernel.1), published_kernel));
            out.push(compare(id, CheckName::Lambda, r.lambda.to_string(), published_lambda));
        }
        None => {
            for check in [CheckName::Cubic, CheckName::Kernel, CheckName::Lambda] {
                out.push(CheckResult {
                    id: id.to_string(),
                    check,
                    computed: "undefined".to_string(),
                    published: "-".to_string(),
                    status: Status::Mismatch,
                    known: false,
                });
            }
        }
    }

    let (p, q) = derive_c2_coeffs(f.index_r, f.h3_geom, f.k);
    out.push(compare(id, CheckName::C2Coeffs, format!("({p},{q})"), Some(format!("({},{})", f.c2_p, f.c2_q))));

    // A geometric-provenance tensor is the geometric rule itself; comparing
    // it with itself says nothing.
    let geometric = match (f.tensor_provenance, geometric_tensor(f)) {
        (TensorProvenance::Geometric, Ok(t)) => CheckResult {
            id: id.to_string(),
            check: CheckName::GeometricTensorAgreement,
            computed: tuple4(&t.to_array()),
            published: "-".to_string(),
            status: Status::NotApplicable,
            known: false,
        },
        (_, Ok(t)) => compare(
            id,
            CheckName::GeometricTensorAgreement,
            tuple4(&t.to_array()),
            Some(tuple4(&f.tensor.to_array())),
        ),
        (_, Err(e)) => CheckResult {
            id: id.to_string(),
            check: CheckName::GeometricTensorAgreement,
            computed: e.to_string(),
            published: tuple4(&f.tensor.to_array()),
            status: Status::NotApplicable,
            known: false,
        },
    };
    out.push(geometric);

    // Rows without published invariants only get the checks that have a
    // reference value.
    if !f.has_published_invariants() {
        for r in out.iter_mut().filter(|r| matches!(r.check, CheckName::Cubic | CheckName::Kernel | CheckName::Lambda)) {
            r.status = Status::NotApplicable;
        }
    }
    out
}

pub fn verify(catalog: &Catalog) -> VerificationReport {
    let mut results = Vec::new();
    let mut errors = Vec::new();
    let mut by_hodge: BTreeMap<(u64, u64), Vec<(String, BigInt)>> = BTreeMap::new();

    for f in &catalog.families {
        let record = match invariant_record(f) {
            Ok(r) => Some(r),
            Err(e) => {
                errors.push((f.id.clone(), e.to_string()));
                None
            }
        };
        if let (Some(r), true) = (&record, f.has_published_invariants()) {
            by_hodge.entry(r.hodge).or_default().push((r.id.clone(), r.lambda.clone()));
        }
        let mut rows = check_family(f, record.as_ref());
        for r in &mut rows {
            r.known = catalog.is_known_discrepancy(&r.id, r.check);
        }
        results.extend(rows);
    }

    let groups = by_hodge
        .into_iter()
        .filter(|(_, members)| members.len() > 1)
        .map(|(hodge, lambdas)| {
            let distinct = lambdas.iter().enumerate().all(|(i, (_, a))| lambdas[i + 1..].iter().all(|(_, b)| a != b));
            GroupCheck { hodge, lambdas, status: if distinct { Status::Match } else { Status::Mismatch } }
        })
        .collect();

    let mut summary = Summary::default();
    for r in &results {
        match r.status {
            Status::Match => summary.matched += 1,
            Status::Mismatch => {
                summary.mismatched += 1;
                if r.known {
                    summary.known_mismatches += 1;
                }
            }
            Status::NotApplicable => summary.not_applicable += 1,
        }
    }
    VerificationReport { results, groups, summary, errors }
}
