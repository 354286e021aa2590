//! Invariant tables as JSON, CSV and Markdown.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::invariants::{ChernPairing, CubicForm, InvariantRecord};
use crate::json;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" => Ok(Format::Md),
            other => Err(format!("unknown format {other:?} (expected json, csv or md)")),
        }
    }
}

pub fn record_json(r: &InvariantRecord) -> Value {
    json!({
        "id": r.id,
        "hodge": [r.hodge.0, r.hodge.1],
        "cubic": json::numbers(r.cubic.to_array().iter()),
        "chern": [json::number(&r.chern.l1), json::number(&r.chern.l2)],
        "kernel": [json::number(&r.kernel.0), json::number(&r.kernel.1)],
        "lambda": json::number(&r.lambda),
    })
}

pub fn record_from_json(v: &Value) -> Result<InvariantRecord, String> {
    let int = |v: &Value| -> Result<BigInt, String> {
        match v {
            Value::Number(n) => json::to_bigint(n),
            other => Err(format!("expected an integer, found {other}")),
        }
    };
    let ints = |v: &Value, n: usize| -> Result<Vec<BigInt>, String> {
        let arr = v.as_array().filter(|a| a.len() == n).ok_or_else(|| format!("expected {n} integers, found {v}"))?;
        arr.iter().map(int).collect()
    };
    let id = v["id"].as_str().ok_or("missing id")?.to_string();
    let h = ints(&v["hodge"], 2)?;
    let to_u64 = |b: &BigInt| u64::try_from(b).map_err(|_| format!("hodge number {b} out of range"));
    let c = ints(&v["cubic"], 4)?;
    let l = ints(&v["chern"], 2)?;
    let k = ints(&v["kernel"], 2)?;
    Ok(InvariantRecord {
        id,
        hodge: (to_u64(&h[0])?, to_u64(&h[1])?),
        cubic: CubicForm::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()),
        chern: ChernPairing::new(l[0].clone(), l[1].clone()),
        kernel: (k[0].clone(), k[1].clone()),
        lambda: int(&v["lambda"])?,
    })
}

pub fn render(records: &[InvariantRecord], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&Value::Array(records.iter().map(record_json).collect()))
                .expect("records serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("id,h11,h21,c30,c21,c12,c03,ker_a,ker_b,lambda\n");
            for r in records {
                s.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{}\n",
                    r.id, r.hodge.0, r.hodge.1, r.cubic.c30, r.cubic.c21, r.cubic.c12, r.cubic.c03, r.kernel.0, r.kernel.1, r.lambda
                ));
            }
            s
        }
        Format::Md => {
            let mut s = String::from("| ID | (h11,h21) | (e1^3, e1^2e2, e1e2^2, e2^3) | lambda |\n|---|---|---|---|\n");
            for r in records {
                s.push_str(&format!("{}\n", md_row(r)));
            }
            s
        }
    }
}

pub fn md_row(r: &InvariantRecord) -> String {
    format!(
        "| {} | ({},{}) | ({},{},{},{}) | {} |",
        r.id, r.hodge.0, r.hodge.1, r.cubic.c30, r.cubic.c21, r.cubic.c12, r.cubic.c03, r.lambda
    )
}
