//! Machine-readable run reports. Field order is fixed by declaration order,
//! and real numbers are rounded to 6 decimals before serialization.

use qcolor_core::branching::CostLedger;
use qcolor_core::exponents::{ExponentRow, KPrime};
use serde::{Serialize, Serializer};

fn six<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64((x * 1e6).round() / 1e6)
}

fn ten<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64((x * 1e10).round() / 1e10)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input: Input,
    pub result: RunResult,
    pub ledger: Option<LedgerReport>,
    #[serde(serialize_with = "six")]
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Input {
    File { path: String },
    Generator { spec: String, seed: Option<u64> },
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunResult {
    Chromatic { algo: String, chi: u32 },
    Kcolor { algo: String, k: u32, bound: Option<u32>, answer: String },
    Mis { size: Option<u32>, count: usize, sets: Option<Vec<Vec<usize>>>, coverage: Option<String> },
    Table { table: u32, method: String, f3: String, rows: Vec<TableRow> },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LedgerReport {
    pub leaves: u64,
    pub nodes: u64,
    pub depth: u32,
    #[serde(serialize_with = "six")]
    pub grover_log2: f64,
}

impl From<&CostLedger> for LedgerReport {
    fn from(l: &CostLedger) -> Self {
        LedgerReport {
            leaves: l.leaves_visited,
            nodes: l.nodes_visited,
            depth: l.max_depth,
            grover_log2: l.grover_log2,
        }
    }
}

/// One exponent row; `kprime` is 1 for the first reduction and absent for `k = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TableRow {
    pub k: u32,
    #[serde(serialize_with = "ten")]
    pub value: f64,
    #[serde(serialize_with = "ten")]
    pub base: f64,
    pub kprime: Option<u32>,
}

impl From<&ExponentRow> for TableRow {
    fn from(r: &ExponentRow) -> Self {
        TableRow { k: r.k, value: r.value, base: r.base, kprime: r.kprime.map(KPrime::label) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_json() {
        let r = RunReport {
            command: "chromatic --algo chr".into(),
            input: Input::File { path: "c5.col".into() },
            result: RunResult::Chromatic { algo: "chr".into(), chi: 3 },
            ledger: Some(LedgerReport { leaves: 4, nodes: 9, depth: 2, grover_log2: 1.0 / 3.0 }),
            wall_time_ms: 0.1234567,
        };
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"command":"chromatic --algo chr","input":{"kind":"file","path":"c5.col"},"result":{"chromatic":{"algo":"chr","chi":3}},"ledger":{"leaves":4,"nodes":9,"depth":2,"grover_log2":0.333333},"wall_time_ms":0.123457}"#
        );
    }
}
