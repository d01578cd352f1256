//! ChiTable v1 text format: a `chitable v1 n=<n>` header, then one
//! `<hex mask> <chi>` line per stored subset in ascending mask order.

use std::fmt::Write as _;

use qcolor_core::chromatic::{ChiTable, ChromaticError};
use qcolor_core::VertexSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChiTableError {
    #[error("bad header, expected `chitable v1 n=<n>`")]
    Header,
    #[error("line {line}: expected `<hex mask> <chi>`")]
    Entry { line: usize },
    #[error("line {line}: entries out of order")]
    Order { line: usize },
    #[error(transparent)]
    Table(#[from] ChromaticError),
}

pub fn write(table: &ChiTable) -> String {
    let mut out = format!("chitable v1 n={}\n", table.n());
    for (s, chi) in table.iter() {
        let _ = writeln!(out, "{:x} {chi}", s.bits());
    }
    out
}

/// Parses a dump. The size bound of the table is the largest subset listed.
pub fn parse(text: &str) -> Result<ChiTable, ChiTableError> {
    let mut lines = text.lines();
    let n: usize = lines
        .next()
        .and_then(|h| h.trim().strip_prefix("chitable v1 n="))
        .and_then(|n| n.parse().ok())
        .ok_or(ChiTableError::Header)?;
    let mut entries = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        if line.trim().is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace();
        let entry = (|| {
            let mask = u64::from_str_radix(toks.next()?, 16).ok()?;
            let chi = toks.next()?.parse::<u32>().ok()?;
            toks.next().is_none().then_some((VertexSet::from_bits(mask), chi))
        })()
        .ok_or(ChiTableError::Entry { line: line_no })?;
        if entries.last().is_some_and(|&(prev, _): &(VertexSet, u32)| prev.bits() >= entry.0.bits()) {
            return Err(ChiTableError::Order { line: line_no });
        }
        entries.push(entry);
    }
    let max_size = entries.iter().map(|(s, _)| s.len()).max().unwrap_or(0);
    Ok(ChiTable::from_entries(n, max_size, entries)?)
}
