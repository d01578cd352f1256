//! DIMACS `.col` graphs: `c` comments, one `p edge <n> <m>` line, then
//! 1-indexed `e <u> <v>` lines. The declared edge count is not enforced,
//! since many published instances list each edge in both directions.

use std::fmt::Write as _;

use qcolor_core::{Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DimacsError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing `p edge` line")]
    MissingProblem,
    #[error("line {line}: edge before the `p` line")]
    EdgeBeforeProblem { line: usize },
    #[error("line {line}: {source}")]
    Graph { line: usize, source: GraphError },
}

fn syntax(line: usize, msg: impl Into<String>) -> DimacsError {
    DimacsError::Syntax { line, msg: msg.into() }
}

fn number(line: usize, tok: Option<&str>, what: &str) -> Result<usize, DimacsError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("bad {what} `{tok}`")))
}

pub fn parse(text: &str) -> Result<Graph, DimacsError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if n.is_some() {
                    return Err(syntax(line, "second `p` line"));
                }
                match toks.next() {
                    Some("edge" | "col") => {}
                    other => return Err(syntax(line, format!("unsupported format {other:?}"))),
                }
                let nv = number(line, toks.next(), "vertex count")?;
                number(line, toks.next(), "edge count")?;
                Graph::empty(nv).map_err(|source| DimacsError::Graph { line, source })?;
                n = Some(nv);
            }
            Some("e") => {
                let nv = n.ok_or(DimacsError::EdgeBeforeProblem { line })?;
                let u = number(line, toks.next(), "endpoint")?;
                let v = number(line, toks.next(), "endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > nv {
                        return Err(DimacsError::Graph {
                            line,
                            source: GraphError::VertexOutOfRange { vertex: w, n: nv },
                        });
                    }
                }
                if u == v {
                    return Err(DimacsError::Graph { line, source: GraphError::SelfLoop(u) });
                }
                edges.push((u - 1, v - 1));
            }
            Some(tok) => return Err(syntax(line, format!("unknown line type `{tok}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let n = n.ok_or(DimacsError::MissingProblem)?;
    Graph::from_edges(n, edges).map_err(|source| DimacsError::Graph { line: 0, source })
}

/// Renders `g` with edges in ascending order, smaller endpoint first.
pub fn write(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcolor_core::generators::{cycle, petersen};

    #[test]
    fn reads_c5() {
        let g = parse("c five-cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n").unwrap();
        assert_eq!(g, cycle(5));
    }

    #[test]
    fn duplicate_and_reversed_edges_merge() {
        let g = parse("p edge 3 4\ne 1 2\ne 2 1\ne 2 3\ne 3 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn writes_sorted_edges() {
        let text = write(&cycle(4));
        assert_eq!(text, "p edge 4 4\ne 1 2\ne 1 4\ne 2 3\ne 3 4\n");
        assert_eq!(parse(&write(&petersen())).unwrap(), petersen());
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse("e 1 2\n"), Err(DimacsError::EdgeBeforeProblem { line: 1 }));
        assert_eq!(parse("c nothing\n"), Err(DimacsError::MissingProblem));
        assert!(matches!(parse("p edge 3 1\ne 1 4\n"), Err(DimacsError::Graph { line: 2, .. })));
        assert!(matches!(parse("p edge 3 1\ne 2 2\n"), Err(DimacsError::Graph { line: 2, .. })));
        assert!(matches!(parse("p edge 3 1\ne 1 x\n"), Err(DimacsError::Syntax { line: 2, .. })));
        assert!(matches!(parse("p edge 65 0\n"), Err(DimacsError::Graph { line: 1, .. })));
        assert!(matches!(parse("p edge 3 0\nx\n"), Err(DimacsError::Syntax { line: 2, .. })));
    }
}
