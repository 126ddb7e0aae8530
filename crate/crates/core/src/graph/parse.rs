use std::collections::BTreeSet;
use std::str::FromStr;

use super::Graph;
use crate::error::{Error, Result};

impl Graph {
    /// Parses the edge-list text format: one edge per line as two
    /// whitespace-separated integers. Blank lines and lines starting with `#`
    /// are skipped.
    ///
    /// Labels may be arbitrary integers; internally they are renumbered to
    /// `0..n` in ascending label order. Edge ids follow line order, with
    /// self-loops dropped and counted.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut pairs = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::Parse {
                    line: idx + 1,
                    message: format!("expected 2 vertex ids, found {}", tokens.len()),
                });
            }
            let mut ids = [0i64; 2];
            for (slot, tok) in ids.iter_mut().zip(&tokens) {
                *slot = tok.parse().map_err(|_| Error::Parse {
                    line: idx + 1,
                    message: format!("not an integer: {tok:?}"),
                })?;
            }
            pairs.push(ids);
        }

        let labels: Vec<i64> = pairs
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut g = Graph::with_labels(labels);
        for [a, b] in pairs {
            let u = g.labels.binary_search(&a).unwrap();
            let v = g.labels.binary_search(&b).unwrap();
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Serializes back to the edge-list format using the original labels.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for &[u, v] in &self.edges {
            out.push_str(&format!("{} {}\n", self.labels[u], self.labels[v]));
        }
        out
    }
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_edge_list(s)
    }
}
