use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{BookEmbedding, CrossingReport};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Wire form of a layout, using the input's vertex labels and edge ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutJson {
    pub order: Vec<i64>,
    pub page: BTreeMap<usize, u8>,
    pub crossings: u64,
    pub crossed_edges: Vec<usize>,
}

impl LayoutJson {
    pub fn new(g: &Graph, emb: &BookEmbedding, report: &CrossingReport) -> Self {
        LayoutJson {
            order: emb.order.iter().map(|&v| g.label(v)).collect(),
            page: emb.page.iter().copied().enumerate().collect(),
            crossings: report.crossings,
            crossed_edges: report.crossed_edges(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("layout serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: format!("layout JSON: {e}"),
        })
    }

    /// Resolves labels against `g`; errors if the layout does not cover `g`.
    pub fn to_embedding(&self, g: &Graph) -> Result<BookEmbedding> {
        let by_label: std::collections::HashMap<i64, usize> =
            g.labels().iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let order = self
            .order
            .iter()
            .map(|l| {
                by_label
                    .get(l)
                    .copied()
                    .ok_or_else(|| Error::invalid(format!("layout names unknown vertex {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut page = vec![0u8; g.edge_count()];
        if self.page.len() != g.edge_count() {
            return Err(Error::invalid(format!(
                "layout assigns {} pages, graph has {} edges",
                self.page.len(),
                g.edge_count()
            )));
        }
        for (&e, &p) in &self.page {
            *page
                .get_mut(e)
                .ok_or_else(|| Error::invalid(format!("layout names unknown edge {e}")))? = p;
        }
        let emb = BookEmbedding::new(order, page);
        emb.validate(g)?;
        Ok(emb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::count;

    #[test]
    fn round_trip_with_labels() {
        let g = Graph::parse_edge_list("10 20\n20 30\n30 10\n10 40").unwrap();
        let emb = BookEmbedding::new(vec![3, 1, 0, 2], vec![0, 1, 0, 0]);
        let r = count(&g, &emb).unwrap();
        let json = LayoutJson::new(&g, &emb, &r);
        assert_eq!(json.order, vec![40, 20, 10, 30]);
        let text = json.to_json();
        assert!(text.contains("\"page\""));
        let back = LayoutJson::from_json(&text).unwrap();
        assert_eq!(back.to_embedding(&g).unwrap(), emb);
    }

    #[test]
    fn mismatch_rejected() {
        let g = Graph::complete(3);
        let bad = LayoutJson {
            order: vec![0, 1, 7],
            page: (0..3).map(|e| (e, 0)).collect(),
            crossings: 0,
            crossed_edges: vec![],
        };
        assert!(bad.to_embedding(&g).is_err());
        assert!(LayoutJson::from_json("{").is_err());
    }
}
