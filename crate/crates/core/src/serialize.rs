//! Stable JSON, DOT and key:value renderings of graphs and rank-2
//! incidence systems.
//!
//! A document lists vertex ids and edges. For a graph every edge is a sorted
//! pair; for a point-line system every "edge" is a line record listing its
//! sorted point ids. Vertices and edges are sorted ascending and metrics are
//! kept in a `BTreeMap`, so equal inputs give byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graphtools::SimpleGraph;
use crate::incidence::IncidenceSystem;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    #[serde(rename = "type")]
    pub kind: String,
    pub q: u32,
    pub vertices: Vec<u32>,
    pub edges: Vec<Vec<u32>>,
    #[serde(default)]
    pub metrics: BTreeMap<String, Value>,
}

impl Document {
    pub fn from_graph(kind: &str, q: u32, g: &SimpleGraph) -> Self {
        Self {
            kind: kind.to_string(),
            q,
            vertices: (0..g.vertex_count() as u32).collect(),
            edges: g.edges().into_iter().map(|(a, b)| vec![a, b]).collect(),
            metrics: BTreeMap::new(),
        }
    }

    /// Points are the type-0 elements (renumbered in order), lines the
    /// type-1 elements.
    pub fn from_rank2(kind: &str, q: u32, s: &IncidenceSystem) -> Result<Self> {
        if s.rank() != 2 {
            return Err(Error::WrongRank { expected: 2, got: s.rank() });
        }
        let points: Vec<u32> = s.elements_of_type(0).collect();
        let mut local = vec![u32::MAX; s.len()];
        for (i, &p) in points.iter().enumerate() {
            local[p as usize] = i as u32;
        }
        let mut edges: Vec<Vec<u32>> = s
            .elements_of_type(1)
            .map(|l| {
                let mut pts: Vec<u32> = s.neighbors(l).iter().map(|&p| local[p as usize]).collect();
                pts.sort_unstable();
                pts
            })
            .collect();
        edges.sort();
        Ok(Self { kind: kind.to_string(), q, vertices: (0..points.len() as u32).collect(), edges, metrics: BTreeMap::new() })
    }

    pub fn with_metric(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.metrics.insert(key.to_string(), value.into());
        self
    }

    pub fn to_graph(&self) -> Result<SimpleGraph> {
        let mut pairs = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            match e[..] {
                [a, b] => pairs.push((a, b)),
                _ => return Err(Error::InvalidGraph(format!("edge record {e:?} is not a pair"))),
            }
        }
        SimpleGraph::new(self.vertices.len(), pairs)
    }

    pub fn to_rank2(&self) -> Result<IncidenceSystem> {
        IncidenceSystem::from_rank2(self.vertices.len(), &self.edges)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Serialization(e.to_string()))
    }

    /// DOT with node ids `v<i>`. Records with more than two points become
    /// box nodes `l<j>` joined to their points.
    pub fn to_dot(&self) -> String {
        let name: String = self.kind.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        let mut out = String::new();
        writeln!(out, "graph {name}_q{} {{", self.q).unwrap();
        for (k, v) in &self.metrics {
            writeln!(out, "  // {k}: {}", render_value(v)).unwrap();
        }
        for v in &self.vertices {
            writeln!(out, "  v{v};").unwrap();
        }
        for (j, e) in self.edges.iter().enumerate() {
            if e.len() == 2 {
                writeln!(out, "  v{} -- v{};", e[0], e[1]).unwrap();
            } else {
                writeln!(out, "  l{j} [shape=box, label=\"\"];").unwrap();
                for p in e {
                    writeln!(out, "  l{j} -- v{p};").unwrap();
                }
            }
        }
        out.push_str("}\n");
        out
    }

    /// `key: value` lines: type, q, counts, then the metrics.
    pub fn to_summary(&self) -> String {
        let mut out = String::new();
        writeln!(out, "type: {}", self.kind).unwrap();
        writeln!(out, "q: {}", self.q).unwrap();
        writeln!(out, "vertices: {}", self.vertices.len()).unwrap();
        writeln!(out, "edges: {}", self.edges.len()).unwrap();
        for (k, v) in &self.metrics {
            writeln!(out, "{k}: {}", render_value(v)).unwrap();
        }
        out
    }
}

/// Strings without quotes, everything else as compact JSON.
pub fn render_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prism() -> SimpleGraph {
        SimpleGraph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]).unwrap()
    }

    #[test]
    fn prism_edges_sorted() {
        let d = Document::from_graph("prism", 2, &prism());
        assert_eq!(d.edges.len(), 9);
        assert!(d.edges.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(d.to_graph().unwrap(), prism());
    }

    #[test]
    fn empty_graph_json() {
        let d = Document::from_graph("empty", 2, &SimpleGraph::empty(0));
        let v: Value = serde_json::from_str(&d.to_json()).unwrap();
        assert_eq!(v["vertices"], serde_json::json!([]));
        assert_eq!(v["edges"], serde_json::json!([]));
        assert_eq!(v["type"], "empty");
    }

    #[test]
    fn json_round_trip_and_determinism() {
        let d = Document::from_graph("prism", 2, &prism()).with_metric("girth", 3).with_metric("aut", "12");
        let text = d.to_json();
        assert_eq!(Document::from_json(&text).unwrap(), d);
        assert_eq!(text, d.clone().to_json());
        assert!(Document::from_json("{").is_err());
    }

    #[test]
    fn dot_and_summary() {
        let d = Document::from_graph("moving graph", 2, &prism()).with_metric("girth", 3);
        let dot = d.to_dot();
        assert!(dot.starts_with("graph moving_graph_q2 {"));
        assert_eq!(dot.matches(" -- ").count(), 9);
        let s = d.to_summary();
        assert!(s.contains("vertices: 6\n") && s.contains("girth: 3\n"));
    }

    #[test]
    fn rank2_round_trip() {
        let s = IncidenceSystem::from_rank2(4, &[vec![0, 1, 2], vec![1, 3], vec![0, 3]]).unwrap();
        let d = Document::from_rank2("toy", 2, &s).unwrap();
        assert_eq!(d.edges, vec![vec![0, 1, 2], vec![0, 3], vec![1, 3]]);
        let back = d.to_rank2().unwrap();
        assert_eq!(Document::from_rank2("toy", 2, &back).unwrap(), d);
    }
}
