//! JSON graph format: `{"vertices": [...], "edges": [{"id": .., "ends": [.., ..]}]}`.

use serde::{Deserialize, Serialize};

use super::{Edge, GraphError, MultiGraph};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphRecord {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub id: String,
    pub ends: [String; 2],
}

impl From<&MultiGraph> for GraphRecord {
    fn from(g: &MultiGraph) -> Self {
        GraphRecord {
            vertices: g.vertex_names().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeRecord {
                    id: e.name.clone(),
                    ends: [
                        g.vertex_name(e.ends[0]).into(),
                        g.vertex_name(e.ends[1]).into(),
                    ],
                })
                .collect(),
        }
    }
}

impl TryFrom<GraphRecord> for MultiGraph {
    type Error = GraphError;

    fn try_from(rec: GraphRecord) -> Result<Self, GraphError> {
        let index: std::collections::HashMap<&str, usize> = rec
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut edges = Vec::with_capacity(rec.edges.len());
        for e in &rec.edges {
            let mut ends = [0; 2];
            for (k, v) in e.ends.iter().enumerate() {
                ends[k] = *index
                    .get(v.as_str())
                    .ok_or_else(|| GraphError::UnknownEndpoint {
                        edge: e.id.clone(),
                        vertex: v.clone(),
                    })?;
            }
            edges.push(Edge {
                name: e.id.clone(),
                ends,
            });
        }
        MultiGraph::new(rec.vertices, edges)
    }
}

pub fn from_json(text: &str) -> Result<MultiGraph, GraphError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    // Decode edge records one at a time so the error can name the bad record.
    let vertices: Vec<String> = serde_json::from_value(
        value
            .get("vertices")
            .cloned()
            .ok_or_else(|| GraphError::Parse("missing \"vertices\"".into()))?,
    )
    .map_err(|e| GraphError::Parse(format!("vertices: {e}")))?;
    let raw = value
        .get("edges")
        .and_then(|e| e.as_array())
        .ok_or_else(|| GraphError::Parse("missing \"edges\" array".into()))?;
    let mut edges = Vec::with_capacity(raw.len());
    for (k, item) in raw.iter().enumerate() {
        let rec: EdgeRecord = serde_json::from_value(item.clone()).map_err(|e| {
            let id = item.get("id").and_then(|v| v.as_str()).map(str::to_owned);
            GraphError::Parse(match id {
                Some(id) => format!("edge {id}: {e}"),
                None => format!("edge record #{k}: {e}"),
            })
        })?;
        edges.push(rec);
    }
    MultiGraph::try_from(GraphRecord { vertices, edges })
}

pub fn to_json(g: &MultiGraph) -> String {
    serde_json::to_string_pretty(&GraphRecord::from(g)).expect("graph records serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"vertices": ["a","b"], "edges": [{"id":"e1","ends":["a","b"]}, {"id":"e2","ends":["a","a"]}]}"#;
        let g = from_json(text).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert!(g.edge(1).is_loop());
        assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn diagnostics_name_the_edge() {
        let bad = r#"{"vertices": ["a"], "edges": [{"id":"e7","ends":["a","z"]}]}"#;
        assert!(from_json(bad).unwrap_err().to_string().contains("e7"));
        let bad = r#"{"vertices": ["a"], "edges": [{"id":"e9","ends":["a"]}]}"#;
        assert!(from_json(bad).unwrap_err().to_string().contains("e9"));
        let dup = r#"{"vertices": ["a"], "edges": [{"id":"x","ends":["a","a"]},{"id":"x","ends":["a","a"]}]}"#;
        assert!(from_json(dup).unwrap_err().to_string().contains("x"));
    }
}
