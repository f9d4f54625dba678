use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{DirectedGraph, HalfEdgeGraph};
use crate::error::Result;

/// On-disk graph description.
///
/// ```json
/// {"vertices": ["a"], "edges": [{"id": "e", "half_edges": ["h1", "h2"]}],
///  "incidence": {"h1": "a", "h2": "a"}, "orientation": {"e": ["h1", "h2"]}}
/// ```
///
/// `orientation` is optional and maps each edge to `[tail, head]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeJson>,
    pub incidence: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<BTreeMap<String, [String; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: String,
    pub half_edges: [String; 2],
}

impl GraphJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical text: pretty-printed with a trailing newline. Files written
    /// this way survive a parse/serialize round trip byte for byte.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph json serializes");
        s.push('\n');
        s
    }

    pub fn graph(&self) -> Result<HalfEdgeGraph> {
        HalfEdgeGraph::from_json(self)
    }

    /// The directed version given by `orientation`, if present.
    pub fn directed(&self) -> Result<Option<DirectedGraph>> {
        match &self.orientation {
            Some(o) => Ok(Some(DirectedGraph::new(self.graph()?, o.clone())?)),
            None => Ok(None),
        }
    }
}
