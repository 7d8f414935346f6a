use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{AmalgamDecomposition, DecompositionNode, NodeId};
use crate::element::ElementId;
use crate::error::{Error, Result};
use crate::matroid::MatroidSpec;

/// On-disk form of one node.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NodeSpec {
    #[serde(default)]
    pub children: Vec<NodeId>,
    #[serde(rename = "K")]
    pub k: MatroidSpec,
    #[serde(rename = "J1", default)]
    pub j1: Vec<ElementId>,
    #[serde(rename = "J2", default)]
    pub j2: Vec<ElementId>,
    #[serde(rename = "D", default)]
    pub d: Vec<ElementId>,
}

/// On-disk form of a decomposition: `{"nodes": {id: node}, "root": id}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionSpec {
    pub nodes: BTreeMap<String, NodeSpec>,
    pub root: NodeId,
}

impl DecompositionSpec {
    pub fn build(&self) -> Result<AmalgamDecomposition> {
        let mut nodes = BTreeMap::new();
        for (key, n) in &self.nodes {
            let id: NodeId = key.trim().parse().map_err(|_| Error::Format(format!("node id `{key}` is not an integer")))?;
            let node = DecompositionNode {
                children: n.children.clone(),
                k: n.k.build()?,
                j1: n.j1.iter().copied().collect(),
                j2: n.j2.iter().copied().collect(),
                d: n.d.iter().copied().collect(),
            };
            nodes.insert(id, node);
        }
        Ok(AmalgamDecomposition::new(nodes, self.root))
    }

    pub fn from_decomposition(t: &AmalgamDecomposition) -> Result<Self> {
        let mut nodes = BTreeMap::new();
        for (id, n) in t.nodes() {
            let spec = NodeSpec {
                children: n.children.clone(),
                k: MatroidSpec::from_matroid(&n.k)?,
                j1: n.j1.iter().copied().collect(),
                j2: n.j2.iter().copied().collect(),
                d: n.d.iter().copied().collect(),
            };
            nodes.insert(id.to_string(), spec);
        }
        Ok(DecompositionSpec { nodes, root: t.root() })
    }
}

impl AmalgamDecomposition {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let spec: DecompositionSpec = serde_json::from_str(text)?;
        spec.build()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(DecompositionSpec::from_decomposition(self)?)?)
    }
}
