use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("failed to parse topology document: {0}")]
    Parse(String),
    #[error("topology must have at least one qubit")]
    Empty,
    #[error("edge ({0}, {1}) references a qubit outside 0..{2}")]
    OutOfRange(usize, usize, usize),
    #[error("edge ({0}, {0}) is a self-loop")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("qubit {0} is out of range")]
    QubitOutOfRange(usize),
}

/// On-disk form: `{"num_qubits": int, "directed": bool, "edges": [[int, int], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyDocument {
    pub num_qubits: usize,
    pub directed: bool,
    pub edges: Vec<[usize; 2]>,
}

/// Qubit coupling graph.
///
/// `edges()` is the normalized ordered-edge set: for undirected devices every
/// input edge appears in both orientations. Orientation only restricts where
/// multi-qubit gates may be placed; [`DeviceTopology::neighbors`] ignores it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviceTopology {
    num_qubits: usize,
    directed: bool,
    input_edges: Vec<(usize, usize)>,
    edges: BTreeSet<(usize, usize)>,
    successors: Vec<Vec<usize>>,
    adjacency: Vec<Vec<usize>>,
}

impl DeviceTopology {
    pub fn new(num_qubits: usize, edges: &[(usize, usize)], directed: bool) -> Result<Self, TopologyError> {
        if num_qubits == 0 {
            return Err(TopologyError::Empty);
        }
        let mut normalized = BTreeSet::new();
        for &(u, v) in edges {
            if u >= num_qubits || v >= num_qubits {
                return Err(TopologyError::OutOfRange(u, v, num_qubits));
            }
            if u == v {
                return Err(TopologyError::SelfLoop(u));
            }
            if !normalized.insert((u, v)) {
                return Err(TopologyError::DuplicateEdge(u, v));
            }
            if !directed && !normalized.insert((v, u)) {
                return Err(TopologyError::DuplicateEdge(u, v));
            }
        }

        let mut successors = vec![Vec::new(); num_qubits];
        let mut adjacency = vec![BTreeSet::new(); num_qubits];
        for &(u, v) in &normalized {
            successors[u].push(v);
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }

        Ok(Self {
            num_qubits,
            directed,
            input_edges: edges.to_vec(),
            edges: normalized,
            successors,
            adjacency: adjacency.into_iter().map(|s| s.into_iter().collect()).collect(),
        })
    }

    pub fn from_document(doc: &TopologyDocument) -> Result<Self, TopologyError> {
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|[u, v]| (*u, *v)).collect();
        Self::new(doc.num_qubits, &edges, doc.directed)
    }

    pub fn to_document(&self) -> TopologyDocument {
        TopologyDocument {
            num_qubits: self.num_qubits,
            directed: self.directed,
            edges: self.input_edges.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Normalized ordered edges, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u, v))
    }

    /// Qubits `v` with a normalized edge `(q, v)`, sorted. Multi-qubit gate
    /// groups grow along these.
    pub fn successors(&self, q: usize) -> &[usize] {
        &self.successors[q]
    }

    /// Orientation-agnostic neighbors of `q`, sorted.
    pub fn neighbors(&self, q: usize) -> Result<&[usize], TopologyError> {
        self.adjacency
            .get(q)
            .map(Vec::as_slice)
            .ok_or(TopologyError::QubitOutOfRange(q))
    }

    /// Unchecked variant of [`neighbors`](Self::neighbors) for internal loops.
    pub(crate) fn adjacent(&self, q: usize) -> &[usize] {
        &self.adjacency[q]
    }
}

/// Parses and normalizes a topology document.
pub fn load_topology(source: &str) -> Result<DeviceTopology, TopologyError> {
    let doc: TopologyDocument = serde_json::from_str(source).map_err(|e| TopologyError::Parse(e.to_string()))?;
    DeviceTopology::from_document(&doc)
}
