use serde::{Deserialize, Serialize};

use super::{Graph, Vertex};

/// An ordered sequence of distinct vertices, consecutive ones adjacent.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathWitness {
    pub vertices: Vec<Vertex>,
    /// `class_trace[i]` is the part holding `vertices[i]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_trace: Option<Vec<usize>>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PathError {
    #[error("vertex {0} repeats")]
    Repeated(Vertex),
    #[error("vertex {0} is outside the graph")]
    OutOfRange(Vertex),
    #[error("consecutive vertices {0} and {1} are not adjacent")]
    NotAdjacent(Vertex, Vertex),
    #[error("class trace has length {got}, path has {want}")]
    TraceLength { got: usize, want: usize },
    #[error("position {position} is in part {part}, expected {expected}")]
    WrongPart { position: usize, part: usize, expected: usize },
}

impl PathWitness {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        PathWitness { vertices, class_trace: None }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Checks distinctness and adjacency in `g`; with a class trace, also
    /// that position `i` lies in part `i mod t` (0-based).
    pub fn validate(&self, g: &Graph, t: Option<usize>) -> Result<(), PathError> {
        let mut seen = vec![false; g.n()];
        for &v in &self.vertices {
            if v >= g.n() {
                return Err(PathError::OutOfRange(v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(PathError::Repeated(v));
            }
        }
        for w in self.vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(PathError::NotAdjacent(w[0], w[1]));
            }
        }
        if let (Some(trace), Some(t)) = (&self.class_trace, t) {
            if trace.len() != self.len() {
                return Err(PathError::TraceLength { got: trace.len(), want: self.len() });
            }
            for (i, &part) in trace.iter().enumerate() {
                if part != i % t {
                    return Err(PathError::WrongPart { position: i, part, expected: i % t });
                }
            }
        }
        Ok(())
    }
}
