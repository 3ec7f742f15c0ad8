use std::collections::{BTreeMap, HashSet};

use serde::ser::SerializeMap;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::colouring::EdgeColouring;
use crate::graph::{Graph, Vertex};

/// Injective map from pattern vertices `0..map.len()` into a host.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Embedding {
    pub map: Vec<Vertex>,
}

impl Embedding {
    pub fn new(map: Vec<Vertex>) -> Self {
        Embedding { map }
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.map.len()))?;
        for (p, h) in self.map.iter().enumerate() {
            m.serialize_entry(&p.to_string(), h)?;
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BTreeMap::<String, Vertex>::deserialize(deserializer)?;
        let mut pairs = raw
            .into_iter()
            .map(|(k, v)| k.parse::<usize>().map(|k| (k, v)).map_err(de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        pairs.sort_unstable();
        if pairs.iter().enumerate().any(|(i, &(k, _))| i != k) {
            return Err(de::Error::custom("pattern vertices must be 0..n"));
        }
        Ok(Embedding { map: pairs.into_iter().map(|(_, v)| v).collect() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EmbeddingViolation {
    WrongSize { mapped: usize, pattern: usize },
    OutOfRange { host_vertex: Vertex },
    NotInjective { host_vertex: Vertex },
    MissingEdge { u: Vertex, v: Vertex },
    WrongColour { u: Vertex, v: Vertex, colour: u8 },
    ColouringMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingReport {
    pub valid: bool,
    pub violation: Option<EmbeddingViolation>,
}

/// Re-checks an embedding from scratch: size, injectivity, that every
/// pattern edge lands on a host edge and, when constrained, that its colour
/// is allowed. Edges in violations are pattern vertices.
pub fn validate_embedding(
    pattern: &Graph,
    host: &Graph,
    e: &Embedding,
    constraint: Option<(&EdgeColouring, &[u8])>,
) -> EmbeddingReport {
    let fail = |v| EmbeddingReport { valid: false, violation: Some(v) };
    if e.map.len() != pattern.n() {
        return fail(EmbeddingViolation::WrongSize { mapped: e.map.len(), pattern: pattern.n() });
    }
    let mut seen = HashSet::with_capacity(e.map.len());
    for &h in &e.map {
        if h >= host.n() {
            return fail(EmbeddingViolation::OutOfRange { host_vertex: h });
        }
        if !seen.insert(h) {
            return fail(EmbeddingViolation::NotInjective { host_vertex: h });
        }
    }
    if let Some((chi, _)) = constraint {
        if !chi.matches_host(host) {
            return fail(EmbeddingViolation::ColouringMismatch);
        }
    }
    for (u, v) in pattern.edges() {
        let (x, y) = (e.map[u], e.map[v]);
        let Some(idx) = host.edge_index(x, y) else {
            return fail(EmbeddingViolation::MissingEdge { u, v });
        };
        if let Some((chi, allowed)) = constraint {
            let colour = chi.colour_of_edge(idx);
            if !allowed.contains(&colour) {
                return fail(EmbeddingViolation::WrongColour { u, v, colour });
            }
        }
    }
    EmbeddingReport { valid: true, violation: None }
}
