//! Edge colourings and the searches run over them: monochromatic cliques,
//! blue bicliques and the bound they obey, the auxiliary blue/grey colouring,
//! monochromatic subgraph search and the exhaustive arrow oracle.

mod arrow;
mod aux;
mod biclique;
mod mono;
mod subgraph;

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::{Graph, Vertex};

pub use arrow::{arrow_check, ArrowError, ArrowMode, ArrowOptions, ArrowVerdict, DEFAULT_ARROW_BUDGET};
pub use aux::{blue_path_to_blue_power, build_aux_colouring, AuxColouring, AuxError, BicliqueWitness, PowerError};
pub use biclique::{
    find_biclique_rows, find_blue_biclique, kst_bound_check, kst_bound_holds, kst_sweep, KstError, KstReport, KstSweep,
    KstSweepRow,
};
pub use mono::{mono_clique_in_clique, mono_clique_of_colour, MonoClique};
pub use subgraph::{find_subgraph, search_order};

/// Colour of each host edge, indexed by canonical edge order. Colours are
/// stored 0-based; text and JSON forms use the same digits.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColouring {
    s: u8,
    colours: Vec<u8>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ColouringError {
    #[error("colour count must be in 1..=36, got {0}")]
    BadColourCount(usize),
    #[error("colouring has {got} entries, host has {want} edges")]
    WrongLength { got: usize, want: usize },
    #[error("colour {colour} at edge {edge} is outside 0..{s}")]
    OutOfRange { edge: usize, colour: u8, s: u8 },
    #[error("malformed colouring string: {0}")]
    Format(String),
}

impl EdgeColouring {
    pub fn new(s: usize, colours: Vec<u8>) -> Result<Self, ColouringError> {
        if !(1..=36).contains(&s) {
            return Err(ColouringError::BadColourCount(s));
        }
        let s = s as u8;
        if let Some((edge, &colour)) = colours.iter().enumerate().find(|(_, &c)| c >= s) {
            return Err(ColouringError::OutOfRange { edge, colour, s });
        }
        Ok(EdgeColouring { s, colours })
    }

    pub fn for_host(host: &Graph, s: usize, colours: Vec<u8>) -> Result<Self, ColouringError> {
        if colours.len() != host.m() {
            return Err(ColouringError::WrongLength { got: colours.len(), want: host.m() });
        }
        Self::new(s, colours)
    }

    pub fn uniform(host: &Graph, s: usize, colour: u8) -> Result<Self, ColouringError> {
        Self::for_host(host, s, vec![colour; host.m()])
    }

    /// Independent uniform colours in canonical edge order.
    pub fn random(host: &Graph, s: usize, seed: u64) -> Result<Self, ColouringError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let colours = (0..host.m()).map(|_| rng.gen_range(0..s.max(1)) as u8).collect();
        Self::for_host(host, s, colours)
    }

    /// Colours by rule over the edge list.
    pub fn from_fn(host: &Graph, s: usize, mut f: impl FnMut(Vertex, Vertex) -> u8) -> Result<Self, ColouringError> {
        let colours = host.edges().map(|(u, v)| f(u, v)).collect();
        Self::for_host(host, s, colours)
    }

    /// The colouring whose base-`s` digits, edge 0 most significant, spell
    /// `index`.
    pub fn from_index(m: usize, s: usize, mut index: u64) -> Self {
        let mut colours = vec![0u8; m];
        for c in colours.iter_mut().rev() {
            *c = (index % s as u64) as u8;
            index /= s as u64;
        }
        EdgeColouring { s: s as u8, colours }
    }

    pub fn s(&self) -> usize {
        self.s as usize
    }

    pub fn m(&self) -> usize {
        self.colours.len()
    }

    pub fn colours(&self) -> &[u8] {
        &self.colours
    }

    pub fn colour_of_edge(&self, index: usize) -> u8 {
        self.colours[index]
    }

    /// Colour of the host edge `uv`, or `None` when it is not an edge.
    pub fn colour(&self, host: &Graph, u: Vertex, v: Vertex) -> Option<u8> {
        host.edge_index(u, v).map(|i| self.colours[i])
    }

    /// The spanning subgraph of edges with colour `c`.
    pub fn class_graph(&self, host: &Graph, c: u8) -> Graph {
        let edges = host.edges().zip(&self.colours).filter(|(_, &k)| k == c).map(|(e, _)| e);
        Graph::from_edges(host.n(), edges).expect("host edges are valid")
    }

    /// Edge counts per colour.
    pub fn histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.s as usize];
        for &c in &self.colours {
            h[c as usize] += 1;
        }
        h
    }

    pub fn matches_host(&self, host: &Graph) -> bool {
        self.colours.len() == host.m()
    }
}

impl fmt::Display for EdgeColouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={};m={};", self.s, self.colours.len())?;
        for &c in &self.colours {
            let ch = char::from_digit(c as u32, 36).expect("colour below 36");
            write!(f, "{ch}")?;
        }
        Ok(())
    }
}

impl FromStr for EdgeColouring {
    type Err = ColouringError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| ColouringError::Format(msg.to_string());
        let rest = text.trim().strip_prefix("s=").ok_or_else(|| bad("missing `s=`"))?;
        let (s, rest) = rest.split_once(';').ok_or_else(|| bad("missing `;` after s"))?;
        let rest = rest.strip_prefix("m=").ok_or_else(|| bad("missing `m=`"))?;
        let (m, digits) = rest.split_once(';').ok_or_else(|| bad("missing `;` after m"))?;
        let s: usize = s.parse().map_err(|_| bad("s is not an integer"))?;
        let m: usize = m.parse().map_err(|_| bad("m is not an integer"))?;
        let colours = digits
            .chars()
            .map(|ch| ch.to_digit(36).map(|d| d as u8).ok_or_else(|| bad("non-digit colour")))
            .collect::<Result<Vec<_>, _>>()?;
        if colours.len() != m {
            return Err(ColouringError::WrongLength { got: colours.len(), want: m });
        }
        Self::new(s, colours)
    }
}

impl Serialize for EdgeColouring {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeColouring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let host = Graph::complete(4);
        let c = EdgeColouring::random(&host, 3, 9).unwrap();
        let text = c.to_string();
        assert!(text.starts_with("s=3;m=6;"));
        assert_eq!(text.parse::<EdgeColouring>().unwrap(), c);
        assert!("s=2;m=3;012".parse::<EdgeColouring>().is_err());
        assert!("s=2;m=2;0".parse::<EdgeColouring>().is_err());
    }

    #[test]
    fn index_order_matches_string_order() {
        let a = EdgeColouring::from_index(3, 2, 2);
        assert_eq!(a.to_string(), "s=2;m=3;010");
        assert!(EdgeColouring::from_index(3, 2, 5).to_string() > a.to_string());
    }

    #[test]
    fn class_graphs_partition_edges() {
        let host = Graph::complete(6);
        let c = EdgeColouring::random(&host, 3, 1).unwrap();
        let total: usize = (0..3).map(|k| c.class_graph(&host, k).m()).sum();
        assert_eq!(total, 15);
        assert_eq!(c.histogram().iter().sum::<usize>(), 15);
    }
}
