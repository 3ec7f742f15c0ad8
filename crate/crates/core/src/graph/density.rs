use crate::rational::Rational;

use super::{Graph, Vertex};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DensityError {
    #[error("density of a set needs at least two vertices, got {0}")]
    SetTooSmall(usize),
    #[error("vertex sets must be nonempty")]
    EmptySet,
    #[error("vertex sets overlap at {0}")]
    Overlap(Vertex),
    #[error("vertex {0} repeated or out of range")]
    BadVertex(Vertex),
}

fn check_set(g: &Graph, s: &[Vertex], mark: &mut [bool]) -> Result<(), DensityError> {
    for &v in s {
        if v >= g.n() || mark[v] {
            return Err(DensityError::BadVertex(v));
        }
        mark[v] = true;
    }
    Ok(())
}

/// `e(G[S]) / C(|S|, 2)`, exactly.
pub fn density_set(g: &Graph, s: &[Vertex]) -> Result<Rational, DensityError> {
    if s.len() < 2 {
        return Err(DensityError::SetTooSmall(s.len()));
    }
    check_set(g, s, &mut vec![false; g.n()])?;
    let pairs = (s.len() * (s.len() - 1) / 2) as u64;
    Ok(Rational::from((g.edges_within(s) as u64, pairs)))
}

/// `e(X, Y) / (|X| |Y|)` for nonempty disjoint `X`, `Y`, exactly.
pub fn density_pair(g: &Graph, x: &[Vertex], y: &[Vertex]) -> Result<Rational, DensityError> {
    if x.is_empty() || y.is_empty() {
        return Err(DensityError::EmptySet);
    }
    let mut mark = vec![false; g.n()];
    check_set(g, x, &mut mark)?;
    if let Some(&v) = y.iter().find(|&&v| v < g.n() && mark[v]) {
        return Err(DensityError::Overlap(v));
    }
    check_set(g, y, &mut vec![false; g.n()])?;
    Ok(Rational::from((g.edges_between(x, y) as u64, (x.len() * y.len()) as u64)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_density_examples() {
        assert_eq!(density_set(&Graph::complete(4), &[0, 1, 2, 3]).unwrap(), Rational::one());
        assert_eq!(density_set(&Graph::empty(6), &[1, 4, 5]).unwrap(), Rational::zero());
        // P_5 on 1..5 with S = {1,2,3} is {0,1,2} here: two of three pairs
        assert_eq!(density_set(&Graph::path(5), &[0, 1, 2]).unwrap(), Rational::new(2, 3));
        assert_eq!(density_set(&Graph::path(5), &[0]), Err(DensityError::SetTooSmall(1)));
    }

    #[test]
    fn pair_density_examples() {
        let kb = Graph::complete_bipartite(2, 3);
        assert_eq!(density_pair(&kb, &[0, 1], &[2, 3, 4]).unwrap(), Rational::one());
        assert_eq!(density_pair(&Graph::path(4), &[0, 1], &[3]).unwrap(), Rational::zero());
        assert_eq!(density_pair(&Graph::path(4), &[0, 2], &[1, 3]).unwrap(), Rational::new(3, 4));
        assert_eq!(density_pair(&Graph::path(4), &[0, 2], &[2, 3]), Err(DensityError::Overlap(2)));
        assert_eq!(density_pair(&Graph::path(4), &[], &[2]), Err(DensityError::EmptySet));
    }
}
