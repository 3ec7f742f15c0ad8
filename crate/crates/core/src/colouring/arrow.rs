use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::subgraph::{find_in_bitsets, Bitsets};
use super::EdgeColouring;
use crate::embed::Embedding;
use crate::graph::{Graph, Vertex};

/// Default cap on `s^m` for exhaustive enumeration.
pub const DEFAULT_ARROW_BUDGET: u64 = 1 << 24;
/// Tuple cap for the brute-force re-check of a counterexample.
const REVALIDATION_BUDGET: u64 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArrowMode {
    Exhaustive,
    Randomized { trials: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowOptions {
    pub budget: u64,
    /// First colouring index to examine (for resuming).
    pub start: u64,
    /// One past the last index; `None` runs to the end.
    pub end: Option<u64>,
}

impl Default for ArrowOptions {
    fn default() -> Self {
        ArrowOptions { budget: DEFAULT_ARROW_BUDGET, start: 0, end: None }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ArrowError {
    #[error("exhaustive search needs {required} colourings, budget is {budget}")]
    OverBudget { required: String, budget: u64 },
    #[error("colour count must be in 1..=36, got {0}")]
    BadColourCount(usize),
    #[error("range {start}..{end} is outside 0..{total}")]
    BadRange { start: u64, end: u64, total: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArrowVerdict {
    /// `Some(true)`: every colouring in the full space has a monochromatic
    /// copy. `Some(false)`: a counterexample was found. `None`: undecided
    /// (randomized mode or a partial range).
    pub arrows: Option<bool>,
    pub mode: ArrowMode,
    pub counterexample: Option<EdgeColouring>,
    pub counterexample_index: Option<u64>,
    /// Brute-force re-check that the counterexample has no monochromatic copy;
    /// `None` when over the re-check budget.
    pub counterexample_revalidated: Option<bool>,
    /// A monochromatic copy in the first examined colouring.
    pub witness: Option<(u8, Embedding)>,
    pub searched: u64,
    pub start: u64,
    pub end: u64,
}

fn mono_copy(host: &Graph, pattern: &Graph, chi: &EdgeColouring) -> Option<(u8, Embedding)> {
    (0..chi.s() as u8).find_map(|c| {
        let class = chi.class_graph(host, c);
        find_in_bitsets(&Bitsets::from_graph(&class), class.n(), pattern).map(|e| (c, e))
    })
}

/// Independent check: tries every injective tuple of host vertices and only
/// tests edges once the tuple is complete.
fn brute_force_has_mono(host: &Graph, pattern: &Graph, chi: &EdgeColouring) -> Option<bool> {
    let (n, p) = (host.n() as u64, pattern.n() as u32);
    if n.checked_pow(p).is_none_or(|x| x > REVALIDATION_BUDGET) {
        return None;
    }
    let edges: Vec<(Vertex, Vertex)> = pattern.edges().collect();
    let mut tuple = Vec::with_capacity(p as usize);
    fn rec(host: &Graph, chi: &EdgeColouring, edges: &[(Vertex, Vertex)], p: usize, tuple: &mut Vec<Vertex>) -> bool {
        if tuple.len() == p {
            let colours: Option<Vec<u8>> = edges.iter().map(|&(a, b)| chi.colour(host, tuple[a], tuple[b])).collect();
            return match colours {
                Some(cs) => cs.windows(2).all(|w| w[0] == w[1]),
                None => false,
            };
        }
        for v in 0..host.n() {
            if tuple.contains(&v) {
                continue;
            }
            tuple.push(v);
            if rec(host, chi, edges, p, tuple) {
                return true;
            }
            tuple.pop();
        }
        false
    }
    Some(rec(host, chi, &edges, p as usize, &mut tuple))
}

/// Decides `host -> (pattern)_s` by enumerating colourings as base-`s`
/// integers (edge 0 most significant), or samples colourings at random.
/// The lowest-index counterexample is reported.
pub fn arrow_check(
    host: &Graph,
    pattern: &Graph,
    s: usize,
    mode: ArrowMode,
    opts: &ArrowOptions,
) -> Result<ArrowVerdict, ArrowError> {
    if !(1..=36).contains(&s) {
        return Err(ArrowError::BadColourCount(s));
    }
    let m = host.m();
    let finish = |mut v: ArrowVerdict| {
        if let Some(chi) = &v.counterexample {
            v.counterexample_revalidated = brute_force_has_mono(host, pattern, chi).map(|has| !has);
        }
        v
    };
    match mode {
        ArrowMode::Exhaustive => {
            let total = (s as u64)
                .checked_pow(m as u32)
                .filter(|&t| t <= opts.budget)
                .ok_or_else(|| ArrowError::OverBudget { required: format!("{s}^{m}"), budget: opts.budget })?;
            let end = opts.end.unwrap_or(total);
            if opts.start > end || end > total {
                return Err(ArrowError::BadRange { start: opts.start, end, total });
            }
            let witness = (opts.start < end)
                .then(|| mono_copy(host, pattern, &EdgeColouring::from_index(m, s, opts.start)))
                .flatten();
            let bad = (opts.start..end)
                .into_par_iter()
                .find_first(|&idx| mono_copy(host, pattern, &EdgeColouring::from_index(m, s, idx)).is_none());
            let complete = opts.start == 0 && end == total;
            Ok(finish(ArrowVerdict {
                arrows: match bad {
                    Some(_) => Some(false),
                    None if complete => Some(true),
                    None => None,
                },
                mode,
                counterexample: bad.map(|idx| EdgeColouring::from_index(m, s, idx)),
                counterexample_index: bad,
                counterexample_revalidated: None,
                witness,
                searched: bad.map_or(end - opts.start, |b| b - opts.start + 1),
                start: opts.start,
                end,
            }))
        }
        ArrowMode::Randomized { trials, seed } => {
            let mut witness = None;
            let mut found = None;
            let mut searched = 0;
            for trial in 0..trials {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(trial);
                let chi = EdgeColouring::random(host, s, rand::Rng::gen(&mut rng)).expect("s checked");
                searched += 1;
                match mono_copy(host, pattern, &chi) {
                    Some(w) => {
                        witness.get_or_insert(w);
                    }
                    None => {
                        found = Some(chi);
                        break;
                    }
                }
            }
            Ok(finish(ArrowVerdict {
                arrows: found.as_ref().map(|_| false),
                mode,
                counterexample: found,
                counterexample_index: None,
                counterexample_revalidated: None,
                witness,
                searched,
                start: 0,
                end: trials,
            }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive(host: &Graph, pattern: &Graph, s: usize) -> ArrowVerdict {
        arrow_check(host, pattern, s, ArrowMode::Exhaustive, &ArrowOptions::default()).unwrap()
    }

    #[test]
    fn k3_arrows_p3() {
        let v = exhaustive(&Graph::complete(3), &Graph::path(3), 2);
        assert_eq!(v.arrows, Some(true));
        assert_eq!(v.searched, 8);
    }

    #[test]
    fn p4_does_not_arrow_p3() {
        let v = exhaustive(&Graph::path(4), &Graph::path(3), 2);
        assert_eq!(v.arrows, Some(false));
        assert_eq!(v.counterexample.unwrap().to_string(), "s=2;m=3;010");
        assert_eq!(v.counterexample_revalidated, Some(true));
    }

    #[test]
    fn k5_pentagon_colouring() {
        let v = exhaustive(&Graph::complete(5), &Graph::complete(3), 2);
        assert_eq!(v.arrows, Some(false));
        assert_eq!(v.counterexample_revalidated, Some(true));
        let chi = v.counterexample.unwrap();
        let h = chi.histogram();
        assert_eq!(h, vec![5, 5]);
    }

    #[test]
    fn single_colour_is_subgraph_search() {
        for (host, pattern) in [(Graph::cycle(5), Graph::complete(3)), (Graph::complete(4), Graph::path(4))] {
            let v = exhaustive(&host, &pattern, 1);
            let found = super::super::find_subgraph(&host, &pattern, None).is_some();
            assert_eq!(v.arrows, Some(found));
        }
    }

    #[test]
    fn budget_and_ranges() {
        let opts = ArrowOptions { budget: 100, ..ArrowOptions::default() };
        let err = arrow_check(&Graph::complete(5), &Graph::complete(3), 2, ArrowMode::Exhaustive, &opts).unwrap_err();
        assert!(matches!(err, ArrowError::OverBudget { .. }));
        let partial = ArrowOptions { start: 0, end: Some(4), ..ArrowOptions::default() };
        let v = arrow_check(&Graph::complete(3), &Graph::path(3), 2, ArrowMode::Exhaustive, &partial).unwrap();
        assert_eq!(v.arrows, None);
        assert_eq!(v.searched, 4);
    }

    #[test]
    fn randomized_finds_easy_counterexample() {
        let v = arrow_check(
            &Graph::path(4),
            &Graph::path(3),
            2,
            ArrowMode::Randomized { trials: 200, seed: 1 },
            &ArrowOptions::default(),
        )
        .unwrap();
        assert_eq!(v.arrows, Some(false));
        let v = arrow_check(
            &Graph::complete(3),
            &Graph::path(3),
            2,
            ArrowMode::Randomized { trials: 50, seed: 1 },
            &ArrowOptions::default(),
        )
        .unwrap();
        assert_eq!(v.arrows, None);
    }
}
