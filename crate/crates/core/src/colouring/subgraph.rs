use crate::embed::Embedding;
use crate::graph::{Graph, Vertex};

use super::EdgeColouring;

/// Pattern vertices in search order: each component starts at its lowest
/// id, then repeatedly the vertex with the most already-ordered neighbours
/// (ties to the lowest id). Path powers come out in path order.
pub fn search_order(pattern: &Graph) -> Vec<Vertex> {
    let n = pattern.n();
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by(|&a, &b| links[a].cmp(&links[b]).then(b.cmp(&a)))
            .expect("unplaced vertex");
        placed[next] = true;
        order.push(next);
        for &w in pattern.neighbours(next) {
            links[w] += 1;
        }
    }
    order
}

/// Multi-word adjacency bitsets.
pub(crate) struct Bitsets {
    words: usize,
    rows: Vec<u64>,
}

impl Bitsets {
    pub(crate) fn from_graph(g: &Graph) -> Self {
        let words = g.n().div_ceil(64).max(1);
        let mut rows = vec![0u64; words * g.n()];
        for (u, v) in g.edges() {
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        Bitsets { words, rows }
    }

    fn row(&self, v: Vertex) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }
}

struct Matcher<'a> {
    host: &'a Bitsets,
    n_host: usize,
    order: Vec<Vertex>,
    /// For each position, the earlier positions adjacent in the pattern.
    back: Vec<Vec<usize>>,
    map: Vec<Vertex>,
    used: Vec<u64>,
}

impl Matcher<'_> {
    fn candidates(&self, pos: usize) -> Vec<u64> {
        let w = self.host.words;
        let mut cand: Vec<u64> = if let Some(&first) = self.back[pos].first() {
            self.host.row(self.map[first]).to_vec()
        } else {
            let mut all = vec![u64::MAX; w];
            let tail = self.n_host % 64;
            if tail != 0 {
                all[w - 1] = (1u64 << tail) - 1;
            }
            if self.n_host == 0 {
                all.iter_mut().for_each(|x| *x = 0);
            }
            all
        };
        for &b in self.back[pos].iter().skip(1) {
            for (c, r) in cand.iter_mut().zip(self.host.row(self.map[b])) {
                *c &= r;
            }
        }
        for (c, u) in cand.iter_mut().zip(&self.used) {
            *c &= !u;
        }
        cand
    }

    fn solve(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let cand = self.candidates(pos);
        for (wi, &word) in cand.iter().enumerate() {
            let mut rest = word;
            while rest != 0 {
                let bit = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let h = wi * 64 + bit;
                self.map[pos] = h;
                self.used[wi] |= 1 << bit;
                if self.solve(pos + 1) {
                    return true;
                }
                self.used[wi] &= !(1 << bit);
            }
        }
        false
    }
}

/// Searches an injective map of `pattern` into `host` sending edges to host
/// edges; with `colour_class = Some((chi, c))` only host edges of colour `c`
/// count. Backtracking over [`search_order`]; the first map found in
/// lexicographic order of host ids along that order is returned.
pub fn find_subgraph(host: &Graph, pattern: &Graph, colour_class: Option<(&EdgeColouring, u8)>) -> Option<Embedding> {
    let restricted;
    let target = match colour_class {
        Some((chi, c)) => {
            restricted = chi.class_graph(host, c);
            &restricted
        }
        None => host,
    };
    find_in_bitsets(&Bitsets::from_graph(target), target.n(), pattern)
}

pub(crate) fn find_in_bitsets(host: &Bitsets, n_host: usize, pattern: &Graph) -> Option<Embedding> {
    if pattern.n() > n_host {
        return None;
    }
    let order = search_order(pattern);
    let mut pos_of = vec![0; pattern.n()];
    for (i, &v) in order.iter().enumerate() {
        pos_of[v] = i;
    }
    let back = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut b: Vec<usize> = pattern.neighbours(v).iter().map(|&w| pos_of[w]).filter(|&p| p < i).collect();
            b.sort_unstable();
            b
        })
        .collect();
    let mut m =
        Matcher { host, n_host, order: order.clone(), back, map: vec![0; pattern.n()], used: vec![0; host.words] };
    if !m.solve(0) {
        return None;
    }
    let mut map = vec![0; pattern.n()];
    for (i, &v) in order.iter().enumerate() {
        map[v] = m.map[i];
    }
    Some(Embedding::new(map))
}
