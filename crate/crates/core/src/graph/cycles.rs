use std::collections::VecDeque;

use super::{Graph, Neighbours, Vertex, UNREACHABLE};

/// Shortest cycle through the edge `{u, v}` with at most `limit` vertices,
/// found by BFS from `u` in the graph minus that edge. Returned as the
/// vertex sequence `u, ..., v` (the closing edge is `v - u`).
pub fn shortest_cycle_through<G: Neighbours>(g: &G, u: Vertex, v: Vertex, limit: usize) -> Option<Vec<Vertex>> {
    if limit < 3 {
        return None;
    }
    let n = g.vertex_count();
    let mut parent = vec![UNREACHABLE; n];
    let mut depth = vec![UNREACHABLE; n];
    let mut queue = VecDeque::new();
    depth[u] = 0;
    parent[u] = u;
    queue.push_back(u);
    // a cycle of length L is a u..v path with L-1 edges
    let max_depth = limit - 1;
    while let Some(x) = queue.pop_front() {
        if depth[x] >= max_depth {
            continue;
        }
        let mut found = false;
        g.for_each_neighbour(x, |y| {
            if found || (x == u && y == v) || depth[y] != UNREACHABLE {
                return;
            }
            depth[y] = depth[x] + 1;
            parent[y] = x;
            if y == v {
                found = true;
            } else {
                queue.push_back(y);
            }
        });
        if found {
            let mut cycle = vec![v];
            let mut cur = v;
            while cur != u {
                cur = parent[cur];
                cycle.push(cur);
            }
            cycle.reverse();
            return Some(cycle);
        }
    }
    None
}

/// A shortest cycle of length at most `limit`, if any. Ties are broken by
/// the first edge in canonical order.
pub fn girth_violation(g: &Graph, limit: usize) -> Option<Vec<Vertex>> {
    let mut best: Option<Vec<Vertex>> = None;
    for (u, v) in g.edges() {
        let cap = best.as_ref().map_or(limit, |c| c.len() - 1);
        if let Some(c) = shortest_cycle_through(g, u, v, cap) {
            let short = c.len() == 3;
            best = Some(c);
            if short {
                break;
            }
        }
    }
    best
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Graph) -> Option<usize> {
    girth_violation(g, g.n().max(3)).map(|c| c.len())
}

/// Checks that `cycle` is a closed walk on distinct vertices of `g`.
pub fn is_valid_cycle(g: &Graph, cycle: &[Vertex]) -> bool {
    if cycle.len() < 3 {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == cycle.len()
        && cycle.windows(2).all(|w| g.has_edge(w[0], w[1]))
        && g.has_edge(cycle[cycle.len() - 1], cycle[0])
}
