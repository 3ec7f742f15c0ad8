use serde::Serialize;

use super::{validate_embedding, Embedding, EmbeddingViolation};
use crate::colouring::{AuxColouring, EdgeColouring};
use crate::graph::{power, sheared_blowup, Graph, MatchingRule, Vertex, UNREACHABLE};
use crate::partition::Segment;

/// Colour of a blue `J`-edge in [`aux_edge_colouring`].
pub const AUX_BLUE: u8 = 0;
/// Colour of a grey `J`-edge in [`aux_edge_colouring`].
pub const AUX_GREY: u8 = 1;

/// The blue/grey labelling as a two-colouring of `J`.
pub fn aux_edge_colouring(j: &Graph, aux: &AuxColouring) -> EdgeColouring {
    let colours = aux.witnesses.iter().map(|w| if w.is_some() { AUX_BLUE } else { AUX_GREY }).collect();
    EdgeColouring::for_host(j, 2, colours).expect("one label per J-edge")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TemplateViolation {
    SegmentSize {
        segment: usize,
        size: usize,
    },
    SegmentNotClique {
        segment: usize,
        u: Vertex,
        v: Vertex,
    },
    BlueInsideSegment {
        segment: usize,
        u: Vertex,
        v: Vertex,
    },
    MissingPair {
        a: usize,
        b: usize,
        u: Vertex,
        v: Vertex,
    },
    /// A blue pair between segments that is not position-aligned.
    BlueOffMatching {
        a: usize,
        b: usize,
        u: Vertex,
        v: Vertex,
    },
    DistanceBound {
        a: usize,
        b: usize,
        h_distance: usize,
        base_distance: Option<usize>,
        bound: usize,
    },
    Extraction(EmbeddingViolation),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TemplateReport {
    pub ok: bool,
    pub violation: Option<TemplateViolation>,
    /// The sheared blow-up `h^r{t}` with aligned matchings.
    #[serde(skip)]
    pub pattern: Graph,
    /// Pattern vertex `i t + a` goes to the `a`-th vertex of segment `i`.
    pub embedding: Option<Embedding>,
    /// Blue `J`-pairs between segments, all position-aligned.
    pub blue_pairs: Vec<(Vertex, Vertex)>,
    pub segment_pairs_checked: usize,
    pub distance_checks: usize,
    /// Segment pairs within `h`-distance `r` whose base-distance bound
    /// `(t-1)(d+1) + d` exceeds the power `R` of `J`, so the bound alone
    /// does not guarantee the `J`-edges; containment is still checked
    /// directly.
    pub uncertified_pairs: Vec<(usize, usize)>,
}

/// The base graph, the base vertex of each `J`-vertex and the power `R`
/// with `J` inside `base^R`, for checking that segments at `h`-distance
/// `d <= r` are within base distance `(t-1)(d+1) + d` of each other.
pub struct BaseLayout<'a> {
    pub graph: &'a Graph,
    pub vertex_of: &'a [Vertex],
    pub big_r: usize,
}

/// Checks that `h^r(t)` sits in `J` on the given segments (each segment a
/// `J`-clique, segments within `h`-distance `r` completely joined) and
/// extracts the grey copy of `h^r{t}`: between two segments only
/// position-aligned pairs may be blue, and exactly those aligned pairs are
/// dropped.
pub fn check_template_containment(
    h: &Graph,
    r: usize,
    t: usize,
    segments: &[Segment],
    j: &Graph,
    aux: &AuxColouring,
    base: Option<BaseLayout<'_>>,
) -> TemplateReport {
    let hr = power(h, r);
    let (pattern, _) = sheared_blowup(&hr, t, MatchingRule::Aligned);
    let mut report = TemplateReport {
        ok: false,
        violation: None,
        pattern,
        embedding: None,
        blue_pairs: Vec::new(),
        segment_pairs_checked: 0,
        distance_checks: 0,
        uncertified_pairs: Vec::new(),
    };
    let fail = |mut rep: TemplateReport, v| {
        rep.violation = Some(v);
        rep
    };
    assert_eq!(segments.len(), h.n(), "one segment per vertex of h");
    for (i, seg) in segments.iter().enumerate() {
        if seg.vertices.len() != t {
            return fail(report, TemplateViolation::SegmentSize { segment: i, size: seg.vertices.len() });
        }
        for (x, &u) in seg.vertices.iter().enumerate() {
            for &v in &seg.vertices[x + 1..] {
                if !j.has_edge(u, v) {
                    return fail(report, TemplateViolation::SegmentNotClique { segment: i, u, v });
                }
                if aux.is_blue(j, u, v) {
                    return fail(report, TemplateViolation::BlueInsideSegment { segment: i, u, v });
                }
            }
        }
    }
    for (a, b) in hr.edges() {
        report.segment_pairs_checked += 1;
        for (x, &u) in segments[a].vertices.iter().enumerate() {
            for (y, &v) in segments[b].vertices.iter().enumerate() {
                if !j.has_edge(u, v) {
                    return fail(report, TemplateViolation::MissingPair { a, b, u, v });
                }
                if aux.is_blue(j, u, v) {
                    if x != y {
                        return fail(report, TemplateViolation::BlueOffMatching { a, b, u, v });
                    }
                    report.blue_pairs.push((u, v));
                }
            }
        }
    }
    if let Some(layout) = base {
        for a in 0..h.n() {
            let hd = h.distances_within(a, r);
            let from: Vec<Vec<usize>> = segments[a]
                .vertices
                .iter()
                .map(|&u| layout.graph.distances_within(layout.vertex_of[u], usize::MAX))
                .collect();
            for b in a + 1..h.n() {
                let d = hd[b];
                if d > r {
                    continue;
                }
                // `d + 1` segments on a shortest `h`-path.
                let bound = (t - 1) * (d + 1) + d;
                if bound > layout.big_r {
                    report.uncertified_pairs.push((a, b));
                }
                for dist in &from {
                    for &v in &segments[b].vertices {
                        report.distance_checks += 1;
                        let got = dist[layout.vertex_of[v]];
                        if got > bound {
                            let base_distance = (got != UNREACHABLE).then_some(got);
                            return fail(
                                report,
                                TemplateViolation::DistanceBound { a, b, h_distance: d, base_distance, bound },
                            );
                        }
                    }
                }
            }
        }
    }
    let map = segments.iter().flat_map(|s| s.vertices.iter().copied()).collect();
    let e = Embedding::new(map);
    let labels = aux_edge_colouring(j, aux);
    let check = validate_embedding(&report.pattern, j, &e, Some((&labels, &[AUX_GREY])));
    if let Some(v) = check.violation {
        return fail(report, TemplateViolation::Extraction(v));
    }
    report.embedding = Some(e);
    report.ok = true;
    report
}
