//! Path structure: covers of 2-coloured complete graphs by blue paths and a
//! red balanced complete multipartite graph, long paths through prescribed
//! parts, and the segment graph built from such a path.

mod cover;
mod longpath;
mod segments;

pub use cover::{
    partition_two_coloured, sweep_all_colourings, verify_partition, PartitionError, PartitionMode, PartitionReport,
    PartitionResult, PartitionViolation, SweepReport, EXHAUSTIVE_MAX_N, HEURISTIC_RESTARTS,
};
pub use longpath::{expansion_counterexample, long_path_through_sets, LongPathConfig, LongPathError};
pub use segments::{
    auxiliary_graph, max_edges_between_segments, prune_top, segment_path, sparsify, Segment, SegmentError,
};
