//! Prefix sets and tree decoding, the traceability injection, and graph sets
//! with their trace adversaries.

mod graph;
mod prefix;
mod wct;

pub use graph::{graph_set, hit_indices, trace_from_sampler};
pub use prefix::{
    build_prefix_tree, extract_candidates, introreduce, prefix_code_sampler, prefix_set, PrefixTree,
};
pub use wct::{
    build_wct_injection, factorial, parse_guesses, wct_block, wct_target, WctInjection, MAX_WCT_N,
};
