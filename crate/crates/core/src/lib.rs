//! Support trees of tree-based phylogenetic networks.
//!
//! A rooted binary phylogenetic network decomposes uniquely into maximal
//! zig-zag trails. Each trail contributes an independent family of admissible
//! arc choices, so the support trees of the network are the direct product of
//! those families. This crate builds that decomposition and uses it to
//!
//! * decide tree-basedness and count support trees,
//! * rank each trail's admissible choices by likelihood,
//! * stream the global top-k support tree ranking with a per-tree delay linear
//!   in the number of arcs.
//!
//! A brute-force [`oracle`] that re-derives everything from the raw
//! admissibility conditions is included for verification on small inputs.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod fixtures;
pub mod generate;
pub mod local;
pub mod network;
pub mod oracle;
mod queue;
pub mod ranking;
pub mod rational;
pub mod zigzag;

pub use generate::{generate_non_tree_based, generate_random, generate_random_planted};
pub use local::{
    build_local_ranking, local_family_size, vector_to_arcs, AdmissibleVector, LocalEntry,
    LocalRanking, LocalRankingError,
};
pub use network::{
    ArcId, NetworkError, PhyloNetwork, RawNetwork, VertexId, Violation, WeightedArc,
};
pub use ranking::{
    count_support_trees, enumerate_all, top_k, Expansion, RankError, RankVector, RankedEnumerator,
    RankingModel, SupportTree, TraceStep,
};
pub use zigzag::{
    classify, decompose, decompose_arcs, is_tree_based, Decomposition, TrailKind, ZigzagTrail,
};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
