//! Brute-force reference for admissibility, counting and ranking.
//!
//! Everything here is recomputed from the three admissibility conditions on
//! arc sets: degrees are counted afresh, likelihoods are products over arc
//! weights, and local ranks come from sorting exhaustively enumerated vectors.
//! The only thing shared with the fast engine is the trail decomposition,
//! which fixes the coordinate system that rank vectors live in.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::network::{ArcId, PhyloNetwork};
use crate::ranking::RankVector;
use crate::zigzag::{decompose, ZigzagTrail};

pub const DEFAULT_CAP: usize = 24;

/// A directed graph given by its arc list; the vertex set is whatever the
/// arcs touch. Used for networks and for trail subgraphs alike.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcGraph {
    pub arcs: Vec<(usize, usize)>,
}

impl ArcGraph {
    pub fn from_network(network: &PhyloNetwork) -> Self {
        ArcGraph {
            arcs: network.endpoints(),
        }
    }

    /// The subgraph induced by a trail's arcs, in trail order.
    pub fn trail(network: &PhyloNetwork, trail: &ZigzagTrail) -> Self {
        Self::from_arcs(&network.endpoints(), &trail.arcs)
    }

    pub fn from_arcs(endpoints: &[(usize, usize)], arcs: &[ArcId]) -> Self {
        ArcGraph {
            arcs: arcs.iter().map(|a| endpoints[a.0]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    fn degrees(&self) -> (BTreeMap<usize, Vec<usize>>, BTreeMap<usize, Vec<usize>>) {
        let mut into: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        let mut from: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &(t, h)) in self.arcs.iter().enumerate() {
            from.entry(t).or_default().push(i);
            into.entry(h).or_default().push(i);
        }
        (into, from)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// Arcs into an in-degree-1 vertex or out of an out-degree-1 vertex are in.
    ForcedArc,
    /// Of two arcs with a common head, exactly one is in.
    HeadExactlyOne,
    /// Of two arcs with a common tail, at least one is in.
    TailAtLeastOne,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::ForcedArc => "forced-arc",
            Condition::HeadExactlyOne => "head-exactly-one",
            Condition::TailAtLeastOne => "tail-at-least-one",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionFailure {
    pub condition: Condition,
    /// The vertex where the condition fails.
    pub vertex: usize,
    /// Positions (in the graph's arc list) of the arcs involved.
    pub arcs: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityReport {
    pub subset: BTreeSet<usize>,
    pub failures: Vec<ConditionFailure>,
}

impl AdmissibilityReport {
    pub fn is_admissible(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn violated_conditions(&self) -> BTreeSet<Condition> {
        self.failures.iter().map(|f| f.condition).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("{arcs} arcs exceed the brute-force cap of {cap}")]
    CapExceeded { arcs: usize, cap: usize },
    #[error("k = {k} is outside 1..={count}")]
    KOutOfRange { k: usize, count: usize },
}

/// Evaluates the admissibility conditions for `subset` (positions into
/// `graph.arcs`), with degrees taken in `graph` itself.
pub fn check_admissible(graph: &ArcGraph, subset: &BTreeSet<usize>) -> AdmissibilityReport {
    let (into, from) = graph.degrees();
    let mut failures = Vec::new();
    for (i, &(t, h)) in graph.arcs.iter().enumerate() {
        let forced = into[&h].len() == 1 || from[&t].len() == 1;
        if forced && !subset.contains(&i) {
            let vertex = if into[&h].len() == 1 { h } else { t };
            failures.push(ConditionFailure {
                condition: Condition::ForcedArc,
                vertex,
                arcs: vec![i],
            });
        }
    }
    for (&v, arcs) in &into {
        for (x, &a1) in arcs.iter().enumerate() {
            for &a2 in &arcs[x + 1..] {
                if subset.contains(&a1) == subset.contains(&a2) {
                    failures.push(ConditionFailure {
                        condition: Condition::HeadExactlyOne,
                        vertex: v,
                        arcs: vec![a1, a2],
                    });
                }
            }
        }
    }
    for (&v, arcs) in &from {
        for (x, &a1) in arcs.iter().enumerate() {
            for &a2 in &arcs[x + 1..] {
                if !subset.contains(&a1) && !subset.contains(&a2) {
                    failures.push(ConditionFailure {
                        condition: Condition::TailAtLeastOne,
                        vertex: v,
                        arcs: vec![a1, a2],
                    });
                }
            }
        }
    }
    AdmissibilityReport {
        subset: subset.clone(),
        failures,
    }
}

/// The conditions compiled to bit masks over at most 64 arcs, for exhaustive
/// enumeration.
#[derive(Clone, Debug)]
pub struct MaskChecker {
    forced: u64,
    heads: Vec<u64>,
    tails: Vec<u64>,
}

impl MaskChecker {
    pub fn new(graph: &ArcGraph) -> Self {
        assert!(graph.len() <= 64);
        let (into, from) = graph.degrees();
        let mut forced = 0u64;
        for (i, &(t, h)) in graph.arcs.iter().enumerate() {
            if into[&h].len() == 1 || from[&t].len() == 1 {
                forced |= 1 << i;
            }
        }
        let pairs = |m: &BTreeMap<usize, Vec<usize>>| {
            let mut out = Vec::new();
            for arcs in m.values() {
                for (x, &a1) in arcs.iter().enumerate() {
                    for &a2 in &arcs[x + 1..] {
                        out.push((1u64 << a1) | (1u64 << a2));
                    }
                }
            }
            out
        };
        MaskChecker {
            forced,
            heads: pairs(&into),
            tails: pairs(&from),
        }
    }

    pub fn admits(&self, subset: u64) -> bool {
        subset & self.forced == self.forced
            && self.heads.iter().all(|&m| (subset & m).count_ones() == 1)
            && self.tails.iter().all(|&m| subset & m != 0)
    }
}

/// Every admissible 0/1 vector of a small graph, in increasing lexicographic
/// order of the vector (position 0 is the most significant).
pub fn admissible_vectors(graph: &ArcGraph) -> Vec<Vec<bool>> {
    let m = graph.len();
    assert!(m <= 30, "exhaustive enumeration over {m} arcs");
    let checker = MaskChecker::new(graph);
    let mut out: Vec<Vec<bool>> = (0u64..1 << m)
        .filter(|&s| checker.admits(s))
        .map(|s| (0..m).map(|i| s >> i & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// A support tree found by exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleTree {
    pub arcs: Vec<ArcId>,
    pub likelihood: BigRational,
    pub rank_vector: RankVector,
}

fn weight_product<'a>(
    network: &'a PhyloNetwork,
    arcs: impl IntoIterator<Item = &'a ArcId>,
) -> BigRational {
    let mut acc = BigRational::one();
    for a in arcs {
        acc *= network.weight(*a);
    }
    acc
}

/// All support trees, via exhaustive per-trail enumeration and the direct
/// product across trails. Rank vectors use locally sorted families.
pub fn brute_force_support_trees(
    network: &PhyloNetwork,
    cap: usize,
) -> Result<Vec<OracleTree>, OracleError> {
    if network.arc_count() > cap {
        return Err(OracleError::CapExceeded {
            arcs: network.arc_count(),
            cap,
        });
    }
    let decomposition = decompose(network);
    let mut families: Vec<Vec<Vec<ArcId>>> = Vec::new();
    for trail in decomposition.trails() {
        let graph = ArcGraph::trail(network, trail);
        let mut family: Vec<(BigRational, Vec<bool>)> = admissible_vectors(&graph)
            .into_iter()
            .map(|bits| {
                let chosen: Vec<ArcId> = trail
                    .arcs
                    .iter()
                    .zip(&bits)
                    .filter(|(_, &b)| b)
                    .map(|(a, _)| *a)
                    .collect();
                (weight_product(network, &chosen), bits)
            })
            .collect();
        family.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
        families.push(
            family
                .into_iter()
                .map(|(_, bits)| {
                    trail
                        .arcs
                        .iter()
                        .zip(&bits)
                        .filter(|(_, &b)| b)
                        .map(|(a, _)| *a)
                        .collect()
                })
                .collect(),
        );
    }
    if families.iter().any(|f| f.is_empty()) {
        return Ok(Vec::new());
    }

    let mut trees = Vec::new();
    let mut digits = vec![0usize; families.len()];
    loop {
        let mut arcs: Vec<ArcId> = digits
            .iter()
            .zip(&families)
            .flat_map(|(&d, f)| f[d].iter().copied())
            .collect();
        arcs.sort();
        let likelihood = weight_product(network, &arcs);
        let rank_vector = RankVector(digits.iter().map(|&d| d as u32 + 1).collect());
        trees.push(OracleTree {
            arcs,
            likelihood,
            rank_vector,
        });
        // odometer, last coordinate fastest
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(trees);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < families[i].len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// All admissible arc sets of the whole network, by testing every subset.
pub fn brute_force_direct(
    network: &PhyloNetwork,
    cap: usize,
) -> Result<Vec<Vec<ArcId>>, OracleError> {
    let m = network.arc_count();
    if m > cap || m > 30 {
        return Err(OracleError::CapExceeded {
            arcs: m,
            cap: cap.min(30),
        });
    }
    let checker = MaskChecker::new(&ArcGraph::from_network(network));
    Ok((0u64..1 << m)
        .filter(|&s| checker.admits(s))
        .map(|s| (0..m).filter(|&i| s >> i & 1 == 1).map(ArcId).collect())
        .collect())
}

fn ranking_order(a: &OracleTree, b: &OracleTree) -> Ordering {
    b.likelihood
        .cmp(&a.likelihood)
        .then_with(|| a.rank_vector.cmp(&b.rank_vector))
}

/// The first `k` support trees in ranking order.
pub fn brute_force_top_k(
    network: &PhyloNetwork,
    k: usize,
    cap: usize,
) -> Result<Vec<OracleTree>, OracleError> {
    let mut all = brute_force_support_trees(network, cap)?;
    if k == 0 || k > all.len() {
        return Err(OracleError::KOutOfRange {
            k,
            count: all.len(),
        });
    }
    all.sort_by(ranking_order);
    all.truncate(k);
    Ok(all)
}
