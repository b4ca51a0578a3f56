//! Weighted rooted binary phylogenetic networks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use crate::rational::is_probability;

/// Dense vertex index, `0..vertex_count()`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Dense arc index. Equals the arc's position in the input arc list; every
/// lexicographic tie-break downstream is expressed in this order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub usize);

impl VertexId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl ArcId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedArc {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: BigRational,
}

/// An unvalidated arc list with interned vertex labels.
///
/// Vertices are numbered in order of first appearance in the arc list, so two
/// raw networks with the same arc lines always get the same ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawNetwork {
    labels: Vec<String>,
    index: BTreeMap<String, VertexId>,
    arcs: Vec<WeightedArc>,
}

impl RawNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = VertexId(self.labels.len());
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        id
    }

    /// Appends an arc; its [`ArcId`] is the number of arcs added before it.
    pub fn add_arc(&mut self, tail: &str, head: &str, weight: BigRational) -> ArcId {
        let tail = self.intern(tail);
        let head = self.intern(head);
        self.arcs.push(WeightedArc { tail, head, weight });
        ArcId(self.arcs.len() - 1)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arcs(&self) -> &[WeightedArc] {
        &self.arcs
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    /// Every violated structural clause, in a fixed order. Empty iff the
    /// arc list describes a valid rooted binary phylogenetic network.
    pub fn validate(&self) -> Vec<Violation> {
        let mut report = Vec::new();
        let n = self.labels.len();
        let label = |v: VertexId| self.labels[v.0].clone();

        if self.arcs.is_empty() {
            report.push(Violation::Empty);
            return report;
        }

        for (i, arc) in self.arcs.iter().enumerate() {
            if !is_probability(&arc.weight) {
                report.push(Violation::WeightOutOfRange {
                    arc: ArcId(i),
                    weight: arc.weight.clone(),
                });
            }
        }

        let mut seen: BTreeMap<(VertexId, VertexId), ArcId> = BTreeMap::new();
        for (i, arc) in self.arcs.iter().enumerate() {
            if arc.tail == arc.head {
                report.push(Violation::SelfLoop {
                    arc: ArcId(i),
                    vertex: label(arc.tail),
                });
                continue;
            }
            if let Some(&first) = seen.get(&(arc.tail, arc.head)) {
                report.push(Violation::DuplicateArc {
                    first,
                    duplicate: ArcId(i),
                    tail: label(arc.tail),
                    head: label(arc.head),
                });
            } else {
                seen.insert((arc.tail, arc.head), ArcId(i));
            }
        }

        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for arc in &self.arcs {
            outdeg[arc.tail.0] += 1;
            indeg[arc.head.0] += 1;
        }

        let roots: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        match roots.as_slice() {
            [] => report.push(Violation::NoRoot),
            [r] => {
                if !(1..=2).contains(&outdeg[*r]) {
                    report.push(Violation::RootOutDegree {
                        root: label(VertexId(*r)),
                        out_degree: outdeg[*r],
                    });
                }
            }
            many => report.push(Violation::MultipleRoots {
                roots: many.iter().map(|&r| label(VertexId(r))).collect(),
            }),
        }

        if !(0..n).any(|v| indeg[v] == 1 && outdeg[v] == 0) {
            report.push(Violation::NoLeaves);
        }

        for v in 0..n {
            let degrees = (indeg[v], outdeg[v]);
            let ok = matches!(degrees, (0, _) | (1, 0) | (1, 2) | (2, 1));
            if !ok {
                report.push(Violation::VertexDegrees {
                    vertex: label(VertexId(v)),
                    in_degree: degrees.0,
                    out_degree: degrees.1,
                });
            }
        }

        let cyclic = cyclic_vertices(n, &self.arcs);
        if !cyclic.is_empty() {
            report.push(Violation::Cycle {
                vertices: cyclic.into_iter().map(|v| label(VertexId(v))).collect(),
            });
        }
        report
    }
}

/// Vertices left over by Kahn's algorithm (on or downstream of a cycle).
fn cyclic_vertices(n: usize, arcs: &[WeightedArc]) -> Vec<usize> {
    let mut indeg = vec![0usize; n];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for arc in arcs {
        indeg[arc.head.0] += 1;
        out[arc.tail.0].push(arc.head.0);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = vec![false; n];
    while let Some(v) = stack.pop() {
        removed[v] = true;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// One violated structural requirement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    WeightOutOfRange {
        arc: ArcId,
        weight: BigRational,
    },
    SelfLoop {
        arc: ArcId,
        vertex: String,
    },
    DuplicateArc {
        first: ArcId,
        duplicate: ArcId,
        tail: String,
        head: String,
    },
    NoRoot,
    MultipleRoots {
        roots: Vec<String>,
    },
    RootOutDegree {
        root: String,
        out_degree: usize,
    },
    NoLeaves,
    VertexDegrees {
        vertex: String,
        in_degree: usize,
        out_degree: usize,
    },
    Cycle {
        vertices: Vec<String>,
    },
}

impl Violation {
    /// Short name of the violated clause.
    pub fn clause(&self) -> &'static str {
        match self {
            Violation::Empty => "non-empty",
            Violation::WeightOutOfRange { .. } => "weight range",
            Violation::SelfLoop { .. } | Violation::DuplicateArc { .. } => "simple graph",
            Violation::NoRoot | Violation::MultipleRoots { .. } => "unique root",
            Violation::RootOutDegree { .. } => "root out-degree",
            Violation::NoLeaves => "leaf set",
            Violation::VertexDegrees { .. } => "vertex degrees",
            Violation::Cycle { .. } => "acyclicity",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "structural violation: {} (", self.clause())?;
        match self {
            Violation::Empty => write!(f, "no arcs")?,
            Violation::WeightOutOfRange { arc, weight } => {
                write!(f, "arc {arc} has weight {weight} outside (0,1]")?
            }
            Violation::SelfLoop { arc, vertex } => write!(f, "arc {arc} is a loop at '{vertex}'")?,
            Violation::DuplicateArc {
                first,
                duplicate,
                tail,
                head,
            } => write!(
                f,
                "arc {duplicate} repeats arc {first} '{tail}' -> '{head}'"
            )?,
            Violation::NoRoot => write!(f, "no vertex has in-degree 0")?,
            Violation::MultipleRoots { roots } => write!(
                f,
                "{} vertices have in-degree 0: {}",
                roots.len(),
                roots.join(", ")
            )?,
            Violation::RootOutDegree { root, out_degree } => write!(
                f,
                "root '{root}' has out-degree {out_degree}, expected 1 or 2"
            )?,
            Violation::NoLeaves => write!(f, "no vertex has in-degree 1 and out-degree 0")?,
            Violation::VertexDegrees {
                vertex,
                in_degree,
                out_degree,
            } => write!(
                f,
                "vertex '{vertex}' has in-degree {in_degree} and out-degree {out_degree}"
            )?,
            Violation::Cycle { vertices } => {
                write!(f, "directed cycle through {}", vertices.join(", "))?
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum NetworkError {
    #[error("{}", display_violations(.0))]
    Invalid(Vec<Violation>),
}

fn display_violations(v: &[Violation]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    parts.join("; ")
}

/// A validated, immutable weighted rooted binary phylogenetic network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhyloNetwork {
    labels: Vec<String>,
    arcs: Vec<WeightedArc>,
    root: VertexId,
    leaves: Vec<VertexId>,
    in_arcs: Vec<Vec<ArcId>>,
    out_arcs: Vec<Vec<ArcId>>,
}

impl TryFrom<RawNetwork> for PhyloNetwork {
    type Error = NetworkError;

    fn try_from(raw: RawNetwork) -> Result<Self, Self::Error> {
        let report = raw.validate();
        if !report.is_empty() {
            return Err(NetworkError::Invalid(report));
        }
        let n = raw.labels.len();
        let mut in_arcs = vec![Vec::new(); n];
        let mut out_arcs = vec![Vec::new(); n];
        for (i, arc) in raw.arcs.iter().enumerate() {
            out_arcs[arc.tail.0].push(ArcId(i));
            in_arcs[arc.head.0].push(ArcId(i));
        }
        let root = (0..n)
            .find(|&v| in_arcs[v].is_empty())
            .map(VertexId)
            .expect("validated");
        let leaves = (0..n)
            .filter(|&v| out_arcs[v].is_empty())
            .map(VertexId)
            .collect();
        Ok(PhyloNetwork {
            labels: raw.labels,
            arcs: raw.arcs,
            root,
            leaves,
            in_arcs,
            out_arcs,
        })
    }
}

impl PhyloNetwork {
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[WeightedArc] {
        &self.arcs
    }

    pub fn arc(&self, a: ArcId) -> &WeightedArc {
        &self.arcs[a.0]
    }

    pub fn weight(&self, a: ArcId) -> &BigRational {
        &self.arcs[a.0].weight
    }

    pub fn weights(&self) -> Vec<BigRational> {
        self.arcs.iter().map(|a| a.weight.clone()).collect()
    }

    pub fn tail(&self, a: ArcId) -> VertexId {
        self.arcs[a.0].tail
    }

    pub fn head(&self, a: ArcId) -> VertexId {
        self.arcs[a.0].head
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    /// The leaf set X, ascending by id.
    pub fn leaves(&self) -> &[VertexId] {
        &self.leaves
    }

    pub fn in_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.in_arcs[v.0]
    }

    pub fn out_arcs(&self, v: VertexId) -> &[ArcId] {
        &self.out_arcs[v.0]
    }

    pub fn reticulations(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count())
            .map(VertexId)
            .filter(|&v| self.in_arcs[v.0].len() == 2)
    }

    /// `(tail, head)` index pairs in arc order.
    pub fn endpoints(&self) -> Vec<(usize, usize)> {
        self.arcs.iter().map(|a| (a.tail.0, a.head.0)).collect()
    }

    /// Rebuilds the network in a different arc order with the same weights;
    /// `order[i]` is the old arc that becomes arc `i`.
    pub fn permute_arcs(&self, order: &[ArcId]) -> PhyloNetwork {
        let mut raw = RawNetwork::new();
        for &a in order {
            let arc = &self.arcs[a.0];
            raw.add_arc(
                self.label(arc.tail),
                self.label(arc.head),
                arc.weight.clone(),
            );
        }
        PhyloNetwork::try_from(raw).expect("permutation of a valid network")
    }

    /// Same topology and arc order with new weights.
    pub fn with_weights(&self, weights: &[BigRational]) -> Result<PhyloNetwork, NetworkError> {
        assert_eq!(weights.len(), self.arc_count());
        let mut raw = RawNetwork::new();
        for (arc, w) in self.arcs.iter().zip(weights) {
            raw.add_arc(self.label(arc.tail), self.label(arc.head), w.clone());
        }
        PhyloNetwork::try_from(raw)
    }

    /// Vertices reachable from the root that also reach a leaf.
    pub fn vertices_on_root_leaf_paths(&self) -> BTreeSet<VertexId> {
        let n = self.vertex_count();
        let mut from_root = vec![false; n];
        let mut stack = vec![self.root.0];
        from_root[self.root.0] = true;
        while let Some(v) = stack.pop() {
            for &a in &self.out_arcs[v] {
                let h = self.arcs[a.0].head.0;
                if !from_root[h] {
                    from_root[h] = true;
                    stack.push(h);
                }
            }
        }
        let mut to_leaf = vec![false; n];
        let mut stack: Vec<usize> = self.leaves.iter().map(|v| v.0).collect();
        for &v in &stack {
            to_leaf[v] = true;
        }
        while let Some(v) = stack.pop() {
            for &a in &self.in_arcs[v] {
                let t = self.arcs[a.0].tail.0;
                if !to_leaf[t] {
                    to_leaf[t] = true;
                    stack.push(t);
                }
            }
        }
        (0..n)
            .filter(|&v| from_root[v] && to_leaf[v])
            .map(VertexId)
            .collect()
    }
}
