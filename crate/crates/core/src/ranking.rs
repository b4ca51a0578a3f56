//! Top-k support tree ranking with linear delay.
//!
//! A support tree is identified by its *rank vector*: component `i` is the
//! 1-based local rank of the tree's restriction to trail `i`. The ranking order
//! `≤*` is likelihood descending, ties broken by ascending lexicographic order
//! of rank vectors.
//!
//! The search runs over the tree Γ on rank vectors where the parent of `τ`
//! decrements the first component of `τ` that exceeds one. Every vector
//! precedes its children in `≤*`, so the candidate set
//!
//! ```text
//! Q_1 = {(1,…,1)}
//! Q_j = (Q_{j-1} \ {τ_{j-1}}) ∪ {child*(τ_{j-1}), sibling*(τ_{j-1})}
//! ```
//!
//! always holds the next tree at its minimum. `child*` is the `≤*`-least child
//! and `sibling*` the `≤*`-least strictly later sibling; both are found with one
//! scan over the trails using precomputed integer keys for the step ratios
//! between consecutive local ranks.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use crate::local::{build_local_ranking, local_family_size, LocalRanking};
use crate::network::{ArcId, PhyloNetwork};
use crate::queue::MinHeap;
use crate::rational::{self, mul_reduced};
use crate::zigzag::{decompose, Decomposition};

/// One local rank (1-based) per trail, in canonical trail order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RankVector(pub Vec<u32>);

impl RankVector {
    pub fn ones(dimension: usize) -> Self {
        RankVector(vec![1; dimension])
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }

    /// First coordinate greater than one; `None` for the all-ones vector.
    pub fn id(&self) -> Option<usize> {
        self.0.iter().position(|&r| r > 1)
    }

    pub fn is_ones(&self) -> bool {
        self.id().is_none()
    }

    pub fn l1_distance(&self, other: &RankVector) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| u64::from(a.abs_diff(b)))
            .sum()
    }

    /// Keeps only the listed coordinates.
    pub fn project(&self, coordinates: &[usize]) -> RankVector {
        RankVector(coordinates.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for RankVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportTree {
    pub rank_vector: RankVector,
    /// Selected arcs, ascending.
    pub arcs: Vec<ArcId>,
    pub likelihood: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RankError {
    #[error("network is not tree-based: {}", describe_w_fences(.w_fences))]
    NotTreeBased { w_fences: Vec<Vec<ArcId>> },
    #[error("k must be at least 1")]
    ZeroK,
    #[error("k = {k} exceeds the number of support trees ({count})")]
    KExceedsCount { k: u64, count: BigUint },
    #[error("the all-ones rank vector is the root and has no parent or siblings")]
    Root,
    #[error("rank vector {0} is not a support tree of this network")]
    OutOfBounds(RankVector),
}

fn describe_w_fences(w: &[Vec<ArcId>]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, arcs) in w.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        s.push_str("W-fence with arcs ");
        for (j, a) in arcs.iter().enumerate() {
            let _ = write!(s, "{}{a}", if j > 0 { "," } else { "" });
        }
    }
    s
}

/// Number of support trees: the product of the local family sizes, or zero
/// when some trail is a W-fence.
pub fn count_support_trees(network: &PhyloNetwork) -> BigUint {
    let d = decompose(network);
    let mut count = BigUint::one();
    for t in d.trails() {
        match local_family_size(t) {
            Ok(s) => count *= BigUint::from(s),
            Err(_) => return BigUint::default(),
        }
    }
    count
}

/// Streams the first `k` trees of the support tree ranking.
pub fn top_k(network: &PhyloNetwork, k: u64) -> Result<RankedEnumerator, RankError> {
    if k == 0 {
        return Err(RankError::ZeroK);
    }
    let model = RankingModel::new(network)?;
    if !model.count_at_least(k) {
        return Err(RankError::KExceedsCount {
            k,
            count: model.count(),
        });
    }
    Ok(model.into_enumerator(Some(k)))
}

/// Streams the whole support tree ranking.
pub fn enumerate_all(network: &PhyloNetwork) -> Result<RankedEnumerator, RankError> {
    Ok(RankingModel::new(network)?.into_enumerator(None))
}

/// Everything the enumerator precomputes from a tree-based network.
#[derive(Clone, Debug)]
pub struct RankingModel {
    arc_count: usize,
    decomposition: Decomposition,
    locals: Vec<LocalRanking>,
    /// Likelihood of the all-ones tree.
    base: BigRational,
    /// `rel[i][r-1]` = contribution of local rank `r` over that of rank 1.
    rel: Vec<Vec<BigRational>>,
    ln_rel: Vec<Vec<f64>>,
    /// Numerator and denominator of `rel`, for unreduced products.
    rel_parts: Vec<Vec<(BigUint, BigUint)>>,
    /// `step_key[i][r-1]` orders the ratio contribution(r+1)/contribution(r)
    /// across all trails; larger key, larger ratio.
    step_key: Vec<Vec<u32>>,
    /// Trails with at least two admissible vectors, ascending.
    nontrivial: Vec<usize>,
}

impl RankingModel {
    pub fn new(network: &PhyloNetwork) -> Result<Self, RankError> {
        let decomposition = decompose(network);
        let w_fences: Vec<Vec<ArcId>> = decomposition.w_fences().map(|t| t.arcs.clone()).collect();
        if !w_fences.is_empty() {
            return Err(RankError::NotTreeBased { w_fences });
        }
        let weights = network.weights();
        let locals: Vec<LocalRanking> = decomposition
            .trails()
            .iter()
            .map(|t| build_local_ranking(t, &weights).expect("no W-fence"))
            .collect();

        let base = rational::product(locals.iter().map(|l| &l.entries[0].contribution));
        let rel: Vec<Vec<BigRational>> = locals
            .iter()
            .map(|l| {
                let first = &l.entries[0].contribution;
                l.entries.iter().map(|e| &e.contribution / first).collect()
            })
            .collect();
        let ln_rel = rel
            .iter()
            .map(|r| r.iter().map(rational::ln).collect())
            .collect();
        let rel_parts = rel
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x.numer().magnitude().clone(), x.denom().magnitude().clone()))
                    .collect()
            })
            .collect();

        let mut steps: Vec<(BigRational, usize, usize)> = Vec::new();
        for (i, r) in rel.iter().enumerate() {
            for j in 0..r.len().saturating_sub(1) {
                steps.push((&r[j + 1] / &r[j], i, j));
            }
        }
        steps.sort_by(|a, b| a.0.cmp(&b.0));
        let mut step_key: Vec<Vec<u32>> = rel
            .iter()
            .map(|r| vec![0; r.len().saturating_sub(1)])
            .collect();
        let mut key = 0u32;
        for idx in 0..steps.len() {
            if idx > 0 && steps[idx].0 != steps[idx - 1].0 {
                key += 1;
            }
            let (_, i, j) = steps[idx];
            step_key[i][j] = key;
        }
        let nontrivial = (0..locals.len())
            .filter(|&i| locals[i].len() >= 2)
            .collect();

        Ok(RankingModel {
            arc_count: network.arc_count(),
            decomposition,
            locals,
            base,
            rel,
            ln_rel,
            rel_parts,
            step_key,
            nontrivial,
        })
    }

    pub fn into_enumerator(self, limit: Option<u64>) -> RankedEnumerator {
        RankedEnumerator::new(self, limit)
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.decomposition
    }

    pub fn local_rankings(&self) -> &[LocalRanking] {
        &self.locals
    }

    /// Number of trails, i.e. the rank vector dimension.
    pub fn dimension(&self) -> usize {
        self.locals.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn family_sizes(&self) -> Vec<usize> {
        self.locals.iter().map(|l| l.len()).collect()
    }

    /// Trails with more than one admissible vector.
    pub fn nontrivial_trails(&self) -> &[usize] {
        &self.nontrivial
    }

    /// Likelihood of the maximum-likelihood support tree.
    pub fn base_likelihood(&self) -> &BigRational {
        &self.base
    }

    pub fn count(&self) -> BigUint {
        self.locals
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.len()))
    }

    /// `k <= count()`, stopping as soon as the partial product reaches `k`.
    pub fn count_at_least(&self, k: u64) -> bool {
        let mut partial: u128 = 1;
        for &i in &self.nontrivial {
            if partial >= u128::from(k) {
                return true;
            }
            partial = partial.saturating_mul(self.locals[i].len() as u128);
        }
        partial >= u128::from(k)
    }

    fn check(&self, tau: &RankVector) -> Result<(), RankError> {
        let ok = tau.dimension() == self.dimension()
            && tau
                .0
                .iter()
                .zip(&self.locals)
                .all(|(&r, l)| r >= 1 && r as usize <= l.len());
        if ok {
            Ok(())
        } else {
            Err(RankError::OutOfBounds(tau.clone()))
        }
    }

    /// `τ − e(τ)`.
    pub fn parent(&self, tau: &RankVector) -> Result<RankVector, RankError> {
        self.check(tau)?;
        let i = tau.id().ok_or(RankError::Root)?;
        let mut p = tau.clone();
        p.0[i] -= 1;
        Ok(p)
    }

    /// All children of `τ` in Γ.
    pub fn children(&self, tau: &RankVector) -> Result<Vec<RankVector>, RankError> {
        self.check(tau)?;
        let lim = tau.id().map_or(self.dimension(), |t| t + 1);
        Ok((0..lim)
            .filter(|&i| (tau.0[i] as usize) < self.locals[i].len())
            .map(|i| {
                let mut c = tau.clone();
                c.0[i] += 1;
                c
            })
            .collect())
    }

    pub fn child_star(&self, tau: &RankVector) -> Result<Option<RankVector>, RankError> {
        self.check(tau)?;
        let id = tau.id();
        let at = id.map_or(1, |t| tau.0[t]);
        Ok(self.best_increment(id, at, None).map(|i| {
            let mut c = tau.clone();
            c.0[i] += 1;
            c
        }))
    }

    pub fn sibling_star(&self, tau: &RankVector) -> Result<Option<RankVector>, RankError> {
        let p = self.parent(tau)?;
        let c = tau.id().expect("parent succeeded");
        let bar = (self.step_key[c][p.0[c] as usize - 1], c);
        let id = p.id();
        let at = id.map_or(1, |t| p.0[t]);
        Ok(self.best_increment(id, at, Some(bar)).map(|i| {
            let mut s = p.clone();
            s.0[i] += 1;
            s
        }))
    }

    /// Among the children `τ + e_i` of a vector whose first coordinate above one
    /// is `id` (holding `at`), the index of the `≤*`-least one. With `below`,
    /// only children strictly after the child `(key, index)` are considered.
    ///
    /// Children share every factor but one, so they compare by the step ratio
    /// of the incremented trail; equal ratios favour the larger index, whose
    /// vector is lexicographically smaller.
    fn best_increment(
        &self,
        id: Option<usize>,
        at: u32,
        below: Option<(u32, usize)>,
    ) -> Option<usize> {
        let lim = id.unwrap_or(usize::MAX);
        let mut best: Option<(u32, usize)> = None;
        for &i in &self.nontrivial {
            if i > lim {
                break;
            }
            let rank = if Some(i) == id { at } else { 1 };
            if rank as usize >= self.locals[i].len() {
                continue;
            }
            let cand = (self.step_key[i][rank as usize - 1], i);
            if below.is_some_and(|b| cand >= b) {
                continue;
            }
            if best.is_none_or(|b| cand > b) {
                best = Some(cand);
            }
        }
        best.map(|(_, i)| i)
    }

    /// Exact `f(τ)`.
    pub fn likelihood(&self, tau: &RankVector) -> BigRational {
        let rel = rational::product(
            tau.0
                .iter()
                .enumerate()
                .filter(|(_, &r)| r > 1)
                .map(|(i, &r)| &self.rel[i][r as usize - 1]),
        );
        mul_reduced(&self.base, &rel)
    }

    /// The `≤*` order on rank vectors.
    pub fn compare(&self, a: &RankVector, b: &RankVector) -> Ordering {
        self.likelihood(b)
            .cmp(&self.likelihood(a))
            .then_with(|| a.cmp(b))
    }

    /// Arcs of the support tree `τ`, ascending.
    pub fn arcs(&self, tau: &RankVector) -> Vec<ArcId> {
        let mut selected = vec![false; self.arc_count];
        self.mark_arcs(&tau.0, &mut selected);
        collect_marked(&mut selected)
    }

    pub fn support_tree(&self, tau: &RankVector) -> Result<SupportTree, RankError> {
        self.check(tau)?;
        Ok(SupportTree {
            rank_vector: tau.clone(),
            arcs: self.arcs(tau),
            likelihood: self.likelihood(tau),
        })
    }

    fn mark_arcs(&self, dense: &[u32], selected: &mut [bool]) {
        for ((trail, local), &r) in self
            .decomposition
            .trails()
            .iter()
            .zip(&self.locals)
            .zip(dense)
        {
            let bits = local.entry(r).vector.bits();
            for (&a, &b) in trail.arcs.iter().zip(bits) {
                if b {
                    selected[a.0] = true;
                }
            }
        }
    }

    fn candidate(&self, sparse: Vec<(u32, u32)>) -> Candidate {
        let ln = sparse
            .iter()
            .map(|&(i, r)| self.ln_rel[i as usize][r as usize - 1])
            .sum();
        Candidate {
            ln,
            sparse,
            exact: OnceCell::new(),
        }
    }

    /// Relative likelihood of `c` as an unreduced fraction, computed once.
    fn exact_rel<'c>(&self, c: &'c Candidate) -> &'c (BigUint, BigUint) {
        c.exact.get_or_init(|| {
            let (mut n, mut d) = (BigUint::one(), BigUint::one());
            for &(i, r) in &c.sparse {
                let (pn, pd) = &self.rel_parts[i as usize][r as usize - 1];
                n *= pn;
                d *= pd;
            }
            (n, d)
        })
    }

    fn dense(&self, c: &Candidate) -> RankVector {
        let mut v = vec![1; self.dimension()];
        for &(i, r) in &c.sparse {
            v[i as usize] = r;
        }
        RankVector(v)
    }

    /// `≤*` on candidates. The log-likelihood sums only settle the order when
    /// they differ by far more than their rounding error; anything closer is
    /// decided with exact rationals.
    fn cmp_candidates(&self, a: &Candidate, b: &Candidate) -> Ordering {
        let margin = 1e-9 * (1.0 + a.ln.abs() + b.ln.abs());
        let by_likelihood = if a.ln > b.ln + margin {
            Ordering::Less
        } else if b.ln > a.ln + margin {
            Ordering::Greater
        } else {
            let (an, ad) = self.exact_rel(a);
            let (bn, bd) = self.exact_rel(b);
            (bn * ad).cmp(&(an * bd))
        };
        by_likelihood.then_with(|| lex_sparse(&a.sparse, &b.sparse))
    }

    fn incremented(&self, c: &Candidate, i: usize) -> Candidate {
        let mut sparse = Vec::with_capacity(c.sparse.len() + 1);
        match c.sparse.first() {
            Some(&(t, r)) if t as usize == i => {
                sparse.push((t, r + 1));
                sparse.extend_from_slice(&c.sparse[1..]);
            }
            _ => {
                sparse.push((i as u32, 2));
                sparse.extend_from_slice(&c.sparse);
            }
        }
        self.candidate(sparse)
    }

    fn child_of(&self, c: &Candidate) -> Option<Candidate> {
        let (id, at) = match c.sparse.first() {
            Some(&(t, r)) => (Some(t as usize), r),
            None => (None, 1),
        };
        self.best_increment(id, at, None)
            .map(|i| self.incremented(c, i))
    }

    fn sibling_of(&self, c: &Candidate) -> Option<Candidate> {
        let &(t, r) = c.sparse.first()?;
        let mut parent_sparse = c.sparse.clone();
        if r == 2 {
            parent_sparse.remove(0);
        } else {
            parent_sparse[0].1 -= 1;
        }
        let bar = (self.step_key[t as usize][r as usize - 2], t as usize);
        let (id, at) = match parent_sparse.first() {
            Some(&(pt, pr)) => (Some(pt as usize), pr),
            None => (None, 1),
        };
        let i = self.best_increment(id, at, Some(bar))?;
        let parent = self.candidate(parent_sparse);
        Some(self.incremented(&parent, i))
    }
}

fn collect_marked(selected: &mut [bool]) -> Vec<ArcId> {
    let mut out = Vec::with_capacity(selected.len());
    for (a, s) in selected.iter_mut().enumerate() {
        if *s {
            out.push(ArcId(a));
            *s = false;
        }
    }
    out
}

/// Lexicographic order of the dense vectors behind two sparse ones.
fn lex_sparse(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some(&(ta, ra)), Some(&(tb, rb))) => {
                if ta != tb {
                    // the vector with the earlier non-one coordinate is larger there
                    return tb.cmp(&ta);
                }
                if ra != rb {
                    return ra.cmp(&rb);
                }
                i += 1;
                j += 1;
            }
        }
    }
}

/// A queued rank vector: its coordinates above one, ascending by trail,
/// and the log of its likelihood relative to the all-ones tree.
#[derive(Clone, Debug)]
struct Candidate {
    ln: f64,
    sparse: Vec<(u32, u32)>,
    exact: OnceCell<(BigUint, BigUint)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub child_star: Option<RankVector>,
    pub sibling_star: Option<RankVector>,
}

/// One row of an execution trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub j: u64,
    /// `Q_j` before the minimum is removed, in `≤*` order.
    pub queue: Vec<RankVector>,
    pub emitted: RankVector,
    /// `None` until the enumerator is asked for the next tree.
    pub expansion: Option<Expansion>,
}

/// Streaming state of the ranking: the candidate queue and the emission count.
pub struct RankedEnumerator {
    model: RankingModel,
    queue: MinHeap<Candidate>,
    limit: Option<u64>,
    emitted: u64,
    pending: Option<Candidate>,
    scratch: Vec<bool>,
    trace: Option<Vec<TraceStep>>,
}

impl RankedEnumerator {
    fn new(model: RankingModel, limit: Option<u64>) -> Self {
        let mut queue = MinHeap::new();
        let root = model.candidate(Vec::new());
        queue.push(root, |a, b| model.cmp_candidates(a, b));
        let scratch = vec![false; model.arc_count];
        RankedEnumerator {
            model,
            queue,
            limit,
            emitted: 0,
            pending: None,
            scratch,
            trace: None,
        }
    }

    /// Records `(Q_j, τ_j, child*, sibling*)` for every step. Costs a sort of
    /// the queue per emission; meant for small inputs.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn trace(&self) -> Option<&[TraceStep]> {
        self.trace.as_deref()
    }

    pub fn model(&self) -> &RankingModel {
        &self.model
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    pub fn queue_len(&self) -> usize {
        self.queue.len()
    }

    fn expand(&mut self, prev: Candidate) {
        let model = &self.model;
        let child = model.child_of(&prev);
        let sibling = model.sibling_of(&prev);
        if let Some(trace) = self.trace.as_mut() {
            if let Some(last) = trace.last_mut() {
                last.expansion = Some(Expansion {
                    child_star: child.as_ref().map(|c| model.dense(c)),
                    sibling_star: sibling.as_ref().map(|c| model.dense(c)),
                });
            }
        }
        for c in [child, sibling].into_iter().flatten() {
            self.queue.push(c, |a, b| model.cmp_candidates(a, b));
        }
    }
}

impl Iterator for RankedEnumerator {
    type Item = SupportTree;

    fn next(&mut self) -> Option<SupportTree> {
        if self.limit.is_some_and(|k| self.emitted >= k) {
            return None;
        }
        if let Some(prev) = self.pending.take() {
            self.expand(prev);
        }
        let snapshot = self.trace.as_ref().map(|_| {
            let mut q: Vec<&Candidate> = self.queue.iter().collect();
            q.sort_by(|a, b| self.model.cmp_candidates(a, b));
            q.into_iter()
                .map(|c| self.model.dense(c))
                .collect::<Vec<_>>()
        });
        let model = &self.model;
        let top = self.queue.pop(|a, b| model.cmp_candidates(a, b))?;
        self.emitted += 1;

        let rank_vector = model.dense(&top);
        model.mark_arcs(&rank_vector.0, &mut self.scratch);
        let arcs = collect_marked(&mut self.scratch);
        let (n, d) = model.exact_rel(&top);
        let likelihood = rational::scale(&model.base, n, d);

        if let (Some(trace), Some(queue)) = (self.trace.as_mut(), snapshot) {
            trace.push(TraceStep {
                j: self.emitted,
                queue,
                emitted: rank_vector.clone(),
                expansion: None,
            });
        }
        self.pending = Some(top);
        Some(SupportTree {
            rank_vector,
            arcs,
            likelihood,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::three_crowns_network;

    fn rv(v: &[u32]) -> RankVector {
        RankVector(v.to_vec())
    }

    #[test]
    fn parent_decrements_first_component_above_one() {
        let t = rv(&[1, 1, 1, 5, 8]);
        assert_eq!(t.id(), Some(3));
        let mut p = t.clone();
        p.0[3] -= 1;
        assert_eq!(p, rv(&[1, 1, 1, 4, 8]));
    }

    #[test]
    fn lex_sparse_matches_dense() {
        type Sparse = &'static [(u32, u32)];
        let cases: &[(Sparse, Sparse)] = &[
            (&[], &[(2, 2)]),
            (&[(0, 2)], &[(1, 2)]),
            (&[(1, 2), (3, 2)], &[(1, 2)]),
            (&[(1, 3)], &[(1, 2), (2, 2)]),
        ];
        for (a, b) in cases {
            let dense = |s: &[(u32, u32)]| {
                let mut v = vec![1u32; 5];
                for &(i, r) in s {
                    v[i as usize] = r;
                }
                v
            };
            assert_eq!(lex_sparse(a, b), dense(a).cmp(&dense(b)));
            assert_eq!(lex_sparse(b, a), dense(b).cmp(&dense(a)));
        }
    }

    #[test]
    fn three_crowns_gamma_tree_navigation() {
        let n = three_crowns_network();
        let m = RankingModel::new(&n).unwrap();
        let coords = m.nontrivial_trails().to_vec();
        assert_eq!(coords.len(), 3);
        let lift = |v: [u32; 3]| {
            let mut r = RankVector::ones(m.dimension());
            for (c, x) in coords.iter().zip(v) {
                r.0[*c] = x;
            }
            r
        };
        let proj = |r: Option<RankVector>| r.map(|r| r.project(&coords));
        assert_eq!(
            proj(m.child_star(&lift([1, 1, 1])).unwrap()),
            Some(rv(&[1, 1, 2]))
        );
        assert_eq!(
            proj(m.child_star(&lift([1, 1, 2])).unwrap()),
            Some(rv(&[2, 1, 2]))
        );
        assert_eq!(proj(m.child_star(&lift([2, 1, 1])).unwrap()), None);
        assert_eq!(
            proj(m.sibling_star(&lift([1, 1, 2])).unwrap()),
            Some(rv(&[2, 1, 1]))
        );
        assert_eq!(
            proj(m.sibling_star(&lift([2, 1, 1])).unwrap()),
            Some(rv(&[1, 2, 1]))
        );
        assert_eq!(proj(m.sibling_star(&lift([1, 2, 1])).unwrap()), None);
        assert_eq!(m.parent(&lift([1, 2, 2])).unwrap(), lift([1, 1, 2]));
        assert_eq!(m.parent(&lift([2, 1, 1])).unwrap(), lift([1, 1, 1]));
        assert_eq!(m.parent(&lift([1, 1, 1])), Err(RankError::Root));
        assert_eq!(m.sibling_star(&lift([1, 1, 1])), Err(RankError::Root));
    }

    #[test]
    fn k_validation() {
        let n = three_crowns_network();
        assert_eq!(top_k(&n, 0).err(), Some(RankError::ZeroK));
        assert!(matches!(
            top_k(&n, 9),
            Err(RankError::KExceedsCount { k: 9, .. })
        ));
        assert_eq!(top_k(&n, 8).unwrap().count(), 8);
        assert_eq!(count_support_trees(&n), BigUint::from(8u8));
    }
}
