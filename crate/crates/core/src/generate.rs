//! Seeded random networks.
//!
//! Tree-based instances are a random binary tree plus extra arcs, each added
//! by subdividing two arcs of the original tree and joining the new vertices
//! downward in a topological order. The original tree, with its arcs
//! subdivided, stays a support tree.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::network::{ArcId, PhyloNetwork, RawNetwork};

struct Builder {
    labels: Vec<String>,
    arcs: Vec<(usize, usize)>,
    /// Arcs of the planted tree.
    planted: Vec<bool>,
}

impl Builder {
    fn vertex(&mut self, label: String) -> usize {
        self.labels.push(label);
        self.labels.len() - 1
    }

    fn arc(&mut self, t: usize, h: usize, planted: bool) -> usize {
        self.arcs.push((t, h));
        self.planted.push(planted);
        self.arcs.len() - 1
    }

    /// Replaces arc `a = (t, h)` by `t -> s -> h`; returns `s`.
    fn subdivide(&mut self, a: usize, label: String) -> usize {
        let (t, h) = self.arcs[a];
        let s = self.vertex(label);
        self.arcs[a] = (t, s);
        let planted = self.planted[a];
        self.arc(s, h, planted);
        s
    }

    fn topological_rank(&self) -> Vec<usize> {
        let n = self.labels.len();
        let mut indeg = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for &(t, h) in &self.arcs {
            indeg[h] += 1;
            out[t].push(h);
        }
        let mut rank = vec![0; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut next = 0;
        while let Some(v) = stack.pop() {
            rank[v] = next;
            next += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        rank
    }

    fn random_tree(rng: &mut ChaCha8Rng, leaf_count: usize) -> Builder {
        let mut b = Builder {
            labels: Vec::new(),
            arcs: Vec::new(),
            planted: Vec::new(),
        };
        let root = b.vertex("r".into());
        let x1 = b.vertex("x1".into());
        let x2 = b.vertex("x2".into());
        b.arc(root, x1, true);
        b.arc(root, x2, true);
        for i in 3..=leaf_count {
            let a = rng.gen_range(0..b.arcs.len());
            let v = b.subdivide(a, format!("v{}", i - 2));
            let leaf = b.vertex(format!("x{i}"));
            b.arc(v, leaf, true);
        }
        b
    }

    fn add_extra_arcs(&mut self, rng: &mut ChaCha8Rng, extra_arcs: usize) {
        for e in 0..extra_arcs {
            let planted: Vec<usize> = (0..self.arcs.len()).filter(|&a| self.planted[a]).collect();
            let i = rng.gen_range(0..planted.len());
            let mut j = rng.gen_range(0..planted.len() - 1);
            if j >= i {
                j += 1;
            }
            let (a1, a2) = (planted[i], planted[j]);
            let rank = self.topological_rank();
            let (t1, t2) = (self.arcs[a1].0, self.arcs[a2].0);
            // join from the arc whose tail comes first so no cycle can close
            let (from, to) = if rank[t1] <= rank[t2] {
                (a1, a2)
            } else {
                (a2, a1)
            };
            let s = self.subdivide(from, format!("s{}", 2 * e + 1));
            let r = self.subdivide(to, format!("s{}", 2 * e + 2));
            self.arc(s, r, false);
        }
    }

    /// Shuffles the arc order, draws weights `k/64`, and validates.
    fn finish(self, rng: &mut ChaCha8Rng) -> (PhyloNetwork, Vec<ArcId>) {
        let mut order: Vec<usize> = (0..self.arcs.len()).collect();
        order.shuffle(rng);
        let mut raw = RawNetwork::new();
        let mut planted = Vec::new();
        for (pos, &a) in order.iter().enumerate() {
            let (t, h) = self.arcs[a];
            let w = BigRational::new(BigInt::from(rng.gen_range(1..=64u32)), BigInt::from(64u32));
            raw.add_arc(&self.labels[t], &self.labels[h], w);
            if self.planted[a] {
                planted.push(ArcId(pos));
            }
        }
        let network = PhyloNetwork::try_from(raw).expect("generator output is a valid network");
        (network, planted)
    }
}

/// A random tree-based network and the arcs of the tree it was built from.
///
/// `leaf_count` must be at least 2. The result has `2 * leaf_count - 2 +
/// 3 * extra_arcs` arcs and is a deterministic function of the arguments.
pub fn generate_random_planted(
    leaf_count: usize,
    extra_arcs: usize,
    seed: u64,
) -> (PhyloNetwork, Vec<ArcId>) {
    assert!(leaf_count >= 2, "leaf_count must be at least 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::random_tree(&mut rng, leaf_count);
    b.add_extra_arcs(&mut rng, extra_arcs);
    b.finish(&mut rng)
}

pub fn generate_random(leaf_count: usize, extra_arcs: usize, seed: u64) -> PhyloNetwork {
    generate_random_planted(leaf_count, extra_arcs, seed).0
}

/// A random network with a W-fence of `2 * half_len` arcs grafted onto one of
/// its leaves, so that it is not tree-based.
///
/// The fence is `v0 -> r1 <- t1 -> r2 <- … -> r_L <- vE`, where `v0` and `vE`
/// are reticulations of a crown above it and each `t_i` hangs off a spine.
pub fn generate_non_tree_based(
    leaf_count: usize,
    extra_arcs: usize,
    half_len: usize,
    seed: u64,
) -> PhyloNetwork {
    assert!(leaf_count >= 2 && half_len >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = Builder::random_tree(&mut rng, leaf_count);
    b.add_extra_arcs(&mut rng, extra_arcs);

    let leaves: Vec<usize> = (0..b.labels.len())
        .filter(|&v| !b.arcs.iter().any(|&(t, _)| t == v))
        .collect();
    let g = leaves[rng.gen_range(0..leaves.len())];
    let fresh = |b: &mut Builder, name: &str| b.vertex(format!("w{}_{name}", b.labels.len()));

    let p = fresh(&mut b, "p");
    let (a, c) = (fresh(&mut b, "a"), fresh(&mut b, "b"));
    let (v0, ve) = (fresh(&mut b, "v0"), fresh(&mut b, "vE"));
    b.arc(g, p, false);
    b.arc(p, a, false);
    b.arc(p, c, false);
    b.arc(a, v0, false);
    b.arc(a, ve, false);
    b.arc(c, v0, false);
    b.arc(c, ve, false);

    let rets: Vec<usize> = (0..half_len).map(|_| fresh(&mut b, "r")).collect();
    for &r in &rets {
        let y = fresh(&mut b, "y");
        b.arc(r, y, false);
    }
    b.arc(v0, rets[0], false);
    b.arc(ve, rets[half_len - 1], false);

    let mut spine_parent = g;
    for i in 0..half_len - 1 {
        let s = fresh(&mut b, "s");
        let t = fresh(&mut b, "t");
        b.arc(spine_parent, s, false);
        b.arc(s, t, false);
        b.arc(t, rets[i], false);
        b.arc(t, rets[i + 1], false);
        spine_parent = s;
    }
    let z = fresh(&mut b, "z");
    b.arc(spine_parent, z, false);

    b.finish(&mut rng).0
}
