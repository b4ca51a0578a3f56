//! Decomposition of a network into maximal zig-zag trails.
//!
//! Two arcs are *head-partners* when they enter the same in-degree-2 vertex
//! and *tail-partners* when they leave the same out-degree-2 vertex. Every arc
//! has at most one partner of each kind, so the partner relation is a disjoint
//! union of alternating paths and alternating cycles. Those components are
//! exactly the maximal zig-zag trails.
//!
//! Orientation conventions (they fix the coordinates of admissible vectors and
//! therefore every lexicographic tie-break):
//!
//! * crown: start at the smallest arc, continue through its head-partner;
//! * N-fence: start at the end whose outer vertex is a tail, so the first two
//!   arcs share a head;
//! * M-fence and W-fence: start at the terminal arc with the smaller index.
//!
//! Trails are listed by their smallest arc index.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::network::{ArcId, PhyloNetwork};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TrailKind {
    Crown,
    MFence,
    NFence,
    WFence,
}

impl TrailKind {
    pub fn name(self) -> &'static str {
        match self {
            TrailKind::Crown => "Crown",
            TrailKind::MFence => "MFence",
            TrailKind::NFence => "NFence",
            TrailKind::WFence => "WFence",
        }
    }
}

impl fmt::Display for TrailKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZigzagTrail {
    pub index: usize,
    pub arcs: Vec<ArcId>,
    pub kind: TrailKind,
}

impl ZigzagTrail {
    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    trails: Vec<ZigzagTrail>,
    /// `(trail index, position in trail)` for every arc.
    location: Vec<(usize, usize)>,
}

impl Decomposition {
    pub fn trails(&self) -> &[ZigzagTrail] {
        &self.trails
    }

    pub fn len(&self) -> usize {
        self.trails.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trails.is_empty()
    }

    pub fn trail(&self, i: usize) -> &ZigzagTrail {
        &self.trails[i]
    }

    /// The trail containing `a` and the position of `a` in it.
    pub fn locate(&self, a: ArcId) -> (usize, usize) {
        self.location[a.0]
    }

    pub fn w_fences(&self) -> impl Iterator<Item = &ZigzagTrail> {
        self.trails.iter().filter(|t| t.kind == TrailKind::WFence)
    }

    pub fn is_tree_based(&self) -> bool {
        self.w_fences().next().is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Link {
    Head,
    Tail,
}

fn link(endpoints: &[(usize, usize)], a: ArcId, b: ArcId) -> Option<Link> {
    let (ta, ha) = endpoints[a.0];
    let (tb, hb) = endpoints[b.0];
    if ha == hb {
        Some(Link::Head)
    } else if ta == tb {
        Some(Link::Tail)
    } else {
        None
    }
}

/// Kind of an oriented maximal alternating trail.
///
/// `endpoints[a]` is the `(tail, head)` pair of arc `a`.
pub fn classify(endpoints: &[(usize, usize)], arcs: &[ArcId]) -> TrailKind {
    let m = arcs.len();
    debug_assert!(m >= 1);
    debug_assert!(arcs.windows(3).all(|w| {
        let (x, y) = (link(endpoints, w[0], w[1]), link(endpoints, w[1], w[2]));
        x.is_some() && y.is_some() && x != y
    }));
    if m >= 4 && m.is_multiple_of(2) {
        let first = link(endpoints, arcs[0], arcs[1]);
        let last = link(endpoints, arcs[m - 2], arcs[m - 1]);
        let closing = link(endpoints, arcs[m - 1], arcs[0]);
        if closing.is_some() && closing != first && closing != last {
            return TrailKind::Crown;
        }
    }
    if m % 2 == 1 {
        TrailKind::NFence
    } else if link(endpoints, arcs[0], arcs[1]) == Some(Link::Tail) {
        TrailKind::MFence
    } else {
        TrailKind::WFence
    }
}

/// Decomposes any simple digraph whose vertices have in- and out-degree at
/// most two. Linear in the number of arcs.
pub fn decompose_arcs(vertex_count: usize, endpoints: &[(usize, usize)]) -> Decomposition {
    const NONE: usize = usize::MAX;
    let arc_count = endpoints.len();
    let mut first_in = vec![NONE; vertex_count];
    let mut first_out = vec![NONE; vertex_count];
    let mut head_partner = vec![NONE; arc_count];
    let mut tail_partner = vec![NONE; arc_count];
    for (a, &(t, h)) in endpoints.iter().enumerate() {
        if first_in[h] == NONE {
            first_in[h] = a;
        } else {
            head_partner[a] = first_in[h];
            head_partner[first_in[h]] = a;
        }
        if first_out[t] == NONE {
            first_out[t] = a;
        } else {
            tail_partner[a] = first_out[t];
            tail_partner[first_out[t]] = a;
        }
    }
    let partner = |a: usize, l: Link| match l {
        Link::Head => head_partner[a],
        Link::Tail => tail_partner[a],
    };
    let flip = |l: Link| match l {
        Link::Head => Link::Tail,
        Link::Tail => Link::Head,
    };

    let mut visited = vec![false; arc_count];
    let mut location = vec![(0, 0); arc_count];
    let mut trails = Vec::new();

    for start in 0..arc_count {
        if visited[start] {
            continue;
        }
        // walk away from `start` through its head-partner first
        let mut forward = Vec::new();
        let mut closed = false;
        let (mut cur, mut via) = (start, Link::Head);
        loop {
            let next = partner(cur, via);
            if next == NONE {
                break;
            }
            if next == start {
                closed = true;
                break;
            }
            forward.push(next);
            cur = next;
            via = flip(via);
        }
        let seq: Vec<usize> = if closed {
            // `start` is the smallest arc of the cycle and `forward` already
            // leaves it through its head-partner
            core::iter::once(start).chain(forward).collect()
        } else {
            let mut backward = Vec::new();
            let (mut cur, mut via) = (start, Link::Tail);
            loop {
                let next = partner(cur, via);
                if next == NONE {
                    break;
                }
                backward.push(next);
                cur = next;
                via = flip(via);
            }
            backward.reverse();
            backward.push(start);
            backward.extend(forward);
            backward
        };
        let mut arcs: Vec<ArcId> = seq.into_iter().map(ArcId).collect();
        if !closed {
            orient_fence(endpoints, &mut arcs);
        }
        let kind = classify(endpoints, &arcs);
        debug_assert_eq!(closed, kind == TrailKind::Crown);
        let index = trails.len();
        for (pos, &a) in arcs.iter().enumerate() {
            visited[a.0] = true;
            location[a.0] = (index, pos);
        }
        trails.push(ZigzagTrail { index, arcs, kind });
    }
    Decomposition { trails, location }
}

fn orient_fence(endpoints: &[(usize, usize)], arcs: &mut [ArcId]) {
    let m = arcs.len();
    if m < 2 {
        return;
    }
    let reverse = if m % 2 == 1 {
        // N-fence: the first link must be a shared head
        link(endpoints, arcs[0], arcs[1]) != Some(Link::Head)
    } else {
        arcs[m - 1] < arcs[0]
    };
    if reverse {
        arcs.reverse();
    }
}

pub fn decompose(network: &PhyloNetwork) -> Decomposition {
    decompose_arcs(network.vertex_count(), &network.endpoints())
}

/// True iff no maximal zig-zag trail of `network` is a W-fence.
pub fn is_tree_based(network: &PhyloNetwork) -> bool {
    decompose(network).is_tree_based()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::RawNetwork;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn net(arcs: &[(&str, &str)]) -> PhyloNetwork {
        let mut r = RawNetwork::new();
        for (t, h) in arcs {
            r.add_arc(t, h, BigRational::from_integer(BigInt::from(1)));
        }
        PhyloNetwork::try_from(r).unwrap()
    }

    fn ids(v: &[usize]) -> Vec<ArcId> {
        v.iter().copied().map(ArcId).collect()
    }

    #[test]
    fn cherry() {
        let n = net(&[("rho", "a"), ("a", "x"), ("a", "y")]);
        let d = decompose(&n);
        assert_eq!(d.len(), 2);
        assert_eq!(d.trail(0).arcs, ids(&[0]));
        assert_eq!(d.trail(0).kind, TrailKind::NFence);
        assert_eq!(d.trail(1).arcs, ids(&[1, 2]));
        assert_eq!(d.trail(1).kind, TrailKind::MFence);
        assert!(d.is_tree_based());
    }

    #[test]
    fn four_arc_crown() {
        // u1->v1, u2->v1, u2->v2, u1->v2
        let n = net(&[
            ("r", "u1"),
            ("r", "u2"),
            ("u1", "v1"),
            ("u2", "v2"),
            ("u2", "v1"),
            ("u1", "v2"),
            ("v1", "x"),
            ("v2", "y"),
        ]);
        let d = decompose(&n);
        let crowns: Vec<_> = d
            .trails()
            .iter()
            .filter(|t| t.kind == TrailKind::Crown)
            .collect();
        assert_eq!(crowns.len(), 1);
        // smallest arc 2 (u1->v1), then its head-partner 4 (u2->v1), 3, 5
        assert_eq!(crowns[0].arcs, ids(&[2, 4, 3, 5]));
    }

    #[test]
    fn classify_patterns() {
        // v0..v4 as 0..4
        let m = [(1, 0), (1, 2)];
        assert_eq!(classify(&m, &ids(&[0, 1])), TrailKind::MFence);
        let n = [(0, 1), (2, 1), (2, 3)];
        assert_eq!(classify(&n, &ids(&[0, 1, 2])), TrailKind::NFence);
        let w = [(0, 1), (2, 1), (2, 3), (4, 3)];
        assert_eq!(classify(&w, &ids(&[0, 1, 2, 3])), TrailKind::WFence);
    }

    #[test]
    fn n_fence_starts_at_tail_end() {
        let e = [(2, 3), (2, 1), (0, 1)];
        let d = decompose_arcs(4, &e);
        assert_eq!(d.len(), 1);
        assert_eq!(d.trail(0).kind, TrailKind::NFence);
        assert_eq!(d.trail(0).arcs, ids(&[2, 1, 0]));
    }

    #[test]
    fn w_fence_network_is_not_tree_based() {
        let n = net(&[
            ("r", "p"),
            ("r", "t"),
            ("p", "a"),
            ("p", "b"),
            ("a", "v0"),
            ("a", "v4"),
            ("b", "v0"),
            ("b", "v4"),
            ("v0", "v1"),
            ("t", "v1"),
            ("t", "v3"),
            ("v4", "v3"),
            ("v1", "x"),
            ("v3", "y"),
        ]);
        let d = decompose(&n);
        let w: Vec<_> = d.w_fences().collect();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].arcs, ids(&[8, 9, 10, 11]));
        assert!(!is_tree_based(&n));
    }

    #[test]
    fn tree_is_tree_based() {
        let n = net(&[
            ("r", "a"),
            ("r", "b"),
            ("a", "x"),
            ("a", "y"),
            ("b", "z"),
            ("b", "w"),
        ]);
        assert!(is_tree_based(&n));
        let d = decompose(&n);
        assert!(d
            .trails()
            .iter()
            .all(|t| t.kind == TrailKind::MFence && t.len() == 2));
    }

    #[test]
    fn locate_round_trips() {
        let n = net(&[
            ("r", "a"),
            ("r", "b"),
            ("a", "h"),
            ("b", "h"),
            ("a", "x"),
            ("b", "y"),
            ("h", "z"),
        ]);
        let d = decompose(&n);
        for a in 0..n.arc_count() {
            let (t, p) = d.locate(ArcId(a));
            assert_eq!(d.trail(t).arcs[p], ArcId(a));
        }
    }
}
