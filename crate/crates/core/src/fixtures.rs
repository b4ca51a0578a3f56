//! Hand-built networks with known rankings.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::network::{PhyloNetwork, RawNetwork};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Three chained 4-arc crowns between forced arcs.
///
/// Relative to its best vector, each crown's second vector has likelihood
/// 1/4, 1/16 and 1/2 respectively, which makes the eight support trees come
/// out in the order
/// `(111) (112) (211) (212) (121) (122) (221) (222)` on the crown coordinates.
/// All other trails have a single admissible vector.
pub fn three_crowns_network() -> PhyloNetwork {
    let forced = q(3, 4);
    // second-vector arc weight per crown: ratio = w^2
    let crowns = [
        ("1", q(1, 2), q(1, 2)),
        ("2", q(1, 4), q(1, 4)),
        ("3", q(1, 2), q(1, 1)),
    ];
    let mut raw = RawNetwork::new();
    raw.add_arc("r", "a1", forced.clone());
    raw.add_arc("r", "b1", forced.clone());
    for (i, (n, w2, w4)) in crowns.iter().enumerate() {
        let (a, b, c, d) = (
            alloc::format!("a{n}"),
            alloc::format!("b{n}"),
            alloc::format!("c{n}"),
            alloc::format!("d{n}"),
        );
        raw.add_arc(&a, &c, q(1, 1));
        raw.add_arc(&b, &c, w2.clone());
        raw.add_arc(&b, &d, q(1, 1));
        raw.add_arc(&a, &d, w4.clone());
        if i + 1 < crowns.len() {
            let next = crowns[i + 1].0;
            raw.add_arc(&c, &alloc::format!("a{next}"), forced.clone());
            raw.add_arc(&d, &alloc::format!("b{next}"), forced.clone());
        } else {
            raw.add_arc(&c, "x", forced.clone());
            raw.add_arc(&d, "y", forced.clone());
        }
    }
    PhyloNetwork::try_from(raw).expect("fixture is a valid network")
}

/// `rho -> a -> {x, y}`: the smallest network with a tree vertex.
pub fn cherry_with_pendant_root() -> PhyloNetwork {
    let mut raw = RawNetwork::new();
    raw.add_arc("rho", "a", q(1, 1));
    raw.add_arc("a", "x", q(1, 1));
    raw.add_arc("a", "y", q(1, 1));
    PhyloNetwork::try_from(raw).expect("valid")
}

/// A network whose only nontrivial trail is the W-fence
/// `v0 -> v1 <- t -> v3 <- v4`; it has no support tree.
pub fn w_fence_network() -> PhyloNetwork {
    let mut raw = RawNetwork::new();
    for (t, h) in [
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
    ] {
        raw.add_arc(t, h, q(1, 2));
    }
    PhyloNetwork::try_from(raw).expect("valid")
}
