//! Admissible vectors of a single trail and their local ranking.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::network::ArcId;
use crate::rational::mul_reduced;
use crate::zigzag::{TrailKind, ZigzagTrail};

/// 0/1 selection over a trail's arcs, aligned with the trail orientation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdmissibleVector(pub Vec<bool>);

impl AdmissibleVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// `1 (01)^p (10)^q 1`, the M-fence vector with `p` leading `01` pairs.
    pub fn m_fence(m: usize, p: usize) -> Self {
        let pairs = (m - 2) / 2;
        assert!(p <= pairs);
        let mut bits = Vec::with_capacity(m);
        bits.push(true);
        for i in 0..pairs {
            if i < p {
                bits.extend([false, true]);
            } else {
                bits.extend([true, false]);
            }
        }
        bits.push(true);
        AdmissibleVector(bits)
    }

    /// `1 (01)^((m-1)/2)`.
    pub fn n_fence(m: usize) -> Self {
        AdmissibleVector((0..m).map(|i| i % 2 == 0).collect())
    }

    /// `(10)^(m/2)` when `leading` is true, `(01)^(m/2)` otherwise.
    pub fn crown(m: usize, leading: bool) -> Self {
        AdmissibleVector((0..m).map(|i| (i % 2 == 0) == leading).collect())
    }
}

impl fmt::Display for AdmissibleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalEntry {
    pub vector: AdmissibleVector,
    /// Product of the weights of the selected arcs.
    pub contribution: BigRational,
}

/// `(Ω_i, ≤*)`: admissible vectors by decreasing contribution, ties by
/// ascending lexicographic order of the vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRanking {
    pub trail_index: usize,
    pub kind: TrailKind,
    pub entries: Vec<LocalEntry>,
}

impl LocalRanking {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entry with 1-based local rank `rank`.
    pub fn entry(&self, rank: u32) -> &LocalEntry {
        &self.entries[rank as usize - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LocalRankingError {
    #[error("trail {trail} is a W-fence: no admissible arc-set")]
    NoAdmissibleArcSet { trail: usize },
    #[error("vector of length {got} does not fit trail {trail} with {expected} arcs")]
    LengthMismatch {
        trail: usize,
        expected: usize,
        got: usize,
    },
}

pub fn local_family_size(trail: &ZigzagTrail) -> Result<usize, LocalRankingError> {
    let m = trail.len();
    match trail.kind {
        TrailKind::Crown => Ok(2),
        TrailKind::NFence => Ok(1),
        TrailKind::MFence => Ok(m / 2),
        TrailKind::WFence => Err(LocalRankingError::NoAdmissibleArcSet { trail: trail.index }),
    }
}

/// `(contribution desc, vector asc)`.
pub(crate) fn local_order(a: &LocalEntry, b: &LocalEntry) -> Ordering {
    b.contribution
        .cmp(&a.contribution)
        .then_with(|| a.vector.cmp(&b.vector))
}

/// Builds `(Ω_i, ≤*)` for one trail. `weights` is indexed by arc.
///
/// M-fence contributions use the one-swap recurrence: `x_{p+1}` drops arc
/// `a_{2p}` and takes `a_{2p+1}` (1-based), so its contribution is the
/// previous one times `w(a_{2p+1}) / w(a_{2p})`.
pub fn build_local_ranking(
    trail: &ZigzagTrail,
    weights: &[BigRational],
) -> Result<LocalRanking, LocalRankingError> {
    let m = trail.len();
    let w = |pos: usize| &weights[trail.arcs[pos].0];
    let contribution = |v: &AdmissibleVector| {
        let mut acc = BigRational::one();
        for (pos, &b) in v.0.iter().enumerate() {
            if b {
                acc = mul_reduced(&acc, w(pos));
            }
        }
        acc
    };

    let mut entries = match trail.kind {
        TrailKind::WFence => {
            return Err(LocalRankingError::NoAdmissibleArcSet { trail: trail.index })
        }
        TrailKind::NFence => {
            let vector = AdmissibleVector::n_fence(m);
            let contribution = contribution(&vector);
            alloc::vec![LocalEntry {
                vector,
                contribution
            }]
        }
        TrailKind::Crown => [true, false]
            .into_iter()
            .map(|leading| {
                let vector = AdmissibleVector::crown(m, leading);
                let contribution = contribution(&vector);
                LocalEntry {
                    vector,
                    contribution,
                }
            })
            .collect(),
        TrailKind::MFence => {
            let count = m / 2;
            let mut out = Vec::with_capacity(count);
            let first = AdmissibleVector::m_fence(m, 0);
            let mut current = contribution(&first);
            out.push(LocalEntry {
                vector: first,
                contribution: current.clone(),
            });
            for p in 1..count {
                // 0-based positions of a_{2p} and a_{2p+1}
                let ratio = w(2 * p) / w(2 * p - 1);
                current = mul_reduced(&current, &ratio);
                out.push(LocalEntry {
                    vector: AdmissibleVector::m_fence(m, p),
                    contribution: current.clone(),
                });
            }
            out
        }
    };
    entries.sort_by(local_order);
    Ok(LocalRanking {
        trail_index: trail.index,
        kind: trail.kind,
        entries,
    })
}

/// The arcs selected by `v`.
pub fn vector_to_arcs(
    trail: &ZigzagTrail,
    v: &AdmissibleVector,
) -> Result<Vec<ArcId>, LocalRankingError> {
    if v.len() != trail.len() {
        return Err(LocalRankingError::LengthMismatch {
            trail: trail.index,
            expected: trail.len(),
            got: v.len(),
        });
    }
    Ok(trail
        .arcs
        .iter()
        .zip(&v.0)
        .filter(|(_, &b)| b)
        .map(|(&a, _)| a)
        .collect())
}
