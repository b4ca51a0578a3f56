//! Wall-clock delay between consecutive trees of a top-k ranking.

use std::io::{self, Write};
use std::time::Instant;

use suptree_core::{generate_random, PhyloNetwork, RankingModel};

use crate::output::FORMAT_VERSION;

/// Timings for one ranking run.
#[derive(Clone, Debug)]
pub struct DelayProfile {
    pub arc_count: usize,
    pub k: u64,
    pub repetition: usize,
    pub seed: u64,
    pub preprocessing_ns: u64,
    /// `delays_ns[j - 1]` is the time spent producing the `j`-th tree.
    pub delays_ns: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("found no network with {arcs} arcs and at least {k} support trees")]
pub struct TooFewTrees {
    pub arcs: usize,
    pub k: u64,
}

/// A tree-based network with exactly `arcs` arcs and at least `k` support
/// trees. About a tenth of the arcs come from reticulation insertions.
pub fn network_of_size(arcs: usize, k: u64, seed: u64) -> Result<PhyloNetwork, TooFewTrees> {
    assert!(arcs >= 4, "profiled networks need at least four arcs");
    // arcs = 2 * leaves - 2 + 3 * extra
    let mut extra = arcs / 10;
    if (arcs - 3 * extra) % 2 == 1 {
        extra = extra.saturating_sub(1);
    }
    if (arcs - 3 * extra) % 2 == 1 {
        extra += 1;
    }
    assert!(3 * extra < arcs, "no network with {arcs} arcs");
    let leaves = (arcs - 3 * extra + 2) / 2;
    let mut s = seed;
    for _ in 0..64 {
        let n = generate_random(leaves, extra, s);
        if RankingModel::new(&n).is_ok_and(|m| m.count_at_least(k)) {
            return Ok(n);
        }
        s = s.wrapping_add(0x9e37_79b9_7f4a_7c15);
    }
    Err(TooFewTrees { arcs, k })
}

pub fn profile_network(network: &PhyloNetwork, k: u64) -> DelayProfile {
    let start = Instant::now();
    let model = RankingModel::new(network).expect("profiled network must be tree-based");
    let mut ranking = model.into_enumerator(Some(k));
    let preprocessing_ns = elapsed_ns(start);
    let mut delays_ns = Vec::with_capacity(k as usize);
    loop {
        let t = Instant::now();
        let Some(tree) = ranking.next() else { break };
        delays_ns.push(elapsed_ns(t));
        std::hint::black_box(&tree);
    }
    DelayProfile {
        arc_count: network.arc_count(),
        k,
        repetition: 0,
        seed: 0,
        preprocessing_ns,
        delays_ns,
    }
}

fn elapsed_ns(t: Instant) -> u64 {
    (t.elapsed().as_nanos() as u64).max(1)
}

/// Runs every size `repetitions` times, sequentially. Repetition `r` of a size
/// uses a fresh network drawn from `seed + r`.
pub fn profile_delay(
    sizes: &[usize],
    k: u64,
    repetitions: usize,
    seed: u64,
) -> Result<Vec<DelayProfile>, TooFewTrees> {
    let mut out = Vec::new();
    for &size in sizes {
        for r in 0..repetitions {
            let s = seed.wrapping_add(r as u64);
            let n = network_of_size(size, k, s)?;
            let mut p = profile_network(&n, k);
            p.repetition = r;
            p.seed = s;
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SizeSummary {
    pub arc_count: usize,
    pub median_ns: f64,
    /// Median over `j` in `[2, k/10]`.
    pub early_median_ns: f64,
    /// Median over `j` in `[9k/10, k]`.
    pub late_median_ns: f64,
    pub preprocessing_median_ns: f64,
}

impl SizeSummary {
    pub fn late_to_early(&self) -> f64 {
        self.late_median_ns / self.early_median_ns
    }
}

#[derive(Clone, Debug)]
pub struct ProfileSummary {
    pub sizes: Vec<SizeSummary>,
    /// Least-squares slope of median delay against arc count.
    pub slope_ns_per_arc: f64,
    /// `2^b` where `b` is the log-log slope of median delay against arc count.
    pub growth_per_doubling: f64,
}

pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty());
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

fn slope(points: &[(f64, f64)]) -> f64 {
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

pub fn summarize(profiles: &[DelayProfile]) -> ProfileSummary {
    let mut sizes: Vec<usize> = profiles.iter().map(|p| p.arc_count).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let rows: Vec<SizeSummary> = sizes
        .iter()
        .map(|&size| {
            let runs: Vec<&DelayProfile> =
                profiles.iter().filter(|p| p.arc_count == size).collect();
            let window = |lo: u64, hi: u64| {
                let mut v: Vec<f64> = runs
                    .iter()
                    .flat_map(|p| p.delays_ns.iter().enumerate())
                    .filter(|(i, _)| (lo..=hi).contains(&(*i as u64 + 1)))
                    .map(|(_, &d)| d as f64)
                    .collect();
                if v.is_empty() {
                    f64::NAN
                } else {
                    median(&mut v)
                }
            };
            let k = runs
                .iter()
                .map(|p| p.delays_ns.len() as u64)
                .max()
                .unwrap_or(0);
            let mut pre: Vec<f64> = runs.iter().map(|p| p.preprocessing_ns as f64).collect();
            SizeSummary {
                arc_count: size,
                median_ns: window(1, k),
                early_median_ns: window(2, (k / 10).max(2)),
                late_median_ns: window(k - k / 10, k),
                preprocessing_median_ns: median(&mut pre),
            }
        })
        .collect();
    let linear: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.arc_count as f64, r.median_ns))
        .collect();
    let loglog: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.arc_count as f64).log2(), r.median_ns.log2()))
        .collect();
    ProfileSummary {
        slope_ns_per_arc: slope(&linear),
        growth_per_doubling: slope(&loglog).exp2(),
        sizes: rows,
    }
}

pub fn write_csv(out: &mut dyn Write, profiles: &[DelayProfile]) -> io::Result<()> {
    writeln!(out, "# format_version={FORMAT_VERSION}")?;
    writeln!(out, "arc_count,repetition,seed,j,delay_ns")?;
    for p in profiles {
        for (i, d) in p.delays_ns.iter().enumerate() {
            writeln!(
                out,
                "{},{},{},{},{}",
                p.arc_count,
                p.repetition,
                p.seed,
                i + 1,
                d
            )?;
        }
    }
    out.flush()
}

/// The summary as `#`-prefixed lines, so it can trail the CSV.
pub fn write_summary(out: &mut dyn Write, s: &ProfileSummary) -> io::Result<()> {
    writeln!(
        out,
        "# arc_count,median_ns,early_median_ns,late_median_ns,late_to_early,preprocessing_ns"
    )?;
    for r in &s.sizes {
        writeln!(
            out,
            "# {},{:.0},{:.0},{:.0},{:.3},{:.0}",
            r.arc_count,
            r.median_ns,
            r.early_median_ns,
            r.late_median_ns,
            r.late_to_early(),
            r.preprocessing_median_ns
        )?;
    }
    writeln!(out, "# slope_ns_per_arc={:.4}", s.slope_ns_per_arc)?;
    writeln!(out, "# growth_per_doubling={:.4}", s.growth_per_doubling)?;
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_are_exact() {
        for size in [20, 21, 50, 199, 200, 401] {
            assert_eq!(network_of_size(size, 1, 1).unwrap().arc_count(), size);
        }
        assert_eq!(
            network_of_size(6, 1000, 1).unwrap_err(),
            TooFewTrees { arcs: 6, k: 1000 }
        );
    }

    #[test]
    fn one_sample_per_tree() {
        let p = profile_delay(&[40], 1, 2, 3).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p
            .iter()
            .all(|p| p.delays_ns.len() == 1 && p.delays_ns[0] > 0));
        let p = profile_delay(&[60], 25, 1, 3).unwrap();
        assert_eq!(p[0].delays_ns.len(), 25);
    }

    #[test]
    fn summary_of_linear_data() {
        let fake = |size: usize| DelayProfile {
            arc_count: size,
            k: 10,
            repetition: 0,
            seed: 0,
            preprocessing_ns: 1,
            delays_ns: vec![size as u64 * 10; 10],
        };
        let s = summarize(&[fake(100), fake(200), fake(400)]);
        assert!((s.growth_per_doubling - 2.0).abs() < 1e-9);
        assert!((s.slope_ns_per_arc - 10.0).abs() < 1e-9);
        assert_eq!(s.sizes[1].late_to_early(), 1.0);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
