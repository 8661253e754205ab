//! Shared-bin histograms of log likelihood-ratio draws.

use modelchoice_core::stats::quantile_sorted;
use serde::Serialize;

pub const BINS: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramData {
    pub construction: String,
    /// `BINS + 1` strictly increasing edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
}

/// Histograms of each sample over one set of equal-width bins spanning the
/// pooled 0.1%–99.9% quantiles. Values outside the range land in the end bins.
pub fn shared_histograms(samples: &[(&str, &[f64])]) -> Vec<HistogramData> {
    let mut pooled: Vec<f64> = samples.iter().flat_map(|(_, s)| s.iter().copied()).filter(|x| x.is_finite()).collect();
    pooled.sort_by(f64::total_cmp);
    let (mut lo, mut hi) = if pooled.is_empty() {
        (0.0, 0.0)
    } else {
        (quantile_sorted(&pooled, 0.001), quantile_sorted(&pooled, 0.999))
    };
    if !(hi > lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    let width = (hi - lo) / BINS as f64;
    let mut edges: Vec<f64> = (0..BINS).map(|i| lo + width * i as f64).collect();
    edges.push(hi);
    samples
        .iter()
        .map(|(label, values)| {
            let mut counts = vec![0u64; BINS];
            for &x in *values {
                let bin = if x.is_nan() {
                    continue;
                } else if x <= lo {
                    0
                } else {
                    (((x - lo) / width) as usize).min(BINS - 1)
                };
                counts[bin] += 1;
            }
            let total = counts.iter().sum();
            HistogramData { construction: label.to_string(), edges: edges.clone(), counts, total }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_sum_and_edges_increase() {
        let a: Vec<f64> = (0..1000).map(|i| (i as f64).sin() * 10.0).collect();
        let b: Vec<f64> = (0..500).map(|i| i as f64 * 0.1 - 100.0).collect();
        let h = shared_histograms(&[("product", &a), ("joint", &b)]);
        assert_eq!(h[0].total, 1000);
        assert_eq!(h[1].total, 500);
        assert_eq!(h[0].counts.iter().sum::<u64>(), 1000);
        assert_eq!(h[0].edges, h[1].edges);
        assert_eq!(h[0].edges.len(), BINS + 1);
        assert!(h[0].edges.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn constant_sample_gets_a_unit_range() {
        let a = [2.0; 10];
        let h = shared_histograms(&[("x", &a)]);
        assert_eq!(h[0].total, 10);
        assert!((h[0].edges[BINS] - h[0].edges[0] - 1.0).abs() < 1e-12);
    }
}
