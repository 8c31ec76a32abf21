//! Kernel-vs-oracle sweeps: the executable proof that the closed-form
//! counting kernels implement the enumeration definitions.

use rayon::prelude::*;

use crate::distance::{DistanceFunction, DistanceKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, RandomSeed};
use crate::interaction::{
    banzhaf_weights, semivalue_closeness_all_pairs, shapley_closeness_all_pairs, shapley_weights,
};
use crate::neighborhood::build_neighborhood_table;
use crate::oracle::{
    brute_force_semivalue_interaction, brute_force_shapley_interaction, enumerate_connected_graphs,
    sample_connected_graphs, ClosenessGame, KDegreeGame, DEFAULT_ENUMERATION_BOUND,
};

pub const SWEEP_TOLERANCE: f64 = 1e-9;
/// Node counts above the exhaustive-enumeration limit get this many sampled
/// connected graphs instead.
pub const SAMPLES_PER_LARGE_N: usize = 150;

#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub graphs_checked: usize,
    pub comparisons: u64,
    pub max_abs_error: f64,
    pub first_counterexample: Option<String>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.first_counterexample.is_none()
    }

    fn absorb(&mut self, other: SweepReport) {
        self.graphs_checked += other.graphs_checked;
        self.comparisons += other.comparisons;
        if other.max_abs_error > self.max_abs_error {
            self.max_abs_error = other.max_abs_error;
        }
        if self.first_counterexample.is_none() {
            self.first_counterexample = other.first_counterexample;
        }
    }
}

fn check_graph(graph: &Graph, k_list: &[f64]) -> Result<SweepReport> {
    let n = graph.node_count();
    let mut report = SweepReport { graphs_checked: 1, ..Default::default() };
    let shapley_w = shapley_weights(n)?;
    let banzhaf_w = banzhaf_weights(n)?;
    let record = |context: String, fast: f64, reference: f64, report: &mut SweepReport| {
        let err = (fast - reference).abs();
        report.comparisons += 1;
        if err > report.max_abs_error {
            report.max_abs_error = err;
        }
        if err > SWEEP_TOLERANCE && report.first_counterexample.is_none() {
            report.first_counterexample = Some(format!(
                "{context}: fast {fast} vs oracle {reference} (graph: {})",
                graph.to_edge_list_string().replace('\n', "; ")
            ));
        }
    };
    for &k in k_list {
        let table = build_neighborhood_table(graph, k)?;
        for kind in DistanceKind::ALL {
            let f = DistanceFunction::new(kind, k)?;
            let game = ClosenessGame::new(graph, f)?;
            let fast_shapley = shapley_closeness_all_pairs(&table, f)?;
            let fast_semivalue_s = semivalue_closeness_all_pairs(&table, f, &shapley_w)?;
            let fast_semivalue_b = semivalue_closeness_all_pairs(&table, f, &banzhaf_w)?;
            let k_degree_game =
                if kind == DistanceKind::Indicator { Some(KDegreeGame::new(graph, k)?) } else { None };
            for s in 0..n as u32 {
                for t in s + 1..n as u32 {
                    let oracle_shapley = brute_force_shapley_interaction(&game, s, t)?;
                    record(
                        format!("shapley f={kind} k={k} pair=({s},{t})"),
                        fast_shapley.get(s, t),
                        -oracle_shapley,
                        &mut report,
                    );
                    let oracle_sv_s = brute_force_semivalue_interaction(&game, s, t, &shapley_w)?;
                    record(
                        format!("semivalue(shapley) f={kind} k={k} pair=({s},{t})"),
                        fast_semivalue_s.get(s, t),
                        -oracle_sv_s,
                        &mut report,
                    );
                    let oracle_sv_b = brute_force_semivalue_interaction(&game, s, t, &banzhaf_w)?;
                    record(
                        format!("semivalue(banzhaf) f={kind} k={k} pair=({s},{t})"),
                        fast_semivalue_b.get(s, t),
                        -oracle_sv_b,
                        &mut report,
                    );
                    if let Some(kd) = &k_degree_game {
                        let oracle_kd = brute_force_shapley_interaction(kd, s, t)?;
                        record(
                            format!("k-degree k={k} pair=({s},{t})"),
                            fast_shapley.get(s, t),
                            -oracle_kd,
                            &mut report,
                        );
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Checks every pair of every connected graph up to `max_n` nodes against the
/// enumeration oracles: exhaustively for sizes the labeled enumeration can
/// cover (<= 6 nodes), on deterministic random samples above that.
pub fn verify_kernels(max_n: usize, k_list: &[f64]) -> Result<SweepReport> {
    if max_n < 2 || max_n > DEFAULT_ENUMERATION_BOUND {
        return Err(Error::EnumerationBound { nodes: max_n, bound: DEFAULT_ENUMERATION_BOUND });
    }
    let mut total = SweepReport::default();
    for n in 2..=max_n {
        let graphs = if n <= 6 {
            enumerate_connected_graphs(n)?
        } else {
            sample_connected_graphs(n, SAMPLES_PER_LARGE_N, RandomSeed::new(0xC0FFEE + n as u64))
        };
        let partial = graphs
            .par_iter()
            .map(|g| check_graph(g, k_list))
            .try_reduce(SweepReport::default, |mut a, b| {
                a.absorb(b);
                Ok(a)
            })?;
        total.absorb(partial);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_sweep_passes() {
        let report = verify_kernels(4, &[1.0, 2.0]).unwrap();
        assert!(report.passed(), "{:?}", report.first_counterexample);
        assert_eq!(report.graphs_checked, 1 + 4 + 38);
        assert!(report.max_abs_error < SWEEP_TOLERANCE);
    }

    #[test]
    fn bound_is_enforced() {
        assert!(verify_kernels(12, &[1.0]).is_err());
    }
}
