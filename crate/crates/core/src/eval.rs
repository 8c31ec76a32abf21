//! The edge-removal evaluation protocol: candidate ranking, tie-aware AUC,
//! expected precision, and the multi-trial experiment runner.

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::baselines::{
    common_neighbors_scores, lrw_scores, shapley_k_degree_scores, srw_scores, NeighborhoodMode,
};
use crate::distance::{DistanceFunction, DistanceKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId, RandomSeed};
use crate::interaction::{
    banzhaf_weights, semivalue_closeness_all_pairs, shapley_closeness_all_pairs, shapley_weights,
};
use crate::neighborhood::build_neighborhood_table;
use crate::scores::PairScores;

pub type Pair = (NodeId, NodeId);

/// Candidate pairs ordered by descending score, absent sparse scores read as 0.
#[derive(Debug, Clone)]
pub struct Ranking {
    pub entries: Vec<(Pair, f64)>,
}

impl Ranking {
    pub fn new(scores: &PairScores, candidates: &[Pair]) -> Self {
        let mut entries: Vec<(Pair, f64)> =
            candidates.iter().map(|&(u, v)| ((u, v), scores.get(u, v))).collect();
        entries.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
        Ranking { entries }
    }

    /// Ranges of equal-score runs, in ranking order.
    pub fn tie_groups(&self) -> Vec<std::ops::Range<usize>> {
        let mut groups = Vec::new();
        let mut start = 0;
        for i in 1..=self.entries.len() {
            if i == self.entries.len() || self.entries[i].1 != self.entries[start].1 {
                groups.push(start..i);
                start = i;
            }
        }
        groups
    }
}

fn validate_classes(candidates: &[Pair], missing: &[Pair]) -> Result<()> {
    if missing.is_empty() {
        return Err(Error::InvalidParameter("no missing edges to rank".into()));
    }
    if candidates.len() <= missing.len() {
        return Err(Error::InvalidParameter("no non-missing candidates to rank against".into()));
    }
    let set: std::collections::HashSet<Pair> =
        candidates.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    for &(u, v) in missing {
        if !set.contains(&(u.min(v), u.max(v))) {
            return Err(Error::InvalidParameter(format!(
                "missing edge ({u},{v}) is not a candidate pair"
            )));
        }
    }
    Ok(())
}

/// Probability that a missing edge outranks a non-missing candidate, ties at
/// half credit: computed via midrank sums, which equals counting the pairwise
/// comparisons directly.
pub fn auc(scores: &PairScores, candidates: &[Pair], missing: &[Pair]) -> Result<f64> {
    validate_classes(candidates, missing)?;
    let missing_set: std::collections::HashSet<Pair> =
        missing.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut rows: Vec<(f64, bool)> = candidates
        .iter()
        .map(|&(u, v)| (scores.get(u, v), missing_set.contains(&(u.min(v), u.max(v)))))
        .collect();
    rows.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let m = missing_set.len() as f64;
    let l = rows.len() as f64 - m;
    let mut rank_sum = 0.0f64;
    let mut i = 0;
    while i < rows.len() {
        let mut j = i;
        while j < rows.len() && rows[j].0 == rows[i].0 {
            j += 1;
        }
        // ascending ranks i+1 ..= j share the midrank
        let midrank = (i + 1 + j) as f64 / 2.0;
        let missing_here = rows[i..j].iter().filter(|r| r.1).count() as f64;
        rank_sum += midrank * missing_here;
        i = j;
    }
    Ok((rank_sum - m * (m + 1.0) / 2.0) / (m * l))
}

/// Fraction of the top `p` candidates that are missing edges, in expectation
/// over uniformly random orderings within tie groups: a tie group straddling
/// the cutoff contributes (slots remaining) * (its missing fraction).
pub fn expected_precision(
    scores: &PairScores,
    candidates: &[Pair],
    missing: &[Pair],
    p: usize,
) -> Result<f64> {
    validate_classes(candidates, missing)?;
    if p == 0 || p > candidates.len() {
        return Err(Error::InvalidParameter(format!(
            "depth {p} out of range for {} candidates",
            candidates.len()
        )));
    }
    let missing_set: std::collections::HashSet<Pair> =
        missing.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let ranking = Ranking::new(scores, candidates);
    let mut remaining = p;
    let mut correct = 0.0f64;
    for group in ranking.tie_groups() {
        if remaining == 0 {
            break;
        }
        let size = group.len();
        let missing_here = ranking.entries[group]
            .iter()
            .filter(|&&((u, v), _)| missing_set.contains(&(u.min(v), u.max(v))))
            .count() as f64;
        if size <= remaining {
            correct += missing_here;
            remaining -= size;
        } else {
            correct += remaining as f64 * missing_here / size as f64;
            remaining = 0;
        }
    }
    Ok(correct / p as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    ShapleyCloseness,
    SemivalueCloseness,
    ShapleyDegree,
    CommonNeighbors,
    Lrw,
    Srw,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightFamily {
    Shapley,
    Banzhaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MethodSpec {
    pub kind: MethodKind,
    pub k: f64,
    /// Only meaningful for the closeness kernels.
    pub f_kind: DistanceKind,
    /// Only meaningful for the semivalue kernel.
    pub weights: WeightFamily,
    /// Only meaningful for common neighbors.
    pub cn_mode: NeighborhoodMode,
}

impl MethodSpec {
    pub fn new(kind: MethodKind, k: f64) -> Self {
        Self {
            kind,
            k,
            f_kind: DistanceKind::InverseSquare,
            weights: WeightFamily::Shapley,
            cn_mode: NeighborhoodMode::Inclusive,
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            MethodKind::ShapleyCloseness => format!("shapley-closeness/{}", self.f_kind),
            MethodKind::SemivalueCloseness => {
                let w = match self.weights {
                    WeightFamily::Shapley => "shapley",
                    WeightFamily::Banzhaf => "banzhaf",
                };
                format!("semivalue-closeness/{}/{w}", self.f_kind)
            }
            MethodKind::ShapleyDegree => "shapley-degree".into(),
            MethodKind::CommonNeighbors => "cn".into(),
            MethodKind::Lrw => "lrw".into(),
            MethodKind::Srw => "srw".into(),
        }
    }

}

/// Scores one method on an (observed) graph.
pub fn score_method(graph: &Graph, spec: &MethodSpec) -> Result<PairScores> {
    match spec.kind {
        MethodKind::Lrw => lrw_scores(graph, spec.k.round() as usize),
        MethodKind::Srw => srw_scores(graph, spec.k.round() as usize),
        _ => {
            let table = build_neighborhood_table(graph, spec.k)?;
            match spec.kind {
                MethodKind::ShapleyCloseness => {
                    let f = DistanceFunction::new(spec.f_kind, spec.k)?;
                    shapley_closeness_all_pairs(&table, f)
                }
                MethodKind::SemivalueCloseness => {
                    let f = DistanceFunction::new(spec.f_kind, spec.k)?;
                    let w = match spec.weights {
                        WeightFamily::Shapley => shapley_weights(graph.node_count())?,
                        WeightFamily::Banzhaf => banzhaf_weights(graph.node_count())?,
                    };
                    semivalue_closeness_all_pairs(&table, f, &w)
                }
                MethodKind::ShapleyDegree => shapley_k_degree_scores(&table),
                MethodKind::CommonNeighbors => {
                    common_neighbors_scores(&table, spec.k, spec.cn_mode)
                }
                MethodKind::Lrw | MethodKind::Srw => unreachable!(),
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentConfig {
    pub dataset: String,
    pub methods: Vec<MethodSpec>,
    pub removal_fraction: f64,
    pub trials: usize,
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn new(dataset: impl Into<String>, methods: Vec<MethodSpec>) -> Self {
        Self {
            dataset: dataset.into(),
            methods,
            removal_fraction: 0.3,
            trials: 1000,
            master_seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials < 1 {
            return Err(Error::InvalidParameter("need at least one trial".into()));
        }
        if !(self.removal_fraction > 0.0 && self.removal_fraction < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "removal fraction {} not in (0,1)",
                self.removal_fraction
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::InvalidParameter("no methods configured".into()));
        }
        Ok(())
    }
}

/// AUC and expected precision for every configured method, one edge removal.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialOutcome {
    pub trial_index: u32,
    /// (auc, precision) aligned with config.methods.
    pub metrics: Vec<(f64, f64)>,
}

pub fn run_trial(graph: &Graph, config: &ExperimentConfig, trial_index: u32) -> Result<TrialOutcome> {
    config.validate()?;
    let seed = RandomSeed::new(config.master_seed).stream(trial_index);
    let (observed, missing) = graph.remove_random_edges(config.removal_fraction, seed)?;
    let candidates: Vec<Pair> = observed.nonadjacent_pairs().collect();
    let p = missing.len();
    let mut metrics = Vec::with_capacity(config.methods.len());
    for spec in &config.methods {
        let scores = score_method(&observed, spec)?;
        let a = auc(&scores, &candidates, &missing)?;
        let prec = expected_precision(&scores, &candidates, &missing, p)?;
        metrics.push((a, prec));
    }
    Ok(TrialOutcome { trial_index, metrics })
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub method: String,
    pub k: f64,
    pub mean_auc_pct: f64,
    pub stddev_auc_pct: f64,
    pub mean_precision_pct: f64,
    pub stddev_precision_pct: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub dataset_checksum_sha256: String,
    pub code_version: String,
    pub rows: Vec<ReportRow>,
}

fn mean_and_stddev(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

pub fn dataset_checksum(graph: &Graph) -> String {
    let mut hasher = Sha256::new();
    hasher.update(graph.to_edge_list_string().as_bytes());
    format!("{:x}", hasher.finalize())
}

/// Runs all trials (in parallel) and aggregates per method. Trials are
/// collected in index order before aggregation, so the report does not depend
/// on completion order or thread count.
pub fn run_experiment(graph: &Graph, config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let outcomes: Vec<TrialOutcome> = (0..config.trials as u32)
        .into_par_iter()
        .map(|i| run_trial(graph, config, i))
        .collect::<Result<_>>()?;
    let mut rows = Vec::with_capacity(config.methods.len());
    for (mi, spec) in config.methods.iter().enumerate() {
        let aucs: Vec<f64> = outcomes.iter().map(|o| o.metrics[mi].0 * 100.0).collect();
        let precs: Vec<f64> = outcomes.iter().map(|o| o.metrics[mi].1 * 100.0).collect();
        let (mean_a, sd_a) = mean_and_stddev(&aucs);
        let (mean_p, sd_p) = mean_and_stddev(&precs);
        rows.push(ReportRow {
            method: spec.label(),
            k: spec.k,
            mean_auc_pct: mean_a,
            stddev_auc_pct: sd_a,
            mean_precision_pct: mean_p,
            stddev_precision_pct: sd_p,
            trials: config.trials,
        });
    }
    Ok(ExperimentReport {
        config: config.clone(),
        dataset_checksum_sha256: dataset_checksum(graph),
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        rows,
    })
}

impl ExperimentReport {
    /// CSV rows: method,k,metric,mean,stddev,trials with three-decimal
    /// percentages.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("method,k,metric,mean,stddev,trials\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},auc,{:.3},{:.3},{}\n",
                row.method, row.k, row.mean_auc_pct, row.stddev_auc_pct, row.trials
            ));
            out.push_str(&format!(
                "{},{},precision,{:.3},{:.3},{}\n",
                row.method, row.k, row.mean_precision_pct, row.stddev_precision_pct, row.trials
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn scores_from(pairs: &[(Pair, f64)]) -> PairScores {
        let mut s = PairScores::new();
        for &((u, v), x) in pairs {
            s.set(u, v, x);
        }
        s
    }

    #[test]
    fn auc_perfect_and_tied() {
        let candidates = vec![(0, 1), (2, 3)];
        let missing = vec![(0, 1)];
        let s = scores_from(&[((0, 1), 5.0), ((2, 3), 3.0)]);
        assert_eq!(auc(&s, &candidates, &missing).unwrap(), 1.0);
        let s = scores_from(&[((0, 1), 3.0), ((2, 3), 3.0)]);
        assert_eq!(auc(&s, &candidates, &missing).unwrap(), 0.5);
    }

    #[test]
    fn auc_mixed_ranking() {
        let candidates = vec![(0, 1), (0, 2), (0, 3), (0, 4)];
        let missing = vec![(0, 1), (0, 3)];
        let s = scores_from(&[((0, 1), 3.0), ((0, 2), 2.0), ((0, 3), 1.0), ((0, 4), 0.0)]);
        assert_relative_eq!(auc(&s, &candidates, &missing).unwrap(), 0.75);
    }

    #[test]
    fn auc_rejects_degenerate_classes() {
        let s = PairScores::new();
        assert!(auc(&s, &[(0, 1)], &[]).is_err());
        assert!(auc(&s, &[(0, 1)], &[(0, 1)]).is_err());
        assert!(auc(&s, &[(0, 1), (0, 2)], &[(5, 6)]).is_err());
    }

    #[test]
    fn precision_without_ties() {
        let candidates = vec![(0, 1), (0, 2), (0, 3)];
        let missing = vec![(0, 1)];
        let s = scores_from(&[((0, 1), 3.0), ((0, 2), 2.0), ((0, 3), 1.0)]);
        assert_relative_eq!(expected_precision(&s, &candidates, &missing, 2).unwrap(), 0.5);
    }

    #[test]
    fn precision_all_tied_is_uniform_expectation() {
        let candidates: Vec<Pair> = (1..=10).map(|v| (0, v)).collect();
        let missing: Vec<Pair> = (1..=3).map(|v| (0, v)).collect();
        let s = PairScores::new();
        for p in 1..=10 {
            assert_relative_eq!(
                expected_precision(&s, &candidates, &missing, p).unwrap(),
                0.3,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn precision_straddling_tie_group() {
        let candidates = vec![(0, 1), (0, 2), (0, 3)];
        let missing = vec![(0, 1), (0, 3)];
        let s = scores_from(&[((0, 1), 2.0), ((0, 2), 2.0), ((0, 3), 1.0)]);
        assert_relative_eq!(expected_precision(&s, &candidates, &missing, 2).unwrap(), 0.5);
    }

    #[test]
    fn precision_rejects_bad_depth() {
        let s = PairScores::new();
        let candidates = vec![(0, 1), (0, 2)];
        let missing = vec![(0, 1)];
        assert!(expected_precision(&s, &candidates, &missing, 0).is_err());
        assert!(expected_precision(&s, &candidates, &missing, 3).is_err());
    }

    fn small_graph() -> Graph {
        crate::graph::generate_pa(20, 3, 2, RandomSeed::new(31)).unwrap()
    }

    #[test]
    fn trials_are_deterministic() {
        let g = small_graph();
        let mut config = ExperimentConfig::new(
            "pa-20",
            vec![MethodSpec::new(MethodKind::ShapleyCloseness, 2.0)],
        );
        config.trials = 3;
        config.master_seed = 99;
        let a = run_trial(&g, &config, 1).unwrap();
        let b = run_trial(&g, &config, 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn constant_scorer_gets_exactly_half_auc() {
        let g = small_graph();
        let seed = RandomSeed::new(5);
        let (observed, missing) = g.remove_random_edges(0.3, seed).unwrap();
        let candidates: Vec<Pair> = observed.nonadjacent_pairs().collect();
        let s = PairScores::new(); // everything score 0
        assert_eq!(auc(&s, &candidates, &missing).unwrap(), 0.5);
        let p = missing.len();
        assert_relative_eq!(
            expected_precision(&s, &candidates, &missing, p).unwrap(),
            missing.len() as f64 / candidates.len() as f64,
            epsilon = 1e-12
        );
    }

    #[test]
    fn oracle_scorer_gets_perfect_metrics() {
        let g = small_graph();
        let (observed, missing) = g.remove_random_edges(0.3, RandomSeed::new(8)).unwrap();
        let candidates: Vec<Pair> = observed.nonadjacent_pairs().collect();
        let mut s = PairScores::new();
        for &(u, v) in &missing {
            s.set(u, v, 1.0);
        }
        assert_eq!(auc(&s, &candidates, &missing).unwrap(), 1.0);
        assert_eq!(
            expected_precision(&s, &candidates, &missing, missing.len()).unwrap(),
            1.0
        );
    }

    #[test]
    fn experiment_report_shape_and_determinism() {
        let g = small_graph();
        let mut config = ExperimentConfig::new(
            "pa-20",
            vec![
                MethodSpec::new(MethodKind::ShapleyCloseness, 2.0),
                MethodSpec::new(MethodKind::Srw, 2.0),
            ],
        );
        config.trials = 5;
        config.master_seed = 7;
        let a = run_experiment(&g, &config).unwrap();
        let b = run_experiment(&g, &config).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.rows.len(), 2);
        for row in &a.rows {
            assert!(row.mean_auc_pct >= 0.0 && row.mean_auc_pct <= 100.0);
            assert!(row.mean_precision_pct >= 0.0 && row.mean_precision_pct <= 100.0);
        }
        assert_eq!(a.to_csv().lines().count(), 1 + 4);
        assert!(a.to_json().contains("dataset_checksum_sha256"));
    }

    #[test]
    fn config_validation() {
        let mut c = ExperimentConfig::new("x", vec![MethodSpec::new(MethodKind::Lrw, 2.0)]);
        c.removal_fraction = 1.5;
        assert!(c.validate().is_err());
        c.removal_fraction = 0.3;
        c.trials = 0;
        assert!(c.validate().is_err());
    }
}
