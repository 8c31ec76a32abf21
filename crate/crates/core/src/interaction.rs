//! All-pairs closeness interaction-index kernels.
//!
//! Both kernels share one structure: instead of enumerating coalitions or
//! permutations per pair, each node u distributes closed-form contributions to
//! every pair of nodes inside its bounded ball. The cumulative neighborhood
//! counts turn "how many permutations / coalitions put some node closer to u
//! than this pair" into arithmetic on Nod counts. All permutation counts are
//! normalized by (|V|-1)! and all binomials appear only as ratios <= O(1)
//! built from iterated products, so nothing overflows.

use rayon::prelude::*;

use crate::distance::{eval_f, DistanceFunction};
use crate::error::{Error, Result};
use crate::neighborhood::NeighborhoodTable;
use crate::scores::PairScores;

/// A probability distribution over coalition sizes c in {0, ..., n-2}.
#[derive(Debug, Clone, PartialEq)]
pub struct SemivalueWeights {
    pub n: usize,
    pub beta: Vec<f64>,
}

impl SemivalueWeights {
    pub fn new(n: usize, beta: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("need at least 2 players, got {n}")));
        }
        if beta.len() != n - 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} weights for {n} players, got {}",
                n - 1,
                beta.len()
            )));
        }
        let total: f64 = beta.iter().sum();
        if beta.iter().any(|&b| b < 0.0) || (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "weights must be nonnegative and sum to 1, got sum {total}"
            )));
        }
        Ok(Self { n, beta })
    }
}

/// beta(c) = 1/(n-1): uniform over coalition sizes, the Shapley distribution.
pub fn shapley_weights(n: usize) -> Result<SemivalueWeights> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 players, got {n}")));
    }
    SemivalueWeights::new(n, vec![1.0 / (n - 1) as f64; n - 1])
}

/// beta(c) = binom(n-2, c) / 2^(n-2): each coalition equally likely.
pub fn banzhaf_weights(n: usize) -> Result<SemivalueWeights> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need at least 2 players, got {n}")));
    }
    let m = n - 2;
    let mut beta = vec![0.0; n - 1];
    let mut binom = 1.0f64;
    let scale = 0.5f64.powi(m as i32);
    for (c, b) in beta.iter_mut().enumerate() {
        *b = binom * scale;
        binom *= (m - c) as f64 / (c + 1) as f64;
    }
    SemivalueWeights::new(n, beta)
}

fn check_radius(table: &NeighborhoodTable, f: DistanceFunction) -> Result<()> {
    if (table.radius_k - f.radius_k).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "table radius {} does not match distance-function radius {}",
            table.radius_k, f.radius_k
        )));
    }
    Ok(())
}

/// Negated Shapley interaction index of the closeness game, for every
/// unordered pair co-occurring in some node's bounded list.
///
/// Per contributing node u and pair {s, t} with d = max(dist(s,u), dist(t,u)),
/// the (normalized) interaction contribution is
///
///   sum over distinct d' > d of f(d') * (1/(Nod_<d'(u)-1) - 1/(Nod_<=d'(u)-1))
///   minus f(d) / (Nod_<=d(u)-1).
///
/// Scanning u's list in distance-descending order makes the outer element's
/// distance the pair maximum for every inner element after it, and the d'>d
/// sum is a running accumulator advanced at distinct-distance boundaries.
pub fn shapley_closeness_all_pairs(
    table: &NeighborhoodTable,
    f: DistanceFunction,
) -> Result<PairScores> {
    check_radius(table, f)?;
    let n = table.node_count;
    let per_node: Vec<Vec<((u32, u32), f64)>> = (0..n as u32)
        .into_par_iter()
        .map(|u| {
            let entries = &table.list(u).entries;
            let mut out = Vec::new();
            let mut acc = 0.0f64;
            for i in 0..entries.len() {
                let (s, ds) = entries[i];
                if i > 0 {
                    let prev_d = entries[i - 1].1;
                    if prev_d > ds {
                        let lt = table.nod_lt(u, prev_d);
                        let leq = table.nod_leq(u, prev_d);
                        // lt == 1 means only u itself is closer than prev_d;
                        // then every later outer element is u and pairs with
                        // nothing, so the term is never consumed.
                        if lt > 1 {
                            acc += eval_f(f, prev_d) * (1.0 / (lt - 1) as f64 - 1.0 / (leq - 1) as f64);
                        }
                    }
                }
                if i + 1 == entries.len() {
                    continue;
                }
                let leq_d = table.nod_leq(u, ds);
                debug_assert!(leq_d >= 2, "pair within <= d implies at least u and one endpoint");
                let mc_plus = eval_f(f, ds) / (leq_d - 1) as f64;
                let contribution = acc - mc_plus;
                for &(t, _) in &entries[i + 1..] {
                    out.push(((s.min(t), s.max(t)), contribution));
                }
            }
            out
        })
        .collect();
    // Sequential merge in node order keeps the summation order, and therefore
    // the output bits, independent of the thread count.
    let mut interaction = PairScores::new();
    for contributions in per_node {
        for ((a, b), value) in contributions {
            interaction.add(a, b, value);
        }
    }
    let mut scores = PairScores::new();
    for ((a, b), value) in interaction.iter() {
        scores.set(a, b, -value);
    }
    Ok(scores)
}

/// Negated semivalue interaction index under arbitrary size weights.
///
/// The coalition-size sum collapses into two per-distance quantities,
///
///   A(d) = sum_c beta(c) * binom(Nod_>d(u), c) / binom(n-2, c)
///   B(d) = sum_c beta(c) * (binom(Nod_>=d(u), c) - binom(Nod_>d(u), c)) / binom(n-2, c)
///
/// after which the pair scan is identical in shape to the Shapley kernel:
/// contribution = sum of f(d')*B(d') over distinct d' > d, minus f(d)*A(d).
/// The binomial ratios are iterated products of (N-i)/(n-2-i), never raw
/// factorials.
pub fn semivalue_closeness_all_pairs(
    table: &NeighborhoodTable,
    f: DistanceFunction,
    w: &SemivalueWeights,
) -> Result<PairScores> {
    check_radius(table, f)?;
    let n = table.node_count;
    if w.n != n {
        return Err(Error::InvalidParameter(format!(
            "weights are for {} players but the graph has {n} nodes",
            w.n
        )));
    }
    // sum_c beta(c) * binom(big, c) / binom(n-2, c)
    let weighted_ratio_sum = |big: usize| -> f64 {
        let m = n - 2;
        let mut total = 0.0;
        let mut ratio = 1.0f64;
        for c in 0..=m {
            total += w.beta[c] * ratio;
            if c < m {
                ratio *= (big as f64 - c as f64) / (m - c) as f64;
                if ratio <= 0.0 {
                    break; // every later term is 0 too
                }
            }
        }
        total
    };
    let per_node: Vec<Vec<((u32, u32), f64)>> = (0..n as u32)
        .into_par_iter()
        .map(|u| {
            let entries = &table.list(u).entries;
            let counts = table.counts(u);
            // A and B per distinct distance, aligned with counts.distinct.
            let mut a_of = vec![0.0f64; counts.distinct.len()];
            let mut b_of = vec![0.0f64; counts.distinct.len()];
            for (idx, &d) in counts.distinct.iter().enumerate() {
                if d == 0.0 {
                    continue; // only u sits at distance 0; never a pair max
                }
                let gt = weighted_ratio_sum(table.nod_gt(u, d));
                let geq = weighted_ratio_sum(table.nod_geq(u, d));
                a_of[idx] = gt;
                b_of[idx] = geq - gt;
            }
            let index_of = |d: f64| counts.distinct.partition_point(|&x| x < d);
            let mut out = Vec::new();
            let mut acc = 0.0f64;
            for i in 0..entries.len() {
                let (s, ds) = entries[i];
                if i > 0 {
                    let prev_d = entries[i - 1].1;
                    if prev_d > ds {
                        let idx = index_of(prev_d);
                        acc += eval_f(f, prev_d) * b_of[idx];
                    }
                }
                if i + 1 == entries.len() {
                    continue;
                }
                let contribution = acc - eval_f(f, ds) * a_of[index_of(ds)];
                for &(t, _) in &entries[i + 1..] {
                    out.push(((s.min(t), s.max(t)), contribution));
                }
            }
            out
        })
        .collect();
    let mut interaction = PairScores::new();
    for contributions in per_node {
        for ((a, b), value) in contributions {
            interaction.add(a, b, value);
        }
    }
    let mut scores = PairScores::new();
    for ((a, b), value) in interaction.iter() {
        scores.set(a, b, -value);
    }
    Ok(scores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceKind;
    use crate::graph::Graph;
    use crate::neighborhood::build_neighborhood_table;
    use approx::assert_relative_eq;

    fn df(kind: DistanceKind, k: f64) -> DistanceFunction {
        DistanceFunction::new(kind, k).unwrap()
    }

    #[test]
    fn shapley_weight_values() {
        let w = shapley_weights(3).unwrap();
        assert_eq!(w.beta, vec![0.5, 0.5]);
        assert!(shapley_weights(1).is_err());
    }

    #[test]
    fn banzhaf_weight_values() {
        let w = banzhaf_weights(4).unwrap();
        assert_eq!(w.beta, vec![0.25, 0.5, 0.25]);
    }

    #[test]
    fn weights_normalize_for_all_small_n() {
        for n in 2..=12 {
            let s: f64 = shapley_weights(n).unwrap().beta.iter().sum();
            let b: f64 = banzhaf_weights(n).unwrap().beta.iter().sum();
            assert_relative_eq!(s, 1.0, epsilon = 1e-12);
            assert_relative_eq!(b, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn path_endpoints_inverse_square() {
        let g = Graph::unweighted(3, &[(0, 1), (1, 2)]);
        let t = build_neighborhood_table(&g, 2.0).unwrap();
        let scores = shapley_closeness_all_pairs(&t, df(DistanceKind::InverseSquare, 2.0)).unwrap();
        assert_relative_eq!(scores.get(0, 2), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn star_leaves_indicator() {
        let g = Graph::unweighted(4, &[(0, 1), (0, 2), (0, 3)]);
        let t = build_neighborhood_table(&g, 1.0).unwrap();
        let scores = shapley_closeness_all_pairs(&t, df(DistanceKind::Indicator, 1.0)).unwrap();
        assert_relative_eq!(scores.get(1, 2), 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(scores.get(1, 3), 1.0 / 3.0, epsilon = 1e-12);
        assert_relative_eq!(scores.get(2, 3), 1.0 / 3.0, epsilon = 1e-12);
    }

    #[test]
    fn single_edge_negated_index_is_two() {
        let g = Graph::unweighted(2, &[(0, 1)]);
        let t = build_neighborhood_table(&g, 2.0).unwrap();
        let scores = shapley_closeness_all_pairs(&t, df(DistanceKind::InverseSquare, 2.0)).unwrap();
        assert_relative_eq!(scores.get(0, 1), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn semivalue_with_shapley_weights_matches_path_value() {
        let g = Graph::unweighted(3, &[(0, 1), (1, 2)]);
        let t = build_neighborhood_table(&g, 2.0).unwrap();
        let w = shapley_weights(3).unwrap();
        let scores =
            semivalue_closeness_all_pairs(&t, df(DistanceKind::InverseSquare, 2.0), &w).unwrap();
        assert_relative_eq!(scores.get(0, 2), 0.75, epsilon = 1e-12);
    }

    #[test]
    fn scores_are_nonnegative_and_local() {
        let g = Graph::unweighted(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]);
        let t = build_neighborhood_table(&g, 2.0).unwrap();
        let scores = shapley_closeness_all_pairs(&t, df(DistanceKind::Inverse, 2.0)).unwrap();
        for (_, s) in scores.iter() {
            assert!(s >= -1e-12);
        }
        // nodes 0 and 5 share no node within radius 2 of both -> absent (0).
        assert_eq!(scores.get(0, 5), 0.0);
    }

    #[test]
    fn rejects_radius_mismatch_and_wrong_weight_count() {
        let g = Graph::unweighted(3, &[(0, 1), (1, 2)]);
        let t = build_neighborhood_table(&g, 2.0).unwrap();
        assert!(shapley_closeness_all_pairs(&t, df(DistanceKind::Inverse, 1.0)).is_err());
        let w = shapley_weights(5).unwrap();
        assert!(
            semivalue_closeness_all_pairs(&t, df(DistanceKind::Inverse, 2.0), &w).is_err()
        );
    }

    #[test]
    fn positive_scaling_of_f_scales_scores_linearly() {
        // indicator vs "indicator scaled" is not expressible directly; instead
        // check inverse vs inverse-square on a distance-1-only radius, where
        // f(1) is 1 for both and the scores coincide.
        let g = Graph::unweighted(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)]);
        let t = build_neighborhood_table(&g, 1.0).unwrap();
        let a = shapley_closeness_all_pairs(&t, df(DistanceKind::Inverse, 1.0)).unwrap();
        let b = shapley_closeness_all_pairs(&t, df(DistanceKind::InverseSquare, 1.0)).unwrap();
        for ((u, v), s) in a.iter() {
            assert_relative_eq!(s, b.get(u, v), epsilon = 1e-12);
        }
    }
}
