//! QoS-driven power allocation and rate evaluation.
//!
//! Within a cluster every member except the strongest gets just enough power
//! for its own message to reach the SINR floor `gamma_min` at its own
//! receiver; the strongest member takes whatever is left. Positions are
//! 0-based decode positions (0 = weakest).

use alloc::vec::Vec;

use crate::cluster::{CandidateCluster, ClusterPlan};

/// Per-channel power, noise power and the per-user SINR floor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerBudget {
    /// Watts available per channel use (shared by one cluster).
    pub power: f64,
    /// Noise power in watts.
    pub noise: f64,
    /// Minimum own-signal SINR every user must reach.
    pub qos_sinr: f64,
}

impl PowerBudget {
    pub const DEFAULT_NOISE: f64 = 7.962e-11;
    pub const DEFAULT_QOS_SINR: f64 = 0.02;
}

impl Default for PowerBudget {
    fn default() -> Self {
        Self {
            power: 1.0,
            noise: Self::DEFAULT_NOISE,
            qos_sinr: Self::DEFAULT_QOS_SINR,
        }
    }
}

/// Powers, SINRs and rates for one cluster, aligned with its decode order.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerAllocation {
    pub beam_index: usize,
    pub members: Vec<usize>,
    pub powers: Vec<f64>,
    /// Own-signal SINR of each member.
    pub per_user_sinr: Vec<f64>,
    /// `log2(1 + sinr)` in bps per channel use.
    pub per_user_rate: Vec<f64>,
    pub feasible: bool,
}

/// SINR of message `decode` as seen by the member at `observer`:
/// `p_j g_o / (g_o * sum_{v > j} p_v + noise)`.
///
/// `decode == observer` gives the member's own-signal SINR.
pub fn sinr_cross(gains: &[f64], decode: usize, observer: usize, powers: &[f64], noise: f64) -> f64 {
    debug_assert!(decode <= observer && observer < gains.len());
    let g = gains[observer];
    let interference: f64 = powers[decode + 1..].iter().sum();
    let signal = powers[decode] * g;
    if signal == 0.0 {
        return 0.0;
    }
    signal / (g * interference + noise)
}

/// Sequential QoS allocation over the cluster's decode order.
///
/// With `rem` watts still unassigned, member `j` gets
/// `p_j = gamma (rem + noise / g_j) / (1 + gamma)`, which puts its own SINR
/// exactly at `gamma` because everything assigned later interferes with it.
/// The strongest member receives the remainder. The allocation is infeasible
/// when a weak member needs more than is left or the strongest member ends
/// below `gamma`; the total never exceeds the budget either way.
pub fn allocate_qos(cluster: &CandidateCluster, budget: &PowerBudget) -> PowerAllocation {
    let gains = &cluster.gains;
    let n = gains.len();
    let gamma = budget.qos_sinr;
    let mut powers = Vec::with_capacity(n);
    let mut remaining = budget.power;
    let mut feasible = n > 0;
    for &g in gains.iter().take(n.saturating_sub(1)) {
        let need = if g > 0.0 {
            gamma * (remaining + budget.noise / g) / (1.0 + gamma)
        } else if gamma > 0.0 {
            f64::INFINITY
        } else {
            0.0
        };
        let p = if need > remaining {
            feasible = false;
            remaining
        } else {
            need
        };
        powers.push(p);
        remaining -= p;
    }
    if n > 0 {
        powers.push(remaining.max(0.0));
    }
    let per_user_sinr: Vec<f64> = (0..n).map(|j| sinr_cross(gains, j, j, &powers, budget.noise)).collect();
    if n > 0 && per_user_sinr[n - 1] < gamma {
        feasible = false;
    }
    let per_user_rate = per_user_sinr.iter().map(|&s| libm::log2(1.0 + s)).collect();
    PowerAllocation {
        beam_index: cluster.beam_index,
        members: cluster.members.clone(),
        powers,
        per_user_sinr,
        per_user_rate,
        feasible,
    }
}

/// `R_k = sum_j log2(1 + own SINR_j)`.
pub fn cluster_rate(allocation: &PowerAllocation) -> f64 {
    allocation.per_user_rate.iter().sum()
}

/// Cluster rates and the effective sum rate of a plan.
#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub per_cluster_rate: Vec<f64>,
    pub num_clusters: usize,
    /// `sum_k R_k / K`.
    pub effective_sum_rate: f64,
    pub noise_power: f64,
    pub channel_power: f64,
    pub qos_sinr: f64,
    /// Clusters whose allocation could not meet the SINR floor; they count
    /// with rate 0.
    pub infeasible_clusters: usize,
}

/// Averages the cluster rates over the `K` channel uses.
pub fn effective_sum_rate(allocations: &[PowerAllocation], budget: &PowerBudget) -> RateReport {
    let per_cluster_rate: Vec<f64> = allocations
        .iter()
        .map(|a| if a.feasible { cluster_rate(a) } else { 0.0 })
        .collect();
    let k = allocations.len();
    let total: f64 = per_cluster_rate.iter().sum();
    RateReport {
        effective_sum_rate: if k == 0 { 0.0 } else { total / k as f64 },
        per_cluster_rate,
        num_clusters: k,
        noise_power: budget.noise,
        channel_power: budget.power,
        qos_sinr: budget.qos_sinr,
        infeasible_clusters: allocations.iter().filter(|a| !a.feasible).count(),
    }
}

/// Allocates power in every cluster of `plan` and evaluates the rates.
pub fn evaluate_plan(plan: &ClusterPlan, budget: &PowerBudget) -> (Vec<PowerAllocation>, RateReport) {
    let allocations: Vec<PowerAllocation> = plan.clusters.iter().map(|c| allocate_qos(c, budget)).collect();
    let report = effective_sum_rate(&allocations, budget);
    (allocations, report)
}

/// OMA effective sum rate: each user alone on a channel with full power,
/// `mean_u log2(1 + P g_u / noise)` over the best-beam gains `g_u`.
pub fn oma_rate(best_beam_gains: &[f64], budget: &PowerBudget) -> f64 {
    if best_beam_gains.is_empty() {
        return 0.0;
    }
    let total: f64 = best_beam_gains
        .iter()
        .map(|&g| libm::log2(1.0 + budget.power * g / budget.noise))
        .sum();
    total / best_beam_gains.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::vec;

    fn cluster(gains: &[f64]) -> CandidateCluster {
        CandidateCluster {
            beam_index: 0,
            members: (0..gains.len()).collect(),
            gains: gains.to_vec(),
        }
    }

    fn budget(gamma: f64) -> PowerBudget {
        PowerBudget {
            power: 1.0,
            noise: 1e-3,
            qos_sinr: gamma,
        }
    }

    #[test]
    fn singleton_gets_everything() {
        let a = allocate_qos(&cluster(&[0.5]), &budget(0.02));
        assert_eq!(a.powers, vec![1.0]);
        assert!((a.per_user_sinr[0] - 0.5 / 1e-3).abs() < 1e-9);
        assert!(a.feasible);
    }

    #[test]
    fn zero_floor_gives_weak_users_nothing() {
        let a = allocate_qos(&cluster(&[0.1, 0.2, 0.3]), &budget(0.0));
        assert_eq!(a.powers, vec![0.0, 0.0, 1.0]);
        assert_eq!(a.per_user_sinr[0], 0.0);
    }

    #[test]
    fn equal_gain_pair_round_trips_to_the_floor() {
        let g = 0.4;
        let b = budget(0.3);
        let a = allocate_qos(&cluster(&[g, g]), &b);
        let p1 = 0.3 * (1.0 + 1e-3 / g) / 1.3;
        assert!((a.powers[0] - p1).abs() < 1e-15);
        assert!((a.powers[1] - (1.0 - p1)).abs() < 1e-15);
        let s = p1 * g / (g * (1.0 - p1) + 1e-3);
        assert!((s - 0.3).abs() < 1e-12);
        assert!((a.per_user_sinr[0] - 0.3).abs() < 1e-12);
    }

    #[test]
    fn cross_sinr_examples() {
        let p = [0.3, 0.7];
        assert!((sinr_cross(&[2.0, 2.0], 0, 1, &p, 0.1) - 0.6 / (1.4 + 0.1)).abs() < 1e-15);
        assert!((sinr_cross(&[5.0], 0, 0, &[1.0], 0.5) - 10.0).abs() < 1e-15);
        assert_eq!(sinr_cross(&[1.0, 1.0], 0, 1, &[0.0, 1.0], 0.1), 0.0);
    }

    #[test]
    fn starved_cluster_is_infeasible_but_within_budget() {
        let b = PowerBudget {
            power: 1e-6,
            noise: 1.0,
            qos_sinr: 1.0,
        };
        let a = allocate_qos(&cluster(&[1e-3, 1e-3, 1.0]), &b);
        assert!(!a.feasible);
        assert!(a.powers.iter().sum::<f64>() <= 1e-6 + 1e-18);
        let zero = allocate_qos(&cluster(&[0.0, 1.0]), &budget(0.02));
        assert!(!zero.feasible);
    }

    #[test]
    fn rate_examples() {
        let mut a = allocate_qos(&cluster(&[1.0]), &budget(0.02));
        a.per_user_rate = vec![libm::log2(2.0)];
        assert_eq!(cluster_rate(&a), 1.0);
        a.per_user_rate = vec![0.0, 0.0];
        assert_eq!(cluster_rate(&a), 0.0);
    }

    #[test]
    fn sum_rate_is_the_mean_of_cluster_rates() {
        let b = budget(0.02);
        let mut a = allocate_qos(&cluster(&[1.0]), &b);
        let mut c = a.clone();
        a.per_user_rate = vec![4.0];
        c.per_user_rate = vec![2.0];
        let r = effective_sum_rate(&[a.clone(), c], &b);
        assert_eq!(r.effective_sum_rate, 3.0);
        assert_eq!(effective_sum_rate(&[a], &b).effective_sum_rate, 4.0);
    }

    #[test]
    fn oma_examples() {
        let b = budget(0.02);
        assert!((oma_rate(&[0.25], &b) - libm::log2(1.0 + 250.0)).abs() < 1e-12);
        assert_eq!(oma_rate(&[0.0, 0.0], &b), 0.0);
    }
}
