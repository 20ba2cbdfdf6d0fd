//! Depth-by-depth elimination of internal nodes with the growth ledger.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::classify::{classify_node, NodeClass};
use super::sweep::{sweep_c1_to_c0, sweep_c2_to_c1, SweepTrace};
use crate::complex::{depth_map, Node, Triangulation};
use crate::error::ReduceError;
use crate::moves::{remove_1_tetra, MoveRecord};

/// 96 · 21: the explicit coefficients of the per-depth bounds chained together.
pub const DEFAULT_GROWTH_CONSTANT: u64 = 2016;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReduceConfig {
    /// Gross edge growth must stay below this times (t + n_i).
    pub growth_constant: u64,
    /// Final t and f_s must stay below this times the initial t.
    pub size_constant: u64,
}

impl Default for ReduceConfig {
    fn default() -> Self {
        Self {
            growth_constant: DEFAULT_GROWTH_CONSTANT,
            size_constant: DEFAULT_GROWTH_CONSTANT,
        }
    }
}

/// Counters of one depth round.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DepthRound {
    pub depth: u32,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    /// Internal edges between original depths d-1 and d when the round starts.
    pub a_hat_prev: u64,
    /// Net change of internal edges over the C2 to C1 sweep.
    pub delta_c2: i64,
    /// Net change of internal edges over the C1 to C0 sweep.
    pub delta_c1: i64,
    pub splits_c2: usize,
    pub splits_c1: usize,
    pub removals: usize,
    pub internal_edges_before: i64,
    pub internal_edges_after: i64,
    /// 96 (a_d + b_d + a_{d-1} + c_{d-1} + n_s [d = 0]).
    pub bound_c2: i64,
    /// 6 a_d + 12 b_d + 6 a_{d-1} + 96 c_{d-1} + 20 Δ'_d, reported only.
    pub bound_c1: i64,
    /// Depth-1 internal nodes at the start of the removal step that stayed internal.
    pub unpromoted: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GrowthLedger {
    pub rounds: Vec<DepthRound>,
    /// a_d, b_d, c_d of the input, indexed by d.
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub c: Vec<u64>,
    pub t_before: i64,
    pub n_i_before: i64,
    pub n_s_before: i64,
    pub f_i_before: i64,
    pub e_before: i64,
    pub e_after: i64,
    pub t_after: i64,
    pub f_s_after: i64,
    /// Gross growth: the sum of Δ'_d + Δ''_d over all rounds.
    pub delta: i64,
    pub growth_constant: u64,
    pub growth_limit: i64,
    /// Δ / (t + n_i).
    pub growth_ratio: f64,
    pub size_constant: u64,
    /// t' / t and f' / t.
    pub size_ratios: [f64; 2],
    pub total_splits: usize,
    pub total_removals: usize,
    pub split_length_sum: i64,
}

#[derive(Debug, Clone)]
pub struct Elimination {
    pub triangulation: Triangulation,
    pub ledger: GrowthLedger,
    pub log: Vec<MoveRecord>,
    pub traces: Vec<SweepTrace>,
}

fn counters(t: &Triangulation, depth: &BTreeMap<Node, u32>) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let max = depth.values().copied().max().unwrap_or(0) as usize;
    let (mut a, mut b, mut c) = (vec![0; max + 1], vec![0; max + 1], vec![0; max + 1]);
    for e in t.internal_edges() {
        let (x, y) = (depth[&e[0]], depth[&e[1]]);
        if x == y {
            b[x as usize] += 1;
        } else {
            a[x.min(y) as usize] += 1;
        }
    }
    for f in t.internal_faces() {
        let ds: BTreeSet<u32> = f.iter().map(|n| depth[n]).collect();
        if ds.len() == 2 {
            c[*ds.iter().next().unwrap() as usize] += 1;
        }
    }
    (a, b, c)
}

fn internal_edges(t: &Triangulation) -> i64 {
    t.internal_edges().count() as i64
}

/// Removes every internal node, depth by depth, and records the edge growth.
pub fn eliminate_internal_nodes(t: &Triangulation, config: ReduceConfig) -> Result<Elimination, ReduceError> {
    let fv = t.f_vector()?;
    let depth = depth_map(t).depth;
    let (a, b, c) = counters(t, &depth);
    if (a.iter().sum::<u64>() + b.iter().sum::<u64>()) as i64 != fv.e_i {
        return Err(ReduceError::Ledger("sum of a_d + b_d differs from e".into()));
    }
    let f_i = fv.f_tot - fv.f_s;
    if c.iter().sum::<u64>() as i64 > f_i {
        return Err(ReduceError::Ledger("sum of c_d exceeds f_i".into()));
    }
    let mut origin = depth.clone();
    let e_before = fv.e_i;

    let mut cur = t.clone();
    let mut log = Vec::new();
    let mut traces = Vec::new();
    let mut rounds = Vec::new();
    let mut frontier: Vec<Node> = cur.external_nodes().iter().copied().collect();
    let mut d: u32 = 0;
    let at = |v: &Vec<u64>, d: i64| if d < 0 { 0 } else { v.get(d as usize).copied().unwrap_or(0) };

    while cur.num_nodes() > cur.external_nodes().len() {
        if rounds.len() as i64 > fv.n_i {
            return Err(ReduceError::NonTermination(rounds.len()));
        }
        let e0 = internal_edges(&cur);
        let a_hat_prev = if d == 0 {
            0
        } else {
            cur.internal_edges()
                .filter(|e| {
                    let mut ds = [origin[&e[0]], origin[&e[1]]];
                    ds.sort_unstable();
                    ds == [d - 1, d]
                })
                .count() as u64
        };

        // Frozen list: this round's frontier, then every other external node.
        let mut list = frontier.clone();
        let in_list: BTreeSet<Node> = list.iter().copied().collect();
        list.extend(cur.external_nodes().iter().filter(|n| !in_list.contains(n)));
        let (next, tr1) = sweep_c2_to_c1(&cur, &list)?;
        inherit(&mut origin, &tr1);
        cur = next;
        let e1 = internal_edges(&cur);

        let mut list: Vec<Node> = frontier.iter().copied().filter(|&n| cur.has_node(n)).collect();
        list.extend(tr1.created.iter().copied());
        let in_list: BTreeSet<Node> = list.iter().copied().collect();
        list.extend(cur.external_nodes().iter().filter(|n| !in_list.contains(n)));
        let (next, tr2) = sweep_c1_to_c0(&cur, &list)?;
        inherit(&mut origin, &tr2);
        cur = next;
        let e2 = internal_edges(&cur);

        // Remove one tetrahedron per C0 node at depth 1.
        let candidates = depth_map(&cur).level(1);
        let mut surfaced = Vec::new();
        let mut removals = Vec::new();
        for &x in &candidates {
            if cur.num_nodes() == cur.external_nodes().len() {
                break;
            }
            if let NodeClass::C0 { tetra } = classify_node(&cur, x) {
                let m = remove_1_tetra(&cur, tetra)?;
                cur = m.triangulation;
                removals.push(m.record);
                surfaced.push(x);
            }
        }
        if surfaced.is_empty() {
            return Err(ReduceError::NoProgress(cur.num_nodes() - cur.external_nodes().len()));
        }
        let unpromoted = candidates.iter().filter(|&&x| !cur.is_external_node(x)).count();
        let done = cur.num_nodes() == cur.external_nodes().len();

        let (di, dp) = (d as i64, d as i64 - 1);
        let delta_c2 = e1 - e0;
        let ns_term = if d == 0 { fv.n_s } else { 0 };
        rounds.push(DepthRound {
            depth: d,
            a: at(&a, di),
            b: at(&b, di),
            c: at(&c, di),
            a_hat_prev,
            delta_c2,
            delta_c1: e2 - e1,
            splits_c2: tr1.steps.len(),
            splits_c1: tr2.steps.len(),
            removals: surfaced.len(),
            internal_edges_before: e0,
            internal_edges_after: internal_edges(&cur),
            bound_c2: 96 * (at(&a, di) + at(&b, di) + at(&a, dp) + at(&c, dp)) as i64 + 96 * ns_term,
            bound_c1: (6 * at(&a, di) + 12 * at(&b, di) + 6 * at(&a, dp) + 96 * at(&c, dp)) as i64
                + 20 * delta_c2,
            unpromoted: if done { 0 } else { unpromoted },
        });
        log.extend(tr1.log.iter().cloned());
        log.extend(tr2.log.iter().cloned());
        log.extend(removals);
        traces.push(tr1);
        traces.push(tr2);
        frontier = surfaced;
        d += 1;
    }

    let fv_after = cur.f_vector()?;
    let delta: i64 = rounds.iter().map(|r| r.delta_c2 + r.delta_c1).sum();
    let limit = config.growth_constant as i64 * (fv.t + fv.n_i);
    let total_splits: usize = rounds.iter().map(|r| r.splits_c2 + r.splits_c1).sum();
    let total_removals: usize = rounds.iter().map(|r| r.removals).sum();
    let split_length_sum: i64 = traces
        .iter()
        .flat_map(|tr| &tr.steps)
        .map(|s| s.path.len() as i64 - 1)
        .sum();
    let e_after = fv_after.e_i;
    if e_after - e_before != split_length_sum - total_splits as i64 - 3 * total_removals as i64 {
        return Err(ReduceError::Ledger(format!(
            "net edge change {} differs from the per-move sum",
            e_after - e_before
        )));
    }
    let ledger = GrowthLedger {
        rounds,
        a,
        b,
        c,
        t_before: fv.t,
        n_i_before: fv.n_i,
        n_s_before: fv.n_s,
        f_i_before: f_i,
        e_before,
        e_after,
        t_after: fv_after.t,
        f_s_after: fv_after.f_s,
        delta,
        growth_constant: config.growth_constant,
        growth_limit: limit,
        growth_ratio: delta as f64 / (fv.t + fv.n_i) as f64,
        size_constant: config.size_constant,
        size_ratios: [
            fv_after.t as f64 / fv.t as f64,
            fv_after.f_s as f64 / fv.t as f64,
        ],
        total_splits,
        total_removals,
        split_length_sum,
    };
    if delta > limit {
        return Err(ReduceError::GrowthBound {
            delta,
            constant: config.growth_constant,
            limit,
        });
    }
    let k = config.size_constant as i64;
    if fv_after.t > k * fv.t || fv_after.f_s > k * fv.t {
        return Err(ReduceError::Ledger(format!(
            "final size <{},{}> exceeds {k} t = {}",
            fv_after.t,
            fv_after.f_s,
            k * fv.t
        )));
    }
    Ok(Elimination {
        triangulation: cur,
        ledger,
        log,
        traces,
    })
}

/// Split children keep the original depth of the node they replace.
fn inherit(origin: &mut BTreeMap<Node, u32>, trace: &SweepTrace) {
    for s in &trace.steps {
        let d = origin.get(&s.owner).copied().unwrap_or(0);
        for c in s.created {
            origin.insert(c, d);
        }
    }
}
