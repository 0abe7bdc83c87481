//! Random-walk baselines: RWR (personalized random walk with restart) and
//! SimRank. Both rank entities for the robustness comparison; neither is
//! representation independent, which is the point of comparing against
//! them.

use crate::error::{Error, Result};
use crate::graph::{EntityKey, LabeledGraph, NodeId};
use crate::similarity::{RankedList, Score};

#[derive(Debug, Clone)]
pub struct RwrResult {
    /// One score per node, indexed by internal node id.
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Power iteration of `x ← (1−restart)·(W·x + dangling·1_e) + restart·1_e`
/// with `W` the column-normalized adjacency over the whole node set.
/// Dangling mass goes back to the query node, so an isolated query stays at
/// its indicator vector and the scores keep summing to one.
pub fn rwr(
    g: &LabeledGraph,
    e: &EntityKey,
    restart: f64,
    tol: f64,
    max_iters: usize,
) -> Result<RwrResult> {
    if !(restart > 0.0 && restart <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "restart probability must be in (0, 1], got {restart}"
        )));
    }
    let q = g.entity(e)?;
    let n = g.node_count();
    let inv_deg: Vec<f64> = g
        .node_ids()
        .map(|v| {
            let d = g.degree(v);
            if d == 0 {
                0.0
            } else {
                1.0 / d as f64
            }
        })
        .collect();
    let mut x = vec![0.0; n];
    x[q.0 as usize] = 1.0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;
        let mut next = vec![0.0; n];
        let mut dangling = 0.0;
        for v in g.node_ids() {
            let mass = x[v.0 as usize];
            if mass == 0.0 {
                continue;
            }
            if g.degree(v) == 0 {
                dangling += mass;
                continue;
            }
            let share = mass * inv_deg[v.0 as usize];
            for &u in g.neighbors(v) {
                next[u.0 as usize] += share;
            }
        }
        next[q.0 as usize] += dangling;
        let mut delta = 0.0;
        for (i, v) in next.iter_mut().enumerate() {
            *v = (1.0 - restart) * *v + if i == q.0 as usize { restart } else { 0.0 };
            delta += (*v - x[i]).abs();
        }
        x = next;
        if delta < tol {
            converged = true;
            break;
        }
    }
    Ok(RwrResult {
        scores: x,
        iterations,
        converged,
    })
}

/// Full RWR ranking of entities of `answer_label` (query excluded).
pub fn rwr_ranked(
    g: &LabeledGraph,
    e: &EntityKey,
    answer_label: &str,
    restart: f64,
    tol: f64,
    max_iters: usize,
) -> Result<RankedList> {
    let res = rwr(g, e, restart, tol, max_iters)?;
    let lid = g.label_id(answer_label)?;
    let answers = g
        .nodes_of_label(lid)
        .iter()
        .filter_map(|&n| g.entity_key(n))
        .filter(|k| k != e)
        .map(|k| {
            let node = g.entity(&k).expect("known entity");
            (k, Score::Float(res.scores[node.0 as usize]))
        })
        .collect();
    Ok(RankedList::from_scores(e.clone(), answers))
}

/// Node cap for the dense all-pairs computation.
pub const SIMRANK_NODE_CAP: usize = 5_000;

#[derive(Debug)]
pub struct SimRankResult {
    scores: Vec<f64>,
    n: usize,
    pub iterations: usize,
    pub converged: bool,
}

impl SimRankResult {
    pub fn score(&self, a: NodeId, b: NodeId) -> f64 {
        self.scores[a.0 as usize * self.n + b.0 as usize]
    }
}

/// Simultaneous fixed-point iteration of
/// `s(a,b) = damping/(|N(a)||N(b)|) · Σ s(u,v)` with `s(a,a) = 1`;
/// zero-neighbor pairs score 0. Dense, for desk-scale graphs.
pub fn simrank(
    g: &LabeledGraph,
    damping: f64,
    tol: f64,
    max_iters: usize,
) -> Result<SimRankResult> {
    if !(damping > 0.0 && damping < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "damping must be in (0, 1), got {damping}"
        )));
    }
    let n = g.node_count();
    if n > SIMRANK_NODE_CAP {
        return Err(Error::InvalidParameter(format!(
            "simrank is computed densely and is capped at {SIMRANK_NODE_CAP} nodes, got {n}"
        )));
    }
    let mut s = vec![0.0f64; n * n];
    for i in 0..n {
        s[i * n + i] = 1.0;
    }
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        iterations += 1;
        let mut next = vec![0.0f64; n * n];
        let mut delta = 0.0f64;
        for a in 0..n {
            next[a * n + a] = 1.0;
            let na = g.neighbors(NodeId(a as u32));
            for b in (a + 1)..n {
                let nb = g.neighbors(NodeId(b as u32));
                if na.is_empty() || nb.is_empty() {
                    continue;
                }
                let mut sum = 0.0;
                for &u in na {
                    let row = u.0 as usize * n;
                    for &v in nb {
                        sum += s[row + v.0 as usize];
                    }
                }
                let val = damping * sum / (na.len() as f64 * nb.len() as f64);
                next[a * n + b] = val;
                next[b * n + a] = val;
                delta = delta.max((val - s[a * n + b]).abs());
            }
        }
        s = next;
        if delta < tol {
            converged = true;
            break;
        }
    }
    Ok(SimRankResult {
        scores: s,
        n,
        iterations,
        converged,
    })
}

/// Full SimRank ranking of entities of `answer_label` for one query.
pub fn simrank_ranked(
    g: &LabeledGraph,
    table: &SimRankResult,
    e: &EntityKey,
    answer_label: &str,
) -> Result<RankedList> {
    let q = g.entity(e)?;
    let lid = g.label_id(answer_label)?;
    let answers = g
        .nodes_of_label(lid)
        .iter()
        .filter_map(|&node| g.entity_key(node).map(|k| (node, k)))
        .filter(|(_, k)| k != e)
        .map(|(node, k)| (k, Score::Float(table.score(q, node))))
        .collect();
    Ok(RankedList::from_scores(e.clone(), answers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphBuilder, LabelKind};

    fn triangle() -> LabeledGraph {
        let mut b = GraphBuilder::new();
        b.declare_label("v", LabelKind::Entity).unwrap();
        for (id, val) in [("1", "a"), ("2", "b"), ("3", "c"), ("4", "lone")] {
            b.add_node(id, "v", Some(val)).unwrap();
        }
        b.add_edge_by_id("1", "2").unwrap();
        b.add_edge_by_id("2", "3").unwrap();
        b.add_edge_by_id("3", "1").unwrap();
        b.finish().unwrap().graph
    }

    #[test]
    fn restart_one_is_indicator() {
        let g = triangle();
        let r = rwr(&g, &EntityKey::new("v", "a"), 1.0, 1e-12, 100).unwrap();
        let q = g.entity(&EntityKey::new("v", "a")).unwrap();
        for (i, &x) in r.scores.iter().enumerate() {
            assert_eq!(x, if i == q.0 as usize { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn isolated_query_stays_at_indicator() {
        let g = triangle();
        let r = rwr(&g, &EntityKey::new("v", "lone"), 0.8, 1e-12, 500).unwrap();
        let q = g.entity(&EntityKey::new("v", "lone")).unwrap();
        assert!((r.scores[q.0 as usize] - 1.0).abs() < 1e-9);
        let total: f64 = r.scores.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn rwr_mass_sums_to_one() {
        let g = triangle();
        let r = rwr(&g, &EntityKey::new("v", "a"), 0.3, 1e-12, 1000).unwrap();
        assert!(r.converged);
        let total: f64 = r.scores.iter().sum();
        assert!((total - 1.0).abs() < 1e-9);
    }

    #[test]
    fn simrank_diagonal_and_range() {
        let g = triangle();
        let t = simrank(&g, 0.8, 1e-9, 100).unwrap();
        for a in g.node_ids() {
            assert_eq!(t.score(a, a), 1.0);
            for b in g.node_ids() {
                let s = t.score(a, b);
                assert!((0.0..=1.0).contains(&s));
            }
        }
        // zero-neighbor pairs score 0
        let lone = g.entity(&EntityKey::new("v", "lone")).unwrap();
        let a = g.entity(&EntityKey::new("v", "a")).unwrap();
        assert_eq!(t.score(lone, a), 0.0);
    }
}
