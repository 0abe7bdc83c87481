//! Label- and value-preserving graph isomorphism for desk-scale graphs.
//!
//! Entity nodes are anchored directly through their unique (label, value)
//! pair, so backtracking only ever runs over valueless nodes, grouped by
//! label and pruned by entity-neighborhood signatures.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{LabeledGraph, NodeId};

/// True iff a bijection exists that preserves labels, values and edges.
pub fn isomorphic(g1: &LabeledGraph, g2: &LabeledGraph) -> bool {
    if g1.node_count() != g2.node_count() || g1.edge_count() != g2.edge_count() {
        return false;
    }
    let mut labels1: Vec<&str> = g1.label_names().collect();
    let mut labels2: Vec<&str> = g2.label_names().collect();
    // label sets must agree up to labels with no nodes
    labels1.retain(|l| !g1.nodes_of_label(g1.label_id(l).unwrap()).is_empty());
    labels2.retain(|l| !g2.nodes_of_label(g2.label_id(l).unwrap()).is_empty());
    labels1.sort();
    labels2.sort();
    if labels1 != labels2 {
        return false;
    }

    // Entities anchor by key.
    let mut map: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for n in g1.node_ids() {
        if let Some(key) = g1.entity_key(n) {
            match g2.entity(&key) {
                Ok(m) => {
                    map.insert(n, m);
                }
                Err(_) => return false,
            }
        }
    }
    if map.len() != g2.node_ids().filter(|&m| g2.is_entity(m)).count() {
        return false;
    }
    // Entity-to-entity edges must agree before any backtracking.
    for &(a, b) in g1.edges() {
        if let (Some(&ma), Some(&mb)) = (map.get(&a), map.get(&b)) {
            if !g2.has_edge(ma, mb) {
                return false;
            }
        }
    }
    let e2e = |g: &LabeledGraph| {
        g.edges()
            .iter()
            .filter(|&&(a, b)| g.is_entity(a) && g.is_entity(b))
            .count()
    };
    if e2e(g1) != e2e(g2) {
        return false;
    }

    // Valueless nodes: candidates share label and entity-neighborhood
    // signature (valueless neighbor counts per label are part of it).
    let signature = |g: &LabeledGraph, n: NodeId| -> (String, BTreeSet<String>, BTreeMap<String, usize>) {
        let mut entity_sig = BTreeSet::new();
        let mut valueless_sig = BTreeMap::new();
        for &m in g.neighbors(n) {
            match g.entity_key(m) {
                Some(k) => {
                    entity_sig.insert(k.to_string());
                }
                None => {
                    *valueless_sig
                        .entry(g.label_name(g.label_of(m)).to_string())
                        .or_insert(0) += 1;
                }
            }
        }
        (
            g.label_name(g.label_of(n)).to_string(),
            entity_sig,
            valueless_sig,
        )
    };
    let v1: Vec<NodeId> = g1.node_ids().filter(|&n| !g1.is_entity(n)).collect();
    let v2: Vec<NodeId> = g2.node_ids().filter(|&n| !g2.is_entity(n)).collect();
    if v1.len() != v2.len() {
        return false;
    }
    let sig2: Vec<_> = v2.iter().map(|&m| signature(g2, m)).collect();
    let candidates: Vec<Vec<usize>> = v1
        .iter()
        .map(|&n| {
            let s = signature(g1, n);
            (0..v2.len()).filter(|&j| sig2[j] == s).collect()
        })
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return false;
    }

    // Backtrack in most-constrained-first order. Forward edge preservation
    // plus equal edge counts makes the completed assignment a full
    // isomorphism, so no reverse check is needed.
    let mut order: Vec<usize> = (0..v1.len()).collect();
    order.sort_by_key(|&i| candidates[i].len());
    let index_of: BTreeMap<NodeId, usize> = v1.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut assignment: Vec<Option<usize>> = vec![None; v1.len()];
    let mut used = vec![false; v2.len()];
    let ctx = Search {
        g1,
        g2,
        v1: &v1,
        v2: &v2,
        candidates: &candidates,
        order: &order,
        entity_map: &map,
        index_of: &index_of,
    };
    backtrack(&ctx, 0, &mut assignment, &mut used)
}

struct Search<'a> {
    g1: &'a LabeledGraph,
    g2: &'a LabeledGraph,
    v1: &'a [NodeId],
    v2: &'a [NodeId],
    candidates: &'a [Vec<usize>],
    order: &'a [usize],
    entity_map: &'a BTreeMap<NodeId, NodeId>,
    index_of: &'a BTreeMap<NodeId, usize>,
}

fn backtrack(
    s: &Search,
    depth: usize,
    assignment: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == s.order.len() {
        return true;
    }
    let i = s.order[depth];
    'cand: for &j in &s.candidates[i] {
        if used[j] {
            continue;
        }
        // every edge to an already-placed node must exist in the image
        for &m in s.g1.neighbors(s.v1[i]) {
            let image = match s.entity_map.get(&m) {
                Some(&im) => Some(im),
                None => assignment[s.index_of[&m]].map(|jj| s.v2[jj]),
            };
            if let Some(im) = image {
                if !s.g2.has_edge(s.v2[j], im) {
                    continue 'cand;
                }
            }
        }
        assignment[i] = Some(j);
        used[j] = true;
        if backtrack(s, depth + 1, assignment, used) {
            return true;
        }
        assignment[i] = None;
        used[j] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphBuilder, LabelKind};

    fn star(hub_first: bool) -> LabeledGraph {
        let mut b = GraphBuilder::new();
        b.declare_label("e", LabelKind::Entity).unwrap();
        b.declare_label("h", LabelKind::Valueless).unwrap();
        if hub_first {
            b.add_node("h1", "h", None).unwrap();
        }
        for (id, v) in [("1", "x"), ("2", "y"), ("3", "z")] {
            b.add_node(id, "e", Some(v)).unwrap();
        }
        if !hub_first {
            b.add_node("hub", "h", None).unwrap();
        }
        let hub = if hub_first { "h1" } else { "hub" };
        for id in ["1", "2", "3"] {
            b.add_edge_by_id(hub, id).unwrap();
        }
        b.finish().unwrap().graph
    }

    #[test]
    fn identity_and_relabeled_ids() {
        let a = star(true);
        let b = star(false);
        assert!(isomorphic(&a, &a));
        assert!(isomorphic(&a, &b));
        assert!(isomorphic(&b, &a));
    }

    #[test]
    fn differing_values_are_not_isomorphic() {
        let a = star(true);
        let mut b = GraphBuilder::new();
        b.declare_label("e", LabelKind::Entity).unwrap();
        b.declare_label("h", LabelKind::Valueless).unwrap();
        for (id, v) in [("1", "x"), ("2", "y"), ("3", "DIFFERENT")] {
            b.add_node(id, "e", Some(v)).unwrap();
        }
        b.add_node("hub", "h", None).unwrap();
        for id in ["1", "2", "3"] {
            b.add_edge_by_id("hub", id).unwrap();
        }
        let b = b.finish().unwrap().graph;
        assert!(!isomorphic(&a, &b));
    }

    #[test]
    fn two_hubs_distinguished_by_membership() {
        // hub {x,y} + hub {z} vs hub {x} + hub {y,z}
        let build = |groups: &[&[&str]]| {
            let mut b = GraphBuilder::new();
            b.declare_label("e", LabelKind::Entity).unwrap();
            b.declare_label("h", LabelKind::Valueless).unwrap();
            for v in ["x", "y", "z"] {
                b.add_node(v, "e", Some(v)).unwrap();
            }
            for (i, grp) in groups.iter().enumerate() {
                let hid = format!("h{i}");
                b.add_node(&hid, "h", None).unwrap();
                for m in grp.iter() {
                    b.add_edge_by_id(&hid, m).unwrap();
                }
            }
            b.finish().unwrap().graph
        };
        let a = build(&[&["x", "y"], &["z"]]);
        let b = build(&[&["x"], &["y", "z"]]);
        let c = build(&[&["z"], &["x", "y"]]);
        assert!(!isomorphic(&a, &b));
        assert!(isomorphic(&a, &c));
    }
}
