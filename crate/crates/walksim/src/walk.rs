//! Walk and meta-walk semantics: enumeration, informative-walk
//! classification, content equivalence, subwalk and inclusion tests, and
//! the maximality check.
//!
//! Exhaustive enumeration here doubles as the independent oracle for the
//! matrix-based similarity pipeline, so it stays deliberately simple:
//! depth-first search in canonical neighbor order, no shortcuts.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{EntityKey, LabeledGraph, LabelId, LabelKind, NodeId};

pub const DEFAULT_ENUMERATION_CAP: usize = 10_000_000;

/// One meta-walk position: a label name plus its star flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetaPos {
    pub label: String,
    pub star: bool,
}

/// A relationship pattern: a label sequence with optional `*` marks that
/// collapse walk multiplicity to walk existence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MetaWalk {
    pub positions: Vec<MetaPos>,
}

impl MetaWalk {
    pub fn plain<S: AsRef<str>>(labels: &[S]) -> Self {
        MetaWalk {
            positions: labels
                .iter()
                .map(|l| MetaPos {
                    label: l.as_ref().to_string(),
                    star: false,
                })
                .collect(),
        }
    }

    /// Parses the text syntax: comma-separated labels, `*` prefix marking a
    /// star position, e.g. `conf,*paper,dom,kw,dom,*paper,conf`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut positions = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::MetaWalkParse(format!("empty label in `{text}`")));
            }
            let (star, label) = match part.strip_prefix('*') {
                Some(rest) => (true, rest),
                None => (false, part),
            };
            if label.is_empty() || label.contains('*') {
                return Err(Error::MetaWalkParse(format!("bad label `{part}`")));
            }
            positions.push(MetaPos {
                label: label.to_string(),
                star,
            });
        }
        let mw = MetaWalk { positions };
        if mw.positions.first().map_or(false, |p| p.star)
            || mw.positions.last().map_or(false, |p| p.star)
        {
            return Err(Error::MetaWalkParse(format!(
                "first and last positions must not be starred in `{text}`"
            )));
        }
        Ok(mw)
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.positions.iter().map(|p| p.label.as_str())
    }

    pub fn label(&self, i: usize) -> &str {
        &self.positions[i].label
    }

    pub fn first_label(&self) -> &str {
        self.label(0)
    }

    pub fn last_label(&self) -> &str {
        self.label(self.len() - 1)
    }

    pub fn has_stars(&self) -> bool {
        self.positions.iter().any(|p| p.star)
    }

    pub fn reversed(&self) -> MetaWalk {
        MetaWalk {
            positions: self.positions.iter().rev().cloned().collect(),
        }
    }

    /// Concatenation overlapping at the shared junction label.
    pub fn concat(&self, other: &MetaWalk) -> MetaWalk {
        assert_eq!(
            self.positions.last(),
            other.positions.first(),
            "concat junction mismatch"
        );
        let mut positions = self.positions.clone();
        positions.extend(other.positions[1..].iter().cloned());
        MetaWalk { positions }
    }

    /// `p · p⁻¹`, the closure used for query meta-walks.
    pub fn mirrored(&self) -> MetaWalk {
        self.concat(&self.reversed())
    }

    pub fn strip_stars(&self) -> MetaWalk {
        MetaWalk {
            positions: self
                .positions
                .iter()
                .map(|p| MetaPos {
                    label: p.label.clone(),
                    star: false,
                })
                .collect(),
        }
    }

    /// Checks the meta-walk against a graph: labels exist, endpoints are
    /// entity labels, stars sit only on entity labels and never on the
    /// endpoints. Returns the resolved label ids.
    pub fn resolve(&self, g: &LabeledGraph) -> Result<Vec<LabelId>> {
        if self.is_empty() {
            return Err(Error::InvalidMetaWalk("empty meta-walk".into()));
        }
        let ids: Vec<LabelId> = self
            .positions
            .iter()
            .map(|p| g.label_id(&p.label))
            .collect::<Result<_>>()?;
        for (pos, (p, &id)) in self.positions.iter().zip(&ids).enumerate() {
            let kind = g.kind_of(id);
            if p.star {
                if kind != LabelKind::Entity {
                    return Err(Error::InvalidMetaWalk(format!(
                        "starred valueless label `{}` at position {pos}",
                        p.label
                    )));
                }
                if pos == 0 || pos + 1 == self.len() {
                    return Err(Error::InvalidMetaWalk(format!(
                        "starred endpoint `{}`",
                        p.label
                    )));
                }
            }
        }
        for (which, id) in [(0usize, ids[0]), (self.len() - 1, *ids.last().unwrap())] {
            if g.kind_of(id) != LabelKind::Entity {
                return Err(Error::InvalidMetaWalk(format!(
                    "endpoint label `{}` at position {which} is not an entity label",
                    g.label_name(id)
                )));
            }
        }
        Ok(ids)
    }
}

impl fmt::Display for MetaWalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if p.star {
                f.write_str("*")?;
            }
            f.write_str(&p.label)?;
        }
        Ok(())
    }
}

/// Node sequence along edges of a host graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    pub nodes: Vec<NodeId>,
}

impl Walk {
    pub fn new(nodes: Vec<NodeId>) -> Self {
        Walk { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn start(&self) -> NodeId {
        self.nodes[0]
    }

    pub fn end(&self) -> NodeId {
        *self.nodes.last().unwrap()
    }

    /// Validity in a graph: consecutive nodes joined by edges, entity
    /// endpoints.
    pub fn is_valid(&self, g: &LabeledGraph) -> bool {
        if self.nodes.is_empty() {
            return false;
        }
        if !g.is_entity(self.start()) || !g.is_entity(self.end()) {
            return false;
        }
        self.nodes.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }

    pub fn meta_walk(&self, g: &LabeledGraph) -> MetaWalk {
        MetaWalk::plain(
            &self
                .nodes
                .iter()
                .map(|&n| g.label_name(g.label_of(n)))
                .collect::<Vec<_>>(),
        )
    }
}

/// The entity subsequence of a walk, as (label, value) pairs. Two walks are
/// content equivalent iff their values are equal positionwise.
pub type WalkValue = Vec<(String, String)>;

pub fn walk_value(w: &Walk, g: &LabeledGraph) -> WalkValue {
    w.nodes
        .iter()
        .filter(|&&n| g.is_entity(n))
        .map(|&n| {
            (
                g.label_name(g.label_of(n)).to_string(),
                g.value_of(n).unwrap().to_string(),
            )
        })
        .collect()
}

pub fn content_equivalent(w1: &Walk, g1: &LabeledGraph, w2: &Walk, g2: &LabeledGraph) -> bool {
    walk_value(w1, g1) == walk_value(w2, g2)
}

/// A walk is informative iff no sub-segment leaves an entity through
/// valueless nodes only and returns to that same entity.
pub fn is_informative(w: &Walk, g: &LabeledGraph) -> bool {
    let mut last_entity: Option<NodeId> = None;
    let mut gap = false;
    for &n in &w.nodes {
        if g.is_entity(n) {
            if gap && last_entity == Some(n) {
                return false;
            }
            last_entity = Some(n);
            gap = false;
        } else {
            gap = true;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WalkFilter {
    All,
    InformativeOnly,
}

/// Exhaustive depth-first enumeration of the walks matching a label
/// sequence (star flags ignored), in canonical neighbor order. `from`/`to`
/// restrict the endpoints. Errors when more than `cap` walks match.
pub fn enumerate_walks(
    g: &LabeledGraph,
    p: &MetaWalk,
    from: Option<&EntityKey>,
    to: Option<&EntityKey>,
    filter: WalkFilter,
    cap: usize,
) -> Result<Vec<Walk>> {
    let ids = p.resolve(g)?;
    let from = from.map(|k| g.entity(k)).transpose()?;
    let to = to.map(|k| g.entity(k)).transpose()?;
    enumerate_label_walks(g, &ids, from, to, filter, cap, &p.to_string())
}

/// Enumeration over a raw label-id sequence, without the entity-endpoint
/// restriction. Used internally where label sequences start or end at
/// valueless labels (Algorithm 1 extensions).
pub(crate) fn enumerate_label_walks(
    g: &LabeledGraph,
    labels: &[LabelId],
    from: Option<NodeId>,
    to: Option<NodeId>,
    filter: WalkFilter,
    cap: usize,
    ctx: &str,
) -> Result<Vec<Walk>> {
    let mut out = Vec::new();
    if labels.is_empty() {
        return Ok(out);
    }
    let starts: Vec<NodeId> = match from {
        Some(n) if g.label_of(n) == labels[0] => vec![n],
        Some(_) => return Ok(out),
        None => g.nodes_of_label(labels[0]).to_vec(),
    };
    let prune_noninformative = filter == WalkFilter::InformativeOnly;
    let mut stack = Vec::with_capacity(labels.len());
    for s in starts {
        stack.push(s);
        dfs(g, labels, to, prune_noninformative, cap, ctx, &mut stack, &mut out)?;
        stack.pop();
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &LabeledGraph,
    labels: &[LabelId],
    to: Option<NodeId>,
    prune: bool,
    cap: usize,
    ctx: &str,
    stack: &mut Vec<NodeId>,
    out: &mut Vec<Walk>,
) -> Result<()> {
    let depth = stack.len();
    if prune && violates_informative(g, stack) {
        return Ok(());
    }
    if depth == labels.len() {
        if to.map_or(true, |t| *stack.last().unwrap() == t) {
            if out.len() >= cap {
                return Err(Error::EnumerationCap {
                    metawalk: ctx.to_string(),
                    cap,
                });
            }
            out.push(Walk::new(stack.clone()));
        }
        return Ok(());
    }
    let cur = *stack.last().unwrap();
    for &n in g.neighbors(cur) {
        if g.label_of(n) == labels[depth] {
            stack.push(n);
            dfs(g, labels, to, prune, cap, ctx, stack, out)?;
            stack.pop();
        }
    }
    Ok(())
}

/// Incremental check of the informative condition on the walk prefix: only
/// the tail segment can newly violate it.
fn violates_informative(g: &LabeledGraph, prefix: &[NodeId]) -> bool {
    let (&last, rest) = match prefix.split_last() {
        Some(x) => x,
        None => return false,
    };
    if !g.is_entity(last) {
        return false;
    }
    let mut gap = false;
    for &n in rest.iter().rev() {
        if g.is_entity(n) {
            return gap && n == last;
        }
        gap = true;
    }
    false
}

/// Number of walks of a label sequence starting at a fixed node (used by
/// the maximality check). Counts raw sequence matches.
pub(crate) fn count_walks_from(g: &LabeledGraph, labels: &[LabelId], from: NodeId) -> usize {
    if labels.is_empty() || g.label_of(from) != labels[0] {
        return 0;
    }
    let mut frontier: HashMap<NodeId, usize> = HashMap::from([(from, 1)]);
    for &l in &labels[1..] {
        let mut next: HashMap<NodeId, usize> = HashMap::new();
        for (&n, &cnt) in &frontier {
            for &m in g.neighbors(n) {
                if g.label_of(m) == l {
                    *next.entry(m).or_insert(0) += cnt;
                }
            }
        }
        frontier = next;
    }
    frontier.values().sum()
}

/// Multiset of walk values of a meta-walk's walk set.
pub fn walk_value_multiset(
    g: &LabeledGraph,
    p: &MetaWalk,
    filter: WalkFilter,
    cap: usize,
) -> Result<HashMap<WalkValue, usize>> {
    let walks = enumerate_walks(g, p, None, None, filter, cap)?;
    let mut multiset = HashMap::new();
    for w in &walks {
        *multiset.entry(walk_value(w, g)).or_insert(0) += 1;
    }
    Ok(multiset)
}

/// Meta-walk content equivalence: a value-preserving bijection between the
/// two walk sets exists iff their walk-value multisets are equal (entity
/// values are unique per (label, value), so values pin walks).
pub fn metawalks_content_equivalent(
    g1: &LabeledGraph,
    p1: &MetaWalk,
    g2: &LabeledGraph,
    p2: &MetaWalk,
    filter: WalkFilter,
    cap: usize,
) -> Result<bool> {
    Ok(walk_value_multiset(g1, p1, filter, cap)? == walk_value_multiset(g2, p2, filter, cap)?)
}

/// Subwalk test: `w ⊑ x` iff the interleaved node-edge token sequence of
/// `w` is a subsequence of that of `x`. Plain node subsequences do not
/// qualify when they skip over an edge the host walk never traverses
/// (`[v1,v3]` is not a subwalk of `[v1,v2,v4,v2,v3]`).
pub fn is_subwalk(w: &Walk, x: &Walk) -> bool {
    #[derive(PartialEq)]
    enum Token {
        Node(NodeId),
        Edge(NodeId, NodeId),
    }
    fn tokens(w: &Walk) -> Vec<Token> {
        let mut t = Vec::with_capacity(2 * w.len());
        for (i, &n) in w.nodes.iter().enumerate() {
            if i > 0 {
                let p = w.nodes[i - 1];
                t.push(Token::Edge(p.min(n), p.max(n)));
            }
            t.push(Token::Node(n));
        }
        t
    }
    let (tw, tx) = (tokens(w), tokens(x));
    let mut i = 0;
    for t in &tx {
        if i < tw.len() && *t == tw[i] {
            i += 1;
        }
    }
    i == tw.len()
}

/// Definition-3 inclusion: `p_prime` includes `p` iff (1) a bijection maps
/// every walk of `p` onto a same-endpoints superwalk in `p_prime`'s walk
/// set, and (2) some entity label occurs more often in `p_prime`, with an
/// occurrence whose nearest entity labels on both sides differ from it.
/// Quantifies over informative walks.
pub fn includes(
    g: &LabeledGraph,
    p_prime: &MetaWalk,
    p: &MetaWalk,
    cap: usize,
) -> Result<bool> {
    if !occurrence_condition(g, p_prime, p)? {
        return Ok(false);
    }
    let walks_p = enumerate_walks(g, p, None, None, WalkFilter::InformativeOnly, cap)?;
    let walks_pp = enumerate_walks(g, p_prime, None, None, WalkFilter::InformativeOnly, cap)?;
    if walks_p.len() != walks_pp.len() {
        return Ok(false);
    }
    // Bipartite perfect matching over the superwalk relation.
    let adj: Vec<Vec<usize>> = walks_p
        .iter()
        .map(|w| {
            walks_pp
                .iter()
                .enumerate()
                .filter(|(_, x)| {
                    w.start() == x.start() && w.end() == x.end() && is_subwalk(w, x)
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(perfect_matching(&adj, walks_pp.len()))
}

/// Definition-3 condition (2) on the two label sequences.
fn occurrence_condition(g: &LabeledGraph, p_prime: &MetaWalk, p: &MetaWalk) -> Result<bool> {
    let entity = |label: &str| -> Result<bool> {
        Ok(g.kind_of(g.label_id(label)?) == LabelKind::Entity)
    };
    let mut count_p: HashMap<&str, usize> = HashMap::new();
    for l in p.labels() {
        if entity(l)? {
            *count_p.entry(l).or_insert(0) += 1;
        }
    }
    let mut count_pp: HashMap<&str, usize> = HashMap::new();
    for l in p_prime.labels() {
        if entity(l)? {
            *count_pp.entry(l).or_insert(0) += 1;
        }
    }
    let labels: Vec<&str> = p_prime.labels().collect();
    for (i, &l) in labels.iter().enumerate() {
        if !entity(l)? {
            continue;
        }
        if count_pp[l] <= count_p.get(l).copied().unwrap_or(0) {
            continue;
        }
        let left = labels[..i]
            .iter()
            .rev()
            .find(|&&x| entity(x).unwrap_or(false));
        let right = labels[i + 1..].iter().find(|&&x| entity(x).unwrap_or(false));
        if let (Some(&le), Some(&ri)) = (left, right) {
            if le != l && ri != l {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn perfect_matching(adj: &[Vec<usize>], right_size: usize) -> bool {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_right: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                if match_right[v].is_none()
                    || augment(match_right[v].unwrap(), adj, seen, match_right)
                {
                    match_right[v] = Some(u);
                    return true;
                }
            }
        }
        false
    }
    let mut match_right = vec![None; right_size];
    for u in 0..adj.len() {
        let mut seen = vec![false; right_size];
        if !augment(u, adj, &mut seen, &mut match_right) {
            return false;
        }
    }
    true
}

/// One candidate extension at an internal position: out-leg label sequence
/// `[l_i, l]` or `[l_i, l', l]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Extension {
    pub via: Option<LabelId>,
    pub target: LabelId,
}

/// The `S_i` candidate set at position `i` of `p`: extensions reaching an
/// entity label that differs from the nearest entity labels around `i`
/// (otherwise Definition 3's occurrence condition cannot hold for the
/// extended meta-walk).
pub(crate) fn extension_candidates(
    g: &LabeledGraph,
    ids: &[LabelId],
    i: usize,
) -> Vec<Extension> {
    let nearest_entity = |range: &mut dyn Iterator<Item = usize>| -> Option<LabelId> {
        range
            .map(|j| ids[j])
            .find(|&l| g.kind_of(l) == LabelKind::Entity)
    };
    let left = nearest_entity(&mut (0..=i).rev());
    let right = nearest_entity(&mut (i..ids.len()));
    let (left, right) = match (left, right) {
        (Some(l), Some(r)) => (l, r),
        _ => return Vec::new(),
    };

    // Label-level adjacency from the schema actually present in the graph.
    let mut direct = std::collections::BTreeSet::new();
    let mut via = std::collections::BTreeSet::new();
    for &n in g.nodes_of_label(ids[i]) {
        for &m in g.neighbors(n) {
            let lm = g.label_of(m);
            if g.kind_of(lm) == LabelKind::Entity {
                direct.insert(lm);
            } else {
                for &q in g.neighbors(m) {
                    let lq = g.label_of(q);
                    if g.kind_of(lq) == LabelKind::Entity {
                        via.insert((lm, lq));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for l in direct {
        if l != left && l != right {
            out.push(Extension { via: None, target: l });
        }
    }
    for (v, l) in via {
        if l != left && l != right {
            out.push(Extension {
                via: Some(v),
                target: l,
            });
        }
    }
    out
}

/// Builds the extended meta-walk `[l_1..l_i] · r · r⁻¹ · [l_i..l_n]`.
pub(crate) fn extended_metawalk(
    g: &LabeledGraph,
    p: &MetaWalk,
    i: usize,
    ext: &Extension,
) -> MetaWalk {
    let mut labels: Vec<String> = p.labels().take(i + 1).map(str::to_string).collect();
    if let Some(v) = ext.via {
        labels.push(g.label_name(v).to_string());
    }
    labels.push(g.label_name(ext.target).to_string());
    if let Some(v) = ext.via {
        labels.push(g.label_name(v).to_string());
    }
    labels.extend(p.labels().skip(i).map(str::to_string));
    MetaWalk::plain(&labels)
}

/// Maximality check. REJECT (false) iff some internal-position extension
/// `r` is traversed by exactly one walk of `r` from every walk's position-i
/// node and the extended meta-walk keeps the per-endpoint-pair informative
/// walk counts (so the Definition-3 bijection exists); ACCEPT otherwise.
/// Star flags are ignored. A meta-walk with no informative walk is not
/// maximal by definition.
pub fn is_maximal(g: &LabeledGraph, p: &MetaWalk, cap: usize) -> Result<bool> {
    let ids = p.resolve(g)?;
    let walks = enumerate_walks(g, p, None, None, WalkFilter::InformativeOnly, cap)?;
    if walks.is_empty() {
        return Ok(false);
    }
    let n = ids.len();
    let base_counts = crate::similarity::informative_commuting_matrix(g, &p.strip_stars())?;
    for i in 1..n.saturating_sub(1) {
        'ext: for ext in extension_candidates(g, &ids, i) {
            let mut r_labels = vec![ids[i]];
            if let Some(v) = ext.via {
                r_labels.push(v);
            }
            r_labels.push(ext.target);
            for w in &walks {
                if count_walks_from(g, &r_labels, w.nodes[i]) != 1 {
                    continue 'ext;
                }
            }
            // Every walk extends uniquely; the bijection exists iff the
            // extension also adds no other walks.
            let p_ext = extended_metawalk(g, p, i, &ext);
            let ext_counts = crate::similarity::informative_commuting_matrix(g, &p_ext)?;
            if base_counts.matrix == ext_counts.matrix {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{GraphBuilder, LabelKind};

    fn tiny() -> LabeledGraph {
        // a1 - h1 - b1, a1 - b2
        let mut b = GraphBuilder::new();
        b.declare_label("a", LabelKind::Entity).unwrap();
        b.declare_label("b", LabelKind::Entity).unwrap();
        b.declare_label("h", LabelKind::Valueless).unwrap();
        b.add_node("1", "a", Some("a1")).unwrap();
        b.add_node("2", "b", Some("b1")).unwrap();
        b.add_node("3", "h", None).unwrap();
        b.add_node("4", "b", Some("b2")).unwrap();
        b.add_edge_by_id("1", "3").unwrap();
        b.add_edge_by_id("3", "2").unwrap();
        b.add_edge_by_id("1", "4").unwrap();
        b.finish().unwrap().graph
    }

    #[test]
    fn parse_and_display_round_trip() {
        let mw = MetaWalk::parse("conf,*paper,dom,kw,dom,*paper,conf").unwrap();
        assert_eq!(mw.to_string(), "conf,*paper,dom,kw,dom,*paper,conf");
        assert!(mw.positions[1].star);
        assert!(MetaWalk::parse("*conf,paper").is_err());
        assert!(MetaWalk::parse("conf,,dom").is_err());
    }

    #[test]
    fn informative_classification() {
        let g = tiny();
        let a1 = g.entity(&EntityKey::new("a", "a1")).unwrap();
        let b1 = g.entity(&EntityKey::new("b", "b1")).unwrap();
        let h = g.node_ids().find(|&n| !g.is_entity(n)).unwrap();
        assert!(is_informative(&Walk::new(vec![a1, h, b1]), &g));
        assert!(!is_informative(&Walk::new(vec![a1, h, a1]), &g));
        assert!(!is_informative(&Walk::new(vec![b1, h, a1, h, a1]), &g));
    }

    #[test]
    fn enumeration_and_cap() {
        let g = tiny();
        let walks = enumerate_walks(
            &g,
            &MetaWalk::parse("a,h,b").unwrap(),
            None,
            None,
            WalkFilter::All,
            100,
        )
        .unwrap();
        assert_eq!(walks.len(), 1);
        let err = enumerate_walks(
            &g,
            &MetaWalk::parse("a,b").unwrap(),
            None,
            None,
            WalkFilter::All,
            0,
        );
        assert!(matches!(err, Err(Error::EnumerationCap { .. })));
    }

    #[test]
    fn subwalk_tokens() {
        let v = |i| NodeId(i);
        let w = Walk::new(vec![v(1), v(2), v(3)]);
        let x = Walk::new(vec![v(1), v(2), v(4), v(2), v(3)]);
        assert!(is_subwalk(&w, &x));
        assert!(is_subwalk(&w, &w));
        assert!(!is_subwalk(&Walk::new(vec![v(1), v(3)]), &x));
        // stretches are not subwalks: the skipped edge is never traversed
        assert!(!is_subwalk(
            &Walk::new(vec![v(1), v(3)]),
            &Walk::new(vec![v(1), v(2), v(3)])
        ));
    }
}
