//! Information-preserving graph transformations: relationship reorganizing
//! (hub insertion and dissolution, clique-to-hub) and FD-guided entity
//! rearranging. Every rule returns the transformed graph together with the
//! entity bijection it induces, and the bijection is checked to preserve
//! labels and values on every application.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, BufReader, Read};

use crate::error::{Error, Result};
use crate::fd::FunctionalDependency;
use crate::graph::{EntityKey, GraphBuilder, LabeledGraph, LabelKind, NodeId};
use crate::walk::{walk_value_multiset, MetaWalk, WalkFilter};

/// Bijection between the entity keys of a source and target graph.
#[derive(Debug, Clone, Default)]
pub struct EntityMapping {
    forward: BTreeMap<EntityKey, EntityKey>,
    backward: BTreeMap<EntityKey, EntityKey>,
}

impl EntityMapping {
    pub fn identity(g: &LabeledGraph) -> Self {
        let mut m = EntityMapping::default();
        for n in g.node_ids() {
            if let Some(k) = g.entity_key(n) {
                m.insert(k.clone(), k);
            }
        }
        m
    }

    pub fn insert(&mut self, from: EntityKey, to: EntityKey) {
        self.backward.insert(to.clone(), from.clone());
        self.forward.insert(from, to);
    }

    pub fn map(&self, key: &EntityKey) -> Result<&EntityKey> {
        self.forward.get(key).ok_or_else(|| Error::UnmappedEntity {
            label: key.label.clone(),
            value: key.value.clone(),
        })
    }

    pub fn map_back(&self, key: &EntityKey) -> Result<&EntityKey> {
        self.backward.get(key).ok_or_else(|| Error::UnmappedEntity {
            label: key.label.clone(),
            value: key.value.clone(),
        })
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&EntityKey, &EntityKey)> {
        self.forward.iter()
    }

    /// Definition-1 conditions: total over both entity sets, bijective,
    /// label- and value-preserving.
    pub fn is_entity_preserving(&self, src: &LabeledGraph, dst: &LabeledGraph) -> bool {
        let src_keys: BTreeSet<EntityKey> =
            src.node_ids().filter_map(|n| src.entity_key(n)).collect();
        let dst_keys: BTreeSet<EntityKey> =
            dst.node_ids().filter_map(|n| dst.entity_key(n)).collect();
        src_keys.len() == self.forward.len()
            && dst_keys.len() == self.backward.len()
            && src_keys.iter().all(|k| {
                self.forward
                    .get(k)
                    .map_or(false, |t| t == k && dst_keys.contains(t))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransformRule {
    /// Per center node: one fresh hub joined to the center and its
    /// neighbor-label neighbors, replacing the direct edges.
    GroupByHub {
        center: String,
        neighbor: String,
        hub: String,
    },
    /// Every triangle across three entity labels becomes a hub adjacent to
    /// the corners; the triangle edges disappear.
    CliqueToHub {
        labels: [String; 3],
        hub: String,
    },
    /// Inverse of the two rules above: hubs removed, direct edges restored.
    DissolveHub { hub: String },
    /// Moves each (pivot, other) edge to the anchor determined by the FDs.
    FdRewire {
        moved: (String, String),
        anchor: String,
    },
}

impl TransformRule {
    /// One rule per line:
    /// `group_by_hub center=<l> neighbor=<l> hub=<l>`
    /// `clique_to_hub labels=<l>,<l>,<l> hub=<l>`
    /// `dissolve_hub hub=<l>`
    /// `fd_rewire moved=<l>,<l> anchor=<l>`
    pub fn parse(line: &str) -> Result<TransformRule> {
        let mut parts = line.split_whitespace();
        let kind = parts.next().unwrap_or("");
        let mut kv = BTreeMap::new();
        for p in parts {
            match p.split_once('=') {
                Some((k, v)) => {
                    kv.insert(k.to_string(), v.to_string());
                }
                None => {
                    return Err(Error::InvalidParameter(format!(
                        "bad rule argument `{p}` in `{line}`"
                    )))
                }
            }
        }
        let take = |kv: &BTreeMap<String, String>, key: &str| -> Result<String> {
            kv.get(key).cloned().ok_or_else(|| {
                Error::InvalidParameter(format!("rule `{line}` is missing `{key}=`"))
            })
        };
        match kind {
            "group_by_hub" => Ok(TransformRule::GroupByHub {
                center: take(&kv, "center")?,
                neighbor: take(&kv, "neighbor")?,
                hub: take(&kv, "hub")?,
            }),
            "clique_to_hub" => {
                let labels = take(&kv, "labels")?;
                let ls: Vec<&str> = labels.split(',').collect();
                if ls.len() != 3 {
                    return Err(Error::InvalidParameter(format!(
                        "clique_to_hub needs exactly three labels, got `{labels}`"
                    )));
                }
                Ok(TransformRule::CliqueToHub {
                    labels: [ls[0].to_string(), ls[1].to_string(), ls[2].to_string()],
                    hub: take(&kv, "hub")?,
                })
            }
            "dissolve_hub" => Ok(TransformRule::DissolveHub {
                hub: take(&kv, "hub")?,
            }),
            "fd_rewire" => {
                let moved = take(&kv, "moved")?;
                let (a, c) = moved.split_once(',').ok_or_else(|| {
                    Error::InvalidParameter(format!("fd_rewire moved needs two labels, got `{moved}`"))
                })?;
                Ok(TransformRule::FdRewire {
                    moved: (a.to_string(), c.to_string()),
                    anchor: take(&kv, "anchor")?,
                })
            }
            other => Err(Error::InvalidParameter(format!(
                "unknown rule kind `{other}`"
            ))),
        }
    }

    pub fn parse_file(r: impl Read) -> Result<Vec<TransformRule>> {
        let mut rules = Vec::new();
        for line in BufReader::new(r).lines() {
            let line = line.map_err(|e| Error::io("<rules>", e))?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            rules.push(TransformRule::parse(line)?);
        }
        Ok(rules)
    }
}

#[derive(Debug)]
pub struct TransformReport {
    pub rule: String,
    pub nodes_added: usize,
    pub nodes_removed: usize,
    pub edges_added: usize,
    pub edges_removed: usize,
    pub collapsed_edges: usize,
    pub mapping: EntityMapping,
}

impl TransformReport {
    fn reconciles(&self, src: &LabeledGraph, dst: &LabeledGraph) -> bool {
        dst.node_count() == src.node_count() + self.nodes_added - self.nodes_removed
    }
}

/// Shared scaffolding: copies every node (and optionally the edges kept by
/// `keep_edge`) of the source graph into a builder.
struct Rebuild<'a> {
    src: &'a LabeledGraph,
    builder: GraphBuilder,
    fresh_counter: usize,
}

impl<'a> Rebuild<'a> {
    fn new(src: &'a LabeledGraph, extra_label: Option<(&str, LabelKind)>) -> Result<Self> {
        let mut builder = GraphBuilder::new();
        for name in src.label_names() {
            let kind = src.kind_of(src.label_id(name)?);
            builder.declare_label(name, kind)?;
        }
        if let Some((name, kind)) = extra_label {
            if src.has_label(name) {
                return Err(Error::HubLabelTaken(name.to_string()));
            }
            builder.declare_label(name, kind)?;
        }
        for n in src.node_ids() {
            builder.add_node(
                src.ext_id(n),
                src.label_name(src.label_of(n)),
                src.value_of(n),
            )?;
        }
        Ok(Rebuild {
            src,
            builder,
            fresh_counter: 0,
        })
    }

    fn fresh_id(&mut self, prefix: &str) -> String {
        loop {
            let id = format!("{prefix}{}", self.fresh_counter);
            self.fresh_counter += 1;
            if self.src.ext_ids().all(|e| e != id) {
                return id;
            }
        }
    }
}

fn identity_report(
    rule: &TransformRule,
    src: &LabeledGraph,
    dst: LabeledGraph,
    nodes_added: usize,
    edges_added: usize,
    edges_removed: usize,
    collapsed: usize,
    nodes_removed: usize,
) -> Result<(LabeledGraph, TransformReport)> {
    let report = TransformReport {
        rule: format!("{rule:?}"),
        nodes_added,
        nodes_removed,
        edges_added,
        edges_removed,
        collapsed_edges: collapsed,
        mapping: EntityMapping::identity(src),
    };
    debug_assert!(report.reconciles(src, &dst));
    debug_assert!(report.mapping.is_entity_preserving(src, &dst));
    Ok((dst, report))
}

/// For each `center` node with at least one `neighbor`-label edge, inserts
/// one fresh hub joined to the center and those neighbors and drops the
/// direct edges.
pub fn reorganize_group(
    g: &LabeledGraph,
    center: &str,
    neighbor: &str,
    hub: &str,
) -> Result<(LabeledGraph, TransformReport)> {
    let center_id = g.label_id(center)?;
    let neighbor_id = g.label_id(neighbor)?;
    for (label, name) in [(center_id, center), (neighbor_id, neighbor)] {
        if g.kind_of(label) != LabelKind::Entity {
            return Err(Error::InvalidParameter(format!(
                "`{name}` must be an entity label"
            )));
        }
    }
    if center == neighbor {
        return Err(Error::InvalidParameter(
            "group_by_hub needs distinct center and neighbor labels (a hub over a \
             single label cannot be dissolved unambiguously)"
            .into(),
        ));
    }
    let mut rb = Rebuild::new(g, Some((hub, LabelKind::Valueless)))?;
    let mut edges_added = 0;
    let mut edges_removed = 0;
    let mut nodes_added = 0;
    for &(a, b) in g.edges() {
        let grouped = (g.label_of(a) == center_id && g.label_of(b) == neighbor_id)
            || (g.label_of(b) == center_id && g.label_of(a) == neighbor_id);
        if grouped {
            edges_removed += 1;
        } else {
            rb.builder.add_edge_by_id(g.ext_id(a), g.ext_id(b))?;
        }
    }
    for &c in g.nodes_of_label(center_id) {
        let members: Vec<NodeId> = g
            .neighbors(c)
            .iter()
            .copied()
            .filter(|&n| g.label_of(n) == neighbor_id)
            .collect();
        if members.is_empty() {
            continue;
        }
        let hub_id = rb.fresh_id("h");
        rb.builder.add_node(&hub_id, hub, None)?;
        nodes_added += 1;
        rb.builder.add_edge_by_id(&hub_id, g.ext_id(c))?;
        edges_added += 1;
        for m in members {
            rb.builder.add_edge_by_id(&hub_id, g.ext_id(m))?;
            edges_added += 1;
        }
    }
    let dst = rb.builder.finish()?.graph;
    identity_report(
        &TransformRule::GroupByHub {
            center: center.into(),
            neighbor: neighbor.into(),
            hub: hub.into(),
        },
        g,
        dst,
        nodes_added,
        edges_added,
        edges_removed,
        0,
        0,
    )
}

/// Replaces every triangle across the three labels with a hub adjacent to
/// its corners; an edge disappears iff it lies in at least one triangle.
pub fn reorganize_clique(
    g: &LabeledGraph,
    labels: &[String; 3],
    hub: &str,
) -> Result<(LabeledGraph, TransformReport)> {
    let ids = [
        g.label_id(&labels[0])?,
        g.label_id(&labels[1])?,
        g.label_id(&labels[2])?,
    ];
    if ids[0] == ids[1] || ids[1] == ids[2] || ids[0] == ids[2] {
        return Err(Error::InvalidParameter(
            "clique_to_hub needs three distinct labels".into(),
        ));
    }
    for (i, &id) in ids.iter().enumerate() {
        if g.kind_of(id) != LabelKind::Entity {
            return Err(Error::InvalidParameter(format!(
                "`{}` must be an entity label",
                labels[i]
            )));
        }
    }
    let mut triangles: Vec<[NodeId; 3]> = Vec::new();
    for &x in g.nodes_of_label(ids[0]) {
        for &y in g.neighbors(x) {
            if g.label_of(y) != ids[1] {
                continue;
            }
            for &z in g.neighbors(y) {
                if g.label_of(z) == ids[2] && g.has_edge(z, x) {
                    triangles.push([x, y, z]);
                }
            }
        }
    }
    let mut covered: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    for t in &triangles {
        for (a, b) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
            covered.insert((a.min(b), a.max(b)));
        }
    }
    let mut rb = Rebuild::new(g, Some((hub, LabelKind::Valueless)))?;
    for &(a, b) in g.edges() {
        if !covered.contains(&(a, b)) {
            rb.builder.add_edge_by_id(g.ext_id(a), g.ext_id(b))?;
        }
    }
    for t in &triangles {
        let hub_id = rb.fresh_id("h");
        rb.builder.add_node(&hub_id, hub, None)?;
        for &corner in t {
            rb.builder.add_edge_by_id(&hub_id, g.ext_id(corner))?;
        }
    }
    let dst = rb.builder.finish()?.graph;
    identity_report(
        &TransformRule::CliqueToHub {
            labels: labels.clone(),
            hub: hub.into(),
        },
        g,
        dst,
        triangles.len(),
        3 * triangles.len(),
        covered.len(),
        0,
        0,
    )
}

/// Removes every node of the hub label, restoring the direct edges its
/// neighborhood encodes: a 3-corner clique hub restores the triangle, a
/// star hub restores center-to-member edges. Unrecognized neighborhoods are
/// refused with the node id.
pub fn dissolve_hub(g: &LabeledGraph, hub: &str) -> Result<(LabeledGraph, TransformReport)> {
    let hub_id = g.label_id(hub)?;
    if g.kind_of(hub_id) != LabelKind::Valueless {
        return Err(Error::InvalidParameter(format!(
            "`{hub}` is not a valueless label"
        )));
    }
    let mut restored: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    for &h in g.nodes_of_label(hub_id) {
        let nbrs = g.neighbors(h);
        if nbrs.iter().any(|&n| !g.is_entity(n)) {
            return Err(Error::AmbiguousHub(g.ext_id(h).to_string()));
        }
        let mut by_label: BTreeMap<&str, Vec<NodeId>> = BTreeMap::new();
        for &n in nbrs {
            by_label
                .entry(g.label_name(g.label_of(n)))
                .or_default()
                .push(n);
        }
        let edges: Vec<(NodeId, NodeId)> = match by_label.len() {
            3 if by_label.values().all(|v| v.len() == 1) => {
                let corners: Vec<NodeId> = by_label.values().map(|v| v[0]).collect();
                vec![
                    (corners[0], corners[1]),
                    (corners[1], corners[2]),
                    (corners[2], corners[0]),
                ]
            }
            2 => {
                let mut sides: Vec<&Vec<NodeId>> = by_label.values().collect();
                sides.sort_by_key(|v| v.len());
                let (small, large) = (sides[0], sides[1]);
                if small.len() != 1 {
                    return Err(Error::AmbiguousHub(g.ext_id(h).to_string()));
                }
                let center = small[0];
                large.iter().map(|&m| (center, m)).collect()
            }
            _ => return Err(Error::AmbiguousHub(g.ext_id(h).to_string())),
        };
        restored.extend(edges.iter().map(|&(a, b)| (a.min(b), a.max(b))));
    }

    let mut builder = GraphBuilder::new();
    for name in g.label_names() {
        if name != hub {
            builder.declare_label(name, g.kind_of(g.label_id(name)?))?;
        }
    }
    let mut nodes_removed = 0;
    for n in g.node_ids() {
        if g.label_of(n) == hub_id {
            nodes_removed += 1;
        } else {
            builder.add_node(g.ext_id(n), g.label_name(g.label_of(n)), g.value_of(n))?;
        }
    }
    let mut edges_removed = 0;
    let mut kept: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    for &(a, b) in g.edges() {
        if g.label_of(a) == hub_id || g.label_of(b) == hub_id {
            edges_removed += 1;
        } else {
            kept.insert((a, b));
            builder.add_edge_by_id(g.ext_id(a), g.ext_id(b))?;
        }
    }
    let mut edges_added = 0;
    for &(a, b) in &restored {
        if !kept.contains(&(a, b)) {
            builder.add_edge_by_id(g.ext_id(a), g.ext_id(b))?;
            edges_added += 1;
        }
    }
    let dst = builder.finish()?.graph;
    identity_report(
        &TransformRule::DissolveHub { hub: hub.into() },
        g,
        dst,
        0,
        edges_added,
        edges_removed,
        restored.len() - edges_added,
        nodes_removed,
    )
}

/// FD-guided entity rearrangement: every (pivot, other) edge is re-anchored
/// at the anchor label. With FD pivot→anchor each edge contracts onto the
/// unique anchor (duplicates collapse); with FD anchor→pivot each edge fans
/// out over the full preimage, which must be non-empty.
pub fn rearrange(
    g: &LabeledGraph,
    fds: &[FunctionalDependency],
    moved: (&str, &str),
    anchor: &str,
) -> Result<(LabeledGraph, TransformReport)> {
    let (pivot, other) = moved;
    let pivot_id = g.label_id(pivot)?;
    let other_id = g.label_id(other)?;
    let anchor_id = g.label_id(anchor)?;
    let has_fd = |a: &str, b: &str| fds.iter().any(|f| f.lhs == a && f.rhs == b);
    let contract = has_fd(pivot, anchor);
    let expand = has_fd(anchor, pivot);
    if !contract && !expand {
        return Err(Error::FdPrecondition(format!(
            "no FD between `{pivot}` and `{anchor}` justifies the move"
        )));
    }
    if !(has_fd(pivot, other) || has_fd(anchor, other)) {
        return Err(Error::FdPrecondition(format!(
            "neither `{pivot}` nor `{anchor}` determines `{other}`"
        )));
    }

    // pivot ↦ anchors along direct pivot–anchor edges.
    let anchors_of = |p: NodeId| -> Vec<NodeId> {
        g.neighbors(p)
            .iter()
            .copied()
            .filter(|&n| g.label_of(n) == anchor_id)
            .collect()
    };

    let mut builder = GraphBuilder::new();
    for name in g.label_names() {
        builder.declare_label(name, g.kind_of(g.label_id(name)?))?;
    }
    for n in g.node_ids() {
        builder.add_node(g.ext_id(n), g.label_name(g.label_of(n)), g.value_of(n))?;
    }
    let mut new_edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    let mut edges_removed = 0;
    let mut moved_total = 0;
    for &(a, b) in g.edges() {
        let (p, o) = if g.label_of(a) == pivot_id && g.label_of(b) == other_id {
            (a, b)
        } else if g.label_of(b) == pivot_id && g.label_of(a) == other_id {
            (b, a)
        } else {
            new_edges.insert((a, b));
            continue;
        };
        edges_removed += 1;
        let anchors = anchors_of(p);
        if contract && anchors.len() != 1 {
            return Err(Error::FdPrecondition(format!(
                "pivot `{}` has {} anchors of label `{anchor}`, need exactly 1",
                g.ext_id(p),
                anchors.len()
            )));
        }
        if anchors.is_empty() {
            return Err(Error::FdPrecondition(format!(
                "pivot `{}` has no anchor of label `{anchor}`; the edge to `{}` would be lost",
                g.ext_id(p),
                g.ext_id(o)
            )));
        }
        for an in anchors {
            moved_total += 1;
            new_edges.insert((an.min(o), an.max(o)));
        }
    }
    let edges_added = new_edges.len() + edges_removed - g.edge_count();
    let collapsed = moved_total - edges_added;
    for &(a, b) in &new_edges {
        builder.add_edge_by_id(g.ext_id(a), g.ext_id(b))?;
    }
    let dst = builder.finish()?.graph;
    identity_report(
        &TransformRule::FdRewire {
            moved: (pivot.into(), other.into()),
            anchor: anchor.into(),
        },
        g,
        dst,
        0,
        edges_added,
        edges_removed,
        collapsed,
        0,
    )
}

/// Applies one rule.
pub fn apply_rule(
    g: &LabeledGraph,
    fds: &[FunctionalDependency],
    rule: &TransformRule,
) -> Result<(LabeledGraph, TransformReport)> {
    match rule {
        TransformRule::GroupByHub {
            center,
            neighbor,
            hub,
        } => reorganize_group(g, center, neighbor, hub),
        TransformRule::CliqueToHub { labels, hub } => reorganize_clique(g, labels, hub),
        TransformRule::DissolveHub { hub } => dissolve_hub(g, hub),
        TransformRule::FdRewire { moved, anchor } => {
            rearrange(g, fds, (&moved.0, &moved.1), anchor)
        }
    }
}

/// Applies a rule sequence, composing the entity mappings.
pub fn apply_rules(
    g: &LabeledGraph,
    fds: &[FunctionalDependency],
    rules: &[TransformRule],
) -> Result<(LabeledGraph, EntityMapping, Vec<TransformReport>)> {
    let mut current = g.clone();
    let mut mapping = EntityMapping::identity(g);
    let mut reports = Vec::new();
    for rule in rules {
        let (next, report) = apply_rule(&current, fds, rule)?;
        let mut composed = EntityMapping::default();
        for (from, mid) in mapping.iter() {
            composed.insert(from.clone(), report.mapping.map(mid)?.clone());
        }
        mapping = composed;
        current = next;
        reports.push(report);
    }
    Ok((current, mapping, reports))
}

#[derive(Debug)]
pub struct PreservationReport {
    pub entity_preserving: bool,
    /// Meta-walks of either side with no content-equivalent maximal
    /// counterpart on the other, with one differing walk value each.
    pub unmatched: Vec<(String, String)>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.entity_preserving && self.unmatched.is_empty()
    }
}

/// Desk-scale similarity-preservation check: the mapping must be entity
/// preserving, and every maximal meta-walk (≤ `max_metawalk_size`) of each
/// graph must have a content-equivalent maximal meta-walk on the other
/// side.
pub fn verify_similarity_preserving(
    src: &LabeledGraph,
    dst: &LabeledGraph,
    mapping: &EntityMapping,
    max_metawalk_size: usize,
    cap: usize,
) -> Result<PreservationReport> {
    let entity_preserving = mapping.is_entity_preserving(src, dst);
    let mut unmatched = Vec::new();
    for (a, b) in [(src, dst), (dst, src)] {
        for p in maximal_metawalks(a, max_metawalk_size, cap)? {
            let values = walk_value_multiset(a, &p, WalkFilter::InformativeOnly, cap)?;
            let mut found = false;
            // The counterpart has the same entity-label subsequence; search
            // meta-walks of the other graph up to twice the length (hubs may
            // stretch every entity adjacency by one valueless node).
            for q in candidate_counterparts(b, &p, 2 * p.len())? {
                if walk_value_multiset(b, &q, WalkFilter::InformativeOnly, cap)? == values {
                    found = true;
                    break;
                }
            }
            if !found {
                let sample = values
                    .keys()
                    .next()
                    .map(|v| {
                        v.iter()
                            .map(|(l, x)| format!("{l}:{x}"))
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .unwrap_or_default();
                unmatched.push((p.to_string(), sample));
            }
        }
    }
    Ok(PreservationReport {
        entity_preserving,
        unmatched,
    })
}

/// All maximal meta-walks of the graph up to a size cap.
pub fn maximal_metawalks(
    g: &LabeledGraph,
    max_size: usize,
    cap: usize,
) -> Result<Vec<MetaWalk>> {
    let mut out = Vec::new();
    for seq in crate::store::schema_sequences(g, max_size) {
        if g.kind_of(seq[0]) != LabelKind::Entity
            || g.kind_of(*seq.last().unwrap()) != LabelKind::Entity
        {
            continue;
        }
        let labels: Vec<&str> = seq.iter().map(|&l| g.label_name(l)).collect();
        let p = MetaWalk::plain(&labels);
        if crate::walk::is_maximal(g, &p, cap)? {
            out.push(p);
        }
    }
    // single-label meta-walks
    for l in g.entity_labels() {
        let p = MetaWalk::plain(&[l]);
        if !g.nodes_of_label(g.label_id(l)?).is_empty() && crate::walk::is_maximal(g, &p, cap)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// Meta-walks of `g` whose entity-label subsequence matches `p`'s, up to a
/// length bound: the only candidates for content equivalence with `p`.
/// Labels of `p` unknown to `g` are assumed valueless (hub labels differ
/// across representations; entity labels are shared between
/// entity-preserving pairs).
pub fn candidate_counterparts(
    g: &LabeledGraph,
    p: &MetaWalk,
    max_len: usize,
) -> Result<Vec<MetaWalk>> {
    let is_entity =
        |l: &str| g.has_label(l) && g.kind_of(g.label_id(l).unwrap()) == LabelKind::Entity;
    let entity_seq: Vec<&str> = p.labels().filter(|l| is_entity(l)).collect();
    let mut out = Vec::new();
    if entity_seq.len() == 1 {
        out.push(MetaWalk::plain(&entity_seq));
    }
    for seq in crate::store::schema_sequences(g, max_len) {
        let labels: Vec<&str> = seq.iter().map(|&l| g.label_name(l)).collect();
        let ent: Vec<&str> = labels.iter().copied().filter(|l| is_entity(l)).collect();
        if ent == entity_seq
            && g.kind_of(seq[0]) == LabelKind::Entity
            && g.kind_of(*seq.last().unwrap()) == LabelKind::Entity
        {
            out.push(MetaWalk::plain(&labels));
        }
    }
    Ok(out)
}
