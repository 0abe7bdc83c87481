//! Immutable labeled-graph storage: ingestion, validation, adjacency
//! extraction and degree-based workload sampling.
//!
//! Nodes carry a label and, for entity labels, a value. Valueless labels
//! encode relationships (hubs such as `starring`). Graphs are simple and
//! undirected, and frozen after construction: transformations build new
//! graphs instead of mutating.

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelKind {
    Entity,
    Valueless,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

/// A (label, value) pair identifying one entity node within a graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EntityKey {
    pub label: String,
    pub value: String,
}

impl EntityKey {
    pub fn new(label: impl Into<String>, value: impl Into<String>) -> Self {
        EntityKey {
            label: label.into(),
            value: value.into(),
        }
    }

    /// Parses the `label:value` form used across CLI flags and TSV files.
    pub fn parse(s: &str) -> Result<Self> {
        match s.split_once(':') {
            Some((l, v)) if !l.is_empty() && !v.is_empty() => Ok(EntityKey::new(l, v)),
            _ => Err(Error::InvalidParameter(format!(
                "expected label:value, got `{s}`"
            ))),
        }
    }
}

impl fmt::Display for EntityKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.label, self.value)
    }
}

#[derive(Debug, Clone)]
struct NodeData {
    ext_id: String,
    label: LabelId,
    value: Option<String>,
}

#[derive(Debug, Clone)]
struct LabelData {
    name: String,
    kind: LabelKind,
}

/// Immutable simple undirected graph with labeled, optionally valued nodes.
#[derive(Debug, Clone)]
pub struct LabeledGraph {
    labels: Vec<LabelData>,
    label_by_name: HashMap<String, LabelId>,
    nodes: Vec<NodeData>,
    node_by_ext_id: HashMap<String, NodeId>,
    entity_index: HashMap<(LabelId, String), NodeId>,
    /// Neighbor lists sorted by canonical node rank.
    adj: Vec<Vec<NodeId>>,
    edges: Vec<(NodeId, NodeId)>,
    /// Per-label node lists in matrix order: entities sorted by value,
    /// valueless nodes in ingestion order.
    label_nodes: Vec<Vec<NodeId>>,
    /// Position of each node within its label list.
    label_pos: Vec<u32>,
}

/// Result of a validated load: the graph plus non-fatal diagnostics.
#[derive(Debug)]
pub struct Loaded {
    pub graph: LabeledGraph,
    pub warnings: Vec<String>,
}

#[derive(Debug, Default)]
pub struct GraphBuilder {
    labels: Vec<LabelData>,
    label_by_name: HashMap<String, LabelId>,
    nodes: Vec<NodeData>,
    node_by_ext_id: HashMap<String, NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare_label(&mut self, name: &str, kind: LabelKind) -> Result<LabelId> {
        if self.label_by_name.contains_key(name) {
            return Err(Error::DuplicateLabel(name.to_string()));
        }
        let id = LabelId(self.labels.len() as u32);
        self.labels.push(LabelData {
            name: name.to_string(),
            kind,
        });
        self.label_by_name.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn add_node(&mut self, ext_id: &str, label: &str, value: Option<&str>) -> Result<NodeId> {
        let lid = *self
            .label_by_name
            .get(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
        if self.node_by_ext_id.contains_key(ext_id) {
            return Err(Error::DuplicateNodeId(ext_id.to_string()));
        }
        match (self.labels[lid.0 as usize].kind, value) {
            (LabelKind::Entity, None) => return Err(Error::EntityWithoutValue(ext_id.to_string())),
            (LabelKind::Valueless, Some(_)) => {
                return Err(Error::ValuelessWithValue(ext_id.to_string()))
            }
            _ => {}
        }
        let id = NodeId(self.nodes.len() as u32);
        self.nodes.push(NodeData {
            ext_id: ext_id.to_string(),
            label: lid,
            value: value.map(|v| v.to_string()),
        });
        self.node_by_ext_id.insert(ext_id.to_string(), id);
        Ok(id)
    }

    pub fn add_edge_by_id(&mut self, a: &str, b: &str) -> Result<()> {
        let &na = self
            .node_by_ext_id
            .get(a)
            .ok_or_else(|| Error::UnknownNodeId(a.to_string()))?;
        let &nb = self
            .node_by_ext_id
            .get(b)
            .ok_or_else(|| Error::UnknownNodeId(b.to_string()))?;
        self.edges.push((na, nb));
        Ok(())
    }

    pub fn finish(self) -> Result<Loaded> {
        let GraphBuilder {
            labels,
            label_by_name,
            nodes,
            node_by_ext_id,
            edges,
        } = self;

        let mut entity_index = HashMap::new();
        for (i, n) in nodes.iter().enumerate() {
            if let Some(v) = &n.value {
                if entity_index
                    .insert((n.label, v.clone()), NodeId(i as u32))
                    .is_some()
                {
                    return Err(Error::DuplicateEntity {
                        label: labels[n.label.0 as usize].name.clone(),
                        value: v.clone(),
                    });
                }
            }
        }

        let mut adj: Vec<Vec<NodeId>> = vec![Vec::new(); nodes.len()];
        let mut seen = std::collections::HashSet::new();
        let mut canonical_edges = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            if a == b {
                return Err(Error::SelfLoop(nodes[a.0 as usize].ext_id.clone()));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(
                    nodes[a.0 as usize].ext_id.clone(),
                    nodes[b.0 as usize].ext_id.clone(),
                ));
            }
            adj[a.0 as usize].push(b);
            adj[b.0 as usize].push(a);
            canonical_edges.push(key);
        }

        // Matrix order per label: entities by value, valueless by ingestion.
        let mut label_nodes: Vec<Vec<NodeId>> = vec![Vec::new(); labels.len()];
        for (i, n) in nodes.iter().enumerate() {
            label_nodes[n.label.0 as usize].push(NodeId(i as u32));
        }
        for (lid, list) in label_nodes.iter_mut().enumerate() {
            if labels[lid].kind == LabelKind::Entity {
                list.sort_by(|a, b| {
                    nodes[a.0 as usize]
                        .value
                        .as_deref()
                        .cmp(&nodes[b.0 as usize].value.as_deref())
                });
            }
        }
        let mut label_pos = vec![0u32; nodes.len()];
        for list in &label_nodes {
            for (pos, n) in list.iter().enumerate() {
                label_pos[n.0 as usize] = pos as u32;
            }
        }

        // Canonical neighbor order: by (label name, position within label).
        let rank = |n: NodeId| {
            let nd = &nodes[n.0 as usize];
            (
                labels[nd.label.0 as usize].name.clone(),
                label_pos[n.0 as usize],
            )
        };
        for list in adj.iter_mut() {
            list.sort_by_key(|&n| rank(n));
        }
        canonical_edges.sort();

        let mut warnings = Vec::new();
        let graph = LabeledGraph {
            labels,
            label_by_name,
            nodes,
            node_by_ext_id,
            entity_index,
            adj,
            edges: canonical_edges,
            label_nodes,
            label_pos,
        };
        for n in graph.node_ids() {
            if graph.kind_of(graph.label_of(n)) == LabelKind::Valueless
                && !graph.valueless_links_entities(n)
            {
                warnings.push(format!(
                    "valueless node `{}` is not on a path between two distinct entities",
                    graph.ext_id(n)
                ));
            }
        }
        Ok(Loaded { graph, warnings })
    }
}

impl LabeledGraph {
    pub fn builder() -> GraphBuilder {
        GraphBuilder::new()
    }

    /// Loads a graph from the TSV streams described in the file formats:
    /// label declarations (`label <TAB> entity|valueless`), nodes
    /// (`id <TAB> label[ <TAB> value]`) and edges (`src <TAB> dst`).
    pub fn load(
        labels: impl Read,
        nodes: impl Read,
        edges: impl Read,
    ) -> Result<Loaded> {
        let mut b = GraphBuilder::new();
        for (lineno, line) in BufReader::new(labels).lines().enumerate() {
            let line = line.map_err(|e| Error::io("<labels>", e))?;
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split('\t');
            match (parts.next(), parts.next(), parts.next()) {
                (Some(name), Some(kind), None) => {
                    let kind = match kind {
                        "entity" => LabelKind::Entity,
                        "valueless" => LabelKind::Valueless,
                        other => {
                            return Err(Error::MalformedLine {
                                file: "<labels>".into(),
                                line: lineno + 1,
                                msg: format!("unknown kind `{other}`"),
                            })
                        }
                    };
                    b.declare_label(name, kind)?;
                }
                _ => {
                    return Err(Error::MalformedLine {
                        file: "<labels>".into(),
                        line: lineno + 1,
                        msg: "expected `label<TAB>entity|valueless`".into(),
                    })
                }
            }
        }
        for (lineno, line) in BufReader::new(nodes).lines().enumerate() {
            let line = line.map_err(|e| Error::io("<nodes>", e))?;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                [id, label] => b.add_node(id, label, None)?,
                [id, label, value] => b.add_node(id, label, Some(value))?,
                _ => {
                    return Err(Error::MalformedLine {
                        file: "<nodes>".into(),
                        line: lineno + 1,
                        msg: "expected `id<TAB>label[<TAB>value]`".into(),
                    })
                }
            };
        }
        for (lineno, line) in BufReader::new(edges).lines().enumerate() {
            let line = line.map_err(|e| Error::io("<edges>", e))?;
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split('\t');
            match (parts.next(), parts.next(), parts.next()) {
                (Some(a), Some(b2), None) => b.add_edge_by_id(a, b2)?,
                _ => {
                    return Err(Error::MalformedLine {
                        file: "<edges>".into(),
                        line: lineno + 1,
                        msg: "expected `src_id<TAB>dst_id`".into(),
                    })
                }
            }
        }
        b.finish()
    }

    pub fn load_from_dir(dir: impl AsRef<Path>) -> Result<Loaded> {
        let dir = dir.as_ref();
        let open = |name: &str| -> Result<std::fs::File> {
            let p = dir.join(name);
            std::fs::File::open(&p).map_err(|e| Error::io(p.display().to_string(), e))
        };
        Self::load(open("labels.tsv")?, open("nodes.tsv")?, open("edges.tsv")?)
    }

    /// Canonical serializer: labels, nodes and edges sorted by id so that
    /// load ∘ serialize is the identity byte-for-byte.
    pub fn serialize(
        &self,
        mut labels: impl Write,
        mut nodes: impl Write,
        mut edges: impl Write,
    ) -> std::io::Result<()> {
        let mut label_rows: Vec<&LabelData> = self.labels.iter().collect();
        label_rows.sort_by(|a, b| a.name.cmp(&b.name));
        for l in label_rows {
            let kind = match l.kind {
                LabelKind::Entity => "entity",
                LabelKind::Valueless => "valueless",
            };
            writeln!(labels, "{}\t{}", l.name, kind)?;
        }
        let mut node_rows: Vec<&NodeData> = self.nodes.iter().collect();
        node_rows.sort_by(|a, b| a.ext_id.cmp(&b.ext_id));
        for n in node_rows {
            match &n.value {
                Some(v) => writeln!(
                    nodes,
                    "{}\t{}\t{}",
                    n.ext_id,
                    self.labels[n.label.0 as usize].name,
                    v
                )?,
                None => writeln!(
                    nodes,
                    "{}\t{}",
                    n.ext_id,
                    self.labels[n.label.0 as usize].name
                )?,
            }
        }
        let mut edge_rows: Vec<(&str, &str)> = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (ia, ib) = (self.ext_id(a), self.ext_id(b));
                if ia <= ib {
                    (ia, ib)
                } else {
                    (ib, ia)
                }
            })
            .collect();
        edge_rows.sort();
        for (a, b) in edge_rows {
            writeln!(edges, "{a}\t{b}")?;
        }
        Ok(())
    }

    pub fn save_to_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
        let create = |name: &str| -> Result<std::fs::File> {
            let p = dir.join(name);
            std::fs::File::create(&p).map_err(|e| Error::io(p.display().to_string(), e))
        };
        self.serialize(create("labels.tsv")?, create("nodes.tsv")?, create("edges.tsv")?)
            .map_err(|e| Error::io(dir.display().to_string(), e))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn label_names(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(|l| l.name.as_str())
    }

    pub fn label_id(&self, name: &str) -> Result<LabelId> {
        self.label_by_name
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    pub fn has_label(&self, name: &str) -> bool {
        self.label_by_name.contains_key(name)
    }

    pub fn label_name(&self, id: LabelId) -> &str {
        &self.labels[id.0 as usize].name
    }

    pub fn kind_of(&self, id: LabelId) -> LabelKind {
        self.labels[id.0 as usize].kind
    }

    pub fn label_of(&self, n: NodeId) -> LabelId {
        self.nodes[n.0 as usize].label
    }

    pub fn is_entity(&self, n: NodeId) -> bool {
        self.kind_of(self.label_of(n)) == LabelKind::Entity
    }

    pub fn value_of(&self, n: NodeId) -> Option<&str> {
        self.nodes[n.0 as usize].value.as_deref()
    }

    pub fn ext_id(&self, n: NodeId) -> &str {
        &self.nodes[n.0 as usize].ext_id
    }

    pub fn node_by_id(&self, ext_id: &str) -> Option<NodeId> {
        self.node_by_ext_id.get(ext_id).copied()
    }

    pub fn ext_ids(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(|n| n.ext_id.as_str())
    }

    pub fn neighbors(&self, n: NodeId) -> &[NodeId] {
        &self.adj[n.0 as usize]
    }

    pub fn degree(&self, n: NodeId) -> usize {
        self.adj[n.0 as usize].len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).is_ok()
    }

    /// Nodes of a label in matrix order.
    pub fn nodes_of_label(&self, l: LabelId) -> &[NodeId] {
        &self.label_nodes[l.0 as usize]
    }

    /// Row/column index of a node inside its label's matrix ordering.
    pub fn label_position(&self, n: NodeId) -> usize {
        self.label_pos[n.0 as usize] as usize
    }

    pub fn entity_key(&self, n: NodeId) -> Option<EntityKey> {
        self.value_of(n).map(|v| EntityKey {
            label: self.label_name(self.label_of(n)).to_string(),
            value: v.to_string(),
        })
    }

    pub fn entity(&self, key: &EntityKey) -> Result<NodeId> {
        let lid = self.label_id(&key.label)?;
        self.entity_index
            .get(&(lid, key.value.clone()))
            .copied()
            .ok_or_else(|| Error::UnknownEntity {
                label: key.label.clone(),
                value: key.value.clone(),
            })
    }

    pub fn entity_labels(&self) -> impl Iterator<Item = &str> {
        self.labels
            .iter()
            .filter(|l| l.kind == LabelKind::Entity)
            .map(|l| l.name.as_str())
    }

    /// 0/1 adjacency between the nodes of two labels, under the documented
    /// per-label node ordering. Rows are `l1` nodes, columns `l2` nodes.
    pub fn adjacency(&self, l1: &str, l2: &str) -> Result<SparseMatrix> {
        let a = self.label_id(l1)?;
        let b = self.label_id(l2)?;
        let rows = self.label_nodes[a.0 as usize].len();
        let cols = self.label_nodes[b.0 as usize].len();
        let mut triplets = Vec::new();
        for (i, &n) in self.label_nodes[a.0 as usize].iter().enumerate() {
            for &m in self.neighbors(n) {
                if self.label_of(m) == b {
                    triplets.push((i, self.label_position(m), 1u64));
                }
            }
        }
        Ok(SparseMatrix::from_triplets(rows, cols, triplets))
    }

    /// Draws `k` distinct entities of `label` with probability proportional
    /// to node degree; deterministic for a fixed seed.
    pub fn degree_sample(&self, label: &str, k: usize, seed: u64) -> Result<Vec<EntityKey>> {
        let lid = self.label_id(label)?;
        if self.kind_of(lid) != LabelKind::Entity {
            return Err(Error::InvalidParameter(format!(
                "label `{label}` is not an entity label"
            )));
        }
        let pool = self.nodes_of_label(lid);
        if pool.len() < k {
            return Err(Error::NotEnoughCandidates {
                label: label.to_string(),
                requested: k,
                available: pool.len(),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut taken = vec![false; pool.len()];
        let mut picked = Vec::with_capacity(k);
        for _ in 0..k {
            let weights: Vec<f64> = pool
                .iter()
                .enumerate()
                .map(|(i, &n)| if taken[i] { 0.0 } else { self.degree(n) as f64 })
                .collect();
            let total: f64 = weights.iter().sum();
            let idx = if total > 0.0 {
                WeightedIndex::new(&weights)
                    .expect("positive total weight")
                    .sample(&mut rng)
            } else {
                // Remaining candidates all have degree 0: take the first
                // unpicked one in label order.
                taken.iter().position(|&t| !t).unwrap()
            };
            taken[idx] = true;
            picked.push(self.entity_key(pool[idx]).expect("entity label"));
        }
        Ok(picked)
    }

    /// The data-model assumption that valueless nodes sit on a path between
    /// two distinct entities; violations load with a warning.
    fn valueless_links_entities(&self, n: NodeId) -> bool {
        // BFS through valueless nodes, collecting reachable entities.
        let mut seen = std::collections::HashSet::from([n]);
        let mut queue = std::collections::VecDeque::from([n]);
        let mut entities = std::collections::HashSet::new();
        while let Some(cur) = queue.pop_front() {
            for &m in self.neighbors(cur) {
                if self.is_entity(m) {
                    entities.insert(m);
                    if entities.len() >= 2 {
                        return true;
                    }
                } else if seen.insert(m) {
                    queue.push_back(m);
                }
            }
        }
        false
    }
}
