//! Precomputed commuting matrices: short meta-walks are materialized once
//! and concatenated at query time into the matrix of a longer meta-walk.
//!
//! On disk the store is one binary file per (meta-walk, mode) plus a TSV
//! index; all integers little-endian fixed width, entries sorted, so equal
//! inputs produce byte-identical stores.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, LabelId, LabelKind};
use crate::matrix::SparseMatrix;
use crate::similarity::{
    informative_commuting_matrix, raw_product, CommutingMatrix, MatrixMode, MatrixProvider,
};
use crate::walk::MetaWalk;

#[derive(Debug)]
pub struct MatrixStore {
    max_size: usize,
    raw: BTreeMap<String, CommutingMatrix>,
    informative: BTreeMap<String, CommutingMatrix>,
}

impl MatrixStore {
    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn raw_keys(&self) -> impl Iterator<Item = &str> {
        self.raw.keys().map(String::as_str)
    }

    pub fn informative_keys(&self) -> impl Iterator<Item = &str> {
        self.informative.keys().map(String::as_str)
    }

    pub fn stored_raw(&self, text: &str) -> Option<&CommutingMatrix> {
        self.raw.get(text)
    }

    pub fn stored_informative(&self, text: &str) -> Option<&CommutingMatrix> {
        self.informative.get(text)
    }

    /// Materializes raw matrices for every label sequence of size 2..=max_size
    /// with at least one walk, plus informative matrices for those with
    /// entity endpoints. Independent meta-walks are evaluated in parallel.
    pub fn precompute(g: &LabeledGraph, max_size: usize) -> Result<MatrixStore> {
        if max_size < 2 {
            return Err(Error::InvalidParameter(format!(
                "precompute max_size must be at least 2, got {max_size}"
            )));
        }
        let sequences = schema_sequences(g, max_size);
        let computed: Vec<(String, CommutingMatrix, Option<CommutingMatrix>)> = sequences
            .par_iter()
            .map(|seq| -> Result<_> {
                let labels: Vec<&str> = seq.iter().map(|&l| g.label_name(l)).collect();
                let mw = MetaWalk::plain(&labels);
                let text = mw.to_string();
                let raw = raw_product(g, seq, &text)?;
                if raw.is_zero() {
                    return Ok(None);
                }
                let entity_ends = g.kind_of(seq[0]) == LabelKind::Entity
                    && g.kind_of(*seq.last().unwrap()) == LabelKind::Entity;
                let informative = if entity_ends {
                    Some(informative_commuting_matrix(g, &mw)?)
                } else {
                    None
                };
                Ok(Some((
                    text,
                    CommutingMatrix {
                        row_label: labels[0].to_string(),
                        col_label: labels.last().unwrap().to_string(),
                        mode: MatrixMode::Raw,
                        matrix: raw,
                    },
                    informative,
                )))
            })
            .filter_map(|r| r.transpose())
            .collect::<Result<_>>()?;
        let mut store = MatrixStore {
            max_size,
            raw: BTreeMap::new(),
            informative: BTreeMap::new(),
        };
        for (text, raw, inf) in computed {
            store.raw.insert(text.clone(), raw);
            if let Some(inf) = inf {
                store.informative.insert(text, inf);
            }
        }
        Ok(store)
    }

    /// Greedy longest-stored-prefix composition of the raw matrix of a label
    /// sequence. Errors with the first missing segment.
    fn compose_sequence(&self, g: &LabeledGraph, seq: &[LabelId], ctx: &str) -> Result<SparseMatrix> {
        if seq.len() == 1 {
            return Ok(SparseMatrix::identity(g.nodes_of_label(seq[0]).len()));
        }
        let text_of = |part: &[LabelId]| {
            part.iter()
                .map(|&l| g.label_name(l))
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut acc: Option<SparseMatrix> = None;
        let mut pos = 0;
        while pos + 1 < seq.len() {
            let max_end = (pos + self.max_size - 1).min(seq.len() - 1);
            let found = (pos + 1..=max_end).rev().find_map(|end| {
                self.raw
                    .get(&text_of(&seq[pos..=end]))
                    .map(|m| (end, &m.matrix))
            });
            let (end, m) = found.ok_or_else(|| Error::Undecomposable {
                metawalk: ctx.to_string(),
                segment: text_of(&seq[pos..=(pos + 1).min(seq.len() - 1)]),
            })?;
            acc = Some(match acc {
                None => m.clone(),
                Some(a) => a.multiply(m, ctx)?,
            });
            pos = end;
        }
        Ok(acc.expect("non-trivial sequence"))
    }

    /// Composes the informative, star-aware matrix of `p` from stored
    /// segments: raw sub-products inside each entity-to-entity segment,
    /// diagonal corrections at same-entity-label junctions, starred runs
    /// booleanized — exactly as direct computation would.
    pub fn compose(&self, g: &LabeledGraph, p: &MetaWalk) -> Result<CommutingMatrix> {
        let ids = p.resolve(g)?;
        let ctx = p.to_string();
        let entity_pos: Vec<usize> = (0..ids.len())
            .filter(|&i| g.kind_of(ids[i]) == LabelKind::Entity)
            .collect();
        let mut result = SparseMatrix::identity(g.nodes_of_label(ids[0]).len());
        let segments: Vec<(usize, usize)> = entity_pos.windows(2).map(|w| (w[0], w[1])).collect();
        let mut seg_idx = 0;
        while seg_idx < segments.len() {
            let mut end_idx = seg_idx;
            let mut starred = false;
            while end_idx < segments.len() && p.positions[segments[end_idx].1].star {
                starred = true;
                end_idx += 1;
            }
            let last = end_idx.min(segments.len() - 1);
            let mut block: Option<SparseMatrix> = None;
            for &(s, e) in &segments[seg_idx..=last] {
                let mut m = self.compose_sequence(g, &ids[s..=e], &ctx)?;
                if ids[s] == ids[e] {
                    m = m.without_diagonal();
                }
                block = Some(match block {
                    None => m,
                    Some(b) => b.multiply(&m, &ctx)?,
                });
            }
            let mut block = block.expect("segment run is non-empty");
            if starred {
                block = block.booleanized();
            }
            result = result.multiply(&block, &ctx)?;
            seg_idx = last + 1;
        }
        Ok(CommutingMatrix {
            row_label: p.first_label().to_string(),
            col_label: p.last_label().to_string(),
            mode: MatrixMode::Informative,
            matrix: result,
        })
    }

    /// Raw (all-walk) composition for PathSim queries.
    pub fn compose_raw(&self, g: &LabeledGraph, p: &MetaWalk) -> Result<CommutingMatrix> {
        if p.has_stars() {
            return Err(Error::InvalidMetaWalk(format!(
                "star labels are not allowed in a plain commuting matrix: {p}"
            )));
        }
        let ids = p.resolve(g)?;
        let matrix = self.compose_sequence(g, &ids, &p.to_string())?;
        Ok(CommutingMatrix {
            row_label: p.first_label().to_string(),
            col_label: p.last_label().to_string(),
            mode: MatrixMode::Raw,
            matrix,
        })
    }

    pub fn save_to_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir.display().to_string(), e))?;
        let mut index = String::new();
        index.push_str(&format!("#max_size\t{}\n", self.max_size));
        let mut counter = 0usize;
        let mut write_one = |text: &str, m: &CommutingMatrix| -> Result<()> {
            let name = format!("{counter:06}.cmx");
            counter += 1;
            let path = dir.join(&name);
            let mut f = std::fs::File::create(&path)
                .map_err(|e| Error::io(path.display().to_string(), e))?;
            write_matrix(&mut f, text, m).map_err(|e| Error::io(path.display().to_string(), e))?;
            index.push_str(&format!("{text}\t{}\t{name}\n", m.mode));
            Ok(())
        };
        for (text, m) in &self.raw {
            write_one(text, m)?;
        }
        for (text, m) in &self.informative {
            write_one(text, m)?;
        }
        let ipath = dir.join("index.tsv");
        std::fs::write(&ipath, index).map_err(|e| Error::io(ipath.display().to_string(), e))
    }

    pub fn load_from_dir(dir: impl AsRef<Path>) -> Result<MatrixStore> {
        let dir = dir.as_ref();
        let ipath = dir.join("index.tsv");
        let index = std::fs::read_to_string(&ipath)
            .map_err(|e| Error::io(ipath.display().to_string(), e))?;
        let mut store = MatrixStore {
            max_size: 0,
            raw: BTreeMap::new(),
            informative: BTreeMap::new(),
        };
        for line in index.lines() {
            if let Some(rest) = line.strip_prefix("#max_size\t") {
                store.max_size = rest
                    .parse()
                    .map_err(|_| Error::Store(format!("bad max_size line `{line}`")))?;
                continue;
            }
            let mut parts = line.split('\t');
            let (text, mode, name) = match (parts.next(), parts.next(), parts.next()) {
                (Some(t), Some(m), Some(n)) => (t, m, n),
                _ => return Err(Error::Store(format!("bad index line `{line}`"))),
            };
            let path = dir.join(name);
            let mut f = std::fs::File::open(&path)
                .map_err(|e| Error::io(path.display().to_string(), e))?;
            let (file_text, m) =
                read_matrix(&mut f).map_err(|e| Error::io(path.display().to_string(), e))?;
            if file_text != text || m.mode.to_string() != mode {
                return Err(Error::Store(format!(
                    "index entry `{line}` does not match file header"
                )));
            }
            match m.mode {
                MatrixMode::Raw => store.raw.insert(text.to_string(), m),
                _ => store.informative.insert(text.to_string(), m),
            };
        }
        if store.max_size == 0 {
            return Err(Error::Store("index is missing the #max_size header".into()));
        }
        Ok(store)
    }
}

/// All label sequences of length 2..=max_size along the label adjacency
/// actually present in the graph.
pub(crate) fn schema_sequences(g: &LabeledGraph, max_size: usize) -> Vec<Vec<LabelId>> {
    let mut adj: BTreeMap<LabelId, Vec<LabelId>> = BTreeMap::new();
    let mut seen = std::collections::BTreeSet::new();
    for &(a, b) in g.edges() {
        let (la, lb) = (g.label_of(a), g.label_of(b));
        if seen.insert((la, lb)) {
            adj.entry(la).or_default().push(lb);
        }
        if seen.insert((lb, la)) {
            adj.entry(lb).or_default().push(la);
        }
    }
    for list in adj.values_mut() {
        list.sort();
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for &start in adj.keys() {
        stack.push(start);
        extend_sequences(&adj, max_size, &mut stack, &mut out);
        stack.pop();
    }
    out
}

fn extend_sequences(
    adj: &BTreeMap<LabelId, Vec<LabelId>>,
    max_size: usize,
    stack: &mut Vec<LabelId>,
    out: &mut Vec<Vec<LabelId>>,
) {
    if stack.len() >= 2 {
        out.push(stack.clone());
    }
    if stack.len() == max_size {
        return;
    }
    let last = *stack.last().unwrap();
    if let Some(nexts) = adj.get(&last) {
        for &n in nexts {
            stack.push(n);
            extend_sequences(adj, max_size, stack, out);
            stack.pop();
        }
    }
}

fn write_str(w: &mut impl Write, s: &str) -> std::io::Result<()> {
    w.write_all(&(s.len() as u32).to_le_bytes())?;
    w.write_all(s.as_bytes())
}

fn read_str(r: &mut impl Read) -> std::io::Result<String> {
    let mut len = [0u8; 4];
    r.read_exact(&mut len)?;
    let mut buf = vec![0u8; u32::from_le_bytes(len) as usize];
    r.read_exact(&mut buf)?;
    String::from_utf8(buf).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
}

fn write_matrix(w: &mut impl Write, text: &str, m: &CommutingMatrix) -> std::io::Result<()> {
    write_str(w, text)?;
    let mode = match m.mode {
        MatrixMode::Raw => 0u8,
        MatrixMode::Informative => 1,
        MatrixMode::Boolean => 2,
    };
    w.write_all(&[mode])?;
    write_str(w, &m.row_label)?;
    write_str(w, &m.col_label)?;
    w.write_all(&(m.matrix.rows() as u64).to_le_bytes())?;
    w.write_all(&(m.matrix.cols() as u64).to_le_bytes())?;
    w.write_all(&(m.matrix.nnz() as u64).to_le_bytes())?;
    for (r, c, v) in m.matrix.entries() {
        w.write_all(&(r as u64).to_le_bytes())?;
        w.write_all(&(c as u64).to_le_bytes())?;
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn read_matrix(r: &mut impl Read) -> std::io::Result<(String, CommutingMatrix)> {
    let text = read_str(r)?;
    let mut mode_byte = [0u8; 1];
    r.read_exact(&mut mode_byte)?;
    let mode = match mode_byte[0] {
        0 => MatrixMode::Raw,
        1 => MatrixMode::Informative,
        2 => MatrixMode::Boolean,
        other => {
            return Err(std::io::Error::new(
                std::io::ErrorKind::InvalidData,
                format!("bad mode byte {other}"),
            ))
        }
    };
    let row_label = read_str(r)?;
    let col_label = read_str(r)?;
    let mut u64buf = [0u8; 8];
    let mut next_u64 = |r: &mut dyn Read| -> std::io::Result<u64> {
        r.read_exact(&mut u64buf)?;
        Ok(u64::from_le_bytes(u64buf))
    };
    let rows = next_u64(r)? as usize;
    let cols = next_u64(r)? as usize;
    let nnz = next_u64(r)? as usize;
    let mut triplets = Vec::with_capacity(nnz);
    for _ in 0..nnz {
        let row = next_u64(r)? as usize;
        let col = next_u64(r)? as usize;
        let val = next_u64(r)?;
        triplets.push((row, col, val));
    }
    Ok((
        text,
        CommutingMatrix {
            row_label,
            col_label,
            mode,
            matrix: SparseMatrix::from_triplets(rows, cols, triplets),
        },
    ))
}

/// Query-time provider backed by a precomputed store.
pub struct StoreProvider<'a> {
    pub graph: &'a LabeledGraph,
    pub store: &'a MatrixStore,
}

impl MatrixProvider for StoreProvider<'_> {
    fn graph(&self) -> &LabeledGraph {
        self.graph
    }

    fn raw(&self, p: &MetaWalk) -> Result<CommutingMatrix> {
        self.store.compose_raw(self.graph, p)
    }

    fn informative(&self, p: &MetaWalk) -> Result<CommutingMatrix> {
        self.store.compose(self.graph, p)
    }
}
