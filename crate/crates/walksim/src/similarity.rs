//! Commuting matrices and the PathSim / R-PathSim scoring pipeline.
//!
//! PathSim counts every walk of the input meta-walk; R-PathSim keeps only
//! informative walks by subtracting the diagonal of every same-entity-label
//! segment with valueless interior, and collapses starred runs to walk
//! existence. Scores are exact rationals; no floats anywhere near a
//! ranking comparison.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::{EntityKey, LabeledGraph, LabelId, LabelKind};
use crate::matrix::SparseMatrix;
use crate::walk::MetaWalk;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixMode {
    Raw,
    Informative,
    Boolean,
}

impl fmt::Display for MatrixMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixMode::Raw => "raw",
            MatrixMode::Informative => "informative",
            MatrixMode::Boolean => "boolean",
        })
    }
}

/// Walk counts of one meta-walk between the nodes of its endpoint labels,
/// under the graph's per-label node ordering.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutingMatrix {
    pub row_label: String,
    pub col_label: String,
    pub mode: MatrixMode,
    pub matrix: SparseMatrix,
}

/// Plain commuting matrix: the chained product of label-pair adjacency
/// matrices, counting informative and non-informative walks alike.
/// A single-label meta-walk yields the identity over that label's nodes.
pub fn commuting_matrix(g: &LabeledGraph, p: &MetaWalk) -> Result<CommutingMatrix> {
    if p.has_stars() {
        return Err(Error::InvalidMetaWalk(format!(
            "star labels are not allowed in a plain commuting matrix: {p}"
        )));
    }
    let ids = p.resolve(g)?;
    let matrix = raw_product(g, &ids, &p.to_string())?;
    Ok(CommutingMatrix {
        row_label: p.first_label().to_string(),
        col_label: p.last_label().to_string(),
        mode: MatrixMode::Raw,
        matrix,
    })
}

/// Chained adjacency product over a raw label-id sequence. Exposed within
/// the crate: store precomputation also multiplies sequences whose
/// endpoints are valueless.
pub(crate) fn raw_product(g: &LabeledGraph, ids: &[LabelId], ctx: &str) -> Result<SparseMatrix> {
    let n0 = g.nodes_of_label(ids[0]).len();
    let mut m = SparseMatrix::identity(n0);
    for w in ids.windows(2) {
        let a = g.adjacency(g.label_name(w[0]), g.label_name(w[1]))?;
        m = m.multiply(&a, ctx)?;
    }
    Ok(m)
}

/// One maximal entity-to-entity stretch of a meta-walk: the positions of
/// its entity endpoints; the interior is all valueless.
#[derive(Debug, Clone, Copy)]
struct Segment {
    start: usize,
    end: usize,
}

fn entity_positions(g: &LabeledGraph, ids: &[LabelId]) -> Vec<usize> {
    (0..ids.len())
        .filter(|&i| g.kind_of(ids[i]) == LabelKind::Entity)
        .collect()
}

/// Informative-walk commuting matrix, star-aware:
/// `M^i_p = Π over segments (M_s − M^d_s when the segment's endpoint labels
/// coincide, M_s otherwise)`, with each maximal starred run collapsed to
/// walk existence by booleanizing the sub-product spanning the run and its
/// non-starred entity endpoints.
pub fn informative_commuting_matrix(g: &LabeledGraph, p: &MetaWalk) -> Result<CommutingMatrix> {
    let ids = p.resolve(g)?;
    let ctx = p.to_string();
    let entities = entity_positions(g, &ids);
    let segments: Vec<Segment> = entities
        .windows(2)
        .map(|w| Segment {
            start: w[0],
            end: w[1],
        })
        .collect();

    let segment_matrix = |s: &Segment| -> Result<SparseMatrix> {
        let m = raw_product(g, &ids[s.start..=s.end], &ctx)?;
        if ids[s.start] == ids[s.end] {
            Ok(m.without_diagonal())
        } else {
            Ok(m)
        }
    };

    let n0 = g.nodes_of_label(ids[0]).len();
    let mut result = SparseMatrix::identity(n0);
    let mut seg_idx = 0;
    while seg_idx < segments.len() {
        // A block is one segment, or the run of segments spanning a maximal
        // sequence of starred entity positions plus its flanking non-starred
        // entities.
        let mut end_idx = seg_idx;
        let mut starred = false;
        while end_idx < segments.len() && p.positions[segments[end_idx].end].star {
            starred = true;
            end_idx += 1;
        }
        let last = end_idx.min(segments.len() - 1);
        let mut block = segment_matrix(&segments[seg_idx])?;
        for s in &segments[seg_idx + 1..=last] {
            block = block.multiply(&segment_matrix(s)?, &ctx)?;
        }
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

/// Booleanizes a matrix: entry 1 iff the input entry is positive.
pub fn star_collapse(m: &CommutingMatrix) -> CommutingMatrix {
    CommutingMatrix {
        row_label: m.row_label.clone(),
        col_label: m.col_label.clone(),
        mode: MatrixMode::Boolean,
        matrix: m.matrix.booleanized(),
    }
}

/// A similarity score: exact rational for the PathSim family, float for
/// the random-walk baselines. Comparisons on exact scores use integer
/// arithmetic only.
#[derive(Debug, Clone, PartialEq)]
pub enum Score {
    Exact(BigRational),
    Float(f64),
}

impl Score {
    pub fn zero() -> Self {
        Score::Exact(BigRational::zero())
    }

    pub fn from_counts(cross: u64, diag_e: u64, diag_f: u64) -> Self {
        let den = BigInt::from(diag_e) + BigInt::from(diag_f);
        if den.is_zero() {
            return Score::zero();
        }
        Score::Exact(BigRational::new(BigInt::from(cross) * 2, den))
    }

    pub fn ties_with(&self, other: &Score) -> bool {
        match (self, other) {
            (Score::Exact(a), Score::Exact(b)) => a == b,
            (Score::Float(a), Score::Float(b)) => a == b,
            _ => false,
        }
    }

    pub fn cmp_score(&self, other: &Score) -> Ordering {
        match (self, other) {
            (Score::Exact(a), Score::Exact(b)) => a.cmp(b),
            (Score::Float(a), Score::Float(b)) => {
                a.partial_cmp(b).expect("scores are finite")
            }
            (Score::Exact(_), Score::Float(_)) => Ordering::Greater,
            (Score::Float(_), Score::Exact(_)) => Ordering::Less,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Score::Exact(r) => Some(r),
            Score::Float(_) => None,
        }
    }

    /// Rendering used by the CLI: `num/den` for exact scores, 12
    /// significant digits for floats.
    pub fn render(&self) -> String {
        match self {
            Score::Exact(r) => format!("{}/{}", r.numer(), r.denom()),
            Score::Float(x) => render_sig12(*x),
        }
    }
}

pub(crate) fn render_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    let decimals = (11 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Ranked query answers, sorted by score descending with ties broken by
/// entity key so equal exact scores form contiguous, recoverable groups.
#[derive(Debug, Clone)]
pub struct RankedList {
    pub query: EntityKey,
    pub answers: Vec<(EntityKey, Score)>,
}

impl RankedList {
    pub fn from_scores(query: EntityKey, mut answers: Vec<(EntityKey, Score)>) -> Self {
        answers.sort_by(|a, b| b.1.cmp_score(&a.1).then_with(|| a.0.cmp(&b.0)));
        RankedList { query, answers }
    }

    pub fn truncated(mut self, k: usize) -> Self {
        self.answers.truncate(k);
        self
    }

    pub fn top_k_keys(&self, k: usize) -> Vec<&EntityKey> {
        self.answers.iter().take(k).map(|(e, _)| e).collect()
    }

    pub fn position_of(&self, key: &EntityKey) -> Option<usize> {
        self.answers.iter().position(|(e, _)| e == key)
    }

    pub fn score_of(&self, key: &EntityKey) -> Option<&Score> {
        self.answers
            .iter()
            .find(|(e, _)| e == key)
            .map(|(_, s)| s)
    }

    /// Maximal runs of tied answers, in rank order.
    pub fn tie_groups(&self) -> Vec<Vec<&EntityKey>> {
        let mut groups: Vec<Vec<&EntityKey>> = Vec::new();
        for (e, s) in &self.answers {
            match groups.last_mut() {
                Some(last)
                    if self
                        .score_of(last[0])
                        .map_or(false, |ls| ls.ties_with(s)) =>
                {
                    last.push(e)
                }
                _ => groups.push(vec![e]),
            }
        }
        groups
    }
}

/// Where commuting matrices come from: direct computation on a graph, or a
/// precomputed store composed at query time.
pub trait MatrixProvider {
    fn graph(&self) -> &LabeledGraph;
    fn raw(&self, p: &MetaWalk) -> Result<CommutingMatrix>;
    fn informative(&self, p: &MetaWalk) -> Result<CommutingMatrix>;
}

impl MatrixProvider for LabeledGraph {
    fn graph(&self) -> &LabeledGraph {
        self
    }

    fn raw(&self, p: &MetaWalk) -> Result<CommutingMatrix> {
        commuting_matrix(self, p)
    }

    fn informative(&self, p: &MetaWalk) -> Result<CommutingMatrix> {
        informative_commuting_matrix(self, p)
    }
}

fn endpoint_checked(
    provider: &dyn MatrixProvider,
    p: &MetaWalk,
    e: &EntityKey,
    f: Option<&EntityKey>,
) -> Result<(usize, Option<usize>)> {
    let g = provider.graph();
    if p.first_label() != p.last_label() {
        // The denominator counts p(e,e) and p(f,f); both exist only for
        // round-trip meta-walks.
        return Err(Error::InvalidMetaWalk(format!(
            "PathSim scoring needs a meta-walk that starts and ends with the same label, got {p}"
        )));
    }
    if p.first_label() != e.label {
        return Err(Error::InvalidMetaWalk(format!(
            "meta-walk {p} does not start with label `{}`",
            e.label
        )));
    }
    let ei = g.label_position(g.entity(e)?);
    let fi = match f {
        Some(f) => {
            if p.last_label() != f.label {
                return Err(Error::InvalidMetaWalk(format!(
                    "meta-walk {p} does not end with label `{}`",
                    f.label
                )));
            }
            Some(g.label_position(g.entity(f)?))
        }
        None => None,
    };
    Ok((ei, fi))
}

/// PathSim score `2|p(e,f)| / (|p(e,e)| + |p(f,f)|)` over all walks.
pub fn pathsim(
    provider: &dyn MatrixProvider,
    p: &MetaWalk,
    e: &EntityKey,
    f: &EntityKey,
) -> Result<Score> {
    let (ei, fi) = endpoint_checked(provider, p, e, Some(f))?;
    let fi = fi.unwrap();
    let m = provider.raw(p)?.matrix;
    Ok(Score::from_counts(m.get(ei, fi), m.get(ei, ei), m.get(fi, fi)))
}

/// R-PathSim score: the same ratio over informative walks with starred
/// runs collapsed.
pub fn rpathsim(
    provider: &dyn MatrixProvider,
    p: &MetaWalk,
    e: &EntityKey,
    f: &EntityKey,
) -> Result<Score> {
    let (ei, fi) = endpoint_checked(provider, p, e, Some(f))?;
    let fi = fi.unwrap();
    let m = provider.informative(p)?.matrix;
    Ok(Score::from_counts(m.get(ei, fi), m.get(ei, ei), m.get(fi, fi)))
}

fn ranked_from_matrix(
    g: &LabeledGraph,
    m: &SparseMatrix,
    p: &MetaWalk,
    e: &EntityKey,
) -> Result<RankedList> {
    let ei = g.label_position(g.entity(e)?);
    let end_label = g.label_id(p.last_label())?;
    let candidates = g.nodes_of_label(end_label);
    let mut answers = Vec::with_capacity(candidates.len());
    for (fi, &node) in candidates.iter().enumerate() {
        let key = g.entity_key(node).expect("entity label");
        if key == *e {
            continue;
        }
        answers.push((
            key,
            Score::from_counts(m.get(ei, fi), m.get(ei, ei), m.get(fi, fi)),
        ));
    }
    Ok(RankedList::from_scores(e.clone(), answers))
}

/// Full PathSim ranking of every candidate of the meta-walk's end label
/// (the query entity itself is not an answer).
pub fn pathsim_ranked(
    provider: &dyn MatrixProvider,
    p: &MetaWalk,
    e: &EntityKey,
) -> Result<RankedList> {
    endpoint_checked(provider, p, e, None)?;
    let m = provider.raw(p)?;
    ranked_from_matrix(provider.graph(), &m.matrix, p, e)
}

/// Full R-PathSim ranking.
pub fn rpathsim_ranked(
    provider: &dyn MatrixProvider,
    p: &MetaWalk,
    e: &EntityKey,
) -> Result<RankedList> {
    endpoint_checked(provider, p, e, None)?;
    let m = provider.informative(p)?;
    ranked_from_matrix(provider.graph(), &m.matrix, p, e)
}

/// Weighted-average R-PathSim over several meta-walks. Every meta-walk must
/// start with the query's label; each contributes scores only for entities
/// of its own end label, and a candidate's average is taken over the
/// weights of the meta-walks that cover its label.
pub fn aggregate(
    provider: &dyn MatrixProvider,
    metawalks: &[MetaWalk],
    weights: &[u64],
    e: &EntityKey,
    k: Option<usize>,
) -> Result<RankedList> {
    if metawalks.len() != weights.len() {
        return Err(Error::LengthMismatch(metawalks.len(), weights.len()));
    }
    let mut totals: std::collections::BTreeMap<EntityKey, BigRational> =
        std::collections::BTreeMap::new();
    let mut weight_by_label: std::collections::BTreeMap<String, u64> =
        std::collections::BTreeMap::new();
    for (p, &w) in metawalks.iter().zip(weights) {
        if p.first_label() != e.label {
            return Err(Error::InvalidMetaWalk(format!(
                "meta-walk {p} does not start with query label `{}`",
                e.label
            )));
        }
        *weight_by_label.entry(p.last_label().to_string()).or_insert(0) += w;
        let ranked = rpathsim_ranked(provider, p, e)?;
        for (key, score) in ranked.answers {
            let s = score.as_rational().expect("exact score").clone();
            let entry = totals.entry(key).or_insert_with(BigRational::zero);
            *entry += s * BigRational::from(BigInt::from(w));
        }
    }
    // Candidates never touched by any meta-walk of their label stay absent;
    // candidates of a covered label with zero walks score 0.
    let mut answers = Vec::with_capacity(totals.len());
    for (key, total) in totals {
        let denom = weight_by_label.get(&key.label).copied().unwrap_or(0);
        let score = if denom == 0 {
            BigRational::zero()
        } else {
            total / BigRational::from(BigInt::from(denom))
        };
        debug_assert!(!score.is_negative());
        answers.push((key, Score::Exact(score)));
    }
    let list = RankedList::from_scores(e.clone(), answers);
    Ok(match k {
        Some(k) => list.truncated(k),
        None => list,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn path_graph() -> LabeledGraph {
        // a1 - x - b1, a2 - b1 (direct)
        let mut b = GraphBuilder::new();
        b.declare_label("a", LabelKind::Entity).unwrap();
        b.declare_label("b", LabelKind::Entity).unwrap();
        b.declare_label("x", LabelKind::Valueless).unwrap();
        b.add_node("n1", "a", Some("a1")).unwrap();
        b.add_node("n2", "a", Some("a2")).unwrap();
        b.add_node("n3", "b", Some("b1")).unwrap();
        b.add_node("n4", "x", None).unwrap();
        b.add_edge_by_id("n1", "n4").unwrap();
        b.add_edge_by_id("n4", "n3").unwrap();
        b.add_edge_by_id("n2", "n3").unwrap();
        b.finish().unwrap().graph
    }

    #[test]
    fn single_label_is_identity() {
        let g = path_graph();
        let m = commuting_matrix(&g, &MetaWalk::plain(&["a"])).unwrap();
        assert_eq!(m.matrix, SparseMatrix::identity(2));
    }

    #[test]
    fn informative_correction_zeroes_returns() {
        let g = path_graph();
        // [a,x,a]: only walk is a1-x-a1, which is non-informative.
        let p = MetaWalk::plain(&["a", "x", "a"]);
        let raw = commuting_matrix(&g, &p).unwrap();
        assert_eq!(raw.matrix.get(0, 0), 1);
        let inf = informative_commuting_matrix(&g, &p).unwrap();
        assert!(inf.matrix.is_zero());
    }

    #[test]
    fn self_score_is_one_when_walks_exist() {
        let g = path_graph();
        let p = MetaWalk::plain(&["a", "x", "b", "x", "a"]);
        let a1 = EntityKey::new("a", "a1");
        let s = pathsim(&g, &p, &a1, &a1).unwrap();
        assert!(s.ties_with(&Score::Exact(BigRational::from(BigInt::from(1)))));
    }

    #[test]
    fn zero_denominator_scores_zero() {
        let g = path_graph();
        // a2 has no [a,x,a] walks at all, so s(a2,a2) has denominator 0.
        let p = MetaWalk::plain(&["a", "x", "a"]);
        let a2 = EntityKey::new("a", "a2");
        let s = pathsim(&g, &p, &a2, &a2).unwrap();
        assert!(s.ties_with(&Score::zero()));
    }

    #[test]
    fn sig12_rendering() {
        assert_eq!(render_sig12(0.0), "0");
        assert_eq!(render_sig12(0.061_159_999_999_5), "0.0611599999995");
        assert_eq!(render_sig12(123.456), "123.456000000");
    }
}
