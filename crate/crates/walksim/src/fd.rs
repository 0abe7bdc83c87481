//! Functional dependencies on graphs, chains, and the meta-walk selection
//! used by aggregated R-PathSim.
//!
//! An FD `l1 →p ln` holds when no start entity of the witness meta-walk
//! reaches two distinct end entities. Chains are label sets totally
//! ordered by FD reachability; the meta-walk finders rewrite chain-covered
//! parts of a meta-walk into the forms (witness, starred witness, or
//! minimum-reaching extension) that survive entity rearrangement.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, BufReader, Read, Write};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, LabelKind};
use crate::similarity::informative_commuting_matrix;
use crate::store::schema_sequences;
use crate::walk::MetaWalk;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalDependency {
    pub lhs: String,
    pub rhs: String,
    pub witness: MetaWalk,
}

impl FunctionalDependency {
    pub fn new(lhs: &str, rhs: &str, witness: MetaWalk) -> Self {
        FunctionalDependency {
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            witness,
        }
    }
}

/// A label set totally ordered by FD reachability, minimum (the label that
/// determines all others) first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub labels: Vec<String>,
    pub fds: Vec<FunctionalDependency>,
}

impl Chain {
    pub fn minimum(&self) -> &str {
        &self.labels[0]
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.iter().any(|l| l == label)
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// The FD between two chain labels, if recorded.
    pub fn fd(&self, lhs: &str, rhs: &str) -> Option<&FunctionalDependency> {
        self.fds.iter().find(|f| f.lhs == lhs && f.rhs == rhs)
    }
}

/// Definition-5 check: true iff no start entity reaches two distinct end
/// entities via informative walks of the witness. Vacuously true when the
/// witness has no walks.
pub fn check_fd(g: &LabeledGraph, p: &MetaWalk) -> Result<bool> {
    let m = informative_commuting_matrix(g, &p.strip_stars())?;
    for r in 0..m.matrix.rows() {
        if m.matrix.row(r).count() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mines every FD with a witness of size ≤ `max_witness_size` that has at
/// least one walk, keeping the shortest witness per (lhs, rhs) pair.
/// Witnesses with equal endpoints are not FDs here (single-entity sides,
/// distinct labels).
pub fn mine_fds(g: &LabeledGraph, max_witness_size: usize) -> Result<Vec<FunctionalDependency>> {
    if max_witness_size < 2 {
        return Err(Error::InvalidParameter(format!(
            "max_witness_size must be at least 2, got {max_witness_size}"
        )));
    }
    let mut best: BTreeMap<(String, String), MetaWalk> = BTreeMap::new();
    let mut sequences = schema_sequences(g, max_witness_size);
    sequences.sort_by_key(|s| (s.len(), s.clone()));
    for seq in sequences {
        let first = seq[0];
        let last = *seq.last().unwrap();
        if first == last
            || g.kind_of(first) != LabelKind::Entity
            || g.kind_of(last) != LabelKind::Entity
        {
            continue;
        }
        let key = (
            g.label_name(first).to_string(),
            g.label_name(last).to_string(),
        );
        if best.contains_key(&key) {
            continue;
        }
        let labels: Vec<&str> = seq.iter().map(|&l| g.label_name(l)).collect();
        let p = MetaWalk::plain(&labels);
        let m = informative_commuting_matrix(g, &p)?;
        if m.matrix.is_zero() {
            continue;
        }
        if (0..m.matrix.rows()).all(|r| m.matrix.row(r).count() <= 1) {
            best.insert(key, p);
        }
    }
    Ok(best
        .into_iter()
        .map(|((lhs, rhs), witness)| FunctionalDependency { lhs, rhs, witness })
        .collect())
}

/// FD file format: `lhs <TAB> rhs <TAB> witness-meta-walk-text`.
pub fn write_fds(fds: &[FunctionalDependency], mut w: impl Write) -> std::io::Result<()> {
    for fd in fds {
        writeln!(w, "{}\t{}\t{}", fd.lhs, fd.rhs, fd.witness)?;
    }
    Ok(())
}

pub fn read_fds(r: impl Read) -> Result<Vec<FunctionalDependency>> {
    let mut fds = Vec::new();
    for (lineno, line) in BufReader::new(r).lines().enumerate() {
        let line = line.map_err(|e| Error::io("<fds>", e))?;
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split('\t');
        match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(lhs), Some(rhs), Some(w), None) => {
                fds.push(FunctionalDependency::new(lhs, rhs, MetaWalk::parse(w)?))
            }
            _ => {
                return Err(Error::MalformedLine {
                    file: "<fds>".into(),
                    line: lineno + 1,
                    msg: "expected `lhs<TAB>rhs<TAB>witness`".into(),
                })
            }
        }
    }
    Ok(fds)
}

fn is_chain(fds: &[FunctionalDependency], subset: &BTreeSet<String>) -> Option<Vec<String>> {
    // l1 ≺_S l2 iff some FD l1 → l2 has all witness labels inside S.
    let holds = |a: &str, b: &str| {
        fds.iter().any(|f| {
            f.lhs == a && f.rhs == b && f.witness.labels().all(|l| subset.contains(l))
        })
    };
    let labels: Vec<&String> = subset.iter().collect();
    // Strict total order: exactly one direction per pair, transitive.
    for (i, a) in labels.iter().enumerate() {
        for b in labels.iter().skip(i + 1) {
            if holds(a, b) == holds(b, a) {
                return None;
            }
        }
    }
    let mut ordered: Vec<String> = subset.iter().cloned().collect();
    ordered.sort_by_key(|l| {
        labels
            .iter()
            .filter(|other| holds(l, other))
            .count()
    });
    ordered.reverse(); // minimum (determines all others) first
    for (i, a) in ordered.iter().enumerate() {
        for b in ordered.iter().skip(i + 1) {
            if !holds(a, b) {
                return None; // intransitive tournament, not an order
            }
        }
    }
    Some(ordered)
}

/// All maximal chains (≥ 2 labels) over the given entity labels; errors if
/// two maximal chains overlap, which this framework does not support.
pub fn maximal_chains(fds: &[FunctionalDependency], labels: &[String]) -> Result<Vec<Chain>> {
    let n = labels.len();
    if n > 20 {
        return Err(Error::InvalidParameter(format!(
            "chain search enumerates label subsets and is capped at 20 labels, got {n}"
        )));
    }
    let mut chains: Vec<(BTreeSet<String>, Vec<String>)> = Vec::new();
    for mask in 1u32..(1 << n) {
        if mask.count_ones() < 2 {
            continue;
        }
        let subset: BTreeSet<String> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| labels[i].clone())
            .collect();
        if let Some(ordered) = is_chain(fds, &subset) {
            chains.push((subset, ordered));
        }
    }
    let maximal: Vec<(BTreeSet<String>, Vec<String>)> = chains
        .iter()
        .filter(|(s, _)| {
            !chains
                .iter()
                .any(|(t, _)| t.len() > s.len() && s.is_subset(t))
        })
        .cloned()
        .collect();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (i, (s, _)) in maximal.iter().enumerate() {
        for l in s {
            if let Some(&j) = seen.get(l) {
                if j != i {
                    return Err(Error::OverlappingChains(l.clone()));
                }
            }
            seen.insert(l.clone(), i);
        }
    }
    let mut out: Vec<Chain> = maximal
        .into_iter()
        .map(|(subset, ordered)| Chain {
            fds: fds
                .iter()
                .filter(|f| f.witness.labels().all(|l| subset.contains(l)))
                .cloned()
                .collect(),
            labels: ordered,
        })
        .collect();
    out.sort_by(|a, b| a.labels.cmp(&b.labels));
    Ok(out)
}

/// Algorithm 3: the meta-walks from `l1` to `l2` within their common chain.
/// Empty when no chain holds both labels. Otherwise: the FD witness, plus
/// either its starred variant (when the chain minimum appears in it) or the
/// extension `s2⁻¹·s2·s1` reaching the minimum.
pub fn metawalks_from_chain(chains: &[Chain], l1: &str, l2: &str) -> Vec<MetaWalk> {
    assert_ne!(l1, l2, "metawalks_from_chain needs distinct labels");
    let chain = match chains.iter().find(|c| c.contains(l1) && c.contains(l2)) {
        Some(c) => c,
        None => return Vec::new(),
    };
    let (j, k) = (chain.position(l1).unwrap(), chain.position(l2).unwrap());
    let swap = j > k;
    let (from, to) = if swap { (l2, l1) } else { (l1, l2) };
    let s1 = match chain.fd(from, to) {
        Some(f) => f.witness.clone(),
        None => return Vec::new(),
    };
    let minimum = chain.minimum().to_string();
    let mut out = vec![s1.clone()];
    if s1.labels().any(|l| l == minimum) {
        let mut starred = s1.clone();
        for i in 1..starred.len() - 1 {
            starred.positions[i].star = true;
        }
        out.push(starred);
    } else if let Some(f2) = chain.fd(&minimum, from) {
        let s2 = &f2.witness;
        out.push(s2.reversed().concat(s2).concat(&s1));
    }
    if swap {
        out = out.into_iter().map(|p| p.reversed()).collect();
    }
    out.sort();
    out.dedup();
    out
}

/// One part of a meta-walk: either FD-free (kept verbatim) or covered by a
/// chain (rewritten through `metawalks_from_chain`).
#[derive(Debug, PartialEq)]
enum Part {
    Free(MetaWalk),
    ChainCovered(MetaWalk),
}

/// Splits a meta-walk at the boundary between FD-free edges and
/// chain-covered edges. Chain-covered parts additionally split so that a
/// part never starts and ends with the same label (Algorithm 3 needs
/// distinct part endpoints).
fn decompose(p: &MetaWalk, chains: &[Chain]) -> Vec<Part> {
    let labels: Vec<&str> = p.labels().collect();
    let n = labels.len();
    if n <= 1 {
        return vec![Part::Free(p.clone())];
    }
    let chain_of = |label: &str| chains.iter().position(|c| c.contains(label));
    let covered: Vec<bool> = (0..n - 1)
        .map(|i| {
            labels[i] != labels[i + 1]
                && chain_of(labels[i]).is_some()
                && chain_of(labels[i]) == chain_of(labels[i + 1])
        })
        .collect();
    let mut spans: Vec<(usize, usize, bool)> = Vec::new();
    let mut start = 0;
    let mut class = covered[0];
    for i in 1..n - 1 {
        let wrap = class && covered[i] && labels[i + 1] == labels[start];
        if covered[i] != class || wrap {
            spans.push((start, i, class));
            start = i;
            class = covered[i];
        }
    }
    spans.push((start, n - 1, class));
    spans
        .into_iter()
        .map(|(s, e, cov)| {
            let piece = MetaWalk {
                positions: p.positions[s..=e].to_vec(),
            };
            if cov {
                Part::ChainCovered(piece)
            } else {
                Part::Free(piece)
            }
        })
        .collect()
}

/// Algorithm 2: the meta-walk set aggregated R-PathSim scores over.
/// Enumerates meta-walks from `l` whose entity labels come from
/// `L ∪ chain labels` with per-label occurrence ≤ `max_repeats`, rewrites
/// chain-covered parts, and mirrors every result into `p·p⁻¹`.
pub fn metawalk_finders(
    g: &LabeledGraph,
    fds: &[FunctionalDependency],
    l: &str,
    allowed: &[String],
    max_repeats: usize,
) -> Result<Vec<MetaWalk>> {
    if max_repeats < 1 {
        return Err(Error::InvalidParameter(format!(
            "max_repeats must be at least 1, got {max_repeats}"
        )));
    }
    let lid = g.label_id(l)?;
    if g.kind_of(lid) != LabelKind::Entity {
        return Err(Error::InvalidParameter(format!(
            "`{l}` is not an entity label"
        )));
    }
    let entity_labels: Vec<String> = g.entity_labels().map(str::to_string).collect();
    let chains = maximal_chains(fds, &entity_labels)?;
    let mut allowed_set: BTreeSet<&str> = allowed.iter().map(String::as_str).collect();
    for c in &chains {
        allowed_set.extend(c.labels.iter().map(String::as_str));
    }

    // Candidate meta-walks: schema-guided DFS from l, entity labels from the
    // allowed set, every label at most max_repeats times, entity-ended,
    // at least one walk in the graph.
    let mut schema: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
    for &(a, b) in g.edges() {
        let (la, lb) = (
            g.label_name(g.label_of(a)),
            g.label_name(g.label_of(b)),
        );
        schema.entry(la).or_default().insert(lb);
        schema.entry(lb).or_default().insert(la);
    }
    let mut candidates: Vec<MetaWalk> = Vec::new();
    let mut stack: Vec<&str> = vec![g.label_name(lid)];
    collect_candidates(
        g,
        &schema,
        &allowed_set,
        max_repeats,
        &mut stack,
        &mut candidates,
    );

    let mut out: BTreeSet<MetaWalk> = BTreeSet::new();
    for candidate in &candidates {
        let mut variants: Vec<MetaWalk> = vec![MetaWalk::plain(&[l])];
        for part in decompose(candidate, &chains) {
            match part {
                Part::Free(piece) => {
                    for v in variants.iter_mut() {
                        *v = v.concat(&piece);
                    }
                }
                Part::ChainCovered(piece) => {
                    let replacements =
                        metawalks_from_chain(&chains, piece.first_label(), piece.last_label());
                    let mut next = Vec::with_capacity(variants.len() * replacements.len());
                    for v in &variants {
                        for r in &replacements {
                            next.push(v.concat(r));
                        }
                    }
                    variants = next;
                }
            }
        }
        for v in variants {
            out.insert(v.mirrored());
        }
    }
    let mut result: Vec<MetaWalk> = out.into_iter().collect();
    result.sort_by_key(|p| (p.len(), p.to_string()));
    Ok(result)
}

fn collect_candidates<'a>(
    g: &LabeledGraph,
    schema: &BTreeMap<&'a str, BTreeSet<&'a str>>,
    allowed: &BTreeSet<&str>,
    max_repeats: usize,
    stack: &mut Vec<&'a str>,
    out: &mut Vec<MetaWalk>,
) {
    let last = *stack.last().unwrap();
    if stack.len() >= 2 && g.kind_of(g.label_id(last).unwrap()) == LabelKind::Entity {
        let p = MetaWalk::plain(stack);
        if let Ok(m) = informative_commuting_matrix(g, &p) {
            if !m.matrix.is_zero() {
                out.push(p);
            }
        }
    }
    let nexts: Vec<&str> = match schema.get(last) {
        Some(s) => s.iter().copied().collect(),
        None => return,
    };
    for n in nexts {
        let is_entity = g.kind_of(g.label_id(n).unwrap()) == LabelKind::Entity;
        if is_entity && !allowed.contains(n) {
            continue;
        }
        if stack.iter().filter(|&&x| x == n).count() >= max_repeats {
            continue;
        }
        stack.push(n);
        collect_candidates(g, schema, allowed, max_repeats, stack, out);
        stack.pop();
    }
}

/// Star positions must sit on labels interior to some FD witness.
pub fn stars_valid(p: &MetaWalk, fds: &[FunctionalDependency]) -> bool {
    p.positions.iter().enumerate().all(|(i, pos)| {
        !pos.star
            || fds.iter().any(|f| {
                let w: Vec<&str> = f.witness.labels().collect();
                w[1..w.len().saturating_sub(1)].contains(&p.label(i))
            })
    })
}
