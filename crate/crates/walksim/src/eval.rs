//! Ranking comparison and the robustness / effectiveness experiment
//! drivers.
//!
//! Rankings are compared with a normalized Kendall tau over the union of
//! the two top-k answer sets, positions taken from the full rankings, tie
//! groups handled exactly (0 when tied in both lists, ½ when tied in one).
//! Effectiveness uses nDCG with graded relevance (2 similar, 1
//! quite-similar, 0 least-similar).

use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, BufReader, Read, Write};

use crate::baselines::{rwr_ranked, simrank, simrank_ranked};
use crate::error::{Error, Result};
use crate::graph::{EntityKey, LabeledGraph};
use crate::similarity::{pathsim_ranked, rpathsim_ranked, RankedList};
use crate::transform::EntityMapping;
use crate::walk::MetaWalk;

/// Normalized Kendall tau over the union of the two top-k answer sets.
/// Both lists must rank their full candidate sets; `mapping` carries
/// `full1`'s universe onto `full2`'s. 0 means identical order (including
/// tie groups), 1 means reversed.
pub fn kendall_tau_topk(
    full1: &RankedList,
    full2: &RankedList,
    mapping: &EntityMapping,
    k: usize,
) -> Result<f64> {
    let mut union: BTreeSet<EntityKey> = BTreeSet::new();
    for key in full1.top_k_keys(k) {
        union.insert(mapping.map(key)?.clone());
    }
    for key in full2.top_k_keys(k) {
        union.insert(key.clone());
    }
    let items: Vec<EntityKey> = union.into_iter().collect();
    if items.len() < 2 {
        return Ok(0.0);
    }
    let lookup = |list: &RankedList, key: &EntityKey, name: &str| -> Result<usize> {
        list.position_of(key).ok_or_else(|| {
            Error::InvalidParameter(format!(
                "{name} does not rank {key}; full rankings are required"
            ))
        })
    };
    let mut discordant = 0.0;
    for (i, u) in items.iter().enumerate() {
        for v in &items[i + 1..] {
            let (u1, v1) = (mapping.map_back(u)?, mapping.map_back(v)?);
            let (pu1, pv1) = (lookup(full1, u1, "list 1")?, lookup(full1, v1, "list 1")?);
            let (pu2, pv2) = (lookup(full2, u, "list 2")?, lookup(full2, v, "list 2")?);
            let tied1 = full1.answers[pu1].1.ties_with(&full1.answers[pv1].1);
            let tied2 = full2.answers[pu2].1.ties_with(&full2.answers[pv2].1);
            discordant += match (tied1, tied2) {
                (true, true) => 0.0,
                (true, false) | (false, true) => 0.5,
                (false, false) => {
                    if (pu1 < pv1) == (pu2 < pv2) {
                        0.0
                    } else {
                        1.0
                    }
                }
            };
        }
    }
    let pairs = items.len() * (items.len() - 1) / 2;
    Ok(discordant / pairs as f64)
}

/// Relevance grades per query: 2 similar, 1 quite-similar, 0 least-similar.
#[derive(Debug, Clone, Default)]
pub struct RelevanceJudgments {
    per_query: BTreeMap<EntityKey, BTreeMap<EntityKey, u8>>,
}

impl RelevanceJudgments {
    pub fn add(&mut self, query: EntityKey, answer: EntityKey, grade: u8) -> Result<()> {
        if grade > 2 {
            return Err(Error::InvalidParameter(format!(
                "grade must be 0, 1 or 2, got {grade}"
            )));
        }
        self.per_query.entry(query).or_default().insert(answer, grade);
        Ok(())
    }

    pub fn for_query(&self, query: &EntityKey) -> Option<&BTreeMap<EntityKey, u8>> {
        self.per_query.get(query)
    }

    pub fn queries(&self) -> impl Iterator<Item = &EntityKey> {
        self.per_query.keys()
    }

    /// TSV: `query_label:value <TAB> answer_label:value <TAB> grade`.
    pub fn read(r: impl Read) -> Result<Self> {
        let mut j = RelevanceJudgments::default();
        for (lineno, line) in BufReader::new(r).lines().enumerate() {
            let line = line.map_err(|e| Error::io("<judgments>", e))?;
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                [q, a, g] => {
                    let grade = g.parse::<u8>().map_err(|_| Error::MalformedLine {
                        file: "<judgments>".into(),
                        line: lineno + 1,
                        msg: format!("bad grade `{g}`"),
                    })?;
                    j.add(EntityKey::parse(q)?, EntityKey::parse(a)?, grade)?;
                }
                _ => {
                    return Err(Error::MalformedLine {
                        file: "<judgments>".into(),
                        line: lineno + 1,
                        msg: "expected `query<TAB>answer<TAB>grade`".into(),
                    })
                }
            }
        }
        Ok(j)
    }

    pub fn write(&self, mut w: impl Write) -> std::io::Result<()> {
        for (q, answers) in &self.per_query {
            for (a, g) in answers {
                writeln!(w, "{q}\t{a}\t{g}")?;
            }
        }
        Ok(())
    }
}

/// nDCG@k with gain = grade and discount 1/log2(position+1); the ideal
/// ordering comes from the full judged universe truncated at k. All-zero
/// judged universes score 0.
pub fn ndcg(list: &RankedList, grades: &BTreeMap<EntityKey, u8>, k: usize) -> f64 {
    let discount = |rank: usize| 1.0 / ((rank + 1) as f64).log2();
    let dcg: f64 = list
        .answers
        .iter()
        .take(k)
        .enumerate()
        .map(|(i, (key, _))| {
            grades.get(key).copied().unwrap_or(0) as f64 * discount(i + 1)
        })
        .sum();
    let mut ideal: Vec<u8> = grades.values().copied().collect();
    ideal.sort_unstable_by(|a, b| b.cmp(a));
    let idcg: f64 = ideal
        .iter()
        .take(k)
        .enumerate()
        .map(|(i, &g)| g as f64 * discount(i + 1))
        .sum();
    if idcg == 0.0 {
        0.0
    } else {
        dcg / idcg
    }
}

/// Degree-sampled query set.
#[derive(Debug, Clone)]
pub struct QueryWorkload {
    pub label: String,
    pub k: usize,
    pub seed: u64,
    pub queries: Vec<EntityKey>,
}

impl QueryWorkload {
    pub fn sample(g: &LabeledGraph, label: &str, k: usize, seed: u64) -> Result<Self> {
        Ok(QueryWorkload {
            label: label.to_string(),
            k,
            seed,
            queries: g.degree_sample(label, k, seed)?,
        })
    }

    pub fn fixed(label: &str, queries: Vec<EntityKey>) -> Self {
        QueryWorkload {
            label: label.to_string(),
            k: queries.len(),
            seed: 0,
            queries,
        }
    }
}

/// One algorithm configuration for the experiment drivers.
#[derive(Debug, Clone)]
pub enum AlgoConfig {
    Rwr {
        restart: f64,
        tol: f64,
        max_iters: usize,
    },
    SimRank {
        damping: f64,
        tol: f64,
        max_iters: usize,
    },
    PathSim {
        metawalk: MetaWalk,
    },
    RPathSim {
        metawalk: MetaWalk,
    },
}

impl AlgoConfig {
    pub fn name(&self) -> &'static str {
        match self {
            AlgoConfig::Rwr { .. } => "rwr",
            AlgoConfig::SimRank { .. } => "simrank",
            AlgoConfig::PathSim { .. } => "pathsim",
            AlgoConfig::RPathSim { .. } => "rpathsim",
        }
    }

    /// Same configuration pointed at the counterpart meta-walk of the
    /// transformed graph.
    pub fn with_metawalk(&self, p: MetaWalk) -> AlgoConfig {
        match self {
            AlgoConfig::PathSim { .. } => AlgoConfig::PathSim { metawalk: p },
            AlgoConfig::RPathSim { .. } => AlgoConfig::RPathSim { metawalk: p },
            other => other.clone(),
        }
    }
}

/// Full ranking of one query under one configuration. SimRank callers
/// should reuse [`rank_all_queries`] to avoid recomputing the table.
pub fn rank_query(g: &LabeledGraph, config: &AlgoConfig, query: &EntityKey) -> Result<RankedList> {
    Ok(rank_all_queries(g, config, std::slice::from_ref(query))?.remove(0))
}

/// Full rankings for a whole workload; the SimRank table is computed once.
pub fn rank_all_queries(
    g: &LabeledGraph,
    config: &AlgoConfig,
    queries: &[EntityKey],
) -> Result<Vec<RankedList>> {
    match config {
        AlgoConfig::Rwr {
            restart,
            tol,
            max_iters,
        } => queries
            .iter()
            .map(|q| rwr_ranked(g, q, &q.label, *restart, *tol, *max_iters))
            .collect(),
        AlgoConfig::SimRank {
            damping,
            tol,
            max_iters,
        } => {
            let table = simrank(g, *damping, *tol, *max_iters)?;
            queries
                .iter()
                .map(|q| simrank_ranked(g, &table, q, &q.label))
                .collect()
        }
        AlgoConfig::PathSim { metawalk } => queries
            .iter()
            .map(|q| pathsim_ranked(g, metawalk, q))
            .collect(),
        AlgoConfig::RPathSim { metawalk } => queries
            .iter()
            .map(|q| rpathsim_ranked(g, metawalk, q))
            .collect(),
    }
}

#[derive(Debug)]
pub struct RobustnessRow {
    pub algo: String,
    pub query: EntityKey,
    /// (k, tau) pairs.
    pub taus: Vec<(usize, f64)>,
}

#[derive(Debug)]
pub struct RobustnessReport {
    pub transformation: String,
    pub ks: Vec<usize>,
    pub rows: Vec<RobustnessRow>,
    /// Average tau per (algorithm, k); equals the mean of the detail rows.
    pub averages: BTreeMap<(String, usize), f64>,
}

impl RobustnessReport {
    pub fn average(&self, algo: &str, k: usize) -> Option<f64> {
        self.averages.get(&(algo.to_string(), k)).copied()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str("algo\tquery");
        for k in &self.ks {
            out.push_str(&format!("\ttau@{k}"));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("{}\t{}", row.algo, row.query));
            for (_, tau) in &row.taus {
                out.push_str(&format!("\t{tau:.6}"));
            }
            out.push('\n');
        }
        out
    }

    /// Aligned table mirroring the published layout: one row per
    /// (k, algorithm), one column per transformation (here a single one).
    pub fn to_table(&self) -> String {
        let algos: BTreeSet<&String> = self.rows.iter().map(|r| &r.algo).collect();
        let mut out = format!("{:<8} {:<10} {:>10}\n", "", "", self.transformation);
        for k in &self.ks {
            for algo in &algos {
                let avg = self.average(algo, *k).unwrap_or(f64::NAN);
                out.push_str(&format!("{:<8} {:<10} {:>10.3}\n", format!("Top {k}"), algo, avg));
            }
        }
        out
    }
}

/// Runs every algorithm over a source/transformed graph pair and reports
/// per-k average normalized Kendall tau. Each entry pairs the source-side
/// configuration with the meta-walk to use on the transformed side (None
/// keeps the same meta-walk, as for RWR/SimRank parameters).
pub fn robustness_experiment(
    src: &LabeledGraph,
    dst: &LabeledGraph,
    mapping: &EntityMapping,
    transformation: &str,
    algos: &[(AlgoConfig, Option<MetaWalk>)],
    workload: &QueryWorkload,
    ks: &[usize],
) -> Result<RobustnessReport> {
    let mut rows = Vec::new();
    for (config, dst_mw) in algos {
        let dst_config = match dst_mw {
            Some(p) => config.with_metawalk(p.clone()),
            None => config.clone(),
        };
        let lists_src = rank_all_queries(src, config, &workload.queries)?;
        let mapped_queries: Vec<EntityKey> = workload
            .queries
            .iter()
            .map(|q| mapping.map(q).map(Clone::clone))
            .collect::<Result<_>>()?;
        let lists_dst = rank_all_queries(dst, &dst_config, &mapped_queries)?;
        for ((query, l1), l2) in workload.queries.iter().zip(&lists_src).zip(&lists_dst) {
            let taus = ks
                .iter()
                .map(|&k| Ok((k, kendall_tau_topk(l1, l2, mapping, k)?)))
                .collect::<Result<Vec<_>>>()?;
            rows.push(RobustnessRow {
                algo: config.name().to_string(),
                query: query.clone(),
                taus,
            });
        }
    }
    let mut sums: BTreeMap<(String, usize), (f64, usize)> = BTreeMap::new();
    for row in &rows {
        for &(k, tau) in &row.taus {
            let e = sums.entry((row.algo.clone(), k)).or_insert((0.0, 0));
            e.0 += tau;
            e.1 += 1;
        }
    }
    Ok(RobustnessReport {
        transformation: transformation.to_string(),
        ks: ks.to_vec(),
        rows,
        averages: sums
            .into_iter()
            .map(|(key, (sum, n))| (key, sum / n as f64))
            .collect(),
    })
}

#[derive(Debug)]
pub struct EffectivenessRow {
    pub config: String,
    pub query: EntityKey,
    pub ndcg: Vec<(usize, f64)>,
    pub all_grades_zero: bool,
}

#[derive(Debug)]
pub struct EffectivenessReport {
    pub ks: Vec<usize>,
    pub rows: Vec<EffectivenessRow>,
    pub means: BTreeMap<(String, usize), f64>,
    /// Paired t statistic and two-sided p-value between the first two
    /// configurations per k, informational only.
    pub paired_t: BTreeMap<usize, (f64, f64)>,
}

impl EffectivenessReport {
    pub fn mean(&self, config: &str, k: usize) -> Option<f64> {
        self.means.get(&(config.to_string(), k)).copied()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("config\tquery");
        for k in &self.ks {
            out.push_str(&format!("\tndcg@{k}"));
        }
        out.push('\n');
        for row in &self.rows {
            out.push_str(&format!("{}\t{}", row.config, row.query));
            for (_, v) in &row.ndcg {
                out.push_str(&format!("\t{v:.6}"));
            }
            out.push('\n');
        }
        out
    }
}

/// Mean nDCG per configuration plus a paired comparison between the first
/// two configurations.
pub fn effectiveness_experiment(
    g: &LabeledGraph,
    configs: &[(String, AlgoConfig)],
    workload: &QueryWorkload,
    judgments: &RelevanceJudgments,
    ks: &[usize],
) -> Result<EffectivenessReport> {
    let empty = BTreeMap::new();
    let mut rows = Vec::new();
    let mut per_config: BTreeMap<(String, usize), Vec<f64>> = BTreeMap::new();
    for (name, config) in configs {
        let lists = rank_all_queries(g, config, &workload.queries)?;
        for (query, list) in workload.queries.iter().zip(&lists) {
            let grades = judgments.for_query(query).unwrap_or(&empty);
            let all_zero = grades.values().all(|&g| g == 0);
            let ndcgs: Vec<(usize, f64)> =
                ks.iter().map(|&k| (k, ndcg(list, grades, k))).collect();
            for &(k, v) in &ndcgs {
                per_config.entry((name.clone(), k)).or_default().push(v);
            }
            rows.push(EffectivenessRow {
                config: name.clone(),
                query: query.clone(),
                ndcg: ndcgs,
                all_grades_zero: all_zero,
            });
        }
    }
    let means: BTreeMap<(String, usize), f64> = per_config
        .iter()
        .map(|(key, vals)| {
            (
                key.clone(),
                vals.iter().sum::<f64>() / vals.len().max(1) as f64,
            )
        })
        .collect();
    let mut paired_t = BTreeMap::new();
    if configs.len() >= 2 {
        for &k in ks {
            let a = &per_config[&(configs[0].0.clone(), k)];
            let b = &per_config[&(configs[1].0.clone(), k)];
            paired_t.insert(k, paired_t_test(a, b));
        }
    }
    Ok(EffectivenessReport {
        ks: ks.to_vec(),
        rows,
        means,
        paired_t,
    })
}

/// Paired t statistic and two-sided p-value; (0, 1) for degenerate inputs.
pub fn paired_t_test(a: &[f64], b: &[f64]) -> (f64, f64) {
    assert_eq!(a.len(), b.len());
    let n = a.len();
    if n < 2 {
        return (0.0, 1.0);
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let mean = diffs.iter().sum::<f64>() / n as f64;
    let var = diffs.iter().map(|d| (d - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    if var == 0.0 {
        return (0.0, 1.0);
    }
    let t = mean / (var / n as f64).sqrt();
    use statrs::distribution::{ContinuousCDF, StudentsT};
    let dist = StudentsT::new(0.0, 1.0, n as f64 - 1.0).expect("valid dof");
    let p = 2.0 * (1.0 - dist.cdf(t.abs()));
    (t, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::similarity::Score;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn list(keys: &[(&str, i64)]) -> RankedList {
        RankedList::from_scores(
            EntityKey::new("q", "q"),
            keys.iter()
                .map(|(v, s)| {
                    (
                        EntityKey::new("x", *v),
                        Score::Exact(BigRational::from(BigInt::from(*s))),
                    )
                })
                .collect(),
        )
    }

    fn id_map(l: &RankedList) -> EntityMapping {
        let mut m = EntityMapping::default();
        for (k, _) in &l.answers {
            m.insert(k.clone(), k.clone());
        }
        m
    }

    #[test]
    fn tau_identical_is_zero() {
        let l = list(&[("a", 3), ("b", 2), ("c", 1)]);
        assert_eq!(kendall_tau_topk(&l, &l, &id_map(&l), 3).unwrap(), 0.0);
    }

    #[test]
    fn tau_reversed_is_one() {
        let l1 = list(&[("a", 3), ("b", 2), ("c", 1)]);
        let l2 = list(&[("a", 1), ("b", 2), ("c", 3)]);
        assert_eq!(kendall_tau_topk(&l1, &l2, &id_map(&l1), 3).unwrap(), 1.0);
    }

    #[test]
    fn tau_single_swap_is_one_third() {
        let l1 = list(&[("a", 3), ("b", 2), ("c", 1)]);
        let l2 = list(&[("a", 3), ("b", 1), ("c", 2)]);
        let tau = kendall_tau_topk(&l1, &l2, &id_map(&l1), 3).unwrap();
        assert!((tau - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn tau_tie_in_one_list_counts_half() {
        let l1 = list(&[("a", 2), ("b", 2)]);
        let l2 = list(&[("a", 2), ("b", 1)]);
        let tau = kendall_tau_topk(&l1, &l2, &id_map(&l1), 2).unwrap();
        assert_eq!(tau, 0.5);
        assert_eq!(kendall_tau_topk(&l1, &l1, &id_map(&l1), 2).unwrap(), 0.0);
    }

    #[test]
    fn ndcg_ideal_and_degenerate() {
        let l = list(&[("a", 3), ("b", 2), ("c", 1)]);
        let mut grades = BTreeMap::new();
        grades.insert(EntityKey::new("x", "a"), 2u8);
        grades.insert(EntityKey::new("x", "b"), 1u8);
        grades.insert(EntityKey::new("x", "c"), 0u8);
        assert!((ndcg(&l, &grades, 3) - 1.0).abs() < 1e-12);
        let zero: BTreeMap<EntityKey, u8> =
            grades.keys().map(|k| (k.clone(), 0u8)).collect();
        assert_eq!(ndcg(&l, &zero, 3), 0.0);
    }

    #[test]
    fn ndcg_matches_direct_formula() {
        // answers ordered [grade2, grade0, grade1]
        let l = list(&[("g2", 3), ("g0", 2), ("g1", 1)]);
        let mut grades = BTreeMap::new();
        grades.insert(EntityKey::new("x", "g2"), 2u8);
        grades.insert(EntityKey::new("x", "g1"), 1u8);
        grades.insert(EntityKey::new("x", "g0"), 0u8);
        let dcg = 2.0 / 2f64.log2() + 0.0 / 3f64.log2() + 1.0 / 4f64.log2();
        let idcg = 2.0 / 2f64.log2() + 1.0 / 3f64.log2();
        let expected = dcg / idcg;
        assert!((ndcg(&l, &grades, 3) - expected).abs() < 1e-12);
    }
}
