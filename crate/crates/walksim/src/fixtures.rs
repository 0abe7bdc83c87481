//! Desk-scale fixtures: the worked examples every test and experiment runs
//! against, plus seeded random-graph generators.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::graph::{GraphBuilder, LabeledGraph, LabelKind};

fn build(
    labels: &[(&str, LabelKind)],
    nodes: &[(&str, &str, Option<&str>)],
    edges: &[(&str, &str)],
) -> LabeledGraph {
    let mut b = GraphBuilder::new();
    for (name, kind) in labels {
        b.declare_label(name, *kind).unwrap();
    }
    for (id, label, value) in nodes {
        b.add_node(id, label, *value).unwrap();
    }
    for (a, bb) in edges {
        b.add_edge_by_id(a, bb).unwrap();
    }
    b.finish().unwrap().graph
}

const FILMS: [(&str, &str); 3] = [("f1", "Jumper"), ("f2", "Star Wars III"), ("f3", "Star Wars V")];
const ACTORS: [(&str, &str); 5] = [
    ("a1", "Bell"),
    ("a2", "Christensen"),
    ("a3", "D.Prowse"),
    ("a4", "Ford"),
    ("a5", "Oz"),
];
const CHARS: [(&str, &str); 6] = [
    ("c1", "Anakin Skywalker"),
    ("c2", "Darth Vader"),
    ("c3", "Griffin"),
    ("c4", "Han Solo"),
    ("c5", "Rice"),
    ("c6", "Yoda"),
];

/// (film, character, actor) casting triples, each a triangle in the movie
/// graph and a starring hub in its reorganized form.
const CASTING: [(&str, &str, &str); 7] = [
    ("f1", "c5", "a2"),
    ("f1", "c3", "a1"),
    ("f2", "c1", "a2"),
    ("f2", "c2", "a2"),
    ("f3", "c2", "a3"),
    ("f3", "c6", "a5"),
    ("f3", "c4", "a4"),
];

fn movie_nodes() -> Vec<(&'static str, &'static str, Option<&'static str>)> {
    let mut nodes = Vec::new();
    for (id, v) in FILMS {
        nodes.push((id, "film", Some(v)));
    }
    for (id, v) in ACTORS {
        nodes.push((id, "actor", Some(v)));
    }
    for (id, v) in CHARS {
        nodes.push((id, "character", Some(v)));
    }
    nodes
}

/// Movie graph with direct film–character–actor triangles: 14 entities,
/// 20 edges.
pub fn fig1a() -> LabeledGraph {
    let labels = [
        ("actor", LabelKind::Entity),
        ("character", LabelKind::Entity),
        ("film", LabelKind::Entity),
    ];
    let mut edges = std::collections::BTreeSet::new();
    for (f, c, a) in CASTING {
        edges.insert((f, c));
        edges.insert((c, a));
        edges.insert((a, f));
    }
    let edges: Vec<(&str, &str)> = edges.into_iter().collect();
    build(&labels, &movie_nodes(), &edges)
}

/// The same movie data with every casting triangle replaced by a valueless
/// `starring` hub: 21 nodes, 21 edges.
pub fn fig1b() -> LabeledGraph {
    let mut b = GraphBuilder::new();
    b.declare_label("actor", LabelKind::Entity).unwrap();
    b.declare_label("character", LabelKind::Entity).unwrap();
    b.declare_label("film", LabelKind::Entity).unwrap();
    b.declare_label("starring", LabelKind::Valueless).unwrap();
    for (id, label, value) in movie_nodes() {
        b.add_node(id, label, value).unwrap();
    }
    for (i, (f, c, a)) in CASTING.iter().enumerate() {
        let hub = format!("s{}", i + 1);
        b.add_node(&hub, "starring", None).unwrap();
        for corner in [f, c, a] {
            b.add_edge_by_id(&hub, corner).unwrap();
        }
    }
    b.finish().unwrap().graph
}

/// Actor–film fragment with direct edges: 5 entities, 4 edges.
pub fn fig2a() -> LabeledGraph {
    build(
        &[("actor", LabelKind::Entity), ("film", LabelKind::Entity)],
        &[
            ("a1", "actor", Some("Christensen")),
            ("a2", "actor", Some("Ford")),
            ("a3", "actor", Some("Oz")),
            ("f1", "film", Some("Star Wars III")),
            ("f2", "film", Some("Star Wars V")),
        ],
        &[("a1", "f1"), ("f1", "a3"), ("f2", "a3"), ("a2", "f2")],
    )
}

/// Same fragment with one `actors` hub per film.
pub fn fig2b() -> LabeledGraph {
    build(
        &[
            ("actor", LabelKind::Entity),
            ("film", LabelKind::Entity),
            ("actors", LabelKind::Valueless),
        ],
        &[
            ("a1", "actor", Some("Christensen")),
            ("a2", "actor", Some("Ford")),
            ("a3", "actor", Some("Oz")),
            ("f1", "film", Some("Star Wars III")),
            ("f2", "film", Some("Star Wars V")),
            ("g1", "actors", None),
            ("g2", "actors", None),
        ],
        &[
            ("g1", "f1"),
            ("g1", "a1"),
            ("g1", "a3"),
            ("g2", "f2"),
            ("g2", "a3"),
            ("g2", "a2"),
        ],
    )
}

/// Citation fragment with explicit `cite` nodes: papers p1..p4.
pub fn fig3a() -> LabeledGraph {
    build(
        &[("paper", LabelKind::Entity), ("cite", LabelKind::Valueless)],
        &[
            ("p1", "paper", Some("p1")),
            ("p2", "paper", Some("p2")),
            ("p3", "paper", Some("p3")),
            ("p4", "paper", Some("p4")),
            ("x1", "cite", None),
            ("x2", "cite", None),
            ("x3", "cite", None),
            ("x4", "cite", None),
        ],
        &[
            ("p1", "x1"),
            ("x1", "p2"),
            ("p2", "x3"),
            ("x3", "p3"),
            ("p3", "x2"),
            ("x2", "p1"),
            ("p3", "x4"),
            ("x4", "p4"),
        ],
    )
}

/// The same citations as direct paper–paper edges.
pub fn fig3b() -> LabeledGraph {
    build(
        &[("paper", LabelKind::Entity)],
        &[
            ("p1", "paper", Some("p1")),
            ("p2", "paper", Some("p2")),
            ("p3", "paper", Some("p3")),
            ("p4", "paper", Some("p4")),
        ],
        &[("p1", "p2"), ("p2", "p3"), ("p3", "p1"), ("p3", "p4")],
    )
}

fn mas_labels() -> [(&'static str, LabelKind); 4] {
    [
        ("conf", LabelKind::Entity),
        ("dom", LabelKind::Entity),
        ("kw", LabelKind::Entity),
        ("paper", LabelKind::Entity),
    ]
}

fn mas_nodes() -> Vec<(&'static str, &'static str, Option<&'static str>)> {
    let mut nodes = Vec::new();
    for v in ["p", "q", "r", "s", "t"] {
        nodes.push((v, "paper", Some(v)));
    }
    for v in ["a", "b", "c", "d"] {
        nodes.push((v, "conf", Some(v)));
    }
    for v in ["x", "y", "z"] {
        nodes.push((v, "dom", Some(v)));
    }
    for v in ["i", "j", "k"] {
        nodes.push((v, "kw", Some(v)));
    }
    nodes
}

const MAS_PAPER_CONF: [(&str, &str); 5] = [("p", "a"), ("q", "b"), ("r", "c"), ("s", "d"), ("t", "d")];
const MAS_DOM_KW: [(&str, &str); 7] = [
    ("z", "k"),
    ("z", "j"),
    ("y", "k"),
    ("y", "j"),
    ("y", "i"),
    ("x", "j"),
    ("x", "i"),
];

/// Academic-search fragment, original representation: papers connect to
/// both their conference and their domain.
pub fn fig4a() -> LabeledGraph {
    let mut edges: Vec<(&str, &str)> = MAS_PAPER_CONF.to_vec();
    edges.extend([("p", "x"), ("q", "y"), ("r", "z"), ("s", "z"), ("t", "z")]);
    edges.extend(MAS_DOM_KW);
    build(&mas_labels(), &mas_nodes(), &edges)
}

/// Alternative representation: conferences connect to their domain.
pub fn fig4b() -> LabeledGraph {
    let mut edges: Vec<(&str, &str)> = MAS_PAPER_CONF.to_vec();
    edges.extend([("a", "x"), ("b", "y"), ("c", "z"), ("d", "z")]);
    edges.extend(MAS_DOM_KW);
    build(&mas_labels(), &mas_nodes(), &edges)
}

/// Bibliography fixture with the published FD structure
/// (paper→proc, paper→area, proc→area through papers).
pub fn dblp() -> LabeledGraph {
    build(
        &[
            ("area", LabelKind::Entity),
            ("author", LabelKind::Entity),
            ("paper", LabelKind::Entity),
            ("proc", LabelKind::Entity),
        ],
        &[
            ("ar1", "area", Some("databases")),
            ("ar2", "area", Some("ai")),
            ("pr1", "proc", Some("sigmod07")),
            ("pr2", "proc", Some("vldb07")),
            ("pr3", "proc", Some("ijcai07")),
            ("pr4", "proc", Some("aaai07")),
            ("p1", "paper", Some("paper1")),
            ("p2", "paper", Some("paper2")),
            ("p3", "paper", Some("paper3")),
            ("p4", "paper", Some("paper4")),
            ("p5", "paper", Some("paper5")),
            ("p6", "paper", Some("paper6")),
            ("u1", "author", Some("ana")),
            ("u2", "author", Some("bo")),
            ("u3", "author", Some("cy")),
        ],
        &[
            // paper–proceedings
            ("p1", "pr1"),
            ("p2", "pr1"),
            ("p3", "pr2"),
            ("p4", "pr3"),
            ("p5", "pr3"),
            ("p6", "pr4"),
            // paper–area (the area of its proceedings)
            ("p1", "ar1"),
            ("p2", "ar1"),
            ("p3", "ar1"),
            ("p4", "ar2"),
            ("p5", "ar2"),
            ("p6", "ar2"),
            // authorship; u1 and u3 cross areas, p1 has two authors
            ("u1", "p1"),
            ("u1", "p4"),
            ("u2", "p1"),
            ("u2", "p2"),
            ("u2", "p3"),
            ("u3", "p5"),
            ("u3", "p6"),
        ],
    )
}

/// Course fixture with the published FD structure
/// (offer→course, offer→subject, course→subject through offers).
pub fn wsu() -> LabeledGraph {
    build(
        &[
            ("course", LabelKind::Entity),
            ("instructor", LabelKind::Entity),
            ("offer", LabelKind::Entity),
            ("subject", LabelKind::Entity),
        ],
        &[
            ("s1", "subject", Some("cs")),
            ("s2", "subject", Some("math")),
            ("c1", "course", Some("cs101")),
            ("c2", "course", Some("cs342")),
            ("c3", "course", Some("math201")),
            ("o1", "offer", Some("cs101-fall")),
            ("o2", "offer", Some("cs101-spring")),
            ("o3", "offer", Some("cs342-fall")),
            ("o4", "offer", Some("math201-fall")),
            ("o5", "offer", Some("math201-spring")),
            ("i1", "instructor", Some("ivy")),
            ("i2", "instructor", Some("joe")),
            ("i3", "instructor", Some("kim")),
        ],
        &[
            ("c1", "o1"),
            ("c1", "o2"),
            ("c2", "o3"),
            ("c3", "o4"),
            ("c3", "o5"),
            ("o1", "s1"),
            ("o2", "s1"),
            ("o3", "s1"),
            ("o4", "s2"),
            ("o5", "s2"),
            // i1 crosses subjects; o1 is co-taught
            ("o1", "i1"),
            ("o4", "i1"),
            ("o1", "i2"),
            ("o2", "i2"),
            ("o3", "i2"),
            ("o5", "i3"),
        ],
    )
}

/// Larger judged academic fixture for the effectiveness experiment:
/// 6 domains in related pairs, 2 conferences per domain with deliberately
/// unbalanced paper counts, original (paper–dom) representation.
pub fn mas_judged() -> (LabeledGraph, crate::eval::RelevanceJudgments) {
    let mut b = GraphBuilder::new();
    for (l, k) in mas_labels() {
        b.declare_label(l, k).unwrap();
    }
    let kw_of_dom: [&[usize]; 6] = [
        &[1, 2, 3, 4],
        &[2, 3, 4, 5],
        &[5, 6, 7, 8],
        &[6, 7, 8, 9],
        &[9, 10, 11, 12],
        &[10, 11, 12, 1],
    ];
    for i in 1..=12 {
        b.add_node(&format!("k{i}"), "kw", Some(&format!("kw{i:02}")))
            .unwrap();
    }
    for (d, kws) in kw_of_dom.iter().enumerate() {
        let did = format!("d{}", d + 1);
        b.add_node(&did, "dom", Some(&format!("domain{}", d + 1)))
            .unwrap();
        for k in kws.iter() {
            b.add_edge_by_id(&did, &format!("k{k}")).unwrap();
        }
    }
    // two conferences per domain, paper counts alternating 1 and 5, then 2
    // and 4, so the plain meta-walk's paper multiplicities distort rankings
    let paper_counts = [1usize, 5, 2, 4, 1, 6, 3, 5, 2, 6, 1, 4];
    let mut paper_id = 0usize;
    let mut conf_idx = 0usize;
    for d in 1..=6 {
        for side in ["a", "b"] {
            let cid = format!("c{d}{side}");
            b.add_node(&cid, "conf", Some(&format!("conf{d}{side}")))
                .unwrap();
            for _ in 0..paper_counts[conf_idx] {
                paper_id += 1;
                let pid = format!("p{paper_id}");
                b.add_node(&pid, "paper", Some(&format!("paper{paper_id:02}")))
                    .unwrap();
                b.add_edge_by_id(&pid, &cid).unwrap();
                b.add_edge_by_id(&pid, &format!("d{d}")).unwrap();
            }
            conf_idx += 1;
        }
    }
    let g = b.finish().unwrap().graph;

    let related = |a: usize, b: usize| (a.max(b) % 2 == 0) && a.abs_diff(b) == 1;
    let mut judgments = crate::eval::RelevanceJudgments::default();
    for dq in 1..=6usize {
        for sq in ["a", "b"] {
            let q = crate::graph::EntityKey::new("conf", format!("conf{dq}{sq}"));
            for da in 1..=6usize {
                for sa in ["a", "b"] {
                    if (dq, sq) == (da, sa) {
                        continue;
                    }
                    let grade = if dq == da {
                        2
                    } else if related(dq, da) {
                        1
                    } else {
                        0
                    };
                    judgments
                        .add(
                            q.clone(),
                            crate::graph::EntityKey::new("conf", format!("conf{da}{sa}")),
                            grade,
                        )
                        .unwrap();
                }
            }
        }
    }
    (g, judgments)
}

/// Random tripartite movie-style graph over film/actor/character with the
/// requested counts; edges appear independently, plus enough triangles to
/// exercise the clique rule.
pub fn random_movie_graph(
    seed: u64,
    films: usize,
    actors: usize,
    chars: usize,
    edge_prob: f64,
    triangles: usize,
) -> LabeledGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    b.declare_label("actor", LabelKind::Entity).unwrap();
    b.declare_label("character", LabelKind::Entity).unwrap();
    b.declare_label("film", LabelKind::Entity).unwrap();
    for i in 0..films {
        b.add_node(&format!("f{i}"), "film", Some(&format!("film{i}")))
            .unwrap();
    }
    for i in 0..actors {
        b.add_node(&format!("a{i}"), "actor", Some(&format!("actor{i}")))
            .unwrap();
    }
    for i in 0..chars {
        b.add_node(&format!("c{i}"), "character", Some(&format!("char{i}")))
            .unwrap();
    }
    let mut edges = std::collections::BTreeSet::new();
    for f in 0..films {
        for a in 0..actors {
            if rng.gen_bool(edge_prob) {
                edges.insert((format!("f{f}"), format!("a{a}")));
            }
        }
        for c in 0..chars {
            if rng.gen_bool(edge_prob) {
                edges.insert((format!("f{f}"), format!("c{c}")));
            }
        }
    }
    for a in 0..actors {
        for c in 0..chars {
            if rng.gen_bool(edge_prob / 2.0) {
                edges.insert((format!("a{a}"), format!("c{c}")));
            }
        }
    }
    for _ in 0..triangles {
        let f = rng.gen_range(0..films);
        let a = rng.gen_range(0..actors);
        let c = rng.gen_range(0..chars);
        edges.insert((format!("f{f}"), format!("a{a}")));
        edges.insert((format!("a{a}"), format!("c{c}")));
        edges.insert((format!("f{f}"), format!("c{c}")));
    }
    for (x, y) in &edges {
        b.add_edge_by_id(x, y).unwrap();
    }
    b.finish().unwrap().graph
}

/// Random academic-style pair related by the paper–dom ↔ conf–dom entity
/// rearrangement, built directly from the functional maps so both sides
/// satisfy the FDs by construction. Returns (original, alternative).
pub fn random_fd_pair(
    seed: u64,
    papers: usize,
    confs: usize,
    doms: usize,
    kws: usize,
) -> (LabeledGraph, LabeledGraph) {
    let mut rng = StdRng::seed_from_u64(seed);
    assert!(confs >= 1 && doms >= 1 && kws >= 1 && papers >= confs);
    let conf_of_paper: Vec<usize> = (0..papers)
        .map(|i| if i < confs { i } else { rng.gen_range(0..confs) })
        .collect();
    let dom_of_conf: Vec<usize> = (0..confs).map(|_| rng.gen_range(0..doms)).collect();
    let mut kw_edges = std::collections::BTreeSet::new();
    for d in 0..doms {
        // every domain gets at least one keyword
        kw_edges.insert((d, rng.gen_range(0..kws)));
        for k in 0..kws {
            if rng.gen_bool(0.4) {
                kw_edges.insert((d, k));
            }
        }
    }
    let build_side = |paper_to_dom: bool| {
        let mut b = GraphBuilder::new();
        for (l, k) in mas_labels() {
            b.declare_label(l, k).unwrap();
        }
        for i in 0..papers {
            b.add_node(&format!("p{i}"), "paper", Some(&format!("paper{i}")))
                .unwrap();
        }
        for i in 0..confs {
            b.add_node(&format!("c{i}"), "conf", Some(&format!("conf{i}")))
                .unwrap();
        }
        for i in 0..doms {
            b.add_node(&format!("d{i}"), "dom", Some(&format!("dom{i}")))
                .unwrap();
        }
        for i in 0..kws {
            b.add_node(&format!("k{i}"), "kw", Some(&format!("kw{i}")))
                .unwrap();
        }
        let mut edges = std::collections::BTreeSet::new();
        for (p, &c) in conf_of_paper.iter().enumerate() {
            edges.insert((format!("p{p}"), format!("c{c}")));
            if paper_to_dom {
                edges.insert((format!("p{p}"), format!("d{}", dom_of_conf[c])));
            }
        }
        if !paper_to_dom {
            for (c, &d) in dom_of_conf.iter().enumerate() {
                edges.insert((format!("c{c}"), format!("d{d}")));
            }
        }
        for &(d, k) in &kw_edges {
            edges.insert((format!("d{d}"), format!("k{k}")));
        }
        for (x, y) in &edges {
            b.add_edge_by_id(x, y).unwrap();
        }
        b.finish().unwrap().graph
    };
    (build_side(true), build_side(false))
}

/// Random mixed entity/valueless graph for the enumeration and maximality
/// oracles.
pub fn random_mixed_graph(
    seed: u64,
    entity_nodes: usize,
    valueless_nodes: usize,
    edge_prob: f64,
) -> LabeledGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    let entity_labels = ["ea", "eb", "ec"];
    let valueless_labels = ["hx", "hy"];
    for l in entity_labels {
        b.declare_label(l, LabelKind::Entity).unwrap();
    }
    for l in valueless_labels {
        b.declare_label(l, LabelKind::Valueless).unwrap();
    }
    let mut ids = Vec::new();
    for i in 0..entity_nodes {
        let l = entity_labels[rng.gen_range(0..entity_labels.len())];
        let id = format!("e{i}");
        b.add_node(&id, l, Some(&format!("v{i}"))).unwrap();
        ids.push(id);
    }
    for i in 0..valueless_nodes {
        let l = valueless_labels[rng.gen_range(0..valueless_labels.len())];
        let id = format!("h{i}");
        b.add_node(&id, l, None).unwrap();
        ids.push(id);
    }
    for i in 0..ids.len() {
        for j in (i + 1)..ids.len() {
            if rng.gen_bool(edge_prob) {
                b.add_edge_by_id(&ids[i], &ids[j]).unwrap();
            }
        }
    }
    b.finish().unwrap().graph
}

/// Large grouped movie graph (film + actors hubs) for the performance
/// check: about `films + actors + films` nodes.
pub fn perf_fixture(seed: u64, films: usize, actors: usize) -> LabeledGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut b = GraphBuilder::new();
    b.declare_label("actor", LabelKind::Entity).unwrap();
    b.declare_label("film", LabelKind::Entity).unwrap();
    b.declare_label("actors", LabelKind::Valueless).unwrap();
    for i in 0..actors {
        b.add_node(&format!("a{i}"), "actor", Some(&format!("actor{i:06}")))
            .unwrap();
    }
    for i in 0..films {
        b.add_node(&format!("f{i}"), "film", Some(&format!("film{i:06}")))
            .unwrap();
        let hub = format!("g{i}");
        b.add_node(&hub, "actors", None).unwrap();
        b.add_edge_by_id(&hub, &format!("f{i}")).unwrap();
        let cast = rng.gen_range(2..=5);
        let mut seen = std::collections::BTreeSet::new();
        for _ in 0..cast {
            let a = rng.gen_range(0..actors);
            if seen.insert(a) {
                b.add_edge_by_id(&hub, &format!("a{a}")).unwrap();
            }
        }
    }
    b.finish().unwrap().graph
}
