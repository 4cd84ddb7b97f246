#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use structcon_core::algebra::{bracket_via_matrices, AlgebraElement, AlgebraKind, BasisElement, Family, Rational};
use structcon_core::document::parse_spec;
use structcon_core::graphs::{Color, ColoredEdge, ColoredMultigraph, Digraph, Graph};
use structcon_core::patterns::{ControlPattern, DriftPattern, ZeroPatternPair};

macro_rules! example {
    ($name:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/examples/", $name, ".json"))
    };
}

pub const EXAMPLES: [(&str, &str); 8] = [
    ("example2", example!("example2")),
    ("example3i", example!("example3i")),
    ("example3ii", example!("example3ii")),
    ("example4", example!("example4")),
    ("example5i", example!("example5i")),
    ("example5ii", example!("example5ii")),
    ("example5iii", example!("example5iii")),
    ("example6", example!("example6")),
];

pub fn example(name: &str) -> ZeroPatternPair {
    let (_, text) = EXAMPLES.iter().find(|(n, _)| *n == name).expect("known example");
    parse_spec(text).expect("bundled examples parse")
}

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

pub fn int(p: i64) -> Rational {
    rat(p, 1)
}

pub fn el(kind: AlgebraKind, b: BasisElement) -> AlgebraElement {
    AlgebraElement::from_basis(kind, b).unwrap()
}

pub fn els(kind: AlgebraKind, bs: &[BasisElement]) -> Vec<AlgebraElement> {
    bs.iter().map(|b| el(kind, *b)).collect()
}

pub fn lin(kind: AlgebraKind, terms: &[(i64, BasisElement)]) -> AlgebraElement {
    AlgebraElement::from_int_terms(kind, terms.iter().copied()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Canonical B, C and every `D_ij` (`i < j`), the generating pool of su(n)
/// control patterns.
pub fn su_control_pool(n: usize) -> Vec<BasisElement> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            out.extend([BasisElement::b(i, j), BasisElement::c(i, j), BasisElement::d(i, j)]);
        }
    }
    out
}

/// Pool of control bases admissible for `kind` (with all `D_ij` for su).
pub fn control_pool(kind: AlgebraKind) -> Vec<BasisElement> {
    match kind.family() {
        Family::Su => su_control_pool(kind.n()),
        _ => kind.basis(),
    }
}

/// Nonempty random subset; density drawn per call so samples cover sparse and
/// dense patterns.
pub fn random_subset<T: Copy>(rng: &mut ChaCha8Rng, pool: &[T]) -> Vec<T> {
    let p: f64 = rng.random_range(0.1..0.7);
    let mut out: Vec<T> = pool.iter().copied().filter(|_| rng.random_bool(p)).collect();
    if out.is_empty() {
        out.push(*pool.choose(rng).unwrap());
    }
    out
}

pub fn random_element(rng: &mut ChaCha8Rng, kind: AlgebraKind, max_terms: usize) -> AlgebraElement {
    loop {
        let pool = control_pool(kind);
        let k = rng.random_range(1..=max_terms);
        let terms: Vec<(i64, BasisElement)> = (0..k)
            .map(|_| {
                let mut c = rng.random_range(-3..=3);
                if c == 0 {
                    c = 1;
                }
                (c, *pool.choose(rng).unwrap())
            })
            .collect();
        let a = AlgebraElement::from_int_terms(kind, terms).unwrap();
        if !a.is_zero() {
            return a;
        }
    }
}

pub fn random_pair(rng: &mut ChaCha8Rng) -> ZeroPatternPair {
    let family = *[Family::So, Family::Gl, Family::Su].choose(rng).unwrap();
    let n = rng.random_range(2..=5);
    let kind = AlgebraKind::new(family, n).unwrap();
    let d = rng.random_range(1..=3);
    let drift = (0..d).map(|_| random_element(rng, kind, 3)).collect();
    let control = random_subset(rng, &control_pool(kind));
    ZeroPatternPair::new(DriftPattern::new(kind, drift).unwrap(), ControlPattern::new(kind, control).unwrap())
        .unwrap()
}

pub fn random_colored(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> ColoredMultigraph {
    let mut g = ColoredMultigraph::empty(n);
    let m = rng.random_range(0..=max_edges);
    for _ in 0..m {
        let e = match rng.random_range(0..5) {
            0 => ColoredEdge::green(rng.random_range(1..=n)),
            k => {
                let i = rng.random_range(1..=n);
                let mut j = rng.random_range(1..=n);
                while j == i {
                    j = rng.random_range(1..=n);
                }
                if k % 2 == 0 {
                    ColoredEdge::blue(i, j)
                } else {
                    ColoredEdge::red(i, j)
                }
            }
        };
        g.add_edge(e).unwrap();
    }
    g
}

/// Exhaustive oracle: some edge subset forms a single cycle (every touched
/// node has degree 2, subset connected) with an odd number of Red edges. A
/// Blue+Red pair on one node pair is a 2-cycle.
pub fn brute_force_odd_red(g: &ColoredMultigraph) -> bool {
    let edges: Vec<ColoredEdge> = g.edges().filter(|e| !e.is_loop()).copied().collect();
    let m = edges.len();
    assert!(m <= 20, "brute force limited to small graphs");
    (1u32..1 << m).any(|mask| {
        let chosen: Vec<&ColoredEdge> = (0..m).filter(|k| mask >> k & 1 == 1).map(|k| &edges[k]).collect();
        let reds = chosen.iter().filter(|e| e.color == Color::Red).count();
        reds % 2 == 1 && is_single_cycle(g.node_count(), &chosen)
    })
}

fn is_single_cycle(n: usize, chosen: &[&ColoredEdge]) -> bool {
    if chosen.len() < 2 {
        return false;
    }
    let mut degree = vec![0; n + 1];
    for e in chosen {
        degree[e.i] += 1;
        degree[e.j] += 1;
    }
    if degree.iter().any(|&d| d != 0 && d != 2) {
        return false;
    }
    // connected: walk from one endpoint over chosen edges
    let start = chosen[0].i;
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for e in chosen.iter().filter(|e| e.i == v || e.j == v) {
            let w = e.other(v);
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == degree.iter().filter(|&&d| d == 2).count()
}

/// Single basis element `b` with `x = c·b` for some nonzero `c`.
pub fn single_term(x: &AlgebraElement) -> Option<BasisElement> {
    let mut it = x.terms();
    match (it.next(), it.next()) {
        (Some((b, _)), None) => Some(*b),
        _ => None,
    }
}

/// One step of the bracket chain `S ↦ S ∪ [S, S]`, keeping only brackets that
/// are (multiples of) single basis elements. Brackets go through matrices.
pub fn bracket_chain_step(kind: AlgebraKind, s: &BTreeSet<BasisElement>) -> BTreeSet<BasisElement> {
    let mut out = s.clone();
    for x in s {
        for y in s {
            let z = bracket_via_matrices(&el(kind, *x), &el(kind, *y)).unwrap();
            if let Some(b) = single_term(&z) {
                out.insert(b);
            }
        }
    }
    out
}

pub fn tau(n: usize, s: &BTreeSet<BasisElement>) -> Digraph {
    Digraph::from_arcs(n, s.iter().map(|b| (b.i, b.j))).unwrap()
}

pub fn psi(n: usize, s: &BTreeSet<BasisElement>) -> ColoredMultigraph {
    use structcon_core::algebra::Tag;
    let mut g = ColoredMultigraph::empty(n);
    for b in s {
        let e = match b.tag {
            Tag::B => ColoredEdge::blue(b.i, b.j),
            Tag::C => ColoredEdge::red(b.i, b.j),
            _ => panic!("psi is only used on B/C sets"),
        };
        g.add_edge(e).unwrap();
    }
    g
}

pub fn union_all<G: Graph + Clone>(first: &G, rest: &[G]) -> G {
    rest.iter().fold(first.clone(), |acc, g| acc.union(g).unwrap())
}
