//! Drift and controlled graphs of zero patterns, the single-matrix graph
//! maps, and DOT export. Nodes are 1-based.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{to_matrix, AlgebraElement, Family, Tag};
use crate::error::{Error, Result};
use crate::patterns::{ControlPattern, DriftPattern};

/// Operations shared by the three graph families.
pub trait Graph: Sized {
    fn node_count(&self) -> usize;

    /// Edge-set union of two graphs on the same node set.
    fn union(&self, other: &Self) -> Result<Self>;

    fn is_subgraph_of(&self, other: &Self) -> bool;

    /// Graphviz text, deterministic in edge order.
    fn to_dot(&self) -> String;
}

fn check_node(n: usize, v: usize) -> Result<()> {
    if v == 0 || v > n {
        return Err(Error::InvalidEdge(format!("node {v} outside 1..={n}")));
    }
    Ok(())
}

fn dot_nodes(out: &mut String, n: usize) {
    for v in 1..=n {
        let _ = writeln!(out, "  {v};");
    }
}

/// Simple undirected graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UndirectedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn empty(n: usize) -> Self {
        Self { n, edges: BTreeSet::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<bool> {
        check_node(self.n, i)?;
        check_node(self.n, j)?;
        if i == j {
            return Err(Error::InvalidEdge(format!("self-loop at {i} in a simple graph")));
        }
        Ok(self.edges.insert((i.min(j), i.max(j))))
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Edges as `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.iter().filter_map(move |&(a, b)| match (a == v, b == v) {
            (true, _) => Some(b),
            (_, true) => Some(a),
            _ => None,
        })
    }
}

impl Graph for UndirectedGraph {
    fn node_count(&self) -> usize {
        self.n
    }

    fn union(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(Self { n: self.n, edges: self.edges.union(&other.edges).copied().collect() })
    }

    fn is_subgraph_of(&self, other: &Self) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }

    fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        dot_nodes(&mut out, self.n);
        for (i, j) in &self.edges {
            let _ = writeln!(out, "  {i} -- {j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Directed graph; self-loops allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        Self { n, arcs: BTreeSet::new() }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Self::empty(n);
        for (i, j) in arcs {
            g.add_arc(i, j)?;
        }
        Ok(g)
    }

    pub fn add_arc(&mut self, i: usize, j: usize) -> Result<bool> {
        check_node(self.n, i)?;
        check_node(self.n, j)?;
        Ok(self.arcs.insert((i, j)))
    }

    pub fn has_arc(&self, i: usize, j: usize) -> bool {
        self.arcs.contains(&(i, j))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.range((v, 0)..=(v, usize::MAX)).map(|&(_, k)| k)
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().filter(move |&&(_, k)| k == v).map(|&(k, _)| k)
    }

    pub fn is_simple(&self) -> bool {
        self.arcs.iter().all(|&(i, j)| i != j)
    }
}

impl Graph for Digraph {
    fn node_count(&self) -> usize {
        self.n
    }

    fn union(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(Self { n: self.n, arcs: self.arcs.union(&other.arcs).copied().collect() })
    }

    fn is_subgraph_of(&self, other: &Self) -> bool {
        self.n == other.n && self.arcs.is_subset(&other.arcs)
    }

    fn to_dot(&self) -> String {
        let mut out = String::from("digraph G {\n");
        dot_nodes(&mut out, self.n);
        for (i, j) in &self.arcs {
            let _ = writeln!(out, "  {i} -> {j};");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    Blue,
    Red,
    Green,
}

impl Color {
    pub fn dot_name(self) -> &'static str {
        match self {
            Color::Blue => "blue",
            Color::Red => "red",
            Color::Green => "green",
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Color::Blue => "Blue",
            Color::Red => "Red",
            Color::Green => "Green",
        };
        f.write_str(s)
    }
}

/// `{i, j; color}`. Blue and Red edges have `i < j`; Green edges are loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ColoredEdge {
    pub i: usize,
    pub j: usize,
    pub color: Color,
}

impl ColoredEdge {
    pub fn blue(i: usize, j: usize) -> Self {
        Self { i: i.min(j), j: i.max(j), color: Color::Blue }
    }

    pub fn red(i: usize, j: usize) -> Self {
        Self { i: i.min(j), j: i.max(j), color: Color::Red }
    }

    pub fn green(k: usize) -> Self {
        Self { i: k, j: k, color: Color::Green }
    }

    pub fn is_loop(&self) -> bool {
        self.i == self.j
    }

    /// Endpoint opposite `v` (`v` itself for loops).
    pub fn other(&self, v: usize) -> usize {
        if self.i == v {
            self.j
        } else {
            self.i
        }
    }
}

impl fmt::Display for ColoredEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{};{}}}", self.i, self.j, self.color)
    }
}

/// Edge-colored multigraph. At most one edge per (pair, color); the only
/// multi-edges are Blue+Red on one pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ColoredMultigraph {
    n: usize,
    edges: BTreeSet<ColoredEdge>,
}

impl ColoredMultigraph {
    pub fn empty(n: usize) -> Self {
        Self { n, edges: BTreeSet::new() }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = ColoredEdge>) -> Result<Self> {
        let mut g = Self::empty(n);
        for e in edges {
            g.add_edge(e)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, e: ColoredEdge) -> Result<bool> {
        check_node(self.n, e.i)?;
        check_node(self.n, e.j)?;
        let e = match e.color {
            Color::Green if e.i != e.j => {
                return Err(Error::InvalidEdge(format!("green edge {e} must be a self-loop")))
            }
            Color::Green => e,
            _ if e.i == e.j => {
                return Err(Error::InvalidEdge(format!("{} edge {e} cannot be a self-loop", e.color)))
            }
            Color::Blue => ColoredEdge::blue(e.i, e.j),
            Color::Red => ColoredEdge::red(e.i, e.j),
        };
        Ok(self.edges.insert(e))
    }

    pub fn has_edge(&self, e: &ColoredEdge) -> bool {
        self.edges.contains(e)
    }

    pub fn edges(&self) -> impl Iterator<Item = &ColoredEdge> + '_ {
        self.edges.iter()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges_of_color(&self, color: Color) -> impl Iterator<Item = &ColoredEdge> + '_ {
        self.edges.iter().filter(move |e| e.color == color)
    }

    /// Same graph with all Green loops removed.
    pub fn without_loops(&self) -> Self {
        Self { n: self.n, edges: self.edges.iter().filter(|e| !e.is_loop()).copied().collect() }
    }
}

impl Graph for ColoredMultigraph {
    fn node_count(&self) -> usize {
        self.n
    }

    fn union(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        Ok(Self { n: self.n, edges: self.edges.union(&other.edges).copied().collect() })
    }

    fn is_subgraph_of(&self, other: &Self) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }

    fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        dot_nodes(&mut out, self.n);
        for e in &self.edges {
            let _ = writeln!(out, "  {} -- {} [color={}];", e.i, e.j, e.color.dot_name());
        }
        out.push_str("}\n");
        out
    }
}

/// Undirected support graph of an so(n) element: `{i, j}` iff the `B_ij`
/// coefficient is nonzero.
pub fn matrix_graph_so(a: &AlgebraElement) -> Result<UndirectedGraph> {
    a.kind().expect_family(Family::So)?;
    UndirectedGraph::from_edges(a.kind().n(), a.terms().map(|(b, _)| (b.i, b.j)))
}

/// Directed support graph of a gl(n) element: `(i, j)` iff `[A]_ij ≠ 0`.
pub fn matrix_graph_gl(a: &AlgebraElement) -> Result<Digraph> {
    a.kind().expect_family(Family::Gl)?;
    Digraph::from_arcs(a.kind().n(), a.terms().map(|(b, _)| (b.i, b.j)))
}

/// Colored support graph of an su(n) element: Blue for B terms, Red for C
/// terms, Green loops where the matrix diagonal is nonzero.
pub fn matrix_graph_su(a: &AlgebraElement) -> Result<ColoredMultigraph> {
    a.kind().expect_family(Family::Su)?;
    let n = a.kind().n();
    let mut g = ColoredMultigraph::empty(n);
    for (b, _) in a.terms() {
        match b.tag {
            Tag::B => g.add_edge(ColoredEdge::blue(b.i, b.j))?,
            Tag::C => g.add_edge(ColoredEdge::red(b.i, b.j))?,
            _ => continue,
        };
    }
    // D_1k terms can cancel on the diagonal, so read it off the matrix
    let m = to_matrix(a);
    for k in 1..=n {
        if !m.get(k - 1, k - 1).is_zero() {
            g.add_edge(ColoredEdge::green(k))?;
        }
    }
    Ok(g)
}

fn union_all<G: Graph>(empty: G, parts: impl IntoIterator<Item = Result<G>>) -> Result<G> {
    parts.into_iter().try_fold(empty, |acc, g| acc.union(&g?))
}

pub fn drift_graph_so(p: &DriftPattern) -> Result<UndirectedGraph> {
    p.kind().expect_family(Family::So)?;
    union_all(UndirectedGraph::empty(p.kind().n()), p.bases().iter().map(matrix_graph_so))
}

pub fn drift_graph_gl(p: &DriftPattern) -> Result<Digraph> {
    p.kind().expect_family(Family::Gl)?;
    union_all(Digraph::empty(p.kind().n()), p.bases().iter().map(matrix_graph_gl))
}

pub fn drift_graph_su(p: &DriftPattern) -> Result<ColoredMultigraph> {
    p.kind().expect_family(Family::Su)?;
    union_all(ColoredMultigraph::empty(p.kind().n()), p.bases().iter().map(matrix_graph_su))
}

pub fn contr_graph_so(p: &ControlPattern) -> Result<UndirectedGraph> {
    p.kind().expect_family(Family::So)?;
    UndirectedGraph::from_edges(p.kind().n(), p.bases().iter().map(|b| (b.i, b.j)))
}

pub fn contr_graph_gl(p: &ControlPattern) -> Result<Digraph> {
    p.kind().expect_family(Family::Gl)?;
    Digraph::from_arcs(p.kind().n(), p.bases().iter().map(|b| (b.i, b.j)))
}

/// B → Blue edge, C → Red edge, `D_ij` → Green loops at both `i` and `j`.
pub fn contr_graph_su(p: &ControlPattern) -> Result<ColoredMultigraph> {
    p.kind().expect_family(Family::Su)?;
    let mut g = ColoredMultigraph::empty(p.kind().n());
    for b in p.bases() {
        match b.tag {
            Tag::B => g.add_edge(ColoredEdge::blue(b.i, b.j))?,
            Tag::C => g.add_edge(ColoredEdge::red(b.i, b.j))?,
            Tag::D => {
                g.add_edge(ColoredEdge::green(b.i))?;
                g.add_edge(ColoredEdge::green(b.j))?
            }
            Tag::E => unreachable!("su(n) patterns carry no E"),
        };
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraKind, BasisElement};

    fn el(kind: AlgebraKind, terms: &[(i64, BasisElement)]) -> AlgebraElement {
        AlgebraElement::from_int_terms(kind, terms.iter().copied()).unwrap()
    }

    #[test]
    fn single_b_edge() {
        let g = matrix_graph_so(&el(AlgebraKind::so(3), &[(1, BasisElement::b(1, 2))])).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn wrong_family_errors() {
        let su = el(AlgebraKind::su(3), &[(1, BasisElement::b(1, 2))]);
        assert!(matches!(matrix_graph_so(&su), Err(Error::KindMismatch { .. })));
        let p = DriftPattern::new(AlgebraKind::su(3), vec![su]).unwrap();
        assert!(matches!(drift_graph_so(&p), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn phi_and_psi() {
        let g = matrix_graph_gl(&el(AlgebraKind::gl(3), &[(1, BasisElement::e(1, 2)), (-1, BasisElement::e(1, 3))]))
            .unwrap();
        assert_eq!(g.arcs().collect::<Vec<_>>(), vec![(1, 2), (1, 3)]);

        let a = el(AlgebraKind::su(5), &[(1, BasisElement::c(1, 2)), (1, BasisElement::d(1, 5))]);
        let g = matrix_graph_su(&a).unwrap();
        let expected = ColoredMultigraph::from_edges(
            5,
            [ColoredEdge::red(1, 2), ColoredEdge::green(1), ColoredEdge::green(5)],
        )
        .unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn d_terms_in_drift_give_both_green_loops() {
        let a = el(AlgebraKind::su(5), &[(1, BasisElement::d(2, 4))]);
        let greens: Vec<_> = matrix_graph_su(&a).unwrap().edges().map(|e| e.i).collect();
        assert_eq!(greens, vec![2, 4]);
    }

    #[test]
    fn control_d_loops_and_multi_edge() {
        let su = AlgebraKind::su(4);
        let g = contr_graph_su(&ControlPattern::new(su, [BasisElement::d(2, 4)]).unwrap()).unwrap();
        assert_eq!(g.edges().copied().collect::<Vec<_>>(), vec![ColoredEdge::green(2), ColoredEdge::green(4)]);
        let g = contr_graph_su(&ControlPattern::new(su, [BasisElement::b(1, 2), BasisElement::c(1, 2)]).unwrap())
            .unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn union_laws() {
        let g = UndirectedGraph::from_edges(4, [(1, 2), (3, 4)]).unwrap();
        let e = UndirectedGraph::empty(4);
        assert_eq!(g.union(&e).unwrap(), g);
        assert_eq!(g.union(&g).unwrap(), g);
        assert_eq!(g.union(&UndirectedGraph::empty(5)), Err(Error::SizeMismatch(4, 5)));
    }

    #[test]
    fn colored_edge_rules() {
        let mut g = ColoredMultigraph::empty(3);
        assert!(g.add_edge(ColoredEdge { i: 1, j: 2, color: Color::Green }).is_err());
        assert!(g.add_edge(ColoredEdge { i: 2, j: 2, color: Color::Red }).is_err());
        assert!(g.add_edge(ColoredEdge { i: 3, j: 1, color: Color::Red }).unwrap());
        assert!(g.has_edge(&ColoredEdge::red(1, 3)));
        assert!(!g.add_edge(ColoredEdge::red(1, 3)).unwrap());
    }

    #[test]
    fn dot_output() {
        assert_eq!(UndirectedGraph::empty(2).to_dot(), "graph G {\n  1;\n  2;\n}\n");
        let g = ColoredMultigraph::from_edges(2, [ColoredEdge::red(1, 2)]).unwrap();
        assert_eq!(g.to_dot().lines().filter(|l| l.contains("--")).count(), 1);
        assert!(g.to_dot().contains("1 -- 2 [color=red];"));
        let d = Digraph::from_arcs(1, [(1, 1)]).unwrap();
        assert!(d.to_dot().contains("1 -> 1"));
        assert!(d.to_dot().starts_with("digraph"));
    }
}
