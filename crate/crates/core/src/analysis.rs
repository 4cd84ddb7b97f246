//! Graph predicates and closure maps behind the controllability criteria.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use petgraph::algo::tarjan_scc;
use petgraph::unionfind::UnionFind;

use crate::error::{Error, Result};
use crate::graphs::{Color, ColoredEdge, ColoredMultigraph, Digraph, Graph, UndirectedGraph};

/// Graphs whose connectivity is undirected. Loops never join nodes.
pub trait Undirected: Graph {
    /// Node pairs joined by at least one non-loop edge.
    fn links(&self) -> Vec<(usize, usize)>;
}

impl Undirected for UndirectedGraph {
    fn links(&self) -> Vec<(usize, usize)> {
        self.edges().collect()
    }
}

impl Undirected for ColoredMultigraph {
    fn links(&self) -> Vec<(usize, usize)> {
        self.edges().filter(|e| !e.is_loop()).map(|e| (e.i, e.j)).collect()
    }
}

fn partition(n: usize, links: impl IntoIterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::<usize>::new(n + 1);
    for (i, j) in links {
        uf.union(i, j);
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 1..=n {
        groups.entry(uf.find(v)).or_default().push(v);
    }
    let mut parts: Vec<Vec<usize>> = groups.into_values().collect();
    parts.sort_by_key(|p| p[0]);
    parts
}

/// Connected components, each sorted, ordered by smallest node.
pub fn components<G: Undirected>(g: &G) -> Vec<Vec<usize>> {
    partition(g.node_count(), g.links())
}

pub fn is_connected<G: Undirected>(g: &G) -> bool {
    components(g).len() <= 1
}

/// Components when arcs are read as undirected edges.
pub fn weak_components(g: &Digraph) -> Vec<Vec<usize>> {
    partition(g.node_count(), g.arcs().filter(|(i, j)| i != j))
}

/// Strongly connected components, each sorted, ordered by smallest node.
pub fn strong_components(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut pg = petgraph::Graph::<(), ()>::with_capacity(n, g.arc_count());
    let nodes: Vec<_> = (0..n).map(|_| pg.add_node(())).collect();
    for (i, j) in g.arcs() {
        pg.add_edge(nodes[i - 1], nodes[j - 1], ());
    }
    let mut parts: Vec<Vec<usize>> = tarjan_scc(&pg)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|x| x.index() + 1).collect();
            c.sort_unstable();
            c
        })
        .collect();
    parts.sort_by_key(|p| p[0]);
    parts
}

/// Every node reaches every other. A single node counts as strongly connected.
pub fn strongly_connected(g: &Digraph) -> bool {
    strong_components(g).len() <= 1
}

/// Nodes carrying a self-loop.
pub fn digraph_self_loops(g: &Digraph) -> BTreeSet<usize> {
    g.arcs().filter(|(i, j)| i == j).map(|(i, _)| i).collect()
}

/// Nodes carrying a Green loop.
pub fn green_loops(g: &ColoredMultigraph) -> BTreeSet<usize> {
    g.edges_of_color(Color::Green).map(|e| e.i).collect()
}

/// Whether some node pair carries both a Blue and a Red edge.
pub fn has_multi_edge(g: &ColoredMultigraph) -> bool {
    g.edges_of_color(Color::Red).any(|e| g.has_edge(&ColoredEdge::blue(e.i, e.j)))
}

/// A cycle through an odd number of Red edges, as its edge sequence.
/// Consecutive edges share an endpoint and the walk returns to its start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddRedCycle {
    pub edges: Vec<ColoredEdge>,
    /// `nodes[k]` and `nodes[k + 1]` (cyclically) are the ends of `edges[k]`.
    pub nodes: Vec<usize>,
}

impl OddRedCycle {
    pub fn red_count(&self) -> usize {
        self.edges.iter().filter(|e| e.color == Color::Red).count()
    }
}

/// Red-parity 2-coloring. Blue edges keep the parity class, Red edges flip
/// it; a conflicting edge closes a cycle with an odd Red count. Green loops
/// are ignored.
pub fn has_odd_red_cycle(g: &ColoredMultigraph) -> Option<OddRedCycle> {
    let n = g.node_count();
    let mut adj: Vec<Vec<ColoredEdge>> = vec![Vec::new(); n + 1];
    for e in g.edges().filter(|e| !e.is_loop()) {
        adj[e.i].push(*e);
        adj[e.j].push(*e);
    }
    let flip = |e: &ColoredEdge| u8::from(e.color == Color::Red);
    let mut parity: Vec<Option<u8>> = vec![None; n + 1];
    let mut parent: Vec<Option<ColoredEdge>> = vec![None; n + 1];
    let mut depth = vec![0usize; n + 1];

    for root in 1..=n {
        if parity[root].is_some() {
            continue;
        }
        parity[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let pu = parity[u].expect("queued nodes are colored");
            for e in &adj[u] {
                let v = e.other(u);
                match parity[v] {
                    None => {
                        parity[v] = Some(pu ^ flip(e));
                        parent[v] = Some(*e);
                        depth[v] = depth[u] + 1;
                        queue.push_back(v);
                    }
                    Some(pv) if pu ^ pv ^ flip(e) == 1 => {
                        return Some(close_cycle(u, v, *e, &parent, &depth));
                    }
                    Some(_) => {}
                }
            }
        }
    }
    None
}

/// Tree paths from `u` and `v` up to their common ancestor, joined by `closing`.
fn close_cycle(
    u: usize,
    v: usize,
    closing: ColoredEdge,
    parent: &[Option<ColoredEdge>],
    depth: &[usize],
) -> OddRedCycle {
    let up = |x: usize| {
        let e = parent[x].expect("non-root has a parent");
        (e.other(x), e)
    };
    let (mut a, mut b) = (u, v);
    let mut left = Vec::new(); // u → lca
    let mut right = Vec::new(); // v → lca
    while depth[a] > depth[b] {
        let (p, e) = up(a);
        left.push((a, e));
        a = p;
    }
    while depth[b] > depth[a] {
        let (p, e) = up(b);
        right.push((b, e));
        b = p;
    }
    while a != b {
        let (pa, ea) = up(a);
        left.push((a, ea));
        a = pa;
        let (pb, eb) = up(b);
        right.push((b, eb));
        b = pb;
    }
    let lca = a;
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    for (x, e) in &left {
        nodes.push(*x);
        edges.push(*e);
    }
    nodes.push(lca);
    for (x, e) in right.iter().rev() {
        edges.push(*e);
        nodes.push(*x);
    }
    // nodes ends at v; the closing edge returns to u
    edges.push(closing);
    OddRedCycle { edges, nodes }
}

/// One application of the simple-digraph transitive closure map: add
/// `(i, k)` for every 2-path `i → j → k` with `i ≠ k`.
pub fn closure_step_m(g: &Digraph) -> Result<Digraph> {
    if let Some(&v) = digraph_self_loops(g).iter().next() {
        return Err(Error::NotSimple(v));
    }
    let mut out = g.clone();
    for (i, j) in g.arcs() {
        for k in g.out_neighbors(j) {
            if i != k {
                out.add_arc(i, k)?;
            }
        }
    }
    Ok(out)
}

/// Iterates [`closure_step_m`] to its fixpoint. Returns the fixpoint and the
/// number of applications that changed the graph.
pub fn iterate_m(g: &Digraph) -> Result<(Digraph, usize)> {
    let n = g.node_count();
    let mut current = g.clone();
    let mut steps = 0;
    for _ in 0..n * n {
        let next = closure_step_m(&current)?;
        if next == current {
            break;
        }
        current = next;
        steps += 1;
    }
    // checks simplicity for the zero-iteration case too
    closure_step_m(&current)?;
    Ok((current, steps))
}

/// All ordered pairs of distinct nodes are arcs and there are no loops.
pub fn is_simple_complete(g: &Digraph) -> bool {
    let n = g.node_count();
    g.is_simple() && g.arc_count() == n * (n - 1)
}

fn check_loop_free(g: &ColoredMultigraph) -> Result<()> {
    match g.edges().find(|e| e.is_loop()) {
        Some(e) => Err(Error::HasSelfLoop(e.i)),
        None => Ok(()),
    }
}

/// One application of the colored transitive closure map on a loop-free
/// multigraph. For edges sharing an endpoint `j`:
///
/// * Blue `{i,j}` with Blue `{j,k}` adds Blue `{i,k}`,
/// * Red `{i,j}` with Red `{j,k}` adds Blue `{i,k}`,
/// * Red `{i,j}` with Blue `{j,k}` adds Red `{i,k}`,
///
/// always with `i ≠ k`.
pub fn closure_step_t(g: &ColoredMultigraph) -> Result<ColoredMultigraph> {
    check_loop_free(g)?;
    let n = g.node_count();
    let mut incident: Vec<Vec<ColoredEdge>> = vec![Vec::new(); n + 1];
    for e in g.edges() {
        incident[e.i].push(*e);
        incident[e.j].push(*e);
    }
    let mut out = g.clone();
    for (j, here) in incident.iter().enumerate().skip(1) {
        for x in here {
            for y in here {
                let (i, k) = (x.other(j), y.other(j));
                if i == k {
                    continue;
                }
                let added = match (x.color, y.color) {
                    (Color::Blue, Color::Blue) | (Color::Red, Color::Red) => ColoredEdge::blue(i, k),
                    (Color::Red, Color::Blue) => ColoredEdge::red(i, k),
                    _ => continue,
                };
                out.add_edge(added)?;
            }
        }
    }
    Ok(out)
}

/// Iterates [`closure_step_t`] to its fixpoint; returns it with the number of
/// effective applications.
pub fn iterate_t(g: &ColoredMultigraph) -> Result<(ColoredMultigraph, usize)> {
    check_loop_free(g)?;
    let n = g.node_count();
    let mut current = g.clone();
    let mut steps = 0;
    for _ in 0..n * n {
        let next = closure_step_t(&current)?;
        if next == current {
            break;
        }
        current = next;
        steps += 1;
    }
    Ok((current, steps))
}

/// Circumjacent closure of a simple digraph at `⟨i, j⟩`:
/// `{(i, k) : (j, k) ∈ E, k ≠ i} ∪ {(k, j) : (k, i) ∈ E, k ≠ j}`.
pub fn circumjacent_digraph(g: &Digraph, i: usize, j: usize) -> Result<Digraph> {
    if let Some(&v) = digraph_self_loops(g).iter().next() {
        return Err(Error::NotSimple(v));
    }
    let mut out = Digraph::empty(g.node_count());
    for k in g.out_neighbors(j) {
        if k != i {
            out.add_arc(i, k)?;
        }
    }
    for k in g.in_neighbors(i) {
        if k != j {
            out.add_arc(k, j)?;
        }
    }
    Ok(out)
}

/// Circumjacent closure of an undirected graph at `(i, j)`:
/// `{{i, k} : {j, k} ∈ E} ∪ {{j, k} : {i, k} ∈ E}`. Pairs that would
/// collapse to a loop (`k = i`, resp. `k = j`) are dropped to keep the graph
/// simple.
pub fn circumjacent_undirected(g: &UndirectedGraph, i: usize, j: usize) -> Result<UndirectedGraph> {
    let mut out = UndirectedGraph::empty(g.node_count());
    for k in g.neighbors(j) {
        if k != i {
            out.add_edge(i, k)?;
        }
    }
    for k in g.neighbors(i) {
        if k != j {
            out.add_edge(j, k)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_components_are_singletons() {
        assert_eq!(components(&UndirectedGraph::empty(3)), vec![vec![1], vec![2], vec![3]]);
        assert!(is_connected(&UndirectedGraph::empty(1)));
        assert!(!is_connected(&UndirectedGraph::from_edges(4, [(1, 2), (3, 4)]).unwrap()));
    }

    #[test]
    fn green_loops_do_not_connect() {
        let g = ColoredMultigraph::from_edges(2, [ColoredEdge::green(1), ColoredEdge::green(2)]).unwrap();
        assert_eq!(components(&g).len(), 2);
    }

    #[test]
    fn digraph_connectivity() {
        let g = Digraph::from_arcs(2, [(1, 2)]).unwrap();
        assert!(!strongly_connected(&g));
        assert_eq!(weak_components(&g), vec![vec![1, 2]]);
        let g = Digraph::from_arcs(3, [(1, 2), (2, 3), (3, 1), (2, 2)]).unwrap();
        assert!(strongly_connected(&g));
        assert_eq!(digraph_self_loops(&g), BTreeSet::from([2]));
    }

    #[test]
    fn odd_red_cases() {
        let multi = ColoredMultigraph::from_edges(5, [ColoredEdge::blue(1, 5), ColoredEdge::red(1, 5)]).unwrap();
        let c = has_odd_red_cycle(&multi).unwrap();
        assert_eq!(c.edges.len(), 2);
        assert_eq!(c.red_count(), 1);

        let blue = ColoredMultigraph::from_edges(
            3,
            [ColoredEdge::blue(1, 2), ColoredEdge::blue(2, 3), ColoredEdge::blue(1, 3)],
        )
        .unwrap();
        assert!(has_odd_red_cycle(&blue).is_none());

        let one_red = ColoredMultigraph::from_edges(
            3,
            [ColoredEdge::blue(1, 2), ColoredEdge::blue(2, 3), ColoredEdge::red(1, 3)],
        )
        .unwrap();
        let c = has_odd_red_cycle(&one_red).unwrap();
        assert_eq!(c.edges.len(), 3);
        assert_eq!(c.red_count(), 1);

        let two_red = ColoredMultigraph::from_edges(
            3,
            [ColoredEdge::red(1, 2), ColoredEdge::blue(2, 3), ColoredEdge::red(1, 3)],
        )
        .unwrap();
        assert!(has_odd_red_cycle(&two_red).is_none());
    }

    #[test]
    fn multi_edge_detection() {
        let g = ColoredMultigraph::from_edges(2, [ColoredEdge::blue(1, 2), ColoredEdge::red(1, 2)]).unwrap();
        assert!(has_multi_edge(&g));
        assert!(!has_multi_edge(&g.without_loops().union(&ColoredMultigraph::empty(2)).unwrap().without_red()));
    }

    trait WithoutRed {
        fn without_red(&self) -> ColoredMultigraph;
    }

    impl WithoutRed for ColoredMultigraph {
        fn without_red(&self) -> ColoredMultigraph {
            ColoredMultigraph::from_edges(self.node_count(), self.edges().filter(|e| e.color != Color::Red).copied())
                .unwrap()
        }
    }

    #[test]
    fn m_map_examples() {
        let cycle = Digraph::from_arcs(3, [(1, 2), (2, 3), (3, 1)]).unwrap();
        let (fix, steps) = iterate_m(&cycle).unwrap();
        assert!(is_simple_complete(&fix));
        assert!(steps <= 2);

        let path = Digraph::from_arcs(3, [(1, 2), (2, 3)]).unwrap();
        let (fix, steps) = iterate_m(&path).unwrap();
        assert_eq!(fix.arcs().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 3)]);
        assert_eq!(steps, 1);
        assert!(!is_simple_complete(&fix));

        let complete = Digraph::from_arcs(3, [(1, 2), (2, 1), (1, 3), (3, 1), (2, 3), (3, 2)]).unwrap();
        assert_eq!(iterate_m(&complete).unwrap(), (complete.clone(), 0));

        let looped = Digraph::from_arcs(2, [(1, 1)]).unwrap();
        assert_eq!(closure_step_m(&looped), Err(Error::NotSimple(1)));
        assert_eq!(iterate_m(&looped).map(|_| ()), Err(Error::NotSimple(1)));
    }

    #[test]
    fn t_map_rules() {
        let rr = ColoredMultigraph::from_edges(3, [ColoredEdge::red(1, 2), ColoredEdge::red(2, 3)]).unwrap();
        assert!(closure_step_t(&rr).unwrap().has_edge(&ColoredEdge::blue(1, 3)));
        let rb = ColoredMultigraph::from_edges(3, [ColoredEdge::red(1, 2), ColoredEdge::blue(2, 3)]).unwrap();
        assert!(closure_step_t(&rb).unwrap().has_edge(&ColoredEdge::red(1, 3)));
        let single = ColoredMultigraph::from_edges(3, [ColoredEdge::blue(1, 2)]).unwrap();
        assert_eq!(iterate_t(&single).unwrap(), (single.clone(), 0));
        let looped = ColoredMultigraph::from_edges(2, [ColoredEdge::green(2)]).unwrap();
        assert_eq!(closure_step_t(&looped), Err(Error::HasSelfLoop(2)));
    }

    #[test]
    fn circumjacent_examples() {
        let g = Digraph::from_arcs(3, [(3, 1), (2, 3)]).unwrap();
        let h = circumjacent_digraph(&g, 1, 2).unwrap();
        assert_eq!(h.arcs().collect::<Vec<_>>(), vec![(1, 3), (3, 2)]);
        assert_eq!(circumjacent_digraph(&Digraph::empty(4), 1, 2).unwrap(), Digraph::empty(4));

        let u = UndirectedGraph::from_edges(3, [(2, 3)]).unwrap();
        assert_eq!(circumjacent_undirected(&u, 1, 2).unwrap().edges().collect::<Vec<_>>(), vec![(1, 3)]);
        let u = UndirectedGraph::from_edges(4, [(3, 4)]).unwrap();
        assert_eq!(circumjacent_undirected(&u, 1, 2).unwrap().edge_count(), 0);
        let u = UndirectedGraph::from_edges(3, [(1, 3), (2, 3)]).unwrap();
        assert_eq!(circumjacent_undirected(&u, 1, 2).unwrap(), u);
    }
}
