//! Graph-condition checkers, the sampled Lie-algebra-rank oracle, and their
//! cross-validation.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{contains_sl, lie_closure, AlgebraKind, Family};
use crate::analysis::{
    components, digraph_self_loops, green_loops, has_multi_edge, has_odd_red_cycle, is_connected,
    strong_components, strongly_connected, weak_components,
};
use crate::error::{Error, Result};
use crate::graphs::{
    contr_graph_gl, contr_graph_so, contr_graph_su, drift_graph_gl, drift_graph_so, drift_graph_su, Color,
    ColoredMultigraph, Digraph, Graph, UndirectedGraph,
};
use crate::patterns::{
    control_generators, drift_is_basis_subset, sample_drift, CoefficientPool, ControlPattern, ZeroPatternPair,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionEval {
    pub name: String,
    pub holds: bool,
    pub citation: String,
}

impl ConditionEval {
    fn new(name: &str, holds: bool, citation: &str) -> Self {
        Self { name: name.into(), holds, citation: citation.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    SufficientYes,
    ExactYes,
    ExactNo,
    NecessaryFailedNo,
    Inconclusive,
}

impl Verdict {
    pub fn is_positive(self) -> bool {
        matches!(self, Verdict::SufficientYes | Verdict::ExactYes)
    }

    pub fn is_negative(self) -> bool {
        matches!(self, Verdict::ExactNo | Verdict::NecessaryFailedNo)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub trials: usize,
    /// Closure dimension of each trial, in trial order.
    pub dims: Vec<usize>,
    pub target: usize,
    pub achieved_full: bool,
    pub seed: u64,
}

impl OracleReport {
    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: Verdict,
    /// Result that fired, e.g. `"Theorem 4"`; `None` for inconclusive reports.
    pub decided_by: Option<String>,
    pub conditions: Vec<ConditionEval>,
    pub oracle: Option<OracleReport>,
    pub contradiction: bool,
}

impl Report {
    fn new(verdict: Verdict, decided_by: Option<&str>, conditions: Vec<ConditionEval>) -> Self {
        Self { verdict, decided_by: decided_by.map(Into::into), conditions, oracle: None, contradiction: false }
    }

    /// Verdict with its deciding result, e.g. `ExactYes (Theorem 4)`.
    pub fn headline(&self) -> String {
        match &self.decided_by {
            Some(by) => format!("{} ({by})", self.verdict),
            None => self.verdict.to_string(),
        }
    }

    /// Attaches an oracle run and recomputes the contradiction flag.
    pub fn with_oracle(mut self, oracle: OracleReport) -> Self {
        self.contradiction = (self.verdict.is_positive() && !oracle.achieved_full)
            || (self.verdict.is_negative() && oracle.achieved_full);
        self.oracle = Some(oracle);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleConfig {
    pub trials: usize,
    pub seed: u64,
    pub pool: CoefficientPool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self { trials: 8, seed: 0, pool: CoefficientPool::default() }
    }
}

const NECESSARY: &str = "necessary condition";

fn all_at_least(parts: &[Vec<usize>], size: usize) -> bool {
    parts.iter().all(|c| c.len() >= size)
}

pub fn check_so(pair: &ZeroPatternPair) -> Result<Report> {
    pair.kind().expect_family(Family::So)?;
    let drift = drift_graph_so(&pair.drift)?;
    let contr = contr_graph_so(&pair.control)?;
    let union = drift.union(&contr)?;
    let big = all_at_least(&components(&contr), 3);
    let connected = is_connected(&union);
    let conditions = vec![
        ConditionEval::new("union graph connected", connected, "Theorem 1; necessary condition"),
        ConditionEval::new("controlled components have at least 3 nodes", big, "Theorem 1"),
    ];
    Ok(if !connected {
        Report::new(Verdict::NecessaryFailedNo, Some(NECESSARY), conditions)
    } else if big {
        Report::new(Verdict::SufficientYes, Some("Theorem 1"), conditions)
    } else {
        Report::new(Verdict::Inconclusive, None, conditions)
    })
}

fn weak_components_strong(contr: &Digraph) -> bool {
    let strong = strong_components(contr);
    weak_components(contr).iter().all(|w| w.len() >= 2 && strong.contains(w))
}

pub fn check_gl(pair: &ZeroPatternPair) -> Result<Report> {
    pair.kind().expect_family(Family::Gl)?;
    let drift = drift_graph_gl(&pair.drift)?;
    let contr = contr_graph_gl(&pair.control)?;
    let union = drift.union(&contr)?;
    let comps = weak_components_strong(&contr);
    let strong = strongly_connected(&union);
    let contr_loop = !digraph_self_loops(&contr).is_empty();
    let subset = drift_is_basis_subset(&pair.drift)?;
    let union_loop = !digraph_self_loops(&union).is_empty();
    let conditions = vec![
        ConditionEval::new(
            "controlled weak components strongly connected with at least 2 nodes",
            comps,
            "Theorem 2.1 (i); Theorem 2.2",
        ),
        ConditionEval::new("union graph strongly connected", strong, "Theorem 2.1 (ii); necessary condition"),
        ConditionEval::new("controlled graph has a self-loop", contr_loop, "Theorem 2.1 (iii)"),
        ConditionEval::new("drift bases are matrix units", subset, "Theorem 2.2"),
        ConditionEval::new("union graph has a self-loop", union_loop, "Theorem 2.2"),
    ];
    Ok(if !strong {
        Report::new(Verdict::NecessaryFailedNo, Some(NECESSARY), conditions)
    } else if comps && contr_loop {
        Report::new(Verdict::SufficientYes, Some("Theorem 2.1"), conditions)
    } else if comps && subset && union_loop {
        Report::new(Verdict::SufficientYes, Some("Theorem 2.2"), conditions)
    } else {
        Report::new(Verdict::Inconclusive, None, conditions)
    })
}

pub fn check_su(pair: &ZeroPatternPair) -> Result<Report> {
    pair.kind().expect_family(Family::Su)?;
    let drift = drift_graph_su(&pair.drift)?;
    let contr = contr_graph_su(&pair.control)?;
    let union = drift.union(&contr)?;
    let contr_connected = is_connected(&contr);
    let union_loop = !green_loops(&union).is_empty();
    let odd = has_odd_red_cycle(&union).is_some();
    let mut conditions = vec![
        ConditionEval::new("controlled graph connected", contr_connected, "Theorem 4 / Theorem 5"),
        ConditionEval::new("union graph has a self-loop", union_loop, "Theorem 4; Theorem 5 (iii)"),
        ConditionEval::new("union graph has an odd-red cycle", odd, "Theorem 4; Theorem 5 (iii)"),
    ];
    if contr_connected {
        return Ok(if union_loop || odd {
            Report::new(Verdict::ExactYes, Some("Theorem 4"), conditions)
        } else {
            Report::new(Verdict::ExactNo, Some("Theorem 4"), conditions)
        });
    }
    let big = all_at_least(&components(&contr), 3);
    let no_multi = !has_multi_edge(&drift);
    let union_connected = is_connected(&union);
    conditions.extend([
        ConditionEval::new("controlled components have at least 3 nodes", big, "Theorem 5 (i)"),
        ConditionEval::new("drift graph has no multi-edges", no_multi, "Theorem 5 (ii)"),
        ConditionEval::new("union graph connected", union_connected, "Theorem 5 (ii); necessary condition"),
    ]);
    Ok(if !union_connected {
        Report::new(Verdict::NecessaryFailedNo, Some(NECESSARY), conditions)
    } else if big && no_multi && (union_loop || odd) {
        Report::new(Verdict::SufficientYes, Some("Theorem 5"), conditions)
    } else {
        Report::new(Verdict::Inconclusive, None, conditions)
    })
}

/// Runs the checker for the pair's algebra family.
pub fn check(pair: &ZeroPatternPair) -> Result<Report> {
    match pair.kind().family() {
        Family::So => check_so(pair),
        Family::Gl => check_gl(pair),
        Family::Su => check_su(pair),
    }
}

/// Whether the control bases alone generate so(n).
pub fn check_generated_so(s: &ControlPattern) -> Result<bool> {
    s.kind().expect_family(Family::So)?;
    Ok(is_connected(&contr_graph_so(s)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratedGl {
    Full,
    SlOnly,
    Neither,
}

/// What the control bases alone generate inside gl(n).
pub fn check_generated_gl(s: &ControlPattern) -> Result<GeneratedGl> {
    s.kind().expect_family(Family::Gl)?;
    let g = contr_graph_gl(s)?;
    Ok(match (strongly_connected(&g), digraph_self_loops(&g).is_empty()) {
        (true, false) => GeneratedGl::Full,
        (true, true) => GeneratedGl::SlOnly,
        (false, _) => GeneratedGl::Neither,
    })
}

/// Clauses of the su(n) generation criterion on the controlled multigraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedSu {
    /// Two or more colors, and the Blue edges connect every node.
    pub two_colors_blue_spanning: bool,
    pub connected_with_loop: bool,
    pub connected_with_odd_red_cycle: bool,
}

impl GeneratedSu {
    pub fn holds(&self) -> bool {
        self.two_colors_blue_spanning || self.connected_with_loop || self.connected_with_odd_red_cycle
    }
}

pub fn su_clauses(g: &ColoredMultigraph) -> GeneratedSu {
    let colors = [Color::Blue, Color::Red, Color::Green]
        .into_iter()
        .filter(|&c| g.edges_of_color(c).next().is_some())
        .count();
    let blue = UndirectedGraph::from_edges(g.node_count(), g.edges_of_color(Color::Blue).map(|e| (e.i, e.j)))
        .expect("Blue edges are valid undirected edges");
    let connected = is_connected(g);
    GeneratedSu {
        two_colors_blue_spanning: colors >= 2 && is_connected(&blue),
        connected_with_loop: connected && !green_loops(g).is_empty(),
        connected_with_odd_red_cycle: connected && has_odd_red_cycle(g).is_some(),
    }
}

/// Whether the control bases alone generate su(n).
pub fn check_generated_su(s: &ControlPattern) -> Result<bool> {
    s.kind().expect_family(Family::Su)?;
    Ok(su_clauses(&contr_graph_su(s)?).holds())
}

/// Seed of trial `t`: a splitmix64 step over `seed + t`.
pub fn trial_seed(seed: u64, t: usize) -> u64 {
    let mut z = seed.wrapping_add((t as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Lie-algebra-rank oracle: closure dimension of `{A} ∪ controls` for
/// `config.trials` sampled drifts `A`.
pub fn oracle(pair: &ZeroPatternPair, config: &OracleConfig) -> Result<OracleReport> {
    if config.trials == 0 {
        return Err(Error::NoTrials);
    }
    let kind: AlgebraKind = pair.kind();
    let controls = control_generators(&pair.control);
    let dims = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut gens = vec![sample_drift(&pair.drift, &config.pool, trial_seed(config.seed, t))];
            gens.extend(controls.iter().cloned());
            lie_closure(&gens).map(|c| c.dimension)
        })
        .collect::<Result<Vec<_>>>()?;
    let target = kind.dimension();
    Ok(OracleReport {
        trials: config.trials,
        achieved_full: dims.contains(&target),
        dims,
        target,
        seed: config.seed,
    })
}

/// Checker verdict with an oracle run attached.
pub fn cross_validate(pair: &ZeroPatternPair, config: &OracleConfig) -> Result<Report> {
    Ok(check(pair)?.with_oracle(oracle(pair, config)?))
}

/// Whether the Lie algebra generated by the control bases contains sl(n).
pub fn control_contains_sl(s: &ControlPattern) -> Result<bool> {
    s.kind().expect_family(Family::Gl)?;
    contains_sl(&lie_closure(&control_generators(s))?.basis)
}
