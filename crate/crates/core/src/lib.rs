//! Structural controllability and accessibility of drifted bilinear systems
//! on SO(n), GL⁺(n) and SU(n).
//!
//! A system `Ẋ = (B₀ + Σ uᵢ Bᵢ) X` is described by a pair of zero patterns:
//! a rigid drift pattern (every listed base direction carries a nonzero
//! coefficient) and a free control pattern. This crate
//!
//! * builds the drift / controlled graphs of such a pair ([`graphs`]),
//! * evaluates the graph predicates used by the sufficient and necessary
//!   conditions ([`analysis`]),
//! * and decides, with an independent exact Lie-algebra-rank oracle, whether
//!   a sampled instance generates the full Lie algebra ([`algebra`],
//!   [`verdict`]).
//!
//! All algebra is done over exact rationals; no decision depends on a
//! floating point tolerance.
//!
//! ```
//! use structcon_core::algebra::{lie_closure, AlgebraElement, AlgebraKind, BasisElement};
//!
//! let kind = AlgebraKind::so(3);
//! let gens = [BasisElement::b(1, 2), BasisElement::b(2, 3)]
//!     .map(|b| AlgebraElement::from_basis(kind, b).unwrap());
//! let closure = lie_closure(&gens).unwrap();
//! assert_eq!(closure.dimension, 3);
//! ```

pub mod algebra;
pub mod analysis;
pub mod document;
mod error;
pub mod graphs;
pub mod patterns;
pub mod verdict;

pub use algebra::{AlgebraElement, AlgebraKind, BasisElement, Family, Rational, SpanBasis, Tag};
pub use error::{Error, Result};
pub use graphs::{Color, ColoredEdge, ColoredMultigraph, Digraph, Graph, UndirectedGraph};
pub use patterns::{CoefficientPool, ControlPattern, DriftPattern, ZeroPatternPair};
pub use verdict::{ConditionEval, OracleConfig, OracleReport, Report, Verdict};
