//! Exact matrix Lie algebras so(n), gl(n) and su(n).
//!
//! Elements are stored as exact rational combinations of the canonical
//! generators
//!
//! * `B_ij = E_ij − E_ji` (so(n) and the real part of su(n)),
//! * `C_ij = i(E_ij + E_ji)` and `D_ij = i(E_ii − E_jj)` (su(n)),
//! * the matrix units `E_ij` (gl(n)).
//!
//! The D directions are linearly dependent, so every `D_ij` with `i > 1` is
//! rewritten as `D_1j − D_1i` on the way in; stored elements only ever carry
//! `D_12, …, D_1n`.

mod bracket;
mod matrix;
mod span;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bracket::{basis_bracket, bracket, StructureConstants};
pub use matrix::{bracket_via_matrices, decompose, to_matrix, ComplexRational, Matrix};
pub use span::{contains_sl, lie_closure, span_insert, Closure, SpanBasis};

pub type Rational = BigRational;

pub(crate) fn rational(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    So,
    Gl,
    Su,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::So => "so",
            Family::Gl => "gl",
            Family::Su => "su",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "so" => Ok(Family::So),
            "gl" => Ok(Family::Gl),
            "su" => Ok(Family::Su),
            other => Err(Error::InvalidPattern(format!("unknown algebra family {other:?}"))),
        }
    }
}

/// One of so(n), gl(n), su(n) for a fixed matrix size `n ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraKind {
    family: Family,
    n: usize,
}

impl AlgebraKind {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSize(n));
        }
        Ok(Self { family, n })
    }

    /// Panics if `n < 2`.
    pub fn so(n: usize) -> Self {
        Self::new(Family::So, n).expect("so(n) needs n >= 2")
    }

    /// Panics if `n < 2`.
    pub fn gl(n: usize) -> Self {
        Self::new(Family::Gl, n).expect("gl(n) needs n >= 2")
    }

    /// Panics if `n < 2`.
    pub fn su(n: usize) -> Self {
        Self::new(Family::Su, n).expect("su(n) needs n >= 2")
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        let n = self.n;
        match self.family {
            Family::So => n * (n - 1) / 2,
            Family::Gl => n * n,
            Family::Su => n * n - 1,
        }
    }

    /// Canonical ordered basis: B by `(i, j)`, then C, then `D_12..D_1n`, then
    /// E row-major. Only the tags admitted by the family appear.
    pub fn basis(&self) -> Vec<BasisElement> {
        let n = self.n;
        let pairs = || (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)));
        match self.family {
            Family::So => pairs().map(|(i, j)| BasisElement::b(i, j)).collect(),
            Family::Gl => (1..=n)
                .flat_map(|i| (1..=n).map(move |j| BasisElement::e(i, j)))
                .collect(),
            Family::Su => pairs()
                .map(|(i, j)| BasisElement::b(i, j))
                .chain(pairs().map(|(i, j)| BasisElement::c(i, j)))
                .chain((2..=n).map(|k| BasisElement::d(1, k)))
                .collect(),
        }
    }

    /// Position of a canonical basis element in [`AlgebraKind::basis`].
    pub fn index_of(&self, b: &BasisElement) -> Option<usize> {
        if !self.admits(b) {
            return None;
        }
        let n = self.n;
        let pairs = n * (n - 1) / 2;
        // offset of pair (i, j), i < j, in lexicographic order
        let pair_index = |i: usize, j: usize| (i - 1) * (2 * n - i) / 2 + (j - i - 1);
        match b.tag {
            Tag::B => Some(pair_index(b.i, b.j)),
            Tag::C => Some(pairs + pair_index(b.i, b.j)),
            Tag::D if b.i == 1 => Some(2 * pairs + b.j - 2),
            Tag::D => None,
            Tag::E => Some((b.i - 1) * n + (b.j - 1)),
        }
    }

    /// Whether `b` is a generator of this algebra (including non-canonical
    /// `D_ij`, which are admissible but get rewritten on storage).
    pub fn admits(&self, b: &BasisElement) -> bool {
        let in_range = b.i >= 1 && b.j >= 1 && b.i <= self.n && b.j <= self.n;
        let ordered = b.tag == Tag::E || b.i < b.j;
        let tag_ok = match self.family {
            Family::So => b.tag == Tag::B,
            Family::Gl => b.tag == Tag::E,
            Family::Su => matches!(b.tag, Tag::B | Tag::C | Tag::D),
        };
        in_range && ordered && tag_ok
    }

    pub(crate) fn expect_family(&self, family: Family) -> Result<()> {
        if self.family == family {
            Ok(())
        } else {
            Err(Error::kind_mismatch(format!("{family}(n)"), *self))
        }
    }

    pub(crate) fn expect_same(&self, other: &AlgebraKind) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::kind_mismatch(self, *other))
        }
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    B,
    C,
    D,
    E,
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" => Ok(Tag::B),
            "C" => Ok(Tag::C),
            "D" => Ok(Tag::D),
            "E" => Ok(Tag::E),
            other => Err(Error::InvalidBasis(format!("unknown basis tag {other:?}"))),
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tag::B => "B",
            Tag::C => "C",
            Tag::D => "D",
            Tag::E => "E",
        };
        f.write_str(s)
    }
}

/// A canonical generator `B_ij`, `C_ij`, `D_ij` or `E_ij` with 1-based indices.
///
/// The derived ordering (tag, then `i`, then `j`) is the canonical basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisElement {
    pub tag: Tag,
    pub i: usize,
    pub j: usize,
}

impl BasisElement {
    /// Checks the index constraints (`1 ≤ i < j` for B, C, D; `1 ≤ i, j` for E).
    /// Range against `n` is checked by [`AlgebraKind::admits`].
    pub fn new(tag: Tag, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::InvalidBasis(format!("{tag}: indices are 1-based, got ({i}, {j})")));
        }
        if tag != Tag::E && i >= j {
            return Err(Error::InvalidBasis(format!("{tag}_{{{i},{j}}} requires i < j")));
        }
        Ok(Self { tag, i, j })
    }

    pub const fn b(i: usize, j: usize) -> Self {
        Self { tag: Tag::B, i, j }
    }

    pub const fn c(i: usize, j: usize) -> Self {
        Self { tag: Tag::C, i, j }
    }

    pub const fn d(i: usize, j: usize) -> Self {
        Self { tag: Tag::D, i, j }
    }

    pub const fn e(i: usize, j: usize) -> Self {
        Self { tag: Tag::E, i, j }
    }

    pub fn is_diagonal(&self) -> bool {
        self.tag == Tag::E && self.i == self.j
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.i < 10 && self.j < 10 {
            write!(f, "{}{}{}", self.tag, self.i, self.j)
        } else {
            write!(f, "{}_{{{},{}}}", self.tag, self.i, self.j)
        }
    }
}

/// Accepts `B12` (single-digit indices), `B_{1,12}`, `B(1,12)` and `B_1_12`.
impl FromStr for BasisElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidBasis(format!("cannot parse basis element {s:?}"));
        let mut chars = s.chars();
        let tag: Tag = chars.next().ok_or_else(bad)?.to_string().parse()?;
        let rest = chars.as_str();
        let (i, j) = if rest.len() == 2 && rest.bytes().all(|b| b.is_ascii_digit()) {
            (rest[..1].parse().map_err(|_| bad())?, rest[1..].parse().map_err(|_| bad())?)
        } else {
            let inner = rest
                .trim_start_matches('_')
                .trim_start_matches(['{', '('])
                .trim_end_matches(['}', ')']);
            let mut parts = inner.split([',', '_']).map(str::trim);
            let i = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
            let j = parts.next().and_then(|p| p.parse().ok()).ok_or_else(bad)?;
            if parts.next().is_some() {
                return Err(bad());
            }
            (i, j)
        };
        BasisElement::new(tag, i, j)
    }
}

/// Exact rational combination of canonical generators of one algebra.
///
/// Invariants: no zero coefficients are stored, every key is admissible for
/// `kind`, and D terms only use `D_1k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    kind: AlgebraKind,
    terms: BTreeMap<BasisElement, Rational>,
}

impl AlgebraElement {
    pub fn zero(kind: AlgebraKind) -> Self {
        Self { kind, terms: BTreeMap::new() }
    }

    pub fn from_basis(kind: AlgebraKind, b: BasisElement) -> Result<Self> {
        Self::from_terms(kind, [(b, Rational::one())])
    }

    /// Sums the given terms, rewriting non-canonical `D_ij` and dropping
    /// anything that cancels.
    pub fn from_terms<I>(kind: AlgebraKind, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisElement, Rational)>,
    {
        let mut e = Self::zero(kind);
        for (b, c) in terms {
            if !kind.admits(&b) {
                return Err(Error::InadmissibleBasis { element: b, kind });
            }
            e.add_term(b, c);
        }
        Ok(e)
    }

    /// Integer-coefficient convenience constructor used heavily in tests.
    pub fn from_int_terms<I>(kind: AlgebraKind, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BasisElement)>,
    {
        Self::from_terms(kind, terms.into_iter().map(|(c, b)| (b, rational(c))))
    }

    /// Caller guarantees `b` is admissible.
    pub(crate) fn add_term(&mut self, b: BasisElement, c: Rational) {
        if b.tag == Tag::D && b.i != 1 {
            // D_ij = D_1j − D_1i
            self.add_term(BasisElement::d(1, b.j), c.clone());
            self.add_term(BasisElement::d(1, b.i), -c);
            return;
        }
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisElement, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a canonical basis element (zero when absent).
    pub fn coeff(&self, b: &BasisElement) -> Rational {
        self.terms.get(b).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.kind.expect_same(&other.kind)?;
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.scaled(&-Rational::one()))
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.kind);
        }
        Self {
            kind: self.kind,
            terms: self.terms.iter().map(|(b, v)| (*b, v * c)).collect(),
        }
    }

    /// Coordinates in the canonical ordered basis.
    pub fn to_dense(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.kind.dimension()];
        for (b, c) in &self.terms {
            let idx = self.kind.index_of(b).expect("stored terms are canonical");
            v[idx] = c.clone();
        }
        v
    }

    pub fn from_dense(kind: AlgebraKind, coords: &[Rational]) -> Self {
        debug_assert_eq!(coords.len(), kind.dimension());
        let basis = kind.basis();
        let terms = basis
            .into_iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b, c.clone()))
            .collect();
        Self { kind, terms }
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if mag.is_one() {
                write!(f, "{b}")?;
            } else if mag.is_integer() {
                write!(f, "{mag}{b}")?;
            } else {
                write!(f, "({mag}){b}")?;
            }
        }
        Ok(())
    }
}
