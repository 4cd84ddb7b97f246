use num_traits::{One, Zero};

use super::{AlgebraElement, AlgebraKind, BasisElement, Family, Rational, StructureConstants};
use crate::error::{Error, Result};

/// Exact subspace of an algebra, kept in reduced row-echelon form over the
/// canonical ordered basis (pivots strictly increasing, pivot entries 1,
/// pivot columns cleared in every other row).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanBasis {
    kind: AlgebraKind,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl SpanBasis {
    pub fn new(kind: AlgebraKind) -> Self {
        Self { kind, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.kind.dimension()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> Vec<AlgebraElement> {
        self.rows.iter().map(|r| AlgebraElement::from_dense(self.kind, r)).collect()
    }

    /// Residual of `v` after eliminating every pivot column.
    fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub(crate) fn insert_dense(&mut self, v: Vec<Rational>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        if !inv.is_one() {
            for x in v.iter_mut().skip(p).filter(|x| !x.is_zero()) {
                *x *= &inv;
            }
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v).skip(p) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub(crate) fn contains_dense(&self, v: Vec<Rational>) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn insert(&mut self, e: &AlgebraElement) -> Result<bool> {
        self.kind.expect_same(&e.kind())?;
        Ok(self.insert_dense(e.to_dense()))
    }

    pub fn contains(&self, e: &AlgebraElement) -> Result<bool> {
        self.kind.expect_same(&e.kind())?;
        Ok(self.contains_dense(e.to_dense()))
    }

    pub fn contains_basis(&self, b: BasisElement) -> Result<bool> {
        self.contains(&AlgebraElement::from_basis(self.kind, b)?)
    }
}

/// Value-style insertion: returns the updated basis and whether `e` was
/// independent of it.
pub fn span_insert(mut basis: SpanBasis, e: &AlgebraElement) -> Result<(SpanBasis, bool)> {
    let inserted = basis.insert(e)?;
    Ok((basis, inserted))
}

/// Result of [`lie_closure`].
#[derive(Debug, Clone)]
pub struct Closure {
    pub basis: SpanBasis,
    pub dimension: usize,
    /// Number of bracket sweeps that enlarged the span, i.e. the least `k`
    /// with `span(S^k) = span(S^{k+1})` for `S^{k+1} = [S^k, S^k] ∪ S^k`.
    pub steps: usize,
}

impl Closure {
    pub fn is_full(&self) -> bool {
        self.basis.is_full()
    }
}

/// Span of the Lie subalgebra generated by `generators`.
///
/// Each sweep brackets the elements added in the previous sweep against
/// every element kept so far, so no pair is bracketed twice. Stops at the
/// fixpoint, or as soon as the span is the whole algebra.
pub fn lie_closure(generators: &[AlgebraElement]) -> Result<Closure> {
    let first = generators.first().ok_or(Error::EmptyGenerators)?;
    let kind = first.kind();
    for g in generators {
        kind.expect_same(&g.kind())?;
    }
    let constants = StructureConstants::new(kind);
    let mut basis = SpanBasis::new(kind);
    let mut kept: Vec<Vec<Rational>> = Vec::new();
    for g in generators {
        let v = g.to_dense();
        if basis.insert_dense(v.clone()) {
            kept.push(v);
        }
    }

    let mut frontier_start = 0;
    let mut steps = 0;
    while frontier_start < kept.len() && !basis.is_full() {
        let frontier_end = kept.len();
        let mut grew = false;
        'sweep: for f in frontier_start..frontier_end {
            for other in 0..frontier_end {
                // frontier × frontier pairs are visited once
                if other >= frontier_start && other <= f {
                    continue;
                }
                let v = constants.bracket_dense(&kept[f], &kept[other]);
                if basis.insert_dense(v.clone()) {
                    kept.push(v);
                    grew = true;
                    if basis.is_full() {
                        break 'sweep;
                    }
                }
            }
        }
        if grew {
            steps += 1;
        }
        frontier_start = frontier_end;
    }
    let dimension = basis.rank();
    Ok(Closure { basis, dimension, steps })
}

/// Whether a gl(n) subspace contains sl(n): every `E_ij` (`i ≠ j`) and every
/// `E_ii − E_{i+1,i+1}`.
pub fn contains_sl(basis: &SpanBasis) -> Result<bool> {
    let kind = basis.kind();
    kind.expect_family(Family::Gl)?;
    let n = kind.n();
    for i in 1..=n {
        for j in 1..=n {
            if i != j && !basis.contains_basis(BasisElement::e(i, j))? {
                return Ok(false);
            }
        }
    }
    for i in 1..n {
        let h = AlgebraElement::from_terms(
            kind,
            [
                (BasisElement::e(i, i), Rational::one()),
                (BasisElement::e(i + 1, i + 1), -Rational::one()),
            ],
        )?;
        if !basis.contains(&h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn basis_el(kind: AlgebraKind, b: BasisElement) -> AlgebraElement {
        AlgebraElement::from_basis(kind, b).unwrap()
    }

    #[test]
    fn insert_tracks_dependence() {
        let su = AlgebraKind::su(3);
        let b12 = basis_el(su, BasisElement::b(1, 2));
        let (span, ins) = span_insert(SpanBasis::new(su), &b12).unwrap();
        assert!(ins);
        assert_eq!(span.rank(), 1);
        let (span, ins) = span_insert(span, &b12.scaled(&rational(3))).unwrap();
        assert!(!ins);
        assert_eq!(span.rank(), 1);
        let mixed = b12.checked_add(&basis_el(su, BasisElement::c(1, 2))).unwrap();
        let (span, ins) = span_insert(span, &mixed).unwrap();
        assert!(ins);
        assert_eq!(span.rank(), 2);
        assert!(span.contains_basis(BasisElement::c(1, 2)).unwrap());
    }

    #[test]
    fn echelon_invariants_hold() {
        let gl = AlgebraKind::gl(3);
        let mut span = SpanBasis::new(gl);
        let els = [
            AlgebraElement::from_int_terms(gl, [(2, BasisElement::e(2, 2)), (1, BasisElement::e(3, 1))]),
            AlgebraElement::from_int_terms(gl, [(1, BasisElement::e(1, 1)), (4, BasisElement::e(2, 2))]),
            AlgebraElement::from_int_terms(gl, [(1, BasisElement::e(1, 1)), (-1, BasisElement::e(3, 1))]),
        ];
        for e in &els {
            span.insert(e.as_ref().unwrap()).unwrap();
        }
        assert!(span.pivots().windows(2).all(|w| w[0] < w[1]));
        for (row, &p) in span.rows.iter().zip(span.pivots()) {
            assert!(row[p].is_one());
            for (other, _) in span.rows.iter().zip(span.pivots()).filter(|(r, _)| *r != row) {
                assert!(other[p].is_zero());
            }
        }
    }

    #[test]
    fn insert_kind_mismatch() {
        let mut span = SpanBasis::new(AlgebraKind::so(3));
        let e = basis_el(AlgebraKind::su(3), BasisElement::b(1, 2));
        assert!(matches!(span.insert(&e), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn closure_of_path_is_so3() {
        let so = AlgebraKind::so(3);
        let c = lie_closure(&[basis_el(so, BasisElement::b(1, 2)), basis_el(so, BasisElement::b(2, 3))]).unwrap();
        assert_eq!(c.dimension, 3);
        assert_eq!(c.steps, 1);
    }

    #[test]
    fn closure_already_closed() {
        let so = AlgebraKind::so(4);
        let c = lie_closure(&[basis_el(so, BasisElement::b(1, 2)), basis_el(so, BasisElement::b(3, 4))]).unwrap();
        assert_eq!(c.dimension, 2);
        assert_eq!(c.steps, 0);
    }

    #[test]
    fn closure_rejects_empty() {
        assert!(matches!(lie_closure(&[]), Err(Error::EmptyGenerators)));
    }

    #[test]
    fn sl_detection() {
        let gl = AlgebraKind::gl(3);
        let gens: Vec<_> = [(1, 2), (2, 1), (1, 3), (3, 1)]
            .iter()
            .map(|&(i, j)| basis_el(gl, BasisElement::e(i, j)))
            .collect();
        let c = lie_closure(&gens).unwrap();
        assert_eq!(c.dimension, 8);
        assert!(contains_sl(&c.basis).unwrap());

        let c = lie_closure(&[basis_el(gl, BasisElement::e(1, 2))]).unwrap();
        assert!(!contains_sl(&c.basis).unwrap());

        let full = lie_closure(&gl.basis().into_iter().map(|b| basis_el(gl, b)).collect::<Vec<_>>()).unwrap();
        assert!(contains_sl(&full.basis).unwrap());

        let so = SpanBasis::new(AlgebraKind::so(3));
        assert!(matches!(contains_sl(&so), Err(Error::KindMismatch { .. })));
    }
}
