use num_traits::Zero;

use super::{rational, AlgebraElement, AlgebraKind, BasisElement, Rational, Tag};
use crate::error::Result;

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// Integer accumulator for bracket results written with unordered index
/// pairs: `B_ji = −B_ij`, `B_ii = 0`, `C_ji = C_ij`, `C_ii = 2i·E_ii`.
struct Accumulator {
    kind: AlgebraKind,
    terms: Vec<(BasisElement, i64)>,
    /// imaginary diagonal part, `Σ diag[k]·i·E_kk`
    diag: Vec<i64>,
}

impl Accumulator {
    fn new(kind: AlgebraKind) -> Self {
        Self { kind, terms: Vec::new(), diag: vec![0; kind.n() + 1] }
    }

    fn b(&mut self, i: usize, j: usize, c: i64) {
        if c == 0 || i == j {
            return;
        }
        if i < j {
            self.terms.push((BasisElement::b(i, j), c));
        } else {
            self.terms.push((BasisElement::b(j, i), -c));
        }
    }

    fn c(&mut self, i: usize, j: usize, c: i64) {
        if c == 0 {
            return;
        }
        if i == j {
            self.diag[i] += 2 * c;
        } else {
            self.terms.push((BasisElement::c(i.min(j), i.max(j)), c));
        }
    }

    fn e(&mut self, i: usize, j: usize, c: i64) {
        if c != 0 {
            self.terms.push((BasisElement::e(i, j), c));
        }
    }

    fn finish(mut self) -> AlgebraElement {
        // traceless imaginary diagonal Σ h_k iE_kk = Σ_{k≥2} (−h_k) D_1k
        debug_assert_eq!(self.diag.iter().sum::<i64>(), 0);
        for k in 2..=self.kind.n() {
            if self.diag[k] != 0 {
                self.terms.push((BasisElement::d(1, k), -self.diag[k]));
            }
        }
        let mut out = AlgebraElement::zero(self.kind);
        for (b, c) in self.terms {
            out.add_term(b, rational(c));
        }
        out
    }
}

/// Bracket of two generators from the closed-form structure constants.
///
/// gl(n): `[E_ij, E_kl] = δ_jk E_il − δ_li E_kj`.
///
/// so(n) / su(n), with `D_kl` allowed for any `k < l`:
///
/// ```text
/// [B_ij, B_kl] = δ_jk B_il + δ_il B_jk + δ_jl B_ki + δ_ik B_lj
/// [C_ij, C_kl] = δ_li B_kj + δ_ki B_lj + δ_lj B_ki + δ_kj B_li
/// [B_ij, C_kl] = δ_jk C_il + δ_jl C_ik − δ_il C_kj − δ_ik C_lj
/// [B_ij, D_kl] = (δ_jk + δ_li − δ_ki − δ_jl) C_ij
/// [C_ij, D_kl] = (δ_ki + δ_jl − δ_kj − δ_il) B_ij
/// [D_ij, D_kl] = 0
/// ```
///
/// Both arguments must be admissible for `kind`.
pub fn basis_bracket(kind: AlgebraKind, x: &BasisElement, y: &BasisElement) -> AlgebraElement {
    debug_assert!(kind.admits(x) && kind.admits(y));
    let mut acc = Accumulator::new(kind);
    let (i, j, k, l) = (x.i, x.j, y.i, y.j);
    match (x.tag, y.tag) {
        (Tag::E, Tag::E) => {
            acc.e(i, l, delta(j, k));
            acc.e(k, j, -delta(l, i));
        }
        (Tag::B, Tag::B) => {
            acc.b(i, l, delta(j, k));
            acc.b(j, k, delta(i, l));
            acc.b(k, i, delta(j, l));
            acc.b(l, j, delta(i, k));
        }
        (Tag::C, Tag::C) => {
            acc.b(k, j, delta(l, i));
            acc.b(l, j, delta(k, i));
            acc.b(k, i, delta(l, j));
            acc.b(l, i, delta(k, j));
        }
        (Tag::B, Tag::C) => {
            acc.c(i, l, delta(j, k));
            acc.c(i, k, delta(j, l));
            acc.c(k, j, -delta(i, l));
            acc.c(l, j, -delta(i, k));
        }
        (Tag::B, Tag::D) => {
            acc.c(i, j, delta(j, k) + delta(l, i) - delta(k, i) - delta(j, l));
        }
        (Tag::C, Tag::D) => {
            acc.b(i, j, delta(k, i) + delta(j, l) - delta(k, j) - delta(i, l));
        }
        (Tag::D, Tag::D) => {}
        // antisymmetry for the mirrored mixed pairs
        (Tag::C, Tag::B) | (Tag::D, Tag::B) | (Tag::D, Tag::C) => {
            return basis_bracket(kind, y, x).scaled(&rational(-1));
        }
        _ => unreachable!("inadmissible tag pair for {kind}"),
    }
    acc.finish()
}

/// Lie bracket `[x, y]`, the bilinear extension of [`basis_bracket`].
pub fn bracket(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.kind().expect_same(&y.kind())?;
    let kind = x.kind();
    let mut out = AlgebraElement::zero(kind);
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let coeff = ca * cb;
            for (r, cr) in basis_bracket(kind, a, b).terms() {
                out.add_term(*r, &coeff * cr);
            }
        }
    }
    Ok(out)
}

/// Dense structure-constant table `[e_a, e_b] = Σ_c t_abc e_c` over the
/// canonical ordered basis. All constants are small integers.
#[derive(Debug, Clone)]
pub struct StructureConstants {
    kind: AlgebraKind,
    /// `table[a * dim + b]` lists the nonzero `(c, t_abc)`
    table: Vec<Vec<(usize, i64)>>,
}

impl StructureConstants {
    pub fn new(kind: AlgebraKind) -> Self {
        let basis = kind.basis();
        let dim = basis.len();
        let mut table = vec![Vec::new(); dim * dim];
        for a in 0..dim {
            for b in (a + 1)..dim {
                let r = basis_bracket(kind, &basis[a], &basis[b]);
                let entries: Vec<(usize, i64)> = r
                    .terms()
                    .map(|(e, c)| {
                        let idx = kind.index_of(e).expect("canonical");
                        let c = c.to_integer().try_into().expect("small structure constant");
                        (idx, c)
                    })
                    .collect();
                table[b * dim + a] = entries.iter().map(|&(c, v)| (c, -v)).collect();
                table[a * dim + b] = entries;
            }
        }
        Self { kind, table }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn get(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.kind.dimension() + b]
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket_dense(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let dim = self.kind.dimension();
        let mut out = vec![Rational::zero(); dim];
        let ys: Vec<usize> = (0..dim).filter(|&b| !y[b].is_zero()).collect();
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for &b in &ys {
                let entries = self.get(a, b);
                if entries.is_empty() {
                    continue;
                }
                let c = xa * &y[b];
                for &(r, t) in entries {
                    out[r] += &c * rational(t);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement as El;

    fn el(kind: AlgebraKind, terms: &[(i64, BasisElement)]) -> El {
        El::from_int_terms(kind, terms.iter().copied()).unwrap()
    }

    #[test]
    fn gl_matrix_units() {
        let gl = AlgebraKind::gl(3);
        let x = el(gl, &[(1, BasisElement::e(1, 2))]);
        let y = el(gl, &[(1, BasisElement::e(2, 3))]);
        assert_eq!(bracket(&x, &y).unwrap(), el(gl, &[(1, BasisElement::e(1, 3))]));
    }

    #[test]
    fn su_examples() {
        let su = AlgebraKind::su(4);
        let b12 = el(su, &[(1, BasisElement::b(1, 2))]);
        let c12 = el(su, &[(1, BasisElement::c(1, 2))]);
        assert_eq!(bracket(&b12, &c12).unwrap(), el(su, &[(2, BasisElement::d(1, 2))]));
        let d12 = el(su, &[(1, BasisElement::d(1, 2))]);
        let d34 = el(su, &[(1, BasisElement::d(3, 4))]);
        assert!(bracket(&d12, &d34).unwrap().is_zero());
        assert_eq!(bracket(&b12, &d12).unwrap(), el(su, &[(-2, BasisElement::c(1, 2))]));
    }

    #[test]
    fn kind_mismatch() {
        let x = el(AlgebraKind::so(3), &[(1, BasisElement::b(1, 2))]);
        let y = el(AlgebraKind::so(4), &[(1, BasisElement::b(1, 2))]);
        assert!(matches!(bracket(&x, &y), Err(crate::Error::KindMismatch { .. })));
    }

    #[test]
    fn dense_bracket_matches_sparse() {
        let su = AlgebraKind::su(3);
        let sc = StructureConstants::new(su);
        let x = el(su, &[(2, BasisElement::b(1, 2)), (1, BasisElement::c(2, 3)), (3, BasisElement::d(1, 3))]);
        let y = el(su, &[(1, BasisElement::b(1, 2)), (-1, BasisElement::c(1, 3)), (1, BasisElement::d(1, 2))]);
        let dense = sc.bracket_dense(&x.to_dense(), &y.to_dense());
        assert_eq!(El::from_dense(su, &dense), bracket(&x, &y).unwrap());
    }
}
