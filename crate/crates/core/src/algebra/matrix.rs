use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{AlgebraElement, AlgebraKind, BasisElement, Family, Rational, Tag};
use crate::error::{Error, Result};

/// `re + i·im` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ComplexRational {
    pub re: Rational,
    pub im: Rational,
}

impl ComplexRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn imag(im: Rational) -> Self {
        Self { re: Rational::zero(), im }
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl Zero for ComplexRational {
    fn zero() -> Self {
        Self::real(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Add for &ComplexRational {
    type Output = ComplexRational;

    fn add(self, rhs: Self) -> ComplexRational {
        ComplexRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Add for ComplexRational {
    type Output = ComplexRational;

    fn add(self, rhs: Self) -> ComplexRational {
        &self + &rhs
    }
}

impl Sub for &ComplexRational {
    type Output = ComplexRational;

    fn sub(self, rhs: Self) -> ComplexRational {
        ComplexRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &ComplexRational {
    type Output = ComplexRational;

    fn mul(self, rhs: Self) -> ComplexRational {
        ComplexRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &ComplexRational {
    type Output = ComplexRational;

    fn neg(self) -> ComplexRational {
        ComplexRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl fmt::Display for ComplexRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im.is_one() => f.write_str("i"),
            (true, false) if (-&self.im).is_one() => f.write_str("-i"),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => write!(f, "{}{:+}i", self.re, self.im),
        }
    }
}

/// Square complex-rational matrix, row-major, 0-based indexing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    data: Vec<ComplexRational>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![ComplexRational::zero(); n * n] }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: Vec<Vec<ComplexRational>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &ComplexRational {
        &self.data[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: ComplexRational) {
        self.data[r * self.n + c] = v;
    }

    fn add_at(&mut self, r: usize, c: usize, v: &ComplexRational) {
        let idx = r * self.n + c;
        self.data[idx] = &self.data[idx] + v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        out.add_at(r, c, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.n, rhs.n);
        Matrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }

    /// `XY − YX`
    pub fn commutator(&self, rhs: &Matrix) -> Matrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn write_basis(m: &mut Matrix, b: &BasisElement, c: &Rational) {
    let (i, j) = (b.i - 1, b.j - 1);
    let re = ComplexRational::real(c.clone());
    let im = ComplexRational::imag(c.clone());
    match b.tag {
        Tag::B => {
            m.add_at(i, j, &re);
            m.add_at(j, i, &-&re);
        }
        Tag::C => {
            m.add_at(i, j, &im);
            m.add_at(j, i, &im);
        }
        Tag::D => {
            m.add_at(i, i, &im);
            m.add_at(j, j, &-&im);
        }
        Tag::E => m.add_at(i, j, &re),
    }
}

/// Matrix of an algebra element in the defining representation.
pub fn to_matrix(e: &AlgebraElement) -> Matrix {
    let mut m = Matrix::zeros(e.kind().n());
    for (b, c) in e.terms() {
        write_basis(&mut m, b, c);
    }
    m
}

/// Inverse of [`to_matrix`]: expresses `m` in the canonical basis of `kind`.
pub fn decompose(m: &Matrix, kind: AlgebraKind) -> Result<AlgebraElement> {
    let n = kind.n();
    let reject = |reason: String| Error::Membership { kind, reason };
    if m.size() != n {
        return Err(reject(format!("expected a {n}x{n} matrix, got {0}x{0}", m.size())));
    }
    let mut out = AlgebraElement::zero(kind);
    match kind.family() {
        Family::Gl => {
            for r in 0..n {
                for c in 0..n {
                    let v = m.get(r, c);
                    if !v.im.is_zero() {
                        return Err(reject(format!("entry ({}, {}) is not real", r + 1, c + 1)));
                    }
                    out.add_term(BasisElement::e(r + 1, c + 1), v.re.clone());
                }
            }
        }
        Family::So => {
            for r in 0..n {
                for c in r..n {
                    let (v, w) = (m.get(r, c), m.get(c, r));
                    if !v.im.is_zero() || !w.im.is_zero() {
                        return Err(reject(format!("entry ({}, {}) is not real", r + 1, c + 1)));
                    }
                    if v.re != -w.re.clone() {
                        return Err(reject(format!(
                            "not skew-symmetric at ({}, {})",
                            r + 1,
                            c + 1
                        )));
                    }
                    if r != c {
                        out.add_term(BasisElement::b(r + 1, c + 1), v.re.clone());
                    }
                }
            }
        }
        Family::Su => {
            let mut trace = Rational::zero();
            for r in 0..n {
                for c in r..n {
                    let (v, w) = (m.get(r, c), m.get(c, r));
                    if *v != -&w.conj() {
                        return Err(reject(format!(
                            "not skew-Hermitian at ({}, {})",
                            r + 1,
                            c + 1
                        )));
                    }
                    if r == c {
                        trace += &v.im;
                        // i·h·E_kk contributes −h·D_1k for k ≥ 2; row 1 is fixed by the trace
                        if r > 0 {
                            out.add_term(BasisElement::d(1, r + 1), -v.im.clone());
                        }
                    } else {
                        out.add_term(BasisElement::b(r + 1, c + 1), v.re.clone());
                        out.add_term(BasisElement::c(r + 1, c + 1), v.im.clone());
                    }
                }
            }
            if !trace.is_zero() {
                return Err(reject(format!("trace is {trace}i, not zero")));
            }
        }
    }
    Ok(out)
}

/// `[x, y]` computed as `decompose(XY − YX)`. Independent of the structure
/// constants in [`super::bracket`]; used to cross-check them.
pub fn bracket_via_matrices(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
    x.kind().expect_same(&y.kind())?;
    decompose(&to_matrix(x).commutator(&to_matrix(y)), x.kind())
}
