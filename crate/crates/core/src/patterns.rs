//! Rigid drift patterns, free control patterns, and their instantiation.

use std::collections::BTreeSet;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{rational, AlgebraElement, AlgebraKind, BasisElement, Family, Rational, Tag};
use crate::error::{Error, Result};

/// Rigid pattern: the drift is `Σ l_s A_s` with every `l_s ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DriftPattern {
    kind: AlgebraKind,
    bases: Vec<AlgebraElement>,
}

impl DriftPattern {
    pub fn new(kind: AlgebraKind, bases: Vec<AlgebraElement>) -> Result<Self> {
        if bases.is_empty() {
            return Err(Error::InvalidPattern("drift pattern needs at least one base".into()));
        }
        for (s, a) in bases.iter().enumerate() {
            kind.expect_same(&a.kind())?;
            if a.is_zero() {
                return Err(Error::InvalidPattern(format!("drift base {} is zero", s + 1)));
            }
        }
        Ok(Self { kind, bases })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn bases(&self) -> &[AlgebraElement] {
        &self.bases
    }

    /// `Σ l_s A_s` for explicit coefficients (all nonzero, one per base).
    pub fn instantiate(&self, coeffs: &[Rational]) -> Result<AlgebraElement> {
        if coeffs.len() != self.bases.len() {
            return Err(Error::InvalidPattern(format!(
                "expected {} drift coefficients, got {}",
                self.bases.len(),
                coeffs.len()
            )));
        }
        if coeffs.iter().any(num_traits::Zero::is_zero) {
            return Err(Error::InvalidPattern("drift coefficients must be nonzero".into()));
        }
        let mut out = AlgebraElement::zero(self.kind);
        for (a, l) in self.bases.iter().zip(coeffs) {
            out = out.checked_add(&a.scaled(l))?;
        }
        Ok(out)
    }
}

/// Free pattern: a set of canonical generators, each usable with any
/// coefficient (including zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ControlPattern {
    kind: AlgebraKind,
    bases: BTreeSet<BasisElement>,
}

impl ControlPattern {
    pub fn new(kind: AlgebraKind, bases: impl IntoIterator<Item = BasisElement>) -> Result<Self> {
        let bases: BTreeSet<_> = bases.into_iter().collect();
        if bases.is_empty() {
            return Err(Error::InvalidPattern("control pattern needs at least one base".into()));
        }
        if let Some(b) = bases.iter().find(|b| !kind.admits(b)) {
            return Err(Error::InadmissibleBasis { element: *b, kind });
        }
        Ok(Self { kind, bases })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn bases(&self) -> &BTreeSet<BasisElement> {
        &self.bases
    }

    /// Bases of one tag; for su(n) the B / C / D groups.
    pub fn with_tag(&self, tag: Tag) -> impl Iterator<Item = &BasisElement> {
        self.bases.iter().filter(move |b| b.tag == tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroPatternPair {
    pub drift: DriftPattern,
    pub control: ControlPattern,
}

impl ZeroPatternPair {
    pub fn new(drift: DriftPattern, control: ControlPattern) -> Result<Self> {
        drift.kind().expect_same(&control.kind())?;
        Ok(Self { drift, control })
    }

    pub fn kind(&self) -> AlgebraKind {
        self.drift.kind()
    }
}

/// Nonempty set of nonzero coefficients the drift sampler draws from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientPool {
    values: Vec<Rational>,
}

impl CoefficientPool {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPool);
        }
        if values.iter().any(num_traits::Zero::is_zero) {
            return Err(Error::ZeroInPool);
        }
        Ok(Self { values })
    }

    /// Nonzero integers in `lo..=hi`.
    pub fn integer_range(lo: i64, hi: i64) -> Result<Self> {
        Self::new((lo..=hi).filter(|&v| v != 0).map(rational).collect())
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

impl Default for CoefficientPool {
    fn default() -> Self {
        Self::integer_range(-9, 9).expect("default pool is nonempty")
    }
}

/// Deterministic draw of `l_s` from `pool`, one per drift base.
pub fn sample_coefficients(p: &DriftPattern, pool: &CoefficientPool, seed: u64) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    p.bases()
        .iter()
        .map(|_| pool.values().choose(&mut rng).expect("pool is nonempty").clone())
        .collect()
}

/// Sampled drift `Σ l_s A_s`. May be zero through cancellation.
pub fn sample_drift(p: &DriftPattern, pool: &CoefficientPool, seed: u64) -> AlgebraElement {
    p.instantiate(&sample_coefficients(p, pool, seed))
        .expect("pool coefficients are nonzero and sized to the pattern")
}

/// One unit-coefficient generator per control base. Closure is monotone in
/// the generator set, so this choice dominates every other admissible one.
pub fn control_generators(p: &ControlPattern) -> Vec<AlgebraElement> {
    p.bases()
        .iter()
        .map(|b| AlgebraElement::from_basis(p.kind(), *b).expect("pattern bases are admissible"))
        .collect()
}

/// Whether every gl(n) drift base is a single matrix unit `E_ij` (up to a
/// nonzero scale).
pub fn drift_is_basis_subset(p: &DriftPattern) -> Result<bool> {
    p.kind().expect_family(Family::Gl)?;
    Ok(p.bases().iter().all(|a| a.term_count() == 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn so6_example() -> DriftPattern {
        let so = AlgebraKind::so(6);
        let b = BasisElement::b;
        let bases = vec![
            AlgebraElement::from_int_terms(so, [(2, b(1, 4)), (1, b(2, 5))]).unwrap(),
            AlgebraElement::from_int_terms(so, [(1, b(1, 2)), (-1, b(1, 5))]).unwrap(),
            AlgebraElement::from_int_terms(so, [(3, b(1, 5)), (2, b(2, 5))]).unwrap(),
        ];
        DriftPattern::new(so, bases).unwrap()
    }

    #[test]
    fn explicit_coefficients_cancel_b15() {
        let p = so6_example();
        let a = p.instantiate(&[rational(1), rational(3), rational(1)]).unwrap();
        let b = BasisElement::b;
        let expected =
            AlgebraElement::from_int_terms(p.kind(), [(3, b(1, 2)), (2, b(1, 4)), (3, b(2, 5))]).unwrap();
        assert_eq!(a, expected);
    }

    #[test]
    fn single_base_pool_of_two() {
        let so = AlgebraKind::so(3);
        let a1 = AlgebraElement::from_basis(so, BasisElement::b(1, 2)).unwrap();
        let p = DriftPattern::new(so, vec![a1.clone()]).unwrap();
        let pool = CoefficientPool::new(vec![rational(2)]).unwrap();
        assert_eq!(sample_drift(&p, &pool, 17), a1.scaled(&rational(2)));
    }

    #[test]
    fn pool_validation() {
        assert_eq!(CoefficientPool::new(vec![]), Err(Error::EmptyPool));
        assert_eq!(CoefficientPool::new(vec![rational(0)]), Err(Error::ZeroInPool));
        assert_eq!(CoefficientPool::default().values().len(), 18);
    }

    #[test]
    fn sampling_is_deterministic() {
        let p = so6_example();
        let pool = CoefficientPool::default();
        assert_eq!(sample_drift(&p, &pool, 42), sample_drift(&p, &pool, 42));
    }

    #[test]
    fn control_generators_canonicalize_d() {
        let su = AlgebraKind::su(5);
        let p = ControlPattern::new(su, [BasisElement::b(1, 2), BasisElement::c(1, 3), BasisElement::d(2, 4)])
            .unwrap();
        let gens = control_generators(&p);
        assert_eq!(gens.len(), 3);
        let d24 = &gens[2];
        assert_eq!(d24.coeff(&BasisElement::d(1, 4)), rational(1));
        assert_eq!(d24.coeff(&BasisElement::d(1, 2)), rational(-1));
    }

    #[test]
    fn control_pattern_validation() {
        let so = AlgebraKind::so(3);
        assert!(ControlPattern::new(so, []).is_err());
        assert!(matches!(
            ControlPattern::new(so, [BasisElement::e(1, 1)]),
            Err(Error::InadmissibleBasis { .. })
        ));
        let gl = ControlPattern::new(AlgebraKind::gl(2), [BasisElement::e(1, 1)]).unwrap();
        assert_eq!(control_generators(&gl).len(), 1);
    }

    #[test]
    fn basis_subset_check() {
        let gl = AlgebraKind::gl(4);
        let e = BasisElement::e;
        let ex4: Vec<_> = [(1, 2), (1, 3), (3, 1), (3, 3), (4, 2)]
            .iter()
            .map(|&(i, j)| AlgebraElement::from_basis(gl, e(i, j)).unwrap())
            .collect();
        assert!(drift_is_basis_subset(&DriftPattern::new(gl, ex4).unwrap()).unwrap());
        let ex3 = vec![AlgebraElement::from_int_terms(gl, [(3, e(1, 3)), (1, e(4, 2))]).unwrap()];
        assert!(!drift_is_basis_subset(&DriftPattern::new(gl, ex3).unwrap()).unwrap());
        assert!(matches!(drift_is_basis_subset(&so6_example()), Err(Error::KindMismatch { .. })));
    }
}
