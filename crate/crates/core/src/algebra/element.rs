use std::cmp::Ordering;
use std::collections::BTreeMap;

use num::Zero;

use super::{AlgebraError, CoefficientRing, Scalar};

/// Exponent vector in generator order, trailing zeros trimmed.
///
/// The empty vector is the unit monomial. Ordering is descending
/// lexicographic, so `x1 y` sorts before `y x1` in a tensor square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Monomial(exponents)
    }

    pub fn generator(index: usize) -> Self {
        let mut v = vec![0; index + 1];
        v[index] = 1;
        Monomial(v)
    }

    pub fn exponent(&self, index: usize) -> u32 {
        self.0.get(index).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Moves every exponent `offset` slots to the right.
    pub fn shifted(&self, offset: usize) -> Self {
        if self.is_unit() {
            return self.clone();
        }
        let mut v = vec![0; offset];
        v.extend_from_slice(&self.0);
        Monomial(v)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    ring: CoefficientRing,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero(ring: &CoefficientRing) -> Self {
        Element { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ring: &CoefficientRing) -> Self {
        Self::term(ring, Monomial::unit(), ring.one())
    }

    pub fn term(ring: &CoefficientRing, monomial: Monomial, coefficient: Scalar) -> Self {
        let mut e = Self::zero(ring);
        e.add_term(monomial, &coefficient);
        e
    }

    /// Builds an element from raw terms, merging duplicates and pruning zeros.
    /// Coefficients must already be ring representatives.
    pub fn from_terms<I>(ring: &CoefficientRing, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut e = Self::zero(ring);
        for (m, c) in terms {
            e.add_term(m, &c);
        }
        e
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term.
    pub fn counit(&self) -> Scalar {
        self.coefficient(&Monomial::unit())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        let sum = match self.terms.get(&m) {
            Some(old) => self.ring.add(old, c),
            None => self.ring.add(&Scalar::zero(), c),
        };
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    fn check_ring(&self, other: &Element) -> Result<(), AlgebraError> {
        if self.ring != other.ring {
            return Err(AlgebraError::RingMismatch(self.ring.clone(), other.ring.clone()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c)));
        Element::from_terms(&self.ring, terms)
    }

    /// Termwise scaling; `c` must be a representative of the element's ring.
    pub fn scalar_mul(&self, c: &Scalar) -> Element {
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), self.ring.mul(a, c)));
        Element::from_terms(&self.ring, terms)
    }

    pub fn scale_int(&self, c: i64) -> Element {
        self.scalar_mul(&self.ring.from_int(c))
    }

    pub fn shifted(&self, offset: usize) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (m.shifted(offset), c.clone()));
        Element::from_terms(&self.ring, terms)
    }

    /// Leading (first in canonical order) term.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next()
    }
}
