use std::collections::HashSet;

use serde::Serialize;

use super::{AlgebraError, CoefficientRing, Element, Monomial, Scalar, DEFAULT_MAX_DEGREE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum GeneratorKind {
    Exterior,
    TruncatedPoly { height: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn exterior(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree, kind: GeneratorKind::Exterior }
    }

    pub fn truncated(name: impl Into<String>, degree: u32, height: u32) -> Self {
        Generator { name: name.into(), degree, kind: GeneratorKind::TruncatedPoly { height } }
    }

    /// Largest exponent allowed in a canonical monomial.
    pub fn max_exponent(&self) -> u32 {
        match self.kind {
            GeneratorKind::Exterior => 1,
            GeneratorKind::TruncatedPoly { height } => height - 1,
        }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// What happens to product terms above `max_degree`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// Any such term is an error.
    #[default]
    Strict,
    /// Such terms are dropped and the product is flagged as truncated.
    Lenient,
}

/// How a flattened tensor power splits its generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TensorLayout {
    pub base_len: usize,
    pub factors: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    ring: CoefficientRing,
    generators: Vec<Generator>,
    max_degree: u32,
    truncation: Truncation,
    layout: TensorLayout,
}

impl AlgebraPresentation {
    pub fn new(ring: CoefficientRing, generators: Vec<Generator>, max_degree: u32) -> Result<Self, AlgebraError> {
        let mut seen = HashSet::new();
        for g in &generators {
            let invalid =
                |reason: &str| AlgebraError::InvalidGenerator { name: g.name.clone(), reason: reason.to_string() };
            if g.name.is_empty() || !g.name.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
                return Err(invalid("names start with a letter"));
            }
            if g.degree == 0 {
                return Err(invalid("degree must be positive"));
            }
            match g.kind {
                GeneratorKind::Exterior if !g.is_odd() => {
                    return Err(invalid("exterior generators have odd degree"));
                }
                GeneratorKind::TruncatedPoly { height } if height < 2 => {
                    return Err(invalid("height must be at least 2"));
                }
                _ => {}
            }
            if !seen.insert(g.name.as_str()) {
                return Err(AlgebraError::DuplicateGenerator(g.name.clone()));
            }
        }
        if max_degree == 0 {
            return Err(AlgebraError::DegreeOutOfRange { degree: 0, max_degree: 0 });
        }
        let base_len = generators.len();
        Ok(AlgebraPresentation {
            ring,
            generators,
            max_degree,
            truncation: Truncation::Strict,
            layout: TensorLayout { base_len, factors: 1 },
        })
    }

    pub fn with_default_degree(ring: CoefficientRing, generators: Vec<Generator>) -> Result<Self, AlgebraError> {
        Self::new(ring, generators, DEFAULT_MAX_DEGREE)
    }

    pub fn with_truncation(mut self, truncation: Truncation) -> Self {
        self.truncation = truncation;
        self
    }

    /// Flattened `k`-fold tensor power: generators of factor `f` occupy
    /// slots `f * n .. (f + 1) * n` and are named `name#f`.
    pub fn tensor_power(&self, k: usize) -> Self {
        assert_eq!(self.layout.factors, 1, "tensor powers are taken of base algebras");
        assert!(k >= 1);
        let generators = (0..k)
            .flat_map(|f| {
                self.generators.iter().map(move |g| Generator { name: format!("{}#{}", g.name, f), ..g.clone() })
            })
            .collect();
        AlgebraPresentation {
            ring: self.ring.clone(),
            generators,
            max_degree: self.max_degree,
            truncation: self.truncation,
            layout: TensorLayout { base_len: self.generators.len(), factors: k },
        }
    }

    pub fn ring(&self) -> &CoefficientRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn layout(&self) -> TensorLayout {
        self.layout
    }

    /// Name without the `#factor` suffix of tensor powers.
    pub fn base_name(&self, index: usize) -> &str {
        let name = &self.generators[index].name;
        name.split('#').next().unwrap_or(name)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator(&self, index: usize) -> Element {
        Element::term(&self.ring, Monomial::generator(index), self.ring.one())
    }

    pub fn generator_named(&self, name: &str) -> Result<Element, AlgebraError> {
        self.index_of(name).map(|i| self.generator(i)).ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))
    }

    pub fn one(&self) -> Element {
        Element::one(&self.ring)
    }

    pub fn zero(&self) -> Element {
        Element::zero(&self.ring)
    }

    pub fn scalar(&self, c: i64) -> Scalar {
        self.ring.from_int(c)
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.exponents().iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum()
    }

    /// Whether `m` indexes only generators of this presentation and respects
    /// exponent bounds.
    pub fn is_canonical(&self, m: &Monomial) -> bool {
        m.exponents().len() <= self.generators.len()
            && m.exponents().iter().zip(&self.generators).all(|(e, g)| *e <= g.max_exponent())
    }

    /// Common degree of the terms, `None` for zero.
    pub fn homogeneous_degree(&self, e: &Element) -> Result<Option<u32>, AlgebraError> {
        let mut degree = None;
        for (m, _) in e.terms() {
            let d = self.monomial_degree(m);
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(AlgebraError::MixedDegree(d0, d)),
                _ => {}
            }
        }
        Ok(degree)
    }

    /// Product of two canonical monomials.
    ///
    /// Returns `None` when the product vanishes, otherwise whether the Koszul
    /// sign is negative and the canonical product. Moving each factor of `b`
    /// left past the higher-indexed factors of `a` costs one sign per pair of
    /// odd-degree blocks.
    pub fn multiply_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(bool, Monomial)> {
        let n = a.exponents().len().max(b.exponents().len());
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            let e = a.exponent(i) + b.exponent(i);
            if e > self.generators[i].max_exponent() {
                return None;
            }
            exps.push(e);
        }
        // parity of the number of odd a-blocks strictly to the right of slot j
        let mut odd_a_right = false;
        let mut negative = false;
        for j in (0..n).rev() {
            let g = &self.generators[j];
            if g.is_odd() && b.exponent(j) % 2 == 1 && odd_a_right {
                negative = !negative;
            }
            if g.is_odd() && a.exponent(j) % 2 == 1 {
                odd_a_right = !odd_a_right;
            }
        }
        Some((negative, Monomial::new(exps)))
    }

    fn check_element(&self, e: &Element) -> Result<(), AlgebraError> {
        if e.ring() != &self.ring {
            return Err(AlgebraError::RingMismatch(e.ring().clone(), self.ring.clone()));
        }
        for (m, _) in e.terms() {
            if m.exponents().len() > self.generators.len() {
                return Err(AlgebraError::ForeignMonomial(m.exponents().to_vec()));
            }
        }
        Ok(())
    }

    /// Graded-commutative product. Under [`Truncation::Lenient`] terms past
    /// the cutoff are dropped and the returned flag is set.
    pub fn multiply_flagged(&self, a: &Element, b: &Element) -> Result<(Element, bool), AlgebraError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let mut out = self.zero();
        let mut truncated = false;
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let Some((negative, m)) = self.multiply_monomials(ma, mb) else {
                    continue;
                };
                let degree = self.monomial_degree(&m);
                if degree > self.max_degree {
                    match self.truncation {
                        Truncation::Strict => {
                            return Err(AlgebraError::DegreeOverflow { degree, max_degree: self.max_degree })
                        }
                        Truncation::Lenient => {
                            truncated = true;
                            continue;
                        }
                    }
                }
                let mut c = self.ring.mul(ca, cb);
                if negative {
                    c = self.ring.neg(&c);
                }
                out.add_term(m, &c);
            }
        }
        Ok((out, truncated))
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Result<Element, AlgebraError> {
        self.multiply_flagged(a, b).map(|(e, _)| e)
    }

    pub fn power(&self, e: &Element, k: u32) -> Result<Element, AlgebraError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.multiply(&acc, e)?;
        }
        Ok(acc)
    }

    /// Product of a monomial's generators one at a time, in canonical order.
    pub fn monomial_element(&self, m: &Monomial) -> Element {
        Element::term(&self.ring, m.clone(), self.ring.one())
    }

    /// Reduces coefficients, merges duplicates and drops terms that violate
    /// the exponent bounds (they are zero in the quotient).
    pub fn canonicalize(&self, e: &Element) -> Element {
        let terms = e.terms().filter(|(m, _)| self.is_canonical(m)).map(|(m, c)| (m.clone(), c.clone()));
        Element::from_terms(&self.ring, terms)
    }

    /// Every canonical monomial of degree `d`, in canonical order.
    pub fn basis_in_degree(&self, d: u32) -> Result<Vec<Monomial>, AlgebraError> {
        if d > self.max_degree {
            return Err(AlgebraError::DegreeOutOfRange { degree: d, max_degree: self.max_degree });
        }
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.generators.len()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate(&self, index: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if index == self.generators.len() {
            if remaining == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let g = &self.generators[index];
        let mut e = 0;
        while e <= g.max_exponent() && e * g.degree <= remaining {
            exps[index] = e;
            self.enumerate(index + 1, remaining - e * g.degree, exps, out);
            e += 1;
        }
        exps[index] = 0;
    }

    /// Every canonical monomial of degree `1..=max_degree`.
    pub fn positive_basis(&self) -> Vec<Monomial> {
        (1..=self.max_degree).flat_map(|d| self.basis_in_degree(d).unwrap_or_default()).collect()
    }

    /// Places an element of the `width`-fold tensor power into factors
    /// `first .. first + width` of this tensor power.
    pub fn embed(&self, e: &Element, first: usize) -> Element {
        e.shifted(first * self.layout.base_len)
    }

    /// Restricts to terms whose factor `factor` is the unit and deletes that
    /// factor; used for counit checks on a tensor square.
    pub fn counit_on_factor(&self, e: &Element, factor: usize) -> Element {
        let n = self.layout.base_len;
        let terms = e.terms().filter_map(|(m, c)| {
            let block = (factor * n)..((factor + 1) * n);
            if block.clone().any(|i| m.exponent(i) != 0) {
                return None;
            }
            let exps: Vec<u32> =
                (0..self.generators.len()).filter(|i| !block.contains(i)).map(|i| m.exponent(i)).collect();
            Some((Monomial::new(exps), c.clone()))
        });
        Element::from_terms(&self.ring, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bb3() -> AlgebraPresentation {
        // Λ(x1, x3) ⊗ Z_3[y]/(y^3)
        AlgebraPresentation::with_default_degree(
            CoefficientRing::Modular(3),
            vec![Generator::exterior("x1", 1), Generator::truncated("y", 2, 3), Generator::exterior("x3", 3)],
        )
        .unwrap()
    }

    #[test]
    fn exterior_square_vanishes() {
        let p = bb3();
        let x1 = p.generator(0);
        assert!(p.multiply(&x1, &x1).unwrap().is_zero());
    }

    #[test]
    fn psu2_square_is_not_zero() {
        let p = AlgebraPresentation::with_default_degree(
            CoefficientRing::Modular(2),
            vec![Generator::truncated("x1", 1, 4)],
        )
        .unwrap();
        let x1 = p.generator(0);
        let sq = p.multiply(&x1, &x1).unwrap();
        assert_eq!(sq, p.monomial_element(&Monomial::new(vec![2])));
        assert_eq!(p.basis_in_degree(3).unwrap(), vec![Monomial::new(vec![3])]);
    }

    #[test]
    fn square_of_sum() {
        // |y| even, so x1 y = y x1 and the cross terms add up
        let p = bb3();
        let s = p.generator(0).add(&p.generator(1)).unwrap();
        let sq = p.multiply(&s, &s).unwrap();
        assert_eq!(sq, p.parse_element("2*x1*y + y^2").unwrap());
    }

    #[test]
    fn basis_in_degree_three() {
        let p = bb3();
        let basis = p.basis_in_degree(3).unwrap();
        assert_eq!(basis, vec![Monomial::new(vec![1, 1]), Monomial::new(vec![0, 0, 1])]);
        assert_eq!(p.basis_in_degree(0).unwrap(), vec![Monomial::unit()]);
        assert!(p.basis_in_degree(9).is_err());
    }

    #[test]
    fn strict_and_lenient_truncation() {
        let p =
            AlgebraPresentation::new(CoefficientRing::Modular(5), vec![Generator::truncated("y", 2, 5)], 4).unwrap();
        let y2 = p.power(&p.generator(0), 2).unwrap();
        assert!(matches!(p.multiply(&y2, &p.generator(0)), Err(AlgebraError::DegreeOverflow { .. })));
        let lenient = p.clone().with_truncation(Truncation::Lenient);
        let (e, flagged) = lenient.multiply_flagged(&y2, &lenient.generator(0)).unwrap();
        assert!(e.is_zero());
        assert!(flagged);
    }

    #[test]
    fn rejects_bad_generators() {
        let q = CoefficientRing::Rational;
        assert!(AlgebraPresentation::with_default_degree(q.clone(), vec![Generator::exterior("y", 2)]).is_err());
        assert!(AlgebraPresentation::with_default_degree(
            q.clone(),
            vec![Generator::exterior("x", 1), Generator::exterior("x", 3)]
        )
        .is_err());
        assert!(AlgebraPresentation::with_default_degree(q, vec![Generator::truncated("y", 2, 1)]).is_err());
    }

    #[test]
    fn tensor_sign_rule() {
        // (1⊗x1)(x1⊗1) = -(x1⊗x1)
        let sq = bb3().tensor_power(2);
        let left = sq.generator(0);
        let right = sq.generator(3);
        let lr = sq.multiply(&left, &right).unwrap();
        let rl = sq.multiply(&right, &left).unwrap();
        assert_eq!(rl, lr.neg());
    }
}
