use std::sync::Arc;

use crate::algebra::{AlgebraError, AlgebraPresentation, Element, GeneratorKind};

use super::HopfError;

/// Degree-preserving algebra map given by the images of the source
/// generators. Every induced homomorphism of the pipeline is one of these.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedMap {
    source: Arc<AlgebraPresentation>,
    target: Arc<AlgebraPresentation>,
    images: Vec<Element>,
}

impl InducedMap {
    /// Checks degrees and that the images satisfy the source relations
    /// (as far as the target's cutoff allows).
    pub fn new(
        source: Arc<AlgebraPresentation>,
        target: Arc<AlgebraPresentation>,
        images: Vec<Element>,
    ) -> Result<Self, HopfError> {
        let map = Self::unchecked(source, target, images)?;
        map.check_relations()?;
        Ok(map)
    }

    /// Only checks shape and rings.
    pub fn unchecked(
        source: Arc<AlgebraPresentation>,
        target: Arc<AlgebraPresentation>,
        images: Vec<Element>,
    ) -> Result<Self, HopfError> {
        if images.len() != source.generators().len() {
            return Err(HopfError::Structure(format!(
                "{} generator images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        if source.ring() != target.ring() {
            return Err(AlgebraError::RingMismatch(source.ring().clone(), target.ring().clone()).into());
        }
        for img in &images {
            if img.ring() != target.ring() {
                return Err(AlgebraError::RingMismatch(img.ring().clone(), target.ring().clone()).into());
            }
        }
        Ok(InducedMap { source, target, images })
    }

    pub fn identity(alg: Arc<AlgebraPresentation>) -> Self {
        let images = (0..alg.generators().len()).map(|i| alg.generator(i)).collect();
        InducedMap { source: alg.clone(), target: alg, images }
    }

    pub fn source(&self) -> &Arc<AlgebraPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraPresentation> {
        &self.target
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    pub fn image(&self, generator: usize) -> &Element {
        &self.images[generator]
    }

    fn check_relations(&self) -> Result<(), HopfError> {
        let max = self.target.max_degree();
        for (i, (g, img)) in self.source.generators().iter().zip(&self.images).enumerate() {
            let fail = |reason: String| HopfError::NotAlgebraMap { generator: g.name.clone(), reason };
            if let Some(d) = self.target.homogeneous_degree(img)? {
                if d != g.degree {
                    return Err(fail(format!("image has degree {d}, expected {}", g.degree)));
                }
            }
            let height = match g.kind {
                GeneratorKind::Exterior => 2,
                GeneratorKind::TruncatedPoly { height } => height,
            };
            if height.checked_mul(g.degree).is_some_and(|d| d <= max) && !self.target.power(img, height)?.is_zero() {
                return Err(fail(format!(
                    "image of generator {} does not satisfy its relation (power {height} is nonzero)",
                    i
                )));
            }
        }
        Ok(())
    }

    pub fn apply(&self, e: &Element) -> Result<Element, AlgebraError> {
        if e.ring() != self.source.ring() {
            return Err(AlgebraError::RingMismatch(e.ring().clone(), self.source.ring().clone()));
        }
        let mut out = self.target.zero();
        for (m, c) in e.terms() {
            if m.exponents().len() > self.images.len() {
                return Err(AlgebraError::ForeignMonomial(m.exponents().to_vec()));
            }
            let mut acc = self.target.one();
            for (i, &k) in m.exponents().iter().enumerate() {
                for _ in 0..k {
                    acc = self.target.multiply(&acc, &self.images[i])?;
                }
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc.scalar_mul(c))?;
        }
        Ok(out)
    }

    /// `self ∘ inner`: push the images of `inner` through `self`.
    pub fn compose(&self, inner: &InducedMap) -> Result<InducedMap, HopfError> {
        if inner.target != self.source && *inner.target != *self.source {
            return Err(HopfError::Structure(
                "composition: target of the inner map is not the source of the outer map".into(),
            ));
        }
        let images = inner.images.iter().map(|e| self.apply(e)).collect::<Result<_, _>>()?;
        Ok(InducedMap { source: inner.source.clone(), target: self.target.clone(), images })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoefficientRing, Generator};

    fn lambda() -> Arc<AlgebraPresentation> {
        Arc::new(
            AlgebraPresentation::with_default_degree(
                CoefficientRing::Rational,
                vec![Generator::exterior("a", 1), Generator::exterior("b", 1)],
            )
            .unwrap(),
        )
    }

    #[test]
    fn identity_composes_trivially() {
        let alg = lambda();
        let swap = InducedMap::new(alg.clone(), alg.clone(), vec![alg.generator(1), alg.generator(0)]).unwrap();
        let id = InducedMap::identity(alg.clone());
        assert_eq!(id.compose(&swap).unwrap(), swap);
        assert_eq!(swap.compose(&id).unwrap(), swap);
        // swapping a, b negates ab
        let ab = alg.parse_element("a*b").unwrap();
        assert_eq!(swap.apply(&ab).unwrap(), ab.neg());
    }

    #[test]
    fn rejects_maps_breaking_relations() {
        let alg = lambda();
        let bad = InducedMap::new(alg.clone(), alg.clone(), vec![alg.parse_element("a*b").unwrap(), alg.generator(1)]);
        assert!(matches!(bad, Err(HopfError::NotAlgebraMap { .. })));
    }
}
