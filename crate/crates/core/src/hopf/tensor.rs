use std::sync::Arc;

use crate::algebra::{AlgebraPresentation, Element};

use super::{HopfError, InducedMap};

/// `H ⊗ H`, flattened into one presentation whose generators are the left
/// copies `g⊗1` followed by the right copies `1⊗g`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorSquare {
    base: Arc<AlgebraPresentation>,
    flattened: Arc<AlgebraPresentation>,
}

impl TensorSquare {
    pub fn new(base: Arc<AlgebraPresentation>) -> Self {
        let flattened = Arc::new(base.tensor_power(2));
        TensorSquare { base, flattened }
    }

    pub fn base(&self) -> &Arc<AlgebraPresentation> {
        &self.base
    }

    pub fn flattened(&self) -> &Arc<AlgebraPresentation> {
        &self.flattened
    }

    pub fn left(&self, e: &Element) -> Element {
        self.flattened.embed(e, 0)
    }

    pub fn right(&self, e: &Element) -> Element {
        self.flattened.embed(e, 1)
    }

    /// `a ⊗ b`.
    pub fn tensor(&self, a: &Element, b: &Element) -> Result<Element, HopfError> {
        Ok(self.flattened.multiply(&self.left(a), &self.right(b))?)
    }

    /// `T*(u⊗v) = (-1)^{|u||v|} v⊗u`.
    pub fn switch_map(&self, e: &Element) -> Result<Element, HopfError> {
        Ok(self.switch().apply(e)?)
    }

    pub fn switch(&self) -> InducedMap {
        permute_factors(&self.flattened, &[1, 0])
    }

    /// `Δ*`, the multiplication `H ⊗ H → H`.
    pub fn multiplication(&self) -> InducedMap {
        merge_factors(&self.flattened, &self.base, &[0, 0])
    }
}

/// Map between tensor powers of one base algebra that sends the generator
/// `g` of source factor `f` to `image(f, g)`.
pub fn factor_map<F>(
    source: &Arc<AlgebraPresentation>,
    target: &Arc<AlgebraPresentation>,
    mut image: F,
) -> Result<InducedMap, HopfError>
where
    F: FnMut(usize, usize) -> Result<Element, HopfError>,
{
    let n = source.layout().base_len;
    let images = (0..source.generators().len()).map(|i| image(i / n, i % n)).collect::<Result<Vec<_>, _>>()?;
    InducedMap::unchecked(source.clone(), target.clone(), images)
}

/// Pullback of the map of spaces that permutes factors: source factor `f`
/// lands in target factor `to[f]`.
pub fn permute_factors(alg: &Arc<AlgebraPresentation>, to: &[usize]) -> InducedMap {
    let n = alg.layout().base_len;
    factor_map(alg, alg, |f, g| Ok(alg.generator(to[f] * n + g))).expect("permutation map")
}

/// Pullback of a diagonal-type map: source factor `f` lands in target
/// factor `to[f]` (several source factors may share a target factor).
pub fn merge_factors(source: &Arc<AlgebraPresentation>, target: &Arc<AlgebraPresentation>, to: &[usize]) -> InducedMap {
    let n = source.layout().base_len;
    factor_map(source, target, |f, g| Ok(target.generator(to[f] * n + g))).expect("merge map")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{CoefficientRing, Generator};

    fn square() -> TensorSquare {
        TensorSquare::new(Arc::new(
            AlgebraPresentation::with_default_degree(
                CoefficientRing::Rational,
                vec![Generator::exterior("x1", 1), Generator::truncated("y", 2, 5), Generator::exterior("x3", 3)],
            )
            .unwrap(),
        ))
    }

    #[test]
    fn switch_signs() {
        let t = square();
        let sq = t.flattened();
        let e = sq.parse_element("x1|y").unwrap();
        assert_eq!(t.switch_map(&e).unwrap(), sq.parse_element("y|x1").unwrap());
        let odd = sq.parse_element("x1|x3").unwrap();
        assert_eq!(t.switch_map(&odd).unwrap(), sq.parse_element("-x3|x1").unwrap());
    }

    #[test]
    fn switch_is_an_involution_in_degree_three() {
        let t = square();
        for m in t.flattened().basis_in_degree(3).unwrap() {
            let e = t.flattened().monomial_element(&m);
            assert_eq!(t.switch_map(&t.switch_map(&e).unwrap()).unwrap(), e);
        }
    }

    #[test]
    fn tensor_product_sign() {
        // (a⊗b)(a'⊗b') = (-1)^{|b||a'|} aa' ⊗ bb'
        let t = square();
        let sq = t.flattened();
        let base = t.base();
        let ab = t.tensor(&base.generator(1), &base.generator(2)).unwrap();
        let ab2 = t.tensor(&base.generator(0), &base.generator(0)).unwrap();
        let lhs = sq.multiply(&ab, &ab2).unwrap();
        let aa = base.multiply(&base.generator(1), &base.generator(0)).unwrap();
        let bb = base.multiply(&base.generator(2), &base.generator(0)).unwrap();
        let rhs = t.tensor(&aa, &bb).unwrap().neg();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn kunneth_degree_three() {
        // H^3 of the square: x3⊗1, x1y⊗1, x1⊗y, y⊗x1, 1⊗x3, 1⊗x1y
        let t = square();
        assert_eq!(t.flattened().basis_in_degree(3).unwrap().len(), 6);
    }
}
