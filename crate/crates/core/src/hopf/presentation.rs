use std::sync::Arc;

use crate::algebra::{AlgebraError, AlgebraPresentation, Element, Monomial};

use super::{verify_hopf_axioms, HopfError, InducedMap, TensorSquare};

/// Formal `r`-th Bockstein data: images of (some) generators, one degree up.
#[derive(Clone, Debug, PartialEq)]
pub struct BocksteinData {
    pub order: u32,
    pub images: Vec<Option<Element>>,
}

/// Graded-commutative Hopf algebra given by generators, coproduct images and
/// Bockstein data. The antipode is derived, never supplied.
#[derive(Clone, Debug)]
pub struct HopfPresentation {
    name: String,
    square: TensorSquare,
    coproduct: InducedMap,
    antipode: Result<InducedMap, HopfError>,
    bockstein: Option<BocksteinData>,
}

impl HopfPresentation {
    /// Assembles a presentation from full coproduct images. Nothing is
    /// validated beyond shapes; see [`HopfPresentation::validated`].
    pub fn from_coproduct(
        name: impl Into<String>,
        algebra: AlgebraPresentation,
        coproduct: Vec<Element>,
        bockstein: Option<BocksteinData>,
    ) -> Result<Self, HopfError> {
        let algebra = Arc::new(algebra);
        let square = TensorSquare::new(algebra.clone());
        let coproduct = InducedMap::unchecked(algebra.clone(), square.flattened().clone(), coproduct)?;
        if let Some(b) = &bockstein {
            if b.images.len() != algebra.generators().len() {
                return Err(HopfError::Structure("Bockstein data has the wrong length".into()));
            }
            for img in b.images.iter().flatten() {
                if img.ring() != algebra.ring() {
                    return Err(AlgebraError::RingMismatch(img.ring().clone(), algebra.ring().clone()).into());
                }
            }
        }
        let antipode = solve_antipode(&square, &coproduct);
        Ok(HopfPresentation { name: name.into(), square, coproduct, antipode, bockstein })
    }

    /// Like [`HopfPresentation::from_coproduct`] but takes reduced coproducts;
    /// the primitive part `x⊗1 + 1⊗x` is added.
    pub fn from_reduced(
        name: impl Into<String>,
        algebra: AlgebraPresentation,
        reduced: Vec<Element>,
        bockstein: Option<BocksteinData>,
    ) -> Result<Self, HopfError> {
        let square = TensorSquare::new(Arc::new(algebra.clone()));
        let full = reduced
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let g = algebra.generator(i);
                square.left(&g).add(&square.right(&g)).and_then(|p| p.add(r)).map_err(HopfError::from)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_coproduct(name, algebra, full, bockstein)
    }

    /// Runs every axiom check and fails with the diagnostics if any fails.
    pub fn validated(self) -> Result<Self, HopfError> {
        let report = verify_hopf_axioms(&self);
        if report.is_ok() {
            Ok(self)
        } else {
            Err(HopfError::Axioms { presentation: self.name.clone(), summary: report.summary() })
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        self.square.base()
    }

    pub fn square(&self) -> &TensorSquare {
        &self.square
    }

    pub fn coproduct_map(&self) -> &InducedMap {
        &self.coproduct
    }

    pub fn antipode_map(&self) -> Result<&InducedMap, HopfError> {
        self.antipode.as_ref().map_err(Clone::clone)
    }

    pub fn bockstein_data(&self) -> Option<&BocksteinData> {
        self.bockstein.as_ref()
    }

    pub fn bockstein_order(&self) -> Option<u32> {
        self.bockstein.as_ref().map(|b| b.order)
    }

    /// `μ*`, extended multiplicatively.
    pub fn coproduct(&self, e: &Element) -> Result<Element, HopfError> {
        Ok(self.coproduct.apply(e)?)
    }

    /// `c*`, extended multiplicatively.
    pub fn antipode(&self, e: &Element) -> Result<Element, HopfError> {
        Ok(self.antipode_map()?.apply(e)?)
    }

    /// `β^(r)` on the base algebra.
    pub fn bockstein(&self, e: &Element) -> Result<Element, HopfError> {
        self.bockstein_in(self.algebra(), e)
    }

    /// `β^(r)` on the tensor square, `β(a⊗b) = β(a)⊗b + (-1)^{|a|} a⊗β(b)`.
    pub fn bockstein_square(&self, e: &Element) -> Result<Element, HopfError> {
        self.bockstein_in(self.square.flattened(), e)
    }

    /// `β^(r)` on any tensor power of the base algebra, acting factorwise
    /// as a degree-one derivation with the Koszul-Leibniz rule.
    pub fn bockstein_in(&self, alg: &AlgebraPresentation, e: &Element) -> Result<Element, HopfError> {
        let data = self
            .bockstein
            .as_ref()
            .ok_or_else(|| HopfError::MissingBockstein(format!("{} has no Bockstein data", self.name)))?;
        let n = self.algebra().generators().len();
        if alg.layout().base_len != n {
            return Err(HopfError::Structure("algebra is not a tensor power of this presentation".into()));
        }
        let image = |gi: usize| -> Result<Element, HopfError> {
            match &data.images[gi % n] {
                Some(img) => Ok(alg.embed(img, gi / n)),
                None => Err(HopfError::MissingBockstein(alg.base_name(gi).to_string())),
            }
        };
        let mut out = alg.zero();
        for (m, c) in e.terms() {
            let word: Vec<usize> =
                m.exponents().iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
            for t in 0..word.len() {
                let prefix = word_monomial(&word[..t]);
                let suffix = word_monomial(&word[t + 1..]);
                let mut piece = alg.multiply(&alg.monomial_element(&prefix), &image(word[t])?)?;
                piece = alg.multiply(&piece, &alg.monomial_element(&suffix))?;
                if alg.monomial_degree(&prefix) % 2 == 1 {
                    piece = piece.neg();
                }
                out = out.add(&piece.scalar_mul(c))?;
            }
        }
        Ok(out)
    }
}

fn word_monomial(word: &[usize]) -> Monomial {
    let mut exps = Vec::new();
    for &i in word {
        if exps.len() <= i {
            exps.resize(i + 1, 0);
        }
        exps[i] += 1;
    }
    Monomial::new(exps)
}

/// Splits a tensor-square monomial into its left and right factors.
pub(crate) fn split_square(n: usize, m: &Monomial) -> (Monomial, Monomial) {
    let left = (0..n).map(|i| m.exponent(i)).collect();
    let right = (n..2 * n).map(|i| m.exponent(i)).collect();
    (Monomial::new(left), Monomial::new(right))
}

/// Solves `m ∘ (1⊗c) ∘ μ*(x) = ε(x)` for `c(x)`, generator by generator in
/// order of degree. The `1⊗x` coefficient of `μ*(x)` must be a unit, and every
/// other right factor must involve only generators already solved.
fn solve_antipode(square: &TensorSquare, coproduct: &InducedMap) -> Result<InducedMap, HopfError> {
    let base = square.base();
    let n = base.generators().len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| base.generators()[i].degree);
    let mut solved: Vec<Option<Element>> = vec![None; n];
    for &i in &order {
        let name = &base.generators()[i].name;
        let failure = |reason: String| HopfError::AntipodeRecursion { generator: name.clone(), reason };
        let gen = Monomial::generator(i);
        let mut unit_coeff = base.ring().zero();
        let mut rest = base.zero();
        for (m, c) in coproduct.image(i).terms() {
            let (left, right) = split_square(n, m);
            if left.is_unit() && right == gen {
                unit_coeff = base.ring().add(&unit_coeff, c);
                continue;
            }
            // c(right) from the generators solved so far
            let mut c_right = base.one();
            for (j, &k) in right.exponents().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let img = solved[j]
                    .as_ref()
                    .ok_or_else(|| failure(format!("needs c*({}) first", base.generators()[j].name)))?;
                for _ in 0..k {
                    c_right = base.multiply(&c_right, img)?;
                }
            }
            let term = base.multiply(&base.monomial_element(&left), &c_right)?;
            rest = rest.add(&term.scalar_mul(c))?;
        }
        let inv = base
            .ring()
            .inverse(&unit_coeff)
            .ok_or_else(|| failure("coefficient of 1⊗x in the coproduct is not a unit".into()))?;
        solved[i] = Some(rest.scalar_mul(&inv).neg());
    }
    let images = solved.into_iter().map(|e| e.expect("all solved")).collect();
    InducedMap::unchecked(base.clone(), base.clone(), images)
}
