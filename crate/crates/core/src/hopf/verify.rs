use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{AlgebraPresentation, Element, Monomial};

use super::tensor::factor_map;
use super::{HopfError, HopfPresentation, InducedMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    DegreeHomogeneity,
    CoproductRelations,
    Counit,
    Coassociativity,
    Antipode,
    AntipodeInvolution,
    GradedCommutativity,
    BocksteinSquare,
    BocksteinLeibniz,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::DegreeHomogeneity => "degree homogeneity",
            Axiom::CoproductRelations => "coproduct respects relations",
            Axiom::Counit => "counit",
            Axiom::Coassociativity => "coassociativity",
            Axiom::Antipode => "antipode identity",
            Axiom::AntipodeInvolution => "antipode involution",
            Axiom::GradedCommutativity => "graded commutativity",
            Axiom::BocksteinSquare => "Bockstein squares to zero",
            Axiom::BocksteinLeibniz => "Bockstein Koszul-Leibniz rule",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    /// Number of instances examined.
    pub checked: usize,
    /// First element on which the axiom fails.
    pub witness: Option<String>,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HopfDiagnostics {
    pub presentation: String,
    pub max_degree: u32,
    pub checks: Vec<AxiomCheck>,
}

impl HopfDiagnostics {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: Axiom) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        match self.first_failure() {
            None => format!("{}: all axioms hold through degree {}", self.presentation, self.max_degree),
            Some(c) => format!(
                "{}: {} fails{}{}",
                self.presentation,
                c.axiom,
                c.witness.as_ref().map(|w| format!(" at {w}")).unwrap_or_default(),
                c.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default(),
            ),
        }
    }
}

struct Tally {
    axiom: Axiom,
    checked: usize,
    witness: Option<String>,
    detail: Option<String>,
}

impl Tally {
    fn new(axiom: Axiom) -> Self {
        Tally { axiom, checked: 0, witness: None, detail: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.witness.is_none() && self.detail.is_none() {
            self.witness = Some(witness());
        }
    }

    fn error(&mut self, witness: Option<String>, detail: impl Into<String>) {
        if self.witness.is_none() && self.detail.is_none() {
            self.witness = witness;
            self.detail = Some(detail.into());
        }
    }

    fn done(self) -> AxiomCheck {
        AxiomCheck {
            axiom: self.axiom,
            passed: self.witness.is_none() && self.detail.is_none(),
            checked: self.checked,
            witness: self.witness,
            detail: self.detail,
        }
    }
}

/// Checks coassociativity, counit, the antipode identity and involution,
/// graded commutativity, `β² = 0`, Koszul-Leibniz and degree homogeneity, all
/// through the presentation's cutoff. Failures are reported, not raised.
pub fn verify_hopf_axioms(h: &HopfPresentation) -> HopfDiagnostics {
    let base = h.algebra().clone();
    let checks = vec![
        degrees(h),
        coproduct_relations(h),
        counit(h),
        coassociativity(h),
        antipode_identity(h),
        antipode_involution(h),
        graded_commutativity(&base),
        bockstein_square(h),
        bockstein_leibniz(h),
    ];
    HopfDiagnostics { presentation: h.name().to_string(), max_degree: base.max_degree(), checks }
}

fn gen_name(base: &AlgebraPresentation, i: usize) -> String {
    base.render(&base.generator(i))
}

fn degrees(h: &HopfPresentation) -> AxiomCheck {
    let base = h.algebra();
    let sq = h.square().flattened();
    let mut t = Tally::new(Axiom::DegreeHomogeneity);
    for (i, g) in base.generators().iter().enumerate() {
        let img = h.coproduct_map().image(i);
        let ok = matches!(sq.homogeneous_degree(img), Ok(Some(d)) if d == g.degree);
        t.record(ok, || format!("μ*({})", gen_name(base, i)));
        if let Ok(c) = h.antipode_map() {
            let ok = matches!(base.homogeneous_degree(c.image(i)), Ok(Some(d)) if d == g.degree);
            t.record(ok, || format!("c*({})", gen_name(base, i)));
        }
        if let Some(Some(img)) = h.bockstein_data().map(|b| &b.images[i]) {
            let ok = match base.homogeneous_degree(img) {
                Ok(None) => true,
                Ok(Some(d)) => d == g.degree + 1,
                Err(_) => false,
            };
            t.record(ok, || gen_name(base, i));
        }
    }
    t.done()
}

fn coproduct_relations(h: &HopfPresentation) -> AxiomCheck {
    let mut t = Tally::new(Axiom::CoproductRelations);
    let map = h.coproduct_map();
    t.checked = map.images().len();
    match InducedMap::new(map.source().clone(), map.target().clone(), map.images().to_vec()) {
        Ok(_) => {}
        Err(HopfError::NotAlgebraMap { generator, reason }) => t.error(Some(generator), reason),
        Err(e) => t.error(None, e.to_string()),
    }
    t.done()
}

fn counit(h: &HopfPresentation) -> AxiomCheck {
    let base = h.algebra();
    let sq = h.square().flattened();
    let mut t = Tally::new(Axiom::Counit);
    for i in 0..base.generators().len() {
        let img = h.coproduct_map().image(i);
        let g = base.generator(i);
        // (ε⊗1)μ* and (1⊗ε)μ*
        let left = sq.counit_on_factor(img, 0);
        let right = sq.counit_on_factor(img, 1);
        t.record(left == g && right == g, || gen_name(base, i));
    }
    t.done()
}

fn coassociativity(h: &HopfPresentation) -> AxiomCheck {
    let base = h.algebra();
    let sq = h.square().flattened();
    let triple = Arc::new(base.tensor_power(3));
    let n = base.generators().len();
    let mut t = Tally::new(Axiom::Coassociativity);
    let delta = |g: usize| h.coproduct_map().image(g).clone();
    let maps = (|| -> Result<(InducedMap, InducedMap), HopfError> {
        let left = factor_map(sq, &triple, |f, g| {
            Ok(if f == 0 { triple.embed(&delta(g), 0) } else { triple.generator(2 * n + g) })
        })?;
        let right =
            factor_map(sq, &triple, |f, g| Ok(if f == 0 { triple.generator(g) } else { triple.embed(&delta(g), 1) }))?;
        Ok((left, right))
    })();
    let (left, right) = match maps {
        Ok(m) => m,
        Err(e) => {
            t.error(None, e.to_string());
            return t.done();
        }
    };
    for i in 0..n {
        let d = delta(i);
        match (left.apply(&d), right.apply(&d)) {
            (Ok(a), Ok(b)) => t.record(a == b, || gen_name(base, i)),
            (Err(e), _) | (_, Err(e)) => t.error(Some(gen_name(base, i)), e.to_string()),
        }
    }
    t.done()
}

/// `m ∘ (1⊗c*)`, as a map from the tensor square.
fn convolve_with_antipode(h: &HopfPresentation) -> Result<InducedMap, HopfError> {
    let base = h.algebra();
    let c = h.antipode_map()?;
    factor_map(h.square().flattened(), base, |f, g| Ok(if f == 0 { base.generator(g) } else { c.image(g).clone() }))
}

fn antipode_identity(h: &HopfPresentation) -> AxiomCheck {
    let base = h.algebra();
    let mut t = Tally::new(Axiom::Antipode);
    let conv = match convolve_with_antipode(h) {
        Ok(m) => m,
        Err(e) => {
            t.error(None, e.to_string());
            return t.done();
        }
    };
    for m in base.positive_basis() {
        let b = base.monomial_element(&m);
        let lhs = h.coproduct(&b).and_then(|d| Ok(conv.apply(&d)?));
        match lhs {
            Ok(v) => t.record(v.is_zero(), || base.render(&b)),
            Err(e) => t.error(Some(base.render(&b)), e.to_string()),
        }
    }
    t.done()
}

fn antipode_involution(h: &HopfPresentation) -> AxiomCheck {
    let base = h.algebra();
    let mut t = Tally::new(Axiom::AntipodeInvolution);
    for i in 0..base.generators().len() {
        let g = base.generator(i);
        match h.antipode(&g).and_then(|c| h.antipode(&c)) {
            Ok(cc) => t.record(cc == g, || gen_name(base, i)),
            Err(e) => t.error(Some(gen_name(base, i)), e.to_string()),
        }
    }
    t.done()
}

fn graded_commutativity(base: &AlgebraPresentation) -> AxiomCheck {
    let mut t = Tally::new(Axiom::GradedCommutativity);
    let basis = base.positive_basis();
    for a in &basis {
        for b in &basis {
            let (da, db) = (base.monomial_degree(a), base.monomial_degree(b));
            if da + db > base.max_degree() {
                continue;
            }
            let (ea, eb) = (base.monomial_element(a), base.monomial_element(b));
            match (base.multiply(&ea, &eb), base.multiply(&eb, &ea)) {
                (Ok(ab), Ok(ba)) => {
                    let expected = if da * db % 2 == 1 { ba.neg() } else { ba };
                    t.record(ab == expected, || format!("{}·{}", base.render(&ea), base.render(&eb)));
                }
                (Err(e), _) | (_, Err(e)) => t.error(None, e.to_string()),
            }
        }
    }
    t.done()
}

fn has_bockstein_support(h: &HopfPresentation, e: &Element) -> bool {
    let Some(data) = h.bockstein_data() else { return false };
    e.terms().all(|(m, _)| m.support().all(|i| data.images[i].is_some()))
}

fn bockstein_square(h: &HopfPresentation) -> AxiomCheck {
    let base = h.algebra();
    let mut t = Tally::new(Axiom::BocksteinSquare);
    let Some(data) = h.bockstein_data() else { return t.done() };
    for (i, img) in data.images.iter().enumerate() {
        let Some(img) = img else { continue };
        if !has_bockstein_support(h, img)
            || base.homogeneous_degree(img).ok().flatten().unwrap_or(0) + 1 > base.max_degree()
        {
            continue;
        }
        match h.bockstein(img) {
            Ok(bb) => t.record(bb.is_zero(), || gen_name(base, i)),
            Err(e) => t.error(Some(gen_name(base, i)), e.to_string()),
        }
    }
    t.done()
}

fn bockstein_leibniz(h: &HopfPresentation) -> AxiomCheck {
    let base = h.algebra();
    let mut t = Tally::new(Axiom::BocksteinLeibniz);
    if h.bockstein_data().is_none() {
        return t.done();
    }
    let basis: Vec<Monomial> =
        base.positive_basis().into_iter().filter(|m| has_bockstein_support(h, &base.monomial_element(m))).collect();
    for a in &basis {
        for b in &basis {
            let (da, db) = (base.monomial_degree(a), base.monomial_degree(b));
            if da + db + 1 > base.max_degree() {
                continue;
            }
            let (ea, eb) = (base.monomial_element(a), base.monomial_element(b));
            let check = || -> Result<bool, HopfError> {
                let lhs = h.bockstein(&base.multiply(&ea, &eb)?)?;
                let first = base.multiply(&h.bockstein(&ea)?, &eb)?;
                let mut second = base.multiply(&ea, &h.bockstein(&eb)?)?;
                if da % 2 == 1 {
                    second = second.neg();
                }
                Ok(lhs == first.add(&second)?)
            };
            match check() {
                Ok(ok) => t.record(ok, || format!("{}·{}", base.render(&ea), base.render(&eb))),
                Err(e) => t.error(None, e.to_string()),
            }
        }
    }
    t.done()
}
