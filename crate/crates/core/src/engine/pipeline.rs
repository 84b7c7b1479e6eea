use std::sync::Arc;

use crate::algebra::{AlgebraPresentation, Element};
use crate::hopf::tensor::{factor_map, merge_factors, permute_factors};
use crate::hopf::{HopfError, HopfPresentation, InducedMap};

use super::TraceStep;

/// One arrow of the factorization, as an induced map on cohomology.
#[derive(Clone, Debug)]
pub struct Stage {
    pub label: &'static str,
    pub citation: &'static str,
    pub map: InducedMap,
}

/// `φ* = (Δ×Δ)* ∘ (1×T×1)* ∘ (1×1×c×c)* ∘ (μ×μ)* ∘ μ*` for the commutator
/// `(a, b) ↦ a b a⁻¹ b⁻¹`, pulled back from `H*(G)` to `H*(G×G)`.
#[derive(Clone, Debug)]
pub struct CommutatorPipeline {
    source: Arc<AlgebraPresentation>,
    target: Arc<AlgebraPresentation>,
    /// In order of application: `μ*` first.
    stages: Vec<Stage>,
    composite: InducedMap,
}

impl CommutatorPipeline {
    pub fn new(h: &HopfPresentation) -> Result<Self, HopfError> {
        let base = h.algebra().clone();
        let n = base.generators().len();
        let square = h.square().flattened().clone();
        let quad = Arc::new(base.tensor_power(4));
        let mu = h.coproduct_map().clone();
        let antipode = h.antipode_map()?.clone();

        let mu_mu = factor_map(&square, &quad, |f, g| Ok(quad.embed(mu.image(g), 2 * f)))?;
        let inverses = factor_map(&quad, &quad, |f, g| {
            Ok(if f < 2 { quad.generator(f * n + g) } else { quad.embed(antipode.image(g), f) })
        })?;
        let middle_swap = permute_factors(&quad, &[0, 2, 1, 3]);
        let diagonals = merge_factors(&quad, &square, &[0, 0, 1, 1]);

        let stages = vec![
            Stage { label: "μ*", citation: "coproduct induced by the group multiplication", map: mu },
            Stage { label: "(μ×μ)*", citation: "coproduct applied in each factor of G×G", map: mu_mu },
            Stage {
                label: "(1×1×c×c)*",
                citation: "antipode from the null-homotopy of G → G×G → G, (1×c) then μ",
                map: inverses,
            },
            Stage {
                label: "(1×T×1)*",
                citation: "switch map T*(u⊗v) = (−1)^{|u||v|} v⊗u on the middle factors",
                map: middle_swap,
            },
            Stage {
                label: "(Δ×Δ)*", citation: "diagonal pullback is the cup product in each factor", map: diagonals
            },
        ];
        let mut composite = stages[0].map.clone();
        for stage in &stages[1..] {
            composite = stage.map.compose(&composite)?;
        }
        Ok(CommutatorPipeline { source: base, target: square, stages, composite })
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn composite(&self) -> &InducedMap {
        &self.composite
    }

    pub fn source(&self) -> &Arc<AlgebraPresentation> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraPresentation> {
        &self.target
    }

    pub fn apply(&self, e: &Element) -> Result<Element, HopfError> {
        Ok(self.composite.apply(e)?)
    }

    /// Applies the stages one at a time, logging each intermediate element,
    /// and finishes with the composite line `φ*(e) = ...`.
    pub fn apply_traced(&self, e: &Element) -> Result<(Element, Vec<TraceStep>), HopfError> {
        let mut steps = Vec::new();
        let mut current = e.clone();
        for stage in &self.stages {
            let next = stage.map.apply(&current)?;
            steps.push(TraceStep::new(
                stage.label,
                stage.map.source().render(&current),
                stage.map.target().render(&next),
                stage.citation,
            ));
            current = next;
        }
        debug_assert_eq!(current, self.apply(e)?);
        steps.push(TraceStep::new(
            "φ*",
            self.source.render(e),
            self.target.render(&current),
            "commutator pullback: composite of the five induced maps",
        ));
        Ok((current, steps))
    }
}

/// `φ*(e)` expanded in the Künneth basis of the tensor square.
pub fn commutator_pullback(h: &HopfPresentation, e: &Element) -> Result<Element, HopfError> {
    CommutatorPipeline::new(h)?.apply(e)
}
