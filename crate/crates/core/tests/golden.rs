mod common;

use std::sync::Arc;

use common::{assert_elem, parse, psu_model, GOLDEN_CASES};
use obstructor::algebra::{AlgebraPresentation, CoefficientRing, Generator};
use obstructor::catalog::{derive_l0, Catalog, CatalogError, GroupSpec, EMBEDDED_CATALOG};
use obstructor::engine::{classify_obstruction, commutator_pullback, Classification, CommutatorPipeline, EngineError};
use obstructor::hopf::{verify_hopf_axioms, Axiom, BocksteinData, HopfError, HopfPresentation, TensorSquare};

fn l0(spec: &str) -> u64 {
    derive_l0(&GroupSpec::parse(spec).unwrap()).unwrap().l0
}

#[test]
fn coproduct_of_x3() {
    for (p, r) in GOLDEN_CASES {
        let m = psu_model(p, r);
        let h = &m.hopf;
        let x3 = h.algebra().generator_named("x3").unwrap();
        assert_elem(h.square().flattened(), &h.coproduct(&x3).unwrap(), "x3|1 + x1|y + 1|x3");
    }
}

#[test]
fn antipode_of_x3() {
    for (p, r) in GOLDEN_CASES {
        let h = psu_model(p, r).hopf;
        let x3 = h.algebra().generator_named("x3").unwrap();
        assert_elem(h.algebra(), &h.antipode(&x3).unwrap(), "-x3 + x1*y");
        let x1 = h.algebra().generator_named("x1").unwrap();
        assert_elem(h.algebra(), &h.antipode(&x1).unwrap(), "-x1");
    }
}

#[test]
fn commutator_pullback_of_x3() {
    for (p, r) in GOLDEN_CASES {
        let h = psu_model(p, r).hopf;
        let x3 = h.algebra().generator_named("x3").unwrap();
        let phi = commutator_pullback(&h, &x3).unwrap();
        assert_elem(h.square().flattened(), &phi, "x1|y - y|x1");
        // coefficients are reduced mod p: -1 is stored as p - 1
        let minus_one = h.algebra().ring().from_int(-1);
        let y_x1 = parse(h.square().flattened(), "y|x1");
        let (m, _) = y_x1.leading_term().unwrap();
        assert_eq!(phi.coefficient(m), minus_one, "p = {p}");
    }
}

#[test]
fn pipeline_stages_match_the_displayed_computation() {
    let h = psu_model(3, 1).hopf;
    let pipeline = CommutatorPipeline::new(&h).unwrap();
    let names: Vec<_> = pipeline.stages().iter().map(|s| s.label).collect();
    assert_eq!(names, ["μ*", "(μ×μ)*", "(1×1×c×c)*", "(1×T×1)*", "(Δ×Δ)*"]);
    let x3 = h.algebra().generator_named("x3").unwrap();
    let (out, trace) = pipeline.apply_traced(&x3).unwrap();
    assert_eq!(trace.first().unwrap().output, "x₁⊗y + x₃⊗1 + 1⊗x₃");
    let last = trace.last().unwrap();
    assert_eq!((last.operation.as_str(), last.input.as_str()), ("φ*", "x₃"));
    assert_eq!(last.output, "x₁⊗y − y⊗x₁");
    assert_eq!(out, pipeline.composite().apply(&x3).unwrap());
}

#[test]
fn bockstein_goldens() {
    for (p, r) in GOLDEN_CASES {
        let h = psu_model(p, r).hopf;
        assert_eq!(h.bockstein_order(), Some(r));
        let x1 = h.algebra().generator_named("x1").unwrap();
        assert_elem(h.algebra(), &h.bockstein(&x1).unwrap(), "y");
        let x1x1 = parse(h.square().flattened(), "x1|x1");
        assert_elem(h.square().flattened(), &h.bockstein_square(&x1x1).unwrap(), "y|x1 - x1|y");
        let y = h.algebra().generator_named("y").unwrap();
        assert!(h.bockstein(&y).unwrap().is_zero());
    }
}

#[test]
fn classification_of_the_obstruction() {
    for (p, r) in GOLDEN_CASES {
        let h = psu_model(p, r).hopf;
        let w = parse(h.square().flattened(), "x1|y - y|x1");
        let res = classify_obstruction(&h, &w).unwrap();
        assert_eq!(res.local_order, p.pow(r));
        match res.classification {
            Classification::BocksteinImage { coefficient, order, .. } => {
                // -1 and 1 agree mod 2
                assert_eq!((coefficient + 1).rem_euclid(p as i64), 0, "p = {p}");
                assert_eq!(order, r);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}

#[test]
fn unclassifiable_classes_are_errors() {
    let h = psu_model(3, 1).hopf;
    let w = parse(h.square().flattened(), "x3|1");
    let err = classify_obstruction(&h, &w).unwrap_err();
    assert!(matches!(err, EngineError::Unclassifiable { .. }), "{err:?}");
    let zero = h.square().flattened().zero();
    assert_eq!(classify_obstruction(&h, &zero).unwrap().classification, Classification::Zero);
}

#[test]
fn psu2_squared_generator() {
    let m = psu_model(2, 1);
    let h = &m.hopf;
    assert_eq!(h.algebra().render(&m.obstruction), "x₁³");
    // x1^3 pulls back to zero mod 2; the order 2 comes from a lemma
    assert!(commutator_pullback(h, &m.obstruction).unwrap().is_zero());
}

#[test]
fn table_rows() {
    let rows = [
        ("PSU(2)", 2),
        ("PSU(3)", 3),
        ("PSU(8)", 8),
        ("SU(8)/Z2", 1),
        ("SU(8)/Z4", 2),
        ("SU(6)/Z3", 3),
        ("SU(12)/Z4", 4),
        ("SU(12)/Z6", 3),
        ("PSp(3)", 2),
        ("PSp(4)", 1),
        ("SO(3)", 2),
        ("SO(5)", 1),
        ("SO(6)", 1),
        ("SO(7)", 1),
        ("SO(12)", 1),
        ("PSO(8)", 2),
        ("PSO(10)", 4),
        ("PSO(12)", 2),
        ("Ss(8)", 1),
        ("Ss(12)", 2),
        ("PE6", 3),
        ("PE7", 2),
        ("Spin(9)", 1),
        ("E8", 1),
    ];
    for (spec, want) in rows {
        assert_eq!(l0(spec), want, "{spec}");
    }
}

#[test]
fn covering_multiplier_in_reports() {
    let report = derive_l0(&GroupSpec::parse("SU(8)/Z4").unwrap()).unwrap();
    let p2 = &report.primes[0];
    assert_eq!((p2.prime, p2.r, p2.s), (2, 3, 2));
    assert_eq!((p2.adjoint_order, p2.covering_multiplier, p2.local_order), (8, 2, 2));
}

#[test]
fn derive_trace_mirrors_the_displayed_computation() {
    let report = derive_l0(&GroupSpec::parse("PSU(3)").unwrap()).unwrap();
    let ops: Vec<&str> = report.trace.iter().map(|s| s.operation.as_str()).collect();
    let start = ops.iter().position(|o| *o == "μ*").unwrap();
    assert_eq!(&ops[start..start + 6], ["μ*", "(μ×μ)*", "(1×1×c×c)*", "(1×T×1)*", "(Δ×Δ)*", "φ*"]);
    let phi = report.trace.iter().rfind(|s| s.operation == "φ*").unwrap();
    assert_eq!(phi.to_string(), "φ*(x₃) = x₁⊗y − y⊗x₁");
    assert!(report.trace.iter().all(|s| !s.citation.is_empty()));
}

fn three_generator_algebra(p: u64) -> AlgebraPresentation {
    AlgebraPresentation::with_default_degree(
        CoefficientRing::modular(p).unwrap(),
        vec![Generator::exterior("x1", 1), Generator::truncated("y", 2, p as u32), Generator::exterior("x3", 3)],
    )
    .unwrap()
}

#[test]
fn dropping_a_coproduct_term_breaks_the_counit() {
    let alg = three_generator_algebra(3);
    let sq = TensorSquare::new(Arc::new(alg.clone()));
    let f = sq.flattened();
    let coproduct = vec![parse(f, "x1|1 + 1|x1"), parse(f, "y|1 + 1|y"), parse(f, "x3|1 + x1|y")];
    let bockstein = BocksteinData { order: 1, images: vec![Some(parse(&alg, "y")), Some(alg.zero()), None] };
    let h = HopfPresentation::from_coproduct("broken", alg, coproduct, Some(bockstein)).unwrap();
    let diag = verify_hopf_axioms(&h);
    let counit = diag.check(Axiom::Counit).unwrap();
    assert!(!counit.passed);
    assert_eq!(counit.witness.as_deref(), Some("x₃"));
    match h.validated() {
        Err(HopfError::Axioms { summary, .. }) => assert!(summary.contains("counit"), "{summary}"),
        other => panic!("expected an axiom failure, got {other:?}"),
    }
}

#[test]
fn a_non_nilpotent_bockstein_is_rejected() {
    let alg = three_generator_algebra(3);
    let sq = TensorSquare::new(Arc::new(alg.clone()));
    let reduced = vec![sq.flattened().zero(), sq.flattened().zero(), parse(sq.flattened(), "x1|y")];
    let bockstein = BocksteinData { order: 1, images: vec![Some(parse(&alg, "y")), Some(parse(&alg, "y^2")), None] };
    let h = HopfPresentation::from_reduced("bad-beta", alg, reduced, Some(bockstein)).unwrap();
    let diag = verify_hopf_axioms(&h);
    let sq_check = diag.check(Axiom::BocksteinSquare).unwrap();
    assert!(!sq_check.passed);
    assert_eq!(sq_check.witness.as_deref(), Some("x₁"));
}

#[test]
fn broken_catalog_presentations_are_rejected_at_load() {
    let bad = "\npresentation bad\n  ring Z/3\n  generator x1 1 exterior\n  generator y 2 truncated 3\n  \
               generator x3 3 exterior\n  coproduct x3 = x1|y - 1|x3\n  bockstein-order 1\n  bockstein x1 = y\n  \
               cite test\nend\n";
    let text = EMBEDDED_CATALOG.replace("presentation pe6-cyclic r=1 s=1", "presentation bad r=1 s=1") + bad;
    match Catalog::from_text(&text, None) {
        Err(CatalogError::Presentation { name, source: HopfError::Axioms { summary, .. } }) => {
            assert_eq!(name, "bad");
            assert!(summary.contains("counit") && summary.contains("x₃"), "{summary}");
        }
        other => panic!("expected a presentation error, got {other:?}"),
    }
}
