//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use common::{parse, psu_model, GOLDEN_CASES};
use obstructor::algebra::{AlgebraPresentation, Element, Monomial, Truncation};
use obstructor::catalog::{closed_form_l0, default_catalog, sweep_specs, Family, GroupSpec, Model};
use obstructor::engine::{commutator_pullback, ord_additive_oracle, Provenance};
use obstructor::hopf::{verify_hopf_axioms, Axiom};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(alg: &AlgebraPresentation, actual: &Element, expected: &str, what: &str) -> Result<(), String> {
    let want = parse(alg, expected);
    ensure(*actual == want, || format!("{what}: got {}, expected {}", alg.render(actual), alg.render(&want)))
}

fn models() -> Result<Vec<Arc<Model>>, String> {
    let cat = default_catalog().map_err(|e| e.to_string())?;
    cat.models(&sweep_specs()).map_err(|e| e.to_string())
}

fn l0(spec: &str) -> Result<u64, String> {
    let spec = GroupSpec::parse(spec).map_err(|e| e.to_string())?;
    default_catalog().and_then(|c| c.derive(&spec)).map(|r| r.l0).map_err(|e| e.to_string())
}

/// 1. Every swept row of every family: engine l0 = closed form.
fn table_reproduction() -> Outcome {
    let families = [
        (Family::Su, 24),
        (Family::PSp, 12),
        (Family::So, 16),
        (Family::Pso, 24),
        (Family::Ss, 32),
        (Family::Exceptional, 0),
    ];
    let start = Instant::now();
    let mut rows = 0;
    for (family, max) in families {
        let out = Command::new(env!("CARGO_BIN_EXE_obstructor"))
            .args(["table", "--family", &family.to_string(), "--max", &max.to_string(), "--json"])
            .env_remove("OBSTRUCTOR_CATALOG")
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || format!("table --family {family} exited with {}", out.status))?;
        let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        let expected = family.sweep(max);
        let got = v["rows"].as_array().ok_or("rows missing")?;
        ensure(got.len() == expected.len(), || format!("{family}: {} rows, expected {}", got.len(), expected.len()))?;
        for (row, spec) in got.iter().zip(&expected) {
            let engine = row["engine_l0"].as_u64();
            let closed = closed_form_l0(spec);
            ensure(row["group"] == spec.to_string(), || format!("row order differs at {spec}"))?;
            ensure(engine == Some(closed), || format!("{spec}: engine {engine:?}, closed form {closed}"))?;
        }
        ensure(v["mismatches"] == 0, || format!("{family}: mismatches reported"))?;
        rows += got.len();
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:.2?}"))?;
    Ok(format!("{rows} rows, 0 mismatches, {elapsed:.2?}"))
}

/// 2. Antipode and commutator pullback of x3 for p = 3, 5, 7 and (2, 2).
fn displayed_computation() -> Outcome {
    for (p, r) in GOLDEN_CASES {
        let h = psu_model(p, r).hopf;
        let alg = h.algebra();
        let x3 = alg.generator_named("x3").map_err(|e| e.to_string())?;
        let c = h.antipode(&x3).map_err(|e| e.to_string())?;
        same(alg, &c, "-x3 + x1*y", &format!("c*(x3) at p = {p}"))?;
        let phi = commutator_pullback(&h, &x3).map_err(|e| e.to_string())?;
        let sq = h.square().flattened();
        same(sq, &phi, "x1|y - y|x1", &format!("φ*(x3) at p = {p}"))?;
        // term by term, coefficients as residues mod p
        let terms: Vec<(String, String)> = phi.terms().map(|(m, c)| (sq.render_monomial(m), c.to_string())).collect();
        let minus_one = (p - 1).to_string();
        let expected = [("x₁⊗y".to_string(), "1".to_string()), ("y⊗x₁".to_string(), minus_one)];
        let mut sorted = terms.clone();
        sorted.sort();
        let mut want = expected.to_vec();
        want.sort();
        ensure(sorted == want, || format!("p = {p}: terms {terms:?}"))?;
    }
    Ok("c*(x₃) = −x₃ + x₁y and φ*(x₃) = x₁⊗y − y⊗x₁ for p = 3, 5, 7 and (p, s) = (2, 2)".into())
}

/// 3. μ*(x3) = x3⊗1 + x1⊗y + 1⊗x3.
fn coproduct_golden() -> Outcome {
    for (p, r) in GOLDEN_CASES {
        let h = psu_model(p, r).hopf;
        let x3 = h.algebra().generator_named("x3").map_err(|e| e.to_string())?;
        let mu = h.coproduct(&x3).map_err(|e| e.to_string())?;
        same(h.square().flattened(), &mu, "x3|1 + x1|y + 1|x3", &format!("μ*(x3) at p = {p}"))?;
    }
    Ok("μ*(x₃) = x₃⊗1 + x₁⊗y + 1⊗x₃".into())
}

fn random_monomial(rng: &mut StdRng, alg: &AlgebraPresentation, basis: &[Monomial], budget: u32) -> Monomial {
    let fitting: Vec<&Monomial> = basis.iter().filter(|m| alg.monomial_degree(m) <= budget).collect();
    if fitting.is_empty() {
        Monomial::unit()
    } else {
        fitting[rng.gen_range(0..fitting.len())].clone()
    }
}

/// 4. Bockstein goldens, then Leibniz and β² = 0 on 1000 random products.
fn bockstein() -> Outcome {
    for (p, r) in GOLDEN_CASES {
        let h = psu_model(p, r).hopf;
        let x1 = h.algebra().generator_named("x1").map_err(|e| e.to_string())?;
        same(h.algebra(), &h.bockstein(&x1).map_err(|e| e.to_string())?, "y", "β(x1)")?;
        let x1x1 = parse(h.square().flattened(), "x1|x1");
        let b = h.bockstein_square(&x1x1).map_err(|e| e.to_string())?;
        same(h.square().flattened(), &b, "y|x1 - x1|y", "β(x1⊗x1)")?;
    }
    let models = models()?;
    let with_beta: Vec<_> = models.iter().filter(|m| m.hopf().bockstein_data().is_some()).collect();
    ensure(!with_beta.is_empty(), || "no presentation carries Bockstein data".into())?;
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let trials = 1000;
    for _ in 0..trials {
        let h = with_beta[rng.gen_range(0..with_beta.len())].hopf();
        let alg = h.algebra();
        let data = h.bockstein_data().unwrap();
        let basis: Vec<Monomial> = std::iter::once(Monomial::unit())
            .chain(alg.positive_basis())
            .filter(|m| m.support().all(|i| data.images[i].is_some()))
            .collect();
        let top = alg.max_degree() - 2;
        let ma = random_monomial(&mut rng, alg, &basis, top);
        let mb = random_monomial(&mut rng, alg, &basis, top - alg.monomial_degree(&ma));
        let (a, b) = (alg.monomial_element(&ma), alg.monomial_element(&mb));
        let run = || -> Result<(Element, Element, Element), obstructor::hopf::HopfError> {
            let ab = alg.multiply(&a, &b)?;
            let sign = if alg.monomial_degree(&ma) % 2 == 1 { -1 } else { 1 };
            let rhs =
                alg.multiply(&h.bockstein(&a)?, &b)?.add(&alg.multiply(&a, &h.bockstein(&b)?)?.scale_int(sign))?;
            let lhs = h.bockstein(&ab)?;
            let twice = h.bockstein(&lhs)?;
            Ok((lhs, rhs, twice))
        };
        let (lhs, rhs, twice) = run().map_err(|e| e.to_string())?;
        let product = format!("{}·{} in {}", alg.render(&a), alg.render(&b), h.name());
        ensure(lhs == rhs, || format!("Leibniz fails on {product}"))?;
        ensure(twice.is_zero(), || format!("β² ≠ 0 on {product}"))?;
    }
    Ok(format!("goldens exact; Leibniz and β² = 0 on {trials} random products over {} presentations", with_beta.len()))
}

/// 5. ord_l(n/l) oracle against the closed form (n ≤ 200) and the engine (n ≤ 24).
fn oracle_equivalence() -> Outcome {
    let mut checked = 0;
    for n in 2..=200u64 {
        for l in (2..=n).filter(|l| n % l == 0) {
            let spec = GroupSpec::Su { n, l };
            let oracle = ord_additive_oracle(n / l, l);
            ensure(oracle == closed_form_l0(&spec), || format!("{spec}: oracle {oracle}, closed form differs"))?;
            if n <= 24 {
                let report = default_catalog().and_then(|c| c.derive(&spec)).map_err(|e| e.to_string())?;
                let product: u64 = report.primes.iter().map(|p| p.local_order).product();
                ensure(product == oracle, || format!("{spec}: engine product {product}, oracle {oracle}"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs (n, l) agree"))
}

/// 6. Hopf axioms on every presentation, T* involution, 10⁴ associativity triples.
fn property_suite() -> Outcome {
    let models = models()?;
    let required =
        [Axiom::Coassociativity, Axiom::Counit, Axiom::Antipode, Axiom::AntipodeInvolution, Axiom::GradedCommutativity];
    for m in &models {
        let d = verify_hopf_axioms(m.hopf());
        ensure(d.max_degree >= 8, || format!("{} only checked through degree {}", m.name(), d.max_degree))?;
        for axiom in required {
            let c = d.check(axiom).ok_or_else(|| format!("{}: {axiom} not checked", m.name()))?;
            ensure(c.passed, || d.summary())?;
        }
        let sq = m.hopf().square();
        for mono in sq.flattened().positive_basis() {
            let e = sq.flattened().monomial_element(&mono);
            let back = sq.switch_map(&sq.switch_map(&e).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            ensure(back == e, || format!("T*T* ≠ 1 on {} in {}", sq.flattened().render(&e), m.name()))?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0xa55);
    let triples = 10_000;
    for _ in 0..triples {
        let h = models[rng.gen_range(0..models.len())].hopf();
        let alg = if rng.gen_bool(0.5) { h.algebra().as_ref() } else { h.square().flattened().as_ref() };
        let alg = alg.clone().with_truncation(Truncation::Lenient);
        let basis = alg.positive_basis();
        let mut pick = || alg.monomial_element(&basis[rng.gen_range(0..basis.len())]);
        let (a, b, c) = (pick(), pick(), pick());
        let ab_c = alg.multiply(&alg.multiply(&a, &b).map_err(|e| e.to_string())?, &c).map_err(|e| e.to_string())?;
        let a_bc = alg.multiply(&a, &alg.multiply(&b, &c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(ab_c == a_bc, || format!("associativity fails in {}", h.name()))?;
    }
    Ok(format!("{} presentations through degree 8, {triples} associativity triples", models.len()))
}

/// 7. Isomorphic groups agree.
fn cross_family() -> Outcome {
    let pairs = [("SU(4)/Z2", "SO(6)", 1), ("SU(2)/Z2", "PSp(1)", 2), ("SO(3)", "PSU(2)", 2), ("SO(5)", "PSp(2)", 1)];
    for (a, b, want) in pairs {
        let (la, lb) = (l0(a)?, l0(b)?);
        ensure(la == want && lb == want, || format!("{a} → {la}, {b} → {lb}, expected {want}"))?;
    }
    Ok("SU(4)/Z₂ = SO(6) → 1, SU(2)/Z₂ = PSp(1) → 2".into())
}

/// 8. check accepts k·l0 (k ≤ 5), rejects 1 ≤ m < l0, for every genus 1..3.
fn prequantizability() -> Outcome {
    let cat = default_catalog().map_err(|e| e.to_string())?;
    let specs = sweep_specs();
    let mut verdicts = 0;
    for spec in &specs {
        let l0 = cat.derive(spec).map_err(|e| e.to_string())?.l0;
        let levels = (1..=5).map(|k| k * l0).chain(1..l0);
        for level in levels {
            let mut seen = None;
            for genus in 1..=3 {
                let v = cat.prequantizable(spec, level, genus).map_err(|e| e.to_string())?;
                let key = (v.prequantizable, v.l0, v.smallest_admissible_level);
                ensure(v.prequantizable == (level % l0 == 0), || format!("{spec} at level {level}: wrong verdict"))?;
                ensure(seen.is_none_or(|s| s == key), || format!("{spec} at level {level}: depends on genus"))?;
                seen = Some(key);
                verdicts += 1;
            }
        }
    }
    Ok(format!("{verdicts} verdicts over {} specs", specs.len()))
}

/// Criterion 9: φ* kills primitive degree-3 generators, and SO, PSp(even)
/// and Ss(even) rows come out trivial from the engine.
fn primitivity() -> Outcome {
    let mut killed = 0;
    for m in models()? {
        let h = m.hopf();
        let alg = h.algebra();
        let sq = h.square();
        for (i, g) in alg.generators().iter().enumerate() {
            let x = alg.generator(i);
            let primitive = sq.left(&x).add(&sq.right(&x)).map_err(|e| e.to_string())?;
            if g.degree == 3 && h.coproduct(&x).map_err(|e| e.to_string())? == primitive {
                let phi = m.pipeline.apply(&x).map_err(|e| e.to_string())?;
                ensure(phi.is_zero(), || format!("φ*({}) ≠ 0 in {}", g.name, m.name()))?;
                killed += 1;
            }
        }
    }
    let trivial = Family::So
        .sweep(16)
        .into_iter()
        .chain(Family::PSp.sweep(12).into_iter().filter(|s| s.parameter() % 2 == 0))
        .chain(Family::Ss.sweep(32).into_iter().filter(|s| s.parameter() % 2 == 0));
    let mut rows = 0;
    for spec in trivial {
        let r = default_catalog().and_then(|c| c.derive(&spec)).map_err(|e| e.to_string())?;
        ensure(r.l0 == 1, || format!("{spec}: l0 = {}", r.l0))?;
        ensure(r.provenance == Provenance::FullyEngineDerived, || format!("{spec} relies on a lemma"))?;
        rows += 1;
    }
    Ok(format!("{killed} primitive generators killed; {rows} SO/PSp/Ss rows trivial"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("table reproduction", table_reproduction),
        ("displayed-computation goldens", displayed_computation),
        ("coproduct golden", coproduct_golden),
        ("Bockstein goldens and laws", bockstein),
        ("oracle equivalence", oracle_equivalence),
        ("Hopf property suite", property_suite),
        ("cross-family consistency", cross_family),
        ("pre-quantizability semantics", prequantizability),
        ("primitivity", primitivity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
