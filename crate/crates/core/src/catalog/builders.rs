use crate::algebra::{AlgebraPresentation, CoefficientRing, Element, Generator};
use crate::hopf::{BocksteinData, HopfPresentation, TensorSquare};

use super::CatalogError;

/// A validated Hopf presentation together with the class whose pullback is
/// the obstruction (the mod-`p` image of the integral degree-3 generator).
#[derive(Clone, Debug)]
pub struct CatalogPresentation {
    pub hopf: HopfPresentation,
    pub obstruction: Element,
    pub extrapolated: bool,
    pub citation: String,
}

/// `C(a, b) mod p` by Lucas' theorem.
pub fn binomial_mod(a: u64, b: u64, p: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    let mut acc = 1u64;
    while a > 0 || b > 0 {
        let (ai, bi) = (a % p, b % p);
        if bi > ai {
            return 0;
        }
        acc = acc * small_binomial(ai, bi) % p;
        a /= p;
        b /= p;
    }
    acc % p
}

fn small_binomial(a: u64, b: u64) -> u64 {
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, i| acc * (a - i) as u128 / (i + 1) as u128) as u64
}

fn checked_height(p: u64, e: u32) -> u32 {
    p.checked_pow(e).and_then(|h| u32::try_from(h).ok()).unwrap_or(u32::MAX)
}

/// Mod-`p` cohomology of `PSU(n)` with `n = p^r n'`: exterior classes
/// `x_{2i-1}` (`i <= n`, `i != p^r`), `y` of degree 2 and height `p^r`,
///
/// ```text
/// μ̄(x_{2i-1}) = x_1⊗y^{i-1} + Σ_{j=2}^{i-1} C(i-1, j-1) x_{2j-1}⊗y^{i-j},
/// β^(r)(x_1) = y.
/// ```
///
/// For `p = 2, r = 1` the relation `y = x_1²` holds instead, so `x_1` is a
/// truncated generator of height 4 and the obstruction class is `x_1³`.
/// Generators above `max_degree` are dropped, as are coproduct terms that
/// mention an omitted generator.
pub fn baum_browder(p: u64, r: u32, n: u64, max_degree: u32) -> Result<CatalogPresentation, CatalogError> {
    if p < 2 || r == 0 {
        return Err(CatalogError::Builder(format!("baum-browder needs a prime and r >= 1, got p = {p}, r = {r}")));
    }
    let ring = CoefficientRing::modular(p)?;
    let pr = p.checked_pow(r).unwrap_or(u64::MAX);
    let squared = p == 2 && r == 1;
    let top = n.min(u64::from(max_degree + 1) / 2);
    let indices: Vec<u64> = (1..=top).filter(|&i| i != pr).collect();

    let mut gens = Vec::new();
    for &i in &indices {
        let name = format!("x{}", 2 * i - 1);
        if i == 1 && squared {
            gens.push(Generator::truncated(name, 1, 4));
        } else {
            gens.push(Generator::exterior(name, (2 * i - 1) as u32));
        }
    }
    if !squared {
        gens.push(Generator::truncated("y", 2, checked_height(p, r)));
    }
    let alg = AlgebraPresentation::new(ring.clone(), gens, max_degree)?;
    let square = TensorSquare::new(std::sync::Arc::new(alg.clone()));
    let x = |i: u64| alg.generator_named(&format!("x{}", 2 * i - 1));
    let y = || if squared { alg.power(&alg.generator(0), 2) } else { alg.generator_named("y") };

    let mut reduced = Vec::new();
    for &i in &indices {
        let mut acc = square.flattened().zero();
        if i >= 2 {
            let mut push = |left: Element, k: u64, coeff: u64| -> Result<(), CatalogError> {
                if coeff.is_multiple_of(p) {
                    return Ok(());
                }
                let right = alg.power(&y()?, k as u32)?;
                let t = square.tensor(&left, &right)?.scale_int(coeff as i64);
                acc = acc.add(&t)?;
                Ok(())
            };
            push(x(1)?, i - 1, 1)?;
            for j in 2..i {
                if !indices.contains(&j) {
                    continue;
                }
                push(x(j)?, i - j, binomial_mod(i - 1, j - 1, p))?;
            }
        }
        reduced.push(acc);
    }
    if !squared {
        reduced.push(square.flattened().zero());
    }

    let mut images: Vec<Option<Element>> = vec![None; alg.generators().len()];
    images[0] = Some(y()?);
    if !squared {
        images[alg.generators().len() - 1] = Some(alg.zero());
    }
    let obstruction = if squared { alg.power(&alg.generator(0), 3)? } else { x(2)? };
    let name = format!("baum-browder(p={p}, r={r}, n={n})");
    let hopf =
        HopfPresentation::from_reduced(name, alg, reduced, Some(BocksteinData { order: r, images }))?.validated()?;
    Ok(CatalogPresentation {
        hopf,
        obstruction,
        extrapolated: false,
        citation: "Baum–Browder: mod-p cohomology of PU(n) with its coproduct and the r-th Bockstein β^(r)(x₁) = y"
            .into(),
    })
}

/// Mod-2 cohomology of `SO(n)` on a primitive simple system: classes
/// `x_{2k-1}` of height the least power of two `h` with `(2k-1) h >= n`.
pub fn so_mod2(n: u64, max_degree: u32) -> Result<CatalogPresentation, CatalogError> {
    if n < 3 {
        return Err(CatalogError::Builder(format!("so-mod2 needs n >= 3, got {n}")));
    }
    let ring = CoefficientRing::modular(2)?;
    let top = (n - 1).min(u64::from(max_degree));
    let gens: Vec<Generator> = (1..=top)
        .step_by(2)
        .map(|d| {
            let mut h = 2u64;
            while d * h < n {
                h *= 2;
            }
            Generator::truncated(format!("x{d}"), d as u32, u32::try_from(h).unwrap_or(u32::MAX))
        })
        .collect();
    let alg = AlgebraPresentation::new(ring, gens, max_degree)?;
    let zero = TensorSquare::new(std::sync::Arc::new(alg.clone())).flattened().zero();
    let reduced = vec![zero; alg.generators().len()];
    let obstruction = alg.generator_named("x3")?;
    let hopf = HopfPresentation::from_reduced(format!("so-mod2(n={n})"), alg, reduced, None)?.validated()?;
    Ok(CatalogPresentation {
        hopf,
        obstruction,
        extrapolated: false,
        citation: "Mimura–Toda: H*(SO(n); Z₂) is primitively generated and Spin(n) → SO(n) is onto on H³(−; Z₂)".into(),
    })
}

/// `Λ_Q(x₃)`: rationally every compact simple group has a primitive
/// degree-3 generator.
pub fn rational(max_degree: u32) -> Result<CatalogPresentation, CatalogError> {
    let alg = AlgebraPresentation::new(CoefficientRing::Rational, vec![Generator::exterior("x3", 3)], max_degree)?;
    let zero = TensorSquare::new(std::sync::Arc::new(alg.clone())).flattened().zero();
    let obstruction = alg.generator(0);
    let hopf = HopfPresentation::from_reduced("rational", alg, vec![zero], None)?.validated()?;
    Ok(CatalogPresentation {
        hopf,
        obstruction,
        extrapolated: false,
        citation: "rational cohomology is an exterior algebra on primitive generators (Hopf)".into(),
    })
}
