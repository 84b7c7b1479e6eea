use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{scalar_to_i64, CoefficientRing, Element};
use crate::hopf::HopfPresentation;

use super::EngineError;

/// How the mod-`p` obstruction class was identified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Classification {
    /// The class vanishes; nothing to lift.
    Zero,
    /// `class = coefficient · β^(order)(witness)`, the reduction of a
    /// generator of a `Z/p^order` torsion summand.
    BocksteinImage { witness: String, coefficient: i64, order: u32 },
    /// Settled by a homotopy-theoretic lemma rather than Hopf data.
    LemmaBacked { citation: String },
    /// Pulled back along a map from another group whose class vanishes.
    PulledBack { from: String },
}

/// Local contribution of one prime `p` to `l0`.
///
/// `r` and `s` are the `p`-adic valuations used by the covering argument
/// (`n = p^r n'`, `l = p^s l'` for the `SU` family; the Bockstein order and
/// the subgroup exponent elsewhere).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeLocalResult {
    pub prime: u64,
    pub r: u32,
    pub s: u32,
    /// Rendered mod-`p` obstruction class, when the engine computed one.
    pub obstruction: Option<String>,
    pub classification: Classification,
    /// Order of the class before the covering multiplier.
    pub adjoint_order: u64,
    /// `p^(r-s)`: image of a degree-one generator under the covering map.
    pub covering_multiplier: u64,
    pub local_order: u64,
    pub strategy: String,
    pub presentation: Option<String>,
    /// The presentation follows the published method but its data is
    /// not printed in the source.
    pub extrapolated: bool,
    pub citation: String,
}

impl PrimeLocalResult {
    pub fn new(prime: u64, classification: Classification, local_order: u64) -> Self {
        PrimeLocalResult {
            prime,
            r: 0,
            s: 0,
            obstruction: None,
            classification,
            adjoint_order: local_order,
            covering_multiplier: 1,
            local_order,
            strategy: String::new(),
            presentation: None,
            extrapolated: false,
            citation: String::new(),
        }
    }

    pub fn is_lemma_backed(&self) -> bool {
        matches!(self.classification, Classification::LemmaBacked { .. })
    }
}

pub(crate) fn smallest_prime_factor(m: u64) -> u64 {
    (2..=m).find(|d| m.is_multiple_of(*d) || d * d > m).map(|d| if m.is_multiple_of(d) { d } else { m }).unwrap_or(m)
}

pub(crate) fn pow(p: u64, e: u32) -> Result<u64, EngineError> {
    p.checked_pow(e).ok_or(EngineError::Overflow)
}

/// Identifies a degree-3 class `w` of the tensor square: zero, or a unit
/// multiple of `β^(r)(v)` for a degree-2 basis monomial `v` (scanned in
/// canonical order). Anything else is an error, never a
/// silent zero.
pub fn classify_obstruction(h: &HopfPresentation, w: &Element) -> Result<PrimeLocalResult, EngineError> {
    let square = h.square().flattened();
    let ring = square.ring();
    let CoefficientRing::Modular(m) = ring else {
        return Err(EngineError::NotModular(ring.clone()));
    };
    let prime = smallest_prime_factor(*m);
    if let Some(d) = square.homogeneous_degree(w)? {
        if d != 3 {
            return Err(EngineError::Unclassifiable {
                class: square.render(w),
                detail: format!("obstruction classes live in degree 3, not {d}"),
            });
        }
    }
    let order = h.bockstein_order().unwrap_or(1);
    if w.is_zero() {
        let mut res = PrimeLocalResult::new(prime, Classification::Zero, 1);
        res.r = order;
        res.s = order;
        res.obstruction = Some("0".into());
        return Ok(res);
    }
    if h.bockstein_data().is_none() {
        return Err(EngineError::Unclassifiable {
            class: square.render(w),
            detail: format!("{} carries no Bockstein data", h.name()),
        });
    }
    for v in square.basis_in_degree(2)? {
        let ve = square.monomial_element(&v);
        let image = match h.bockstein_square(&ve) {
            Ok(b) => b,
            Err(crate::hopf::HopfError::MissingBockstein(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        if image.is_zero() {
            continue;
        }
        // the multiplier is forced by the leading coefficient when that is
        // invertible; otherwise every unit is a candidate
        let candidates = match image.leading_term().and_then(|(m, c)| ring.inverse(c).map(|i| (m, i))) {
            Some((m, inv)) => vec![ring.mul(&w.coefficient(m), &inv)],
            None => ring.small_units(),
        };
        for c in candidates.iter().filter(|c| ring.is_unit(c)) {
            if image.scalar_mul(c) == *w {
                let coefficient = scalar_to_i64(&ring.signed_repr(c)).unwrap_or(0);
                let mut res = PrimeLocalResult::new(
                    prime,
                    Classification::BocksteinImage { witness: square.render(&ve), coefficient, order },
                    pow(prime, order)?,
                );
                res.r = order;
                res.s = order;
                res.obstruction = Some(square.render(w));
                return Ok(res);
            }
        }
    }
    Err(EngineError::Unclassifiable {
        class: square.render(w),
        detail: format!("not a unit multiple of β^({order}) of any degree-2 class"),
    })
}

/// Transfers an adjoint-group result to `G̃/Z_l` along the covering map: a
/// degree-one generator pulls back to `p^(r-s)` times a generator and degree
/// two is an isomorphism, so the class becomes `p^(r-s)` times a generator
/// of `Z/p^s`, of order `p^(s - min(s, r-s))`.
pub fn apply_covering_multiplier(res: &PrimeLocalResult, r: u32, s: u32) -> Result<PrimeLocalResult, EngineError> {
    if s > r {
        return Err(EngineError::CoveringExponent { r, s });
    }
    let p = res.prime;
    let mut out = res.clone();
    out.r = r;
    out.s = s;
    out.covering_multiplier = pow(p, r - s)?;
    out.local_order = if res.local_order == 1 { 1 } else { pow(p, s - s.min(r - s))? };
    Ok(out)
}

/// `l0` as the product of local orders, one result per prime.
pub fn assemble_l0(per_prime: &[PrimeLocalResult]) -> Result<u64, EngineError> {
    let mut seen = BTreeSet::new();
    let mut l0: u64 = 1;
    for res in per_prime {
        if !seen.insert(res.prime) {
            return Err(EngineError::DuplicatePrime(res.prime));
        }
        l0 = l0.checked_mul(res.local_order).ok_or(EngineError::Overflow)?;
    }
    Ok(l0)
}

/// Additive order of `q` in `Z/l` by direct search: the least `k >= 1` with
/// `k q ≡ 0 (mod l)`.
pub fn ord_additive_oracle(q: u64, l: u64) -> u64 {
    assert!(l >= 1, "modulus must be positive");
    let q = q % l;
    (1..=l).find(|k| (k * q).is_multiple_of(l)).expect("k = l always works")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn local(p: u64, order: u64) -> PrimeLocalResult {
        PrimeLocalResult::new(
            p,
            Classification::BocksteinImage { witness: "x₁⊗x₁".into(), coefficient: -1, order: 1 },
            order,
        )
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(ord_additive_oracle(1, 6), 6);
        assert_eq!(ord_additive_oracle(0, 5), 1);
        assert_eq!(ord_additive_oracle(2, 3), 3);
        assert_eq!(ord_additive_oracle(3, 2), 2);
        assert_eq!(ord_additive_oracle(4, 2), 1);
        assert_eq!(ord_additive_oracle(7, 1), 1);
    }

    #[test]
    fn covering_multiplier_cases() {
        // r = s: unchanged
        let res = apply_covering_multiplier(&local(3, 3), 1, 1).unwrap();
        assert_eq!(res.local_order, 3);
        // SU(4)/Z2 at p = 2: r = 2, s = 1
        let res = apply_covering_multiplier(&local(2, 4), 2, 1).unwrap();
        assert_eq!(res.local_order, 1);
        assert_eq!(res.covering_multiplier, 2);
        // SU(8)/Z4 at p = 2: r = 3, s = 2, multiplier 2 in Z/4 has order 2
        assert_eq!(apply_covering_multiplier(&local(2, 8), 3, 2).unwrap().local_order, 2);
        assert!(matches!(apply_covering_multiplier(&local(2, 2), 1, 2), Err(EngineError::CoveringExponent { .. })));
        let zero = PrimeLocalResult::new(2, Classification::Zero, 1);
        assert_eq!(apply_covering_multiplier(&zero, 3, 1).unwrap().local_order, 1);
    }

    #[test]
    fn assembles_products() {
        assert_eq!(assemble_l0(&[local(2, 2), local(3, 3)]).unwrap(), 6);
        assert_eq!(assemble_l0(&[]).unwrap(), 1);
        assert!(matches!(assemble_l0(&[local(2, 2), local(2, 2)]), Err(EngineError::DuplicatePrime(2))));
    }

    #[test]
    fn smallest_prime_factors() {
        assert_eq!(smallest_prime_factor(2), 2);
        assert_eq!(smallest_prime_factor(9), 3);
        assert_eq!(smallest_prime_factor(4), 2);
        assert_eq!(smallest_prime_factor(23), 23);
    }
}
