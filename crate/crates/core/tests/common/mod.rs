#![allow(dead_code)]

use obstructor::algebra::{AlgebraPresentation, Element};
use obstructor::catalog::{baum_browder, CatalogPresentation};

/// Mod-`p` model of `PSU(p^r)`, where `x3` is the integral generator.
pub fn psu_model(p: u64, r: u32) -> CatalogPresentation {
    baum_browder(p, r, p.pow(r), 8).expect("Baum–Browder model builds")
}

pub fn parse(alg: &AlgebraPresentation, s: &str) -> Element {
    alg.parse_element(s).unwrap_or_else(|e| panic!("cannot parse {s}: {e}"))
}

/// Compares element-wise, reporting both sides rendered on failure.
pub fn assert_elem(alg: &AlgebraPresentation, actual: &Element, expected: &str) {
    let want = parse(alg, expected);
    assert_eq!(actual, &want, "got {}, expected {}", alg.render(actual), alg.render(&want));
}

/// The parameters covered by the displayed-computation goldens: `r = s`
/// with `p` odd, or `p = 2` with `s = 2`.
pub const GOLDEN_CASES: [(u64, u32); 4] = [(3, 1), (5, 1), (7, 1), (2, 2)];
