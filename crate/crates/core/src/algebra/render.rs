use num::{One, Signed};

use super::{AlgebraPresentation, Element, Monomial, Scalar};

const SUBSCRIPTS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

/// `x13` becomes `x₁₃`.
pub fn pretty_name(name: &str) -> String {
    let digits_at = name.trim_end_matches(|c: char| c.is_ascii_digit()).len();
    let (stem, digits) = name.split_at(digits_at);
    let mut out = stem.to_string();
    out.extend(digits.chars().map(|c| SUBSCRIPTS[c.to_digit(10).unwrap() as usize]));
    out
}

fn superscript(n: u32) -> String {
    n.to_string().chars().map(|c| SUPERSCRIPTS[c.to_digit(10).unwrap() as usize]).collect()
}

#[derive(Clone, Copy)]
enum Style {
    Unicode,
    Ascii,
}

impl AlgebraPresentation {
    /// Human-readable form, e.g. `x₁⊗y − y⊗x₁`.
    pub fn render(&self, e: &Element) -> String {
        self.render_with(e, Style::Unicode)
    }

    /// ASCII form accepted by the element parser, e.g. `x1|y - y|x1`.
    pub fn render_ascii(&self, e: &Element) -> String {
        self.render_with(e, Style::Ascii)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        self.monomial_text(m, Style::Unicode)
    }

    fn render_with(&self, e: &Element, style: Style) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let minus = match style {
            Style::Unicode => "−",
            Style::Ascii => "-",
        };
        let mut out = String::new();
        for (i, (m, c)) in e.terms().enumerate() {
            let c: Scalar = self.ring().signed_repr(c);
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => out.push_str(minus),
                (0, false) => {}
                (_, true) => {
                    out.push(' ');
                    out.push_str(minus);
                    out.push(' ');
                }
                (_, false) => out.push_str(" + "),
            }
            let mono = self.monomial_text(m, style);
            if magnitude.is_one() {
                out.push_str(&mono);
            } else if m.is_unit() {
                out.push_str(&magnitude.to_string());
            } else {
                out.push_str(&magnitude.to_string());
                out.push_str(match style {
                    Style::Unicode => "·",
                    Style::Ascii => "*",
                });
                out.push_str(&mono);
            }
        }
        out
    }

    fn monomial_text(&self, m: &Monomial, style: Style) -> String {
        let layout = self.layout();
        let blocks: Vec<String> = (0..layout.factors)
            .map(|f| {
                let range = (f * layout.base_len)..((f + 1) * layout.base_len);
                let parts: Vec<String> = range
                    .filter(|&i| m.exponent(i) > 0)
                    .map(|i| {
                        let e = m.exponent(i);
                        let name = self.base_name(i);
                        match style {
                            Style::Unicode if e == 1 => pretty_name(name),
                            Style::Unicode => format!("{}{}", pretty_name(name), superscript(e)),
                            Style::Ascii if e == 1 => name.to_string(),
                            Style::Ascii => format!("{name}^{e}"),
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    match style {
                        Style::Unicode => parts.concat(),
                        Style::Ascii => parts.join("*"),
                    }
                }
            })
            .collect();
        match style {
            Style::Unicode => blocks.join("⊗"),
            Style::Ascii => blocks.join("|"),
        }
    }
}
