//! Line-oriented catalog text format; the grammar is documented in
//! `docs/catalog-format.md`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{CoefficientRing, Generator};

use super::CatalogError;

pub const CATALOG_FORMAT_VERSION: u32 = 1;

/// An explicit presentation record, kept as text until it is built.
#[derive(Clone, Debug, PartialEq)]
pub struct PresentationDef {
    pub name: String,
    pub ring: CoefficientRing,
    pub max_degree: Option<u32>,
    pub generators: Vec<Generator>,
    /// Reduced coproducts `(generator, element of the tensor square)`.
    pub coproducts: Vec<(String, String)>,
    pub bockstein_order: Option<u32>,
    pub bockstein: Vec<(String, String)>,
    pub obstruction: String,
    pub extrapolated: bool,
    pub citation: String,
    pub line: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    /// Family parameter (`n` in `SU(n)`, `PSO(2n)`, `Ss(4n)`, ...).
    N,
    /// Subgroup order.
    L,
    P,
    R,
    S,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
}

/// `var[%modulus] op value`, e.g. `n%4=2` or `p=2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Condition {
    pub var: Var,
    pub modulus: Option<u64>,
    pub op: Op,
    pub value: u64,
}

/// Values the conditions of a rule are evaluated against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bindings {
    pub n: u64,
    pub l: u64,
    pub p: u64,
    pub r: u32,
    pub s: u32,
}

impl Condition {
    pub fn holds(&self, b: &Bindings) -> bool {
        let raw = match self.var {
            Var::N => b.n,
            Var::L => b.l,
            Var::P => b.p,
            Var::R => u64::from(b.r),
            Var::S => u64::from(b.s),
        };
        let v = self.modulus.map_or(raw, |m| raw % m);
        match self.op {
            Op::Eq => v == self.value,
            Op::Ne => v != self.value,
            Op::Lt => v < self.value,
            Op::Le => v <= self.value,
            Op::Gt => v > self.value,
            Op::Ge => v >= self.value,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.var {
            Var::N => "n",
            Var::L => "l",
            Var::P => "p",
            Var::R => "r",
            Var::S => "s",
        };
        let op = match self.op {
            Op::Eq => "=",
            Op::Ne => "!=",
            Op::Lt => "<",
            Op::Le => "<=",
            Op::Gt => ">",
            Op::Ge => ">=",
        };
        match self.modulus {
            Some(m) => write!(f, "{var}%{m}{op}{}", self.value),
            None => write!(f, "{var}{op}{}", self.value),
        }
    }
}

/// How one prime's local order is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Baum–Browder model of the adjoint group at `(p, r)`, then the
    /// covering multiplier for `(r, s)`.
    BaumBrowder,
    /// Run the engine on a named presentation; `r`, `s` default to its
    /// Bockstein order.
    Presentation {
        name: String,
        r: Option<u32>,
        s: Option<u32>,
    },
    /// The obstruction class is primitive, so `φ*` kills it.
    Primitive {
        name: String,
    },
    /// The obstruction pulls back from another group whose local order at
    /// this prime is 1.
    Reduce {
        template: String,
    },
    /// Local order settled by a homotopy-theoretic lemma.
    Lemma {
        order: u64,
        reference: Option<String>,
    },
    /// The group is isomorphic to another catalogued group.
    SameAs {
        template: String,
    },
    SimplyConnected,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::BaumBrowder => f.write_str("baum-browder"),
            Strategy::Presentation { name, r, s } => {
                write!(f, "presentation {name}")?;
                if let Some(r) = r {
                    write!(f, " r={r}")?;
                }
                if let Some(s) = s {
                    write!(f, " s={s}")?;
                }
                Ok(())
            }
            Strategy::Primitive { name } => write!(f, "primitive {name}"),
            Strategy::Reduce { template } => write!(f, "reduce {template}"),
            Strategy::Lemma { order, reference: Some(r) } => write!(f, "lemma {order} reference {r}"),
            Strategy::Lemma { order, reference: None } => write!(f, "lemma {order}"),
            Strategy::SameAs { template } => write!(f, "same-as {template}"),
            Strategy::SimplyConnected => f.write_str("simply-connected"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub conditions: Vec<Condition>,
    pub strategy: Strategy,
    pub citation: String,
    pub line: usize,
}

impl Case {
    pub fn matches(&self, b: &Bindings) -> bool {
        self.conditions.iter().all(|c| c.holds(b))
    }
}

/// First-match case list for one family key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub family: String,
    pub cases: Vec<Case>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CatalogDocument {
    pub version: u32,
    pub presentations: BTreeMap<String, PresentationDef>,
    pub rules: BTreeMap<String, Rule>,
}

/// Substitutes the family parameter into a group template: `SU(2n)/Z2`
/// with `n = 3` becomes `SU(6)/Z2`. Only a lone `n`, optionally preceded
/// by a decimal factor, is replaced.
pub fn expand_template(template: &str, n: u64) -> String {
    let chars: Vec<char> = template.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let prev_letter = start > 0 && chars[start - 1].is_ascii_alphabetic();
            let lone_n =
                i < chars.len() && chars[i] == 'n' && !chars.get(i + 1).is_some_and(|c| c.is_ascii_alphabetic());
            if lone_n && !prev_letter {
                let k: u64 = digits.parse().unwrap_or(1);
                out.push_str(&(k * n).to_string());
                i += 1;
            } else {
                out.push_str(&digits);
            }
            continue;
        }
        let lone = c == 'n'
            && !(i > 0 && chars[i - 1].is_ascii_alphabetic())
            && !chars.get(i + 1).is_some_and(|c| c.is_ascii_alphabetic());
        if lone {
            out.push_str(&n.to_string());
        } else {
            out.push(c);
        }
        i += 1;
    }
    out
}

fn format_err<T>(line: usize, message: impl Into<String>) -> Result<T, CatalogError> {
    Err(CatalogError::Format { line, message: message.into() })
}

fn parse_u64(word: &str, line: usize, what: &str) -> Result<u64, CatalogError> {
    word.parse().or_else(|_| format_err(line, format!("expected {what}, found '{word}'")))
}

fn parse_u32(word: &str, line: usize, what: &str) -> Result<u32, CatalogError> {
    word.parse().or_else(|_| format_err(line, format!("expected {what}, found '{word}'")))
}

fn parse_condition(word: &str, line: usize) -> Result<Condition, CatalogError> {
    let var = match word.chars().next() {
        Some('n') => Var::N,
        Some('l') => Var::L,
        Some('p') => Var::P,
        Some('r') => Var::R,
        Some('s') => Var::S,
        _ => return format_err(line, format!("bad condition '{word}': unknown variable")),
    };
    let mut rest = &word[1..];
    let mut modulus = None;
    if let Some(tail) = rest.strip_prefix('%') {
        let end = tail.find(|c: char| !c.is_ascii_digit()).unwrap_or(tail.len());
        let m = parse_u64(&tail[..end], line, "a modulus")?;
        if m == 0 {
            return format_err(line, "modulus must be positive");
        }
        modulus = Some(m);
        rest = &tail[end..];
    }
    let (op, value) = [("!=", Op::Ne), ("<=", Op::Le), (">=", Op::Ge), ("=", Op::Eq), ("<", Op::Lt), (">", Op::Gt)]
        .iter()
        .find_map(|(sym, op)| rest.strip_prefix(sym).map(|v| (*op, v)))
        .ok_or_else(|| CatalogError::Format { line, message: format!("bad condition '{word}': missing comparison") })?;
    let value = parse_u64(value, line, "an integer")?;
    Ok(Condition { var, modulus, op, value })
}

fn parse_strategy(words: &[&str], line: usize) -> Result<Strategy, CatalogError> {
    let Some((&head, args)) = words.split_first() else {
        return format_err(line, "missing strategy after '=>'");
    };
    let one_arg = |what: &str| -> Result<String, CatalogError> {
        match args {
            [a] => Ok(a.to_string()),
            _ => format_err(line, format!("{head} takes exactly one {what}")),
        }
    };
    Ok(match head {
        "baum-browder" if args.is_empty() => Strategy::BaumBrowder,
        "simply-connected" if args.is_empty() => Strategy::SimplyConnected,
        "presentation" => {
            let Some((name, opts)) = args.split_first() else {
                return format_err(line, "presentation needs a name");
            };
            let (mut r, mut s) = (None, None);
            for opt in opts {
                if let Some(v) = opt.strip_prefix("r=") {
                    r = Some(parse_u32(v, line, "an exponent")?);
                } else if let Some(v) = opt.strip_prefix("s=") {
                    s = Some(parse_u32(v, line, "an exponent")?);
                } else {
                    return format_err(line, format!("unknown presentation option '{opt}'"));
                }
            }
            Strategy::Presentation { name: name.to_string(), r, s }
        }
        "primitive" => Strategy::Primitive { name: one_arg("presentation name")? },
        "reduce" => Strategy::Reduce { template: one_arg("group")? },
        "same-as" => Strategy::SameAs { template: one_arg("group")? },
        "lemma" => match args {
            [order] => Strategy::Lemma { order: parse_u64(order, line, "an order")?, reference: None },
            [order, "reference", name] => {
                Strategy::Lemma { order: parse_u64(order, line, "an order")?, reference: Some(name.to_string()) }
            }
            _ => return format_err(line, "expected 'lemma ORDER [reference NAME]'"),
        },
        other => return format_err(line, format!("unknown strategy '{other}'")),
    })
}

fn parse_ring(word: &str, line: usize) -> Result<CoefficientRing, CatalogError> {
    if word == "Q" {
        return Ok(CoefficientRing::Rational);
    }
    let Some(m) = word.strip_prefix("Z/") else {
        return format_err(line, format!("expected 'Z/m' or 'Q', found '{word}'"));
    };
    CoefficientRing::modular(parse_u64(m, line, "a modulus")?).or_else(|e| format_err(line, e.to_string()))
}

fn split_assignment(rest: &str, line: usize) -> Result<(String, String), CatalogError> {
    let Some((lhs, rhs)) = rest.split_once('=') else {
        return format_err(line, "expected 'GENERATOR = ELEMENT'");
    };
    let lhs = lhs.trim();
    if lhs.is_empty() || lhs.contains(char::is_whitespace) {
        return format_err(line, format!("bad generator name '{lhs}'"));
    }
    Ok((lhs.to_string(), rhs.trim().to_string()))
}

enum Block {
    None,
    Presentation(PresentationDef),
    Rule(Rule),
}

/// Parses a catalog document. Structure only; presentations are built and
/// cross-references resolved by [`super::Catalog`].
pub fn parse_document(text: &str) -> Result<CatalogDocument, CatalogError> {
    let mut version = None;
    let mut presentations = BTreeMap::new();
    let mut rules = BTreeMap::new();
    let mut block = Block::None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split_once('#').map_or(raw, |(a, _)| a).trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let words: Vec<&str> = rest.split_whitespace().collect();

        match &mut block {
            Block::None => match keyword {
                "catalog" => {
                    if version.is_some() {
                        return format_err(line, "duplicate 'catalog' header");
                    }
                    let v = parse_u32(rest, line, "a version number")?;
                    if v != CATALOG_FORMAT_VERSION {
                        return format_err(line, format!("unsupported catalog version {v}"));
                    }
                    version = Some(v);
                }
                _ if version.is_none() => return format_err(line, "the first record must be 'catalog VERSION'"),
                "presentation" => {
                    let [name] = words[..] else {
                        return format_err(line, "expected 'presentation NAME'");
                    };
                    block = Block::Presentation(PresentationDef {
                        name: name.to_string(),
                        ring: CoefficientRing::Rational,
                        max_degree: None,
                        generators: Vec::new(),
                        coproducts: Vec::new(),
                        bockstein_order: None,
                        bockstein: Vec::new(),
                        obstruction: "x3".into(),
                        extrapolated: false,
                        citation: String::new(),
                        line,
                    });
                }
                "rule" => {
                    let [family] = words[..] else {
                        return format_err(line, "expected 'rule FAMILY'");
                    };
                    block = Block::Rule(Rule { family: family.to_string(), cases: Vec::new(), line });
                }
                other => return format_err(line, format!("unexpected '{other}' outside a record")),
            },
            Block::Presentation(def) => match keyword {
                "ring" => def.ring = parse_ring(rest, line)?,
                "max-degree" => def.max_degree = Some(parse_u32(rest, line, "a degree")?),
                "generator" => {
                    let g = match words[..] {
                        [name, degree, "exterior"] => Generator::exterior(name, parse_u32(degree, line, "a degree")?),
                        [name, degree, "truncated", height] => Generator::truncated(
                            name,
                            parse_u32(degree, line, "a degree")?,
                            parse_u32(height, line, "a height")?,
                        ),
                        _ => {
                            return format_err(
                                line,
                                "expected 'generator NAME DEGREE exterior' or 'generator NAME DEGREE truncated HEIGHT'",
                            )
                        }
                    };
                    def.generators.push(g);
                }
                "coproduct" => def.coproducts.push(split_assignment(rest, line)?),
                "bockstein-order" => def.bockstein_order = Some(parse_u32(rest, line, "an order")?),
                "bockstein" => def.bockstein.push(split_assignment(rest, line)?),
                "obstruction" => def.obstruction = rest.to_string(),
                "extrapolated" if rest.is_empty() => def.extrapolated = true,
                "cite" => def.citation = rest.to_string(),
                "end" => {
                    let Block::Presentation(def) = std::mem::replace(&mut block, Block::None) else { unreachable!() };
                    if def.generators.is_empty() {
                        return format_err(def.line, format!("presentation {} has no generators", def.name));
                    }
                    if !def.bockstein.is_empty() && def.bockstein_order.is_none() {
                        return format_err(def.line, format!("presentation {} lacks bockstein-order", def.name));
                    }
                    if presentations.contains_key(&def.name) {
                        return format_err(def.line, format!("duplicate presentation {}", def.name));
                    }
                    presentations.insert(def.name.clone(), def);
                }
                other => return format_err(line, format!("unknown presentation field '{other}'")),
            },
            Block::Rule(rule) => match keyword {
                "case" => {
                    let tokens: Vec<&str> = content.split_whitespace().skip(1).collect();
                    let Some(arrow) = tokens.iter().position(|t| *t == "=>") else {
                        return format_err(line, "expected 'case CONDITIONS => STRATEGY'");
                    };
                    let conditions =
                        tokens[..arrow].iter().map(|w| parse_condition(w, line)).collect::<Result<Vec<_>, _>>()?;
                    let strategy = parse_strategy(&tokens[arrow + 1..], line)?;
                    rule.cases.push(Case { conditions, strategy, citation: String::new(), line });
                }
                "cite" => match rule.cases.last_mut() {
                    Some(case) => case.citation = rest.to_string(),
                    None => return format_err(line, "'cite' before any 'case'"),
                },
                "end" => {
                    let Block::Rule(rule) = std::mem::replace(&mut block, Block::None) else { unreachable!() };
                    if rule.cases.is_empty() {
                        return format_err(rule.line, format!("rule {} has no cases", rule.family));
                    }
                    if rules.contains_key(&rule.family) {
                        return format_err(rule.line, format!("duplicate rule {}", rule.family));
                    }
                    rules.insert(rule.family.clone(), rule);
                }
                other => return format_err(line, format!("unknown rule field '{other}'")),
            },
        }
    }
    match block {
        Block::None => {}
        Block::Presentation(def) => return format_err(def.line, format!("presentation {} is missing 'end'", def.name)),
        Block::Rule(rule) => return format_err(rule.line, format!("rule {} is missing 'end'", rule.family)),
    }
    let Some(version) = version else {
        return format_err(1, "missing 'catalog VERSION' header");
    };
    Ok(CatalogDocument { version, presentations, rules })
}
