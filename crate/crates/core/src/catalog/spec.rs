use std::fmt;
use std::str::FromStr;

use num::integer::Integer;
use serde::Serialize;

use super::CatalogError;

/// Compact simple group `G = G̃/Γ`, named in the usual notation.
///
/// Parameters are stored as they enter the closed forms: `PSO(2n)` keeps
/// `n` and `Ss(4n)` keeps `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupSpec {
    /// `SU(n)/Z_l`; `l = 1` is `SU(n)` itself and `l = n` is `PSU(n)`.
    Su {
        n: u64,
        l: u64,
    },
    PSp {
        n: u64,
    },
    So {
        n: u64,
    },
    /// `PSO(2n)`.
    Pso {
        n: u64,
    },
    /// `Ss(4n)`.
    Ss {
        n: u64,
    },
    PE6,
    PE7,
    Spin {
        n: u64,
    },
    Sp {
        n: u64,
    },
    Exceptional(SimplyConnectedExceptional),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimplyConnectedExceptional {
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl SimplyConnectedExceptional {
    fn name(self) -> &'static str {
        match self {
            Self::E6 => "E6",
            Self::E7 => "E7",
            Self::E8 => "E8",
            Self::F4 => "F4",
            Self::G2 => "G2",
        }
    }
}

/// Families addressable by `table --family`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    Su,
    PSp,
    So,
    Pso,
    Ss,
    Exceptional,
}

impl FromStr for Family {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "su" | "psu" => Family::Su,
            "psp" | "sp" => Family::PSp,
            "so" => Family::So,
            "pso" => Family::Pso,
            "ss" => Family::Ss,
            "exceptional" | "e" | "pe" => Family::Exceptional,
            other => return Err(CatalogError::UnsupportedFamily(other.to_string())),
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Su => "SU",
            Family::PSp => "PSp",
            Family::So => "SO",
            Family::Pso => "PSO",
            Family::Ss => "Ss",
            Family::Exceptional => "exceptional",
        })
    }
}

impl Family {
    /// Specs swept by `table`, in row order. `max` bounds the group
    /// parameter as written (`n` in `SU(n)`, `2n` in `PSO(2n)`, `4n` in
    /// `Ss(4n)`).
    pub fn sweep(self, max: u64) -> Vec<GroupSpec> {
        match self {
            Family::Su => (2..=max)
                .flat_map(|n| (2..=n).filter(move |l| n % l == 0).map(move |l| GroupSpec::Su { n, l }))
                .collect(),
            Family::PSp => (1..=max).map(|n| GroupSpec::PSp { n }).collect(),
            Family::So => (7..=max).map(|n| GroupSpec::So { n }).collect(),
            Family::Pso => (4..=max / 2).map(|n| GroupSpec::Pso { n }).collect(),
            Family::Ss => (2..=max / 4).map(|n| GroupSpec::Ss { n }).collect(),
            Family::Exceptional => vec![GroupSpec::PE6, GroupSpec::PE7],
        }
    }

    /// Sweep bounds used when `--max` is not given.
    pub fn default_max(self) -> u64 {
        match self {
            Family::Su => 24,
            Family::PSp => 12,
            Family::So => 16,
            Family::Pso => 24,
            Family::Ss => 32,
            Family::Exceptional => 0,
        }
    }
}

/// A parse failure located at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

/// Largest group parameter accepted. Keeps the prime factorisation of the
/// centre order cheap.
pub const MAX_PARAMETER: u64 = 1 << 32;

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError { position, message: message.into() })
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => err(self.pos, format!("expected '{c}', found '{found}'")),
                None => err(self.pos, format!("expected '{c}' at end of input")),
            }
        }
    }

    fn word(&mut self) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if !c.is_ascii_alphabetic() {
                break;
            }
            self.pos += 1;
        }
        (start, &self.src[start..self.pos])
    }

    fn integer(&mut self) -> Result<(usize, u64), SpecError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => err(start, format!("expected an integer, found '{c}'")),
                None => err(start, "expected an integer at end of input"),
            };
        }
        match self.src[start..self.pos].parse::<u64>() {
            Ok(v) if v <= MAX_PARAMETER => Ok((start, v)),
            _ => err(start, format!("integers above {MAX_PARAMETER} are not supported")),
        }
    }

    fn paren_integer(&mut self) -> Result<(usize, u64), SpecError> {
        self.expect('(')?;
        let v = self.integer()?;
        self.expect(')')?;
        Ok(v)
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }
}

impl GroupSpec {
    /// Parses group notation: a case-insensitive family token, a
    /// parenthesised integer where the family has one, and for `SU` an
    /// optional `/Z l` or `/Z(l)` suffix.
    pub fn parse(s: &str) -> Result<GroupSpec, SpecError> {
        let mut cur = Cursor { src: s, pos: 0 };
        let (start, raw) = cur.word();
        if raw.is_empty() {
            return match cur.peek() {
                Some(c) => err(start, format!("expected a group family, found '{c}'")),
                None => err(start, "empty group specification"),
            };
        }
        let family = raw.to_ascii_lowercase();
        let spec = match family.as_str() {
            "su" | "psu" => {
                let (npos, n) = cur.paren_integer()?;
                if n < 2 {
                    return err(npos, "SU(n) needs n >= 2");
                }
                let mut l = if family == "psu" { n } else { 1 };
                if family == "su" && cur.eat('/') {
                    let (zpos, z) = cur.word();
                    if !z.eq_ignore_ascii_case("z") {
                        return err(zpos, "expected 'Z' after '/'");
                    }
                    let (lpos, lv) = if cur.eat('(') {
                        let v = cur.integer()?;
                        cur.expect(')')?;
                        v
                    } else {
                        cur.integer()?
                    };
                    if lv == 0 {
                        return err(lpos, "the subgroup order must be positive");
                    }
                    if n % lv != 0 {
                        return err(lpos, format!("{lv} does not divide {n}"));
                    }
                    l = lv;
                }
                GroupSpec::Su { n, l }
            }
            "psp" | "sp" => {
                let (npos, n) = cur.paren_integer()?;
                if n < 1 {
                    return err(npos, "Sp(n) needs n >= 1");
                }
                if family == "psp" {
                    GroupSpec::PSp { n }
                } else {
                    GroupSpec::Sp { n }
                }
            }
            "so" => {
                let (npos, n) = cur.paren_integer()?;
                if n < 3 {
                    return err(npos, "SO(n) needs n >= 3");
                }
                if n == 4 {
                    return err(npos, "SO(4) is not simple");
                }
                GroupSpec::So { n }
            }
            "pso" => {
                let (npos, m) = cur.paren_integer()?;
                if m % 2 != 0 {
                    return err(npos, format!("PSO(2n) needs an even argument, got {m}"));
                }
                if m < 8 {
                    return err(npos, "PSO(2n) needs n >= 4");
                }
                GroupSpec::Pso { n: m / 2 }
            }
            "ss" => {
                let (npos, m) = cur.paren_integer()?;
                if m % 4 != 0 {
                    return err(npos, format!("Ss(4n) needs a multiple of 4, got {m}"));
                }
                if m < 8 {
                    return err(npos, "Ss(4n) needs n >= 2");
                }
                GroupSpec::Ss { n: m / 4 }
            }
            "spin" => {
                let (npos, n) = cur.paren_integer()?;
                if n < 3 {
                    return err(npos, "Spin(n) needs n >= 3");
                }
                GroupSpec::Spin { n }
            }
            "pe" | "e" | "f" | "g" => {
                // exceptional names run straight into their digit: "PE6", "E8"
                let (dpos, k) = cur.integer()?;
                use SimplyConnectedExceptional as X;
                match (family.as_str(), k) {
                    ("pe", 6) => GroupSpec::PE6,
                    ("pe", 7) => GroupSpec::PE7,
                    ("pe", 8) => return err(start, "E8 has trivial centre; use E8"),
                    ("e", 6) => GroupSpec::Exceptional(X::E6),
                    ("e", 7) => GroupSpec::Exceptional(X::E7),
                    ("e", 8) => GroupSpec::Exceptional(X::E8),
                    ("f", 4) => GroupSpec::Exceptional(X::F4),
                    ("g", 2) => GroupSpec::Exceptional(X::G2),
                    _ => return err(dpos, format!("no exceptional group {raw}{k}")),
                }
            }
            _ => return err(start, format!("unknown group family '{raw}'")),
        };
        if !cur.at_end() {
            return err(cur.pos, format!("unexpected trailing input '{}'", &s[cur.pos..]));
        }
        Ok(spec)
    }

    pub fn is_simply_connected(&self) -> bool {
        matches!(
            self,
            GroupSpec::Su { l: 1, .. } | GroupSpec::Spin { .. } | GroupSpec::Sp { .. } | GroupSpec::Exceptional(_)
        )
    }

    /// `Γ = π₁(G)` as a product of cyclic orders.
    pub fn fundamental_group(&self) -> Vec<u64> {
        match *self {
            GroupSpec::Su { l, .. } if l > 1 => vec![l],
            GroupSpec::PSp { .. } | GroupSpec::So { .. } | GroupSpec::Ss { .. } | GroupSpec::PE7 => vec![2],
            GroupSpec::Pso { n } if n % 2 == 1 => vec![4],
            GroupSpec::Pso { .. } => vec![2, 2],
            GroupSpec::PE6 => vec![3],
            _ => vec![],
        }
    }

    pub fn fundamental_group_name(&self) -> String {
        let parts = self.fundamental_group();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.iter().map(|m| format!("Z{m}")).collect::<Vec<_>>().join("×")
        }
    }

    /// Exponent of `Γ`; `l0` always divides it.
    pub fn exponent(&self) -> u64 {
        self.fundamental_group().into_iter().fold(1, |a, b| a.lcm(&b))
    }

    /// Primes dividing `|Γ|`, increasing.
    pub fn primes(&self) -> Vec<u64> {
        let mut m: u64 = self.fundamental_group().iter().product();
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= m {
            if m.is_multiple_of(p) {
                out.push(p);
                while m.is_multiple_of(p) {
                    m /= p;
                }
            }
            p += 1;
        }
        if m > 1 {
            out.push(m);
        }
        out
    }

    /// The family parameter as it appears in catalog conditions.
    pub fn parameter(&self) -> u64 {
        match *self {
            GroupSpec::Su { n, .. }
            | GroupSpec::PSp { n }
            | GroupSpec::So { n }
            | GroupSpec::Pso { n }
            | GroupSpec::Ss { n }
            | GroupSpec::Spin { n }
            | GroupSpec::Sp { n } => n,
            GroupSpec::PE6 => 6,
            GroupSpec::PE7 => 7,
            GroupSpec::Exceptional(_) => 0,
        }
    }

    /// The subgroup order `l` for `SU(n)/Z_l`, `|Γ|` otherwise.
    pub fn subgroup_order(&self) -> u64 {
        match *self {
            GroupSpec::Su { l, .. } => l,
            _ => self.fundamental_group().iter().product(),
        }
    }

    /// Catalog rule key.
    pub fn family_key(&self) -> &'static str {
        match self {
            GroupSpec::Su { l: 1, .. } | GroupSpec::Spin { .. } | GroupSpec::Sp { .. } | GroupSpec::Exceptional(_) => {
                "simply-connected"
            }
            GroupSpec::Su { .. } => "SU",
            GroupSpec::PSp { .. } => "PSp",
            GroupSpec::So { .. } => "SO",
            GroupSpec::Pso { .. } => "PSO",
            GroupSpec::Ss { .. } => "Ss",
            GroupSpec::PE6 => "PE6",
            GroupSpec::PE7 => "PE7",
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GroupSpec::Su { n, l: 1 } => write!(f, "SU({n})"),
            GroupSpec::Su { n, l } if l == n => write!(f, "PSU({n})"),
            GroupSpec::Su { n, l } => write!(f, "SU({n})/Z{l}"),
            GroupSpec::PSp { n } => write!(f, "PSp({n})"),
            GroupSpec::So { n } => write!(f, "SO({n})"),
            GroupSpec::Pso { n } => write!(f, "PSO({})", 2 * n),
            GroupSpec::Ss { n } => write!(f, "Ss({})", 4 * n),
            GroupSpec::PE6 => f.write_str("PE6"),
            GroupSpec::PE7 => f.write_str("PE7"),
            GroupSpec::Spin { n } => write!(f, "Spin({n})"),
            GroupSpec::Sp { n } => write!(f, "Sp({n})"),
            GroupSpec::Exceptional(x) => f.write_str(x.name()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = SpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GroupSpec::parse(s)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `ord_l(q)` computed through `l / gcd(q, l)`.
pub fn ord_mod(q: u64, l: u64) -> u64 {
    l / q.gcd(&l)
}

/// Closed forms for every family, with `ρ(n) = n mod 2`.
pub fn closed_form_l0(spec: &GroupSpec) -> u64 {
    let rho = |n: u64| n % 2;
    match *spec {
        GroupSpec::Su { n, l } => ord_mod(n / l, l),
        GroupSpec::PSp { n } => 1 + rho(n),
        // SO(3) = PSU(2); every other SO(n) has l0 = 1.
        GroupSpec::So { n: 3 } => 2,
        GroupSpec::So { .. } => 1,
        GroupSpec::Pso { n } => {
            if n % 2 == 1 {
                4
            } else {
                2
            }
        }
        GroupSpec::Ss { n } => 1 + rho(n),
        GroupSpec::PE6 => 3,
        GroupSpec::PE7 => 2,
        GroupSpec::Spin { .. } | GroupSpec::Sp { .. } | GroupSpec::Exceptional(_) => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> GroupSpec {
        GroupSpec::parse(s).unwrap()
    }

    #[test]
    fn grammar_cases() {
        assert_eq!(p("SU(6)/Z3"), GroupSpec::Su { n: 6, l: 3 });
        assert_eq!(p("su(6)/z(3)"), GroupSpec::Su { n: 6, l: 3 });
        assert_eq!(p("PSU(4)"), GroupSpec::Su { n: 4, l: 4 });
        assert_eq!(p("PSO(10)"), GroupSpec::Pso { n: 5 });
        assert_eq!(p("Ss(12)"), GroupSpec::Ss { n: 3 });
        assert_eq!(p(" PE6 "), GroupSpec::PE6);
        assert_eq!(p("Spin(9)"), GroupSpec::Spin { n: 9 });
        assert_eq!(p("E8"), GroupSpec::Exceptional(SimplyConnectedExceptional::E8));
    }

    #[test]
    fn divisibility_error_points_at_subgroup() {
        let e = GroupSpec::parse("SU(6)/Z4").unwrap_err();
        assert_eq!(e.message, "4 does not divide 6");
        assert_eq!(e.position, 7);
    }

    #[test]
    fn rejects_bad_input() {
        for s in ["", "XY(3)", "SU(1)", "SO(4)", "PSO(6)", "PSO(9)", "Ss(6)", "SU(6)/Z0", "SU(6", "PE8", "SU(6)x"] {
            assert!(GroupSpec::parse(s).is_err(), "{s}");
        }
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["SU(6)/Z3", "PSU(5)", "SU(7)", "PSp(3)", "SO(11)", "PSO(10)", "Ss(8)", "PE7", "Sp(2)", "G2"] {
            let spec = p(s);
            assert_eq!(spec.to_string(), s);
            assert_eq!(p(&spec.to_string()), spec);
        }
        assert_eq!(p("SU(4)/Z4").to_string(), "PSU(4)");
        assert_eq!(p("SU(4)/Z1").to_string(), "SU(4)");
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_l0(&p("PSO(10)")), 4);
        assert_eq!(closed_form_l0(&p("PSp(3)")), 2);
        assert_eq!(closed_form_l0(&p("PE6")), 3);
        assert_eq!(closed_form_l0(&p("SU(8)/Z2")), 1);
        assert_eq!(closed_form_l0(&p("PSU(8)")), 8);
        assert_eq!(closed_form_l0(&p("SU(6)/Z3")), 3);
        assert_eq!(closed_form_l0(&p("Ss(12)")), 2);
    }

    #[test]
    fn centres() {
        assert_eq!(p("PSO(8)").fundamental_group_name(), "Z2×Z2");
        assert_eq!(p("PSO(8)").exponent(), 2);
        assert_eq!(p("PSU(12)").primes(), vec![2, 3]);
        assert!(p("Spin(7)").primes().is_empty());
    }
}
