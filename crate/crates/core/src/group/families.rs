//! Named group families with documented element orderings.
//!
//! | family | order | element at index `i` |
//! |---|---|---|
//! | `cyclic(n)` | n | `g^i` |
//! | `dihedral(n)` | 2n | `r^(i mod n) s^(i div n)`, with `s r s = r⁻¹` |
//! | `symmetric(n)`, `alternating(n)` | n!, n!/2 | breadth-first order of the permutation closure |
//! | `quaternion8` | 8 | `1, -1, i, -i, j, -j, k, -k` |
//! | `heisenberg_mod_p(p)` | p³ | `(a, b, c)` at `a p² + b p + c`, the matrix `[[1,a,c],[0,1,b],[0,0,1]]` |
//! | `semidirect_z_p_on_z_q(p, q)` | pq | `(a, b)` at `b q + a`, product `(a, b)(a', b') = (a + rᵇ a', b + b')` |
//! | `direct_product(G, H)` | \|G\|\|H\| | `(g, h)` at `g \|H\| + h` |
//!
//! For the semidirect product `r` is the least residue of multiplicative
//! order `p` modulo `q`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{perm, FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum FamilySpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion8,
    Heisenberg(usize),
    DirectProduct(Box<FamilySpec>, Box<FamilySpec>),
    Semidirect { p: usize, q: usize },
}

impl FamilySpec {
    pub fn product(a: FamilySpec, b: FamilySpec) -> Self {
        FamilySpec::DirectProduct(Box::new(a), Box::new(b))
    }

    /// Order of the group, computed without building it. `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        let factorial = |n: usize| (1..=n).try_fold(1usize, |acc, i| acc.checked_mul(i));
        match *self {
            FamilySpec::Cyclic(n) => Some(n),
            FamilySpec::Dihedral(n) => n.checked_mul(2),
            FamilySpec::Symmetric(n) => factorial(n),
            FamilySpec::Alternating(n) => factorial(n).map(|f| if n < 2 { 1 } else { f / 2 }),
            FamilySpec::Quaternion8 => Some(8),
            FamilySpec::Heisenberg(p) => p.checked_pow(3),
            FamilySpec::DirectProduct(ref a, ref b) => a.order()?.checked_mul(b.order()?),
            FamilySpec::Semidirect { p, q } => p.checked_mul(q),
        }
    }

    /// Short display name, e.g. `D5` for the dihedral group of order 10.
    pub fn short_name(&self) -> String {
        match self {
            FamilySpec::Cyclic(n) => format!("C{n}"),
            FamilySpec::Dihedral(n) => format!("D{n}"),
            FamilySpec::Symmetric(n) => format!("S{n}"),
            FamilySpec::Alternating(n) => format!("A{n}"),
            FamilySpec::Quaternion8 => "Q8".into(),
            FamilySpec::Heisenberg(p) => format!("Heis{p}"),
            FamilySpec::DirectProduct(a, b) => format!("{}x{}", a.short_name(), b.short_name()),
            FamilySpec::Semidirect { p, q } => format!("C{q}:C{p}"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Cyclic(n) => write!(f, "cyclic({n})"),
            FamilySpec::Dihedral(n) => write!(f, "dihedral({n})"),
            FamilySpec::Symmetric(n) => write!(f, "symmetric({n})"),
            FamilySpec::Alternating(n) => write!(f, "alternating({n})"),
            FamilySpec::Quaternion8 => f.write_str("quaternion8"),
            FamilySpec::Heisenberg(p) => write!(f, "heisenberg_mod_p({p})"),
            FamilySpec::DirectProduct(a, b) => write!(f, "direct_product({a}, {b})"),
            FamilySpec::Semidirect { p, q } => write!(f, "semidirect_z_p_on_z_q({p}, {q})"),
        }
    }
}

impl From<FamilySpec> for String {
    fn from(spec: FamilySpec) -> String {
        spec.to_string()
    }
}

impl TryFrom<String> for FamilySpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Accepts the display form (`direct_product(dihedral(4), cyclic(2))`) and
    /// a shorthand: `family:params` with `*` for direct products, e.g.
    /// `dihedral:4*cyclic:2`, `semidirect:3,7`, `heisenberg:3`, `q8`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains('(') {
            let mut parser = SpecParser { text: s, pos: 0 };
            let spec = parser.spec()?;
            parser.skip_ws();
            if parser.pos != s.len() {
                return Err(Error::parse_at(parser.pos, "trailing input"));
            }
            return Ok(spec);
        }
        let mut factors = s.split('*').map(parse_shorthand);
        let first = factors.next().unwrap()?;
        factors.try_fold(first, |acc, next| Ok(FamilySpec::product(acc, next?)))
    }
}

fn family_from_parts(name: &str, params: &[usize], pos: usize) -> Result<FamilySpec> {
    let one = |params: &[usize]| match params {
        [n] => Ok(*n),
        _ => Err(Error::parse_at(pos, format!("{name} takes one parameter"))),
    };
    Ok(match name {
        "cyclic" | "c" => FamilySpec::Cyclic(one(params)?),
        "dihedral" | "d" => FamilySpec::Dihedral(one(params)?),
        "symmetric" | "s" => FamilySpec::Symmetric(one(params)?),
        "alternating" | "a" => FamilySpec::Alternating(one(params)?),
        "heisenberg_mod_p" | "heisenberg" => FamilySpec::Heisenberg(one(params)?),
        "quaternion8" | "q8" if params.is_empty() => FamilySpec::Quaternion8,
        "semidirect_z_p_on_z_q" | "semidirect" => match params {
            [p, q] => FamilySpec::Semidirect { p: *p, q: *q },
            _ => return Err(Error::parse_at(pos, "semidirect takes two parameters")),
        },
        _ => return Err(Error::parse_at(pos, format!("unknown family '{name}'"))),
    })
}

fn parse_shorthand(s: &str) -> Result<FamilySpec> {
    let s = s.trim();
    let (name, params) = s.split_once(':').unwrap_or((s, ""));
    let params = params
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<usize>()
                .map_err(|_| Error::parse_at(0, format!("bad parameter '{p}' in '{s}'")))
        })
        .collect::<Result<Vec<_>>>()?;
    family_from_parts(&name.to_ascii_lowercase(), &params, 0)
}

struct SpecParser<'a> {
    text: &'a str,
    pos: usize,
}

impl SpecParser<'_> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.text[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse_at(self.pos, format!("expected '{c}'")))
        }
    }

    fn ident(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.text[self.pos..].starts_with(|c: char| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn spec(&mut self) -> Result<FamilySpec> {
        let start = self.pos;
        let name = self.ident().to_ascii_lowercase();
        if name.is_empty() {
            return Err(Error::parse_at(start, "expected a family name"));
        }
        self.skip_ws();
        if !self.text[self.pos..].starts_with('(') {
            return family_from_parts(&name, &[], start);
        }
        self.eat('(')?;
        if name == "direct_product" || name == "product" {
            let a = self.spec()?;
            self.eat(',')?;
            let b = self.spec()?;
            self.eat(')')?;
            return Ok(FamilySpec::product(a, b));
        }
        let mut params = Vec::new();
        loop {
            let p = self.ident().to_string();
            params.push(
                p.parse::<usize>()
                    .map_err(|_| Error::parse_at(self.pos, format!("bad parameter '{p}'")))?,
            );
            self.skip_ws();
            if self.text[self.pos..].starts_with(',') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.eat(')')?;
        family_from_parts(&name, &params, start)
    }
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn from_rule(order: usize, name: String, rule: impl Fn(usize, usize) -> usize) -> Result<FiniteGroup> {
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            table.push(rule(a, b) as u32);
        }
    }
    FiniteGroup::from_flat_table(order, table, name)
}

pub fn build_family(spec: &FamilySpec) -> Result<FiniteGroup> {
    let order = spec
        .order()
        .ok_or_else(|| Error::BadParams(format!("{spec}: order overflows")))?;
    if order > DEFAULT_ORDER_CAP {
        return Err(Error::OrderLimitExceeded {
            order,
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let name = spec.short_name();
    match *spec {
        FamilySpec::Cyclic(n) => {
            if n == 0 {
                return Err(Error::BadParams("cyclic(0)".into()));
            }
            from_rule(n, name, |a, b| (a + b) % n)
        }
        FamilySpec::Dihedral(n) => {
            if n == 0 {
                return Err(Error::BadParams("dihedral(0)".into()));
            }
            from_rule(2 * n, name, |a, b| {
                let (i1, j1) = (a % n, a / n);
                let (i2, j2) = (b % n, b / n);
                let i = if j1 == 0 { i1 + i2 } else { i1 + n - i2 } % n;
                ((j1 + j2) % 2) * n + i
            })
        }
        FamilySpec::Symmetric(n) => {
            if !(1..=6).contains(&n) {
                return Err(Error::BadParams(format!("symmetric({n}) needs 1 <= n <= 6")));
            }
            let mut gens = Vec::new();
            if n >= 2 {
                gens.push(perm::parse_cycles("(1 2)", n)?);
            }
            if n >= 3 {
                let cycle: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
                gens.push(perm::parse_cycles(&format!("({})", cycle.join(" ")), n)?);
            }
            Ok(perm::closure(&gens, n, name, DEFAULT_ORDER_CAP)?.0)
        }
        FamilySpec::Alternating(n) => {
            if !(1..=6).contains(&n) {
                return Err(Error::BadParams(format!("alternating({n}) needs 1 <= n <= 6")));
            }
            let gens = (3..=n)
                .map(|i| perm::parse_cycles(&format!("(1 2 {i})"), n))
                .collect::<Result<Vec<_>>>()?;
            Ok(perm::closure(&gens, n, name, DEFAULT_ORDER_CAP)?.0)
        }
        FamilySpec::Quaternion8 => {
            // Units 1, i, j, k as 0..4 with a sign bit: index = 2 * unit + sign.
            const UNIT_PRODUCT: [[(usize, usize); 4]; 4] = [
                [(0, 0), (1, 0), (2, 0), (3, 0)],
                [(1, 0), (0, 1), (3, 0), (2, 1)],
                [(2, 0), (3, 1), (0, 1), (1, 0)],
                [(3, 0), (2, 0), (1, 1), (0, 1)],
            ];
            from_rule(8, name, |a, b| {
                let (unit, sign) = UNIT_PRODUCT[a / 2][b / 2];
                2 * unit + (sign + a % 2 + b % 2) % 2
            })
        }
        FamilySpec::Heisenberg(p) => {
            if !is_prime(p) || p > 7 {
                return Err(Error::BadParams(format!(
                    "heisenberg_mod_p({p}) needs a prime p <= 7"
                )));
            }
            let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
            from_rule(p * p * p, name, |x, y| {
                let (a, b, c) = split(x);
                let (a2, b2, c2) = split(y);
                ((a + a2) % p) * p * p + ((b + b2) % p) * p + (c + c2 + a * b2) % p
            })
        }
        FamilySpec::Semidirect { p, q } => {
            if !is_prime(p) || !is_prime(q) || q % p != 1 {
                return Err(Error::BadParams(format!(
                    "semidirect_z_p_on_z_q({p}, {q}) needs primes with q = 1 mod p"
                )));
            }
            let mult_order = |r: usize| {
                let mut x = r % q;
                let mut k = 1;
                while x != 1 {
                    x = x * r % q;
                    k += 1;
                }
                k
            };
            let r = (2..q).find(|&r| mult_order(r) == p).unwrap();
            let mut powers = vec![1usize; p];
            for b in 1..p {
                powers[b] = powers[b - 1] * r % q;
            }
            from_rule(p * q, name, |x, y| {
                let (a, b) = (x % q, x / q);
                let (a2, b2) = (y % q, y / q);
                ((b + b2) % p) * q + (a + powers[b] * a2) % q
            })
        }
        FamilySpec::DirectProduct(ref a, ref b) => {
            let ga = build_family(a)?;
            let gb = build_family(b)?;
            Ok(ga.direct_product(&gb)?.with_name(name))
        }
    }
}
