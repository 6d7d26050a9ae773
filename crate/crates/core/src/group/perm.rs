use std::collections::{HashMap, VecDeque};

use super::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// A permutation of `0..degree`, `images[i]` being the image of point `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// Left-to-right composition: `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Permutation { images }
    }

    /// Cycle notation with 1-based points, `()` for the identity.
    pub fn to_cycles(&self) -> String {
        let mut out = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            out.push('(');
            let mut p = start;
            loop {
                seen[p] = true;
                if p != start {
                    out.push(' ');
                }
                out.push_str(&(p + 1).to_string());
                p = self.image(p);
                if p == start {
                    break;
                }
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Parses cycle notation such as `(1 2 3)(4 5)`; points are 1-based and at
/// most `degree`. Commas may separate points. `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation> {
    if degree == 0 || degree > u8::MAX as usize {
        return Err(Error::BadParams(format!("degree {degree} out of range")));
    }
    let mut perm = Permutation::identity(degree);
    let bytes = text.as_bytes();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || bytes[*pos] == b',') {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::parse_at(pos, "empty permutation"));
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(Error::parse_at(pos, "expected '('"));
        }
        pos += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b')') => {
                    pos += 1;
                    break;
                }
                Some(c) if c.is_ascii_digit() => {
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let point: usize = text[start..pos]
                        .parse()
                        .map_err(|_| Error::parse_at(start, "point too large"))?;
                    if point == 0 || point > degree {
                        return Err(Error::parse_at(
                            start,
                            format!("point {point} outside 1..={degree}"),
                        ));
                    }
                    if cycle.contains(&(point - 1)) {
                        return Err(Error::parse_at(start, format!("point {point} repeated")));
                    }
                    cycle.push(point - 1);
                }
                Some(_) => return Err(Error::parse_at(pos, "unexpected character in cycle")),
                None => return Err(Error::parse_at(pos, "unterminated cycle")),
            }
        }
        // Cycles are composed left to right as well.
        let mut images: Vec<u8> = (0..degree as u8).collect();
        for (i, &p) in cycle.iter().enumerate() {
            images[p] = cycle[(i + 1) % cycle.len()] as u8;
        }
        perm = perm.then(&Permutation { images });
        skip_ws(&mut pos);
    }
    Ok(perm)
}

/// Closure of `generators` under composition. Elements are indexed in
/// breadth-first discovery order from the identity, multiplying on the right
/// by each generator in the given order. Also returns the elements.
pub fn closure(
    generators: &[Permutation],
    degree: usize,
    name: String,
    cap: usize,
) -> Result<(FiniteGroup, Vec<Permutation>)> {
    let identity = Permutation::identity(degree);
    let mut index: HashMap<Permutation, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for s in generators {
            let p = elements[i].then(s);
            if !index.contains_key(&p) {
                if elements.len() == cap {
                    return Err(Error::OrderLimitExceeded { order: cap + 1, cap });
                }
                index.insert(p.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(p);
            }
        }
    }
    let n = elements.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &elements {
        for b in &elements {
            table.push(index[&a.then(b)] as u32);
        }
    }
    let group = FiniteGroup::from_flat_table(n, table, name)?;
    Ok((group, elements))
}

impl FiniteGroup {
    /// Group generated by permutations in cycle notation; see [`closure`] for
    /// the element order. The identity has index 0.
    pub fn from_permutation_generators(degree: usize, generators: &[&str]) -> Result<Self> {
        Self::from_permutation_generators_capped(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn from_permutation_generators_capped(
        degree: usize,
        generators: &[&str],
        cap: usize,
    ) -> Result<Self> {
        let perms = generators
            .iter()
            .map(|g| parse_cycles(g, degree))
            .collect::<Result<Vec<_>>>()?;
        let name = format!("<{}>", generators.join(", "));
        Ok(closure(&perms, degree, name, cap)?.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::left_normed_commutator;

    #[test]
    fn parse_and_print() {
        let p = parse_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.to_cycles(), "(1 2 3)(4 5)");
        assert_eq!(parse_cycles("()", 3).unwrap(), Permutation::identity(3));
        assert_eq!(parse_cycles("(1,2)", 2).unwrap().to_cycles(), "(1 2)");
    }

    #[test]
    fn parse_errors() {
        for bad in ["(1 2", "1 2)", "(1 4)", "(0 1)", "(1 1)", "(1 a)", ""] {
            assert!(
                matches!(parse_cycles(bad, 3), Err(Error::Parse { .. })),
                "{bad:?} should fail"
            );
        }
    }

    #[test]
    fn left_to_right() {
        let a = parse_cycles("(1 2)", 3).unwrap();
        let b = parse_cycles("(1 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 2, 2 -> 1 -> 3, 3 -> 3 -> 1
        assert_eq!(a.then(&b).to_cycles(), "(1 2 3)");
    }

    #[test]
    fn s3_commutator_in_left_to_right_convention() {
        let (g, elems) = closure(
            &[
                parse_cycles("(1 2)", 3).unwrap(),
                parse_cycles("(1 3)", 3).unwrap(),
            ],
            3,
            "S3".into(),
            100,
        )
        .unwrap();
        let find = |c: &str| {
            let p = parse_cycles(c, 3).unwrap();
            elems.iter().position(|q| *q == p).unwrap()
        };
        let c = left_normed_commutator(&g, &[find("(1 2)"), find("(1 3)")]);
        assert_eq!(elems[c].to_cycles(), "(1 3 2)");
    }

    #[test]
    fn generated_orders() {
        let s3 = FiniteGroup::from_permutation_generators(3, &["(1 2)", "(1 2 3)"]).unwrap();
        assert_eq!(s3.order(), 6);
        let c4 = FiniteGroup::from_permutation_generators(4, &["(1 2 3 4)"]).unwrap();
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        let d5 = FiniteGroup::from_permutation_generators(5, &["(1 2 3 4 5)", "(2 5)(3 4)"]).unwrap();
        assert_eq!(d5.order(), 10);
    }

    #[test]
    fn closure_respects_cap() {
        let err =
            FiniteGroup::from_permutation_generators_capped(5, &["(1 2)", "(1 2 3 4 5)"], 100).unwrap_err();
        assert!(matches!(err, Error::OrderLimitExceeded { cap: 100, .. }));
    }

    #[test]
    fn bfs_order_starts_at_identity() {
        let (_, elems) = closure(&[parse_cycles("(1 2 3 4)", 4).unwrap()], 4, "C4".into(), 10).unwrap();
        let cycles: Vec<String> = elems.iter().map(Permutation::to_cycles).collect();
        assert_eq!(cycles, ["()", "(1 2 3 4)", "(1 3)(2 4)", "(1 4 3 2)"]);
    }
}
