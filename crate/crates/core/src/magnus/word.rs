use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `x_generator^sign`, generators numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub generator: u32,
    pub sign: i8,
}

impl Letter {
    pub fn new(generator: u32, sign: i8) -> Self {
        debug_assert!(generator >= 1 && (sign == 1 || sign == -1));
        Letter { generator, sign }
    }

    pub fn inverse(self) -> Self {
        Letter {
            sign: -self.sign,
            ..self
        }
    }
}

/// A freely reduced word in the free group on `x1, x2, …`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct FreeWord {
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: u32) -> Self {
        FreeWord {
            letters: vec![Letter::new(i, 1)],
        }
    }

    /// Freely reduces `letters`.
    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, 0 for the empty word.
    pub fn rank_used(&self) -> u32 {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        FreeWord::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> Self {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// Left-normed `[w₁, …, wₙ]`.
    pub fn left_normed(words: &[FreeWord]) -> Self {
        let (first, rest) = words.split_first().expect("empty commutator");
        rest.iter()
            .fold(first.clone(), |acc, w| FreeWord::commutator(&acc, w))
    }
}

impl fmt::Display for FreeWord {
    /// Syllables `x1^2 x2^-1`; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let exp = (j - i) as i64 * i64::from(l.sign);
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "x{}", l.generator)?;
            if exp != 1 {
                write!(f, "^{exp}")?;
            }
            i = j;
        }
        Ok(())
    }
}

impl From<FreeWord> for String {
    fn from(w: FreeWord) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for FreeWord {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for FreeWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

/// Parses the word grammar:
///
/// ```text
/// word := term+
/// term := atom ('^' int)?
/// atom := 'x' digits | '1' | '[' word (',' word)+ ']' | '(' word ')'
/// ```
///
/// `[u, v] = u⁻¹v⁻¹uv` and `[u, v, w] = [[u, v], w]`. Whitespace and `*`
/// between terms are ignored. The result is freely reduced.
pub fn parse_word(text: &str) -> Result<FreeWord> {
    let mut p = WordParser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    p.skip();
    let w = p.word()?;
    p.skip();
    if p.pos != p.bytes.len() {
        return Err(Error::parse_at(
            p.pos,
            format!("unexpected '{}'", p.bytes[p.pos] as char),
        ));
    }
    Ok(w)
}

struct WordParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn skip(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace() || c == b'*') {
            self.pos += 1;
        }
    }

    fn starts_term(&self) -> bool {
        matches!(self.peek(), Some(b'x' | b'X' | b'1' | b'[' | b'('))
    }

    fn word(&mut self) -> Result<FreeWord> {
        self.skip();
        if !self.starts_term() {
            return Err(Error::parse_at(self.pos, "expected a generator, '[' or '('"));
        }
        let mut w = FreeWord::identity();
        while self.starts_term() {
            w = w.mul(&self.term()?);
            self.skip();
        }
        Ok(w)
    }

    fn term(&mut self) -> Result<FreeWord> {
        let atom = self.atom()?;
        self.skip();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip();
            let n = self.int()?;
            Ok(atom.pow(n))
        } else {
            Ok(atom)
        }
    }

    fn int(&mut self) -> Result<i64> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(Error::parse_at(self.pos, "expected an integer exponent"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::parse_at(start, "exponent out of range"))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::parse_at(self.pos, format!("expected '{}'", c as char)))
        }
    }

    fn atom(&mut self) -> Result<FreeWord> {
        let start = self.pos;
        match self.peek() {
            Some(b'x' | b'X') => {
                self.pos += 1;
                let digits = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let index: u32 = std::str::from_utf8(&self.bytes[digits..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| Error::parse_at(digits, "expected a generator number"))?;
                if index == 0 {
                    return Err(Error::parse_at(start, "generators are numbered from 1"));
                }
                Ok(FreeWord::generator(index))
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(FreeWord::identity())
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let mut parts = vec![self.word()?];
                loop {
                    self.skip();
                    match self.peek() {
                        Some(b',') => {
                            self.pos += 1;
                            parts.push(self.word()?);
                        }
                        Some(b']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(Error::parse_at(self.pos, "expected ',' or ']'")),
                    }
                }
                if parts.len() < 2 {
                    return Err(Error::parse_at(start, "a commutator needs two entries"));
                }
                Ok(FreeWord::left_normed(&parts))
            }
            _ => Err(Error::parse_at(start, "expected a generator, '[' or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn letters(w: &FreeWord) -> Vec<(u32, i8)> {
        w.letters().iter().map(|l| (l.generator, l.sign)).collect()
    }

    #[test]
    fn cancelling_pair() {
        assert!(parse_word("x1 x1^-1").unwrap().is_identity());
    }

    #[test]
    fn commutator_expansion() {
        let w = parse_word("[x1,x2]").unwrap();
        assert_eq!(letters(&w), [(1, -1), (2, -1), (1, 1), (2, 1)]);
    }

    #[test]
    fn powers_of_brackets() {
        let w = parse_word("(x1 x2)^2").unwrap();
        assert_eq!(letters(&w), [(1, 1), (2, 1), (1, 1), (2, 1)]);
        assert_eq!(
            parse_word("(x1 x2)^-1").unwrap(),
            parse_word("x2^-1 x1^-1").unwrap()
        );
        assert_eq!(parse_word("x1x2").unwrap(), parse_word("x1 * x2").unwrap());
    }

    #[test]
    fn triple_commutator_is_left_normed() {
        assert_eq!(
            parse_word("[x1,x2,x3]").unwrap(),
            parse_word("[[x1,x2],x3]").unwrap()
        );
    }

    #[test]
    fn errors_carry_positions() {
        for (text, column) in [
            ("x0", 1),
            ("x1 ^", 5),
            ("[x1]", 1),
            ("(x1", 4),
            ("x1 y", 4),
            ("", 1),
        ] {
            match parse_word(text) {
                Err(Error::Parse { column: c, .. }) => assert_eq!(c, column, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn display_round_trip() {
        for text in ["1", "x1", "x1^2 x2^-1 x1", "x3^-2"] {
            let w = parse_word(text).unwrap();
            assert_eq!(w.to_string(), text);
            assert_eq!(parse_word(&w.to_string()).unwrap(), w);
        }
    }
}
