//! Free group words.
//!
//! A letter is a nonzero `i32`: `k > 0` is the `k`-th generator (1-based),
//! `-k` its inverse. Words are kept freely reduced.

use std::fmt;

use crate::error::ParseError;

/// Upper bound on the length of a parsed word (guards against `(...)^huge`).
pub const MAX_PARSED_LEN: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord(Vec<i32>);

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord(Vec::new())
    }

    pub fn gen(k: usize) -> Self {
        assert!(k >= 1, "generators are 1-based");
        FreeWord(vec![k as i32])
    }

    /// Builds a word from raw letters, reducing it.
    pub fn from_letters<I: IntoIterator<Item = i32>>(letters: I) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for x in letters {
            assert!(x != 0, "letter 0 is not a generator");
            push_reduced(&mut out, x);
        }
        FreeWord(out)
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest generator index occurring in the word.
    pub fn max_gen(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        FreeWord(self.0.iter().rev().map(|x| -x).collect())
    }

    pub fn mul(&self, other: &FreeWord) -> Self {
        let mut out = self.0.clone();
        for &x in &other.0 {
            push_reduced(&mut out, x);
        }
        FreeWord(out)
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = FreeWord::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `g w g⁻¹`.
    pub fn conj_by(&self, g: &FreeWord) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    /// `[x, y] = x y x⁻¹ y⁻¹`.
    pub fn comm(x: &FreeWord, y: &FreeWord) -> Self {
        x.mul(y).mul(&x.inverse()).mul(&y.inverse())
    }

    /// Product of a sequence of words.
    pub fn product<'a, I: IntoIterator<Item = &'a FreeWord>>(ws: I) -> Self {
        ws.into_iter().fold(FreeWord::identity(), |acc, w| acc.mul(w))
    }

    /// Cyclic reduction: strips `x ... x⁻¹` from the ends.
    pub fn cyclically_reduced(&self) -> Self {
        let v = &self.0;
        let (mut i, mut j) = (0usize, v.len());
        while j >= i + 2 && v[i] == -v[j - 1] {
            i += 1;
            j -= 1;
        }
        FreeWord(v[i..j].to_vec())
    }

    /// Exponent sum of each generator `1..=n`.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut s = vec![0i64; n];
        for &x in &self.0 {
            let k = x.unsigned_abs() as usize;
            if k <= n {
                s[k - 1] += x.signum() as i64;
            }
        }
        s
    }

    /// Applies the endomorphism `a_k ↦ images[k-1]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Self {
        let mut out: Vec<i32> = Vec::new();
        for &x in &self.0 {
            let img = &images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                for &y in &img.0 {
                    push_reduced(&mut out, y);
                }
            } else {
                for &y in img.0.iter().rev() {
                    push_reduced(&mut out, -y);
                }
            }
        }
        FreeWord(out)
    }

    /// Parses a word with generator prefix `a` (`a1 a2^-1 (a1 a3)^2 [a1,a2]`).
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        parse_with_prefix(s, 'a')
    }

    /// Formats the word with a custom generator prefix.
    pub fn display_with(&self, prefix: char) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let x = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == x {
                run += 1;
            }
            let k = x.unsigned_abs();
            let e = run as i64 * x.signum() as i64;
            if e == 1 {
                parts.push(format!("{prefix}{k}"));
            } else {
                parts.push(format!("{prefix}{k}^{e}"));
            }
            i += run;
        }
        parts.join(" ")
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with('a'))
    }
}

impl serde::Serialize for FreeWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[inline]
fn push_reduced(out: &mut Vec<i32>, x: i32) {
    if out.last() == Some(&-x) {
        out.pop();
    } else {
        out.push(x);
    }
}

/// Shared recursive-descent parser for words over `<prefix><k>` tokens.
///
/// Grammar: `word := factor*`, `factor := atom ('^' int)?`,
/// `atom := prefix digits | '(' word ')' | '[' word ',' word ']' | '1'`.
pub fn parse_with_prefix(s: &str, prefix: char) -> Result<FreeWord, ParseError> {
    let mut p = Parser { chars: s.char_indices().collect(), i: 0, prefix, src_len: s.len() };
    let w = p.word()?;
    p.skip_ws();
    if p.i < p.chars.len() {
        return Err(p.err("unexpected character"));
    }
    Ok(w)
}

struct Parser {
    chars: Vec<(usize, char)>,
    i: usize,
    prefix: char,
    src_len: usize,
}

impl Parser {
    fn pos(&self) -> usize {
        self.chars.get(self.i).map(|c| c.0).unwrap_or(self.src_len)
    }

    fn err(&self, msg: &str) -> ParseError {
        ParseError::new(0, self.pos(), msg)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace() || c == '*' || c == '.') {
            self.i += 1;
        }
    }

    fn word(&mut self) -> Result<FreeWord, ParseError> {
        let mut acc = FreeWord::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c == self.prefix || c == '(' || c == '[' || c == '1' => {
                    let f = self.factor()?;
                    if acc.len() + f.len() > MAX_PARSED_LEN {
                        return Err(self.err("word too long"));
                    }
                    acc = acc.mul(&f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<FreeWord, ParseError> {
        let a = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.i += 1;
            self.skip_ws();
            let e = self.int()?;
            let bound = (MAX_PARSED_LEN as u64) / (a.len().max(1) as u64);
            if e.unsigned_abs() > bound {
                return Err(self.err("exponent too large"));
            }
            return Ok(a.pow(e));
        }
        Ok(a)
    }

    fn atom(&mut self) -> Result<FreeWord, ParseError> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let w = self.word()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.i += 1;
                Ok(w)
            }
            Some('[') => {
                self.i += 1;
                let x = self.word()?;
                self.skip_ws();
                if self.peek() != Some(',') {
                    return Err(self.err("expected ','"));
                }
                self.i += 1;
                let y = self.word()?;
                self.skip_ws();
                if self.peek() != Some(']') {
                    return Err(self.err("expected ']'"));
                }
                self.i += 1;
                Ok(FreeWord::comm(&x, &y))
            }
            Some('1') => {
                self.i += 1;
                Ok(FreeWord::identity())
            }
            Some(c) if c == self.prefix => {
                self.i += 1;
                let start = self.i;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.i += 1;
                }
                if start == self.i {
                    return Err(self.err("expected generator index"));
                }
                let digits: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
                let k: i32 = digits.parse().map_err(|_| self.err("generator index out of range"))?;
                if k == 0 || k > 1 << 16 {
                    return Err(self.err("generator index out of range"));
                }
                Ok(FreeWord::gen(k as usize))
            }
            _ => Err(self.err("expected generator")),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let mut neg = false;
        if self.peek() == Some('-') {
            neg = true;
            self.i += 1;
        }
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return Err(self.err("expected integer exponent"));
        }
        let digits: String = self.chars[start..self.i].iter().map(|c| c.1).collect();
        let v: i64 = digits.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -v } else { v })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_and_inverse() {
        let w = FreeWord::from_letters([1, 2, -2, 3, -3, -1]);
        assert!(w.is_identity());
        let w = FreeWord::from_letters([1, 2, -3]);
        assert!(w.mul(&w.inverse()).is_identity());
    }

    #[test]
    fn parse_roundtrip() {
        let w = FreeWord::parse("a1 a2^-1 (a1 a3)^2").unwrap();
        assert_eq!(w.letters(), &[1, -2, 1, 3, 1, 3]);
        assert_eq!(FreeWord::parse(&w.to_string()).unwrap(), w);
        let c = FreeWord::parse("[a1,a2]").unwrap();
        assert_eq!(c.letters(), &[1, 2, -1, -2]);
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = FreeWord::parse("a1 b2").unwrap_err();
        assert_eq!(e.col, 3);
        assert!(FreeWord::parse("a0").is_err());
        assert!(FreeWord::parse("(a1").is_err());
        assert!(FreeWord::parse("a1^999999999999").is_err());
    }

    #[test]
    fn cyclic_reduction() {
        let w = FreeWord::from_letters([2, 1, 3, -2]);
        assert_eq!(w.cyclically_reduced().letters(), &[1, 3]);
    }
}
