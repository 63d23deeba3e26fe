//! ADE singularity types and their multisets.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityType {
    A(u32),
    D(u32),
    E(u32),
}

impl SingularityType {
    pub fn milnor(self) -> u32 {
        match self {
            SingularityType::A(p) | SingularityType::D(p) | SingularityType::E(p) => p,
        }
    }

    fn sort_key(self) -> (u8, i64) {
        // E₇ first, then other E, D, A; larger index first
        match self {
            SingularityType::E(7) => (0, 0),
            SingularityType::E(p) => (1, -(p as i64)),
            SingularityType::D(p) => (2, -(p as i64)),
            SingularityType::A(p) => (3, -(p as i64)),
        }
    }
}

impl fmt::Display for SingularityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityType::A(p) => write!(f, "A{p}"),
            SingularityType::D(p) => write!(f, "D{p}"),
            SingularityType::E(p) => write!(f, "E{p}"),
        }
    }
}

/// A multiset of simple singularities, displayed like `E7+2A4+2A2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SingularitySet(Vec<SingularityType>);

impl SingularitySet {
    pub fn new(mut points: Vec<SingularityType>) -> Self {
        points.sort_by_key(|s| s.sort_key());
        SingularitySet(points)
    }

    pub fn points(&self) -> &[SingularityType] {
        &self.0
    }

    pub fn milnor(&self) -> u32 {
        self.0.iter().map(|s| s.milnor()).sum()
    }

    pub fn count(&self, s: SingularityType) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }

    pub fn parse(s: &str) -> Option<Self> {
        let mut pts = Vec::new();
        for part in s.split('+') {
            let part = part.trim();
            let digits = part.find(|c: char| c.is_ascii_alphabetic())?;
            let mult: usize = if digits == 0 { 1 } else { part[..digits].parse().ok()? };
            let rest = &part[digits..];
            let (fam, idx) = rest.split_at(1);
            let p: u32 = idx.parse().ok()?;
            let t = match fam {
                "A" if p >= 1 => SingularityType::A(p),
                "D" if p >= 4 => SingularityType::D(p),
                "E" if (6..=8).contains(&p) => SingularityType::E(p),
                _ => return None,
            };
            pts.extend(std::iter::repeat(t).take(mult));
        }
        Some(SingularitySet::new(pts))
    }

    /// Without one copy of `s` (if present).
    pub fn without(&self, s: SingularityType) -> SingularitySet {
        let mut v = self.0.clone();
        if let Some(i) = v.iter().position(|&x| x == s) {
            v.remove(i);
        }
        SingularitySet(v)
    }

    /// Points that an irreducible sextic with an E₇ point `P` cannot have
    /// besides `P`: A_{2k+1}, any D, or a second E₇ (E₇ itself excluded).
    pub fn forbidden_with_e7(&self) -> Vec<SingularityType> {
        self.without(SingularityType::E(7))
            .0
            .into_iter()
            .filter(|s| match *s {
                SingularityType::A(p) => p % 2 == 1,
                SingularityType::D(_) => true,
                SingularityType::E(p) => p == 7,
            })
            .collect()
    }
}

impl fmt::Display for SingularitySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut counts: BTreeMap<(u8, i64), (SingularityType, usize)> = BTreeMap::new();
        for &s in &self.0 {
            counts.entry(s.sort_key()).or_insert((s, 0)).1 += 1;
        }
        let parts: Vec<String> = counts
            .values()
            .map(|&(s, n)| if n == 1 { s.to_string() } else { format!("{n}{s}") })
            .collect();
        f.write_str(&parts.join("+"))
    }
}

impl Serialize for SingularityType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl Serialize for SingularitySet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use SingularityType::*;

    #[test]
    fn display_and_parse() {
        assert_eq!(SingularitySet::parse("E8+E7+2A2").unwrap().to_string(), "E7+E8+2A2");
        let s = SingularitySet::new(vec![A(2), A(4), E(7), A(4), A(2)]);
        assert_eq!(s.to_string(), "E7+2A4+2A2");
        assert_eq!(s.milnor(), 19);
        assert_eq!(SingularitySet::parse("E7+2A4+2A2"), Some(s));
        assert_eq!(SingularitySet::parse("E7+D5+A7").unwrap().to_string(), "E7+D5+A7");
        assert!(SingularitySet::parse("E9").is_none());
    }

    #[test]
    fn forbidden_points() {
        assert!(SingularitySet::parse("E7+A12").unwrap().forbidden_with_e7().is_empty());
        assert_eq!(SingularitySet::parse("2E7+A5").unwrap().forbidden_with_e7(), vec![E(7), A(5)]);
    }
}
