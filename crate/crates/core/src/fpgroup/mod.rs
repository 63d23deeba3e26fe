//! Finitely presented groups: coset enumeration, abelianization,
//! Reidemeister–Schreier and class-2 nilpotent quotients.

pub mod coset;
pub mod nilpotent;
pub mod schreier;
pub mod snf;

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{GroupError, ParseError};
use crate::word::FreeWord;

pub use coset::{enumerate, CosetTable, EnumOptions, Strategy, DEFAULT_MAX_COSETS};

/// Generators `a1..an` and a list of relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub ngens: usize,
    pub relators: Vec<FreeWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    /// Invariant factors d₁ | d₂ | …, each > 1.
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order of the group, `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// Prime-power parts, as GAP prints them.
    pub fn primary(&self) -> Vec<u64> {
        let t: Vec<BigInt> = self.torsion.iter().map(|&x| BigInt::from(x)).collect();
        snf::primary_parts(&t).iter().map(|x| x.to_u64().unwrap()).collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z{d}")).collect();
        for _ in 0..self.free_rank {
            parts.push("Z".into());
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Presentation {
    /// Relators are freely and cyclically reduced; empty ones are dropped.
    pub fn new(ngens: usize, relators: Vec<FreeWord>) -> Self {
        let relators = relators
            .into_iter()
            .map(|r| r.cyclically_reduced())
            .filter(|r| !r.is_identity())
            .collect();
        Presentation { ngens, relators }
    }

    pub fn with_relators(&self, extra: &[FreeWord]) -> Self {
        let mut r = self.relators.clone();
        r.extend(extra.iter().cloned());
        Presentation::new(self.ngens, r)
    }

    pub fn without_relator(&self, i: usize) -> Self {
        let mut r = self.relators.clone();
        r.remove(i);
        Presentation { ngens: self.ngens, relators: r }
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> snf::Matrix {
        self.relators
            .iter()
            .map(|r| r.exponent_sums(self.ngens).into_iter().map(BigInt::from).collect())
            .collect()
    }

    pub fn abelianization(&self) -> AbelianInvariants {
        let (torsion, free_rank) = snf::cokernel(&self.relation_matrix(), self.ngens);
        AbelianInvariants {
            torsion: torsion.iter().map(|x| x.to_u64().expect("torsion factor fits u64")).collect(),
            free_rank,
        }
    }

    pub fn is_perfect(&self) -> bool {
        self.abelianization().is_trivial()
    }

    pub fn coset_table(&self, subgroup: &[FreeWord], opts: EnumOptions) -> Result<CosetTable, GroupError> {
        enumerate(self.ngens, &self.relators, subgroup, opts)
    }

    pub fn index(&self, subgroup: &[FreeWord], opts: EnumOptions) -> Result<usize, GroupError> {
        Ok(self.coset_table(subgroup, opts)?.index())
    }

    pub fn order(&self, opts: EnumOptions) -> Result<usize, GroupError> {
        self.index(&[], opts)
    }

    /// Order of `w` as |G| / [G : ⟨w⟩].
    pub fn element_order(&self, w: &FreeWord, opts: EnumOptions) -> Result<usize, GroupError> {
        let n = self.order(opts)?;
        let i = self.index(std::slice::from_ref(w), opts)?;
        Ok(n / i)
    }

    /// Parses `gens n` followed by `rel <word>` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut ngens: Option<usize> = None;
        let mut rels = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line_no = ln + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let off = raw.len() - raw.trim_start().len() + kw.len() + 1;
            match kw {
                "gens" => {
                    if ngens.is_some() {
                        return Err(ParseError::new(line_no, 0, "duplicate 'gens' line"));
                    }
                    let n: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| ParseError::new(line_no, off, "expected generator count"))?;
                    if n == 0 || n > 1024 {
                        return Err(ParseError::new(line_no, off, "generator count out of range"));
                    }
                    ngens = Some(n);
                }
                "rel" => {
                    let Some(n) = ngens else {
                        return Err(ParseError::new(line_no, 0, "'rel' before 'gens'"));
                    };
                    let w = FreeWord::parse(rest).map_err(|e| {
                        ParseError::new(line_no, off + e.col, e.msg)
                    })?;
                    if w.max_gen() > n {
                        return Err(ParseError::new(line_no, off, format!("generator a{} exceeds 'gens {n}'", w.max_gen())));
                    }
                    rels.push(w);
                }
                _ => return Err(ParseError::new(line_no, 0, format!("unknown keyword '{kw}'"))),
            }
        }
        let n = ngens.ok_or_else(|| ParseError::new(0, 0, "missing 'gens' line"))?;
        Ok(Presentation::new(n, rels))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {}", self.ngens)?;
        for r in &self.relators {
            writeln!(f, "rel {r}")?;
        }
        Ok(())
    }
}

/// Structural facts about a finite group, computed by enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedData {
    pub order: usize,
    pub abelianization: AbelianInvariants,
    pub derived_order: usize,
    pub derived_perfect: bool,
}

/// Order of G, its abelianization, and order/perfectness of [G,G]
/// (via a Reidemeister–Schreier presentation of the kernel of G → G^ab).
pub fn derived_data(p: &Presentation, opts: EnumOptions) -> Result<DerivedData, GroupError> {
    let order = p.order(opts)?;
    let abelianization = p.abelianization();
    let sub = schreier::derived_subgroup(p, opts)?;
    let derived_order = sub.order(opts)?;
    Ok(DerivedData {
        order,
        abelianization,
        derived_order,
        derived_perfect: sub.is_perfect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let p = Presentation::parse("gens 2\n# S3\nrel a1^2\nrel a2^2\nrel (a1 a2)^3\n").unwrap();
        assert_eq!(p.ngens, 2);
        assert_eq!(Presentation::parse(&p.to_string()).unwrap(), p);
        assert_eq!(p.order(EnumOptions::default()).unwrap(), 6);
    }

    #[test]
    fn parse_errors() {
        let e = Presentation::parse("gens 2\nrel a3").unwrap_err();
        assert_eq!(e.line, 2);
        let e = Presentation::parse("rel a1").unwrap_err();
        assert_eq!(e.line, 1);
        let e = Presentation::parse("gens 2\nrel a1 ?").unwrap_err();
        assert_eq!((e.line, e.col), (2, 7));
    }

    #[test]
    fn free_abelianization() {
        let p = Presentation::new(3, vec![]);
        assert_eq!(p.abelianization(), AbelianInvariants { torsion: vec![], free_rank: 3 });
    }
}
