//! The braid group B₃ acting on the free group F₃ = ⟨α₁, α₂, α₃⟩.
//!
//! Left action: σ₁ ↦ (α₁α₂α₁⁻¹, α₁, α₃), σ₂ ↦ (α₁, α₂α₃α₂⁻¹, α₂), σ₃ = σ₁⁻¹σ₂σ₁.
//! Braid words are `FreeWord`s over the letters 1 = σ₁, 2 = σ₂ (σ₃ expanded).
//!
//! A braid is determined by its degree (exponent sum) and its image in
//! B₃/⟨(σ₁σ₂)³⟩ ≅ Z₂∗Z₃ = ⟨x | x²⟩∗⟨y | y³⟩, with x = σ̄₁σ̄₂σ̄₁, y = σ̄₁σ̄₂,
//! so that σ̄₁ = y²x and σ̄₂ = xy².

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::ParseError;
use crate::word::{parse_with_prefix, FreeWord};

/// Braid word for σᵢ, i ∈ {1,2,3}, indices taken mod 3 (σ₀ = σ₃).
pub fn sigma(i: i64) -> FreeWord {
    match i.rem_euclid(3) {
        1 => FreeWord::gen(1),
        2 => FreeWord::gen(2),
        _ => FreeWord::from_letters([-1, 2, 1]),
    }
}

/// (σ₁σ₂)³, the generator of the center.
pub fn full_twist() -> FreeWord {
    FreeWord::from_letters([1, 2]).pow(3)
}

/// Expands σ₃ letters of a word over {σ₁, σ₂, σ₃}.
pub fn expand_sigma3(w: &FreeWord) -> FreeWord {
    w.substitute(&[sigma(1), sigma(2), sigma(3)])
}

/// Parses `s1 s2^-1 s3 (s1 s2)^3`; σ₃ is expanded.
pub fn parse_braid(s: &str) -> Result<FreeWord, ParseError> {
    let w = parse_with_prefix(s, 's')?;
    if w.max_gen() > 3 {
        let k = w.max_gen();
        let col = s.find(&format!("s{k}")).unwrap_or(0);
        return Err(ParseError::new(0, col, format!("unknown braid generator s{k}")));
    }
    Ok(expand_sigma3(&w))
}

pub fn format_braid(w: &FreeWord) -> String {
    w.display_with('s')
}

fn sigma_images(letter: i32) -> [FreeWord; 3] {
    let a = |k: i32| FreeWord::from_letters([k]);
    let w = |v: &[i32]| FreeWord::from_letters(v.iter().copied());
    match letter {
        1 => [w(&[1, 2, -1]), a(1), a(3)],
        -1 => [a(2), w(&[-2, 1, 2]), a(3)],
        2 => [a(1), w(&[2, 3, -2]), a(2)],
        -2 => [a(1), a(3), w(&[-3, 2, 3])],
        _ => panic!("braid letter {letter} out of range"),
    }
}

/// Images of α₁, α₂, α₃ under the automorphism of `braid` (σ₃ already expanded).
pub fn automorphism(braid: &FreeWord) -> [FreeWord; 3] {
    let mut imgs = [FreeWord::gen(1), FreeWord::gen(2), FreeWord::gen(3)];
    // images of b·s are the images of s with each αₖ replaced by b·αₖ
    for &l in braid.letters() {
        let s = sigma_images(l);
        imgs = [s[0].substitute(&imgs), s[1].substitute(&imgs), s[2].substitute(&imgs)];
    }
    imgs
}

/// `braid · word` under the left action.
pub fn act(braid: &FreeWord, word: &FreeWord) -> FreeWord {
    let mut w = word.clone();
    for &l in braid.letters().iter().rev() {
        w = w.substitute(&sigma_images(l));
    }
    w
}

/// ρ = α₁α₂α₃.
pub fn rho() -> FreeWord {
    FreeWord::from_letters([1, 2, 3])
}

/// One syllable of a Z₂∗Z₃ normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Syl {
    X,
    Y,
    Y2,
}

impl Syl {
    fn inv(self) -> Syl {
        match self {
            Syl::X => Syl::X,
            Syl::Y => Syl::Y2,
            Syl::Y2 => Syl::Y,
        }
    }
    fn y_exp(self) -> u8 {
        match self {
            Syl::X => 0,
            Syl::Y => 1,
            Syl::Y2 => 2,
        }
    }
}

/// Element of the reduced braid group Z₂∗Z₃ in alternating normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Reduced(Vec<Syl>);

impl Reduced {
    pub fn identity() -> Self {
        Reduced(Vec::new())
    }

    /// Product of the given syllables, reduced.
    pub fn from_syllables(syls: &[Syl]) -> Reduced {
        let mut out = Reduced::identity();
        for &s in syls {
            out.push(s);
        }
        out
    }

    pub fn syllables(&self) -> &[Syl] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    fn push(&mut self, s: Syl) {
        match (self.0.last().copied(), s) {
            (Some(Syl::X), Syl::X) => {
                self.0.pop();
            }
            (Some(a), b) if a != Syl::X && b != Syl::X => {
                self.0.pop();
                match (a.y_exp() + b.y_exp()) % 3 {
                    1 => self.0.push(Syl::Y),
                    2 => self.0.push(Syl::Y2),
                    _ => {}
                }
            }
            _ => self.0.push(s),
        }
    }

    pub fn mul(&self, other: &Reduced) -> Reduced {
        let mut out = self.clone();
        for &s in &other.0 {
            out.push(s);
        }
        out
    }

    pub fn inverse(&self) -> Reduced {
        Reduced(self.0.iter().rev().map(|s| s.inv()).collect())
    }

    pub fn pow(&self, e: i64) -> Reduced {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Reduced::identity();
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// σ̄ᵢ (indices mod 3).
    pub fn sigma(i: i64) -> Reduced {
        Braid3::from_word(&sigma(i)).reduced
    }

    /// Image of a braid word.
    pub fn from_word(w: &FreeWord) -> Reduced {
        let mut out = Reduced::identity();
        for &l in w.letters() {
            let syls: &[Syl] = match l {
                1 => &[Syl::Y2, Syl::X],
                -1 => &[Syl::X, Syl::Y],
                2 => &[Syl::X, Syl::Y2],
                -2 => &[Syl::Y, Syl::X],
                _ => panic!("braid letter {l} out of range"),
            };
            for &s in syls {
                out.push(s);
            }
        }
        out
    }

    /// Image under the anti-automorphism fixing σ̄₁ and σ̄₂ (word reversal).
    /// x is fixed and y ↦ xyx.
    pub fn reversed(&self) -> Reduced {
        let mut out = Reduced::identity();
        for &s in self.0.iter().rev() {
            let syls: &[Syl] = match s {
                Syl::X => &[Syl::X],
                Syl::Y => &[Syl::X, Syl::Y, Syl::X],
                Syl::Y2 => &[Syl::X, Syl::Y2, Syl::X],
            };
            for &t in syls {
                out.push(t);
            }
        }
        out
    }

    /// A braid word lifting this element (x ↦ σ₁σ₂σ₁, y ↦ σ₁σ₂).
    pub fn lift_word(&self) -> FreeWord {
        let x = FreeWord::from_letters([1, 2, 1]);
        let y = FreeWord::from_letters([1, 2]);
        let y2 = y.pow(2);
        FreeWord::product(self.0.iter().map(|s| match s {
            Syl::X => &x,
            Syl::Y => &y,
            Syl::Y2 => &y2,
        }))
    }
}

impl fmt::Display for Reduced {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|s| match s {
                Syl::X => "x",
                Syl::Y => "y",
                Syl::Y2 => "y^2",
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// A braid in (degree, reduced) normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Braid3 {
    pub degree: i64,
    pub reduced: Reduced,
}

impl Serialize for Braid3 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Braid3", 2)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("reduced", &self.reduced.to_string())?;
        st.end()
    }
}

impl Braid3 {
    pub fn identity() -> Self {
        Braid3::default()
    }

    /// Normal form of a braid word over σ₁, σ₂ (σ₃ already expanded).
    pub fn from_word(w: &FreeWord) -> Self {
        Braid3 { degree: w.exponent_sums(2).iter().sum(), reduced: Reduced::from_word(w) }
    }

    /// Lifts a reduced braid to the braid of the given degree.
    /// Returns `None` if the degree is not congruent mod 6 to the reduced part's lifts.
    pub fn lift(reduced: &Reduced, degree: i64) -> Option<Self> {
        let base = Braid3::from_word(&reduced.lift_word()).degree;
        if (degree - base).rem_euclid(6) != 0 {
            return None;
        }
        Some(Braid3 { degree, reduced: reduced.clone() })
    }

    pub fn mul(&self, other: &Braid3) -> Braid3 {
        Braid3 { degree: self.degree + other.degree, reduced: self.reduced.mul(&other.reduced) }
    }

    pub fn inverse(&self) -> Braid3 {
        Braid3 { degree: -self.degree, reduced: self.reduced.inverse() }
    }

    pub fn pow(&self, e: i64) -> Braid3 {
        Braid3 { degree: self.degree * e, reduced: self.reduced.pow(e) }
    }

    pub fn conj_by(&self, g: &Braid3) -> Braid3 {
        g.mul(self).mul(&g.inverse())
    }

    /// The braid read backwards: σ_{i₁}…σ_{iₖ} ↦ σ_{iₖ}…σ_{i₁}.
    pub fn reversed(&self) -> Braid3 {
        Braid3 { degree: self.degree, reduced: self.reduced.reversed() }
    }

    /// Canonical braid word representing this braid.
    pub fn to_word(&self) -> FreeWord {
        let w = self.reduced.lift_word();
        let d = self.degree - Braid3::from_word(&w).degree;
        debug_assert_eq!(d.rem_euclid(6), 0);
        w.mul(&full_twist().pow(d / 6))
    }
}

impl fmt::Display for Braid3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg {} | {}", self.degree, self.reduced)
    }
}

/// Reduced transport along a marked edge of type [i, j].
pub fn edge_transport(i: u8, j: u8) -> Reduced {
    let (i, j) = (i as i64, j as i64);
    if i == j {
        Reduced::sigma(i).mul(&Reduced::sigma(i - 1)).mul(&Reduced::sigma(i))
    } else if (j - i).rem_euclid(3) == 1 {
        Reduced::sigma(i)
    } else {
        Reduced::sigma(j).inverse()
    }
}

/// Transport along a path of edge types. With the left action, a later edge
/// composes on the left: m(γ₁γ₂) = m(γ₂)·m(γ₁).
pub fn transport(path: &[(u8, u8)]) -> Reduced {
    path.iter().fold(Reduced::identity(), |acc, &(i, j)| edge_transport(i, j).mul(&acc))
}

/// The same transport written in the opposite (path-order) convention:
/// edge [i, j] is y^(i+1) x y^-(j+1), and words multiply in path order.
pub fn transport_path_order(path: &[(u8, u8)]) -> Reduced {
    let y = Reduced(vec![Syl::Y]);
    let x = Reduced(vec![Syl::X]);
    path.iter().fold(Reduced::identity(), |acc, &(i, j)| {
        let e = y.pow((i as i64 + 1) % 3).mul(&x).mul(&y.pow(-((j as i64 + 1) % 3)));
        acc.mul(&e)
    })
}

/// Checks the defining identities of B₃ on braid words `u`, `v` and a free
/// word `x`, both in normal form and through the action; returns the name
/// of the first identity that fails.
pub fn identity_violation(u: &FreeWord, v: &FreeWord, x: &FreeWord) -> Option<&'static str> {
    let s121 = FreeWord::from_letters([1, 2, 1]);
    let s212 = FreeWord::from_letters([2, 1, 2]);
    let d2 = full_twist();
    let (l, r) = (u.mul(&s121).mul(v), u.mul(&s212).mul(v));
    if Braid3::from_word(&l) != Braid3::from_word(&r) {
        return Some("braid relation (normal form)");
    }
    if act(&l, x) != act(&r, x) {
        return Some("braid relation (action)");
    }
    let (l, r) = (u.mul(&d2), d2.mul(u));
    if Braid3::from_word(&l) != Braid3::from_word(&r) {
        return Some("centrality of the full twist (normal form)");
    }
    if act(&l, x) != act(&r, x) {
        return Some("centrality of the full twist (action)");
    }
    if act(&u.mul(v), x) != act(u, &act(v, x)) {
        return Some("action is a homomorphism");
    }
    if act(u, &rho()) != rho() {
        return Some("action fixes ρ");
    }
    None
}
