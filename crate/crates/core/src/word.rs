//! Reduced words in the modular group `Z2 * Z3 = <w, b | w^2 = b^3 = 1>`.
//!
//! Every [`ModularWord`] in circulation is reduced: letters alternate between
//! `w` and a nontrivial power of `b`. Reduction happens on construction, so
//! length and prefix tests are plain slice operations.
//!
//! Text form: `w` is the involution, `b` the order-three generator, `B` its
//! square; the identity is written `1`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::ParseError;

/// One of the three nontrivial syllables of the free product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// The involution `w` (class of `S`).
    W,
    /// `b` (class of `R = SU`).
    B,
    /// `b^2`.
    B2,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        match self {
            Letter::W => Letter::W,
            Letter::B => Letter::B2,
            Letter::B2 => Letter::B,
        }
    }

    pub fn is_b_power(self) -> bool {
        !matches!(self, Letter::W)
    }

    fn b_exponent(self) -> u8 {
        match self {
            Letter::W => 0,
            Letter::B => 1,
            Letter::B2 => 2,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::W => 'w',
            Letter::B => 'b',
            Letter::B2 => 'B',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'w' => Some(Letter::W),
            'b' => Some(Letter::B),
            'B' => Some(Letter::B2),
            _ => None,
        }
    }
}

/// Appends `letter` to a reduced letter stack, cancelling at the juncture.
fn push_reduced(stack: &mut Vec<Letter>, letter: Letter) {
    match stack.last().copied() {
        Some(Letter::W) if letter == Letter::W => {
            stack.pop();
        }
        Some(top) if top.is_b_power() && letter.is_b_power() => {
            stack.pop();
            match (top.b_exponent() + letter.b_exponent()) % 3 {
                0 => {}
                1 => stack.push(Letter::B),
                _ => stack.push(Letter::B2),
            }
        }
        _ => stack.push(letter),
    }
}

/// A reduced word; the empty word is the identity.
///
/// Words are totally ordered shorter-first, then lexicographically with
/// `w < b < B`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModularWord {
    letters: Vec<Letter>,
}

impl ModularWord {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn w() -> Self {
        Self {
            letters: vec![Letter::W],
        }
    }

    pub fn b() -> Self {
        Self {
            letters: vec![Letter::B],
        }
    }

    pub fn b2() -> Self {
        Self {
            letters: vec![Letter::B2],
        }
    }

    /// Multiplies out an arbitrary letter sequence into its reduced word.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Self {
        let mut letters = Vec::new();
        for letter in raw {
            push_reduced(&mut letters, letter);
        }
        Self { letters }
    }

    /// Builds a word from letters that must already alternate.
    pub fn from_reduced(letters: Vec<Letter>) -> Result<Self, ParseError> {
        if let Some(pos) = first_violation(&letters) {
            return Err(ParseError::NotReduced {
                input: letters.iter().map(|l| l.to_char()).collect(),
                position: pos,
            });
        }
        Ok(Self { letters })
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

    /// Same as [`is_identity`](Self::is_identity).
    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Reduced product `self * rhs`.
    ///
    /// Cancellation proceeds from the juncture outward; when it stops short
    /// of consuming either factor the surviving juncture syllable is `b` or
    /// `b^2`.
    pub fn multiply(&self, rhs: &ModularWord) -> ModularWord {
        let mut letters = Vec::with_capacity(self.len() + rhs.len());
        letters.extend_from_slice(&self.letters);
        for &letter in &rhs.letters {
            push_reduced(&mut letters, letter);
        }
        ModularWord { letters }
    }

    pub fn inverse(&self) -> ModularWord {
        ModularWord {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^k` for `k >= 0`.
    pub fn pow(&self, k: usize) -> ModularWord {
        let mut out = ModularWord::identity();
        for _ in 0..k {
            out = out.multiply(self);
        }
        out
    }

    /// The automorphism fixing `w` and exchanging `b` with `b^2`.
    pub fn phi(&self) -> ModularWord {
        ModularWord {
            letters: self
                .letters
                .iter()
                .map(|&l| if l == Letter::W { l } else { l.inverse() })
                .collect(),
        }
    }

    /// `h(a) = b phi(a) b^2`; carries conjugates of `wb` to conjugates of `bwb`.
    pub fn apply_h(&self) -> ModularWord {
        ModularWord::b()
            .multiply(&self.phi())
            .multiply(&ModularWord::b2())
    }

    /// Inverse of [`apply_h`](Self::apply_h): `phi(b^2 a b)`.
    pub fn apply_h_inv(&self) -> ModularWord {
        ModularWord::b2()
            .multiply(self)
            .multiply(&ModularWord::b())
            .phi()
    }

    pub fn begins_with(&self, prefix: &ModularWord) -> bool {
        self.letters.starts_with(&prefix.letters)
    }

    /// The initial segment of the first `len` letters.
    pub fn prefix(&self, len: usize) -> ModularWord {
        ModularWord {
            letters: self.letters[..len].to_vec(),
        }
    }

    /// The final segment starting at letter `start`.
    pub fn suffix_from(&self, start: usize) -> ModularWord {
        ModularWord {
            letters: self.letters[start..].to_vec(),
        }
    }
}

fn first_violation(letters: &[Letter]) -> Option<usize> {
    letters
        .windows(2)
        .position(|pair| pair[0].is_b_power() == pair[1].is_b_power())
        .map(|i| i + 1)
}

impl Ord for ModularWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for ModularWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ModularWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for l in &self.letters {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl FromStr for ModularWord {
    type Err = ParseError;

    /// Parses `1` or a nonempty string over `{w, b, B}`; rejects words that
    /// are not already reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(ModularWord::identity());
        }
        if s.is_empty() {
            return Err(ParseError::EmptyWord);
        }
        let mut letters = Vec::with_capacity(s.len());
        for (position, c) in s.chars().enumerate() {
            match Letter::from_char(c) {
                Some(l) => letters.push(l),
                None => {
                    return Err(ParseError::BadLetter {
                        input: s.to_string(),
                        position,
                        found: c,
                    })
                }
            }
        }
        ModularWord::from_reduced(letters)
    }
}
