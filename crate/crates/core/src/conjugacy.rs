//! Conjugates of `s1 = bwb`: recognition, left parts and joining.
//!
//! A conjugate is either short (`s0 = wB`, `s1 = bwb`, `s2 = Bw`) or long,
//! with reduced form `Q^-1 bwb Q` where `Q` begins with `w`; a long
//! conjugate has length `2 l(Q) + 3`.

use std::cmp::Ordering;
use std::fmt;

use crate::word::{Letter, ModularWord};

pub fn s0() -> ModularWord {
    ModularWord::from_reduced(vec![Letter::W, Letter::B2]).unwrap()
}

pub fn s1() -> ModularWord {
    ModularWord::from_reduced(vec![Letter::B, Letter::W, Letter::B]).unwrap()
}

pub fn s2() -> ModularWord {
    ModularWord::from_reduced(vec![Letter::B2, Letter::W]).unwrap()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConjugateKind {
    S0,
    S1,
    S2,
    /// `Q^-1 s1 Q`; holds `Q`.
    Long(ModularWord),
}

/// A word certified to be a conjugate of `s1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Conjugate {
    word: ModularWord,
    kind: ConjugateKind,
}

impl Conjugate {
    pub fn short(index: usize) -> Conjugate {
        match index % 3 {
            0 => Conjugate {
                word: s0(),
                kind: ConjugateKind::S0,
            },
            1 => Conjugate {
                word: s1(),
                kind: ConjugateKind::S1,
            },
            _ => Conjugate {
                word: s2(),
                kind: ConjugateKind::S2,
            },
        }
    }

    pub fn all_short() -> [Conjugate; 3] {
        [Self::short(0), Self::short(1), Self::short(2)]
    }

    /// Classifies `w` as a conjugate of `s1`, or returns `None`.
    ///
    /// Single pass over the shape: a short word, or an odd-length word with
    /// `bwb` at its centre, mirrored flanks, and right flank starting with `w`.
    pub fn recognize(w: &ModularWord) -> Option<Conjugate> {
        let letters = w.letters();
        let kind = match letters {
            [Letter::W, Letter::B2] => ConjugateKind::S0,
            [Letter::B, Letter::W, Letter::B] => ConjugateKind::S1,
            [Letter::B2, Letter::W] => ConjugateKind::S2,
            _ => {
                let n = letters.len();
                if n < 5 || n.is_multiple_of(2) {
                    return None;
                }
                let k = (n - 3) / 2;
                if letters[k..k + 3] != [Letter::B, Letter::W, Letter::B] {
                    return None;
                }
                let (left, right) = (&letters[..k], &letters[k + 3..]);
                if right[0] != Letter::W {
                    return None;
                }
                let mirrored = left
                    .iter()
                    .zip(right.iter().rev())
                    .all(|(l, r)| *l == r.inverse());
                if !mirrored {
                    return None;
                }
                ConjugateKind::Long(w.suffix_from(k + 3))
            }
        };
        Some(Conjugate {
            word: w.clone(),
            kind,
        })
    }

    /// `q^-1 s1 q`, reduced and classified.
    pub fn conjugate_by(q: &ModularWord) -> Conjugate {
        let w = q.inverse().multiply(&s1()).multiply(q);
        Conjugate::recognize(&w).expect("conjugates of s1 are always recognized")
    }

    /// `F s1 F^-1` for a nonempty reduced `F` ending in `w`, built without
    /// reduction since the juncture letters already alternate.
    pub fn long_from_flank(flank: &ModularWord) -> Conjugate {
        assert_eq!(
            flank.last(),
            Some(Letter::W),
            "flank `{flank}` must end in w"
        );
        let q = flank.inverse();
        let mut letters = Vec::with_capacity(2 * flank.len() + 3);
        letters.extend_from_slice(flank.letters());
        letters.extend_from_slice(&[Letter::B, Letter::W, Letter::B]);
        letters.extend_from_slice(q.letters());
        Conjugate {
            word: ModularWord::from_reduced(letters).expect("flanked s1 is reduced"),
            kind: ConjugateKind::Long(q),
        }
    }

    pub fn word(&self) -> &ModularWord {
        &self.word
    }

    pub fn kind(&self) -> &ConjugateKind {
        &self.kind
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_short(&self) -> bool {
        !matches!(self.kind, ConjugateKind::Long(_))
    }

    /// Position `i` of a short conjugate `s_i`.
    pub fn short_index(&self) -> Option<usize> {
        match self.kind {
            ConjugateKind::S0 => Some(0),
            ConjugateKind::S1 => Some(1),
            ConjugateKind::S2 => Some(2),
            ConjugateKind::Long(_) => None,
        }
    }

    /// `max(0, l - 3)`.
    pub fn excess(&self) -> usize {
        self.len().saturating_sub(3)
    }

    /// The prefix every well-jointed product starting with `self` begins with.
    pub fn left_part(&self) -> ModularWord {
        match &self.kind {
            ConjugateKind::S0 => ModularWord::w(),
            ConjugateKind::S1 | ConjugateKind::S2 => self.word.prefix(2),
            // Q^-1 b w
            ConjugateKind::Long(q) => self.word.prefix(q.len() + 2),
        }
    }

    pub fn inverse_word(&self) -> ModularWord {
        self.word.inverse()
    }
}

/// `l(gh) >= max(l(g), l(h))`.
pub fn join_well(g: &Conjugate, h: &Conjugate) -> bool {
    g.word.multiply(&h.word).len() >= g.len().max(h.len())
}

/// Every adjacent pair joins well; empty and singleton tuples qualify.
pub fn is_well_jointed(entries: &[Conjugate]) -> bool {
    entries.windows(2).all(|p| join_well(&p[0], &p[1]))
}

impl Ord for Conjugate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word.cmp(&other.word)
    }
}

impl PartialOrd for Conjugate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Conjugate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}
