//! Hurwitz moves on special factorizations and their canonical forms.
//!
//! Positions are 1-based: a move at position `i` acts on entries `i` and
//! `i + 1` of an `n`-tuple, `1 <= i <= n - 1`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::conjugacy::{is_well_jointed, join_well, Conjugate};
use crate::error::Error;
use crate::exec::Executor;
use crate::word::ModularWord;

/// An ordered tuple of conjugates of `s1` with its cached product.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SpecialFactorization {
    entries: Vec<Conjugate>,
    product: ModularWord,
}

impl SpecialFactorization {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(entries: Vec<Conjugate>) -> Self {
        let product = entries
            .iter()
            .fold(ModularWord::identity(), |acc, g| acc.multiply(g.word()));
        Self { entries, product }
    }

    /// Recognizes every word as a conjugate of `s1`.
    pub fn from_words(words: &[ModularWord]) -> Result<Self, Error> {
        let entries = words
            .iter()
            .enumerate()
            .map(|(index, w)| {
                Conjugate::recognize(w).ok_or_else(|| Error::NotAConjugate {
                    index,
                    word: w.to_string(),
                    of: "bwb",
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(entries))
    }

    /// `count` copies of `(s0, s1)`.
    pub fn pairs(count: usize) -> Self {
        let [s0, s1, _] = Conjugate::all_short();
        let mut entries = Vec::with_capacity(2 * count);
        for _ in 0..count {
            entries.push(s0.clone());
            entries.push(s1.clone());
        }
        Self::new(entries)
    }

    pub fn entries(&self) -> &[Conjugate] {
        &self.entries
    }

    pub fn words(&self) -> Vec<ModularWord> {
        self.entries.iter().map(|g| g.word().clone()).collect()
    }

    pub fn product(&self) -> &ModularWord {
        &self.product
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_well_jointed(&self) -> bool {
        is_well_jointed(&self.entries)
    }

    pub fn is_all_short(&self) -> bool {
        self.entries.iter().all(Conjugate::is_short)
    }

    pub fn push(&self, g: Conjugate) -> Self {
        let product = self.product.multiply(g.word());
        let mut entries = self.entries.clone();
        entries.push(g);
        Self { entries, product }
    }

    pub fn concat(&self, tail: &SpecialFactorization) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&tail.entries);
        Self {
            entries,
            product: self.product.multiply(&tail.product),
        }
    }

    fn check_position(&self, position: usize) -> Result<usize, Error> {
        if position == 0 || position >= self.len() {
            return Err(Error::PositionOutOfRange {
                position,
                len: self.len(),
            });
        }
        Ok(position - 1)
    }

    fn replace_pair(
        &self,
        i: usize,
        first: ModularWord,
        second: ModularWord,
    ) -> Result<Self, Error> {
        let mut entries = self.entries.clone();
        for (offset, w) in [first, second].into_iter().enumerate() {
            entries[i + offset] = Conjugate::recognize(&w).ok_or_else(|| {
                Error::Internal(format!("Hurwitz move produced a non-conjugate `{w}`"))
            })?;
        }
        Ok(Self {
            entries,
            product: self.product.clone(),
        })
    }

    /// `(g, h) -> (h, h^-1 g h)` at `position`.
    pub fn move_right(&self, position: usize) -> Result<Self, Error> {
        let i = self.check_position(position)?;
        let (g, h) = (self.entries[i].word(), self.entries[i + 1].word());
        let conj = h.inverse().multiply(g).multiply(h);
        self.replace_pair(i, h.clone(), conj)
    }

    /// `(g, h) -> (g h g^-1, g)` at `position`.
    pub fn move_left(&self, position: usize) -> Result<Self, Error> {
        let i = self.check_position(position)?;
        let (g, h) = (self.entries[i].word(), self.entries[i + 1].word());
        let conj = g.multiply(h).multiply(&g.inverse());
        self.replace_pair(i, conj, g.clone())
    }

    pub fn apply(&self, mv: Move) -> Result<Self, Error> {
        match mv {
            Move::Right(p) => self.move_right(p),
            Move::Left(p) => self.move_left(p),
        }
    }

    /// `sum max(0, l(g_i) - 3)`; zero exactly when every entry is short.
    pub fn excess_measure(&self) -> usize {
        self.entries.iter().map(Conjugate::excess).sum()
    }

    fn pair_excess(&self, i: usize) -> usize {
        self.entries[i].excess() + self.entries[i + 1].excess()
    }

    /// 1-based positions of adjacent pairs that join badly.
    pub fn bad_positions(&self) -> Vec<usize> {
        self.entries
            .windows(2)
            .enumerate()
            .filter(|(_, p)| !join_well(&p[0], &p[1]))
            .map(|(i, _)| i + 1)
            .collect()
    }
}

impl Ord for SpecialFactorization {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for SpecialFactorization {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SpecialFactorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, g) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", content = "position", rename_all = "lowercase")]
pub enum Move {
    Right(usize),
    Left(usize),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::Right(p) => write!(f, "R{p}"),
            Move::Left(p) => write!(f, "L{p}"),
        }
    }
}

/// Applies `moves` in order.
pub fn replay(alpha: &SpecialFactorization, moves: &[Move]) -> Result<SpecialFactorization, Error> {
    moves
        .iter()
        .try_fold(alpha.clone(), |acc, &mv| acc.apply(mv))
}

/// Replaces a bad pair with a long member by one Hurwitz move that strictly
/// lowers the pair's excess; the right move is tried first.
pub fn reduce_bad_pair(
    alpha: &SpecialFactorization,
    position: usize,
) -> Result<(SpecialFactorization, Move), Error> {
    let i = alpha.check_position(position)?;
    let (g, h) = (&alpha.entries[i], &alpha.entries[i + 1]);
    if join_well(g, h) || (g.is_short() && h.is_short()) {
        return Err(Error::NotReducible { position });
    }
    let before = alpha.pair_excess(i);
    for mv in [Move::Right(position), Move::Left(position)] {
        let next = alpha.apply(mv)?;
        if next.pair_excess(i) < before {
            return Ok((next, mv));
        }
    }
    Err(Error::NoDecreasingMove {
        position,
        left: g.to_string(),
        right: h.to_string(),
    })
}

/// The canonical shape: a well-jointed prefix followed by
/// `pairs` copies of `(s0, s1)`. When `pairs > 0` the prefix is all short.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub prefix: SpecialFactorization,
    pub pairs: usize,
}

impl CanonicalForm {
    pub fn realize(&self) -> SpecialFactorization {
        self.prefix.concat(&SpecialFactorization::pairs(self.pairs))
    }

    pub fn has_canonical_shape(&self) -> bool {
        self.prefix.is_well_jointed() && (self.pairs == 0 || self.prefix.is_all_short())
    }
}

/// Result of [`normalize`]: the canonical form, the moves leading to it, and
/// the excess measure recorded after each long-pair reduction.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub canonical: CanonicalForm,
    pub moves: Vec<Move>,
    pub measure_trace: Vec<usize>,
}

struct Normalizer {
    cur: SpecialFactorization,
    moves: Vec<Move>,
    trace: Vec<usize>,
}

impl Normalizer {
    fn step(&mut self, mv: Move) -> Result<(), Error> {
        self.cur = self.cur.apply(mv)?;
        self.moves.push(mv);
        Ok(())
    }

    fn entry(&self, i: usize) -> &Conjugate {
        &self.cur.entries[i]
    }

    /// Cycles the bad short pair at 0-based `i` through
    /// `(s0,s1) -> (s1,s2) -> (s2,s0)` until `select` of it equals `target`.
    fn rotate(&mut self, i: usize, target: usize, select: usize) -> Result<(), Error> {
        for _ in 0..3 {
            let current = self.entry(i + select).short_index();
            if current == Some(target) {
                return Ok(());
            }
            self.step(Move::Right(i + 1))?;
        }
        Err(Error::Internal(format!(
            "bad short pair at {} did not reach s{target}",
            i + 1
        )))
    }

    /// Leftmost bad pair inside `active` with a long member, 0-based.
    fn long_bad_pair(&self, active: usize) -> Option<usize> {
        self.cur.entries[..active]
            .windows(2)
            .position(|p| !(p[0].is_short() && p[1].is_short()) && !join_well(&p[0], &p[1]))
    }

    fn rightmost_bad_pair(&self, active: usize) -> Option<usize> {
        self.cur.entries[..active]
            .windows(2)
            .rposition(|p| !join_well(&p[0], &p[1]))
    }

    /// Moves the bad short pair at `i` right until it reaches the end of the
    /// active prefix or abuts a long entry it now joins badly with.
    fn migrate_right(&mut self, mut i: usize, active: usize) -> Result<usize, Error> {
        while i + 2 < active {
            let next = self.entry(i + 2).clone();
            let j = bad_left_partner(&next)?;
            self.rotate(i, j, 1)?;
            if !next.is_short() {
                break;
            }
            i += 1;
        }
        Ok(i)
    }

    /// Moves the bad short pair at `i` left until the entry before it is long
    /// and joins badly with the pair's new first entry.
    fn migrate_left(&mut self, mut i: usize) -> Result<(), Error> {
        while i > 0 {
            let prev = self.entry(i - 1).clone();
            let k = bad_right_partner(&prev)?;
            self.rotate(i, k, 0)?;
            if !prev.is_short() {
                return Ok(());
            }
            i -= 1;
        }
        Err(Error::Internal("no long entry left of the bad pair".into()))
    }
}

/// The short `s_j` with `(s_j, g)` joining badly.
fn bad_left_partner(g: &Conjugate) -> Result<usize, Error> {
    (0..3)
        .find(|&j| !join_well(&Conjugate::short(j), g))
        .ok_or_else(|| Error::Internal(format!("no short conjugate joins badly before {g}")))
}

/// The short `s_k` with `(g, s_k)` joining badly.
fn bad_right_partner(g: &Conjugate) -> Result<usize, Error> {
    (0..3)
        .find(|&k| !join_well(g, &Conjugate::short(k)))
        .ok_or_else(|| Error::Internal(format!("no short conjugate joins badly after {g}")))
}

/// Brings `alpha` into canonical form by Hurwitz moves.
///
/// Bad pairs with a long member are reduced first, each step lowering the
/// excess measure. Remaining bad pairs are short; while longs survive, such
/// a pair is walked through the `(s0,s1)` 3-cycle until it abuts a long
/// entry badly, which re-enables a reduction. Once everything is short the
/// rightmost bad pair is walked to the end, turned into `(s0,s1)` and split
/// off, and the process repeats on what is left.
pub fn normalize(alpha: &SpecialFactorization) -> Result<Normalization, Error> {
    let mut st = Normalizer {
        cur: alpha.clone(),
        moves: Vec::new(),
        trace: vec![alpha.excess_measure()],
    };
    let mut active = alpha.len();
    let mut pairs = 0;
    loop {
        while let Some(i) = st.long_bad_pair(active) {
            let (next, mv) = reduce_bad_pair(&st.cur, i + 1)?;
            st.cur = next;
            st.moves.push(mv);
            st.trace.push(st.cur.excess_measure());
        }
        let Some(i) = st.rightmost_bad_pair(active) else {
            break;
        };
        let long_right = st.cur.entries[i + 2..active].iter().any(|g| !g.is_short());
        let long_left = st.cur.entries[..i].iter().any(|g| !g.is_short());
        if long_right {
            st.migrate_right(i, active)?;
        } else if long_left {
            st.migrate_left(i)?;
        } else {
            let end = st.migrate_right(i, active)?;
            st.rotate(end, 0, 0)?;
            active -= 2;
            pairs += 1;
        }
    }
    let prefix = SpecialFactorization::new(st.cur.entries[..active].to_vec());
    let canonical = CanonicalForm { prefix, pairs };
    debug_assert_eq!(canonical.realize(), st.cur);
    Ok(Normalization {
        canonical,
        moves: st.moves,
        measure_trace: st.trace,
    })
}

#[derive(Clone, Debug)]
pub struct Orbit {
    pub states: BTreeSet<SpecialFactorization>,
    pub truncated: bool,
}

/// Breadth-first closure of `alpha` under all moves, skipping tuples with an
/// entry longer than `max_len` and stopping once `max_nodes` states are held.
///
/// Levels are expanded in sorted order and neighbours in move order, so the
/// result does not depend on the executor.
pub fn orbit_bfs(
    alpha: &SpecialFactorization,
    max_len: usize,
    max_nodes: usize,
    exec: &Executor,
) -> Orbit {
    let mut states = BTreeSet::new();
    let mut truncated = false;
    if max_nodes == 0 {
        return Orbit {
            states,
            truncated: true,
        };
    }
    states.insert(alpha.clone());
    let mut frontier = vec![alpha.clone()];
    while !frontier.is_empty() && !truncated {
        let expanded = exec.map(&frontier, |s| {
            let mut out = Vec::new();
            for p in 1..s.len() {
                for mv in [Move::Right(p), Move::Left(p)] {
                    if let Ok(t) = s.apply(mv) {
                        if t.entries.iter().all(|g| g.len() <= max_len) {
                            out.push(t);
                        }
                    }
                }
            }
            out
        });
        let mut next = BTreeSet::new();
        'outer: for t in expanded.into_iter().flatten() {
            if states.contains(&t) {
                continue;
            }
            if states.len() >= max_nodes {
                truncated = true;
                break 'outer;
            }
            states.insert(t.clone());
            next.insert(t);
        }
        frontier = next.into_iter().collect();
    }
    Orbit { states, truncated }
}
