//! Enumeration of well-jointed factorizations and H-complete sets.
//!
//! `well_jointed(h)` grows factorizations one first factor at a time,
//! keeping the pair invariant `prod(partial) * remainder = h`. The
//! H-complete set for `g` at `n` factors is the union of
//!
//! * well-jointed factorizations of `g` with `n` entries, and
//! * all-short well-jointed factorizations of `g b^-r` followed by `r >= 1`
//!   copies of `(s0, s1)`, since `(s0 s1)^r = b^r`.
//!
//! The SL(2,Z) variant maps through `h`, lifts and keeps the sign of `B`.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use serde::Serialize;

use crate::conjugacy::{join_well, Conjugate};
use crate::error::Error;
use crate::exec::Executor;
use crate::moves::SpecialFactorization;
use crate::sl2::{self, Sl2Matrix};
use crate::word::{Letter, ModularWord};

fn is_b_power_or_identity(h: &ModularWord) -> bool {
    h.is_empty() || (h.len() == 1 && h.letters()[0].is_b_power())
}

/// Candidate first factors of a well-jointed factorization of `h`: the
/// conjugates whose left part is a prefix of `h`.
pub fn first_factor(h: &ModularWord) -> Result<Vec<Conjugate>, Error> {
    if is_b_power_or_identity(h) {
        return Err(Error::NoFirstFactor(h.to_string()));
    }
    let letters = h.letters();
    let mut out = BTreeSet::new();
    let [s0, s1c, s2] = Conjugate::all_short();
    match letters {
        [Letter::W, ..] => {
            out.insert(s0);
        }
        [Letter::B, Letter::W, ..] => {
            out.insert(s1c);
        }
        [Letter::B2, Letter::W, ..] => {
            out.insert(s2);
        }
        _ => {}
    }
    for p in 1..letters.len().saturating_sub(1) {
        if letters[p] == Letter::B && letters[p + 1] == Letter::W {
            // h[..p] = P^-1 ends in w, so P begins with w.
            out.insert(Conjugate::long_from_flank(&h.prefix(p)));
        }
    }
    Ok(out.into_iter().collect())
}

/// A partial well-jointed factorization with what is left of the target.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SearchState {
    pub partial: SpecialFactorization,
    pub remainder: ModularWord,
}

impl SearchState {
    pub fn start(h: &ModularWord) -> Self {
        Self {
            partial: SpecialFactorization::empty(),
            remainder: h.clone(),
        }
    }

    /// `prod(partial) * remainder`.
    pub fn pair_product(&self) -> ModularWord {
        self.partial.product().multiply(&self.remainder)
    }

    pub fn is_finished(&self) -> bool {
        self.remainder.is_identity()
    }
}

/// One extension step of a search state.
pub fn sibling(s: &SearchState) -> Vec<SearchState> {
    let z = &s.remainder;
    if z.is_identity() {
        return vec![s.clone()];
    }
    if is_b_power_or_identity(z) {
        return Vec::new();
    }
    let candidates = first_factor(z).expect("remainder is not 1, b or B");
    let last = s.partial.entries().last();
    candidates
        .into_iter()
        .filter(|g| last.is_none_or(|l| join_well(l, g)))
        .map(|g| {
            let remainder = g.inverse_word().multiply(z);
            SearchState {
                partial: s.partial.push(g),
                remainder,
            }
        })
        .collect()
}

/// Union of [`sibling`] over `states`.
pub fn sibling_sets(states: &BTreeSet<SearchState>, exec: &Executor) -> BTreeSet<SearchState> {
    let items: Vec<SearchState> = states.iter().cloned().collect();
    exec.map(&items, sibling).into_iter().flatten().collect()
}

/// All well-jointed special factorizations of `h`, by literal rounds.
///
/// Runs `l(h) + 1` rounds of [`sibling_sets`] from `((), h)`, stopping early
/// once every state is finished or none survive. Exponential in the number
/// of partial states; [`well_jointed`] computes the same set.
pub fn well_jointed_by_rounds(h: &ModularWord, exec: &Executor) -> BTreeSet<SpecialFactorization> {
    let mut states: BTreeSet<SearchState> = BTreeSet::from([SearchState::start(h)]);
    for _ in 0..=h.len() {
        if states.iter().all(SearchState::is_finished) {
            break;
        }
        states = sibling_sets(&states, exec);
    }
    states
        .into_iter()
        .filter(SearchState::is_finished)
        .map(|s| s.partial)
        .collect()
}

type Tails = Rc<Vec<Vec<Conjugate>>>;

/// Memoized completion search behind [`well_jointed`] and [`wjs`].
///
/// `tails(prev, z)` holds the well-jointed tuples with product `z` whose
/// head joins well with `prev`. Remainders shorten until they reach `1`,
/// `b` or `b^2`, so the depth never exceeds `l(z)`.
struct Completions {
    shorts_only: bool,
    memo: HashMap<(Conjugate, ModularWord), Tails>,
}

impl Completions {
    fn new(shorts_only: bool) -> Self {
        Self {
            shorts_only,
            memo: HashMap::new(),
        }
    }

    fn candidates(&self, z: &ModularWord) -> Vec<Conjugate> {
        let mut all = first_factor(z).expect("remainder is not 1, b or B");
        if self.shorts_only {
            all.retain(Conjugate::is_short);
        }
        all
    }

    fn tails(&mut self, prev: &Conjugate, z: &ModularWord) -> Tails {
        let key = (prev.clone(), z.clone());
        if let Some(t) = self.memo.get(&key) {
            return Rc::clone(t);
        }
        let out = Rc::new(self.extend(Some(prev), z));
        self.memo.insert(key, Rc::clone(&out));
        out
    }

    fn extend(&mut self, prev: Option<&Conjugate>, z: &ModularWord) -> Vec<Vec<Conjugate>> {
        if z.is_identity() {
            return vec![Vec::new()];
        }
        if is_b_power_or_identity(z) {
            return Vec::new();
        }
        let mut out = Vec::new();
        for g in self.candidates(z) {
            if prev.is_some_and(|p| !join_well(p, &g)) {
                continue;
            }
            let rest = g.inverse_word().multiply(z);
            debug_assert!(rest.len() < z.len() || is_b_power_or_identity(&rest));
            for tail in self.tails(&g, &rest).iter() {
                let mut t = Vec::with_capacity(tail.len() + 1);
                t.push(g.clone());
                t.extend_from_slice(tail);
                out.push(t);
            }
        }
        out
    }
}

fn search(h: &ModularWord, shorts_only: bool, exec: &Executor) -> BTreeSet<SpecialFactorization> {
    if h.is_identity() {
        return BTreeSet::from([SpecialFactorization::empty()]);
    }
    if is_b_power_or_identity(h) {
        return BTreeSet::new();
    }
    let firsts = Completions::new(shorts_only).candidates(h);
    let branches = exec.map(&firsts, |g| {
        let rest = g.inverse_word().multiply(h);
        Completions::new(shorts_only)
            .tails(g, &rest)
            .iter()
            .map(|tail| {
                let mut entries = Vec::with_capacity(tail.len() + 1);
                entries.push(g.clone());
                entries.extend_from_slice(tail);
                SpecialFactorization::new(entries)
            })
            .collect::<Vec<_>>()
    });
    branches.into_iter().flatten().collect()
}

/// All well-jointed special factorizations of `h`.
///
/// Same set as [`well_jointed_by_rounds`]; branches on the first factor of
/// `h` run on `exec`, each with its own memo table.
pub fn well_jointed(h: &ModularWord, exec: &Executor) -> BTreeSet<SpecialFactorization> {
    search(h, false, exec)
}

/// The all-short members of [`well_jointed`], searched directly.
pub fn wjs(h: &ModularWord, exec: &Executor) -> BTreeSet<SpecialFactorization> {
    search(h, true, exec)
}

/// Finite data describing an H-complete set for `target` at every length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HCompleteFamily {
    pub target: ModularWord,
    /// `WJ(g)`.
    pub wj: BTreeSet<SpecialFactorization>,
    /// `WJS(g)`, prefixes for `3k` trailing pairs.
    pub wjs_0: BTreeSet<SpecialFactorization>,
    /// `WJS(g b^2)`, prefixes for `3k + 1` trailing pairs.
    pub wjs_2: BTreeSet<SpecialFactorization>,
    /// `WJS(g b)`, prefixes for `3k + 2` trailing pairs.
    pub wjs_1: BTreeSet<SpecialFactorization>,
}

impl HCompleteFamily {
    /// Prefix set used with `r` trailing pairs.
    pub fn prefixes_for(&self, r: usize) -> &BTreeSet<SpecialFactorization> {
        match r % 3 {
            0 => &self.wjs_0,
            1 => &self.wjs_2,
            _ => &self.wjs_1,
        }
    }
}

pub fn h_complete_family(g: &ModularWord, exec: &Executor) -> HCompleteFamily {
    let wj = well_jointed(g, exec);
    let wjs_0 = wj.iter().filter(|a| a.is_all_short()).cloned().collect();
    HCompleteFamily {
        target: g.clone(),
        wj,
        wjs_0,
        wjs_2: wjs(&g.multiply(&ModularWord::b2()), exec),
        wjs_1: wjs(&g.multiply(&ModularWord::b()), exec),
    }
}

/// Which part of the family a materialized tuple came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    WellJointed,
    /// `r` trailing `(s0, s1)` pairs.
    Pairs(usize),
}

/// Materialized tuples of length `n`, each with its origin, in set order.
pub fn materialize_tagged(fam: &HCompleteFamily, n: usize) -> Vec<(SpecialFactorization, Origin)> {
    let mut out: Vec<(SpecialFactorization, Origin)> = fam
        .wj
        .iter()
        .filter(|a| a.len() == n)
        .map(|a| (a.clone(), Origin::WellJointed))
        .collect();
    for r in 1..=n / 2 {
        let m = n - 2 * r;
        let tail = SpecialFactorization::pairs(r);
        for prefix in fam.prefixes_for(r).iter().filter(|p| p.len() == m) {
            out.push((prefix.concat(&tail), Origin::Pairs(r)));
        }
    }
    out.sort();
    out
}

/// The H-complete set for `fam.target` restricted to `n` factors.
pub fn materialize(fam: &HCompleteFamily, n: usize) -> BTreeSet<SpecialFactorization> {
    materialize_tagged(fam, n)
        .into_iter()
        .map(|(a, _)| a)
        .collect()
}

/// One member of an H-complete set in SL(2,Z).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedFactorization {
    /// Entries as conjugates of `u = wb`.
    pub words: Vec<ModularWord>,
    pub matrices: Vec<Sl2Matrix>,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct MatrixFactorizations {
    pub matrix: Sl2Matrix,
    pub n: usize,
    /// `pi(B)`.
    pub projection: ModularWord,
    /// `h(pi(B))`, the target in terms of conjugates of `s1`.
    pub target: ModularWord,
    pub family: HCompleteFamily,
    /// Candidates in the modular group before the sign filter.
    pub candidates: usize,
    /// Candidates whose lift multiplies to `-B`.
    pub rejected_by_sign: usize,
    pub factorizations: Vec<LiftedFactorization>,
}

/// An H-complete set of `n`-factor factorizations of `b` into conjugates of `U`.
pub fn h_complete_for_matrix(
    b: &Sl2Matrix,
    n: usize,
    exec: &Executor,
) -> Result<MatrixFactorizations, Error> {
    let projection = sl2::project_pi(b)?;
    let target = projection.apply_h();
    let family = h_complete_family(&target, exec);
    let tagged = materialize_tagged(&family, n);
    let candidates = tagged.len();
    let lifted = exec.map(&tagged, |(alpha, origin)| {
        let words: Vec<ModularWord> = alpha.words().iter().map(ModularWord::apply_h_inv).collect();
        sl2::lift_special(&words).map(|matrices| LiftedFactorization {
            words,
            matrices,
            origin: *origin,
        })
    });
    let mut factorizations = Vec::new();
    let mut rejected_by_sign = 0;
    for item in lifted {
        let item = item?;
        let prod = sl2::product(&item.matrices);
        if prod == *b {
            factorizations.push(item);
        } else if prod == -b {
            rejected_by_sign += 1;
        } else {
            return Err(Error::Internal(format!(
                "lift multiplies to {prod}, neither B nor -B"
            )));
        }
    }
    Ok(MatrixFactorizations {
        matrix: b.clone(),
        n,
        projection,
        target,
        family,
        candidates,
        rejected_by_sign,
        factorizations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ModularWord {
        s.parse().unwrap()
    }

    fn sf(words: &[&str]) -> SpecialFactorization {
        let ws: Vec<ModularWord> = words.iter().map(|s| w(s)).collect();
        SpecialFactorization::from_words(&ws).unwrap()
    }

    fn words(cs: &[Conjugate]) -> Vec<String> {
        cs.iter().map(|c| c.to_string()).collect()
    }

    const SEQ: Executor = Executor::Sequential;

    #[test]
    fn first_factor_examples() {
        assert_eq!(words(&first_factor(&w("BwBw")).unwrap()), ["Bw"]);
        assert_eq!(words(&first_factor(&w("bwb")).unwrap()), ["bwb"]);
        assert_eq!(words(&first_factor(&w("wbw")).unwrap()), ["wB", "wbwbw"]);
        for h in ["1", "b", "B"] {
            assert!(matches!(first_factor(&w(h)), Err(Error::NoFirstFactor(_))));
        }
    }

    #[test]
    fn sibling_cases() {
        let s = SearchState::start(&w("w"));
        let out = sibling(&s);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].partial, sf(&["wB"]));
        assert_eq!(out[0].remainder, w("b"));

        let dead = SearchState {
            partial: sf(&["wB"]),
            remainder: w("B"),
        };
        assert!(sibling(&dead).is_empty());

        let fixed = SearchState {
            partial: sf(&["Bw"]),
            remainder: ModularWord::identity(),
        };
        assert_eq!(sibling(&fixed), vec![fixed.clone()]);
    }

    #[test]
    fn sibling_sets_cases() {
        assert!(sibling_sets(&BTreeSet::new(), &SEQ).is_empty());
        let one = BTreeSet::from([SearchState::start(&ModularWord::identity())]);
        assert_eq!(sibling_sets(&one, &SEQ), one);
    }

    #[test]
    fn well_jointed_examples() {
        assert_eq!(
            well_jointed(&ModularWord::identity(), &SEQ),
            BTreeSet::from([SpecialFactorization::empty()])
        );
        assert!(well_jointed(&w("b"), &SEQ).is_empty());
        assert!(well_jointed(&w("B"), &SEQ).is_empty());
        assert_eq!(
            well_jointed(&w("wbw"), &SEQ),
            BTreeSet::from([sf(&["wB", "Bw"])])
        );
    }

    #[test]
    fn wjs_is_the_short_filter() {
        for t in [
            "1",
            "wbw",
            "BwBw",
            "wBwBwB",
            "bwbwbwB",
            "wbwBwbwBw",
            "BwBwBwBwBwBw",
        ] {
            let h = w(t);
            let filtered: BTreeSet<_> = well_jointed(&h, &SEQ)
                .into_iter()
                .filter(SpecialFactorization::is_all_short)
                .collect();
            assert_eq!(wjs(&h, &SEQ), filtered, "{t}");
        }
    }

    #[test]
    fn memoized_matches_rounds() {
        for t in [
            "1",
            "b",
            "wbw",
            "BwBw",
            "wBwBwB",
            "bwbwbwB",
            "wbwBwbwBw",
            "BwBwBwBwBwBw",
        ] {
            let h = w(t);
            assert_eq!(
                well_jointed(&h, &SEQ),
                well_jointed_by_rounds(&h, &SEQ),
                "{t}"
            );
        }
    }

    #[test]
    fn wjs_examples() {
        assert_eq!(
            wjs(&ModularWord::identity(), &SEQ),
            BTreeSet::from([SpecialFactorization::empty()])
        );
        assert_eq!(wjs(&w("BwBw"), &SEQ), BTreeSet::from([sf(&["Bw", "Bw"])]));
        // (bwb, wbwbw) joins well and has a long member.
        let pair = sf(&["bwb", "wbwbw"]);
        assert!(pair.is_well_jointed());
        let target = pair.product().clone();
        assert!(well_jointed(&target, &SEQ).contains(&pair));
        assert!(!wjs(&target, &SEQ).contains(&pair));
    }

    #[test]
    fn family_examples() {
        let fam = h_complete_family(&ModularWord::identity(), &SEQ);
        assert_eq!(fam.wj, BTreeSet::from([SpecialFactorization::empty()]));
        assert_eq!(fam.wjs_0, fam.wj);
        assert!(fam.wjs_1.is_empty() && fam.wjs_2.is_empty());

        let fam = h_complete_family(&w("b"), &SEQ);
        assert!(fam.wj.is_empty());
        assert_eq!(fam.wjs_2, BTreeSet::from([SpecialFactorization::empty()]));

        let fam = h_complete_family(&w("bwb"), &SEQ);
        assert!(fam.wj.contains(&sf(&["bwb"])));
    }

    #[test]
    fn materialize_examples() {
        let one = h_complete_family(&ModularWord::identity(), &SEQ);
        assert_eq!(
            materialize(&one, 0),
            BTreeSet::from([SpecialFactorization::empty()])
        );
        assert_eq!(
            materialize(&one, 6),
            BTreeSet::from([SpecialFactorization::pairs(3)])
        );
        let b = h_complete_family(&w("b"), &SEQ);
        assert_eq!(materialize(&b, 2), BTreeSet::from([sf(&["wB", "bwb"])]));
        for n in 0..8 {
            for a in materialize(&b, n) {
                assert_eq!(a.product(), &w("b"));
                assert_eq!(a.len(), n);
            }
        }
    }

    #[test]
    fn matrix_examples() {
        let u = h_complete_for_matrix(&Sl2Matrix::u(), 1, &SEQ).unwrap();
        assert_eq!(u.factorizations.len(), 1);
        assert_eq!(u.factorizations[0].matrices, vec![Sl2Matrix::u()]);

        let minus = h_complete_for_matrix(&Sl2Matrix::neg_identity(), 6, &SEQ).unwrap();
        assert_eq!(minus.factorizations.len(), 1);
        assert_eq!(
            sl2::product(&minus.factorizations[0].matrices),
            Sl2Matrix::neg_identity()
        );

        let plus = h_complete_for_matrix(&Sl2Matrix::identity(), 6, &SEQ).unwrap();
        assert!(plus.factorizations.is_empty());
        assert_eq!(plus.rejected_by_sign, 1);
    }
}
