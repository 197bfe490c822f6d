//! Exact `SL(2,Z)` arithmetic with arbitrary-precision entries.
//!
//! Besides the group operations this module holds the Euclidean
//! decomposition into powers of `S` and `U`, the projection `pi` onto the
//! modular group and the unique trace-2 lift of factorizations into
//! conjugates of `u = wb`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Euclid, One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::conjugacy::{Conjugate, ConjugateKind};
use crate::error::{Error, ParseError};
use crate::word::{Letter, ModularWord};

/// A 2x2 integer matrix `(a b; c d)` with `ad - bc = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sl2Matrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl Sl2Matrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self, Error> {
        let det = &a * &d - &b * &c;
        if !det.is_one() {
            return Err(Error::NotUnimodular {
                det: det.to_string(),
            });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self, Error> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    fn raw(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        debug_assert!((&a * &d - &b * &c).is_one());
        Self { a, b, c, d }
    }

    fn small(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::raw(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::small(1, 0, 0, 1)
    }

    pub fn neg_identity() -> Self {
        Self::small(-1, 0, 0, -1)
    }

    /// `S = (0 -1; 1 0)`.
    pub fn s() -> Self {
        Self::small(0, -1, 1, 0)
    }

    /// `U = (1 1; 0 1)`.
    pub fn u() -> Self {
        Self::small(1, 1, 0, 1)
    }

    /// `R = SU`, a preimage of `b`.
    pub fn r() -> Self {
        Self::small(0, -1, 1, 1)
    }

    /// `U^k`.
    pub fn u_pow(k: &BigInt) -> Self {
        Self::raw(BigInt::one(), k.clone(), BigInt::zero(), BigInt::one())
    }

    /// `S^k`, using `S^4 = I`.
    pub fn s_pow(k: &BigInt) -> Self {
        match k.mod_floor(&BigInt::from(4)).to_u8() {
            Some(0) => Self::identity(),
            Some(1) => Self::s(),
            Some(2) => Self::neg_identity(),
            _ => Self::small(0, 1, -1, 0),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }
    pub fn b(&self) -> &BigInt {
        &self.b
    }
    pub fn c(&self) -> &BigInt {
        &self.c
    }
    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn entries(&self) -> [[&BigInt; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn inverse(&self) -> Self {
        Self::raw(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Largest number of decimal digits among the entries.
    pub fn max_digits(&self) -> usize {
        [&self.a, &self.b, &self.c, &self.d]
            .iter()
            .map(|x| x.magnitude().to_string().len())
            .max()
            .unwrap_or(1)
    }
}

impl Mul for &Sl2Matrix {
    type Output = Sl2Matrix;

    fn mul(self, y: &Sl2Matrix) -> Sl2Matrix {
        let x = self;
        Sl2Matrix::raw(
            &x.a * &y.a + &x.b * &y.c,
            &x.a * &y.b + &x.b * &y.d,
            &x.c * &y.a + &x.d * &y.c,
            &x.c * &y.b + &x.d * &y.d,
        )
    }
}

impl Mul for Sl2Matrix {
    type Output = Sl2Matrix;

    fn mul(self, y: Sl2Matrix) -> Sl2Matrix {
        &self * &y
    }
}

impl Neg for &Sl2Matrix {
    type Output = Sl2Matrix;

    fn neg(self) -> Sl2Matrix {
        Sl2Matrix::raw(-&self.a, -&self.b, -&self.c, -&self.d)
    }
}

impl Neg for Sl2Matrix {
    type Output = Sl2Matrix;

    fn neg(self) -> Sl2Matrix {
        -&self
    }
}

/// Ordered product of a sequence of matrices; the empty product is `I`.
pub fn product<'a, I: IntoIterator<Item = &'a Sl2Matrix>>(ms: I) -> Sl2Matrix {
    ms.into_iter()
        .fold(Sl2Matrix::identity(), |acc, m| &acc * m)
}

impl fmt::Display for Sl2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}; {} {}", self.a, self.b, self.c, self.d)
    }
}

fn bad_matrix(input: &str, reason: impl Into<String>) -> ParseError {
    ParseError::BadMatrix {
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// Parses `"a b; c d"` without checking the determinant.
pub fn parse_entries(s: &str) -> Result<[BigInt; 4], ParseError> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != 2 {
        return Err(bad_matrix(s, "expected two rows separated by `;`"));
    }
    let mut out = Vec::with_capacity(4);
    for row in rows {
        let cells: Vec<&str> = row.split_whitespace().collect();
        if cells.len() != 2 {
            return Err(bad_matrix(s, "expected two entries per row"));
        }
        for cell in cells {
            let v = BigInt::from_str(cell)
                .map_err(|_| bad_matrix(s, format!("`{cell}` is not a decimal integer")))?;
            out.push(v);
        }
    }
    let [a, b, c, d]: [BigInt; 4] = out.try_into().expect("four entries");
    Ok([a, b, c, d])
}

impl Serialize for Sl2Matrix {
    /// `[["a","b"],["c","d"]]` with decimal strings.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&[self.a.to_string(), self.b.to_string()])?;
        seq.serialize_element(&[self.c.to_string(), self.d.to_string()])?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for Sl2Matrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows: [[String; 2]; 2] = Deserialize::deserialize(deserializer)?;
        let parse = |s: &String| BigInt::from_str(s).map_err(D::Error::custom);
        Sl2Matrix::new(
            parse(&rows[0][0])?,
            parse(&rows[0][1])?,
            parse(&rows[1][0])?,
            parse(&rows[1][1])?,
        )
        .map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuGen {
    S,
    U,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuFactor {
    pub gen: SuGen,
    pub exp: BigInt,
}

/// A product of nonzero powers of `S` and `U` with alternating generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SuWord {
    factors: Vec<SuFactor>,
}

impl SuWord {
    /// Builds a word, merging equal neighbours and dropping zero exponents.
    pub fn from_factors<I: IntoIterator<Item = SuFactor>>(factors: I) -> Self {
        let mut out: Vec<SuFactor> = Vec::new();
        for f in factors {
            if f.exp.is_zero() {
                continue;
            }
            match out.last_mut() {
                Some(top) if top.gen == f.gen => {
                    top.exp += f.exp;
                    if top.exp.is_zero() {
                        out.pop();
                    }
                }
                _ => out.push(f),
            }
        }
        Self { factors: out }
    }

    pub fn factors(&self) -> &[SuFactor] {
        &self.factors
    }

    pub fn eval(&self) -> Sl2Matrix {
        self.factors.iter().fold(Sl2Matrix::identity(), |acc, f| {
            let m = match f.gen {
                SuGen::S => Sl2Matrix::s_pow(&f.exp),
                SuGen::U => Sl2Matrix::u_pow(&f.exp),
            };
            &acc * &m
        })
    }
}

impl fmt::Display for SuWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("I");
        }
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let g = match x.gen {
                SuGen::S => "S",
                SuGen::U => "U",
            };
            write!(f, "{g}^{}", x.exp)?;
        }
        Ok(())
    }
}

/// Writes `m` as a product of powers of `S` and `U` by row reduction.
///
/// The first column is run through Euclid: premultiply by `S` when
/// `|a| < |c|`, then by `U^-n` with `a = cn + r`, `0 <= r < |c|`. The loop
/// ends at `(+-1 k; 0 +-1)`, and `m` is recovered as the inverted row
/// operations followed by `+-I U^(+-k)`.
pub fn decompose_su(m: &Sl2Matrix) -> SuWord {
    let mut cur = m.clone();
    let mut ops: Vec<SuFactor> = Vec::new();
    while !cur.c.is_zero() {
        if cur.a.abs() < cur.c.abs() {
            cur = &Sl2Matrix::s() * &cur;
            ops.push(SuFactor {
                gen: SuGen::S,
                exp: BigInt::one(),
            });
        }
        if cur.c.is_zero() {
            break;
        }
        // Euclidean quotient: 0 <= a - cn < |c|.
        let n = Euclid::div_euclid(&cur.a, &cur.c);
        if !n.is_zero() {
            cur = &Sl2Matrix::u_pow(&-&n) * &cur;
            ops.push(SuFactor {
                gen: SuGen::U,
                exp: -n,
            });
        }
    }
    // cur = (e k; 0 e) with e = +-1, i.e. U^k or -I U^-k.
    let mut tail = Vec::new();
    let k = if cur.a.is_one() {
        cur.b.clone()
    } else {
        tail.push(SuFactor {
            gen: SuGen::S,
            exp: BigInt::from(2),
        });
        -cur.b.clone()
    };
    tail.push(SuFactor {
        gen: SuGen::U,
        exp: k,
    });
    // P = ops_k ... ops_1, so P^-1 lists the inverses in application order.
    let inverted = ops.into_iter().map(|f| SuFactor {
        gen: f.gen,
        exp: -f.exp,
    });
    SuWord::from_factors(inverted.chain(tail))
}

/// Image of an `SuWord` in the modular group: `S -> w`, `U -> wb`.
pub fn su_word_to_modular(word: &SuWord) -> Result<ModularWord, Error> {
    let mut letters = Vec::new();
    for f in word.factors() {
        match f.gen {
            SuGen::S => {
                if f.exp.is_odd() {
                    letters.push(Letter::W);
                }
            }
            SuGen::U => {
                let k = f
                    .exp
                    .abs()
                    .to_usize()
                    .ok_or_else(|| Error::ExponentTooLarge(f.exp.to_string()))?;
                let unit: [Letter; 2] = if f.exp.is_positive() {
                    [Letter::W, Letter::B]
                } else {
                    [Letter::B2, Letter::W]
                };
                letters.reserve(2 * k);
                for _ in 0..k {
                    letters.extend_from_slice(&unit);
                }
            }
        }
    }
    Ok(ModularWord::reduce(letters))
}

/// The reduced word of `pi(m)`, the class of `m` modulo `+-I`.
pub fn project_pi(m: &Sl2Matrix) -> Result<ModularWord, Error> {
    su_word_to_modular(&decompose_su(m))
}

/// A fixed preimage of `w` under `pi`: letters map to `S`, `R`, `R^2`.
pub fn word_to_matrix(w: &ModularWord) -> Sl2Matrix {
    let r = Sl2Matrix::r();
    let r2 = &r * &r;
    w.letters()
        .iter()
        .fold(Sl2Matrix::identity(), |acc, l| match l {
            Letter::W => &acc * &Sl2Matrix::s(),
            Letter::B => &acc * &r,
            Letter::B2 => &acc * &r2,
        })
}

/// Returns `a` with `g = a u a^-1`, if `g` is a conjugate of `u = wb`.
pub fn u_conjugator(g: &ModularWord) -> Option<ModularWord> {
    let c = Conjugate::recognize(&g.apply_h())?;
    // h(g) = q^-1 s1 q, so g = h^-1(q)^-1 u h^-1(q).
    let q = match c.kind() {
        ConjugateKind::S0 => ModularWord::b(),
        ConjugateKind::S1 => ModularWord::identity(),
        ConjugateKind::S2 => ModularWord::b2(),
        ConjugateKind::Long(q) => q.clone(),
    };
    Some(q.apply_h_inv().inverse())
}

/// The lift of a single conjugate of `u`: the preimage conjugate to `U`.
pub fn lift_conjugate(g: &ModularWord) -> Option<Sl2Matrix> {
    let a = word_to_matrix(&u_conjugator(g)?);
    Some(&(&a * &Sl2Matrix::u()) * &a.inverse())
}

/// Entrywise lift of a factorization into conjugates of `u`; every matrix
/// in the result is a conjugate of `U` and so has trace 2.
pub fn lift_special(entries: &[ModularWord]) -> Result<Vec<Sl2Matrix>, Error> {
    entries
        .iter()
        .enumerate()
        .map(|(index, g)| {
            lift_conjugate(g).ok_or_else(|| Error::NotAConjugate {
                index,
                word: g.to_string(),
                of: "wb",
            })
        })
        .collect()
}
