#![allow(dead_code)]

use hurwitz::sl2::{SuFactor, SuGen};
use hurwitz::{Conjugate, Letter, ModularWord, SpecialFactorization};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly built reduced word of exactly `len` letters.
pub fn word_of_len<R: Rng>(rng: &mut R, len: usize) -> ModularWord {
    let mut letters = Vec::with_capacity(len);
    for i in 0..len {
        let l = if i == 0 {
            [Letter::W, Letter::B, Letter::B2][rng.gen_range(0..3)]
        } else if letters[i - 1] == Letter::W {
            [Letter::B, Letter::B2][rng.gen_range(0..2)]
        } else {
            Letter::W
        };
        letters.push(l);
    }
    ModularWord::from_reduced(letters).unwrap()
}

pub fn word_up_to<R: Rng>(rng: &mut R, max_len: usize) -> ModularWord {
    let len = rng.gen_range(0..=max_len);
    word_of_len(rng, len)
}

/// A conjugate of `bwb` of length at most `max_len` (odd bound >= 3).
pub fn conjugate_up_to<R: Rng>(rng: &mut R, max_len: usize) -> Conjugate {
    let q = word_up_to(rng, (max_len - 3) / 2);
    Conjugate::conjugate_by(&q)
}

pub fn factorization<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_entry_len: usize,
) -> SpecialFactorization {
    let n = rng.gen_range(0..=max_n);
    SpecialFactorization::new(
        (0..n)
            .map(|_| conjugate_up_to(rng, max_entry_len))
            .collect(),
    )
}

/// The corpus of random special factorizations (n <= 6, entries of length <= 15).
pub fn factorization_corpus(seed: u64, count: usize) -> Vec<SpecialFactorization> {
    let mut r = rng(seed);
    (0..count).map(|_| factorization(&mut r, 6, 15)).collect()
}

pub fn su_word<R: Rng>(rng: &mut R, max_len: usize, max_exp: i64) -> Vec<SuFactor> {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|i| {
            let gen = if i % 2 == 0 { SuGen::S } else { SuGen::U };
            let mut e = 0;
            while e == 0 {
                e = rng.gen_range(-max_exp..=max_exp);
            }
            SuFactor {
                gen,
                exp: BigInt::from(e),
            }
        })
        .collect()
}

pub fn su_eval(factors: &[SuFactor]) -> hurwitz::Sl2Matrix {
    // Multiplies the raw factors one generator at a time, independently of
    // SuWord's merging.
    let mut acc = hurwitz::Sl2Matrix::identity();
    for f in factors {
        let (g, inv) = match f.gen {
            SuGen::S => (hurwitz::Sl2Matrix::s(), hurwitz::Sl2Matrix::s().inverse()),
            SuGen::U => (hurwitz::Sl2Matrix::u(), hurwitz::Sl2Matrix::u().inverse()),
        };
        let k: i64 = f.exp.to_string().parse().unwrap();
        let step = if k > 0 { &g } else { &inv };
        for _ in 0..k.unsigned_abs() {
            acc = &acc * step;
        }
    }
    acc
}
