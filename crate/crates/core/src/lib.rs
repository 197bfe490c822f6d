//! H-complete sets of factorizations in the modular group and `SL(2,Z)`.
//!
//! Given `B` in `SL(2,Z)` and a factor count `n`, [`enumerate::h_complete_for_matrix`]
//! returns factorizations of `B` into `n` conjugates of `U = (1 1; 0 1)` that
//! meet every Hurwitz-equivalence class of such factorizations. These are the
//! monodromy factorizations of relatively minimal Lefschetz elliptic
//! fibrations over the disk with total monodromy conjugate to `B`.
//!
//! The work happens in `PSL(2,Z) = <w, b | w^2 = b^3 = 1>` on reduced words
//! ([`word`]), with conjugates of `s1 = bwb` ([`conjugacy`]), Hurwitz moves
//! ([`moves`]) and a first-factor search ([`enumerate`]). [`sl2`] handles
//! the exact matrix side.

pub mod cli;
pub mod conjugacy;
pub mod enumerate;
pub mod error;
pub mod exec;
pub mod moves;
pub mod sl2;
pub mod word;

pub use conjugacy::{Conjugate, ConjugateKind};
pub use error::{Error, ParseError};
pub use exec::Executor;
pub use moves::{CanonicalForm, Move, SpecialFactorization};
pub use sl2::{Sl2Matrix, SuWord};
pub use word::{Letter, ModularWord};
