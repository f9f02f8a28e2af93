//! Idempotents of the ring `Z_n` of integers modulo `n`.
//!
//! A residue `e` is idempotent when `e*e = e (mod n)`; there are exactly
//! `2^k` of them for `n` with `k` distinct prime factors. This crate
//! enumerates them constructively: each coprime factorization `n = p * m`
//! determines a unique `r` in `[1, p-1]` with `p | r*t + 1` (where
//! `t = m mod p`), and `r*m + 1` together with `(p-r)*m` is the idempotent
//! pair belonging to that representation. Sweeping the representations by
//! family size yields the complete set without ever scanning `[0, n)`.
//!
//! ```
//! use idemring::{arith::factorize, engine::all_idempotents_prop51};
//!
//! let fac = factorize(30).unwrap();
//! let set = all_idempotents_prop51(&fac);
//! assert_eq!(set.members(), &[0, 1, 6, 10, 15, 16, 21, 25]);
//! ```
//!
//! Independent oracles (a definition scan and a CRT reconstruction) live in
//! [`oracle`], and [`verify`] packages every structural identity as an
//! executable check. The `idemring` binary exposes all of it on the
//! command line.

pub mod arith;
pub mod cli;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod verify;

pub use arith::{factorize, Factorization};
pub use engine::{IdempotentSet, Split, SplitSolution};
pub use error::{Error, Result};
