//! Chen–Fliess series evaluation over Lyndon word monomials.
//!
//! A generating series `c` over the alphabet `X = {x_0, …, x_m}` defines the
//! input-output map `y(t) = Σ_η (c, η) E_η[u](t, t_0)`. The shuffle algebra on
//! proper polynomials is freely generated by the Lyndon words, so the same
//! output can be written as `Σ_l (𝓛(c), l) Π E_{l_i}[u]`, which only needs
//! iterated integrals indexed by Lyndon words (and their suffixes).
//!
//! Module map:
//!
//! - [`words`]: alphabets, words, exact rational polynomials and the shuffle product.
//! - [`lyndon`]: Lyndon word enumeration, counting and factorization.
//! - [`transduce`]: the isomorphism 𝓛, its inverse and the per-degree matrices `T_k`.
//! - [`integrate`]: sampled signals and iterated-integral tables.
//! - [`fliess`]: operator evaluation by word and Lyndon indexing, and the integral cost model.
//! - [`realize`]: generating series of polynomial state-space models and the CSTR example.
//! - [`cli`]: the command implementations behind the `lyndon-fliess` binary.

pub mod cli;
pub mod error;
pub mod fliess;
pub mod integrate;
pub mod lyndon;
pub mod realize;
pub mod transduce;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, Poly, Rational, Word};
