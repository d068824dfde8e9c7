//! Factorization over finite fields and over Q.

mod finite;
mod rational;

pub use finite::{ddf, ddf_cycle_type, edf, factor_squarefree_mod_p, reduce_mod_p};
pub(crate) use finite::small_primes;
pub use rational::{factor_over_q, is_irreducible_over_q, squarefree_decomposition};
