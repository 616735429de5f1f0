//! Exact and modular rank of sparse rational matrices.

mod primes;
mod rank;
mod sparse;

pub use primes::{draw_prime, is_prime, PRIME_HI, PRIME_LO};
pub use rank::{rank_exact, rank_hybrid, rank_modular, HybridPolicy, LinalgError, RankMethod, RankResult};
pub use sparse::SparseMatrix;
