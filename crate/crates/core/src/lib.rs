//! Rational Betti numbers of unordered configuration spaces `B_n(M)` of
//! even-dimensional orientable manifolds.
//!
//! The manifold enters as a finite presentation of its compactly supported
//! rational cohomology ring ([`CohomologyPresentation`]). From it we build the
//! bigraded Chevalley–Eilenberg complex `Ω_n = ⊕_ω Sym^{n-2ω}(V) ⊗ Sym^ω(W)`
//! ([`complex`]), assemble its differentials as sparse rational matrices, and
//! compute ranks exactly or modulo random primes ([`linalg`]). The
//! [`homology`] engine turns ranks into Betti tables and runs structural
//! cross-checks, and [`quasipoly`] fits period-2 quasi-polynomials to the
//! extremal Betti sequences `n ↦ dim H_{ν_n - i}(B_n(M); ℚ)`.

pub mod complex;
pub mod homology;
pub mod linalg;
pub mod presentation;
pub mod quasipoly;
pub mod selftest;

mod rational;

pub use complex::{
    BasisFilter, BasisSlice, CeComplex, DifferentialBlock, Direction, Generator, GeneratorKind,
    GeneratorSet, Monomial, SignFault, SliceKey,
};
pub use homology::{
    BettiEntry, BettiTable, CheckReport, ComplexKind, Engine, EngineConfig, EngineError, RankMode,
};
pub use linalg::{HybridPolicy, RankMethod, RankResult, SparseMatrix};
pub use presentation::{
    preset, ClassId, CohomologyPresentation, PresentationError, ValidationReport, Violation,
};
pub use quasipoly::{FitReport, QuasiPolynomial, Verdict, VerdictKind};
pub use rational::{format_rational, parse_rational, Rational};

/// Top potentially nonvanishing homological degree `ν_n = (d-1)n + 1`.
pub fn nu(dim: usize, n: usize) -> usize {
    (dim - 1) * n + 1
}
