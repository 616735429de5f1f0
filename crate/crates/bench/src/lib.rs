//! Shared fixtures for the benchmarks in `benches/`.

use confh_core::{preset, CohomologyPresentation, Engine, EngineConfig, SparseMatrix};

pub fn manifold(spec: &str) -> CohomologyPresentation {
    confh_core::presentation::preset_from_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

/// Every nonempty block of the full `∂`-complex of `B_n(M)`, largest first.
pub fn boundary_blocks(spec: &str, n: usize) -> Vec<SparseMatrix> {
    let pres = manifold(spec);
    let engine = Engine::new(&pres, EngineConfig::default()).expect("valid preset");
    let mut blocks: Vec<SparseMatrix> = engine.blocks(n).expect("blocks build").into_iter().map(|b| b.matrix).collect();
    blocks.sort_by_key(|m| std::cmp::Reverse(m.nnz()));
    blocks
}

pub fn torus() -> CohomologyPresentation {
    preset("t2", &[]).expect("t2")
}
