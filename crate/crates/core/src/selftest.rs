//! The structural check battery over the standard presets.

use crate::complex::{CeComplex, SignFault};
use crate::homology::{CheckReport, Engine, EngineConfig, EngineError};
use crate::presentation::{preset, CohomologyPresentation};
use crate::quasipoly::slice_count_check;

/// Presets exercised by default: closed, open, odd classes, higher genus.
pub const BATTERY_PRESETS: [(&str, &[u64]); 6] =
    [("s2", &[]), ("t2", &[]), ("r2", &[]), ("sigma", &[2]), ("cp", &[2]), ("sigma_open", &[1])];

#[derive(Clone, Debug)]
pub struct SelftestConfig {
    pub n_max: usize,
    pub engine: EngineConfig,
    pub fault: Option<SignFault>,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        Self { n_max: 8, engine: EngineConfig::default(), fault: None }
    }
}

pub fn battery_presets() -> Vec<CohomologyPresentation> {
    BATTERY_PRESETS
        .iter()
        .map(|(name, params)| preset(name, params).expect("battery preset builds"))
        .collect()
}

/// Every applicable check for one manifold and `1 ≤ n ≤ n_max`.
pub fn run_for(pres: &CohomologyPresentation, config: &SelftestConfig) -> Result<Vec<CheckReport>, EngineError> {
    let mut complex = CeComplex::new(pres)?;
    if let Some(fault) = config.fault {
        complex = complex.with_fault(fault);
    }
    let engine_config = EngineConfig { reduced: false, window: None, ..config.engine.clone() };
    let engine = Engine::with_complex(complex, engine_config)?;
    let closed = pres.is_closed();
    let k = pres.k_invariant();
    let mut out = Vec::new();
    for n in 1..=config.n_max {
        out.push(engine.boundary_squared_check(n)?);
        out.push(engine.euler_check(n)?);
        out.push(engine.vanishing_check(n)?);
        if closed {
            out.push(engine.duality_check(n)?);
            if n >= 2 {
                out.push(engine.reduced_equivalence_check(n)?);
                out.push(engine.subcomplex_acyclicity_check(n)?);
            }
        }
        if k >= 1 && n >= 3 && n % 2 == 1 {
            out.push(slice_count_check(pres, n)?);
        }
    }
    Ok(out)
}

pub fn run(config: &SelftestConfig) -> Result<Vec<CheckReport>, EngineError> {
    let mut out = Vec::new();
    for pres in battery_presets() {
        out.extend(run_for(&pres, config)?);
    }
    Ok(out)
}
