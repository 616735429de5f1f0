use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use super::generators::{GeneratorKind, GeneratorSet};

/// A canonical monomial in `Sym(V) ⊗ Sym(W)`: one exponent per generator in
/// the canonical generator order. Odd generators have exponent at most 1.
#[derive(Clone, Debug)]
pub struct Monomial {
    exps: Box<[u16]>,
    degree: usize,
    weight: usize,
    v_length: usize,
}

impl Monomial {
    /// Builds from a dense exponent vector. Returns `None` if an odd generator
    /// appears more than once (the monomial is zero).
    pub fn from_exponents(gens: &GeneratorSet, exps: Vec<u16>) -> Option<Self> {
        assert_eq!(exps.len(), gens.len(), "exponent vector length");
        let mut degree = 0;
        let mut weight = 0;
        let mut v_length = 0;
        for (g, &e) in gens.iter().zip(&exps) {
            if g.is_odd() && e > 1 {
                return None;
            }
            degree += g.degree * e as usize;
            match g.kind {
                GeneratorKind::V => v_length += e as usize,
                GeneratorKind::W => weight += e as usize,
            }
        }
        Some(Self { exps: exps.into_boxed_slice(), degree, weight, v_length })
    }

    /// Product of generators given as `(index, exponent)` pairs.
    pub fn from_factors(gens: &GeneratorSet, factors: &[(usize, u16)]) -> Option<Self> {
        let mut exps = vec![0u16; gens.len()];
        for &(g, e) in factors {
            exps[g] += e;
        }
        Self::from_exponents(gens, exps)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, gen: usize) -> u16 {
        self.exps[gen]
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn v_length(&self) -> usize {
        self.v_length
    }

    /// Number of configuration points `ℓ_V + 2ω`.
    pub fn points(&self) -> usize {
        self.v_length + 2 * self.weight
    }

    pub(crate) fn raw_parts(exps: Box<[u16]>, degree: usize, weight: usize, v_length: usize) -> Self {
        Self { exps, degree, weight, v_length }
    }

    /// `v[0,0]^2 v[2,0]^1`, factors in canonical order; `1` for the empty monomial.
    pub fn render(&self, gens: &GeneratorSet) -> String {
        let parts: Vec<_> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, e)| format!("{}^{}", gens.get(i).label(), e))
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on exponent vectors.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps.cmp(&other.exps)
    }
}
