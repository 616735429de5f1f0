//! The bigraded Chevalley–Eilenberg complex `Ω^{*,*}_n(M)`.
//!
//! Generators, canonical monomials and slice bases live in submodules. The
//! [`CeComplex`] ties them to a presentation and assembles the differential
//! `∂: Ω^{i,ω} → Ω^{i-1,ω+1}` (co-Leibniz extension of the bracket
//! `Sym^2(V) → W`) and its transpose `D: Ω^{i-1,ω+1} → Ω^{i,ω}`.

mod basis;
mod generators;
pub mod gf;
mod monomial;

use std::collections::HashMap;

use num_traits::Zero;
use thiserror::Error;

use crate::linalg::SparseMatrix;
use crate::presentation::{CohomologyPresentation, ValidationReport};
use crate::rational::{int, sign, Rational};

pub use basis::{BasisFilter, BasisSlice, SliceKey};
pub use generators::{Generator, GeneratorKind, GeneratorSet};
pub use monomial::Monomial;

use basis::Enumerator;

/// Rational combination of monomials.
pub type Chain = Vec<(Monomial, Rational)>;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("presentation is not valid: {0}")]
    InvalidPresentation(ValidationReport),
    #[error("weight {weight} outside 0..={max} for n = {n}")]
    InvalidWeight { n: usize, weight: usize, max: usize },
    #[error("the v_d^2, w_(2d-1) subcomplex only exists for closed manifolds")]
    OpenManifold,
    #[error("monomial {0} is not in the v_d^2, w_(2d-1) subcomplex")]
    NotInSubcomplex(String),
    #[error("boundary of a monomial in {source_key} leaves the target basis {target}")]
    DimensionMismatch { source_key: SliceKey, target: SliceKey },
}

/// Test hook that breaks the differential on purpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignFault {
    /// Forget the Koszul sign picked up when a V-pair is moved to the front.
    DropPairKoszulSign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `∂`, degree `(-1, +1)`.
    Boundary,
    /// `D`, degree `(+1, -1)`.
    Dual,
}

/// One bidegree block of `∂` or `D`. Columns index the source basis, rows the target.
#[derive(Clone, Debug)]
pub struct DifferentialBlock {
    pub source: SliceKey,
    pub target: SliceKey,
    pub direction: Direction,
    pub matrix: SparseMatrix,
}

impl DifferentialBlock {
    /// `D` block as the transpose of a `∂` block (and back).
    pub fn dual(&self) -> DifferentialBlock {
        DifferentialBlock {
            source: self.target,
            target: self.source,
            direction: match self.direction {
                Direction::Boundary => Direction::Dual,
                Direction::Dual => Direction::Boundary,
            },
            matrix: self.matrix.transpose(),
        }
    }
}

/// Result of a basis enumeration: one slice per CE-degree in the window.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub slices: Vec<BasisSlice>,
    /// Set when a reduced basis was requested for an open manifold; the
    /// reduction is the identity there and the full basis is returned.
    pub reduction_ignored: bool,
}

#[derive(Clone, Debug)]
pub struct CeComplex {
    pres: CohomologyPresentation,
    gens: GeneratorSet,
    /// `brackets[a][b]` for V-generators `a <= b`: `(w, coeff)` terms.
    brackets: Vec<Vec<Vec<(usize, Rational)>>>,
    fault: Option<SignFault>,
}

impl CeComplex {
    pub fn new(pres: &CohomologyPresentation) -> Result<Self, ComplexError> {
        let report = pres.validate();
        if !report.passed() {
            return Err(ComplexError::InvalidPresentation(report));
        }
        let gens = GeneratorSet::build(pres);
        let d = pres.dim();
        let nv = gens.num_v();
        let mut brackets = vec![vec![Vec::new(); nv]; nv];
        for a in 0..nv {
            for b in a..nv {
                let (sa, sb) = (gens.get(a).source, gens.get(b).source);
                let Some(product) = pres.product(sa, sb) else { continue };
                let s = sign((d - 1) * sb.deg % 2 == 1);
                brackets[a][b] = product
                    .iter()
                    .map(|(class, coeff)| (gens.w_of(*class).expect("product class has a W-generator"), &s * coeff))
                    .collect();
            }
        }
        Ok(Self { pres: pres.clone(), gens, brackets, fault: None })
    }

    pub fn with_fault(mut self, fault: SignFault) -> Self {
        self.fault = Some(fault);
        self
    }

    pub fn presentation(&self) -> &CohomologyPresentation {
        &self.pres
    }

    pub fn generators(&self) -> &GeneratorSet {
        &self.gens
    }

    /// `[va, vb]` as W-generator terms, with `(-1)^{(d-1)|b|}` applied to the
    /// canonically ordered pair and graded symmetry for the other order.
    pub fn bracket(&self, va: usize, vb: usize) -> Vec<(usize, Rational)> {
        assert!(va < self.gens.num_v() && vb < self.gens.num_v(), "bracket takes V-generators");
        if va <= vb {
            self.brackets[va][vb].clone()
        } else {
            let s = sign(self.gens.get(va).is_odd() && self.gens.get(vb).is_odd());
            self.brackets[vb][va].iter().map(|(w, c)| (*w, &s * c)).collect()
        }
    }

    /// Enumerates the slices `Ω^{i,weight}_n` for every `i` in the window
    /// (default: all degrees up to the largest nonempty one).
    pub fn enumerate(
        &self,
        n: usize,
        weight: usize,
        window: Option<(usize, usize)>,
        filter: BasisFilter,
    ) -> Result<Enumerated, ComplexError> {
        if weight > n / 2 {
            return Err(ComplexError::InvalidWeight { n, weight, max: n / 2 });
        }
        let reduction_ignored = filter == BasisFilter::Reduced && !self.pres.is_closed();
        if filter == BasisFilter::Subcomplex && !self.pres.is_closed() {
            return Err(ComplexError::OpenManifold);
        }
        let (lo, hi) = window.unwrap_or((0, usize::MAX));
        let enum_filter = if filter == BasisFilter::Subcomplex { BasisFilter::Full } else { filter };
        let enumerator = Enumerator::new(&self.gens, enum_filter, lo, hi);
        let mut by_degree: std::collections::BTreeMap<usize, Vec<Monomial>> = Default::default();
        enumerator.run(n - 2 * weight, weight, &mut |m| {
            if (lo..=hi).contains(&m.degree()) && filter.admits(&self.gens, &m) {
                by_degree.entry(m.degree()).or_default().push(m);
            }
        });
        let top = match window {
            Some((_, hi)) => hi,
            None => by_degree.keys().next_back().copied().unwrap_or(0),
        };
        let slices = (lo..=top)
            .map(|deg| {
                let key = SliceKey::new(n, deg, weight);
                match by_degree.remove(&deg) {
                    Some(ms) => BasisSlice::new(key, ms),
                    None => BasisSlice::empty(key),
                }
            })
            .collect();
        Ok(Enumerated { slices, reduction_ignored })
    }

    /// Single slice `Ω^{degree,weight}_n`.
    pub fn slice(&self, key: SliceKey, filter: BasisFilter) -> Result<BasisSlice, ComplexError> {
        let mut e = self.enumerate(key.n, key.weight, Some((key.degree, key.degree)), filter)?;
        Ok(e.slices.pop().unwrap_or_else(|| BasisSlice::empty(key)))
    }

    /// Multiples of `v_d^2` or `w_{2d-1}` in `Ω^{degree,weight}_n`.
    pub fn subcomplex_basis(&self, key: SliceKey) -> Result<BasisSlice, ComplexError> {
        self.slice(key, BasisFilter::Subcomplex)
    }

    /// `∂m`: sum over canonical V-pairs `{g, h}` of
    /// (Koszul sign moving the pair to the front) × multiplicity × `[g, h]` × rest.
    pub fn boundary(&self, m: &Monomial) -> Chain {
        let exps = m.exponents();
        let nv = self.gens.num_v();
        let odd: Vec<bool> = self.gens.iter().map(Generator::is_odd).collect();
        let mut odd_before = vec![0usize; exps.len() + 1];
        for i in 0..exps.len() {
            odd_before[i + 1] = odd_before[i] + if odd[i] { exps[i] as usize } else { 0 };
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for g in 0..nv {
            let eg = exps[g] as i64;
            if eg == 0 {
                continue;
            }
            for h in g..nv {
                let eh = exps[h] as i64;
                if eh == 0 || (h == g && eg < 2) || self.brackets[g][h].is_empty() {
                    continue;
                }
                let multiplicity = if g == h { eg * (eg - 1) / 2 } else { eg * eh };
                let mut negative = false;
                if odd[g] {
                    negative ^= odd_before[g] % 2 == 1;
                }
                if odd[h] && h != g {
                    negative ^= (odd_before[h] - usize::from(odd[g])) % 2 == 1;
                }
                if self.fault == Some(SignFault::DropPairKoszulSign) {
                    negative = false;
                }
                let mut rest = exps.to_vec();
                rest[g] -= 1;
                rest[h] -= 1;
                let removed_odd = usize::from(odd[g]) + usize::from(odd[h]);
                for (w, coeff) in &self.brackets[g][h] {
                    let w = *w;
                    if odd[w] && rest[w] >= 1 {
                        continue;
                    }
                    let mut neg = negative;
                    if odd[w] {
                        neg ^= (odd_before[w] - removed_odd) % 2 == 1;
                    }
                    let mut out = rest.clone();
                    out[w] += 1;
                    let term = Monomial::raw_parts(
                        out.into_boxed_slice(),
                        m.degree() - 1,
                        m.weight() + 1,
                        m.v_length() - 2,
                    );
                    let value = sign(neg) * int(multiplicity) * coeff;
                    *acc.entry(term).or_insert_with(Rational::zero) += value;
                }
            }
        }
        let mut chain: Chain = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        chain.sort_by(|a, b| b.0.cmp(&a.0));
        chain
    }

    /// `∂` applied to a chain.
    pub fn boundary_chain(&self, chain: &[(Monomial, Rational)]) -> Chain {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in chain {
            for (t, v) in self.boundary(m) {
                *acc.entry(t).or_insert_with(Rational::zero) += c * v;
            }
        }
        let mut out: Chain = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// `∂` block between two enumerated slices. Every boundary term must lie in `target`.
    pub fn boundary_block(&self, source: &BasisSlice, target: &BasisSlice) -> Result<DifferentialBlock, ComplexError> {
        let mut triplets = Vec::new();
        for (col, m) in source.monomials().iter().enumerate() {
            for (t, v) in self.boundary(m) {
                let row = target.position(&t).ok_or(ComplexError::DimensionMismatch {
                    source_key: source.key(),
                    target: target.key(),
                })?;
                triplets.push((row, col, v));
            }
        }
        Ok(DifferentialBlock {
            source: source.key(),
            target: target.key(),
            direction: Direction::Boundary,
            matrix: SparseMatrix::from_triplets(target.len(), source.len(), triplets),
        })
    }

    /// `∂: Ω^{i,ω}_n → Ω^{i-1,ω+1}_n` with both bases enumerated under `filter`
    /// (`Full` or `Reduced`).
    pub fn boundary_block_at(&self, key: SliceKey, filter: BasisFilter) -> Result<DifferentialBlock, ComplexError> {
        let source = self.slice(key, filter)?;
        let target_key = SliceKey::new(key.n, key.degree.wrapping_sub(1), key.weight + 1);
        let target = if key.degree == 0 || target_key.weight > key.n / 2 {
            BasisSlice::empty(target_key)
        } else {
            self.slice(target_key, filter)?
        };
        self.boundary_block(&source, &target)
    }

    /// The contracting homotopy `h(v_d^2 A + B w_{2d-1}) = B v_d^2` on the subcomplex.
    pub fn homotopy(&self, chain: &[(Monomial, Rational)]) -> Result<Chain, ComplexError> {
        let (Some(v_top), Some(w_top)) = (self.gens.v_top(), self.gens.w_top()) else {
            return Err(ComplexError::OpenManifold);
        };
        let mut out = Vec::new();
        for (m, c) in chain {
            if !BasisFilter::Subcomplex.admits(&self.gens, m) {
                return Err(ComplexError::NotInSubcomplex(m.render(&self.gens)));
            }
            if m.exponent(w_top) == 0 {
                continue;
            }
            // w_{2d-1} is the last generator, so m = B·w_{2d-1} without reordering;
            // v_d is even, so B·v_d^2 needs no sign either.
            let mut exps = m.exponents().to_vec();
            exps[w_top] -= 1;
            exps[v_top] += 2;
            let image = Monomial::from_exponents(&self.gens, exps).expect("even factor added");
            out.push((image, c.clone()));
        }
        out.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(out)
    }
}

/// Sign of the permutation sorting `seq` into canonical order, counting only
/// swaps of two odd generators; `0` if an odd generator repeats.
pub fn koszul_sign(gens: &GeneratorSet, seq: &[usize]) -> i8 {
    for (i, a) in seq.iter().enumerate() {
        if gens.get(*a).is_odd() && seq[i + 1..].contains(a) {
            return 0;
        }
    }
    let mut negative = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] && gens.get(seq[i]).is_odd() && gens.get(seq[j]).is_odd() {
                negative = !negative;
            }
        }
    }
    if negative {
        -1
    } else {
        1
    }
}
