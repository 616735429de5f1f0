use std::collections::HashMap;
use std::fmt;

use super::generators::{GeneratorKind, GeneratorSet};
use super::monomial::Monomial;

/// Bidegree slice `Ω^{degree, weight}_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SliceKey {
    pub n: usize,
    pub degree: usize,
    pub weight: usize,
}

impl SliceKey {
    pub fn new(n: usize, degree: usize, weight: usize) -> Self {
        Self { n, degree, weight }
    }
}

impl fmt::Display for SliceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, i={}, ω={})", self.n, self.degree, self.weight)
    }
}

/// Which monomials of a slice to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisFilter {
    Full,
    /// Quotient basis of the reduced complex: `v_d`-exponent ≤ 1, no `w_{2d-1}`.
    Reduced,
    /// The acyclic piece spanned by multiples of `v_d^2` or `w_{2d-1}`.
    Subcomplex,
}

impl BasisFilter {
    /// Whether `m` belongs to this filter's basis.
    pub fn admits(self, gens: &GeneratorSet, m: &Monomial) -> bool {
        let in_sub = gens.v_top().is_some_and(|v| m.exponent(v) >= 2)
            || gens.w_top().is_some_and(|w| m.exponent(w) >= 1);
        match self {
            BasisFilter::Full => true,
            BasisFilter::Reduced => !in_sub,
            BasisFilter::Subcomplex => in_sub,
        }
    }
}

/// Ordered monomial basis of one slice, in descending lexicographic order.
#[derive(Clone, Debug)]
pub struct BasisSlice {
    key: SliceKey,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl BasisSlice {
    pub fn new(key: SliceKey, mut monomials: Vec<Monomial>) -> Self {
        monomials.sort_by(|a, b| b.cmp(a));
        monomials.dedup();
        let index = monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Self { key, monomials, index }
    }

    pub fn empty(key: SliceKey) -> Self {
        Self { key, monomials: Vec::new(), index: HashMap::new() }
    }

    pub fn key(&self) -> SliceKey {
        self.key
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Keeps only monomials admitted by `filter`.
    pub fn filtered(&self, gens: &GeneratorSet, filter: BasisFilter) -> Self {
        let kept = self.monomials.iter().filter(|m| filter.admits(gens, m)).cloned().collect();
        Self::new(self.key, kept)
    }

    /// `monomial<TAB>degree<TAB>weight` lines.
    pub fn dump(&self, gens: &GeneratorSet) -> String {
        let mut out = String::new();
        for m in &self.monomials {
            out.push_str(&format!("{}\t{}\t{}\n", m.render(gens), m.degree(), m.weight()));
        }
        out
    }
}

/// Depth-first enumeration of `Sym^{v_len}(V) ⊗ Sym^{w_len}(W)` restricted to
/// a degree window, with per-generator exponent caps.
pub(crate) struct Enumerator<'a> {
    gens: &'a GeneratorSet,
    caps: Vec<u16>,
    lo: usize,
    hi: usize,
    // per position: (min, max) degree among remaining V / W generators
    v_bounds: Vec<Option<(usize, usize)>>,
    w_bounds: Vec<Option<(usize, usize)>>,
}

impl<'a> Enumerator<'a> {
    pub(crate) fn new(gens: &'a GeneratorSet, filter: BasisFilter, lo: usize, hi: usize) -> Self {
        let caps = gens
            .iter()
            .enumerate()
            .map(|(i, g)| {
                if filter == BasisFilter::Reduced && Some(i) == gens.w_top() {
                    0
                } else if g.is_odd() || (filter == BasisFilter::Reduced && Some(i) == gens.v_top()) {
                    1
                } else {
                    u16::MAX
                }
            })
            .collect::<Vec<_>>();
        let suffix = |kind: GeneratorKind| {
            let mut out = vec![None; gens.len() + 1];
            for i in (0..gens.len()).rev() {
                let g = gens.get(i);
                out[i] = out[i + 1];
                if g.kind == kind && caps[i] > 0 {
                    out[i] = Some(match out[i + 1] {
                        Some((lo, hi)) => (usize::min(lo, g.degree), usize::max(hi, g.degree)),
                        None => (g.degree, g.degree),
                    });
                }
            }
            out
        };
        let v_bounds = suffix(GeneratorKind::V);
        let w_bounds = suffix(GeneratorKind::W);
        Self { gens, caps, lo, hi, v_bounds, w_bounds }
    }

    /// Visits monomials in descending lexicographic order.
    pub(crate) fn run(&self, v_len: usize, w_len: usize, visit: &mut dyn FnMut(Monomial)) {
        let mut exps = vec![0u16; self.gens.len()];
        self.descend(0, v_len, w_len, 0, &mut exps, visit);
    }

    fn feasible(&self, pos: usize, v_left: usize, w_left: usize, degree: usize) -> bool {
        let (mut min, mut max) = (degree, degree);
        for (left, bounds) in [(v_left, &self.v_bounds), (w_left, &self.w_bounds)] {
            if left == 0 {
                continue;
            }
            match bounds[pos] {
                Some((lo, hi)) => {
                    min += left * lo;
                    max += left * hi;
                }
                None => return false,
            }
        }
        max >= self.lo && min <= self.hi
    }

    fn descend(
        &self,
        pos: usize,
        v_left: usize,
        w_left: usize,
        degree: usize,
        exps: &mut Vec<u16>,
        visit: &mut dyn FnMut(Monomial),
    ) {
        if !self.feasible(pos, v_left, w_left, degree) {
            return;
        }
        if v_left == 0 && w_left == 0 {
            let weight = exps[self.gens.num_v()..].iter().map(|&e| e as usize).sum();
            let v_length = exps[..self.gens.num_v()].iter().map(|&e| e as usize).sum();
            visit(Monomial::raw_parts(exps.clone().into_boxed_slice(), degree, weight, v_length));
            return;
        }
        if pos == self.gens.len() {
            return;
        }
        let g = self.gens.get(pos);
        let left = match g.kind {
            GeneratorKind::V => v_left,
            GeneratorKind::W => w_left,
        };
        let max_e = usize::min(left, self.caps[pos] as usize);
        for e in (0..=max_e).rev() {
            exps[pos] = e as u16;
            let (v, w) = match g.kind {
                GeneratorKind::V => (v_left - e, w_left),
                GeneratorKind::W => (v_left, w_left - e),
            };
            self.descend(pos + 1, v, w, degree + e * g.degree, exps, visit);
        }
        exps[pos] = 0;
    }
}
