use crate::presentation::{ClassId, CohomologyPresentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorKind {
    /// `s^d x`, length 1, weight 0.
    V,
    /// `s^{2d-1} x`, length 2, weight 1.
    W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub kind: GeneratorKind,
    /// Degree in the Chevalley–Eilenberg complex.
    pub degree: usize,
    pub source: ClassId,
}

impl Generator {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }

    /// Contribution to the number of points `n`.
    pub fn length(&self) -> usize {
        match self.kind {
            GeneratorKind::V => 1,
            GeneratorKind::W => 2,
        }
    }

    /// `v[d-j,idx]` / `w[2d-1-j,idx]`.
    pub fn label(&self) -> String {
        let prefix = match self.kind {
            GeneratorKind::V => 'v',
            GeneratorKind::W => 'w',
        };
        format!("{prefix}[{},{}]", self.degree, self.source.idx)
    }
}

/// Generators of `V = H_c^{-*}(M)[d]` and `W = H_c^{-*}(M)[2d-1]` in canonical
/// order: all V-generators by (degree, source index), then all W-generators
/// likewise. Monomial exponent vectors are indexed by this order.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    dim: usize,
    gens: Vec<Generator>,
    num_v: usize,
    v_bottom: usize,
    v_top: Option<usize>,
    w_top: Option<usize>,
    v_codim_one: Vec<usize>,
    w_codim_one: Vec<usize>,
}

impl GeneratorSet {
    pub fn build(pres: &CohomologyPresentation) -> Self {
        let d = pres.dim();
        let mut v: Vec<Generator> = pres
            .classes()
            .map(|c| Generator { kind: GeneratorKind::V, degree: d - c.deg, source: c })
            .collect();
        let mut w: Vec<Generator> = pres
            .classes()
            .map(|c| Generator { kind: GeneratorKind::W, degree: 2 * d - 1 - c.deg, source: c })
            .collect();
        v.sort_by_key(|g| (g.degree, g.source.idx));
        w.sort_by_key(|g| (g.degree, g.source.idx));
        let num_v = v.len();
        let gens: Vec<_> = v.into_iter().chain(w).collect();

        let find = |kind: GeneratorKind, source: ClassId| {
            gens.iter().position(|g| g.kind == kind && g.source == source)
        };
        let v_bottom = find(GeneratorKind::V, ClassId::new(d, 0)).expect("top class exists");
        let v_top = if pres.is_closed() { find(GeneratorKind::V, ClassId::new(0, 0)) } else { None };
        let w_top = if pres.is_closed() { find(GeneratorKind::W, ClassId::new(0, 0)) } else { None };
        let k = pres.hc_dim(1);
        let v_codim_one = (0..k).filter_map(|i| find(GeneratorKind::V, ClassId::new(1, i))).collect();
        let w_codim_one = (0..k).filter_map(|i| find(GeneratorKind::W, ClassId::new(1, i))).collect();
        Self { dim: d, gens, num_v, v_bottom, v_top, w_top, v_codim_one, w_codim_one }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, index: usize) -> &Generator {
        &self.gens[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn num_v(&self) -> usize {
        self.num_v
    }

    pub fn v_range(&self) -> std::ops::Range<usize> {
        0..self.num_v
    }

    pub fn w_range(&self) -> std::ops::Range<usize> {
        self.num_v..self.gens.len()
    }

    /// `v_0`, the suspension of the top class.
    pub fn v_bottom(&self) -> usize {
        self.v_bottom
    }

    /// `v_d`, the suspension of the unit (closed manifolds only).
    pub fn v_top(&self) -> Option<usize> {
        self.v_top
    }

    /// `w_{2d-1}`, the suspension of the unit (closed manifolds only).
    pub fn w_top(&self) -> Option<usize> {
        self.w_top
    }

    /// `V^{d-1}`: V-generators with sources in `H_c^1`.
    pub fn v_codim_one(&self) -> &[usize] {
        &self.v_codim_one
    }

    /// `W^{2d-2}`, the set `J`.
    pub fn w_codim_one(&self) -> &[usize] {
        &self.w_codim_one
    }

    pub fn v_of(&self, class: ClassId) -> Option<usize> {
        self.gens[..self.num_v].iter().position(|g| g.source == class)
    }

    pub fn w_of(&self, class: ClassId) -> Option<usize> {
        self.gens[self.num_v..].iter().position(|g| g.source == class).map(|i| i + self.num_v)
    }

    /// Number of generators of the given kind in each CE-degree.
    pub fn degree_counts(&self, kind: GeneratorKind) -> std::collections::BTreeMap<usize, usize> {
        let mut out = std::collections::BTreeMap::new();
        for g in self.gens.iter().filter(|g| g.kind == kind) {
            *out.entry(g.degree).or_insert(0) += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::preset;
    use std::collections::BTreeMap;

    fn counts(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn sphere_generators() {
        let gens = GeneratorSet::build(&preset("s2", &[]).unwrap());
        assert_eq!(gens.degree_counts(GeneratorKind::V), counts(&[(0, 1), (2, 1)]));
        assert_eq!(gens.degree_counts(GeneratorKind::W), counts(&[(1, 1), (3, 1)]));
        assert_eq!(gens.get(gens.v_top().unwrap()).degree, 2);
        assert_eq!(gens.get(gens.w_top().unwrap()).degree, 3);
        assert_eq!(gens.get(gens.v_bottom()).degree, 0);
    }

    #[test]
    fn torus_generators() {
        let gens = GeneratorSet::build(&preset("t2", &[]).unwrap());
        assert_eq!(gens.degree_counts(GeneratorKind::V), counts(&[(0, 1), (1, 2), (2, 1)]));
        assert_eq!(gens.degree_counts(GeneratorKind::W), counts(&[(1, 1), (2, 2), (3, 1)]));
        assert_eq!(gens.v_codim_one().len(), 2);
        assert_eq!(gens.w_codim_one().len(), 2);
    }

    #[test]
    fn plane_generators() {
        let gens = GeneratorSet::build(&preset("r2", &[]).unwrap());
        assert_eq!(gens.degree_counts(GeneratorKind::V), counts(&[(0, 1)]));
        assert_eq!(gens.degree_counts(GeneratorKind::W), counts(&[(1, 1)]));
        assert!(gens.v_top().is_none());
        assert!(gens.w_top().is_none());
    }

    #[test]
    fn counts_follow_shifts() {
        for (name, params) in [("cp", vec![3]), ("sigma", vec![2]), ("sigma_open", vec![2]), ("sphere", vec![6])] {
            let pres = preset(name, &params).unwrap();
            let gens = GeneratorSet::build(&pres);
            let d = pres.dim();
            for (deg, count) in gens.degree_counts(GeneratorKind::V) {
                assert_eq!(count, pres.hc_dim(d - deg));
            }
            for (deg, count) in gens.degree_counts(GeneratorKind::W) {
                assert_eq!(count, pres.hc_dim(2 * d - 1 - deg));
            }
            assert_eq!(gens.v_codim_one().len(), pres.k_invariant());
        }
    }
}
