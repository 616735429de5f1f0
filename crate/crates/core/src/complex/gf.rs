//! Slice dimensions from the generating function
//! `Π_{even g} (1 - t^{|g|} u_g)^{-1} · Π_{odd g} (1 + t^{|g|} u_g)`,
//! with `u_g` tracking V-length or W-length. Independent of monomial enumeration.

use std::collections::BTreeMap;

use super::basis::BasisFilter;
use super::generators::{GeneratorKind, GeneratorSet};

/// `dim Ω^{i,ω}_n` keyed by `(i, ω)`, zero entries omitted.
pub fn slice_dimensions(gens: &GeneratorSet, n: usize, filter: BasisFilter) -> BTreeMap<(usize, usize), u128> {
    if filter == BasisFilter::Subcomplex {
        let full = slice_dimensions(gens, n, BasisFilter::Full);
        let reduced = slice_dimensions(gens, n, BasisFilter::Reduced);
        return full
            .into_iter()
            .filter_map(|(key, count)| {
                let rest = count - reduced.get(&key).copied().unwrap_or(0);
                (rest > 0).then_some((key, rest))
            })
            .collect();
    }
    let max_gen = gens.iter().map(|g| g.degree).max().unwrap_or(0);
    let wmax = n / 2;
    let dmax = n * max_gen + 1;
    let idx = |v: usize, w: usize, deg: usize| (v * (wmax + 1) + w) * (dmax + 1) + deg;
    let mut table = vec![0u128; (n + 1) * (wmax + 1) * (dmax + 1)];
    table[idx(0, 0, 0)] = 1;
    for (i, g) in gens.iter().enumerate() {
        let cap = if filter == BasisFilter::Reduced && Some(i) == gens.w_top() {
            0
        } else if filter == BasisFilter::Reduced && Some(i) == gens.v_top() || g.is_odd() {
            1
        } else {
            usize::MAX
        };
        let mut next = vec![0u128; table.len()];
        for v in 0..=n {
            for w in 0..=wmax {
                for deg in 0..=dmax {
                    let c = table[idx(v, w, deg)];
                    if c == 0 {
                        continue;
                    }
                    let mut e = 0;
                    loop {
                        let (nv, nw) = match g.kind {
                            GeneratorKind::V => (v + e, w),
                            GeneratorKind::W => (v, w + e),
                        };
                        let nd = deg + e * g.degree;
                        if e > cap || nv > n || nw > wmax || nd > dmax {
                            break;
                        }
                        next[idx(nv, nw, nd)] += c;
                        e += 1;
                    }
                }
            }
        }
        table = next;
    }
    let mut out = BTreeMap::new();
    for w in 0..=wmax {
        let v = n - 2 * w;
        for deg in 0..=dmax {
            let c = table[idx(v, w, deg)];
            if c > 0 {
                out.insert((deg, w), c);
            }
        }
    }
    out
}

/// Total dimension per CE-degree, summed over weights.
pub fn degree_dimensions(gens: &GeneratorSet, n: usize, filter: BasisFilter) -> BTreeMap<usize, u128> {
    let mut out = BTreeMap::new();
    for ((deg, _), c) in slice_dimensions(gens, n, filter) {
        *out.entry(deg).or_insert(0) += c;
    }
    out
}

/// Largest CE-degree with a nonzero slice, if any.
pub fn max_degree(gens: &GeneratorSet, n: usize, filter: BasisFilter) -> Option<usize> {
    degree_dimensions(gens, n, filter).keys().next_back().copied()
}

/// `Σ_i (-1)^i dim Ω^i_n`.
pub fn chain_euler_characteristic(gens: &GeneratorSet, n: usize, filter: BasisFilter) -> i128 {
    degree_dimensions(gens, n, filter)
        .into_iter()
        .map(|(deg, c)| if deg % 2 == 0 { c as i128 } else { -(c as i128) })
        .sum()
}
