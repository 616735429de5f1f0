//! Sparse Gaussian elimination over ℤ (fraction-free) and `ℤ/p`.
//!
//! Both paths share one elimination loop. Pivots follow a Markowitz rule
//! restricted to the currently shortest rows: among rows of minimal length,
//! minimize `(row_len - 1)(col_count - 1)`, ties broken by lowest `(row, col)`.
//! The matrix is first split into connected components of its row/column
//! incidence graph; ranks are summed over components.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use super::primes::{draw_prime, pow_mod};
use super::sparse::SparseMatrix;

/// Rows of minimal length inspected per pivot search.
const CANDIDATE_ROWS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankMethod {
    Exact,
    Modular { prime: u64 },
    Hybrid { primes: [u64; 2], escalated: bool },
}

impl RankMethod {
    pub fn tag(&self) -> &'static str {
        match self {
            RankMethod::Exact => "exact",
            RankMethod::Modular { .. } => "modular",
            RankMethod::Hybrid { .. } => "hybrid",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankResult {
    pub rank: usize,
    pub method: RankMethod,
    pub certified: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("prime {prime} divides an entry denominator")]
    DenominatorDivisible { prime: u64 },
}

type Row<E> = Vec<(u32, E)>;

trait PivotRing: Sync {
    type Elem: Clone + Send + Sync;
    /// Scales the pivot row; `col` is the pivot column.
    fn normalize(&self, row: &mut Row<Self::Elem>, col: u32);
    /// Clears `col` from `target` using the normalized `pivot`.
    fn eliminate(&self, target: &Row<Self::Elem>, pivot: &Row<Self::Elem>, col: u32) -> Row<Self::Elem>;
}

fn entry<E>(row: &Row<E>, col: u32) -> Option<&E> {
    row.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &row[i].1)
}

struct ModP {
    p: u64,
}

impl PivotRing for ModP {
    type Elem = u64;

    fn normalize(&self, row: &mut Row<u64>, col: u32) {
        let inv = pow_mod(*entry(row, col).expect("pivot present"), self.p - 2, self.p);
        for (_, v) in row.iter_mut() {
            *v = *v * inv % self.p;
        }
    }

    fn eliminate(&self, target: &Row<u64>, pivot: &Row<u64>, col: u32) -> Row<u64> {
        let p = self.p;
        let factor = p - *entry(target, col).expect("target has column");
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot.len() {
            let ct = target.get(i).map_or(u32::MAX, |e| e.0);
            let cp = pivot.get(j).map_or(u32::MAX, |e| e.0);
            if ct < cp {
                out.push(target[i]);
                i += 1;
            } else if cp < ct {
                out.push((cp, pivot[j].1 * factor % p));
                j += 1;
            } else {
                let v = (target[i].1 + pivot[j].1 * factor) % p;
                if v != 0 {
                    out.push((ct, v));
                }
                i += 1;
                j += 1;
            }
        }
        out
    }
}

struct Integers;

fn content(row: &Row<BigInt>) -> BigInt {
    row.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v))
}

fn divide_content(row: &mut Row<BigInt>) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

impl PivotRing for Integers {
    type Elem = BigInt;

    fn normalize(&self, row: &mut Row<BigInt>, col: u32) {
        divide_content(row);
        if entry(row, col).expect("pivot present").is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }

    fn eliminate(&self, target: &Row<BigInt>, pivot: &Row<BigInt>, col: u32) -> Row<BigInt> {
        let a = entry(pivot, col).expect("pivot present");
        let b = entry(target, col).expect("target has column");
        let g = a.gcd(b);
        let (ta, pb) = (a / &g, b / &g);
        let mut out = Vec::with_capacity(target.len() + pivot.len());
        let (mut i, mut j) = (0, 0);
        while i < target.len() || j < pivot.len() {
            let ct = target.get(i).map_or(u32::MAX, |e| e.0);
            let cp = pivot.get(j).map_or(u32::MAX, |e| e.0);
            if ct < cp {
                out.push((ct, &target[i].1 * &ta));
                i += 1;
            } else if cp < ct {
                out.push((cp, -(&pivot[j].1 * &pb)));
                j += 1;
            } else {
                let v = &target[i].1 * &ta - &pivot[j].1 * &pb;
                if !v.is_zero() {
                    out.push((ct, v));
                }
                i += 1;
                j += 1;
            }
        }
        divide_content(&mut out);
        out
    }
}

fn eliminate_component<R: PivotRing>(ring: &R, mut rows: Vec<Row<R::Elem>>, ncols: usize) -> usize {
    let mut col_count = vec![0u32; ncols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); ncols];
    let mut active: BTreeSet<(u32, u32)> = BTreeSet::new();
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            col_count[*c as usize] += 1;
            col_rows[*c as usize].push(r as u32);
        }
        if !row.is_empty() {
            active.insert((row.len() as u32, r as u32));
        }
    }
    let mut rank = 0;
    while let Some(&(min_len, _)) = active.first() {
        let mut best: Option<(u64, u32, u32)> = None;
        for &(len, r) in active.iter().take_while(|(len, _)| *len == min_len).take(CANDIDATE_ROWS) {
            for (c, _) in &rows[r as usize] {
                let cand = ((len as u64 - 1) * (col_count[*c as usize] as u64 - 1), r, *c);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let (_, p, col) = best.expect("active row has entries");
        let mut pivot = std::mem::take(&mut rows[p as usize]);
        active.remove(&(pivot.len() as u32, p));
        for (c, _) in &pivot {
            col_count[*c as usize] -= 1;
        }
        ring.normalize(&mut pivot, col);
        rank += 1;

        let mut targets = std::mem::take(&mut col_rows[col as usize]);
        targets.sort_unstable();
        targets.dedup();
        for t in targets {
            let tu = t as usize;
            if t == p || entry(&rows[tu], col).is_none() {
                continue;
            }
            let old = std::mem::take(&mut rows[tu]);
            active.remove(&(old.len() as u32, t));
            let new = ring.eliminate(&old, &pivot, col);
            for (c, _) in &old {
                col_count[*c as usize] -= 1;
            }
            let mut k = 0;
            for (c, _) in &new {
                col_count[*c as usize] += 1;
                while k < old.len() && old[k].0 < *c {
                    k += 1;
                }
                if k >= old.len() || old[k].0 != *c {
                    col_rows[*c as usize].push(t);
                }
            }
            if !new.is_empty() {
                active.insert((new.len() as u32, t));
            }
            rows[tu] = new;
        }
    }
    rank
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits rows into connected components and sums component ranks.
fn rank_by_components<R: PivotRing>(ring: &R, rows: Vec<Row<R::Elem>>, ncols: usize) -> usize {
    let nrows = rows.len();
    let mut parent: Vec<usize> = (0..nrows).collect();
    let mut first_row = vec![usize::MAX; ncols];
    for (r, row) in rows.iter().enumerate() {
        for (c, _) in row {
            let c = *c as usize;
            if first_row[c] == usize::MAX {
                first_row[c] = r;
            } else {
                let (a, b) = (find(&mut parent, first_row[c]), find(&mut parent, r));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut group_of = vec![usize::MAX; nrows];
    for r in 0..nrows {
        if rows[r].is_empty() {
            continue;
        }
        let root = find(&mut parent, r);
        if group_of[root] == usize::MAX {
            group_of[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[group_of[root]].push(r);
    }
    let mut rows: Vec<Option<Row<R::Elem>>> = rows.into_iter().map(Some).collect();
    let mut local_col = vec![u32::MAX; ncols];
    let jobs: Vec<(Vec<Row<R::Elem>>, usize)> = groups
        .into_iter()
        .map(|members| {
            let mut next = 0u32;
            let comp_rows: Vec<Row<R::Elem>> = members
                .into_iter()
                .map(|r| {
                    let row = rows[r].take().expect("row in one component");
                    row.into_iter()
                        .map(|(c, v)| {
                            let slot = &mut local_col[c as usize];
                            if *slot == u32::MAX {
                                *slot = next;
                                next += 1;
                            }
                            (*slot, v)
                        })
                        .collect()
                })
                .collect();
            (comp_rows, next as usize)
        })
        .collect();
    jobs.into_par_iter()
        .map(|(comp_rows, ncols)| {
            if comp_rows.len() == 1 {
                1
            } else {
                let mut comp_rows = comp_rows;
                for row in &mut comp_rows {
                    row.sort_by_key(|(c, _)| *c);
                }
                eliminate_component(ring, comp_rows, ncols)
            }
        })
        .sum()
}

/// Exact rank over ℚ via fraction-free integer elimination.
pub fn rank_exact(m: &SparseMatrix) -> RankResult {
    let rows = m
        .row_lists()
        .into_iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
            row.into_iter().map(|(c, v)| (c as u32, v.numer() * (&lcm / v.denom()))).collect()
        })
        .collect();
    RankResult { rank: rank_by_components(&Integers, rows, m.cols()), method: RankMethod::Exact, certified: true }
}

fn reduce_mod(value: &BigInt, p: u64) -> u64 {
    let r = value.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits")
}

/// Rank of the reduction modulo the prime `p`.
pub fn rank_modular(m: &SparseMatrix, p: u64) -> Result<RankResult, LinalgError> {
    let mut rows = vec![Vec::new(); m.rows()];
    for (r, c, v) in m.entries() {
        let den = reduce_mod(v.denom(), p);
        if den == 0 {
            return Err(LinalgError::DenominatorDivisible { prime: p });
        }
        let value = reduce_mod(v.numer(), p) * pow_mod(den, p - 2, p) % p;
        if value != 0 {
            rows[*r].push((*c as u32, value));
        }
    }
    Ok(RankResult {
        rank: rank_by_components(&ModP { p }, rows, m.cols()),
        method: RankMethod::Modular { prime: p },
        certified: false,
    })
}

/// Two random 31-bit primes plus the escalation rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HybridPolicy {
    pub primes: [u64; 2],
    /// Always confirm with exact elimination.
    pub certify: bool,
}

impl HybridPolicy {
    /// Draws two distinct primes from `(2^30, 2^31)` with a seeded stream.
    pub fn from_seed(seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let first = draw_prime(&mut rng);
        let mut second = draw_prime(&mut rng);
        while second == first {
            second = draw_prime(&mut rng);
        }
        Self { primes: [first, second], certify: false }
    }

    pub fn certified(mut self) -> Self {
        self.certify = true;
        self
    }
}

fn modular_with_redraw(m: &SparseMatrix, mut p: u64, avoid: u64) -> RankResult {
    loop {
        match rank_modular(m, p) {
            Ok(result) => return result,
            Err(LinalgError::DenominatorDivisible { .. }) => {
                let mut rng = ChaCha8Rng::seed_from_u64(p);
                loop {
                    p = draw_prime(&mut rng);
                    if p != avoid {
                        break;
                    }
                }
            }
        }
    }
}

/// Two modular ranks; exact elimination when they disagree or when certification is demanded.
pub fn rank_hybrid(m: &SparseMatrix, policy: &HybridPolicy) -> RankResult {
    if m.rows() == 0 || m.cols() == 0 || m.is_zero() {
        return RankResult {
            rank: 0,
            method: RankMethod::Hybrid { primes: policy.primes, escalated: false },
            certified: true,
        };
    }
    let first = modular_with_redraw(m, policy.primes[0], policy.primes[1]);
    let second = modular_with_redraw(m, policy.primes[1], policy.primes[0]);
    let primes = [prime_of(&first), prime_of(&second)];
    if first.rank == second.rank && !policy.certify {
        return RankResult { rank: first.rank, method: RankMethod::Hybrid { primes, escalated: false }, certified: false };
    }
    let exact = rank_exact(m);
    debug_assert!(exact.rank >= first.rank.max(second.rank));
    RankResult { rank: exact.rank, method: RankMethod::Hybrid { primes, escalated: true }, certified: true }
}

fn prime_of(result: &RankResult) -> u64 {
    match result.method {
        RankMethod::Modular { prime } => prime,
        _ => unreachable!("modular result"),
    }
}
