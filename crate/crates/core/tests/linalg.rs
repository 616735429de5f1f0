use confh_core::linalg::{rank_exact, rank_hybrid, rank_modular, HybridPolicy};
use confh_core::{Rational, SparseMatrix};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Plain Gauss–Jordan over ℚ on a dense copy.
fn dense_rank(m: &SparseMatrix) -> usize {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && !a[r][c].is_zero() {
                let f = &a[r][c] / &a[rank][c];
                for j in c..cols {
                    let d = &f * &a[rank][j];
                    a[r][j] -= d;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Sparse-ish random matrix, sometimes rank deficient by construction.
fn random_matrix(rng: &mut ChaCha8Rng) -> SparseMatrix {
    let rows = rng.gen_range(0..14);
    let cols = rng.gen_range(0..14);
    let density = rng.gen_range(0.1..0.8);
    let mut triplets = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if rng.gen_bool(density) {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = if rng.gen_bool(0.2) { rng.gen_range(1..=5) } else { 1 };
                triplets.push((r, c, Rational::new(num.into(), den.into())));
            }
        }
    }
    let mut m = SparseMatrix::from_triplets(rows, cols, triplets);
    if rows >= 2 && rng.gen_bool(0.3) {
        // Duplicate a scaled row to force a dependency.
        let dense = m.to_dense();
        let scale = Rational::from_integer(rng.gen_range(-3i64..=3).into());
        let mut t = Vec::new();
        for (r, row) in dense.iter().enumerate() {
            let src = if r == rows - 1 { &dense[0] } else { row };
            for (c, v) in src.iter().enumerate() {
                let v = if r == rows - 1 { v * &scale } else { v.clone() };
                t.push((r, c, v));
            }
        }
        m = SparseMatrix::from_triplets(rows, cols, t);
    }
    m
}

#[test]
fn exact_matches_dense_oracle_on_seeded_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let m = random_matrix(&mut rng);
        assert_eq!(rank_exact(&m).rank, dense_rank(&m), "{}", m.dump());
    }
}

#[test]
fn hybrid_never_below_modular() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for seed in 0..100 {
        let m = random_matrix(&mut rng);
        let policy = HybridPolicy::from_seed(seed);
        let h = rank_hybrid(&m, &policy);
        assert_eq!(h.rank, rank_exact(&m).rank);
        for p in policy.primes {
            if let Ok(r) = rank_modular(&m, p) {
                assert!(r.rank <= h.rank);
            }
        }
    }
}

fn arb_matrix() -> impl Strategy<Value = SparseMatrix> {
    (0usize..10, 0usize..10).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |vals| {
            let t = vals.into_iter().enumerate().map(|(i, v)| (i / c.max(1), i % c.max(1), Rational::from_integer(v.into())));
            SparseMatrix::from_triplets(r, c, t.collect::<Vec<_>>())
        })
    })
}

proptest! {
    #[test]
    fn rank_equals_dense(m in arb_matrix()) {
        prop_assert_eq!(rank_exact(&m).rank, dense_rank(&m));
    }

    #[test]
    fn rank_of_transpose(m in arb_matrix()) {
        prop_assert_eq!(rank_exact(&m).rank, rank_exact(&m.transpose()).rank);
    }

    #[test]
    fn modular_at_most_exact(m in arb_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7, 1_073_741_827])) {
        if let Ok(r) = rank_modular(&m, p) {
            prop_assert!(r.rank <= rank_exact(&m).rank);
        }
    }

    #[test]
    fn rank_bounded_by_shape(m in arb_matrix()) {
        prop_assert!(rank_exact(&m).rank <= m.rows().min(m.cols()));
    }
}
