//! Cross-module properties at sizes above the walkers' internal
//! debug-check range (the walkers self-verify against from-scratch
//! composition only for n ≤ 4 in debug builds).

use num_complex::Complex64;
use paulitree::{
    decompose_forest, decompose_naive, decompose_streaming, decompose_structured,
    decompose_with_report, direct_sum, hermitian_augment, linear_combination, product,
    BandSource, DenseSource, Decomposition, FnSource, ForestPlan, MatrixSource, PauliString,
    StructureClass, DEFAULT_PRUNE_TOLERANCE,
};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_dense(n: usize, rng: &mut ChaCha8Rng) -> DenseSource {
    let dim = 1usize << n;
    let data = (0..dim * dim)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    DenseSource::from_vec(n, data).unwrap()
}

/// Deterministic pseudo-random value from the indices alone.
fn hashed_entry(seed: u64, row: u64, col: u64) -> Complex64 {
    let mut h = seed ^ (row.wrapping_mul(0x9e37_79b9_7f4a_7c15)) ^ col.rotate_left(17);
    h ^= h >> 30;
    h = h.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    h ^= h >> 27;
    c(
        ((h & 0xffff) as f64) / 65536.0 - 0.5,
        (((h >> 16) & 0xffff) as f64) / 65536.0 - 0.5,
    )
}

#[test]
fn streaming_matches_the_map_api_at_n6() {
    let src = FnSource::new(6, StructureClass::General, |r, col| {
        hashed_entry(0x01, r, col)
    })
    .unwrap();
    let (map, report) =
        decompose_with_report(&src, StructureClass::General, DEFAULT_PRUNE_TOLERANCE).unwrap();
    let mut streamed = Vec::new();
    let stream_report = decompose_streaming(
        &src,
        StructureClass::General,
        DEFAULT_PRUNE_TOLERANCE,
        |levels, coeff| {
            streamed.push((PauliString::from_level_letters(levels).unwrap(), coeff));
        },
    )
    .unwrap();
    assert_eq!(report, stream_report);
    assert_eq!(streamed.len(), map.term_count());
    for (s, coeff) in streamed {
        assert_eq!(map.coefficient(&s), coeff, "term {s}");
    }
}

#[test]
fn banded_walk_equals_general_walk_exactly() {
    // On an exactly banded matrix the pruned subtrees contribute exactly
    // zero, so the two walks must produce identical maps, not merely close
    // ones.
    for s in [2u64, 3] {
        let src = BandSource::from_fn(6, s, |r, col| hashed_entry(0x02 + s, r, col)).unwrap();
        let banded = decompose_structured(&src, StructureClass::Band(s)).unwrap();
        let general = decompose_structured(&src, StructureClass::General).unwrap();
        assert_eq!(banded, general, "bandwidth {s}");
    }
}

#[test]
fn structured_walks_match_naive_at_n5() {
    let n = 5usize;
    let dim = 1u64 << n;
    let diag = FnSource::new(n, StructureClass::Diagonal, move |r, col| {
        if r == col {
            hashed_entry(0x10, r, col)
        } else {
            c(0.0, 0.0)
        }
    })
    .unwrap();
    let anti = FnSource::new(n, StructureClass::AntiDiagonal, move |r, col| {
        if r + col == dim - 1 {
            hashed_entry(0x11, r, col)
        } else {
            c(0.0, 0.0)
        }
    })
    .unwrap();
    let tri = FnSource::new(n, StructureClass::Tridiagonal, |r, col| {
        if r.abs_diff(col) <= 1 {
            hashed_entry(0x12, r, col)
        } else {
            c(0.0, 0.0)
        }
    })
    .unwrap();

    for (src, class) in [
        (&diag as &dyn MatrixSource, StructureClass::Diagonal),
        (&anti, StructureClass::AntiDiagonal),
        (&tri, StructureClass::Tridiagonal),
    ] {
        let fast = decompose_structured(src, class).unwrap();
        let brute = decompose_naive(src).unwrap();
        for (s, &alpha) in brute.iter() {
            assert!(
                (alpha - fast.coefficient(s)).norm() <= 1e-13,
                "{class}: mismatch at {s}"
            );
        }
        for (s, &alpha) in fast.iter() {
            assert!(
                (alpha - brute.coefficient(s)).norm() <= 1e-13,
                "{class}: spurious term {s}"
            );
        }
    }
}

#[test]
fn forest_is_bitwise_deterministic_across_structures() {
    let n = 6usize;
    let dim = 1u64 << n;
    let cases: Vec<(Box<dyn MatrixSource>, StructureClass)> = vec![
        (
            Box::new(
                FnSource::new(n, StructureClass::General, |r, col| {
                    hashed_entry(0x20, r, col)
                })
                .unwrap(),
            ),
            StructureClass::General,
        ),
        (
            Box::new(
                FnSource::new(n, StructureClass::Diagonal, move |r, col| {
                    if r == col {
                        hashed_entry(0x21, r, col)
                    } else {
                        c(0.0, 0.0)
                    }
                })
                .unwrap(),
            ),
            StructureClass::Diagonal,
        ),
        (
            Box::new(
                FnSource::new(n, StructureClass::AntiDiagonal, move |r, col| {
                    if r + col == dim - 1 {
                        hashed_entry(0x22, r, col)
                    } else {
                        c(0.0, 0.0)
                    }
                })
                .unwrap(),
            ),
            StructureClass::AntiDiagonal,
        ),
        (
            Box::new(BandSource::from_fn(n, 2, |r, col| hashed_entry(0x23, r, col)).unwrap()),
            StructureClass::Band(2),
        ),
    ];
    for (src, class) in &cases {
        let (sequential, _) =
            decompose_with_report(src.as_ref(), *class, DEFAULT_PRUNE_TOLERANCE).unwrap();
        for workers in [2usize, 4] {
            let plan = ForestPlan::with_default_cut(n, workers).unwrap();
            let (parallel, _) =
                decompose_forest(src.as_ref(), *class, &plan, DEFAULT_PRUNE_TOLERANCE).unwrap();
            assert_eq!(sequential, parallel, "{class} with {workers} workers");
        }
    }
}

#[test]
fn algebra_chain_matches_dense_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x17e5_0001);
    let n = 2usize;
    let a_src = random_dense(n, &mut rng);
    let b_src = random_dense(n, &mut rng);
    let da = decompose_structured(&a_src, StructureClass::General).unwrap();
    let db = decompose_structured(&b_src, StructureClass::General).unwrap();

    // ((A ⊕ B)·(B ⊕ A) scaled and shifted), then Hermitian-embedded.
    let left = direct_sum(&da, &db).unwrap();
    let right = direct_sum(&db, &da).unwrap();
    let prod = product(&left, &right).unwrap();
    let shifted = linear_combination(c(0.5, -0.25), &prod, &left).unwrap();
    let final_dec = hermitian_augment(&shifted).unwrap();

    let dense_left = left.reconstruct_dense().unwrap();
    let dense_right = right.reconstruct_dense().unwrap();
    let dense_shifted = dense_left
        .mul(&dense_right)
        .scale(c(0.5, -0.25))
        .add(&dense_left);
    let dim = dense_shifted.dim();
    let mut dense_final = paulitree::CMatrix::zeros(2 * dim);
    for r in 0..dim {
        for col in 0..dim {
            dense_final.set(r, dim + col, dense_shifted.get(col, r).conj());
            dense_final.set(dim + r, col, dense_shifted.get(r, col));
        }
    }
    let reconstructed = final_dec.reconstruct_dense().unwrap();
    assert!(
        reconstructed.max_abs_diff(&dense_final) <= 1e-10,
        "chain deviates from the dense oracle by {}",
        reconstructed.max_abs_diff(&dense_final)
    );
    assert_eq!(final_dec.max_imag_abs(), 0.0);
}

#[test]
fn tolerance_zero_keeps_every_leaf_with_weight() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x17e5_0002);
    let src = random_dense(3, &mut rng);
    let (strict, report) = decompose_with_report(&src, StructureClass::General, 0.0).unwrap();
    assert_eq!(report.leaves, 64);
    // A continuous random matrix has (almost surely) no exactly-zero
    // coefficients, and tolerance zero keeps them all.
    assert_eq!(strict.term_count(), 64);
    assert_eq!(strict.term_count() as u64, report.emitted);
    let default = decompose_structured(&src, StructureClass::General).unwrap();
    for (s, &alpha) in default.iter() {
        assert_eq!(strict.coefficient(s), alpha);
    }
    drop(default);

    let zero = FnSource::new(2, StructureClass::General, |_, _| c(0.0, 0.0)).unwrap();
    let empty = decompose_structured(&zero, StructureClass::General).unwrap();
    assert!(empty.is_empty());
    assert_eq!(
        Decomposition::from_terms(2, empty.iter().map(|(s, &a)| (s.clone(), a))).unwrap(),
        empty
    );
}
