use std::collections::HashSet;

use hinge_core::hinge::{chi, standard_matrix};
use hinge_core::oracle::{enum_gl, EnumerationBudget};
use hinge_core::reduce::{block_unit_counts, canonical_01, lpu, rank_profile_permutation};
use hinge_core::sample::{random_composition, random_invertible, random_p_minus, random_p_plus};
use hinge_core::{Composition, Matrix, PrimeField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

fn is_permutation(m: &Matrix) -> bool {
    let n = m.rows();
    (0..n).all(|r| (0..n).filter(|&c| m.entry(r, c) == 1).count() == 1)
        && (0..n).all(|c| (0..n).filter(|&r| m.entry(r, c) == 1).count() == 1)
        && m.data().iter().all(|&x| x <= 1)
}

#[test]
fn lpu_is_exact_and_triangular() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1000 {
        let f = gf([2u64, 3, 5, 7][rng.gen_range(0..4)]);
        let n = rng.gen_range(1..=6);
        let a = random_invertible(f, n, &mut rng);
        let d = lpu(&a).unwrap();
        assert_eq!(d.l.mul(&d.perm).unwrap().mul(&d.u).unwrap(), a);
        assert!(is_permutation(&d.perm));
        assert_eq!(d.perm, rank_profile_permutation(&a));
        for r in 0..n {
            assert_ne!(d.l.entry(r, r), 0);
            assert_ne!(d.u.entry(r, r), 0);
            for c in r + 1..n {
                assert_eq!(d.l.entry(r, c), 0);
                assert_eq!(d.u.entry(c, r), 0);
            }
        }
    }
}

#[test]
fn block_counts_match_the_dimension_matrix() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let f = gf([2u64, 3, 5][rng.gen_range(0..3)]);
        let n = rng.gen_range(1..=6);
        let alpha = random_composition(n, &mut rng);
        let beta = random_composition(n, &mut rng);
        let a = random_invertible(f, n, &mut rng);
        let dims = chi(&a, &alpha, &beta).unwrap().dimension_matrix().unwrap();
        let perm = lpu(&a).unwrap().perm;
        assert_eq!(block_unit_counts(&perm, &alpha, &beta).unwrap(), dims);
        assert_eq!(
            canonical_01(&a, &alpha, &beta).unwrap(),
            standard_matrix(&dims, f)
        );
    }
}

#[test]
fn canonical_form_is_constant_on_parabolic_double_cosets() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let f = gf([2u64, 3, 5][rng.gen_range(0..3)]);
        let n = rng.gen_range(1..=6);
        let alpha = random_composition(n, &mut rng);
        let beta = random_composition(n, &mut rng);
        let a = random_invertible(f, n, &mut rng);
        let moved = random_p_minus(f, &beta, &mut rng)
            .mul(&a)
            .unwrap()
            .mul(&random_p_plus(f, &alpha, &mut rng))
            .unwrap();
        let canon = canonical_01(&a, &alpha, &beta).unwrap();
        assert_eq!(canonical_01(&moved, &alpha, &beta).unwrap(), canon);
        // The representative is its own canonical form.
        assert_eq!(canonical_01(&canon, &alpha, &beta).unwrap(), canon);
    }
}

#[test]
fn distinct_canonical_forms_over_small_groups() {
    let f = gf(2);
    let budget = EnumerationBudget::default();
    let count = |n: usize, alpha: &Composition, beta: &Composition| {
        enum_gl(n, f, &budget)
            .unwrap()
            .iter()
            .map(|a| canonical_01(a, alpha, beta).unwrap())
            .collect::<HashSet<_>>()
            .len()
    };
    // Parabolic double cosets are indexed by contingency tables.
    assert_eq!(count(2, &comp(&[1, 1]), &comp(&[1, 1])), 2);
    assert_eq!(count(4, &comp(&[2, 2]), &comp(&[2, 2])), 3);
    assert_eq!(count(3, &comp(&[1, 1, 1]), &comp(&[1, 1, 1])), 6);
}
