use hinge_core::hinge::{chi, equivalent, standard_matrix};
use hinge_core::sample::{
    random_block_diagonal, random_composition, random_invertible, random_t_minus, random_t_plus,
};
use hinge_core::{BiHinge, Composition, DimensionMatrix, Matrix, PrimeField, Subspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn comp(parts: &[usize]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

/// The 12×12 matrix whose row `r` has its unit in column `3·(r mod 4) + r / 4`.
fn big_example() -> Matrix {
    Matrix::from_fn(gf(2), 12, 12, |r, c| u32::from(c == 3 * (r % 4) + r / 4))
}

fn span(f: PrimeField, d: usize, coords: &[usize]) -> Subspace {
    Subspace::coordinate(f, d, coords).unwrap()
}

#[test]
fn worked_example_twelve_by_twelve() {
    let f = gf(2);
    let alpha = comp(&[3, 3, 3, 3]);
    let beta = comp(&[4, 4, 4]);
    let h = chi(&big_example(), &alpha, &beta).unwrap();
    let cell = h.cell(2, 1);
    assert_eq!(cell.dom(), span(f, 3, &[1, 2]));
    assert_eq!(cell.ker(), span(f, 3, &[2]));
    assert_eq!(cell.im(), span(f, 4, &[0, 1, 2]));
    assert_eq!(cell.indef(), span(f, 4, &[0, 1]));
    assert_eq!(cell.theta().unwrap(), Matrix::identity(f, 1));
    // ξ² is paired with η³ modulo the indefiniteness.
    let eta = cell.partner(&[0, 1, 0]).unwrap();
    assert_eq!(cell.indef().reduce(&eta), vec![0, 0, 1, 0]);

    let ones = DimensionMatrix::new(vec![vec![1; 3]; 4], alpha.clone(), beta.clone()).unwrap();
    assert_eq!(h.dimension_matrix().unwrap(), ones);
    assert_eq!(h, BiHinge::standard(&ones, f));
    assert_eq!(standard_matrix(&ones, f), big_example());
}

#[test]
fn invariance_under_both_triangular_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let p = [2u64, 3, 5][rng.gen_range(0..3)];
        let f = gf(p);
        let n = rng.gen_range(1..=6);
        let alpha = random_composition(n, &mut rng);
        let beta = random_composition(n, &mut rng);
        let a = random_invertible(f, n, &mut rng);
        let c = random_t_plus(f, &alpha, &mut rng);
        let d = random_t_minus(f, &beta, &mut rng);
        let base = chi(&a, &alpha, &beta).unwrap();
        assert_eq!(chi(&a.mul(&c).unwrap(), &alpha, &beta).unwrap(), base);
        assert_eq!(chi(&d.mul(&a).unwrap(), &alpha, &beta).unwrap(), base);
        let both = d.mul(&a).unwrap().mul(&c).unwrap();
        assert_eq!(chi(&both, &alpha, &beta).unwrap(), base);
        assert!(equivalent(&a, &both, &alpha, &beta).unwrap());
    }
}

#[test]
fn chi_satisfies_the_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..300 {
        let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
        let n = rng.gen_range(1..=6);
        let alpha = random_composition(n, &mut rng);
        let beta = random_composition(n, &mut rng);
        let a = random_invertible(gf(p), n, &mut rng);
        let h = chi(&a, &alpha, &beta).unwrap();
        let report = h.check_axioms();
        assert!(report.is_ok(), "{report}");
    }
}

#[test]
fn chi_is_equivariant_under_block_diagonal_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let f = gf([2u64, 3, 5][rng.gen_range(0..3)]);
        let n = rng.gen_range(1..=5);
        let alpha = random_composition(n, &mut rng);
        let beta = random_composition(n, &mut rng);
        let a = random_invertible(f, n, &mut rng);
        let (g, g_full) = random_block_diagonal(f, &alpha, &mut rng);
        let (h, h_full) = random_block_diagonal(f, &beta, &mut rng);
        let moved = h_full
            .mul(&a)
            .unwrap()
            .mul(&g_full.inverse().unwrap())
            .unwrap();
        let expected = chi(&a, &alpha, &beta).unwrap().act(&g, &h).unwrap();
        assert_eq!(chi(&moved, &alpha, &beta).unwrap(), expected);
    }
}

#[test]
fn action_is_a_group_action() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let f = gf([2u64, 3][rng.gen_range(0..2)]);
        let n = rng.gen_range(1..=5);
        let alpha = random_composition(n, &mut rng);
        let beta = random_composition(n, &mut rng);
        let x = chi(&random_invertible(f, n, &mut rng), &alpha, &beta).unwrap();
        let (g1, _) = random_block_diagonal(f, &alpha, &mut rng);
        let (h1, _) = random_block_diagonal(f, &beta, &mut rng);
        let (g2, _) = random_block_diagonal(f, &alpha, &mut rng);
        let (h2, _) = random_block_diagonal(f, &beta, &mut rng);
        let compose = |a: &[Matrix], b: &[Matrix]| -> Vec<Matrix> {
            a.iter().zip(b).map(|(a, b)| a.mul(b).unwrap()).collect()
        };
        let stepwise = x.act(&g1, &h1).unwrap().act(&g2, &h2).unwrap();
        let combined = x.act(&compose(&g2, &g1), &compose(&h2, &h1)).unwrap();
        assert_eq!(stepwise, combined);
        let ids = |c: &Composition| -> Vec<Matrix> {
            c.parts().iter().map(|&s| Matrix::identity(f, s)).collect()
        };
        assert_eq!(x.act(&ids(&alpha), &ids(&beta)).unwrap(), x);
    }
}

#[test]
fn normalization_reaches_the_standard_form() {
    let f = gf(3);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let alpha = random_composition(n, &mut rng);
        let beta = random_composition(n, &mut rng);
        let x = chi(&random_invertible(f, n, &mut rng), &alpha, &beta).unwrap();
        let norm = x.normalize().unwrap();
        assert_eq!(norm.dims, x.dimension_matrix().unwrap());
        assert_eq!(
            x.act(&norm.g, &norm.h).unwrap(),
            BiHinge::standard(&norm.dims, f)
        );
    }
}

#[test]
fn standard_matrix_realizes_the_standard_bihinge() {
    let alpha = comp(&[2, 1]);
    let beta = comp(&[1, 2]);
    for p in [2, 3] {
        let f = gf(p);
        for rows in [vec![vec![1, 1], vec![0, 1]], vec![vec![0, 2], vec![1, 0]]] {
            let d = DimensionMatrix::new(rows, alpha.clone(), beta.clone()).unwrap();
            let m = standard_matrix(&d, f);
            assert!(m.is_invertible());
            assert_eq!(chi(&m, &alpha, &beta).unwrap(), BiHinge::standard(&d, f));
        }
    }
}

#[test]
fn mutated_grids_fail_the_axioms() {
    let f = gf(2);
    let alpha = comp(&[1, 1]);
    let beta = comp(&[1, 1]);
    let d =
        DimensionMatrix::new(vec![vec![1, 0], vec![0, 1]], alpha.clone(), beta.clone()).unwrap();
    let good = BiHinge::standard(&d, f);
    assert!(good.check_axioms().is_ok());
    // Replacing any single cell by the zero relation breaks a chain condition.
    for k in 0..4 {
        let mut cells = good.cells().to_vec();
        let cell = &cells[k];
        let zero = hinge_core::LinearRelation::zero(f, cell.dim_x(), cell.dim_y());
        if *cell == zero {
            continue;
        }
        cells[k] = zero;
        let bad = BiHinge::new(alpha.clone(), beta.clone(), cells).unwrap();
        assert!(!bad.check_axioms().is_ok(), "cell {k}");
    }
}
