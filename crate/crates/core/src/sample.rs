//! Random matrices from the groups acting on `GL(n)`: used by the property
//! tests and by the command-line self-check.

use rand::Rng;

use crate::field::PrimeField;
use crate::hinge::Composition;
use crate::matrix::Matrix;

pub fn random_matrix<R: Rng + ?Sized>(
    field: PrimeField,
    rows: usize,
    cols: usize,
    rng: &mut R,
) -> Matrix {
    let p = field.modulus();
    Matrix::from_fn(field, rows, cols, |_, _| rng.gen_range(0..p))
}

/// Uniform element of `GL(n, p)` by rejection sampling.
pub fn random_invertible<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(field, n, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Uniform random composition of `n`.
pub fn random_composition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Composition {
    let mut parts = Vec::new();
    let mut cur = 1;
    for _ in 1..n {
        if rng.gen_bool(0.5) {
            parts.push(cur);
            cur = 1;
        } else {
            cur += 1;
        }
    }
    parts.push(cur);
    Composition::new(parts).expect("parts are positive")
}

/// Block triangular matrix for `comp` with the given diagonal blocks and
/// uniformly random entries strictly above (`upper`) or below the diagonal
/// blocks.
fn block_triangular<R: Rng + ?Sized>(
    field: PrimeField,
    comp: &Composition,
    diagonal: &[Matrix],
    upper: bool,
    rng: &mut R,
) -> Matrix {
    let n = comp.n();
    let p = field.modulus();
    let mut m = Matrix::block_diagonal(field, diagonal).expect("blocks match the composition");
    for r in 0..n {
        for c in 0..n {
            let (br, bc) = (comp.block_of(r), comp.block_of(c));
            if (upper && br < bc) || (!upper && br > bc) {
                m.set(r, c, rng.gen_range(0..p));
            }
        }
    }
    m
}

fn identities(field: PrimeField, comp: &Composition) -> Vec<Matrix> {
    comp.parts()
        .iter()
        .map(|&s| Matrix::identity(field, s))
        .collect()
}

fn random_blocks<R: Rng + ?Sized>(
    field: PrimeField,
    comp: &Composition,
    rng: &mut R,
) -> Vec<Matrix> {
    comp.parts()
        .iter()
        .map(|&s| random_invertible(field, s, rng))
        .collect()
}

/// Random element of `T_+(α)`: block upper triangular, identity diagonal blocks.
pub fn random_t_plus<R: Rng + ?Sized>(
    field: PrimeField,
    alpha: &Composition,
    rng: &mut R,
) -> Matrix {
    block_triangular(field, alpha, &identities(field, alpha), true, rng)
}

/// Random element of `T_-(β)`.
pub fn random_t_minus<R: Rng + ?Sized>(
    field: PrimeField,
    beta: &Composition,
    rng: &mut R,
) -> Matrix {
    block_triangular(field, beta, &identities(field, beta), false, rng)
}

/// Random element of `P_+(α)`: block upper triangular, invertible diagonal blocks.
pub fn random_p_plus<R: Rng + ?Sized>(
    field: PrimeField,
    alpha: &Composition,
    rng: &mut R,
) -> Matrix {
    let diag = random_blocks(field, alpha, rng);
    block_triangular(field, alpha, &diag, true, rng)
}

/// Random element of `P_-(β)`.
pub fn random_p_minus<R: Rng + ?Sized>(
    field: PrimeField,
    beta: &Composition,
    rng: &mut R,
) -> Matrix {
    let diag = random_blocks(field, beta, rng);
    block_triangular(field, beta, &diag, false, rng)
}

/// Random invertible blocks `g_1, …, g_p` for `comp`, with their
/// block-diagonal assembly.
pub fn random_block_diagonal<R: Rng + ?Sized>(
    field: PrimeField,
    comp: &Composition,
    rng: &mut R,
) -> (Vec<Matrix>, Matrix) {
    let blocks = random_blocks(field, comp, rng);
    let full = Matrix::block_diagonal(field, &blocks).expect("square blocks");
    (blocks, full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn samples_have_the_right_shape() {
        let mut rng = StdRng::seed_from_u64(7);
        let f = PrimeField::new(3).unwrap();
        let alpha = Composition::new(vec![2, 1, 2]).unwrap();
        for _ in 0..20 {
            let t = random_t_plus(f, &alpha, &mut rng);
            for r in 0..5 {
                for c in 0..5 {
                    let (br, bc) = (alpha.block_of(r), alpha.block_of(c));
                    if br > bc || (br == bc && r != c) {
                        assert_eq!(t.entry(r, c), 0);
                    }
                    if r == c {
                        assert_eq!(t.entry(r, c), 1);
                    }
                }
            }
            let pm = random_p_minus(f, &alpha, &mut rng);
            assert!(pm.is_invertible());
            for r in 0..5 {
                for c in 0..5 {
                    if alpha.block_of(r) < alpha.block_of(c) {
                        assert_eq!(pm.entry(r, c), 0);
                    }
                }
            }
            let comp = random_composition(6, &mut rng);
            assert_eq!(comp.n(), 6);
        }
    }
}
