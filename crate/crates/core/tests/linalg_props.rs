use hinge_core::{Matrix, PrimeField, Subspace};
use proptest::prelude::*;

fn gf(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn matrix_strategy(p: u64, max_rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    (0..=max_rows).prop_flat_map(move |rows| {
        prop::collection::vec(0..p as u32, rows * cols)
            .prop_map(move |data| Matrix::from_data(gf(p), rows, cols, data).unwrap())
    })
}

fn subspace_strategy(p: u64, dim: usize) -> impl Strategy<Value = Subspace> {
    matrix_strategy(p, dim + 1, dim).prop_map(move |m| Subspace::from_generators(dim, &m).unwrap())
}

/// Every vector of GF(p)^d.
fn all_vectors(p: u32, d: usize) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Membership by span enumeration: all linear combinations of the basis.
fn members(s: &Subspace) -> std::collections::HashSet<Vec<u32>> {
    let p = s.field().modulus();
    let d = s.ambient_dim();
    let basis = s.basis();
    all_vectors(p, s.dim())
        .into_iter()
        .map(|coeffs| {
            (0..d)
                .map(|c| {
                    coeffs.iter().enumerate().fold(0u64, |acc, (r, &k)| {
                        (acc + k as u64 * basis.entry(r, c) as u64) % p as u64
                    }) as u32
                })
                .collect()
        })
        .collect()
}

fn is_rref(m: &Matrix, pivots: &[usize]) -> bool {
    pivots.len() == m.rows()
        && pivots.windows(2).all(|w| w[0] < w[1])
        && pivots.iter().enumerate().all(|(r, &pc)| {
            (0..pc).all(|c| m.entry(r, c) == 0)
                && m.entry(r, pc) == 1
                && (0..m.rows()).all(|rr| rr == r || m.entry(rr, pc) == 0)
        })
}

proptest! {
    #[test]
    fn rref_is_idempotent_and_well_formed(m in matrix_strategy(5, 5, 4)) {
        let (r, piv) = m.rref();
        prop_assert!(is_rref(&r, &piv));
        let (rr, piv2) = r.rref();
        prop_assert_eq!(&rr, &r);
        prop_assert_eq!(piv2, piv);
        // Row space is preserved.
        prop_assert_eq!(
            Subspace::from_generators(4, &m).unwrap(),
            Subspace::from_generators(4, &r).unwrap()
        );
    }

    #[test]
    fn row_equivalent_generators_give_identical_subspaces(
        m in matrix_strategy(3, 4, 4),
        mix in prop::collection::vec(0..3u32, 16),
    ) {
        // Left-multiplying by an invertible matrix preserves the row space.
        let rows = m.rows();
        let t = Matrix::from_fn(gf(3), rows, rows, |r, c| mix[r * 4 + c]);
        prop_assume!(t.is_invertible());
        let mixed = t.mul(&m).unwrap();
        prop_assert_eq!(
            Subspace::from_generators(4, &m).unwrap(),
            Subspace::from_generators(4, &mixed).unwrap()
        );
    }

    #[test]
    fn field_laws(a in 0u32..251, b in 0u32..251, c in 0u32..251) {
        let f = gf(251);
        let (a, b, c) = (f.element(a as i64), f.element(b as i64), f.element(c as i64));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, f.zero());
    }

    #[test]
    fn dimension_formula(p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let random = |rng: &mut rand_chacha::ChaCha8Rng| {
            let rows = rng.gen_range(0..=4);
            let data = (0..rows * 4).map(|_| rng.gen_range(0..p as u32)).collect();
            Subspace::from_generators(4, &Matrix::from_data(gf(p), rows, 4, data).unwrap()).unwrap()
        };
        let s = random(&mut rng);
        let t = random(&mut rng);
        let sum = s.sum(&t).unwrap();
        let int = s.intersect(&t).unwrap();
        prop_assert_eq!(sum.dim() + int.dim(), s.dim() + t.dim());
    }

    #[test]
    fn kernel_of_equations_round_trips(s in subspace_strategy(3, 5)) {
        let e = s.equations();
        prop_assert_eq!(e.rows(), s.ambient_dim() - s.dim());
        prop_assert_eq!(e.kernel(), s);
    }

    #[test]
    fn preimage_matches_membership(
        p in prop::sample::select(vec![2u64, 3]),
        d in 1usize..=4,
        seed in any::<u64>(),
    ) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let cols = rng.gen_range(1..=4);
        let a = Matrix::from_fn(gf(p), d, cols, |_, _| rng.gen_range(0..p as u32));
        let rows = rng.gen_range(0..=d);
        let gens = Matrix::from_fn(gf(p), rows, d, |_, _| rng.gen_range(0..p as u32));
        let s = Subspace::from_generators(d, &gens).unwrap();
        let pre = s.preimage(&a).unwrap();
        let s_members = members(&s);
        let pre_members = members(&pre);
        for x in all_vectors(p as u32, cols) {
            let ax = a.apply(&x).unwrap();
            prop_assert_eq!(s_members.contains(&ax), pre_members.contains(&x));
        }
    }
}

#[test]
fn dimension_formula_against_enumeration_over_gf2() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let f = gf(2);
    let vectors = all_vectors(2, 4);
    for _ in 0..100 {
        let mut random = || {
            let rows = rng.gen_range(0..=4);
            Subspace::from_generators(4, &Matrix::from_fn(f, rows, 4, |_, _| rng.gen_range(0..2)))
                .unwrap()
        };
        let s = random();
        let t = random();
        let (ms, mt) = (members(&s), members(&t));
        let sum = s.sum(&t).unwrap();
        let int = s.intersect(&t).unwrap();
        // Oracle: |S ∩ T| by membership, |S + T| = |S||T|/|S ∩ T|.
        let meet = vectors
            .iter()
            .filter(|v| ms.contains(*v) && mt.contains(*v))
            .count();
        assert_eq!(members(&int).len(), meet);
        for v in &vectors {
            assert_eq!(int.contains(v), ms.contains(v) && mt.contains(v));
        }
        assert_eq!(members(&sum).len(), ms.len() * mt.len() / meet);
        assert_eq!(sum.dim() + int.dim(), s.dim() + t.dim());
    }
}
