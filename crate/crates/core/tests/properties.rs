use proptest::prelude::*;

use fano14_core::exterior::{decompose, tangent_space, wedge2, Gl6, Side};
use fano14_core::linalg::{Field, LinSubspace, Matrix, Scalar};
use fano14_core::pencils::{classify_pencil, standard_a_line, standard_b_line, Pencil};
use fano14_core::random;

const BIG_PRIME: u32 = 2_147_483_647;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Prime(7)),
        Just(Field::Prime(11)),
        Just(Field::Prime(31)),
    ]
}

fn matrix(f: Field, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = random::rng(seed);
    Matrix::new(f, rows, cols, random::vector(f, rows * cols, &mut rng)).unwrap()
}

/// Random matrix of rank at most `r`, so kernels are nontrivial.
fn low_rank(f: Field, rows: usize, cols: usize, r: usize, seed: u64) -> Matrix {
    matrix(f, rows, r, seed).mul(&matrix(f, r, cols, seed ^ 0x5eed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_plus_nullity(f in field(), rows in 1usize..8, cols in 1usize..8, r in 1usize..6, seed in any::<u64>()) {
        let m = low_rank(f, rows, cols, r, seed);
        prop_assert_eq!(m.rank() + m.kernel().dim(), cols);
        for v in m.kernel().basis() {
            prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn annihilator_is_an_involution(f in field(), n in 1usize..9, k in 0usize..9, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let s = LinSubspace::span(f, n, (0..k.min(n)).map(|_| random::vector(f, n, &mut rng)));
        let ann = s.annihilator();
        prop_assert_eq!(ann.dim() + s.dim(), n);
        prop_assert_eq!(ann.annihilator(), s);
    }

    #[test]
    fn echelon_basis_is_canonical(f in field(), n in 2usize..9, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let k = 1 + (seed as usize % (n - 1));
        let gens: Vec<Vec<Scalar>> = (0..k).map(|_| random::vector(f, n, &mut rng)).collect();
        let s = LinSubspace::span(f, n, gens.clone());
        let c = matrix(f, k, k, seed.rotate_left(7));
        let mixed: Vec<Vec<Scalar>> = (0..k)
            .map(|i| {
                (0..k).fold(f.zero_vector(n), |acc, j| {
                    acc.iter().zip(&gens[j]).map(|(a, g)| a + &(c.get(i, j) * g)).collect()
                })
            })
            .collect();
        let t = LinSubspace::span(f, n, mixed);
        if c.rank() == k {
            prop_assert_eq!(t.basis(), s.basis());
        } else {
            prop_assert!(t.is_subspace_of(&s));
        }
    }

    #[test]
    fn rational_rank_matches_rank_mod_a_large_prime(rows in 1usize..7, cols in 1usize..7, r in 1usize..5, seed in any::<u64>()) {
        let q = low_rank(Field::Rational, rows, cols, r, seed);
        let fp = Field::prime(BIG_PRIME).unwrap();
        let data: Vec<Scalar> = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| q.get(i, j).reduce_mod(fp).unwrap())
            .collect();
        let m = Matrix::new(fp, rows, cols, data).unwrap();
        prop_assert_eq!(m.rank(), q.rank());
    }

    #[test]
    fn decompose_inverts_wedge(f in field(), seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let x = random::vector(f, 6, &mut rng);
        let y = random::vector(f, 6, &mut rng);
        let plane = LinSubspace::span(f, 6, [x.clone(), y.clone()]);
        prop_assume!(plane.dim() == 2);
        let p = decompose(&wedge2(Side::V, &x, &y)).unwrap();
        prop_assert_eq!(p.plane(), &plane);
        prop_assert_eq!(tangent_space(&p).dim(), 9);
    }

    #[test]
    fn pencil_class_is_gl6_invariant(f in field(), kind in 0u8..3, seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let l = match kind {
            0 => standard_a_line(f, Side::Dual),
            1 => standard_b_line(f, Side::Dual),
            _ => Pencil::new(
                fano14_core::exterior::TwoTensor::new(Side::Dual, random::vector(f, 15, &mut rng)).unwrap(),
                fano14_core::exterior::TwoTensor::new(Side::Dual, random::vector(f, 15, &mut rng)).unwrap(),
            )
            .unwrap(),
        };
        let g = Gl6::random(f, &mut rng);
        let a = classify_pencil(&l).unwrap();
        let b = classify_pencil(&l.transform(&g)).unwrap();
        prop_assert_eq!(a.tag, b.tag);
        prop_assert_eq!(a.quadric_rank, b.quadric_rank);
    }
}
