//! Seeded randomness. Every random choice in the crate comes from a
//! `ChaCha8Rng` seeded with `seed_from_u64`, so fixtures are reproducible
//! across platforms and implementations.

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Field, Scalar};

pub type Rng = ChaCha8Rng;

/// Bound on the absolute value of random integers used over `Q`.
pub const Q_RANGE: i64 = 5;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform residue over `F_p`; a small integer in `[-5, 5]` over `Q`.
pub fn scalar(field: Field, rng: &mut Rng) -> Scalar {
    match field.modulus() {
        Some(p) => field.residue(rng.gen_range(0..p)),
        None => field.int(rng.gen_range(-Q_RANGE..=Q_RANGE)),
    }
}

pub fn vector(field: Field, n: usize, rng: &mut Rng) -> Vec<Scalar> {
    (0..n).map(|_| scalar(field, rng)).collect()
}

pub fn nonzero_vector(field: Field, n: usize, rng: &mut Rng) -> Vec<Scalar> {
    loop {
        let v = vector(field, n, rng);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}
