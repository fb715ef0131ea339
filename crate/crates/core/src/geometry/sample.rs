use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactlin::{FieldSpec, Scalar};

use super::point::MppPoint;
use super::space::MultiProjectiveSpace;

/// Default half-width of the integer box used for rational coordinates.
pub const DEFAULT_RATIONAL_BOX: i64 = 50;

/// Deterministic generator used for every random choice in the crate.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform field element: over GF(p) any residue, over Q an integer in `[-b, b]`.
pub fn random_scalar<R: Rng + ?Sized>(field: FieldSpec, rng: &mut R, rational_box: i64) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-rational_box..=rational_box)),
    }
}

pub fn random_nonzero_scalar<R: Rng + ?Sized>(
    field: FieldSpec,
    rng: &mut R,
    rational_box: i64,
) -> Scalar {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(1..p) as i64),
        FieldSpec::Rationals => {
            let b = rational_box.max(1);
            let v = rng.gen_range(1..=b);
            field.from_i64(if rng.gen_bool(0.5) { v } else { -v })
        }
    }
}

/// Random nonzero vector of the given length (rejection of the zero vector).
pub fn random_vector<R: Rng + ?Sized>(
    field: FieldSpec,
    len: usize,
    rng: &mut R,
    rational_box: i64,
) -> Vec<Scalar> {
    loop {
        let v: Vec<Scalar> = (0..len).map(|_| random_scalar(field, rng, rational_box)).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Random point: uniform over the finite projective points of GF(p), or
/// coordinates drawn from the integer box over Q.
pub fn random_point<R: Rng + ?Sized>(
    space: &MultiProjectiveSpace,
    rng: &mut R,
    rational_box: i64,
) -> MppPoint {
    let factors = (0..space.num_factors())
        .map(|i| random_vector(space.field(), space.factor_len(i), rng, rational_box))
        .collect();
    MppPoint::new(factors).expect("factors are nonzero")
}

/// Random point from a seed with the default rational box.
pub fn random_point_seeded(space: &MultiProjectiveSpace, seed: u64) -> MppPoint {
    random_point(space, &mut seeded_rng(seed), DEFAULT_RATIONAL_BOX)
}

/// `count` distinct nonzero field elements, or `FieldTooSmall`.
pub fn distinct_nonzero_scalars<R: Rng + ?Sized>(
    field: FieldSpec,
    count: usize,
    rng: &mut R,
    rational_box: i64,
) -> Result<Vec<Scalar>> {
    let available = match field {
        FieldSpec::Prime(p) => p - 1,
        FieldSpec::Rationals => 2 * rational_box.max(1) as u64,
    };
    if (count as u64) > available {
        return Err(Error::FieldTooSmall { needed: count as u64, available });
    }
    let mut out: Vec<Scalar> = Vec::with_capacity(count);
    while out.len() < count {
        let s = random_nonzero_scalar(field, rng, rational_box);
        if !out.contains(&s) {
            out.push(s);
        }
    }
    Ok(out)
}
