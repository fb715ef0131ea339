use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;

use super::point::MppPoint;
use super::space::MultiProjectiveSpace;

/// Canonical representatives of `P^{len-1}(GF(p))` as residue vectors.
///
/// Vectors are visited by counting in base `p` with coordinate 0 as the least
/// significant digit, keeping those whose first nonzero entry is one; over
/// GF(2) the projective line comes out as `(1:0), (0:1), (1:1)`.
pub fn projective_residues(p: u64, len: usize) -> Vec<Vec<u64>> {
    let total = (p as u128).pow(len as u32);
    let mut out = Vec::new();
    let mut digits = vec![0u64; len];
    for _ in 1..total {
        for d in digits.iter_mut() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
        if digits.iter().find(|&&d| d != 0) == Some(&1) {
            out.push(digits.clone());
        }
    }
    out
}

/// `∏ (p^{n_i+1} − 1)/(p − 1)`.
pub fn point_count(space: &MultiProjectiveSpace) -> Result<u128> {
    let p = space.field().modulus().ok_or(Error::FieldNotFinite)? as u128;
    Ok(space
        .dims()
        .iter()
        .map(|&n| (p.pow(n as u32 + 1) - 1) / (p - 1))
        .product())
}

/// Every point of a space over GF(p), factors nested left to right.
pub fn enumerate_points(space: &MultiProjectiveSpace) -> Result<Vec<MppPoint>> {
    let field = space.field();
    let p = field.modulus().ok_or(Error::FieldNotFinite)?;
    let per_factor: Vec<Vec<Vec<u64>>> = (0..space.num_factors())
        .map(|i| projective_residues(p, space.factor_len(i)))
        .collect();
    let mut tuples: Vec<Vec<&Vec<u64>>> = vec![Vec::new()];
    for choices in &per_factor {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                choices.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    Ok(tuples
        .into_iter()
        .map(|t| {
            let factors = t.iter().map(|v| v.iter().map(|&x| residue(field, x)).collect()).collect();
            MppPoint::new(factors).expect("canonical residues")
        })
        .collect())
}

fn residue(field: FieldSpec, x: u64) -> crate::exactlin::Scalar {
    field.from_i64(x as i64)
}
