//! Exact field arithmetic and dense linear algebra over Q and GF(p).

mod field;
mod matrix;

pub use field::{scalar_arith, ArithResult, FieldSpec, Scalar, ScalarOp, MAX_MODULUS};
pub use matrix::{coordinates, mat_rank, Coordinates, Matrix, Rref};

/// Small vector helpers over `[Scalar]`; callers guarantee a common field.
pub mod vector {
    use super::Scalar;

    pub fn is_zero(v: &[Scalar]) -> bool {
        v.iter().all(Scalar::is_zero)
    }

    pub fn scale(v: &[Scalar], s: &Scalar) -> Vec<Scalar> {
        v.iter().map(|x| x * s).collect()
    }

    /// `a + t·b`
    pub fn axpy(a: &[Scalar], t: &Scalar, b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + &(t * y)).collect()
    }

    /// Rescales so the first nonzero entry is one; `None` for the zero vector.
    pub fn canonical(v: &[Scalar]) -> Option<Vec<Scalar>> {
        let lead = v.iter().find(|x| !x.is_zero())?;
        if lead.is_one() {
            return Some(v.to_vec());
        }
        let inv = lead.inv().ok()?;
        Some(scale(v, &inv))
    }

    /// Kronecker product, left operand major.
    pub fn kron(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a {
            for y in b {
                out.push(x * y);
            }
        }
        out
    }

    /// Whether `a` and `b` are nonzero multiples of each other.
    pub fn proportional(a: &[Scalar], b: &[Scalar]) -> bool {
        a.len() == b.len() && matches!((canonical(a), canonical(b)), (Some(x), Some(y)) if x == y)
    }
}
