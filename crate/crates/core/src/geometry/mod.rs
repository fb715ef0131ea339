//! Multiprojective spaces, their points, and the Segre / Veronese /
//! Segre–Veronese embeddings.

mod enumerate;
pub mod monomials;
mod point;
mod sample;
mod space;

pub use enumerate::{enumerate_points, point_count, projective_residues};
pub use point::{embed, line_point, MppPoint, SubspaceSpec, Tensor};
pub use sample::{
    distinct_nonzero_scalars, random_nonzero_scalar, random_point, random_point_seeded,
    random_scalar, random_vector, seeded_rng, SeededRng, DEFAULT_RATIONAL_BOX,
};
pub use space::{ambient_dim, binomial, MultiProjectiveSpace};

