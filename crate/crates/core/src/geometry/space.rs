use crate::error::{Error, Result};
use crate::exactlin::FieldSpec;

/// `P^{n_1} × ⋯ × P^{n_k}` over a field, embedded with multidegree `(d_1, …, d_k)`.
///
/// All-ones multidegree is the Segre embedding; a single factor is a
/// Veronese embedding. Factors of dimension zero are allowed so that
/// envelopes and sub-spaces can be represented as spaces in their own right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiProjectiveSpace {
    dims: Vec<usize>,
    degrees: Vec<usize>,
    field: FieldSpec,
}

/// `C(n, k)` for the small arguments that occur here.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

impl MultiProjectiveSpace {
    pub fn new(dims: Vec<usize>, degrees: Vec<usize>, field: FieldSpec) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSpace("at least one factor is required".into()));
        }
        if dims.len() != degrees.len() {
            return Err(Error::InvalidSpace(format!(
                "{} factor dimensions but {} degrees",
                dims.len(),
                degrees.len()
            )));
        }
        if degrees.contains(&0) {
            return Err(Error::InvalidSpace("degrees must be at least 1".into()));
        }
        Ok(MultiProjectiveSpace { dims, degrees, field })
    }

    pub fn segre(dims: Vec<usize>, field: FieldSpec) -> Result<Self> {
        let degrees = vec![1; dims.len()];
        Self::new(dims, degrees, field)
    }

    pub fn veronese(n: usize, degree: usize, field: FieldSpec) -> Result<Self> {
        Self::new(vec![n], vec![degree], field)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn with_field(&self, field: FieldSpec) -> Self {
        MultiProjectiveSpace { field, ..self.clone() }
    }

    pub fn num_factors(&self) -> usize {
        self.dims.len()
    }

    pub fn is_segre(&self) -> bool {
        self.degrees.iter().all(|&d| d == 1)
    }

    pub fn is_veronese(&self) -> bool {
        self.dims.len() == 1
    }

    /// Every factor has positive dimension.
    pub fn is_positive(&self) -> bool {
        self.dims.iter().all(|&n| n > 0)
    }

    /// Dimension of the multiprojective space itself, `Σ n_i`.
    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Length `n_i + 1` of a coordinate vector in factor `i`.
    pub fn factor_len(&self, i: usize) -> usize {
        self.dims[i] + 1
    }

    /// Number of degree-`d_i` monomials in factor `i`.
    pub fn monomial_count(&self, i: usize) -> usize {
        binomial(self.dims[i] + self.degrees[i], self.dims[i])
    }

    /// Length `N + 1` of an ambient coordinate vector.
    pub fn ambient_len(&self) -> usize {
        (0..self.num_factors()).map(|i| self.monomial_count(i)).product()
    }

    /// `N = ∏ C(n_i + d_i, n_i) − 1`.
    pub fn ambient_dim(&self) -> usize {
        self.ambient_len() - 1
    }

    /// Same field, same degrees, new factor dimensions.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        Self::new(dims, self.degrees.clone(), self.field)
    }
}

/// Projective dimension of the ambient space of the embedding.
pub fn ambient_dim(space: &MultiProjectiveSpace) -> usize {
    space.ambient_dim()
}
