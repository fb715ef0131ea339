use crate::error::{Error, Result};
use crate::exactlin::{coordinates, Matrix, Rref, Scalar};
use crate::geometry::{embed, MppPoint, MultiProjectiveSpace, Tensor};
use crate::par::{self, Strategy};

/// A finite point set `A` of a space together with the tensor `q` it is
/// meant to span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    space: MultiProjectiveSpace,
    points: Vec<MppPoint>,
    target: Tensor,
}

impl Decomposition {
    /// Validates shapes, fields and pairwise distinctness of the points.
    pub fn new(space: MultiProjectiveSpace, points: Vec<MppPoint>, target: Tensor) -> Result<Self> {
        space.check_tensor(&target)?;
        for p in &points {
            space.check_point(p)?;
        }
        for i in 0..points.len() {
            if let Some(j) = (i + 1..points.len()).find(|&j| points[j] == points[i]) {
                return Err(Error::DuplicatePoint(i, j));
            }
        }
        Ok(Decomposition { space, points, target })
    }

    pub fn space(&self) -> &MultiProjectiveSpace {
        &self.space
    }

    pub fn points(&self) -> &[MppPoint] {
        &self.points
    }

    pub fn target(&self) -> &Tensor {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Canonical embedded vectors `ν(a)` in point order.
    pub fn embedded(&self) -> Vec<Vec<Scalar>> {
        self.points
            .iter()
            .map(|p| embed(&self.space, p).expect("validated point").coords().to_vec())
            .collect()
    }

    /// Echelon basis of `⟨ν(A)⟩`.
    pub fn span(&self) -> Rref {
        Rref::span(self.space.field(), self.space.ambient_len(), &self.embedded())
            .expect("validated shapes")
    }

    pub fn with_points(&self, points: Vec<MppPoint>) -> Result<Self> {
        Self::new(self.space.clone(), points, self.target.clone())
    }

    pub fn into_parts(self) -> (MultiProjectiveSpace, Vec<MppPoint>, Tensor) {
        (self.space, self.points, self.target)
    }
}

/// Outcome of the coefficient test for irredundant spanning.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrredundancyReport {
    /// `ν(A)` is linearly independent.
    pub independent: bool,
    /// `q ∈ ⟨ν(A)⟩`.
    pub in_span: bool,
    /// Coordinates of `q` in `ν(A)`; present when unique.
    pub coefficients: Option<Vec<Scalar>>,
    pub irredundant: bool,
}

/// Decides irredundant spanning from the coefficients of `q` in `ν(A)`.
///
/// An irredundant spanning set is always linearly independent, so dependent
/// sets are rejected outright; for independent sets the unique coefficients
/// must all be nonzero.
pub fn verify_irredundant(d: &Decomposition) -> IrredundancyReport {
    if d.is_empty() {
        return IrredundancyReport {
            independent: true,
            in_span: false,
            coefficients: None,
            irredundant: false,
        };
    }
    let field = d.space.field();
    let gens = Matrix::from_columns(field, &d.embedded()).expect("validated shapes");
    let solved = coordinates(&gens, d.target.coords()).expect("validated shapes");
    let independent = match &solved {
        Some(c) => c.independent,
        None => gens.rank() == d.len(),
    };
    let in_span = solved.is_some();
    let coefficients = solved.filter(|c| c.independent).map(|c| c.coefficients);
    let irredundant =
        coefficients.as_ref().is_some_and(|c| c.iter().all(|x| !x.is_zero()));
    IrredundancyReport { independent, in_span, coefficients, irredundant }
}

/// Irredundancy straight from the definition: `q ∈ ⟨ν(A)⟩` and `q` is outside
/// the span of every subset with one point removed.
pub fn irredundant_by_subsets(d: &Decomposition) -> bool {
    let field = d.space.field();
    let len = d.space.ambient_len();
    let vectors = d.embedded();
    let contains = |vs: &[Vec<Scalar>]| {
        Rref::span(field, len, vs).expect("validated shapes").contains(d.target.coords())
    };
    if !contains(&vectors) {
        return false;
    }
    (0..vectors.len()).all(|skip| {
        let rest: Vec<Vec<Scalar>> =
            vectors.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, v)| v.clone()).collect();
        !contains(&rest)
    })
}

/// Verifies many decompositions, one task per decomposition.
pub fn verify_batch(ds: &[Decomposition], strategy: Strategy) -> Vec<IrredundancyReport> {
    par::map_slice(ds, strategy, verify_irredundant)
}
