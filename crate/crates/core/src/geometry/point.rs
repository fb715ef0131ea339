use crate::error::{Error, Result};
use crate::exactlin::{vector, FieldSpec, Rref, Scalar};

use super::monomials;
use super::space::MultiProjectiveSpace;

/// A point of a multiprojective space: one nonzero coordinate vector per
/// factor, each scaled so its first nonzero entry is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MppPoint {
    factors: Vec<Vec<Scalar>>,
}

impl MppPoint {
    pub fn new(factors: Vec<Vec<Scalar>>) -> Result<Self> {
        let factors = factors
            .iter()
            .enumerate()
            .map(|(i, f)| vector::canonical(f).ok_or(Error::ZeroFactor(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MppPoint { factors })
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(field: FieldSpec, factors: &[&[i64]]) -> Result<Self> {
        Self::new(factors.iter().map(|f| f.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn factors(&self) -> &[Vec<Scalar>] {
        &self.factors
    }

    pub fn factor(&self, i: usize) -> &[Scalar] {
        &self.factors[i]
    }

    /// Copy of this point with factor `i` replaced.
    pub fn with_factor(&self, i: usize, v: Vec<Scalar>) -> Result<Self> {
        let mut factors = self.factors.clone();
        factors[i] = v;
        Self::new(factors)
    }
}

/// A projective point of the ambient space, stored with its first nonzero
/// coordinate equal to one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor {
    coords: Vec<Scalar>,
}

impl Tensor {
    pub fn new(coords: Vec<Scalar>) -> Result<Self> {
        let coords = vector::canonical(&coords).ok_or(Error::ZeroTensor)?;
        Ok(Tensor { coords })
    }

    pub fn from_ints(field: FieldSpec, coords: &[i64]) -> Result<Self> {
        Self::new(coords.iter().map(|&x| field.from_i64(x)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn field(&self) -> FieldSpec {
        self.coords[0].field()
    }
}

impl MultiProjectiveSpace {
    /// Checks that `p` has the right shape and field for this space.
    pub fn check_point(&self, p: &MppPoint) -> Result<()> {
        if p.factors.len() != self.num_factors() {
            return Err(Error::SpaceMismatch);
        }
        for (i, f) in p.factors.iter().enumerate() {
            if f.len() != self.factor_len(i) {
                return Err(Error::SpaceMismatch);
            }
            if let Some(x) = f.iter().find(|x| x.field() != self.field()) {
                return Err(Error::MixedFields(self.field().to_string(), x.field().to_string()));
            }
        }
        Ok(())
    }

    pub fn check_tensor(&self, q: &Tensor) -> Result<()> {
        if q.len() != self.ambient_len() {
            return Err(Error::SpaceMismatch);
        }
        if q.field() != self.field() {
            return Err(Error::MixedFields(self.field().to_string(), q.field().to_string()));
        }
        Ok(())
    }

    /// Flat index of a multi-index of per-factor monomial positions
    /// (left factor major).
    pub fn flat_index(&self, multi: &[usize]) -> usize {
        multi
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &m)| acc * self.monomial_count(i) + m)
    }

    /// Per-factor monomial positions of a flat ambient index.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.num_factors()];
        for i in (0..self.num_factors()).rev() {
            let c = self.monomial_count(i);
            out[i] = flat % c;
            flat /= c;
        }
        out
    }
}

/// Unnormalized image of a tuple of factor vectors: the Kronecker product of
/// the per-factor monomial vectors.
pub(crate) fn embed_vectors(space: &MultiProjectiveSpace, factors: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut acc = vec![space.field().one()];
    for (f, &d) in factors.iter().zip(space.degrees()) {
        acc = vector::kron(&acc, &monomials::evaluate(f, d));
    }
    acc
}

/// Segre–Veronese image of `p`, canonically scaled.
pub fn embed(space: &MultiProjectiveSpace, p: &MppPoint) -> Result<Tensor> {
    space.check_point(p)?;
    Tensor::new(embed_vectors(space, &p.factors))
}

/// `a + t·w`, the point of the line through `a` in direction `w` at parameter `t`.
pub fn line_point(a: &[Scalar], w: &[Scalar], t: &Scalar) -> Result<Vec<Scalar>> {
    if a.len() != w.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), found: w.len() });
    }
    let field = t.field();
    if let Some(x) = a.iter().chain(w).find(|x| x.field() != field) {
        return Err(Error::MixedFields(field.to_string(), x.field().to_string()));
    }
    Ok(vector::axpy(a, t, w))
}

/// A sub-multiprojective space `∏ P(V_i)` of a space, one linear subspace
/// per factor, each stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceSpec {
    factors: Vec<Rref>,
}

impl SubspaceSpec {
    /// Each factor basis must be a nonempty independent list of vectors.
    pub fn new(space: &MultiProjectiveSpace, bases: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        if bases.len() != space.num_factors() {
            return Err(Error::SpaceMismatch);
        }
        let factors = bases
            .iter()
            .enumerate()
            .map(|(i, b)| {
                if b.is_empty() {
                    return Err(Error::EmptySet);
                }
                let r = Rref::span(space.field(), space.factor_len(i), b)?;
                if r.rank() != b.len() {
                    return Err(Error::Dependent);
                }
                Ok(r)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SubspaceSpec { factors })
    }

    /// Builds from already reduced factor spans; ranks must be positive.
    pub(crate) fn from_rrefs(factors: Vec<Rref>) -> Self {
        debug_assert!(factors.iter().all(|r| r.rank() > 0));
        SubspaceSpec { factors }
    }

    /// The whole space.
    pub fn full(space: &MultiProjectiveSpace) -> Self {
        let f = space.field();
        let factors = (0..space.num_factors())
            .map(|i| {
                let n = space.factor_len(i);
                let id: Vec<Vec<Scalar>> = (0..n)
                    .map(|r| (0..n).map(|c| if r == c { f.one() } else { f.zero() }).collect())
                    .collect();
                Rref::span(f, n, &id).expect("identity basis")
            })
            .collect();
        SubspaceSpec { factors }
    }

    pub fn factor(&self, i: usize) -> &Rref {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[Rref] {
        &self.factors
    }

    /// Projective dimensions `m_i`.
    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|r| r.rank() - 1).collect()
    }

    pub fn is_full(&self) -> bool {
        self.factors.iter().all(Rref::is_full)
    }

    pub fn contains_point(&self, p: &MppPoint) -> bool {
        self.factors.len() == p.factors.len()
            && self.factors.iter().zip(&p.factors).all(|(r, v)| r.contains(v))
    }

    /// Factor-wise inclusion `other ⊆ self`.
    pub fn contains_subspace(&self, other: &SubspaceSpec) -> bool {
        self.factors.len() == other.factors.len()
            && self.factors.iter().zip(&other.factors).all(|(a, b)| a.contains_span(b))
    }

    /// The subspace as a space of its own: dimensions `m_i`, same degrees.
    pub fn reduced_space(&self, space: &MultiProjectiveSpace) -> Result<MultiProjectiveSpace> {
        space.with_dims(self.dims())
    }

    /// Coordinates of a contained point in the echelon bases.
    pub fn point_coordinates(&self, p: &MppPoint) -> Option<MppPoint> {
        let factors = self
            .factors
            .iter()
            .zip(&p.factors)
            .map(|(r, v)| r.coordinates(v))
            .collect::<Option<Vec<_>>>()?;
        MppPoint::new(factors).ok()
    }

    /// Inverse of [`SubspaceSpec::point_coordinates`].
    pub fn lift_point(&self, p: &MppPoint) -> Result<MppPoint> {
        let factors = self
            .factors
            .iter()
            .zip(&p.factors)
            .map(|(r, c)| {
                if c.len() != r.rank() {
                    return Err(Error::SpaceMismatch);
                }
                let mut v = vec![r.field().zero(); r.cols()];
                for (row, x) in r.basis().iter().zip(c) {
                    v = vector::axpy(&v, x, row);
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        MppPoint::new(factors)
    }

    /// Echelon basis of the linear span `⟨ν(Y)⟩` inside the ambient space.
    pub fn embedded_span(&self, space: &MultiProjectiveSpace) -> Rref {
        let mut vectors = vec![vec![space.field().one()]];
        for (r, &d) in self.factors.iter().zip(space.degrees()) {
            let factor_span = monomials::symmetric_power_span(r.basis(), d);
            vectors = vectors
                .iter()
                .flat_map(|a| factor_span.iter().map(move |b| vector::kron(a, b)))
                .collect();
        }
        Rref::span(space.field(), space.ambient_len(), &vectors).expect("shapes agree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::{coordinates, Matrix};
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn segre_examples() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], q()).unwrap();
        let p = MppPoint::from_ints(q(), &[&[1, 0], &[1, 0]]).unwrap();
        assert_eq!(embed(&s, &p).unwrap(), Tensor::from_ints(q(), &[1, 0, 0, 0]).unwrap());
        let p = MppPoint::from_ints(q(), &[&[1, 1], &[1, 2]]).unwrap();
        assert_eq!(embed(&s, &p).unwrap(), Tensor::from_ints(q(), &[1, 2, 1, 2]).unwrap());
    }

    #[test]
    fn veronese_conic() {
        let s = MultiProjectiveSpace::veronese(1, 2, q()).unwrap();
        let p = MppPoint::from_ints(q(), &[&[1, 1]]).unwrap();
        assert_eq!(embed(&s, &p).unwrap(), Tensor::from_ints(q(), &[1, 1, 1]).unwrap());
        let p = MppPoint::from_ints(q(), &[&[1, 2]]).unwrap();
        assert_eq!(embed(&s, &p).unwrap(), Tensor::from_ints(q(), &[1, 2, 4]).unwrap());
    }

    #[test]
    fn degenerate_factor_is_constant() {
        let s = MultiProjectiveSpace::segre(vec![1, 0], q()).unwrap();
        let p = MppPoint::from_ints(q(), &[&[1, 3], &[5]]).unwrap();
        assert_eq!(embed(&s, &p).unwrap(), Tensor::from_ints(q(), &[1, 3]).unwrap());
    }

    #[test]
    fn zero_factor_rejected() {
        assert_eq!(MppPoint::from_ints(q(), &[&[1, 0], &[0, 0]]), Err(Error::ZeroFactor(1)));
        assert_eq!(Tensor::from_ints(q(), &[0, 0]), Err(Error::ZeroTensor));
    }

    #[test]
    fn wrong_shape_rejected() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], q()).unwrap();
        let p = MppPoint::from_ints(q(), &[&[1, 0, 0], &[1, 0]]).unwrap();
        assert_eq!(embed(&s, &p), Err(Error::SpaceMismatch));
    }

    #[test]
    fn line_points() {
        let a = vec![q().one(), q().zero()];
        let w = vec![q().zero(), q().one()];
        assert_eq!(line_point(&a, &w, &q().one()).unwrap(), vec![q().one(), q().one()]);
        assert_eq!(line_point(&a, &w, &q().zero()).unwrap(), a);
        assert!(matches!(
            line_point(&a, &[q().one()], &q().one()),
            Err(Error::DimensionMismatch { .. })
        ));
        // a lies on the line spanned by a + w and a - w with coordinates (1/2, 1/2)
        let u = line_point(&a, &w, &q().from_i64(1)).unwrap();
        let v = line_point(&a, &w, &q().from_i64(-1)).unwrap();
        let g = Matrix::from_columns(q(), &[u, v]).unwrap();
        let c = coordinates(&g, &a).unwrap().unwrap();
        let half = q().parse_scalar("1/2").unwrap();
        assert_eq!(c.coefficients, vec![half.clone(), half]);
    }

    #[test]
    fn subspace_membership_and_lifting() {
        let s = MultiProjectiveSpace::segre(vec![1, 2], q()).unwrap();
        let y = SubspaceSpec::new(
            &s,
            vec![
                vec![vec![q().one(), q().zero()], vec![q().zero(), q().one()]],
                vec![vec![q().one(), q().one(), q().zero()]],
            ],
        )
        .unwrap();
        assert_eq!(y.dims(), vec![1, 0]);
        let p = MppPoint::from_ints(q(), &[&[2, 3], &[2, 2, 0]]).unwrap();
        assert!(y.contains_point(&p));
        let red = y.point_coordinates(&p).unwrap();
        assert_eq!(y.lift_point(&red).unwrap(), p);
        let off = MppPoint::from_ints(q(), &[&[2, 3], &[1, 0, 0]]).unwrap();
        assert!(!y.contains_point(&off));
        assert!(y.point_coordinates(&off).is_none());
    }

    #[test]
    fn dependent_subspace_basis_rejected() {
        let s = MultiProjectiveSpace::segre(vec![1], q()).unwrap();
        let b = vec![vec![vec![q().one(), q().one()], vec![q().from_i64(2), q().from_i64(2)]]];
        assert_eq!(SubspaceSpec::new(&s, b), Err(Error::Dependent));
    }

    #[test]
    fn embedded_span_of_veronese_line() {
        // The span of ν_2 of the line {x2 = 0} in P^2 is the 3 monomials in x0, x1.
        let s = MultiProjectiveSpace::veronese(2, 2, q()).unwrap();
        let y = SubspaceSpec::new(
            &s,
            vec![vec![
                vec![q().one(), q().zero(), q().zero()],
                vec![q().zero(), q().one(), q().zero()],
            ]],
        )
        .unwrap();
        let span = y.embedded_span(&s);
        assert_eq!(span.rank(), 3);
        let inside = embed(&s, &MppPoint::from_ints(q(), &[&[3, -1, 0]]).unwrap()).unwrap();
        assert!(span.contains(inside.coords()));
        let outside = embed(&s, &MppPoint::from_ints(q(), &[&[1, 0, 1]]).unwrap()).unwrap();
        assert!(!span.contains(outside.coords()));
    }

    fn small_vec(len: usize) -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-5i64..=5, len).prop_filter("nonzero", |v| v.iter().any(|&x| x != 0))
    }

    proptest! {
        #[test]
        fn embedding_is_projectively_invariant(
            a in small_vec(2), b in small_vec(3), s1 in 1i64..7, s2 in -7i64..-1,
            deg in 1usize..=3, p in prop_oneof![Just(0u64), Just(7), Just(11)],
        ) {
            let f = if p == 0 { q() } else { FieldSpec::Prime(p) };
            let s = MultiProjectiveSpace::new(vec![1, 2], vec![deg, 1], f).unwrap();
            let pt = |x: i64, y: i64| {
                MppPoint::new(vec![
                    a.iter().map(|&v| f.from_i64(v * x)).collect(),
                    b.iter().map(|&v| f.from_i64(v * y)).collect(),
                ])
            };
            if let (Ok(p1), Ok(p2)) = (pt(1, 1), pt(s1, s2)) {
                prop_assert_eq!(embed(&s, &p1).unwrap(), embed(&s, &p2).unwrap());
            }
        }

        #[test]
        fn segre_is_outer_product(a in small_vec(2), b in small_vec(3), c in small_vec(2)) {
            let s = MultiProjectiveSpace::segre(vec![1, 2, 1], q()).unwrap();
            let p = MppPoint::from_ints(q(), &[&a, &b, &c]).unwrap();
            let t = embed(&s, &p).unwrap();
            let mut direct = Vec::new();
            for x in p.factor(0) {
                for y in p.factor(1) {
                    for z in p.factor(2) {
                        direct.push(&(x * y) * z);
                    }
                }
            }
            prop_assert_eq!(t, Tensor::new(direct).unwrap());
        }
    }
}
