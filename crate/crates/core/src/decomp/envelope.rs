use crate::error::{Error, Result};
use crate::exactlin::{vector, Rref, Scalar};
use crate::geometry::{MppPoint, MultiProjectiveSpace, SubspaceSpec, Tensor};

/// Minimal sub-multiprojective space containing a point set or supporting a
/// tensor, stored as per-factor echelon bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Envelope {
    subspace: SubspaceSpec,
}

impl Envelope {
    pub fn subspace(&self) -> &SubspaceSpec {
        &self.subspace
    }

    pub fn into_subspace(self) -> SubspaceSpec {
        self.subspace
    }

    /// Reduced dimensions `m_i`.
    pub fn dims(&self) -> Vec<usize> {
        self.subspace.dims()
    }

    /// Whether the envelope is the whole space.
    pub fn is_full(&self) -> bool {
        self.subspace.is_full()
    }
}

/// `∏ ⟨π_i(A)⟩`: the span of the `i`-th coordinates of the points, per factor.
pub fn set_envelope(space: &MultiProjectiveSpace, points: &[MppPoint]) -> Result<Envelope> {
    if points.is_empty() {
        return Err(Error::EmptySet);
    }
    for p in points {
        space.check_point(p)?;
    }
    let factors = (0..space.num_factors())
        .map(|i| {
            let vs: Vec<Vec<Scalar>> = points.iter().map(|p| p.factor(i).to_vec()).collect();
            Rref::span(space.field(), space.factor_len(i), &vs).expect("validated shapes")
        })
        .collect();
    Ok(Envelope { subspace: SubspaceSpec::from_rrefs(factors) })
}

/// Column vectors of the mode-`i` flattening of `coords`.
fn mode_fibers(space: &MultiProjectiveSpace, coords: &[Scalar], mode: usize) -> Vec<Vec<Scalar>> {
    let mut fibers: Vec<Vec<Scalar>> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for (flat, x) in coords.iter().enumerate() {
        let mut multi = space.multi_index(flat);
        let row = multi[mode];
        multi[mode] = 0;
        let key = space.flat_index(&multi);
        let idx = *slot.entry(key).or_insert_with(|| {
            fibers.push(vec![space.field().zero(); space.factor_len(mode)]);
            fibers.len() - 1
        });
        fibers[idx][row] = x.clone();
    }
    fibers
}

/// Factor-wise column spans of the flattenings of `q`; `q` is concise exactly
/// when every factor is full. Only defined for Segre spaces.
pub fn tensor_envelope(space: &MultiProjectiveSpace, q: &Tensor) -> Result<Envelope> {
    if !space.is_segre() {
        return Err(Error::UnsupportedDegree);
    }
    space.check_tensor(q)?;
    let factors = (0..space.num_factors())
        .map(|i| {
            let fibers = mode_fibers(space, q.coords(), i);
            Rref::span(space.field(), space.factor_len(i), &fibers).expect("validated shapes")
        })
        .collect();
    Ok(Envelope { subspace: SubspaceSpec::from_rrefs(factors) })
}

/// Whether every flattening of `q` has full rank.
pub fn is_concise(space: &MultiProjectiveSpace, q: &Tensor) -> Result<bool> {
    Ok(tensor_envelope(space, q)?.is_full())
}

/// Coordinates of `q` in the tensor basis induced by the factor bases of `sub`,
/// together with the reduced space they live on.
///
/// With echelon bases the coordinate of a basis tensor is the entry of `q` at
/// the corresponding pivot multi-index; the result is checked by extending
/// back, so a tensor outside `⟨ν(sub)⟩` yields `NotContained`.
pub fn restrict_to_subspace(
    space: &MultiProjectiveSpace,
    q: &Tensor,
    sub: &SubspaceSpec,
) -> Result<(MultiProjectiveSpace, Tensor)> {
    if !space.is_segre() {
        return Err(Error::UnsupportedDegree);
    }
    space.check_tensor(q)?;
    if sub.factors().len() != space.num_factors() {
        return Err(Error::SpaceMismatch);
    }
    let reduced = sub.reduced_space(space)?;
    let coords: Vec<Scalar> = (0..reduced.ambient_len())
        .map(|flat| {
            let multi = reduced.multi_index(flat);
            let full: Vec<usize> =
                multi.iter().enumerate().map(|(i, &j)| sub.factor(i).pivots()[j]).collect();
            q.coords()[space.flat_index(&full)].clone()
        })
        .collect();
    let restricted = Tensor::new(coords).map_err(|_| Error::NotContained)?;
    if extend_from_subspace(space, sub, &restricted)? != *q {
        return Err(Error::NotContained);
    }
    Ok((reduced, restricted))
}

pub fn restrict_to_envelope(
    space: &MultiProjectiveSpace,
    q: &Tensor,
    envelope: &Envelope,
) -> Result<(MultiProjectiveSpace, Tensor)> {
    restrict_to_subspace(space, q, &envelope.subspace)
}

/// Inverse of [`restrict_to_subspace`]: `Σ_J c_J ⊗_i b_{i,j_i}`.
pub fn extend_from_subspace(
    space: &MultiProjectiveSpace,
    sub: &SubspaceSpec,
    reduced_tensor: &Tensor,
) -> Result<Tensor> {
    if !space.is_segre() {
        return Err(Error::UnsupportedDegree);
    }
    let reduced = sub.reduced_space(space)?;
    reduced.check_tensor(reduced_tensor)?;
    let mut out = vec![space.field().zero(); space.ambient_len()];
    for (flat, c) in reduced_tensor.coords().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let multi = reduced.multi_index(flat);
        let mut term = vec![c.clone()];
        for (i, &j) in multi.iter().enumerate() {
            term = vector::kron(&term, &sub.factor(i).basis()[j]);
        }
        out = out.iter().zip(&term).map(|(a, b)| a + b).collect();
    }
    Tensor::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::geometry::{embed, random_point, seeded_rng};
    use rand::Rng;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn pt(a: &[i64], b: &[i64]) -> MppPoint {
        MppPoint::from_ints(q(), &[a, b]).unwrap()
    }

    #[test]
    fn set_envelope_examples() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], q()).unwrap();
        let e = set_envelope(&s, &[pt(&[1, 0], &[1, 0]), pt(&[1, 0], &[0, 1])]).unwrap();
        assert_eq!(e.dims(), vec![0, 1]);
        let e = set_envelope(&s, &[pt(&[1, 0], &[1, 0]), pt(&[0, 1], &[0, 1])]).unwrap();
        assert_eq!(e.dims(), vec![1, 1]);
        let e = set_envelope(&s, &[pt(&[1, 3], &[2, 1])]).unwrap();
        assert_eq!(e.dims(), vec![0, 0]);
        assert_eq!(set_envelope(&s, &[]), Err(Error::EmptySet));
    }

    #[test]
    fn tensor_envelope_examples() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], q()).unwrap();
        let e = tensor_envelope(&s, &Tensor::from_ints(q(), &[1, 0, 0, 0]).unwrap()).unwrap();
        assert_eq!(e.dims(), vec![0, 0]);
        let e = tensor_envelope(&s, &Tensor::from_ints(q(), &[1, 0, 0, 1]).unwrap()).unwrap();
        assert_eq!(e.dims(), vec![1, 1]);
        assert!(e.is_full());
        // supported on P^1 × {(1:0:0)} inside P^1 × P^2
        let s = MultiProjectiveSpace::segre(vec![1, 2], q()).unwrap();
        let e = tensor_envelope(&s, &Tensor::from_ints(q(), &[1, 0, 0, 3, 0, 0]).unwrap()).unwrap();
        assert_eq!(e.dims(), vec![0, 0]);
        let e = tensor_envelope(&s, &Tensor::from_ints(q(), &[1, 0, 0, 0, 0, 0]).unwrap())
            .unwrap();
        assert_eq!(e.dims()[1], 0);
        let e = tensor_envelope(&s, &Tensor::from_ints(q(), &[1, 0, 0, 0, 1, 0]).unwrap())
            .unwrap();
        assert_eq!(e.dims(), vec![1, 1]);
    }

    #[test]
    fn veronese_tensor_envelope_unsupported() {
        let s = MultiProjectiveSpace::veronese(1, 2, q()).unwrap();
        let t = Tensor::from_ints(q(), &[1, 0, 1]).unwrap();
        assert_eq!(tensor_envelope(&s, &t), Err(Error::UnsupportedDegree));
    }

    #[test]
    fn restrict_examples() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], q()).unwrap();
        let r1 = embed(&s, &pt(&[1, 2], &[3, 1])).unwrap();
        let env = tensor_envelope(&s, &r1).unwrap();
        let (red, t) = restrict_to_envelope(&s, &r1, &env).unwrap();
        assert_eq!(red.dims(), &[0, 0]);
        assert_eq!(t, Tensor::from_ints(q(), &[1]).unwrap());

        let id = Tensor::from_ints(q(), &[1, 0, 0, 1]).unwrap();
        let env = tensor_envelope(&s, &id).unwrap();
        let (_, t) = restrict_to_envelope(&s, &id, &env).unwrap();
        assert_eq!(t, id);

        // the identity tensor is not supported on the rank-one envelope
        let env = tensor_envelope(&s, &r1).unwrap();
        assert_eq!(restrict_to_envelope(&s, &id, &env), Err(Error::NotContained));
    }

    #[test]
    fn restrict_extend_round_trip() {
        let mut rng = seeded_rng(5);
        let f = q();
        let s = MultiProjectiveSpace::segre(vec![2, 1, 2], f).unwrap();
        for _ in 0..50 {
            let k = rng.gen_range(1..=3);
            let pts: Vec<MppPoint> = (0..k).map(|_| random_point(&s, &mut rng, 3)).collect();
            // a random sub-multiprojective space around the points
            let env = set_envelope(&s, &pts).unwrap();
            let mut t = vec![f.zero(); s.ambient_len()];
            for p in &pts {
                let c = f.from_i64(rng.gen_range(1..5));
                t = vector::axpy(&t, &c, embed(&s, p).unwrap().coords());
            }
            let Ok(target) = Tensor::new(t) else { continue };
            let (_, red) = restrict_to_envelope(&s, &target, &env).unwrap();
            assert_eq!(extend_from_subspace(&s, env.subspace(), &red).unwrap(), target);
            // the tensor envelope sits inside the set envelope
            let te = tensor_envelope(&s, &target).unwrap();
            assert!(env.subspace().contains_subspace(te.subspace()));
        }
    }

    #[test]
    fn rank_one_tensors_have_point_envelopes() {
        let mut rng = seeded_rng(8);
        for f in [q(), FieldSpec::Prime(3)] {
            let s = MultiProjectiveSpace::segre(vec![1, 2, 1], f).unwrap();
            for _ in 0..30 {
                let p = random_point(&s, &mut rng, 4);
                let e = tensor_envelope(&s, &embed(&s, &p).unwrap()).unwrap();
                assert_eq!(e.dims(), vec![0, 0, 0]);
                assert!(e.subspace().contains_point(&p));
            }
        }
    }
}
