use rand::Rng;

use crate::decomp::{set_envelope, tensor_envelope, verify_irredundant, Decomposition};
use crate::error::{Error, Result};
use crate::exactlin::{coordinates, vector, Matrix, Rref, Scalar};
use crate::geometry::{distinct_nonzero_scalars, random_vector, seeded_rng, MppPoint, SubspaceSpec};

use super::{
    check_minimality, lift_last_factor, random_direction, replace, require_irredundant, retry,
    Choice, Construction, ConstructionConfig, Provenance,
};

/// Checks that the points and the target of `d` live on `Y`.
fn check_inside(d: &Decomposition, y: &SubspaceSpec) -> Result<()> {
    if y.factors().len() != d.space().num_factors() {
        return Err(Error::SpaceMismatch);
    }
    if !d.points().iter().all(|p| y.contains_point(p)) {
        return Err(Error::NotContainedInY);
    }
    if !y.embedded_span(d.space()).contains(d.target().coords()) {
        return Err(Error::NotContainedInY);
    }
    Ok(())
}

/// A hyperplane of factor `k` containing the factor-`k` subspace of `y`,
/// obtained by adding standard vectors.
fn hyperplane_over(y: &Rref) -> Rref {
    let f = y.field();
    let n = y.cols();
    let mut basis: Vec<Vec<Scalar>> = y.basis().to_vec();
    for j in 0..n {
        if basis.len() + 1 == n {
            break;
        }
        let e: Vec<Scalar> = (0..n).map(|c| if c == j { f.one() } else { f.zero() }).collect();
        let cand = Rref::span(f, n, &[basis.clone(), vec![e.clone()]].concat()).expect("shapes");
        if cand.rank() > basis.len() {
            basis.push(e);
        }
    }
    Rref::span(f, n, &basis).expect("shapes")
}

/// From a minimal decomposition of `q` on `Y ⊊ W`, an irredundant spanning
/// set of cardinality `#A + 1` on `W` not contained in `Y`.
///
/// Takes the first factor `k` where `Y` is deficient and a hyperplane `H` of
/// `P^{n_k}` containing `Y_k`; a point `a` is replaced by `u, v` that agree
/// with `a` off factor `k` and have `u_k = a_k + t·w`, `v_k = a_k + s·w` for
/// a direction `w ∉ H` and distinct nonzero `t, s`. The points of `d` are
/// given in the coordinates of `W = d.space()`.
pub fn escape(d: &Decomposition, y: &SubspaceSpec, cfg: &ConstructionConfig) -> Result<Construction> {
    let space = d.space();
    if !space.is_positive() {
        return Err(Error::DegenerateSpace);
    }
    check_inside(d, y)?;
    let k = (0..space.num_factors())
        .find(|&i| !y.factor(i).is_full())
        .ok_or(Error::YEqualsW)?;
    if space.degrees()[k] != 1 {
        return Err(Error::UnsupportedDegree);
    }
    require_irredundant(d)?;
    let minimality = check_minimality(d, cfg.minimality, &cfg.oracle)?;
    let field = space.field();
    distinct_nonzero_scalars(field, 2, &mut seeded_rng(0), cfg.rational_box)?;
    let h = hyperplane_over(y.factor(k));

    let mut rng = seeded_rng(cfg.seed);
    let ((b, idx), retries) = retry(&mut rng, cfg.max_retries, |rng| {
        let idx = rng.gen_range(0..d.len());
        let Some(w) = random_direction(space, k, &h, rng, cfg.rational_box) else {
            return Ok(None);
        };
        let a = &d.points()[idx];
        let ts = distinct_nonzero_scalars(field, 2, rng, cfg.rational_box)?;
        let new: Vec<MppPoint> = ts
            .iter()
            .map(|t| a.with_factor(k, vector::axpy(a.factor(k), t, &w)))
            .collect::<Result<_>>()?;
        let Ok(b) = d.with_points(replace(d.points(), idx, new)) else { return Ok(None) };
        Ok(verify_irredundant(&b).irredundant.then_some((b, idx)))
    })?;
    debug_assert!(b.points().iter().any(|p| !y.contains_point(p)));

    Ok(Construction {
        decomposition: b,
        provenance: Provenance {
            operation: "escape".into(),
            seed: cfg.seed,
            retries,
            choices: vec![Choice { point: idx, factor: k }],
            minimality,
        },
    })
}

/// From a minimal decomposition of a concise `q` on `Y = Y′ × {o}`, an
/// irredundant spanning set of cardinality `#A + m` whose envelope is all of
/// `W = Y′ × P^m`.
///
/// A point `a` is replaced by `(a_1, …, a_{k−1}, c_j)` for random `c_0..c_m`
/// spanning `P^m` with `o` outside the span of any `m` of them. If the last
/// factor of `d.space()` is `P^0` the input is first lifted with
/// `o = (1:0:⋯:0)`; otherwise its dimension must be `m` and all points must
/// share the last coordinate.
pub fn concise_plus_m(d: &Decomposition, m: usize, cfg: &ConstructionConfig) -> Result<Construction> {
    if m < 2 {
        return Err(Error::BadM(m));
    }
    if !d.space().is_segre() {
        return Err(Error::UnsupportedDegree);
    }
    let k = d.space().num_factors() - 1;
    let d = match d.space().dims()[k] {
        0 => lift_last_factor(d, m)?,
        n if n == m => d.clone(),
        n => return Err(Error::DimensionMismatch { expected: m, found: n }),
    };
    let space = d.space();
    let first = d.points().first().ok_or(Error::EmptySet)?;
    let o = first.factor(k).to_vec();
    let mut bases: Vec<Vec<Vec<Scalar>>> = (0..k)
        .map(|i| SubspaceSpec::full(space).factor(i).basis().to_vec())
        .collect();
    bases.push(vec![o.clone()]);
    let y = SubspaceSpec::new(space, bases)?;
    check_inside(&d, &y)?;
    let te = tensor_envelope(space, d.target())?;
    if (0..k).any(|i| !te.subspace().factor(i).is_full()) {
        return Err(Error::NotConcise);
    }
    require_irredundant(&d)?;
    let minimality = check_minimality(&d, cfg.minimality, &cfg.oracle)?;
    let field = space.field();

    let mut rng = seeded_rng(cfg.seed);
    let ((e, idx), retries) = retry(&mut rng, cfg.max_retries, |rng| {
        let idx = rng.gen_range(0..d.len());
        let cs: Vec<Vec<Scalar>> =
            (0..=m).map(|_| random_vector(field, m + 1, rng, cfg.rational_box)).collect();
        let gens = Matrix::from_columns(field, &cs)?;
        let Some(coef) = coordinates(&gens, &o)? else { return Ok(None) };
        if !coef.independent || coef.coefficients.iter().any(Scalar::is_zero) {
            return Ok(None);
        }
        let a = &d.points()[idx];
        let new: Vec<MppPoint> = cs
            .into_iter()
            .map(|c| a.with_factor(k, c))
            .collect::<Result<_>>()?;
        let Ok(e) = d.with_points(replace(d.points(), idx, new)) else { return Ok(None) };
        if !set_envelope(space, e.points())?.is_full() {
            return Ok(None);
        }
        Ok(verify_irredundant(&e).irredundant.then_some((e, idx)))
    })?;

    Ok(Construction {
        decomposition: e,
        provenance: Provenance {
            operation: "concise_plus_m".into(),
            seed: cfg.seed,
            retries,
            choices: vec![Choice { point: idx, factor: k }],
            minimality,
        },
    })
}
