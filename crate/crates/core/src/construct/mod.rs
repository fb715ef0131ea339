//! Constructions of irredundant spanning sets of cardinality above the rank.
//!
//! Every "general" choice is a seeded random draw followed by exact checks of
//! the conditions the argument needs, retried up to `max_retries` times. Each
//! returned decomposition has been verified irredundant.

mod escape;
mod extend;
mod plus_one;

pub use escape::{concise_plus_m, escape};
pub use extend::{sv_extend, veronese_extend};
pub use plus_one::{chain, plus_one};

use rand::Rng;
use serde::Serialize;

use crate::decomp::{verify_irredundant, Decomposition};
use crate::error::{Error, Result};
use crate::exactlin::{vector, Rref, Scalar};
use crate::geometry::{
    distinct_nonzero_scalars, random_vector, seeded_rng, MppPoint, MultiProjectiveSpace, SeededRng,
    Tensor, DEFAULT_RATIONAL_BOX,
};
use crate::oracle::{brute_rank, OracleConfig};

/// How the minimality precondition of an input decomposition is handled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Minimality {
    /// Not checked and not claimed.
    #[default]
    Unchecked,
    /// The caller vouches for minimality; recorded in the provenance.
    Asserted,
    /// Certified by the exhaustive oracle (finite fields only).
    Certify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionConfig {
    pub seed: u64,
    pub max_retries: usize,
    pub rational_box: i64,
    pub minimality: Minimality,
    /// Used only when `minimality` is `Certify`.
    pub oracle: OracleConfig,
}

impl Default for ConstructionConfig {
    fn default() -> Self {
        ConstructionConfig {
            seed: 0,
            max_retries: 64,
            rational_box: DEFAULT_RATIONAL_BOX,
            minimality: Minimality::Unchecked,
            oracle: OracleConfig::default(),
        }
    }
}

impl ConstructionConfig {
    pub fn with_seed(seed: u64) -> Self {
        ConstructionConfig { seed, ..Default::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MinimalityRecord {
    Unchecked,
    Asserted,
    Certified { rank: usize },
}

/// A replaced point and the factor the replacement moved along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Choice {
    pub point: usize,
    pub factor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub operation: String,
    pub seed: u64,
    /// Random draws rejected before success, summed over all steps.
    pub retries: usize,
    /// One entry per replacement step, indices into that step's input.
    pub choices: Vec<Choice>,
    pub minimality: MinimalityRecord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Construction {
    pub decomposition: Decomposition,
    pub provenance: Provenance,
}

fn require_irredundant(d: &Decomposition) -> Result<()> {
    if verify_irredundant(d).irredundant {
        Ok(())
    } else {
        Err(Error::NotIrredundantInput)
    }
}

fn check_minimality(d: &Decomposition, policy: Minimality, oracle: &OracleConfig) -> Result<MinimalityRecord> {
    match policy {
        Minimality::Unchecked => Ok(MinimalityRecord::Unchecked),
        Minimality::Asserted => Ok(MinimalityRecord::Asserted),
        Minimality::Certify => {
            let rank = brute_rank(d.space(), d.target(), oracle)?.rank;
            if rank < d.len() {
                return Err(Error::NotMinimal { size: d.len(), rank });
            }
            Ok(MinimalityRecord::Certified { rank })
        }
    }
}

/// Runs `attempt` with one shared generator until it yields a value; returns
/// it with the number of rejected attempts.
fn retry<T>(
    rng: &mut SeededRng,
    max_retries: usize,
    mut attempt: impl FnMut(&mut SeededRng) -> Result<Option<T>>,
) -> Result<(T, usize)> {
    for n in 0..max_retries.max(1) {
        if let Some(v) = attempt(rng)? {
            return Ok((v, n));
        }
    }
    Err(Error::GenericityExhausted(max_retries.max(1)))
}

/// `points` without index `skip`, followed by `extra`.
fn replace(points: &[MppPoint], skip: usize, extra: Vec<MppPoint>) -> Vec<MppPoint> {
    points
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != skip)
        .map(|(_, p)| p.clone())
        .chain(extra)
        .collect()
}

/// Span of the `factor`-th coordinates of `points`.
fn factor_span(space: &MultiProjectiveSpace, points: &[MppPoint], factor: usize) -> Rref {
    let vs: Vec<Vec<Scalar>> = points.iter().map(|p| p.factor(factor).to_vec()).collect();
    Rref::span(space.field(), space.factor_len(factor), &vs).expect("validated points")
}

/// Random vector outside `avoid`, or `None` if the draw landed inside.
fn random_direction(
    space: &MultiProjectiveSpace,
    factor: usize,
    avoid: &Rref,
    rng: &mut SeededRng,
    rational_box: i64,
) -> Option<Vec<Scalar>> {
    let w = random_vector(space.field(), space.factor_len(factor), rng, rational_box);
    (!avoid.contains(&w)).then_some(w)
}

/// One step of the line construction on `factor`: a random point `a` of the
/// set is replaced by `degree + 1` points `a + t_j·w` on a random line through
/// `a` leaving the factor span of the set. Succeeds when the result is
/// irredundant and the factor span grew by one.
fn line_step(
    d: &Decomposition,
    factor: usize,
    rng: &mut SeededRng,
    cfg: &ConstructionConfig,
) -> Result<(Decomposition, Choice, usize)> {
    let space = d.space();
    let degree = space.degrees()[factor];
    let span = factor_span(space, d.points(), factor);
    // surface FieldTooSmall before any retry
    distinct_nonzero_scalars(space.field(), degree + 1, &mut seeded_rng(0), cfg.rational_box)?;
    retry(rng, cfg.max_retries, |rng| {
        let idx = rng.gen_range(0..d.len());
        let Some(w) = random_direction(space, factor, &span, rng, cfg.rational_box) else {
            return Ok(None);
        };
        let ts = distinct_nonzero_scalars(space.field(), degree + 1, rng, cfg.rational_box)?;
        let a = &d.points()[idx];
        let g = ts
            .iter()
            .map(|t| a.with_factor(factor, vector::axpy(a.factor(factor), t, &w)))
            .collect::<Result<Vec<_>>>()?;
        let Ok(b) = d.with_points(replace(d.points(), idx, g)) else { return Ok(None) };
        if factor_span(space, b.points(), factor).rank() != span.rank() + 1 {
            return Ok(None);
        }
        if !verify_irredundant(&b).irredundant {
            return Ok(None);
        }
        Ok(Some((b, Choice { point: idx, factor })))
    })
    .map(|((b, c), n)| (b, c, n))
}

/// Re-embeds a decomposition whose last factor is `P^0` into the space with
/// last factor `P^m`, placing every point over `o = (1:0:⋯:0)`.
fn lift_last_factor(d: &Decomposition, m: usize) -> Result<Decomposition> {
    let space = d.space();
    let k = space.num_factors() - 1;
    let mut dims = space.dims().to_vec();
    dims[k] = m;
    let lifted = space.with_dims(dims)?;
    let f = space.field();
    let o: Vec<Scalar> = (0..=m).map(|j| if j == 0 { f.one() } else { f.zero() }).collect();
    let points = d
        .points()
        .iter()
        .map(|p| p.with_factor(k, o.clone()))
        .collect::<Result<Vec<_>>>()?;
    // o^e is the first monomial, so the target sits in the first slot of each
    // last-factor block
    let block = lifted.monomial_count(k);
    let mut coords = Vec::with_capacity(lifted.ambient_len());
    for x in d.target().coords() {
        coords.push(x.clone());
        coords.extend((1..block).map(|_| f.zero()));
    }
    Decomposition::new(lifted, points, Tensor::new(coords)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;
    use crate::geometry::embed;

    #[test]
    fn lifting_preserves_irredundancy() {
        let f = FieldSpec::Rationals;
        let s = MultiProjectiveSpace::segre(vec![1, 0], f).unwrap();
        let pts = vec![
            MppPoint::from_ints(f, &[&[1, 0], &[1]]).unwrap(),
            MppPoint::from_ints(f, &[&[0, 1], &[1]]).unwrap(),
        ];
        let d = Decomposition::new(s, pts, Tensor::from_ints(f, &[1, 1]).unwrap()).unwrap();
        let l = lift_last_factor(&d, 2).unwrap();
        assert_eq!(l.space().dims(), &[1, 2]);
        assert_eq!(l.target(), &Tensor::from_ints(f, &[1, 0, 0, 1, 0, 0]).unwrap());
        assert_eq!(embed(l.space(), &l.points()[1]).unwrap().coords()[3], f.one());
        assert!(verify_irredundant(&l).irredundant);
    }

    #[test]
    fn retry_reports_exhaustion() {
        let mut rng = seeded_rng(0);
        let r: Result<((), usize)> = retry(&mut rng, 5, |_| Ok(None));
        assert_eq!(r, Err(Error::GenericityExhausted(5)));
        let r = retry(&mut rng, 5, |rng| Ok(rng.gen_bool(0.5).then_some(())));
        assert!(r.is_ok());
    }
}
