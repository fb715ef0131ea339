use crate::decomp::{verify_irredundant, Decomposition};
use crate::error::{Error, Result};
use crate::exactlin::{vector, Scalar};
use crate::geometry::{distinct_nonzero_scalars, embed, random_vector, seeded_rng, MppPoint};

use super::{
    check_minimality, replace, require_irredundant, retry, Choice, Construction, ConstructionConfig,
    Minimality, MinimalityRecord, Provenance,
};

/// First `(point, factor)` in index order whose fiber has a linear span not
/// contained in `⟨ν(A)⟩`.
fn escaping_fiber(d: &Decomposition) -> Option<(usize, usize)> {
    let space = d.space();
    let f = space.field();
    let u = d.span();
    for (idx, a) in d.points().iter().enumerate() {
        for i in 0..space.num_factors() {
            let n = space.factor_len(i);
            let escapes = (0..n).any(|j| {
                let e: Vec<Scalar> = (0..n).map(|c| if c == j { f.one() } else { f.zero() }).collect();
                let p = a.with_factor(i, e).expect("standard vector");
                !u.contains(embed(space, &p).expect("point of the space").coords())
            });
            if escapes {
                return Some((idx, i));
            }
        }
    }
    None
}

/// An irredundant spanning set of cardinality `#A + 1` from a minimal one.
///
/// Finds a point `a` and factor `i` whose fiber escapes `U = ⟨ν(A)⟩`, then
/// replaces `a` by two points `u, v` that agree with `a` off factor `i` and
/// whose `i`-th coordinates lie on a random line through `a_i`, with `a_i`
/// in their span. The draws must avoid the `i`-th coordinates of the other
/// points and keep `ν(u), ν(v)` outside `U`.
///
/// The guarantee needs `#A` to be the rank; see [`Minimality`].
pub fn plus_one(d: &Decomposition, cfg: &ConstructionConfig) -> Result<Construction> {
    let space = d.space();
    if !space.is_segre() {
        return Err(Error::UnsupportedDegree);
    }
    if !space.is_positive() {
        return Err(Error::DegenerateSpace);
    }
    require_irredundant(d)?;
    let minimality = check_minimality(d, cfg.minimality, &cfg.oracle)?;
    let field = space.field();
    distinct_nonzero_scalars(field, 2, &mut seeded_rng(0), cfg.rational_box)?;

    let (idx, i) = escaping_fiber(d).ok_or(Error::NoEscapingFiber)?;
    let a = &d.points()[idx];
    let u_span = d.span();
    let taken: Vec<&[Scalar]> = d
        .points()
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != idx)
        .map(|(_, p)| p.factor(i))
        .collect();

    let mut rng = seeded_rng(cfg.seed);
    let (b, retries) = retry(&mut rng, cfg.max_retries, |rng| {
        let w = random_vector(field, space.factor_len(i), rng, cfg.rational_box);
        if vector::proportional(&w, a.factor(i)) {
            return Ok(None);
        }
        let ts = distinct_nonzero_scalars(field, 2, rng, cfg.rational_box)?;
        let new: Vec<MppPoint> = ts
            .iter()
            .map(|t| a.with_factor(i, vector::axpy(a.factor(i), t, &w)))
            .collect::<Result<_>>()?;
        if new.iter().any(|p| taken.contains(&p.factor(i))) {
            return Ok(None);
        }
        if new.iter().any(|p| u_span.contains(embed(space, p).expect("valid point").coords())) {
            return Ok(None);
        }
        let b = d.with_points(replace(d.points(), idx, new))?;
        Ok(verify_irredundant(&b).irredundant.then_some(b))
    })?;

    Ok(Construction {
        decomposition: b,
        provenance: Provenance {
            operation: "plus_one".into(),
            seed: cfg.seed,
            retries,
            choices: vec![Choice { point: idx, factor: i }],
            minimality,
        },
    })
}

/// Applies [`plus_one`] `steps` times, feeding each output back in.
///
/// Only the first step has the minimality guarantee; later inputs are never
/// minimal, so any step may fail. Successful outputs are still verified.
pub fn chain(d: &Decomposition, steps: usize, cfg: &ConstructionConfig) -> Result<Vec<Construction>> {
    let mut out: Vec<Construction> = Vec::with_capacity(steps);
    for step in 0..steps {
        let input = out.last().map_or(d, |c| &c.decomposition);
        let step_cfg = ConstructionConfig {
            seed: cfg.seed.wrapping_add(step as u64),
            minimality: if step == 0 { cfg.minimality } else { Minimality::Unchecked },
            ..*cfg
        };
        let mut c = plus_one(input, &step_cfg)?;
        c.provenance.operation = format!("chain[{step}]");
        if step > 0 {
            c.provenance.minimality = MinimalityRecord::Unchecked;
        }
        out.push(c);
    }
    Ok(out)
}
