use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::exactlin::Scalar;
use crate::geometry::{seeded_rng, SubspaceSpec};

use super::{
    check_minimality, escape, factor_span, lift_last_factor, line_step, require_irredundant,
    Construction, ConstructionConfig, Provenance,
};

/// From `A` irredundantly spanning `q` with `⟨A⟩ = M ⊊ P^n` on a Veronese
/// variety of degree `d`, an irredundant spanning set of cardinality
/// `#A + d·(target_n − dim M)` spanning a `target_n`-dimensional space.
///
/// Each step replaces one point `a` by `d + 1` points on a random line
/// through `a` meeting the current span only in `a`.
pub fn veronese_extend(d: &Decomposition, target_n: usize, cfg: &ConstructionConfig) -> Result<Construction> {
    let space = d.space();
    if !space.is_veronese() {
        return Err(Error::NotVeronese);
    }
    let n = space.dims()[0];
    if target_n > n {
        return Err(Error::DimensionMismatch { expected: n, found: target_n });
    }
    require_irredundant(d)?;
    let current = factor_span(space, d.points(), 0).rank() - 1;
    if target_n < current {
        return Err(Error::TargetTooSmall { target: target_n, current });
    }
    let minimality = check_minimality(d, cfg.minimality, &cfg.oracle)?;
    let (out, retries, choices) = line_steps(d, 0, target_n - current, cfg)?;
    Ok(Construction {
        decomposition: out,
        provenance: Provenance {
            operation: "veronese_extend".into(),
            seed: cfg.seed,
            retries,
            choices,
            minimality,
        },
    })
}

fn line_steps(
    d: &Decomposition,
    factor: usize,
    steps: usize,
    cfg: &ConstructionConfig,
) -> Result<(Decomposition, usize, Vec<super::Choice>)> {
    let mut rng = seeded_rng(cfg.seed);
    let mut cur = d.clone();
    let mut retries = 0;
    let mut choices = Vec::with_capacity(steps);
    for _ in 0..steps {
        let (next, choice, n) = line_step(&cur, factor, &mut rng, cfg)?;
        cur = next;
        retries += n;
        choices.push(choice);
    }
    Ok((cur, retries, choices))
}

/// Extension across a new last factor on a Segre–Veronese variety.
///
/// `d` lives on `Y × {o}` inside `W = Y × P^m`, the last factor having degree
/// `e`. For `e = 1` this is [`escape`] (cardinality `ρ + 1`); for `e > 1` the
/// line construction runs `m` times on the last factor (cardinality
/// `ρ + e·m`, last-factor envelope all of `P^m`). A last factor `P^0` is
/// lifted to `P^m` with `o = (1:0:⋯:0)`, which needs `m`.
pub fn sv_extend(d: &Decomposition, m: Option<usize>, cfg: &ConstructionConfig) -> Result<Construction> {
    let k = d.space().num_factors() - 1;
    let d = match (d.space().dims()[k], m) {
        (0, Some(m)) if m > 0 => lift_last_factor(d, m)?,
        (0, m) => return Err(Error::BadM(m.unwrap_or(0))),
        (n, Some(m)) if n != m => return Err(Error::DimensionMismatch { expected: m, found: n }),
        _ => d.clone(),
    };
    let space = d.space();
    let m = space.dims()[k];
    let first = d.points().first().ok_or(Error::EmptySet)?;
    let mut bases: Vec<Vec<Vec<Scalar>>> = (0..k)
        .map(|i| SubspaceSpec::full(space).factor(i).basis().to_vec())
        .collect();
    bases.push(vec![first.factor(k).to_vec()]);
    let y = SubspaceSpec::new(space, bases)?;
    if !d.points().iter().all(|p| y.contains_point(p))
        || !y.embedded_span(space).contains(d.target().coords())
    {
        return Err(Error::NotContainedInY);
    }
    if space.degrees()[k] == 1 {
        let mut c = escape(&d, &y, cfg)?;
        c.provenance.operation = "sv_extend".into();
        return Ok(c);
    }
    require_irredundant(&d)?;
    let minimality = check_minimality(&d, cfg.minimality, &cfg.oracle)?;
    let (out, retries, choices) = line_steps(&d, k, m, cfg)?;
    Ok(Construction {
        decomposition: out,
        provenance: Provenance {
            operation: "sv_extend".into(),
            seed: cfg.seed,
            retries,
            choices,
            minimality,
        },
    })
}
