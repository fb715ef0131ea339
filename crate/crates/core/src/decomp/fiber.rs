use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{MppPoint, MultiProjectiveSpace};

/// Two points sharing the fiber in which only `free_factor` varies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberViolation {
    pub first: usize,
    pub second: usize,
    pub free_factor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiberReport {
    pub holds: bool,
    pub violations: Vec<FiberViolation>,
}

/// Checks that no fiber `{o_1} × ⋯ × P^{n_i} × ⋯ × {o_k}` contains two points
/// of `points`, comparing canonical coordinates factor by factor.
///
/// Every minimal decomposition on a Segre variety satisfies this, so a
/// violation certifies non-minimality.
pub fn fiber_condition(space: &MultiProjectiveSpace, points: &[MppPoint]) -> Result<FiberReport> {
    if !space.is_segre() {
        return Err(Error::UnsupportedDegree);
    }
    for p in points {
        space.check_point(p)?;
    }
    let mut violations = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let differing: Vec<usize> = (0..space.num_factors())
                .filter(|&f| points[i].factor(f) != points[j].factor(f))
                .collect();
            if let [free_factor] = differing[..] {
                violations.push(FiberViolation { first: i, second: j, free_factor });
            }
        }
    }
    Ok(FiberReport { holds: violations.is_empty(), violations })
}
