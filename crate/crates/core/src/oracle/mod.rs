//! Exhaustive ground truth over prime fields: rank, the landscape of
//! irredundant spanning sets, gaps, and minimal concise cardinalities.

mod kernel;

pub use kernel::{Kernel, MAX_AMBIENT_LEN, MAX_ORACLE_MODULUS};

use crate::decomp::set_envelope;
use crate::error::{Error, Result};
use crate::geometry::{MppPoint, MultiProjectiveSpace, Tensor};
use crate::par::Strategy;

/// Default cap on the residual vectors a single request may examine.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub budget: u128,
    pub strategy: Strategy,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig { budget: DEFAULT_BUDGET, strategy: Strategy::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    /// Every irredundant spanning set of cardinality `rank`, sorted.
    pub minimal_decompositions: Vec<Vec<MppPoint>>,
    /// Residual vectors examined across all cardinalities up to `rank`.
    pub search_space_size: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapEntry {
    pub t: usize,
    pub nonempty: bool,
    pub witness: Option<Vec<MppPoint>>,
    /// Number of sets when the profile enumerated exhaustively.
    pub count: Option<usize>,
    /// Residual vectors examined for this `t`.
    pub searched: u128,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapProfile {
    pub rank: usize,
    /// Projective dimension `N` of the ambient space.
    pub ambient_dim: usize,
    /// One entry for each `rank ≤ t ≤ N+1`.
    pub entries: Vec<GapEntry>,
}

impl GapProfile {
    pub fn entry(&self, t: usize) -> Option<&GapEntry> {
        self.entries.iter().find(|e| e.t == t)
    }

    /// Empty cardinalities strictly between the rank and `N+1`.
    pub fn gaps(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| !e.nonempty && e.t > self.rank && e.t < self.ambient_dim + 1)
            .map(|e| e.t)
            .collect()
    }

    /// `t,nonempty,witness_count_or_bound`; the last column is the exact
    /// count when known and otherwise `>=1` or `0`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,nonempty,witness_count_or_bound\n");
        for e in &self.entries {
            let count = match (e.count, e.nonempty) {
                (Some(c), _) => c.to_string(),
                (None, true) => ">=1".to_string(),
                (None, false) => "0".to_string(),
            };
            out.push_str(&format!("{},{},{}\n", e.t, e.nonempty, count));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    Exists,
    All,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinConcise {
    pub t: usize,
    pub rank: usize,
    pub witness: Vec<MppPoint>,
    /// Cardinalities `rank ≤ t' < t` where irredundant sets exist but none
    /// is concise.
    pub non_concise_only: Vec<usize>,
    /// Cardinalities below `t` with no irredundant set at all.
    pub empty: Vec<usize>,
    pub search_space_size: u128,
}

/// Running account of residual vectors examined within one request.
struct Meter {
    budget: u128,
    spent: u128,
}

impl Meter {
    fn new(cfg: &OracleConfig) -> Self {
        Meter { budget: cfg.budget, spent: 0 }
    }

    fn sweep(
        &mut self,
        kernel: &Kernel,
        q: &Tensor,
        t: usize,
        first_only: bool,
        cfg: &OracleConfig,
        accept: &(dyn Fn(&[usize]) -> bool + Sync),
    ) -> Result<Vec<Vec<usize>>> {
        let remaining = self.budget - self.spent;
        let out = kernel
            .sweep(q, t, first_only, cfg.strategy, remaining, accept)
            .map_err(|e| match e {
                Error::BudgetExceeded { needed, .. } => Error::BudgetExceeded {
                    needed: needed.saturating_add(self.spent),
                    budget: self.budget,
                },
                e => e,
            })?;
        self.spent += out.examined;
        Ok(out.sets)
    }
}

fn to_points(kernel: &Kernel, sets: Vec<Vec<usize>>) -> Vec<Vec<MppPoint>> {
    sets.into_iter()
        .map(|s| s.into_iter().map(|i| kernel.points()[i].clone()).collect())
        .collect()
}

/// Elements of `S(X, q, t)` on a prebuilt kernel; `Exists` stops at the first.
pub fn spanning_sets_with(
    kernel: &Kernel,
    q: &Tensor,
    t: usize,
    mode: SearchMode,
    cfg: &OracleConfig,
) -> Result<Vec<Vec<MppPoint>>> {
    let sets = Meter::new(cfg).sweep(kernel, q, t, mode == SearchMode::Exists, cfg, &|_| true)?;
    Ok(to_points(kernel, sets))
}

pub fn spanning_sets(
    space: &MultiProjectiveSpace,
    q: &Tensor,
    t: usize,
    mode: SearchMode,
    cfg: &OracleConfig,
) -> Result<Vec<Vec<MppPoint>>> {
    spanning_sets_with(&Kernel::new(space, cfg.budget)?, q, t, mode, cfg)
}

/// X-rank by exhaustion together with all minimal decompositions.
pub fn brute_rank_with(kernel: &Kernel, q: &Tensor, cfg: &OracleConfig) -> Result<RankCertificate> {
    kernel.space().check_tensor(q)?;
    let mut meter = Meter::new(cfg);
    for t in 1..=kernel.space().ambient_len() {
        let sets = meter.sweep(kernel, q, t, false, cfg, &|_| true)?;
        if !sets.is_empty() {
            return Ok(RankCertificate {
                rank: t,
                minimal_decompositions: to_points(kernel, sets),
                search_space_size: meter.spent,
            });
        }
    }
    unreachable!("a nonzero tensor is spanned by at most N+1 points of a nondegenerate variety")
}

pub fn brute_rank(space: &MultiProjectiveSpace, q: &Tensor, cfg: &OracleConfig) -> Result<RankCertificate> {
    brute_rank_with(&Kernel::new(space, cfg.budget)?, q, cfg)
}

/// `S(X, q, t)` for every `r ≤ t ≤ N+1`. With `SearchMode::All` every set is
/// enumerated and counted; with `Exists` one witness per `t` is kept.
pub fn gap_profile_with(
    kernel: &Kernel,
    q: &Tensor,
    mode: SearchMode,
    cfg: &OracleConfig,
) -> Result<GapProfile> {
    let space = kernel.space();
    space.check_tensor(q)?;
    let mut meter = Meter::new(cfg);
    let mut entries: Vec<GapEntry> = Vec::new();
    let mut rank = None;
    for t in 1..=space.ambient_len() {
        let before = meter.spent;
        let sets = meter.sweep(kernel, q, t, mode == SearchMode::Exists, cfg, &|_| true)?;
        if rank.is_none() && sets.is_empty() {
            continue;
        }
        rank.get_or_insert(t);
        entries.push(GapEntry {
            t,
            nonempty: !sets.is_empty(),
            count: (mode == SearchMode::All).then_some(sets.len()),
            witness: to_points(kernel, sets.into_iter().take(1).collect()).pop(),
            searched: meter.spent - before,
        });
    }
    Ok(GapProfile {
        rank: rank.expect("N+1 points always suffice"),
        ambient_dim: space.ambient_dim(),
        entries,
    })
}

pub fn gap_profile(
    space: &MultiProjectiveSpace,
    q: &Tensor,
    mode: SearchMode,
    cfg: &OracleConfig,
) -> Result<GapProfile> {
    gap_profile_with(&Kernel::new(space, cfg.budget)?, q, mode, cfg)
}

/// Smallest `t` admitting an irredundant spanning set of `q` whose envelope
/// is the whole space of the kernel.
pub fn min_concise_t_with(kernel: &Kernel, q: &Tensor, cfg: &OracleConfig) -> Result<MinConcise> {
    let space = kernel.space();
    space.check_tensor(q)?;
    let concise = |set: &[usize]| {
        let pts: Vec<MppPoint> = set.iter().map(|&i| kernel.points()[i].clone()).collect();
        set_envelope(space, &pts).expect("points of the space").is_full()
    };
    let mut meter = Meter::new(cfg);
    let mut rank = None;
    let mut non_concise_only = Vec::new();
    let mut empty = Vec::new();
    for t in 1..=space.ambient_len() {
        if let Some(set) = meter.sweep(kernel, q, t, true, cfg, &concise)?.pop() {
            return Ok(MinConcise {
                t,
                rank: rank.unwrap_or(t),
                witness: to_points(kernel, vec![set]).pop().expect("one set"),
                non_concise_only,
                empty,
                search_space_size: meter.spent,
            });
        }
        if meter.sweep(kernel, q, t, true, cfg, &|_| true)?.is_empty() {
            empty.push(t);
        } else {
            rank.get_or_insert(t);
            non_concise_only.push(t);
        }
    }
    Err(Error::NoConciseWitness(space.ambient_len()))
}

pub fn min_concise_t(space: &MultiProjectiveSpace, q: &Tensor, cfg: &OracleConfig) -> Result<MinConcise> {
    min_concise_t_with(&Kernel::new(space, cfg.budget)?, q, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{fiber_condition, verify_irredundant, Decomposition};
    use crate::exactlin::FieldSpec;
    use crate::geometry::embed;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    #[test]
    fn rank_one_points() {
        let s = MultiProjectiveSpace::segre(vec![1, 2], FieldSpec::Prime(3)).unwrap();
        let p = MppPoint::from_ints(s.field(), &[&[1, 2], &[0, 1, 1]]).unwrap();
        let c = brute_rank(&s, &embed(&s, &p).unwrap(), &cfg()).unwrap();
        assert_eq!(c.rank, 1);
        assert_eq!(c.minimal_decompositions, vec![vec![p]]);
    }

    #[test]
    fn identity_over_gf2_has_rank_two() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], FieldSpec::Prime(2)).unwrap();
        let q = Tensor::from_ints(s.field(), &[1, 0, 0, 1]).unwrap();
        let c = brute_rank(&s, &q, &cfg()).unwrap();
        assert_eq!(c.rank, 2);
        for a in &c.minimal_decompositions {
            let d = Decomposition::new(s.clone(), a.clone(), q.clone()).unwrap();
            assert!(verify_irredundant(&d).irredundant);
            assert!(fiber_condition(&s, a).unwrap().holds);
        }
        // the identity is the sum e0⊗e0 + e1⊗e1 and also (e0+e1)⊗(e0+e1) + ...
        assert!(c.minimal_decompositions.len() >= 2);
    }

    #[test]
    fn rational_normal_quartic() {
        for p in [5, 7] {
            let s = MultiProjectiveSpace::veronese(1, 4, FieldSpec::Prime(p)).unwrap();
            let q = Tensor::from_ints(s.field(), &[1, 0, 0, 0, 1]).unwrap();
            let c = brute_rank(&s, &q, &cfg()).unwrap();
            assert_eq!(c.rank, 2);
            assert!(spanning_sets(&s, &q, 3, SearchMode::All, &cfg()).unwrap().is_empty());
            assert!(spanning_sets(&s, &q, 1, SearchMode::All, &cfg()).unwrap().is_empty());
            let g = gap_profile(&s, &q, SearchMode::All, &cfg()).unwrap();
            assert_eq!(g.rank, 2);
            assert!(g.gaps().contains(&3));
        }
    }

    #[test]
    fn gap_csv_layout() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], FieldSpec::Prime(2)).unwrap();
        let q = Tensor::from_ints(s.field(), &[1, 0, 0, 0]).unwrap();
        let g = gap_profile(&s, &q, SearchMode::All, &cfg()).unwrap();
        assert_eq!(g.rank, 1);
        assert_eq!(g.entries.first().unwrap().count, Some(1));
        let csv = g.to_csv();
        assert!(csv.starts_with("t,nonempty,witness_count_or_bound\n1,true,1\n"));
        assert_eq!(csv.lines().count(), 5);
    }

    #[test]
    fn quartic_over_gf5_misses_n_plus_one() {
        // all six 5-subsets of the curve are bases, and x^4 + y^4 has a zero
        // coordinate in each
        let s = MultiProjectiveSpace::veronese(1, 4, FieldSpec::Prime(5)).unwrap();
        let q = Tensor::from_ints(s.field(), &[1, 0, 0, 0, 1]).unwrap();
        let g = gap_profile(&s, &q, SearchMode::All, &cfg()).unwrap();
        assert!(!g.entry(5).unwrap().nonempty);
    }

    #[test]
    fn min_concise_rank_one_on_p1_p2() {
        let s = MultiProjectiveSpace::segre(vec![1, 2], FieldSpec::Prime(5)).unwrap();
        // (e0 + e1) ⊗ o with o = (1:0:0)
        let q = Tensor::from_ints(s.field(), &[1, 0, 0, 1, 0, 0]).unwrap();
        let m = min_concise_t(&s, &q, &cfg()).unwrap();
        assert_eq!((m.rank, m.t), (1, 4));
        assert_eq!(m.non_concise_only, vec![1, 2, 3]);
        let d = Decomposition::new(s.clone(), m.witness.clone(), q.clone()).unwrap();
        assert!(verify_irredundant(&d).irredundant);
        assert!(set_envelope(&s, &m.witness).unwrap().is_full());

        // already concise: t equals the rank
        let s = MultiProjectiveSpace::segre(vec![1, 1], FieldSpec::Prime(5)).unwrap();
        let q = Tensor::from_ints(s.field(), &[1, 0, 0, 1]).unwrap();
        let m = min_concise_t(&s, &q, &cfg()).unwrap();
        assert_eq!((m.rank, m.t), (2, 2));
    }

    #[test]
    fn budget_is_enforced() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], FieldSpec::Prime(5)).unwrap();
        let q = Tensor::from_ints(s.field(), &[1, 0, 0, 1]).unwrap();
        let small = OracleConfig { budget: 40, ..cfg() };
        assert!(matches!(brute_rank(&s, &q, &small), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn strategies_agree() {
        let s = MultiProjectiveSpace::segre(vec![1, 1, 1], FieldSpec::Prime(3)).unwrap();
        let q = Tensor::from_ints(s.field(), &[0, 1, 1, 0, 1, 0, 0, 0]).unwrap();
        let seq = OracleConfig { strategy: Strategy::Sequential, ..cfg() };
        let par = OracleConfig { strategy: Strategy::Parallel, ..cfg() };
        assert_eq!(brute_rank(&s, &q, &seq).unwrap(), brute_rank(&s, &q, &par).unwrap());
    }
}
