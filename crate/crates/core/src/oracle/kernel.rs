//! Exhaustive search for irredundant spanning sets over GF(p).
//!
//! A set `{v_1 < ⋯ < v_t}` (indices into the point list) irredundantly spans
//! `q` iff the prefix `v_1..v_{t-1}` is independent, `q` is outside its span,
//! and `q + Σ λ_j v_j` is a nonzero multiple of `v_t` for some `λ ∈ (F*)^{t-1}`.
//! The search walks index-increasing prefixes depth first, pruning as soon as
//! a prefix becomes dependent or swallows `q`, and then sweeps all `λ` looking
//! the residual up in a table of every multiple of every point. Each set is
//! produced exactly once, by its sorted prefix and unique coefficients.
//!
//! Residue vectors are packed four 16-bit lanes to a word so a sweep step is a
//! handful of word operations.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use crate::error::{Error, Result};
use crate::geometry::{embed, enumerate_points, point_count, MppPoint, MultiProjectiveSpace, Tensor};
use crate::par::{self, Strategy};

/// Largest ambient length the packed search supports.
pub const MAX_AMBIENT_LEN: usize = 16;
/// Moduli must leave room for one carry bit per 16-bit lane.
pub const MAX_ORACLE_MODULUS: u64 = 1 << 15;

const LANES: usize = 4;
const MAX_WORDS: usize = MAX_AMBIENT_LEN / LANES;
const HIGH: u64 = 0x8000_8000_8000_8000;
const ONES: u64 = 0x0001_0001_0001_0001;

type Key = [u64; MAX_WORDS];

#[derive(Clone, Copy)]
struct Packing {
    p: u64,
    bias: u64,
    words: usize,
}

impl Packing {
    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        let over = ((s + self.bias) & HIGH) >> 15;
        s - over * self.p
    }

    fn pack(&self, v: &[u32]) -> Key {
        let mut key = [0u64; MAX_WORDS];
        for (i, &x) in v.iter().enumerate() {
            key[i / LANES] |= (x as u64) << (16 * (i % LANES));
        }
        key
    }

    #[inline(always)]
    fn hash(&self, key: &Key) -> u64 {
        let mut h = 0x243F_6A88_85A3_08D3u64;
        for &w in &key[..self.words] {
            h = (h ^ w).wrapping_mul(0x9E37_79B9_7F4A_7C15);
            h ^= h >> 29;
        }
        h
    }
}

/// Points of a space over GF(p) with the lookup structures for the search.
pub struct Kernel {
    space: MultiProjectiveSpace,
    points: Vec<MppPoint>,
    vectors: Vec<Vec<u32>>,
    packed: Vec<Key>,
    packing: Packing,
    multiples: HashMap<Key, u32>,
    filter: Vec<u64>,
    filter_shift: u32,
}

impl Kernel {
    /// Enumerates the points of `space`; `budget` bounds the point count.
    pub fn new(space: &MultiProjectiveSpace, budget: u128) -> Result<Self> {
        let p = space.field().modulus().ok_or(Error::FieldNotFinite)?;
        if p >= MAX_ORACLE_MODULUS {
            return Err(Error::FieldTooLarge(p));
        }
        let len = space.ambient_len();
        if len > MAX_AMBIENT_LEN {
            return Err(Error::InvalidSpace(format!(
                "ambient length {len} exceeds the exhaustive search limit {MAX_AMBIENT_LEN}"
            )));
        }
        let count = point_count(space)?;
        if count > budget {
            return Err(Error::BudgetExceeded { needed: count, budget });
        }
        let packing = Packing {
            p,
            bias: ((1u64 << 15) - p) * ONES,
            words: len.div_ceil(LANES),
        };
        let points = enumerate_points(space)?;
        let vectors: Vec<Vec<u32>> = points
            .iter()
            .map(|pt| residues(&embed(space, pt).expect("enumerated point")))
            .collect();
        let packed: Vec<Key> = vectors.iter().map(|v| packing.pack(v)).collect();

        let entries = points.len() * (p as usize - 1);
        let bits = (entries * 32).next_power_of_two().max(1 << 12);
        let filter_shift = 64 - bits.trailing_zeros();
        let mut filter = vec![0u64; bits / 64];
        let mut multiples = HashMap::with_capacity(entries);
        for (idx, v) in vectors.iter().enumerate() {
            for c in 1..p {
                let m: Vec<u32> = v.iter().map(|&x| ((x as u64 * c) % p) as u32).collect();
                let key = packing.pack(&m);
                let slot = packing.hash(&key) >> filter_shift;
                filter[(slot / 64) as usize] |= 1 << (slot % 64);
                multiples.insert(key, idx as u32);
            }
        }
        Ok(Kernel { space: space.clone(), points, vectors, packed, packing, multiples, filter, filter_shift })
    }

    pub fn space(&self) -> &MultiProjectiveSpace {
        &self.space
    }

    pub fn points(&self) -> &[MppPoint] {
        &self.points
    }

    pub fn modulus(&self) -> u64 {
        self.packing.p
    }

    /// Index of the point `q` is a multiple of, if any.
    pub fn point_index(&self, q: &Tensor) -> Result<Option<usize>> {
        self.space.check_tensor(q)?;
        Ok(self.lookup(&self.packing.pack(&residues(q))).map(|i| i as usize))
    }

    /// Upper bound on the residual vectors examined by [`Kernel::sweep`] for
    /// cardinality `t`: `C(#points, t−1)·(p−1)^{t−1}`.
    pub fn sweep_size(&self, t: usize) -> u128 {
        if t == 0 {
            return 0;
        }
        let k = (t - 1) as u32;
        let c = binomial_u128(self.points.len() as u128, k as u128);
        c.saturating_mul((self.packing.p as u128 - 1).saturating_pow(k))
    }

    #[inline(always)]
    fn lookup(&self, key: &Key) -> Option<u32> {
        let slot = self.packing.hash(key) >> self.filter_shift;
        if self.filter[(slot / 64) as usize] & (1 << (slot % 64)) == 0 {
            return None;
        }
        self.multiples.get(key).copied()
    }

    /// Sorted index sets of cardinality `t` irredundantly spanning `q` and
    /// accepted by `accept`. With `first_only` the search stops at the first
    /// accepted set in index order.
    ///
    /// `budget` caps the residual vectors actually examined; once exceeded the
    /// search aborts with `BudgetExceeded` carrying the worst-case size.
    pub fn sweep(
        &self,
        q: &Tensor,
        t: usize,
        first_only: bool,
        strategy: Strategy,
        budget: u128,
        accept: &(dyn Fn(&[usize]) -> bool + Sync),
    ) -> Result<Sweep> {
        self.space.check_tensor(q)?;
        if t == 0 {
            return Ok(Sweep { sets: Vec::new(), examined: 0 });
        }
        let q_res = residues(q);
        if t == 1 {
            let hit = self.lookup(&self.packing.pack(&q_res)).map(|i| vec![i as usize]);
            let sets = hit.into_iter().filter(|s| accept(s)).collect();
            return Ok(Sweep { sets, examined: 1 });
        }
        let budget = budget.min(u64::MAX as u128) as u64;
        let spent = AtomicU64::new(0);
        let aborted = AtomicBool::new(false);
        let search = |first: usize| {
            let mut state = Search {
                kernel: self,
                q: &q_res,
                q_packed: self.packing.pack(&q_res),
                depth: t - 1,
                prefix: Vec::with_capacity(t - 1),
                echelon: Vec::with_capacity(t - 1),
                first_only,
                accept,
                found: Vec::new(),
                cost: (self.packing.p - 1).saturating_pow(t as u32 - 1),
                budget,
                spent: &spent,
                aborted: &aborted,
            };
            state.extend(first);
            state.found
        };
        let mut found: Vec<Vec<usize>> = if first_only {
            par::find_first(self.points.len(), strategy, |i| {
                let mut f = search(i);
                (!f.is_empty()).then(|| f.swap_remove(0))
            })
            .into_iter()
            .collect()
        } else {
            par::map_range(self.points.len(), strategy, search).into_iter().flatten().collect()
        };
        if aborted.load(Ordering::Relaxed) {
            return Err(Error::BudgetExceeded { needed: self.sweep_size(t), budget: budget as u128 });
        }
        found.sort();
        Ok(Sweep { sets: found, examined: spent.load(Ordering::Relaxed) as u128 })
    }
}

/// Outcome of one [`Kernel::sweep`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sweep {
    /// Sorted index sets.
    pub sets: Vec<Vec<usize>>,
    /// Residual vectors examined.
    pub examined: u128,
}

struct Search<'a> {
    kernel: &'a Kernel,
    q: &'a [u32],
    q_packed: Key,
    depth: usize,
    prefix: Vec<usize>,
    /// Reduced rows with their pivot columns, pivot entries equal to one.
    echelon: Vec<(usize, Vec<u32>)>,
    first_only: bool,
    accept: &'a (dyn Fn(&[usize]) -> bool + Sync),
    found: Vec<Vec<usize>>,
    cost: u64,
    budget: u64,
    spent: &'a AtomicU64,
    aborted: &'a AtomicBool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        (self.first_only && !self.found.is_empty()) || self.aborted.load(Ordering::Relaxed)
    }

    /// Pushes point `idx` onto the prefix, recursing or sweeping; restores
    /// the state on return.
    fn extend(&mut self, idx: usize) {
        let p = self.kernel.packing.p;
        let Some(row) = reduce(&self.echelon, &self.kernel.vectors[idx], p) else { return };
        let Some(pivot) = row.iter().position(|&x| x != 0) else { return };
        let inv = inv_mod(row[pivot] as u64, p);
        let row: Vec<u32> = row.iter().map(|&x| ((x as u64 * inv) % p) as u32).collect();
        self.echelon.push((pivot, row));
        let q_outside = reduce(&self.echelon, self.q, p).is_some_and(|r| r.iter().any(|&x| x != 0));
        if q_outside {
            self.prefix.push(idx);
            if self.prefix.len() == self.depth {
                self.sweep_last();
            } else {
                let n = self.kernel.points.len();
                for next in idx + 1..n {
                    self.extend(next);
                    if self.done() {
                        break;
                    }
                }
            }
            self.prefix.pop();
        }
        self.echelon.pop();
    }

    fn sweep_last(&mut self) {
        let before = self.spent.fetch_add(self.cost, Ordering::Relaxed);
        if before.saturating_add(self.cost) > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return;
        }
        let words = self.kernel.packing.words;
        match words {
            1 => self.odometer::<1>(),
            2 => self.odometer::<2>(),
            3 => self.odometer::<3>(),
            _ => self.odometer::<4>(),
        }
    }

    fn odometer<const W: usize>(&mut self) {
        let k = self.kernel;
        let pk = k.packing;
        let p = pk.p as u32;
        let vs: Vec<[u64; W]> = self.prefix.iter().map(|&i| head::<W>(&k.packed[i])).collect();
        let twice: Vec<[u64; W]> = vs.iter().map(|v| add_words(&pk, v, v)).collect();
        let mut cur = head::<W>(&self.q_packed);
        for v in &vs {
            cur = add_words(&pk, &cur, v);
        }
        let last_prefix = *self.prefix.last().expect("nonempty prefix");
        let mut lambda = vec![1u32; vs.len()];
        loop {
            let mut key = [0u64; MAX_WORDS];
            key[..W].copy_from_slice(&cur);
            if let Some(hit) = k.lookup(&key) {
                let hit = hit as usize;
                if hit > last_prefix {
                    let mut set = self.prefix.clone();
                    set.push(hit);
                    if (self.accept)(&set) {
                        self.found.push(set);
                        if self.first_only {
                            return;
                        }
                    }
                }
            }
            let mut j = 0;
            loop {
                if j == vs.len() {
                    return;
                }
                if lambda[j] == p - 1 {
                    lambda[j] = 1;
                    cur = add_words(&pk, &cur, &twice[j]);
                    j += 1;
                } else {
                    lambda[j] += 1;
                    cur = add_words(&pk, &cur, &vs[j]);
                    break;
                }
            }
        }
    }
}

#[inline(always)]
fn head<const W: usize>(key: &Key) -> [u64; W] {
    let mut out = [0u64; W];
    out.copy_from_slice(&key[..W]);
    out
}

#[inline(always)]
fn add_words<const W: usize>(pk: &Packing, a: &[u64; W], b: &[u64; W]) -> [u64; W] {
    let mut out = [0u64; W];
    for i in 0..W {
        out[i] = pk.add(a[i], b[i]);
    }
    out
}

/// `v` reduced against the echelon rows; `None` if it reduces to zero.
fn reduce(echelon: &[(usize, Vec<u32>)], v: &[u32], p: u64) -> Option<Vec<u32>> {
    let mut v = v.to_vec();
    for (pivot, row) in echelon {
        let c = v[*pivot] as u64;
        if c != 0 {
            for (x, &r) in v.iter_mut().zip(row) {
                *x = ((*x as u64 + (p - c) * r as u64) % p) as u32;
            }
        }
    }
    v.iter().any(|&x| x != 0).then_some(v)
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn residues(q: &Tensor) -> Vec<u32> {
    q.coords().iter().map(|x| x.residue().expect("finite field") as u32).collect()
}

pub(crate) fn binomial_u128(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::{irredundant_by_subsets, Decomposition};
    use crate::exactlin::FieldSpec;
    use crate::par::Strategy;

    #[test]
    fn packed_add_matches_modular_add() {
        for p in [2u64, 3, 5, 11, 251, 32749] {
            let pk = Packing { p, bias: ((1 << 15) - p) * ONES, words: 1 };
            let xs: Vec<u64> = vec![0, 1, p / 2, p - 1];
            for &a in &xs {
                for &b in &xs {
                    let wa = a * ONES;
                    let wb = b | (a << 16) | (b << 32) | ((p - 1) << 48);
                    let s = pk.add(wa, wb);
                    let lanes: Vec<u64> = (0..4).map(|i| (s >> (16 * i)) & 0xFFFF).collect();
                    assert_eq!(lanes, vec![(a + b) % p, (2 * a) % p, (a + b) % p, (a + p - 1) % p]);
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(1728, 2), 1728 * 1727 / 2);
        assert_eq!(binomial_u128(5, 7), 0);
        assert_eq!(binomial_u128(10, 0), 1);
    }

    /// Plain enumeration of all `t`-subsets with the definition of
    /// irredundancy.
    fn naive(kernel: &Kernel, q: &Tensor, t: usize) -> Vec<Vec<usize>> {
        let n = kernel.points().len();
        let mut out = Vec::new();
        let mut idx: Vec<usize> = (0..t).collect();
        if t > n {
            return out;
        }
        loop {
            let pts = idx.iter().map(|&i| kernel.points()[i].clone()).collect();
            let d = Decomposition::new(kernel.space().clone(), pts, q.clone()).unwrap();
            if irredundant_by_subsets(&d) {
                out.push(idx.clone());
            }
            let Some(j) = (0..t).rev().find(|&j| idx[j] < n - t + j) else { break };
            idx[j] += 1;
            for l in j + 1..t {
                idx[l] = idx[l - 1] + 1;
            }
        }
        out
    }

    #[test]
    fn sweep_matches_naive_enumeration() {
        let cases = [
            (MultiProjectiveSpace::segre(vec![1, 1], FieldSpec::Prime(2)).unwrap(), vec![1, 0, 0, 1]),
            (MultiProjectiveSpace::segre(vec![1, 1], FieldSpec::Prime(3)).unwrap(), vec![1, 2, 0, 1]),
            (MultiProjectiveSpace::veronese(1, 4, FieldSpec::Prime(5)).unwrap(), vec![1, 0, 0, 0, 1]),
            (MultiProjectiveSpace::veronese(1, 2, FieldSpec::Prime(3)).unwrap(), vec![0, 1, 0]),
        ];
        for (s, q) in cases {
            let kernel = Kernel::new(&s, 1 << 20).unwrap();
            let q = Tensor::from_ints(s.field(), &q).unwrap();
            for t in 1..=s.ambient_len() {
                let expected = naive(&kernel, &q, t);
                for strategy in [Strategy::Sequential, Strategy::Parallel] {
                    let got = kernel.sweep(&q, t, false, strategy, u128::MAX, &|_| true).unwrap();
                    assert_eq!(got.sets, expected, "{s:?} t={t}");
                    assert!(got.examined <= kernel.sweep_size(t));
                    let first = kernel.sweep(&q, t, true, strategy, u128::MAX, &|_| true).unwrap();
                    assert_eq!(first.sets.first(), expected.first());
                }
            }
        }
    }

    #[test]
    fn kernel_limits() {
        let s = MultiProjectiveSpace::segre(vec![1, 1], FieldSpec::Rationals).unwrap();
        assert!(matches!(Kernel::new(&s, 100), Err(Error::FieldNotFinite)));
        let s = MultiProjectiveSpace::segre(vec![1, 1], FieldSpec::Prime(32771)).unwrap();
        assert!(matches!(Kernel::new(&s, 100), Err(Error::FieldTooLarge(32771))));
        let s = MultiProjectiveSpace::segre(vec![2, 2], FieldSpec::Prime(5)).unwrap();
        assert!(matches!(Kernel::new(&s, 100), Err(Error::BudgetExceeded { needed: 961, .. })));
    }
}
