use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{inv_mod, FieldSpec, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over a single field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

fn check_field(field: FieldSpec, entries: &[Scalar]) -> Result<()> {
    match entries.iter().find(|e| e.field() != field) {
        Some(e) => Err(Error::MixedFields(field.to_string(), e.field().to_string())),
        None => Ok(()),
    }
}

impl Matrix {
    pub fn new(field: FieldSpec, rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: entries.len() });
        }
        check_field(field, &entries)?;
        Ok(Matrix { field, rows, cols, entries })
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: &[Vec<Scalar>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend_from_slice(r);
        }
        Self::new(field, rows.len(), cols, entries)
    }

    /// Matrix whose columns are the given vectors; all must share a length.
    pub fn from_columns(field: FieldSpec, columns: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Self::from_rows(field, columns)?.transpose())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, entries }
    }

    fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn rank(&self) -> usize {
        mat_rank(self)
    }

    pub fn rref(&self) -> Rref {
        Rref::from_rows_unchecked(self.field, self.cols, self.row_vecs())
    }
}

/// Exact rank: Bareiss elimination over Q, plain elimination over GF(p).
pub fn mat_rank(m: &Matrix) -> usize {
    match m.field {
        FieldSpec::Prime(p) => {
            let mut rows = to_residues(&m.row_vecs());
            gauss_jordan_mod(&mut rows, m.cols, p, false).len()
        }
        FieldSpec::Rationals => {
            let mut rows = to_integer_rows(&m.row_vecs());
            bareiss(&mut rows, m.cols).len()
        }
    }
}

fn to_residues(rows: &[Vec<Scalar>]) -> Vec<Vec<u64>> {
    rows.iter()
        .map(|r| r.iter().map(|s| s.residue().expect("prime-field entry")).collect())
        .collect()
}

/// Clears denominators row by row; rank and row space are preserved.
fn to_integer_rows(rows: &[Vec<Scalar>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| {
            let rats: Vec<&BigRational> =
                r.iter().map(|s| s.as_rational().expect("rational entry")).collect();
            let lcm = rats.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rats.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
        })
        .collect()
}

/// Row reduction mod p with first-nonzero pivoting. Returns pivot columns;
/// with `reduced` the result is in reduced row echelon form with unit pivots.
fn gauss_jordan_mod(rows: &mut Vec<Vec<u64>>, cols: usize, p: u64, reduced: bool) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[r].clone();
        let range: Box<dyn Iterator<Item = usize>> =
            if reduced { Box::new(0..rows.len()) } else { Box::new(r + 1..rows.len()) };
        for i in range {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c];
            for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                *x = (*x + (p - f) * y) % p;
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Fraction-free (Bareiss) forward elimination in place; every division is exact.
/// Returns the pivot columns; rows past the rank are dropped.
fn bareiss(rows: &mut Vec<Vec<BigInt>>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..cols {
                row[j] = (pivot * &row[j] - &f * &pivot_row[j]) / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Reduced row echelon form of a row set: a canonical basis of the row space.
///
/// Two sets of vectors span the same space exactly when their `Rref`s are
/// equal, and the coordinates of a contained vector in this basis are just
/// its entries at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rref {
    field: FieldSpec,
    cols: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Rref {
    /// Row space of `vectors`, each of length `cols`.
    pub fn span(field: FieldSpec, cols: usize, vectors: &[Vec<Scalar>]) -> Result<Self> {
        for v in vectors {
            if v.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: v.len() });
            }
            check_field(field, v)?;
        }
        Ok(Self::from_rows_unchecked(field, cols, vectors.to_vec()))
    }

    fn from_rows_unchecked(field: FieldSpec, cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        match field {
            FieldSpec::Prime(p) => {
                let mut work = to_residues(&rows);
                let pivots = gauss_jordan_mod(&mut work, cols, p, true);
                let rows = work
                    .into_iter()
                    .map(|r| r.into_iter().map(|v| field.from_i64(v as i64)).collect())
                    .collect();
                Rref { field, cols, rows, pivots }
            }
            FieldSpec::Rationals => {
                let mut work = to_integer_rows(&rows);
                let pivots = bareiss(&mut work, cols);
                let mut rows: Vec<Vec<BigRational>> = work
                    .into_iter()
                    .zip(&pivots)
                    .map(|(r, &c)| {
                        let lead = r[c].clone();
                        r.into_iter().map(|x| BigRational::new(x, lead.clone())).collect()
                    })
                    .collect();
                // back substitution to clear entries above each pivot
                for i in (0..rows.len()).rev() {
                    let c = pivots[i];
                    let pivot_row = rows[i].clone();
                    for row in rows.iter_mut().take(i) {
                        let f = row[c].clone();
                        if f.is_zero() {
                            continue;
                        }
                        for (x, y) in row.iter_mut().zip(&pivot_row) {
                            *x -= &f * y;
                        }
                    }
                }
                let rows = rows
                    .into_iter()
                    .map(|r| r.into_iter().map(Scalar::Rational).collect())
                    .collect();
                Rref { field, cols, rows, pivots }
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    /// Coordinates of `v` in the echelon basis, or `None` when `v` is outside the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let coeffs: Vec<Scalar> = self.pivots.iter().map(|&c| v[c].clone()).collect();
        let mut residual = v.to_vec();
        for (row, f) in self.rows.iter().zip(&coeffs) {
            if f.is_zero() {
                continue;
            }
            for (x, y) in residual.iter_mut().zip(row) {
                *x = &*x - &(f * y);
            }
        }
        residual.iter().all(Scalar::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        v.len() == self.cols && self.coordinates(v).is_some()
    }

    /// Whether every basis vector of `other` lies in `self`.
    pub fn contains_span(&self, other: &Rref) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.cols
    }
}

/// Solution of a coordinate problem `Σ c_i v_i = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coordinates {
    pub coefficients: Vec<Scalar>,
    /// The generators are linearly independent, so the coefficients are unique.
    pub independent: bool,
}

/// Coefficients expressing `target` in the columns of `generators`.
///
/// Returns `Ok(None)` when the target is outside the column span. When the
/// columns are dependent, free coefficients are set to zero.
pub fn coordinates(generators: &Matrix, target: &[Scalar]) -> Result<Option<Coordinates>> {
    if target.len() != generators.rows {
        return Err(Error::DimensionMismatch { expected: generators.rows, found: target.len() });
    }
    check_field(generators.field, target)?;
    let s = generators.cols;
    let augmented: Vec<Vec<Scalar>> = (0..generators.rows)
        .map(|r| {
            let mut row = generators.row(r).to_vec();
            row.push(target[r].clone());
            row
        })
        .collect();
    let rref = Rref::from_rows_unchecked(generators.field, s + 1, augmented);
    if rref.pivots.last() == Some(&s) {
        return Ok(None);
    }
    let mut coefficients = vec![generators.field.zero(); s];
    for (row, &c) in rref.rows.iter().zip(&rref.pivots) {
        coefficients[c] = row[s].clone();
    }
    Ok(Some(Coordinates { coefficients, independent: rref.pivots.len() == s }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(field: FieldSpec, rows: &[&[i64]]) -> Matrix {
        let rows: Vec<Vec<Scalar>> =
            rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
        Matrix::from_rows(field, &rows).unwrap()
    }

    fn vecq(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| field.from_i64(x)).collect()
    }

    #[test]
    fn small_ranks() {
        let q = FieldSpec::Rationals;
        assert_eq!(Matrix::identity(q, 2).rank(), 2);
        assert_eq!(Matrix::zeros(q, 3, 3).rank(), 0);
        assert_eq!(ints(q, &[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(ints(FieldSpec::Prime(2), &[&[1, 1], &[1, 3]]).rank(), 1);
        assert_eq!(Matrix::zeros(q, 0, 4).rank(), 0);
    }

    #[test]
    fn coordinates_examples() {
        let q = FieldSpec::Rationals;
        let g = Matrix::from_columns(q, &[vecq(q, &[1, 0, 0, 0]), vecq(q, &[0, 0, 0, 1])]).unwrap();
        let c = coordinates(&g, &vecq(q, &[1, 0, 0, 1])).unwrap().unwrap();
        assert_eq!(c.coefficients, vecq(q, &[1, 1]));
        assert!(c.independent);

        let g = Matrix::from_columns(q, &[vecq(q, &[1, 0])]).unwrap();
        assert_eq!(coordinates(&g, &vecq(q, &[1, 1])).unwrap(), None);

        let f2 = FieldSpec::Prime(2);
        let g = Matrix::from_columns(f2, &[vecq(f2, &[1, 0, 0]), vecq(f2, &[0, 1, 0])]).unwrap();
        let c = coordinates(&g, &vecq(f2, &[1, 1, 0])).unwrap().unwrap();
        assert_eq!(c.coefficients, vecq(f2, &[1, 1]));
    }

    #[test]
    fn coordinates_errors() {
        let q = FieldSpec::Rationals;
        let g = Matrix::identity(q, 2);
        assert!(matches!(
            coordinates(&g, &vecq(q, &[1, 0, 0])),
            Err(Error::DimensionMismatch { .. })
        ));
        let f5 = FieldSpec::Prime(5);
        assert!(matches!(coordinates(&g, &vecq(f5, &[1, 0])), Err(Error::MixedFields(..))));
    }

    #[test]
    fn dependent_generators_flagged() {
        let q = FieldSpec::Rationals;
        let g = Matrix::from_columns(q, &[vecq(q, &[1, 0]), vecq(q, &[2, 0])]).unwrap();
        let c = coordinates(&g, &vecq(q, &[3, 0])).unwrap().unwrap();
        assert!(!c.independent);
    }

    #[test]
    fn rref_is_canonical() {
        let q = FieldSpec::Rationals;
        let a = Rref::span(q, 3, &[vecq(q, &[1, 2, 3]), vecq(q, &[0, 1, 1])]).unwrap();
        let b = Rref::span(q, 3, &[vecq(q, &[1, 3, 4]), vecq(q, &[2, 5, 7]), vecq(q, &[3, 8, 11])])
            .unwrap();
        assert_eq!(a, b);
        assert!(a.contains(&vecq(q, &[2, 5, 7])));
        assert!(!a.contains(&vecq(q, &[0, 0, 1])));
    }

    /// Rank by exhaustive minor expansion: the largest k with a nonzero k×k minor.
    fn rank_by_minors(rows: &[Vec<i64>], p: i64) -> usize {
        fn det(m: &[Vec<i64>], p: i64) -> i64 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            let mut total = 0;
            for (j, x) in m[0].iter().enumerate() {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total = (total + sign * x * det(&minor, p)).rem_euclid(p);
            }
            total
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let (r, c) = (rows.len(), rows.first().map_or(0, Vec::len));
        for k in (1..=r.min(c)).rev() {
            for rs in subsets(r, k) {
                for cs in subsets(c, k) {
                    let m: Vec<Vec<i64>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| rows[i][j]).collect()).collect();
                    if det(&m, p) != 0 {
                        return k;
                    }
                }
            }
        }
        0
    }

    fn small_matrix() -> impl Strategy<Value = (i64, Vec<Vec<i64>>)> {
        (prop_oneof![Just(2i64), Just(3), Just(5)], 1usize..=4, 1usize..=4).prop_flat_map(
            |(p, r, c)| (Just(p), prop::collection::vec(prop::collection::vec(0..p, c), r)),
        )
    }

    proptest! {
        #[test]
        fn rank_matches_minor_expansion((p, rows) in small_matrix()) {
            let f = FieldSpec::Prime(p as u64);
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            prop_assert_eq!(ints(f, &refs).rank(), rank_by_minors(&rows, p));
        }

        #[test]
        fn bareiss_agrees_with_modular_rank_of_lifted_matrix(
            rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=4)
        ) {
            // Over Q rank is at least the rank mod a large prime; with tiny entries
            // and a prime larger than any minor they coincide.
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            let q = ints(FieldSpec::Rationals, &refs).rank();
            let big = ints(FieldSpec::Prime(1_000_003), &refs).rank();
            prop_assert_eq!(q, big);
        }

        #[test]
        fn coordinates_round_trip(
            gens in prop::collection::vec(prop::collection::vec(-4i64..=4, 4), 1..=4),
            coeffs in prop::collection::vec(-3i64..=3, 4),
            p in prop_oneof![Just(0u64), Just(5), Just(7)],
        ) {
            let f = if p == 0 { FieldSpec::Rationals } else { FieldSpec::Prime(p) };
            let cols: Vec<Vec<Scalar>> = gens.iter().map(|g| vecq(f, g)).collect();
            let m = Matrix::from_columns(f, &cols).unwrap();
            let mut target = vec![f.zero(); 4];
            for (g, c) in cols.iter().zip(&coeffs) {
                for (t, x) in target.iter_mut().zip(g) {
                    *t = &*t + &(&f.from_i64(*c) * x);
                }
            }
            let sol = coordinates(&m, &target).unwrap().expect("target built from the span");
            let mut back = vec![f.zero(); 4];
            for (g, c) in cols.iter().zip(&sol.coefficients) {
                for (t, x) in back.iter_mut().zip(g) {
                    *t = &*t + &(c * x);
                }
            }
            prop_assert_eq!(back, target);
            prop_assert_eq!(sol.independent, m.rank() == cols.len());
        }
    }
}
