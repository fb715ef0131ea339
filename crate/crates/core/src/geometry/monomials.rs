//! Monomial bookkeeping for Veronese factors.
//!
//! Monomials of degree `d` in `x_0..x_n` are listed in descending
//! lexicographic order of their exponent vectors, so `x_0^d` comes first and
//! `x_n^d` last. For `d = 1` this is the coordinate order itself.

use std::collections::BTreeMap;

use crate::exactlin::Scalar;

/// Exponent vectors of all degree-`degree` monomials in `vars` variables.
pub fn exponents(vars: usize, degree: usize) -> Vec<Vec<usize>> {
    fn go(vars: usize, degree: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if vars == 1 {
            prefix.push(degree);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=degree).rev() {
            prefix.push(e);
            go(vars - 1, degree - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(vars, degree, &mut Vec::with_capacity(vars), &mut out);
    out
}

/// Values of every degree-`degree` monomial at `x`.
pub fn evaluate(x: &[Scalar], degree: usize) -> Vec<Scalar> {
    let field = x[0].field();
    exponents(x.len(), degree)
        .iter()
        .map(|exp| {
            let mut acc = field.one();
            for (xi, &e) in x.iter().zip(exp) {
                for _ in 0..e {
                    acc = &acc * xi;
                }
            }
            acc
        })
        .collect()
}

type Poly = BTreeMap<Vec<usize>, Scalar>;

/// Vectors spanning `⟨ν_d(⟨B⟩)⟩`, where `B` holds the basis vectors of a
/// linear subspace of one factor.
///
/// With `x = Σ y_j b_j`, each monomial `x^α` is a polynomial in `y`; the
/// coefficient of `y^β` across all `α` is one spanning vector.
pub fn symmetric_power_span(basis: &[Vec<Scalar>], degree: usize) -> Vec<Vec<Scalar>> {
    let field = basis[0][0].field();
    let m = basis.len();
    let n = basis[0].len();
    let linear: Vec<Poly> = (0..n)
        .map(|l| {
            (0..m)
                .filter(|&j| !basis[j][l].is_zero())
                .map(|j| {
                    let mut e = vec![0; m];
                    e[j] = 1;
                    (e, basis[j][l].clone())
                })
                .collect()
        })
        .collect();
    let mul = |a: &Poly, b: &Poly| -> Poly {
        let mut out = Poly::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = ca * cb;
                let slot = out.entry(e).or_insert_with(|| field.zero());
                *slot = &*slot + &c;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    };
    let rows: Vec<Poly> = exponents(n, degree)
        .iter()
        .map(|alpha| {
            let mut acc: Poly = [(vec![0; m], field.one())].into_iter().collect();
            for (l, &e) in alpha.iter().enumerate() {
                for _ in 0..e {
                    acc = mul(&acc, &linear[l]);
                }
            }
            acc
        })
        .collect();
    exponents(m, degree)
        .iter()
        .map(|beta| rows.iter().map(|r| r.get(beta).cloned().unwrap_or_else(|| field.zero())).collect())
        .collect()
}
