//! Hirzebruch–Jung singularities of type `m/b`.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{DualGraph, Matrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HJType {
    pub m: i64,
    pub b: i64,
    pub expansion: Vec<i64>,
}

impl HJType {
    pub fn length(&self) -> usize {
        self.expansion.len()
    }

    pub fn graph(&self) -> DualGraph {
        DualGraph::chain(&self.expansion)
    }

    /// `b'` from the reversed expansion; satisfies `b b' ≡ 1 (mod m)`.
    pub fn reversed(&self) -> Result<HJType> {
        let rev: Vec<i64> = self.expansion.iter().rev().copied().collect();
        let (m, b) = cf_eval(&rev)?;
        Ok(HJType { m, b, expansion: rev })
    }

    /// `m = (-1)^r det` of the chain and `b = (-1)^{r-1}` det of the chain
    /// with the first curve removed.
    pub fn determinants(&self) -> Result<(i64, i64)> {
        let a: Matrix<i64> = self.graph().intersection_matrix()?;
        let r = self.length();
        let sign = if r.is_multiple_of(2) { 1 } else { -1 };
        Ok((sign * a.determinant(), -sign * a.minor(0).determinant()))
    }
}

/// `m/b = s_1 - 1/(s_2 - 1/(...))` with every `s_i >= 2`.
pub fn cf_expand(m: i64, b: i64) -> Result<HJType> {
    if !(0 < b && b < m) {
        return Err(Error::OutOfRange { m, b });
    }
    if m.gcd(&b) != 1 {
        return Err(Error::NotCoprime(m, b));
    }
    let mut expansion = Vec::new();
    let (mut num, mut den) = (m, b);
    while den != 0 {
        let s = Integer::div_ceil(&num, &den);
        expansion.push(s);
        (num, den) = (den, s * den - num);
    }
    Ok(HJType { m, b, expansion })
}

/// Inverse of [`cf_expand`].
pub fn cf_eval(expansion: &[i64]) -> Result<(i64, i64)> {
    if let Some(&bad) = expansion.iter().find(|&&s| s < 2) {
        return Err(Error::InvalidEntry(bad));
    }
    let mut iter = expansion.iter().rev();
    let Some(&last) = iter.next() else {
        return Err(Error::InvalidEntry(0));
    };
    let mut x = Ratio::from_integer(last);
    for &s in iter {
        x = Ratio::from_integer(s) - x.recip();
    }
    Ok((*x.numer(), *x.denom()))
}

fn require_definite(a: &Matrix<i64>) -> Result<()> {
    if a.is_negative_definite() {
        Ok(())
    } else {
        Err(Error::NotNegativeDefinite)
    }
}

/// Invariant factors of the cokernel of the intersection matrix, units
/// dropped.
pub fn discriminant_group(graph: &DualGraph) -> Result<Vec<i64>> {
    let a: Matrix<i64> = graph.intersection_matrix()?;
    require_definite(&a)?;
    Ok(a.smith_invariants().into_iter().filter(|&d| d != 1).collect())
}

/// Prime-to-`p` part of `m`; `p = 1` stands for characteristic zero.
pub fn local_pi1_order(m: u64, p: u64) -> u64 {
    let mut m = m;
    if p > 1 {
        while m.is_multiple_of(p) {
            m /= p;
        }
    }
    m
}

/// Laufer's iteration from `Z = E`.
pub fn fundamental_cycle(graph: &DualGraph) -> Result<Vec<i64>> {
    let a: Matrix<i64> = graph.intersection_matrix()?;
    require_definite(&a)?;
    let mut z = vec![1i64; graph.vertex_count()];
    loop {
        let az = a.mul_vec(&z);
        match az.iter().position(|&v| v > 0) {
            Some(i) => z[i] += 1,
            None => return Ok(z),
        }
    }
}

/// The monoid of pairs `(n, n')` for which `n E_1 + n' E_r` is trivial in
/// the discriminant group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidP {
    m: i64,
    first: Vec<Ratio<i64>>,
    last: Vec<Ratio<i64>>,
}

impl MonoidP {
    pub fn contains(&self, n: i64, n2: i64) -> bool {
        self.first
            .iter()
            .zip(&self.last)
            .all(|(a, b)| (a * n + b * n2).is_integer())
    }

    /// Irreducible elements. Since `(m, 0)` and `(0, m)` lie in the monoid,
    /// every irreducible element has both coordinates at most `m`.
    pub fn hilbert_basis(&self) -> Vec<(i64, i64)> {
        let m = self.m;
        let members: Vec<(i64, i64)> = (0..=m)
            .flat_map(|a| (0..=m).map(move |b| (a, b)))
            .filter(|&(a, b)| (a, b) != (0, 0) && self.contains(a, b))
            .collect();
        members
            .iter()
            .copied()
            .filter(|&(a, b)| {
                !members
                    .iter()
                    .any(|&(c, d)| (c, d) != (a, b) && c <= a && d <= b && self.contains(a - c, b - d) && (a - c, b - d) != (0, 0))
            })
            .collect()
    }

    /// Index of the group generated by the monoid inside `Z²`.
    pub fn index(&self) -> i64 {
        let basis = self.hilbert_basis();
        let mut g = 0i64;
        for (i, &(a, b)) in basis.iter().enumerate() {
            for &(c, d) in &basis[i + 1..] {
                g = g.gcd(&(a * d - b * c));
            }
        }
        g
    }
}

pub fn monoid_p(m: i64, b: i64) -> Result<MonoidP> {
    let hj = cf_expand(m, b)?;
    let a: Matrix<i64> = hj.graph().intersection_matrix()?;
    let r = hj.length();
    let unit = |k: usize| -> Vec<i64> { (0..r).map(|i| i64::from(i == k)).collect() };
    let solve = |k: usize| a.solve(&unit(k)).ok_or(Error::NotNegativeDefinite);
    Ok(MonoidP {
        m,
        first: solve(0)?,
        last: solve(r - 1)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansions() {
        assert_eq!(cf_expand(7, 3).unwrap().expansion, vec![3, 2, 2]);
        assert_eq!(cf_expand(5, 1).unwrap().expansion, vec![5]);
        assert_eq!(cf_expand(6, 5).unwrap().expansion, vec![2; 5]);
        assert_eq!(cf_expand(4, 2).unwrap_err(), Error::NotCoprime(4, 2));
        assert_eq!(cf_expand(4, 4).unwrap_err(), Error::OutOfRange { m: 4, b: 4 });
    }

    #[test]
    fn evaluation() {
        assert_eq!(cf_eval(&[3, 2, 2]).unwrap(), (7, 3));
        assert_eq!(cf_eval(&[2, 2, 3]).unwrap(), (7, 5));
        assert_eq!(cf_eval(&[2]).unwrap(), (2, 1));
        assert_eq!(cf_eval(&[2, 1]).unwrap_err(), Error::InvalidEntry(1));
        let hj = cf_expand(7, 3).unwrap();
        assert_eq!(hj.reversed().unwrap().b, 5);
        assert_eq!(hj.determinants().unwrap(), (7, 3));
    }

    #[test]
    fn discriminants() {
        assert_eq!(discriminant_group(&DualGraph::chain(&[3, 2, 2])).unwrap(), vec![7]);
        assert_eq!(discriminant_group(&DualGraph::chain(&[2, 2, 2])).unwrap(), vec![4]);
        assert_eq!(discriminant_group(&DualGraph::chain(&[5])).unwrap(), vec![5]);
        // the D4 star has Klein four discriminant group
        assert_eq!(discriminant_group(&DualGraph::star(2, &[1, 1, 1])).unwrap(), vec![2, 2]);
        assert_eq!(
            discriminant_group(&DualGraph::star(1, &[1, 1, 1])).unwrap_err(),
            Error::NotNegativeDefinite
        );
    }

    #[test]
    fn pi1() {
        assert_eq!(local_pi1_order(12, 2), 3);
        assert_eq!(local_pi1_order(7, 7), 1);
        assert_eq!(local_pi1_order(9, 1), 9);
    }

    #[test]
    fn cycles() {
        assert_eq!(fundamental_cycle(&DualGraph::chain(&[3, 2, 2])).unwrap(), vec![1, 1, 1]);
        assert_eq!(fundamental_cycle(&DualGraph::chain(&[2, 2])).unwrap(), vec![1, 1]);
        assert_eq!(fundamental_cycle(&DualGraph::chain(&[2])).unwrap(), vec![1]);
        // D4: the center is doubled
        assert_eq!(fundamental_cycle(&DualGraph::star(2, &[1, 1, 1])).unwrap(), vec![2, 1, 1, 1]);
    }

    #[test]
    fn monoid() {
        let p = monoid_p(2, 1).unwrap();
        assert!(p.contains(1, 1));
        assert!(!p.contains(1, 0));
        assert_eq!(p.index(), 2);
        let p = monoid_p(7, 3).unwrap();
        assert!(p.contains(7, 0) && p.contains(0, 7));
        assert_eq!(p.index(), 7);
    }
}
