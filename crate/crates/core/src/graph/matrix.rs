use num_rational::Ratio;
use num_traits::Zero;

use crate::scalar::ExactInt;

/// Dense square-or-rectangular matrix over an exact integer type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactInt> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn neg(&self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| -v).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// Submatrix with row and column `k` removed.
    pub fn minor(&self, k: usize) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&i| i != k).collect();
        let rows = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.get(i, j)).collect())
            .collect();
        Matrix::from_rows(rows)
    }

    /// Determinant by fraction-free (Bareiss) elimination with row pivoting.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        let mut a = self.clone();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return T::zero(),
                }
            }
            let pivot = a.get(k, k);
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * pivot - a.get(i, k) * a.get(k, j)) / prev;
                    a.set(i, j, v);
                }
            }
            prev = pivot;
        }
        sign * a.get(n - 1, n - 1)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Leading principal minors `det A[..k, ..k]` for `k = 1..=n`.
    ///
    /// Bareiss without pivoting produces them as successive pivots; once a
    /// pivot vanishes the remaining minors are computed directly.
    pub fn leading_minors(&self) -> Vec<T> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut out = Vec::with_capacity(n);
        let mut a = self.clone();
        let mut prev = T::one();
        for k in 0..n {
            let pivot = a.get(k, k);
            out.push(pivot);
            if pivot.is_zero() {
                for size in k + 2..=n {
                    let sub = Matrix::from_rows(
                        (0..size).map(|i| (0..size).map(|j| self.get(i, j)).collect()).collect(),
                    );
                    out.push(sub.determinant());
                }
                break;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * pivot - a.get(i, k) * a.get(k, j)) / prev;
                    a.set(i, j, v);
                }
            }
            prev = pivot;
        }
        out
    }

    /// Sylvester: the `k`-th leading minor has sign `(-1)^k`.
    pub fn is_negative_definite(&self) -> bool {
        self.rows == self.cols
            && self.leading_minors().iter().enumerate().all(|(k, &d)| {
                if k % 2 == 0 {
                    d < T::zero()
                } else {
                    d > T::zero()
                }
            })
    }

    /// Invariant factors `d_1 | d_2 | ...` of the Smith normal form, zeros
    /// included, all nonnegative.
    pub fn smith_invariants(&self) -> Vec<T> {
        let mut a = self.clone();
        let (rows, cols) = (a.rows, a.cols);
        let mut diag = Vec::new();
        for t in 0..rows.min(cols) {
            // bring the smallest nonzero entry of the remaining block to (t, t)
            loop {
                let pos = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| !a.get(i, j).is_zero())
                    .min_by_key(|&(i, j)| a.get(i, j).abs());
                let Some((pi, pj)) = pos else {
                    diag.resize(rows.min(cols), T::zero());
                    return finish(diag);
                };
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                let pivot = a.get(t, t);
                let mut clean = true;
                for i in t + 1..rows {
                    let f = a.get(i, t).div_floor(&pivot);
                    if !f.is_zero() {
                        a.add_row_multiple(i, t, -f);
                    }
                    clean &= a.get(i, t).is_zero();
                }
                for j in t + 1..cols {
                    let f = a.get(t, j).div_floor(&pivot);
                    if !f.is_zero() {
                        a.add_col_multiple(j, t, -f);
                    }
                    clean &= a.get(t, j).is_zero();
                }
                if !clean {
                    continue;
                }
                // the pivot must divide the whole remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a.get(i, j).is_multiple_of(&pivot));
                match bad {
                    Some((i, _)) => a.add_row_multiple(t, i, T::one()),
                    None => {
                        diag.push(pivot.abs());
                        break;
                    }
                }
            }
        }
        finish(diag)
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, f: T) {
        for c in 0..self.cols {
            let v = self.get(target, c) + f * self.get(source, c);
            self.set(target, c, v);
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, f: T) {
        for r in 0..self.rows {
            let v = self.get(r, target) + f * self.get(r, source);
            self.set(r, target, v);
        }
    }

    /// Exact solution of `A x = b` for square nonsingular `A`.
    pub fn solve(&self, b: &[T]) -> Option<Vec<Ratio<T>>> {
        let n = self.rows;
        assert_eq!(n, self.cols);
        assert_eq!(b.len(), n);
        let mut a: Vec<Vec<Ratio<T>>> = (0..n)
            .map(|i| {
                let mut row: Vec<Ratio<T>> = self.row(i).iter().map(|&v| Ratio::from_integer(v)).collect();
                row.push(Ratio::from_integer(b[i]));
                row
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(k, p);
            let pivot = a[k][k];
            for v in a[k].iter_mut() {
                *v /= pivot;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k];
                    for j in k..=n {
                        let d = f * a[k][j];
                        a[i][j] -= d;
                    }
                }
            }
        }
        Some(a.into_iter().map(|row| row[n]).collect())
    }
}

/// Normalizes a diagonal to the divisibility chain.
fn finish<T: ExactInt>(mut diag: Vec<T>) -> Vec<T> {
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (diag[i], diag[j]);
            let g = a.gcd(&b);
            let l = if g.is_zero() { T::zero() } else { a.lcm(&b) };
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}
