use std::ops::{Index, IndexMut};

use super::scalar::{Field, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::usage("ragged rows"));
        }
        let n = rows.len();
        Ok(Matrix {
            field,
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from its columns.
    pub fn from_cols(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::usage("column length mismatch"));
            }
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::usage(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(x) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::usage("matrix product dimension mismatch"));
        }
        let mut m = Matrix::zeros(self.field, self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = &o[(k, c)];
                    if !b.is_zero() {
                        let v = a * b;
                        m[(r, c)] += &v;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Reduced row echelon form with leftmost-nonzero pivoting; returns pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        match self.field {
            Field::Prime { p } => self.rref_mod(p),
            Field::Rationals => self.rref_exact(),
        }
    }

    fn rref_exact(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, pr);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, c)] - &(&f * &m[(row, c)]);
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn rref_mod(&self, p: u64) -> (Matrix, Vec<usize>) {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<u64> = self
            .data
            .iter()
            .map(|s| match s {
                Scalar::Mod { v, .. } => *v,
                Scalar::Rat(_) => unreachable!("rational entry in prime-field matrix"),
            })
            .collect();
        let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
        let inv = |x: u64| {
            let mut r = 1u64;
            let (mut b, mut e) = (x, p - 2);
            while e > 0 {
                if e & 1 == 1 {
                    r = mulm(r, b);
                }
                b = mulm(b, b);
                e >>= 1;
            }
            r
        };
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            if row == rows {
                break;
            }
            let Some(pr) = (row..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if pr != row {
                for c in 0..cols {
                    a.swap(row * cols + c, pr * cols + c);
                }
            }
            let iv = inv(a[row * cols + col]);
            for c in col..cols {
                a[row * cols + c] = mulm(a[row * cols + c], iv);
            }
            for r in 0..rows {
                let f = a[r * cols + col];
                if r == row || f == 0 {
                    continue;
                }
                for c in col..cols {
                    let x = a[row * cols + c];
                    if x != 0 {
                        let cur = a[r * cols + c];
                        a[r * cols + c] = (cur + p - mulm(f, x)) % p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        let data = a.into_iter().map(|v| Scalar::Mod { v, p }).collect();
        (
            Matrix {
                field: self.field,
                rows,
                cols,
                data,
            },
            pivots,
        )
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&r[(i, free)];
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug[(r, c)] = self[(r, c)].clone();
            }
            aug[(r, n + r)] = self.field.one();
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv[(r, c)] = red[(r, n + c)].clone();
            }
        }
        Some(inv)
    }
}

/// Some x with A·x = b, or None when inconsistent. Free variables are set to zero.
pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if a.rows != b.len() {
        return Err(Error::usage(format!(
            "system has {} rows but right-hand side has {} entries",
            a.rows,
            b.len()
        )));
    }
    let mut aug = Matrix::zeros(a.field, a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            aug[(r, c)] = a[(r, c)].clone();
        }
        aug[(r, a.cols)] = b[r].clone();
    }
    let (red, pivots) = aug.rref();
    if pivots.last() == Some(&a.cols) {
        return Ok(None);
    }
    let mut x = vec![a.field.zero(); a.cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = red[(i, a.cols)].clone();
    }
    Ok(Some(x))
}

pub fn rank(a: &Matrix) -> usize {
    a.rank()
}

/// Whether v lies in the span of the columns in `span`.
pub fn in_span(field: Field, v: &[Scalar], span: &[Vec<Scalar>]) -> Result<bool> {
    if span.iter().any(|s| s.len() != v.len()) {
        return Err(Error::usage("span vectors differ in length from v"));
    }
    if v.iter().all(Scalar::is_zero) {
        return Ok(true);
    }
    if span.is_empty() {
        return Ok(false);
    }
    let m = Matrix::from_cols(field, v.len(), span)?;
    Ok(solve_linear(&m, v)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn ints(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.int(x)).collect()
    }

    #[test]
    fn solve_identity() {
        let a = Matrix::identity(q(), 2);
        let x = solve_linear(&a, &ints(q(), &[3, 5])).unwrap().unwrap();
        assert_eq!(x, ints(q(), &[3, 5]));
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_rows(q(), vec![ints(q(), &[1, 1]), ints(q(), &[2, 2])]).unwrap();
        assert_eq!(solve_linear(&a, &ints(q(), &[1, 3])).unwrap(), None);
    }

    #[test]
    fn solve_over_f7() {
        let f7 = Field::prime(7).unwrap();
        let a = Matrix::from_rows(f7, vec![ints(f7, &[2])]).unwrap();
        let x = solve_linear(&a, &ints(f7, &[1])).unwrap().unwrap();
        // brute force over F_7
        let expected = (0..7).find(|v| (2 * v) % 7 == 1).unwrap();
        assert_eq!(x, ints(f7, &[expected]));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let a = Matrix::identity(q(), 2);
        assert!(solve_linear(&a, &ints(q(), &[1])).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(Matrix::zeros(q(), 3, 3).rank(), 0);
        assert_eq!(Matrix::identity(q(), 4).rank(), 4);
        let a = Matrix::from_rows(q(), vec![ints(q(), &[1, 2]), ints(q(), &[2, 4])]).unwrap();
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn spans() {
        assert!(in_span(q(), &ints(q(), &[0, 0]), &[]).unwrap());
        assert!(!in_span(q(), &ints(q(), &[1, 0]), &[ints(q(), &[0, 1])]).unwrap());
        let f7 = Field::prime(7).unwrap();
        assert!(in_span(f7, &ints(f7, &[1, 1]), &[ints(f7, &[2, 2])]).unwrap());
        assert!(in_span(q(), &ints(q(), &[1]), &[ints(q(), &[1, 2])]).is_err());
    }

    #[test]
    fn kernel_and_inverse() {
        let a = Matrix::from_rows(q(), vec![ints(q(), &[1, 2, 3]), ints(q(), &[2, 4, 6])]).unwrap();
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
        let b = Matrix::from_rows(q(), vec![ints(q(), &[2, 1]), ints(q(), &[1, 1])]).unwrap();
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv).unwrap(), Matrix::identity(q(), 2));
        assert!(a.inverse().is_none());
    }
}
