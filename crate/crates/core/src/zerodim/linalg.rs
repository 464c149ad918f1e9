//! Dense exact rational matrices.

use crate::poly::rational::Rational;
use crate::poly::UvPoly;
use num_traits::{One, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Matrix, c: &Rational) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return self.clone();
        }
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| if b.is_zero() { a.clone() } else { a + b * c })
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut m = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += a * b;
                    }
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        self.mul_vec(v).iter().zip(v).map(|(a, b)| a * b).sum()
    }

    /// Solves `self · X = B` for square nonsingular `self`; `None` if singular.
    pub fn solve(&self, rhs: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
        assert!(self.is_square());
        let n = self.rows;
        let k = rhs.len();
        // augmented rows [A | b_1 … b_k]
        let mut a: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend(rhs.iter().map(|b| b[i].clone()));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for v in a[col].iter_mut().skip(col) {
                *v *= &inv;
            }
            let pivot_row = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (j, pv) in pivot_row.iter().enumerate().skip(col) {
                    if !pv.is_zero() {
                        row[j] -= &f * pv;
                    }
                }
            }
        }
        Some((0..k).map(|j| (0..n).map(|i| a[i][n + j].clone()).collect()).collect())
    }

    /// Characteristic polynomial `det(T·I − M)` via reduction to upper
    /// Hessenberg form by similarity transforms.
    pub fn charpoly(&self) -> UvPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                h.swap_cols(i, m);
            }
            let inv = h[(m, m - 1)].recip();
            for i in m + 1..n {
                if h[(i, m - 1)].is_zero() {
                    continue;
                }
                let u = &h[(i, m - 1)] * &inv;
                // row_i -= u * row_m ; col_m += u * col_i
                for j in 0..n {
                    let t = &h[(m, j)] * &u;
                    if !t.is_zero() {
                        h[(i, j)] -= t;
                    }
                }
                for r in 0..n {
                    let t = &h[(r, i)] * &u;
                    if !t.is_zero() {
                        h[(r, m)] += t;
                    }
                }
            }
        }
        let mut p: Vec<UvPoly> = vec![UvPoly::one()];
        for m in 1..=n {
            let mut cur = &UvPoly::new(vec![-h[(m - 1, m - 1)].clone(), Rational::one()]) * &p[m - 1];
            let mut t = Rational::one();
            for i in (1..m).rev() {
                t *= &h[(i, i - 1)];
                if t.is_zero() {
                    break;
                }
                let c = &t * &h[(i - 1, m - 1)];
                if !c.is_zero() {
                    cur = &cur - &p[i - 1].scale(&c);
                }
            }
            p.push(cur);
        }
        p.pop().unwrap()
    }

    /// Characteristic polynomial by cofactor expansion of `det(T·I − M)`;
    /// exponential cost, for cross-checking small matrices.
    pub fn charpoly_by_expansion(&self) -> UvPoly {
        assert!(self.is_square());
        let n = self.rows;
        let entries: Vec<Vec<UvPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = -self[(i, j)].clone();
                        if i == j {
                            UvPoly::new(vec![c, Rational::one()])
                        } else {
                            UvPoly::constant(c)
                        }
                    })
                    .collect()
            })
            .collect();
        fn det(m: &[Vec<UvPoly>], rows: &[usize], cols: &[usize]) -> UvPoly {
            if rows.is_empty() {
                return UvPoly::one();
            }
            let r = rows[0];
            let mut acc = UvPoly::zero();
            for (k, &c) in cols.iter().enumerate() {
                if m[r][c].is_zero() {
                    continue;
                }
                let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let minor = &m[r][c] * &det(m, &rows[1..], &sub_cols);
                acc = if k % 2 == 0 { &acc + &minor } else { &acc - &minor };
            }
            acc
        }
        let idx: Vec<usize> = (0..n).collect();
        det(&entries, &idx, &idx)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl std::fmt::Debug for Matrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
    }

    #[test]
    fn charpoly_two_ways() {
        let a = m(&[&[2, 1, 0, 3], &[1, -1, 4, 0], &[0, 5, 2, 1], &[7, 0, 1, 1]]);
        assert_eq!(a.charpoly(), a.charpoly_by_expansion());
        let b = m(&[&[0, 0, 0], &[1, 0, -1], &[0, 1, 0]]);
        assert_eq!(b.charpoly(), UvPoly::from_ints(&[0, 1, 0, 1]));
        let z = m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 3]]);
        assert_eq!(z.charpoly(), z.charpoly_by_expansion());
    }

    #[test]
    fn solve_recovers_rhs() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[vec![rat(3), rat(5)]]).unwrap();
        assert_eq!(a.mul_vec(&x[0]), vec![rat(3), rat(5)]);
        assert!(m(&[&[1, 2], &[2, 4]]).solve(&[vec![rat(1), rat(1)]]).is_none());
    }
}
