//! Dense matrices over the Eisenstein integers.

use num_bigint::BigInt;
use num_traits::One;

use crate::eis::EisInt;

/// A dense row-major matrix over Z[w].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<EisInt>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Mat {
        Mat {
            rows,
            cols,
            data: vec![EisInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = EisInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<EisInt>>) -> Mat {
        let r = rows.len();
        let c = if r > 0 { rows[0].len() } else { 0 };
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> EisInt) -> Mat {
        let mut m = Mat::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(entries: &[EisInt]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn row(&self, i: usize) -> &[EisInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<EisInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn conj(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| self[(i, j)].conj())
    }

    pub fn neg(&self) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &other[(i, j)])
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    let e = &mut out[(i, j)];
                    *e += &p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[EisInt]) -> Vec<EisInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = EisInt::zero();
                for j in 0..self.cols {
                    acc += &(&self[(i, j)] * &v[j]);
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &EisInt) -> Mat {
        Mat::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] * s)
    }

    pub fn pow(&self, e: u64) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Mat::identity(self.rows)
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            let a = self[(i, c)].clone();
            let b = self[(j, c)].clone();
            self[(i, c)] = b;
            self[(j, c)] = a;
        }
    }

    /// row i -= q * row j
    pub fn row_sub_mul(&mut self, i: usize, j: usize, q: &EisInt) {
        for c in 0..self.cols {
            let p = q * &self[(j, c)];
            self[(i, c)] -= &p;
        }
    }

    pub fn scale_row(&mut self, i: usize, u: &EisInt) {
        for c in 0..self.cols {
            self[(i, c)] = &self[(i, c)] * u;
        }
    }

    /// Determinant by fraction-free (Bareiss) elimination; exact over Z[w].
    pub fn det(&self) -> EisInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return EisInt::one();
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = EisInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = !sign;
                    }
                    None => return EisInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[(k, k)] * &m[(i, j)]) - &(&m[(i, k)] * &m[(k, j)]);
                    m[(i, j)] = num.div_exact(&prev).expect("bareiss division is exact");
                }
                m[(i, k)] = EisInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// Inverse of a unimodular matrix (determinant a unit); panics otherwise.
    pub fn inverse_unimodular(&self) -> Mat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        // adjugate / det via cofactors is fine at these sizes
        let d = self.det();
        assert!(d.is_unit(), "matrix is not unimodular");
        let mut adj = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(i, j);
                let c = minor.det();
                let s = if (i + j) % 2 == 0 { c } else { -c };
                adj[(j, i)] = s;
            }
        }
        // divide by the unit determinant: multiply by its inverse d_conj/norm
        let dinv = d.conj(); // for a unit, d^{-1} = conj(d)
        adj.scale(&dinv)
    }

    fn minor(&self, i: usize, j: usize) -> Mat {
        Mat::from_fn(self.rows - 1, self.cols - 1, |r, c| {
            let rr = if r < i { r } else { r + 1 };
            let cc = if c < j { c } else { c + 1 };
            self[(rr, cc)].clone()
        })
    }

    /// Largest component magnitude, for growth diagnostics.
    pub fn max_abs(&self) -> BigInt {
        let mut m = BigInt::one();
        for e in &self.data {
            let na = e.a.magnitude().clone();
            let nb = e.b.magnitude().clone();
            let v = BigInt::from(na.max(nb));
            if v > m {
                m = v;
            }
        }
        m
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = EisInt;
    fn index(&self, (i, j): (usize, usize)) -> &EisInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut EisInt {
        &mut self.data[i * self.cols + j]
    }
}
