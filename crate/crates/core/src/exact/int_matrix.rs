use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, row-major, arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&e| BigInt::from(e)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let t = a * b;
                        out[(i, j)] += t;
                    }
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for j in 0..self.cols {
                    if !self[(i, j)].is_zero() && !v[j].is_zero() {
                        acc += &self[(i, j)] * &v[j];
                    }
                }
                acc
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|e| e.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Submatrix by row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| {
            self[(rows[i], cols[j])].clone()
        })
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                // pivot search
                let mut found = None;
                for i in k + 1..n {
                    if !a[idx(i, k)].is_zero() {
                        found = Some(i);
                        break;
                    }
                }
                match found {
                    None => return BigInt::zero(),
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    let (q, r) = num_integer::Integer::div_rem(&num, &prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[idx(i, j)] = q;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        sign * a[idx(n - 1, n - 1)].clone()
    }

    /// Exact characteristic polynomial det(zI - A) by the
    /// Faddeev–LeVerrier recurrence. All divisions are exact over Z.
    /// Returns coefficients in descending powers, leading 1.
    pub fn char_poly(&self) -> Vec<BigInt> {
        assert!(self.is_square(), "char_poly of non-square matrix");
        let n = self.rows;
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(BigInt::one());
        if n == 0 {
            return coeffs;
        }
        let mut m = Self::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let mut tr = BigInt::zero();
            for i in 0..n {
                tr += &am[(i, i)];
            }
            let (c, r) = num_integer::Integer::div_rem(&(-tr), &BigInt::from(k));
            debug_assert!(r.is_zero(), "Faddeev-LeVerrier trace division must be exact");
            coeffs.push(c.clone());
            m = am;
            for i in 0..n {
                m[(i, i)] += &c;
            }
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = IntMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert_eq!(m.determinant(), BigInt::one());
        let s = IntMatrix::from_i64(3, 3, &[0, 1, 0, 1, 0, 0, 0, 0, 1]);
        assert_eq!(s.determinant(), BigInt::from(-1));
    }

    #[test]
    fn char_poly_companion_of_known() {
        // [[0,-1],[1,3]] has char poly z^2 - 3z + 1
        let m = IntMatrix::from_i64(2, 2, &[0, -1, 1, 3]);
        let cp = m.char_poly();
        let expect: Vec<BigInt> = [1, -3, 1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(cp, expect);
    }

    #[test]
    fn char_poly_identity() {
        let m = IntMatrix::identity(3);
        // (z-1)^3 = z^3 - 3z^2 + 3z - 1
        let expect: Vec<BigInt> = [1, -3, 3, -1].iter().map(|&c| BigInt::from(c)).collect();
        assert_eq!(m.char_poly(), expect);
    }
}
