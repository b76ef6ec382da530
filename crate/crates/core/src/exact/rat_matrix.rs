use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::IntMatrix;

/// Dense rational matrix, row-major, arbitrary precision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> BigRational,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, data }
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<BigRational>) -> Self {
        assert_eq!(data.len(), rows * cols);
        RatMatrix { rows, cols, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_fn(m.nrows(), m.ncols(), |i, j| {
            BigRational::from_integer(m[(i, j)].clone())
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
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

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &other[(i, j)])
    }

    /// True if every entry has denominator 1.
    pub fn is_integer(&self) -> bool {
        self.data.iter().all(|e| e.denom().is_one())
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        if !self.is_integer() {
            return None;
        }
        Some(IntMatrix::from_fn(self.rows, self.cols, |i, j| {
            self[(i, j)].numer().clone()
        }))
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| rational_to_f64(&self[(i, j)]))
    }

    pub fn max_abs_f64(&self) -> f64 {
        self.data
            .iter()
            .map(|e| rational_to_f64(&e.abs()))
            .fold(0.0, f64::max)
    }

    /// Exact characteristic polynomial det(zI - A) by Faddeev–LeVerrier.
    /// Returns coefficients in descending powers, leading 1.
    pub fn char_poly(&self) -> Vec<BigRational> {
        assert_eq!(self.rows, self.cols, "char_poly of non-square matrix");
        let n = self.rows;
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(BigRational::one());
        if n == 0 {
            return coeffs;
        }
        let mut m = Self::identity(n);
        for k in 1..=n {
            let am = self.mul(&m);
            let mut tr = BigRational::zero();
            for i in 0..n {
                tr += &am[(i, i)];
            }
            let c = -tr / BigRational::from_integer(BigInt::from(k));
            coeffs.push(c.clone());
            m = am;
            for i in 0..n {
                m[(i, i)] += &c;
            }
        }
        coeffs
    }
}

impl std::ops::Index<(usize, usize)> for RatMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Conversion that survives numerators and denominators too large for
/// `to_f64` on their own.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // fall back on a scaled quotient
    let bits = r.numer().bits().max(r.denom().bits()) as i64;
    let shift = bits.saturating_sub(100);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}
