//! Double-double arithmetic: an unevaluated sum `hi + lo` carrying about 32
//! significant digits.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

pub(crate) const DD_EPSILON: f64 = 4.93e-32;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.hi == 0.0 && self.lo == 0.0
    }

    #[inline]
    pub fn abs(self) -> f64 {
        self.hi.abs()
    }

    #[inline]
    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = self.lo.mul_add(b, e);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    /// Quotient by a double.
    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - Dd::from_f64(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r - Dd::from_f64(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }

    /// Quotient by another double-double.
    pub fn div(self, b: Dd) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + Dd::from_f64(q3)
    }

    /// Square root to full double-double accuracy; zero for non-positive input.
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = (self - Dd { hi: p, lo: e }).hi / (2.0 * x);
        let (hi, lo) = quick_two_sum(x, r);
        Dd { hi, lo }
    }

    pub fn sqrt_f64(self) -> f64 {
        if self.hi <= 0.0 {
            return 0.0;
        }
        let s = self.hi.sqrt();
        s + self.lo / (2.0 * s)
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

/// Dense matrix of double-doubles, column-major.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct DdMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Dd>,
}

impl DdMatrix {
    /// Square matrix from its entries.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Dd) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                data.push(f(i, j));
            }
        }
        Self { rows: n, cols: n, data }
    }

    pub fn from_column_major(rows: usize, cols: usize, data: Vec<Dd>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Self { rows, cols, data }
    }

    pub fn from_f64(a: &DMatrix<f64>) -> Self {
        Self::from_column_major(a.nrows(), a.ncols(), a.iter().map(|v| Dd::from_f64(*v)).collect())
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Dd {
        self.data[j * self.rows + i]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        DMatrix::from_iterator(self.rows, self.cols, self.data.iter().map(|v| v.to_f64()))
    }

    /// Nonzero entries of each column as `(row, value)`.
    pub fn columns(&self) -> Vec<Vec<(usize, Dd)>> {
        self.data
            .chunks(self.rows.max(1))
            .take(self.cols)
            .map(|col| {
                col.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(i, v)| (i, *v))
                    .collect()
            })
            .collect()
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(Dd, Dd) -> Dd) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect(),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v.mul_f64(factor)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for i in 0..self.rows {
            for j in 0..self.cols {
                data.push(self.get(i, j));
            }
        }
        Self::from_column_major(self.cols, self.rows, data)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let (p, q) = (self.rows, other.cols);
        let cols = self.columns();
        let mut data = vec![Dd::ZERO; p * q];
        for j in 0..q {
            for (k, col) in cols.iter().enumerate() {
                let b = other.get(k, j);
                if b.is_zero() {
                    continue;
                }
                for &(i, a) in col {
                    data[j * p + i] = data[j * p + i] + a * b;
                }
            }
        }
        Self::from_column_major(p, q, data)
    }

    /// Kronecker product of square matrices.
    pub fn kronecker(&self, other: &Self) -> Self {
        let m = other.dim();
        Self::from_fn(self.dim() * m, |i, j| self.get(i / m, j / m) * other.get(i % m, j % m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_lost_digits() {
        let big = Dd::from_f64(1e17);
        let one = Dd::from_f64(1.0);
        let s = (big + one) - big;
        assert_eq!(s.to_f64(), 1.0);
        let third = Dd::from_f64(1.0).div_f64(3.0);
        let back = third.mul_f64(3.0) - one;
        assert!(back.to_f64().abs() < 1e-31);
        let p = third * third;
        assert!((p.mul_f64(9.0) - one).to_f64().abs() < 1e-31);
        assert!((Dd::from_f64(2.0).sqrt_f64() - 2f64.sqrt()).abs() < 1e-16);
        let seventh = one.div(Dd::from_f64(7.0));
        assert!((seventh.mul_f64(7.0) - one).to_f64().abs() < 1e-31);
        let acc = Dd::from_f64(1.0 + 2f64.powi(-30)).mul_f64(1.0 - 2f64.powi(-30));
        assert_eq!(acc.lo, -(2f64.powi(-60)));
        let r2 = Dd::from_f64(2.0).sqrt();
        assert!((r2 * r2 - Dd::from_f64(2.0)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn matrix_products() {
        let a = DdMatrix::from_fn(3, |i, j| Dd::from_f64((i + 2 * j) as f64).div_f64(3.0));
        let id = DdMatrix::from_fn(3, |i, j| Dd::from_f64(if i == j { 1.0 } else { 0.0 }));
        assert_eq!(a.matmul(&id), a);
        assert_eq!(id.matmul(&a.transpose()).transpose(), a);
        let k = id.kronecker(&a);
        assert_eq!(k.dim(), 9);
        assert_eq!(k.get(4, 5), a.get(1, 2));
        assert!(k.get(0, 3).is_zero());
    }
}
