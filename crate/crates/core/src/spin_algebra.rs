//! Spin-S operator matrices and operator-space inner products.
//!
//! Matrices are written in the `|S, m>` basis with `m` descending from `S`
//! to `-S`, so `z_hat` is diagonal with entries `m / S`.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dd::{Dd, DdMatrix};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense complex square matrix acting on a `dim`-dimensional Hilbert space.
#[derive(Clone)]
pub struct DenseOperator {
    data: DMatrix<Complex64>,
    /// Double-double copy of a real operator whose entries are known beyond
    /// `f64` rounding. Kept through sums, scalings, products and tensor
    /// products of such operators.
    exact: Option<Arc<DdMatrix>>,
}

impl PartialEq for DenseOperator {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl fmt::Debug for DenseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DenseOperator(dim = {})", self.dim())
    }
}

impl DenseOperator {
    pub fn from_matrix(data: DMatrix<Complex64>) -> Result<Self> {
        if data.nrows() != data.ncols() {
            return Err(Error::InvalidArgument(format!(
                "operator matrix must be square, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        if data.nrows() == 0 {
            return Err(Error::InvalidArgument("operator dimension must be >= 1".into()));
        }
        Ok(Self { data, exact: None })
    }

    pub fn from_real(data: &DMatrix<f64>) -> Result<Self> {
        Self::from_matrix(data.map(|v| Complex64::new(v, 0.0)))
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        assert!(dim >= 1, "operator dimension must be >= 1");
        Self {
            data: DMatrix::from_fn(dim, dim, f),
            exact: None,
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| ZERO)
    }

    pub fn identity(dim: usize) -> Self {
        assert!(dim >= 1, "operator dimension must be >= 1");
        Self::from_exact(DdMatrix::from_fn(dim, |i, j| {
            Dd::from_f64(if i == j { 1.0 } else { 0.0 })
        }))
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self::from_exact(DdMatrix::from_fn(values.len(), |i, j| {
            Dd::from_f64(if i == j { values[i] } else { 0.0 })
        }))
    }

    /// Real operator from double-double entries.
    pub(crate) fn from_exact(exact: DdMatrix) -> Self {
        Self {
            data: exact.to_f64().map(|v| Complex64::new(v, 0.0)),
            exact: Some(Arc::new(exact)),
        }
    }

    /// Double-double entries, exact up to rounding at that precision.
    pub(crate) fn exact(&self) -> Option<&DdMatrix> {
        self.exact.as_deref()
    }

    fn zip_exact(&self, other: &Self, f: impl Fn(&DdMatrix, &DdMatrix) -> DdMatrix) -> Option<Arc<DdMatrix>> {
        match (&self.exact, &other.exact) {
            (Some(a), Some(b)) => Some(Arc::new(f(a, b))),
            _ => None,
        }
    }

    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.data
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.data
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            data: self.data.adjoint(),
            exact: self.exact.as_ref().map(|e| Arc::new(e.transpose())),
        }
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            data: &self.data * Complex64::new(factor, 0.0),
            exact: self.exact.as_ref().map(|e| Arc::new(e.scale(factor))),
        }
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        Self {
            data: &self.data * factor,
            exact: None,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.data.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max|A - A^dagger| <= tol * max|A|` (a zero matrix is Hermitian).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.max_abs();
        let n = self.dim();
        for j in 0..n {
            for i in 0..=j {
                let d = (self.data[(i, j)] - self.data[(j, i)].conj()).norm();
                if d > tol * scale {
                    return false;
                }
            }
        }
        true
    }

    /// True when every entry has an exactly vanishing imaginary part.
    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn real_part(&self) -> DMatrix<f64> {
        self.data.map(|z| z.re)
    }

    pub fn imag_part(&self) -> DMatrix<f64> {
        self.data.map(|z| z.im)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    /// Largest entrywise distance to another operator of the same dimension.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_same_dim(other)?;
        Ok(self
            .data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            data: &self.data + &other.data,
            exact: self.zip_exact(other, |a, b| a.zip_with(b, |x, y| x + y)),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            data: &self.data - &other.data,
            exact: self.zip_exact(other, |a, b| a.zip_with(b, |x, y| x - y)),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            data: multiply(&self.data, &other.data),
            exact: self.zip_exact(other, |a, b| a.matmul(b)),
        })
    }
}

/// Complex product routed through real matrix products, which are much
/// faster than nalgebra's generic complex kernel. Purely real operands take
/// a single real product.
pub(crate) fn multiply(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let a_real = a.iter().all(|z| z.im == 0.0);
    let b_real = b.iter().all(|z| z.im == 0.0);
    let (ar, br) = (a.map(|z| z.re), b.map(|z| z.re));
    match (a_real, b_real) {
        (true, true) => (ar * br).map(|v| Complex64::new(v, 0.0)),
        (true, false) => {
            let bi = b.map(|z| z.im);
            let re = &ar * br;
            let im = ar * bi;
            re.zip_map(&im, Complex64::new)
        }
        (false, true) => {
            let ai = a.map(|z| z.im);
            let re = ar * &br;
            let im = ai * br;
            re.zip_map(&im, Complex64::new)
        }
        (false, false) => {
            let (ai, bi) = (a.map(|z| z.im), b.map(|z| z.im));
            let re = &ar * &br - &ai * &bi;
            let im = ar * bi + ai * br;
            re.zip_map(&im, Complex64::new)
        }
    }
}

impl Add for &DenseOperator {
    type Output = DenseOperator;
    fn add(self, rhs: &DenseOperator) -> DenseOperator {
        self.try_add(rhs).expect("operator dimensions must agree")
    }
}

impl Sub for &DenseOperator {
    type Output = DenseOperator;
    fn sub(self, rhs: &DenseOperator) -> DenseOperator {
        self.try_sub(rhs).expect("operator dimensions must agree")
    }
}

impl Mul for &DenseOperator {
    type Output = DenseOperator;
    fn mul(self, rhs: &DenseOperator) -> DenseOperator {
        self.try_mul(rhs).expect("operator dimensions must agree")
    }
}

/// A spin quantum number `S`, stored as the integer `2S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin(u32);

impl Spin {
    /// Accepts any positive half-integer.
    pub fn new(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        if !s.is_finite() || s <= 0.0 || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "spin must be a positive half-integer, got {s}"
            )));
        }
        Ok(Spin(twice.round() as u32))
    }

    pub fn from_twice(twice: u32) -> Result<Self> {
        if twice == 0 {
            return Err(Error::InvalidArgument("spin must be positive".into()));
        }
        Ok(Spin(twice))
    }

    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Hilbert-space dimension `2S + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// Effective Planck constant `1/S`.
    pub fn hbar_eff(self) -> f64 {
        1.0 / self.value()
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// The rescaled spin operators `S_i / S`.
#[derive(Debug, Clone)]
pub struct SpinTriple {
    pub spin: Spin,
    pub x_hat: DenseOperator,
    pub y_hat: DenseOperator,
    pub z_hat: DenseOperator,
    pub hbar_eff: f64,
}

impl SpinTriple {
    pub fn new(spin: Spin) -> Self {
        let s = spin.value();
        let dim = spin.dim();
        let m = |k: usize| s - k as f64;
        // <m+1| S_+ |m> sits at (k-1, k) in descending-m order.
        let raise = |row: usize, col: usize| -> f64 {
            if col >= 1 && row == col - 1 {
                let mm = m(col);
                (s * (s + 1.0) - mm * (mm + 1.0)).sqrt()
            } else {
                0.0
            }
        };
        // Entries carried in double-double so that matrix elements between
        // distant levels are not buried under rounding of the inputs.
        let exact_raise = |row: usize, col: usize| -> Dd {
            if col >= 1 && row == col - 1 {
                let mm = m(col);
                Dd::from_f64(s * (s + 1.0) - mm * (mm + 1.0)).sqrt()
            } else {
                Dd::ZERO
            }
        };
        let x_hat = DenseOperator::from_exact(DdMatrix::from_fn(dim, |i, j| {
            (exact_raise(i, j) + exact_raise(j, i)).div_f64(2.0 * s)
        }));
        let y_hat = DenseOperator::from_fn(dim, |i, j| {
            // (S_+ - S_-) / 2i
            let v = (raise(i, j) - raise(j, i)) / (2.0 * s);
            -I * v
        });
        let z_hat = DenseOperator::from_exact(DdMatrix::from_fn(dim, |i, j| {
            if i == j {
                Dd::from_f64(m(i)).div_f64(s)
            } else {
                Dd::ZERO
            }
        }));
        SpinTriple {
            spin,
            x_hat,
            y_hat,
            z_hat,
            hbar_eff: spin.hbar_eff(),
        }
    }
}

/// Builds `x_hat`, `y_hat`, `z_hat` for spin `s`; `2s` must be a positive integer.
pub fn build_spin_triple(s: f64) -> Result<SpinTriple> {
    Ok(SpinTriple::new(Spin::new(s)?))
}

/// Infinite-temperature inner product `Tr(A^dagger B) / D`.
pub fn hs_inner(a: &DenseOperator, b: &DenseOperator) -> Result<Complex64> {
    a.check_same_dim(b)?;
    let sum: Complex64 = a
        .data
        .iter()
        .zip(b.data.iter())
        .map(|(x, y)| x.conj() * y)
        .sum();
    Ok(sum / a.dim() as f64)
}

/// `AB - BA`.
pub fn commutator(a: &DenseOperator, b: &DenseOperator) -> Result<DenseOperator> {
    a.check_same_dim(b)?;
    let ab = multiply(&a.data, &b.data);
    let ba = multiply(&b.data, &a.data);
    Ok(DenseOperator {
        data: ab - ba,
        exact: a.zip_exact(b, |x, y| x.matmul(y).zip_with(&y.matmul(x), |p, q| p - q)),
    })
}

/// Kronecker product `A (x) B`.
pub fn tensor_product(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
    DenseOperator {
        data: a.data.kronecker(&b.data),
        exact: a.zip_exact(b, |x, y| x.kronecker(y)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pauli() -> [DenseOperator; 3] {
        let x = DenseOperator::from_fn(2, |i, j| if i != j { c(1.0, 0.0) } else { ZERO });
        let y = DenseOperator::from_fn(2, |i, j| match (i, j) {
            (0, 1) => c(0.0, -1.0),
            (1, 0) => c(0.0, 1.0),
            _ => ZERO,
        });
        let z = DenseOperator::diagonal(&[1.0, -1.0]);
        [x, y, z]
    }

    #[test]
    fn spin_half_gives_pauli_matrices() {
        let t = build_spin_triple(0.5).unwrap();
        let [px, py, pz] = pauli();
        assert!(t.x_hat.max_abs_diff(&px).unwrap() < 1e-15);
        assert!(t.y_hat.max_abs_diff(&py).unwrap() < 1e-15);
        assert!(t.z_hat.max_abs_diff(&pz).unwrap() < 1e-15);
        assert_eq!(t.hbar_eff, 2.0);
        let xy = commutator(&t.x_hat, &t.y_hat).unwrap();
        assert!(xy.max_abs_diff(&t.z_hat.scale_complex(c(0.0, 2.0))).unwrap() < 1e-15);
    }

    #[test]
    fn spin_one_entries() {
        let t = build_spin_triple(1.0).unwrap();
        let z = [1.0, 0.0, -1.0];
        for (k, v) in z.iter().enumerate() {
            assert_eq!(t.z_hat.get(k, k), c(*v, 0.0));
        }
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            assert!((t.x_hat.get(i, j) - c(r, 0.0)).norm() < 1e-15);
        }
        assert_eq!(t.x_hat.get(0, 2), ZERO);
        let xy = commutator(&t.x_hat, &t.y_hat).unwrap();
        assert!(xy.max_abs_diff(&t.z_hat.scale_complex(c(0.0, 1.0))).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_bad_spins() {
        for s in [0.0, -1.0, 0.3, 1.25, f64::NAN] {
            assert!(matches!(build_spin_triple(s), Err(Error::InvalidArgument(_))));
        }
    }

    #[test]
    fn algebra_holds_up_to_spin_75() {
        for twice in 1..=150u32 {
            let t = SpinTriple::new(Spin::from_twice(twice).unwrap());
            let h = t.hbar_eff;
            let dim = t.spin.dim();
            assert_eq!(t.x_hat.dim(), dim);
            let ih = c(0.0, h);
            let cyc = [
                (&t.x_hat, &t.y_hat, &t.z_hat),
                (&t.y_hat, &t.z_hat, &t.x_hat),
                (&t.z_hat, &t.x_hat, &t.y_hat),
            ];
            for (a, b, r) in cyc {
                let lhs = commutator(a, b).unwrap();
                assert!(lhs.max_abs_diff(&r.scale_complex(ih)).unwrap() < 1e-12);
            }
            let cas = &(&(&t.x_hat * &t.x_hat) + &(&t.y_hat * &t.y_hat)) + &(&t.z_hat * &t.z_hat);
            let expect = DenseOperator::identity(dim).scale(1.0 + h);
            assert!(cas.max_abs_diff(&expect).unwrap() < 1e-12, "S = {}", t.spin);
            assert!(t.x_hat.is_hermitian(1e-12) && t.y_hat.is_hermitian(1e-12));
        }
    }

    #[test]
    fn inner_product_examples() {
        let half = build_spin_triple(0.5).unwrap();
        assert!((hs_inner(&half.z_hat, &half.z_hat).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let one = build_spin_triple(1.0).unwrap();
        assert!((hs_inner(&one.z_hat, &one.z_hat).unwrap() - c(2.0 / 3.0, 0.0)).norm() < 1e-15);
        for s in [0.5, 1.0, 3.5, 10.0] {
            let t = build_spin_triple(s).unwrap();
            let id = DenseOperator::identity(t.spin.dim());
            assert!(hs_inner(&id, &t.z_hat).unwrap().norm() < 1e-14);
        }
        assert!(matches!(
            hs_inner(&half.z_hat, &one.z_hat),
            Err(Error::DimensionMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn commutator_examples() {
        let t = build_spin_triple(0.5).unwrap();
        assert!(commutator(&t.x_hat, &t.x_hat).unwrap().max_abs() == 0.0);
        let xz = commutator(&t.x_hat, &t.z_hat).unwrap();
        assert!(xz.max_abs_diff(&t.y_hat.scale_complex(c(0.0, -2.0))).unwrap() < 1e-15);
        let one = build_spin_triple(1.0).unwrap();
        assert!(commutator(&t.x_hat, &one.x_hat).is_err());
    }

    #[test]
    fn tensor_product_examples() {
        let id2 = DenseOperator::identity(2);
        assert_eq!(tensor_product(&id2, &id2), DenseOperator::identity(4));
        let [_, _, z] = pauli();
        let zz = tensor_product(&z, &z);
        assert_eq!(zz, DenseOperator::diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn spin_display() {
        assert_eq!(Spin::new(1.5).unwrap().to_string(), "3/2");
        assert_eq!(Spin::new(25.0).unwrap().to_string(), "25");
    }
}
