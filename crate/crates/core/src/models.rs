//! Quantum LMG and Feingold-Peres Hamiltonians and their spectra.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::dd::DdMatrix;
use crate::error::{Error, Result};
use crate::refine::{symmetric_eigen, RefinedEigen};
use crate::spin_algebra::{tensor_product, DenseOperator, Spin, SpinTriple};

/// `H = x_hat + J z_hat^2` and the rescaled `H_tilde = S H`.
#[derive(Debug, Clone)]
pub struct LmgModel {
    pub spin: Spin,
    pub coupling: f64,
    pub spins: SpinTriple,
    pub h: DenseOperator,
    pub h_tilde: DenseOperator,
}

impl LmgModel {
    pub fn hbar_eff(&self) -> f64 {
        self.spin.hbar_eff()
    }

    /// Factor relating `H_tilde` to `H`.
    pub fn time_scale(&self) -> f64 {
        self.spin.value()
    }
}

pub fn build_lmg(spin: Spin, coupling: f64) -> Result<LmgModel> {
    if !coupling.is_finite() {
        return Err(Error::InvalidArgument(format!("coupling must be finite, got {coupling}")));
    }
    let spins = SpinTriple::new(spin);
    let z2 = &spins.z_hat * &spins.z_hat;
    let h = &spins.x_hat + &z2.scale(coupling);
    let h_tilde = h.scale(spin.value());
    Ok(LmgModel {
        spin,
        coupling,
        spins,
        h,
        h_tilde,
    })
}

/// Two coupled tops, `H = (1+c)(x1 + x2) + 4(1-c) z1 z2`, on the product space
/// with site 1 as the left tensor factor.
#[derive(Debug, Clone)]
pub struct FpModel {
    pub spin: Spin,
    pub c: f64,
    pub x1: DenseOperator,
    pub x2: DenseOperator,
    pub z1: DenseOperator,
    pub z2: DenseOperator,
    pub h: DenseOperator,
    pub h_tilde: DenseOperator,
}

impl FpModel {
    pub fn hbar_eff(&self) -> f64 {
        self.spin.hbar_eff()
    }

    pub fn time_scale(&self) -> f64 {
        self.spin.value()
    }

    /// The symmetric seed `x_hat_1 + x_hat_2`.
    pub fn x_sum(&self) -> DenseOperator {
        &self.x1 + &self.x2
    }
}

pub fn build_fp(spin: Spin, c: f64) -> Result<FpModel> {
    if !(-1.0..=1.0).contains(&c) {
        return Err(Error::InvalidArgument(format!("c must lie in [-1, 1], got {c}")));
    }
    let t = SpinTriple::new(spin);
    let id = DenseOperator::identity(spin.dim());
    let x1 = tensor_product(&t.x_hat, &id);
    let x2 = tensor_product(&id, &t.x_hat);
    let z1 = tensor_product(&t.z_hat, &id);
    let z2 = tensor_product(&id, &t.z_hat);
    let h = &(&x1 + &x2).scale(1.0 + c) + &(&z1 * &z2).scale(4.0 * (1.0 - c));
    let h_tilde = h.scale(spin.value());
    Ok(FpModel {
        spin,
        c,
        x1,
        x2,
        z1,
        z2,
        h,
        h_tilde,
    })
}

/// Eigenpairs `H v_k = E_k v_k` with ascending `E_k`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    vectors: DMatrix<Complex64>,
    /// Present when `H` is real symmetric; identical to `vectors` then.
    real_vectors: Option<DMatrix<f64>>,
    refined: Option<RefinedEigen>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// Unitary matrix whose columns are the eigenvectors.
    pub fn vectors(&self) -> &DMatrix<Complex64> {
        &self.vectors
    }

    /// True when matrix elements of real operators are accurate entry by
    /// entry rather than relative to the operator norm.
    pub(crate) fn is_refined(&self) -> bool {
        self.refined.is_some()
    }

    pub fn real_vectors(&self) -> Option<&DMatrix<f64>> {
        self.real_vectors.as_ref()
    }

    /// Matrix elements `<m| A |n>` in the eigenbasis.
    pub fn to_eigenbasis(&self, op: &DenseOperator) -> Result<DMatrix<Complex64>> {
        if op.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: op.dim(),
            });
        }
        if let (Some(r), true) = (&self.refined, op.is_real()) {
            let exact = match op.exact() {
                Some(e) => r.transform(e),
                None => r.transform(&DdMatrix::from_f64(&op.real_part())),
            };
            return Ok(exact.map(|x| Complex64::new(x, 0.0)));
        }
        if let (Some(v), true) = (&self.real_vectors, op.is_real()) {
            let a = op.real_part();
            let out = v.transpose() * (a * v);
            return Ok(out.map(|x| Complex64::new(x, 0.0)));
        }
        let vh = self.vectors.adjoint();
        Ok(crate::spin_algebra::multiply(
            &vh,
            &crate::spin_algebra::multiply(op.matrix(), &self.vectors),
        ))
    }

    /// `V diag(E) V^dagger`.
    pub fn reconstruct(&self) -> DenseOperator {
        let n = self.dim();
        let scaled = DMatrix::from_fn(n, n, |i, j| self.vectors[(i, j)] * self.eigenvalues[j]);
        let m = crate::spin_algebra::multiply(&scaled, &self.vectors.adjoint());
        DenseOperator::from_matrix(m).expect("square by construction")
    }

    /// Index of the eigenvalue closest to `e`.
    pub fn nearest(&self, e: f64) -> usize {
        let mut best = 0;
        for (k, v) in self.eigenvalues.iter().enumerate() {
            if (v - e).abs() < (self.eigenvalues[best] - e).abs() {
                best = k;
            }
        }
        best
    }
}

/// Full eigendecomposition of a Hermitian operator.
///
/// Eigenvalues ascend; each eigenvector is rotated so that its first entry of
/// modulus above `1e-8` is real and positive. Real symmetric input takes a
/// real solver and yields real eigenvectors.
pub fn eigendecompose(h: &DenseOperator) -> Result<SpectralDecomposition> {
    if !h.is_hermitian(1e-12) {
        return Err(Error::InvalidArgument("eigendecompose requires a Hermitian operator".into()));
    }
    let n = h.dim();
    if h.is_real() {
        let exact = match h.exact() {
            Some(e) => e.clone(),
            None => DdMatrix::from_f64(&h.real_part()),
        };
        let exact = exact.zip_with(&exact.transpose(), |p, q| (p + q).mul_f64(0.5));
        // Matrix elements between distant levels are exponentially small;
        // double-double eigenvectors keep them accurate entry by entry.
        let refined = symmetric_eigen(&exact, 2);
        let eigenvalues: Vec<f64> = refined.values.iter().map(|e| e.to_f64()).collect();
        let v = refined.vectors_f64();
        let vectors = v.map(|x| Complex64::new(x, 0.0));
        return Ok(SpectralDecomposition {
            eigenvalues,
            vectors,
            real_vectors: Some(v),
            refined: Some(refined),
        });
    }
    let m = h.matrix();
    let herm = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(herm);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]).then(i.cmp(&j)));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut v = DMatrix::<Complex64>::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        let src = eig.eigenvectors.column(k);
        let scale = src.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let phase = src
            .iter()
            .find(|z| z.norm() > 1e-8 * scale.max(1e-300))
            .map(|z| z.conj() / z.norm())
            .unwrap_or(Complex64::new(1.0, 0.0));
        v.set_column(col, &(src * phase));
    }
    Ok(SpectralDecomposition {
        eigenvalues,
        vectors: v,
        real_vectors: None,
        refined: None,
    })
}

/// Classical energy range `(min, max)` of `x + J z^2` on the unit sphere.
pub fn lmg_classical_range(coupling: f64) -> (f64, f64) {
    let j = coupling;
    // With y free, z^2 ranges over [0, 1 - x^2]; the extreme on the z-side
    // is g(x) = x + J (1 - x^2), stationary at x = 1/(2J).
    let g = |x: f64| x + j * (1.0 - x * x);
    let mut extremes = vec![g(-1.0), g(1.0)];
    if j != 0.0 {
        let xs = 1.0 / (2.0 * j);
        if xs.abs() <= 1.0 {
            extremes.push(g(xs));
        }
    }
    if j >= 0.0 {
        (-1.0, extremes.into_iter().fold(f64::MIN, f64::max))
    } else {
        (extremes.into_iter().fold(f64::MAX, f64::min), 1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::build_spin_triple;

    fn spin(s: f64) -> Spin {
        Spin::new(s).unwrap()
    }

    #[test]
    fn lmg_spin_half() {
        let m = build_lmg(spin(0.5), 2.0).unwrap();
        let t = build_spin_triple(0.5).unwrap();
        let expect = &t.x_hat + &DenseOperator::identity(2).scale(2.0);
        assert!(m.h.max_abs_diff(&expect).unwrap() < 1e-15);
        assert!(m.h_tilde.max_abs_diff(&expect.scale(0.5)).unwrap() < 1e-15);
        assert!(m.h.is_hermitian(1e-12) && m.h_tilde.is_hermitian(1e-12));
    }

    #[test]
    fn h_tilde_is_exact_multiple() {
        let m = build_lmg(spin(7.5), 2.0).unwrap();
        for (a, b) in m.h.matrix().iter().zip(m.h_tilde.matrix().iter()) {
            assert_eq!(*a * 7.5, *b);
        }
    }

    #[test]
    fn free_spin_spectrum() {
        let s = 3.0;
        let m = build_lmg(spin(s), 0.0).unwrap();
        let e = eigendecompose(&m.h).unwrap();
        for (k, v) in e.eigenvalues.iter().enumerate() {
            let expect = (k as f64 - s) / s;
            assert!((v - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn lmg_spectrum_within_classical_range() {
        let m = build_lmg(spin(25.0), 2.0).unwrap();
        assert_eq!(m.h.dim(), 51);
        let e = eigendecompose(&m.h).unwrap();
        let (lo, hi) = lmg_classical_range(2.0);
        assert!((hi - 17.0 / 8.0).abs() < 1e-15 && lo == -1.0);
        let slack = 2.0 / 25.0;
        assert!(e.eigenvalues[0] >= lo - slack);
        assert!(*e.eigenvalues.last().unwrap() <= hi + slack);
        let rec = e.reconstruct();
        assert!(rec.max_abs_diff(&m.h).unwrap() <= 1e-10 * m.h.max_abs());
    }

    #[test]
    fn simple_spectra() {
        let t = build_spin_triple(1.0).unwrap();
        let e = eigendecompose(&t.z_hat).unwrap();
        assert_eq!(e.eigenvalues.len(), 3);
        for (v, x) in e.eigenvalues.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((v - x).abs() < 1e-14);
        }
        let half = build_spin_triple(0.5).unwrap();
        let e = eigendecompose(&half.x_hat).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14 && (e.eigenvalues[1] - 1.0).abs() < 1e-14);
        // Complex Hermitian input: sigma_y.
        let e = eigendecompose(&half.y_hat).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14 && (e.eigenvalues[1] - 1.0).abs() < 1e-14);
        let rec = e.reconstruct();
        assert!(rec.max_abs_diff(&half.y_hat).unwrap() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = DenseOperator::from_fn(2, |i, j| Complex64::new((i + 2 * j) as f64, 0.0));
        assert!(matches!(eigendecompose(&a), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn eigenvector_sign_convention() {
        let m = build_lmg(spin(5.0), 2.0).unwrap();
        let e = eigendecompose(&m.h).unwrap();
        let v = e.real_vectors().unwrap();
        for col in v.column_iter() {
            let lead = col.iter().find(|x| x.abs() > 1e-8).unwrap();
            assert!(*lead > 0.0);
        }
        let again = eigendecompose(&m.h).unwrap();
        assert_eq!(e.eigenvalues, again.eigenvalues);
        assert_eq!(e.vectors(), again.vectors());
    }

    #[test]
    fn fp_construction() {
        let m = build_fp(spin(0.5), 0.0).unwrap();
        let t = build_spin_triple(0.5).unwrap();
        let id = DenseOperator::identity(2);
        let expect = &(&tensor_product(&t.x_hat, &id) + &tensor_product(&id, &t.x_hat))
            + &tensor_product(&t.z_hat, &t.z_hat).scale(4.0);
        assert!(m.h.max_abs_diff(&expect).unwrap() < 1e-15);
        let free = build_fp(spin(1.5), 1.0).unwrap();
        assert!(free.h.max_abs_diff(&free.x_sum().scale(2.0)).unwrap() < 1e-15);
        assert_eq!(free.h.dim(), 16);
        assert!(free.h.is_hermitian(1e-12));
        assert!(build_fp(spin(1.0), 1.5).is_err());
    }

    #[test]
    fn fp_equal_spin_reduction_to_lmg() {
        // On x1 = x2 = x, z1 = z2 = z the classical FP energy equals
        // 2(1+c) (x + J z^2) with J = 2(1-c)/(1+c).
        for c in [-0.7, -0.2, 0.0, 0.3, 0.9] {
            let j = 2.0 * (1.0 - c) / (1.0 + c);
            for k in 0..50 {
                let th = 0.13 * k as f64;
                let (x, z) = (th.cos(), th.sin() * 0.6);
                let fp = (1.0 + c) * 2.0 * x + 4.0 * (1.0 - c) * z * z;
                let lmg = 2.0 * (1.0 + c) * (x + j * z * z);
                assert!((fp - lmg).abs() < 1e-12);
            }
        }
    }
}
