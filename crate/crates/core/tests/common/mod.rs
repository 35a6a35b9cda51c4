#![allow(dead_code)]

use krylov_core::spin_algebra::DenseOperator;
use krylov_core::Complex64;
use nalgebra::DMatrix;

fn inner(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum::<Complex64>() / a.nrows() as f64
}

/// Lanczos coefficients by explicit Gram-Schmidt: each new direction is the
/// commutator of the previous basis element with `h`, orthogonalized against
/// every earlier element twice. No three-term recursion is used.
pub fn gram_schmidt_b(h: &DenseOperator, seed: &DenseOperator, tol: f64) -> Vec<f64> {
    let d = h.dim();
    let h = h.matrix();
    let mut q0 = seed.matrix().clone();
    let n0 = inner(&q0, &q0).re.sqrt();
    q0 /= Complex64::new(n0, 0.0);
    let mut basis = vec![q0];
    let mut b = Vec::new();
    while basis.len() < d * d - d + 1 {
        let last = &basis[basis.len() - 1];
        let mut v = h * last - last * h;
        for _ in 0..2 {
            for q in &basis {
                let c = inner(q, &v);
                v -= q * c;
            }
        }
        let norm = inner(&v, &v).re.sqrt();
        if norm < tol * b.first().copied().unwrap_or(1.0) {
            break;
        }
        b.push(norm);
        basis.push(v / Complex64::new(norm, 0.0));
    }
    b
}
