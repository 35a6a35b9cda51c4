use nalgebra::DMatrix;
use num_complex::Complex64;

use super::dynamics::{fp_rhs, lmg_rhs, ClassicalState};
use crate::error::{Error, Result};

/// Fixed point of the classical flow with its linearization.
#[derive(Debug, Clone, PartialEq)]
pub struct SaddlePoint {
    pub coords: ClassicalState,
    /// Sorted by real part, then imaginary part.
    pub jacobian_eigenvalues: Vec<Complex64>,
    /// Largest positive real part of the spectrum, 0 if there is none.
    pub omega_saddle: f64,
    /// Label of the fixed-point family for FP points.
    pub family: FixedPointFamily,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixedPointFamily {
    /// Spins along `+-x`.
    Axial,
    /// LMG points with `x = 1/(2J)`.
    Tilted,
    /// FP points with `x1 = x2 = +-(1+c)/(4(1-c))`; `gamma = z1/z2`.
    FpTilted { gamma: f64 },
}

impl SaddlePoint {
    pub fn is_unstable(&self) -> bool {
        self.omega_saddle > 0.0
    }
}

fn spectrum(jac: DMatrix<f64>) -> (Vec<Complex64>, f64) {
    let scale = jac.amax().max(1.0);
    let mut ev: Vec<Complex64> = jac
        .complex_eigenvalues()
        .iter()
        .map(|z| {
            // Clean the rounding noise the Schur form leaves on exact zeros.
            let re = if z.re.abs() < 1e-13 * scale { 0.0 } else { z.re };
            let im = if z.im.abs() < 1e-13 * scale { 0.0 } else { z.im };
            Complex64::new(re, im)
        })
        .collect();
    ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let omega = ev.iter().map(|z| z.re).fold(0.0, f64::max);
    (ev, omega)
}

/// Jacobian of the LMG flow at `s`.
pub fn lmg_jacobian(s: &[f64; 3], j: f64) -> DMatrix<f64> {
    let [x, y, z] = *s;
    DMatrix::from_row_slice(
        3,
        3,
        &[
            0.0,
            -2.0 * j * z,
            -2.0 * j * y,
            2.0 * j * z,
            0.0,
            -1.0 + 2.0 * j * x,
            0.0,
            1.0,
            0.0,
        ],
    )
}

/// Jacobian of the FP flow at `s`, variables ordered `(x1, y1, z1, x2, y2, z2)`.
pub fn fp_jacobian(s: &[f64; 6], c: f64) -> DMatrix<f64> {
    let [x1, y1, z1, x2, y2, z2] = *s;
    let (p, q) = (1.0 + c, 4.0 * (1.0 - c));
    DMatrix::from_row_slice(
        6,
        6,
        &[
            0.0, -q * z2, 0.0, 0.0, 0.0, -q * y1, //
            q * z2, 0.0, -p, 0.0, 0.0, q * x1, //
            0.0, p, 0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, -q * y2, 0.0, -q * z1, 0.0, //
            0.0, 0.0, q * x2, q * z1, 0.0, -p, //
            0.0, 0.0, 0.0, 0.0, p, 0.0,
        ],
    )
}

/// All fixed points of `H = x + J z^2` on the sphere.
pub fn find_saddles_lmg(j: f64) -> Result<Vec<SaddlePoint>> {
    if !j.is_finite() {
        return Err(Error::InvalidArgument(format!("coupling must be finite, got {j}")));
    }
    let mut points = vec![
        ([1.0, 0.0, 0.0], FixedPointFamily::Axial),
        ([-1.0, 0.0, 0.0], FixedPointFamily::Axial),
    ];
    if j.abs() >= 0.5 {
        let x = 1.0 / (2.0 * j);
        let z = (1.0 - x * x).max(0.0).sqrt();
        if z > 0.0 {
            points.push(([x, 0.0, z], FixedPointFamily::Tilted));
            points.push(([x, 0.0, -z], FixedPointFamily::Tilted));
        }
    }
    Ok(points
        .into_iter()
        .map(|(s, family)| {
            let (ev, omega) = spectrum(lmg_jacobian(&s, j));
            SaddlePoint {
                coords: ClassicalState::Lmg(s),
                jacobian_eigenvalues: ev,
                omega_saddle: omega,
                family,
            }
        })
        .collect())
}

/// All fixed points of the two-top flow for `c` in `[-1, 1]`.
pub fn find_saddles_fp(c: f64) -> Result<Vec<SaddlePoint>> {
    if !(-1.0..=1.0).contains(&c) {
        return Err(Error::InvalidArgument(format!("c must lie in [-1, 1], got {c}")));
    }
    let mut points = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            points.push(([s1, 0.0, 0.0, s2, 0.0, 0.0], FixedPointFamily::Axial));
        }
    }
    if c < 1.0 {
        let a = (1.0 + c) / (4.0 * (1.0 - c));
        if a < 1.0 {
            let z = (1.0 - a * a).sqrt();
            if a == 0.0 {
                for t1 in [1.0, -1.0] {
                    for t2 in [1.0, -1.0] {
                        let gamma = t1 / t2;
                        points.push((
                            [0.0, 0.0, t1, 0.0, 0.0, t2],
                            FixedPointFamily::FpTilted { gamma },
                        ));
                    }
                }
            } else {
                // z1 = (x1 / a) z2 with x1 = x2 = sign * a.
                for sign in [1.0, -1.0] {
                    for t in [1.0, -1.0] {
                        points.push((
                            [sign * a, 0.0, t * z, sign * a, 0.0, sign * t * z],
                            FixedPointFamily::FpTilted { gamma: sign },
                        ));
                    }
                }
            }
        }
    }
    Ok(points
        .into_iter()
        .map(|(s, family)| {
            let (ev, omega) = spectrum(fp_jacobian(&s, c));
            SaddlePoint {
                coords: ClassicalState::Fp(s),
                jacobian_eigenvalues: ev,
                omega_saddle: omega,
                family,
            }
        })
        .collect())
}

/// Largest residual `|dX/dt|` of the flow at a fixed point.
pub fn saddle_residual(p: &SaddlePoint, coupling: f64) -> f64 {
    match p.coords {
        ClassicalState::Lmg(s) => lmg_rhs(&s, coupling).iter().map(|v| v.abs()).fold(0.0, f64::max),
        ClassicalState::Fp(s) => fp_rhs(&s, coupling).iter().map(|v| v.abs()).fold(0.0, f64::max),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lmg_j2() {
        let s = find_saddles_lmg(2.0).unwrap();
        assert_eq!(s.len(), 4);
        let r3 = 3f64.sqrt();
        assert!(close(&s[0].jacobian_eigenvalues, &[c(-r3, 0.0), c(0.0, 0.0), c(r3, 0.0)], 1e-10));
        assert!((s[0].omega_saddle - r3).abs() < 1e-10);
        let r5 = 5f64.sqrt();
        assert!(close(&s[1].jacobian_eigenvalues, &[c(0.0, -r5), c(0.0, 0.0), c(0.0, r5)], 1e-10));
        assert_eq!(s[1].omega_saddle, 0.0);
        for p in &s {
            assert!(saddle_residual(p, 2.0) <= 1e-12);
        }
        // Tilted points are centers with frequency 2J z.
        let w = 2.0 * 2.0 * (1.0 - 1.0 / 16.0f64).sqrt();
        assert!(close(&s[2].jacobian_eigenvalues, &[c(0.0, -w), c(0.0, 0.0), c(0.0, w)], 1e-10));
    }

    #[test]
    fn lmg_small_coupling() {
        let s = find_saddles_lmg(0.3).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s.iter().all(|p| p.family == FixedPointFamily::Axial));
        assert!(s.iter().all(|p| !p.is_unstable()));
    }

    #[test]
    fn fp_axial_spectrum() {
        for cc in [-0.9, -0.2, 0.0, 0.3, 0.55] {
            let s = find_saddles_fp(cc).unwrap();
            let w = ((1.0 + cc) * (3.0 - 5.0 * cc)).max(0.0).sqrt();
            let v = ((1.0 + cc) * (5.0 - 3.0 * cc)).sqrt();
            let mut expect = vec![c(-w, 0.0), c(0.0, -v), c(0.0, 0.0), c(0.0, 0.0), c(0.0, v), c(w, 0.0)];
            expect.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            assert!(close(&s[0].jacobian_eigenvalues, &expect, 1e-10), "c = {cc}: {:?}", s[0].jacobian_eigenvalues);
            assert!((s[0].omega_saddle - w).abs() < 1e-10);
            for p in &s {
                assert!(saddle_residual(p, cc) <= 1e-12);
            }
        }
    }

    #[test]
    fn fp_axial_at_existence_edge() {
        // At c = 3/5 the unstable pair merges into a defective zero eigenvalue.
        let s = find_saddles_fp(0.6).unwrap();
        assert!(s[0].omega_saddle < 1e-7);
        assert_eq!(s.len(), 4);
    }

    #[test]
    fn fp_tilted_points_are_not_unstable() {
        let s = find_saddles_fp(0.0).unwrap();
        let tilted: Vec<_> = s
            .iter()
            .filter(|p| matches!(p.family, FixedPointFamily::FpTilted { .. }))
            .collect();
        assert_eq!(tilted.len(), 4);
        for p in tilted {
            assert!(p.omega_saddle < 1e-8);
            assert!(saddle_residual(p, 0.0) <= 1e-12);
        }
        assert_eq!(find_saddles_fp(0.8).unwrap().len(), 4);
        assert_eq!(find_saddles_fp(-1.0).unwrap().len(), 8);
        assert!(find_saddles_fp(2.0).is_err());
    }
}
