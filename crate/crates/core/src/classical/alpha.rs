use std::f64::consts::PI;

use super::elliptic::elliptic_k;
use crate::error::{Error, Result};
use crate::models::lmg_classical_range;

/// Distance kept from the ends of the energy range when maximizing.
pub const EDGE_MARGIN: f64 = 1e-6;

fn check_coupling(j: f64) -> Result<()> {
    if !(j.is_finite() && j > 0.0) {
        return Err(Error::Domain(format!("coupling must be positive and finite, got {j}")));
    }
    Ok(())
}

/// Open energy interval on which `alpha(E)` is defined.
pub fn energy_domain(j: f64) -> Result<(f64, f64)> {
    check_coupling(j)?;
    Ok(lmg_classical_range(j))
}

/// Imaginary-time half-width `sigma*` of the strip of analyticity of the
/// LMG trajectory at energy `E`.
pub fn sigma_star(e: f64, j: f64) -> Result<f64> {
    let (lo, hi) = energy_domain(j)?;
    if !(e > lo && e < hi) {
        return Err(Error::Domain(format!(
            "energy {e} outside the open classical range ({lo}, {hi}) for J = {j}"
        )));
    }
    let r = (4.0 * j * j - 4.0 * e * j + 1.0).sqrt();
    let a = 1.0 - 2.0 * e * j;
    let m = (a + r) / (a - r);
    let denom = r - a;
    if !(denom > 0.0) || !m.is_finite() {
        return Err(Error::Domain(format!("degenerate elliptic argument at E = {e}, J = {j}")));
    }
    Ok(2f64.sqrt() * elliptic_k(m)? / denom.sqrt())
}

/// Microcanonical Lanczos slope `alpha(E) = pi / (4 sigma*)`.
pub fn alpha_of_e(e: f64, j: f64) -> Result<f64> {
    Ok(PI / (4.0 * sigma_star(e, j)?))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaSample {
    pub energy: f64,
    pub alpha: f64,
    pub sigma_star: f64,
    /// Pole distance of the auto-correlation, `2 sigma*`.
    pub tau_star: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MicrocanonicalAlphaCurve {
    pub coupling: f64,
    pub samples: Vec<AlphaSample>,
}

/// `alpha(E)` on `points` equally spaced energies in `[e_min, e_max]`.
pub fn alpha_curve(j: f64, e_min: f64, e_max: f64, points: usize) -> Result<MicrocanonicalAlphaCurve> {
    if points < 2 || !(e_max > e_min) {
        return Err(Error::InvalidArgument(format!(
            "need e_max > e_min and at least 2 points, got [{e_min}, {e_max}] with {points}"
        )));
    }
    let samples = (0..points)
        .map(|k| {
            let e = e_min + (e_max - e_min) * k as f64 / (points - 1) as f64;
            let s = sigma_star(e, j)?;
            Ok(AlphaSample {
                energy: e,
                alpha: PI / (4.0 * s),
                sigma_star: s,
                tau_star: 2.0 * s,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MicrocanonicalAlphaCurve { coupling: j, samples })
}

/// `(E*, alpha*)` maximizing `alpha(E)` over the open energy range.
pub fn sup_alpha(j: f64) -> Result<(f64, f64)> {
    let (lo, hi) = energy_domain(j)?;
    let (a, b) = (lo + EDGE_MARGIN, hi - EDGE_MARGIN);
    let f = |e: f64| alpha_of_e(e, j);
    let grid = 801;
    let step = (b - a) / (grid - 1) as f64;
    let mut best = (0usize, f64::MIN);
    for k in 0..grid {
        let v = f(a + step * k as f64)?;
        if v > best.1 {
            best = (k, v);
        }
    }
    let left = a + step * best.0.saturating_sub(1) as f64;
    let right = (a + step * (best.0 + 1) as f64).min(b);
    let (e, v) = golden_max(f, left, right, 1e-12)?;
    Ok(if v >= best.1 { (e, v) } else { (a + step * best.0 as f64, best.1) })
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
pub fn golden_max(f: impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64)> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol * (1.0 + a.abs() + b.abs()) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let x = 0.5 * (a + b);
    Ok((x, f(x)?))
}

/// Right-hand side of the equal-spin bound on the FP growth rate,
/// `2(1+c) sup_E alpha_LMG(E; J)` with `J = 2(1-c)/(1+c)`.
///
/// Equal-spin FP dynamics is LMG dynamics sped up by `2(1+c)` with halved
/// bracket scaling, so the value bounds `2 alpha_FP` and equals
/// `sqrt(3)` at `c = 0`.
pub fn fp_lower_bound_alpha(c: f64) -> Result<f64> {
    if !(c > -1.0 && c < 1.0) {
        return Err(Error::Domain(format!("c must lie in (-1, 1), got {c}")));
    }
    let j = 2.0 * (1.0 - c) / (1.0 + c);
    Ok(2.0 * (1.0 + c) * sup_alpha(j)?.1)
}

/// Positive Jacobian eigenvalue at the FP saddle with both spins along `+x`.
pub fn fp_saddle_exponent(c: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&c) {
        return Err(Error::InvalidArgument(format!("c must lie in [-1, 1], got {c}")));
    }
    if c > 0.6 {
        return Ok(0.0);
    }
    Ok(((1.0 + c) * (3.0 - 5.0 * c)).max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    /// `int_{z0}^inf dz / (J sqrt((z^2 - u+)(z^2 - u-)))` via `z^2 = u+ + tan^2 t`.
    fn sigma_quadrature(e: f64, j: f64) -> f64 {
        let r = (4.0 * j * j - 4.0 * e * j + 1.0).sqrt();
        let up = (2.0 * j * e - 1.0 + r) / (2.0 * j * j);
        let um = (2.0 * j * e - 1.0 - r) / (2.0 * j * j);
        let f = |t: f64| {
            if t >= FRAC_PI_2 {
                return 1.0 / j;
            }
            let v = t.tan();
            let z = (up + v * v).sqrt();
            let sec2 = 1.0 + v * v;
            sec2 / (j * z * (z * z - um).sqrt())
        };
        let n = 40_000;
        let h = FRAC_PI_2 / n as f64;
        let mut s = f(0.0) + f(FRAC_PI_2);
        for k in 1..n {
            s += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn saddle_energy_collapse() {
        assert!((sigma_star(1.0, 2.0).unwrap() - PI / (2.0 * 3f64.sqrt())).abs() < 1e-14);
        assert!((sigma_star(1.0, 1.0).unwrap() - FRAC_PI_2).abs() < 1e-14);
        for j in [0.75, 1.0, 2.0, 3.0, 10.0] {
            let two_alpha = 2.0 * alpha_of_e(1.0, j).unwrap();
            assert!((two_alpha - (2.0 * j - 1.0).sqrt()).abs() < 1e-10, "J = {j}");
        }
    }

    #[test]
    fn matches_independent_quadrature() {
        for j in [0.3, 0.75, 1.0, 2.0, 5.0] {
            let (lo, hi) = energy_domain(j).unwrap();
            for k in 1..8 {
                let e = lo + (hi - lo) * k as f64 / 8.0;
                let s = sigma_star(e, j).unwrap();
                let q = sigma_quadrature(e, j);
                assert!((s - q).abs() < 1e-8 * s, "E = {e}, J = {j}: {s} vs {q}");
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(sigma_star(-1.0, 2.0).unwrap_err().is_domain());
        assert!(sigma_star(2.125, 2.0).unwrap_err().is_domain());
        assert!(sigma_star(1.5, 0.3).unwrap_err().is_domain());
        assert!(sigma_star(0.0, 0.0).unwrap_err().is_domain());
        assert!(sigma_star(0.0, -1.0).unwrap_err().is_domain());
        assert_eq!(energy_domain(2.0).unwrap(), (-1.0, 2.125));
    }

    #[test]
    fn supremum_cases() {
        let (e, a) = sup_alpha(2.0).unwrap();
        assert!((2.0 * a - 3f64.sqrt()).abs() < 1e-3, "E* = {e}");
        let (e1, a1) = sup_alpha(1.0).unwrap();
        assert!(2.0 * a1 > 1.0 && e1 < 1.0);
        let (e3, a3) = sup_alpha(3.0).unwrap();
        assert!(2.0 * a3 > 5f64.sqrt() && e3 > 1.0);
    }

    #[test]
    fn curve_samples() {
        let c = alpha_curve(2.0, -0.99, 2.11, 50).unwrap();
        assert_eq!(c.samples.len(), 50);
        for s in &c.samples {
            assert!(s.alpha > 0.0);
            assert!((s.alpha - PI / (4.0 * s.sigma_star)).abs() < 1e-15);
            assert_eq!(s.tau_star, 2.0 * s.sigma_star);
        }
        assert!(alpha_curve(2.0, -1.5, 1.0, 10).is_err());
    }

    #[test]
    fn fp_bound_and_exponent() {
        assert!((fp_lower_bound_alpha(0.0).unwrap() - 3f64.sqrt()).abs() < 1e-3);
        let third = fp_lower_bound_alpha(1.0 / 3.0).unwrap();
        assert!((third - 8.0 / 3.0 * sup_alpha(1.0).unwrap().1).abs() < 1e-12);
        let near = fp_lower_bound_alpha(-0.99).unwrap();
        assert!(near.is_finite() && near > 0.0);
        assert!(fp_lower_bound_alpha(1.0).unwrap_err().is_domain());
        assert!(fp_lower_bound_alpha(-1.0).unwrap_err().is_domain());

        assert!((fp_saddle_exponent(0.0).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        assert_eq!(fp_saddle_exponent(0.6).unwrap(), 0.0);
        assert_eq!(fp_saddle_exponent(0.8).unwrap(), 0.0);
        assert!((fp_saddle_exponent(-0.2).unwrap() - 4.0 / 5f64.sqrt()).abs() < 1e-15);
        assert!(fp_saddle_exponent(1.5).is_err());
    }
}
