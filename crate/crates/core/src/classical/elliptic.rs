use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

/// Complete elliptic integral of the first kind in the parameter convention,
/// `K(m) = int_0^{pi/2} dtheta / sqrt(1 - m sin^2 theta)`, for `m < 1`.
pub fn elliptic_k(m: f64) -> Result<f64> {
    if !m.is_finite() || m >= 1.0 {
        return Err(Error::Domain(format!("elliptic K needs m < 1, got {m}")));
    }
    if m < 0.0 {
        return Ok(agm_k(m / (m - 1.0)) / (1.0 - m).sqrt());
    }
    Ok(agm_k(m))
}

/// `pi / (2 AGM(1, sqrt(1 - m)))` for `0 <= m < 1`.
fn agm_k(m: f64) -> f64 {
    let mut a = 1.0f64;
    let mut g = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - g).abs() <= 1e-16 * a {
            break;
        }
        let next = 0.5 * (a + g);
        g = (a * g).sqrt();
        a = next;
    }
    FRAC_PI_2 / a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadrature(m: f64) -> f64 {
        // Composite Simpson; the integrand is smooth and periodic-like.
        let n = 20_000;
        let h = FRAC_PI_2 / n as f64;
        let f = |t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt();
        let mut s = f(0.0) + f(FRAC_PI_2);
        for k in 1..n {
            s += f(k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn known_values() {
        assert!((elliptic_k(0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let half = elliptic_k(0.5).unwrap();
        assert!((half - 1.854_074_677_301_372).abs() < 1e-13);
        assert!((elliptic_k(-1.0).unwrap() - half / 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn matches_quadrature() {
        for m in [-50.0, -3.0, -0.7, 0.1, 0.6, 0.9] {
            let k = elliptic_k(m).unwrap();
            assert!((k - quadrature(m)).abs() < 1e-12 * k, "m = {m}");
        }
    }

    #[test]
    fn domain() {
        for m in [1.0, 1.5, f64::NAN, f64::INFINITY] {
            assert!(elliptic_k(m).unwrap_err().is_domain());
        }
    }
}
