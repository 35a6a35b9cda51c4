use crate::error::{Error, Result};

/// Phase-space point: one unit vector for LMG, two for FP.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassicalState {
    Lmg([f64; 3]),
    Fp([f64; 6]),
}

impl ClassicalState {
    pub fn coords(&self) -> &[f64] {
        match self {
            ClassicalState::Lmg(v) => v,
            ClassicalState::Fp(v) => v,
        }
    }
}

/// States sampled at the requested output times.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub times: Vec<f64>,
    pub states: Vec<[f64; N]>,
    /// Accepted integration steps.
    pub steps: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct IntegratorOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-13,
            atol: 1e-15,
            max_steps: 50_000_000,
        }
    }
}

// Dormand-Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Adaptive Dormand-Prince 5(4) integration of `dy/dt = f(y)` from `t = 0`,
/// recording the state at each (ascending, non-negative) output time.
pub fn dopri5<const N: usize>(
    f: impl Fn(&[f64; N]) -> [f64; N],
    y0: [f64; N],
    outputs: &[f64],
    opts: &IntegratorOptions,
) -> Result<Trajectory<N>> {
    if outputs.iter().any(|t| !(t.is_finite() && *t >= 0.0)) || outputs.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("output times must ascend from 0".into()));
    }
    let comb = |y: &[f64; N], terms: &[(f64, &[f64; N])], h: f64| -> [f64; N] {
        let mut out = *y;
        for (c, k) in terms {
            for i in 0..N {
                out[i] += h * c * k[i];
            }
        }
        out
    };
    let mut y = y0;
    let mut t = 0.0;
    let mut h: f64 = 1e-3;
    let mut k1 = f(&y);
    let mut steps = 0usize;
    let mut states = Vec::with_capacity(outputs.len());
    for &target in outputs {
        while t < target {
            if steps >= opts.max_steps {
                return Err(Error::InvalidArgument("integrator step budget exhausted".into()));
            }
            let last = h >= target - t;
            let hs = if last { target - t } else { h };
            let k2 = f(&comb(&y, &[(A21, &k1)], hs));
            let k3 = f(&comb(&y, &[(A31, &k1), (A32, &k2)], hs));
            let k4 = f(&comb(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], hs));
            let k5 = f(&comb(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], hs));
            let k6 = f(&comb(
                &y,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
                hs,
            ));
            let y_new = comb(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], hs);
            let k7 = f(&y_new);
            let mut err: f64 = 0.0;
            for i in 0..N {
                let e = hs
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
                err = err.max((e / sc).abs());
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                t = if last { target } else { t + hs };
                y = y_new;
                k1 = k7;
                steps += 1;
                if !last || factor < 1.0 {
                    h = hs * factor;
                }
            } else {
                h = hs * factor;
            }
            if !(h > 0.0) || !h.is_finite() {
                return Err(Error::InvalidArgument("integrator step size collapsed".into()));
            }
        }
        states.push(y);
    }
    Ok(Trajectory {
        times: outputs.to_vec(),
        states,
        steps,
    })
}

fn on_sphere(v: &[f64]) -> bool {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] - 1.0).abs() <= 1e-12
}

/// Right-hand side `(-2J y z, -z + 2J x z, y)` for `H = x + J z^2`.
pub fn lmg_rhs(s: &[f64; 3], j: f64) -> [f64; 3] {
    let [x, y, z] = *s;
    [-2.0 * j * y * z, -z + 2.0 * j * x * z, y]
}

pub fn lmg_energy(s: &[f64; 3], j: f64) -> f64 {
    s[0] + j * s[2] * s[2]
}

/// Right-hand side for `H = (1+c)(x1 + x2) + 4(1-c) z1 z2`.
pub fn fp_rhs(s: &[f64; 6], c: f64) -> [f64; 6] {
    let [x1, y1, z1, x2, y2, z2] = *s;
    let (p, q) = (1.0 + c, 4.0 * (1.0 - c));
    [
        -q * y1 * z2,
        -p * z1 + q * x1 * z2,
        p * y1,
        -q * y2 * z1,
        -p * z2 + q * x2 * z1,
        p * y2,
    ]
}

pub fn fp_energy(s: &[f64; 6], c: f64) -> f64 {
    (1.0 + c) * (s[0] + s[3]) + 4.0 * (1.0 - c) * s[2] * s[5]
}

/// LMG trajectory sampled at `samples` equally spaced times on `[0, t_end]`.
pub fn integrate_lmg(state0: [f64; 3], j: f64, t_end: f64, samples: usize) -> Result<Trajectory<3>> {
    if !on_sphere(&state0) {
        return Err(Error::InvalidArgument("LMG initial state must lie on the unit sphere".into()));
    }
    if !j.is_finite() {
        return Err(Error::InvalidArgument("coupling must be finite".into()));
    }
    let times = sample_times(t_end, samples)?;
    dopri5(|s| lmg_rhs(s, j), state0, &times, &IntegratorOptions::default())
}

/// FP trajectory sampled at `samples` equally spaced times on `[0, t_end]`.
pub fn integrate_fp(state0: [f64; 6], c: f64, t_end: f64, samples: usize) -> Result<Trajectory<6>> {
    if !on_sphere(&state0[..3]) || !on_sphere(&state0[3..]) {
        return Err(Error::InvalidArgument("both FP spins must lie on the unit sphere".into()));
    }
    if !c.is_finite() {
        return Err(Error::InvalidArgument("c must be finite".into()));
    }
    let times = sample_times(t_end, samples)?;
    dopri5(|s| fp_rhs(s, c), state0, &times, &IntegratorOptions::default())
}

fn sample_times(t_end: f64, samples: usize) -> Result<Vec<f64>> {
    if !(t_end > 0.0 && t_end.is_finite()) || samples < 2 {
        return Err(Error::InvalidArgument(format!(
            "need t_end > 0 and at least 2 samples, got {t_end} and {samples}"
        )));
    }
    Ok((0..samples)
        .map(|k| t_end * k as f64 / (samples - 1) as f64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_points_stay_put() {
        for s in [[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]] {
            let tr = integrate_lmg(s, 2.0, 10.0, 11).unwrap();
            assert!(tr.states.iter().all(|v| *v == s));
        }
        let tr = integrate_fp([1.0, 0.0, 0.0, 1.0, 0.0, 0.0], 0.0, 10.0, 11).unwrap();
        assert!(tr.states.iter().all(|v| *v == [1.0, 0.0, 0.0, 1.0, 0.0, 0.0]));
    }

    #[test]
    fn rejects_off_sphere() {
        assert!(integrate_lmg([1.0, 0.1, 0.0], 2.0, 1.0, 2).is_err());
        assert!(integrate_fp([1.0, 0.0, 0.0, 0.0, 0.0, 0.5], 0.0, 1.0, 2).is_err());
        assert!(integrate_lmg([1.0, 0.0, 0.0], 2.0, -1.0, 2).is_err());
    }

    #[test]
    fn free_fp_rotates_about_x() {
        let a = 0.4f64;
        let s0 = [a.cos(), a.sin(), 0.0, 0.0, 0.0, 1.0];
        let tr = integrate_fp(s0, 1.0, 3.0, 31).unwrap();
        for (t, s) in tr.times.iter().zip(&tr.states) {
            // y' = -2 z, z' = 2 y
            let (y, z) = (a.sin() * (2.0 * t).cos(), a.sin() * (2.0 * t).sin());
            assert!((s[1] - y).abs() < 1e-10 && (s[2] - z).abs() < 1e-10);
            assert!((s[4] + (2.0 * t).sin()).abs() < 1e-10);
            assert!((s[5] - (2.0 * t).cos()).abs() < 1e-10);
        }
    }

    #[test]
    fn saddle_instability_rate() {
        let eps = 1e-7f64;
        let n = (1.0 + eps * eps).sqrt();
        let s0 = [1.0 / n, eps / n, 0.0];
        let tr = integrate_lmg(s0, 2.0, 6.0, 61).unwrap();
        let sep = |s: &[f64; 3]| ((s[0] - 1.0).powi(2) + s[1] * s[1] + s[2] * s[2]).sqrt();
        let (a, b) = (sep(&tr.states[30]), sep(&tr.states[60]));
        let rate = (b / a).ln() / 3.0;
        assert!((rate - 3f64.sqrt()).abs() < 0.01, "rate {rate}");
    }
}
