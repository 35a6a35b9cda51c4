//! Time-domain quantities: Krylov-chain amplitudes, K-complexity,
//! auto-correlations, OTOCs, spectral functions and exponent fits.

use std::f64::consts::PI;
use std::ops::RangeInclusive;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fit::fit_line;
use crate::krylov::{InnerProductSpec, LiouvillianFrame};
use crate::linalg::symmetric_tridiagonal_eigen;
use crate::spin_algebra::{multiply, DenseOperator};

/// Real amplitudes `phi_n(t_k)` on the Krylov chain.
#[derive(Debug, Clone)]
pub struct KrylovWavefunction {
    pub times: Vec<f64>,
    /// `amplitudes[k][n] = phi_n(times[k])`.
    pub amplitudes: Vec<Vec<f64>>,
}

impl KrylovWavefunction {
    pub fn chain_len(&self) -> usize {
        self.amplitudes.first().map_or(0, Vec::len)
    }

    /// `sum_n phi_n(t_k)^2` per grid point.
    pub fn total_probability(&self) -> Vec<f64> {
        self.amplitudes
            .iter()
            .map(|row| row.iter().map(|p| p * p).sum())
            .collect()
    }

    /// Largest deviation of the total probability from one.
    pub fn max_probability_error(&self) -> f64 {
        self.total_probability()
            .iter()
            .map(|p| (p - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// A real function sampled on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

pub type ComplexityCurve = TimeSeries;
pub type OtocCurve = TimeSeries;

/// `n` equally spaced points on `[t0, t1]`.
pub fn uniform_grid(t0: f64, t1: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 || !(t1 > t0) || !t0.is_finite() || !t1.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "grid needs t1 > t0 and at least 2 points, got [{t0}, {t1}] with {n}"
        )));
    }
    let dt = (t1 - t0) / (n - 1) as f64;
    Ok((0..n).map(|k| t0 + dt * k as f64).collect())
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument("time grid must be non-empty and finite".into()));
    }
    Ok(())
}

fn check_b(b: &[f64]) -> Result<()> {
    if b.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(Error::InvalidArgument("Lanczos coefficients must be positive".into()));
    }
    Ok(())
}

/// Exact amplitudes for `d phi_n/dt = b_n phi_{n-1} - b_{n+1} phi_{n+1}`,
/// `phi_n(0) = delta_{n0}`, on a chain of length `b.len() + 1`.
///
/// With `T` the symmetric tridiagonal matrix of the `b_n` and `T = U diag(l) U^T`,
/// `phi_n(t) = i^n sum_k U_nk U_0k exp(-i l_k t)`, which is a cosine sum for
/// even `n` and a sine sum for odd `n`.
pub fn evolve_wavefunction(b: &[f64], times: &[f64]) -> Result<KrylovWavefunction> {
    check_times(times)?;
    check_b(b)?;
    let len = b.len() + 1;
    let eig = symmetric_tridiagonal_eigen(&vec![0.0; len], b);
    // weights[(n, k)] = U_nk U_0k
    let weights = DMatrix::from_fn(len, len, |n, k| eig.vectors[k][n] * eig.vectors[k][0]);
    let nt = times.len();
    let cos = DMatrix::from_fn(len, nt, |k, j| (eig.values[k] * times[j]).cos());
    let sin = DMatrix::from_fn(len, nt, |k, j| (eig.values[k] * times[j]).sin());
    let c = &weights * cos;
    let s = &weights * sin;
    let amplitudes = (0..nt)
        .map(|j| {
            if times[j] == 0.0 {
                let mut row = vec![0.0; len];
                row[0] = 1.0;
                return row;
            }
            (0..len)
                .map(|n| {
                    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
                    if n % 2 == 0 {
                        sign * c[(n, j)]
                    } else {
                        sign * s[(n, j)]
                    }
                })
                .collect()
        })
        .collect();
    Ok(KrylovWavefunction {
        times: times.to_vec(),
        amplitudes,
    })
}

/// Fourth-order Runge-Kutta integration of the same chain with step at most
/// `0.1 / max(b)`. `times` must ascend from 0.
pub fn evolve_wavefunction_rk4(b: &[f64], times: &[f64]) -> Result<KrylovWavefunction> {
    check_times(times)?;
    check_b(b)?;
    if times[0] != 0.0 || times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("RK4 grid must ascend from t = 0".into()));
    }
    let len = b.len() + 1;
    let bmax = b.iter().copied().fold(0.0, f64::max);
    let h_max = if bmax > 0.0 { 0.1 / bmax } else { f64::INFINITY };
    let deriv = |phi: &[f64], out: &mut [f64]| {
        for n in 0..len {
            let mut d = 0.0;
            if n > 0 {
                d += b[n - 1] * phi[n - 1];
            }
            if n + 1 < len {
                d -= b[n] * phi[n + 1];
            }
            out[n] = d;
        }
    };
    let mut phi = vec![0.0; len];
    phi[0] = 1.0;
    let (mut k1, mut k2, mut k3, mut k4, mut tmp) =
        (vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len]);
    let mut t = 0.0;
    let mut amplitudes = Vec::with_capacity(times.len());
    for &target in times {
        let span = target - t;
        if span > 0.0 {
            let steps = (span / h_max).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            for _ in 0..steps {
                deriv(&phi, &mut k1);
                for i in 0..len {
                    tmp[i] = phi[i] + 0.5 * h * k1[i];
                }
                deriv(&tmp, &mut k2);
                for i in 0..len {
                    tmp[i] = phi[i] + 0.5 * h * k2[i];
                }
                deriv(&tmp, &mut k3);
                for i in 0..len {
                    tmp[i] = phi[i] + h * k3[i];
                }
                deriv(&tmp, &mut k4);
                for i in 0..len {
                    phi[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
                }
            }
            t = target;
        }
        amplitudes.push(phi.clone());
    }
    Ok(KrylovWavefunction {
        times: times.to_vec(),
        amplitudes,
    })
}

/// Complex chain amplitudes `psi(t) = exp(i T t) e_0` for a chain with
/// diagonal `a_n`, as produced by a microcanonical Lanczos run.
#[derive(Debug, Clone)]
pub struct ChainEvolution {
    pub times: Vec<f64>,
    /// `amplitudes[k][n] = psi_n(times[k])`.
    pub amplitudes: Vec<Vec<Complex64>>,
}

impl ChainEvolution {
    pub fn total_probability(&self) -> Vec<f64> {
        self.amplitudes
            .iter()
            .map(|row| row.iter().map(|p| p.norm_sqr()).sum())
            .collect()
    }

    pub fn max_probability_error(&self) -> f64 {
        self.total_probability()
            .iter()
            .map(|p| (p - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// `K(t) = sum_n n |psi_n(t)|^2`.
    pub fn k_complexity(&self) -> ComplexityCurve {
        TimeSeries {
            times: self.times.clone(),
            values: self
                .amplitudes
                .iter()
                .map(|row| row.iter().enumerate().map(|(n, p)| n as f64 * p.norm_sqr()).sum())
                .collect(),
        }
    }

    /// `C(t) = psi_0(t)`.
    pub fn autocorrelation(&self) -> Vec<Complex64> {
        self.amplitudes.iter().map(|row| row[0]).collect()
    }
}

/// Exact evolution of the chain `d psi_n/dt = i (b_n psi_{n-1} + a_n psi_n + b_{n+1} psi_{n+1})`.
///
/// `a` holds one entry per chain site, so `a.len() == b.len() + 1`. With all
/// `a_n = 0` this gives `psi_n = i^n phi_n` of [`evolve_wavefunction`].
pub fn evolve_chain(a: &[f64], b: &[f64], times: &[f64]) -> Result<ChainEvolution> {
    check_times(times)?;
    check_b(b)?;
    if a.len() != b.len() + 1 || a.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need {} finite diagonal coefficients, got {}",
            b.len() + 1,
            a.len()
        )));
    }
    let len = a.len();
    let eig = symmetric_tridiagonal_eigen(a, b);
    let weights = DMatrix::from_fn(len, len, |n, k| eig.vectors[k][n] * eig.vectors[k][0]);
    let amplitudes = times
        .iter()
        .map(|&t| {
            let phases: Vec<Complex64> = eig
                .values
                .iter()
                .map(|l| {
                    let (s, c) = (l * t).sin_cos();
                    Complex64::new(c, s)
                })
                .collect();
            (0..len)
                .map(|n| (0..len).map(|k| phases[k] * weights[(n, k)]).sum())
                .collect()
        })
        .collect();
    Ok(ChainEvolution {
        times: times.to_vec(),
        amplitudes,
    })
}

/// `K(t) = sum_n n phi_n(t)^2`.
pub fn k_complexity(w: &KrylovWavefunction) -> ComplexityCurve {
    TimeSeries {
        times: w.times.clone(),
        values: w
            .amplitudes
            .iter()
            .map(|row| row.iter().enumerate().map(|(n, p)| n as f64 * p * p).sum())
            .collect(),
    }
}

/// `C(t) = phi_0(t)`.
pub fn autocorrelation_from_wavefunction(w: &KrylovWavefunction) -> TimeSeries {
    TimeSeries {
        times: w.times.clone(),
        values: w.amplitudes.iter().map(|row| row[0]).collect(),
    }
}

/// `C(t) = (O|O(t)) / (O|O)` with `O(t) = exp(i H_tilde t) O exp(-i H_tilde t)`,
/// summed directly over energy eigenstates.
pub fn autocorrelation_direct(
    frame: &LiouvillianFrame,
    op: &DenseOperator,
    inner: &InnerProductSpec,
    times: &[f64],
) -> Result<Vec<Complex64>> {
    check_times(times)?;
    let d = frame.dim();
    if op.dim() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: op.dim(),
        });
    }
    let cols: Vec<(usize, f64)> = match inner {
        InnerProductSpec::InfiniteTemperature => (0..d).map(|n| (n, 1.0 / d as f64)).collect(),
        InnerProductSpec::Microcanonical(w) => {
            if w.spectrum().dim() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: w.spectrum().dim(),
                });
            }
            w.states.iter().map(|&n| (n, 1.0 / w.count() as f64)).collect()
        }
    };
    let o = frame.spectrum().to_eigenbasis(op)?;
    let e = frame.energies();
    let mut freqs = Vec::new();
    let mut weights = Vec::new();
    for &(n, wn) in &cols {
        for m in 0..d {
            let p = o[(m, n)].norm_sqr() * wn;
            if p > 0.0 {
                freqs.push(e[m] - e[n]);
                weights.push(p);
            }
        }
    }
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::InvalidArgument("operator has zero norm".into()));
    }
    Ok(times
        .iter()
        .map(|&t| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (w, p) in freqs.iter().zip(&weights) {
                let (s, c) = (w * t).sin_cos();
                acc += Complex64::new(p * c, p * s);
            }
            acc / total
        })
        .collect())
}

/// `OTOC(t) = Tr([O(t), O][O(t), O]^dagger) / (hbar_eff^2 D)`.
pub fn otoc(
    frame: &LiouvillianFrame,
    op: &DenseOperator,
    hbar_eff: f64,
    times: &[f64],
) -> Result<OtocCurve> {
    check_times(times)?;
    if !(hbar_eff > 0.0) {
        return Err(Error::InvalidArgument("hbar_eff must be positive".into()));
    }
    if !op.is_hermitian(1e-12) {
        return Err(Error::InvalidArgument("OTOC operator must be Hermitian".into()));
    }
    let d = frame.dim();
    if op.dim() != d {
        return Err(Error::DimensionMismatch {
            left: d,
            right: op.dim(),
        });
    }
    let o = frame.spectrum().to_eigenbasis(op)?;
    let e = frame.energies();
    let mut values = Vec::with_capacity(times.len());
    for &t in times {
        let ot = DMatrix::from_fn(d, d, |m, n| {
            let (s, c) = ((e[m] - e[n]) * t).sin_cos();
            o[(m, n)] * Complex64::new(c, s)
        });
        // Both factors are Hermitian, so [A, B] = AB - (AB)^dagger.
        let p = multiply(&ot, &o);
        let mut sum = 0.0;
        for j in 0..d {
            for i in 0..d {
                sum += (p[(i, j)] - p[(j, i)].conj()).norm_sqr();
            }
        }
        values.push(sum / (d as f64 * hbar_eff * hbar_eff));
    }
    Ok(TimeSeries {
        times: times.to_vec(),
        values,
    })
}

/// Growth rate from a straight-line fit of `ln f(t)` against `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentFit {
    pub lambda: f64,
    pub intercept: f64,
    pub window: (f64, f64),
    pub r_squared: f64,
    pub points: usize,
    pub method: &'static str,
}

/// Least squares of `ln(values)` on `t` over samples with `t` in `[t0, t1]`.
pub fn fit_exponential(curve: &TimeSeries, window: (f64, f64)) -> Result<ExponentFit> {
    let (t0, t1) = window;
    if curve.times.len() != curve.values.len() {
        return Err(Error::DimensionMismatch {
            left: curve.times.len(),
            right: curve.values.len(),
        });
    }
    let (first, last) = match (curve.times.first(), curve.times.last()) {
        (Some(a), Some(b)) => (*a, *b),
        _ => return Err(Error::InvalidWindow("empty curve".into())),
    };
    if !(t1 > t0) || t0 < first || t1 > last {
        return Err(Error::InvalidWindow(format!(
            "window [{t0}, {t1}] must lie inside the data range [{first}, {last}]"
        )));
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (t, v) in curve.times.iter().zip(&curve.values) {
        if *t >= t0 && *t <= t1 {
            if !(*v > 0.0) {
                return Err(Error::InvalidWindow(format!(
                    "non-positive value {v} at t = {t}"
                )));
            }
            xs.push(*t);
            ys.push(v.ln());
        }
    }
    let line = fit_line(&xs, &ys)?;
    Ok(ExponentFit {
        lambda: line.slope,
        intercept: line.intercept,
        window,
        r_squared: line.r_squared,
        points: xs.len(),
        method: "log-linear least squares",
    })
}

/// Real Fourier transform of an auto-correlation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    pub frequencies: Vec<f64>,
    pub values: Vec<f64>,
    /// Whether a Hann taper was applied.
    pub windowed: bool,
    /// Largest imaginary part relative to the largest real part
    /// (only nonzero for two-sided grids).
    pub imag_ratio: f64,
}

const HANN_TRIGGER: f64 = 1e-3;

/// `C~(w) = int C(t) exp(i w t) dt` with trapezoidal weights.
///
/// A grid starting at `t = 0` is taken as the half of an even function.
/// A grid symmetric about zero is transformed as is and the real part kept.
pub fn spectral_function(curve: &TimeSeries, frequencies: &[f64]) -> Result<SpectralFunction> {
    let t = &curve.times;
    let c = &curve.values;
    if t.len() != c.len() {
        return Err(Error::DimensionMismatch {
            left: t.len(),
            right: c.len(),
        });
    }
    if t.len() < 3 {
        return Err(Error::InvalidArgument("need at least 3 samples".into()));
    }
    let dt = t[1] - t[0];
    let span = t[t.len() - 1] - t[0];
    if !(dt > 0.0) || t.windows(2).any(|w| ((w[1] - w[0]) - dt).abs() > 1e-9 * span) {
        return Err(Error::InvalidArgument("spectral function needs a uniform ascending grid".into()));
    }
    let last = t[t.len() - 1];
    let half_line = t[0].abs() <= 1e-12 * span;
    let symmetric = (t[0] + last).abs() <= 1e-9 * span;
    if !half_line && !symmetric {
        return Err(Error::InvalidArgument(
            "grid must start at 0 or be symmetric about 0".into(),
        ));
    }
    let edge = if half_line {
        c[c.len() - 1].abs()
    } else {
        c[0].abs().max(c[c.len() - 1].abs())
    };
    let windowed = edge > HANN_TRIGGER;
    let tmax = last.abs().max(t[0].abs());
    let weighted: Vec<f64> = t
        .iter()
        .zip(c)
        .enumerate()
        .map(|(k, (tk, ck))| {
            let trap = if k == 0 || k + 1 == t.len() { 0.5 * dt } else { dt };
            let taper = if windowed {
                (0.5 * PI * tk / tmax).cos().powi(2)
            } else {
                1.0
            };
            trap * taper * ck
        })
        .collect();
    let mut values = Vec::with_capacity(frequencies.len());
    let mut max_re: f64 = 0.0;
    let mut max_im: f64 = 0.0;
    for &w in frequencies {
        if half_line {
            let mut s = 0.0;
            for (tk, wk) in t.iter().zip(&weighted) {
                // The t = 0 sample is shared by both halves.
                s += wk * (w * tk).cos();
            }
            values.push(2.0 * s);
        } else {
            let (mut re, mut im) = (0.0, 0.0);
            for (tk, wk) in t.iter().zip(&weighted) {
                let (sn, cs) = (w * tk).sin_cos();
                re += wk * cs;
                im += wk * sn;
            }
            max_im = max_im.max(im.abs());
            values.push(re);
        }
        max_re = max_re.max(values[values.len() - 1].abs());
    }
    Ok(SpectralFunction {
        frequencies: frequencies.to_vec(),
        values,
        windowed,
        imag_ratio: if max_re > 0.0 { max_im / max_re } else { 0.0 },
    })
}

/// Rate `r` of `|C~(w)| ~ exp(-r |w|)` fitted over frequencies in `window`.
pub fn spectral_tail_rate(sf: &SpectralFunction, window: RangeInclusive<f64>) -> Result<f64> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (w, v) in sf.frequencies.iter().zip(&sf.values) {
        if window.contains(&w.abs()) {
            if !(v.abs() > 0.0) {
                return Err(Error::InvalidWindow(format!("zero spectral weight at {w}")));
            }
            xs.push(w.abs());
            ys.push(v.abs().ln());
        }
    }
    Ok(-fit_line(&xs, &ys)?.slope)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frozen_operator() {
        let w = evolve_wavefunction(&[], &[0.0, 1.0, 5.0]).unwrap();
        assert_eq!(w.chain_len(), 1);
        assert!(w.amplitudes.iter().all(|r| (r[0] - 1.0).abs() < 1e-15));
        assert!(k_complexity(&w).values.iter().all(|k| *k == 0.0));
    }

    #[test]
    fn two_site_chain() {
        let times = uniform_grid(0.0, 10.0, 101).unwrap();
        let w = evolve_wavefunction(&[1.0], &times).unwrap();
        for (t, row) in times.iter().zip(&w.amplitudes) {
            assert!((row[0] - t.cos()).abs() < 1e-14);
            assert!((row[1] - t.sin()).abs() < 1e-14);
        }
        let c = autocorrelation_from_wavefunction(&w);
        assert_eq!(c.values[0], 1.0);
    }

    #[test]
    fn linear_growth_matches_sech_tanh() {
        let alpha = 0.7;
        let b: Vec<f64> = (1..=400).map(|n| alpha * n as f64).collect();
        let times = uniform_grid(0.0, 3.0, 31).unwrap();
        let w = evolve_wavefunction(&b, &times).unwrap();
        let k = k_complexity(&w);
        for (j, t) in times.iter().enumerate() {
            let sech = 1.0 / (alpha * t).cosh();
            let th = (alpha * t).tanh();
            for n in 0..5 {
                assert!((w.amplitudes[j][n] - th.powi(n as i32) * sech).abs() < 1e-10);
            }
            assert!((k.values[j] - (alpha * t).sinh().powi(2)).abs() < 1e-8);
        }
        assert!(w.max_probability_error() < 1e-12);
    }

    #[test]
    fn rk4_agrees_with_exact() {
        let b: Vec<f64> = (1..=30).map(|n| (n as f64).sqrt() + 0.3 * (n % 2) as f64).collect();
        let times = uniform_grid(0.0, 8.0, 17).unwrap();
        let exact = evolve_wavefunction(&b, &times).unwrap();
        let rk = evolve_wavefunction_rk4(&b, &times).unwrap();
        for (a, r) in exact.amplitudes.iter().zip(&rk.amplitudes) {
            for (x, y) in a.iter().zip(r) {
                assert!((x - y).abs() < 1e-6);
            }
        }
        assert!(evolve_wavefunction_rk4(&b, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn chain_without_diagonal_matches_real_amplitudes() {
        let b: Vec<f64> = (1..=20).map(|n| 0.5 * n as f64 + 0.2 * (n % 2) as f64).collect();
        let times = uniform_grid(0.0, 4.0, 21).unwrap();
        let real = evolve_wavefunction(&b, &times).unwrap();
        let chain = evolve_chain(&[0.0; 21], &b, &times).unwrap();
        for (r, c) in real.amplitudes.iter().zip(&chain.amplitudes) {
            for (n, (x, z)) in r.iter().zip(c).enumerate() {
                let want = Complex64::new(0.0, 1.0).powi(n as i32) * *x;
                assert!((want - z).norm() < 1e-12);
            }
        }
        assert!(chain.max_probability_error() < 1e-12);
        assert!(evolve_chain(&[0.0], &b, &times).is_err());
    }

    #[test]
    fn exponential_fit_examples() {
        let times = uniform_grid(0.0, 3.0, 31).unwrap();
        let curve = TimeSeries {
            values: times.iter().map(|t| (2.0 * t).exp()).collect(),
            times,
        };
        let f = fit_exponential(&curve, (0.5, 2.5)).unwrap();
        assert!((f.lambda - 2.0).abs() < 1e-12 && (f.r_squared - 1.0).abs() < 1e-12);
        assert!(fit_exponential(&curve, (0.5, 4.0)).is_err());
        let mut bad = curve.clone();
        bad.values[10] = 0.0;
        assert!(matches!(fit_exponential(&bad, (0.5, 2.5)), Err(Error::InvalidWindow(_))));
    }

    #[test]
    fn sech_spectral_tail() {
        let times = uniform_grid(0.0, 60.0, 6001).unwrap();
        let curve = TimeSeries {
            values: times.iter().map(|t| 1.0 / t.cosh()).collect(),
            times,
        };
        let omegas: Vec<f64> = (0..=80).map(|k| 0.1 * k as f64).collect();
        let sf = spectral_function(&curve, &omegas).unwrap();
        assert!(!sf.windowed);
        for (w, v) in omegas.iter().zip(&sf.values) {
            let exact = PI / (0.5 * PI * w).cosh();
            assert!((v - exact).abs() < 1e-6);
        }
        let rate = spectral_tail_rate(&sf, 2.0..=8.0).unwrap();
        assert!((rate - PI / 2.0).abs() < 0.05 * PI / 2.0);
    }

    #[test]
    fn pulse_is_flat_and_grids_are_checked() {
        let times = uniform_grid(-1.0, 1.0, 201).unwrap();
        let values: Vec<f64> = times.iter().map(|t| if t.abs() < 1e-12 { 1.0 } else { 0.0 }).collect();
        let sf = spectral_function(&TimeSeries { times, values }, &[0.0, 1.0, 10.0]).unwrap();
        for v in &sf.values {
            assert!((v - 0.01).abs() < 1e-12);
        }
        let bad = TimeSeries {
            times: vec![0.0, 0.1, 0.3],
            values: vec![1.0, 1.0, 1.0],
        };
        assert!(spectral_function(&bad, &[0.0]).is_err());
    }
}
