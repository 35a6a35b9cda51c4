//! Operator-space Lanczos recursion.
//!
//! The Liouvillian `L = [H_tilde, .]` is diagonal in the energy eigenbasis:
//! `(L A)_{mn} = (E_m - E_n) A_{mn}`. Both supported inner products are
//! diagonal there as well, weighting column `n` by `1/D` (infinite
//! temperature) or by `1/N` for the `N` eigenstates inside an energy window
//! (microcanonical). The engine therefore runs on the vector of weighted
//! moduli `sqrt(w_n) |A_{mn}|` against the diagonal frequency matrix. Phases
//! of the seed commute with `L` and drop out of the coefficients; they are
//! restored only when the operator basis is requested.

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fit::fit_line;
use crate::linalg::{axpy, dot, norm};
use crate::models::{eigendecompose, SpectralDecomposition};
use crate::spin_algebra::{hs_inner, DenseOperator};

/// Seed entries with modulus below this fraction of the largest one are
/// rounding noise of the basis change and are dropped.
const SUPPORT_CUTOFF: f64 = 1e-14;
/// Same, for matrix elements taken in a double-double eigenbasis.
const REFINED_SUPPORT_CUTOFF: f64 = 1e-30;

/// A second orthogonalization pass runs when the first pass removed more
/// than this fraction of the residual.
const REORTH_TRIGGER: f64 = 1e-8;

pub const DEFAULT_BREAKDOWN_TOL: f64 = 1e-8;

/// Energy window of a microcanonical inner product.
#[derive(Debug, Clone)]
pub struct MicrocanonicalWindow {
    pub center: f64,
    pub half_width: f64,
    /// Indices into the spectrum's eigenvalues, ascending.
    pub states: Vec<usize>,
    spectrum: Arc<SpectralDecomposition>,
}

impl MicrocanonicalWindow {
    pub fn count(&self) -> usize {
        self.states.len()
    }

    pub fn spectrum(&self) -> &Arc<SpectralDecomposition> {
        &self.spectrum
    }
}

/// Which operator inner product the Lanczos recursion uses.
#[derive(Debug, Clone)]
pub enum InnerProductSpec {
    /// `(A|B) = Tr(A^dagger B) / D`.
    InfiniteTemperature,
    /// `(A|B) = (1/N) sum_{n in window} <n| A^dagger B |n>`.
    Microcanonical(MicrocanonicalWindow),
}

impl InnerProductSpec {
    /// Evaluates `(A|B)` directly in the original basis.
    pub fn inner(&self, a: &DenseOperator, b: &DenseOperator) -> Result<Complex64> {
        match self {
            InnerProductSpec::InfiniteTemperature => hs_inner(a, b),
            InnerProductSpec::Microcanonical(w) => {
                let sp = &w.spectrum;
                if a.dim() != sp.dim() || b.dim() != sp.dim() {
                    return Err(Error::DimensionMismatch {
                        left: sp.dim(),
                        right: if a.dim() != sp.dim() { a.dim() } else { b.dim() },
                    });
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for &n in &w.states {
                    let v = sp.vectors().column(n);
                    let av = a.matrix() * v;
                    let bv = b.matrix() * v;
                    acc += av.dotc(&bv);
                }
                Ok(acc / w.count() as f64)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            InnerProductSpec::InfiniteTemperature => "infinite".to_string(),
            InnerProductSpec::Microcanonical(w) => {
                format!("micro(E={}, dE={}, N={})", w.center, w.half_width, w.count())
            }
        }
    }
}

/// Collects every eigenstate with energy in `[energy - half_width, energy + half_width]`.
pub fn microcanonical_inner_spec(
    spectrum: Arc<SpectralDecomposition>,
    energy: f64,
    half_width: f64,
) -> Result<InnerProductSpec> {
    if !energy.is_finite() || !(half_width >= 0.0) || !half_width.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "window needs finite center and non-negative half width, got E = {energy}, dE = {half_width}"
        )));
    }
    let (lo, hi) = (energy - half_width, energy + half_width);
    let states: Vec<usize> = spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .filter(|(_, e)| **e >= lo && **e <= hi)
        .map(|(k, _)| k)
        .collect();
    if states.is_empty() {
        let nearest = spectrum.eigenvalues[spectrum.nearest(energy)];
        return Err(Error::EmptyWindow { lo, hi, nearest });
    }
    Ok(InnerProductSpec::Microcanonical(MicrocanonicalWindow {
        center: energy,
        half_width,
        states,
        spectrum,
    }))
}

/// Why the recursion stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    /// `b_n` fell below the breakdown threshold: the Krylov space is exhausted.
    BreakdownZero,
    MaxIterations,
    /// The Krylov dimension reached `D^2 - D + 1`.
    DimensionBound,
    /// The next polynomial basis element would exceed the degree cap.
    DegreeCap,
    /// Rounding in the polynomial inner products would exceed the working accuracy.
    PrecisionLoss,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Termination::BreakdownZero => "breakdown",
            Termination::MaxIterations => "max-iterations",
            Termination::DimensionBound => "dimension-bound",
            Termination::DegreeCap => "degree-cap",
            Termination::PrecisionLoss => "precision-loss",
        };
        f.write_str(s)
    }
}

/// Result of a Lanczos run. `b[0]` is `b_1`.
#[derive(Debug, Clone)]
pub struct LanczosOutput<B = DenseOperator> {
    pub b: Vec<f64>,
    /// Diagonal coefficients `a_n = (O_n | L O_n)`, `a[0]` belonging to the
    /// seed. They vanish at infinite temperature for Hermitian seeds.
    pub a: Vec<f64>,
    pub krylov_dim: usize,
    pub termination: Termination,
    pub basis: Option<Vec<B>>,
}

impl<B> LanczosOutput<B> {
    /// `(n, b_n)` pairs starting at `n = 1`.
    pub fn labeled(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.b.iter().enumerate().map(|(k, b)| (k + 1, *b))
    }

    /// `b_n` for the 1-based label `n`.
    pub fn b_n(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|k| self.b.get(k).copied())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LanczosOptions {
    /// Maximum number of coefficients `b_n` to compute.
    pub max_n: usize,
    /// Relative breakdown threshold: stop once `b_n < tol * b_1`.
    pub breakdown_tol: f64,
    pub store_basis: bool,
}

impl Default for LanczosOptions {
    fn default() -> Self {
        Self {
            max_n: usize::MAX,
            breakdown_tol: DEFAULT_BREAKDOWN_TOL,
            store_basis: false,
        }
    }
}

impl LanczosOptions {
    pub fn with_max_n(max_n: usize) -> Self {
        Self {
            max_n,
            ..Self::default()
        }
    }
}

/// Eigenbasis of `H_tilde` in which the Liouvillian is diagonal.
#[derive(Debug, Clone)]
pub struct LiouvillianFrame {
    spectrum: Arc<SpectralDecomposition>,
    energies: Vec<f64>,
}

impl LiouvillianFrame {
    pub fn new(h_tilde: &DenseOperator) -> Result<Self> {
        let spectrum = Arc::new(eigendecompose(h_tilde)?);
        let energies = spectrum.eigenvalues.clone();
        Ok(Self { spectrum, energies })
    }

    /// Frame for `H_tilde = scale * H` given the decomposition of `H`.
    pub fn from_spectrum(spectrum: Arc<SpectralDecomposition>, scale: f64) -> Self {
        let energies = spectrum.eigenvalues.iter().map(|e| scale * e).collect();
        Self { spectrum, energies }
    }

    /// Uses an existing eigenbasis for `h_tilde`, checking that it diagonalizes it.
    pub fn with_basis(spectrum: Arc<SpectralDecomposition>, h_tilde: &DenseOperator) -> Result<Self> {
        let d = spectrum.to_eigenbasis(h_tilde)?;
        let n = d.nrows();
        let scale = h_tilde.max_abs().max(f64::MIN_POSITIVE);
        let mut off = 0.0f64;
        for j in 0..n {
            for i in 0..n {
                if i != j {
                    off = off.max(d[(i, j)].norm());
                }
            }
        }
        if off > 1e-8 * scale * n as f64 {
            return Err(Error::InvalidArgument(
                "the inner product's eigenbasis does not diagonalize H_tilde".into(),
            ));
        }
        let energies = (0..n).map(|k| d[(k, k)].re).collect();
        Ok(Self { spectrum, energies })
    }

    pub fn spectrum(&self) -> &Arc<SpectralDecomposition> {
        &self.spectrum
    }

    /// Eigenvalues of `H_tilde`.
    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }
}

/// One entry `(m, n)` of an operator in the eigenbasis, as seen by the engine.
#[derive(Debug, Clone, Copy)]
struct SupportEntry {
    row: usize,
    col: usize,
    frequency: f64,
    /// `sqrt(w_n) |O_mn|` of the seed.
    weight_amp: f64,
    phase: Complex64,
    col_weight: f64,
}

fn column_weights(frame: &LiouvillianFrame, inner: &InnerProductSpec) -> Result<Vec<f64>> {
    let d = frame.dim();
    match inner {
        InnerProductSpec::InfiniteTemperature => Ok(vec![1.0 / d as f64; d]),
        InnerProductSpec::Microcanonical(w) => {
            if w.spectrum.dim() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: w.spectrum.dim(),
                });
            }
            let mut weights = vec![0.0; d];
            for &n in &w.states {
                weights[n] = 1.0 / w.count() as f64;
            }
            Ok(weights)
        }
    }
}

fn seed_support(
    frame: &LiouvillianFrame,
    seed: &DenseOperator,
    inner: &InnerProductSpec,
) -> Result<Vec<SupportEntry>> {
    let weights = column_weights(frame, inner)?;
    let s = frame.spectrum.to_eigenbasis(seed)?;
    let d = frame.dim();
    let mut entries = Vec::new();
    for n in 0..d {
        if weights[n] == 0.0 {
            continue;
        }
        let sw = weights[n].sqrt();
        for m in 0..d {
            let z = s[(m, n)];
            let modulus = z.norm();
            if modulus == 0.0 {
                continue;
            }
            entries.push(SupportEntry {
                row: m,
                col: n,
                frequency: frame.energies[m] - frame.energies[n],
                weight_amp: sw * modulus,
                phase: z / modulus,
                col_weight: weights[n],
            });
        }
    }
    let max_amp = entries.iter().map(|e| e.weight_amp).fold(0.0, f64::max);
    if max_amp == 0.0 {
        return Err(Error::InvalidArgument(
            "seed operator has zero norm under the chosen inner product".into(),
        ));
    }
    let cutoff = if frame.spectrum.is_refined() && seed.is_real() {
        REFINED_SUPPORT_CUTOFF
    } else {
        SUPPORT_CUTOFF
    };
    entries.retain(|e| e.weight_amp > cutoff * max_amp);
    Ok(entries)
}

/// Weighted spectral measure of the seed: frequencies of `L` and the
/// normalized weights `|O_mn|^2 w_n / (O|O)`.
pub fn spectral_measure(
    frame: &LiouvillianFrame,
    seed: &DenseOperator,
    inner: &InnerProductSpec,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let entries = seed_support(frame, seed, inner)?;
    let total: f64 = entries.iter().map(|e| e.weight_amp * e.weight_amp).sum();
    Ok((
        entries.iter().map(|e| e.frequency).collect(),
        entries.iter().map(|e| e.weight_amp * e.weight_amp / total).collect(),
    ))
}

pub(crate) struct RawLanczos {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub termination: Termination,
    pub vectors: Vec<Vec<f64>>,
}

/// Lanczos on `diag(frequencies)` with full reorthogonalization, starting
/// from the unit vector along `start`.
///
/// `symmetric` declares that `frequencies` are the moduli of a measure even
/// under `w -> -w`: vectors of opposite parity are then orthogonal by
/// construction and every `a_n` is exactly zero.
pub(crate) fn diagonal_lanczos(
    freqs: &[f64],
    start: &[f64],
    max_n: usize,
    breakdown_tol: f64,
    dimension_bound: usize,
    symmetric: bool,
) -> RawLanczos {
    let len = freqs.len();
    let n0 = norm(start);
    let mut vectors: Vec<Vec<f64>> = vec![start.iter().map(|v| v / n0).collect()];
    let mut a: Vec<f64> = Vec::new();
    let mut b: Vec<f64> = Vec::new();
    let l_scale = freqs.iter().map(|w| w.abs()).fold(0.0, f64::max);
    let mut coeffs: Vec<f64> = Vec::new();
    let mut r = vec![0.0; len];
    let termination = loop {
        let k = vectors.len();
        if k >= dimension_bound {
            break Termination::DimensionBound;
        }
        if b.len() >= max_n {
            break Termination::MaxIterations;
        }
        let last = &vectors[k - 1];
        for ((ri, wi), qi) in r.iter_mut().zip(freqs).zip(last) {
            *ri = wi * qi;
        }
        if k >= 2 {
            axpy(-b[k - 2], &vectors[k - 2], &mut r);
        }
        // Only vectors of the new vector's parity overlap it in the folded case.
        let (first, step) = if symmetric { (k % 2, 2) } else { (0, 1) };
        let mut diag = 0.0;
        for pass in 0..2 {
            let before = norm(&r);
            coeffs.clear();
            coeffs.extend(vectors[first..].iter().step_by(step).map(|q| dot(q, &r)));
            for (q, c) in vectors[first..].iter().step_by(step).zip(&coeffs) {
                axpy(-c, q, &mut r);
            }
            if !symmetric {
                diag += coeffs[k - 1];
            }
            let correction = norm(&coeffs);
            if pass == 0 && !(correction > REORTH_TRIGGER * before) {
                break;
            }
        }
        let bn = norm(&r);
        let threshold = if b.is_empty() {
            breakdown_tol * l_scale
        } else {
            breakdown_tol * b[0]
        };
        a.push(diag);
        if !(bn > threshold) || bn == 0.0 {
            break Termination::BreakdownZero;
        }
        b.push(bn);
        vectors.push(r.iter().map(|v| v / bn).collect());
    };
    // The diagonal term of the last basis vector is only computed when the
    // recursion continued past it.
    if a.len() < vectors.len() {
        let last = &vectors[vectors.len() - 1];
        let s = if symmetric {
            0.0
        } else {
            last.iter().zip(freqs).map(|(q, w)| w * q * q).sum()
        };
        a.push(s);
    }
    RawLanczos {
        a,
        b,
        termination,
        vectors,
    }
}

/// Runs the Lanczos recursion for `L = [H_tilde, .]` from `seed`.
///
/// The seed is normalized first. A microcanonical inner product reuses its
/// window's eigenbasis, which must diagonalize `h_tilde`.
pub fn lanczos(
    h_tilde: &DenseOperator,
    seed: &DenseOperator,
    inner: &InnerProductSpec,
    opts: &LanczosOptions,
) -> Result<LanczosOutput> {
    if !h_tilde.is_hermitian(1e-12) {
        return Err(Error::InvalidArgument("H_tilde must be Hermitian".into()));
    }
    let frame = match inner {
        InnerProductSpec::InfiniteTemperature => LiouvillianFrame::new(h_tilde)?,
        InnerProductSpec::Microcanonical(w) => {
            LiouvillianFrame::with_basis(w.spectrum.clone(), h_tilde)?
        }
    };
    lanczos_in_frame(&frame, seed, inner, opts)
}

/// [`lanczos`] with a precomputed eigenbasis of `H_tilde`.
pub fn lanczos_in_frame(
    frame: &LiouvillianFrame,
    seed: &DenseOperator,
    inner: &InnerProductSpec,
    opts: &LanczosOptions,
) -> Result<LanczosOutput> {
    if !(opts.breakdown_tol > 0.0) {
        return Err(Error::InvalidArgument("breakdown tolerance must be positive".into()));
    }
    if seed.dim() != frame.dim() {
        return Err(Error::DimensionMismatch {
            left: frame.dim(),
            right: seed.dim(),
        });
    }
    if let InnerProductSpec::Microcanonical(w) = inner {
        if !Arc::ptr_eq(&w.spectrum, &frame.spectrum) && w.spectrum.dim() != frame.dim() {
            return Err(Error::DimensionMismatch {
                left: frame.dim(),
                right: w.spectrum.dim(),
            });
        }
    }
    let entries = seed_support(frame, seed, inner)?;
    let d = frame.dim();
    let bound = d * d - d + 1;
    // A Hermitian seed at infinite temperature has |O_mn| = |O_nm| on
    // frequencies of opposite sign.
    let symmetric = matches!(inner, InnerProductSpec::InfiniteTemperature) && seed.is_hermitian(1e-12);
    let (freqs, start, members) = if symmetric {
        fold_pairs(&entries)
    } else {
        (
            entries.iter().map(|e| e.frequency).collect(),
            entries.iter().map(|e| e.weight_amp).collect(),
            (0..entries.len()).map(|i| vec![i]).collect(),
        )
    };
    let raw = diagonal_lanczos(&freqs, &start, opts.max_n, opts.breakdown_tol, bound, symmetric);
    let krylov_dim = raw.vectors.len();
    let basis = opts.store_basis.then(|| {
        raw.vectors
            .iter()
            .enumerate()
            .map(|(n, u)| {
                let mut q = vec![0.0; entries.len()];
                for ((group, amp), v) in members.iter().zip(&start).zip(u) {
                    for &i in group {
                        let e = &entries[i];
                        let sign = if symmetric && n % 2 == 1 && e.frequency < 0.0 { -1.0 } else { 1.0 };
                        q[i] = sign * v * e.weight_amp / amp;
                    }
                }
                to_operator(frame, &entries, &q)
            })
            .collect()
    });
    Ok(LanczosOutput {
        b: raw.b,
        a: raw.a,
        krylov_dim,
        termination: raw.termination,
        basis,
    })
}

/// Merges each `(m, n)`, `(n, m)` pair into one entry at `|w|` carrying the
/// pair's total weight.
fn fold_pairs(entries: &[SupportEntry]) -> (Vec<f64>, Vec<f64>, Vec<Vec<usize>>) {
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, e) in entries.iter().enumerate() {
        let key = (e.row.min(e.col), e.row.max(e.col));
        let slot = *index.entry(key).or_insert_with(|| {
            members.push(Vec::new());
            members.len() - 1
        });
        members[slot].push(i);
    }
    let freqs = members
        .iter()
        .map(|g| entries[g[0]].frequency.abs())
        .collect();
    let amps = members
        .iter()
        .map(|g| g.iter().map(|&i| entries[i].weight_amp.powi(2)).sum::<f64>().sqrt())
        .collect();
    (freqs, amps, members)
}

fn to_operator(frame: &LiouvillianFrame, entries: &[SupportEntry], q: &[f64]) -> DenseOperator {
    let d = frame.dim();
    let mut m = DMatrix::<Complex64>::zeros(d, d);
    for (e, v) in entries.iter().zip(q) {
        m[(e.row, e.col)] = e.phase * (v / e.col_weight.sqrt());
    }
    let v = frame.spectrum.vectors();
    let out = crate::spin_algebra::multiply(v, &crate::spin_algebra::multiply(&m, &v.adjoint()));
    DenseOperator::from_matrix(out).expect("square by construction")
}

/// Straight-line fit `b_n ~ alpha n + beta`, optionally with a power law.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeFit {
    pub alpha: f64,
    pub intercept: f64,
    /// 1-based `n` labels covered by the fit.
    pub window: RangeInclusive<usize>,
    /// RMS deviation from the fitted line.
    pub residual: f64,
    /// `(prefactor, delta)` of `b_n ~ prefactor n^delta`, when requested.
    pub sublinear: Option<(f64, f64)>,
}

fn window_values(b: &[f64], window: &RangeInclusive<usize>) -> Result<(Vec<f64>, Vec<f64>)> {
    let (lo, hi) = (*window.start(), *window.end());
    if lo < 1 || hi > b.len() || hi < lo || hi - lo + 1 < 3 {
        return Err(Error::InvalidArgument(format!(
            "fit window {lo}..={hi} must hold at least 3 labels inside 1..={}",
            b.len()
        )));
    }
    let ns: Vec<f64> = (lo..=hi).map(|n| n as f64).collect();
    let ys: Vec<f64> = (lo..=hi).map(|n| b[n - 1]).collect();
    Ok((ns, ys))
}

/// Least-squares slope of `b_n` against `n` over the 1-based label window.
pub fn fit_linear_slope(b: &[f64], window: RangeInclusive<usize>) -> Result<SlopeFit> {
    let (ns, ys) = window_values(b, &window)?;
    let line = fit_line(&ns, &ys)?;
    Ok(SlopeFit {
        alpha: line.slope,
        intercept: line.intercept,
        window,
        residual: line.rms_residual,
        sublinear: None,
    })
}

/// [`fit_linear_slope`] plus a log-log fit for `b_n ~ alpha n^delta`.
pub fn fit_with_power_law(b: &[f64], window: RangeInclusive<usize>) -> Result<SlopeFit> {
    let mut fit = fit_linear_slope(b, window.clone())?;
    let (ns, ys) = window_values(b, &window)?;
    if ys.iter().any(|y| *y <= 0.0) {
        return Err(Error::InvalidWindow("power-law fit needs positive b_n".into()));
    }
    let lx: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let line = fit_line(&lx, &ly)?;
    fit.sublinear = Some((line.intercept.exp(), line.slope));
    Ok(fit)
}

/// Split `b_n = f(n) + (-1)^n g(n)` into a smooth part and an alternating envelope.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillationSplit {
    /// 1-based labels of the interior points.
    pub n: Vec<usize>,
    pub f: Vec<f64>,
    pub g: Vec<f64>,
}

impl OscillationSplit {
    /// Mean of `|g(n)|` over labels in `window`.
    pub fn mean_abs_g(&self, window: RangeInclusive<usize>) -> Result<f64> {
        let vals: Vec<f64> = self
            .n
            .iter()
            .zip(&self.g)
            .filter(|(n, _)| window.contains(n))
            .map(|(_, g)| g.abs())
            .collect();
        if vals.is_empty() {
            return Err(Error::InvalidWindow(format!("no labels in {window:?}")));
        }
        Ok(vals.iter().sum::<f64>() / vals.len() as f64)
    }
}

/// Smooth part `f(n) = (b_{n-1} + 2 b_n + b_{n+1}) / 4` and envelope
/// `g(n) = (-1)^n (b_n - f(n))` at interior labels.
///
/// The centered three-point filter passes straight lines unchanged, so
/// linear growth leaves `g = 0` and a constant alternation `c (-1)^n` is
/// returned exactly as `g = c`.
pub fn decompose_oscillation(b: &[f64]) -> Result<OscillationSplit> {
    if b.len() < 4 {
        return Err(Error::InvalidArgument(format!(
            "need at least 4 coefficients, got {}",
            b.len()
        )));
    }
    let mut split = OscillationSplit {
        n: Vec::with_capacity(b.len() - 2),
        f: Vec::with_capacity(b.len() - 2),
        g: Vec::with_capacity(b.len() - 2),
    };
    for k in 1..b.len() - 1 {
        let n = k + 1;
        let f = 0.25 * (b[k - 1] + 2.0 * b[k] + b[k + 1]);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        split.n.push(n);
        split.f.push(f);
        split.g.push(sign * (b[k] - f));
    }
    Ok(split)
}
