use std::collections::BTreeSet;

use crate::dd::{Dd, DD_EPSILON};
use super::poly::{poisson_bracket, AverageTable, GramImage, Monomial, SpherePolynomial};
use crate::error::{Error, Result};
use crate::krylov::{LanczosOutput, Termination, DEFAULT_BREAKDOWN_TOL};

pub const DEFAULT_DEGREE_CAP: usize = 40;

/// Relative accuracy below which `b_n` is no longer trusted.
const PRECISION_TARGET: f64 = 1e-10;

#[derive(Debug, Clone, Copy)]
pub struct ClassicalLanczosOptions {
    pub max_n: usize,
    /// Largest total degree a basis element may reach.
    pub degree_cap: usize,
    pub breakdown_tol: f64,
    pub store_basis: bool,
}

impl Default for ClassicalLanczosOptions {
    fn default() -> Self {
        Self {
            max_n: usize::MAX,
            degree_cap: DEFAULT_DEGREE_CAP,
            breakdown_tol: DEFAULT_BREAKDOWN_TOL,
            store_basis: false,
        }
    }
}

/// Lanczos recursion with `L f = {H, f}` and `(f|g) = <f g>` over the sphere(s).
///
/// `L` is antisymmetric for this inner product, so the recursion reads
/// `A_n = L O_{n-1} + b_{n-1} O_{n-2}` and all diagonal terms vanish.
///
/// The monomial basis is far from orthogonal, so norms come out of heavy
/// cancellation. The run stops with [`Termination::PrecisionLoss`] once the
/// cancellation would eat into the last ten digits of `b_n^2`.
pub fn classical_lanczos(
    h: &SpherePolynomial,
    seed: &SpherePolynomial,
    opts: &ClassicalLanczosOptions,
) -> Result<LanczosOutput<SpherePolynomial>> {
    if h.spheres() != seed.spheres() {
        return Err(Error::DimensionMismatch {
            left: h.spheres() as usize,
            right: seed.spheres() as usize,
        });
    }
    if !(opts.breakdown_tol > 0.0) {
        return Err(Error::InvalidArgument("breakdown tolerance must be positive".into()));
    }
    let mut table = AverageTable::default();
    let n0 = GramImage::new(seed, seed.dd_terms().keys(), &mut table).inner(seed).0;
    if seed.is_zero() || !(n0.hi > 0.0) {
        return Err(Error::InvalidArgument("seed polynomial vanishes on the sphere".into()));
    }
    let first = seed.divide(n0.sqrt_f64());
    let h_deg = h.degree();
    let h_scale = h.max_abs_coeff();
    let mut support: BTreeSet<Monomial> = first.dd_terms().keys().copied().collect();
    let mut basis = vec![first];
    let mut b: Vec<f64> = Vec::new();
    let termination = loop {
        if b.len() >= opts.max_n {
            break Termination::MaxIterations;
        }
        let last = &basis[basis.len() - 1];
        if last.degree() + h_deg.saturating_sub(1) > opts.degree_cap {
            break Termination::DegreeCap;
        }
        let mut a = poisson_bracket(h, last)?;
        if let (Some(prev), Some(bp)) = (basis.len().checked_sub(2).map(|k| &basis[k]), b.last()) {
            a = a.add_scaled(prev, *bp)?;
        }
        support.extend(a.dd_terms().keys().copied());
        for pass in 0..2 {
            let image = GramImage::new(&a, &support, &mut table);
            let before = image.inner(&a).0.sqrt_f64();
            let coeffs: Vec<Dd> = basis.iter().map(|q| image.inner(q).0).collect();
            for (q, c) in basis.iter().zip(&coeffs) {
                if !c.is_zero() {
                    a = a.add_scaled_dd(q, -*c)?;
                }
            }
            let correction = coeffs.iter().map(|c| c.hi * c.hi).sum::<f64>().sqrt();
            if pass == 0 && !(correction > 1e-8 * before) {
                break;
            }
        }
        let (sq, mag) = GramImage::new(&a, a.dd_terms().keys(), &mut table).inner(&a);
        let bn = sq.sqrt_f64();
        let threshold = match b.first() {
            Some(b1) => opts.breakdown_tol * b1,
            None => opts.breakdown_tol * h_scale,
        };
        if a.is_zero() || !(bn > threshold) {
            break Termination::BreakdownZero;
        }
        if DD_EPSILON * mag > PRECISION_TARGET * sq.hi {
            break Termination::PrecisionLoss;
        }
        b.push(bn);
        basis.push(a.divide(bn));
    };
    let krylov_dim = basis.len();
    Ok(LanczosOutput {
        b,
        a: vec![0.0; krylov_dim],
        krylov_dim,
        termination,
        basis: opts.store_basis.then_some(basis),
    })
}
