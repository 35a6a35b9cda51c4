//! Browser bindings: the classical growth rate alpha(E), LMG Lanczos
//! coefficients and Krylov complexity, each returned as an (x, y) series.

use krylov_core::classical::{alpha_curve, energy_domain, sup_alpha};
use krylov_core::evolution::{evolve_wavefunction, k_complexity, uniform_grid};
use krylov_core::krylov::{lanczos_in_frame, InnerProductSpec, LanczosOptions, LiouvillianFrame};
use krylov_core::models::{build_lmg, LmgModel};
use krylov_core::spin_algebra::Spin;
use wasm_bindgen::prelude::*;

/// Largest spin offered in the page; the Liouvillian is `(2S+1)^2` wide.
pub const MAX_SPIN: f64 = 30.0;

/// Two equal-length columns plus a one-line summary.
#[wasm_bindgen]
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    x: Vec<f64>,
    y: Vec<f64>,
    summary: String,
}

#[wasm_bindgen]
impl Series {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn y(&self) -> Vec<f64> {
        self.y.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn summary(&self) -> String {
        self.summary.clone()
    }
}

fn lmg(spin: f64, coupling: f64) -> Result<LmgModel, String> {
    if !(spin <= MAX_SPIN) {
        return Err(format!("spin must be at most {MAX_SPIN}"));
    }
    let spin = Spin::new(spin).map_err(|e| e.to_string())?;
    build_lmg(spin, coupling).map_err(|e| e.to_string())
}

fn lanczos_b(model: &LmgModel, max_n: usize) -> Result<Vec<f64>, String> {
    let frame = LiouvillianFrame::new(&model.h_tilde).map_err(|e| e.to_string())?;
    let opts = LanczosOptions::with_max_n(max_n);
    let out = lanczos_in_frame(&frame, &model.spins.z_hat, &InnerProductSpec::InfiniteTemperature, &opts)
        .map_err(|e| e.to_string())?;
    Ok(out.b)
}

/// `2 alpha(E)` across the open energy range of the classical LMG model.
pub fn alpha_series(coupling: f64, points: usize) -> Result<Series, String> {
    let (lo, hi) = energy_domain(coupling).map_err(|e| e.to_string())?;
    let inset = 1e-3 * (hi - lo);
    let curve = alpha_curve(coupling, lo + inset, hi - inset, points).map_err(|e| e.to_string())?;
    let (e_star, a_star) = sup_alpha(coupling).map_err(|e| e.to_string())?;
    Ok(Series {
        x: curve.samples.iter().map(|s| s.energy).collect(),
        y: curve.samples.iter().map(|s| 2.0 * s.alpha).collect(),
        summary: format!("max 2 alpha = {:.6} at E = {:.6}", 2.0 * a_star, e_star),
    })
}

/// Lanczos coefficients `b_n` for the `z` seed at infinite temperature.
pub fn lanczos_series(spin: f64, coupling: f64, max_n: usize) -> Result<Series, String> {
    let model = lmg(spin, coupling)?;
    let b = lanczos_b(&model, max_n)?;
    Ok(Series {
        x: (1..=b.len()).map(|n| n as f64).collect(),
        summary: format!("{} coefficients, Hilbert dimension {}", b.len(), model.h.dim()),
        y: b,
    })
}

/// Krylov complexity `K(t)` on `[0, t_max]` from the full chain.
pub fn complexity_series(spin: f64, coupling: f64, t_max: f64, points: usize) -> Result<Series, String> {
    let model = lmg(spin, coupling)?;
    let b = lanczos_b(&model, usize::MAX)?;
    let times = uniform_grid(0.0, t_max, points).map_err(|e| e.to_string())?;
    let w = evolve_wavefunction(&b, &times).map_err(|e| e.to_string())?;
    let k = k_complexity(&w);
    Ok(Series {
        summary: format!(
            "chain length {}, max probability error {:.1e}",
            b.len() + 1,
            w.max_probability_error()
        ),
        x: k.times,
        y: k.values,
    })
}

fn js(r: Result<Series, String>) -> Result<Series, JsValue> {
    r.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = alphaCurve)]
pub fn alpha_curve_js(coupling: f64, points: usize) -> Result<Series, JsValue> {
    js(alpha_series(coupling, points))
}

#[wasm_bindgen(js_name = lanczosCoefficients)]
pub fn lanczos_js(spin: f64, coupling: f64, max_n: usize) -> Result<Series, JsValue> {
    js(lanczos_series(spin, coupling, max_n))
}

#[wasm_bindgen(js_name = krylovComplexity)]
pub fn complexity_js(spin: f64, coupling: f64, t_max: f64, points: usize) -> Result<Series, JsValue> {
    js(complexity_series(spin, coupling, t_max, points))
}
