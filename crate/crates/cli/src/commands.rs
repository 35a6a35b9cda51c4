//! One function per subcommand: resolve settings, compute, fill a table.

use std::path::Path;
use std::sync::Arc;

use krylov_core::classical::{
    alpha_curve, classical_lanczos, energy_domain, find_saddles_fp, find_saddles_lmg,
    fp_hamiltonian, fp_lower_bound_alpha, fp_saddle_exponent, lmg_hamiltonian, sup_alpha,
    ClassicalLanczosOptions, FixedPointFamily, SpherePolynomial,
};
use krylov_core::evolution::{
    autocorrelation_direct, evolve_chain, evolve_wavefunction, fit_exponential, k_complexity,
    otoc, uniform_grid, TimeSeries,
};
use krylov_core::krylov::{
    decompose_oscillation, fit_with_power_law, lanczos_in_frame,
    microcanonical_inner_spec, InnerProductSpec, LanczosOptions, LanczosOutput, LiouvillianFrame,
    DEFAULT_BREAKDOWN_TOL,
};
use krylov_core::models::{build_fp, build_lmg, eigendecompose, FpModel, LmgModel};
use krylov_core::spin_algebra::{DenseOperator, Spin};
use krylov_core::Complex64;

use crate::error::{CliError, Context, Result};
use crate::settings::Resolver;
use crate::table::ResultTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Lanczos,
    Kcomplexity,
    Otoc,
    Microcanonical,
    ClassicalAlpha,
    ClassicalSaddles,
    ClassicalLanczos,
    FpBound,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Lanczos,
        Command::Kcomplexity,
        Command::Otoc,
        Command::Microcanonical,
        Command::ClassicalAlpha,
        Command::ClassicalSaddles,
        Command::ClassicalLanczos,
        Command::FpBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Lanczos => "lanczos",
            Command::Kcomplexity => "kcomplexity",
            Command::Otoc => "otoc",
            Command::Microcanonical => "microcanonical",
            Command::ClassicalAlpha => "classical-alpha",
            Command::ClassicalSaddles => "classical-saddles",
            Command::ClassicalLanczos => "classical-lanczos",
            Command::FpBound => "fp-bound",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| CliError::Config(format!("unknown command `{name}`")))
    }

    /// Whether plots of this table read best on a logarithmic y axis.
    pub fn log_plot(self) -> bool {
        matches!(self, Command::Kcomplexity | Command::Otoc)
    }

    pub fn run(self, r: &Resolver) -> Result<ResultTable> {
        match self {
            Command::Lanczos => cmd_lanczos(r),
            Command::Kcomplexity => cmd_kcomplexity(r),
            Command::Otoc => cmd_otoc(r),
            Command::Microcanonical => cmd_microcanonical(r),
            Command::ClassicalAlpha => cmd_classical_alpha(r),
            Command::ClassicalSaddles => cmd_classical_saddles(r),
            Command::ClassicalLanczos => cmd_classical_lanczos(r),
            Command::FpBound => cmd_fp_bound(r),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ModelKind {
    Lmg,
    Fp,
}

fn model_kind(r: &Resolver) -> Result<ModelKind> {
    match r.string("model", "lmg").as_str() {
        "lmg" => Ok(ModelKind::Lmg),
        "fp" => Ok(ModelKind::Fp),
        other => Err(CliError::Config(format!("model must be lmg or fp, got `{other}`"))),
    }
}

fn default_coupling(kind: ModelKind) -> f64 {
    match kind {
        ModelKind::Lmg => 2.0,
        ModelKind::Fp => 0.0,
    }
}

enum Quantum {
    Lmg(LmgModel),
    Fp(FpModel),
}

impl Quantum {
    fn h(&self) -> &DenseOperator {
        match self {
            Quantum::Lmg(m) => &m.h,
            Quantum::Fp(m) => &m.h,
        }
    }

    fn h_tilde(&self) -> &DenseOperator {
        match self {
            Quantum::Lmg(m) => &m.h_tilde,
            Quantum::Fp(m) => &m.h_tilde,
        }
    }

    fn spin(&self) -> Spin {
        match self {
            Quantum::Lmg(m) => m.spin,
            Quantum::Fp(m) => m.spin,
        }
    }

    fn describe(&self, t: &mut ResultTable) {
        let s = self.spin();
        t.meta("hilbert_dim", self.h().dim());
        t.meta("hbar_eff", s.hbar_eff());
        match self {
            Quantum::Lmg(_) => t.meta("hamiltonian", "H = x + J z^2, H_tilde = S H"),
            Quantum::Fp(_) => t.meta(
                "hamiltonian",
                "H = (1+c)(x1 + x2) + 4(1-c) z1 z2, H_tilde = s H (same rescaling as LMG)",
            ),
        }
    }
}

fn quantum_model(r: &Resolver) -> Result<Quantum> {
    let kind = model_kind(r)?;
    let spin_value = r.f64("spin", Some(25.0))?;
    let spin = Spin::new(spin_value).map_err(|e| CliError::Config(e.to_string()))?;
    let coupling = r.f64("coupling", Some(default_coupling(kind)))?;
    match kind {
        ModelKind::Lmg => build_lmg(spin, coupling)
            .map(Quantum::Lmg)
            .map_err(|e| CliError::Config(e.to_string())),
        ModelKind::Fp => build_fp(spin, coupling)
            .map(Quantum::Fp)
            .map_err(|e| CliError::Config(e.to_string())),
    }
}

/// Seed operator from the `seed` / `seed-file` settings.
fn seed_operator(r: &Resolver, model: &Quantum) -> Result<DenseOperator> {
    if let Some(path) = r.optional_string("seed-file") {
        return read_seed_file(Path::new(&path), model.h().dim());
    }
    let default = match model {
        Quantum::Lmg(_) => "z",
        Quantum::Fp(_) => "x1+x2",
    };
    let name = r.string("seed", default);
    match (model, name.as_str()) {
        (Quantum::Lmg(m), "z") => Ok(m.spins.z_hat.clone()),
        (Quantum::Lmg(m), "x") => Ok(m.spins.x_hat.clone()),
        (Quantum::Fp(m), "z") => Ok(m.z1.clone()),
        (Quantum::Fp(m), "x") => Ok(m.x1.clone()),
        (Quantum::Fp(m), "x1+x2") => Ok(m.x_sum()),
        (_, other) => Err(CliError::Config(format!(
            "seed `{other}` is not available for this model (lmg: z, x; fp: z, x, x1+x2)"
        ))),
    }
}

/// Reads a `D x D` matrix: one row per line, entries separated by
/// whitespace, each either `re` or `re,im`. Lines starting with `#` are skipped.
pub fn read_seed_file(path: &Path, dim: usize) -> Result<DenseOperator> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
    parse_seed_matrix(&text, dim).map_err(|m| CliError::Config(format!("{}: {m}", path.display())))
}

fn parse_seed_matrix(text: &str, dim: usize) -> std::result::Result<DenseOperator, String> {
    let rows: Vec<&str> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect();
    if rows.len() != dim {
        return Err(format!("expected {dim} rows, found {}", rows.len()));
    }
    let mut entries = Vec::with_capacity(dim * dim);
    for (i, row) in rows.iter().enumerate() {
        let fields: Vec<&str> = row.split_whitespace().collect();
        if fields.len() != dim {
            return Err(format!("row {} has {} entries, expected {dim}", i + 1, fields.len()));
        }
        for f in fields {
            let (re, im) = f.split_once(',').unwrap_or((f, "0"));
            let parse = |s: &str| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| format!("invalid entry `{f}` in row {}", i + 1))
            };
            entries.push(Complex64::new(parse(re)?, parse(im)?));
        }
    }
    Ok(DenseOperator::from_fn(dim, |i, j| entries[i * dim + j]))
}

fn lanczos_options(r: &Resolver, default_max_n: Option<usize>) -> Result<LanczosOptions> {
    let max_n = match default_max_n {
        Some(d) => r.usize("max-n", Some(d))?,
        None => match r.optional_string("max-n") {
            Some(v) => v
                .parse()
                .map_err(|_| CliError::Config(format!("`max-n` has invalid value `{v}`")))?,
            None => usize::MAX,
        },
    };
    let breakdown_tol = r.f64("breakdown-tol", Some(DEFAULT_BREAKDOWN_TOL))?;
    if !(breakdown_tol > 0.0) {
        return Err(CliError::Config("`breakdown-tol` must be positive".into()));
    }
    Ok(LanczosOptions {
        max_n,
        breakdown_tol,
        store_basis: false,
    })
}

/// Frame and inner product for a quantum run. A microcanonical window is
/// placed on the spectrum of `H`; the frame then carries the `S` rescaling.
fn frame_and_inner(r: &Resolver, model: &Quantum, force_micro: bool) -> Result<(LiouvillianFrame, InnerProductSpec)> {
    let micro = if force_micro {
        true
    } else {
        match r.string("inner", "infinite").as_str() {
            "infinite" => false,
            "micro" => true,
            other => return Err(CliError::Config(format!("inner must be infinite or micro, got `{other}`"))),
        }
    };
    if !micro {
        let frame = LiouvillianFrame::new(model.h_tilde()).context(|| "diagonalizing H_tilde".into())?;
        return Ok((frame, InnerProductSpec::InfiniteTemperature));
    }
    let energy = r.f64("energy", Some(1.0))?;
    let window = r.f64("window", Some(0.1))?;
    let spectrum = Arc::new(eigendecompose(model.h()).context(|| "diagonalizing H".into())?);
    let inner = microcanonical_inner_spec(spectrum.clone(), energy, window)
        .context(|| format!("microcanonical window E = {energy} +- {window}"))?;
    Ok((LiouvillianFrame::from_spectrum(spectrum, model.spin().value()), inner))
}

fn run_lanczos(
    frame: &LiouvillianFrame,
    seed: &DenseOperator,
    inner: &InnerProductSpec,
    opts: &LanczosOptions,
) -> Result<LanczosOutput> {
    lanczos_in_frame(frame, seed, inner, opts).context(|| "Lanczos recursion".into())
}

fn describe_lanczos(t: &mut ResultTable, out: &LanczosOutput, inner: &InnerProductSpec, d: usize) {
    t.meta("inner_product", inner.label());
    if let InnerProductSpec::Microcanonical(w) = inner {
        t.meta("window_states", w.count());
    }
    t.meta("krylov_dim", out.krylov_dim);
    t.meta("dimension_bound", d * d - d + 1);
    t.meta("termination", out.termination);
}

/// Slope fit over the configured label window, clipped to the available labels.
fn describe_slope(t: &mut ResultTable, r: &Resolver, b: &[f64], default: (usize, usize)) -> Result<()> {
    let start = r.usize("fit-start", Some(default.0))?;
    let end = r.usize("fit-end", Some(default.1))?;
    let end = end.min(b.len());
    match fit_with_power_law(b, start..=end) {
        Ok(fit) => {
            t.meta("fit_window", format!("{start}..={end}"));
            t.meta("alpha", fit.alpha);
            t.meta("intercept", fit.intercept);
            t.meta("fit_residual", fit.residual);
            if let Some((prefactor, delta)) = fit.sublinear {
                t.meta("power_law_prefactor", prefactor);
                t.meta("power_law_delta", delta);
            }
        }
        Err(e) => t.meta("alpha", format!("unavailable ({e})")),
    }
    Ok(())
}

fn describe_exponent(t: &mut ResultTable, curve: &TimeSeries, window: (f64, f64), key: &str) {
    match fit_exponential(curve, window) {
        Ok(fit) => {
            t.meta(format!("{key}_window"), format!("[{}, {}]", window.0, window.1));
            t.meta(key, fit.lambda);
            t.meta(format!("{key}_r_squared"), fit.r_squared);
            t.meta(format!("{key}_points"), fit.points);
        }
        Err(e) => t.meta(key, format!("unavailable ({e})")),
    }
}

fn time_grid(r: &Resolver) -> Result<Vec<f64>> {
    let t_max = r.f64("t-max", Some(20.0))?;
    let points = r.usize("points", Some(2001))?;
    uniform_grid(0.0, t_max, points).map_err(|e| CliError::Config(e.to_string()))
}

fn time_fit_window(r: &Resolver, spin: Spin) -> Result<(f64, f64)> {
    let start = r.f64("t-fit-start", Some(1.0))?;
    let end = r.f64("t-fit-end", Some(spin.value().ln()))?;
    Ok((start, end))
}

fn labels(len: usize) -> Vec<f64> {
    (1..=len).map(|n| n as f64).collect()
}

pub fn cmd_lanczos(r: &Resolver) -> Result<ResultTable> {
    let model = quantum_model(r)?;
    let seed = seed_operator(r, &model)?;
    let (frame, inner) = frame_and_inner(r, &model, false)?;
    let opts = lanczos_options(r, None)?;
    let out = run_lanczos(&frame, &seed, &inner, &opts)?;
    let mut t = ResultTable::default();
    model.describe(&mut t);
    describe_lanczos(&mut t, &out, &inner, model.h().dim());
    describe_slope(&mut t, r, &out.b, (2, 37))?;
    t.push_column("n", labels(out.b.len()));
    t.push_column("b_n", out.b.clone());
    if matches!(inner, InnerProductSpec::Microcanonical(_)) {
        t.push_column("a_n", out.a[..out.b.len()].to_vec());
    }
    Ok(t)
}

pub fn cmd_kcomplexity(r: &Resolver) -> Result<ResultTable> {
    let model = quantum_model(r)?;
    let seed = seed_operator(r, &model)?;
    let (frame, inner) = frame_and_inner(r, &model, false)?;
    let opts = lanczos_options(r, Some(2000))?;
    let out = run_lanczos(&frame, &seed, &inner, &opts)?;
    let times = time_grid(r)?;
    let window = time_fit_window(r, model.spin())?;
    let mut t = ResultTable::default();
    model.describe(&mut t);
    describe_lanczos(&mut t, &out, &inner, model.h().dim());
    t.meta("chain_length", out.krylov_dim);
    match inner {
        InnerProductSpec::InfiniteTemperature => {
            let w = evolve_wavefunction(&out.b, &times).context(|| "chain evolution".into())?;
            let k = k_complexity(&w);
            t.meta("max_probability_error", w.max_probability_error());
            describe_exponent(&mut t, &k, window, "k_exponent");
            t.push_column("t", times.clone());
            t.push_column("K", k.values);
            t.push_column("C", w.amplitudes.iter().map(|row| row[0]).collect());
            t.push_column("sum_prob", w.total_probability());
        }
        InnerProductSpec::Microcanonical(_) => {
            let w = evolve_chain(&out.a, &out.b, &times).context(|| "chain evolution".into())?;
            let k = w.k_complexity();
            let c = w.autocorrelation();
            t.meta("max_probability_error", w.max_probability_error());
            describe_exponent(&mut t, &k, window, "k_exponent");
            t.push_column("t", times.clone());
            t.push_column("K", k.values);
            t.push_column("C", c.iter().map(|z| z.re).collect());
            t.push_column("C_im", c.iter().map(|z| z.im).collect());
            t.push_column("sum_prob", w.total_probability());
        }
    }
    Ok(t)
}

pub fn cmd_otoc(r: &Resolver) -> Result<ResultTable> {
    let model = quantum_model(r)?;
    let seed = seed_operator(r, &model)?;
    let frame = LiouvillianFrame::new(model.h_tilde()).context(|| "diagonalizing H_tilde".into())?;
    let times = time_grid(r)?;
    let curve = otoc(&frame, &seed, model.spin().hbar_eff(), &times).context(|| "OTOC".into())?;
    let window = time_fit_window(r, model.spin())?;
    let mut t = ResultTable::default();
    model.describe(&mut t);
    describe_exponent(&mut t, &curve, window, "lambda_otoc");
    let (peak_k, peak) = curve
        .values
        .iter()
        .enumerate()
        .fold((0, f64::MIN), |acc, (k, v)| if *v > acc.1 { (k, *v) } else { acc });
    t.meta("otoc_peak", peak);
    t.meta("otoc_peak_time", times[peak_k]);
    t.push_column("t", curve.times);
    t.push_column("otoc", curve.values);
    Ok(t)
}

pub fn cmd_microcanonical(r: &Resolver) -> Result<ResultTable> {
    let model = quantum_model(r)?;
    let seed = seed_operator(r, &model)?;
    let (frame, inner) = frame_and_inner(r, &model, true)?;
    let opts = lanczos_options(r, Some(200))?;
    let out = run_lanczos(&frame, &seed, &inner, &opts)?;
    let split = decompose_oscillation(&out.b).context(|| "odd/even split".into())?;
    let mut t = ResultTable::default();
    model.describe(&mut t);
    describe_lanczos(&mut t, &out, &inner, model.h().dim());
    describe_slope(&mut t, r, &out.b, (2, 10))?;
    match split.mean_abs_g(10..=40) {
        Ok(g) => t.meta("mean_abs_g_10_40", g),
        Err(e) => t.meta("mean_abs_g_10_40", format!("unavailable ({e})")),
    }
    let times = time_grid(r)?;
    let c = autocorrelation_direct(&frame, &seed, &inner, &times).context(|| "auto-correlation".into())?;
    let t_max = times[times.len() - 1];
    let late = times
        .iter()
        .zip(&c)
        .filter(|(s, _)| **s >= 0.5 * t_max)
        .map(|(_, z)| z.norm())
        .fold(0.0, f64::max);
    t.meta("late_max_abs_c", late);
    t.meta("late_window", format!("[{}, {t_max}]", 0.5 * t_max));
    let interior: Vec<usize> = split.n.clone();
    t.push_column("n", interior.iter().map(|n| *n as f64).collect());
    t.push_column("b_n", interior.iter().map(|n| out.b[n - 1]).collect());
    t.push_column("a_n", interior.iter().map(|n| out.a[n - 1]).collect());
    t.push_column("f", split.f);
    t.push_column("g", split.g);
    Ok(t)
}

pub fn cmd_classical_alpha(r: &Resolver) -> Result<ResultTable> {
    let j = r.f64("coupling", Some(2.0))?;
    let (lo, hi) = energy_domain(j).context(|| format!("energy range for J = {j}"))?;
    let inset = 1e-2 * (hi - lo);
    let emin = r.f64("emin", Some(lo + inset))?;
    let emax = r.f64("emax", Some(hi - inset))?;
    let points = r.usize("points", Some(200))?;
    let curve = alpha_curve(j, emin, emax, points).context(|| format!("alpha(E) for J = {j}"))?;
    let (e_star, a_star) = sup_alpha(j).context(|| format!("sup alpha for J = {j}"))?;
    let mut t = ResultTable::default();
    t.meta("energy_range", format!("({lo}, {hi})"));
    t.meta("sup_energy", e_star);
    t.meta("sup_two_alpha", 2.0 * a_star);
    if j >= 0.5 {
        t.meta("omega_saddle", (2.0 * j - 1.0).sqrt());
    }
    let s = &curve.samples;
    t.push_column("E", s.iter().map(|x| x.energy).collect());
    t.push_column("alpha", s.iter().map(|x| x.alpha).collect());
    t.push_column("two_alpha", s.iter().map(|x| 2.0 * x.alpha).collect());
    t.push_column("sigma_star", s.iter().map(|x| x.sigma_star).collect());
    t.push_column("tau_star", s.iter().map(|x| x.tau_star).collect());
    Ok(t)
}

pub fn cmd_classical_saddles(r: &Resolver) -> Result<ResultTable> {
    let kind = model_kind(r)?;
    let coupling = r.f64("coupling", Some(default_coupling(kind)))?;
    let points = match kind {
        ModelKind::Lmg => find_saddles_lmg(coupling),
        ModelKind::Fp => find_saddles_fp(coupling),
    }
    .map_err(|e| CliError::Config(e.to_string()))?;
    let names: &[&str] = match kind {
        ModelKind::Lmg => &["x", "y", "z"],
        ModelKind::Fp => &["x1", "y1", "z1", "x2", "y2", "z2"],
    };
    let mut t = ResultTable::default();
    t.meta("family_codes", "0 = axial (+-x), 1 = LMG tilted x = 1/(2J), 2 = FP tilted (gamma = z1/z2)");
    for (k, name) in names.iter().enumerate() {
        t.push_column(*name, points.iter().map(|p| p.coords.coords()[k]).collect());
    }
    t.push_column("omega_saddle", points.iter().map(|p| p.omega_saddle).collect());
    t.push_column(
        "family",
        points
            .iter()
            .map(|p| match p.family {
                FixedPointFamily::Axial => 0.0,
                FixedPointFamily::Tilted => 1.0,
                FixedPointFamily::FpTilted { .. } => 2.0,
            })
            .collect(),
    );
    if kind == ModelKind::Fp {
        t.push_column(
            "gamma",
            points
                .iter()
                .map(|p| match p.family {
                    FixedPointFamily::FpTilted { gamma } => gamma,
                    _ => 0.0,
                })
                .collect(),
        );
    }
    for k in 0..names.len() {
        let ev = |part: fn(&Complex64) -> f64| -> Vec<f64> {
            points.iter().map(|p| part(&p.jacobian_eigenvalues[k])).collect()
        };
        t.push_column(format!("eig{}_re", k + 1), ev(|z| z.re));
        t.push_column(format!("eig{}_im", k + 1), ev(|z| z.im));
    }
    Ok(t)
}

pub fn cmd_classical_lanczos(r: &Resolver) -> Result<ResultTable> {
    let kind = model_kind(r)?;
    let coupling = r.f64("coupling", Some(default_coupling(kind)))?;
    let (h, default_seed) = match kind {
        ModelKind::Lmg => (lmg_hamiltonian(coupling), "z"),
        ModelKind::Fp => {
            if !(-1.0..=1.0).contains(&coupling) {
                return Err(CliError::Config(format!("c must lie in [-1, 1], got {coupling}")));
            }
            (fp_hamiltonian(coupling), "x1+x2")
        }
    };
    let spheres = h.spheres();
    let seed = match (kind, r.string("seed", default_seed).as_str()) {
        (_, "z") => SpherePolynomial::coordinate(spheres, 0, 2),
        (_, "x") => SpherePolynomial::coordinate(spheres, 0, 0),
        (ModelKind::Fp, "x1+x2") => SpherePolynomial::coordinate(2, 0, 0)
            .try_add(&SpherePolynomial::coordinate(2, 1, 0))
            .context(|| "seed".into())?,
        (_, other) => {
            return Err(CliError::Config(format!(
                "seed `{other}` is not available for classical runs (lmg: z, x; fp: z, x, x1+x2)"
            )))
        }
    };
    let max_n = match r.optional_string("max-n") {
        Some(v) => v
            .parse()
            .map_err(|_| CliError::Config(format!("`max-n` has invalid value `{v}`")))?,
        None => usize::MAX,
    };
    let opts = ClassicalLanczosOptions {
        max_n,
        degree_cap: r.usize("degree-cap", Some(krylov_core::classical::DEFAULT_DEGREE_CAP))?,
        ..Default::default()
    };
    let out = classical_lanczos(&h, &seed, &opts).context(|| "classical Lanczos".into())?;
    let mut t = ResultTable::default();
    t.meta("inner_product", "sphere average");
    t.meta("termination", out.termination);
    describe_slope(&mut t, r, &out.b, (1, 20))?;
    t.push_column("n", labels(out.b.len()));
    t.push_column("b_n", out.b);
    Ok(t)
}

pub fn cmd_fp_bound(r: &Resolver) -> Result<ResultTable> {
    let cmin = r.f64("cmin", Some(-0.95))?;
    let cmax = r.f64("cmax", Some(0.95))?;
    let points = r.usize("points", Some(191))?;
    if points < 2 || !(cmax > cmin) {
        return Err(CliError::Config(format!(
            "need cmax > cmin and at least 2 points, got [{cmin}, {cmax}] with {points}"
        )));
    }
    let cs: Vec<f64> = (0..points)
        .map(|k| cmin + (cmax - cmin) * k as f64 / (points - 1) as f64)
        .collect();
    let bound = cs
        .iter()
        .map(|&c| fp_lower_bound_alpha(c).context(|| format!("bound at c = {c}")))
        .collect::<Result<Vec<_>>>()?;
    let omega = cs
        .iter()
        .map(|&c| fp_saddle_exponent(c).context(|| format!("saddle exponent at c = {c}")))
        .collect::<Result<Vec<_>>>()?;
    let mut t = ResultTable::default();
    t.meta("bound", "lower bound on 2 alpha_FP from equal-spin LMG, 2(1+c) sup_E alpha_LMG(J = 2(1-c)/(1+c))");
    t.meta("omega_peak", format!("{} at c = -0.2", 4.0 / 5f64.sqrt()));
    t.push_column("c", cs);
    t.push_column("bound", bound);
    t.push_column("omega", omega);
    Ok(t)
}
