use krylov_core::classical::{classical_lanczos, lmg_hamiltonian, ClassicalLanczosOptions, SpherePolynomial};
use krylov_core::krylov::{fit_linear_slope, lanczos, InnerProductSpec, LanczosOptions};
use krylov_core::models::{build_lmg, eigendecompose, lmg_classical_range};
use krylov_core::spin_algebra::Spin;

const SPINS: [f64; 3] = [25.0, 50.0, 75.0];

#[test]
fn quantum_lanczos_approaches_classical_lanczos() {
    let z = SpherePolynomial::coordinate(1, 0, 2);
    let classical = classical_lanczos(&lmg_hamiltonian(2.0), &z, &ClassicalLanczosOptions::default()).unwrap();
    let target = fit_linear_slope(&classical.b, 1..=20).unwrap().alpha;
    let mut slopes = Vec::new();
    let mut deviations = Vec::new();
    for s in SPINS {
        let m = build_lmg(Spin::new(s).unwrap(), 2.0).unwrap();
        let out = lanczos(
            &m.h_tilde,
            &m.spins.z_hat,
            &InnerProductSpec::InfiniteTemperature,
            &LanczosOptions::with_max_n(20),
        )
        .unwrap();
        slopes.push(fit_linear_slope(&out.b, 1..=20).unwrap().alpha);
        deviations.push(out.b.iter().zip(&classical.b).map(|(q, c)| (q - c).abs()).fold(0.0, f64::max));
    }
    // Coefficient by coefficient the quantum sequence closes in on the classical one.
    assert!(deviations.windows(2).all(|w| w[1] < w[0]), "{deviations:?}");
    // The fitted slope rises with S and ends within fit resolution of the classical slope.
    assert!(slopes.windows(2).all(|w| w[1] > w[0]), "{slopes:?}");
    assert!((slopes[2] - target).abs() <= 2e-3 * target, "{slopes:?} vs {target}");
}

#[test]
fn spectrum_edges_converge_to_classical_range() {
    let (lo, hi) = lmg_classical_range(2.0);
    let mut prev = f64::INFINITY;
    for s in SPINS {
        let m = build_lmg(Spin::new(s).unwrap(), 2.0).unwrap();
        let e = eigendecompose(&m.h).unwrap().eigenvalues;
        let (emin, emax) = (e[0], e[e.len() - 1]);
        assert!(emin >= lo - 2.0 / s && emax <= hi + 2.0 / s);
        let dist = (emin - lo).abs() + (emax - hi).abs();
        assert!(dist < prev, "S = {s}: edge distance {dist} did not shrink");
        prev = dist;
    }
}
