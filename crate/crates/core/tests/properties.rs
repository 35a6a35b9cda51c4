use std::sync::Arc;

use krylov_core::classical::{
    fp_energy, integrate_fp, integrate_lmg, lmg_energy, poisson_bracket, Monomial, SpherePolynomial,
};
use krylov_core::evolution::{autocorrelation_direct, evolve_chain, evolve_wavefunction, uniform_grid};
use krylov_core::krylov::{
    lanczos, lanczos_in_frame, microcanonical_inner_spec, InnerProductSpec, LanczosOptions,
    LiouvillianFrame,
};
use krylov_core::models::{build_lmg, eigendecompose};
use krylov_core::spin_algebra::{commutator, hs_inner, DenseOperator, Spin};
use krylov_core::Complex64;
use proptest::prelude::*;

fn operator(d: usize, entries: &[(f64, f64)], hermitian: bool) -> DenseOperator {
    let raw = nalgebra::DMatrix::from_fn(d, d, |i, j| {
        let (re, im) = entries[i * d + j];
        Complex64::new(re, im)
    });
    let m = if hermitian { (&raw + raw.adjoint()) * Complex64::new(0.5, 0.0) } else { raw };
    DenseOperator::from_matrix(m).unwrap()
}

fn entries(d: usize) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), d * d)
}

fn unit_vector() -> impl Strategy<Value = [f64; 3]> {
    (0.0..std::f64::consts::PI, 0.0..2.0 * std::f64::consts::PI).prop_map(|(theta, phi)| {
        [theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]
    })
}

fn polynomial(spheres: u8) -> impl Strategy<Value = SpherePolynomial> {
    let vars = 3 * spheres as usize;
    prop::collection::vec((prop::collection::vec(0u16..=3, vars), -1.0..1.0f64), 1..6).prop_map(
        move |terms| {
            let terms = terms.into_iter().map(|(exps, c)| {
                let mut m: Monomial = [0; 6];
                // Cap the total degree at 3 by trimming exponents in order.
                let mut budget = 3u16;
                for (slot, e) in m.iter_mut().zip(exps) {
                    *slot = e.min(budget);
                    budget -= *slot;
                }
                (m, c)
            });
            SpherePolynomial::from_terms(spheres, terms).unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn probability_is_conserved(b in prop::collection::vec(0.05..10.0f64, 0..80)) {
        let times = uniform_grid(0.0, 20.0, 201).unwrap();
        let w = evolve_wavefunction(&b, &times).unwrap();
        prop_assert!(w.max_probability_error() <= 1e-8);
        prop_assert_eq!(w.amplitudes[0][0], 1.0);
        prop_assert!(w.amplitudes[0][1..].iter().all(|p| *p == 0.0));
    }

    #[test]
    fn chain_parity_under_time_reversal(b in prop::collection::vec(0.05..5.0f64, 1..30), t in 0.0..5.0f64) {
        let w = evolve_wavefunction(&b, &[t, -t]).unwrap();
        for (n, (fwd, back)) in w.amplitudes[0].iter().zip(&w.amplitudes[1]).enumerate() {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((fwd - sign * back).abs() <= 1e-10);
        }
    }

    #[test]
    fn jacobi_identity_one_sphere(f in polynomial(1), g in polynomial(1), h in polynomial(1)) {
        jacobi(&f, &g, &h)?;
    }

    #[test]
    fn jacobi_identity_two_spheres(f in polynomial(2), g in polynomial(2), h in polynomial(2)) {
        jacobi(&f, &g, &h)?;
    }

    #[test]
    fn bracket_is_antisymmetric_and_leibniz(f in polynomial(1), g in polynomial(1), h in polynomial(1)) {
        let fg = poisson_bracket(&f, &g).unwrap();
        let gf = poisson_bracket(&g, &f).unwrap();
        prop_assert!(fg.try_add(&gf).unwrap().max_abs_coeff() <= 1e-12);
        let lhs = poisson_bracket(&f, &g.try_mul(&h).unwrap()).unwrap();
        let rhs = fg.try_mul(&h).unwrap().try_add(&g.try_mul(&poisson_bracket(&f, &h).unwrap()).unwrap()).unwrap();
        prop_assert!(lhs.add_scaled(&rhs, -1.0).unwrap().max_abs_coeff() <= 1e-12);
    }

    #[test]
    fn lmg_flow_conserves_energy_and_sphere(s0 in unit_vector(), j in -3.0..3.0f64) {
        let traj = integrate_lmg(s0, j, 100.0, 101).unwrap();
        let e0 = lmg_energy(&s0, j);
        for s in &traj.states {
            prop_assert!((lmg_energy(s, j) - e0).abs() <= 1e-9);
            prop_assert!((s[0] * s[0] + s[1] * s[1] + s[2] * s[2] - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn fp_flow_conserves_energy_and_spheres(a in unit_vector(), b in unit_vector(), c in -1.0..1.0f64) {
        let s0 = [a[0], a[1], a[2], b[0], b[1], b[2]];
        let traj = integrate_fp(s0, c, 100.0, 101).unwrap();
        let e0 = fp_energy(&s0, c);
        for s in &traj.states {
            prop_assert!((fp_energy(s, c) - e0).abs() <= 1e-9);
            for k in [0, 3] {
                prop_assert!((s[k] * s[k] + s[k + 1] * s[k + 1] + s[k + 2] * s[k + 2] - 1.0).abs() <= 1e-9);
            }
        }
    }
}

fn jacobi(f: &SpherePolynomial, g: &SpherePolynomial, h: &SpherePolynomial) -> Result<(), TestCaseError> {
    let pb = |a: &SpherePolynomial, b: &SpherePolynomial| poisson_bracket(a, b).unwrap();
    let sum = pb(f, &pb(g, h))
        .try_add(&pb(g, &pb(h, f)))
        .unwrap()
        .try_add(&pb(h, &pb(f, g)))
        .unwrap();
    prop_assert!(sum.max_abs_coeff() <= 1e-12, "Jacobi residual {}", sum.max_abs_coeff());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn inner_product_is_positive_definite(d in 1usize..6, e in entries(6)) {
        let a = operator(d, &e, false);
        prop_assume!(a.max_abs() > 0.0);
        prop_assert!(hs_inner(&a, &a).unwrap().re > 0.0);
    }

    #[test]
    fn liouvillian_adjoint_relations(d in 1usize..6, eh in entries(6), ea in entries(6), eb in entries(6)) {
        // [H, .] is self-adjoint for Hermitian H, so i[H, .] is anti-self-adjoint.
        let h = operator(d, &eh, true);
        let a = operator(d, &ea, false);
        let b = operator(d, &eb, false);
        let i = Complex64::new(0.0, 1.0);
        let la = commutator(&h, &a).unwrap();
        let lb = commutator(&h, &b).unwrap();
        let lhs = hs_inner(&la, &b).unwrap();
        let rhs = hs_inner(&a, &lb).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12);
        let lhs = hs_inner(&la.scale_complex(i), &b).unwrap();
        let rhs = hs_inner(&a, &lb.scale_complex(i)).unwrap();
        prop_assert!((lhs + rhs).norm() <= 1e-12);
    }

    #[test]
    fn krylov_basis_is_orthonormal(twice in 1u32..=12, j in -3.0..3.0f64, x_seed in any::<bool>()) {
        let m = build_lmg(Spin::from_twice(twice).unwrap(), j).unwrap();
        let seed = if x_seed { &m.spins.x_hat } else { &m.spins.z_hat };
        let opts = LanczosOptions { store_basis: true, ..Default::default() };
        let inner = InnerProductSpec::InfiniteTemperature;
        let out = lanczos(&m.h_tilde, seed, &inner, &opts).unwrap();
        let d = m.h.dim();
        prop_assert!(out.krylov_dim >= 1 && out.krylov_dim <= d * d - d + 1);
        check_orthonormal(out.basis.as_ref().unwrap(), &inner)?;
    }

    #[test]
    fn microcanonical_basis_is_orthonormal(twice in 8u32..=24, level in 0.0..1.0f64) {
        let m = build_lmg(Spin::from_twice(twice).unwrap(), 2.0).unwrap();
        let spectrum = Arc::new(eigendecompose(&m.h).unwrap());
        let e = spectrum.eigenvalues[(level * m.h.dim() as f64) as usize];
        let inner = microcanonical_inner_spec(spectrum.clone(), e, 0.2).unwrap();
        let frame = LiouvillianFrame::from_spectrum(spectrum, m.spins.spin.value());
        let opts = LanczosOptions { store_basis: true, max_n: 200, ..Default::default() };
        let out = lanczos_in_frame(&frame, &m.spins.z_hat, &inner, &opts).unwrap();
        check_orthonormal(out.basis.as_ref().unwrap(), &inner)?;
    }

    #[test]
    fn seed_scale_does_not_change_b(twice in 1u32..=16, c in prop_oneof![-50.0..-0.01f64, 0.01..50.0f64]) {
        let m = build_lmg(Spin::from_twice(twice).unwrap(), 2.0).unwrap();
        let inner = InnerProductSpec::InfiniteTemperature;
        let opts = LanczosOptions::default();
        let base = lanczos(&m.h_tilde, &m.spins.z_hat, &inner, &opts).unwrap();
        let scaled = lanczos(&m.h_tilde, &m.spins.z_hat.scale(c), &inner, &opts).unwrap();
        prop_assert_eq!(base.b.len(), scaled.b.len());
        for (x, y) in base.b.iter().zip(&scaled.b) {
            // Normalizing c*O rounds differently from O; near-breakdown b_n amplify that.
            prop_assert!((x - y).abs() <= 1e-10 * x.max(1.0), "{x} vs {y}");
        }
        let exact = lanczos(&m.h_tilde, &m.spins.z_hat.scale(-0.25), &inner, &opts).unwrap();
        prop_assert!(base.b.iter().zip(&exact.b).all(|(x, y)| x.to_bits() == y.to_bits()));
    }
}

fn check_orthonormal(basis: &[DenseOperator], inner: &InnerProductSpec) -> Result<(), TestCaseError> {
    for (i, a) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate().skip(i) {
            let g = inner.inner(a, b).unwrap();
            let want = if i == j { 1.0 } else { 0.0 };
            prop_assert!((g - want).norm() <= 1e-10, "({i}|{j}) = {g}");
        }
    }
    Ok(())
}

#[test]
fn lanczos_is_deterministic() {
    let m = build_lmg(Spin::new(10.0).unwrap(), 2.0).unwrap();
    let run = || {
        lanczos(&m.h_tilde, &m.spins.z_hat, &InnerProductSpec::InfiniteTemperature, &LanczosOptions::default())
            .unwrap()
            .b
    };
    let first = run();
    let second = run();
    assert!(first.iter().zip(&second).all(|(a, b)| a.to_bits() == b.to_bits()));
}

#[test]
fn chain_and_direct_autocorrelation_agree() {
    for s in [5.0, 12.0] {
        let m = build_lmg(Spin::new(s).unwrap(), 2.0).unwrap();
        let frame = LiouvillianFrame::new(&m.h_tilde).unwrap();
        let inner = InnerProductSpec::InfiniteTemperature;
        let out = lanczos_in_frame(&frame, &m.spins.z_hat, &inner, &LanczosOptions::default()).unwrap();
        let times = uniform_grid(0.0, 20.0, 401).unwrap();
        let w = evolve_wavefunction(&out.b, &times).unwrap();
        assert!(w.max_probability_error() <= 1e-8);
        let direct = autocorrelation_direct(&frame, &m.spins.z_hat, &inner, &times).unwrap();
        for (c, row) in direct.iter().zip(&w.amplitudes) {
            assert!((c.re - row[0]).abs() <= 1e-6 && c.im.abs() <= 1e-6);
        }
    }
}

#[test]
fn microcanonical_chain_matches_direct_autocorrelation() {
    let m = build_lmg(Spin::new(10.0).unwrap(), 2.0).unwrap();
    let spectrum = Arc::new(eigendecompose(&m.h).unwrap());
    let frame = LiouvillianFrame::from_spectrum(spectrum.clone(), 10.0);
    let times = uniform_grid(0.0, 20.0, 201).unwrap();
    for e in [0.0, 1.0] {
        let inner = microcanonical_inner_spec(spectrum.clone(), e, 0.1).unwrap();
        let out = lanczos_in_frame(&frame, &m.spins.z_hat, &inner, &LanczosOptions::default()).unwrap();
        assert!(out.a.iter().any(|a| a.abs() > 1e-3));
        let chain = evolve_chain(&out.a, &out.b, &times).unwrap();
        assert!(chain.max_probability_error() <= 1e-8);
        let direct = autocorrelation_direct(&frame, &m.spins.z_hat, &inner, &times).unwrap();
        for (x, y) in chain.autocorrelation().iter().zip(&direct) {
            assert!((x - y).norm() <= 1e-6, "{x} vs {y}");
        }
    }
}
