//! Classical large-spin limit: trajectories on the sphere, fixed points,
//! the microcanonical growth rate `alpha(E)` and Poisson-bracket Lanczos.

mod alpha;
mod dynamics;
mod elliptic;
mod lanczos;
mod poly;
mod saddles;

pub use alpha::{
    alpha_curve, alpha_of_e, energy_domain, fp_lower_bound_alpha, fp_saddle_exponent, golden_max,
    sigma_star, sup_alpha, AlphaSample, MicrocanonicalAlphaCurve, EDGE_MARGIN,
};
pub use dynamics::{
    dopri5, fp_energy, fp_rhs, integrate_fp, integrate_lmg, lmg_energy, lmg_rhs, ClassicalState,
    IntegratorOptions, Trajectory,
};
pub use elliptic::elliptic_k;
pub use lanczos::{classical_lanczos, ClassicalLanczosOptions, DEFAULT_DEGREE_CAP};
pub use poly::{
    fp_hamiltonian, lmg_hamiltonian, monomial_average, poisson_bracket, sphere_average,
    sphere_inner, Monomial, SpherePolynomial,
};
pub use saddles::{
    find_saddles_fp, find_saddles_lmg, fp_jacobian, lmg_jacobian, saddle_residual,
    FixedPointFamily, SaddlePoint,
};
