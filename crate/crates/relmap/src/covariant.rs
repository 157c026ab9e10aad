//! Foliation-covariant formulation of the dynamics.
//!
//! A foliation is a family of Cauchy surfaces with unit timelike normal n
//! and evolution parameter τ(x) = −n·(x − x₀), invariant under
//! simultaneous Poincaré transformation of x, n and x₀. Evolution along
//! the foliation is generated by Θ = −n·P, diagonal on atoms with
//! eigenvalue −n·pᵢ, and the channel rewritten with the invariant measure
//! dμ(p) and covariantly normalized ladder operators Â(p) ↔ √(E_p) â(p)
//! acts identically to the special-frame channel once the normalization
//! round trip is taken; with n = (1,0,0,0) everything reduces to the
//! frame-fixed operations.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::channel::{ChannelError, ChannelParams};
use crate::fock::{AtomBasis, DensityOperator, SectorState};
use crate::minkowski::{contract, FourVector};
use crate::rep::{act_poincare, align_residual, PoincareElement, RepError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CovariantError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Alignment(#[from] RepError),
}

/// A flat foliation: unit timelike future-pointing normal plus an origin
/// offset.
#[derive(Clone, Copy, Debug)]
pub struct Foliation {
    pub normal: FourVector,
    pub origin: FourVector,
}

impl Foliation {
    pub fn new(normal: FourVector, origin: FourVector) -> Result<Self, AlgebraError> {
        let norm_sq = contract(&normal, &normal);
        if (norm_sq + 1.0).abs() > 1e-9 {
            return Err(AlgebraError::NotUnitTimelike { norm_sq });
        }
        if normal.t <= 0.0 {
            return Err(AlgebraError::NotFuturePointing { n0: normal.t });
        }
        Ok(Self { normal, origin })
    }

    /// The special frame of the frame-fixed sections: n = (1,0,0,0), x₀ = 0.
    pub fn special_frame() -> Self {
        Self {
            normal: FourVector::new(1.0, 0.0, 0.0, 0.0),
            origin: FourVector::zero(),
        }
    }

    /// τ(x) = −n·(x − x₀).
    pub fn tau_of(&self, x: &FourVector) -> f64 {
        -contract(&self.normal, &(*x - self.origin))
    }

    /// Θ eigenvalue −n·p on one atom; positive for future-pointing n.
    pub fn theta_eigenvalue(&self, atom: &crate::minkowski::MassShellMomentum) -> f64 {
        -contract(&self.normal, &atom.four_vector())
    }
}

/// e^{−iΘ(τ−τ₀)} ρ e^{iΘ(τ−τ₀)} with Θ = −n·P̂.
pub fn evolve_cov(
    foliation: &Foliation,
    tau: f64,
    tau0: f64,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> DensityOperator {
    let dtau = tau - tau0;
    let dim = basis.dim();
    let mut phases = Vec::with_capacity(dim);
    phases.push(Complex64::new(1.0, 0.0));
    for atom in basis.atoms() {
        phases.push(Complex64::from_polar(
            1.0,
            -foliation.theta_eigenvalue(atom) * dtau,
        ));
    }
    let mut m = DMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            m[(r, c)] = phases[r] * rho.matrix()[(r, c)] * phases[c].conj();
        }
    }
    DensityOperator::from_matrix_unchecked(m)
}

/// Amplitudes in covariant normalization, Ψ_cov(pᵢ) = Ψ(pᵢ)/√(Eᵢ), so
/// that Â†(p)|0⟩ = √(E_p) |p⟩ carries unit covariant amplitude.
#[derive(Clone, Debug, PartialEq)]
pub struct CovariantAmplitudes {
    pub vacuum: Complex64,
    pub particle: Vec<Complex64>,
}

pub fn to_covariant(state: &SectorState, basis: &AtomBasis) -> CovariantAmplitudes {
    CovariantAmplitudes {
        vacuum: state.vacuum,
        particle: state
            .particle
            .iter()
            .zip(basis.energies())
            .map(|(a, e)| a / Complex64::from(e.sqrt()))
            .collect(),
    }
}

pub fn from_covariant(amps: &CovariantAmplitudes, basis: &AtomBasis) -> SectorState {
    SectorState {
        vacuum: amps.vacuum,
        particle: amps
            .particle
            .iter()
            .zip(basis.energies())
            .map(|(a, e)| a * Complex64::from(e.sqrt()))
            .collect(),
    }
}

fn density_to_covariant(rho: &DensityOperator, basis: &AtomBasis) -> DMatrix<Complex64> {
    let dim = basis.dim();
    let scale: Vec<f64> = std::iter::once(1.0)
        .chain(basis.energies().iter().map(|e| e.sqrt()))
        .collect();
    DMatrix::from_fn(dim, dim, |r, c| {
        rho.matrix()[(r, c)] / Complex64::from(scale[r] * scale[c])
    })
}

fn density_from_covariant(m: &DMatrix<Complex64>, basis: &AtomBasis) -> DensityOperator {
    let dim = basis.dim();
    let scale: Vec<f64> = std::iter::once(1.0)
        .chain(basis.energies().iter().map(|e| e.sqrt()))
        .collect();
    DensityOperator::from_matrix_unchecked(DMatrix::from_fn(dim, dim, |r, c| {
        m[(r, c)] * Complex64::from(scale[r] * scale[c])
    }))
}

/// The channel written with the invariant measure: atomized,
///
/// ```text
/// E[ρ] = β Σᵢ wᵢ Âᵢ ρ Âᵢ† + (I + γ N̂) ρ (I + γ N̂)†
///        + Σᵢⱼ wᵢ wⱼ δ(pᵢ,pⱼ) Âᵢ†Âᵢ ρ Âⱼ†Âⱼ
/// ```
///
/// with measure weights wᵢ = 1/Eᵢ, ladder matrices Âᵢ = Eᵢ |0⟩⟨pᵢ| in the
/// covariant basis and N̂ = Σᵢ wᵢ Âᵢ†Âᵢ. All the E factors cancel against
/// the normalization round trip, so the action coincides with the
/// special-frame channel; keeping the factors explicit is what makes that
/// agreement a checkable statement rather than a definition.
pub fn apply_e_cov(
    params: &ChannelParams,
    _foliation: &Foliation,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> Result<DensityOperator, ChannelError> {
    if rho.dim() != basis.dim() {
        return Err(ChannelError::DimensionMismatch {
            got: rho.dim(),
            expected: basis.dim(),
        });
    }
    let dim = basis.dim();
    let energies = basis.energies();
    let rho_cov = density_to_covariant(rho, basis);

    let mut out = DMatrix::<Complex64>::zeros(dim, dim);

    // decay: β Σᵢ wᵢ Âᵢ ρ Âᵢ† — Âᵢ ρ Âᵢ† lands on the vacuum entry with
    // weight Eᵢ² ρᵢᵢ, and wᵢ = 1/Eᵢ leaves Eᵢ ρᵢᵢ
    let mut vac = Complex64::default();
    for i in 0..dim - 1 {
        let e = energies[i];
        vac += Complex64::from((1.0 / e) * e * e) * rho_cov[(1 + i, 1 + i)];
    }
    out[(0, 0)] += Complex64::from(params.beta) * vac;

    // N̂ = Σᵢ wᵢ Âᵢ†Âᵢ: with [Âᵢ, Âⱼ†] = Eᵢ δᵢⱼ each bilinear scales the
    // i-th covariant amplitude by Eᵢ, so the matrix is diag(0, wᵢ Eᵢ) = N
    let g = Complex64::new(1.0, 0.0) + params.gamma;
    for r in 0..dim {
        for c in 0..dim {
            let lhs = if r == 0 { Complex64::new(1.0, 0.0) } else { g };
            let rhs = if c == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                g.conj()
            };
            out[(r, c)] += lhs * rho_cov[(r, c)] * rhs;
        }
    }

    // kernel: wᵢ wⱼ δ(pᵢ,pⱼ) (Âᵢ†Âᵢ) ρ (Âⱼ†Âⱼ) — the ladder bilinears act
    // on covariant entries with weight Eᵢ Eⱼ, cancelling the measure
    for r in 1..dim {
        for c in 1..dim {
            let (ei, ej) = (energies[r - 1], energies[c - 1]);
            let w = params.kernel().eval(basis.atom(r - 1), basis.atom(c - 1))?;
            let weight = (1.0 / ei) * (1.0 / ej) * ei * ej * w;
            out[(r, c)] += Complex64::from(weight) * rho_cov[(r, c)];
        }
    }

    Ok(density_from_covariant(&out, basis))
}

/// Φ_{τ,τ₀} = U_{τ,τ₀} ∘ E in the foliation, with the channel parameters
/// re-indexed by (τ, τ₀).
pub fn apply_phi_cov(
    params: &ChannelParams,
    foliation: &Foliation,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> Result<DensityOperator, ChannelError> {
    let e = apply_e_cov(params, foliation, basis, rho)?;
    Ok(evolve_cov(foliation, params.t, params.t0, basis, &e))
}

/// Report of the Û_τ(g) = e^{−iΘτ} Û₀(g) e^{iΘτ} consistency checks.
#[derive(Clone, Debug)]
pub struct GeneratorCheckReport {
    /// Group law of the conjugated representation at fixed τ.
    pub group_law_residual: f64,
    /// Pure translations commute with Θ-evolution.
    pub translation_residual: f64,
    /// Splitting the Θ conjugation, Û_τ = e^{−iΘτ₁}Û_{τ₂}e^{iΘτ₁}.
    pub splitting_residual: f64,
    pub max_residual: f64,
}

/// Action of Û_τ(g) = e^{−iΘτ} Û₀(g) e^{iΘτ} on a density operator.
pub fn u_tau(
    g: &PoincareElement,
    tau: f64,
    foliation: &Foliation,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> (AtomBasis, DensityOperator) {
    let rewound = evolve_cov(foliation, -tau, 0.0, basis, rho);
    let (basis2, moved) = act_poincare(g, basis, &rewound);
    let evolved = evolve_cov(foliation, tau, 0.0, &basis2, &moved);
    (basis2, evolved)
}

/// Verifies the τ-conjugated representation on random group elements and
/// states.
pub fn covariant_generator_check(
    foliation: &Foliation,
    basis: &AtomBasis,
    samples: usize,
    seed: u64,
) -> Result<GeneratorCheckReport, CovariantError> {
    let mut sampler = crate::sampling::Sampler::seed_from(seed);
    let mut group_law_residual: f64 = 0.0;
    let mut translation_residual: f64 = 0.0;
    let mut splitting_residual: f64 = 0.0;

    for _ in 0..samples {
        let rho = sampler.density(basis.dim());
        let tau = sampler.uniform(-1.5, 1.5);
        let g1 = PoincareElement {
            lambda: sampler.lorentz(),
            translation: sampler.four_vector(1.0),
        };
        let g2 = PoincareElement {
            lambda: sampler.lorentz(),
            translation: sampler.four_vector(1.0),
        };

        // group law at fixed τ
        let (b_step, r_step) = u_tau(&g1, tau, foliation, basis, &rho);
        let (b_step, r_step) = u_tau(&g2, tau, foliation, &b_step, &r_step);
        let (b_comp, r_comp) = u_tau(&g2.compose(&g1), tau, foliation, basis, &rho);
        group_law_residual =
            group_law_residual.max(align_residual(&b_step, &r_step, &b_comp, &r_comp)?);

        // translations commute with Θ-evolution
        let a = PoincareElement::translation(sampler.four_vector(1.5));
        let (b_t, r_t) = u_tau(&a, tau, foliation, basis, &rho);
        let (b_0, r_0) = act_poincare(&a, basis, &rho);
        translation_residual = translation_residual.max(align_residual(&b_t, &r_t, &b_0, &r_0)?);

        // splitting the conjugation
        let (tau1, tau2) = (0.4 * tau, 0.6 * tau);
        let inner = evolve_cov(foliation, -tau1, 0.0, basis, &rho);
        let (b_in, r_in) = u_tau(&g1, tau2, foliation, basis, &inner);
        let r_in = evolve_cov(foliation, tau1, 0.0, &b_in, &r_in);
        let (b_direct, r_direct) = u_tau(&g1, tau, foliation, basis, &rho);
        splitting_residual =
            splitting_residual.max(align_residual(&b_in, &r_in, &b_direct, &r_direct)?);
    }

    let max_residual = group_law_residual
        .max(translation_residual)
        .max(splitting_residual);
    Ok(GeneratorCheckReport {
        group_law_residual,
        translation_residual,
        splitting_residual,
        max_residual,
    })
}
