//! Unitary action of the Poincaré group on the sector.
//!
//! Conventions follow the operator transformation rules: conjugation of a
//! creation operator by T(a) = e^{−iP·a} produces the phase e^{−ip·a}, and
//! V(Λ) relabels the atom p ↦ Λp. In Kronecker atom normalization the
//! Lorentz action is a pure relabeling unitary (the √(E/E) factor belongs
//! to the continuum measure). Finite-time evolution is the a⁰ = −(t−t₀)
//! time translation, e^{−iH(t−t₀)} ρ e^{iH(t−t₀)}, and the time-dependent
//! representation is U_t(g) = e^{−iHt} U₀(g) e^{iHt} with U₀ = T(a)V(Λ).

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::fock::{AtomBasis, DensityOperator, FockError};
use crate::minkowski::{contract, FourVector, LorentzTransform};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RepError {
    #[error(transparent)]
    Fock(#[from] FockError),
    #[error("bases cannot be aligned: atom {index} has no partner")]
    Unalignable { index: usize },
}

/// Group element (Λ, a) with composition (Λ′,a′)(Λ,a) = (Λ′Λ, a′ + Λ′a).
#[derive(Clone, Copy, Debug)]
pub struct PoincareElement {
    pub lambda: LorentzTransform,
    pub translation: FourVector,
}

impl PoincareElement {
    pub fn identity() -> Self {
        Self {
            lambda: LorentzTransform::identity(),
            translation: FourVector::zero(),
        }
    }

    pub fn translation(a: FourVector) -> Self {
        Self {
            lambda: LorentzTransform::identity(),
            translation: a,
        }
    }

    pub fn lorentz(lambda: LorentzTransform) -> Self {
        Self {
            lambda,
            translation: FourVector::zero(),
        }
    }

    pub fn compose(&self, rhs: &PoincareElement) -> PoincareElement {
        PoincareElement {
            lambda: self.lambda.compose(&rhs.lambda),
            translation: self.translation + self.lambda.apply(&rhs.translation),
        }
    }
}

fn conjugate_by_phases(rho: &DensityOperator, phases: &[Complex64]) -> DensityOperator {
    let dim = rho.dim();
    debug_assert_eq!(phases.len(), dim);
    let mut m = DMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            m[(r, c)] = phases[r] * rho.matrix()[(r, c)] * phases[c].conj();
        }
    }
    DensityOperator::from_matrix_unchecked(m)
}

/// T(a)ρT†(a): the atom i acquires the phase e^{−i pᵢ·a}, the vacuum is
/// invariant, diagonal entries are untouched.
pub fn act_translation(
    a: &FourVector,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> DensityOperator {
    let mut phases = Vec::with_capacity(basis.dim());
    phases.push(Complex64::new(1.0, 0.0));
    for atom in basis.atoms() {
        let phi = -contract(&atom.four_vector(), a);
        phases.push(Complex64::from_polar(1.0, phi));
    }
    conjugate_by_phases(rho, &phases)
}

/// e^{−iH(t−t₀)} ρ e^{iH(t−t₀)} with H = diag(0, E₁, …, E_M).
pub fn time_evolve(t: f64, t0: f64, basis: &AtomBasis, rho: &DensityOperator) -> DensityOperator {
    let dt = t - t0;
    let mut phases = Vec::with_capacity(basis.dim());
    phases.push(Complex64::new(1.0, 0.0));
    for atom in basis.atoms() {
        phases.push(Complex64::from_polar(1.0, -atom.energy() * dt));
    }
    conjugate_by_phases(rho, &phases)
}

/// How V(Λ) acts on a basis: either every boosted atom lands back in the
/// original basis (a permutation) or the output lives on the boosted basis.
pub enum LorentzRelabel {
    /// π with Λpᵢ = p_{π(i)}.
    Permutation(Vec<usize>),
    Boosted(AtomBasis),
}

pub fn lorentz_relabel(lambda: &LorentzTransform, basis: &AtomBasis) -> LorentzRelabel {
    let boosted: Vec<_> = basis.atoms().iter().map(|p| p.boosted(lambda)).collect();
    let perm: Option<Vec<usize>> = boosted.iter().map(|q| basis.index_of(q)).collect();
    match perm {
        Some(p) => LorentzRelabel::Permutation(p),
        None => LorentzRelabel::Boosted(
            AtomBasis::from_atoms(boosted).expect("Lorentz maps preserve atom distinctness"),
        ),
    }
}

/// V(Λ)ρV†(Λ). Returns the basis carrying the output: the original one
/// when the boosted atoms permute it, otherwise the boosted basis with ρ's
/// entries relabeled onto it unchanged.
pub fn act_lorentz(
    lambda: &LorentzTransform,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> (AtomBasis, DensityOperator) {
    match lorentz_relabel(lambda, basis) {
        LorentzRelabel::Boosted(new_basis) => (new_basis, rho.clone()),
        LorentzRelabel::Permutation(perm) => {
            let dim = basis.dim();
            let mut m = DMatrix::zeros(dim, dim);
            // sector index map: vacuum fixed, atom i -> π(i)
            let map = |idx: usize| if idx == 0 { 0 } else { 1 + perm[idx - 1] };
            for r in 0..dim {
                for c in 0..dim {
                    m[(map(r), map(c))] = rho.matrix()[(r, c)];
                }
            }
            (basis.clone(), DensityOperator::from_matrix_unchecked(m))
        }
    }
}

/// Sector matrix of V(Λ) under the overlap convention
/// ⟨pᵢ|Λpⱼ⟩ = [pᵢ and Λpⱼ are the same atom]: the vacuum maps to itself
/// and the (i, j) particle entry is 1 exactly when Λpⱼ lands on pᵢ. For a
/// basis closed under Λ this is the permutation unitary; otherwise it is a
/// partial isometry that drops the amplitudes leaving the model.
pub fn overlap_matrix(lambda: &LorentzTransform, basis: &AtomBasis) -> DMatrix<Complex64> {
    let dim = basis.dim();
    let mut v = DMatrix::zeros(dim, dim);
    v[(0, 0)] = Complex64::new(1.0, 0.0);
    for (j, atom) in basis.atoms().iter().enumerate() {
        if let Some(i) = basis.index_of(&atom.boosted(lambda)) {
            v[(1 + i, 1 + j)] = Complex64::new(1.0, 0.0);
        }
    }
    v
}

/// U₀(g)ρU₀†(g) with U₀(Λ, a) = T(a)V(Λ).
pub fn act_poincare(
    g: &PoincareElement,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> (AtomBasis, DensityOperator) {
    let (basis, rho) = act_lorentz(&g.lambda, basis, rho);
    let rho = act_translation(&g.translation, &basis, &rho);
    (basis, rho)
}

/// U_t(g)ρU_t†(g) = e^{−iHt} U₀(g) e^{iHt} ρ e^{−iHt} U₀†(g) e^{iHt}.
pub fn u_t(
    g: &PoincareElement,
    t: f64,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> (AtomBasis, DensityOperator) {
    let rewound = time_evolve(-t, 0.0, basis, rho);
    let (basis, rho) = act_poincare(g, basis, &rewound);
    let evolved = time_evolve(t, 0.0, &basis, &rho);
    (basis, evolved)
}

/// Matches the atoms of `a` onto those of `b` under the momentum tolerance
/// and returns the max entrywise difference of the two operators under that
/// relabeling.
pub fn align_residual(
    basis_a: &AtomBasis,
    rho_a: &DensityOperator,
    basis_b: &AtomBasis,
    rho_b: &DensityOperator,
) -> Result<f64, RepError> {
    if basis_a.len() != basis_b.len() {
        return Err(RepError::Unalignable {
            index: basis_b.len(),
        });
    }
    let mut map = Vec::with_capacity(basis_a.len());
    for (i, atom) in basis_a.atoms().iter().enumerate() {
        match basis_b.index_of(atom) {
            Some(j) => map.push(j),
            None => return Err(RepError::Unalignable { index: i }),
        }
    }
    let sector = |idx: usize| if idx == 0 { 0 } else { 1 + map[idx - 1] };
    let mut worst: f64 = 0.0;
    for r in 0..rho_a.dim() {
        for c in 0..rho_a.dim() {
            let diff = (rho_a.matrix()[(r, c)] - rho_b.matrix()[(sector(r), sector(c))]).norm();
            worst = worst.max(diff);
        }
    }
    Ok(worst)
}
