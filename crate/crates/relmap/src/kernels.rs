//! Lorentz-invariant positive-semidefinite kernels δ(p, q) on one mass
//! shell.
//!
//! Both built-in families depend on (p, q) only through the unique
//! two-point scalar s(p, q) = −(p·q)/m², which satisfies s ≥ 1 with
//! equality iff p = q, so invariance is manifest and the diagonal value is
//! the momentum-independent constant δ₀. Positivity is validated
//! empirically as Gram-matrix PSD on the working atom set: the kernels
//! here are stand-ins for the representation-theoretic kernel whose two
//! defining properties they reproduce.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fock::AtomBasis;
use crate::minkowski::{contract, LorentzTransform, MassShellMomentum};

pub const GRAM_PSD_FLOOR: f64 = -1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("momenta live on different shells: masses {0} and {1}")]
    MassMismatch(f64, f64),
    #[error("decay rate must be nonnegative, got {0}")]
    NegativeRate(f64),
    #[error("diagonal value must be nonnegative, got {0}")]
    NegativeDiagonal(f64),
}

/// Kernel shape without the diagonal scale; δ₀ is supplied by whoever
/// binds the kernel (the channel derives it from its completeness
/// condition).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum KernelFamily {
    Constant,
    ExponentialInS { lambda: f64 },
}

/// An invariant kernel bound to a diagonal value δ₀ ≥ 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantKernel {
    family: KernelFamily,
    delta0: f64,
}

/// s(p, q) = −(p·q)/m² ≥ 1, the two-point invariant of the shell.
pub fn shell_invariant(p: &MassShellMomentum, q: &MassShellMomentum) -> Result<f64, KernelError> {
    if (p.mass() - q.mass()).abs() > 0.0 {
        return Err(KernelError::MassMismatch(p.mass(), q.mass()));
    }
    let m2 = p.mass() * p.mass();
    Ok(-contract(&p.four_vector(), &q.four_vector()) / m2)
}

impl InvariantKernel {
    pub fn new(family: KernelFamily, delta0: f64) -> Result<Self, KernelError> {
        if delta0 < 0.0 {
            return Err(KernelError::NegativeDiagonal(delta0));
        }
        if let KernelFamily::ExponentialInS { lambda } = family {
            if lambda < 0.0 {
                return Err(KernelError::NegativeRate(lambda));
            }
        }
        Ok(Self { family, delta0 })
    }

    pub fn constant(delta0: f64) -> Result<Self, KernelError> {
        Self::new(KernelFamily::Constant, delta0)
    }

    /// Skips the sign checks; exists so tests can drive invalid diagonals
    /// through downstream negative witnesses.
    pub fn unchecked(family: KernelFamily, delta0: f64) -> Self {
        Self { family, delta0 }
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    pub fn eval(&self, p: &MassShellMomentum, q: &MassShellMomentum) -> Result<f64, KernelError> {
        let s = shell_invariant(p, q)?;
        Ok(match self.family {
            KernelFamily::Constant => self.delta0,
            KernelFamily::ExponentialInS { lambda } => self.delta0 * (-lambda * (s - 1.0)).exp(),
        })
    }

    /// Gram matrix Δᵢⱼ = δ(pᵢ, pⱼ) on the basis atoms.
    pub fn gram(&self, basis: &AtomBasis) -> DMatrix<f64> {
        let m = basis.len();
        DMatrix::from_fn(m, m, |i, j| {
            self.eval(basis.atom(i), basis.atom(j))
                .expect("one shared shell")
        })
    }
}

/// PSD verdict for a symmetric Gram matrix.
#[derive(Clone, Debug)]
pub struct PsdReport {
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    pub pass: bool,
}

/// Eigenvalue check of an explicit symmetric Gram matrix. Validation is
/// empirical by design: a kernel instance failing on some atom set is
/// rejected for that set.
pub fn validate_psd_gram(gram: &DMatrix<f64>) -> PsdReport {
    let sym = (gram + gram.transpose()) * 0.5;
    let mut eigenvalues: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let min_eigenvalue = eigenvalues.first().copied().unwrap_or(0.0);
    PsdReport {
        eigenvalues,
        min_eigenvalue,
        pass: min_eigenvalue >= GRAM_PSD_FLOOR,
    }
}

pub fn validate_psd(kernel: &InvariantKernel, basis: &AtomBasis) -> PsdReport {
    validate_psd_gram(&kernel.gram(basis))
}

/// Max |k(Λp, Λq) − k(p, q)| over the supplied transforms and pairs.
/// Generic over the evaluator so that deliberately frame-dependent
/// functions can be probed as negative witnesses.
pub fn validate_invariance<F>(
    eval: F,
    transforms: &[LorentzTransform],
    pairs: &[(MassShellMomentum, MassShellMomentum)],
) -> f64
where
    F: Fn(&MassShellMomentum, &MassShellMomentum) -> f64,
{
    let mut worst: f64 = 0.0;
    for lambda in transforms {
        for (p, q) in pairs {
            let direct = eval(p, q);
            let mapped = eval(&p.boosted(lambda), &q.boosted(lambda));
            worst = worst.max((mapped - direct).abs());
        }
    }
    worst
}
