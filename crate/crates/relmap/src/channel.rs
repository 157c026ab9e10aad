//! The Poincaré-invariant dynamical map on the sector and its certifying
//! machinery.
//!
//! The time-independent part acts as
//!
//! ```text
//! E[ρ] = β Σᵢ aᵢ ρ aᵢ† + (I + γN) ρ (I + γN)† + Σᵢⱼ Δᵢⱼ nᵢ ρ nⱼ
//! ```
//!
//! with Δᵢⱼ = δ(pᵢ, pⱼ) an invariant PSD kernel, and the full map is
//! Φ = U_{t,t₀} ∘ E. Completeness of the underlying Kraus family forces
//! β ≥ 0 and β + γ + γ* + |γ|² + δ₀ = 0, so the diagonal value δ₀ is
//! derived from (β, γ), never free, and the user-selected kernel family is
//! bound to that diagonal.
//!
//! Alongside the direct action the module produces the explicit Kraus set,
//! the Choi matrix as the complete-positivity witness, a two-path
//! covariance check, and the extraction of Kraus operators from a total
//! unitary with an environment (pure or mixed) via the square root of the
//! environment state.

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::fock::{hermitian_eigenvalues, AtomBasis, DensityOperator, FockError};
use crate::kernels::{validate_psd, InvariantKernel, KernelError, KernelFamily};
use crate::rep::{align_residual, time_evolve, u_t, PoincareElement, RepError};

pub const COMPLETENESS_TOL: f64 = 1e-11;
pub const KERNEL_EIGENVALUE_FLOOR: f64 = -1e-10;
pub const CHOI_PSD_FLOOR: f64 = -1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChannelError {
    #[error("decay weight must be nonnegative, got β = {beta}")]
    BetaNegative { beta: f64 },
    #[error("derived diagonal δ₀ = −(β + γ + γ* + |γ|²) = {delta0} is negative")]
    Delta0Negative { delta0: f64 },
    #[error("kernel diagonal {got} at atom {atom} does not match δ₀ = {expected}")]
    KernelDiagonalMismatch {
        atom: usize,
        got: f64,
        expected: f64,
    },
    #[error("kernel Gram matrix is not PSD on this basis: min eigenvalue {min_eigenvalue:.3e}")]
    KernelNotPsd { min_eigenvalue: f64 },
    #[error("kernel eigenvalue {eigenvalue:.3e} below the clipping floor")]
    NegativeKernelEigenvalue { eigenvalue: f64 },
    #[error("operator dimension {got} does not match sector dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("dilation input is not unitary: max |U†U − I| = {residual:.3e}")]
    NonUnitaryDilation { residual: f64 },
    #[error("total dimension {total} is not divisible by environment dimension {env}")]
    BadDilationDimensions { total: usize, env: usize },
    #[error("environment state invalid: {0}")]
    BadEnvironmentState(FockError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Validated channel parameters for one (t, t₀) pair.
#[derive(Clone, Debug)]
pub struct ChannelParams {
    pub t: f64,
    pub t0: f64,
    pub beta: f64,
    pub gamma: Complex64,
    kernel: InvariantKernel,
    delta0: f64,
}

impl ChannelParams {
    /// Derives δ₀, binds the kernel family to it and checks every
    /// completeness-side condition on the given working basis.
    pub fn validate(
        beta: f64,
        gamma: Complex64,
        family: KernelFamily,
        t: f64,
        t0: f64,
        basis: &AtomBasis,
    ) -> Result<Self, ChannelError> {
        if beta < 0.0 {
            return Err(ChannelError::BetaNegative { beta });
        }
        let delta0 = -(beta + 2.0 * gamma.re + gamma.norm_sqr());
        if delta0 < -1e-15 {
            return Err(ChannelError::Delta0Negative { delta0 });
        }
        let delta0 = delta0.max(0.0);
        let kernel = InvariantKernel::new(family, delta0)?;
        let params = Self {
            t,
            t0,
            beta,
            gamma,
            kernel,
            delta0,
        };
        params.check_kernel(basis)?;
        Ok(params)
    }

    /// Bypasses validation; used to probe negative witnesses (e.g. a Choi
    /// matrix that must come out non-PSD).
    pub fn force(beta: f64, gamma: Complex64, kernel: InvariantKernel, t: f64, t0: f64) -> Self {
        let delta0 = kernel.delta0();
        Self {
            t,
            t0,
            beta,
            gamma,
            kernel,
            delta0,
        }
    }

    pub fn identity(t: f64) -> Self {
        Self::force(
            0.0,
            Complex64::default(),
            InvariantKernel::constant(0.0).unwrap(),
            t,
            t,
        )
    }

    pub fn kernel(&self) -> &InvariantKernel {
        &self.kernel
    }

    pub fn delta0(&self) -> f64 {
        self.delta0
    }

    fn check_kernel(&self, basis: &AtomBasis) -> Result<(), ChannelError> {
        for (i, atom) in basis.atoms().iter().enumerate() {
            let got = self.kernel.eval(atom, atom)?;
            if (got - self.delta0).abs() > 1e-12 {
                return Err(ChannelError::KernelDiagonalMismatch {
                    atom: i,
                    got,
                    expected: self.delta0,
                });
            }
        }
        let report = validate_psd(&self.kernel, basis);
        if !report.pass {
            return Err(ChannelError::KernelNotPsd {
                min_eigenvalue: report.min_eigenvalue,
            });
        }
        Ok(())
    }
}

/// E applied to an arbitrary sector operator; linear, so the same routine
/// serves densities and the matrix units of the Choi construction.
fn apply_e_matrix(
    params: &ChannelParams,
    basis: &AtomBasis,
    m: &DMatrix<Complex64>,
) -> DMatrix<Complex64> {
    let d = basis.dim();
    let gamma = params.gamma;
    let mut out = DMatrix::zeros(d, d);

    // β Σᵢ aᵢ ρ aᵢ† feeds the particle diagonal into the vac–vac slot
    let mut decayed = Complex64::default();
    for i in 1..d {
        decayed += m[(i, i)];
    }
    out[(0, 0)] += Complex64::from(params.beta) * decayed;

    // (I + γN) ρ (I + γN)†
    let g = Complex64::new(1.0, 0.0) + gamma;
    for r in 0..d {
        for c in 0..d {
            let lhs = if r == 0 { Complex64::new(1.0, 0.0) } else { g };
            let rhs = if c == 0 {
                Complex64::new(1.0, 0.0)
            } else {
                g.conj()
            };
            out[(r, c)] += lhs * m[(r, c)] * rhs;
        }
    }

    // Σᵢⱼ Δᵢⱼ nᵢ ρ nⱼ is a Hadamard product on the particle block
    for r in 1..d {
        for c in 1..d {
            let w = params
                .kernel
                .eval(basis.atom(r - 1), basis.atom(c - 1))
                .expect("basis atoms share one shell");
            out[(r, c)] += Complex64::from(w) * m[(r, c)];
        }
    }
    out
}

/// E[ρ]: trace preserving, Hermiticity preserving, vacuum a fixed point.
pub fn apply_e(
    params: &ChannelParams,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> Result<DensityOperator, ChannelError> {
    if rho.dim() != basis.dim() {
        return Err(ChannelError::DimensionMismatch {
            got: rho.dim(),
            expected: basis.dim(),
        });
    }
    Ok(DensityOperator::from_matrix_unchecked(apply_e_matrix(
        params,
        basis,
        rho.matrix(),
    )))
}

/// Φ[ρ] = U_{t,t₀}[E[ρ]].
pub fn apply_phi(
    params: &ChannelParams,
    basis: &AtomBasis,
    rho: &DensityOperator,
) -> Result<DensityOperator, ChannelError> {
    let e = apply_e(params, basis, rho)?;
    Ok(time_evolve(params.t, params.t0, basis, &e))
}

/// An explicit operator-sum family.
#[derive(Clone, Debug)]
pub struct KrausSet {
    ops: Vec<DMatrix<Complex64>>,
    dim: usize,
}

impl KrausSet {
    pub fn new(ops: Vec<DMatrix<Complex64>>, dim: usize) -> Self {
        Self { ops, dim }
    }

    pub fn ops(&self) -> &[DMatrix<Complex64>] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn apply_matrix(&self, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let mut out = DMatrix::zeros(self.dim, self.dim);
        for k in &self.ops {
            out += k * m * k.adjoint();
        }
        out
    }

    pub fn apply(&self, rho: &DensityOperator) -> DensityOperator {
        DensityOperator::from_matrix_unchecked(self.apply_matrix(rho.matrix()))
    }

    /// max |Σ K†K − I|.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = DMatrix::<Complex64>::zeros(self.dim, self.dim);
        for k in &self.ops {
            sum += k.adjoint() * k;
        }
        (sum - DMatrix::<Complex64>::identity(self.dim, self.dim))
            .map(|z| z.norm())
            .max()
    }

    /// Mixes the family by a unitary matrix: K′_λ = Σ_μ U_{λμ} K_μ. The
    /// channel action is invariant under this.
    pub fn mixed_by(&self, u: &DMatrix<Complex64>) -> KrausSet {
        assert_eq!(u.nrows(), self.ops.len());
        let ops = (0..u.nrows())
            .map(|l| {
                let mut op = DMatrix::<Complex64>::zeros(self.dim, self.dim);
                for (m, k) in self.ops.iter().enumerate() {
                    op += k * u[(l, m)];
                }
                op
            })
            .collect();
        KrausSet { ops, dim: self.dim }
    }
}

/// Kraus family of E: {√β aᵢ}, (I + γN) and one operator √λ_k Σᵢ v_k(i) nᵢ
/// per kernel Gram eigenpair. Eigenvalues in [−1e−10, 0) are clipped to
/// zero; anything lower is an error.
pub fn kraus_set(params: &ChannelParams, basis: &AtomBasis) -> Result<KrausSet, ChannelError> {
    let d = basis.dim();
    let mut ops = Vec::new();

    if params.beta > 0.0 {
        let root = Complex64::from(params.beta.sqrt());
        for i in 0..basis.len() {
            ops.push(crate::fock::annihilation_matrix(d, i) * root);
        }
    }

    let mut unit = DMatrix::<Complex64>::identity(d, d);
    for i in 1..d {
        unit[(i, i)] += params.gamma;
    }
    ops.push(unit);

    let gram = params.kernel.gram(basis);
    if !basis.is_empty() {
        let eig = gram.symmetric_eigen();
        for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda < KERNEL_EIGENVALUE_FLOOR {
                return Err(ChannelError::NegativeKernelEigenvalue { eigenvalue: lambda });
            }
            if lambda <= 0.0 {
                continue;
            }
            let root = lambda.sqrt();
            let mut op = DMatrix::<Complex64>::zeros(d, d);
            for i in 0..basis.len() {
                op[(1 + i, 1 + i)] = Complex64::from(root * eig.eigenvectors[(i, k)]);
            }
            ops.push(op);
        }
    }

    Ok(KrausSet { ops, dim: d })
}

/// F_λ = e^{−iHt} E_λ e^{iHt₀}: the Schrödinger-picture family whose sum
/// reproduces Φ directly.
pub fn kraus_to_schrodinger(set: &KrausSet, basis: &AtomBasis, t: f64, t0: f64) -> KrausSet {
    let phase = |s: f64| {
        let mut d = DMatrix::<Complex64>::identity(basis.dim(), basis.dim());
        for (i, e) in basis.energies().iter().enumerate() {
            d[(1 + i, 1 + i)] = Complex64::from_polar(1.0, -e * s);
        }
        d
    };
    let left = phase(t);
    let right = phase(-t0);
    let ops = set.ops.iter().map(|k| &left * k * &right).collect();
    KrausSet { ops, dim: set.dim }
}

/// Choi matrix of E: block (i, j) holds E(|i⟩⟨j|).
#[derive(Clone, Debug)]
pub struct ChoiMatrix {
    matrix: DMatrix<Complex64>,
    dim: usize,
}

impl ChoiMatrix {
    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Ascending eigenvalues; min ≥ −1e−10 certifies complete positivity.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }

    /// max |Tr_out J − I|; zero for trace-preserving maps.
    pub fn partial_trace_residual(&self) -> f64 {
        let d = self.dim;
        let mut tr = DMatrix::<Complex64>::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut acc = Complex64::default();
                for k in 0..d {
                    acc += self.matrix[(i * d + k, j * d + k)];
                }
                tr[(i, j)] = acc;
            }
        }
        (tr - DMatrix::<Complex64>::identity(d, d))
            .map(|z| z.norm())
            .max()
    }
}

pub fn choi(params: &ChannelParams, basis: &AtomBasis) -> ChoiMatrix {
    let d = basis.dim();
    let mut j = DMatrix::<Complex64>::zeros(d * d, d * d);
    for bi in 0..d {
        for bj in 0..d {
            let mut unit = DMatrix::<Complex64>::zeros(d, d);
            unit[(bi, bj)] = Complex64::new(1.0, 0.0);
            let image = apply_e_matrix(params, basis, &unit);
            for k in 0..d {
                for l in 0..d {
                    j[(bi * d + k, bj * d + l)] = image[(k, l)];
                }
            }
        }
    }
    ChoiMatrix { matrix: j, dim: d }
}

/// Two-path Poincaré covariance residual:
/// U_t(g) Φ[ρ] U_t†(g) against Φ[U_{t₀}(g) ρ U_{t₀}†(g)], with the output
/// bases aligned by momentum equality.
pub fn covariance_check(
    params: &ChannelParams,
    basis: &AtomBasis,
    g: &PoincareElement,
    rho: &DensityOperator,
) -> Result<f64, CovarianceError> {
    let phi = apply_phi(params, basis, rho)?;
    let (basis_a, rho_a) = u_t(g, params.t, basis, &phi);

    let (basis_b, transported) = u_t(g, params.t0, basis, rho);
    let rho_b = apply_phi(params, &basis_b, &transported)?;

    Ok(align_residual(&basis_a, &rho_a, &basis_b, &rho_b)?)
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CovarianceError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error(transparent)]
    Alignment(#[from] RepError),
}

/// Hermitian PSD square root, with eigenvalues below zero clipped.
fn hermitian_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let herm = (m + m.adjoint()) * Complex64::from(0.5);
    let eig = herm.symmetric_eigen();
    let mut out = DMatrix::<Complex64>::zeros(m.nrows(), m.ncols());
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda <= 0.0 {
            continue;
        }
        let v = eig.eigenvectors.column(k);
        out += (v * v.adjoint()) * Complex64::from(lambda.sqrt());
    }
    out
}

/// Kraus operators of the reduced dynamics of a total unitary on
/// system ⊗ environment: F_{n,m} = ⟨n| U √ρ_E |m⟩_E. For a pure
/// environment state this collapses to F_n = ⟨n|U|0⟩_E; identically zero
/// operators are dropped.
pub fn dilation_extract(
    u_total: &DMatrix<Complex64>,
    env_dim: usize,
    env_state: &DensityOperator,
) -> Result<KrausSet, ChannelError> {
    let total = u_total.nrows();
    if env_dim == 0 || !total.is_multiple_of(env_dim) || u_total.ncols() != total {
        return Err(ChannelError::BadDilationDimensions {
            total,
            env: env_dim,
        });
    }
    let sys_dim = total / env_dim;
    let unitary_residual = (u_total.adjoint() * u_total
        - DMatrix::<Complex64>::identity(total, total))
    .map(|z| z.norm())
    .max();
    if unitary_residual > 1e-10 {
        return Err(ChannelError::NonUnitaryDilation {
            residual: unitary_residual,
        });
    }
    if env_state.dim() != env_dim {
        return Err(ChannelError::DimensionMismatch {
            got: env_state.dim(),
            expected: env_dim,
        });
    }
    env_state
        .validate()
        .map_err(ChannelError::BadEnvironmentState)?;

    let sqrt_env = hermitian_sqrt(env_state.matrix());
    let mut ops = Vec::new();
    for n in 0..env_dim {
        for m in 0..env_dim {
            let mut f = DMatrix::<Complex64>::zeros(sys_dim, sys_dim);
            for s in 0..sys_dim {
                for sp in 0..sys_dim {
                    let mut acc = Complex64::default();
                    for e in 0..env_dim {
                        acc += u_total[(s * env_dim + n, sp * env_dim + e)] * sqrt_env[(e, m)];
                    }
                    f[(s, sp)] = acc;
                }
            }
            if f.map(|z| z.norm()).max() > 1e-15 {
                ops.push(f);
            }
        }
    }
    Ok(KrausSet { ops, dim: sys_dim })
}

/// Tr_E[U (ρ_S ⊗ ρ_E) U†], the reference the extracted family must match.
pub fn partial_trace_evolution(
    u_total: &DMatrix<Complex64>,
    env_dim: usize,
    env_state: &DensityOperator,
    rho_sys: &DensityOperator,
) -> DMatrix<Complex64> {
    let sys_dim = rho_sys.dim();
    let joint = rho_sys.matrix().kronecker(env_state.matrix());
    let evolved = u_total * joint * u_total.adjoint();
    let mut out = DMatrix::<Complex64>::zeros(sys_dim, sys_dim);
    for s in 0..sys_dim {
        for sp in 0..sys_dim {
            let mut acc = Complex64::default();
            for e in 0..env_dim {
                acc += evolved[(s * env_dim + e, sp * env_dim + e)];
            }
            out[(s, sp)] = acc;
        }
    }
    out
}
