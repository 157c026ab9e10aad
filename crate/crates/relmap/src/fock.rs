//! Exact finite-dimensional model of the vacuum ⊕ one-particle sector.
//!
//! A basis is a set of M distinct "momentum atoms" on one mass shell with
//! Kronecker-normalized modes, [aᵢ, aⱼ†] = δ_ij, so every continuum
//! integral ∫d³p becomes a finite sum over atoms and the sector is the
//! (1+M)-dimensional space spanned by |0⟩ and |pᵢ⟩ = aᵢ†|0⟩. Index 0 is
//! the vacuum throughout; two-particle states are excluded by the sector
//! truncation, so aᵢ†aⱼ† never appears.

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::minkowski::{MassShellError, MassShellMomentum};

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FockError {
    #[error(transparent)]
    MassShell(#[from] MassShellError),
    #[error("atoms {0} and {1} coincide within the momentum tolerance")]
    DuplicateAtoms(usize, usize),
    #[error("atom index {index} out of range for {atoms} atoms")]
    AtomIndexOutOfRange { index: usize, atoms: usize },
    #[error("operator dimension {got} does not match sector dimension {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("density operator is not Hermitian: max |ρ − ρ†| = {residual:.3e}")]
    NotHermitian { residual: f64 },
    #[error("density operator trace {trace:.17} is not 1")]
    TraceNotOne { trace: f64 },
    #[error("density operator has eigenvalue {eigenvalue:.3e} below the PSD floor")]
    NotPositive { eigenvalue: f64 },
    #[error("malformed density document: {0}")]
    MalformedDocument(String),
}

/// Ordered set of distinct momentum atoms sharing one mass.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomBasis {
    mass: f64,
    atoms: Vec<MassShellMomentum>,
}

impl AtomBasis {
    pub fn new(mass: f64, momenta: Vec<Vector3<f64>>) -> Result<Self, FockError> {
        let atoms: Vec<MassShellMomentum> = momenta
            .into_iter()
            .map(|p| MassShellMomentum::new(mass, p))
            .collect::<Result<_, _>>()?;
        for i in 0..atoms.len() {
            for j in (i + 1)..atoms.len() {
                if atoms[i].same_atom(&atoms[j]) {
                    return Err(FockError::DuplicateAtoms(i, j));
                }
            }
        }
        Ok(Self { mass, atoms })
    }

    pub fn from_atoms(atoms: Vec<MassShellMomentum>) -> Result<Self, FockError> {
        let mass = atoms.first().map(|a| a.mass()).unwrap_or(1.0);
        Self::new(mass, atoms.iter().map(|a| a.spatial()).collect())
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Number of atoms M.
    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Sector dimension d = 1 + M.
    pub fn dim(&self) -> usize {
        1 + self.atoms.len()
    }

    pub fn atom(&self, i: usize) -> &MassShellMomentum {
        &self.atoms[i]
    }

    pub fn atoms(&self) -> &[MassShellMomentum] {
        &self.atoms
    }

    pub fn energies(&self) -> Vec<f64> {
        self.atoms.iter().map(|a| a.energy()).collect()
    }

    /// Index of the atom equal to `p` under the momentum tolerance.
    pub fn index_of(&self, p: &MassShellMomentum) -> Option<usize> {
        self.atoms.iter().position(|a| a.same_atom(p))
    }
}

/// Pure sector state: one vacuum amplitude plus one amplitude per atom.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorState {
    pub vacuum: Complex64,
    pub particle: Vec<Complex64>,
}

impl SectorState {
    pub fn single_atom(atoms: usize, index: usize) -> Self {
        let mut s = Self {
            vacuum: Complex64::default(),
            particle: vec![Complex64::default(); atoms],
        };
        s.particle[index] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn norm_sq(&self) -> f64 {
        self.vacuum.norm_sqr() + self.particle.iter().map(|a| a.norm_sqr()).sum::<f64>()
    }

    pub fn normalized(&self) -> SectorState {
        let n = self.norm_sq().sqrt();
        SectorState {
            vacuum: self.vacuum / n,
            particle: self.particle.iter().map(|a| a / n).collect(),
        }
    }

    pub fn to_vector(&self) -> nalgebra::DVector<Complex64> {
        let mut v = nalgebra::DVector::zeros(1 + self.particle.len());
        v[0] = self.vacuum;
        for (i, a) in self.particle.iter().enumerate() {
            v[1 + i] = *a;
        }
        v
    }

    /// Rank-one density |ψ⟩⟨ψ|.
    pub fn density(&self) -> DensityOperator {
        let v = self.to_vector();
        DensityOperator::from_matrix_unchecked(&v * v.adjoint())
    }
}

/// Block operator on the sector: vac–vac scalar, vac–particle row and
/// particle–particle M×M block, stored as one (1+M)×(1+M) matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: DMatrix<Complex64>,
}

impl DensityOperator {
    /// Validating constructor; diagnostics are ordered Hermiticity, trace,
    /// PSD so callers can rely on the first failure reported.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self, FockError> {
        let rho = Self { matrix };
        rho.validate()?;
        Ok(rho)
    }

    pub fn from_matrix_unchecked(matrix: DMatrix<Complex64>) -> Self {
        assert!(matrix.is_square());
        Self { matrix }
    }

    pub fn vacuum(dim: usize) -> Self {
        let mut m = DMatrix::zeros(dim, dim);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        Self { matrix: m }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: DMatrix::identity(dim, dim) / Complex64::from(dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        (&self.matrix - self.matrix.adjoint())
            .map(|z| z.norm())
            .max()
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn validate(&self) -> Result<(), FockError> {
        let residual = self.hermiticity_residual();
        if residual > HERMITICITY_TOL {
            return Err(FockError::NotHermitian { residual });
        }
        let trace = self.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(FockError::TraceNotOne { trace });
        }
        let eigenvalue = self.eigenvalues().first().copied().unwrap_or(0.0);
        if eigenvalue < EIGENVALUE_FLOOR {
            return Err(FockError::NotPositive { eigenvalue });
        }
        Ok(())
    }

    pub fn max_abs_diff(&self, other: &DensityOperator) -> f64 {
        (&self.matrix - &other.matrix).map(|z| z.norm()).max()
    }
}

/// Ascending eigenvalues of the Hermitian part of `m`.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let herm = (m + m.adjoint()) * Complex64::from(0.5);
    let mut eigs: Vec<f64> = herm.symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    eigs
}

/// Matrix of aᵢ = |0⟩⟨pᵢ| on the sector.
pub fn annihilation_matrix(dim: usize, i: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::zeros(dim, dim);
    m[(0, 1 + i)] = Complex64::new(1.0, 0.0);
    m
}

/// N = Σᵢ aᵢ†aᵢ: zero on the vacuum, identity on the one-particle block.
pub fn number_matrix(dim: usize) -> DMatrix<Complex64> {
    let mut m = DMatrix::identity(dim, dim);
    m[(0, 0)] = Complex64::default();
    m
}

/// aᵢ ρ aᵢ†, unnormalized: the (i,i) particle entry moves to the vac–vac
/// slot and everything else is annihilated. Trace of the output is ⟨nᵢ⟩.
pub fn annihilate(
    basis: &AtomBasis,
    i: usize,
    rho: &DensityOperator,
) -> Result<DensityOperator, FockError> {
    if i >= basis.len() {
        return Err(FockError::AtomIndexOutOfRange {
            index: i,
            atoms: basis.len(),
        });
    }
    if rho.dim() != basis.dim() {
        return Err(FockError::DimensionMismatch {
            got: rho.dim(),
            expected: basis.dim(),
        });
    }
    let mut out = DMatrix::zeros(rho.dim(), rho.dim());
    out[(0, 0)] = rho.matrix()[(1 + i, 1 + i)];
    Ok(DensityOperator::from_matrix_unchecked(out))
}

/// Which side of ρ the number operator multiplies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
    Both,
}

/// Nρ, ρN or NρN, unnormalized.
pub fn apply_number(rho: &DensityOperator, side: Side) -> DensityOperator {
    let n = number_matrix(rho.dim());
    let m = match side {
        Side::Left => &n * rho.matrix(),
        Side::Right => rho.matrix() * &n,
        Side::Both => &n * rho.matrix() * &n,
    };
    DensityOperator::from_matrix_unchecked(m)
}

/// Serialized form: the basis plus the row-major matrix as (re, im) pairs.
/// serde_json prints f64 with shortest round-trip representations, so the
/// round trip is bit-exact.
#[derive(Serialize, Deserialize)]
pub struct DensityJson {
    pub mass: f64,
    pub atoms: Vec<[f64; 3]>,
    pub dim: usize,
    pub entries: Vec<[f64; 2]>,
}

pub fn to_json(basis: &AtomBasis, rho: &DensityOperator) -> Result<String, FockError> {
    if rho.dim() != basis.dim() {
        return Err(FockError::DimensionMismatch {
            got: rho.dim(),
            expected: basis.dim(),
        });
    }
    let dim = rho.dim();
    let mut entries = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for c in 0..dim {
            let z = rho.matrix()[(r, c)];
            entries.push([z.re, z.im]);
        }
    }
    let doc = DensityJson {
        mass: basis.mass(),
        atoms: basis.atoms().iter().map(|a| a.spatial().into()).collect(),
        dim,
        entries,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("density serialization"))
}

pub fn from_json(text: &str) -> Result<(AtomBasis, DensityOperator), FockError> {
    let doc: DensityJson =
        serde_json::from_str(text).map_err(|e| FockError::MalformedDocument(e.to_string()))?;
    let basis = AtomBasis::new(
        doc.mass,
        doc.atoms.iter().map(|a| Vector3::from(*a)).collect(),
    )?;
    if doc.dim != basis.dim() || doc.entries.len() != doc.dim * doc.dim {
        return Err(FockError::MalformedDocument(format!(
            "dim {} with {} atoms and {} entries",
            doc.dim,
            doc.atoms.len(),
            doc.entries.len()
        )));
    }
    let mut m = DMatrix::zeros(doc.dim, doc.dim);
    for r in 0..doc.dim {
        for c in 0..doc.dim {
            let [re, im] = doc.entries[r * doc.dim + c];
            m[(r, c)] = Complex64::new(re, im);
        }
    }
    Ok((basis, DensityOperator::from_matrix_unchecked(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    fn two_atom_basis() -> AtomBasis {
        AtomBasis::new(
            1.0,
            vec![Vector3::new(0.3, 0.0, 0.0), Vector3::new(0.0, -0.2, 0.4)],
        )
        .unwrap()
    }

    #[test]
    fn duplicate_atoms_rejected() {
        let err = AtomBasis::new(
            1.0,
            vec![Vector3::new(0.1, 0.0, 0.0), Vector3::new(0.1, 0.0, 2e-10)],
        )
        .unwrap_err();
        assert_eq!(err, FockError::DuplicateAtoms(0, 1));
    }

    #[test]
    fn annihilate_vacuum_is_zero() {
        let basis = two_atom_basis();
        let rho = DensityOperator::vacuum(basis.dim());
        let out = annihilate(&basis, 0, &rho).unwrap();
        assert_eq!(out.matrix().map(|z| z.norm()).max(), 0.0);
    }

    #[test]
    fn annihilate_single_atom_projects_to_vacuum() {
        let basis = two_atom_basis();
        let rho = SectorState::single_atom(2, 0).density();
        let out = annihilate(&basis, 0, &rho).unwrap();
        assert_eq!(out.matrix()[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(out.trace().re, 1.0);
        // the other mode annihilates to zero
        let out = annihilate(&basis, 1, &rho).unwrap();
        assert_eq!(out.trace().re, 0.0);
    }

    #[test]
    fn annihilate_mixed_state_block_arithmetic() {
        let basis = two_atom_basis();
        let mut m = DMatrix::zeros(3, 3);
        m[(1, 1)] = Complex64::new(0.3, 0.0);
        m[(2, 2)] = Complex64::new(0.7, 0.0);
        let rho = DensityOperator::new(m).unwrap();
        let out = annihilate(&basis, 0, &rho).unwrap();
        assert_eq!(out.matrix()[(0, 0)], Complex64::new(0.3, 0.0));
        assert_eq!(out.trace().re, 0.3);
    }

    #[test]
    fn annihilate_index_out_of_range() {
        let basis = two_atom_basis();
        let rho = DensityOperator::vacuum(basis.dim());
        assert!(matches!(
            annihilate(&basis, 2, &rho),
            Err(FockError::AtomIndexOutOfRange { index: 2, atoms: 2 })
        ));
    }

    #[test]
    fn number_operator_on_vacuum_and_particles() {
        let rho = DensityOperator::vacuum(3);
        let out = apply_number(&rho, Side::Both);
        assert_eq!(out.matrix().map(|z| z.norm()).max(), 0.0);

        let pure = SectorState::single_atom(2, 1).density();
        let out = apply_number(&pure, Side::Both);
        assert_eq!(out.max_abs_diff(&pure), 0.0);
    }

    #[test]
    fn number_kills_vacuum_coherence_from_the_left() {
        // ρ = |0⟩⟨p| has a vac–particle coherence; N from the left removes it.
        let mut m = DMatrix::zeros(3, 3);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        let rho = DensityOperator::from_matrix_unchecked(m);
        let out = apply_number(&rho, Side::Left);
        assert_eq!(out.matrix().map(|z| z.norm()).max(), 0.0);
        // and survives from the right
        let out = apply_number(&rho, Side::Right);
        assert_eq!(out.matrix()[(0, 1)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn number_operator_is_idempotent_on_the_sector() {
        let n = number_matrix(5);
        assert_eq!((&n * &n - &n).map(|z| z.norm()).max(), 0.0);
        // nᵢ nⱼ = δᵢⱼ nᵢ as block identities
        for i in 0..4 {
            for j in 0..4 {
                let ni = annihilation_matrix(5, i).adjoint() * annihilation_matrix(5, i);
                let nj = annihilation_matrix(5, j).adjoint() * annihilation_matrix(5, j);
                let prod = &ni * &nj;
                let expect = if i == j {
                    ni.clone()
                } else {
                    DMatrix::zeros(5, 5)
                };
                assert_eq!((prod - expect).map(|z| z.norm()).max(), 0.0);
            }
        }
    }

    #[test]
    fn canonical_commutator_on_the_vacuum() {
        // aᵢ aⱼ†|0⟩ = δᵢⱼ|0⟩ in matrix form
        let dim = 4;
        for i in 0..3 {
            for j in 0..3 {
                let a_i = annihilation_matrix(dim, i);
                let adg_j = annihilation_matrix(dim, j).adjoint();
                let mut vac = nalgebra::DVector::<Complex64>::zeros(dim);
                vac[0] = Complex64::new(1.0, 0.0);
                let out = a_i * adg_j * vac.clone();
                let expect = if i == j {
                    vac
                } else {
                    nalgebra::DVector::zeros(dim)
                };
                assert_eq!((out - expect).map(|z| z.norm()).max(), 0.0);
            }
        }
    }

    #[test]
    fn validate_density_diagnostics() {
        assert!(DensityOperator::maximally_mixed(3).validate().is_ok());

        let bad_trace =
            DensityOperator::from_matrix_unchecked(DMatrix::identity(3, 3) * Complex64::from(0.33));
        assert!(matches!(
            bad_trace.validate(),
            Err(FockError::TraceNotOne { .. })
        ));

        let mut m = DMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(1.0 + 1e-6, 0.0);
        m[(1, 1)] = Complex64::new(-1e-6, 0.0);
        let perturbed = DensityOperator::from_matrix_unchecked(m);
        assert!(matches!(
            perturbed.validate(),
            Err(FockError::NotPositive { .. })
        ));

        let mut m = DMatrix::zeros(2, 2);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(0, 1)] = Complex64::new(0.0, 1e-3);
        assert!(matches!(
            DensityOperator::from_matrix_unchecked(m).validate(),
            Err(FockError::NotHermitian { .. })
        ));
    }

    #[test]
    fn annihilate_preserves_positivity() {
        let mut sampler = Sampler::seed_from(8);
        let basis = sampler.basis(1.0, 4);
        for _ in 0..20 {
            let rho = sampler.density(basis.dim());
            let out = annihilate(&basis, 2, &rho).unwrap();
            assert!(out.eigenvalues().first().unwrap() >= &EIGENVALUE_FLOOR);
        }
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut sampler = Sampler::seed_from(17);
        let basis = sampler.basis(0.75, 3);
        let rho = sampler.density(basis.dim());
        let text = to_json(&basis, &rho).unwrap();
        let (basis2, rho2) = from_json(&text).unwrap();
        assert_eq!(basis.mass().to_bits(), basis2.mass().to_bits());
        for (a, b) in basis.atoms().iter().zip(basis2.atoms()) {
            for k in 0..3 {
                assert_eq!(a.spatial()[k].to_bits(), b.spatial()[k].to_bits());
            }
        }
        for r in 0..rho.dim() {
            for c in 0..rho.dim() {
                let (x, y) = (rho.matrix()[(r, c)], rho2.matrix()[(r, c)]);
                assert_eq!(x.re.to_bits(), y.re.to_bits());
                assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }
}
