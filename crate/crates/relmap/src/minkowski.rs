//! Four-vector geometry on Minkowski space with signature (−,+,+,+), the
//! positive-mass shell, canonical boosts and Wigner rotations.
//!
//! Every other module sits on top of these types: momenta live on the shell
//! p·p = −m², transformations are proper orthochronous Lorentz matrices, and
//! the little-group machinery is Q(Λ,q) = S⁻¹_{Λq} Λ S_q with S_q the pure
//! boost carrying the rest momentum (m,0,0,0) to q.

use nalgebra::{Matrix4, Vector3, Vector4};
use thiserror::Error;

/// Entrywise tolerance for ΛᵀηΛ = η and det Λ = 1.
pub const LORENTZ_TOL: f64 = 1e-10;

/// Two momenta on a shell of mass m count as the same atom when every
/// spatial component agrees within `ATOM_TOL_PER_MASS * m`.
pub const ATOM_TOL_PER_MASS: f64 = 1e-9;

/// A real four-vector (t, x, y, z) in the (−,+,+,+) signature.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn spatial(&self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub fn from_parts(t: f64, spatial: Vector3<f64>) -> Self {
        Self::new(t, spatial.x, spatial.y, spatial.z)
    }

    fn as_column(&self) -> Vector4<f64> {
        Vector4::new(self.t, self.x, self.y, self.z)
    }

    fn from_column(v: Vector4<f64>) -> Self {
        Self::new(v[0], v[1], v[2], v[3])
    }

    /// Minkowski square u·u.
    pub fn norm_sq(&self) -> f64 {
        contract(self, self)
    }
}

impl std::ops::Add for FourVector {
    type Output = FourVector;
    fn add(self, rhs: FourVector) -> FourVector {
        FourVector::new(
            self.t + rhs.t,
            self.x + rhs.x,
            self.y + rhs.y,
            self.z + rhs.z,
        )
    }
}

impl std::ops::Sub for FourVector {
    type Output = FourVector;
    fn sub(self, rhs: FourVector) -> FourVector {
        FourVector::new(
            self.t - rhs.t,
            self.x - rhs.x,
            self.y - rhs.y,
            self.z - rhs.z,
        )
    }
}

impl std::ops::Mul<FourVector> for f64 {
    type Output = FourVector;
    fn mul(self, v: FourVector) -> FourVector {
        FourVector::new(self * v.t, self * v.x, self * v.y, self * v.z)
    }
}

impl std::ops::Neg for FourVector {
    type Output = FourVector;
    fn neg(self) -> FourVector {
        -1.0 * self
    }
}

/// η_{μν} u^μ v^ν = −u⁰v⁰ + u⃗·v⃗.
pub fn contract(u: &FourVector, v: &FourVector) -> f64 {
    -u.t * v.t + u.x * v.x + u.y * v.y + u.z * v.z
}

/// The metric matrix diag(−1, 1, 1, 1).
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0))
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum LorentzError {
    #[error("matrix does not preserve the metric: max |ΛᵀηΛ − η| = {residual:.3e}")]
    MetricViolation { residual: f64 },
    #[error("matrix is not proper: det Λ = {det:.17} ≠ 1")]
    DeterminantViolation { det: f64 },
    #[error("matrix is not orthochronous: Λ⁰₀ = {lambda00:.17} < 1")]
    OrthochronyViolation { lambda00: f64 },
}

/// A validated proper orthochronous Lorentz transformation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzTransform {
    matrix: Matrix4<f64>,
}

impl LorentzTransform {
    pub fn identity() -> Self {
        Self {
            matrix: Matrix4::identity(),
        }
    }

    /// Validates ΛᵀηΛ = η, det Λ = 1 and Λ⁰₀ ≥ 1, each reported separately.
    pub fn validate(matrix: Matrix4<f64>) -> Result<Self, LorentzError> {
        let eta = metric();
        let residual = (matrix.transpose() * eta * matrix - eta).abs().max();
        if residual > LORENTZ_TOL {
            return Err(LorentzError::MetricViolation { residual });
        }
        let det = matrix.determinant();
        if (det - 1.0).abs() > LORENTZ_TOL {
            return Err(LorentzError::DeterminantViolation { det });
        }
        let lambda00 = matrix[(0, 0)];
        if lambda00 < 1.0 - LORENTZ_TOL {
            return Err(LorentzError::OrthochronyViolation { lambda00 });
        }
        Ok(Self { matrix })
    }

    /// Wraps a matrix known to be a valid transform (e.g. a product of
    /// validated ones). Debug builds still assert validity.
    pub fn from_matrix_unchecked(matrix: Matrix4<f64>) -> Self {
        debug_assert!(Self::validate(matrix).is_ok());
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }

    pub fn apply(&self, v: &FourVector) -> FourVector {
        FourVector::from_column(self.matrix * v.as_column())
    }

    /// Group composition Λ_self ∘ Λ_rhs.
    pub fn compose(&self, rhs: &LorentzTransform) -> LorentzTransform {
        LorentzTransform {
            matrix: self.matrix * rhs.matrix,
        }
    }

    /// Λ⁻¹ = η Λᵀ η, exact for metric-preserving matrices.
    pub fn inverse(&self) -> LorentzTransform {
        let eta = metric();
        LorentzTransform {
            matrix: eta * self.matrix.transpose() * eta,
        }
    }

    /// Embeds a spatial rotation as a Lorentz transform.
    pub fn from_rotation(r: &nalgebra::Rotation3<f64>) -> Self {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(r.matrix());
        Self { matrix: m }
    }

    /// Pure boost with rapidity χ along the unit direction `axis`.
    pub fn boost(axis: &Vector3<f64>, rapidity: f64) -> Self {
        let n = axis.normalize();
        let (ch, sh) = (rapidity.cosh(), rapidity.sinh());
        let mut m = Matrix4::identity();
        m[(0, 0)] = ch;
        for i in 0..3 {
            m[(0, 1 + i)] = sh * n[i];
            m[(1 + i, 0)] = sh * n[i];
            for j in 0..3 {
                m[(1 + i, 1 + j)] = f64::from(i == j) + (ch - 1.0) * n[i] * n[j];
            }
        }
        Self { matrix: m }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum MassShellError {
    #[error("mass must be positive, got {0}")]
    NonPositiveMass(f64),
}

/// A momentum on the positive-energy mass shell. The energy is always
/// derived as √(|p⃗|² + m²), never stored, so p·p = −m² by construction.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassShellMomentum {
    mass: f64,
    spatial: Vector3<f64>,
}

impl MassShellMomentum {
    pub fn new(mass: f64, spatial: Vector3<f64>) -> Result<Self, MassShellError> {
        if mass.is_nan() || mass <= 0.0 {
            return Err(MassShellError::NonPositiveMass(mass));
        }
        Ok(Self { mass, spatial })
    }

    pub fn rest(mass: f64) -> Result<Self, MassShellError> {
        Self::new(mass, Vector3::zeros())
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn spatial(&self) -> Vector3<f64> {
        self.spatial
    }

    pub fn energy(&self) -> f64 {
        (self.spatial.norm_squared() + self.mass * self.mass).sqrt()
    }

    pub fn four_vector(&self) -> FourVector {
        FourVector::from_parts(self.energy(), self.spatial)
    }

    /// Applies Λ and reprojects the spatial part onto the same shell.
    pub fn boosted(&self, lambda: &LorentzTransform) -> MassShellMomentum {
        let v = lambda.apply(&self.four_vector());
        MassShellMomentum {
            mass: self.mass,
            spatial: v.spatial(),
        }
    }

    /// Atom identity: all spatial components within 1e−9·m.
    pub fn same_atom(&self, other: &MassShellMomentum) -> bool {
        let tol = ATOM_TOL_PER_MASS * self.mass;
        (self.spatial - other.spatial).amax() <= tol
    }
}

/// The canonical pure boost S_q with S_q (m,0,0,0) = (E_q, q⃗).
///
/// Its spatial block δ_ij + q_i q_j / (m (E+m)) is symmetric, which makes
/// the Wigner rotation of a pure rotation the rotation itself.
pub fn standard_boost(q: &MassShellMomentum) -> LorentzTransform {
    let m = q.mass();
    let e = q.energy();
    let p = q.spatial();
    let mut mat = Matrix4::identity();
    mat[(0, 0)] = e / m;
    for i in 0..3 {
        mat[(0, 1 + i)] = p[i] / m;
        mat[(1 + i, 0)] = p[i] / m;
        for j in 0..3 {
            mat[(1 + i, 1 + j)] = f64::from(i == j) + p[i] * p[j] / (m * (e + m));
        }
    }
    LorentzTransform { matrix: mat }
}

/// Little-group element Q(Λ,q) = S⁻¹_{Λq} Λ S_q; fixes (m,0,0,0), so it is
/// a spatial rotation for the massive shell.
pub fn wigner_rotation(lambda: &LorentzTransform, q: &MassShellMomentum) -> LorentzTransform {
    let boosted = q.boosted(lambda);
    standard_boost(&boosted)
        .inverse()
        .compose(lambda)
        .compose(&standard_boost(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    fn fv(t: f64, x: f64, y: f64, z: f64) -> FourVector {
        FourVector::new(t, x, y, z)
    }

    #[test]
    fn contract_rest_frame_mass_shell() {
        let u = fv(1.0, 0.0, 0.0, 0.0);
        assert_eq!(contract(&u, &u), -1.0);
    }

    #[test]
    fn contract_null_vector() {
        let u = fv(1.0, 1.0, 0.0, 0.0);
        assert_eq!(contract(&u, &u), 0.0);
    }

    #[test]
    fn contract_direct_formula() {
        let u = fv(2.0, 1.0, 0.0, 0.0);
        let v = fv(1.0, 0.0, 1.0, 0.0);
        assert_eq!(contract(&u, &v), -2.0);
    }

    #[test]
    fn standard_boost_of_rest_momentum_is_identity() {
        let q = MassShellMomentum::rest(1.0).unwrap();
        let s = standard_boost(&q);
        assert!((s.matrix() - Matrix4::identity()).abs().max() < 1e-15);
    }

    #[test]
    fn standard_boost_z_direction() {
        let q = MassShellMomentum::new(1.0, Vector3::new(0.0, 0.0, 0.3)).unwrap();
        let s = standard_boost(&q);
        assert!((s.matrix()[(0, 0)] - 1.09f64.sqrt()).abs() < 1e-15);
        assert!((s.matrix()[(0, 3)] - 0.3).abs() < 1e-15);
        assert!(s.matrix()[(0, 1)].abs() < 1e-15 && s.matrix()[(1, 2)].abs() < 1e-15);
    }

    #[test]
    fn standard_boost_carries_rest_to_q() {
        let mut sampler = Sampler::seed_from(11);
        for _ in 0..100 {
            let q = sampler.momentum(1.0, 1.5);
            let s = standard_boost(&q);
            let image = s.apply(&fv(1.0, 0.0, 0.0, 0.0));
            let expect = q.four_vector();
            assert!((image - expect).spatial().amax() < 1e-12);
            assert!((image.t - expect.t).abs() < 1e-12);
        }
    }

    #[test]
    fn validate_accepts_identity_rejects_time_reversal() {
        assert!(LorentzTransform::validate(Matrix4::identity()).is_ok());
        let t_reversal = Matrix4::from_diagonal(&Vector4::new(-1.0, 1.0, 1.0, 1.0));
        // det = -1 as well, but metric holds; determinant is reported first.
        match LorentzTransform::validate(t_reversal) {
            Err(LorentzError::DeterminantViolation { .. }) => {}
            other => panic!("unexpected: {other:?}"),
        }
        let pt_reversal = Matrix4::from_diagonal(&Vector4::new(-1.0, -1.0, 1.0, 1.0));
        match LorentzTransform::validate(pt_reversal) {
            Err(LorentzError::OrthochronyViolation { lambda00 }) => {
                assert_eq!(lambda00, -1.0)
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_non_metric_matrix() {
        let mut m = Matrix4::identity();
        m[(1, 2)] = 0.5;
        match LorentzTransform::validate(m) {
            Err(LorentzError::MetricViolation { residual }) => assert!(residual > 0.1),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn construct_then_validate_round_trip() {
        let mut sampler = Sampler::seed_from(3);
        for _ in 0..20 {
            let boost = LorentzTransform::boost(&sampler.unit_vector(), 0.5);
            let rot = LorentzTransform::from_rotation(&sampler.rotation());
            let composed = boost.compose(&rot);
            assert!(LorentzTransform::validate(*composed.matrix()).is_ok());
        }
    }

    #[test]
    fn wigner_rotation_of_identity_is_identity() {
        let q = MassShellMomentum::new(1.0, Vector3::new(0.1, -0.4, 0.2)).unwrap();
        let w = wigner_rotation(&LorentzTransform::identity(), &q);
        assert!((w.matrix() - Matrix4::identity()).abs().max() < 1e-12);
    }

    #[test]
    fn wigner_rotation_of_rotation_is_the_rotation() {
        let mut sampler = Sampler::seed_from(5);
        for _ in 0..20 {
            let r = LorentzTransform::from_rotation(&sampler.rotation());
            let q = sampler.momentum(1.0, 1.5);
            let w = wigner_rotation(&r, &q);
            assert!((w.matrix() - r.matrix()).abs().max() < 1e-10);
        }
    }

    #[test]
    fn collinear_boost_has_trivial_wigner_rotation() {
        let z = Vector3::new(0.0, 0.0, 1.0);
        let lambda = LorentzTransform::boost(&z, 0.7);
        let q = MassShellMomentum::new(1.0, 0.4 * z).unwrap();
        let w = wigner_rotation(&lambda, &q);
        assert!((w.matrix() - Matrix4::identity()).abs().max() < 1e-12);
    }

    #[test]
    fn wigner_rotation_fixes_rest_momentum_and_unwinds() {
        let mut sampler = Sampler::seed_from(7);
        let ell = fv(1.0, 0.0, 0.0, 0.0);
        for _ in 0..50 {
            let lambda = sampler.lorentz();
            let q = sampler.momentum(1.0, 2.0);
            let w = wigner_rotation(&lambda, &q);
            let fixed = w.apply(&ell) - ell;
            assert!(fixed.spatial().amax() < 1e-10 && fixed.t.abs() < 1e-10);
            // S_{Λq} Q = Λ S_q as matrices
            let lhs = standard_boost(&q.boosted(&lambda)).compose(&w);
            let rhs = lambda.compose(&standard_boost(&q));
            assert!((lhs.matrix() - rhs.matrix()).abs().max() < 1e-10);
        }
    }

    #[test]
    fn invariant_contraction_under_random_transforms() {
        let mut sampler = Sampler::seed_from(13);
        for _ in 0..100 {
            let lambda = sampler.lorentz();
            let p = sampler.momentum(1.0, 2.0).four_vector();
            let q = lambda.apply(&p);
            assert!((contract(&q, &q) + 1.0).abs() < 1e-10);
        }
    }
}
