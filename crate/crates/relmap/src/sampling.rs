//! Seeded pseudo-random fixtures: rotations, boosts, Lorentz transforms,
//! momenta, states and density operators.
//!
//! Everything draws from a ChaCha12 stream so that a (seed, call sequence)
//! pair reproduces the exact sample points on any platform. Rotations are
//! uniform via normalized quaternions; boost rapidities are uniform in
//! [0, 2], which keeps energy ratios well conditioned.

use nalgebra::{DMatrix, Quaternion, Rotation3, UnitQuaternion, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::fock::{AtomBasis, DensityOperator};
use crate::minkowski::{FourVector, LorentzTransform, MassShellMomentum};

/// Maximum rapidity for sampled boosts.
pub const MAX_RAPIDITY: f64 = 2.0;

pub struct Sampler {
    rng: ChaCha12Rng,
}

impl Sampler {
    pub fn seed_from(seed: u64) -> Self {
        Self {
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.random_range(lo..hi)
    }

    fn normal(&mut self) -> f64 {
        StandardNormal.sample(&mut self.rng)
    }

    pub fn complex_normal(&mut self) -> Complex64 {
        Complex64::new(self.normal(), self.normal())
    }

    pub fn unit_vector(&mut self) -> Vector3<f64> {
        loop {
            let v = Vector3::new(self.normal(), self.normal(), self.normal());
            if v.norm() > 1e-6 {
                return v.normalize();
            }
        }
    }

    /// Uniform rotation from a normalized quaternion.
    pub fn rotation(&mut self) -> Rotation3<f64> {
        let q = Quaternion::new(self.normal(), self.normal(), self.normal(), self.normal());
        UnitQuaternion::from_quaternion(q).to_rotation_matrix()
    }

    pub fn boost(&mut self) -> LorentzTransform {
        let axis = self.unit_vector();
        let rapidity = self.uniform(0.0, MAX_RAPIDITY);
        LorentzTransform::boost(&axis, rapidity)
    }

    /// Random proper orthochronous transform: boost ∘ rotation.
    pub fn lorentz(&mut self) -> LorentzTransform {
        let b = self.boost();
        let r = LorentzTransform::from_rotation(&self.rotation());
        b.compose(&r)
    }

    pub fn four_vector(&mut self, scale: f64) -> FourVector {
        FourVector::new(
            self.uniform(-scale, scale),
            self.uniform(-scale, scale),
            self.uniform(-scale, scale),
            self.uniform(-scale, scale),
        )
    }

    /// Future-pointing unit timelike vector: boost applied to (1,0,0,0).
    pub fn unit_timelike(&mut self) -> FourVector {
        self.boost().apply(&FourVector::new(1.0, 0.0, 0.0, 0.0))
    }

    pub fn momentum(&mut self, mass: f64, max_momentum: f64) -> MassShellMomentum {
        let p = self.uniform(0.0, max_momentum) * self.unit_vector();
        MassShellMomentum::new(mass, p).expect("positive mass")
    }

    /// Basis of `count` distinct atoms on the shell of `mass`.
    pub fn basis(&mut self, mass: f64, count: usize) -> AtomBasis {
        loop {
            let atoms: Vec<_> = (0..count).map(|_| self.momentum(mass, 1.5)).collect();
            if let Ok(b) = AtomBasis::new(mass, atoms.iter().map(|a| a.spatial()).collect()) {
                return b;
            }
        }
    }

    /// Ginibre matrix: i.i.d. standard complex Gaussian entries.
    pub fn ginibre(&mut self, rows: usize, cols: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(rows, cols, |_, _| self.complex_normal())
    }

    /// Full-rank random density operator ρ = GG†/Tr(GG†).
    pub fn density(&mut self, dim: usize) -> DensityOperator {
        let g = self.ginibre(dim, dim);
        let m = &g * g.adjoint();
        let trace = m.trace().re;
        DensityOperator::from_matrix_unchecked(m / Complex64::from(trace))
    }

    /// Haar-like unitary from the QR decomposition of a Ginibre matrix,
    /// with the R diagonal phases absorbed so the factorization is unique.
    pub fn unitary(&mut self, dim: usize) -> DMatrix<Complex64> {
        let g = self.ginibre(dim, dim);
        let qr = g.qr();
        let r = qr.r();
        let mut q = qr.q();
        for j in 0..dim {
            let d = r[(j, j)];
            let phase = if d.norm() == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                d / d.norm()
            };
            for i in 0..dim {
                q[(i, j)] *= phase;
            }
        }
        q
    }
}
