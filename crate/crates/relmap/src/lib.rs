//! Poincaré-invariant quantum dynamical maps on the vacuum ⊕ one-particle
//! sector of a spinless massive field.
//!
//! The library models the sector exactly with finitely many momentum atoms
//! on one mass shell and provides, on top of that:
//!
//! - Minkowski kinematics: canonical boosts, Wigner rotations, validated
//!   Lorentz transforms ([`minkowski`]);
//! - the ten-generator Poincaré algebra with its foliation-adapted
//!   generator families ([`algebra`]);
//! - density operators, ladder and number operators on the truncated
//!   sector ([`fock`]) and the unitary group action on them ([`rep`]);
//! - Lorentz-invariant PSD kernels ([`kernels`]), the invariant channel
//!   family E and Φ = U ∘ E with Kraus, Choi, covariance and dilation
//!   machinery ([`channel`]);
//! - the little-group constraint solver classifying which Kraus ansatz
//!   coefficients survive covariance ([`constraints`]);
//! - characteristic functions and conservation-law verdicts
//!   ([`observables`]);
//! - the foliation-covariant formulation ([`covariant`]).

pub mod algebra;
pub mod channel;
pub mod constraints;
pub mod covariant;
pub mod fock;
pub mod kernels;
pub mod minkowski;
pub mod observables;
pub mod rep;
pub mod sampling;

pub use channel::{
    apply_e, apply_phi, choi, covariance_check, dilation_extract, kraus_set, ChannelError,
    ChannelParams, ChoiMatrix, KrausSet,
};
pub use fock::{AtomBasis, DensityOperator, SectorState};
pub use kernels::{InvariantKernel, KernelFamily};
pub use minkowski::{FourVector, LorentzTransform, MassShellMomentum};
pub use rep::PoincareElement;
pub use sampling::Sampler;
