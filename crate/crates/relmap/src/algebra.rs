//! The ten-generator Poincaré Lie algebra over the ordered basis
//! (H, P₁, P₂, P₃, J₁, J₂, J₃, K₁, K₂, K₃), with the physicist structure
//! constants carrying explicit factors of i:
//!
//! ```text
//! [Jᵢ, Jⱼ] = i ε_ijk Jᵏ     [Jᵢ, Pⱼ] = i ε_ijk Pᵏ     [Jᵢ, Kⱼ] = i ε_ijk Kᵏ
//! [Kᵢ, Pⱼ] = i δ_ij H       [Kᵢ, H]  = i Pᵢ           [Kᵢ, Kⱼ] = −i ε_ijk Jᵏ
//! [Pᵢ, Pⱼ] = [Pᵢ, H] = [Jᵢ, H] = 0
//! ```
//!
//! On top of that sits the foliation family for a unit timelike normal n:
//! Θ = −n·P, Π^μ = P^μ − n^μ Θ, L^μ = ½ ε^{μαβγ} J_{αβ} n_γ and
//! N^μ = J^{νμ} n_ν, together with a verifier for their nine bracket
//! identities.
//!
//! Conventions pinned here and validated by the n = (1,0,0,0) reduction:
//! ε is the totally antisymmetric symbol with ε(0,1,2,3) = +1 in every
//! index position (no η factors on ε itself), and N^μ contracts J on its
//! first slot so that the coordinate frame yields N = (0, K).

#![allow(clippy::needless_range_loop)] // μναβ tensor loops index several arrays at once

use num_complex::Complex64;
use thiserror::Error;

use crate::minkowski::{contract, FourVector};

/// Basis size of the algebra.
pub const DIM: usize = 10;

const IDX_H: usize = 0;
const IDX_P: usize = 1; // P1..P3 at 1..=3
const IDX_J: usize = 4; // J1..J3 at 4..=6
const IDX_K: usize = 7; // K1..K3 at 7..=9

/// An element of the complexified Poincaré algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    coeffs: [Complex64; DIM],
}

const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
const C_I: Complex64 = Complex64::new(0.0, 1.0);

impl AlgebraElement {
    pub fn zero() -> Self {
        Self {
            coeffs: [C_ZERO; DIM],
        }
    }

    pub fn basis(index: usize) -> Self {
        assert!(index < DIM);
        let mut e = Self::zero();
        e.coeffs[index] = Complex64::new(1.0, 0.0);
        e
    }

    pub fn h() -> Self {
        Self::basis(IDX_H)
    }

    /// Pᵢ for i ∈ {0,1,2} labelling the spatial axes x, y, z.
    pub fn p(i: usize) -> Self {
        assert!(i < 3);
        Self::basis(IDX_P + i)
    }

    pub fn j(i: usize) -> Self {
        assert!(i < 3);
        Self::basis(IDX_J + i)
    }

    pub fn k(i: usize) -> Self {
        assert!(i < 3);
        Self::basis(IDX_K + i)
    }

    pub fn coeffs(&self) -> &[Complex64; DIM] {
        &self.coeffs
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= factor;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl std::ops::Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
        out
    }
}

impl std::ops::Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        let mut out = self;
        for (a, b) in out.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
        out
    }
}

fn eps3(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

/// Totally antisymmetric symbol on four indices, ε(0,1,2,3) = +1.
fn eps4(a: usize, b: usize, c: usize, d: usize) -> f64 {
    let idx = [a, b, c, d];
    let mut sign = 1.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            if idx[i] == idx[j] {
                return 0.0;
            }
            if idx[i] > idx[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Bracket of two basis generators, expanded over the structure constants.
fn basis_bracket(a: usize, b: usize) -> AlgebraElement {
    if a == b {
        return AlgebraElement::zero();
    }
    if a > b {
        return basis_bracket(b, a).scaled(-Complex64::new(1.0, 0.0));
    }
    // Now a < b with layout H < P < J < K.
    match (a, b) {
        // [H, P] = 0
        (IDX_H, bi) if (IDX_P..IDX_P + 3).contains(&bi) => AlgebraElement::zero(),
        // [H, J] = 0
        (IDX_H, bi) if (IDX_J..IDX_J + 3).contains(&bi) => AlgebraElement::zero(),
        // [H, Kᵢ] = −[Kᵢ, H] = −i Pᵢ
        (IDX_H, bi) if (IDX_K..IDX_K + 3).contains(&bi) => {
            AlgebraElement::p(bi - IDX_K).scaled(-C_I)
        }
        // [Pᵢ, Pⱼ] = 0
        (ai, bi) if ai >= IDX_P && bi < IDX_P + 3 => AlgebraElement::zero(),
        // [Pᵢ, Jⱼ] = −[Jⱼ, Pᵢ] = −i ε_jik Pᵏ
        (ai, bi) if (IDX_P..IDX_J).contains(&ai) && (IDX_J..IDX_K).contains(&bi) => {
            let (i, j) = (ai - IDX_P, bi - IDX_J);
            let mut out = AlgebraElement::zero();
            for k in 0..3 {
                out = out + AlgebraElement::p(k).scaled(-C_I * eps3(j, i, k));
            }
            out
        }
        // [Pᵢ, Kⱼ] = −[Kⱼ, Pᵢ] = −i δ_ij H
        (ai, bi) if (IDX_P..IDX_J).contains(&ai) && bi >= IDX_K => {
            if ai - IDX_P == bi - IDX_K {
                AlgebraElement::h().scaled(-C_I)
            } else {
                AlgebraElement::zero()
            }
        }
        // [Jᵢ, Jⱼ] = i ε_ijk Jᵏ
        (ai, bi) if ai >= IDX_J && bi < IDX_K => {
            let (i, j) = (ai - IDX_J, bi - IDX_J);
            let mut out = AlgebraElement::zero();
            for k in 0..3 {
                out = out + AlgebraElement::j(k).scaled(C_I * eps3(i, j, k));
            }
            out
        }
        // [Jᵢ, Kⱼ] = i ε_ijk Kᵏ
        (ai, bi) if (IDX_J..IDX_K).contains(&ai) && bi >= IDX_K => {
            let (i, j) = (ai - IDX_J, bi - IDX_K);
            let mut out = AlgebraElement::zero();
            for k in 0..3 {
                out = out + AlgebraElement::k(k).scaled(C_I * eps3(i, j, k));
            }
            out
        }
        // [Kᵢ, Kⱼ] = −i ε_ijk Jᵏ
        (ai, bi) if ai >= IDX_K && bi >= IDX_K => {
            let (i, j) = (ai - IDX_K, bi - IDX_K);
            let mut out = AlgebraElement::zero();
            for k in 0..3 {
                out = out + AlgebraElement::j(k).scaled(-C_I * eps3(i, j, k));
            }
            out
        }
        _ => unreachable!("basis index out of range"),
    }
}

/// Bilinear antisymmetric bracket expanded over the structure constants.
pub fn commutator(x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for a in 0..DIM {
        if x.coeffs[a] == C_ZERO {
            continue;
        }
        for b in 0..DIM {
            if y.coeffs[b] == C_ZERO {
                continue;
            }
            out = out + basis_bracket(a, b).scaled(x.coeffs[a] * y.coeffs[b]);
        }
    }
    out
}

/// Max residual of the Jacobi identity over all ordered basis triples.
pub fn jacobi_residual() -> f64 {
    let mut worst: f64 = 0.0;
    for a in 0..DIM {
        for b in 0..DIM {
            for c in 0..DIM {
                let (ea, eb, ec) = (
                    AlgebraElement::basis(a),
                    AlgebraElement::basis(b),
                    AlgebraElement::basis(c),
                );
                let cycl = commutator(&ea, &commutator(&eb, &ec))
                    + commutator(&eb, &commutator(&ec, &ea))
                    + commutator(&ec, &commutator(&ea, &eb));
                worst = worst.max(cycl.max_abs());
            }
        }
    }
    worst
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum AlgebraError {
    #[error("foliation normal must be unit timelike (n·n = −1), got n·n = {norm_sq}")]
    NotUnitTimelike { norm_sq: f64 },
    #[error("foliation normal must be future-pointing, got n⁰ = {n0}")]
    NotFuturePointing { n0: f64 },
}

/// The generator family adapted to the foliation with unit normal n.
#[derive(Clone, Debug)]
pub struct FoliationGenerators {
    pub normal: FourVector,
    pub theta: AlgebraElement,
    pub pi: [AlgebraElement; 4],
    pub l: [AlgebraElement; 4],
    pub n: [AlgebraElement; 4],
}

fn eta_sign(mu: usize) -> f64 {
    if mu == 0 {
        -1.0
    } else {
        1.0
    }
}

fn n_components(n: &FourVector) -> [f64; 4] {
    [n.t, n.x, n.y, n.z]
}

/// J^{αβ} as algebra elements: J^{i0} = Kᵢ and J^{jk} = ε^{ijk} Jᵢ.
fn j_upper() -> [[AlgebraElement; 4]; 4] {
    let mut table: [[AlgebraElement; 4]; 4] =
        std::array::from_fn(|_| std::array::from_fn(|_| AlgebraElement::zero()));
    for i in 0..3 {
        table[1 + i][0] = AlgebraElement::k(i);
        table[0][1 + i] = AlgebraElement::k(i).scaled(-Complex64::new(1.0, 0.0));
        for j in 0..3 {
            let mut e = AlgebraElement::zero();
            for k in 0..3 {
                e = e + AlgebraElement::j(k).scaled(Complex64::from(eps3(k, i, j)));
            }
            table[1 + i][1 + j] = e;
        }
    }
    table
}

/// Builds Θ, Π^μ, L^μ, N^μ for a unit timelike future-pointing n.
pub fn foliation_generators(normal: &FourVector) -> Result<FoliationGenerators, AlgebraError> {
    let norm_sq = contract(normal, normal);
    if (norm_sq + 1.0).abs() > 1e-9 {
        return Err(AlgebraError::NotUnitTimelike { norm_sq });
    }
    if normal.t <= 0.0 {
        return Err(AlgebraError::NotFuturePointing { n0: normal.t });
    }

    let n_up = n_components(normal);
    let n_low: [f64; 4] = std::array::from_fn(|mu| eta_sign(mu) * n_up[mu]);

    // Θ = −n_μ P^μ = n⁰ H − n⃗·P⃗
    let mut theta = AlgebraElement::h().scaled(Complex64::from(n_up[0]));
    for i in 0..3 {
        theta = theta + AlgebraElement::p(i).scaled(Complex64::from(-n_up[1 + i]));
    }

    let p_up: [AlgebraElement; 4] = [
        AlgebraElement::h(),
        AlgebraElement::p(0),
        AlgebraElement::p(1),
        AlgebraElement::p(2),
    ];

    let pi: [AlgebraElement; 4] =
        std::array::from_fn(|mu| p_up[mu].clone() - theta.scaled(Complex64::from(n_up[mu])));

    let jup = j_upper();
    // J_{αβ} = η_{αα} η_{ββ} J^{αβ} for the diagonal metric
    let jlow: [[AlgebraElement; 4]; 4] = std::array::from_fn(|a| {
        std::array::from_fn(|b| jup[a][b].scaled(Complex64::from(eta_sign(a) * eta_sign(b))))
    });

    let l: [AlgebraElement; 4] = std::array::from_fn(|mu| {
        let mut acc = AlgebraElement::zero();
        for alpha in 0..4 {
            for beta in 0..4 {
                for gamma in 0..4 {
                    let w = 0.5 * eps4(mu, alpha, beta, gamma) * n_low[gamma];
                    if w != 0.0 {
                        acc = acc + jlow[alpha][beta].scaled(Complex64::from(w));
                    }
                }
            }
        }
        acc
    });

    let n_gen: [AlgebraElement; 4] = std::array::from_fn(|mu| {
        let mut acc = AlgebraElement::zero();
        for nu in 0..4 {
            if n_low[nu] != 0.0 {
                acc = acc + jup[nu][mu].scaled(Complex64::from(n_low[nu]));
            }
        }
        acc
    });

    Ok(FoliationGenerators {
        normal: *normal,
        theta,
        pi,
        l,
        n: n_gen,
    })
}

/// Residual of one foliation bracket family, as a max over coefficient
/// vectors.
#[derive(Clone, Debug)]
pub struct FamilyResidual {
    pub family: &'static str,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct FoliationAlgebraReport {
    pub families: Vec<FamilyResidual>,
    pub max_residual: f64,
}

impl FoliationAlgebraReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_residual < tol
    }
}

/// Checks the nine bracket identities of the foliation generators for one
/// normal vector. Residuals are coefficient-vector norms, so a pass is an
/// identity of algebra elements rather than a statement about states.
pub fn verify_foliation_algebra(
    normal: &FourVector,
) -> Result<FoliationAlgebraReport, AlgebraError> {
    let gens = foliation_generators(normal)?;
    let n_up = n_components(normal);
    let n_low: [f64; 4] = std::array::from_fn(|mu| eta_sign(mu) * n_up[mu]);

    let lower =
        |fam: &[AlgebraElement; 4], mu: usize| fam[mu].scaled(Complex64::from(eta_sign(mu)));

    let eps_sum = |mu: usize, nu: usize, fam: &[AlgebraElement; 4]| {
        let mut acc = AlgebraElement::zero();
        for alpha in 0..4 {
            for beta in 0..4 {
                let w = eps4(mu, nu, alpha, beta) * n_up[alpha];
                if w != 0.0 {
                    acc = acc + fam[beta].scaled(Complex64::from(w));
                }
            }
        }
        acc
    };

    let pairwise = |lhs: &dyn Fn(usize, usize) -> AlgebraElement,
                    rhs: &dyn Fn(usize, usize) -> AlgebraElement| {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                worst = worst.max((lhs(mu, nu) - rhs(mu, nu)).max_abs());
            }
        }
        worst
    };
    let against_theta = |fam: &[AlgebraElement; 4], expect: &dyn Fn(usize) -> AlgebraElement| {
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            let lhs = commutator(&lower(fam, mu), &gens.theta);
            worst = worst.max((lhs - expect(mu)).max_abs());
        }
        worst
    };

    let families = vec![
        FamilyResidual {
            family: "[Pi,Pi]=0",
            residual: pairwise(
                &|mu, nu| commutator(&lower(&gens.pi, mu), &lower(&gens.pi, nu)),
                &|_, _| AlgebraElement::zero(),
            ),
        },
        FamilyResidual {
            family: "[Pi,Theta]=0",
            residual: against_theta(&gens.pi, &|_| AlgebraElement::zero()),
        },
        FamilyResidual {
            family: "[L,Theta]=0",
            residual: against_theta(&gens.l, &|_| AlgebraElement::zero()),
        },
        FamilyResidual {
            family: "[L,L]=i eps n L",
            residual: pairwise(
                &|mu, nu| commutator(&lower(&gens.l, mu), &lower(&gens.l, nu)),
                &|mu, nu| eps_sum(mu, nu, &gens.l).scaled(C_I),
            ),
        },
        FamilyResidual {
            family: "[L,Pi]=i eps n Pi",
            residual: pairwise(
                &|mu, nu| commutator(&lower(&gens.l, mu), &lower(&gens.pi, nu)),
                &|mu, nu| eps_sum(mu, nu, &gens.pi).scaled(C_I),
            ),
        },
        FamilyResidual {
            family: "[L,N]=i eps n N",
            residual: pairwise(
                &|mu, nu| commutator(&lower(&gens.l, mu), &lower(&gens.n, nu)),
                &|mu, nu| eps_sum(mu, nu, &gens.n).scaled(C_I),
            ),
        },
        FamilyResidual {
            family: "[N,Pi]=i(eta+nn)Theta",
            residual: pairwise(
                &|mu, nu| commutator(&lower(&gens.n, mu), &lower(&gens.pi, nu)),
                &|mu, nu| {
                    let eta = if mu == nu { eta_sign(mu) } else { 0.0 };
                    gens.theta.scaled(C_I * (eta + n_low[mu] * n_low[nu]))
                },
            ),
        },
        FamilyResidual {
            family: "[N,Theta]=i Pi",
            residual: against_theta(&gens.n, &|mu| lower(&gens.pi, mu).scaled(C_I)),
        },
        FamilyResidual {
            family: "[N,N]=-i eps n L",
            residual: pairwise(
                &|mu, nu| commutator(&lower(&gens.n, mu), &lower(&gens.n, nu)),
                &|mu, nu| eps_sum(mu, nu, &gens.l).scaled(-C_I),
            ),
        },
    ];

    let max_residual = families.iter().map(|f| f.residual).fold(0.0, f64::max);
    Ok(FoliationAlgebraReport {
        families,
        max_residual,
    })
}

/// Checks the given normal plus `samples` random unit timelike normals,
/// reporting the worst residual seen per bracket family.
pub fn verify_foliation_algebra_sampled(
    normal: &FourVector,
    samples: usize,
    seed: u64,
) -> Result<FoliationAlgebraReport, AlgebraError> {
    let mut report = verify_foliation_algebra(normal)?;
    let mut sampler = crate::sampling::Sampler::seed_from(seed);
    for _ in 0..samples {
        let n = sampler.unit_timelike();
        let extra = verify_foliation_algebra(&n)?;
        for (slot, family) in extra.families.iter().enumerate() {
            report.families[slot].residual = report.families[slot].residual.max(family.residual);
        }
        report.max_residual = report.max_residual.max(extra.max_residual);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::Sampler;

    fn assert_bracket(x: &AlgebraElement, y: &AlgebraElement, expect: &AlgebraElement) {
        let got = commutator(x, y);
        assert!(
            (got.clone() - expect.clone()).max_abs() < 1e-15,
            "bracket mismatch: got {got:?}, expected {expect:?}"
        );
    }

    #[test]
    fn structure_constants_match_the_table() {
        let i = C_I;
        // [J1, J2] = i J3
        assert_bracket(
            &AlgebraElement::j(0),
            &AlgebraElement::j(1),
            &AlgebraElement::j(2).scaled(i),
        );
        // [P1, P2] = 0
        assert_bracket(
            &AlgebraElement::p(0),
            &AlgebraElement::p(1),
            &AlgebraElement::zero(),
        );
        // [K1, H] = i P1
        assert_bracket(
            &AlgebraElement::k(0),
            &AlgebraElement::h(),
            &AlgebraElement::p(0).scaled(i),
        );
        // [K1, P1] = i H
        assert_bracket(
            &AlgebraElement::k(0),
            &AlgebraElement::p(0),
            &AlgebraElement::h().scaled(i),
        );
        // [K1, K2] = -i J3
        assert_bracket(
            &AlgebraElement::k(0),
            &AlgebraElement::k(1),
            &AlgebraElement::j(2).scaled(-i),
        );
        // [J1, P2] = i P3, [J1, K2] = i K3
        assert_bracket(
            &AlgebraElement::j(0),
            &AlgebraElement::p(1),
            &AlgebraElement::p(2).scaled(i),
        );
        assert_bracket(
            &AlgebraElement::j(0),
            &AlgebraElement::k(1),
            &AlgebraElement::k(2).scaled(i),
        );
        // [P1, H] = [J1, H] = 0
        assert_bracket(
            &AlgebraElement::p(0),
            &AlgebraElement::h(),
            &AlgebraElement::zero(),
        );
        assert_bracket(
            &AlgebraElement::j(0),
            &AlgebraElement::h(),
            &AlgebraElement::zero(),
        );
    }

    #[test]
    fn antisymmetry_is_exact() {
        for a in 0..DIM {
            for b in 0..DIM {
                let x = AlgebraElement::basis(a);
                let y = AlgebraElement::basis(b);
                let sum = commutator(&x, &y) + commutator(&y, &x);
                assert_eq!(sum.max_abs(), 0.0);
            }
        }
    }

    #[test]
    fn jacobi_identity_on_all_triples() {
        assert!(jacobi_residual() < 1e-12);
    }

    #[test]
    fn coordinate_frame_reduction() {
        let n = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let gens = foliation_generators(&n).unwrap();
        assert!((gens.theta.clone() - AlgebraElement::h()).max_abs() < 1e-15);
        assert!(gens.pi[0].max_abs() < 1e-15);
        for i in 0..3 {
            assert!((gens.pi[1 + i].clone() - AlgebraElement::p(i)).max_abs() < 1e-15);
            assert!((gens.l[1 + i].clone() - AlgebraElement::j(i)).max_abs() < 1e-15);
            assert!((gens.n[1 + i].clone() - AlgebraElement::k(i)).max_abs() < 1e-15);
        }
        assert!(gens.l[0].max_abs() < 1e-15);
        assert!(gens.n[0].max_abs() < 1e-15);

        let report = verify_foliation_algebra(&n).unwrap();
        assert_eq!(report.max_residual, 0.0, "families: {:?}", report.families);
    }

    #[test]
    fn boosted_normal_theta_is_a_boosted_hamiltonian() {
        let chi = 0.3f64;
        let n = FourVector::new(chi.cosh(), 0.0, 0.0, chi.sinh());
        let gens = foliation_generators(&n).unwrap();
        let expect = AlgebraElement::h().scaled(Complex64::from(chi.cosh()))
            - AlgebraElement::p(2).scaled(Complex64::from(chi.sinh()));
        assert!((gens.theta.clone() - expect).max_abs() < 1e-15);

        // The opposite orientation flips the P3 coefficient.
        let n = FourVector::new(chi.cosh(), 0.0, 0.0, -chi.sinh());
        let gens = foliation_generators(&n).unwrap();
        let expect = AlgebraElement::h().scaled(Complex64::from(chi.cosh()))
            + AlgebraElement::p(2).scaled(Complex64::from(chi.sinh()));
        assert!((gens.theta.clone() - expect).max_abs() < 1e-15);
    }

    #[test]
    fn normal_orthogonality_of_families() {
        let mut sampler = Sampler::seed_from(21);
        for _ in 0..20 {
            let n = sampler.unit_timelike();
            let gens = foliation_generators(&n).unwrap();
            let n_low = [-n.t, n.x, n.y, n.z];
            for fam in [&gens.pi, &gens.l, &gens.n] {
                let mut acc = AlgebraElement::zero();
                for mu in 0..4 {
                    acc = acc + fam[mu].scaled(Complex64::from(n_low[mu]));
                }
                assert!(acc.max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn foliation_brackets_hold_for_random_normals() {
        let mut sampler = Sampler::seed_from(37);
        for _ in 0..100 {
            let n = sampler.unit_timelike();
            let report = verify_foliation_algebra(&n).unwrap();
            assert!(
                report.passes(1e-10),
                "n = {n:?}, families: {:?}",
                report.families
            );
        }
    }

    #[test]
    fn spacelike_normal_is_rejected() {
        let n = FourVector::new(0.0, 0.0, 0.0, 1.0); // n·n = +1
        match foliation_generators(&n) {
            Err(AlgebraError::NotUnitTimelike { norm_sq }) => {
                assert!((norm_sq - 1.0).abs() < 1e-15)
            }
            other => panic!("unexpected: {other:?}"),
        }
        let past = FourVector::new(-1.0, 0.0, 0.0, 0.0);
        assert!(matches!(
            foliation_generators(&past),
            Err(AlgebraError::NotFuturePointing { .. })
        ));
    }
}
