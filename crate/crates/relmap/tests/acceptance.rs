//! Acceptance suite: every criterion runs at its stated tolerance and
//! prints one pass/fail line. Run with `--nocapture` to see the lines.

use std::time::Instant;

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;

use relmap::algebra::{jacobi_residual, verify_foliation_algebra};
use relmap::channel::{
    apply_e, apply_phi, choi, covariance_check, dilation_extract, kraus_set,
    partial_trace_evolution, ChannelParams,
};
use relmap::constraints::{classify, reseeded_dimensions, CaseTag, SampleBudget};
use relmap::covariant::{
    apply_e_cov, apply_phi_cov, covariant_generator_check, evolve_cov, u_tau, Foliation,
};
use relmap::fock::{AtomBasis, DensityOperator};
use relmap::kernels::KernelFamily;
use relmap::minkowski::FourVector;
use relmap::observables::{moments, verify_momentum_conservation, GeneratorSelector};
use relmap::rep::{act_poincare, align_residual, time_evolve, u_t, PoincareElement};
use relmap::sampling::Sampler;

fn report(criterion: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("acceptance {criterion}: {verdict} ({detail})");
    assert!(pass, "{criterion} failed: {detail}");
}

fn random_valid_params(s: &mut Sampler, basis: &AtomBasis, t: f64, t0: f64) -> ChannelParams {
    loop {
        let beta = s.uniform(0.0, 0.3);
        let gamma = Complex64::new(s.uniform(-0.8, 0.2), s.uniform(-0.5, 0.5));
        let family = if s.uniform(0.0, 1.0) < 0.5 {
            KernelFamily::Constant
        } else {
            KernelFamily::ExponentialInS {
                lambda: s.uniform(0.0, 2.0),
            }
        };
        if let Ok(p) = ChannelParams::validate(beta, gamma, family, t, t0, basis) {
            return p;
        }
    }
}

#[test]
fn criterion_1_cptp_suite() {
    let mut s = Sampler::seed_from(101);
    let mut max_trace = 0.0f64;
    let mut max_completeness = 0.0f64;
    let mut min_choi = f64::INFINITY;
    for trial in 0..50 {
        let atoms = 1 + trial % 6;
        let basis = s.basis(1.0, atoms);
        let params = random_valid_params(&mut s, &basis, 1.0, -0.2);
        let rho = s.density(basis.dim());

        let out = apply_e(&params, &basis, &rho).unwrap();
        max_trace = max_trace.max((out.trace().re - 1.0).abs());

        let set = kraus_set(&params, &basis).unwrap();
        max_completeness = max_completeness.max(set.completeness_residual());

        min_choi = min_choi.min(choi(&params, &basis).min_eigenvalue());
    }
    let pass = max_trace < 1e-12 && max_completeness < 1e-11 && min_choi >= -1e-10;
    report(
        "criterion 1 (CPTP suite)",
        pass,
        format!(
            "trace residual {max_trace:.2e}, completeness {max_completeness:.2e}, Choi min {min_choi:.2e}"
        ),
    );
}

#[test]
fn criterion_2_poincare_covariance() {
    let start = Instant::now();
    let mut s = Sampler::seed_from(102);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let atoms = 2 + trial % 3;
        let basis = s.basis(1.0, atoms);
        let params = random_valid_params(&mut s, &basis, 0.9, 0.1);
        let rho = s.density(basis.dim());
        let g = PoincareElement {
            lambda: s.lorentz(),
            translation: s.four_vector(1.0),
        };
        worst = worst.max(covariance_check(&params, &basis, &g, &rho).unwrap());
    }
    let elapsed = start.elapsed();
    let pass = worst < 1e-10 && elapsed.as_secs_f64() < 10.0;
    report(
        "criterion 2 (Poincare covariance)",
        pass,
        format!(
            "max residual {worst:.2e} over 100 trials in {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_3_four_momentum_conservation() {
    let mut s = Sampler::seed_from(103);
    let basis = s.basis(1.0, 3);

    // β = 0: conservation outright
    let conserved = ChannelParams::validate(
        0.0,
        Complex64::new(-0.35, 0.15),
        KernelFamily::ExponentialInS { lambda: 0.8 },
        1.3,
        0.2,
        &basis,
    )
    .unwrap();
    let rho = s.density(basis.dim());
    let samples: Vec<FourVector> = (0..20).map(|_| s.four_vector(2.0)).collect();
    let rep0 = verify_momentum_conservation(&conserved, &basis, &rho, &samples).unwrap();

    // β > 0: the defect must equal the closed formula
    let pumping = ChannelParams::validate(
        0.18,
        Complex64::new(-0.3, 0.0),
        KernelFamily::Constant,
        1.3,
        0.2,
        &basis,
    )
    .unwrap();
    let rep1 = verify_momentum_conservation(&pumping, &basis, &rho, &samples).unwrap();

    let pass = rep0.max_defect < 1e-12 && rep1.max_residual < 1e-10;
    report(
        "criterion 3 (four-momentum conservation)",
        pass,
        format!(
            "beta=0 defect {:.2e}, beta>0 formula residual {:.2e}",
            rep0.max_defect, rep1.max_residual
        ),
    );
}

#[test]
fn criterion_4_unitary_reduction() {
    let mut s = Sampler::seed_from(104);
    let basis = s.basis(1.0, 4);
    let dim = basis.dim();

    let one_particle_density = |s: &mut Sampler| {
        let g = s.ginibre(dim - 1, dim - 1);
        let block = &g * g.adjoint();
        let norm = block.trace().re;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        for r in 0..dim - 1 {
            for c in 0..dim - 1 {
                m[(1 + r, 1 + c)] = block[(r, c)] / norm;
            }
        }
        DensityOperator::from_matrix_unchecked(m)
    };

    let mut worst = 0.0f64;
    // the worked point γ = −0.5, δ₀ = 0.75 plus random γ on the β = 0 shell
    let mut gammas = vec![Complex64::new(-0.5, 0.0)];
    while gammas.len() < 5 {
        gammas.push(Complex64::new(s.uniform(-0.9, -0.1), s.uniform(-0.3, 0.3)));
    }
    for gamma in gammas {
        let params =
            match ChannelParams::validate(0.0, gamma, KernelFamily::Constant, 1.1, 0.3, &basis) {
                Ok(p) => p,
                Err(_) => continue,
            };
        if gamma == Complex64::new(-0.5, 0.0) {
            assert!((params.delta0() - 0.75).abs() < 1e-15);
        }
        for _ in 0..20 {
            let rho = one_particle_density(&mut s);
            let phi = apply_phi(&params, &basis, &rho).unwrap();
            let unitary = time_evolve(params.t, params.t0, &basis, &rho);
            worst = worst.max(phi.max_abs_diff(&unitary));
        }
    }
    report(
        "criterion 4 (unitary reduction)",
        worst < 1e-11,
        format!("max |Phi - U| = {worst:.2e}"),
    );
}

#[test]
fn criterion_5_little_group_case_table() {
    let budget = SampleBudget::default();
    let r1 = classify(CaseTag::I, 1.0, &budget).unwrap();
    let r2 = classify(CaseTag::II, 1.0, &budget).unwrap();
    let r3 = classify(CaseTag::III, 1.0, &budget).unwrap();
    let r4 = classify(CaseTag::IV, 1.0, &budget).unwrap();

    let case_i = r1.final_dimension == 1
        && r1.support.b[0] > 0.99
        && r1.support.a < 1e-8
        && r1.support.c_diag < 1e-8
        && r1.support.c_offdiag < 1e-8;
    let case_ii = r2.final_dimension == 0;
    let case_iii = r3.raw_dimension == 1 && r3.continuum_excluded == 1 && r3.final_dimension == 0;
    let case_iv = r4.final_dimension == 2 && r4.support.c_diag_variance < 1e-16;

    let mut stable = true;
    for tag in [CaseTag::I, CaseTag::II, CaseTag::III, CaseTag::IV] {
        let dims = reseeded_dimensions(tag, 1.0, &budget, 10).unwrap();
        stable &= dims.windows(2).all(|w| w[0] == w[1]);
    }

    let pass = case_i && case_ii && case_iii && case_iv && stable;
    report(
        "criterion 5 (little-group case table)",
        pass,
        format!(
            "dims I:{} II:{} III:{}(raw {}) IV:{} (C-var {:.1e}), stable: {stable}",
            r1.final_dimension,
            r2.final_dimension,
            r3.final_dimension,
            r3.raw_dimension,
            r4.final_dimension,
            r4.support.c_diag_variance
        ),
    );
}

#[test]
fn criterion_6_lie_algebra_suite() {
    use relmap::algebra::{commutator, AlgebraElement};
    let i = Complex64::new(0.0, 1.0);
    // the full bracket table, hard-coded expectations
    let mut table_exact = true;
    let eps = |i: usize, j: usize, k: usize| -> f64 {
        match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
            (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
            _ => 0.0,
        }
    };
    for a in 0..3 {
        for b in 0..3 {
            // [J_a, J_b] = i ε J, [J_a, P_b] = i ε P, [J_a, K_b] = i ε K
            let mut jj = AlgebraElement::zero();
            let mut jp = AlgebraElement::zero();
            let mut jk = AlgebraElement::zero();
            for k in 0..3 {
                jj = jj + AlgebraElement::j(k).scaled(i * eps(a, b, k));
                jp = jp + AlgebraElement::p(k).scaled(i * eps(a, b, k));
                jk = jk + AlgebraElement::k(k).scaled(i * eps(a, b, k));
            }
            table_exact &=
                (commutator(&AlgebraElement::j(a), &AlgebraElement::j(b)) - jj).max_abs() == 0.0;
            table_exact &=
                (commutator(&AlgebraElement::j(a), &AlgebraElement::p(b)) - jp).max_abs() == 0.0;
            table_exact &=
                (commutator(&AlgebraElement::j(a), &AlgebraElement::k(b)) - jk).max_abs() == 0.0;
            // [P_a, P_b] = 0, [K_a, K_b] = −i ε J, [K_a, P_b] = i δ H
            table_exact &=
                commutator(&AlgebraElement::p(a), &AlgebraElement::p(b)).max_abs() == 0.0;
            let mut kk = AlgebraElement::zero();
            for k in 0..3 {
                kk = kk + AlgebraElement::j(k).scaled(-i * eps(a, b, k));
            }
            table_exact &=
                (commutator(&AlgebraElement::k(a), &AlgebraElement::k(b)) - kk).max_abs() == 0.0;
            let kp = if a == b {
                AlgebraElement::h().scaled(i)
            } else {
                AlgebraElement::zero()
            };
            table_exact &=
                (commutator(&AlgebraElement::k(a), &AlgebraElement::p(b)) - kp).max_abs() == 0.0;
        }
        table_exact &= commutator(&AlgebraElement::p(a), &AlgebraElement::h()).max_abs() == 0.0;
        table_exact &= commutator(&AlgebraElement::j(a), &AlgebraElement::h()).max_abs() == 0.0;
        let kh = AlgebraElement::p(a).scaled(i);
        table_exact &=
            (commutator(&AlgebraElement::k(a), &AlgebraElement::h()) - kh).max_abs() == 0.0;
    }

    let mut s = Sampler::seed_from(106);
    let mut worst_family = 0.0f64;
    for _ in 0..100 {
        let n = s.unit_timelike();
        let rep = verify_foliation_algebra(&n).unwrap();
        worst_family = worst_family.max(rep.max_residual);
    }
    let jacobi = jacobi_residual();

    let pass = table_exact && worst_family < 1e-10 && jacobi < 1e-12;
    report(
        "criterion 6 (Lie algebra suite)",
        pass,
        format!("table exact: {table_exact}, foliation residual {worst_family:.2e}, Jacobi {jacobi:.2e}"),
    );
}

#[test]
fn criterion_7_group_law_and_conjugation() {
    let mut s = Sampler::seed_from(107);
    let basis = s.basis(1.0, 3);
    let mut worst_law = 0.0f64;
    let mut worst_conjugation = 0.0f64;
    for _ in 0..100 {
        let rho = s.density(basis.dim());
        let t = s.uniform(-1.0, 1.0);
        let g1 = PoincareElement {
            lambda: s.lorentz(),
            translation: s.four_vector(1.0),
        };
        let g2 = PoincareElement {
            lambda: s.lorentz(),
            translation: s.four_vector(1.0),
        };

        // group law at fixed t
        let (b_step, r_step) = u_t(&g1, t, &basis, &rho);
        let (b_step, r_step) = u_t(&g2, t, &b_step, &r_step);
        let (b_comp, r_comp) = u_t(&g2.compose(&g1), t, &basis, &rho);
        worst_law = worst_law.max(align_residual(&b_step, &r_step, &b_comp, &r_comp).unwrap());

        // invariance of the unitary map, the identity U_t is built for:
        // evolve-then-transport(t) equals transport(t0)-then-evolve
        let (t1, t0) = (t, s.uniform(-1.0, 1.0));
        let evolved = time_evolve(t1, t0, &basis, &rho);
        let (b_a, r_a) = u_t(&g1, t1, &basis, &evolved);
        let (b_b, moved) = u_t(&g1, t0, &basis, &rho);
        let r_b = time_evolve(t1, t0, &b_b, &moved);
        worst_conjugation = worst_conjugation.max(align_residual(&b_a, &r_a, &b_b, &r_b).unwrap());
    }
    let pass = worst_law < 1e-11 && worst_conjugation < 1e-11;
    report(
        "criterion 7 (group law and U_t conjugation)",
        pass,
        format!("group law {worst_law:.2e}, conjugation {worst_conjugation:.2e}"),
    );
}

#[test]
fn criterion_8_dilation_round_trip() {
    let mut s = Sampler::seed_from(108);
    let mut worst_completeness = 0.0f64;
    let mut worst_evolution = 0.0f64;
    for (sys_dim, env_dim) in [(2usize, 2usize), (3, 3)] {
        let total = sys_dim * env_dim;
        for mixed in [false, true] {
            let u = s.unitary(total);
            let env = if mixed {
                s.density(env_dim)
            } else {
                DensityOperator::vacuum(env_dim)
            };
            let set = dilation_extract(&u, env_dim, &env).unwrap();
            worst_completeness = worst_completeness.max(set.completeness_residual());
            for _ in 0..20 {
                let rho = s.density(sys_dim);
                let via_kraus = set.apply(&rho);
                let direct = partial_trace_evolution(&u, env_dim, &env, &rho);
                let diff = (via_kraus.matrix() - direct).map(|z| z.norm()).max();
                worst_evolution = worst_evolution.max(diff);
            }
        }
    }
    let pass = worst_completeness < 1e-10 && worst_evolution < 1e-10;
    report(
        "criterion 8 (dilation round trip)",
        pass,
        format!("completeness {worst_completeness:.2e}, evolution {worst_evolution:.2e}"),
    );
}

#[test]
fn criterion_9_covariant_layer_equivalence() {
    let mut s = Sampler::seed_from(109);
    let basis = s.basis(1.0, 3);
    let special = Foliation::special_frame();

    let mut worst_special = 0.0f64;
    for _ in 0..20 {
        let rho = s.density(basis.dim());
        let params = random_valid_params(&mut s, &basis, 1.2, 0.1);

        let (tau, tau0) = (params.t, params.t0);
        worst_special = worst_special.max(
            evolve_cov(&special, tau, tau0, &basis, &rho)
                .max_abs_diff(&time_evolve(tau, tau0, &basis, &rho)),
        );
        worst_special = worst_special.max(
            apply_e_cov(&params, &special, &basis, &rho)
                .unwrap()
                .max_abs_diff(&apply_e(&params, &basis, &rho).unwrap()),
        );
        worst_special = worst_special.max(
            apply_phi_cov(&params, &special, &basis, &rho)
                .unwrap()
                .max_abs_diff(&apply_phi(&params, &basis, &rho).unwrap()),
        );

        let g = PoincareElement {
            lambda: s.lorentz(),
            translation: s.four_vector(1.0),
        };
        let t = s.uniform(-1.0, 1.0);
        let (b_cov, r_cov) = u_tau(&g, t, &special, &basis, &rho);
        let (b_t, r_t) = u_t(&g, t, &basis, &rho);
        worst_special = worst_special.max(align_residual(&b_cov, &r_cov, &b_t, &r_t).unwrap());

        // τ of (t, x⃗) in the special frame is t
        let x = s.four_vector(2.0);
        worst_special = worst_special.max((special.tau_of(&x) - x.t).abs());
    }

    let mut worst_generator = 0.0f64;
    for k in 0..5 {
        let fol = Foliation::new(s.unit_timelike(), s.four_vector(1.0)).unwrap();
        let rep = covariant_generator_check(&fol, &basis, 20, 500 + k).unwrap();
        worst_generator = worst_generator.max(rep.max_residual);
    }

    let pass = worst_special < 1e-12 && worst_generator < 1e-11;
    report(
        "criterion 9 (covariant layer)",
        pass,
        format!("special frame {worst_special:.2e}, generator check {worst_generator:.2e}"),
    );
}

#[test]
fn criterion_10_moment_cross_check() {
    let mut s = Sampler::seed_from(110);
    let basis = s.basis(1.0, 3);
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let rho = s.density(basis.dim());
        for order in 1..=4 {
            let check = moments(&rho, &basis, GeneratorSelector::Energy, order).unwrap();
            worst = worst.max(check.relative_error);
        }
    }
    // the two-atom worked fixture: w₁E₁² + w₂E₂²
    let basis2 = AtomBasis::new(
        1.0,
        vec![Vector3::new(0.4, 0.0, 0.0), Vector3::new(0.0, -0.7, 0.3)],
    )
    .unwrap();
    let mut m = DMatrix::<Complex64>::zeros(3, 3);
    m[(1, 1)] = Complex64::new(0.35, 0.0);
    m[(2, 2)] = Complex64::new(0.65, 0.0);
    let rho2 = DensityOperator::from_matrix_unchecked(m);
    let check = moments(&rho2, &basis2, GeneratorSelector::Energy, 2).unwrap();
    let expect = 0.35 * basis2.atom(0).energy().powi(2) + 0.65 * basis2.atom(1).energy().powi(2);
    let fixture_ok = (check.direct - expect).abs() < 1e-15 && check.relative_error < 1e-6;
    worst = worst.max(check.relative_error);

    let pass = worst < 1e-6 && fixture_ok;
    report(
        "criterion 10 (moment cross-check)",
        pass,
        format!("max relative error {worst:.2e}"),
    );
}

#[test]
fn auxiliary_translation_covariance_of_u_t_actions() {
    // U_t actions applied to the vacuum state leave it fixed: a cheap
    // sanity anchor for the whole representation layer.
    let mut s = Sampler::seed_from(111);
    let basis = s.basis(1.0, 2);
    let vac = DensityOperator::vacuum(basis.dim());
    for _ in 0..20 {
        let g = PoincareElement {
            lambda: s.lorentz(),
            translation: s.four_vector(1.0),
        };
        let (b2, out) = act_poincare(&g, &basis, &vac);
        assert!((out.matrix()[(0, 0)].re - 1.0).abs() < 1e-14);
        drop(b2);
    }
}
