mod common;

use behavcon::behavior::{behaviour_equal, eliminate_latent, includes};
use behavcon::contracts::{
    compatible, conjunction, implements, refines, verify_implementation_certificate, ConjunctionCondition,
    Environment, RefinementOutcome,
};
use behavcon::vehiclesim::models::{
    controlled_vehicle, implementation_witness, kinematic_contract, leader_environment, spacing_contract,
    vehicle_and_controller,
};
use behavcon::vehiclesim::{
    build_follower, check_exponential_decay, max_decay_deviation, simulate, spacing_error, vehicle_cascade,
    PiecewiseSignal, ScenarioConfig,
};
use behavcon::{QPolyMatrix, Rational};
use behavcon_oracle::mul_oracle;
use common::*;

fn params() -> Vec<(Rational, Rational)> {
    vec![(q(1, 1), q(1, 1)), (q(2, 1), q(1, 2)), (q(1, 3), q(5, 1)), (q(3, 2), q(3, 2))]
}

#[test]
fn state_space_realizes_the_polynomial_model() {
    for (h, k) in params() {
        let realized = build_follower(h.clone(), k.clone()).unwrap().io_system().unwrap();
        let model = controlled_vehicle(h.clone(), k.clone());
        assert!(behaviour_equal(&realized.kernel(), &model.kernel()).unwrap(), "h={h} k={k}");
        let eliminated = eliminate_latent(&vehicle_and_controller(h, k));
        assert!(behaviour_equal(&eliminated, &model.kernel()).unwrap());
    }
}

#[test]
fn unit_parameters_give_the_expected_matrices() {
    let f = build_follower(1.0_f64, 1.0).unwrap();
    assert_eq!(f.a.data(), &[0.0, 1.0, -1.0, -2.0]);
    assert_eq!(f.b.data(), &[0.0, 0.0, 1.0, 1.0]);
}

#[test]
fn controlled_vehicle_implements_spacing_contract() {
    for (h, k) in params() {
        let sys = controlled_vehicle(h.clone(), k.clone());
        let c = spacing_contract(h.clone(), k);
        let v = implements(&sys, &c).unwrap();
        assert!(v.holds);
        let (m1, m2) = v.certificate.unwrap();
        assert!(verify_implementation_certificate(&sys, &c, &m1, &m2));
        let (w1, w2) = implementation_witness(h);
        assert!(verify_implementation_certificate(&sys, &c, &w1, &w2));
    }
}

#[test]
fn identity_holds_by_hand() {
    // [G, -H] = [M1, M2] [[P, -Q], [0, -A]] with independent multiplication.
    let (h, k) = (q(2, 1), q(1, 2));
    let sys = controlled_vehicle(h.clone(), k.clone());
    let c = spacing_contract(h.clone(), k);
    let (m1, m2) = implementation_witness(h);
    let top = sys.p.hstack(&sys.q.neg()).unwrap();
    let bottom = QPolyMatrix::zeros(1, 2).hstack(&c.assumptions.a.neg()).unwrap();
    let rhs = mul_oracle(&m1.hstack(&m2).unwrap(), &top.vstack(&bottom).unwrap());
    assert_eq!(rhs, c.guarantees.g.hstack(&c.guarantees.h.neg()).unwrap());
}

#[test]
fn leaders_are_compatible() {
    let c = spacing_contract(q(1, 1), q(1, 1));
    for damping in [q(1, 4), q(1, 2)] {
        let env = Environment::Latent(leader_environment(damping));
        let cert = compatible(&env, &c).unwrap().expect("compatible");
        let e = env.input_behaviour();
        assert_eq!(&mul_oracle(cert.matrix(), e.matrix()), c.assumptions.input_behaviour().matrix());
    }
}

#[test]
fn conjunction_of_the_two_contracts() {
    let (h, k) = (q(1, 1), q(1, 1));
    let c1 = spacing_contract(h.clone(), k.clone());
    let c2 = kinematic_contract();
    let res = conjunction(&c1, &c2).unwrap();
    assert_eq!(res.which_condition, Some(ConjunctionCondition::SameAssumptions));
    assert!(includes(&res.contract.assumptions.input_behaviour(), &c1.assumptions.input_behaviour())
        .unwrap()
        .is_some());
    assert!(implements(&controlled_vehicle(h, k), &res.contract).unwrap().holds);
    for c in [&c1, &c2] {
        assert_eq!(refines(&res.contract, c).unwrap().outcome, RefinementOutcome::Refines);
    }
}

fn run(c: f64, step: f64) -> Vec<f64> {
    let cfg = ScenarioConfig { c, step, ..ScenarioConfig::default() };
    let traj = simulate(&vehicle_cascade(&cfg).unwrap(), &PiecewiseSignal::vehicle_demo(), &cfg).unwrap();
    spacing_error(&traj, cfg.h).unwrap()
}

#[test]
fn spacing_error_decays_for_both_leaders() {
    for c in [0.25, 0.5] {
        let eps = run(c, 1e-3);
        assert_eq!(eps.len(), 30_001);
        assert_eq!(eps[0], 1.0);
        assert!(check_exponential_decay(&eps, 1.0, 1e-3, 1e-6), "c = {c}");
    }
}

#[test]
fn rk4_is_fourth_order_at_coarse_steps() {
    for c in [0.25, 0.5] {
        let errs: Vec<f64> = [0.2, 0.1, 0.05]
            .iter()
            .map(|&dt| max_decay_deviation(&run(c, dt), 1.0, dt))
            .collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((12.0..20.0).contains(&ratio), "c = {c}, ratio {ratio}");
        }
    }
}

#[test]
fn leader_position_integrates_velocity() {
    let cfg = ScenarioConfig::<f64>::default();
    let traj = simulate(&vehicle_cascade(&cfg).unwrap(), &PiecewiseSignal::vehicle_demo(), &cfg).unwrap();
    let (u1, u2) = (traj.channel("u1").unwrap(), traj.channel("u2").unwrap());
    for i in 1..u1.len() - 1 {
        let central = (u1[i + 1] - u1[i - 1]) / (2.0 * cfg.step);
        assert!((central - u2[i]).abs() < 1e-3, "t = {}", i as f64 * cfg.step);
    }
}

#[test]
fn initial_spacing_error_is_configurable() {
    let cfg = ScenarioConfig::<f64>::default().with_initial_spacing_error(-3.0);
    assert_eq!(cfg.initial_spacing_error(), -3.0);
    let traj = simulate(&vehicle_cascade(&cfg).unwrap(), &PiecewiseSignal::constant(0.0), &cfg).unwrap();
    let eps = spacing_error(&traj, cfg.h).unwrap();
    assert_eq!(eps[0], -3.0);
    assert!(check_exponential_decay(&eps, cfg.k, cfg.step, 1e-6));
    assert!(eps[eps.len() - 1].abs() < 1e-12);
}

#[test]
fn csv_has_header_and_every_sample() {
    let cfg = ScenarioConfig { horizon: 1.0, step: 0.25, ..ScenarioConfig::<f64>::default() };
    let traj = simulate(&vehicle_cascade(&cfg).unwrap(), &PiecewiseSignal::vehicle_demo(), &cfg).unwrap();
    let csv = traj.to_csv(cfg.h).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "t,u1,u2,y1,y2,eps");
    assert_eq!(lines.len(), 1 + 5);
    assert!(lines[1].starts_with("0,"));
}

#[test]
fn nonpositive_parameters_are_rejected() {
    for cfg in [
        ScenarioConfig { k: 0.0, ..ScenarioConfig::<f64>::default() },
        ScenarioConfig { h: -1.0, ..ScenarioConfig::default() },
        ScenarioConfig { step: 0.0, ..ScenarioConfig::default() },
        ScenarioConfig { horizon: f64::NAN, ..ScenarioConfig::default() },
    ] {
        assert!(vehicle_cascade(&cfg).is_err());
    }
    assert!(build_follower(q(0, 1), q(1, 1)).is_err());
}

#[test]
fn policy_start_keeps_spacing_error_at_zero() {
    for c in [0.25, 0.5] {
        let cfg = ScenarioConfig { c, ..ScenarioConfig::<f64>::default() }.with_initial_spacing_error(0.0);
        let traj = simulate(&vehicle_cascade(&cfg).unwrap(), &PiecewiseSignal::vehicle_demo(), &cfg).unwrap();
        let eps = spacing_error(&traj, cfg.h).unwrap();
        assert!(eps.iter().all(|e| e.abs() < 1e-12), "c = {c}");
    }
}
