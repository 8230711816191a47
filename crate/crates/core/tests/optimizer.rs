use khash::functionals::*;
use khash::simplex::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

fn dirichlet(rng: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..k).map(|_| rng.sample(Exp1)).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|v| v / s).collect()
}

fn fd_check<O: Objective<f64>>(obj: &O, x: &[f64]) {
    let h = 1e-6;
    let mut grad = vec![0.0; x.len()];
    obj.gradient(x, &mut grad);
    for i in 0..x.len() {
        let mut xp = x.to_vec();
        let mut xm = x.to_vec();
        xp[i] += h;
        xm[i] -= h;
        let fd = (obj.value(&xp) - obj.value(&xm)) / (2.0 * h);
        let scale = grad[i].abs().max(1e-3);
        assert!(
            (fd - grad[i]).abs() <= 1e-5 * scale,
            "coordinate {i}: analytic {} vs difference {fd}",
            grad[i]
        );
    }
}

#[test]
fn functional_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for trial in 0..100 {
        let k = 4 + trial % 4;
        let sels = enumerate_selections(k).unwrap();
        let sel = sels[trial % sels.len()].clone();
        let gamma = rng.gen_range(0.05..=1.0) / k as f64;
        let spec = FunctionalSpec::new(sel, gamma).unwrap();
        fd_check(&spec, &dirichlet(&mut rng, k));
    }
}

#[test]
fn phi_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..100 {
        let k = 4 + trial % 3;
        let obj = PhiObjective::new(k, Some(0.1)).unwrap();
        let mut x = dirichlet(&mut rng, k);
        x.extend(dirichlet(&mut rng, k));
        fd_check(&obj, &x);
    }
}

fn small_cfg(seed: u64) -> OptimizerConfig {
    OptimizerConfig {
        num_starts: 40,
        seed,
        ..OptimizerConfig::default()
    }
}

#[test]
fn optimizer_dominates_grid_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in [4usize, 5] {
        let sels = enumerate_selections(k).unwrap();
        for _ in 0..20 {
            let sel = sels[rng.gen_range(0..sels.len())].clone();
            let gamma = rng.gen_range(0.3..=1.0) / k as f64;
            let spec = FunctionalSpec::new(sel, gamma).unwrap();
            let opt = maximize(&spec, &small_cfg(3)).unwrap();
            let grid = grid_oracle(&spec, 25, 10_000_000).unwrap();
            assert!(opt.value >= grid.value - 1e-9, "k={k} gamma={gamma}");
            assert!(opt.value - grid.value <= 0.02);
            assert!(opt.best_converged, "k={k} gamma={gamma} sel={} it={} conv={}/{} x={:?}", spec.selection(), opt.best_iterations, opt.starts_converged, opt.num_starts, opt.argmax().coords());
        }
    }
}

#[test]
fn ordered_restriction_agrees_with_plain_maximum() {
    for k in [4usize, 5] {
        let spec = FunctionalSpec::new(conjectured_selection(k).unwrap(), 0.8 / k as f64).unwrap();
        let plain = maximize(&spec, &small_cfg(0)).unwrap();
        let ordered = Ordered::new(&spec).unwrap();
        let res = maximize(&ordered, &small_cfg(0)).unwrap();
        assert!((plain.value - res.value).abs() < 1e-9);
        let g = res.argmax().coords();
        assert!(g.windows(2).all(|w| w[0] >= w[1] - 1e-12));
    }
}

#[test]
fn maximize_is_deterministic_and_feasible() {
    let spec = FunctionalSpec::new(conjectured_selection(6).unwrap(), 0.12).unwrap();
    let a = maximize(&spec, &small_cfg(42)).unwrap();
    let b = maximize(&spec, &small_cfg(42)).unwrap();
    assert_eq!(a, b);
    let g = a.argmax().coords();
    assert!(g.iter().all(|&v| v >= 0.0));
    assert!((g.iter().sum::<f64>() - 1.0).abs() < 1e-12);

    let obj = PhiObjective::new(5, Some(0.15)).unwrap();
    let r = maximize(&obj, &small_cfg(1)).unwrap();
    assert_eq!(r.points.len(), 2);
    assert!(r.points[1].coords().iter().all(|&v| v >= 0.15 - 1e-12));
}

#[test]
fn envelope_is_monotone_in_gamma() {
    // the unselected products are never larger than the selected ones at the
    // maximizer, so raising gamma can only lower the envelope
    for k in [4usize, 5] {
        let mut prev = f64::INFINITY;
        for step in 1..=8 {
            let gamma = step as f64 / (8.0 * k as f64);
            let sweep = maximize_all_selections(k, gamma, &small_cfg(0)).unwrap();
            let v = sweep.best_value();
            assert!(v <= prev + 1e-9, "k={k} gamma={gamma}");
            prev = v;
        }
    }
}

#[test]
fn phi_maximum_at_uniform_threshold_is_alpha() {
    let k = 4;
    let obj = PhiObjective::<f64>::new(k, Some(0.25)).unwrap();
    let r = maximize(&obj, &small_cfg(0)).unwrap();
    assert!((r.value - 3.0 / 8.0).abs() < 1e-9);
}

#[test]
fn grid_oracle_budget_is_enforced() {
    let spec = FunctionalSpec::new(conjectured_selection(6).unwrap(), 0.1).unwrap();
    assert!(matches!(grid_oracle(&spec, 30, 1000), Err(khash::Error::Budget { .. })));
}

fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.partial_cmp(a).unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn phi_permutation_symmetric(seed in any::<u64>(), k in 4usize..=6, shift in 1usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = dirichlet(&mut rng, k);
        let f = dirichlet(&mut rng, k);
        let rot = |v: &[f64]| (0..k).map(|i| v[(i + shift) % k]).collect::<Vec<_>>();
        let a = phi(&SimplexPoint::new(g.clone()).unwrap(), &SimplexPoint::new(f.clone()).unwrap()).unwrap();
        let b = phi(&SimplexPoint::new(rot(&g)).unwrap(), &SimplexPoint::new(rot(&f)).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-14);
    }

    #[test]
    fn phi_below_ordered_statistic_bound(seed in any::<u64>(), k in 4usize..=7, t in 0.05f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gamma = t / k as f64;
        let g = dirichlet(&mut rng, k);
        let f: Vec<f64> = dirichlet(&mut rng, k)
            .into_iter()
            .map(|v| gamma + (1.0 - k as f64 * gamma) * v)
            .collect();
        let family = enumerate_subsets(k).unwrap();
        let p = phi(&SimplexPoint::new(g.clone()).unwrap(), &SimplexPoint::new(f).unwrap()).unwrap();
        let bound = ordered_statistic_bound(&family, &g, gamma).unwrap();
        prop_assert!(p <= bound + 1e-12);
    }

    #[test]
    fn realized_functional_equals_bound(seed in any::<u64>(), k in 4usize..=7, t in 0.05f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gamma = t / k as f64;
        let g = sorted_desc(dirichlet(&mut rng, k));
        let family = enumerate_subsets(k).unwrap();
        let sel = realized_selection(&family, &g).unwrap();
        prop_assert!(sel.is_dominance_closed());
        let spec = FunctionalSpec::new(sel, gamma).unwrap();
        let v = evaluate_functional(&spec, &g).unwrap();
        let bound = ordered_statistic_bound(&family, &g, gamma).unwrap();
        prop_assert!((v - bound).abs() < 1e-14);
    }

    #[test]
    fn symmetric_form_matches_subset_sum(seed in any::<u64>(), k in 4usize..=8, t in 0.0f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gamma = t / k as f64;
        let g = sorted_desc(dirichlet(&mut rng, k));
        let spec = FunctionalSpec::new(conjectured_selection(k).unwrap(), gamma).unwrap();
        let a = evaluate_functional(&spec, &g).unwrap();
        let b = conjectured_functional_symmetric(k, gamma, &g).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a.abs().max(1e-3));
    }

    #[test]
    fn projection_lands_on_simplex(v in prop::collection::vec(-3.0f64..3.0, 2..9), t in 0.0f64..=1.0) {
        let lower = t / v.len() as f64;
        let p = project_onto_simplex(&v, lower);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!(p.iter().all(|&x| x >= lower - 1e-12));
    }
}
