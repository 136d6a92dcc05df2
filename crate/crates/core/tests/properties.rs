//! Property tests across modules, plus oracle checks that go beyond the
//! acceptance suite.

use proptest::prelude::*;

use gibbsdom::domination::{f_threshold, g_threshold, mc_dominates, degree_bounds};
use gibbsdom::fuzzy::{c_map_value, free_chain, ratios, subtree_ratio, FuzzyParams};
use gibbsdom::ising::{
    h_star, phi, solve_fixed_points, stationary, t_extreme, transition_matrix, ModelParams, Sign,
    TransitionMatrix2,
};
use gibbsdom::oracle::{
    build_tree, chain_distribution, dominates_exact, gibbs_sample, product_distribution,
    product_dominates_exact, Boundary, Limits,
};
use gibbsdom::Exec;

proptest! {
    #[test]
    fn phi_is_odd_and_bounded(j in 0.0f64..5.0, t in -20.0f64..20.0) {
        let a = phi(j, t).unwrap();
        let b = phi(j, -t).unwrap();
        prop_assert!((a + b).abs() <= 1e-12);
        prop_assert!(a.abs() <= j + 1e-12);
        prop_assert!(a * t >= 0.0);
    }

    #[test]
    fn fixed_points_solve_the_equation(d in 2u32..6, j in 0.01f64..3.0, h in -5.0f64..5.0) {
        let sol = solve_fixed_points(&ModelParams::new(d, j, h).unwrap()).unwrap();
        prop_assert!(!sol.roots().is_empty());
        for &t in sol.roots() {
            let r = t - h - d as f64 * phi(j, t).unwrap();
            prop_assert!(r.abs() <= 1e-9 * (1.0 + t.abs()), "residual {r} at {t}");
        }
        prop_assert!(sol.smallest() <= sol.largest());
    }

    #[test]
    fn minus_dominator_needs_at_least_plus_field(
        d in 2u32..5, j1 in 0.05f64..2.0, j2 in 0.05f64..2.0, h1 in -4.0f64..4.0,
    ) {
        for which in [Sign::Plus, Sign::Minus] {
            let f = f_threshold(j1, j2, h1, which, d).unwrap();
            let g = g_threshold(j1, j2, h1, which, d).unwrap();
            prop_assert!(g.value >= f.value - 1e-9, "f {} g {}", f.value, g.value);
        }
    }

    #[test]
    fn plus_threshold_inside_degree_bounds(
        d in 2u32..5, j1 in 0.05f64..2.0, j2 in 0.05f64..2.0, h1 in -4.0f64..4.0,
    ) {
        let (lo, hi) = degree_bounds(j1, j2, h1, d + 1).unwrap();
        for which in [Sign::Plus, Sign::Minus] {
            let f = f_threshold(j1, j2, h1, which, d).unwrap().value;
            prop_assert!(f >= lo - 1e-9 && f <= hi + 1e-9);
        }
    }

    #[test]
    fn c_is_a_fixed_point(q in 3u32..6, r_frac in 0.0f64..1.0, j in 0.3f64..1.4, d in 2u32..4) {
        let r = 1 + ((q - 1) as f64 * r_frac) as u32 % (q - 1);
        prop_assume!((2.0 * j).exp() >= (q - 2) as f64);
        let p = FuzzyParams::new(q, j, r, d).unwrap();
        let c = subtree_ratio(&p).unwrap();
        prop_assert!(c >= 1.0);
        prop_assert!((c_map_value(&p, c) - c).abs() <= 1e-11 * c.max(1.0));
        let rat = ratios(&p).unwrap();
        prop_assert_eq!(rat.c > 1.0, rat.b > 1.0);
        prop_assert_eq!(rat.b > 1.0, rat.a > 1.0 / q as f64);
    }

    #[test]
    fn stationary_is_invariant(j in 0.0f64..3.0, t in -5.0f64..5.0) {
        let p = transition_matrix(j, t).unwrap();
        let nu = stationary(&p).unwrap();
        let plus = nu.prob_minus * p.p_mp() + nu.prob_plus * p.p_pp();
        prop_assert!((plus - nu.prob_plus).abs() <= 1e-12);
    }
}

fn random_chain(seed: u64) -> TransitionMatrix2 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let a: f64 = rng.random_range(0.02..0.98);
    let b: f64 = rng.random_range(0.02..0.98);
    TransitionMatrix2::from_plus_column(a.min(b), a.max(b)).unwrap()
}

// Entrywise larger plus column gives a larger stationary chain law.
#[test]
fn matrix_order_lifts_to_chain_laws() {
    let limits = Limits::default();
    for depth in 0..=2 {
        let tree = build_tree(2, depth, limits.distribution_vertices).unwrap();
        for seed in 0..40 {
            let p = random_chain(seed);
            let q = random_chain(seed + 1000);
            if !mc_dominates(&p, &q) {
                continue;
            }
            let dp = chain_distribution(&tree, &p, &stationary(&p).unwrap(), &limits, Exec::Parallel).unwrap();
            let dq = chain_distribution(&tree, &q, &stationary(&q).unwrap(), &limits, Exec::Parallel).unwrap();
            assert!(dominates_exact(&dp, &dq, &limits).unwrap(), "depth {depth} seed {seed}");
        }
    }
}

// A chain law dominates every product law whose density is at most P(-1,1).
// The finite-tree threshold sits above P(-1,1).
#[test]
fn product_domination_below_lower_entry() {
    let limits = Limits::default();
    let tree = build_tree(2, 2, limits.distribution_vertices).unwrap();
    for seed in 0..10 {
        let p = random_chain(seed);
        let chain = chain_distribution(&tree, &p, &stationary(&p).unwrap(), &limits, Exec::Parallel).unwrap();
        assert!(product_dominates_exact(&chain, p.p_mp() - 1e-6, &limits, Exec::Parallel).unwrap());
        assert!(product_dominates_exact(&chain, p.p_mp() * 0.5, &limits, Exec::Parallel).unwrap());
        assert!(!product_dominates_exact(&chain, p.p_pp() + 1e-6, &limits, Exec::Parallel).unwrap());
    }
}

#[test]
fn product_laws_ordered_by_density() {
    let limits = Limits::default();
    let tree = build_tree(2, 1, limits.distribution_vertices).unwrap();
    let hi = product_distribution(&tree, 0.6, &limits, Exec::Sequential).unwrap();
    let lo = product_distribution(&tree, 0.4, &limits, Exec::Sequential).unwrap();
    assert!(dominates_exact(&hi, &lo, &limits).unwrap());
    assert!(!dominates_exact(&lo, &hi, &limits).unwrap());
}

// With equal couplings and |h1| < h*, the minus-dominator threshold is h*,
// above the degree-only upper bound h1.
#[test]
fn minus_dominator_can_exceed_degree_bound() {
    let (d, j, h1) = (3, 1.0, 0.2);
    let (_, hi) = degree_bounds(j, j, h1, d + 1).unwrap();
    let g = g_threshold(j, j, h1, Sign::Plus, d).unwrap();
    assert!((g.value - h_star(d, j).unwrap()).abs() < 1e-9);
    assert!(g.value > hi);
}

// Free fuzzy chain rows are ordered so the plus row sits above the minus row.
#[test]
fn free_fuzzy_chain_is_monotone() {
    for q in 3..6 {
        for r in 1..q {
            let p = free_chain(&FuzzyParams::new(q, 0.9, r, 2).unwrap()).unwrap();
            assert!(p.p_mp() <= p.p_pp());
        }
    }
}

// z-scores of the sampler against the exact finite-tree marginal, over
// several seeds.
#[test]
fn sampler_is_calibrated_across_seeds() {
    let (d, depth, j, h) = (2u32, 4u32, 0.8, 0.1);
    let limits = Limits::default();
    let tree = build_tree(d, depth, limits.sampler_vertices).unwrap();
    let mut t = h + d as f64 * j;
    for _ in 1..depth {
        t = h + d as f64 * phi(j, t).unwrap();
    }
    // the root has d + 1 children
    t = h + (d + 1) as f64 * phi(j, t).unwrap();
    let exact = 1.0 / (1.0 + (-2.0 * t).exp());
    let seeds = 30;
    let mut sum_z2 = 0.0;
    for seed in 0..seeds {
        let s = gibbs_sample(&tree, j, h, Boundary::Plus, 20_000, seed, &limits).unwrap();
        let z = (s.plus_prob[0] - exact) / s.std_err[0];
        assert!(z.abs() < 5.0, "seed {seed}: z = {z}");
        sum_z2 += z * z;
    }
    let mean_z2 = sum_z2 / seeds as f64;
    assert!((0.4..2.0).contains(&mean_z2), "mean z^2 {mean_z2}");
}

#[test]
fn plus_state_root_marginal_tends_to_chain_law() {
    let (d, j) = (2u32, 1.0);
    let t = t_extreme(&ModelParams::new(d, j, 0.0).unwrap(), Sign::Plus).unwrap();
    let nu = stationary(&transition_matrix(j, t).unwrap()).unwrap();
    // infinite-volume root has d + 1 neighbours
    let mut s = d as f64 * j;
    for _ in 0..200 {
        s = d as f64 * phi(j, s).unwrap();
    }
    let root = 1.0 / (1.0 + (-2.0 * (s + phi(j, s).unwrap())).exp());
    assert!((root - nu.prob_plus).abs() < 1e-12);
}
