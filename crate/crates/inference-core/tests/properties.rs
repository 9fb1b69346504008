//! Randomized invariants checked against independent brute-force oracles.

use inference_core::{
    bayes_posterior, expected_free_energy, model_evidence, policy_posterior,
    precision_weighted_likelihood, softmax, variational_free_energy, Categorical, LogPreference,
    StochasticMatrix,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_distribution(rng: &mut StdRng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut probs: Vec<f64> = raw.iter().map(|x| x / total).collect();
    // Repair float dust so the vector passes the constructor check.
    let last = probs.len() - 1;
    probs[last] = 1.0 - probs[..last].iter().sum::<f64>();
    probs
}

fn random_stochastic(rng: &mut StdRng, n_rows: usize, n_cols: usize) -> Vec<Vec<f64>> {
    let columns: Vec<Vec<f64>> = (0..n_cols)
        .map(|_| random_distribution(rng, n_rows))
        .collect();
    (0..n_rows)
        .map(|r| columns.iter().map(|col| col[r]).collect())
        .collect()
}

/// Simplex grids with at least 50 points for two and three states.
fn simplex_grid(n: usize) -> Vec<Vec<f64>> {
    match n {
        2 => (0..50)
            .map(|i| {
                let x = i as f64 / 49.0;
                vec![x, 1.0 - x]
            })
            .collect(),
        3 => {
            let steps = 9;
            let mut grid = Vec::new();
            for i in 0..=steps {
                for j in 0..=(steps - i) {
                    let k = steps - i - j;
                    grid.push(vec![
                        i as f64 / steps as f64,
                        j as f64 / steps as f64,
                        k as f64 / steps as f64,
                    ]);
                }
            }
            grid
        }
        _ => panic!("grid only defined for 2 or 3 states"),
    }
}

// Explicit joint-table conditioning, written independently of the library path.
fn oracle_posterior(prior: &[f64], rows: &[Vec<f64>], obs: usize) -> Vec<f64> {
    let n_states = prior.len();
    let n_obs = rows.len();
    let mut joint = vec![vec![0.0; n_states]; n_obs];
    for (o, row) in rows.iter().enumerate() {
        for s in 0..n_states {
            joint[o][s] = row[s] * prior[s];
        }
    }
    let mass: f64 = joint[obs].iter().sum();
    joint[obs].iter().map(|x| x / mass).collect()
}

#[test]
fn bayes_matches_joint_table_oracle_on_random_models() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    for _ in 0..1000 {
        let n_states = rng.random_range(2..=3);
        let n_obs = rng.random_range(2..=3);
        let prior_probs = random_distribution(&mut rng, n_states);
        let rows = random_stochastic(&mut rng, n_obs, n_states);
        let obs = rng.random_range(0..n_obs);

        let prior = Categorical::new(prior_probs.clone()).unwrap();
        let a = StochasticMatrix::new(rows.clone()).unwrap();
        let posterior = bayes_posterior(&prior, &a, obs).unwrap();
        let expected = oracle_posterior(&prior_probs, &rows, obs);
        for (got, want) in posterior.probs().iter().zip(&expected) {
            assert!(
                (got - want).abs() < 1e-12,
                "posterior {got} vs oracle {want}"
            );
        }
    }
}

#[test]
fn free_energy_bounds_negative_log_evidence() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0002);
    for _ in 0..1000 {
        let n_states = rng.random_range(2..=3);
        let n_obs = rng.random_range(2..=3);
        let prior = Categorical::new(random_distribution(&mut rng, n_states)).unwrap();
        let a = StochasticMatrix::new(random_stochastic(&mut rng, n_obs, n_states)).unwrap();
        let obs = rng.random_range(0..n_obs);

        let surprise = -model_evidence(&prior, &a, obs).unwrap().ln();
        for point in simplex_grid(n_states) {
            let q = Categorical::new(point).unwrap();
            let f = variational_free_energy(&q, &prior, &a, obs).unwrap();
            assert!(
                f >= surprise - 1e-9,
                "free energy {f} fell below surprise {surprise}"
            );
        }

        // Equality is attained exactly at the Bayesian posterior.
        let posterior = bayes_posterior(&prior, &a, obs).unwrap();
        let f_star = variational_free_energy(&posterior, &prior, &a, obs).unwrap();
        assert!(
            (f_star - surprise).abs() < 1e-8,
            "gap at posterior: {}",
            (f_star - surprise).abs()
        );
    }
}

#[test]
fn every_returned_distribution_is_normalized() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    for _ in 0..1000 {
        let n = rng.random_range(2..=4);
        let values: Vec<f64> = (0..n).map(|_| rng.random_range(-20.0..20.0)).collect();
        let scale = rng.random_range(-5.0..5.0);
        let outputs = [
            softmax(&values, scale).unwrap(),
            policy_posterior(&values, rng.random_range(0.0..5.0)).unwrap(),
            bayes_posterior(
                &Categorical::new(random_distribution(&mut rng, n)).unwrap(),
                &StochasticMatrix::new(random_stochastic(&mut rng, n, n)).unwrap(),
                rng.random_range(0..n),
            )
            .unwrap(),
        ];
        for dist in outputs {
            assert!(dist.probs().iter().all(|&p| p >= 0.0));
            let sum: f64 = dist.probs().iter().sum();
            assert!((sum - 1.0).abs() < 1e-9, "sum {sum}");
        }
    }
}

#[test]
fn precision_weighting_stochastic_over_range() {
    for i in 0..=100 {
        let zeta = i as f64 * 0.1;
        let a = precision_weighted_likelihood(&StochasticMatrix::identity(3), zeta).unwrap();
        for c in 0..3 {
            let sum: f64 = a.column(c).iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }
    // Identity-base diagonal is non-decreasing in precision.
    let mut last = 0.0;
    for i in 0..=100 {
        let zeta = i as f64 * 0.1;
        let a = precision_weighted_likelihood(&StochasticMatrix::identity(2), zeta).unwrap();
        assert!(a.entry(0, 0) >= last - 1e-15);
        last = a.entry(0, 0);
    }
}

#[test]
fn operations_are_bit_deterministic() {
    let prior = Categorical::new(vec![0.37, 0.63]).unwrap();
    let a = precision_weighted_likelihood(&StochasticMatrix::identity(2), 0.83).unwrap();
    let c = LogPreference::new(vec![0.0, -0.81]).unwrap();

    let run = || {
        let post = bayes_posterior(&prior, &a, 1).unwrap();
        let g = expected_free_energy(&a, &post, &c).unwrap();
        let pi = policy_posterior(&[g, 0.0], 1.0).unwrap();
        (post.prob(0).to_bits(), g.to_bits(), pi.prob(0).to_bits())
    };
    assert_eq!(run(), run());
}

#[test]
fn policy_posterior_shift_invariant_on_random_energies() {
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    for _ in 0..200 {
        let n = rng.random_range(2..=5);
        let g: Vec<f64> = (0..n).map(|_| rng.random_range(-3.0..3.0)).collect();
        let gamma = rng.random_range(0.1..4.0);
        let shift = rng.random_range(-10.0..10.0);
        let shifted: Vec<f64> = g.iter().map(|x| x + shift).collect();
        let base = policy_posterior(&g, gamma).unwrap();
        let moved = policy_posterior(&shifted, gamma).unwrap();
        for (a, b) in base.probs().iter().zip(moved.probs()) {
            assert!((a - b).abs() < 1e-12);
        }
        // argmax of the posterior picks the smallest energy.
        let argmin = g
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        assert_eq!(base.argmax(), argmin);
    }
}
