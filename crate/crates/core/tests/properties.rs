//! Randomized invariants for the force calculus and the simplex tools.

use std::collections::BTreeMap;

use gep_core::forces::{
    better_adapted, entropy_bits, unification_force, AveragingSpec, CostSpec, ForceTrace,
};
use gep_core::simplex;
use gep_core::{EntityId, GlobalState, InteractionSpace, Population};
use proptest::prelude::*;

fn prob_vector(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, 1..=max_len).prop_map(|raw| {
        let sum: f64 = raw.iter().sum();
        raw.into_iter().map(|v| v / sum).collect()
    })
}

/// A space with `n` stateless entities and no interactions: the smallest
/// arena that exercises population averaging.
fn bare_state(n: u32) -> (InteractionSpace, GlobalState, Population) {
    let entities: std::collections::BTreeSet<EntityId> = (1..=n).map(EntityId).collect();
    let space = InteractionSpace::new(entities.clone(), vec![], BTreeMap::new()).unwrap();
    let states = entities.iter().map(|e| (*e, vec![vec![]])).collect();
    let gs = GlobalState::new(
        &space,
        vec![0.0],
        0.0,
        states,
        BTreeMap::new(),
        BTreeMap::new(),
    )
    .unwrap();
    let pop = Population::new(entities);
    (space, gs, pop)
}

proptest! {
    #[test]
    fn entropy_stays_within_its_bounds(p in prob_vector(64)) {
        let h = entropy_bits(&p);
        prop_assert!(h >= -1e-12);
        prop_assert!(h <= (p.len() as f64).log2() + 1e-9);
    }

    #[test]
    fn entropy_is_maximal_at_uniform(n in 1usize..=64) {
        let h = entropy_bits(&simplex::uniform(n));
        prop_assert!((h - (n as f64).log2()).abs() <= 1e-12);
    }

    #[test]
    fn entropy_adds_over_product_distributions(
        p in prob_vector(12),
        q in prob_vector(12),
    ) {
        let joint: Vec<f64> = p
            .iter()
            .flat_map(|a| q.iter().map(move |b| a * b))
            .collect();
        let lhs = entropy_bits(&joint);
        let rhs = entropy_bits(&p) + entropy_bits(&q);
        prop_assert!((lhs - rhs).abs() <= 1e-12, "joint {lhs} vs sum {rhs}");
    }

    #[test]
    fn entropy_ignores_permutation(p in prob_vector(32)) {
        let mut rev = p.clone();
        rev.reverse();
        prop_assert!((entropy_bits(&p) - entropy_bits(&rev)).abs() <= 1e-12);
    }

    #[test]
    fn raising_any_cost_never_raises_the_force(
        base in prop::collection::vec(0.0f64..10.0, 1..=8),
        bumps in prop::collection::vec(0.0f64..5.0, 1..=8),
    ) {
        let n = base.len().min(bumps.len());
        let base = base[..n].to_vec();
        let bumped: Vec<f64> = base.iter().zip(&bumps).map(|(c, d)| c + d).collect();
        let (_, gs, pop) = bare_state(n as u32);
        let avg = AveragingSpec::uniform();
        let lo = CostSpec::new(1, move |_, e, _| base[(e.0 - 1) as usize]);
        let hi = CostSpec::new(1, move |_, e, _| bumped[(e.0 - 1) as usize]);
        let u_lo = unification_force(&lo, &avg, &gs, &pop, 0).unwrap();
        let u_hi = unification_force(&hi, &avg, &gs, &pop, 0).unwrap();
        prop_assert!(u_hi <= u_lo + 1e-12);
        prop_assert!(u_lo <= 0.0);
    }

    #[test]
    fn adaptation_order_is_reflexive_and_transitive(
        rows in prop::collection::vec(
            (prop::collection::vec(-5.0f64..5.0, 3), 0.0f64..4.0),
            3..=8,
        ),
    ) {
        let times: Vec<f64> = (0..rows.len()).map(|i| i as f64).collect();
        let (u, d): (Vec<Vec<f64>>, Vec<f64>) = rows.into_iter().unzip();
        let trace = ForceTrace::new(times.clone(), u, d).unwrap();
        for &s in &times {
            prop_assert!(better_adapted(&trace, s, s).unwrap());
        }
        for &a in &times {
            for &b in &times {
                for &c in &times {
                    if better_adapted(&trace, a, b).unwrap()
                        && better_adapted(&trace, b, c).unwrap()
                    {
                        prop_assert!(better_adapted(&trace, a, c).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn projection_lands_on_the_simplex_and_is_idempotent(
        v in prop::collection::vec(-10.0f64..10.0, 1..=32),
    ) {
        let floor = 1e-12;
        let p = simplex::project(&v, floor);
        prop_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        prop_assert!(p.iter().all(|&x| x >= floor - 1e-15));
        let pp = simplex::project(&p, floor);
        for (a, b) in p.iter().zip(&pp) {
            prop_assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn projection_fixes_interior_points(p in prob_vector(16)) {
        // Strictly interior by construction (components >= 0.01/16).
        let q = simplex::project(&p, 1e-12);
        for (a, b) in p.iter().zip(&q) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn trace_csv_round_trips_exactly(
        rows in prop::collection::vec(
            (prop::collection::vec(-1e6f64..1e6, 2), 0.0f64..64.0),
            1..=6,
        ),
    ) {
        let times: Vec<f64> = (0..rows.len()).map(|i| 0.25 * i as f64).collect();
        let (u, d): (Vec<Vec<f64>>, Vec<f64>) = rows.into_iter().unzip();
        let trace = ForceTrace::new(times.clone(), u.clone(), d.clone()).unwrap();
        let csv = trace.to_csv_string();
        let mut lines = csv.lines();
        prop_assert_eq!(lines.next().unwrap(), "time,u_1,u_2,d");
        for (i, line) in lines.enumerate() {
            let cells: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            prop_assert_eq!(cells[0], times[i]);
            prop_assert_eq!(cells[1], u[i][0]);
            prop_assert_eq!(cells[2], u[i][1]);
            prop_assert_eq!(cells[3], d[i]);
        }
    }

    #[test]
    fn exponent_fit_inverts_exact_laws(alpha in 0.1f64..3.0, d in 5usize..=60) {
        let raw: Vec<f64> = (1..=d).map(|k| (k as f64).powf(-alpha)).collect();
        let sum: f64 = raw.iter().sum();
        let q: Vec<f64> = raw.iter().map(|v| v / sum).collect();
        let fit = gep_core::powerlaw::fit_exponent(&q).unwrap();
        prop_assert!((fit.slope + alpha).abs() <= 1e-6, "slope {}", fit.slope);
        prop_assert!(fit.r2 >= 1.0 - 1e-9);
    }
}
