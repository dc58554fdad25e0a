//! A seeded local search whose force trace never decreases.
//!
//! Proposals either move one company to a new location with a corrective
//! rent (the net land value or the ideal rent there) or shift flux from a
//! richer company to a poorer one of the same commodity. A proposal is
//! accepted only when no unification force drops, the flux entropy does not
//! drop, and something strictly improves; the trace is therefore monotone by
//! construction, not by luck. Deterministic for a fixed seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::costs::{expected_costs, CompanyWeights, Configuration, Placement};
use super::economy::{ideal_rent, net_value, Economy};
use super::flux::FluxVector;
use super::{CommodityId, VtError};
use crate::forces::ForceTrace;

/// Final state of a local-search run, with its full force trace.
#[derive(Debug, Clone, Serialize)]
pub struct AdaptReport {
    /// Row per step (row 0 is the initial state): three unification forces
    /// (negative expected tenant cost and renter losses) and the total flux
    /// entropy.
    pub trace: ForceTrace,
    pub config: Configuration,
    pub flux: FluxVector,
    pub accepted: usize,
    /// No proposal was acceptable over the whole run.
    pub stagnated: bool,
}

/// Runs `steps` proposals from the given state. Uniform company weights.
pub fn adapt(
    econ: &Economy,
    config0: &Configuration,
    flux0: &FluxVector,
    seed: u64,
    steps: usize,
) -> Result<AdaptReport, VtError> {
    let weights = CompanyWeights::uniform(econ);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut config = config0.clone();
    let mut flux = flux0.clone();
    let mut costs = expected_costs(econ, &config, &weights)?;
    let mut entropy = flux.total_entropy();
    let mut accepted = 0usize;

    let mut times = Vec::with_capacity(steps + 1);
    let mut u = Vec::with_capacity(steps + 1);
    let mut d = Vec::with_capacity(steps + 1);
    times.push(0.0);
    u.push(vec![-costs.tenant, -costs.loss1, -costs.loss2]);
    d.push(entropy);

    let commodity_ids: Vec<CommodityId> = econ.commodities().map(|s| s.id).collect();
    let multi_company: Vec<CommodityId> = econ
        .commodities()
        .filter(|s| s.companies >= 2)
        .map(|s| s.id)
        .collect();

    for step in 1..=steps {
        let try_flux = !multi_company.is_empty() && rng.gen_bool(0.5);
        if try_flux {
            let b = multi_company[rng.gen_range(0..multi_company.len())];
            let shares = flux.shares(b)?;
            let first = rng.gen_range(0..shares.len());
            let mut second = rng.gen_range(0..shares.len() - 1);
            if second >= first {
                second += 1;
            }
            let (from, to) = if shares[first] >= shares[second] {
                (first, second)
            } else {
                (second, first)
            };
            // Moving less than half the gap keeps the donor above the
            // recipient, so both shares stay positive.
            let amount = 0.5 * (shares[from] - shares[to]) * rng.gen::<f64>();
            if amount > 0.0 {
                let candidate = flux.with_transfer(b, from, to, amount);
                let new_entropy = candidate.total_entropy();
                // Costs are untouched, so acceptance needs a strict gain.
                if new_entropy > entropy {
                    flux = candidate;
                    entropy = new_entropy;
                    accepted += 1;
                }
            }
        } else {
            let b = commodity_ids[rng.gen_range(0..commodity_ids.len())];
            let spec = econ.commodity(b)?;
            let a = rng.gen_range(0..spec.companies);
            let taken: Vec<usize> = config
                .placements(b)?
                .iter()
                .enumerate()
                .filter(|(idx, _)| *idx != a)
                .map(|(_, p)| p.location)
                .collect();
            let open: Vec<usize> = (0..econ.n_locations())
                .filter(|x| !taken.contains(x))
                .collect();
            let location = open[rng.gen_range(0..open.len())];
            let rent = if rng.gen_bool(0.5) {
                net_value(econ, b, location)?
            } else {
                ideal_rent(econ, location)?.0
            };
            let candidate = config.with_placement(econ, b, a, Placement { location, rent })?;
            let new_costs = expected_costs(econ, &candidate, &weights)?;
            let no_worse = new_costs.tenant <= costs.tenant
                && new_costs.loss1 <= costs.loss1
                && new_costs.loss2 <= costs.loss2;
            let strictly_better = new_costs.tenant < costs.tenant
                || new_costs.loss1 < costs.loss1
                || new_costs.loss2 < costs.loss2;
            if no_worse && strictly_better {
                config = candidate;
                costs = new_costs;
                accepted += 1;
            }
        }
        times.push(step as f64);
        u.push(vec![-costs.tenant, -costs.loss1, -costs.loss2]);
        d.push(entropy);
    }

    Ok(AdaptReport {
        trace: ForceTrace::new(times, u, d)?,
        config,
        flux,
        accepted,
        stagnated: accepted == 0,
    })
}
