//! Tenant costs, renter losses, company configurations, and the brute-force
//! equivalence between expected-cost minimizers and exact-rent
//! configurations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::economy::{ideal_rent, is_good_for, net_value, Economy};
use super::{CommodityId, VtError, MONEY_TOL};

/// Where one company sits and what it pays per square meter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub location: usize,
    pub rent: f64,
}

/// A full assignment of every company to a location and rent. Within one
/// commodity, company locations are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Configuration {
    placements: BTreeMap<CommodityId, Vec<Placement>>,
}

impl Configuration {
    pub fn new(
        econ: &Economy,
        placements: BTreeMap<CommodityId, Vec<Placement>>,
    ) -> Result<Self, VtError> {
        for b in placements.keys() {
            econ.commodity(*b)?;
        }
        for spec in econ.commodities() {
            let ps = placements
                .get(&spec.id)
                .ok_or(VtError::WrongCompanyCount {
                    b: spec.id,
                    expected: spec.companies,
                    got: 0,
                })?;
            if ps.len() != spec.companies {
                return Err(VtError::WrongCompanyCount {
                    b: spec.id,
                    expected: spec.companies,
                    got: ps.len(),
                });
            }
            for (a1, p) in ps.iter().enumerate() {
                econ.location(p.location)?;
                if !p.rent.is_finite() {
                    return Err(VtError::BadField {
                        what: "rent",
                        message: format!("commodity {} company {a1}: {}", spec.id, p.rent),
                    });
                }
                for (a2, q) in ps.iter().enumerate().skip(a1 + 1) {
                    if p.location == q.location {
                        return Err(VtError::DuplicateLocation {
                            b: spec.id,
                            a1,
                            a2,
                            location: p.location,
                        });
                    }
                }
            }
        }
        Ok(Configuration { placements })
    }

    pub fn placements(&self, b: CommodityId) -> Result<&[Placement], VtError> {
        self.placements
            .get(&b)
            .map(Vec::as_slice)
            .ok_or(VtError::UnknownCommodity { b })
    }

    /// The same configuration with company `a` of commodity `b` moved.
    pub fn with_placement(
        &self,
        econ: &Economy,
        b: CommodityId,
        a: usize,
        placement: Placement,
    ) -> Result<Self, VtError> {
        let mut placements = self.placements.clone();
        let ps = placements
            .get_mut(&b)
            .ok_or(VtError::UnknownCommodity { b })?;
        let slot = ps.get_mut(a).ok_or(VtError::WrongCompanyCount {
            b,
            expected: econ.commodity(b)?.companies,
            got: a,
        })?;
        *slot = placement;
        Configuration::new(econ, placements)
    }
}

/// Companies in the economy's commodity order, then company index.
fn companies<'a>(
    econ: &'a Economy,
    config: &'a Configuration,
) -> impl Iterator<Item = (CommodityId, &'a Placement)> {
    econ.commodities().flat_map(move |spec| {
        config
            .placements
            .get(&spec.id)
            .into_iter()
            .flatten()
            .map(move |p| (spec.id, p))
    })
}

/// What a tenant overpays: `rent - net` when renting above the net land
/// value, otherwise the floor `c0t`. Never below the floor.
pub fn tenant_cost(econ: &Economy, b: CommodityId, x: usize, rent: f64) -> Result<f64, VtError> {
    let net = net_value(econ, b, x)?;
    Ok(if rent > net + MONEY_TOL {
        rent - net
    } else {
        econ.min_costs().c0t
    })
}

/// What a landlord loses against this tenant's net value: `net - rent` when
/// renting below it, otherwise the floor `l1r`.
pub fn renter_loss1(econ: &Economy, b: CommodityId, x: usize, rent: f64) -> Result<f64, VtError> {
    let net = net_value(econ, b, x)?;
    Ok(if rent < net - MONEY_TOL {
        net - rent
    } else {
        econ.min_costs().l1r
    })
}

/// What a landlord loses against the best possible tenant: `R(x) - rent`
/// when renting below the ideal rent, otherwise the floor `l2r`.
pub fn renter_loss2(econ: &Economy, x: usize, rent: f64) -> Result<f64, VtError> {
    let (ideal, _) = ideal_rent(econ, x)?;
    Ok(if rent < ideal - MONEY_TOL {
        ideal - rent
    } else {
        econ.min_costs().l2r
    })
}

/// Landlord cost in the tax variant: the shortfall `tax(x) - rent` when the
/// rent does not cover the tax, otherwise zero.
pub fn renter_tax_cost(econ: &Economy, x: usize, rent: f64) -> Result<f64, VtError> {
    econ.location(x)?;
    let tax = econ
        .min_costs()
        .tax
        .as_ref()
        .ok_or(VtError::TaxNotConfigured)?[x];
    Ok(if rent < tax - MONEY_TOL { tax - rent } else { 0.0 })
}

/// Checks that the configured floors stay below every positive cost branch
/// representable on `rent_grid`, so they are genuine minima and not caps.
pub fn validate_min_costs(econ: &Economy, rent_grid: &[f64]) -> Result<(), VtError> {
    let mc = econ.min_costs();
    for spec in econ.commodities() {
        for x in 0..econ.n_locations() {
            let net = net_value(econ, spec.id, x)?;
            let (ideal, _) = ideal_rent(econ, x)?;
            for &r in rent_grid {
                if r > net + MONEY_TOL && r - net < mc.c0t - MONEY_TOL {
                    return Err(VtError::MinCostTooLarge {
                        which: "c0t",
                        value: mc.c0t,
                        message: format!(
                            "exceeds the tenant overpayment {} of commodity {} at location {x} with rent {r}",
                            r - net,
                            spec.id
                        ),
                    });
                }
                if r < net - MONEY_TOL && net - r < mc.l1r - MONEY_TOL {
                    return Err(VtError::MinCostTooLarge {
                        which: "l1r",
                        value: mc.l1r,
                        message: format!(
                            "exceeds the landlord shortfall {} of commodity {} at location {x} with rent {r}",
                            net - r,
                            spec.id
                        ),
                    });
                }
                if r < ideal - MONEY_TOL && ideal - r < mc.l2r - MONEY_TOL {
                    return Err(VtError::MinCostTooLarge {
                        which: "l2r",
                        value: mc.l2r,
                        message: format!(
                            "exceeds the ideal-rent shortfall {} at location {x} with rent {r}",
                            ideal - r
                        ),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Averaging probabilities over all companies, one vector per cost family,
/// aligned with the economy's commodity order. Must be strictly positive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompanyWeights {
    pub tenant: Vec<f64>,
    pub loss1: Vec<f64>,
    pub loss2: Vec<f64>,
}

impl CompanyWeights {
    pub fn uniform(econ: &Economy) -> Self {
        let n = econ.n_companies();
        let w = vec![1.0 / n as f64; n];
        CompanyWeights {
            tenant: w.clone(),
            loss1: w.clone(),
            loss2: w,
        }
    }

    fn validate(&self, n: usize) -> Result<(), VtError> {
        for (name, w) in [
            ("tenant", &self.tenant),
            ("loss1", &self.loss1),
            ("loss2", &self.loss2),
        ] {
            if w.len() != n {
                return Err(VtError::DegenerateWeights {
                    reason: format!("{name} has {} entries for {n} companies", w.len()),
                });
            }
            if let Some((i, &v)) = w.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
                return Err(VtError::DegenerateWeights {
                    reason: format!("{name} weight {i} is {v}, expected > 0"),
                });
            }
            let sum: f64 = w.iter().sum();
            if (sum - 1.0).abs() > MONEY_TOL {
                return Err(VtError::DegenerateWeights {
                    reason: format!("{name} weights sum to {sum}"),
                });
            }
        }
        Ok(())
    }
}

/// The three expected values over companies.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpectedCosts {
    pub tenant: f64,
    pub loss1: f64,
    pub loss2: f64,
}

/// Weighted averages of the tenant cost and both renter losses over all
/// companies. Each result is bounded below by its floor, with equality only
/// when every company sits at the floor (weights are strictly positive).
pub fn expected_costs(
    econ: &Economy,
    config: &Configuration,
    weights: &CompanyWeights,
) -> Result<ExpectedCosts, VtError> {
    weights.validate(econ.n_companies())?;
    expected_costs_unchecked(econ, config, weights)
}

fn expected_costs_unchecked(
    econ: &Economy,
    config: &Configuration,
    weights: &CompanyWeights,
) -> Result<ExpectedCosts, VtError> {
    let mut out = ExpectedCosts {
        tenant: 0.0,
        loss1: 0.0,
        loss2: 0.0,
    };
    for (i, (b, p)) in companies(econ, config).enumerate() {
        out.tenant += weights.tenant[i] * tenant_cost(econ, b, p.location, p.rent)?;
        out.loss1 += weights.loss1[i] * renter_loss1(econ, b, p.location, p.rent)?;
        out.loss2 += weights.loss2[i] * renter_loss2(econ, p.location, p.rent)?;
    }
    Ok(out)
}

/// True iff every company rents a location good for its commodity at exactly
/// the net land value (so rent = net = ideal rent, within [`MONEY_TOL`]).
pub fn is_vt_configuration(econ: &Economy, config: &Configuration) -> Result<bool, VtError> {
    for spec in econ.commodities() {
        for p in config.placements(spec.id)? {
            let net = net_value(econ, spec.id, p.location)?;
            if (p.rent - net).abs() > MONEY_TOL || !is_good_for(econ, p.location, spec.id)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

struct Enumerator<'a, F> {
    econ: &'a Economy,
    rent_grid: &'a [f64],
    specs: Vec<(CommodityId, usize)>,
    visit: F,
}

impl<'a, F: FnMut(&Configuration) -> Result<(), VtError>> Enumerator<'a, F> {
    fn run(&mut self) -> Result<(), VtError> {
        let mut acc = BTreeMap::new();
        self.commodity(0, &mut acc)
    }

    fn commodity(
        &mut self,
        idx: usize,
        acc: &mut BTreeMap<CommodityId, Vec<Placement>>,
    ) -> Result<(), VtError> {
        if idx == self.specs.len() {
            let config = Configuration {
                placements: acc.clone(),
            };
            return (self.visit)(&config);
        }
        let (b, n_companies) = self.specs[idx];
        let mut chosen = Vec::with_capacity(n_companies);
        self.company(idx, b, n_companies, &mut chosen, acc)
    }

    fn company(
        &mut self,
        idx: usize,
        b: CommodityId,
        n_companies: usize,
        chosen: &mut Vec<Placement>,
        acc: &mut BTreeMap<CommodityId, Vec<Placement>>,
    ) -> Result<(), VtError> {
        if chosen.len() == n_companies {
            acc.insert(b, chosen.clone());
            let result = self.commodity(idx + 1, acc);
            acc.remove(&b);
            return result;
        }
        for location in 0..self.econ.n_locations() {
            if chosen.iter().any(|p| p.location == location) {
                continue;
            }
            for &rent in self.rent_grid {
                chosen.push(Placement { location, rent });
                self.company(idx, b, n_companies, chosen, acc)?;
                chosen.pop();
            }
        }
        Ok(())
    }
}

/// Number of configurations the enumeration will visit, saturating.
fn enumeration_size(econ: &Economy, n_rents: usize) -> u128 {
    let mut total: u128 = 1;
    for spec in econ.commodities() {
        let n = econ.n_locations() as u128;
        let mut per_commodity: u128 = 1;
        for i in 0..spec.companies as u128 {
            per_commodity = per_commodity
                .saturating_mul(n.saturating_sub(i))
                .saturating_mul(n_rents as u128);
        }
        total = total.saturating_mul(per_commodity);
    }
    total
}

fn for_each_config(
    econ: &Economy,
    rent_grid: &[f64],
    visit: impl FnMut(&Configuration) -> Result<(), VtError>,
) -> Result<(), VtError> {
    let specs = econ
        .commodities()
        .map(|spec| (spec.id, spec.companies))
        .collect();
    Enumerator {
        econ,
        rent_grid,
        specs,
        visit,
    }
    .run()
}

/// Result of enumerating every configuration on a rent grid and comparing
/// the expected-cost minimizers against the exact-rent configurations.
#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub configurations: u128,
    /// Per commodity: does any location attain the ideal rent for it?
    pub good_location_exists: Vec<(CommodityId, bool)>,
    pub all_commodities_have_good_locations: bool,
    pub vt_configurations: usize,
    /// Configurations attaining all three component minima simultaneously.
    pub minimizing_configurations: usize,
    /// Minimizer set and exact-rent set coincide over the enumeration.
    pub sets_equal: bool,
    /// Some configuration attains all three floors at once.
    pub floors_attained: bool,
    /// Component-wise minima over all configurations.
    pub min_expected: ExpectedCosts,
    pub floors: (f64, f64, f64),
}

impl EquivalenceReport {
    /// The equivalence statement, in the form that applies: with good
    /// locations for every commodity, minimizers are exactly the exact-rent
    /// configurations; without, no configuration reaches all floors at once.
    pub fn holds(&self) -> bool {
        if self.all_commodities_have_good_locations {
            self.sets_equal && self.vt_configurations > 0
        } else {
            !self.floors_attained
        }
    }
}

/// Brute-force check that expected-cost minimizers coincide with exact-rent
/// configurations, under uniform company weights.
///
/// The rent grid must contain the exact net land value of every good
/// location, so exact-rent configurations are representable; the enumeration
/// size must fit the budget.
pub fn verify_vt_equivalence(
    econ: &Economy,
    rent_grid: &[f64],
    budget: u128,
) -> Result<EquivalenceReport, VtError> {
    if rent_grid.is_empty() {
        return Err(VtError::BadField {
            what: "rent grid",
            message: "needs at least one rent".into(),
        });
    }
    let mut good_location_exists = Vec::new();
    for spec in econ.commodities() {
        let mut any = false;
        for x in 0..econ.n_locations() {
            if is_good_for(econ, x, spec.id)? {
                any = true;
                let net = net_value(econ, spec.id, x)?;
                if !rent_grid.iter().any(|&r| (r - net).abs() <= MONEY_TOL) {
                    return Err(VtError::MissingRentValue {
                        b: spec.id,
                        location: x,
                        net,
                    });
                }
            }
        }
        good_location_exists.push((spec.id, any));
    }
    let required = enumeration_size(econ, rent_grid.len());
    if required > budget {
        return Err(VtError::BudgetExceeded { required, budget });
    }

    let weights = CompanyWeights::uniform(econ);
    let mut min = ExpectedCosts {
        tenant: f64::INFINITY,
        loss1: f64::INFINITY,
        loss2: f64::INFINITY,
    };
    for_each_config(econ, rent_grid, |config| {
        let costs = expected_costs_unchecked(econ, config, &weights)?;
        min.tenant = min.tenant.min(costs.tenant);
        min.loss1 = min.loss1.min(costs.loss1);
        min.loss2 = min.loss2.min(costs.loss2);
        Ok(())
    })?;

    let mc = econ.min_costs();
    let floors = (mc.c0t, mc.l1r, mc.l2r);
    let mut configurations: u128 = 0;
    let mut vt_configurations = 0usize;
    let mut minimizing_configurations = 0usize;
    let mut sets_equal = true;
    let mut floors_attained = false;
    for_each_config(econ, rent_grid, |config| {
        configurations += 1;
        let costs = expected_costs_unchecked(econ, config, &weights)?;
        let minimizes = costs.tenant <= min.tenant + MONEY_TOL
            && costs.loss1 <= min.loss1 + MONEY_TOL
            && costs.loss2 <= min.loss2 + MONEY_TOL;
        let vt = is_vt_configuration(econ, config)?;
        if vt {
            vt_configurations += 1;
        }
        if minimizes {
            minimizing_configurations += 1;
        }
        if minimizes != vt {
            sets_equal = false;
        }
        if costs.tenant <= floors.0 + MONEY_TOL
            && costs.loss1 <= floors.1 + MONEY_TOL
            && costs.loss2 <= floors.2 + MONEY_TOL
        {
            floors_attained = true;
        }
        Ok(())
    })?;

    Ok(EquivalenceReport {
        configurations,
        all_commodities_have_good_locations: good_location_exists.iter().all(|(_, g)| *g),
        good_location_exists,
        vt_configurations,
        minimizing_configurations,
        sets_equal,
        floors_attained,
        min_expected: min,
        floors,
    })
}

/// Result of comparing tax-variant minimizers against the rent band
/// `tax(x) <= rent <= net`.
#[derive(Debug, Clone, Serialize)]
pub struct TaxBandReport {
    pub configurations: u128,
    pub band_configurations: usize,
    pub minimizing_configurations: usize,
    pub sets_equal: bool,
}

/// Brute-force check for the tax variant: configurations minimizing both the
/// expected tenant cost and the expected tax shortfall are exactly those
/// where every rent lies between the location's tax and the net land value.
pub fn verify_tax_band(
    econ: &Economy,
    rent_grid: &[f64],
    budget: u128,
) -> Result<TaxBandReport, VtError> {
    if econ.min_costs().tax.is_none() {
        return Err(VtError::TaxNotConfigured);
    }
    let required = enumeration_size(econ, rent_grid.len());
    if required > budget {
        return Err(VtError::BudgetExceeded { required, budget });
    }
    let weights = CompanyWeights::uniform(econ);

    let mut min_tenant = f64::INFINITY;
    let mut min_tax = f64::INFINITY;
    let expected_pair = |config: &Configuration| -> Result<(f64, f64), VtError> {
        let mut tenant = 0.0;
        let mut tax = 0.0;
        for (i, (b, p)) in companies(econ, config).enumerate() {
            tenant += weights.tenant[i] * tenant_cost(econ, b, p.location, p.rent)?;
            tax += weights.tenant[i] * renter_tax_cost(econ, p.location, p.rent)?;
        }
        Ok((tenant, tax))
    };
    for_each_config(econ, rent_grid, |config| {
        let (tenant, tax) = expected_pair(config)?;
        min_tenant = min_tenant.min(tenant);
        min_tax = min_tax.min(tax);
        Ok(())
    })?;

    let mut configurations: u128 = 0;
    let mut band_configurations = 0usize;
    let mut minimizing_configurations = 0usize;
    let mut sets_equal = true;
    for_each_config(econ, rent_grid, |config| {
        configurations += 1;
        let (tenant, tax) = expected_pair(config)?;
        let minimizes = tenant <= min_tenant + MONEY_TOL && tax <= min_tax + MONEY_TOL;
        let mut in_band = true;
        for (b, p) in companies(econ, config) {
            let net = net_value(econ, b, p.location)?;
            let tax_floor = econ.min_costs().tax.as_ref().unwrap()[p.location];
            if p.rent < tax_floor - MONEY_TOL || p.rent > net + MONEY_TOL {
                in_band = false;
                break;
            }
        }
        if in_band {
            band_configurations += 1;
        }
        if minimizes {
            minimizing_configurations += 1;
        }
        if minimizes != in_band {
            sets_equal = false;
        }
        Ok(())
    })?;

    Ok(TaxBandReport {
        configurations,
        band_configurations,
        minimizing_configurations,
        sets_equal,
    })
}
