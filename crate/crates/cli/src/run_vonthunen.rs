//! `vonthunen verify` and `vonthunen run`.
//!
//! Verify reports the statics of an economy (good locations, ideal rents,
//! impedance zones), brute-forces the expected-cost minimizers over a rent
//! grid when one is given, and checks flux equalization per commodity. Run
//! drives the seeded adaptive search and writes its force trace.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use gep_core::better_adapted;
use gep_core::vonthunen::{
    adapt, expected_costs, ideal_rent, impedance_bounds, is_good_for, is_vt_configuration,
    maximize_flux_entropy, net_value, verify_tax_band, verify_vt_equivalence, zones_disjoint,
    CommodityId, CompanyWeights, Configuration, Economy, EquivalenceReport, ExpectedCosts,
    FluxVector, TaxBandReport, ZoneReport,
};

use crate::report::{self, Check, ScenarioOutcome};
use crate::scenario::{self, VonthunenScenario, ZoneClaim};
use crate::RunOpts;

/// Share deviation treated as equal when checking flux equalization.
const FLUX_TOL: f64 = 1e-9;

#[derive(Serialize)]
struct LocationRow {
    index: usize,
    impedance: f64,
    ideal_rent: f64,
    /// Commodities whose net value attains the ideal rent here.
    best: Vec<CommodityId>,
}

#[derive(Serialize)]
struct CommodityRow {
    id: CommodityId,
    companies: usize,
    demand: f64,
    good_locations: Vec<usize>,
    /// Impedance band of the good locations; absent when the zone is empty.
    impedance_bounds: Option<(f64, f64)>,
    /// Entropy-maximizing flux per company; absent when the check failed.
    equal_share: Option<f64>,
    /// Net land value per location.
    net_values: Vec<f64>,
}

#[derive(Serialize)]
struct ZoneRow {
    outer: CommodityId,
    inner: CommodityId,
    report: ZoneReport,
}

#[derive(Serialize)]
struct ConfigurationRow {
    expected_costs: ExpectedCosts,
    flux_entropy: f64,
    is_vt: bool,
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    scenario: &'a str,
    kind: &'a str,
    mode: &'a str,
    locations: Vec<LocationRow>,
    commodities: Vec<CommodityRow>,
    vt_exists: bool,
    summary: String,
    equivalence: Option<EquivalenceReport>,
    tax_band: Option<TaxBandReport>,
    zones: Vec<ZoneRow>,
    initial: Option<ConfigurationRow>,
    checks: &'a [Check],
    pass: bool,
}

pub fn verify(path: &Path, opts: &RunOpts) -> Result<ScenarioOutcome> {
    let sc: VonthunenScenario = scenario::load(path, "vonthunen")?;
    let stem = report::scenario_stem(path);
    let in_file = || path.display().to_string();
    let inputs = sc.build().with_context(in_file)?;
    let econ = &inputs.econ;

    let tol = opts.tol.unwrap_or(FLUX_TOL);
    if !(tol > 0.0) || !tol.is_finite() {
        bail!("{}: tolerance must be positive and finite, got {tol}", in_file());
    }

    let mut checks = Vec::new();
    let locations = location_rows(econ).with_context(in_file)?;

    let mut commodities = Vec::new();
    let mut vt_exists = true;
    for spec in econ.commodities() {
        let mut good_locations = Vec::new();
        let mut net_values = Vec::with_capacity(econ.n_locations());
        for x in 0..econ.n_locations() {
            if is_good_for(econ, x, spec.id).with_context(in_file)? {
                good_locations.push(x);
            }
            net_values.push(net_value(econ, spec.id, x).with_context(in_file)?);
        }
        if good_locations.len() < spec.companies {
            vt_exists = false;
        }
        let bounds = impedance_bounds(econ, spec.id).ok();

        let equal = spec.demand / spec.companies as f64;
        let equal_share = match maximize_flux_entropy(spec.companies, spec.demand, tol) {
            Ok(shares) => {
                let deviation = shares
                    .iter()
                    .map(|s| (s - equal).abs())
                    .fold(0.0, f64::max);
                checks.push(Check::new(
                    format!("flux_equalization_{}", spec.id),
                    deviation <= FLUX_TOL,
                    format!(
                        "entropy maximizer is {deviation:e} from the equal share {equal} over {} companies",
                        spec.companies
                    ),
                ));
                Some(equal)
            }
            Err(e) => {
                checks.push(Check::new(
                    format!("flux_equalization_{}", spec.id),
                    false,
                    e.to_string(),
                ));
                None
            }
        };

        commodities.push(CommodityRow {
            id: spec.id,
            companies: spec.companies,
            demand: spec.demand,
            good_locations,
            impedance_bounds: bounds,
            equal_share,
            net_values,
        });
    }

    let summary = if vt_exists {
        "every commodity can place its companies at good locations".to_string()
    } else {
        "no VT configuration exists".to_string()
    };

    let equivalence = match &inputs.rents {
        Some(rents) => {
            let eq = verify_vt_equivalence(econ, rents, inputs.budget).with_context(in_file)?;
            let detail = if eq.all_commodities_have_good_locations {
                format!(
                    "{} of {} configurations minimize all three expected costs, {} are exact-rent configurations, sets {}",
                    eq.minimizing_configurations,
                    eq.configurations,
                    eq.vt_configurations,
                    if eq.sets_equal { "coincide" } else { "differ" },
                )
            } else {
                format!(
                    "no VT configuration exists; over {} configurations the three cost floors are {}",
                    eq.configurations,
                    if eq.floors_attained {
                        "still attained together (contradiction)"
                    } else {
                        "never attained together"
                    },
                )
            };
            checks.push(Check::new("equivalence", eq.holds(), detail));
            Some(eq)
        }
        None => None,
    };

    let tax_band = match (&inputs.rents, econ.min_costs().tax.as_ref()) {
        (Some(rents), Some(_)) => {
            let band = verify_tax_band(econ, rents, inputs.budget).with_context(in_file)?;
            checks.push(Check::new(
                "tax_band",
                band.sets_equal,
                format!(
                    "{} of {} configurations minimize tenant cost and tax shortfall, {} lie in the tax-to-net rent band, sets {}",
                    band.minimizing_configurations,
                    band.configurations,
                    band.band_configurations,
                    if band.sets_equal { "coincide" } else { "differ" },
                ),
            ));
            Some(band)
        }
        _ => None,
    };

    let zones = zone_rows(econ, &inputs.zones, Some(&mut checks)).with_context(in_file)?;

    let initial = match &inputs.initial {
        Some((config, flux)) => {
            Some(configuration_row(econ, config, flux, &inputs.weights).with_context(in_file)?)
        }
        None => None,
    };

    let pass = checks.iter().all(|c| c.pass);
    let report_json = report::to_json(&VerifyReport {
        scenario: &stem,
        kind: &sc.kind,
        mode: "verify",
        locations,
        commodities,
        vt_exists,
        summary,
        equivalence,
        tax_band,
        zones,
        initial,
        checks: &checks,
        pass,
    })?;

    let csv = Some(("locations.csv", locations_csv(econ).with_context(in_file)?));
    report::finish(opts, stem, report_json, csv, &checks)
}

#[derive(Serialize)]
struct RunReport<'a> {
    scenario: &'a str,
    kind: &'a str,
    mode: &'a str,
    seed: u64,
    steps: usize,
    accepted: usize,
    stagnated: bool,
    initial: ConfigurationRow,
    #[serde(rename = "final")]
    final_state: FinalRow<'a>,
    impedance_bounds: Vec<(CommodityId, Option<(f64, f64)>)>,
    zones: Vec<ZoneRow>,
    checks: &'a [Check],
    pass: bool,
}

#[derive(Serialize)]
struct FinalRow<'a> {
    configuration: &'a Configuration,
    fluxes: &'a FluxVector,
    expected_costs: ExpectedCosts,
    flux_entropy: f64,
    is_vt: bool,
}

pub fn run(path: &Path, opts: &RunOpts) -> Result<ScenarioOutcome> {
    let sc: VonthunenScenario = scenario::load(path, "vonthunen")?;
    let stem = report::scenario_stem(path);
    let in_file = || path.display().to_string();
    let inputs = sc.build().with_context(in_file)?;
    let econ = &inputs.econ;

    let Some((config0, flux0)) = &inputs.initial else {
        bail!("{}: adaptive runs need an initial section", in_file());
    };
    let Some(adapt_section) = inputs.adapt else {
        bail!("{}: adaptive runs need an adapt section with seed and steps", in_file());
    };
    let seed = opts.seed.unwrap_or(adapt_section.seed);
    let steps = adapt_section.steps;

    let outcome = adapt(econ, config0, flux0, seed, steps).with_context(in_file)?;
    let trace = &outcome.trace;

    let mut checks = Vec::new();
    let times = trace.times();
    let u = trace.u();
    let d = trace.d();
    let mut first_drop = None;
    for i in 1..times.len() {
        let dropped =
            u[i].iter().zip(&u[i - 1]).any(|(now, before)| now < before) || d[i] < d[i - 1];
        if dropped {
            first_drop = Some(i);
            break;
        }
    }
    checks.push(Check::new(
        "monotone_trace",
        first_drop.is_none(),
        match first_drop {
            None => format!("no force decreased over {} steps", steps),
            Some(i) => format!("a force decreased at step {i}"),
        },
    ));
    let dominates = if outcome.accepted > 0 {
        let last = *times.last().expect("non-empty trace");
        better_adapted(trace, times[0], last).with_context(in_file)?
    } else {
        true
    };
    checks.push(Check::new(
        "final_dominates_start",
        dominates,
        if outcome.accepted > 0 {
            format!("{} accepted moves", outcome.accepted)
        } else {
            "no accepted moves".to_string()
        },
    ));

    let uniform = CompanyWeights::uniform(econ);
    let initial = configuration_row(econ, config0, flux0, &uniform).with_context(in_file)?;
    let final_costs = expected_costs(econ, &outcome.config, &uniform).with_context(in_file)?;
    let final_is_vt = is_vt_configuration(econ, &outcome.config).with_context(in_file)?;

    let mut bounds = Vec::new();
    for spec in econ.commodities() {
        bounds.push((spec.id, impedance_bounds(econ, spec.id).ok()));
    }
    let zones = zone_rows(econ, &inputs.zones, None).with_context(in_file)?;

    let pass = checks.iter().all(|c| c.pass);
    let report_json = report::to_json(&RunReport {
        scenario: &stem,
        kind: &sc.kind,
        mode: "run",
        seed,
        steps,
        accepted: outcome.accepted,
        stagnated: outcome.stagnated,
        initial,
        final_state: FinalRow {
            configuration: &outcome.config,
            fluxes: &outcome.flux,
            expected_costs: final_costs,
            flux_entropy: outcome.flux.total_entropy(),
            is_vt: final_is_vt,
        },
        impedance_bounds: bounds,
        zones,
        checks: &checks,
        pass,
    })?;

    // The trace stores forces (negative costs); the table lists the costs
    // themselves. Adding 0.0 folds -0.0 into 0.0 for stable formatting.
    let rows = (0..times.len()).map(|i| {
        vec![
            i.to_string(),
            (-u[i][0] + 0.0).to_string(),
            (-u[i][1] + 0.0).to_string(),
            (-u[i][2] + 0.0).to_string(),
            d[i].to_string(),
        ]
    });
    let csv = report::csv_table(&["step", "C_t", "L_r1", "L_r2", "D_flux"], rows);

    report::finish(opts, stem, report_json, Some(("trace.csv", csv)), &checks)
}

fn location_rows(econ: &Economy) -> Result<Vec<LocationRow>> {
    let mut rows = Vec::with_capacity(econ.n_locations());
    for x in 0..econ.n_locations() {
        let (rent, best) = ideal_rent(econ, x)?;
        rows.push(LocationRow {
            index: x,
            impedance: econ.impedance(x)?,
            ideal_rent: rent,
            best: best.into_iter().collect(),
        });
    }
    Ok(rows)
}

/// Per-location statics: impedance, ideal rent, and each commodity's net value.
fn locations_csv(econ: &Economy) -> Result<String> {
    let ids: Vec<CommodityId> = econ.commodities().map(|s| s.id).collect();
    let mut header = vec!["location".to_string(), "impedance".to_string(), "ideal_rent".to_string()];
    header.extend(ids.iter().map(|id| format!("net_{id}")));
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();

    let mut rows = Vec::with_capacity(econ.n_locations());
    for x in 0..econ.n_locations() {
        let (rent, _) = ideal_rent(econ, x)?;
        let mut row = vec![
            x.to_string(),
            econ.impedance(x)?.to_string(),
            rent.to_string(),
        ];
        for &id in &ids {
            row.push(net_value(econ, id, x)?.to_string());
        }
        rows.push(row);
    }
    Ok(report::csv_table(&header_refs, rows.into_iter()))
}

/// Evaluates the zone claims; with `checks` given, asserted claims add one
/// check each.
fn zone_rows(
    econ: &Economy,
    claims: &[ZoneClaim],
    mut checks: Option<&mut Vec<Check>>,
) -> Result<Vec<ZoneRow>> {
    let mut rows = Vec::with_capacity(claims.len());
    for claim in claims {
        let zone = zones_disjoint(econ, claim.outer, claim.inner)?;
        if let Some(checks) = checks.as_deref_mut() {
            if claim.assert_ordered {
                let pass = zone.hypotheses_hold && zone.ordered == Some(true);
                let detail = format!(
                    "transport dominance {}, distinct net values {}, inner band {:?}, outer band {:?}",
                    zone.transport_dominance,
                    zone.distinct_net_values,
                    zone.inner_bounds,
                    zone.outer_bounds,
                );
                checks.push(Check::new(
                    format!("zone_{}_inside_{}", claim.inner, claim.outer),
                    pass,
                    detail,
                ));
            }
        }
        rows.push(ZoneRow {
            outer: claim.outer,
            inner: claim.inner,
            report: zone,
        });
    }
    Ok(rows)
}

fn configuration_row(
    econ: &Economy,
    config: &Configuration,
    flux: &FluxVector,
    weights: &CompanyWeights,
) -> Result<ConfigurationRow> {
    Ok(ConfigurationRow {
        expected_costs: expected_costs(econ, config, weights)?,
        flux_entropy: flux.total_entropy(),
        is_vt: is_vt_configuration(econ, config)?,
    })
}
