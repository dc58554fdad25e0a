//! Scenario files: schema, loading, and conversion into library inputs.
//!
//! One JSON document per scenario, dispatched on its `kind` field. Tables
//! over locations are keyed by explicit indices, so entry order never
//! matters. Dimensioned sections may carry unit tags; tags are checked
//! against the scenario's declared units and then dropped, the library
//! works on raw reals. Schema errors are reported with JSON-pointer paths.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::de::DeserializeOwned;
use serde::Deserialize;

use gep_core::powerlaw::CostKind;
use gep_core::vonthunen::{
    validate_min_costs, CommodityId, CommoditySpec, CompanyWeights, Configuration, Economy,
    FluxVector, LifeCost, Location, MinCosts, Placement, TransportCost,
};
use gep_core::{
    AveragingSpec, CostSpec, DiversificationSpec, EntityId, GlobalState, Interaction,
    InteractionId, InteractionSpace, OccurrenceTriple, Population, ResourceSpace, Slot,
    SlotLayout,
};

/// Reads and deserializes a scenario after checking its `kind` tag.
pub fn load<T: DeserializeOwned>(path: &Path, expected_kind: &str) -> Result<T> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;

    #[derive(Deserialize)]
    struct Probe {
        kind: Option<String>,
    }
    let probe: Probe = serde_json::from_str(&text)
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    match probe.kind.as_deref() {
        None => bail!(
            "{}: /kind: missing; this command runs \"{expected_kind}\" scenarios",
            path.display()
        ),
        Some(kind) if kind != expected_kind => bail!(
            "{}: /kind: this command runs \"{expected_kind}\" scenarios, the file says \"{kind}\"",
            path.display()
        ),
        Some(_) => {}
    }

    let mut de = serde_json::Deserializer::from_str(&text);
    let value = serde_path_to_error::deserialize(&mut de)
        .map_err(|e| anyhow!("{}: {}: {}", path.display(), pointer(e.path()), e.inner()))?;
    de.end()
        .map_err(|e| anyhow!("{}: trailing content: {e}", path.display()))?;
    Ok(value)
}

/// JSON-pointer form of a deserialization error path.
fn pointer(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for segment in path.iter() {
        out.push('/');
        match segment {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(key),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

/// Location-indexed table: JSON object keyed by stringified indices.
pub type IndexedTable = BTreeMap<String, f64>;

/// Converts an indexed table to a dense vector over `n` locations.
fn table_vec(ptr: &str, map: &IndexedTable, n: usize) -> Result<Vec<f64>> {
    let mut out = vec![f64::NAN; n];
    let mut seen = vec![false; n];
    for (key, &value) in map {
        let index: usize = key
            .parse()
            .map_err(|_| anyhow!("{ptr}/{key}: not a location index"))?;
        if index >= n {
            bail!("{ptr}/{key}: location index out of range, the grid has {n} locations");
        }
        out[index] = value;
        seen[index] = true;
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        bail!("{ptr}: missing an entry for location {missing}");
    }
    Ok(out)
}

fn parse_u32_key(ptr: &str, key: &str) -> Result<u32> {
    key.parse()
        .map_err(|_| anyhow!("{ptr}/{key}: not a numeric id"))
}

/// A declared unit tag must be repeated verbatim wherever it is restated.
fn check_unit(ptr: &str, dimension: &str, declared: &str, given: &Option<String>) -> Result<()> {
    if let Some(tag) = given {
        if tag != declared {
            bail!(
                "{ptr}: unit \"{tag}\" does not match the declared {dimension} unit \"{declared}\""
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Power-law scenarios
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerlawScenario {
    pub kind: String,
    /// Number of ranks.
    pub d: usize,
    /// Cost family, dispatched on its own `kind` tag.
    pub cost: CostKind,
    /// Starting point on the simplex; uniform when omitted.
    #[serde(default)]
    pub init: Option<Vec<f64>>,
    /// Optimizer tolerance; 1e-8 when omitted, `--tol` overrides.
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub max_iters: Option<usize>,
    #[serde(default)]
    pub assert: PowerlawAssert,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerlawAssert {
    /// Largest allowed max-norm gap between minimizer and predicted law.
    #[serde(default)]
    pub max_residual: Option<f64>,
    /// Largest allowed spread of the stationarity values over ranks.
    #[serde(default)]
    pub stationarity_spread: Option<f64>,
}

// ---------------------------------------------------------------------------
// Ring-economy scenarios
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VonthunenScenario {
    pub kind: String,
    pub units: Units,
    /// Locations in index order.
    pub grid: Vec<Point>,
    pub market: Point,
    /// Impedance per location index; Euclidean distance when omitted.
    #[serde(default)]
    pub impedance: Option<IndexedTable>,
    #[serde(default)]
    pub impedance_unit: Option<String>,
    pub commodities: Vec<CommodityScenario>,
    #[serde(default)]
    pub costs: CostsSection,
    /// Averaging weights over companies; uniform when omitted.
    #[serde(default)]
    pub weights: Option<CompanyWeights>,
    /// Rent grid for brute-force enumeration.
    #[serde(default)]
    pub rents: Option<Vec<f64>>,
    #[serde(default)]
    pub rents_unit: Option<String>,
    /// Enumeration budget in configurations; 10 million when omitted.
    #[serde(default)]
    pub budget: Option<u64>,
    /// Zone-ordering claims to check.
    #[serde(default)]
    pub zones: Vec<ZonePairScenario>,
    /// Starting state for adaptive runs.
    #[serde(default)]
    pub initial: Option<InitialSection>,
    #[serde(default)]
    pub adapt: Option<AdaptSection>,
}

/// Unit tags declared once per scenario; restated tags must match.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Units {
    /// Money per area: land values, rents, life costs, cost floors.
    pub land: String,
    /// Money per commodity unit: prices, production and transport costs.
    pub goods: String,
    /// Impedance: grid distances and transport breakpoints.
    pub distance: String,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommodityScenario {
    pub id: u32,
    /// Commodity units per square meter, keyed by location index.
    pub yields: IndexedTable,
    /// Money per commodity unit, keyed by location index.
    pub production_cost: IndexedTable,
    /// Money per commodity unit at the market.
    pub price: f64,
    #[serde(default)]
    pub price_unit: Option<String>,
    /// Transport cost per commodity unit at increasing impedances,
    /// linearly interpolated between breakpoints.
    pub transport: Vec<Breakpoint>,
    #[serde(default)]
    pub transport_unit: Option<String>,
    /// Money per square meter: one constant or a table keyed by location.
    pub life_cost: LifeCostScenario,
    #[serde(default)]
    pub life_cost_unit: Option<String>,
    /// Yearly demand, in commodity units.
    pub demand: f64,
    pub companies: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Breakpoint {
    pub impedance: f64,
    pub cost: f64,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum LifeCostScenario {
    Constant(f64),
    PerLocation(IndexedTable),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostsSection {
    /// Floor of the tenant cost.
    #[serde(default)]
    pub c_0t: f64,
    /// Floor of the landlord loss against the tenant's net value.
    #[serde(default)]
    pub l_1r: f64,
    /// Floor of the landlord loss against the ideal rent.
    #[serde(default)]
    pub l_2r: f64,
    /// Tax per location index; enables the tax-variant landlord cost.
    #[serde(default)]
    pub tax: Option<IndexedTable>,
    #[serde(default)]
    pub unit: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZonePairScenario {
    /// Commodity claimed to occupy the outer band.
    pub outer: u32,
    /// Commodity claimed to sit strictly inside it.
    pub inner: u32,
    /// Assert the ordering rather than just reporting it.
    #[serde(default = "default_true")]
    pub assert_ordered: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSection {
    /// Company placements keyed by commodity id.
    pub placements: BTreeMap<String, Vec<PlacementScenario>>,
    /// Flux shares keyed by commodity id; equal shares when omitted.
    #[serde(default)]
    pub fluxes: Option<BTreeMap<String, Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementScenario {
    pub location: usize,
    pub rent: f64,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AdaptSection {
    pub seed: u64,
    pub steps: usize,
}

/// A zone-ordering claim resolved to commodity ids.
pub struct ZoneClaim {
    pub outer: CommodityId,
    pub inner: CommodityId,
    pub assert_ordered: bool,
}

/// Library-ready form of a ring-economy scenario.
pub struct VonthunenInputs {
    pub econ: Economy,
    pub weights: CompanyWeights,
    pub rents: Option<Vec<f64>>,
    pub budget: u128,
    pub zones: Vec<ZoneClaim>,
    pub initial: Option<(Configuration, FluxVector)>,
    pub adapt: Option<AdaptSection>,
}

impl VonthunenScenario {
    pub fn build(&self) -> Result<VonthunenInputs> {
        let units = &self.units;
        for (ptr, name, value) in [
            ("/units/land", "land", &units.land),
            ("/units/goods", "goods", &units.goods),
            ("/units/distance", "distance", &units.distance),
        ] {
            if value.trim().is_empty() {
                bail!("{ptr}: the {name} unit tag is empty");
            }
        }
        check_unit("/impedance_unit", "distance", &units.distance, &self.impedance_unit)?;
        check_unit("/costs/unit", "land", &units.land, &self.costs.unit)?;
        check_unit("/rents_unit", "land", &units.land, &self.rents_unit)?;

        let n = self.grid.len();
        let grid: Vec<Location> = self.grid.iter().map(|p| Location::new(p.x, p.y)).collect();
        let market = Location::new(self.market.x, self.market.y);
        let impedance = match &self.impedance {
            Some(table) => Some(table_vec("/impedance", table, n)?),
            None => None,
        };

        let mut commodities = Vec::with_capacity(self.commodities.len());
        for (i, c) in self.commodities.iter().enumerate() {
            check_unit(
                &format!("/commodities/{i}/price_unit"),
                "goods",
                &units.goods,
                &c.price_unit,
            )?;
            check_unit(
                &format!("/commodities/{i}/transport_unit"),
                "goods",
                &units.goods,
                &c.transport_unit,
            )?;
            check_unit(
                &format!("/commodities/{i}/life_cost_unit"),
                "land",
                &units.land,
                &c.life_cost_unit,
            )?;
            let yields = table_vec(&format!("/commodities/{i}/yields"), &c.yields, n)?;
            let production_cost = table_vec(
                &format!("/commodities/{i}/production_cost"),
                &c.production_cost,
                n,
            )?;
            let transport_cost =
                TransportCost::new(c.transport.iter().map(|b| (b.impedance, b.cost)).collect())
                    .with_context(|| format!("/commodities/{i}/transport"))?;
            let life_cost = match &c.life_cost {
                LifeCostScenario::Constant(v) => LifeCost::Constant(*v),
                LifeCostScenario::PerLocation(table) => LifeCost::PerLocation(table_vec(
                    &format!("/commodities/{i}/life_cost"),
                    table,
                    n,
                )?),
            };
            commodities.push(CommoditySpec {
                id: CommodityId(c.id),
                yields,
                production_cost,
                price_at_market: c.price,
                transport_cost,
                life_cost,
                demand: c.demand,
                companies: c.companies,
            });
        }

        let tax = match &self.costs.tax {
            Some(table) => Some(table_vec("/costs/tax", table, n)?),
            None => None,
        };
        let min_costs = MinCosts {
            c0t: self.costs.c_0t,
            l1r: self.costs.l_1r,
            l2r: self.costs.l_2r,
            tax,
        };

        let econ = Economy::new(grid, market, commodities, impedance, min_costs)?;

        if let Some(rents) = &self.rents {
            // Floors must stay genuine minima over every representable rent.
            validate_min_costs(&econ, rents)?;
        }

        let weights = match &self.weights {
            Some(w) => w.clone(),
            None => CompanyWeights::uniform(&econ),
        };

        let zones = self
            .zones
            .iter()
            .map(|z| ZoneClaim {
                outer: CommodityId(z.outer),
                inner: CommodityId(z.inner),
                assert_ordered: z.assert_ordered,
            })
            .collect();

        let initial = match &self.initial {
            Some(section) => {
                let mut placements = BTreeMap::new();
                for (key, ps) in &section.placements {
                    let id = parse_u32_key("/initial/placements", key)?;
                    placements.insert(
                        CommodityId(id),
                        ps.iter()
                            .map(|p| Placement {
                                location: p.location,
                                rent: p.rent,
                            })
                            .collect(),
                    );
                }
                let config = Configuration::new(&econ, placements)?;
                let flux = match &section.fluxes {
                    Some(fluxes) => {
                        let mut map = BTreeMap::new();
                        for (key, shares) in fluxes {
                            let id = parse_u32_key("/initial/fluxes", key)?;
                            map.insert(CommodityId(id), shares.clone());
                        }
                        FluxVector::new(&econ, map)?
                    }
                    None => FluxVector::equal_shares(&econ),
                };
                Some((config, flux))
            }
            None => None,
        };

        Ok(VonthunenInputs {
            econ,
            weights,
            rents: self.rents.clone(),
            budget: self.budget.unwrap_or(10_000_000) as u128,
            zones,
            initial,
            adapt: self.adapt,
        })
    }
}

// ---------------------------------------------------------------------------
// Force-trace scenarios
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceScenario {
    pub kind: String,
    /// Entity ids.
    pub entities: Vec<u32>,
    /// State layout per entity id; entities without one carry no state.
    #[serde(default)]
    pub layouts: BTreeMap<String, Vec<SlotScenario>>,
    #[serde(default)]
    pub interactions: Vec<InteractionScenario>,
    /// Strictly increasing observation times.
    pub time_grid: Vec<f64>,
    /// Horizon; the last grid time when omitted.
    #[serde(default)]
    pub t_end: Option<f64>,
    /// Per entity id, one state vector per grid time. Entities with an
    /// empty layout may be omitted.
    #[serde(default)]
    pub states: BTreeMap<String, Vec<Vec<f64>>>,
    /// Per interaction id, one [start, arrival, ongoing] triple per grid time.
    #[serde(default)]
    pub occurrences: BTreeMap<String, Vec<[f64; 3]>>,
    /// Per interaction id, one entity list per grid time.
    #[serde(default)]
    pub neighborhoods: BTreeMap<String, Vec<Vec<u32>>>,
    /// Entities whose forces are traced.
    pub population: Vec<u32>,
    /// Interactions feeding the diversification force, in the given order;
    /// all of them, in scenario order, when omitted.
    #[serde(default)]
    pub family: Option<Vec<u32>>,
    pub cost: CostScenario,
    #[serde(default)]
    pub averaging: AveragingScenario,
    #[serde(default)]
    pub diversification: DiversificationScenario,
    #[serde(default)]
    pub assert: TraceAssert,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotScenario {
    /// Activation level of an interaction, in [0, 1].
    Activation(u32),
    /// Good value carried for an interaction.
    Good(u32),
    /// Named free component.
    Proper(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InteractionScenario {
    pub id: u32,
    pub agents: Vec<u32>,
    pub propagator: u32,
    pub patients: Vec<u32>,
    pub resources: ResourceScenario,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResourceScenario {
    /// Bounded real range with a unit tag.
    Interval { min: f64, max: f64, units: String },
    /// Finite labeled set; goods are stored as label indices.
    Finite(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CostScenario {
    /// The same k cost values for every entity and state.
    Constant { k: usize, value: f64 },
    /// Per entity id, k state-independent cost components.
    PerEntity(BTreeMap<String, Vec<f64>>),
    /// Cost j reads the named proper slot at the newest observed time.
    ProperSlots(Vec<String>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AveragingScenario {
    #[default]
    Uniform,
    /// Fixed weights over the population, in sorted entity order.
    Fixed(Vec<f64>),
}

#[derive(Debug, Default, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiversificationScenario {
    /// Goods normalized to a probability vector.
    #[default]
    NormalizedGoods,
    /// Goods used as probabilities directly.
    Identity,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceAssert {
    /// Require every force to be non-decreasing along the grid.
    #[serde(default)]
    pub monotone: bool,
    /// Require the last grid state to dominate the first.
    #[serde(default)]
    pub final_dominates_start: bool,
}

/// Library-ready form of a force-trace scenario.
pub struct TraceInputs {
    pub space: InteractionSpace,
    pub gs: GlobalState,
    pub pop: Population,
    pub inters: Vec<InteractionId>,
    pub cost: CostSpec,
    pub avg: AveragingSpec,
    pub div: DiversificationSpec,
    pub assert: TraceAssert,
}

impl TraceScenario {
    pub fn build(&self) -> Result<TraceInputs> {
        let entity_set: BTreeSet<EntityId> =
            self.entities.iter().map(|&e| EntityId(e)).collect();
        if entity_set.len() != self.entities.len() {
            bail!("/entities: duplicate entity id");
        }

        let mut layouts = BTreeMap::new();
        for (key, slots) in &self.layouts {
            let id = EntityId(parse_u32_key("/layouts", key)?);
            if !entity_set.contains(&id) {
                bail!("/layouts/{key}: not a declared entity");
            }
            let slots = slots
                .iter()
                .map(|s| match s {
                    SlotScenario::Activation(i) => Slot::Activation(InteractionId(*i)),
                    SlotScenario::Good(i) => Slot::Good(InteractionId(*i)),
                    SlotScenario::Proper(name) => Slot::Proper(name.clone()),
                })
                .collect();
            layouts.insert(id, SlotLayout::new(slots));
        }

        let interactions: Vec<Interaction> = self
            .interactions
            .iter()
            .map(|i| Interaction {
                id: InteractionId(i.id),
                agents: i.agents.iter().map(|&e| EntityId(e)).collect(),
                propagator: EntityId(i.propagator),
                patients: i.patients.iter().map(|&e| EntityId(e)).collect(),
                resource_space: match &i.resources {
                    ResourceScenario::Interval { min, max, units } => ResourceSpace::Interval {
                        min: *min,
                        max: *max,
                        units: units.clone(),
                    },
                    ResourceScenario::Finite(labels) => ResourceSpace::Finite {
                        labels: labels.clone(),
                    },
                },
            })
            .collect();

        let space = InteractionSpace::new(entity_set.clone(), interactions, layouts)?;

        if self.time_grid.is_empty() {
            bail!("/time_grid: needs at least one time");
        }
        let t_end = self.t_end.unwrap_or(*self.time_grid.last().expect("non-empty"));

        let mut states: BTreeMap<EntityId, Vec<Vec<f64>>> = BTreeMap::new();
        for (key, traj) in &self.states {
            let id = EntityId(parse_u32_key("/states", key)?);
            states.insert(id, traj.clone());
        }
        // Entities with an empty layout may omit their (empty) trajectories.
        for &e in &entity_set {
            if !states.contains_key(&e) && space.layout(e).is_empty() {
                states.insert(e, vec![Vec::new(); self.time_grid.len()]);
            }
        }

        let mut occurrence_times = BTreeMap::new();
        for (key, triples) in &self.occurrences {
            let id = InteractionId(parse_u32_key("/occurrences", key)?);
            occurrence_times.insert(
                id,
                triples
                    .iter()
                    .map(|&[s, a, o]| OccurrenceTriple::new(s, a, o))
                    .collect(),
            );
        }

        let mut neighborhoods = BTreeMap::new();
        for (key, sets) in &self.neighborhoods {
            let id = InteractionId(parse_u32_key("/neighborhoods", key)?);
            neighborhoods.insert(
                id,
                sets.iter()
                    .map(|set| set.iter().map(|&e| EntityId(e)).collect::<BTreeSet<_>>())
                    .collect(),
            );
        }

        let gs = GlobalState::new(
            &space,
            self.time_grid.clone(),
            t_end,
            states,
            occurrence_times,
            neighborhoods,
        )?;

        if self.population.is_empty() {
            bail!("/population: needs at least one entity");
        }
        let pop = Population::new(self.population.iter().map(|&e| EntityId(e)));
        for &e in &self.population {
            if !entity_set.contains(&EntityId(e)) {
                bail!("/population: entity {e} is not declared");
            }
        }

        let inters: Vec<InteractionId> = match &self.family {
            Some(ids) => ids.iter().map(|&i| InteractionId(i)).collect(),
            None => self.interactions.iter().map(|i| InteractionId(i.id)).collect(),
        };

        let cost = self.build_cost(&space, &pop)?;
        let avg = match &self.averaging {
            AveragingScenario::Uniform => AveragingSpec::uniform(),
            AveragingScenario::Fixed(weights) => {
                if weights.len() != pop.len() {
                    bail!(
                        "/averaging/fixed: {} weights for {} population members",
                        weights.len(),
                        pop.len()
                    );
                }
                AveragingSpec::fixed(weights.clone())
            }
        };
        let div = match self.diversification {
            DiversificationScenario::NormalizedGoods => DiversificationSpec::normalized_goods(),
            DiversificationScenario::Identity => DiversificationSpec::identity(),
        };

        Ok(TraceInputs {
            space,
            gs,
            pop,
            inters,
            cost,
            avg,
            div,
            assert: self.assert,
        })
    }

    fn build_cost(&self, space: &InteractionSpace, pop: &Population) -> Result<CostSpec> {
        match &self.cost {
            CostScenario::Constant { k, value } => {
                if *k == 0 {
                    bail!("/cost/constant/k: needs at least one component");
                }
                if !value.is_finite() || *value < 0.0 {
                    bail!("/cost/constant/value: must be finite and non-negative, got {value}");
                }
                Ok(CostSpec::constant(*k, *value))
            }
            CostScenario::PerEntity(rows) => {
                let mut table: BTreeMap<EntityId, Vec<f64>> = BTreeMap::new();
                let mut k = None;
                for (key, row) in rows {
                    let id = EntityId(parse_u32_key("/cost/per_entity", key)?);
                    match k {
                        None => k = Some(row.len()),
                        Some(k) if k != row.len() => bail!(
                            "/cost/per_entity/{key}: {} components where earlier rows have {k}",
                            row.len()
                        ),
                        Some(_) => {}
                    }
                    if let Some((j, &v)) = row
                        .iter()
                        .enumerate()
                        .find(|(_, v)| !v.is_finite() || **v < 0.0)
                    {
                        bail!("/cost/per_entity/{key}/{j}: must be finite and non-negative, got {v}");
                    }
                    table.insert(id, row.clone());
                }
                let k = k.filter(|&k| k > 0).ok_or_else(|| {
                    anyhow!("/cost/per_entity: needs at least one entity with one component")
                })?;
                for e in pop.members() {
                    if !table.contains_key(&e) {
                        bail!("/cost/per_entity: no costs for population member {e}");
                    }
                }
                Ok(CostSpec::new(k, move |_, e, j| {
                    table
                        .get(&e)
                        .and_then(|row| row.get(j))
                        .copied()
                        .unwrap_or(f64::NAN)
                }))
            }
            CostScenario::ProperSlots(names) => {
                if names.is_empty() {
                    bail!("/cost/proper_slots: needs at least one slot name");
                }
                let mut table: BTreeMap<EntityId, Vec<usize>> = BTreeMap::new();
                for e in pop.members() {
                    let layout = space.layout(e);
                    let mut indices = Vec::with_capacity(names.len());
                    for (j, name) in names.iter().enumerate() {
                        let slot = Slot::Proper(name.clone());
                        match layout.slots.iter().position(|s| *s == slot) {
                            Some(index) => indices.push(index),
                            None => bail!(
                                "/cost/proper_slots/{j}: entity {e} has no proper slot \"{name}\""
                            ),
                        }
                    }
                    table.insert(e, indices);
                }
                // The newest observed state: the last time of the prefix
                // handed to the cost during trace evaluation.
                Ok(CostSpec::new(names.len(), move |y, e, j| {
                    let Some(&t) = y.time_grid().last() else {
                        return f64::NAN;
                    };
                    let Some(indices) = table.get(&e) else {
                        return f64::NAN;
                    };
                    match y.state_at(e, t) {
                        Ok(state) => state.get(indices[j]).copied().unwrap_or(f64::NAN),
                        Err(_) => f64::NAN,
                    }
                }))
            }
        }
    }
}
