//! Input builders shared by the benchmark targets. The fixtures mirror the
//! shipped scenarios at sizes where the kernels dominate the measurement.

use std::collections::{BTreeMap, BTreeSet};

use gep_core::powerlaw::{make_cost, CostKind, PowerLawProblem};
use gep_core::vonthunen::{
    CommodityId, CommoditySpec, Economy, LifeCost, Location, MinCosts, TransportCost,
};
use gep_core::{
    AveragingSpec, CostSpec, DiversificationSpec, EntityId, GlobalState, Interaction,
    InteractionId, InteractionSpace, OccurrenceTriple, Population, ResourceSpace, Slot,
    SlotLayout,
};

/// 100-rank problem with logarithmic costs over a 26-symbol base.
pub fn alphabet_problem() -> PowerLawProblem {
    make_cost(
        100,
        CostKind::PlainLog {
            a: 1.0,
            b: 26.0,
            j0: 1.0,
        },
    )
    .expect("valid cost family")
}

/// Three collinear locations and two commodities whose net values cross,
/// with the rent grid holding every net value a good location takes.
pub fn crossing_economy() -> (Economy, Vec<f64>) {
    let grid = vec![
        Location::new(1.0, 0.0),
        Location::new(2.0, 0.0),
        Location::new(3.0, 0.0),
    ];
    let market = Location::new(0.0, 0.0);
    let outer = CommoditySpec {
        id: CommodityId(1),
        yields: vec![1.0; 3],
        production_cost: vec![2.0; 3],
        price_at_market: 10.0,
        transport_cost: TransportCost::new(vec![(1.0, 1.0), (3.0, 3.0)]).expect("transport"),
        life_cost: LifeCost::Constant(1.0),
        demand: 6.0,
        companies: 1,
    };
    let inner = CommoditySpec {
        id: CommodityId(2),
        yields: vec![1.0; 3],
        production_cost: vec![2.0; 3],
        price_at_market: 12.5,
        transport_cost: TransportCost::new(vec![(1.0, 2.0), (3.0, 6.0)]).expect("transport"),
        life_cost: LifeCost::Constant(1.0),
        demand: 4.0,
        companies: 1,
    };
    let econ = Economy::new(grid, market, vec![outer, inner], None, MinCosts::default())
        .expect("economy");
    (econ, vec![3.5, 4.0, 5.0, 5.5, 6.0, 7.5])
}

/// Everything `force_trace` consumes, bundled so benches can borrow it.
pub struct ExchangeSystem {
    pub space: InteractionSpace,
    pub gs: GlobalState,
    pub pop: Population,
    pub family: Vec<InteractionId>,
    pub cost: CostSpec,
    pub avg: AveragingSpec,
    pub div: DiversificationSpec,
}

/// A hub entity propagating one good per interaction to `n` peers, sampled
/// at `times` grid points. Peer `j` runs interaction `j` and keeps an
/// upkeep slot the cost function reads.
pub fn exchange_system(n: u32, times: usize) -> ExchangeSystem {
    let entities: BTreeSet<EntityId> = (0..=n).map(EntityId).collect();
    let hub = EntityId(0);

    let interactions: Vec<Interaction> = (1..=n)
        .map(|j| Interaction {
            id: InteractionId(j),
            agents: [EntityId(j)].into_iter().collect(),
            propagator: hub,
            patients: [EntityId(j % n + 1)].into_iter().collect(),
            resource_space: ResourceSpace::Interval {
                min: 0.0,
                max: 1.0,
                units: "kg".into(),
            },
        })
        .collect();

    let mut layouts = BTreeMap::new();
    layouts.insert(
        hub,
        SlotLayout::new((1..=n).map(|j| Slot::Good(InteractionId(j))).collect()),
    );
    for j in 1..=n {
        layouts.insert(
            EntityId(j),
            SlotLayout::new(vec![
                Slot::Activation(InteractionId(j)),
                Slot::Proper("upkeep".into()),
            ]),
        );
    }
    let space = InteractionSpace::new(entities.clone(), interactions, layouts).expect("space");

    let grid: Vec<f64> = (0..times).map(|t| t as f64).collect();
    let t_end = *grid.last().expect("non-empty grid");

    let mut states: BTreeMap<EntityId, Vec<Vec<f64>>> = BTreeMap::new();
    states.insert(
        hub,
        grid.iter()
            .enumerate()
            .map(|(t, _)| {
                let raw: Vec<f64> = (1..=n).map(|j| 1.0 + ((j as usize + t) % 7) as f64).collect();
                let sum: f64 = raw.iter().sum();
                raw.iter().map(|g| g / sum).collect()
            })
            .collect(),
    );
    for j in 1..=n {
        states.insert(
            EntityId(j),
            grid.iter()
                .map(|t| vec![1.0, 1.0 / (1.0 + 0.1 * t)])
                .collect(),
        );
    }

    let occurrences: BTreeMap<InteractionId, Vec<OccurrenceTriple>> = (1..=n)
        .map(|j| {
            (
                InteractionId(j),
                grid.iter()
                    .map(|&t| OccurrenceTriple::new(0.0, t / 2.0, t))
                    .collect(),
            )
        })
        .collect();
    let neighborhoods: BTreeMap<InteractionId, Vec<BTreeSet<EntityId>>> = (1..=n)
        .map(|j| (InteractionId(j), vec![entities.clone(); times]))
        .collect();

    let gs = GlobalState::new(&space, grid, t_end, states, occurrences, neighborhoods)
        .expect("global state");
    let pop = Population::new((1..=n).map(EntityId));
    let family: Vec<InteractionId> = (1..=n).map(InteractionId).collect();
    let cost = CostSpec::new(1, |y: &GlobalState, e, _j| {
        let newest = *y.time_grid().last().expect("non-empty prefix");
        y.state_at(e, newest).map_or(f64::NAN, |row| row[1])
    });

    ExchangeSystem {
        space,
        gs,
        pop,
        family,
        cost,
        avg: AveragingSpec::uniform(),
        div: DiversificationSpec::normalized_goods(),
    }
}
