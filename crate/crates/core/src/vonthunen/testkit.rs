//! Shared economies for the module's tests.

use super::*;

/// Two locations, flat tables: commodity b has net value `net_b` everywhere.
/// With distinct net values the weaker commodity has no good location.
pub(crate) fn two_location_economy(net1: f64, net2: f64) -> Economy {
    let grid = vec![Location::new(1.0, 0.0), Location::new(2.0, 0.0)];
    let commodity = |id: u32, net: f64| CommoditySpec {
        id: CommodityId(id),
        yields: vec![1.0; 2],
        production_cost: vec![1.0; 2],
        // price = net + production + transport + life, so L - k = net.
        price_at_market: net + 3.0,
        transport_cost: TransportCost::flat(1.0).unwrap(),
        life_cost: LifeCost::Constant(1.0),
        demand: 4.0,
        companies: 1,
    };
    Economy::new(
        grid,
        Location::new(0.0, 0.0),
        vec![commodity(1, net1), commodity(2, net2)],
        None,
        MinCosts::default(),
    )
    .unwrap()
}

/// Two commodities on a line of radii; the first has the steeper transport
/// cost, so it outbids the second near the market and loses far away.
/// Net values: inner 8 - 2j, outer 5.5 - 0.5j, crossing at j = 5/3.
pub(crate) fn ring_economy() -> Economy {
    let radii = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
    let mut grid: Vec<Location> = radii.iter().map(|&r| Location::new(r, 0.0)).collect();
    // Duplicate impedances on the other side exercise ties in the bounds.
    grid.push(Location::new(-1.0, 0.0));
    grid.push(Location::new(-2.5, 0.0));
    let n = grid.len();
    let commodities = vec![
        CommoditySpec {
            id: CommodityId(1),
            yields: vec![1.0; n],
            production_cost: vec![1.0; n],
            price_at_market: 10.5,
            transport_cost: TransportCost::new(vec![(0.0, 0.5), (3.0, 6.5)]).unwrap(),
            life_cost: LifeCost::Constant(1.0),
            demand: 6.0,
            companies: 2,
        },
        CommoditySpec {
            id: CommodityId(2),
            yields: vec![1.0; n],
            production_cost: vec![1.0; n],
            price_at_market: 7.75,
            transport_cost: TransportCost::new(vec![(0.0, 0.25), (3.0, 1.75)]).unwrap(),
            life_cost: LifeCost::Constant(1.0),
            demand: 6.0,
            companies: 2,
        },
    ];
    Economy::new(
        grid,
        Location::new(0.0, 0.0),
        commodities,
        None,
        MinCosts::default(),
    )
    .unwrap()
}
