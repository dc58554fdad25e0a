//! Locations, commodities, land values, ideal rents, and impedance zones.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{CommodityId, VtError, MONEY_TOL};

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Location {
    pub x: f64,
    pub y: f64,
}

impl Location {
    pub fn new(x: f64, y: f64) -> Self {
        Location { x, y }
    }

    pub fn distance_to(&self, other: &Location) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }
}

/// Transport cost as a function of impedance: piecewise linear between
/// breakpoints, clamped to the end values outside their range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransportCost {
    /// `(impedance, cost)` pairs, strictly increasing in impedance.
    breakpoints: Vec<(f64, f64)>,
}

impl TransportCost {
    pub fn new(breakpoints: Vec<(f64, f64)>) -> Result<Self, VtError> {
        if breakpoints.is_empty() {
            return Err(VtError::BadField {
                what: "transport cost",
                message: "needs at least one breakpoint".into(),
            });
        }
        for pair in breakpoints.windows(2) {
            if !(pair[1].0 > pair[0].0) {
                return Err(VtError::BadField {
                    what: "transport cost",
                    message: format!(
                        "breakpoint impedances must be strictly increasing, got {} then {}",
                        pair[0].0, pair[1].0
                    ),
                });
            }
        }
        if let Some(&(j, c)) = breakpoints.iter().find(|(_, c)| !(*c > 0.0) || !c.is_finite()) {
            return Err(VtError::BadField {
                what: "transport cost",
                message: format!("cost at impedance {j} must be positive and finite, got {c}"),
            });
        }
        Ok(TransportCost { breakpoints })
    }

    /// A single flat cost for every impedance.
    pub fn flat(cost: f64) -> Result<Self, VtError> {
        TransportCost::new(vec![(0.0, cost)])
    }

    pub fn breakpoints(&self) -> &[(f64, f64)] {
        &self.breakpoints
    }

    pub fn eval(&self, j: f64) -> f64 {
        let pts = &self.breakpoints;
        if j <= pts[0].0 {
            return pts[0].1;
        }
        if j >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        let hi = pts.partition_point(|&(ji, _)| ji <= j);
        let (j0, c0) = pts[hi - 1];
        let (j1, c1) = pts[hi];
        c0 + (c1 - c0) * (j - j0) / (j1 - j0)
    }
}

/// Cost of living on a plot, per square meter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LifeCost {
    Constant(f64),
    PerLocation(Vec<f64>),
}

impl LifeCost {
    pub fn at(&self, x: usize) -> f64 {
        match self {
            LifeCost::Constant(v) => *v,
            LifeCost::PerLocation(vs) => vs[x],
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, LifeCost::Constant(_))
    }
}

/// One commodity: how much a plot yields, what production and transport
/// cost, what the market pays, and how many companies produce it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CommoditySpec {
    pub id: CommodityId,
    /// Yield per location, units of commodity per square meter.
    pub yields: Vec<f64>,
    /// Production cost per location, money per unit.
    pub production_cost: Vec<f64>,
    /// Market price, money per unit.
    pub price_at_market: f64,
    /// Transport cost per unit as a function of impedance.
    pub transport_cost: TransportCost,
    /// Life cost per square meter.
    pub life_cost: LifeCost,
    /// Yearly demand for the commodity.
    pub demand: f64,
    /// Number of companies producing it.
    pub companies: usize,
}

/// Floors of the cost and loss functions, plus the optional tax schedule.
/// All default to zero, which satisfies every smallness condition.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct MinCosts {
    pub c0t: f64,
    pub l1r: f64,
    pub l2r: f64,
    /// Per-location tax floor for the tax-based renter cost.
    pub tax: Option<Vec<f64>>,
}

/// A finite set of locations around one market, with the commodities traded
/// there. Immutable once constructed; all operations borrow it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Economy {
    grid: Vec<Location>,
    market: Location,
    commodities: Vec<CommoditySpec>,
    /// Impedance to the market per location.
    impedance: Vec<f64>,
    min_costs: MinCosts,
}

impl Economy {
    /// Builds and validates an economy. When `impedance` is `None`, the
    /// Euclidean distance to the market is used.
    pub fn new(
        grid: Vec<Location>,
        market: Location,
        commodities: Vec<CommoditySpec>,
        impedance: Option<Vec<f64>>,
        min_costs: MinCosts,
    ) -> Result<Self, VtError> {
        if grid.is_empty() {
            return Err(VtError::BadField {
                what: "grid",
                message: "needs at least one location".into(),
            });
        }
        let n = grid.len();
        let impedance = match impedance {
            Some(imp) => {
                if imp.len() != n {
                    return Err(VtError::BadField {
                        what: "impedance",
                        message: format!("{} entries for {} locations", imp.len(), n),
                    });
                }
                if let Some((i, &v)) = imp.iter().enumerate().find(|(_, &v)| !(v >= 0.0)) {
                    return Err(VtError::BadField {
                        what: "impedance",
                        message: format!("location {i} has impedance {v}, expected >= 0"),
                    });
                }
                imp
            }
            None => grid.iter().map(|loc| loc.distance_to(&market)).collect(),
        };
        if commodities.is_empty() {
            return Err(VtError::BadField {
                what: "commodities",
                message: "needs at least one commodity".into(),
            });
        }
        let mut seen = BTreeSet::new();
        for spec in &commodities {
            if !seen.insert(spec.id) {
                return Err(VtError::BadField {
                    what: "commodities",
                    message: format!("duplicate id {}", spec.id),
                });
            }
            let check_table = |what: &'static str, table: &[f64]| -> Result<(), VtError> {
                if table.len() != n {
                    return Err(VtError::BadField {
                        what,
                        message: format!(
                            "commodity {}: {} entries for {} locations",
                            spec.id,
                            table.len(),
                            n
                        ),
                    });
                }
                if let Some((i, &v)) = table.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
                    return Err(VtError::BadField {
                        what,
                        message: format!(
                            "commodity {}: location {i} has {v}, expected > 0",
                            spec.id
                        ),
                    });
                }
                Ok(())
            };
            check_table("yield", &spec.yields)?;
            check_table("production cost", &spec.production_cost)?;
            if let LifeCost::PerLocation(vs) = &spec.life_cost {
                check_table("life cost", vs)?;
            } else if !(spec.life_cost.at(0) > 0.0) {
                return Err(VtError::BadField {
                    what: "life cost",
                    message: format!("commodity {}: must be positive", spec.id),
                });
            }
            if !(spec.price_at_market > 0.0) {
                return Err(VtError::BadField {
                    what: "price",
                    message: format!("commodity {}: must be positive", spec.id),
                });
            }
            if !(spec.demand > 0.0) {
                return Err(VtError::BadField {
                    what: "demand",
                    message: format!("commodity {}: must be positive", spec.id),
                });
            }
            if spec.companies < 1 {
                return Err(VtError::BadField {
                    what: "companies",
                    message: format!("commodity {}: needs at least one", spec.id),
                });
            }
        }
        if !(min_costs.c0t >= 0.0 && min_costs.l1r >= 0.0 && min_costs.l2r >= 0.0) {
            return Err(VtError::BadField {
                what: "minimum costs",
                message: "floors must be non-negative".into(),
            });
        }
        if let Some(tax) = &min_costs.tax {
            if tax.len() != n {
                return Err(VtError::BadField {
                    what: "tax",
                    message: format!("{} entries for {} locations", tax.len(), n),
                });
            }
        }
        Ok(Economy {
            grid,
            market,
            commodities,
            impedance,
            min_costs,
        })
    }

    pub fn n_locations(&self) -> usize {
        self.grid.len()
    }

    pub fn grid(&self) -> &[Location] {
        &self.grid
    }

    pub fn location(&self, x: usize) -> Result<&Location, VtError> {
        self.grid.get(x).ok_or(VtError::UnknownLocation {
            index: x,
            n: self.grid.len(),
        })
    }

    pub fn market(&self) -> &Location {
        &self.market
    }

    pub fn impedance(&self, x: usize) -> Result<f64, VtError> {
        self.location(x)?;
        Ok(self.impedance[x])
    }

    pub fn commodity(&self, b: CommodityId) -> Result<&CommoditySpec, VtError> {
        self.commodities
            .iter()
            .find(|c| c.id == b)
            .ok_or(VtError::UnknownCommodity { b })
    }

    /// Commodities in id order.
    pub fn commodities(&self) -> impl Iterator<Item = &CommoditySpec> {
        self.commodities.iter()
    }

    pub fn min_costs(&self) -> &MinCosts {
        &self.min_costs
    }

    /// Total company count across commodities.
    pub fn n_companies(&self) -> usize {
        self.commodities.iter().map(|c| c.companies).sum()
    }
}

/// `L_b(x) = yield(x) * [price - production_cost(x) - transport_cost(j(x))]`:
/// what a square meter of land at `x` earns commodity `b` per year. May be
/// negative when transport eats more than the margin.
pub fn land_value(econ: &Economy, b: CommodityId, x: usize) -> Result<f64, VtError> {
    let spec = econ.commodity(b)?;
    let j = econ.impedance(x)?;
    Ok(spec.yields[x]
        * (spec.price_at_market - spec.production_cost[x] - spec.transport_cost.eval(j)))
}

/// Land value net of the life cost, `L_b(x) - k_b(x)`: the most a company
/// can bid for the plot without losing money.
pub fn net_value(econ: &Economy, b: CommodityId, x: usize) -> Result<f64, VtError> {
    Ok(land_value(econ, b, x)? - econ.commodity(b)?.life_cost.at(x))
}

/// The ideal rent `R(x) = max_b [L_b(x) - k_b(x)]` and every commodity
/// attaining it (ties within [`MONEY_TOL`] preserved, no arbitrary pick).
pub fn ideal_rent(econ: &Economy, x: usize) -> Result<(f64, BTreeSet<CommodityId>), VtError> {
    econ.location(x)?;
    let mut best = f64::NEG_INFINITY;
    for spec in econ.commodities() {
        best = best.max(net_value(econ, spec.id, x)?);
    }
    let mut argmax = BTreeSet::new();
    for spec in econ.commodities() {
        if (net_value(econ, spec.id, x)? - best).abs() <= MONEY_TOL {
            argmax.insert(spec.id);
        }
    }
    Ok((best, argmax))
}

/// True iff `b` attains the ideal rent at `x`.
pub fn is_good_for(econ: &Economy, x: usize, b: CommodityId) -> Result<bool, VtError> {
    econ.commodity(b)?;
    let (_, argmax) = ideal_rent(econ, x)?;
    Ok(argmax.contains(&b))
}

/// Smallest and largest impedance over the locations good for `b`: the
/// commodity's zone as an impedance band. Errors when the zone is empty,
/// since min/max are undefined.
pub fn impedance_bounds(econ: &Economy, b: CommodityId) -> Result<(f64, f64), VtError> {
    econ.commodity(b)?;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut any = false;
    for x in 0..econ.n_locations() {
        if is_good_for(econ, x, b)? {
            let j = econ.impedance(x)?;
            lo = lo.min(j);
            hi = hi.max(j);
            any = true;
        }
    }
    if !any {
        return Err(VtError::NoGoodLocation { b });
    }
    Ok((lo, hi))
}

/// What commodity `b` gains by relocating from `x` to `y`:
/// `L_b(y) - L_b(x)`. Antisymmetric and telescoping by construction.
pub fn gain(econ: &Economy, b: CommodityId, x: usize, y: usize) -> Result<f64, VtError> {
    Ok(land_value(econ, b, y)? - land_value(econ, b, x)?)
}

/// Whether the two zone-ordering hypotheses hold for (outer `b`, inner
/// `beta`), and the resulting band ordering when they do.
#[derive(Debug, Clone, Serialize)]
pub struct ZoneReport {
    /// Moving toward the market, `beta` gains at least as much as `b`,
    /// at every grid pair with strictly lower target impedance.
    pub transport_dominance: bool,
    /// The two net values never tie at any location.
    pub distinct_net_values: bool,
    pub hypotheses_hold: bool,
    /// `(min, max)` impedance of the inner commodity's zone, when non-empty.
    pub inner_bounds: Option<(f64, f64)>,
    pub outer_bounds: Option<(f64, f64)>,
    /// With hypotheses holding and both zones non-empty: does the inner band
    /// end before the outer band begins?
    pub ordered: Option<bool>,
}

/// Checks whether commodity `beta`'s zone lies strictly inside `b`'s.
///
/// Hypotheses checked over all grid pairs: relocation toward the market
/// gains `beta` at least as much as `b`, and the two net values never tie.
/// Both life costs must be location-independent; the band ordering is only
/// asserted when the hypotheses hold and both zones are non-empty.
pub fn zones_disjoint(
    econ: &Economy,
    b: CommodityId,
    beta: CommodityId,
) -> Result<ZoneReport, VtError> {
    if b == beta {
        return Err(VtError::SameCommodity { b });
    }
    for id in [b, beta] {
        if !econ.commodity(id)?.life_cost.is_constant() {
            return Err(VtError::NonConstantLifeCost { b: id });
        }
    }
    let n = econ.n_locations();
    let mut transport_dominance = true;
    'outer: for x in 0..n {
        for y in 0..n {
            if econ.impedance(y)? < econ.impedance(x)? {
                let g_beta = gain(econ, beta, x, y)?;
                let g_b = gain(econ, b, x, y)?;
                if g_beta < g_b - MONEY_TOL {
                    transport_dominance = false;
                    break 'outer;
                }
            }
        }
    }
    let mut distinct_net_values = true;
    for y in 0..n {
        if (net_value(econ, beta, y)? - net_value(econ, b, y)?).abs() <= MONEY_TOL {
            distinct_net_values = false;
            break;
        }
    }
    let hypotheses_hold = transport_dominance && distinct_net_values;
    let inner_bounds = impedance_bounds(econ, beta).ok();
    let outer_bounds = impedance_bounds(econ, b).ok();
    let ordered = match (hypotheses_hold, inner_bounds, outer_bounds) {
        (true, Some((_, inner_hi)), Some((outer_lo, _))) => Some(inner_hi <= outer_lo),
        _ => None,
    };
    Ok(ZoneReport {
        transport_dominance,
        distinct_net_values,
        hypotheses_hold,
        inner_bounds,
        outer_bounds,
        ordered,
    })
}

/// True iff the rent stands in one of the eight admissible relations to the
/// net land value and the ideal rent.
///
/// Since the ideal rent is the maximum of net values, `net <= R` always, and
/// the eight consistent orderings of `(rent, net, R)` cover every real rent;
/// the function exists to make that case split explicit and checkable.
pub fn rent_pattern_holds(
    econ: &Economy,
    b: CommodityId,
    x: usize,
    rent: f64,
) -> Result<bool, VtError> {
    let net = net_value(econ, b, x)?;
    let (ideal, _) = ideal_rent(econ, x)?;
    let eq = |a: f64, b: f64| (a - b).abs() <= MONEY_TOL;
    let lt = |a: f64, b: f64| a < b - MONEY_TOL;
    // net < R branch: five placements of the rent.
    let strict = lt(net, ideal)
        && (lt(rent, net)
            || eq(rent, net)
            || (lt(net, rent) && lt(rent, ideal))
            || eq(rent, ideal)
            || lt(ideal, rent));
    // net = R branch: three placements.
    let tied = eq(net, ideal) && (lt(rent, net) || eq(rent, net) || lt(net, rent));
    Ok(strict || tied)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vonthunen::testkit::{ring_economy, two_location_economy};

    #[test]
    fn land_value_matches_hand_arithmetic() {
        // yield 2, price 10, production 3, transport 1 -> 2 * (10-3-1) = 12.
        let econ = Economy::new(
            vec![Location::new(3.0, 4.0)],
            Location::new(0.0, 0.0),
            vec![CommoditySpec {
                id: CommodityId(1),
                yields: vec![2.0],
                production_cost: vec![3.0],
                price_at_market: 10.0,
                transport_cost: TransportCost::flat(1.0).unwrap(),
                life_cost: LifeCost::Constant(1.0),
                demand: 1.0,
                companies: 1,
            }],
            None,
            MinCosts::default(),
        )
        .unwrap();
        assert_eq!(land_value(&econ, CommodityId(1), 0).unwrap(), 12.0);
        // Default impedance is the Euclidean distance.
        assert_eq!(econ.impedance(0).unwrap(), 5.0);
    }

    #[test]
    fn transport_eating_the_margin_zeroes_the_land_value() {
        let econ = Economy::new(
            vec![Location::new(1.0, 0.0)],
            Location::new(0.0, 0.0),
            vec![CommoditySpec {
                id: CommodityId(1),
                yields: vec![2.0],
                production_cost: vec![3.0],
                price_at_market: 10.0,
                transport_cost: TransportCost::flat(7.0).unwrap(),
                life_cost: LifeCost::Constant(1.0),
                demand: 1.0,
                companies: 1,
            }],
            None,
            MinCosts::default(),
        )
        .unwrap();
        assert_eq!(land_value(&econ, CommodityId(1), 0).unwrap(), 0.0);
    }

    #[test]
    fn nearer_location_is_worth_at_least_as_much() {
        let econ = ring_economy();
        for b in [CommodityId(1), CommodityId(2)] {
            for x in 0..econ.n_locations() {
                for y in 0..econ.n_locations() {
                    if econ.impedance(y).unwrap() <= econ.impedance(x).unwrap() {
                        assert!(
                            land_value(&econ, b, y).unwrap()
                                >= land_value(&econ, b, x).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn transport_cost_interpolates_and_clamps() {
        let tc = TransportCost::new(vec![(0.0, 1.0), (2.0, 3.0), (4.0, 3.5)]).unwrap();
        assert_eq!(tc.eval(0.0), 1.0);
        assert_eq!(tc.eval(1.0), 2.0);
        assert_eq!(tc.eval(3.0), 3.25);
        assert_eq!(tc.eval(-1.0), 1.0);
        assert_eq!(tc.eval(9.0), 3.5);
        assert!(TransportCost::new(vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(TransportCost::new(vec![(0.0, 0.0)]).is_err());
    }

    #[test]
    fn ideal_rent_keeps_every_tied_commodity() {
        let econ = two_location_economy(2.0, 2.0);
        let (value, argmax) = ideal_rent(&econ, 0).unwrap();
        assert_eq!(value, 2.0);
        assert_eq!(argmax.len(), 2);

        let econ = two_location_economy(1.0, 2.0);
        let (value, argmax) = ideal_rent(&econ, 0).unwrap();
        assert_eq!(value, 2.0);
        assert!(argmax.contains(&CommodityId(2)));
        assert_eq!(argmax.len(), 1);
    }

    #[test]
    fn dominated_commodity_is_good_nowhere() {
        let econ = two_location_economy(1.0, 2.0);
        for x in 0..2 {
            assert!(!is_good_for(&econ, x, CommodityId(1)).unwrap());
            assert!(is_good_for(&econ, x, CommodityId(2)).unwrap());
        }
        assert!(matches!(
            impedance_bounds(&econ, CommodityId(1)),
            Err(VtError::NoGoodLocation { b: CommodityId(1) })
        ));
    }

    #[test]
    fn impedance_bounds_span_the_good_locations() {
        let econ = ring_economy();
        // Inner commodity wins at radii 0.5, 1, 1.5 (and the mirrored -1);
        // outer at 2, 2.5, 3 (and the mirrored -2.5).
        assert_eq!(impedance_bounds(&econ, CommodityId(1)).unwrap(), (0.5, 1.5));
        assert_eq!(impedance_bounds(&econ, CommodityId(2)).unwrap(), (2.0, 3.0));
    }

    #[test]
    fn single_good_location_gives_a_degenerate_band() {
        let grid = vec![Location::new(5.0, 0.0)];
        let econ = Economy::new(
            grid,
            Location::new(0.0, 0.0),
            vec![CommoditySpec {
                id: CommodityId(1),
                yields: vec![1.0],
                production_cost: vec![1.0],
                price_at_market: 5.0,
                transport_cost: TransportCost::flat(1.0).unwrap(),
                life_cost: LifeCost::Constant(1.0),
                demand: 1.0,
                companies: 1,
            }],
            None,
            MinCosts::default(),
        )
        .unwrap();
        assert_eq!(impedance_bounds(&econ, CommodityId(1)).unwrap(), (5.0, 5.0));
    }

    #[test]
    fn gain_is_antisymmetric_and_telescoping() {
        let econ = ring_economy();
        let b = CommodityId(1);
        assert_eq!(gain(&econ, b, 2, 2).unwrap(), 0.0);
        let g01 = gain(&econ, b, 0, 1).unwrap();
        let g10 = gain(&econ, b, 1, 0).unwrap();
        assert_eq!(g01, -g10);
        let g12 = gain(&econ, b, 1, 2).unwrap();
        let g02 = gain(&econ, b, 0, 2).unwrap();
        assert!((g01 + g12 - g02).abs() < 1e-12);
        // Net values at radii 0.5 and 1.0 differ by the transport slope 2.
        assert!((gain(&econ, b, 1, 0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ring_zones_are_ordered() {
        let econ = ring_economy();
        let report = zones_disjoint(&econ, CommodityId(2), CommodityId(1)).unwrap();
        assert!(report.transport_dominance);
        assert!(report.distinct_net_values);
        assert!(report.hypotheses_hold);
        assert_eq!(report.inner_bounds, Some((0.5, 1.5)));
        assert_eq!(report.outer_bounds, Some((2.0, 3.0)));
        assert_eq!(report.ordered, Some(true));
    }

    #[test]
    fn tied_net_values_fail_the_hypotheses() {
        let econ = two_location_economy(2.0, 2.0);
        let report = zones_disjoint(&econ, CommodityId(2), CommodityId(1)).unwrap();
        assert!(!report.distinct_net_values);
        assert!(!report.hypotheses_hold);
        assert_eq!(report.ordered, None);
    }

    #[test]
    fn zone_comparison_rejects_bad_inputs() {
        let econ = ring_economy();
        assert!(matches!(
            zones_disjoint(&econ, CommodityId(1), CommodityId(1)),
            Err(VtError::SameCommodity { .. })
        ));

        let grid = vec![Location::new(1.0, 0.0), Location::new(2.0, 0.0)];
        let econ = Economy::new(
            grid,
            Location::new(0.0, 0.0),
            vec![
                CommoditySpec {
                    id: CommodityId(1),
                    yields: vec![1.0; 2],
                    production_cost: vec![1.0; 2],
                    price_at_market: 5.0,
                    transport_cost: TransportCost::flat(1.0).unwrap(),
                    life_cost: LifeCost::PerLocation(vec![1.0, 2.0]),
                    demand: 1.0,
                    companies: 1,
                },
                CommoditySpec {
                    id: CommodityId(2),
                    yields: vec![1.0; 2],
                    production_cost: vec![1.0; 2],
                    price_at_market: 6.0,
                    transport_cost: TransportCost::flat(1.0).unwrap(),
                    life_cost: LifeCost::Constant(1.0),
                    demand: 1.0,
                    companies: 1,
                },
            ],
            None,
            MinCosts::default(),
        )
        .unwrap();
        assert!(matches!(
            zones_disjoint(&econ, CommodityId(2), CommodityId(1)),
            Err(VtError::NonConstantLifeCost { b: CommodityId(1) })
        ));
    }

    #[test]
    fn every_rent_satisfies_one_of_the_eight_patterns() {
        let econ = ring_economy();
        let nets: Vec<f64> = (0..econ.n_locations())
            .map(|x| net_value(&econ, CommodityId(1), x).unwrap())
            .collect();
        for (x, net) in nets.iter().enumerate() {
            let (ideal, _) = ideal_rent(&econ, x).unwrap();
            let probes = [
                net - 1.0,
                *net,
                0.5 * (net + ideal),
                ideal,
                ideal + 1.0,
                -3.0,
                0.0,
                1e6,
            ];
            for r in probes {
                assert!(rent_pattern_holds(&econ, CommodityId(1), x, r).unwrap());
                assert!(rent_pattern_holds(&econ, CommodityId(2), x, r).unwrap());
            }
        }
    }

    #[test]
    fn construction_rejects_inconsistent_tables() {
        let grid = vec![Location::new(1.0, 0.0)];
        let bad = CommoditySpec {
            id: CommodityId(1),
            yields: vec![1.0, 2.0],
            production_cost: vec![1.0],
            price_at_market: 5.0,
            transport_cost: TransportCost::flat(1.0).unwrap(),
            life_cost: LifeCost::Constant(1.0),
            demand: 1.0,
            companies: 1,
        };
        assert!(matches!(
            Economy::new(
                grid,
                Location::new(0.0, 0.0),
                vec![bad],
                None,
                MinCosts::default()
            ),
            Err(VtError::BadField { what: "yield", .. })
        ));
    }
}
