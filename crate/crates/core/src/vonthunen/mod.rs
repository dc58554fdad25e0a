//! A ring economy of companies renting farmland around a single marketplace.
//!
//! Companies produce commodities whose sale value at the market shrinks with
//! transport cost, so the net value of a plot of land depends on its
//! impedance to the market. Landlords rent to the highest bidder. The module
//! computes land values and ideal rents, classifies which commodity each
//! location is good for, bounds the impedance band (zone) each commodity
//! occupies, and checks when two zones cannot interleave.
//!
//! On top of the statics sit three dynamics-flavoured pieces:
//!
//! * tenant/renter cost functions whose expectations are minimized exactly by
//!   configurations where every company pays the net land value at a location
//!   good for its commodity (checked by brute-force enumeration);
//! * goods fluxes per company, whose entropy is maximized by equal shares of
//!   the demand (cross-checked against the simplex optimizer);
//! * [`adapt`], a seeded local search accepting only moves that worsen no
//!   force, so its force trace is non-decreasing by construction.
//!
//! Monetary comparisons use the absolute tolerance [`MONEY_TOL`]; geometry
//! (impedances) compares exactly.

mod adapt;
mod costs;
mod economy;
mod flux;
#[cfg(test)]
pub(crate) mod testkit;

pub use adapt::{adapt, AdaptReport};
pub use costs::{
    expected_costs, is_vt_configuration, renter_loss1, renter_loss2, renter_tax_cost,
    tenant_cost, validate_min_costs, verify_tax_band, verify_vt_equivalence, CompanyWeights,
    Configuration, EquivalenceReport, ExpectedCosts, Placement, TaxBandReport,
};
pub use economy::{
    gain, ideal_rent, impedance_bounds, is_good_for, land_value, net_value, rent_pattern_holds,
    zones_disjoint, CommoditySpec, Economy, LifeCost, Location, MinCosts, TransportCost,
    ZoneReport,
};
pub use flux::{flux_entropy, maximize_flux_entropy, FluxVector};

use crate::forces::ForceError;
use crate::powerlaw::PowerLawError;

/// Absolute tolerance on monetary equalities (rents, land values, costs).
/// Grid arithmetic is exact in intent; this absorbs float rounding.
pub const MONEY_TOL: f64 = 1e-9;

/// Identifies a commodity.
#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Default,
    serde::Serialize,
    serde::Deserialize,
)]
#[serde(transparent)]
pub struct CommodityId(pub u32);

impl std::fmt::Display for CommodityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "b{}", self.0)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VtError {
    #[error("location index {index} out of range, grid has {n} locations")]
    UnknownLocation { index: usize, n: usize },
    #[error("unknown commodity {b}")]
    UnknownCommodity { b: CommodityId },
    #[error("{what}: {message}")]
    BadField {
        what: &'static str,
        message: String,
    },
    #[error("commodity {b}: companies {a1} and {a2} share location {location}")]
    DuplicateLocation {
        b: CommodityId,
        a1: usize,
        a2: usize,
        location: usize,
    },
    #[error("commodity {b} needs {expected} company placements, got {got}")]
    WrongCompanyCount {
        b: CommodityId,
        expected: usize,
        got: usize,
    },
    #[error("no location is good for commodity {b}, its zone is empty")]
    NoGoodLocation { b: CommodityId },
    #[error("zone comparison needs two distinct commodities, got {b} twice")]
    SameCommodity { b: CommodityId },
    #[error("commodity {b} has a location-dependent life cost; the zone ordering assumes constant life costs")]
    NonConstantLifeCost { b: CommodityId },
    #[error("averaging weights are degenerate: {reason}")]
    DegenerateWeights { reason: String },
    #[error("flux vector for commodity {b} invalid: {reason}")]
    BadFlux { b: CommodityId, reason: String },
    #[error("no tax schedule configured, the tax-based renter cost is undefined")]
    TaxNotConfigured,
    #[error("minimum cost {which} = {value} is too large: {message}")]
    MinCostTooLarge {
        which: &'static str,
        value: f64,
        message: String,
    },
    #[error(
        "rent grid is missing the net land value {net} of commodity {b} at good location {location}; exact-rent configurations would not be representable"
    )]
    MissingRentValue {
        b: CommodityId,
        location: usize,
        net: f64,
    },
    #[error("enumeration needs {required} configurations, budget allows {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error(transparent)]
    Optimizer(#[from] PowerLawError),
    #[error(transparent)]
    Force(#[from] ForceError),
}
