//! Goods fluxes per company and their entropy.
//!
//! Each company of commodity b ships a positive share of the yearly demand;
//! the shares sum to the demand exactly. The diversification force of the
//! commodity's population is the entropy of the normalized shares, maximized
//! uniquely by equal shares.

use std::collections::BTreeMap;

use serde::Serialize;

use super::economy::Economy;
use super::{CommodityId, VtError};
use crate::forces::entropy_bits;
use crate::powerlaw::{minimize_ratio, PowerLawProblem};

/// Per commodity, the flux each company carries, in demand units.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FluxVector {
    flux: BTreeMap<CommodityId, Vec<f64>>,
}

impl FluxVector {
    pub fn new(
        econ: &Economy,
        flux: BTreeMap<CommodityId, Vec<f64>>,
    ) -> Result<Self, VtError> {
        for b in flux.keys() {
            econ.commodity(*b)?;
        }
        for spec in econ.commodities() {
            let shares = flux.get(&spec.id).ok_or_else(|| VtError::BadFlux {
                b: spec.id,
                reason: "no shares given".into(),
            })?;
            if shares.len() != spec.companies {
                return Err(VtError::BadFlux {
                    b: spec.id,
                    reason: format!(
                        "{} shares for {} companies",
                        shares.len(),
                        spec.companies
                    ),
                });
            }
            let tol = 1e-9 * spec.demand.max(1.0);
            for (a, &phi) in shares.iter().enumerate() {
                if !(phi > 0.0) {
                    return Err(VtError::BadFlux {
                        b: spec.id,
                        reason: format!("company {a} carries {phi}, expected > 0"),
                    });
                }
                if phi > spec.demand + tol {
                    return Err(VtError::BadFlux {
                        b: spec.id,
                        reason: format!(
                            "company {a} carries {phi}, more than the demand {}",
                            spec.demand
                        ),
                    });
                }
            }
            let sum: f64 = shares.iter().sum();
            if (sum - spec.demand).abs() > tol {
                return Err(VtError::BadFlux {
                    b: spec.id,
                    reason: format!("shares sum to {sum}, demand is {}", spec.demand),
                });
            }
        }
        Ok(FluxVector { flux })
    }

    /// Every company carries demand / companies.
    pub fn equal_shares(econ: &Economy) -> Self {
        let flux = econ
            .commodities()
            .map(|spec| {
                (
                    spec.id,
                    vec![spec.demand / spec.companies as f64; spec.companies],
                )
            })
            .collect();
        FluxVector { flux }
    }

    pub fn shares(&self, b: CommodityId) -> Result<&[f64], VtError> {
        self.flux
            .get(&b)
            .map(Vec::as_slice)
            .ok_or(VtError::UnknownCommodity { b })
    }

    /// Commodities in id order with their shares.
    pub fn iter(&self) -> impl Iterator<Item = (CommodityId, &[f64])> {
        self.flux.iter().map(|(b, shares)| (*b, shares.as_slice()))
    }

    /// Moves `amount` of flux between two companies of `b`. The caller keeps
    /// the invariants: both shares stay positive and the sum is untouched.
    pub(crate) fn with_transfer(
        &self,
        b: CommodityId,
        from: usize,
        to: usize,
        amount: f64,
    ) -> FluxVector {
        let mut flux = self.flux.clone();
        let shares = flux.get_mut(&b).expect("transfer on a known commodity");
        shares[from] -= amount;
        shares[to] += amount;
        FluxVector { flux }
    }

    /// Sum of the per-commodity share entropies, in bits.
    pub fn total_entropy(&self) -> f64 {
        self.flux
            .values()
            .map(|shares| {
                let sum: f64 = shares.iter().sum();
                entropy_bits(&shares.iter().map(|p| p / sum).collect::<Vec<_>>())
            })
            .sum()
    }
}

/// Entropy in bits of commodity `b`'s share distribution.
pub fn flux_entropy(flux: &FluxVector, b: CommodityId) -> Result<f64, VtError> {
    let shares = flux.shares(b)?;
    if let Some((a, &phi)) = shares.iter().enumerate().find(|(_, &phi)| !(phi > 0.0)) {
        return Err(VtError::BadFlux {
            b,
            reason: format!("company {a} carries {phi}, expected > 0"),
        });
    }
    let sum: f64 = shares.iter().sum();
    Ok(entropy_bits(
        &shares.iter().map(|p| p / sum).collect::<Vec<_>>(),
    ))
}

/// The entropy-maximizing flux split: equal shares `demand / companies`.
///
/// The closed form follows from the zero-exponent power law (constant
/// energy, alpha = 0 gives k^0 everywhere, hence the uniform vector), but
/// the answer is not taken on faith: a ratio minimization with constant
/// energy must land within `tol` of equal shares first, so a broken
/// optimizer fails this function rather than being papered over. `tol`
/// below 1e-6 is clamped to 1e-6, the position accuracy a descent method
/// can certify in f64.
pub fn maximize_flux_entropy(
    companies: usize,
    demand: f64,
    tol: f64,
) -> Result<Vec<f64>, VtError> {
    if companies == 0 {
        return Err(VtError::BadField {
            what: "companies",
            message: "need at least one".into(),
        });
    }
    if !(demand > 0.0) {
        return Err(VtError::BadField {
            what: "demand",
            message: format!("must be positive, got {demand}"),
        });
    }
    if !(tol > 0.0) {
        return Err(VtError::BadField {
            what: "tol",
            message: format!("must be positive, got {tol}"),
        });
    }
    if companies == 1 {
        return Ok(vec![demand]);
    }
    // Constant energy: minimizing E/D is exactly maximizing the entropy.
    let prob = PowerLawProblem::new(
        companies,
        |_| 1.0,
        |x| vec![0.0; x.len()],
        |_, _| 0.0,
    )?;
    // A deterministic skewed start, so the optimizer genuinely has to move.
    let raw: Vec<f64> = (0..companies).map(|k| (k + 1) as f64).collect();
    let sum: f64 = raw.iter().sum();
    let init: Vec<f64> = raw.iter().map(|v| v / sum).collect();
    let check = tol.max(1e-6);
    let y = minimize_ratio(&prob, &init, 1e-8, 100_000)?;
    let uniform = 1.0 / companies as f64;
    let dev = y
        .iter()
        .map(|v| (v - uniform).abs())
        .fold(0.0, f64::max);
    if dev > check {
        return Err(VtError::BadField {
            what: "flux maximizer",
            message: format!("optimizer is {dev:e} from equal shares, outside {check:e}"),
        });
    }
    Ok(vec![demand / companies as f64; companies])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::powerlaw::predicted_distribution;
    use crate::vonthunen::testkit::ring_economy;

    #[test]
    fn equal_shares_have_maximal_entropy() {
        let econ = ring_economy();
        let flux = FluxVector::equal_shares(&econ);
        // Two companies per commodity: 1 bit each.
        assert_eq!(flux_entropy(&flux, CommodityId(1)).unwrap(), 1.0);
        assert_eq!(flux.total_entropy(), 2.0);
    }

    #[test]
    fn entropy_matches_hand_values() {
        let econ = ring_economy();
        let flux = FluxVector::new(
            &econ,
            [
                (CommodityId(1), vec![3.0, 3.0]),
                (CommodityId(2), vec![4.5, 1.5]),
            ]
            .into(),
        )
        .unwrap();
        assert_eq!(flux_entropy(&flux, CommodityId(1)).unwrap(), 1.0);
        // Shares (3/4, 1/4): entropy 2 - (3/4)log2(3) exactly.
        let expected = 2.0 - 0.75 * 3f64.log2();
        assert!((flux_entropy(&flux, CommodityId(2)).unwrap() - expected).abs() < 1e-15);
        // Any skew strictly lowers the entropy below the uniform bit.
        assert!(flux_entropy(&flux, CommodityId(2)).unwrap() < 1.0);
    }

    #[test]
    fn invariants_are_enforced() {
        let econ = ring_economy();
        let make = |shares1: Vec<f64>| {
            FluxVector::new(
                &econ,
                [(CommodityId(1), shares1), (CommodityId(2), vec![3.0, 3.0])].into(),
            )
        };
        assert!(matches!(
            make(vec![3.0]),
            Err(VtError::BadFlux { .. })
        ));
        assert!(matches!(
            make(vec![6.0, 0.0]),
            Err(VtError::BadFlux { .. })
        ));
        assert!(matches!(
            make(vec![4.0, 4.0]),
            Err(VtError::BadFlux { .. })
        ));
        assert!(matches!(
            make(vec![7.0, -1.0]),
            Err(VtError::BadFlux { .. })
        ));
    }

    #[test]
    fn maximizer_returns_equal_shares() {
        assert_eq!(maximize_flux_entropy(1, 7.0, 1e-9).unwrap(), vec![7.0]);
        let flux = maximize_flux_entropy(5, 10.0, 1e-9).unwrap();
        for &phi in &flux {
            assert!((phi - 2.0).abs() <= 1e-9 * 10.0);
        }
    }

    #[test]
    fn maximizer_agrees_with_the_power_law_prediction() {
        // With a zero exponent coefficient the predicted distribution is
        // flat; the flux maximizer must land on the same vector.
        let n = 5;
        let demand = 10.0;
        let flux = maximize_flux_entropy(n, demand, 1e-9).unwrap();
        let prob = PowerLawProblem::new(n, |_| 1.0, |x| vec![0.0; x.len()], |_, _| 0.0).unwrap();
        let uniform = vec![1.0 / n as f64; n];
        let predicted = predicted_distribution(&prob, &uniform).unwrap();
        for (phi, q) in flux.iter().zip(&predicted) {
            assert!((phi / demand - q).abs() <= 1e-9);
        }
    }
}
