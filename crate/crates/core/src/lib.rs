// `!(v > 0.0)` style checks are deliberate: the negation also rejects NaN,
// which `v <= 0.0` silently lets through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! Force-based analysis of complex adaptive systems.
//!
//! The crate models populations of entities coupled by polyadic interactions,
//! measures their adaptation with unification forces (negative expected
//! costs) and a diversification force (entropy of goods production), and
//! builds two quantitative theories on top:
//!
//! * [`powerlaw`] locates minimizers of the cost/entropy ratio on the
//!   probability simplex and checks the hypotheses under which the minimizer
//!   follows a power law in rank.
//! * [`vonthunen`] instantiates the force calculus for a ring economy of
//!   companies renting land around a marketplace, with land-value based
//!   rents, transport-cost driven location choice, and an adaptive dynamic
//!   whose stationary points equalize goods fluxes.
//!
//! Everything is deterministic: iteration orders are fixed, and the only
//! randomness is an explicitly seeded generator in [`vonthunen::adapt`].

pub mod forces;
pub mod powerlaw;
pub mod simplex;
pub mod space;
pub mod vonthunen;

pub use forces::{
    better_adapted, diversification_force, entropy_bits, force_trace, is_emergent_pattern,
    unification_force, AveragingSpec, CostSpec, DiversificationSpec, ForceError, ForceTrace,
};
pub use space::{
    is_family_of, EntityId, GlobalState, Interaction, InteractionId, InteractionSpace,
    OccurrenceTriple, Population, ResourceSpace, Slot, SlotLayout, SpaceError, WeightedEnsemble,
};
