//! Finite, discrete-time model of an interaction space and its global states.
//!
//! An [`InteractionSpace`] holds entities and polyadic interactions: a set of
//! agent entities acts on a set of patient entities through a propagator
//! entity, exchanging a good drawn from the interaction's resource space.
//! A [`GlobalState`] is one sampled trajectory of the whole system over a
//! shared time grid: per-entity state vectors (activations, goods, proper
//! state), per-interaction occurrence-time triples and neighborhoods.
//!
//! Time is an explicit finite grid; trajectories are left-closed step
//! functions between grid points, so a read at any `t` inside the horizon is
//! deterministic. All values are immutable after construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

/// Identifier of one entity, unique within its space.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct EntityId(pub u32);

/// Identifier of one interaction, unique within its space.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
#[serde(transparent)]
pub struct InteractionId(pub u32);

impl std::fmt::Display for EntityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl std::fmt::Display for InteractionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "i{}", self.0)
    }
}

/// The set a good value may be drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ResourceSpace {
    /// Finite enumeration; a stored good is an index into `labels`.
    Finite { labels: Vec<String> },
    /// Bounded real interval tagged with a measurement unit.
    Interval { min: f64, max: f64, units: String },
}

impl ResourceSpace {
    /// Unit interval resource space, the common case for normalized goods.
    pub fn unit_interval() -> Self {
        ResourceSpace::Interval {
            min: 0.0,
            max: 1.0,
            units: String::new(),
        }
    }

    pub fn contains(&self, value: f64) -> bool {
        match self {
            ResourceSpace::Finite { labels } => {
                value.fract() == 0.0 && value >= 0.0 && (value as usize) < labels.len()
            }
            ResourceSpace::Interval { min, max, .. } => value >= *min && value <= *max,
        }
    }
}

/// One polyadic interaction: agents act on patients through a propagator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Interaction {
    pub id: InteractionId,
    /// Causing entities; never empty.
    pub agents: BTreeSet<EntityId>,
    /// Entity that carries the exchanged good.
    pub propagator: EntityId,
    /// Affected entities.
    pub patients: BTreeSet<EntityId>,
    pub resource_space: ResourceSpace,
}

/// One component of an entity's state vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Slot {
    /// Activation level for the given interaction; constrained to [0, 1].
    Activation(InteractionId),
    /// Good value for the given interaction; constrained to its resource space.
    Good(InteractionId),
    /// Free proper-state component.
    Proper(String),
}

/// Declared layout of an entity's state vector, one [`Slot`] per component.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SlotLayout {
    pub slots: Vec<Slot>,
}

impl SlotLayout {
    pub fn new(slots: Vec<Slot>) -> Self {
        SlotLayout { slots }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    /// Index of the good slot for interaction `i`, if declared.
    pub fn good_index(&self, i: InteractionId) -> Option<usize> {
        self.slots.iter().position(|s| *s == Slot::Good(i))
    }

    /// Index of the activation slot for interaction `i`, if declared.
    pub fn activation_index(&self, i: InteractionId) -> Option<usize> {
        self.slots.iter().position(|s| *s == Slot::Activation(i))
    }
}

/// Errors raised by space and global-state construction and reads.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpaceError {
    #[error("unknown entity {0}")]
    UnknownEntity(EntityId),
    #[error("unknown interaction {0}")]
    UnknownInteraction(InteractionId),
    #[error("interaction {0} has no agents")]
    EmptyAgents(InteractionId),
    #[error("duplicate interaction id {0}")]
    DuplicateInteraction(InteractionId),
    #[error("time grid is empty")]
    EmptyGrid,
    #[error("time grid is not strictly increasing at index {index}")]
    GridNotIncreasing { index: usize },
    #[error("horizon {t_end} precedes the last grid time {last}")]
    HorizonBeforeGrid { t_end: f64, last: f64 },
    #[error("missing state trajectory for entity {0}")]
    MissingTrajectory(EntityId),
    #[error("trajectory of {entity} has {got} samples, grid has {expected}")]
    TrajectoryLength {
        entity: EntityId,
        expected: usize,
        got: usize,
    },
    #[error("state of {entity} at index {index} has {got} slots, layout declares {expected}")]
    StateWidth {
        entity: EntityId,
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("activation slot {slot} of {entity} at index {index} is {value}, outside [0, 1]")]
    ActivationOutOfRange {
        entity: EntityId,
        index: usize,
        slot: usize,
        value: f64,
    },
    #[error("good slot for {interaction} of {entity} at index {index} is {value}, outside its resource space")]
    GoodOutOfRange {
        entity: EntityId,
        interaction: InteractionId,
        index: usize,
        value: f64,
    },
    #[error("missing occurrence-time trajectory for interaction {0}")]
    MissingOccurrences(InteractionId),
    #[error("occurrence time {value} of {interaction} at index {index} is outside [{t_start}, {t_end}]")]
    OccurrenceOutOfRange {
        interaction: InteractionId,
        index: usize,
        value: f64,
        t_start: f64,
        t_end: f64,
    },
    #[error("missing neighborhood trajectory for interaction {0}")]
    MissingNeighborhoods(InteractionId),
    #[error("time {t} precedes the grid start {grid_start}")]
    EmptyPrefix { t: f64, grid_start: f64 },
    #[error("layout of {entity} has no good slot for {interaction}")]
    MissingGoodSlot {
        entity: EntityId,
        interaction: InteractionId,
    },
    #[error("ensemble weight at index {index} is {weight}, not positive and finite")]
    BadWeight { index: usize, weight: f64 },
    #[error("ensemble weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
    #[error("ensemble has no samples")]
    EmptyEnsemble,
}

/// Entities, interactions, and per-entity state layouts.
///
/// Construction validates that every referenced id resolves and that every
/// interaction has at least one agent. An entity without an explicit layout
/// has an empty state vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionSpace {
    entities: BTreeSet<EntityId>,
    interactions: BTreeMap<InteractionId, Interaction>,
    layouts: BTreeMap<EntityId, SlotLayout>,
}

impl InteractionSpace {
    pub fn new(
        entities: BTreeSet<EntityId>,
        interactions: Vec<Interaction>,
        layouts: BTreeMap<EntityId, SlotLayout>,
    ) -> Result<Self, SpaceError> {
        let mut by_id = BTreeMap::new();
        for inter in interactions {
            if inter.agents.is_empty() {
                return Err(SpaceError::EmptyAgents(inter.id));
            }
            for e in inter.agents.iter().chain(inter.patients.iter()) {
                if !entities.contains(e) {
                    return Err(SpaceError::UnknownEntity(*e));
                }
            }
            if !entities.contains(&inter.propagator) {
                return Err(SpaceError::UnknownEntity(inter.propagator));
            }
            if by_id.insert(inter.id, inter.clone()).is_some() {
                return Err(SpaceError::DuplicateInteraction(inter.id));
            }
        }
        for (e, layout) in &layouts {
            if !entities.contains(e) {
                return Err(SpaceError::UnknownEntity(*e));
            }
            for slot in &layout.slots {
                if let Slot::Activation(i) | Slot::Good(i) = slot {
                    if !by_id.contains_key(i) {
                        return Err(SpaceError::UnknownInteraction(*i));
                    }
                }
            }
        }
        Ok(InteractionSpace {
            entities,
            interactions: by_id,
            layouts,
        })
    }

    pub fn entities(&self) -> impl Iterator<Item = EntityId> + '_ {
        self.entities.iter().copied()
    }

    pub fn contains_entity(&self, e: EntityId) -> bool {
        self.entities.contains(&e)
    }

    pub fn interaction(&self, id: InteractionId) -> Result<&Interaction, SpaceError> {
        self.interactions
            .get(&id)
            .ok_or(SpaceError::UnknownInteraction(id))
    }

    pub fn interactions(&self) -> impl Iterator<Item = &Interaction> + '_ {
        self.interactions.values()
    }

    pub fn layout(&self, e: EntityId) -> &SlotLayout {
        static EMPTY: SlotLayout = SlotLayout { slots: Vec::new() };
        self.layouts.get(&e).unwrap_or(&EMPTY)
    }
}

/// The subset of entities whose adaptation is being assessed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Population {
    members: BTreeSet<EntityId>,
}

impl Population {
    pub fn new(members: impl IntoIterator<Item = EntityId>) -> Self {
        Population {
            members: members.into_iter().collect(),
        }
    }

    pub fn members(&self) -> impl Iterator<Item = EntityId> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, e: EntityId) -> bool {
        self.members.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Occurrence times of one interaction at one grid time: when it starts,
/// when its good arrives, and when it is ongoing/observable.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OccurrenceTriple {
    pub start: f64,
    pub arrival: f64,
    pub ongoing: f64,
}

impl OccurrenceTriple {
    pub fn new(start: f64, arrival: f64, ongoing: f64) -> Self {
        OccurrenceTriple {
            start,
            arrival,
            ongoing,
        }
    }

    fn components(&self) -> [f64; 3] {
        [self.start, self.arrival, self.ongoing]
    }
}

/// One sampled trajectory of the whole system over a shared time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlobalState {
    time_grid: Vec<f64>,
    t_end: f64,
    /// Per entity: one state vector per grid time, matching its layout.
    states: BTreeMap<EntityId, Vec<Vec<f64>>>,
    occurrence_times: BTreeMap<InteractionId, Vec<OccurrenceTriple>>,
    neighborhoods: BTreeMap<InteractionId, Vec<BTreeSet<EntityId>>>,
}

impl GlobalState {
    /// Builds and validates a trajectory against `space`.
    ///
    /// Every entity needs a full-length state trajectory and every
    /// interaction full-length occurrence and neighborhood trajectories.
    /// Activation slots must lie in [0, 1], good slots in their declared
    /// resource space, occurrence times in [grid start, `t_end`].
    pub fn new(
        space: &InteractionSpace,
        time_grid: Vec<f64>,
        t_end: f64,
        states: BTreeMap<EntityId, Vec<Vec<f64>>>,
        occurrence_times: BTreeMap<InteractionId, Vec<OccurrenceTriple>>,
        neighborhoods: BTreeMap<InteractionId, Vec<BTreeSet<EntityId>>>,
    ) -> Result<Self, SpaceError> {
        if time_grid.is_empty() {
            return Err(SpaceError::EmptyGrid);
        }
        for i in 1..time_grid.len() {
            if time_grid[i] <= time_grid[i - 1] {
                return Err(SpaceError::GridNotIncreasing { index: i });
            }
        }
        let t_start = time_grid[0];
        let last = *time_grid.last().expect("non-empty grid");
        if t_end < last {
            return Err(SpaceError::HorizonBeforeGrid { t_end, last });
        }
        for e in states.keys() {
            if !space.contains_entity(*e) {
                return Err(SpaceError::UnknownEntity(*e));
            }
        }
        for e in space.entities() {
            let traj = states.get(&e).ok_or(SpaceError::MissingTrajectory(e))?;
            if traj.len() != time_grid.len() {
                return Err(SpaceError::TrajectoryLength {
                    entity: e,
                    expected: time_grid.len(),
                    got: traj.len(),
                });
            }
            let layout = space.layout(e);
            for (idx, sample) in traj.iter().enumerate() {
                if sample.len() != layout.len() {
                    return Err(SpaceError::StateWidth {
                        entity: e,
                        index: idx,
                        expected: layout.len(),
                        got: sample.len(),
                    });
                }
                for (slot_idx, (slot, value)) in layout.slots.iter().zip(sample).enumerate() {
                    match slot {
                        Slot::Activation(_) => {
                            if !(0.0..=1.0).contains(value) {
                                return Err(SpaceError::ActivationOutOfRange {
                                    entity: e,
                                    index: idx,
                                    slot: slot_idx,
                                    value: *value,
                                });
                            }
                        }
                        Slot::Good(i) => {
                            let inter = space.interaction(*i)?;
                            if !inter.resource_space.contains(*value) {
                                return Err(SpaceError::GoodOutOfRange {
                                    entity: e,
                                    interaction: *i,
                                    index: idx,
                                    value: *value,
                                });
                            }
                        }
                        Slot::Proper(_) => {}
                    }
                }
            }
        }
        for i in occurrence_times.keys().chain(neighborhoods.keys()) {
            space.interaction(*i)?;
        }
        for inter in space.interactions() {
            let occ = occurrence_times
                .get(&inter.id)
                .ok_or(SpaceError::MissingOccurrences(inter.id))?;
            if occ.len() != time_grid.len() {
                return Err(SpaceError::TrajectoryLength {
                    entity: inter.propagator,
                    expected: time_grid.len(),
                    got: occ.len(),
                });
            }
            for (idx, triple) in occ.iter().enumerate() {
                for value in triple.components() {
                    if !(t_start..=t_end).contains(&value) {
                        return Err(SpaceError::OccurrenceOutOfRange {
                            interaction: inter.id,
                            index: idx,
                            value,
                            t_start,
                            t_end,
                        });
                    }
                }
            }
            let nbhd = neighborhoods
                .get(&inter.id)
                .ok_or(SpaceError::MissingNeighborhoods(inter.id))?;
            if nbhd.len() != time_grid.len() {
                return Err(SpaceError::TrajectoryLength {
                    entity: inter.propagator,
                    expected: time_grid.len(),
                    got: nbhd.len(),
                });
            }
            for set in nbhd {
                for e in set {
                    if !space.contains_entity(*e) {
                        return Err(SpaceError::UnknownEntity(*e));
                    }
                }
            }
        }
        Ok(GlobalState {
            time_grid,
            t_end,
            states,
            occurrence_times,
            neighborhoods,
        })
    }

    pub fn time_grid(&self) -> &[f64] {
        &self.time_grid
    }

    pub fn t_start(&self) -> f64 {
        self.time_grid[0]
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    /// Index of the latest grid time ≤ `t` (left-closed step convention).
    pub fn index_at(&self, t: f64) -> Result<usize, SpaceError> {
        if t < self.time_grid[0] {
            return Err(SpaceError::EmptyPrefix {
                t,
                grid_start: self.time_grid[0],
            });
        }
        Ok(self
            .time_grid
            .partition_point(|&g| g <= t)
            .saturating_sub(1))
    }

    /// State vector of `e` at the latest grid time ≤ `t`.
    pub fn state_at(&self, e: EntityId, t: f64) -> Result<&[f64], SpaceError> {
        let idx = self.index_at(t)?;
        let traj = self
            .states
            .get(&e)
            .ok_or(SpaceError::MissingTrajectory(e))?;
        Ok(&traj[idx])
    }

    pub fn occurrence_at(
        &self,
        i: InteractionId,
        t: f64,
    ) -> Result<OccurrenceTriple, SpaceError> {
        let idx = self.index_at(t)?;
        let traj = self
            .occurrence_times
            .get(&i)
            .ok_or(SpaceError::MissingOccurrences(i))?;
        Ok(traj[idx])
    }

    pub fn neighborhood_at(
        &self,
        i: InteractionId,
        t: f64,
    ) -> Result<&BTreeSet<EntityId>, SpaceError> {
        let idx = self.index_at(t)?;
        let traj = self
            .neighborhoods
            .get(&i)
            .ok_or(SpaceError::MissingNeighborhoods(i))?;
        Ok(&traj[idx])
    }

    /// Prefix of every trajectory with grid times ≤ `t`. Idempotent;
    /// the horizon is preserved.
    pub fn restrict(&self, t: f64) -> Result<GlobalState, SpaceError> {
        let idx = self.index_at(t)?;
        let keep = idx + 1;
        Ok(GlobalState {
            time_grid: self.time_grid[..keep].to_vec(),
            t_end: self.t_end,
            states: self
                .states
                .iter()
                .map(|(e, traj)| (*e, traj[..keep].to_vec()))
                .collect(),
            occurrence_times: self
                .occurrence_times
                .iter()
                .map(|(i, traj)| (*i, traj[..keep].to_vec()))
                .collect(),
            neighborhoods: self
                .neighborhoods
                .iter()
                .map(|(i, traj)| (*i, traj[..keep].to_vec()))
                .collect(),
        })
    }

    /// Goods vector (γ_i)_{i ∈ inters}, each read from the propagator's good
    /// slot for that interaction at the latest grid time ≤ `t`, in the given
    /// order.
    pub fn goods_of(
        &self,
        space: &InteractionSpace,
        inters: &[InteractionId],
        t: f64,
    ) -> Result<Vec<f64>, SpaceError> {
        let idx = self.index_at(t)?;
        let mut goods = Vec::with_capacity(inters.len());
        for &i in inters {
            let inter = space.interaction(i)?;
            let layout = space.layout(inter.propagator);
            let slot = layout
                .good_index(i)
                .ok_or(SpaceError::MissingGoodSlot {
                    entity: inter.propagator,
                    interaction: i,
                })?;
            let traj = self
                .states
                .get(&inter.propagator)
                .ok_or(SpaceError::MissingTrajectory(inter.propagator))?;
            goods.push(traj[idx][slot]);
        }
        Ok(goods)
    }
}

/// True iff every listed interaction has at least one agent in `pop`.
pub fn is_family_of(
    pop: &Population,
    inters: &BTreeSet<InteractionId>,
    space: &InteractionSpace,
) -> Result<bool, SpaceError> {
    for e in pop.members() {
        if !space.contains_entity(e) {
            return Err(SpaceError::UnknownEntity(e));
        }
    }
    for &i in inters {
        let inter = space.interaction(i)?;
        if !inter.agents.iter().any(|a| pop.contains(*a)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Extensional stand-in for a distribution over trajectories: finitely many
/// sampled global states with positive weights summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightedEnsemble {
    samples: Vec<(f64, GlobalState)>,
}

impl WeightedEnsemble {
    const WEIGHT_TOL: f64 = 1e-9;

    pub fn new(samples: Vec<(f64, GlobalState)>) -> Result<Self, SpaceError> {
        if samples.is_empty() {
            return Err(SpaceError::EmptyEnsemble);
        }
        let mut sum = 0.0;
        for (index, (w, _)) in samples.iter().enumerate() {
            if !w.is_finite() || *w <= 0.0 {
                return Err(SpaceError::BadWeight { index, weight: *w });
            }
            sum += w;
        }
        if (sum - 1.0).abs() > Self::WEIGHT_TOL {
            return Err(SpaceError::WeightSum { sum });
        }
        Ok(WeightedEnsemble { samples })
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, &GlobalState)> + '_ {
        self.samples.iter().map(|(w, gs)| (*w, gs))
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entity_set(ids: &[u32]) -> BTreeSet<EntityId> {
        ids.iter().map(|&i| EntityId(i)).collect()
    }

    fn simple_interaction(id: u32, agents: &[u32], propagator: u32) -> Interaction {
        Interaction {
            id: InteractionId(id),
            agents: entity_set(agents),
            propagator: EntityId(propagator),
            patients: BTreeSet::new(),
            resource_space: ResourceSpace::Interval {
                min: 0.0,
                max: 10.0,
                units: "kg".into(),
            },
        }
    }

    /// Two entities; entity 0 propagates both interactions and carries one
    /// activation slot plus a good slot per interaction.
    fn two_interaction_space() -> InteractionSpace {
        let mut layouts = BTreeMap::new();
        layouts.insert(
            EntityId(0),
            SlotLayout::new(vec![
                Slot::Activation(InteractionId(0)),
                Slot::Good(InteractionId(0)),
                Slot::Good(InteractionId(1)),
            ]),
        );
        InteractionSpace::new(
            entity_set(&[0, 1]),
            vec![
                simple_interaction(0, &[0], 0),
                simple_interaction(1, &[1], 0),
            ],
            layouts,
        )
        .unwrap()
    }

    fn state_on_grid(space: &InteractionSpace, grid: Vec<f64>, goods: &[(f64, f64)]) -> GlobalState {
        assert_eq!(grid.len(), goods.len());
        let mut states = BTreeMap::new();
        states.insert(
            EntityId(0),
            goods.iter().map(|&(a, b)| vec![1.0, a, b]).collect(),
        );
        states.insert(EntityId(1), vec![vec![]; grid.len()]);
        let mut occurrence_times = BTreeMap::new();
        let mut neighborhoods = BTreeMap::new();
        for id in [InteractionId(0), InteractionId(1)] {
            occurrence_times.insert(
                id,
                grid.iter()
                    .map(|&t| OccurrenceTriple::new(t, t, t))
                    .collect(),
            );
            neighborhoods.insert(id, vec![BTreeSet::new(); grid.len()]);
        }
        let t_end = *grid.last().unwrap();
        GlobalState::new(space, grid, t_end, states, occurrence_times, neighborhoods).unwrap()
    }

    #[test]
    fn family_membership_by_construction() {
        let space = two_interaction_space();
        let pop = Population::new([EntityId(0)]);
        let inters: BTreeSet<_> = [InteractionId(0)].into();
        assert!(is_family_of(&pop, &inters, &space).unwrap());
    }

    #[test]
    fn family_fails_on_disjoint_agents() {
        let space = two_interaction_space();
        let pop = Population::new([EntityId(1)]);
        let inters: BTreeSet<_> = [InteractionId(0)].into();
        assert!(!is_family_of(&pop, &inters, &space).unwrap());
    }

    #[test]
    fn family_requires_every_interaction() {
        // The quantifier is over all interactions: i1 has an agent in the
        // population, i0... swap: pop={0} covers i0 (agent 0) but not i1
        // (agent 1), so the family check fails.
        let space = two_interaction_space();
        let pop = Population::new([EntityId(0)]);
        let inters: BTreeSet<_> = [InteractionId(0), InteractionId(1)].into();
        assert!(!is_family_of(&pop, &inters, &space).unwrap());
    }

    #[test]
    fn family_rejects_unknown_ids() {
        let space = two_interaction_space();
        let pop = Population::new([EntityId(7)]);
        let inters: BTreeSet<_> = [InteractionId(0)].into();
        assert_eq!(
            is_family_of(&pop, &inters, &space),
            Err(SpaceError::UnknownEntity(EntityId(7)))
        );
        let pop = Population::new([EntityId(0)]);
        let inters: BTreeSet<_> = [InteractionId(9)].into();
        assert_eq!(
            is_family_of(&pop, &inters, &space),
            Err(SpaceError::UnknownInteraction(InteractionId(9)))
        );
    }

    #[test]
    fn restrict_full_range_is_identity() {
        let space = two_interaction_space();
        let gs = state_on_grid(&space, vec![0.0, 1.0, 2.0], &[(1.0, 2.0); 3]);
        assert_eq!(gs.restrict(2.0).unwrap(), gs);
    }

    #[test]
    fn restrict_truncates_to_prefix() {
        let space = two_interaction_space();
        let gs = state_on_grid(&space, vec![0.0, 1.0, 2.0], &[(1.0, 2.0); 3]);
        let r = gs.restrict(1.0).unwrap();
        assert_eq!(r.time_grid(), &[0.0, 1.0]);
        assert_eq!(r.state_at(EntityId(0), 1.0).unwrap().len(), 3);
        assert_eq!(r.t_end(), 2.0);
    }

    #[test]
    fn restrict_composes() {
        let space = two_interaction_space();
        let gs = state_on_grid(&space, vec![0.0, 1.0, 2.0], &[(1.0, 2.0); 3]);
        assert_eq!(
            gs.restrict(2.0).unwrap().restrict(1.0).unwrap(),
            gs.restrict(1.0).unwrap()
        );
    }

    #[test]
    fn restrict_before_grid_is_empty_prefix() {
        let space = two_interaction_space();
        let gs = state_on_grid(&space, vec![0.0, 1.0], &[(1.0, 2.0); 2]);
        assert!(matches!(
            gs.restrict(-0.5),
            Err(SpaceError::EmptyPrefix { .. })
        ));
    }

    #[test]
    fn goods_read_direct_and_ordered() {
        let space = two_interaction_space();
        let gs = state_on_grid(&space, vec![0.0], &[(0.5, 3.0)]);
        assert_eq!(
            gs.goods_of(&space, &[InteractionId(0)], 0.0).unwrap(),
            vec![0.5]
        );
        // Order of the output follows the order of the request.
        let gs = state_on_grid(&space, vec![0.0], &[(2.0, 3.0)]);
        assert_eq!(
            gs.goods_of(&space, &[InteractionId(1), InteractionId(0)], 0.0)
                .unwrap(),
            vec![3.0, 2.0]
        );
    }

    #[test]
    fn goods_use_left_closed_steps() {
        // A read between grid points 1 and 2 sees the value at grid point 1.
        let space = two_interaction_space();
        let gs = state_on_grid(
            &space,
            vec![0.0, 1.0, 2.0],
            &[(1.0, 1.0), (4.0, 1.0), (9.0, 1.0)],
        );
        assert_eq!(
            gs.goods_of(&space, &[InteractionId(0)], 1.5).unwrap(),
            vec![4.0]
        );
        assert_eq!(
            gs.goods_of(&space, &[InteractionId(0)], 1.0).unwrap(),
            vec![4.0]
        );
        assert_eq!(
            gs.goods_of(&space, &[InteractionId(0)], 2.5).unwrap(),
            vec![9.0]
        );
    }

    #[test]
    fn goods_missing_slot_is_reported() {
        let mut layouts = BTreeMap::new();
        layouts.insert(
            EntityId(0),
            SlotLayout::new(vec![Slot::Activation(InteractionId(0))]),
        );
        let space = InteractionSpace::new(
            entity_set(&[0]),
            vec![simple_interaction(0, &[0], 0)],
            layouts,
        )
        .unwrap();
        let mut states = BTreeMap::new();
        states.insert(EntityId(0), vec![vec![1.0]]);
        let mut occurrence_times = BTreeMap::new();
        occurrence_times.insert(InteractionId(0), vec![OccurrenceTriple::new(0.0, 0.0, 0.0)]);
        let mut neighborhoods = BTreeMap::new();
        neighborhoods.insert(InteractionId(0), vec![BTreeSet::new()]);
        let gs = GlobalState::new(
            &space,
            vec![0.0],
            0.0,
            states,
            occurrence_times,
            neighborhoods,
        )
        .unwrap();
        assert_eq!(
            gs.goods_of(&space, &[InteractionId(0)], 0.0),
            Err(SpaceError::MissingGoodSlot {
                entity: EntityId(0),
                interaction: InteractionId(0),
            })
        );
    }

    #[test]
    fn construction_rejects_bad_activation() {
        let space = two_interaction_space();
        let mut states = BTreeMap::new();
        states.insert(EntityId(0), vec![vec![1.5, 0.0, 0.0]]);
        states.insert(EntityId(1), vec![vec![]]);
        let mut occurrence_times = BTreeMap::new();
        let mut neighborhoods = BTreeMap::new();
        for id in [InteractionId(0), InteractionId(1)] {
            occurrence_times.insert(id, vec![OccurrenceTriple::new(0.0, 0.0, 0.0)]);
            neighborhoods.insert(id, vec![BTreeSet::new()]);
        }
        let err = GlobalState::new(
            &space,
            vec![0.0],
            0.0,
            states,
            occurrence_times,
            neighborhoods,
        )
        .unwrap_err();
        assert!(matches!(err, SpaceError::ActivationOutOfRange { .. }));
    }

    #[test]
    fn construction_rejects_good_outside_resource_space() {
        let space = two_interaction_space();
        let mut states = BTreeMap::new();
        // Resource space is [0, 10]; 11 is outside.
        states.insert(EntityId(0), vec![vec![1.0, 11.0, 0.0]]);
        states.insert(EntityId(1), vec![vec![]]);
        let mut occurrence_times = BTreeMap::new();
        let mut neighborhoods = BTreeMap::new();
        for id in [InteractionId(0), InteractionId(1)] {
            occurrence_times.insert(id, vec![OccurrenceTriple::new(0.0, 0.0, 0.0)]);
            neighborhoods.insert(id, vec![BTreeSet::new()]);
        }
        let err = GlobalState::new(
            &space,
            vec![0.0],
            0.0,
            states,
            occurrence_times,
            neighborhoods,
        )
        .unwrap_err();
        assert!(matches!(err, SpaceError::GoodOutOfRange { .. }));
    }

    #[test]
    fn finite_resource_space_holds_label_indices() {
        let rs = ResourceSpace::Finite {
            labels: vec!["wheat".into(), "dairy".into()],
        };
        assert!(rs.contains(0.0));
        assert!(rs.contains(1.0));
        assert!(!rs.contains(2.0));
        assert!(!rs.contains(0.5));
        assert!(!rs.contains(-1.0));
    }

    #[test]
    fn ensemble_weights_must_sum_to_one() {
        let space = two_interaction_space();
        let gs = state_on_grid(&space, vec![0.0], &[(1.0, 1.0)]);
        assert!(WeightedEnsemble::new(vec![(0.5, gs.clone()), (0.5, gs.clone())]).is_ok());
        assert_eq!(
            WeightedEnsemble::new(vec![(0.7, gs.clone()), (0.5, gs.clone())]),
            Err(SpaceError::WeightSum { sum: 1.2 })
        );
        assert!(matches!(
            WeightedEnsemble::new(vec![(0.0, gs)]),
            Err(SpaceError::BadWeight { .. })
        ));
    }
}
