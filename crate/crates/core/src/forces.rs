//! Unification and diversification forces, the better-adapted ordering, and
//! the emergent-pattern dominance check.
//!
//! A population's adaptation at a state prefix is measured by two families of
//! forces. The k unification forces are negative expected costs,
//! `U^j(y) = -Σ_e P^j_y(e) · C^j_y(e)`: the smaller the average cost under the
//! averaging probability, the larger the force. The diversification force is
//! the Shannon entropy in bits of the diversification probability over the
//! population's adaptive interactions. A state is better adapted than another
//! when no force is smaller, and an emergent pattern is a candidate whose
//! forces dominate every sampled trajectory at every time.
//!
//! All functions here are pure over immutable inputs and safe to call
//! concurrently.

use std::collections::BTreeSet;
use std::io;

use crate::space::{
    is_family_of, EntityId, GlobalState, InteractionId, InteractionSpace, Population, SpaceError,
};

/// Absolute tolerance for probability-vector normalization checks.
pub const PROB_TOL: f64 = 1e-9;

/// Errors raised by force evaluation.
#[derive(Debug, thiserror::Error)]
pub enum ForceError {
    #[error("cost component {j} out of range, spec has {k} components")]
    ComponentIndex { j: usize, k: usize },
    #[error("population is empty")]
    EmptyPopulation,
    #[error("averaging weights have {got} entries, population has {expected}")]
    WeightCount { expected: usize, got: usize },
    #[error("averaging weight {index} is {value}, expected non-negative")]
    NegativeWeight { index: usize, value: f64 },
    #[error("averaging weight {index} is zero but the weighting is flagged non-degenerate")]
    DegenerateWeight { index: usize },
    #[error("weights sum to {sum}, expected 1")]
    WeightSum { sum: f64 },
    #[error("cost of {entity} in component {j} is {value}, expected finite and non-negative")]
    BadCost {
        entity: EntityId,
        j: usize,
        value: f64,
    },
    #[error("diversification probability {index} is {value}, expected non-negative")]
    NegativeProbability { index: usize, value: f64 },
    #[error("diversification probabilities sum to {sum}, expected 1")]
    NotAProbability { sum: f64 },
    #[error("interactions are not a family of the population: {interaction} has no agent in it")]
    NotAFamily { interaction: InteractionId },
    #[error("time {t} is not on the trace grid")]
    OffGridTime { t: f64 },
    #[error("candidate has {got} force components, traces have {expected}")]
    KMismatch { expected: usize, got: usize },
    #[error("sample of traces is empty")]
    EmptySample,
    #[error("trace columns disagree: {0}")]
    Shape(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

type CostFn = dyn Fn(&GlobalState, EntityId, usize) -> f64 + Send + Sync;

/// Cost functions `C^j_y(e)`: k components per population member, evaluated
/// on a global-state prefix. Costs must be finite and non-negative.
pub struct CostSpec {
    k: usize,
    eval: Box<CostFn>,
}

impl CostSpec {
    pub fn new(
        k: usize,
        eval: impl Fn(&GlobalState, EntityId, usize) -> f64 + Send + Sync + 'static,
    ) -> Self {
        CostSpec {
            k,
            eval: Box::new(eval),
        }
    }

    /// The same cost in every component, for every entity and state.
    pub fn constant(k: usize, value: f64) -> Self {
        CostSpec::new(k, move |_, _, _| value)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eval(&self, y: &GlobalState, e: EntityId, j: usize) -> f64 {
        (self.eval)(y, e, j)
    }
}

impl std::fmt::Debug for CostSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CostSpec").field("k", &self.k).finish()
    }
}

type WeightFn = dyn Fn(&GlobalState, usize, &Population) -> Vec<f64> + Send + Sync;

/// Averaging probabilities `P^j_y` over the population, one vector per cost
/// component, aligned with the population's sorted member order.
pub struct AveragingSpec {
    weights: Box<WeightFn>,
    non_degenerate: bool,
}

impl AveragingSpec {
    pub fn new(
        weights: impl Fn(&GlobalState, usize, &Population) -> Vec<f64> + Send + Sync + 'static,
    ) -> Self {
        AveragingSpec {
            weights: Box::new(weights),
            non_degenerate: false,
        }
    }

    /// Uniform averaging over the population, for every component and state.
    pub fn uniform() -> Self {
        AveragingSpec::new(|_, _, pop| vec![1.0 / pop.len() as f64; pop.len()]).non_degenerate()
    }

    /// The same fixed weight vector for every component and state.
    pub fn fixed(weights: Vec<f64>) -> Self {
        AveragingSpec::new(move |_, _, _| weights.clone())
    }

    /// Requires every weight to be strictly positive at evaluation time.
    pub fn non_degenerate(mut self) -> Self {
        self.non_degenerate = true;
        self
    }

    fn eval(
        &self,
        y: &GlobalState,
        j: usize,
        pop: &Population,
    ) -> Result<Vec<f64>, ForceError> {
        let w = (self.weights)(y, j, pop);
        if w.len() != pop.len() {
            return Err(ForceError::WeightCount {
                expected: pop.len(),
                got: w.len(),
            });
        }
        let mut sum = 0.0;
        for (index, &value) in w.iter().enumerate() {
            if !value.is_finite() || value < 0.0 {
                return Err(ForceError::NegativeWeight { index, value });
            }
            if self.non_degenerate && value == 0.0 {
                return Err(ForceError::DegenerateWeight { index });
            }
            sum += value;
        }
        if (sum - 1.0).abs() > PROB_TOL {
            return Err(ForceError::WeightSum { sum });
        }
        Ok(w)
    }
}

impl std::fmt::Debug for AveragingSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AveragingSpec")
            .field("non_degenerate", &self.non_degenerate)
            .finish()
    }
}

type DiversificationFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// Diversification probability `Q_γ` over the adaptive interactions, as a
/// function of the goods vector.
pub struct DiversificationSpec {
    q: Box<DiversificationFn>,
}

impl DiversificationSpec {
    pub fn new(q: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        DiversificationSpec { q: Box::new(q) }
    }

    /// Goods are already a probability vector; use them directly.
    pub fn identity() -> Self {
        DiversificationSpec::new(|g| g.to_vec())
    }

    /// Normalize the goods vector by its sum.
    pub fn normalized_goods() -> Self {
        DiversificationSpec::new(|g| {
            let sum: f64 = g.iter().sum();
            if sum > 0.0 {
                g.iter().map(|v| v / sum).collect()
            } else {
                g.to_vec()
            }
        })
    }

    pub fn eval(&self, goods: &[f64]) -> Vec<f64> {
        (self.q)(goods)
    }
}

impl std::fmt::Debug for DiversificationSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DiversificationSpec").finish()
    }
}

/// Shannon entropy in bits with the `0·log₂0 = 0` convention.
///
/// The input is not validated; see [`diversification_force`] for the checked
/// entry point.
pub fn entropy_bits(q: &[f64]) -> f64 {
    let h: f64 = q
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    // A point mass sums to -0.0; adding 0.0 folds it into 0.0.
    h + 0.0
}

/// `U^j(y) = -Σ_e P^j_y(e) · C^j_y(e)`: negative expected cost of the
/// population in component `j`. Always ≤ 0.
pub fn unification_force(
    cost: &CostSpec,
    avg: &AveragingSpec,
    y: &GlobalState,
    pop: &Population,
    j: usize,
) -> Result<f64, ForceError> {
    if j >= cost.k() {
        return Err(ForceError::ComponentIndex { j, k: cost.k() });
    }
    if pop.is_empty() {
        return Err(ForceError::EmptyPopulation);
    }
    let weights = avg.eval(y, j, pop)?;
    let mut acc = 0.0;
    for (e, w) in pop.members().zip(&weights) {
        let c = cost.eval(y, e, j);
        if !c.is_finite() || c < 0.0 {
            return Err(ForceError::BadCost {
                entity: e,
                j,
                value: c,
            });
        }
        acc += w * c;
    }
    Ok(-acc)
}

/// `D(γ) = -Σ_i Q_γ(i) · log₂ Q_γ(i)`: Shannon entropy in bits of the
/// diversification probability. Lies in `[0, log₂ n]` for n interactions.
pub fn diversification_force(
    div: &DiversificationSpec,
    goods: &[f64],
) -> Result<f64, ForceError> {
    let q = div.eval(goods);
    let mut sum = 0.0;
    for (index, &value) in q.iter().enumerate() {
        if !value.is_finite() || value < 0.0 {
            return Err(ForceError::NegativeProbability { index, value });
        }
        sum += value;
    }
    if (sum - 1.0).abs() > PROB_TOL {
        return Err(ForceError::NotAProbability { sum });
    }
    Ok(entropy_bits(&q))
}

/// Time series of the k unification forces and the diversification force.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ForceTrace {
    times: Vec<f64>,
    /// Per time index, the k unification forces.
    u: Vec<Vec<f64>>,
    /// Per time index, the diversification force.
    d: Vec<f64>,
}

impl ForceTrace {
    pub fn new(times: Vec<f64>, u: Vec<Vec<f64>>, d: Vec<f64>) -> Result<Self, ForceError> {
        if u.len() != times.len() || d.len() != times.len() {
            return Err(ForceError::Shape(format!(
                "{} times, {} u rows, {} d entries",
                times.len(),
                u.len(),
                d.len()
            )));
        }
        let k = u.first().map_or(0, Vec::len);
        if let Some(row) = u.iter().find(|row| row.len() != k) {
            return Err(ForceError::Shape(format!(
                "u rows have mixed widths {} and {}",
                k,
                row.len()
            )));
        }
        Ok(ForceTrace { times, u, d })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn u(&self) -> &[Vec<f64>] {
        &self.u
    }

    pub fn d(&self) -> &[f64] {
        &self.d
    }

    /// Number of unification-force components.
    pub fn k(&self) -> usize {
        self.u.first().map_or(0, Vec::len)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    fn index_of(&self, t: f64) -> Result<usize, ForceError> {
        self.times
            .iter()
            .position(|&g| g == t)
            .ok_or(ForceError::OffGridTime { t })
    }

    /// CSV with header `time,u_1,...,u_k,d`; floats print with full
    /// round-trip precision.
    pub fn write_csv<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        write!(out, "time")?;
        for j in 1..=self.k() {
            write!(out, ",u_{j}")?;
        }
        writeln!(out, ",d")?;
        for (idx, t) in self.times.iter().enumerate() {
            write!(out, "{t}")?;
            for v in &self.u[idx] {
                write!(out, ",{v}")?;
            }
            writeln!(out, ",{}", self.d[idx])?;
        }
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("CSV output is ASCII")
    }
}

/// Evaluates every force at every grid time of `gs`, reading the state prefix
/// and the goods of `inters` (in the given order) at each step.
#[allow(clippy::too_many_arguments)]
pub fn force_trace(
    space: &InteractionSpace,
    gs: &GlobalState,
    pop: &Population,
    inters: &[InteractionId],
    cost: &CostSpec,
    avg: &AveragingSpec,
    div: &DiversificationSpec,
) -> Result<ForceTrace, ForceError> {
    let inter_set: BTreeSet<InteractionId> = inters.iter().copied().collect();
    if !is_family_of(pop, &inter_set, space)? {
        let offender = inters
            .iter()
            .copied()
            .find(|&i| {
                space
                    .interaction(i)
                    .map(|inter| !inter.agents.iter().any(|a| pop.contains(*a)))
                    .unwrap_or(true)
            })
            .unwrap_or_default();
        return Err(ForceError::NotAFamily {
            interaction: offender,
        });
    }
    let times = gs.time_grid().to_vec();
    let mut u = Vec::with_capacity(times.len());
    let mut d = Vec::with_capacity(times.len());
    for &t in &times {
        let prefix = gs.restrict(t)?;
        let mut row = Vec::with_capacity(cost.k());
        for j in 0..cost.k() {
            row.push(unification_force(cost, avg, &prefix, pop, j)?);
        }
        u.push(row);
        let goods = gs.goods_of(space, inters, t)?;
        d.push(diversification_force(div, &goods)?);
    }
    ForceTrace::new(times, u, d)
}

/// True iff the state at `t` is better adapted than the state at `s`:
/// every unification force and the diversification force at `t` are no
/// smaller than at `s`. Ties count; the relation is reflexive.
pub fn better_adapted(trace: &ForceTrace, s: f64, t: f64) -> Result<bool, ForceError> {
    let is = trace.index_of(s)?;
    let it = trace.index_of(t)?;
    let u_ok = trace.u[it]
        .iter()
        .zip(&trace.u[is])
        .all(|(at_t, at_s)| at_t >= at_s);
    Ok(u_ok && trace.d[it] >= trace.d[is])
}

/// True iff the candidate forces dominate every time point of every sampled
/// trace, componentwise in u and in d.
///
/// The check certifies dominance over the finite sample only; it is the
/// computable stand-in for dominance over the full trajectory distribution.
pub fn is_emergent_pattern(
    candidate_u: &[f64],
    candidate_d: f64,
    sample: &[ForceTrace],
) -> Result<bool, ForceError> {
    if sample.is_empty() {
        return Err(ForceError::EmptySample);
    }
    for trace in sample {
        if trace.k() != candidate_u.len() {
            return Err(ForceError::KMismatch {
                expected: trace.k(),
                got: candidate_u.len(),
            });
        }
        for idx in 0..trace.len() {
            let dominated_u = candidate_u
                .iter()
                .zip(&trace.u[idx])
                .all(|(cand, sampled)| cand >= sampled);
            if !dominated_u || candidate_d < trace.d[idx] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
