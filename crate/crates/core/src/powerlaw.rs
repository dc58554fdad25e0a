//! Cost/entropy ratio minimization on the probability simplex and the
//! power-law shape of its interior minimizers.
//!
//! For a population with d adaptive interactions, state x on the simplex,
//! energy E(x) > 0 and diversification D(x) (entropy in bits), the central
//! object is the ratio E/D. At an interior minimizer y, if the energy
//! partials are dominated by `alpha_k(y) * log2(k)` for ranks k >= 2 and the
//! normalization constant `N(y) = sum_k k^(-alpha_k(y) * D/E)` satisfies
//! `N(y) >= 1/y_1 >= e`, the minimizer follows a rank power law
//! `y_k = y_1 * k^(-alpha_k(y) * D/E)`. This module finds minimizers,
//! checks both hypothesis families, and builds the predicted distribution.

use serde::{Deserialize, Serialize};

use crate::forces::entropy_bits;
use crate::simplex;

/// Interior floor for simplex iterates; components at or below it mean the
/// minimizer left the region where the stationarity analysis applies.
pub const EPS_FLOOR: f64 = 1e-12;

/// Relative slack for float comparisons that are equalities in exact
/// arithmetic (hypothesis boundaries, normalization chains). Sized to absorb
/// the position resolution of a converged minimizer (about sqrt-epsilon)
/// after amplification through 1/y_1; genuine failures overshoot it by
/// orders of magnitude.
const CMP_SLACK: f64 = 1e-7;

#[derive(Debug, thiserror::Error)]
pub enum PowerLawError {
    #[error("dimension must be at least 2, got {d}")]
    BadDimension { d: usize },
    #[error("initial point invalid: {reason}")]
    BadInit { reason: String },
    #[error("tolerance must be positive, got {tol}")]
    BadTol { tol: f64 },
    #[error("energy must be positive on the interior, got {value} at the initial point")]
    NonPositiveEnergy { value: f64 },
    #[error(
        "no convergence after {iters} iterations, projected-gradient norm {grad_norm:e} at the best iterate"
    )]
    NonConvergence {
        best: Vec<f64>,
        grad_norm: f64,
        iters: usize,
    },
    #[error(
        "minimizer collapsed to the boundary: component {k} reached the floor {floor:e}, interior stationarity does not apply"
    )]
    BoundaryCollapse {
        iterate: Vec<f64>,
        k: usize,
        floor: f64,
    },
    #[error("hypotheses fail at the minimizer: {report}")]
    HypothesesFailed { report: HypothesisReport },
    #[error("parameter {name} out of range: {message}")]
    BadParam {
        name: &'static str,
        message: String,
    },
    #[error("exponent fit needs at least 3 ranks, got {d}")]
    TooFewRanks { d: usize },
    #[error("exponent fit needs strictly positive probabilities, rank {k} has {value}")]
    NonPositiveProbability { k: usize, value: f64 },
}

type EnergyFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;
type AlphaFn = dyn Fn(&[f64], usize) -> f64 + Send + Sync;

/// A ratio-minimization problem: energy with analytic partials, and the
/// exponent coefficients `alpha_k` for ranks k = 2..=d.
///
/// Ranks are 1-based throughout this module: `y[k-1]` is the probability of
/// rank k.
pub struct PowerLawProblem {
    d: usize,
    energy: Box<EnergyFn>,
    grad: Box<GradFn>,
    alpha: Box<AlphaFn>,
}

impl PowerLawProblem {
    pub fn new(
        d: usize,
        energy: impl Fn(&[f64]) -> f64 + Send + Sync + 'static,
        grad: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static,
        alpha: impl Fn(&[f64], usize) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, PowerLawError> {
        if d < 2 {
            return Err(PowerLawError::BadDimension { d });
        }
        Ok(PowerLawProblem {
            d,
            energy: Box::new(energy),
            grad: Box::new(grad),
            alpha: Box::new(alpha),
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn energy(&self, x: &[f64]) -> f64 {
        (self.energy)(x)
    }

    pub fn grad(&self, x: &[f64]) -> Vec<f64> {
        (self.grad)(x)
    }

    /// Exponent coefficient at rank `k`, defined for k >= 2.
    pub fn alpha(&self, x: &[f64], k: usize) -> f64 {
        assert!(
            (2..=self.d).contains(&k),
            "alpha is defined for ranks 2..=d, got {k}"
        );
        (self.alpha)(x, k)
    }

    /// E(x) / D(x); infinite when the entropy vanishes.
    pub fn ratio(&self, x: &[f64]) -> f64 {
        let d = entropy_bits(x);
        if d <= 0.0 {
            f64::INFINITY
        } else {
            self.energy(x) / d
        }
    }

    fn ratio_grad(&self, x: &[f64]) -> Vec<f64> {
        let e = self.energy(x);
        let h = entropy_bits(x);
        let ge = self.grad(x);
        let log2e = std::f64::consts::LOG2_E;
        ge.iter()
            .zip(x)
            .map(|(&dek, &xk)| {
                let dhk = -(xk.log2() + log2e);
                (dek * h - e * dhk) / (h * h)
            })
            .collect()
    }
}

impl std::fmt::Debug for PowerLawProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PowerLawProblem").field("d", &self.d).finish()
    }
}

/// Converged minimization with its diagnostics.
#[derive(Debug, Clone)]
pub struct MinimizeReport {
    pub y: Vec<f64>,
    /// Norm of the fixed-point residual `x - project(x - grad/f)` at `y`.
    pub grad_norm: f64,
    pub iters: usize,
    /// Objective value at the start and after every accepted step.
    pub history: Vec<f64>,
}

fn fixed_point_residual(prob: &PowerLawProblem, x: &[f64], fx: f64) -> (Vec<f64>, f64) {
    let g = prob.ratio_grad(x);
    // The probe step divides by the objective value, which makes the
    // residual invariant under rescaling the energy: minimizing f and ln f
    // share fixed points, and grad(ln f) = grad(f) / f.
    let scale = fx.max(f64::MIN_POSITIVE);
    let step: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - gi / scale).collect();
    let probe = simplex::project(&step, EPS_FLOOR);
    let norm = x
        .iter()
        .zip(&probe)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    (g, norm)
}

/// No descent step is representable once the objective is flat to one ulp
/// around the iterate. A stalled search still certifies a minimizer when the
/// fixed-point residual is below sqrt-epsilon scale per component; the
/// threshold for the whole residual norm grows with sqrt(d).
fn stall_tol(d: usize) -> f64 {
    1e-7 * (d as f64).sqrt()
}

/// Minimizes E/D by projected gradient descent with a backtracking line
/// search that only accepts ratio-decreasing steps.
///
/// Converges when the fixed-point residual `|x - project(x - grad/f)|`
/// drops below `tol` (the normalization by the objective value makes the
/// test invariant under energy rescaling), or when no further descent is
/// representable in floating point and the best residual seen is below
/// [`stall_tol`]. Fails with
/// `BoundaryCollapse` when the converged iterate has a component pinned at
/// the interior floor, and with `NonConvergence` after `max_iters`
/// accepted-or-rejected sweeps.
pub fn minimize_ratio(
    prob: &PowerLawProblem,
    init: &[f64],
    tol: f64,
    max_iters: usize,
) -> Result<Vec<f64>, PowerLawError> {
    minimize_ratio_detailed(prob, init, tol, max_iters).map(|r| r.y)
}

/// [`minimize_ratio`] with the objective history and convergence diagnostics.
pub fn minimize_ratio_detailed(
    prob: &PowerLawProblem,
    init: &[f64],
    tol: f64,
    max_iters: usize,
) -> Result<MinimizeReport, PowerLawError> {
    if !(tol > 0.0) {
        return Err(PowerLawError::BadTol { tol });
    }
    if init.len() != prob.d() {
        return Err(PowerLawError::BadInit {
            reason: format!("length {} does not match dimension {}", init.len(), prob.d()),
        });
    }
    if !simplex::contains(init, EPS_FLOOR, 1e-9) {
        return Err(PowerLawError::BadInit {
            reason: "not an interior probability vector".into(),
        });
    }
    if init.iter().any(|&v| v <= EPS_FLOOR) {
        return Err(PowerLawError::BadInit {
            reason: format!("a component is at or below the floor {EPS_FLOOR:e}"),
        });
    }
    let e0 = prob.energy(init);
    if !(e0 > 0.0) {
        return Err(PowerLawError::NonPositiveEnergy { value: e0 });
    }

    let mut x = simplex::project(init, EPS_FLOOR);
    let mut fx = prob.ratio(&x);
    let mut eta = 1.0;
    let mut history = vec![fx];
    let mut best = x.clone();
    let mut best_norm = f64::INFINITY;

    for iter in 0..max_iters {
        let (g, norm) = fixed_point_residual(prob, &x, fx);
        if norm < best_norm {
            best_norm = norm;
            best = x.clone();
        }
        if norm <= tol {
            if let Some(k) = x.iter().position(|&v| v <= EPS_FLOOR) {
                return Err(PowerLawError::BoundaryCollapse {
                    iterate: x,
                    k: k + 1,
                    floor: EPS_FLOOR,
                });
            }
            return Ok(MinimizeReport {
                y: x,
                grad_norm: norm,
                iters: iter,
                history,
            });
        }
        // Backtracking: shrink eta until the step decreases the ratio by a
        // margin proportional to the squared move.
        let mut accepted = false;
        while eta >= 1e-18 {
            let trial_raw: Vec<f64> = x.iter().zip(&g).map(|(xi, gi)| xi - eta * gi).collect();
            let trial = simplex::project(&trial_raw, EPS_FLOOR);
            let move2: f64 = trial
                .iter()
                .zip(&x)
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            let ft = prob.ratio(&trial);
            // Strict decrease keeps the loop finite: once the margin
            // underflows, equal-value steps would otherwise cycle forever.
            if ft.is_finite() && ft < fx && ft <= fx - 1e-4 * move2 / eta {
                x = trial;
                fx = ft;
                history.push(fx);
                eta = (eta * 2.0).min(1e6);
                accepted = true;
                break;
            }
            eta *= 0.5;
        }
        if !accepted {
            // No step improves the objective at float resolution, so the
            // iterate cannot be refined further by this method.
            if best_norm <= stall_tol(prob.d()) {
                if let Some(k) = best.iter().position(|&v| v <= EPS_FLOOR) {
                    return Err(PowerLawError::BoundaryCollapse {
                        iterate: best,
                        k: k + 1,
                        floor: EPS_FLOOR,
                    });
                }
                return Ok(MinimizeReport {
                    y: best,
                    grad_norm: best_norm,
                    iters: iter,
                    history,
                });
            }
            return Err(PowerLawError::NonConvergence {
                best,
                grad_norm: best_norm,
                iters: iter,
            });
        }
    }
    Err(PowerLawError::NonConvergence {
        best,
        grad_norm: best_norm,
        iters: max_iters,
    })
}

/// Outcome of checking both hypothesis families at a point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HypothesisReport {
    /// Per rank k = 2..=d: does `dE/dx_k <= alpha_k * log2(k)` hold?
    pub grad_ok: Vec<bool>,
    /// Per rank k = 2..=d: `alpha_k * log2(k) - dE/dx_k` (non-negative when
    /// the bound holds).
    pub grad_gap: Vec<f64>,
    /// `N = sum_{k=1..d} k^(-alpha_k * D/E)` (the k = 1 term is always 1).
    pub n: f64,
    pub inv_y1: f64,
    /// Whether `N >= 1/y_1 >= e` holds (with float-equality slack).
    pub normalization_ok: bool,
}

impl HypothesisReport {
    pub fn all_grad_ok(&self) -> bool {
        self.grad_ok.iter().all(|&b| b)
    }

    pub fn passes(&self) -> bool {
        self.all_grad_ok() && self.normalization_ok
    }
}

impl std::fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let bad_grads = self.grad_ok.iter().filter(|&&b| !b).count();
        write!(
            f,
            "gradient bound holds at {}/{} ranks, N = {:.6}, 1/y_1 = {:.6}, normalization chain N >= 1/y_1 >= e {}",
            self.grad_ok.len() - bad_grads,
            self.grad_ok.len(),
            self.n,
            self.inv_y1,
            if self.normalization_ok { "holds" } else { "fails" }
        )
    }
}

/// Evaluates both hypothesis families at `y` exactly as stated: the per-rank
/// gradient bound for k >= 2, and the normalization chain `N >= 1/y_1 >= e`.
/// Pure report; nothing is inferred or repaired.
pub fn verify_hypotheses(prob: &PowerLawProblem, y: &[f64]) -> HypothesisReport {
    let beta = exponent_rate(prob, y);
    let ge = prob.grad(y);
    let mut grad_ok = Vec::with_capacity(prob.d() - 1);
    let mut grad_gap = Vec::with_capacity(prob.d() - 1);
    let mut n = 1.0;
    for k in 2..=prob.d() {
        let alpha = prob.alpha(y, k);
        let bound = alpha * (k as f64).log2();
        let lhs = ge[k - 1];
        let slack = CMP_SLACK * lhs.abs().max(bound.abs()).max(1.0);
        grad_ok.push(lhs <= bound + slack);
        grad_gap.push(bound - lhs);
        n += (k as f64).powf(-alpha * beta);
    }
    let inv_y1 = 1.0 / y[0];
    let e = std::f64::consts::E;
    let slack_n = CMP_SLACK * n.abs().max(inv_y1.abs()).max(1.0);
    let normalization_ok = n >= inv_y1 - slack_n && inv_y1 >= e - CMP_SLACK * e;
    HypothesisReport {
        grad_ok,
        grad_gap,
        n,
        inv_y1,
        normalization_ok,
    }
}

/// D(y)/E(y), the exponent rate multiplying `alpha_k` in the power law.
pub fn exponent_rate(prob: &PowerLawProblem, y: &[f64]) -> f64 {
    entropy_bits(y) / prob.energy(y)
}

/// The power-law distribution `q_k = k^(-alpha_k(y) * D/E) / N(y)` implied by
/// the hypotheses at `y`. Refuses when [`verify_hypotheses`] fails; the sum
/// equals 1 to 1e-12 by construction.
pub fn predicted_distribution(
    prob: &PowerLawProblem,
    y: &[f64],
) -> Result<Vec<f64>, PowerLawError> {
    let report = verify_hypotheses(prob, y);
    if !report.passes() {
        return Err(PowerLawError::HypothesesFailed { report });
    }
    Ok(predicted_unchecked(prob, y))
}

fn predicted_unchecked(prob: &PowerLawProblem, y: &[f64]) -> Vec<f64> {
    let beta = exponent_rate(prob, y);
    let mut q = Vec::with_capacity(prob.d());
    q.push(1.0);
    for k in 2..=prob.d() {
        q.push((k as f64).powf(-prob.alpha(y, k) * beta));
    }
    let n: f64 = q.iter().sum();
    for v in &mut q {
        *v /= n;
    }
    q
}

/// Values `log2(y_k) + (D/E) * dE/dx_k + log2(e)` for ranks k = 2..=d. At an
/// interior minimizer these are constant across k (the stationarity relation
/// of the ratio); their spread is a convergence certificate.
pub fn stationarity_values(prob: &PowerLawProblem, y: &[f64]) -> Vec<f64> {
    let beta = exponent_rate(prob, y);
    let ge = prob.grad(y);
    (2..=prob.d())
        .map(|k| y[k - 1].log2() + beta * ge[k - 1] + std::f64::consts::LOG2_E)
        .collect()
}

/// Max minus min of [`stationarity_values`]; near zero at interior minimizers.
pub fn stationarity_spread(prob: &PowerLawProblem, y: &[f64]) -> f64 {
    let vals = stationarity_values(prob, y);
    let max = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    max - min
}

/// The four cost-function families, producing `E(x) = sum_k c_k(x) * x_k`
/// with analytic partials and the matching exponent coefficients.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CostKind {
    /// `c_k(x) = (a / x_k^s) * log2(k)`: rank-log cost damped by the
    /// component's own probability. `alpha_k(x) = (a / x_k^s) * (1 - s)`.
    RankLogDamped { a: f64, s: f64 },
    /// `c_k = a * log_b(k + k0) + j0`, probability-independent.
    /// `alpha_k = a + j0`.
    ShiftedLog { a: f64, b: f64, k0: f64, j0: f64 },
    /// `c_k = a * log_b(k) + j0`, the unshifted case.
    /// `alpha_k = a * log_b(2) + j0`.
    PlainLog { a: f64, b: f64, j0: f64 },
    /// `c_k = gamma_k`, arbitrary positive constants.
    /// `alpha_k = gamma_k / log2(k)`, the smallest admissible choice.
    Fixed { gammas: Vec<f64> },
}

/// Builds the energy, analytic gradient, and exponent coefficients for one
/// of the four cost families on `d` ranks.
pub fn make_cost(d: usize, kind: CostKind) -> Result<PowerLawProblem, PowerLawError> {
    if d < 2 {
        return Err(PowerLawError::BadDimension { d });
    }
    let log2k: Vec<f64> = (1..=d).map(|k| (k as f64).log2()).collect();
    match kind {
        CostKind::RankLogDamped { a, s } => {
            if !(a > 0.0) {
                return Err(PowerLawError::BadParam {
                    name: "a",
                    message: format!("must be positive, got {a}"),
                });
            }
            if !(s > 0.0) {
                return Err(PowerLawError::BadParam {
                    name: "s",
                    message: format!("must be positive, got {s}"),
                });
            }
            // E(x) = a * sum_k x_k^(1-s) * log2(k); the k = 1 term vanishes.
            let lk = log2k.clone();
            let energy = move |x: &[f64]| -> f64 {
                x.iter()
                    .zip(&lk)
                    .map(|(&xk, &l)| a * xk.powf(1.0 - s) * l)
                    .sum()
            };
            let lk = log2k.clone();
            let grad = move |x: &[f64]| -> Vec<f64> {
                x.iter()
                    .zip(&lk)
                    .map(|(&xk, &l)| a * (1.0 - s) * xk.powf(-s) * l)
                    .collect()
            };
            let alpha = move |x: &[f64], k: usize| a * (1.0 - s) * x[k - 1].powf(-s);
            PowerLawProblem::new(d, energy, grad, alpha)
        }
        CostKind::ShiftedLog { a, b, k0, j0 } => {
            if !(b > 2.0) {
                return Err(PowerLawError::BadParam {
                    name: "b",
                    message: format!("must exceed 2, got {b}"),
                });
            }
            if !(k0 >= 0.0 && k0 <= b - 2.0) {
                return Err(PowerLawError::BadParam {
                    name: "k0",
                    message: format!("must lie in [0, b-2] = [0, {}], got {k0}", b - 2.0),
                });
            }
            if !(a > 0.0) || !(j0 > 0.0) {
                return Err(PowerLawError::BadParam {
                    name: "a,j0",
                    message: format!("must be positive, got a={a}, j0={j0}"),
                });
            }
            let costs: Vec<f64> = (1..=d)
                .map(|k| a * (k as f64 + k0).log(b) + j0)
                .collect();
            constant_cost_problem(d, costs, move |_, _| a + j0)
        }
        CostKind::PlainLog { a, b, j0 } => {
            if !(b > 2.0) {
                return Err(PowerLawError::BadParam {
                    name: "b",
                    message: format!("must exceed 2, got {b}"),
                });
            }
            if !(a > 0.0) || !(j0 > 0.0) {
                return Err(PowerLawError::BadParam {
                    name: "a,j0",
                    message: format!("must be positive, got a={a}, j0={j0}"),
                });
            }
            let costs: Vec<f64> = (1..=d).map(|k| a * (k as f64).log(b) + j0).collect();
            let alpha_const = a * 2f64.log(b) + j0;
            constant_cost_problem(d, costs, move |_, _| alpha_const)
        }
        CostKind::Fixed { gammas } => {
            if gammas.len() != d {
                return Err(PowerLawError::BadParam {
                    name: "gammas",
                    message: format!("need {d} entries, got {}", gammas.len()),
                });
            }
            if let Some((k, &g)) = gammas.iter().enumerate().find(|(_, &g)| !(g > 0.0)) {
                return Err(PowerLawError::BadParam {
                    name: "gammas",
                    message: format!("entry for rank {} must be positive, got {g}", k + 1),
                });
            }
            let gs = gammas.clone();
            constant_cost_problem(d, gammas, move |k, log2k| gs[k - 1] / log2k)
        }
    }
}

/// Probability-independent costs: `E(x) = c · x`, gradient is the constant
/// cost vector.
fn constant_cost_problem(
    d: usize,
    costs: Vec<f64>,
    alpha_of_rank: impl Fn(usize, f64) -> f64 + Send + Sync + 'static,
) -> Result<PowerLawProblem, PowerLawError> {
    let c1 = costs.clone();
    let energy = move |x: &[f64]| -> f64 { x.iter().zip(&c1).map(|(xk, ck)| xk * ck).sum() };
    let c2 = costs;
    let grad = move |_: &[f64]| -> Vec<f64> { c2.clone() };
    let alpha = move |_: &[f64], k: usize| alpha_of_rank(k, (k as f64).log2());
    PowerLawProblem::new(d, energy, grad, alpha)
}

/// Least-squares fit of `log2(q_k)` against `log2(k)` over ranks 1..=d.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
}

/// Fits a rank power law to a positive probability vector. With a flat input
/// (zero variance in `log2 q`) the fit is the constant and `r2` is 1.
pub fn fit_exponent(q: &[f64]) -> Result<ExponentFit, PowerLawError> {
    let d = q.len();
    if d < 3 {
        return Err(PowerLawError::TooFewRanks { d });
    }
    if let Some((k, &v)) = q.iter().enumerate().find(|(_, &v)| !(v > 0.0)) {
        return Err(PowerLawError::NonPositiveProbability { k: k + 1, value: v });
    }
    let xs: Vec<f64> = (1..=d).map(|k| (k as f64).log2()).collect();
    let ys: Vec<f64> = q.iter().map(|v| v.log2()).collect();
    let n = d as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    // A flat input is flat up to one ulp of rounding through the mean, so
    // the test is a noise threshold rather than exact zero.
    let flat_floor = n * (1e-12 * my.abs().max(1.0)).powi(2);
    if ss_tot <= flat_floor {
        return Ok(ExponentFit {
            slope: 0.0,
            intercept: my,
            r2: 1.0,
        });
    }
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum();
    let r2 = 1.0 - ss_res / ss_tot;
    Ok(ExponentFit {
        slope,
        intercept,
        r2,
    })
}

/// Everything the end-to-end pipeline produces for one problem: minimizer,
/// the force values there, the hypothesis report, and, when the hypotheses
/// hold, the predicted power law and its residual against the minimizer.
#[derive(Debug, Clone, Serialize)]
pub struct PowerLawSolution {
    pub y: Vec<f64>,
    pub entropy_at_y: f64,
    pub energy_at_y: f64,
    /// `N(y)`, the power-law normalization constant.
    pub normalization: f64,
    pub hypotheses: HypothesisReport,
    /// Present only when the hypotheses hold.
    pub predicted: Option<Vec<f64>>,
    /// `max_k |y_k - predicted_k|`, present with `predicted`.
    pub residual: Option<f64>,
    pub stationarity_spread: f64,
    pub fit: ExponentFit,
    pub iterations: usize,
    pub grad_norm: f64,
}

/// Minimizes from `init`, verifies the hypotheses at the minimizer, and
/// compares it against the predicted power law. Hypothesis failure is a
/// reported outcome, not an error; only optimization failures are errors.
pub fn solve(
    prob: &PowerLawProblem,
    init: &[f64],
    tol: f64,
    max_iters: usize,
) -> Result<PowerLawSolution, PowerLawError> {
    let report = minimize_ratio_detailed(prob, init, tol, max_iters)?;
    let y = report.y;
    let hypotheses = verify_hypotheses(prob, &y);
    let (predicted, residual) = if hypotheses.passes() {
        let q = predicted_unchecked(prob, &y);
        let res = y
            .iter()
            .zip(&q)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        (Some(q), Some(res))
    } else {
        (None, None)
    };
    Ok(PowerLawSolution {
        entropy_at_y: entropy_bits(&y),
        energy_at_y: prob.energy(&y),
        normalization: hypotheses.n,
        stationarity_spread: stationarity_spread(prob, &y),
        fit: fit_exponent(&y)?,
        iterations: report.iters,
        grad_norm: report.grad_norm,
        hypotheses,
        predicted,
        residual,
        y,
    })
}
