//! Equilibria of the phase dynamics θ̇_i = Σ_{j~i} sin(θ_j − θ_i).
//!
//! The dynamics are the gradient flow of E(θ) = −Σ_edges cos(θ_i − θ_j), so
//! every trajectory converges to an equilibrium and the linearly stable ones
//! are exactly the attractors. The search strategy here is deterministic
//! multistart: seeded random initial phases, adaptive Runge–Kutta flow until
//! the residual is small, Newton refinement on the gauge-reduced system, then
//! dedup, classification and a canonical sort. Exhaustiveness is not claimed;
//! a census produced this way is heuristic-complete at its restart budget.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::Graph;
use crate::stability::{
    classify, reduced_jacobian, weighted_jacobian, wrap_to_pi, Classification, SpectralReport,
    DEFAULT_NEG_TOL, DEFAULT_ZERO_TOL,
};
use crate::sturm::{glue_cubic, isolate_and_refine};

use std::f64::consts::PI;

const TWO_PI: f64 = 2.0 * PI;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("state is not an equilibrium: residual {0:.3e}")]
    NotEquilibrium(f64),
    #[error("Newton refinement diverged: residual {0:.3e}")]
    NewtonDiverged(f64),
    #[error("unsupported size n={0}: {1}")]
    UnsupportedSize(usize, &'static str),
}

/// Phase angles in radians, one per vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleState {
    theta: Vec<f64>,
}

impl AngleState {
    pub fn new(theta: Vec<f64>) -> Self {
        AngleState { theta }
    }

    pub fn angles(&self) -> &[f64] {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.theta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theta.is_empty()
    }

    /// Gauge-fixed copy: θ_0 = 0, every entry wrapped into [0, 2π).
    pub fn normalized(&self) -> AngleState {
        let base = self.theta[0];
        AngleState {
            theta: self
                .theta
                .iter()
                .map(|t| (t - base).rem_euclid(TWO_PI))
                .collect(),
        }
    }

    pub fn shifted(&self, c: f64) -> AngleState {
        AngleState {
            theta: self.theta.iter().map(|t| t + c).collect(),
        }
    }

    /// Componentwise wraparound distance, max over vertices.
    pub fn distance(&self, other: &AngleState) -> f64 {
        assert_eq!(self.len(), other.len());
        self.theta
            .iter()
            .zip(&other.theta)
            .fold(0.0f64, |worst, (a, b)| worst.max(wrap_to_pi(a - b).abs()))
    }

    /// All angles equal mod 2π (up to `tol`).
    pub fn is_sync(&self, tol: f64) -> bool {
        let norm = self.normalized();
        norm.theta.iter().all(|&t| wrap_to_pi(t).abs() <= tol)
    }

    pub fn degrees(&self) -> Vec<f64> {
        self.theta.iter().map(|t| t.to_degrees()).collect()
    }
}

/// Knobs for the multistart equilibrium search. All tolerances are strictly
/// positive.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchParams {
    pub restarts: usize,
    pub seed: u64,
    pub flow_tol: f64,
    pub newton_tol: f64,
    pub max_flow_steps: usize,
    pub dedup_radius: f64,
}

impl SearchParams {
    /// Defaults: 100·n restarts, seed 1, flow to 1e−7, Newton to 1e−12,
    /// 50 000 flow steps, dedup radius 1e−4 rad.
    pub fn for_vertex_count(n: usize) -> Self {
        SearchParams {
            restarts: 100 * n,
            seed: 1,
            flow_tol: 1e-7,
            newton_tol: 1e-12,
            max_flow_steps: 50_000,
            dedup_radius: 1e-4,
        }
    }

    pub fn with_restarts(mut self, restarts: usize) -> Self {
        self.restarts = restarts;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A refined equilibrium with its spectrum and bookkeeping.
#[derive(Debug, Clone)]
pub struct EquilibriumRecord {
    /// Normalized (θ_0 = 0) state.
    pub state: AngleState,
    pub residual_norm: f64,
    /// Spectrum of the full n×n Jacobian, ascending.
    pub eigenvalues: Vec<f64>,
    pub classification: Classification,
    /// Linearly stable and not the synchronized state.
    pub exotic: bool,
    /// Zero modes of the gauge-reduced Jacobian.
    pub kernel_dim: usize,
    /// Restarts that converged to this state.
    pub basin_hits: usize,
}

/// Wire form of a record: `{angles_rad, angles_deg, residual, eigenvalues,
/// classification, exotic, kernel_dim, basin_hits}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RecordJson {
    pub angles_rad: Vec<f64>,
    pub angles_deg: Vec<f64>,
    pub residual: f64,
    pub eigenvalues: Vec<f64>,
    pub classification: Classification,
    pub exotic: bool,
    pub kernel_dim: usize,
    pub basin_hits: usize,
}

impl From<&EquilibriumRecord> for RecordJson {
    fn from(r: &EquilibriumRecord) -> Self {
        RecordJson {
            angles_rad: r.state.angles().to_vec(),
            angles_deg: r.state.degrees(),
            residual: r.residual_norm,
            eigenvalues: r.eigenvalues.clone(),
            classification: r.classification,
            exotic: r.exotic,
            kernel_dim: r.kernel_dim,
            basin_hits: r.basin_hits,
        }
    }
}

impl RecordJson {
    pub fn to_record(&self) -> EquilibriumRecord {
        EquilibriumRecord {
            state: AngleState::new(self.angles_rad.clone()),
            residual_norm: self.residual,
            eigenvalues: self.eigenvalues.clone(),
            classification: self.classification,
            exotic: self.exotic,
            kernel_dim: self.kernel_dim,
            basin_hits: self.basin_hits,
        }
    }
}

/// r_i = Σ_{j~i} sin(θ_j − θ_i); zero exactly at equilibria.
pub fn residual(g: &Graph, s: &AngleState) -> Vec<f64> {
    let n = g.vertex_count();
    assert_eq!(s.len(), n);
    let theta = s.angles();
    (0..n)
        .map(|i| g.neighbors(i).iter().map(|&j| (theta[j] - theta[i]).sin()).sum())
        .collect()
}

pub fn residual_inf_norm(g: &Graph, s: &AngleState) -> f64 {
    residual(g, s).iter().fold(0.0f64, |m, r| m.max(r.abs()))
}

/// E(θ) = −Σ_{edges {i,j}} cos(θ_i − θ_j); the dynamics are −∇E.
pub fn energy(g: &Graph, s: &AngleState) -> f64 {
    let theta = s.angles();
    -g.edges()
        .iter()
        .map(|&(i, j)| (theta[i] - theta[j]).cos())
        .sum::<f64>()
}

#[derive(Debug, Clone)]
pub struct FlowOutcome {
    pub state: AngleState,
    pub converged: bool,
    pub steps: usize,
}

/// Integrates the gradient flow with classic fourth-order Runge–Kutta steps.
/// The step is halved whenever the proposal fails to decrease the energy —
/// the flow's Lyapunov function, which the exact trajectory strictly
/// decreases, so a rise always signals integration error (the residual norm,
/// by contrast, legitimately rises and falls along the way). Stops once
/// ‖r‖_∞ ≤ `flow_tol` or the attempt budget runs out.
pub fn flow_to_equilibrium(g: &Graph, init: &AngleState, p: &SearchParams) -> FlowOutcome {
    const H_MAX: f64 = 0.5;
    const H_MIN: f64 = 1e-9;
    let n = g.vertex_count();
    let mut theta = init.angles().to_vec();
    let mut h = 0.1;
    let mut r = residual(g, &AngleState::new(theta.clone()));
    let mut rn = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut e = energy(g, &AngleState::new(theta.clone()));

    let mut scratch = vec![0.0; n];
    let eval = |t: &[f64]| residual(g, &AngleState::new(t.to_vec()));

    for step in 0..p.max_flow_steps {
        if rn <= p.flow_tol {
            return FlowOutcome {
                state: AngleState::new(theta),
                converged: true,
                steps: step,
            };
        }
        let k1 = &r;
        for i in 0..n {
            scratch[i] = theta[i] + 0.5 * h * k1[i];
        }
        let k2 = eval(&scratch);
        for i in 0..n {
            scratch[i] = theta[i] + 0.5 * h * k2[i];
        }
        let k3 = eval(&scratch);
        for i in 0..n {
            scratch[i] = theta[i] + h * k3[i];
        }
        let k4 = eval(&scratch);
        let proposal: Vec<f64> = (0..n)
            .map(|i| theta[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
            .collect();
        let state_new = AngleState::new(proposal);
        let e_new = energy(g, &state_new);
        // Epsilon slack: near an equilibrium the energy stagnates at
        // rounding level.
        if e_new <= e + 1e-12 * (1.0 + e.abs()) || h <= H_MIN {
            theta = state_new.angles().to_vec();
            r = eval(&theta);
            rn = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            e = e_new;
            h = (h * 1.25).min(H_MAX);
        } else {
            h *= 0.5;
        }
    }
    FlowOutcome {
        state: AngleState::new(theta),
        converged: rn <= p.flow_tol,
        steps: p.max_flow_steps,
    }
}

#[derive(Debug, Clone)]
pub struct NewtonOutcome {
    /// Normalized state with ‖r‖_∞ ≤ newton_tol.
    pub state: AngleState,
    /// A reduced-Jacobian zero mode was present during refinement: the
    /// equilibrium is a positive-dimensional / singular candidate.
    pub degenerate: bool,
}

/// Sharpens a near-equilibrium on the reduced system (θ_0 pinned, vertex 0's
/// equation dropped; the residuals sum to zero identically, so the remaining
/// n−1 equations suffice). Singular directions are handled by a spectral
/// pseudo-inverse, which also serves to project back onto positive-dimensional
/// solution sets.
pub fn newton_refine(
    g: &Graph,
    s: &AngleState,
    p: &SearchParams,
) -> Result<NewtonOutcome, DynamicsError> {
    let n = g.vertex_count();
    let mut state = s.normalized();
    let initial = residual_inf_norm(g, &state);
    let mut degenerate = false;

    for _ in 0..50 {
        let r = residual(g, &state);
        let rn = r.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if rn <= p.newton_tol {
            return Ok(NewtonOutcome { state, degenerate });
        }
        if !rn.is_finite() || rn > 1e3 * initial.max(1e-6) {
            return Err(DynamicsError::NewtonDiverged(rn));
        }
        let jac = reduced_jacobian(g, &state);
        let (vals, vecs) = jac
            .eigen_decomposition()
            .expect("reduced Jacobian is symmetric by construction");
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let cutoff = 1e-8 * scale;
        if vals.iter().any(|v| v.abs() <= cutoff) {
            degenerate = true;
        }
        // Minimum-norm step: invert only the well-conditioned modes.
        let mut delta = vec![0.0; n - 1];
        for (lam, v) in vals.iter().zip(&vecs) {
            if lam.abs() <= cutoff {
                continue;
            }
            let proj: f64 = v.iter().zip(&r[1..]).map(|(a, b)| a * b).sum();
            let coef = -proj / lam;
            for (d, vi) in delta.iter_mut().zip(v) {
                *d += coef * vi;
            }
        }
        let worst = delta.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let damp = if worst > 0.5 { 0.5 / worst } else { 1.0 };
        let mut theta = state.angles().to_vec();
        for (t, d) in theta[1..].iter_mut().zip(&delta) {
            *t += damp * d;
        }
        state = AngleState::new(theta).normalized();
    }
    let rn = residual_inf_norm(g, &state);
    if rn <= p.newton_tol {
        Ok(NewtonOutcome { state, degenerate })
    } else {
        Err(DynamicsError::NewtonDiverged(rn))
    }
}

/// Search outcome: records plus the tallies of restarts that did not
/// produce one.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub records: Vec<EquilibriumRecord>,
    pub non_converged: usize,
    pub refine_failed: usize,
}

enum RestartResult {
    Converged(AngleState),
    FlowTimedOut,
    RefineFailed,
}

/// Deterministic multistart search. Restart i draws its initial angles from
/// an independent counter-based stream (seed, i), so results are identical
/// across thread counts and restart-budget extensions; records are deduped
/// in restart order and sorted by (classification, energy, angles).
pub fn multistart_search(g: &Graph, p: &SearchParams) -> SearchOutcome {
    let n = g.vertex_count();
    let results: Vec<RestartResult> = (0..p.restarts)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
            rng.set_stream(i as u64);
            let init: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * TWO_PI).collect();
            let flow = flow_to_equilibrium(g, &AngleState::new(init), p);
            if !flow.converged {
                return RestartResult::FlowTimedOut;
            }
            match newton_refine(g, &flow.state, p) {
                Ok(out) => RestartResult::Converged(out.state),
                Err(_) => RestartResult::RefineFailed,
            }
        })
        .collect();

    let mut non_converged = 0;
    let mut refine_failed = 0;
    let mut unique: Vec<(AngleState, usize)> = Vec::new();
    for res in results {
        match res {
            RestartResult::FlowTimedOut => non_converged += 1,
            RestartResult::RefineFailed => refine_failed += 1,
            RestartResult::Converged(state) => {
                match unique
                    .iter_mut()
                    .find(|(s, _)| s.distance(&state) <= p.dedup_radius)
                {
                    Some((_, hits)) => *hits += 1,
                    None => unique.push((state, 1)),
                }
            }
        }
    }

    let mut keyed: Vec<(EquilibriumRecord, i64)> = unique
        .into_iter()
        .map(|(state, basin_hits)| {
            let record = build_record(g, state, basin_hits, p);
            let bucket = (energy(g, &record.state) / 1e-6).round() as i64;
            (record, bucket)
        })
        .collect();
    keyed.sort_by(|(a, ea), (b, eb)| {
        a.classification
            .cmp(&b.classification)
            .then_with(|| ea.cmp(eb))
            .then_with(|| {
                // Mirror pairs tie on energy; break descending on angles.
                b.state
                    .angles()
                    .partial_cmp(a.state.angles())
                    .expect("angles are finite")
            })
    });
    SearchOutcome {
        records: keyed.into_iter().map(|(r, _)| r).collect(),
        non_converged,
        refine_failed,
    }
}

/// Classifies a refined state and assembles its record.
pub fn build_record(
    g: &Graph,
    state: AngleState,
    basin_hits: usize,
    p: &SearchParams,
) -> EquilibriumRecord {
    let state = state.normalized();
    let residual_norm = residual_inf_norm(g, &state);
    let full = weighted_jacobian(g, &state);
    let report = SpectralReport::from_eigenvalues(
        full.eigenvalues().expect("Jacobian is symmetric"),
        DEFAULT_ZERO_TOL,
        DEFAULT_NEG_TOL,
    );
    let kernel_dim = crate::stability::kernel_dimension(
        &reduced_jacobian(g, &state),
        DEFAULT_ZERO_TOL,
    )
    .expect("reduced Jacobian is symmetric");
    let exotic = report.classification == Classification::LinearlyStable
        && !state.is_sync(p.dedup_radius);
    EquilibriumRecord {
        state,
        residual_norm,
        eigenvalues: report.eigenvalues,
        classification: report.classification,
        exotic,
        kernel_dim,
        basin_hits,
    }
}

/// All 2^{n−1} assignments θ_0 = 0, θ_i ∈ {0, π}, with classifications.
/// These are the standard states; every one of them is an exact equilibrium.
pub fn standard_states(g: &Graph) -> Result<Vec<(AngleState, Classification)>, DynamicsError> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(DynamicsError::UnsupportedSize(
            n,
            "standard-state enumeration is 2^(n-1)",
        ));
    }
    let mut out = Vec::with_capacity(1 << (n - 1));
    for mask in 0u32..1 << (n - 1) {
        let mut theta = vec![0.0; n];
        for i in 1..n {
            if mask >> (i - 1) & 1 == 1 {
                theta[i] = PI;
            }
        }
        let state = AngleState::new(theta);
        let eigs = weighted_jacobian(g, &state)
            .eigenvalues()
            .expect("Jacobian is symmetric");
        out.push((state, classify(&eigs, DEFAULT_ZERO_TOL, DEFAULT_NEG_TOL)));
    }
    Ok(out)
}

/// Twisted state θ_i = 2πqi/n (mod 2π); an exact equilibrium of the n-cycle
/// for every winding number q.
pub fn twisted_state(n: usize, q: i64) -> AngleState {
    assert!(n >= 3);
    let theta: Vec<f64> = (0..n)
        .map(|i| (TWO_PI * q as f64 * i as f64 / n as f64).rem_euclid(TWO_PI))
        .collect();
    AngleState::new(theta)
}

/// Checks the midpoint condition at every degree-two vertex: with neighbor
/// angles a, c and own angle b, an equilibrium satisfies b = (a+c)/2 + kπ or
/// c = a + (2k+1)π, and only the first alternative can be linearly stable.
/// Returns true when every degree-two vertex satisfies the first alternative
/// within `tol`.
pub fn degree_two_filter(g: &Graph, s: &AngleState, tol: f64) -> Result<bool, DynamicsError> {
    let rn = residual_inf_norm(g, s);
    if rn > tol {
        return Err(DynamicsError::NotEquilibrium(rn));
    }
    let theta = s.angles();
    for v in 0..g.vertex_count() {
        if g.degree(v) != 2 {
            continue;
        }
        let a = theta[g.neighbors(v)[0]];
        let c = theta[g.neighbors(v)[1]];
        let dev = theta[v] - 0.5 * (a + c);
        let frac = dev.rem_euclid(PI);
        if frac.min(PI - frac) > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The analytic exotic state of the glued graph [`Graph::glue_c5`]: cycle
/// angles θ_i = α + i(π−α)/2 for i = 0..4 and zero on the body, where
/// w = sin(α/2) is the root of 8w³ − (4+2d)w + 1 in [−½, ½] whose state is
/// linearly stable. Returns the state and α in radians. Body edges do not
/// enter: body vertices all sit at angle zero.
pub fn glue_exotic_state(d: usize) -> (AngleState, f64) {
    assert!(d >= 1);
    let cubic = glue_cubic(d);
    let mut roots = isolate_and_refine(&cubic, -0.5, 0.5, 1e-15);
    roots.retain(|w| *w > 0.0);
    let graph = Graph::glue_c5(d, &[]).expect("d >= 1");
    let mut fallback = None;
    for &w in &roots {
        let alpha = 2.0 * w.asin();
        let state = glue_state_for_alpha(d, alpha);
        if fallback.is_none() {
            fallback = Some((state.clone(), alpha));
        }
        let eigs = weighted_jacobian(&graph, &state)
            .eigenvalues()
            .expect("Jacobian is symmetric");
        if classify(&eigs, DEFAULT_ZERO_TOL, DEFAULT_NEG_TOL) == Classification::LinearlyStable {
            return (state, alpha);
        }
    }
    fallback.expect("the gluing cubic always has a root in (0, 1/2)")
}

fn glue_state_for_alpha(d: usize, alpha: f64) -> AngleState {
    let mut theta = Vec::with_capacity(5 + d);
    for i in 0..5 {
        theta.push(alpha + i as f64 * (PI - alpha) / 2.0);
    }
    theta.extend(std::iter::repeat(0.0).take(d));
    AngleState::new(theta)
}

/// Walks along reduced-Jacobian kernel directions from a degenerate
/// equilibrium, reprojecting with Newton after each 1e−2 rad step, and
/// returns the distinct equilibria encountered. Two or more distinct states
/// witness a positive-dimensional solution set.
pub fn witness_positive_dimensional(
    g: &Graph,
    rec: &EquilibriumRecord,
    steps: usize,
) -> Vec<AngleState> {
    const STEP: f64 = 1e-2;
    let n = g.vertex_count();
    let params = SearchParams {
        newton_tol: 1e-11,
        ..SearchParams::for_vertex_count(n)
    };
    let mut current = rec.state.normalized();
    let mut previous_dir: Option<Vec<f64>> = None;
    let mut found: Vec<AngleState> = Vec::new();

    for _ in 0..steps {
        let jac = reduced_jacobian(g, &current);
        let (vals, vecs) = jac
            .eigen_decomposition()
            .expect("reduced Jacobian is symmetric");
        let scale = vals.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let kernel: Vec<&Vec<f64>> = vals
            .iter()
            .zip(&vecs)
            .filter(|(l, _)| l.abs() <= 1e-7 * scale)
            .map(|(_, v)| v)
            .collect();
        if kernel.is_empty() {
            break;
        }
        let dir: Vec<f64> = match &previous_dir {
            None => kernel[0].clone(),
            Some(prev) => {
                let (best, dot) = kernel
                    .iter()
                    .map(|v| {
                        let dot: f64 = v.iter().zip(prev).map(|(a, b)| a * b).sum();
                        (v, dot)
                    })
                    .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
                    .expect("kernel nonempty");
                let sign = if dot < 0.0 { -1.0 } else { 1.0 };
                best.iter().map(|v| sign * v).collect()
            }
        };
        let mut theta = current.angles().to_vec();
        for (t, d) in theta[1..].iter_mut().zip(&dir) {
            *t += STEP * d;
        }
        let Ok(refined) = newton_refine(g, &AngleState::new(theta), &params) else {
            break;
        };
        if residual_inf_norm(g, &refined.state) > 1e-10 {
            break;
        }
        previous_dir = Some(dir);
        current = refined.state.clone();
        if found
            .iter()
            .all(|s| s.distance(&current) > params.dedup_radius)
        {
            found.push(current.clone());
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(Some(n), &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        Graph::from_edges(Some(n), &edges).unwrap()
    }

    #[test]
    fn residual_vanishes_at_known_equilibria() {
        let g = cycle(5);
        let sync = AngleState::new(vec![0.3; 5]);
        assert!(residual_inf_norm(&g, &sync) < 1e-15);

        let standard = AngleState::new(vec![0.0, PI, 0.0, PI, PI]);
        assert!(residual_inf_norm(&g, &standard) < 1e-14);

        assert!(residual_inf_norm(&g, &twisted_state(5, 1)) < 1e-13);
        assert!(residual_inf_norm(&cycle(7), &twisted_state(7, 2)) < 1e-13);
    }

    #[test]
    fn energy_values() {
        let g = cycle(5);
        assert_eq!(energy(&g, &AngleState::new(vec![0.7; 5])), -5.0);
        let twisted = twisted_state(5, 1);
        assert!((energy(&g, &twisted) + 5.0 * (0.4 * PI).cos()).abs() < 1e-12);
        let edge = Graph::from_edges(None, &[(0, 1)]).unwrap();
        assert!((energy(&edge, &AngleState::new(vec![0.0, PI])) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn residual_is_negative_energy_gradient() {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(20);
        let g = Graph::glue_c5(2, &[]).unwrap();
        let n = g.vertex_count();
        let h = 1e-6;
        for _ in 0..20 {
            let theta: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() * TWO_PI).collect();
            let r = residual(&g, &AngleState::new(theta.clone()));
            for i in 0..n {
                let mut plus = theta.clone();
                plus[i] += h;
                let mut minus = theta.clone();
                minus[i] -= h;
                let fd = -(energy(&g, &AngleState::new(plus)) - energy(&g, &AngleState::new(minus)))
                    / (2.0 * h);
                assert!((fd - r[i]).abs() <= 1e-6 * r[i].abs().max(1.0));
            }
        }
    }

    #[test]
    fn gauge_invariance() {
        let g = Graph::glue_c5(3, &[(5, 6)]).unwrap();
        let state = AngleState::new(vec![0.3, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 0.1]);
        let shifted = state.shifted(1.2345);
        assert!((residual_inf_norm(&g, &state) - residual_inf_norm(&g, &shifted)).abs() < 1e-10);
        assert!((energy(&g, &state) - energy(&g, &shifted)).abs() < 1e-10);
        let e1 = weighted_jacobian(&g, &state).eigenvalues().unwrap();
        let e2 = weighted_jacobian(&g, &shifted).eigenvalues().unwrap();
        for (a, b) in e1.iter().zip(&e2) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn flow_reaches_attractors() {
        let g = cycle(5);
        let p = SearchParams::for_vertex_count(5);
        let near_sync = AngleState::new(vec![0.01, -0.02, 0.03, 0.0, 0.01]);
        let out = flow_to_equilibrium(&g, &near_sync, &p);
        assert!(out.converged);
        assert!(out.state.normalized().is_sync(1e-4));

        let init = AngleState::new(
            [0.0f64, 70.0, 145.0, 215.0, 290.0]
                .iter()
                .map(|d| d.to_radians())
                .collect(),
        );
        let out = flow_to_equilibrium(&g, &init, &p);
        assert!(out.converged);
        let refined = newton_refine(&g, &out.state, &p).unwrap();
        assert!(refined.state.distance(&twisted_state(5, 1)) < 1e-6);
    }

    #[test]
    fn complete_graph_flows_synchronize() {
        let g = complete(5);
        let p = SearchParams::for_vertex_count(5);
        for i in 0..100 {
            let mut rng = ChaCha8Rng::seed_from_u64(77);
            rng.set_stream(i);
            let init: Vec<f64> = (0..5).map(|_| rng.gen::<f64>() * TWO_PI).collect();
            let out = flow_to_equilibrium(&g, &AngleState::new(init), &p);
            assert!(out.converged);
            assert!(out.state.is_sync(1e-3), "stream {i} missed sync");
        }
    }

    #[test]
    fn newton_behavior() {
        let g = cycle(5);
        let p = SearchParams::for_vertex_count(5);
        let sync = AngleState::new(vec![0.0; 5]);
        let out = newton_refine(&g, &sync, &p).unwrap();
        assert_eq!(out.state.angles(), sync.angles());
        assert!(!out.degenerate);

        let mut noisy = twisted_state(5, 1).angles().to_vec();
        for (i, t) in noisy.iter_mut().enumerate() {
            *t += 1e-3 * ((i * 7 % 3) as f64 - 1.0);
        }
        let out = newton_refine(&g, &AngleState::new(noisy), &p).unwrap();
        assert!(out.state.distance(&twisted_state(5, 1)) < 1e-10);
        assert!(residual_inf_norm(&g, &out.state) <= p.newton_tol);
    }

    #[test]
    fn multistart_on_five_cycle() {
        let g = cycle(5);
        let p = SearchParams::for_vertex_count(5).with_restarts(200);
        let out = multistart_search(&g, &p);
        let stable: Vec<_> = out
            .records
            .iter()
            .filter(|r| r.classification == Classification::LinearlyStable)
            .collect();
        assert_eq!(stable.len(), 3);
        assert_eq!(stable.iter().filter(|r| r.exotic).count(), 2);
        for r in &stable[..] {
            assert!(r.residual_norm <= p.newton_tol);
        }
        let twisted_hits: usize = stable
            .iter()
            .filter(|r| {
                r.state.distance(&twisted_state(5, 1)) < 1e-6
                    || r.state.distance(&twisted_state(5, 4)) < 1e-6
            })
            .count();
        assert_eq!(twisted_hits, 2);
        // Records are deterministic, byte for byte.
        let again = multistart_search(&g, &p);
        let a = serde_json::to_string(
            &out.records.iter().map(RecordJson::from).collect::<Vec<_>>(),
        )
        .unwrap();
        let b = serde_json::to_string(
            &again.records.iter().map(RecordJson::from).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn standard_state_enumeration() {
        let g = cycle(4);
        let states = standard_states(&g).unwrap();
        assert_eq!(states.len(), 8);
        for (s, _) in &states {
            assert!(residual_inf_norm(&g, s) < 1e-14);
        }
        let stable = states
            .iter()
            .filter(|(_, c)| *c == Classification::LinearlyStable)
            .count();
        assert_eq!(stable, 1);
        // (0, π, 0, π) alternation has all weights −1: unstable.
        let alternating = AngleState::new(vec![0.0, PI, 0.0, PI]);
        let eigs = weighted_jacobian(&g, &alternating).eigenvalues().unwrap();
        assert_eq!(
            classify(&eigs, DEFAULT_ZERO_TOL, DEFAULT_NEG_TOL),
            Classification::Unstable
        );

        let k5 = complete(5);
        let states = standard_states(&k5).unwrap();
        assert_eq!(states.len(), 16);
        let stable: Vec<_> = states
            .iter()
            .filter(|(_, c)| *c == Classification::LinearlyStable)
            .collect();
        assert_eq!(stable.len(), 1);
        assert!(stable[0].0.is_sync(1e-12));
    }

    #[test]
    fn twisted_state_values() {
        let t = twisted_state(5, 1);
        for (i, d) in t.degrees().iter().enumerate() {
            assert!((d - 72.0 * i as f64).abs() < 1e-12);
        }
        assert!(twisted_state(5, 0).is_sync(0.0));
        let t7 = twisted_state(7, 1);
        assert!((t7.degrees()[1] - 51.42857142857143).abs() < 1e-10);
    }

    #[test]
    fn degree_two_midpoint_filter() {
        let g = cycle(5);
        assert!(degree_two_filter(&g, &twisted_state(5, 1), 1e-8).unwrap());

        // Equilibrium family on C_4 with opposite vertices antipodal: the
        // second alternative (c = a + π) holds, so the filter rejects.
        let c4 = cycle(4);
        let s = AngleState::new(vec![0.0, 0.3, PI, PI + 0.3]);
        assert!(residual_inf_norm(&c4, &s) < 1e-14);
        assert!(!degree_two_filter(&c4, &s, 1e-8).unwrap());

        assert!(matches!(
            degree_two_filter(&g, &AngleState::new(vec![0.0, 1.0, 2.0, 3.0, 4.0]), 1e-8),
            Err(DynamicsError::NotEquilibrium(_))
        ));
    }

    #[test]
    fn glue_exotic_states_are_stable() {
        for d in [1usize, 2, 3, 5] {
            let (state, alpha) = glue_exotic_state(d);
            let g = Graph::glue_c5(d, &[]).unwrap();
            assert!(residual_inf_norm(&g, &state) <= 1e-10, "d={d}");
            let eigs = weighted_jacobian(&g, &state).eigenvalues().unwrap();
            assert_eq!(
                classify(&eigs, DEFAULT_ZERO_TOL, DEFAULT_NEG_TOL),
                Classification::LinearlyStable
            );
            assert!(alpha > 0.0 && alpha < PI / 2.0);
            assert!(!state.is_sync(1e-3));
        }
        // d = 3 reproduces α ≈ 11.5728° = 0.064π.
        let (_, alpha) = glue_exotic_state(3);
        assert!((alpha.to_degrees() - 11.5728).abs() < 1e-3);
        // d = 1: sin(α/2) = cos(4π/9), so α = π/9 exactly.
        let (_, alpha) = glue_exotic_state(1);
        assert!((alpha - PI / 9.0).abs() < 1e-12);
    }

    #[test]
    fn positive_dimensional_walk() {
        // Vertices 0,1 joined to each of 2,3,4: the biclique has a
        // two-parameter equilibrium family through (0, π, β, −β, 0).
        let g = Graph::from_edges(Some(5), &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)])
            .unwrap();
        let start = AngleState::new(vec![0.0, PI, PI / 3.0, -PI / 3.0, 0.0]);
        assert!(residual_inf_norm(&g, &start) < 1e-14);
        let p = SearchParams::for_vertex_count(5);
        let rec = build_record(&g, start, 1, &p);
        assert!(rec.kernel_dim >= 1);
        assert_ne!(rec.classification, Classification::LinearlyStable);
        let trail = witness_positive_dimensional(&g, &rec, 40);
        assert!(trail.len() >= 10, "found {}", trail.len());
        for s in &trail {
            assert!(residual_inf_norm(&g, s) <= 1e-10);
        }

        // C_5 sync: kernel is trivial, walk returns nothing.
        let c5 = cycle(5);
        let sync = build_record(&c5, AngleState::new(vec![0.0; 5]), 1, &p);
        assert_eq!(sync.kernel_dim, 0);
        assert!(witness_positive_dimensional(&c5, &sync, 10).is_empty());
    }

    #[test]
    fn record_json_round_trip() {
        let g = cycle(5);
        let p = SearchParams::for_vertex_count(5).with_restarts(40);
        let out = multistart_search(&g, &p);
        for rec in &out.records {
            let wire = RecordJson::from(rec);
            let text = serde_json::to_string(&wire).unwrap();
            let back: RecordJson = serde_json::from_str(&text).unwrap();
            assert_eq!(back, wire);
            let rec2 = back.to_record();
            assert_eq!(rec2.state.angles(), rec.state.angles());
            assert_eq!(rec2.eigenvalues, rec.eigenvalues);
        }
    }
}
