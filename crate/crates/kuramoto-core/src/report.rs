//! Human-readable and JSON reports for single-graph analysis and the gluing
//! construction. Angle tables print in degrees with the (always zero) first
//! angle omitted; coordinate rows list x = sin θ then y = cos θ with vertex 0
//! omitted, matching the tabular style of the worked examples.

use serde::{Deserialize, Serialize};

use crate::dynamics::{
    energy, glue_exotic_state, multistart_search, residual_inf_norm, standard_states, AngleState,
    EquilibriumRecord, RecordJson, SearchOutcome, SearchParams,
};
use crate::graphs::{Graph, GraphError, KLet};
use crate::stability::{
    half_pi_sufficiency, weighted_jacobian, Classification, SymMatrix, DEFAULT_NEG_TOL,
    DEFAULT_ZERO_TOL,
};
use crate::sturm::{glue_cubic, isolate_and_refine};

/// Everything `analyze` shows for one graph.
pub struct AnalysisReport {
    pub graph: Graph,
    pub sct: bool,
    pub klets: Vec<KLet>,
    pub klet_bound: Option<usize>,
    pub chordless: Vec<Vec<usize>>,
    /// (total, linearly stable) standard states; `None` when n is too large
    /// to enumerate.
    pub standard_summary: Option<(usize, usize)>,
    pub outcome: SearchOutcome,
    pub params: SearchParams,
}

/// Persisted form of an analysis.
#[derive(Debug, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub mu_c: String,
    pub sct: bool,
    pub klet_bound: Option<usize>,
    pub chordless_ge5: bool,
    pub standard_total: Option<usize>,
    pub standard_stable: Option<usize>,
    pub seed: u64,
    pub restarts: usize,
    pub non_converged: usize,
    pub records: Vec<RecordJson>,
}

pub fn analyze(g: &Graph, params: &SearchParams) -> AnalysisReport {
    let standard_summary = standard_states(g).ok().map(|states| {
        let stable = states
            .iter()
            .filter(|(_, c)| *c == Classification::LinearlyStable)
            .count();
        (states.len(), stable)
    });
    AnalysisReport {
        graph: g.clone(),
        sct: g.is_sct(),
        klets: g.find_klets(),
        klet_bound: g.klet_codim_bound(),
        chordless: g.chordless_cycles(5),
        standard_summary,
        outcome: multistart_search(g, params),
        params: params.clone(),
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> AnalysisJson {
        AnalysisJson {
            graph6: self.graph.to_graph6(),
            n: self.graph.vertex_count(),
            edges: self.graph.edge_count(),
            mu_c: self.graph.connectivity_mu().to_string(),
            sct: self.sct,
            klet_bound: self.klet_bound,
            chordless_ge5: !self.chordless.is_empty(),
            standard_total: self.standard_summary.map(|(t, _)| t),
            standard_stable: self.standard_summary.map(|(_, s)| s),
            seed: self.params.seed,
            restarts: self.params.restarts,
            non_converged: self.outcome.non_converged,
            records: self.outcome.records.iter().map(RecordJson::from).collect(),
        }
    }

    pub fn render_text(&self) -> String {
        let g = &self.graph;
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(
            &mut out,
            format!(
                "graph: n={} edges={} mu_c={} sct={}",
                g.vertex_count(),
                g.edge_count(),
                g.connectivity_mu(),
                self.sct
            ),
        );
        if self.klets.is_empty() {
            push(&mut out, "k-lets: none".into());
        } else {
            for kl in &self.klets {
                push(
                    &mut out,
                    format!(
                        "k-let: {:?} shared neighborhood {:?}",
                        kl.vertices, kl.shared_neighborhood
                    ),
                );
            }
        }
        push(
            &mut out,
            match self.klet_bound {
                Some(b) => format!("k-let codimension bound: {b}"),
                None => "k-let codimension bound: none".into(),
            },
        );
        if self.chordless.is_empty() {
            push(&mut out, "chordless cycles (len >= 5): none".into());
        } else {
            for c in &self.chordless {
                push(&mut out, format!("chordless cycle: {c:?}"));
            }
        }
        if let Some((total, stable)) = self.standard_summary {
            push(
                &mut out,
                format!("standard states: {total} total, {stable} linearly stable"),
            );
        }
        push(
            &mut out,
            format!(
                "multistart: restarts={} seed={} records={} non_converged={}",
                self.params.restarts,
                self.params.seed,
                self.outcome.records.len(),
                self.outcome.non_converged
            ),
        );
        for (idx, rec) in self.outcome.records.iter().enumerate() {
            push(
                &mut out,
                format!(
                    "record {idx}: {} exotic={} energy={:.6} residual={:.2e} kernel_dim={} basin_hits={}",
                    rec.classification,
                    rec.exotic,
                    energy(g, &rec.state),
                    rec.residual_norm,
                    rec.kernel_dim,
                    rec.basin_hits
                ),
            );
        }
        push(&mut out, "angles (degrees, first angle omitted):".into());
        for rec in &self.outcome.records {
            push(&mut out, angle_row(&rec.state));
        }
        push(
            &mut out,
            "coordinates (x_1..x_{n-1}, y_1..y_{n-1}):".into(),
        );
        for rec in &self.outcome.records {
            push(&mut out, coordinate_row(&rec.state));
        }
        out
    }
}

/// `|72.0000|144.0000|...|` — degrees to four decimals, vertex 0 omitted.
pub fn angle_row(state: &AngleState) -> String {
    let mut out = String::from("|");
    for d in &state.degrees()[1..] {
        out.push_str(&format!("{d:.4}|"));
    }
    out
}

/// `|x_1|..|x_{n-1}|y_1|..|y_{n-1}|` to three decimals.
pub fn coordinate_row(state: &AngleState) -> String {
    let mut out = String::from("|");
    for t in &state.angles()[1..] {
        out.push_str(&format!("{:.3}|", t.sin()));
    }
    for t in &state.angles()[1..] {
        out.push_str(&format!("{:.3}|", t.cos()));
    }
    out
}

/// The gluing construction, its cubic, and the resulting state.
pub struct GlueReport {
    pub graph: Graph,
    pub d: usize,
    pub cubic_text: String,
    pub roots: Vec<f64>,
    pub alpha_rad: f64,
    pub state: AngleState,
    pub residual: f64,
    pub jacobian: SymMatrix,
    pub eigenvalues: Vec<f64>,
    pub classification: Classification,
    pub half_pi: bool,
}

pub fn glue_report(d: usize, body_edges: &[(usize, usize)]) -> Result<GlueReport, GraphError> {
    let graph = Graph::glue_c5(d, body_edges)?;
    let cubic = glue_cubic(d);
    let roots = isolate_and_refine(&cubic, -2.0, 2.0, 1e-14);
    let (state, alpha_rad) = glue_exotic_state(d);
    let residual = residual_inf_norm(&graph, &state);
    let jacobian = weighted_jacobian(&graph, &state);
    let eigenvalues = jacobian.eigenvalues().expect("Jacobian is symmetric");
    let classification = crate::stability::classify(&eigenvalues, DEFAULT_ZERO_TOL, DEFAULT_NEG_TOL);
    let half_pi = half_pi_sufficiency(&graph, &state);
    Ok(GlueReport {
        graph,
        d,
        cubic_text: cubic.to_string(),
        roots,
        alpha_rad,
        state,
        residual,
        jacobian,
        eigenvalues,
        classification,
        half_pi,
    })
}

impl GlueReport {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "glued graph: d={} n={} edges={} ({})\n",
            self.d,
            self.graph.vertex_count(),
            self.graph.edge_count(),
            self.graph.to_graph6()
        ));
        out.push_str(&format!("cubic in w = sin(alpha/2): {}\n", self.cubic_text));
        out.push_str(&format!(
            "roots in [-2, 2]: {}\n",
            self.roots
                .iter()
                .map(|r| format!("{r:.6}"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!(
            "alpha = {:.6} rad = {:.4} deg\n",
            self.alpha_rad,
            self.alpha_rad.to_degrees()
        ));
        out.push_str(&format!("state (degrees): {}\n", angle_row(&self.state)));
        out.push_str(&format!("residual: {:.2e}\n", self.residual));
        out.push_str(&format!(
            "eigenvalues: {}\n",
            self.eigenvalues
                .iter()
                .map(|l| format!("{l:.6}"))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        out.push_str(&format!(
            "classification: {} (half-pi sufficiency: {})\n",
            self.classification, self.half_pi
        ));
        out
    }
}

/// Text table for the standard-state enumeration.
pub fn standard_report(g: &Graph) -> Result<String, crate::dynamics::DynamicsError> {
    let states = standard_states(g)?;
    let stable = states
        .iter()
        .filter(|(_, c)| *c == Classification::LinearlyStable)
        .count();
    let mut out = format!(
        "standard states: {} total, {} linearly stable\n",
        states.len(),
        stable
    );
    for (state, class) in &states {
        out.push_str(&format!("{} {}\n", angle_row(state), class));
    }
    Ok(out)
}

/// Convenience for golden comparisons: the record whose angle row (vertex 0
/// omitted, degrees) best matches `want`, with the worst per-angle deviation
/// in degrees (wraparound aware).
pub fn closest_record<'a>(
    records: &'a [EquilibriumRecord],
    want_deg: &[f64],
) -> Option<(&'a EquilibriumRecord, f64)> {
    records
        .iter()
        .map(|rec| {
            let got = rec.state.degrees();
            let worst = want_deg
                .iter()
                .zip(&got[1..])
                .fold(0.0f64, |w, (a, b)| {
                    let d = (a - b).rem_euclid(360.0);
                    w.max(d.min(360.0 - d))
                });
            (rec, worst)
        })
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
}
