//! Linear stability via the weighted graph Laplacian.
//!
//! At a state θ the Jacobian of the phase dynamics is symmetric with entries
//! `cos(θ_i − θ_j)` on edges and negated row sums on the diagonal. A state is
//! linearly stable when exactly one eigenvalue is (the forced) zero and the
//! rest are negative. The eigensolver is a dense cyclic-Jacobi rotation
//! scheme: self-contained, unconditionally convergent on symmetric input,
//! and plenty accurate at the matrix sizes that occur here (n ≤ 16).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::AngleState;
use crate::graphs::Graph;

/// Relative eigenvalue band treated as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-7;
/// Relative band an eigenvalue must clear to count as negative (or positive).
pub const DEFAULT_NEG_TOL: f64 = 1e-6;

const SYMMETRY_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error("matrix asymmetric beyond tolerance: |a_ij - a_ji| up to {0:.3e}")]
    Asymmetric(f64),
    #[error("rows do not form a square matrix")]
    NotSquare,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Classification {
    LinearlyStable,
    Unstable,
    Degenerate,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Classification::LinearlyStable => "LinearlyStable",
            Classification::Unstable => "Unstable",
            Classification::Degenerate => "Degenerate",
        };
        write!(f, "{s}")
    }
}

/// Dense symmetric matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Validates squareness and symmetry (relative 1e−12).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, StabilityError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(StabilityError::NotSquare);
        }
        let mut m = SymMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.data[i * n + j] = v;
            }
        }
        m.check_symmetry()?;
        Ok(m)
    }

    fn check_symmetry(&self) -> Result<(), StabilityError> {
        let scale = self.max_abs().max(1.0);
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        if worst > SYMMETRY_REL_TOL * scale {
            return Err(StabilityError::Asymmetric(worst));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both (i, j) and (j, i).
    pub fn set_sym(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Eigenvalues ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, StabilityError> {
        Ok(self.eigen_decomposition()?.0)
    }

    /// Full spectral decomposition by cyclic Jacobi rotations; eigenvalues
    /// ascending, `vectors[k]` the unit eigenvector for `values[k]`.
    pub fn eigen_decomposition(&self) -> Result<(Vec<f64>, Vec<Vec<f64>>), StabilityError> {
        self.check_symmetry()?;
        let n = self.n;
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|i| self.data[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut v = vec![vec![0.0; n]; n];
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        let scale = self.max_abs().max(f64::MIN_POSITIVE);

        for _sweep in 0..64 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in p + 1..n {
                    off = off.max(a[p][q].abs());
                }
            }
            if off <= 1e-15 * scale {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[p][q];
                    if apq.abs() <= 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    let tau = s / (1.0 + c);

                    a[p][p] -= t * apq;
                    a[q][q] += t * apq;
                    a[p][q] = 0.0;
                    a[q][p] = 0.0;
                    for r in 0..n {
                        if r == p || r == q {
                            continue;
                        }
                        let arp = a[r][p];
                        let arq = a[r][q];
                        a[r][p] = arp - s * (arq + tau * arp);
                        a[p][r] = a[r][p];
                        a[r][q] = arq + s * (arp - tau * arq);
                        a[q][r] = a[r][q];
                    }
                    for row in v.iter_mut() {
                        let vp = row[p];
                        let vq = row[q];
                        row[p] = vp - s * (vq + tau * vp);
                        row[q] = vq + s * (vp - tau * vq);
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
        let values: Vec<f64> = order.iter().map(|&i| a[i][i]).collect();
        let vectors: Vec<Vec<f64>> = order
            .iter()
            .map(|&k| (0..n).map(|r| v[r][k]).collect())
            .collect();
        Ok((values, vectors))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    /// Six-significant-digit rendering (leading zero dropped, trailing zeros
    /// trimmed), one row per line.
    pub fn pretty(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| sig6(self.get(i, j))).collect())
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(1);
        cells
            .iter()
            .map(|row| {
                let body = row
                    .iter()
                    .map(|c| format!("{c:<width$}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("| {body} |")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Formats with six significant digits in the computer-algebra style used for
/// the worked matrices: `-.801938`, `-1.24698`, `0`.
pub fn sig6(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let mut s = format!("{v:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if let Some(rest) = s.strip_prefix("0.") {
        s = format!(".{rest}");
    } else if let Some(rest) = s.strip_prefix("-0.") {
        s = format!("-.{rest}");
    }
    s
}

/// Jacobian of the phase dynamics at a state: cos-weighted graph Laplacian,
/// negated. Row sums cancel exactly by construction.
pub fn weighted_jacobian(g: &Graph, state: &AngleState) -> SymMatrix {
    let n = g.vertex_count();
    assert_eq!(state.len(), n);
    let theta = state.angles();
    let mut m = SymMatrix::zeros(n);
    for i in 0..n {
        let mut diag = 0.0;
        for &j in g.neighbors(i) {
            let w = (theta[i] - theta[j]).cos();
            m.set_sym(i, j, w);
            diag -= w;
        }
        m.set_sym(i, i, diag);
    }
    m
}

/// The Jacobian with the gauge vertex 0 deleted (row and column); its kernel
/// signals genuine degeneracy rather than rotational symmetry.
pub fn reduced_jacobian(g: &Graph, state: &AngleState) -> SymMatrix {
    let full = weighted_jacobian(g, state);
    let n = g.vertex_count();
    let mut m = SymMatrix::zeros(n - 1);
    for i in 1..n {
        for j in 1..n {
            m.set_sym(i - 1, j - 1, full.get(i, j));
        }
    }
    m
}

fn zero_band(eigs: &[f64], zero_tol: f64) -> f64 {
    let scale = eigs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    // "All zero" spectra are measured on an absolute scale of one.
    let scale = if scale <= zero_tol { 1.0 } else { scale };
    zero_tol * scale
}

/// Classifies a sorted spectrum. One eigenvalue in the zero band with all
/// others clearly negative is linearly stable; anything clearly positive is
/// unstable; extra zero modes, or values stranded between the bands, are
/// conservatively degenerate.
pub fn classify(eigs: &[f64], zero_tol: f64, neg_tol: f64) -> Classification {
    debug_assert!(eigs.windows(2).all(|w| w[0] <= w[1]), "spectrum not sorted");
    let zband = zero_band(eigs, zero_tol);
    let nband = zband / zero_tol * neg_tol;
    if eigs.iter().any(|&l| l >= nband) {
        return Classification::Unstable;
    }
    let zeros = eigs.iter().filter(|l| l.abs() <= zband).count();
    let negatives = eigs.iter().filter(|&&l| l <= -nband).count();
    if zeros == 1 && negatives == eigs.len() - 1 {
        Classification::LinearlyStable
    } else {
        Classification::Degenerate
    }
}

/// Number of eigenvalues in the zero band.
pub fn kernel_dimension(m: &SymMatrix, zero_tol: f64) -> Result<usize, StabilityError> {
    let eigs = m.eigenvalues()?;
    let zband = zero_band(&eigs, zero_tol);
    Ok(eigs.iter().filter(|l| l.abs() <= zband).count())
}

/// True when every edge difference lies strictly inside (−π/2, π/2) mod 2π;
/// a sufficient (not necessary) condition for linear stability at an
/// equilibrium, since all Laplacian weights are then positive.
pub fn half_pi_sufficiency(g: &Graph, state: &AngleState) -> bool {
    let theta = state.angles();
    g.edges().iter().all(|&(i, j)| {
        let d = wrap_to_pi(theta[i] - theta[j]);
        d.abs() < std::f64::consts::FRAC_PI_2
    })
}

/// Wraps an angle to (−π, π].
pub fn wrap_to_pi(a: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut r = a.rem_euclid(two_pi);
    if r > std::f64::consts::PI {
        r -= two_pi;
    }
    r
}

/// Spectrum summary attached to equilibrium records.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    pub zero_count: usize,
    pub classification: Classification,
    pub zero_tol: f64,
}

impl SpectralReport {
    pub fn from_eigenvalues(eigs: Vec<f64>, zero_tol: f64, neg_tol: f64) -> Self {
        let zband = zero_band(&eigs, zero_tol);
        let zero_count = eigs.iter().filter(|l| l.abs() <= zband).count();
        let classification = classify(&eigs, zero_tol, neg_tol);
        SpectralReport {
            eigenvalues: eigs,
            zero_count,
            classification,
            zero_tol,
        }
    }
}

/// Numerical rank by Gaussian elimination with partial pivoting; the pivot
/// threshold is `tol_rel` times the largest initial entry.
pub fn matrix_rank(rows: &[Vec<f64>], tol_rel: f64) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut a: Vec<Vec<f64>> = rows.to_vec();
    let (m, n) = (a.len(), a[0].len());
    let scale = a
        .iter()
        .flatten()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let tol = tol_rel * scale;
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        let Some(piv) = (row..m).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        }) else {
            break;
        };
        if a[piv][col].abs() <= tol {
            continue;
        }
        a.swap(row, piv);
        for i in row + 1..m {
            let factor = a[i][col] / a[row][col];
            for k in col..n {
                a[i][k] -= factor * a[row][k];
            }
        }
        rank += 1;
        row += 1;
        if row == m {
            break;
        }
    }
    rank
}
