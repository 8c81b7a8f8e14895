//! Polynomial encoding of the oscillator equations.
//!
//! Under `x_i = sin θ_i`, `y_i = cos θ_i` the equilibrium condition at vertex
//! i becomes the vanishing of `f_i = Σ_{j~i} (x_j y_i − x_i y_j)`. This module
//! builds those generators with exact integer coefficients, together with the
//! unit-circle relations `x_i² + y_i² − 1`, the 2×2 Segre minors, and the
//! matrix blocks [Y], [X] of the system's algebraic Jacobian.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::Graph;

#[derive(Debug, Error)]
pub enum IdealError {
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
}

/// Sparse polynomial in x_0..x_{n−1}, y_0..y_{n−1} with integer coefficients.
/// Variable k is x_k for k < n and y_{k−n} otherwise; exponent vectors have
/// length 2n and zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Vec<u8>, i64>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<u8>, coef: i64) {
        assert_eq!(exps.len(), 2 * self.n, "exponent vector must have length 2n");
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(slot) => {
                if coef != 0 {
                    slot.insert(coef);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coef;
                if *slot.get() == 0 {
                    slot.remove();
                }
            }
        }
    }

    /// Monomial with single variables raised to exponent one, e.g. x_j·y_i.
    fn monomial(n: usize, vars: &[usize], coef: i64) -> Poly {
        let mut exps = vec![0u8; 2 * n];
        for &v in vars {
            exps[v] += 1;
        }
        let mut p = Poly::zero(n);
        p.add_term(exps, coef);
        p
    }

    pub fn add(&mut self, other: &Poly) {
        assert_eq!(self.n, other.n);
        for (exps, &coef) in &other.terms {
            self.add_term(exps.clone(), coef);
        }
    }

    /// Evaluates at a point (x_0..x_{n−1}, y_0..y_{n−1}).
    pub fn evaluate(&self, point: &[f64]) -> Result<f64, IdealError> {
        if point.len() != 2 * self.n {
            return Err(IdealError::PointLength {
                expected: 2 * self.n,
                got: point.len(),
            });
        }
        let mut sum = 0.0;
        for (exps, &coef) in &self.terms {
            let mut term = coef as f64;
            for (v, &e) in exps.iter().enumerate() {
                for _ in 0..e {
                    term *= point[v];
                }
            }
            sum += term;
        }
        Ok(sum)
    }

    /// Terms in graded reverse-lexicographic descending order with variables
    /// ordered x_0 > … > x_{n−1} > y_0 > … > y_{n−1}; this reproduces the
    /// customary computer-algebra display of the generators.
    fn ordered_terms(&self) -> Vec<(&Vec<u8>, i64)> {
        let mut terms: Vec<(&Vec<u8>, i64)> = self.terms.iter().map(|(e, &c)| (e, c)).collect();
        terms.sort_by(|a, b| grevlex_desc(a.0, b.0));
        terms
    }
}

fn grevlex_desc(a: &[u8], b: &[u8]) -> std::cmp::Ordering {
    use std::cmp::Ordering;
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match db.cmp(&da) {
        Ordering::Equal => {}
        ord => return ord,
    }
    // a before b when the last differing exponent is smaller in a.
    for (ea, eb) in a.iter().zip(b).rev() {
        match ea.cmp(eb) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (exps, coef)) in self.ordered_terms().into_iter().enumerate() {
            let mag = coef.unsigned_abs();
            if coef < 0 {
                write!(f, "-")?;
            } else if idx > 0 {
                write!(f, "+")?;
            }
            let is_constant = exps.iter().all(|&e| e == 0);
            if mag != 1 || is_constant {
                write!(f, "{mag}")?;
            }
            for (v, &e) in exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let (letter, index) = if v < self.n {
                    ('x', v)
                } else {
                    ('y', v - self.n)
                };
                write!(f, "{letter}_{index}")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Which generating set a [`PolySystem`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IdealTag {
    #[serde(rename = "IG")]
    Graph,
    #[serde(rename = "ITheta")]
    Trig,
    #[serde(rename = "IK")]
    Kuramoto,
    #[serde(rename = "ISegre")]
    Segre,
}

/// Ordered generators of one of the oscillator ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    pub n: usize,
    pub tag: IdealTag,
    pub generators: Vec<Poly>,
}

impl PolySystem {
    /// Largest |generator value| at the point.
    pub fn max_abs_at(&self, point: &[f64]) -> Result<f64, IdealError> {
        let mut worst = 0.0f64;
        for g in &self.generators {
            worst = worst.max(g.evaluate(point)?.abs());
        }
        Ok(worst)
    }
}

/// All n generators f_i of the graph ideal; the redundant one is kept so the
/// exact identity Σ f_i = 0 holds verbatim (n − 1 of them are minimal).
pub fn kuramoto_generators(g: &Graph) -> PolySystem {
    let n = g.vertex_count();
    let mut generators = Vec::with_capacity(n);
    for i in 0..n {
        let mut f = Poly::zero(n);
        for &j in g.neighbors(i) {
            f.add(&Poly::monomial(n, &[j, n + i], 1)); //  x_j y_i
            f.add(&Poly::monomial(n, &[i, n + j], -1)); // −x_i y_j
        }
        generators.push(f);
    }
    PolySystem {
        n,
        tag: IdealTag::Graph,
        generators,
    }
}

/// The unit-circle relations x_i² + y_i² − 1.
pub fn theta_system(n: usize) -> PolySystem {
    let mut generators = Vec::with_capacity(n);
    for i in 0..n {
        let mut p = Poly::zero(n);
        let mut ex = vec![0u8; 2 * n];
        ex[i] = 2;
        p.add_term(ex, 1);
        let mut ey = vec![0u8; 2 * n];
        ey[n + i] = 2;
        p.add_term(ey, 1);
        p.add_term(vec![0u8; 2 * n], -1);
        generators.push(p);
    }
    PolySystem {
        n,
        tag: IdealTag::Trig,
        generators,
    }
}

/// Graph generators followed by the unit-circle relations: the full system
/// whose common zeros are the (complexified) equilibria.
pub fn kuramoto_system(g: &Graph) -> PolySystem {
    let n = g.vertex_count();
    let mut generators = kuramoto_generators(g).generators;
    generators.extend(theta_system(n).generators);
    PolySystem {
        n,
        tag: IdealTag::Kuramoto,
        generators,
    }
}

/// The (n choose 2) minors x_i y_j − x_j y_i cutting out the cone over the
/// Segre variety.
pub fn segre_system(n: usize) -> PolySystem {
    let mut generators = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let mut m = Poly::monomial(n, &[i, n + j], 1);
            m.add(&Poly::monomial(n, &[j, n + i], -1));
            generators.push(m);
        }
    }
    PolySystem {
        n,
        tag: IdealTag::Segre,
        generators,
    }
}

/// Exact symbolic sum of the generators; the zero polynomial for any graph
/// system, since each edge contributes antisymmetrically to its two ends.
pub fn sum_generators(sys: &PolySystem) -> Poly {
    debug_assert_eq!(sys.tag, IdealTag::Graph);
    let mut sum = Poly::zero(sys.n);
    for g in &sys.generators {
        sum.add(g);
    }
    sum
}

/// Largest |2×2 minor| of the stacked (x; y) rows: zero exactly on the cone
/// over the Segre variety, where standard states live.
pub fn segre_residual(point: &[f64]) -> f64 {
    let n = point.len() / 2;
    assert_eq!(point.len(), 2 * n);
    let (x, y) = point.split_at(n);
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i + 1..n {
            worst = worst.max((x[i] * y[j] - x[j] * y[i]).abs());
        }
    }
    worst
}

/// The blocks [Y | X] of the Jacobian of the graph generators at a point:
/// [Y]_{ii} = −Σ_{k~i} y_k, [Y]_{ij} = y_i for j ~ i, zero otherwise, so that
/// [Y]·x = (f_0..f_{n−1}) identically; [X] is the same shape in x. At y = 1
/// the [Y] block is exactly −L_G.
pub fn algebraic_jacobian_blocks(
    g: &Graph,
    point: &[f64],
) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>), IdealError> {
    let n = g.vertex_count();
    if point.len() != 2 * n {
        return Err(IdealError::PointLength {
            expected: 2 * n,
            got: point.len(),
        });
    }
    let (x, y) = point.split_at(n);
    let mut ymat = vec![vec![0.0; n]; n];
    let mut xmat = vec![vec![0.0; n]; n];
    for i in 0..n {
        for &j in g.neighbors(i) {
            ymat[i][j] = y[i];
            xmat[i][j] = x[i];
            ymat[i][i] -= y[j];
            xmat[i][i] -= x[j];
        }
    }
    Ok((ymat, xmat))
}

/// Maps angles to the algebraic point (sin θ_0.., cos θ_0..).
pub fn trig_point(angles: &[f64]) -> Vec<f64> {
    let mut point = Vec::with_capacity(2 * angles.len());
    point.extend(angles.iter().map(|t| t.sin()));
    point.extend(angles.iter().map(|t| t.cos()));
    point
}

/// Serialization mirror for a [`PolySystem`]: terms carry (coef, exps) pairs
/// in display order.
#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SystemDump {
    pub tag: IdealTag,
    pub n: usize,
    pub generators: Vec<PolyDump>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyDump {
    pub terms: Vec<TermDump>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermDump {
    pub coef: i64,
    pub exps: Vec<u8>,
}

impl PolySystem {
    pub fn dump(&self) -> SystemDump {
        SystemDump {
            tag: self.tag,
            n: self.n,
            generators: self
                .generators
                .iter()
                .map(|p| PolyDump {
                    terms: p
                        .ordered_terms()
                        .into_iter()
                        .map(|(exps, coef)| TermDump {
                            coef,
                            exps: exps.clone(),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_dump(dump: &SystemDump) -> PolySystem {
        let generators = dump
            .generators
            .iter()
            .map(|p| {
                let mut poly = Poly::zero(dump.n);
                for t in &p.terms {
                    poly.add_term(t.exps.clone(), t.coef);
                }
                poly
            })
            .collect();
        PolySystem {
            n: dump.n,
            tag: dump.tag,
            generators,
        }
    }
}
