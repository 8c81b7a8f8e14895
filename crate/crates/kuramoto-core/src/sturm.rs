//! Exact univariate polynomials, Sturm chains, and real-root isolation.
//!
//! Everything up to the isolating intervals runs in exact rational
//! arithmetic: sign-variation counts must not be corrupted by rounding.
//! Chain elements are rescaled by positive rationals (to primitive integer
//! form) to keep coefficients small; positive scaling preserves signs.
//! Inside an isolating interval the final bisection runs on f64 endpoints
//! with exact sign evaluation at the (dyadic) midpoints.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SturmError {
    #[error("the zero polynomial has no Sturm chain")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("empty interval: require a < b")]
    BadInterval,
    #[error("cannot parse coefficient {0:?}")]
    Parse(String),
}

/// Univariate polynomial with exact rational coefficients, ascending degree;
/// the leading coefficient is nonzero (the zero polynomial has no terms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UniPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Ascending whitespace-separated coefficients, each an integer or `p/q`:
    /// `"1 -10 0 8"` is 1 − 10w + 8w³.
    pub fn parse_coeff_list(text: &str) -> Result<Self, SturmError> {
        let mut coeffs = Vec::new();
        for tok in text.split_whitespace() {
            let r = match tok.split_once('/') {
                Some((p, q)) => {
                    let p: BigInt = p.parse().map_err(|_| SturmError::Parse(tok.into()))?;
                    let q: BigInt = q.parse().map_err(|_| SturmError::Parse(tok.into()))?;
                    if q.is_zero() {
                        return Err(SturmError::Parse(tok.into()));
                    }
                    BigRational::new(p, q)
                }
                None => {
                    let p: BigInt = tok.parse().map_err(|_| SturmError::Parse(tok.into()))?;
                    BigRational::from_integer(p)
                }
            };
            coeffs.push(r);
        }
        Ok(UniPoly::new(coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::new(Vec::new());
        }
        UniPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k + 1)))
                .collect(),
        )
    }

    fn neg(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Scales by the positive rational that makes the coefficients integers
    /// with gcd one (sign pattern unchanged).
    fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for c in &self.coeffs {
            numer_gcd = numer_gcd.gcd(&(c.numer() * &denom_lcm / c.denom()));
        }
        let scale = BigRational::new(denom_lcm, numer_gcd);
        UniPoly::new(self.coeffs.iter().map(|c| c * &scale).collect())
    }

    /// Long division remainder (exact).
    fn rem(&self, divisor: &UniPoly) -> UniPoly {
        assert!(!divisor.is_zero());
        let mut r = self.coeffs.clone();
        let d = divisor.coeffs.len();
        let lead = &divisor.coeffs[d - 1];
        while r.len() >= d {
            let k = r.len() - d;
            let factor = r.last().unwrap() / lead;
            for i in 0..d {
                let v = &divisor.coeffs[i] * &factor;
                r[k + i] -= v;
            }
            // The top coefficient cancels exactly.
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UniPoly::new(r)
    }

    fn divide_exact(&self, divisor: &UniPoly) -> UniPoly {
        assert!(!divisor.is_zero());
        let mut r = self.coeffs.clone();
        let d = divisor.coeffs.len();
        let lead = &divisor.coeffs[d - 1];
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(d) + 1];
        while r.len() >= d {
            let k = r.len() - d;
            let factor = r.last().unwrap() / lead;
            q[k] = factor.clone();
            for i in 0..d {
                let v = &divisor.coeffs[i] * &factor;
                r[k + i] -= v;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        assert!(r.is_empty(), "division was not exact");
        UniPoly::new(q)
    }

    fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive();
        let mut b = other.primitive();
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive()
    }

    /// p divided by gcd(p, p′): same roots, all simple.
    pub fn squarefree_part(&self) -> Result<UniPoly, SturmError> {
        if self.is_zero() {
            return Err(SturmError::ZeroPolynomial);
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return Ok(self.primitive());
        }
        Ok(self.divide_exact(&g).primitive())
    }

    /// Sign of p(t + ε) for infinitesimal ε > 0: the sign of the lowest
    /// nonzero Taylor coefficient at t. Never zero for a nonzero polynomial.
    fn sign_right_of(&self, t: &BigRational) -> i8 {
        assert!(!self.is_zero());
        // Ruffini–Horner shift: rewrite p in powers of (x − t).
        let mut b = self.coeffs.clone();
        let n = b.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let v = &b[j + 1] * t;
                b[j] += v;
            }
        }
        for c in &b {
            if !c.is_zero() {
                return if c.is_positive() { 1 } else { -1 };
            }
        }
        unreachable!("nonzero polynomial has a nonzero Taylor coefficient")
    }
}

impl std::fmt::Display for UniPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Standard Sturm chain of the squarefree part of p: p₀ = p, p₁ = p′, then
/// each element is the negated division remainder of the two before it,
/// rescaled to primitive integer form. Ends at a nonzero constant.
pub fn sturm_sequence(p: &UniPoly) -> Result<Vec<UniPoly>, SturmError> {
    if p.is_zero() {
        return Err(SturmError::ZeroPolynomial);
    }
    if p.degree() == Some(0) {
        return Err(SturmError::ConstantPolynomial);
    }
    let sf = p.squarefree_part()?;
    let mut chain = vec![sf.clone(), sf.derivative().primitive()];
    loop {
        let last = &chain[chain.len() - 1];
        if last.degree() == Some(0) {
            break;
        }
        let r = chain[chain.len() - 2].rem(last);
        assert!(
            !r.is_zero(),
            "squarefree chain cannot terminate in a nonconstant gcd"
        );
        chain.push(r.neg().primitive());
    }
    Ok(chain)
}

fn sign_changes(chain: &[UniPoly], t: &BigRational) -> usize {
    let mut changes = 0;
    let mut prev: Option<i8> = None;
    for q in chain {
        let s = q.sign_right_of(t);
        if let Some(p) = prev {
            if p != s {
                changes += 1;
            }
        }
        prev = Some(s);
    }
    changes
}

/// Exact number of real roots of p in the half-open interval (a, b]. Signs
/// at the endpoints are taken as limits from the right, which makes the
/// half-open semantics exact even when an endpoint is itself a root.
pub fn count_roots_in(p: &UniPoly, a: &BigRational, b: &BigRational) -> Result<usize, SturmError> {
    if a >= b {
        return Err(SturmError::BadInterval);
    }
    let chain = sturm_sequence(p)?;
    Ok(sign_changes(&chain, a) - sign_changes(&chain, b))
}

/// All roots of p in (a, b], ascending, each within `tol` of the true root
/// (and to f64 resolution regardless): Sturm bisection down to isolating
/// intervals, then sign bisection with exact evaluation.
pub fn isolate_and_refine(p: &UniPoly, a: f64, b: f64, tol: f64) -> Vec<f64> {
    let ra = BigRational::from_float(a).expect("finite endpoint");
    let rb = BigRational::from_float(b).expect("finite endpoint");
    let sf = match p.squarefree_part() {
        Ok(sf) => sf,
        Err(_) => return Vec::new(),
    };
    if sf.degree() == Some(0) {
        return Vec::new();
    }
    let chain = match sturm_sequence(&sf) {
        Ok(c) => c,
        Err(_) => return Vec::new(),
    };
    let count = |lo: &BigRational, hi: &BigRational| -> usize {
        sign_changes(&chain, lo) - sign_changes(&chain, hi)
    };

    let total = count(&ra, &rb);
    let mut queue = vec![(ra, rb, total)];
    let mut isolated: Vec<(BigRational, BigRational)> = Vec::new();
    while let Some((lo, hi, k)) = queue.pop() {
        match k {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / BigRational::from_integer(BigInt::from(2));
                let left = count(&lo, &mid);
                queue.push((lo, mid.clone(), left));
                queue.push((mid, hi, k - left));
            }
        }
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));

    let mut roots = Vec::with_capacity(isolated.len());
    for (lo, hi) in isolated {
        roots.push(refine_root(&sf, lo, hi, tol));
    }
    roots
}

fn refine_root(p: &UniPoly, lo: BigRational, hi: BigRational, tol: f64) -> f64 {
    let sign_at = |t: &BigRational| -> i8 {
        let v = p.eval(t);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    if sign_at(&hi) == 0 {
        return rational_to_f64(&hi);
    }
    // The single root lies in (lo, hi]; a vanishing left endpoint is its own
    // (excluded) root, so take the sign just right of it.
    let mut sl = match sign_at(&lo) {
        0 => p.sign_right_of(&lo),
        s => s,
    };
    let mut flo = rational_to_f64(&lo);
    let mut fhi = rational_to_f64(&hi);
    loop {
        let mid = 0.5 * (flo + fhi);
        if !(mid > flo && mid < fhi) || (fhi - flo) <= tol * 0.25 {
            break;
        }
        let rmid = BigRational::from_float(mid).expect("midpoint is finite");
        match sign_at(&rmid) {
            0 => return mid,
            s if s == sl => {
                flo = mid;
                sl = s;
            }
            _ => fhi = mid,
        }
    }
    0.5 * (flo + fhi)
}

/// The gluing cubic 8w³ − (4+2d)w + 1 in w = sin(α/2); substituting y = 2w
/// gives the depressed form y³ − (d+2)y + 1.
pub fn glue_cubic(d: usize) -> UniPoly {
    UniPoly::from_integers(&[1, -(4 + 2 * d as i64), 0, 8])
}
