//! Root-based and quadrature-based invariants of monic polynomials.
//!
//! For a monic polynomial Q of degree d with complex roots λ_1, ..., λ_d
//! the module computes
//!
//! * the logarithmic Mahler measure  m(Q) = Σ log max(1, |λ_j|),
//! * the Jensen square sum           w(Q) = Σ log² max(1, |λ_j|),
//! * the log-house                   h(Q) = max_j log max(1, |λ_j|),
//!
//! together with an independent quadrature route for m(Q) through the
//! circle average of log|Q| and an exact reciprocity test.
//!
//! Roots are extracted from the balanced companion matrix of each
//! square-free factor; square-free decomposition is exact whenever the
//! coefficients are integers or rationals, so high-multiplicity factors
//! (for example (z-1)^k from identity lifts) never reach the
//! eigensolver.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::rat_matrix::rational_to_f64;

/// Roots this close to the unit circle contribute zero to m, w and h:
/// double-precision root scatter must not create spurious positive
/// invariants for reciprocal polynomials with circle roots.
pub const UNIT_SNAP_TOL: f64 = 1e-9;

/// Hard cap on quadrature nodes before giving up.
pub const QUADRATURE_NODE_CAP: usize = 1 << 20;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("leading coefficient must be exactly 1")]
    NotMonic,
    #[error("operation requires degree >= 1")]
    DegreeZero,
    #[error("eigenvalue iteration failed to converge on square-free factor of degree {degree}")]
    EigenNonConvergence { degree: usize },
    #[error(
        "root of modulus {modulus} lies within {limit} of the unit circle; \
         the circle integrand is log-singular, use the root-based Mahler measure instead"
    )]
    RootNearCircle { modulus: f64, limit: f64 },
    #[error("adaptive quadrature exceeded {QUADRATURE_NODE_CAP} nodes before reaching the tolerance")]
    QuadratureCap,
    #[error("operation requires exact (integer or rational) coefficients")]
    ExactnessRequired,
}

/// Coefficient kind of a [`MonicPolynomial`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffKind {
    ExactInteger,
    ExactRational,
    Floating,
}

#[derive(Debug, Clone, PartialEq)]
enum Coeffs {
    /// Descending powers, leading entry 1.
    Exact(Vec<BigRational>),
    /// Descending powers, leading entry 1.0.
    Float(Vec<f64>),
}

/// Monic univariate polynomial with exact or floating coefficients,
/// stored in descending powers.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    coeffs: Coeffs,
}

impl MonicPolynomial {
    pub fn from_exact(coeffs: Vec<BigRational>) -> Result<Self, PolyError> {
        if coeffs.first().map(|c| c.is_one()) != Some(true) {
            return Err(PolyError::NotMonic);
        }
        Ok(MonicPolynomial {
            coeffs: Coeffs::Exact(coeffs),
        })
    }

    pub fn from_integers(coeffs: &[i64]) -> Result<Self, PolyError> {
        Self::from_exact(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Result<Self, PolyError> {
        Self::from_exact(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn from_floats(coeffs: Vec<f64>) -> Result<Self, PolyError> {
        if coeffs.first().copied() != Some(1.0) {
            return Err(PolyError::NotMonic);
        }
        Ok(MonicPolynomial {
            coeffs: Coeffs::Float(coeffs),
        })
    }

    /// Monic polynomial with the given complex roots (conjugate-closed
    /// multiset expected); coefficients come out real.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for r in roots {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (i, ci) in c.iter().enumerate() {
                next[i] += ci;
                next[i + 1] -= ci * r;
            }
            c = next;
        }
        let mut real: Vec<f64> = c.iter().map(|z| z.re).collect();
        real[0] = 1.0;
        MonicPolynomial {
            coeffs: Coeffs::Float(real),
        }
    }

    pub fn degree(&self) -> usize {
        match &self.coeffs {
            Coeffs::Exact(c) => c.len() - 1,
            Coeffs::Float(c) => c.len() - 1,
        }
    }

    pub fn kind(&self) -> CoeffKind {
        match &self.coeffs {
            Coeffs::Exact(c) => {
                if c.iter().all(|x| x.denom().is_one()) {
                    CoeffKind::ExactInteger
                } else {
                    CoeffKind::ExactRational
                }
            }
            Coeffs::Float(_) => CoeffKind::Floating,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs, Coeffs::Exact(_))
    }

    pub fn exact_coeffs(&self) -> Option<&[BigRational]> {
        match &self.coeffs {
            Coeffs::Exact(c) => Some(c),
            Coeffs::Float(_) => None,
        }
    }

    /// Coefficients in descending powers as f64.
    pub fn float_coeffs(&self) -> Vec<f64> {
        match &self.coeffs {
            Coeffs::Exact(c) => c.iter().map(rational_to_f64).collect(),
            Coeffs::Float(c) => c.clone(),
        }
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.float_coeffs() {
            acc = acc * z + Complex64::new(c, 0.0);
        }
        acc
    }

    /// Product; exact when both factors are exact.
    pub fn mul(&self, other: &MonicPolynomial) -> MonicPolynomial {
        match (&self.coeffs, &other.coeffs) {
            (Coeffs::Exact(a), Coeffs::Exact(b)) => {
                let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
                for (i, ai) in a.iter().enumerate() {
                    for (j, bj) in b.iter().enumerate() {
                        out[i + j] += ai * bj;
                    }
                }
                MonicPolynomial {
                    coeffs: Coeffs::Exact(out),
                }
            }
            _ => {
                let a = self.float_coeffs();
                let b = other.float_coeffs();
                let mut out = vec![0.0; a.len() + b.len() - 1];
                for (i, ai) in a.iter().enumerate() {
                    for (j, bj) in b.iter().enumerate() {
                        out[i + j] += ai * bj;
                    }
                }
                out[0] = 1.0;
                MonicPolynomial {
                    coeffs: Coeffs::Float(out),
                }
            }
        }
    }

    /// True iff z^d p(1/z) = ±p(z) exactly. Requires exact coefficients.
    pub fn is_reciprocal(&self) -> Result<bool, PolyError> {
        Ok(self.reciprocity_sign()?.is_some())
    }

    /// The sign ε with z^d p(1/z) = ε p(z), if reciprocal.
    pub fn reciprocity_sign(&self) -> Result<Option<i8>, PolyError> {
        let Coeffs::Exact(c) = &self.coeffs else {
            return Err(PolyError::ExactnessRequired);
        };
        let plus = c.iter().zip(c.iter().rev()).all(|(a, b)| a == b);
        if plus {
            return Ok(Some(1));
        }
        let minus = c.iter().zip(c.iter().rev()).all(|(a, b)| *a == -b);
        if minus {
            return Ok(Some(-1));
        }
        Ok(None)
    }

    /// Exact gcd with every z^k - 1 divided out (k up to the degree),
    /// removing unit-circle roots of unity before numerical root-finding.
    /// Returns the stripped polynomial and the removed cyclotomic-product
    /// factors as (k, multiplicity-of-division).
    pub fn strip_cyclotomic(&self) -> Result<(MonicPolynomial, Vec<(usize, usize)>), PolyError> {
        let Coeffs::Exact(c) = &self.coeffs else {
            return Err(PolyError::ExactnessRequired);
        };
        let mut cur = RatPoly::new(c.clone());
        let mut removed = Vec::new();
        for k in 1..=self.degree().max(1) {
            let mut count = 0;
            let cyc = RatPoly::z_pow_minus_one(k);
            loop {
                let g = RatPoly::gcd(&cur, &cyc);
                if g.degree() == 0 {
                    break;
                }
                cur = cur.div_exact(&g);
                count += 1;
            }
            if count > 0 {
                removed.push((k, count));
            }
            if cur.degree() == 0 {
                break;
            }
        }
        Ok((
            MonicPolynomial::from_exact(cur.into_monic_coeffs())?,
            removed,
        ))
    }

    /// All complex roots with multiplicity.
    ///
    /// Exact inputs go through square-free decomposition first, so each
    /// eigenvalue problem has simple roots; floating inputs are handed
    /// to the companion matrix as-is with multiplicity one per root.
    pub fn roots(&self) -> Result<RootMultiset, PolyError> {
        if self.degree() == 0 {
            return Ok(RootMultiset {
                entries: Vec::new(),
                source_tolerance: 0.0,
            });
        }
        let mut entries = Vec::new();
        match &self.coeffs {
            Coeffs::Exact(c) => {
                for (factor, mult) in square_free_decomposition(&RatPoly::new(c.clone())) {
                    if factor.degree() == 0 {
                        continue;
                    }
                    let coeffs: Vec<f64> = factor
                        .monic_coeffs()
                        .iter()
                        .map(rational_to_f64)
                        .collect();
                    for root in companion_roots(&coeffs)? {
                        entries.push((root, mult));
                    }
                }
            }
            Coeffs::Float(c) => {
                for root in companion_roots(c)? {
                    entries.push((root, 1));
                }
            }
        }
        debug_assert_eq!(
            entries.iter().map(|(_, m)| m).sum::<usize>(),
            self.degree()
        );
        Ok(RootMultiset {
            entries,
            source_tolerance: UNIT_SNAP_TOL,
        })
    }
}

/// Complex roots with multiplicities, as produced by
/// [`MonicPolynomial::roots`].
#[derive(Debug, Clone)]
pub struct RootMultiset {
    pub entries: Vec<(Complex64, usize)>,
    pub source_tolerance: f64,
}

impl RootMultiset {
    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// log max(1, |λ|) with the unit snap rule applied.
    fn log_radius(lambda: Complex64) -> f64 {
        let r = lambda.norm();
        if (r - 1.0).abs() <= UNIT_SNAP_TOL || r <= 1.0 {
            0.0
        } else {
            r.ln()
        }
    }

    pub fn mahler_log(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(z, m)| m as f64 * Self::log_radius(z))
            .sum()
    }

    pub fn jensen_square_sum(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(z, m)| {
                let l = Self::log_radius(z);
                m as f64 * l * l
            })
            .sum()
    }

    pub fn log_house(&self) -> f64 {
        self.entries
            .iter()
            .map(|&(z, _)| Self::log_radius(z))
            .fold(0.0, f64::max)
    }
}

/// Logarithmic Mahler measure m(p) = Σ log max(1, |λ_j|) over the roots.
pub fn mahler_log(p: &MonicPolynomial) -> Result<f64, PolyError> {
    if p.degree() == 0 {
        return Err(PolyError::DegreeZero);
    }
    Ok(p.roots()?.mahler_log())
}

/// Jensen square sum w(p) = Σ log² max(1, |λ_j|) over the roots.
pub fn jensen_square_sum(p: &MonicPolynomial) -> Result<f64, PolyError> {
    if p.degree() == 0 {
        return Err(PolyError::DegreeZero);
    }
    Ok(p.roots()?.jensen_square_sum())
}

/// Log-house h(p) = max_j log max(1, |λ_j|).
pub fn log_house(p: &MonicPolynomial) -> Result<f64, PolyError> {
    if p.degree() == 0 {
        return Err(PolyError::DegreeZero);
    }
    Ok(p.roots()?.log_house())
}

/// Mahler measure through the circle average (1/2π) ∫ log|p(e^{iθ})| dθ,
/// by adaptive composite Gauss–Legendre quadrature.
///
/// Rejects polynomials with a root within √tol of the unit circle, where
/// the integrand is log-singular and the estimate would be unreliable.
pub fn mahler_log_quadrature(p: &MonicPolynomial, tol: f64) -> Result<f64, PolyError> {
    assert!(tol > 0.0, "tolerance must be positive");
    if p.degree() == 0 {
        return Err(PolyError::DegreeZero);
    }
    let limit = tol.sqrt();
    for &(z, _) in &p.roots()?.entries {
        let r = z.norm();
        if (r - 1.0).abs() <= limit {
            return Err(PolyError::RootNearCircle { modulus: r, limit });
        }
    }

    let f = |theta: f64| {
        p.eval_complex(Complex64::from_polar(1.0, theta))
            .norm()
            .ln()
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    // interval stack: (a, b, value on [a,b])
    let mut stack = vec![(0.0f64, two_pi, gauss_legendre_15(&f, 0.0, two_pi))];
    let mut total = 0.0;
    let mut nodes = 15usize;
    while let Some((a, b, whole)) = stack.pop() {
        let mid = 0.5 * (a + b);
        let left = gauss_legendre_15(&f, a, mid);
        let right = gauss_legendre_15(&f, mid, b);
        nodes += 30;
        if nodes > QUADRATURE_NODE_CAP {
            return Err(PolyError::QuadratureCap);
        }
        let refined = left + right;
        // local error share proportional to interval length
        if (refined - whole).abs() <= tol * (b - a) / two_pi {
            total += refined;
        } else {
            stack.push((a, mid, left));
            stack.push((mid, b, right));
        }
    }
    Ok(total / two_pi)
}

// ---------------------------------------------------------------------
// companion-matrix root extraction

/// Roots of a monic polynomial given by descending f64 coefficients,
/// via the balanced companion matrix.
fn companion_roots(coeffs: &[f64]) -> Result<Vec<Complex64>, PolyError> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    if d == 1 {
        return Ok(vec![Complex64::new(-coeffs[1], 0.0)]);
    }
    if d == 2 {
        let (b, c) = (coeffs[1], coeffs[2]);
        let disc = Complex64::new(b * b - 4.0 * c, 0.0).sqrt();
        // larger-magnitude root first, partner from the product, so the
        // small root never suffers cancellation
        let t = if b >= 0.0 {
            -Complex64::new(b, 0.0) - disc
        } else {
            -Complex64::new(b, 0.0) + disc
        };
        let r1 = t * 0.5;
        let r2 = if r1.norm() > 1e-300 {
            Complex64::new(c, 0.0) / r1
        } else {
            Complex64::new(0.0, 0.0)
        };
        return Ok(vec![r1, r2]);
    }
    let mut m = DMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        m[(i, d - 1)] = -coeffs[d - i];
    }
    balance_in_place(&mut m);
    let schur = m
        .try_schur(f64::EPSILON, 100_000)
        .ok_or(PolyError::EigenNonConvergence { degree: d })?;
    let eig = schur.complex_eigenvalues();
    Ok(eig.iter().copied().collect())
}

/// Parlett–Reinsch balancing with radix-2 scaling: equalizes row and
/// column norms by a diagonal similarity, which dramatically improves
/// eigenvalue accuracy for companion matrices with uneven coefficients.
fn balance_in_place(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    let radix: f64 = 2.0;
    let mut done = false;
    let mut rounds = 0;
    while !done && rounds < 100 {
        done = true;
        rounds += 1;
        for i in 0..n {
            let mut c: f64 = 0.0;
            let mut r: f64 = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].abs();
                    r += m[(i, j)].abs();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let mut f = 1.0;
            let mut cc = c;
            let s = c + r;
            while cc < r / radix {
                f *= radix;
                cc *= radix * radix;
            }
            while cc > r * radix {
                f /= radix;
                cc /= radix * radix;
            }
            if (c * f + r / f) < 0.95 * s {
                done = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                }
                for j in 0..n {
                    m[(j, i)] *= f;
                }
            }
        }
    }
}

// ---------------------------------------------------------------------
// exact polynomial arithmetic for square-free decomposition

/// Non-monic exact polynomial, descending powers, used internally for
/// gcd and exact division.
#[derive(Debug, Clone, PartialEq)]
struct RatPoly {
    coeffs: Vec<BigRational>, // descending, no leading zeros unless zero poly
}

impl RatPoly {
    fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.len() > 1 && coeffs[0].is_zero() {
            coeffs.remove(0);
        }
        RatPoly { coeffs }
    }

    fn z_pow_minus_one(k: usize) -> Self {
        let mut c = vec![BigRational::zero(); k + 1];
        c[0] = BigRational::one();
        c[k] = -BigRational::one();
        RatPoly { coeffs: c }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn leading(&self) -> &BigRational {
        &self.coeffs[0]
    }

    fn make_monic(&self) -> Self {
        let l = self.leading().clone();
        RatPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    fn monic_coeffs(&self) -> Vec<BigRational> {
        self.make_monic().coeffs
    }

    fn into_monic_coeffs(self) -> Vec<BigRational> {
        self.make_monic().coeffs
    }

    fn derivative(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return RatPoly::new(vec![BigRational::zero()]);
        }
        let c = (0..d)
            .map(|i| &self.coeffs[i] * BigRational::from_integer(BigInt::from(d - i)))
            .collect();
        RatPoly::new(c)
    }

    /// Euclidean remainder.
    fn rem(&self, div: &Self) -> Self {
        let mut r = self.coeffs.clone();
        let dd = div.degree();
        let dl = div.leading();
        while r.len() > 1 && r.len() - 1 >= dd && !r.iter().all(|c| c.is_zero()) {
            if r[0].is_zero() {
                r.remove(0);
                continue;
            }
            let q = &r[0] / dl;
            for (i, c) in div.coeffs.iter().enumerate() {
                let t = &q * c;
                r[i] -= t;
            }
            r.remove(0);
        }
        RatPoly::new(r)
    }

    /// Exact quotient; panics if the division is not exact
    /// (internal use on known divisors only).
    fn div_exact(&self, div: &Self) -> Self {
        let mut r = self.coeffs.clone();
        let dd = div.degree();
        let dl = div.leading();
        let mut q = Vec::new();
        while r.len() - 1 >= dd && !(r.len() == 1 && r[0].is_zero()) {
            let qc = &r[0] / dl;
            q.push(qc.clone());
            for (i, c) in div.coeffs.iter().enumerate() {
                let t = &qc * c;
                r[i] -= t;
            }
            r.remove(0);
            if r.is_empty() {
                break;
            }
        }
        if q.is_empty() {
            q.push(BigRational::zero());
        }
        debug_assert!(
            RatPoly::new(r.clone()).is_zero() || r.is_empty(),
            "inexact polynomial division"
        );
        RatPoly::new(q)
    }

    /// Monic gcd by the Euclidean algorithm.
    fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.make_monic();
        let mut y = if b.is_zero() { b.clone() } else { b.make_monic() };
        while !y.is_zero() {
            let r = x.rem(&y);
            x = y;
            y = if r.is_zero() { r } else { r.make_monic() };
        }
        x.make_monic()
    }
}

/// Yun's square-free decomposition: returns pairwise coprime square-free
/// factors with their multiplicities, product over (factor^mult) = input.
fn square_free_decomposition(p: &RatPoly) -> Vec<(RatPoly, usize)> {
    let p = p.make_monic();
    if p.degree() == 0 {
        return vec![(p, 1)];
    }
    let dp = p.derivative();
    let a0 = RatPoly::gcd(&p, &dp);
    if a0.degree() == 0 {
        return vec![(p, 1)];
    }
    let mut out = Vec::new();
    let mut b = p.div_exact(&a0);
    let mut c = dp.div_exact(&a0);
    let mut i = 1;
    loop {
        // d = c - b'
        let bp = b.derivative();
        let mut dc = c.coeffs.clone();
        // align lengths for subtraction
        let maxlen = dc.len().max(bp.coeffs.len());
        let mut dvec = vec![BigRational::zero(); maxlen];
        for (k, v) in dc.drain(..).enumerate() {
            dvec[maxlen - c.coeffs.len() + k] = v;
        }
        for (k, v) in bp.coeffs.iter().enumerate() {
            dvec[maxlen - bp.coeffs.len() + k] -= v;
        }
        let d = RatPoly::new(dvec);
        if d.is_zero() {
            if b.degree() > 0 {
                out.push((b, i));
            }
            break;
        }
        let a = RatPoly::gcd(&b, &d);
        if a.degree() > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a);
        c = d.div_exact(&a);
        i += 1;
        if b.degree() == 0 {
            break;
        }
    }
    out
}

// ---------------------------------------------------------------------
// Gauss–Legendre nodes

fn gl15_nodes() -> &'static (Vec<f64>, Vec<f64>) {
    use std::sync::OnceLock;
    static NODES: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    NODES.get_or_init(|| gauss_legendre_nodes(15))
}

/// Nodes and weights on [-1, 1] by Newton iteration on the Legendre
/// recurrence.
fn gauss_legendre_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            // Legendre P_n(x) and derivative by recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let mut p0 = 1.0;
        let mut p1 = x;
        for k in 2..=n {
            let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = pk;
        }
        let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn gauss_legendre_15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (nodes, weights) = gl15_nodes();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    nodes
        .iter()
        .zip(weights)
        .map(|(&x, &w)| w * f(mid + half * x))
        .sum::<f64>()
        * half
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn lehmer() -> MonicPolynomial {
        MonicPolynomial::from_integers(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]).unwrap()
    }

    /// Independent oracle: bisection on p(x) over (1, 2) for the unique
    /// real root of the Lehmer polynomial outside the unit circle.
    pub(crate) fn lehmer_root_by_bisection() -> f64 {
        let p = lehmer();
        let eval = |x: f64| p.eval_complex(Complex64::new(x, 0.0)).re;
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        assert!(eval(lo) < 0.0 && eval(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if eval(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn roots_linear() {
        let p = MonicPolynomial::from_integers(&[1, -2]).unwrap();
        let r = p.roots().unwrap();
        assert_eq!(r.entries.len(), 1);
        assert!((r.entries[0].0 - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        assert_eq!(r.entries[0].1, 1);
    }

    #[test]
    fn roots_high_multiplicity_via_square_free() {
        // expanded (z-1)^34
        let mut c = vec![BigRational::one()];
        let minus_one = RatPoly::new(vec![BigRational::one(), -BigRational::one()]);
        let mut p = RatPoly::new(c.clone());
        for _ in 0..34 {
            let mut next = vec![BigRational::zero(); p.coeffs.len() + 1];
            for (i, ci) in p.coeffs.iter().enumerate() {
                next[i] += ci * minus_one.coeffs[0].clone();
                next[i + 1] += ci * minus_one.coeffs[1].clone();
            }
            p = RatPoly::new(next);
        }
        c = p.coeffs;
        let poly = MonicPolynomial::from_exact(c).unwrap();
        let r = poly.roots().unwrap();
        assert_eq!(r.entries.len(), 1);
        assert_eq!(r.entries[0].1, 34);
        assert!((r.entries[0].0 - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        // exact zero invariants
        assert_eq!(jensen_square_sum(&poly).unwrap(), 0.0);
    }

    #[test]
    fn lehmer_largest_root_matches_bisection_oracle() {
        let oracle = lehmer_root_by_bisection();
        assert!((oracle - 1.17628082).abs() < 1e-7);
        let r = lehmer().roots().unwrap();
        let largest = r
            .entries
            .iter()
            .map(|(z, _)| z.norm())
            .fold(0.0f64, f64::max);
        assert!((largest - oracle).abs() < 1e-10);
    }

    #[test]
    fn mahler_log_examples() {
        let p = MonicPolynomial::from_integers(&[1, -2]).unwrap();
        assert!((mahler_log(&p).unwrap() - 2.0f64.ln()).abs() < 1e-14);
        let q = MonicPolynomial::from_integers(&[1, 0, 0, 0, -1]).unwrap();
        assert_eq!(mahler_log(&q).unwrap(), 0.0);
        let oracle = lehmer_root_by_bisection().ln();
        assert!((mahler_log(&lehmer()).unwrap() - oracle).abs() < 1e-10);
        assert!((oracle - 0.1623576).abs() < 1e-7);
    }

    #[test]
    fn jensen_square_sum_examples() {
        let p = MonicPolynomial::from_integers(&[1, -2]).unwrap();
        assert!((jensen_square_sum(&p).unwrap() - 2.0f64.ln().powi(2)).abs() < 1e-14);
        let pq = MonicPolynomial::from_integers(&[1, -5, 6]).unwrap(); // (z-2)(z-3)
        let expect = 2.0f64.ln().powi(2) + 3.0f64.ln().powi(2);
        assert!((jensen_square_sum(&pq).unwrap() - expect).abs() < 1e-12);
        assert!((expect - 1.6874341).abs() < 1e-7);
        let oracle = lehmer_root_by_bisection().ln().powi(2);
        assert!((jensen_square_sum(&lehmer()).unwrap() - oracle).abs() < 1e-10);
        assert!((oracle - 0.0263600).abs() < 1e-7);
    }

    #[test]
    fn log_house_examples() {
        let p = MonicPolynomial::from_integers(&[1, -2]).unwrap();
        assert!((log_house(&p).unwrap() - 2.0f64.ln()).abs() < 1e-14);
        let q = MonicPolynomial::from_integers(&[1, 0, 0, 0, -1]).unwrap();
        assert_eq!(log_house(&q).unwrap(), 0.0);
        let pq = MonicPolynomial::from_integers(&[1, -5, 6]).unwrap();
        assert!((log_house(&pq).unwrap() - 3.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn quadrature_examples() {
        let p = MonicPolynomial::from_integers(&[1, -2]).unwrap();
        let m = mahler_log_quadrature(&p, 1e-9).unwrap();
        assert!((m - 2.0f64.ln()).abs() < 1e-8);
        let pq = MonicPolynomial::from_integers(&[1, -5, 6]).unwrap();
        let m = mahler_log_quadrature(&pq, 1e-9).unwrap();
        assert!((m - 6.0f64.ln()).abs() < 1e-8);
        // z^2 + z/4 + 1/16: both roots at radius 1/4
        let inner = MonicPolynomial::from_exact(vec![
            BigRational::one(),
            BigRational::new(BigInt::from(1), BigInt::from(4)),
            BigRational::new(BigInt::from(1), BigInt::from(16)),
        ])
        .unwrap();
        let m = mahler_log_quadrature(&inner, 1e-9).unwrap();
        assert!(m.abs() < 1e-8);
    }

    #[test]
    fn quadrature_rejects_circle_roots() {
        let q = MonicPolynomial::from_integers(&[1, 0, 0, 0, -1]).unwrap();
        assert!(matches!(
            mahler_log_quadrature(&q, 1e-9),
            Err(PolyError::RootNearCircle { .. })
        ));
    }

    #[test]
    fn reciprocity() {
        let p = MonicPolynomial::from_integers(&[1, -3, 1]).unwrap();
        assert_eq!(p.reciprocity_sign().unwrap(), Some(1));
        let q = MonicPolynomial::from_integers(&[1, -2]).unwrap();
        assert_eq!(q.reciprocity_sign().unwrap(), None);
        assert_eq!(lehmer().reciprocity_sign().unwrap(), Some(1));
        // z^4 - 1 is anti-palindromic: z^4 p(1/z) = -(z^4 - 1)
        let z4 = MonicPolynomial::from_integers(&[1, 0, 0, 0, -1]).unwrap();
        assert_eq!(z4.reciprocity_sign().unwrap(), Some(-1));
        assert!(z4.is_reciprocal().unwrap());
        let f = MonicPolynomial::from_floats(vec![1.0, -2.0]).unwrap();
        assert!(matches!(
            f.is_reciprocal(),
            Err(PolyError::ExactnessRequired)
        ));
    }

    #[test]
    fn cyclotomic_stripping() {
        // (z-1)(z+1)(z-2) = z^3 - 2z^2 - z + 2
        let p = MonicPolynomial::from_integers(&[1, -2, -1, 2]).unwrap();
        let (stripped, removed) = p.strip_cyclotomic().unwrap();
        assert_eq!(stripped.degree(), 1);
        assert!(!removed.is_empty());
        assert!((mahler_log(&stripped).unwrap() - 2.0f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn degree_zero_roots_empty() {
        let p = MonicPolynomial::from_integers(&[1]).unwrap();
        assert_eq!(p.roots().unwrap().entries.len(), 0);
        assert!(matches!(mahler_log(&p), Err(PolyError::DegreeZero)));
    }

    #[test]
    fn multiplicativity() {
        let p = MonicPolynomial::from_integers(&[1, -2]).unwrap();
        let q = MonicPolynomial::from_integers(&[1, 1, -6]).unwrap();
        let pq = p.mul(&q);
        assert!(pq.is_exact());
        let lhs = mahler_log(&pq).unwrap();
        let rhs = mahler_log(&p).unwrap() + mahler_log(&q).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
        let lhs = jensen_square_sum(&pq).unwrap();
        let rhs = jensen_square_sum(&p).unwrap() + jensen_square_sum(&q).unwrap();
        assert!((lhs - rhs).abs() < 1e-10);
    }
}
