//! The generalized upper half plane: symmetric complex p x p matrices
//! Z = X + iY with Y positive definite, carrying the invariant metric
//! tr(Y^{-1} dZ Y^{-1} conj(dZ)) and the Sp(2p, R) action
//! Z ↦ (AZ + B)(CZ + D)^{-1}.
//!
//! Distance uses the square-root-free series identity
//! d(Z, W)² = tr( 4R · (Σ_m R^m / (2m+1))² ) in the generalized
//! cross-ratio R = (Z-W)(Z-W̄)^{-1}(Z̄-W̄)(Z̄-W)^{-1}, whose spectrum lies
//! in [0, 1) for a valid pair; convergence is inherited from the
//! spectral radius and no matrix square root is ever formed.
//!
//! Translation lengths come in two flavors: the closed form
//! 2·√w(char poly) and a derivative-free simplex minimizer of the
//! displacement function, reported as an upper estimate with a
//! convergence flag, never as ground truth.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::polyinv::{self, PolyError};
use crate::symplectic::SymplecticMatrix;

/// Construction-time symmetry tolerance.
pub const CONSTRUCTION_SYM_TOL: f64 = 1e-12;
/// Post-action symmetry tolerance (geometry identities tier).
pub const ACTION_SYM_TOL: f64 = 1e-9;
/// Condition cap on CZ + D before the action is declared corrupted.
pub const DENOMINATOR_CONDITION_CAP: f64 = 1e12;
/// Series term cap for the distance expansion.
pub const SERIES_TERM_CAP: usize = 100_000;

#[derive(Debug, Error)]
pub enum SiegelError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("matrix not symmetric: defect {defect:e} exceeds {tol:e}")]
    NotSymmetric { defect: f64, tol: f64 },
    #[error("imaginary part not positive definite: least eigenvalue {least:e}")]
    NotPositiveDefinite { least: f64 },
    #[error(
        "CZ + D has condition number {cond:e} > {DENOMINATOR_CONDITION_CAP:e}; \
         this cannot occur for an exact symplectic matrix and a valid point, \
         so the input is corrupted"
    )]
    NearSingularDenominator { cond: f64 },
    #[error("cross-ratio factor is singular; the points are invalid")]
    SingularCrossRatioFactor,
    #[error("cross-ratio spectral radius {radius} reaches 1: points at infinite distance or invalid")]
    PointsAtInfiniteDistance { radius: f64 },
    #[error("distance series exceeded {SERIES_TERM_CAP} terms: points too far apart for series tolerance")]
    SeriesCapExceeded,
    #[error("trace acquired imaginary residue {imag:e} beyond the 1e-10 assertion")]
    TraceResidual { imag: f64 },
    #[error("Hodge gram matrix is not positive definite")]
    GramNotPositive,
    #[error("Hodge frame and its conjugate do not span the full space")]
    FrameRankDeficient,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Point of the generalized upper half plane, stored as real and
/// imaginary parts with their construction defects.
#[derive(Debug, Clone)]
pub struct SiegelPoint {
    p: usize,
    x: DMatrix<f64>,
    y: DMatrix<f64>,
    symmetry_defect: f64,
    least_y_eigenvalue: f64,
}

impl SiegelPoint {
    pub fn new(x: DMatrix<f64>, y: DMatrix<f64>) -> Result<Self, SiegelError> {
        let p = x.nrows();
        if x.ncols() != p || y.nrows() != p || y.ncols() != p || p == 0 {
            return Err(SiegelError::DimensionMismatch(
                "X and Y must be square of equal size",
            ));
        }
        let defect = sym_defect(&x).max(sym_defect(&y));
        if defect > CONSTRUCTION_SYM_TOL {
            return Err(SiegelError::NotSymmetric {
                defect,
                tol: CONSTRUCTION_SYM_TOL,
            });
        }
        let least = SymmetricEigen::new(y.clone())
            .eigenvalues
            .iter()
            .fold(f64::INFINITY, |a, &b| a.min(b));
        if !(least > 0.0) {
            return Err(SiegelError::NotPositiveDefinite { least });
        }
        Ok(SiegelPoint {
            p,
            x,
            y,
            symmetry_defect: defect,
            least_y_eigenvalue: least,
        })
    }

    /// The point it·I on the imaginary axis (t > 0).
    pub fn scaled_imaginary(p: usize, t: f64) -> Self {
        assert!(t > 0.0 && p > 0);
        SiegelPoint {
            p,
            x: DMatrix::zeros(p, p),
            y: DMatrix::identity(p, p) * t,
            symmetry_defect: 0.0,
            least_y_eigenvalue: t,
        }
    }

    /// The distinguished point i·I.
    pub fn base_point(p: usize) -> Self {
        Self::scaled_imaginary(p, 1.0)
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn y(&self) -> &DMatrix<f64> {
        &self.y
    }

    pub fn symmetry_defect(&self) -> f64 {
        self.symmetry_defect
    }

    pub fn least_y_eigenvalue(&self) -> f64 {
        self.least_y_eigenvalue
    }

    pub fn z(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.p, self.p, |i, j| {
            Complex64::new(self.x[(i, j)], self.y[(i, j)])
        })
    }

    pub fn max_abs_difference(&self, other: &SiegelPoint) -> f64 {
        (&self.x - &other.x).amax().max((&self.y - &other.y).amax())
    }
}

/// Tangent vector dZ at a base point: a symmetric complex matrix.
#[derive(Debug, Clone)]
pub struct SiegelTangent {
    pub base: SiegelPoint,
    dz: DMatrix<Complex64>,
}

impl SiegelTangent {
    pub fn new(base: SiegelPoint, dz: DMatrix<Complex64>) -> Result<Self, SiegelError> {
        if dz.nrows() != base.p || dz.ncols() != base.p {
            return Err(SiegelError::DimensionMismatch("tangent size"));
        }
        let defect = (0..base.p)
            .flat_map(|i| (0..base.p).map(move |j| (i, j)))
            .map(|(i, j)| (dz[(i, j)] - dz[(j, i)]).norm())
            .fold(0.0f64, f64::max);
        if defect > CONSTRUCTION_SYM_TOL {
            return Err(SiegelError::NotSymmetric {
                defect,
                tol: CONSTRUCTION_SYM_TOL,
            });
        }
        Ok(SiegelTangent { base, dz })
    }

    pub fn dz(&self) -> &DMatrix<Complex64> {
        &self.dz
    }
}

/// Basis of the positive-definite subspace V^{1,0} attached to a point,
/// with the gram matrix of the Hermitian form (i/2)ω(z, w̄).
#[derive(Debug, Clone)]
pub struct HodgeFrame {
    pub basis: DMatrix<Complex64>,
    pub gram: DMatrix<Complex64>,
}

fn sym_defect(m: &DMatrix<f64>) -> f64 {
    (m - m.transpose()).amax()
}

fn conj_matrix(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    m.map(|c| c.conj())
}

fn complex_amax(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Generalized fractional linear action Z ↦ (AZ + B)(CZ + D)^{-1}.
pub fn act(m: &SymplecticMatrix, z: &SiegelPoint) -> Result<SiegelPoint, SiegelError> {
    if m.p() != z.p() {
        return Err(SiegelError::DimensionMismatch(
            "matrix and point rank disagree",
        ));
    }
    let (a, b, c, d) = m.blocks_complex();
    let zc = z.z();
    let den = &c * &zc + &d;
    let sv = den.clone().svd(false, false).singular_values;
    let (smax, smin) = sv
        .iter()
        .fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    if !(smin > 0.0) || smax / smin > DENOMINATOR_CONDITION_CAP {
        return Err(SiegelError::NearSingularDenominator {
            cond: if smin > 0.0 { smax / smin } else { f64::INFINITY },
        });
    }
    let den_inv = den
        .try_inverse()
        .ok_or(SiegelError::NearSingularDenominator { cond: f64::INFINITY })?;
    let w = (&a * &zc + &b) * den_inv;
    let defect = (0..z.p)
        .flat_map(|i| (0..z.p).map(move |j| (i, j)))
        .map(|(i, j)| (w[(i, j)] - w[(j, i)]).norm())
        .fold(0.0f64, f64::max);
    if defect > ACTION_SYM_TOL {
        return Err(SiegelError::NotSymmetric {
            defect,
            tol: ACTION_SYM_TOL,
        });
    }
    let x = DMatrix::from_fn(z.p, z.p, |i, j| 0.5 * (w[(i, j)].re + w[(j, i)].re));
    let y = DMatrix::from_fn(z.p, z.p, |i, j| 0.5 * (w[(i, j)].im + w[(j, i)].im));
    SiegelPoint::new(x, y)
}

/// Generalized cross-ratio R(Z, W); its spectrum lies in [0, 1) for a
/// valid pair at finite distance.
pub fn cross_ratio(z: &SiegelPoint, w: &SiegelPoint) -> Result<DMatrix<Complex64>, SiegelError> {
    if z.p != w.p {
        return Err(SiegelError::DimensionMismatch("points of different rank"));
    }
    let zc = z.z();
    let wc = w.z();
    let zbar = conj_matrix(&zc);
    let wbar = conj_matrix(&wc);
    let f1 = &zc - &wc;
    let f2 = (&zc - &wbar)
        .try_inverse()
        .ok_or(SiegelError::SingularCrossRatioFactor)?;
    let f3 = &zbar - &wbar;
    let f4 = (&zbar - &wc)
        .try_inverse()
        .ok_or(SiegelError::SingularCrossRatioFactor)?;
    let r = f1 * f2 * f3 * f4;
    let radius = spectral_radius_complex(&r);
    if radius >= 1.0 - 1e-14 {
        return Err(SiegelError::PointsAtInfiniteDistance { radius });
    }
    Ok(r)
}

/// Spectral radius of a complex matrix through the real embedding
/// [[Re, -Im], [Im, Re]], whose eigenvalue multiset is the union of the
/// matrix's spectrum and its conjugate.
fn spectral_radius_complex(m: &DMatrix<Complex64>) -> f64 {
    let p = m.nrows();
    let emb = DMatrix::<f64>::from_fn(2 * p, 2 * p, |i, j| {
        let (bi, ii) = (i / p, i % p);
        let (bj, jj) = (j / p, j % p);
        match (bi, bj) {
            (0, 0) | (1, 1) => m[(ii, jj)].re,
            (0, 1) => -m[(ii, jj)].im,
            _ => m[(ii, jj)].im,
        }
    });
    match emb.try_schur(f64::EPSILON, 100_000) {
        Some(s) => s
            .complex_eigenvalues()
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max),
        // Schur failure on the embedding: fall back on a norm bound
        None => complex_amax(m) * p as f64,
    }
}

/// Siegel distance through the series
/// d² = tr(4R · S²), S = Σ_{m≥0} R^m/(2m+1), truncated when the next
/// term falls below 1e-16 of the running sum.
pub fn dist(z: &SiegelPoint, w: &SiegelPoint) -> Result<f64, SiegelError> {
    let r = cross_ratio(z, w)?;
    let p = z.p;
    let mut s = DMatrix::<Complex64>::identity(p, p);
    let mut term = DMatrix::<Complex64>::identity(p, p);
    let mut m = 0usize;
    loop {
        m += 1;
        if m > SERIES_TERM_CAP {
            return Err(SiegelError::SeriesCapExceeded);
        }
        term = &term * &r;
        let contrib = term.map(|c| c / (2.0 * m as f64 + 1.0));
        s += &contrib;
        if complex_amax(&contrib) <= 1e-16 * complex_amax(&s) {
            break;
        }
    }
    let four_r = r.map(|c| 4.0 * c);
    let total = four_r * &s * &s;
    let mut trace = Complex64::new(0.0, 0.0);
    for i in 0..p {
        trace += total[(i, i)];
    }
    if trace.im.abs() > 1e-10 {
        return Err(SiegelError::TraceResidual { imag: trace.im });
    }
    Ok(trace.re.max(0.0).sqrt())
}

/// Norm √tr(Y^{-1} dZ Y^{-1} conj(dZ)) of a tangent vector.
pub fn tangent_norm(v: &SiegelTangent) -> Result<f64, SiegelError> {
    let y_inv = v
        .base
        .y
        .clone()
        .try_inverse()
        .ok_or(SiegelError::NotPositiveDefinite { least: 0.0 })?;
    let y_inv_c = y_inv.map(|r| Complex64::new(r, 0.0));
    let g = &y_inv_c * v.dz() * &y_inv_c * conj_matrix(v.dz());
    let mut trace = Complex64::new(0.0, 0.0);
    for i in 0..v.base.p {
        trace += g[(i, i)];
    }
    if trace.im.abs() > 1e-10 {
        return Err(SiegelError::TraceResidual { imag: trace.im });
    }
    Ok(trace.re.max(0.0).sqrt())
}

/// Displacement of a point under the action: dist(Z, M·Z).
pub fn displacement(m: &SymplecticMatrix, z: &SiegelPoint) -> Result<f64, SiegelError> {
    let mz = act(m, z)?;
    dist(z, &mz)
}

/// Closed-form translation length 2·√w(P_M) from the Jensen square sum
/// of the characteristic polynomial.
pub fn translation_length_closed(m: &SymplecticMatrix) -> Result<f64, SiegelError> {
    let w = polyinv::jensen_square_sum(&m.char_poly())?;
    Ok(2.0 * w.sqrt())
}

/// Outcome of the numerical translation-length search.
#[derive(Debug, Clone)]
pub struct TranslationLengthEstimate {
    /// Best displacement found: an upper bound for the translation
    /// length by construction.
    pub estimate: f64,
    pub minimizer: SiegelPoint,
    /// False when the evaluation budget ran out before the simplex
    /// diameter reached 1e-8 on the best restart.
    pub converged: bool,
    pub evaluations: usize,
}

/// Derivative-free minimization of Z ↦ dist(Z, M·Z) over the chart
/// Z = X + i·exp(S) with X, S real symmetric, from `starts` seeded
/// restarts around i·I.
pub fn translation_length_numeric(
    m: &SymplecticMatrix,
    starts: usize,
    seed: u64,
    iteration_budget: usize,
) -> Result<TranslationLengthEstimate, SiegelError> {
    assert!(starts >= 1 && iteration_budget >= 1);
    let p = m.p();
    let half = p * (p + 1) / 2;
    let dim = 2 * half;

    let objective = |params: &[f64]| -> f64 {
        let z = chart_point(p, params);
        match displacement(m, &z) {
            Ok(d) => d,
            Err(_) => f64::INFINITY,
        }
    };

    let mut best: Option<(f64, Vec<f64>, bool)> = None;
    let mut evaluations = 0usize;
    for restart in 0..starts {
        let mut x0 = vec![0.0f64; dim];
        if restart > 0 {
            let mut rng =
                ChaCha8Rng::seed_from_u64(seed.wrapping_add(restart as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            for v in x0.iter_mut() {
                *v = rng.random_range(-0.75..0.75);
            }
        }
        let run = nelder_mead(&objective, &x0, 0.25, iteration_budget, 1e-8);
        evaluations += run.evaluations;
        let better = match &best {
            None => true,
            Some((bf, _, _)) => run.best_value < *bf,
        };
        if better {
            best = Some((run.best_value, run.best_point, run.converged));
        }
    }
    let (estimate, params, converged) = best.expect("at least one restart");
    Ok(TranslationLengthEstimate {
        estimate,
        minimizer: chart_point(p, &params),
        converged,
        evaluations,
    })
}

/// Build X + i·exp(S) from stacked upper-triangular parameters.
fn chart_point(p: usize, params: &[f64]) -> SiegelPoint {
    let half = p * (p + 1) / 2;
    let unpack = |off: usize| {
        let mut m = DMatrix::<f64>::zeros(p, p);
        let mut k = 0;
        for i in 0..p {
            for j in i..p {
                m[(i, j)] = params[off + k];
                m[(j, i)] = params[off + k];
                k += 1;
            }
        }
        m
    };
    let x = unpack(0);
    let s = unpack(half);
    let y = exp_symmetric(&s);
    SiegelPoint::new(x, y).expect("chart always produces a valid point")
}

/// Symmetric matrix exponential through the spectral decomposition.
fn exp_symmetric(s: &DMatrix<f64>) -> DMatrix<f64> {
    let eig = SymmetricEigen::new(s.clone());
    let q = &eig.eigenvectors;
    let mut out = DMatrix::<f64>::zeros(s.nrows(), s.ncols());
    for k in 0..s.nrows() {
        let e = eig.eigenvalues[k].exp();
        let col = q.column(k);
        for i in 0..s.nrows() {
            for j in 0..s.ncols() {
                out[(i, j)] += e * col[i] * col[j];
            }
        }
    }
    // exact symmetry for downstream validation
    let sym = DMatrix::from_fn(s.nrows(), s.ncols(), |i, j| {
        0.5 * (out[(i, j)] + out[(j, i)])
    });
    sym
}

struct NelderMeadRun {
    best_point: Vec<f64>,
    best_value: f64,
    converged: bool,
    evaluations: usize,
}

/// Textbook Nelder–Mead with reflection 1, expansion 2, contraction 1/2,
/// shrink 1/2; stops when the simplex diameter drops below `diam_tol`
/// or the evaluation budget runs out.
fn nelder_mead(
    f: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    max_evals: usize,
    diam_tol: f64,
) -> NelderMeadRun {
    let n = x0.len();
    let mut evals = 0usize;
    let eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    let v0 = eval(x0, &mut evals);
    simplex.push((x0.to_vec(), v0));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += step;
        let v = eval(&x, &mut evals);
        simplex.push((x, v));
    }
    let mut converged = false;
    while evals < max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let diam = simplex
            .iter()
            .skip(1)
            .map(|(x, _)| {
                x.iter()
                    .zip(&simplex[0].0)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0f64, f64::max)
            })
            .fold(0.0f64, f64::max);
        if diam < diam_tol {
            converged = true;
            break;
        }
        let worst = simplex[n].1;
        let second_worst = simplex[n - 1].1;
        let best = simplex[0].1;
        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex.iter().take(n).map(|(x, _)| x[k]).sum::<f64>() / n as f64)
            .collect();
        let blend = |t: f64| -> Vec<f64> {
            (0..n)
                .map(|k| centroid[k] + t * (centroid[k] - simplex[n].0[k]))
                .collect()
        };
        let xr = blend(1.0);
        let vr = eval(&xr, &mut evals);
        if vr < best {
            let xe = blend(2.0);
            let ve = eval(&xe, &mut evals);
            if ve < vr {
                simplex[n] = (xe, ve);
            } else {
                simplex[n] = (xr, vr);
            }
        } else if vr < second_worst {
            simplex[n] = (xr, vr);
        } else {
            let (xc, vc) = if vr < worst {
                let xc = blend(0.5);
                let vc = eval(&xc, &mut evals);
                (xc, vc)
            } else {
                let xc: Vec<f64> = (0..n)
                    .map(|k| centroid[k] - 0.5 * (centroid[k] - simplex[n].0[k]))
                    .collect();
                let vc = eval(&xc, &mut evals);
                (xc, vc)
            };
            if vc < worst.min(vr) {
                simplex[n] = (xc, vc);
            } else {
                // shrink toward the best vertex
                let best_x = simplex[0].0.clone();
                for item in simplex.iter_mut().skip(1) {
                    for k in 0..n {
                        item.0[k] = best_x[k] + 0.5 * (item.0[k] - best_x[k]);
                    }
                    item.1 = eval(&item.0, &mut evals);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    NelderMeadRun {
        best_point: simplex[0].0.clone(),
        best_value: simplex[0].1,
        converged,
        evaluations: evals,
    }
}

/// The positive-definite subspace V^{1,0} attached to Z = X + iY:
/// columns of [[Y^{1/2}, X Y^{-1/2}], [0, Y^{-1/2}]] · [I; iI].
pub fn hodge_subspace(z: &SiegelPoint) -> Result<HodgeFrame, SiegelError> {
    let p = z.p;
    let eig = SymmetricEigen::new(z.y.clone());
    let mut y_sqrt = DMatrix::<f64>::zeros(p, p);
    let mut y_inv_sqrt = DMatrix::<f64>::zeros(p, p);
    for k in 0..p {
        let lam = eig.eigenvalues[k];
        if !(lam > 0.0) {
            return Err(SiegelError::NotPositiveDefinite { least: lam });
        }
        let col = eig.eigenvectors.column(k);
        let (s, si) = (lam.sqrt(), 1.0 / lam.sqrt());
        for i in 0..p {
            for j in 0..p {
                y_sqrt[(i, j)] += s * col[i] * col[j];
                y_inv_sqrt[(i, j)] += si * col[i] * col[j];
            }
        }
    }
    let x_y_inv_sqrt = &z.x * &y_inv_sqrt;
    // top block Y^{1/2} + i X Y^{-1/2}, bottom block i Y^{-1/2}
    let basis = DMatrix::<Complex64>::from_fn(2 * p, p, |i, j| {
        if i < p {
            Complex64::new(y_sqrt[(i, j)], x_y_inv_sqrt[(i, j)])
        } else {
            Complex64::new(0.0, y_inv_sqrt[(i - p, j)])
        }
    });
    let gram = hodge_gram(&basis);
    // positive definiteness of the gram
    if nalgebra::Cholesky::new(gram.clone()).is_none() {
        return Err(SiegelError::GramNotPositive);
    }
    // the frame together with its conjugate must span everything
    let mut full = DMatrix::<Complex64>::zeros(2 * p, 2 * p);
    for j in 0..p {
        for i in 0..2 * p {
            full[(i, j)] = basis[(i, j)];
            full[(i, p + j)] = basis[(i, j)].conj();
        }
    }
    let sv = full.svd(false, false).singular_values;
    let (smax, smin) = sv
        .iter()
        .fold((0.0f64, f64::INFINITY), |(hi, lo), &s| (hi.max(s), lo.min(s)));
    if !(smin > 1e-10 * smax) {
        return Err(SiegelError::FrameRankDeficient);
    }
    Ok(HodgeFrame { basis, gram })
}

/// Gram matrix of the form ⟨z, w⟩ = (i/2) ω(z, w̄) on frame columns,
/// ω the standard symplectic form in the x..y basis.
pub fn hodge_gram(frame: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let p2 = frame.nrows();
    let p = p2 / 2;
    let cols = frame.ncols();
    DMatrix::from_fn(cols, cols, |a, b| {
        let mut omega = Complex64::new(0.0, 0.0);
        for l in 0..p {
            let u_top = frame[(l, a)];
            let u_bot = frame[(p + l, a)];
            let v_top = frame[(l, b)].conj();
            let v_bot = frame[(p + l, b)].conj();
            omega += u_top * v_bot - u_bot * v_top;
        }
        Complex64::new(0.0, 0.5) * omega
    })
}

/// Orthogonal projector onto the column span (for equivariance checks).
pub fn frame_projector(frame: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let qr = frame.clone().qr();
    let q = qr.q();
    &q * q.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{
        block_elliptic, block_hyperbolic, block_loxodromic, direct_sum, random_symplectic,
        unipotent_power,
    };
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn point_1d(x: f64, y: f64) -> SiegelPoint {
        SiegelPoint::new(
            DMatrix::from_row_slice(1, 1, &[x]),
            DMatrix::from_row_slice(1, 1, &[y]),
        )
        .unwrap()
    }

    #[test]
    fn construction_guards() {
        assert!(SiegelPoint::new(
            DMatrix::from_row_slice(1, 1, &[0.0]),
            DMatrix::from_row_slice(1, 1, &[-1.0]),
        )
        .is_err());
        let asym = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        assert!(SiegelPoint::new(asym, DMatrix::identity(2, 2)).is_err());
    }

    #[test]
    fn act_examples() {
        // identity fixes everything
        let z = point_1d(0.3, 2.0);
        let id = SymplecticMatrix::identity(1);
        let w = act(&id, &z).unwrap();
        assert!(z.max_abs_difference(&w) < 1e-15);

        // diag(2, 1/2) sends i to 4i
        let h = block_hyperbolic(2.0).unwrap();
        let w = act(&h, &SiegelPoint::base_point(1)).unwrap();
        assert!((w.x()[(0, 0)]).abs() < 1e-15);
        assert!((w.y()[(0, 0)] - 4.0).abs() < 1e-15);

        // loxodromic sends iI to i ρ² I (rotations cancel)
        let l = block_loxodromic(2.0, std::f64::consts::FRAC_PI_3).unwrap();
        let w = act(&l, &SiegelPoint::base_point(2)).unwrap();
        assert!(w.x().amax() < 1e-14);
        assert!((w.y() - DMatrix::<f64>::identity(2, 2) * 4.0).amax() < 1e-14);
    }

    #[test]
    fn cross_ratio_examples() {
        let z = point_1d(0.0, 1.0);
        let r = cross_ratio(&z, &z).unwrap();
        assert!(complex_amax(&r) < 1e-15);

        // (iI, itI) scalar: ((1-t)/(1+t))²
        for t in [2.0, 3.5, 10.0] {
            let w = point_1d(0.0, t);
            let r = cross_ratio(&z, &w).unwrap();
            let expect = ((1.0 - t) / (1.0 + t)).powi(2);
            assert!((r[(0, 0)].re - expect).abs() < 1e-14);
            assert!(r[(0, 0)].im.abs() < 1e-14);
        }
    }

    #[test]
    fn cross_ratio_invariance_under_action() {
        for seed in 0..6u64 {
            let m = random_symplectic(2, seed, 3);
            let z = SiegelPoint::new(
                DMatrix::from_row_slice(2, 2, &[0.1, 0.2, 0.2, -0.3]),
                DMatrix::from_row_slice(2, 2, &[1.5, 0.2, 0.2, 1.1]),
            )
            .unwrap();
            let w = SiegelPoint::new(
                DMatrix::from_row_slice(2, 2, &[-0.2, 0.05, 0.05, 0.4]),
                DMatrix::from_row_slice(2, 2, &[0.9, -0.1, -0.1, 1.3]),
            )
            .unwrap();
            let (Ok(mz), Ok(mw)) = (act(&m, &z), act(&m, &w)) else {
                continue;
            };
            let r1 = cross_ratio(&z, &w).unwrap();
            let r2 = cross_ratio(&mz, &mw).unwrap();
            // same eigenvalue multiset: compare characteristic traces
            let tr = |r: &DMatrix<Complex64>, k: usize| {
                let mut acc = DMatrix::<Complex64>::identity(2, 2);
                for _ in 0..k {
                    acc = acc * r;
                }
                acc[(0, 0)] + acc[(1, 1)]
            };
            for k in 1..=2 {
                assert!((tr(&r1, k) - tr(&r2, k)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn dist_examples() {
        let z = point_1d(0.0, 1.0);
        assert!(dist(&z, &z).unwrap() < 1e-12);

        // (i, 4i) = 2 log 2
        let w = point_1d(0.0, 4.0);
        assert!((dist(&z, &w).unwrap() - 2.0 * 2.0f64.ln()).abs() < 1e-12);

        // (iI_p, itI_p) = sqrt(p) |log t|
        for p in 1..=3usize {
            for t in [0.5, 2.0, 7.0] {
                let a = SiegelPoint::base_point(p);
                let b = SiegelPoint::scaled_imaginary(p, t);
                let expect = (p as f64).sqrt() * t.ln().abs();
                assert!((dist(&a, &b).unwrap() - expect).abs() < 1e-11);
            }
        }
    }

    #[test]
    fn dist_is_symmetric_and_hyperbolic_for_p1() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let z = point_1d(rng.random_range(-2.0..2.0), rng.random_range(0.2..4.0));
            let w = point_1d(rng.random_range(-2.0..2.0), rng.random_range(0.2..4.0));
            let d1 = dist(&z, &w).unwrap();
            let d2 = dist(&w, &z).unwrap();
            assert!((d1 - d2).abs() < 1e-12);
            // curvature -1 upper half plane distance
            let dx = z.x()[(0, 0)] - w.x()[(0, 0)];
            let dy = z.y()[(0, 0)] - w.y()[(0, 0)];
            let cosh = 1.0 + (dx * dx + dy * dy) / (2.0 * z.y()[(0, 0)] * w.y()[(0, 0)]);
            let expect = cosh.acosh();
            assert!((d1 - expect).abs() < 1e-10, "{d1} vs {expect}");
        }
    }

    #[test]
    fn tangent_norm_examples() {
        let z = point_1d(0.0, 1.0);
        let v = SiegelTangent::new(z.clone(), DMatrix::from_row_slice(1, 1, &[Complex64::new(0.0, 0.0)]))
            .unwrap();
        assert_eq!(tangent_norm(&v).unwrap(), 0.0);
        let v = SiegelTangent::new(z, DMatrix::from_row_slice(1, 1, &[Complex64::new(1.0, 0.0)]))
            .unwrap();
        assert!((tangent_norm(&v).unwrap() - 1.0).abs() < 1e-14);
        // at height y, a horizontal tangent of length dx has norm dx/y
        let z = point_1d(0.0, 3.0);
        let v = SiegelTangent::new(z, DMatrix::from_row_slice(1, 1, &[Complex64::new(0.7, 0.0)]))
            .unwrap();
        assert!((tangent_norm(&v).unwrap() - 0.7 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_examples() {
        let h = block_hyperbolic(2.0).unwrap();
        assert!((translation_length_closed(&h).unwrap() - 2.0 * 2.0f64.ln()).abs() < 1e-12);
        let e = block_elliptic(1.234).unwrap();
        assert!(translation_length_closed(&e).unwrap() < 1e-7);
        let l = block_loxodromic(2.0, std::f64::consts::FRAC_PI_3).unwrap();
        let expect = 2.0f64.sqrt() * 2.0 * 2.0f64.ln();
        assert!((translation_length_closed(&l).unwrap() - expect).abs() < 1e-12);
        // displacement at iI equals the closed value for the normal form
        let d = displacement(&l, &SiegelPoint::base_point(2)).unwrap();
        assert!((d - expect).abs() < 1e-10);
    }

    #[test]
    fn numeric_estimate_examples() {
        let id = SymplecticMatrix::identity(1);
        let est = translation_length_numeric(&id, 1, 0, 200).unwrap();
        assert!(est.estimate < 1e-10);

        let h = block_hyperbolic(2.0).unwrap();
        let est = translation_length_numeric(&h, 2, 1, 400).unwrap();
        let closed = 2.0 * 2.0f64.ln();
        assert!(est.estimate >= closed - 1e-6);
        assert!((est.estimate - closed).abs() < 1e-4);
    }

    #[test]
    fn semicontinuity_probe() {
        // hyperbolic times shrinking unipotent powers: displacement at iI
        // is nonincreasing toward the semisimple displacement
        let h = block_hyperbolic(2.0).unwrap();
        let shear = SymplecticMatrix::validate(
            DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 0.0, 1.0]),
            0.0,
        )
        .unwrap();
        let base = SiegelPoint::base_point(1);
        let limit = displacement(&h, &base).unwrap();
        let mut prev = f64::INFINITY;
        for m in 1..=64usize {
            let u = unipotent_power(&shear, 1.0 / m as f64).unwrap();
            let d = displacement(&h.mul(&u), &base).unwrap();
            assert!(d <= prev + 1e-9, "not nonincreasing at m={m}");
            prev = d;
        }
        assert!((prev - limit).abs() < 1e-2);
        assert!(prev >= limit - 1e-9);
    }

    #[test]
    fn pythagorean_translation_lengths() {
        let a = block_hyperbolic(2.0).unwrap();
        let b = block_hyperbolic(3.0).unwrap();
        let s = direct_sum(&a, &b);
        let la = translation_length_closed(&a).unwrap();
        let lb = translation_length_closed(&b).unwrap();
        let ls = translation_length_closed(&s).unwrap();
        assert!((ls * ls - (la * la + lb * lb)).abs() < 1e-12);
    }

    #[test]
    fn hodge_subspace_examples() {
        // distinguished point: columns e_j + i e_{p+j}, identity gram
        for p in 1..=3usize {
            let f = hodge_subspace(&SiegelPoint::base_point(p)).unwrap();
            for j in 0..p {
                for i in 0..2 * p {
                    let expect = if i == j {
                        Complex64::new(1.0, 0.0)
                    } else if i == p + j {
                        Complex64::new(0.0, 1.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    };
                    assert!((f.basis[(i, j)] - expect).norm() < 1e-14);
                }
            }
            let id = DMatrix::<Complex64>::identity(p, p);
            assert!(complex_amax(&(&f.gram - id)) < 1e-14);
        }
    }

    #[test]
    fn hodge_equivariance() {
        let m = random_symplectic(2, 9, 4);
        let z = SiegelPoint::new(
            DMatrix::from_row_slice(2, 2, &[0.4, -0.1, -0.1, 0.2]),
            DMatrix::from_row_slice(2, 2, &[1.2, 0.3, 0.3, 0.8]),
        )
        .unwrap();
        let mz = act(&m, &z).unwrap();
        let f1 = hodge_subspace(&mz).unwrap();
        let mc = m.to_f64().map(|r| Complex64::new(r, 0.0));
        let pushed = &mc * &hodge_subspace(&z).unwrap().basis;
        let p1 = frame_projector(&f1.basis);
        let p2 = frame_projector(&pushed);
        assert!(complex_amax(&(&p1 - &p2)) < 1e-9);
    }
}
