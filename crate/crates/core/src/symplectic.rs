//! Symplectic matrices: validation, normal-form blocks, direct sums,
//! characteristic polynomials and the Jordan–Chevalley factorization.
//!
//! The basis convention is x_1..x_p, y_1..y_p with form matrix
//! J = [[0, I], [-I, 0]], so a 2p x 2p matrix with quadrants A, B, C, D
//! is symplectic iff A^T C = C^T A, D^T B = B^T D and A^T D - C^T B = I.
//!
//! Matrices with integer or rational entries are kept exact and their
//! characteristic polynomials come from the Faddeev–LeVerrier recurrence
//! over exact arithmetic; floating matrices go through Hessenberg–Schur
//! eigenvalues.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exact::{IntMatrix, RatMatrix};
use crate::polyinv::MonicPolynomial;

#[derive(Debug, Error)]
pub enum SymplecticError {
    #[error("matrix dimension {0} is odd; symplectic matrices have even size")]
    OddDimension(usize),
    #[error("symplectic identity {identity} violated: defect {defect:e} exceeds tolerance {tol:e}")]
    BlockIdentityViolated {
        identity: &'static str,
        defect: f64,
        tol: f64,
    },
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(&'static str),
    #[error("matrix is not unipotent: ||(U - I)^{power}|| = {defect:e}")]
    NotNilpotent { power: usize, defect: f64 },
    #[error(
        "eigenvalue clusters at distance {gap:e} are within twice the clustering tolerance \
         {tol:e}; rerun with a different tolerance"
    )]
    ClusterAmbiguity { gap: f64, tol: f64 },
    #[error("eigenvalue iteration failed to converge")]
    EigenNonConvergence,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
}

#[derive(Debug, Clone)]
pub(crate) enum MatrixData {
    Exact(RatMatrix),
    Float(DMatrix<f64>),
}

impl MatrixData {
    fn to_f64(&self) -> DMatrix<f64> {
        match self {
            MatrixData::Exact(m) => m.to_f64(),
            MatrixData::Float(m) => m.clone(),
        }
    }
}

/// Real 2p x 2p matrix validated against the symplectic block identities.
#[derive(Debug, Clone)]
pub struct SymplecticMatrix {
    p: usize,
    data: MatrixData,
    defect: f64,
}

/// Quadrant of a matrix in the x/y block convention.
fn quadrant_f64(m: &DMatrix<f64>, p: usize, row: usize, col: usize) -> DMatrix<f64> {
    DMatrix::from_fn(p, p, |i, j| m[(row * p + i, col * p + j)])
}

impl SymplecticMatrix {
    /// Validate a floating square matrix against the three block
    /// identities at the given tolerance.
    pub fn validate(entries: DMatrix<f64>, tol: f64) -> Result<Self, SymplecticError> {
        let n = entries.nrows();
        if n != entries.ncols() || n % 2 != 0 || n == 0 {
            return Err(SymplecticError::OddDimension(n));
        }
        let p = n / 2;
        let defect = float_defects(&entries, p, tol)?;
        Ok(SymplecticMatrix {
            p,
            data: MatrixData::Float(entries),
            defect,
        })
    }

    /// Validate an exact rational matrix. Integer matrices must satisfy
    /// the identities exactly; rational ones are checked at `tol`.
    pub fn validate_exact(entries: RatMatrix, tol: f64) -> Result<Self, SymplecticError> {
        let n = entries.nrows();
        if n != entries.ncols() || n % 2 != 0 || n == 0 {
            return Err(SymplecticError::OddDimension(n));
        }
        let p = n / 2;
        let quad = |r: usize, c: usize| {
            RatMatrix::from_fn(p, p, |i, j| entries[(r * p + i, c * p + j)].clone())
        };
        let (a, b, c, d) = (quad(0, 0), quad(0, 1), quad(1, 0), quad(1, 1));
        let at = a.transpose();
        let ct = c.transpose();
        let dt = d.transpose();
        let bt = b.transpose();
        let checks: [(&'static str, RatMatrix); 3] = [
            ("A^T C = C^T A", at.mul(&c).sub(&ct.mul(&a))),
            ("D^T B = B^T D", dt.mul(&b).sub(&bt.mul(&d))),
            (
                "A^T D - C^T B = I",
                at.mul(&d).sub(&ct.mul(&b)).sub(&RatMatrix::identity(p)),
            ),
        ];
        let exact_required = entries.is_integer();
        let mut max_defect = 0.0f64;
        for (name, diff) in checks {
            let defect = diff.max_abs_f64();
            let bad = if exact_required {
                defect != 0.0
            } else {
                defect > tol
            };
            if bad {
                return Err(SymplecticError::BlockIdentityViolated {
                    identity: name,
                    defect,
                    tol: if exact_required { 0.0 } else { tol },
                });
            }
            max_defect = max_defect.max(defect);
        }
        Ok(SymplecticMatrix {
            p,
            data: MatrixData::Exact(entries),
            defect: max_defect,
        })
    }

    /// Wrap without rejection, recording the observed defect. Used for
    /// matrices that are symplectic by theory (Jordan–Chevalley factors,
    /// unipotent powers) where roundoff is reported, not fatal.
    pub(crate) fn wrap_with_defect(entries: DMatrix<f64>) -> Self {
        let n = entries.nrows();
        debug_assert!(n % 2 == 0 && n == entries.ncols());
        let p = n / 2;
        let defect = float_defects(&entries, p, f64::INFINITY).unwrap_or(f64::INFINITY);
        SymplecticMatrix {
            p,
            data: MatrixData::Float(entries),
            defect,
        }
    }

    pub fn identity(p: usize) -> Self {
        SymplecticMatrix {
            p,
            data: MatrixData::Exact(RatMatrix::identity(2 * p)),
            defect: 0.0,
        }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn dim(&self) -> usize {
        2 * self.p
    }

    /// Maximum defect of the three block identities observed at
    /// validation.
    pub fn defect(&self) -> f64 {
        self.defect
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.data, MatrixData::Exact(_))
    }

    pub fn exact_entries(&self) -> Option<&RatMatrix> {
        match &self.data {
            MatrixData::Exact(m) => Some(m),
            MatrixData::Float(_) => None,
        }
    }

    pub fn to_f64(&self) -> DMatrix<f64> {
        self.data.to_f64()
    }

    /// The four p x p quadrants as complex matrices (for the action on
    /// the upper half plane).
    pub fn blocks_complex(
        &self,
    ) -> (
        DMatrix<Complex64>,
        DMatrix<Complex64>,
        DMatrix<Complex64>,
        DMatrix<Complex64>,
    ) {
        let m = self.to_f64();
        let p = self.p;
        let lift = |r: usize, c: usize| {
            DMatrix::from_fn(p, p, |i, j| Complex64::new(m[(r * p + i, c * p + j)], 0.0))
        };
        (lift(0, 0), lift(0, 1), lift(1, 0), lift(1, 1))
    }

    /// Product; exact when both operands are exact.
    pub fn mul(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        assert_eq!(self.p, other.p, "dimension mismatch");
        match (&self.data, &other.data) {
            (MatrixData::Exact(a), MatrixData::Exact(b)) => SymplecticMatrix {
                p: self.p,
                data: MatrixData::Exact(a.mul(b)),
                defect: 0.0,
            },
            _ => SymplecticMatrix::wrap_with_defect(self.to_f64() * other.to_f64()),
        }
    }

    /// Inverse via the block formula M^{-1} = [[D^T, -B^T], [-C^T, A^T]],
    /// which is exact for exact entries.
    pub fn inverse(&self) -> SymplecticMatrix {
        let p = self.p;
        match &self.data {
            MatrixData::Exact(m) => {
                let get = |i: usize, j: usize| m[(i, j)].clone();
                let inv = RatMatrix::from_fn(2 * p, 2 * p, |i, j| {
                    let (bi, ii) = (i / p, i % p);
                    let (bj, jj) = (j / p, j % p);
                    match (bi, bj) {
                        (0, 0) => get(p + jj, p + ii),      // D^T
                        (0, 1) => -get(jj, p + ii),         // -B^T
                        (1, 0) => -get(p + jj, ii),         // -C^T
                        _ => get(jj, ii),                   // A^T
                    }
                });
                SymplecticMatrix {
                    p,
                    data: MatrixData::Exact(inv),
                    defect: self.defect,
                }
            }
            MatrixData::Float(m) => {
                let inv = DMatrix::from_fn(2 * p, 2 * p, |i, j| {
                    let (bi, ii) = (i / p, i % p);
                    let (bj, jj) = (j / p, j % p);
                    match (bi, bj) {
                        (0, 0) => m[(p + jj, p + ii)],
                        (0, 1) => -m[(jj, p + ii)],
                        (1, 0) => -m[(p + jj, ii)],
                        _ => m[(jj, ii)],
                    }
                });
                SymplecticMatrix::wrap_with_defect(inv)
            }
        }
    }

    pub fn pow(&self, k: usize) -> SymplecticMatrix {
        let mut acc = SymplecticMatrix::identity(self.p);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact characteristic polynomial for exact entries
    /// (Faddeev–LeVerrier); Hessenberg–Schur eigenvalue expansion for
    /// floating entries. Monic of degree 2p either way.
    pub fn char_poly(&self) -> MonicPolynomial {
        match &self.data {
            MatrixData::Exact(m) => {
                if let Some(im) = m.to_int() {
                    MonicPolynomial::from_bigints(im.char_poly()).expect("FLV output is monic")
                } else {
                    MonicPolynomial::from_exact(m.char_poly()).expect("FLV output is monic")
                }
            }
            MatrixData::Float(m) =>

                char_poly_float(m).expect("Schur iteration failed on a symplectic matrix"),
        }
    }
}

fn float_defects(m: &DMatrix<f64>, p: usize, tol: f64) -> Result<f64, SymplecticError> {
    let a = quadrant_f64(m, p, 0, 0);
    let b = quadrant_f64(m, p, 0, 1);
    let c = quadrant_f64(m, p, 1, 0);
    let d = quadrant_f64(m, p, 1, 1);
    let checks: [(&'static str, DMatrix<f64>); 3] = [
        ("A^T C = C^T A", a.transpose() * &c - c.transpose() * &a),
        ("D^T B = B^T D", d.transpose() * &b - b.transpose() * &d),
        (
            "A^T D - C^T B = I",
            a.transpose() * &d - c.transpose() * &b - DMatrix::<f64>::identity(p, p),
        ),
    ];
    let mut max_defect = 0.0f64;
    for (name, diff) in checks {
        let defect = diff.amax();
        if defect > tol {
            return Err(SymplecticError::BlockIdentityViolated {
                identity: name,
                defect,
                tol,
            });
        }
        max_defect = max_defect.max(defect);
    }
    Ok(max_defect)
}

/// Characteristic polynomial of a floating matrix: Hessenberg–Schur
/// eigenvalues, conjugate pairs symmetrized into real quadratic factors,
/// then expanded.
fn char_poly_float(m: &DMatrix<f64>) -> Result<MonicPolynomial, SymplecticError> {
    let eig = m
        .clone()
        .try_schur(f64::EPSILON, 100_000)
        .ok_or(SymplecticError::EigenNonConvergence)?
        .complex_eigenvalues();
    let mut coeffs = vec![1.0f64];
    let mut pending: Vec<Complex64> = eig.iter().copied().collect();
    let mut factors: Vec<Vec<f64>> = Vec::new();
    while let Some(z) = pending.pop() {
        let scale = 1.0 + z.norm();
        if z.im.abs() <= 1e-12 * scale {
            factors.push(vec![1.0, -z.re]);
        } else {
            // find the conjugate partner
            let pos = pending
                .iter()
                .position(|w| (w - z.conj()).norm() <= 1e-9 * scale)
                .expect("real matrix eigenvalues must come in conjugate pairs");
            pending.swap_remove(pos);
            factors.push(vec![1.0, -2.0 * z.re, z.norm_sqr()]);
        }
    }
    for f in factors {
        let mut next = vec![0.0; coeffs.len() + f.len() - 1];
        for (i, ci) in coeffs.iter().enumerate() {
            for (j, fj) in f.iter().enumerate() {
                next[i + j] += ci * fj;
            }
        }
        coeffs = next;
    }
    coeffs[0] = 1.0;
    Ok(MonicPolynomial::from_floats(coeffs).expect("leading coefficient forced to 1"))
}

// ---------------------------------------------------------------------
// normal-form blocks

/// 2 x 2 hyperbolic block diag(λ, 1/λ) for real |λ| > 1; exact in the
/// binary rational read of λ.
pub fn block_hyperbolic(lambda: f64) -> Result<SymplecticMatrix, SymplecticError> {
    if !(lambda.abs() > 1.0) || !lambda.is_finite() {
        return Err(SymplecticError::ParameterOutOfRange("hyperbolic block needs |λ| > 1"));
    }
    let l = BigRational::from_float(lambda).expect("finite float");
    let mut m = RatMatrix::zeros(2, 2);
    m[(0, 0)] = l.clone();
    m[(1, 1)] = l.recip();
    SymplecticMatrix::validate_exact(m, 0.0)
}

/// 2 x 2 rotation block with eigenvalues e^{±iθ}.
pub fn block_elliptic(theta: f64) -> Result<SymplecticMatrix, SymplecticError> {
    if !theta.is_finite() {
        return Err(SymplecticError::ParameterOutOfRange("elliptic angle must be finite"));
    }
    let (s, c) = theta.sin_cos();
    let m = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
    SymplecticMatrix::validate(m, 1e-14)
}

/// 2 x 2 central block ±I.
pub fn block_central(sign: i8) -> Result<SymplecticMatrix, SymplecticError> {
    if sign != 1 && sign != -1 {
        return Err(SymplecticError::ParameterOutOfRange("central sign must be ±1"));
    }
    let s = BigRational::from_integer(BigInt::from(sign));
    let mut m = RatMatrix::zeros(2, 2);
    m[(0, 0)] = s.clone();
    m[(1, 1)] = s;
    SymplecticMatrix::validate_exact(m, 0.0)
}

/// 4 x 4 loxodromic block diag(ρ Rot(θ), ρ^{-1} Rot(θ)) with eigenvalues
/// {ρ e^{±iθ}, ρ^{-1} e^{±iθ}} off the circle and the real axis.
pub fn block_loxodromic(rho: f64, theta: f64) -> Result<SymplecticMatrix, SymplecticError> {
    if !(rho > 1.0) || !rho.is_finite() || !theta.is_finite() {
        return Err(SymplecticError::ParameterOutOfRange("loxodromic block needs ρ > 1"));
    }
    let (s, c) = theta.sin_cos();
    let mut m = DMatrix::<f64>::zeros(4, 4);
    m[(0, 0)] = rho * c;
    m[(0, 1)] = -rho * s;
    m[(1, 0)] = rho * s;
    m[(1, 1)] = rho * c;
    m[(2, 2)] = c / rho;
    m[(2, 3)] = -s / rho;
    m[(3, 2)] = s / rho;
    m[(3, 3)] = c / rho;
    SymplecticMatrix::validate(m, 1e-14)
}

/// Block-diagonal assembly in the interleaved symplectic basis:
/// x-coordinates of both summands first, then y-coordinates.
pub fn direct_sum(m1: &SymplecticMatrix, m2: &SymplecticMatrix) -> SymplecticMatrix {
    let (p1, p2) = (m1.p, m2.p);
    let p = p1 + p2;
    // map a result index to (which summand, its local index) per half
    let locate = |i: usize| -> (usize, usize) {
        let (half, off) = if i < p { (0, i) } else { (1, i - p) };
        if off < p1 {
            (0, half * p1 + off)
        } else {
            (1, half * p2 + (off - p1))
        }
    };
    match (&m1.data, &m2.data) {
        (MatrixData::Exact(a), MatrixData::Exact(b)) => {
            let entries = RatMatrix::from_fn(2 * p, 2 * p, |i, j| {
                let (si, li) = locate(i);
                let (sj, lj) = locate(j);
                if si != sj {
                    BigRational::zero()
                } else if si == 0 {
                    a[(li, lj)].clone()
                } else {
                    b[(li, lj)].clone()
                }
            });
            SymplecticMatrix {
                p,
                data: MatrixData::Exact(entries),
                defect: m1.defect.max(m2.defect),
            }
        }
        _ => {
            let (a, b) = (m1.to_f64(), m2.to_f64());
            let entries = DMatrix::from_fn(2 * p, 2 * p, |i, j| {
                let (si, li) = locate(i);
                let (sj, lj) = locate(j);
                if si != sj {
                    0.0
                } else if si == 0 {
                    a[(li, lj)]
                } else {
                    b[(li, lj)]
                }
            });
            SymplecticMatrix::wrap_with_defect(entries)
        }
    }
}

// ---------------------------------------------------------------------
// random corpus generation

/// Deterministic product of `word_length` generators, each either
/// diag(Q, Q^{-T}) with a random unimodular Q or a shear [[I, S], [0, I]]
/// with random symmetric S; factors are resampled whenever the partial
/// product would exceed operator norm 10^6. Entries stay exact integers.
pub fn random_symplectic(p: usize, seed: u64, word_length: usize) -> SymplecticMatrix {
    assert!(p >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = RatMatrix::identity(2 * p);
    let mut placed = 0usize;
    let mut attempts = 0usize;
    while placed < word_length && attempts < word_length * 50 {
        attempts += 1;
        let factor = random_generator(p, &mut rng);
        let candidate = acc.mul(&factor);
        if operator_norm_f64(&candidate.to_f64()) <= 1.0e6 {
            acc = candidate;
            placed += 1;
        }
    }
    SymplecticMatrix::validate_exact(acc, 0.0).expect("generators are exactly symplectic")
}

fn random_generator(p: usize, rng: &mut ChaCha8Rng) -> RatMatrix {
    let mut m = RatMatrix::identity(2 * p);
    if rng.random_bool(0.5) {
        // diag(Q, Q^{-T}) with Q unimodular from elementary operations
        let mut q = IntMatrix::identity(p);
        let mut q_inv = IntMatrix::identity(p);
        if p == 1 {
            if rng.random_bool(0.5) {
                q[(0, 0)] = BigInt::from(-1);
                q_inv[(0, 0)] = BigInt::from(-1);
            }
        } else {
            for _ in 0..p + 1 {
                let i = rng.random_range(0..p);
                let mut j = rng.random_range(0..p - 1);
                if j >= i {
                    j += 1;
                }
                let c = BigInt::from(*[-2i64, -1, 1, 2].get(rng.random_range(0..4)).unwrap());
                // Q <- E Q with E = I + c e_ij ; Q^{-1} <- Q^{-1} (I - c e_ij)
                for k in 0..p {
                    let t = &c * &q[(j, k)];
                    q[(i, k)] += t;
                }
                for k in 0..p {
                    let t = &c * &q_inv[(k, i)];
                    q_inv[(k, j)] -= t;
                }
            }
        }
        let q_inv_t = q_inv.transpose();
        for i in 0..p {
            for j in 0..p {
                m[(i, j)] = BigRational::from_integer(q[(i, j)].clone());
                m[(p + i, p + j)] = BigRational::from_integer(q_inv_t[(i, j)].clone());
            }
        }
    } else {
        // shear [[I, S], [0, I]] with small symmetric S
        for i in 0..p {
            for j in i..p {
                let v = BigRational::from_integer(BigInt::from(rng.random_range(-2i64..=2)));
                m[(i, p + j)] = v.clone();
                m[(j, p + i)] = v;
            }
        }
    }
    m
}

fn operator_norm_f64(m: &DMatrix<f64>) -> f64 {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(0.0f64, |a, &b| a.max(b))
}

// ---------------------------------------------------------------------
// Jordan–Chevalley factorization

/// Commuting semisimple * unipotent factorization with the residual of
/// the defining identities.
#[derive(Debug, Clone)]
pub struct JordanChevalleyPair {
    pub semisimple: SymplecticMatrix,
    pub unipotent: SymplecticMatrix,
    /// Max of commutator, product, nilpotency and semisimplicity defects
    /// together with the symplectic defects of the factors.
    pub residual: f64,
}

/// Spectral Jordan–Chevalley factorization: eigenvalues are clustered at
/// distance `cluster_tol`, the semisimple factor is the Hermite
/// interpolation polynomial of the cluster representatives evaluated at
/// the matrix, and the unipotent factor is its inverse times the input.
pub fn jordan_chevalley(
    m: &SymplecticMatrix,
    cluster_tol: f64,
) -> Result<JordanChevalleyPair, SymplecticError> {
    assert!(cluster_tol > 0.0);
    let n = m.dim();
    let mf = m.to_f64();
    let eig = mf
        .clone()
        .try_schur(f64::EPSILON, 100_000)
        .ok_or(SymplecticError::EigenNonConvergence)?
        .complex_eigenvalues();
    let eigs: Vec<Complex64> = eig.iter().copied().collect();

    // union-find clustering at distance <= cluster_tol
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
        }
        parent[i]
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigs[i] - eigs[j]).norm() <= cluster_tol {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    let mut root_of: Vec<(usize, usize)> = Vec::new(); // (root, cluster idx)
    for i in 0..n {
        let r = find(&mut parent, i);
        let idx = match root_of.iter().find(|(root, _)| *root == r) {
            Some(&(_, idx)) => idx,
            None => {
                clusters.push((Complex64::new(0.0, 0.0), 0));
                root_of.push((r, clusters.len() - 1));
                clusters.len() - 1
            }
        };
        clusters[idx].0 += eigs[i];
        clusters[idx].1 += 1;
    }
    for c in clusters.iter_mut() {
        c.0 /= c.1 as f64;
        if c.0.im.abs() <= cluster_tol {
            c.0 = Complex64::new(c.0.re, 0.0);
        }
    }
    // force exact conjugate symmetry of representatives
    let k = clusters.len();
    for i in 0..k {
        for j in i + 1..k {
            if (clusters[i].0.conj() - clusters[j].0).norm() <= cluster_tol {
                let avg_re = 0.5 * (clusters[i].0.re + clusters[j].0.re);
                let avg_im = 0.5 * (clusters[i].0.im - clusters[j].0.im);
                clusters[i].0 = Complex64::new(avg_re, avg_im);
                clusters[j].0 = Complex64::new(avg_re, -avg_im);
            }
        }
    }

    // ambiguity: representatives too close to merging
    for i in 0..k {
        for j in i + 1..k {
            let gap = (clusters[i].0 - clusters[j].0).norm();
            if gap < 2.0 * cluster_tol {
                return Err(SymplecticError::ClusterAmbiguity {
                    gap,
                    tol: cluster_tol,
                });
            }
        }
    }

    // distinct eigenvalues: the input is its own semisimple factor
    if clusters.iter().all(|&(_, m)| m == 1) {
        return Ok(JordanChevalleyPair {
            semisimple: m.clone(),
            unipotent: SymplecticMatrix::identity(m.p()),
            residual: 0.0,
        });
    }

    // Hermite interpolation h with h ≡ λ_i mod (z - λ_i)^{m_i}
    let h = hermite_constant_interpolation(&clusters);
    let max_im = h.iter().map(|c| c.im.abs()).fold(0.0f64, f64::max);
    let h_real: Vec<f64> = h.iter().map(|c| c.re).collect();

    // S = h(M) by Horner, descending powers
    let mut s = DMatrix::<f64>::zeros(n, n);
    for &c in h_real.iter().rev() {
        s = &s * &mf;
        for i in 0..n {
            s[(i, i)] += c;
        }
    }
    let s_inv = s
        .clone()
        .try_inverse()
        .ok_or(SymplecticError::EigenNonConvergence)?;
    let u = &s_inv * &mf;

    // residuals of the defining identities
    let commutator = (&s * &u - &u * &s).amax();
    let product = (&s * &u - &mf).amax();
    let mut nilp = DMatrix::<f64>::identity(n, n);
    let eye = DMatrix::<f64>::identity(n, n);
    let u_minus_i = &u - &eye;
    for _ in 0..n {
        nilp = &nilp * &u_minus_i;
    }
    let nilpotency = nilp.amax();
    let mut semis = eye.clone();
    for &(rep, _) in &clusters {
        // real factor per real representative, quadratic per conjugate pair
        if rep.im == 0.0 {
            semis = &semis * &(&s - rep.re * &eye);
        } else if rep.im > 0.0 {
            let quad = &s * &s - 2.0 * rep.re * &s + rep.norm_sqr() * &eye;
            semis = &semis * &quad;
        }
    }
    let scale = 1.0 + mf.amax().powi(n as i32);
    let semisimplicity = semis.amax() / scale;

    let semisimple = SymplecticMatrix::wrap_with_defect(s);
    let unipotent = SymplecticMatrix::wrap_with_defect(u);
    let residual = commutator
        .max(product)
        .max(nilpotency)
        .max(semisimplicity)
        .max(max_im)
        .max(semisimple.defect())
        .max(unipotent.defect());
    Ok(JordanChevalleyPair {
        semisimple,
        unipotent,
        residual,
    })
}

/// Coefficients (ascending) of the polynomial h with
/// h ≡ value_i mod (z - λ_i)^{m_i} for clusters (λ_i, m_i), by CRT with
/// truncated power series inverses.
fn hermite_constant_interpolation(clusters: &[(Complex64, usize)]) -> Vec<Complex64> {
    let total: usize = clusters.iter().map(|&(_, m)| m).sum();
    let mut h = vec![Complex64::new(0.0, 0.0); total];
    for (i, &(lam, mult)) in clusters.iter().enumerate() {
        // g_i = prod_{j != i} (z - λ_j)^{m_j}
        let mut g = vec![Complex64::new(1.0, 0.0)];
        for (j, &(lj, mj)) in clusters.iter().enumerate() {
            if j == i {
                continue;
            }
            for _ in 0..mj {
                g = cpoly_mul(&g, &[-lj, Complex64::new(1.0, 0.0)]);
            }
        }
        // series inverse of g at λ_i, truncated to mult terms
        let g_shift = cpoly_shift(&g, lam);
        let q_w = cseries_inverse(&g_shift, mult);
        // back to a polynomial in z
        let q_z = cpoly_shift(&q_w, -lam);
        let e = cpoly_mul(&g, &q_z);
        for (k, c) in e.iter().enumerate() {
            if k < h.len() {
                h[k] += lam * c;
            }
        }
    }
    h
}

/// Product of complex polynomials in ascending order.
fn cpoly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Coefficients of p(w + λ) in ascending order (Taylor shift by repeated
/// synthetic division).
fn cpoly_shift(p: &[Complex64], lam: Complex64) -> Vec<Complex64> {
    let n = p.len();
    let mut work: Vec<Complex64> = p.to_vec();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        // divide work (ascending) by (z - λ): remainder = value at λ
        let mut rem = Complex64::new(0.0, 0.0);
        for i in (0..work.len()).rev() {
            let t = work[i] + rem * lam;
            rem = t;
            work[i] = t;
        }
        // after the Horner pass, work[0] holds p(λ); the quotient is
        // work[1..] shifted down
        out[k] = work[0];
        work.remove(0);
        if work.is_empty() {
            break;
        }
    }
    out
}

/// First `m` coefficients of 1/g as a power series (g[0] != 0).
fn cseries_inverse(g: &[Complex64], m: usize) -> Vec<Complex64> {
    let mut b = vec![Complex64::new(0.0, 0.0); m];
    b[0] = Complex64::new(1.0, 0.0) / g[0];
    for k in 1..m {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 1..=k {
            let gj = if j < g.len() {
                g[j]
            } else {
                Complex64::new(0.0, 0.0)
            };
            acc += gj * b[k - j];
        }
        b[k] = -acc / g[0];
    }
    b
}

/// Real power U^r of a unipotent matrix by the finite binomial series
/// Σ_j C(r, j) (U - I)^j; exact in at most 2p terms.
pub fn unipotent_power(u: &SymplecticMatrix, r: f64) -> Result<SymplecticMatrix, SymplecticError> {
    let n = u.dim();
    let uf = u.to_f64();
    let eye = DMatrix::<f64>::identity(n, n);
    let nmat = &uf - &eye;
    // nilpotency precondition
    let mut power = nmat.clone();
    for _ in 1..n {
        power = &power * &nmat;
    }
    if power.amax() > 1e-10 {
        return Err(SymplecticError::NotNilpotent {
            power: n,
            defect: power.amax(),
        });
    }
    let mut sum = eye.clone();
    let mut term = eye.clone();
    let mut coef = 1.0f64;
    for j in 1..n {
        term = &term * &nmat;
        coef *= (r - (j as f64 - 1.0)) / j as f64;
        sum += coef * &term;
        if term.amax() == 0.0 {
            break;
        }
    }
    Ok(SymplecticMatrix::wrap_with_defect(sum))
}
