use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U * A * V = D` with both row transforms and their
/// inverses tracked, so quotient lattices can be read off directly.
///
/// `D` is diagonal with nonnegative invariant factors d_1 | d_2 | ... .
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

/// Row and column reduction with a pivot of smallest absolute value,
/// which keeps entry growth in check on the sparse relation matrices
/// produced by Reidemeister–Schreier rewriting.
pub fn smith_normal_form(a: &IntMatrix) -> SmithDecomposition {
    let m = a.nrows();
    let n = a.ncols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // Elementary operations, applied to D and mirrored on the transforms.
    // Row op L on D (D <- L D): U <- L U, U_inv <- U_inv L^{-1}.
    let swap_rows = |d: &mut IntMatrix,
                         u: &mut IntMatrix,
                         u_inv: &mut IntMatrix,
                         i: usize,
                         j: usize| {
        if i == j {
            return;
        }
        for c in 0..d.ncols() {
            let t = d[(i, c)].clone();
            d[(i, c)] = d[(j, c)].clone();
            d[(j, c)] = t;
        }
        for c in 0..u.ncols() {
            let t = u[(i, c)].clone();
            u[(i, c)] = u[(j, c)].clone();
            u[(j, c)] = t;
        }
        for r in 0..u_inv.nrows() {
            let t = u_inv[(r, i)].clone();
            u_inv[(r, i)] = u_inv[(r, j)].clone();
            u_inv[(r, j)] = t;
        }
    };
    // row_j += q * row_i  (inverse: column op col_i -= q * col_j on U_inv)
    let add_row = |d: &mut IntMatrix,
                   u: &mut IntMatrix,
                   u_inv: &mut IntMatrix,
                   j: usize,
                   i: usize,
                   q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for c in 0..d.ncols() {
            let t = q * &d[(i, c)];
            d[(j, c)] += t;
        }
        for c in 0..u.ncols() {
            let t = q * &u[(i, c)];
            u[(j, c)] += t;
        }
        for r in 0..u_inv.nrows() {
            let t = q * &u_inv[(r, j)];
            u_inv[(r, i)] -= t;
        }
    };
    let swap_cols = |d: &mut IntMatrix,
                     v: &mut IntMatrix,
                     v_inv: &mut IntMatrix,
                     i: usize,
                     j: usize| {
        if i == j {
            return;
        }
        for r in 0..d.nrows() {
            let t = d[(r, i)].clone();
            d[(r, i)] = d[(r, j)].clone();
            d[(r, j)] = t;
        }
        for r in 0..v.nrows() {
            let t = v[(r, i)].clone();
            v[(r, i)] = v[(r, j)].clone();
            v[(r, j)] = t;
        }
        for c in 0..v_inv.ncols() {
            let t = v_inv[(i, c)].clone();
            v_inv[(i, c)] = v_inv[(j, c)].clone();
            v_inv[(j, c)] = t;
        }
    };
    // col_j += q * col_i
    let add_col = |d: &mut IntMatrix,
                   v: &mut IntMatrix,
                   v_inv: &mut IntMatrix,
                   j: usize,
                   i: usize,
                   q: &BigInt| {
        if q.is_zero() {
            return;
        }
        for r in 0..d.nrows() {
            let t = q * &d[(r, i)];
            d[(r, j)] += t;
        }
        for r in 0..v.nrows() {
            let t = q * &v[(r, i)];
            v[(r, j)] += t;
        }
        for c in 0..v_inv.ncols() {
            let t = q * &v_inv[(j, c)];
            v_inv[(i, c)] -= t;
        }
    };
    let negate_row = |d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, i: usize| {
        for c in 0..d.ncols() {
            let t = -d[(i, c)].clone();
            d[(i, c)] = t;
        }
        for c in 0..u.ncols() {
            let t = -u[(i, c)].clone();
            u[(i, c)] = t;
        }
        for r in 0..u_inv.nrows() {
            let t = -u_inv[(r, i)].clone();
            u_inv[(r, i)] = t;
        }
    };

    let mut k = 0;
    while k < m.min(n) {
        // smallest-magnitude nonzero pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..m {
            for j in k..n {
                if !d[(i, j)].is_zero() {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => d[(i, j)].abs() < d[(pi, pj)].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break; // trailing block all zero
        };
        swap_rows(&mut d, &mut u, &mut u_inv, k, pi);
        swap_cols(&mut d, &mut v, &mut v_inv, k, pj);

        // clear row and column k; restart when a remainder shrinks the pivot
        loop {
            let mut dirty = false;
            for i in k + 1..m {
                if !d[(i, k)].is_zero() {
                    let q = -(&d[(i, k)] / &d[(k, k)]);
                    add_row(&mut d, &mut u, &mut u_inv, i, k, &q);
                    if !d[(i, k)].is_zero() {
                        // remainder strictly smaller than pivot: promote it
                        swap_rows(&mut d, &mut u, &mut u_inv, k, i);
                        dirty = true;
                    }
                }
            }
            for j in k + 1..n {
                if !d[(k, j)].is_zero() {
                    let q = -(&d[(k, j)] / &d[(k, k)]);
                    add_col(&mut d, &mut v, &mut v_inv, j, k, &q);
                    if !d[(k, j)].is_zero() {
                        swap_cols(&mut d, &mut v, &mut v_inv, k, j);
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }

        // enforce divisibility of the trailing block by the pivot
        let mut fixed = true;
        'divis: for i in k + 1..m {
            for j in k + 1..n {
                if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                    let one = BigInt::from(1);
                    add_row(&mut d, &mut u, &mut u_inv, k, i, &one);
                    fixed = false;
                    break 'divis;
                }
            }
        }
        if !fixed {
            continue; // redo this pivot with the new row folded in
        }

        if d[(k, k)].is_negative() {
            negate_row(&mut d, &mut u, &mut u_inv, k);
        }
        k += 1;
    }

    let rank = k;
    let invariant_factors = (0..rank).map(|i| d[(i, i)].clone()).collect();
    SmithDecomposition {
        d,
        u,
        u_inv,
        v,
        v_inv,
        rank,
        invariant_factors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) {
        let s = smith_normal_form(a);
        // U A V = D
        let lhs = s.u.mul(a).mul(&s.v);
        assert_eq!(lhs, s.d);
        // transforms are mutually inverse
        assert!(s.u.mul(&s.u_inv).is_identity());
        assert!(s.v.mul(&s.v_inv).is_identity());
        // diagonal divisibility
        for i in 1..s.rank {
            let q = &s.invariant_factors[i] % &s.invariant_factors[i - 1];
            assert!(q.is_zero(), "divisibility chain broken");
        }
    }

    #[test]
    fn snf_examples() {
        check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        check(&IntMatrix::from_i64(3, 2, &[1, 2, 3, 4, 5, 6]));
        check(&IntMatrix::from_i64(2, 3, &[0, 0, 0, 0, 5, 0]));
        check(&IntMatrix::from_i64(
            3,
            3,
            &[2, 0, 0, 0, 3, 0, 0, 0, 0],
        ));
    }

    #[test]
    fn snf_known_factors() {
        // [[2,4],[6,8]] has invariant factors 2, 4 (det = -8, gcd = 2)
        let s = smith_normal_form(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(s.rank, 2);
        assert_eq!(s.invariant_factors[0], BigInt::from(2));
        assert_eq!(s.invariant_factors[1], BigInt::from(4));
    }
}
