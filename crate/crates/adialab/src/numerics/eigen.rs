//! Symmetric eigenvalue solvers.
//!
//! Tridiagonal matrices are handled by bisection on the Sturm sequence count
//! (LDLT pivot signs), which targets just the k smallest eigenvalues and also
//! yields exact `#{eigenvalues <= lambda}` queries. Dense symmetric matrices
//! are first reduced to tridiagonal form by Householder reflections (no
//! eigenvector accumulation) and then fed to the same bisection backend.

use crate::error::{Error, Result};

/// Maximum dense dimension accepted by [`dense_sym_eigs`].
pub const DENSE_DIM_LIMIT: usize = 4000;

/// Dense symmetric matrix in row-major storage.
#[derive(Debug, Clone)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![0.0; n * n] }
    }

    /// Build from an entry function; `f` must itself be symmetric.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        SymmetricMatrix { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Set both `(i, j)` and `(j, i)`.
    pub fn set_sym(&mut self, i: usize, j: usize, value: f64) {
        self.data[i * self.n + j] = value;
        self.data[j * self.n + i] = value;
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &v| m.max(v.abs()))
    }

    fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }
}

/// Number of eigenvalues strictly below `x` (Sturm sequence / LDLT pivots).
fn sturm_count_lt(diag: &[f64], offdiag: &[f64], x: f64, pivot_guard: f64) -> usize {
    let mut count = 0usize;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let q_safe = if q.abs() < pivot_guard {
            if q >= 0.0 {
                pivot_guard
            } else {
                -pivot_guard
            }
        } else {
            q
        };
        q = (diag[i] - x) - offdiag[i - 1] * offdiag[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(diag: &[f64], offdiag: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { offdiag[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo, hi)
}

fn pivot_guard_for(diag: &[f64], offdiag: &[f64]) -> f64 {
    let scale = diag
        .iter()
        .chain(offdiag.iter())
        .fold(0.0f64, |m, &v| m.max(v.abs()))
        .max(1.0);
    scale * f64::EPSILON * f64::EPSILON
}

fn bisect_k_smallest(diag: &[f64], offdiag: &[f64], k: usize) -> Vec<f64> {
    let (glo, ghi) = gershgorin(diag, offdiag);
    let span = (ghi - glo).max(f64::MIN_POSITIVE);
    let glo = glo - 1e-12 * span;
    let ghi = ghi + 1e-12 * span;
    let guard = pivot_guard_for(diag, offdiag);

    let mut eigenvalues = Vec::with_capacity(k);
    let mut lower = glo;
    for j in 0..k {
        // invariant: count_lt(lo) <= j and count_lt(hi) >= j + 1
        let mut lo = lower;
        let mut hi = ghi;
        for _ in 0..160 {
            let width = hi - lo;
            if width <= 1e-13 * lo.abs().max(hi.abs()) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count_lt(diag, offdiag, mid, guard) <= j {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        eigenvalues.push(0.5 * (lo + hi));
        lower = lo;
    }
    eigenvalues
}

fn check_tridiag_args(diag: &[f64], offdiag: &[f64], k: usize) -> Result<()> {
    let n = diag.len();
    if n == 0 {
        return Err(Error::invalid("sym_tridiag_eigs: empty diagonal"));
    }
    if offdiag.len() + 1 != n {
        return Err(Error::invalid(format!(
            "sym_tridiag_eigs: offdiagonal length {} does not match dimension {n}",
            offdiag.len()
        )));
    }
    if k < 1 || k > n {
        return Err(Error::invalid(format!(
            "sym_tridiag_eigs: k = {k} out of range 1..={n}"
        )));
    }
    Ok(())
}

/// The `k` smallest eigenvalues (ascending, with multiplicity) of the
/// symmetric tridiagonal matrix with main diagonal `diag` and off-diagonal
/// `offdiag`.
pub fn sym_tridiag_eigs(diag: &[f64], offdiag: &[f64], k: usize) -> Result<Vec<f64>> {
    check_tridiag_args(diag, offdiag, k)?;
    if diag.len() == 1 {
        return Ok(vec![diag[0]]);
    }
    Ok(bisect_k_smallest(diag, offdiag, k))
}

/// `#{eigenvalues <= lambda}` of a symmetric tridiagonal matrix.
pub fn sym_tridiag_count_leq(diag: &[f64], offdiag: &[f64], lambda: f64) -> usize {
    if diag.len() == 1 {
        return usize::from(diag[0] <= lambda);
    }
    let guard = pivot_guard_for(diag, offdiag);
    sturm_count_lt(diag, offdiag, next_up(lambda), guard)
}

fn next_up(x: f64) -> f64 {
    // smallest float strictly above x
    if x.is_nan() || x == f64::INFINITY {
        x
    } else if x == 0.0 {
        f64::MIN_POSITIVE
    } else {
        let bits = x.to_bits();
        f64::from_bits(if x > 0.0 { bits + 1 } else { bits - 1 })
    }
}

/// Householder reduction of a symmetric matrix to tridiagonal form,
/// eigenvalues only (no transformation accumulation). Returns `(d, e)`.
fn householder_tridiagonalize(matrix: &SymmetricMatrix) -> (Vec<f64>, Vec<f64>) {
    let n = matrix.n;
    let mut a = matrix.data.clone();
    let idx = |i: usize, j: usize| i * n + j;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let mut scale = 0.0;
            for k in 0..=l {
                scale += a[idx(i, k)].abs();
            }
            if scale == 0.0 {
                e[i] = a[idx(i, l)];
            } else {
                for k in 0..=l {
                    a[idx(i, k)] /= scale;
                    h += a[idx(i, k)] * a[idx(i, k)];
                }
                let f = a[idx(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[idx(i, l)] = f - g;

                let mut f_acc = 0.0;
                for j in 0..=l {
                    let mut g_acc = 0.0;
                    for k in 0..=j {
                        g_acc += a[idx(j, k)] * a[idx(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g_acc += a[idx(k, j)] * a[idx(i, k)];
                    }
                    e[j] = g_acc / h;
                    f_acc += e[j] * a[idx(i, j)];
                }
                let hh = f_acc / (2.0 * h);
                for j in 0..=l {
                    let f = a[idx(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[idx(j, k)] -= f * e[k] + g * a[idx(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[idx(i, l)];
        }
        d[i] = h;
    }
    for i in 0..n {
        d[i] = a[idx(i, i)];
    }
    let off = e[1..].to_vec();
    (d, off)
}

fn check_dense(matrix: &SymmetricMatrix) -> Result<()> {
    let n = matrix.n;
    if n == 0 {
        return Err(Error::invalid("dense_sym_eigs: empty matrix"));
    }
    if n > DENSE_DIM_LIMIT {
        return Err(Error::invalid(format!(
            "dense_sym_eigs: dimension {n} exceeds the limit {DENSE_DIM_LIMIT}"
        )));
    }
    let tol = 1e-12 * matrix.max_abs().max(1.0);
    let asym = matrix.max_asymmetry();
    if asym > tol {
        return Err(Error::invalid(format!(
            "dense_sym_eigs: matrix asymmetry {asym:.3e} exceeds tolerance {tol:.3e}"
        )));
    }
    Ok(())
}

/// The `k` smallest eigenvalues (ascending, with multiplicity) of a dense
/// symmetric matrix, via Householder tridiagonalization + Sturm bisection.
pub fn dense_sym_eigs(matrix: &SymmetricMatrix, k: usize) -> Result<Vec<f64>> {
    check_dense(matrix)?;
    if k < 1 || k > matrix.n {
        return Err(Error::invalid(format!(
            "dense_sym_eigs: k = {k} out of range 1..={}",
            matrix.n
        )));
    }
    if matrix.n == 1 {
        return Ok(vec![matrix.get(0, 0)]);
    }
    let (d, e) = householder_tridiagonalize(matrix);
    Ok(bisect_k_smallest(&d, &e, k))
}

/// `#{eigenvalues <= lambda}` of a dense symmetric matrix.
pub fn dense_sym_count_leq(matrix: &SymmetricMatrix, lambda: f64) -> Result<usize> {
    check_dense(matrix)?;
    if matrix.n == 1 {
        return Ok(usize::from(matrix.get(0, 0) <= lambda));
    }
    let (d, e) = householder_tridiagonalize(matrix);
    Ok(sym_tridiag_count_leq(&d, &e, lambda))
}
