//! Dense linear-algebra helpers over complex matrices.
//!
//! Thin wrappers around nalgebra plus the few routines it does not provide:
//! joint diagonalization of a commuting Hermitian pair, small Pfaffians, and
//! continuous branch tracking of determinants along matrix paths.

use nalgebra::{Complex, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tol;

pub type C64 = Complex<f64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cr(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Joint eigendata: paired eigenvalues plus the matrix of joint
/// eigenvectors.
pub type JointEigen<T> = (Vec<(f64, f64)>, DMatrix<T>);

/// Frobenius norm.
pub fn fro(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues descending.
/// Returns (values, vectors); column j of `vectors` is the eigenvector of
/// values[j].
pub fn herm_eigen(m: &DMatrix<C64>) -> Result<(Vec<f64>, DMatrix<C64>)> {
    let n = m.nrows();
    let herm_defect = fro(&(m - m.adjoint()));
    if herm_defect > 1e-8 * (1.0 + fro(m)) {
        return Err(Error::NumericalFailure(format!(
            "matrix is not Hermitian (defect {herm_defect:.3e})"
        )));
    }
    let sym = (m + m.adjoint()).scale(0.5);
    let se = sym.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&j| se.eigenvalues[j]).collect();
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        vectors.set_column(k, &se.eigenvectors.column(j));
    }
    // residual check
    let lam = DMatrix::from_diagonal(&DVector::from_iterator(n, values.iter().map(|&v| cr(v))));
    let resid = fro(&(&vectors * lam * vectors.adjoint() - &sym));
    let scale = 1.0 + fro(&sym);
    if resid > 1e-9 * scale * (n as f64) {
        return Err(Error::NumericalFailure(format!(
            "eigendecomposition residual {resid:.3e} exceeds tolerance"
        )));
    }
    Ok((values, vectors))
}

/// Eigendecomposition of a real symmetric matrix, eigenvalues descending.
pub fn real_sym_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let sym = (m + m.transpose()).scale(0.5);
    let se = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| se.eigenvalues[b].partial_cmp(&se.eigenvalues[a]).unwrap());
    let values = order.iter().map(|&j| se.eigenvalues[j]).collect();
    let mut vectors = DMatrix::<f64>::zeros(n, n);
    for (k, &j) in order.iter().enumerate() {
        vectors.set_column(k, &se.eigenvectors.column(j));
    }
    (values, vectors)
}

/// Singular values, descending.
pub fn singular_values(m: &DMatrix<C64>) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().cloned().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

pub fn det_c(m: &DMatrix<C64>) -> C64 {
    m.clone().lu().determinant()
}

pub fn inverse_c(m: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    m.clone().try_inverse().ok_or(Error::NotInvertible)
}

/// Numerical rank from a descending list of singular values.
///
/// Values below `RANK_ZERO_REL * scale` count as zero, where `scale` is the
/// larger of the top singular value and `reference` (the natural size of
/// the inputs, so that a numerically zero matrix has rank 0). Any value
/// inside the relative band (RANK_BAND_LO, RANK_BAND_HI) makes the rank
/// ambiguous.
pub fn numerical_rank(sv: &[f64], reference: f64) -> Result<usize> {
    let smax = sv.first().cloned().unwrap_or(0.0).max(reference);
    if smax == 0.0 {
        return Ok(0);
    }
    for &s in sv {
        let rel = s / smax;
        if rel > tol::RANK_BAND_LO && rel < tol::RANK_BAND_HI {
            return Err(Error::AmbiguousRank(rel));
        }
    }
    Ok(sv.iter().filter(|&&s| s / smax >= tol::RANK_ZERO_REL).count())
}

/// Joint eigendecomposition of two commuting Hermitian matrices.
///
/// Returns pairwise eigenvalues (a_j, b_j) and a unitary whose column j is a
/// joint eigenvector. Eigenvalues of `a` are diagonalized first; degenerate
/// clusters are split by diagonalizing `b` restricted to each cluster.
pub fn commuting_herm_eigen(
    a: &DMatrix<C64>,
    b: &DMatrix<C64>,
) -> Result<JointEigen<C64>> {
    let n = a.nrows();
    if b.nrows() != n {
        return Err(Error::SizeMismatch { got: b.nrows(), expected: n });
    }
    let comm = fro(&(a * b - b * a));
    let scale = (1.0 + fro(a)) * (1.0 + fro(b));
    if comm > 1e-7 * scale {
        return Err(Error::NumericalFailure(format!(
            "matrices do not commute (defect {comm:.3e})"
        )));
    }
    let (avals, avecs) = herm_eigen(a)?;
    let aspread = avals.first().unwrap_or(&0.0) - avals.last().unwrap_or(&0.0);
    let cluster_tol = 1e-7 * (1.0 + aspread);
    let mut vectors = avecs.clone();
    let mut pairs: Vec<(f64, f64)> = avals.iter().map(|&v| (v, 0.0)).collect();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (avals[start] - avals[end]).abs() <= cluster_tol {
            end += 1;
        }
        let k = end - start;
        let basis = avecs.columns(start, k).clone_owned();
        if k == 1 {
            let v = basis.column(0);
            pairs[start].1 = (v.adjoint() * b * v)[(0, 0)].re;
        } else {
            let bsub = basis.adjoint() * b * &basis;
            let (bvals, bvecs) = herm_eigen(&bsub)?;
            let rotated = &basis * &bvecs;
            for j in 0..k {
                vectors.set_column(start + j, &rotated.column(j));
                pairs[start + j].1 = bvals[j];
                let v = rotated.column(j);
                pairs[start + j].0 = (v.adjoint() * a * v)[(0, 0)].re;
            }
        }
        start = end;
    }
    Ok((pairs, vectors))
}

/// Joint eigendecomposition of two commuting real symmetric matrices.
/// Same contract as [`commuting_herm_eigen`] but with real eigenvectors.
pub fn commuting_real_sym_eigen(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
) -> Result<JointEigen<f64>> {
    let n = a.nrows();
    let comm = (a * b - b * a).norm();
    let scale = (1.0 + a.norm()) * (1.0 + b.norm());
    if comm > 1e-7 * scale {
        return Err(Error::NumericalFailure(format!(
            "matrices do not commute (defect {comm:.3e})"
        )));
    }
    let (avals, avecs) = real_sym_eigen(a);
    let aspread = avals.first().unwrap_or(&0.0) - avals.last().unwrap_or(&0.0);
    let cluster_tol = 1e-7 * (1.0 + aspread);
    let mut vectors = avecs.clone();
    let mut pairs: Vec<(f64, f64)> = avals.iter().map(|&v| (v, 0.0)).collect();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (avals[start] - avals[end]).abs() <= cluster_tol {
            end += 1;
        }
        let k = end - start;
        let basis = avecs.columns(start, k).clone_owned();
        if k == 1 {
            let v = basis.column(0);
            pairs[start].1 = (v.transpose() * b * v)[(0, 0)];
        } else {
            let bsub = basis.transpose() * b * &basis;
            let (bvals, bvecs) = real_sym_eigen(&bsub);
            let rotated = &basis * &bvecs;
            for j in 0..k {
                vectors.set_column(start + j, &rotated.column(j));
                pairs[start + j].1 = bvals[j];
                let v = rotated.column(j);
                pairs[start + j].0 = (v.transpose() * a * v)[(0, 0)];
            }
        }
        start = end;
    }
    Ok((pairs, vectors))
}

/// Pfaffian of a skew-symmetric matrix by expansion along the first row.
/// Intended for small sizes (<= 8).
pub fn pfaffian(m: &DMatrix<C64>) -> Result<C64> {
    let n = m.nrows();
    if !n.is_multiple_of(2) {
        return Ok(cr(0.0));
    }
    let skew_defect = fro(&(m + m.transpose()));
    if skew_defect > 1e-8 * (1.0 + fro(m)) {
        return Err(Error::NumericalFailure(format!(
            "matrix is not skew-symmetric (defect {skew_defect:.3e})"
        )));
    }
    let idx: Vec<usize> = (0..n).collect();
    Ok(pf_rec(m, &idx))
}

fn pf_rec(m: &DMatrix<C64>, idx: &[usize]) -> C64 {
    let n = idx.len();
    if n == 0 {
        return cr(1.0);
    }
    if n == 2 {
        return m[(idx[0], idx[1])];
    }
    let mut acc = cr(0.0);
    let mut sign = 1.0;
    for j in 1..n {
        let mut rest: Vec<usize> = Vec::with_capacity(n - 2);
        for (k, &i) in idx.iter().enumerate() {
            if k != 0 && k != j {
                rest.push(i);
            }
        }
        acc += m[(idx[0], idx[j])] * cr(sign) * pf_rec(m, &rest);
        sign = -sign;
    }
    acc
}

/// Continuous logarithm of `t -> det(path(t))` along t in [0, 1].
///
/// `base_log` must be a logarithm of det(path(0)). Steps are halved until
/// each increment rotates the determinant by less than pi/2; fails if the
/// path crosses (or grazes) the singular set.
pub fn tracked_log_det(
    path: &dyn Fn(f64) -> DMatrix<C64>,
    base_log: C64,
) -> Result<C64> {
    track_log(&|t| det_c(&path(t)), base_log)
}

/// Continuous logarithm of a nonvanishing scalar path on [0, 1].
pub fn track_log(f: &dyn Fn(f64) -> C64, base_log: C64) -> Result<C64> {
    let f0 = f(0.0);
    let check = (f0.ln() - base_log).im.rem_euclid(2.0 * std::f64::consts::PI);
    let wrap = check.min(2.0 * std::f64::consts::PI - check);
    if f0.norm() == 0.0 || !f0.norm().is_finite() {
        return Err(Error::BranchTrackingFailure("singular at path start".into()));
    }
    if wrap > 1e-6 || (f0.norm().ln() - base_log.re).abs() > 1e-6 * (1.0 + base_log.re.abs()) {
        return Err(Error::BranchTrackingFailure(format!(
            "base value is not a logarithm of the path start (defect {wrap:.3e})"
        )));
    }
    let mut log = base_log;
    let mut t = 0.0f64;
    let mut prev = f0;
    let mut h = 1.0f64;
    let mut depth = 0u32;
    while t < 1.0 {
        let step = h.min(1.0 - t);
        let next = f(t + step);
        let ratio = next / prev;
        let ok = ratio.norm().is_finite()
            && ratio.norm() > 0.0
            && ratio.arg().abs() < std::f64::consts::FRAC_PI_2
            && ratio.norm() > 1e-6
            && ratio.norm() < 1e6;
        if ok {
            log += C64::new(ratio.norm().ln(), ratio.arg());
            t += step;
            prev = next;
            h = (h * 2.0).min(1.0);
            depth = depth.saturating_sub(1);
        } else {
            h *= 0.5;
            depth += 1;
            if depth > tol::BRANCH_MAX_DEPTH {
                return Err(Error::BranchTrackingFailure(format!(
                    "argument step did not settle near t = {t:.6}"
                )));
            }
        }
    }
    Ok(log)
}

/// Replace a tracked logarithm by the exact one on the same branch: keeps
/// the winding number from `tracked` but the value of `exact`.
pub fn snap_log(tracked: C64, exact_value: C64) -> C64 {
    let principal = exact_value.ln();
    let k = ((tracked.im - principal.im) / (2.0 * std::f64::consts::PI)).round();
    C64::new(principal.re, principal.im + 2.0 * std::f64::consts::PI * k)
}

/// Continuous argument of a unimodular scalar path; `base_arg` is an
/// argument of f(0).
pub fn track_arg(f: &dyn Fn(f64) -> C64, base_arg: f64) -> Result<f64> {
    let log = track_log(&|t| f(t), C64::new(f(0.0).norm().ln(), base_arg))?;
    Ok(log.im)
}
