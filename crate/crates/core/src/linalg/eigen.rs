//! Hermitian eigendecomposition through the complex adjoint embedding.

use num_complex::Complex64;

use crate::error::{dim_mismatch, Error, Result};

use super::embed::{embed, unembed_vector, ComplexMatrix};
use super::matrix::QMatrix;
use super::vector::{inner_unchecked, QVector};
use super::HERMITIAN_TOL;

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-12;

/// Cyclic Jacobi for a complex Hermitian matrix.
///
/// Returns the (unsorted) eigenvalues and, if requested, the unitary matrix
/// whose columns are the matching eigenvectors. Sweeps stop once the
/// off-diagonal Frobenius norm drops to `1e-12 · ‖A‖_F`.
pub fn jacobi_hermitian(a: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    assert_eq!(a.rows, a.cols, "Jacobi requires a square matrix");
    let n = a.rows;
    let mut a = a.clone();
    let mut v = want_vectors.then(|| {
        let mut v = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            v.set(k, k, Complex64::new(1.0, 0.0));
        }
        v
    });

    let scale = a.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let target = OFF_DIAGONAL_TOL * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, v.as_mut(), p, q);
            }
        }
    }

    let values = (0..n).map(|k| a.get(k, k).re).collect();
    (values, v)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows;
    let mut s = 0.0;
    for (r, row) in a.data.chunks_exact(n).enumerate() {
        s += row.iter().enumerate().filter(|&(c, _)| c != r).map(|(_, z)| z.norm_sqr()).sum::<f64>();
    }
    s.sqrt()
}

/// Annihilates `a[p][q]` with `U = diag(1, conj(e)) · R(c, s)` acting on
/// columns `p, q`, where `e = a[p][q] / |a[p][q]|`.
fn rotate(a: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let n = a.rows;
    let apq = a.get(p, q);
    let g = apq.norm();
    if g == 0.0 {
        return;
    }
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    // skip entries already negligible against both diagonal entries
    if g <= f64::EPSILON * 1e-3 * (app.abs() + aqq.abs()) {
        a.set(p, q, Complex64::new(0.0, 0.0));
        a.set(q, p, Complex64::new(0.0, 0.0));
        return;
    }
    let e = apq / g;
    let theta = (aqq - app) / (2.0 * g);
    let t =
        if theta.abs() > 1e150 { 0.5 / theta } else { theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt()) };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let (ce_s, ce_c) = (e.conj() * s, e.conj() * c);
    let (e_s, e_c) = (e * s, e * c);

    // A ← A U
    let d = &mut a.data;
    for k in 0..n {
        let (akp, akq) = (d[k * n + p], d[k * n + q]);
        d[k * n + p] = akp * c - akq * ce_s;
        d[k * n + q] = akp * s + akq * ce_c;
    }
    // A ← U^H A
    for k in 0..n {
        let (apk, aqk) = (d[p * n + k], d[q * n + k]);
        d[p * n + k] = apk * c - aqk * e_s;
        d[q * n + k] = apk * s + aqk * e_c;
    }
    let zero = Complex64::new(0.0, 0.0);
    d[p * n + q] = zero;
    d[q * n + p] = zero;
    d[p * n + p].im = 0.0;
    d[q * n + q].im = 0.0;

    if let Some(v) = v {
        let d = &mut v.data;
        for k in 0..n {
            let (vkp, vkq) = (d[k * n + p], d[k * n + q]);
            d[k * n + p] = vkp * c - vkq * ce_s;
            d[k * n + q] = vkp * s + vkq * ce_c;
        }
    }
}

/// Eigenpairs of a quaternionic Hermitian matrix, ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors; `H v = v λ`.
    pub vectors: Vec<QVector>,
}

impl HermitianEigen {
    pub fn min(&self) -> Option<f64> {
        self.values.first().copied()
    }

    pub fn max(&self) -> Option<f64> {
        self.values.last().copied()
    }
}

fn checked_hermitian(h: &QMatrix) -> Result<QMatrix> {
    if !h.is_square() {
        return Err(dim_mismatch("Hermitian matrix column count", h.rows(), h.cols()));
    }
    let defect = h.hermitian_defect().unwrap_or(f64::INFINITY);
    if defect > HERMITIAN_TOL * (1.0 + h.frobenius_norm()) {
        return Err(Error::NotHermitian { residual: defect });
    }
    Ok(h.hermitian_part())
}

/// Eigenvalues only, ascending. Each eigenvalue of `χ(H)` appears twice;
/// pairs are averaged.
pub fn hermitian_eigenvalues(h: &QMatrix) -> Result<Vec<f64>> {
    let hs = checked_hermitian(h)?;
    let (mut vals, _) = jacobi_hermitian(&embed(&hs), false);
    vals.sort_by(f64::total_cmp);
    Ok(vals.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Full eigendecomposition `H v_k = v_k λ_k`.
///
/// The complex solver returns `2n` eigenvectors of `χ(H)`; each maps to a
/// quaternionic eigenvector, and the pair belonging to one quaternionic
/// direction (`v` and `v·j`) is collapsed by greedy pivoted Gram–Schmidt:
/// the candidate with the largest component outside the span accepted so
/// far is taken next. Residual components stay inside their eigenspace, so
/// the chosen vectors remain eigenvectors. Eigenvalues are Rayleigh
/// quotients of the accepted vectors.
pub fn hermitian_eig(h: &QMatrix) -> Result<HermitianEigen> {
    let hs = checked_hermitian(h)?;
    let n = hs.rows();
    let (_, vecs) = jacobi_hermitian(&embed(&hs), true);
    let vecs = vecs.expect("eigenvectors requested");

    let mut candidates: Vec<QVector> = (0..2 * n)
        .map(|c| {
            let col: Vec<Complex64> = (0..2 * n).map(|r| vecs.get(r, c)).collect();
            unembed_vector(&col)
        })
        .collect();
    let mut remaining: Vec<usize> = (0..2 * n).collect();
    let mut accepted: Vec<QVector> = Vec::with_capacity(n);

    while accepted.len() < n && !remaining.is_empty() {
        let (pos, _) = remaining
            .iter()
            .enumerate()
            .map(|(pos, &i)| (pos, candidates[i].norm_sqr()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty");
        let idx = remaining.swap_remove(pos);
        let mut z = candidates[idx].clone();
        for a in &accepted {
            let coef = inner_unchecked(a.as_slice(), z.as_slice());
            z.axpy(a, -coef);
        }
        let Some(z) = z.normalized() else { break };
        for &i in &remaining {
            let coef = inner_unchecked(z.as_slice(), candidates[i].as_slice());
            candidates[i].axpy(&z, -coef);
        }
        accepted.push(z);
    }

    let mut pairs: Vec<(f64, QVector)> = accepted
        .into_iter()
        .map(|v| {
            let hv = &hs * &v;
            (inner_unchecked(v.as_slice(), hv.as_slice()).a0, v)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (values, vectors) = pairs.into_iter().unzip();
    Ok(HermitianEigen { values, vectors })
}
