//! Range inclusion, majorization and factorization for a pair of operators
//! with a common codomain.

use serde::{Deserialize, Serialize};

use crate::error::{dim_mismatch, Result};
use crate::linalg::{inclusion_residual, psd_geq, svd, QMatrix};

/// The three equivalent conditions `R(L) ⊆ R(M)`, `LL* ≤ c·MM*` and
/// `L = MX`, each decided by its own numerical route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DouglasReport {
    /// `R(L) ⊆ R(M)`; the headline answer.
    pub holds: bool,
    /// `‖(I − M M⁺) L‖ / ‖L‖` (zero when `L = 0`).
    pub range_residual: f64,
    /// Projection residual of `R(L)` against an orthonormal basis of `R(M)`,
    /// relative to `‖L‖`.
    pub basis_residual: f64,
    /// Minimal-norm factor `X = M⁺ L`, present when `holds`.
    pub factor: Option<QMatrix>,
    /// `‖M X − L‖ / ‖L‖` for `X = M⁺ L`.
    pub factor_residual: f64,
    /// `c = ‖X‖²`, present when `holds`.
    pub constant: Option<f64>,
    pub range_included: bool,
    pub factorizes: bool,
    pub majorized: bool,
    pub tol: f64,
}

impl DouglasReport {
    /// All three conditions reached the same verdict.
    pub fn consistent(&self) -> bool {
        self.range_included == self.factorizes && self.factorizes == self.majorized
    }
}

pub fn douglas_check(l: &QMatrix, m: &QMatrix, tol: f64) -> Result<DouglasReport> {
    if l.rows() != m.rows() {
        return Err(dim_mismatch("codomain dimension", m.rows(), l.rows()));
    }
    let l_norm = l.op_norm();
    let rel = |x: f64| if l_norm > 0.0 { x / l_norm } else { 0.0 };

    let m_svd = svd(m);
    let m_pinv = m_svd.pinv(None);
    let x = &m_pinv * l;
    let mx = m * &x;
    let projected = &(m * &m_pinv) * l;
    let range_residual = rel((l - &projected).op_norm());
    let factor_residual = rel((&mx - l).op_norm());
    let basis_residual = rel(inclusion_residual(l, &m_svd.range_basis(None)));

    let c = x.op_norm().powi(2);
    let slack = 1e-8 * (1.0 + l_norm * l_norm);
    let majorized = psd_geq(&(l * &l.adjoint()), &(m * &m.adjoint()).scale(c), slack)?;

    let range_included = basis_residual <= tol;
    let factorizes = factor_residual <= tol;
    let holds = range_residual <= tol;
    Ok(DouglasReport {
        holds,
        range_residual,
        basis_residual,
        factor: holds.then_some(x),
        factor_residual,
        constant: holds.then_some(c),
        range_included,
        factorizes,
        majorized,
        tol,
    })
}
