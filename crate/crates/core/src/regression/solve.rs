use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Smallest accepted ratio of the smallest to the largest singular value of
/// the (weighted) augmented design.
pub const RANK_TOLERANCE: f64 = 1e-10;

/// Solution of a (weighted) least-squares system with its condition estimate.
pub(crate) struct LeastSquares {
    /// `q × d`: column `i` holds the coefficients for response `i`.
    pub coefficients: DMatrix<f64>,
    pub condition: f64,
}

/// Solves `min_β Σ_j w_j ‖x̃_jᵀ β − y_j‖²` for every response column at once.
///
/// `design` is `n × q`, `responses` is `n × d`. Rows are scaled by `√w_j`
/// and the scaled system is solved through a thin QR factorization; the rank
/// check uses the singular values of the triangular factor, which equal
/// those of the scaled design.
pub(crate) fn weighted_least_squares(
    design: &DMatrix<f64>,
    responses: &DMatrix<f64>,
    weights: Option<&[f64]>,
) -> Result<LeastSquares> {
    let (n, q) = design.shape();
    if responses.nrows() != n {
        return Err(Error::ShapeMismatch(format!(
            "{n} design rows vs {} response rows",
            responses.nrows()
        )));
    }
    if n < q {
        return Err(Error::RankDeficient {
            condition: f64::INFINITY,
        });
    }
    let (mut a, mut b) = (design.clone(), responses.clone());
    if let Some(w) = weights {
        if w.len() != n {
            return Err(Error::ShapeMismatch(format!("{} weights for {n} rows", w.len())));
        }
        for (j, &wj) in w.iter().enumerate() {
            if !wj.is_finite() || wj <= 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "weight {j} must be finite and positive, got {wj}"
                )));
            }
            let s = wj.sqrt();
            a.row_mut(j).scale_mut(s);
            b.row_mut(j).scale_mut(s);
        }
    }

    let qr = a.qr();
    let r = qr.r();
    let condition = condition_of(&r);
    if !condition.is_finite() || condition > 1.0 / RANK_TOLERANCE {
        return Err(Error::RankDeficient { condition });
    }
    qr.q_tr_mul(&mut b);
    let rhs = b.rows(0, q).into_owned();
    let coefficients = r
        .solve_upper_triangular(&rhs)
        .ok_or(Error::RankDeficient { condition })?;
    Ok(LeastSquares {
        coefficients,
        condition,
    })
}

fn condition_of(r: &DMatrix<f64>) -> f64 {
    if r.ncols() == 0 {
        return 1.0;
    }
    let sv = r.singular_values();
    let max = sv.max();
    let min = sv.min();
    if max == 0.0 || min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}
