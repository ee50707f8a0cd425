//! Truncated power series in `q` with polynomial coefficients in `t`, and the
//! Göttsche product giving the Poincaré polynomials of the Hilbert schemes of
//! points on the projective plane:
//!
//! ```text
//! sum_l P(P2^[l]) q^l = prod_{k>=1} 1 / ((1 - t^(2k-2) q^k)(1 - t^(2k) q^k)(1 - t^(2k+2) q^k))
//! ```
//!
//! The three factors per `k` come from the Betti numbers `(1, 0, 1, 0, 1)`
//! of the plane.

use thiserror::Error;

use crate::IntPoly;

/// Largest number of points computed unless the caller raises it.
pub const DEFAULT_MAX_POINTS: usize = 30;

/// Exponent offsets `2k + shift` of the three factors per `k`.
pub const PLANE_BETTI_SHIFTS: [i32; 3] = [-2, 0, 2];

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("factor q^{k} lies beyond the truncation order {order}")]
    BeyondTruncation { k: usize, order: usize },
    #[error("factor index must be positive")]
    ZeroIndex,
    #[error("betti shift {0} is not one of -2, 0, 2")]
    BadShift(i32),
    #[error("{requested} points exceeds the configured maximum {max}")]
    TooManyPoints { requested: usize, max: usize },
    #[error("truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
}

/// A series `sum_{j <= order} c_j(t) q^j`, kept modulo `q^(order + 1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    order: usize,
    coeffs: Vec<IntPoly>,
}

impl QSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![IntPoly::zero(); order + 1];
        coeffs[0] = IntPoly::one();
        QSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, j: usize) -> &IntPoly {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[IntPoly] {
        &self.coeffs
    }

    /// Product modulo `q^(order+1)`, dropping `t`-degrees above `max_t_degree`.
    pub fn mul_capped(&self, other: &Self, max_t_degree: usize) -> Result<Self, SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch(self.order, other.order));
        }
        let mut coeffs = vec![IntPoly::zero(); self.order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(self.order + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                let prod = a
                    .mul_truncated(b, max_t_degree)
                    .expect("all coefficients are in t");
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        Ok(QSeries {
            order: self.order,
            coeffs,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.mul_capped(other, usize::MAX - 1)
    }
}

/// `1 / (1 - t^(2k + shift) q^k)` modulo `q^(order+1)`.
pub fn goettsche_factor(k: usize, shift: i32, order: usize) -> Result<QSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::ZeroIndex);
    }
    if !PLANE_BETTI_SHIFTS.contains(&shift) {
        return Err(SeriesError::BadShift(shift));
    }
    if k > order {
        return Err(SeriesError::BeyondTruncation { k, order });
    }
    let t_exp = (2 * k as i64 + shift as i64) as usize;
    let mut series = QSeries::one(order);
    for n in 1..=order / k {
        series.coeffs[n * k] = IntPoly::var_power(t_exp * n);
    }
    Ok(series)
}

/// The full truncated product up to `q^order`, with `t`-degrees capped at the
/// largest one that can reach a kept coefficient (`4 * order`).
pub fn goettsche_product(order: usize) -> QSeries {
    let cap = 4 * order;
    let mut acc = QSeries::one(order);
    for k in 1..=order {
        for shift in PLANE_BETTI_SHIFTS {
            let f = goettsche_factor(k, shift, order).expect("k within truncation");
            acc = acc.mul_capped(&f, cap).expect("equal orders");
        }
    }
    acc
}

/// Poincaré polynomial of the Hilbert scheme of `l` points on the plane.
pub fn hilb_poincare(l: usize) -> Result<IntPoly, SeriesError> {
    hilb_poincare_with_max(l, DEFAULT_MAX_POINTS)
}

pub fn hilb_poincare_with_max(l: usize, max: usize) -> Result<IntPoly, SeriesError> {
    if l > max {
        return Err(SeriesError::TooManyPoints { requested: l, max });
    }
    Ok(goettsche_product(l).coeffs[l].clone())
}

/// Poincaré polynomials for `0..=max_l` from a single product.
pub fn hilb_poincare_table(max_l: usize) -> Vec<IntPoly> {
    goettsche_product(max_l).coeffs
}
