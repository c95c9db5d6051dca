//! The Toeplitz Hessenberg family `A(n, k, t)` and its `t -> 0` limit `B(k)`.
//!
//! `A(n, k, t)` has first column `(1, 1, 0, ..., 0)` and first row
//! `(1, 0 (k times), a_1, ..., a_{n-k-1})`, where the coefficients `a_j` are
//! fixed by requiring every leading principal minor of order `k + j + 1` to
//! equal `t^j`. For `n <= k + 1` no coefficient fits and the matrix is the
//! lower bidiagonal matrix of ones.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{format_fraction, int, positive_part, pow, sign_pow, RatMatrix, Rational};

/// Parameters of `A(n, k, t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: usize,
    pub k: usize,
    pub t: Rational,
}

impl FamilyParams {
    pub fn new(n: usize, k: usize, t: Rational) -> Result<Self> {
        let params = Self { n, k, t };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParameter("matrix order n must be >= 1".into()));
        }
        if self.k == 0 {
            return Err(Error::InvalidParameter("band parameter k must be >= 1".into()));
        }
        check_t(&self.t)
    }

    pub fn to_json_value(&self) -> ParamsJson {
        ParamsJson {
            n: Some(self.n),
            k: self.k,
            t: Some(format_fraction(&self.t)),
            limit: false,
        }
    }
}

/// Parameter block echoed into reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    pub limit: bool,
}

pub(crate) fn check_t(t: &Rational) -> Result<()> {
    if !t.is_positive() || *t >= Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "t must satisfy 0 < t < 1, got {}",
            format_fraction(t)
        )));
    }
    Ok(())
}

/// Closed-form coefficient: `(-1)^k (1-t)` for `j = 1`, otherwise
/// `(-1)^(k+j) t^(j-2) (1-t)^2`. It agrees with [`coeff_a_solve`] for
/// `j <= k + 2` only; past that the lower leading minors are no longer 1
/// and the solve gives different values.
pub fn coeff_a(k: usize, t: &Rational, j: usize) -> Result<Rational> {
    if j == 0 {
        return Err(Error::InvalidParameter("coefficient index j must be >= 1".into()));
    }
    check_t(t)?;
    let one_minus_t = Rational::one() - t;
    Ok(match j {
        1 => sign_pow(k) * one_minus_t,
        2 => sign_pow(k + 2) * &one_minus_t * &one_minus_t,
        _ => sign_pow(k + j) * pow(t, j - 2) * &one_minus_t * &one_minus_t,
    })
}

/// Determinant of the leading block of order `m` once the coefficients
/// below it are fixed: 1 up to order `k + 1`, then `t^(m-k-1)`.
fn leading_det(k: usize, t: &Rational, m: usize) -> Rational {
    pow(t, positive_part(m as i64 - k as i64 - 1))
}

/// Solves for `a_1, ..., a_{n-k-1}` one at a time from the first-row
/// expansion
///
/// `det A(k+j+1) = det A(k+j) + sum_{l=1..j} (-1)^(k+l) a_l det A(j-l)`
///
/// with left-hand side `t^j`. The coefficient of `a_j` is `(-1)^(k+j)`, so
/// each step is a single division-free solve. Does not use [`coeff_a`].
pub fn coeff_a_solve(n: usize, k: usize, t: &Rational) -> Result<Vec<Rational>> {
    if n <= k + 1 {
        return Err(Error::InvalidParameter(format!(
            "no coefficients exist for n = {n} <= k + 1 = {}",
            k + 1
        )));
    }
    check_t(t)?;
    let mut a: Vec<Rational> = Vec::with_capacity(n - k - 1);
    for j in 1..=n - k - 1 {
        let mut rhs = pow(t, j) - leading_det(k, t, k + j);
        for (idx, a_l) in a.iter().enumerate() {
            let l = idx + 1;
            rhs -= sign_pow(k + l) * a_l * leading_det(k, t, j - l);
        }
        a.push(sign_pow(k + j) * rhs);
    }
    Ok(a)
}

/// Toeplitz matrix from its first column and first row (which share the
/// diagonal entry).
pub fn toeplitz(first_col: &[Rational], first_row: &[Rational]) -> Result<RatMatrix> {
    if first_col.first() != first_row.first() {
        return Err(Error::InvalidParameter(
            "first row and column disagree on the diagonal".into(),
        ));
    }
    let (r, c) = (first_col.len(), first_row.len());
    Ok(RatMatrix::from_fn(r, c, |i, j| {
        if j >= i {
            first_row[j - i].clone()
        } else {
            first_col[i - j].clone()
        }
    }))
}

fn first_column(n: usize) -> Vec<Rational> {
    (0..n)
        .map(|i| if i < 2 { Rational::one() } else { Rational::zero() })
        .collect()
}

/// Last `j` for which [`coeff_a`] matches the defining relation.
pub fn closed_form_limit(k: usize) -> usize {
    k + 2
}

/// `A(n, k, t)`. Entries come from the sequential solve of the defining
/// relation; wherever the closed form applies the two must agree.
pub fn build_a(params: &FamilyParams) -> Result<RatMatrix> {
    params.validate()?;
    let FamilyParams { n, k, ref t } = *params;
    let mut row = vec![Rational::zero(); n];
    row[0] = Rational::one();
    if n > k + 1 {
        let solved = coeff_a_solve(n, k, t)?;
        for (idx, a) in solved.into_iter().enumerate() {
            let j = idx + 1;
            if j <= closed_form_limit(k) && coeff_a(k, t, j)? != a {
                return Err(Error::InvalidParameter(format!(
                    "closed-form a_{j} disagrees with the defining relation"
                )));
            }
            row[k + 1 + idx] = a;
        }
    }
    toeplitz(&first_column(n), &row)
}

/// `B(k)`, the `(2k+2)`-order limit of `A(2k+2, k, t)` as `t -> 0`: first row
/// `(1, 0 (k times), (-1)^k, (-1)^k, 0 (k-1 times))`.
pub fn build_b(k: usize) -> Result<RatMatrix> {
    if k == 0 {
        return Err(Error::InvalidParameter("band parameter k must be >= 1".into()));
    }
    let n = 2 * k + 2;
    let mut row = vec![Rational::zero(); n];
    row[0] = Rational::one();
    row[k + 1] = sign_pow(k);
    row[k + 2] = sign_pow(k);
    toeplitz(&first_column(n), &row)
}

/// `A[i : i+j-1] = t^((j-k-1)_+)` for any window of length `j` starting at
/// `i` (1-based).
pub fn minor_formula(n: usize, k: usize, t: &Rational, i: usize, j: usize) -> Result<Rational> {
    if i == 0 || j == 0 || i + j - 1 > n {
        return Err(Error::InvalidParameter(format!(
            "window {i}:{} is outside 1..={n}",
            i + j - 1
        )));
    }
    Ok(pow(t, positive_part(j as i64 - k as i64 - 1)))
}

/// The bidiagonal leading block shared by every family member of order
/// at most `k + 1`.
pub fn bidiagonal_ones(n: usize) -> RatMatrix {
    RatMatrix::from_fn(
        n,
        n,
        |i, j| {
            if i == j || i == j + 1 {
                int(1)
            } else {
                Rational::zero()
            }
        },
    )
}
