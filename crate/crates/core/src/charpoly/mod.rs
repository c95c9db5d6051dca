//! Exact characteristic polynomials and the family's named polynomials.
//!
//! Every polynomial here is in the variable `λ`, and characteristic
//! polynomials follow the `det(A - λI)` sign convention.

mod named;
mod polynomial;

pub use named::{eta, eta_display, g_determinant, g_poly, nu, phi, phi_tilde, psi};
pub use polynomial::{Polynomial, PolynomialJson};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{RatMatrix, Rational};

/// `det(A - λI)`. Hessenberg input goes through the leading-block
/// recurrence; anything else through fraction-free elimination over `Q[λ]`.
pub fn charpoly(a: &RatMatrix) -> Result<Polynomial> {
    a.order()?;
    if a.is_hessenberg() {
        Ok(hessenberg_leading_charpolys(a)?.pop().expect("at least p_0"))
    } else {
        charpoly_general(a)
    }
}

/// `det(A_m - λI)` for every leading block `A_m`, `m = 0..=n`, of a matrix
/// with zeros below the first subdiagonal.
///
/// Expanding the last column of the order-`m` block gives
/// `p_m = (h_mm - λ) p_{m-1} + Σ_{i<m} (-1)^(m-i) h_im (h_{i+1,i} ··· h_{m,m-1}) p_{i-1}`.
pub fn hessenberg_leading_charpolys(a: &RatMatrix) -> Result<Vec<Polynomial>> {
    let n = a.order()?;
    if !a.is_hessenberg() {
        return Err(Error::InvalidParameter(
            "leading-block recurrence needs zeros below the subdiagonal".into(),
        ));
    }
    let mut p: Vec<Polynomial> = Vec::with_capacity(n + 1);
    p.push(Polynomial::one());
    for m in 1..=n {
        let col = m - 1;
        let diag = Polynomial::new(vec![a.get(col, col).clone(), -Rational::one()]);
        let mut next = &diag * &p[m - 1];
        // Walk i = m-1 down to 1, growing the subdiagonal product as we go.
        let mut sub = Rational::one();
        for i in (1..m).rev() {
            sub *= a.get(i, i - 1);
            if sub.is_zero() {
                break;
            }
            let h = a.get(i - 1, col);
            if h.is_zero() {
                continue;
            }
            let mut factor = h * &sub;
            if (m - i) % 2 == 1 {
                factor = -factor;
            }
            next = &next + &p[i - 1].scale(&factor);
        }
        p.push(next);
    }
    Ok(p)
}

/// `det(A - λI)` by Bareiss elimination with polynomial entries. Works for
/// any square matrix; the Hessenberg path is preferred for the family.
pub fn charpoly_general(a: &RatMatrix) -> Result<Polynomial> {
    let n = a.order()?;
    let m: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Polynomial::new(vec![a.get(i, j).clone(), -Rational::one()])
                    } else {
                        Polynomial::constant(a.get(i, j).clone())
                    }
                })
                .collect()
        })
        .collect();
    polynomial_det(m)
}

/// Determinant of a square matrix of polynomials, by fraction-free
/// elimination (every division is exact in `Q[λ]`).
pub fn polynomial_det(mut m: Vec<Vec<Polynomial>>) -> Result<Polynomial> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: m.first().map_or(0, Vec::len),
        });
    }
    if n == 0 {
        return Ok(Polynomial::one());
    }
    let mut negate = false;
    let mut prev = Polynomial::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(Polynomial::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev, "Bareiss step")?;
            }
            m[i][k] = Polynomial::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}
