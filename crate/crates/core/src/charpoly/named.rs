//! Closed forms of the polynomials that drive the eigenvalue-monotonicity
//! and instability arguments. `x` below stands for `1 - λ`.

use num_traits::{One, Zero};

use super::polynomial::Polynomial;
use super::polynomial_det;
use crate::error::{Error, Result};
use crate::exact::{binomial, int, pow, Rational};
use crate::family::{check_t, coeff_a};

fn x_pow(e: usize) -> Polynomial {
    Polynomial::one_minus_x().pow(e)
}

fn check_j(k: usize, j: usize) -> Result<()> {
    if j == 0 || j > k + 1 {
        return Err(Error::InvalidParameter(format!(
            "j = {j} outside 1..={} for k = {k}",
            k + 1
        )));
    }
    Ok(())
}

/// `φ_j = det(A(k+j+1, k, t) - λI)` in closed form:
///
/// * `j = 1`: `x^(k+2) - (1-t)`
/// * `j > 1`: `x^(j+k+1) - j(1-t)x^(j-1) + (j-1)(1-t)^2 x^(j-2)
///   + t(1-t)^2 [t^(j-1) - (j-1)t x^(j-2) + (j-2)x^(j-1)] / (x-t)^2`
///
/// The bracket has a double root at `x = t`, so the quotient is a
/// polynomial; a remainder is reported as an error.
pub fn phi(k: usize, t: &Rational, j: usize) -> Result<Polynomial> {
    check_j(k, j)?;
    check_t(t)?;
    let one_minus_t = Rational::one() - t;
    if j == 1 {
        return Ok(&x_pow(k + 2) - &Polynomial::constant(one_minus_t));
    }
    let sq = &one_minus_t * &one_minus_t;
    let mut out = x_pow(j + k + 1);
    out = &out - &x_pow(j - 1).scale(&(int(j as i64) * &one_minus_t));
    out = &out + &x_pow(j - 2).scale(&(int(j as i64 - 1) * &sq));

    let bracket = &(&Polynomial::constant(pow(t, j - 1)) - &x_pow(j - 2).scale(&(int(j as i64 - 1) * t)))
        + &x_pow(j - 1).scale(&int(j as i64 - 2));
    let x_minus_t = Polynomial::new(vec![Rational::one() - t, -Rational::one()]);
    let quotient = bracket.div_exact(&x_minus_t.pow(2), "phi bracket over ((1-λ)-t)^2")?;
    Ok(&out + &quotient.scale(&(t * &sq)))
}

/// `φ~_j` defined by `φ_j(λ) = t^j - λ φ~_j(λ)`.
pub fn phi_tilde(k: usize, t: &Rational, j: usize) -> Result<Polynomial> {
    let p = phi(k, t, j)?;
    let shifted = &Polynomial::constant(pow(t, j)) - &p;
    shifted.div_exact(&Polynomial::x(), "t^j - phi over λ")
}

/// `g_j = -(1-t)x^(j-1) + (1-t)^2 (x^(j-1) - t^(j-1)) / (x - t)`, with the
/// quotient expanded as `Σ_{i=0}^{j-2} x^i t^(j-2-i)`. `g_1 = -(1-t)`.
pub fn g_poly(k: usize, t: &Rational, j: usize) -> Result<Polynomial> {
    let _ = k;
    if j == 0 {
        return Err(Error::InvalidParameter("j must be >= 1".into()));
    }
    check_t(t)?;
    let one_minus_t = Rational::one() - t;
    let mut geometric = Polynomial::zero();
    for i in 0..j.saturating_sub(1) {
        geometric = &geometric + &x_pow(i).scale(&pow(t, j - 2 - i));
    }
    Ok(&geometric.scale(&(&one_minus_t * &one_minus_t)) - &x_pow(j - 1).scale(&one_minus_t))
}

/// `g_j` straight from its determinant definition:
/// `(-1)^(k+1) det` of the `j x j` matrix with `1 - λ` on the diagonal
/// (except the last entry), ones below it, and last column
/// `(a_j, a_{j-1}, ..., a_1)`.
pub fn g_determinant(k: usize, t: &Rational, j: usize) -> Result<Polynomial> {
    if j == 0 {
        return Err(Error::InvalidParameter("j must be >= 1".into()));
    }
    let mut m = vec![vec![Polynomial::zero(); j]; j];
    for i in 0..j {
        if i + 1 < j {
            m[i][i] = Polynomial::one_minus_x();
        }
        if i > 0 {
            m[i][i - 1] = Polynomial::one();
        }
        m[i][j - 1] = Polynomial::constant(coeff_a(k, t, j - i)?);
    }
    let d = polynomial_det(m)?;
    Ok(if k.is_multiple_of(2) { -d } else { d })
}

/// `ν_j = lim_{t→0} φ_j = x^(j+k+1) - j x^(j-1) + (j-1) x^(j-2)`.
pub fn nu(k: usize, j: usize) -> Result<Polynomial> {
    if j == 0 {
        return Err(Error::InvalidParameter("j must be >= 1".into()));
    }
    let mut out = &x_pow(j + k + 1) - &x_pow(j - 1).scale(&int(j as i64));
    if j >= 2 {
        out = &out + &x_pow(j - 2).scale(&int(j as i64 - 1));
    }
    Ok(out)
}

/// `ψ_k(λ) = ν_{k+1}(-λ) / (1+λ)^(k-1)`, which works out to
/// `(1+λ)^(k+3) - (k+1)(1+λ) + k`.
pub fn psi(k: usize) -> Result<Polynomial> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be >= 1".into()));
    }
    let numerator = nu(k, k + 1)?.compose_neg();
    let divisor = Polynomial::from_i64(&[1, 1]).pow(k - 1);
    numerator.div_exact(&divisor, "nu(-λ) over (1+λ)^(k-1)")
}

/// `η_k(λ) = λ^(k+3) ψ_k(1/λ) = 2λ^(k+2) + Σ_{j=2}^{k+3} C(k+3, j) λ^(k+3-j)`.
pub fn eta(k: usize) -> Result<Polynomial> {
    Ok(psi(k)?.reverse(k + 3))
}

/// The displayed expansion of `η_k`, built from binomials alone.
pub fn eta_display(k: usize) -> Polynomial {
    let m = k as u64 + 3;
    let mut coeffs = vec![Rational::zero(); k + 3];
    coeffs[k + 2] = int(2);
    for j in 2..=m {
        coeffs[(m - j) as usize] = Rational::from_integer(binomial(m, j));
    }
    Polynomial::new(coeffs)
}
