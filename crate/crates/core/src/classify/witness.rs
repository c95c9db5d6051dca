//! Failure witnesses and their independent re-verification.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::spectral::varga_bound;
use crate::charpoly::{charpoly, charpoly_general};
use crate::error::Result;
use crate::exact::{format_fraction, IndexSet, RatMatrix, Rational, DET_ORACLE_CAP};
use crate::rootfind::{compare_roots, ComplexRoot, RealRootIsolator, RootEnclosure};

/// Data exhibiting a violated defining inequality.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `A[α] <= 0`.
    PrincipalMinor { alpha: IndexSet, value: Rational },
    /// `A[α, β] A[β, α] < 0` for an almost-principal pair.
    AlmostPrincipal {
        alpha: IndexSet,
        beta: IndexSet,
        forward: Rational,
        backward: Rational,
    },
    /// `A[α] A[β] < A[α ∪ β] A[α ∩ β]`.
    HadamardFischer {
        alpha: IndexSet,
        beta: IndexSet,
        minor_alpha: Rational,
        minor_beta: Rational,
        minor_union: Rational,
        minor_intersection: Rational,
    },
    /// `A(α)` has no real eigenvalue.
    InfiniteMinEig { alpha: IndexSet },
    /// `l(A(α)) > l(A(β))` although `β ⊂ α`.
    Monotonicity {
        alpha: IndexSet,
        beta: IndexSet,
        l_alpha: RootEnclosure,
        l_beta: RootEnclosure,
    },
    /// `l(A) < 0`.
    NegativeMinEig { l: RootEnclosure },
    /// An eigenvalue with non-positive real part; `boundary` when some
    /// eigenvalue lies exactly on the imaginary axis.
    Eigenvalue { root: ComplexRoot, boundary: bool },
    /// An eigenvalue outside the wedge around `l(A)`.
    Wedge {
        root: ComplexRoot,
        l: RootEnclosure,
        angle: f64,
        bound: f64,
    },
    /// `(x+y-k-1)_+ + (x+z-k-1)_+ > (x-k-1)_+ + (x+y+z-k-1)_+`.
    ExponentInequality { x: usize, y: usize, z: usize, k: usize },
}

fn set_json(s: &IndexSet) -> Value {
    Value::from(s.members().to_vec())
}

fn rat_json(r: &Rational) -> Value {
    Value::from(format_fraction(r))
}

fn enclosure_json(e: &RootEnclosure, digits: usize) -> Value {
    serde_json::to_value(e.to_json_value(digits)).expect("plain struct")
}

fn principal_exact(a: &RatMatrix, alpha: &IndexSet) -> Result<Rational> {
    let sub = a.principal(alpha)?;
    if sub.rows() <= DET_ORACLE_CAP {
        sub.det_oracle()
    } else {
        sub.det()
    }
}

fn min_real_root_general(a: &RatMatrix, alpha: &IndexSet) -> Result<Option<(RealRootIsolator, RootEnclosure)>> {
    let p = charpoly_general(&a.principal(alpha)?)?;
    let iso = RealRootIsolator::new(&p)?;
    Ok(iso.least().map(|e| (iso, e)))
}

impl Witness {
    pub fn kind(&self) -> &'static str {
        match self {
            Witness::PrincipalMinor { .. } => "principal_minor",
            Witness::AlmostPrincipal { .. } => "almost_principal",
            Witness::HadamardFischer { .. } => "hadamard_fischer",
            Witness::InfiniteMinEig { .. } => "infinite_min_eig",
            Witness::Monotonicity { .. } => "monotonicity",
            Witness::NegativeMinEig { .. } => "negative_min_eig",
            Witness::Eigenvalue { .. } => "eigenvalue",
            Witness::Wedge { .. } => "wedge",
            Witness::ExponentInequality { .. } => "exponent_inequality",
        }
    }

    pub fn to_json_value(&self, digits: usize) -> Value {
        let mut v = match self {
            Witness::PrincipalMinor { alpha, value } => json!({
                "alpha": set_json(alpha),
                "value": rat_json(value),
            }),
            Witness::AlmostPrincipal {
                alpha,
                beta,
                forward,
                backward,
            } => json!({
                "alpha": set_json(alpha),
                "beta": set_json(beta),
                "minor_alpha_beta": rat_json(forward),
                "minor_beta_alpha": rat_json(backward),
                "product": rat_json(&(forward * backward)),
            }),
            Witness::HadamardFischer {
                alpha,
                beta,
                minor_alpha,
                minor_beta,
                minor_union,
                minor_intersection,
            } => json!({
                "alpha": set_json(alpha),
                "beta": set_json(beta),
                "minor_alpha": rat_json(minor_alpha),
                "minor_beta": rat_json(minor_beta),
                "minor_union": rat_json(minor_union),
                "minor_intersection": rat_json(minor_intersection),
            }),
            Witness::InfiniteMinEig { alpha } => json!({ "alpha": set_json(alpha) }),
            Witness::Monotonicity {
                alpha,
                beta,
                l_alpha,
                l_beta,
            } => json!({
                "alpha": set_json(alpha),
                "beta": set_json(beta),
                "l_alpha": enclosure_json(l_alpha, digits),
                "l_beta": enclosure_json(l_beta, digits),
            }),
            Witness::NegativeMinEig { l } => json!({ "l": enclosure_json(l, digits) }),
            Witness::Eigenvalue { root, boundary } => json!({
                "eigenvalue": root.to_json_value(digits),
                "conjugate_pair": !root.is_real(),
                "boundary": boundary,
            }),
            Witness::Wedge { root, l, angle, bound } => json!({
                "eigenvalue": root.to_json_value(digits),
                "l": enclosure_json(l, digits),
                "angle": format!("{angle:.17e}"),
                "bound": format!("{bound:.17e}"),
            }),
            Witness::ExponentInequality { x, y, z, k } => json!({ "x": x, "y": y, "z": z, "k": k }),
        };
        v.as_object_mut()
            .expect("object")
            .insert("kind".into(), Value::from(self.kind()));
        v
    }

    /// Recompute the violated inequality from `a` alone. Minors go through
    /// cofactor expansion when small, characteristic polynomials through
    /// general elimination, so the check shares little code with the sweep
    /// that produced the witness.
    pub fn verify(&self, a: &RatMatrix) -> Result<bool> {
        let n = a.order()?;
        Ok(match self {
            Witness::PrincipalMinor { alpha, value } => {
                let v = principal_exact(a, alpha)?;
                !alpha.is_empty() && &v == value && !v.is_positive()
            }
            Witness::AlmostPrincipal {
                alpha,
                beta,
                forward,
                backward,
            } => {
                let union = alpha.union(beta);
                let shape = alpha.len() == beta.len() && union.len() == alpha.len() + 1;
                let f = a.submatrix(alpha, beta)?;
                let b = a.submatrix(beta, alpha)?;
                let (f, b) = if f.rows() <= DET_ORACLE_CAP {
                    (f.det_oracle()?, b.det_oracle()?)
                } else {
                    (f.det()?, b.det()?)
                };
                shape && &f == forward && &b == backward && (f * b).is_negative()
            }
            Witness::HadamardFischer {
                alpha,
                beta,
                minor_alpha,
                minor_beta,
                minor_union,
                minor_intersection,
            } => {
                let ma = principal_exact(a, alpha)?;
                let mb = principal_exact(a, beta)?;
                let mu = principal_exact(a, &alpha.union(beta))?;
                let mi = principal_exact(a, &alpha.intersection(beta))?;
                &ma == minor_alpha
                    && &mb == minor_beta
                    && &mu == minor_union
                    && &mi == minor_intersection
                    && &ma * &mb < &mu * &mi
            }
            Witness::InfiniteMinEig { alpha } => !alpha.is_empty() && min_real_root_general(a, alpha)?.is_none(),
            Witness::Monotonicity { alpha, beta, .. } => {
                let subset = !beta.is_empty() && beta.members().iter().all(|&i| alpha.contains(i));
                match (min_real_root_general(a, alpha)?, min_real_root_general(a, beta)?) {
                    (Some((ia, ea)), Some((ib, eb))) => {
                        subset && compare_roots(&ia, &ea, &ib, &eb) == Ordering::Greater
                    }
                    // l(α) = ∞ > l(β)
                    (None, Some(_)) => subset,
                    _ => false,
                }
            }
            Witness::NegativeMinEig { .. } => match min_real_root_general(a, &IndexSet::full(n))? {
                Some((iso, e)) => iso.compare_with(&e, &Rational::zero()) == Ordering::Less,
                None => false,
            },
            Witness::Eigenvalue { root, boundary } => {
                let p = charpoly(a)?;
                let close = residual_ok(&p, root);
                close && (*boundary || !root.re_exact().is_positive())
            }
            Witness::Wedge { root, l, bound, .. } => {
                let p = charpoly(a)?;
                let lm = l.midpoint();
                let dx = crate::exact::to_f64(&(root.re_exact() - &lm));
                let dy = crate::exact::to_f64(&root.im_exact()).abs();
                let angle = dy.atan2(dx);
                residual_ok(&p, root) && (bound - varga_bound(n)).abs() < 1e-15 && angle > *bound
            }
            Witness::ExponentInequality { x, y, z, k } => {
                let f = |m: usize| m.saturating_sub(k + 1);
                f(x + y) + f(x + z) > f(*x) + f(x + y + z)
            }
        })
    }
}

/// `|p(z)| <= 1e-20 Σ|c_i||z|^i`, with `p(z)` evaluated exactly at the
/// double-double point.
fn residual_ok(p: &crate::charpoly::Polynomial, root: &ComplexRoot) -> bool {
    let (x, y) = (root.re_exact(), root.im_exact());
    // Horner over Q[i].
    let (mut re, mut im) = (Rational::zero(), Rational::zero());
    let mut scale = Rational::zero();
    let modulus = crate::exact::to_f64(&(&x * &x + &y * &y)).sqrt();
    let modulus = crate::exact::from_f64_exact(modulus);
    for c in p.coeffs().iter().rev() {
        let nre = &re * &x - &im * &y + c;
        let nim = &re * &y + &im * &x;
        re = nre;
        im = nim;
        scale = scale * &modulus + c.abs();
    }
    let value2 = &re * &re + &im * &im;
    let tol = crate::exact::from_f64_exact(1e-20) * scale;
    value2 <= &tol * &tol
}
