//! Checks that look at eigenvalues: `l(A)`, ω/τ monotonicity, positive
//! stability and the Varga wedge.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::structured::is_toeplitz_hessenberg;
use super::{check_cap, Caps, ClassReport, Property, Witness};
use crate::charpoly::{charpoly, hessenberg_leading_charpolys, Polynomial};
use crate::error::{Error, Result};
use crate::exact::{subsets_in_order, to_f64, IndexSet, RatMatrix, Rational};
use crate::hurwitz::{routh_report, Stability};
use crate::rootfind::{compare_roots, complex_roots, dyadic_width, RealRootIsolator, RootEnclosure};

/// `l(A)`: the least real eigenvalue as an exact isolating interval, or
/// infinity when there is no real eigenvalue.
#[derive(Clone, Debug)]
pub struct MinRealEig {
    pub finite: bool,
    pub enclosure: Option<RootEnclosure>,
    isolator: Option<RealRootIsolator>,
}

impl MinRealEig {
    pub fn of_polynomial(p: &Polynomial) -> Result<Self> {
        let iso = RealRootIsolator::new(p)?;
        Ok(match iso.least() {
            Some(e) => Self {
                finite: true,
                enclosure: Some(e),
                isolator: Some(iso),
            },
            None => Self {
                finite: false,
                enclosure: None,
                isolator: None,
            },
        })
    }

    /// Exact order, with infinity above every real number.
    pub fn compare(&self, other: &Self) -> Ordering {
        match (&self.enclosure, &other.enclosure) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => compare_roots(
                self.isolator.as_ref().expect("finite"),
                a,
                other.isolator.as_ref().expect("finite"),
                b,
            ),
        }
    }

    pub fn compare_with(&self, x: &Rational) -> Ordering {
        match &self.enclosure {
            None => Ordering::Greater,
            Some(e) => self.isolator.as_ref().expect("finite").compare_with(e, x),
        }
    }

    /// Narrow the enclosure to width at most `width`.
    pub fn refine(&mut self, width: &Rational) {
        if let (Some(e), Some(iso)) = (&self.enclosure, &self.isolator) {
            self.enclosure = Some(iso.refine(e, width));
        }
    }

    pub fn to_json_value(&self, digits: usize) -> Value {
        match &self.enclosure {
            None => json!({ "finite": false }),
            Some(e) => {
                let mut v = serde_json::to_value(e.to_json_value(digits)).expect("plain struct");
                v.as_object_mut()
                    .expect("object")
                    .insert("finite".into(), Value::from(true));
                v
            }
        }
    }
}

/// Least real eigenvalue from the exact characteristic polynomial.
pub fn min_real_eig(a: &RatMatrix) -> Result<MinRealEig> {
    MinRealEig::of_polynomial(&charpoly(a)?)
}

fn structured_omega(a: &RatMatrix) -> Result<(Option<Witness>, Vec<MinRealEig>)> {
    let n = a.order()?;
    let polys = hessenberg_leading_charpolys(a)?;
    let ls: Vec<MinRealEig> = polys[1..]
        .par_iter()
        .map(|p| {
            let mut l = MinRealEig::of_polynomial(p)?;
            l.refine(&dyadic_width(80));
            Ok(l)
        })
        .collect::<Result<_>>()?;
    let leading = |m: usize| IndexSet::range(n, 1, m);
    if let Some(m) = ls.iter().position(|l| !l.finite) {
        return Ok((Some(Witness::InfiniteMinEig { alpha: leading(m + 1)? }), ls));
    }
    let hit = (1..n)
        .into_par_iter()
        .find_first(|&m| ls[m].compare(&ls[m - 1]) == Ordering::Greater);
    let witness = match hit {
        None => None,
        Some(m) => Some(Witness::Monotonicity {
            alpha: leading(m + 1)?,
            beta: leading(m)?,
            l_alpha: ls[m].enclosure.clone().expect("finite"),
            l_beta: ls[m - 1].enclosure.clone().expect("finite"),
        }),
    };
    Ok((witness, ls))
}

/// Full sweep: `l` finite on every nonempty principal submatrix, and
/// `l(A(α)) <= l(A(α \ {i}))` for every `α` and `i ∈ α`, which by
/// transitivity covers all nested pairs.
fn sweep_omega(a: &RatMatrix) -> Result<(Option<Witness>, MinRealEig)> {
    let n = a.order()?;
    let order = subsets_in_order(n);
    let polys: Vec<Polynomial> = order[1..]
        .par_iter()
        .map(|&mask| charpoly(&a.principal(&IndexSet::from_mask(n, mask))?))
        .collect::<Result<_>>()?;
    // Equal characteristic polynomials share one root computation.
    let mut distinct: Vec<Polynomial> = Vec::new();
    let mut lookup: HashMap<Polynomial, usize> = HashMap::new();
    let mut id_of_mask = vec![usize::MAX; 1 << n];
    for (p, &mask) in polys.into_iter().zip(&order[1..]) {
        let next = distinct.len();
        let id = *lookup.entry(p.clone()).or_insert(next);
        if id == next {
            distinct.push(p);
        }
        id_of_mask[mask as usize] = id;
    }
    let ls: Vec<MinRealEig> = distinct
        .par_iter()
        .map(|p| {
            let mut l = MinRealEig::of_polynomial(p)?;
            l.refine(&dyadic_width(80));
            Ok(l)
        })
        .collect::<Result<_>>()?;
    let full = ls[id_of_mask[(1usize << n) - 1]].clone();
    if let Some(&mask) = order[1..].iter().find(|&&m| !ls[id_of_mask[m as usize]].finite) {
        return Ok((
            Some(Witness::InfiniteMinEig {
                alpha: IndexSet::from_mask(n, mask),
            }),
            full,
        ));
    }
    let hit = order[1..].par_iter().find_map_first(|&alpha| {
        (0..n).find_map(|i| {
            let beta = alpha & !(1 << i);
            if beta == alpha || beta == 0 {
                return None;
            }
            let (ia, ib) = (id_of_mask[alpha as usize], id_of_mask[beta as usize]);
            (ia != ib && ls[ia].compare(&ls[ib]) == Ordering::Greater).then_some((alpha, beta))
        })
    });
    let witness = hit.map(|(alpha, beta)| Witness::Monotonicity {
        alpha: IndexSet::from_mask(n, alpha),
        beta: IndexSet::from_mask(n, beta),
        l_alpha: ls[id_of_mask[alpha as usize]].enclosure.clone().expect("finite"),
        l_beta: ls[id_of_mask[beta as usize]].enclosure.clone().expect("finite"),
    });
    Ok((witness, full))
}

/// ω-matrix check by the full principal-submatrix sweep, whatever the
/// structure of `a`.
pub fn is_omega_sweep(a: &RatMatrix, cap: usize) -> Result<ClassReport> {
    let n = a.order()?;
    check_cap("eigenvalue monotonicity sweep", n, cap)?;
    let (witness, full) = sweep_omega(a)?;
    Ok(ClassReport::new(Property::Omega, n, witness)
        .with("method", "sweep")
        .with("l", full.to_json_value(25)))
}

fn omega_parts(a: &RatMatrix, caps: &Caps) -> Result<(Option<Witness>, MinRealEig, &'static str)> {
    let n = a.order()?;
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    if is_toeplitz_hessenberg(a) {
        // Every principal submatrix is block triangular over its runs of
        // consecutive indices, each run a copy of a leading block; so the
        // leading blocks decide everything.
        let (w, mut ls) = structured_omega(a)?;
        return Ok((w, ls.pop().expect("n >= 1"), "structured"));
    }
    check_cap("eigenvalue monotonicity sweep", n, caps.omega)?;
    let (w, full) = sweep_omega(a)?;
    Ok((w, full, "sweep"))
}

/// `l(A(α)) <= l(A(β)) < ∞` whenever `∅ ≠ β ⊆ α`.
pub fn is_omega(a: &RatMatrix, caps: &Caps) -> Result<ClassReport> {
    let n = a.order()?;
    let (witness, full, method) = omega_parts(a, caps)?;
    Ok(ClassReport::new(Property::Omega, n, witness)
        .with("method", method)
        .with("l", full.to_json_value(25)))
}

/// ω-matrix with `l(A) >= 0`.
pub fn is_tau(a: &RatMatrix, caps: &Caps) -> Result<ClassReport> {
    let n = a.order()?;
    let (witness, full, method) = omega_parts(a, caps)?;
    let witness = witness.or_else(|| {
        (full.compare_with(&Rational::zero()) == Ordering::Less).then(|| Witness::NegativeMinEig {
            l: full.enclosure.clone().expect("finite"),
        })
    });
    Ok(ClassReport::new(Property::Tau, n, witness)
        .with("method", method)
        .with("l", full.to_json_value(25)))
}

/// Every eigenvalue has positive real part, decided exactly by
/// Routh–Hurwitz on `det(A + λI)`. On failure the witness is a numerically
/// computed eigenvalue of least real part.
pub fn is_positive_stable(a: &RatMatrix) -> Result<ClassReport> {
    let n = a.order()?;
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let p = charpoly(a)?;
    let report = routh_report(&p.compose_neg())?;
    let decision = serde_json::to_value(report.decision).expect("enum");
    if report.decision == Stability::Stable {
        return Ok(ClassReport::new(Property::PosStable, n, None)
            .with("decision", decision)
            .with("boundary", false));
    }
    let roots = complex_roots(&p, 1e-20)?;
    let least = roots[0].re;
    let root = roots
        .iter()
        .filter(|r| r.re == least)
        .max_by(|a, b| a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
        .copied()
        .expect("at least one root");
    let boundary = report.decision == Stability::Boundary;
    Ok(
        ClassReport::new(Property::PosStable, n, Some(Witness::Eigenvalue { root, boundary }))
            .with("decision", decision)
            .with("boundary", boundary),
    )
}

/// `π/2 - π/n`.
pub(crate) fn varga_bound(n: usize) -> f64 {
    std::f64::consts::FRAC_PI_2 - std::f64::consts::PI / n as f64
}

/// `|arg(λ - l(A))| <= π/2 - π/n` for every eigenvalue `λ ≠ l(A)`, with
/// `tol` slack on the angle. Eigenvalues are numerical; `l(A)` is exact,
/// refined to `2^-100`.
pub fn varga_wedge_check(a: &RatMatrix, tol: f64) -> Result<ClassReport> {
    let n = a.order()?;
    let p = charpoly(a)?;
    let mut l = MinRealEig::of_polynomial(&p)?;
    if !l.finite {
        return Err(Error::InvalidParameter(
            "wedge check needs a real eigenvalue, but l(A) is infinite".into(),
        ));
    }
    l.refine(&dyadic_width(100));
    let e = l.enclosure.clone().expect("finite");
    let apex = e.midpoint();
    let bound = varga_bound(n);
    let roots = complex_roots(&p, 1e-20)?;
    let scale = to_f64(&apex).abs().max(1.0);
    let mut worst: Option<(f64, usize)> = None;
    for (idx, r) in roots.iter().enumerate() {
        let dx = to_f64(&(r.re_exact() - &apex));
        let dy = r.im_f64().abs();
        if dx.hypot(dy) <= 1e-20 * scale {
            continue;
        }
        let angle = dy.atan2(dx);
        if worst.is_none_or(|(w, _)| angle > w) {
            worst = Some((angle, idx));
        }
    }
    let max_angle = worst.map_or(0.0, |(w, _)| w);
    let witness = match worst {
        Some((angle, idx)) if angle > bound + tol => Some(Witness::Wedge {
            root: roots[idx],
            l: e.clone(),
            angle,
            bound,
        }),
        _ => None,
    };
    Ok(ClassReport::new(Property::VargaWedge, n, witness)
        .with("max_angle", format!("{max_angle:.17e}"))
        .with("bound", format!("{bound:.17e}"))
        .with("margin", format!("{:.17e}", bound - max_angle))
        .with("tolerance", format!("{tol:e}"))
        .with("l", l.to_json_value(25)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::family::{build_a, FamilyParams};

    #[test]
    fn min_real_eig_examples() {
        let l = min_real_eig(&RatMatrix::identity(3)).unwrap();
        assert!(l.finite);
        assert_eq!(l.compare_with(&int(1)), Ordering::Equal);
        let rot = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap();
        assert!(!min_real_eig(&rot).unwrap().finite);

        let a = build_a(&FamilyParams::new(3, 1, rat(1, 2)).unwrap()).unwrap();
        let mut l = min_real_eig(&a).unwrap();
        l.refine(&dyadic_width(40));
        let e = l.enclosure.unwrap();
        let expected = 1.0 - 0.5f64.cbrt();
        assert!((to_f64(&e.lo) - expected).abs() < 1e-11);
    }

    #[test]
    fn omega_and_tau_examples() {
        let caps = Caps::default();
        assert!(is_omega(&RatMatrix::identity(3), &caps).unwrap().holds);
        assert!(is_tau(&RatMatrix::identity(3), &caps).unwrap().holds);
        let rot = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap();
        let r = is_omega(&rot, &caps).unwrap();
        assert!(!r.holds);
        assert!(r.verify_witness(&rot).unwrap());
        let neg = RatMatrix::identity(2).neg();
        let r = is_tau(&neg, &caps).unwrap();
        assert!(!r.holds);
        assert!(matches!(r.witness, Some(Witness::NegativeMinEig { .. })));
        assert!(r.verify_witness(&neg).unwrap());
    }

    #[test]
    fn family_member_is_tau_for_small_t() {
        let a = build_a(&FamilyParams::new(6, 2, rat(1, 64)).unwrap()).unwrap();
        let caps = Caps::default();
        let structured = is_tau(&a, &caps).unwrap();
        assert_eq!(structured.params["method"], "structured");
        assert!(structured.holds);
        assert!(is_omega_sweep(&a, 12).unwrap().holds);
    }

    #[test]
    fn sweep_finds_monotonicity_failure() {
        // eigenvalues (5 ± √13)/2; l(A) ≈ 0.70 sits below both diagonal entries
        let a = RatMatrix::from_i64(&[&[2, 3], &[1, 3]]).unwrap();
        let r = is_omega(&a, &Caps::default()).unwrap();
        assert_eq!(r.params["method"], "sweep");
        assert!(r.holds);
        // eigenvalues (5 ± √5)/2; l(A) ≈ 1.38 > l(A({1})) = 1
        let b = RatMatrix::from_i64(&[&[1, 1], &[-1, 4]]).unwrap();
        let r = is_omega(&b, &Caps::default()).unwrap();
        assert!(!r.holds);
        match r.witness.as_ref().unwrap() {
            Witness::Monotonicity { alpha, beta, .. } => {
                assert_eq!(alpha.members(), &[1, 2]);
                assert_eq!(beta.members(), &[1]);
            }
            w => panic!("unexpected witness {w:?}"),
        }
        assert!(r.verify_witness(&b).unwrap());
    }

    #[test]
    fn positive_stability() {
        assert!(is_positive_stable(&RatMatrix::identity(2)).unwrap().holds);
        let a = RatMatrix::from_i64(&[&[1, 0], &[0, -2]]).unwrap();
        let r = is_positive_stable(&a).unwrap();
        assert!(!r.holds);
        assert!(r.verify_witness(&a).unwrap());
        let rot = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap();
        let r = is_positive_stable(&rot).unwrap();
        assert_eq!(r.params["boundary"], true);
    }

    #[test]
    fn wedge_examples() {
        assert!(varga_wedge_check(&RatMatrix::identity(3), 1e-12).unwrap().holds);
        let j = RatMatrix::from_i64(&[&[1, 0], &[1, 1]]).unwrap();
        assert!(varga_wedge_check(&j, 1e-12).unwrap().holds);
        let rot = RatMatrix::from_i64(&[&[0, -1], &[1, 0]]).unwrap();
        assert!(varga_wedge_check(&rot, 1e-12).is_err());
        // eigenvalues 0 and 1 ± 2i in order 3: angle atan2(2, 1) > π/6
        let a = RatMatrix::from_i64(&[&[0, 0, 0], &[0, 1, -2], &[0, 2, 1]]).unwrap();
        let r = varga_wedge_check(&a, 1e-12).unwrap();
        assert!(!r.holds);
        assert!(r.verify_witness(&a).unwrap());
    }
}
