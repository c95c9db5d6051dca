//! The reproduction suite behind `gkk verify-paper`: ten checks covering
//! the headline eigenvalues, the Hurwitz minor identity and threshold, the
//! family's defining minors, GKK and τ certification, the polynomial
//! identities, and determinant cross-checks.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::charpoly::{charpoly, eta, eta_display, g_poly, nu, phi, phi_tilde, psi, Polynomial};
use crate::classify::{
    find_tau_parameter, gkk_structured, is_gkk, is_p_matrix, is_positive_stable, is_tau, is_weakly_sign_symmetric,
    Caps, StructuredOptions,
};
use crate::error::Result;
use crate::exact::{format_fraction, int, pow, rat, sign_pow, IndexSet, RatMatrix, Rational};
use crate::family::{build_a, build_b, coeff_a, minor_formula, FamilyParams};
use crate::hurwitz::{closed_form_minor, hurwitz_minor_2to5, threshold_scan};
use crate::rootfind::complex_roots;

/// Reference eigenvalues (real part, imaginary part of the upper member of
/// the pair with least real part).
pub const REFERENCE_A44: (f64, f64) = (-2.809929189497896e-2, 3.275076252367531e-1);
pub const REFERENCE_B21: (f64, f64) = (-3.420708309454068e-2, 3.400425852703498e-1);
pub const EIGENVALUE_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub detail: Value,
}

impl CheckResult {
    fn new(id: u8, name: &'static str, pass: bool, detail: Value) -> Self {
        Self { id, name, pass, detail }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {:>2} {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name
        )
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ReproduceOptions {
    pub seed: u64,
    /// Largest order for the exhaustive GKK sweep of family members.
    pub gkk_max_n: usize,
    pub corpus_size: usize,
    pub random_dets: usize,
    pub tau_m_max: u32,
    pub digits: usize,
}

impl Default for ReproduceOptions {
    fn default() -> Self {
        Self {
            seed: 20_240_101,
            gkk_max_n: 8,
            corpus_size: 240,
            random_dets: 100,
            tau_m_max: 20,
            digits: 25,
        }
    }
}

fn ts() -> [Rational; 3] {
    [rat(1, 4), rat(1, 2), rat(3, 4)]
}

/// The root of least real part with nonnegative imaginary part.
fn least_pair(p: &Polynomial) -> Result<(f64, f64, crate::rootfind::ComplexRoot)> {
    let roots = complex_roots(p, 1e-20)?;
    let least = roots[0].re;
    let r = roots
        .iter()
        .filter(|r| r.re == least)
        .copied()
        .max_by(|a, b| a.im.partial_cmp(&b.im).expect("finite"))
        .expect("nonempty");
    Ok((r.re_f64(), r.im_f64(), r))
}

pub fn check_eigenvalues(opts: &ReproduceOptions) -> Result<CheckResult> {
    let a = build_a(&FamilyParams::new(44, 21, rat(1, 2))?)?;
    let b = build_b(21)?;
    let mut detail = serde_json::Map::new();
    let mut pass = true;
    for (label, m, reference) in [("A_44_21_1/2", &a, REFERENCE_A44), ("B_21", &b, REFERENCE_B21)] {
        let (re, im, root) = least_pair(&charpoly(m)?)?;
        let (dre, dim) = ((re - reference.0).abs(), (im - reference.1).abs());
        pass &= dre <= EIGENVALUE_TOLERANCE && dim <= EIGENVALUE_TOLERANCE;
        detail.insert(
            label.into(),
            json!({
                "computed": root.to_json_value(opts.digits),
                "reference": [format!("{:.15e}", reference.0), format!("{:.15e}", reference.1)],
                "deviation": [format!("{dre:.3e}"), format!("{dim:.3e}")],
            }),
        );
    }
    detail.insert("tolerance".into(), json!(format!("{EIGENVALUE_TOLERANCE:e}")));
    Ok(CheckResult::new(
        1,
        "least-real-part eigenvalues of A(44,21,1/2) and B(21)",
        pass,
        Value::Object(detail),
    ))
}

pub fn check_minor_identity() -> Result<CheckResult> {
    let mismatches: Vec<usize> = (3..=40usize)
        .into_par_iter()
        .map(|k| Ok((k, hurwitz_minor_2to5(k)? == closed_form_minor(k)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(k, _)| k)
        .collect();
    Ok(CheckResult::new(
        2,
        "Hurwitz minor H_k[2:5] equals the closed form, k = 3..40",
        mismatches.is_empty(),
        json!({ "k_range": [3, 40], "mismatches": mismatches }),
    ))
}

pub fn check_threshold() -> Result<CheckResult> {
    let scan = threshold_scan(40)?;
    let positive_below = scan
        .rows
        .iter()
        .filter(|r| r.k <= 20)
        .all(|r| r.minor_value.is_positive());
    let negative_above = scan
        .rows
        .iter()
        .filter(|r| r.k >= 21)
        .all(|r| r.minor_value.is_negative());
    let agree = scan.rows.iter().all(|r| r.agrees());
    Ok(CheckResult::new(
        3,
        "least k with a negative minor is 21",
        scan.first_negative == Some(21) && positive_below && negative_above && agree,
        json!({
            "first_negative": scan.first_negative,
            "positive_for_3_to_20": positive_below,
            "negative_for_21_to_40": negative_above,
            "direct_agrees": agree,
        }),
    ))
}

pub fn check_defining_minors() -> Result<CheckResult> {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for k in 1..=3usize {
        for t in ts() {
            let n_max = 2 * k + 4;
            let a = build_a(&FamilyParams::new(n_max, k, t.clone())?)?;
            for j in 1..=n_max - k - 1 {
                let m = build_a(&FamilyParams::new(k + j + 1, k, t.clone())?)?;
                checked += 1;
                if m.det()? != pow(&t, j) {
                    failures.push(json!({ "k": k, "t": format_fraction(&t), "det_order": k + j + 1 }));
                }
            }
            // Leading blocks of the largest member are the smaller members,
            // so its windows cover every n <= 2k+4.
            for len in 1..=n_max {
                for i in 1..=n_max - len + 1 {
                    let w = IndexSet::range(n_max, i, i + len - 1)?;
                    checked += 1;
                    if a.principal_minor(&w)? != minor_formula(n_max, k, &t, i, len)? {
                        failures.push(json!({ "k": k, "t": format_fraction(&t), "window": [i, i + len - 1] }));
                    }
                }
            }
        }
    }
    Ok(CheckResult::new(
        4,
        "det A(k+j+1,k,t) = t^j and every window minor is t^((j-k-1)_+)",
        failures.is_empty(),
        json!({ "checked": checked, "failures": failures }),
    ))
}

pub fn check_gkk_family(opts: &ReproduceOptions) -> Result<CheckResult> {
    let caps = Caps::uniform(opts.gkk_max_n.max(12));
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for k in 1..=3usize {
        for t in ts() {
            for n in 1..=opts.gkk_max_n {
                let a = build_a(&FamilyParams::new(n, k, t.clone())?)?;
                let r = is_gkk(&a, &caps)?;
                checked += 1;
                if !r.holds || r.params["method"] != "sweep" {
                    failures.push(json!({ "n": n, "k": k, "t": format_fraction(&t) }));
                }
            }
        }
    }
    Ok(CheckResult::new(
        5,
        "full GKK sweep holds for A(n,k,t), n <= 8",
        failures.is_empty(),
        json!({ "matrices": checked, "max_n": opts.gkk_max_n, "failures": failures }),
    ))
}

/// Integer matrix with entries in `-r..=r` plus `shift` on the diagonal.
fn random_int_matrix(rng: &mut ChaCha8Rng, n: usize, r: i64, shift: i64) -> RatMatrix {
    RatMatrix::from_fn(n, n, |i, j| {
        int(rng.random_range(-r..=r) + if i == j { shift } else { 0 })
    })
}

/// Mixed corpus: plain random, diagonally shifted (often P), symmetric
/// positive definite `B Bᵀ + I`, and triangular with positive diagonal
/// (always P, rarely weakly sign-symmetric).
pub fn gkk_corpus(seed: u64, size: usize) -> Vec<RatMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|idx| {
            let n = rng.random_range(2..=6usize);
            match idx % 4 {
                0 => random_int_matrix(&mut rng, n, 3, 0),
                1 => {
                    let shift = rng.random_range(1..=3 * n as i64);
                    random_int_matrix(&mut rng, n, 2, shift)
                }
                2 => {
                    let b = random_int_matrix(&mut rng, n, 2, 0);
                    let bbt = b.mul(&b.transpose()).expect("square");
                    RatMatrix::from_fn(n, n, |i, j| {
                        bbt.get(i, j) + if i == j { Rational::one() } else { Rational::zero() }
                    })
                }
                _ => RatMatrix::from_fn(n, n, |i, j| {
                    if i == j {
                        int(rng.random_range(1..=3))
                    } else if i > j {
                        int(rng.random_range(-3..=3))
                    } else {
                        Rational::zero()
                    }
                }),
            }
        })
        .collect()
}

pub fn check_gkk_equivalence(opts: &ReproduceOptions) -> Result<CheckResult> {
    let corpus = gkk_corpus(opts.seed, opts.corpus_size);
    let caps = Caps::default();
    let rows: Vec<(bool, bool, bool)> = corpus
        .par_iter()
        .map(|a| {
            Ok((
                is_gkk(a, &caps)?.holds,
                is_p_matrix(a, &caps)?.holds,
                is_weakly_sign_symmetric(a, &caps)?.holds,
            ))
        })
        .collect::<Result<_>>()?;
    let mismatches: Vec<usize> = rows
        .iter()
        .enumerate()
        .filter(|(_, (g, p, w))| *g != (*p && *w))
        .map(|(i, _)| i)
        .collect();
    let p_count = rows.iter().filter(|r| r.1).count();
    let gkk_count = rows.iter().filter(|r| r.0).count();
    let pass = mismatches.is_empty() && corpus.len() >= 200 && p_count > 0 && p_count < corpus.len();
    Ok(CheckResult::new(
        6,
        "GKK <=> P and weakly sign-symmetric on a random corpus",
        pass,
        json!({
            "corpus": corpus.len(),
            "p_matrices": p_count,
            "non_p_matrices": corpus.len() - p_count,
            "gkk": gkk_count,
            "seed": opts.seed,
            "mismatches": mismatches,
        }),
    ))
}

pub fn check_tau(opts: &ReproduceOptions) -> Result<CheckResult> {
    let mut pass = true;
    let mut found = Vec::new();
    for k in 1..=3usize {
        let search = find_tau_parameter(k, opts.tau_m_max, &Caps::default())?;
        pass &= search.chosen_m.is_some();
        found.push(json!({
            "k": k,
            "m": search.chosen_m,
            "t": search.chosen_t,
            "attempts": search.attempts.len(),
        }));
    }
    Ok(CheckResult::new(
        7,
        "some t = 2^-m, m <= 20, makes A(n,k,t) a tau-matrix for n <= 2k+2",
        pass,
        json!({ "m_max": opts.tau_m_max, "found": found }),
    ))
}

/// Value at `0` of the polynomial through the points `(x_i, y_i)`.
fn neville_at_zero(xs: &[Rational], ys: &[Rational]) -> Rational {
    let mut p = ys.to_vec();
    let n = xs.len();
    for level in 1..n {
        for i in 0..n - level {
            let (xi, xj) = (&xs[i], &xs[i + level]);
            p[i] = (xj * &p[i] - xi * &p[i + 1]) / (xj - xi);
        }
    }
    p[0].clone()
}

/// `lim_{t→0} φ_j` coefficientwise. Every coefficient of `φ_j` is a
/// polynomial in `t` of degree at most `j + 3`; interpolating through more
/// points than that and extrapolating to `t = 0` gives the limit exactly.
/// A second, larger point set must agree.
fn phi_limit(k: usize, j: usize) -> Result<Option<Polynomial>> {
    let eval = |points: usize| -> Result<Polynomial> {
        let xs: Vec<Rational> = (0..points).map(|i| rat(1, i as i64 + 2)).collect();
        let polys: Vec<Polynomial> = xs.iter().map(|t| phi(k, t, j)).collect::<Result<_>>()?;
        let deg = polys.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
        let coeffs = (0..=deg)
            .map(|c| {
                let ys: Vec<Rational> = polys.iter().map(|p| p.coeff(c)).collect();
                neville_at_zero(&xs, &ys)
            })
            .collect();
        Ok(Polynomial::new(coeffs))
    };
    let a = eval(j + 5)?;
    let b = eval(j + 8)?;
    Ok((a == b).then_some(a))
}

pub fn check_polynomial_identities() -> Result<CheckResult> {
    let one_minus = Polynomial::one_minus_x();
    let mut failures: Vec<String> = Vec::new();
    let mut checked = 0usize;
    let mut record = |ok: bool, what: String| {
        checked += 1;
        if !ok {
            failures.push(what);
        }
    };
    for k in 1..=5usize {
        for t in [rat(1, 3), rat(1, 2)] {
            let tf = format_fraction(&t);
            for j in 1..=k + 1 {
                let p = phi(k, &t, j)?;
                let g = g_poly(k, &t, j)?;
                if j >= 2 {
                    let rec = &(&one_minus * &phi(k, &t, j - 1)?) + &g;
                    record(p == rec, format!("phi recurrence k={k} t={tf} j={j}"));
                    let a_j = Polynomial::constant(sign_pow(j + k) * coeff_a(k, &t, j)?);
                    let grec = &(&one_minus * &g_poly(k, &t, j - 1)?) + &a_j;
                    record(g == grec, format!("g recurrence k={k} t={tf} j={j}"));
                }
                let a = build_a(&FamilyParams::new(k + j + 1, k, t.clone())?)?;
                record(p == charpoly(&a)?, format!("phi = charpoly k={k} t={tf} j={j}"));
                record(p.coeff(0) == pow(&t, j), format!("phi(0) k={k} t={tf} j={j}"));
                let g0 = pow(&t, j) - pow(&t, j - 1);
                record(g.coeff(0) == g0, format!("g(0) k={k} t={tf} j={j}"));
                let tilde = phi_tilde(k, &t, j)?;
                let rebuilt = &Polynomial::constant(pow(&t, j)) - &(&Polynomial::x() * &tilde);
                record(rebuilt == p, format!("phi tilde k={k} t={tf} j={j}"));
            }
        }
        for j in 1..=k + 1 {
            let limit = phi_limit(k, j)?;
            record(limit.as_ref() == Some(&nu(k, j)?), format!("nu limit k={k} j={j}"));
            let slope = -nu(k, j)?.derivative().coeff(0);
            record(slope == int((k + 3 - j) as i64), format!("nu'(0) k={k} j={j}"));
        }
        let lhs = &psi(k)? * &Polynomial::from_i64(&[1, 1]).pow(k - 1);
        record(lhs == nu(k, k + 1)?.compose_neg(), format!("psi identity k={k}"));
        record(eta(k)? == eta_display(k), format!("eta display k={k}"));
    }
    Ok(CheckResult::new(
        8,
        "polynomial recurrences, values at 0, limits and displays, k <= 5",
        failures.is_empty(),
        json!({ "checked": checked, "failures": failures }),
    ))
}

pub fn check_headline(opts: &ReproduceOptions) -> Result<CheckResult> {
    let a = build_a(&FamilyParams::new(44, 21, rat(1, 2))?)?;
    let gkk = gkk_structured(&a, &StructuredOptions::default())?;
    let tau = is_tau(&a, &Caps::default())?;
    let stable = is_positive_stable(&a)?;
    let witness_ok = stable.verify_witness(&a)?;
    let complete = gkk.params.get("certificate").and_then(Value::as_str) == Some("complete");
    let pass = gkk.holds && complete && tau.holds && !stable.holds && witness_ok;
    Ok(CheckResult::new(
        9,
        "A(44,21,1/2) is GKK and tau but not positive stable",
        pass,
        json!({
            "gkk": gkk.to_json_value(opts.digits),
            "tau": tau.to_json_value(opts.digits),
            "positive_stable": stable.to_json_value(opts.digits),
            "witness_reverified": witness_ok,
        }),
    ))
}

/// Rational matrix with small numerators and denominators.
pub fn random_rational_matrix(rng: &mut ChaCha8Rng, n: usize) -> RatMatrix {
    RatMatrix::from_fn(n, n, |_, _| {
        let num: i64 = rng.random_range(-9..=9);
        let den: i64 = rng.random_range(1..=7);
        rat(num, den)
    })
}

pub fn check_determinants(opts: &ReproduceOptions) -> Result<CheckResult> {
    let mut matrices = Vec::new();
    for k in 1..=3usize {
        for t in ts() {
            for n in 1..=8 {
                matrices.push(build_a(&FamilyParams::new(n, k, t.clone())?)?);
            }
        }
    }
    for k in 1..=3 {
        matrices.push(build_b(k)?);
    }
    let family = matrices.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0xde7);
    for _ in 0..opts.random_dets {
        let n = rng.random_range(1..=6usize);
        matrices.push(random_rational_matrix(&mut rng, n));
    }
    let mismatches: Vec<usize> = matrices
        .par_iter()
        .enumerate()
        .map(|(i, m)| Ok((i, m.det()? == m.det_oracle()?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, ok)| !ok)
        .map(|(i, _)| i)
        .collect();
    Ok(CheckResult::new(
        10,
        "elimination determinant equals cofactor expansion",
        mismatches.is_empty(),
        json!({ "family_matrices": family, "random_matrices": opts.random_dets, "mismatches": mismatches }),
    ))
}

/// Whether `η_k` is Hurwitz stable for each `k` in `1..=20`; reported
/// alongside the suite as a computed fact.
pub fn eta_stability_table(k_max: usize) -> Result<Vec<(usize, crate::hurwitz::Stability)>> {
    (1..=k_max)
        .into_par_iter()
        .map(|k| Ok((k, crate::hurwitz::routh_stable(&eta(k)?)?)))
        .collect()
}

pub fn run_all(opts: &ReproduceOptions) -> Result<Vec<CheckResult>> {
    Ok(vec![
        check_eigenvalues(opts)?,
        check_minor_identity()?,
        check_threshold()?,
        check_defining_minors()?,
        check_gkk_family(opts)?,
        check_gkk_equivalence(opts)?,
        check_tau(opts)?,
        check_polynomial_identities()?,
        check_headline(opts)?,
        check_determinants(opts)?,
    ])
}
