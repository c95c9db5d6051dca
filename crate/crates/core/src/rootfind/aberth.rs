//! Simultaneous complex root approximation (Aberth–Ehrlich) in double-double
//! arithmetic.
//!
//! Exact zero roots are split off, the rest is split into square-free
//! factors, each root is polished by Newton steps, and real roots are
//! counted exactly so that the conjugate-pair structure of the output is
//! never guessed.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;
use twofloat::TwoFloat;

use super::sturm::RealRootIsolator;
use crate::charpoly::Polynomial;
use crate::error::{Error, Result};
use crate::exact::{from_f64_exact, to_f64, to_scientific, Rational};

type C = Complex<TwoFloat>;

/// Unit roundoff of double-double arithmetic, roughly `2^-104`.
const DD_EPS: f64 = 4.93e-32;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexRoot {
    pub re: TwoFloat,
    pub im: TwoFloat,
    /// `|p(root)|`, evaluated in double-double on the unshifted input.
    pub residual: f64,
    /// `Σ |c_i| |root|^i`, the scale the residual is measured against.
    pub scale: f64,
}

impl ComplexRoot {
    fn real(re: TwoFloat) -> Self {
        Self {
            re,
            im: TwoFloat::from(0.0),
            residual: 0.0,
            scale: 0.0,
        }
    }

    pub fn re_f64(&self) -> f64 {
        self.re.hi() + self.re.lo()
    }

    pub fn im_f64(&self) -> f64 {
        self.im.hi() + self.im.lo()
    }

    pub fn is_real(&self) -> bool {
        self.im == TwoFloat::from(0.0)
    }

    pub fn conj(&self) -> Self {
        Self { im: -self.im, ..*self }
    }

    /// The exact rational value of the real part.
    pub fn re_exact(&self) -> Rational {
        two_float_exact(self.re)
    }

    pub fn im_exact(&self) -> Rational {
        two_float_exact(self.im)
    }

    pub fn to_json_value(&self, digits: usize) -> ComplexRootJson {
        ComplexRootJson {
            re: to_scientific(&self.re_exact(), digits),
            im: to_scientific(&self.im_exact(), digits),
            residual: format!("{:.3e}", self.residual),
            scale: format!("{:.3e}", self.scale),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexRootJson {
    pub re: String,
    pub im: String,
    pub residual: String,
    pub scale: String,
}

pub(crate) fn two_float_exact(x: TwoFloat) -> Rational {
    from_f64_exact(x.hi()) + from_f64_exact(x.lo())
}

/// Nearest double-double to a rational (to about 106 bits).
pub(crate) fn rational_to_two_float(r: &Rational) -> TwoFloat {
    let hi = to_f64(r);
    if !hi.is_finite() || hi == 0.0 {
        return TwoFloat::from(hi);
    }
    let lo = to_f64(&(r - from_f64_exact(hi)));
    TwoFloat::new_add(hi, lo)
}

#[derive(Clone, Debug)]
pub struct AberthConfig {
    pub max_iterations: usize,
    /// Stop once every step is below this, relative to the root's magnitude.
    pub step_tolerance: f64,
    /// Accepted `residual / scale` per root.
    pub residual_tolerance: f64,
    /// Roots closer than this (relative) are flagged as a suspected multiple.
    pub cluster_distance: f64,
}

impl Default for AberthConfig {
    fn default() -> Self {
        Self {
            max_iterations: 1000,
            step_tolerance: 1e-20,
            residual_tolerance: 1e-20,
            cluster_distance: 1e-12,
        }
    }
}

#[derive(Clone, Debug)]
pub struct RootSet {
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<ComplexRoot>,
    pub iterations: usize,
    /// Index pairs into `roots` closer than the cluster distance.
    pub suspected_multiple: Vec<(usize, usize)>,
}

fn abs(z: &C) -> f64 {
    let (re, im) = (z.re.hi(), z.im.hi());
    re.hypot(im)
}

fn horner(coeffs: &[C], z: &C) -> (C, C) {
    let zero = C::new(TwoFloat::from(0.0), TwoFloat::from(0.0));
    let mut p = zero;
    let mut dp = zero;
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn two_float_coeffs(p: &Polynomial) -> Vec<C> {
    p.coeffs()
        .iter()
        .map(|c| C::new(rational_to_two_float(c), TwoFloat::from(0.0)))
        .collect()
}

fn scale_at(abs_coeffs: &[f64], r: f64) -> f64 {
    abs_coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c)
}

/// All `deg p` complex roots of `p` with default settings and the given
/// relative residual tolerance.
pub fn complex_roots(p: &Polynomial, tol: f64) -> Result<Vec<ComplexRoot>> {
    let config = AberthConfig {
        residual_tolerance: tol,
        ..AberthConfig::default()
    };
    Ok(complex_roots_with(p, &config)?.roots)
}

pub fn complex_roots_with(p: &Polynomial, config: &AberthConfig) -> Result<RootSet> {
    let degree = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::InvalidParameter("polynomial of degree 0 has no roots".into())),
        Some(d) => d,
    };
    let zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let q = Polynomial::new(p.coeffs()[zeros..].to_vec());
    let d = degree - zeros;

    let mut roots: Vec<ComplexRoot> = vec![ComplexRoot::real(TwoFloat::from(0.0)); zeros];
    let mut iterations = 0;
    if d > 0 {
        // Iterating on each square-free factor keeps repeated roots exact
        // in multiplicity and accurate in value.
        for (f, multiplicity) in q.square_free_factors()? {
            let df = f.degree().expect("nonconstant");
            let (found, its) = aberth(&f, df, config)?;
            iterations = iterations.max(its);
            let real_count = RealRootIsolator::new(&f)?.count_all();
            let fc = two_float_coeffs(&f);
            for r in pair_conjugates(found, real_count) {
                let z = polish(&fc, C::new(r.re, r.im));
                let polished = ComplexRoot {
                    re: z.re,
                    im: z.im,
                    ..r
                };
                roots.extend(std::iter::repeat_n(polished, multiplicity));
            }
        }
    }

    let coeffs = two_float_coeffs(p);
    let abs_coeffs: Vec<f64> = p.coeffs().iter().map(|c| to_f64(c).abs()).collect();
    for r in roots.iter_mut() {
        let z = C::new(r.re, r.im);
        let (value, _) = horner(&coeffs, &z);
        r.residual = abs(&value);
        r.scale = scale_at(&abs_coeffs, abs(&z));
        if r.residual > config.residual_tolerance * r.scale {
            return Err(Error::NonConvergence {
                iterations,
                partial: roots.clone(),
            });
        }
    }

    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    let mut suspected_multiple = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let zi = C::new(roots[i].re, roots[i].im);
            let zj = C::new(roots[j].re, roots[j].im);
            if abs(&(zi - zj)) < config.cluster_distance * abs(&zi).max(1.0) {
                suspected_multiple.push((i, j));
            }
        }
    }
    Ok(RootSet {
        roots,
        iterations,
        suspected_multiple,
    })
}

/// Newton steps on exact-rounded coefficients, kept only while they reduce
/// the residual.
fn polish(coeffs: &[C], mut z: C) -> C {
    let (mut value, mut slope) = horner(coeffs, &z);
    for _ in 0..8 {
        if value.is_zero() || slope.is_zero() {
            break;
        }
        let next = z - value / slope;
        let (v, s) = horner(coeffs, &next);
        if abs(&v) >= abs(&value) {
            break;
        }
        (z, value, slope) = (next, v, s);
    }
    z
}

/// Aberth iteration on `q` (no zero roots, degree `d`).
fn aberth(q: &Polynomial, d: usize, config: &AberthConfig) -> Result<(Vec<ComplexRoot>, usize)> {
    let lead = q.coeff(d);
    let monic: Vec<C> = q
        .coeffs()
        .iter()
        .map(|c| C::new(rational_to_two_float(&(c / &lead)), TwoFloat::from(0.0)))
        .collect();
    let abs_coeffs: Vec<f64> = monic.iter().map(|c| c.re.hi().abs()).collect();

    let radius = initial_radius(&abs_coeffs, d);
    let mut z: Vec<C> = (0..d)
        .map(|i| {
            let theta = std::f64::consts::TAU * i as f64 / d as f64 + 0.4;
            let r = radius * (1.0 + 0.01 * (i % 3) as f64);
            C::new(TwoFloat::from(r * theta.cos()), TwoFloat::from(r * theta.sin()))
        })
        .collect();
    let mut done = vec![false; d];
    let one = C::one();

    for iteration in 1..=config.max_iterations {
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (value, slope) = horner(&monic, &z[i]);
            let bound = 4.0 * d as f64 * DD_EPS * scale_at(&abs_coeffs, abs(&z[i]));
            if abs(&value) <= bound {
                done[i] = true;
                continue;
            }
            if slope.is_zero() {
                // Nudge off a critical point.
                z[i] += C::new(TwoFloat::from(radius * 1e-8), TwoFloat::from(radius * 1e-8));
                continue;
            }
            let ratio = value / slope;
            let mut sum = C::zero();
            for j in 0..d {
                if j != i {
                    let diff = z[i] - z[j];
                    if !diff.is_zero() {
                        sum += one / diff;
                    }
                }
            }
            let step = ratio / (one - ratio * sum);
            z[i] -= step;
            let magnitude = abs(&z[i]).max(f64::MIN_POSITIVE);
            if abs(&step) <= config.step_tolerance * magnitude {
                done[i] = true;
            }
        }
        if done.iter().all(|&x| x) {
            let roots = z
                .iter()
                .map(|w| ComplexRoot {
                    re: w.re,
                    im: w.im,
                    residual: 0.0,
                    scale: 0.0,
                })
                .collect();
            return Ok((roots, iteration));
        }
    }
    let partial = z
        .iter()
        .map(|w| ComplexRoot {
            re: w.re,
            im: w.im,
            residual: f64::NAN,
            scale: f64::NAN,
        })
        .collect();
    Err(Error::NonConvergence {
        iterations: config.max_iterations,
        partial,
    })
}

/// Typical root magnitude of a monic polynomial: the geometric mean
/// `|c_0|^(1/d)` when available, otherwise the largest `|c_i|^(1/(d-i))`.
fn initial_radius(abs_coeffs: &[f64], d: usize) -> f64 {
    let r = if abs_coeffs[0] > 0.0 {
        abs_coeffs[0].powf(1.0 / d as f64)
    } else {
        (0..d)
            .map(|i| abs_coeffs[i].powf(1.0 / (d - i) as f64))
            .fold(0.0, f64::max)
    };
    if r.is_finite() && r > 0.0 {
        r
    } else {
        1.0
    }
}

/// Snap the `real_count` roots with smallest `|Im|` onto the real axis and
/// symmetrize the rest into exact conjugate pairs.
fn pair_conjugates(mut roots: Vec<ComplexRoot>, real_count: usize) -> Vec<ComplexRoot> {
    let zero = TwoFloat::from(0.0);
    roots.sort_by(|a, b| a.im.abs().partial_cmp(&b.im.abs()).unwrap_or(std::cmp::Ordering::Equal));
    let mut out: Vec<ComplexRoot> = Vec::with_capacity(roots.len());
    for r in roots.iter().take(real_count) {
        out.push(ComplexRoot { im: zero, ..*r });
    }
    let rest = &roots[real_count.min(roots.len())..];
    let (upper, lower): (Vec<ComplexRoot>, Vec<ComplexRoot>) = rest.iter().partition(|r| r.im > zero);
    if upper.len() != lower.len() {
        out.extend(rest.iter().copied());
        return out;
    }
    let mut used = vec![false; lower.len()];
    for u in &upper {
        let best = (0..lower.len())
            .filter(|&j| !used[j])
            .min_by(|&a, &b| {
                let da = abs(&C::new(u.re - lower[a].re, u.im + lower[a].im));
                let db = abs(&C::new(u.re - lower[b].re, u.im + lower[b].im));
                da.partial_cmp(&db).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("as many lower roots as upper");
        used[best] = true;
        let l = lower[best];
        let two = TwoFloat::from(2.0);
        let re = (u.re + l.re) / two;
        let im = (u.im - l.im) / two;
        let root = ComplexRoot { re, im, ..*u };
        out.push(root);
        out.push(root.conj());
    }
    out
}
