//! Hurwitz matrices, exact Routh–Hurwitz decisions, minor sign searches,
//! and the sign scan of the order-4 minor `H_k[2:5]` of the Hurwitz matrix
//! of `η_k`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::{eta, Polynomial};
use crate::error::{Error, Result};
use crate::exact::{bareiss, binomial, format_fraction, IndexSet, RatMatrix, Rational};
use crate::rootfind::RealRootIsolator;

/// A polynomial of degree `m` and its `m x m` Hurwitz matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzMatrix {
    source: Polynomial,
    matrix: RatMatrix,
}

impl HurwitzMatrix {
    pub fn source(&self) -> &Polynomial {
        &self.source
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.matrix
    }

    pub fn order(&self) -> usize {
        self.matrix.rows()
    }
}

/// Entry `(i, j)` (1-based) is `a_(2j-i)`, where `a_s` is the coefficient
/// of `λ^(m-s)` and vanishes outside `0..=m`. Odd rows carry
/// `a_1, a_3, ...`, even rows `a_0, a_2, ...`, each pair shifted right by
/// one column.
pub fn build_hurwitz(p: &Polynomial) -> Result<HurwitzMatrix> {
    let m = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::InvalidParameter("Hurwitz matrix of a constant".into())),
        Some(m) => m as i64,
    };
    let a = |s: i64| {
        if (0..=m).contains(&s) {
            p.coeff((m - s) as usize)
        } else {
            Rational::zero()
        }
    };
    let matrix = RatMatrix::from_fn(m as usize, m as usize, |i, j| a(2 * (j as i64 + 1) - (i as i64 + 1)));
    Ok(HurwitzMatrix {
        source: p.clone(),
        matrix,
    })
}

fn check_k(k: usize) -> Result<()> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "k = {k}: the Hurwitz matrix of eta needs order >= 5 (k >= 3)"
        )));
    }
    Ok(())
}

/// `det` of rows and columns `2..=5` of the Hurwitz matrix of `η_k`.
pub fn hurwitz_minor_2to5(k: usize) -> Result<Rational> {
    check_k(k)?;
    let h = build_hurwitz(&eta(k)?)?;
    let rows = IndexSet::range(h.order(), 2, 5)?;
    h.matrix.minor(&rows, &rows)
}

/// `3k^3 - 49k^2 - 210k - 318`.
pub fn cubic_factor(k: usize) -> BigInt {
    let k = BigInt::from(k);
    BigInt::from(3) * &k * &k * &k - BigInt::from(49) * &k * &k - BigInt::from(210) * &k - BigInt::from(318)
}

/// `-(1/132300) (3k^3 - 49k^2 - 210k - 318) (k+4)^2 (k+5) C(k+3,2) C(k+3,4) C(k+3,6)`.
pub fn closed_form_minor(k: usize) -> Result<Rational> {
    check_k(k)?;
    let kk = BigInt::from(k);
    let m = k as u64 + 3;
    let four = &kk + 4;
    let numer = -cubic_factor(k) * &four * &four * (&kk + 5) * binomial(m, 2) * binomial(m, 4) * binomial(m, 6);
    Ok(Rational::new(numer, BigInt::from(132_300)))
}

/// Root location of a real polynomial relative to the imaginary axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    /// Every root has negative real part.
    Stable,
    /// Some root has positive real part and none lies on the axis.
    Unstable,
    /// Not stable, and some root lies exactly on the imaginary axis.
    Boundary,
}

#[derive(Clone, Debug)]
pub struct RouthReport {
    pub decision: Stability,
    /// Leading principal minors of the Hurwitz matrix of the sign-normalized
    /// polynomial, up to and including the first non-positive one.
    pub leading_minors: Vec<Rational>,
    pub imaginary_axis_root: bool,
}

/// Leading principal minors in order, stopping after the first that is not
/// positive. One Bareiss pass without pivoting: at step `k` the pivot is the
/// order-`k+1` leading minor of the row-scaled integer matrix.
pub fn leading_minors_until_nonpositive(a: &RatMatrix) -> Result<Vec<Rational>> {
    let n = a.order()?;
    let (mut m, scales) = a.row_scaled_integers();
    let mut out = Vec::with_capacity(n);
    let mut prev = BigInt::one();
    let mut scale = BigInt::one();
    for k in 0..n {
        scale *= &scales[k];
        let pivot = m[k][k].clone();
        out.push(Rational::new(pivot.clone(), scale.clone()));
        if !pivot.is_positive() {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &pivot - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = pivot;
    }
    Ok(out)
}

/// Whether `p` has a root on the imaginary axis: `p(0) = 0`, or the real
/// and imaginary parts of `p(iy)` share a real root.
pub fn has_imaginary_axis_root(p: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if p.coeff(0).is_zero() {
        return Ok(true);
    }
    let mut re = vec![Rational::zero(); p.coeffs().len()];
    let mut im = vec![Rational::zero(); p.coeffs().len()];
    for (j, c) in p.coeffs().iter().enumerate() {
        // i^j cycles 1, i, -1, -i
        match j % 4 {
            0 => re[j] = c.clone(),
            1 => im[j] = c.clone(),
            2 => re[j] = -c,
            _ => im[j] = -c,
        }
    }
    let g = Polynomial::new(re).gcd(&Polynomial::new(im));
    if g.degree().unwrap_or(0) == 0 {
        return Ok(false);
    }
    Ok(RealRootIsolator::new(&g)?.count_all() > 0)
}

pub fn routh_report(p: &Polynomial) -> Result<RouthReport> {
    let lead = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::InvalidParameter("stability of a constant".into())),
        Some(d) => p.coeff(d),
    };
    let p = if lead.is_negative() { -p.clone() } else { p.clone() };
    let h = build_hurwitz(&p)?;
    let leading_minors = leading_minors_until_nonpositive(&h.matrix)?;
    let all_positive = leading_minors.len() == h.order() && leading_minors.iter().all(Signed::is_positive);
    if all_positive {
        return Ok(RouthReport {
            decision: Stability::Stable,
            leading_minors,
            imaginary_axis_root: false,
        });
    }
    let axis = has_imaginary_axis_root(&p)?;
    Ok(RouthReport {
        decision: if axis { Stability::Boundary } else { Stability::Unstable },
        leading_minors,
        imaginary_axis_root: axis,
    })
}

/// Exact decision whether every root of `p` has negative real part.
pub fn routh_stable(p: &Polynomial) -> Result<Stability> {
    Ok(routh_report(p)?.decision)
}

/// A minor found negative by [`tnn_spot_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeMinor {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TnnReport {
    pub max_order: usize,
    /// Minors examined, in enumeration order, up to and including the
    /// negative one when found.
    pub minors_checked: u64,
    pub negative: Option<NegativeMinor>,
}

/// All `r`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > n {
        return out;
    }
    let mut c: Vec<usize> = (0..r).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..r).rev().find(|&i| c[i] != i + n - r) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..r {
            c[j] = c[j - 1] + 1;
        }
    }
}

const FILTER_MAX: usize = 4;

fn det_f64(m: &[[f64; FILTER_MAX]; FILTER_MAX], n: usize, row: usize, cols: u8) -> f64 {
    if row == n {
        return 1.0;
    }
    let mut acc = 0.0;
    let mut pos = 0;
    for c in 0..n {
        if cols & (1 << c) == 0 {
            continue;
        }
        let a = m[row][c];
        if a != 0.0 {
            let term = a * det_f64(m, n, row + 1, cols & !(1 << c));
            if pos % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        pos += 1;
    }
    acc
}

/// Sign of the minor on `rows x cols`. Orders up to four go through a
/// floating-point expansion with a rigorous error bound first.
fn minor_sign(exact: &[Vec<BigInt>], float: Option<&[Vec<f64>]>, rows: &[usize], cols: &[usize]) -> i8 {
    let n = rows.len();
    if let (Some(f), true) = (float, n <= FILTER_MAX) {
        let mut m = [[0.0; FILTER_MAX]; FILTER_MAX];
        let mut row_abs = 1.0;
        for (a, &r) in rows.iter().enumerate() {
            let mut s = 0.0;
            for (b, &c) in cols.iter().enumerate() {
                m[a][b] = f[r][c];
                s += f[r][c].abs();
            }
            row_abs *= s;
        }
        let approx = det_f64(&m, n, 0, ((1u16 << n) - 1) as u8);
        let terms = (1..=n).product::<usize>() as f64;
        let bound = 2.0 * (n as f64 + terms) * f64::EPSILON * row_abs;
        if approx > bound {
            return 1;
        }
        if approx < -bound {
            return -1;
        }
    }
    let mut sub: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| exact[r][c].clone()).collect())
        .collect();
    match bareiss(&mut sub).sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Look for a negative minor of order at most `max_order`. Orders ascend;
/// within an order, row sets then column sets run in lexicographic order,
/// and the first negative minor in that order is reported.
pub fn tnn_spot_check(h: &HurwitzMatrix, max_order: usize) -> Result<TnnReport> {
    minor_sign_search(&h.matrix, max_order)
}

/// [`tnn_spot_check`] for an arbitrary matrix.
pub fn minor_sign_search(a: &RatMatrix, max_order: usize) -> Result<TnnReport> {
    let (rows, cols) = (a.rows(), a.cols());
    if max_order > rows.min(cols) {
        return Err(Error::InvalidParameter(format!(
            "max_order {max_order} exceeds matrix dimension {}",
            rows.min(cols)
        )));
    }
    // Positive row scaling leaves every minor's sign unchanged.
    let (exact, _) = a.row_scaled_integers();
    let limit = 9_007_199_254_740_992.0; // 2^53
    let float: Option<Vec<Vec<f64>>> = exact
        .iter()
        .map(|row| row.iter().map(|v| v.to_f64().filter(|x| x.abs() < limit)).collect())
        .collect();

    let mut checked: u64 = 0;
    for r in 1..=max_order {
        let row_sets = combinations(rows, r);
        let col_sets = combinations(cols, r);
        let hit = row_sets.par_iter().enumerate().find_map_first(|(ri, rs)| {
            col_sets
                .iter()
                .position(|cs| minor_sign(&exact, float.as_deref(), rs, cs) < 0)
                .map(|ci| (ri, ci))
        });
        match hit {
            Some((ri, ci)) => {
                checked += (ri * col_sets.len() + ci + 1) as u64;
                let to_set = |n: usize, v: &[usize]| IndexSet::new(n, v.iter().map(|x| x + 1).collect());
                let row_set = to_set(rows, &row_sets[ri])?;
                let col_set = to_set(cols, &col_sets[ci])?;
                let value = a.minor(&row_set, &col_set)?;
                return Ok(TnnReport {
                    max_order,
                    minors_checked: checked,
                    negative: Some(NegativeMinor {
                        rows: row_set,
                        cols: col_set,
                        value,
                    }),
                });
            }
            None => checked += (row_sets.len() * col_sets.len()) as u64,
        }
    }
    Ok(TnnReport {
        max_order,
        minors_checked: checked,
        negative: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub k: usize,
    pub cubic_factor: BigInt,
    pub minor_value: Rational,
    /// The same minor computed from the Hurwitz matrix itself.
    pub direct_value: Rational,
}

impl ScanRow {
    pub fn sign(&self) -> &'static str {
        if self.minor_value.is_positive() {
            "positive"
        } else if self.minor_value.is_negative() {
            "negative"
        } else {
            "zero"
        }
    }

    pub fn agrees(&self) -> bool {
        self.minor_value == self.direct_value
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdScan {
    pub k_max: usize,
    /// Least `k` whose minor is negative.
    pub first_negative: Option<usize>,
    pub rows: Vec<ScanRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRowJson {
    pub k: usize,
    pub cubic_factor: String,
    pub minor_value: String,
    pub sign: &'static str,
    pub direct_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdScanJson {
    pub k_max: usize,
    pub first_negative: Option<usize>,
    pub rows: Vec<ScanRowJson>,
}

impl ThresholdScan {
    /// `k,cubic_factor,minor_value,sign`, one line per `k`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,cubic_factor,minor_value,sign\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                row.k,
                row.cubic_factor,
                format_fraction(&row.minor_value),
                row.sign()
            ));
        }
        out
    }

    pub fn to_json_value(&self) -> ThresholdScanJson {
        ThresholdScanJson {
            k_max: self.k_max,
            first_negative: self.first_negative,
            rows: self
                .rows
                .iter()
                .map(|r| ScanRowJson {
                    k: r.k,
                    cubic_factor: r.cubic_factor.to_string(),
                    minor_value: format_fraction(&r.minor_value),
                    sign: r.sign(),
                    direct_agrees: r.agrees(),
                })
                .collect(),
        }
    }
}

/// Signs of the minor for `k = 3..=k_max`, from the closed form and from
/// the matrix, and the least `k` where it is negative.
pub fn threshold_scan(k_max: usize) -> Result<ThresholdScan> {
    if k_max < 21 {
        return Err(Error::InvalidParameter(format!(
            "k_max = {k_max}: scan range below the known threshold 21"
        )));
    }
    let rows: Vec<ScanRow> = (3..=k_max)
        .into_par_iter()
        .map(|k| {
            Ok(ScanRow {
                k,
                cubic_factor: cubic_factor(k),
                minor_value: closed_form_minor(k)?,
                direct_value: hurwitz_minor_2to5(k)?,
            })
        })
        .collect::<Result<_>>()?;
    let first_negative = rows.iter().find(|r| r.minor_value.is_negative()).map(|r| r.k);
    Ok(ThresholdScan {
        k_max,
        first_negative,
        rows,
    })
}
