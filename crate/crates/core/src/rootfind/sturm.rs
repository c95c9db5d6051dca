//! Real-root isolation with Sturm sequences over the integers.
//!
//! A rational polynomial is scaled to a primitive integer polynomial once;
//! after that every Sturm element, sign evaluation and bisection step runs
//! on `BigInt` with no fractions. Counting uses half-open intervals
//! `(lo, hi]`, so `V(lo) - V(hi)` is the number of distinct roots inside.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::charpoly::Polynomial;
use crate::error::{Error, Result};
use crate::exact::{common_denominator, format_fraction, int, pow, Rational};

/// Dense integer polynomial, ascending degree, no trailing zeros.
type IntPoly = Vec<BigInt>;

fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Divide out the (positive) content.
fn make_primitive(p: &mut IntPoly) {
    let c = content(p);
    if !c.is_zero() && !c.is_one() {
        for x in p.iter_mut() {
            *x /= &c;
        }
    }
}

pub(crate) fn to_int_poly(p: &Polynomial) -> IntPoly {
    let den = common_denominator(p.coeffs());
    let mut out: IntPoly = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    make_primitive(&mut out);
    out
}

fn to_rat_poly(p: &[BigInt]) -> Polynomial {
    Polynomial::new(p.iter().map(|c| Rational::from_integer(c.clone())).collect())
}

fn derivative(p: &[BigInt]) -> IntPoly {
    let mut d: IntPoly = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    trim(&mut d);
    d
}

/// Pseudo-remainder `lc(b)^e · a mod b` together with the sign of the
/// factor `lc(b)^e`, so callers can recover the sign of the true remainder.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> (IntPoly, bool) {
    let db = b.len() - 1;
    let lc = &b[db];
    let negative_lc = lc.is_negative();
    let mut r: IntPoly = a.to_vec();
    let mut flips = false;
    while r.len() > db && !r.is_empty() {
        let d = r.len() - 1;
        let c = r[d].clone();
        for x in r.iter_mut() {
            *x *= lc;
        }
        for (j, bj) in b.iter().enumerate() {
            r[j + d - db] -= &c * bj;
        }
        trim(&mut r);
        if negative_lc {
            flips = !flips;
        }
    }
    (r, flips)
}

/// Primitive remainder sequence; the last nonzero entry is `gcd(a, b)` up
/// to a constant.
fn int_gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let (mut r, _) = pseudo_rem(&a, &b);
        make_primitive(&mut r);
        a = b;
        b = r;
    }
    make_primitive(&mut a);
    if a.last().is_some_and(Signed::is_negative) {
        for x in a.iter_mut() {
            *x = -&*x;
        }
    }
    a
}

/// Sturm chain `s_0 = p, s_1 = p', s_{i+1} = -rem(s_{i-1}, s_i)`, each
/// element divided by its positive content.
fn sturm_chain(p: &[BigInt]) -> Vec<IntPoly> {
    let mut chain = vec![p.to_vec()];
    let mut d = derivative(p);
    if d.is_empty() {
        return chain;
    }
    make_primitive(&mut d);
    chain.push(d);
    loop {
        let n = chain.len();
        let (mut r, flips) = pseudo_rem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        // -rem has sign -sign(lc^e) relative to the pseudo-remainder.
        if !flips {
            for x in r.iter_mut() {
                *x = -&*x;
            }
        }
        make_primitive(&mut r);
        chain.push(r);
    }
    chain
}

/// Sign of `p(num/den)` for `den > 0`, via the homogenized form
/// `Σ c_i num^i den^(d-i)`.
fn sign_at(p: &[BigInt], x: &Rational) -> i8 {
    if p.is_empty() {
        return 0;
    }
    let (num, den) = (x.numer(), x.denom());
    // Horner on the homogenized polynomial.
    let mut acc = p[p.len() - 1].clone();
    let mut den_pow = BigInt::one();
    for c in p.iter().rev().skip(1) {
        den_pow *= den;
        acc = acc * num + c * &den_pow;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sturm sequence of a square-free integer polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPoly>,
}

impl SturmSequence {
    fn new(square_free: &[BigInt]) -> Self {
        Self {
            chain: sturm_chain(square_free),
        }
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    pub fn variations_at(&self, x: &Rational) -> usize {
        variations(self.chain.iter().map(|p| sign_at(p, x)))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        variations(self.chain.iter().map(|p| {
            let s = if p[p.len() - 1].is_negative() { -1 } else { 1 };
            if (p.len() - 1) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        variations(
            self.chain
                .iter()
                .map(|p| if p[p.len() - 1].is_negative() { -1 } else { 1 }),
        )
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        if lo >= hi {
            return 0;
        }
        self.variations_at(lo).saturating_sub(self.variations_at(hi))
    }

    /// Distinct real roots on the whole line.
    pub fn count_all(&self) -> usize {
        self.variations_at_neg_inf() - self.variations_at_pos_inf()
    }
}

/// `(lo, hi]` holding exactly one real root of its polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

impl RootEnclosure {
    pub fn multiplicity_simple(&self) -> bool {
        self.multiplicity == 1
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo < x && x <= &self.hi
    }

    pub fn to_json_value(&self, digits: usize) -> RootEnclosureJson {
        RootEnclosureJson {
            lo: format_fraction(&self.lo),
            hi: format_fraction(&self.hi),
            lo_decimal: crate::exact::to_scientific(&self.lo, digits),
            hi_decimal: crate::exact::to_scientific(&self.hi, digits),
            multiplicity: self.multiplicity,
            multiplicity_simple: self.multiplicity_simple(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootEnclosureJson {
    pub lo: String,
    pub hi: String,
    pub lo_decimal: String,
    pub hi_decimal: String,
    pub multiplicity: usize,
    pub multiplicity_simple: bool,
}

/// Everything needed to isolate, count and refine the real roots of one
/// polynomial.
#[derive(Clone, Debug)]
pub struct RealRootIsolator {
    square_free: IntPoly,
    sturm: SturmSequence,
    /// Sturm sequences of `gcd(p, p')`, the gcd of that with its
    /// derivative, and so on; a root's multiplicity is one more than the
    /// number of these it is a root of.
    repeated_sturm: Vec<SturmSequence>,
    bound: Rational,
}

impl RealRootIsolator {
    pub fn new(p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let base = to_int_poly(p);
        let mut repeated = vec![base.clone()];
        loop {
            let last = repeated.last().expect("nonempty");
            if last.len() <= 1 {
                break;
            }
            let g = int_gcd(last, &derivative(last));
            repeated.push(g);
        }
        let square_free = if repeated.len() > 1 && repeated[1].len() > 1 {
            let q = to_rat_poly(&base).div_exact(&to_rat_poly(&repeated[1]), "square-free part")?;
            to_int_poly(&q)
        } else {
            base
        };
        let repeated_sturm = repeated[1..]
            .iter()
            .filter(|q| q.len() > 1)
            .map(|q| SturmSequence::new(q))
            .collect();
        let bound = root_bound(&square_free);
        Ok(Self {
            sturm: SturmSequence::new(&square_free),
            square_free,
            repeated_sturm,
            bound,
        })
    }

    /// All real roots lie strictly inside `(-bound, bound)`; a power of two.
    pub fn bound(&self) -> &Rational {
        &self.bound
    }

    pub fn sturm(&self) -> &SturmSequence {
        &self.sturm
    }

    pub fn square_free(&self) -> Polynomial {
        to_rat_poly(&self.square_free)
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.sturm.count(lo, hi)
    }

    pub fn count_all(&self) -> usize {
        self.sturm.count_all()
    }

    /// Real roots counted with multiplicity.
    pub fn count_all_with_multiplicity(&self) -> usize {
        self.count_all() + self.repeated_sturm.iter().map(SturmSequence::count_all).sum::<usize>()
    }

    fn multiplicity_in(&self, lo: &Rational, hi: &Rational) -> usize {
        1 + self.repeated_sturm.iter().take_while(|s| s.count(lo, hi) > 0).count()
    }

    fn enclosure(&self, lo: Rational, hi: Rational) -> RootEnclosure {
        let multiplicity = self.multiplicity_in(&lo, &hi);
        RootEnclosure { lo, hi, multiplicity }
    }

    /// Disjoint enclosures, ascending, for every real root in `(lo, hi]`.
    pub fn isolate(&self, lo: &Rational, hi: &Rational) -> Vec<RootEnclosure> {
        let mut out = Vec::new();
        if lo >= hi {
            return out;
        }
        let lo = lo.max(&(-&self.bound)).clone();
        let hi = hi.min(&self.bound).clone();
        if lo >= hi {
            return out;
        }
        let v_lo = self.sturm.variations_at(&lo);
        let v_hi = self.sturm.variations_at(&hi);
        self.isolate_rec(lo, hi, v_lo, v_hi, &mut out);
        out
    }

    fn isolate_rec(&self, lo: Rational, hi: Rational, v_lo: usize, v_hi: usize, out: &mut Vec<RootEnclosure>) {
        let count = v_lo.saturating_sub(v_hi);
        if count == 0 {
            return;
        }
        if count == 1 {
            out.push(self.enclosure(lo, hi));
            return;
        }
        let mid = (&lo + &hi) / int(2);
        let v_mid = self.sturm.variations_at(&mid);
        self.isolate_rec(lo, mid.clone(), v_lo, v_mid, out);
        self.isolate_rec(mid, hi, v_mid, v_hi, out);
    }

    /// The least real root in `(lo, hi]`, found by a left-first search.
    pub fn least_in(&self, lo: &Rational, hi: &Rational) -> Option<RootEnclosure> {
        let mut lo = lo.max(&(-&self.bound)).clone();
        let mut hi = hi.min(&self.bound).clone();
        if lo >= hi {
            return None;
        }
        let mut v_lo = self.sturm.variations_at(&lo);
        let mut v_hi = self.sturm.variations_at(&hi);
        if v_lo <= v_hi {
            return None;
        }
        while v_lo - v_hi > 1 {
            let mid = (&lo + &hi) / int(2);
            let v_mid = self.sturm.variations_at(&mid);
            if v_lo > v_mid {
                hi = mid;
                v_hi = v_mid;
            } else {
                lo = mid;
                v_lo = v_mid;
            }
        }
        Some(self.enclosure(lo, hi))
    }

    /// The least real root overall.
    pub fn least(&self) -> Option<RootEnclosure> {
        let b = self.bound.clone();
        self.least_in(&-b.clone(), &b)
    }

    /// Bisect until the width is at most `width`. Uses sign changes of the
    /// square-free part, which has a simple root in the enclosure.
    pub fn refine(&self, e: &RootEnclosure, width: &Rational) -> RootEnclosure {
        let mut lo = e.lo.clone();
        let mut hi = e.hi.clone();
        if &(&hi - &lo) <= width {
            return e.clone();
        }
        let p = &self.square_free;
        // The root may sit exactly on hi; then shrink onto it.
        if sign_at(p, &hi) == 0 {
            while &(&hi - &lo) > width {
                lo = (&lo + &hi) / int(2);
            }
            return RootEnclosure {
                lo,
                hi,
                multiplicity: e.multiplicity,
            };
        }
        let s_hi = sign_at(p, &hi);
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / int(2);
            let s = sign_at(p, &mid);
            if s == 0 {
                // Keep the root on the closed right end.
                hi = mid;
                while &(&hi - &lo) > width {
                    lo = (&lo + &hi) / int(2);
                }
                break;
            }
            if s == s_hi {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        RootEnclosure {
            lo,
            hi,
            multiplicity: e.multiplicity,
        }
    }

    /// Halve an enclosure once.
    fn bisect(&self, e: &RootEnclosure) -> RootEnclosure {
        let target = e.width() / int(2);
        self.refine(e, &target)
    }

    /// Whether the root in `e` is exactly `x`.
    pub fn root_equals(&self, e: &RootEnclosure, x: &Rational) -> bool {
        e.contains(x) && sign_at(&self.square_free, x) == 0
    }

    /// Order the root in `e` against a rational.
    pub fn compare_with(&self, e: &RootEnclosure, x: &Rational) -> Ordering {
        if self.root_equals(e, x) {
            return Ordering::Equal;
        }
        let mut e = e.clone();
        loop {
            if x <= &e.lo {
                return Ordering::Greater;
            }
            if x > &e.hi {
                return Ordering::Less;
            }
            // x in (lo, hi] and not the root
            if &e.hi == x {
                return Ordering::Less;
            }
            e = self.bisect(&e);
        }
    }
}

/// Cauchy bound `1 + max |c_i / c_d|`, rounded up to a power of two.
fn root_bound(p: &[BigInt]) -> Rational {
    let d = p.len() - 1;
    let lead = p[d].abs();
    let mut max = Rational::zero();
    for c in &p[..d] {
        let r = Rational::new(c.abs(), lead.clone());
        if r > max {
            max = r;
        }
    }
    let target = max + int(1);
    let mut b = int(1);
    while b <= target {
        b *= int(2);
    }
    b
}

/// Every real root of `p` in `(lo, hi]`, ascending, each with its
/// multiplicity.
pub fn sturm_isolate(p: &Polynomial, lo: &Rational, hi: &Rational) -> Result<Vec<RootEnclosure>> {
    Ok(RealRootIsolator::new(p)?.isolate(lo, hi))
}

/// Narrow `e` to width at most `width`.
pub fn refine(e: &RootEnclosure, p: &Polynomial, width: &Rational) -> Result<RootEnclosure> {
    Ok(RealRootIsolator::new(p)?.refine(e, width))
}

/// `2^-bits`.
pub fn dyadic_width(bits: usize) -> Rational {
    pow(&crate::exact::rat(1, 2), bits)
}

/// Compare two real algebraic numbers given by isolating enclosures.
/// Refines both to `2^-80`; if the enclosures still overlap, equality is
/// decided exactly through the gcd of the two square-free parts.
pub fn compare_roots(a: &RealRootIsolator, ea: &RootEnclosure, b: &RealRootIsolator, eb: &RootEnclosure) -> Ordering {
    let tight = dyadic_width(80);
    let mut ea = ea.clone();
    let mut eb = eb.clone();
    let mut gcd_checked = false;
    loop {
        if ea.hi <= eb.lo {
            return Ordering::Less;
        }
        if eb.hi <= ea.lo {
            return Ordering::Greater;
        }
        if !gcd_checked && ea.width() <= tight && eb.width() <= tight {
            gcd_checked = true;
            let g = int_gcd(&a.square_free, &b.square_free);
            if g.len() > 1 {
                let lo = (&ea.lo).max(&eb.lo).clone();
                let hi = (&ea.hi).min(&eb.hi).clone();
                if SturmSequence::new(&g).count(&lo, &hi) == 1 {
                    return Ordering::Equal;
                }
            }
        }
        if ea.width() >= eb.width() {
            ea = a.bisect(&ea);
        } else {
            eb = b.bisect(&eb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{nu, phi};
    use crate::exact::{rat, to_f64};

    #[test]
    fn two_roots_of_x2_minus_1() {
        let p = Polynomial::from_i64(&[-1, 0, 1]);
        let roots = sturm_isolate(&p, &int(-2), &int(2)).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].contains(&int(-1)));
        assert!(roots[1].contains(&int(1)));
        assert!(roots.iter().all(RootEnclosure::multiplicity_simple));
    }

    #[test]
    fn half_open_counting() {
        let p = Polynomial::from_i64(&[-1, 0, 1]);
        let iso = RealRootIsolator::new(&p).unwrap();
        assert_eq!(iso.count(&int(-1), &int(1)), 1);
        assert_eq!(iso.count(&int(-2), &int(-1)), 1);
        assert_eq!(iso.count_all(), 2);
    }

    #[test]
    fn cube_root_enclosure_and_refine() {
        let p = phi(1, &rat(1, 2), 1).unwrap();
        let roots = sturm_isolate(&p, &int(0), &int(1)).unwrap();
        assert_eq!(roots.len(), 1);
        let expected = 1.0 - 0.5f64.cbrt();
        let e = refine(&roots[0], &p, &dyadic_width(80)).unwrap();
        assert!(e.width() <= dyadic_width(80));
        assert!((to_f64(&e.lo) - expected).abs() < 1e-15);
        let iso = RealRootIsolator::new(&p).unwrap();
        assert_eq!(iso.count(&e.lo, &e.hi), 1);
        let again = iso.refine(&e, &dyadic_width(10));
        assert_eq!(again, e);
    }

    #[test]
    fn nu_has_simple_root_at_zero() {
        for k in 1..=4 {
            for j in 1..=k + 1 {
                let p = nu(k, j).unwrap();
                let iso = RealRootIsolator::new(&p).unwrap();
                let e = iso.least_in(&rat(-1, 8), &rat(1, 8)).unwrap();
                assert!(e.multiplicity_simple());
                assert!(e.lo < Rational::zero() && Rational::zero() < e.hi || e.hi.is_zero());
                assert_eq!(iso.compare_with(&e, &int(0)), Ordering::Equal);
            }
        }
    }

    #[test]
    fn multiplicities_from_gcd_chain() {
        // (λ-1)^3 (λ+2)
        let p = &Polynomial::from_i64(&[-1, 1]).pow(3) * &Polynomial::from_i64(&[2, 1]);
        let iso = RealRootIsolator::new(&p).unwrap();
        let roots = iso.isolate(&int(-10), &int(10));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 1);
        assert_eq!(roots[1].multiplicity, 3);
        assert_eq!(iso.count_all_with_multiplicity(), 4);
    }

    #[test]
    fn no_real_roots() {
        let p = Polynomial::from_i64(&[1, 0, 1]);
        let iso = RealRootIsolator::new(&p).unwrap();
        assert_eq!(iso.count_all(), 0);
        assert!(iso.least().is_none());
    }

    #[test]
    fn comparing_equal_and_distinct_roots() {
        let a = Polynomial::from_i64(&[-2, 0, 1]); // ±√2
        let b = &Polynomial::from_i64(&[-2, 0, 1]) * &Polynomial::from_i64(&[-3, 1]);
        let c = Polynomial::from_i64(&[-3, 0, 1]); // ±√3
        let ia = RealRootIsolator::new(&a).unwrap();
        let ib = RealRootIsolator::new(&b).unwrap();
        let ic = RealRootIsolator::new(&c).unwrap();
        let ra = ia.isolate(&int(0), &int(4));
        let rb = ib.isolate(&int(0), &int(4));
        let rc = ic.isolate(&int(0), &int(4));
        assert_eq!(compare_roots(&ia, &ra[0], &ib, &rb[0]), Ordering::Equal);
        assert_eq!(compare_roots(&ia, &ra[0], &ic, &rc[0]), Ordering::Less);
        assert_eq!(compare_roots(&ib, &rb[1], &ic, &rc[0]), Ordering::Greater);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            sturm_isolate(&Polynomial::zero(), &int(0), &int(1)),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        let iso = RealRootIsolator::new(&Polynomial::constant(int(3))).unwrap();
        assert_eq!(iso.count_all(), 0);
        assert!(iso.isolate(&int(-5), &int(5)).is_empty());
    }
}
