//! P and GKK certificates for Toeplitz Hessenberg matrices of any order.
//!
//! With zeros below the subdiagonal, a principal submatrix `A(α)` is block
//! upper triangular over the maximal runs of consecutive indices in `α`,
//! and each diagonal block is a copy of the leading block of the same
//! length. So `A[α] = Π d_len` over the runs, where `d_m` is the order-`m`
//! leading minor, and the `n` numbers `d_1..d_n` determine every principal
//! minor.
//!
//! When `d_m = t^((m-k-1)_+)` with `0 < t < 1`, the exponent of `A[α]` is
//! the number of length-`(k+2)` windows inside `α`. Window containment is
//! supermodular in `α`, which gives Hadamard–Fischer for every pair at
//! once. Other matrices get interval pairs exhaustively plus a seeded
//! sample of general pairs, which is evidence rather than proof.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{ClassReport, Property, Witness};
use crate::error::Result;
use crate::exact::{format_fraction, pow, IndexSet, RatMatrix, Rational};

/// Square, constant along diagonals, zero below the first subdiagonal.
pub fn is_toeplitz_hessenberg(a: &RatMatrix) -> bool {
    a.is_square() && a.is_toeplitz() && a.is_hessenberg()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructuredOptions {
    /// Random general pairs `(α, β)` checked when no closed form applies.
    pub samples: usize,
    pub seed: u64,
    /// Principal minors recomputed by elimination and compared with the run
    /// product.
    pub direct_checks: usize,
}

impl Default for StructuredOptions {
    fn default() -> Self {
        Self {
            samples: 20_000,
            seed: 0x6b6b_2026,
            direct_checks: 6,
        }
    }
}

/// `d_0 = 1, d_1, ..., d_n` from
/// `d_m = Σ_{i=1..m} (-s)^(i-1) h_(i-1) d_(m-i)`, where `s` is the
/// subdiagonal entry and `h` the first row.
pub(crate) fn leading_minors(a: &RatMatrix) -> Vec<Rational> {
    let n = a.rows();
    let h = a.row(0);
    let neg_s = if n > 1 { -a.get(1, 0) } else { Rational::zero() };
    let mut powers = vec![Rational::one()];
    for i in 1..n {
        let next = &powers[i - 1] * &neg_s;
        powers.push(next);
    }
    let mut d = vec![Rational::one()];
    for m in 1..=n {
        let v = (1..=m)
            .filter(|&i| !h[i - 1].is_zero())
            .map(|i| &powers[i - 1] * &h[i - 1] * &d[m - i])
            .fold(Rational::zero(), |acc, x| acc + x);
        d.push(v);
    }
    d
}

fn run_lengths(mask: u64, n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut len = 0;
    for i in 0..n {
        if mask >> i & 1 == 1 {
            len += 1;
        } else if len > 0 {
            out.push(len);
            len = 0;
        }
    }
    if len > 0 {
        out.push(len);
    }
    out
}

fn run_product(d: &[Rational], mask: u64, n: usize) -> Rational {
    run_lengths(mask, n)
        .into_iter()
        .fold(Rational::one(), |acc, len| acc * &d[len])
}

fn interval(lo: usize, hi: usize) -> u64 {
    // 1-based inclusive `lo..=hi`, empty when lo > hi
    if lo > hi {
        0
    } else {
        ((1u64 << (hi - lo + 1)) - 1) << (lo - 1)
    }
}

/// `d_m = t^((m-k-1)_+)` for all `m`, with `0 < t < 1`. `None` for anything
/// else, including the case where every `d_m` is 1.
pub(crate) fn detect_window_form(d: &[Rational]) -> Option<(usize, Rational)> {
    let n = d.len() - 1;
    let ones = (1..=n).take_while(|&m| d[m].is_one()).count();
    if ones == 0 || ones == n {
        return None;
    }
    let k = ones - 1;
    let t = d[k + 2].clone();
    if !t.is_positive() || t >= Rational::one() {
        return None;
    }
    (k + 2..=n).all(|m| d[m] == pow(&t, m - k - 1)).then_some((k, t))
}

fn exponent_check(n: usize, k: usize) -> Option<Witness> {
    let f = |m: usize| m.saturating_sub(k + 1);
    (0..=n).into_par_iter().find_map_first(|x| {
        for y in 0..=n - x {
            for z in 0..=n - x - y {
                if f(x + y) + f(x + z) > f(x) + f(x + y + z) {
                    return Some(Witness::ExponentInequality { x, y, z, k });
                }
            }
        }
        None
    })
}

fn hf_witness(d: &[Rational], n: usize, alpha: u64, beta: u64) -> Option<Witness> {
    let (u, i) = (alpha | beta, alpha & beta);
    let ma = run_product(d, alpha, n);
    let mb = run_product(d, beta, n);
    let mu = run_product(d, u, n);
    let mi = run_product(d, i, n);
    (&ma * &mb < &mu * &mi).then(|| Witness::HadamardFischer {
        alpha: IndexSet::from_mask(n, alpha),
        beta: IndexSet::from_mask(n, beta),
        minor_alpha: ma,
        minor_beta: mb,
        minor_union: mu,
        minor_intersection: mi,
    })
}

/// Pairs of intervals whose union starts at 1. Every interval pair is a
/// translate of one of these, and translation preserves run lengths.
fn interval_pairs(d: &[Rational], n: usize) -> (u64, Option<Witness>) {
    let count = std::sync::atomic::AtomicU64::new(0);
    let hit = (1..=n).into_par_iter().find_map_first(|b1| {
        // α = 1..=b1; β = a2..=b2 anywhere, both orders covered by symmetry
        for a2 in 1..=n {
            for b2 in a2..=n {
                count.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if let Some(w) = hf_witness(d, n, interval(1, b1), interval(a2, b2)) {
                    return Some(w);
                }
            }
        }
        None
    });
    (count.into_inner(), hit)
}

fn sample_pairs(d: &[Rational], n: usize, opts: &StructuredOptions) -> Option<Witness> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let pairs: Vec<(u64, u64)> = (0..opts.samples)
        .map(|_| (rng.random::<u64>() & full, rng.random::<u64>() & full))
        .collect();
    pairs.par_iter().find_map_first(|&(a, b)| hf_witness(d, n, a, b))
}

/// Masks for the direct checks: the full set, an alternating set, and
/// seeded random subsets.
fn direct_masks(n: usize, opts: &StructuredOptions) -> Vec<u64> {
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5555);
    let mut masks = vec![full, 0x5555_5555_5555_5555 & full];
    while masks.len() < opts.direct_checks.max(2) {
        let m = rng.random::<u64>() & full;
        if m != 0 {
            masks.push(m);
        }
    }
    masks.truncate(opts.direct_checks.max(2));
    masks
}

fn direct_agree(a: &RatMatrix, d: &[Rational], masks: &[u64]) -> Result<bool> {
    let n = a.rows();
    let ok: Vec<bool> = masks
        .par_iter()
        .map(|&m| Ok(a.principal_minor(&IndexSet::from_mask(n, m))? == run_product(d, m, n)))
        .collect::<Result<_>>()?;
    Ok(ok.into_iter().all(|x| x))
}

fn first_nonpositive(d: &[Rational]) -> Option<usize> {
    (1..d.len()).find(|&m| !d[m].is_positive())
}

/// P-matrix test for Toeplitz Hessenberg input: all principal minors are
/// run products of leading minors, so `d_m > 0` for all `m` decides it.
pub fn p_structured(a: &RatMatrix) -> Result<ClassReport> {
    let n = a.order()?;
    let d = leading_minors(a);
    let witness = first_nonpositive(&d).map(|m| Witness::PrincipalMinor {
        alpha: IndexSet::range(n, 1, m).expect("in range"),
        value: d[m].clone(),
    });
    let direct = direct_agree(a, &d, &direct_masks(n, &StructuredOptions::default()))?;
    Ok(ClassReport::new(Property::P, n, witness)
        .with("method", "structured")
        .with("certificate", "complete")
        .with("direct_checks_agree", direct)
        .with("leading_minors", d[1..].iter().map(format_fraction).collect::<Vec<_>>()))
}

/// GKK test for Toeplitz Hessenberg input of any order.
pub fn gkk_structured(a: &RatMatrix, opts: &StructuredOptions) -> Result<ClassReport> {
    let n = a.order()?;
    if n > 63 {
        return Err(crate::error::Error::CapExceeded {
            what: "structured GKK (bitmask index sets)",
            n,
            cap: 63,
        });
    }
    let d = leading_minors(a);
    let direct = direct_agree(a, &d, &direct_masks(n, opts))?;
    if let Some(m) = first_nonpositive(&d) {
        let w = Witness::PrincipalMinor {
            alpha: IndexSet::range(n, 1, m)?,
            value: d[m].clone(),
        };
        return Ok(ClassReport::new(Property::Gkk, n, Some(w))
            .with("method", "structured")
            .with("stage", "P")
            .with("direct_checks_agree", direct));
    }
    let (intervals, hit) = interval_pairs(&d, n);
    if let Some(w) = hit {
        return Ok(ClassReport::new(Property::Gkk, n, Some(w))
            .with("method", "structured")
            .with("stage", "HF")
            .with("interval_pairs", intervals)
            .with("direct_checks_agree", direct));
    }
    if d[1..].iter().all(One::is_one) {
        // every principal minor is 1
        return Ok(ClassReport::new(Property::Gkk, n, None)
            .with("method", "structured")
            .with("certificate", "complete")
            .with("form", "unit minors")
            .with("interval_pairs", intervals)
            .with("direct_checks_agree", direct));
    }
    if let Some((k, t)) = detect_window_form(&d) {
        let witness = exponent_check(n, k);
        return Ok(ClassReport::new(Property::Gkk, n, witness)
            .with("method", "structured")
            .with("certificate", "complete")
            .with("form", json!({ "k": k, "t": format_fraction(&t) }))
            .with("interval_pairs", intervals)
            .with("direct_checks_agree", direct));
    }
    let witness = sample_pairs(&d, n, opts);
    Ok(ClassReport::new(Property::Gkk, n, witness)
        .with("method", "structured")
        .with("certificate", "sampled")
        .with("interval_pairs", intervals)
        .with("random_pairs", opts.samples)
        .with("seed", opts.seed)
        .with("direct_checks_agree", direct))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_gkk, is_p_matrix, Caps};
    use crate::exact::{int, rat};
    use crate::family::{build_a, build_b, FamilyParams};

    #[test]
    fn leading_minor_recurrence_matches_det() {
        let a = build_a(&FamilyParams::new(9, 2, rat(1, 3)).unwrap()).unwrap();
        let d = leading_minors(&a);
        for m in 1..=9 {
            let rows = IndexSet::range(9, 1, m).unwrap();
            assert_eq!(d[m], a.principal_minor(&rows).unwrap());
        }
        let b = RatMatrix::from_i64(&[&[2, -1, 3, 5], &[4, 2, -1, 3], &[0, 4, 2, -1], &[0, 0, 4, 2]]).unwrap();
        assert!(is_toeplitz_hessenberg(&b));
        let d = leading_minors(&b);
        assert_eq!(d[4], b.det().unwrap());
    }

    #[test]
    fn run_products_match_minors() {
        let a = build_a(&FamilyParams::new(8, 1, rat(2, 5)).unwrap()).unwrap();
        let d = leading_minors(&a);
        for mask in 1..1u64 << 8 {
            assert_eq!(
                run_product(&d, mask, 8),
                a.principal_minor(&IndexSet::from_mask(8, mask)).unwrap()
            );
        }
    }

    #[test]
    fn window_form_detection() {
        let a = build_a(&FamilyParams::new(10, 3, rat(1, 2)).unwrap()).unwrap();
        assert_eq!(detect_window_form(&leading_minors(&a)), Some((3, rat(1, 2))));
        let b = build_b(2).unwrap();
        assert_eq!(detect_window_form(&leading_minors(&b)), None);
        assert!(exponent_check(30, 4).is_none());
    }

    #[test]
    fn agrees_with_sweeps_on_small_orders() {
        let caps = Caps::default();
        for (n, k, t) in [(6, 1, rat(1, 2)), (7, 2, rat(3, 4)), (8, 3, rat(1, 9))] {
            let a = build_a(&FamilyParams::new(n, k, t).unwrap()).unwrap();
            let s = gkk_structured(&a, &StructuredOptions::default()).unwrap();
            assert_eq!(s.holds, is_gkk(&a, &caps).unwrap().holds);
            assert_eq!(s.params["certificate"], "complete");
            assert_eq!(p_structured(&a).unwrap().holds, is_p_matrix(&a, &caps).unwrap().holds);
        }
        let b = build_b(2).unwrap();
        let s = gkk_structured(&b, &StructuredOptions::default()).unwrap();
        assert_eq!(s.holds, is_gkk(&b, &caps).unwrap().holds);
    }

    #[test]
    fn interval_violation_found() {
        // d_1 = 1, d_2 = 1 - (-3) = 4 > d_1^2: A[1] A[2] < A[12] A[∅]
        let a = RatMatrix::from_i64(&[&[1, -3, 0], &[1, 1, -3], &[0, 1, 1]]).unwrap();
        let r = gkk_structured(&a, &StructuredOptions::default()).unwrap();
        assert!(!r.holds);
        assert!(r.verify_witness(&a).unwrap());
        assert_eq!(r.holds, is_gkk(&a, &Caps::default()).unwrap().holds);
    }

    #[test]
    fn nonpositive_leading_minor() {
        let a = RatMatrix::from_i64(&[&[1, 2], &[1, 1]]).unwrap();
        let r = p_structured(&a).unwrap();
        assert!(!r.holds);
        assert_eq!(
            r.witness,
            Some(Witness::PrincipalMinor {
                alpha: IndexSet::range(2, 1, 2).unwrap(),
                value: int(-1)
            })
        );
        assert!(r.verify_witness(&a).unwrap());
    }

    #[test]
    fn large_family_member() {
        let a = build_a(&FamilyParams::new(44, 21, rat(1, 2)).unwrap()).unwrap();
        let r = gkk_structured(&a, &StructuredOptions::default()).unwrap();
        assert!(r.holds);
        assert_eq!(r.params["direct_checks_agree"], true);
    }
}
