use std::cmp::Ordering;

use gkk::charpoly::{charpoly, eta, Polynomial};
use gkk::classify::{is_omega, is_p_matrix, is_tau, min_real_eig, Caps};
use gkk::exact::{int, positive_part, pow, rat, IndexSet, RatMatrix};
use gkk::family::{build_a, FamilyParams};
use gkk::hurwitz::{routh_stable, Stability};
use gkk::rootfind::complex_roots;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn family(n: usize, k: usize, t: (i64, i64)) -> RatMatrix {
    build_a(&FamilyParams::new(n, k, rat(t.0, t.1)).unwrap()).unwrap()
}

#[test]
fn leading_minors_of_long_members() {
    for (k, t) in [(1, (1, 2)), (2, (1, 3)), (4, (3, 4))] {
        let n = 3 * k + 8;
        let a = family(n, k, t);
        for m in 1..=n {
            let lead = IndexSet::range(n, 1, m).unwrap();
            let expected = pow(&rat(t.0, t.1), positive_part(m as i64 - k as i64 - 1));
            assert_eq!(a.principal_minor(&lead).unwrap(), expected, "k={k} m={m}");
        }
    }
}

/// A(α) is block upper triangular over the runs of α, each diagonal block
/// a leading block, so its characteristic polynomial factors over runs.
#[test]
fn principal_submatrix_spectrum_factors_over_runs() {
    for (n, k, t) in [(7, 1, (1, 2)), (8, 2, (1, 4)), (9, 3, (2, 3))] {
        let a = family(n, k, t);
        let leading: Vec<Polynomial> = (0..=n)
            .map(|m| {
                if m == 0 {
                    Polynomial::constant(int(1))
                } else {
                    charpoly(&a.principal(&IndexSet::range(n, 1, m).unwrap()).unwrap()).unwrap()
                }
            })
            .collect();
        for mask in 1u64..(1 << n) {
            let alpha = IndexSet::from_mask(n, mask);
            let product = alpha
                .runs()
                .iter()
                .fold(Polynomial::constant(int(1)), |acc, &(_, len)| &acc * &leading[len]);
            assert_eq!(
                charpoly(&a.principal(&alpha).unwrap()).unwrap(),
                product,
                "mask {mask:b}"
            );
        }
    }
}

#[test]
fn eta_stability_matches_numerical_roots() {
    for k in 1..=23 {
        let p = eta(k).unwrap();
        let roots = complex_roots(&p, 1e-20).unwrap();
        let max_re = roots.iter().map(|r| r.re_f64()).fold(f64::NEG_INFINITY, f64::max);
        assert!(max_re.abs() > 1e-9, "k={k}: root too close to the axis to compare");
        let expected = if max_re < 0.0 {
            Stability::Stable
        } else {
            Stability::Unstable
        };
        assert_eq!(routh_stable(&p).unwrap(), expected, "k={k} max re {max_re}");
    }
}

/// Among ω-matrices with nonzero determinant, τ coincides with P.
#[test]
fn nonsingular_omega_tau_iff_p() {
    let caps = Caps::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut omega, mut tau_count) = (0, 0);
    for idx in 0..300 {
        let n = rng.random_range(2..=4usize);
        let a = match idx % 3 {
            // Z-matrix
            0 => RatMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    int(rng.random_range(-2..=6))
                } else {
                    int(-rng.random_range(0..=3))
                }
            }),
            // symmetric
            1 => {
                let b = RatMatrix::from_fn(n, n, |_, _| int(rng.random_range(-3..=3)));
                RatMatrix::from_fn(n, n, |i, j| b.get(i, j) + b.get(j, i))
            }
            _ => RatMatrix::from_fn(n, n, |_, _| int(rng.random_range(-3..=3))),
        };
        if a.det().unwrap() == int(0) || !is_omega(&a, &caps).unwrap().holds {
            continue;
        }
        omega += 1;
        let tau = is_tau(&a, &caps).unwrap().holds;
        tau_count += usize::from(tau);
        assert_eq!(tau, is_p_matrix(&a, &caps).unwrap().holds, "{}", a.to_json());
    }
    assert!(omega >= 100, "only {omega} omega matrices");
    assert!(tau_count > 0 && tau_count < omega);
}

#[test]
fn least_real_eigenvalue_of_family_is_nonincreasing_in_order() {
    let (k, t) = (2, (1, 8));
    let n = 2 * k + 2;
    let a = family(n, k, t);
    let ls: Vec<_> = (1..=n)
        .map(|m| min_real_eig(&a.principal(&IndexSet::range(n, 1, m).unwrap()).unwrap()).unwrap())
        .collect();
    for w in ls.windows(2) {
        assert_ne!(w[1].compare(&w[0]), Ordering::Greater);
    }
}
