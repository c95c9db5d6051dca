//! Search for a `t = 2^-m` that makes every `A(n, k, t)`, `n <= 2k+2`, a
//! τ-matrix.

use num_bigint::BigInt;
use serde::Serialize;

use super::{is_tau, Caps};
use crate::error::{Error, Result};
use crate::exact::{format_fraction, Rational};
use crate::family::{build_a, FamilyParams};
use crate::rootfind::{lambda_chain, ChainFailure, LambdaChainJson};

#[derive(Clone, Debug, Serialize)]
pub struct TauAttempt {
    pub m: u32,
    pub t: String,
    pub chain_strictly_decreasing: bool,
    pub chain_failure: Option<ChainFailure>,
    /// Orders `n` checked with `is_tau`, in order, until the first failure.
    pub orders_checked: Vec<usize>,
    pub first_failing_n: Option<usize>,
    pub success: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauSearch {
    pub k: usize,
    pub m_max: u32,
    pub attempts: Vec<TauAttempt>,
    /// The first `m` that worked.
    pub chosen_m: Option<u32>,
    pub chosen_t: Option<String>,
    pub chain: Option<LambdaChainJson>,
}

/// Try `m = 1, 2, ..., m_max` and stop at the first `t = 2^-m` whose `λ_j`
/// chain strictly decreases and for which `is_tau` holds on every order
/// `1..=2k+2`.
pub fn find_tau_parameter(k: usize, m_max: u32, caps: &Caps) -> Result<TauSearch> {
    if k == 0 {
        return Err(Error::InvalidParameter("band parameter k must be >= 1".into()));
    }
    if !(1..=60).contains(&m_max) {
        return Err(Error::InvalidParameter(format!("m_max = {m_max} outside 1..=60")));
    }
    let mut search = TauSearch {
        k,
        m_max,
        attempts: Vec::new(),
        chosen_m: None,
        chosen_t: None,
        chain: None,
    };
    for m in 1..=m_max {
        let t = Rational::new(BigInt::from(1), BigInt::from(1u64) << m);
        let chain = lambda_chain(k, &t)?;
        let mut attempt = TauAttempt {
            m,
            t: format_fraction(&t),
            chain_strictly_decreasing: chain.strictly_decreasing && chain.failure.is_none(),
            chain_failure: chain.failure.clone(),
            orders_checked: Vec::new(),
            first_failing_n: None,
            success: false,
        };
        if attempt.chain_strictly_decreasing {
            for n in 1..=2 * k + 2 {
                let a = build_a(&FamilyParams::new(n, k, t.clone())?)?;
                attempt.orders_checked.push(n);
                if !is_tau(&a, caps)?.holds {
                    attempt.first_failing_n = Some(n);
                    break;
                }
            }
            attempt.success = attempt.first_failing_n.is_none();
        }
        let success = attempt.success;
        search.attempts.push(attempt);
        if success {
            search.chosen_m = Some(m);
            search.chosen_t = Some(format_fraction(&t));
            search.chain = Some(chain.to_json_value(25));
            break;
        }
    }
    Ok(search)
}
