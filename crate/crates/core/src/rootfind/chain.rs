//! Least positive roots `λ_j` of `φ_j`, `j = 1..=k+1`, and whether they
//! strictly decrease.

use std::cmp::Ordering;

use num_traits::{One, Zero};
use serde::Serialize;

use super::sturm::{compare_roots, RealRootIsolator, RootEnclosure, RootEnclosureJson};
use crate::charpoly::phi;
use crate::error::Result;
use crate::exact::{format_fraction, Rational};
use crate::family::check_t;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainFailure {
    /// `φ_j` has no root in `(0, 1]`.
    NoRootInUnitInterval { j: usize },
    /// `φ_j` has a real root `<= 0`, so `λ_j` is not its least real root.
    NonpositiveRealRoot { j: usize },
    /// `λ_j` is a multiple root.
    MultipleRoot { j: usize },
}

#[derive(Clone, Debug)]
pub struct LambdaChain {
    pub k: usize,
    pub t: Rational,
    /// `λ_1, λ_2, ...` as far as they could be certified.
    pub roots: Vec<RootEnclosure>,
    pub isolators: Vec<RealRootIsolator>,
    /// `λ_1 > λ_2 > ... > λ_{k+1}` certified with disjoint enclosures.
    pub strictly_decreasing: bool,
    /// The first `j` with `λ_j >= λ_{j-1}`.
    pub first_violation: Option<usize>,
    pub failure: Option<ChainFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LambdaChainJson {
    pub k: usize,
    pub t: String,
    pub roots: Vec<RootEnclosureJson>,
    pub strictly_decreasing: bool,
    pub first_violation: Option<usize>,
    pub failure: Option<ChainFailure>,
}

impl LambdaChain {
    pub fn to_json_value(&self, digits: usize) -> LambdaChainJson {
        LambdaChainJson {
            k: self.k,
            t: format_fraction(&self.t),
            roots: self.roots.iter().map(|e| e.to_json_value(digits)).collect(),
            strictly_decreasing: self.strictly_decreasing,
            first_violation: self.first_violation,
            failure: self.failure.clone(),
        }
    }
}

/// Isolate every `λ_j` and compare neighbours exactly.
pub fn lambda_chain(k: usize, t: &Rational) -> Result<LambdaChain> {
    check_t(t)?;
    let mut chain = LambdaChain {
        k,
        t: t.clone(),
        roots: Vec::new(),
        isolators: Vec::new(),
        strictly_decreasing: false,
        first_violation: None,
        failure: None,
    };
    let zero = Rational::zero();
    let one = Rational::one();
    for j in 1..=k + 1 {
        let iso = RealRootIsolator::new(&phi(k, t, j)?)?;
        let Some(e) = iso.least_in(&zero, &one) else {
            chain.failure = Some(ChainFailure::NoRootInUnitInterval { j });
            return Ok(chain);
        };
        if iso.count(&-iso.bound().clone(), &zero) > 0 {
            chain.failure = Some(ChainFailure::NonpositiveRealRoot { j });
            return Ok(chain);
        }
        if !e.multiplicity_simple() {
            chain.failure = Some(ChainFailure::MultipleRoot { j });
            return Ok(chain);
        }
        if let (Some(prev), Some(prev_iso)) = (chain.roots.last(), chain.isolators.last()) {
            if chain.first_violation.is_none() && compare_roots(&iso, &e, prev_iso, prev) != Ordering::Less {
                chain.first_violation = Some(j);
            }
        }
        chain.roots.push(e);
        chain.isolators.push(iso);
    }
    chain.strictly_decreasing = chain.first_violation.is_none();
    Ok(chain)
}
