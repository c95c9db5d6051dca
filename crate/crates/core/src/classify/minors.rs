//! Brute-force sweeps over principal and almost-principal minors.
//!
//! Rows are scaled by positive integers first, so every minor is handled
//! as an integer whose sign, and whose place in the Hadamard–Fischer
//! inequality, matches the rational minor. (Both sides of that inequality
//! pick up the same product of row scales.)

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;

use super::structured::{gkk_structured, is_toeplitz_hessenberg, p_structured, StructuredOptions};
use super::{check_cap, Caps, ClassReport, Property, Witness};
use crate::error::Result;
use crate::exact::{bareiss, subsets_in_order, IndexSet, RatMatrix, Rational};

/// Integer principal minors of the row-scaled matrix, indexed by bitmask.
pub(crate) struct MinorTable {
    n: usize,
    scales: Vec<BigInt>,
    values: Vec<BigInt>,
}

impl MinorTable {
    pub(crate) fn new(a: &RatMatrix) -> Result<Self> {
        let n = a.order()?;
        let (scaled, scales) = a.row_scaled_integers();
        let values = (0..1u64 << n)
            .into_par_iter()
            .map(|mask| integer_minor(&scaled, mask, mask))
            .collect();
        Ok(Self { n, scales, values })
    }

    fn get(&self, mask: u64) -> &BigInt {
        &self.values[mask as usize]
    }

    /// The rational minor `A[α, β]`.
    fn rational(&self, rows: u64, value: BigInt) -> Rational {
        let scale: BigInt = (0..self.n)
            .filter(|i| rows >> i & 1 == 1)
            .map(|i| self.scales[i].clone())
            .product();
        Rational::new(value, scale)
    }

    fn principal(&self, mask: u64) -> Rational {
        self.rational(mask, self.get(mask).clone())
    }
}

fn integer_minor(m: &[Vec<BigInt>], rows: u64, cols: u64) -> BigInt {
    let r: Vec<usize> = (0..m.len()).filter(|i| rows >> i & 1 == 1).collect();
    let c: Vec<usize> = (0..m.len()).filter(|i| cols >> i & 1 == 1).collect();
    if r.is_empty() {
        return BigInt::from(1);
    }
    let mut sub: Vec<Vec<BigInt>> = r
        .iter()
        .map(|&i| c.iter().map(|&j| m[i][j].clone()).collect())
        .collect();
    bareiss(&mut sub)
}

fn first_nonpositive(table: &MinorTable, order: &[u64]) -> Option<Witness> {
    order
        .iter()
        .skip(1)
        .find(|&&mask| !table.get(mask).is_positive())
        .map(|&mask| Witness::PrincipalMinor {
            alpha: IndexSet::from_mask(table.n, mask),
            value: table.principal(mask),
        })
}

/// Every principal minor positive. Above the sweep cap, Toeplitz
/// Hessenberg input is handled through its leading minors.
pub fn is_p_matrix(a: &RatMatrix, caps: &Caps) -> Result<ClassReport> {
    let n = a.order()?;
    if n > caps.p && is_toeplitz_hessenberg(a) {
        return p_structured(a);
    }
    check_cap("P-matrix sweep", n, caps.p)?;
    let table = MinorTable::new(a)?;
    let witness = first_nonpositive(&table, &subsets_in_order(n));
    Ok(ClassReport::new(Property::P, n, witness)
        .with("method", "sweep")
        .with("principal_minors", (1u64 << n) - 1))
}

/// `A[α, β] A[β, α] >= 0` over all almost-principal pairs
/// `α = γ ∪ {i}`, `β = γ ∪ {j}`, `i < j`, `i, j ∉ γ`. Witnesses are ordered
/// by `γ` (cardinality, then lexicographic), then `(i, j)`.
///
/// Above the cap, Toeplitz Hessenberg input with a complete structured GKK
/// certificate is reported as holding: for P-matrices, GKK and weak sign
/// symmetry coincide. Anything else above the cap is an error.
pub fn is_weakly_sign_symmetric(a: &RatMatrix, caps: &Caps) -> Result<ClassReport> {
    let n = a.order()?;
    if n > caps.wss && is_toeplitz_hessenberg(a) && n <= 63 {
        let gkk = gkk_structured(a, &StructuredOptions::default())?;
        let complete = gkk.params.get("certificate").and_then(|v| v.as_str()) == Some("complete");
        if gkk.holds && complete {
            return Ok(ClassReport::new(Property::Wss, n, None)
                .with("method", "structured")
                .with("derived_from", "GKK")
                .with("certificate", "complete"));
        }
    }
    check_cap("weak sign symmetry sweep", n, caps.wss)?;
    let (scaled, _) = a.row_scaled_integers();
    let order = subsets_in_order(n);
    let hit = order.par_iter().find_map_first(|&gamma| {
        for i in 0..n {
            if gamma >> i & 1 == 1 {
                continue;
            }
            for j in i + 1..n {
                if gamma >> j & 1 == 1 {
                    continue;
                }
                let alpha = gamma | 1 << i;
                let beta = gamma | 1 << j;
                let f = integer_minor(&scaled, alpha, beta);
                let b = integer_minor(&scaled, beta, alpha);
                if (f * b).is_negative() {
                    return Some((alpha, beta));
                }
            }
        }
        None
    });
    let witness = match hit {
        None => None,
        Some((alpha, beta)) => {
            let alpha = IndexSet::from_mask(n, alpha);
            let beta = IndexSet::from_mask(n, beta);
            Some(Witness::AlmostPrincipal {
                forward: a.minor(&alpha, &beta)?,
                backward: a.minor(&beta, &alpha)?,
                alpha,
                beta,
            })
        }
    };
    let pairs = if n >= 2 {
        (n * (n - 1) / 2) as u64 * (1u64 << (n - 2))
    } else {
        0
    };
    Ok(ClassReport::new(Property::Wss, n, witness)
        .with("method", "sweep")
        .with("almost_principal_pairs", pairs))
}

/// P-matrix plus `A[α] A[β] >= A[α ∪ β] A[α ∩ β]` for all `α, β`.
/// Above the sweep cap, Toeplitz Hessenberg input gets the structured
/// certificate instead.
pub fn is_gkk(a: &RatMatrix, caps: &Caps) -> Result<ClassReport> {
    let n = a.order()?;
    if n > caps.gkk && is_toeplitz_hessenberg(a) {
        return gkk_structured(a, &StructuredOptions::default());
    }
    check_cap("GKK sweep", n, caps.gkk)?;
    let table = MinorTable::new(a)?;
    let order = subsets_in_order(n);
    if let Some(w) = first_nonpositive(&table, &order) {
        return Ok(ClassReport::new(Property::Gkk, n, Some(w))
            .with("method", "sweep")
            .with("stage", "P"));
    }
    // The inequality is symmetric in (α, β), so the first violating α in
    // sweep order only pairs with later β.
    let hit = order.par_iter().enumerate().find_map_first(|(pos, &alpha)| {
        order[pos + 1..].iter().find_map(|&beta| {
            let (u, i) = (alpha | beta, alpha & beta);
            if i == alpha || i == beta {
                return None;
            }
            let lhs = table.get(alpha) * table.get(beta);
            let rhs = table.get(u) * table.get(i);
            (lhs < rhs).then_some((alpha, beta))
        })
    });
    let witness = hit.map(|(alpha, beta)| Witness::HadamardFischer {
        alpha: IndexSet::from_mask(n, alpha),
        beta: IndexSet::from_mask(n, beta),
        minor_alpha: table.principal(alpha),
        minor_beta: table.principal(beta),
        minor_union: table.principal(alpha | beta),
        minor_intersection: table.principal(alpha & beta),
    });
    Ok(ClassReport::new(Property::Gkk, n, witness)
        .with("method", "sweep")
        .with("stage", "HF")
        .with("set_pairs", (1u64 << n) * ((1u64 << n) - 1) / 2))
}
