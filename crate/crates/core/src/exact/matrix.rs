use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::index_set::IndexSet;
use super::rational::{common_denominator, format_fraction, from_decimal_pair, to_decimal_pair, Rational};
use crate::error::{Error, Result};

/// Largest order accepted by the cofactor-expansion determinant.
pub const DET_ORACLE_CAP: usize = 8;

/// Dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// Zero-based generator.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape {
                rows: r,
                cols: c,
                len: rows.iter().map(Vec::len).sum(),
            });
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Integer entries, convenient for tests and small examples.
    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                rows: other.rows,
                cols: other.cols,
                len: self.cols,
            });
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, l| acc + self.get(i, l) * other.get(l, j))
        }))
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| -v).collect(),
        }
    }

    /// `A(rows, cols)`; empty index sets give the 0x0 matrix.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<Self> {
        if rows.ambient() != self.rows {
            return Err(Error::AmbientMismatch {
                expected: self.rows,
                found: rows.ambient(),
            });
        }
        if cols.ambient() != self.cols {
            return Err(Error::AmbientMismatch {
                expected: self.cols,
                found: cols.ambient(),
            });
        }
        let r: Vec<usize> = rows.zero_based().collect();
        let c: Vec<usize> = cols.zero_based().collect();
        Ok(Self::from_fn(r.len(), c.len(), |i, j| self.get(r[i], c[j]).clone()))
    }

    /// Principal submatrix `A(alpha, alpha)`.
    pub fn principal(&self, alpha: &IndexSet) -> Result<Self> {
        self.submatrix(alpha, alpha)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination over the
    /// integers after scaling each row by its common denominator.
    pub fn det(&self) -> Result<Rational> {
        let n = self.order()?;
        if n == 0 {
            return Ok(Rational::one());
        }
        let (mut m, scales) = self.row_scaled_integers();
        let scale = scales.iter().product::<BigInt>();
        let value = bareiss(&mut m);
        Ok(Rational::new(value, scale))
    }

    /// Each row multiplied by the least common multiple of its denominators,
    /// together with those multipliers.
    pub(crate) fn row_scaled_integers(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut m = Vec::with_capacity(self.rows);
        let mut scales = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let d = common_denominator(row);
            m.push(row.iter().map(|v| v.numer() * (&d / v.denom())).collect());
            scales.push(d);
        }
        (m, scales)
    }

    /// Determinant by cofactor expansion along the first row. Independent of
    /// [`RatMatrix::det`]; used as a test oracle for `n <= 8`.
    pub fn det_oracle(&self) -> Result<Rational> {
        let n = self.order()?;
        if n > DET_ORACLE_CAP {
            return Err(Error::CapExceeded {
                what: "cofactor determinant",
                n,
                cap: DET_ORACLE_CAP,
            });
        }
        let cols: Vec<usize> = (0..n).collect();
        Ok(self.laplace(0, &cols))
    }

    fn laplace(&self, row: usize, cols: &[usize]) -> Rational {
        if cols.is_empty() {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for (pos, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a * self.laplace(row + 1, &rest);
            if pos % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    /// `A[alpha, beta] = det A(alpha, beta)`, with `A[∅, ∅] = 1`.
    pub fn minor(&self, alpha: &IndexSet, beta: &IndexSet) -> Result<Rational> {
        if alpha.len() != beta.len() {
            return Err(Error::CardinalityMismatch {
                rows: alpha.len(),
                cols: beta.len(),
            });
        }
        self.submatrix(alpha, beta)?.det()
    }

    pub fn principal_minor(&self, alpha: &IndexSet) -> Result<Rational> {
        self.minor(alpha, alpha)
    }

    /// Entries constant along every diagonal.
    pub fn is_toeplitz(&self) -> bool {
        (1..self.rows).all(|i| (1..self.cols).all(|j| self.get(i, j) == self.get(i - 1, j - 1)))
    }

    /// Zero below the first subdiagonal: `a_ij = 0` whenever `i > j + 1`.
    pub fn is_hessenberg(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i <= j + 1 || self.get(i, j).is_zero()))
    }

    pub fn to_json_value(&self) -> MatrixJson {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(to_decimal_pair).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("matrix serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: MatrixJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

/// Exchange format: `{"rows": n, "cols": m, "entries": [["num","den"], ...]}`
/// in row-major order with decimal-string numerators and denominators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<[String; 2]>,
}

impl TryFrom<MatrixJson> for RatMatrix {
    type Error = Error;

    fn try_from(raw: MatrixJson) -> Result<Self> {
        let entries = raw
            .entries
            .iter()
            .map(|[n, d]| from_decimal_pair(n, d))
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::new(raw.rows, raw.cols, entries)
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|v| {
                    if v.is_integer() {
                        v.numer().to_string()
                    } else {
                        format_fraction(v)
                    }
                })
                .collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// In-place Bareiss elimination; returns the determinant of the integer
/// matrix. Pivot choice is the first nonzero entry in the column.
pub(crate) fn bareiss(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}
