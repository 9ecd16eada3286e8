//! Exact rational linear algebra.
//!
//! Every quantity in the crate is an arbitrary-precision rational; there is no
//! floating-point path and no tolerance anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

pub type Rat = num_rational::BigRational;
pub type RatVector = Vec<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds a vector from small integers.
pub fn int_vec(values: &[i64]) -> RatVector {
    values.iter().map(|&v| rat(v)).collect()
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.75"`. Both the ASCII
/// hyphen and the Unicode minus sign are accepted as a leading sign.
pub fn parse_rat(text: &str) -> Result<Rat, Error> {
    let trimmed = text.trim();
    let (negative, body) = match trimmed.strip_prefix('-').or_else(|| trimmed.strip_prefix('−')) {
        Some(rest) => (true, rest.trim_start()),
        None => (false, trimmed.strip_prefix('+').unwrap_or(trimmed)),
    };
    let bad = || Error::Parse(format!("not a rational number: {text:?}"));
    if body.is_empty() || body.starts_with('-') || body.starts_with('−') {
        return Err(bad());
    }
    let value = if let Some((num, den)) = body.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        Rat::new(num, den)
    } else if let Some((whole, frac)) = body.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{}{}", if whole.is_empty() { "0" } else { whole }, frac);
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        Rat::new(num, den)
    } else {
        Rat::from_integer(body.parse().map_err(|_| bad())?)
    };
    Ok(if negative { -value } else { value })
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(value: &Rat) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn format_vec(values: &[Rat]) -> String {
    let parts: Vec<String> = values.iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}

/// Parses a comma separated list of rationals, e.g. `"0,1,0,1"`.
pub fn parse_vec(text: &str) -> Result<RatVector, Error> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    if trimmed.trim().is_empty() {
        return Ok(Vec::new());
    }
    trimmed.split(',').map(parse_rat).collect()
}

pub fn dot(lhs: &[Rat], rhs: &[Rat]) -> Rat {
    debug_assert_eq!(lhs.len(), rhs.len());
    lhs.iter().zip(rhs).fold(Rat::zero(), |acc, (a, b)| acc + a * b)
}

pub fn is_zero_vec(values: &[Rat]) -> bool {
    values.iter().all(Zero::is_zero)
}

pub fn add_scaled(target: &mut [Rat], scale: &Rat, source: &[Rat]) {
    for (t, s) in target.iter_mut().zip(source) {
        *t += scale * s;
    }
}

pub fn scale_vec(values: &[Rat], scale: &Rat) -> RatVector {
    values.iter().map(|v| v * scale).collect()
}

pub fn sub_vec(lhs: &[Rat], rhs: &[Rat]) -> RatVector {
    lhs.iter().zip(rhs).map(|(a, b)| a - b).collect()
}

pub fn add_vec(lhs: &[Rat], rhs: &[Rat]) -> RatVector {
    lhs.iter().zip(rhs).map(|(a, b)| a + b).collect()
}

/// True when one vector is a nonzero multiple of the other.
pub fn proportional(lhs: &[Rat], rhs: &[Rat]) -> bool {
    if lhs.len() != rhs.len() || is_zero_vec(lhs) || is_zero_vec(rhs) {
        return false;
    }
    let pivot = lhs.iter().position(|v| !v.is_zero()).unwrap();
    if rhs[pivot].is_zero() {
        return false;
    }
    let factor = &rhs[pivot] / &lhs[pivot];
    lhs.iter().zip(rhs).all(|(a, b)| &(a * &factor) == b)
}

/// Clears denominators and divides by the content, so the entries become
/// coprime integers whose first nonzero entry is positive.
pub fn primitive_integer_vector(values: &[Rat]) -> RatVector {
    let Some(first) = values.iter().find(|v| !v.is_zero()) else {
        return values.to_vec();
    };
    let lcm = values
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    let mut gcd = if gcd.is_zero() { BigInt::one() } else { gcd };
    if first.is_negative() {
        gcd = -gcd;
    }
    ints.into_iter()
        .map(|v| Rat::from_integer(v / &gcd))
        .collect()
}

/// Dense row-major rational matrix. The column count is stored explicitly so
/// that matrices without rows keep their shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: Vec<RatVector>,
    ncols: usize,
}

impl RatMatrix {
    pub fn new(rows: Vec<RatVector>, ncols: usize) -> Result<Self, Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, ncols })
    }

    /// Shape is taken from the first row; panics on ragged input.
    pub fn from_rows(rows: Vec<RatVector>) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        Self::new(rows, ncols).expect("ragged matrix")
    }

    /// Like [`RatMatrix::from_rows`] but keeps the width when `rows` is empty.
    pub fn from_rows_with_width(rows: Vec<RatVector>, ncols: usize) -> Self {
        Self::new(rows, ncols).expect("ragged matrix")
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| int_vec(r)).collect())
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![vec![Rat::zero(); ncols]; nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<RatVector> {
        self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn push_row(&mut self, row: RatVector) -> Result<(), Error> {
        if row.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn select_rows(&self, indices: &[usize]) -> Self {
        Self {
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            ncols: self.ncols,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    /// `M x`.
    pub fn mul_vec(&self, x: &[Rat]) -> RatVector {
        assert_eq!(x.len(), self.ncols, "matrix-vector dimension mismatch");
        self.rows.iter().map(|r| dot(r, x)).collect()
    }

    /// `y M`.
    pub fn vec_mul(&self, y: &[Rat]) -> RatVector {
        assert_eq!(y.len(), self.nrows(), "vector-matrix dimension mismatch");
        let mut out = vec![Rat::zero(); self.ncols];
        for (coef, row) in y.iter().zip(&self.rows) {
            if !coef.is_zero() {
                add_scaled(&mut out, coef, row);
            }
        }
        out
    }

    /// Reduced row echelon form together with the pivot columns. Pivots are the
    /// first nonzero entry found scanning columns left to right, rows top down.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.ncols {
            if lead == rows.len() {
                break;
            }
            let Some(found) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(lead, found);
            let inv = rows[lead][col].recip();
            for v in rows[lead].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[lead].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != lead && !row[col].is_zero() {
                    let factor = -row[col].clone();
                    add_scaled(row, &factor, &pivot_row);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (
            RatMatrix {
                rows,
                ncols: self.ncols,
            },
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}`, one basis vector per free column.
    pub fn right_nullspace(&self) -> RatMatrix {
        let (reduced, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Rat::zero(); self.ncols];
            v[free] = Rat::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -reduced.rows[r][free].clone();
            }
            basis.push(v);
        }
        RatMatrix {
            rows: basis,
            ncols: self.ncols,
        }
    }

    /// Basis of `{y : y M = 0}`.
    pub fn left_nullspace(&self) -> RatMatrix {
        self.transpose().right_nullspace()
    }

    /// Whether `v` lies in the row space.
    pub fn row_space_contains(&self, v: &[Rat]) -> bool {
        let mut extended = self.clone();
        extended.rows.push(v.to_vec());
        extended.rank() == self.rank()
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            writeln!(f, "{}", format_vec(row))?;
        }
        Ok(())
    }
}

pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

/// Rows form a basis of the left nullspace `{y : y M = 0}`.
pub fn nullspace(m: &RatMatrix) -> RatMatrix {
    m.left_nullspace()
}

/// One exact solution of `M x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve_linear(m: &RatMatrix, b: &[Rat]) -> Result<Option<RatVector>, Error> {
    if b.len() != m.nrows() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: b.len(),
        });
    }
    let n = m.ncols();
    let augmented = RatMatrix {
        rows: m
            .rows
            .iter()
            .zip(b)
            .map(|(row, rhs)| {
                let mut r = row.clone();
                r.push(rhs.clone());
                r
            })
            .collect(),
        ncols: n + 1,
    };
    let (reduced, pivots) = augmented.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = reduced.rows[r][n].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u_ex() -> RatMatrix {
        RatMatrix::from_ints(&[&[-1, 0], &[0, 1], &[0, -1], &[1, 1]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&u_ex()), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rank(&RatMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn left_nullspace_of_example_configuration() {
        let basis = nullspace(&u_ex());
        assert_eq!(basis.nrows(), 2);
        for row in basis.rows() {
            assert!(is_zero_vec(&u_ex().vec_mul(row)));
        }
        // spanned by (0,1,1,0) and (1,-1,0,1)
        let expected = RatMatrix::from_ints(&[&[0, 1, 1, 0], &[1, -1, 0, 1]]);
        let mut stacked = expected.clone();
        for row in basis.rows() {
            stacked.push_row(row.clone()).unwrap();
        }
        assert_eq!(stacked.rank(), 2);
    }

    #[test]
    fn left_nullspace_trivial_cases() {
        assert_eq!(nullspace(&RatMatrix::identity(2)).nrows(), 0);
        let zero_row = RatMatrix::zeros(1, 1);
        let basis = nullspace(&zero_row);
        assert_eq!(basis.rows(), &[vec![rat(1)]]);
    }

    #[test]
    fn solve_examples() {
        let id = RatMatrix::identity(2);
        let x = solve_linear(&id, &[rat(3), ratio(1, 2)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(3), ratio(1, 2)]);

        let m = RatMatrix::from_ints(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&m, &[rat(1), rat(3)]).unwrap(), None);
        let x = solve_linear(&m, &[rat(1), rat(2)]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x), vec![rat(1), rat(2)]);
        assert_eq!(x, vec![rat(1), rat(0)]);

        assert!(matches!(
            solve_linear(&m, &[rat(1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(RatMatrix::new(vec![int_vec(&[1, 2]), int_vec(&[1])], 2).is_err());
    }

    #[test]
    fn rational_text_round_trip() {
        for text in ["0", "3", "-7", "1/2", "-5/3"] {
            assert_eq!(format_rat(&parse_rat(text).unwrap()), text);
        }
        assert_eq!(parse_rat("−3/6").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rat("0.75").unwrap(), ratio(3, 4));
        assert_eq!(parse_rat("2/4").unwrap(), ratio(1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("abc").is_err());
        assert!(parse_rat("--1").is_err());
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![ratio(-1, 2), rat(0), ratio(3, 4)];
        assert_eq!(primitive_integer_vector(&v), int_vec(&[2, 0, -3]));
        assert!(proportional(&int_vec(&[1, -2]), &int_vec(&[-3, 6])));
        assert!(!proportional(&int_vec(&[1, 0]), &int_vec(&[1, 1])));
    }
}
