//! Square matrices over the rationals with exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Parses `p`, `-p` or `p/q` into a normalized rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            if den.is_zero() {
                return None;
            }
            Some(BigRational::new(num, den))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

/// Writes `p` for integers and `p/q` otherwise.
pub fn fmt_rational(q: &BigRational, f: &mut impl fmt::Write) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

/// An `n x n` rational matrix, stored row-major as integers over one
/// positive common denominator with no common factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalMatrix {
    dim: usize,
    num: Vec<BigInt>,
    den: BigInt,
}

impl RationalMatrix {
    fn normalized(dim: usize, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|e| *e = -&*e);
        }
        if !den.is_one() {
            if num.iter().all(Zero::is_zero) {
                den = BigInt::one();
            } else if den.magnitude().count_ones() == 1 {
                // power of two: cancel common trailing zeros
                let shift = num
                    .iter()
                    .filter_map(|e| e.trailing_zeros())
                    .chain(den.trailing_zeros())
                    .min()
                    .unwrap_or(0);
                if shift > 0 {
                    num.iter_mut().for_each(|e| *e >>= shift);
                    den >>= shift;
                }
            } else {
                let mut g = den.clone();
                for e in &num {
                    if g.is_one() {
                        break;
                    }
                    g = g.gcd(e);
                }
                if !g.is_one() {
                    num.iter_mut().for_each(|e| *e /= &g);
                    den /= &g;
                }
            }
        }
        RationalMatrix { dim, num, den }
    }

    fn from_rationals(dim: usize, entries: Vec<BigRational>) -> Self {
        let den = entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
        let num = entries
            .into_iter()
            .map(|e| e.numer() * (&den / e.denom()))
            .collect();
        Self::normalized(dim, num, den)
    }

    fn rationals(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|e| BigRational::new(e.clone(), self.den.clone()))
            .collect()
    }

    pub fn identity(dim: usize) -> Self {
        let mut num = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            num[i * dim + i] = BigInt::one();
        }
        RationalMatrix {
            dim,
            num,
            den: BigInt::one(),
        }
    }

    /// Builds a matrix from rows. Returns `None` when the rows are not square
    /// or empty.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Option<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        Some(Self::from_rationals(dim, rows.into_iter().flatten().collect()))
    }

    pub fn from_integers(rows: &[&[i64]]) -> Option<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(diag: Vec<BigRational>) -> Self {
        let dim = diag.len();
        let mut entries = vec![BigRational::zero(); dim * dim];
        for (i, d) in diag.into_iter().enumerate() {
            entries[i * dim + i] = d;
        }
        Self::from_rationals(dim, entries)
    }

    /// Block-diagonal matrix `diag(a, b)`.
    pub fn block_diagonal(a: &RationalMatrix, b: &RationalMatrix) -> Self {
        let dim = a.dim + b.dim;
        let mut entries = vec![BigRational::zero(); dim * dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                entries[i * dim + j] = a.get(i, j);
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                entries[(a.dim + i) * dim + a.dim + j] = b.get(i, j);
            }
        }
        Self::from_rationals(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> BigRational {
        BigRational::new(self.num[row * self.dim + col].clone(), self.den.clone())
    }

    pub fn rows(&self) -> Vec<Vec<BigRational>> {
        self.rationals().chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, other.dim, "matrix dimension mismatch");
        let n = self.dim;
        let mut num = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    let a = &self.num[i * n + k];
                    if a.is_zero() {
                        continue;
                    }
                    let b = &other.num[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    acc += a * b;
                }
                num.push(acc);
            }
        }
        let den = if other.den.is_one() {
            self.den.clone()
        } else {
            &self.den * &other.den
        };
        Self::normalized(n, num, den)
    }

    /// Determinant by Gaussian elimination over the rationals.
    pub fn determinant(&self) -> BigRational {
        let n = self.dim;
        let mut a = self.rationals();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return BigRational::zero();
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                let factor = &a[r * n + col] / &p;
                if factor.is_zero() {
                    continue;
                }
                for j in col..n {
                    let delta = &factor * &a[col * n + j];
                    a[r * n + j] -= delta;
                }
            }
        }
        det
    }

    /// Gauss-Jordan inverse; `None` for singular input.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        let n = self.dim;
        let mut a = self.rationals();
        let mut inv = RationalMatrix::identity(n).rationals();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].recip();
            for j in 0..n {
                a[col * n + j] *= &p;
                inv[col * n + j] *= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for j in 0..n {
                    let da = &factor * &a[col * n + j];
                    a[r * n + j] -= da;
                    let di = &factor * &inv[col * n + j];
                    inv[r * n + j] -= di;
                }
            }
        }
        Some(Self::from_rationals(n, inv))
    }

    pub fn is_identity(&self) -> bool {
        self.den.is_one()
            && self.num.iter().enumerate().all(|(idx, e)| {
                if idx / self.dim == idx % self.dim {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// Determinant exactly 1.
    pub fn is_special(&self) -> bool {
        self.determinant().is_one()
    }

    /// Determinant is +1 or -1.
    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                fmt_rational(e, f)?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Parses `[[a,b],[c,d]]` (whitespace ignored).
pub fn parse_matrix(text: &str) -> Option<RationalMatrix> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact.strip_prefix("[[")?.strip_suffix("]]")?;
    let rows = inner
        .split("],[")
        .map(|row| row.split(',').map(parse_rational).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    RationalMatrix::from_rows(rows)
}
