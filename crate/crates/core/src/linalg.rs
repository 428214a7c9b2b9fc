//! Exact linear algebra over the integers and rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank_int(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, |r| r.len());
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n_cols {
        if rank == n_rows {
            break;
        }
        let Some(pivot) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..n_rows {
            for c in col + 1..n_cols {
                let v = (&a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c]) / &prev;
                a[r][c] = v;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_rational(rows: &[Vec<BigRational>]) -> usize {
    let mut a = rows.to_vec();
    let n_rows = a.len();
    let n_cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..n_cols {
        let Some(pivot) = (rank..n_rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..n_rows {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[rank][col];
            for c in col..n_cols {
                let v = &a[r][c] - &f * &a[rank][c];
                a[r][c] = v;
            }
        }
        rank += 1;
    }
    rank
}

/// Whether a symmetric rational matrix is positive definite (all
/// pivots of the symmetric elimination are positive).
pub fn is_positive_definite(m: &[Vec<BigRational>]) -> bool {
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &a[k][k];
            for j in k..n {
                let v = &a[i][j] - &f * &a[k][j];
                a[i][j] = v;
            }
        }
    }
    true
}

/// `M^T M`.
pub fn gram(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![vec![BigRational::zero(); cols]; cols];
    for row in m {
        let nz: Vec<(usize, &BigRational)> = row.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for &(i, a) in &nz {
            for &(j, b) in &nz {
                out[i][j] += a * b;
            }
        }
    }
    out
}

/// Closed interval `[lo, hi]` with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    pub fn point(v: BigRational) -> Self {
        Enclosure { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn to_strings(&self) -> EnclosureStrings {
        EnclosureStrings {
            lo: self.lo.to_string(),
            hi: self.hi.to_string(),
        }
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnclosureStrings {
    pub lo: String,
    pub hi: String,
}

pub fn to_f64(v: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

/// `tol` as the rational `1 / 10^digits`.
pub fn decimal_tolerance(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// Encloses the operator norm (largest singular value) of `m` to width at most `tol`.
///
/// Bisection on `s`: `s^2 I - M^T M` is positive definite exactly when
/// `||M|| < s`, which is decided in exact arithmetic.
pub fn norm_enclosure(m: &[Vec<BigRational>], tol: &BigRational) -> Enclosure {
    if m.iter().all(|r| r.iter().all(|v| v.is_zero())) {
        return Enclosure::point(BigRational::zero());
    }
    let a = gram(m);
    let n = a.len();
    // ||M||^2 <= ||M^T M||_inf
    let bound: BigRational = a
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).fold(BigRational::zero(), |s, v| s + v))
        .max()
        .unwrap_or_else(BigRational::zero);
    let mut hi = BigRational::one();
    while hi.clone() * hi.clone() < bound {
        hi *= BigRational::from_integer(BigInt::from(2));
    }
    let mut lo = BigRational::zero();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    while &hi - &lo > *tol {
        let mid = (&lo + &hi) * &half;
        let s2 = &mid * &mid;
        let shifted: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let d = if i == j { s2.clone() } else { BigRational::zero() };
                        d - &a[i][j]
                    })
                    .collect()
            })
            .collect();
        if is_positive_definite(&shifted) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Enclosure { lo, hi }
}
