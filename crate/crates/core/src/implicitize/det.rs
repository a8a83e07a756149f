//! Determinants of square matrices with `XPoly` entries.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::det_integer;
use crate::ring::{Rat, XMonomial, XPoly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DetBackend {
    Cofactor,
    Interp,
    /// Runs both and fails on disagreement.
    Both,
    /// Cofactor for `mn <= 6`, interpolation above.
    Auto,
}

impl DetBackend {
    pub fn resolve(self, size: usize) -> DetBackend {
        match self {
            DetBackend::Auto if size <= 6 => DetBackend::Cofactor,
            DetBackend::Auto => DetBackend::Interp,
            other => other,
        }
    }
}

impl std::str::FromStr for DetBackend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cofactor" => Ok(Self::Cofactor),
            "interp" | "interpolation" => Ok(Self::Interp),
            "both" => Ok(Self::Both),
            "auto" => Ok(Self::Auto),
            _ => Err(format!("unknown determinant backend `{s}`")),
        }
    }
}

fn check_square(entries: &[Vec<XPoly>]) -> Result<usize> {
    let n = entries.len();
    for row in entries {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: row.len(),
            });
        }
    }
    Ok(n)
}

type IntPoly = BTreeMap<XMonomial, BigInt>;

/// Rows scaled to integer coefficients, and the product of the row
/// multipliers: `det(entries) = det(scaled) / scale`.
fn integer_rows(entries: &[Vec<XPoly>]) -> (Vec<Vec<IntPoly>>, BigInt) {
    let mut scale = BigInt::one();
    let rows = entries
        .iter()
        .map(|row| {
            let lcm = row
                .iter()
                .flat_map(|e| e.terms().values())
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            scale *= &lcm;
            row.iter()
                .map(|e| {
                    e.terms()
                        .iter()
                        .map(|(m, c)| (*m, c.numer() * (&lcm / c.denom())))
                        .collect()
                })
                .collect()
        })
        .collect();
    (rows, scale)
}

fn int_mul_add(acc: &mut IntPoly, a: &IntPoly, b: &IntPoly, negate: bool) {
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut p = ca * cb;
            if negate {
                p = -p;
            }
            let slot = acc.entry(ma.mul(mb)).or_insert_with(BigInt::zero);
            *slot += p;
        }
    }
}

/// Laplace expansion along successive rows, memoized on the set of
/// columns still available.
pub fn det_cofactor(entries: &[Vec<XPoly>]) -> Result<XPoly> {
    let n = check_square(entries)?;
    if n > 63 {
        return Err(Error::DimensionMismatch(format!(
            "{n}x{n} too large for cofactor expansion"
        )));
    }
    let (rows, scale) = integer_rows(entries);
    let mut memo: HashMap<u64, IntPoly> = HashMap::new();
    let det = minor(&rows, 0, (1u64 << n) - 1, &mut memo);
    let scale = Rat::from_integer(scale);
    Ok(XPoly::from_terms(
        det.into_iter()
            .map(|(m, c)| (m, Rat::from_integer(c) / &scale)),
    ))
}

fn minor(
    rows: &[Vec<IntPoly>],
    row: usize,
    cols: u64,
    memo: &mut HashMap<u64, IntPoly>,
) -> IntPoly {
    if row == rows.len() {
        return IntPoly::from([(XMonomial::one(), BigInt::one())]);
    }
    if let Some(hit) = memo.get(&cols) {
        return hit.clone();
    }
    let mut acc = IntPoly::new();
    let mut position = 0;
    for j in 0..rows.len() {
        if cols & (1 << j) == 0 {
            continue;
        }
        let e = &rows[row][j];
        if !e.is_empty() {
            let sub = minor(rows, row + 1, cols & !(1 << j), memo);
            int_mul_add(&mut acc, e, &sub, position % 2 == 1);
        }
        position += 1;
    }
    acc.retain(|_, c| !c.is_zero());
    memo.insert(cols, acc.clone());
    acc
}

/// `W` with `(n-1)! * coeffs = W * values` for a univariate polynomial of
/// degree `< n` sampled at `0..n` (scaled Lagrange basis).
#[allow(clippy::needless_range_loop)]
fn scaled_inverse_vandermonde(n: usize) -> (Vec<Vec<BigInt>>, BigInt) {
    let fact: BigInt = (1..n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k));
    let mut w = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        // prod_{j != i} (x - j), lowest degree first
        let mut poly = vec![BigInt::one()];
        for j in (0..n).filter(|&j| j != i) {
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigInt::from(j);
            }
            poly = next;
        }
        // (n-1)! / prod_{j != i} (i - j) = (-1)^(n-1-i) * C(n-1, i)
        let mut binom = BigInt::one();
        for k in 0..i {
            binom = binom * BigInt::from(n - 1 - k) / BigInt::from(k + 1);
        }
        if (n - 1 - i) % 2 == 1 {
            binom = -binom;
        }
        for (d, c) in poly.iter().enumerate() {
            w[d][i] = c * &binom;
        }
    }
    (w, fact)
}

fn eval_int(p: &IntPoly, x: [i64; 3]) -> BigInt {
    p.iter()
        .map(|(m, c)| {
            let v: i64 = (0..3).map(|i| x[i].pow(m.0[i])).product();
            c * v
        })
        .sum()
}

/// Evaluation at the grid `{0..=D+1}^3 x {1}` followed by tensor-product
/// interpolation and homogenization with `x3`. `degree` is the total degree
/// `D` the determinant must have; the extra node per axis exposes terms
/// of degree `D+1`, reported as an error.
pub fn det_interp(entries: &[Vec<XPoly>], degree: u32) -> Result<XPoly> {
    check_square(entries)?;
    let (rows, scale) = integer_rows(entries);
    let side = degree as usize + 2;
    let points: Vec<[i64; 3]> = (0..side as i64)
        .flat_map(|i| (0..side as i64).flat_map(move |j| (0..side as i64).map(move |l| [i, j, l])))
        .collect();
    let values: Vec<BigInt> = points
        .par_iter()
        .map(|&p| {
            det_integer(
                rows.iter()
                    .map(|r| r.iter().map(|e| eval_int(e, p)).collect())
                    .collect(),
            )
        })
        .collect();

    // values[(i*side + j)*side + l]; transform along l, then j, then i.
    let (w, fact) = scaled_inverse_vandermonde(side);
    let idx = |i: usize, j: usize, l: usize| (i * side + j) * side + l;
    let mut grid = values;
    for axis in (0..3).rev() {
        let mut next = vec![BigInt::zero(); grid.len()];
        for a in 0..side {
            for b in 0..side {
                let line: Vec<usize> = (0..side)
                    .map(|c| match axis {
                        2 => idx(a, b, c),
                        1 => idx(a, c, b),
                        _ => idx(c, a, b),
                    })
                    .collect();
                for (d, &target) in line.iter().enumerate() {
                    next[target] = w[d].iter().zip(&line).map(|(wk, &k)| wk * &grid[k]).sum();
                }
            }
        }
        grid = next;
    }

    let denom = Rat::from_integer(scale * fact.pow(3));
    let mut out = XPoly::zero();
    for i in 0..side {
        for j in 0..side {
            for l in 0..side {
                let c = &grid[idx(i, j, l)];
                if c.is_zero() {
                    continue;
                }
                let total = (i + j + l) as u32;
                if total > degree {
                    return Err(Error::DegreeExceeded {
                        found: total as usize,
                        expected: degree as usize,
                    });
                }
                out.add_term(
                    XMonomial([i as u32, j as u32, l as u32, degree - total]),
                    Rat::from_integer(c.clone()) / &denom,
                );
            }
        }
    }
    Ok(out)
}

/// Sum of the largest entry degree of each row; an upper bound for the
/// determinant degree, attained when rows are homogeneous.
pub fn row_degree_bound(entries: &[Vec<XPoly>]) -> u32 {
    entries
        .iter()
        .map(|r| r.iter().filter_map(XPoly::degree).max().unwrap_or(0))
        .sum()
}
