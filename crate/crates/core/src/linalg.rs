//! Dense exact linear algebra over `Q`.
//!
//! Elimination is fraction-free (Bareiss): rows are first scaled to integer
//! rows, eliminated over `BigInt` with exact divisions by the previous
//! pivot, and only the final echelon form is brought back to rationals.
//! Pivots are the first nonzero entry in column order, so every result is
//! deterministic.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{primitive_scale, Rat};

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

/// Output of [`RatMatrix::rref`]: `reduced = transform * A`.
#[derive(Debug, Clone)]
pub struct Rref {
    pub reduced: RatMatrix,
    pub pivots: Vec<usize>,
    pub transform: RatMatrix,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Whether `b` lies in the column span of the reduced matrix `A`: the
    /// rows of `transform * b` past the rank must vanish.
    pub fn column_span_contains(&self, b: &[Rat]) -> bool {
        (self.rank()..self.transform.rows()).all(|i| dot(self.transform.row(i), b).is_zero())
    }

    /// Some `x` with `A x = b`, if `b` is in the column span.
    pub fn solve(&self, b: &[Rat]) -> Option<Vec<Rat>> {
        if !self.column_span_contains(b) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.reduced.cols()];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = dot(self.transform.row(i), b);
        }
        Some(x)
    }
}

/// Basis of the right kernel `{v : A v = 0}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub dim: usize,
    pub vectors: Vec<Vec<Rat>>,
    /// Free column each vector was read from (its unit coordinate).
    pub free_columns: Vec<usize>,
    /// Rank of the matrix.
    pub rank: usize,
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

/// Scales a rational row to an integer row; returns the row and the factor.
fn integer_row(row: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let lcm = row
        .iter()
        .filter(|c| !c.is_zero())
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = row.iter().map(|c| c.numer() * (&lcm / c.denom())).collect();
    (ints, lcm)
}

/// In-place fraction-free forward elimination over the first `pivot_cols`
/// columns. Returns the pivot columns and the number of row swaps.
fn bareiss(m: &mut [Vec<BigInt>], pivot_cols: usize) -> (Vec<usize>, usize) {
    let rows = m.len();
    let width = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            m.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..width {
                let mut val = &pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    val -= &factor * &pivot_row[j];
                }
                row[j] = if prev.is_one() { val } else { val / &prev };
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    (pivots, swaps)
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rat::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rat::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are `cols`, each of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Rat>]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> RatMatrix {
        let mut m = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> RatMatrix {
        let data = rows
            .iter()
            .flat_map(|&i| self.row(i).iter().cloned())
            .collect();
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows).map(|i| dot(self.row(i), v)).collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| integer_row(self.row(i)).0).collect()
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Eliminate along the shorter side.
        let mut m = if self.rows <= self.cols {
            self.transpose().integer_rows()
        } else {
            self.integer_rows()
        };
        let width = m[0].len();
        bareiss(&mut m, width).0.len()
    }

    fn rref_impl(&self, with_transform: bool) -> Rref {
        let extra = if with_transform { self.rows } else { 0 };
        let width = self.cols + extra;
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let mut row: Vec<Rat> = self.row(i).to_vec();
                if with_transform {
                    row.extend(
                        (0..self.rows).map(|j| if i == j { Rat::one() } else { Rat::zero() }),
                    );
                }
                integer_row(&row).0
            })
            .collect();
        let (pivots, _) = bareiss(&mut m, self.cols);

        let mut rows: Vec<Vec<Rat>> = m
            .into_iter()
            .map(|r| r.into_iter().map(Rat::from_integer).collect())
            .collect();
        for (i, &p) in pivots.iter().enumerate() {
            let inv = rows[i][p].recip();
            for x in rows[i].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        for (i, &p) in pivots.iter().enumerate().rev() {
            let (upper, lower) = rows.split_at_mut(i);
            let pivot_row = &lower[0];
            for row in upper.iter_mut() {
                let f = row[p].clone();
                if f.is_zero() {
                    continue;
                }
                for j in p..width {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &f * &pivot_row[j];
                    }
                }
            }
        }

        let mut reduced = Self::zeros(self.rows, self.cols);
        let mut transform = Self::zeros(if with_transform { self.rows } else { 0 }, self.rows);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                if j < self.cols {
                    reduced[(i, j)] = x;
                } else {
                    transform[(i, j - self.cols)] = x;
                }
            }
        }
        Rref {
            reduced,
            pivots,
            transform,
        }
    }

    /// Reduced row echelon form together with the invertible transform
    /// `T` such that `T * A = R`.
    pub fn rref(&self) -> Rref {
        self.rref_impl(true)
    }

    /// Kernel basis read off the reduced row echelon form: one vector per
    /// free column, scaled to coprime integers with a positive leading
    /// coordinate.
    pub fn kernel_basis(&self) -> KernelBasis {
        let Rref {
            reduced, pivots, ..
        } = self.rref_impl(false);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free_columns: Vec<usize> = (0..self.cols).filter(|&f| !is_pivot[f]).collect();
        let vectors: Vec<Vec<Rat>> = free_columns
            .iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.cols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(i, f)].clone();
                }
                primitive_vector(&v)
            })
            .collect();
        KernelBasis {
            dim: vectors.len(),
            vectors,
            free_columns,
            rank: pivots.len(),
        }
    }

    /// Some `x` with `A x = b`, or `None` if `b` is outside the column span.
    pub fn solve_membership(&self, b: &[Rat]) -> Result<Option<Vec<Rat>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        Ok(self.rref().solve(b))
    }

    /// Exact determinant by Bareiss elimination.
    pub fn det_bareiss(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut scale = BigInt::one();
        let m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let (row, f) = integer_row(self.row(i));
                scale *= f;
                row
            })
            .collect();
        Ok(Rat::new(det_integer(m), scale))
    }
}

/// Determinant of a square integer matrix by Bareiss elimination.
pub fn det_integer(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let (pivots, swaps) = bareiss(&mut m, n);
    if pivots.len() < n {
        return BigInt::zero();
    }
    let det = m[n - 1][n - 1].clone();
    if swaps % 2 == 1 {
        -det
    } else {
        det
    }
}

/// Coprime integer multiple of `v` with positive first nonzero coordinate.
pub fn primitive_vector(v: &[Rat]) -> Vec<Rat> {
    match primitive_scale(v.iter()) {
        Some(c) => v.iter().map(|x| x * &c).collect(),
        None => v.to_vec(),
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;

    fn index(&self, (i, j): (usize, usize)) -> &Rat {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rat {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::ring::render_rat).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat;

    fn m(rows: &[Vec<i64>]) -> RatMatrix {
        RatMatrix::from_i64(rows).unwrap()
    }

    #[test]
    fn rref_identity() {
        let id = RatMatrix::identity(3);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.transform, id);
    }

    #[test]
    fn rref_rank_one() {
        let a = m(&[vec![1, 1], vec![2, 2]]);
        let r = a.rref();
        assert_eq!(r.reduced, m(&[vec![1, 1], vec![0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.transform.mul(&a).unwrap(), r.reduced);
    }

    #[test]
    fn rref_with_fractions() {
        let a = RatMatrix::from_rows(vec![
            vec![Rat::new(1.into(), 2.into()), rat(3), rat(0)],
            vec![rat(0), Rat::new(2.into(), 3.into()), rat(1)],
        ])
        .unwrap();
        let r = a.rref();
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.reduced[(0, 2)], rat(-9));
        assert_eq!(r.reduced[(1, 2)], Rat::new(3.into(), 2.into()));
        assert_eq!(r.transform.mul(&a).unwrap(), r.reduced);
    }

    #[test]
    fn kernels() {
        assert_eq!(RatMatrix::identity(4).kernel_basis().dim, 0);
        let k = m(&[vec![1, 1]]).kernel_basis();
        assert_eq!(k.dim, 1);
        assert_eq!(k.vectors[0], vec![rat(1), rat(-1)]);
        let z = RatMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(z.dim, 3);
    }

    #[test]
    fn membership() {
        let id = RatMatrix::identity(3);
        let b = vec![rat(4), rat(-1), Rat::new(1.into(), 3.into())];
        assert_eq!(id.solve_membership(&b).unwrap(), Some(b.clone()));
        let a = m(&[vec![1], vec![0]]);
        assert_eq!(a.solve_membership(&[rat(0), rat(1)]).unwrap(), None);
        assert!(a.solve_membership(&[rat(0)]).is_err());
    }

    #[test]
    fn determinants() {
        assert_eq!(RatMatrix::identity(5).det_bareiss().unwrap(), rat(1));
        assert_eq!(m(&[vec![3, 7], vec![2, 5]]).det_bareiss().unwrap(), rat(1));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).det_bareiss().unwrap(), rat(-1));
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).det_bareiss().unwrap(), rat(0));
        assert!(m(&[vec![1, 2]]).det_bareiss().is_err());
        let half = RatMatrix::from_rows(vec![
            vec![Rat::new(1.into(), 2.into()), rat(0)],
            vec![rat(0), Rat::new(2.into(), 3.into())],
        ])
        .unwrap();
        assert_eq!(half.det_bareiss().unwrap(), Rat::new(1.into(), 3.into()));
    }
}
