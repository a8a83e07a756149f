use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::render_powers;

/// Bidegree `(d1, d2)`: degree in `(s,u)` and degree in `(t,v)`.
///
/// `PartialOrd` is the componentwise partial order, so `(1,3)` and `(2,2)`
/// are incomparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BiDegree {
    pub d1: u32,
    pub d2: u32,
}

impl BiDegree {
    pub const fn new(d1: u32, d2: u32) -> Self {
        Self { d1, d2 }
    }

    /// `(d1+1)(d2+1)`, the dimension of `R_{d1,d2}`.
    pub fn dim(self) -> usize {
        (self.d1 as usize + 1) * (self.d2 as usize + 1)
    }

    pub fn checked_sub(self, other: BiDegree) -> Option<BiDegree> {
        Some(BiDegree::new(
            self.d1.checked_sub(other.d1)?,
            self.d2.checked_sub(other.d2)?,
        ))
    }

    /// Shift along the diagonal, `(d1+i, d2+i)`.
    pub fn diagonal(self, i: u32) -> BiDegree {
        BiDegree::new(self.d1 + i, self.d2 + i)
    }
}

impl PartialOrd for BiDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self.d1.cmp(&other.d1), self.d2.cmp(&other.d2)) {
            (a, b) if a == b => Some(a),
            (Ordering::Equal, b) => Some(b),
            (a, Ordering::Equal) => Some(a),
            _ => None,
        }
    }
}

impl Add for BiDegree {
    type Output = BiDegree;

    fn add(self, rhs: BiDegree) -> BiDegree {
        BiDegree::new(self.d1 + rhs.d1, self.d2 + rhs.d2)
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d1, self.d2)
    }
}

/// Monomial `s^es u^eu t^et v^ev`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BiMonomial {
    pub s: u32,
    pub u: u32,
    pub t: u32,
    pub v: u32,
}

impl BiMonomial {
    pub const fn new(s: u32, u: u32, t: u32, v: u32) -> Self {
        Self { s, u, t, v }
    }

    pub fn one() -> Self {
        Self::default()
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.s + self.u, self.t + self.v)
    }

    pub fn exponents(&self) -> [u32; 4] {
        [self.s, self.u, self.t, self.v]
    }

    pub fn mul(&self, other: &BiMonomial) -> BiMonomial {
        BiMonomial::new(
            self.s + other.s,
            self.u + other.u,
            self.t + other.t,
            self.v + other.v,
        )
    }

    /// Form with `u = v = 1`, e.g. `s*t` for `s*u*t*v`.
    pub fn dehomogenized(&self) -> String {
        render_powers(&["s", "t"], &[self.s, self.t])
    }
}

impl Ord for BiMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let total = |m: &BiMonomial| m.s + m.u + m.t + m.v;
        total(self)
            .cmp(&total(other))
            .then_with(|| self.exponents().cmp(&other.exponents()))
    }
}

impl PartialOrd for BiMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_powers(&["s", "u", "t", "v"], &self.exponents()))
    }
}

/// Monomial `x0^e0 x1^e1 x2^e2 x3^e3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct XMonomial(pub [u32; 4]);

impl XMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(i: usize) -> Self {
        let mut e = [0; 4];
        e[i] = 1;
        XMonomial(e)
    }

    /// `x_i * x_j`.
    pub fn quadric(i: usize, j: usize) -> Self {
        let mut e = [0; 4];
        e[i] += 1;
        e[j] += 1;
        XMonomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &XMonomial) -> XMonomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        XMonomial(e)
    }

    /// All monomials of x-degree `d`, largest first.
    pub fn all_of_degree(d: u32) -> Vec<XMonomial> {
        let mut out = Vec::new();
        for e0 in (0..=d).rev() {
            for e1 in (0..=d - e0).rev() {
                for e2 in (0..=d - e0 - e1).rev() {
                    out.push(XMonomial([e0, e1, e2, d - e0 - e1 - e2]));
                }
            }
        }
        out
    }
}

impl Ord for XMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for XMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_powers(&["x0", "x1", "x2", "x3"], &self.0))
    }
}

/// Monomial basis of `R_d` in canonical order (largest first).
///
/// `(1,1)` gives `[s*t, s*v, u*t, u*v]`.
pub fn monomial_basis(d: BiDegree) -> Vec<BiMonomial> {
    let mut out = Vec::with_capacity(d.dim());
    for i in (0..=d.d1).rev() {
        for j in (0..=d.d2).rev() {
            out.push(BiMonomial::new(i, d.d1 - i, j, d.d2 - j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_of_one_one() {
        let b = monomial_basis(BiDegree::new(1, 1));
        let names: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(names, ["s*t", "s*v", "u*t", "u*v"]);
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(monomial_basis(BiDegree::new(0, 0)), vec![BiMonomial::one()]);
        assert_eq!(monomial_basis(BiDegree::new(1, 2)).len(), 6);
        for d1 in 0..=8 {
            for d2 in 0..=8 {
                let d = BiDegree::new(d1, d2);
                let b = monomial_basis(d);
                assert_eq!(b.len(), d.dim());
                assert!(b.windows(2).all(|w| w[0] > w[1]));
                assert!(b.iter().all(|m| m.bidegree() == d));
            }
        }
    }

    #[test]
    fn bidegree_partial_order() {
        let a = BiDegree::new(1, 3);
        let b = BiDegree::new(2, 2);
        assert_eq!(a.partial_cmp(&b), None);
        assert!(BiDegree::new(1, 1) <= BiDegree::new(1, 2));
        assert!(BiDegree::new(3, 5) >= BiDegree::new(3, 5));
        assert_eq!(a + b, BiDegree::new(3, 5));
        assert_eq!(a.checked_sub(b), None);
    }

    #[test]
    fn x_monomials_of_degree_two() {
        let q = XMonomial::all_of_degree(2);
        assert_eq!(q.len(), 10);
        assert_eq!(q[0], XMonomial::quadric(0, 0));
        assert_eq!(q[1], XMonomial::quadric(0, 1));
        assert_eq!(q[9], XMonomial::quadric(3, 3));
    }
}
