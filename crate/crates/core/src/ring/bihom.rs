use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::parse::parse_terms;
use super::{primitive_scale, render_terms, BiDegree, BiMonomial, Rat};
use crate::error::{Error, Result};

const VARS: [&str; 4] = ["s", "u", "t", "v"];

/// Bihomogeneous polynomial in `s,u,t,v` with a declared bidegree.
///
/// Every stored monomial has the declared bidegree and a nonzero
/// coefficient; the zero polynomial keeps its bidegree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BihomPoly {
    bidegree: BiDegree,
    terms: BTreeMap<BiMonomial, Rat>,
}

impl BihomPoly {
    pub fn zero(bidegree: BiDegree) -> Self {
        Self {
            bidegree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BiMonomial::one(), Rat::one())
    }

    pub fn monomial(m: BiMonomial, c: Rat) -> Self {
        let mut p = Self::zero(m.bidegree());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial of bidegree `bidegree`, summing repeated monomials.
    pub fn from_terms<I>(bidegree: BiDegree, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (BiMonomial, Rat)>,
    {
        let mut p = Self::zero(bidegree);
        for (m, c) in terms {
            if m.bidegree() != bidegree {
                return Err(Error::BidegreeMismatch {
                    expected: bidegree,
                    found: m.bidegree(),
                });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Parses a polynomial, inferring the bidegree from the first term.
    ///
    /// `"0"` parses to the zero polynomial of bidegree `(0,0)`; use
    /// [`BihomPoly::parse_with_bidegree`] to give it another one.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_impl(text, None)
    }

    pub fn parse_with_bidegree(text: &str, bidegree: BiDegree) -> Result<Self> {
        Self::parse_impl(text, Some(bidegree))
    }

    fn parse_impl(text: &str, declared: Option<BiDegree>) -> Result<Self> {
        let terms = parse_terms(text, &VARS)?;
        let monos: Vec<(BiMonomial, Rat)> = terms
            .into_iter()
            .map(|t| {
                (
                    BiMonomial::new(t.exps[0], t.exps[1], t.exps[2], t.exps[3]),
                    t.coeff,
                )
            })
            .collect();
        // A lone "0" carries no bidegree information of its own.
        let only_zero = monos
            .iter()
            .all(|(m, c)| c.is_zero() && *m == BiMonomial::one());
        let (reference, bidegree) = match declared {
            Some(d) => (None, d),
            None => (Some(monos[0].0), monos[0].0.bidegree()),
        };
        let mut p = Self::zero(bidegree);
        for (m, c) in monos {
            if m.bidegree() != bidegree && !(only_zero && declared.is_some()) {
                let first =
                    reference.map_or_else(|| "declared bidegree".to_string(), |r| r.to_string());
                return Err(Error::MixedBidegree {
                    first,
                    first_bidegree: bidegree,
                    second: m.to_string(),
                    second_bidegree: m.bidegree(),
                });
            }
            if m.bidegree() == bidegree {
                p.add_term(m, c);
            }
        }
        Ok(p)
    }

    fn add_term(&mut self, m: BiMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn bidegree(&self) -> BiDegree {
        self.bidegree
    }

    pub fn terms(&self) -> &BTreeMap<BiMonomial, Rat> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn coeff(&self, m: &BiMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn mul(&self, other: &BihomPoly) -> BihomPoly {
        let mut p = Self::zero(self.bidegree + other.bidegree);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                p.add_term(ma.mul(mb), ca * cb);
            }
        }
        p
    }

    pub fn add(&self, other: &BihomPoly) -> Result<BihomPoly> {
        self.check_same(other)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, c.clone());
        }
        Ok(p)
    }

    pub fn sub(&self, other: &BihomPoly) -> Result<BihomPoly> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> BihomPoly {
        if c.is_zero() {
            return Self::zero(self.bidegree);
        }
        Self {
            bidegree: self.bidegree,
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// `sum_i coeffs[i] * polys[i]`; all polynomials must share `bidegree`.
    pub fn linear_combination(
        bidegree: BiDegree,
        coeffs: &[Rat],
        polys: &[&BihomPoly],
    ) -> Result<BihomPoly> {
        let mut p = Self::zero(bidegree);
        for (c, q) in coeffs.iter().zip(polys) {
            p.check_same(q)?;
            if c.is_zero() {
                continue;
            }
            for (m, v) in &q.terms {
                p.add_term(*m, v * c);
            }
        }
        Ok(p)
    }

    fn check_same(&self, other: &BihomPoly) -> Result<()> {
        if self.bidegree != other.bidegree {
            return Err(Error::BidegreeMismatch {
                expected: self.bidegree,
                found: other.bidegree,
            });
        }
        Ok(())
    }

    /// Exact value at `(s,u,t,v)`.
    pub fn evaluate(&self, point: &[Rat; 4]) -> Rat {
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (x, e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    term *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// Coordinates in `basis`, which must be a basis of this bidegree.
    pub fn coeff_vector(&self, basis: &[BiMonomial]) -> Result<Vec<Rat>> {
        if let Some(b) = basis.first() {
            if b.bidegree() != self.bidegree {
                return Err(Error::BidegreeMismatch {
                    expected: self.bidegree,
                    found: b.bidegree(),
                });
            }
        }
        Ok(basis.iter().map(|m| self.coeff(m)).collect())
    }

    /// Inverse of [`BihomPoly::coeff_vector`].
    pub fn from_coeff_vector(
        bidegree: BiDegree,
        basis: &[BiMonomial],
        coeffs: &[Rat],
    ) -> Result<BihomPoly> {
        if basis.len() != coeffs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} basis monomials vs {} coefficients",
                basis.len(),
                coeffs.len()
            )));
        }
        Self::from_terms(bidegree, basis.iter().copied().zip(coeffs.iter().cloned()))
    }

    /// Scalar multiple with coprime integer coefficients and positive
    /// leading coefficient.
    pub fn primitive(&self) -> BihomPoly {
        match primitive_scale(self.terms.values().rev()) {
            Some(c) => self.scale(&c),
            None => self.clone(),
        }
    }

    /// Rendering with `u = v = 1`, e.g. `-1 + t + s + s*t`.
    pub fn dehomogenized(&self) -> String {
        render_terms(self.terms.iter().rev().map(|(m, c)| (c, m.dehomogenized())))
    }
}

impl fmt::Display for BihomPoly {
    /// Canonical rendering; re-parses to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(
            self.terms.iter().rev().map(|(m, c)| (c, m.to_string())),
        ))
    }
}
