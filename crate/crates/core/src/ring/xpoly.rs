use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::parse::parse_terms;
use super::{primitive_scale, render_terms, Rat, XMonomial};
use crate::error::{Error, Result};

const VARS: [&str; 4] = ["x0", "x1", "x2", "x3"];

/// Polynomial in the image coordinates `x0..x3` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct XPoly {
    terms: BTreeMap<XMonomial, Rat>,
}

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(XMonomial::one(), c)
    }

    pub fn var(i: usize) -> Self {
        Self::term(XMonomial::var(i), Rat::one())
    }

    pub fn term(m: XMonomial, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (XMonomial, Rat)>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn parse(text: &str) -> Result<Self> {
        let terms = parse_terms(text, &VARS)?;
        Ok(Self::from_terms(terms.into_iter().map(|t| {
            (
                XMonomial([t.exps[0], t.exps[1], t.exps[2], t.exps[3]]),
                t.coeff,
            )
        })))
    }

    pub(crate) fn add_term(&mut self, m: XMonomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<XMonomial, Rat> {
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

    pub fn coeff(&self, m: &XMonomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest total degree of a term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(XMonomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(XMonomial::degree);
        match degrees.next() {
            Some(d) => degrees.all(|e| e == d),
            None => true,
        }
    }

    pub fn leading_term(&self) -> Option<(&XMonomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let mut p = self.clone();
        p.add_assign(other);
        p
    }

    pub fn add_assign(&mut self, other: &XPoly) {
        for (m, c) in &other.terms {
            self.add_term(*m, c.clone());
        }
    }

    pub fn sub(&self, other: &XPoly) -> XPoly {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, -c);
        }
        p
    }

    pub fn neg(&self) -> XPoly {
        self.scale(&-Rat::one())
    }

    pub fn scale(&self, c: &Rat) -> XPoly {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut p = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                p.add_term(ma.mul(mb), ca * cb);
            }
        }
        p
    }

    pub fn evaluate(&self, point: &[Rat; 4]) -> Rat {
        if self.has_integer_coefficients() && point.iter().all(Rat::is_integer) {
            return Rat::from_integer(
                self.evaluate_integer(&point.clone().map(|x| x.to_integer())),
            );
        }
        let mut powers: [Vec<Rat>; 4] = Default::default();
        for (i, x) in point.iter().enumerate() {
            let top = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            powers[i].push(Rat::one());
            for e in 1..=top as usize {
                let next = &powers[i][e - 1] * x;
                powers[i].push(next);
            }
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= &powers[i][e as usize];
                }
            }
            acc += term;
        }
        acc
    }

    fn evaluate_integer(&self, point: &[BigInt; 4]) -> BigInt {
        let mut powers: [Vec<BigInt>; 4] = Default::default();
        for (i, x) in point.iter().enumerate() {
            let top = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            powers[i].push(BigInt::one());
            for e in 1..=top as usize {
                let next = &powers[i][e - 1] * x;
                powers[i].push(next);
            }
        }
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.numer().clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= &powers[i][e as usize];
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitutes `x_i -> forms[i]`.
    pub fn substitute(&self, forms: &[XPoly; 4]) -> XPoly {
        let mut powers: [Vec<XPoly>; 4] = Default::default();
        for (i, form) in forms.iter().enumerate() {
            let top = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            powers[i].push(XPoly::constant(Rat::one()));
            for e in 1..=top as usize {
                let next = powers[i][e - 1].mul(form);
                powers[i].push(next);
            }
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut term = XPoly::constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&powers[i][e as usize]);
                }
            }
            out.add_assign(&term);
        }
        out
    }

    /// Scalar multiple with coprime integer coefficients and positive
    /// leading coefficient (largest monomial in the canonical order).
    pub fn normalize(&self) -> Result<XPoly> {
        let scale = primitive_scale(self.terms.values().rev()).ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(&scale))
    }

    /// Whether `self = c * other` for some nonzero rational `c`.
    pub fn proportional_to(&self, other: &XPoly) -> bool {
        match (self.normalize(), other.normalize()) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn leading_is_positive(&self) -> bool {
        self.leading_term().is_some_and(|(_, c)| c.is_positive())
    }
}

impl fmt::Display for XPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_terms(
            self.terms.iter().rev().map(|(m, c)| (c, m.to_string())),
        ))
    }
}
