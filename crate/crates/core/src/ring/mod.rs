//! Bigraded polynomial arithmetic in `Q[s,u,t,v]` and homogeneous
//! polynomials in the image coordinates `x0..x3`.
//!
//! `s,u` carry bidegree `(1,0)` and `t,v` carry `(0,1)`. Monomials are
//! ordered graded-lexicographically with `s > u > t > v` (resp.
//! `x0 > x1 > x2 > x3`); every listing and rendering goes from the largest
//! monomial down.

mod bihom;
mod monomial;
mod parse;
mod xpoly;

pub use bihom::BihomPoly;
pub use monomial::{monomial_basis, BiDegree, BiMonomial, XMonomial};
pub use xpoly::XPoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub(crate) fn render_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Multiplier turning `coeffs` into coprime integers whose first nonzero
/// entry is positive. Returns `None` if all entries are zero.
pub(crate) fn primitive_scale<'a, I>(coeffs: I) -> Option<Rat>
where
    I: IntoIterator<Item = &'a Rat>,
{
    let mut lcm = BigInt::one();
    let mut gcd = BigInt::zero();
    let mut lead_negative = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        if lead_negative.is_none() {
            lead_negative = Some(c.is_negative());
        }
        lcm = lcm.lcm(c.denom());
        gcd = gcd.gcd(c.numer());
    }
    let negative = lead_negative?;
    let mut scale = Rat::new(lcm, gcd);
    if negative {
        scale = -scale;
    }
    Some(scale)
}

/// Formats a signed sum of `(coefficient, monomial text)` pairs, omitting
/// unit coefficients in front of non-constant monomials.
pub(crate) fn render_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Rat, String)>,
{
    let mut out = String::new();
    for (i, (c, mono)) in terms.into_iter().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        if mono == "1" {
            out.push_str(&render_rat(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&render_rat(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub(crate) fn render_powers(names: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(name, &e)| {
            if e == 1 {
                (*name).to_string()
            } else {
                format!("{name}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}
