#![allow(dead_code)]

use bihom_core::{monomial_basis, rat, BiDegree, BihomPoly, Parametrization};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn lci_example() -> Parametrization {
    Parametrization::parse(
        2,
        2,
        &[
            "u^2*t*v + s^2*t*v",
            "u^2*t^2 + s*u*v^2",
            "s^2*v^2 + s^2*t^2",
            "s^2*t*v",
        ],
    )
    .unwrap()
}

pub fn regularity_ideal() -> Vec<BihomPoly> {
    [
        "u^2*t^2*v",
        "u^2*t^3 + s*u*v^3",
        "s^2*t*v^2",
        "s^2*v^3 + s^2*t^3",
    ]
    .iter()
    .map(|s| BihomPoly::parse(s).unwrap())
    .collect()
}

pub fn regularity_example() -> Parametrization {
    let a = regularity_ideal();
    Parametrization::new(
        2,
        3,
        [a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone()],
    )
    .unwrap()
}

pub fn segre() -> Parametrization {
    Parametrization::parse(1, 1, &["s*t", "s*v", "u*t", "u*v"]).unwrap()
}

/// Polynomial of bidegree `d` with each coefficient in `[-bound, bound]`,
/// zero with probability `sparsity`.
pub fn random_poly(rng: &mut ChaCha8Rng, d: BiDegree, bound: i64, sparsity: f64) -> BihomPoly {
    let terms = monomial_basis(d).into_iter().filter_map(|m| {
        if rng.gen_bool(sparsity) {
            return None;
        }
        Some((m, rat(rng.gen_range(-bound..=bound))))
    });
    let terms: Vec<_> = terms.collect();
    BihomPoly::from_terms(d, terms).unwrap()
}

pub fn random_parametrization(
    seed: u64,
    m: u32,
    n: u32,
    bound: i64,
    sparsity: f64,
) -> Parametrization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = BiDegree::new(m, n);
    let a = [
        random_poly(&mut rng, d, bound, sparsity),
        random_poly(&mut rng, d, bound, sparsity),
        random_poly(&mut rng, d, bound, sparsity),
        random_poly(&mut rng, d, bound, sparsity),
    ];
    Parametrization::new(m, n, a).unwrap()
}

/// Parametrization with a prescribed simple base point at `(0:1; 0:1)`:
/// every `a_i` has zero `u^m v^n` coefficient.
pub fn random_with_base_point(seed: u64, m: u32, n: u32) -> Parametrization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = BiDegree::new(m, n);
    let corner = bihom_core::BiMonomial::new(0, m, 0, n);
    let mut draw = || {
        let p = random_poly(&mut rng, d, 5, 0.2);
        let terms: Vec<_> = p
            .terms()
            .iter()
            .filter(|(mono, _)| **mono != corner)
            .map(|(mono, c)| (*mono, c.clone()))
            .collect();
        BihomPoly::from_terms(d, terms).unwrap()
    };
    let a = [draw(), draw(), draw(), draw()];
    Parametrization::new(m, n, a).unwrap()
}

pub fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}
