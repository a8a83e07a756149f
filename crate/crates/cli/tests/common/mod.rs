#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use bihom_core::{monomial_basis, rat, BiDegree, BiMonomial, BihomPoly, Parametrization};
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
    Parametrization::new(2, 3, regularity_ideal().try_into().unwrap()).unwrap()
}

pub fn segre() -> Parametrization {
    Parametrization::parse(1, 1, &["s*t", "s*v", "u*t", "u*v"]).unwrap()
}

fn random_poly(
    rng: &mut ChaCha8Rng,
    d: BiDegree,
    bound: i64,
    skip: Option<BiMonomial>,
) -> BihomPoly {
    let terms: Vec<_> = monomial_basis(d)
        .into_iter()
        .filter(|m| Some(*m) != skip)
        .map(|m| (m, rat(rng.gen_range(-bound..=bound))))
        .collect();
    BihomPoly::from_terms(d, terms).unwrap()
}

/// Dense coefficients in `[-bound, bound]`.
pub fn random_parametrization(seed: u64, m: u32, n: u32, bound: i64) -> Parametrization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = BiDegree::new(m, n);
    let a = [(); 4].map(|_| random_poly(&mut rng, d, bound, None));
    Parametrization::new(m, n, a).unwrap()
}

/// Base point at `(0:1; 0:1)`: no `u^m v^n` term anywhere.
pub fn random_with_base_point(seed: u64, m: u32, n: u32) -> Parametrization {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = BiDegree::new(m, n);
    let corner = Some(BiMonomial::new(0, m, 0, n));
    let a = [(); 4].map(|_| random_poly(&mut rng, d, 5, corner));
    Parametrization::new(m, n, a).unwrap()
}

pub fn golden(name: &str) -> String {
    let path = format!("{}/../core/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

/// Runs the binary with a clean `BIHOM_*` environment.
pub fn bihom(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bihom"));
    for (k, _) in std::env::vars() {
        if k.starts_with("BIHOM_") {
            cmd.env_remove(k);
        }
    }
    cmd.args(args)
        .envs(env.iter().copied())
        .output()
        .expect("spawn bihom")
}

/// The JSON report with the `timings` object removed.
pub fn without_timings(stdout: &[u8]) -> String {
    let mut v: serde_json::Value = serde_json::from_slice(stdout).expect("JSON report");
    v.as_object_mut().expect("object").remove("timings");
    serde_json::to_string_pretty(&v).unwrap()
}
