//! Fixed inputs shared by the benchmarks.

use bihom_core::Parametrization;

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
    .expect("valid input")
}

pub fn segre() -> Parametrization {
    Parametrization::parse(1, 1, &["s*t", "s*v", "u*t", "u*v"]).expect("valid input")
}

/// Base-point-free bidegree (2,2) surface.
pub fn generic_2x2() -> Parametrization {
    Parametrization::parse(
        2,
        2,
        &[
            "s^2*t^2 + u^2*v^2",
            "s*u*t^2 - 2*s^2*v^2",
            "u^2*t*v + s*u*v^2 + 3*s^2*t*v",
            "u^2*t^2 - s*u*t*v + s^2*v^2",
        ],
    )
    .expect("valid input")
}
