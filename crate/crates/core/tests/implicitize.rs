mod common;

use bihom_core::conditions::{check_b1, random_invertible};
use bihom_core::implicitize::{pull_back, verify};
use bihom_core::{
    pipeline, rat, DetBackend, Parametrization, PipelineConfig, RatMatrix, Route, XPoly,
};
use common::{
    golden, lci_example, random_parametrization, random_with_base_point, regularity_example, segre,
};

/// First seed from `seed` on whose generators are independent.
fn generic(seed: u64, m: u32, n: u32) -> Parametrization {
    (seed..)
        .map(|s| random_parametrization(s, m, n, 6, 0.0))
        .find(|p| check_b1(p).is_ok())
        .unwrap()
}

fn both() -> PipelineConfig {
    PipelineConfig {
        backend: DetBackend::Both,
        ..PipelineConfig::default()
    }
}

#[test]
fn lci_example_matches_the_interpolation_oracle() {
    let (report, result) = pipeline(&lci_example(), &both()).unwrap();
    assert_eq!(report.route, Route::BasePoints);
    let oracle = XPoly::parse(golden("lci_example_interpolated.txt").trim()).unwrap();
    assert_eq!(result.polynomial, oracle.normalize().unwrap());
    assert_eq!(result.degree, 7);
    assert_eq!(result.polynomial.len(), 27);
    assert!(result.plane_multiples_excluded);
    assert!(result.diagonal_x3_powers);
    assert_eq!(result.verification.samples_passed, 100);
}

#[test]
fn regularity_example_needs_a_coordinate_change() {
    let phi = regularity_example();
    let (report, result) = pipeline(&phi, &PipelineConfig::default()).unwrap();
    assert_eq!(report.k, Some(2));
    assert!(result.coordinate_change.is_some());
    assert_eq!(result.degree, 10);
    assert!(result.verification.passed);
    let original = result.original_coordinates().unwrap();
    let check = verify(&original, &phi, 2, 100, 1, false, true);
    assert!(check.passed, "{check:?}");
}

/// Every bidegree with `mn <= 9`, generic and with a base point.
#[test]
fn backends_agree_up_to_mn_9() {
    let bidegrees = [
        (1, 1),
        (1, 2),
        (2, 1),
        (1, 3),
        (2, 2),
        (1, 4),
        (2, 3),
        (3, 2),
        (3, 3),
    ];
    for (i, &(m, n)) in bidegrees.iter().enumerate() {
        let mut cases = vec![generic(10 * i as u64, m, n)];
        // At (1,1) a forced base point leaves only three monomials.
        if (2..=6).contains(&(m * n)) {
            cases.push(random_with_base_point(20 + i as u64, m, n));
        }
        for phi in cases {
            let (_, result) =
                pipeline(&phi, &both()).unwrap_or_else(|e| panic!("({m},{n}) {phi}: {e}"));
            assert_eq!(result.backend, DetBackend::Both);
            assert!(result.verification.passed, "({m},{n})");
            assert_eq!(
                result.degree as usize,
                2 * m as usize * n as usize - result.k
            );
        }
    }
}

#[test]
fn segre_gives_the_quadric() {
    let (report, result) = pipeline(&segre(), &both()).unwrap();
    assert_eq!(report.route, Route::BasePointFree);
    assert_eq!(
        result.polynomial,
        XPoly::parse(golden("segre.txt").trim()).unwrap()
    );
    assert!(!result.projected);
}

#[test]
fn base_point_free_bidegree_2_2() {
    for seed in 0..10 {
        let phi = random_parametrization(1000 + seed, 2, 2, 9, 0.0);
        let (report, result) = pipeline(&phi, &PipelineConfig::default()).unwrap();
        assert_eq!(report.k, Some(0), "seed {seed}");
        assert_eq!(report.route, Route::BasePointFree);
        assert_eq!(result.degree, 8);
        assert_eq!(result.verification.samples_passed, 100);
    }
}

#[test]
fn determinant_vanishes_exactly_on_samples() {
    for seed in 0..4 {
        let phi = random_with_base_point(500 + seed, 2, 2);
        let (_, result) = pipeline(&phi, &PipelineConfig::default()).unwrap();
        let poly = result.original_coordinates().unwrap();
        let v = verify(&poly, &phi, result.k, 100, 42 + seed, false, true);
        assert_eq!(v.samples_passed, 100);
        assert!(v.failed_point.is_none());
    }
}

#[test]
fn wrong_polynomial_is_rejected() {
    let phi = lci_example();
    let (_, result) = pipeline(&phi, &PipelineConfig::default()).unwrap();
    let wrong = result.polynomial.add(&XPoly::parse("x0*x3^6").unwrap());
    let v = verify(&wrong, &phi, 1, 100, 0, false, true);
    assert!(!v.passed);
    assert!(v.failed_point.is_some());
    let low = XPoly::parse("x0*x3 - x1*x2").unwrap();
    assert!(!verify(&low, &phi, 1, 100, 0, false, true).degree_ok);
}

#[test]
fn seed_does_not_change_the_equation() {
    let phi = lci_example();
    let base = pipeline(&phi, &PipelineConfig::default())
        .unwrap()
        .1
        .polynomial;
    for seed in [1, 17, 12345] {
        let cfg = PipelineConfig {
            seed,
            ..PipelineConfig::default()
        };
        assert_eq!(pipeline(&phi, &cfg).unwrap().1.polynomial, base);
    }
}

/// `F'(T x)` is proportional to `F(x)` when `F'` is the equation of `T * phi`.
#[test]
fn coordinate_changes_commute_with_implicitization() {
    let phi = lci_example();
    let f = pipeline(&phi, &PipelineConfig::default())
        .unwrap()
        .1
        .polynomial;
    for seed in 0..2 {
        let t = random_invertible(seed, 3);
        let psi = phi.transform(&t).unwrap();
        let (_, r) = pipeline(&psi, &PipelineConfig::default()).unwrap();
        let g = pull_back(&r.original_coordinates().unwrap(), &t).unwrap();
        assert!(g.proportional_to(&f), "seed {seed}");
    }
    // Diagonal rescaling of the generators.
    let d = RatMatrix::from_rows(
        (0..4)
            .map(|i| {
                (0..4)
                    .map(|j| if i == j { rat(i as i64 + 2) } else { rat(0) })
                    .collect()
            })
            .collect(),
    )
    .unwrap();
    let scaled: Parametrization = phi.transform(&d).unwrap();
    let g = pipeline(&scaled, &PipelineConfig::default())
        .unwrap()
        .1
        .polynomial;
    assert!(pull_back(&g, &d).unwrap().proportional_to(&f));
}

#[test]
fn quadric_rows_are_not_plane_multiples() {
    for seed in 0..3 {
        let phi = random_with_base_point(700 + seed, 2, 2);
        let (_, r) = pipeline(&phi, &PipelineConfig::default()).unwrap();
        assert!(r.plane_multiples_excluded);
        assert_eq!(r.matrix.k, r.k);
        assert_eq!(r.matrix.size(), 4);
    }
}
