//! From moving planes and moving quadrics to the implicit equation `|M|`.

mod det;

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use det::{det_cofactor, det_interp, row_degree_bound, DetBackend};

use crate::conditions::{check_all, ConditionConfig, ConditionReport, CoordinateChange, Route};
use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::ring::{monomial_basis, rat, BiMonomial, Rat, XMonomial, XPoly};
use crate::syzygy::{
    moving_planes, moving_quadrics, plane_xmonomials, quadric_xmonomials, MovingSurface,
    Parametrization, SyzygyBasis, QUADRIC_PAIRS,
};

/// Planes `P_1..P_k` in echelon form and their pivot monomials
/// `s^a t^b` (homogenized).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EchelonPlanes {
    pub planes: Vec<MovingSurface>,
    pub pivots: Vec<BiMonomial>,
}

/// `P_i` has coefficient 1 at `pivot_i * x3` and 0 at `pivot_j * x3`,
/// `j != i`. Pivots come from the reduced row echelon form of the `x3`
/// blocks, so they are increasing in the basis order.
pub fn echelon_plane_basis(planes: &SyzygyBasis, phi: &Parametrization) -> Result<EchelonPlanes> {
    let k = planes.dim();
    if k == 0 {
        return Ok(EchelonPlanes {
            planes: Vec::new(),
            pivots: Vec::new(),
        });
    }
    let bidegree = phi.moving_bidegree();
    let basis = monomial_basis(bidegree);
    let mn = basis.len();
    let full = RatMatrix::from_rows(planes.vectors.clone())?;
    let x3_cols: Vec<usize> = (3 * mn..4 * mn).collect();
    let rref = full.select_columns(&x3_cols).rref();
    if rref.rank() < k {
        return Err(Error::PlaneProjectionDeficient {
            rank: rref.rank(),
            expected: k,
        });
    }
    let combined = rref.transform.mul(&full)?;
    let xmonos = plane_xmonomials();
    let planes = (0..k)
        .map(|i| MovingSurface::from_vector(&xmonos, bidegree, combined.row(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EchelonPlanes {
        planes,
        pivots: rref.pivots.iter().map(|&p| basis[p]).collect(),
    })
}

/// A coordinate of the moving-quadric space: parameter monomial times
/// x-quadric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadricColumn {
    pub monomial: BiMonomial,
    pub quadric: XMonomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricBasis {
    /// `Q_w` for each `w` in `lambda_p`; empty entries in the fallback.
    pub elements: Vec<MovingSurface>,
    /// Coordinates the basis is dual to: `pivot * x_j x3` (`j < 3`),
    /// then every `c * x3^2`.
    pub lambda_p: Vec<QuadricColumn>,
    /// Whether the projection onto `lambda_p` was an isomorphism. Only
    /// the base-point-free route may go without it.
    pub projected: bool,
}

impl QuadricBasis {
    /// `Q_c` for `c * x3^2`, or `None` when not projected.
    pub fn for_x3_squared(&self, c: &BiMonomial) -> Option<&MovingSurface> {
        let w = QuadricColumn {
            monomial: *c,
            quadric: XMonomial::quadric(3, 3),
        };
        self.lambda_p
            .iter()
            .position(|x| *x == w)
            .filter(|_| self.projected)
            .map(|i| &self.elements[i])
    }
}

fn block_of(quadric: XMonomial) -> usize {
    QUADRIC_PAIRS
        .iter()
        .position(|&(i, j)| XMonomial::quadric(i, j) == quadric)
        .expect("quadric x-monomial")
}

/// `Q_w = pi^{-1}(e_w)` for `w` in `Lambda_P`, where `pi` restricts a
/// moving quadric to the `Lambda_P` coordinates.
pub fn quadric_basis_via_projection(
    quadrics: &SyzygyBasis,
    phi: &Parametrization,
    pivots: &[BiMonomial],
) -> Result<QuadricBasis> {
    let bidegree = phi.moving_bidegree();
    let basis = monomial_basis(bidegree);
    let mn = basis.len();
    let mut lambda_p = Vec::new();
    for p in pivots {
        for j in 0..3 {
            lambda_p.push(QuadricColumn {
                monomial: *p,
                quadric: XMonomial::quadric(j, 3),
            });
        }
    }
    for c in &basis {
        lambda_p.push(QuadricColumn {
            monomial: *c,
            quadric: XMonomial::quadric(3, 3),
        });
    }
    let coords: Vec<usize> = lambda_p
        .iter()
        .map(|w| {
            block_of(w.quadric) * mn + basis.iter().position(|b| *b == w.monomial).expect("basis")
        })
        .collect();

    if quadrics.dim() != lambda_p.len() {
        return Err(Error::SingularProjection(format!(
            "{} moving quadrics against {} projection coordinates",
            quadrics.dim(),
            lambda_p.len()
        )));
    }
    if quadrics.dim() == 0 {
        return Ok(QuadricBasis {
            elements: Vec::new(),
            lambda_p,
            projected: true,
        });
    }
    let b = RatMatrix::from_rows(quadrics.vectors.clone())?;
    let kp = b.select_columns(&coords);
    let rref = kp.rref();
    if rref.rank() < kp.rows() {
        return Err(Error::SingularProjection(format!(
            "projection onto Lambda_P has rank {} < {}",
            rref.rank(),
            kp.rows()
        )));
    }
    let q = rref.transform.mul(&b)?;
    let xmonos = quadric_xmonomials();
    let elements = (0..q.rows())
        .map(|i| MovingSurface::from_vector(&xmonos, bidegree, q.row(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadricBasis {
        elements,
        lambda_p,
        projected: true,
    })
}

/// The square matrix `M` with row and column labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MMatrix {
    pub entries: Vec<Vec<XPoly>>,
    /// Pivot monomials first, then the complement `C_P` in basis order.
    pub columns: Vec<BiMonomial>,
    /// `k` moving planes followed by `mn - k` moving quadrics.
    pub rows: Vec<MovingSurface>,
    pub k: usize,
}

impl MMatrix {
    pub fn size(&self) -> usize {
        self.columns.len()
    }

    /// Expected determinant degree `2mn - k`.
    pub fn expected_degree(&self) -> u32 {
        (2 * self.size() - self.k) as u32
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()
    }

    /// Linear diagonal entries carry `x3`, quadratic ones `x3^2`.
    pub fn diagonal_has_x3_powers(&self) -> bool {
        (0..self.size()).all(|i| {
            let power = if i < self.k { 1 } else { 2 };
            !self.entries[i][i]
                .coeff(&XMonomial([0, 0, 0, power]))
                .is_zero()
        })
    }

    /// No quadric row equals `x_j * P_i` up to scalar.
    pub fn excludes_plane_multiples(&self) -> bool {
        let xmonos = quadric_xmonomials();
        let multiples: Vec<Vec<Rat>> = self.rows[..self.k]
            .iter()
            .flat_map(|p| (0..4).map(move |j| p.times_var(j)))
            .map(|q| crate::linalg::primitive_vector(&q.to_vector(&xmonos)))
            .collect();
        self.rows[self.k..].iter().all(|q| {
            let v = crate::linalg::primitive_vector(&q.to_vector(&xmonos));
            let neg: Vec<Rat> = v.iter().map(|x| -x).collect();
            !multiples.iter().any(|m| *m == v || *m == neg)
        })
    }
}

/// Rows: planes, then the quadrics of `C_P` (or, without a projection,
/// the kernel basis as is), each scaled to coprime integers. Columns:
/// pivots, then `C_P`.
pub fn assemble_m(
    phi: &Parametrization,
    planes: &EchelonPlanes,
    quadrics: &QuadricBasis,
    fallback: &[MovingSurface],
) -> Result<MMatrix> {
    let basis = monomial_basis(phi.moving_bidegree());
    let complement: Vec<BiMonomial> = basis
        .iter()
        .filter(|b| !planes.pivots.contains(b))
        .copied()
        .collect();
    let mut rows: Vec<MovingSurface> = planes.planes.clone();
    if quadrics.projected {
        for c in &complement {
            rows.push(quadrics.for_x3_squared(c).expect("projected basis").clone());
        }
    } else {
        rows.extend(fallback.iter().cloned());
    }
    let rows: Vec<MovingSurface> = rows.iter().map(MovingSurface::primitive).collect();
    let columns: Vec<BiMonomial> = planes.pivots.iter().chain(&complement).copied().collect();
    if rows.len() != columns.len() {
        return Err(Error::DimensionMismatch(format!(
            "M would have {} rows and {} columns",
            rows.len(),
            columns.len()
        )));
    }
    let entries = rows
        .iter()
        .map(|r| columns.iter().map(|c| r.form_at(c)).collect())
        .collect();
    Ok(MMatrix {
        entries,
        columns,
        rows,
        k: planes.planes.len(),
    })
}

/// `|M|` by the chosen backend; `Both` also checks agreement.
pub fn det_poly(m: &MMatrix, backend: DetBackend) -> Result<(XPoly, DetBackend)> {
    let degree = row_degree_bound(&m.entries);
    match backend.resolve(m.size()) {
        DetBackend::Cofactor => Ok((det_cofactor(&m.entries)?, DetBackend::Cofactor)),
        DetBackend::Interp => Ok((det_interp(&m.entries, degree)?, DetBackend::Interp)),
        _ => {
            let a = det_cofactor(&m.entries)?;
            let b = det_interp(&m.entries, degree)?;
            if a != b {
                return Err(Error::BackendMismatch);
            }
            Ok((a, DetBackend::Both))
        }
    }
}

pub fn normalize(p: &XPoly) -> Result<XPoly> {
    p.normalize()
}

/// `F(T x)`: the equation in the original coordinates when `F` is the
/// equation of `T * phi`.
pub fn pull_back(p: &XPoly, t: &RatMatrix) -> Result<XPoly> {
    if t.rows() != 4 || t.cols() != 4 {
        return Err(Error::DimensionMismatch(
            "coordinate change must be 4x4".into(),
        ));
    }
    let form = |i: usize| XPoly::from_terms((0..4).map(|j| (XMonomial::var(j), t[(i, j)].clone())));
    Ok(p.substitute(&[form(0), form(1), form(2), form(3)]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub samples_requested: usize,
    pub samples_passed: usize,
    /// First parameter point `(s, u, t, v)` where `F(phi(p)) != 0`.
    pub failed_point: Option<[i64; 4]>,
    pub degree: Option<u32>,
    pub expected_degree: u32,
    pub degree_ok: bool,
    pub x3_power_nonzero: bool,
    /// Whether the `x3^(2mn-k)` check is part of `passed`.
    pub x3_power_required: bool,
    pub passed: bool,
}

/// Seeded parameter points `(s, u, t, v)` with entries in `[-bound, bound]`,
/// skipping base points of `phi`.
pub fn sample_points(phi: &Parametrization, count: usize, seed: u64, bound: i64) -> Vec<[i64; 4]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-bound..=bound));
        let q = p.map(rat);
        if phi.evaluate(&q).iter().all(Zero::is_zero) {
            continue;
        }
        out.push(p);
    }
    out
}

/// Exact vanishing of `F` on `samples` points of the surface, the degree
/// identity `deg F = 2mn - k`, and the `x3^(2mn-k)` coefficient.
pub fn verify(
    poly: &XPoly,
    phi: &Parametrization,
    k: usize,
    samples: usize,
    seed: u64,
    x3_power_required: bool,
    degree_required: bool,
) -> Verification {
    let expected_degree = (2 * phi.mn() - k) as u32;
    let mut passed_count = 0;
    let mut failed_point = None;
    for p in sample_points(phi, samples, seed, 20) {
        let image = phi.evaluate(&p.map(rat));
        if poly.evaluate(&image).is_zero() {
            passed_count += 1;
        } else if failed_point.is_none() {
            failed_point = Some(p);
        }
    }
    let degree = poly.degree();
    let degree_ok = degree == Some(expected_degree) && poly.is_homogeneous();
    let x3_power_nonzero = !poly.coeff(&XMonomial([0, 0, 0, expected_degree])).is_zero();
    let passed = !poly.is_zero()
        && failed_point.is_none()
        && (degree_ok || !degree_required)
        && (x3_power_nonzero || !x3_power_required);
    Verification {
        samples_requested: samples,
        samples_passed: passed_count,
        failed_point,
        degree,
        expected_degree,
        degree_ok,
        x3_power_nonzero,
        x3_power_required,
        passed,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub seed: u64,
    pub backend: DetBackend,
    pub sat_bound: Option<usize>,
    pub window: usize,
    pub samples: usize,
    /// Emit the polynomial even when verification fails.
    pub force: bool,
    pub change_attempts: usize,
    pub change_bound: i64,
    /// `deg phi = 1`, so `deg |M|` must be `2mn - k`.
    pub assert_one_to_one: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            backend: DetBackend::Auto,
            sat_bound: None,
            window: 3,
            samples: 100,
            force: false,
            change_attempts: 10,
            change_bound: 10,
            assert_one_to_one: true,
        }
    }
}

impl PipelineConfig {
    pub fn conditions(&self) -> ConditionConfig {
        ConditionConfig {
            window: self.window,
            sat_bound: self.sat_bound,
            seed: self.seed,
            change_bound: self.change_bound,
            change_attempts: self.change_attempts,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImplicitResult {
    /// Normalized `|M|`, in the coordinates of the effective
    /// parametrization (after the coordinate change, if any).
    pub polynomial: XPoly,
    pub degree: u32,
    pub k: usize,
    pub mn: usize,
    pub route: Route,
    pub pivots: Vec<BiMonomial>,
    pub matrix: MMatrix,
    pub backend: DetBackend,
    pub projected: bool,
    pub plane_multiples_excluded: bool,
    pub diagonal_x3_powers: bool,
    pub coordinate_change: Option<CoordinateChange>,
    pub verification: Verification,
    pub elapsed_ms: u128,
}

impl ImplicitResult {
    /// The equation in the input coordinates.
    pub fn original_coordinates(&self) -> Result<XPoly> {
        match &self.coordinate_change {
            Some(c) => pull_back(&self.polynomial, &c.matrix())?.normalize(),
            None => Ok(self.polynomial.clone()),
        }
    }
}

/// Runs the construction on a parametrization whose conditions were
/// already decided by [`check_all`].
pub fn implicitize_checked(
    phi: &Parametrization,
    report: &ConditionReport,
    config: &PipelineConfig,
) -> Result<ImplicitResult> {
    let start = Instant::now();
    if report.route == Route::Refused {
        return Err(report.into_error().unwrap_or(Error::ConditionFailed {
            condition: "route".into(),
            witness: "refused".into(),
        }));
    }
    let phi = report.effective(phi)?;
    let k = report.k.unwrap_or(0);

    let planes = moving_planes(&phi)?;
    if planes.dim() != k {
        return Err(Error::ConditionFailed {
            condition: "MP".into(),
            witness: format!("{} moving planes, expected k = {k}", planes.dim()),
        });
    }
    let echelon = echelon_plane_basis(&planes, &phi)?;
    let quadrics = moving_quadrics(&phi)?;
    let (qbasis, fallback) = match quadric_basis_via_projection(&quadrics, &phi, &echelon.pivots) {
        Ok(q) => (q, Vec::new()),
        Err(Error::SingularProjection(_))
            if report.route == Route::BasePointFree && quadrics.dim() == phi.mn() =>
        {
            (
                QuadricBasis {
                    elements: Vec::new(),
                    lambda_p: Vec::new(),
                    projected: false,
                },
                quadrics.elements.clone(),
            )
        }
        Err(e) => return Err(e),
    };
    let matrix = assemble_m(&phi, &echelon, &qbasis, &fallback)?;
    let (raw, backend) = det_poly(&matrix, config.backend)?;
    let polynomial = normalize(&raw)?;
    let verification = verify(
        &polynomial,
        &phi,
        k,
        config.samples,
        config.seed,
        qbasis.projected,
        config.assert_one_to_one,
    );
    if !verification.passed && !config.force {
        return Err(Error::VerificationFailed(describe_failure(&verification)));
    }
    Ok(ImplicitResult {
        degree: polynomial.degree().unwrap_or(0),
        polynomial,
        k,
        mn: phi.mn(),
        route: report.route,
        pivots: echelon.pivots.clone(),
        plane_multiples_excluded: matrix.excludes_plane_multiples(),
        diagonal_x3_powers: matrix.diagonal_has_x3_powers(),
        matrix,
        backend,
        projected: qbasis.projected,
        coordinate_change: report.coordinate_change.clone(),
        verification,
        elapsed_ms: start.elapsed().as_millis(),
    })
}

pub fn describe_failure(v: &Verification) -> String {
    if let Some(p) = v.failed_point {
        format!("|M| does not vanish at (s,u,t,v) = {p:?}")
    } else if !v.degree_ok {
        format!("degree {:?}, expected {}", v.degree, v.expected_degree)
    } else if v.x3_power_required && !v.x3_power_nonzero {
        format!("x3^{} has zero coefficient", v.expected_degree)
    } else {
        "verification failed".into()
    }
}

/// [`check_all`] followed by [`implicitize_checked`].
pub fn pipeline(
    phi: &Parametrization,
    config: &PipelineConfig,
) -> Result<(ConditionReport, ImplicitResult)> {
    let report = check_all(phi, &config.conditions());
    let result = implicitize_checked(phi, &report, config)?;
    Ok((report, result))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lci_example() -> Parametrization {
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

    fn x(s: &str) -> XPoly {
        XPoly::parse(s).unwrap()
    }

    #[test]
    fn lci_example_planes_and_pivots() {
        let phi = lci_example();
        let e = echelon_plane_basis(&moving_planes(&phi).unwrap(), &phi).unwrap();
        assert_eq!(e.pivots, vec![BiMonomial::new(1, 0, 1, 0)]);
        assert_eq!(
            e.planes[0].to_string(),
            "(-x2) + (x3)*t + (x1)*s + (-x0 + x3)*s*t"
        );
    }

    #[test]
    fn quadric_projection_contains_plane_multiples() {
        let phi = lci_example();
        let e = echelon_plane_basis(&moving_planes(&phi).unwrap(), &phi).unwrap();
        let q =
            quadric_basis_via_projection(&moving_quadrics(&phi).unwrap(), &phi, &e.pivots).unwrap();
        assert_eq!(q.elements.len(), 7);
        assert!(q.elements.iter().all(|s| s.follows(&phi)));
        // Q for pivot * x_j x3 is x_j * P1.
        for j in 0..3 {
            assert_eq!(q.elements[j], e.planes[0].times_var(j));
        }
    }

    #[test]
    fn lci_example_matrix_shape() {
        let phi = lci_example();
        let (_, r) = pipeline(&phi, &PipelineConfig::default()).unwrap();
        assert_eq!(r.matrix.size(), 4);
        // pivot column st first, then s, t, 1
        assert_eq!(r.matrix.columns[0], BiMonomial::new(1, 0, 1, 0));
        assert_eq!(
            r.matrix.entries[0],
            vec![x("x3 - x0"), x("x1"), x("x3"), x("-x2")]
        );
        assert!(r.diagonal_x3_powers);
        assert!(r.plane_multiples_excluded);
        assert_eq!(r.degree, 7);
        assert!(r.verification.passed);
        assert_eq!(r.verification.samples_passed, 100);
    }

    #[test]
    fn segre() {
        let phi = Parametrization::parse(1, 1, &["s*t", "s*v", "u*t", "u*v"]).unwrap();
        let (report, r) = pipeline(&phi, &PipelineConfig::default()).unwrap();
        assert_eq!(report.route, Route::BasePointFree);
        assert_eq!(r.polynomial, x("x0*x3 - x1*x2"));
        assert!(!r.projected);
    }

    #[test]
    fn pull_back_identity_and_swap() {
        let p = x("x0*x3 - x1*x2");
        assert_eq!(pull_back(&p, &RatMatrix::identity(4)).unwrap(), p);
        let swap = RatMatrix::from_i64(&[
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ])
        .unwrap();
        assert_eq!(pull_back(&p, &swap).unwrap(), x("x1*x3 - x0*x2"));
    }

    #[test]
    fn verify_rejects_wrong_polynomial() {
        let phi = Parametrization::parse(1, 1, &["s*t", "s*v", "u*t", "u*v"]).unwrap();
        let v = verify(&x("x0*x3 + x1*x2"), &phi, 0, 20, 1, false, true);
        assert!(!v.passed);
        assert!(v.failed_point.is_some());
        let ok = verify(&x("x0*x3 - x1*x2"), &phi, 0, 20, 1, false, true);
        assert!(ok.passed);
        assert_eq!(ok.samples_passed, 20);
        assert!(!ok.x3_power_nonzero);
    }
}
