//! Base-point conditions B1-B6, decided with finite-dimensional linear
//! algebra only.
//!
//! * `deg V(I) = k` is read off the bigraded Hilbert function of `R/I`
//!   once it has stabilized along the diagonal starting at `(2m-1, 2n-1)`.
//! * The local complete intersection property is tested through the
//!   equality case of Herzog's inequality: `dim(R/I^2)` must equal `3k`
//!   from `(3m-1, 3n-1)` on.
//! * Saturation membership is tested degree by degree: `f` is in
//!   `sat J` once `mu * f` lies in `J` for every monomial `mu` of some
//!   bidegree `(N, N)`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::ring::{monomial_basis, rat, BiDegree, BihomPoly};
use crate::syzygy::{build_mult_matrix, syz_dim_abc, Parametrization};

/// `dim (R/<generators>)_d`. Generators whose bidegree does not fit under
/// `d` contribute nothing.
pub fn hilbert_dim(generators: &[BihomPoly], d: BiDegree) -> usize {
    let fitting: Vec<BihomPoly> = generators
        .iter()
        .filter(|g| g.bidegree() <= d && !g.is_zero())
        .cloned()
        .collect();
    if fitting.is_empty() {
        return d.dim();
    }
    let mat = build_mult_matrix(&fitting, d).expect("generators fit under d");
    d.dim() - mat.rank()
}

/// Values of `dim(R/I)` over a set of bidegrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertTable {
    pub samples: Vec<(BiDegree, usize)>,
}

impl HilbertTable {
    /// Samples every `(k, l)` with `lo <= (k, l) <= hi`.
    pub fn rectangle(generators: &[BihomPoly], lo: BiDegree, hi: BiDegree) -> Self {
        let degrees: Vec<BiDegree> = (lo.d1..=hi.d1)
            .flat_map(|k| (lo.d2..=hi.d2).map(move |l| BiDegree::new(k, l)))
            .collect();
        Self::at(generators, &degrees)
    }

    pub fn at(generators: &[BihomPoly], degrees: &[BiDegree]) -> Self {
        let samples = degrees
            .par_iter()
            .map(|&d| (d, hilbert_dim(generators, d)))
            .collect();
        Self { samples }
    }

    pub fn values(&self) -> Vec<usize> {
        self.samples.iter().map(|(_, v)| *v).collect()
    }

    pub fn get(&self, d: BiDegree) -> Option<usize> {
        self.samples.iter().find(|(e, _)| *e == d).map(|(_, v)| *v)
    }
}

/// Outcome of sampling a Hilbert function along a diagonal window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Stabilization {
    /// The last two samples agree.
    Stable(usize),
    /// The last sample exceeds the previous one: a positive-dimensional
    /// component.
    Growing,
    /// Still decreasing at the end of the window.
    Decreasing,
}

/// A diagonal value of 0 is final: `(R/J)_d = 0` forces
/// `(R/J)_{d+(1,1)} = 0`.
pub fn stabilization(values: &[usize]) -> Stabilization {
    match values {
        [.., 0] => Stabilization::Stable(0),
        [.., a, b] if a == b => Stabilization::Stable(*b),
        [.., a, b] if b > a => Stabilization::Growing,
        [.., _, _] => Stabilization::Decreasing,
        [v] => Stabilization::Stable(*v),
        [] => Stabilization::Decreasing,
    }
}

fn diagonal_window(start: BiDegree, window: usize) -> Vec<BiDegree> {
    (0..=window as u32).map(|i| start.diagonal(i)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePointSummary {
    /// `V(I)` is finite (the Hilbert function stabilized).
    pub finite: bool,
    /// Total multiplicity `deg V(I)`; meaningful when `finite`.
    pub k: usize,
    /// `dim(R/I^2) = 3k` on the whole square window.
    pub lci_proxy: bool,
    pub stabilization_window: Vec<BiDegree>,
    pub ideal_values: Vec<usize>,
    pub square_window: Vec<BiDegree>,
    pub square_values: Vec<usize>,
}

/// Samples `dim(R/I)` at `(2m-1+i, 2n-1+i)` and `dim(R/I^2)` at
/// `(3m-1+i, 3n-1+i)` for `i = 0..=window`.
pub fn base_point_summary(phi: &Parametrization, window: usize) -> Result<BasePointSummary> {
    let window = window.max(2);
    let (m, n) = (phi.m(), phi.n());
    let ideal_window = diagonal_window(BiDegree::new(2 * m - 1, 2 * n - 1), window);
    let ideal_values = HilbertTable::at(&phi.ideal(), &ideal_window).values();
    let square_window = diagonal_window(BiDegree::new(3 * m - 1, 3 * n - 1), window);
    let (finite, k) = match stabilization(&ideal_values) {
        Stabilization::Stable(k) => (true, k),
        Stabilization::Growing => (false, 0),
        Stabilization::Decreasing => {
            return Err(Error::NotStabilized {
                values: ideal_values,
            })
        }
    };
    let (square_values, lci_proxy) = if finite {
        let values = HilbertTable::at(&phi.square_products(), &square_window).values();
        let ok = values.iter().all(|&v| v == 3 * k);
        (values, ok)
    } else {
        (Vec::new(), false)
    };
    Ok(BasePointSummary {
        finite,
        k,
        lci_proxy,
        stabilization_window: ideal_window,
        ideal_values,
        square_window,
        square_values,
    })
}

/// Coefficient vectors of `a0..a3` in `R_{m,n}` are linearly independent.
/// On failure, returns the indices involved in a dependency.
pub fn check_b1(phi: &Parametrization) -> std::result::Result<(), Vec<usize>> {
    let basis = monomial_basis(phi.bidegree());
    let cols: Vec<_> = phi
        .a()
        .iter()
        .map(|a| a.coeff_vector(&basis).expect("bidegree checked"))
        .collect();
    let mat = RatMatrix::from_columns(basis.len(), &cols).expect("uniform length");
    let kernel = mat.kernel_basis();
    match kernel.vectors.first() {
        None => Ok(()),
        Some(v) => Err(v
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(i, _)| i)
            .collect()),
    }
}

/// `dim(R/I)_{2m-1,2n-1} = k`: `I` is `(2m-1, 2n-1)`-regular.
pub fn check_b4(phi: &Parametrization, summary: &BasePointSummary) -> bool {
    let d = BiDegree::new(2 * phi.m() - 1, 2 * phi.n() - 1);
    summary.finite && hilbert_dim(&phi.ideal(), d) == summary.k
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationOutcome {
    pub member: bool,
    /// Smallest `N` at which every `mu * f`, `mu` of bidegree `(N, N)`,
    /// lies in the ideal.
    pub power: Option<usize>,
    /// Undecided: no `N <= max_power` worked.
    pub bound_reached: bool,
}

/// Whether `f` lies in the saturation of `<generators>` with respect to
/// `<s,u> ∩ <t,v>`, searching `N = 0, 1, ..., max_power`.
pub fn saturation_member(
    f: &BihomPoly,
    generators: &[BihomPoly],
    max_power: usize,
) -> SaturationOutcome {
    for power in 0..=max_power {
        let shift = BiDegree::new(power as u32, power as u32);
        let target = f.bidegree() + shift;
        let fitting: Vec<BihomPoly> = generators
            .iter()
            .filter(|g| g.bidegree() <= target && !g.is_zero())
            .cloned()
            .collect();
        let basis = monomial_basis(target);
        let products: Vec<_> = monomial_basis(shift)
            .into_iter()
            .map(|mu| {
                BihomPoly::monomial(mu, rat(1))
                    .mul(f)
                    .coeff_vector(&basis)
                    .expect("bidegree matches")
            })
            .collect();
        let all_members = if fitting.is_empty() {
            products
                .iter()
                .all(|v| v.iter().all(num_traits::Zero::is_zero))
        } else {
            // Membership of every product at once: appending them as
            // columns must not raise the rank.
            let mat = build_mult_matrix(&fitting, target).expect("fits");
            let rank = mat.rank();
            let mut cols: Vec<Vec<_>> = (0..mat.cols())
                .map(|j| (0..mat.rows()).map(|i| mat[(i, j)].clone()).collect())
                .collect();
            cols.extend(products);
            RatMatrix::from_columns(mat.rows(), &cols)
                .expect("uniform")
                .rank()
                == rank
        };
        if all_members {
            return SaturationOutcome {
                member: true,
                power: Some(power),
                bound_reached: false,
            };
        }
    }
    SaturationOutcome {
        member: false,
        power: None,
        bound_reached: true,
    }
}

/// Seeded invertible integer matrix with entries in `[-bound, bound]`.
pub fn random_invertible(seed: u64, bound: i64) -> RatMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<i64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect();
        let t = RatMatrix::from_i64(&rows).expect("4x4");
        if !num_traits::Zero::is_zero(&t.det_bareiss().expect("square")) {
            return t;
        }
    }
}

/// `(T * phi, T)` for a seeded random invertible `T`.
pub fn generic_change(
    phi: &Parametrization,
    seed: u64,
    bound: i64,
) -> (Parametrization, RatMatrix) {
    let t = random_invertible(seed, bound);
    let changed = phi.transform(&t).expect("4x4 transform");
    (changed, t)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Condition {
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: String,
}

impl Verdict {
    fn new(holds: bool, witness: impl Into<String>) -> Self {
        Self {
            holds,
            witness: witness.into(),
        }
    }
}

/// How the implicitization may proceed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// B1-B6 hold: moving planes and moving quadrics.
    BasePoints,
    /// No base points (`k = 0`): moving quadrics only.
    BasePointFree,
    /// Some required condition fails.
    Refused,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateChange {
    pub seed: u64,
    pub attempt: usize,
    pub matrix: Vec<Vec<String>>,
}

impl CoordinateChange {
    pub fn matrix(&self) -> RatMatrix {
        let rows = self
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.parse().expect("rational entry"))
                    .collect()
            })
            .collect();
        RatMatrix::from_rows(rows).expect("4x4")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionConfig {
    pub window: usize,
    /// Saturation search bound; `None` means `2*max(m,n) + 2`.
    pub sat_bound: Option<usize>,
    pub seed: u64,
    pub change_bound: i64,
    pub change_attempts: usize,
}

impl Default for ConditionConfig {
    fn default() -> Self {
        Self {
            window: 3,
            sat_bound: None,
            seed: 0,
            change_bound: 10,
            change_attempts: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub b1: Verdict,
    pub b2: Verdict,
    pub b3: Verdict,
    pub b4: Verdict,
    pub b5: Verdict,
    pub b6: Verdict,
    pub mn: usize,
    /// `deg V(I)` when `V(I)` is finite.
    pub k: Option<usize>,
    pub summary: Option<BasePointSummary>,
    /// `dim(R/I)_{2m-1,2n-1}`.
    pub regularity_value: usize,
    /// Stabilized Hilbert values of `<a0,a1,a2>` over the window.
    pub abc_values: Vec<usize>,
    pub syz_abc_dim: usize,
    pub saturation: SaturationOutcome,
    pub coordinate_change: Option<CoordinateChange>,
    pub route: Route,
}

impl ConditionReport {
    pub fn verdict(&self, c: Condition) -> &Verdict {
        match c {
            Condition::B1 => &self.b1,
            Condition::B2 => &self.b2,
            Condition::B3 => &self.b3,
            Condition::B4 => &self.b4,
            Condition::B5 => &self.b5,
            Condition::B6 => &self.b6,
        }
    }

    pub fn all_hold(&self) -> bool {
        ALL_CONDITIONS.iter().all(|&c| self.verdict(c).holds)
    }

    /// First failing condition among those the route requires.
    pub fn first_failure(&self) -> Option<(Condition, String)> {
        let required: &[Condition] = match self.route {
            Route::BasePoints | Route::Refused => &ALL_CONDITIONS,
            Route::BasePointFree => &[Condition::B1, Condition::B2, Condition::B4],
        };
        required
            .iter()
            .find(|&&c| !self.verdict(c).holds)
            .map(|&c| (c, self.verdict(c).witness.clone()))
    }

    pub fn into_error(&self) -> Option<Error> {
        self.first_failure()
            .map(|(c, witness)| Error::ConditionFailed {
                condition: c.to_string(),
                witness,
            })
    }

    /// The parametrization the construction should run on: `phi` itself
    /// or `T * phi` when a coordinate change was applied.
    pub fn effective(&self, phi: &Parametrization) -> Result<Parametrization> {
        match &self.coordinate_change {
            Some(c) => phi.transform(&c.matrix()),
            None => Ok(phi.clone()),
        }
    }
}

pub const ALL_CONDITIONS: [Condition; 6] = [
    Condition::B1,
    Condition::B2,
    Condition::B3,
    Condition::B4,
    Condition::B5,
    Condition::B6,
];

struct LateChecks {
    b5: Verdict,
    b6: Verdict,
    abc_values: Vec<usize>,
    syz_abc_dim: usize,
    saturation: SaturationOutcome,
}

fn check_b5_b6(
    phi: &Parametrization,
    k: Option<usize>,
    window: usize,
    sat_bound: usize,
) -> LateChecks {
    let (m, n) = (phi.m(), phi.n());
    let abc = &phi.a()[..3];
    let degrees = diagonal_window(BiDegree::new(2 * m - 1, 2 * n - 1), window.max(2));
    let abc_values = HilbertTable::at(abc, &degrees).values();
    let abc_stable = stabilization(&abc_values);
    let same_scheme = matches!((abc_stable, k), (Stabilization::Stable(v), Some(k)) if v == k);
    let saturation = saturation_member(&phi.a()[3], abc, sat_bound);
    let b5 = match (same_scheme, saturation.member) {
        (true, true) => Verdict::new(
            true,
            format!(
                "deg V(a0,a1,a2) = deg V(I); a3 in sat<a0,a1,a2> at N = {}",
                saturation.power.unwrap_or(0)
            ),
        ),
        (false, _) => Verdict::new(
            false,
            format!("V(a0,a1,a2) differs from V(I): Hilbert values {abc_values:?} vs k = {k:?}"),
        ),
        (true, false) => Verdict::new(
            false,
            format!("a3 not in sat<a0,a1,a2> up to N = {sat_bound}"),
        ),
    };
    let syz_abc_dim = syz_dim_abc(phi);
    let b6 = Verdict::new(
        syz_abc_dim == 0,
        format!("dim Syz(a0,a1,a2)_(m-1,n-1) = {syz_abc_dim}"),
    );
    LateChecks {
        b5,
        b6,
        abc_values,
        syz_abc_dim,
        saturation,
    }
}

/// Decides B1-B6. When B1-B4 hold with `k > 0` but B5 or B6 fails, retries
/// with seeded generic coordinate changes and records the first that works.
pub fn check_all(phi: &Parametrization, config: &ConditionConfig) -> ConditionReport {
    let mn = phi.mn();
    let sat_bound = config
        .sat_bound
        .unwrap_or(2 * phi.m().max(phi.n()) as usize + 2);

    let b1 = match check_b1(phi) {
        Ok(()) => Verdict::new(true, "a0..a3 linearly independent"),
        Err(idx) if idx.len() == 1 => Verdict::new(false, format!("a{} is zero", idx[0])),
        Err(idx) if idx.len() == 2 => {
            Verdict::new(false, format!("dependent pair ({},{})", idx[0], idx[1]))
        }
        Err(idx) => Verdict::new(false, format!("dependent set {idx:?}")),
    };

    let regular_at = BiDegree::new(2 * phi.m() - 1, 2 * phi.n() - 1);
    let summary = base_point_summary(phi, config.window);
    let (b2, b3, b4, k, regularity_value, summary) = match summary {
        Ok(s) => {
            let k = s.k;
            let b2 = if !s.finite {
                Verdict::new(
                    false,
                    format!("V(I) not finite: Hilbert values grow {:?}", s.ideal_values),
                )
            } else if k > mn {
                Verdict::new(false, format!("k = {k} exceeds mn = {mn}"))
            } else {
                Verdict::new(true, format!("k = {k} <= mn = {mn}"))
            };
            let b3 = if s.lci_proxy {
                Verdict::new(
                    true,
                    format!("dim(R/I^2) = 3k = {} on {:?}", 3 * k, s.square_values),
                )
            } else {
                Verdict::new(
                    false,
                    format!("dim(R/I^2) values {:?} != 3k = {}", s.square_values, 3 * k),
                )
            };
            let rv = s.ideal_values[0];
            let b4 = Verdict::new(
                check_b4(phi, &s),
                format!("dim(R/I)_{regular_at} = {rv}, deg V(I) = {k}"),
            );
            let kk = s.finite.then_some(k);
            (b2, b3, b4, kk, rv, Some(s))
        }
        Err(Error::NotStabilized { values }) => {
            let w = format!("Hilbert function not stabilized: {values:?}");
            (
                Verdict::new(false, w.clone()),
                Verdict::new(false, w.clone()),
                Verdict::new(false, w),
                None,
                values[0],
                None,
            )
        }
        Err(e) => unreachable!("{e}"),
    };

    let mut late = check_b5_b6(phi, k, config.window, sat_bound);
    let mut coordinate_change = None;
    let b1_to_b4 = b1.holds && b2.holds && b3.holds && b4.holds;
    let positive_k = k.is_some_and(|k| k > 0);
    if b1_to_b4 && positive_k && !(late.b5.holds && late.b6.holds) {
        for attempt in 0..config.change_attempts {
            let seed = config.seed.wrapping_add(attempt as u64);
            let (changed, t) = generic_change(phi, seed, config.change_bound);
            let retry = check_b5_b6(&changed, k, config.window, sat_bound);
            if retry.b5.holds && retry.b6.holds {
                coordinate_change = Some(CoordinateChange {
                    seed,
                    attempt,
                    matrix: t
                        .to_rows()
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect())
                        .collect(),
                });
                late = retry;
                break;
            }
        }
    }

    let route = if b1.holds && b2.holds && b4.holds && k == Some(0) {
        Route::BasePointFree
    } else if b1_to_b4 && late.b5.holds && late.b6.holds {
        Route::BasePoints
    } else {
        Route::Refused
    };

    ConditionReport {
        b1,
        b2,
        b3,
        b4,
        b5: late.b5,
        b6: late.b6,
        mn,
        k,
        summary,
        regularity_value,
        abc_values: late.abc_values,
        syz_abc_dim: late.syz_abc_dim,
        saturation: late.saturation,
        coordinate_change,
        route,
    }
}
