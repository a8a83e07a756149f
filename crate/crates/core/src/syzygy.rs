//! Multiplication-map matrices and the moving planes / moving quadrics of
//! bidegree `(m-1, n-1)` that follow a parametrization.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::ring::{monomial_basis, BiDegree, BiMonomial, BihomPoly, Rat, XMonomial, XPoly};

/// `phi = [a0, a1, a2, a3]`, each of bidegree `(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parametrization {
    m: u32,
    n: u32,
    a: [BihomPoly; 4],
}

/// Index pairs `(i, j)`, `i <= j`, in the column-block order of `MQ`:
/// `a0^2, a0a1, a0a2, a0a3, a1^2, ..., a3^2`.
pub const QUADRIC_PAIRS: [(usize, usize); 10] = [
    (0, 0),
    (0, 1),
    (0, 2),
    (0, 3),
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (2, 3),
    (3, 3),
];

impl Parametrization {
    pub fn new(m: u32, n: u32, a: [BihomPoly; 4]) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParametrization(format!(
                "bidegree ({m},{n}) must be at least (1,1)"
            )));
        }
        let expected = BiDegree::new(m, n);
        for (i, ai) in a.iter().enumerate() {
            if ai.bidegree() != expected {
                return Err(Error::InvalidParametrization(format!(
                    "a{i} has bidegree {}, expected {expected}",
                    ai.bidegree()
                )));
            }
        }
        Ok(Self { m, n, a })
    }

    /// Parses four polynomial strings with declared bidegree `(m, n)`.
    pub fn parse(m: u32, n: u32, a: &[&str; 4]) -> Result<Self> {
        let d = BiDegree::new(m, n);
        let polys = [
            BihomPoly::parse_with_bidegree(a[0], d)?,
            BihomPoly::parse_with_bidegree(a[1], d)?,
            BihomPoly::parse_with_bidegree(a[2], d)?,
            BihomPoly::parse_with_bidegree(a[3], d)?,
        ];
        Self::new(m, n, polys)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mn(&self) -> usize {
        (self.m * self.n) as usize
    }

    pub fn bidegree(&self) -> BiDegree {
        BiDegree::new(self.m, self.n)
    }

    /// Bidegree `(m-1, n-1)` of the moving surfaces.
    pub fn moving_bidegree(&self) -> BiDegree {
        BiDegree::new(self.m - 1, self.n - 1)
    }

    pub fn a(&self) -> &[BihomPoly; 4] {
        &self.a
    }

    /// Generators `a0..a3` of `I`.
    pub fn ideal(&self) -> Vec<BihomPoly> {
        self.a.to_vec()
    }

    /// The ten products `a_i a_j`, `i <= j`, in [`QUADRIC_PAIRS`] order.
    pub fn square_products(&self) -> Vec<BihomPoly> {
        QUADRIC_PAIRS
            .iter()
            .map(|&(i, j)| self.a[i].mul(&self.a[j]))
            .collect()
    }

    /// `a'_i = sum_j t[i][j] a_j`.
    pub fn transform(&self, t: &RatMatrix) -> Result<Parametrization> {
        if t.rows() != 4 || t.cols() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "coordinate change must be 4x4, got {}x{}",
                t.rows(),
                t.cols()
            )));
        }
        let d = self.bidegree();
        let refs: Vec<&BihomPoly> = self.a.iter().collect();
        let row = |i: usize| BihomPoly::linear_combination(d, t.row(i), &refs);
        Self::new(self.m, self.n, [row(0)?, row(1)?, row(2)?, row(3)?])
    }

    /// `(a0(p), .., a3(p))`.
    pub fn evaluate(&self, point: &[Rat; 4]) -> [Rat; 4] {
        [
            self.a[0].evaluate(point),
            self.a[1].evaluate(point),
            self.a[2].evaluate(point),
            self.a[3].evaluate(point),
        ]
    }
}

impl fmt::Display for Parametrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}, {}, {}]",
            self.a[0], self.a[1], self.a[2], self.a[3]
        )
    }
}

/// Matrix of `(A_g)_g -> sum_g A_g * g` from `prod_g R_{target - deg g}` to
/// `R_target` in the standard monomial bases. Column blocks follow the
/// order of `generators`; within a block, canonical monomial order.
pub fn build_mult_matrix(generators: &[BihomPoly], target: BiDegree) -> Result<RatMatrix> {
    let rows = monomial_basis(target);
    let row_index: BTreeMap<BiMonomial, usize> =
        rows.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut blocks = Vec::with_capacity(generators.len());
    for g in generators {
        let mult = target
            .checked_sub(g.bidegree())
            .ok_or(Error::BidegreeUnderflow {
                generator: g.bidegree(),
                target,
            })?;
        blocks.push(monomial_basis(mult));
    }
    let ncols: usize = blocks.iter().map(Vec::len).sum();
    let mut mat = RatMatrix::zeros(rows.len(), ncols);
    let mut col = 0;
    for (g, block) in generators.iter().zip(&blocks) {
        for mu in block {
            for (mono, c) in g.terms() {
                mat[(row_index[&mu.mul(mono)], col)] = c.clone();
            }
            col += 1;
        }
    }
    Ok(mat)
}

/// Matrix `MP: R_{m-1,n-1}^4 -> R_{2m-1,2n-1}`, `4mn x 4mn`.
pub fn plane_matrix(phi: &Parametrization) -> RatMatrix {
    build_mult_matrix(&phi.ideal(), plane_target(phi)).expect("bidegrees are compatible")
}

/// Matrix `MQ: R_{m-1,n-1}^10 -> R_{3m-1,3n-1}`, `9mn x 10mn`.
pub fn quadric_matrix(phi: &Parametrization) -> RatMatrix {
    build_mult_matrix(&phi.square_products(), quadric_target(phi))
        .expect("bidegrees are compatible")
}

/// Matrix `MC: R_{m-1,n-1}^3 -> R_{2m-1,2n-1}` of `a0, a1, a2`, `4mn x 3mn`.
pub fn partial_plane_matrix(phi: &Parametrization) -> RatMatrix {
    build_mult_matrix(&phi.a()[..3], plane_target(phi)).expect("bidegrees are compatible")
}

fn plane_target(phi: &Parametrization) -> BiDegree {
    BiDegree::new(2 * phi.m - 1, 2 * phi.n - 1)
}

fn quadric_target(phi: &Parametrization) -> BiDegree {
    BiDegree::new(3 * phi.m - 1, 3 * phi.n - 1)
}

/// `sum_w A_w * w` over x-monomials `w` of a fixed x-degree, with all
/// `A_w` of one bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MovingSurface {
    xdegree: u32,
    bidegree: BiDegree,
    coeffs: BTreeMap<XMonomial, BihomPoly>,
}

impl MovingSurface {
    /// Builds a moving surface from a coordinate vector laid out in blocks
    /// (one per x-monomial in `xmonos`) over `monomial_basis(bidegree)`.
    pub fn from_vector(xmonos: &[XMonomial], bidegree: BiDegree, v: &[Rat]) -> Result<Self> {
        let basis = monomial_basis(bidegree);
        if v.len() != xmonos.len() * basis.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} blocks of size {}",
                v.len(),
                xmonos.len(),
                basis.len()
            )));
        }
        let xdegree = xmonos.first().map_or(0, XMonomial::degree);
        let mut coeffs = BTreeMap::new();
        for (w, chunk) in xmonos.iter().zip(v.chunks(basis.len())) {
            let a = BihomPoly::from_coeff_vector(bidegree, &basis, chunk)?;
            if !a.is_zero() {
                coeffs.insert(*w, a);
            }
        }
        Ok(Self {
            xdegree,
            bidegree,
            coeffs,
        })
    }

    pub fn xdegree(&self) -> u32 {
        self.xdegree
    }

    pub fn bidegree(&self) -> BiDegree {
        self.bidegree
    }

    pub fn coeffs(&self) -> &BTreeMap<XMonomial, BihomPoly> {
        &self.coeffs
    }

    /// Coefficient polynomial of `w` (zero if absent).
    pub fn coeff(&self, w: &XMonomial) -> BihomPoly {
        self.coeffs
            .get(w)
            .cloned()
            .unwrap_or_else(|| BihomPoly::zero(self.bidegree))
    }

    /// Coordinate vector in the block layout of [`MovingSurface::from_vector`].
    pub fn to_vector(&self, xmonos: &[XMonomial]) -> Vec<Rat> {
        let basis = monomial_basis(self.bidegree);
        xmonos
            .iter()
            .flat_map(|w| {
                let a = self.coeff(w);
                basis.iter().map(move |m| a.coeff(m)).collect::<Vec<_>>()
            })
            .collect()
    }

    /// `sum_w A_w * w(a0..a3)`; identically zero iff the surface follows `phi`.
    pub fn substitute(&self, phi: &Parametrization) -> BihomPoly {
        let target = self.bidegree + BiDegree::new(phi.m * self.xdegree, phi.n * self.xdegree);
        let mut acc = BihomPoly::zero(target);
        for (w, a) in &self.coeffs {
            let mut term = a.clone();
            for (i, &e) in w.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&phi.a()[i]);
                }
            }
            acc = acc.add(&term).expect("uniform bidegree");
        }
        acc
    }

    pub fn follows(&self, phi: &Parametrization) -> bool {
        self.substitute(phi).is_zero()
    }

    /// `x_j * self`.
    pub fn times_var(&self, j: usize) -> MovingSurface {
        let xj = XMonomial::var(j);
        Self {
            xdegree: self.xdegree + 1,
            bidegree: self.bidegree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, a)| (w.mul(&xj), a.clone()))
                .collect(),
        }
    }

    /// Entry of the row of `M` in column `c`: the x-form multiplying the
    /// parameter monomial `c`.
    pub fn form_at(&self, c: &BiMonomial) -> XPoly {
        XPoly::from_terms(self.coeffs.iter().map(|(w, a)| (*w, a.coeff(c))))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rat) -> MovingSurface {
        Self {
            xdegree: self.xdegree,
            bidegree: self.bidegree,
            coeffs: self
                .coeffs
                .iter()
                .map(|(w, a)| (*w, a.scale(c)))
                .filter(|(_, a)| !a.is_zero())
                .collect(),
        }
    }

    /// Positive multiple with coprime integer coefficients.
    pub fn primitive(&self) -> MovingSurface {
        let all = self.coeffs.values().flat_map(|a| a.terms().values());
        match crate::ring::primitive_scale(all) {
            Some(c) => self.scale(&num_traits::Signed::abs(&c)),
            None => self.clone(),
        }
    }
}

impl fmt::Display for MovingSurface {
    /// Grouped by parameter monomial with `u = v = 1`, e.g.
    /// `(-x2) + (x1)*s + (x3)*t + (-x0 + x3)*s*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for c in monomial_basis(self.bidegree).iter().rev() {
            let form = self.form_at(c);
            if form.is_zero() {
                continue;
            }
            let label = c.dehomogenized();
            if label == "1" {
                parts.push(format!("({form})"));
            } else {
                parts.push(format!("({form})*{label}"));
            }
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Linearly independent moving surfaces that follow `phi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyBasis {
    pub elements: Vec<MovingSurface>,
    /// Coordinate vectors in the block layout of the multiplication matrix.
    pub vectors: Vec<Vec<Rat>>,
    /// Distinguished coordinate of each element: the free column it was
    /// read from, or the echelon pivot once put in echelon form.
    pub pivots: Vec<usize>,
    /// Rank of the multiplication matrix the kernel was taken from.
    pub matrix_rank: usize,
    /// Column count of that matrix.
    pub matrix_cols: usize,
}

impl SyzygyBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn plane_xmonomials() -> Vec<XMonomial> {
    (0..4).map(XMonomial::var).collect()
}

pub fn quadric_xmonomials() -> Vec<XMonomial> {
    QUADRIC_PAIRS
        .iter()
        .map(|&(i, j)| XMonomial::quadric(i, j))
        .collect()
}

fn kernel_as_surfaces(
    mat: &RatMatrix,
    xmonos: &[XMonomial],
    bidegree: BiDegree,
) -> Result<SyzygyBasis> {
    let kernel = mat.kernel_basis();
    let elements = kernel
        .vectors
        .iter()
        .map(|v| MovingSurface::from_vector(xmonos, bidegree, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(SyzygyBasis {
        elements,
        vectors: kernel.vectors,
        pivots: kernel.free_columns,
        matrix_rank: kernel.rank,
        matrix_cols: mat.cols(),
    })
}

/// Kernel of `MP` as moving planes of bidegree `(m-1, n-1)`.
pub fn moving_planes(phi: &Parametrization) -> Result<SyzygyBasis> {
    kernel_as_surfaces(
        &plane_matrix(phi),
        &plane_xmonomials(),
        phi.moving_bidegree(),
    )
}

/// Kernel of `MQ` as moving quadrics of bidegree `(m-1, n-1)`.
pub fn moving_quadrics(phi: &Parametrization) -> Result<SyzygyBasis> {
    kernel_as_surfaces(
        &quadric_matrix(phi),
        &quadric_xmonomials(),
        phi.moving_bidegree(),
    )
}

/// `dim Syz(a0, a1, a2)_{m-1,n-1}`, the kernel dimension of `MC`.
pub fn syz_dim_abc(phi: &Parametrization) -> usize {
    let mc = partial_plane_matrix(phi);
    mc.cols() - mc.rank()
}
