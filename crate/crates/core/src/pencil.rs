//! Exact determinants of matrices whose entries are bivariate polynomials.
//!
//! Determinants are computed by evaluation and interpolation: every entry is
//! evaluated on an integer grid, the scalar determinants are computed exactly
//! (fraction-free elimination over `Z`, field elimination over `Q(zeta_N)`),
//! and the polynomial is rebuilt by iterated univariate interpolation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{BivarPoly, Coefficient, IntPoly, Vars};

/// Coefficient rings with an exact scalar determinant and a fraction field
/// to interpolate in.
pub trait DetRing: Coefficient {
    /// Field in which interpolation happens; only division by integers is needed.
    type Frac: Coefficient;

    /// Determinant of a row-major `n x n` matrix.
    fn det(entries: Vec<Self>, n: usize) -> Self;
    fn to_frac(&self) -> Self::Frac;
    fn from_frac(f: &Self::Frac) -> Option<Self>;
    fn frac_div_int(f: &Self::Frac, d: &BigInt) -> Self::Frac;
}

impl DetRing for BigInt {
    type Frac = BigRational;

    fn det(entries: Vec<BigInt>, n: usize) -> BigInt {
        bareiss(entries, n)
    }

    fn to_frac(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn from_frac(f: &BigRational) -> Option<BigInt> {
        f.is_integer().then(|| f.to_integer())
    }

    fn frac_div_int(f: &BigRational, d: &BigInt) -> BigRational {
        f / BigRational::from_integer(d.clone())
    }
}

impl DetRing for Cyclotomic {
    type Frac = Cyclotomic;

    fn det(entries: Vec<Cyclotomic>, n: usize) -> Cyclotomic {
        field_det(entries, n)
    }

    fn to_frac(&self) -> Cyclotomic {
        self.clone()
    }

    fn from_frac(f: &Cyclotomic) -> Option<Cyclotomic> {
        Some(f.clone())
    }

    fn frac_div_int(f: &Cyclotomic, d: &BigInt) -> Cyclotomic {
        f.div_int(d)
    }
}

/// Fraction-free Gaussian elimination (Bareiss); every division is exact.
pub fn bareiss(mut a: Vec<BigInt>, n: usize) -> BigInt {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let v = &a[i * n + j] * &pivot - &lead * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Gaussian elimination over a cyclotomic field.
fn field_det(mut a: Vec<Cyclotomic>, n: usize) -> Cyclotomic {
    assert_eq!(a.len(), n * n);
    let mut det = Cyclotomic::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r * n + k].is_zero()) else {
            return Cyclotomic::zero();
        };
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k].clone();
        let inv = pivot.inverse().expect("nonzero pivot");
        det = det * pivot;
        for i in k + 1..n {
            if a[i * n + k].is_zero() {
                continue;
            }
            let factor = a[i * n + k].clone() * inv.clone();
            for j in k + 1..n {
                let v = a[i * n + j].clone() - factor.clone() * a[k * n + j].clone();
                a[i * n + j] = v;
            }
            a[i * n + k] = Cyclotomic::zero();
        }
    }
    det
}

/// An entry `constant + lambda·λ + mu·μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct Affine<R> {
    pub constant: R,
    pub lambda: R,
    pub mu: R,
}

impl<R: Coefficient> Affine<R> {
    pub fn constant(c: R) -> Self {
        Affine {
            constant: c,
            lambda: R::zero(),
            mu: R::zero(),
        }
    }

    pub fn to_poly(&self) -> BivarPoly<R> {
        let v = Vars::LambdaMu;
        BivarPoly::from_terms(
            v,
            [
                ((0, 0), self.constant.clone()),
                ((1, 0), self.lambda.clone()),
                ((0, 1), self.mu.clone()),
            ],
        )
    }
}

/// Square matrix of entries of degree at most one in each of `λ`, `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PencilMatrix<R> {
    n: usize,
    entries: Vec<Affine<R>>,
}

impl<R: Coefficient> PencilMatrix<R> {
    pub fn new(rows: Vec<Vec<Affine<R>>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Ok(PencilMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Affine<R>) -> Self {
        PencilMatrix {
            n,
            entries: (0..n * n).map(|k| f(k / n, k % n)).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Affine<R> {
        &self.entries[i * self.n + j]
    }

    pub fn to_poly_matrix(&self) -> PolyMatrix<R> {
        PolyMatrix {
            n: self.n,
            vars: Vars::LambdaMu,
            entries: self.entries.iter().map(Affine::to_poly).collect(),
        }
    }
}

/// Square matrix of bivariate polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix<R> {
    n: usize,
    vars: Vars,
    entries: Vec<BivarPoly<R>>,
}

impl<R: Coefficient> PolyMatrix<R> {
    pub fn new(vars: Vars, rows: Vec<Vec<BivarPoly<R>>>) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        let entries: Vec<_> = rows.into_iter().flatten().collect();
        if let Some(e) = entries.iter().find(|e| e.vars() != vars) {
            return Err(Error::VariableMismatch(vars, e.vars()));
        }
        Ok(PolyMatrix { n, vars, entries })
    }

    pub fn from_fn(n: usize, vars: Vars, f: impl Fn(usize, usize) -> BivarPoly<R>) -> Self {
        PolyMatrix {
            n,
            vars,
            entries: (0..n * n).map(|k| f(k / n, k % n).with_vars(vars)).collect(),
        }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &BivarPoly<R> {
        &self.entries[i * self.n + j]
    }

    /// Row-degree bounds `(Σ_i max_j deg_x, Σ_i max_j deg_y)` on the determinant.
    pub fn degree_bounds(&self) -> (usize, usize) {
        let mut bx = 0;
        let mut by = 0;
        for i in 0..self.n {
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            bx += row.iter().filter_map(|p| p.degree_x()).max().unwrap_or(0) as usize;
            by += row.iter().filter_map(|p| p.degree_y()).max().unwrap_or(0) as usize;
        }
        (bx, by)
    }
}

/// Interpolation grid: nodes `origin + 0..=degree` in each variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Grid {
    pub degree_x: usize,
    pub degree_y: usize,
    pub origin_x: i64,
    pub origin_y: i64,
}

impl Grid {
    pub fn new(degree_x: usize, degree_y: usize) -> Self {
        Grid {
            degree_x,
            degree_y,
            origin_x: 0,
            origin_y: 0,
        }
    }

    pub fn shifted(self, origin_x: i64, origin_y: i64) -> Self {
        Grid {
            origin_x,
            origin_y,
            ..self
        }
    }
}

/// `det` of a pencil on the `(n+1) x (n+1)` grid `{0..n}²`.
pub fn det_pencil<R: DetRing>(m: &PencilMatrix<R>) -> Result<BivarPoly<R>> {
    let n = m.dimension();
    det_pencil_on(m, Grid::new(n, n))
}

pub fn det_pencil_on<R: DetRing>(m: &PencilMatrix<R>, grid: Grid) -> Result<BivarPoly<R>> {
    let n = m.dimension();
    let evaluate = |x: &BigInt, y: &BigInt| -> Vec<R> {
        let (x, y) = (R::from_bigint(x.clone()), R::from_bigint(y.clone()));
        m.entries
            .iter()
            .map(|e| e.constant.clone() + e.lambda.clone() * x.clone() + e.mu.clone() * y.clone())
            .collect()
    };
    interpolate_det(n, Vars::LambdaMu, grid, evaluate)
}

/// Determinant of a polynomial matrix using its row-degree bounds.
pub fn det_poly_matrix<R: DetRing>(m: &PolyMatrix<R>) -> Result<BivarPoly<R>> {
    let (bx, by) = m.degree_bounds();
    det_poly_matrix_on(m, Grid::new(bx, by))
}

pub fn det_poly_matrix_on<R: DetRing>(m: &PolyMatrix<R>, grid: Grid) -> Result<BivarPoly<R>> {
    let evaluate = |x: &BigInt, y: &BigInt| -> Vec<R> {
        let (x, y) = (R::from_bigint(x.clone()), R::from_bigint(y.clone()));
        m.entries.iter().map(|p| p.eval(&x, &y)).collect()
    };
    interpolate_det(m.n, m.vars, grid, evaluate)
}

fn interpolate_det<R, F>(n: usize, vars: Vars, grid: Grid, evaluate: F) -> Result<BivarPoly<R>>
where
    R: DetRing,
    F: Fn(&BigInt, &BigInt) -> Vec<R> + Sync,
{
    let xs: Vec<BigInt> = (0..=grid.degree_x as i64).map(|k| BigInt::from(grid.origin_x + k)).collect();
    let ys: Vec<BigInt> = (0..=grid.degree_y as i64).map(|k| BigInt::from(grid.origin_y + k)).collect();
    let points: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|a| (0..ys.len()).map(move |b| (a, b)))
        .collect();
    // Independent grid points; collect() keeps the order deterministic.
    let values: Vec<R::Frac> = points
        .par_iter()
        .map(|&(a, b)| R::det(evaluate(&xs[a], &ys[b]), n).to_frac())
        .collect();

    // For each x-node, interpolate in y; then interpolate each y-coefficient in x.
    let per_x: Vec<Vec<R::Frac>> = values
        .chunks(ys.len())
        .map(|row| interpolate::<R>(&ys, row))
        .collect();
    let mut out = BivarPoly::zero(vars);
    for j in 0..ys.len() {
        let column: Vec<R::Frac> = per_x.iter().map(|c| c[j].clone()).collect();
        for (i, c) in interpolate::<R>(&xs, &column).into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = R::from_frac(&c).ok_or_else(|| {
                Error::IdentityViolation(format!(
                    "interpolated coefficient of x^{i} y^{j} is not in the coefficient ring"
                ))
            })?;
            out.add_term(i as u32, j as u32, c);
        }
    }
    Ok(out)
}

/// Monomial coefficients of the unique polynomial of degree `< nodes.len()`
/// through `(nodes[k], values[k])`, via Newton divided differences.
fn interpolate<R: DetRing>(nodes: &[BigInt], values: &[R::Frac]) -> Vec<R::Frac> {
    let n = nodes.len();
    let mut dd = values.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            let diff = &nodes[k] - &nodes[k - level];
            assert!(!diff.is_zero(), "interpolation nodes must be distinct");
            dd[k] = R::frac_div_int(&(dd[k].clone() - dd[k - 1].clone()), &diff);
        }
    }
    // Horner expansion of the Newton form.
    let mut coeffs = vec![<R::Frac as Zero>::zero(); n];
    for k in (0..n).rev() {
        // coeffs <- coeffs * (x - nodes[k]) + dd[k]
        let node = <R::Frac as Coefficient>::from_bigint(nodes[k].clone());
        let mut next = vec![<R::Frac as Zero>::zero(); n];
        for d in 0..n {
            if coeffs[d].is_zero() {
                continue;
            }
            if d + 1 < n {
                next[d + 1] = next[d + 1].clone() + coeffs[d].clone();
            }
            next[d] = next[d].clone() - coeffs[d].clone() * node.clone();
        }
        next[0] = next[0].clone() + dd[k].clone();
        coeffs = next;
    }
    coeffs
}

/// The pencil `λI − (A − μD)` of a graph.
pub fn graph_pencil(g: &Graph) -> PencilMatrix<BigInt> {
    let deg = g.degrees();
    PencilMatrix::from_fn(g.vertex_count(), |i, j| {
        if i == j {
            Affine {
                constant: BigInt::zero(),
                lambda: BigInt::one(),
                mu: BigInt::from(deg[i]),
            }
        } else if g.has_edge(i, j) {
            Affine::constant(BigInt::from(-1))
        } else {
            Affine::constant(BigInt::zero())
        }
    })
}

/// `F_G(λ, μ) = det(λI − (A(G) − μD(G)))`.
pub fn gcp_direct(g: &Graph) -> IntPoly {
    det_pencil(&graph_pencil(g)).expect("integer pencils interpolate to integer polynomials")
}
