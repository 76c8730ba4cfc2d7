//! Reciprocals of Bartholdi zeta functions.
//!
//! `Z_G(u,t)⁻¹ = (1 − (1−u)²t²)^{ε−ν} · det[I − A t + (1−u)(D − (1−u)I) t²]`.
//! The determinant factor ("core") is computed either directly or from
//! `F_G` by the substitution `t^ν F_G(1/t − (1−u)²t, (1−u)t)`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pencil::{det_poly_matrix_on, Grid, PolyMatrix};
use crate::poly::{IntPoly, Vars};

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaReciprocal {
    /// `1 − (1−u)²t²`
    pub prefactor_base: IntPoly,
    /// `ε_G − ν_G`; negative for forests.
    pub prefactor_exponent: i64,
    pub core: IntPoly,
}

/// A quotient of two integer polynomials in `(u, t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    pub numerator: IntPoly,
    pub denominator: IntPoly,
}

impl RationalFunction {
    pub fn is_one(&self) -> bool {
        self.numerator == self.denominator
    }
}

fn u() -> IntPoly {
    IntPoly::x(Vars::UT)
}

fn t() -> IntPoly {
    IntPoly::y(Vars::UT)
}

fn one_minus_u() -> IntPoly {
    &IntPoly::one(Vars::UT) - &u()
}

/// `1 − (1−u)²t²`
pub fn prefactor_base() -> IntPoly {
    &IntPoly::one(Vars::UT) - &(&one_minus_u().pow(2) * &t().pow(2))
}

impl ZetaReciprocal {
    fn new(g: &Graph, core: IntPoly) -> Self {
        ZetaReciprocal {
            prefactor_base: prefactor_base(),
            prefactor_exponent: g.edge_count() as i64 - g.vertex_count() as i64,
            core,
        }
    }

    /// The value at a rational point, or `None` where the prefactor has a pole.
    pub fn evaluate(&self, u: &BigRational, t: &BigRational) -> Option<BigRational> {
        let base = self.prefactor_base.evaluate(u, t);
        let core = self.core.evaluate(u, t);
        let e = self.prefactor_exponent;
        if e < 0 && base.is_zero() {
            return None;
        }
        let factor = if e >= 0 {
            num_traits::pow(base, e as usize)
        } else {
            num_traits::pow(base.recip(), (-e) as usize)
        };
        Some(factor * core)
    }

    /// The core with `u = 0`: `det(I − A t + (D − I) t²)`, the Ihara case.
    pub fn ihara_core(&self) -> IntPoly {
        let zero = IntPoly::zero(Vars::UT);
        self.core
            .compose(&zero, &t())
            .expect("same variables")
    }

    /// `Z⁻¹` as a fraction, cancelling common powers of the prefactor base.
    pub fn reduced(&self) -> RationalFunction {
        reduce_with_base(&self.core, &self.prefactor_base, self.prefactor_exponent)
    }

    /// `Z⁻¹` at `u = 0` as a reduced fraction.
    pub fn ihara_reduced(&self) -> RationalFunction {
        let base = &IntPoly::one(Vars::UT) - &t().pow(2);
        reduce_with_base(&self.ihara_core(), &base, self.prefactor_exponent)
    }
}

fn reduce_with_base(core: &IntPoly, base: &IntPoly, exponent: i64) -> RationalFunction {
    if exponent >= 0 {
        return RationalFunction {
            numerator: core * &base.pow(exponent as u32),
            denominator: IntPoly::one(Vars::UT),
        };
    }
    let mut numerator = core.clone();
    let mut remaining = -exponent;
    while remaining > 0 {
        match numerator.div_exact(base) {
            Some(q) => {
                numerator = q;
                remaining -= 1;
            }
            None => break,
        }
    }
    RationalFunction {
        numerator,
        denominator: base.pow(remaining as u32),
    }
}

/// The core as the determinant of `I − A t + (1−u)(D − (1−u)I) t²`, on the
/// `(2ν+1) x (2ν+1)` grid.
pub fn bartholdi_direct(g: &Graph) -> ZetaReciprocal {
    let n = g.vertex_count();
    let deg = g.degrees();
    let w = one_minus_u();
    let t2 = t().pow(2);
    let m = PolyMatrix::from_fn(n, Vars::UT, |i, j| {
        if i == j {
            let d = IntPoly::int(Vars::UT, deg[i] as i64);
            &IntPoly::one(Vars::UT) + &(&(&w * &(&d - &w)) * &t2)
        } else if g.has_edge(i, j) {
            -t()
        } else {
            IntPoly::zero(Vars::UT)
        }
    });
    let core = det_poly_matrix_on(&m, Grid::new(2 * n, 2 * n))
        .expect("integer matrices interpolate to integer polynomials");
    ZetaReciprocal::new(g, core)
}

/// The core as `t^ν F_G(1/t − (1−u)²t, (1−u)t)`: the term `c λ^i μ^j`
/// contributes `c t^{ν−i+j} (1 − (1−u)²t²)^i (1−u)^j`.
pub fn bartholdi_from_gcp(g: &Graph, gcp: &IntPoly) -> Result<ZetaReciprocal> {
    if gcp.vars() != Vars::LambdaMu {
        return Err(Error::VariableMismatch(Vars::LambdaMu, gcp.vars()));
    }
    let nu = g.vertex_count() as i64;
    let b = prefactor_base();
    let w = one_minus_u();
    let mut core = IntPoly::zero(Vars::UT);
    for ((i, j), c) in gcp.terms() {
        let tp = nu - i as i64 + j as i64;
        if tp < 0 {
            return Err(Error::IdentityViolation(format!(
                "term l^{i} m^{j} leaves t^{tp} after clearing denominators"
            )));
        }
        let term = &(&b.pow(i) * &w.pow(j)) * &t().pow(tp as u32);
        core = &core + &term.scale(c);
    }
    Ok(ZetaReciprocal::new(g, core))
}

/// `F_G(λ, μ) = λ^ν / (1−μ²)^ε · Z_G(1 − λμ/(1−μ²), (1−μ²)/λ)⁻¹` at a point
/// with `λ ≠ 0`, `μ² ≠ 1`.
pub fn gcp_from_zeta_at(
    g: &Graph,
    zeta: &ZetaReciprocal,
    lambda: &BigRational,
    mu: &BigRational,
) -> Option<BigRational> {
    let one = BigRational::one();
    let s = &one - mu * mu;
    if lambda.is_zero() || s.is_zero() {
        return None;
    }
    let u = &one - lambda * mu / &s;
    let t = &s / lambda;
    let z = zeta.evaluate(&u, &t)?;
    let nu = g.vertex_count();
    let eps = g.edge_count();
    Some(num_traits::pow(lambda.clone(), nu) / num_traits::pow(s, eps) * z)
}
