//! Spanning-tree counts: from `∂F_G/∂μ` at `(0, 1)` and from a Laplacian cofactor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pencil::{bareiss, det_poly_matrix, gcp_direct, PolyMatrix};
use crate::poly::{IntPoly, Vars};

/// `∂F/∂μ` evaluated at `(λ, μ) = (0, 1)`.
pub fn mu_derivative_at_zero_one(gcp: &IntPoly) -> BigInt {
    let v = gcp
        .partial_mu()
        .evaluate(&BigRational::zero(), &BigRational::one());
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// `κ(G) = (1/2ε) ∂F_G/∂μ |_(0,1)`.
///
/// Connected graphs get their spanning-tree count; disconnected graphs get 0,
/// since every Laplacian cofactor vanishes. Edgeless graphs return 1 for a
/// single vertex and 0 otherwise.
pub fn complexity_gcp(g: &Graph) -> Result<BigInt> {
    complexity_from_gcp(g, &gcp_direct(g))
}

pub fn complexity_from_gcp(g: &Graph, gcp: &IntPoly) -> Result<BigInt> {
    let eps = g.edge_count();
    if eps == 0 {
        return Ok(BigInt::from((g.vertex_count() == 1) as u8));
    }
    let d = mu_derivative_at_zero_one(gcp);
    let (q, r) = d.div_rem(&BigInt::from(2 * eps));
    if !r.is_zero() {
        return Err(Error::IdentityViolation(format!(
            "∂F/∂μ(0,1) = {d} is not divisible by 2ε = {}",
            2 * eps
        )));
    }
    Ok(q)
}

/// The `(ν−1)`-minor of the Laplacian `D − A` obtained by deleting the last
/// row and column.
pub fn complexity_kirchhoff(g: &Graph) -> BigInt {
    let n = g.vertex_count();
    if n <= 1 {
        return BigInt::one();
    }
    let deg = g.degrees();
    let m = n - 1;
    let entries = (0..m * m)
        .map(|k| {
            let (i, j) = (k / m, k % m);
            if i == j {
                BigInt::from(deg[i])
            } else if g.has_edge(i, j) {
                BigInt::from(-1)
            } else {
                BigInt::zero()
            }
        })
        .collect();
    bareiss(entries, m)
}

/// Result of checking `f'_G(1) = 2(ε − ν) κ(G)` for
/// `f_G(u) = det[I − uA + u²(D − I)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NorthshieldCheck {
    /// `f'_G(1)`
    pub value: BigInt,
    /// `2(ε − ν) κ(G)` with `κ` from the Laplacian cofactor.
    pub expected: BigInt,
    pub matches: bool,
}

/// `f_G(u) = det[I − uA + u²(D − I)]` as a polynomial in `u` alone.
pub fn northshield_polynomial(g: &Graph) -> IntPoly {
    let deg = g.degrees();
    let u = IntPoly::x(Vars::UT);
    let u2 = u.pow(2);
    let m = PolyMatrix::from_fn(g.vertex_count(), Vars::UT, |i, j| {
        if i == j {
            &IntPoly::one(Vars::UT) + &u2.scale(&BigInt::from(deg[i] as i64 - 1))
        } else if g.has_edge(i, j) {
            -u.clone()
        } else {
            IntPoly::zero(Vars::UT)
        }
    });
    det_poly_matrix(&m).expect("integer matrices interpolate to integer polynomials")
}

pub fn northshield_check(g: &Graph) -> Result<NorthshieldCheck> {
    if !g.is_connected() {
        return Err(Error::InvalidGraph(
            "the derivative identity needs a connected graph".into(),
        ));
    }
    let f = northshield_polynomial(g);
    let value = f
        .partial_x()
        .evaluate(&BigRational::one(), &BigRational::zero())
        .to_integer();
    let expected = BigInt::from(2 * (g.edge_count() as i64 - g.vertex_count() as i64))
        * complexity_kirchhoff(g);
    Ok(NorthshieldCheck {
        matches: value == expected,
        value,
        expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn c4_derivative_is_32() {
        assert_eq!(mu_derivative_at_zero_one(&gcp_direct(&Graph::cycle(4))), int(32));
    }

    #[test]
    fn small_complexities() {
        assert_eq!(complexity_gcp(&Graph::cycle(4)).unwrap(), int(4));
        assert_eq!(complexity_gcp(&Graph::complete(4)).unwrap(), int(16));
        let two_k2 = Graph::complete(2).disjoint_union(&Graph::complete(2));
        assert_eq!(complexity_gcp(&two_k2).unwrap(), int(0));
        assert_eq!(complexity_kirchhoff(&two_k2), int(0));
        assert_eq!(complexity_kirchhoff(&Graph::complete(2)), int(1));
        assert_eq!(complexity_kirchhoff(&Graph::star(3)), int(1));
        assert_eq!(complexity_kirchhoff(&Graph::cycle(4)), int(4));
    }

    #[test]
    fn edgeless_graphs() {
        assert_eq!(complexity_gcp(&Graph::empty(1)).unwrap(), int(1));
        assert_eq!(complexity_gcp(&Graph::empty(3)).unwrap(), int(0));
        assert_eq!(complexity_kirchhoff(&Graph::empty(3)), int(0));
    }

    #[test]
    fn non_divisible_derivative_is_an_error() {
        // a polynomial that is not F of this graph
        let bogus = IntPoly::mu();
        assert!(matches!(
            complexity_from_gcp(&Graph::cycle(4), &bogus),
            Err(Error::IdentityViolation(_))
        ));
    }

    #[test]
    fn northshield_examples() {
        let tree = northshield_check(&Graph::path(5)).unwrap();
        assert_eq!(tree.value, int(-2));
        assert!(tree.matches);
        let c4 = northshield_check(&Graph::cycle(4)).unwrap();
        assert_eq!(c4.value, int(0));
        assert!(c4.matches);
        let k4 = northshield_check(&Graph::complete(4)).unwrap();
        assert_eq!(k4.value, int(64));
        assert!(k4.matches);
        assert!(northshield_check(&Graph::empty(2)).is_err());
    }
}
