//! Closed-form generalized characteristic polynomials of complete bipartite
//! graphs and of `K_{1,m} × K_n`, and the spanning-tree count of the latter.

use num_bigint::BigInt;
use num_traits::pow;

use crate::poly::{IntPoly, Vars};

fn lin(lambda: i64, mu: i64, c: i64) -> IntPoly {
    let v = Vars::LambdaMu;
    IntPoly::from_terms(
        v,
        [
            ((1, 0), BigInt::from(lambda)),
            ((0, 1), BigInt::from(mu)),
            ((0, 0), BigInt::from(c)),
        ],
    )
}

fn konst(c: i64) -> IntPoly {
    IntPoly::int(Vars::LambdaMu, c)
}

/// `F_{K_{s,t}} = (λ+tμ)^{s−1} (λ+sμ)^{t−1} [(λ+sμ)(λ+tμ) − st]`, `s, t >= 1`.
pub fn gcp_kst(s: u32, t: u32) -> IntPoly {
    assert!(s >= 1 && t >= 1, "K_(s,t) needs s, t >= 1");
    let a = lin(1, t as i64, 0);
    let b = lin(1, s as i64, 0);
    let bracket = &(&b * &a) - &konst(s as i64 * t as i64);
    &(&a.pow(s - 1) * &b.pow(t - 1)) * &bracket
}

/// `F_{K_{1,m} × K_n}` written out as a product of linear and quadratic
/// factors, `m >= 1`, `n >= 2`:
///
/// `[λ+nμ−(n−1)]^{m−1} {[λ+nμ−(n−1)][λ+(m+n−1)μ−(n−1)] − m}
///  × [λ+nμ+1]^{(m−1)(n−1)} {[λ+nμ+1][λ+(m+n−1)μ+1] − m}^{n−1}`
pub fn gcp_star_times_kn(m: u32, n: u32) -> IntPoly {
    assert!(m >= 1 && n >= 2, "K_(1,m) x K_n needs m >= 1, n >= 2");
    let (mi, ni) = (m as i64, n as i64);
    let p = lin(1, ni, -(ni - 1));
    let q = lin(1, mi + ni - 1, -(ni - 1));
    let r = lin(1, ni, 1);
    let s = lin(1, mi + ni - 1, 1);
    let first = &p.pow(m - 1) * &(&(&p * &q) - &konst(mi));
    let second = &r.pow((m - 1) * (n - 1)) * &(&(&r * &s) - &konst(mi)).pow(n - 1);
    &first * &second
}

/// Spanning-tree count of `K_{1,m} × K_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarTimesKnTrees {
    /// `n^{n−2} (m+n+1)^{n−1} (n+1)^{(m−1)(n−1)}`
    pub corrected: BigInt,
    /// The same expression with exponent `n+1` on `(m+n+1)`. It disagrees with
    /// the matrix-tree count (64 vs 4 already at `m = 1, n = 2`) and is kept
    /// only so that the discrepancy stays pinned by a regression test.
    pub printed: BigInt,
}

pub fn tree_count_star_times_kn(m: u32, n: u32) -> StarTimesKnTrees {
    assert!(m >= 1 && n >= 2, "K_(1,m) x K_n needs m >= 1, n >= 2");
    let (mb, nb) = (BigInt::from(m), BigInt::from(n));
    let common = pow(nb.clone(), (n - 2) as usize)
        * pow(&nb + 1u32, ((m - 1) * (n - 1)) as usize);
    let hub = &mb + &nb + 1u32;
    StarTimesKnTrees {
        corrected: &common * pow(hub.clone(), (n - 1) as usize),
        printed: &common * pow(hub, (n + 1) as usize),
    }
}
