//! Sparse bivariate polynomials over exact coefficient rings.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

/// The pair of indeterminates a polynomial is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Vars {
    /// `(λ, μ)`, the variables of the generalized characteristic polynomial.
    LambdaMu,
    /// `(u, t)`, the variables of the Bartholdi zeta function.
    UT,
}

impl Vars {
    pub fn names(self, unicode: bool) -> (&'static str, &'static str) {
        match (self, unicode) {
            (Vars::LambdaMu, false) => ("l", "m"),
            (Vars::LambdaMu, true) => ("λ", "μ"),
            (Vars::UT, _) => ("u", "t"),
        }
    }
}

impl fmt::Display for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y) = self.names(true);
        write!(f, "({x},{y})")
    }
}

/// Exact commutative coefficient ring.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
{
    fn from_bigint(n: BigInt) -> Self;

    /// Sign and magnitude text for rendering a term; a magnitude of `"1"` is
    /// elided in front of a monomial.
    fn render_parts(&self, unicode: bool) -> (bool, String);
}

impl Coefficient for BigInt {
    fn from_bigint(n: BigInt) -> Self {
        n
    }

    fn render_parts(&self, _unicode: bool) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

impl Coefficient for BigRational {
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn render_parts(&self, _unicode: bool) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

impl Coefficient for Cyclotomic {
    fn from_bigint(n: BigInt) -> Self {
        Cyclotomic::from_integer(n)
    }

    fn render_parts(&self, unicode: bool) -> (bool, String) {
        match self.to_rational() {
            Some(r) => r.render_parts(unicode),
            None => (false, format!("({})", self.render(unicode))),
        }
    }
}

/// One term of a polynomial in structured form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermRecord {
    pub i: u32,
    pub j: u32,
    pub coefficient: String,
}

/// `Σ c_ij x^i y^j` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq)]
pub struct BivarPoly<R> {
    vars: Vars,
    terms: BTreeMap<(u32, u32), R>,
}

pub type IntPoly = BivarPoly<BigInt>;

impl<R: Coefficient> BivarPoly<R> {
    pub fn zero(vars: Vars) -> Self {
        BivarPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: Vars) -> Self {
        Self::constant(vars, R::one())
    }

    pub fn constant(vars: Vars, c: R) -> Self {
        Self::monomial(vars, 0, 0, c)
    }

    pub fn monomial(vars: Vars, i: u32, j: u32, c: R) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(i, j, c);
        p
    }

    /// The first variable (`λ` or `u`).
    pub fn x(vars: Vars) -> Self {
        Self::monomial(vars, 1, 0, R::one())
    }

    /// The second variable (`μ` or `t`).
    pub fn y(vars: Vars) -> Self {
        Self::monomial(vars, 0, 1, R::one())
    }

    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = ((u32, u32), R)>) -> Self {
        let mut p = Self::zero(vars);
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn vars(&self) -> Vars {
        self.vars
    }

    pub fn with_vars(mut self, vars: Vars) -> Self {
        self.vars = vars;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> R {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(R::zero)
    }

    pub(crate) fn add_term(&mut self, i: u32, j: u32, c: R) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((i, j)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = std::mem::replace(e.get_mut(), R::zero()) + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Terms in canonical order: graded lexicographic, descending.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &R)> {
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        keys.into_iter().map(move |k| (*k, &self.terms[k]))
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    fn same_vars(&self, other: &Self) -> Result<()> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.vars, other.vars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (&(i, j), c) in &other.terms {
            out.add_term(i, j, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other.clone())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_vars(other)?;
        let mut out = Self::zero(self.vars);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::one(self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(
            self.vars,
            self.terms.iter().map(|(&k, v)| (k, v.clone() * c.clone())),
        )
    }

    /// Formal partial derivative with respect to the first variable.
    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.vars,
            self.terms
                .iter()
                .filter(|(k, _)| k.0 > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c.clone() * R::from_bigint(i.into()))),
        )
    }

    /// Formal partial derivative with respect to the second variable.
    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.vars,
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c.clone() * R::from_bigint(j.into()))),
        )
    }

    /// `∂/∂μ` for polynomials in `(λ, μ)`.
    pub fn partial_mu(&self) -> Self {
        self.partial_y()
    }

    pub fn partial_lambda(&self) -> Self {
        self.partial_x()
    }

    /// Evaluates at a point of the coefficient ring.
    pub fn eval(&self, x: &R, y: &R) -> R {
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let xp = powers(x, dx);
        let yp = powers(y, dy);
        self.terms.iter().fold(R::zero(), |acc, (&(i, j), c)| {
            acc + c.clone() * xp[i as usize].clone() * yp[j as usize].clone()
        })
    }

    /// Substitutes polynomials for both variables; the result takes the
    /// variables of `x`.
    pub fn compose(&self, x: &Self, y: &Self) -> Result<Self> {
        x.same_vars(y)?;
        let dx = self.degree_x().unwrap_or(0) as usize;
        let dy = self.degree_y().unwrap_or(0) as usize;
        let xp = poly_powers(x, dx);
        let yp = poly_powers(y, dy);
        let mut out = Self::zero(x.vars);
        for (&(i, j), c) in &self.terms {
            let t = (&xp[i as usize] * &yp[j as usize]).scale(c);
            out = &out + &t;
        }
        Ok(out)
    }

    /// `p(λ + aμ + b, μ)`.
    pub fn shift_lambda(&self, a: R, b: R) -> Self {
        let v = self.vars;
        let x = &(&Self::x(v) + &Self::y(v).scale(&a)) + &Self::constant(v, b);
        self.compose(&x, &Self::y(v))
            .expect("shift uses the polynomial's own variables")
    }

    pub fn map_coeffs<S: Coefficient>(&self, f: impl Fn(&R) -> S) -> BivarPoly<S> {
        BivarPoly::from_terms(self.vars, self.terms.iter().map(|(&k, c)| (k, f(c))))
    }

    pub fn try_map_coeffs<S: Coefficient>(
        &self,
        f: impl Fn(&R) -> Option<S>,
    ) -> Option<BivarPoly<S>> {
        let mut out = BivarPoly::zero(self.vars);
        for (&(i, j), c) in &self.terms {
            out.add_term(i, j, f(c)?);
        }
        Some(out)
    }

    /// Canonical text: graded-lex descending, `*` for products, `^` for powers.
    pub fn render(&self, unicode: bool) -> String {
        let (xn, yn) = self.vars.names(unicode);
        let mut out = String::new();
        for ((i, j), c) in self.terms() {
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push(xn.to_string()),
                _ => mono.push(format!("{xn}^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push(yn.to_string()),
                _ => mono.push(format!("{yn}^{j}")),
            }
            let mono = mono.join("*");
            let (neg, mag) = c.render_parts(unicode);
            let body = match (mono.is_empty(), mag == "1") {
                (true, _) => mag,
                (false, true) => mono,
                (false, false) => format!("{mag}*{mono}"),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Structured form, in canonical term order.
    pub fn to_records(&self, unicode: bool) -> Vec<TermRecord> {
        self.terms()
            .map(|((i, j), c)| {
                let (neg, mag) = c.render_parts(unicode);
                TermRecord {
                    i,
                    j,
                    coefficient: if neg { format!("-{mag}") } else { mag },
                }
            })
            .collect()
    }
}

fn powers<R: Coefficient>(x: &R, n: usize) -> Vec<R> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(R::one());
    for k in 0..n {
        out.push(out[k].clone() * x.clone());
    }
    out
}

fn poly_powers<R: Coefficient>(x: &BivarPoly<R>, n: usize) -> Vec<BivarPoly<R>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BivarPoly::one(x.vars));
    for k in 0..n {
        out.push(&out[k] * x);
    }
    out
}

impl<R: Coefficient> fmt::Display for BivarPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

// Operator forms panic on a variable mismatch; the `checked_*` methods report it.
impl<R: Coefficient> Add for &BivarPoly<R> {
    type Output = BivarPoly<R>;
    fn add(self, rhs: Self) -> BivarPoly<R> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<R: Coefficient> Sub for &BivarPoly<R> {
    type Output = BivarPoly<R>;
    fn sub(self, rhs: Self) -> BivarPoly<R> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<R: Coefficient> Mul for &BivarPoly<R> {
    type Output = BivarPoly<R>;
    fn mul(self, rhs: Self) -> BivarPoly<R> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<R: Coefficient> Add for BivarPoly<R> {
    type Output = BivarPoly<R>;
    fn add(self, rhs: Self) -> BivarPoly<R> {
        &self + &rhs
    }
}

impl<R: Coefficient> Sub for BivarPoly<R> {
    type Output = BivarPoly<R>;
    fn sub(self, rhs: Self) -> BivarPoly<R> {
        &self - &rhs
    }
}

impl<R: Coefficient> Mul for BivarPoly<R> {
    type Output = BivarPoly<R>;
    fn mul(self, rhs: Self) -> BivarPoly<R> {
        &self * &rhs
    }
}

impl<R: Coefficient> Neg for BivarPoly<R> {
    type Output = BivarPoly<R>;
    fn neg(mut self) -> BivarPoly<R> {
        for c in self.terms.values_mut() {
            *c = -std::mem::replace(c, R::zero());
        }
        self
    }
}

impl BivarPoly<BigInt> {
    pub fn lambda() -> Self {
        Self::x(Vars::LambdaMu)
    }

    pub fn mu() -> Self {
        Self::y(Vars::LambdaMu)
    }

    pub fn int(vars: Vars, c: i64) -> Self {
        Self::constant(vars, BigInt::from(c))
    }

    /// Exact rational evaluation.
    pub fn evaluate(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.map_coeffs(|c| BigRational::from_integer(c.clone()))
            .eval(x, y)
    }

    pub fn to_cyclotomic(&self) -> BivarPoly<Cyclotomic> {
        self.map_coeffs(|c| Cyclotomic::from_integer(c.clone()))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder (over the integers).
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() || self.vars != divisor.vars {
            return None;
        }
        let (&(li, lj), lc) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars);
        while let Some((&(ri, rj), rc)) = rem.terms.iter().next_back() {
            if ri < li || rj < lj {
                return None;
            }
            let (q, r) = num_integer::Integer::div_rem(rc, lc);
            if !r.is_zero() {
                return None;
            }
            let t = Self::monomial(self.vars, ri - li, rj - lj, q);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl BivarPoly<Cyclotomic> {
    /// Coefficientwise complex conjugation.
    pub fn conjugate(&self) -> Self {
        self.map_coeffs(Cyclotomic::conjugate)
    }

    /// The same polynomial over the integers, if every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.try_map_coeffs(Cyclotomic::to_integer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> IntPoly {
        IntPoly::lambda()
    }
    fn m() -> IntPoly {
        IntPoly::mu()
    }
    fn c(n: i64) -> IntPoly {
        IntPoly::int(Vars::LambdaMu, n)
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&l() + &m()) * &(&l() - &m());
        assert_eq!(p.to_string(), "l^2 - m^2");
    }

    #[test]
    fn square_minus_one_renders_canonically() {
        let p = &(&l() + &m()).pow(2) - &c(1);
        assert_eq!(p.to_string(), "l^2 + 2*l*m + m^2 - 1");
        assert_eq!(p.render(true), "λ^2 + 2*λ*μ + μ^2 - 1");
        assert_eq!(p.total_degree(), Some(2));
        assert_eq!(p.degree_y(), Some(2));
    }

    #[test]
    fn zeroth_power_is_one() {
        assert_eq!((&l() + &m()).pow(0), c(1));
        assert_eq!(IntPoly::zero(Vars::LambdaMu).to_string(), "0");
    }

    #[test]
    fn partial_mu_and_evaluate() {
        // λ² + 3λμ²  ->  6λμ
        let p = &l().pow(2) + &(&l() * &m().pow(2)).scale(&BigInt::from(3));
        assert_eq!(p.partial_mu().to_string(), "6*l*m");
        let k2 = &(&l() + &m()).pow(2) - &c(1);
        let v = k2.evaluate(&BigRational::zero(), &BigRational::one());
        assert!(v.is_zero());
    }

    #[test]
    fn variable_mismatch_is_reported() {
        let ut = IntPoly::x(Vars::UT);
        assert!(matches!(
            l().checked_add(&ut),
            Err(Error::VariableMismatch(Vars::LambdaMu, Vars::UT))
        ));
        assert!(l().checked_mul(&ut).is_err());
    }

    #[test]
    fn shift_matches_composition() {
        let p = &(&l() + &m()).pow(2) - &c(1);
        let shifted = p.shift_lambda(BigInt::from(2), BigInt::from(-1));
        let expect = &(&(&l() + &m().scale(&BigInt::from(3))) - &c(1)).pow(2) - &c(1);
        assert_eq!(shifted, expect);
    }

    #[test]
    fn exact_division() {
        let a = &(&l() - &m()) + &c(2);
        let b = &(&l() + &m()).pow(3) - &c(5);
        let ab = &a * &b;
        assert_eq!(ab.div_exact(&a), Some(b.clone()));
        assert_eq!(ab.div_exact(&b), Some(a));
        assert_eq!(b.div_exact(&(&l() + &c(1))), None);
        // content not divisible over the integers
        assert_eq!(l().div_exact(&l().scale(&BigInt::from(2))), None);
    }

    #[test]
    fn records_carry_decimal_coefficients() {
        let p = &l().scale(&BigInt::from(-12)) + &c(7);
        let recs = p.to_records(false);
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0], TermRecord { i: 1, j: 0, coefficient: "-12".into() });
        assert_eq!(recs[1].coefficient, "7");
    }

    #[test]
    fn cyclotomic_coefficients_render_in_parentheses() {
        let z = Cyclotomic::root_of_unity(3, 1);
        let p = BivarPoly::x(Vars::LambdaMu).scale(&z) + BivarPoly::constant(Vars::LambdaMu, Cyclotomic::from_integer(-2));
        assert_eq!(p.to_string(), "(zeta_3)*l - 2");
        assert!(p.to_integer().is_none());
        assert_eq!(p.conjugate().coeff(1, 0), Cyclotomic::root_of_unity(3, 2));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = IntPoly> {
            proptest::collection::vec(((0u32..4, 0u32..4), -5i64..6), 0..6).prop_map(|ts| {
                IntPoly::from_terms(
                    Vars::LambdaMu,
                    ts.into_iter().map(|(k, c)| (k, BigInt::from(c))),
                )
            })
        }

        proptest! {
            #[test]
            fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
                prop_assert_eq!(&(&a - &a), &IntPoly::zero(Vars::LambdaMu));
            }

            #[test]
            fn evaluation_is_a_homomorphism(a in arb_poly(), b in arb_poly(), x in -4i64..5, y in -4i64..5) {
                let (x, y) = (BigRational::from_integer(x.into()), BigRational::from_integer(y.into()));
                prop_assert_eq!((&a * &b).evaluate(&x, &y), a.evaluate(&x, &y) * b.evaluate(&x, &y));
                prop_assert_eq!((&a + &b).evaluate(&x, &y), a.evaluate(&x, &y) + b.evaluate(&x, &y));
            }

            #[test]
            fn product_division_roundtrip(a in arb_poly(), b in arb_poly()) {
                prop_assume!(!b.is_zero());
                prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
            }
        }
    }
}
