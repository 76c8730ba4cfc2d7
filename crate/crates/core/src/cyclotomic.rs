//! Exact arithmetic in cyclotomic fields `Q(zeta_N)`.
//!
//! An element of conductor `N` is stored as its coefficient vector in the
//! power basis `1, zeta, ..., zeta^(phi(N)-1)`, reduced modulo the `N`-th
//! cyclotomic polynomial. Values of different conductors are combined by
//! lifting both into the conductor `lcm(N, M)`; conductor 1 is the field of
//! rationals, which is what [`Zero`] and [`One`] produce.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic polynomial of order 0");
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(p) = cache.read().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = divide_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    let p = Arc::new(num);
    cache.write().unwrap().insert(n, p.clone());
    p
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

#[derive(Clone, Debug)]
pub struct Cyclotomic {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    /// Builds an element from an arbitrary-length coefficient list in powers of
    /// `zeta_N`, reducing it into canonical form.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let mut c = Cyclotomic {
            conductor,
            coeffs,
        };
        c.reduce();
        c
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic {
            conductor: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    /// `zeta_N^k`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Self::from_coeffs(conductor, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Power-basis coefficients, length `phi(conductor)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let n = self.conductor as usize;
        // Fold exponents modulo N first: zeta^N = 1.
        if self.coeffs.len() > n {
            let mut folded = vec![BigRational::zero(); n];
            for (k, c) in self.coeffs.drain(..).enumerate() {
                folded[k % n] += c;
            }
            self.coeffs = folded;
        }
        let modulus = cyclotomic_polynomial(self.conductor);
        let d = modulus.len() - 1;
        for k in (d..self.coeffs.len()).rev() {
            let c = std::mem::take(&mut self.coeffs[k]);
            if c.is_zero() {
                continue;
            }
            for (j, &m) in modulus[..d].iter().enumerate() {
                if m != 0 {
                    self.coeffs[k - d + j] -= &c * BigRational::from_integer(m.into());
                }
            }
        }
        self.coeffs.resize(d, BigRational::zero());
    }

    /// Re-expresses `self` with conductor `target`, which must be a multiple of
    /// the current conductor.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.conductor {
            return self.clone();
        }
        assert!(
            target % self.conductor == 0,
            "cannot lift conductor {} to {}",
            self.conductor,
            target
        );
        let step = (target / self.conductor) as usize;
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Self::from_coeffs(target, coeffs)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.lift(l), other.lift(l))
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    /// Galois automorphism `zeta -> zeta^k` (k coprime to the conductor).
    pub fn galois(&self, k: u32) -> Self {
        let n = self.conductor as usize;
        let mut coeffs = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[(j * k as usize) % n] += c;
        }
        Self::from_coeffs(self.conductor, coeffs)
    }

    /// Complex conjugation, the automorphism `zeta -> zeta^(N-1)`.
    pub fn conjugate(&self) -> Self {
        if self.conductor <= 2 {
            return self.clone();
        }
        self.galois(self.conductor - 1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conjugate()
    }

    /// Multiplicative inverse via the field norm: the product of all
    /// non-trivial Galois conjugates divided by the (rational) norm.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Cyclotomic {
                conductor: self.conductor,
                coeffs: {
                    let mut v = vec![BigRational::zero(); self.coeffs.len()];
                    v[0] = r.recip();
                    v
                },
            });
        }
        let n = self.conductor;
        let mut cofactor = Cyclotomic::one().lift(n);
        for k in 2..n {
            if k.gcd(&n) == 1 {
                cofactor = cofactor * self.galois(k);
            }
        }
        let norm = (self.clone() * cofactor.clone())
            .to_rational()
            .expect("field norm must be rational");
        Some(cofactor.scale(&norm.recip()))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn div_int(&self, d: &BigInt) -> Self {
        self.scale(&BigRational::new(BigInt::one(), d.clone()))
    }

    /// Text in the power basis, e.g. `-1 - zeta_3` or `2`.
    pub fn render(&self, unicode: bool) -> String {
        let zeta = if unicode { "ζ" } else { "zeta" };
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => format!("{zeta}_{}", self.conductor),
                _ => format!("{zeta}_{}^{k}", self.conductor),
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => mag.to_string(),
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
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Cyclotomic::from_integer(0)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Cyclotomic::from_integer(1)
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: Self) -> Self {
        let (mut a, b) = self.common(&rhs);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(mut self) -> Self {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: Self) -> Self {
        let (a, b) = self.common(&rhs);
        if a.is_rational() || b.is_rational() {
            let (r, other) = if a.is_rational() { (a, b) } else { (b, a) };
            return other.scale(&r.coeffs[0]);
        }
        let mut prod = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Cyclotomic::from_coeffs(a.conductor, prod)
    }
}
