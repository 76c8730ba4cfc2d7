//! Factored generalized characteristic polynomials of bundles with abelian
//! voltages and Cayley fibers.
//!
//! For `G ×^φ Cay(A, S)` the characters of `A` simultaneously diagonalize the
//! translation matrices, so the `|A|·ν_G` pencil splits into `|A|` pencils of
//! size `ν_G`: one per character `χ`, with arc weights `χ(φ(e))` and the
//! `λ`-substitution `λ → λ + |S|μ − χ(S)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::characters::{all_characters, weighted_arc_matrix, Character};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::graph::{CayleyFiber, Graph, VoltageAssignment};
use crate::group::AbelianGroup;
use crate::pencil::{det_pencil, Affine, PencilMatrix};
use crate::poly::{BivarPoly, IntPoly, Vars};

/// The substitution `λ → λ + mu·μ + constant`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaShift {
    pub mu: Cyclotomic,
    pub constant: Cyclotomic,
}

impl LambdaShift {
    pub fn none() -> Self {
        LambdaShift {
            mu: Cyclotomic::zero(),
            constant: Cyclotomic::zero(),
        }
    }

    pub fn constant(c: Cyclotomic) -> Self {
        LambdaShift {
            mu: Cyclotomic::zero(),
            constant: c,
        }
    }

    /// `λ → λ + |S|μ − χ(S)`.
    pub fn for_character(chi: &Character, connecting: &[crate::group::Element]) -> Result<Self> {
        Ok(LambdaShift {
            mu: Cyclotomic::from_integer(connecting.len() as i64),
            constant: -chi.sum(connecting)?,
        })
    }
}

/// A generalized characteristic polynomial as an ordered product of factors,
/// one per character of the voltage group (principal first).
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredGcp {
    pub characters: Vec<Character>,
    pub factors: Vec<BivarPoly<Cyclotomic>>,
    pub product: IntPoly,
}

/// Dense `Z[zeta_N][x, y]` element: `cells[i][j]` holds power-basis
/// coordinates, unreduced (length up to `2*phi - 1`) while accumulating.
struct DenseZeta {
    dx: usize,
    dy: usize,
    cells: Vec<Vec<BigInt>>,
}

impl DenseZeta {
    fn from_factor(f: &BivarPoly<Cyclotomic>, conductor: u32, phi: usize) -> Option<Self> {
        let dx = f.degree_x().unwrap_or(0) as usize;
        let dy = f.degree_y().unwrap_or(0) as usize;
        let mut cells = vec![Vec::new(); (dx + 1) * (dy + 1)];
        for ((i, j), c) in f.terms() {
            let c = c.lift(conductor);
            let mut coords = Vec::with_capacity(phi);
            for r in c.coeffs() {
                if !r.is_integer() {
                    return None;
                }
                coords.push(r.to_integer());
            }
            cells[i as usize * (dy + 1) + j as usize] = coords;
        }
        Some(DenseZeta { dx, dy, cells })
    }

    fn mul(&self, other: &Self, modulus: &[i64]) -> Self {
        let (dx, dy) = (self.dx + other.dx, self.dy + other.dy);
        let phi = modulus.len() - 1;
        let mut cells = vec![vec![BigInt::zero(); 2 * phi - 1]; (dx + 1) * (dy + 1)];
        for (a_idx, a) in self.cells.iter().enumerate().filter(|(_, a)| !a.is_empty()) {
            let (ai, aj) = (a_idx / (self.dy + 1), a_idx % (self.dy + 1));
            for (b_idx, b) in other.cells.iter().enumerate().filter(|(_, b)| !b.is_empty()) {
                let (bi, bj) = (b_idx / (other.dy + 1), b_idx % (other.dy + 1));
                let out = &mut cells[(ai + bi) * (dy + 1) + aj + bj];
                for (k, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                    for (l, y) in b.iter().enumerate() {
                        if !y.is_zero() {
                            out[k + l] += x * y;
                        }
                    }
                }
            }
        }
        for cell in &mut cells {
            for k in (phi..cell.len()).rev() {
                let c = std::mem::take(&mut cell[k]);
                if c.is_zero() {
                    continue;
                }
                for (j, &m) in modulus[..phi].iter().enumerate() {
                    if m != 0 {
                        cell[k - phi + j] -= &c * m;
                    }
                }
            }
            cell.truncate(phi);
            if cell.iter().all(Zero::is_zero) {
                cell.clear();
            }
        }
        DenseZeta { dx, dy, cells }
    }
}

/// Product of factors whose coefficients are cyclotomic integers, computed on
/// integer coordinates. `None` if some coefficient has a denominator or the
/// product is not rational.
fn integral_product(factors: &[BivarPoly<Cyclotomic>]) -> Option<IntPoly> {
    use num_integer::Integer;
    let conductor = factors
        .iter()
        .flat_map(|f| f.terms().map(|(_, c)| c.conductor()))
        .fold(1u32, |a, b| a.lcm(&b));
    let modulus = crate::cyclotomic::cyclotomic_polynomial(conductor);
    let phi = modulus.len() - 1;
    let mut acc = DenseZeta {
        dx: 0,
        dy: 0,
        cells: vec![{
            let mut one = vec![BigInt::zero(); phi];
            one[0] = BigInt::one();
            one
        }],
    };
    for f in factors {
        acc = acc.mul(&DenseZeta::from_factor(f, conductor, phi)?, &modulus);
    }
    let mut terms = Vec::new();
    for (idx, cell) in acc.cells.into_iter().enumerate() {
        if cell.is_empty() {
            continue;
        }
        if cell[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let (i, j) = (idx / (acc.dy + 1), idx % (acc.dy + 1));
        terms.push(((i as u32, j as u32), cell.into_iter().next().unwrap()));
    }
    Some(IntPoly::from_terms(Vars::LambdaMu, terms))
}

impl FactoredGcp {
    fn assemble(characters: Vec<Character>, factors: Vec<BivarPoly<Cyclotomic>>) -> Result<Self> {
        let product = integral_product(&factors).or_else(|| {
            factors
                .iter()
                .fold(BivarPoly::one(Vars::LambdaMu), |acc, f| &acc * f)
                .to_integer()
        });
        let product = product.ok_or_else(|| {
            Error::IdentityViolation("product of character factors is not an integer polynomial".into())
        })?;
        Ok(FactoredGcp {
            characters,
            factors,
            product,
        })
    }

    /// Factors that happen to have integer coefficients (always the principal one).
    pub fn integer_factor(&self, k: usize) -> Option<IntPoly> {
        self.factors.get(k)?.to_integer()
    }
}

/// `F_{G⃗_ω}(λ + shift, μ)` for the weighted digraph with arc weights
/// `χ(φ(e))` and vertex weights `deg_G(v)`, i.e. the determinant of
/// `(λ + shift)I − (W_χ − μD(G))`.
pub fn gcp_weighted(
    base: &Graph,
    phi: &VoltageAssignment<AbelianGroup>,
    chi: &Character,
    shift: &LambdaShift,
) -> Result<BivarPoly<Cyclotomic>> {
    let w = weighted_arc_matrix(base, phi, chi)?;
    let deg = base.degrees();
    let pencil = PencilMatrix::from_fn(base.vertex_count(), |i, j| {
        if i == j {
            Affine {
                constant: shift.constant.clone() - w[[i, i]].clone(),
                lambda: Cyclotomic::one(),
                mu: shift.mu.clone() + Cyclotomic::from_integer(deg[i] as i64),
            }
        } else {
            Affine::constant(-w[[i, j]].clone())
        }
    });
    det_pencil(&pencil)
}

/// `F` of `G ×^φ Cay(A, S)` as `Π_χ F_{G⃗_{ω_χ}}(λ + |S|μ − χ(S), μ)`.
pub fn gcp_bundle_factored(
    base: &Graph,
    fiber: &CayleyFiber,
    phi: &VoltageAssignment<AbelianGroup>,
) -> Result<FactoredGcp> {
    if phi.group() != fiber.group() {
        return Err(Error::InvalidFiber(format!(
            "fiber group {} differs from voltage group {}",
            fiber.group(),
            phi.group()
        )));
    }
    let characters = all_characters(fiber.group());
    let factors = characters
        .par_iter()
        .map(|chi| {
            let shift = LambdaShift::for_character(chi, fiber.connecting_set())?;
            gcp_weighted(base, phi, chi, &shift)
        })
        .collect::<Result<Vec<_>>>()?;
    FactoredGcp::assemble(characters, factors)
}

/// `F` of the covering `G ×^φ K̄_n` for abelian voltages.
pub fn gcp_covering(base: &Graph, phi: &VoltageAssignment<AbelianGroup>) -> Result<FactoredGcp> {
    gcp_bundle_factored(base, &CayleyFiber::edgeless(phi.group().clone()), phi)
}

/// `F` of `G ×^φ K_n` with `K_n = Cay(A, A \ {id})`, `n = |A| >= 2`.
pub fn gcp_times_kn(base: &Graph, phi: &VoltageAssignment<AbelianGroup>) -> Result<FactoredGcp> {
    if phi.group().order() < 2 {
        return Err(Error::InvalidFiber("K_n fiber needs n >= 2".into()));
    }
    gcp_bundle_factored(base, &CayleyFiber::complete(phi.group().clone()), phi)
}

/// `F_{G × F}` for a Cayley fiber, one factor `F_G(λ + |S|μ − χ(S), μ)` per character.
pub fn gcp_cartesian(base: &Graph, fiber: &CayleyFiber) -> Result<FactoredGcp> {
    gcp_bundle_factored(base, fiber, &VoltageAssignment::trivial(base, fiber.group().clone()))
}

/// Fiber eigenvalues `χ(S)` in character order, as integers (they are real
/// algebraic integers; only rational ones convert).
pub fn fiber_eigenvalues(fiber: &CayleyFiber) -> Result<Vec<Cyclotomic>> {
    all_characters(fiber.group())
        .iter()
        .map(|chi| chi.sum(fiber.connecting_set()))
        .collect()
}

/// `p(λ + aμ + b, μ)` for integer polynomials.
pub fn substitute_lambda(p: &IntPoly, a: i64, b: i64) -> IntPoly {
    p.shift_lambda(BigInt::from(a), BigInt::from(b))
}
