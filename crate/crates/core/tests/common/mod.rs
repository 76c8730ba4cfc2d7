//! Independent oracles and the shared test corpus.
//!
//! Nothing here goes through evaluation-interpolation: determinants are
//! expanded by minors, spanning trees are enumerated, and bundle adjacency is
//! assembled from Kronecker products.

#![allow(dead_code)]

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg};

use gcpoly::graph::{adjacency_matrix, arc_partition};
use gcpoly::{AbelianGroup, CayleyFiber, Graph, IntPoly, VoltageAssignment, VoltageGroup};
use ndarray::linalg::kron;
use ndarray::Array2;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Univariate integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(pub Vec<BigInt>);

impl UPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn constant(c: i64) -> Self {
        UPoly::new(vec![BigInt::from(c)])
    }

    /// `a + b x`
    pub fn linear(a: i64, b: i64) -> Self {
        UPoly::new(vec![BigInt::from(a), BigInt::from(b)])
    }

    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn derivative_at_one(&self) -> BigInt {
        self.0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .sum()
    }
}

impl Add for UPoly {
    type Output = UPoly;
    fn add(self, o: UPoly) -> UPoly {
        let n = self.0.len().max(o.0.len());
        let z = BigInt::zero();
        UPoly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&z) + o.0.get(k).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Mul for UPoly {
    type Output = UPoly;
    fn mul(self, o: UPoly) -> UPoly {
        if self.0.is_empty() || o.0.is_empty() {
            return UPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly(self.0.into_iter().map(|c| -c).collect())
    }
}

/// Determinant by expansion along successive rows, memoized on the set of
/// unused columns. Exponential in `n`; intended for `n <= 10`.
pub fn laplace_det<T>(m: &[Vec<T>], zero: T, one: T) -> T
where
    T: Clone + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    let n = m.len();
    assert!(n <= 20);
    let mut memo: HashMap<u32, T> = HashMap::new();
    fn go<T>(m: &[Vec<T>], mask: u32, memo: &mut HashMap<u32, T>, zero: &T, one: &T) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T> + Neg<Output = T>,
    {
        if mask == 0 {
            return one.clone();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let row = m.len() - mask.count_ones() as usize;
        let mut acc = zero.clone();
        let mut sign_pos = true;
        for c in 0..m.len() {
            if mask & (1 << c) == 0 {
                continue;
            }
            let minor = go(m, mask & !(1 << c), memo, zero, one);
            let term = m[row][c].clone() * minor;
            acc = if sign_pos { acc + term } else { acc + -term };
            sign_pos = !sign_pos;
        }
        memo.insert(mask, acc.clone());
        acc
    }
    go(m, (1u32 << n) - 1, &mut memo, &zero, &one)
}

/// `det(xI − M)` by cofactor expansion.
pub fn char_poly(m: &Array2<i64>) -> UPoly {
    let n = m.nrows();
    let rows: Vec<Vec<UPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| UPoly::linear(-m[[i, j]], (i == j) as i64))
                .collect()
        })
        .collect();
    laplace_det(&rows, UPoly::zero(), UPoly::constant(1))
}

pub fn laplacian(g: &Graph) -> Array2<i64> {
    let mut l = -adjacency_matrix(g);
    for (i, d) in g.degrees().into_iter().enumerate() {
        l[[i, i]] = d as i64;
    }
    l
}

/// `F(λ, 0)` as a polynomial in `λ`.
pub fn at_mu_zero(f: &IntPoly) -> UPoly {
    let deg = f.degree_x().unwrap_or(0);
    UPoly::new((0..=deg).map(|i| f.coeff(i, 0)).collect())
}

/// `(−1)^ν F(−λ, 1)` as a polynomial in `λ`.
pub fn signed_at_mu_one(f: &IntPoly, nu: usize) -> UPoly {
    let deg = f.degree_x().unwrap_or(0) as usize;
    let mut c = vec![BigInt::zero(); deg + 1];
    for ((i, _), v) in f.terms() {
        let s = if (nu + i as usize) % 2 == 0 { 1 } else { -1 };
        c[i as usize] += v * BigInt::from(s);
    }
    UPoly::new(c)
}

/// `det(I − A t + (D − I) t²)` as a polynomial in `t`.
pub fn ihara_det(g: &Graph) -> UPoly {
    let n = g.vertex_count();
    let deg = g.degrees();
    let rows: Vec<Vec<UPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        UPoly::from_ints(&[1, 0, deg[i] as i64 - 1])
                    } else if g.has_edge(i, j) {
                        UPoly::from_ints(&[0, -1])
                    } else {
                        UPoly::zero()
                    }
                })
                .collect()
        })
        .collect();
    laplace_det(&rows, UPoly::zero(), UPoly::constant(1))
}

/// `det[I − uA + u²(D − I)]` in `u`; the same determinant as [`ihara_det`].
pub fn northshield_det(g: &Graph) -> UPoly {
    ihara_det(g)
}

/// The column `u = 0` of a `(u, t)` polynomial, as a polynomial in `t`.
pub fn at_u_zero(p: &IntPoly) -> UPoly {
    let deg = p.degree_y().unwrap_or(0);
    UPoly::new((0..=deg).map(|j| p.coeff(0, j)).collect())
}

/// `det(λI − A + μD)` by expansion along rows, over bivariate polynomials.
pub fn gcp_laplace(g: &Graph) -> IntPoly {
    let n = g.vertex_count();
    let deg = g.degrees();
    let l = IntPoly::lambda();
    let m = IntPoly::mu();
    let rows: Vec<Vec<IntPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        &l + &m.scale(&BigInt::from(deg[i]))
                    } else if g.has_edge(i, j) {
                        IntPoly::int(gcpoly::Vars::LambdaMu, -1)
                    } else {
                        IntPoly::zero(gcpoly::Vars::LambdaMu)
                    }
                })
                .collect()
        })
        .collect();
    laplace_det(
        &rows,
        IntPoly::zero(gcpoly::Vars::LambdaMu),
        IntPoly::one(gcpoly::Vars::LambdaMu),
    )
}

/// Spanning trees by enumerating all `(ν−1)`-edge subsets.
pub fn spanning_trees_brute(g: &Graph) -> u64 {
    let n = g.vertex_count();
    if n <= 1 {
        return 1;
    }
    let edges = g.edges();
    let k = n - 1;
    if edges.len() < k {
        return 0;
    }
    let mut count = 0;
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        let mut ok = true;
        for &e in &pick {
            let (a, b) = edges[e];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                ok = false;
                break;
            }
            parent[ra] = rb;
        }
        count += ok as u64;
        let m = edges.len();
        let Some(i) = (0..k).rev().find(|&i| pick[i] != i + m - k) else {
            return count;
        };
        pick[i] += 1;
        for j in i + 1..k {
            pick[j] = pick[j - 1] + 1;
        }
    }
}

/// `Σ_γ P(γ) ⊗ A(G⃗_(φ,γ)) + A(F) ⊗ I` with `P(γ)_{kl} = 1` iff `γ` sends
/// fiber vertex `k` to `l`.
pub fn kronecker_bundle<G: VoltageGroup>(
    base: &Graph,
    fiber: &Graph,
    phi: &VoltageAssignment<G>,
    elements: &[G::Elem],
) -> Array2<i64> {
    let nf = fiber.vertex_count();
    let nb = base.vertex_count();
    let mut total = kron(&adjacency_matrix(fiber), &Array2::<i64>::eye(nb));
    for gamma in elements {
        let part = arc_partition(base, phi, gamma).expect("element of the voltage group");
        let mut p = Array2::<i64>::zeros((nf, nf));
        for k in 0..nf {
            p[[k, phi.group().act(gamma, k)]] = 1;
        }
        total = total + kron(&p, &part);
    }
    total
}

pub fn random_voltages(
    base: &Graph,
    group: &AbelianGroup,
    rng: &mut ChaCha8Rng,
) -> VoltageAssignment<AbelianGroup> {
    let values: Vec<_> = base
        .edges()
        .iter()
        .map(|&arc| {
            let comps: Vec<i64> = group
                .orders()
                .iter()
                .map(|&o| rng.gen_range(0..o) as i64)
                .collect();
            (arc, group.element(&comps).unwrap())
        })
        .collect();
    VoltageAssignment::new(base, group.clone(), values).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every arc carries the first generator `(1, 0, ..., 0)`.
pub fn generator_voltages(base: &Graph, group: &AbelianGroup) -> VoltageAssignment<AbelianGroup> {
    let mut comps = vec![0i64; group.orders().len()];
    comps[0] = 1;
    let g = group.element(&comps).unwrap();
    VoltageAssignment::from_fn(base, group.clone(), |_, _| g.clone()).unwrap()
}

pub fn zn(n: u64) -> AbelianGroup {
    AbelianGroup::cyclic(n).unwrap()
}

pub fn petersen() -> Graph {
    let mut e = Vec::new();
    for i in 0..5 {
        e.push((i, (i + 1) % 5));
        e.push((i, i + 5));
        e.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::new(10, e).unwrap()
}

pub fn cube() -> Graph {
    let e = (0..8usize)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|(a, b)| a < b);
    Graph::new(8, e).unwrap()
}

pub fn wheel(rim: usize) -> Graph {
    let mut e: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    e.extend((1..=rim).map(|i| (i, i % rim + 1)));
    Graph::new(rim + 1, e).unwrap()
}

pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    Graph::new(n, e).unwrap()
}

/// Named graphs used across the integration tests.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 1..=6 {
        out.push((format!("K{n}"), Graph::complete(n)));
    }
    for n in 3..=8 {
        out.push((format!("C{n}"), Graph::cycle(n)));
    }
    for n in 2..=7 {
        out.push((format!("P{n}"), Graph::path(n)));
    }
    for m in 2..=5 {
        out.push((format!("K1,{m}"), Graph::star(m)));
    }
    for (s, t) in [(2, 2), (2, 3), (3, 3), (2, 4)] {
        out.push((format!("K{s},{t}"), Graph::complete_bipartite(s, t)));
    }
    out.push(("empty3".into(), Graph::empty(3)));
    out.push(("2K2".into(), Graph::complete(2).disjoint_union(&Graph::complete(2))));
    out.push(("K3+K2".into(), Graph::complete(3).disjoint_union(&Graph::complete(2))));
    out.push(("petersen".into(), petersen()));
    out.push(("cube".into(), cube()));
    out.push(("wheel5".into(), wheel(5)));
    for seed in 0..6 {
        out.push((format!("gnp7-{seed}"), random_graph(7, 0.45, seed)));
    }
    out
}

/// Cayley fibers of the bundle corpus.
pub fn fibers() -> Vec<(&'static str, CayleyFiber)> {
    vec![
        ("empty2", CayleyFiber::edgeless(zn(2))),
        ("empty3", CayleyFiber::edgeless(zn(3))),
        ("K3", CayleyFiber::complete(zn(3))),
        ("K4", CayleyFiber::complete(zn(4))),
        ("K4/Z2xZ2", CayleyFiber::complete(AbelianGroup::new(vec![2, 2]).unwrap())),
        ("C4", CayleyFiber::cycle(4).unwrap()),
        ("C5", CayleyFiber::cycle(5).unwrap()),
    ]
}

pub fn bases() -> Vec<(&'static str, Graph)> {
    vec![
        ("K2", Graph::complete(2)),
        ("P3", Graph::path(3)),
        ("C3", Graph::cycle(3)),
        ("C4", Graph::cycle(4)),
        ("K1,3", Graph::star(3)),
    ]
}

/// One bundle-corpus instance.
pub struct Instance {
    pub name: String,
    pub base: Graph,
    pub fiber: CayleyFiber,
    pub phi: VoltageAssignment<AbelianGroup>,
}

/// Bases x fibers x {trivial, generator, two seeded random} voltages.
pub fn bundle_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    let mut r = rng(0x5eed);
    for (bname, base) in bases() {
        for (fname, fiber) in fibers() {
            let group = fiber.group().clone();
            let mut voltages = vec![
                ("trivial".to_string(), VoltageAssignment::trivial(&base, group.clone())),
                ("generator".to_string(), generator_voltages(&base, &group)),
            ];
            for k in 0..2 {
                voltages.push((format!("random{k}"), random_voltages(&base, &group, &mut r)));
            }
            for (vname, phi) in voltages {
                out.push(Instance {
                    name: format!("{bname} x {fname} [{vname}]"),
                    base: base.clone(),
                    fiber: fiber.clone(),
                    phi,
                });
            }
        }
    }
    out
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}
