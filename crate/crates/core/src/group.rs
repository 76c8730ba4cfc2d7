//! Finite groups acting on fiber vertex sets.
//!
//! Two kinds of voltage groups are supported: finite abelian groups given as
//! a product of cyclic factors (acting on themselves by translation, which is
//! how they act on Cayley fibers) and the full symmetric group on the vertices
//! of an explicit fiber (elements given as permutations in one-line notation).

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// An element of an [`AbelianGroup`], one residue per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<u64>);

impl Element {
    pub fn components(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `Z_{n1} x Z_{n2} x ...`; elements are enumerated lexicographically, so the
/// identity has index 0 and the first factor is the most significant digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors given".into()));
        }
        if orders.iter().any(|&n| n == 0) {
            return Err(Error::InvalidGroup("cyclic orders must be at least 1".into()));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> usize {
        self.orders.iter().product::<u64>() as usize
    }

    /// Least common multiple of the cyclic orders; all character values live
    /// in the cyclotomic field of this conductor.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |acc, &n| acc.lcm(&n))
    }

    pub fn identity(&self) -> Element {
        Element(vec![0; self.orders.len()])
    }

    /// Builds an element, reducing each component modulo its cyclic order.
    pub fn element(&self, components: &[i64]) -> Result<Element> {
        if components.len() != self.orders.len() {
            return Err(Error::NotInGroup {
                element: format!("{components:?}"),
                group: self.to_string(),
            });
        }
        Ok(Element(
            components
                .iter()
                .zip(&self.orders)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &Element) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(&c, &n)| c < n)
    }

    pub(crate) fn check(&self, g: &Element) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotInGroup {
                element: g.to_string(),
                group: self.to_string(),
            })
        }
    }

    pub fn add(&self, g: &Element, h: &Element) -> Element {
        Element(
            g.0.iter()
                .zip(&h.0)
                .zip(&self.orders)
                .map(|((&a, &b), &n)| (a + b) % n)
                .collect(),
        )
    }

    pub fn neg(&self, g: &Element) -> Element {
        Element(
            g.0.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| (n - a) % n)
                .collect(),
        )
    }

    pub fn index_of(&self, g: &Element) -> usize {
        g.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> Element {
        let mut comps = vec![0u64; self.orders.len()];
        for (slot, &n) in comps.iter_mut().zip(&self.orders).rev() {
            *slot = (index % n as usize) as u64;
            index /= n as usize;
        }
        Element(comps)
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// All elements except the identity, in enumeration order.
    pub fn non_identity(&self) -> Vec<Element> {
        self.elements().skip(1).collect()
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        f.write_str(&parts.join("x"))
    }
}

/// A permutation in one-line notation: `images[i]` is the image of point `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &p in &images {
            if p >= n || seen[p] {
                return Err(Error::InvalidVoltage(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[p] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (i, &p) in self.images.iter().enumerate() {
            inv[p] = i;
        }
        Permutation { images: inv }
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Self {
        Permutation {
            images: self.images.iter().map(|&p| other.images[p]).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// The full symmetric group on `degree` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricGroup {
    degree: usize,
}

impl SymmetricGroup {
    pub fn new(degree: usize) -> Self {
        SymmetricGroup { degree }
    }
}

/// A group acting on the points `0..degree()` of a fiber.
pub trait VoltageGroup: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + Eq + Ord + fmt::Debug + fmt::Display + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn inverse(&self, g: &Self::Elem) -> Self::Elem;
    fn contains(&self, g: &Self::Elem) -> bool;
    /// Number of points acted upon.
    fn degree(&self) -> usize;
    /// Image of `point` under `g`.
    fn act(&self, g: &Self::Elem, point: usize) -> usize;
    fn describe(&self) -> String;
}

impl VoltageGroup for AbelianGroup {
    type Elem = Element;

    fn identity(&self) -> Element {
        AbelianGroup::identity(self)
    }

    fn inverse(&self, g: &Element) -> Element {
        self.neg(g)
    }

    fn contains(&self, g: &Element) -> bool {
        AbelianGroup::contains(self, g)
    }

    fn degree(&self) -> usize {
        self.order()
    }

    /// Translation: the point with index `i` is sent to the index of `element_at(i) + g`.
    fn act(&self, g: &Element, point: usize) -> usize {
        self.index_of(&self.add(&self.element_at(point), g))
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

impl VoltageGroup for SymmetricGroup {
    type Elem = Permutation;

    fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn inverse(&self, g: &Permutation) -> Permutation {
        g.inverse()
    }

    fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree
    }

    fn degree(&self) -> usize {
        self.degree
    }

    fn act(&self, g: &Permutation, point: usize) -> usize {
        g.apply(point)
    }

    fn describe(&self) -> String {
        format!("S{}", self.degree)
    }
}
