//! Characters of finite abelian groups with exact cyclotomic values.

use ndarray::Array2;
use num_traits::Zero;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::graph::{Graph, VoltageAssignment};
use crate::group::{AbelianGroup, Element};

/// The character `χ_a(g) = ζ_N^{Σ_j a_j g_j N / n_j}` of
/// `Z_{n_1} × ... × Z_{n_k}`, where `N` is the group exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    group: AbelianGroup,
    index: Element,
}

impl Character {
    pub fn new(group: AbelianGroup, index: Element) -> Result<Self> {
        group.check(&index)?;
        Ok(Character { group, index })
    }

    pub fn principal(group: AbelianGroup) -> Self {
        let index = group.identity();
        Character { group, index }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn index(&self) -> &Element {
        &self.index
    }

    pub fn is_principal(&self) -> bool {
        self.index == self.group.identity()
    }

    /// `χ̄`, the character with negated index.
    pub fn conjugate(&self) -> Self {
        Character {
            group: self.group.clone(),
            index: self.group.neg(&self.index),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.group.exponent() as u32
    }

    /// Exponent `e` with `χ(g) = ζ_N^e`.
    fn exponent_at(&self, g: &Element) -> u64 {
        let n = self.group.exponent();
        self.index
            .components()
            .iter()
            .zip(g.components())
            .zip(self.group.orders())
            .map(|((&a, &c), &order)| (a * c % order) * (n / order))
            .sum::<u64>()
            % n
    }

    pub fn value(&self, g: &Element) -> Result<Cyclotomic> {
        self.group.check(g)?;
        Ok(Cyclotomic::root_of_unity(
            self.conductor(),
            self.exponent_at(g) as i64,
        ))
    }

    /// `χ(S) = Σ_{s ∈ S} χ(s)`.
    pub fn sum(&self, s: &[Element]) -> Result<Cyclotomic> {
        s.iter().try_fold(
            Cyclotomic::zero().lift(self.conductor()),
            |acc, g| Ok(acc + self.value(g)?),
        )
    }
}

/// All `|A|` characters, ordered lexicographically by index (principal first).
pub fn all_characters(group: &AbelianGroup) -> Vec<Character> {
    group
        .elements()
        .map(|index| Character {
            group: group.clone(),
            index,
        })
        .collect()
}

/// Rows are characters, columns group elements, both in enumeration order.
pub fn character_table(group: &AbelianGroup) -> Vec<Vec<Cyclotomic>> {
    all_characters(group)
        .iter()
        .map(|chi| {
            group
                .elements()
                .map(|g| chi.value(&g).expect("element of own group"))
                .collect()
        })
        .collect()
}

/// `Σ_γ χ(γ) A(G⃗_(φ,γ))`: entry `(u, v)` is `χ(φ(u→v))` on arcs, zero elsewhere.
pub fn weighted_arc_matrix(
    base: &Graph,
    phi: &VoltageAssignment<AbelianGroup>,
    chi: &Character,
) -> Result<Array2<Cyclotomic>> {
    if phi.group() != chi.group() {
        return Err(Error::InvalidVoltage(format!(
            "voltages lie in {} but the character is of {}",
            phi.group(),
            chi.group()
        )));
    }
    if phi.base() != base {
        return Err(Error::InvalidVoltage(
            "voltage assignment was built for a different base graph".into(),
        ));
    }
    let n = base.vertex_count();
    let mut m = Array2::from_elem((n, n), Cyclotomic::zero());
    for ((u, v), g) in phi.arcs() {
        m[[u, v]] = chi.value(&g)?;
    }
    Ok(m)
}
