//! Permutation groups given by generators, backed by a stabilizer chain.

mod chain;
mod hom;
mod quotient;
mod table;

use std::sync::OnceLock;

pub use hom::GroupHom;
pub use quotient::{coset_action, Quotient};
pub use table::ElementTable;

use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use chain::StabChain;

/// Default cap on group orders for routines that enumerate every element.
pub const DEFAULT_MAX_ENUM_ORDER: u128 = 10_000;

/// Environment variable overriding [`DEFAULT_MAX_ENUM_ORDER`].
pub const MAX_ORDER_ENV: &str = "KERNELSPLIT_MAX_ORDER";

/// The enumeration cap in force, read once from the environment.
pub fn max_enum_order() -> u128 {
    static CAP: OnceLock<u128> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_ENUM_ORDER)
    })
}

pub(crate) fn check_enum_bound(order: u128) -> Result<()> {
    let bound = max_enum_order();
    if order > bound {
        Err(GroupError::OrderBoundExceeded { order, bound })
    } else {
        Ok(())
    }
}

#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        Self::build(gens, None)
    }

    /// Builds with a certified order so the chain construction can stop early.
    /// The order must be the true order of the generated group.
    pub fn with_known_order(gens: Vec<Permutation>, order: u128) -> Result<Self> {
        let g = Self::build(gens, Some(order))?;
        if g.order() != order {
            return Err(GroupError::Invariant(format!(
                "claimed order {order}, chain order {}",
                g.order()
            )));
        }
        Ok(g)
    }

    fn build(gens: Vec<Permutation>, known: Option<u128>) -> Result<Self> {
        let first = gens.first().ok_or(GroupError::EmptyGenerators)?;
        let degree = first.degree();
        for g in &gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let chain = StabChain::build(degree, &gens, known);
        Ok(PermGroup {
            degree,
            generators: gens,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::new(vec![Permutation::identity(degree)]).expect("identity generator")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.base()
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        self.chain.strong_generators()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.chain.orbit_lengths()
    }

    /// Membership by sifting through the chain.
    pub fn contains(&self, g: &Permutation) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.chain.contains(g))
    }

    pub(crate) fn sift_residue(&self, g: Permutation) -> Permutation {
        self.chain.strip(g).0
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True if `self` is normalised by every generator of `ambient`.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> Result<bool> {
        if !self.is_subgroup_of(ambient)? {
            return Ok(false);
        }
        for g in ambient.generators() {
            for h in &self.generators {
                if !self.contains(&h.conjugate_by(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_abelian(&self) -> bool {
        let gs = &self.generators;
        gs.iter()
            .all(|a| gs.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<PermGroup> {
        if gens.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        PermGroup::new(gens)
    }

    /// Enumerates the elements (bounded by the enumeration cap).
    pub fn element_table(&self) -> Result<ElementTable> {
        ElementTable::new(self)
    }

    /// Smallest normal subgroup containing `elems`.
    pub fn normal_closure(&self, elems: &[Permutation]) -> Result<PermGroup> {
        for e in elems {
            if !self.contains(e)? {
                return Err(GroupError::NotMember);
            }
        }
        let mut gens: Vec<Permutation> =
            elems.iter().filter(|e| !e.is_identity()).cloned().collect();
        if gens.is_empty() {
            return Ok(PermGroup::trivial(self.degree));
        }
        let mut group = PermGroup::new(gens.clone())?;
        let mut i = 0;
        while i < gens.len() {
            let h = gens[i].clone();
            i += 1;
            for g in &self.generators {
                let c = h.conjugate_by(g);
                if !group.chain.contains(&c) {
                    gens.push(c);
                    group = PermGroup::new(gens.clone())?;
                }
            }
        }
        Ok(group)
    }

    /// Normal closure of the commutators of generator pairs.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.inverse().compose(&b.inverse()).compose(a).compose(b);
                if !c.is_identity() && !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// All elements commuting with every generator (bounded by the enumeration cap).
    pub fn center(&self) -> Result<PermGroup> {
        let table = self.element_table()?;
        let members = table.center_members();
        Ok(table.subgroup_from_members(&members))
    }

    /// Conjugacy classes as `(representative, size)`, in order of first
    /// appearance in the element enumeration.
    pub fn conjugacy_classes(&self) -> Result<Vec<(Permutation, usize)>> {
        let table = self.element_table()?;
        let classes = table.classes();
        Ok(classes
            .reps
            .iter()
            .zip(&classes.sizes)
            .map(|(&r, &s)| (table.element(r).clone(), s))
            .collect())
    }
}
