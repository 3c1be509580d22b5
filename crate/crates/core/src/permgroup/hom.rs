use super::{check_enum_bound, PermGroup};
use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// A homomorphism given by the images of the source generators.
///
/// Validity is decided exactly through the graph subgroup
/// `D = <(g_i, h_i)>` acting on the disjoint union of both point sets: the
/// assignment extends to a homomorphism iff `|D| = |source|`. Evaluation
/// sifts `(x, 1)` through the chain of `D`; every base point of `D` lies in
/// the source block, so the residue is `(1, phi(x)^-1)`.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: PermGroup,
    target: PermGroup,
    images: Vec<Permutation>,
    graph: PermGroup,
}

impl GroupHom {
    pub fn new(source: PermGroup, target: PermGroup, images: Vec<Permutation>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(GroupError::NotHomomorphism(format!(
                "{} images for {} generators",
                images.len(),
                source.generators().len()
            )));
        }
        for h in &images {
            if !target.contains(h)? {
                return Err(GroupError::NotHomomorphism(
                    "generator image outside the target".into(),
                ));
            }
        }
        let graph_gens: Vec<Permutation> = source
            .generators()
            .iter()
            .zip(&images)
            .map(|(g, h)| g.direct_sum(h))
            .collect();
        let graph = PermGroup::new(graph_gens)?;
        if graph.order() != source.order() {
            return Err(GroupError::NotHomomorphism(format!(
                "graph subgroup has order {} but the source has order {}",
                graph.order(),
                source.order()
            )));
        }
        Ok(GroupHom {
            source,
            target,
            images,
            graph,
        })
    }

    pub fn source(&self) -> &PermGroup {
        &self.source
    }

    pub fn target(&self) -> &PermGroup {
        &self.target
    }

    pub fn generator_images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn apply(&self, x: &Permutation) -> Result<Permutation> {
        if !self.source.contains(x)? {
            return Err(GroupError::NotMember);
        }
        let n = self.source.degree();
        let total = n + self.target.degree();
        let lifted = x.direct_sum(&Permutation::identity(self.target.degree()));
        let residue = self.graph.sift_residue(lifted);
        debug_assert!(residue.restrict(0..n).is_identity());
        Ok(residue.restrict(n..total).inverse())
    }

    pub fn image(&self) -> Result<PermGroup> {
        self.target.subgroup(self.images.clone())
    }

    /// Kernel, by enumerating the source (bounded by the enumeration cap).
    pub fn kernel(&self) -> Result<PermGroup> {
        check_enum_bound(self.source.order())?;
        let table = self.source.element_table()?;
        let mut members = Vec::new();
        for (i, x) in table.elements().enumerate() {
            if self.apply(x)?.is_identity() {
                members.push(i as u32);
            }
        }
        Ok(table.subgroup_from_members(&members))
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.image()?.order() == self.source.order())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(self.image()?.order() == self.target.order())
    }
}
