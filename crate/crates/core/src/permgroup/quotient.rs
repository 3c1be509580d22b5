use super::{ElementTable, GroupHom, PermGroup};
use crate::error::{GroupError, Result};
use crate::perm::Permutation;

/// `G/N` realised by the right-multiplication action on the cosets `Nx`.
#[derive(Debug)]
pub struct Quotient {
    pub group: PermGroup,
    pub projection: GroupHom,
    /// Coset index of every element of `G`, indexed like `table`.
    pub coset_of: Vec<u32>,
    /// One representative (a `table` index) per coset.
    pub coset_reps: Vec<u32>,
    pub table: ElementTable,
}

impl Quotient {
    /// The quotient permutation induced by the element `x` of `G` (a table index).
    pub fn image_of(&self, x: u32) -> Permutation {
        let images = self
            .coset_reps
            .iter()
            .map(|&r| self.coset_of[self.table.mul(r, x) as usize])
            .collect();
        Permutation::from_images_unchecked(images)
    }
}

/// Realises `G/N` for `N` normal in `G`; the projection's kernel is exactly `N`.
pub fn coset_action(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    if !n.is_normal_in(g)? {
        return Err(GroupError::NotNormal);
    }
    let table = g.element_table()?;
    let n_members = table.members_of(n).ok_or(GroupError::NotMember)?;
    let mut coset_of = vec![u32::MAX; table.len()];
    let mut coset_reps = Vec::new();
    for x in 0..table.len() as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let id = coset_reps.len() as u32;
        coset_reps.push(x);
        for &m in &n_members {
            coset_of[table.mul(m, x) as usize] = id;
        }
    }
    let index = coset_reps.len();
    let gens: Vec<Permutation> = table
        .generator_indices()
        .iter()
        .map(|&gi| {
            let images = coset_reps
                .iter()
                .map(|&r| coset_of[table.mul(r, gi) as usize])
                .collect();
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let order = (table.len() / n_members.len()) as u128;
    debug_assert_eq!(index as u128, order);
    let group = PermGroup::with_known_order(gens.clone(), order)?;
    let projection = GroupHom::new(g.clone(), group.clone(), gens)?;
    Ok(Quotient {
        group,
        projection,
        coset_of,
        coset_reps,
        table,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn s5_mod_a5() {
        let s5 = PermGroup::new(vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)]).unwrap();
        let a5 = s5.derived_subgroup().unwrap();
        let q = coset_action(&s5, &a5).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.projection.kernel().unwrap().order(), 60);
        let triv = PermGroup::trivial(5);
        let q1 = coset_action(&s5, &triv).unwrap();
        assert_eq!(q1.group.order(), 120);
        assert_eq!(q1.group.degree(), 120);
    }

    #[test]
    fn rejects_non_normal() {
        let s5 = PermGroup::new(vec![p("(1 2)", 5), p("(1 2 3 4 5)", 5)]).unwrap();
        let c2 = PermGroup::new(vec![p("(1 2)", 5)]).unwrap();
        assert_eq!(coset_action(&s5, &c2).unwrap_err(), GroupError::NotNormal);
    }
}
