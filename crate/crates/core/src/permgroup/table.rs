//! Full element enumeration of a small permutation group.
//!
//! Elements are numbered in breadth-first order over the Cayley graph of the
//! generators and their inverses, so index 0 is the identity and every
//! element carries a word in the generators. Products cost one step per
//! letter of the right factor; [`ElementTable::ensure_full_table`] trades
//! `|G|^2` memory for constant-time products.

use std::sync::OnceLock;

use indexmap::IndexSet;

use super::{check_enum_bound, PermGroup};
use crate::error::Result;
use crate::perm::Permutation;

/// Largest order for which a full multiplication table may be built.
pub const FULL_TABLE_MAX: usize = 5040;

#[derive(Clone, Debug)]
pub struct Classes {
    pub class_of: Vec<u32>,
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
}

pub struct ElementTable {
    elements: IndexSet<Permutation>,
    /// Primary generators first, then inverses of the non-involutions.
    letters: Vec<Permutation>,
    letter_index: Vec<u32>,
    primary: usize,
    rmul: Vec<u32>,
    word_start: Vec<u32>,
    word_data: Vec<u8>,
    inverse: Vec<u32>,
    orders: Vec<u32>,
    full: OnceLock<Vec<u32>>,
    classes: OnceLock<Classes>,
}

impl std::fmt::Debug for ElementTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ElementTable")
            .field("len", &self.len())
            .field("generators", &self.primary)
            .finish()
    }
}

impl ElementTable {
    pub fn new(group: &PermGroup) -> Result<Self> {
        check_enum_bound(group.order())?;
        Self::from_generators(group.degree(), group.generators())
    }

    /// Enumerates the group generated by `gens`, failing once the cap is passed.
    pub fn from_generators(degree: usize, gens: &[Permutation]) -> Result<Self> {
        let mut letters: Vec<Permutation> = gens.to_vec();
        if letters.is_empty() {
            letters.push(Permutation::identity(degree));
        }
        let primary = letters.len();
        for g in gens {
            let inv = g.inverse();
            if !letters.contains(&inv) {
                letters.push(inv);
            }
        }
        assert!(letters.len() < 256, "too many generators for word encoding");
        let k = letters.len();

        let mut elements = IndexSet::new();
        elements.insert(Permutation::identity(degree));
        let mut rmul: Vec<u32> = Vec::new();
        let mut word_start = vec![0u32];
        let mut word_data: Vec<u8> = Vec::new();
        let mut words_end = vec![0u32];
        let mut head = 0usize;
        while head < elements.len() {
            let x = elements.get_index(head).expect("in range").clone();
            for (j, g) in letters.iter().enumerate() {
                let y = x.compose(g);
                let (idx, fresh) = elements.insert_full(y);
                if fresh {
                    check_enum_bound(elements.len() as u128)?;
                    let (s, e) = (word_start[head] as usize, words_end[head] as usize);
                    let start = word_data.len() as u32;
                    word_data.extend_from_within(s..e);
                    word_data.push(j as u8);
                    word_start.push(start);
                    words_end.push(word_data.len() as u32);
                }
                rmul.push(idx as u32);
            }
            head += 1;
        }
        word_start.push(word_data.len() as u32);
        // word_start[i]..word_start[i+1] is the word of element i.
        debug_assert_eq!(words_end.len() + 1, word_start.len());
        debug_assert_eq!(rmul.len(), elements.len() * k);

        let n = elements.len();
        let mut inverse = vec![0u32; n];
        let mut orders = vec![0u32; n];
        for (i, e) in elements.iter().enumerate() {
            inverse[i] = elements.get_index_of(&e.inverse()).expect("closed") as u32;
            orders[i] = e.order() as u32;
        }
        let letter_index = letters
            .iter()
            .map(|g| elements.get_index_of(g).expect("generator present") as u32)
            .collect();
        Ok(ElementTable {
            elements,
            letters,
            letter_index,
            primary,
            rmul,
            word_start,
            word_data,
            inverse,
            orders,
            full: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn element(&self, i: u32) -> &Permutation {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> {
        self.elements.iter()
    }

    pub fn index_of(&self, g: &Permutation) -> Option<u32> {
        self.elements.get_index_of(g).map(|i| i as u32)
    }

    /// Indices of the group's own generators.
    pub fn generator_indices(&self) -> &[u32] {
        &self.letter_index[..self.primary]
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.letters[..self.primary]
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inverse[x as usize]
    }

    #[inline]
    pub fn order_of(&self, x: u32) -> u32 {
        self.orders[x as usize]
    }

    fn word(&self, x: u32) -> &[u8] {
        let s = self.word_start[x as usize] as usize;
        let e = self.word_start[x as usize + 1] as usize;
        &self.word_data[s..e]
    }

    #[inline]
    fn step(&self, x: u32, letter: usize) -> u32 {
        self.rmul[x as usize * self.letters.len() + letter]
    }

    /// Builds the constant-time multiplication table if the order allows it.
    pub fn ensure_full_table(&self) -> bool {
        let n = self.len();
        if n > FULL_TABLE_MAX {
            return false;
        }
        self.full.get_or_init(|| {
            let prefix: Vec<(u32, usize)> = (0..n as u32)
                .map(|y| {
                    let w = self.word(y);
                    match w.last() {
                        Some(&l) => (self.word_prefix_index(y), l as usize),
                        None => (0, 0),
                    }
                })
                .collect();
            let mut t = vec![0u32; n * n];
            for x in 0..n {
                let row = &mut t[x * n..(x + 1) * n];
                row[0] = x as u32;
                for y in 1..n {
                    // BFS order: the prefix of y has a smaller index.
                    let (prev, last) = prefix[y];
                    row[y] = self.step(row[prev as usize], last);
                }
            }
            t
        });
        true
    }

    fn word_prefix_index(&self, y: u32) -> u32 {
        let w = self.word(y);
        let mut x = 0u32;
        for &l in &w[..w.len() - 1] {
            x = self.step(x, l as usize);
        }
        x
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        if let Some(t) = self.full.get() {
            return t[x as usize * self.len() + y as usize];
        }
        let mut acc = x;
        for &l in self.word(y) {
            acc = self.step(acc, l as usize);
        }
        acc
    }

    /// `y^-1 x y`.
    pub fn conj(&self, x: u32, y: u32) -> u32 {
        self.mul(self.mul(self.inv(y), x), y)
    }

    /// Conjugate of `x` by the `j`-th primary generator.
    pub fn conj_by_gen(&self, x: u32, j: usize) -> u32 {
        let g = self.letter_index[j];
        self.mul(self.inv(g), self.step(x, j))
    }

    pub fn pow(&self, x: u32, e: u32) -> u32 {
        let mut acc = 0u32;
        for _ in 0..e {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn classes(&self) -> &Classes {
        self.classes.get_or_init(|| {
            let n = self.len();
            let mut class_of = vec![u32::MAX; n];
            let mut reps = Vec::new();
            let mut sizes = Vec::new();
            for start in 0..n {
                if class_of[start] != u32::MAX {
                    continue;
                }
                let id = reps.len() as u32;
                reps.push(start as u32);
                class_of[start] = id;
                let mut queue = vec![start as u32];
                let mut head = 0;
                while head < queue.len() {
                    let x = queue[head];
                    head += 1;
                    for j in 0..self.primary {
                        let c = self.conj_by_gen(x, j);
                        if class_of[c as usize] == u32::MAX {
                            class_of[c as usize] = id;
                            queue.push(c);
                        }
                    }
                }
                sizes.push(queue.len());
            }
            Classes {
                class_of,
                reps,
                sizes,
            }
        })
    }

    pub fn class_size_of(&self, x: u32) -> usize {
        let c = self.classes();
        c.sizes[c.class_of[x as usize] as usize]
    }

    /// Sorted multiset of class sizes.
    pub fn class_size_multiset(&self) -> Vec<usize> {
        let mut v = self.classes().sizes.clone();
        v.sort_unstable();
        v
    }

    pub fn center_members(&self) -> Vec<u32> {
        (0..self.len() as u32)
            .filter(|&x| (0..self.primary).all(|j| self.conj_by_gen(x, j) == x))
            .collect()
    }

    /// Sorted members of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut mask = vec![false; self.len()];
        self.closure_into(gens, &mut mask)
    }

    fn closure_into(&self, gens: &[u32], mask: &mut [bool]) -> Vec<u32> {
        mask.iter_mut().for_each(|m| *m = false);
        mask[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y as usize] {
                    mask[y as usize] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// Sorted members of the smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[u32]) -> Vec<u32> {
        let mut gens: Vec<u32> = seed.iter().copied().filter(|&x| x != 0).collect();
        let mut mask = vec![false; self.len()];
        let mut members = self.closure_into(&gens, &mut mask);
        let mut i = 0;
        while i < gens.len() {
            let h = gens[i];
            i += 1;
            for j in 0..self.primary {
                let c = self.conj_by_gen(h, j);
                if !mask[c as usize] {
                    gens.push(c);
                    members = self.closure_into(&gens, &mut mask);
                }
            }
        }
        members
    }

    /// A short generating list for a subgroup given by its sorted members.
    pub fn generators_of(&self, members: &[u32]) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut mask = vec![false; self.len()];
        mask[0] = true;
        let mut count = 1;
        for &m in members {
            if count == members.len() {
                break;
            }
            if !mask[m as usize] {
                gens.push(m);
                count = self.closure_into(&gens, &mut mask).len();
            }
        }
        gens
    }

    /// Realises a subgroup, given by sorted members, as a permutation group.
    pub fn subgroup_from_members(&self, members: &[u32]) -> PermGroup {
        let gens = self.generators_of(members);
        if gens.is_empty() {
            return PermGroup::trivial(self.degree());
        }
        let perms = gens.iter().map(|&g| self.element(g).clone()).collect();
        PermGroup::with_known_order(perms, members.len() as u128).expect("members form a subgroup")
    }

    /// Sorted member indices of a subgroup of this group.
    pub fn members_of(&self, sub: &PermGroup) -> Option<Vec<u32>> {
        let gens: Option<Vec<u32>> = sub.generators().iter().map(|g| self.index_of(g)).collect();
        Some(self.closure(&gens?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> PermGroup {
        PermGroup::new(vec![
            Permutation::parse_cycles("(1 2 3 4 5)", 5).unwrap(),
            Permutation::parse_cycles("(1 2 3)", 5).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn products_match_permutations() {
        let t = a5().element_table().unwrap();
        assert_eq!(t.len(), 60);
        for x in 0..60u32 {
            for y in (0..60u32).step_by(7) {
                let p = t.element(x).compose(t.element(y));
                assert_eq!(t.index_of(&p), Some(t.mul(x, y)));
            }
        }
        assert!(t.ensure_full_table());
        for x in 0..60u32 {
            for y in 0..60u32 {
                let p = t.element(x).compose(t.element(y));
                assert_eq!(t.index_of(&p), Some(t.mul(x, y)));
            }
        }
    }

    #[test]
    fn class_sizes_of_a5() {
        let t = a5().element_table().unwrap();
        assert_eq!(t.class_size_multiset(), vec![1, 12, 12, 15, 20]);
        assert_eq!(t.center_members(), vec![0]);
    }
}
