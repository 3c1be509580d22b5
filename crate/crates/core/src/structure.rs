//! Normal subgroups, composition series, anti-solvability and characteristic
//! subgroups. Everything is computed on one element table of the ambient
//! group; subgroups are sorted lists of table indices.

use std::cmp::Ordering;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::autsplit::AutData;
use crate::catalog::{alternating, is_prime, make_psl2};
use crate::error::{GroupError, Result};
use crate::permgroup::{ElementTable, PermGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimpleId {
    Cyclic { p: u64 },
    Alt { n: u32 },
    Psl2 { q: u32 },
    Unknown { order: u64, classes: usize },
}

impl std::fmt::Display for SimpleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SimpleId::Cyclic { p } => write!(f, "C{p}"),
            SimpleId::Alt { n } => write!(f, "A{n}"),
            SimpleId::Psl2 { q } => write!(f, "PSL(2,{q})"),
            SimpleId::Unknown { order, classes } => write!(f, "simple({order}, {classes} classes)"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionFactor {
    pub order: u128,
    pub abelian: bool,
    pub id: SimpleId,
}

#[derive(Clone, Debug)]
pub struct CompositionSeries {
    /// `G = G_0 > G_1 > ... > G_k = 1`.
    pub subgroups: Vec<PermGroup>,
    pub factors: Vec<CompositionFactor>,
}

impl CompositionSeries {
    /// Sorted `(order, abelian)` pairs of the factors.
    pub fn factor_multiset(&self) -> Vec<(u128, bool)> {
        let mut v: Vec<(u128, bool)> = self.factors.iter().map(|f| (f.order, f.abelian)).collect();
        v.sort_unstable();
        v
    }
}

/// Which maximal normal subgroup to descend to at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MaximalChoice {
    /// Largest order, ties by the smallest sorted element encoding.
    Largest,
    /// Smallest order among the maximal ones, ties by the largest encoding.
    Smallest,
}

/// A subgroup of the table's group: sorted members and a generating list.
#[derive(Clone, Debug)]
struct Sub {
    members: Vec<u32>,
    gens: Vec<u32>,
}

impl Sub {
    fn contains_all(&self, other: &Sub) -> bool {
        other
            .members
            .iter()
            .all(|x| self.members.binary_search(x).is_ok())
    }
}

fn closure_under_conjugation(table: &ElementTable, seed: &[u32], conjugators: &[u32]) -> Sub {
    let mut gens: Vec<u32> = seed.iter().copied().filter(|&x| x != 0).collect();
    let mut members = table.closure(&gens);
    let mut i = 0;
    while i < gens.len() {
        let h = gens[i];
        i += 1;
        for &c in conjugators {
            let y = table.conj(h, c);
            if members.binary_search(&y).is_err() {
                gens.push(y);
                members = table.closure(&gens);
            }
        }
    }
    let gens = table.generators_of(&members);
    Sub { members, gens }
}

fn conjugacy_class_reps(table: &ElementTable, h: &Sub) -> Vec<u32> {
    let mut seen = vec![false; table.len()];
    let mut reps = Vec::new();
    for &x in &h.members {
        if seen[x as usize] {
            continue;
        }
        reps.push(x);
        seen[x as usize] = true;
        let mut queue = vec![x];
        while let Some(y) = queue.pop() {
            for &c in &h.gens {
                let z = table.conj(y, c);
                if !seen[z as usize] {
                    seen[z as usize] = true;
                    queue.push(z);
                }
            }
        }
    }
    reps
}

/// All normal subgroups of `h`: joins of normal closures of class representatives.
fn normal_subs(table: &ElementTable, h: &Sub) -> Vec<Sub> {
    let mut atoms: Vec<Sub> = Vec::new();
    for r in conjugacy_class_reps(table, h).into_iter().skip(1) {
        let s = closure_under_conjugation(table, &[r], &h.gens);
        if !atoms.iter().any(|a| a.members == s.members) {
            atoms.push(s);
        }
    }
    let mut all: Vec<Sub> = vec![Sub {
        members: vec![0],
        gens: vec![],
    }];
    let mut i = 0;
    while i < all.len() {
        let s = all[i].clone();
        i += 1;
        for a in &atoms {
            if s.contains_all(a) {
                continue;
            }
            let mut gens = s.gens.clone();
            gens.extend_from_slice(&a.gens);
            let members = table.closure(&gens);
            if !all.iter().any(|t| t.members == members) {
                let gens = table.generators_of(&members);
                all.push(Sub { members, gens });
            }
        }
    }
    all.sort_by(|a, b| {
        a.members
            .len()
            .cmp(&b.members.len())
            .then_with(|| a.members.cmp(&b.members))
    });
    all
}

fn encoding_cmp(table: &ElementTable, a: &Sub, b: &Sub) -> Ordering {
    let enc = |s: &Sub| {
        let mut v: Vec<&[u32]> = s
            .members
            .iter()
            .map(|&x| table.element(x).images())
            .collect();
        v.sort_unstable();
        v
    };
    enc(a).cmp(&enc(b))
}

fn whole(table: &ElementTable) -> Sub {
    Sub {
        members: (0..table.len() as u32).collect(),
        gens: table.generator_indices().to_vec(),
    }
}

fn to_group(table: &ElementTable, s: &Sub) -> PermGroup {
    table.subgroup_from_members(&s.members)
}

/// Normal subgroups of `g`, sorted by order.
pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    let table = g.element_table()?;
    Ok(normal_subs(&table, &whole(&table))
        .iter()
        .map(|s| to_group(&table, s))
        .collect())
}

/// Sorted member lists of the normal subgroups of the table's group.
pub fn normal_subgroup_members(table: &ElementTable) -> Vec<Vec<u32>> {
    normal_subs(table, &whole(table))
        .into_iter()
        .map(|s| s.members)
        .collect()
}

struct Fingerprint {
    order: u128,
    classes: Vec<usize>,
    id: SimpleId,
}

fn known_simple() -> &'static [Fingerprint] {
    static TABLE: OnceLock<Vec<Fingerprint>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        let named = [5u32, 6, 7]
            .iter()
            .map(|&n| (alternating(n as usize), SimpleId::Alt { n }))
            .chain(
                [7u32, 8, 11, 13]
                    .iter()
                    .map(|&q| (make_psl2(q), SimpleId::Psl2 { q })),
            );
        for (g, id) in named {
            let g = g.expect("catalog group");
            let t = g.element_table().expect("small");
            out.push(Fingerprint {
                order: g.order(),
                classes: t.class_size_multiset(),
                id,
            });
        }
        out
    })
}

fn identify(order: u128, classes: Vec<usize>) -> SimpleId {
    if is_prime(order as u64) {
        return SimpleId::Cyclic { p: order as u64 };
    }
    known_simple()
        .iter()
        .find(|f| f.order == order && f.classes == classes)
        .map(|f| f.id.clone())
        .unwrap_or(SimpleId::Unknown {
            order: order as u64,
            classes: classes.len(),
        })
}

/// Class-size multiset of `h / m` computed on cosets.
fn quotient_class_sizes(table: &ElementTable, h: &Sub, m: &Sub) -> Vec<usize> {
    let mut coset = vec![u32::MAX; table.len()];
    let mut reps = Vec::new();
    for &x in &h.members {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &y in &m.members {
            coset[table.mul(y, x) as usize] = id;
        }
    }
    let k = reps.len();
    let mut seen = vec![false; k];
    let mut sizes = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut queue = vec![start];
        let mut size = 0;
        while let Some(c) = queue.pop() {
            size += 1;
            for &g in &h.gens {
                let d = coset[table.conj(reps[c], g) as usize] as usize;
                if !seen[d] {
                    seen[d] = true;
                    queue.push(d);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

fn pick_maximal(table: &ElementTable, h: &Sub, choice: MaximalChoice) -> Sub {
    let normals = normal_subs(table, h);
    let proper: Vec<&Sub> = normals
        .iter()
        .filter(|s| s.members.len() < h.members.len())
        .collect();
    let maximal: Vec<&Sub> = proper
        .iter()
        .copied()
        .filter(|s| {
            !proper
                .iter()
                .any(|t| t.members.len() > s.members.len() && t.contains_all(s))
        })
        .collect();
    let best = match choice {
        MaximalChoice::Largest => maximal.into_iter().min_by(|a, b| {
            b.members
                .len()
                .cmp(&a.members.len())
                .then_with(|| encoding_cmp(table, a, b))
        }),
        MaximalChoice::Smallest => maximal.into_iter().min_by(|a, b| {
            a.members
                .len()
                .cmp(&b.members.len())
                .then_with(|| encoding_cmp(table, b, a))
        }),
    };
    best.expect("a nontrivial group has a proper normal subgroup")
        .clone()
}

/// Composition series descending through the largest maximal normal subgroup.
pub fn composition_factors(g: &PermGroup) -> Result<CompositionSeries> {
    composition_series_with(g, MaximalChoice::Largest)
}

pub fn composition_series_with(g: &PermGroup, choice: MaximalChoice) -> Result<CompositionSeries> {
    let table = g.element_table()?;
    let mut current = whole(&table);
    let mut subgroups = vec![g.clone()];
    let mut factors = Vec::new();
    while current.members.len() > 1 {
        let next = pick_maximal(&table, &current, choice);
        let order = (current.members.len() / next.members.len()) as u128;
        let id = identify(order, quotient_class_sizes(&table, &current, &next));
        factors.push(CompositionFactor {
            order,
            abelian: matches!(id, SimpleId::Cyclic { .. }),
            id,
        });
        subgroups.push(to_group(&table, &next));
        current = next;
    }
    Ok(CompositionSeries { subgroups, factors })
}

/// Every composition factor is non-abelian; true for the trivial group.
pub fn is_anti_solvable(g: &PermGroup) -> Result<bool> {
    Ok(composition_factors(g)?.factors.iter().all(|f| !f.abelian))
}

fn check_aut_matches(g: &PermGroup, aut: &AutData) -> Result<()> {
    let base = aut.base_group();
    if g.degree() != base.degree() || g.order() != base.order() || !g.is_subgroup_of(base)? {
        return Err(GroupError::InvalidSpec(
            "automorphism data belongs to a different group".into(),
        ));
    }
    Ok(())
}

/// Normal subgroups (as sorted indices into `aut.table()`) fixed setwise by every automorphism.
pub fn characteristic_members(aut: &AutData) -> Vec<Vec<u32>> {
    let gens = aut.aut_group().generators();
    normal_subgroup_members(aut.table())
        .into_iter()
        .filter(|s| {
            gens.iter().all(|a| {
                let mut img: Vec<u32> = s.iter().map(|&x| a.image(x)).collect();
                img.sort_unstable();
                &img == s
            })
        })
        .collect()
}

pub fn characteristic_subgroups(g: &PermGroup, aut: &AutData) -> Result<Vec<PermGroup>> {
    check_aut_matches(g, aut)?;
    Ok(characteristic_members(aut)
        .iter()
        .map(|s| aut.table().subgroup_from_members(s))
        .collect())
}

/// False for the trivial group.
pub fn is_characteristically_simple(g: &PermGroup, aut: &AutData) -> Result<bool> {
    check_aut_matches(g, aut)?;
    Ok(g.order() > 1 && characteristic_members(aut).len() == 2)
}
