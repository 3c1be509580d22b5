//! Finite-level liens `(F, Gamma, kappa)` with centerless `F`, their pullback
//! extensions, neutrality, tower splitting along characteristic subgroups,
//! and the extension count for `Gamma = C2`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::autsplit::{find_lift, is_aut_split, AutCoord, AutData};
use crate::catalog::{alternating, make_psl2};
use crate::control::SearchControl;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use crate::permgroup::{ElementTable, GroupHom, PermGroup};
use crate::structure::{characteristic_members, composition_factors, SimpleId};

/// Largest `|Gamma|` accepted for a lien.
pub const MAX_GAMMA_ORDER: usize = 24;
/// Largest `|F|` for [`enumerate_extensions_order2_gamma`].
pub const ENUMERATION_MAX_ORDER: u128 = 720;

#[derive(Clone)]
pub struct Lien {
    aut: Arc<AutData>,
    gamma: PermGroup,
    gamma_table: Arc<ElementTable>,
    kappa: Vec<u32>,
}

impl std::fmt::Debug for Lien {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lien")
            .field("f_order", &self.aut.table().len())
            .field("gamma_order", &self.gamma_table.len())
            .field("kappa", &self.kappa)
            .finish()
    }
}

fn gamma_table_of(gamma: &PermGroup) -> Result<ElementTable> {
    if gamma.order() > MAX_GAMMA_ORDER as u128 {
        return Err(GroupError::SearchBoundExceeded(format!(
            "|Gamma| = {} exceeds {MAX_GAMMA_ORDER}",
            gamma.order()
        )));
    }
    gamma.element_table()
}

impl Lien {
    /// `kappa[g]` is the outer class of the `g`-th element of `gamma.element_table()`.
    pub fn new(aut: Arc<AutData>, gamma: PermGroup, kappa: Vec<u32>) -> Result<Self> {
        if !aut.is_centerless() {
            return Err(GroupError::NontrivialCenter(aut.center_order() as u128));
        }
        let table = gamma_table_of(&gamma)?;
        let n = table.len();
        let out = aut.out_order();
        if kappa.len() != n {
            return Err(GroupError::NotHomomorphism(format!(
                "kappa has {} entries for a group of order {n}",
                kappa.len()
            )));
        }
        if let Some(&bad) = kappa.iter().find(|&&c| c as usize >= out) {
            return Err(GroupError::NotHomomorphism(format!("no outer class {bad}")));
        }
        if kappa[0] != 0 {
            return Err(GroupError::NotHomomorphism(
                "identity not sent to the trivial class".into(),
            ));
        }
        for x in 0..n as u32 {
            for y in 0..n as u32 {
                let lhs = kappa[table.mul(x, y) as usize] as usize;
                if lhs != aut.out_mul(kappa[x as usize] as usize, kappa[y as usize] as usize) {
                    return Err(GroupError::NotHomomorphism(format!(
                        "kappa(xy) != kappa(x) kappa(y) for elements {x}, {y}"
                    )));
                }
            }
        }
        Ok(Lien {
            aut,
            gamma,
            gamma_table: Arc::new(table),
            kappa,
        })
    }

    /// Completes classes given for the generators of `gamma` to a full table.
    pub fn from_generator_classes(
        aut: Arc<AutData>,
        gamma: PermGroup,
        classes: &[u32],
    ) -> Result<Self> {
        let table = gamma_table_of(&gamma)?;
        let kappa = complete_kappa(&aut, &table, classes)?;
        Self::new(aut, gamma, kappa)
    }

    pub fn f(&self) -> &PermGroup {
        self.aut.base_group()
    }

    pub fn aut(&self) -> &AutData {
        &self.aut
    }

    pub fn aut_arc(&self) -> &Arc<AutData> {
        &self.aut
    }

    pub fn gamma(&self) -> &PermGroup {
        &self.gamma
    }

    pub fn gamma_table(&self) -> &ElementTable {
        &self.gamma_table
    }

    pub fn kappa(&self) -> &[u32] {
        &self.kappa
    }

    /// Outer class of each generator of `gamma`.
    pub fn generator_classes(&self) -> Vec<u32> {
        self.gamma_table
            .generator_indices()
            .iter()
            .map(|&g| self.kappa[g as usize])
            .collect()
    }

    /// Permutation of the extension's points representing `(a, gamma_elem)`.
    pub fn extension_element(&self, a: &Permutation, gamma_elem: u32) -> Permutation {
        let n = self.aut.table().len() as u32;
        let t = &self.gamma_table;
        let mut images = a.images().to_vec();
        images.extend((0..t.len() as u32).map(|d| n + t.mul(d, gamma_elem)));
        Permutation::from_images_unchecked(images)
    }

    /// Splits an extension permutation into its automorphism and `Gamma` parts.
    pub fn split_element(&self, e: &Permutation) -> Option<(Permutation, u32)> {
        let n = self.aut.table().len();
        if e.degree() != n + self.gamma_table.len() {
            return None;
        }
        let a = Permutation::from_images(e.images()[..n].to_vec()).ok()?;
        let g = e.image(n as u32).checked_sub(n as u32)?;
        (self.extension_element(&a, g) == *e).then_some((a, g))
    }
}

/// Full `kappa` table from generator classes; errors if the assignment
/// does not extend to a homomorphism.
pub fn complete_kappa(aut: &AutData, table: &ElementTable, classes: &[u32]) -> Result<Vec<u32>> {
    let gens = table.generator_indices();
    if classes.len() != gens.len() {
        return Err(GroupError::NotHomomorphism(format!(
            "{} classes for {} generators",
            classes.len(),
            gens.len()
        )));
    }
    if classes.iter().any(|&c| c as usize >= aut.out_order()) {
        return Err(GroupError::NotHomomorphism("unknown outer class".into()));
    }
    let mut kappa = vec![u32::MAX; table.len()];
    kappa[0] = 0;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &c) in gens.iter().zip(classes) {
            let y = table.mul(x, g);
            let v = aut.out_mul(kappa[x as usize] as usize, c as usize) as u32;
            match kappa[y as usize] {
                u32::MAX => {
                    kappa[y as usize] = v;
                    queue.push(y);
                }
                w if w != v => {
                    return Err(GroupError::NotHomomorphism(
                        "generator classes violate a relation of Gamma".into(),
                    ))
                }
                _ => {}
            }
        }
    }
    Ok(kappa)
}

/// Every homomorphism `Gamma -> Out(F)`, as full tables, in lexicographic
/// order of generator classes.
pub fn all_kappas(aut: &AutData, table: &ElementTable) -> Vec<Vec<u32>> {
    let k = table.generator_indices().len();
    let out = aut.out_order() as u32;
    let mut result = Vec::new();
    let mut classes = vec![0u32; k];
    loop {
        if let Ok(kappa) = complete_kappa(aut, table, &classes) {
            result.push(kappa);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return result;
            }
            i -= 1;
            classes[i] += 1;
            if classes[i] < out {
                break;
            }
            classes[i] = 0;
        }
    }
}

pub fn make_lien(f: &PermGroup, gamma: &PermGroup, kappa: Vec<u32>) -> Result<Lien> {
    let aut = AutData::compute(f)?;
    Lien::new(Arc::new(aut), gamma.clone(), kappa)
}

/// `1 -> F -> E -> Gamma -> 1`, with `E` on `|F| + |Gamma|` points.
#[derive(Clone, Debug)]
pub struct Extension {
    pub e: PermGroup,
    pub kernel_embedding: GroupHom,
    pub projection: GroupHom,
    /// Section images indexed by the elements of `Gamma`.
    pub section: Option<Vec<Permutation>>,
}

/// The fibre product `{(a, g) : [a] = kappa(g)}` of `Aut(F) -> Out(F)` and `kappa`.
pub fn pullback_extension(lien: &Lien) -> Result<Extension> {
    let aut = lien.aut();
    let t = aut.table();
    let gt = lien.gamma_table();
    let kernel_images: Vec<Permutation> = t
        .generator_indices()
        .iter()
        .map(|&g| lien.extension_element(&aut.coord_to_perm(aut.inner(g)), 0))
        .collect();
    let twists: Vec<Permutation> = gt
        .generator_indices()
        .iter()
        .map(|&g| {
            let cls = &aut.outer_classes()[lien.kappa[g as usize] as usize];
            lien.extension_element(&cls.representative, g)
        })
        .collect();
    let mut gens: Vec<Permutation> = kernel_images.iter().chain(&twists).cloned().collect();
    gens.retain(|g| !g.is_identity());
    if gens.is_empty() {
        gens.push(Permutation::identity(t.len() + gt.len()));
    }
    let order = (t.len() * gt.len()) as u128;
    let e = PermGroup::with_known_order(gens.clone(), order)?;
    let kernel_embedding = GroupHom::new(lien.f().clone(), e.clone(), kernel_images)?;
    let proj_images: Vec<Permutation> = gens
        .iter()
        .map(|g| {
            let (_, gi) = lien.split_element(g).expect("extension element");
            gt.element(gi).clone()
        })
        .collect();
    let projection = GroupHom::new(e.clone(), lien.gamma().clone(), proj_images)?;
    Ok(Extension {
        e,
        kernel_embedding,
        projection,
        section: None,
    })
}

/// Extension permutations `(sigma(g), g)` for a lift indexed by `Gamma` elements.
pub fn section_perms(lien: &Lien, lift: &[AutCoord]) -> Vec<Permutation> {
    lift.iter()
        .enumerate()
        .map(|(g, &a)| lien.extension_element(&lien.aut().coord_to_perm(a), g as u32))
        .collect()
}

/// Pointwise check of a section given by its values on every element of
/// `Gamma`: membership in `E`, `s(gh) = s(g)s(h)` on all pairs,
/// `projection o s = id`, and `s(Gamma)` meeting the kernel only in 1.
pub fn verify_section(
    lien: &Lien,
    ext: &Extension,
    section: &[Permutation],
) -> std::result::Result<(), String> {
    let gt = lien.gamma_table();
    let n = gt.len();
    if section.len() != n {
        return Err(format!(
            "section has {} values for |Gamma| = {n}",
            section.len()
        ));
    }
    let kernel = ext.kernel_embedding.image().map_err(|e| e.to_string())?;
    for (g, s) in section.iter().enumerate() {
        if !ext.e.contains(s).map_err(|e| e.to_string())? {
            return Err(format!("s(g{g}) is not in E"));
        }
        let image = ext.projection.apply(s).map_err(|e| e.to_string())?;
        if &image != gt.element(g as u32) {
            return Err(format!("projection of s(g{g}) is not g{g}"));
        }
        if g != 0 && kernel.contains(s).map_err(|e| e.to_string())? {
            return Err(format!("s(g{g}) lies in the kernel"));
        }
    }
    if !section[0].is_identity() {
        return Err("s(1) is not the identity".into());
    }
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            let prod = section[x as usize].compose(&section[y as usize]);
            if prod != section[gt.mul(x, y) as usize] {
                return Err(format!("s(g{x} g{y}) != s(g{x}) s(g{y})"));
            }
        }
    }
    Ok(())
}

/// Check in automorphism coordinates: a homomorphism lifting `kappa`.
pub fn verify_lift(lien: &Lien, lift: &[AutCoord]) -> std::result::Result<(), String> {
    let aut = lien.aut();
    let gt = lien.gamma_table();
    if lift.len() != gt.len() {
        return Err("lift has the wrong length".into());
    }
    for (g, a) in lift.iter().enumerate() {
        if a.class != lien.kappa[g] {
            return Err(format!("lift of g{g} lies in the wrong outer class"));
        }
    }
    for x in 0..gt.len() as u32 {
        for y in 0..gt.len() as u32 {
            if aut.coord_mul(lift[x as usize], lift[y as usize]) != lift[gt.mul(x, y) as usize] {
                return Err(format!("lift is not multiplicative at g{x}, g{y}"));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct NeutralVerdict {
    pub neutral: bool,
    /// `sigma: Gamma -> Aut(F)` lifting `kappa`, indexed by `Gamma` elements.
    pub lift: Option<Vec<AutCoord>>,
}

/// Searches for a complement to `F` in the pullback extension, i.e. a
/// homomorphic lift of `kappa` to `Aut(F)`.
pub fn is_neutral(lien: &Lien) -> Result<NeutralVerdict> {
    is_neutral_with(lien, &SearchControl::unbounded())
}

pub fn is_neutral_with(lien: &Lien, ctl: &SearchControl) -> Result<NeutralVerdict> {
    let lift = find_lift(lien.aut(), lien.gamma_table(), lien.kappa(), ctl)?;
    Ok(NeutralVerdict {
        neutral: lift.is_some(),
        lift,
    })
}

/// The induced lien on `F/N` and the maps needed to pass between levels.
pub struct QuotientLien {
    pub lien: Lien,
    /// `F/N` index (in the quotient's table) of every element of `F`.
    pub qidx: Vec<u32>,
    /// One element of `F` per element of `F/N`.
    pub reps: Vec<u32>,
}

impl QuotientLien {
    /// The automorphism of `F/N` induced by `a`.
    pub fn induced(&self, parent: &AutData, a: AutCoord) -> Option<AutCoord> {
        let images = self
            .reps
            .iter()
            .map(|&x| self.qidx[parent.apply(a, x) as usize])
            .collect();
        self.lien
            .aut()
            .classify(&Permutation::from_images_unchecked(images))
    }
}

fn is_invariant(aut: &AutData, members: &[u32]) -> bool {
    let t = aut.table();
    let mut mask = vec![false; t.len()];
    for &x in members {
        mask[x as usize] = true;
    }
    let normal = t
        .generator_indices()
        .iter()
        .all(|&g| members.iter().all(|&x| mask[t.conj(x, g) as usize]));
    normal
        && aut
            .aut_group()
            .generators()
            .iter()
            .all(|a| members.iter().all(|&x| mask[a.image(x) as usize]))
}

/// `F/N` for a characteristic `N` given by sorted indices into `aut.table()`.
pub fn quotient_lien(lien: &Lien, n_members: &[u32]) -> Result<QuotientLien> {
    let aut = lien.aut();
    let t = aut.table();
    if n_members.len() <= 1 || n_members.len() >= t.len() {
        return Err(GroupError::InvalidSpec(
            "N must be proper and nontrivial".into(),
        ));
    }
    if !is_invariant(aut, n_members) {
        return Err(GroupError::NotCharacteristic);
    }
    let mut coset = vec![u32::MAX; t.len()];
    let mut reps = Vec::new();
    for x in 0..t.len() as u32 {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &m in n_members {
            coset[t.mul(m, x) as usize] = id;
        }
    }
    let action = |x: u32| -> Permutation {
        Permutation::from_images_unchecked(
            reps.iter().map(|&r| coset[t.mul(r, x) as usize]).collect(),
        )
    };
    let gens: Vec<Permutation> = t.generator_indices().iter().map(|&g| action(g)).collect();
    let q = PermGroup::with_known_order(gens, reps.len() as u128)?;
    let aut_q = AutData::compute(&q)?;
    if !aut_q.is_centerless() {
        return Err(GroupError::NontrivialCenter(aut_q.center_order() as u128));
    }
    let rep_q: Vec<u32> = reps
        .iter()
        .map(|&r| {
            aut_q
                .table()
                .index_of(&action(r))
                .expect("coset action lies in F/N")
        })
        .collect();
    let qidx: Vec<u32> = coset.iter().map(|&c| rep_q[c as usize]).collect();
    let mut q_reps = vec![0u32; reps.len()];
    for (c, &r) in reps.iter().enumerate() {
        q_reps[rep_q[c] as usize] = r;
    }
    let partial = QuotientLien {
        lien: Lien {
            aut: Arc::new(aut_q),
            gamma: lien.gamma.clone(),
            gamma_table: lien.gamma_table.clone(),
            kappa: vec![],
        },
        qidx,
        reps: q_reps,
    };
    let kappa = lien
        .kappa
        .iter()
        .map(|&c| {
            let a = AutCoord { class: c, inner: 0 };
            partial.induced(aut, a).map(|b| b.class).ok_or_else(|| {
                GroupError::Invariant("induced map is not an automorphism of F/N".into())
            })
        })
        .collect::<Result<Vec<u32>>>()?;
    let lien_q = Lien::new(partial.lien.aut.clone(), lien.gamma.clone(), kappa)?;
    Ok(QuotientLien {
        lien: lien_q,
        ..partial
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum TowerStep {
    /// No usable characteristic subgroup: split through `Out(F) -> Aut(F)`.
    Base {
        order: u64,
        out_order: usize,
        aut_split: bool,
    },
    /// Descend to `F/N`, then to `N` inside the preimage of the section.
    Descend {
        order: u64,
        kernel_order: u64,
        quotient_order: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub anti_solvable: bool,
    /// Each composition factor's tag and, when it could be built, its aut-split verdict.
    pub factors: Vec<(SimpleId, Option<bool>)>,
    pub satisfied: bool,
}

/// Anti-solvability of `F` and aut-splitness of every composition factor.
pub fn check_hypothesis(f: &PermGroup) -> Result<HypothesisCheck> {
    let series = composition_factors(f)?;
    let anti_solvable = series.factors.iter().all(|x| !x.abelian);
    let mut cache: HashMap<SimpleId, Option<bool>> = HashMap::new();
    let mut factors = Vec::new();
    for factor in &series.factors {
        let verdict = match cache.get(&factor.id) {
            Some(v) => *v,
            None => {
                let group = match factor.id {
                    SimpleId::Alt { n } => Some(alternating(n as usize)?),
                    SimpleId::Psl2 { q } => Some(make_psl2(q)?),
                    _ => None,
                };
                let v = match group {
                    Some(g) => Some(is_aut_split(&AutData::compute(&g)?)?.aut_split),
                    None if factor.abelian => Some(true),
                    None => None,
                };
                cache.insert(factor.id.clone(), v);
                v
            }
        };
        factors.push((factor.id.clone(), verdict));
    }
    let satisfied = anti_solvable && factors.iter().all(|(_, v)| *v == Some(true));
    Ok(HypothesisCheck {
        anti_solvable,
        factors,
        satisfied,
    })
}

#[derive(Clone, Debug)]
pub struct TowerOutcome {
    pub split: bool,
    pub lift: Option<Vec<AutCoord>>,
    pub trace: Vec<TowerStep>,
    pub hypothesis: HypothesisCheck,
}

fn prime_factor_count(mut n: u128) -> usize {
    let mut count = 0;
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            n /= d;
            count += 1;
        }
        d += 1;
    }
    count + usize::from(n > 1)
}

/// Splits along a characteristic tower: quotient first, then the kernel
/// inside the preimage of the quotient section. The subgroup used is the
/// smallest proper nontrivial characteristic `N` with `N` and `F/N`
/// centerless; without one, the base case composes `kappa` with a section
/// of `Aut(F) -> Out(F)`.
pub fn split_via_tower(lien: &Lien) -> Result<TowerOutcome> {
    split_via_tower_with(lien, &SearchControl::unbounded())
}

pub fn split_via_tower_with(lien: &Lien, ctl: &SearchControl) -> Result<TowerOutcome> {
    let hypothesis = check_hypothesis(lien.f())?;
    let bound = prime_factor_count(lien.aut().table().len() as u128).max(1);
    let mut trace = Vec::new();
    let lift = tower(lien, 0, bound, &mut trace, ctl)?;
    if let Some(l) = &lift {
        verify_lift(lien, l).map_err(GroupError::Invariant)?;
    }
    Ok(TowerOutcome {
        split: lift.is_some(),
        lift,
        trace,
        hypothesis,
    })
}

fn centerless_members(t: &ElementTable, members: &[u32]) -> bool {
    let gens = t.generators_of(members);
    members
        .iter()
        .filter(|&&x| x != 0)
        .all(|&x| gens.iter().any(|&g| t.mul(x, g) != t.mul(g, x)))
}

fn quotient_centerless(t: &ElementTable, members: &[u32]) -> bool {
    let mut in_n = vec![false; t.len()];
    for &x in members {
        in_n[x as usize] = true;
    }
    (0..t.len() as u32).filter(|&x| !in_n[x as usize]).all(|x| {
        t.generator_indices().iter().any(|&g| {
            let comm = t.mul(t.mul(t.inv(x), t.inv(g)), t.mul(x, g));
            !in_n[comm as usize]
        })
    })
}

fn tower_subgroup(aut: &AutData) -> Option<Vec<u32>> {
    let t = aut.table();
    let mut cands: Vec<Vec<u32>> = characteristic_members(aut)
        .into_iter()
        .filter(|s| s.len() > 1 && s.len() < t.len())
        .filter(|s| centerless_members(t, s) && quotient_centerless(t, s))
        .collect();
    let encode = |s: &Vec<u32>| {
        let mut v: Vec<&[u32]> = s.iter().map(|&x| t.element(x).images()).collect();
        v.sort_unstable();
        v
    };
    cands.sort_by(|a, b| {
        a.len()
            .cmp(&b.len())
            .then_with(|| encode(a).cmp(&encode(b)))
    });
    cands.into_iter().next()
}

fn tower(
    lien: &Lien,
    depth: usize,
    bound: usize,
    trace: &mut Vec<TowerStep>,
    ctl: &SearchControl,
) -> Result<Option<Vec<AutCoord>>> {
    if depth > bound {
        return Err(GroupError::RecursionDepth(bound));
    }
    ctl.check()?;
    let aut = lien.aut();
    let t = aut.table();
    let gt = lien.gamma_table();
    let Some(n_members) = tower_subgroup(aut) else {
        let verdict = is_aut_split(aut)?;
        trace.push(TowerStep::Base {
            order: t.len() as u64,
            out_order: aut.out_order(),
            aut_split: verdict.aut_split,
        });
        return Ok(verdict
            .lift
            .map(|section| lien.kappa.iter().map(|&c| section[c as usize]).collect()));
    };
    trace.push(TowerStep::Descend {
        order: t.len() as u64,
        kernel_order: n_members.len() as u64,
        quotient_order: (t.len() / n_members.len()) as u64,
    });

    let quotient = quotient_lien(lien, &n_members)?;
    let Some(upper) = tower(&quotient.lien, depth + 1, bound, trace, ctl)? else {
        return Ok(None);
    };

    // a0(g): an automorphism over kappa(g) inducing upper(g) on F/N.
    let gens = gt.generator_indices();
    let mut a0_gen = Vec::with_capacity(gens.len());
    for &g in gens {
        let class = lien.kappa[g as usize];
        let found = aut
            .inner_elements()
            .iter()
            .map(|&f| AutCoord { class, inner: f })
            .find(|&a| quotient.induced(aut, a) == Some(upper[g as usize]))
            .ok_or_else(|| GroupError::Invariant("quotient section does not lift".into()))?;
        a0_gen.push(found);
    }
    let mut a0 = vec![None; gt.len()];
    a0[0] = Some(aut.identity());
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, &a) in gens.iter().zip(&a0_gen) {
            let y = gt.mul(x, g);
            if a0[y as usize].is_none() {
                a0[y as usize] = Some(aut.coord_mul(a0[x as usize].unwrap(), a));
                queue.push(y);
            }
        }
    }
    let a0: Vec<AutCoord> = a0
        .into_iter()
        .map(|a| a.expect("Gamma generated"))
        .collect();

    // The preimage of the quotient section is an extension of Gamma by N.
    let n_group = t.subgroup_from_members(&n_members);
    let aut_n = AutData::compute(&n_group)?;
    let from_n: Vec<u32> = aut_n
        .table()
        .elements()
        .map(|p| t.index_of(p).expect("N inside F"))
        .collect();
    let mut to_n = vec![u32::MAX; t.len()];
    for (y, &x) in from_n.iter().enumerate() {
        to_n[x as usize] = y as u32;
    }
    let restrict = |a: AutCoord| -> Result<AutCoord> {
        let images = from_n
            .iter()
            .map(|&x| to_n[aut.apply(a, x) as usize])
            .collect();
        aut_n
            .classify(&Permutation::from_images_unchecked(images))
            .ok_or_else(|| GroupError::Invariant("restriction to N is not an automorphism".into()))
    };
    let restricted: Vec<AutCoord> = a0.iter().map(|&a| restrict(a)).collect::<Result<_>>()?;
    let aut_n = Arc::new(aut_n);
    let kappa_n: Vec<u32> = restricted.iter().map(|a| a.class).collect();
    let lien_n = Lien::new(aut_n.clone(), lien.gamma.clone(), kappa_n)?;
    let Some(lower) = tower(&lien_n, depth + 1, bound, trace, ctl)? else {
        return Ok(None);
    };

    // Correct a0(g) by the element n of N with a0(g)|_N c_n = lower(g).
    let lift = (0..gt.len())
        .map(|g| {
            let c = aut_n.coord_mul(aut_n.coord_inv(restricted[g]), lower[g]);
            debug_assert_eq!(c.class, 0);
            let n = from_n[c.inner as usize];
            aut.coord_mul(a0[g], aut.inner(n))
        })
        .collect();
    Ok(Some(lift))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionCount {
    /// Pairs `(a, z)` with `a` over the nontrivial class, `a(z) = z`, `a^2 = c_z`.
    pub pairs: usize,
    /// Classes under change of transversal `t -> f t`.
    pub classes: usize,
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Equivalence classes of extensions `<F, t>` with `x^t = x^a`, `t^2 = z`
/// over `Gamma = C2`. Changing the transversal to `f t` sends `(a, z)` to
/// `(c_f a, f a^-1(f) z)`.
pub fn enumerate_extensions_order2_gamma(lien: &Lien) -> Result<ExtensionCount> {
    let aut = lien.aut();
    let t = aut.table();
    if lien.gamma_table().len() != 2 {
        return Err(GroupError::InvalidSpec("Gamma must have order 2".into()));
    }
    if t.len() as u128 > ENUMERATION_MAX_ORDER {
        return Err(GroupError::OrderBoundExceeded {
            order: t.len() as u128,
            bound: ENUMERATION_MAX_ORDER,
        });
    }
    let class = lien.kappa[1];
    let mut pairs: Vec<(AutCoord, u32)> = Vec::new();
    for &f in aut.inner_elements() {
        let a = AutCoord { class, inner: f };
        let sq = aut.coord_mul(a, a);
        if sq.class != 0 {
            return Err(GroupError::Invariant("kappa(g)^2 is not trivial".into()));
        }
        let z = sq.inner;
        if aut.apply(a, z) == z {
            pairs.push((a, z));
        }
    }
    let index: HashMap<AutCoord, usize> = pairs.iter().enumerate().map(|(i, p)| (p.0, i)).collect();
    let mut parent: Vec<usize> = (0..pairs.len()).collect();
    for (i, &(a, z)) in pairs.iter().enumerate() {
        for &g in t.generator_indices() {
            let a2 = aut.coord_mul(aut.inner(g), a);
            let z2 = t.mul(t.mul(g, aut.apply(aut.coord_inv(a), g)), z);
            let j = *index.get(&a2).ok_or_else(|| {
                GroupError::Invariant("transversal change left the solution set".into())
            })?;
            if pairs[j].1 != z2 {
                return Err(GroupError::Invariant(
                    "transversal change disagrees on t^2".into(),
                ));
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let classes = (0..pairs.len())
        .filter(|&i| find(&mut parent, i) == i)
        .count();
    Ok(ExtensionCount {
        pairs: pairs.len(),
        classes,
    })
}

/// A section witness: for each generator of `Gamma`, the images of `F`'s
/// generators under `sigma(g)`, all in 1-indexed cycle notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionWitness {
    pub gamma_generators: Vec<String>,
    pub generator_images: Vec<Vec<String>>,
}

pub fn section_witness(lien: &Lien, lift: &[AutCoord]) -> SectionWitness {
    let aut = lien.aut();
    let gt = lien.gamma_table();
    SectionWitness {
        gamma_generators: gt
            .generators()
            .iter()
            .take(gt.generator_indices().len())
            .map(|g| g.to_cycle_string())
            .collect(),
        generator_images: gt
            .generator_indices()
            .iter()
            .map(|&g| {
                aut.generator_images(&aut.coord_to_perm(lift[g as usize]))
                    .iter()
                    .map(|p| p.to_cycle_string())
                    .collect()
            })
            .collect(),
    }
}

/// Rebuilds the section from a witness and checks it pointwise in the
/// pullback extension.
pub fn verify_section_witness(
    lien: &Lien,
    witness: &SectionWitness,
) -> std::result::Result<(), String> {
    let aut = lien.aut();
    let gt = lien.gamma_table();
    let gens = gt.generator_indices();
    if witness.generator_images.len() != gens.len() {
        return Err("one automorphism is needed per generator of Gamma".into());
    }
    let f_degree = lien.f().degree();
    let mut autos = Vec::new();
    for images in &witness.generator_images {
        let perms = images
            .iter()
            .map(|s| Permutation::parse_cycles(s, f_degree))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        autos.push(
            aut.automorphism_from_generator_images(&perms)
                .map_err(|e| e.to_string())?,
        );
    }
    let n = aut.table().len();
    let mut values: Vec<Option<Permutation>> = vec![None; gt.len()];
    values[0] = Some(Permutation::identity(n));
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&g, a) in gens.iter().zip(&autos) {
            let y = gt.mul(x, g);
            if values[y as usize].is_none() {
                values[y as usize] = Some(values[x as usize].as_ref().unwrap().compose(a));
                queue.push(y);
            }
        }
    }
    let section: Vec<Permutation> = values
        .into_iter()
        .enumerate()
        .map(|(g, a)| lien.extension_element(&a.expect("Gamma generated"), g as u32))
        .collect();
    let ext = pullback_extension(lien).map_err(|e| e.to_string())?;
    verify_section(lien, &ext, &section)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A6ClassReport {
    pub label: String,
    pub aliases: Vec<String>,
    pub min_element_order: u32,
    pub involutions: usize,
    pub neutral: bool,
    pub extension_classes: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A6Report {
    pub classes: Vec<A6ClassReport>,
    /// Label of the class with no lift of order at most 2.
    pub m_class: String,
    /// An involution in the `m` coset, if one exists (it does not).
    pub involution_in_m_coset: Option<String>,
    pub non_neutral: usize,
}

/// The three liens `A6` over `C2`: exactly one, the class without
/// involutions in its coset, is not neutral.
pub fn a6_counterexample() -> Result<A6Report> {
    let a6 = alternating(6)?;
    let aut = Arc::new(AutData::compute(&a6)?);
    let c2 = crate::catalog::cyclic(2)?;
    let mut classes = Vec::new();
    for cls in aut.outer_classes().iter().skip(1) {
        let lien = Lien::from_generator_classes(aut.clone(), c2.clone(), &[cls.index as u32])?;
        let neutral = is_neutral(&lien)?.neutral;
        let count = enumerate_extensions_order2_gamma(&lien)?;
        classes.push(A6ClassReport {
            label: cls.label.clone(),
            aliases: cls.aliases.clone(),
            min_element_order: cls.min_element_order,
            involutions: cls.involutions,
            neutral,
            extension_classes: count.classes,
        });
    }
    let m = aut
        .outer_classes()
        .iter()
        .skip(1)
        .filter(|c| c.min_element_order > 2)
        .collect::<Vec<_>>();
    if m.len() != 1 {
        return Err(GroupError::Invariant(format!(
            "expected one outer class of A6 without involutions, found {}",
            m.len()
        )));
    }
    let m = m[0];
    let involution = aut
        .inner_elements()
        .iter()
        .map(|&f| AutCoord {
            class: m.index as u32,
            inner: f,
        })
        .find(|&a| aut.coord_order(a) <= 2)
        .map(|a| aut.coord_to_perm(a).to_cycle_string());
    let report = A6Report {
        non_neutral: classes.iter().filter(|c| !c.neutral).count(),
        classes,
        m_class: m.label.clone(),
        involution_in_m_coset: involution,
    };
    let ok = report.non_neutral == 1
        && report.involution_in_m_coset.is_none()
        && report
            .classes
            .iter()
            .all(|c| c.neutral == (c.label != report.m_class))
        && report.classes.iter().all(|c| c.extension_classes == 1);
    if !ok {
        return Err(GroupError::Invariant(format!(
            "A6 counterexample claims fail: {report:?}"
        )));
    }
    Ok(report)
}
