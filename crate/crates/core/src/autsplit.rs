//! `Aut(F)` as a permutation group on the elements of `F`, the normal
//! subgroup `Inn(F)`, the outer classes, and the complement search deciding
//! whether `1 -> Inn(F) -> Aut(F) -> Out(F) -> 1` splits.
//!
//! Automorphisms act on the right, `x^(ab) = (x^a)^b`, and conjugation by
//! `f` is `c_f : x -> f^-1 x f`, so `f -> c_f` is a homomorphism.
//!
//! Every automorphism has unique coordinates `(i, f)` meaning `r_i c_f`,
//! where `r_i` is the chosen representative of outer class `i` and `f` is
//! the canonical (least-index) element of its coset `fZ(F)`. With
//! `r_i r_j = r_{ij} c_{z(i,j)}` and `c_f r_j = r_j c_{f^{r_j}}` products are
//!
//! ```text
//! (i, f)(j, g) = (ij, z(i,j) f^{r_j} g)
//! ```
//!
//! which keeps the searches below at table-lookup cost.

use std::collections::HashMap;

use crate::control::SearchControl;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use crate::permgroup::{ElementTable, PermGroup};

/// Largest `|F|` accepted by [`AutData::compute`].
pub const AUT_MAX_ORDER: u128 = 5040;
/// Largest `|Out(F)|` for which the outer multiplication table is built.
pub const OUT_TABLE_MAX: usize = 240;
/// Largest `|Out(F)|` accepted by [`is_aut_split`].
pub const SPLIT_MAX_OUT: usize = 24;
/// Budget of closure tests when looking for three generators.
const TRIPLE_BUDGET: usize = 20_000;

type Key = [u32; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutCoord {
    pub class: u32,
    pub inner: u32,
}

#[derive(Clone, Debug)]
pub struct OuterClass {
    /// Position in coset-scan order; class 0 is `Inn(F)`.
    pub index: usize,
    pub label: String,
    pub aliases: Vec<String>,
    pub representative: Permutation,
    pub order_in_out: u32,
    pub min_element_order: u32,
    pub involutions: usize,
}

impl OuterClass {
    pub fn matches(&self, name: &str) -> bool {
        self.label == name || self.aliases.iter().any(|a| a == name)
    }
}

pub struct AutData {
    base_group: PermGroup,
    table: ElementTable,
    search_gens: Vec<u32>,
    center: Vec<u32>,
    canon: Vec<u32>,
    inner_reps: Vec<u32>,
    lookup: HashMap<Key, u32>,
    reps: Vec<Permutation>,
    rep_inv: Vec<Permutation>,
    out_mul: Vec<u32>,
    z: Vec<u32>,
    discovered: Vec<usize>,
    aut_order: u128,
    aut_group: PermGroup,
    inn: PermGroup,
    classes: Vec<OuterClass>,
}

impl std::fmt::Debug for AutData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AutData")
            .field("base_order", &self.table.len())
            .field("aut_order", &self.aut_order)
            .field("out_order", &self.out_order())
            .finish()
    }
}

fn key_of(vals: impl IntoIterator<Item = u32>) -> Key {
    let mut k = [u32::MAX; 3];
    for (slot, v) in k.iter_mut().zip(vals) {
        *slot = v;
    }
    k
}

/// A generating set of at most three elements, chosen to keep the
/// automorphism search small: candidate images of a generator share its
/// order and class size, so pairs are tried by increasing product of those
/// candidate counts.
pub fn small_generating_set(table: &ElementTable) -> Result<Vec<u32>> {
    let n = table.len();
    if n == 1 {
        return Ok(vec![]);
    }
    let classes = table.classes();
    let nclasses = classes.reps.len();
    let mut members: Vec<Vec<u32>> = vec![Vec::new(); nclasses];
    for x in 0..n as u32 {
        members[classes.class_of[x as usize] as usize].push(x);
    }
    let mut cand_count: HashMap<(u32, usize), usize> = HashMap::new();
    for x in 0..n as u32 {
        *cand_count
            .entry((table.order_of(x), table.class_size_of(x)))
            .or_default() += 1;
    }
    let weight = |c: usize| {
        let r = classes.reps[c];
        cand_count[&(table.order_of(r), classes.sizes[c])]
    };
    let mut order: Vec<usize> = (1..nclasses).collect();
    order.sort_by_key(|&c| (weight(c), c));

    if let Some(&c) = order
        .iter()
        .find(|&&c| table.order_of(classes.reps[c]) as usize == n)
    {
        return Ok(vec![classes.reps[c]]);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for (a, &c1) in order.iter().enumerate() {
        for &c2 in &order[a..] {
            pairs.push((c1, c2));
        }
    }
    pairs.sort_by_key(|&(c1, c2)| (weight(c1) * weight(c2), c1.min(c2), c1.max(c2)));
    for &(c1, c2) in &pairs {
        let x = classes.reps[c1];
        for &y in &members[c2] {
            if table.closure(&[x, y]).len() == n {
                return Ok(vec![x, y]);
            }
        }
    }
    let mut budget = TRIPLE_BUDGET;
    for &(c1, c2) in &pairs {
        let x = classes.reps[c1];
        for &y in &members[c2] {
            let sub = table.closure(&[x, y]).len();
            if sub == n {
                continue;
            }
            for &c3 in &order {
                for &w in &members[c3] {
                    if budget == 0 {
                        return Err(GroupError::NoSmallGeneratingSet);
                    }
                    budget -= 1;
                    if table.closure(&[x, y, w]).len() == n {
                        return Ok(vec![x, y, w]);
                    }
                }
            }
        }
    }
    Err(GroupError::NoSmallGeneratingSet)
}

struct Word {
    letters: Vec<(usize, bool)>,
    max_gen: usize,
    order: u32,
    class_size: usize,
}

struct Search<'a> {
    table: &'a ElementTable,
    gens: &'a [u32],
    lookup: &'a HashMap<Key, u32>,
    reps: Vec<Permutation>,
    rep_inv: Vec<Permutation>,
    discovered: Vec<usize>,
    count: u128,
}

impl Search<'_> {
    fn classify_images(&self, t: &[u32]) -> Option<(usize, u32)> {
        for (i, rinv) in self.rep_inv.iter().enumerate() {
            let key = key_of(t.iter().map(|&x| rinv.image(x)));
            if let Some(&h) = self.lookup.get(&key) {
                return Some((i, self.reps[i].image(h)));
            }
        }
        None
    }

    fn classify(&self, a: &Permutation) -> Option<(usize, u32)> {
        let t: Vec<u32> = self.gens.iter().map(|&g| a.image(g)).collect();
        self.classify_images(&t)
    }

    fn add_rep(&mut self, r: Permutation) -> Result<()> {
        self.rep_inv.push(r.inverse());
        self.reps.push(r);
        let mut next_new = self.reps.len() - 1;
        while next_new < self.reps.len() {
            let a = next_new;
            next_new += 1;
            let mut j = 0;
            while j < self.reps.len() {
                for p in [
                    self.reps[a].compose(&self.reps[j]),
                    self.reps[j].compose(&self.reps[a]),
                ] {
                    if self.classify(&p).is_none() {
                        if self.reps.len() >= OUT_TABLE_MAX {
                            return Err(GroupError::SearchBoundExceeded(format!(
                                "|Out(F)| exceeds {OUT_TABLE_MAX}"
                            )));
                        }
                        self.rep_inv.push(p.inverse());
                        self.reps.push(p);
                    }
                }
                j += 1;
            }
        }
        Ok(())
    }
}

/// Extends `gens[k] -> images[k]` along the Cayley graph; `Some(map)` iff it
/// is an automorphism.
fn extend_to_automorphism(table: &ElementTable, gens: &[u32], images: &[u32]) -> Option<Vec<u32>> {
    let n = table.len();
    let mut phi = vec![u32::MAX; n];
    let mut used = vec![false; n];
    phi[0] = 0;
    used[0] = true;
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let fx = phi[x as usize];
        for (&g, &t) in gens.iter().zip(images) {
            let y = table.mul(x, g);
            let v = table.mul(fx, t);
            match phi[y as usize] {
                u32::MAX => {
                    if used[v as usize] {
                        return None;
                    }
                    used[v as usize] = true;
                    phi[y as usize] = v;
                    queue.push(y);
                }
                w if w != v => return None,
                _ => {}
            }
        }
    }
    (queue.len() == n).then_some(phi)
}

fn eval_word(table: &ElementTable, vals: &[u32], letters: &[(usize, bool)]) -> u32 {
    letters.iter().fold(0, |acc, &(g, inv)| {
        let v = if inv { table.inv(vals[g]) } else { vals[g] };
        table.mul(acc, v)
    })
}

fn relation_sample(table: &ElementTable, gens: &[u32]) -> Vec<Word> {
    let k = gens.len();
    let letters: Vec<(usize, bool)> = (0..k).flat_map(|g| [(g, false), (g, true)]).collect();
    let mut words = Vec::new();
    let mut push = |w: Vec<(usize, bool)>| {
        if w.windows(2).any(|p| p[0].0 == p[1].0 && p[0].1 != p[1].1) {
            return;
        }
        let e = eval_word(table, gens, &w);
        let max_gen = w.iter().map(|l| l.0).max().unwrap();
        words.push(Word {
            max_gen,
            order: table.order_of(e),
            class_size: table.class_size_of(e),
            letters: w,
        });
    };
    for &a in &letters {
        for &b in &letters {
            push(vec![a, b]);
            for &c in &letters {
                push(vec![a, b, c]);
            }
        }
    }
    words.sort_by_key(|w| (w.max_gen, w.letters.len()));
    words
}

impl AutData {
    pub fn compute(f: &PermGroup) -> Result<Self> {
        Self::compute_with(f, &SearchControl::unbounded())
    }

    pub fn compute_with(f: &PermGroup, ctl: &SearchControl) -> Result<Self> {
        if f.order() > AUT_MAX_ORDER {
            return Err(GroupError::OrderBoundExceeded {
                order: f.order(),
                bound: AUT_MAX_ORDER,
            });
        }
        let table = f.element_table()?;
        table.ensure_full_table();
        let n = table.len();

        let center = table.center_members();
        let canon: Vec<u32> = (0..n as u32)
            .map(|x| center.iter().map(|&z| table.mul(x, z)).min().unwrap())
            .collect();
        let inner_reps: Vec<u32> = (0..n as u32).filter(|&x| canon[x as usize] == x).collect();

        let search_gens = small_generating_set(&table)?;
        let mut lookup = HashMap::with_capacity(n);
        for x in 0..n as u32 {
            let key = key_of(search_gens.iter().map(|&s| table.conj(s, x)));
            lookup.entry(key).or_insert(canon[x as usize]);
        }
        debug_assert_eq!(lookup.len(), inner_reps.len());

        let cands: Vec<Vec<u32>> = search_gens
            .iter()
            .map(|&s| {
                (0..n as u32)
                    .filter(|&y| {
                        table.order_of(y) == table.order_of(s)
                            && table.class_size_of(y) == table.class_size_of(s)
                    })
                    .collect()
            })
            .collect();
        let words = relation_sample(&table, &search_gens);

        let identity = Permutation::identity(n);
        let mut search = Search {
            table: &table,
            gens: &search_gens,
            lookup: &lookup,
            reps: vec![identity.clone()],
            rep_inv: vec![identity],
            discovered: Vec::new(),
            count: 0,
        };
        let k = search_gens.len();
        if k == 0 {
            search.count = 1;
        } else {
            let mut t = vec![0u32; k];
            backtrack(&mut search, &cands, &words, &mut t, 0, ctl)?;
        }

        let out_order = search.reps.len();
        let inn_order = inner_reps.len() as u128;
        if search.count != out_order as u128 * inn_order {
            return Err(GroupError::Invariant(format!(
                "counted {} automorphisms but |Out| * |Inn| = {} * {}",
                search.count, out_order, inn_order
            )));
        }

        let mut out_mul = vec![0u32; out_order * out_order];
        let mut z = vec![0u32; out_order * out_order];
        for i in 0..out_order {
            for j in 0..out_order {
                let p = search.reps[i].compose(&search.reps[j]);
                let (c, f) = search.classify(&p).expect("reps closed under products");
                out_mul[i * out_order + j] = c as u32;
                z[i * out_order + j] = canon[f as usize];
            }
        }

        let inn_gens: Vec<Permutation> = table
            .generator_indices()
            .iter()
            .map(|&g| conjugation_perm(&table, g))
            .collect();
        let Search {
            reps,
            rep_inv,
            discovered,
            count,
            ..
        } = search;
        let mut aut_gens = inn_gens.clone();
        aut_gens.extend(discovered.iter().map(|&i| reps[i].clone()));
        let aut_group = PermGroup::with_known_order(aut_gens, count)?;
        let inn = PermGroup::with_known_order(inn_gens, inn_order)?;

        let mut data = AutData {
            base_group: f.clone(),
            table,
            search_gens,
            center,
            canon,
            inner_reps,
            lookup,
            reps,
            rep_inv,
            out_mul,
            z,
            discovered,
            aut_order: count,
            aut_group,
            inn,
            classes: Vec::new(),
        };
        data.classes = data.describe_classes();
        Ok(data)
    }

    fn describe_classes(&self) -> Vec<OuterClass> {
        let out = self.out_order();
        let mut classes: Vec<OuterClass> = (0..out)
            .map(|i| {
                let mut order_in_out = 1;
                let mut x = i;
                while x != 0 {
                    x = self.out_mul[x * out + i] as usize;
                    order_in_out += 1;
                }
                let mut min_order = u32::MAX;
                let mut involutions = 0;
                for &f in &self.inner_reps {
                    let o = self.coord_order(AutCoord {
                        class: i as u32,
                        inner: f,
                    });
                    min_order = min_order.min(o);
                    if o == 2 {
                        involutions += 1;
                    }
                }
                OuterClass {
                    index: i,
                    label: format!("o{i}"),
                    aliases: Vec::new(),
                    representative: self.reps[i].clone(),
                    order_in_out,
                    min_element_order: min_order,
                    involutions,
                }
            })
            .collect();
        let mut nontrivial: Vec<usize> = (1..out).collect();
        nontrivial.sort_by_key(|&i| (classes[i].min_element_order, classes[i].involutions, i));
        if out == 2 {
            classes[1].aliases.push("s".into());
        }
        if out == 4 && classes.iter().all(|c| c.order_in_out <= 2) {
            for (&i, name) in nontrivial.iter().zip(["s", "p", "m"]) {
                classes[i].aliases.push(name.into());
            }
        }
        let minimal = self.minimal_normal_subgroups();
        if minimal.len() > 1 {
            let mut swap_like: Vec<usize> = nontrivial
                .iter()
                .copied()
                .filter(|&i| {
                    classes[i].order_in_out == 2 && self.moves_any(&self.reps[i], &minimal)
                })
                .collect();
            swap_like.sort_by_key(|&i| {
                (
                    classes[i].min_element_order,
                    std::cmp::Reverse(classes[i].involutions),
                    i,
                )
            });
            if let Some(&i) = swap_like.first() {
                classes[i].aliases.push("swap".into());
            }
        }
        classes
    }

    fn minimal_normal_subgroups(&self) -> Vec<Vec<u32>> {
        let t = &self.table;
        let mut closures: Vec<Vec<u32>> = Vec::new();
        for &r in &t.classes().reps[1..] {
            let nc = t.normal_closure(&[r]);
            if !closures.contains(&nc) {
                closures.push(nc);
            }
        }
        let contains =
            |big: &Vec<u32>, small: &Vec<u32>| small.iter().all(|x| big.binary_search(x).is_ok());
        closures
            .iter()
            .filter(|a| !closures.iter().any(|b| b.len() < a.len() && contains(a, b)))
            .cloned()
            .collect()
    }

    fn moves_any(&self, a: &Permutation, subgroups: &[Vec<u32>]) -> bool {
        subgroups.iter().any(|s| {
            let mut img: Vec<u32> = s.iter().map(|&x| a.image(x)).collect();
            img.sort_unstable();
            &img != s
        })
    }

    pub fn base_group(&self) -> &PermGroup {
        &self.base_group
    }

    /// The element enumeration of `F` whose indices `Aut(F)` permutes.
    pub fn table(&self) -> &ElementTable {
        &self.table
    }

    pub fn aut_group(&self) -> &PermGroup {
        &self.aut_group
    }

    pub fn inn(&self) -> &PermGroup {
        &self.inn
    }

    pub fn aut_order(&self) -> u128 {
        self.aut_order
    }

    pub fn inn_order(&self) -> u128 {
        self.inner_reps.len() as u128
    }

    pub fn out_order(&self) -> usize {
        self.reps.len()
    }

    pub fn center_order(&self) -> usize {
        self.center.len()
    }

    pub fn is_centerless(&self) -> bool {
        self.center.len() == 1
    }

    pub fn search_generators(&self) -> &[u32] {
        &self.search_gens
    }

    /// Generators of `Aut(F)` beyond `Inn(F)` found by the search, as class indices.
    pub fn discovered_classes(&self) -> &[usize] {
        &self.discovered
    }

    pub fn out_mul(&self, i: usize, j: usize) -> usize {
        self.out_mul[i * self.out_order() + j] as usize
    }

    pub fn outer_classes(&self) -> &[OuterClass] {
        &self.classes
    }

    pub fn class_by_name(&self, name: &str) -> Option<&OuterClass> {
        self.classes.iter().find(|c| c.matches(name))
    }

    /// Canonical inner coordinates, one per element of `Inn(F)`.
    pub fn inner_elements(&self) -> &[u32] {
        &self.inner_reps
    }

    pub fn canonical_inner(&self, f: u32) -> u32 {
        self.canon[f as usize]
    }

    pub fn identity(&self) -> AutCoord {
        AutCoord { class: 0, inner: 0 }
    }

    pub fn inner(&self, f: u32) -> AutCoord {
        AutCoord {
            class: 0,
            inner: self.canon[f as usize],
        }
    }

    pub fn coord_mul(&self, a: AutCoord, b: AutCoord) -> AutCoord {
        let out = self.out_order();
        let (i, j) = (a.class as usize, b.class as usize);
        let t = &self.table;
        let moved = self.reps[j].image(a.inner);
        let f = t.mul(t.mul(self.z[i * out + j], moved), b.inner);
        AutCoord {
            class: self.out_mul[i * out + j],
            inner: self.canon[f as usize],
        }
    }

    pub fn coord_inv(&self, a: AutCoord) -> AutCoord {
        let out = self.out_order();
        let i = a.class as usize;
        let j = (0..out)
            .find(|&j| self.out_mul[i * out + j] == 0)
            .expect("group");
        let t = &self.table;
        let w = t.mul(self.z[i * out + j], self.reps[j].image(a.inner));
        AutCoord {
            class: j as u32,
            inner: self.canon[t.inv(w) as usize],
        }
    }

    pub fn coord_pow(&self, a: AutCoord, e: u32) -> AutCoord {
        (0..e).fold(self.identity(), |acc, _| self.coord_mul(acc, a))
    }

    pub fn coord_order(&self, a: AutCoord) -> u32 {
        let id = self.identity();
        let mut x = a;
        let mut e = 1;
        while x != id {
            x = self.coord_mul(x, a);
            e += 1;
        }
        e
    }

    /// `x^a` for an element index `x` of `F`.
    pub fn apply(&self, a: AutCoord, x: u32) -> u32 {
        let t = &self.table;
        let y = self.reps[a.class as usize].image(x);
        t.mul(t.mul(t.inv(a.inner), y), a.inner)
    }

    pub fn coord_to_perm(&self, a: AutCoord) -> Permutation {
        let n = self.table.len() as u32;
        Permutation::from_images_unchecked((0..n).map(|x| self.apply(a, x)).collect())
    }

    /// Coordinates of an automorphism given as a permutation of element indices.
    /// Does not check that `a` is an automorphism.
    pub fn classify(&self, a: &Permutation) -> Option<AutCoord> {
        for (i, rinv) in self.rep_inv.iter().enumerate() {
            let key = key_of(self.search_gens.iter().map(|&s| rinv.image(a.image(s))));
            if let Some(&h) = self.lookup.get(&key) {
                return Some(AutCoord {
                    class: i as u32,
                    inner: self.canon[self.reps[i].image(h) as usize],
                });
            }
        }
        None
    }

    /// True if the permutation of element indices respects multiplication.
    pub fn is_automorphism(&self, a: &Permutation) -> bool {
        let t = &self.table;
        let n = t.len() as u32;
        a.degree() == n as usize
            && t.generator_indices()
                .iter()
                .all(|&g| (0..n).all(|x| a.image(t.mul(x, g)) == t.mul(a.image(x), a.image(g))))
    }

    /// The automorphism `x -> g^-1 x g` for a permutation normalising `F`.
    pub fn automorphism_from_conjugation(&self, g: &Permutation) -> Result<Permutation> {
        let images = self
            .table
            .elements()
            .map(|x| {
                self.table
                    .index_of(&x.conjugate_by(g))
                    .ok_or(GroupError::NotMember)
            })
            .collect::<Result<Vec<u32>>>()?;
        Permutation::from_images(images)
    }

    /// Automorphism determined by the images (as permutations of `F`'s points)
    /// of `F`'s own generators, if that assignment is an automorphism.
    pub fn automorphism_from_generator_images(
        &self,
        images: &[Permutation],
    ) -> Result<Permutation> {
        let t = &self.table;
        if images.len() != t.generator_indices().len() {
            return Err(GroupError::NotHomomorphism(
                "wrong number of generator images".into(),
            ));
        }
        let idx = images
            .iter()
            .map(|p| t.index_of(p).ok_or(GroupError::NotMember))
            .collect::<Result<Vec<u32>>>()?;
        let map = extend_to_automorphism(t, t.generator_indices(), &idx).ok_or_else(|| {
            GroupError::NotHomomorphism("generator images do not define an automorphism".into())
        })?;
        Ok(Permutation::from_images_unchecked(map))
    }

    /// Images of `F`'s own generators under an automorphism.
    pub fn generator_images(&self, a: &Permutation) -> Vec<Permutation> {
        let t = &self.table;
        t.generator_indices()
            .iter()
            .map(|&g| t.element(a.image(g)).clone())
            .collect()
    }

    /// Regular permutation model of `Out(F)` on its class indices, generated
    /// by `gens` (class indices).
    pub fn out_as_regular(&self, gens: &[usize]) -> Result<PermGroup> {
        let out = self.out_order();
        let perms: Vec<Permutation> = gens
            .iter()
            .map(|&o| {
                Permutation::from_images_unchecked(
                    (0..out).map(|x| self.out_mul[x * out + o]).collect(),
                )
            })
            .collect();
        if perms.is_empty() {
            return Ok(PermGroup::trivial(out));
        }
        PermGroup::new(perms)
    }
}

fn conjugation_perm(table: &ElementTable, g: u32) -> Permutation {
    let n = table.len() as u32;
    Permutation::from_images_unchecked((0..n).map(|x| table.conj(x, g)).collect())
}

fn backtrack(
    s: &mut Search<'_>,
    cands: &[Vec<u32>],
    words: &[Word],
    t: &mut Vec<u32>,
    level: usize,
    ctl: &SearchControl,
) -> Result<()> {
    let k = cands.len();
    for &c in &cands[level] {
        if level == 0 {
            ctl.check()?;
        }
        t[level] = c;
        let ok = words.iter().filter(|w| w.max_gen == level).all(|w| {
            let e = eval_word(s.table, t, &w.letters);
            s.table.order_of(e) == w.order && s.table.class_size_of(e) == w.class_size
        });
        if !ok {
            continue;
        }
        if level + 1 < k {
            backtrack(s, cands, words, t, level + 1, ctl)?;
            continue;
        }
        if s.classify_images(t).is_some() {
            s.count += 1;
        } else if let Some(map) = extend_to_automorphism(s.table, s.gens, t) {
            s.count += 1;
            s.discovered.push(s.reps.len());
            s.add_rep(Permutation::from_images_unchecked(map))?;
        }
    }
    Ok(())
}

/// `Aut(F)` with `Inn(F)` and the outer-class structure.
pub fn automorphism_group(f: &PermGroup) -> Result<AutData> {
    AutData::compute(f)
}

pub fn outer_classes(aut: &AutData) -> &[OuterClass] {
    aut.outer_classes()
}

/// Minimum element order over the coset `r_i Inn(F)`, by exhaustive scan.
pub fn min_order_in_coset(aut: &AutData, cls: &OuterClass) -> u32 {
    aut.inner_elements()
        .iter()
        .map(|&f| {
            aut.coord_order(AutCoord {
                class: cls.index as u32,
                inner: f,
            })
        })
        .min()
        .expect("nonempty coset")
}

/// A homomorphism `sigma: Gamma -> Aut(F)` with `[sigma(g)] = kappa(g)` for every
/// element `g` of `Gamma` (indexed like `gamma`), found by backtracking over the
/// generators of `Gamma`. Candidates for a generator of order `e` are the
/// coset elements whose order divides `e`, scanned by index. Returns `None`
/// when the exhaustive search finds no lift.
pub fn find_lift(
    aut: &AutData,
    gamma: &ElementTable,
    kappa: &[u32],
    ctl: &SearchControl,
) -> Result<Option<Vec<AutCoord>>> {
    let gens = gamma.generator_indices();
    let mut cands: Vec<Vec<AutCoord>> = Vec::with_capacity(gens.len());
    for &g in gens {
        let class = kappa[g as usize];
        let e = gamma.order_of(g);
        let list: Vec<AutCoord> = aut
            .inner_elements()
            .iter()
            .map(|&f| AutCoord { class, inner: f })
            .filter(|&a| aut.coord_pow(a, e) == aut.identity())
            .collect();
        if list.is_empty() {
            return Ok(None);
        }
        cands.push(list);
    }
    let mut chosen = vec![aut.identity(); gens.len()];
    let found = lift_backtrack(aut, gamma, kappa, &cands, &mut chosen, 0, ctl)?;
    Ok(found)
}

fn partial_map(
    aut: &AutData,
    gamma: &ElementTable,
    chosen: &[AutCoord],
    upto: usize,
) -> Option<Vec<Option<AutCoord>>> {
    let gens = gamma.generator_indices();
    let mut sigma: Vec<Option<AutCoord>> = vec![None; gamma.len()];
    sigma[0] = Some(aut.identity());
    let mut queue = vec![0u32];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let sx = sigma[x as usize].expect("visited");
        for l in 0..=upto {
            let y = gamma.mul(x, gens[l]);
            let v = aut.coord_mul(sx, chosen[l]);
            match sigma[y as usize] {
                None => {
                    sigma[y as usize] = Some(v);
                    queue.push(y);
                }
                Some(w) if w != v => return None,
                _ => {}
            }
        }
    }
    Some(sigma)
}

fn lift_backtrack(
    aut: &AutData,
    gamma: &ElementTable,
    kappa: &[u32],
    cands: &[Vec<AutCoord>],
    chosen: &mut Vec<AutCoord>,
    level: usize,
    ctl: &SearchControl,
) -> Result<Option<Vec<AutCoord>>> {
    for &c in &cands[level] {
        if level == 0 {
            ctl.check()?;
        }
        chosen[level] = c;
        let Some(sigma) = partial_map(aut, gamma, chosen, level) else {
            continue;
        };
        if level + 1 < cands.len() {
            if let Some(done) = lift_backtrack(aut, gamma, kappa, cands, chosen, level + 1, ctl)? {
                return Ok(Some(done));
            }
            continue;
        }
        let sigma: Vec<AutCoord> = sigma
            .into_iter()
            .map(|s| s.expect("generators reach all of Gamma"))
            .collect();
        if sigma.iter().zip(kappa).all(|(s, &k)| s.class == k) {
            return Ok(Some(sigma));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct AutSplitVerdict {
    pub aut_split: bool,
    /// Outer classes generating `Out(F)`, in search order.
    pub out_generators: Vec<usize>,
    /// Complement generators (permutations of element indices), one per entry of `out_generators`.
    pub complement_generators: Vec<Permutation>,
    /// Section `Out(F) -> Aut(F)` indexed by outer class, when split.
    pub lift: Option<Vec<AutCoord>>,
}

/// Outer classes generating `Out(F)`: classes by increasing minimal coset
/// element order, kept when they enlarge the subgroup generated so far.
pub fn out_generating_classes(aut: &AutData) -> Vec<usize> {
    let out = aut.out_order();
    let mut order: Vec<usize> = (1..out).collect();
    order.sort_by_key(|&i| (aut.outer_classes()[i].min_element_order, i));
    let mut inside = vec![false; out];
    inside[0] = true;
    let mut gens = Vec::new();
    for i in order {
        if inside[i] {
            continue;
        }
        gens.push(i);
        let mut members: Vec<usize> = vec![0];
        inside.iter_mut().for_each(|b| *b = false);
        inside[0] = true;
        let mut head = 0;
        while head < members.len() {
            let x = members[head];
            head += 1;
            for &g in &gens {
                let y = aut.out_mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
    }
    gens
}

/// Decides whether `Inn(F)` has a complement in `Aut(F)`.
pub fn is_aut_split(aut: &AutData) -> Result<AutSplitVerdict> {
    is_aut_split_with(aut, &SearchControl::unbounded())
}

pub fn is_aut_split_with(aut: &AutData, ctl: &SearchControl) -> Result<AutSplitVerdict> {
    let out = aut.out_order();
    if out > SPLIT_MAX_OUT {
        return Err(GroupError::SearchBoundExceeded(format!(
            "|Out(F)| = {out} exceeds {SPLIT_MAX_OUT}"
        )));
    }
    let out_gens = out_generating_classes(aut);
    if out_gens.is_empty() {
        return Ok(AutSplitVerdict {
            aut_split: true,
            out_generators: vec![],
            complement_generators: vec![],
            lift: Some(vec![aut.identity()]),
        });
    }
    let regular = aut.out_as_regular(&out_gens)?;
    let gamma = ElementTable::from_generators(out, regular.generators())?;
    let kappa: Vec<u32> = gamma.elements().map(|p| p.image(0)).collect();
    let Some(sigma) = find_lift(aut, &gamma, &kappa, ctl)? else {
        return Ok(AutSplitVerdict {
            aut_split: false,
            out_generators: out_gens,
            complement_generators: vec![],
            lift: None,
        });
    };
    let mut lift = vec![aut.identity(); out];
    for (g, s) in sigma.iter().enumerate() {
        lift[kappa[g] as usize] = *s;
    }
    let complement_generators = out_gens
        .iter()
        .map(|&o| aut.coord_to_perm(lift[o]))
        .collect();
    Ok(AutSplitVerdict {
        aut_split: true,
        out_generators: out_gens,
        complement_generators,
        lift: Some(lift),
    })
}

/// Pointwise check of a complement witness: every generator is an
/// automorphism, the generated subgroup has order `|Out(F)|`, and it meets
/// `Inn(F)` trivially (membership tested through the chain of `Inn(F)`).
pub fn verify_complement(aut: &AutData, gens: &[Permutation]) -> std::result::Result<(), String> {
    let n = aut.table().len();
    for g in gens {
        if !aut.is_automorphism(g) {
            return Err("generator is not an automorphism".into());
        }
    }
    let mut elems = vec![Permutation::identity(n)];
    let mut head = 0;
    while head < elems.len() {
        let x = elems[head].clone();
        head += 1;
        for g in gens {
            let y = x.compose(g);
            if !elems.contains(&y) {
                if elems.len() > aut.out_order() {
                    return Err("complement is larger than Out(F)".into());
                }
                elems.push(y);
            }
        }
    }
    if elems.len() != aut.out_order() {
        return Err(format!(
            "complement has order {} not {}",
            elems.len(),
            aut.out_order()
        ));
    }
    for e in &elems[1..] {
        if aut.inn().contains(e).map_err(|e| e.to_string())? {
            return Err("complement meets Inn(F) nontrivially".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{alternating, cyclic};

    #[test]
    fn cyclic_three() {
        let aut = AutData::compute(&cyclic(3).unwrap()).unwrap();
        assert_eq!(aut.aut_order(), 2);
        assert_eq!(aut.inn_order(), 1);
        assert_eq!(aut.out_order(), 2);
        assert!(is_aut_split(&aut).unwrap().aut_split);
    }

    #[test]
    fn coordinates_multiply_like_permutations() {
        let aut = AutData::compute(&alternating(5).unwrap()).unwrap();
        let all: Vec<AutCoord> = (0..aut.out_order() as u32)
            .flat_map(|c| {
                aut.inner_elements()
                    .iter()
                    .map(move |&f| AutCoord { class: c, inner: f })
            })
            .collect();
        assert_eq!(all.len(), 120);
        for (i, &a) in all.iter().enumerate().step_by(7) {
            let pa = aut.coord_to_perm(a);
            assert!(aut.is_automorphism(&pa));
            assert_eq!(aut.classify(&pa), Some(a));
            assert_eq!(aut.coord_mul(a, aut.coord_inv(a)), aut.identity());
            for &b in all.iter().skip(i % 5).step_by(11) {
                let pb = aut.coord_to_perm(b);
                assert_eq!(aut.coord_to_perm(aut.coord_mul(a, b)), pa.compose(&pb));
            }
        }
    }

    #[test]
    fn trivial_group() {
        let aut = AutData::compute(&PermGroup::trivial(3)).unwrap();
        assert_eq!(aut.aut_order(), 1);
        assert_eq!(aut.out_order(), 1);
        let v = is_aut_split(&aut).unwrap();
        assert!(v.aut_split);
    }
}
