//! Base and strong generating set built by deterministic Schreier–Sims.
//!
//! Transversals are stored as Schreier trees (one generator label per orbit
//! point) so memory stays linear in the degree per level. New base points
//! are always the lowest point moved by the residue that needs one.

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

#[derive(Clone, Debug)]
struct Level {
    base_point: u32,
    /// Indices into `StabChain::strong`.
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// For each point: `NONE`, `ROOT` or the strong generator that reached it.
    tree: Vec<u32>,
}

#[derive(Clone, Debug)]
pub(crate) struct StabChain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds the chain. When `known_order` is given and the product of basic
    /// orbit lengths reaches it the construction stops: a partial chain whose
    /// orbit product equals the true group order is already complete. Only
    /// pass an order that is certain.
    pub(crate) fn build(degree: usize, gens: &[Permutation], known_order: Option<u128>) -> Self {
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for g in gens {
            if g.is_identity() || chain.strong.contains(g) {
                continue;
            }
            let idx = chain.push_strong(g.clone());
            if chain
                .levels
                .iter()
                .all(|l| g.image(l.base_point) == l.base_point)
            {
                let b = g.lowest_moved_point().expect("non-identity");
                chain.push_level(b);
            }
            // The generator belongs to every level whose prefix it fixes.
            let mut fixes = true;
            for li in 0..chain.levels.len() {
                if !fixes {
                    break;
                }
                chain.levels[li].gens.push(idx);
                fixes = g.image(chain.levels[li].base_point) == chain.levels[li].base_point;
            }
        }
        for li in 0..chain.levels.len() {
            chain.recompute_orbit(li);
        }
        if chain.done(known_order) {
            return chain;
        }
        chain.schreier_sims(known_order);
        chain
    }

    fn done(&self, known_order: Option<u128>) -> bool {
        matches!(known_order, Some(k) if self.order() == k)
    }

    fn push_strong(&mut self, g: Permutation) -> usize {
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        self.strong.len() - 1
    }

    fn push_level(&mut self, base_point: u32) {
        let mut tree = vec![NONE; self.degree];
        tree[base_point as usize] = ROOT;
        self.levels.push(Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            tree,
        });
    }

    fn recompute_orbit(&mut self, li: usize) {
        let level = &mut self.levels[li];
        let b = level.base_point;
        for &p in &level.orbit {
            level.tree[p as usize] = NONE;
        }
        level.tree[b as usize] = ROOT;
        level.orbit.clear();
        level.orbit.push(b);
        let mut head = 0;
        while head < level.orbit.len() {
            let p = level.orbit[head];
            head += 1;
            for &s in &level.gens {
                let q = self.strong[s].image(p);
                if level.tree[q as usize] == NONE {
                    level.tree[q as usize] = s as u32;
                    level.orbit.push(q);
                }
            }
        }
    }

    /// Transversal element `u` with `base^u = point` at level `li`.
    fn transversal(&self, li: usize, point: u32) -> Permutation {
        let level = &self.levels[li];
        let mut labels = Vec::new();
        let mut p = point;
        while level.tree[p as usize] != ROOT {
            let s = level.tree[p as usize] as usize;
            labels.push(s);
            p = self.strong_inv[s].image(p);
        }
        let mut u = Permutation::identity(self.degree);
        for &s in labels.iter().rev() {
            u.compose_assign(&self.strong[s]);
        }
        u
    }

    /// `g := g * u_p^-1` where `p = base^g`; returns false if `p` is outside the orbit.
    fn strip_level(&self, li: usize, g: &mut Permutation) -> bool {
        let level = &self.levels[li];
        let mut p = g.image(level.base_point);
        if level.tree[p as usize] == NONE {
            return false;
        }
        while level.tree[p as usize] != ROOT {
            let s = level.tree[p as usize] as usize;
            g.compose_assign(&self.strong_inv[s]);
            p = self.strong_inv[s].image(p);
        }
        true
    }

    /// Sifts `g` from level `from`; returns the residue and the level where it stopped.
    pub(crate) fn strip_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for li in from..self.levels.len() {
            if !self.strip_level(li, &mut g) {
                return (g, li);
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    pub(crate) fn strip(&self, g: Permutation) -> (Permutation, usize) {
        self.strip_from(g, 0)
    }

    fn schreier_sims(&mut self, known_order: Option<u128>) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut jump: Option<usize> = None;
            let mut oi = 0;
            'outer: while oi < self.levels[li].orbit.len() {
                let p = self.levels[li].orbit[oi];
                oi += 1;
                let up = self.transversal(li, p);
                let gens = self.levels[li].gens.clone();
                for s in gens {
                    let mut sg = up.compose(&self.strong[s]);
                    // sg * u_{p^s}^-1 fixes the base point of this level.
                    let fine = self.strip_level(li, &mut sg);
                    debug_assert!(fine);
                    if sg.is_identity() {
                        continue;
                    }
                    let (h, j) = self.strip_from(sg, li + 1);
                    if j < self.levels.len() || !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.lowest_moved_point().expect("non-identity residue");
                            self.push_level(b);
                        }
                        let idx = self.push_strong(h);
                        for l in li + 1..=j {
                            self.levels[l].gens.push(idx);
                            self.recompute_orbit(l);
                        }
                        if self.done(known_order) {
                            return;
                        }
                        jump = Some(j);
                        break 'outer;
                    }
                }
            }
            match jump {
                Some(j) => i = j as isize,
                None => i -= 1,
            }
        }
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub(crate) fn contains(&self, g: &Permutation) -> bool {
        let (h, j) = self.strip(g.clone());
        j == self.levels.len() && h.is_identity()
    }

    pub(crate) fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub(crate) fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub(crate) fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }
}
