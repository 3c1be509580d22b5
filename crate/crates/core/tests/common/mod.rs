//! Naive oracles sharing no code with the library beyond `Permutation`.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use kernelsplit::Permutation;

pub fn p(cycles: &str, degree: usize) -> Permutation {
    Permutation::parse_cycles(cycles, degree).unwrap()
}

/// All elements generated by `gens`, by plain breadth-first closure.
pub fn closure(gens: &[Permutation]) -> Vec<Permutation> {
    let degree = gens[0].degree();
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = out[i].compose(g);
            if seen.insert(y.clone()) {
                out.push(y);
            }
        }
        i += 1;
    }
    out
}

/// Counts automorphisms by trying every assignment of generator images and
/// extending along words.
pub fn count_automorphisms(gens: &[Permutation]) -> usize {
    let elems = closure(gens);
    let n = elems.len();
    let index: HashMap<&Permutation, usize> =
        elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut count = 0;
    let mut images = vec![0usize; gens.len()];
    loop {
        let imgs: Vec<&Permutation> = images.iter().map(|&i| &elems[i]).collect();
        let mut map: HashMap<usize, Permutation> = HashMap::from([(0, elems[0].clone())]);
        let mut queue = vec![0usize];
        let mut ok = true;
        while let Some(x) = queue.pop() {
            let fx = map[&x].clone();
            for (g, h) in gens.iter().zip(&imgs) {
                let y = index[&elems[x].compose(g)];
                let v = fx.compose(h);
                match map.get(&y) {
                    None => {
                        map.insert(y, v);
                        queue.push(y);
                    }
                    Some(w) if *w != v => {
                        ok = false;
                        break;
                    }
                    _ => {}
                }
            }
            if !ok {
                break;
            }
        }
        if ok {
            let distinct: HashSet<&Permutation> = map.values().collect();
            if distinct.len() == n {
                count += 1;
            }
        }
        let mut k = 0;
        loop {
            if k == images.len() {
                return count;
            }
            images[k] += 1;
            if images[k] < n {
                break;
            }
            images[k] = 0;
            k += 1;
        }
    }
}

pub fn center_size(gens: &[Permutation]) -> usize {
    closure(gens)
        .iter()
        .filter(|x| gens.iter().all(|g| x.compose(g) == g.compose(x)))
        .count()
}

/// Sorted conjugacy class sizes.
pub fn class_sizes(gens: &[Permutation]) -> Vec<usize> {
    let elems = closure(gens);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut sizes = Vec::new();
    for x in &elems {
        if seen.contains(x) {
            continue;
        }
        let class: HashSet<Permutation> = elems.iter().map(|g| x.conjugate_by(g)).collect();
        sizes.push(class.len());
        seen.extend(class);
    }
    sizes.sort_unstable();
    sizes
}

/// True if the only normal subgroups are 1 and the group (closure of each
/// class generates the whole group).
pub fn is_simple(gens: &[Permutation]) -> bool {
    let elems = closure(gens);
    elems.iter().skip(1).all(|x| {
        let class: Vec<Permutation> = elems
            .iter()
            .map(|g| x.conjugate_by(g))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        closure(&class).len() == elems.len()
    })
}

pub fn dihedral(n: u32) -> Vec<Permutation> {
    let rot: Vec<u32> = (0..n).collect();
    let refl: Vec<Vec<u32>> = (1..n)
        .filter(|&i| i < n - i)
        .map(|i| vec![i, n - i])
        .collect();
    vec![
        Permutation::from_cycles(n as usize, &[rot]).unwrap(),
        Permutation::from_cycles(n as usize, &refl).unwrap(),
    ]
}

pub type ElementSet = HashSet<Permutation>;

fn close_under(gens: &[Permutation], degree: usize) -> ElementSet {
    if gens.is_empty() {
        return HashSet::from([Permutation::identity(degree)]);
    }
    closure(gens).into_iter().collect()
}

/// Normal closure of `seed` inside the group generated by `ambient`, returned
/// as a generating list together with the element set.
pub fn normal_closure(
    ambient: &[Permutation],
    seed: &[Permutation],
) -> (Vec<Permutation>, ElementSet) {
    let degree = ambient[0].degree();
    let mut gens: Vec<Permutation> = seed.iter().filter(|x| !x.is_identity()).cloned().collect();
    let mut elems = close_under(&gens, degree);
    loop {
        let fresh: Vec<Permutation> = gens
            .iter()
            .flat_map(|h| ambient.iter().map(move |g| h.conjugate_by(g)))
            .filter(|c| !elems.contains(c))
            .collect();
        if fresh.is_empty() {
            return (gens, elems);
        }
        gens.push(fresh[0].clone());
        elems = close_under(&gens, degree);
    }
}

/// Every normal subgroup, as (generators, elements), found as joins of the
/// normal closures of single elements.
pub fn normal_subgroups(gens: &[Permutation]) -> Vec<(Vec<Permutation>, ElementSet)> {
    let elems = closure(gens);
    let mut covered: ElementSet = HashSet::new();
    let mut atoms: Vec<(Vec<Permutation>, ElementSet)> = Vec::new();
    for x in &elems {
        if covered.contains(x) {
            continue;
        }
        let class: ElementSet = elems.iter().map(|g| x.conjugate_by(g)).collect();
        covered.extend(class);
        let atom = normal_closure(gens, std::slice::from_ref(x));
        if !atoms.iter().any(|(_, s)| *s == atom.1) {
            atoms.push(atom);
        }
    }
    let mut all = atoms.clone();
    let mut i = 0;
    while i < all.len() {
        for a in &atoms {
            if a.1.is_subset(&all[i].1) {
                continue;
            }
            let joined: Vec<Permutation> = all[i].0.iter().chain(&a.0).cloned().collect();
            let set = close_under(&joined, gens[0].degree());
            if !all.iter().any(|(_, s)| *s == set) {
                all.push((joined, set));
            }
        }
        i += 1;
    }
    all
}

/// Sorted (order, abelian) composition factors by descending through the
/// largest proper normal subgroup at each step.
pub fn composition_factors(gens: &[Permutation]) -> Vec<(u128, bool)> {
    let mut out = Vec::new();
    let mut current: Vec<Permutation> = gens.to_vec();
    let mut size = closure(&current).len();
    while size > 1 {
        let (ngens, nset) = normal_subgroups(&current)
            .into_iter()
            .filter(|(_, s)| s.len() < size)
            .max_by_key(|(_, s)| s.len())
            .unwrap();
        let all = closure(&current);
        let abelian = all.iter().all(|x| {
            current
                .iter()
                .all(|y| nset.contains(&x.inverse().compose(&y.inverse()).compose(x).compose(y)))
        });
        out.push(((size / nset.len()) as u128, abelian));
        size = nset.len();
        current = if ngens.is_empty() {
            vec![Permutation::identity(gens[0].degree())]
        } else {
            ngens
        };
    }
    out.sort_unstable();
    out
}

/// A5 wr C2 on ten points.
pub fn a5_wreath_c2() -> Vec<Permutation> {
    vec![
        p("(1 2 3 4 5)", 10),
        p("(1 2 3)", 10),
        p("(6 7 8 9 10)", 10),
        p("(6 7 8)", 10),
        p("(1 6)(2 7)(3 8)(4 9)(5 10)", 10),
    ]
}
