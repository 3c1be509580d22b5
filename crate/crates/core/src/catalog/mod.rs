//! Constructors for the named groups: `A_n`, `S_n`, `C_n`, `PSL(2,q)`,
//! direct and semidirect products.

mod field;
mod spec;

pub use field::{is_prime, prime_power, SmallField};
pub use spec::GroupSpec;

use crate::autsplit::AutData;
use crate::error::{GroupError, Result};
use crate::perm::Permutation;
use crate::permgroup::{GroupHom, PermGroup};

/// Prime powers accepted by [`make_psl2`].
pub const PSL2_WHITELIST: [u32; 7] = [4, 5, 7, 8, 9, 11, 13];

fn cycle(degree: usize, points: impl IntoIterator<Item = u32>) -> Permutation {
    let c: Vec<u32> = points.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidSpec("A_0 is not defined".into()));
    }
    if n < 3 {
        return Ok(PermGroup::trivial(n));
    }
    let long = if n % 2 == 1 {
        cycle(n, 0..n as u32)
    } else {
        cycle(n, 1..n as u32)
    };
    PermGroup::new(vec![cycle(n, 0..3), long])
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidSpec("S_0 is not defined".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    PermGroup::new(vec![cycle(n, 0..2), cycle(n, 0..n as u32)])
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n == 0 {
        return Err(GroupError::InvalidSpec("C_0 is not defined".into()));
    }
    if n == 1 {
        return Ok(PermGroup::trivial(1));
    }
    PermGroup::new(vec![cycle(n, 0..n as u32)])
}

/// `q (q^2 - 1) / gcd(2, q - 1)`.
pub fn psl2_order(q: u64) -> u64 {
    let g = if q % 2 == 1 { 2 } else { 1 };
    q * (q * q - 1) / g
}

/// The map `x -> (a x + b)/(c x + d)` on the projective line; point `q` is infinity.
fn mobius(f: &SmallField, a: u32, b: u32, c: u32, d: u32) -> Permutation {
    let q = f.order();
    let images = (0..=q)
        .map(|x| {
            if x == q {
                return match f.inv(c) {
                    Some(ci) => f.mul(a, ci),
                    None => q,
                };
            }
            let num = f.add(f.mul(a, x), b);
            let den = f.add(f.mul(c, x), d);
            match f.inv(den) {
                Some(di) => f.mul(num, di),
                None => q,
            }
        })
        .collect();
    Permutation::from_images(images).expect("invertible Mobius map")
}

fn check_psl2_q(q: u32) -> Result<SmallField> {
    if prime_power(q as u64).is_none() {
        return Err(GroupError::InvalidSpec(format!("{q} is not a prime power")));
    }
    if !PSL2_WHITELIST.contains(&q) {
        return Err(GroupError::InvalidSpec(format!(
            "PSL(2,{q}) is outside the supported set {PSL2_WHITELIST:?}"
        )));
    }
    SmallField::of_order(q)
}

/// `PSL(2,q)` on the `q + 1` points of the projective line, generated by
/// `x -> x + 1`, `x -> k x` with `k` the square of a primitive element, and `x -> -1/x`.
pub fn make_psl2(q: u32) -> Result<PermGroup> {
    let f = check_psl2_q(q)?;
    let g = f.primitive_element();
    let k = f.mul(g, g);
    let minus_one = f.neg(1);
    let gens = vec![
        mobius(&f, 1, 1, 0, 1),
        mobius(&f, k, 0, 0, 1),
        mobius(&f, 0, minus_one, 1, 0),
    ];
    let group = PermGroup::new(gens)?;
    let expected = psl2_order(q as u64) as u128;
    if group.order() != expected {
        return Err(GroupError::Invariant(format!(
            "PSL(2,{q}) generated a group of order {}",
            group.order()
        )));
    }
    Ok(group)
}

/// `PGL(2,q)`: adds `x -> g x` for a primitive element `g`.
pub fn make_pgl2(q: u32) -> Result<PermGroup> {
    let f = check_psl2_q(q)?;
    let g = f.primitive_element();
    let minus_one = f.neg(1);
    PermGroup::new(vec![
        mobius(&f, 1, 1, 0, 1),
        mobius(&f, g, 0, 0, 1),
        mobius(&f, 0, minus_one, 1, 0),
    ])
}

#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: PermGroup,
    pub left: GroupHom,
    pub right: GroupHom,
}

/// `G x H` acting on the disjoint union of the two point sets.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<DirectProduct> {
    let (n, m) = (g.degree(), h.degree());
    let total = n + m;
    let left_imgs: Vec<Permutation> = g.generators().iter().map(|x| x.shifted(0, total)).collect();
    let right_imgs: Vec<Permutation> = h.generators().iter().map(|x| x.shifted(n, total)).collect();
    let mut gens: Vec<Permutation> = left_imgs
        .iter()
        .chain(&right_imgs)
        .filter(|x| !x.is_identity())
        .cloned()
        .collect();
    if gens.is_empty() {
        gens.push(Permutation::identity(total));
    }
    let group = PermGroup::with_known_order(gens, g.order() * h.order())?;
    let left = GroupHom::new(g.clone(), group.clone(), left_imgs)?;
    let right = GroupHom::new(h.clone(), group.clone(), right_imgs)?;
    Ok(DirectProduct { group, left, right })
}

#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: PermGroup,
    /// The image of `N`, normal of index `|H|`.
    pub normal: PermGroup,
    /// The image of `H`, a complement to `normal`.
    pub complement: PermGroup,
}

/// `N ⋊ H` for `action: H -> Aut(N)` (into `aut.aut_group()`).
///
/// Realised on the elements of `N` plus the regular points of `H`: `n` acts
/// by right translation `x -> x n`, and `h` by `x -> x^{action(h)}` together
/// with right multiplication on the `H` points.
pub fn semidirect_product(
    aut: &AutData,
    h: &PermGroup,
    action: &GroupHom,
) -> Result<SemidirectProduct> {
    if action.source().generators() != h.generators() {
        return Err(GroupError::NotHomomorphism(
            "action source differs from H".into(),
        ));
    }
    if action.target().degree() != aut.aut_group().degree()
        || !action.target().is_subgroup_of(aut.aut_group())?
    {
        return Err(GroupError::NotHomomorphism(
            "action does not land in Aut(N)".into(),
        ));
    }
    let table = aut.table();
    let nlen = table.len();
    let htable = h.element_table()?;
    let hlen = htable.len();
    let total = nlen + hlen;

    let translations: Vec<Permutation> = table
        .generator_indices()
        .iter()
        .map(|&g| {
            let mut images: Vec<u32> = (0..nlen as u32).map(|x| table.mul(x, g)).collect();
            images.extend((nlen..total).map(|i| i as u32));
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let twists: Vec<Permutation> = htable
        .generator_indices()
        .iter()
        .zip(action.generator_images())
        .map(|(&hg, a)| {
            let mut images: Vec<u32> = a.images().to_vec();
            images.extend((0..hlen as u32).map(|d| (nlen as u32) + htable.mul(d, hg)));
            Permutation::from_images_unchecked(images)
        })
        .collect();
    let order = (nlen * hlen) as u128;
    let mut gens: Vec<Permutation> = translations
        .iter()
        .chain(&twists)
        .filter(|x| !x.is_identity())
        .cloned()
        .collect();
    if gens.is_empty() {
        gens.push(Permutation::identity(total));
    }
    let group = PermGroup::with_known_order(gens, order)?;
    let normal = PermGroup::with_known_order(translations, nlen as u128)?;
    let complement = PermGroup::with_known_order(twists, hlen as u128)?;
    Ok(SemidirectProduct {
        group,
        normal,
        complement,
    })
}
