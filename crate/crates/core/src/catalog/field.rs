//! Fields of prime-power order small enough for full operation tables.
//!
//! An element of `F_{p^m}` is the index `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`
//! of its coefficient vector modulo a fixed monic irreducible polynomial.

use crate::error::{GroupError, Result};

#[derive(Clone, Debug)]
pub struct SmallField {
    p: u32,
    m: u32,
    /// Monic modulus, lowest coefficient first, length `m + 1`.
    modulus: Vec<u32>,
    add: Vec<u32>,
    mul: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

impl SmallField {
    /// The field of order `q` using the fixed moduli
    /// `x^2+x+1` (q = 4), `x^3+x+1` (q = 8), `x^2+1` (q = 9).
    pub fn of_order(q: u32) -> Result<Self> {
        let (p, m) = prime_power(q as u64)
            .ok_or_else(|| GroupError::InvalidSpec(format!("{q} is not a prime power")))?;
        let modulus = match (p, m) {
            (_, 1) => vec![0, 1],
            (2, 2) => vec![1, 1, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (3, 2) => vec![1, 0, 1],
            _ => {
                return Err(GroupError::InvalidSpec(format!(
                    "no fixed modulus for the field of order {q}"
                )))
            }
        };
        Self::with_modulus(p as u32, modulus)
    }

    /// Builds `F_p[x]/(modulus)`, rejecting reducible moduli.
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(GroupError::InvalidSpec(format!("{p} is not prime")));
        }
        let m = modulus.len() as u32 - 1;
        if m == 0 || *modulus.last().unwrap() != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(GroupError::InvalidSpec(
                "modulus must be monic over F_p".into(),
            ));
        }
        let q = p.pow(m) as usize;
        let mut f = SmallField {
            p,
            m,
            modulus,
            add: vec![0; q * q],
            mul: vec![0; q * q],
        };
        for a in 0..q as u32 {
            for b in 0..q as u32 {
                f.add[a as usize * q + b as usize] =
                    f.encode(&f.poly_add(&f.decode(a), &f.decode(b)));
                f.mul[a as usize * q + b as usize] =
                    f.encode(&f.poly_mulmod(&f.decode(a), &f.decode(b)));
            }
        }
        // A reducible modulus gives zero divisors.
        for a in 1..q {
            if (1..q).any(|b| f.mul[a * q + b] == 0) {
                return Err(GroupError::InvalidSpec("modulus is reducible".into()));
            }
        }
        Ok(f)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.m)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn decode(&self, mut a: u32) -> Vec<u32> {
        (0..self.m)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn poly_add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    fn poly_mulmod(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let m = self.m as usize;
        let mut prod = vec![0u32; 2 * m];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        // Reduce from the top using x^m = -(lower terms of the modulus).
        for k in (m..2 * m).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &mc) in self.modulus[..m].iter().enumerate() {
                let sub = (c * mc) % self.p;
                prod[k - m + i] = (prod[k - m + i] + self.p - sub) % self.p;
            }
        }
        prod.truncate(m);
        prod
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.order() + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.order() + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.order())
            .find(|&b| self.add(a, b) == 0)
            .expect("additive inverse")
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| {
            (1..self.order())
                .find(|&b| self.mul(a, b) == 1)
                .expect("field")
        })
    }

    pub fn mult_order(&self, a: u32) -> u32 {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Smallest index generating the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        let q = self.order();
        (1..q)
            .find(|&a| self.mult_order(a) == q - 1)
            .expect("multiplicative group is cyclic")
    }
}
