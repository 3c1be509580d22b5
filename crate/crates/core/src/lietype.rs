//! Closed-form aut-split criterion for finite simple groups of Lie type.
//!
//! `d` is the order of the diagonal automorphisms modulo inner ones. Its
//! values follow the standard tables (Atlas / Gorenstein–Lyons–Solomon):
//!
//! | family | d |
//! |---|---|
//! | `A_l` | `gcd(l+1, q-1)` |
//! | `B_l`, `C_l`, `E_7` | `gcd(2, q-1)` |
//! | `D_l` | `gcd(4, q^l - 1)` |
//! | `E_6` | `gcd(3, q-1)` |
//! | `2A_l` | `gcd(l+1, q+1)` |
//! | `2D_l` | `gcd(4, q^l + 1)` |
//! | `2E_6` | `gcd(3, q+1)` |
//! | others | 1 |
//!
//! Only the `A_1` row is checked against a construction, via
//! `[PGL(2,q) : PSL(2,q)]`. For twisted families `q` is the order of the
//! fixed field: `2A_l(q)` is `PSU(l+1, q)`, defined over `F_{q^2}`, and
//! `m` is the exponent in `q = p^m`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::autsplit::{is_aut_split, AutData};
use crate::catalog::{is_prime, make_psl2, prime_power, PSL2_WHITELIST};
use crate::error::{GroupError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LieFamily {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
    #[serde(rename = "2A")]
    TwistedA,
    #[serde(rename = "2B2")]
    Suzuki,
    #[serde(rename = "2D")]
    TwistedD,
    #[serde(rename = "3D4")]
    Triality,
    #[serde(rename = "2E6")]
    TwistedE6,
    #[serde(rename = "2F4")]
    ReeF4,
    #[serde(rename = "2G2")]
    ReeG2,
}

impl LieFamily {
    pub fn is_twisted(self) -> bool {
        use LieFamily::*;
        matches!(
            self,
            TwistedA | Suzuki | TwistedD | Triality | TwistedE6 | ReeF4 | ReeG2
        )
    }

    /// The rank for families of fixed rank.
    pub fn fixed_rank(self) -> Option<u32> {
        use LieFamily::*;
        match self {
            A | B | C | D | TwistedA | TwistedD => None,
            E6 | TwistedE6 => Some(6),
            E7 => Some(7),
            E8 => Some(8),
            F4 | ReeF4 | Triality => Some(4),
            G2 | ReeG2 | Suzuki => Some(2),
        }
    }

    fn min_rank(self) -> u32 {
        use LieFamily::*;
        match self {
            A => 1,
            B | TwistedA => 2,
            C => 3,
            D | TwistedD => 4,
            other => other.fixed_rank().unwrap(),
        }
    }

    fn prefix(self) -> &'static str {
        use LieFamily::*;
        match self {
            A => "A",
            B => "B",
            C => "C",
            D => "D",
            E6 | E7 | E8 => "E",
            F4 => "F",
            G2 => "G",
            TwistedA => "2A",
            Suzuki => "2B",
            TwistedD => "2D",
            Triality => "3D",
            TwistedE6 => "2E",
            ReeF4 => "2F",
            ReeG2 => "2G",
        }
    }

    /// Resolves a family name with an optional rank suffix (`E6`, `2B2`)
    /// against the given rank.
    pub fn resolve(name: &str, rank: u32) -> Result<LieFamily> {
        use LieFamily::*;
        let name = name.trim().to_ascii_uppercase();
        let bad =
            || GroupError::InvalidLieParams(format!("unknown family {name:?} with rank {rank}"));
        let split = name
            .char_indices()
            .skip(if name.starts_with(['2', '3']) { 1 } else { 0 })
            .find(|(_, c)| c.is_ascii_digit())
            .map(|(i, _)| i)
            .unwrap_or(name.len());
        let (head, suffix) = name.split_at(split);
        if !suffix.is_empty() && suffix.parse::<u32>().ok() != Some(rank) {
            return Err(GroupError::InvalidLieParams(format!(
                "family {name} does not have rank {rank}"
            )));
        }
        let fam = match (head, rank) {
            ("A", _) => A,
            ("B", _) => B,
            ("C", _) => C,
            ("D", _) => D,
            ("E", 6) => E6,
            ("E", 7) => E7,
            ("E", 8) => E8,
            ("F", 4) => F4,
            ("G", 2) => G2,
            ("2A", _) => TwistedA,
            ("2B", 2) => Suzuki,
            ("2D", _) => TwistedD,
            ("3D", 4) => Triality,
            ("2E", 6) => TwistedE6,
            ("2F", 4) => ReeF4,
            ("2G", 2) => ReeG2,
            _ => return Err(bad()),
        };
        Ok(fam)
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())?;
        if let Some(r) = self.fixed_rank() {
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

impl FromStr for LieFamily {
    type Err = GroupError;

    /// Accepts names that determine the family without a rank.
    fn from_str(s: &str) -> Result<Self> {
        let upper = s.trim().to_ascii_uppercase();
        let rank = upper
            .trim_start_matches(['2', '3'])
            .trim_start_matches(char::is_alphabetic)
            .parse()
            .unwrap_or(0);
        Self::resolve(&upper, rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieTypeParams {
    pub family: LieFamily,
    pub rank: u32,
    pub p: u64,
    pub m: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LieBranch {
    /// Untwisted, not `D_l`: `gcd((q-1)/d, d, m) = 1`.
    Chevalley,
    /// `D_l`: `gcd((q^l-1)/d, d, m) = 1`.
    ChevalleyD,
    /// Twisted, not `2D_l`: `gcd((q+1)/d, d, m) = 1`.
    Twisted,
    /// `2D_l`: `l` odd or `p = 2`.
    TwistedD,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieVerdict {
    pub params: LieTypeParams,
    pub q: u128,
    pub d: u128,
    /// The three gcd arguments; absent on the `2D_l` branch.
    pub triple: Option<[u128; 3]>,
    pub branch: LieBranch,
    pub aut_split: bool,
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl LieTypeParams {
    pub fn new(family: LieFamily, rank: u32, p: u64, m: u32) -> Result<Self> {
        let params = LieTypeParams { family, rank, p, m };
        params.validate()?;
        Ok(params)
    }

    pub fn q(&self) -> Result<u128> {
        (self.p as u128)
            .checked_pow(self.m)
            .ok_or_else(|| GroupError::InvalidLieParams(format!("{}^{} overflows", self.p, self.m)))
    }

    fn q_pow_rank(&self) -> Result<u128> {
        self.q()?
            .checked_pow(self.rank)
            .ok_or_else(|| GroupError::InvalidLieParams("q^rank overflows".into()))
    }

    pub fn validate(&self) -> Result<()> {
        use LieFamily::*;
        let err = |msg: String| Err(GroupError::InvalidLieParams(msg));
        if !is_prime(self.p) {
            return err(format!("{} is not prime", self.p));
        }
        if self.m == 0 {
            return err("m must be at least 1".into());
        }
        let fam = self.family;
        if let Some(r) = fam.fixed_rank() {
            if self.rank != r {
                return err(format!("{fam} has rank {r}, not {}", self.rank));
            }
        } else if self.rank < fam.min_rank() {
            return err(format!(
                "{} requires rank at least {}",
                fam.prefix(),
                fam.min_rank()
            ));
        }
        match fam {
            Suzuki | ReeF4 if self.p != 2 || self.m.is_multiple_of(2) => {
                return err(format!("{fam} requires p = 2 and m odd"));
            }
            ReeG2 if self.p != 3 || self.m.is_multiple_of(2) => {
                return err("2G2 requires p = 3 and m odd".into())
            }
            _ => {}
        }
        let q = self.q()?;
        let non_simple = matches!(
            (fam, self.rank, q),
            (A, 1, 2)
                | (A, 1, 3)
                | (B, 2, 2)
                | (G2, _, 2)
                | (TwistedA, 2, 2)
                | (Suzuki, _, 2)
                | (ReeF4, _, 2)
                | (ReeG2, _, 3)
        );
        if non_simple {
            return err(format!("{}({q}) is not simple", self.label()));
        }
        self.q_pow_rank()?;
        Ok(())
    }

    pub fn label(&self) -> String {
        match self.family.fixed_rank() {
            Some(_) => self.family.to_string(),
            None => format!("{}{}", self.family.prefix(), self.rank),
        }
    }
}

/// Diagonal automorphism order `d` from the table in the module docs.
pub fn diagonal_order_d(params: &LieTypeParams) -> Result<u128> {
    use LieFamily::*;
    params.validate()?;
    let q = params.q()?;
    let l = params.rank as u128;
    Ok(match params.family {
        A => gcd(l + 1, q - 1),
        B | C | E7 => gcd(2, q - 1),
        D => gcd(4, params.q_pow_rank()? - 1),
        E6 => gcd(3, q - 1),
        TwistedA => gcd(l + 1, q + 1),
        TwistedD => gcd(4, params.q_pow_rank()? + 1),
        TwistedE6 => gcd(3, q + 1),
        E8 | F4 | G2 | Suzuki | ReeF4 | ReeG2 | Triality => 1,
    })
}

pub fn is_aut_split_lie(params: &LieTypeParams) -> Result<LieVerdict> {
    use LieFamily::*;
    let d = diagonal_order_d(params)?;
    let q = params.q()?;
    let m = params.m as u128;
    let (branch, numerator) = match params.family {
        D => (LieBranch::ChevalleyD, Some(params.q_pow_rank()? - 1)),
        TwistedD => (LieBranch::TwistedD, None),
        f if f.is_twisted() => (LieBranch::Twisted, Some(q + 1)),
        _ => (LieBranch::Chevalley, Some(q - 1)),
    };
    let (triple, aut_split) = match numerator {
        Some(num) => {
            debug_assert_eq!(num % d, 0);
            let t = [num / d, d, m];
            (Some(t), gcd(gcd(t[0], t[1]), t[2]) == 1)
        }
        None => (None, params.rank % 2 == 1 || params.p == 2),
    };
    Ok(LieVerdict {
        params: *params,
        q,
        d,
        triple,
        branch,
        aut_split,
    })
}

/// Closed-form and search verdicts for `PSL(2,q) = A_1(q)`.
pub fn psl2_verdicts(q: u32) -> Result<(LieVerdict, bool)> {
    if !PSL2_WHITELIST.contains(&q) {
        return Err(GroupError::InvalidSpec(format!(
            "q = {q} is outside {PSL2_WHITELIST:?}"
        )));
    }
    let (p, m) = prime_power(q as u64).expect("whitelisted q is a prime power");
    let lie = is_aut_split_lie(&LieTypeParams::new(LieFamily::A, 1, p, m)?)?;
    let aut = AutData::compute(&make_psl2(q)?)?;
    let search = is_aut_split(&aut)?.aut_split;
    Ok((lie, search))
}

/// True iff the closed form agrees with the complement search on `PSL(2,q)`.
pub fn crosscheck_psl2(q: u32) -> Result<bool> {
    let (lie, search) = psl2_verdicts(q)?;
    Ok(lie.aut_split == search)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1(p: u64, m: u32) -> LieVerdict {
        is_aut_split_lie(&LieTypeParams::new(LieFamily::A, 1, p, m).unwrap()).unwrap()
    }

    #[test]
    fn a1_examples() {
        let v = a1(3, 2);
        assert_eq!((v.d, v.triple, v.aut_split), (2, Some([4, 2, 2]), false));
        let v = a1(5, 1);
        assert_eq!((v.d, v.triple, v.aut_split), (2, Some([2, 2, 1]), true));
        let v = a1(2, 3);
        assert_eq!((v.d, v.triple, v.aut_split), (1, Some([7, 1, 3]), true));
        assert_eq!(a1(2, 2).d, 1);
    }

    #[test]
    fn twisted_d() {
        let v =
            is_aut_split_lie(&LieTypeParams::new(LieFamily::TwistedD, 4, 3, 1).unwrap()).unwrap();
        assert_eq!(v.branch, LieBranch::TwistedD);
        assert!(!v.aut_split);
        let v =
            is_aut_split_lie(&LieTypeParams::new(LieFamily::TwistedD, 5, 3, 1).unwrap()).unwrap();
        assert!(v.aut_split);
        let v =
            is_aut_split_lie(&LieTypeParams::new(LieFamily::TwistedD, 4, 2, 1).unwrap()).unwrap();
        assert!(v.aut_split);
    }

    #[test]
    fn rejects_invalid() {
        for (fam, rank, p, m) in [
            (LieFamily::A, 1, 2, 1),
            (LieFamily::A, 1, 3, 1),
            (LieFamily::B, 2, 2, 1),
            (LieFamily::G2, 2, 2, 1),
            (LieFamily::TwistedA, 2, 2, 1),
            (LieFamily::Suzuki, 2, 2, 1),
            (LieFamily::Suzuki, 2, 2, 2),
            (LieFamily::ReeG2, 2, 3, 1),
            (LieFamily::D, 3, 5, 1),
            (LieFamily::E6, 7, 5, 1),
            (LieFamily::A, 1, 4, 1),
            (LieFamily::A, 1, 5, 0),
        ] {
            assert!(
                LieTypeParams::new(fam, rank, p, m).is_err(),
                "{fam} {rank} {p} {m}"
            );
        }
    }

    #[test]
    fn family_names() {
        assert_eq!(LieFamily::resolve("e", 6).unwrap(), LieFamily::E6);
        assert_eq!(LieFamily::resolve("E6", 6).unwrap(), LieFamily::E6);
        assert_eq!(LieFamily::resolve("2B2", 2).unwrap(), LieFamily::Suzuki);
        assert_eq!(LieFamily::resolve("2d", 4).unwrap(), LieFamily::TwistedD);
        assert!(LieFamily::resolve("E6", 7).is_err());
        assert!(LieFamily::resolve("H", 3).is_err());
        assert_eq!("3D4".parse::<LieFamily>().unwrap(), LieFamily::Triality);
        assert_eq!(LieFamily::TwistedE6.to_string(), "2E6");
    }
}
