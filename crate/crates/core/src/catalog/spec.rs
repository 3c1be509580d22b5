//! Text grammar for groups:
//!
//! ```text
//! spec   := factor ( "x" factor )*
//! factor := "A"n | "S"n | "C"n | "PSL(2," q ")" | "perm:" gens | "(" spec ")"
//! gens   := cycles ( ";" cycles )*          (1-indexed cycle notation)
//! ```

use std::fmt;

use super::{alternating, cyclic, direct_product, make_psl2, symmetric};
use crate::error::{GroupError, Result};
use crate::perm::{parse_cycle_list, Permutation};
use crate::permgroup::PermGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Alternating(usize),
    Symmetric(usize),
    Cyclic(usize),
    Psl2(u32),
    Product(Vec<GroupSpec>),
    /// 0-indexed cycles per generator, on `degree` points.
    Generators {
        degree: usize,
        gens: Vec<Vec<Vec<u32>>>,
    },
}

impl GroupSpec {
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Err(GroupError::Parse("empty group spec".into()));
        }
        let parts = split_top_level(text)?;
        if parts.len() > 1 {
            let factors = parts
                .iter()
                .map(|p| Self::parse(p))
                .collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Product(factors));
        }
        Self::parse_factor(text)
    }

    fn parse_factor(text: &str) -> Result<Self> {
        if let Some(inner) = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            if !inner.trim_start().starts_with(|c: char| c.is_ascii_digit()) {
                return Self::parse(inner);
            }
        }
        if let Some(rest) = text.strip_prefix("perm:") {
            let mut gens = Vec::new();
            let mut degree = 0usize;
            for g in rest.split(';') {
                let cycles = parse_cycle_list(g)?;
                for c in &cycles {
                    for &pt in c {
                        degree = degree.max(pt as usize + 1);
                    }
                }
                gens.push(cycles);
            }
            if gens.is_empty() {
                return Err(GroupError::Parse(
                    "perm: needs at least one generator".into(),
                ));
            }
            return Ok(GroupSpec::Generators {
                degree: degree.max(1),
                gens,
            });
        }
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(q) = compact
            .strip_prefix("PSL(2,")
            .and_then(|t| t.strip_suffix(')'))
        {
            let q = q
                .parse()
                .map_err(|_| GroupError::Parse(format!("bad field order in {text:?}")))?;
            return Ok(GroupSpec::Psl2(q));
        }
        let (head, num) = compact.split_at(
            compact
                .find(|c: char| c.is_ascii_digit())
                .unwrap_or(compact.len()),
        );
        let n: usize = num
            .parse()
            .map_err(|_| GroupError::Parse(format!("unrecognised group {text:?}")))?;
        match head {
            "A" => Ok(GroupSpec::Alternating(n)),
            "S" => Ok(GroupSpec::Symmetric(n)),
            "C" => Ok(GroupSpec::Cyclic(n)),
            _ => Err(GroupError::Parse(format!("unrecognised group {text:?}"))),
        }
    }

    /// The canonical permutation group for this spec.
    pub fn build(&self) -> Result<PermGroup> {
        match self {
            GroupSpec::Alternating(n) => alternating(*n),
            GroupSpec::Symmetric(n) => symmetric(*n),
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Psl2(q) => make_psl2(*q),
            GroupSpec::Product(factors) => {
                let mut iter = factors.iter();
                let first = iter
                    .next()
                    .ok_or_else(|| GroupError::InvalidSpec("empty product".into()))?;
                let mut acc = first.build()?;
                for f in iter {
                    acc = direct_product(&acc, &f.build()?)?.group;
                }
                Ok(acc)
            }
            GroupSpec::Generators { degree, gens } => {
                let perms = gens
                    .iter()
                    .map(|c| Permutation::from_cycles(*degree, c))
                    .collect::<Result<Vec<_>>>()?;
                PermGroup::new(perms)
            }
        }
    }
}

fn split_top_level(text: &str) -> Result<Vec<String>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(GroupError::Parse(format!(
                "unbalanced parentheses in {text:?}"
            )));
        }
        if depth == 0 && (c == 'x' || c == '×') {
            parts.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    if depth != 0 {
        return Err(GroupError::Parse(format!(
            "unbalanced parentheses in {text:?}"
        )));
    }
    parts.push(cur);
    if parts.iter().any(|p| p.trim().is_empty()) {
        return Err(GroupError::Parse(format!("empty factor in {text:?}")));
    }
    Ok(parts)
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Psl2(q) => write!(f, "PSL(2,{q})"),
            GroupSpec::Product(fs) => {
                let parts: Vec<String> = fs
                    .iter()
                    .map(|s| match s {
                        GroupSpec::Product(_) => format!("({s})"),
                        _ => s.to_string(),
                    })
                    .collect();
                f.write_str(&parts.join(" x "))
            }
            GroupSpec::Generators { degree, gens } => {
                let parts: Vec<String> = gens
                    .iter()
                    .map(|c| {
                        Permutation::from_cycles(*degree, c)
                            .map(|p| p.to_cycle_string())
                            .unwrap_or_else(|_| "?".into())
                    })
                    .collect();
                write!(f, "perm:{}", parts.join("; "))
            }
        }
    }
}
