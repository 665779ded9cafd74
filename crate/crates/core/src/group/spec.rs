use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use super::build::{cyclic, dihedral, direct_product, from_table_text, quaternion, symmetric};
use super::{FiniteGroup, GroupError};

/// A textual description of a group:
/// `cyclic:N`, `symmetric:N`, `dihedral:N`, `quaternion`,
/// `product(SPEC,SPEC)` or `table:PATH`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Symmetric(usize),
    Dihedral(usize),
    Quaternion,
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Table(PathBuf),
}

impl GroupSpec {
    pub fn product(a: GroupSpec, b: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }

    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupSpec::Cyclic(n) => cyclic(*n),
            GroupSpec::Symmetric(n) => symmetric(*n),
            GroupSpec::Dihedral(n) => dihedral(*n),
            GroupSpec::Quaternion => Ok(quaternion()),
            GroupSpec::Product(a, b) => Ok(direct_product(&a.build()?, &b.build()?)),
            GroupSpec::Table(path) => {
                let shown = path.display().to_string();
                let text = std::fs::read_to_string(path).map_err(|e| GroupError::TableFile {
                    path: shown.clone(),
                    reason: e.to_string(),
                })?;
                from_table_text(&text, &shown)
            }
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion => write!(f, "quaternion"),
            GroupSpec::Product(a, b) => write!(f, "product({a},{b})"),
            GroupSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |msg: &str| GroupError::InvalidSpec(format!("{msg} in {s:?}"));
        if s == "quaternion" {
            return Ok(GroupSpec::Quaternion);
        }
        if let Some(inner) = s.strip_prefix("product(").and_then(|r| r.strip_suffix(')')) {
            let split = top_level_comma(inner).ok_or_else(|| bad("product needs two comma-separated specs"))?;
            let (a, b) = (&inner[..split], &inner[split + 1..]);
            return Ok(GroupSpec::product(a.parse()?, b.parse()?));
        }
        if let Some(path) = s.strip_prefix("table:") {
            if path.is_empty() {
                return Err(bad("empty table path"));
            }
            return Ok(GroupSpec::Table(PathBuf::from(path)));
        }
        let (kind, arg) = s.split_once(':').ok_or_else(|| bad("unrecognized group spec"))?;
        let n: usize = arg.trim().parse().map_err(|_| bad(&format!("bad parameter {arg:?}")))?;
        match kind.trim() {
            "cyclic" => Ok(GroupSpec::Cyclic(n)),
            "symmetric" => Ok(GroupSpec::Symmetric(n)),
            "dihedral" => Ok(GroupSpec::Dihedral(n)),
            other => Err(bad(&format!("unknown group family {other:?}"))),
        }
    }
}

/// Byte offset of the first comma at parenthesis depth zero.
pub(crate) fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}
