//! Finite groups stored as complete Cayley tables.
//!
//! Elements are dense indices `0..n` and the identity is always index `0`.
//! Everything above this module works with indices; display names are only
//! consulted at I/O boundaries.
//!
//! Products follow the right-to-left convention used for permutations:
//! `mul(a, b)` is "apply `b`, then `a`".

mod build;
mod spec;
mod subgroup;

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

pub use build::{cyclic, dihedral, direct_product, from_table_text, quaternion, symmetric, to_table_text};
pub use spec::GroupSpec;
pub use subgroup::{all_subgroups, right_cosets, AbelianizationMap, CosetPartition, Subgroup};

/// Dense element index. `0` is the identity.
pub type Element = usize;

/// Groups up to this order get an exhaustive associativity check.
pub const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 64;
/// Random triples sampled for larger tables.
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty table: a group needs at least one element")]
    Empty,
    #[error("table row {row} has {len} entries, expected {expected}")]
    Shape { row: usize, len: usize, expected: usize },
    #[error("expected {expected} element names, found {found}")]
    NameCount { expected: usize, found: usize },
    #[error("invalid element name {0:?}: names must be non-empty and contain no whitespace")]
    InvalidName(String),
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("closure: entry table[{a}][{b}] = {value} is not an element index")]
    EntryOutOfRange { a: usize, b: usize, value: usize },
    #[error("identity: no two-sided identity element")]
    NoIdentity,
    #[error("identity: element {found} is the identity but index 0 must be")]
    IdentityNotFirst { found: usize },
    #[error("latin square: row {row} repeats the value {value}")]
    NotLatinRow { row: usize, value: usize },
    #[error("latin square: column {column} repeats the value {value}")]
    NotLatinColumn { column: usize, value: usize },
    #[error("associativity: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("invalid group spec: {0}")]
    InvalidSpec(String),
    #[error("table file {path}: {reason}")]
    TableFile { path: String, reason: String },
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("unknown element name {0:?}")]
    UnknownElement(String),
}

/// A finite group given by its full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Element>,
    inverse: Vec<Element>,
    names: Vec<String>,
    lookup: HashMap<String, Element>,
    abelianization: OnceLock<Box<AbelianizationMap>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("names", &self.names)
            .finish()
    }
}

impl FiniteGroup {
    /// Validates `rows` as a Cayley table and builds the group.
    ///
    /// Checks run in a fixed order (shape, names, closure, identity, Latin
    /// property, associativity) and the first violation is reported.
    pub fn from_table(rows: Vec<Vec<Element>>, names: Vec<String>) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::Shape {
                    row,
                    len: r.len(),
                    expected: n,
                });
            }
        }
        if names.len() != n {
            return Err(GroupError::NameCount {
                expected: n,
                found: names.len(),
            });
        }
        let mut lookup = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(GroupError::InvalidName(name.clone()));
            }
            if lookup.insert(name.clone(), i).is_some() {
                return Err(GroupError::DuplicateName(name.clone()));
            }
        }
        for (a, r) in rows.iter().enumerate() {
            for (b, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(GroupError::EntryOutOfRange { a, b, value });
                }
            }
        }

        let is_identity = |e: usize| (0..n).all(|a| rows[e][a] == a && rows[a][e] == a);
        if !is_identity(0) {
            return match (1..n).find(|&e| is_identity(e)) {
                Some(found) => Err(GroupError::IdentityNotFirst { found }),
                None => Err(GroupError::NoIdentity),
            };
        }

        let mut seen = vec![false; n];
        for (row, r) in rows.iter().enumerate() {
            seen.iter_mut().for_each(|s| *s = false);
            for &value in r {
                if std::mem::replace(&mut seen[value], true) {
                    return Err(GroupError::NotLatinRow { row, value });
                }
            }
        }
        for column in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in &rows {
                let value = r[column];
                if std::mem::replace(&mut seen[value], true) {
                    return Err(GroupError::NotLatinColumn { column, value });
                }
            }
        }

        let table: Vec<Element> = rows.into_iter().flatten().collect();
        let at = |a: usize, b: usize| table[a * n + b];
        let assoc = |a: usize, b: usize, c: usize| at(at(a, b), c) == at(a, at(b, c));
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = StdRng::seed_from_u64(0x5eed_ca71_e7ab_1e00 ^ n as u64);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }

        // Row `a` is a permutation, so exactly one `b` has a*b = 1.
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            *inv = (0..n).find(|&b| at(a, b) == 0).expect("latin row contains identity");
        }

        Ok(Self {
            order: n,
            table,
            inverse,
            names,
            lookup,
            abelianization: OnceLock::new(),
        })
    }

    /// Builds a group from a closure computing products, for internal constructors.
    pub(crate) fn from_fn(
        n: usize,
        names: Vec<String>,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        let rows = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_table(rows, names)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Element) -> Element {
        self.inverse[a]
    }

    /// `a^k` for any integer `k`.
    pub fn pow(&self, a: Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(base, acc))
    }

    pub fn element_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(a, x);
            k += 1;
        }
        k
    }

    /// `a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: Element, b: Element) -> Element {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(ab, self.inv(ba))
    }

    /// Product `x₁ x₂ ⋯ x_k` in the order given.
    pub fn product<I: IntoIterator<Item = Element>>(&self, xs: I) -> Element {
        xs.into_iter().fold(0, |acc, x| self.mul(acc, x))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn name(&self, a: Element) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<Element> {
        self.lookup.get(name.trim()).copied()
    }

    pub fn element(&self, name: &str) -> Result<Element, GroupError> {
        self.find(name)
            .ok_or_else(|| GroupError::UnknownElement(name.trim().to_string()))
    }

    /// Table as rows, e.g. for writing a table file.
    pub fn rows(&self) -> Vec<Vec<Element>> {
        self.table.chunks(self.order).map(<[_]>::to_vec).collect()
    }

    /// The canonical projection onto `G/[G,G]`, computed once per group.
    pub fn abelianization(&self) -> &AbelianizationMap {
        self.abelianization
            .get_or_init(|| Box::new(AbelianizationMap::compute(self)))
    }
}
