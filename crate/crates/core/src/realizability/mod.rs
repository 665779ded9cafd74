//! Deciding whether a multiset `A` of size `|G|` equals `{φ(x)x⁻¹ : x ∈ G}`
//! for some permutation `φ` of `G`.
//!
//! Two independent deciders are provided: [`decide_matching`] assigns a label
//! to every element directly, and [`decide_cycle_tiling`] grows the cycles of
//! `φ` one at a time as translated partial-product sets. Both emit a
//! [`Realization`] that [`verify_certificate`] checks without sharing any
//! search code. [`decide_subgroup_reduction`] handles multisets supported in
//! a subgroup by splitting them into one block per right coset.

mod certificate;
mod cycles;
mod matching;
mod reduction;
mod tiling;

use std::collections::HashSet;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::group::{Element, FiniteGroup};
use crate::multiset::Multiset;
use crate::words::SimpleWord;

pub use certificate::{phi_from_listing, verify_certificate, CertificateError};
pub use cycles::{permutation_to_words, words_to_permutation};
pub use matching::decide_matching;
pub use reduction::{decide_subgroup_reduction, zero_sum_block_partition, ReductionOptions};
pub use tiling::decide_cycle_tiling;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("multiset has {found} elements but the group has order {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("multiset is over {found} elements but the group has order {expected}")]
    UniverseMismatch { expected: usize, found: usize },
    #[error("support is not contained in the subgroup: element {element} lies outside")]
    SupportOutsideSubgroup { element: Element },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("map is not a permutation of the group")]
    NotPermutation,
    #[error("tiles overlap at element {element}")]
    TileOverlap { element: Element },
    #[error("tiles do not cover element {element}")]
    TileGap { element: Element },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Realizable,
    NotRealizable,
    ObstructionFailed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Realizable => "realizable",
            Status::NotRealizable => "not_realizable",
            Status::ObstructionFailed => "obstruction_failed",
        }
    }

    /// `true` only for [`Status::Realizable`]; both other outcomes mean "no".
    pub fn is_realizable(self) -> bool {
        self == Status::Realizable
    }
}

/// One cycle of `φ`: the labels read around it, starting at `translate`.
/// Its vertex set is `P(word)·translate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cycle {
    pub word: SimpleWord,
    pub translate: Element,
}

/// A permutation `φ` with `A = {φ(x)x⁻¹}` and its cycle decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub phi: Vec<Element>,
    pub cycles: Vec<Cycle>,
}

impl Realization {
    /// Builds the certificate from `φ`, reading the cycles off it.
    pub fn from_permutation(g: &FiniteGroup, phi: Vec<Element>) -> Result<Self, RealizeError> {
        let cycles = permutation_to_words(g, &phi)?;
        Ok(Self { phi, cycles })
    }

    /// Builds the certificate from a cycle-tiling decomposition.
    pub fn from_cycles(g: &FiniteGroup, cycles: Vec<Cycle>) -> Result<Self, RealizeError> {
        let phi = words_to_permutation(g, &cycles)?;
        Ok(Self { phi, cycles })
    }

    /// `{φ(x)x⁻¹ : x ∈ G}`.
    pub fn quotient_multiset(&self, g: &FiniteGroup) -> Multiset {
        Multiset::from_elements(g.order(), g.elements().map(|x| g.mul(self.phi[x], g.inv(x))))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    #[serde(serialize_with = "serialize_micros", rename = "elapsed_us")]
    pub elapsed: Duration,
    /// The whole search space was explored without finding a realization.
    pub exhausted: bool,
}

fn serialize_micros<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_micros())
}

/// Result of the abelianization test: the image of `∏ A` in `G/[G,G]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ObstructionCheck {
    Pass,
    Fail { image: Element },
}

impl ObstructionCheck {
    pub fn passed(self) -> bool {
        self == ObstructionCheck::Pass
    }
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub status: Status,
    pub certificate: Option<Realization>,
    pub stats: SearchStats,
    pub obstruction: ObstructionCheck,
}

impl Verdict {
    pub(crate) fn obstructed(obstruction: ObstructionCheck) -> Self {
        Self {
            status: Status::ObstructionFailed,
            certificate: None,
            stats: SearchStats::default(),
            obstruction,
        }
    }

    pub(crate) fn from_search(
        certificate: Option<Realization>,
        nodes: u64,
        elapsed: Duration,
        obstruction: ObstructionCheck,
    ) -> Self {
        let status = if certificate.is_some() {
            Status::Realizable
        } else {
            Status::NotRealizable
        };
        Self {
            status,
            stats: SearchStats {
                nodes,
                elapsed,
                exhausted: certificate.is_none(),
            },
            certificate,
            obstruction,
        }
    }
}

pub(crate) fn check_input(g: &FiniteGroup, a: &Multiset) -> Result<(), RealizeError> {
    if a.universe() != g.order() {
        return Err(RealizeError::UniverseMismatch {
            expected: g.order(),
            found: a.universe(),
        });
    }
    if a.total() != g.order() {
        return Err(RealizeError::SizeMismatch {
            expected: g.order(),
            found: a.total(),
        });
    }
    Ok(())
}

/// Whether `∏ π(a)` over `A` (with multiplicity) is trivial in `G/[G,G]`.
pub fn abelianization_obstruction(g: &FiniteGroup, a: &Multiset) -> Result<ObstructionCheck, RealizeError> {
    check_input(g, a)?;
    Ok(obstruction_image(g, a))
}

pub(crate) fn obstruction_image(g: &FiniteGroup, a: &Multiset) -> ObstructionCheck {
    let ab = g.abelianization();
    let image = ab.quotient.product(a.elements().map(|x| ab.project(x)));
    if image == 0 {
        ObstructionCheck::Pass
    } else {
        ObstructionCheck::Fail { image }
    }
}

/// An ordering `a₁, …, a_N` of `A` with `a_N ⋯ a₁ = 1`, if one exists.
///
/// Depth-first over (remaining multiset, current partial product), with
/// failed states memoized.
pub fn product_one_ordering(g: &FiniteGroup, a: &Multiset) -> Option<Vec<Element>> {
    struct Search<'g> {
        g: &'g FiniteGroup,
        remaining: Vec<u32>,
        order: Vec<Element>,
        failed: HashSet<(Vec<u32>, Element)>,
    }
    impl Search<'_> {
        fn run(&mut self, current: Element, left: usize) -> bool {
            if left == 0 {
                return current == 0;
            }
            if self.failed.contains(&(self.remaining.clone(), current)) {
                return false;
            }
            for x in 0..self.remaining.len() {
                if self.remaining[x] == 0 {
                    continue;
                }
                self.remaining[x] -= 1;
                self.order.push(x);
                if self.run(self.g.mul(x, current), left - 1) {
                    return true;
                }
                self.order.pop();
                self.remaining[x] += 1;
            }
            self.failed.insert((self.remaining.clone(), current));
            false
        }
    }
    let mut search = Search {
        g,
        remaining: a.counts().to_vec(),
        order: Vec::with_capacity(a.total()),
        failed: HashSet::new(),
    };
    search.run(g.identity(), a.total()).then_some(search.order)
}
