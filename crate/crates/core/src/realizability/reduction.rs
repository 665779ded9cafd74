use std::collections::{HashMap, HashSet};
use std::time::Instant;

use crate::group::{right_cosets, Element, FiniteGroup, Subgroup};
use crate::multiset::Multiset;

use super::{check_input, decide_matching, obstruction_image, Realization, RealizeError, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionOptions {
    /// For abelian `H`, accept a block as soon as its product is the identity
    /// instead of running the matching decider on it.
    pub abelian_fast_path: bool,
}

impl Default for ReductionOptions {
    fn default() -> Self {
        Self {
            abelian_fast_path: true,
        }
    }
}

/// Decides a multiset supported in `H` by splitting it into `[G:H]` blocks
/// of size `|H|`, each realizable in `H`. A positive answer places block `j`
/// on the right coset `Hx_j` via `φ(h x_j) = ψ_j(h) x_j`.
pub fn decide_subgroup_reduction(
    g: &FiniteGroup,
    h: &Subgroup,
    a: &Multiset,
    options: ReductionOptions,
) -> Result<Verdict, RealizeError> {
    check_input(g, a)?;
    if let Some(element) = a.support().find(|&x| !h.contains(x)) {
        return Err(RealizeError::SupportOutsideSubgroup { element });
    }
    let obstruction = obstruction_image(g, a);
    if !obstruction.passed() {
        return Ok(Verdict::obstructed(obstruction));
    }
    let start = Instant::now();
    let (hg, embedding) = h.as_group(g);
    let local = Multiset::from_elements(
        hg.order(),
        a.elements()
            .map(|x| embedding.binary_search(&x).expect("support inside subgroup")),
    );

    let mut blocks = BlockOracle::new(&hg, options.abelian_fast_path && hg.is_abelian());
    let mut nodes = 0;
    let mut partition = partition_into_blocks(&local, hg.order(), &mut nodes, |b| blocks.accepts(b));
    let mut realizations = partition.as_ref().and_then(|p| blocks.realize_all(p));
    if partition.is_some() && realizations.is_none() {
        // A product-one block failed to realize; redo the search exactly.
        let mut exact = BlockOracle::new(&hg, false);
        partition = partition_into_blocks(&local, hg.order(), &mut nodes, |b| exact.accepts(b));
        realizations = partition.as_ref().and_then(|p| exact.realize_all(p));
    }

    let certificate = realizations.map(|psis| {
        let cosets = right_cosets(g, h);
        let mut phi = vec![0; g.order()];
        for (psi, &x) in psis.iter().zip(&cosets.representatives) {
            for (local_h, &image) in psi.iter().enumerate() {
                phi[g.mul(embedding[local_h], x)] = g.mul(embedding[image], x);
            }
        }
        Realization::from_permutation(g, phi).expect("coset placement is a permutation")
    });
    Ok(Verdict::from_search(certificate, nodes, start.elapsed(), obstruction))
}

/// Splits `a` (over an abelian group `h`) into `r` blocks of size `|H|`, each
/// with product the identity.
pub fn zero_sum_block_partition(
    h: &FiniteGroup,
    a: &Multiset,
    r: usize,
) -> Result<Option<Vec<Multiset>>, RealizeError> {
    if !h.is_abelian() {
        return Err(RealizeError::NotAbelian);
    }
    if a.universe() != h.order() {
        return Err(RealizeError::UniverseMismatch {
            expected: h.order(),
            found: a.universe(),
        });
    }
    if a.total() != r * h.order() {
        return Err(RealizeError::SizeMismatch {
            expected: r * h.order(),
            found: a.total(),
        });
    }
    let mut nodes = 0;
    Ok(partition_into_blocks(a, h.order(), &mut nodes, |b| {
        h.product(b.elements()) == 0
    }))
}

struct BlockOracle<'h> {
    h: &'h FiniteGroup,
    product_only: bool,
    accepted: HashMap<Multiset, bool>,
    realized: HashMap<Multiset, Option<Vec<Element>>>,
}

impl<'h> BlockOracle<'h> {
    fn new(h: &'h FiniteGroup, product_only: bool) -> Self {
        Self {
            h,
            product_only,
            accepted: HashMap::new(),
            realized: HashMap::new(),
        }
    }

    fn realize(&mut self, block: &Multiset) -> Option<Vec<Element>> {
        if let Some(hit) = self.realized.get(block) {
            return hit.clone();
        }
        let verdict = decide_matching(self.h, block).expect("block has size |H|");
        let psi = verdict.certificate.map(|c| c.phi);
        self.realized.insert(block.clone(), psi.clone());
        psi
    }

    fn accepts(&mut self, block: &Multiset) -> bool {
        if let Some(&hit) = self.accepted.get(block) {
            return hit;
        }
        let ok = if self.product_only {
            self.h.product(block.elements()) == 0
        } else {
            self.realize(block).is_some()
        };
        self.accepted.insert(block.clone(), ok);
        ok
    }

    fn realize_all(&mut self, blocks: &[Multiset]) -> Option<Vec<Vec<Element>>> {
        blocks.iter().map(|b| self.realize(b)).collect()
    }
}

/// Partitions `a` into blocks of `block_size` accepted by `accept`.
///
/// Blocks are unordered, so each step only tries blocks containing the
/// smallest remaining element; residual multisets that cannot be finished
/// are memoized.
fn partition_into_blocks(
    a: &Multiset,
    block_size: usize,
    nodes: &mut u64,
    mut accept: impl FnMut(&Multiset) -> bool,
) -> Option<Vec<Multiset>> {
    let mut failed = HashSet::new();
    let mut chosen = Vec::new();
    if split(a, block_size, nodes, &mut accept, &mut failed, &mut chosen) {
        Some(chosen)
    } else {
        None
    }
}

fn split(
    residual: &Multiset,
    block_size: usize,
    nodes: &mut u64,
    accept: &mut impl FnMut(&Multiset) -> bool,
    failed: &mut HashSet<Multiset>,
    chosen: &mut Vec<Multiset>,
) -> bool {
    let Some(first) = residual.support().next() else {
        return true;
    };
    if failed.contains(residual) {
        return false;
    }
    for block in blocks_containing(residual, first, block_size) {
        *nodes += 1;
        if !accept(&block) {
            continue;
        }
        let rest = residual.difference(&block);
        chosen.push(block);
        if split(&rest, block_size, nodes, accept, failed, chosen) {
            return true;
        }
        chosen.pop();
    }
    failed.insert(residual.clone());
    false
}

/// Sub-multisets of `residual` of the given size with at least one `first`,
/// in increasing lexicographic order of count vectors.
fn blocks_containing(residual: &Multiset, first: Element, size: usize) -> Vec<Multiset> {
    let support: Vec<Element> = residual.support().collect();
    let mut out = Vec::new();
    let mut counts = vec![0u32; residual.universe()];
    fn rec(
        i: usize,
        left: u32,
        support: &[Element],
        first: Element,
        residual: &Multiset,
        counts: &mut Vec<u32>,
        out: &mut Vec<Multiset>,
    ) {
        if i == support.len() {
            if left == 0 {
                out.push(Multiset::new(counts.clone()));
            }
            return;
        }
        let x = support[i];
        let lo = u32::from(x == first);
        for c in lo..=residual.count(x).min(left) {
            counts[x] = c;
            rec(i + 1, left - c, support, first, residual, counts, out);
        }
        counts[x] = 0;
    }
    rec(0, size as u32, &support, first, residual, &mut counts, &mut out);
    out.sort();
    out
}
