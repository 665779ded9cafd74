//! Left partial products and simple product-one words.
//!
//! For a word `(g₁, …, g_ℓ)` the partials are `p₀ = 1` and `p_j = g_j p_{j−1}`.
//! The word is *simple product-one* when `p_ℓ = 1` and `p₀, …, p_{ℓ−1}` are
//! pairwise distinct; `P(w)` is the set of those first `ℓ` partials.

use serde::Serialize;
use thiserror::Error;

use crate::group::{Element, FiniteGroup};
use crate::multiset::Multiset;

/// `(p₀, …, p_ℓ)` for the given letters.
pub fn partial_products(g: &FiniteGroup, letters: &[Element]) -> Vec<Element> {
    let mut partials = Vec::with_capacity(letters.len() + 1);
    partials.push(g.identity());
    let mut p = g.identity();
    for &x in letters {
        p = g.mul(x, p);
        partials.push(p);
    }
    partials
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rejection {
    #[error("empty word")]
    Empty,
    #[error("full product is element {product}, not the identity")]
    NontrivialProduct { product: Element },
    #[error("partial products p{first} and p{second} coincide")]
    RepeatedPartial { first: usize, second: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleWord {
    letters: Vec<Element>,
    partials: Vec<Element>,
}

pub fn check_simple(g: &FiniteGroup, letters: &[Element]) -> Result<SimpleWord, Rejection> {
    if letters.is_empty() {
        return Err(Rejection::Empty);
    }
    let partials = partial_products(g, letters);
    let len = letters.len();
    let mut first_seen = vec![usize::MAX; g.order()];
    for (j, &p) in partials[..len].iter().enumerate() {
        if first_seen[p] != usize::MAX {
            return Err(Rejection::RepeatedPartial {
                first: first_seen[p],
                second: j,
            });
        }
        first_seen[p] = j;
    }
    if partials[len] != g.identity() {
        return Err(Rejection::NontrivialProduct { product: partials[len] });
    }
    Ok(SimpleWord {
        letters: letters.to_vec(),
        partials,
    })
}

impl SimpleWord {
    pub fn letters(&self) -> &[Element] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `(p₀, …, p_ℓ)`, with `p_ℓ` the identity.
    pub fn partials(&self) -> &[Element] {
        &self.partials
    }

    /// `P(w)` in partial-product order.
    pub fn pset(&self) -> &[Element] {
        &self.partials[..self.letters.len()]
    }

    /// `P(w)·x`.
    pub fn tile(&self, g: &FiniteGroup, x: Element) -> Vec<Element> {
        self.pset().iter().map(|&p| g.mul(p, x)).collect()
    }

    pub fn letter_multiset(&self, n: usize) -> Multiset {
        Multiset::from_elements(n, self.letters.iter().copied())
    }

    /// `(g_{k+1}, …, g_ℓ, g₁, …, g_k)`. Its partial-product set is `P(w)·p_k⁻¹`.
    pub fn rotate(&self, g: &FiniteGroup, k: usize) -> SimpleWord {
        let mut letters = self.letters.clone();
        letters.rotate_left(k % self.len());
        let partials = partial_products(g, &letters);
        SimpleWord { letters, partials }
    }

    /// Number of distinct rotations of the letter sequence.
    pub fn rotation_class_size(&self) -> usize {
        let len = self.len();
        (1..=len)
            .find(|&p| len.is_multiple_of(p) && (0..len).all(|i| self.letters[i] == self.letters[(i + p) % len]))
            .unwrap_or(len)
    }

    pub fn is_canonical(&self) -> bool {
        is_min_rotation(&self.letters)
    }
}

fn is_min_rotation(letters: &[Element]) -> bool {
    let len = letters.len();
    (1..len).all(|k| {
        let rotated = letters[k..].iter().chain(&letters[..k]);
        letters.iter().le(rotated)
    })
}

/// The lexicographically smallest rotation of `w`.
pub fn canonical_rotation(g: &FiniteGroup, w: &SimpleWord) -> SimpleWord {
    let len = w.len();
    let best = (0..len)
        .min_by(|&a, &b| {
            let ra = w.letters[a..].iter().chain(&w.letters[..a]);
            let rb = w.letters[b..].iter().chain(&w.letters[..b]);
            ra.cmp(rb)
        })
        .unwrap_or(0);
    w.rotate(g, best)
}

/// A canonical word together with the number of its distinct rotations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumeratedWord {
    #[serde(skip)]
    pub word: SimpleWord,
    pub letters: Vec<Element>,
    pub rotation_class_size: usize,
}

/// All simple product-one words whose letters fit inside `budget`, one per
/// rotation class, sorted by length and then letters.
///
/// `max_len` defaults to `min(|G|, |budget|)`.
pub fn enumerate_simple_words(g: &FiniteGroup, budget: &Multiset, max_len: Option<usize>) -> Vec<EnumeratedWord> {
    let cap = g.order().min(budget.total());
    let max_len = max_len.map_or(cap, |m| m.min(cap));
    let mut search = WordSearch {
        g,
        remaining: budget.counts().to_vec(),
        visited: vec![false; g.order()],
        letters: Vec::with_capacity(max_len),
        max_len,
        out: Vec::new(),
    };
    search.visited[0] = true;
    for first in budget.support().collect::<Vec<_>>() {
        search.extend(first, first, g.identity());
    }
    let mut out = search.out;
    out.sort_by(|a, b| (a.len(), a.letters()).cmp(&(b.len(), b.letters())));
    out.into_iter()
        .map(|word| EnumeratedWord {
            letters: word.letters.clone(),
            rotation_class_size: word.rotation_class_size(),
            word,
        })
        .collect()
}

struct WordSearch<'g> {
    g: &'g FiniteGroup,
    remaining: Vec<u32>,
    visited: Vec<bool>,
    letters: Vec<Element>,
    max_len: usize,
    out: Vec<SimpleWord>,
}

impl WordSearch<'_> {
    /// Appends `letter` to the current prefix whose last partial is `current`.
    /// Canonical words start with their smallest letter, so later letters are
    /// never below `first`.
    fn extend(&mut self, first: Element, letter: Element, current: Element) {
        if self.letters.len() == self.max_len || self.remaining[letter] == 0 {
            return;
        }
        let next = self.g.mul(letter, current);
        if next != 0 && self.visited[next] {
            return;
        }
        self.remaining[letter] -= 1;
        self.letters.push(letter);
        if next == 0 {
            if is_min_rotation(&self.letters) {
                self.out.push(SimpleWord {
                    letters: self.letters.clone(),
                    partials: partial_products(self.g, &self.letters),
                });
            }
        } else {
            self.visited[next] = true;
            for following in first..self.g.order() {
                self.extend(first, following, next);
            }
            self.visited[next] = false;
        }
        self.letters.pop();
        self.remaining[letter] += 1;
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use proptest::prelude::*;

    use super::*;
    use crate::group::{cyclic, dihedral, quaternion, symmetric};

    fn s3() -> (FiniteGroup, Element, Element) {
        let g = symmetric(3).unwrap();
        let s = g.element("(12)").unwrap();
        let t = g.element("(23)").unwrap();
        (g, s, t)
    }

    #[test]
    fn alternating_word_closes_after_six() {
        let (g, s, t) = s3();
        let w = [s, t, s, t, s, t];
        let p = partial_products(&g, &w);
        assert_eq!(p[6], 0);
        let pset: BTreeSet<_> = p[..6].iter().copied().collect();
        assert_eq!(pset.len(), 6);
        assert_eq!(partial_products(&g, &[0]), vec![0, 0]);
    }

    #[test]
    fn simple_checks() {
        let (g, s, t) = s3();
        let ss = check_simple(&g, &[s, s]).unwrap();
        assert_eq!(ss.pset(), &[0, s]);
        assert_eq!(
            check_simple(&g, &[s, t]).unwrap_err(),
            Rejection::NontrivialProduct { product: g.mul(t, s) }
        );
        assert_eq!(
            check_simple(&g, &[s, s, s, s]).unwrap_err(),
            Rejection::RepeatedPartial { first: 0, second: 2 }
        );
        assert_eq!(check_simple(&g, &[]).unwrap_err(), Rejection::Empty);
        assert!(check_simple(&g, &[0]).is_ok());
        assert!(check_simple(&g, &[0, 0]).is_err());
    }

    #[test]
    fn canonical_rotations() {
        let (g, s, t) = s3();
        assert!(s < t);
        let w = check_simple(&g, &[t, s, t, s, t, s]).unwrap();
        assert_eq!(canonical_rotation(&g, &w).letters(), &[s, t, s, t, s, t]);
        assert_eq!(w.rotation_class_size(), 2);
        let ss = check_simple(&g, &[s, s]).unwrap();
        assert_eq!(canonical_rotation(&g, &ss), ss);
        assert_eq!(ss.rotation_class_size(), 1);
        let one = check_simple(&g, &[0]).unwrap();
        assert_eq!(canonical_rotation(&g, &one), one);
    }

    #[test]
    fn s3_words_over_two_involutions() {
        let (g, s, t) = s3();
        let budget = Multiset::empty(6).with(s, 3).with(t, 3);
        let words: Vec<Vec<Element>> = enumerate_simple_words(&g, &budget, None)
            .into_iter()
            .map(|w| w.letters)
            .collect();
        assert_eq!(words, vec![vec![s, s], vec![t, t], vec![s, t, s, t, s, t]]);

        let tight = Multiset::empty(6).with(s, 2).with(t, 4);
        let words: Vec<Vec<Element>> = enumerate_simple_words(&g, &tight, None)
            .into_iter()
            .map(|w| w.letters)
            .collect();
        assert_eq!(words, vec![vec![s, s], vec![t, t]]);
    }

    #[test]
    fn identity_budget_gives_only_the_loop() {
        let (g, _, _) = s3();
        for k in 1..=6 {
            let words = enumerate_simple_words(&g, &Multiset::single(6, 0, k), None);
            assert_eq!(words.len(), 1);
            assert_eq!(words[0].letters, vec![0]);
        }
    }

    /// Independent oracle: every sequence within budget, filtered and canonicalized.
    fn brute_force(g: &FiniteGroup, budget: &Multiset, max_len: usize) -> BTreeSet<Vec<Element>> {
        let mut out = BTreeSet::new();
        let mut seq = Vec::new();
        let mut left = budget.counts().to_vec();
        fn rec(
            g: &FiniteGroup,
            seq: &mut Vec<Element>,
            left: &mut Vec<u32>,
            max_len: usize,
            out: &mut BTreeSet<Vec<Element>>,
        ) {
            if !seq.is_empty() {
                if let Ok(w) = check_simple(g, seq) {
                    let len = seq.len();
                    let canon = (0..len)
                        .map(|k| {
                            let mut r = seq.clone();
                            r.rotate_left(k);
                            r
                        })
                        .min()
                        .unwrap();
                    assert_eq!(w.len(), len);
                    out.insert(canon);
                }
            }
            if seq.len() == max_len {
                return;
            }
            for x in 0..left.len() {
                if left[x] > 0 {
                    left[x] -= 1;
                    seq.push(x);
                    rec(g, seq, left, max_len, out);
                    seq.pop();
                    left[x] += 1;
                }
            }
        }
        rec(g, &mut seq, &mut left, max_len, &mut out);
        out
    }

    #[test]
    fn enumeration_matches_brute_force_on_small_groups() {
        for g in [
            cyclic(2).unwrap(),
            cyclic(3).unwrap(),
            cyclic(4).unwrap(),
            cyclic(6).unwrap(),
            symmetric(3).unwrap(),
        ] {
            let n = g.order();
            let size = n.min(6) as u32;
            for budget in Multiset::all_of_size(n, size) {
                let max_len = n.min(budget.total());
                let fast: BTreeSet<Vec<Element>> = enumerate_simple_words(&g, &budget, None)
                    .into_iter()
                    .map(|w| w.letters)
                    .collect();
                assert_eq!(fast, brute_force(&g, &budget, max_len), "budget {:?}", budget);
            }
        }
    }

    #[test]
    fn enumerated_words_satisfy_invariants() {
        let g = quaternion();
        let budget = Multiset::new(vec![1, 1, 2, 2, 2, 2, 1, 1]);
        let words = enumerate_simple_words(&g, &budget, None);
        assert!(!words.is_empty());
        for ew in &words {
            let w = &ew.word;
            assert_eq!(*w.partials().last().unwrap(), 0);
            assert_eq!(w.pset().iter().collect::<BTreeSet<_>>().len(), w.len());
            assert_eq!(w.partials(), partial_products(&g, w.letters()).as_slice());
            assert!(w.letter_multiset(8).is_submultiset_of(&budget));
            assert!(w.is_canonical());
            assert!(ew.rotation_class_size >= 1 && w.len() % ew.rotation_class_size == 0);
        }
    }

    #[test]
    fn max_len_bounds_output() {
        let (g, s, t) = s3();
        let budget = Multiset::empty(6).with(s, 3).with(t, 3);
        let short = enumerate_simple_words(&g, &budget, Some(5));
        assert_eq!(short.len(), 2);
        assert!(short.iter().all(|w| w.letters.len() == 2));
    }

    fn rotation_closure(g: &FiniteGroup, budget: &Multiset) {
        for ew in enumerate_simple_words(g, budget, None) {
            let w = &ew.word;
            for k in 0..w.len() {
                let rotated = w.rotate(g, k);
                let checked = check_simple(g, rotated.letters()).expect("rotation stays simple");
                let pk_inv = g.inv(w.partials()[k]);
                let expected: BTreeSet<_> = w.pset().iter().map(|&p| g.mul(p, pk_inv)).collect();
                let got: BTreeSet<_> = checked.pset().iter().copied().collect();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn rotations_are_simple_with_translated_pset() {
        let (g, _, _) = s3();
        rotation_closure(&g, &Multiset::new(vec![1, 2, 2, 2, 2, 2]));
        let d4 = dihedral(4).unwrap();
        rotation_closure(&d4, &Multiset::new(vec![1; 8]));
    }

    proptest! {
        #[test]
        fn rotated_partials_follow_the_translation_rule(
            letters in proptest::collection::vec(0usize..8, 1..9),
            k in 0usize..8,
        ) {
            let g = dihedral(4).unwrap();
            let p = partial_products(&g, &letters);
            if let Ok(w) = check_simple(&g, &letters) {
                let k = k % w.len();
                let r = w.rotate(&g, k);
                prop_assert!(check_simple(&g, r.letters()).is_ok());
                let pk_inv = g.inv(p[k]);
                let expected: BTreeSet<_> = w.pset().iter().map(|&x| g.mul(x, pk_inv)).collect();
                prop_assert_eq!(r.pset().iter().copied().collect::<BTreeSet<_>>(), expected);
            }
            for j in 1..p.len() {
                prop_assert_eq!(p[j], g.mul(letters[j - 1], p[j - 1]));
            }
        }
    }
}
