//! Certificate checking. Everything is recomputed from the group table; no
//! decider code is reused here.

use thiserror::Error;

use crate::group::{Element, FiniteGroup};
use crate::multiset::Multiset;

use super::Realization;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertificateError {
    #[error("phi has {found} entries, expected {expected}")]
    PhiLength { expected: usize, found: usize },
    #[error("phi is not a bijection: element {element} is hit twice or out of range")]
    NotBijection { element: Element },
    #[error("quotient multiset differs at element {element}: expected {expected}, found {found}")]
    QuotientMismatch {
        element: Element,
        expected: u32,
        found: u32,
    },
    #[error("cycle {cycle}: translate {translate} is not an element")]
    BadTranslate { cycle: usize, translate: Element },
    #[error("cycle {cycle}: word is not a simple product-one word")]
    WordNotSimple { cycle: usize },
    #[error("tiles overlap at element {element}")]
    TileOverlap { element: Element },
    #[error("tiles miss element {element}")]
    TileGap { element: Element },
    #[error("cycle {cycle}: phi disagrees with letter {position}")]
    CycleMismatch { cycle: usize, position: usize },
    #[error("cycle words do not spell the multiset")]
    LetterMismatch,
}

/// Checks `cert` against `a`: `φ` is a bijection with `{φ(x)x⁻¹} = A`, the
/// translated partial-product sets tile `G`, and walking `φ` around each
/// cycle reproduces its word.
pub fn verify_certificate(g: &FiniteGroup, a: &Multiset, cert: &Realization) -> Result<(), CertificateError> {
    let n = g.order();
    let phi = &cert.phi;
    if phi.len() != n {
        return Err(CertificateError::PhiLength {
            expected: n,
            found: phi.len(),
        });
    }
    let mut hit = vec![false; n];
    for &y in phi {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return Err(CertificateError::NotBijection { element: y });
        }
    }

    let mut quotient = vec![0u32; n];
    for x in 0..n {
        quotient[g.mul(phi[x], g.inv(x))] += 1;
    }
    for (element, &found) in quotient.iter().enumerate() {
        let expected = a.counts().get(element).copied().unwrap_or(0);
        if found != expected {
            return Err(CertificateError::QuotientMismatch {
                element,
                expected,
                found,
            });
        }
    }
    if a.counts().len() != n {
        return Err(CertificateError::LetterMismatch);
    }

    let mut covered = vec![false; n];
    let mut letters = vec![0u32; n];
    for (index, cycle) in cert.cycles.iter().enumerate() {
        let word = cycle.word.letters();
        let x = cycle.translate;
        if x >= n {
            return Err(CertificateError::BadTranslate {
                cycle: index,
                translate: x,
            });
        }
        let vertices = walk(g, word, index)?;
        for (position, pair) in vertices.windows(2).enumerate() {
            let (from, to) = (g.mul(pair[0], x), g.mul(pair[1], x));
            if std::mem::replace(&mut covered[from], true) {
                return Err(CertificateError::TileOverlap { element: from });
            }
            if phi[from] != to {
                return Err(CertificateError::CycleMismatch { cycle: index, position });
            }
        }
        for &letter in word {
            letters[letter] += 1;
        }
    }
    if let Some(element) = covered.iter().position(|&c| !c) {
        return Err(CertificateError::TileGap { element });
    }
    if letters != a.counts() {
        return Err(CertificateError::LetterMismatch);
    }
    Ok(())
}

/// Partials `1, g₁, g₂g₁, …, 1` of a simple product-one word.
fn walk(g: &FiniteGroup, word: &[Element], cycle: usize) -> Result<Vec<Element>, CertificateError> {
    let bad = CertificateError::WordNotSimple { cycle };
    if word.is_empty() || word.iter().any(|&l| l >= g.order()) {
        return Err(bad);
    }
    let mut seen = vec![false; g.order()];
    let mut vertices = vec![0];
    seen[0] = true;
    let mut p = 0;
    for (j, &letter) in word.iter().enumerate() {
        p = g.mul(letter, p);
        let last = j + 1 == word.len();
        if last != (p == 0) || (!last && std::mem::replace(&mut seen[p], true)) {
            return Err(bad);
        }
        vertices.push(p);
    }
    Ok(vertices)
}

/// Rebuilds `φ` from raw `(letters, translate)` pairs, e.g. read from a
/// certificate file.
pub fn phi_from_listing(
    g: &FiniteGroup,
    listing: &[(Vec<Element>, Element)],
) -> Result<Vec<Element>, CertificateError> {
    const UNSET: Element = Element::MAX;
    let mut phi = vec![UNSET; g.order()];
    for (index, (word, x)) in listing.iter().enumerate() {
        if *x >= g.order() {
            return Err(CertificateError::BadTranslate {
                cycle: index,
                translate: *x,
            });
        }
        let vertices = walk(g, word, index)?;
        for pair in vertices.windows(2) {
            let from = g.mul(pair[0], *x);
            if phi[from] != UNSET {
                return Err(CertificateError::TileOverlap { element: from });
            }
            phi[from] = g.mul(pair[1], *x);
        }
    }
    match phi.iter().position(|&y| y == UNSET) {
        Some(element) => Err(CertificateError::TileGap { element }),
        None => Ok(phi),
    }
}
