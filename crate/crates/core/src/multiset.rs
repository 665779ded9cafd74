//! Multisets of group elements, stored as a count per element index.

use serde::Serialize;
use thiserror::Error;

use crate::group::{Element, FiniteGroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NotationError {
    #[error("empty literal")]
    Empty,
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("bad multiplicity in term {0:?}")]
    BadCount(String),
    #[error("unbalanced parentheses in {0:?}")]
    Unbalanced(String),
    #[error("word literal must be wrapped in parentheses: {0:?}")]
    WordNotParenthesized(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Multiset {
    counts: Vec<u32>,
}

impl Multiset {
    pub fn new(counts: Vec<u32>) -> Self {
        Self { counts }
    }

    pub fn empty(n: usize) -> Self {
        Self { counts: vec![0; n] }
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(n: usize, elements: I) -> Self {
        let mut m = Self::empty(n);
        for x in elements {
            m.counts[x] += 1;
        }
        m
    }

    /// `{x × count}` in a group of order `n`.
    pub fn single(n: usize, x: Element, count: u32) -> Self {
        let mut m = Self::empty(n);
        m.counts[x] = count;
        m
    }

    pub fn with(mut self, x: Element, count: u32) -> Self {
        self.counts[x] += count;
        self
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn count(&self, x: Element) -> u32 {
        self.counts[x]
    }

    pub fn universe(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> usize {
        self.counts.iter().map(|&c| c as usize).sum()
    }

    pub fn support(&self) -> impl Iterator<Item = Element> + '_ {
        self.counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(x, _)| x)
    }

    /// Elements with multiplicity, in increasing index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(x, &c)| std::iter::repeat_n(x, c as usize))
    }

    pub fn is_submultiset_of(&self, other: &Multiset) -> bool {
        self.counts.iter().zip(&other.counts).all(|(a, b)| a <= b)
    }

    pub fn difference(&self, other: &Multiset) -> Multiset {
        Multiset::new(
            self.counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a.checked_sub(*b).expect("difference of a non-submultiset"))
                .collect(),
        )
    }

    pub fn map(&self, n: usize, f: impl Fn(Element) -> Element) -> Multiset {
        Multiset::from_elements(n, self.elements().map(f))
    }

    /// `{c a c⁻¹ : a ∈ self}`.
    pub fn conjugate(&self, g: &FiniteGroup, c: Element) -> Multiset {
        let ci = g.inv(c);
        self.map(g.order(), |a| g.mul(g.mul(c, a), ci))
    }

    /// `{a⁻¹ : a ∈ self}`.
    pub fn inverse(&self, g: &FiniteGroup) -> Multiset {
        self.map(g.order(), |a| g.inv(a))
    }

    /// Parses `NAME*COUNT` terms separated by commas; `*COUNT` may be omitted.
    pub fn parse(g: &FiniteGroup, text: &str) -> Result<Multiset, NotationError> {
        let mut m = Multiset::empty(g.order());
        for term in split_top_level(text)? {
            let (name, count) = match term.rfind('*') {
                Some(star) => {
                    let count = term[star + 1..]
                        .trim()
                        .parse::<u32>()
                        .map_err(|_| NotationError::BadCount(term.to_string()))?;
                    (&term[..star], count)
                }
                None => (term, 1),
            };
            let x = g
                .find(name)
                .ok_or_else(|| NotationError::UnknownElement(name.trim().to_string()))?;
            m.counts[x] += count;
        }
        Ok(m)
    }

    /// Inverse of [`Multiset::parse`]: `NAME*COUNT` terms in index order.
    pub fn display(&self, g: &FiniteGroup) -> String {
        let terms: Vec<String> = self
            .support()
            .map(|x| format!("{}*{}", g.name(x), self.counts[x]))
            .collect();
        terms.join(",")
    }

    /// Every multiset of `size` elements over `n` elements, in increasing
    /// lexicographic order of count vectors.
    pub fn all_of_size(n: usize, size: u32) -> Vec<Multiset> {
        let mut out = Vec::new();
        let mut counts = vec![0u32; n];
        fn rec(pos: usize, left: u32, counts: &mut Vec<u32>, out: &mut Vec<Multiset>) {
            if pos + 1 == counts.len() {
                counts[pos] = left;
                out.push(Multiset::new(counts.clone()));
                return;
            }
            for c in 0..=left {
                counts[pos] = c;
                rec(pos + 1, left - c, counts, out);
            }
            counts[pos] = 0;
        }
        if n > 0 {
            rec(0, size, &mut counts, &mut out);
        }
        out
    }

    /// Number of multisets of `size` elements over `n` elements: `C(n+size-1, size)`.
    pub fn count_of_size(n: usize, size: usize) -> u128 {
        if n == 0 {
            return u128::from(size == 0);
        }
        let (top, k) = ((n + size - 1) as u128, size.min(n - 1) as u128);
        (0..k).fold(1u128, |acc, i| acc * (top - i) / (i + 1))
    }
}

/// Splits a comma-separated literal at parenthesis depth zero.
pub(crate) fn split_top_level(text: &str) -> Result<Vec<&str>, NotationError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(NotationError::Empty);
    }
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(NotationError::Unbalanced(text.to_string()));
                }
            }
            ',' if depth == 0 => {
                parts.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(NotationError::Unbalanced(text.to_string()));
    }
    parts.push(text[start..].trim());
    if parts.iter().any(|p| p.is_empty()) {
        return Err(NotationError::Empty);
    }
    Ok(parts)
}

/// Parses a word literal such as `((12),(23),(12))`.
pub fn parse_word(g: &FiniteGroup, text: &str) -> Result<Vec<Element>, NotationError> {
    let trimmed = text.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| NotationError::WordNotParenthesized(trimmed.to_string()))?;
    // `(12)` alone would otherwise strip to `12`; the outer pair must enclose the whole literal.
    split_top_level(inner)?
        .into_iter()
        .map(|name| {
            g.find(name)
                .ok_or_else(|| NotationError::UnknownElement(name.to_string()))
        })
        .collect()
}

pub fn format_word(g: &FiniteGroup, letters: &[Element]) -> String {
    let names: Vec<&str> = letters.iter().map(|&x| g.name(x)).collect();
    format!("({})", names.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, direct_product, symmetric};

    #[test]
    fn parse_multiset_literals() {
        let g = symmetric(3).unwrap();
        let s = g.element("(12)").unwrap();
        let t = g.element("(23)").unwrap();
        let a = Multiset::parse(&g, "(12)*2,(23)*4").unwrap();
        assert_eq!(a.count(s), 2);
        assert_eq!(a.count(t), 4);
        assert_eq!(a.total(), 6);
        assert_eq!(Multiset::parse(&g, " (12) , (12)*1, e*0 ").unwrap().count(s), 2);
        assert_eq!(Multiset::parse(&g, &a.display(&g)).unwrap(), a);
    }

    #[test]
    fn parse_errors_name_the_token() {
        let g = symmetric(3).unwrap();
        assert_eq!(
            Multiset::parse(&g, "(12)*2,(45)*4").unwrap_err(),
            NotationError::UnknownElement("(45)".into())
        );
        assert!(matches!(Multiset::parse(&g, "(12)*x"), Err(NotationError::BadCount(_))));
        assert!(matches!(Multiset::parse(&g, "(12"), Err(NotationError::Unbalanced(_))));
        assert!(matches!(Multiset::parse(&g, ""), Err(NotationError::Empty)));
        assert!(matches!(Multiset::parse(&g, "(12),,e"), Err(NotationError::Empty)));
    }

    #[test]
    fn product_names_with_commas() {
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap());
        let a = Multiset::parse(&g, "((12),1)*4,((23),1)*8").unwrap();
        assert_eq!(a.total(), 12);
        assert_eq!(a.support().count(), 2);
    }

    #[test]
    fn word_literals() {
        let g = symmetric(3).unwrap();
        let w = parse_word(&g, "((12),(23),(12))").unwrap();
        assert_eq!(format_word(&g, &w), "((12),(23),(12))");
        assert_eq!(parse_word(&g, "(e)").unwrap(), vec![0]);
        assert!(parse_word(&g, "(12),(23)").is_err());
        assert!(parse_word(&g, "(12)").is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Multiset::all_of_size(6, 6).len(), 462);
        assert_eq!(Multiset::count_of_size(6, 6), 462);
        assert_eq!(Multiset::count_of_size(8, 8), 6435);
        assert_eq!(Multiset::count_of_size(2, 6), 7);
        assert_eq!(Multiset::count_of_size(3, 6), 28);
        let all = Multiset::all_of_size(3, 2);
        assert_eq!(all.len(), 6);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(all[0].counts(), &[0, 0, 2]);
    }
}
