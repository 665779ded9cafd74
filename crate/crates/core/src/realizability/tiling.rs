use std::time::Instant;

use crate::group::{Element, FiniteGroup};
use crate::multiset::Multiset;
use crate::words::check_simple;

use super::{check_input, obstruction_image, Cycle, Realization, RealizeError, Verdict};

/// Builds `φ` cycle by cycle. Each cycle starts at the smallest uncovered
/// element `y` and follows `y → g₁y → g₂g₁y → …` through uncovered elements
/// until a label closes it back at `y`. The labels form a simple product-one
/// word whose partial-product set, translated by `y`, is the cycle.
pub fn decide_cycle_tiling(g: &FiniteGroup, a: &Multiset) -> Result<Verdict, RealizeError> {
    check_input(g, a)?;
    let obstruction = obstruction_image(g, a);
    if !obstruction.passed() {
        return Ok(Verdict::obstructed(obstruction));
    }
    let start = Instant::now();
    let mut search = Tiling {
        g,
        remaining: a.counts().to_vec(),
        labels: a.support().collect(),
        covered: vec![false; g.order()],
        word: Vec::new(),
        tiles: Vec::new(),
        nodes: 0,
    };
    let certificate = if search.next_tile() {
        let cycles = search
            .tiles
            .iter()
            .map(|(letters, translate)| Cycle {
                word: check_simple(g, letters).expect("closed path gives a simple word"),
                translate: *translate,
            })
            .collect();
        Some(Realization::from_cycles(g, cycles).expect("tiles partition the group"))
    } else {
        None
    };
    Ok(Verdict::from_search(
        certificate,
        search.nodes,
        start.elapsed(),
        obstruction,
    ))
}

struct Tiling<'g> {
    g: &'g FiniteGroup,
    remaining: Vec<u32>,
    labels: Vec<Element>,
    /// Elements on a finished tile or on the path being grown.
    covered: Vec<bool>,
    word: Vec<Element>,
    tiles: Vec<(Vec<Element>, Element)>,
    nodes: u64,
}

impl Tiling<'_> {
    fn next_tile(&mut self) -> bool {
        let Some(y) = self.covered.iter().position(|&c| !c) else {
            return true;
        };
        self.covered[y] = true;
        let word = std::mem::take(&mut self.word);
        let found = self.grow(y, y);
        self.word = word;
        if !found {
            self.covered[y] = false;
        }
        found
    }

    fn grow(&mut self, start: Element, vertex: Element) -> bool {
        self.nodes += 1;
        for i in 0..self.labels.len() {
            let label = self.labels[i];
            if self.remaining[label] == 0 {
                continue;
            }
            let next = self.g.mul(label, vertex);
            if next != start && self.covered[next] {
                continue;
            }
            self.remaining[label] -= 1;
            self.word.push(label);
            let found = if next == start {
                self.tiles.push((self.word.clone(), start));
                let found = self.next_tile();
                if !found {
                    self.tiles.pop();
                }
                found
            } else {
                self.covered[next] = true;
                let found = self.grow(start, next);
                if !found {
                    self.covered[next] = false;
                }
                found
            };
            if found {
                return true;
            }
            self.word.pop();
            self.remaining[label] += 1;
        }
        false
    }
}
