use crate::group::{Element, FiniteGroup};
use crate::words::check_simple;

use super::{Cycle, RealizeError};

/// Splits `φ` into its cycles, each read from its smallest vertex `x₀` with
/// labels `x_j x_{j−1}⁻¹` and the closing label `x₀ x_{ℓ−1}⁻¹`.
pub fn permutation_to_words(g: &FiniteGroup, phi: &[Element]) -> Result<Vec<Cycle>, RealizeError> {
    let n = g.order();
    if phi.len() != n || !is_permutation(phi) {
        return Err(RealizeError::NotPermutation);
    }
    let mut seen = vec![false; n];
    let mut cycles = Vec::new();
    for start in g.elements() {
        if seen[start] {
            continue;
        }
        let mut letters = Vec::new();
        let mut x = start;
        loop {
            seen[x] = true;
            let next = phi[x];
            letters.push(g.mul(next, g.inv(x)));
            x = next;
            if x == start {
                break;
            }
        }
        let word = check_simple(g, &letters).expect("labels around a cycle form a simple word");
        cycles.push(Cycle { word, translate: start });
    }
    Ok(cycles)
}

/// Rebuilds `φ` from a cycle-tiling decomposition: `φ(p_{k−1}x) = p_k x`.
pub fn words_to_permutation(g: &FiniteGroup, cycles: &[Cycle]) -> Result<Vec<Element>, RealizeError> {
    const UNSET: Element = Element::MAX;
    let mut phi = vec![UNSET; g.order()];
    for cycle in cycles {
        let partials = cycle.word.partials();
        let x = cycle.translate;
        for k in 1..partials.len() {
            let from = g.mul(partials[k - 1], x);
            if phi[from] != UNSET {
                return Err(RealizeError::TileOverlap { element: from });
            }
            phi[from] = g.mul(partials[k], x);
        }
    }
    if let Some(element) = phi.iter().position(|&y| y == UNSET) {
        return Err(RealizeError::TileGap { element });
    }
    Ok(phi)
}

fn is_permutation(phi: &[Element]) -> bool {
    let mut hit = vec![false; phi.len()];
    phi.iter()
        .all(|&y| y < phi.len() && !std::mem::replace(&mut hit[y], true))
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::group::{cyclic, dihedral, direct_product, symmetric};
    use crate::words::canonical_rotation;

    fn s3() -> (FiniteGroup, Element, Element) {
        let g = symmetric(3).unwrap();
        let s = g.element("(12)").unwrap();
        let t = g.element("(23)").unwrap();
        (g, s, t)
    }

    #[test]
    fn identity_gives_loops() {
        let g = dihedral(3).unwrap();
        let phi: Vec<_> = g.elements().collect();
        let cycles = permutation_to_words(&g, &phi).unwrap();
        assert_eq!(cycles.len(), 6);
        for (x, c) in cycles.iter().enumerate() {
            assert_eq!(c.word.letters(), &[0]);
            assert_eq!(c.translate, x);
        }
    }

    #[test]
    fn coset_two_cycles_for_t() {
        let (g, s, t) = s3();
        let tt = check_simple(&g, &[t, t]).unwrap();
        let st = g.mul(s, t);
        let cycles: Vec<Cycle> = [0, s, st]
            .into_iter()
            .map(|x| Cycle {
                word: tt.clone(),
                translate: x,
            })
            .collect();
        let phi = words_to_permutation(&g, &cycles).unwrap();
        for x in g.elements() {
            assert_eq!(g.mul(phi[x], g.inv(x)), t);
        }

        // ts lies in the coset of s, so it is not a valid third translate.
        let ts = g.mul(t, s);
        let clash: Vec<Cycle> = [0, s, ts]
            .into_iter()
            .map(|x| Cycle {
                word: tt.clone(),
                translate: x,
            })
            .collect();
        assert!(matches!(
            words_to_permutation(&g, &clash),
            Err(RealizeError::TileOverlap { .. })
        ));
    }

    #[test]
    fn six_cycle_reads_alternating_word() {
        let (g, s, t) = s3();
        let w = check_simple(&g, &[s, t, s, t, s, t]).unwrap();
        let phi = words_to_permutation(&g, &[Cycle { word: w, translate: 0 }]).unwrap();
        let cycles = permutation_to_words(&g, &phi).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].translate, 0);
        assert_eq!(canonical_rotation(&g, &cycles[0].word).letters(), &[s, t, s, t, s, t]);
    }

    #[test]
    fn trivial_group_loop() {
        let g = cyclic(1).unwrap();
        let w = check_simple(&g, &[0]).unwrap();
        assert_eq!(
            words_to_permutation(&g, &[Cycle { word: w, translate: 0 }]).unwrap(),
            vec![0]
        );
    }

    #[test]
    fn overlapping_or_missing_tiles() {
        let (g, s, t) = s3();
        let ss = Cycle {
            word: check_simple(&g, &[s, s]).unwrap(),
            translate: 0,
        };
        let tt = Cycle {
            word: check_simple(&g, &[t, t]).unwrap(),
            translate: 0,
        };
        assert_eq!(
            words_to_permutation(&g, &[ss.clone(), tt]).unwrap_err(),
            RealizeError::TileOverlap { element: 0 }
        );
        assert!(matches!(
            words_to_permutation(&g, &[ss]),
            Err(RealizeError::TileGap { .. })
        ));
        assert_eq!(
            permutation_to_words(&g, &[0, 0, 1, 2, 3, 4]).unwrap_err(),
            RealizeError::NotPermutation
        );
    }

    proptest! {
        #[test]
        fn round_trip_on_random_permutations(seed in any::<u64>(), which in 0usize..4) {
            use rand::{seq::SliceRandom, SeedableRng};
            let g = match which {
                0 => symmetric(3).unwrap(),
                1 => dihedral(6).unwrap(),
                2 => direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()),
                _ => cyclic(11).unwrap(),
            };
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let mut phi: Vec<_> = g.elements().collect();
            phi.shuffle(&mut rng);
            let cycles = permutation_to_words(&g, &phi).unwrap();
            let mut covered = vec![0; g.order()];
            for c in &cycles {
                for y in c.word.tile(&g, c.translate) {
                    covered[y] += 1;
                }
            }
            prop_assert!(covered.iter().all(|&k| k == 1));
            prop_assert_eq!(words_to_permutation(&g, &cycles).unwrap(), phi);
        }
    }
}
