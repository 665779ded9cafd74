use std::time::Instant;

use crate::group::{Element, FiniteGroup};
use crate::multiset::Multiset;

use super::{check_input, obstruction_image, Realization, RealizeError, Verdict};

/// Searches for `φ` directly: elements are visited in index order and each
/// gets a label `a` with remaining multiplicity whose target `a·x` is still
/// free. Labels are tried in increasing index order.
pub fn decide_matching(g: &FiniteGroup, a: &Multiset) -> Result<Verdict, RealizeError> {
    check_input(g, a)?;
    let obstruction = obstruction_image(g, a);
    if !obstruction.passed() {
        return Ok(Verdict::obstructed(obstruction));
    }
    let start = Instant::now();
    let n = g.order();
    let mut search = Matching {
        g,
        remaining: a.counts().to_vec(),
        labels: a.support().collect(),
        target_used: vec![false; n],
        phi: vec![0; n],
        nodes: 0,
    };
    let found = search.assign(0);
    let certificate =
        found.then(|| Realization::from_permutation(g, search.phi.clone()).expect("search builds a permutation"));
    Ok(Verdict::from_search(
        certificate,
        search.nodes,
        start.elapsed(),
        obstruction,
    ))
}

struct Matching<'g> {
    g: &'g FiniteGroup,
    remaining: Vec<u32>,
    labels: Vec<Element>,
    target_used: Vec<bool>,
    phi: Vec<Element>,
    nodes: u64,
}

impl Matching<'_> {
    fn assign(&mut self, x: Element) -> bool {
        if x == self.g.order() {
            return true;
        }
        self.nodes += 1;
        for i in 0..self.labels.len() {
            let label = self.labels[i];
            if self.remaining[label] == 0 {
                continue;
            }
            let y = self.g.mul(label, x);
            if self.target_used[y] {
                continue;
            }
            self.remaining[label] -= 1;
            self.target_used[y] = true;
            self.phi[x] = y;
            if self.assign(x + 1) {
                return true;
            }
            self.target_used[y] = false;
            self.remaining[label] += 1;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};
    use crate::realizability::{verify_certificate, Status};

    fn s3() -> (FiniteGroup, Element, Element) {
        let g = symmetric(3).unwrap();
        let s = g.element("(12)").unwrap();
        let t = g.element("(23)").unwrap();
        (g, s, t)
    }

    #[test]
    fn s3_counterexample_is_not_realizable() {
        let (g, s, t) = s3();
        let a = Multiset::empty(6).with(s, 2).with(t, 4);
        let v = decide_matching(&g, &a).unwrap();
        assert_eq!(v.status, Status::NotRealizable);
        assert!(v.stats.exhausted);
        assert!(v.obstruction.passed());
        assert!(v.certificate.is_none());
    }

    #[test]
    fn coset_and_six_cycle_realizations() {
        let (g, s, t) = s3();
        let a = Multiset::single(6, t, 6);
        let v = decide_matching(&g, &a).unwrap();
        assert_eq!(v.status, Status::Realizable);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.cycles.len(), 3);
        assert!(cert.cycles.iter().all(|c| c.word.letters() == [t, t]));
        verify_certificate(&g, &a, &cert).unwrap();

        let b = Multiset::empty(6).with(s, 3).with(t, 3);
        let v = decide_matching(&g, &b).unwrap();
        assert_eq!(v.status, Status::Realizable);
        verify_certificate(&g, &b, v.certificate.as_ref().unwrap()).unwrap();
    }

    #[test]
    fn identity_multiset_gives_identity_phi() {
        for g in [cyclic(1).unwrap(), cyclic(4).unwrap(), symmetric(3).unwrap()] {
            let n = g.order();
            let v = decide_matching(&g, &Multiset::single(n, 0, n as u32)).unwrap();
            assert_eq!(v.certificate.unwrap().phi, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn obstruction_short_circuits() {
        let (g, s, t) = s3();
        let a = Multiset::empty(6).with(s, 1).with(t, 4).with(0, 1);
        let v = decide_matching(&g, &a).unwrap();
        assert_eq!(v.status, Status::ObstructionFailed);
        assert_eq!(v.stats.nodes, 0);
        assert!(!v.stats.exhausted);
    }

    #[test]
    fn size_errors() {
        let (g, s, _) = s3();
        assert!(matches!(
            decide_matching(&g, &Multiset::single(6, s, 4)),
            Err(RealizeError::SizeMismatch { .. })
        ));
        assert!(matches!(
            decide_matching(&g, &Multiset::single(4, 0, 6)),
            Err(RealizeError::UniverseMismatch { .. })
        ));
    }

    #[test]
    fn node_counts_are_reproducible() {
        let (g, s, t) = s3();
        let a = Multiset::empty(6).with(s, 2).with(t, 4);
        let first = decide_matching(&g, &a).unwrap().stats.nodes;
        assert_eq!(decide_matching(&g, &a).unwrap().stats.nodes, first);
    }
}
