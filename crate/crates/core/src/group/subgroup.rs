use std::collections::BTreeSet;

use super::{Element, FiniteGroup, GroupError};

/// A subgroup of some parent group, stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<Element>,
    parent_order: usize,
}

impl Subgroup {
    /// The smallest subgroup containing `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[Element]) -> Self {
        let mut inside = vec![false; g.order()];
        inside[0] = true;
        let mut members = vec![0];
        let mut cursor = 0;
        // Closing under left multiplication by generators suffices in a finite group.
        while cursor < members.len() {
            let x = members[cursor];
            cursor += 1;
            for &gen in gens {
                let y = g.mul(gen, x);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        let sub = Self {
            members,
            parent_order: g.order(),
        };
        debug_assert_eq!(g.order() % sub.order(), 0);
        sub
    }

    /// Checks that `members` is a subgroup of `g`.
    pub fn from_members(g: &FiniteGroup, members: &[Element]) -> Result<Self, GroupError> {
        let set: BTreeSet<Element> = members.iter().copied().collect();
        if let Some(&bad) = set.iter().find(|&&x| x >= g.order()) {
            return Err(GroupError::NotSubgroup(format!("{bad} is not an element")));
        }
        if !set.contains(&0) {
            return Err(GroupError::NotSubgroup("identity missing".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) {
                return Err(GroupError::NotSubgroup(format!("inverse of {} missing", g.name(a))));
            }
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(GroupError::NotSubgroup(format!(
                        "product {}*{} missing",
                        g.name(a),
                        g.name(b)
                    )));
                }
            }
        }
        Ok(Self {
            members: set.into_iter().collect(),
            parent_order: g.order(),
        })
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self {
            members: g.elements().collect(),
            parent_order: g.order(),
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self {
            members: vec![0],
            parent_order: g.order(),
        }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order / self.members.len()
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.elements().all(|c| {
            self.members
                .iter()
                .all(|&h| self.contains(g.mul(g.mul(c, h), g.inv(c))))
        })
    }

    /// The subgroup as a group in its own right, plus the embedding of its
    /// element indices into the parent. Members keep their parent names.
    pub fn as_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<Element>) {
        let embedding = self.members.clone();
        let local = |x: Element| self.members.binary_search(&x).expect("closed subgroup");
        let names = embedding.iter().map(|&x| g.name(x).to_string()).collect();
        let sub = FiniteGroup::from_fn(embedding.len(), names, |a, b| local(g.mul(embedding[a], embedding[b])))
            .expect("subgroup table is a group");
        (sub, embedding)
    }
}

/// Right cosets `Hx` of a subgroup, each sorted, listed by increasing
/// representative (the minimal element of the coset).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetPartition {
    pub subgroup: Subgroup,
    pub cosets: Vec<Vec<Element>>,
    pub representatives: Vec<Element>,
    /// `coset_of[x]` is the position of the coset containing `x`.
    pub coset_of: Vec<usize>,
}

pub fn right_cosets(g: &FiniteGroup, h: &Subgroup) -> CosetPartition {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut cosets = Vec::new();
    let mut representatives = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut coset: Vec<Element> = h.members().iter().map(|&m| g.mul(m, x)).collect();
        coset.sort_unstable();
        for &y in &coset {
            coset_of[y] = cosets.len();
        }
        representatives.push(x);
        cosets.push(coset);
    }
    CosetPartition {
        subgroup: h.clone(),
        cosets,
        representatives,
        coset_of,
    }
}

/// The projection `G -> G/[G,G]`.
#[derive(Debug, Clone)]
pub struct AbelianizationMap {
    pub quotient: FiniteGroup,
    pub projection: Vec<Element>,
    pub commutator_subgroup: Subgroup,
}

impl AbelianizationMap {
    pub(crate) fn compute(g: &FiniteGroup) -> Self {
        let commutators: BTreeSet<Element> = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .map(|(a, b)| g.commutator(a, b))
            .collect();
        let gens: Vec<Element> = commutators.into_iter().collect();
        let commutator_subgroup = Subgroup::generated(g, &gens);
        let cosets = right_cosets(g, &commutator_subgroup);
        let reps = &cosets.representatives;
        let names = reps.iter().map(|&r| format!("[{}]", g.name(r))).collect();
        let quotient = FiniteGroup::from_fn(reps.len(), names, |i, j| cosets.coset_of[g.mul(reps[i], reps[j])])
            .expect("quotient by a normal subgroup is a group");
        Self {
            quotient,
            projection: cosets.coset_of,
            commutator_subgroup,
        }
    }

    pub fn project(&self, x: Element) -> Element {
        self.projection[x]
    }
}

/// Every subgroup of `g`, sorted by order and then by members.
///
/// Starts from the cyclic subgroups and closes under joins, so it is meant
/// for small groups only.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Subgroup> = g.elements().map(|a| Subgroup::generated(g, &[a])).collect();
    loop {
        let current: Vec<Subgroup> = found.iter().cloned().collect();
        let mut added = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    continue;
                }
                let gens: Vec<Element> = a.members().iter().chain(b.members()).copied().collect();
                added |= found.insert(Subgroup::generated(g, &gens));
            }
        }
        if !added {
            break;
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by(|x, y| (x.order(), x.members()).cmp(&(y.order(), y.members())));
    out
}

#[cfg(test)]
mod tests {
    use super::super::{cyclic, dihedral, direct_product, quaternion, symmetric};
    use super::*;

    fn s3() -> (FiniteGroup, Element, Element) {
        let g = symmetric(3).unwrap();
        let s = g.element("(12)").unwrap();
        let t = g.element("(23)").unwrap();
        (g, s, t)
    }

    #[test]
    fn generated_subgroups_of_s3() {
        let (g, s, t) = s3();
        assert_eq!(Subgroup::generated(&g, &[s]).members(), &[0, s]);
        assert_eq!(Subgroup::generated(&g, &[g.mul(s, t)]).order(), 3);
        assert_eq!(Subgroup::generated(&g, &[]).members(), &[0]);
        assert_eq!(Subgroup::generated(&g, &[s, t]).order(), 6);
    }

    #[test]
    fn from_members_validates() {
        let (g, s, t) = s3();
        assert!(Subgroup::from_members(&g, &[0, s]).is_ok());
        assert!(Subgroup::from_members(&g, &[s]).is_err());
        assert!(Subgroup::from_members(&g, &[0, s, t]).is_err());
        assert!(Subgroup::from_members(&g, &[0, 99]).is_err());
    }

    #[test]
    fn cosets_of_t_and_s() {
        let (g, s, t) = s3();
        let ht = Subgroup::generated(&g, &[t]);
        let part = right_cosets(&g, &ht);
        assert_eq!(part.cosets.len(), 3);
        assert!(part.cosets.iter().all(|c| c.len() == 2));

        let hs = Subgroup::generated(&g, &[s]);
        let part = right_cosets(&g, &hs);
        let mut expected = vec![t, g.mul(s, t)];
        expected.sort_unstable();
        assert_eq!(part.cosets[part.coset_of[t]], expected);

        let whole = right_cosets(&g, &Subgroup::whole(&g));
        assert_eq!(whole.cosets, vec![g.elements().collect::<Vec<_>>()]);
    }

    #[test]
    fn coset_partition_invariants() {
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap());
        for h in all_subgroups(&g) {
            let part = right_cosets(&g, &h);
            let mut covered = vec![0; g.order()];
            for (coset, &rep) in part.cosets.iter().zip(&part.representatives) {
                assert_eq!(coset.len(), h.order());
                let mut hx: Vec<_> = h.members().iter().map(|&m| g.mul(m, rep)).collect();
                hx.sort_unstable();
                assert_eq!(&hx, coset);
                assert_eq!(rep, coset[0]);
                coset.iter().for_each(|&x| covered[x] += 1);
            }
            assert!(covered.iter().all(|&c| c == 1));
        }
    }

    #[test]
    fn cosets_of_distinct_order_two_subgroups_never_coincide() {
        let (g, _, _) = s3();
        let involutions: Vec<Subgroup> = all_subgroups(&g).into_iter().filter(|h| h.order() == 2).collect();
        assert_eq!(involutions.len(), 3);
        for h in &involutions {
            for k in &involutions {
                if h == k {
                    continue;
                }
                for hx in right_cosets(&g, h).cosets {
                    assert!(!right_cosets(&g, k).cosets.contains(&hx));
                }
            }
        }
    }

    #[test]
    fn abelianization_orders() {
        let (g, s, t) = s3();
        let ab = g.abelianization();
        assert_eq!(ab.quotient.order(), 2);
        assert_eq!(ab.commutator_subgroup.order(), 3);
        assert_ne!(ab.project(s), 0);
        assert_eq!(ab.project(s), ab.project(t));

        let c6 = cyclic(6).unwrap();
        assert_eq!(c6.abelianization().quotient.order(), 6);
        assert_eq!(c6.abelianization().commutator_subgroup.order(), 1);

        let s3c2 = direct_product(&g, &cyclic(2).unwrap());
        assert_eq!(s3c2.abelianization().quotient.order(), 4);
        assert_eq!(quaternion().abelianization().quotient.order(), 4);
        assert_eq!(dihedral(4).unwrap().abelianization().quotient.order(), 4);
    }

    #[test]
    fn abelianization_is_a_homomorphism_with_commutator_kernel() {
        for g in [
            symmetric(3).unwrap(),
            symmetric(4).unwrap(),
            dihedral(5).unwrap(),
            quaternion(),
            direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()),
        ] {
            let ab = g.abelianization();
            assert!(ab.quotient.is_abelian());
            assert!(ab.commutator_subgroup.is_normal(&g));
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(ab.project(g.mul(a, b)), ab.quotient.mul(ab.project(a), ab.project(b)));
                }
                assert_eq!(ab.project(a) == 0, ab.commutator_subgroup.contains(a));
            }
        }
    }

    #[test]
    fn subgroup_lattices() {
        assert_eq!(all_subgroups(&symmetric(3).unwrap()).len(), 6);
        assert_eq!(all_subgroups(&symmetric(4).unwrap()).len(), 30);
        assert_eq!(all_subgroups(&quaternion()).len(), 6);
        assert_eq!(all_subgroups(&dihedral(4).unwrap()).len(), 10);
        assert_eq!(all_subgroups(&cyclic(12).unwrap()).len(), 6);
    }

    #[test]
    fn subgroup_as_group() {
        let (g, s, t) = s3();
        let h = Subgroup::generated(&g, &[g.mul(s, t)]);
        let (hg, emb) = h.as_group(&g);
        assert_eq!(hg.order(), 3);
        assert!(hg.is_abelian());
        for a in hg.elements() {
            for b in hg.elements() {
                assert_eq!(emb[hg.mul(a, b)], g.mul(emb[a], emb[b]));
            }
        }
        assert_eq!(h.index(), 2);
    }
}
