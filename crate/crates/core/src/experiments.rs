//! Reproducible experiments over small groups. Each returns a report of
//! named claims (expected vs observed); the CLI only renders them.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Debug;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::group::{direct_product, symmetric, Element, FiniteGroup, GroupError, GroupSpec, Subgroup};
use crate::multiset::Multiset;
use crate::realizability::{
    abelianization_obstruction, decide_cycle_tiling, decide_matching, decide_subgroup_reduction, product_one_ordering,
    verify_certificate, ReductionOptions, Status,
};
use crate::words::{check_simple, enumerate_simple_words, partial_products};

/// Realizable multisets among the 462 of size 6 over `S3`, computed by both
/// deciders and kept as a regression value.
pub const S3_REALIZABLE_COUNT: usize = 146;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("budget exceeded: {needed} > {budget} ({what})")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest `|S3 × K|` accepted by [`verify_family`].
    pub family_max_order: usize,
    /// Largest multiset count accepted by [`classify_multisets`].
    pub classify_max_multisets: u128,
    /// Largest abelian group accepted by [`verify_hall`].
    pub hall_max_order: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Self {
            family_max_order: 30,
            classify_max_multisets: 1_000_000,
            hall_max_order: 8,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub label: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub id: String,
    pub group: String,
    pub claims: Vec<Claim>,
    pub elapsed_ms: u128,
}

impl ExperimentReport {
    fn new(id: &str, group: impl ToString) -> Self {
        Self {
            id: id.to_string(),
            group: group.to_string(),
            claims: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }

    fn expect_eq<T: Debug + PartialEq>(&mut self, label: &str, expected: T, observed: T) {
        self.claims.push(Claim {
            label: label.to_string(),
            pass: expected == observed,
            expected: format!("{expected:?}"),
            observed: format!("{observed:?}"),
        });
    }

    fn expect(&mut self, label: &str, holds: bool, observed: impl Into<String>) {
        self.claims.push(Claim {
            label: label.to_string(),
            expected: "holds".to_string(),
            observed: observed.into(),
            pass: holds,
        });
    }

    fn finish(mut self, start: Instant) -> Self {
        self.elapsed_ms = start.elapsed().as_millis();
        self
    }
}

/// `S3` with `s = (12)` and `t = (23)`.
pub fn s3_with_generators() -> (FiniteGroup, Element, Element) {
    let g = symmetric(3).expect("S3");
    let s = g.find("(12)").expect("(12) in S3");
    let t = g.find("(23)").expect("(23) in S3");
    (g, s, t)
}

fn names(g: &FiniteGroup, word: &[Element]) -> String {
    crate::multiset::format_word(g, word)
}

/// Simple product-one words over `{s, t}` in `S3`: exactly `(s,s)`, `(t,t)`
/// and the alternating words of length 6.
pub fn verify_s3_words() -> ExperimentReport {
    let start = Instant::now();
    let (g, s, t) = s3_with_generators();
    let mut report = ExperimentReport::new("s3-words", "symmetric:3");

    let budget = Multiset::empty(6).with(s, 6).with(t, 6);
    let words = enumerate_simple_words(&g, &budget, None);
    let classes: Vec<String> = words.iter().map(|w| names(&g, &w.letters)).collect();
    report.expect_eq("rotation classes over {s,t}", 3, words.len());
    report.expect_eq(
        "classes are (s,s), (t,t) and the alternating word",
        vec![names(&g, &[s, s]), names(&g, &[t, t]), names(&g, &[s, t, s, t, s, t])],
        classes,
    );
    let lengths: BTreeSet<usize> = words.iter().map(|w| w.letters.len()).collect();
    report.expect(
        "no simple word of length 3, 4 or 5",
        (3..=5).all(|l| !lengths.contains(&l)),
        format!("lengths {lengths:?}"),
    );
    if let Some(ss) = words.iter().find(|w| w.letters == [s, s]) {
        let mut pset = ss.word.pset().to_vec();
        pset.sort_unstable();
        report.expect_eq("P((s,s)) = <s>", Subgroup::generated(&g, &[s]).members().to_vec(), pset);
    }
    if let Some(alt) = words.iter().find(|w| w.letters.len() == 6) {
        let s_count = alt.letters.iter().filter(|&&x| x == s).count();
        report.expect_eq(
            "alternating word has three s and three t",
            (3, 3),
            (s_count, 6 - s_count),
        );
        report.expect_eq("alternating class has two rotations", 2, alt.rotation_class_size);
        let pset: BTreeSet<Element> = alt.word.pset().iter().copied().collect();
        report.expect_eq("alternating word visits all of S3", 6, pset.len());
    }

    // Independent check over every sequence in {s,t} of length at most 6.
    let mut simple: BTreeSet<Vec<Element>> = BTreeSet::new();
    for len in 1..=6u32 {
        for mask in 0..(1u32 << len) {
            let word: Vec<Element> = (0..len).map(|i| if mask >> i & 1 == 0 { s } else { t }).collect();
            if check_simple(&g, &word).is_ok() {
                simple.insert(word);
            }
        }
    }
    let expected: BTreeSet<Vec<Element>> = [vec![s, s], vec![t, t], vec![s, t, s, t, s, t], vec![t, s, t, s, t, s]]
        .into_iter()
        .collect();
    report.expect_eq("exhaustive sequences: only those words and rotations", expected, simple);
    report.finish(start)
}

/// `{s, s, t, t, t, t}` in `S3` passes the abelianization test and has a
/// product-one ordering, but is not realizable.
pub fn verify_s3_counterexample() -> ExperimentReport {
    let start = Instant::now();
    let (g, s, t) = s3_with_generators();
    let mut report = ExperimentReport::new("s3-counterexample", "symmetric:3");
    let a = Multiset::empty(6).with(s, 2).with(t, 4);

    let obstruction = abelianization_obstruction(&g, &a).expect("size 6");
    report.expect(
        "abelianization test passes",
        obstruction.passed(),
        format!("{obstruction:?}"),
    );
    let ordering = product_one_ordering(&g, &a);
    match &ordering {
        Some(order) => {
            let ok = partial_products(&g, order)[6] == 0 && Multiset::from_elements(6, order.iter().copied()) == a;
            report.expect("product-one ordering found and checked", ok, names(&g, order));
            report.expect_eq("ordering is ss tt tt", names(&g, &[s, s, t, t, t, t]), names(&g, order));
        }
        None => report.expect("product-one ordering found and checked", false, "none"),
    }

    let words: Vec<Vec<Element>> = enumerate_simple_words(&g, &a, None)
        .into_iter()
        .map(|w| w.letters)
        .collect();
    report.expect_eq(
        "only (s,s) and (t,t) fit in the multiset",
        vec![vec![s, s], vec![t, t]],
        words,
    );

    let matching = decide_matching(&g, &a).expect("size 6");
    let tiling = decide_cycle_tiling(&g, &a).expect("size 6");
    report.expect_eq("matching decider", Status::NotRealizable, matching.status);
    report.expect_eq("cycle-tiling decider", Status::NotRealizable, tiling.status);
    report.expect(
        "both searches exhausted",
        matching.stats.exhausted && tiling.stats.exhausted,
        format!(
            "matching nodes {}, tiling nodes {}",
            matching.stats.nodes, tiling.stats.nodes
        ),
    );
    report.finish(start)
}

/// `{s × q, t × (6 − q)}` is realizable exactly for `q ∈ {0, 3, 6}`.
pub fn verify_s3_counting() -> ExperimentReport {
    let start = Instant::now();
    let (g, s, t) = s3_with_generators();
    let mut report = ExperimentReport::new("s3-counting", "symmetric:3");
    let mut realizable_q = Vec::new();
    for q in 0..=6u32 {
        let a = Multiset::empty(6).with(s, q).with(t, 6 - q);
        let matching = decide_matching(&g, &a).expect("size 6");
        let tiling = decide_cycle_tiling(&g, &a).expect("size 6");
        report.expect_eq(&format!("q={q}: deciders agree"), matching.status, tiling.status);
        if let Some(cert) = &matching.certificate {
            realizable_q.push(q);
            let ok = verify_certificate(&g, &a, cert).is_ok();
            report.expect(
                &format!("q={q}: certificate verifies"),
                ok,
                format!("{} cycles", cert.cycles.len()),
            );
            if q == 3 {
                report.expect_eq("q=3: realized by a single 6-cycle", 1, cert.cycles.len());
            }
        }
    }
    report.expect_eq("realizable q", vec![0, 3, 6], realizable_q);
    report.finish(start)
}

/// `G = S3 × K` with `3 ∤ |K|` and `A = {s' × 2|K|, t' × 4|K|}` where
/// `s' = (s, 1)` and `t' = (t, 1)`: obstruction and ordering pass, but `A`
/// is not realizable. The direct decider confirms up to order 12.
pub fn verify_family(k_spec: &GroupSpec, budgets: &Budgets) -> Result<ExperimentReport, ExperimentError> {
    let start = Instant::now();
    let k = k_spec.build()?;
    if k.order() % 3 == 0 {
        return Err(ExperimentError::Precondition(format!(
            "|K| = {} is divisible by 3",
            k.order()
        )));
    }
    let order = 6 * k.order();
    if order > budgets.family_max_order {
        return Err(ExperimentError::BudgetExceeded {
            what: "|S3 x K|",
            needed: order as u128,
            budget: budgets.family_max_order as u128,
        });
    }
    let (s3, s, t) = s3_with_generators();
    let g = direct_product(&s3, &k);
    let spec = GroupSpec::product(GroupSpec::Symmetric(3), k_spec.clone());
    let mut report = ExperimentReport::new("family", &spec);
    let (s2, t2) = (s * k.order(), t * k.order());
    let m = k.order() as u32;
    let a = Multiset::empty(order).with(s2, 2 * m).with(t2, 4 * m);

    let obstruction = abelianization_obstruction(&g, &a).expect("size |G|");
    report.expect(
        "abelianization test passes",
        obstruction.passed(),
        format!("{obstruction:?}"),
    );
    let ordering = product_one_ordering(&g, &a);
    let ordering_ok = ordering
        .as_ref()
        .is_some_and(|o| *partial_products(&g, o).last().unwrap() == 0);
    report.expect(
        "product-one ordering exists",
        ordering_ok,
        format!("{}", ordering.is_some()),
    );

    let h = Subgroup::generated(&g, &[s2, t2]);
    report.expect_eq("H = S3 x {1} has order 6", 6, h.order());
    let reduction = decide_subgroup_reduction(&g, &h, &a, ReductionOptions::default()).expect("support in H");
    report.expect_eq("subgroup reduction decider", Status::NotRealizable, reduction.status);
    if order <= 12 {
        let matching = decide_matching(&g, &a).expect("size |G|");
        report.expect_eq("matching decider", Status::NotRealizable, matching.status);
        report.expect_eq("reduction and matching agree", matching.status, reduction.status);
    }
    Ok(report.finish(start))
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRow {
    pub multiset: Multiset,
    pub obstruction_pass: bool,
    pub matching: Status,
    pub tiling: Status,
    /// For realizable rows: both certificates passed [`verify_certificate`].
    pub certificates_verified: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationSummary {
    pub total: usize,
    pub realizable: usize,
    pub obstruction_pass: usize,
    /// Pass the abelianization test but are not realizable.
    pub obstruction_insufficient: usize,
    pub decider_disagreements: usize,
    pub certificate_failures: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub rows: Vec<ClassificationRow>,
    pub summary: ClassificationSummary,
}

impl Classification {
    pub fn status_of(&self) -> HashMap<&Multiset, Status> {
        self.rows.iter().map(|r| (&r.multiset, r.matching)).collect()
    }
}

/// Runs both deciders on every multiset of size `|G|`, in lexicographic
/// order of count vectors.
pub fn classify_multisets(g: &FiniteGroup, budgets: &Budgets) -> Result<Classification, ExperimentError> {
    let n = g.order();
    let needed = Multiset::count_of_size(n, n);
    if needed > budgets.classify_max_multisets {
        return Err(ExperimentError::BudgetExceeded {
            what: "multisets to classify",
            needed,
            budget: budgets.classify_max_multisets,
        });
    }
    let rows: Vec<ClassificationRow> = Multiset::all_of_size(n, n as u32)
        .into_par_iter()
        .map(|a| {
            let matching = decide_matching(g, &a).expect("size |G|");
            let tiling = decide_cycle_tiling(g, &a).expect("size |G|");
            let certificates_verified = matching.certificate.as_ref().map(|c| {
                verify_certificate(g, &a, c).is_ok()
                    && tiling
                        .certificate
                        .as_ref()
                        .is_some_and(|c| verify_certificate(g, &a, c).is_ok())
            });
            ClassificationRow {
                obstruction_pass: matching.obstruction.passed(),
                matching: matching.status,
                tiling: tiling.status,
                certificates_verified,
                multiset: a,
            }
        })
        .collect();
    let summary = ClassificationSummary {
        total: rows.len(),
        realizable: rows.iter().filter(|r| r.matching.is_realizable()).count(),
        obstruction_pass: rows.iter().filter(|r| r.obstruction_pass).count(),
        obstruction_insufficient: rows
            .iter()
            .filter(|r| r.obstruction_pass && !r.matching.is_realizable())
            .count(),
        decider_disagreements: rows.iter().filter(|r| r.matching != r.tiling).count(),
        certificate_failures: rows.iter().filter(|r| r.certificates_verified == Some(false)).count(),
    };
    Ok(Classification { rows, summary })
}

/// Classification of `S3` with the structural checks on top: deciders agree,
/// certificates verify, no realizable row fails the abelianization test, and
/// realizability is invariant under conjugation and inversion.
pub fn verify_s3_classification(budgets: &Budgets) -> Result<ExperimentReport, ExperimentError> {
    let start = Instant::now();
    let (g, s, t) = s3_with_generators();
    let mut report = ExperimentReport::new("classify-s3", "symmetric:3");
    let table = classify_multisets(&g, budgets)?;
    let sum = &table.summary;
    report.expect_eq("multisets of size 6", 462, sum.total);
    report.expect_eq("decider disagreements", 0, sum.decider_disagreements);
    report.expect_eq("certificate failures", 0, sum.certificate_failures);
    let realizable_but_obstructed = table
        .rows
        .iter()
        .filter(|r| r.matching.is_realizable() && !r.obstruction_pass)
        .count();
    report.expect_eq(
        "realizable rows failing the abelianization test",
        0,
        realizable_but_obstructed,
    );
    report.expect_eq(
        "realizable count (regression value)",
        S3_REALIZABLE_COUNT,
        sum.realizable,
    );

    let counterexample = Multiset::empty(6).with(s, 2).with(t, 4);
    let row = table.rows.iter().find(|r| r.multiset == counterexample);
    report.expect_eq(
        "row {s*2,t*4}: obstruction passes, not realizable",
        Some((true, Status::NotRealizable)),
        row.map(|r| (r.obstruction_pass, r.matching)),
    );

    let (conj, inv) = invariance_violations(&g, &table);
    report.expect_eq("conjugation invariance violations", 0, conj);
    report.expect_eq("inversion invariance violations", 0, inv);

    let again = classify_multisets(&g, budgets)?;
    let same = again
        .rows
        .iter()
        .zip(&table.rows)
        .all(|(a, b)| a.multiset == b.multiset && a.matching == b.matching && a.tiling == b.tiling);
    report.expect(
        "two runs give identical tables",
        same,
        format!("{} rows", again.rows.len()),
    );
    Ok(report.finish(start))
}

/// Counts multisets whose realizability differs from that of some conjugate
/// `cAc⁻¹`, and from that of `A⁻¹`.
pub fn invariance_violations(g: &FiniteGroup, table: &Classification) -> (usize, usize) {
    let status = table.status_of();
    let realizable = |m: &Multiset| status[m].is_realizable();
    let mut conjugation = 0;
    let mut inversion = 0;
    for row in &table.rows {
        let here = row.matching.is_realizable();
        if g.elements().any(|c| realizable(&row.multiset.conjugate(g, c)) != here) {
            conjugation += 1;
        }
        if realizable(&row.multiset.inverse(g)) != here {
            inversion += 1;
        }
    }
    (conjugation, inversion)
}

/// For an abelian group: realizable exactly when the product of all elements
/// of the multiset is the identity.
pub fn verify_hall(g: &FiniteGroup, spec: &str, budgets: &Budgets) -> Result<ExperimentReport, ExperimentError> {
    let start = Instant::now();
    if !g.is_abelian() {
        return Err(ExperimentError::Precondition(format!("{spec} is not abelian")));
    }
    if g.order() > budgets.hall_max_order {
        return Err(ExperimentError::BudgetExceeded {
            what: "abelian group order",
            needed: g.order() as u128,
            budget: budgets.hall_max_order as u128,
        });
    }
    let mut report = ExperimentReport::new("hall", spec);
    let n = g.order();
    let results: Vec<(Multiset, bool, Status)> = Multiset::all_of_size(n, n as u32)
        .into_par_iter()
        .map(|a| {
            let product_one = g.product(a.elements()) == 0;
            let status = decide_matching(g, &a).expect("size |G|").status;
            (a, product_one, status)
        })
        .collect();
    let mismatches: Vec<String> = results
        .iter()
        .filter(|(_, p, s)| *p != s.is_realizable())
        .map(|(a, _, _)| a.display(g))
        .collect();
    report.expect_eq(
        "multisets checked",
        Multiset::count_of_size(n, n) as usize,
        results.len(),
    );
    report.expect_eq(
        "realizable <=> product is identity (mismatches)",
        Vec::<String>::new(),
        mismatches,
    );
    let realizable = results.iter().filter(|(_, _, s)| s.is_realizable()).count();
    let product_one = results.iter().filter(|(_, p, _)| *p).count();
    report.expect_eq("realizable count equals product-one count", product_one, realizable);
    Ok(report.finish(start))
}

/// The abelian groups of order at most 8 used for the Hall check.
pub fn small_abelian_groups() -> Vec<GroupSpec> {
    let c = GroupSpec::Cyclic;
    let mut specs: Vec<GroupSpec> = (2..=8).map(c).collect();
    specs.push(GroupSpec::product(c(2), c(2)));
    specs.push(GroupSpec::product(c(2), c(4)));
    specs.push(GroupSpec::product(GroupSpec::product(c(2), c(2)), c(2)));
    specs
}

/// Hall check over every group in [`small_abelian_groups`].
pub fn verify_hall_small(budgets: &Budgets) -> Result<ExperimentReport, ExperimentError> {
    let start = Instant::now();
    let mut report = ExperimentReport::new("hall", "abelian groups of order <= 8");
    for spec in small_abelian_groups() {
        let g = spec.build()?;
        let sub = verify_hall(&g, &spec.to_string(), budgets)?;
        for claim in sub.claims {
            report.claims.push(Claim {
                label: format!("{spec}: {}", claim.label),
                ..claim
            });
        }
    }
    Ok(report.finish(start))
}

/// Both deciders agree on every multiset over the given groups, and every
/// positive certificate verifies.
pub fn verify_decider_equivalence(specs: &[GroupSpec], budgets: &Budgets) -> Result<ExperimentReport, ExperimentError> {
    let start = Instant::now();
    let mut report = ExperimentReport::new("decider-equivalence", "symmetric:3 and groups of order <= 4");
    for spec in specs {
        let g = spec.build()?;
        let table = classify_multisets(&g, budgets)?;
        report.expect_eq(
            &format!("{spec}: disagreements"),
            0,
            table.summary.decider_disagreements,
        );
        report.expect_eq(
            &format!("{spec}: certificate failures"),
            0,
            table.summary.certificate_failures,
        );
        report.expect(
            &format!("{spec}: every realizable row carries certificates"),
            table
                .rows
                .iter()
                .all(|r| r.matching.is_realizable() == r.certificates_verified.is_some()),
            format!("{} realizable of {}", table.summary.realizable, table.summary.total),
        );
    }
    Ok(report.finish(start))
}

/// Groups used by [`verify_decider_equivalence`] on the shipped configuration.
pub fn equivalence_groups() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Symmetric(3),
        GroupSpec::Cyclic(1),
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(4),
        GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)),
    ]
}

/// Subgroup reduction agrees with the matching decider for every multiset
/// of size 6 supported in `<t>` and in `<st>` inside `S3`.
pub fn verify_subgroup_reduction() -> ExperimentReport {
    let start = Instant::now();
    let (g, s, t) = s3_with_generators();
    let mut report = ExperimentReport::new("subgroup-reduction", "symmetric:3");
    for (label, gen) in [("<t>", t), ("<st>", g.mul(s, t))] {
        let h = Subgroup::generated(&g, &[gen]);
        let members = h.members().to_vec();
        let multisets: Vec<Multiset> = Multiset::all_of_size(members.len(), 6)
            .into_iter()
            .map(|local| local.map(6, |i| members[i]))
            .collect();
        let mut disagreements = Vec::new();
        let mut bad_certs = 0;
        for a in &multisets {
            let reduced = decide_subgroup_reduction(&g, &h, a, ReductionOptions::default()).expect("support in H");
            let direct = decide_matching(&g, a).expect("size 6");
            if reduced.status != direct.status {
                disagreements.push(a.display(&g));
            }
            if let Some(cert) = &reduced.certificate {
                bad_certs += usize::from(verify_certificate(&g, a, cert).is_err());
            }
        }
        let expected_count = if members.len() == 2 { 7 } else { 28 };
        report.expect_eq(&format!("{label}: multisets"), expected_count, multisets.len());
        report.expect_eq(&format!("{label}: disagreements"), Vec::<String>::new(), disagreements);
        report.expect_eq(&format!("{label}: certificate failures"), 0, bad_certs);
    }
    report.finish(start)
}

pub const EXPERIMENT_IDS: &[&str] = &[
    "s3-words",
    "s3-counterexample",
    "s3-counting",
    "family-c1",
    "family-c2",
    "hall",
    "decider-equivalence",
    "subgroup-reduction",
    "classify-s3",
];

pub fn run_experiment(id: &str, budgets: &Budgets) -> Result<ExperimentReport, ExperimentError> {
    match id {
        "s3-words" => Ok(verify_s3_words()),
        "s3-counterexample" => Ok(verify_s3_counterexample()),
        "s3-counting" => Ok(verify_s3_counting()),
        "family-c1" => verify_family(&GroupSpec::Cyclic(1), budgets),
        "family-c2" => verify_family(&GroupSpec::Cyclic(2), budgets),
        "hall" => verify_hall_small(budgets),
        "decider-equivalence" => verify_decider_equivalence(&equivalence_groups(), budgets),
        "subgroup-reduction" => Ok(verify_subgroup_reduction()),
        "classify-s3" => verify_s3_classification(budgets),
        other => Err(ExperimentError::Precondition(format!(
            "unknown experiment {other:?}; known: {}",
            EXPERIMENT_IDS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    #[test]
    fn family_rejects_multiples_of_three() {
        let err = verify_family(&GroupSpec::Cyclic(3), &Budgets::default()).unwrap_err();
        assert!(matches!(err, ExperimentError::Precondition(_)));
    }

    #[test]
    fn family_respects_budget() {
        let budgets = Budgets {
            family_max_order: 12,
            ..Budgets::default()
        };
        let err = verify_family(&GroupSpec::Cyclic(4), &budgets).unwrap_err();
        assert!(matches!(err, ExperimentError::BudgetExceeded { .. }));
    }

    #[test]
    fn trivial_k_degenerates_to_s3() {
        let report = verify_family(&GroupSpec::Cyclic(1), &Budgets::default()).unwrap();
        assert!(report.passed(), "{report:#?}");
    }

    #[test]
    fn hall_small_cases() {
        let budgets = Budgets::default();
        let c2 = cyclic(2).unwrap();
        let report = verify_hall(&c2, "cyclic:2", &budgets).unwrap();
        assert!(report.passed());
        let c3 = cyclic(3).unwrap();
        let realizable = Multiset::all_of_size(3, 3)
            .iter()
            .filter(|a| decide_matching(&c3, a).unwrap().status.is_realizable())
            .count();
        assert_eq!(realizable, 4);
        assert!(matches!(
            verify_hall(&symmetric(3).unwrap(), "symmetric:3", &budgets),
            Err(ExperimentError::Precondition(_))
        ));
    }

    #[test]
    fn classify_budget() {
        let budgets = Budgets {
            classify_max_multisets: 100,
            ..Budgets::default()
        };
        assert!(matches!(
            classify_multisets(&symmetric(3).unwrap(), &budgets),
            Err(ExperimentError::BudgetExceeded { needed: 462, .. })
        ));
    }

    #[test]
    fn c2_classification() {
        let table = classify_multisets(&cyclic(2).unwrap(), &Budgets::default()).unwrap();
        assert_eq!(table.summary.total, 3);
        let realizable: Vec<_> = table
            .rows
            .iter()
            .filter(|r| r.matching.is_realizable())
            .map(|r| r.multiset.counts().to_vec())
            .collect();
        assert_eq!(realizable, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn unknown_experiment() {
        assert!(run_experiment("nope", &Budgets::default()).is_err());
    }
}
