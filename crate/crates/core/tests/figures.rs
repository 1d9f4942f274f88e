//! Behaviour pinned on the two worked-example graphs beyond the
//! acceptance gate: rule-by-rule outcomes, witness re-verification, the
//! R5 ⇒ R6 agreement, and census poisoning.

use vtlink::cayley::{self, CensusOptions};
use vtlink::eliminate::{run_all, verify_witness, Options, Outcome, RuleId, Scope};
use vtlink::{canonical_form, Graph};

fn fixture(name: &str) -> Graph {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    vtlink::parse_edge_list(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn all_rules_report(g: &Graph) -> vtlink::EliminationReport {
    run_all(
        g,
        &Options {
            all_rules: true,
            ..Options::default()
        },
    )
}

#[test]
fn figure1_rule_by_rule() {
    let g = fixture("figure1.edges");
    let report = all_rules_report(&g);
    let outcome = |id: RuleId| {
        report
            .rules
            .iter()
            .find(|r| r.id == id)
            .map(|r| r.outcome)
            .unwrap()
    };
    assert!(report.asymmetric);
    assert_eq!(outcome(RuleId::EdgeBound), Outcome::Inconclusive); // 76 < 624
    assert_eq!(outcome(RuleId::CompleteValency), Outcome::Inconclusive);
    assert_eq!(outcome(RuleId::OddClassInvolution), Outcome::Inconclusive);
    assert_eq!(outcome(RuleId::UniqueClique), Outcome::Inconclusive);
    assert_eq!(outcome(RuleId::PrimeClique), Outcome::Eliminated);
    assert_eq!(outcome(RuleId::OrbitRestrictorOrder), Outcome::Eliminated);
    // a neighbourhood automorphism reverses the shared 4-path, so the
    // fixed-subset rule keeps a valid semiregular restriction
    assert_eq!(outcome(RuleId::FixedSubset), Outcome::Inconclusive);

    assert_eq!(report.overall.outcome, Outcome::Eliminated);
    assert_eq!(report.overall.rule, Some(RuleId::PrimeClique));
    assert_eq!(report.overall.scope, Some(Scope::VertexTransitive));
}

#[test]
fn figure1_r5_witness_matches_r6_clique() {
    // R5 ⇒ R6 agreement: both eliminate through the same clique {u,v}
    let g = fixture("figure1.edges");
    let report = all_rules_report(&g);
    let r5 = report
        .rules
        .iter()
        .find(|r| r.id == RuleId::PrimeClique)
        .unwrap();
    let r6 = report
        .rules
        .iter()
        .find(|r| r.id == RuleId::OrbitRestrictorOrder)
        .unwrap();
    assert_eq!(r5.witness["p"], 3);
    assert_eq!(r5.witness["common_count"], 4);
    assert_eq!(r5.witness["clique"], r6.witness["clique"]);
    assert_eq!(r6.witness["s_plus_one"], 3);
}

#[test]
fn figure1_witnesses_reverify() {
    let g = fixture("figure1.edges");
    let opts = Options {
        all_rules: true,
        ..Options::default()
    };
    for v in run_all(&g, &opts).rules {
        assert!(verify_witness(&g, &v, &opts), "witness of {} failed", v.id);
    }
}

#[test]
fn figure1_stop_at_first_elimination_by_default() {
    let g = fixture("figure1.edges");
    let report = run_all(&g, &Options::default());
    assert_eq!(report.rules.len(), 5); // R1..R5, then stop
    assert_eq!(report.overall.rule, Some(RuleId::PrimeClique));
}

#[test]
fn figure2_never_eliminated() {
    let g = fixture("figure2.edges");
    let report = all_rules_report(&g);
    assert_eq!(report.overall.outcome, Outcome::Inconclusive);
    for v in &report.rules {
        assert_ne!(v.outcome, Outcome::Eliminated, "rule {}", v.id);
    }
}

#[test]
fn poisoned_census_is_caught() {
    let groups: Vec<(String, cayley::GroupTable)> = (3..=6)
        .map(|n| (format!("cyclic({n})"), cayley::cyclic(n).unwrap()))
        .collect();
    let mut census = cayley::neighbourhood_census(&groups, &CensusOptions::default());
    assert!(cayley::soundness_check(&census, &Options::default()).is_empty());

    let poison = canonical_form(&fixture("figure1.edges")).unwrap();
    census.forms.insert(poison.clone());
    let violations = cayley::soundness_check(&census, &Options::default());
    assert_eq!(violations.len(), 1);
    assert_eq!(violations[0].member, poison);
}
