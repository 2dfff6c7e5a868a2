//! Independent oracles for the classifier.

use repcheck::character::{char_table, conj_character, decompose, ProjectiveClassTag};
use repcheck::classifier::{
    brute_force_matches, classify, classify_ordered, enumerate_witnesses, parity_sweep,
    seven_families, Check, FamilyName, Scope,
};
use repcheck::{BuiltinGroup, ClassFunction};

fn permutations(items: &[Check]) -> Vec<Vec<Check>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

#[test]
fn only_irreducible_characters_match_any_family() {
    let (checked, matches) = brute_force_matches(4).unwrap();
    assert!(checked > 50);
    for m in &matches {
        assert_eq!(m.multiplicities.iter().sum::<u64>(), 1, "{m:?}");
    }
    let mut found: Vec<(FamilyName, ProjectiveClassTag)> =
        matches.iter().map(|m| (m.family, m.tag)).collect();
    found.dedup();
    assert_eq!(
        found,
        [
            (FamilyName::K4_1234, ProjectiveClassTag::Trivial),
            (FamilyName::D4_125, ProjectiveClassTag::NonTrivial),
        ]
    );
}

#[test]
fn parity_formula_matches_decomposition() {
    let (cases, bad) = parity_sweep(4).unwrap();
    assert_eq!(cases, 85);
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn parity_by_hand() {
    // χU = χ1 + χ5 has degree 3, so |χU|² has degree 9 and m5 = 2·1·1.
    let t = char_table(BuiltinGroup::D4).unwrap();
    let chi = ClassFunction::combination(&t.irreducibles, &[1, 0, 0, 0, 1]).unwrap();
    let m = decompose(&conj_character(&chi), &t).unwrap();
    assert_eq!(m[4], 2);
    assert_eq!(
        m.iter().zip(t.degrees()).map(|(a, b)| a * b).sum::<u64>(),
        9
    );
}

#[test]
fn witnesses_agree_with_battery() {
    for f in seven_families().unwrap() {
        let v = classify(&f).unwrap();
        let witnesses = enumerate_witnesses(&f).unwrap();
        assert_eq!(v.realizable, !witnesses.is_empty(), "{}", f.name);
        for w in &witnesses {
            assert!(v.class_exclusions.iter().all(|r| !r.scope.covers(w.tag)));
        }
        if !v.realizable {
            let covers_all = f
                .projective_classes()
                .iter()
                .all(|&t| v.obstructions.iter().any(|r| r.scope.covers(t)));
            assert!(covers_all, "{}", f.name);
        }
    }
}

#[test]
fn verdicts_invariant_under_check_order() {
    let perms = permutations(&Check::ALL);
    assert_eq!(perms.len(), 24);
    for f in seven_families().unwrap() {
        let base = classify(&f).unwrap();
        for p in &perms {
            let v = classify_ordered(&f, p).unwrap();
            assert_eq!(v.realizable, base.realizable);
            assert_eq!(v.obstructions, base.obstructions);
            assert_eq!(v.class_exclusions, base.class_exclusions);
        }
    }
}

#[test]
fn scopes_of_the_d4_obstructions() {
    let fams = seven_families().unwrap();
    let d4_135 = classify(&fams[3]).unwrap();
    let scopes: Vec<Scope> = d4_135.obstructions.iter().map(|o| o.scope).collect();
    assert_eq!(scopes, [Scope::Trivial, Scope::NonTrivial]);
    let d4_125 = classify(&fams[2]).unwrap();
    assert!(d4_125.obstructions.is_empty());
    assert_eq!(d4_125.class_exclusions.len(), 1);
    assert_eq!(d4_125.class_exclusions[0].scope, Scope::Trivial);
}
