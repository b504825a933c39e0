use proptest::prelude::*;

use lahkit::sizeset::{dsl_family, parse_sizeset, SizeSet};

fn family_member() -> impl Strategy<Value = SizeSet> {
    let sets = dsl_family();
    (0..sets.len()).prop_map(move |i| sets[i].clone())
}

fn dsl_text() -> impl Strategy<Value = String> {
    prop_oneof![
        prop::collection::btree_set(1usize..15, 1..5)
            .prop_map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
        (1usize..6).prop_map(|m| format!(">={m}")),
        (1usize..6).prop_map(|m| format!("<={m}")),
        (1usize..6).prop_map(|p| format!("not {p}")),
        (2usize..5, 0usize..5).prop_map(|(m, r)| format!("mod {} {m}", r % m)),
        Just("all".to_string()),
        Just("odd".to_string()),
        Just("even".to_string()),
    ]
}

proptest! {
    #[test]
    fn zero_is_never_a_member(set in family_member()) {
        prop_assert!(!set.contains(0));
    }

    #[test]
    fn members_agree_with_membership(text in dsl_text(), bound in 0usize..30) {
        let set = parse_sizeset(&text).unwrap();
        let members = set.members_up_to(bound);
        prop_assert!(members.windows(2).all(|w| w[0] < w[1]));
        for s in 0..=bound {
            prop_assert_eq!(members.contains(&s), set.contains(s));
        }
        prop_assert_eq!(parse_sizeset(&set.to_string()).unwrap().members_up_to(bound), members);
    }

    #[test]
    fn derived_sets_are_run_boundaries(text in dsl_text(), bound in 1usize..30) {
        let set = parse_sizeset(&text).unwrap();
        let runs = set.derived_sets(bound);
        for &s in &runs.least {
            prop_assert!(set.contains(s) && !set.contains(s - 1));
        }
        for &s in &runs.greatest {
            prop_assert!(set.contains(s) && !set.contains(s + 1));
        }
        for &s in &runs.hat {
            prop_assert!(runs.greatest.contains(&s) && !runs.least.contains(&s));
        }
        // runs alternate: every run has one least and at most one greatest within the bound
        prop_assert!(runs.least.len() >= runs.greatest.len());
    }

    #[test]
    fn removal_removes_exactly_one(text in dsl_text(), u in 1usize..12, bound in 1usize..25) {
        let set = parse_sizeset(&text).unwrap();
        let reduced = set.without(u);
        for s in 1..=bound {
            prop_assert_eq!(reduced.contains(s), set.contains(s) && s != u);
        }
    }
}
