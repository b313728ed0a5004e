mod common;

use common::{text, Oracle};
use olfm::generate::random_society;
use olfm::scores::{sat_all, ScoreConfig};
use olfm::{ActorClass, ActorId, DecisionRule, DecisionVector, Error, Outcome, Society};
use proptest::prelude::*;

fn rule_strategy() -> impl Strategy<Value = DecisionRule> {
    prop_oneof![
        Just(DecisionRule::Unanimity),
        Just(DecisionRule::fraction(1, 2).unwrap()),
        Just(DecisionRule::fraction(3, 5).unwrap()),
        Just(DecisionRule::fraction(3, 4).unwrap()),
    ]
}

/// A generated odd-sized layered society with up to 9 actors.
fn society_strategy() -> impl Strategy<Value = Society> {
    (
        any::<u64>(),
        prop::collection::vec(1usize..=3, 1..=4),
        0.0f64..=1.0,
        rule_strategy(),
    )
        .prop_filter("odd actor count", |(_, sizes, _, _)| {
            sizes.iter().sum::<usize>() % 2 == 1
        })
        .prop_map(|(seed, sizes, density, rule)| random_society(seed, &sizes, density, rule).unwrap())
}

fn edges_strategy() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=9).prop_flat_map(|n| (Just(n), prop::collection::vec((1..=n, 1..=n), 0..12)))
}

fn all_vectors(n: usize) -> impl Iterator<Item = DecisionVector> {
    (0..1u64 << n).map(move |v| DecisionVector::from_integer(n, v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn add_edge_equals_build((n, edges) in edges_strategy(), extra in (1usize..=9, 1usize..=9)) {
        let u = DecisionRule::Unanimity;
        let (i, j) = (extra.0.min(n), extra.1.min(n));
        if let Ok(base) = Society::new(n, edges.iter().copied(), u) {
            let mut with = edges.clone();
            with.push((i, j));
            match (base.add_edge(ActorId::new(i), ActorId::new(j)), Society::new(n, with, u)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                (a, b) => prop_assert!(false, "add_edge {:?} vs build {:?}", a, b),
            }
        }
    }

    #[test]
    fn layers_and_classes_consistent((n, edges) in edges_strategy()) {
        let Ok(s) = Society::new(n, edges, DecisionRule::Unanimity) else { return Ok(()) };
        for &(a, b) in s.edges() {
            prop_assert_eq!(s.layer(b).unwrap(), s.layer(a).unwrap() + 1);
        }
        let used: std::collections::BTreeSet<u32> = s.actors().map(|a| s.layer(a).unwrap()).collect();
        prop_assert_eq!(used.len() as u32, s.layer_count());
        for a in s.actors() {
            let nb = s.neighbors(a).unwrap();
            let expected = match (nb.predecessors.is_empty(), nb.successors.is_empty()) {
                (true, false) => ActorClass::OpinionLeader,
                (false, true) => ActorClass::Follower,
                (true, true) => ActorClass::Independent,
                (false, false) => ActorClass::Mediator,
            };
            prop_assert_eq!(s.classify(a).unwrap(), expected);
            if nb.predecessors.is_empty() {
                prop_assert_eq!(s.layer(a).unwrap(), 1);
            }
        }
        if s.layer_count() <= 2 {
            prop_assert!(s.members(ActorClass::Mediator).is_empty());
        }
        let total: usize = [ActorClass::OpinionLeader, ActorClass::Follower, ActorClass::Independent, ActorClass::Mediator]
            .iter()
            .map(|&c| s.members(c).len())
            .sum();
        prop_assert_eq!(total, n);
    }

    #[test]
    fn propagation_matches_oracle(s in society_strategy(), seed in any::<u64>()) {
        let oracle = Oracle::of(&s);
        let x = DecisionVector::from_integer(s.n(), seed & ((1 << s.n()) - 1)).unwrap();
        let expected = text(&oracle.collective(&common::bits(&x.to_string())));
        prop_assert_eq!(s.propagate(x).unwrap().to_string(), expected);
    }

    #[test]
    fn scores_match_oracle(s in society_strategy()) {
        let table = sat_all(&s, &ScoreConfig::default()).unwrap();
        let oracle = Oracle::of(&s);
        prop_assert_eq!(table.sat_vector(), oracle.sats());
        prop_assert_eq!(table.total_sat, oracle.total());
    }

    #[test]
    fn monotone_in_each_actor(s in society_strategy()) {
        for x in all_vectors(s.n()) {
            let mid = s.decide(x).unwrap();
            prop_assert!(mid != Outcome::Tie);
            for i in s.actors() {
                prop_assert!(s.decide(x.with_bit(i, false).unwrap()).unwrap() <= mid);
                prop_assert!(mid <= s.decide(x.with_bit(i, true).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn sources_keep_their_bit_and_single_predecessors_copy(s in society_strategy()) {
        for x in all_vectors(s.n()) {
            let c = s.propagate(x).unwrap();
            for i in s.actors() {
                let nb = s.neighbors(i).unwrap();
                if nb.predecessors.is_empty() {
                    prop_assert_eq!(c.get(i), x.get(i));
                }
                if let [p] = nb.predecessors.as_slice() {
                    prop_assert_eq!(c.get(i), c.get(*p));
                }
            }
        }
    }

    #[test]
    fn near_one_fraction_is_unanimity(s in society_strategy()) {
        let u = s.with_rule(DecisionRule::Unanimity);
        let max_in = u.actors().map(|a| u.degree(a).unwrap().indegree as u64).max().unwrap_or(0).max(2);
        // floor(q |P|) = |P| - 1 for every indegree up to max_in
        let f = u.with_rule(DecisionRule::fraction(max_in - 1, max_in).unwrap());
        for x in all_vectors(s.n()) {
            prop_assert_eq!(u.propagate(x).unwrap(), f.propagate(x).unwrap());
        }
    }

    #[test]
    fn twins_share_satisfaction(s in society_strategy()) {
        let table = sat_all(&s, &ScoreConfig::default()).unwrap();
        for i in s.actors() {
            for j in s.actors().filter(|&j| j > i) {
                let (a, b) = (s.neighbors(i).unwrap(), s.neighbors(j).unwrap());
                if a.predecessors == b.predecessors && a.successors == b.successors {
                    prop_assert_eq!(table.sat(i), table.sat(j));
                }
            }
        }
    }

    #[test]
    fn society_json_round_trip(s in society_strategy()) {
        prop_assert_eq!(Society::from_json(&s.to_json()).unwrap(), s);
    }

    #[test]
    fn vector_forms_round_trip(n in 1usize..=64, raw in any::<u64>()) {
        let value = if n == 64 { raw } else { raw & ((1 << n) - 1) };
        let x = DecisionVector::from_integer(n, value).unwrap();
        prop_assert_eq!(x.to_integer(), value);
        prop_assert_eq!(x.to_string().parse::<DecisionVector>().unwrap(), x);
        prop_assert_eq!(x.to_string().len(), n);
    }

    #[test]
    fn worker_count_does_not_change_scores(s in society_strategy(), workers in 2usize..=9) {
        let one = sat_all(&s, &ScoreConfig::default()).unwrap();
        let many = sat_all(&s, &ScoreConfig::default().with_workers(workers)).unwrap();
        prop_assert_eq!(one, many);
    }
}

#[test]
fn checkers_do_not_touch_inputs() {
    use olfm::axioms::{PairedSystems, Verifier};
    let base = Society::new(5, [(2, 1)], DecisionRule::Unanimity).unwrap();
    let p = PairedSystems::new(base.clone(), ActorId::new(3), ActorId::new(1)).unwrap();
    let snapshot = p.clone();
    let v = Verifier::satisfaction(ScoreConfig::default());
    v.check_equal_gain(&p).unwrap();
    v.check_horizontal_neutrality(&p, ActorId::new(2)).unwrap();
    assert_eq!(p, snapshot);
    assert_eq!(p.base(), &base);
}

#[test]
fn preconditions_always_error() {
    use olfm::axioms::{PairedSystems, Verifier};
    let v = Verifier::satisfaction(ScoreConfig::default());
    for seed in 0..40 {
        let s = random_society(seed, &[2, 2, 1], 0.5, DecisionRule::Unanimity).unwrap();
        for i in s.actors() {
            for j in s.actors() {
                let Ok(p) = PairedSystems::new(s.clone(), i, j) else {
                    continue;
                };
                let j_class = s.classify(j).unwrap();
                let i_source = s.classify(i).unwrap().is_source();
                let r = v.check_equal_gain(&p);
                if !(i_source && j_class == ActorClass::Follower) {
                    assert!(matches!(r, Err(Error::PreconditionUnmet(_))));
                }
                let r = v.check_opposite_gain(&p);
                if j_class != ActorClass::Independent {
                    assert!(matches!(r, Err(Error::PreconditionUnmet(_))));
                }
            }
        }
    }
}
