use std::collections::{BTreeSet, HashSet, VecDeque};

use itertools::Itertools;
use proptest::prelude::*;
use rootblocks::{cartan_data, CartanType, WeylElement, WeylGroup, WeylWord};

const CAP: usize = 100_000;

fn groups_up_to(rank: usize) -> Vec<WeylGroup> {
    CartanType::all_up_to_rank(rank)
        .into_iter()
        .map(|t| WeylGroup::new(cartan_data(t).unwrap()))
        .collect()
}

/// Every element reachable as a subword of `word`.
fn subword_products(group: &WeylGroup, word: &WeylWord) -> HashSet<WeylElement> {
    let mut out = HashSet::from([group.identity()]);
    for &i in word.letters() {
        let s = group.simple(i).unwrap();
        let next: Vec<WeylElement> = out.iter().map(|x| x.mul(s)).collect();
        out.extend(next);
    }
    out
}

/// Fewest reflections (conjugates of simple reflections) whose product is each element.
fn reflection_lengths(group: &WeylGroup, elements: &[WeylElement]) -> Vec<(WeylElement, usize)> {
    let mut reflections = HashSet::new();
    for w in elements {
        for i in 1..=group.rank() {
            let s = group.simple(i).unwrap();
            reflections.insert(w.mul(s).mul(&group.inverse(w)));
        }
    }
    let mut dist = std::collections::HashMap::from([(group.identity(), 0usize)]);
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for t in &reflections {
            let y = x.mul(t);
            if !dist.contains_key(&y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    elements.iter().map(|w| (w.clone(), dist[w])).collect()
}

#[test]
fn lengths_words_and_inverses_agree_up_to_rank_3() {
    for g in groups_up_to(3) {
        for w in g.elements_sorted(CAP).unwrap() {
            let word = g.reduced_word(&w);
            assert_eq!(g.length(&w), word.len());
            assert_eq!(g.from_word(&word).unwrap(), w);
            let inv = g.inverse(&w);
            assert_eq!(g.length(&inv), g.length(&w));
            assert_eq!(g.rank_s(&inv), g.rank_s(&w));
            assert!(g.rank_s(&w) <= g.length(&w));
            assert_eq!(g.rank_s(&w) % 2, g.length(&w) % 2);
        }
    }
}

#[test]
fn rank_function_counts_reflections_up_to_rank_3() {
    for g in groups_up_to(3) {
        let elements = g.elements_sorted(CAP).unwrap();
        for (w, d) in reflection_lengths(&g, &elements) {
            assert_eq!(
                g.rank_s(&w),
                d,
                "{} {}",
                g.cartan().cartan_type,
                g.reduced_word(&w)
            );
        }
    }
}

#[test]
fn reduced_words_share_letters_and_detect_distinctness() {
    for g in groups_up_to(3) {
        for w in g.elements_sorted(CAP).unwrap() {
            let words = g.all_reduced_words(&w);
            let sets: BTreeSet<BTreeSet<usize>> = words.iter().map(WeylWord::letter_set).collect();
            assert_eq!(sets.len(), 1);
            let distinct = words.iter().any(WeylWord::has_distinct_letters);
            assert_eq!(g.rank_s(&w) == g.length(&w), distinct);
        }
    }
}

#[test]
fn bruhat_order_matches_subwords_up_to_rank_3() {
    for g in groups_up_to(3) {
        let elements = g.elements_sorted(CAP).unwrap();
        for w in &elements {
            let below = subword_products(&g, &g.reduced_word(w));
            for u in &elements {
                assert_eq!(g.bruhat_leq(u, w), below.contains(u));
            }
        }
    }
}

#[test]
fn coxeter_relations_hold_up_to_rank_4() {
    for g in groups_up_to(4) {
        let cd = g.cartan();
        for (i, j) in (1..=g.rank()).tuple_combinations() {
            let product = g.simple(i).unwrap().mul(g.simple(j).unwrap());
            let expected = match cd.a[(i - 1, j - 1)] * cd.a[(j - 1, i - 1)] {
                0 => 2,
                1 => 3,
                2 => 4,
                3 => 6,
                other => panic!("bond {other}"),
            };
            assert_eq!(g.order(&product), expected);
        }
        for i in 1..=g.rank() {
            assert_eq!(g.order(g.simple(i).unwrap()), 2);
        }
        let w0 = g.longest_element();
        assert_eq!(g.length(&w0), cd.n_pos);
        assert!(w0.mul(&w0).is_identity());
    }
}

#[test]
fn group_orders_match_the_known_values() {
    for (t, n) in [
        ("A1", 2),
        ("A3", 24),
        ("B3", 48),
        ("G2", 12),
        ("D4", 192),
        ("F4", 1152),
    ] {
        let g = WeylGroup::parse(t).unwrap();
        assert_eq!(g.enumerate(CAP).unwrap().count(), n, "{t}");
    }
}

fn word_strategy(rank: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=rank, 0..12)
}

proptest! {
    #[test]
    fn parsed_words_multiply_left_to_right(word in word_strategy(3)) {
        let g = WeylGroup::parse("B3").unwrap();
        let text = word.iter().join(",");
        let parsed = g.parse_element(&text).unwrap();
        let product = word
            .iter()
            .fold(g.identity(), |acc, &i| acc.mul(g.simple(i).unwrap()));
        prop_assert_eq!(&parsed, &product);
        prop_assert!(g.length(&parsed) <= word.len());
        prop_assert_eq!(g.from_word(&g.reduced_word(&parsed)).unwrap(), parsed);
    }

    #[test]
    fn longest_element_prefix_syntax(word in word_strategy(3)) {
        let g = WeylGroup::parse("A3").unwrap();
        let text = if word.is_empty() { "w0".to_string() } else { format!("w0*{}", word.iter().join(",")) };
        let tail = g.parse_element(&word.iter().join(",")).unwrap();
        prop_assert_eq!(g.parse_element(&text).unwrap(), g.longest_element().mul(&tail));
    }

    #[test]
    fn bruhat_is_graded(a in word_strategy(2), b in word_strategy(2)) {
        let g = WeylGroup::parse("G2").unwrap();
        let u = g.parse_element(&a.iter().join(",")).unwrap();
        let w = g.parse_element(&b.iter().join(",")).unwrap();
        if g.bruhat_leq(&u, &w) {
            prop_assert!(g.length(&u) <= g.length(&w));
            prop_assert!(g.bruhat_leq(&g.inverse(&u), &g.inverse(&w)));
        }
        prop_assert!(g.bruhat_leq(&g.identity(), &w));
        prop_assert!(g.bruhat_leq(&w, &g.longest_element()));
    }
}
