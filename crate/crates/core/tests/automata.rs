mod common;

use common::*;
use pqn::automata::Direction;
use pqn::MultiTapeAutomaton;
use proptest::prelude::*;

#[test]
fn set_algebra_on_short_words() {
    let failures = set_algebra_failures(4, 3);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn json_round_trip_preserves_language() {
    for (name, a) in corpus() {
        let back = MultiTapeAutomaton::from_json(&a.to_json()).unwrap();
        assert!(back.equivalent(&a).unwrap().is_none(), "{name}");
        assert_eq!(back.states(), a.states());
    }
}

#[test]
fn minimization_is_canonical() {
    for (name, a) in corpus() {
        let m = a.minimize();
        assert!(m.states() <= a.states() + 1, "{name}");
        assert_eq!(m.minimize().to_json(), m.to_json(), "{name}");
        let r = a.reverse().unwrap().reverse().unwrap().minimize();
        assert_eq!(r.states(), m.states(), "{name}");
    }
}

#[test]
fn direction_change_keeps_language() {
    for (name, a) in corpus() {
        for dir in [Direction::LeftToRight, Direction::RightToLeft] {
            let b = a.with_direction(dir).unwrap();
            assert!(a.equivalent(&b).unwrap().is_none(), "{name} {dir}");
        }
    }
}

fn random_automaton() -> impl Strategy<Value = MultiTapeAutomaton> {
    (1usize..5, any::<bool>()).prop_flat_map(|(n, lr)| {
        let edges = proptest::collection::vec(proptest::option::of(0..n as u32), n * 3);
        let finals = proptest::collection::vec(any::<bool>(), n);
        (Just(n), Just(lr), edges, finals).prop_map(|(n, lr, edges, finals)| {
            let dir = if lr { Direction::LeftToRight } else { Direction::RightToLeft };
            let mut a = MultiTapeAutomaton::new(b32(), 1, dir, n).unwrap();
            for s in 0..n {
                for d in 0..3u32 {
                    if let Some(t) = edges[s * 3 + d as usize] {
                        a.set_transition(s as u32, &[d], t).unwrap();
                    }
                }
                a.set_final(s as u32, finals[s]).unwrap();
            }
            a
        })
    })
}

proptest! {
    #[test]
    fn boolean_laws(a in random_automaton(), b in random_automaton()) {
        let words = words_up_to(b32(), 1, 6);
        let both = a.intersection(&b).unwrap();
        let either = a.union(&b).unwrap();
        // de Morgan, checked word by word
        let dm = a.complement().union(&b.complement()).unwrap().complement();
        for w in &words {
            let (x, y) = (accepts(&a, w), accepts(&b, w));
            prop_assert_eq!(accepts(&both, w), x && y);
            prop_assert_eq!(accepts(&either, w), x || y);
            prop_assert_eq!(accepts(&dm, w), x && y);
        }
    }

    #[test]
    fn minimize_and_reverse_keep_words(a in random_automaton()) {
        let m = a.minimize();
        let r = a.reverse().unwrap();
        for w in &words_up_to(b32(), 1, 6) {
            prop_assert_eq!(accepts(&m, w), accepts(&a, w));
            prop_assert_eq!(accepts(&r, w), accepts(&a, w));
        }
    }

    #[test]
    fn pad_close_is_the_closure(a in random_automaton()) {
        let pc = a.pad_close().unwrap();
        prop_assert!(pc.check_padded());
        for w in &words_up_to(b32(), 1, 5) {
            let s = w.strip();
            // zero cycles have at most 4 states, so 8 extra zeros suffice
            let expect = (0..=8).any(|n| accepts(&a, &s.pad(n)));
            prop_assert_eq!(accepts(&pc, w), expect, "{}", w);
        }
    }
}
