use pqn::analysis::*;
use pqn::builtins;
use pqn::logic::EmitOptions;
use pqn::numeration::Base;

fn b32() -> Base {
    Base::new(3, 2).unwrap()
}

#[test]
fn order_grows_but_length_order_levels_off() {
    let b = b32();
    let order = nerode_order_growth(b, 4, 4).unwrap();
    assert_eq!(order.counts(), [1, 5, 15, 27, 53]);
    assert!(order.strictly_increasing());
    let le = builtins::build_le_len(b).unwrap();
    let control = nerode_automaton_growth(&le, 4, 4).unwrap();
    assert!(control.plateaus());
    let bound = le.with_direction(pqn::automata::Direction::LeftToRight).unwrap().minimize().complete().states();
    assert!(control.counts().iter().all(|&c| c <= bound), "{control}");
    assert!(order.to_csv().lines().count() == 6);
}

#[test]
fn modulo_and_density() {
    let b = b32();
    for n in [5, 7] {
        assert_eq!(modulo_cross_check(b, n, 8).unwrap().mismatches, 0);
    }
    for k in 1..=3 {
        let r = mk_density_scan(b, k, 200).unwrap();
        assert!(r.violations.is_empty(), "{r}");
    }
}

#[test]
fn roundtrips() {
    let b = b32();
    let le = builtins::build_le_len(b).unwrap();
    let r = roundtrip_check(&le, 4, EmitOptions::default()).unwrap();
    assert!(r.equivalent && r.disagreements == 0, "{r}");
    let beta = pqn::logic::compile(&pqn::logic::parse("beta(x)").unwrap(), &["x"], b).unwrap();
    let literal = roundtrip_check(&beta, 5, EmitOptions { literal_xi: true }).unwrap();
    assert!(!literal.equivalent, "{literal}");
}

#[test]
fn figure_rows() {
    let b = b32();
    let rows = refinement_rows(b, 3, 3).unwrap();
    assert_eq!(rows.len(), 4);
    // every row contains the previous one
    for k in 1..rows.len() {
        assert!(rows[k - 1].iter().all(|x| rows[k].contains(x)));
    }
    let svg = refinement_figure(b, 3, 3).unwrap();
    assert_eq!(svg.matches("<g id=\"row").count(), 4);
    assert!(refinement_figure(b, 2, 0).is_err());
}
