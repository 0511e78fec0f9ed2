use qlogic::checker::{check, Status, Strategy};
use qlogic::{formulas, holds, Equation};

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn verdicts_do_not_depend_on_thread_count() {
    let eq = formulas::distributive_law();
    let strategies = Strategy::defaults(7, 300);
    let one = in_pool(1, || check(&eq, 3, &strategies).unwrap());
    let three = in_pool(3, || check(&eq, 3, &strategies).unwrap());
    let (a, b) = (one.counterexample.unwrap(), three.counterexample.unwrap());
    assert_eq!((a.strategy, a.index), (b.strategy, b.index));
    assert_eq!(a.assignment.to_fixture(), b.assignment.to_fixture());
}

#[test]
fn distributive_law_fails_in_the_plane_and_holds_on_the_line() {
    let eq = formulas::distributive_law();
    let v = check(&eq, 2, &Strategy::defaults(1, 100)).unwrap();
    let c = v.counterexample.expect("counterexample in C^2");
    assert!(!holds(&eq, &c.assignment).unwrap());
    let v = check(&eq, 1, &[Strategy::coordinate(0)]).unwrap();
    assert_eq!(v.status, Status::HoldsOnSamples);
    assert_eq!(v.samples_tried, 8);
}

#[test]
fn separation_levels_are_found_and_respected() {
    let eq = formulas::separation_equation(0);
    assert!(check(&eq, 1, &[Strategy::coordinate(0)])
        .unwrap()
        .counterexample
        .is_none());
    assert!(check(&eq, 2, &[Strategy::coordinate(3)]).unwrap().is_counterexample());
    let eq = formulas::separation_equation(1);
    assert!(check(&eq, 2, &Strategy::defaults(3, 200))
        .unwrap()
        .counterexample
        .is_none());
    assert!(check(&eq, 4, &[Strategy::NamedWitnesses]).unwrap().is_counterexample());
}

#[test]
fn sampled_validity_is_labelled_as_such() {
    let v = check(
        &Equation::parse("p ^ q = q ^ p").unwrap(),
        3,
        &Strategy::defaults(1, 50),
    )
    .unwrap();
    assert!(v.to_string().contains("sampled evidence only"));
}
