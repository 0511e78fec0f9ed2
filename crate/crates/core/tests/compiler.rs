use std::path::PathBuf;

use proptest::prelude::*;
use qlogic::checker::coordinate_family;
use qlogic::fol::{self, Domain, Form, Formula, LatticeAtom, LatticeSentence};
use qlogic::{formulas, random_subspace, GaussianRational, Matrix, Subspace, Term};

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn sentence(src: &str) -> LatticeSentence {
    fol::parse_sentence(src).unwrap()
}

#[test]
fn golden_files_match() {
    let worked = sentence("forall x y z. ~(x ^ y) v z = y ^ (~z v x)");
    let shared = sentence("forall x y. (x ^ y) v ~(x ^ y) = 1");
    for (file, s, n, form) in [
        ("worked_example_n2_validity.smt2", &worked, 2, Form::Validity),
        ("worked_example_n2_refutation.smt2", &worked, 2, Form::Refutation),
        ("shared_subterm_n1_validity.smt2", &shared, 1, Form::Validity),
    ] {
        let text = fol::compile_full(s, n).unwrap().solver_text(form);
        assert_eq!(text, golden(file), "{file}");
    }
}

#[test]
fn golden_files_read_back() {
    let v = fol::read_script(&golden("worked_example_n2_validity.smt2")).unwrap();
    assert_eq!(v.logic.as_deref(), Some("NRA"));
    assert_eq!(v.commands, ["set-logic", "assert", "check-sat"]);
    assert!(v.constants.is_empty());
    let r = fol::read_script(&golden("worked_example_n2_refutation.smt2")).unwrap();
    assert_eq!(r.constants.len(), 72);
    assert_eq!(r.commands.last().map(String::as_str), Some("get-model"));
}

#[test]
fn top_level_real_variables_are_2n2_per_lattice_variable() {
    for (src, v, f) in [
        ("forall x y z. ~(x ^ y) v z = y ^ (~z v x)", 3, 6),
        ("forall x. x = x", 1, 0),
        ("forall p q. p ^ (~p v (p ^ q)) = p ^ q", 2, 4),
    ] {
        for n in 1..=3 {
            let c = fol::compile_full(&sentence(src), n).unwrap();
            assert_eq!((c.stats.lattice_vars, c.stats.fresh_vars), (v, f), "{src}");
            assert_eq!(c.stats.matrix_reals, 2 * n * n * (v + f));
            let script = fol::read_script(&c.solver_text(Form::Refutation)).unwrap();
            let matrix = script.constants.iter().filter(|c| c.starts_with("m.")).count();
            assert_eq!(matrix, 2 * n * n * (v + f), "{src} at n={n}");
            assert!(c.stats.max_degree <= 2);
        }
    }
}

#[test]
fn emission_is_deterministic() {
    let s = fol::universal_closure(&formulas::modular_law());
    let a = fol::compile_full(&s, 2).unwrap().solver_text(Form::Validity);
    let b = fol::compile_full(&s.clone(), 2).unwrap().solver_text(Form::Validity);
    assert_eq!(a, b);
}

#[test]
fn compile_rejects_open_sentences_and_zero_dimension() {
    assert!(fol::compile(&sentence("x ^ y = 0"), 2).is_err());
    assert!(fol::compile(&sentence("forall x. x = x"), 0).is_err());
    let err = fol::parse_sentence("forall x. x = = y").unwrap_err();
    assert!(err.is_parse());
}

#[test]
fn complement_of_the_full_space_forces_a_trivial_kernel() {
    let c = fol::compile_full(&sentence("forall x. ~1 = x -> x = 0"), 1).unwrap();
    let text = c.solver_text(Form::Validity);
    assert!(fol::read_script(&text).is_ok());
    let d = Domain::closure(2, &coordinate_family(2, 2).unwrap(), 64).unwrap();
    assert!(fol::interpret_flat(&c.flat, &d).unwrap());
}

fn arb_term(vars: &'static [&'static str]) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        4 => proptest::sample::select(vars).prop_map(Term::var),
        1 => Just(Term::top()),
        1 => Just(Term::bot()),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::join(a, b)),
            inner.prop_map(Term::negate),
        ]
    })
}

fn arb_atom() -> impl Strategy<Value = LatticeSentence> {
    (arb_term(&["x", "y"]), arb_term(&["x", "y"]), any::<bool>()).prop_map(|(l, r, leq)| {
        Formula::Atom(if leq {
            LatticeAtom::Leq(l, r)
        } else {
            LatticeAtom::Eq(l, r)
        })
    })
}

fn arb_sentence() -> impl Strategy<Value = LatticeSentence> {
    let body = arb_atom().prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::negation),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::And(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::Or(vec![a, b])),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::implies(a, b)),
        ]
    });
    (body, any::<bool>(), any::<bool>()).prop_map(|(b, ex, ey)| {
        let q = |e: bool, v: &str, b| {
            if e {
                Formula::exists(vec![v.into()], b)
            } else {
                Formula::forall(vec![v.into()], b)
            }
        };
        q(ex, "x", q(ey, "y", b))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn flattening_preserves_truth_on_finite_subalgebras(s in arb_sentence()) {
        let flat = fol::flatten(&s).unwrap();
        for d in [
            Domain::closure(2, &coordinate_family(2, 2).unwrap(), 64).unwrap(),
            Domain::closure(3, &coordinate_family(3, 1).unwrap(), 64).unwrap(),
        ] {
            prop_assert_eq!(fol::interpret_source(&s, &d).unwrap(), fol::interpret_flat(&flat, &d).unwrap());
        }
    }

    #[test]
    fn emitted_text_is_well_sorted_smtlib(s in arb_sentence(), n in 1usize..3) {
        let c = fol::compile_full(&s, n).unwrap();
        for form in [Form::Validity, Form::Refutation] {
            let text = c.solver_text(form);
            prop_assert!(fol::read_script(&text).is_ok(), "{}", text);
        }
    }

    #[test]
    fn flat_text_reparses(s in arb_sentence()) {
        let flat = fol::flatten(&s).unwrap();
        let again = fol::parse_sentence(&flat.to_string()).unwrap();
        prop_assert_eq!(again.to_string(), flat.to_string());
    }
}

/// Up to `n` vectors from the bases of `y` and `z`, padded with zero
/// vectors, each lying in `y` or `z`.
fn spanning_choice(y: &Subspace, z: &Subspace, n: usize) -> Vec<Vec<GaussianRational>> {
    let mut chosen: Vec<Vec<GaussianRational>> = Vec::new();
    for v in y.basis().row_iter().chain(z.basis().row_iter()) {
        let mut rows = chosen.clone();
        rows.push(v.to_vec());
        if Matrix::from_rows(n, rows).unwrap().rank() == chosen.len() + 1 {
            chosen.push(v.to_vec());
        }
    }
    while chosen.len() < n {
        chosen.push(vec![GaussianRational::zero(); n]);
    }
    chosen
}

fn is_combination(ws: &[Vec<GaussianRational>], v: &[GaussianRational], n: usize) -> bool {
    let base = Matrix::from_rows(n, ws.to_vec()).unwrap().rank();
    let mut rows = ws.to_vec();
    rows.push(v.to_vec());
    Matrix::from_rows(n, rows).unwrap().rank() == base
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn join_is_the_set_of_combinations_of_n_vectors_from_either_side(
        seed in any::<u64>(),
        dy in 0usize..3,
        dz in 0usize..3,
        coeffs in proptest::collection::vec((-3i64..4, -3i64..4), 2),
    ) {
        let n = 2;
        let y = random_subspace(n, dy, seed, 3).unwrap();
        let z = random_subspace(n, dz, seed.wrapping_add(1), 3).unwrap();
        let j = y.join(&z).unwrap();
        let ws = spanning_choice(&y, &z, n);
        prop_assert_eq!(ws.len(), n);
        for w in &ws {
            prop_assert!(y.contains(w).unwrap() || z.contains(w).unwrap());
        }
        let v: Vec<GaussianRational> = coeffs.iter().map(|&(a, b)| GaussianRational::from_ints(a, b)).collect();
        prop_assert_eq!(j.contains(&v).unwrap(), is_combination(&ws, &v, n));
        for row in j.basis().row_iter() {
            prop_assert!(is_combination(&ws, row, n));
        }
    }
}
