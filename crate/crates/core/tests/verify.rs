use std::collections::BTreeMap;

use comprelie_core::algebra::{AlgebraCtx, Basis, Element, GroupElement, GroupSpec, Scalar};
use comprelie_core::prelie::{
    BilinearProduct, GroupLambdaTable, GroupMorphism, LinearForm, PreLieStructure, ProductTable,
    Variant,
};
use comprelie_core::verify::{
    check_bialgebra, check_cocycle, check_comprelie_bialgebra, check_coproduct_compat,
    check_group_conditions, check_identity, check_leibniz, check_prelie_identity,
    check_theorem23_conditions, check_zinbiel_axioms, evaluate_identity, tuple_count, CheckBound,
    Identity, Report, Value, VerifyError, VerifyOptions,
};

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn opts() -> VerifyOptions {
    VerifyOptions::default()
}

fn x(k: i64) -> Element {
    let p = AlgebraCtx::Polynomial;
    Element::basis(&p, p.x_pow(k))
}

/// Re-evaluates a failure witness with the plain element API.
fn assert_sound(p: &dyn BilinearProduct, r: &Report) {
    let w = r.witness.as_ref().expect("witness");
    let id = Identity::from_name(&w.identity).expect("known identity");
    let inputs: Vec<Element> = w
        .inputs
        .iter()
        .map(|v| match v {
            Value::Element(e) => e.clone(),
            other => panic!("unexpected input {other}"),
        })
        .collect();
    let (lhs, rhs) = evaluate_identity(p, id, &inputs).unwrap();
    assert_ne!(lhs, rhs);
    assert_eq!(lhs.to_string(), w.lhs.to_string());
    assert_eq!(rhs.to_string(), w.rhs.to_string());
}

#[test]
fn svf_passes_everything() {
    let st = PreLieStructure::sym_f_lambda(LinearForm::new(vec![s(1), s(0)]), s(3)).unwrap();
    let b = CheckBound::degree(5);
    let r = check_prelie_identity(&st, &b, &opts()).unwrap();
    assert!(r.passed(), "{r}");
    assert_eq!(r.checked_count as u128, tuple_count(1, 2, 3, 5));
    assert!(check_leibniz(&st, &b, &opts()).unwrap().passed());
    assert!(check_coproduct_compat(&st, &b, &opts()).unwrap().passed());
    assert!(check_comprelie_bialgebra(&st, &b, &opts()).unwrap().passed());
}

#[test]
fn counts_match_closed_form() {
    // C(n·dim + D, D) tuples of total degree ≤ D in n slots over dim variables,
    // times window^n.
    let st = PreLieStructure::kx_g4(s(0));
    let r = check_prelie_identity(&st, &CheckBound::degree(6), &opts()).unwrap();
    assert_eq!(r.checked_count, 84); // C(9,6)
    let r = check_coproduct_compat(&st, &CheckBound::degree(6), &opts()).unwrap();
    assert_eq!(r.checked_count, 28); // C(8,6)
    let lam = PreLieStructure::laurent_case2(1, s(1)).unwrap();
    let r = check_prelie_identity(&lam, &CheckBound::new(0, 2), &opts()).unwrap();
    assert_eq!(r.checked_count, 125);
}

#[test]
fn zero_product_passes() {
    let st = PreLieStructure::kx_g4(s(0));
    for d in 0..5 {
        assert!(check_prelie_identity(&st, &CheckBound::degree(d), &opts())
            .unwrap()
            .passed());
    }
}

#[test]
fn kx_g1_is_zinbiel_prelie() {
    let st = PreLieStructure::kx_g1(2, s(1), s(1), q(1, 2)).unwrap();
    assert!(check_leibniz(&st, &CheckBound::degree(6), &opts()).unwrap().passed());
    let st = PreLieStructure::kx_g1_short(1, s(1), s(1)).unwrap();
    let r = check_zinbiel_axioms(&st, &CheckBound::degree(6), &opts()).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn zinbiel_rejects_other_contexts() {
    let st = PreLieStructure::sym_f_lambda(LinearForm::new(vec![s(1), s(0)]), s(3)).unwrap();
    assert!(matches!(
        check_zinbiel_axioms(&st, &CheckBound::degree(3), &opts()),
        Err(VerifyError::WrongContext(_))
    ));
}

#[test]
fn zinbiel_triple_by_hand() {
    // X≺X = X²/2, (X≺X)≺X² = (1/2)·X²≺X², X²≺X² = ∫ 2X·X² = X⁴/2.
    let st = PreLieStructure::kx_g4(s(0));
    let (l, r) = evaluate_identity(&st, Identity::Zinbiel, &[x(1), x(1), x(2)]).unwrap();
    assert_eq!(l, r);
    assert_eq!(l.to_string(), "1/4*X^4");
}

#[test]
fn prop8_witnesses() {
    let g3 = PreLieStructure::kx_g3(1, s(2), s(1)).unwrap();
    let r = check_coproduct_compat(&g3, &CheckBound::degree(3), &opts()).unwrap();
    assert!(!r.passed());
    assert_sound(&g3, &r);
    let g2 = PreLieStructure::kx_g2(1, s(2), s(1)).unwrap();
    let r = check_coproduct_compat(&g2, &CheckBound::degree(3), &opts()).unwrap();
    assert!(!r.passed());
    assert_sound(&g2, &r);
    for a in [s(1), s(-2), q(1, 3)] {
        let g1 = PreLieStructure::kx_g1_short(1, a, s(1)).unwrap();
        assert!(check_coproduct_compat(&g1, &CheckBound::degree(6), &opts())
            .unwrap()
            .passed());
    }
}

#[test]
fn mutated_table_breaks_leibniz() {
    let st = PreLieStructure::kx_g1_short(1, s(1), s(1)).unwrap();
    let p = AlgebraCtx::Polynomial;
    let bases = p.basis_up_to(6, 0);
    let mut t = ProductTable::tabulate(&st, &bases, 6).unwrap();
    t.insert(p.x_pow(1), p.x_pow(1), x(3)).unwrap();
    let r = check_leibniz(&t, &CheckBound::degree(4), &opts()).unwrap();
    assert!(!r.passed());
    assert_sound(&t, &r);
}

#[test]
fn broken_group_table_fails_prelie() {
    let z = GroupSpec::integers();
    let t = GroupLambdaTable::new(&z, None, [(0, GroupElement::integer(1), s(1))]).unwrap();
    let t = t.with_entry(0, GroupElement::integer(2), s(5)).unwrap();
    assert!(!check_group_conditions(&t, 2).unwrap().passed());
    let st = PreLieStructure::group_product(t);
    let r = check_prelie_identity(&st, &CheckBound::new(0, 2), &opts()).unwrap();
    assert!(!r.passed());
    assert_sound(&st, &r);
}

#[test]
fn group_condition_examples() {
    let z = GroupSpec::integers();
    let morph = GroupMorphism::new(&z, vec![s(3)]).unwrap();
    let t = GroupLambdaTable::prop17(&morph, &GroupElement::integer(2)).unwrap();
    assert!(check_group_conditions(&t, 4).unwrap().passed());
    let st = PreLieStructure::laurent_case3(1, s(1), s(-1), 8).unwrap();
    let t = st.group_table().unwrap();
    assert!(check_group_conditions(t, 4).unwrap().passed());
    assert!(check_group_conditions(&GroupLambdaTable::zero(&z), 4)
        .unwrap()
        .passed());
}

#[test]
fn witnesses_do_not_depend_on_threads() {
    let g3 = PreLieStructure::kx_g3(1, s(2), s(1)).unwrap();
    let b = CheckBound::degree(5);
    let one = check_coproduct_compat(&g3, &b, &VerifyOptions::with_threads(1)).unwrap();
    for (threads, chunk) in [(2, 1), (4, 3), (8, 16384)] {
        let o = VerifyOptions {
            threads: Some(threads),
            chunk,
        };
        assert_eq!(check_coproduct_compat(&g3, &b, &o).unwrap(), one);
    }
}

fn z2_mixed(table: GroupLambdaTable) -> PreLieStructure {
    let z2 = GroupSpec::new(2, &[]);
    PreLieStructure::unchecked(Variant::MixedT23 {
        f: LinearForm::new(vec![s(1), s(2)]),
        lambda: q(1, 2),
        table,
        morph_lambda: GroupMorphism::new(&z2, vec![s(1), s(-1)]).unwrap(),
        morph_mu: GroupMorphism::new(&z2, vec![q(2, 3), s(0)]).unwrap(),
        window_radius: 2,
    })
}

#[test]
fn theorem23_zero_table_passes() {
    let st = z2_mixed(GroupLambdaTable::zero(&GroupSpec::new(2, &[])));
    let r = check_theorem23_conditions(&st, &CheckBound::new(3, 2), &opts()).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn theorem23_diagonal_failure_has_inverse_pair_shape() {
    let z2 = GroupSpec::new(2, &[]);
    let morph = GroupMorphism::new(&z2, vec![s(1), s(0)]).unwrap();
    let e1 = z2.generator(0);
    let t = GroupLambdaTable::prop17(&morph, &e1).unwrap();
    let st = z2_mixed(t);
    let r = check_theorem23_conditions(&st, &CheckBound::new(3, 2), &opts()).unwrap();
    assert!(!r.passed());
    let w = r.witness.as_ref().unwrap();
    assert_eq!(w.identity, "prelie");
    let groups: Vec<GroupElement> = w
        .inputs
        .iter()
        .map(|v| match v {
            Value::Element(e) => e.as_basis().unwrap().group.clone(),
            _ => unreachable!(),
        })
        .collect();
    assert!(!groups[1].is_identity());
    assert!(z2.op(&groups[1], &groups[2]).is_identity());
    assert_sound(&st, &r);
}

#[test]
fn trivial_group_mixed_reduces_to_svf() {
    let triv = GroupSpec::trivial();
    let st = PreLieStructure::mixed_t23(
        LinearForm::new(vec![s(1), s(0)]),
        s(3),
        GroupLambdaTable::zero(&triv),
        GroupMorphism::zero(&triv),
        GroupMorphism::zero(&triv),
        2,
    )
    .unwrap();
    assert!(check_theorem23_conditions(&st, &CheckBound::new(4, 2), &opts())
        .unwrap()
        .passed());
}

#[test]
fn ambient_bialgebras_are_bialgebras() {
    for ctx in [
        AlgebraCtx::symmetric(2),
        AlgebraCtx::Polynomial,
        AlgebraCtx::Laurent,
        AlgebraCtx::Mixed {
            group: GroupSpec::new(1, &[2]),
            dim: 1,
        },
    ] {
        let r = check_bialgebra(&ctx, &CheckBound::new(3, 2), &opts()).unwrap();
        assert!(r.passed(), "{ctx:?}: {r}");
    }
}

#[test]
fn cocycle_examples() {
    let p = AlgebraCtx::Polynomial;
    let integral: BTreeMap<Basis, Element> = (0..=5)
        .map(|n| (p.x_pow(n), x(n + 1).scale(&q(1, n + 1))))
        .collect();
    assert!(check_cocycle(&p, &integral, 5).unwrap().passed());
    let mut broken: BTreeMap<Basis, Element> =
        (0..=3).map(|n| (p.x_pow(n), Element::zero(&p))).collect();
    broken.insert(p.x_pow(1), x(2));
    let r = check_cocycle(&p, &broken, 3).unwrap();
    assert!(!r.passed());
    assert_eq!(r.witness.unwrap().inputs[0].to_string(), "X");
    let mut missing = integral.clone();
    missing.remove(&p.x_pow(3));
    assert!(matches!(
        check_cocycle(&p, &missing, 5),
        Err(VerifyError::MissingEntry(_))
    ));
}

#[test]
fn unit_identity_on_all_bases() {
    let st = PreLieStructure::gprime(s(1), s(1));
    let r = check_identity(&st, Identity::UnitAnnihilates, &CheckBound::degree(4), &opts()).unwrap();
    assert!(r.passed());
    assert_eq!(r.checked_count, 5);
}
