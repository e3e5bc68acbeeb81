use std::collections::BTreeMap;

use comprelie_core::algebra::{AlgebraCtx, Basis, Element, GroupElement, GroupSpec, Monomial, Scalar};
use comprelie_core::classify::{
    build_cocycle, classify_kx_bialgebra, classify_kx_sequence, classify_laurent_window,
    cocycle_decompose, corollary_check, extract_kx_lambdas, extract_sym_invariants, iso_svf,
    laurent_window, lemma6_check, primitive_pair_space, primitive_pair_space_mod_positive,
    prop16_basis, prop9_structure_check, ClassifyError, FamilyTag, KxBialgebraTag, KxSequence,
    LaurentTag, SymInvariants,
};
use comprelie_core::prelie::{lie_bracket, BilinearProduct, LinearForm, PreLieStructure, ProductTable};
use comprelie_core::verify::check_cocycle;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn values() -> Vec<Scalar> {
    vec![s(1), s(-1), q(1, 2)]
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    q(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = random_scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// The sequence of each family, written out from the case formulas.
fn sequence(tag: &FamilyTag, d: usize) -> KxSequence {
    let v = (0..=d)
        .map(|j| match tag {
            FamilyTag::G1 { n, lambda, a, b } => match j {
                0 => lambda.clone(),
                _ if j % *n as usize == 0 => a / &(q(j as i64, *n as i64) + b),
                _ => s(0),
            },
            FamilyTag::G2 { n, lambda, mu } => match j {
                0 => lambda.clone(),
                _ if j == *n as usize => mu.clone(),
                _ => s(0),
            },
            FamilyTag::G3 { n, lambda, mu } => match j {
                0 => lambda.clone(),
                _ if j % *n as usize == 0 => mu.clone(),
                _ => s(0),
            },
            FamilyTag::G4 { lambda } => if j == 0 { lambda.clone() } else { s(0) },
            FamilyTag::Inconsistent { .. } => unreachable!(),
        })
        .collect();
    KxSequence::new(v)
}

fn grid() -> Vec<FamilyTag> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for lambda in values() {
            for a in values() {
                for b in values() {
                    if b.is_integer() && b.is_negative() {
                        continue;
                    }
                    out.push(FamilyTag::G1 { n, lambda: lambda.clone(), a: a.clone(), b });
                }
            }
            for mu in values() {
                out.push(FamilyTag::G2 { n, lambda: lambda.clone(), mu: mu.clone() });
                out.push(FamilyTag::G3 { n, lambda: lambda.clone(), mu });
            }
        }
    }
    for lambda in values() {
        out.push(FamilyTag::G4 { lambda });
    }
    out
}

#[test]
fn kx_grid_round_trips() {
    for tag in grid() {
        let seq = sequence(&tag, 8);
        assert!(lemma6_check(&seq).passed(), "{tag}");
        let c = classify_kx_sequence(&seq);
        assert!(!c.is_underdetermined(), "{tag}");
        assert_eq!(c.tag, tag);
        // The structure named by the tag reproduces the same products.
        let st = tag.to_structure().unwrap();
        let table = ProductTable::from_kx_sequence(seq.values());
        let p = AlgebraCtx::Polynomial;
        for i in 0..=8i64 {
            for j in 0..=8 - i {
                let (a, b) = (p.x_pow(i), p.x_pow(j));
                assert_eq!(st.product_basis(&a, &b).unwrap(), table.product_basis(&a, &b).unwrap());
            }
        }
    }
}

/// Mutating `λ_j` (`j ≥ 1`) breaks the recurrence once the window holds three
/// multiples of `N`; with only `λ_N, λ_{2N}` visible, any pair is again a `g1`
/// sequence. `λ_0` never enters the recurrence.
#[test]
fn lemma6_catches_single_mutations() {
    for tag in grid().into_iter().filter(|t| matches!(t, FamilyTag::G1 { .. })) {
        let seq = sequence(&tag, 9);
        for j in 1..=9 {
            let mut v = seq.values().to_vec();
            v[j] += s(1);
            let r = lemma6_check(&KxSequence::new(v.clone()));
            assert!(!r.passed(), "{tag} mutated at {j}");
            assert!(matches!(classify_kx_sequence(&KxSequence::new(v)).tag, FamilyTag::Inconsistent { .. }));
        }
    }
}

#[test]
fn lemma6_documented_witness() {
    let r = lemma6_check(&KxSequence::new(vec![s(0), s(1), s(1), s(5)]));
    let w = r.witness.unwrap();
    let pair: Vec<String> = w.inputs.iter().map(ToString::to_string).collect();
    assert_eq!(pair, ["2", "1"]);
    // (2λ₁ − λ₂)λ₃ = 5 against (2 − 1)λ₂λ₁ = 1.
    assert_eq!((w.lhs.to_string(), w.rhs.to_string()), ("5".into(), "1".into()));
}

#[test]
fn short_sequences_are_underdetermined() {
    let c = classify_kx_sequence(&KxSequence::new(vec![s(2), s(0), s(3), s(0)]));
    assert!(c.is_underdetermined());
    assert_eq!(c.compatible, ["g1", "g2", "g3"]);
}

#[test]
fn cli_sequence_example() {
    let seq = KxSequence::new(vec![s(0), q(1, 2), q(1, 3), q(1, 4), q(1, 5)]);
    assert_eq!(classify_kx_sequence(&seq).to_string(), "g1 N=1 lambda=0 a=1 b=1");
}

fn table_oracle(st: &PreLieStructure, d: u32) -> ProductTable {
    let basis = st.ctx().basis_up_to(d, 0);
    ProductTable::tabulate(st, &basis, d).unwrap()
}

#[test]
fn kx_extraction_from_tables() {
    for a in values() {
        let st = PreLieStructure::kx_g1_short(1, a.clone(), s(1)).unwrap();
        let seq = extract_kx_lambdas(&table_oracle(&st, 6), 6).unwrap();
        let mut expected = vec![s(0); 6];
        expected[0] = a.clone();
        assert_eq!(seq.values(), expected.as_slice());
        assert_eq!(classify_kx_bialgebra(&seq), KxBialgebraTag::G1 { a });
    }
    for (lambda, mu) in [(s(1), s(1)), (q(1, 2), s(-1)), (s(-1), s(0))] {
        let st = PreLieStructure::gprime(lambda.clone(), mu.clone());
        let seq = extract_kx_lambdas(&table_oracle(&st, 7), 7).unwrap();
        let l2 = s(2) * &lambda * &mu;
        assert_eq!(seq.get(0), s(0));
        assert_eq!(seq.get(1), lambda);
        for k in 1..7u32 {
            // k!/2^{k−1} · λ₂^{k−1}/λ₁^{k−2}
            let mut expected = Scalar::factorial(k) / &s(1 << (k - 1));
            for _ in 1..k {
                expected *= &l2;
            }
            expected = expected * lambda.pow(2 - k as i32).unwrap();
            assert_eq!(seq.get(k as usize), expected, "k={k}");
        }
        assert_eq!(classify_kx_bialgebra(&seq), KxBialgebraTag::GPrime { lambda, mu });
    }
    let zero = table_oracle(&PreLieStructure::kx_g4(s(0)), 5);
    let seq = extract_kx_lambdas(&zero, 5).unwrap();
    assert!(seq.values().iter().all(Scalar::is_zero));
}

#[test]
fn kx_extraction_rejects_mutated_table() {
    let st = PreLieStructure::gprime(s(1), s(1));
    let mut t = table_oracle(&st, 5);
    let p = AlgebraCtx::Polynomial;
    let bad = st.product_basis(&p.x_pow(2), &p.x_pow(2)).unwrap().add(&Element::basis(&p, p.x_pow(3))).unwrap();
    t.insert(p.x_pow(2), p.x_pow(2), bad).unwrap();
    match extract_kx_lambdas(&t, 5) {
        Err(ClassifyError::OracleInconsistent(w)) => assert_eq!(w.identity, "kx-rebuild"),
        other => panic!("{other:?}"),
    }
}

fn laurent_coefficients(tag: &LaurentTag, r: i64) -> BTreeMap<i64, Scalar> {
    (-r..=r)
        .map(|l| {
            let v = match tag {
                LaurentTag::Zero => s(0),
                LaurentTag::Case2 { k0, a } => if l == *k0 { a.clone() } else { s(0) },
                LaurentTag::Case3 { n, alpha, beta } => {
                    let n = *n as i64;
                    if l == 0 || l % n != 0 {
                        s(0)
                    } else {
                        let m = q(l, n);
                        alpha * beta / &((&m - &s(1)) * alpha - (&m - &s(2)) * beta)
                    }
                }
                LaurentTag::Inconsistent { .. } => unreachable!(),
            };
            (l, v)
        })
        .collect()
}

#[test]
fn laurent_round_trips() {
    let mut tags = vec![LaurentTag::Zero];
    for k0 in [-3, -2, -1, 1, 2, 3] {
        for a in values() {
            tags.push(LaurentTag::Case2 { k0, a });
        }
    }
    for n in 1..=2 {
        tags.push(LaurentTag::Case3 { n, alpha: s(1), beta: s(-1) });
        tags.push(LaurentTag::Case3 { n, alpha: q(1, 2), beta: s(3) });
    }
    for tag in tags {
        let a = laurent_coefficients(&tag, 6);
        assert_eq!(classify_laurent_window(&a, 6), tag);
        let st = tag.to_structure(12).unwrap();
        let read = laurent_window(&st, 6).unwrap();
        let mut a0 = a.clone();
        a0.remove(&0);
        assert_eq!(read, a0, "{tag}");
    }
}

#[test]
fn laurent_forbidden_combination() {
    let mut a = laurent_coefficients(&LaurentTag::Zero, 6);
    a.insert(2, s(5));
    a.insert(-2, s(1));
    match classify_laurent_window(&a, 6) {
        LaurentTag::Inconsistent { h, k } => {
            assert_eq!((h, k), (2, -4));
            // a_{h+k}(a_k h − a_h k) against a_h a_k (h − k).
            let lhs = a[&(h + k)].clone() * (&a[&k] * &s(h) - &a[&h] * &s(k));
            let rhs = &a[&h] * &a[&k] * s(h - k);
            assert_ne!(lhs, rhs);
        }
        other => panic!("{other}"),
    }
}

#[test]
fn iso_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let dim = rng.gen_range(1..=4);
        let nonzero_form = |rng: &mut ChaCha8Rng| loop {
            let f = LinearForm::new((0..dim).map(|_| random_scalar(rng)).collect());
            if !f.is_zero() {
                return f;
            }
        };
        let (f, g) = (nonzero_form(&mut rng), nonzero_form(&mut rng));
        let lambda = random_scalar(&mut rng);
        let psi = iso_svf(&f, &lambda, &g, &lambda).expect("isomorphic");
        for (j, image) in psi.images.iter().enumerate() {
            let gv: Scalar = g.coeffs().iter().zip(image).map(|(a, b)| a * b).sum();
            assert_eq!(gv, f.coeffs()[j]);
        }
        // Ψ transports products on monomials up to degree 3.
        let ctx = AlgebraCtx::symmetric(dim);
        let sf = PreLieStructure::sym_f_lambda(f.clone(), lambda.clone()).unwrap();
        let sg = PreLieStructure::sym_f_lambda(g.clone(), lambda.clone()).unwrap();
        for a in ctx.basis_up_to(2, 0) {
            for b in ctx.basis_up_to(2, 0) {
                let (ea, eb) = (Element::basis(&ctx, a.clone()), Element::basis(&ctx, b));
                let lhs = psi.apply(&sf.product(&ea, &eb).unwrap(), &ctx).unwrap();
                let rhs = sg
                    .product(&psi.apply(&ea, &ctx).unwrap(), &psi.apply(&eb, &ctx).unwrap())
                    .unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        let other = &lambda + &s(1);
        assert!(iso_svf(&f, &lambda, &g, &other).is_none());
    }
    let z = |d| LinearForm::zero(d);
    assert!(iso_svf(&z(2), &s(0), &z(3), &s(0)).is_none());
    assert!(iso_svf(&z(3), &s(1), &z(3), &s(2)).is_some());
}

#[test]
fn sym_extraction() {
    for (f, lambda) in [
        (vec![s(1), s(0)], s(3)),
        (vec![s(0), s(1), s(2)], q(-1, 2)),
        (vec![q(2, 3), s(-1)], s(0)),
    ] {
        let f = LinearForm::new(f);
        let st = PreLieStructure::sym_f_lambda(f.clone(), lambda.clone()).unwrap();
        let got = extract_sym_invariants(&table_oracle(&st, 4), 4).unwrap();
        assert_eq!(got, SymInvariants::Structure { f, lambda });
    }
    let zero = PreLieStructure::sym_f_lambda(LinearForm::zero(2), s(1)).unwrap();
    assert_eq!(extract_sym_invariants(&table_oracle(&zero, 4), 4).unwrap(), SymInvariants::Zero);
    // A K[X]-style product transplanted to two variables is no S(V, f, λ).
    let st = PreLieStructure::sym_f_lambda(LinearForm::new(vec![s(1), s(0)]), s(1)).unwrap();
    let mut t = table_oracle(&st, 4);
    let ctx = AlgebraCtx::symmetric(2);
    let x1 = ctx.mono(Monomial::var(0));
    let x2sq = ctx.mono(Monomial::var_pow(1, 2));
    t.insert(x1.clone(), x2sq.clone(), Element::zero(&ctx)).unwrap();
    assert!(matches!(
        extract_sym_invariants(&t, 4),
        Err(ClassifyError::OracleInconsistent(_))
    ));
}

#[test]
fn cocycle_random_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    for i in 0..10 {
        let (ctx, a) = if i % 2 == 0 {
            (AlgebraCtx::Polynomial, random_nonzero(&mut rng))
        } else {
            (AlgebraCtx::symmetric(2), s(0))
        };
        let lambda = random_scalar(&mut rng);
        let mut f = BTreeMap::new();
        for d in 1..5 {
            for m in Monomial::all_of_degree(ctx.dim(), d) {
                let v = random_scalar(&mut rng);
                if !v.is_zero() {
                    f.insert(m, v);
                }
            }
        }
        let table = build_cocycle(&ctx, &a, &lambda, &f, 5).unwrap();
        assert!(check_cocycle(&ctx, &table, 5).unwrap().passed());
        let d = cocycle_decompose(&ctx, &table, 5).unwrap();
        assert_eq!((d.a, d.lambda, d.f), (a, lambda, f));
    }
}

#[test]
fn cocycle_mutation_is_caught() {
    let ctx = AlgebraCtx::symmetric(2);
    let mut table = build_cocycle(&ctx, &s(0), &s(2), &BTreeMap::new(), 4).unwrap();
    let b = ctx.mono(Monomial::from_dense(&[1, 1]));
    table.insert(b.clone(), Element::basis(&ctx, ctx.mono(Monomial::var(0))));
    let r = check_cocycle(&ctx, &table, 4).unwrap();
    let w = r.witness.expect("witness");
    assert_eq!(w.inputs[0].to_string(), "x1*x2");
    assert!(matches!(cocycle_decompose(&ctx, &table, 4), Err(ClassifyError::RebuildMismatch(_))));
}

#[test]
fn cocycle_examples() {
    let p = AlgebraCtx::Polynomial;
    let mut psi = BTreeMap::new();
    for n in 0..=5u32 {
        psi.insert(
            p.mono(Monomial::var_pow(0, n)),
            Element::term(&p, p.x_pow(n as i64 + 1), q(1, n as i64 + 1)),
        );
    }
    let d = cocycle_decompose(&p, &psi, 5).unwrap();
    assert_eq!((d.a, d.lambda), (s(1), s(0)));
    assert!(d.f.is_empty());
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn primitive_spaces() {
    let z2 = GroupSpec::new(2, &[]);
    let ctx = AlgebraCtx::Group(z2.clone());
    let g = z2.element(vec![1, -1], vec![]).unwrap();
    let h = z2.element(vec![0, 1], vec![]).unwrap();
    let sp = primitive_pair_space(&ctx, &g, &h, 0, 3).unwrap();
    assert_eq!(sp.len(), 1);
    let mut expected = Element::zero(&ctx);
    expected.add_term(ctx.group_elem(g.clone()), s(1));
    expected.add_term(ctx.group_elem(h.clone()), s(-1));
    assert_eq!(sp[0], expected);
    assert!(primitive_pair_space(&ctx, &g, &g, 0, 3).unwrap().is_empty());

    for (dim, bound) in [(1usize, 3u32), (2, 2), (3, 2)] {
        let m = AlgebraCtx::Mixed { group: GroupSpec::integers(), dim };
        let g = GroupElement::integer(-1);
        let sp = primitive_pair_space_mod_positive(&m, &g, bound, 1).unwrap();
        let count: u64 = (1..=bound as u64).map(|d| binomial(dim as u64 + d - 1, d)).sum();
        assert_eq!(sp.len() as u64, count);
        let expected: Vec<Basis> = m
            .basis_up_to(bound, 0)
            .into_iter()
            .filter(|b| b.degree() > 0)
            .map(|b| Basis::new(g.clone(), b.mono))
            .collect();
        let got: Vec<Basis> = sp.iter().map(|e| e.as_basis().expect("single term").clone()).collect();
        assert_eq!(got, expected);
    }
}

#[test]
fn prop9_grid() {
    for n in 1..=3 {
        for b in [s(1), q(1, 2)] {
            let st = PreLieStructure::kx_g1(n, q(1, 2), s(1), b).unwrap();
            assert!(prop9_structure_check(&st, 8).unwrap().passed());
        }
    }
    let st = PreLieStructure::kx_g4(s(1));
    assert!(prop9_structure_check(&st, 8).unwrap().passed());
    let sym = PreLieStructure::sym_f_lambda(LinearForm::zero(1), s(0)).unwrap();
    assert!(prop9_structure_check(&sym, 4).is_err());
}

#[test]
fn prop16_unique_unitriangular() {
    for (lambda, mu) in [(s(1), s(0)), (s(1), s(1)), (q(-3, 2), q(2, 5))] {
        let (c, r) = prop16_basis(&lambda, &mu, 8).unwrap();
        assert!(r.passed(), "{r}");
        assert!(c.is_unitriangular());
        let st = PreLieStructure::gprime(lambda.clone(), mu.clone());
        // [f_n, f_1] = (n − 1) f_n, and the solution is unique: the
        // eigenvalue n − 1 is simple on Vect(Y_1, …, Y_n).
        for n in 1..=8 {
            let fnn = c.element(n);
            let b = lie_bracket(&st, &fnn, &c.element(1)).unwrap();
            assert_eq!(b, fnn.scale(&s(n as i64 - 1)));
        }
        if mu.is_zero() {
            for (n, row) in c.rows.iter().enumerate() {
                assert!(row[..n].iter().all(Scalar::is_zero));
            }
        }
    }
}

#[test]
fn corollary_leading_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for dim in 1..=3 {
        let f = LinearForm::new((0..dim).map(|_| random_nonzero(&mut rng)).collect());
        let r = corollary_check(&f, &random_scalar(&mut rng), 4).unwrap();
        assert!(r.passed(), "{r}");
    }
}
