//! Library results checked against the independent implementations in
//! `macaulay-oracle`.

use macaulay::apps::{
    eliminate, hilbert_function, schreyer_syzygy_basis, EliminationSpec, HomogenizationContext,
};
use macaulay::gradlin::ComplementPolicy;
use macaulay::macbasis::{
    buchberger_algorithm, buchberger_criterion, degree_profile, interreduce, lift_syzygy,
    leading_syzygy_generators, BuchbergerConfig, MacaulayBasis,
};
use macaulay::polymod::{degree, leading_form};
use macaulay::reduce::Mode;
use macaulay::sample::SampleShape;
use macaulay::{Degree, FieldSpec, ModuleElement, ModuleGrading, Polynomial, Ring, RingGrading};
use macaulay_oracle::{self as oracle, Field, Order, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

fn vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn ring(field: FieldSpec, n: usize) -> Ring {
    Ring::from_names(field, vars(n)).unwrap()
}

fn els(r: &Ring, xs: &[&str]) -> Vec<ModuleElement> {
    xs.iter().map(|s| r.element(s).unwrap()).collect()
}

fn to_oracle(m: &ModuleElement) -> Poly {
    assert_eq!(m.rank(), 1);
    oracle::from_library(m.component(0))
}

fn reduced(gens: &[ModuleElement], grading: &ModuleGrading, field: FieldSpec, policy: ComplementPolicy) -> MacaulayBasis {
    let b = buchberger_algorithm(gens, grading, field, &BuchbergerConfig::new(policy)).unwrap();
    interreduce(&b, policy).unwrap()
}

const FIXTURES: &[(usize, &[&str])] = &[
    (2, &["x1^2+x2^2-1", "x1^2*x2^2-1"]),
    (3, &["x1*x2-x3^2", "x2*x3-x1^2", "x1*x3-x2^2"]),
    (3, &["x1+x2+x3", "x1*x2+x2*x3+x1*x3", "x1*x2*x3-1"]),
    (3, &["x1^2-x2", "x1^3-x3"]),
    (2, &["x1^3-2*x1*x2", "x1^2*x2-2*x2^2+x1"]),
];

fn orders(n: usize) -> Vec<(RingGrading, Order)> {
    vec![
        (RingGrading::degrevlex(n), Order::degrevlex(n)),
        (RingGrading::lex(n), Order::lex(n)),
    ]
}

#[test]
fn groebner_special_case() {
    for field in [Q, FieldSpec::prime(32003).unwrap()] {
        let k = Field::of(field);
        for (n, gens) in FIXTURES {
            let r = ring(field, *n);
            let gens = els(&r, gens);
            let ogens: Vec<Poly> = gens.iter().map(to_oracle).collect();
            for (rg, ord) in orders(*n) {
                let grading = ModuleGrading::ideal(rg.clone());
                let ours = reduced(&gens, &grading, field, ComplementPolicy::Pivot);
                let mut got: Vec<Poly> = ours.elements().iter().map(to_oracle).collect();
                got.sort_by(|a, b| ord.cmp(ord.lead(a).unwrap().0, ord.lead(b).unwrap().0));
                let want = oracle::groebner(&k, &ord, &ogens);
                assert_eq!(
                    got,
                    want,
                    "{rg} over {field}: got {:?}",
                    got.iter().map(oracle::describe).collect::<Vec<_>>()
                );
                // degrevlex refines total degree, so its bases are H-bases; lex does not
                if rg == RingGrading::degrevlex(*n) {
                    let total = ModuleGrading::ideal(RingGrading::total(*n));
                    assert!(buchberger_criterion(ours.elements(), &total, field).unwrap().passed);
                }
            }
        }
    }
}

#[test]
fn hilbert_matches_brute_force() {
    let ideals: &[(usize, &[&str])] = &[
        (2, &["x1^2", "x1*x2"]),
        (3, &["x1*x2", "x2*x3", "x3^3"]),
        (3, &["x1^2-x2*x3", "x2^2-x1*x3"]),
        (2, &["x1^3-x2^3"]),
        (3, &["x1*x2-x3^2", "x1^2*x3-x2^3", "x1^4"]),
    ];
    let k = Field::Q;
    for (n, gens) in ideals {
        let r = ring(Q, *n);
        let gens = els(&r, gens);
        let grading = ModuleGrading::ideal(RingGrading::total(*n));
        let degrees: Vec<Degree> = (0..=8).map(Degree::scalar).collect();
        let table = hilbert_function(&gens, &grading, Q, &degrees, &BuchbergerConfig::new(ComplementPolicy::Pivot)).unwrap();
        let ogens: Vec<Poly> = gens.iter().map(to_oracle).collect();
        for (d, v) in (0..=8u32).zip(&table.values) {
            assert_eq!(*v, oracle::ideal_slice_dim(&k, &ogens, *n, d), "{gens:?} at degree {d}");
        }
    }
}

#[test]
fn elimination_matches_lex_oracle() {
    let r = ring(Q, 2);
    let gens = els(&r, &["x1^2+x2^2-1", "x1-x2"]);
    let spec = EliminationSpec::new(2, &[1]).unwrap();
    let out = eliminate(&gens, 1, Q, &spec, &BuchbergerConfig::new(ComplementPolicy::Orthogonal)).unwrap();
    assert!(out.kept.iter().all(|m| spec.in_subring(m)));
    let kept: Vec<Poly> = out.kept.iter().map(to_oracle).collect();

    let k = Field::Q;
    let lex = Order::lex(2);
    let gb = oracle::groebner(&k, &lex, &gens.iter().map(to_oracle).collect::<Vec<_>>());
    let want: Vec<Poly> = gb.into_iter().filter(|p| p.uses_only(&[false, true])).collect();
    assert!(oracle::same_ideal(&k, &kept, &want, 2));
    let target = to_oracle(&r.element("2*x2^2-1").unwrap());
    assert!(oracle::same_ideal(&k, &kept, &[target], 2));

    // every kept element lies in the original ideal
    let full = oracle::groebner(&k, &Order::degrevlex(2), &gens.iter().map(to_oracle).collect::<Vec<_>>());
    assert!(kept.iter().all(|p| oracle::in_ideal(&k, &Order::degrevlex(2), p, &full)));
}

#[test]
fn elimination_intersection_law() {
    // lf of sampled elements of the intersection lies in the leading-form module
    let r = ring(Q, 3);
    let gens = els(&r, &["x1-x2^2", "x1*x3-1"]);
    let spec = EliminationSpec::new(3, &[1, 2]).unwrap();
    let out = eliminate(&gens, 1, Q, &spec, &BuchbergerConfig::new(ComplementPolicy::Pivot)).unwrap();
    assert!(!out.kept.is_empty());
    let reducer = out.basis.reducer();
    let grading = out.basis.grading();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let shape = SampleShape { allowed: Some(vec![false, true, true]), ..SampleShape::new(3, 2) };
    for _ in 0..20 {
        let m = shape.random_combination(&mut rng, Q, &out.kept, 1);
        if m.is_zero() {
            continue;
        }
        assert!(spec.in_subring(&m));
        let lf = leading_form(&m, grading).unwrap().element;
        assert!(reducer.in_w(&lf).unwrap());
    }
}

#[test]
fn span_and_complement_reductions_agree() {
    let r = ring(Q, 2);
    let basis = MacaulayBasis::certified(els(&r, &["x1^2+x2^2-1", "x1^2*x2^2-1"]), ModuleGrading::ideal(RingGrading::total(2)), Q).unwrap();
    let reducer = basis.reducer();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let shape = SampleShape::new(2, 4);
    let mut members = 0;
    for k in 0..200 {
        let m = if k % 2 == 0 {
            shape.random_combination(&mut rng, Q, basis.elements(), 1)
        } else {
            shape.random_element(&mut rng, Q, 1)
        };
        let span = reducer.reduce(&m, Mode::Span, ComplementPolicy::Orthogonal).unwrap();
        let comp = reducer.reduce(&m, Mode::Complement, ComplementPolicy::Orthogonal).unwrap();
        assert_eq!(span.is_zero(), comp.is_zero(), "{}", r.format_element(&m));
        span.verify(&m, &reducer).unwrap();
        comp.verify(&m, &reducer).unwrap();
        if span.is_zero() {
            members += 1;
        }
    }
    assert!(members >= 100);
}

#[test]
fn lifted_syzygies_are_exact() {
    let r = ring(Q, 2);
    let grading = ModuleGrading::ideal(RingGrading::total(2));
    let basis = reduced(&els(&r, &["x1^2+x2^2-1", "x1^2*x2^2", "x1^3*x2-x1*x2^3"]), &grading, Q, ComplementPolicy::Orthogonal);
    let reducer = basis.reducer();
    let lfs: Vec<ModuleElement> = reducer.leading_forms().iter().map(|(_, e)| e.clone()).collect();
    let base: Vec<Degree> = reducer.leading_forms().iter().map(|(d, _)| d.clone()).collect();
    let syz_grading = macaulay::macbasis::syzygy_grading(&grading, base);
    for s in leading_syzygy_generators(&lfs, &grading, Q).unwrap() {
        assert!(s.apply(&lfs, 1).is_zero());
        let t = lift_syzygy(&s, &reducer).unwrap();
        assert!(t.apply(basis.elements(), 1).is_zero());
        assert_eq!(
            leading_form(&t.to_element(), &syz_grading).unwrap().element,
            s.to_element()
        );
    }
}

#[test]
fn schreyer_bases_are_syzygy_bases() {
    let r = ring(Q, 3);
    for (gens, grading) in [
        (els(&r, &["x1", "x2", "x3"]), ModuleGrading::ideal(RingGrading::total(3))),
        (els(&r, &["x1*x2-x3^2", "x2*x3-x1^2", "x1*x3-x2^2"]), ModuleGrading::ideal(RingGrading::degrevlex(3))),
        (els(&r, &["x1^2+x2^2-x3^2", "x1*x2"]), ModuleGrading::ideal(RingGrading::total(3))),
    ] {
        let basis = reduced(&gens, &grading, Q, ComplementPolicy::Pivot);
        let syz = schreyer_syzygy_basis(&basis).unwrap();
        for s in syz.elements() {
            let coords: Vec<Polynomial> = s.components().to_vec();
            let sum = ModuleElement::combination(&coords, basis.elements(), 1);
            assert!(sum.is_zero());
        }
        assert!(buchberger_criterion(syz.elements(), syz.grading(), Q).unwrap().passed);
    }
}

#[test]
fn reduced_bases_are_unique() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (n, gens) in FIXTURES.iter().take(3) {
        let r = ring(Q, *n);
        let gens = els(&r, gens);
        let grading = ModuleGrading::ideal(RingGrading::total(*n));
        let base = reduced(&gens, &grading, Q, ComplementPolicy::Orthogonal);
        let profile = degree_profile(base.elements(), &grading);
        for _ in 0..3 {
            let mut shuffled = gens.clone();
            for i in (1..shuffled.len()).rev() {
                shuffled.swap(i, rng.gen_range(0..=i));
            }
            let shuffled: Vec<ModuleElement> = shuffled
                .iter()
                .map(|g| g.scale(&Q.from_i64(rng.gen_range(1..7) * if rng.gen() { 1 } else { -1 })))
                .collect();
            let other = reduced(&shuffled, &grading, Q, ComplementPolicy::Orthogonal);
            assert_eq!(degree_profile(other.elements(), &grading), profile);
            for (d, _) in &profile {
                let pick = |b: &MacaulayBasis| -> Vec<Poly> {
                    b.elements().iter().filter(|m| degree(m, &grading).as_ref() == Some(d)).map(to_oracle).collect()
                };
                assert!(oracle::same_span(&Field::Q, &pick(&base), &pick(&other)));
            }
        }
    }
}

#[test]
fn homogenization_round_trip() {
    let ctx = HomogenizationContext::new(3, 2, vec![0]).unwrap();
    let shape = SampleShape { allowed: Some(vec![true, true, false]), ..SampleShape::new(3, 5) };
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let m = shape.random_element(&mut rng, Q, 1);
        let h = ctx.homogenize(&m).unwrap();
        assert!(m.is_zero() || macaulay::polymod::homogeneous_degree(&h, &ctx.grading()).is_some());
        assert_eq!(ctx.dehomogenize(&h), m);
    }
}
