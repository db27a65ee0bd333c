//! The rewriting check and the five conditions must agree on pass/fail.

use std::collections::BTreeMap;

use orbifold_core::cochains::{kappa_c_penta, kappa_c_tri, kappa_l1, kappa_l_tri, CochainKind, TwoCochain};
use orbifold_core::exactalg::{random_point, Param, ParamPoly, PolyElem};
use orbifold_core::obstructions::{check_conditions, CheckOptions};
use orbifold_core::pbw::{dimension_census, RewriteSystem};
use orbifold_core::permgroup::{k_cycles, Perm};

type Builder = fn(usize) -> (TwoCochain, TwoCochain);

fn lin(n: usize) -> TwoCochain {
    TwoCochain::zero(n, CochainKind::Linear)
}

fn con(n: usize) -> TwoCochain {
    TwoCochain::zero(n, CochainKind::Constant)
}

fn l1(n: usize) -> TwoCochain {
    kappa_l1(&ParamPoly::a1(), n)
}

fn ltri(n: usize) -> TwoCochain {
    kappa_l_tri(&ParamPoly::a(), &ParamPoly::b(), n).unwrap()
}

fn ctri(n: usize) -> TwoCochain {
    kappa_c_tri(&ParamPoly::c(), n).unwrap()
}

/// `(e_p, e_{g p}) ↦ a e_p` on 3-cycles: invariant, but not valued in `V^g`.
fn off_fixed(n: usize) -> TwoCochain {
    let mut out = lin(n);
    for g in k_cycles(n, 3) {
        for p in g.cycles()[0].clone() {
            out.add_value(&g, p, g.apply(p), &PolyElem::e(p).scale(&ParamPoly::a()))
                .unwrap();
        }
    }
    out
}

fn matrix() -> Vec<(&'static str, Builder)> {
    vec![
        ("zero", |n| (lin(n), con(n))),
        ("L1", |n| (l1(n), con(n))),
        ("Ltri", |n| (ltri(n), con(n))),
        ("Ltri+Ctri", |n| (ltri(n), ctri(n))),
        ("Ctri", |n| (lin(n), ctri(n))),
        ("Ltri+Ctri+Cpenta", |n| {
            let c = ctri(n)
                .add(&kappa_c_penta(&ParamPoly::a(), &ParamPoly::b(), n))
                .unwrap();
            (ltri(n), c)
        }),
        ("L1+Ltri", |n| (l1(n).add(&ltri(n)).unwrap(), con(n))),
        ("L1+Ctri", |n| (l1(n), ctri(n))),
        ("L1+Ltri+Ctri", |n| (l1(n).add(&ltri(n)).unwrap(), ctri(n))),
        ("Ltri(a,a)+Ctri", |n| {
            (kappa_l_tri(&ParamPoly::a(), &ParamPoly::a(), n).unwrap(), ctri(n))
        }),
        ("Ctri+stray", |n| {
            let mut c = ctri(n);
            let g = Perm::parse("(1 2 3)", n).unwrap();
            c.add_value(&g, 1, 2, &PolyElem::constant(ParamPoly::c())).unwrap();
            (lin(n), c)
        }),
        ("off-fixed", |n| (off_fixed(n), con(n))),
    ]
}

fn at_point(c: &TwoCochain, seed: u64) -> TwoCochain {
    let point = random_point(seed);
    let values: BTreeMap<Param, _> = Param::ALL.into_iter().zip(point).collect();
    c.substitute(&values)
}

#[test]
fn overlaps_agree_with_conditions() {
    let mut passes = 0;
    let mut fails = 0;
    for n in [3, 4] {
        for (name, build) in matrix() {
            let (l, c) = build(n);
            for seed in 1..=5 {
                let (l, c) = (at_point(&l, seed), at_point(&c, seed));
                let by_conditions = check_conditions(&l, &c, &CheckOptions::default()).unwrap().passed;
                let by_rewriting = RewriteSystem::new(&l, &c).unwrap().check_overlaps().unwrap().passed;
                assert_eq!(by_conditions, by_rewriting, "{name} at n={n}, seed {seed}");
                if by_conditions {
                    passes += 1;
                } else {
                    fails += 1;
                }
            }
        }
    }
    assert!(passes >= 30 && fails >= 30, "{passes} passing, {fails} failing");
}

#[test]
fn census_of_a_passing_map() {
    let (l, c) = (ltri(3), ctri(3));
    let rs = RewriteSystem::new(&at_point(&l, 1), &at_point(&c, 1)).unwrap();
    let census = dimension_census(&rs, 3).unwrap();
    let dims: Vec<u128> = census.iter().map(|e| e.dimension).collect();
    assert_eq!(dims, vec![6, 24, 60, 120]);
    assert!(census.iter().all(|e| e.dimension == e.expected));
}

#[test]
fn census_drops_for_a_failing_map() {
    let (l, c) = (l1(3).add(&ltri(3)).unwrap(), con(3));
    let rs = RewriteSystem::new(&at_point(&l, 2), &at_point(&c, 2)).unwrap();
    let census = dimension_census(&rs, 3).unwrap();
    assert!(census.iter().any(|e| e.dimension < e.expected));
}
