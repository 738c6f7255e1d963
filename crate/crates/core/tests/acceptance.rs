//! End-to-end acceptance suite: each test is one verification item, checked
//! exactly (no tolerances anywhere), and prints one summary line.

use arrfree::catalog::{get, CatalogName, CatalogParams, CH13_M2, CH13_M4};
use arrfree::exactnum::{rat, FieldContext, QuadScalar};
use arrfree::freeness::{
    decide_free, enumerate_profiles, yoshinaga_decide, ExponentTriple, Method,
};
use arrfree::geometry::{
    char_poly, f_vector, lattice_isomorphic, meet, verify_iso_witness, Arrangement, FVector,
    HomogeneousTriple, Lattice,
};
use arrfree::multiarr::{
    derivation_dim, multi_exponents, saito_check, ziegler_restriction, BinaryForm, Derivation2,
    MultiExponents, Multiarrangement2, MultiLine,
};
use arrfree::search::{
    addition_profiles, candidate_additions, inductive_certificate, profile_multiset, prove_stuck,
    recheck_candidate, replay_chain, same_lines, ChainStep,
};
use arrfree::verify::suites;

fn entry(name: CatalogName) -> Arrangement {
    get(name, CatalogParams::default()).unwrap().arrangement
}

fn ch13(lambda_num: i64, lambda_den: i64) -> Arrangement {
    get(
        CatalogName::Ch13,
        CatalogParams { lambda: Some(rat(lambda_num, lambda_den)), k: None },
    )
    .unwrap()
    .arrangement
}

fn pass(n: usize, what: &str) {
    println!("ACCEPTANCE {n:>2} PASS: {what}");
}

#[test]
fn acceptance_01_profile_enumeration() {
    for ell_max in 2..=8 {
        assert!(
            enumerate_profiles(ell_max).is_empty(),
            "profiles up to {ell_max} must be empty"
        );
    }
    let got: Vec<(usize, usize, Vec<usize>)> = enumerate_profiles(12)
        .iter()
        .map(|p| (p.ell, p.a_min, p.f.entries().to_vec()))
        .collect();
    assert_eq!(
        got,
        vec![
            (9, 4, vec![0, 12]),
            (11, 5, vec![1, 14, 2]),
            (11, 5, vec![4, 11, 3]),
            (11, 5, vec![7, 8, 4]),
            (11, 5, vec![10, 5, 5]),
            (12, 5, vec![0, 16, 3]),
        ]
    );
    let p13 = enumerate_profiles(13);
    assert!(p13
        .iter()
        .any(|p| p.ell == 13 && p.a_min == 6 && p.f.entries() == [21, 3, 3, 3]));

    // Independent brute-force oracle: enumerate all bounded F-vectors with
    // nested loops and filter by the three relations afterwards.
    for ell in 2usize..=13 {
        let mut oracle: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        for a in 0usize..=(ell - 1) / 2 {
            let support = a.saturating_sub(2);
            let pair_target = ell * (ell - 1) / 2;
            let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
            for i in 1..=support {
                let cap = pair_target / ((i + 1) * i / 2);
                let mut next = Vec::new();
                for prefix in &stack {
                    for v in 0..=cap {
                        let mut p = prefix.clone();
                        p.push(v);
                        next.push(p);
                    }
                }
                stack = next;
            }
            for f in &stack {
                let mu: usize = f.iter().enumerate().map(|(k, c)| (k + 1) * c).sum();
                let pairs: usize = f
                    .iter()
                    .enumerate()
                    .map(|(k, c)| (k + 2) * (k + 1) / 2 * c)
                    .sum();
                let weight: usize = f.iter().enumerate().map(|(k, c)| (k + 2) * c).sum();
                let mu_target = (ell - 1) * (a + 1);
                if mu_target < a * a {
                    continue;
                }
                if mu == mu_target - a * a && pairs == pair_target && weight <= a * ell {
                    let mut trimmed = f.clone();
                    while trimmed.last() == Some(&0) {
                        trimmed.pop();
                    }
                    oracle.push((ell, a, trimmed));
                }
            }
        }
        let implemented: Vec<(usize, usize, Vec<usize>)> = enumerate_profiles(ell)
            .into_iter()
            .filter(|p| p.ell == ell)
            .map(|p| (p.ell, p.a_min, p.f.entries().to_vec()))
            .collect();
        assert_eq!(implemented, oracle, "ell = {ell}");
    }
    pass(1, "exactly six balanced profiles up to 12 lines, none up to 8, thirteen-line profile present");
}

#[test]
fn acceptance_02_catalog_invariants() {
    let table = [
        (CatalogName::DualHesse, vec![0, 12], (4, 4)),
        (CatalogName::Pentagonal, vec![10, 5, 5], (5, 5)),
        (CatalogName::G443, vec![0, 16, 3], (5, 6)),
        (CatalogName::Ch13, vec![21, 3, 3, 3], (6, 6)),
    ];
    for (name, f, (a, b)) in table {
        let arr = entry(name);
        assert_eq!(f_vector(&arr.lattice()), FVector::new(f), "{name}");
        let v = decide_free(&arr).unwrap();
        assert!(v.is_free, "{name}");
        assert_eq!(v.exponents, Some(ExponentTriple::new(a, b)), "{name}");
    }
    pass(2, "F-vectors [0,12]/[10,5,5]/[0,16,3]/[21,3,3,3] and exponents (1,4,4)/(1,5,5)/(1,5,6)/(1,6,6)");
}

#[test]
fn acceptance_03_multiarrangement_engine() {
    let ctx = FieldContext::rational();
    let m = Multiarrangement2::new(
        ctx,
        vec![
            MultiLine::from_ints(ctx, 1, 0, 3).unwrap(),
            MultiLine::from_ints(ctx, 0, 1, 3).unwrap(),
            MultiLine::from_ints(ctx, 1, 1, 3).unwrap(),
        ],
    )
    .unwrap();
    assert_eq!(multi_exponents(&m), MultiExponents { d1: 4, d2: 5 });
    let t1 = Derivation2::new(
        BinaryForm::from_ints(ctx, &[1, 2, 0, 0, 0]).unwrap(),
        BinaryForm::from_ints(ctx, &[0, 0, 0, -2, -1]).unwrap(),
    )
    .unwrap();
    let t2 = Derivation2::new(
        BinaryForm::from_ints(ctx, &[0, 1, 3, 0, 0, 0]).unwrap(),
        BinaryForm::from_ints(ctx, &[0, 0, 0, 3, 1, 0]).unwrap(),
    )
    .unwrap();
    assert!(saito_check(&m, &t1, &t2).unwrap());

    let arr = entry(CatalogName::Ch13);
    let restriction = ziegler_restriction(&arr, 12).unwrap();
    assert_eq!(restriction.mult_multiset(), vec![3, 3, 3, 1, 1, 1]);
    assert_eq!(restriction.total_mult(), 12);
    assert_eq!(derivation_dim(&restriction, 5), 0);
    // Degree-6 layer dimension from the free-module layer formula for (6,6).
    let exps = MultiExponents { d1: 6, d2: 6 };
    assert_eq!(exps.layer_dim(6), 2);
    assert_eq!(derivation_dim(&restriction, 6), 2);
    pass(3, "three-cubed multiexponents (4,5) with a verified basis; restriction layers 0 at degree 5 and 2 at degree 6");
}

#[test]
fn acceptance_04_yoshinaga_pipeline() {
    let arr = entry(CatalogName::Ch13);
    let q = char_poly(&arr.lattice()).unwrap();
    assert_eq!(q.constant, 36);
    // Pivot 13 (the infinity line) first, then every pivot.
    let v = yoshinaga_decide(&arr, 12).unwrap();
    assert!(v.is_free);
    match v.method {
        Method::Yoshinaga { ziegler, root_product, .. } => {
            assert_eq!(root_product, 36);
            assert_eq!(ziegler.product(), 36);
            assert_eq!(ziegler, MultiExponents { d1: 6, d2: 6 });
        }
        other => panic!("unexpected method {other:?}"),
    }
    for pivot in 0..13 {
        let v = yoshinaga_decide(&arr, pivot).unwrap();
        assert!(v.is_free, "pivot {pivot}");
        assert_eq!(v.exponents, Some(ExponentTriple::new(6, 6)), "pivot {pivot}");
    }
    pass(4, "Ziegler criterion: ab = 36 = 6*6, identical verdict for all 13 pivots");
}

fn point_of(lat: &Lattice, lines_1b: &[usize]) -> usize {
    let mut z: Vec<usize> = lines_1b.iter().map(|i| i - 1).collect();
    z.sort_unstable();
    lat.point_with_lines(&z).expect("named point exists")
}

fn probe_n(arr: &Arrangement, lat: &Lattice, a: &[usize], b: &[usize]) -> usize {
    let line = meet(
        &lat.points()[point_of(lat, a)].point,
        &lat.points()[point_of(lat, b)].point,
    )
    .unwrap();
    let bigger = arr.with_line_added(line).unwrap();
    bigger.lattice().line_n(bigger.len() - 1)
}

#[test]
fn acceptance_05_stuck_certificate() {
    let arr = entry(CatalogName::Ch13);
    let cert = prove_stuck(&arr).unwrap().expect("stuck certificate must exist");

    assert_eq!(cert.deletion_verdicts.len(), 13);
    for (i, v) in cert.deletion_verdicts.iter().enumerate() {
        assert!(!v.is_free);
        assert_eq!(v.method, Method::ChiNonIntegral);
        let smaller = arr.with_line_removed(i).unwrap();
        let q = char_poly(&smaller.lattice()).unwrap();
        // mu drops by 6, so q = t^2 - 11 t + 31 with discriminant -3.
        assert_eq!((q.linear, q.constant), (11, 31));
        assert_eq!(q.linear * q.linear - 4 * q.constant, -3);
        assert_eq!(smaller.lattice().mu_total(), 42);
    }
    assert_eq!(cert.targets, vec![7]);
    assert!(cert.candidates.is_empty());
    assert_eq!(cert.bound, 8);

    // Named probes: pairs of double points give 11; anything through the
    // point where line 10 meets the infinity line gives 10; the two triple
    // points give 9; a quintuple point with an adjacent double gives 8.
    let lat = arr.lattice();
    assert_eq!(probe_n(&arr, &lat, &[1, 2], &[4, 5]), 11);
    assert_eq!(probe_n(&arr, &lat, &[1, 2], &[7, 8]), 11);
    assert_eq!(probe_n(&arr, &lat, &[4, 5], &[7, 8]), 11);
    for other in [&[1, 2][..], &[4, 5], &[7, 8]] {
        assert_eq!(probe_n(&arr, &lat, &[10, 13], other), 10);
    }
    assert_eq!(probe_n(&arr, &lat, &CH13_M2[0], &CH13_M2[1]), 9);
    for other in [&[2, 3][..], &[5, 6], &[8, 9]] {
        assert_eq!(probe_n(&arr, &lat, &CH13_M4[0], other), 8);
    }

    // The nine double points away from the horizontal lines and the
    // infinity line have pairwise distinct y-coordinates.
    let excluded = [2usize, 6, 7, 13];
    let mut ys: Vec<QuadScalar> = Vec::new();
    for p in lat.points().iter().filter(|p| p.mu == 1) {
        if p.incident.iter().any(|i| excluded.contains(&(i + 1))) {
            continue;
        }
        let c = p.point.coords();
        assert!(!c[2].is_zero());
        ys.push(c[1].try_div(&c[2]).unwrap());
    }
    assert_eq!(ys.len(), 9);
    for i in 0..ys.len() {
        for j in (i + 1)..ys.len() {
            assert_ne!(ys[i], ys[j]);
        }
    }
    pass(5, "all 13 deletions non-free with q = t^2 - 11t + 31; no candidates at n = 7; probes give 11/10/9/8");
}

#[test]
fn acceptance_06_nine_line_structure() {
    let arr = entry(CatalogName::DualHesse);
    let lat = arr.lattice();
    let cands = candidate_additions(&arr, &lat, 5).unwrap();
    assert_eq!(cands.len(), 12);
    for c in &cands {
        assert!(recheck_candidate(&arr, c).unwrap());
    }
    let profiles = addition_profiles(&arr, &lat, 5).unwrap();
    assert_eq!(profiles.len(), 12);
    assert!(profiles.iter().all(|p| p.entries() == [3, 0, 2]));
    for c in &cands {
        let bigger = arr.with_line_added(c.line.clone()).unwrap();
        let v = decide_free(&bigger).unwrap();
        assert!(v.is_free);
        assert_eq!(v.exponents, Some(ExponentTriple::new(4, 5)));
        let chain = inductive_certificate(&bigger).unwrap().expect("ten-line extension is inductively free");
        assert!(same_lines(&replay_chain(&chain).unwrap(), &bigger));
    }
    assert!(inductive_certificate(&arr).unwrap().is_none());
    pass(6, "twelve candidates at n = 5, all [3,0,2], all additions free (1,4,5) and inductively certified; the base itself has no filtration");
}

#[test]
fn acceptance_07_eleven_line_structure() {
    let arr = entry(CatalogName::Pentagonal);
    let lat = arr.lattice();
    let cands = candidate_additions(&arr, &lat, 6).unwrap();
    assert_eq!(cands.len(), 10);
    let profiles = addition_profiles(&arr, &lat, 6).unwrap();
    let multiset = profile_multiset(&profiles);
    assert_eq!(
        multiset,
        vec![
            (FVector::new(vec![3, 2, 0, 1]), 5),
            (FVector::new(vec![4, 0, 1, 1]), 5),
        ]
    );
    for absent in [[1, 5, 0, 0], [2, 3, 1, 0]] {
        assert!(!profiles.iter().any(|p| p.entries() == absent));
    }
    for c in &cands {
        let bigger = arr.with_line_added(c.line.clone()).unwrap();
        let chain = inductive_certificate(&bigger).unwrap().expect("twelve-line extension is inductively free");
        assert!(same_lines(&replay_chain(&chain).unwrap(), &bigger));
    }
    pass(7, "ten candidates at n = 6 with profiles [3,2,0,1] x5 and [4,0,1,1] x5; all extensions inductively certified");
}

/// Replays one explicit add-then-delete sequence and assembles the full
/// chain from the empty arrangement.
fn replay_sequence(
    arr: &Arrangement,
    auxiliary: HomogeneousTriple,
    delete_index: usize,
    count_on_deleted: usize,
    exps_add: (usize, usize),
    exps_delete: (usize, usize),
) {
    let bigger = arr.with_line_added(auxiliary.clone()).unwrap();
    let v1 = decide_free(&bigger).unwrap();
    assert!(v1.is_free);
    assert_eq!(v1.exponents, Some(ExponentTriple::new(exps_add.0, exps_add.1)));
    assert_eq!(bigger.lattice().line_n(delete_index), count_on_deleted);
    let deleted = bigger.line(delete_index).unwrap().clone();
    let smaller = bigger.with_line_removed(delete_index).unwrap();
    let v2 = decide_free(&smaller).unwrap();
    assert!(v2.is_free);
    assert_eq!(v2.exponents, Some(ExponentTriple::new(exps_delete.0, exps_delete.1)));

    let mut chain = inductive_certificate(&smaller).unwrap().expect("post-deletion arrangement is inductively free");
    chain.steps.push(ChainStep {
        line: deleted,
        add: true,
        exponents_after: ExponentTriple::new(exps_add.0, exps_add.1),
    });
    let base = decide_free(arr).unwrap();
    chain.steps.push(ChainStep {
        line: auxiliary,
        add: false,
        exponents_after: base.exponents.unwrap(),
    });
    let rebuilt = replay_chain(&chain).unwrap();
    assert!(same_lines(&rebuilt, arr));
}

#[test]
fn acceptance_08_recursive_replays() {
    // Nine lines: add x - y, then delete the infinity line at count 5.
    let dh = entry(CatalogName::DualHesseAffine);
    replay_sequence(
        &dh,
        HomogeneousTriple::from_ints(dh.context(), [1, -1, 0]).unwrap(),
        8,
        5,
        (4, 5),
        (4, 4),
    );
    // Eleven lines: add x - y, then delete the infinity line at count 6.
    let pen = entry(CatalogName::Pentagonal);
    replay_sequence(
        &pen,
        HomogeneousTriple::from_ints(pen.context(), [1, -1, 0]).unwrap(),
        10,
        6,
        (5, 6),
        (5, 5),
    );
    // Twelve lines: add the infinity line, then delete x - y at count 6.
    let g = entry(CatalogName::G443Affine);
    replay_sequence(
        &g,
        HomogeneousTriple::from_ints(g.context(), [0, 0, 1]).unwrap(),
        8,
        6,
        (5, 7),
        (5, 6),
    );
    pass(8, "explicit sequences replay with counts 5, 6, 6 and full chains from the empty arrangement");
}

#[test]
fn acceptance_09_property_suites() {
    suites::field_axioms(1000).unwrap();
    suites::lattice_identities(1000).unwrap();
    suites::deletion_bookkeeping(1000).unwrap();
    suites::decision_agreement(1000).unwrap();
    suites::substitution_invariance(1000).unwrap();
    suites::balanced_structure(1000).unwrap();
    pass(9, "six randomized suites with 1000 exact cases each");
}

#[test]
fn acceptance_10_cross_realization_isomorphism() {
    for (a, b) in [
        (CatalogName::DualHesse, CatalogName::DualHesseAffine),
        (CatalogName::G443, CatalogName::G443Affine),
    ] {
        let arr_a = entry(a);
        let arr_b = entry(b);
        let sigma = lattice_isomorphic(&arr_a, &arr_b).expect("realizations are isomorphic");
        assert!(verify_iso_witness(&arr_a, &arr_b, &sigma));
    }
    let a = ch13(2, 3);
    let b = ch13(3, 5);
    let sigma = lattice_isomorphic(&a, &b).expect("generic parameters give one lattice");
    assert!(verify_iso_witness(&a, &b, &sigma));
    pass(10, "isomorphism witnesses verified across realizations and across parameters");
}
