mod common;

use std::sync::Arc;

use common::*;
use nichols::bosonization::{all_passed, bosonization_suite, Bosonization};
use nichols::error::Error;
use nichols::harness::{input_hash, parse_input};
use nichols::nichols::{nichols_truncate, Mode};
use nichols::pairing::{canonical_pairing, inverse_pairing, pairing_axiom_suite};
use nichols::reflection::{reflect, verify_reflection_theorems};
use nichols::weyl::weyl_groupoid;
use nichols::yd::yd_dual;
use proptest::prelude::*;

const ROOTS: [(u32, i64); 7] = [(1, 0), (2, 1), (3, 1), (3, 2), (4, 1), (4, 3), (6, 1)];

fn root() -> impl Strategy<Value = (u32, i64)> {
    prop::sample::select(ROOTS.to_vec())
}

fn rank_two() -> impl Strategy<Value = Vec<Vec<(u32, i64)>>> {
    (root(), root(), root(), root()).prop_map(|(a, b, c, d)| vec![vec![a, b], vec![c, d]])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn recursion_matches_permutations(q in rank_two()) {
        let (m, tags) = diagonal_sum(&q);
        let t = nichols_truncate(&m, Some(&tags), 4, Mode::Nichols).unwrap();
        for n in 0..=4 {
            prop_assert_eq!(t.dim(n), permutation_oracle_rank(&m, n));
        }
    }

    #[test]
    fn dual_has_the_same_dimensions(q in rank_two()) {
        let (m, tags) = diagonal_sum(&q);
        let a = nichols_truncate(&m, Some(&tags), 4, Mode::Nichols).unwrap();
        let b = nichols_truncate(&yd_dual(&m), Some(&tags), 4, Mode::Nichols).unwrap();
        prop_assert_eq!(a.dims(), b.dims());
    }

    #[test]
    fn pairing_axioms(q in rank_two()) {
        let (m, tags) = diagonal_sum(&q);
        let r = Arc::new(nichols_truncate(&m, Some(&tags), 3, Mode::Nichols).unwrap());
        let l = Arc::new(nichols_truncate(&yd_dual(&m), Some(&tags), 3, Mode::Nichols).unwrap());
        let p = canonical_pairing(l, r).unwrap();
        prop_assert!(all_passed(&pairing_axiom_suite(&p)));
        prop_assert!(all_passed(&pairing_axiom_suite(&inverse_pairing(&p))));
    }

    #[test]
    fn reflection_is_an_involution(q in rank_two(), i in 0usize..2) {
        let t = tuple(&q);
        match reflect(&t, i, 4) {
            Ok(d) => {
                let back = reflect(&d.result, i, 4);
                // definedness is symmetric
                let back = back.unwrap();
                prop_assert!(t.isomorphic(&back.result).is_some());
                prop_assert_eq!(back.cartan_row, d.cartan_row);
            }
            Err(Error::NotDefinedAtCutoff { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn bosonization_of_rank_one(r in root()) {
        let t = tuple(&[vec![r]]);
        let a = Bosonization::new(Arc::new(t.truncate(3).unwrap()));
        let checks = bosonization_suite(&a).unwrap();
        prop_assert!(all_passed(&checks), "{:?}", checks.iter().find(|c| !c.passed));
    }
}

#[test]
fn rank_one_reflection_keeps_dimensions() {
    let t = tuple(&[vec![(3, 1)]]);
    let r = verify_reflection_theorems(&t, 0, 4).unwrap();
    assert!(all_passed(&r.checks), "{:?}", r.checks);
    assert_eq!(r.source_dims, r.reflected_dims);
    let g = weyl_groupoid(&t, 4, 8).unwrap();
    assert!(g.involutive() && g.complete);
}

#[test]
fn e0_groupoid_has_one_vertex() {
    // M_1^* = M_1 here: degree and character are their own inverses
    let g = weyl_groupoid(&e0(), 3, 8).unwrap();
    assert_eq!(g.vertices.len(), 1);
    assert_eq!(g.adjacency(), "0 1 0 2,0\n0 2 0 0,2\n");
}

#[test]
fn e1_groupoid_is_a_hexagon() {
    let g = weyl_groupoid(&e1(), 4, 16).unwrap();
    assert_eq!(g.vertices.len(), 6);
    assert!(g.coxeter_orders(12).iter().all(|&(_, _, _, o)| o == Some(3)));
}

#[test]
fn hash_follows_the_modules() {
    let a = parse_input("[diagonal]\nq = [[\"-1\", \"1\"], [\"1\", \"-1\"]]\n").unwrap();
    let b = parse_input("[diagonal]\nq = [[\"z(2,1)\", \"1\"], [\"1\", \"z(2,1)\"]]\n").unwrap();
    let c = parse_input("[diagonal]\nq = [[\"z(2,1)\", \"1\"], [\"z(2,1)\", \"z(2,1)\"]]\n").unwrap();
    let h = |s: &nichols::harness::InputSpec| input_hash(&s.tuple().unwrap());
    assert_eq!(h(&a), h(&b));
    assert_ne!(h(&a), h(&c));
}

#[test]
fn parse_errors_name_the_field() {
    let e = parse_input("[diagonal]\nq = [[\"2\"]]\n").unwrap().tuple().unwrap_err();
    assert!(e.to_string().contains("diagonal.q[0][0]"), "{e}");
    let e = parse_input("cutof = 3\n").unwrap_err();
    assert!(e.to_string().contains("line 1"), "{e}");
}
