use std::sync::OnceLock;

use num_integer::Integer;
use proptest::prelude::*;
use wildquot::gf::{make_field, FieldSpec};
use wildquot::graph::{cf_eval, cf_expand, fundamental_cycle, solve_self_intersections, build_fiber_graph, DualGraph, Matrix};
use wildquot::group::{build_group, GroupTable};
use wildquot::local::{LocalExpansion, TruncatedSeries};

fn f81() -> &'static FieldSpec {
    static F: OnceLock<FieldSpec> = OnceLock::new();
    F.get_or_init(|| make_field(3, 4).unwrap())
}

fn g3() -> &'static GroupTable {
    static G: OnceLock<GroupTable> = OnceLock::new();
    G.get_or_init(|| build_group(3).unwrap())
}

fn g4() -> &'static GroupTable {
    static G: OnceLock<GroupTable> = OnceLock::new();
    G.get_or_init(|| build_group(4).unwrap())
}

fn valid_hj() -> impl Strategy<Value = (i64, i64)> {
    (2i64..=50)
        .prop_flat_map(|m| (Just(m), 1..m))
        .prop_filter("coprime", |(m, b)| m.gcd(b) == 1)
}

proptest! {
    #[test]
    fn field_axioms(a in 0u32..81, b in 0u32..81, c in 0u32..81) {
        let f = f81();
        let (a, b, c) = (f.element(a), f.element(b), f.element(c));
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
        prop_assert_eq!((&a + &b).frobenius(), a.frobenius() + b.frobenius());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert!(a.pow_u64(80).is_one());
        }
    }

    #[test]
    fn group_laws(x in 0usize..27, y in 0usize..27, z in 0usize..27) {
        let g = g3();
        prop_assert_eq!(g.mul_idx(g.mul_idx(x, y), z), g.mul_idx(x, g.mul_idx(y, z)));
        prop_assert_eq!(g.mul_idx(x, g.inv_idx(x)), g.identity_index());
        let c = g.commutator(g.element(x), g.element(y));
        prop_assert!(c.r.is_zero());
        let back = g.commutator(g.element(y), g.element(x));
        prop_assert_eq!(g.mul(&c, &back), g.identity());
        prop_assert_eq!(g.commutator(g.element(x), g.element(x)), g.identity());
    }

    #[test]
    fn commutator_matches_products(x in 0usize..64, y in 0usize..64) {
        let g = g4();
        let (a, b) = (g.element(x), g.element(y));
        prop_assert_eq!(g.commutator(a, b), g.commutator_by_products(a, b));
    }

    #[test]
    fn action_is_a_homomorphism(s in 0usize..27, t in 0usize..27) {
        let g = g3();
        let local = LocalExpansion::new(g, 10).unwrap();
        let composed = local.act(t).compose(&local.act(s)).unwrap();
        prop_assert_eq!(composed, local.act(g.mul_idx(t, s)));
    }

    #[test]
    fn series_inverse(coeffs in proptest::collection::vec(0u32..81, 1..12)) {
        let f = f81();
        prop_assume!(coeffs[0] != 0);
        let s = TruncatedSeries::from_coeffs(f, coeffs.into_iter().map(|c| f.element(c)).collect());
        let n = s.precision();
        prop_assert_eq!(s.mul(&s.inverse().unwrap()), TruncatedSeries::one(f, n));
    }

    #[test]
    fn cf_round_trip((m, b) in valid_hj()) {
        let hj = cf_expand(m, b).unwrap();
        prop_assert!(hj.expansion.iter().all(|&s| s >= 2));
        prop_assert_eq!(cf_eval(&hj.expansion).unwrap(), (m, b));
        prop_assert_eq!(cf_expand(m, b).unwrap(), hj.clone());
        let (dm, db) = hj.determinants().unwrap();
        prop_assert_eq!((dm, db), (m, b));
        let rev = hj.reversed().unwrap();
        prop_assert_eq!(rev.m, m);
        prop_assert_eq!((b * rev.b).rem_euclid(m), 1 % m);
    }

    #[test]
    fn chains_are_definite_with_reduced_cycle((m, b) in valid_hj()) {
        let g = cf_expand(m, b).unwrap().graph();
        let a: Matrix<i64> = g.intersection_matrix().unwrap();
        prop_assert!(a.is_negative_definite());
        prop_assert_eq!(fundamental_cycle(&g).unwrap(), vec![1; g.vertex_count()]);
        prop_assert_eq!(g.node_count(), 0);
    }

    #[test]
    fn expansions_evaluate(exp in proptest::collection::vec(2i64..6, 1..8)) {
        let (m, b) = cf_eval(&exp).unwrap();
        prop_assert_eq!(cf_expand(m, b).unwrap().expansion, exp);
    }

    #[test]
    fn determinant_is_scalar_independent(rows in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 4)) {
        let a = Matrix::from_rows(rows.clone());
        let det = a.determinant();
        let wide = Matrix::<i128>::from_rows(rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
        prop_assert_eq!(det as i128, wide.determinant());
        // the product of invariant factors is |det|
        let snf: i64 = a.smith_invariants().into_iter().product();
        prop_assert_eq!(snf, det.abs());
    }

    #[test]
    fn star_graphs_have_one_node(legs in proptest::collection::vec(1usize..4, 3..6)) {
        prop_assert_eq!(DualGraph::star(2, &legs).node_count(), 1);
    }
}

#[test]
fn fiber_multiplicities_are_null_vectors() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let g = solve_self_intersections(&build_fiber_graph(q).unwrap()).unwrap();
        let a: Matrix<i64> = g.intersection_matrix().unwrap();
        let m: Vec<i64> = g.multiplicities().iter().map(|&x| x as i64).collect();
        assert!(a.mul_vec(&m).iter().all(|&x| x == 0), "q={q}");
        assert!(g.is_tree());
    }
}
