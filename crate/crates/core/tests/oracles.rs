//! Independent brute-force oracles for the fast paths.

mod common;

use common::{naive_count, naive_field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wildquot::curve::{count_points, count_points_model, CurveModel};
use wildquot::gf::make_field;
use wildquot::group::build_group;

#[test]
fn schoolbook_matches_field_arithmetic() {
    for (p, d) in [(2u32, 4usize), (2, 6), (3, 4), (5, 2), (7, 2), (2, 8)] {
        let spec = make_field(p, d).unwrap();
        let naive = naive_field(p, d);
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p) * 100 + d as u64);
        for _ in 0..2000 {
            let (a, b) = (rng.gen_range(0..spec.size()), rng.gen_range(0..spec.size()));
            let (ea, eb) = (spec.element(a), spec.element(b));
            assert_eq!((&ea * &eb).code(), naive.mul(a, b));
            assert_eq!((&ea + &eb).code(), naive.add(a, b));
        }
    }
}

#[test]
fn f2_octic_modulus_by_trial_division() {
    // bit i of a mask is the coefficient of t^i
    fn rem(mut a: u32, b: u32) -> u32 {
        let db = 31 - b.leading_zeros();
        while a != 0 && 31 - a.leading_zeros() >= db {
            a ^= b << (31 - a.leading_zeros() - db);
        }
        a
    }
    let irreducible = |f: u32| (2u32..32).all(|g| rem(f, g) != 0);
    let smallest = (0u32..256).map(|low| 256 | low).find(|&f| irreducible(f)).unwrap();
    assert_eq!(smallest, 0b1_0001_1011);
    let spec = make_field(2, 8).unwrap();
    let mask = spec
        .modulus()
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &c)| acc | (c << i));
    assert_eq!(mask, smallest);
}

#[test]
fn fast_counts_match_double_loop() {
    let mut checked = 0;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for f in 1.. {
            if q.pow(2 * f) > 4096 {
                break;
            }
            let naive = naive_count(q, f, 1);
            assert_eq!(count_points(q, f, 1).unwrap().count, naive, "q={q} f={f}");
            let literal = count_points_model(q, f, CurveModel::Literal, 1).unwrap().count;
            assert_eq!(literal, naive_count(q, f, -1), "literal q={q} f={f}");
            checked += 1;
        }
    }
    assert_eq!(checked, 6 + 3 + 3 + 2 + 2 + 2 + 1);
}

#[test]
fn commutators_exhaustive_small_q() {
    for q in [2u64, 3] {
        let g = build_group(q).unwrap();
        for a in g.elements() {
            for b in g.elements() {
                assert_eq!(g.commutator(a, b), g.commutator_by_products(a, b));
            }
        }
    }
}

#[test]
fn commutators_random_pairs() {
    for q in [4u64, 5, 7, 8, 9] {
        let g = build_group(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q);
        for _ in 0..10_000 {
            let a = g.element(rng.gen_range(0..g.order()));
            let b = g.element(rng.gen_range(0..g.order()));
            assert_eq!(g.commutator(a, b), g.commutator_by_products(a, b), "q={q}");
        }
    }
}

#[test]
fn q2_group_is_quaternion() {
    let g = build_group(2).unwrap();
    let mut orders: Vec<u64> = (0..g.order()).map(|i| g.element_order(i)).collect();
    orders.sort_unstable();
    // Q8 is the only group of order 8 with one involution and six elements of order 4
    assert_eq!(orders, vec![1, 2, 4, 4, 4, 4, 4, 4]);
}

#[test]
fn group_tables_are_associative() {
    for q in [2u64, 3, 4, 5] {
        let g = build_group(q).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7 * q);
        for _ in 0..5000 {
            let (a, b, c) = (
                rng.gen_range(0..g.order()),
                rng.gen_range(0..g.order()),
                rng.gen_range(0..g.order()),
            );
            assert_eq!(g.mul_idx(g.mul_idx(a, b), c), g.mul_idx(a, g.mul_idx(b, c)));
        }
    }
}
