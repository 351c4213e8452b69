use proptest::prelude::*;

use symxform_core::discrete_ft::{ft1d, Direction, DiscreteTransform};
use symxform_core::expfun::{eval, EvalMethod};
use symxform_core::hermite::{hermite_det, HermiteIndex};
use symxform_core::symgroup::{
    dominant_sort, factorial, reduce_to_affine_fundamental, stabilizer_order, stabilizer_order_int, Permutation,
};
use symxform_core::{Symmetry, C64};

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|m| Permutation::from_mapping(m).unwrap())
}

fn sized_pair() -> impl Strategy<Value = (Permutation, Permutation)> {
    (1usize..=7).prop_flat_map(|n| (permutation(n), permutation(n)))
}

fn symmetry() -> impl Strategy<Value = Symmetry> {
    prop_oneof![Just(Symmetry::Sym), Just(Symmetry::Anti)]
}

proptest! {
    #[test]
    fn sign_is_multiplicative((a, b) in sized_pair()) {
        prop_assert_eq!(a.compose(&b).sign(), a.sign() * b.sign());
        prop_assert!(a.compose(&a.inverse()).is_identity());
        prop_assert_eq!(a.inverse().sign(), a.sign());
    }

    #[test]
    fn dominant_sort_is_idempotent(v in prop::collection::vec(-5i32..5, 1..7)) {
        let v: Vec<f64> = v.into_iter().map(f64::from).collect();
        let (w, _) = dominant_sort(&v, false).unwrap();
        let (again, sign) = dominant_sort(w.entries(), false).unwrap();
        prop_assert_eq!(again.entries(), w.entries());
        prop_assert_eq!(sign, 1);
        prop_assert!(w.entries().windows(2).all(|p| p[0] >= p[1]));
    }

    #[test]
    fn stabilizer_divides_group_order(v in prop::collection::vec(0i64..4, 1..9)) {
        let s = stabilizer_order_int(&v);
        prop_assert_eq!(factorial(v.len()) % s, 0);
        let as_f64: Vec<f64> = v.iter().map(|&x| x as f64).collect();
        prop_assert_eq!(stabilizer_order(&as_f64), s);
    }

    #[test]
    fn affine_reduction_ignores_integer_shifts(
        x in prop::collection::vec(0.0f64..1.0, 1..6),
        shifts in prop::collection::vec(-3i32..3, 6),
    ) {
        let moved: Vec<f64> = x.iter().zip(&shifts).map(|(v, &k)| v + f64::from(k)).collect();
        let (a, _) = reduce_to_affine_fundamental(&x);
        let (b, _) = reduce_to_affine_fundamental(&moved);
        for (p, q) in a.coords().iter().zip(b.coords()) {
            prop_assert!((p - q).abs() < 1e-12);
        }
    }

    #[test]
    fn exponential_functions_are_covariant(
        (w, lambda, x) in (2usize..=6).prop_flat_map(|n| (
            permutation(n),
            prop::collection::vec(-3.0f64..3.0, n),
            prop::collection::vec(0.0f64..1.0, n),
        )),
        sym in symmetry(),
    ) {
        let base = eval(sym, &lambda, &x, EvalMethod::Fast).unwrap();
        let moved = eval(sym, &lambda, &w.apply(&x), EvalMethod::Fast).unwrap();
        let expected = base * sym.character(w.sign());
        prop_assert!((moved - expected).norm() <= 1e-12 * (1.0 + base.norm()));
    }

    #[test]
    fn one_dimensional_transform_is_unitary(values in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..24)) {
        let f: Vec<C64> = values.into_iter().map(|(re, im)| C64::new(re, im)).collect();
        let g = ft1d(&f, Direction::Forward);
        let back = ft1d(&g, Direction::Inverse);
        let norm_f: f64 = f.iter().map(C64::norm_sqr).sum();
        let norm_g: f64 = g.iter().map(C64::norm_sqr).sum();
        prop_assert!((norm_f - norm_g).abs() <= 1e-12 * (1.0 + norm_f));
        for (a, b) in f.iter().zip(&back) {
            prop_assert!((a - b).norm() <= 1e-12);
        }
    }

    #[test]
    fn discrete_transforms_round_trip(
        big_n in 3u32..=6,
        n in 1usize..=3,
        sym in symmetry(),
        seed in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 60),
    ) {
        let t = DiscreteTransform::new(big_n, n, sym).unwrap();
        let f: Vec<C64> = seed.iter().cycle().take(t.grid().len()).map(|&(re, im)| C64::new(re, im)).collect();
        let back = t.inverse(&t.forward(&f).unwrap()).unwrap();
        for (a, b) in f.iter().zip(&back) {
            prop_assert!((a - b).norm() <= 1e-10);
        }
    }

    #[test]
    fn hermite_forms_follow_their_class(
        a in 0usize..6, b in 0usize..6, c in 0usize..6,
        lambda in prop::collection::vec(-2.0f64..2.0, 3),
        w in permutation(3),
        sym in symmetry(),
    ) {
        let mut m = vec![a, b, c];
        m.sort_unstable_by(|x, y| y.cmp(x));
        if sym == Symmetry::Anti {
            m.dedup();
            prop_assume!(m.len() == 3);
        }
        let idx = HermiteIndex::new(m.clone(), sym).unwrap();
        let base = hermite_det(idx.entries(), &lambda, sym).unwrap();
        let moved = hermite_det(&m, &w.apply(&lambda), sym).unwrap();
        prop_assert!((moved - base * sym.character(w.sign())).abs() <= 1e-9 * (1.0 + base.abs()));
    }
}
