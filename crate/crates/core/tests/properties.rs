//! Randomized invariants of the polynomial layer and of `phi`.

use num_rational::BigRational;
use proptest::prelude::*;

use wzproof::paths::{is_x_path, is_y_pair, phi, phi_inverse, LatticePath, Step};
use wzproof::poly::{to_elementary, EPoly, MultiPoly, RationalFn};

fn poly_in(vars: &'static [&'static str], max_exp: u32) -> impl Strategy<Value = MultiPoly> {
    let term = (proptest::collection::vec(0..=max_exp, vars.len()), -9i64..=9);
    proptest::collection::vec(term, 0..6).prop_map(move |terms| {
        MultiPoly::from_terms(vars, terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into()))))
    })
}

fn nonzero_poly() -> impl Strategy<Value = MultiPoly> {
    poly_in(&["a", "b"], 3).prop_filter("nonzero", |p| !p.is_zero())
}

/// A random member of `X_n`: a shuffle of `2n+1` up-steps and `2n`
/// down-steps, kept only if it avoids height 0 at the even positions past `2n`.
fn x_path() -> impl Strategy<Value = (usize, LatticePath)> {
    (0usize..=6)
        .prop_flat_map(|n| {
            let steps: Vec<Step> = std::iter::repeat_n(Step::U, 2 * n + 1).chain(std::iter::repeat_n(Step::D, 2 * n)).collect();
            (Just(n), Just(steps).prop_shuffle())
        })
        .prop_map(|(n, steps)| (n, LatticePath::new(steps)))
        .prop_filter("X-path", |(n, p)| is_x_path(p, *n))
}

proptest! {
    #[test]
    fn shift_round_trip(p in poly_in(&["a", "b", "c"], 4), d in -5i64..=5) {
        prop_assert_eq!(p.shift("a", d).shift("a", -d), p);
    }

    #[test]
    fn elementary_round_trip(g in poly_in(&["e1", "e2", "e3"], 2)) {
        let e = EPoly::new(g).unwrap();
        prop_assert_eq!(to_elementary(&e.expand()).unwrap(), e);
    }

    #[test]
    fn ratfn_common_factor_cancels(p in nonzero_poly(), q in nonzero_poly(), h in nonzero_poly()) {
        let plain = RationalFn::new(p.clone(), q.clone()).unwrap();
        let padded = RationalFn::new(&p * &h, &q * &h).unwrap();
        prop_assert!(plain.equals(&padded));
        let moved = RationalFn::new(&p + &q, q.clone()).unwrap();
        prop_assert!(!plain.equals(&moved));
    }

    #[test]
    fn phi_round_trip((n, x) in x_path()) {
        let y = phi(&x, n).unwrap();
        prop_assert!(is_y_pair(&y, n));
        prop_assert_eq!(phi_inverse(&y), Some(x));
    }
}
