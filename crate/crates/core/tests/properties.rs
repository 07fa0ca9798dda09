use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use volterra_core::algebra::{AlgebraElement, AlgebraSpec, SimplexPoint};
use volterra_core::characters::{is_character, verify_character_bruteforce};
use volterra_core::derivations::{
    check_support_pattern, derivation_space, verify_derivation, LinearMap,
};
use volterra_core::rational::{ratio, Rational};
use volterra_core::structure::{
    identity_forms_agree, is_associative_direct, is_associative_theorem,
};

/// Off-diagonal coefficients k/64, plus a bias towards 0, 1/2 and 1.
fn coefficient() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (0i64..=64).prop_map(|k| ratio(k, 64)),
        prop::sample::select(vec![ratio(0, 1), ratio(1, 2), ratio(1, 1)]),
    ]
}

fn algebra(dims: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = AlgebraSpec> {
    dims.prop_flat_map(|m| {
        prop::collection::vec(coefficient(), m * (m - 1) / 2).prop_map(move |upper| {
            let mut values = upper.into_iter();
            AlgebraSpec::from_upper(m, |_, _| values.next().unwrap()).unwrap()
        })
    })
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| ratio(n, d))
}

fn element(m: usize) -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(small_rational(), m).prop_map(AlgebraElement::new)
}

fn simplex_point(m: usize) -> impl Strategy<Value = SimplexPoint> {
    prop::collection::vec(0i64..=20, m).prop_map(|weights| {
        let total: i64 = weights.iter().sum();
        if total == 0 {
            return SimplexPoint::barycenter(weights.len());
        }
        SimplexPoint::new(weights.iter().map(|&w| ratio(w, total)).collect()).unwrap()
    })
}

fn algebra_with<S, F>(make: F) -> impl Strategy<Value = (AlgebraSpec, S::Value)>
where
    S: Strategy,
    F: Fn(usize) -> S + Clone + 'static,
{
    algebra(2..=6).prop_flat_map(move |a| {
        let m = a.dim();
        (Just(a), make(m))
    })
}

/// The full heredity tensor written out from the reduced matrix.
fn tensor(a: &AlgebraSpec) -> Vec<Vec<Vec<Rational>>> {
    let m = a.dim();
    let p = a.coeffs();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    (0..m)
                        .map(|k| {
                            if i == j {
                                if k == i {
                                    Rational::one()
                                } else {
                                    Rational::zero()
                                }
                            } else if k == i {
                                p[i][j].clone()
                            } else if k == j {
                                p[j][i].clone()
                            } else {
                                Rational::zero()
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn tensor_product(
    t: &[Vec<Vec<Rational>>],
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Vec<Rational> {
    let m = x.len();
    (0..m)
        .map(|k| {
            let mut acc = Rational::zero();
            for i in 0..m {
                for j in 0..m {
                    acc += &t[i][j][k] * &x[i] * &y[j];
                }
            }
            acc
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn product_matches_full_tensor((a, (x, y)) in algebra_with(|m| (element(m), element(m)))) {
        let t = tensor(&a);
        let product = a.multiply(&x, &y).unwrap();
        prop_assert_eq!(product.coords(), &tensor_product(&t, &x, &y)[..]);
    }

    #[test]
    fn product_is_commutative((a, (x, y)) in algebra_with(|m| (element(m), element(m)))) {
        prop_assert_eq!(a.multiply(&x, &y).unwrap(), a.multiply(&y, &x).unwrap());
    }

    #[test]
    fn heredity_columns_sum_to_one(a in algebra(2..=6)) {
        let t = tensor(&a);
        for row in &t {
            for column in row {
                prop_assert!(column.iter().sum::<Rational>().is_one());
            }
        }
    }

    #[test]
    fn product_of_unit_sum_vectors_has_unit_sum((a, (x, y)) in algebra_with(|m| (simplex_point(m), simplex_point(m)))) {
        let product = a.multiply(x.as_element(), y.as_element()).unwrap();
        prop_assert!(product.sum().is_one());
    }

    #[test]
    fn l1_norm_is_submultiplicative((a, (x, y)) in algebra_with(|m| (element(m), element(m)))) {
        let product = a.multiply(&x, &y).unwrap();
        prop_assert!(product.l1_norm() <= x.l1_norm() * y.l1_norm());
    }

    #[test]
    fn skew_round_trips(a in algebra(1..=6)) {
        let skew = a.to_skew();
        prop_assert_eq!(AlgebraSpec::from_skew(&skew).to_skew(), skew);
        prop_assert_eq!(AlgebraSpec::from_skew(&a.to_skew()), a);
    }

    #[test]
    fn qso_equals_skew_form((a, x) in algebra_with(simplex_point)) {
        let by_tensor = a.apply_qso(&x).unwrap();
        prop_assert!(by_tensor.coords().iter().all(|v| *v >= Rational::zero()));
        // x'_k = x_k (1 + Σ_i a_{ik} x_i) with a_{ik} = 2 p_{ik,k} - 1, written out here
        let m = a.dim();
        let expected: Vec<Rational> = (0..m)
            .map(|k| {
                let growth: Rational = (0..m)
                    .filter(|&i| i != k)
                    .map(|i| (ratio(2, 1) * &a.coeffs()[k][i] - Rational::one()) * &x[i])
                    .sum();
                &x[k] * (Rational::one() + growth)
            })
            .collect();
        prop_assert_eq!(by_tensor.coords(), &expected[..]);
        prop_assert_eq!(a.to_skew().apply(&x).unwrap(), by_tensor);
    }

    #[test]
    fn character_condition_matches_bruteforce(a in algebra(2..=5), mask in 0u32..32) {
        let subset: Vec<usize> = (0..a.dim()).filter(|i| mask & (1 << i) != 0).collect();
        prop_assert_eq!(is_character(&a, &subset).unwrap(), verify_character_bruteforce(&a, &subset).unwrap());
    }

    #[test]
    fn associativity_deciders_agree(a in algebra(3..=5)) {
        prop_assert_eq!(is_associative_direct(&a, 1).associative, is_associative_theorem(&a));
    }

    #[test]
    fn identity_forms_always_agree(x in 0i64..=12, y in 0i64..=12, z in 0i64..=12) {
        let (ij, jk, ik) = (ratio(x, 12), ratio(y, 12), ratio(z, 12));
        let c = |v: &Rational| Rational::one() - v;
        prop_assert!(identity_forms_agree(&jk, &ij, &c(&jk), &ik, &c(&ij), &c(&ik)).unwrap());
    }

    #[test]
    fn derivation_basis_is_sound(a in algebra(2..=5), coeffs in prop::collection::vec(-6i64..=6, 30)) {
        let space = derivation_space(&a).unwrap();
        for d in &space.basis {
            prop_assert!(verify_derivation(&a, d).unwrap());
            prop_assert!(d.has_zero_row_sums());
        }
        prop_assert!(check_support_pattern(&a, &space));
        let weights: Vec<Rational> = coeffs[..space.dim_space()].iter().map(|&c| ratio(c, 1)).collect();
        let combination = LinearMap::combination(a.dim(), &space.basis, &weights);
        prop_assert!(verify_derivation(&a, &combination).unwrap());
    }

    #[test]
    fn maps_outside_the_span_fail(a in algebra(2..=5), entries in prop::collection::vec(-3i64..=3, 25)) {
        let m = a.dim();
        let flat: Vec<Rational> = entries[..m * m].iter().map(|&e| Rational::from_integer(BigInt::from(e))).collect();
        let map = LinearMap::from_flat(m, &flat);
        let space = derivation_space(&a).unwrap();
        prop_assert_eq!(verify_derivation(&a, &map).unwrap(), space.contains(&map));
    }
}
