//! Property tests for the algebraic invariants: ring axioms, exact-division
//! round trips, substitution homomorphism, canonical-form round trips,
//! mutation-rule structure, and the two vacancy-number formulas.

use num_bigint::BigInt;
use proptest::prelude::*;

use qbelt::algebra::{LaurentPoly, VarSet};
use qbelt::cluster::{check_skew_symmetric, mutate_b};
use qbelt::counting::{vacancy, vacancy_simplified, MConfig, NVector};
use qbelt::lie::supported_types;
use qbelt::CartanData;

fn arb_poly(nvars: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    let vars = VarSet::indexed("t", nvars);
    prop::collection::vec(
        (prop::collection::vec(-4i64..=4, nvars), -9i64..=9),
        0..=max_terms,
    )
    .prop_map(move |raw| {
        LaurentPoly::from_terms(
            vars.clone(),
            raw.into_iter().map(|(exps, c)| (exps, BigInt::from(c))),
        )
    })
}

fn arb_skew(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
            let mut b = vec![vec![0i64; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let e = it.next().unwrap();
                    b[i][j] = e;
                    b[j][i] = -e;
                }
            }
            b
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in arb_poly(3, 5), b in arb_poly(3, 5), c in arb_poly(3, 5)) {
        let ab_c = a.add(&b).unwrap().add(&c).unwrap();
        let a_bc = a.add(&b.add(&c).unwrap()).unwrap();
        prop_assert_eq!(&ab_c, &a_bc);

        let left = a.mul(&b.add(&c).unwrap()).unwrap();
        let right = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);

        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
    }

    #[test]
    fn exact_div_round_trip(q in arb_poly(3, 4), den in arb_poly(3, 4)) {
        prop_assume!(!den.is_zero());
        let num = q.mul(&den).unwrap();
        let recovered = num.exact_div(&den).unwrap();
        prop_assert_eq!(&recovered, &q);
        prop_assert_eq!(recovered.mul(&den).unwrap(), num);
    }

    #[test]
    fn division_never_fabricates(num in arb_poly(2, 5), den in arb_poly(2, 3)) {
        prop_assume!(!den.is_zero());
        if let Ok(q) = num.exact_div(&den) {
            prop_assert_eq!(q.mul(&den).unwrap(), num);
        }
    }

    #[test]
    fn specialize_is_a_homomorphism(a in arb_poly(3, 4), b in arb_poly(3, 4), value in -3i64..=3) {
        prop_assume!(value != 0);
        let vars = a.vars().clone();
        let c = LaurentPoly::constant(vars, value);
        let fa = a.specialize(&[("t1", c.clone())]);
        let fb = b.specialize(&[("t1", c.clone())]);
        if let (Ok(fa), Ok(fb)) = (fa, fb) {
            let fab = a.mul(&b).unwrap().specialize(&[("t1", c)]).unwrap();
            prop_assert_eq!(fab, fa.mul(&fb).unwrap());
        }
    }

    #[test]
    fn canonical_text_round_trip(p in arb_poly(3, 6)) {
        let text = p.to_string();
        let back = LaurentPoly::parse(p.vars(), &text).unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn b_mutation_preserves_skew_symmetry(b in arb_skew(8), k_raw in 1usize..=8) {
        let n = b.len();
        let k = (k_raw - 1) % n + 1;
        let mutated = mutate_b(&b, k).unwrap();
        prop_assert!(check_skew_symmetric(&mutated).is_ok());
        // and the rule is involutive
        prop_assert_eq!(mutate_b(&mutated, k).unwrap(), b);
    }

    #[test]
    fn b_mutations_commute_on_zero_entries(b in arb_skew(6)) {
        let n = b.len();
        for i in 1..=n {
            for j in i + 1..=n {
                if b[i - 1][j - 1] != 0 {
                    continue;
                }
                let ij = mutate_b(&mutate_b(&b, i).unwrap(), j).unwrap();
                let ji = mutate_b(&mutate_b(&b, j).unwrap(), i).unwrap();
                prop_assert_eq!(ij, ji, "directions {} and {}", i, j);
            }
        }
    }
}

// Both positivity-filter conventions keep M = N on a small exhaustive sweep;
// the data at desk scale does not separate them.
#[test]
fn both_positivity_conventions_agree_with_n() {
    use qbelt::counting::{all_n_vectors, count, dominant_weights, PositivityConvention};
    use qbelt::DynkinType;
    for (name, bound) in [("A1", 6usize), ("A2", 4), ("D4", 3)] {
        let cartan = CartanData::new(DynkinType::parse(name).unwrap());
        for n in all_n_vectors(cartan.rank(), bound) {
            for lambda in dominant_weights(&cartan, &n) {
                for convention in [PositivityConvention::Support, PositivityConvention::Cutoff] {
                    let report = count(&cartan, &n, &lambda, convention).unwrap();
                    assert_eq!(report.m_sum, report.n_sum, "{name} {convention:?}");
                }
            }
        }
    }
}

// Laurent phenomenon on generic tree branches: every mutation sequence at
// tractable depth divides exactly (deeper sequences leave desk scale; the
// belt-walk suite covers length 6).
#[test]
fn exhaustive_generic_walks_divide_exactly() {
    use qbelt::belt::exhaustive_tree_walks;
    use qbelt::DynkinType;
    assert_eq!(exhaustive_tree_walks(DynkinType::parse("A1").unwrap(), 6).unwrap(), 64);
    assert_eq!(exhaustive_tree_walks(DynkinType::parse("A2").unwrap(), 4).unwrap(), 256);
    assert_eq!(exhaustive_tree_walks(DynkinType::parse("A3").unwrap(), 4).unwrap(), 1296);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn vacancy_formulas_agree(
        type_idx in 0usize..7,
        n_raw in prop::collection::vec((1usize..=8, 1usize..=5, 0u64..=3), 0..=4),
        m_raw in prop::collection::vec((1usize..=8, 1usize..=5, 0u64..=3), 0..=4),
    ) {
        let types = supported_types(6);
        let dynkin = types[type_idx % types.len()];
        let cartan = CartanData::new(dynkin);
        let rank = dynkin.rank();
        let clamp = |raw: Vec<(usize, usize, u64)>| {
            raw.into_iter().map(|(a, i, c)| ((a - 1) % rank + 1, i, c)).collect::<Vec<_>>()
        };
        let n = NVector::from_pairs(clamp(n_raw)).unwrap();
        let m = MConfig::from_pairs(clamp(m_raw)).unwrap();
        for alpha in 1..=rank {
            for i in 1..=6 {
                prop_assert_eq!(
                    vacancy(&cartan, &n, &m, alpha, i).unwrap(),
                    vacancy_simplified(&cartan, &n, &m, alpha, i).unwrap()
                );
            }
        }
    }
}
