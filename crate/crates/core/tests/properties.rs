//! Randomised algebraic laws for the Weyl algebra, its action on series,
//! lattices and semigroup membership.

use ahg_core::lattice::{rational_i64s, LatticeBasis};
use ahg_core::semigroup::resonance;
use ahg_core::series::{apply_operator, minimal_negative_support, starting_exponent, Series};
use ahg_core::weyl::Weyl;
use ahg_core::{Configuration, Integer, Rational};
use proptest::prelude::*;

const N: usize = 3;

fn term() -> impl Strategy<Value = (Vec<u32>, Vec<u32>, i64)> {
    (
        prop::collection::vec(0u32..3, N),
        prop::collection::vec(0u32..3, N),
        -4i64..=4,
    )
}

fn element() -> impl Strategy<Value = Weyl<Rational>> {
    prop::collection::vec(term(), 1..4).prop_map(|terms| {
        let mut e = Weyl::zero(N);
        for (alpha, m, c) in terms {
            e.add_term(alpha, m, Rational::from_integer(c.into()));
        }
        e
    })
}

fn four_column() -> Configuration {
    Configuration::from_rows(&[&[1, 1, 1, 1], &[0, 0, 1, 2], &[0, 1, 1, 0]]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_product_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn weyl_product_distributes(a in element(), b in element(), c in element()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&b).mul(&c), a.mul(&c).add(&b.mul(&c)));
    }

    #[test]
    fn series_action_is_a_module_action(
        a in element(),
        b in element(),
        w in prop::collection::vec((-9i64..=9, 2i64..=5), N),
    ) {
        let w: Vec<Rational> = w.iter().map(|&(p, q)| Rational::new(p.into(), q.into())).collect();
        let x = Series::monomial(w, 100);
        let lhs = apply_operator(&a.mul(&b), &x);
        let rhs = apply_operator(&a, &apply_operator(&b, &x));
        prop_assert_eq!(lhs.terms, rhs.terms);
    }

    #[test]
    fn integer_combinations_are_lattice_members(
        gens in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..4),
        coeffs in prop::collection::vec(-3i64..=3, 4),
    ) {
        let big: Vec<Vec<Integer>> = gens.iter().map(|g| g.iter().map(|&x| Integer::from(x)).collect()).collect();
        let lattice = LatticeBasis::from_generators(3, &big);
        let point: Vec<i64> = (0..3)
            .map(|i| gens.iter().zip(&coeffs).map(|(g, c)| g[i] * c).sum())
            .collect();
        prop_assert!(lattice.member(&rational_i64s(&point)).is_some());
    }

    #[test]
    fn images_of_natural_vectors_lie_in_the_semigroup(u in prop::collection::vec(0i64..=4, 4)) {
        let c = four_column();
        let gamma = rational_i64s(&c.apply(&u));
        let found = c.in_na(&gamma).unwrap();
        prop_assert!(found.is_some());
        let cert: Vec<i64> = found.unwrap().iter().map(|&x| x as i64).collect();
        prop_assert_eq!(c.apply(&cert), c.apply(&u));
    }

    #[test]
    fn starting_exponents_solve_the_euler_system(b in prop::collection::vec(-6i64..=6, 3)) {
        let c = four_column();
        let beta = rational_i64s(&b);
        let v = starting_exponent(&c, &beta).unwrap();
        let image: Vec<Rational> = (0..3)
            .map(|i| (0..4).map(|j| Rational::from_integer(c.column(j)[i].into()) * &v[j]).sum())
            .collect();
        prop_assert_eq!(image, beta.clone());
        prop_assert!(minimal_negative_support(&c, &v).unwrap().minimal);
        let r = resonance(&c, &beta).unwrap();
        prop_assert_eq!(r.facets.len(), c.facets().len());
        prop_assert!(!r.nonresonant || r.semi_nonresonant);
    }
}
