use proptest::prelude::*;

use superharm::actions::{dot, hermitian_form, odot};
use superharm::groups::act;
use superharm::random::SuperRng;
use superharm::scalars::rat;
use superharm::supergebra::{inv_count, subset_degree};
use superharm::{Cyclotomic, Flavor, ReflectionGroup};

const CONDUCTORS: [u32; 6] = [1, 3, 4, 5, 8, 12];

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(CONDUCTORS.to_vec()), prop::collection::vec((-5i64..=5, 1i64..=4), 12))
        .prop_map(|(m, raw)| Cyclotomic::from_coeffs(m, raw.into_iter().map(|(a, b)| rat(a, b)).collect()))
}

/// Three elements of one field.
fn triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(|m| {
        let elt = prop::collection::vec(-4i64..=4, 12)
            .prop_map(move |v| Cyclotomic::from_coeffs(m, v.into_iter().map(|a| rat(a, 1)).collect()));
        (elt.clone(), elt.clone(), elt)
    })
}

proptest! {
    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism((a, b, _c) in triple()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn lifting_is_a_homomorphism(a in cyclotomic()) {
        let m = a.conductor();
        let big = a.lift(m * 2).unwrap();
        prop_assert_eq!(big.pow(3), a.pow(3).lift(m * 2).unwrap());
    }

    #[test]
    fn inv_count_complement(i in 0u32..256, j in 0u32..256) {
        prop_assert_eq!(inv_count(i, j) + inv_count(i, 255 & !j), subset_degree(i));
    }

    #[test]
    fn product_is_associative(seed in any::<u64>()) {
        let mut r = SuperRng::new(seed, 3, 3);
        let (f, g, h) = (
            r.superpoly(Flavor::DualExterior, 2, false),
            r.superpoly(Flavor::DualExterior, 2, false),
            r.superpoly(Flavor::DualExterior, 2, false),
        );
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn theta_derivative_is_a_graded_derivation(seed in any::<u64>(), i in 1usize..=3) {
        let mut r = SuperRng::new(seed, 3, 1);
        let b = r.bidegree(2);
        let f = r.bihomogeneous(Flavor::DualExterior, b, 3, true);
        let g = r.superpoly(Flavor::DualExterior, 2, true);
        let second = &f * &g.partial_theta(i).unwrap();
        let second = if b.tdeg % 2 == 1 { -second } else { second };
        prop_assert_eq!(
            (&f * &g).partial_theta(i).unwrap(),
            &(&f.partial_theta(i).unwrap() * &g) + &second
        );
    }

    #[test]
    fn hermitian_form_is_conjugate_symmetric(seed in any::<u64>()) {
        let mut r = SuperRng::new(seed, 2, 4);
        let (f, g) = (r.superpoly(Flavor::DualExterior, 3, false), r.superpoly(Flavor::DualExterior, 3, false));
        prop_assert_eq!(hermitian_form(&f, &g).unwrap(), hermitian_form(&g, &f).unwrap().conj());
    }

    #[test]
    fn dot_and_odot_are_equivariant(seed in any::<u64>(), k in 0usize..18) {
        let g = ReflectionGroup::builtin("G-3-1-2").unwrap();
        let sigma = &g.elements()[k % g.order()];
        let mut r = SuperRng::new(seed, 2, 3);
        let f = r.superpoly(Flavor::DualExterior, 2, false);
        let h = r.superpoly(Flavor::DualExterior, 3, false);
        let hp = r.superpoly(Flavor::PrimalExterior, 3, false);
        prop_assert_eq!(sigma.act(&dot(&f, &h).unwrap()).unwrap(), dot(&sigma.act(&f).unwrap(), &sigma.act(&h).unwrap()).unwrap());
        prop_assert_eq!(sigma.act(&odot(&f, &hp).unwrap()).unwrap(), odot(&sigma.act(&f).unwrap(), &sigma.act(&hp).unwrap()).unwrap());
    }

    #[test]
    fn action_composes(seed in any::<u64>(), a in 0usize..8, b in 0usize..8) {
        let g = ReflectionGroup::builtin("B2").unwrap();
        let (s, t) = (&g.elements()[a], &g.elements()[b]);
        let mut r = SuperRng::new(seed, 2, 1);
        let flavor = r.flavor();
        let f = r.superpoly(flavor, 3, true);
        prop_assert_eq!(act(&s.matrix.mul(&t.matrix).unwrap(), &f).unwrap(), s.act(&t.act(&f).unwrap()).unwrap());
    }
}
