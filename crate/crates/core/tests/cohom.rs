mod common;

use cocert_core::cohom::{coboundary_class, coboundary_matrix, cocycle_constraints, h1, ExpCocycle, PresentationAction};
use cocert_core::groups::ambient::symplectic_form;
use cocert_core::groups::{Registry, Word};
use cocert_core::{IntMatrix, IntVector};

use num_rational::BigRational;
use proptest::prelude::*;

fn registry_actions() -> Vec<(String, PresentationAction)> {
    let reg = Registry::bundled();
    let mut ids: Vec<String> = reg.presentation_ids().into_iter().map(String::from).collect();
    ids.extend(["steinberg-gl(3)", "affine-gl(2)"].map(String::from));
    ids.into_iter()
        .map(|id| {
            let p = reg.presentation(&id).unwrap();
            (id, PresentationAction::from_presentation(&p).unwrap())
        })
        .collect()
}

#[test]
fn coboundaries_are_cocycles() {
    for (id, pa) in registry_actions() {
        let c = cocycle_constraints(&pa).unwrap();
        let b = coboundary_matrix(&pa).unwrap();
        assert!(c.try_mul(&b).unwrap().is_zero(), "{id}");
        for v in h1(&pa).unwrap().b1_generators {
            assert!(c.mul_vec(&v).unwrap().is_zero(), "{id}");
        }
    }
}

proptest! {
    #![proptest_config(common::config(40))]

    #[test]
    fn h1_is_invariant_under_relator_moves(
        perm in any::<u64>(),
        flips in prop::collection::vec(any::<bool>(), 64),
    ) {
        for (id, pa) in registry_actions() {
            let mut rels: Vec<Word> = pa.relators.clone();
            let n = rels.len();
            if n > 1 {
                rels.rotate_left((perm as usize) % n);
                rels.swap(0, (perm as usize / 7) % n);
            }
            for (r, &f) in rels.iter_mut().zip(&flips) {
                if f {
                    *r = r.inverse();
                }
            }
            let moved = PresentationAction::new(pa.generators.clone(), rels, pa.action.clone()).unwrap();
            let (a, b) = (h1(&pa).unwrap(), h1(&moved).unwrap());
            prop_assert_eq!((a.torsion, a.free_rank), (b.torsion, b.free_rank), "{}", id);
        }
    }
}

fn vector(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..=50, n)
}

proptest! {
    #![proptest_config(common::config(500))]

    #[test]
    fn cocycle_exponent_is_bilinear(x in vector(6), y in vector(6), z in vector(6), p in -7i64..=7, q in 1i64..=9) {
        let c = ExpCocycle::new(symplectic_form(3), BigRational::new(p.into(), q.into())).unwrap();
        let (x, y, z) = (IntVector::from_i64(&x), IntVector::from_i64(&y), IntVector::from_i64(&z));
        let lhs = c.exponent(&x, &y.add(&z)).unwrap();
        prop_assert_eq!(lhs, c.exponent(&x, &y).unwrap() + c.exponent(&x, &z).unwrap());
        let lhs = c.exponent(&x.add(&y), &z).unwrap();
        prop_assert_eq!(lhs, c.exponent(&x, &z).unwrap() + c.exponent(&y, &z).unwrap());
    }
}

proptest! {
    #![proptest_config(common::config(200))]

    #[test]
    fn standard_form_classes_are_periodic_in_the_angle(p in -40i64..=40, q in 1i64..=12, n in 1usize..=3) {
        let form = symplectic_form(n);
        let r = BigRational::new(p.into(), q.into());
        let a = coboundary_class(&ExpCocycle::new(form.clone(), r.clone()).unwrap());
        let b = coboundary_class(&ExpCocycle::new(form, r + BigRational::from_integer(1.into())).unwrap());
        prop_assert_eq!(&a.content, "2");
        prop_assert_eq!(a.class, b.class);
        prop_assert_eq!(a.conjugate, b.conjugate);
    }
}

#[test]
fn elementary_matrices_satisfy_the_steinberg_commutator() {
    for n in [3usize, 4, 5] {
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    for m in -10..=10 {
                        assert!(cocert_core::cohom::verify_steinberg_commutator(n, i, j, k, m).unwrap());
                    }
                }
            }
        }
    }
    // elementary matrices sharing a column commute
    let a = IntMatrix::elementary(3, 0, 1, &2.into());
    let b = IntMatrix::elementary(3, 2, 1, &1.into());
    assert!(IntMatrix::commutator(&a, &b).unwrap().is_identity());
}
