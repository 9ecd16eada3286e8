use halfspace_lab::arrangement::{combinatorially_equivalent, sign_equivalent, Arrangement};
use halfspace_lab::deformations::{coning, elementary_lift, face_count_report};
use halfspace_lab::derived::{same_open_face, Derived};
use halfspace_lab::exactla::{int_vec, ratio, RatMatrix};
use halfspace_lab::suites::u_ex;

#[test]
fn triangle_face_counts() {
    let u = u_ex();
    let a = int_vec(&[0, 1, 0, 1]);
    let r = face_count_report(&u, &a).unwrap();
    let central = Arrangement::linear(u.clone()).unwrap().sign_set().len();
    assert_eq!((r.f_a, r.f_cone, r.f_lift, central), (23, 59, 39, 13));
    assert_eq!(r.f_cone, 2 * r.f_a + central);
    assert_eq!(r.identities_hold, Some(false));
}

#[test]
fn coning_count_splits_over_the_far_hyperplane() {
    let u = RatMatrix::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]);
    for a in [int_vec(&[0, 0, 0]), int_vec(&[0, 0, 1]), int_vec(&[1, -1, 3])] {
        let r = face_count_report(&u, &a).unwrap();
        let central = Arrangement::linear(u.clone()).unwrap().sign_set().len();
        assert_eq!(r.f_cone, 2 * r.f_a + central);
    }
}

#[test]
fn opposite_offsets_give_mirrored_lifts() {
    let u = RatMatrix::from_ints(&[&[1], &[1]]);
    let a = int_vec(&[0, 1]);
    let neg = int_vec(&[0, -1]);
    assert!(!same_open_face(&u, &a, &neg).unwrap());
    let (la, lb) = (elementary_lift(&u, &a).unwrap().lift, elementary_lift(&u, &neg).unwrap().lift);
    assert_eq!(la.sign_set().len(), 9);
    assert!(sign_equivalent(&la, &lb).unwrap());
    // translations and conings still tell the two faces apart
    let (ca, cb) = (coning(&u, &a).unwrap().cone, coning(&u, &neg).unwrap().cone);
    assert!(!sign_equivalent(&ca, &cb).unwrap());
    let (ta, tb) = (Arrangement::new(u.clone(), a).unwrap(), Arrangement::new(u, neg).unwrap());
    assert!(!sign_equivalent(&ta, &tb).unwrap());
}

#[test]
fn lineality_lift_is_contained_in_every_lift() {
    let u = u_ex();
    let derived = Derived::new(&u).unwrap();
    let zero = u.mul_vec(&int_vec(&[2, -1]));
    assert!(derived.locate(&zero).unwrap().is_zero());
    let inner = elementary_lift(&u, &zero).unwrap().lift.sign_set();
    for b in [int_vec(&[0, 1, 0, 1]), int_vec(&[1, 0, 0, 0]), int_vec(&[0, -1, 2, 3])] {
        let outer = elementary_lift(&u, &b).unwrap().lift.sign_set();
        assert!(inner.is_subset(&outer));
    }
}

#[test]
fn translations_in_one_face_are_combinatorially_equivalent() {
    let u = u_ex();
    let a = int_vec(&[0, 1, 0, 1]);
    let b1 = vec![ratio(0, 1), ratio(3, 2), ratio(0, 1), ratio(1, 1)];
    let b2 = vec![ratio(0, 1), ratio(3, 4), ratio(0, 1), ratio(1, 1)];
    let arr = |x: &[_]| Arrangement::new(u.clone(), x.to_vec()).unwrap();
    assert!(same_open_face(&u, &a, &a).unwrap());
    assert!(!same_open_face(&u, &a, &b1).unwrap());
    assert!(!same_open_face(&u, &b1, &b2).unwrap());
    assert!(!combinatorially_equivalent(&arr(&a), &arr(&b1)).unwrap());
    let b3 = vec![ratio(0, 1), ratio(5, 2), ratio(0, 1), ratio(1, 1)];
    assert!(same_open_face(&u, &b1, &b3).unwrap());
    assert!(combinatorially_equivalent(&arr(&b1), &arr(&b3)).unwrap());
    let derived = Derived::new(&u).unwrap();
    assert!(derived.in_closed_face(&b1, &a).unwrap());
    assert!(!derived.in_closed_face(&a, &b1).unwrap());
}
