//! Seeded generators for the property suites. Rationals have numerators in
//! `[-4, 4]` and denominators in `{1, 2, 3}` so zeros and concurrences show
//! up often.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::derived::Derived;
use crate::error::Error;
use crate::exactla::{add_vec, is_zero_vec, proportional, ratio, scale_vec, Rat, RatMatrix, RatVector};
use crate::feasibility::{Constraint, MixedSystem, Relation};
use crate::polyhedron::Role;
use crate::sign::Sign;

pub type SuiteRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rat(rng: &mut impl Rng) -> Rat {
    ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn small_vec(rng: &mut impl Rng, len: usize) -> RatVector {
    (0..len).map(|_| small_rat(rng)).collect()
}

pub fn nonzero_vec(rng: &mut impl Rng, len: usize) -> RatVector {
    assert!(len > 0);
    loop {
        let v = small_vec(rng, len);
        if !is_zero_vec(&v) {
            return v;
        }
    }
}

/// `m x n` with nonzero rows.
pub fn random_matrix(rng: &mut impl Rng, m: usize, n: usize) -> RatMatrix {
    RatMatrix::from_rows_with_width((0..m).map(|_| nonzero_vec(rng, n)).collect(), n)
}

/// `m x n` with no two proportional rows. Needs `n >= 2` once `m > 1`.
pub fn random_non_multi(rng: &mut impl Rng, m: usize, n: usize) -> RatMatrix {
    assert!(n >= 2 || m <= 1, "all directions in R^1 are proportional");
    let mut rows: Vec<RatVector> = Vec::with_capacity(m);
    while rows.len() < m {
        let v = nonzero_vec(rng, n);
        if rows.iter().all(|r| !proportional(r, &v)) {
            rows.push(v);
        }
    }
    RatMatrix::from_rows_with_width(rows, n)
}

/// Rows are nonzero multiples of a single random direction.
pub fn random_rank_one(rng: &mut impl Rng, m: usize, n: usize) -> RatMatrix {
    let base = nonzero_vec(rng, n);
    let rows = (0..m)
        .map(|_| {
            let mut s = small_rat(rng);
            while s.is_zero() {
                s = small_rat(rng);
            }
            scale_vec(&base, &s)
        })
        .collect();
    RatMatrix::from_rows_with_width(rows, n)
}

pub fn random_roles(rng: &mut impl Rng, m: usize) -> Vec<Role> {
    (0..m)
        .map(|_| match rng.gen_range(0..4) {
            0 => Role::Eq,
            1 | 2 => Role::Le,
            _ => Role::Ge,
        })
        .collect()
}

/// A point of the open derived face of `a`, different from `a` when the face
/// has positive dimension: `lambda a + U t` plus a small move along a random
/// direction of the face's linear span, kept only if it stays in the face.
pub fn same_face_point(rng: &mut impl Rng, derived: &Derived, u: &RatMatrix, a: &[Rat]) -> Result<RatVector, Error> {
    let sign = derived.locate(a)?;
    let lambda = ratio(rng.gen_range(1..=5), rng.gen_range(1..=3));
    let t = small_vec(rng, u.ncols());
    let mut b = add_vec(&scale_vec(a, &lambda), &u.mul_vec(&t));
    debug_assert_eq!(derived.locate(&b)?, sign);
    // the face spans the solutions of <c, x> = 0 over the circuits zero at a
    let zero_rows: Vec<RatVector> = derived
        .circuits()
        .iter()
        .zip(sign.iter())
        .filter(|(_, s)| *s == Sign::Zero)
        .map(|(c, _)| c.vector.clone())
        .collect();
    let m = a.len();
    let span = RatMatrix::from_rows_with_width(zero_rows, m).right_nullspace();
    if span.nrows() > 0 {
        let mut step = vec![Rat::zero(); m];
        for r in 0..span.nrows() {
            crate::exactla::add_scaled(&mut step, &small_rat(rng), span.row(r));
        }
        for shrink in [1i64, 8, 64, 512] {
            let candidate = add_vec(&b, &scale_vec(&step, &ratio(1, shrink)));
            if derived.locate(&candidate)? == sign {
                b = candidate;
                break;
            }
        }
    }
    Ok(b)
}

pub fn random_relation(rng: &mut impl Rng) -> Relation {
    *[Relation::Eq, Relation::Le, Relation::Lt, Relation::Ge, Relation::Gt]
        .choose(rng)
        .expect("nonempty")
}

/// Up to `max_rows` constraints in dimension `1..=max_n`.
pub fn random_system(rng: &mut impl Rng, max_n: usize, max_rows: usize) -> MixedSystem {
    let n = rng.gen_range(1..=max_n);
    let rows = rng.gen_range(1..=max_rows);
    let mut sys = MixedSystem::new(n);
    for _ in 0..rows {
        sys.push_constraint(Constraint::new(small_vec(rng, n), random_relation(rng), small_rat(rng)))
            .expect("matching width");
    }
    sys
}

pub fn random_permutation(rng: &mut impl Rng, m: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..m).collect();
    perm.shuffle(rng);
    perm
}

pub fn random_subset(rng: &mut impl Rng, m: usize) -> Vec<usize> {
    (0..m).filter(|_| rng.gen_bool(0.5)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::multi_pair;

    #[test]
    fn generators_are_deterministic() {
        let a = random_matrix(&mut rng_from_seed(3), 4, 2);
        let b = random_matrix(&mut rng_from_seed(3), 4, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn non_multi_and_rank_one() {
        let mut rng = rng_from_seed(11);
        for _ in 0..20 {
            assert!(multi_pair(&random_non_multi(&mut rng, 5, 3)).is_none());
            assert!(random_rank_one(&mut rng, 4, 3).rank() == 1);
        }
    }

    #[test]
    fn same_face_points_share_the_face() {
        let mut rng = rng_from_seed(5);
        for _ in 0..20 {
            let u = random_matrix(&mut rng, 4, 2);
            let derived = Derived::new(&u).unwrap();
            let a = small_vec(&mut rng, 4);
            let b = same_face_point(&mut rng, &derived, &u, &a).unwrap();
            assert!(derived.same_open_face(&a, &b).unwrap());
        }
    }
}
