//! Parallel translations, conings and elementary lifts of `A_o`.
//!
//! The coned hyperplane of `<u_i, x> = a_i` is `<u_i, x> - a_i x_{n+1} = 0`,
//! so the slice `x_{n+1} = 1` reproduces `A_a` with its orientation. `K_0` is
//! always the last hyperplane.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, SignSet};
use crate::error::Error;
use crate::exactla::{Rat, RatMatrix, RatVector};
use crate::sign::{Sign, SignVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConedArrangement {
    pub base: Arrangement,
    pub cone: Arrangement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedArrangement {
    pub lift: Arrangement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCountReport {
    #[serde(rename = "fA")]
    pub f_a: usize,
    #[serde(rename = "fCone")]
    pub f_cone: usize,
    #[serde(rename = "fLift")]
    pub f_lift: usize,
    /// `None` when `A_a` has fewer than two distinct hyperplanes.
    pub identities_hold: Option<bool>,
}

pub fn parallel_translation(u: &RatMatrix, a: &[Rat]) -> Result<Arrangement, Error> {
    Arrangement::new(u.clone(), a.to_vec())
}

fn coned_rows(u: &RatMatrix, a: &[Rat]) -> Vec<RatVector> {
    (0..u.nrows())
        .map(|i| {
            let mut row = u.row(i).to_vec();
            row.push(-a[i].clone());
            row
        })
        .collect()
}

pub fn coning(u: &RatMatrix, a: &[Rat]) -> Result<ConedArrangement, Error> {
    let base = parallel_translation(u, a)?;
    let n = u.ncols();
    let mut rows = coned_rows(u, a);
    let mut k0 = vec![Rat::zero(); n + 1];
    k0[n] = Rat::one();
    rows.push(k0);
    let cone = Arrangement::linear(RatMatrix::from_rows_with_width(rows, n + 1))?;
    Ok(ConedArrangement { base, cone })
}

pub fn elementary_lift(u: &RatMatrix, a: &[Rat]) -> Result<LiftedArrangement, Error> {
    parallel_translation(u, a)?;
    let rows = coned_rows(u, a);
    let lift = Arrangement::linear(RatMatrix::from_rows_with_width(rows, u.ncols() + 1))?;
    Ok(LiftedArrangement { lift })
}

/// Sign set of the coning from the sign set of `A_a` and the sign set of the
/// central arrangement `A_o` (the faces inside `K_0`):
/// `{(s,+)} ∪ {(-s,-)} ∪ {(t,0) : t ∈ sign(A_o)}`.
pub fn transport_sign_coning(signs: &SignSet, at_infinity: &SignSet) -> Result<SignSet, Error> {
    let m = match signs.iter().next() {
        Some(s) => s.len(),
        None => return Err(Error::InconsistentInput("empty sign set".into())),
    };
    if signs.iter().chain(at_infinity).any(|s| s.len() != m) {
        return Err(Error::InconsistentInput("sign vectors of different lengths".into()));
    }
    if !at_infinity.contains(&SignVector::zeros(m)) {
        return Err(Error::InconsistentInput("central sign set lacks the zero vector".into()));
    }
    for t in at_infinity {
        if !at_infinity.contains(&t.neg()) {
            return Err(Error::InconsistentInput(format!("central sign set lacks -({t})")));
        }
        for s in signs {
            let moved = t.compose(s);
            if !signs.contains(&moved) {
                return Err(Error::InconsistentInput(format!(
                    "({t}) o ({s}) = ({moved}) is missing"
                )));
            }
        }
    }
    for i in 0..m {
        let crosses = at_infinity.iter().any(|t| t.get(i) != Sign::Zero);
        if crosses && !signs.iter().any(|s| s.get(i) == Sign::Zero) {
            return Err(Error::InconsistentInput(format!(
                "hyperplane {} carries no face",
                i + 1
            )));
        }
    }
    let mut out = SignSet::new();
    for s in signs {
        out.insert(s.pushed(Sign::Plus));
        out.insert(s.neg().pushed(Sign::Minus));
    }
    for t in at_infinity {
        out.insert(t.pushed(Sign::Zero));
    }
    Ok(out)
}

/// Restriction of coned sign vectors to the first `m` entries.
pub fn transport_sign_lift(cone_signs: &SignSet) -> SignSet {
    cone_signs
        .iter()
        .map(|s| SignVector(s.0[..s.len().saturating_sub(1)].to_vec()))
        .collect()
}

/// `sign(cA_a)` by transport from the sign sets of `A_a` and `A_o`.
pub fn coning_signs_by_transport(u: &RatMatrix, a: &[Rat]) -> Result<SignSet, Error> {
    let base = parallel_translation(u, a)?.sign_set();
    let central = Arrangement::linear(u.clone())?.sign_set();
    transport_sign_coning(&base, &central)
}

pub fn face_count_report(u: &RatMatrix, a: &[Rat]) -> Result<FaceCountReport, Error> {
    let base = parallel_translation(u, a)?;
    let f_a = base.sign_set().len();
    let f_cone = coning(u, a)?.cone.sign_set().len();
    let f_lift = elementary_lift(u, a)?.lift.sign_set().len();
    let identities_hold = (base.distinct_hyperplanes() >= 2)
        .then(|| f_cone == 2 * f_a + 3 && f_lift + 1 == 2 * f_a);
    Ok(FaceCountReport {
        f_a,
        f_cone,
        f_lift,
        identities_hold,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int_vec;
    use crate::sign::sv;

    fn line2() -> (RatMatrix, RatVector) {
        (RatMatrix::from_ints(&[&[1], &[1]]), int_vec(&[0, 1]))
    }

    #[test]
    fn constructions() {
        let (u, a) = line2();
        let c = coning(&u, &a).unwrap();
        assert_eq!(c.cone.m(), 3);
        assert_eq!(c.cone.u().row(2), int_vec(&[0, 1]).as_slice());
        assert_eq!(c.cone.u().row(1), int_vec(&[1, -1]).as_slice());
        let l = elementary_lift(&u, &a).unwrap();
        assert_eq!(l.lift.m(), 2);
        assert_eq!(l.lift.distinct_hyperplanes(), 2);
        let empty = coning(&RatMatrix::zeros(0, 2), &[]).unwrap();
        assert_eq!(empty.cone.m(), 1);
        assert_eq!(empty.cone.sign_set().len(), 3);
    }

    #[test]
    fn two_point_counts_and_region_signs() {
        let (u, a) = line2();
        let report = face_count_report(&u, &a).unwrap();
        assert_eq!(
            report,
            FaceCountReport {
                f_a: 5,
                f_cone: 13,
                f_lift: 9,
                identities_hold: Some(true)
            }
        );
        let cone = coning(&u, &a).unwrap().cone.sign_set();
        for s in ["--+", "+-+", "+++", "---", "-+-", "++-"] {
            assert!(cone.contains(&sv(s)), "{s}");
        }
        assert_eq!(coning_signs_by_transport(&u, &a).unwrap(), cone);
        assert_eq!(transport_sign_lift(&cone), elementary_lift(&u, &a).unwrap().lift.sign_set());
        assert_eq!(transport_sign_lift(&cone).len(), 9);
    }

    #[test]
    fn single_hyperplane_skips_identities() {
        let u = RatMatrix::from_ints(&[&[1, 0]]);
        let report = face_count_report(&u, &int_vec(&[0])).unwrap();
        assert_eq!(report.identities_hold, None);
        let cone = coning(&u, &int_vec(&[0])).unwrap().cone.sign_set();
        let expected: SignSet = ["0", "-", "+"].iter().map(|s| sv(s)).collect();
        assert_eq!(transport_sign_lift(&cone), expected);
    }

    #[test]
    fn general_rank_count_relation() {
        let u = RatMatrix::from_ints(&[&[-1, 0], &[0, 1], &[0, -1], &[1, 1]]);
        let a = int_vec(&[0, 1, 0, 1]);
        let report = face_count_report(&u, &a).unwrap();
        let central = Arrangement::linear(u.clone()).unwrap().sign_set().len();
        assert_eq!(report.f_cone, 2 * report.f_a + central);
        assert_eq!(report.identities_hold, Some(false));
    }

    #[test]
    fn transport_rejects_non_arrangement_input() {
        let signs: SignSet = ["-", "+"].iter().map(|s| sv(s)).collect();
        let central: SignSet = ["0", "-", "+"].iter().map(|s| sv(s)).collect();
        assert!(transport_sign_coning(&signs, &central).is_err());
        let no_zero: SignSet = ["-", "+"].iter().map(|s| sv(s)).collect();
        assert!(transport_sign_coning(&central, &no_zero).is_err());
    }
}
