//! The Sign and Face operators between unions of open derived faces and sets
//! of sign vectors.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::arrangement::{Arrangement, SignSet};
use crate::deformations::{coning, elementary_lift};
use crate::derived::{Derived, DerivedFaceRef};
use crate::error::Error;
use crate::exactla::{Rat, RatMatrix};
use crate::feasibility::{realizable_sign_patterns, SignMask};
use crate::sign::SignVector;

/// Indices into [`OperatorContext::faces`].
pub type FaceSubset = BTreeSet<usize>;

/// Which sign set stands for an offset `a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignKind {
    Translation,
    Coning,
    Lift,
}

pub fn sign_set_of(u: &RatMatrix, a: &[Rat], kind: SignKind) -> Result<SignSet, Error> {
    Ok(match kind {
        SignKind::Translation => Arrangement::new(u.clone(), a.to_vec())?.sign_set(),
        SignKind::Coning => coning(u, a)?.cone.sign_set(),
        SignKind::Lift => elementary_lift(u, a)?.lift.sign_set(),
    })
}

/// Open faces of the derived arrangement with their sign sets, computed once
/// per face from the exact representative.
#[derive(Clone, Debug)]
pub struct OperatorContext {
    derived: Derived,
    faces: Vec<DerivedFaceRef>,
    sign_sets: Vec<SignSet>,
}

impl OperatorContext {
    pub fn new(u: &RatMatrix, kind: SignKind) -> Result<Self, Error> {
        let derived = Derived::new(u)?;
        let faces = derived.faces()?;
        let sign_sets = faces
            .iter()
            .map(|f| sign_set_of(u, &f.representative, kind))
            .collect::<Result<_, _>>()?;
        Ok(Self {
            derived,
            faces,
            sign_sets,
        })
    }

    pub fn derived(&self) -> &Derived {
        &self.derived
    }

    pub fn faces(&self) -> &[DerivedFaceRef] {
        &self.faces
    }

    pub fn sign_set(&self, face: usize) -> &SignSet {
        &self.sign_sets[face]
    }

    pub fn all_faces(&self) -> FaceSubset {
        (0..self.faces.len()).collect()
    }

    /// Index of the open face with the given derived sign.
    pub fn face_index(&self, sign: &SignVector) -> Option<usize> {
        self.faces.iter().position(|f| &f.sign == sign)
    }

    /// Union of the sign sets over the faces in `subset`.
    pub fn sign_operator(&self, subset: &FaceSubset) -> Result<SignSet, Error> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut out = SignSet::new();
        for &f in subset {
            out.extend(self.sign_sets[f].iter().cloned());
        }
        Ok(out)
    }

    /// Faces whose sign set contains `s`.
    pub fn face_operator(&self, s: &SignVector) -> FaceSubset {
        (0..self.faces.len())
            .filter(|&f| self.sign_sets[f].contains(s))
            .collect()
    }

    /// Intersection of [`Self::face_operator`] over `set`; all faces when empty.
    pub fn face_operator_set(&self, set: &SignSet) -> FaceSubset {
        (0..self.faces.len())
            .filter(|&f| set.iter().all(|s| self.sign_sets[f].contains(s)))
            .collect()
    }

    pub fn fixed_point_check(&self, subset: &FaceSubset) -> Result<bool, Error> {
        Ok(self.face_operator_set(&self.sign_operator(subset)?) == *subset)
    }
}

/// Whether every open face of `candidate` (an arrangement in `R^m`) is a
/// fixed point of `Face ∘ Sign`. Faces of the common refinement with the
/// derived arrangement decide which derived faces each candidate face meets.
/// Desk scale only.
pub fn is_derived_by_fixed_points(ctx: &OperatorContext, candidate: &Arrangement) -> Result<bool, Error> {
    let derived = ctx.derived.arrangement();
    if candidate.n() != derived.n() {
        return Err(Error::DimensionMismatch {
            expected: derived.n(),
            found: candidate.n(),
        });
    }
    let mut rows = candidate.u().rows().to_vec();
    rows.extend(derived.u().rows().iter().cloned());
    let mut offsets = candidate.a().to_vec();
    offsets.extend(derived.a().iter().cloned());
    let mc = candidate.m();
    let masks = vec![SignMask::ALL; rows.len()];
    let mut meets: BTreeMap<SignVector, FaceSubset> = BTreeMap::new();
    let mut owner: BTreeMap<usize, BTreeSet<SignVector>> = BTreeMap::new();
    for (sign, _) in realizable_sign_patterns(derived.n(), &rows, &offsets, &masks) {
        let cand = SignVector(sign.0[..mc].to_vec());
        let der = SignVector(sign.0[mc..].to_vec());
        let idx = ctx
            .face_index(&der)
            .expect("refinement produced an unknown derived face");
        meets.entry(cand.clone()).or_default().insert(idx);
        owner.entry(idx).or_default().insert(cand);
    }
    for (cand, touched) in &meets {
        let image = ctx.face_operator_set(&ctx.sign_operator(touched)?);
        let exact = image == *touched
            && image
                .iter()
                .all(|d| owner[d].len() == 1 && owner[d].contains(cand));
        if !exact {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::int_vec;
    use crate::sign::sv;

    fn u_ex() -> RatMatrix {
        RatMatrix::from_ints(&[&[-1, 0], &[0, 1], &[0, -1], &[1, 1]])
    }

    #[test]
    fn singletons_are_fixed_points() {
        let ctx = OperatorContext::new(&u_ex(), SignKind::Translation).unwrap();
        assert_eq!(ctx.faces().len(), 13);
        for f in 0..ctx.faces().len() {
            assert!(ctx.fixed_point_check(&FaceSubset::from([f])).unwrap());
        }
        assert!(!ctx.fixed_point_check(&FaceSubset::from([0, 1])).unwrap());
        assert!(!ctx.fixed_point_check(&ctx.all_faces()).unwrap());
        assert_eq!(ctx.sign_operator(&FaceSubset::new()), Err(Error::EmptySubset));
        assert_eq!(ctx.face_operator_set(&SignSet::new()), ctx.all_faces());
    }

    #[test]
    fn triangle_interior_sign() {
        let ctx = OperatorContext::new(&u_ex(), SignKind::Translation).unwrap();
        let a = ctx.face_index(&ctx.derived().locate(&int_vec(&[0, 1, 0, 1])).unwrap()).unwrap();
        assert!(ctx.face_operator(&sv("----")).contains(&a));
        assert_eq!(
            ctx.sign_operator(&FaceSubset::from([a])).unwrap(),
            Arrangement::new(u_ex(), int_vec(&[0, 1, 0, 1])).unwrap().sign_set()
        );
    }

    #[test]
    fn derived_arrangement_passes_candidate_check() {
        let ctx = OperatorContext::new(&u_ex(), SignKind::Translation).unwrap();
        assert!(is_derived_by_fixed_points(&ctx, &ctx.derived().arrangement()).unwrap());
        // dropping a hyperplane merges faces
        let coarse = Arrangement::linear(RatMatrix::from_rows(vec![int_vec(&[0, 1, 1, 0])])).unwrap();
        assert!(!is_derived_by_fixed_points(&ctx, &coarse).unwrap());
    }
}
