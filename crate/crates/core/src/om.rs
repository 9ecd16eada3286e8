//! Covector systems: axiom checks, affine restriction and equivalence up to
//! relabeling and reorientation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arrangement::SignSet;
use crate::error::Error;
use crate::sign::{Sign, SignVector};

/// Largest ground set accepted by the symmetry search.
pub const MAX_SYMMETRY_GROUND: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CovectorSystem {
    m: usize,
    covectors: SignSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axiom {
    Zero,
    Symmetry,
    Composition,
    Elimination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomReport {
    Ok,
    Violation {
        axiom: Axiom,
        witnesses: Vec<SignVector>,
        element: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SymmetryMode {
    RelabelOnly,
    RelabelAndReorient,
}

/// Maps `X` to `Y` with `Y_i = X_{perm[i]}`, negated for `i` in
/// `reorientation`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symmetry {
    pub perm: Vec<usize>,
    pub reorientation: Vec<usize>,
}

impl Symmetry {
    pub fn identity(m: usize) -> Self {
        Self {
            perm: (0..m).collect(),
            reorientation: Vec::new(),
        }
    }

    pub fn apply(&self, x: &SignVector) -> SignVector {
        x.relabel(&self.perm).reorient(&self.reorientation)
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let perm: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        let set: Vec<String> = self.reorientation.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "pi = ({}), S = {{{}}}", perm.join(" "), set.join(","))
    }
}

impl CovectorSystem {
    pub fn new(m: usize, covectors: SignSet) -> Result<Self, Error> {
        if let Some(bad) = covectors.iter().find(|c| c.len() != m) {
            return Err(Error::SizeMismatch(m, bad.len()));
        }
        Ok(Self { m, covectors })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn covectors(&self) -> &SignSet {
        &self.covectors
    }

    pub fn len(&self) -> usize {
        self.covectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covectors.is_empty()
    }

    pub fn transform(&self, sym: &Symmetry) -> Self {
        Self {
            m: self.m,
            covectors: self.covectors.iter().map(|x| sym.apply(x)).collect(),
        }
    }
}

/// Checks the zero, symmetry, composition and elimination axioms in that
/// order, scanning covectors in canonical order; the first failure is
/// reported.
pub fn check_covector_axioms(l: &CovectorSystem) -> AxiomReport {
    let set = &l.covectors;
    if !set.contains(&SignVector::zeros(l.m)) {
        return AxiomReport::Violation {
            axiom: Axiom::Zero,
            witnesses: Vec::new(),
            element: None,
        };
    }
    for x in set {
        if !set.contains(&x.neg()) {
            return AxiomReport::Violation {
                axiom: Axiom::Symmetry,
                witnesses: vec![x.clone()],
                element: None,
            };
        }
    }
    for x in set {
        for y in set {
            if !set.contains(&x.compose(y)) {
                return AxiomReport::Violation {
                    axiom: Axiom::Composition,
                    witnesses: vec![x.clone(), y.clone()],
                    element: None,
                };
            }
        }
    }
    for x in set {
        for y in set {
            let sep = x.separation(y);
            if sep.is_empty() {
                continue;
            }
            let xy = x.compose(y);
            for &e in &sep {
                if !elimination_exists(set, &xy, &sep, e) {
                    return AxiomReport::Violation {
                        axiom: Axiom::Elimination,
                        witnesses: vec![x.clone(), y.clone()],
                        element: Some(e),
                    };
                }
            }
        }
    }
    AxiomReport::Ok
}

/// Some `Z` with `Z_e = 0` and `Z_f = xy_f` off the separation set. The
/// remaining entries are enumerated and looked up.
fn elimination_exists(set: &SignSet, xy: &SignVector, sep: &[usize], e: usize) -> bool {
    let free: Vec<usize> = sep.iter().copied().filter(|&f| f != e).collect();
    let mut z = xy.clone();
    z.0[e] = Sign::Zero;
    let total = 3usize.pow(free.len() as u32);
    (0..total).any(|code| {
        let mut c = code;
        for &f in &free {
            z.0[f] = Sign::ALL[c % 3];
            c /= 3;
        }
        set.contains(&z)
    })
}

/// `{X restricted to E \ g : X in L, X_g = +}`.
pub fn affine_covectors(l: &CovectorSystem, g: usize) -> Result<CovectorSystem, Error> {
    if g >= l.m {
        return Err(Error::SizeMismatch(l.m, g + 1));
    }
    if l.covectors.iter().all(|x| x.get(g) == Sign::Zero) {
        return Err(Error::Loop(g));
    }
    let keep: Vec<usize> = (0..l.m).filter(|&i| i != g).collect();
    let covectors = l
        .covectors
        .iter()
        .filter(|x| x.get(g) == Sign::Plus)
        .map(|x| x.restrict(&keep))
        .collect();
    CovectorSystem::new(l.m - 1, covectors)
}

pub fn om_equivalent(l1: &CovectorSystem, l2: &CovectorSystem) -> Result<bool, Error> {
    if l1.m != l2.m {
        return Err(Error::SizeMismatch(l1.m, l2.m));
    }
    Ok(l1.covectors == l2.covectors)
}

/// First symmetry carrying `l1` onto `l2`, in the order of the search:
/// `perm[0]`, its negation flag, `perm[1]`, ... each ascending, "keep"
/// before "negate".
pub fn om_equivalent_up_to_symmetry(
    l1: &CovectorSystem,
    l2: &CovectorSystem,
    mode: SymmetryMode,
) -> Result<Option<Symmetry>, Error> {
    let mut found = None;
    symmetry_search(l1, l2, mode, &mut |s| {
        found = Some(s.clone());
        false
    })?;
    Ok(found)
}

/// Every symmetry carrying `l1` onto `l2`, in search order.
pub fn all_symmetries(
    l1: &CovectorSystem,
    l2: &CovectorSystem,
    mode: SymmetryMode,
) -> Result<Vec<Symmetry>, Error> {
    let mut all = Vec::new();
    symmetry_search(l1, l2, mode, &mut |s| {
        all.push(s.clone());
        true
    })?;
    Ok(all)
}

fn symmetry_search(
    l1: &CovectorSystem,
    l2: &CovectorSystem,
    mode: SymmetryMode,
    emit: &mut dyn FnMut(&Symmetry) -> bool,
) -> Result<(), Error> {
    if l1.m != l2.m {
        return Err(Error::SizeMismatch(l1.m, l2.m));
    }
    if l1.m > MAX_SYMMETRY_GROUND {
        return Err(Error::DeskScaleExceeded(format!(
            "ground set of size {} (limit {MAX_SYMMETRY_GROUND})",
            l1.m
        )));
    }
    if l1.len() != l2.len() {
        return Ok(());
    }
    let source: Vec<&SignVector> = l1.covectors.iter().collect();
    let target: Vec<&SignVector> = l2.covectors.iter().collect();
    let mut state = SymmetryState {
        source,
        target,
        mode,
        perm: Vec::new(),
        negate: Vec::new(),
        used: vec![false; l1.m],
    };
    state.extend(emit);
    Ok(())
}

struct SymmetryState<'a> {
    source: Vec<&'a SignVector>,
    target: Vec<&'a SignVector>,
    mode: SymmetryMode,
    perm: Vec<usize>,
    negate: Vec<bool>,
    used: Vec<bool>,
}

impl SymmetryState<'_> {
    fn prefix_images_match(&self) -> bool {
        let d = self.perm.len();
        let mut lhs: Vec<Vec<Sign>> = self
            .source
            .iter()
            .map(|x| {
                (0..d)
                    .map(|i| {
                        let s = x.get(self.perm[i]);
                        if self.negate[i] {
                            s.neg()
                        } else {
                            s
                        }
                    })
                    .collect()
            })
            .collect();
        let mut rhs: Vec<Vec<Sign>> = self.target.iter().map(|y| y.0[..d].to_vec()).collect();
        lhs.sort_unstable();
        lhs.dedup();
        rhs.sort_unstable();
        rhs.dedup();
        lhs == rhs
    }

    /// Returns false once `emit` asks to stop.
    fn extend(&mut self, emit: &mut dyn FnMut(&Symmetry) -> bool) -> bool {
        let m = self.used.len();
        if self.perm.len() == m {
            let sym = Symmetry {
                perm: self.perm.clone(),
                reorientation: (0..m).filter(|&i| self.negate[i]).collect(),
            };
            return emit(&sym);
        }
        let flags: &[bool] = match self.mode {
            SymmetryMode::RelabelOnly => &[false],
            SymmetryMode::RelabelAndReorient => &[false, true],
        };
        for j in 0..m {
            if self.used[j] {
                continue;
            }
            for &neg in flags {
                self.perm.push(j);
                self.negate.push(neg);
                self.used[j] = true;
                let keep_going = !self.prefix_images_match() || self.extend(emit);
                self.used[j] = false;
                self.negate.pop();
                self.perm.pop();
                if !keep_going {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Arrangement;
    use crate::exactla::{int_vec, RatMatrix};
    use crate::sign::sv;

    fn system(signs: &[&str]) -> CovectorSystem {
        let set: SignSet = signs.iter().map(|s| sv(s)).collect();
        let m = set.iter().next().map_or(0, |s| s.len());
        CovectorSystem::new(m, set).unwrap()
    }

    fn of(arr: &Arrangement) -> CovectorSystem {
        CovectorSystem::new(arr.m(), arr.sign_set()).unwrap()
    }

    #[test]
    fn axioms() {
        let central = Arrangement::linear(RatMatrix::from_ints(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(check_covector_axioms(&of(&central)), AxiomReport::Ok);
        assert_eq!(check_covector_axioms(&system(&["00"])), AxiomReport::Ok);
        assert!(matches!(
            check_covector_axioms(&system(&["00", "+0"])),
            AxiomReport::Violation { axiom: Axiom::Symmetry, .. }
        ));
        assert!(matches!(
            check_covector_axioms(&system(&["+0", "-0"])),
            AxiomReport::Violation { axiom: Axiom::Zero, .. }
        ));
        // two points on a line: not central, elimination fails
        let affine = Arrangement::new(RatMatrix::from_ints(&[&[1], &[1]]), int_vec(&[0, 1])).unwrap();
        let report = check_covector_axioms(&of(&affine));
        assert!(matches!(report, AxiomReport::Violation { .. }));
    }

    #[test]
    fn elimination_violation() {
        // a 3-element system closed under composition and negation that is
        // not an oriented matroid
        let l = system(&["00", "++", "--", "+-", "-+"]);
        assert!(matches!(
            check_covector_axioms(&l),
            AxiomReport::Violation { axiom: Axiom::Elimination, .. }
        ));
    }

    #[test]
    fn affine_restriction() {
        let l = system(&["0", "+", "-"]);
        let a = affine_covectors(&l, 0).unwrap();
        assert_eq!(a.m(), 0);
        assert_eq!(a.len(), 1);
        assert_eq!(affine_covectors(&system(&["00", "0+", "0-"]), 0), Err(Error::Loop(0)));
    }

    #[test]
    fn reorientation_example() {
        let a = Arrangement::new(
            RatMatrix::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]),
            int_vec(&[0, 0, 2]),
        )
        .unwrap();
        let b = Arrangement::new(
            RatMatrix::from_ints(&[&[0, 1], &[1, 0], &[-1, -1]]),
            int_vec(&[0, 0, -2]),
        )
        .unwrap();
        let (la, lb) = (of(&a), of(&b));
        assert!(!om_equivalent(&la, &lb).unwrap());
        let found = om_equivalent_up_to_symmetry(&la, &lb, SymmetryMode::RelabelAndReorient)
            .unwrap()
            .unwrap();
        assert_eq!(la.transform(&found), lb);
        let all = all_symmetries(&la, &lb, SymmetryMode::RelabelAndReorient).unwrap();
        assert!(all.contains(&Symmetry {
            perm: vec![1, 0, 2],
            reorientation: vec![2]
        }));
        assert_eq!(
            om_equivalent_up_to_symmetry(&la, &lb, SymmetryMode::RelabelOnly).unwrap(),
            None
        );
        assert_eq!(
            om_equivalent_up_to_symmetry(&la, &la, SymmetryMode::RelabelAndReorient).unwrap(),
            Some(Symmetry::identity(3))
        );
    }

    #[test]
    fn different_sizes_not_equivalent() {
        let parallel = Arrangement::new(RatMatrix::from_ints(&[&[1, 0], &[1, 0]]), int_vec(&[0, 1])).unwrap();
        let crossing = Arrangement::linear(RatMatrix::from_ints(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(
            om_equivalent_up_to_symmetry(&of(&parallel), &of(&crossing), SymmetryMode::RelabelAndReorient)
                .unwrap(),
            None
        );
    }
}
