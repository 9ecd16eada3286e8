//! Affine hyperplane arrangements `H_i = {x : <u_i, x> = a_i}`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::Error;
use crate::exactla::{dot, is_zero_vec, proportional, Rat, RatMatrix, RatVector};
use crate::feasibility::{realizable_sign_patterns, decide, Constraint, MixedSystem, Relation, SignMask};
use crate::polyhedron::ActiveTriple;
use crate::poset::{isomorphism, Poset};
use crate::sign::{Sign, SignVector};

pub type SignSet = BTreeSet<SignVector>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrangement {
    u: RatMatrix,
    a: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrangementFace {
    pub sign: SignVector,
    pub witness: RatVector,
    pub dimension: usize,
}

/// A nonempty intersection of hyperplanes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flat {
    /// Nonzero rows of the reduced echelon form of `[U_S | a_S]`.
    pub key: Vec<RatVector>,
    /// Every hyperplane containing the flat.
    pub hyperplanes: Vec<usize>,
    pub dimension: usize,
}

impl Arrangement {
    pub fn new(u: RatMatrix, a: RatVector) -> Result<Self, Error> {
        if a.len() != u.nrows() {
            return Err(Error::DimensionMismatch {
                expected: u.nrows(),
                found: a.len(),
            });
        }
        if let Some(i) = (0..u.nrows()).find(|&i| is_zero_vec(u.row(i))) {
            return Err(Error::ZeroRow(i));
        }
        Ok(Self { u, a })
    }

    /// The central arrangement with all offsets zero.
    pub fn linear(u: RatMatrix) -> Result<Self, Error> {
        let m = u.nrows();
        Self::new(u, vec![Rat::default(); m])
    }

    pub fn u(&self) -> &RatMatrix {
        &self.u
    }

    pub fn a(&self) -> &[Rat] {
        &self.a
    }

    pub fn m(&self) -> usize {
        self.u.nrows()
    }

    pub fn n(&self) -> usize {
        self.u.ncols()
    }

    /// First pair of proportional normals, if any.
    pub fn multi_pair(&self) -> Option<(usize, usize)> {
        multi_pair(&self.u)
    }

    pub fn is_multi(&self) -> bool {
        self.multi_pair().is_some()
    }

    /// Number of distinct hyperplanes as point sets.
    pub fn distinct_hyperplanes(&self) -> usize {
        let mut reps: Vec<RatVector> = Vec::new();
        for i in 0..self.m() {
            let mut row = self.u.row(i).to_vec();
            row.push(self.a[i].clone());
            if !reps.iter().any(|r| proportional(r, &row)) {
                reps.push(row);
            }
        }
        reps.len()
    }

    pub fn sign_of_point(&self, x: &[Rat]) -> Result<SignVector, Error> {
        if x.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(SignVector(
            (0..self.m())
                .map(|i| Sign::of(&(dot(self.u.row(i), x) - &self.a[i])))
                .collect(),
        ))
    }

    /// All faces in canonical sign order, each with a relative-interior point.
    pub fn faces(&self) -> Vec<ArrangementFace> {
        realizable_sign_patterns(self.n(), self.u.rows(), &self.a, &vec![SignMask::ALL; self.m()])
            .into_iter()
            .map(|(sign, witness)| ArrangementFace {
                dimension: self.face_dimension(&sign),
                sign,
                witness,
            })
            .collect()
    }

    pub fn face_dimension(&self, sign: &SignVector) -> usize {
        self.n() - self.u.select_rows(&sign.zero_set()).rank()
    }

    pub fn sign_set(&self) -> SignSet {
        self.faces().into_iter().map(|f| f.sign).collect()
    }

    /// Test oracle: all `3^m` candidates, each checked by strict feasibility.
    pub fn sign_set_brute_force(&self) -> Result<SignSet, Error> {
        let m = self.m();
        if m > 10 {
            return Err(Error::DeskScaleExceeded(format!("3^{m} candidates")));
        }
        let mut out = SignSet::new();
        for code in 0..3usize.pow(m as u32) {
            let mut c = code;
            let signs: Vec<Sign> = (0..m)
                .map(|_| {
                    let s = Sign::ALL[c % 3];
                    c /= 3;
                    s
                })
                .collect();
            let rows = (0..m)
                .map(|i| Constraint::new(self.u.row(i).to_vec(), Relation::for_sign(signs[i]), self.a[i].clone()))
                .collect();
            let sys = MixedSystem::from_rows(self.n(), rows)?;
            if decide(&sys).is_feasible() {
                out.insert(SignVector(signs));
            }
        }
        Ok(out)
    }

    pub fn face_poset(&self) -> Poset<SignVector> {
        face_poset_of(&self.sign_set())
    }

    pub fn flats(&self) -> Vec<Flat> {
        let n = self.n();
        let m = self.m();
        let augmented = |rows: &[usize]| -> RatMatrix {
            RatMatrix::from_rows_with_width(
                rows.iter()
                    .map(|&i| {
                        let mut r = self.u.row(i).to_vec();
                        r.push(self.a[i].clone());
                        r
                    })
                    .collect(),
                n + 1,
            )
        };
        let closure = |sys: &RatMatrix| -> Vec<usize> {
            (0..m)
                .filter(|&i| {
                    let mut r = self.u.row(i).to_vec();
                    r.push(self.a[i].clone());
                    sys.row_space_contains(&r)
                })
                .collect()
        };
        let root = Flat {
            key: Vec::new(),
            hyperplanes: closure(&augmented(&[])),
            dimension: n,
        };
        let mut seen: BTreeMap<Vec<RatVector>, Flat> = BTreeMap::new();
        seen.insert(root.key.clone(), root.clone());
        let mut queue = VecDeque::from([root]);
        while let Some(flat) = queue.pop_front() {
            for i in 0..m {
                if flat.hyperplanes.contains(&i) {
                    continue;
                }
                let mut rows: Vec<usize> = flat.hyperplanes.clone();
                rows.push(i);
                let sys = augmented(&rows);
                let (reduced, pivots) = sys.rref();
                if pivots.last() == Some(&n) {
                    continue;
                }
                let key: Vec<RatVector> = reduced.rows()[..pivots.len()].to_vec();
                if seen.contains_key(&key) {
                    continue;
                }
                let child = Flat {
                    hyperplanes: closure(&sys),
                    dimension: n - pivots.len(),
                    key: key.clone(),
                };
                seen.insert(key, child.clone());
                queue.push_back(child);
            }
        }
        let mut flats: Vec<Flat> = seen.into_values().collect();
        flats.sort_by(|x, y| {
            y.dimension
                .cmp(&x.dimension)
                .then_with(|| x.hyperplanes.cmp(&y.hyperplanes))
        });
        flats
    }

    /// Flats ordered by reverse inclusion; `R^n` is the minimum.
    pub fn intersection_poset(&self) -> Poset<Flat> {
        Poset::from_order(self.flats(), |x, y| {
            x.hyperplanes.iter().all(|h| y.hyperplanes.contains(h))
        })
    }

    /// Negates `u_i` and `a_i` for `i` in `set`.
    pub fn reorient(&self, set: &[usize]) -> Self {
        let mut rows = self.u.rows().to_vec();
        let mut a = self.a.clone();
        for &i in set {
            rows[i] = rows[i].iter().map(|v| -v).collect();
            a[i] = -a[i].clone();
        }
        Self {
            u: RatMatrix::from_rows_with_width(rows, self.n()),
            a,
        }
    }

    /// New hyperplane `i` is old hyperplane `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self {
            u: self.u.select_rows(perm),
            a: perm.iter().map(|&p| self.a[p].clone()).collect(),
        }
    }
}

pub fn multi_pair(u: &RatMatrix) -> Option<(usize, usize)> {
    for i in 0..u.nrows() {
        for j in i + 1..u.nrows() {
            if proportional(u.row(i), u.row(j)) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn face_poset_of(signs: &SignSet) -> Poset<SignVector> {
    Poset::from_order(signs.iter().cloned().collect(), |x, y| x.is_below(y))
}

pub fn sign_equivalent(a: &Arrangement, b: &Arrangement) -> Result<bool, Error> {
    if a.m() != b.m() {
        return Err(Error::SizeMismatch(a.m(), b.m()));
    }
    Ok(a.sign_set() == b.sign_set())
}

pub fn combinatorially_equivalent(a: &Arrangement, b: &Arrangement) -> Result<bool, Error> {
    Ok(isomorphism(&a.face_poset(), &b.face_poset())?.is_some())
}

pub fn semilattice_equivalent(a: &Arrangement, b: &Arrangement) -> Result<bool, Error> {
    Ok(isomorphism(&a.intersection_poset(), &b.intersection_poset())?.is_some())
}

/// `I` is the zero set of `face`; `J` (`K`) holds the negative (positive)
/// entries whose hyperplane meets the closure of the face.
pub fn valid_active_triple(signs: &SignSet, face: &SignVector) -> Result<ActiveTriple, Error> {
    if !signs.contains(face) {
        return Err(Error::NotAFace(face.to_string()));
    }
    let mut touched = vec![false; face.len()];
    for t in signs.iter().filter(|t| t.is_below(face)) {
        for i in t.zero_set() {
            touched[i] = true;
        }
    }
    let pick = |s: Sign| {
        (0..face.len())
            .filter(|&i| face.get(i) == s && touched[i])
            .collect()
    };
    Ok(ActiveTriple {
        i: face.zero_set(),
        j: pick(Sign::Minus),
        k: pick(Sign::Plus),
    })
}

/// Decides normal equivalence of `A_a` and `A_b` through valid active triples.
/// The triple sets must coincide, and the bijection they induce must be an
/// order isomorphism of the face posets.
pub fn normally_equivalent_translations(u: &RatMatrix, a: &[Rat], b: &[Rat]) -> Result<bool, Error> {
    if let Some((i, j)) = multi_pair(u) {
        return Err(Error::MultiArrangement(i, j));
    }
    let sa = Arrangement::new(u.clone(), a.to_vec())?.sign_set();
    let sb = Arrangement::new(u.clone(), b.to_vec())?.sign_set();
    if sa.len() != sb.len() {
        return Ok(false);
    }
    let triples = |signs: &SignSet| -> Result<BTreeMap<ActiveTriple, SignVector>, Error> {
        let mut map = BTreeMap::new();
        for s in signs {
            map.insert(valid_active_triple(signs, s)?, s.clone());
        }
        Ok(map)
    };
    let ta = triples(&sa)?;
    let tb = triples(&sb)?;
    if ta.len() != sa.len() || tb.len() != sb.len() {
        return Ok(false);
    }
    if !ta.keys().eq(tb.keys()) {
        return Ok(false);
    }
    let pairs: Vec<(&SignVector, &SignVector)> = ta.values().zip(tb.values()).collect();
    for (x, fx) in &pairs {
        for (y, fy) in &pairs {
            if x.is_below(y) != fx.is_below(fy) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
