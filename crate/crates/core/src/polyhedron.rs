//! Tetrad polyhedra `P(a, I, J, K)`, their faces and normal cones.
//!
//! Indices are 0-based here; the JSON and CLI layers shift them to 1-based.

use num_traits::Zero;

use crate::error::Error;
use crate::exactla::{dot, is_zero_vec, Rat, RatMatrix, RatVector};
use crate::feasibility::{
    decide, optimize, realizable_sign_patterns, Constraint, LpOutcome, MixedSystem, Relation,
    SignMask,
};
use crate::sign::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    /// `I`: equality.
    Eq,
    /// `J`: `<=`.
    Le,
    /// `K`: `>=`.
    Ge,
}

impl Role {
    fn relation(self) -> Relation {
        match self {
            Role::Eq => Relation::Eq,
            Role::Le => Relation::Le,
            Role::Ge => Relation::Ge,
        }
    }

    fn mask(self) -> SignMask {
        match self {
            Role::Eq => SignMask::ZERO,
            Role::Le => SignMask::ZERO_OR_MINUS,
            Role::Ge => SignMask::ZERO_OR_PLUS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tetrad {
    pub a: RatVector,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
}

impl Tetrad {
    pub fn new(a: RatVector, i: Vec<usize>, j: Vec<usize>, k: Vec<usize>) -> Result<Self, Error> {
        let m = a.len();
        let mut seen = vec![false; m];
        for &idx in i.iter().chain(&j).chain(&k) {
            if idx >= m {
                return Err(Error::PartitionViolation {
                    m,
                    detail: format!("index {} out of range", idx + 1),
                });
            }
            if seen[idx] {
                return Err(Error::PartitionViolation {
                    m,
                    detail: format!("index {} appears twice", idx + 1),
                });
            }
            seen[idx] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::PartitionViolation {
                m,
                detail: format!("index {} is missing", missing + 1),
            });
        }
        let sorted = |mut v: Vec<usize>| {
            v.sort_unstable();
            v
        };
        Ok(Self {
            a,
            i: sorted(i),
            j: sorted(j),
            k: sorted(k),
        })
    }

    /// `P(a, {}, [m], {})`.
    pub fn all_le(a: RatVector) -> Self {
        let m = a.len();
        Self {
            a,
            i: Vec::new(),
            j: (0..m).collect(),
            k: Vec::new(),
        }
    }

    pub fn from_roles(a: RatVector, roles: &[Role]) -> Result<Self, Error> {
        if roles.len() != a.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                found: roles.len(),
            });
        }
        let pick = |r: Role| (0..roles.len()).filter(|&x| roles[x] == r).collect();
        Self::new(a, pick(Role::Eq), pick(Role::Le), pick(Role::Ge))
    }

    /// Same partition, new offsets.
    pub fn with_offsets(&self, b: RatVector) -> Self {
        assert_eq!(b.len(), self.a.len());
        Self {
            a: b,
            ..self.clone()
        }
    }

    pub fn m(&self) -> usize {
        self.a.len()
    }

    pub fn roles(&self) -> Vec<Role> {
        let mut roles = vec![Role::Le; self.m()];
        for &x in &self.i {
            roles[x] = Role::Eq;
        }
        for &x in &self.k {
            roles[x] = Role::Ge;
        }
        roles
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ActiveTriple {
    pub i: Vec<usize>,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
}

impl ActiveTriple {
    /// Face order: `F1` is a face of `F2` iff `I_F1` contains `I_F2`.
    pub fn is_face_of(&self, other: &ActiveTriple) -> bool {
        other.i.iter().all(|x| self.i.contains(x))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cone {
    pub n: usize,
    pub rays: Vec<RatVector>,
    pub lineality: Vec<RatVector>,
}

impl Cone {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            rays: Vec::new(),
            lineality: Vec::new(),
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = &RatVector> {
        self.rays.iter().chain(&self.lineality)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceRecord {
    pub active: ActiveTriple,
    pub dimension: usize,
    pub witness: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    Finite(Rat),
    PlusInfinity,
}

fn check_dims(u: &RatMatrix, t: &Tetrad) -> Result<(), Error> {
    if u.nrows() != t.m() {
        return Err(Error::DimensionMismatch {
            expected: u.nrows(),
            found: t.m(),
        });
    }
    Ok(())
}

/// `{U_I x = a_I, U_J x <= a_J, U_K x >= a_K}`.
pub fn constraint_system(u: &RatMatrix, t: &Tetrad) -> Result<MixedSystem, Error> {
    check_dims(u, t)?;
    let rows = t
        .roles()
        .into_iter()
        .enumerate()
        .map(|(x, role)| Constraint::new(u.row(x).to_vec(), role.relation(), t.a[x].clone()))
        .collect();
    MixedSystem::from_rows(u.ncols(), rows)
}

fn open_system(u: &RatMatrix, t: &Tetrad) -> Result<MixedSystem, Error> {
    let mut sys = constraint_system(u, t)?;
    let rows = sys
        .rows()
        .iter()
        .map(|r| {
            let relation = match r.relation {
                Relation::Le => Relation::Lt,
                Relation::Ge => Relation::Gt,
                other => other,
            };
            Constraint::new(r.normal.clone(), relation, r.rhs.clone())
        })
        .collect();
    sys = MixedSystem::from_rows(u.ncols(), rows)?;
    Ok(sys)
}

pub fn is_empty(u: &RatMatrix, t: &Tetrad) -> Result<bool, Error> {
    Ok(!decide(&constraint_system(u, t)?).is_feasible())
}

/// A point of the open polyhedron (`<` on `J`, `>` on `K`), if it is nonempty.
pub fn open_interior_point(u: &RatMatrix, t: &Tetrad) -> Result<Option<RatVector>, Error> {
    Ok(decide(&open_system(u, t)?).witness())
}

fn require_nonempty(u: &RatMatrix, t: &Tetrad) -> Result<(), Error> {
    if is_empty(u, t)? {
        Err(Error::EmptyPolyhedron)
    } else {
        Ok(())
    }
}

/// Recession cone `{U_I v = 0, U_J v <= 0, U_K v >= 0}` as a system.
fn recession_system(u: &RatMatrix, t: &Tetrad) -> Result<MixedSystem, Error> {
    let zero = Tetrad {
        a: vec![Rat::zero(); t.m()],
        ..t.clone()
    };
    constraint_system(u, &zero)
}

/// Bounded iff the recession cone is `{0}`: each coordinate is maximised and
/// minimised over the cone cut by the box `[-1, 1]^n`.
pub fn is_bounded(u: &RatMatrix, t: &Tetrad) -> Result<bool, Error> {
    require_nonempty(u, t)?;
    let n = u.ncols();
    let mut sys = recession_system(u, t)?;
    for c in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[c] = Rat::from_integer(1.into());
        sys.push(e.clone(), Relation::Le, Rat::from_integer(1.into()))?;
        sys.push(e, Relation::Ge, Rat::from_integer((-1).into()))?;
    }
    for c in 0..n {
        for sign in [1, -1] {
            let mut obj = vec![Rat::zero(); n];
            obj[c] = Rat::from_integer(sign.into());
            match optimize(&obj, &sys)? {
                LpOutcome::Optimal { value, .. } if value.is_zero() => {}
                LpOutcome::Optimal { .. } => return Ok(false),
                other => unreachable!("box-bounded recession LP returned {other:?}"),
            }
        }
    }
    Ok(true)
}

/// `sup <direction, x>` over the polyhedron.
pub fn support_value(u: &RatMatrix, t: &Tetrad, direction: &[Rat]) -> Result<Support, Error> {
    let sys = constraint_system(u, t)?;
    match optimize(direction, &sys)? {
        LpOutcome::Optimal { value, .. } => Ok(Support::Finite(value)),
        LpOutcome::Unbounded { .. } => Ok(Support::PlusInfinity),
        LpOutcome::Infeasible(_) => Err(Error::EmptyPolyhedron),
    }
}

pub fn active_triple_at(u: &RatMatrix, t: &Tetrad, x: &[Rat]) -> Result<ActiveTriple, Error> {
    let sys = constraint_system(u, t)?;
    if x.len() != u.ncols() {
        return Err(Error::DimensionMismatch {
            expected: u.ncols(),
            found: x.len(),
        });
    }
    if !sys.is_satisfied_by(x) {
        return Err(Error::PointNotInPolyhedron);
    }
    let tight: Vec<usize> = (0..t.m()).filter(|&r| dot(u.row(r), x) == t.a[r]).collect();
    Ok(triple_from_tight(t, tight))
}

fn triple_from_tight(t: &Tetrad, tight: Vec<usize>) -> ActiveTriple {
    ActiveTriple {
        j: t.j.iter().copied().filter(|x| !tight.contains(x)).collect(),
        k: t.k.iter().copied().filter(|x| !tight.contains(x)).collect(),
        i: tight,
    }
}

pub fn face_dimension(u: &RatMatrix, active: &ActiveTriple) -> usize {
    u.ncols() - u.select_rows(&active.i).rank()
}

/// One record per nonempty face, found by a pruned search over tight sets.
/// Sorted by active triple.
pub fn enumerate_faces(u: &RatMatrix, t: &Tetrad) -> Result<Vec<FaceRecord>, Error> {
    check_dims(u, t)?;
    let masks: Vec<SignMask> = t.roles().into_iter().map(Role::mask).collect();
    let patterns = realizable_sign_patterns(u.ncols(), u.rows(), &t.a, &masks);
    let mut faces: Vec<FaceRecord> = patterns
        .into_iter()
        .map(|(signs, witness)| {
            let tight = (0..t.m()).filter(|&x| signs.get(x) == Sign::Zero).collect();
            let active = triple_from_tight(t, tight);
            FaceRecord {
                dimension: face_dimension(u, &active),
                active,
                witness,
            }
        })
        .collect();
    faces.sort_by(|x, y| x.active.cmp(&y.active));
    Ok(faces)
}

/// Test oracle: every candidate tight set `S` containing `I` is checked with
/// its own open system.
pub fn enumerate_faces_brute_force(u: &RatMatrix, t: &Tetrad) -> Result<Vec<FaceRecord>, Error> {
    check_dims(u, t)?;
    let m = t.m();
    if m > 16 {
        return Err(Error::DeskScaleExceeded(format!("{m} rows for brute force")));
    }
    let free: Vec<usize> = t.j.iter().chain(&t.k).copied().collect();
    let mut faces = Vec::new();
    for bits in 0u32..(1 << free.len()) {
        let mut tight = t.i.clone();
        tight.extend((0..free.len()).filter(|b| bits >> b & 1 == 1).map(|b| free[b]));
        tight.sort_unstable();
        let active = triple_from_tight(t, tight);
        let mut sys = MixedSystem::new(u.ncols());
        for &x in &active.i {
            sys.push(u.row(x).to_vec(), Relation::Eq, t.a[x].clone())?;
        }
        for &x in &active.j {
            sys.push(u.row(x).to_vec(), Relation::Lt, t.a[x].clone())?;
        }
        for &x in &active.k {
            sys.push(u.row(x).to_vec(), Relation::Gt, t.a[x].clone())?;
        }
        if let Some(witness) = decide(&sys).witness() {
            faces.push(FaceRecord {
                dimension: face_dimension(u, &active),
                active,
                witness,
            });
        }
    }
    faces.sort_by(|x, y| x.active.cmp(&y.active));
    Ok(faces)
}

/// Rays `u_j` for tight `j` in `J`, `-u_k` for tight `k` in `K`, lineality
/// spanned by `u_i` for `i` in `I`.
pub fn normal_cone(u: &RatMatrix, t: &Tetrad, active: &ActiveTriple) -> Cone {
    let mut rays = Vec::new();
    for &x in &active.i {
        if t.j.contains(&x) {
            rays.push(u.row(x).to_vec());
        } else if t.k.contains(&x) {
            rays.push(u.row(x).iter().map(|v| -v).collect());
        }
    }
    Cone {
        n: u.ncols(),
        rays,
        lineality: t.i.iter().map(|&x| u.row(x).to_vec()).collect(),
    }
}

/// Whether `v` is a nonnegative combination of rays plus any combination of
/// lineality generators.
pub fn cone_contains(c: &Cone, v: &[Rat]) -> Result<bool, Error> {
    if v.len() != c.n {
        return Err(Error::DimensionMismatch {
            expected: c.n,
            found: v.len(),
        });
    }
    let gens: Vec<&RatVector> = c.generators().collect();
    if gens.is_empty() {
        return Ok(is_zero_vec(v));
    }
    let mut sys = MixedSystem::new(gens.len());
    for coord in 0..c.n {
        let normal = gens.iter().map(|g| g[coord].clone()).collect();
        sys.push(normal, Relation::Eq, v[coord].clone())?;
    }
    for r in 0..c.rays.len() {
        let mut e = vec![Rat::zero(); gens.len()];
        e[r] = Rat::from_integer(1.into());
        sys.push(e, Relation::Ge, Rat::zero())?;
    }
    Ok(decide(&sys).is_feasible())
}

/// `c1` is contained in `c2`: every generator of `c1` lies in `c2`, with
/// lineality generators required in both directions.
pub fn cone_subset(c1: &Cone, c2: &Cone) -> Result<bool, Error> {
    for g in c1.rays.iter() {
        if !cone_contains(c2, g)? {
            return Ok(false);
        }
    }
    for g in c1.lineality.iter() {
        let neg: RatVector = g.iter().map(|v| -v).collect();
        if !cone_contains(c2, g)? || !cone_contains(c2, &neg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn cones_equal(c1: &Cone, c2: &Cone) -> Result<bool, Error> {
    Ok(cone_subset(c1, c2)? && cone_subset(c2, c1)?)
}

pub fn normal_fan(u: &RatMatrix, t: &Tetrad) -> Result<Vec<(ActiveTriple, Cone)>, Error> {
    Ok(enumerate_faces(u, t)?
        .into_iter()
        .map(|f| {
            let cone = normal_cone(u, t, &f.active);
            (f.active, cone)
        })
        .collect())
}

/// The two normal fans have the same cones.
pub fn normal_fan_equal(u: &RatMatrix, t1: &Tetrad, t2: &Tetrad) -> Result<bool, Error> {
    require_nonempty(u, t1)?;
    require_nonempty(u, t2)?;
    let f1: Vec<Cone> = normal_fan(u, t1)?.into_iter().map(|(_, c)| c).collect();
    let f2: Vec<Cone> = normal_fan(u, t2)?.into_iter().map(|(_, c)| c).collect();
    if f1.len() != f2.len() {
        return Ok(false);
    }
    for (lhs, rhs) in [(&f1, &f2), (&f2, &f1)] {
        for c in lhs.iter() {
            let mut matched = false;
            for d in rhs.iter() {
                if cones_equal(c, d)? {
                    matched = true;
                    break;
                }
            }
            if !matched {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `P(t1)` is contained in `P(t2)`: no point of `P(t1)` strictly violates any
/// row of `t2`.
pub fn is_subset(u: &RatMatrix, t1: &Tetrad, t2: &Tetrad) -> Result<bool, Error> {
    let inner = constraint_system(u, t1)?;
    let outer = constraint_system(u, t2)?;
    for row in outer.rows() {
        let complements: &[Relation] = match row.relation {
            Relation::Eq => &[Relation::Lt, Relation::Gt],
            Relation::Le => &[Relation::Gt],
            Relation::Ge => &[Relation::Lt],
            Relation::Lt => &[Relation::Ge],
            Relation::Gt => &[Relation::Le],
        };
        for &rel in complements {
            let mut sys = inner.clone();
            sys.push(row.normal.clone(), rel, row.rhs.clone())?;
            if decide(&sys).is_feasible() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn polyhedra_equal(u: &RatMatrix, t1: &Tetrad, t2: &Tetrad) -> Result<bool, Error> {
    Ok(is_subset(u, t1, t2)? && is_subset(u, t2, t1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int_vec, rat, ratio};

    fn u_ex() -> RatMatrix {
        RatMatrix::from_ints(&[&[-1, 0], &[0, 1], &[0, -1], &[1, 1]])
    }

    fn triangle() -> Tetrad {
        Tetrad::all_le(int_vec(&[0, 1, 0, 1]))
    }

    #[test]
    fn partition_is_validated() {
        assert!(Tetrad::new(int_vec(&[0, 1]), vec![], vec![1], vec![1]).is_err());
        assert!(Tetrad::new(int_vec(&[0, 1]), vec![], vec![0], vec![]).is_err());
        assert!(Tetrad::new(int_vec(&[0, 1]), vec![2], vec![0, 1], vec![]).is_err());
    }

    #[test]
    fn triangle_basics() {
        let u = u_ex();
        assert!(!is_empty(&u, &triangle()).unwrap());
        assert!(is_bounded(&u, &triangle()).unwrap());
        let p = open_interior_point(&u, &triangle()).unwrap().unwrap();
        assert_eq!(active_triple_at(&u, &triangle(), &p).unwrap().i, Vec::<usize>::new());
        assert_eq!(
            support_value(&u, &triangle(), &int_vec(&[0, 1])).unwrap(),
            Support::Finite(rat(1))
        );
        assert_eq!(
            support_value(&u, &triangle(), &int_vec(&[0, 0])).unwrap(),
            Support::Finite(rat(0))
        );
    }

    #[test]
    fn contradictory_equalities_are_empty() {
        let u = RatMatrix::from_ints(&[&[1], &[1]]);
        let t = Tetrad::new(int_vec(&[0, 1]), vec![0, 1], vec![], vec![]).unwrap();
        assert!(is_empty(&u, &t).unwrap());
        assert!(enumerate_faces(&u, &t).unwrap().is_empty());
        assert_eq!(is_bounded(&u, &t), Err(Error::EmptyPolyhedron));
    }

    #[test]
    fn unbounded_wedge() {
        let u = u_ex();
        let t = Tetrad::from_roles(int_vec(&[0, 1, 0, 1]), &[Role::Le, Role::Le, Role::Le, Role::Le])
            .unwrap();
        assert!(is_bounded(&u, &t).unwrap());
        let u2 = RatMatrix::from_ints(&[&[-1, 0], &[1, 1]]);
        let t2 = Tetrad::all_le(int_vec(&[0, 1]));
        assert!(!is_bounded(&u2, &t2).unwrap());
        let half_line = Tetrad::new(int_vec(&[0]), vec![], vec![], vec![0]).unwrap();
        let u1 = RatMatrix::from_ints(&[&[1]]);
        assert_eq!(
            support_value(&u1, &half_line, &int_vec(&[1])).unwrap(),
            Support::PlusInfinity
        );
        let point = Tetrad::new(int_vec(&[0]), vec![0], vec![], vec![]).unwrap();
        assert!(is_bounded(&u1, &point).unwrap());
    }

    #[test]
    fn triangle_faces() {
        let u = u_ex();
        let faces = enumerate_faces(&u, &triangle()).unwrap();
        let tight: Vec<Vec<usize>> = faces.iter().map(|f| f.active.i.clone()).collect();
        let mut expected = vec![
            vec![],
            vec![0],
            vec![2],
            vec![3],
            vec![0, 2],
            vec![2, 3],
            vec![0, 1, 3],
        ];
        expected.sort();
        let mut got = tight.clone();
        got.sort();
        assert_eq!(got, expected);
        let oracle = enumerate_faces_brute_force(&u, &triangle()).unwrap();
        let key = |fs: &[FaceRecord]| -> Vec<(ActiveTriple, usize)> {
            fs.iter().map(|f| (f.active.clone(), f.dimension)).collect()
        };
        assert_eq!(key(&faces), key(&oracle));
        for f in &faces {
            assert_eq!(active_triple_at(&u, &triangle(), &f.witness).unwrap(), f.active);
        }
    }

    #[test]
    fn active_triples_at_vertices() {
        let u = u_ex();
        let at = |x: RatVector| active_triple_at(&u, &triangle(), &x).unwrap().i;
        assert_eq!(at(int_vec(&[0, 0])), vec![0, 2]);
        assert_eq!(at(int_vec(&[0, 1])), vec![0, 1, 3]);
        assert_eq!(at(vec![ratio(1, 4), ratio(1, 4)]), Vec::<usize>::new());
        assert_eq!(
            active_triple_at(&u, &triangle(), &int_vec(&[2, 2])),
            Err(Error::PointNotInPolyhedron)
        );
    }

    #[test]
    fn dimensions() {
        let u = u_ex();
        let triple = |i: Vec<usize>| ActiveTriple {
            i,
            ..Default::default()
        };
        assert_eq!(face_dimension(&u, &triple(vec![0, 2])), 0);
        assert_eq!(face_dimension(&u, &triple(vec![])), 2);
        assert_eq!(face_dimension(&u, &triple(vec![3])), 1);
    }

    #[test]
    fn cones() {
        let c = Cone {
            n: 2,
            rays: vec![int_vec(&[-1, 0]), int_vec(&[0, -1])],
            lineality: vec![],
        };
        assert!(cone_contains(&c, &int_vec(&[-1, -2])).unwrap());
        assert!(!cone_contains(&c, &int_vec(&[1, 0])).unwrap());
        assert!(cone_contains(&Cone::zero(2), &int_vec(&[0, 0])).unwrap());
        assert!(!cone_contains(&Cone::zero(2), &int_vec(&[0, 1])).unwrap());

        let u = u_ex();
        let vertex = ActiveTriple {
            i: vec![0, 2],
            j: vec![1, 3],
            k: vec![],
        };
        let nc = normal_cone(&u, &triangle(), &vertex);
        assert_eq!(nc.rays, vec![int_vec(&[-1, 0]), int_vec(&[0, -1])]);
        assert!(nc.lineality.is_empty());
        let whole = normal_cone(&u, &triangle(), &ActiveTriple {
            i: vec![],
            j: vec![0, 1, 2, 3],
            k: vec![],
        });
        assert!(cones_equal(&whole, &Cone::zero(2)).unwrap());
    }

    #[test]
    fn fans() {
        let u = u_ex();
        let a = triangle();
        assert!(normal_fan_equal(&u, &a, &a.with_offsets(int_vec(&[0, 2, 0, 2]))).unwrap());
        let b2 = a.with_offsets(vec![rat(0), ratio(3, 4), rat(0), rat(1)]);
        assert!(!normal_fan_equal(&u, &a, &b2).unwrap());
        assert!(normal_fan_equal(&u, &a, &a).unwrap());
    }

    #[test]
    fn same_point_set() {
        let u = u_ex();
        let a = triangle();
        let b1 = a.with_offsets(vec![rat(0), ratio(3, 2), rat(0), rat(1)]);
        assert!(polyhedra_equal(&u, &a, &b1).unwrap());
        let b2 = a.with_offsets(vec![rat(0), ratio(3, 4), rat(0), rat(1)]);
        assert!(!polyhedra_equal(&u, &a, &b2).unwrap());
        assert!(is_subset(&u, &b2, &a).unwrap());
    }
}
