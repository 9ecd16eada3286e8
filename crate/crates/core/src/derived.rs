//! Circuits of `U` and the derived arrangement in offset space `R^m`.

use itertools::Itertools;
use num_traits::Zero;

use crate::arrangement::Arrangement;
use crate::error::Error;
use crate::exactla::{dot, is_zero_vec, primitive_integer_vector, proportional, Rat, RatMatrix, RatVector};
use crate::sign::{Sign, SignVector};

/// Largest circuit count accepted by [`enumerate_derived_faces`].
pub const MAX_DERIVED_HYPERPLANES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    pub support: Vec<usize>,
    /// Coprime integers, first nonzero entry positive, zero off the support.
    pub vector: RatVector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedFaceRef {
    pub sign: SignVector,
    pub representative: RatVector,
}

/// All circuits, ordered by size and then lexicographically by support.
pub fn enumerate_circuits(u: &RatMatrix) -> Result<Vec<Circuit>, Error> {
    let m = u.nrows();
    if let Some(i) = (0..m).find(|&i| is_zero_vec(u.row(i))) {
        return Err(Error::ZeroRow(i));
    }
    let max_size = (u.rank() + 1).min(m);
    let mut circuits: Vec<Circuit> = Vec::new();
    for size in 2..=max_size {
        for support in (0..m).combinations(size) {
            if circuits
                .iter()
                .any(|c| c.support.iter().all(|x| support.contains(x)))
            {
                continue;
            }
            let sub = u.select_rows(&support);
            if sub.rank() == size {
                continue;
            }
            let kernel = sub.left_nullspace();
            debug_assert_eq!(kernel.nrows(), 1);
            let mut full = vec![Rat::zero(); m];
            for (pos, &idx) in support.iter().enumerate() {
                full[idx] = kernel.row(0)[pos].clone();
            }
            circuits.push(Circuit {
                vector: primitive_integer_vector(&full),
                support,
            });
        }
    }
    Ok(circuits)
}

/// The linear arrangement `<c^C, x> = 0` in `R^m`, one row per circuit.
pub fn derived_arrangement(u: &RatMatrix) -> Result<Arrangement, Error> {
    let mut rows: Vec<RatVector> = Vec::new();
    for c in enumerate_circuits(u)? {
        if !rows.iter().any(|r| proportional(r, &c.vector)) {
            rows.push(c.vector);
        }
    }
    Arrangement::linear(RatMatrix::from_rows_with_width(rows, u.nrows()))
}

/// Circuits of `U` bundled with point location in the derived arrangement.
#[derive(Clone, Debug)]
pub struct Derived {
    m: usize,
    circuits: Vec<Circuit>,
}

impl Derived {
    pub fn new(u: &RatMatrix) -> Result<Self, Error> {
        Ok(Self {
            m: u.nrows(),
            circuits: enumerate_circuits(u)?,
        })
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn arrangement(&self) -> Arrangement {
        let rows = self.circuits.iter().map(|c| c.vector.clone()).collect();
        Arrangement::linear(RatMatrix::from_rows_with_width(rows, self.m))
            .expect("circuit vectors are nonzero")
    }

    pub fn locate(&self, a: &[Rat]) -> Result<SignVector, Error> {
        if a.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: a.len(),
            });
        }
        Ok(SignVector(
            self.circuits
                .iter()
                .map(|c| Sign::of(&dot(&c.vector, a)))
                .collect(),
        ))
    }

    /// Dimension of the open face with the given sign.
    pub fn face_dimension(&self, sign: &SignVector) -> usize {
        let rows = sign
            .zero_set()
            .into_iter()
            .map(|i| self.circuits[i].vector.clone())
            .collect();
        self.m - RatMatrix::from_rows_with_width(rows, self.m).rank()
    }

    pub fn same_open_face(&self, a: &[Rat], b: &[Rat]) -> Result<bool, Error> {
        Ok(self.locate(a)? == self.locate(b)?)
    }

    /// `b` lies in the closure of the open face of `a`.
    pub fn in_closed_face(&self, a: &[Rat], b: &[Rat]) -> Result<bool, Error> {
        Ok(self.locate(b)?.is_below(&self.locate(a)?))
    }

    pub fn faces(&self) -> Result<Vec<DerivedFaceRef>, Error> {
        if self.circuits.len() > MAX_DERIVED_HYPERPLANES {
            return Err(Error::DeskScaleExceeded(format!(
                "{} derived hyperplanes (limit {MAX_DERIVED_HYPERPLANES})",
                self.circuits.len()
            )));
        }
        Ok(self
            .arrangement()
            .faces()
            .into_iter()
            .map(|f| DerivedFaceRef {
                sign: f.sign,
                representative: f.witness,
            })
            .collect())
    }
}

pub fn locate_open_face(u: &RatMatrix, a: &[Rat]) -> Result<SignVector, Error> {
    Derived::new(u)?.locate(a)
}

pub fn same_open_face(u: &RatMatrix, a: &[Rat], b: &[Rat]) -> Result<bool, Error> {
    Derived::new(u)?.same_open_face(a, b)
}

pub fn enumerate_derived_faces(u: &RatMatrix) -> Result<Vec<DerivedFaceRef>, Error> {
    Derived::new(u)?.faces()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int_vec, rat, ratio};
    use crate::sign::sv;

    fn u_ex() -> RatMatrix {
        RatMatrix::from_ints(&[&[-1, 0], &[0, 1], &[0, -1], &[1, 1]])
    }

    #[test]
    fn example_circuits() {
        let circuits = enumerate_circuits(&u_ex()).unwrap();
        let supports: Vec<Vec<usize>> = circuits.iter().map(|c| c.support.clone()).collect();
        assert_eq!(supports, vec![vec![1, 2], vec![0, 1, 3], vec![0, 2, 3]]);
        let vectors: Vec<RatVector> = circuits.iter().map(|c| c.vector.clone()).collect();
        assert_eq!(
            vectors,
            vec![int_vec(&[0, 1, 1, 0]), int_vec(&[1, -1, 0, 1]), int_vec(&[1, 0, 1, 1])]
        );
    }

    #[test]
    fn trivial_circuits() {
        assert!(enumerate_circuits(&RatMatrix::identity(3)).unwrap().is_empty());
        let rep = enumerate_circuits(&RatMatrix::from_ints(&[&[1], &[1]])).unwrap();
        assert_eq!(rep.len(), 1);
        assert_eq!(rep[0].vector, int_vec(&[1, -1]));
        assert!(enumerate_circuits(&RatMatrix::from_ints(&[&[1], &[0]])).is_err());
    }

    #[test]
    fn derived_rows() {
        let d = derived_arrangement(&u_ex()).unwrap();
        assert_eq!(d.n(), 4);
        assert_eq!(d.m(), 3);
        let empty = derived_arrangement(&RatMatrix::identity(2)).unwrap();
        assert_eq!((empty.m(), empty.n()), (0, 2));
        let faces = enumerate_derived_faces(&RatMatrix::identity(2)).unwrap();
        assert_eq!(faces.len(), 1);
        assert_eq!(faces[0].representative, int_vec(&[0, 0]));
        assert_eq!(enumerate_derived_faces(&RatMatrix::from_ints(&[&[1], &[1]])).unwrap().len(), 3);
    }

    #[test]
    fn location() {
        let u = u_ex();
        let a = int_vec(&[0, 1, 0, 1]);
        let b1 = vec![rat(0), ratio(3, 2), rat(0), rat(1)];
        assert_eq!(locate_open_face(&u, &a).unwrap(), sv("+0+"));
        assert_eq!(locate_open_face(&u, &b1).unwrap(), sv("+-+"));
        assert_eq!(locate_open_face(&u, &int_vec(&[0, 0, 0, 1])).unwrap(), sv("0++"));
        assert!(same_open_face(&u, &a, &int_vec(&[0, 2, 0, 2])).unwrap());
        assert!(!same_open_face(&u, &a, &b1).unwrap());
        let d = Derived::new(&u).unwrap();
        assert_eq!(d.face_dimension(&sv("+0+")), 3);
        let signs: Vec<SignVector> = d.faces().unwrap().into_iter().map(|f| f.sign).collect();
        for s in ["+0+", "+-+", "0++"] {
            assert!(signs.contains(&sv(s)));
        }
    }
}
