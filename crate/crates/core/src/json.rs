//! JSON shapes for systems, tetrads, arrangements and config files.
//!
//! Rationals are strings such as `"-3/4"`; plain JSON integers are accepted on
//! input. Index sets are 1-based.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arrangement::Arrangement;
use crate::derived::Circuit;
use crate::error::Error;
use crate::exactla::{format_rat, parse_rat, Rat, RatMatrix, RatVector};
use crate::feasibility::{Constraint, MixedSystem, Relation};
use crate::polyhedron::Tetrad;

#[derive(Deserialize)]
#[serde(untagged)]
enum RatRepr {
    Text(String),
    Int(i64),
}

impl RatRepr {
    fn into_rat(self) -> Result<Rat, Error> {
        match self {
            RatRepr::Text(s) => parse_rat(&s),
            RatRepr::Int(v) => Ok(crate::exactla::rat(v)),
        }
    }
}

/// `#[serde(with = "rat")]` for a single rational.
pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        RatRepr::deserialize(d)?.into_rat().map_err(D::Error::custom)
    }
}

pub mod rat_vec {
    use super::*;

    pub fn serialize<S: Serializer>(value: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(value.iter().map(format_rat))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<RatVector, D::Error> {
        Vec::<RatRepr>::deserialize(d)?
            .into_iter()
            .map(|r| r.into_rat().map_err(D::Error::custom))
            .collect()
    }
}

pub mod rat_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(value: &[RatVector], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            value
                .iter()
                .map(|row| row.iter().map(format_rat).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<RatVector>, D::Error> {
        Vec::<Vec<RatRepr>>::deserialize(d)?
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|r| r.into_rat().map_err(D::Error::custom))
                    .collect()
            })
            .collect()
    }
}

fn to_one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn to_zero_based(v: &[usize], m: usize) -> Result<Vec<usize>, Error> {
    v.iter()
        .map(|&x| {
            if x == 0 || x > m {
                Err(Error::Parse(format!("index {x} outside 1..={m}")))
            } else {
                Ok(x - 1)
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowJson {
    #[serde(with = "rat_vec")]
    pub normal: RatVector,
    pub rel: Relation,
    #[serde(with = "rat")]
    pub rhs: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub n: usize,
    pub rows: Vec<RowJson>,
}

impl From<&MixedSystem> for SystemJson {
    fn from(sys: &MixedSystem) -> Self {
        Self {
            n: sys.n(),
            rows: sys
                .rows()
                .iter()
                .map(|r| RowJson {
                    normal: r.normal.clone(),
                    rel: r.relation,
                    rhs: r.rhs.clone(),
                })
                .collect(),
        }
    }
}

impl SystemJson {
    pub fn into_system(self) -> Result<MixedSystem, Error> {
        let rows = self
            .rows
            .into_iter()
            .map(|r| Constraint::new(r.normal, r.rel, r.rhs))
            .collect();
        MixedSystem::from_rows(self.n, rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TetradJson {
    #[serde(with = "rat_vec")]
    pub a: RatVector,
    #[serde(rename = "I", default)]
    pub i: Vec<usize>,
    #[serde(rename = "J", default)]
    pub j: Vec<usize>,
    #[serde(rename = "K", default)]
    pub k: Vec<usize>,
}

impl From<&Tetrad> for TetradJson {
    fn from(t: &Tetrad) -> Self {
        Self {
            a: t.a.clone(),
            i: to_one_based(&t.i),
            j: to_one_based(&t.j),
            k: to_one_based(&t.k),
        }
    }
}

impl TetradJson {
    pub fn into_tetrad(self) -> Result<Tetrad, Error> {
        let m = self.a.len();
        Tetrad::new(
            self.a,
            to_zero_based(&self.i, m)?,
            to_zero_based(&self.j, m)?,
            to_zero_based(&self.k, m)?,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementJson {
    #[serde(rename = "U", with = "rat_matrix")]
    pub u: Vec<RatVector>,
    #[serde(with = "rat_vec")]
    pub a: RatVector,
}

impl From<&Arrangement> for ArrangementJson {
    fn from(arr: &Arrangement) -> Self {
        Self {
            u: arr.u().rows().to_vec(),
            a: arr.a().to_vec(),
        }
    }
}

impl ArrangementJson {
    pub fn into_arrangement(self) -> Result<Arrangement, Error> {
        let n = self.u.first().map_or(0, Vec::len);
        Arrangement::new(RatMatrix::new(self.u, n)?, self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitJson {
    pub support: Vec<usize>,
    #[serde(with = "rat_vec")]
    pub vector: RatVector,
}

impl From<&Circuit> for CircuitJson {
    fn from(c: &Circuit) -> Self {
        Self {
            support: to_one_based(&c.support),
            vector: c.vector.clone(),
        }
    }
}

/// `U` plus named offset vectors and tetrads. `n` is only needed when `U` has
/// no rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    #[serde(rename = "U", with = "rat_matrix")]
    pub u: Vec<RatVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub offsets: BTreeMap<String, OffsetJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tetrads: BTreeMap<String, TetradJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OffsetJson(#[serde(with = "rat_vec")] pub RatVector);

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn matrix(&self) -> Result<RatMatrix, Error> {
        let n = match (self.u.first(), self.n) {
            (Some(row), Some(n)) if row.len() != n => {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                })
            }
            (Some(row), _) => row.len(),
            (None, n) => n.unwrap_or(0),
        };
        RatMatrix::new(self.u.clone(), n)
    }

    pub fn offset(&self, name: &str) -> Option<&RatVector> {
        self.offsets.get(name).map(|o| &o.0)
    }

    pub fn tetrad(&self, name: &str) -> Result<Option<Tetrad>, Error> {
        self.tetrads
            .get(name)
            .cloned()
            .map(TetradJson::into_tetrad)
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int_vec, ratio};

    #[test]
    fn system_round_trip() {
        let sys = MixedSystem::new(2)
            .with(int_vec(&[1, 0]), Relation::Lt, ratio(-3, 4))
            .with(int_vec(&[0, 1]), Relation::Eq, ratio(5, 1));
        let text = serde_json::to_string(&SystemJson::from(&sys)).unwrap();
        assert!(text.contains("\"-3/4\""));
        assert!(text.contains("\"LT\""));
        let back: SystemJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_system().unwrap(), sys);
    }

    #[test]
    fn tetrad_indices_are_one_based() {
        let t = Tetrad::new(int_vec(&[0, 1, 0, 1]), vec![0], vec![1, 2], vec![3]).unwrap();
        let json = serde_json::to_value(TetradJson::from(&t)).unwrap();
        assert_eq!(json["I"], serde_json::json!([1]));
        assert_eq!(json["K"], serde_json::json!([4]));
        let back: TetradJson = serde_json::from_value(json).unwrap();
        assert_eq!(back.into_tetrad().unwrap(), t);
        let bad = TetradJson {
            a: int_vec(&[0]),
            i: vec![0],
            j: vec![],
            k: vec![],
        };
        assert!(matches!(bad.into_tetrad(), Err(Error::Parse(_))));
    }

    #[test]
    fn config_accepts_integers_and_strings() {
        let cfg = ConfigFile::parse(
            r#"{"U": [[-1, 0], ["0", 1], [0, "-1"], [1, 1]],
                "offsets": {"a": ["0", "1", 0, "1"], "b1": [0, "3/2", 0, 1]},
                "tetrads": {"tri": {"a": [0, 1, 0, 1], "J": [1, 2, 3, 4]}}}"#,
        )
        .unwrap();
        assert_eq!(cfg.matrix().unwrap().nrows(), 4);
        assert_eq!(cfg.offset("b1").unwrap()[1], ratio(3, 2));
        assert_eq!(cfg.tetrad("tri").unwrap().unwrap(), Tetrad::all_le(int_vec(&[0, 1, 0, 1])));
        let again = ConfigFile::parse(&cfg.to_json()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn arrangement_round_trip() {
        let arr = Arrangement::new(
            RatMatrix::from_ints(&[&[1, 0], &[1, 1]]),
            vec![ratio(1, 3), ratio(-2, 1)],
        )
        .unwrap();
        let text = serde_json::to_string(&ArrangementJson::from(&arr)).unwrap();
        let back: ArrangementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_arrangement().unwrap(), arr);
    }
}
