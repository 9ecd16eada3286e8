//! Reading the config file and resolving `--a`, `--b` and tetrad options.

use std::fs;
use std::path::Path;

use halfspace_lab::exactla::parse_vec;
use halfspace_lab::json::ConfigFile;
use halfspace_lab::polyhedron::{Role, Tetrad};
use halfspace_lab::{Error, RatMatrix, RatVector, SignVector};

use crate::{Global, RoleArgs};

pub fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn load_config(global: &Global) -> Result<Option<ConfigFile>, Error> {
    global
        .config
        .as_deref()
        .map(|p| ConfigFile::parse(&read_text(p)?))
        .transpose()
}

pub struct Input {
    pub config: Option<ConfigFile>,
}

impl Input {
    pub fn matrix(&self) -> Result<RatMatrix, Error> {
        self.config
            .as_ref()
            .ok_or_else(|| Error::Parse("--config is required".into()))?
            .matrix()
    }

    /// A literal vector, or the name of an offset or tetrad in the config.
    fn vector(&self, text: &str) -> Result<RatVector, Error> {
        if let Some(cfg) = &self.config {
            if let Some(v) = cfg.offset(text) {
                return Ok(v.clone());
            }
            if let Some(t) = cfg.tetrad(text)? {
                return Ok(t.a);
            }
        }
        parse_vec(text)
    }

    fn sized(&self, flag: &str, value: Option<&String>) -> Result<RatVector, Error> {
        let text = value.ok_or_else(|| Error::Parse(format!("--{flag} is required")))?;
        let v = self.vector(text)?;
        let m = self.matrix()?.nrows();
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
        Ok(v)
    }

    pub fn a(&self, global: &Global) -> Result<RatVector, Error> {
        self.sized("a", global.a.as_ref())
    }

    pub fn b(&self, global: &Global) -> Result<RatVector, Error> {
        self.sized("b", global.b.as_ref())
    }

    fn named_tetrad(&self, name: &str) -> Result<Tetrad, Error> {
        self.config
            .as_ref()
            .ok_or_else(|| Error::Parse("--config is required".into()))?
            .tetrad(name)?
            .ok_or_else(|| Error::Parse(format!("no tetrad named {name:?}")))
    }

    fn roles(&self, roles: &RoleArgs, m: usize) -> Result<Vec<Role>, Error> {
        let mut out = vec![Role::Le; m];
        for (list, role) in [(&roles.eq, Role::Eq), (&roles.ge, Role::Ge)] {
            for &i in list {
                if i == 0 || i > m {
                    return Err(Error::Parse(format!("row {i} outside 1..={m}")));
                }
                if out[i - 1] != Role::Le {
                    return Err(Error::Parse(format!("row {i} listed twice")));
                }
                out[i - 1] = role;
            }
        }
        Ok(out)
    }

    /// The tetrad named by `--tetrad`, or `--a` with the role lists.
    pub fn tetrad_a(&self, global: &Global, roles: &RoleArgs) -> Result<Tetrad, Error> {
        match &roles.tetrad {
            Some(name) => self.named_tetrad(name),
            None => {
                let a = self.a(global)?;
                let r = self.roles(roles, a.len())?;
                Tetrad::from_roles(a, &r)
            }
        }
    }

    /// The tetrad named by `--tetrad-b`, or `--b` with the roles of the first.
    pub fn tetrad_b(&self, global: &Global, roles: &RoleArgs, first: &Tetrad) -> Result<Tetrad, Error> {
        match &roles.tetrad_b {
            Some(name) => self.named_tetrad(name),
            None => Ok(first.with_offsets(self.b(global)?)),
        }
    }
}

/// A JSON list of sign strings such as `["0,0", "+,-"]`.
pub fn read_covectors(path: &Path) -> Result<Vec<SignVector>, Error> {
    let text = read_text(path)?;
    let raw: Vec<String> = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    raw.iter().map(|s| s.parse()).collect()
}
