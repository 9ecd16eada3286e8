//! Mixed linear systems: exact feasibility with Farkas certificates, a small
//! exact LP solver, and the sign-pattern search shared by face enumeration.
//!
//! The solver is a dense two-phase tableau simplex with Bland's rule. Free
//! variables are split as `x = x+ - x-`; every row gets an artificial in phase
//! one, and infeasibility certificates are read off the final phase-one
//! reduced costs.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactla::{dot, is_zero_vec, primitive_integer_vector, Rat, RatMatrix, RatVector};
use crate::sign::{Sign, SignVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "EQ")]
    Eq,
    #[serde(rename = "LE")]
    Le,
    #[serde(rename = "LT")]
    Lt,
    #[serde(rename = "GE")]
    Ge,
    #[serde(rename = "GT")]
    Gt,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }

    /// Whether `lhs (rel) rhs` holds.
    pub fn holds(self, lhs: &Rat, rhs: &Rat) -> bool {
        match self {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
            Relation::Lt => lhs < rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Gt => lhs > rhs,
        }
    }

    /// The relation `sign(<u,x> - a) = s` as a constraint on `x`.
    pub fn for_sign(s: Sign) -> Relation {
        match s {
            Sign::Zero => Relation::Eq,
            Sign::Minus => Relation::Lt,
            Sign::Plus => Relation::Gt,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub normal: RatVector,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(normal: RatVector, relation: Relation, rhs: Rat) -> Self {
        Self {
            normal,
            relation,
            rhs,
        }
    }

    pub fn holds_at(&self, x: &[Rat]) -> bool {
        self.relation.holds(&dot(&self.normal, x), &self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedSystem {
    n: usize,
    rows: Vec<Constraint>,
}

impl MixedSystem {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(n: usize, rows: Vec<Constraint>) -> Result<Self, Error> {
        let mut sys = Self::new(n);
        for row in rows {
            sys.push_constraint(row)?;
        }
        Ok(sys)
    }

    pub fn push(&mut self, normal: RatVector, relation: Relation, rhs: Rat) -> Result<(), Error> {
        self.push_constraint(Constraint::new(normal, relation, rhs))
    }

    pub fn push_constraint(&mut self, row: Constraint) -> Result<(), Error> {
        if row.normal.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: row.normal.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn with(mut self, normal: RatVector, relation: Relation, rhs: Rat) -> Self {
        self.push(normal, relation, rhs).expect("dimension mismatch");
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn has_strict(&self) -> bool {
        self.rows.iter().any(|r| r.relation.is_strict())
    }

    pub fn is_satisfied_by(&self, x: &[Rat]) -> bool {
        x.len() == self.n && self.rows.iter().all(|r| r.holds_at(x))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateKind {
    /// `sum y_i rhs_i < 0`.
    StrictlyNegative,
    /// `sum y_i rhs_i = 0` and some strict row carries a nonzero multiplier.
    ZeroWithStrictSupport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FarkasCertificate {
    pub multipliers: RatVector,
    pub kind: CertificateKind,
}

impl FarkasCertificate {
    /// Checks every certificate identity exactly against `sys`.
    pub fn verify(&self, sys: &MixedSystem) -> Result<(), String> {
        let y = &self.multipliers;
        if y.len() != sys.len() {
            return Err(format!("{} multipliers for {} rows", y.len(), sys.len()));
        }
        for (i, (yi, row)) in y.iter().zip(sys.rows()).enumerate() {
            let ok = match row.relation {
                Relation::Eq => true,
                Relation::Le | Relation::Lt => !yi.is_negative(),
                Relation::Ge | Relation::Gt => !yi.is_positive(),
            };
            if !ok {
                return Err(format!("multiplier {i} has the wrong sign"));
            }
        }
        let mut combo = vec![Rat::zero(); sys.n()];
        let mut rhs = Rat::zero();
        for (yi, row) in y.iter().zip(sys.rows()) {
            crate::exactla::add_scaled(&mut combo, yi, &row.normal);
            rhs += yi * &row.rhs;
        }
        if !is_zero_vec(&combo) {
            return Err("multipliers do not cancel the normals".into());
        }
        let strict_support = y
            .iter()
            .zip(sys.rows())
            .any(|(yi, row)| row.relation.is_strict() && !yi.is_zero());
        match self.kind {
            CertificateKind::StrictlyNegative if rhs.is_negative() => Ok(()),
            CertificateKind::ZeroWithStrictSupport if rhs.is_zero() && strict_support => Ok(()),
            _ => Err(format!("combined right-hand side {rhs} does not match {:?}", self.kind)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Feasible(RatVector),
    Infeasible(FarkasCertificate),
}

impl Decision {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Decision::Feasible(_))
    }

    pub fn witness(self) -> Option<RatVector> {
        match self {
            Decision::Feasible(x) => Some(x),
            Decision::Infeasible(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { point: RatVector, value: Rat },
    Unbounded { ray: RatVector },
    Infeasible(FarkasCertificate),
}

struct Tableau {
    rows: Vec<RatVector>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, r: usize) -> &Rat {
        &self.rows[r][self.ncols]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = -row[c].clone();
                crate::exactla::add_scaled(row, &factor, &pivot_row);
            }
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rat], c: usize) -> Rat {
        let mut d = cost[c].clone();
        for (r, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() && !self.rows[r][c].is_zero() {
                d -= &cost[b] * &self.rows[r][c];
            }
        }
        d
    }

    /// Minimizes `cost . z` from the current feasible basis. Returns the
    /// entering column of an unbounded edge on failure.
    fn minimize(&mut self, cost: &[Rat], barred: &[bool]) -> Result<(), usize> {
        loop {
            let entering = (0..self.ncols).find(|&c| {
                !barred[c] && !self.basis.contains(&c) && self.reduced_cost(cost, c).is_negative()
            });
            let Some(c) = entering else {
                return Ok(());
            };
            let mut best: Option<(usize, Rat)> = None;
            for r in 0..self.rows.len() {
                let entry = &self.rows[r][c];
                if !entry.is_positive() {
                    continue;
                }
                let ratio = self.rhs(r) / entry;
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return Err(c),
            }
        }
    }
}

/// Weak rows normalised to `<=` or `=`. `flip` records GE rows that were
/// negated so multipliers can be mapped back.
struct WeakLp {
    n: usize,
    rows: Vec<(RatVector, bool, Rat)>,
    flip: Vec<bool>,
}

impl WeakLp {
    fn from_system(sys: &MixedSystem) -> Self {
        let mut rows = Vec::with_capacity(sys.len());
        let mut flip = Vec::with_capacity(sys.len());
        for row in sys.rows() {
            match row.relation {
                Relation::Eq => {
                    rows.push((row.normal.clone(), true, row.rhs.clone()));
                    flip.push(false);
                }
                Relation::Le | Relation::Lt => {
                    rows.push((row.normal.clone(), false, row.rhs.clone()));
                    flip.push(false);
                }
                Relation::Ge | Relation::Gt => {
                    rows.push((row.normal.iter().map(|v| -v).collect(), false, -row.rhs.clone()));
                    flip.push(true);
                }
            }
        }
        Self {
            n: sys.n(),
            rows,
            flip,
        }
    }

    /// Phase one, optionally followed by maximisation of `objective`.
    /// Infeasibility multipliers are returned in the original row frame.
    fn solve(&self, objective: Option<&[Rat]>) -> RawOutcome {
        let n = self.n;
        let m = self.rows.len();
        let slack_cols: Vec<Option<usize>> = {
            let mut next = 2 * n;
            self.rows
                .iter()
                .map(|(_, is_eq, _)| {
                    if *is_eq {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        };
        let first_art = 2 * n + slack_cols.iter().flatten().count();
        let ncols = first_art + m;
        let mut sigma = Vec::with_capacity(m);
        let mut rows = Vec::with_capacity(m);
        for (r, (normal, _, rhs)) in self.rows.iter().enumerate() {
            let s = if rhs.is_negative() { -Rat::one() } else { Rat::one() };
            let mut row = vec![Rat::zero(); ncols + 1];
            for j in 0..n {
                row[j] = &s * &normal[j];
                row[n + j] = -&row[j];
            }
            if let Some(c) = slack_cols[r] {
                row[c] = s.clone();
            }
            row[first_art + r] = Rat::one();
            row[ncols] = &s * rhs;
            rows.push(row);
            sigma.push(s);
        }
        let mut tab = Tableau {
            rows,
            basis: (first_art..ncols).collect(),
            ncols,
        };
        let mut phase1 = vec![Rat::zero(); ncols];
        for c in phase1.iter_mut().skip(first_art) {
            *c = Rat::one();
        }
        let barred = vec![false; ncols];
        tab.minimize(&phase1, &barred)
            .expect("phase one is bounded below by zero");
        let infeasibility: Rat = (0..m)
            .filter(|&r| tab.basis[r] >= first_art)
            .map(|r| tab.rhs(r).clone())
            .fold(Rat::zero(), |a, b| a + b);
        if infeasibility.is_positive() {
            let y = (0..m)
                .map(|i| {
                    // dual value of row i is c_B B^-1 e_i
                    let pi = (0..m).fold(Rat::zero(), |acc, r| {
                        if tab.basis[r] >= first_art {
                            acc + &tab.rows[r][first_art + i]
                        } else {
                            acc
                        }
                    });
                    let y = -pi * &sigma[i];
                    if self.flip[i] {
                        -y
                    } else {
                        y
                    }
                })
                .collect();
            return RawOutcome::Infeasible(y);
        }
        // Drive zero-level artificials out of the basis where possible.
        for r in 0..m {
            if tab.basis[r] >= first_art {
                if let Some(c) = (0..first_art).find(|&c| !tab.rows[r][c].is_zero()) {
                    tab.pivot(r, c);
                }
            }
        }
        let point = |tab: &Tableau| -> RatVector {
            let mut z = vec![Rat::zero(); ncols];
            for (r, &b) in tab.basis.iter().enumerate() {
                z[b] = tab.rhs(r).clone();
            }
            (0..n).map(|j| &z[j] - &z[n + j]).collect()
        };
        let Some(objective) = objective else {
            return RawOutcome::Optimal(point(&tab));
        };
        let mut cost = vec![Rat::zero(); ncols];
        for j in 0..n {
            cost[j] = -objective[j].clone();
            cost[n + j] = objective[j].clone();
        }
        let barred: Vec<bool> = (0..ncols).map(|c| c >= first_art).collect();
        match tab.minimize(&cost, &barred) {
            Ok(()) => RawOutcome::Optimal(point(&tab)),
            Err(c) => {
                let mut dz = vec![Rat::zero(); ncols];
                dz[c] = Rat::one();
                for (r, &b) in tab.basis.iter().enumerate() {
                    dz[b] = -tab.rows[r][c].clone();
                }
                RawOutcome::Unbounded((0..n).map(|j| &dz[j] - &dz[n + j]).collect())
            }
        }
    }
}

enum RawOutcome {
    Optimal(RatVector),
    Unbounded(RatVector),
    Infeasible(RatVector),
}

/// Rescales by a positive factor to coprime integers; the sign pattern, and
/// hence every certificate identity, is unchanged.
fn tidy(y: RatVector) -> RatVector {
    let Some(first) = y.iter().find(|v| !v.is_zero()) else {
        return y;
    };
    let negative = first.is_negative();
    let p = primitive_integer_vector(&y);
    if negative {
        p.into_iter().map(|v| -v).collect()
    } else {
        p
    }
}

fn certificate(sys: &MixedSystem, y: RatVector) -> FarkasCertificate {
    let y = tidy(y);
    let rhs = y
        .iter()
        .zip(sys.rows())
        .fold(Rat::zero(), |acc, (yi, row)| acc + yi * &row.rhs);
    let kind = if rhs.is_negative() {
        CertificateKind::StrictlyNegative
    } else {
        CertificateKind::ZeroWithStrictSupport
    };
    let cert = FarkasCertificate {
        multipliers: y,
        kind,
    };
    if let Err(why) = cert.verify(sys) {
        panic!("internal error: extracted certificate fails verification: {why}");
    }
    cert
}

/// Decides a mixed system. Exactly one alternative is returned: a point that
/// satisfies every row with its relation, or a verified certificate.
pub fn decide(sys: &MixedSystem) -> Decision {
    let n = sys.n();
    if sys.is_empty() {
        return Decision::Feasible(vec![Rat::zero(); n]);
    }
    let decision = if !sys.has_strict() {
        match WeakLp::from_system(sys).solve(None) {
            RawOutcome::Optimal(x) => Decision::Feasible(x),
            RawOutcome::Infeasible(y) => Decision::Infeasible(certificate(sys, y)),
            RawOutcome::Unbounded(_) => unreachable!("no objective"),
        }
    } else {
        decide_homogenized(sys)
    };
    if let Decision::Feasible(x) = &decision {
        assert!(
            sys.is_satisfied_by(x),
            "internal error: witness fails substitution"
        );
    }
    decision
}

/// Strict rows via the variable `t >= 1`: `A x <= t a - 1` for strict `<`,
/// and so on. Variables are `(x, t)`; row 0 is `-t <= -1`.
fn decide_homogenized(sys: &MixedSystem) -> Decision {
    let n = sys.n();
    let mut hom = MixedSystem::new(n + 1);
    let mut t_row = vec![Rat::zero(); n + 1];
    t_row[n] = -Rat::one();
    hom.rows.push(Constraint::new(t_row, Relation::Le, -Rat::one()));
    for row in sys.rows() {
        let (negate, relation, rhs) = match row.relation {
            Relation::Eq => (false, Relation::Eq, Rat::zero()),
            Relation::Le => (false, Relation::Le, Rat::zero()),
            Relation::Lt => (false, Relation::Le, -Rat::one()),
            Relation::Ge => (true, Relation::Le, Rat::zero()),
            Relation::Gt => (true, Relation::Le, -Rat::one()),
        };
        let mut normal: RatVector = row.normal.clone();
        normal.push(-row.rhs.clone());
        if negate {
            normal = normal.into_iter().map(|v| -v).collect();
        }
        hom.rows.push(Constraint::new(normal, relation, rhs));
    }
    match WeakLp::from_system(&hom).solve(None) {
        RawOutcome::Optimal(xt) => {
            let t = xt[n].clone();
            Decision::Feasible(xt[..n].iter().map(|v| v / &t).collect())
        }
        RawOutcome::Infeasible(y) => {
            let mapped = sys
                .rows()
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let yi = y[i + 1].clone();
                    match row.relation {
                        Relation::Ge | Relation::Gt => -yi,
                        _ => yi,
                    }
                })
                .collect();
            Decision::Infeasible(certificate(sys, mapped))
        }
        RawOutcome::Unbounded(_) => unreachable!("no objective"),
    }
}

/// Maximises `<objective, x>` over a system without strict rows.
pub fn optimize(objective: &[Rat], sys: &MixedSystem) -> Result<LpOutcome, Error> {
    if objective.len() != sys.n() {
        return Err(Error::DimensionMismatch {
            expected: sys.n(),
            found: objective.len(),
        });
    }
    if sys.has_strict() {
        return Err(Error::InconsistentInput(
            "optimize accepts only EQ, LE and GE rows".into(),
        ));
    }
    if sys.is_empty() {
        return Ok(if is_zero_vec(objective) {
            LpOutcome::Optimal {
                point: vec![Rat::zero(); sys.n()],
                value: Rat::zero(),
            }
        } else {
            LpOutcome::Unbounded {
                ray: objective.to_vec(),
            }
        });
    }
    let outcome = match WeakLp::from_system(sys).solve(Some(objective)) {
        RawOutcome::Optimal(point) => {
            assert!(sys.is_satisfied_by(&point), "internal error: optimum infeasible");
            let value = dot(objective, &point);
            LpOutcome::Optimal { point, value }
        }
        RawOutcome::Unbounded(ray) => {
            debug_assert!(dot(objective, &ray).is_positive());
            LpOutcome::Unbounded { ray }
        }
        RawOutcome::Infeasible(y) => LpOutcome::Infeasible(certificate(sys, y)),
    };
    Ok(outcome)
}

/// Allowed signs for one index of a sign-pattern search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignMask([bool; 3]);

impl SignMask {
    pub const ALL: SignMask = SignMask([true, true, true]);
    pub const ZERO: SignMask = SignMask([true, false, false]);
    pub const ZERO_OR_MINUS: SignMask = SignMask([true, true, false]);
    pub const ZERO_OR_PLUS: SignMask = SignMask([true, false, true]);

    pub fn new(zero: bool, minus: bool, plus: bool) -> Self {
        SignMask([zero, minus, plus])
    }

    pub fn allows(self, s: Sign) -> bool {
        self.0[s.index()]
    }

    /// The convex hull condition implied by the mask, if any.
    fn hull_relation(self) -> Option<Relation> {
        match self.0 {
            [true, false, false] => Some(Relation::Eq),
            [true, true, false] => Some(Relation::Le),
            [true, false, true] => Some(Relation::Ge),
            [false, true, false] => Some(Relation::Lt),
            [false, false, true] => Some(Relation::Gt),
            _ => None,
        }
    }
}

/// Realisable sign patterns of the affine forms `<normals[i], x> - offsets[i]`
/// with entry `i` restricted to `masks[i]`, each paired with a point that
/// realises it. Output is sorted in canonical order.
pub fn realizable_sign_patterns(
    n: usize,
    normals: &[RatVector],
    offsets: &[Rat],
    masks: &[SignMask],
) -> Vec<(SignVector, RatVector)> {
    assert_eq!(normals.len(), offsets.len());
    assert_eq!(normals.len(), masks.len());
    if masks.iter().any(|m| m.0 == [false; 3]) {
        return Vec::new();
    }
    let mut base = Vec::new();
    for ((normal, offset), mask) in normals.iter().zip(offsets).zip(masks) {
        if let Some(rel) = mask.hull_relation() {
            base.push(Constraint::new(normal.clone(), rel, offset.clone()));
        }
    }
    let base_sys = MixedSystem::from_rows(n, base).expect("normal length");
    let Decision::Feasible(root) = decide(&base_sys) else {
        return Vec::new();
    };
    let mut search = PatternSearch {
        normals,
        offsets,
        masks,
        constraints: base_sys,
        signs: Vec::with_capacity(normals.len()),
        out: Vec::new(),
    };
    search.visit(root);
    search.out
}

struct PatternSearch<'a> {
    normals: &'a [RatVector],
    offsets: &'a [Rat],
    masks: &'a [SignMask],
    constraints: MixedSystem,
    signs: Vec<Sign>,
    out: Vec<(SignVector, RatVector)>,
}

impl PatternSearch<'_> {
    fn value(&self, k: usize, x: &[Rat]) -> Rat {
        dot(&self.normals[k], x) - &self.offsets[k]
    }

    fn row(&self, k: usize, s: Sign) -> Constraint {
        Constraint::new(
            self.normals[k].clone(),
            Relation::for_sign(s),
            self.offsets[k].clone(),
        )
    }

    fn solve_with(&mut self, extra: Constraint) -> Option<RatVector> {
        self.constraints.rows.push(extra);
        let found = decide(&self.constraints).witness();
        self.constraints.rows.pop();
        found
    }

    /// Moves from `base` a small step along `dir` and checks the result
    /// against the current constraints plus `extra`.
    fn nudge(&mut self, base: &[Rat], dir: &[Rat], extra: Constraint) -> Option<RatVector> {
        let mut eps = Rat::one();
        for row in self.constraints.rows.iter().chain(std::iter::once(&extra)) {
            let value = dot(&row.normal, base) - &row.rhs;
            let slope = dot(&row.normal, dir);
            if !value.is_zero() && (&value * &slope).is_negative() {
                let bound = value.abs() / slope.abs();
                if bound < eps {
                    eps = bound;
                }
            }
        }
        eps /= Rat::from_integer(2.into());
        let p: RatVector = base.iter().zip(dir).map(|(b, d)| b + &eps * d).collect();
        let ok = extra.holds_at(&p) && self.constraints.is_satisfied_by(&p);
        ok.then_some(p)
    }

    fn equality_normals(&self) -> RatMatrix {
        let rows: Vec<RatVector> = self
            .constraints
            .rows
            .iter()
            .filter(|r| r.relation == Relation::Eq)
            .map(|r| r.normal.clone())
            .collect();
        RatMatrix::new(rows, self.constraints.n()).expect("normal length")
    }

    /// `x` satisfies the constraints fixed so far.
    fn visit(&mut self, x: RatVector) {
        let k = self.signs.len();
        if k == self.normals.len() {
            self.out.push((SignVector(self.signs.clone()), x));
            return;
        }
        let mask = self.masks[k];
        let current = Sign::of(&self.value(k, &x));
        let mut children: [Option<RatVector>; 3] = [None, None, None];
        if current != Sign::Zero {
            let opposite = current.neg();
            let zero = if mask.allows(Sign::Zero) || mask.allows(opposite) {
                self.solve_with(self.row(k, Sign::Zero))
            } else {
                None
            };
            if mask.allows(opposite) {
                if let Some(w0) = &zero {
                    let dir: RatVector = w0.iter().zip(&x).map(|(a, b)| a - b).collect();
                    let extra = self.row(k, opposite);
                    children[opposite.index()] = self
                        .nudge(w0, &dir, extra.clone())
                        .or_else(|| self.solve_with(extra));
                }
            }
            if mask.allows(Sign::Zero) {
                children[0] = zero;
            }
            if mask.allows(current) {
                children[current.index()] = Some(x);
            }
        } else {
            let eq = self.equality_normals();
            let u = &self.normals[k];
            let dir = if eq.row_space_contains(u) {
                None
            } else {
                eq.right_nullspace()
                    .rows()
                    .iter()
                    .find(|d| !dot(u, d).is_zero())
                    .cloned()
            };
            if let Some(d) = dir {
                let towards_plus = dot(u, &d).is_positive();
                for s in [Sign::Minus, Sign::Plus] {
                    if !mask.allows(s) {
                        continue;
                    }
                    let step: RatVector = if (s == Sign::Plus) == towards_plus {
                        d.clone()
                    } else {
                        d.iter().map(|v| -v).collect()
                    };
                    let extra = self.row(k, s);
                    children[s.index()] = self
                        .nudge(&x, &step, extra.clone())
                        .or_else(|| self.solve_with(extra));
                }
            }
            if mask.allows(Sign::Zero) {
                children[0] = Some(x);
            }
        }
        for s in Sign::ALL {
            if let Some(w) = children[s.index()].take() {
                self.constraints.rows.push(self.row(k, s));
                self.signs.push(s);
                self.visit(w);
                self.signs.pop();
                self.constraints.rows.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{int_vec, rat, ratio};

    fn triangle() -> MixedSystem {
        MixedSystem::new(2)
            .with(int_vec(&[-1, 0]), Relation::Le, rat(0))
            .with(int_vec(&[0, 1]), Relation::Le, rat(1))
            .with(int_vec(&[0, -1]), Relation::Le, rat(0))
            .with(int_vec(&[1, 1]), Relation::Le, rat(1))
    }

    #[test]
    fn contradictory_bounds() {
        let sys = MixedSystem::new(1)
            .with(int_vec(&[1]), Relation::Le, rat(0))
            .with(int_vec(&[1]), Relation::Ge, rat(1));
        let Decision::Infeasible(cert) = decide(&sys) else {
            panic!("expected infeasible");
        };
        cert.verify(&sys).unwrap();
        assert_eq!(cert.kind, CertificateKind::StrictlyNegative);
    }

    #[test]
    fn opposite_strict_half_lines() {
        let sys = MixedSystem::new(1)
            .with(int_vec(&[1]), Relation::Lt, rat(0))
            .with(int_vec(&[1]), Relation::Gt, rat(0));
        let Decision::Infeasible(cert) = decide(&sys) else {
            panic!("expected infeasible");
        };
        cert.verify(&sys).unwrap();
        assert_eq!(cert.kind, CertificateKind::ZeroWithStrictSupport);
    }

    #[test]
    fn triangle_is_feasible() {
        let sys = triangle();
        let x = decide(&sys).witness().unwrap();
        assert!(sys.is_satisfied_by(&x));
        let strict = MixedSystem::from_rows(
            2,
            sys.rows()
                .iter()
                .map(|r| Constraint::new(r.normal.clone(), Relation::Lt, r.rhs.clone()))
                .collect(),
        )
        .unwrap();
        let x = decide(&strict).witness().unwrap();
        assert!(strict.is_satisfied_by(&x));
        assert!(strict.is_satisfied_by(&[ratio(1, 4), ratio(1, 4)]));
    }

    #[test]
    fn empty_system_gives_origin() {
        assert_eq!(
            decide(&MixedSystem::new(3)).witness(),
            Some(vec![rat(0), rat(0), rat(0)])
        );
    }

    #[test]
    fn optimize_examples() {
        let sys = MixedSystem::new(1).with(int_vec(&[1]), Relation::Le, rat(1));
        assert_eq!(
            optimize(&int_vec(&[1]), &sys).unwrap(),
            LpOutcome::Optimal {
                point: int_vec(&[1]),
                value: rat(1)
            }
        );
        let sys = MixedSystem::new(1).with(int_vec(&[1]), Relation::Ge, rat(0));
        match optimize(&int_vec(&[1]), &sys).unwrap() {
            LpOutcome::Unbounded { ray } => assert!(ray[0].is_positive()),
            other => panic!("unexpected {other:?}"),
        }
        match optimize(&int_vec(&[0, 1]), &triangle()).unwrap() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(1)),
            other => panic!("unexpected {other:?}"),
        }
        let strict = MixedSystem::new(1).with(int_vec(&[1]), Relation::Lt, rat(1));
        assert!(optimize(&int_vec(&[1]), &strict).is_err());
    }

    #[test]
    fn optimize_reports_infeasibility() {
        let sys = MixedSystem::new(1)
            .with(int_vec(&[1]), Relation::Eq, rat(0))
            .with(int_vec(&[1]), Relation::Eq, rat(1));
        match optimize(&int_vec(&[1]), &sys).unwrap() {
            LpOutcome::Infeasible(cert) => cert.verify(&sys).unwrap(),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sign_patterns_of_two_points_on_a_line() {
        let normals = vec![int_vec(&[1]), int_vec(&[1])];
        let offsets = vec![rat(0), rat(1)];
        let found = realizable_sign_patterns(1, &normals, &offsets, &[SignMask::ALL; 2]);
        let signs: Vec<String> = found.iter().map(|(s, _)| s.compact()).collect();
        assert_eq!(signs, vec!["0-", "--", "+0", "+-", "++"]);
        for (s, x) in &found {
            for k in 0..2 {
                let v = dot(&normals[k], x) - &offsets[k];
                assert_eq!(Sign::of(&v), s.get(k));
            }
        }
    }

    #[test]
    fn masked_patterns_stay_inside() {
        let normals = vec![int_vec(&[-1, 0]), int_vec(&[0, 1]), int_vec(&[0, -1]), int_vec(&[1, 1])];
        let offsets = int_vec(&[0, 1, 0, 1]);
        let found =
            realizable_sign_patterns(2, &normals, &offsets, &[SignMask::ZERO_OR_MINUS; 4]);
        assert_eq!(found.len(), 7);
    }
}
