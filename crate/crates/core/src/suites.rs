//! Seeded property suites behind `verify`. Every suite returns a report that
//! lists each failed check with the offending instance.

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangement::{
    combinatorially_equivalent, multi_pair, normally_equivalent_translations, semilattice_equivalent,
    sign_equivalent, Arrangement, SignSet,
};
use crate::deformations::{coning, coning_signs_by_transport, elementary_lift, parallel_translation, transport_sign_lift};
use crate::derived::{derived_arrangement, Derived};
use crate::error::Error;
use crate::exactla::{add_vec, format_vec, int_vec, scale_vec, sub_vec, Rat, RatMatrix, RatVector};
use crate::om::{
    affine_covectors, all_symmetries, check_covector_axioms, om_equivalent_up_to_symmetry, Axiom, AxiomReport, CovectorSystem,
    Symmetry, SymmetryMode,
};
use crate::operators::{FaceSubset, OperatorContext, SignKind};
use crate::polyhedron::{enumerate_faces, is_bounded, is_empty, normal_fan_equal, ActiveTriple, Role, Tetrad};
use crate::random::{
    random_matrix, random_non_multi, random_permutation, random_roles, random_subset, rng_from_seed, same_face_point,
    small_rat, small_vec, SuiteRng,
};
use crate::sign::SignVector;

pub const SUITES: [&str; 7] = ["thm1_2", "thm1_3", "thm1_4", "thm3_6", "thm4_8", "thm6_2", "axioms"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Fixed `U`; random matrices are drawn per trial when absent.
    pub u: Option<RatMatrix>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub trial: usize,
    pub check: String,
    pub detail: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64, trials: usize) -> Self {
        Self {
            suite: suite.to_string(),
            seed,
            trials,
            checks: 0,
            violations: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn check(&mut self, trial: usize, name: &str, ok: bool, detail: impl FnOnce() -> Value) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                trial,
                check: name.to_string(),
                detail: detail(),
            });
        }
    }

    pub fn absorb(&mut self, other: SuiteReport) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    match name {
        "thm1_2" => thm1_2(cfg),
        "thm1_3" => thm1_3(cfg),
        "thm1_4" => thm1_4(cfg),
        "thm3_6" => thm3_6(cfg),
        "thm4_8" => thm4_8(cfg),
        "thm6_2" => thm6_2(cfg),
        "axioms" => axioms(cfg),
        other => Err(Error::Parse(format!("unknown suite {other:?}"))),
    }
}

fn matrix_json(u: &RatMatrix) -> Value {
    Value::Array(u.rows().iter().map(|r| Value::String(format_vec(r))).collect())
}

fn triple_json(t: &ActiveTriple) -> Value {
    let one = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
    json!({"I": one(&t.i), "J": one(&t.j), "K": one(&t.k)})
}

fn roles_json(roles: &[Role]) -> Value {
    let text: String = roles
        .iter()
        .map(|r| match r {
            Role::Eq => 'I',
            Role::Le => 'J',
            Role::Ge => 'K',
        })
        .collect();
    Value::String(text)
}

/// `U` for one trial: the fixed matrix, or a random one with `m <= 5`,
/// `n <= 3`.
fn trial_matrix(rng: &mut SuiteRng, fixed: Option<&RatMatrix>) -> RatMatrix {
    match fixed {
        Some(u) => u.clone(),
        None => {
            let m = rng.gen_range(2..=5);
            let n = rng.gen_range(1..=3);
            random_matrix(rng, m, n)
        }
    }
}

/// Two offset vectors for the same `U`.
#[derive(Clone, Debug)]
pub struct PairInstance {
    pub u: RatMatrix,
    pub a: RatVector,
    pub b: RatVector,
}

impl PairInstance {
    fn json(&self) -> Value {
        json!({"U": matrix_json(&self.u), "a": format_vec(&self.a), "b": format_vec(&self.b)})
    }

    pub fn translations(&self) -> Result<(Arrangement, Arrangement), Error> {
        Ok((parallel_translation(&self.u, &self.a)?, parallel_translation(&self.u, &self.b)?))
    }

    pub fn conings(&self) -> Result<(Arrangement, Arrangement), Error> {
        Ok((coning(&self.u, &self.a)?.cone, coning(&self.u, &self.b)?.cone))
    }

    pub fn lifts(&self) -> Result<(Arrangement, Arrangement), Error> {
        Ok((elementary_lift(&self.u, &self.a)?.lift, elementary_lift(&self.u, &self.b)?.lift))
    }
}

/// `b` is a same-face point, an independent point, or `a` with one entry
/// moved, in turn.
pub fn pair_instances(rng: &mut SuiteRng, trials: usize, fixed: Option<&RatMatrix>) -> Result<Vec<PairInstance>, Error> {
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let u = trial_matrix(rng, fixed);
        let m = u.nrows();
        let a = small_vec(rng, m);
        let b = match trial % 3 {
            0 => same_face_point(rng, &Derived::new(&u)?, &u, &a)?,
            1 => small_vec(rng, m),
            _ => {
                let mut b = a.clone();
                let idx = rng.gen_range(0..m);
                b[idx] += small_rat(rng);
                b
            }
        };
        out.push(PairInstance { u, a, b });
    }
    Ok(out)
}

/// Same open derived face iff sign equivalent translations, conings and lifts.
pub fn check_thm1_4(instances: &[PairInstance], report: &mut SuiteReport) -> Result<(), Error> {
    for (trial, inst) in instances.iter().enumerate() {
        let derived = Derived::new(&inst.u)?;
        let same = derived.same_open_face(&inst.a, &inst.b)?;
        let (ta, tb) = inst.translations()?;
        let (ca, cb) = inst.conings()?;
        let (la, lb) = inst.lifts()?;
        let verdicts = [
            ("translation", sign_equivalent(&ta, &tb)?),
            ("coning", sign_equivalent(&ca, &cb)?),
            ("lift", sign_equivalent(&la, &lb)?),
        ];
        for (kind, eq) in verdicts {
            report.check(trial, &format!("same open face <=> sign equivalent {kind}s"), eq == same, || {
                json!({"instance": inst.json(), "same_open_face": same, "sign_equivalent": eq,
                       "face_a": derived.locate(&inst.a).map(|s| s.to_string()).unwrap_or_default(),
                       "face_b": derived.locate(&inst.b).map(|s| s.to_string()).unwrap_or_default()})
            });
        }
    }
    Ok(())
}

/// Sign ⇒ combinatorial ⇒ semi-lattice equivalence on every pair.
pub fn check_chain(pairs: &[(Arrangement, Arrangement)], report: &mut SuiteReport) -> Result<(), Error> {
    for (trial, (x, y)) in pairs.iter().enumerate() {
        let sign = sign_equivalent(x, y)?;
        let comb = combinatorially_equivalent(x, y)?;
        let dump = || {
            json!({"U1": matrix_json(x.u()), "a1": format_vec(x.a()),
                   "U2": matrix_json(y.u()), "a2": format_vec(y.a())})
        };
        report.check(trial, "sign => combinatorial", !sign || comb, dump);
        if comb {
            let semi = semilattice_equivalent(x, y)?;
            report.check(trial, "combinatorial => semi-lattice", semi, dump);
        } else {
            report.checks += 1;
        }
    }
    Ok(())
}

pub fn chain_pairs(instances: &[PairInstance]) -> Result<Vec<(Arrangement, Arrangement)>, Error> {
    let mut pairs = Vec::with_capacity(3 * instances.len());
    for inst in instances {
        pairs.push(inst.translations()?);
        pairs.push(inst.conings()?);
        pairs.push(inst.lifts()?);
    }
    Ok(pairs)
}

pub fn thm1_4(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rng = rng_from_seed(cfg.seed);
    let instances = pair_instances(&mut rng, cfg.trials, cfg.u.as_ref())?;
    let mut report = SuiteReport::new("thm1_4", cfg.seed, cfg.trials);
    check_thm1_4(&instances, &mut report)?;
    check_chain(&chain_pairs(&instances)?, &mut report)?;
    Ok(report)
}

/// Same open face ⇒ combinatorially equivalent translations, conings and
/// lifts, and normally equivalent translations when `U` is not multi.
pub fn thm1_3(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rng = rng_from_seed(cfg.seed);
    let mut report = SuiteReport::new("thm1_3", cfg.seed, cfg.trials);
    for trial in 0..cfg.trials {
        let u = trial_matrix(&mut rng, cfg.u.as_ref());
        let a = small_vec(&mut rng, u.nrows());
        let b = same_face_point(&mut rng, &Derived::new(&u)?, &u, &a)?;
        let inst = PairInstance { u, a, b };
        for (kind, (x, y)) in [
            ("translation", inst.translations()?),
            ("coning", inst.conings()?),
            ("lift", inst.lifts()?),
        ] {
            let comb = combinatorially_equivalent(&x, &y)?;
            report.check(trial, &format!("combinatorially equivalent {kind}s"), comb, || inst.json());
        }
        if multi_pair(&inst.u).is_none() {
            let normal = normally_equivalent_translations(&inst.u, &inst.a, &inst.b)?;
            report.check(trial, "normally equivalent translations", normal, || inst.json());
        }
    }
    Ok(report)
}

/// Offsets for which `P(a, I, J, K)` contains `x`: tight on `I`, with random
/// nonnegative slack on `J` and `K`.
fn anchored_offsets(rng: &mut SuiteRng, u: &RatMatrix, roles: &[Role], x: &[Rat]) -> RatVector {
    let ux = u.mul_vec(x);
    ux.into_iter()
        .zip(roles)
        .map(|(v, role)| {
            let slack = Rat::new(rng.gen_range(0..=3).into(), rng.gen_range(1..=2).into());
            match role {
                Role::Eq => v,
                Role::Le => v + slack,
                Role::Ge => v - slack,
            }
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct TetradInstance {
    pub u: RatMatrix,
    pub roles: Vec<Role>,
    pub a: RatVector,
    pub b: RatVector,
}

impl TetradInstance {
    pub fn tetrads(&self) -> Result<(Tetrad, Tetrad), Error> {
        Ok((
            Tetrad::from_roles(self.a.clone(), &self.roles)?,
            Tetrad::from_roles(self.b.clone(), &self.roles)?,
        ))
    }

    fn json(&self) -> Value {
        json!({"U": matrix_json(&self.u), "roles": roles_json(&self.roles),
               "a": format_vec(&self.a), "b": format_vec(&self.b)})
    }
}

/// `a` is anchored at a random point on even trials, free on odd ones; `b` is
/// drawn from the open derived face of `a`.
pub fn tetrad_instances(rng: &mut SuiteRng, trials: usize, fixed: Option<&RatMatrix>) -> Result<Vec<TetradInstance>, Error> {
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let u = trial_matrix(rng, fixed);
        let roles = random_roles(rng, u.nrows());
        let a = if trial % 2 == 0 {
            let x = small_vec(rng, u.ncols());
            anchored_offsets(rng, &u, &roles, &x)
        } else {
            small_vec(rng, u.nrows())
        };
        let b = same_face_point(rng, &Derived::new(&u)?, &u, &a)?;
        out.push(TetradInstance { u, roles, a, b });
    }
    Ok(out)
}

/// Equal active-triple sets and normal fans for offsets in one open face.
pub fn check_thm1_2(instances: &[TetradInstance], report: &mut SuiteReport) -> Result<(), Error> {
    for (trial, inst) in instances.iter().enumerate() {
        let (ta, tb) = inst.tetrads()?;
        let (ea, eb) = (is_empty(&inst.u, &ta)?, is_empty(&inst.u, &tb)?);
        report.check(trial, "emptiness agrees", ea == eb, || inst.json());
        if ea || eb {
            continue;
        }
        let fa: Vec<ActiveTriple> = enumerate_faces(&inst.u, &ta)?.into_iter().map(|f| f.active).collect();
        let fb: Vec<ActiveTriple> = enumerate_faces(&inst.u, &tb)?.into_iter().map(|f| f.active).collect();
        report.check(trial, "equal active triples", fa == fb, || {
            json!({"instance": inst.json(),
                   "triples_a": fa.iter().map(triple_json).collect::<Vec<_>>(),
                   "triples_b": fb.iter().map(triple_json).collect::<Vec<_>>()})
        });
        let fans = normal_fan_equal(&inst.u, &ta, &tb)?;
        report.check(trial, "equal normal fans", fans, || inst.json());
    }
    Ok(())
}

pub fn thm1_2(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rng = rng_from_seed(cfg.seed);
    let instances = tetrad_instances(&mut rng, cfg.trials, cfg.u.as_ref())?;
    let mut report = SuiteReport::new("thm1_2", cfg.seed, cfg.trials);
    check_thm1_2(&instances, &mut report)?;
    let mut pairs = Vec::new();
    for inst in &instances {
        pairs.push((parallel_translation(&inst.u, &inst.a)?, parallel_translation(&inst.u, &inst.b)?));
    }
    check_chain(&pairs, &mut report)?;
    Ok(report)
}

/// Boundedness agrees across one open face.
pub fn check_boundedness_pairs(instances: &[TetradInstance], report: &mut SuiteReport) -> Result<(), Error> {
    for (trial, inst) in instances.iter().enumerate() {
        let (ta, tb) = inst.tetrads()?;
        if is_empty(&inst.u, &ta)? || is_empty(&inst.u, &tb)? {
            continue;
        }
        let (ba, bb) = (is_bounded(&inst.u, &ta)?, is_bounded(&inst.u, &tb)?);
        report.check(trial, "boundedness agrees on the open face", ba == bb, || {
            json!({"instance": inst.json(), "bounded_a": ba, "bounded_b": bb})
        });
    }
    Ok(())
}

/// Ten points on a segment inside `C(I, J, K)`, whose ends are anchored at
/// two random points. Every point must give a nonempty polyhedron, all with
/// one boundedness flag.
pub fn check_cone_sweep(rng: &mut SuiteRng, trial: usize, inst: &TetradInstance, report: &mut SuiteReport) -> Result<(), Error> {
    let n = inst.u.ncols();
    let (x0, x1) = (small_vec(rng, n), small_vec(rng, n));
    let a0 = anchored_offsets(rng, &inst.u, &inst.roles, &x0);
    let a1 = anchored_offsets(rng, &inst.u, &inst.roles, &x1);
    let step = sub_vec(&a1, &a0);
    let mut flags = Vec::with_capacity(10);
    for k in 0..10 {
        let at = add_vec(&a0, &scale_vec(&step, &Rat::new(k.into(), 9.into())));
        let t = Tetrad::from_roles(at.clone(), &inst.roles)?;
        if is_empty(&inst.u, &t)? {
            report.check(trial, "sweep stays in C(I,J,K)", false, || {
                json!({"U": matrix_json(&inst.u), "roles": roles_json(&inst.roles), "a_t": format_vec(&at)})
            });
            return Ok(());
        }
        flags.push(is_bounded(&inst.u, &t)?);
    }
    report.check(trial, "boundedness constant along the sweep", flags.iter().all(|&f| f == flags[0]), || {
        json!({"U": matrix_json(&inst.u), "roles": roles_json(&inst.roles),
               "a0": format_vec(&a0), "a1": format_vec(&a1), "flags": flags})
    });
    Ok(())
}

pub fn thm3_6(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rng = rng_from_seed(cfg.seed);
    let instances = tetrad_instances(&mut rng, cfg.trials, cfg.u.as_ref())?;
    let mut report = SuiteReport::new("thm3_6", cfg.seed, cfg.trials);
    check_boundedness_pairs(&instances, &mut report)?;
    for (trial, inst) in instances.iter().enumerate() {
        check_cone_sweep(&mut rng, trial, inst, &mut report)?;
    }
    Ok(report)
}

/// The arrangements `{x=0, y=0, x+y=2}` and `{y=0, x=0, -x-y=-2}`.
pub fn reorientation_example() -> (Arrangement, Arrangement) {
    let a = Arrangement::new(RatMatrix::from_ints(&[&[1, 0], &[0, 1], &[1, 1]]), int_vec(&[0, 0, 2]))
        .expect("nonzero rows");
    let b = Arrangement::new(RatMatrix::from_ints(&[&[0, 1], &[1, 0], &[-1, -1]]), int_vec(&[0, 0, -2]))
        .expect("nonzero rows");
    (a, b)
}

pub fn covectors_of(arr: &Arrangement) -> CovectorSystem {
    CovectorSystem::new(arr.m(), arr.sign_set()).expect("sign vectors have length m")
}

/// Normal equivalence of translations against sign equivalence.
pub fn check_cor4_7(instances: &[PairInstance], report: &mut SuiteReport) -> Result<(), Error> {
    for (trial, inst) in instances.iter().enumerate() {
        let normal = normally_equivalent_translations(&inst.u, &inst.a, &inst.b)?;
        let (x, y) = inst.translations()?;
        let sign = sign_equivalent(&x, &y)?;
        report.check(trial, "normally equivalent <=> sign equivalent", normal == sign, || {
            json!({"instance": inst.json(), "normal": normal, "sign": sign})
        });
    }
    Ok(())
}

/// Non-multi instances with `m <= 5`, `2 <= n <= 3`.
pub fn non_multi_instances(rng: &mut SuiteRng, trials: usize, fixed: Option<&RatMatrix>) -> Result<Vec<PairInstance>, Error> {
    let mut out = Vec::with_capacity(trials);
    for trial in 0..trials {
        let u = match fixed {
            Some(u) => u.clone(),
            None => {
                let n = rng.gen_range(2..=3);
                let m = rng.gen_range(2..=5);
                random_non_multi(rng, m, n)
            }
        };
        let a = small_vec(rng, u.nrows());
        let b = match trial % 3 {
            0 => same_face_point(rng, &Derived::new(&u)?, &u, &a)?,
            1 => small_vec(rng, u.nrows()),
            _ => {
                let mut b = a.clone();
                let idx = rng.gen_range(0..u.nrows());
                b[idx] += small_rat(rng);
                b
            }
        };
        out.push(PairInstance { u, a, b });
    }
    Ok(out)
}

pub fn thm4_8(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rng = rng_from_seed(cfg.seed);
    let mut report = SuiteReport::new("thm4_8", cfg.seed, cfg.trials);
    let (x, y) = reorientation_example();
    let (lx, ly) = (covectors_of(&x), covectors_of(&y));
    report.check(0, "example signs differ", lx != ly, || json!(null));
    // x <-> y fixes the first arrangement, so (id, {3}) is found before
    // (swap(1,2), {3}); both carry one sign set onto the other
    let found = all_symmetries(&lx, &ly, SymmetryMode::RelabelAndReorient)?;
    let expected = Symmetry {
        perm: vec![1, 0, 2],
        reorientation: vec![2],
    };
    let valid = !found.is_empty() && found.iter().all(|s| lx.transform(s) == ly);
    report.check(0, "example symmetry swap(1,2) with S = {3} is found", valid && found.contains(&expected), || {
        json!({"found": found.iter().map(|s| s.to_string()).collect::<Vec<_>>()})
    });
    let fixed = match cfg.u.as_ref() {
        Some(u) if multi_pair(u).is_some() => {
            report
                .notes
                .push("configured U is a multi-arrangement; random non-multi matrices used instead".into());
            None
        }
        other => other,
    };
    let instances = non_multi_instances(&mut rng, cfg.trials, fixed)?;
    check_cor4_7(&instances, &mut report)?;
    for (trial, inst) in instances.iter().enumerate() {
        let m = inst.u.nrows();
        let perm = random_permutation(&mut rng, m);
        let flip = random_subset(&mut rng, m);
        let (x, _) = inst.translations()?;
        let moved = x.relabel(&perm).reorient(&flip);
        let (lx, lm) = (covectors_of(&x), covectors_of(&moved));
        let found = om_equivalent_up_to_symmetry(&lx, &lm, SymmetryMode::RelabelAndReorient)?;
        let ok = match &found {
            Some(sym) => lx.transform(sym) == lm,
            None => false,
        };
        report.check(trial, "relabeled and reoriented translation is recovered", ok, || {
            json!({"instance": inst.json(), "perm": perm.iter().map(|p| p + 1).collect::<Vec<_>>(),
                   "reoriented": flip.iter().map(|p| p + 1).collect::<Vec<_>>()})
        });
    }
    Ok(report)
}

pub fn u_ex() -> RatMatrix {
    RatMatrix::from_ints(&[&[-1, 0], &[0, 1], &[0, -1], &[1, 1]])
}

/// Seeded unions of at least two open faces.
pub fn sample_unions(rng: &mut SuiteRng, faces: usize, count: usize) -> Vec<FaceSubset> {
    if faces < 2 {
        return Vec::new();
    }
    (0..count)
        .map(|_| {
            let size = rng.gen_range(2..=faces.min(5));
            let mut subset = FaceSubset::new();
            while subset.len() < size {
                subset.insert(rng.gen_range(0..faces));
            }
            subset
        })
        .collect()
}

/// Faces with the same sign set as `f`: `{f}`, or for lifts `{f, -f}`, since
/// `A^a` and `A^{-a}` are mirror images in `x_{n+1}`.
pub fn sign_class(ctx: &OperatorContext, kind: SignKind, f: usize) -> FaceSubset {
    let mut class = FaceSubset::from([f]);
    if kind == SignKind::Lift {
        let opposite = ctx
            .face_index(&ctx.faces()[f].sign.neg())
            .expect("the derived arrangement is central");
        class.insert(opposite);
    }
    class
}

/// For lifts the lineality face gives `sign(A_o)`, which every lift contains
/// through its slice `x_{n+1} = 0`.
fn is_lift_lineality(ctx: &OperatorContext, kind: SignKind, f: usize) -> bool {
    kind == SignKind::Lift && ctx.faces()[f].sign.is_zero()
}

/// `Face ∘ Sign` fixes exactly the single open faces and no two faces have
/// comparable sign sets. For lifts the classes `{F, -F}` play the role of
/// single faces and the lineality face lies below every other face.
pub fn check_thm6_2(
    ctx: &OperatorContext,
    kind: SignKind,
    unions: &[FaceSubset],
    label: &str,
    report: &mut SuiteReport,
) -> Result<(), Error> {
    let faces = ctx.faces();
    let names = |set: &FaceSubset| set.iter().map(|&g| faces[g].sign.to_string()).collect::<Vec<_>>();
    for f in 0..faces.len() {
        let image = ctx.face_operator_set(&ctx.sign_operator(&FaceSubset::from([f]))?);
        let expected = if is_lift_lineality(ctx, kind, f) {
            ctx.all_faces()
        } else {
            sign_class(ctx, kind, f)
        };
        let ok = image == expected && (expected.len() == faces.len() || ctx.fixed_point_check(&expected)?);
        report.check(f, &format!("{label}: open face is a fixed point"), ok, || {
            json!({"face": faces[f].sign.to_string(), "representative": format_vec(&faces[f].representative),
                   "image": names(&image)})
        });
    }
    for (trial, subset) in unions.iter().enumerate() {
        let first = *subset.iter().next().expect("nonempty union");
        if *subset == sign_class(ctx, kind, first) {
            continue;
        }
        let fixed = ctx.fixed_point_check(subset)?;
        report.check(trial, &format!("{label}: union of faces is not a fixed point"), !fixed, || {
            json!({"faces": names(subset)})
        });
    }
    for f in 0..faces.len() {
        if is_lift_lineality(ctx, kind, f) {
            continue;
        }
        let class = sign_class(ctx, kind, f);
        for g in 0..faces.len() {
            if class.contains(&g) {
                report.check(f, &format!("{label}: sign class shares one sign set"), ctx.sign_set(f) == ctx.sign_set(g), || {
                    json!({"face": faces[f].sign.to_string(), "partner": faces[g].sign.to_string()})
                });
                continue;
            }
            let contained = ctx.sign_set(f).is_subset(ctx.sign_set(g));
            report.check(f, &format!("{label}: sign sets are incomparable"), !contained, || {
                json!({"inner": faces[f].sign.to_string(), "outer": faces[g].sign.to_string()})
            });
        }
    }
    Ok(())
}

pub fn thm6_2(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rng = rng_from_seed(cfg.seed);
    let u = cfg.u.clone().unwrap_or_else(u_ex);
    let mut report = SuiteReport::new("thm6_2", cfg.seed, cfg.trials);
    for (kind, label) in [
        (SignKind::Translation, "translation"),
        (SignKind::Coning, "coning"),
        (SignKind::Lift, "lift"),
    ] {
        let ctx = OperatorContext::new(&u, kind)?;
        let unions = sample_unions(&mut rng, ctx.faces().len(), cfg.trials);
        check_thm6_2(&ctx, kind, &unions, label, &mut report)?;
    }
    Ok(report)
}

/// Drops the zero vector, one covector `X` (keeping `-X`), or a composition
/// `Z = X ∘ Y` together with `-Z`. Each mutation has a known first failure.
pub fn mutations(l: &CovectorSystem) -> Vec<(Axiom, CovectorSystem)> {
    let m = l.m();
    let covectors = l.covectors();
    let without = |drop: &[&SignVector]| {
        let kept: SignSet = covectors.iter().filter(|c| !drop.contains(c)).cloned().collect();
        CovectorSystem::new(m, kept).expect("same ground set")
    };
    let mut out = Vec::new();
    let zero = SignVector::zeros(m);
    out.push((Axiom::Zero, without(&[&zero])));
    if let Some(x) = covectors.iter().find(|c| !c.is_zero()) {
        out.push((Axiom::Symmetry, without(&[x])));
    }
    'outer: for x in covectors {
        for y in covectors {
            let z = x.compose(y);
            let nz = z.neg();
            if [&z, &nz].contains(&x) || [&z, &nz].contains(&y) {
                continue;
            }
            out.push((Axiom::Composition, without(&[&z, &nz])));
            break 'outer;
        }
    }
    out
}

/// Axioms on conings, lifts and the derived arrangement; affine restriction
/// and transport agree with direct enumeration; mutations are caught.
pub fn check_axioms(u: &RatMatrix, a: &[Rat], trial: usize, report: &mut SuiteReport) -> Result<(), Error> {
    let dump = || json!({"U": matrix_json(u), "a": format_vec(a)});
    let cone = coning(u, a)?.cone;
    let lift = elementary_lift(u, a)?.lift;
    let base = parallel_translation(u, a)?.sign_set();
    let lc = covectors_of(&cone);
    let ll = covectors_of(&lift);
    for (name, l) in [("coning", &lc), ("lift", &ll)] {
        let verdict = check_covector_axioms(l);
        report.check(trial, &format!("{name} satisfies the covector axioms"), verdict == AxiomReport::Ok, || {
            json!({"instance": dump(), "report": format!("{verdict:?}")})
        });
    }
    let affine = affine_covectors(&lc, u.nrows())?;
    report.check(trial, "affine restriction of the coning is sign(A_a)", affine.covectors() == &base, dump);
    let transported = coning_signs_by_transport(u, a)?;
    report.check(trial, "transport to the coning matches enumeration", &transported == lc.covectors(), dump);
    report.check(
        trial,
        "transport to the lift matches enumeration",
        &transport_sign_lift(&transported) == ll.covectors(),
        dump,
    );
    for (axiom, mutated) in mutations(&lc) {
        let verdict = check_covector_axioms(&mutated);
        let ok = matches!(&verdict, AxiomReport::Violation { axiom: found, .. } if *found == axiom);
        report.check(trial, &format!("mutation caught as {axiom:?}"), ok, || {
            json!({"instance": dump(), "report": format!("{verdict:?}")})
        });
    }
    Ok(())
}

pub fn axioms(cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let mut rng = rng_from_seed(cfg.seed);
    let mut report = SuiteReport::new("axioms", cfg.seed, cfg.trials);
    let fixed_u = cfg.u.clone().unwrap_or_else(u_ex);
    let derived = covectors_of(&derived_arrangement(&fixed_u)?);
    let verdict = check_covector_axioms(&derived);
    report.check(0, "derived arrangement satisfies the covector axioms", verdict == AxiomReport::Ok, || {
        json!({"U": matrix_json(&fixed_u), "report": format!("{verdict:?}")})
    });
    for trial in 0..cfg.trials {
        let u = trial_matrix(&mut rng, cfg.u.as_ref());
        let a = small_vec(&mut rng, u.nrows());
        check_axioms(&u, &a, trial, &mut report)?;
    }
    Ok(report)
}

/// Runs every suite with the same configuration.
pub fn all(cfg: &SuiteConfig) -> Result<Vec<SuiteReport>, Error> {
    SUITES.iter().map(|name| run_suite(name, cfg)).collect()
}
