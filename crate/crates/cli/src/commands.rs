use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde_json::{json, Value};

use halfspace_lab::arrangement::{
    combinatorially_equivalent, normally_equivalent_translations, semilattice_equivalent, sign_equivalent, Arrangement,
    SignSet,
};
use halfspace_lab::deformations::{coning, elementary_lift, face_count_report, parallel_translation};
use halfspace_lab::derived::{derived_arrangement, enumerate_circuits, Derived};
use halfspace_lab::exactla::{format_rat, format_vec};
use halfspace_lab::feasibility::{decide, Decision};
use halfspace_lab::json::{ArrangementJson, CircuitJson, TetradJson};
use halfspace_lab::om::{
    affine_covectors, check_covector_axioms, om_equivalent, om_equivalent_up_to_symmetry, AxiomReport, CovectorSystem,
    SymmetryMode,
};
use halfspace_lab::operators::{FaceSubset, OperatorContext, SignKind};
use halfspace_lab::polyhedron::{
    constraint_system, enumerate_faces, is_bounded, is_empty, normal_fan_equal, ActiveTriple,
};
use halfspace_lab::suites::{self, SuiteConfig, SuiteReport};
use halfspace_lab::{Error, RatMatrix, RatVector, SignVector};

use crate::input::{load_config, read_covectors, Input};
use crate::{Cli, Command, CovectorSource, DeformOp, EquivRelation, Global, Kind, OmOp, OperatorsOp, PolyOp, Source};

pub struct Output {
    pub json: Value,
    pub text: String,
    pub violation: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Self {
            json,
            text,
            violation: false,
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output, Error> {
    let input = Input {
        config: load_config(&cli.global)?,
    };
    let g = &cli.global;
    match &cli.command {
        Command::Circuits => circuits(&input),
        Command::Derived { faces } => derived(&input, *faces),
        Command::Locate => locate(&input, g),
        Command::Faces => faces(&input, g),
        Command::Signs => signs(&input, g),
        Command::Poly { op, roles } => poly(&input, g, *op, roles),
        Command::Equiv { relation, kind } => equiv(&input, g, *relation, *kind),
        Command::Deform { op } => deform(&input, g, *op),
        Command::Om { op } => om(&input, g, op),
        Command::Operators { op } => operators(&input, g, op),
        Command::Verify { suite } => verify(&input, g, suite),
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn list(v: &[usize]) -> String {
    let parts: Vec<String> = one_based(v).iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

fn triple_json(t: &ActiveTriple) -> Value {
    json!({"I": one_based(&t.i), "J": one_based(&t.j), "K": one_based(&t.k)})
}

fn signs_json(set: &SignSet) -> Value {
    Value::Array(set.iter().map(|s| Value::String(s.to_string())).collect())
}

fn lines<'a>(items: impl IntoIterator<Item = &'a SignVector>) -> String {
    items.into_iter().map(|s| format!("{s}\n")).collect()
}

fn circuit_output(u: &RatMatrix) -> Result<(Value, String), Error> {
    let circuits = enumerate_circuits(u)?;
    let json: Vec<CircuitJson> = circuits.iter().map(CircuitJson::from).collect();
    let mut text = String::new();
    for c in &circuits {
        writeln!(text, "{} {}", list(&c.support), format_vec(&c.vector)).unwrap();
    }
    Ok((json!({ "circuits": json }), text))
}

fn circuits(input: &Input) -> Result<Output, Error> {
    let (json, text) = circuit_output(&input.matrix()?)?;
    Ok(Output::new(json, text))
}

fn derived(input: &Input, with_faces: bool) -> Result<Output, Error> {
    let u = input.matrix()?;
    let (mut json, mut text) = circuit_output(&u)?;
    if with_faces {
        let d = Derived::new(&u)?;
        let faces = d.faces()?;
        json["faces"] = faces
            .iter()
            .map(|f| {
                json!({
                    "sign": f.sign,
                    "dim": d.face_dimension(&f.sign),
                    "representative": f.representative.iter().map(format_rat).collect::<Vec<_>>(),
                })
            })
            .collect();
        writeln!(text, "{} open faces", faces.len()).unwrap();
        for f in &faces {
            writeln!(text, "{}  dim {}  {}", f.sign, d.face_dimension(&f.sign), format_vec(&f.representative)).unwrap();
        }
    }
    Ok(Output::new(json, text))
}

fn locate(input: &Input, g: &Global) -> Result<Output, Error> {
    let d = Derived::new(&input.matrix()?)?;
    let sign = d.locate(&input.a(g)?)?;
    let dim = d.face_dimension(&sign);
    Ok(Output::new(
        json!({"sign": sign, "face_dim": dim}),
        format!("{sign}\nface dimension {dim}\n"),
    ))
}

fn translation(input: &Input, g: &Global) -> Result<Arrangement, Error> {
    parallel_translation(&input.matrix()?, &input.a(g)?)
}

fn faces(input: &Input, g: &Global) -> Result<Output, Error> {
    let arr = translation(input, g)?;
    let faces = arr.faces();
    let json: Vec<Value> = faces
        .iter()
        .map(|f| {
            json!({
                "sign": f.sign,
                "dim": f.dimension,
                "witness": f.witness.iter().map(format_rat).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut text = String::new();
    for f in &faces {
        writeln!(text, "{}  dim {}  {}", f.sign, f.dimension, format_vec(&f.witness)).unwrap();
    }
    Ok(Output::new(json!({ "faces": json }), text))
}

fn signs(input: &Input, g: &Global) -> Result<Output, Error> {
    let set = translation(input, g)?.sign_set();
    Ok(Output::new(json!({ "signs": signs_json(&set) }), lines(&set)))
}

fn poly(input: &Input, g: &Global, op: PolyOp, roles: &crate::RoleArgs) -> Result<Output, Error> {
    let u = input.matrix()?;
    let ta = input.tetrad_a(g, roles)?;
    match op {
        PolyOp::Feas => match decide(&constraint_system(&u, &ta)?) {
            Decision::Feasible(x) => Ok(Output::new(
                json!({"feasible": true, "witness": x.iter().map(format_rat).collect::<Vec<_>>()}),
                format!("nonempty\nwitness {}\n", format_vec(&x)),
            )),
            Decision::Infeasible(cert) => Ok(Output::new(
                json!({
                    "feasible": false,
                    "certificate": {
                        "multipliers": cert.multipliers.iter().map(format_rat).collect::<Vec<_>>(),
                        "kind": cert.kind,
                    },
                }),
                format!("empty\ncertificate {} ({:?})\n", format_vec(&cert.multipliers), cert.kind),
            )),
        },
        PolyOp::Bounded => {
            let empty = is_empty(&u, &ta)?;
            let bounded = empty || is_bounded(&u, &ta)?;
            Ok(Output::new(
                json!({"nonempty": !empty, "bounded": bounded}),
                format!("{}\n", if bounded { "bounded" } else { "unbounded" }),
            ))
        }
        PolyOp::Faces => {
            let faces = enumerate_faces(&u, &ta)?;
            let json: Vec<Value> = faces
                .iter()
                .map(|f| {
                    let mut v = triple_json(&f.active);
                    v["dim"] = json!(f.dimension);
                    v["witness"] = json!(f.witness.iter().map(format_rat).collect::<Vec<_>>());
                    v
                })
                .collect();
            let mut text = String::from("nonempty faces only; the polyhedron itself is included\n");
            for f in &faces {
                let t = &f.active;
                writeln!(
                    text,
                    "I={} J={} K={}  dim {}  {}",
                    list(&t.i),
                    list(&t.j),
                    list(&t.k),
                    f.dimension,
                    format_vec(&f.witness)
                )
                .unwrap();
            }
            Ok(Output::new(
                json!({
                    "convention": "the empty face is omitted and the polyhedron itself is included",
                    "tetrad": TetradJson::from(&ta),
                    "faces": json,
                }),
                text,
            ))
        }
        PolyOp::Normalfan => {
            let tb = input.tetrad_b(g, roles, &ta)?;
            let equal = normal_fan_equal(&u, &ta, &tb)?;
            Ok(Output::new(
                json!({"normal_fan_equal": equal}),
                format!("{}\n", if equal { "same normal fan" } else { "different normal fans" }),
            ))
        }
    }
}

fn deformed(u: &RatMatrix, a: &RatVector, kind: Kind) -> Result<Arrangement, Error> {
    Ok(match kind {
        Kind::Translate => parallel_translation(u, a)?,
        Kind::Cone => coning(u, a)?.cone,
        Kind::Lift => elementary_lift(u, a)?.lift,
    })
}

fn equiv(input: &Input, g: &Global, relation: EquivRelation, kind: Kind) -> Result<Output, Error> {
    let u = input.matrix()?;
    let (a, b) = (input.a(g)?, input.b(g)?);
    let (name, equal) = match relation {
        EquivRelation::Normal => {
            if kind != Kind::Translate {
                return Err(Error::Parse("normal equivalence compares translations only".into()));
            }
            ("normal", normally_equivalent_translations(&u, &a, &b)?)
        }
        other => {
            let (x, y) = (deformed(&u, &a, kind)?, deformed(&u, &b, kind)?);
            match other {
                EquivRelation::Sign => ("sign", sign_equivalent(&x, &y)?),
                EquivRelation::Comb => ("combinatorial", combinatorially_equivalent(&x, &y)?),
                _ => ("semilattice", semilattice_equivalent(&x, &y)?),
            }
        }
    };
    Ok(Output::new(
        json!({"relation": name, "equivalent": equal}),
        format!("{}{name} equivalent\n", if equal { "" } else { "not " }),
    ))
}

fn deform(input: &Input, g: &Global, op: DeformOp) -> Result<Output, Error> {
    let u = input.matrix()?;
    let a = input.a(g)?;
    let (kind, report) = match op {
        DeformOp::Counts => {
            let r = face_count_report(&u, &a)?;
            let text = format!(
                "fA {}\nfCone {}\nfLift {}\nidentities {}\n",
                r.f_a,
                r.f_cone,
                r.f_lift,
                match r.identities_hold {
                    Some(true) => "hold",
                    Some(false) => "fail",
                    None => "not applicable",
                }
            );
            return Ok(Output::new(serde_json::to_value(&r).expect("report"), text));
        }
        DeformOp::Translate { report } => (Kind::Translate, report),
        DeformOp::Cone { report } => (Kind::Cone, report),
        DeformOp::Lift { report } => (Kind::Lift, report),
    };
    let arr = deformed(&u, &a, kind)?;
    let mut json = serde_json::to_value(ArrangementJson::from(&arr)).expect("arrangement");
    let mut text = String::new();
    for (i, row) in arr.u().rows().iter().enumerate() {
        writeln!(text, "H{}: {} . x = {}", i + 1, format_vec(row), format_rat(&arr.a()[i])).unwrap();
    }
    if report.is_some() {
        let r = face_count_report(&u, &a)?;
        json["counts"] = serde_json::to_value(&r).expect("report");
        writeln!(text, "fA {} fCone {} fLift {}", r.f_a, r.f_cone, r.f_lift).unwrap();
    }
    Ok(Output::new(json, text))
}

fn covectors_from(input: &Input, g: &Global, source: &CovectorSource, second: bool) -> Result<CovectorSystem, Error> {
    let file = if second { &source.covectors_b } else { &source.covectors };
    if let Some(path) = file {
        let list = read_covectors(path)?;
        let m = list.first().map_or(0, SignVector::len);
        return CovectorSystem::new(m, list.into_iter().collect());
    }
    let u = input.matrix()?;
    let arr = match source.of {
        Source::Derived => derived_arrangement(&u)?,
        Source::Translate => parallel_translation(&u, &if second { input.b(g)? } else { input.a(g)? })?,
        Source::Cone => coning(&u, &if second { input.b(g)? } else { input.a(g)? })?.cone,
        Source::Lift => elementary_lift(&u, &if second { input.b(g)? } else { input.a(g)? })?.lift,
    };
    Ok(suites::covectors_of(&arr))
}

fn om(input: &Input, g: &Global, op: &OmOp) -> Result<Output, Error> {
    match op {
        OmOp::Check { source } => {
            let l = covectors_from(input, g, source, false)?;
            Ok(match check_covector_axioms(&l) {
                AxiomReport::Ok => Output::new(
                    json!({"ok": true, "covectors": l.len()}),
                    format!("all covector axioms hold ({} covectors)\n", l.len()),
                ),
                AxiomReport::Violation {
                    axiom,
                    witnesses,
                    element,
                } => {
                    let element = element.map(|e| e + 1);
                    let mut out = Output::new(
                        json!({"ok": false, "axiom": axiom, "witnesses": witnesses, "element": element}),
                        format!(
                            "{axiom:?} axiom fails\nwitnesses {}\n{}",
                            witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>().join("  "),
                            element.map_or(String::new(), |e| format!("element {e}\n"))
                        ),
                    );
                    out.violation = true;
                    out
                }
            })
        }
        OmOp::Affine { g: element, source } => {
            if *element == 0 {
                return Err(Error::Parse("--g is 1-based".into()));
            }
            let l = covectors_from(input, g, source, false)?;
            let affine = affine_covectors(&l, element - 1)?;
            Ok(Output::new(
                json!({ "covectors": signs_json(affine.covectors()) }),
                lines(affine.covectors()),
            ))
        }
        OmOp::Equiv {
            up_to_symmetry,
            relabel_only,
            source,
        } => {
            let l1 = covectors_from(input, g, source, false)?;
            let l2 = covectors_from(input, g, source, true)?;
            if !up_to_symmetry {
                let equal = om_equivalent(&l1, &l2)?;
                return Ok(Output::new(
                    json!({ "equivalent": equal }),
                    format!("{}\n", if equal { "equal" } else { "different" }),
                ));
            }
            let mode = if *relabel_only {
                SymmetryMode::RelabelOnly
            } else {
                SymmetryMode::RelabelAndReorient
            };
            let found = om_equivalent_up_to_symmetry(&l1, &l2, mode)?;
            let json = match &found {
                Some(s) => json!({
                    "equivalent": true,
                    "symmetry": {"perm": one_based(&s.perm), "reorientation": one_based(&s.reorientation)},
                }),
                None => json!({ "equivalent": false }),
            };
            let text = match &found {
                Some(s) => format!("equivalent via {s}\n"),
                None => "not equivalent\n".to_string(),
            };
            Ok(Output::new(json, text))
        }
    }
}

fn sign_kind(kind: Kind) -> SignKind {
    match kind {
        Kind::Translate => SignKind::Translation,
        Kind::Cone => SignKind::Coning,
        Kind::Lift => SignKind::Lift,
    }
}

fn operators(input: &Input, _g: &Global, op: &OperatorsOp) -> Result<Output, Error> {
    let OperatorsOp::Fixpoint { faces, kind } = op;
    let ctx = OperatorContext::new(&input.matrix()?, sign_kind(*kind))?;
    let mut subset = FaceSubset::new();
    for text in faces {
        let sign: SignVector = text.parse()?;
        let index = ctx.face_index(&sign).ok_or_else(|| Error::NotAFace(sign.to_string()))?;
        subset.insert(index);
    }
    let sign_set = ctx.sign_operator(&subset)?;
    let image = ctx.face_operator_set(&sign_set);
    let fixed = image == subset;
    let names = |s: &FaceSubset| -> Vec<SignVector> { s.iter().map(|&f| ctx.faces()[f].sign.clone()).collect() };
    let mut text = format!("{}\n", if fixed { "fixed point" } else { "not a fixed point" });
    writeln!(text, "Sign: {} sign vectors", sign_set.len()).unwrap();
    let image_names: Vec<String> = names(&image).iter().map(|s| s.to_string()).collect();
    writeln!(
        text,
        "Face(Sign): {}",
        if image_names.is_empty() { "(none)".to_string() } else { image_names.join("; ") }
    )
    .unwrap();
    Ok(Output::new(
        json!({
            "faces": names(&subset),
            "sign": signs_json(&sign_set),
            "face": names(&image),
            "fixed_point": fixed,
        }),
        text,
    ))
}

fn verify(input: &Input, g: &Global, suite: &str) -> Result<Output, Error> {
    let seed = match std::env::var("HALFSPACE_LAB_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("HALFSPACE_LAB_SEED={v:?} is not an unsigned integer")))?,
        Err(_) => g.seed,
    };
    let cfg = SuiteConfig {
        seed,
        trials: g.trials,
        u: input.config.as_ref().map(|c| c.matrix()).transpose()?,
    };
    let reports: Vec<SuiteReport> = if suite == "all" {
        suites::all(&cfg)?
    } else {
        vec![suites::run_suite(suite, &cfg)?]
    };
    let violation = reports.iter().any(|r| !r.passed());
    let mut text = String::new();
    for r in &reports {
        writeln!(
            text,
            "{} {}: {} checks, {} violations (seed {}, {} trials)",
            if r.passed() { "PASS" } else { "FAIL" },
            r.suite,
            r.checks,
            r.violations.len(),
            r.seed,
            r.trials
        )
        .unwrap();
        for note in &r.notes {
            writeln!(text, "  note: {note}").unwrap();
        }
        let distinct: BTreeSet<&str> = r.violations.iter().map(|v| v.check.as_str()).collect();
        for check in distinct {
            let first = r.violations.iter().find(|v| v.check == check).expect("present");
            writeln!(text, "  {check}: trial {} {}", first.trial, first.detail).unwrap();
        }
    }
    let json = if suite == "all" {
        serde_json::to_value(&reports).expect("reports")
    } else {
        serde_json::to_value(&reports[0]).expect("report")
    };
    Ok(Output {
        json,
        text,
        violation,
    })
}
