use std::fs;
use std::time::{Duration, Instant};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use multalg::curves;
use multalg::exactpoly::{MPoly, MonomialOrder, Ring};
use multalg::genus2::{self, Genus2Curve, LorenzenPoint, LorenzenVariant, OddBundleData, VgpNet};
use multalg::genus3::{self, Genus3BundleData, SixRelationParams, SpecialParams, StdPair};
use multalg::multalg::{algebra_report, AlgebraOptions, NetOfQuadrics};
use multalg::quadrics;
use multalg::rational::{self, serde_rational, Rational};
use multalg::verify::Suite;
use multalg::Error;

use crate::report::{digest, write_output, RunReport, Status, Timings, SCHEMA};
use crate::{sweep, Cli, Command, GlobalArgs};

pub struct Outcome {
    pub status: Status,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        self.status.exit_code()
    }
}

/// A failure before or during a computation, with whatever input was read.
pub struct Failure {
    pub input: Value,
    pub message: String,
}

impl Failure {
    pub fn new(input: &Value, e: impl std::fmt::Display) -> Self {
        Failure { input: input.clone(), message: e.to_string() }
    }

    fn bare(e: impl std::fmt::Display) -> Self {
        Failure { input: Value::Null, message: e.to_string() }
    }
}

pub struct Success {
    pub input: Value,
    pub results: Value,
    pub status: Status,
}

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Algebra => "algebra",
        Command::Discriminant => "discriminant",
        Command::G2Odd { .. } => "g2-odd",
        Command::G2Lorenzen { .. } => "g2-lorenzen",
        Command::G2Vgp => "g2-vgp",
        Command::G3Web { .. } => "g3-web",
        Command::G3Relations { .. } => "g3-relations",
        Command::G3Special { .. } => "g3-special",
        Command::Symmetroid { .. } => "symmetroid",
        Command::Sweep { .. } => "sweep",
        Command::VerifyPaper => "verify-paper",
    }
}

pub fn algebra_options(g: &GlobalArgs) -> AlgebraOptions {
    AlgebraOptions {
        order: g.order.into(),
        deadline: g.timeout_secs.map(|s| Instant::now() + Duration::from_secs(s)),
    }
}

pub fn dispatch(cli: &Cli) -> Outcome {
    let name = command_name(&cli.command);
    if let Command::Sweep { .. } = cli.command {
        return match sweep::run(cli) {
            Ok(()) => Outcome { status: Status::Ok },
            Err(f) => emit(cli, name, Err(f), None),
        };
    }
    let mut timings = Timings::default();
    let result = run_command(cli, &mut timings);
    emit(cli, name, result, Some(timings))
}

fn emit(cli: &Cli, name: &str, result: Result<Success, Failure>, timings: Option<Timings>) -> Outcome {
    let timings = timings.filter(|_| cli.global.timings).map(Timings::into_map);
    let report = match result {
        Ok(s) => RunReport {
            schema: SCHEMA,
            command: name.to_string(),
            input_digest: digest(name, &s.input),
            status: s.status,
            results: s.results,
            error: None,
            timings,
        },
        Err(f) => RunReport {
            schema: SCHEMA,
            command: name.to_string(),
            input_digest: digest(name, &f.input),
            status: Status::Error,
            results: Value::Null,
            error: Some(f.message),
            timings,
        },
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    if let Err(e) = write_output(cli.global.out.as_deref(), &text) {
        eprintln!("multalg-kit: cannot write report: {e}");
        return Outcome { status: Status::Error };
    }
    Outcome { status: report.status }
}

pub fn read_json<T: DeserializeOwned>(g: &GlobalArgs) -> Option<Result<T, Failure>> {
    let path = g.input.as_ref()?;
    Some(
        fs::read_to_string(path)
            .map_err(|e| Failure::bare(format!("{}: {e}", path.display())))
            .and_then(|s| serde_json::from_str(&s).map_err(|e| Failure::bare(format!("{}: {e}", path.display())))),
    )
}

fn flag<'a>(name: &str, v: &'a Option<String>) -> Result<&'a str, Failure> {
    v.as_deref().ok_or_else(|| Failure::bare(format!("missing --{name} (or --in)")))
}

pub fn rationals(name: &str, v: &Option<String>) -> Result<Vec<Rational>, Failure> {
    rational::parse_list(flag(name, v)?).map_err(|e| Failure::bare(format!("--{name}: {e}")))
}

fn single(name: &str, v: &Option<String>) -> Result<Rational, Failure> {
    rational::parse(flag(name, v)?).map_err(|e| Failure::bare(format!("--{name}: {e}")))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

/// A net given by Gram matrices or by its quadrics as text.
#[derive(Deserialize)]
#[serde(untagged)]
enum NetInput {
    Quadrics { vars: Vec<String>, quadrics: Vec<String> },
    Grams(NetOfQuadrics),
}

impl NetInput {
    fn into_net(self) -> multalg::Result<NetOfQuadrics> {
        match self {
            NetInput::Grams(n) => Ok(n),
            NetInput::Quadrics { vars, quadrics } => {
                let ring = Ring::new(&vars, MonomialOrder::Grevlex);
                let polys = quadrics.iter().map(|s| MPoly::parse(&ring, s)).collect::<multalg::Result<Vec<_>>>()?;
                NetOfQuadrics::from_quadrics(&polys)
            }
        }
    }
}

fn read_net(g: &GlobalArgs) -> Result<(NetOfQuadrics, Value), Failure> {
    let input: NetInput = read_json(g).ok_or_else(|| Failure::bare("missing --in"))??;
    let net = input.into_net().map_err(Failure::bare)?;
    let v = to_value(&net);
    Ok((net, v))
}

#[derive(Serialize, Deserialize)]
struct OddInput {
    #[serde(with = "serde_rational::vec")]
    branch: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    a: Vec<Rational>,
}

fn run_command(cli: &Cli, t: &mut Timings) -> Result<Success, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Algebra => {
            let (net, input) = read_net(g)?;
            let rep = t.time("algebra", || algebra_report(&net, &algebra_options(g))).map_err(|e| Failure::new(&input, e))?;
            Ok(Success { input, results: to_value(&rep), status: Status::Ok })
        }
        Command::Discriminant => {
            let (net, input) = read_net(g)?;
            let d = t.time("discriminant", || quadrics::discriminant(&net)).map_err(|e| Failure::new(&input, e))?;
            Ok(Success { input, results: to_value(&d), status: Status::Ok })
        }
        Command::G2Odd { branch, a } => {
            let data = match read_json::<OddInput>(g) {
                Some(r) => r?,
                None => OddInput { branch: rationals("branch", branch)?, a: rationals("a", a)? },
            };
            let input = to_value(&data);
            let fail = |e: Error| Failure::new(&input, e);
            let curve = Genus2Curve::new(data.branch.clone()).map_err(fail)?;
            let odd = OddBundleData { a: data.a.clone() };
            let net = genus2::odd_net(&curve, &odd).map_err(fail)?;
            let alg = t.time("algebra", || algebra_report(&net, &algebra_options(g))).map_err(fail)?;
            let (triangle, squares, status) = if alg.very_stable {
                let tri = t.time("triangle", || genus2::odd_triangle(&curve, &odd)).map_err(fail)?;
                let squares = genus2::odd_relations_are_squares(&net);
                let ok = tri.holds && squares;
                (to_value(&tri), Value::Bool(squares), if ok { Status::Ok } else { Status::ClaimFailed })
            } else {
                (Value::Null, Value::Null, Status::Ok)
            };
            let results = json!({"algebra": alg, "relations_are_squares": squares, "triangle": triangle});
            Ok(Success { input, results, status })
        }
        Command::G2Lorenzen { rst, u, variant } => {
            let point = match read_json::<LorenzenPoint>(g) {
                Some(r) => r?,
                None => LorenzenPoint { rst: rationals("rst", rst)?, u: rationals("u", u)? },
            };
            let variant: LorenzenVariant = (*variant).into();
            let input = json!({"point": point, "variant": variant});
            let rep = t
                .time("lorenzen", || genus2::lorenzen_discriminant_report(&point, variant, &algebra_options(g)))
                .map_err(|e| Failure::new(&input, e))?;
            Ok(Success { input, results: to_value(&rep), status: Status::Ok })
        }
        Command::G2Vgp => {
            let v: VgpNet = read_json(g).ok_or_else(|| Failure::bare("missing --in"))??;
            let input = to_value(&v);
            let fail = |e: Error| Failure::new(&input, e);
            let id = t.time("identity", || genus2::vgp_branch_identity_report(&v)).map_err(fail)?;
            let alg = t.time("algebra", || algebra_report(&genus2::vgp_net(&v), &algebra_options(g))).map_err(fail)?;
            let quartic = match genus2::vgp_genus3_curve(&v) {
                Ok(c) => json!({"poly": c.poly(), "smooth": curves::is_smooth(&c)}),
                Err(Error::DegenerateInput(msg)) => json!({"degenerate": msg}),
                Err(e) => return Err(fail(e)),
            };
            let status = if id.holds { Status::Ok } else { Status::ClaimFailed };
            Ok(Success { input, results: json!({"identity": id, "algebra": alg, "quartic": quartic}), status })
        }
        Command::G3Web { a, b, q } => {
            let data = match read_json::<Genus3BundleData>(g) {
                Some(r) => r?,
                None => {
                    let pair = StdPair::new(single("a", a)?, single("b", b)?).map_err(Failure::bare)?;
                    let q = MPoly::parse(&genus3::xyz_ring(), flag("q", q)?).map_err(Failure::bare)?;
                    pair.bundle(q).map_err(Failure::bare)?
                }
            };
            let input = to_value(&data);
            let fail = |e: Error| Failure::new(&input, e);
            let net = genus3::genus3_web(&data).map_err(fail)?;
            let alg = t.time("algebra", || algebra_report(&net, &algebra_options(g))).map_err(fail)?;
            let (split, status) = match t.time("split", || genus3::discriminant_split(&data)) {
                Ok(s) => (to_value(&s), Status::Ok),
                Err(Error::NotDivisible) => (json!({"error": Error::NotDivisible.to_string()}), Status::ClaimFailed),
                Err(e) => return Err(fail(e)),
            };
            let section = match genus3::degeneracy_plane_section(&data) {
                Ok(c) => json!({"poly": c.poly(), "smooth": curves::is_smooth(&c)}),
                Err(e) => json!({"error": e.to_string()}),
            };
            Ok(Success { input, results: json!({"algebra": alg, "split": split, "plane_section": section}), status })
        }
        Command::G3Relations { a, b, coeffs } => {
            let p = match read_json::<SixRelationParams>(g) {
                Some(r) => r?,
                None => SixRelationParams { a: single("a", a)?, b: single("b", b)?, coeffs: rationals("coeffs", coeffs)? },
            };
            let input = to_value(&p);
            let fail = |e: Error| Failure::new(&input, e);
            let net = genus3::six_relations(&p).map_err(fail)?;
            let alg = t.time("algebra", || algebra_report(&net, &algebra_options(g))).map_err(fail)?;
            Ok(Success { input, results: to_value(&alg), status: Status::Ok })
        }
        Command::G3Special { a, b } => {
            let p = match read_json::<SpecialParams>(g) {
                Some(r) => r?,
                None => SpecialParams { a: rationals("a", a)?, b: rationals("b", b)? },
            };
            let input = to_value(&p);
            let rep = t
                .time("special", || genus3::special_report(&p, &algebra_options(g)))
                .map_err(|e| Failure::new(&input, e))?;
            let status = if rep.consistent == Some(false) { Status::ClaimFailed } else { Status::Ok };
            Ok(Success { input, results: to_value(&rep), status })
        }
        Command::Symmetroid { a, b } => {
            let p = match read_json::<StdPair>(g) {
                Some(r) => r?,
                None => StdPair { a: single("a", a)?, b: single("b", b)? },
            };
            let input = to_value(&p);
            let fail = |e: Error| Failure::new(&input, e);
            p.validate().map_err(fail)?;
            let matrix = genus3::symmetroid(&p).map_err(fail)?;
            let det = t.time("determinant", || matrix.det()).map_err(fail)?;
            let mat2 = t.time("coordinate_change", || genus3::mat2_derivation_check(&p)).map_err(fail)?;
            let nodes = match t.time("loci", || genus3::symmetroid_nodes(&p)) {
                Ok(r) => to_value(&r),
                Err(e @ Error::DegenerateParameters(_)) => json!({"error": e.to_string()}),
                Err(e) => return Err(fail(e)),
            };
            let line_point = match genus3::rational_line_point(&p) {
                Some(pt) => to_value(&quadrics::classify_rational_point(&det, &pt).map_err(fail)?),
                None => Value::Null,
            };
            let section = t.time("section", || genus3::section_two_conics_report(&p)).map_err(fail)?;
            let status = if mat2 && section.holds { Status::Ok } else { Status::ClaimFailed };
            let results = json!({
                "matrix": matrix,
                "det": det,
                "mat2_derivation": mat2,
                "nodes": nodes,
                "line_point": line_point,
                "section": section,
            });
            Ok(Success { input, results, status })
        }
        Command::VerifyPaper => {
            let input = json!({"seed": g.seed});
            let mut suite = Suite::with_options(g.seed, algebra_options(g));
            let results = t.time("suite", || suite.run_all());
            for r in &results {
                eprintln!("{}", r.line());
            }
            let status = if results.iter().all(|r| r.passed) { Status::Ok } else { Status::ClaimFailed };
            let results: Vec<Value> = results
                .iter()
                .map(|r| {
                    let mut v = to_value(r);
                    if !g.timings {
                        let obj = v.as_object_mut().expect("struct");
                        obj.remove("elapsed_ms");
                    }
                    v
                })
                .collect();
            Ok(Success { input, results: Value::Array(results), status })
        }
        Command::Sweep { .. } => unreachable!("handled in dispatch"),
    }
}
