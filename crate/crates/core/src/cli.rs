//! The `coreg` command line.

use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::classify::{
    classify, render_table, table1, ClassificationReport, Dp6Data, Dp7Data, SurfaceSpec, Witness,
};
use crate::dualcomplex::{act, coreg0_obstruction, log_cy_topology, ActionSpec, ActionSummary, CurveConfiguration, Obstruction, Topology};
use crate::error::{Error, Result};
use crate::exact_arith::Cyclotomic;
use crate::invariants::{
    character_sum_dimensions, pair_character_sum_dimensions, pair_semi_invariants, semi_invariants, SemiInvariantReport,
};
use crate::linalg::Matrix;
use crate::matgroup::{presets, set_order_cap, GroupSpec, PairGroup, PairGroupSpec, ProjectiveGroup};
use crate::picard::{neg_one_curves, DivisorClass, SurfaceLattice};
use crate::projclassify::ProjectivePoint;

/// Environment variable overriding the group closure order cap.
pub const ORDER_CAP_ENV: &str = "COREG_ORDER_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Surface {
    P2,
    Quadric,
    F1,
    Dp7,
    Dp6,
}

#[derive(Debug, Parser)]
#[command(name = "coreg", version, about = "Equivariant coregularity of rational surfaces")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Largest group order a closure may reach.
    #[arg(long, global = true)]
    pub order_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coregularity of a surface under a finite group.
    Classify {
        #[arg(long, value_enum)]
        surface: Surface,
        /// Group on P² as a JSON file or preset name.
        #[arg(long)]
        group: Option<String>,
        /// Group on P¹×P¹ as a JSON file or preset name.
        #[arg(long)]
        pairs: Option<String>,
        /// JSON file `[a, b]` for an extra element `(x, y) ↦ (a·y, b·x)`.
        #[arg(long)]
        swap: Option<String>,
        /// A point of P², as `1,0,0` or a JSON array of cyclotomic numbers.
        /// Once for F₁, twice for S₇.
        #[arg(long)]
        point: Vec<String>,
        /// JSON file with the hexagon symmetries and torus part of a group on S₆.
        #[arg(long)]
        dp6: Option<String>,
        /// Torus part of a group on S₆ acting by all hexagon symmetries.
        #[arg(long, value_delimiter = ',')]
        torus: Vec<usize>,
    },
    /// The table of finite subgroups of Aut(P²).
    Table1,
    /// Semi-invariant forms of a given degree.
    Invariants {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        pairs: Option<String>,
        #[arg(long)]
        degree: Option<u32>,
        /// Bidegree `a,b` on P¹×P¹.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        bidegree: Vec<u32>,
    },
    /// Topology and group action of a dual complex.
    DualComplex {
        config: String,
        #[arg(long)]
        action: Option<String>,
    },
    /// Picard lattice and (−1)-curves.
    Lattice {
        #[arg(long, value_enum)]
        surface: Surface,
    },
    /// Built-in groups.
    Presets,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualComplexOutput {
    #[serde(flatten)]
    pub topology: Topology,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionSummary>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<Obstruction>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsOutput {
    #[serde(flatten)]
    pub report: SemiInvariantReport,
    /// Same two dimensions from averaging characters over the group.
    pub character_sum_invariant_dimension: usize,
    pub character_sum_total_dimension: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeOutput {
    pub lattice: SurfaceLattice,
    pub degree: i64,
    pub neg_one_curves: Vec<DivisorClass>,
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: &'a str,
    message: String,
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}")))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T> {
    serde_json::from_str(&read(path)?).map_err(|e| Error::Input(format!("{path}: {e}")))
}

/// A file path when it exists, a preset name otherwise.
pub fn load_group(arg: &str) -> Result<ProjectiveGroup> {
    if Path::new(arg).is_file() {
        parse_json::<GroupSpec>(arg)?.build()
    } else {
        presets::group(arg)
    }
}

pub fn load_pairs(arg: &str, swap: Option<&str>) -> Result<PairGroup> {
    let mut spec = if Path::new(arg).is_file() {
        parse_json::<PairGroupSpec>(arg)?
    } else {
        if swap.is_none() {
            return presets::pair_group(arg);
        }
        let g = presets::pair_group(arg)?;
        PairGroupSpec {
            generators: g.raw_generators().iter().filter(|e| !e.swap).map(|e| (e.a.clone(), e.b.clone())).collect(),
            swap: g.raw_generators().iter().find(|e| e.swap).map(|e| (e.a.clone(), e.b.clone())),
        }
    };
    if let Some(path) = swap {
        if spec.swap.is_some() {
            return Err(Error::Input("the group already has a swap element".into()));
        }
        spec.swap = Some(parse_json::<(Matrix, Matrix)>(path)?);
    }
    spec.build()
}

fn parse_point(s: &str) -> Result<ProjectivePoint> {
    let coords: Vec<Cyclotomic> = if s.trim_start().starts_with('[') {
        serde_json::from_str(s).map_err(|e| Error::Input(format!("point {s}: {e}")))?
    } else {
        s.split(',')
            .map(|x| x.trim().parse::<i64>().map(Cyclotomic::from_int).map_err(|e| Error::Input(format!("point {s}: {e}"))))
            .collect::<Result<_>>()?
    };
    if coords.len() != 3 {
        return Err(Error::Input(format!("point {s} needs three coordinates")));
    }
    ProjectivePoint::new(&coords).ok_or_else(|| Error::Input("the zero vector is not a point".into()))
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Input(format!("--{flag} is required here")))
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T, text: impl FnOnce() -> String, format: Format) -> Result<()> {
    let s = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text(),
    };
    out.write_all(s.as_bytes()).map_err(|e| Error::Input(e.to_string()))
}

fn report_text(r: &ClassificationReport) -> String {
    let mut s = format!("{r}\n");
    s.push_str(&format!("surface {:?}, group order {}, {}\n", r.surface, r.group_order, r.structure));
    if let Some(q) = &r.quadric {
        s.push_str(&format!(
            "A1 = {}, A2 = {}, R = {}, |G0| = {}, diagonal = {}, swap = {}\n",
            q.a1, q.a2, q.r, q.g0_order, q.diagonal, q.swaps_factors
        ));
    }
    match &r.witness {
        Some(Witness::Cycle(c)) => s.push_str(&format!(
            "witness: invariant cycle of {} curves, {:?}, anticanonical = {}\n",
            c.configuration.components.len(),
            c.topology,
            c.anticanonical
        )),
        Some(Witness::Curve(c)) => s.push_str(&format!("witness: invariant curve of degree {:?}\n", c.degree)),
        Some(Witness::ExceptionalCurve(e)) => s.push_str(&format!("witness: exceptional curve {:?}\n", e.class.0)),
        None => {}
    }
    s
}

fn surface_spec(
    surface: Surface,
    group: &Option<String>,
    pairs: &Option<String>,
    swap: &Option<String>,
    points: &[String],
    dp6: &Option<String>,
    torus: &[usize],
) -> Result<SurfaceSpec> {
    Ok(match surface {
        Surface::P2 => SurfaceSpec::P2(load_group(required(group, "group")?)?),
        Surface::Quadric => SurfaceSpec::Quadric(load_pairs(required(pairs, "pairs")?, swap.as_deref())?),
        Surface::F1 => SurfaceSpec::F1 {
            group: load_group(required(group, "group")?)?,
            point: points.first().map(|p| parse_point(p)).transpose()?,
        },
        Surface::Dp7 => {
            let [a, b] = points else {
                return Err(Error::Input("S7 needs exactly two --point flags".into()));
            };
            SurfaceSpec::Dp7(Dp7Data { group: load_group(required(group, "group")?)?, points: [parse_point(a)?, parse_point(b)?] })
        }
        Surface::Dp6 => SurfaceSpec::Dp6(match dp6 {
            Some(path) => parse_json::<Dp6Data>(path)?,
            None => Dp6Data::full(torus),
        }),
    })
}

fn lattice_for(surface: Surface) -> Result<SurfaceLattice> {
    match surface {
        Surface::P2 => Ok(SurfaceLattice::p2()),
        Surface::Quadric => Ok(SurfaceLattice::quadric()),
        Surface::F1 => SurfaceLattice::blowup(1),
        Surface::Dp7 => SurfaceLattice::blowup(2),
        Surface::Dp6 => SurfaceLattice::blowup(3),
    }
}

fn invariants(group: &Option<String>, pairs: &Option<String>, degree: Option<u32>, bidegree: &[u32]) -> Result<InvariantsOutput> {
    match (group, pairs) {
        (Some(g), None) => {
            let d = degree.ok_or_else(|| Error::Input("--degree is required with --group".into()))?;
            let g = load_group(g)?;
            let report = semi_invariants(&g, d)?;
            let (inv, total) = character_sum_dimensions(&g, d)?;
            Ok(InvariantsOutput { report, character_sum_invariant_dimension: inv, character_sum_total_dimension: total })
        }
        (None, Some(p)) => {
            let [a, b] = bidegree else {
                return Err(Error::Input("--bidegree a,b is required with --pairs".into()));
            };
            let g = load_pairs(p, None)?;
            let report = pair_semi_invariants(&g, *a, *b)?;
            let (inv, total) = pair_character_sum_dimensions(&g, *a, *b)?;
            Ok(InvariantsOutput { report, character_sum_invariant_dimension: inv, character_sum_total_dimension: total })
        }
        _ => Err(Error::Input("give exactly one of --group and --pairs".into())),
    }
}

fn dual_complex(config: &str, action: &Option<String>) -> Result<DualComplexOutput> {
    let c: CurveConfiguration = parse_json(config)?;
    let topology = log_cy_topology(&c)?;
    let Some(path) = action else {
        return Ok(DualComplexOutput { topology, action: None, obstruction: None });
    };
    let a = act(&c, &parse_json::<ActionSpec>(path)?)?;
    let obstruction = match coreg0_obstruction(&a) {
        Ok(o) => Some(o),
        Err(Error::WrongDimension(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(DualComplexOutput { topology, action: Some(a.summary()), obstruction })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let f = cli.format;
    match &cli.command {
        Command::Classify { surface, group, pairs, swap, point, dp6, torus } => {
            let spec = surface_spec(*surface, group, pairs, swap, point, dp6, torus)?;
            let r = classify(&spec)?;
            emit(out, &r, || report_text(&r), f)
        }
        Command::Table1 => {
            let rows = table1()?;
            emit(out, &rows, || render_table(&rows), f)
        }
        Command::Invariants { group, pairs, degree, bidegree } => {
            let o = invariants(group, pairs, *degree, bidegree)?;
            emit(
                out,
                &o,
                || {
                    let mut s = format!("{:?}: total dimension {}, invariant dimension {}\n", o.report.degree, o.report.total_dimension, o.report.invariant_dimension);
                    for l in &o.report.lines {
                        let ch: Vec<String> = l.character.iter().map(|c| c.to_string()).collect();
                        s.push_str(&format!("  character [{}], dimension {}\n", ch.join(", "), l.dimension));
                    }
                    s
                },
                f,
            )
        }
        Command::DualComplex { config, action } => {
            let o = dual_complex(config, action)?;
            emit(out, &o, || format!("{:?}\n", o), f)
        }
        Command::Lattice { surface } => {
            let lattice = lattice_for(*surface)?;
            let o = LatticeOutput { degree: lattice.degree(), neg_one_curves: neg_one_curves(&lattice), lattice };
            emit(
                out,
                &o,
                || {
                    let mut s = format!("{:?}, degree {}\n", o.lattice.kind, o.degree);
                    for c in &o.neg_one_curves {
                        s.push_str(&format!("  {:?}\n", c.0));
                    }
                    s
                },
                f,
            )
        }
        Command::Presets => {
            let list = presets::list();
            emit(
                out,
                &list,
                || {
                    list.iter()
                        .map(|p| {
                            let order = p.order.map_or("-".to_string(), |o| o.to_string());
                            format!("{:<20} {:<8} {:>5}  {:<14} {}\n", p.name, format!("{:?}", p.surface), order, p.documented_type, p.description)
                        })
                        .collect()
                },
                f,
            )
        }
    }
}

/// Runs the command line with explicit streams; returns the exit code:
/// 0 on success, 1 on a classification error, 2 on an input error.
pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let cap = match (cli.order_cap, std::env::var(ORDER_CAP_ENV).ok()) {
        (Some(c), _) => Some(c),
        (None, Some(v)) => match v.parse() {
            Ok(c) => Some(c),
            Err(_) => {
                write_error(err, &Error::Input(format!("{ORDER_CAP_ENV}={v} is not a number")));
                return 2;
            }
        },
        (None, None) => None,
    };
    if let Some(c) = cap {
        set_order_cap(c);
    }
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(e) => {
            write_error(err, &e);
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

fn write_error(err: &mut dyn Write, e: &Error) {
    let obj = ErrorObject { error: e.kind(), message: e.to_string() };
    let _ = writeln!(err, "{}", serde_json::to_string(&obj).expect("error serializes"));
}

pub fn run(argv: &[String]) -> i32 {
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("coreg").chain(args.iter().copied()).map(String::from).collect();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_with(&argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_preset() {
        let (code, out, _) = call(&["classify", "--surface", "p2", "--group", "typeE36"]);
        assert_eq!(code, 0);
        let r: ClassificationReport = serde_json::from_str(&out).unwrap();
        assert_eq!(r.coregularity, 1);
    }

    #[test]
    fn exit_codes() {
        let (code, _, err) = call(&["classify", "--surface", "p2", "--group", "no_such_group"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"error\":\"UnknownPreset\""));
        assert_eq!(call(&["classify", "--surface", "p2", "--bogus"]).0, 2);
        assert_eq!(call(&["classify", "--surface", "f1", "--group", "hessian216"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn lattice_and_presets() {
        let (code, out, _) = call(&["lattice", "--surface", "dp6", "--format", "text"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 7);
        let (code, out, _) = call(&["presets"]);
        assert_eq!(code, 0);
        assert!(out.contains("valentiner"));
    }

    #[test]
    fn dp6_and_points() {
        let (code, out, _) = call(&["classify", "--surface", "dp6", "--torus", "3,3"]);
        assert_eq!(code, 0, "{out}");
        let (code, _, err) = call(&["classify", "--surface", "dp7", "--group", "typeA_diag9", "--point", "1,0,0", "--point", "0,1,0"]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(call(&["classify", "--surface", "dp7", "--group", "typeA_diag9", "--point", "1,0,0"]).0, 2);
    }
}
