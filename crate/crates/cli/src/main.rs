use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use ttu_core::cycle_spaces::{cycle_matrix, default_e_base, incidence_matrix, WalkFamily};
use ttu_core::euler::{euler_system, EulerSystem};
use ttu_core::four_regular::{all_transitions, edge_transition_incidence, OrientationJson, TransitionalOrientation};
use ttu_core::graph::{is_closed_walk, ClosedWalk, DirectedGraph, GraphJson, HalfEdgeGraph};
use ttu_core::linalg::MatrixJson;
use ttu_core::multimatroid::{
    ias_matrix, interlacement_graph, is_circle_graph_bruteforce, q_f_named, verify_multimatroid_axioms, z3,
    z3_equals_qf, LoopedSimpleGraph, Multimatroid, SkewPartition,
};
use ttu_core::representation::{
    fundamental_representation, h_avoiding_orientation, ias_from_euler_with, is_sheltering, is_strict, named,
    representation_matrix, ttu_certificate_for_circle_graph, ttu_check, Provenance, Representation, TtuMode,
};
use ttu_core::reproduce::demo_paper;
use ttu_core::{Error, Matrix};

#[derive(Parser)]
#[command(
    name = "ttu",
    version,
    about = "Representations of Eulerian and isotropic 3-matroids"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Input file (graph, adjacency or matrix JSON depending on the verb).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Half-edge the Euler traversal leaves through first.
    #[arg(long)]
    seed: Option<String>,
    /// Edge set E, one edge per component (default: least edge of each).
    #[arg(long, value_delimiter = ',')]
    e_base: Option<Vec<String>>,
    /// Transitional orientation: a JSON file, or `hce` for the one avoiding
    /// the second-arrival half-edges.
    #[arg(long)]
    orientation: Option<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Build a matrix from a 4-regular graph (or IAS from an adjacency file).
    #[command(group(ArgGroup::new("what").required(true)))]
    Construct {
        #[command(flatten)]
        common: Common,
        /// Edge-transition incidence matrix.
        #[arg(long, group = "what")]
        theta: bool,
        /// Vertex-edge incidence matrix of the directed version.
        #[arg(long, group = "what")]
        incidence: bool,
        /// Cycle matrix of the basis (strictly fundamental in F - E unless
        /// --basis is given).
        #[arg(long, group = "what")]
        cycle_matrix: bool,
        /// Cycle matrix times edge-transition incidence.
        #[arg(long, group = "what")]
        product: bool,
        /// IAS(F, C, E) from the Euler system.
        #[arg(long, group = "what")]
        ias_from_euler: bool,
        /// IAS(G) of an adjacency file.
        #[arg(long, group = "what")]
        ias: bool,
        /// The Euler system as JSON.
        #[arg(long, group = "what")]
        euler: bool,
        /// Closed walks keyed by row label, replacing the fundamental basis.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Check a matrix (or a multimatroid) and report as JSON.
    #[command(group(ArgGroup::new("check").required(true).multiple(true)))]
    Verify {
        #[command(flatten)]
        common: Common,
        /// Total transversal unimodularity of the input matrix.
        #[arg(long, group = "check")]
        ttu: bool,
        /// Restrict --ttu to minors whose columns form a transversal.
        #[arg(long, requires = "ttu")]
        transversal_only: bool,
        /// The input matrix shelters the target.
        #[arg(long, group = "check", requires = "target")]
        sheltering: bool,
        /// The input matrix is a strict representation of the target.
        #[arg(long, group = "check", requires = "target")]
        strict: bool,
        /// Target multimatroid: a 4-regular graph (Q(F)) or adjacency file (Z3(G)).
        #[arg(long)]
        target: Option<PathBuf>,
        /// Multimatroid axioms of Q(F) or Z3(G) for the input graph.
        #[arg(long, group = "check", conflicts_with_all = ["ttu", "sheltering", "strict"])]
        axioms: bool,
        /// Z3 of the interlacement graph equals Q(F) under the standard relabeling.
        #[arg(long, group = "check", conflicts_with_all = ["ttu", "sheltering", "strict"])]
        z3_equals_qf: bool,
    },
    /// Interlacement graph of the Euler system.
    Interlacement {
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force circle graph recognition.
    CircleCheck {
        #[command(flatten)]
        common: Common,
        /// Also build and check a TTU representation of Z3(G).
        #[arg(long)]
        certificate: bool,
    },
    /// Rebuild the reference matrices and compare entrywise.
    DemoPaper {
        #[arg(long)]
        json: bool,
    },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_size_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<bool, Failure>;

fn read(path: Option<&Path>) -> Result<String, Failure> {
    let path = path.ok_or_else(|| Failure::Input("--input is required".into()))?;
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

fn is_adjacency(text: &str) -> bool {
    serde_json::from_str::<Value>(text).is_ok_and(|v| v.get("adjacency").is_some())
}

fn emit<S: Serialize>(value: &S) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn emit_matrix(m: &Matrix, as_json: bool) {
    if as_json {
        emit(&m.to_json());
    } else {
        print!("{}", m.to_text_ordered(m.row_labels(), m.col_labels()));
    }
}

/// A 4-regular graph with the choices every construction shares.
struct Setup {
    f: HalfEdgeGraph,
    d: DirectedGraph,
    c: EulerSystem,
    e_base: BTreeSet<String>,
    o: TransitionalOrientation,
}

fn setup(common: &Common, text: &str) -> Result<Setup, Failure> {
    let spec = GraphJson::parse(text)?;
    let f = spec.graph()?;
    f.require_four_regular()?;
    let c = euler_system(&f, common.seed.as_deref())?;
    let d = match spec.directed()? {
        Some(d) => d,
        None => c.directed_version(&f)?,
    };
    let e_base = match &common.e_base {
        Some(es) => es.iter().cloned().collect(),
        None => default_e_base(&f),
    };
    let o = match common.orientation.as_deref() {
        None | Some("hce") => h_avoiding_orientation(&f, &c, &e_base)?,
        Some(path) => {
            let spec: OrientationJson = parse_json(&read(Some(Path::new(path)))?, "orientation")?;
            TransitionalOrientation::from_json(&all_transitions(&f)?, &spec)?
        }
    };
    Ok(Setup { f, d, c, e_base, o })
}

fn basis(s: &Setup, path: Option<&Path>) -> Result<Option<WalkFamily>, Failure> {
    let Some(path) = path else { return Ok(None) };
    let walks: BTreeMap<String, ClosedWalk> = parse_json(&read(Some(path))?, "basis")?;
    for (k, w) in &walks {
        if !is_closed_walk(&s.f, w)? {
            return Err(Failure::Input(format!(
                "basis walk `{k}` is not a closed walk of the graph"
            )));
        }
    }
    Ok(Some(WalkFamily::new(walks.into_iter().collect())?))
}

fn product(s: &Setup, b: Option<WalkFamily>) -> Result<Representation<ttu_core::Rational>, Failure> {
    let rep = match b {
        Some(b) => representation_matrix(&s.f, &b, &s.d, &s.o)?,
        None => fundamental_representation(&s.f, &s.d, &s.o, &s.e_base)?,
    };
    Ok(named(&rep, &s.f, &s.c)?)
}

#[allow(clippy::too_many_arguments)]
fn construct(
    common: &Common,
    theta: bool,
    incidence: bool,
    cycles: bool,
    prod: bool,
    ias_euler: bool,
    ias: bool,
    euler: bool,
    basis_path: Option<&Path>,
) -> Outcome {
    let text = read(common.input.as_deref())?;
    if ias {
        let g = LoopedSimpleGraph::parse(&text)?;
        let m = ias_matrix(&g)
            .matrix
            .map(|x| ttu_core::Rational::from_integer(x.clone()));
        emit_matrix(&m, common.json);
        return Ok(true);
    }
    let s = setup(common, &text)?;
    if euler {
        emit(&s.c);
    } else if theta {
        let names = s.c.names(&s.f)?;
        let order: Vec<String> =
            s.c.ordered_transitions(&s.f)?
                .iter()
                .map(|t| names[&t.label()].clone())
                .collect();
        let m: Matrix = edge_transition_incidence(&s.d, &all_transitions(&s.f)?, &s.o)?;
        let m = m.relabel_cols(|l| names[l].clone())?;
        let rows = m.row_labels().to_vec();
        emit_matrix(&m.submatrix(&rows, &order)?, common.json);
    } else if incidence {
        emit_matrix(&incidence_matrix(&s.d)?, common.json);
    } else if cycles {
        let b = match basis(&s, basis_path)? {
            Some(b) => b,
            None => ttu_core::representation::fundamental_basis_avoiding(&s.d, &s.e_base)?,
        };
        emit_matrix(&cycle_matrix(&s.d, &b)?.matrix, common.json);
    } else if prod {
        emit_matrix(&product(&s, basis(&s, basis_path)?)?.matrix, common.json);
    } else if ias_euler {
        emit_matrix(&ias_from_euler_with(&s.f, &s.c, &s.e_base, &s.d)?.matrix, common.json);
    }
    Ok(true)
}

/// Skew classes from the matrix file, or grouped by the vertex in column
/// labels of the form `kind(v)` or `v:block`.
fn skew_partition(spec: &MatrixJson) -> Result<SkewPartition, Failure> {
    if let Some(classes) = &spec.skew_classes {
        return Ok(SkewPartition::new(classes.clone())?);
    }
    let mut groups: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for c in &spec.cols {
        let v = if let (Some(open), true) = (c.find('('), c.ends_with(')')) {
            &c[open + 1..c.len() - 1]
        } else if let Some((v, _)) = c.rsplit_once(':') {
            v
        } else {
            return Err(Failure::Input(format!(
                "cannot infer the skew class of column `{c}`; give skew_classes"
            )));
        };
        groups.entry(v.to_string()).or_default().push(c.clone());
    }
    Ok(SkewPartition::new(groups.into_values().collect())?)
}

fn target(common: &Common, path: &Path) -> Result<Arc<dyn Multimatroid>, Failure> {
    let text = read(Some(path))?;
    if is_adjacency(&text) {
        return Ok(Arc::new(z3(&LoopedSimpleGraph::parse(&text)?)?));
    }
    let f = GraphJson::parse(&text)?.graph()?;
    let c = euler_system(&f, common.seed.as_deref())?;
    Ok(Arc::new(q_f_named(&f, &c)?))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    common: &Common,
    ttu: bool,
    transversal_only: bool,
    sheltering: bool,
    strict: bool,
    target_path: Option<&Path>,
    axioms: bool,
    z3_qf: bool,
) -> Outcome {
    let text = read(common.input.as_deref())?;
    let mut report = serde_json::Map::new();
    let mut pass = true;
    if axioms || z3_qf {
        if is_adjacency(&text) {
            if z3_qf {
                return Err(Failure::Input("--z3-equals-qf expects a 4-regular graph".into()));
            }
            let v = verify_multimatroid_axioms(&z3(&LoopedSimpleGraph::parse(&text)?)?)?;
            pass &= v.is_empty();
            report.insert("axioms".into(), json!({ "pass": v.is_empty(), "violations": v }));
        } else {
            let f = GraphJson::parse(&text)?.graph()?;
            let c = euler_system(&f, common.seed.as_deref())?;
            if axioms {
                let v = verify_multimatroid_axioms(&q_f_named(&f, &c)?)?;
                pass &= v.is_empty();
                report.insert("axioms".into(), json!({ "pass": v.is_empty(), "violations": v }));
            }
            if z3_qf {
                let r = z3_equals_qf(&interlacement_graph(&f, &c)?, &f, &c)?;
                pass &= r.equal;
                report.insert("z3_equals_qf".into(), serde_json::to_value(&r).expect("report"));
            }
        }
        emit(&report);
        return Ok(pass);
    }
    let spec: MatrixJson = parse_json(&text, "matrix")?;
    let m = Matrix::from_json(&spec)?;
    if ttu {
        let mode = if transversal_only {
            TtuMode::TransversalOnly
        } else {
            TtuMode::All
        };
        let r = ttu_check(&m, &skew_partition(&spec)?, mode)?;
        pass &= r.ttu;
        report.insert("ttu".into(), serde_json::to_value(&r).expect("report"));
    }
    if let Some(path) = target_path.filter(|_| sheltering || strict) {
        let rep = Representation::new(m, target(common, path)?, Provenance::default())?;
        if sheltering {
            let r = is_sheltering(&rep)?;
            pass &= r.sheltering;
            report.insert("sheltering".into(), serde_json::to_value(&r).expect("report"));
        }
        if strict {
            let r = is_strict(&rep)?;
            pass &= r.strict;
            report.insert("strict".into(), serde_json::to_value(&r).expect("report"));
        }
    }
    emit(&report);
    Ok(pass)
}

fn interlacement(common: &Common) -> Outcome {
    let text = read(common.input.as_deref())?;
    let f = GraphJson::parse(&text)?.graph()?;
    let c = euler_system(&f, common.seed.as_deref())?;
    emit(&interlacement_graph(&f, &c)?.to_json());
    Ok(true)
}

fn circle_check(common: &Common, certificate: bool) -> Outcome {
    let g = LoopedSimpleGraph::parse(&read(common.input.as_deref())?)?;
    if certificate {
        let outcome = ttu_certificate_for_circle_graph(&g)?;
        emit(&outcome);
        return Ok(match outcome {
            ttu_core::representation::CertificateOutcome::Certificate(c) => c.verified(),
            ttu_core::representation::CertificateOutcome::Refusal { .. } => false,
        });
    }
    let r = is_circle_graph_bruteforce(&g)?;
    emit(&r);
    Ok(r.is_circle)
}

fn demo(as_json: bool) -> Outcome {
    let checks = demo_paper()?;
    if as_json {
        emit(&checks);
    } else {
        let w = checks.iter().map(|c| c.example.len()).max().unwrap_or(0);
        for c in &checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            print!("{status}  {:<w$}  {}", c.example, c.check);
            match &c.detail {
                Some(d) => println!(": {d}"),
                None => println!(),
            }
        }
    }
    Ok(checks.iter().all(|c| c.pass))
}

fn main() -> ExitCode {
    let outcome = match Cli::parse().verb {
        Verb::Construct {
            common,
            theta,
            incidence,
            cycle_matrix,
            product,
            ias_from_euler,
            ias,
            euler,
            basis,
        } => construct(
            &common,
            theta,
            incidence,
            cycle_matrix,
            product,
            ias_from_euler,
            ias,
            euler,
            basis.as_deref(),
        ),
        Verb::Verify {
            common,
            ttu,
            transversal_only,
            sheltering,
            strict,
            target,
            axioms,
            z3_equals_qf,
        } => verify(
            &common,
            ttu,
            transversal_only,
            sheltering,
            strict,
            target.as_deref(),
            axioms,
            z3_equals_qf,
        ),
        Verb::Interlacement { common } => interlacement(&common),
        Verb::CircleCheck { common, certificate } => circle_check(&common, certificate),
        Verb::DemoPaper { json } => demo(json),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
