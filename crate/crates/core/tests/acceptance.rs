//! One line per acceptance criterion. Run with `cargo test --test acceptance`.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ttu_core::cycle_spaces::{
    cycle_matrix, default_e_base, incidence_matrix, induced_circuits, is_integral_cycle_basis, maximal_forest,
    maximal_forest_with_order, strictly_fundamental_basis, strictly_fundamental_basis_with, WalkFamily,
};
use ttu_core::euler::euler_system;
use ttu_core::fixtures::{self, Golden};
use ttu_core::four_regular::{
    all_transitions, directed_touch_graph, edge_transition_incidence, incidence_vector, partition_from_transversal,
    project_walk, TransitionalOrientation,
};
use ttu_core::graph::ClosedWalk;
use ttu_core::multimatroid::{
    interlacement_graph, is_circle_graph_bruteforce, q_f_named, verify_multimatroid_axioms, z3, z3_equals_qf,
    LoopedSimpleGraph, Multimatroid, SkewPartition,
};
use ttu_core::representation::{
    fundamental_representation, h_avoiding_orientation, ias_from_euler, is_sheltering, is_strict, is_ttu, named,
    representation_matrix, ttu_certificate_for_circle_graph, ttu_check, CertificateOutcome, TtuMode,
};
use ttu_core::{Matrix, Rational};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn same(name: &str, got: &Matrix, want: &Golden) -> Result<(), String> {
    let want: Matrix = want.to_matrix();
    ensure(got.sorted() == want.sorted(), || {
        format!("{name} differs:\n{}", got.to_text())
    })
}

fn named_cols(m: Matrix, names: &BTreeMap<String, String>) -> Matrix {
    m.relabel_cols(|l| names.get(l).cloned().unwrap_or_else(|| l.to_string()))
        .unwrap()
}

fn classes_of(vertices: &[&str]) -> SkewPartition {
    SkewPartition::new(
        vertices
            .iter()
            .map(|v| ["phi", "chi", "psi"].iter().map(|k| format!("{k}({v})")).collect())
            .collect(),
    )
    .unwrap()
}

fn running_theta() -> Matrix {
    let fx = fixtures::running_example();
    let o = h_avoiding_orientation(&fx.graph, &fx.euler, &["e8".to_string()].into()).unwrap();
    let theta: Matrix = edge_transition_incidence(&fx.directed, &all_transitions(&fx.graph).unwrap(), &o).unwrap();
    named_cols(theta, &fx.euler.names(&fx.graph).unwrap())
}

fn edge_transition_golden() -> Check {
    let fx = fixtures::running_example();
    let inc: Matrix = incidence_matrix(&fx.directed).map_err(|e| e.to_string())?;
    same(
        "incidence transpose",
        &inc.transpose(),
        &fixtures::incidence_transpose(),
    )?;
    same("theta", &running_theta(), &fixtures::theta())?;
    Ok("8x12 theta and 8x4 incidence transpose match".into())
}

fn walk_projection_golden() -> Check {
    let fx = fixtures::running_example();
    let w = fixtures::triangle_walk();
    let sigma: Matrix = incidence_vector(&fx.directed, &w, "W").unwrap();
    same("sigma(D, W)", &sigma, &fixtures::triangle_incidence())?;
    same(
        "sigma theta",
        &sigma.multiply(&running_theta()).unwrap(),
        &fixtures::triangle_times_theta(),
    )?;
    let o = h_avoiding_orientation(&fx.graph, &fx.euler, &["e8".to_string()].into()).unwrap();
    let p = partition_from_transversal(&fx.graph, &fixtures::running_transversal()).unwrap();
    let projected = project_walk(&fx.graph, &p, &w).unwrap();
    let dtch = directed_touch_graph(&p, &o).unwrap();
    let v: Matrix = incidence_vector(&dtch, &projected, "W").unwrap();
    let v = named_cols(v, &fx.euler.names(&fx.graph).unwrap());
    same("projected walk", &v, &fixtures::triangle_projection())?;
    Ok("sigma = (1,0,0,-1,0,0,0,1); product row and (1,-1,0,0) on tau(P) match".into())
}

fn fundamental_golden() -> Check {
    let fx = fixtures::running_example();
    let b = strictly_fundamental_basis(&fx.directed, &maximal_forest(&fx.graph)).unwrap();
    let cm: Matrix = cycle_matrix(&fx.directed, &b).unwrap().matrix;
    same("CM(F, B, D)", &cm, &fixtures::fundamental_cycle_matrix())?;
    let o = h_avoiding_orientation(&fx.graph, &fx.euler, &["e8".to_string()].into()).unwrap();
    let rep = named(
        &representation_matrix(&fx.graph, &b, &fx.directed, &o).unwrap(),
        &fx.graph,
        &fx.euler,
    )
    .unwrap();
    same("product", &rep.matrix, &fixtures::fundamental_product())?;
    let transversals = rep.partition().transversals().count();
    ensure(transversals == 81, || format!("{transversals} transversals"))?;
    let s = is_sheltering(&rep).unwrap();
    ensure(s.sheltering && s.subtransversals_checked == 256, || format!("{s:?}"))?;
    let t = is_ttu(&rep, TtuMode::All).unwrap();
    ensure(t.ttu, || format!("{t:?}"))?;
    // A strict matrix has rank |V(F)| = 4. The 5-row product has rank 5, so
    // strictness is checked with E = {e8}, i.e. with row C_e8 removed.
    let full = is_strict(&rep).unwrap();
    ensure(
        !full.strict && full.matrix_rank == 5 && full.max_target_rank == 4,
        || format!("{full:?}"),
    )?;
    let four = rep.without_rows(&["C_e8"]).unwrap();
    let st = is_strict(&four).unwrap();
    ensure(st.strict && is_sheltering(&four).unwrap().sheltering, || {
        format!("{st:?}")
    })?;
    ensure(is_ttu(&four, TtuMode::All).unwrap().ttu, || {
        "4-row variant not TTU".into()
    })?;
    Ok(format!(
        "prints match; sheltering over 256 subtransversals; TTU over {} minors; strict after removing C_e8 \
         (5-row product: rank 5 over max 4, so not strict by rank)",
        t.submatrices_checked
    ))
}

fn parallel_contrast() -> Check {
    let fx = fixtures::parallel_edges();
    let (f, d) = (&fx.graph, &fx.directed);
    let names = fx.euler.names(f).unwrap();
    let system = all_transitions(f).unwrap();
    let keep: BTreeMap<String, String> = [("v1", "h_e1_v1"), ("v2", "h_e2_v2")]
        .map(|(v, h)| (v.to_string(), h.to_string()))
        .into();
    let o = TransitionalOrientation::containing(&system, &keep).unwrap();
    let theta = named_cols(edge_transition_incidence(d, &system, &o).unwrap(), &names);
    same("parallel theta", &theta, &fixtures::parallel_theta())?;
    let b = WalkFamily::new(vec![
        (
            "C1B".into(),
            ClosedWalk::from_pairs(&[("h_e1_v1", "h_e2_v1"), ("h_e2_v2", "h_e1_v2")]),
        ),
        (
            "C2B".into(),
            ClosedWalk::from_pairs(&[("h_e2_v2", "h_e3_v2"), ("h_e3_v1", "h_e2_v1")]),
        ),
        (
            "C3B".into(),
            ClosedWalk::from_pairs(&[("h_e3_v1", "h_e4_v1"), ("h_e4_v2", "h_e3_v2")]),
        ),
    ])
    .unwrap();
    ensure(is_integral_cycle_basis(d, &b).unwrap(), || "B is not integral".into())?;
    let a = cycle_matrix::<Rational>(d, &b)
        .unwrap()
        .matrix
        .multiply(&theta)
        .unwrap();
    same("A", &a, &fixtures::parallel_product_a())?;
    let p = classes_of(&["v1", "v2"]);
    let r = ttu_check(&a, &p, TtuMode::All).unwrap();
    let w = r.witness.ok_or("A passed")?;
    ensure(
        w.rows == ["C1B", "C3B"] && w.cols == ["chi(v1)", "psi(v2)"] && w.det.abs() == 2.into(),
        || format!("unexpected witness {w:?}"),
    )?;
    let tree = maximal_forest_with_order(f, &["e1"]).unwrap();
    let bp = strictly_fundamental_basis_with(d, &tree, &["e3".to_string()].into()).unwrap();
    let a2 = cycle_matrix::<Rational>(d, &bp)
        .unwrap()
        .matrix
        .multiply(&theta)
        .unwrap();
    let a2 = a2
        .relabel_rows(|r| format!("C{}B'", r.trim_start_matches("C_e").parse::<usize>().unwrap() - 1))
        .unwrap();
    same("A'", &a2, &fixtures::parallel_product_a_prime())?;
    let r2 = ttu_check(&a2, &p, TtuMode::All).unwrap();
    ensure(r2.ttu, || format!("{:?}", r2.witness))?;
    Ok(format!(
        "A fails at rows {:?}, cols {:?}, det {}; A' passes; B integral",
        w.rows, w.cols, w.det
    ))
}

fn euler_ias_golden() -> Check {
    let fx = fixtures::running_example();
    let e: BTreeSet<String> = ["e8".to_string()].into();
    let gamma = induced_circuits(&fx.graph, &fx.euler, &e).unwrap();
    same(
        "CM(F, Gamma, D)",
        &cycle_matrix(&fx.directed, &gamma).unwrap().matrix,
        &fixtures::induced_cycle_matrix(),
    )?;
    let rep = ias_from_euler(&fx.graph, &fx.euler, &e).unwrap();
    same("IAS(F, C, E)", &rep.matrix, &fixtures::euler_ias())?;
    let two = rep.matrix.get("C_a", "psi(b)").unwrap().clone();
    ensure(two == Rational::from_integer(2.into()), || {
        format!("entry (C_a, psi(b)) = {two}")
    })?;
    let p = rep.partition().clone();
    let rows = rep.matrix.row_labels().to_vec();
    let mut worst = Rational::from_integer(0.into());
    for t in p.transversals() {
        let cols: Vec<String> = p.labels_of(&t.iter().map(|&x| Some(x)).collect::<Vec<_>>());
        let det = rep.matrix.submatrix(&rows, &cols).unwrap().det().unwrap().abs();
        worst = worst.max(det);
    }
    ensure(worst <= Rational::from_integer(1.into()), || {
        format!("transversal minor with |det| = {worst}")
    })?;
    ensure(is_ttu(&rep, TtuMode::TransversalOnly).unwrap().ttu, || {
        "transversal-only TTU fails".into()
    })?;
    ensure(is_sheltering(&rep).unwrap().sheltering, || "not sheltering".into())?;
    ensure(is_strict(&rep).unwrap().strict, || "not strict".into())?;
    Ok("print matches incl. 2 at (C_a, psi(b)); 81 transversal 4x4 minors have |det| <= 1; sheltering, strict".into())
}

fn walk_projection_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
    let n = 250;
    for i in 0..n {
        let (f, c) = common::random_graph(&mut rng, 6);
        let d = common::random_directed(&f, &c, &mut rng);
        let w = common::random_closed_walk(&f, &mut rng);
        let t = common::random_transversal(&f, &mut rng);
        let o = common::random_orientation(&f, &mut rng);
        let p = partition_from_transversal(&f, &t).unwrap();
        let theta: Matrix = edge_transition_incidence(&d, &all_transitions(&f).unwrap(), &o).unwrap();
        let lhs = incidence_vector::<Rational>(&d, &w, "W")
            .unwrap()
            .multiply(&theta)
            .unwrap()
            .restrict_columns(&t.labels())
            .unwrap();
        let dtch = directed_touch_graph(&p, &o).unwrap();
        let rhs: Matrix = incidence_vector(&dtch, &project_walk(&f, &p, &w).unwrap(), "W").unwrap();
        ensure(lhs.sorted() == rhs.sorted(), || {
            format!("tuple {i}: {} vs {}", lhs.to_text(), rhs.to_text())
        })?;
    }
    Ok(format!("{n} random tuples on up to 6 vertices"))
}

fn catalog_representations() -> Check {
    let catalog = common::catalog(4);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut runs = 0;
    for (word, f, c) in &catalog {
        let mut choices = vec![(
            c.directed_version(f).unwrap(),
            h_avoiding_orientation(f, c, &default_e_base(f)).unwrap(),
        )];
        for _ in 0..3 {
            choices.push((
                common::random_directed(f, c, &mut rng),
                common::random_orientation(f, &mut rng),
            ));
        }
        for (d, o) in &choices {
            let strict_rep = fundamental_representation(f, d, o, &default_e_base(f)).unwrap();
            let s = is_sheltering(&strict_rep).unwrap();
            ensure(s.sheltering, || format!("{word}: {s:?}"))?;
            let st = is_strict(&strict_rep).unwrap();
            ensure(st.strict, || format!("{word}: {st:?}"))?;
            let t = is_ttu(&strict_rep, TtuMode::All).unwrap();
            ensure(t.ttu, || format!("{word}: {:?}", t.witness))?;
            let full = fundamental_representation(f, d, o, &BTreeSet::new()).unwrap();
            ensure(is_sheltering(&full).unwrap().sheltering, || {
                format!("{word}: E = {{}} not sheltering")
            })?;
            ensure(is_ttu(&full, TtuMode::All).unwrap().ttu, || {
                format!("{word}: E = {{}} not TTU")
            })?;
            runs += 1;
        }
    }
    let loops = catalog.iter().filter(|(_, f, _)| common::has_loop(f)).count();
    let multi = catalog.iter().filter(|(_, f, _)| common::has_multi_edge(f)).count();
    Ok(format!(
        "{} graphs ({loops} with loops, {multi} with multi-edges), {runs} (D, o) choices: strict, sheltering, TTU",
        catalog.len()
    ))
}

fn axiom_suite() -> Check {
    let mut graphs = 0;
    for n in 0..=4 {
        for g in LoopedSimpleGraph::all_simple(n) {
            let v = verify_multimatroid_axioms(&z3(&g).unwrap()).unwrap();
            ensure(v.is_empty(), || format!("Z3 of {:?}: {:?}", g.to_json(), v[0]))?;
            graphs += 1;
        }
    }
    let catalog = common::catalog(4);
    for (word, f, c) in &catalog {
        let q = q_f_named(f, c).unwrap();
        let v = verify_multimatroid_axioms(&q).unwrap();
        ensure(v.is_empty(), || format!("Q(F) of {word}: {:?}", v[0]))?;
        let m = q.extension_mismatch().unwrap();
        ensure(m.is_none(), || format!("Q(F) of {word}: {m:?}"))?;
    }
    Ok(format!(
        "{graphs} simple graphs and {} catalog graphs, zero violations",
        catalog.len()
    ))
}

fn z3_qf_suite() -> Check {
    let fx = fixtures::running_example();
    let mut cases = vec![("running example".to_string(), fx.graph.clone(), fx.euler.clone())];
    for (word, f, _) in common::catalog(4) {
        let c = euler_system(&f, None).unwrap();
        cases.push((word, f, c));
    }
    for (name, f, c) in &cases {
        let r = z3_equals_qf(&interlacement_graph(f, c).unwrap(), f, c).unwrap();
        ensure(r.equal, || format!("{name}: {:?}", r.counterexample))?;
    }
    Ok(format!("{} graphs with their deterministic Euler systems", cases.len()))
}

fn circle_suite() -> Check {
    let mut small = 0;
    for n in 0..=4 {
        for g in LoopedSimpleGraph::all_simple(n) {
            ensure(is_circle_graph_bruteforce(&g).unwrap().is_circle, || {
                format!("{:?}", g.to_json())
            })?;
            small += 1;
        }
    }
    ensure(
        is_circle_graph_bruteforce(&LoopedSimpleGraph::cycle(5))
            .unwrap()
            .is_circle,
        || "C5 rejected".into(),
    )?;
    let w5 = is_circle_graph_bruteforce(&LoopedSimpleGraph::wheel(5)).unwrap();
    ensure(!w5.is_circle, || format!("W5 accepted with {:?}", w5.word))?;
    match ttu_certificate_for_circle_graph(&LoopedSimpleGraph::cycle(4)).unwrap() {
        CertificateOutcome::Certificate(c) => ensure(c.verified(), || format!("{:?}", c.checks))?,
        other => return Err(format!("C4: {other:?}")),
    }
    let refusal = ttu_certificate_for_circle_graph(&LoopedSimpleGraph::wheel(5)).unwrap();
    ensure(matches!(refusal, CertificateOutcome::Refusal { .. }), || {
        "W5 certified".into()
    })?;
    let z = z3(&LoopedSimpleGraph::cycle(4)).unwrap();
    ensure(z.partition().class_count() == 4, || "C4 classes".into())?;
    Ok(format!(
        "{small} graphs on <= 4 vertices and C5 accepted; W5 rejected after {} words; C4 certified, W5 refused",
        w5.words_examined
    ))
}

type Criterion = (&'static str, Duration, fn() -> Check);

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "edge-transition incidence of the running example",
            Duration::from_secs(1),
            edge_transition_golden,
        ),
        (
            "walk incidence and its touch-graph projection",
            Duration::from_secs(1),
            walk_projection_golden,
        ),
        (
            "strictly fundamental product of the running example",
            Duration::from_secs(30),
            fundamental_golden,
        ),
        (
            "integral but not strictly fundamental basis contrast",
            Duration::from_secs(5),
            parallel_contrast,
        ),
        ("Euler-induced IAS(F, C, E)", Duration::from_secs(10), euler_ias_golden),
        (
            "projection identity on random tuples",
            Duration::from_secs(60),
            walk_projection_property,
        ),
        (
            "strict TTU representations over the catalog",
            Duration::from_secs(300),
            catalog_representations,
        ),
        (
            "multimatroid axioms of Z3(G) and Q(F)",
            Duration::from_secs(300),
            axiom_suite,
        ),
        (
            "Z3 of the interlacement graph equals Q(F)",
            Duration::from_secs(120),
            z3_qf_suite,
        ),
        (
            "circle recognition and certificates",
            Duration::from_secs(600),
            circle_suite,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed <= *budget {
                Ok(d)
            } else {
                Err(format!("took {elapsed:?}, budget {budget:?}"))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {name} ({:.2?}): {detail}", i + 1, elapsed),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {name} ({:.2?}): {why}", i + 1, elapsed);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
