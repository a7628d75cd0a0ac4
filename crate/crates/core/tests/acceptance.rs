//! End-to-end checks of the published numbers, one line per criterion.
//!
//! Runs as a plain binary so the report is printed even when everything
//! passes.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rigidity_core::calligraph::{
    class_of, coupler_degree_numeric, coupler_multiplicity, coupler_witnesses, predict,
    CalligraphClass,
};
use rigidity_core::catalog::{catalog, NAMES};
use rigidity_core::components::{
    class_sizes, classify_witnesses, component_number, fiber_witnesses, same_component,
};
use rigidity_core::isometry::Transformation;
use rigidity_core::monodromy::{monodromy_orbits, MonodromyOptions};
use rigidity_core::realization::count_realizations;
use rigidity_core::rng::{self, tag};
use rigidity_core::sparsity::{is_sparse, is_tight, max_tight_decomposition};
use rigidity_core::{EdgeLengths, Rational, Vertex};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(f)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn realization_counts() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (name, expected) in [("fig_mr", 4), ("triangle", 2), ("fig_split_G", 24)] {
        let g = catalog(name).unwrap();
        for seed in 0..3 {
            let (count, took) = single_threaded(|| timed(|| count_realizations(&g, seed)));
            let count = count.map_err(|e| format!("{name} seed {seed}: {e}"))?;
            ensure(count.count == expected, || {
                format!(
                    "{name} seed {seed}: {} realizations, expected {expected}",
                    count.count
                )
            })?;
            ensure(count.paths <= 256, || {
                format!("{name}: {} paths", count.paths)
            })?;
            ensure(took <= Duration::from_secs(30), || {
                format!("{name} seed {seed}: {took:.1?}")
            })?;
            slowest = slowest.max(took);
        }
    }
    Ok(format!(
        "fig_mr 4, triangle 2, fig_split_G 24 on seeds 0-2; slowest single-threaded run {slowest:.2?}"
    ))
}

fn component_numbers() -> Outcome {
    let mut found = Vec::new();
    for (name, expected) in [("fig_coupler", 2), ("fig_main2", 1), ("fig_main1", 16)] {
        let g = catalog(name).unwrap();
        let (report, took) = single_threaded(|| timed(|| component_number(&g, 0)));
        let report = report.map_err(|e| format!("{name}: {e}"))?;
        ensure(report.component_number == expected, || {
            format!(
                "{name}: {} components, expected {expected}",
                report.component_number
            )
        })?;
        if name == "fig_main1" {
            let mut counts = report.per_part_counts.clone();
            counts.sort_unstable();
            ensure(counts == [1, 1, 1, 1, 1, 1, 4, 4], || {
                format!("fig_main1 part counts {counts:?}")
            })?;
            ensure(took <= Duration::from_secs(5), || {
                format!("fig_main1 took {took:.1?}")
            })?;
            found.push(format!("{name} {expected} ({took:.2?})"));
        } else {
            found.push(format!("{name} {expected}"));
        }
    }
    Ok(found.join(", "))
}

fn decomposition() -> Outcome {
    let d = max_tight_decomposition(&catalog("fig_main1").unwrap()).map_err(|e| e.to_string())?;
    let mut sets: Vec<Vec<Vertex>> = d
        .parts
        .iter()
        .map(|p| p.vertices.iter().copied().collect())
        .collect();
    sets.sort();
    let mut expected = vec![
        vec![1, 2, 3, 4],
        vec![0, 6, 8, 9],
        vec![1, 7],
        vec![7, 8],
        vec![5, 7],
        vec![3, 5],
        vec![5, 6],
        vec![4, 6],
    ];
    expected.sort();
    ensure(sets == expected, || format!("fig_main1 parts {sets:?}"))?;
    let mut checked = 0;
    for name in NAMES {
        let g = catalog(name).unwrap();
        if g.vertex_count() > 6 || !is_sparse(&g) {
            continue;
        }
        let d = max_tight_decomposition(&g).map_err(|e| e.to_string())?;
        let mut parts: Vec<BTreeSet<Vertex>> = d
            .parts
            .iter()
            .filter(|p| !p.edges.is_empty())
            .map(|p| p.vertices.clone())
            .collect();
        parts.sort();
        ensure(parts == common::brute_max_tight(&g), || {
            format!("{name}: decomposition differs from brute force")
        })?;
        checked += 1;
    }
    Ok(format!(
        "fig_main1 has the 8 expected parts; brute-force maximality holds on {checked} catalog graphs"
    ))
}

fn classes() -> Outcome {
    let start = Instant::now();
    let class =
        |name: &str| class_of(&catalog(name).unwrap(), 0).map_err(|e| format!("{name}: {e}"));
    let h = class("fig_split_H")?;
    let main2 = class("fig_main2")?;
    let l = class("L")?;
    let c5 = class("fig_split_C5")?;
    ensure(h == CalligraphClass::new(6, 2, 2), || format!("[H] = {h}"))?;
    ensure(main2 == CalligraphClass::new(11, 3, 3), || {
        format!("[main2] = {main2}")
    })?;
    ensure(l == CalligraphClass::new(1, 1, 0), || format!("[L] = {l}"))?;
    let direct = count_realizations(&catalog("fig_split_G").unwrap(), 0)
        .map_err(|e| e.to_string())?
        .count as i64;
    ensure(h.pair(&c5) == direct, || {
        format!("[H].[C5] = {} but c(G) = {direct}", h.pair(&c5))
    })?;
    let took = start.elapsed();
    ensure(took <= Duration::from_secs(120), || {
        format!("took {took:.1?}")
    })?;
    Ok(format!(
        "[H] = {h}, [main2] = {main2}, [L] = {l}; [H].[C5] = {direct} = c(G); {took:.1?}"
    ))
}

fn coupler_degrees() -> Outcome {
    let mut parts = Vec::new();
    for (name, degree, sizes) in [("fig_main2", 22, vec![22]), ("fig_coupler", 12, vec![6, 6])] {
        let g = catalog(name).unwrap();
        let d = coupler_degree_numeric(&g, 0).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            d.line_counts == [degree, degree] && d.degree == degree,
            || {
                format!(
                    "{name}: line counts {:?}, degree {}",
                    d.line_counts, d.degree
                )
            },
        )?;
        let (lengths, points) = coupler_witnesses(&g, 0).map_err(|e| e.to_string())?;
        let labels =
            classify_witnesses(&g, &lengths, &points.solutions).map_err(|e| e.to_string())?;
        let found = class_sizes(&labels);
        ensure(found == sizes, || format!("{name}: class sizes {found:?}"))?;
        parts.push(format!("{name} {degree} on both lines, classes {found:?}"));
    }
    Ok(parts.join("; "))
}

fn genus() -> Outcome {
    let main1 = predict(CalligraphClass::new(272, 0, 0), 16);
    let main2 = predict(CalligraphClass::new(11, 3, 3), 1);
    ensure(main1.genus_bound(0) == Rational::from_integer(256), || {
        format!("main1 bound {}", main1.genus_bound(0))
    })?;
    ensure(
        main1.degree_per_component == Rational::from_integer(34),
        || format!("main1 degree {}", main1.degree_per_component),
    )?;
    ensure(main2.genus_bound(0) == Rational::from_integer(88), || {
        format!("main2 bound {}", main2.genus_bound(0))
    })?;
    Ok("fig_main1 genus <= 256 (degree 34 each), fig_main2 genus <= 88".into())
}

fn multiplicities() -> Outcome {
    let m = |name: &str| {
        coupler_multiplicity(&catalog(name).unwrap(), 0).map_err(|e| format!("{name}: {e}"))
    };
    let (left, right) = (m("fig_m_left")?, m("fig_m_right")?);
    ensure(left == 1 && right == 2, || {
        format!("left {left}, right {right}")
    })?;
    Ok("fig_m_left 1, fig_m_right 2".into())
}

fn properties() -> Outcome {
    let mut rng = rng::stream(2024, 77);
    let mut disagreements = 0;
    for _ in 0..1000 {
        let g = common::random_graph(&mut rng, 6);
        if is_sparse(&g) != common::brute_sparse(&g) || is_tight(&g) != common::brute_tight(&g) {
            disagreements += 1;
        }
    }
    ensure(disagreements == 0, || {
        format!("{disagreements} sparsity disagreements")
    })?;

    let g = catalog("fig_coupler").unwrap();
    let lengths = EdgeLengths::sample(&g, &mut rng::stream(11, tag::LENGTHS));
    let ws = fiber_witnesses(&g, &lengths, 11).map_err(|e| e.to_string())?;
    let random_t = |rng: &mut rng::SeededRng| {
        Transformation::rotation(
            rng::random_complex(rng),
            rng::random_complex(rng),
            rng::random_complex(rng),
        )
    };
    let mut pool = ws.points.solutions.clone();
    for r in &ws.points.solutions {
        pool.push(r.transformed(&random_t(&mut rng)));
    }
    let same = |i: usize, j: usize| {
        same_component(&g, &lengths, &pool[i], &pool[j])
            .map(|m| m.same)
            .map_err(|e| e.to_string())
    };
    for _ in 0..100 {
        let [a, b, c] = [0; 3].map(|_| rng.gen_range(0..pool.len()));
        ensure(same(a, a)?, || "not reflexive".into())?;
        ensure(same(a, b)? == same(b, a)?, || "not symmetric".into())?;
        ensure(!(same(a, b)? && same(b, c)?) || same(a, c)?, || {
            "not transitive".into()
        })?;
    }
    for _ in 0..100 {
        let r = &pool[rng.gen_range(0..pool.len())];
        let t = random_t(&mut rng);
        let m = same_component(&g, &lengths, r, &r.transformed(&t)).map_err(|e| e.to_string())?;
        ensure(m.same, || "same_component(r, t r) is false".into())?;
    }

    let mut worst = 0.0f64;
    for i in 0..12u64 {
        let n = 3 + (i % 4) as usize;
        let g = common::random_tight(&mut rng::stream(i, 99), n);
        let c = count_realizations(&g, i).map_err(|e| e.to_string())?.count as u64;
        let bound = common::count_bound(n);
        ensure(c <= bound, || {
            format!("{c} realizations exceed the bound {bound}")
        })?;
        worst = worst.max(c as f64 / bound as f64);
    }
    Ok(format!(
        "0 disagreements on 1000 graphs; equivalence on 100 triples; invariance under 100 t; \
         counts within binom(2n-4, n-2) (max ratio {worst:.2})"
    ))
}

fn monodromy() -> Outcome {
    let g = catalog("fig_coupler").unwrap();
    let lengths = EdgeLengths::sample(&g, &mut rng::stream(1, tag::LENGTHS));
    let ws = fiber_witnesses(&g, &lengths, 1).map_err(|e| e.to_string())?;
    ensure(ws.points.count == 12, || {
        format!("{} witness points", ws.points.count)
    })?;
    let report =
        monodromy_orbits(&ws, 1, &MonodromyOptions::default()).map_err(|e| e.to_string())?;
    let labels =
        classify_witnesses(&g, &lengths, &ws.points.solutions).map_err(|e| e.to_string())?;
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); class_sizes(&labels).len()];
    for (i, l) in labels.iter().enumerate() {
        by_class[l.class_id].push(i);
    }
    by_class.sort();
    ensure(report.orbits.len() == 2, || {
        format!("{} orbits", report.orbits.len())
    })?;
    ensure(report.orbits == by_class, || {
        "orbits differ from the component classes".into()
    })?;
    Ok(format!(
        "2 orbits of 6 after {} loops, identical to the component classes",
        report.loops
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("realization counts", realization_counts),
        ("component numbers", component_numbers),
        ("max-tight decomposition", decomposition),
        ("calligraph classes", classes),
        ("coupler degrees", coupler_degrees),
        ("genus bounds", genus),
        ("coupler multiplicities", multiplicities),
        ("property suites", properties),
        ("monodromy", monodromy),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
