//! Exit criteria. Prints one PASS/FAIL line per criterion and exits non-zero
//! if any fails.

use std::time::{Duration, Instant};

use pathhom::corpus::{
    enumerate_2fg_progenitors, enumerate_outdeg2_family, gen_goto_skeleton, gen_structured_skeleton,
};
use pathhom::digraph::{k_partite_tower, suspension, Digraph};
use pathhom::metrics::{corpus_histogram, histogram_csv};
use pathhom::verify::{
    digraph_from_mask, eight_vertex_flow_graph, layer_lists, tower_prediction, two_cycle,
};
use pathhom::{betti, brute_force_oracle, compare, cyclomatic};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in 1..=4usize {
        for mask in 0..1u64 << (n * (n - 1)) {
            let d = digraph_from_mask(n, mask);
            if betti(&d, 3).unwrap() != brute_force_oracle(&d, 3).unwrap() {
                failures.push(format!("n={n} mask={mask}"));
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..200 {
        let n = rng.random_range(1..=8usize);
        let density = rng.random_range(0.15..0.4);
        let mask = (0..n * (n - 1))
            .filter(|_| rng.random_bool(density))
            .fold(0u64, |acc, bit| acc | 1 << bit);
        let d = digraph_from_mask(n, mask);
        if betti(&d, 3).unwrap() != brute_force_oracle(&d, 3).unwrap() {
            failures.push(format!("random sample {i}"));
        }
        checked += 1;
    }
    outcome(
        failures.is_empty(),
        format!("{checked} digraphs, mismatches {failures:?}"),
    )
}

fn double_suspension() -> Outcome {
    let s1 = betti(&suspension(&two_cycle(), 1).unwrap(), 3)
        .unwrap()
        .reduced;
    let s2 = betti(&suspension(&two_cycle(), 2).unwrap(), 4)
        .unwrap()
        .reduced;
    outcome(
        s1 == [0, 0, 1, 0] && s2 == [0, 0, 0, 1, 0],
        format!("k=1 {s1:?}, k=2 {s2:?}"),
    )
}

fn eight_vertex_flow() -> Outcome {
    let d = eight_vertex_flow_graph();
    let b = betti(&d, 3).unwrap().reduced;
    let nu = cyclomatic(&d).unwrap();
    outcome(
        b == [0, 1, 1, 0] && nu == 4,
        format!("reduced {b:?}, nu {nu}"),
    )
}

fn towers() -> Outcome {
    let lists = layer_lists(4, 3);
    let bad: Vec<String> = lists
        .par_iter()
        .filter_map(|l| {
            let got = betti(&k_partite_tower(l).unwrap(), l.len())
                .unwrap()
                .reduced;
            (got != tower_prediction(l, l.len())).then(|| format!("{l:?} -> {got:?}"))
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!("{} layer lists, mismatches {bad:?}", lists.len()),
    )
}

fn family_counts() -> Outcome {
    let sizes: Vec<usize> = (3..=7)
        .map(|n| enumerate_outdeg2_family(n).unwrap().len())
        .collect();
    outcome(
        sizes == [1, 7, 66, 916, 16816],
        format!("n = 3..=7 gives {sizes:?}"),
    )
}

fn second_homology_profiles(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = enumerate_2fg_progenitors(n)
        .unwrap()
        .into_iter()
        .filter(|r| r.betti.reduced_at(2) > 0)
        .map(|r| r.betti.reduced)
        .collect();
    out.sort();
    out
}

fn small_progenitors() -> Outcome {
    let five = second_homology_profiles(5);
    let four = second_homology_profiles(4);
    let trimmed: Vec<&[usize]> = five.iter().map(|p| &p[..3]).collect();
    outcome(
        trimmed == [[0, 0, 1], [0, 1, 1]] && five.iter().all(|p| p[3] == 0) && four.len() == 1,
        format!(
            "5 vertices {five:?}; 4 vertices {} records (expected 1)",
            four.len()
        ),
    )
}

fn six_vertex_progenitors() -> Outcome {
    let six = second_homology_profiles(6);
    let mut beta1: Vec<usize> = six.iter().map(|p| p[1]).collect();
    beta1.sort();
    let want = [vec![0; 10], vec![1; 5], vec![2; 2]].concat();
    outcome(
        six.len() == 17 && six.iter().all(|p| p[2] == 1) && beta1 == want,
        format!("{} records, beta1 {beta1:?}", six.len()),
    )
}

fn structured_skeletons() -> Outcome {
    let bad: Vec<u64> = (0..1000u64)
        .into_par_iter()
        .filter(|&seed| {
            let sk = gen_structured_skeleton(seed, 20).unwrap();
            let r = compare(&sk.cfg, 3).unwrap();
            !(r.cyclomatic == sk.predicate_count
                && r.reduced_betti.reduced_at(1) == sk.predicate_count
                && r.reduced_betti.reduced_at(2) == 0)
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!("1000 skeletons, failing seeds {bad:?}"),
    )
}

fn goto_skeletons() -> Outcome {
    let positive = (0..2000u64)
        .into_par_iter()
        .filter(|&seed| {
            let sk = gen_goto_skeleton(seed, 16, 17).unwrap();
            betti(&sk.cfg, 3).unwrap().reduced_at(2) > 0
        })
        .count();
    let fraction = positive as f64 / 2000.0;
    outcome(
        fraction > 0.0 && fraction <= 0.02,
        format!(
            "{positive}/2000 = {:.3}% with second homology",
            100.0 * fraction
        ),
    )
}

fn series_additivity() -> Outcome {
    let failures: Vec<String> = pathhom::verify::series_suite(50, 11)
        .into_iter()
        .filter(|c| !c.passed)
        .map(|c| c.to_string())
        .collect();
    outcome(
        failures.is_empty(),
        format!("50 pairs, failures {failures:?}"),
    )
}

fn generated_corpus_workflow() -> Outcome {
    let mut graphs: Vec<(String, Digraph)> = Vec::new();
    for seed in 0..100 {
        graphs.push((
            format!("structured-{seed}"),
            gen_structured_skeleton(seed, 20).unwrap().cfg,
        ));
        graphs.push((
            format!("goto-{seed}"),
            gen_goto_skeleton(seed, 16, 17).unwrap().cfg,
        ));
    }
    let reports: Vec<_> = graphs
        .par_iter()
        .map(|(id, d)| {
            let mut r = compare(d, 3).unwrap();
            r.graph_id = id.clone();
            r
        })
        .collect();
    let rows = corpus_histogram(&reports);
    let total: usize = rows.iter().map(|r| r.2).sum();
    let structured_on_diagonal = reports
        .iter()
        .filter(|r| r.graph_id.starts_with("structured"))
        .all(|r| r.divergence == 0);
    let csv = histogram_csv(&rows);
    outcome(
        total == 200 && structured_on_diagonal && csv.starts_with("nu,beta1,count\n"),
        format!("{} histogram rows over {total} graphs", rows.len()),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "oracle equivalence",
            Duration::from_secs(300),
            oracle_equivalence,
        ),
        (
            "suspensions of the 2-cycle",
            Duration::from_secs(30),
            double_suspension,
        ),
        (
            "eight-vertex flow graph",
            Duration::from_secs(5),
            eight_vertex_flow,
        ),
        ("layered towers", Duration::from_secs(600), towers),
        (
            "outdegree-2 family sizes",
            Duration::from_secs(1800),
            family_counts,
        ),
        (
            "4- and 5-vertex progenitors",
            Duration::from_secs(600),
            small_progenitors,
        ),
        (
            "6-vertex progenitors",
            Duration::from_secs(600),
            six_vertex_progenitors,
        ),
        (
            "structured skeletons",
            Duration::from_secs(600),
            structured_skeletons,
        ),
        ("goto skeletons", Duration::from_secs(600), goto_skeletons),
        (
            "series additivity",
            Duration::from_secs(600),
            series_additivity,
        ),
        (
            "generated corpus workflow",
            Duration::from_secs(600),
            generated_corpus_workflow,
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let passed = out.passed && elapsed <= budget;
        if !passed {
            failed += 1;
        }
        let status = if passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {name} ({:.1}s of {}s): {}",
            i + 1,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            out.detail
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
