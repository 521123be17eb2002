use rainbow_core::generators::gen_random_mindeg;
use rainbow_core::graph::is_rainbow_matching;
use rainbow_core::solvers::{analyze, case1_solve, case2_solve, case3_solve, pipeline_solve, SolveTrace};
use rainbow_core::structure::{threshold_n, Case};
use rainbow_core::weights::Weight;

fn instances() -> impl Iterator<Item = (usize, u64)> {
    [2usize, 3].into_iter().flat_map(|k| (0..40u64).map(move |s| (k, s)))
}

#[test]
fn pipeline_replays_to_its_matching() {
    for (k, seed) in instances() {
        let g = gen_random_mindeg(threshold_n(k), k, 3 * k, 0.1, seed).unwrap();
        let r = pipeline_solve(&g, k, 1_000_000, seed).unwrap();
        assert!(r.succeeded, "k={k} seed={seed}");
        assert!(is_rainbow_matching(&g, &r.matching.edges));
        let mut replay = r.trace.replay().expect("constructive win");
        let mut got = r.matching.edges.clone();
        replay.sort();
        got.sort();
        assert_eq!(replay, got, "k={k} seed={seed}");
    }
}

#[test]
fn case_traces_respect_step_bounds() {
    let (mut case1_runs, mut case2_runs, mut case3_runs) = (0, 0, 0);
    for (k, seed) in instances() {
        let g = gen_random_mindeg(threshold_n(k), k, 3 * k, 0.1, seed).unwrap();
        let a = analyze(&g, k, seed).unwrap();
        for case in a.label.applicable() {
            let r = match case {
                Case::Case1 => case1_solve(&a.critical, &a.partition, &a.w1, k),
                Case::Case2 => case2_solve(&a.critical, &a.partition, &a.w2, k),
                _ => case3_solve(&a.critical, &a.partition, &a.w3, k),
            };
            let Ok(r) = r else { continue };
            assert!(is_rainbow_matching(&g, &r.matching.edges));
            match &r.trace {
                SolveTrace::Case1 { steps, stuck_at } => {
                    case1_runs += 1;
                    for s in steps {
                        assert!(s.within_bound(), "k={k} seed={seed} step {s:?}");
                    }
                    if stuck_at.is_none() && steps.len() < k {
                        let total: Weight = steps.iter().map(|s| s.weight).sum();
                        assert_eq!(total, a.w1.total);
                    }
                }
                SolveTrace::Case2 { steps, .. } => {
                    case2_runs += 1;
                    assert!(steps.iter().all(|s| s.max_erosion <= Weight::new(3, 2)), "k={k} seed={seed}");
                }
                SolveTrace::Case3 { chain_holds, distinct_centers_and_colors, w3, .. } => {
                    case3_runs += 1;
                    assert!(*w3 < Weight::from_integer(1));
                    assert!(*chain_holds && *distinct_centers_and_colors, "k={k} seed={seed}");
                }
                t => panic!("unexpected trace {t:?}"),
            }
        }
    }
    assert!(case1_runs > 0 && case2_runs > 0 && case3_runs > 0, "{case1_runs} {case2_runs} {case3_runs}");
}
