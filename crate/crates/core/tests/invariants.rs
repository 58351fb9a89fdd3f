//! Cross-module checks: constructions against bounds, bounds against the
//! exact solvers.

use distchrom::bounds::{aggregate, counting_lower_bound, independence_upper_bound};
use distchrom::colorings::{
    color_bose_chowla, color_sum, color_symmetric, color_theorem1, verify_proper, Verdict,
};
use distchrom::exact::{
    exact_chromatic_number, exact_independence_number, greedy_coloring, AdjacencyMatrix, Outcome,
    SolveLimits,
};
use distchrom::numtheory::binomial;
use distchrom::GraphSpec;

fn chi(spec: &GraphSpec) -> usize {
    let g = AdjacencyMatrix::from_spec(spec, 120).unwrap();
    match exact_chromatic_number(&g, &SolveLimits::chromatic()).unwrap() {
        Outcome::Solved { value, .. } => value,
        other => panic!("{spec}: {other:?}"),
    }
}

fn alpha(spec: &GraphSpec) -> usize {
    let g = AdjacencyMatrix::from_spec(spec, 500).unwrap();
    let limits = SolveLimits {
        workers: 2,
        ..SolveLimits::independence()
    };
    match exact_independence_number(&g, &limits).unwrap() {
        Outcome::Solved { value, .. } => value,
        other => panic!("{spec}: {other:?}"),
    }
}

#[test]
fn greedy_and_counting_sandwich_chi() {
    for n in 4..=7 {
        let spec = GraphSpec::new(n, 3, 2).unwrap();
        let g = AdjacencyMatrix::from_spec(&spec, 120).unwrap();
        let x = chi(&spec) as u64;
        assert!(greedy_coloring(&g) as u64 >= x, "{spec}");
        assert!(x >= counting_lower_bound(n, 3).unwrap(), "{spec}");
    }
}

#[test]
fn sum_coloring_never_beaten_by_more_than_n() {
    for n in 3..=7 {
        for r in 2..=4.min(n - 1) {
            let spec = GraphSpec::new(n, r, r - 1).unwrap();
            assert!(chi(&spec) <= n, "{spec}");
        }
    }
}

#[test]
fn alpha_respects_independence_bound() {
    for n in 4..=12 {
        for r in 2..n {
            if binomial(n as u64, r as u64).unwrap() > 120 {
                continue;
            }
            let spec = GraphSpec::new(n, r, r - 1).unwrap();
            assert!(
                alpha(&spec) as u64 <= independence_upper_bound(n, r).unwrap(),
                "{spec}"
            );
        }
    }
}

#[test]
fn aggregate_brackets_the_exact_value() {
    for n in 3..=8 {
        for r in 1..n {
            if binomial(n as u64, r as u64).unwrap() > 40 {
                continue;
            }
            for s in 0..r {
                let spec = GraphSpec::new(n, r, s).unwrap();
                let report = aggregate(n, r, s).unwrap();
                let x = chi(&spec) as u64;
                assert!(
                    report.best_lower <= x && x <= report.best_upper,
                    "{spec}: {x} vs {}",
                    report.summary()
                );
                if let Some(e) = report.exact {
                    assert_eq!(e, x, "{spec}");
                }
            }
        }
    }
}

#[test]
fn constructions_use_at_least_the_lower_bound() {
    let mut checked = 0;
    for n in [5usize, 7, 11] {
        for r in 1..=4 {
            for s in 0..r {
                let report = aggregate(n, r, s).unwrap();
                for coloring in [color_symmetric(n, r, s), color_bose_chowla(n, r, s)] {
                    let c = coloring.unwrap();
                    assert_eq!(
                        verify_proper(&c.spec, &c).unwrap(),
                        Verdict::Proper,
                        "{} {:?}",
                        c.spec,
                        c.method
                    );
                    assert!(c.colors_used() as u64 >= report.best_lower);
                    assert!(c.colors_used() as u64 <= c.palette_bound);
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 3 * 10 * 2);
    for n in 4..=12 {
        let c = color_sum(n, 3).unwrap();
        assert!(c.colors_used() as u64 >= aggregate(n, 3, 2).unwrap().best_lower);
    }
}

#[test]
fn circle_colorings_meet_the_aggregate() {
    for n in [8usize, 9, 24, 25, 33] {
        let c = color_theorem1(n).unwrap();
        let report = aggregate(n, 3, 2).unwrap();
        assert_eq!(verify_proper(&c.spec, &c).unwrap(), Verdict::Proper);
        assert!(report.best_lower <= c.colors_used() as u64);
        assert!(c.colors_used() as u64 <= report.best_upper.max(c.palette_bound));
    }
}
