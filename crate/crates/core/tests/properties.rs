use std::sync::OnceLock;

use corner::folding::{is_folded, phi_minus};
use corner::homology::{free_homology, ChainComplex, CornerComplex, Side, SparseVec};
use corner::molecule::{build_cube, build_free_category, build_presented, OmegaCategory, Presented, DEFAULT_BUDGET};
use corner::nerve::{brute_force_cubes, is_branching, is_thin, Filter, Nerve, SingularCube};
use corner::precub::{goubault_complex, parse_precubical, CubeSpec, PrecubicalSet};
use proptest::prelude::*;

/// A directed acyclic graph on `n` vertices with edges i -> j for i < j.
fn dag() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..6).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        (Just(n), proptest::sample::subsequence(pairs.clone(), 0..=pairs.len().min(6)))
    })
}

fn graph(n: usize, edges: &[(usize, usize)]) -> PrecubicalSet {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut specs: Vec<CubeSpec> = names.iter().map(|v| CubeSpec::vertex(v)).collect();
    for &(i, j) in edges {
        specs.push(CubeSpec::new(&format!("e{i}_{j}"), &[(names[i].as_str(), names[j].as_str())]));
    }
    PrecubicalSet::from_specs(specs).unwrap()
}

fn finals(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..n).filter(|&v| edges.iter().all(|&(i, _)| i != v)).count()
}

fn initials(n: usize, edges: &[(usize, usize)]) -> usize {
    (0..n).filter(|&v| edges.iter().all(|&(_, j)| j != v)).count()
}

/// Rank over the rationals by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for i in r + 1..rows.len() {
            let (a, b) = (pivot[c], rows[i][c]);
            for (x, p) in rows[i].iter_mut().zip(&pivot) {
                *x = *x * a - p * b;
            }
            let g = rows[i].iter().fold(0i128, |g, &x| num_gcd(g, x.abs()));
            if g > 1 {
                rows[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        r += 1;
    }
    r
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

fn cube3() -> &'static (OmegaCategory, Vec<SingularCube>, Vec<SingularCube>) {
    static CELL: OnceLock<(OmegaCategory, Vec<SingularCube>, Vec<SingularCube>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let cat = build_cube(3, 3).unwrap();
        let mut nerve = Nerve::new(&cat);
        let all: Vec<SingularCube> = (0..=3).flat_map(|n| nerve.enumerate(n, Filter::All).unwrap()).collect();
        let branching = (2..=3).flat_map(|n| nerve.enumerate(n, Filter::Branching).unwrap()).collect();
        (cat, all, branching)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_round_trip((n, edges) in dag()) {
        let k = graph(n, &edges);
        let text = k.to_json();
        let back = parse_precubical(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back.len(), k.len());
    }

    #[test]
    fn goubault_degree_zero_counts_extremal_states((n, edges) in dag()) {
        let k = graph(n, &edges);
        let minus = free_homology(&goubault_complex(&k, false).unwrap(), 0).unwrap();
        let plus = free_homology(&goubault_complex(&k, true).unwrap(), 0).unwrap();
        prop_assert_eq!(minus.group(0).betti, finals(n, &edges));
        prop_assert_eq!(plus.group(0).betti, initials(n, &edges));
    }

    #[test]
    fn corner_degree_zero_counts_extremal_states((n, edges) in dag()) {
        let cat = build_free_category(&graph(n, &edges), DEFAULT_BUDGET).unwrap();
        prop_assert!(cat.check_axioms().is_ok());
        let b = free_homology(&CornerComplex::build(&cat, Side::Branching, 1).unwrap().complex, 0).unwrap();
        let m = free_homology(&CornerComplex::build(&cat, Side::Merging, 1).unwrap().complex, 0).unwrap();
        prop_assert_eq!(b.group(0).betti, finals(n, &edges));
        prop_assert_eq!(m.group(0).betti, initials(n, &edges));
    }

    #[test]
    fn betti_numbers_match_rational_rank(
        (a, b, entries) in (1usize..5, 1usize..5).prop_flat_map(|(a, b)| (Just(a), Just(b), proptest::collection::vec(-3i64..=3, a * b)))
    ) {
        let cols: Vec<SparseVec> = (0..a)
            .map(|j| SparseVec::from_pairs((0..b).map(|i| (i, entries[j * b + i]))))
            .collect();
        let labels = vec![(0..b).map(|i| format!("p{i}")).collect(), (0..a).map(|j| format!("q{j}")).collect()];
        let c = ChainComplex::new(labels, vec![vec![SparseVec::new(); b], cols]);
        let h = free_homology(&c, 1).unwrap();
        let rows: Vec<Vec<i128>> = (0..b).map(|i| (0..a).map(|j| entries[j * b + i] as i128).collect()).collect();
        let r = rank(rows);
        prop_assert_eq!(h.group(0).betti, b - r);
        prop_assert_eq!(h.group(1).betti, a - r);
        prop_assert!(h.group(1).torsion.is_empty());
    }

    #[test]
    fn folding_is_a_retraction(k in 0usize..10_000) {
        let (cat, _, branching) = cube3();
        let x = &branching[k % branching.len()];
        let f = phi_minus(cat, x).unwrap();
        prop_assert!(is_branching(cat, &f));
        prop_assert!(is_folded(cat, &f));
        prop_assert_eq!(phi_minus(cat, &f).unwrap(), f.clone());
        prop_assert_eq!(f.interior(), x.interior());
    }

    #[test]
    fn cubical_identities(k in 0usize..100_000) {
        let (cat, all, _) = cube3();
        let x = &all[k % all.len()];
        prop_assert_eq!(is_thin(cat, x), cat.dim(x.interior()) < x.n);
        for j in 1..=x.n {
            for i in 1..j {
                for (a, b) in [(false, false), (false, true), (true, false), (true, true)] {
                    let l = x.face(j, b).unwrap().face(i, a).unwrap();
                    let r = x.face(i, a).unwrap().face(j - 1, b).unwrap();
                    prop_assert_eq!(l, r);
                }
            }
        }
        for i in 1..=x.n + 1 {
            let e = x.degeneracy(i).unwrap();
            prop_assert_eq!(&e.face(i, false).unwrap(), x);
            prop_assert_eq!(&e.face(i, true).unwrap(), x);
        }
        for i in 1..=x.n {
            for plus in [false, true] {
                let g = x.connection(i, plus).unwrap();
                prop_assert_eq!(&g.face(i, plus).unwrap(), x);
                prop_assert_eq!(&g.face(i + 1, plus).unwrap(), x);
            }
        }
    }
}

#[test]
fn enumeration_matches_brute_force() {
    let cats = [
        build_cube(2, 3).unwrap(),
        build_presented(Presented::Pair, 1, 3).unwrap(),
        build_presented(Presented::Arrow, 2, 3).unwrap(),
        build_free_category(&corner::fixtures::two_branches(), DEFAULT_BUDGET).unwrap(),
    ];
    for cat in &cats {
        let mut nerve = Nerve::new(cat);
        for n in 0..=2 {
            let mut fast = nerve.enumerate(n, Filter::All).unwrap();
            let mut slow = brute_force_cubes(cat, n);
            fast.sort();
            slow.sort();
            assert_eq!(fast, slow, "{} degree {n}", cat.name());
        }
    }
}

#[test]
fn built_categories_satisfy_the_globular_axioms() {
    for n in 1..=3 {
        assert!(build_cube(n, 3).unwrap().check_axioms().is_ok());
        assert!(build_presented(Presented::Arrow, n, 3).unwrap().check_axioms().is_ok());
        assert!(build_presented(Presented::Pair, n, 3).unwrap().check_axioms().is_ok());
    }
}
