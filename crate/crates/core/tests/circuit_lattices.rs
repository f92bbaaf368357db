use semidef::circuit::{
    build_full, build_minimal, build_with, definable_assignments, discretize, is_adequate, qualifying_triples, semilattice,
    verify_iso, Circuit, MinimalMode,
};
use semidef::finspace::{search_strategy, DEFAULT_BUDGET};
use semidef::gate::{cell_metric, oracle};
use semidef::order::{as_lattice, filters, iso, lattices_up_to_iso, parse_poset, FiniteLattice};
use semidef::rational::rat;

const N5: &str = r#"{"elements":["0","a","b","c","1"],
    "covers":[["0","a"],["a","1"],["0","b"],["b","c"],["c","1"]]}"#;

fn lat(text: &str) -> FiniteLattice {
    as_lattice(parse_poset(text).unwrap()).unwrap()
}

fn n5() -> FiniteLattice {
    lat(N5)
}

fn ix(l: &FiniteLattice, name: &str) -> usize {
    l.poset().index_of(name).unwrap()
}

#[test]
fn n5_full_circuit() {
    let l = n5();
    let c = build_full(&l).unwrap();
    assert_eq!(c.node_count(), 4);
    // Oracle: count (a, b, c) over the non-top elements straight from the
    // order, recomputing each meet by scanning lower bounds.
    let p = l.poset();
    let non_top: Vec<usize> = (0..5).filter(|&x| x != l.top()).collect();
    let glb = |a: usize, b: usize| {
        (0..5)
            .filter(|&g| p.leq(g, a) && p.leq(g, b))
            .find(|&g| (0..5).all(|x| !(p.leq(x, a) && p.leq(x, b)) || p.leq(x, g)))
            .unwrap()
    };
    let mut count = 0;
    for &a in &non_top {
        for &b in &non_top {
            for &c in &non_top {
                count += p.leq(glb(a, b), c) as usize;
            }
        }
    }
    assert_eq!(count, 52);
    assert_eq!(c.gates().len(), count);
    assert_eq!(definable_assignments(&c).len(), 5);
    assert!(verify_iso(&l, &c).is_ok());
    assert!(iso(&semilattice(&c).to_lattice(), &l).is_some());
}

#[test]
fn n5_figure_presentation_is_adequate() {
    let l = n5();
    let [z, a, b, c] = ["0", "a", "b", "c"].map(|n| ix(&l, n));
    let figure = [[z, z, a], [z, z, b], [b, b, c], [a, c, z]];
    assert!(is_adequate(&l, &figure));
    assert!(is_adequate(&l, &qualifying_triples(&l)));
}

#[test]
fn n5_exact_minimum_is_four() {
    let l = n5();
    let c = build_minimal(&l, MinimalMode::Exact).unwrap();
    assert_eq!(c.gates().len(), 4);
    assert!(verify_iso(&l, &c).is_ok());
    // Independent check: no 3-subset of the qualifying triples is adequate.
    let all = qualifying_triples(&l);
    for i in 0..all.len() {
        for j in i..all.len() {
            for k in j..all.len() {
                assert!(!is_adequate(&l, &[all[i], all[j], all[k]]));
            }
        }
    }
    assert_eq!(semilattice(&c), semilattice(&build_full(&l).unwrap()));
    let g = build_minimal(&l, MinimalMode::Greedy).unwrap();
    assert!(g.gates().len() >= 4);
    assert_eq!(definable_assignments(&g), definable_assignments(&c));
}

#[test]
fn every_small_lattice_round_trips() {
    let expected = [(2, 1), (3, 1), (4, 2), (5, 5)];
    for (n, count) in expected {
        let ls = lattices_up_to_iso(n);
        assert_eq!(ls.len(), count, "n={n}");
        for l in ls {
            let c = build_full(&l).unwrap();
            let map = verify_iso(&l, &c).unwrap();
            assert_eq!(map.len(), l.len());
            assert_eq!(definable_assignments(&c).len(), l.len());
            // Off-sets plus the top are exactly the nonempty filters.
            let origin = c.origin().unwrap();
            let mut offs: Vec<Vec<usize>> = definable_assignments(&c)
                .iter()
                .map(|a| {
                    let mut off: Vec<usize> = (0..c.node_count()).filter(|&i| !a.contains(i)).map(|i| origin[i]).collect();
                    off.push(l.top());
                    off.sort();
                    off
                })
                .collect();
            offs.sort();
            let mut fs: Vec<Vec<usize>> = filters(&l.to_meet_semilattice(), false)
                .iter()
                .map(|f| f.members().ones().collect())
                .collect();
            fs.sort();
            assert_eq!(offs, fs);
            for mode in [MinimalMode::Greedy, MinimalMode::Exact] {
                let m = build_minimal(&l, mode).unwrap();
                assert_eq!(definable_assignments(&m), definable_assignments(&c));
            }
        }
    }
}

fn node_patterns(c: &Circuit) -> Vec<Vec<bool>> {
    let mut p: Vec<Vec<bool>> = definable_assignments(c)
        .iter()
        .map(|a| (0..c.node_count()).map(|i| a.contains(i)).collect())
        .collect();
    p.sort();
    p
}

fn oracle_patterns(c: &Circuit, n: usize, metric: &str) -> Vec<Vec<bool>> {
    let m = cell_metric(metric).unwrap();
    let s = discretize(c, n, m.as_ref(), 10_000).unwrap();
    assert!(s.validate().is_empty());
    let terminals: Vec<&str> = c.nodes().iter().map(|s| s.as_str()).collect();
    let strategy = search_strategy("pruned").unwrap();
    oracle(&s, &terminals, rat(2, n as i64), strategy.as_ref(), DEFAULT_BUDGET)
        .unwrap()
        .pattern_set()
}

#[test]
fn two_element_lattice_discretizes_to_one_merged_gate() {
    let l = lat(r#"{"elements":["0","1"],"covers":[["0","1"]]}"#);
    let c = build_full(&l).unwrap();
    let m = cell_metric("midpoint").unwrap();
    let s = discretize(&c, 4, m.as_ref(), 10_000).unwrap();
    let plain = semidef::gate::discretize(4, m.as_ref()).unwrap();
    assert_eq!(s.len(), plain.len() - 2);
    assert_eq!(oracle_patterns(&c, 4, "midpoint"), node_patterns(&c));
}

#[test]
fn chain_minimal_circuit_oracle_agrees() {
    let l = lat(r#"{"elements":["0","m","1"],"covers":[["0","m"],["m","1"]]}"#);
    let c = build_minimal(&l, MinimalMode::Exact).unwrap();
    assert_eq!(c.gates().len(), 1);
    let p = oracle_patterns(&c, 8, "midpoint");
    assert_eq!(p.len(), 3);
    assert_eq!(p, node_patterns(&c));
}

#[test]
fn two_gate_chain_oracle_agrees() {
    let c = Circuit::new(vec!["x".into(), "y".into(), "z".into(), "w".into()], vec![[0, 1, 2], [2, 3, 0]]).unwrap();
    for metric in ["midpoint", "star"] {
        assert_eq!(oracle_patterns(&c, 4, metric), node_patterns(&c), "{metric}");
    }
}

#[test]
fn n5_figure_circuit_oracle_agrees() {
    let l = n5();
    let [z, a, b, c] = ["0", "a", "b", "c"].map(|n| ix(&l, n));
    let circuit = build_with(&l, &[[z, z, a], [z, z, b], [b, b, c], [a, c, z]]).unwrap();
    assert_eq!(oracle_patterns(&circuit, 4, "midpoint"), node_patterns(&circuit));
}
