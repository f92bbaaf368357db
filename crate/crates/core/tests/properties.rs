use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use semidef::circuit::discretize;
use semidef::finspace::{
    closure, coproduct, enumerate_definable, expand, gap_check, is_closed, is_definable, is_open, is_open_metric,
    isolated_components, random_closed_set, search_strategy, solder, thresholds, CellSet, DiscreteSpace, Family, DEFAULT_BUDGET,
};
use semidef::gate::{self, cell_metric};
use semidef::order::{as_lattice, check_iso, filters, is_filter, iso, lattices_up_to_iso, FiniteLattice, Poset};
use semidef::rational::rat;
use semidef::tower::{truncate, TowerKind};
use semidef::Rational;

const N: usize = 4;

struct Corpus {
    name: &'static str,
    space: DiscreteSpace,
    definable: Vec<CellSet>,
}

fn r_min() -> Rational {
    rat(2, N as i64)
}

fn corpus_entry(name: &'static str, space: DiscreteSpace) -> Corpus {
    let s = search_strategy("pruned").unwrap();
    let definable = enumerate_definable(&space, Family::Saturated, r_min(), s.as_ref(), DEFAULT_BUDGET)
        .unwrap()
        .sets;
    Corpus { name, space, definable }
}

/// Star-metric gate, dagger gate and a two-gate chain circuit at resolution 4.
fn corpora() -> &'static [Corpus] {
    static CELL: OnceLock<Vec<Corpus>> = OnceLock::new();
    CELL.get_or_init(|| {
        let star = cell_metric("star").unwrap();
        let chain = truncate(TowerKind::ForwardChain, 2).unwrap();
        vec![
            corpus_entry("gate", gate::discretize(N, star.as_ref()).unwrap()),
            corpus_entry("dagger", gate::discretize_dagger(N, star.as_ref()).unwrap()),
            corpus_entry("chain2", discretize(&chain, N, star.as_ref(), 10_000).unwrap()),
        ]
    })
}

/// A closed set near a definable one, or the definable one itself.
fn sample(c: &Corpus, seed: u64) -> CellSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = &c.definable[(seed as usize / 7) % c.definable.len()];
    match seed % 4 {
        0 => base.clone(),
        1 => random_closed_set(&c.space, &mut rng, None),
        _ => random_closed_set(&c.space, &mut rng, Some(base)),
    }
}

#[test]
fn corpora_are_star_open() {
    for c in corpora() {
        assert!(c.space.validate().is_empty(), "{}", c.name);
        assert!(is_open_metric(&c.space, r_min()), "{}", c.name);
    }
    let counts: Vec<usize> = corpora().iter().map(|c| c.definable.len()).collect();
    assert_eq!(counts, [7, 3, 4]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    /// Every threshold, the smallest threshold, and openness of every
    /// expansion agree on closed sets of an open-metric space.
    #[test]
    fn definability_criteria_agree(which in 0usize..3, seed in any::<u64>()) {
        let c = &corpora()[which];
        let q = sample(c, seed);
        prop_assert!(is_closed(&c.space, &q));
        let all = is_definable(&c.space, &q, r_min());
        let smallest = gap_check(&c.space, &q, r_min());
        let open = thresholds(&c.space, r_min()).into_iter().all(|r| is_open(&c.space, &expand(&c.space, &q, r)));
        prop_assert_eq!(all, smallest);
        prop_assert_eq!(all, open);
    }

    #[test]
    fn wire_rule(which in 0usize..3, seed in any::<u64>()) {
        let c = &corpora()[which];
        let q = sample(c, seed);
        if is_definable(&c.space, &q, r_min()) {
            for u in isolated_components(&c.space, r_min()) {
                prop_assert!(u.is_subset(&q) || u.is_disjoint(&q));
            }
        }
    }

    #[test]
    fn unions_of_definable_sets(which in 0usize..3, i in 0usize..64, j in 0usize..64, seed in any::<u64>()) {
        let c = &corpora()[which];
        let a = &c.definable[i % c.definable.len()];
        let b = &c.definable[j % c.definable.len()];
        let mut u = a.clone();
        u.union_with(b);
        prop_assert!(is_definable(&c.space, &u, r_min()));
        let q = sample(c, seed);
        if is_definable(&c.space, &q, r_min()) {
            u.union_with(&q);
            prop_assert!(is_definable(&c.space, &u, r_min()));
        }
    }
}

fn gate_space(metric: &str) -> DiscreteSpace {
    gate::discretize(N, cell_metric(metric).unwrap().as_ref()).unwrap()
}

fn lone_point() -> DiscreteSpace {
    DiscreteSpace::from_parts(
        vec![semidef::finspace::Cell { id: 0, dim: 0, tag: Some("p".into()) }],
        vec![semidef::bits::from_indices(1, [0])],
        [],
        rat(1, N as i64),
    )
}

fn split(d: &CellSet, at: usize, len: usize) -> (CellSet, CellSet) {
    let left = semidef::bits::from_indices(at, d.ones().filter(|&x| x < at));
    let right = semidef::bits::from_indices(len - at, d.ones().filter(|&x| x >= at).map(|x| x - at));
    (left, right)
}

/// `gate ⊕ gate` with the first copy's output and the second copy's first
/// input soldered, and the cell map of the quotient.
fn soldered_pair() -> &'static (DiscreteSpace, DiscreteSpace, [usize; 2], Vec<usize>) {
    static CELL: OnceLock<(DiscreteSpace, DiscreteSpace, [usize; 2], Vec<usize>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let g = gate_space("star");
        let z = coproduct(&g, &g);
        let z0 = g.find_tag("out").unwrap();
        let z1 = g.len() + g.find_tag("in1").unwrap();
        let w = solder(&z, &[vec![z0, z1]]).unwrap();
        let (lo, hi) = (z0.min(z1), z0.max(z1));
        let pi = (0..z.len())
            .map(|x| {
                let x = if x == hi { lo } else { x };
                x - (x > hi) as usize
            })
            .collect();
        (z, w, [z0, z1], pi)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coproduct_definability_splits(seed in any::<u64>(), with_point in any::<bool>()) {
        let x = gate_space("star");
        let y = if with_point { lone_point() } else { corpora()[1].space.clone() };
        let xy = coproduct(&x, &y);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = {
            let (gx, gy) = (&corpora()[0].definable, &corpora()[1].definable);
            let a = &gx[seed as usize % gx.len()];
            let mut d = semidef::bits::from_indices(xy.len(), a.ones());
            if !with_point {
                let b = &gy[(seed >> 8) as usize % gy.len()];
                d.extend(b.ones().map(|c| c + x.len()));
            }
            d
        };
        let d = if seed % 3 == 0 { base } else { random_closed_set(&xy, &mut rng, Some(&base)) };
        let (dx, dy) = split(&d, x.len(), xy.len());
        prop_assert_eq!(
            is_definable(&xy, &d, r_min()),
            is_definable(&x, &dx, r_min()) && is_definable(&y, &dy, r_min())
        );
    }

    #[test]
    fn soldering_preserves_definability(seed in any::<u64>()) {
        let (z, w, [z0, z1], pi) = soldered_pair();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = &corpora()[0].definable;
        let half = z.len() / 2;
        let mut base = semidef::bits::from_indices(z.len(), g[seed as usize % g.len()].ones());
        base.extend(g[(seed >> 8) as usize % g.len()].ones().map(|c| c + half));
        let d = if seed % 3 == 0 { base } else { random_closed_set(z, &mut rng, Some(&base)) };
        let image = semidef::bits::from_indices(w.len(), d.ones().map(|x| pi[x]));
        prop_assert!(is_closed(w, &image));
        let touches = d.contains(*z0) || d.contains(*z1);
        let expected = if touches {
            let mut both = d.clone();
            both.insert(*z0);
            both.insert(*z1);
            is_definable(z, &both, r_min())
        } else {
            is_definable(z, &d, r_min())
        };
        prop_assert_eq!(is_definable(w, &image, r_min()), expected);
    }
}

#[test]
fn soldering_and_coproducts_preserve_open_metrics() {
    for metric in ["star", "midpoint"] {
        let g = gate_space(metric);
        let open = is_open_metric(&g, r_min());
        assert_eq!(open, metric == "star");
        let z = coproduct(&g, &g);
        assert_eq!(is_open_metric(&z, r_min()), open);
        let zp = coproduct(&g, &lone_point());
        assert_eq!(is_open_metric(&zp, r_min()), open);
        let w = solder(&z, &[vec![g.find_tag("out").unwrap(), g.len() + g.find_tag("in1").unwrap()]]).unwrap();
        assert!(w.validate().is_empty());
        assert_eq!(is_open_metric(&w, r_min()), open);
    }
}

#[test]
fn closure_of_definable_union_is_itself() {
    for c in corpora() {
        for a in &c.definable {
            assert_eq!(&closure(&c.space, a), a);
        }
    }
}

fn lattice_corpus() -> &'static [FiniteLattice] {
    static CELL: OnceLock<Vec<FiniteLattice>> = OnceLock::new();
    CELL.get_or_init(|| (1..=5).flat_map(lattices_up_to_iso).collect())
}

fn permuted(l: &FiniteLattice, perm: &[usize]) -> FiniteLattice {
    let n = l.len();
    let mut labels = vec![String::new(); n];
    for x in 0..n {
        labels[perm[x]] = l.label(x).to_string();
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| l.leq(a, b))
        .map(|(a, b)| (perm[a], perm[b]))
        .collect();
    as_lattice(Poset::new(labels, &pairs).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn filters_are_the_principal_up_sets(which in 0usize..10, mask in 0u32..32) {
        let l = &lattice_corpus()[which];
        let m = l.to_meet_semilattice();
        let n = l.len();
        let set = semidef::bits::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1));
        let principal = set.is_clear()
            || (0..n).any(|a| (0..n).all(|b| l.leq(a, b) == set.contains(b)));
        prop_assert_eq!(is_filter(&m, &set), principal);
        let listed = filters(&m, true).iter().any(|f| *f.members() == set);
        prop_assert_eq!(listed, principal);
    }

    #[test]
    fn iso_maps_check_out(which in 0usize..10, perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), guess in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let l = &lattice_corpus()[which];
        let n = l.len();
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < n).collect();
        let guess: Vec<usize> = guess.into_iter().filter(|&p| p < n).collect();
        let k = permuted(l, &perm);
        let map = iso(l, &k).expect("relabelled copy is isomorphic");
        prop_assert!(check_iso(l, &k, &map).is_ok());
        // Oracle for an arbitrary bijection: order preserved both ways.
        let preserves = (0..n).all(|a| (0..n).all(|b| l.leq(a, b) == k.leq(guess[a], guess[b])));
        prop_assert_eq!(check_iso(l, &k, &guess).is_ok(), preserves);
    }
}

#[test]
fn lattice_corpus_sizes() {
    let sizes: Vec<usize> = lattice_corpus().iter().map(|l| l.len()).collect();
    assert_eq!(sizes, [1, 2, 3, 4, 4, 5, 5, 5, 5, 5]);
}



