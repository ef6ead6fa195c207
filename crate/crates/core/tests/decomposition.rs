use proptest::prelude::*;
use pseudotour::decomposition::{decompose, replay, sigma};
use pseudotour::generators::{complement_tour, planted, random_tour_seeded};
use pseudotour::tour::Tour;
use pseudotour::Graph;

fn disjoint_start(target: &Tour, seed: u64) -> Tour {
    let arcs: Vec<_> = (1..=target.n()).map(|v| (v, target.succ(v))).collect();
    let g = Graph::from_edges(target.n(), true, &arcs).unwrap();
    complement_tour(&g, seed).unwrap()
}

fn check_pair(start: &Tour, target: &Tour) {
    let n = start.n();
    let d = decompose(start, target).unwrap();
    assert!(d.moves.len() <= n / 2, "n={n}: {} moves", d.moves.len());
    let mut t = start.clone();
    let mut moved = sigma(&t, target).moved();
    for m in &d.moves {
        assert!(t.is_admissible(m));
        t.apply(m).unwrap();
        let now = sigma(&t, target).moved();
        assert!(now + 2 <= moved);
        moved = now;
    }
    assert_eq!(t, *target);
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

#[test]
fn every_target_from_the_canonical_tour_small_n() {
    for n in 3..=8 {
        let start = Tour::identity(n).unwrap();
        let rest: Vec<usize> = (2..=n).collect();
        for p in permutations(&rest) {
            let mut order = vec![1];
            order.extend(p);
            let target = Tour::new(&order).unwrap();
            let d = decompose(&start, &target).unwrap();
            assert!(d.moves.len() <= n / 2);
            assert_eq!(replay(&start, &d.moves).unwrap(), target);
        }
    }
}

#[test]
fn sigma_moved_points_are_the_unshared_arcs() {
    for seed in 0..50 {
        let a = random_tour_seeded(20, seed);
        let b = random_tour_seeded(20, seed + 1000);
        let s = sigma(&a, &b);
        let unshared = (1..=20).filter(|&v| a.succ(v) != b.succ(v)).count();
        assert_eq!(s.moved(), unshared);
        assert!(s.is_even());
    }
}

#[test]
fn planted_pair_with_complement_start() {
    let (g, target) = planted(50, 60, 4).unwrap();
    let start = complement_tour(&g, 4).unwrap();
    let d = decompose(&start, &target).unwrap();
    assert!(d.moves.len() <= 25);
    assert_eq!(replay(&start, &d.moves).unwrap(), target);
    assert!(d.spent.is_empty());
}

#[test]
fn thousand_arc_disjoint_pairs() {
    for seed in 0..1000u64 {
        let n = 6 + (seed as usize * 7) % 59;
        let target = random_tour_seeded(n, seed);
        let start = disjoint_start(&target, seed + 1);
        assert!((1..=n).all(|v| start.succ(v) != target.succ(v)));
        check_pair(&start, &target);
    }
}

proptest! {
    #[test]
    fn any_pair_decomposes(n in 3usize..80, a in any::<u64>(), b in any::<u64>()) {
        check_pair(&random_tour_seeded(n, a), &random_tour_seeded(n, b));
    }

    #[test]
    fn same_tour_needs_no_moves(n in 3usize..50, a in any::<u64>()) {
        let t = random_tour_seeded(n, a);
        prop_assert!(decompose(&t, &t).unwrap().moves.is_empty());
    }
}
