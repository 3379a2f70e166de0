//! Genetic update operators behind the discrete particle update formula.
//!
//! Each operator runs in one of two transformation modes: PS keeps the
//! spanning-tree topology and touches only choice digits, E also rewrites
//! edges. Topology changes go through a union-find so the result is always
//! a connected, acyclic spanning tree.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::encoding::{ChoiceSet, Edge, Net, Particle, UnionFind};
use crate::geometry::PsChoice;

/// Operator transformation mode.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum TransformMode {
    /// Pseudo-Steiner transformation: choice digits only.
    Ps,
    /// Edge transformation: tree topology may change as well.
    E,
}

impl fmt::Display for TransformMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransformMode::Ps => write!(f, "PS"),
            TransformMode::E => write!(f, "E"),
        }
    }
}

/// `k`-point mutation: `k` sequential single-point mutations.
///
/// In E mode each point deletes a uniformly random edge, rebuilds the
/// union-find over the remainder (two components), then draws vertex pairs
/// until one spans the cut and inserts it with a random choice digit. In PS
/// mode each point resamples one random edge's choice digit.
pub fn mutate<R: Rng + ?Sized>(
    p: &Particle,
    mode: TransformMode,
    k: usize,
    net: &Net,
    choices: ChoiceSet,
    rng: &mut R,
) -> Particle {
    let n = net.pin_count();
    let mut edges = p.edges().to_vec();
    for _ in 0..k {
        match mode {
            TransformMode::Ps => {
                let r = rng.random_range(0..edges.len());
                edges[r].choice = choices.sample(rng);
            }
            TransformMode::E => {
                let r = rng.random_range(0..edges.len());
                let mut uf = UnionFind::new(n);
                for (i, e) in edges.iter().enumerate() {
                    if i != r {
                        uf.union(e.u, e.v);
                    }
                }
                // two components remain, so this terminates
                loop {
                    let p1 = rng.random_range(1..=n);
                    let p2 = rng.random_range(1..=n);
                    if uf.find(p1) != uf.find(p2) {
                        uf.union(p1, p2);
                        edges[r] = Edge::new(p1, p2, choices.sample(rng));
                        break;
                    }
                }
            }
        }
    }
    Particle::from_edges(edges)
}

/// Crossover of `p` against a guide (personal or global best).
///
/// E mode: edges common to both parents are inherited directly (with `p`'s
/// choice digit); the child is completed by drawing from the symmetric
/// difference, a union-find rejecting any edge that would close a cycle.
/// PS mode: child keeps `p`'s topology; each edge also present in the guide
/// adopts the guide's choice digit with probability 1/2.
pub fn crossover<R: Rng + ?Sized>(
    p: &Particle,
    guide: &Particle,
    mode: TransformMode,
    net: &Net,
    rng: &mut R,
) -> Particle {
    match mode {
        TransformMode::Ps => {
            let guide_choices: BTreeMap<(usize, usize), PsChoice> = guide
                .edges()
                .iter()
                .map(|e| (e.canonical(), e.choice))
                .collect();
            let mut edges = p.edges().to_vec();
            for e in edges.iter_mut() {
                if let Some(&gc) = guide_choices.get(&e.canonical()) {
                    if rng.random::<f64>() < 0.5 {
                        e.choice = gc;
                    }
                }
            }
            Particle::from_edges(edges)
        }
        TransformMode::E => {
            let n = net.pin_count();
            let p_map: BTreeMap<(usize, usize), PsChoice> =
                p.edges().iter().map(|e| (e.canonical(), e.choice)).collect();
            let g_map: BTreeMap<(usize, usize), PsChoice> = guide
                .edges()
                .iter()
                .map(|e| (e.canonical(), e.choice))
                .collect();
            let mut child = Vec::with_capacity(n - 1);
            let mut uf = UnionFind::new(n);
            // shared edges seed the child; BTreeMap iteration keeps them sorted
            for (&(u, v), &c) in &p_map {
                if g_map.contains_key(&(u, v)) {
                    uf.union(u, v);
                    child.push(Edge::new(u, v, c));
                }
            }
            let mut pool: Vec<Edge> = Vec::new();
            for (&(u, v), &c) in &p_map {
                if !g_map.contains_key(&(u, v)) {
                    pool.push(Edge::new(u, v, c));
                }
            }
            for (&(u, v), &c) in &g_map {
                if !p_map.contains_key(&(u, v)) {
                    pool.push(Edge::new(u, v, c));
                }
            }
            pool.sort_unstable_by_key(Edge::canonical);
            // the union of two spanning trees is connected, so the pool
            // always holds a usable edge until the child spans
            while child.len() < n - 1 {
                assert!(!pool.is_empty(), "crossover pool exhausted before spanning");
                let i = rng.random_range(0..pool.len());
                let e = pool.swap_remove(i);
                if uf.union(e.u, e.v) {
                    child.push(e);
                }
            }
            Particle::from_edges(child)
        }
    }
}

/// One discrete particle update: gated mutation, then gated crossover with
/// the personal best, then gated crossover with the global best.
///
/// Three uniform draws `r1, r2, r3` open the gates against `w`, `c1`, `c2`
/// respectively; a closed gate passes the particle through unchanged.
#[allow(clippy::too_many_arguments)]
pub fn apply_velocity<R: Rng + ?Sized>(
    p: &Particle,
    pbest: &Particle,
    gbest: &Particle,
    w: f64,
    c1: f64,
    c2: f64,
    mode: TransformMode,
    k: usize,
    net: &Net,
    choices: ChoiceSet,
    rng: &mut R,
) -> Particle {
    let after_mutation = if rng.random::<f64>() < w {
        mutate(p, mode, k, net, choices, rng)
    } else {
        p.clone()
    };
    let after_pbest = if rng.random::<f64>() < c1 {
        crossover(&after_mutation, pbest, mode, net, rng)
    } else {
        after_mutation
    };
    if rng.random::<f64>() < c2 {
        crossover(&after_pbest, gbest, mode, net, rng)
    } else {
        after_pbest
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{random_spanning_tree, validate, RoutingMode};
    use crate::geometry::Point;
    use alloc::collections::BTreeSet;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn net(pins: &[(i32, i32)]) -> Net {
        Net::new("t", pins.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn grid_net(n: usize) -> Net {
        let pins: Vec<Point> = (0..n)
            .map(|i| Point::new((i as i32 * 17) % 53, (i as i32 * 29 + 3) % 47))
            .collect();
        Net::new("g", pins).unwrap()
    }

    fn tree(edges: &[(usize, usize, u8)]) -> Particle {
        Particle::from_edges(
            edges
                .iter()
                .map(|&(u, v, c)| Edge::new(u, v, PsChoice::from_digit(c).unwrap()))
                .collect(),
        )
    }

    #[test]
    fn e_mutation_keeps_three_pin_tree_connected() {
        let n = net(&[(0, 0), (5, 0), (5, 5)]);
        let p = tree(&[(1, 2, 2), (2, 3, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let q = mutate(&p, TransformMode::E, 1, &n, ChoiceSet::X_ALL, &mut rng);
            assert!(validate(&n, &q));
        }
    }

    #[test]
    fn ps_mutation_leaves_topology_alone() {
        let n = grid_net(9);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        for _ in 0..100 {
            let q = mutate(&p, TransformMode::Ps, 2, &n, ChoiceSet::X_ALL, &mut rng);
            assert!(validate(&n, &q));
            assert_eq!(p.canonical_edges(), q.canonical_edges());
            let differing = p
                .edges()
                .iter()
                .zip(q.edges())
                .filter(|(a, b)| a.choice != b.choice)
                .count();
            assert!(differing <= 2);
        }
    }

    #[test]
    fn e_mutation_reaches_every_labeled_tree() {
        let n = net(&[(0, 0), (9, 0), (0, 9), (9, 9)]);
        let all: BTreeSet<Vec<(usize, usize)>> = crate::oracle::labeled_trees(4)
            .into_iter()
            .map(|t| {
                let mut c: Vec<(usize, usize)> =
                    t.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                c.sort_unstable();
                c
            })
            .collect();
        // iterated mutation walks the whole labeled-tree space
        let mut walker = tree(&[(1, 2, 2), (2, 3, 2), (3, 4, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut seen = BTreeSet::new();
        seen.insert(walker.canonical_edges());
        for _ in 0..10_000 {
            walker = mutate(&walker, TransformMode::E, 2, &n, ChoiceSet::X_ALL, &mut rng);
            assert!(validate(&n, &walker));
            seen.insert(walker.canonical_edges());
        }
        assert_eq!(seen, all);
    }

    #[test]
    fn e_crossover_with_self_preserves_edge_set() {
        let n = grid_net(7);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let q = crossover(&p, &p, TransformMode::E, &n, &mut rng);
        assert_eq!(p.canonical_edges(), q.canonical_edges());
    }

    #[test]
    fn e_crossover_three_pin_outcomes() {
        let n = net(&[(0, 0), (5, 0), (5, 5)]);
        let p = tree(&[(1, 2, 2), (2, 3, 2)]);
        let guide = tree(&[(1, 3, 2), (1, 2, 2)]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut outcomes = BTreeSet::new();
        for _ in 0..100 {
            let child = crossover(&p, &guide, TransformMode::E, &n, &mut rng);
            assert!(validate(&n, &child));
            let canon = child.canonical_edges();
            assert!(canon.contains(&(1, 2)));
            outcomes.insert(canon);
        }
        let with_23 = vec![(1, 2), (2, 3)];
        let with_13 = vec![(1, 2), (1, 3)];
        assert!(outcomes.contains(&with_23));
        assert!(outcomes.contains(&with_13));
        assert_eq!(outcomes.len(), 2);
    }

    #[test]
    fn e_crossover_child_edges_come_from_parents() {
        let n = grid_net(6);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let g = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let union: BTreeSet<(usize, usize)> = p
            .edges()
            .iter()
            .chain(g.edges())
            .map(Edge::canonical)
            .collect();
        for _ in 0..1000 {
            let child = crossover(&p, &g, TransformMode::E, &n, &mut rng);
            assert!(validate(&n, &child));
            for e in child.edges() {
                assert!(union.contains(&e.canonical()));
            }
        }
    }

    #[test]
    fn ps_crossover_keeps_topology_and_only_swaps_digits() {
        let n = grid_net(8);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let g = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let g_choices: BTreeMap<(usize, usize), PsChoice> =
            g.edges().iter().map(|e| (e.canonical(), e.choice)).collect();
        for _ in 0..200 {
            let child = crossover(&p, &g, TransformMode::Ps, &n, &mut rng);
            assert_eq!(child.canonical_edges(), p.canonical_edges());
            for (pe, ce) in p.edges().iter().zip(child.edges()) {
                if ce.choice != pe.choice {
                    assert_eq!(Some(&ce.choice), g_choices.get(&ce.canonical()));
                }
            }
        }
    }

    #[test]
    fn union_find_guard_rejects_cycle_closing_draws() {
        // adversarial order: every already-connected pair must be rejected
        let mut uf = UnionFind::new(5);
        assert!(uf.union(1, 2));
        assert!(uf.union(2, 3));
        assert!(!uf.union(1, 3));
        assert!(!uf.union(3, 1));
        assert!(!uf.union(2, 2));
        assert!(uf.union(4, 5));
        assert!(!uf.union(5, 4));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 5));
    }

    #[test]
    fn closed_gates_return_input_unchanged() {
        let n = grid_net(10);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let pb = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let gb = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let out = apply_velocity(
            &p,
            &pb,
            &gb,
            0.0,
            0.0,
            0.0,
            TransformMode::E,
            2,
            &n,
            ChoiceSet::X_ALL,
            &mut rng,
        );
        assert_eq!(out.edges(), p.edges());
    }

    #[test]
    fn mutation_only_ps_update_changes_digits_at_most() {
        let n = grid_net(10);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        let pb = p.clone();
        let gb = p.clone();
        for _ in 0..50 {
            let out = apply_velocity(
                &p,
                &pb,
                &gb,
                1.0,
                0.0,
                0.0,
                TransformMode::Ps,
                2,
                &n,
                ChoiceSet::X_ALL,
                &mut rng,
            );
            assert_eq!(out.canonical_edges(), p.canonical_edges());
        }
    }

    #[test]
    fn apply_velocity_is_deterministic_per_seed() {
        let n = grid_net(12);
        let mut setup = ChaCha8Rng::seed_from_u64(12);
        let p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut setup);
        let pb = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut setup);
        let gb = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut setup);
        let go = |seed: u64| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            apply_velocity(
                &p,
                &pb,
                &gb,
                0.7,
                0.6,
                0.5,
                TransformMode::E,
                2,
                &n,
                ChoiceSet::X_ALL,
                &mut rng,
            )
        };
        assert_eq!(go(99).edges(), go(99).edges());
    }

    #[test]
    fn operators_stay_closed_under_fuzz() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for round in 0..200 {
            let n = grid_net(3 + round % 20);
            let choices = if round % 2 == 0 {
                RoutingMode::XArch.choices()
            } else {
                RoutingMode::Rectilinear.choices()
            };
            let mode = if round % 3 == 0 {
                TransformMode::Ps
            } else {
                TransformMode::E
            };
            let p = random_spanning_tree(&n, choices, &mut rng);
            let g = random_spanning_tree(&n, choices, &mut rng);
            let m = mutate(&p, mode, 2, &n, choices, &mut rng);
            let c = crossover(&p, &g, mode, &n, &mut rng);
            assert!(validate(&n, &m));
            assert!(validate(&n, &c));
            if choices == ChoiceSet::RECTILINEAR {
                for e in m.edges().iter().chain(c.edges()) {
                    assert!(matches!(e.choice, PsChoice::C2 | PsChoice::C3));
                }
            }
        }
    }
}
