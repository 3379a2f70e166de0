//! Particle representation: edge-vertex encoding, union-find, validation,
//! and initial-tree construction.
//!
//! A particle for an `n`-pin net is a list of `n - 1` edges, each a pair of
//! 1-based pin indices plus a pseudo-Steiner choice digit. Serialized, a
//! particle is the flat numeric string `u v c u v c ... fitness`, length
//! `3(n-1) + 1` tokens.

use alloc::borrow::ToOwned;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::fmt::Write as _;

use rand::Rng;

use crate::geometry::{self, octilinear_units, Point, PsChoice, Wirelength};

/// Routing architecture: which directions wire may run.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum RoutingMode {
    /// Horizontal/vertical wire only; choice digits restricted to `{2, 3}`.
    Rectilinear,
    /// Adds 45- and 135-degree wire; all four choice digits.
    XArch,
}

impl RoutingMode {
    /// The pseudo-Steiner choice digits this mode samples from.
    pub fn choices(self) -> ChoiceSet {
        match self {
            RoutingMode::Rectilinear => ChoiceSet::RECTILINEAR,
            RoutingMode::XArch => ChoiceSet::X_ALL,
        }
    }
}

impl fmt::Display for RoutingMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RoutingMode::Rectilinear => write!(f, "rect"),
            RoutingMode::XArch => write!(f, "x"),
        }
    }
}

/// A non-empty set of allowed pseudo-Steiner choices, as a digit bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct ChoiceSet(u8);

impl ChoiceSet {
    /// `{C2, C3}` — the L-shaped routes used for rectilinear trees.
    pub const RECTILINEAR: ChoiceSet = ChoiceSet(0b1100);
    /// All four choices.
    pub const X_ALL: ChoiceSet = ChoiceSet(0b1111);
    /// `{C0, C1}` — the restricted octilinear encoding used as an ablation
    /// baseline.
    pub const X_TWO: ChoiceSet = ChoiceSet(0b0011);

    pub fn from_choices(choices: &[PsChoice]) -> Option<ChoiceSet> {
        let mut mask = 0u8;
        for c in choices {
            mask |= 1 << c.digit();
        }
        if mask == 0 {
            None
        } else {
            Some(ChoiceSet(mask))
        }
    }

    pub fn contains(self, c: PsChoice) -> bool {
        self.0 & (1 << c.digit()) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = PsChoice> {
        PsChoice::ALL.into_iter().filter(move |c| self.contains(*c))
    }

    /// Lowest allowed digit.
    pub fn first(self) -> PsChoice {
        self.iter().next().expect("choice set is never empty")
    }

    /// Uniform draw from the set, in ascending-digit order.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> PsChoice {
        let k = rng.random_range(0..self.len());
        self.iter().nth(k).expect("index within set size")
    }
}

impl fmt::Display for ChoiceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in self.iter() {
            write!(f, "{}", c.digit())?;
        }
        Ok(())
    }
}

/// Error building a [`Net`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NetError {
    /// Fewer than two distinct pins after deduplication.
    TooFewPins { distinct: usize },
}

impl fmt::Display for NetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NetError::TooFewPins { distinct } => {
                write!(f, "a net needs at least 2 distinct pins, got {}", distinct)
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for NetError {}

/// A routing net: named, deduplicated pin set sorted by `(x, y)`.
///
/// Pin indices used throughout the crate are 1-based.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Net {
    name: String,
    pins: Vec<Point>,
}

impl Net {
    /// Builds a net, sorting pins by `(x, y)` and dropping duplicates.
    pub fn new(name: impl Into<String>, mut pins: Vec<Point>) -> Result<Net, NetError> {
        pins.sort_unstable();
        pins.dedup();
        if pins.len() < 2 {
            return Err(NetError::TooFewPins {
                distinct: pins.len(),
            });
        }
        Ok(Net {
            name: name.into(),
            pins,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pin_count(&self) -> usize {
        self.pins.len()
    }

    /// Pin by 1-based index.
    pub fn pin(&self, index: usize) -> Point {
        self.pins[index - 1]
    }

    pub fn pins(&self) -> &[Point] {
        &self.pins
    }
}

/// One encoded edge: two 1-based pin indices and a choice digit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub choice: PsChoice,
}

impl Edge {
    pub fn new(u: usize, v: usize, choice: PsChoice) -> Edge {
        Edge { u, v, choice }
    }

    /// `(min, max)` index pair, for topology comparisons.
    pub fn canonical(&self) -> (usize, usize) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// Disjoint-set structure over 1-based pin indices.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    /// Singleton partition over elements `1..=n`.
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..=n as u32).collect(),
            size: alloc::vec![1; n + 1],
        }
    }

    /// Representative of `x`'s set (path-halving).
    pub fn find(&mut self, x: usize) -> usize {
        let mut x = x as u32;
        while self.parent[x as usize] != x {
            let grand = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = grand;
            x = grand;
        }
        x as usize
    }

    /// Merges the sets of `a` and `b`; `false` if they were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small] = big as u32;
        self.size[big] += self.size[small];
        true
    }
}

/// Error parsing a particle string.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParticleParseError {
    /// Token count is not `3(n-1) + 1` for the given pin count.
    TokenCount { expected: usize, found: usize },
    /// A vertex index or choice digit is malformed or out of range.
    BadToken { index: usize, token: String },
}

impl fmt::Display for ParticleParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParticleParseError::TokenCount { expected, found } => {
                write!(f, "expected {} tokens, found {}", expected, found)
            }
            ParticleParseError::BadToken { index, token } => {
                write!(f, "bad token '{}' at position {}", token, index + 1)
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParticleParseError {}

/// A candidate Steiner tree: spanning-tree edges with choice digits, plus
/// cached evaluation results.
#[derive(Clone, PartialEq, Debug)]
pub struct Particle {
    edges: Vec<Edge>,
    cached_length: Option<Wirelength>,
    cached_fitness: Option<f64>,
}

impl Particle {
    /// Wraps an edge list; caches start empty.
    pub fn from_edges(edges: Vec<Edge>) -> Particle {
        Particle {
            edges,
            cached_length: None,
            cached_fitness: None,
        }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Sorted `(min, max)` pairs, the particle's topology fingerprint.
    pub fn canonical_edges(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.edges.iter().map(Edge::canonical).collect();
        v.sort_unstable();
        v
    }

    /// Routed length, computing and caching it on first use.
    pub fn evaluate(&mut self, net: &Net) -> Result<Wirelength, geometry::InvalidParticle> {
        if let Some(w) = self.cached_length {
            return Ok(w);
        }
        let w = geometry::tree_wirelength(net, self)?;
        self.cached_length = Some(w);
        self.cached_fitness = Some(crate::engine::fitness(w.as_f64()));
        Ok(w)
    }

    pub fn wirelength(&self) -> Option<Wirelength> {
        self.cached_length
    }

    pub fn length(&self) -> Option<f64> {
        self.cached_length.map(Wirelength::as_f64)
    }

    /// Last computed (or parsed) fitness value.
    pub fn fitness(&self) -> Option<f64> {
        self.cached_fitness
    }

    /// Flat numeric string `u v c ... fitness`, fitness to four decimals.
    ///
    /// The fitness field reflects the particle's last evaluation, or the
    /// literal value carried over from the string it was parsed from;
    /// unevaluated particles print `0.0000`.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for e in &self.edges {
            let _ = write!(s, "{} {} {} ", e.u, e.v, e.choice.digit());
        }
        let _ = write!(s, "{:.4}", self.cached_fitness.unwrap_or(0.0));
        s
    }

    /// Parses the flat numeric string for an `n`-pin net.
    ///
    /// The trailing fitness token is kept verbatim as the cached fitness so
    /// that `serialize` round-trips; it is replaced by the true value on the
    /// next evaluation.
    pub fn parse(text: &str, pin_count: usize) -> Result<Particle, ParticleParseError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let expected = 3 * (pin_count - 1) + 1;
        if tokens.len() != expected {
            return Err(ParticleParseError::TokenCount {
                expected,
                found: tokens.len(),
            });
        }
        let bad = |i: usize| ParticleParseError::BadToken {
            index: i,
            token: tokens[i].to_owned(),
        };
        let mut edges = Vec::with_capacity(pin_count - 1);
        for t in 0..pin_count - 1 {
            let i = 3 * t;
            let u: usize = tokens[i].parse().map_err(|_| bad(i))?;
            let v: usize = tokens[i + 1].parse().map_err(|_| bad(i + 1))?;
            let d: u8 = tokens[i + 2].parse().map_err(|_| bad(i + 2))?;
            let choice = PsChoice::from_digit(d).ok_or_else(|| bad(i + 2))?;
            if u < 1 || u > pin_count || v < 1 || v > pin_count || u == v {
                return Err(bad(i));
            }
            edges.push(Edge::new(u, v, choice));
        }
        let fi = expected - 1;
        let fitness: f64 = tokens[fi].parse().map_err(|_| bad(fi))?;
        if !fitness.is_finite() {
            return Err(bad(fi));
        }
        Ok(Particle {
            edges,
            cached_length: None,
            cached_fitness: Some(fitness),
        })
    }
}

/// True iff `p` is a spanning tree of `net` with in-range indices.
///
/// Checks: exactly `n - 1` edges, every index in `[1, n]`, no self-loops,
/// and no edge joins two pins that are already connected.
pub fn validate(net: &Net, p: &Particle) -> bool {
    let n = net.pin_count();
    if p.edges().len() != n - 1 {
        return false;
    }
    let mut uf = UnionFind::new(n);
    for e in p.edges() {
        if e.u < 1 || e.u > n || e.v < 1 || e.v > n || e.u == e.v {
            return false;
        }
        if !uf.union(e.u, e.v) {
            return false;
        }
    }
    true
}

/// Random spanning tree: vertex pairs are sampled and accepted through a
/// union-find until `n - 1` edges hold; each edge draws a uniform choice.
pub fn random_spanning_tree<R: Rng + ?Sized>(
    net: &Net,
    choices: ChoiceSet,
    rng: &mut R,
) -> Particle {
    let n = net.pin_count();
    let mut uf = UnionFind::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    while edges.len() < n - 1 {
        let u = rng.random_range(1..=n);
        let v = rng.random_range(1..=n);
        if u != v && uf.union(u, v) {
            edges.push(Edge::new(u, v, choices.sample(rng)));
        }
    }
    Particle::from_edges(edges)
}

/// Deterministic minimum spanning tree under the mode's distance metric
/// (Manhattan for rectilinear, octilinear for X), with ties broken by
/// vertex index. Every edge takes the mode's lowest choice digit.
pub fn mst_spanning_tree(net: &Net, mode: RoutingMode) -> Particle {
    mst_spanning_tree_with(net, mode, mode.choices())
}

/// As [`mst_spanning_tree`], with an explicit choice domain for the digits.
pub fn mst_spanning_tree_with(net: &Net, mode: RoutingMode, choices: ChoiceSet) -> Particle {
    let n = net.pin_count();
    let dist = |a: usize, b: usize| -> Wirelength {
        let (pa, pb) = (net.pin(a), net.pin(b));
        match mode {
            RoutingMode::Rectilinear => Wirelength {
                hv: geometry::manhattan_dist(pa, pb),
                diag: 0,
            },
            RoutingMode::XArch => octilinear_units(pa, pb),
        }
    };
    // Prim from pin 1; key[j] is the cheapest connection into the tree.
    let mut in_tree = alloc::vec![false; n + 1];
    let mut key: Vec<Wirelength> = (0..=n).map(|j| if j >= 2 { dist(1, j) } else { Wirelength::ZERO }).collect();
    let mut parent: Vec<usize> = alloc::vec![1; n + 1];
    in_tree[1] = true;
    let choice = choices.first();
    let mut edges = Vec::with_capacity(n - 1);
    for _ in 0..n - 1 {
        let mut next = 0;
        for j in 2..=n {
            if !in_tree[j] && (next == 0 || key[j] < key[next]) {
                next = j;
            }
        }
        in_tree[next] = true;
        edges.push(Edge::new(parent[next], next, choice));
        for j in 2..=n {
            if !in_tree[j] {
                let d = dist(next, j);
                if d < key[j] {
                    key[j] = d;
                    parent[j] = next;
                }
            }
        }
    }
    Particle::from_edges(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn net(pins: &[(i32, i32)]) -> Net {
        Net::new("t", pins.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    fn tree(edges: &[(usize, usize)]) -> Particle {
        Particle::from_edges(
            edges
                .iter()
                .map(|&(u, v)| Edge::new(u, v, PsChoice::C2))
                .collect(),
        )
    }

    const PAPER_STRING: &str =
        "7 6 0 6 4 1 7 5 1 5 1 2 1 3 0 1 8 1 5 2 2 10.0100";

    #[test]
    fn validate_accepts_trees_and_rejects_cycles() {
        let n3 = net(&[(0, 0), (1, 0), (2, 0)]);
        assert!(validate(&n3, &tree(&[(1, 2), (2, 3)])));
        assert!(!validate(&n3, &tree(&[(1, 2), (1, 2)])));
        let n4 = net(&[(0, 0), (1, 0), (2, 0), (3, 0)]);
        assert!(!validate(&n4, &tree(&[(1, 2), (3, 4), (1, 2)])));
        assert!(!validate(&n4, &tree(&[(1, 2), (2, 3)])));
        assert!(!validate(&n4, &tree(&[(1, 2), (2, 3), (4, 5)])));
    }

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(4);
        assert_eq!(uf.find(3), uf.find(3));
        assert!(uf.union(1, 2));
        assert!(!uf.union(2, 1));
        assert!(uf.union(3, 4));
        assert_ne!(uf.find(1), uf.find(3));
        assert!(uf.union(1, 4));
        assert_eq!(uf.find(2), uf.find(3));
    }

    #[test]
    fn two_pin_random_tree_is_the_single_edge() {
        let n = net(&[(0, 0), (5, 0)]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
        assert_eq!(p.edges().len(), 1);
        assert_eq!(p.edges()[0].canonical(), (1, 2));
    }

    #[test]
    fn random_tree_is_deterministic_per_seed() {
        let n = net(&[(0, 0), (3, 1), (5, 4), (2, 7), (9, 9)]);
        let a = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut ChaCha8Rng::seed_from_u64(42));
        let b = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut ChaCha8Rng::seed_from_u64(42));
        assert_eq!(a, b);
        assert!(validate(&n, &a));
    }

    #[test]
    fn rectilinear_domain_restricts_choices() {
        let n = net(&[(0, 0), (3, 1), (5, 4), (2, 7), (9, 9), (1, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let p = random_spanning_tree(&n, RoutingMode::Rectilinear.choices(), &mut rng);
            assert!(p
                .edges()
                .iter()
                .all(|e| matches!(e.choice, PsChoice::C2 | PsChoice::C3)));
        }
    }

    #[test]
    fn mst_of_collinear_pins_is_the_path() {
        let n = net(&[(0, 0), (1, 0), (2, 0)]);
        let p = mst_spanning_tree(&n, RoutingMode::Rectilinear);
        assert_eq!(p.canonical_edges(), vec![(1, 2), (2, 3)]);
        let mut p = p;
        let w = p.evaluate(&n).unwrap();
        assert_eq!(w, Wirelength { hv: 2, diag: 0 });
    }

    #[test]
    fn mst_n2_is_single_edge() {
        let n = net(&[(4, 4), (0, 0)]);
        let p = mst_spanning_tree(&n, RoutingMode::XArch);
        assert_eq!(p.canonical_edges(), vec![(1, 2)]);
    }

    #[test]
    fn paper_example_string_parses_and_round_trips() {
        let p = Particle::parse(PAPER_STRING, 8).unwrap();
        assert_eq!(p.edges().len(), 7);
        let digits: Vec<u8> = p.edges().iter().map(|e| e.choice.digit()).collect();
        assert_eq!(digits, vec![0, 1, 1, 2, 0, 1, 2]);
        assert_eq!(p.edges()[0].u, 7);
        assert_eq!(p.edges()[0].v, 6);
        assert_eq!(p.serialize(), PAPER_STRING);
    }

    #[test]
    fn parse_rejects_wrong_token_count() {
        let twenty = "1 2 0 ".repeat(6) + "0.5 0.5";
        let err = Particle::parse(&twenty, 8).unwrap_err();
        assert_eq!(
            err,
            ParticleParseError::TokenCount {
                expected: 22,
                found: 20
            }
        );
    }

    #[test]
    fn parse_rejects_out_of_range_tokens() {
        assert!(Particle::parse("1 2 4 0.5", 2).is_err());
        assert!(Particle::parse("1 3 0 0.5", 2).is_err());
        assert!(Particle::parse("1 1 0 0.5", 2).is_err());
        assert!(Particle::parse("1 2 0 nope", 2).is_err());
    }

    #[test]
    fn evaluation_replaces_parsed_fitness() {
        // Table I pins, sorted on ingestion
        let n = net(&[
            (33, 33),
            (2, 9),
            (42, 35),
            (47, 2),
            (34, 1),
            (38, 2),
            (37, 5),
            (20, 4),
        ]);
        let mut p = Particle::parse(PAPER_STRING, 8).unwrap();
        let w = p.evaluate(&n).unwrap();
        assert!(w.as_f64() > 0.0);
        let fit = p.fitness().unwrap();
        assert!((fit - 1.0 / (w.as_f64() + 1.0)).abs() < 1e-12);
        assert!(fit > 0.0 && fit <= 1.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn serialize_parse_round_trip(seed in 0u64..500, npins in 2usize..12) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let pins: Vec<Point> = (0..npins)
                    .map(|i| Point::new(i as i32 * 7 % 23, (i as i32 * 13 + 5) % 19))
                    .collect();
                if let Ok(n) = Net::new("p", pins) {
                    let mut p = random_spanning_tree(&n, ChoiceSet::X_ALL, &mut rng);
                    p.evaluate(&n).unwrap();
                    let s = p.serialize();
                    let q = Particle::parse(&s, n.pin_count()).unwrap();
                    prop_assert_eq!(p.edges(), q.edges());
                    prop_assert_eq!(s.clone(), q.serialize());
                }
            }
        }
    }
}
