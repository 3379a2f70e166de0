//! Independent brute-force references for small instances.
//!
//! Everything here recomputes geometry from scratch — interval unions by
//! pairwise subtraction, edge expansion by its own table, minimum spanning
//! trees by Kruskal — so results can be checked against the production path
//! without sharing code beyond the plain data types.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::SQRT_2;
use core::fmt;

use crate::encoding::{Net, RoutingMode, UnionFind};
use crate::geometry::{Point, PsChoice, Segment};

/// Error for instances beyond the enumeration limits.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OracleError {
    TooManyPins { pins: usize, max: usize },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::TooManyPins { pins, max } => {
                write!(f, "oracle supports at most {} pins, got {}", max, pins)
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for OracleError {}

/// Disjoint interval store filled by pairwise subtraction.
///
/// Each incoming interval is clipped against every stored piece; whatever
/// survives is kept. O(k^2), deliberately unlike the sweep in the
/// production path.
#[derive(Default)]
struct PieceSet {
    pieces: Vec<(i64, i64)>,
}

impl PieceSet {
    fn add(&mut self, lo: i64, hi: i64) {
        if lo >= hi {
            return;
        }
        let mut frags = alloc::vec![(lo, hi)];
        for &(plo, phi) in &self.pieces {
            let mut next = Vec::with_capacity(frags.len() + 1);
            for (flo, fhi) in frags {
                if fhi <= plo || flo >= phi {
                    next.push((flo, fhi));
                    continue;
                }
                if flo < plo {
                    next.push((flo, plo));
                }
                if fhi > phi {
                    next.push((phi, fhi));
                }
            }
            frags = next;
            if frags.is_empty() {
                break;
            }
        }
        self.pieces.extend(frags);
    }

    fn measure(&self) -> i64 {
        self.pieces.iter().map(|&(lo, hi)| hi - lo).sum()
    }
}

/// Interval-union length of a segment set by pairwise subtraction; the
/// reference implementation checked against `geometry::union_length`.
pub fn union_length_pairwise(segments: &[Segment]) -> f64 {
    let mut groups: BTreeMap<(u8, i64), PieceSet> = BTreeMap::new();
    for s in segments {
        let class = match s.orientation {
            crate::geometry::Orientation::H => 0u8,
            crate::geometry::Orientation::V => 1,
            crate::geometry::Orientation::D45 => 2,
            crate::geometry::Orientation::D135 => 3,
        };
        groups.entry((class, s.line_key)).or_default().add(s.lo, s.hi);
    }
    let mut hv = 0i64;
    let mut diag = 0i64;
    for ((class, _), set) in &groups {
        if *class <= 1 {
            hv += set.measure();
        } else {
            diag += set.measure();
        }
    }
    hv as f64 + diag as f64 * SQRT_2
}

// Line classes for the oracle's own expansion: 0 = horizontal (key y),
// 1 = vertical (key x), 2 = slope +1 (key y-x), 3 = slope -1 (key y+x).
type RawSeg = (u8, i64, i64, i64);

fn raw_between(ax: i64, ay: i64, bx: i64, by: i64, out: &mut Vec<RawSeg>) {
    if ax == bx && ay == by {
        return;
    }
    if ay == by {
        out.push((0, ay, ax.min(bx), ax.max(bx)));
    } else if ax == bx {
        out.push((1, ax, ay.min(by), ay.max(by)));
    } else if by - ay == bx - ax {
        out.push((2, ay - ax, ax.min(bx), ax.max(bx)));
    } else {
        debug_assert_eq!(by - ay, ax - bx);
        out.push((3, ay + ax, ax.min(bx), ax.max(bx)));
    }
}

fn raw_expand(a: Point, b: Point, choice: PsChoice, out: &mut Vec<RawSeg>) {
    let (first, second) = if (b.x, b.y) < (a.x, a.y) { (b, a) } else { (a, b) };
    let (ax, ay) = (first.x as i64, first.y as i64);
    let (bx, by) = (second.x as i64, second.y as i64);
    let dx = bx - ax;
    let ady = (by - ay).abs();
    let s = (by - ay).signum();
    let (sx, sy) = match (choice, ady <= dx) {
        (PsChoice::C2, _) => (ax, by),
        (PsChoice::C3, _) => (bx, ay),
        (PsChoice::C0, true) => (bx - ady, ay),
        (PsChoice::C0, false) => (ax, by - s * dx),
        (PsChoice::C1, true) => (ax + ady, by),
        (PsChoice::C1, false) => (bx, ay + s * dx),
    };
    raw_between(ax, ay, sx, sy, out);
    raw_between(sx, sy, bx, by, out);
}

/// Routed length of an explicit tree (edges as 1-based index pairs with
/// choices), via the oracle's own expansion and pairwise union.
fn raw_tree_length(net: &Net, edges: &[(usize, usize)], choices: &[PsChoice]) -> f64 {
    let mut segs = Vec::with_capacity(edges.len() * 2);
    for (i, &(u, v)) in edges.iter().enumerate() {
        raw_expand(net.pin(u), net.pin(v), choices[i], &mut segs);
    }
    let mut groups: BTreeMap<(u8, i64), PieceSet> = BTreeMap::new();
    for (class, key, lo, hi) in segs {
        groups.entry((class, key)).or_default().add(lo, hi);
    }
    let mut hv = 0i64;
    let mut diag = 0i64;
    for ((class, _), set) in &groups {
        if *class <= 1 {
            hv += set.measure();
        } else {
            diag += set.measure();
        }
    }
    hv as f64 + diag as f64 * SQRT_2
}

/// Total Manhattan weight of a minimum spanning tree over `points`,
/// computed by Kruskal over all pairs.
pub fn manhattan_mst_length(points: &[Point]) -> i64 {
    let n = points.len();
    if n < 2 {
        return 0;
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let d = (points[j].x as i64 - points[i].x as i64).abs()
                + (points[j].y as i64 - points[i].y as i64).abs();
            edges.push((d, i + 1, j + 1));
        }
    }
    edges.sort_unstable();
    let mut uf = UnionFind::new(n);
    let mut total = 0;
    let mut accepted = 0;
    for (d, i, j) in edges {
        if uf.union(i, j) {
            total += d;
            accepted += 1;
            if accepted == n - 1 {
                break;
            }
        }
    }
    total
}

const EXACT_RSMT_MAX_PINS: usize = 6;

/// Exact rectilinear Steiner minimal tree length for up to six pins.
///
/// Minimizes the Manhattan MST weight of `pins ∪ S` over every subset `S`
/// of Hanan-grid candidates with `|S| <= n - 2`; the optimum over that
/// family is the exact RSMT length.
pub fn exact_rsmt(net: &Net) -> Result<f64, OracleError> {
    let n = net.pin_count();
    if n > EXACT_RSMT_MAX_PINS {
        return Err(OracleError::TooManyPins {
            pins: n,
            max: EXACT_RSMT_MAX_PINS,
        });
    }
    let mut xs: Vec<i32> = net.pins().iter().map(|p| p.x).collect();
    let mut ys: Vec<i32> = net.pins().iter().map(|p| p.y).collect();
    xs.sort_unstable();
    xs.dedup();
    ys.sort_unstable();
    ys.dedup();
    let mut candidates = Vec::new();
    for &x in &xs {
        for &y in &ys {
            let p = Point::new(x, y);
            if !net.pins().contains(&p) {
                candidates.push(p);
            }
        }
    }
    let mut points: Vec<Point> = net.pins().to_vec();
    let mut best = manhattan_mst_length(&points);
    let max_extra = n - 2;
    // depth-first choice of candidate subsets up to size n - 2
    fn descend(
        candidates: &[Point],
        from: usize,
        remaining: usize,
        points: &mut Vec<Point>,
        best: &mut i64,
    ) {
        if remaining == 0 {
            return;
        }
        for i in from..candidates.len() {
            points.push(candidates[i]);
            let w = manhattan_mst_length(points);
            if w < *best {
                *best = w;
            }
            descend(candidates, i + 1, remaining - 1, points, best);
            points.pop();
        }
    }
    descend(&candidates, 0, max_extra, &mut points, &mut best);
    Ok(best as f64)
}

/// All labeled trees on vertices `1..=n`, each as its `n - 1` edges.
///
/// Enumerated by decoding every length `n - 2` sequence over `1..=n`
/// (the classical bijection), so exactly `n^(n-2)` trees come back.
pub fn labeled_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    assert!(n >= 2);
    if n == 2 {
        return alloc::vec![alloc::vec![(1, 2)]];
    }
    let len = n - 2;
    let count = n.pow(len as u32);
    let mut trees = Vec::with_capacity(count);
    for code in 0..count {
        let mut seq = Vec::with_capacity(len);
        let mut c = code;
        for _ in 0..len {
            seq.push(c % n + 1);
            c /= n;
        }
        trees.push(decode_tree_sequence(n, &seq));
    }
    trees
}

fn decode_tree_sequence(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = alloc::vec![1usize; n + 1];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut used = alloc::vec![false; n + 1];
    for &v in seq {
        let leaf = (1..=n).find(|&u| degree[u] == 1 && !used[u]).unwrap();
        used[leaf] = true;
        edges.push((leaf, v));
        degree[v] -= 1;
    }
    let mut last = (1..=n).filter(|&u| !used[u] && degree[u] == 1);
    let a = last.next().unwrap();
    let b = last.next().unwrap();
    edges.push((a, b));
    edges
}

const BEST_IN_SPACE_MAX_PINS: usize = 5;

/// Minimum routed length over the whole particle search space: every
/// labeled spanning tree crossed with every choice assignment from the
/// mode's domain. Up to five pins.
pub fn best_in_space_xsmt(net: &Net, mode: RoutingMode) -> Result<f64, OracleError> {
    let n = net.pin_count();
    if n > BEST_IN_SPACE_MAX_PINS {
        return Err(OracleError::TooManyPins {
            pins: n,
            max: BEST_IN_SPACE_MAX_PINS,
        });
    }
    let domain: Vec<PsChoice> = mode.choices().iter().collect();
    let k = domain.len();
    let edges_per_tree = n - 1;
    let assignments = k.pow(edges_per_tree as u32);
    let mut best = f64::INFINITY;
    let mut choices = alloc::vec![domain[0]; edges_per_tree];
    for tree in labeled_trees(n) {
        for a in 0..assignments {
            let mut c = a;
            for slot in choices.iter_mut() {
                *slot = domain[c % k];
                c /= k;
            }
            let len = raw_tree_length(net, &tree, &choices);
            if len < best {
                best = len;
            }
        }
    }
    Ok(best)
}
