//! Edge expansion under pseudo-Steiner choices and exact tree length.
//!
//! A pin-to-pin edge is routed as at most two segments meeting at a single
//! pseudo-Steiner point. Which two-segment shortest path is used is encoded
//! by a [`PsChoice`] digit. Total tree length is the measure of the union of
//! all routed segments, so overlapping fragments on the same line are
//! counted once.
//!
//! Lengths are bookkept exactly as `hv + diag * sqrt(2)` with integer `hv`
//! and `diag`; the square root enters only when converting to `f64` for
//! reporting. This keeps selection, determinism, and coordinate-scaling
//! behavior exact.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::SQRT_2;
use core::fmt;

use crate::encoding::{Net, Particle};

/// A pin location on the integer routing grid.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Point {
    pub x: i32,
    pub y: i32,
}

impl Point {
    pub const fn new(x: i32, y: i32) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Pseudo-Steiner choice digit attached to an edge.
///
/// `C0`/`C1` route one rectilinear plus one diagonal segment (octilinear
/// only); `C2`/`C3` are the two L-shaped rectilinear routes.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum PsChoice {
    C0,
    C1,
    C2,
    C3,
}

impl PsChoice {
    pub const ALL: [PsChoice; 4] = [PsChoice::C0, PsChoice::C1, PsChoice::C2, PsChoice::C3];

    pub fn digit(self) -> u8 {
        match self {
            PsChoice::C0 => 0,
            PsChoice::C1 => 1,
            PsChoice::C2 => 2,
            PsChoice::C3 => 3,
        }
    }

    pub fn from_digit(d: u8) -> Option<PsChoice> {
        match d {
            0 => Some(PsChoice::C0),
            1 => Some(PsChoice::C1),
            2 => Some(PsChoice::C2),
            3 => Some(PsChoice::C3),
            _ => None,
        }
    }
}

/// Segment orientation in the four-direction routing geometry.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Orientation {
    H,
    V,
    D45,
    D135,
}

impl Orientation {
    pub fn is_diagonal(self) -> bool {
        matches!(self, Orientation::D45 | Orientation::D135)
    }
}

/// A directed-line segment stored by its carrier line and projection interval.
///
/// `line_key` identifies the carrier: `y` for H, `x` for V, `y - x` for D45,
/// `y + x` for D135. `lo..hi` is the projection onto the x-axis (y-axis for
/// V segments). Invariant: `lo <= hi`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    pub orientation: Orientation,
    pub line_key: i64,
    pub lo: i64,
    pub hi: i64,
}

impl Segment {
    /// Builds the segment joining two octilinearly aligned points.
    ///
    /// Returns `None` for a zero-length segment. Panics if the points are
    /// not on a common horizontal, vertical, or diagonal line.
    pub fn between(a: Point, b: Point) -> Option<Segment> {
        let (ax, ay) = (a.x as i64, a.y as i64);
        let (bx, by) = (b.x as i64, b.y as i64);
        let dx = bx - ax;
        let dy = by - ay;
        if dx == 0 && dy == 0 {
            return None;
        }
        let seg = if dy == 0 {
            Segment {
                orientation: Orientation::H,
                line_key: ay,
                lo: ax.min(bx),
                hi: ax.max(bx),
            }
        } else if dx == 0 {
            Segment {
                orientation: Orientation::V,
                line_key: ax,
                lo: ay.min(by),
                hi: ay.max(by),
            }
        } else if dy == dx {
            Segment {
                orientation: Orientation::D45,
                line_key: ay - ax,
                lo: ax.min(bx),
                hi: ax.max(bx),
            }
        } else if dy == -dx {
            Segment {
                orientation: Orientation::D135,
                line_key: ay + ax,
                lo: ax.min(bx),
                hi: ax.max(bx),
            }
        } else {
            panic!("points {} and {} are not octilinearly aligned", a, b);
        };
        Some(seg)
    }

    /// Length of the projection interval in grid units.
    pub fn units(&self) -> i64 {
        self.hi - self.lo
    }

    /// Euclidean length: `units` for H/V, `units * sqrt(2)` for diagonals.
    pub fn euclid(&self) -> f64 {
        if self.orientation.is_diagonal() {
            self.units() as f64 * SQRT_2
        } else {
            self.units() as f64
        }
    }

    /// Reconstructs the segment's endpoints as `(x, y)` pairs.
    pub fn endpoints(&self) -> ((i64, i64), (i64, i64)) {
        let k = self.line_key;
        match self.orientation {
            Orientation::H => ((self.lo, k), (self.hi, k)),
            Orientation::V => ((k, self.lo), (k, self.hi)),
            Orientation::D45 => ((self.lo, k + self.lo), (self.hi, k + self.hi)),
            Orientation::D135 => ((self.lo, k - self.lo), (self.hi, k - self.hi)),
        }
    }
}

/// Exact wirelength: `hv` grid units of rectilinear wire plus `diag` grid
/// units of diagonal wire, total `hv + diag * sqrt(2)`.
///
/// Comparison is exact (no floating-point rounding), so selection between
/// candidate trees is invariant under integer scaling of the coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Wirelength {
    pub hv: i64,
    pub diag: i64,
}

impl Wirelength {
    pub const ZERO: Wirelength = Wirelength { hv: 0, diag: 0 };

    pub fn as_f64(self) -> f64 {
        self.hv as f64 + self.diag as f64 * SQRT_2
    }
}

impl core::ops::Add for Wirelength {
    type Output = Wirelength;
    fn add(self, rhs: Wirelength) -> Wirelength {
        Wirelength {
            hv: self.hv + rhs.hv,
            diag: self.diag + rhs.diag,
        }
    }
}

impl Ord for Wirelength {
    fn cmp(&self, other: &Self) -> Ordering {
        // sign of (dh + dd * sqrt(2)) without leaving integer arithmetic
        let dh = self.hv - other.hv;
        let dd = self.diag - other.diag;
        match (dh.cmp(&0), dd.cmp(&0)) {
            (Ordering::Equal, d) => d,
            (h, Ordering::Equal) => h,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            (Ordering::Greater, Ordering::Less) | (Ordering::Less, Ordering::Greater) => {
                // dh and -dd*sqrt(2) share a sign with dh; compare squares
                let lhs = (dh as i128) * (dh as i128);
                let rhs = 2 * (dd as i128) * (dd as i128);
                if dh > 0 {
                    lhs.cmp(&rhs)
                } else {
                    rhs.cmp(&lhs)
                }
            }
        }
    }
}

impl PartialOrd for Wirelength {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortest octilinear distance between two points, exactly.
pub fn octilinear_units(a: Point, b: Point) -> Wirelength {
    let dx = (b.x as i64 - a.x as i64).abs();
    let dy = (b.y as i64 - a.y as i64).abs();
    let m = dx.min(dy);
    Wirelength {
        hv: dx.max(dy) - m,
        diag: m,
    }
}

/// Manhattan distance between two points.
pub fn manhattan_dist(a: Point, b: Point) -> i64 {
    (b.x as i64 - a.x as i64).abs() + (b.y as i64 - a.y as i64).abs()
}

/// The pseudo-Steiner point through which `(a, b)` is routed under `choice`.
///
/// Endpoints are first normalized so the lower `(x, y)` point leads; with
/// `dx = x_b - x_a >= 0`, `dy = y_b - y_a`, `s = sign(dy)`:
///
/// * `C2`: `(x_a, y_b)` — vertical then horizontal.
/// * `C3`: `(x_b, y_a)` — horizontal then vertical.
/// * `C0`: rectilinear first, then diagonal. The long axis carries the
///   rectilinear part: `(x_b - |dy|, y_a)` when `|dy| <= dx`, else
///   `(x_a, y_b - s*dx)`.
/// * `C1`: diagonal first, then rectilinear: `(x_a + |dy|, y_b)` when
///   `|dy| <= dx`, else `(x_b, y_a + s*dx)`.
///
/// For axis-aligned edges the bend degenerates onto an endpoint and every
/// choice yields the same single segment. On exact-diagonal edges that
/// holds for `C0`/`C1` (one diagonal segment), while `C2`/`C3` keep their
/// rectilinear L-route: those two digits never emit diagonal wire, which is
/// what makes the `{C2, C3}` domain a rectilinear solver.
pub fn bend_point(a: Point, b: Point, choice: PsChoice) -> Point {
    let (a, b) = if (b.x, b.y) < (a.x, a.y) { (b, a) } else { (a, b) };
    let (ax, ay) = (a.x as i64, a.y as i64);
    let (bx, by) = (b.x as i64, b.y as i64);
    let dx = bx - ax;
    let dy = by - ay;
    let ady = dy.abs();
    let s = dy.signum();
    let (sx, sy) = match choice {
        PsChoice::C2 => (ax, by),
        PsChoice::C3 => (bx, ay),
        PsChoice::C0 => {
            if ady <= dx {
                (bx - ady, ay)
            } else {
                (ax, by - s * dx)
            }
        }
        PsChoice::C1 => {
            if ady <= dx {
                (ax + ady, by)
            } else {
                (bx, ay + s * dx)
            }
        }
    };
    // The bend always lies inside the edge's bounding box, so it fits i32.
    Point::new(sx as i32, sy as i32)
}

/// Expands a pin-to-pin edge into its routed segments (zero, one, or two).
pub fn expand_edge(a: Point, b: Point, choice: PsChoice) -> Vec<Segment> {
    let mut out = Vec::with_capacity(2);
    expand_edge_into(a, b, choice, &mut out);
    out
}

/// As [`expand_edge`], appending into a caller-owned buffer.
pub fn expand_edge_into(a: Point, b: Point, choice: PsChoice, out: &mut Vec<Segment>) {
    let (a, b) = if (b.x, b.y) < (a.x, a.y) { (b, a) } else { (a, b) };
    let s = bend_point(a, b, choice);
    if let Some(seg) = Segment::between(a, s) {
        out.push(seg);
    }
    if let Some(seg) = Segment::between(s, b) {
        out.push(seg);
    }
}

/// Exact measure of the union of a set of segments.
///
/// Segments are grouped by carrier line; overlapping projection intervals
/// on the same line are counted once.
pub fn union_wirelength(segments: &[Segment]) -> Wirelength {
    let mut segs: Vec<Segment> = segments.iter().copied().filter(|s| s.lo < s.hi).collect();
    segs.sort_unstable_by_key(|s| (s.orientation, s.line_key, s.lo, s.hi));
    let mut total = Wirelength::ZERO;
    let mut i = 0;
    while i < segs.len() {
        let line = (segs[i].orientation, segs[i].line_key);
        let mut covered = 0i64;
        let mut cur_lo = segs[i].lo;
        let mut cur_hi = segs[i].hi;
        i += 1;
        while i < segs.len() && (segs[i].orientation, segs[i].line_key) == line {
            if segs[i].lo > cur_hi {
                covered += cur_hi - cur_lo;
                cur_lo = segs[i].lo;
                cur_hi = segs[i].hi;
            } else {
                cur_hi = cur_hi.max(segs[i].hi);
            }
            i += 1;
        }
        covered += cur_hi - cur_lo;
        if line.0.is_diagonal() {
            total.diag += covered;
        } else {
            total.hv += covered;
        }
    }
    total
}

/// Union measure as an `f64`; see [`union_wirelength`].
pub fn union_length(segments: &[Segment]) -> f64 {
    union_wirelength(segments).as_f64()
}

/// Error returned when a particle's edge list is not a spanning tree of the
/// net it is evaluated against.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InvalidParticle;

impl fmt::Display for InvalidParticle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "particle edge list is not a spanning tree of the net")
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InvalidParticle {}

/// Exact routed length of a particle's tree over a net.
pub fn tree_wirelength(net: &Net, particle: &Particle) -> Result<Wirelength, InvalidParticle> {
    if !crate::encoding::validate(net, particle) {
        return Err(InvalidParticle);
    }
    let mut segs = Vec::with_capacity(2 * particle.edges().len());
    for e in particle.edges() {
        expand_edge_into(net.pin(e.u), net.pin(e.v), e.choice, &mut segs);
    }
    Ok(union_wirelength(&segs))
}

/// Routed length of a particle's tree, as an `f64`.
pub fn tree_length(net: &Net, particle: &Particle) -> Result<f64, InvalidParticle> {
    tree_wirelength(net, particle).map(Wirelength::as_f64)
}
