//! Steiner minimal tree construction for VLSI routing, in rectilinear
//! (Manhattan) and X-architecture (octilinear) geometry.
//!
//! The solver is a discrete particle swarm: a particle is a spanning tree
//! over the net's pins where every edge carries a pseudo-Steiner choice
//! digit selecting one of the shortest two-segment realizations of that
//! edge. Particles evolve through union-find-guarded mutation and
//! crossover operators, scheduled over multi-stage PS/E transformation
//! blocks. Exact brute-force oracles for tiny instances live in
//! [`oracle`] and never share computation paths with the production
//! geometry.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the `std` feature
//! (default) enables wall-clock timing and float intrinsics, `rayon`
//! enables parallel particle updates without changing any result.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("xsmt-core requires either the `std` or the `libm` feature");

pub mod encoding;
pub mod engine;
pub mod geometry;
pub mod operators;
pub mod oracle;

pub use encoding::{ChoiceSet, Edge, Net, Particle, RoutingMode, UnionFind};
pub use engine::{RunConfig, RunResult, StagePlan, Stats};
pub use geometry::{Point, PsChoice, Segment, Wirelength};
pub use operators::TransformMode;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.sqrt()
    }
    #[cfg(all(not(feature = "std"), feature = "libm"))]
    {
        libm::sqrt(x)
    }
}
