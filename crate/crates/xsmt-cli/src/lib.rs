//! IO and workflow layer around `xsmt-core`: the plain-text net file
//! format, a seeded benchmark generator, batch/ablation reports, and SVG
//! rendering of routed trees.

pub mod generate;
pub mod netfile;
pub mod report;
pub mod svg;
