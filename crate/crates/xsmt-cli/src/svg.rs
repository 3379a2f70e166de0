//! Deterministic SVG rendering of a routed tree: pins as circles, expanded
//! segments as lines, a length caption. Identical input yields identical
//! bytes, so renders can be golden-file tested.

use std::fmt::Write as _;
use thiserror::Error;
use xsmt_core::encoding::validate;
use xsmt_core::geometry::{expand_edge, tree_length};
use xsmt_core::{Net, Particle};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RenderError {
    #[error("particle is not a spanning tree of net '{0}'")]
    InvalidParticle(String),
}

/// Renders `particle` routed over `net` as an SVG 1.1 document.
pub fn render_svg(net: &Net, particle: &Particle) -> Result<String, RenderError> {
    if !validate(net, particle) {
        return Err(RenderError::InvalidParticle(net.name().to_string()));
    }
    let min_x = net.pins().iter().map(|p| p.x).min().unwrap() as f64;
    let max_x = net.pins().iter().map(|p| p.x).max().unwrap() as f64;
    let min_y = net.pins().iter().map(|p| p.y).min().unwrap() as f64;
    let max_y = net.pins().iter().map(|p| p.y).max().unwrap() as f64;
    let extent = (max_x - min_x).max(max_y - min_y).max(1.0);
    let margin = extent * 0.08;
    let width = max_x - min_x + 2.0 * margin;
    let height = max_y - min_y + 2.0 * margin;
    // flip y so larger y renders upward
    let tx = |x: f64| x - min_x + margin;
    let ty = |y: f64| max_y - y + margin;
    let stroke = extent / 160.0;
    let radius = extent / 70.0;
    let font = extent / 18.0;

    let length = tree_length(net, particle).expect("validated just above");
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {:.3} {:.3}" width="640">"#,
        width,
        height + font * 1.6
    );
    let _ = writeln!(
        out,
        r#"  <text x="{:.3}" y="{:.3}" font-size="{:.3}" font-family="monospace">{}: length {:.3}</text>"#,
        margin * 0.25,
        font,
        font,
        net.name(),
        length
    );
    let _ = writeln!(out, r#"  <g transform="translate(0 {:.3})">"#, font * 1.6);
    for edge in particle.edges() {
        for seg in expand_edge(net.pin(edge.u), net.pin(edge.v), edge.choice) {
            let ((x1, y1), (x2, y2)) = seg.endpoints();
            let _ = writeln!(
                out,
                r#"    <line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="{:.3}" stroke-linecap="round"/>"#,
                tx(x1 as f64),
                ty(y1 as f64),
                tx(x2 as f64),
                ty(y2 as f64),
                stroke
            );
        }
    }
    for (i, pin) in net.pins().iter().enumerate() {
        let _ = writeln!(
            out,
            r#"    <circle cx="{:.3}" cy="{:.3}" r="{:.3}" fill="crimson"><title>pin {}</title></circle>"#,
            tx(pin.x as f64),
            ty(pin.y as f64),
            radius,
            i + 1
        );
    }
    out.push_str("  </g>\n</svg>\n");
    Ok(out)
}
