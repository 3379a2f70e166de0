//! The plain-text net file format.
//!
//! ```text
//! # comment
//! net <name> <pin-count>
//! <x> <y>
//! ...
//! ```
//!
//! Blank lines and `#` comments are ignored anywhere. Duplicate pins within
//! a net are dropped (counted as warnings). Anything else is an error that
//! names the offending line.

use thiserror::Error;
use xsmt_core::{Net, Point};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NetFileError {
    #[error("line {line}: expected 'net <name> <pin-count>', got '{text}'")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: expected '<x> <y>' integer coordinates, got '{text}'")]
    BadCoordinate { line: usize, text: String },
    #[error("line {line}: net '{name}' declares {expected} pins but the file provides {found}")]
    PinCountMismatch {
        line: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: net '{name}' has {distinct} distinct pins; at least 2 are required")]
    TooFewDistinctPins {
        line: usize,
        name: String,
        distinct: usize,
    },
}

/// Parse result: the nets plus how many duplicate pins were dropped.
#[derive(Debug, Clone)]
pub struct ParsedNets {
    pub nets: Vec<Net>,
    pub duplicates_dropped: usize,
}

/// Parses a whole net file. An empty (or comment-only) file yields no nets.
pub fn parse_netfile(text: &str) -> Result<ParsedNets, NetFileError> {
    let mut nets = Vec::new();
    let mut duplicates = 0usize;
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    while let Some((line_no, line)) = lines.next() {
        let mut tokens = line.split_whitespace();
        let header_err = || NetFileError::MalformedHeader {
            line: line_no,
            text: line.to_string(),
        };
        if tokens.next() != Some("net") {
            return Err(header_err());
        }
        let name = tokens.next().ok_or_else(header_err)?.to_string();
        let count: usize = tokens
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(header_err)?;
        if tokens.next().is_some() || count == 0 {
            return Err(header_err());
        }
        let mut pins = Vec::with_capacity(count);
        for _ in 0..count {
            let (pin_line, pin_text) = lines.next().ok_or(NetFileError::PinCountMismatch {
                line: line_no,
                name: name.clone(),
                expected: count,
                found: pins.len(),
            })?;
            let coord_err = || NetFileError::BadCoordinate {
                line: pin_line,
                text: pin_text.to_string(),
            };
            // a fresh header here means the previous net was short
            if pin_text.starts_with("net ") {
                return Err(NetFileError::PinCountMismatch {
                    line: line_no,
                    name: name.clone(),
                    expected: count,
                    found: pins.len(),
                });
            }
            let mut coords = pin_text.split_whitespace();
            let x: i32 = coords
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(coord_err)?;
            let y: i32 = coords
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(coord_err)?;
            if coords.next().is_some() {
                return Err(coord_err());
            }
            pins.push(Point::new(x, y));
        }
        let declared = pins.len();
        let net = match Net::new(name.clone(), pins) {
            Ok(n) => n,
            Err(xsmt_core::encoding::NetError::TooFewPins { distinct }) => {
                return Err(NetFileError::TooFewDistinctPins {
                    line: line_no,
                    name,
                    distinct,
                })
            }
        };
        duplicates += declared - net.pin_count();
        nets.push(net);
    }
    Ok(ParsedNets {
        nets,
        duplicates_dropped: duplicates,
    })
}

/// Serializes nets back into the file format; `parse_netfile` inverts this.
pub fn write_netfile(nets: &[Net]) -> String {
    let mut out = String::new();
    for net in nets {
        out.push_str(&format!("net {} {}\n", net.name(), net.pin_count()));
        for p in net.pins() {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE1: &str = "\
# 8-pin example net
net table1 8
33 33
2 9
42 35
47 2
34 1
38 2
37 5
20 4
";

    #[test]
    fn parses_the_eight_pin_fixture() {
        let parsed = parse_netfile(TABLE1).unwrap();
        assert_eq!(parsed.nets.len(), 1);
        assert_eq!(parsed.duplicates_dropped, 0);
        let net = &parsed.nets[0];
        assert_eq!(net.name(), "table1");
        assert_eq!(net.pin_count(), 8);
        assert!(net.pins().contains(&Point::new(33, 33)));
    }

    #[test]
    fn empty_file_gives_no_nets() {
        let parsed = parse_netfile("").unwrap();
        assert!(parsed.nets.is_empty());
        let parsed = parse_netfile("# only a comment\n\n").unwrap();
        assert!(parsed.nets.is_empty());
    }

    #[test]
    fn short_net_is_reported_at_the_header_line() {
        let err = parse_netfile("net broken 3\n0 0\n1 1\n").unwrap_err();
        assert_eq!(
            err,
            NetFileError::PinCountMismatch {
                line: 1,
                name: "broken".into(),
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn short_net_followed_by_next_header_is_detected() {
        let err = parse_netfile("net a 3\n0 0\n1 1\nnet b 2\n5 5\n6 6\n").unwrap_err();
        assert!(matches!(err, NetFileError::PinCountMismatch { line: 1, .. }));
    }

    #[test]
    fn bad_tokens_carry_line_numbers() {
        let err = parse_netfile("nets x 2\n0 0\n1 1\n").unwrap_err();
        assert!(matches!(err, NetFileError::MalformedHeader { line: 1, .. }));
        let err = parse_netfile("net x 2\n0 zero\n1 1\n").unwrap_err();
        assert!(matches!(err, NetFileError::BadCoordinate { line: 2, .. }));
        let err = parse_netfile("net x 2\n0 0 0\n1 1\n").unwrap_err();
        assert!(matches!(err, NetFileError::BadCoordinate { line: 2, .. }));
    }

    #[test]
    fn duplicate_pins_are_dropped_and_counted() {
        let parsed = parse_netfile("net d 4\n0 0\n1 1\n0 0\n2 2\n").unwrap();
        assert_eq!(parsed.nets[0].pin_count(), 3);
        assert_eq!(parsed.duplicates_dropped, 1);
    }

    #[test]
    fn all_identical_pins_is_an_error() {
        let err = parse_netfile("net same 2\n3 3\n3 3\n").unwrap_err();
        assert!(matches!(err, NetFileError::TooFewDistinctPins { .. }));
    }

    #[test]
    fn round_trips_through_write() {
        let parsed = parse_netfile(TABLE1).unwrap();
        let text = write_netfile(&parsed.nets);
        let again = parse_netfile(&text).unwrap();
        assert_eq!(parsed.nets, again.nets);
        // canonical text is a fixed point
        assert_eq!(text, write_netfile(&again.nets));
    }
}
