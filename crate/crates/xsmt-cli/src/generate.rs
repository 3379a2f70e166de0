//! Seeded synthetic benchmark nets, standing in for external circuit
//! suites: uniform integer pins, deduplicated, deterministic per seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;
use xsmt_core::{Net, Point};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("net size {size} is below the minimum of 2")]
    SizeTooSmall { size: usize },
    #[error("coordinate range {lo}..={hi} cannot hold {size} distinct pins")]
    RangeTooSmall { lo: i32, hi: i32, size: usize },
    #[error("coordinate range is empty: {lo} > {hi}")]
    EmptyRange { lo: i32, hi: i32 },
}

/// Generates `nets_per_size` nets for every entry of `sizes`, pins uniform
/// in `[lo, hi] x [lo, hi]`. Names are `rand<size>_<index>`.
pub fn generate_random_suite(
    sizes: &[usize],
    nets_per_size: usize,
    coord_range: (i32, i32),
    seed: u64,
) -> Result<Vec<Net>, GenerateError> {
    let (lo, hi) = coord_range;
    if lo > hi {
        return Err(GenerateError::EmptyRange { lo, hi });
    }
    let span = (hi as i64 - lo as i64 + 1) as u128;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut nets = Vec::with_capacity(sizes.len() * nets_per_size);
    for &size in sizes {
        if size < 2 {
            return Err(GenerateError::SizeTooSmall { size });
        }
        if span * span < size as u128 {
            return Err(GenerateError::RangeTooSmall { lo, hi, size });
        }
        for index in 0..nets_per_size {
            let mut pins = BTreeSet::new();
            while pins.len() < size {
                let x = rng.random_range(lo..=hi);
                let y = rng.random_range(lo..=hi);
                pins.insert(Point::new(x, y));
            }
            let name = format!("rand{}_{}", size, index);
            let net = Net::new(name, pins.into_iter().collect())
                .expect("generated nets always hold >= 2 distinct pins");
            nets.push(net);
        }
    }
    Ok(nets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netfile::write_netfile;

    #[test]
    fn fixed_seed_reproduces_file_bytes() {
        let a = generate_random_suite(&[8], 1, (0, 100), 77).unwrap();
        let b = generate_random_suite(&[8], 1, (0, 100), 77).unwrap();
        assert_eq!(write_netfile(&a), write_netfile(&b));
        let c = generate_random_suite(&[8], 1, (0, 100), 78).unwrap();
        assert_ne!(write_netfile(&a), write_netfile(&c));
    }

    #[test]
    fn degenerate_range_is_rejected() {
        assert_eq!(
            generate_random_suite(&[2], 1, (0, 0), 1).unwrap_err(),
            GenerateError::RangeTooSmall {
                lo: 0,
                hi: 0,
                size: 2
            }
        );
        assert!(generate_random_suite(&[2], 1, (5, 4), 1).is_err());
        assert!(generate_random_suite(&[1], 1, (0, 9), 1).is_err());
    }

    #[test]
    fn suite_size_is_sizes_times_count() {
        let nets = generate_random_suite(&[10, 50, 100], 3, (0, 500), 5).unwrap();
        assert_eq!(nets.len(), 9);
        assert_eq!(nets[0].pin_count(), 10);
        assert_eq!(nets[8].pin_count(), 100);
        for n in &nets {
            assert!(n.pins().iter().all(|p| (0..=500).contains(&p.x)));
        }
    }
}
