//! Seeded random configurations for property checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::configuration::Configuration;
use crate::error::{Error, Result};
use crate::lattice::IntMatrix;

/// A homogeneous `d × n` configuration: first row all ones, other entries
/// in `[0, max_entry]`, distinct columns, full row rank.
pub fn random_configuration(seed: u64, d: usize, n: usize, max_entry: i64) -> Result<Configuration> {
    if d == 0 || n < d {
        return Err(Error::InvalidInput(format!("cannot build a {d}x{n} configuration")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..1000 {
        let mut columns: Vec<Vec<i64>> = Vec::new();
        let mut tries = 0;
        while columns.len() < n && tries < 1000 {
            tries += 1;
            let mut col = vec![1i64];
            col.extend((1..d).map(|_| rng.gen_range(0..=max_entry)));
            if !columns.contains(&col) {
                columns.push(col);
            }
        }
        if columns.len() < n {
            continue;
        }
        columns.shuffle(&mut rng);
        let rows: Vec<Vec<i64>> = (0..d).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = IntMatrix::from_i64(&refs)?;
        if m.rank() == d {
            return Configuration::new(m);
        }
    }
    Err(Error::InvalidInput(format!(
        "no full-rank {d}x{n} configuration with entries up to {max_entry}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let a = random_configuration(7, 3, 5, 3).unwrap();
        let b = random_configuration(7, 3, 5, 3).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(a.n(), 5);
        assert!((0..5).all(|j| a.column(j)[0] == 1));
    }
}
