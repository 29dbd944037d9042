use rand::seq::SliceRandom;
use rand::Rng;

use super::{OccupancyState, MIN_SIZE};
use crate::{Error, Result};

/// Independent Bernoulli occupations with `P(eta(x) = 1) = profile(x / n)`,
/// reading site `n` as `u = 0`. A constant profile gives an exact sample of
/// the product measure.
pub fn sample_bernoulli<F, R>(n: usize, profile: F, rng: &mut R) -> Result<OccupancyState>
where
    F: Fn(f64) -> f64,
    R: Rng + ?Sized,
{
    if n < MIN_SIZE {
        return Err(Error::DeckTooSmall(n));
    }
    let mut bits = Vec::with_capacity(n);
    for x in 1..=n {
        let u = (x % n) as f64 / n as f64;
        let p = profile(u);
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProfileOutOfRange { u, value: p });
        }
        bits.push(u8::from(rng.random::<f64>() < p));
    }
    OccupancyState::from_bits(&bits)
}

/// Uniform configuration with exactly `particles` occupied sites.
pub fn sample_hyperplane<R: Rng + ?Sized>(n: usize, particles: usize, rng: &mut R) -> Result<OccupancyState> {
    if n < MIN_SIZE {
        return Err(Error::DeckTooSmall(n));
    }
    if particles > n {
        return Err(Error::ParticleCountOutOfRange { count: particles, n });
    }
    let mut bits = vec![0u8; n];
    bits[..particles].fill(1);
    bits.shuffle(rng);
    OccupancyState::from_bits(&bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::replica_rng;

    #[test]
    fn degenerate_profiles() {
        let mut rng = replica_rng(3, 0);
        assert_eq!(sample_bernoulli(10, |_| 1.0, &mut rng).unwrap().to_vec(), vec![1; 10]);
        assert_eq!(sample_bernoulli(10, |_| 0.0, &mut rng).unwrap().to_vec(), vec![0; 10]);
        assert!(matches!(
            sample_bernoulli(10, |u| 1.5 * u, &mut rng),
            Err(Error::ProfileOutOfRange { .. })
        ));
    }

    #[test]
    fn hyperplane_extremes_and_guard() {
        let mut rng = replica_rng(3, 1);
        assert_eq!(sample_hyperplane(7, 0, &mut rng).unwrap().to_vec(), vec![0; 7]);
        assert_eq!(sample_hyperplane(7, 7, &mut rng).unwrap().to_vec(), vec![1; 7]);
        assert_eq!(
            sample_hyperplane(7, 8, &mut rng),
            Err(Error::ParticleCountOutOfRange { count: 8, n: 7 })
        );
        assert_eq!(sample_hyperplane(7, 3, &mut rng).unwrap().particle_count(), 3);
    }
}
