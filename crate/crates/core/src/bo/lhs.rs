use rand::seq::SliceRandom;
use rand::Rng;

use crate::scalar::{from_usize, lit, Scalar};

/// `n` Latin-hypercube points in `[0, 1]^dim`: every axis has exactly one
/// point in each of its `n` strata.
pub fn latin_hypercube<T: Scalar, R: Rng + ?Sized>(
    n: usize,
    dim: usize,
    rng: &mut R,
) -> Vec<Vec<T>> {
    let mut points = vec![vec![T::zero(); dim]; n];
    let mut strata: Vec<usize> = (0..n).collect();
    for k in 0..dim {
        strata.shuffle(rng);
        for (p, &s) in points.iter_mut().zip(&strata) {
            let jitter: f64 = rng.random();
            p[k] = (from_usize::<T>(s) + lit(jitter)) / from_usize::<T>(n);
        }
    }
    points
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_point_per_stratum() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let pts: Vec<Vec<f64>> = latin_hypercube(10, 7, &mut rng);
        for k in 0..7 {
            let mut seen = [false; 10];
            for p in &pts {
                assert!((0.0..1.0).contains(&p[k]));
                seen[(p[k] * 10.0) as usize] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }

    #[test]
    fn seeded() {
        let a: Vec<Vec<f64>> = latin_hypercube(5, 3, &mut ChaCha8Rng::seed_from_u64(4));
        let b: Vec<Vec<f64>> = latin_hypercube(5, 3, &mut ChaCha8Rng::seed_from_u64(4));
        assert_eq!(a, b);
    }
}
