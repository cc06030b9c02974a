//! Seeded generation of parameter points and test polynomials.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Substitution};
use crate::params::{check_genericity, ParamSet};
use crate::scalar::Scalar;

pub type SeededRng = ChaCha8Rng;

/// Largest numerator or denominator magnitude for drawn parameters.
pub const PARAM_HEIGHT: i64 = 64;

/// Draws before [`random_params`] gives up.
pub const RETRY_CAP: usize = 1000;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derives an independent stream for a named sub-task, so results do not
/// depend on the order in which tasks run.
pub fn sub_rng(seed: u64, label: &str, index: i64) -> SeededRng {
    // FNV-1a over the label, mixed with the seed and index
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes().chain(index.to_le_bytes()) {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h.rotate_left(17))
}

fn nonzero_rational<R: Rng>(rng: &mut R, height: i64) -> Scalar {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-height..=height);
    }
    let den = rng.gen_range(1..=height);
    Scalar::new(num, den)
}

/// `q` with `0 < |q| < 1`.
fn small_q<R: Rng>(rng: &mut R) -> Scalar {
    let den = rng.gen_range(2..=PARAM_HEIGHT);
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-(den - 1)..=den - 1);
    }
    Scalar::new(num, den)
}

/// Rejection-samples a certified point with small-height coordinates.
pub fn random_params<R: Rng>(rng: &mut R, n_max: u32) -> Result<ParamSet> {
    for _ in 0..RETRY_CAP {
        let q = small_q(rng);
        let [a, b, c, d] = std::array::from_fn(|_| nonzero_rational(rng, PARAM_HEIGHT));
        if let Ok(p) = check_genericity(q, a, b, c, d, n_max) {
            return Ok(p);
        }
    }
    Err(Error::InvalidInput(format!(
        "no generic parameter point found after {RETRY_CAP} draws"
    )))
}

/// `count` certified points from one seed.
pub fn random_params_list(seed: u64, count: usize, n_max: u32) -> Result<Vec<ParamSet>> {
    let mut rng = rng_from_seed(seed);
    (0..count).map(|_| random_params(&mut rng, n_max)).collect()
}

/// A nonzero Laurent polynomial supported in `lo..=hi` with small
/// rational coefficients.
pub fn random_laurent<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> LaurentPoly {
    loop {
        let f = LaurentPoly::from_terms((lo..=hi).filter_map(|k| {
            if rng.gen_bool(0.75) {
                Some((k, Scalar::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))))
            } else {
                None
            }
        }));
        if !f.is_zero() {
            return f;
        }
    }
}

/// A nonzero symmetric Laurent polynomial supported in `-width..=width`.
pub fn random_symmetric<R: Rng>(rng: &mut R, width: i64) -> LaurentPoly {
    let q = Scalar::one();
    loop {
        let g = random_laurent(rng, 0, width);
        let f = &g + &g.substitute(Substitution::Inversion, &q);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A Laurent polynomial in `-width..=width` that is not symmetric.
pub fn random_asymmetric<R: Rng>(rng: &mut R, width: i64) -> LaurentPoly {
    loop {
        let f = random_laurent(rng, -width, width);
        if !f.is_symmetric() {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_are_deterministic_and_certified() {
        let a = random_params_list(42, 3, 8).unwrap();
        let b = random_params_list(42, 3, 8).unwrap();
        assert_eq!(a, b);
        for p in &a {
            assert!(p.q().abs() < Scalar::one());
            assert!(!p.q().is_zero());
            for v in [p.a(), p.b(), p.c(), p.d()] {
                assert!(v.numer().bits() <= 7 && v.denom().bits() <= 7);
            }
            assert!(check_genericity(
                p.q().clone(),
                p.a().clone(),
                p.b().clone(),
                p.c().clone(),
                p.d().clone(),
                8
            )
            .is_ok());
        }
        assert_ne!(random_params_list(43, 3, 8).unwrap(), a);
    }

    #[test]
    fn generated_polynomials_have_requested_shape() {
        let mut rng = rng_from_seed(7);
        for _ in 0..50 {
            let f = random_laurent(&mut rng, -6, 6);
            assert!(f.min_deg().unwrap() >= -6 && f.max_deg().unwrap() <= 6);
            assert!(random_symmetric(&mut rng, 6).is_symmetric());
            assert!(!random_asymmetric(&mut rng, 6).is_symmetric());
        }
    }

    #[test]
    fn sub_streams_are_independent_of_order() {
        let mut a = sub_rng(1, "x", 3);
        let mut b = sub_rng(1, "x", 3);
        assert_eq!(a.gen::<u64>(), b.gen::<u64>());
        let mut c = sub_rng(1, "y", 3);
        let mut d = sub_rng(1, "x", 4);
        let first = sub_rng(1, "x", 3).gen::<u64>();
        assert_ne!(c.gen::<u64>(), first);
        assert_ne!(d.gen::<u64>(), first);
    }
}
