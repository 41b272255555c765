//! Seeded random rationals for sweeps and verification runs.

use num_bigint::BigInt;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::klein::{canonicalize, KleinPoint, LiftPoint};
use crate::rat::{frac, Rat};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform rational in `[0, 1)` with denominator at most `max_den`.
pub fn unit_rat<R: Rng>(rng: &mut R, max_den: i64) -> Rat {
    let den = rng.gen_range(1..=max_den);
    frac(rng.gen_range(0..den), den)
}

/// Rational strictly inside `(lo, hi)` (given as fractions), denominator at most `max_den`.
pub fn rat_between<R: Rng>(rng: &mut R, lo: &Rat, hi: &Rat, max_den: i64) -> Rat {
    loop {
        let den = rng.gen_range(2..=max_den.max(2));
        let num = rng.gen_range(0..=den);
        let t = Rat::new(BigInt::from(num), BigInt::from(den));
        let x = lo + (hi - lo) * t;
        if &x > lo && &x < hi {
            return x;
        }
    }
}

pub fn klein_point<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> KleinPoint {
    let coords = (0..n).map(|_| unit_rat(rng, max_den)).collect();
    canonicalize(&LiftPoint::new(coords).expect("n >= 2")).0
}

/// Canonical base point with every coordinate in the open interval part of its
/// domain: `a_i ∈ (0,1/2) ∪ (1/2,1)` for `i < n` and `a_n ∈ (0,1)`.
pub fn generic_base<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> LiftPoint {
    let h = frac(1, 2);
    let zero = frac(0, 1);
    let one = frac(1, 1);
    let mut coords: Vec<Rat> = (0..n - 1)
        .map(|_| {
            if rng.gen_bool(0.5) {
                rat_between(rng, &zero, &h, max_den)
            } else {
                rat_between(rng, &h, &one, max_den)
            }
        })
        .collect();
    coords.push(rat_between(rng, &zero, &one, max_den));
    LiftPoint::new(coords).expect("n >= 2")
}

/// Base point in the reduced chamber `(0, 1/2)^{n−1} × (0, 1)`.
pub fn reduced_base<R: Rng>(rng: &mut R, n: usize, max_den: i64) -> LiftPoint {
    let h = frac(1, 2);
    let zero = frac(0, 1);
    let mut coords: Vec<Rat> = (0..n - 1)
        .map(|_| rat_between(rng, &zero, &h, max_den))
        .collect();
    coords.push(rat_between(rng, &zero, &frac(1, 1), max_den));
    LiftPoint::new(coords).expect("n >= 2")
}
