//! Seeded sampling of rational data for property tests and fuzzing.
//!
//! All sampling goes through ChaCha8 with explicit streams and fixed-width
//! integer ranges, so a seed yields the same data on every platform.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{transport, StructureConstants};
use crate::catalog::{all_labels, canonical_algebra, example_coalgebra_top, simple_an_any};
use crate::coalgebra::Comultiplication;
use crate::linalg::Matrix;
use crate::scalar::{int, ratio, Scalar};
use crate::tensor::increasing_tuples;

/// Generator for stream `stream` under `seed`; distinct streams are independent.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Nonzero rational `p/q` with `|p| <= 3`, `1 <= q <= 3`.
pub fn small_nonzero(rng: &mut ChaCha8Rng) -> Scalar {
    let p = loop {
        let p: i64 = rng.gen_range(-3..=3);
        if p != 0 {
            break p;
        }
    };
    let q: i64 = rng.gen_range(1..=3);
    ratio(p, q)
}

/// Rational that is nonzero with probability `num / den`.
pub fn sparse_scalar(rng: &mut ChaCha8Rng, num: u32, den: u32) -> Scalar {
    if rng.gen_range(0..den) < num {
        small_nonzero(rng)
    } else {
        int(0)
    }
}

pub fn random_vector(rng: &mut ChaCha8Rng, m: usize) -> Vec<Scalar> {
    (0..m).map(|_| sparse_scalar(rng, 4, 5)).collect()
}

/// Random invertible matrix with small rational entries.
pub fn random_invertible(rng: &mut ChaCha8Rng, m: usize) -> Matrix {
    loop {
        let g = Matrix::from_rows(
            (0..m)
                .map(|_| (0..m).map(|_| sparse_scalar(rng, 3, 5)).collect())
                .collect(),
        );
        if g.rank() == m {
            return g;
        }
    }
}

/// Constants with `entries` random nonzero slots.
pub fn random_sparse_constants(rng: &mut ChaCha8Rng, n: usize, m: usize, entries: usize) -> StructureConstants {
    let tuples = increasing_tuples(m, n);
    let mut c = StructureConstants::new(n, m).expect("valid shape");
    if tuples.is_empty() {
        return c;
    }
    for _ in 0..entries {
        let t = &tuples[rng.gen_range(0..tuples.len() as u32) as usize];
        let k = rng.gen_range(1..=m as u32) as usize;
        c.set(t, k, small_nonzero(rng)).expect("in range");
    }
    c
}

/// A mix of structured n-Lie brackets (canonical forms and `A_n`, possibly
/// conjugated, when `m = n + 1`) and sparse random constants, so that both
/// valid and invalid inputs occur often.
pub fn random_bracket(rng: &mut ChaCha8Rng, n: usize, m: usize) -> StructureConstants {
    let pick: u32 = rng.gen_range(0..4);
    if m == n + 1 && pick == 0 {
        let base = if n >= 3 {
            let labels = all_labels(n, &[int(1), ratio(-1, 2)]);
            let l = &labels[rng.gen_range(0..labels.len() as u32) as usize];
            canonical_algebra(n, l).expect("admissible label")
        } else {
            simple_an_any(n).expect("n >= 2")
        };
        let g = random_invertible(rng, m);
        return transport(&base, &g).expect("invertible");
    }
    if m == n + 1 && pick == 1 {
        let top = example_coalgebra_top(n).expect("n >= 2");
        return top.into_constants();
    }
    let entries = rng.gen_range(1..=3u32) as usize;
    random_sparse_constants(rng, n, m, entries)
}

/// Comultiplication drawn like [`random_bracket`] (its dual bracket).
pub fn random_comultiplication(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Comultiplication {
    Comultiplication::from_constants(random_bracket(rng, n, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<Scalar> = (0..10).map(|_| small_nonzero(&mut rng_for(7, 3))).collect();
        let b: Vec<Scalar> = (0..10).map(|_| small_nonzero(&mut rng_for(7, 3))).collect();
        assert_eq!(a, b);
        let mut r1 = rng_for(7, 1);
        let mut r2 = rng_for(7, 2);
        let x: Vec<Scalar> = (0..20).map(|_| small_nonzero(&mut r1)).collect();
        let y: Vec<Scalar> = (0..20).map(|_| small_nonzero(&mut r2)).collect();
        assert_ne!(x, y);
    }

    #[test]
    fn invertible_is_invertible() {
        let mut r = rng_for(1, 0);
        for _ in 0..5 {
            assert_eq!(random_invertible(&mut r, 4).rank(), 4);
        }
    }
}
