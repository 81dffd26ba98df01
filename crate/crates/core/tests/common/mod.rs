#![allow(dead_code)]

use jacobian_isogeny::mumford_newton::guard_digits;
use jacobian_isogeny::{Ctx, PrecisionContext, SeriesPoly};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `Z/p^(digits + guard)` for series order `n`.
pub fn guarded(p: u64, digits: u32, n: usize) -> Ctx {
    PrecisionContext::new(p, digits + guard_digits(p, n)).unwrap()
}

/// First `t`-index where `a` and `b` differ mod `p^digits`.
pub fn first_difference(a: &SeriesPoly, b: &SeriesPoly, digits: u32) -> Option<(usize, usize)> {
    let out = a.ctx().with_digits(digits).unwrap();
    let (a, b) = (a.convert(&out).unwrap(), b.convert(&out).unwrap());
    for i in 0..a.n().min(b.n()) {
        for k in 0..a.len().max(b.len()) {
            if a.term(k, i) != b.term(k, i) {
                return Some((k, i));
            }
        }
    }
    None
}
