//! Polynomial products over `Z/mZ` for `m < 2^62`.
//!
//! Short operands use schoolbook multiplication with `u128` accumulators.
//! Longer ones go through number-theoretic transforms modulo a handful of
//! word-sized NTT primes followed by Garner reconstruction, so the cost is
//! quasi-linear in the operand length. Every other kernel in the crate
//! reduces to this one through Kronecker substitution.

use std::cell::Cell;

/// Largest supported modulus (exclusive).
pub const MAX_MODULUS: u64 = 1 << 62;

const SCHOOLBOOK_CUTOFF: usize = 24;

thread_local! {
    static MUL_CALLS: Cell<u64> = const { Cell::new(0) };
    static MUL_WORK: Cell<u64> = const { Cell::new(0) };
}

/// Counters for the multiplication kernel on the current thread.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCount {
    /// Number of polynomial products performed.
    pub products: u64,
    /// Sum over products of the output length (a proxy for arithmetic work).
    pub coefficients: u64,
}

/// Reads the per-thread product counters.
pub fn op_count() -> OpCount {
    OpCount {
        products: MUL_CALLS.with(Cell::get),
        coefficients: MUL_WORK.with(Cell::get),
    }
}

/// Resets the per-thread product counters.
pub fn reset_op_count() {
    MUL_CALLS.with(|c| c.set(0));
    MUL_WORK.with(|c| c.set(0));
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Full product of `a` and `b` with coefficients reduced mod `m`.
///
/// Inputs must already be reduced. The output has length
/// `a.len() + b.len() - 1`, or is empty when either input is.
pub fn poly_mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    debug_assert!(m >= 1 && m < MAX_MODULUS);
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    MUL_CALLS.with(|c| c.set(c.get() + 1));
    MUL_WORK.with(|c| c.set(c.get() + out_len as u64));
    if a.len().min(b.len()) <= SCHOOLBOOK_CUTOFF {
        schoolbook(a, b, m)
    } else {
        multimodular(a, b, m)
    }
}

fn schoolbook(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let mut acc = vec![0u128; out_len];
    // Products are < 2^124; at most 15 fit in a u128 before a reduction.
    let small = m <= 1 << 32;
    let m128 = m as u128;
    if small {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u128;
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] += x * y as u128;
            }
        }
    } else {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u128;
            for (j, &y) in b.iter().enumerate() {
                let s = acc[i + j] + x * y as u128;
                acc[i + j] = if s >= 1 << 126 { s % m128 } else { s };
            }
        }
    }
    acc.into_iter().map(|v| (v % m128) as u64).collect()
}

// (prime, quadratic non-residue); every prime is 1 mod 2^23.
const PRIMES: [(u64, u64); 6] = [
    (2013265921, 31),
    (1811939329, 13),
    (998244353, 3),
    (754974721, 11),
    (469762049, 3),
    (167772161, 3),
];
const MAX_NTT_LOG: u32 = 23;

fn ntt<const P: u64>(a: &mut [u64], root: u64, invert: bool) {
    let n = a.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let root = if invert { pow_mod(root, P - 2, P) } else { root };
    let mut len = 2;
    while len <= n {
        // root has order 2^MAX_NTT_LOG.
        let w_len = pow_mod(root, (1u64 << MAX_NTT_LOG) / len as u64, P);
        let half = len / 2;
        let mut tw = Vec::with_capacity(half);
        let mut w = 1u64;
        for _ in 0..half {
            tw.push(w);
            w = w * w_len % P;
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = hi[k] * tw[k] % P;
                lo[k] = if u + v >= P { u + v - P } else { u + v };
                hi[k] = if u >= v { u - v } else { u + P - v };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv_n = pow_mod(n as u64, P - 2, P);
        for x in a.iter_mut() {
            *x = *x * inv_n % P;
        }
    }
}

fn convolve<const P: u64>(a: &[u64], b: &[u64], g: u64, size: usize) -> Vec<u64> {
    let root = pow_mod(g, (P - 1) >> MAX_NTT_LOG, P);
    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    for (d, &s) in fa.iter_mut().zip(a) {
        *d = s % P;
    }
    for (d, &s) in fb.iter_mut().zip(b) {
        *d = s % P;
    }
    ntt::<P>(&mut fa, root, false);
    ntt::<P>(&mut fb, root, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * *y % P;
    }
    ntt::<P>(&mut fa, root, true);
    fa.truncate(a.len() + b.len() - 1);
    fa
}

fn convolve_with(idx: usize, a: &[u64], b: &[u64], size: usize) -> Vec<u64> {
    let g = PRIMES[idx].1;
    match idx {
        0 => convolve::<2013265921>(a, b, g, size),
        1 => convolve::<1811939329>(a, b, g, size),
        2 => convolve::<998244353>(a, b, g, size),
        3 => convolve::<754974721>(a, b, g, size),
        4 => convolve::<469762049>(a, b, g, size),
        _ => convolve::<167772161>(a, b, g, size),
    }
}

fn primes_needed(m: u64, min_len: usize) -> usize {
    let bound_bits =
        2.0 * ((m - 1).max(1) as f64).log2() + (min_len as f64).log2() + 1.0;
    let mut bits = 0.0;
    for (k, &(p, _)) in PRIMES.iter().enumerate() {
        bits += (p as f64).log2();
        if bits > bound_bits + 0.5 {
            return k + 1;
        }
    }
    panic!("coefficient bound exceeds the NTT prime basis");
}

fn multimodular(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    assert!(
        size <= 1 << MAX_NTT_LOG,
        "product length {out_len} exceeds the NTT size limit"
    );
    let k = primes_needed(m, a.len().min(b.len()));
    let residues: Vec<Vec<u64>> = (0..k).map(|i| convolve_with(i, a, b, size)).collect();

    // Garner: inv[i][j] = P_j^{-1} mod P_i.
    let mut inv = vec![vec![0u64; k]; k];
    for i in 0..k {
        let pi = PRIMES[i].0;
        for j in 0..i {
            inv[i][j] = pow_mod(PRIMES[j].0 % pi, pi - 2, pi);
        }
    }
    let prime_mod_m: Vec<u64> = PRIMES[..k].iter().map(|&(p, _)| p % m).collect();
    let mut out = Vec::with_capacity(out_len);
    let mut digits = vec![0u64; k];
    for c in 0..out_len {
        for i in 0..k {
            let pi = PRIMES[i].0;
            let mut x = residues[i][c];
            for j in 0..i {
                let vj = digits[j] % pi;
                x = (x + pi - vj) % pi * inv[i][j] % pi;
            }
            digits[i] = x;
        }
        let mut acc = digits[k - 1] % m;
        for j in (0..k - 1).rev() {
            acc = add_mod(mul_mod(acc, prime_mod_m[j], m), digits[j] % m, m);
        }
        out.push(acc);
    }
    out
}
