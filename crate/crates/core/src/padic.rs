//! Fixed-point arithmetic in `O_K / p^M O_K` for an unramified extension
//! `K / Q_p` of degree `d`.
//!
//! An element is stored as `d` residues modulo `p^M`, the coordinates in the
//! power basis `1, x, ..., x^{d-1}` of `Z_p[x] / (F)` where `F` is the
//! context modulus (monic, irreducible mod p). For `d = 1` this is just
//! `Z / p^M Z`.
//!
//! Values carry no back-pointer to their context: every operation takes the
//! context explicitly and validates that its operands fit it.

use std::fmt;
use std::sync::Arc;

use rand::Rng;

use crate::error::{Error, Result};
use crate::ntt::{add_mod, mul_mod, pow_mod, sub_mod, MAX_MODULUS};

/// Shared handle to a precision context.
pub type Ctx = Arc<PrecisionContext>;

/// Prime, working digits, and (for `d > 1`) the defining modulus.
#[derive(Clone, PartialEq, Eq)]
pub struct PrecisionContext {
    p: u64,
    digits: u32,
    degree: usize,
    /// Monic modulus, `degree + 1` coefficients from low to high. Empty when
    /// `degree == 1`.
    modulus: Vec<u64>,
    pm: u64,
}

impl fmt::Debug for PrecisionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O_K/{}^{}", self.p, self.digits)?;
        if self.degree > 1 {
            write!(f, " [d={}, modulus={:?}]", self.degree, self.modulus)?;
        }
        Ok(())
    }
}

/// Element of `O_K / p^M O_K`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FixedPointElem {
    coeffs: Vec<u64>,
}

impl fmt::Debug for FixedPointElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

impl FixedPointElem {
    /// Power-basis coordinates.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// The single residue of a degree-one element.
    pub fn value(&self) -> u64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub(crate) fn from_raw(coeffs: Vec<u64>) -> Self {
        FixedPointElem { coeffs }
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub(crate) fn int_valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `floor(log_p(n))` for `n >= 1`.
pub fn floor_log(p: u64, n: u64) -> u32 {
    let mut k = 0;
    let mut q = p as u128;
    while q <= n as u128 {
        q *= p as u128;
        k += 1;
    }
    k
}

impl PrecisionContext {
    /// `Z / p^M Z`.
    pub fn new(p: u64, digits: u32) -> Result<Ctx> {
        Self::build(p, digits, Vec::new())
    }

    /// `Z_p[x]/(F) / p^M` with `F` monic and irreducible mod p. Coefficients
    /// are given from low to high degree and must include the leading one.
    pub fn with_modulus(p: u64, digits: u32, modulus: &[u64]) -> Result<Ctx> {
        if modulus.len() < 2 {
            return Err(Error::InvalidContext("modulus must have degree >= 1".into()));
        }
        if modulus.len() == 2 {
            return Self::build(p, digits, Vec::new());
        }
        Self::build(p, digits, modulus.to_vec())
    }

    /// Unramified extension of degree `degree`, defined by the first monic
    /// irreducible polynomial mod p in lexicographic order of coefficients.
    pub fn unramified(p: u64, digits: u32, degree: usize) -> Result<Ctx> {
        if degree <= 1 {
            return Self::new(p, digits);
        }
        Self::with_modulus(p, digits, &find_irreducible(p, degree))
    }

    fn build(p: u64, digits: u32, modulus: Vec<u64>) -> Result<Ctx> {
        if p == 2 || !is_prime(p) {
            return Err(Error::InvalidContext(format!("{p} is not an odd prime")));
        }
        if digits == 0 {
            return Err(Error::InvalidContext("M must be at least 1".into()));
        }
        let mut pm: u128 = 1;
        for _ in 0..digits {
            pm *= p as u128;
            if pm >= MAX_MODULUS as u128 {
                return Err(Error::InvalidContext(format!(
                    "{p}^{digits} does not fit the 62-bit fixed-point word"
                )));
            }
        }
        let pm = pm as u64;
        let degree = modulus.len().max(2) - 1;
        let modulus: Vec<u64> = modulus.iter().map(|&c| c % pm).collect();
        if degree > 1 {
            if modulus[degree] != 1 {
                return Err(Error::InvalidContext("modulus must be monic".into()));
            }
            let reduced: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
            if !fp::is_irreducible(&reduced, p) {
                return Err(Error::InvalidContext(
                    "modulus is not irreducible mod p".into(),
                ));
            }
        }
        Ok(Arc::new(PrecisionContext { p, digits, degree, modulus, pm }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Working digits `M`.
    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Extension degree `d`.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// The modulus `F` (empty for `d = 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^M`.
    pub fn pm(&self) -> u64 {
        self.pm
    }

    /// Residue field size `q = p^d` (as u128; may exceed 64 bits).
    pub fn residue_size(&self) -> u128 {
        (self.p as u128).pow(self.degree as u32)
    }

    /// Same prime and modulus with a different number of digits.
    pub fn with_digits(&self, digits: u32) -> Result<Ctx> {
        Self::build(self.p, digits, self.modulus.clone())
    }

    /// The residue field `O_K / p`.
    pub fn residue_field(&self) -> Ctx {
        Self::build(self.p, 1, self.modulus.iter().map(|c| c % self.p).collect())
            .expect("residue field of a valid context")
    }

    /// Two contexts describe the same ring.
    pub fn same_ring(&self, other: &PrecisionContext) -> bool {
        self == other
    }

    /// Same prime and modulus (mod p); digits may differ.
    pub fn compatible(&self, other: &PrecisionContext) -> bool {
        self.p == other.p
            && self.degree == other.degree
            && self
                .modulus
                .iter()
                .zip(&other.modulus)
                .all(|(a, b)| a % self.p == b % self.p)
    }

    // ----- construction -------------------------------------------------

    pub fn zero(&self) -> FixedPointElem {
        FixedPointElem { coeffs: vec![0; self.degree] }
    }

    pub fn one(&self) -> FixedPointElem {
        self.from_u64(1)
    }

    /// Embeds an integer (reduced mod p^M) as a constant.
    pub fn from_u64(&self, v: u64) -> FixedPointElem {
        let mut coeffs = vec![0; self.degree];
        coeffs[0] = v % self.pm;
        FixedPointElem { coeffs }
    }

    pub fn from_i64(&self, v: i64) -> FixedPointElem {
        let r = (v as i128).rem_euclid(self.pm as i128) as u64;
        self.from_u64(r)
    }

    /// Builds an element from its `d` power-basis coordinates.
    pub fn from_coeffs(&self, coeffs: Vec<u64>) -> Result<FixedPointElem> {
        let e = FixedPointElem { coeffs };
        self.check(&e)?;
        Ok(e)
    }

    /// Reduces arbitrary coordinates mod p^M (missing ones are zero).
    pub fn from_coeffs_reduced(&self, coeffs: &[u64]) -> Result<FixedPointElem> {
        if coeffs.len() > self.degree {
            return Err(Error::ContextMismatch);
        }
        let mut c = vec![0; self.degree];
        for (d, s) in c.iter_mut().zip(coeffs) {
            *d = s % self.pm;
        }
        Ok(FixedPointElem { coeffs: c })
    }

    /// The class of `x` (the power-basis generator).
    pub fn generator(&self) -> FixedPointElem {
        let mut e = self.zero();
        if self.degree > 1 {
            e.coeffs[1] = 1;
        } else {
            // x is the root of the linear modulus; for d = 1 there is none.
            e.coeffs[0] = 0;
        }
        e
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FixedPointElem {
        FixedPointElem {
            coeffs: (0..self.degree).map(|_| rng.gen_range(0..self.pm)).collect(),
        }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> FixedPointElem {
        loop {
            let e = self.random(rng);
            if self.is_unit(&e) {
                return e;
            }
        }
    }

    pub(crate) fn check(&self, a: &FixedPointElem) -> Result<()> {
        if a.coeffs.len() != self.degree || a.coeffs.iter().any(|&c| c >= self.pm) {
            return Err(Error::ContextMismatch);
        }
        Ok(())
    }

    // ----- ring operations ------------------------------------------------

    pub fn add(&self, a: &FixedPointElem, b: &FixedPointElem) -> Result<FixedPointElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_unchecked(a, b))
    }

    pub fn sub(&self, a: &FixedPointElem, b: &FixedPointElem) -> Result<FixedPointElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.sub_unchecked(a, b))
    }

    pub fn mul(&self, a: &FixedPointElem, b: &FixedPointElem) -> Result<FixedPointElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub fn neg(&self, a: &FixedPointElem) -> FixedPointElem {
        FixedPointElem {
            coeffs: a.coeffs.iter().map(|&c| sub_mod(0, c, self.pm)).collect(),
        }
    }

    pub(crate) fn add_unchecked(&self, a: &FixedPointElem, b: &FixedPointElem) -> FixedPointElem {
        FixedPointElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| add_mod(x, y, self.pm))
                .collect(),
        }
    }

    pub(crate) fn sub_unchecked(&self, a: &FixedPointElem, b: &FixedPointElem) -> FixedPointElem {
        FixedPointElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| sub_mod(x, y, self.pm))
                .collect(),
        }
    }

    pub(crate) fn mul_unchecked(&self, a: &FixedPointElem, b: &FixedPointElem) -> FixedPointElem {
        let mut out = vec![0; self.degree];
        self.mul_words(&a.coeffs, &b.coeffs, &mut out);
        FixedPointElem { coeffs: out }
    }

    /// Multiplies by an integer.
    pub fn scale(&self, a: &FixedPointElem, k: u64) -> FixedPointElem {
        let k = k % self.pm;
        FixedPointElem {
            coeffs: a.coeffs.iter().map(|&c| mul_mod(c, k, self.pm)).collect(),
        }
    }

    pub fn pow(&self, a: &FixedPointElem, mut e: u128) -> FixedPointElem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_unchecked(&r, &b);
            }
            b = self.mul_unchecked(&b, &b);
            e >>= 1;
        }
        r
    }

    /// Product of two elements given as `d`-word slices.
    pub(crate) fn mul_words(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let m = self.pm;
        if self.degree == 1 {
            out[0] = mul_mod(a[0], b[0], m);
            return;
        }
        let d = self.degree;
        let mut wide = vec![0u64; 2 * d - 1];
        for i in 0..d {
            if a[i] == 0 {
                continue;
            }
            for j in 0..d {
                wide[i + j] = add_mod(wide[i + j], mul_mod(a[i], b[j], m), m);
            }
        }
        self.reduce_wide(&mut wide);
        out.copy_from_slice(&wide[..d]);
    }

    /// Reduces a polynomial in the generator (length up to `2d - 1`) modulo
    /// the context modulus, in place; the result sits in the first `d` words.
    pub(crate) fn reduce_wide(&self, wide: &mut [u64]) {
        let d = self.degree;
        if d == 1 {
            return;
        }
        let m = self.pm;
        for k in (d..wide.len()).rev() {
            let c = wide[k];
            if c == 0 {
                continue;
            }
            wide[k] = 0;
            for i in 0..d {
                let t = mul_mod(c, self.modulus[i], m);
                wide[k - d + i] = sub_mod(wide[k - d + i], t, m);
            }
        }
    }

    // ----- valuation and units ------------------------------------------

    /// Minimum p-adic valuation of the coordinates; `None` for zero.
    pub fn valuation(&self, a: &FixedPointElem) -> Option<u32> {
        a.coeffs
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| int_valuation(c, self.p))
            .min()
    }

    pub fn is_unit(&self, a: &FixedPointElem) -> bool {
        a.coeffs.iter().any(|&c| c % self.p != 0)
    }

    /// Reduction into the residue field.
    pub fn residue(&self, a: &FixedPointElem) -> FixedPointElem {
        FixedPointElem { coeffs: a.coeffs.iter().map(|&c| c % self.p).collect() }
    }

    /// Reinterprets `a` in `other`, which must share p and the modulus;
    /// reduces when `other` has fewer digits, pads with zero digits otherwise.
    pub fn convert(&self, a: &FixedPointElem, other: &PrecisionContext) -> Result<FixedPointElem> {
        if !self.compatible(other) {
            return Err(Error::ContextMismatch);
        }
        Ok(FixedPointElem { coeffs: a.coeffs.iter().map(|&c| c % other.pm).collect() })
    }

    /// Multiplicative inverse: inverse in the residue field, then Newton
    /// lifting `y <- y (2 - a y)`.
    pub fn inv(&self, a: &FixedPointElem) -> Result<FixedPointElem> {
        self.check(a)?;
        if !self.is_unit(a) {
            return Err(Error::NotUnit);
        }
        let p = self.p;
        let seed = if self.degree == 1 {
            vec![pow_mod(a.coeffs[0] % p, p - 2, p)]
        } else {
            let red: Vec<u64> = a.coeffs.iter().map(|&c| c % p).collect();
            let modp: Vec<u64> = self.modulus.iter().map(|&c| c % p).collect();
            let mut inv = fp::inverse_mod(&red, &modp, p).ok_or(Error::NotUnit)?;
            inv.resize(self.degree, 0);
            inv
        };
        let mut y = FixedPointElem { coeffs: seed };
        let two = self.from_u64(2);
        let mut prec = 1;
        while prec < self.digits {
            let ay = self.mul_unchecked(a, &y);
            y = self.mul_unchecked(&y, &self.sub_unchecked(&two, &ay));
            prec *= 2;
        }
        Ok(y)
    }

    /// Euler's criterion in the residue field (zero counts as a square).
    pub fn residue_is_square(&self, a: &FixedPointElem) -> bool {
        let k = self.residue_field();
        let r = self.residue(a);
        if r.is_zero() {
            return true;
        }
        k.pow(&r, (k.residue_size() - 1) / 2) == k.one()
    }

    /// A square root in the residue field by Tonelli-Shanks, returned as a
    /// residue (coordinates < p). `None` for non-squares.
    pub fn residue_sqrt(&self, a: &FixedPointElem) -> Option<FixedPointElem> {
        let k = self.residue_field();
        let a = self.residue(a);
        if a.is_zero() {
            return Some(a);
        }
        if !self.residue_is_square(&a) {
            return None;
        }
        let q = k.residue_size();
        let s = (q - 1).trailing_zeros();
        let odd = (q - 1) >> s;
        // Find a non-residue by scanning small elements.
        let mut z = None;
        'search: for c1 in 0..k.p {
            for c0 in 0..k.p {
                let mut coeffs = vec![0; k.degree];
                coeffs[0] = c0;
                if k.degree > 1 {
                    coeffs[1] = c1;
                } else if c1 > 0 {
                    break 'search;
                }
                let cand = FixedPointElem { coeffs };
                if !cand.is_zero() && !k.residue_is_square(&cand) {
                    z = Some(cand);
                    break 'search;
                }
            }
        }
        let z = z.expect("residue field has a non-residue");
        let mut m = s;
        let mut c = k.pow(&z, odd);
        let mut t = k.pow(&a, odd);
        let mut r = k.pow(&a, (odd + 1) / 2);
        let one = k.one();
        while t != one {
            let mut i = 0;
            let mut tt = t.clone();
            while tt != one {
                tt = k.mul_unchecked(&tt, &tt);
                i += 1;
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = k.mul_unchecked(&b, &b);
            }
            m = i;
            c = k.mul_unchecked(&b, &b);
            t = k.mul_unchecked(&t, &c);
            r = k.mul_unchecked(&r, &b);
        }
        Some(r)
    }

    /// Hensel lift of a square root. `branch` selects the root: the result
    /// reduces to `branch` mod p.
    pub fn sqrt(&self, a: &FixedPointElem, branch: &FixedPointElem) -> Result<FixedPointElem> {
        self.check(a)?;
        let branch = self.from_coeffs_reduced(&branch.coeffs)?;
        if !self.is_unit(a) {
            return Err(Error::NotUnit);
        }
        if !self.residue_is_square(a) {
            return Err(Error::NoSquareRoot);
        }
        let k = self.residue_field();
        let b = self.residue(&branch);
        if k.mul_unchecked(&b, &b) != self.residue(a) {
            return Err(Error::BadBranch);
        }
        let half = self.inv(&self.from_u64(2))?;
        let mut y = b;
        let mut prec = 1;
        while prec < self.digits {
            let ya = self.mul_unchecked(a, &self.inv(&y)?);
            y = self.mul_unchecked(&self.add_unchecked(&y, &ya), &half);
            prec *= 2;
        }
        Ok(y)
    }

    /// Exact division by `p^e`. The quotient is only meaningful mod
    /// `p^{M-e}`; the returned loss is `e`.
    pub fn divide_by_p_power(&self, a: &FixedPointElem, e: u32) -> Result<(FixedPointElem, u32)> {
        self.check(a)?;
        if e == 0 {
            return Ok((a.clone(), 0));
        }
        if e > self.digits {
            return Err(Error::NonIntegral(e));
        }
        let pe = self.p.pow(e);
        if a.coeffs.iter().any(|&c| c % pe != 0) {
            return Err(Error::NonIntegral(e));
        }
        Ok((FixedPointElem { coeffs: a.coeffs.iter().map(|&c| c / pe).collect() }, e))
    }
}

/// The first monic irreducible polynomial of the given degree over `F_p`,
/// scanning coefficient vectors in lexicographic order (low to high).
pub fn find_irreducible(p: u64, degree: usize) -> Vec<u64> {
    let mut low = vec![0u64; degree];
    loop {
        let mut cand = low.clone();
        cand.push(1);
        if cand[0] != 0 && fp::is_irreducible(&cand, p) {
            return cand;
        }
        for c in low.iter_mut() {
            *c += 1;
            if *c < p {
                break;
            }
            *c = 0;
        }
    }
}

/// Dense polynomial helpers over the prime field `F_p`.
pub(crate) mod fp {
    use crate::ntt::{add_mod, mul_mod, pow_mod, sub_mod};

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
            }
        }
        out
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut m = m.to_vec();
        trim(&mut m);
        let dm = m.len() - 1;
        let inv_lc = pow_mod(m[dm], p - 2, p);
        while r.len() > dm {
            let k = r.len() - 1;
            let c = mul_mod(r[k], inv_lc, p);
            for i in 0..=dm {
                r[k - dm + i] = sub_mod(r[k - dm + i], mul_mod(c, m[i], p), p);
            }
            trim(&mut r);
        }
        r
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0; a.len().max(b.len())];
        for (i, o) in out.iter_mut().enumerate() {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            *o = sub_mod(x, y, p);
        }
        trim(&mut out);
        out
    }

    /// Returns `(g, s)` with `g = gcd(a, m)` monic and `s a = g mod m`.
    pub fn xgcd(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (m.to_vec(), rem(a, m, p));
        trim(&mut r0);
        let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let inv = pow_mod(*r0.last().unwrap(), p - 2, p);
        let g = r0.iter().map(|&c| mul_mod(c, inv, p)).collect();
        let s = s0.iter().map(|&c| mul_mod(c, inv, p)).collect();
        (g, s)
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        if r.len() <= db {
            return (Vec::new(), r);
        }
        let mut q = vec![0; r.len() - db];
        let inv_lc = pow_mod(b[db], p - 2, p);
        while r.len() > db {
            let k = r.len() - 1;
            let c = mul_mod(r[k], inv_lc, p);
            q[k - db] = c;
            for i in 0..=db {
                r[k - db + i] = sub_mod(r[k - db + i], mul_mod(c, b[i], p), p);
            }
            trim(&mut r);
        }
        (q, r)
    }

    /// Inverse of `a` modulo `m` when they are coprime.
    pub fn inverse_mod(a: &[u64], m: &[u64], p: u64) -> Option<Vec<u64>> {
        let (g, s) = xgcd(a, m, p);
        if g.len() == 1 {
            Some(rem(&s, m, p))
        } else {
            None
        }
    }

    fn powmod_x(e: u64, m: &[u64], p: u64, base: &[u64]) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = rem(base, m, p);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = rem(&mul(&r, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        r
    }

    /// Ben-Or irreducibility test.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let mut f = f.to_vec();
        trim(&mut f);
        let d = f.len() - 1;
        if d == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let mut h = rem(&x, &f, p);
        for _ in 1..=d / 2 {
            h = powmod_x(p, &f, p, &h);
            let diff = sub(&h, &x, p);
            if diff.is_empty() {
                return false;
            }
            let (g, _) = xgcd(&diff, &f, p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn e(ctx: &Ctx, v: u64) -> FixedPointElem {
        ctx.from_u64(v)
    }

    #[test]
    fn arith_examples() {
        let c = PrecisionContext::new(3, 4).unwrap();
        assert_eq!(c.add(&e(&c, 40), &e(&c, 41)).unwrap(), e(&c, 0));
        assert_eq!(c.mul(&e(&c, 2), &e(&c, 41)).unwrap(), e(&c, 1));
        let c2 = PrecisionContext::with_modulus(7, 2, &[1, 0, 1]).unwrap();
        let z = c2.generator();
        assert_eq!(c2.mul(&z, &z).unwrap().coeffs(), &[48, 0]);
    }

    #[test]
    fn context_mismatch() {
        let c = PrecisionContext::new(3, 4).unwrap();
        let c2 = PrecisionContext::with_modulus(7, 2, &[1, 0, 1]).unwrap();
        assert_eq!(c.add(&c2.one(), &c.one()), Err(Error::ContextMismatch));
        assert_eq!(c.mul(&FixedPointElem::from_raw(vec![81]), &c.one()), Err(Error::ContextMismatch));
    }

    #[test]
    fn inv_examples() {
        let c = PrecisionContext::new(3, 4).unwrap();
        assert_eq!(c.inv(&e(&c, 2)).unwrap(), e(&c, 41));
        assert_eq!(c.inv(&e(&c, 1)).unwrap(), e(&c, 1));
        assert_eq!(c.inv(&e(&c, 3)), Err(Error::NotUnit));
    }

    #[test]
    fn sqrt_examples() {
        let c = PrecisionContext::new(7, 2).unwrap();
        assert_eq!(c.sqrt(&e(&c, 4), &e(&c, 2)).unwrap(), e(&c, 2));
        // Exhaustive oracle: the unique residue mod 49 squaring to 2 and
        // reducing to 3 mod 7.
        let roots: Vec<u64> = (0..49).filter(|x| x * x % 49 == 2 && x % 7 == 3).collect();
        assert_eq!(roots, vec![10]);
        assert_eq!(c.sqrt(&e(&c, 2), &e(&c, 3)).unwrap(), e(&c, 10));
        let c1 = PrecisionContext::new(7, 1).unwrap();
        assert_eq!(c1.sqrt(&e(&c1, 3), &e(&c1, 1)), Err(Error::NoSquareRoot));
        assert_eq!(c.sqrt(&e(&c, 2), &e(&c, 2)), Err(Error::BadBranch));
    }

    #[test]
    fn divide_examples() {
        let c = PrecisionContext::new(3, 3).unwrap();
        assert_eq!(c.divide_by_p_power(&e(&c, 9), 2).unwrap(), (e(&c, 1), 2));
        assert_eq!(c.divide_by_p_power(&e(&c, 5), 0).unwrap(), (e(&c, 5), 0));
        assert_eq!(c.divide_by_p_power(&e(&c, 1), 1), Err(Error::NonIntegral(1)));
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(PrecisionContext::new(2, 3).is_err());
        assert!(PrecisionContext::new(9, 3).is_err());
        assert!(PrecisionContext::new(3, 0).is_err());
        assert!(PrecisionContext::new(3, 60).is_err());
        // z^2 + 1 splits mod 5.
        assert!(PrecisionContext::with_modulus(5, 2, &[1, 0, 1]).is_err());
        assert!(PrecisionContext::with_modulus(7, 2, &[1, 0, 2]).is_err());
    }

    #[test]
    fn residue_sqrt_in_extension() {
        let c = PrecisionContext::with_modulus(5, 3, &[2, 0, 1]).unwrap(); // x^2 + 2
        let k = c.residue_field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let b = k.random(&mut rng);
            let a = k.mul(&b, &b).unwrap();
            let r = c.residue_sqrt(&a).unwrap();
            assert_eq!(k.mul(&r, &r).unwrap(), a);
            let lifted = c.sqrt(&c.from_coeffs(a.coeffs().to_vec()).unwrap(), &r);
            if !b.is_zero() {
                let y = lifted.unwrap();
                assert_eq!(c.residue(&y), r);
            }
        }
    }

    #[test]
    fn floor_log_values() {
        assert_eq!(floor_log(3, 128), 4);
        assert_eq!(floor_log(3, 81), 4);
        assert_eq!(floor_log(3, 80), 3);
        assert_eq!(floor_log(13, 1), 0);
    }

    fn contexts() -> Vec<Ctx> {
        vec![
            PrecisionContext::new(3, 9).unwrap(),
            PrecisionContext::new(101, 4).unwrap(),
            PrecisionContext::with_modulus(7, 5, &[1, 1, 0, 1]).unwrap(),
        ]
    }

    proptest! {
        #[test]
        fn unit_inverse(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for c in contexts() {
                let a = c.random_unit(&mut rng);
                let b = c.inv(&a).unwrap();
                prop_assert_eq!(c.mul(&a, &b).unwrap(), c.one());
            }
        }

        #[test]
        fn square_root_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for c in contexts() {
                let b = c.random_unit(&mut rng);
                let b2 = c.mul(&b, &b).unwrap();
                let r = c.sqrt(&b2, &c.residue(&b)).unwrap();
                prop_assert_eq!(c.mul(&r, &r).unwrap(), b2);
                prop_assert_eq!(r, b);
            }
        }

        #[test]
        fn ring_axioms(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for c in contexts() {
                let (a, b, d) = (c.random(&mut rng), c.random(&mut rng), c.random(&mut rng));
                let ab_c = c.mul(&c.mul(&a, &b).unwrap(), &d).unwrap();
                let a_bc = c.mul(&a, &c.mul(&b, &d).unwrap()).unwrap();
                prop_assert_eq!(ab_c, a_bc);
                let lhs = c.mul(&a, &c.add(&b, &d).unwrap()).unwrap();
                let rhs = c.add(&c.mul(&a, &b).unwrap(), &c.mul(&a, &d).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn fixed_point_consistency(seed in any::<u64>(), k in 1u32..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for c in contexts() {
                let wide = c.with_digits(c.digits() + k).unwrap();
                let a = wide.random_unit(&mut rng);
                let b = wide.random(&mut rng);
                let lhs = wide.mul(&wide.add(&a, &b).unwrap(), &wide.inv(&a).unwrap()).unwrap();
                let (na, nb) = (wide.convert(&a, &c).unwrap(), wide.convert(&b, &c).unwrap());
                let rhs = c.mul(&c.add(&na, &nb).unwrap(), &c.inv(&na).unwrap()).unwrap();
                prop_assert_eq!(wide.convert(&lhs, &c).unwrap(), rhs);
            }
        }
    }
}
