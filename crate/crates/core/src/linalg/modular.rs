//! Multi-modular exact arithmetic for integer matrices.
//!
//! The characteristic polynomial (and determinant) is computed modulo a set of
//! 62-bit primes with Montgomery arithmetic and lifted back to the integers by
//! Chinese remaindering. Enough primes are used that their product exceeds
//! twice a Hadamard-type bound on the absolute value of every coefficient, so
//! the symmetric lift is exact.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use super::matrix::Matrix;
use crate::error::Result;

const PRIME_BITS: u32 = 62;
const CACHED_PRIMES: usize = 256;

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn generate_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate = (1u64 << PRIME_BITS) - 1;
    while primes.len() < count {
        if is_prime_u64(candidate) {
            primes.push(candidate);
        }
        candidate -= 2;
    }
    primes
}

/// The `count` largest primes below `2^62`, in decreasing order.
pub fn primes(count: usize) -> Vec<u64> {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    if count <= CACHED_PRIMES {
        CACHE.get_or_init(|| generate_primes(CACHED_PRIMES))[..count].to_vec()
    } else {
        generate_primes(count)
    }
}

/// Arithmetic modulo an odd prime `p < 2^62` in Montgomery form (`R = 2^64`).
#[derive(Debug, Clone, Copy)]
pub struct MontgomeryField {
    p: u64,
    neg_inv: u64,
    r2: u64,
}

impl MontgomeryField {
    pub fn new(p: u64) -> Self {
        assert!(
            p % 2 == 1 && p < 1 << PRIME_BITS,
            "modulus must be odd and below 2^62"
        );
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        MontgomeryField {
            p,
            neg_inv: inv.wrapping_neg(),
            r2,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline(always)]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        let r = a.rem_euclid(self.p as i64) as u64;
        self.to_mont(r)
    }

    pub fn from_bigint(&self, a: &BigInt) -> u64 {
        let r = a.magnitude() % self.p;
        let r = r.to_u64().expect("residue below modulus");
        let r = if a.sign() == Sign::Minus && r != 0 {
            self.p - r
        } else {
            r
        };
        self.to_mont(r)
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element (Fermat).
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

/// Integer matrix entries prepared for repeated reduction.
enum Entries {
    Small(Vec<i64>),
    Big(Vec<BigInt>),
}

impl Entries {
    fn new(m: &Matrix<BigInt>) -> Self {
        let small: Option<Vec<i64>> = m.as_slice().iter().map(ToPrimitive::to_i64).collect();
        match small {
            Some(v) => Entries::Small(v),
            None => Entries::Big(m.as_slice().to_vec()),
        }
    }

    fn reduce(&self, f: &MontgomeryField) -> Vec<u64> {
        match self {
            Entries::Small(v) => v.iter().map(|&x| f.from_i64(x)).collect(),
            Entries::Big(v) => v.iter().map(|x| f.from_bigint(x)).collect(),
        }
    }
}

/// `Π (1 + ⌈‖row_i‖₂⌉)`: bounds the sum of absolute values of all
/// coefficients of `det(xI - m)`, since each coefficient is a signed sum of
/// principal minors and each minor obeys Hadamard's inequality.
pub fn char_poly_coefficient_bound(m: &Matrix<BigInt>) -> BigUint {
    row_norms(m).into_iter().map(|r| r + 1u32).product()
}

/// Hadamard's bound `Π ⌈‖row_i‖₂⌉` on `|det m|`.
pub fn hadamard_bound(m: &Matrix<BigInt>) -> BigUint {
    row_norms(m).into_iter().product()
}

fn row_norms(m: &Matrix<BigInt>) -> Vec<BigUint> {
    (0..m.rows())
        .map(|i| {
            let sq: BigUint = m.row(i).iter().map(|x| x.magnitude() * x.magnitude()).sum();
            let root = sq.sqrt();
            if &root * &root == sq {
                root
            } else {
                root + 1u32
            }
        })
        .collect()
}

/// Primes whose product exceeds `2 * bound + 1`.
fn primes_for_bound(bound: &BigUint) -> Vec<u64> {
    let target = bound * 2u32 + 1u32;
    let bits = target.bits();
    let mut count = (bits / (PRIME_BITS as u64 - 1) + 1) as usize;
    loop {
        let ps = primes(count);
        let product: BigUint = ps.iter().map(|&p| BigUint::from(p)).product();
        if product > target {
            return ps;
        }
        count += 1;
    }
}

/// Characteristic polynomial of an `n x n` matrix over `Z/p`, entries and
/// result in Montgomery form, lowest degree first.
fn char_poly_mod(mut h: Vec<u64>, n: usize, f: &MontgomeryField) -> Vec<u64> {
    // Hessenberg reduction by similarity transforms.
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| h[i * n + k] != 0) else {
            continue;
        };
        if p != k + 1 {
            for j in 0..n {
                h.swap(p * n + j, (k + 1) * n + j);
            }
            for i in 0..n {
                h.swap(i * n + p, i * n + k + 1);
            }
        }
        let pivot_inv = f.inv(h[(k + 1) * n + k]);
        for r in k + 2..n {
            let lead = h[r * n + k];
            if lead == 0 {
                continue;
            }
            let u = f.mul(lead, pivot_inv);
            let (upper, lower) = h.split_at_mut(r * n);
            let pivot_row = &upper[(k + 1) * n..(k + 2) * n];
            let row = &mut lower[..n];
            for j in k..n {
                row[j] = f.sub(row[j], f.mul(u, pivot_row[j]));
            }
            for i in 0..n {
                let v = f.mul(u, h[i * n + r]);
                h[i * n + k + 1] = f.add(h[i * n + k + 1], v);
            }
        }
    }

    let mut polys: Vec<Vec<u64>> = Vec::with_capacity(n + 1);
    polys.push(vec![f.one()]);
    for m in 0..n {
        let prev = &polys[m];
        let diag = h[m * n + m];
        let mut next = vec![0u64; m + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = f.add(next[d + 1], c);
            next[d] = f.sub(next[d], f.mul(diag, c));
        }
        let mut t = f.one();
        for i in (0..m).rev() {
            t = f.mul(t, h[(i + 1) * n + i]);
            if t == 0 {
                break;
            }
            let scale = f.mul(h[i * n + m], t);
            if scale == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = f.sub(next[d], f.mul(scale, c));
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// Determinant over `Z/p` by Gaussian elimination, entries in Montgomery form.
fn det_mod(mut a: Vec<u64>, n: usize, f: &MontgomeryField) -> u64 {
    let mut det = f.one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return 0;
        };
        if p != k {
            for j in 0..n {
                a.swap(p * n + j, k * n + j);
            }
            det = f.sub(0, det);
        }
        let pivot = a[k * n + k];
        det = f.mul(det, pivot);
        let pivot_inv = f.inv(pivot);
        for r in k + 1..n {
            let lead = a[r * n + k];
            if lead == 0 {
                continue;
            }
            let u = f.mul(lead, pivot_inv);
            let (upper, lower) = a.split_at_mut(r * n);
            let pivot_row = &upper[k * n..(k + 1) * n];
            let row = &mut lower[..n];
            for j in k..n {
                row[j] = f.sub(row[j], f.mul(u, pivot_row[j]));
            }
        }
    }
    det
}

/// Chinese remaindering of residue vectors into symmetric-range integers.
fn crt_symmetric(primes: &[u64], residues: &[Vec<u64>]) -> Vec<BigInt> {
    let len = residues.first().map_or(0, Vec::len);
    let mut values = vec![BigUint::zero(); len];
    let mut modulus = BigUint::one();
    for (&p, res) in primes.iter().zip(residues) {
        let m_mod = (&modulus % p).to_u64().expect("residue below modulus");
        let f = MontgomeryField::new(p);
        let m_inv = f.inv(f.to_mont(m_mod));
        for (x, &r) in values.iter_mut().zip(res) {
            let x_mod = (&*x % p).to_u64().expect("residue below modulus");
            let diff = f.sub(f.to_mont(r), f.to_mont(x_mod));
            let t = f.from_mont(f.mul(diff, m_inv));
            *x += &modulus * t;
        }
        modulus *= p;
    }
    let half = &modulus >> 1;
    values
        .into_iter()
        .map(|x| {
            if x > half {
                BigInt::from(x) - BigInt::from(modulus.clone())
            } else {
                BigInt::from(x)
            }
        })
        .collect()
}

/// Exact coefficients of `det(xI - m)`, lowest degree first.
pub fn char_poly_multimodular(m: &Matrix<BigInt>) -> Result<Vec<BigInt>> {
    let n = m.ensure_square()?;
    let ps = primes_for_bound(&char_poly_coefficient_bound(m));
    let entries = Entries::new(m);
    let residues: Vec<Vec<u64>> = ps
        .par_iter()
        .map(|&p| {
            let f = MontgomeryField::new(p);
            char_poly_mod(entries.reduce(&f), n, &f)
                .into_iter()
                .map(|c| f.from_mont(c))
                .collect()
        })
        .collect();
    Ok(crt_symmetric(&ps, &residues))
}

/// Exact determinant by the multi-modular route.
pub fn determinant_multimodular(m: &Matrix<BigInt>) -> Result<BigInt> {
    let n = m.ensure_square()?;
    let ps = primes_for_bound(&hadamard_bound(m));
    let entries = Entries::new(m);
    let residues: Vec<Vec<u64>> = ps
        .par_iter()
        .map(|&p| {
            let f = MontgomeryField::new(p);
            vec![f.from_mont(det_mod(entries.reduce(&f), n, &f))]
        })
        .collect();
    Ok(crt_symmetric(&ps, &residues).pop().expect("one value"))
}
