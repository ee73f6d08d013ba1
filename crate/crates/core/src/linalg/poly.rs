use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Polynomial with arbitrary-precision integer coefficients, lowest degree
/// first. The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// `Π (x - r)^m` over the given `(r, m)` pairs.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a (u64, usize)>) -> Self {
        let mut p = Self::one();
        for &(r, m) in roots {
            for _ in 0..m {
                p = p.mul_linear(&BigInt::from(r));
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Multiply by `(x - r)`.
    pub fn mul_linear(&self, r: &BigInt) -> Self {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * r;
        }
        Self::new(out)
    }

    /// Synthetic division by `(x - r)`: quotient and remainder `p(r)`.
    pub fn div_linear(&self, r: &BigInt) -> (Self, BigInt) {
        let Some(deg) = self.degree() else {
            return (self.clone(), BigInt::zero());
        };
        let mut quotient = vec![BigInt::zero(); deg];
        let mut carry = BigInt::zero();
        for k in (0..=deg).rev() {
            carry = carry * r + &self.coeffs[k];
            if k > 0 {
                quotient[k - 1] = carry.clone();
            }
        }
        (Self::new(quotient), carry)
    }

    /// Strip every integer root among `candidates` (tried in the given order,
    /// each repeatedly). Returns `(root, multiplicity)` pairs for roots found
    /// and the residual factor.
    pub fn split_integer_roots(
        &self,
        candidates: impl IntoIterator<Item = u64>,
    ) -> (Vec<(u64, usize)>, Self) {
        let mut rest = self.clone();
        let mut roots = Vec::new();
        for t in candidates {
            let r = BigInt::from(t);
            let mut m = 0;
            while !rest.is_constant() {
                let (q, rem) = rest.div_linear(&r);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            if m > 0 {
                roots.push((t, m));
            }
        }
        (roots, rest)
    }

    /// Number of sign changes in the coefficient sequence of `p(-x)`.
    /// Zero means `p` has no negative real roots (Descartes).
    pub fn negative_root_sign_changes(&self) -> usize {
        let signs: Vec<bool> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| c.is_positive() ^ (k % 2 == 1))
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            if k == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}
