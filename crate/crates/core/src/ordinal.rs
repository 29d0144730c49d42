//! Polynomials over ℕ in the indeterminate ω, ordered lexicographically with
//! priority to the higher powers. These are the complexity values attached to
//! evaluation states; the order type is ω^ω.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

/// An element of ℕ[ω], stored little-endian: `coeffs[j]` is the coefficient
/// of ω^j. The last stored coefficient is always nonzero, so zero is the
/// empty vector and structural equality coincides with `Ordering::Equal`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrdPoly {
    coeffs: Vec<BigUint>,
}

impl OrdPoly {
    pub fn zero() -> Self {
        OrdPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_nat(1u32)
    }

    /// ω itself.
    pub fn omega() -> Self {
        Self::from_coeffs([0u32, 1])
    }

    pub fn from_nat(n: impl Into<BigUint>) -> Self {
        Self::from_coeffs([n.into()])
    }

    /// Builds a polynomial from little-endian coefficients, trimming trailing zeros.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigUint>,
    {
        let mut p = OrdPoly { coeffs: coeffs.into_iter().map(Into::into).collect() };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Coefficient of ω^j (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> BigUint {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &OrdPoly) -> OrdPoly {
        let (long, short) = if self.coeffs.len() >= other.coeffs.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        // no trailing zero can appear: the longer operand's top coefficient survives
        OrdPoly { coeffs }
    }

    /// Coefficientwise truncated subtraction.
    pub fn trunc_sub(&self, other: &OrdPoly) -> OrdPoly {
        let coeffs = self.coeffs.iter().enumerate().map(|(j, a)| match other.coeffs.get(j) {
            Some(b) if b >= a => BigUint::zero(),
            Some(b) => a - b,
            None => a.clone(),
        });
        OrdPoly::from_coeffs(coeffs)
    }

    /// Multiplication by ω: every coefficient moves up one degree.
    pub fn mul_omega(&self) -> OrdPoly {
        if self.is_zero() {
            return OrdPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigUint::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        OrdPoly { coeffs }
    }

    /// Scalar multiplication by a natural number.
    pub fn nat_mul(&self, k: &BigUint) -> OrdPoly {
        if k.is_zero() {
            return OrdPoly::zero();
        }
        OrdPoly { coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Adds one to the constant coefficient.
    pub fn succ(&self) -> OrdPoly {
        self.add(&OrdPoly::one())
    }
}

impl Ord for OrdPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for OrdPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for OrdPoly {
    fn from(n: u64) -> Self {
        OrdPoly::from_nat(n)
    }
}

impl fmt::Display for OrdPoly {
    /// Little-endian coefficient list, `[0,2]` for 2ω; zero prints as `[0]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("[0]");
        }
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(cs: &[u64]) -> OrdPoly {
        OrdPoly::from_coeffs(cs.iter().copied())
    }

    #[test]
    fn compare_examples() {
        assert_eq!(OrdPoly::zero().cmp(&OrdPoly::zero()), Ordering::Equal);
        assert_eq!(p(&[0, 1]).cmp(&p(&[5])), Ordering::Greater);
        assert_eq!(p(&[0, 2]).cmp(&p(&[7, 1])), Ordering::Greater);
        assert_eq!(p(&[3, 2]).cmp(&p(&[5, 2])), Ordering::Less);
    }

    #[test]
    fn add_examples() {
        let q = p(&[4, 0, 9]);
        assert_eq!(OrdPoly::zero().add(&q), q);
        assert_eq!(p(&[0, 1]).add(&p(&[1])), p(&[1, 1]));
        assert_eq!(p(&[2, 3]).add(&p(&[5, 1])), p(&[7, 4]));
    }

    #[test]
    fn trunc_sub_examples() {
        let q = p(&[4, 0, 9]);
        assert_eq!(q.trunc_sub(&OrdPoly::zero()), q);
        assert_eq!(p(&[5, 1]).trunc_sub(&p(&[3, 2])), p(&[2]));
        assert_eq!(OrdPoly::zero().trunc_sub(&p(&[0, 1])), OrdPoly::zero());
        // cancelling the top coefficient must renormalize
        assert_eq!(p(&[1, 1]).trunc_sub(&p(&[0, 1])).degree(), Some(0));
    }

    #[test]
    fn mul_omega_examples() {
        assert_eq!(OrdPoly::zero().mul_omega(), OrdPoly::zero());
        assert_eq!(p(&[2, 3]).mul_omega(), p(&[0, 2, 3]));
        assert_eq!(OrdPoly::one().mul_omega(), OrdPoly::omega());
    }

    #[test]
    fn nat_mul_examples() {
        let q = p(&[2, 1]);
        assert_eq!(q.nat_mul(&BigUint::zero()), OrdPoly::zero());
        assert_eq!(q.nat_mul(&BigUint::from(3u32)), p(&[6, 3]));
        assert_eq!(q.nat_mul(&BigUint::one()), q);
    }

    #[test]
    fn normalization_on_construction() {
        assert_eq!(p(&[0, 0, 0]), OrdPoly::zero());
        assert_eq!(p(&[1, 2, 0]).coeffs().len(), 2);
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn display_is_little_endian() {
        assert_eq!(p(&[0, 2]).to_string(), "[0,2]");
        assert_eq!(OrdPoly::zero().to_string(), "[0]");
        assert_eq!(p(&[7, 4]).to_string(), "[7,4]");
    }

    #[test]
    fn coefficients_do_not_overflow() {
        let big = BigUint::from(u64::MAX);
        let q = OrdPoly::from_nat(big.clone()).add(&OrdPoly::from_nat(big.clone()));
        assert_eq!(q.coeff(0), big * 2u32);
    }
}
