//! Sparse Laurent polynomials in `q` with arbitrary-precision integer
//! coefficients.
//!
//! Invariant: the coefficient map never stores a zero, so `is_zero`,
//! `min_exp`, `max_exp` and equality are structural. Exponents are `i64`;
//! negative exponents are allowed (they arise transiently from substitutions
//! such as y -> t^4 q^-2 and are eliminated again by later multiplications).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Sparse Laurent polynomial in `q` over the integers.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn one() -> Self {
        QPoly::monomial(0, BigInt::one())
    }

    /// `c * q^exp`; storing nothing when `c` is zero.
    pub fn monomial(exp: i64, coeff: BigInt) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exp, coeff);
        }
        QPoly { coeffs }
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = QPoly::zero();
        for &(e, c) in pairs {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff_ref(0).map_or(false, |c| c.is_one())
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    fn coeff_ref(&self, exp: i64) -> Option<&BigInt> {
        self.coeffs.get(&exp)
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, exp: i64, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exp).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn add_assign(&mut self, other: &QPoly) {
        for (e, c) in other.iter() {
            self.add_term(e, c);
        }
    }

    pub fn sub_assign(&mut self, other: &QPoly) {
        for (e, c) in other.iter() {
            self.add_term(e, &(-c));
        }
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let mut out = self.clone();
        out.sub_assign(other);
        out
    }

    pub fn neg(&self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    /// Product, discarding terms with exponent >= `cut` when a cut is given.
    pub fn mul_trunc(&self, other: &QPoly, cut: Option<i64>) -> QPoly {
        let mut out = QPoly::zero();
        if self.is_zero() || other.is_zero() {
            return out;
        }
        // Iterate over the smaller operand on the outside.
        let (small, large) = if self.term_count() <= other.term_count() {
            (self, other)
        } else {
            (other, self)
        };
        for (e1, c1) in small.iter() {
            for (e2, c2) in large.iter() {
                let e = e1 + e2;
                if cut.map_or(true, |w| e < w) {
                    out.add_term(e, &(c1 * c2));
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        self.mul_trunc(other, None)
    }

    /// Multiply by `sign * q^exp` in place.
    pub fn mul_monomial(&mut self, exp: i64, negate: bool) {
        let coeffs = std::mem::take(&mut self.coeffs);
        self.coeffs = coeffs
            .into_iter()
            .map(|(e, c)| (e + exp, if negate { -c } else { c }))
            .collect();
    }

    /// Scale every coefficient by an integer.
    pub fn scale(&mut self, k: &BigInt) {
        if k.is_zero() {
            self.coeffs.clear();
            return;
        }
        for c in self.coeffs.values_mut() {
            *c *= k;
        }
    }

    /// Remove terms with exponent >= `cut`.
    pub fn truncate_at(&mut self, cut: i64) {
        self.coeffs = std::mem::take(&mut self.coeffs)
            .into_iter()
            .filter(|(e, _)| *e < cut)
            .collect();
    }

    /// Sum of all coefficients, i.e. the value at q = 1.
    pub fn eval_one(&self) -> BigInt {
        let mut s = BigInt::zero();
        for c in self.coeffs.values() {
            s += c;
        }
        s
    }

    /// `Some((exp, negate))` when the polynomial is a single term with
    /// coefficient +1 (negate = false) or -1 (negate = true).
    pub fn as_unit_monomial(&self) -> Option<(i64, bool)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (e, c) = self.coeffs.iter().next().unwrap();
        if c.is_one() {
            Some((*e, false))
        } else if (-c).is_one() {
            Some((*e, true))
        } else {
            None
        }
    }

    /// True when every coefficient is >= 0.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// True when every coefficient is divisible by `k`.
    pub fn divisible_by(&self, k: &BigInt) -> bool {
        self.coeffs.values().all(|c| (c % k).is_zero())
    }

    /// Divide every coefficient by `k`; the caller must have established
    /// divisibility (checked here with a panic as a last line of defence).
    pub fn divide_scalar(&mut self, k: &BigInt) {
        for c in self.coeffs.values_mut() {
            let (d, r) = num_integer::Integer::div_rem(&*c, k);
            assert!(r.is_zero(), "scalar division must be exact");
            *c = d;
        }
    }
}

/// Canonical text form: terms in descending exponent order joined by `+`
/// (or `-` for negative coefficients), no spaces, unit coefficients omitted,
/// exponent 1 written as `q`, exponent 0 as the bare coefficient.
/// The zero polynomial prints as `0`.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if c.is_negative() {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let mag = c.abs();
            let unit = mag.is_one();
            if !unit || *e == 0 {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_terms_are_never_stored() {
        let mut p = QPoly::from_pairs(&[(3, 5), (1, 2)]);
        p.add_term(3, &BigInt::from(-5));
        assert_eq!(p, QPoly::from_pairs(&[(1, 2)]));
        assert_eq!(p.term_count(), 1);
        assert!(QPoly::monomial(7, BigInt::zero()).is_zero());
    }

    #[test]
    fn product_with_truncation_drops_high_terms() {
        let a = QPoly::from_pairs(&[(0, 1), (1, 1)]);
        let b = QPoly::from_pairs(&[(0, 1), (1, 1), (2, 1)]);
        let full = a.mul(&b);
        assert_eq!(full, QPoly::from_pairs(&[(0, 1), (1, 2), (2, 2), (3, 1)]));
        let cut = a.mul_trunc(&b, Some(2));
        assert_eq!(cut, QPoly::from_pairs(&[(0, 1), (1, 2)]));
    }

    #[test]
    fn display_is_canonical() {
        let p = QPoly::from_pairs(&[(9, 1), (8, 2), (7, 1), (6, 2), (5, 4)]);
        assert_eq!(p.to_string(), "q^9+2q^8+q^7+2q^6+4q^5");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::one().to_string(), "1");
        assert_eq!(QPoly::from_pairs(&[(1, 1)]).to_string(), "q");
        assert_eq!(QPoly::from_pairs(&[(0, 7)]).to_string(), "7");
        assert_eq!(QPoly::from_pairs(&[(2, 1), (1, -1)]).to_string(), "q^2-q");
        assert_eq!(QPoly::from_pairs(&[(2, -1)]).to_string(), "-q^2");
        assert_eq!(QPoly::from_pairs(&[(-2, 3)]).to_string(), "3q^-2");
    }

    #[test]
    fn eval_one_sums_coefficients() {
        let p = QPoly::from_pairs(&[(6, 2), (4, 4)]);
        assert_eq!(p.eval_one(), BigInt::from(6));
    }

    #[test]
    fn unit_monomial_detection() {
        assert_eq!(QPoly::one().as_unit_monomial(), Some((0, false)));
        assert_eq!(
            QPoly::from_pairs(&[(3, -1)]).as_unit_monomial(),
            Some((3, true))
        );
        assert_eq!(QPoly::from_pairs(&[(3, 2)]).as_unit_monomial(), None);
        assert_eq!(QPoly::from_pairs(&[(0, 1), (1, 1)]).as_unit_monomial(), None);
    }
}
