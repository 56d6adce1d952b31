//! Quasipolynomials with modulus 2, stored as a base polynomial plus an
//! even-branch correction: f(q) = base(q) + a(q)·extra(q) where a(q) is 1
//! for even q and 0 for odd q.

use num_bigint::BigInt;

use super::poly::IntPoly;

/// Parity indicator: 1 when q is even, 0 when odd.
pub fn a_indicator(q: u64) -> u64 {
    u64::from(q % 2 == 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPoly {
    base: IntPoly,
    even_extra: IntPoly,
}

impl QuasiPoly {
    pub fn from_poly(base: IntPoly) -> QuasiPoly {
        QuasiPoly {
            base,
            even_extra: IntPoly::zero(),
        }
    }

    pub fn with_even_correction(base: IntPoly, even_extra: IntPoly) -> QuasiPoly {
        QuasiPoly { base, even_extra }
    }

    /// True when both residue branches agree.
    pub fn is_pure(&self) -> bool {
        self.even_extra.is_zero()
    }

    pub fn even_correction(&self) -> &IntPoly {
        &self.even_extra
    }

    /// Branch polynomial for the residue of q mod 2.
    pub fn branch(&self, residue: u64) -> IntPoly {
        if residue % 2 == 0 {
            &self.base + &self.even_extra
        } else {
            self.base.clone()
        }
    }

    pub fn eval(&self, q: u64) -> BigInt {
        let qi = BigInt::from(q);
        let mut v = self.base.eval(&qi);
        if a_indicator(q) == 1 {
            v += self.even_extra.eval(&qi);
        }
        v
    }

    pub fn eval_int(&self, q: i64) -> BigInt {
        let qi = BigInt::from(q);
        let mut v = self.base.eval(&qi);
        if q.rem_euclid(2) == 0 {
            v += self.even_extra.eval(&qi);
        }
        v
    }

    /// Degree of the higher-degree branch.
    pub fn degree(&self) -> Option<usize> {
        match (self.branch(0).degree(), self.branch(1).degree()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator() {
        assert_eq!(a_indicator(2), 1);
        assert_eq!(a_indicator(3), 0);
        assert_eq!(a_indicator(4), 1);
    }

    #[test]
    fn branch_selection() {
        let f = QuasiPoly::with_even_correction(
            IntPoly::from_i64(&[0, 1]),  // q
            IntPoly::from_i64(&[5]),     // +5 when even
        );
        assert_eq!(f.eval(3), BigInt::from(3));
        assert_eq!(f.eval(4), BigInt::from(9));
        assert!(!f.is_pure());
        assert_eq!(f.branch(1), IntPoly::from_i64(&[0, 1]));
        assert_eq!(f.branch(0), IntPoly::from_i64(&[5, 1]));
    }
}
