//! GF(q) arithmetic over precomputed lookup tables.
//!
//! Elements are indices `0..q` encoding polynomial coefficient vectors over
//! GF(p) in base p (index 0 is the zero element, index 1 the one element,
//! indices below p form the prime subfield). All four operations are table
//! lookups; the search kernels call these in inner loops, so construction
//! pays the full O(q^2) table cost once and queries stay constant-time.
//!
//! The reducing polynomial is chosen deterministically: the monic irreducible
//! polynomial of degree d whose coefficient vector, read as a base-p integer
//! (constant term least significant), is smallest. Counts in this crate are
//! basis-independent, so the choice only matters for reproducibility of
//! reports.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest field order constructed without an explicit override.
pub const DEFAULT_MAX_ORDER: usize = 16;

/// Hard ceiling: element indices are stored as `u8`.
pub const ORDER_LIMIT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    /// Characteristic is not a prime number.
    NotPrime(u32),
    /// Extension degree must be at least 1.
    BadDegree(u32),
    /// p^d exceeds the configured bound.
    OrderTooLarge { q: usize, max: usize },
    /// Multiplicative inverse of zero requested.
    ZeroInverse,
    /// An exhaustive table check failed (indicates a construction bug).
    Invariant(&'static str),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{} is not prime", p),
            FieldError::BadDegree(d) => write!(f, "extension degree {} is invalid", d),
            FieldError::OrderTooLarge { q, max } => {
                write!(f, "field order {} exceeds the configured bound {}", q, max)
            }
            FieldError::ZeroInverse => write!(f, "zero has no multiplicative inverse"),
            FieldError::Invariant(msg) => write!(f, "field table invariant failed: {}", msg),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for FieldError {}

/// A finite field GF(p^d) with full arithmetic tables.
#[derive(Debug, Clone)]
pub struct Field {
    p: u32,
    d: u32,
    q: usize,
    /// Monic reducing polynomial, constant term first, length d+1.
    modulus: Vec<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl Field {
    /// Builds GF(p^d) with the default order bound.
    pub fn new(p: u32, d: u32) -> Result<Field, FieldError> {
        Field::with_max_order(p, d, DEFAULT_MAX_ORDER)
    }

    /// Builds GF(p^d) allowing orders up to `max_order` (capped at 256).
    pub fn with_max_order(p: u32, d: u32, max_order: usize) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if d < 1 {
            return Err(FieldError::BadDegree(d));
        }
        let max = max_order.min(ORDER_LIMIT);
        let mut q: usize = 1;
        for _ in 0..d {
            q = q.saturating_mul(p as usize);
            if q > max {
                return Err(FieldError::OrderTooLarge { q, max });
            }
        }

        let modulus = least_irreducible(p, d);
        let mut field = Field {
            p,
            d,
            q,
            modulus,
            add: vec![0; q * q],
            mul: vec![0; q * q],
            neg: vec![0; q],
            inv: vec![0; q],
        };
        field.build_tables();
        field.verify()?;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn order(&self) -> usize {
        self.q
    }

    /// Coefficients of the reducing polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline(always)]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Result<u8, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInverse);
        }
        Ok(self.inv[a as usize])
    }

    /// Description of the modulus like `x^2+x+1`, for reports.
    pub fn modulus_string(&self) -> String {
        let mut terms: Vec<String> = Vec::new();
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, c) => format!("{}", c),
                (1, 1) => String::from("x"),
                (1, c) => format!("{}x", c),
                (i, 1) => format!("x^{}", i),
                (i, c) => format!("{}x^{}", c, i),
            };
            terms.push(t);
        }
        terms.join("+")
    }

    fn digits(&self, mut idx: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.d as usize];
        for v in out.iter_mut() {
            *v = (idx % self.p as usize) as u32;
            idx /= self.p as usize;
        }
        out
    }

    fn encode(&self, digits: &[u32]) -> usize {
        let mut idx = 0usize;
        for &v in digits.iter().rev() {
            idx = idx * self.p as usize + v as usize;
        }
        idx
    }

    fn build_tables(&mut self) {
        let p = self.p;
        let q = self.q;
        for a in 0..q {
            let da = self.digits(a);
            let mut dn: Vec<u32> = da.iter().map(|&x| (p - x) % p).collect();
            self.neg[a] = self.encode(&dn) as u8;
            for b in 0..q {
                let db = self.digits(b);
                dn = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                self.add[a * q + b] = self.encode(&dn) as u8;
                let prod = poly_mul_mod(&da, &db, &self.modulus, p);
                self.mul[a * q + b] = self.encode(&prod) as u8;
            }
        }
        for a in 1..q {
            for b in 1..q {
                if self.mul[a * q + b] == 1 {
                    self.inv[a] = b as u8;
                    break;
                }
            }
        }
    }

    /// Exhaustive check of the field axioms. Cheap for q <= 16 and run on
    /// every construction so a bad table can never leak into a search.
    fn verify(&self) -> Result<(), FieldError> {
        let q = self.q;
        let els: Vec<u8> = (0..q as u16).map(|x| x as u8).collect();
        for &a in &els {
            if self.add(a, 0) != a || self.add(0, a) != a {
                return Err(FieldError::Invariant("additive identity"));
            }
            if self.mul(a, 1) != a || self.mul(1, a) != a {
                return Err(FieldError::Invariant("multiplicative identity"));
            }
            if self.mul(a, 0) != 0 {
                return Err(FieldError::Invariant("multiplication by zero"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(FieldError::Invariant("additive inverse"));
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return Err(FieldError::Invariant("multiplicative inverse"));
            }
        }
        for &a in &els {
            for &b in &els {
                if self.add(a, b) != self.add(b, a) {
                    return Err(FieldError::Invariant("addition commutativity"));
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return Err(FieldError::Invariant("multiplication commutativity"));
                }
            }
        }
        for &a in &els {
            for &b in &els {
                for &c in &els {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(FieldError::Invariant("addition associativity"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(FieldError::Invariant("multiplication associativity"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(FieldError::Invariant("distributivity"));
                    }
                }
            }
        }
        // Frobenius x -> x^p is a ring map fixing exactly the prime subfield.
        let frob = |x: u8| -> u8 {
            let mut acc = x;
            for _ in 1..self.p {
                acc = self.mul(acc, x);
            }
            acc
        };
        for &a in &els {
            let fixed = frob(a) == a;
            if fixed != ((a as u32) < self.p) {
                return Err(FieldError::Invariant("Frobenius fixed field"));
            }
            for &b in &els {
                if frob(self.add(a, b)) != self.add(frob(a), frob(b)) {
                    return Err(FieldError::Invariant("Frobenius additivity"));
                }
            }
        }
        Ok(())
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits q into (p, d) with p prime and q = p^d, if possible.
pub fn factor_prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2usize;
    while p * p <= q {
        if q % p == 0 {
            let mut rest = q;
            let mut d = 0u32;
            while rest % p == 0 {
                rest /= p;
                d += 1;
            }
            return if rest == 1 { Some((p as u32, d)) } else { None };
        }
        p += 1;
    }
    Some((q as u32, 1))
}

fn poly_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of a by b over GF(p); b must be monic.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - db;
        for i in 0..=db {
            let idx = shift + i;
            r[idx] = (r[idx] + p * p - (lead * b[i]) % p) % p;
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let prod = poly_mul(a, b, p);
    let mut r = poly_rem(&prod, modulus, p);
    r.resize(modulus.len() - 1, 0);
    r
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let d = poly.len() - 1;
    if d == 1 {
        return true;
    }
    // trial division by monic polynomials of degree 1..=d/2
    for e in 1..=d / 2 {
        let count = (p as usize).pow(e as u32);
        for rest in 0..count {
            let mut cand = vec![0u32; e + 1];
            let mut r = rest;
            for c in cand.iter_mut().take(e) {
                *c = (r % p as usize) as u32;
                r /= p as usize;
            }
            cand[e] = 1;
            if poly_rem(poly, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Monic irreducible polynomial of degree d over GF(p) with the smallest
/// base-p coefficient encoding.
fn least_irreducible(p: u32, d: u32) -> Vec<u32> {
    let d = d as usize;
    let count = (p as usize).pow(d as u32);
    for rest in 0..count {
        let mut cand = vec![0u32; d + 1];
        let mut r = rest;
        for c in cand.iter_mut().take(d) {
            *c = (r % p as usize) as u32;
            r /= p as usize;
        }
        cand[d] = 1;
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_tables() {
        let f = Field::new(2, 1).unwrap();
        assert_eq!(f.order(), 2);
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.mul(1, 1), 1);
    }

    #[test]
    fn gf4_has_the_unique_quadratic_modulus() {
        let f = Field::new(2, 2).unwrap();
        // x^2 + x + 1 is the only irreducible quadratic over GF(2)
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.modulus_string(), "x^2+x+1");
        // g = class of x has index 2; g*g = g+1 which has index 3
        assert_eq!(f.mul(2, 2), 3);
    }

    #[test]
    fn gf3_inverse_of_two() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.inv(2).unwrap(), 2);
    }

    #[test]
    fn four_is_not_prime() {
        assert_eq!(Field::new(4, 1).unwrap_err(), FieldError::NotPrime(4));
    }

    #[test]
    fn degree_zero_rejected() {
        assert_eq!(Field::new(2, 0).unwrap_err(), FieldError::BadDegree(0));
    }

    #[test]
    fn order_bound_enforced() {
        assert!(matches!(
            Field::new(2, 5),
            Err(FieldError::OrderTooLarge { q: 32, max: 16 })
        ));
        assert!(Field::with_max_order(2, 5, 64).is_ok());
    }

    #[test]
    fn zero_inverse_is_a_domain_error() {
        let f = Field::new(5, 1).unwrap();
        assert_eq!(f.inv(0).unwrap_err(), FieldError::ZeroInverse);
    }

    #[test]
    fn all_supported_orders_construct() {
        for (p, d) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (11, 1), (13, 1)] {
            let f = Field::new(p, d).unwrap();
            assert_eq!(f.order(), (p as usize).pow(d));
        }
    }

    #[test]
    fn gf8_and_gf9_moduli_are_least() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]); // x^3+x+1
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]); // x^2+1
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]); // x^4+x+1
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(factor_prime_power(16), Some((2, 4)));
        assert_eq!(factor_prime_power(13), Some((13, 1)));
        assert_eq!(factor_prime_power(12), None);
        assert_eq!(factor_prime_power(1), None);
    }
}
