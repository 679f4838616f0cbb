//! Arithmetic in GF(2^k) for 1 <= k <= 16.
//!
//! Elements are bit-packed polynomials over GF(2): bit `i` is the
//! coefficient of `x^i`. Reduction uses the Conway polynomial of degree `k`,
//! so encodings agree with any other implementation using the same moduli.
//! Multiplication goes through log/exp tables built once per degree.
#![allow(clippy::suspicious_arithmetic_impl, clippy::suspicious_op_assign_impl)]

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Moduli indexed by degree. Degree 1 uses `x`, degrees 2..=16 the Conway
/// polynomials `C(2, k)`.
pub const MODULI: [u32; 17] = [
    0,
    0b10,
    0b111,
    0b1011,
    0b1_0011,
    0b10_0101,
    0b101_1011,
    0b1000_0011,
    0b1_0001_1101,
    0b10_0001_0001,
    0b100_0110_1111,
    0b1000_0000_0101,
    0b1_0000_1110_1011,
    0b10_0000_0001_1011,
    0b100_0000_1010_1001,
    0b1000_0000_0011_0101,
    0b1_0000_0000_0010_1101,
];

/// Arithmetic context of GF(2^k).
pub struct FieldCtx {
    k: u32,
    modulus: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

static FIELDS: [OnceLock<FieldCtx>; 17] = [const { OnceLock::new() }; 17];

/// Returns the shared context for GF(2^k).
pub fn make_field(k: u32) -> Result<&'static FieldCtx> {
    if !(1..=MAX_DEGREE).contains(&k) {
        return Err(Error::FieldDegree(k));
    }
    Ok(FIELDS[k as usize].get_or_init(|| FieldCtx::build(k)))
}

/// Carry-less product of `a` and `b` reduced modulo `modulus`.
///
/// Slow shift-and-xor reference; the tables are derived from it.
pub fn clmul_mod(mut a: u32, mut b: u32, modulus: u32) -> u32 {
    let k = 31 - modulus.leading_zeros();
    let mut acc = 0u32;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> k & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

impl FieldCtx {
    fn build(k: u32) -> FieldCtx {
        let modulus = MODULI[k as usize];
        let q = 1usize << k;
        let mut exp = vec![0u16; 2 * (q - 1)];
        let mut log = vec![0u16; q];
        // Conway polynomials are primitive, so x generates the unit group.
        // For k = 1 the unit group is {1} and any generator is trivial.
        let generator = if k == 1 { 1 } else { 2 };
        let mut e = 1u32;
        for i in 0..q - 1 {
            exp[i] = e as u16;
            exp[i + q - 1] = e as u16;
            log[e as usize] = i as u16;
            e = clmul_mod(e, generator, modulus);
        }
        debug_assert_eq!(e, 1, "modulus of degree {k} is not primitive");
        FieldCtx { k, modulus, exp, log }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Bitmask of the reduction polynomial (bit `k` set).
    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of field elements, `2^k`.
    pub fn order(&self) -> u32 {
        1 << self.k
    }

    pub fn zero(&'static self) -> FieldElem {
        FieldElem { bits: 0, field: self }
    }

    pub fn one(&'static self) -> FieldElem {
        FieldElem { bits: 1, field: self }
    }

    /// Element with the given encoding; fails if `bits >= 2^k`.
    pub fn elem(&'static self, bits: u32) -> Result<FieldElem> {
        if bits >= self.order() {
            return Err(Error::ElementRange { bits, k: self.k });
        }
        Ok(FieldElem { bits: bits as u16, field: self })
    }

    /// Element with the given encoding, reduced into range by masking.
    pub fn elem_masked(&'static self, bits: u32) -> FieldElem {
        FieldElem { bits: (bits & (self.order() - 1)) as u16, field: self }
    }

    /// All elements in encoding order.
    pub fn elements(&'static self) -> impl Iterator<Item = FieldElem> {
        (0..self.order()).map(move |b| FieldElem { bits: b as u16, field: self })
    }

    fn mul_bits(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[self.log[a as usize] as usize + self.log[b as usize] as usize]
    }

    fn inv_bits(&self, a: u16) -> u16 {
        let n = (self.order() - 1) as usize;
        self.exp[(n - self.log[a as usize] as usize) % n]
    }

    fn sqrt_bits(&self, a: u16) -> u16 {
        if a == 0 {
            return 0;
        }
        // Squaring doubles the discrete log; 2^(k-1) inverts 2 modulo 2^k - 1.
        let n = (self.order() - 1) as u64;
        let l = self.log[a as usize] as u64 * (1u64 << (self.k - 1)) % n;
        self.exp[l as usize]
    }
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#b}", self.k, self.modulus)
    }
}

/// An element of GF(2^k), carrying its context.
#[derive(Clone, Copy)]
pub struct FieldElem {
    bits: u16,
    field: &'static FieldCtx,
}

impl FieldElem {
    pub fn bits(self) -> u32 {
        self.bits as u32
    }

    pub fn field(self) -> &'static FieldCtx {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn is_one(self) -> bool {
        self.bits == 1
    }

    pub fn zero_like(self) -> FieldElem {
        self.field.zero()
    }

    pub fn one_like(self) -> FieldElem {
        self.field.one()
    }

    pub fn inv(self) -> Result<FieldElem> {
        if self.bits == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElem { bits: self.field.inv_bits(self.bits), field: self.field })
    }

    /// The unique square root, `a^(2^(k-1))`.
    pub fn sqrt(self) -> FieldElem {
        FieldElem { bits: self.field.sqrt_bits(self.bits), field: self.field }
    }

    pub fn square(self) -> FieldElem {
        self * self
    }

    pub fn pow(self, mut e: u64) -> FieldElem {
        let mut acc = self.one_like();
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// `n · self` for an integer `n`; only the parity of `n` matters.
    pub fn times(self, n: usize) -> FieldElem {
        if n % 2 == 1 {
            self
        } else {
            self.zero_like()
        }
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.field.k == other.field.k
    }
}

impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.k.hash(state);
        self.bits.hash(state);
    }
}

impl PartialOrd for FieldElem {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElem {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.field.k, self.bits).cmp(&(other.field.k, other.bits))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bits)
    }
}

impl Add for FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: FieldElem) -> FieldElem {
        debug_assert_eq!(self.field.k, rhs.field.k);
        FieldElem { bits: self.bits ^ rhs.bits, field: self.field }
    }
}

impl Sub for FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: FieldElem) -> FieldElem {
        FieldElem { bits: self.bits ^ rhs.bits, field: self.field }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self
    }
}

impl Mul for FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: FieldElem) -> FieldElem {
        debug_assert_eq!(self.field.k, rhs.field.k);
        FieldElem { bits: self.field.mul_bits(self.bits, rhs.bits), field: self.field }
    }
}

/// Panics on division by zero; use [`FieldElem::inv`] to handle it.
impl Div for FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: FieldElem) -> FieldElem {
        let inv = rhs.inv().expect("division by zero in GF(2^k)");
        FieldElem { bits: self.field.mul_bits(self.bits, inv.bits), field: self.field }
    }
}

impl AddAssign for FieldElem {
    fn add_assign(&mut self, rhs: FieldElem) {
        self.bits ^= rhs.bits;
    }
}

impl SubAssign for FieldElem {
    fn sub_assign(&mut self, rhs: FieldElem) {
        self.bits ^= rhs.bits;
    }
}

impl MulAssign for FieldElem {
    fn mul_assign(&mut self, rhs: FieldElem) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for FieldElem {
    /// Panics on an empty iterator, which has no field to take zero from.
    fn sum<I: Iterator<Item = FieldElem>>(mut iter: I) -> FieldElem {
        let first = iter.next().expect("sum of an empty field-element iterator");
        iter.fold(first, |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(k: u32, b: u32) -> FieldElem {
        make_field(k).unwrap().elem(b).unwrap()
    }

    /// Irreducibility by trial division with every polynomial of degree <= k/2.
    fn is_irreducible(p: u32) -> bool {
        let deg = 31 - p.leading_zeros();
        let poly_mod = |mut a: u32, b: u32| {
            let db = 31 - b.leading_zeros();
            while a != 0 && 31 - a.leading_zeros() >= db {
                a ^= b << (31 - a.leading_zeros() - db);
            }
            a
        };
        (2u32..1 << (deg / 2 + 1))
            .filter(|d| (31 - d.leading_zeros()) >= 1 && (31 - d.leading_zeros()) <= deg / 2)
            .all(|d| poly_mod(p, d) != 0)
    }

    #[test]
    fn moduli_have_degree_k_and_are_irreducible() {
        for k in 1..=MAX_DEGREE {
            let f = make_field(k).unwrap();
            assert_eq!(31 - f.modulus().leading_zeros(), k);
            assert!(is_irreducible(f.modulus()), "k = {k}");
        }
    }

    #[test]
    fn moduli_are_primitive() {
        // x has multiplicative order exactly 2^k - 1.
        for k in 2..=MAX_DEGREE {
            let f = make_field(k).unwrap();
            let n = (f.order() - 1) as u64;
            let x = f.elem(2).unwrap();
            assert!(x.pow(n).is_one());
            let mut m = n;
            let mut primes = vec![];
            let mut p = 2;
            while p * p <= m {
                if m.is_multiple_of(p) {
                    primes.push(p);
                    while m.is_multiple_of(p) {
                        m /= p;
                    }
                }
                p += 1;
            }
            if m > 1 {
                primes.push(m);
            }
            for p in primes {
                assert!(!x.pow(n / p).is_one(), "k = {k}, p = {p}");
            }
        }
    }

    #[test]
    fn make_field_examples() {
        assert_eq!(make_field(2).unwrap().modulus(), 0b111);
        assert_eq!(make_field(1).unwrap().modulus(), 0b10);
        assert!(matches!(make_field(17), Err(Error::FieldDegree(17))));
        assert!(matches!(make_field(0), Err(Error::FieldDegree(0))));
        // deterministic
        assert!(std::ptr::eq(make_field(5).unwrap(), make_field(5).unwrap()));
    }

    #[test]
    fn gf4_tables() {
        assert_eq!(gf(2, 2) + gf(2, 3), gf(2, 1));
        assert_eq!(gf(2, 2) * gf(2, 2), gf(2, 3));
        assert_eq!(gf(2, 2) * gf(2, 3), gf(2, 1));
        assert_eq!(gf(2, 2).sqrt(), gf(2, 3));
        assert_eq!(gf(2, 1).sqrt(), gf(2, 1));
        assert_eq!(gf(2, 0).sqrt(), gf(2, 0));
        assert!(matches!(gf(3, 0).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn element_range_is_checked() {
        let f = make_field(3).unwrap();
        assert!(f.elem(7).is_ok());
        assert!(f.elem(8).is_err());
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for k in 1..=4 {
            let f = make_field(k).unwrap();
            for a in f.elements() {
                assert_eq!(a + a, f.zero());
                assert_eq!(a + f.zero(), a);
                assert_eq!(a * f.one(), a);
                assert_eq!(a.sqrt().square(), a);
                assert_eq!(a.square().sqrt(), a);
                if !a.is_zero() {
                    assert!((a.inv().unwrap() * a).is_one());
                }
                for b in f.elements() {
                    assert_eq!(a + b, b + a);
                    assert_eq!(a * b, b * a);
                    assert_eq!((a * b).bits(), clmul_mod(a.bits(), b.bits(), f.modulus()));
                    for c in f.elements() {
                        assert_eq!((a + b) + c, a + (b + c));
                        assert_eq!((a * b) * c, a * (b * c));
                        assert_eq!(a * (b + c), a * b + a * c);
                    }
                }
            }
        }
    }

    #[test]
    fn field_axioms_random_large() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for k in 5..=MAX_DEGREE {
            let f = make_field(k).unwrap();
            for _ in 0..10_000 / 12 + 1 {
                let a = f.elem_masked(rng.gen());
                let b = f.elem_masked(rng.gen());
                let c = f.elem_masked(rng.gen());
                assert_eq!((a * b).bits(), clmul_mod(a.bits(), b.bits(), f.modulus()));
                assert_eq!((a * b) * c, a * (b * c));
                assert_eq!(a * (b + c), a * b + a * c);
                assert_eq!(a.sqrt().square(), a);
                assert_eq!(a.sqrt(), a.pow(1 << (k - 1)));
                if !a.is_zero() {
                    assert!((a / a).is_one());
                }
            }
        }
    }
}
