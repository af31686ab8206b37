//! Prime fields and the small `Field` trait shared by every coefficient
//! domain in the crate (prime fields, residue fields, quadratic extensions
//! and curve function fields).

use std::fmt::Debug;

use crate::arith::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};

pub trait Field: Clone {
    type Elem: Clone + PartialEq + Debug;

    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_u64(&self, c: u64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// The element as an `F_p` scalar, when it lies in the prime field.
    fn to_base(&self, a: &Self::Elem) -> Option<u64>;

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.sub(&self.zero(), a)
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        Some(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u128) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn frobenius(&self, a: &Self::Elem) -> Self::Elem {
        self.pow(a, self.characteristic() as u128)
    }

    /// A deterministic enumeration of field elements, used by searches.
    fn element_at(&self, i: u64) -> Self::Elem {
        self.from_u64(i)
    }
}

/// The prime field `F_p`; elements are reduced `u64` values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn is_square(&self, a: u64) -> bool {
        a == 0 || self.p == 2 || pow_mod(a, ((self.p - 1) / 2) as u128, self.p) == 1
    }

    /// Square root by Tonelli-Shanks; `None` for non-residues.
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 || p == 2 {
            return Some(a);
        }
        if !self.is_square(a) {
            return None;
        }
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = (2..p).find(|&z| !self.is_square(z)).unwrap();
        let mut m = s;
        let mut c = pow_mod(z, q as u128, p);
        let mut t = pow_mod(a, q as u128, p);
        let mut r = pow_mod(a, q.div_ceil(2) as u128, p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1u128 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        Some(r)
    }
}

impl Field for Fp {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_u64(&self, c: u64) -> u64 {
        c % self.p
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        sub_mod(*a, *b, self.p)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            inv_mod(*a, self.p)
        }
    }
    fn to_base(&self, a: &u64) -> Option<u64> {
        Some(*a)
    }
    fn frobenius(&self, a: &u64) -> u64 {
        *a
    }
}

/// Square root in any finite field of the given order (Tonelli-Shanks).
pub fn sqrt_in<F: Field>(field: &F, a: &F::Elem, order: u128) -> Option<F::Elem> {
    if field.is_zero(a) {
        return Some(field.zero());
    }
    if order.is_multiple_of(2) {
        // Characteristic 2: squaring is bijective.
        return Some(field.pow(a, order / 2));
    }
    let one = field.one();
    if field.pow(a, (order - 1) / 2) != one {
        return None;
    }
    let mut q = order - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = nonresidue(field, order)?;
    let mut m = s;
    let mut c = field.pow(&z, q);
    let mut t = field.pow(a, q);
    let mut r = field.pow(a, q.div_ceil(2));
    while t != one {
        let mut i = 0;
        let mut tt = t.clone();
        while tt != one {
            tt = field.mul(&tt, &tt);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(m - i - 1) {
            b = field.mul(&b, &b);
        }
        m = i;
        c = field.mul(&b, &b);
        t = field.mul(&t, &c);
        r = field.mul(&r, &b);
    }
    Some(r)
}

/// A quadratic non-residue, found by scanning [`Field::element_at`].
pub fn nonresidue<F: Field>(field: &F, order: u128) -> Option<F::Elem> {
    let one = field.one();
    (1..4096u64)
        .map(|i| field.element_at(i))
        .find(|z| !field.is_zero(z) && field.pow(z, (order - 1) / 2) != one)
}
