//! Residue rings `F_p[X]/A`. When `A` is irreducible this is the field
//! `F_{p^d}` and the ring implements [`Field`].

use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    pub modulus: Poly,
}

impl ResidueRing {
    pub fn new(modulus: Poly) -> Self {
        assert!(modulus.deg() >= 1, "modulus must be non-constant");
        ResidueRing { modulus: modulus.monic() }
    }

    pub fn p(&self) -> u64 {
        self.modulus.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg() as usize
    }

    /// `p^d`, the number of elements.
    pub fn order(&self) -> u128 {
        crate::arith::checked_pow(self.p(), self.degree() as u32).expect("field order fits in u128")
    }

    pub fn reduce(&self, a: &Poly) -> Poly {
        a.rem(&self.modulus)
    }

    /// The class of `X`.
    pub fn gen(&self) -> Poly {
        self.reduce(&Poly::x(self.p()))
    }

    /// Frobenius applied `k` times, computed by exponentiation.
    pub fn frobenius_pow(&self, a: &Poly, k: u32) -> Poly {
        let mut z = a.clone();
        for _ in 0..k {
            z = z.pow_mod(self.p() as u128, &self.modulus);
        }
        z
    }

    /// Random element from a seeded RNG.
    pub fn random<R: rand::Rng>(&self, rng: &mut R) -> Poly {
        let p = self.p();
        Poly::new(p, (0..self.degree()).map(|_| rng.gen_range(0..p)).collect())
    }
}

impl Field for ResidueRing {
    type Elem = Poly;

    fn characteristic(&self) -> u64 {
        self.p()
    }
    fn zero(&self) -> Poly {
        Poly::zero(self.p())
    }
    fn one(&self) -> Poly {
        self.reduce(&Poly::one(self.p()))
    }
    fn from_u64(&self, c: u64) -> Poly {
        Poly::constant(self.p(), c)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul_mod(b, &self.modulus)
    }
    fn inv(&self, a: &Poly) -> Option<Poly> {
        a.inv_mod(&self.modulus)
    }
    fn pow(&self, a: &Poly, e: u128) -> Poly {
        a.pow_mod(e, &self.modulus)
    }
    fn to_base(&self, a: &Poly) -> Option<u64> {
        a.is_constant().then(|| a.coeff(0))
    }
    fn element_at(&self, i: u64) -> Poly {
        Poly::from_index(self.p(), i as u128, self.degree())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_in_field() {
        let r = ResidueRing::new(Poly::from_i64(7, &[-1, -1, 0, 0, 0, 0, 0, 1]));
        for i in 1..300u64 {
            let a = r.element_at(i);
            let b = r.inv(&a).unwrap();
            assert!(r.mul(&a, &b).is_one());
        }
    }

    #[test]
    fn frobenius_is_additive_and_multiplicative() {
        let r = ResidueRing::new(Poly::from_i64(43, &[-3, 0, 0, 0, 0, 0, 1]));
        let a = Poly::from_i64(43, &[5, 1, 7, 0, 3]);
        let b = Poly::from_i64(43, &[2, 0, 11, 9]);
        let f = |z: &Poly| r.frobenius(z);
        assert_eq!(f(&r.add(&a, &b)), r.add(&f(&a), &f(&b)));
        assert_eq!(f(&r.mul(&a, &b)), r.mul(&f(&a), &f(&b)));
    }
}
