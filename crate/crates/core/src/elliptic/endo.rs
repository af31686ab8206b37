//! Elements `m + n phi` of `Z[phi]`, where `phi` is the Frobenius
//! endomorphism with `phi^2 - t phi + p = 0`.

use serde::{Deserialize, Serialize};

use crate::elliptic::curve::{Curve, Point};
use crate::field::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndomorphismElement {
    pub m: i64,
    pub n: i64,
    pub t: i64,
    pub p: i64,
}

impl EndomorphismElement {
    pub fn new(m: i64, n: i64, t: i64, p: i64) -> Self {
        EndomorphismElement { m, n, t, p }
    }

    pub fn from_int(m: i64, t: i64, p: i64) -> Self {
        Self::new(m, 0, t, p)
    }

    pub fn phi(t: i64, p: i64) -> Self {
        Self::new(0, 1, t, p)
    }

    pub fn is_zero(&self) -> bool {
        self.m == 0 && self.n == 0
    }

    /// `(m + n phi)(m + n conj(phi)) = m^2 + m n t + n^2 p`.
    pub fn norm(&self) -> i64 {
        self.m * self.m + self.m * self.n * self.t + self.n * self.n * self.p
    }

    /// `2m + n t`.
    pub fn trace(&self) -> i64 {
        2 * self.m + self.n * self.t
    }

    /// `conj(phi) = t - phi`.
    pub fn conj(&self) -> Self {
        Self::new(self.m + self.n * self.t, -self.n, self.t, self.p)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.m + o.m, self.n + o.n, self.t, self.p)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.m - o.m, self.n - o.n, self.t, self.p)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.m, -self.n, self.t, self.p)
    }

    /// Uses `phi^2 = t phi - p`.
    pub fn mul(&self, o: &Self) -> Self {
        let nn = self.n * o.n;
        Self::new(self.m * o.m - nn * self.p, self.m * o.n + self.n * o.m + nn * self.t, self.t, self.p)
    }

    /// Exact quotient in `Z[phi]`, if `o` divides `self`.
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        let nrm = o.norm();
        if nrm == 0 {
            return None;
        }
        let num = self.mul(&o.conj());
        (num.m % nrm == 0 && num.n % nrm == 0).then(|| Self::new(num.m / nrm, num.n / nrm, self.t, self.p))
    }

    /// Action on a point over any field of characteristic `p`, where the
    /// Frobenius endomorphism is the coordinate-wise `p`-th power.
    pub fn apply<F: Field>(&self, curve: &Curve, f: &F, pt: &Point<F::Elem>) -> Point<F::Elem> {
        let a = curve.mul(f, self.m as i128, pt);
        if self.n == 0 {
            return a;
        }
        let b = curve.mul(f, self.n as i128, &curve.frobenius(f, pt));
        curve.add(f, &a, &b)
    }

    /// On rational points Frobenius is the identity, so this is `[m + n]`.
    pub fn rational_scalar(&self) -> i64 {
        self.m + self.n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        let two_minus_phi = EndomorphismElement::new(2, -1, 5, 11);
        assert_eq!(two_minus_phi.norm(), 5);
        let phi = EndomorphismElement::phi(5, 11);
        assert_eq!(phi.norm(), 11);
        // phi satisfies its characteristic polynomial.
        let lhs = phi.mul(&phi).sub(&phi.mul(&EndomorphismElement::from_int(5, 5, 11)));
        assert_eq!(lhs, EndomorphismElement::from_int(-11, 5, 11));
        let a = EndomorphismElement::new(3, 2, 5, 11);
        let b = EndomorphismElement::new(-1, 4, 5, 11);
        assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        assert_eq!(a.mul(&b).div_exact(&b), Some(a));
    }
}
