use crate::arith::{order_mod, pow_mod, primitive_root};
use crate::error::{Error, Result};
use crate::galois::{FrobeniusMap, RepKind, RepParams, Representation};
use crate::poly::Poly;

/// `A = X^d - r` with `r` the smallest primitive root of `F_p`.
pub fn build_kummer(p: u64, d: usize) -> Result<Representation> {
    crate::ensure_prime(p)?;
    build_kummer_with(p, d, primitive_root(p))
}

/// `A = X^d - r` for a given primitive root `r`.
pub fn build_kummer_with(p: u64, d: usize, r: u64) -> Result<Representation> {
    crate::ensure_prime(p)?;
    if d == 0 || !(p - 1).is_multiple_of(d as u64) {
        return Err(Error::DegreeNotCompatible { p, d: d as u64, reason: "d must divide p - 1".into() });
    }
    if p > 2 && order_mod(r % p, p) != p - 1 {
        return Err(Error::InvalidInput(format!("{r} is not a primitive root modulo {p}")));
    }
    let m = (p - 1) / d as u64;
    let zeta = pow_mod(r, m as u128, p);
    let mut coeffs = vec![0u64; d + 1];
    coeffs[0] = (p - r % p) % p;
    coeffs[d] = 1;
    let rep = Representation {
        p,
        d,
        kind: RepKind::Kummer,
        modulus: Poly::new(p, coeffs),
        frobenius: FrobeniusMap::Affine { u: zeta, v: 0 },
        params: RepParams::Kummer { r, zeta, m },
    };
    rep.verify()?;
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_kummer() {
        let rep = build_kummer(43, 6).unwrap();
        assert_eq!(rep.modulus, Poly::from_i64(43, &[-3, 0, 0, 0, 0, 0, 1]));
        assert_eq!(rep.frobenius, FrobeniusMap::Affine { u: 37, v: 0 });
        assert_eq!(order_mod(37, 43), 6);
    }

    #[test]
    fn large_kummer() {
        let rep = build_kummer_with(370801, 30, 17).unwrap();
        assert_eq!(rep.frobenius, FrobeniusMap::Affine { u: 172960, v: 0 });
        assert_eq!(build_kummer(370801, 30).unwrap(), rep);
    }

    #[test]
    fn prime_field_case() {
        let rep = build_kummer(43, 1).unwrap();
        assert_eq!(rep.modulus, Poly::from_i64(43, &[-3, 1]));
        assert_eq!(rep.frobenius, FrobeniusMap::Affine { u: 1, v: 0 });
    }

    #[test]
    fn incompatible_degree() {
        assert!(matches!(build_kummer(43, 5), Err(Error::DegreeNotCompatible { .. })));
    }
}
