use crate::error::Result;
use crate::galois::{FrobeniusMap, RepKind, RepParams, Representation};
use crate::poly::Poly;

/// `A = X^p - X - a` over `F_p`; Frobenius is `x -> x + a` since the
/// trace from `F_p` to itself is the identity.
pub fn build_artin_schreier(p: u64, a: u64) -> Result<Representation> {
    crate::ensure_prime(p)?;
    let a = a % p;
    if a == 0 {
        return Err(crate::Error::InvalidInput("a must have non-zero trace".into()));
    }
    let d = p as usize;
    let mut coeffs = vec![0u64; d + 1];
    coeffs[0] = p - a;
    coeffs[1] = p - 1;
    coeffs[d] = (coeffs[d] + 1) % p;
    let rep = Representation {
        p,
        d,
        kind: RepKind::ArtinSchreier,
        modulus: Poly::new(p, coeffs),
        frobenius: FrobeniusMap::Affine { u: 1, v: a },
        params: RepParams::ArtinSchreier { a, c: a },
    };
    rep.verify()?;
    Ok(rep)
}
