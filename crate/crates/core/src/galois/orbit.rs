//! Frobenius orbits on smoothness-basis elements.
//!
//! For a basis place `q` of form-degree `n`, Frobenius satisfies
//! `sigma(q(x)) = lead * q'(x) * (x + tau)^(-n)` with `q'` monic, where the
//! `(x + tau)` factor only occurs for the torus. Taking logarithms,
//! `log q' = p log q + n W - log lead` with `W = log(x + tau)`. Iterating
//! from the representative gives, for the member at shift `j`,
//! `log m_j = p^j log rep + n (p^j - 1)/(p - 1) W + log s_j`
//! with an `F_p^*` scalar `s_j` recorded on the member.

use serde::Serialize;

use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};
use crate::galois::{FrobeniusMap, Representation};
use crate::poly::Poly;

/// A place of the projective line over `F_p`: a monic irreducible, or the
/// point at infinity (which only enters torus orbits and has value 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasisPlace {
    Finite(Poly),
    Infinity,
}

impl BasisPlace {
    /// Degree as a binary form (the point at infinity is `V`, degree 1).
    pub fn form_degree(&self) -> usize {
        match self {
            BasisPlace::Finite(q) => q.deg() as usize,
            BasisPlace::Infinity => 1,
        }
    }

    pub fn poly(&self) -> Option<&Poly> {
        match self {
            BasisPlace::Finite(q) => Some(q),
            BasisPlace::Infinity => None,
        }
    }

    /// Value in `L`.
    pub fn value(&self, modulus: &Poly) -> Poly {
        match self {
            BasisPlace::Finite(q) => q.rem(modulus),
            BasisPlace::Infinity => Poly::one(modulus.p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitMember {
    pub place: BasisPlace,
    pub shift: u32,
    /// `s_j` in the log identity above.
    pub scalar: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    /// Form degree shared by every member.
    pub degree: usize,
    /// `members[0]` is the representative (shift 0, scalar 1).
    pub members: Vec<OrbitMember>,
    /// `s_j` for `j` the orbit length: the representative satisfies
    /// `(p^j - 1) log rep + w_j W + log s_j = 0`.
    pub closing_scalar: u64,
}

impl Orbit {
    pub fn representative(&self) -> &BasisPlace {
        &self.members[0].place
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Coefficient of `W` for the member at shift `j`, modulo `n_mod`.
    pub fn tau_weight(&self, p: u64, j: u32, n_mod: u64) -> u64 {
        // n (1 + p + ... + p^(j-1))
        let mut acc = 0u64;
        let mut pw = 1u64;
        for _ in 0..j {
            acc = (acc + pw) % n_mod;
            pw = mul_mod(pw, p, n_mod);
        }
        mul_mod(acc, self.degree as u64 % n_mod, n_mod)
    }
}

/// One Frobenius step on a place: the image place and the leading
/// coefficient `lead`.
pub fn frobenius_step(rep: &Representation, place: &BasisPlace) -> Result<(BasisPlace, u64)> {
    let p = rep.p;
    match (&rep.frobenius, place) {
        (FrobeniusMap::Affine { u, v }, BasisPlace::Finite(q)) => {
            // q(u X + v) has leading coefficient lead(q) u^n = u^n.
            let img = q.compose(&Poly::new(p, vec![*v, *u]));
            Ok((BasisPlace::Finite(img.monic()), img.lead()))
        }
        (FrobeniusMap::Homography { tau, d }, BasisPlace::Finite(q)) => {
            let n = q.deg() as usize;
            let num = Poly::new(p, vec![*d, *tau]);
            let den = Poly::new(p, vec![*tau, 1]);
            let mut img = Poly::zero(p);
            for (i, &c) in q.coeffs().iter().enumerate() {
                let term = &num.pow(i as u32) * &den.pow((n - i) as u32);
                img = &img + &term.scale(c);
            }
            if img.deg() == n as isize {
                Ok((BasisPlace::Finite(img.monic()), img.lead()))
            } else if n == 1 && img.deg() == 0 {
                // q = X - tau goes to the point at infinity.
                Ok((BasisPlace::Infinity, img.lead()))
            } else {
                Err(Error::DegenerateOrbit(format!("{q} loses degree under the homography")))
            }
        }
        (FrobeniusMap::Homography { tau, .. }, BasisPlace::Infinity) => {
            Ok((BasisPlace::Finite(Poly::new(p, vec![*tau, 1])), 1))
        }
        (FrobeniusMap::CurveTranslation { .. }, BasisPlace::Finite(_)) => {
            // x-polynomials are not stable under curve translations.
            Ok((place.clone(), 1))
        }
        _ => Err(Error::DegenerateOrbit("point at infinity outside a torus".into())),
    }
}

/// Orbit of a basis place under the Frobenius of `rep`, starting at `q`.
/// Curve-translation presentations have singleton orbits.
pub fn basis_orbit(rep: &Representation, q: &BasisPlace) -> Result<Orbit> {
    let p = rep.p;
    if let BasisPlace::Finite(poly) = q {
        if !poly.is_monic() || !crate::factor::is_irreducible(poly) {
            return Err(Error::DegenerateOrbit(format!("{poly} is not monic irreducible")));
        }
        if poly.rem(&rep.modulus).is_zero() {
            return Err(Error::DegenerateOrbit(format!("{poly} vanishes at x")));
        }
    }
    let degree = q.form_degree();
    let mut members = vec![OrbitMember { place: q.clone(), shift: 0, scalar: 1 }];
    if matches!(rep.frobenius, FrobeniusMap::CurveTranslation { .. }) {
        return Ok(Orbit { degree, members, closing_scalar: 1 });
    }
    let mut cur = q.clone();
    let mut scalar = 1u64;
    for j in 1..=rep.d as u32 {
        let (next, lead) = frobenius_step(rep, &cur)?;
        scalar = mul_mod(scalar, inv_mod(lead, p).unwrap(), p);
        if next == *q {
            if !(rep.d as u32).is_multiple_of(j) {
                return Err(Error::DegenerateOrbit(format!("orbit size {j} does not divide {}", rep.d)));
            }
            return Ok(Orbit { degree, members, closing_scalar: scalar });
        }
        members.push(OrbitMember { place: next.clone(), shift: j, scalar });
        cur = next;
    }
    Err(Error::DegenerateOrbit("orbit did not close after d steps".into()))
}
