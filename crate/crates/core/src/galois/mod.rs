//! Presentations `L = F_p[X]/A` of `F_{p^d}` in which Frobenius acts on
//! the class `x` of `X` by a simple substitution: an affine map (Kummer
//! and Artin-Schreier), a homography (rank-one torus) or a translation on
//! an elliptic curve.

mod artin_schreier;
mod kummer;
mod orbit;
mod serial;
pub mod torus;

pub use artin_schreier::build_artin_schreier;
pub use kummer::{build_kummer, build_kummer_with};
pub use serial::{point_from_json, point_to_json, poly_from_json};
pub use orbit::{basis_orbit, BasisPlace, Orbit, OrbitMember};
pub use torus::{build_torus, build_torus_with, torus_add, torus_scalar_mul, TorusConvention, TorusPoint};

use serde::{Deserialize, Serialize};

use crate::elliptic::EllipticParams;
use crate::field::Field;
use crate::linalg;
use crate::poly::Poly;
use crate::residue::ResidueRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RepKind {
    Kummer,
    ArtinSchreier,
    Torus,
    EllipticResidue,
}

impl RepKind {
    pub fn name(self) -> &'static str {
        match self {
            RepKind::Kummer => "kummer",
            RepKind::ArtinSchreier => "artin-schreier",
            RepKind::Torus => "torus",
            RepKind::EllipticResidue => "elliptic",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kummer" => Some(RepKind::Kummer),
            "artin-schreier" | "artinschreier" | "as" => Some(RepKind::ArtinSchreier),
            "torus" => Some(RepKind::Torus),
            "elliptic" | "ellipticresidue" | "elliptic-residue" => Some(RepKind::EllipticResidue),
            _ => None,
        }
    }
}

/// How Frobenius moves the generator `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FrobeniusMap {
    /// `x -> u x + v`
    Affine { u: u64, v: u64 },
    /// `x -> (tau x + D) / (x + tau)`
    Homography { tau: u64, d: u64 },
    /// `x -> x(b + t)` where `b = (x, Y(x))` is the fiber point; `image`
    /// is that coordinate already reduced modulo `A`.
    CurveTranslation { t: (u64, u64), image: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepParams {
    Kummer { r: u64, zeta: u64, m: u64 },
    ArtinSchreier { a: u64, c: u64 },
    Torus { nonresidue: u64, u_r: u64, m: u64, tau: u64, convention: TorusConvention },
    EllipticResidue(Box<EllipticParams>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub p: u64,
    pub d: usize,
    pub kind: RepKind,
    pub modulus: Poly,
    pub frobenius: FrobeniusMap,
    pub params: RepParams,
}

impl Representation {
    pub fn ring(&self) -> ResidueRing {
        ResidueRing::new(self.modulus.clone())
    }

    /// `p^d - 1`, the order of `L^*`, when it fits in 64 bits.
    pub fn group_order(&self) -> Option<u64> {
        crate::arith::checked_pow(self.p, self.d as u32)
            .and_then(|q| u64::try_from(q - 1).ok())
    }

    /// `sigma(x)` as an element of `L`.
    pub fn frobenius_of_x(&self) -> Poly {
        let p = self.p;
        let a = &self.modulus;
        match &self.frobenius {
            FrobeniusMap::Affine { u, v } => Poly::new(p, vec![*v, *u]).rem(a),
            FrobeniusMap::Homography { tau, d } => {
                let num = Poly::new(p, vec![*d, *tau]);
                let den = Poly::new(p, vec![*tau, 1]);
                num.mul_mod(&den.inv_mod(a).expect("x + tau is invertible"), a)
            }
            FrobeniusMap::CurveTranslation { image, .. } => image.clone(),
        }
    }

    /// `z^(p^k)` by substituting `sigma(x)` into the representative, `k` times.
    pub fn apply_frobenius(&self, z: &Poly, k: u32) -> Poly {
        let a = &self.modulus;
        let mut out = z.rem(a);
        if k == 0 {
            return out;
        }
        let s = self.frobenius_of_x();
        for _ in 0..k {
            out = match &self.frobenius {
                FrobeniusMap::Affine { .. } => out.compose(&s).rem(a),
                _ => out.eval_mod(&s, a),
            };
        }
        out
    }

    /// Smallest `k` such that `z` lies in the `k`-th filtration level.
    pub fn degree(&self, z: &Poly) -> usize {
        let z = z.rem(&self.modulus);
        match self.kind {
            RepKind::Kummer | RepKind::ArtinSchreier => z.deg().max(0) as usize,
            RepKind::Torus => torus_degree(&self.ring(), &z),
            RepKind::EllipticResidue => match &self.params {
                RepParams::EllipticResidue(ep) => crate::elliptic::function_degree(ep, &self.modulus, &z),
                _ => unreachable!("elliptic representation without curve data"),
            },
        }
    }

    /// Largest value the degree function can take.
    pub fn max_degree(&self) -> usize {
        match self.kind {
            RepKind::Kummer | RepKind::ArtinSchreier => self.d - 1,
            RepKind::Torus => self.d / 2,
            RepKind::EllipticResidue => self.d,
        }
    }

    /// Check irreducibility of `A` and the structural Frobenius against
    /// exponentiation on `x` and on a few pseudo-random elements.
    pub fn verify(&self) -> crate::Result<()> {
        if !crate::factor::is_irreducible(&self.modulus) {
            return Err(crate::Error::InvalidInput("modulus is not irreducible".into()));
        }
        let ring = self.ring();
        let x = ring.gen();
        let structural = self.frobenius_of_x();
        let arithmetic = ring.frobenius(&x);
        if structural != arithmetic {
            return Err(crate::Error::FrobeniusMismatch(format!(
                "x^p = {} but the map gives {}",
                arithmetic, structural
            )));
        }
        for i in [7u64, 101, 999, 4242] {
            let z = ring.element_at(i * 7919 % (1 << 20));
            if self.apply_frobenius(&z, 1) != ring.frobenius(&z) {
                return Err(crate::Error::FrobeniusMismatch(format!("disagreement at {z}")));
            }
        }
        Ok(())
    }
}

/// Smallest `k` with `N(x) = z D(x)` for non-zero `N, D` of degree `<= k`.
fn torus_degree(ring: &ResidueRing, z: &Poly) -> usize {
    let p = ring.p();
    let d = ring.degree();
    if z.deg() <= 0 {
        return 0;
    }
    let x = ring.gen();
    for k in 1.. {
        // Columns: x^0..x^k, then -z x^0 .. -z x^k.
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(2 * k + 2);
        let mut pw = ring.one();
        let mut zpw = ring.neg(z);
        for _ in 0..=k {
            cols.push(pw.to_vec(d));
            cols.push(zpw.to_vec(d));
            pw = ring.mul(&pw, &x);
            zpw = ring.mul(&zpw, &x);
        }
        if cols.len() > d {
            return k;
        }
        let rows: Vec<Vec<u64>> = (0..d).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        if linalg::rank(&rows, p) < cols.len() {
            return k;
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_roundtrip() {
        for k in [RepKind::Kummer, RepKind::ArtinSchreier, RepKind::Torus, RepKind::EllipticResidue] {
            assert_eq!(RepKind::from_name(k.name()), Some(k));
        }
    }
}
