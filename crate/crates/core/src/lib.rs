//! Finite fields `F_{p^d}` presented so that Frobenius acts by a simple
//! substitution on the generator, and discrete-logarithm machinery that
//! exploits that action to shrink the factor base.
//!
//! Layout:
//! - [`arith`], [`field`], [`poly`], [`residue`], [`factor`], [`linalg`]:
//!   arithmetic over `F_p` and `F_p[X]`.
//! - [`galois`]: Kummer, Artin-Schreier and rank-one torus presentations.
//! - [`elliptic`]: curves, isogenies and curve-based presentations.
//! - [`index_calculus`]: factor bases, relations, linear algebra, logs.
//! - [`sieve2d`]: two-dimensional sieves on `P1 x P1` and `E x E`.

pub mod arith;
pub mod elliptic;
pub mod error;
pub mod factor;
pub mod field;
pub mod galois;
pub mod index_calculus;
pub mod linalg;
pub mod poly;
pub mod residue;
pub mod sieve2d;

pub use error::{Error, Result};
pub use factor::{factor, is_irreducible, Factorization};
pub use field::{Field, Fp};
pub use poly::{Degree, Poly};
pub use residue::ResidueRing;

/// Check that `p` is a prime within the trial-division bound.
pub fn ensure_prime(p: u64) -> Result<()> {
    if p > arith::TRIAL_DIVISION_LIMIT || !arith::is_prime_trial(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}
