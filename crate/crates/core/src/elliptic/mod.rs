//! Elliptic curves over `F_p`, Vélu isogenies, curve-based presentations
//! of `F_{p^d}` and the tools the two-dimensional sieve needs (function
//! fields, places, Riemann-Roch spaces, `Z[phi]`).

pub mod curve;
pub mod degree;
pub mod endo;
pub mod funcfield;
pub mod places;
pub mod residue;
pub mod velu;

pub use curve::{count_points_enumerate, count_points_long, curve_search, Curve, CurvePoint, Point};
pub use degree::{function_degree, interpolate, riemann_roch_basis, Interpolation, Monomial};
pub use endo::EndomorphismElement;
pub use funcfield::{FuncElem, FuncField};
pub use places::{divisor, Place, QuadExt};
pub use residue::{build_elliptic_residue, build_elliptic_residue_on, translate_x, EllipticParams, EllipticResidueRep};
pub use velu::{velu_quotient, Isogeny};
