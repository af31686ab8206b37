//! Two-dimensional sieves: `P1 x P1` with the curves `y = f(x)` and
//! `x = g(y)`, and `E x E` with the graphs of two endomorphisms.

mod ee;
mod jl;

pub use ee::{
    ee_setup, ee_setup_on, ee_sieve, endomorphism_search, graph_points, linear_system_ee, verify_relation, EERelation,
    EESetup, EESieveOutput, LinearSystem, PlaceEntry, Restrictor,
};
pub use jl::{jl_relation, jl_setup, jl_sieve, JLSetup, Relation2D};

use serde::{Deserialize, Serialize};

use crate::elliptic::EndomorphismElement;

/// Bidegree of a divisor on `P1 x P1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NSClassP1P1 {
    pub dx: i64,
    pub dy: i64,
}

/// `D.E = dx(E) dy(D) + dx(D) dy(E)`.
pub fn intersection_form_p1p1(a: NSClassP1P1, b: NSClassP1P1) -> i64 {
    b.dx * a.dy + a.dx * b.dy
}

/// Class on `E x E`: bidegree and the induced endomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NSClassEE {
    pub d1: i64,
    pub d2: i64,
    pub xi: EndomorphismElement,
}

impl NSClassEE {
    pub fn new(d1: i64, d2: i64, xi: EndomorphismElement) -> Self {
        NSClassEE { d1, d2, xi }
    }

    /// `d1 d2 >= norm(xi) + 1`, the condition for the class to move.
    pub fn is_effective(&self) -> bool {
        self.d1 >= 1 && self.d2 >= 1 && self.d1 * self.d2 > self.xi.norm()
    }

    /// Dimension count of the functions in `L((d1+N)O) x L((d2+1)O)`
    /// vanishing on the graph of `-xi`, with `N = norm(xi)`.
    pub fn expected_dimension(&self) -> i64 {
        let n = self.xi.norm();
        (self.d1 + n) * (self.d2 + 1) - (self.d1 + n + (self.d2 + 1) * n)
    }
}

/// `(D.A, D.B)` for `A` of class `(norm a, 1, a)` and `B` of class
/// `(1, norm b, conj b)`.
pub fn intersection_degrees_ee(c: &NSClassEE, alpha: &EndomorphismElement, beta: &EndomorphismElement) -> (i64, i64) {
    let da = c.d1 + c.d2 * alpha.norm() - c.xi.mul(&alpha.conj()).trace();
    let db = c.d1 * beta.norm() + c.d2 - c.xi.mul(&beta.conj()).trace();
    (da, db)
}
