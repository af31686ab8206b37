use std::sync::OnceLock;

use proptest::prelude::*;

use invsmooth::elliptic::{build_elliptic_residue, velu_quotient, Curve, EndomorphismElement, Point};
use invsmooth::galois::{build_artin_schreier, build_kummer_with, build_torus, torus_add, Representation, TorusPoint};
use invsmooth::index_calculus::FactorBase;
use invsmooth::{factor, Field, Poly, ResidueRing};

const PRIMES: [u64; 6] = [2, 3, 5, 7, 13, 43];

fn reps() -> &'static [Representation; 4] {
    static R: OnceLock<[Representation; 4]> = OnceLock::new();
    R.get_or_init(|| {
        [
            build_kummer_with(43, 6, 3).unwrap(),
            build_artin_schreier(7, 1).unwrap(),
            build_torus(13, 7).unwrap(),
            build_elliptic_residue(11, 7).unwrap().rep,
        ]
    })
}

fn element(kind: usize) -> impl Strategy<Value = Poly> {
    let rep = &reps()[kind];
    let p = rep.p;
    prop::collection::vec(0..p, rep.d).prop_map(move |c| Poly::new(p, c))
}

fn poly_over(max_len: usize) -> impl Strategy<Value = Poly> {
    (0..PRIMES.len(), prop::collection::vec(any::<u64>(), 0..max_len))
        .prop_map(|(i, c)| Poly::new(PRIMES[i], c.into_iter().map(|x| x % PRIMES[i]).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn division_identity(a in poly_over(12), b_raw in prop::collection::vec(any::<u64>(), 1..8)) {
        let p = a.p;
        let b = Poly::new(p, b_raw.into_iter().map(|x| x % p).collect());
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert!(r.deg() < b.deg());
        prop_assert_eq!(&(&q * &b) + &r, a);
    }

    #[test]
    fn factorization_recomposes(a in poly_over(14)) {
        prop_assume!(!a.is_zero());
        let f = factor(&a);
        prop_assert_eq!(f.recompose(a.p), a);
        for (q, e) in &f.factors {
            prop_assert!(q.is_monic() && *e >= 1 && invsmooth::is_irreducible(q));
        }
    }

    #[test]
    fn residue_inverse_and_power(kind in 0..4usize, seed in any::<u64>()) {
        let rep = &reps()[kind];
        let ring = ResidueRing::new(rep.modulus.clone());
        let z = ring.element_at(seed % 1_000_000 + 1);
        let zi = ring.inv(&z).unwrap();
        prop_assert!(ring.mul(&z, &zi).is_one());
        let mut acc = ring.one();
        for _ in 0..rep.p {
            acc = ring.mul(&acc, &z);
        }
        prop_assert_eq!(acc, ring.pow(&z, rep.p as u128));
    }

    #[test]
    fn frobenius_structural_kummer(z in element(0)) { check_frobenius(0, &z)?; }
    #[test]
    fn frobenius_structural_artin_schreier(z in element(1)) { check_frobenius(1, &z)?; }
    #[test]
    fn frobenius_structural_torus(z in element(2)) { check_frobenius(2, &z)?; }
    #[test]
    fn frobenius_structural_elliptic(z in element(3)) { check_frobenius(3, &z)?; }

    #[test]
    fn degree_kummer(a in element(0), b in element(0)) { check_degree(0, &a, &b)?; }
    #[test]
    fn degree_artin_schreier(a in element(1), b in element(1)) { check_degree(1, &a, &b)?; }
    #[test]
    fn degree_torus(a in element(2), b in element(2)) { check_degree(2, &a, &b)?; }
    #[test]
    fn degree_elliptic(a in element(3), b in element(3)) { check_degree(3, &a, &b)?; }

    #[test]
    fn torus_group_law(a in 0..13u64, b in 0..13u64, c in 0..13u64) {
        // D = 2 is a non-residue mod 13, so every [u : 1] is a torus point.
        let (p, d) = (13, 2);
        let (a, b, c) = (TorusPoint::affine(a), TorusPoint::affine(b), TorusPoint::affine(c));
        let ab_c = torus_add(p, d, torus_add(p, d, a, b).unwrap(), c).unwrap();
        let a_bc = torus_add(p, d, a, torus_add(p, d, b, c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert_eq!(torus_add(p, d, a, b).unwrap(), torus_add(p, d, b, a).unwrap());
    }

    #[test]
    fn endomorphism_norm_multiplicative(m1 in -20i64..20, n1 in -5i64..5, m2 in -20i64..20, n2 in -5i64..5) {
        let a = EndomorphismElement::new(m1, n1, 5, 11);
        let b = EndomorphismElement::new(m2, n2, 5, 11);
        prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        prop_assert!(a.norm() >= 0);
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&b).div_exact(&a), Some(b));
        }
    }
}

fn check_frobenius(kind: usize, z: &Poly) -> Result<(), TestCaseError> {
    let rep = &reps()[kind];
    let ring = rep.ring();
    prop_assert_eq!(rep.apply_frobenius(z, 1), ring.pow(z, rep.p as u128));
    Ok(())
}

fn check_degree(kind: usize, a: &Poly, b: &Poly) -> Result<(), TestCaseError> {
    let rep = &reps()[kind];
    let ring = rep.ring();
    let (da, db) = (rep.degree(a), rep.degree(b));
    prop_assert_eq!(rep.degree(&rep.apply_frobenius(a, 1)), da);
    prop_assert!(rep.degree(&ring.mul(a, b)) <= da + db);
    prop_assert!(da <= rep.max_degree());
    Ok(())
}

#[test]
fn orbits_partition_the_basis() {
    for (rep, kappa) in reps().iter().zip([2usize, 1, 2, 2]) {
        let fb = FactorBase::build(rep, kappa).unwrap();
        let mut seen = std::collections::HashSet::new();
        for o in &fb.orbits {
            assert_eq!(rep.d % o.len(), 0, "{:?}", rep.kind);
            for m in &o.members {
                assert!(seen.insert(m.place.clone()));
            }
        }
        let expected = invsmooth::factor::count_irreducible_upto(rep.p, kappa as u64) as usize
            + usize::from(fb.tau_column.is_some());
        assert_eq!(seen.len(), expected);
    }
}

#[test]
fn isogeny_is_a_homomorphism() {
    let c = Curve::from_long(11, [1, 0, 0, 2, 8]).unwrap();
    let pts = c.rational_points();
    let iso = velu_quotient(&c, &pts[1]).unwrap();
    let f = c.fp();
    let g = iso.codomain.fp();
    for a in &pts {
        for b in &pts {
            let lhs = iso.eval(&f, &c.add(&f, a, b));
            let rhs = iso.codomain.add(&g, &iso.eval(&f, a), &iso.eval(&f, b));
            assert_eq!(lhs, rhs);
        }
    }
    // Over the residue field too.
    let r = build_elliptic_residue(11, 7).unwrap();
    let ring = r.ring();
    let b = r.fiber_point();
    let twice = r.isogeny.eval(&ring, &r.curve().add(&ring, &b, &b));
    let img = r.isogeny.eval(&ring, &b);
    assert_eq!(twice, r.isogeny.codomain.add(&ring, &img, &img));
    assert!(!matches!(img, Point::Infinity));
}
