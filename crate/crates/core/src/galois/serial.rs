//! JSON form of a [`Representation`]:
//! `{p, d, kind, A, frobenius: {variant, params}, params}`.
//! Polynomials are coefficient arrays, lowest degree first.

use serde_json::{json, Value};

use crate::elliptic::{Curve, CurvePoint, EllipticParams, Point};
use crate::error::{Error, Result};
use crate::galois::{FrobeniusMap, RepKind, RepParams, Representation, TorusConvention};
use crate::poly::Poly;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field `{key}`")))
}

fn get_u64(v: &Value, key: &str) -> Result<u64> {
    let f = get(v, key)?;
    f.as_u64()
        .or_else(|| f.as_str().and_then(|s| s.parse().ok()))
        .ok_or_else(|| bad(format!("field `{key}` is not a non-negative integer")))
}

pub fn poly_from_json(p: u64, v: &Value) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| bad("polynomial must be an array of coefficients"))?;
    let coeffs = arr
        .iter()
        .map(|c| {
            c.as_i64()
                .map(|x| x.rem_euclid(p as i64) as u64)
                .or_else(|| c.as_u64().map(|x| x % p))
                .ok_or_else(|| bad("polynomial coefficients must be integers"))
        })
        .collect::<Result<Vec<u64>>>()?;
    Ok(Poly::new(p, coeffs))
}

pub fn point_to_json(pt: &CurvePoint) -> Value {
    match pt {
        Point::Infinity => Value::Null,
        Point::Affine(x, y) => json!([x, y]),
    }
}

pub fn point_from_json(p: u64, v: &Value) -> Result<CurvePoint> {
    if v.is_null() {
        return Ok(Point::Infinity);
    }
    match v.as_array().map(|a| a.as_slice()) {
        Some([x, y]) => match (x.as_u64(), y.as_u64()) {
            (Some(x), Some(y)) => Ok(Point::Affine(x % p, y % p)),
            _ => Err(bad("point coordinates must be integers")),
        },
        _ => Err(bad("point must be null or [x, y]")),
    }
}

fn convention_name(c: TorusConvention) -> &'static str {
    match c {
        TorusConvention::MinusM => "minus",
        TorusConvention::PlusM => "plus",
    }
}

impl Representation {
    pub fn to_json(&self) -> Value {
        let frobenius = match &self.frobenius {
            FrobeniusMap::Affine { u, v } => json!({"variant": "Affine", "params": {"u": u, "v": v}}),
            FrobeniusMap::Homography { tau, d } => json!({"variant": "Homography", "params": {"tau": tau, "D": d}}),
            FrobeniusMap::CurveTranslation { t, image } => json!({
                "variant": "CurveTranslation",
                "params": {"t": [t.0, t.1], "image": image},
            }),
        };
        let params = match &self.params {
            RepParams::Kummer { r, zeta, m } => json!({"r": r, "zeta": zeta, "m": m}),
            RepParams::ArtinSchreier { a, c } => json!({"a": a, "c": c}),
            RepParams::Torus { nonresidue, u_r, m, tau, convention } => json!({
                "D": nonresidue, "u_r": u_r, "m": m, "tau": tau,
                "convention": convention_name(*convention),
            }),
            RepParams::EllipticResidue(ep) => json!({
                "curve": {"long": ep.curve.long, "a": ep.curve.a, "b": ep.curve.b, "order": ep.curve.order},
                "kernel_gen": point_to_json(&ep.kernel_gen),
                "target": point_to_json(&ep.target),
                "t_star": point_to_json(&ep.t_star),
                "fiber_y": ep.fiber_y,
            }),
        };
        json!({
            "p": self.p,
            "d": self.d,
            "kind": self.kind.name(),
            "A": self.modulus,
            "frobenius": frobenius,
            "params": params,
        })
    }

    /// Parse the JSON form. Only the shape is checked here; call
    /// [`Representation::verify`] to check the mathematics.
    pub fn from_json(v: &Value) -> Result<Representation> {
        let p = get_u64(v, "p")?;
        crate::ensure_prime(p)?;
        let d = get_u64(v, "d")? as usize;
        let kind_name = get(v, "kind")?.as_str().ok_or_else(|| bad("`kind` must be a string"))?;
        let kind = RepKind::from_name(kind_name).ok_or_else(|| bad(format!("unknown kind `{kind_name}`")))?;
        let modulus = poly_from_json(p, get(v, "A")?)?;
        if modulus.deg() != d as isize || !modulus.is_monic() {
            return Err(bad(format!("A must be monic of degree {d}")));
        }
        let fr = get(v, "frobenius")?;
        let fp = get(fr, "params")?;
        let variant = get(fr, "variant")?.as_str().unwrap_or_default();
        let frobenius = match variant {
            "Affine" => FrobeniusMap::Affine { u: get_u64(fp, "u")? % p, v: get_u64(fp, "v")? % p },
            "Homography" => FrobeniusMap::Homography { tau: get_u64(fp, "tau")? % p, d: get_u64(fp, "D")? % p },
            "CurveTranslation" => {
                let t = match point_from_json(p, get(fp, "t")?)? {
                    Point::Affine(x, y) => (x, y),
                    Point::Infinity => return Err(bad("translation point must be affine")),
                };
                FrobeniusMap::CurveTranslation { t, image: poly_from_json(p, get(fp, "image")?)? }
            }
            other => return Err(bad(format!("unknown Frobenius variant `{other}`"))),
        };
        let pr = get(v, "params")?;
        let params = match kind {
            RepKind::Kummer => RepParams::Kummer { r: get_u64(pr, "r")?, zeta: get_u64(pr, "zeta")?, m: get_u64(pr, "m")? },
            RepKind::ArtinSchreier => RepParams::ArtinSchreier { a: get_u64(pr, "a")?, c: get_u64(pr, "c")? },
            RepKind::Torus => RepParams::Torus {
                nonresidue: get_u64(pr, "D")?,
                u_r: get_u64(pr, "u_r")?,
                m: get_u64(pr, "m")?,
                tau: get_u64(pr, "tau")?,
                convention: match get(pr, "convention")?.as_str() {
                    Some("minus") => TorusConvention::MinusM,
                    Some("plus") => TorusConvention::PlusM,
                    _ => return Err(bad("convention must be \"minus\" or \"plus\"")),
                },
            },
            RepKind::EllipticResidue => {
                let c = get(pr, "curve")?;
                let long: Vec<u64> = get(c, "long")?
                    .as_array()
                    .filter(|a| a.len() == 5)
                    .ok_or_else(|| bad("curve.long must have five coefficients"))?
                    .iter()
                    .map(|x| x.as_u64().ok_or_else(|| bad("curve coefficients must be integers")))
                    .collect::<Result<_>>()?;
                let curve = Curve::from_long(p, [long[0], long[1], long[2], long[3], long[4]])?;
                if curve.order != get_u64(c, "order")? {
                    return Err(bad("stored group order does not match the curve"));
                }
                RepParams::EllipticResidue(Box::new(EllipticParams {
                    curve,
                    kernel_gen: point_from_json(p, get(pr, "kernel_gen")?)?,
                    target: point_from_json(p, get(pr, "target")?)?,
                    t_star: point_from_json(p, get(pr, "t_star")?)?,
                    fiber_y: poly_from_json(p, get(pr, "fiber_y")?)?,
                }))
            }
        };
        Ok(Representation { p, d, kind, modulus, frobenius, params })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elliptic::build_elliptic_residue;
    use crate::galois::{build_artin_schreier, build_kummer, build_torus};

    #[test]
    fn roundtrip_all_kinds() {
        let reps = vec![
            build_kummer(43, 6).unwrap(),
            build_artin_schreier(7, 1).unwrap(),
            build_torus(13, 7).unwrap(),
            build_elliptic_residue(11, 7).unwrap().rep,
        ];
        for rep in reps {
            let text = serde_json::to_string(&rep.to_json()).unwrap();
            let back = Representation::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
            assert_eq!(back, rep);
            back.verify().unwrap();
        }
    }

    #[test]
    fn kummer_layout() {
        let v = build_kummer(43, 6).unwrap().to_json();
        assert_eq!(v["A"], json!([40, 0, 0, 0, 0, 0, 1]));
        assert_eq!(v["kind"], "kummer");
        assert_eq!(v["frobenius"]["params"]["u"], 37);
    }

    #[test]
    fn rejects_malformed() {
        let mut v = build_kummer(43, 6).unwrap().to_json();
        v["A"] = json!([1, 2, 3]);
        assert!(Representation::from_json(&v).is_err());
        assert!(Representation::from_json(&json!({"p": 42})).is_err());
    }
}
