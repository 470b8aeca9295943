//! JSON encodings of the library's types.
//!
//! Elements are encoded as
//! `{"algebra": {"kind": "sym_real"|"herm_complex"|"spin", "r": int,
//! "q": int?}, "complex": bool, "data": [...]}` with matrices row-major and
//! complex scalars as `[re, im]` pairs; real elements use plain numbers.
//! Operators are n x n matrices over the orthonormal coordinate basis
//! (upper-triangle enumeration for Sym, with the imaginary off-diagonal
//! basis appended pairwise for Herm, scaled plain coordinates for spin).

use nalgebra::{DMatrix, DVector};
use serde_json::{json, Map, Value};

use crate::algebra::{AlgebraDescriptor, Element, Kind, LinOp};
use crate::boundary::{self, BoundaryPoint, StructureMap};
use crate::cone::{CompressionElement, ConeMap, FactoredCompression};
use crate::covering::{ConformalMap, CoveringPoint, Lift};
use crate::error::{Error, Result};
use crate::indices::IndexReport;
use crate::linalg::{cr, C64};
use crate::semigroup::{GroupKind, HighestWeight, SemigroupElement, TubePoint};

fn bad(msg: impl Into<String>) -> Error {
    Error::BadRequest(msg.into())
}

pub fn scalar_to_json(z: C64, complex: bool) -> Value {
    if complex {
        json!([z.re, z.im])
    } else {
        json!(z.re)
    }
}

pub fn scalar_from_json(v: &Value) -> Result<C64> {
    if let Some(x) = v.as_f64() {
        return Ok(cr(x));
    }
    let arr = v.as_array().ok_or_else(|| bad("scalar must be a number or [re, im]"))?;
    if arr.len() != 2 {
        return Err(bad("complex scalar must be [re, im]"));
    }
    let re = arr[0].as_f64().ok_or_else(|| bad("re must be a number"))?;
    let im = arr[1].as_f64().ok_or_else(|| bad("im must be a number"))?;
    Ok(C64::new(re, im))
}

pub fn matrix_to_json(m: &DMatrix<C64>, complex: bool) -> Value {
    let rows: Vec<Value> = (0..m.nrows())
        .map(|i| Value::Array((0..m.ncols()).map(|j| scalar_to_json(m[(i, j)], complex)).collect()))
        .collect();
    Value::Array(rows)
}

pub fn matrix_from_json(v: &Value) -> Result<DMatrix<C64>> {
    let rows = v.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
    let n = rows.len();
    if n == 0 {
        return Err(bad("empty matrix"));
    }
    let cols = rows[0].as_array().ok_or_else(|| bad("matrix row must be an array"))?.len();
    let mut m = DMatrix::zeros(n, cols);
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| bad("matrix row must be an array"))?;
        if row.len() != cols {
            return Err(bad("ragged matrix"));
        }
        for (j, val) in row.iter().enumerate() {
            m[(i, j)] = scalar_from_json(val)?;
        }
    }
    Ok(m)
}

pub fn algebra_to_json(alg: AlgebraDescriptor) -> Value {
    match alg.kind() {
        Kind::Spin => json!({"kind": "spin", "r": alg.rank(), "q": alg.storage_size()}),
        k => json!({"kind": k.as_str(), "r": alg.rank()}),
    }
}

pub fn algebra_from_json(v: &Value) -> Result<AlgebraDescriptor> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| bad("algebra.kind must be a string"))?;
    match kind {
        "sym_real" => {
            let r = v.get("r").and_then(Value::as_u64).ok_or_else(|| bad("algebra.r required"))?;
            AlgebraDescriptor::new(Kind::SymReal, r as usize)
        }
        "herm_complex" => {
            let r = v.get("r").and_then(Value::as_u64).ok_or_else(|| bad("algebra.r required"))?;
            AlgebraDescriptor::new(Kind::HermComplex, r as usize)
        }
        "spin" => {
            let q = v.get("q").and_then(Value::as_u64).ok_or_else(|| bad("algebra.q required"))?;
            AlgebraDescriptor::new(Kind::Spin, q as usize)
        }
        other => Err(bad(format!("unknown algebra kind {other}"))),
    }
}

pub fn element_to_json(x: &Element) -> Value {
    let alg = x.algebra();
    // Hermitian matrices have complex entries even as elements of V
    let complex = x.is_complex() || alg.kind() == Kind::HermComplex;
    let data: Vec<Value> = match alg.kind() {
        Kind::Spin => (0..alg.storage_size())
            .map(|i| scalar_to_json(x.raw()[(i, 0)], complex))
            .collect(),
        _ => {
            let m = alg.storage_size();
            (0..m * m)
                .map(|k| scalar_to_json(x.raw()[(k / m, k % m)], complex))
                .collect()
        }
    };
    json!({
        "algebra": algebra_to_json(alg),
        "complex": x.is_complex(),
        "data": Value::Array(data),
    })
}

pub fn element_from_json(v: &Value) -> Result<Element> {
    let alg = algebra_from_json(v.get("algebra").ok_or_else(|| bad("element.algebra required"))?)?;
    let complex = v.get("complex").and_then(Value::as_bool).unwrap_or(false);
    let data = v
        .get("data")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("element.data must be an array"))?;
    match alg.kind() {
        Kind::Spin => {
            let q = alg.storage_size();
            if data.len() != q {
                return Err(Error::SizeMismatch { got: data.len(), expected: q });
            }
            let t = scalar_from_json(&data[0])?;
            let vv = DVector::from_fn(q - 1, |i, _| scalar_from_json(&data[i + 1]).unwrap_or(cr(0.0)));
            for d in data.iter().skip(1) {
                scalar_from_json(d)?;
            }
            Element::from_spin_parts(alg, t, &vv, complex)
        }
        _ => {
            let m = alg.storage_size();
            if data.len() != m * m {
                return Err(Error::SizeMismatch { got: data.len(), expected: m * m });
            }
            let mut mat = DMatrix::zeros(m, m);
            for (k, d) in data.iter().enumerate() {
                mat[(k / m, k % m)] = scalar_from_json(d)?;
            }
            Element::from_matrix(alg, &mat, complex)
        }
    }
}

pub fn linop_to_json(op: &LinOp) -> Value {
    json!({
        "algebra": algebra_to_json(op.alg),
        "complex": op.complex,
        "matrix": matrix_to_json(&op.m, op.complex),
        "basis": "orthonormal-coordinates",
    })
}

pub fn linop_from_json(v: &Value) -> Result<LinOp> {
    let alg = algebra_from_json(v.get("algebra").ok_or_else(|| bad("operator.algebra required"))?)?;
    let complex = v.get("complex").and_then(Value::as_bool).unwrap_or(false);
    let m = matrix_from_json(v.get("matrix").ok_or_else(|| bad("operator.matrix required"))?)?;
    if m.nrows() != alg.dim() || m.ncols() != alg.dim() {
        return Err(Error::SizeMismatch { got: m.nrows(), expected: alg.dim() });
    }
    Ok(LinOp { alg, complex, m })
}

pub fn boundary_to_json(s: &BoundaryPoint) -> Value {
    let mut obj = Map::new();
    obj.insert("element".into(), element_to_json(s.element()));
    if let Ok(ba) = boundary::boundary_spectral(s) {
        obj.insert("angles".into(), json!(ba.angles));
    }
    Value::Object(obj)
}

pub fn boundary_from_json(v: &Value) -> Result<BoundaryPoint> {
    let el = element_from_json(v.get("element").ok_or_else(|| bad("boundary.element required"))?)?;
    BoundaryPoint::new(el)
}

pub fn covering_to_json(p: &CoveringPoint) -> Value {
    json!({"sigma": boundary_to_json(p.sigma()), "theta": p.theta()})
}

pub fn covering_from_json(v: &Value) -> Result<CoveringPoint> {
    let sigma = boundary_from_json(v.get("sigma").ok_or_else(|| bad("covering.sigma required"))?)?;
    let theta = v
        .get("theta")
        .and_then(Value::as_f64)
        .ok_or_else(|| bad("covering.theta must be a number"))?;
    CoveringPoint::new(sigma, theta)
}

pub fn index_report_to_json(r: &IndexReport) -> Value {
    json!({"value": r.value, "residual": r.residual})
}

pub fn structure_map_to_json(u: &StructureMap) -> Value {
    match u {
        StructureMap::SymCongruence { alg, a } => json!({
            "type": "sym_congruence", "algebra": algebra_to_json(*alg),
            "a": matrix_to_json(a, true),
        }),
        StructureMap::HermPair { alg, a, b } => json!({
            "type": "herm_pair", "algebra": algebra_to_json(*alg),
            "a": matrix_to_json(a, true), "b": matrix_to_json(b, true),
        }),
        StructureMap::SpinRotation { alg, rot } => json!({
            "type": "spin_rotation", "algebra": algebra_to_json(*alg),
            "rot": matrix_to_json(&rot.map(cr), false),
        }),
        StructureMap::SpinTorus { alg, n, alpha1, alpha2 } => json!({
            "type": "spin_torus", "algebra": algebra_to_json(*alg),
            "n": n.iter().cloned().collect::<Vec<f64>>(),
            "alpha1": alpha1, "alpha2": alpha2,
        }),
        StructureMap::Scale { alg, factor } => json!({
            "type": "scale", "algebra": algebra_to_json(*alg),
            "factor": [factor.re, factor.im],
        }),
        StructureMap::Chain(maps) => json!({
            "type": "chain",
            "maps": maps.iter().map(structure_map_to_json).collect::<Vec<_>>(),
        }),
    }
}

pub fn structure_map_from_json(v: &Value) -> Result<StructureMap> {
    let ty = v.get("type").and_then(Value::as_str).ok_or_else(|| bad("map.type required"))?;
    let alg = || -> Result<AlgebraDescriptor> {
        algebra_from_json(v.get("algebra").ok_or_else(|| bad("map.algebra required"))?)
    };
    Ok(match ty {
        "sym_congruence" => StructureMap::sym_congruence(
            alg()?,
            matrix_from_json(v.get("a").ok_or_else(|| bad("map.a required"))?)?,
        ),
        "herm_pair" => StructureMap::herm_pair(
            alg()?,
            matrix_from_json(v.get("a").ok_or_else(|| bad("map.a required"))?)?,
            matrix_from_json(v.get("b").ok_or_else(|| bad("map.b required"))?)?,
        ),
        "spin_rotation" => {
            let rot = matrix_from_json(v.get("rot").ok_or_else(|| bad("map.rot required"))?)?;
            StructureMap::spin_rotation(alg()?, rot.map(|z| z.re))
        }
        "spin_torus" => {
            let n = v
                .get("n")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("map.n required"))?
                .iter()
                .map(|x| x.as_f64().ok_or_else(|| bad("map.n entries must be numbers")))
                .collect::<Result<Vec<f64>>>()?;
            StructureMap::spin_torus(
                alg()?,
                DVector::from_vec(n),
                v.get("alpha1").and_then(Value::as_f64).ok_or_else(|| bad("alpha1 required"))?,
                v.get("alpha2").and_then(Value::as_f64).ok_or_else(|| bad("alpha2 required"))?,
            )
        }
        "scale" => {
            let f = scalar_from_json(v.get("factor").ok_or_else(|| bad("factor required"))?)?;
            StructureMap::scale(alg()?, f)
        }
        "chain" => {
            let maps = v
                .get("maps")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("map.maps required"))?
                .iter()
                .map(structure_map_from_json)
                .collect::<Result<Vec<_>>>()?;
            if maps.is_empty() {
                return Err(bad("empty chain"));
            }
            StructureMap::chain(maps)
        }
        other => return Err(bad(format!("unknown structure map type {other}"))),
    })
}

pub fn conformal_to_json(g: &ConformalMap) -> Value {
    match g {
        ConformalMap::Linear(u) => json!({"type": "linear", "map": structure_map_to_json(u)}),
        ConformalMap::Fractional { alg, m } => {
            let s = alg.storage_size();
            json!({
                "type": "fractional",
                "algebra": algebra_to_json(*alg),
                "a": matrix_to_json(&m.view((0, 0), (s, s)).clone_owned(), true),
                "b": matrix_to_json(&m.view((0, s), (s, s)).clone_owned(), true),
                "c": matrix_to_json(&m.view((s, 0), (s, s)).clone_owned(), true),
                "d": matrix_to_json(&m.view((s, s), (s, s)).clone_owned(), true),
            })
        }
    }
}

pub fn conformal_from_json(v: &Value) -> Result<ConformalMap> {
    let ty = v.get("type").and_then(Value::as_str).ok_or_else(|| bad("conformal.type required"))?;
    match ty {
        "linear" => Ok(ConformalMap::Linear(structure_map_from_json(
            v.get("map").ok_or_else(|| bad("conformal.map required"))?,
        )?)),
        "rotation" => {
            let alg = algebra_from_json(v.get("algebra").ok_or_else(|| bad("algebra required"))?)?;
            let alpha =
                v.get("alpha").and_then(Value::as_f64).ok_or_else(|| bad("alpha required"))?;
            Ok(ConformalMap::rotation(alg, alpha))
        }
        "fractional" | "tube_blocks" => {
            let alg = algebra_from_json(v.get("algebra").ok_or_else(|| bad("algebra required"))?)?;
            let a = matrix_from_json(v.get("a").ok_or_else(|| bad("a required"))?)?;
            let b = matrix_from_json(v.get("b").ok_or_else(|| bad("b required"))?)?;
            let c = matrix_from_json(v.get("c").ok_or_else(|| bad("c required"))?)?;
            let d = matrix_from_json(v.get("d").ok_or_else(|| bad("d required"))?)?;
            if ty == "tube_blocks" {
                ConformalMap::from_tube_blocks(alg, &a, &b, &c, &d)
            } else {
                let s = alg.storage_size();
                let mut m = DMatrix::zeros(2 * s, 2 * s);
                m.view_mut((0, 0), (s, s)).copy_from(&a);
                m.view_mut((0, s), (s, s)).copy_from(&b);
                m.view_mut((s, 0), (s, s)).copy_from(&c);
                m.view_mut((s, s), (s, s)).copy_from(&d);
                Ok(ConformalMap::Fractional { alg, m })
            }
        }
        other => Err(bad(format!("unknown conformal map type {other}"))),
    }
}

pub fn lift_to_json(l: &Lift) -> Value {
    json!({"map": conformal_to_json(l.map()), "phi_base": l.phi_base()})
}

pub fn lift_from_json(v: &Value) -> Result<Lift> {
    let map = conformal_from_json(v.get("map").ok_or_else(|| bad("lift.map required"))?)?;
    match v.get("phi_base") {
        None => Lift::principal(map),
        Some(Value::String(s)) if s == "principal" => Lift::principal(map),
        Some(x) => {
            let phi = x.as_f64().ok_or_else(|| bad("phi_base must be a number"))?;
            Lift::new(map, phi)
        }
    }
}

pub fn cone_map_to_json(g: &ConeMap) -> Value {
    json!({"type": "operator", "operator": linop_to_json(g.op())})
}

pub fn cone_map_from_json(v: &Value) -> Result<ConeMap> {
    let ty = v.get("type").and_then(Value::as_str).ok_or_else(|| bad("cone_map.type required"))?;
    match ty {
        "congruence" => {
            let alg = algebra_from_json(v.get("algebra").ok_or_else(|| bad("algebra required"))?)?;
            ConeMap::congruence(alg, &matrix_from_json(v.get("a").ok_or_else(|| bad("a required"))?)?)
        }
        "quad" => {
            let u = element_from_json(v.get("u").ok_or_else(|| bad("u required"))?)?;
            ConeMap::quad(&crate::cone::ConePoint::new(u)?)
        }
        "spin_rotation" => {
            let alg = algebra_from_json(v.get("algebra").ok_or_else(|| bad("algebra required"))?)?;
            let rot = matrix_from_json(v.get("rot").ok_or_else(|| bad("rot required"))?)?;
            ConeMap::spin_rotation(alg, &rot.map(|z| z.re))
        }
        "operator" => {
            ConeMap::new(linop_from_json(v.get("operator").ok_or_else(|| bad("operator required"))?)?)
        }
        other => Err(bad(format!("unknown cone map type {other}"))),
    }
}

pub fn compression_to_json(g: &CompressionElement) -> Value {
    let (a, b, c, d) = g.blocks();
    json!({
        "algebra": algebra_to_json(g.algebra()),
        "a": matrix_to_json(&a, true),
        "b": matrix_to_json(&b, true),
        "c": matrix_to_json(&c, true),
        "d": matrix_to_json(&d, true),
    })
}

pub fn compression_from_json(v: &Value) -> Result<CompressionElement> {
    let alg = algebra_from_json(v.get("algebra").ok_or_else(|| bad("algebra required"))?)?;
    let a = matrix_from_json(v.get("a").ok_or_else(|| bad("a required"))?)?;
    let b = matrix_from_json(v.get("b").ok_or_else(|| bad("b required"))?)?;
    let c = matrix_from_json(v.get("c").ok_or_else(|| bad("c required"))?)?;
    let d = matrix_from_json(v.get("d").ok_or_else(|| bad("d required"))?)?;
    CompressionElement::from_blocks(alg, &a, &b, &c, &d)
}

pub fn factored_to_json(f: &FactoredCompression) -> Value {
    let alg = f.n_plus.algebra();
    let g = f.linear_map(alg).map(|m| linop_to_json(m.op())).unwrap_or(Value::Null);
    json!({
        "n_plus": element_to_json(&f.n_plus),
        "g": g,
        "g_matrix": matrix_to_json(&f.a, true),
        "n_minus": element_to_json(&f.n_minus),
    })
}

pub fn group_kind_to_json(k: GroupKind) -> Value {
    match k {
        GroupKind::SpR(r) => json!({"group": "sp", "r": r}),
        GroupKind::SOStar(l) => json!({"group": "so_star", "l": l}),
        GroupKind::Upq(p, q) => json!({"group": "upq", "p": p, "q": q}),
    }
}

pub fn group_kind_from_json(v: &Value) -> Result<GroupKind> {
    let g = v.get("group").and_then(Value::as_str).ok_or_else(|| bad("kind.group required"))?;
    let kind = match g {
        "sp" => GroupKind::SpR(
            v.get("r").and_then(Value::as_u64).ok_or_else(|| bad("kind.r required"))? as usize,
        ),
        "so_star" => GroupKind::SOStar(
            v.get("l").and_then(Value::as_u64).ok_or_else(|| bad("kind.l required"))? as usize,
        ),
        "upq" => GroupKind::Upq(
            v.get("p").and_then(Value::as_u64).ok_or_else(|| bad("kind.p required"))? as usize,
            v.get("q").and_then(Value::as_u64).ok_or_else(|| bad("kind.q required"))? as usize,
        ),
        other => return Err(bad(format!("unknown group {other}"))),
    };
    kind.validate()?;
    Ok(kind)
}

pub fn semigroup_element_to_json(g: &SemigroupElement) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), group_kind_to_json(g.kind()));
    obj.insert("gamma".into(), matrix_to_json(g.matrix(), true));
    if let Some(w) = g.branch() {
        obj.insert("w".into(), json!([w.re, w.im]));
    }
    Value::Object(obj)
}

pub fn semigroup_element_from_json(v: &Value) -> Result<SemigroupElement> {
    let kind = group_kind_from_json(v.get("kind").ok_or_else(|| bad("element.kind required"))?)?;
    let gamma = matrix_from_json(v.get("gamma").ok_or_else(|| bad("element.gamma required"))?)?;
    let el = SemigroupElement::new(kind, gamma)?;
    match v.get("w") {
        None | Some(Value::Null) => Ok(el),
        Some(w) => {
            let w = scalar_from_json(w)?;
            el.with_branch(w)
        }
    }
}

pub fn tube_point_to_json(z: &TubePoint) -> Value {
    json!({
        "kind": group_kind_to_json(z.kind()),
        "z": matrix_to_json(z.matrix(), true),
        "on_singular_set": z.on_singular_set(),
    })
}

pub fn tube_point_from_json(v: &Value) -> Result<TubePoint> {
    let kind = group_kind_from_json(v.get("kind").ok_or_else(|| bad("tube.kind required"))?)?;
    let z = matrix_from_json(v.get("z").ok_or_else(|| bad("tube.z required"))?)?;
    TubePoint::new(kind, z)
}

pub fn weight_to_json(w: &HighestWeight) -> Value {
    let mut obj = Map::new();
    if w.half_integral {
        obj.insert("lambda_times_2".into(), json!(w.two_lambda));
    } else {
        let lam: Vec<i64> = w.two_lambda.iter().map(|x| x / 2).collect();
        obj.insert("lambda".into(), json!(lam));
    }
    obj.insert("is_half".into(), json!(w.half_integral));
    if let Some(k) = w.charge {
        obj.insert("k".into(), json!(k));
    }
    Value::Object(obj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    #[test]
    fn element_roundtrip() {
        let mut smp = Sampler::new(61);
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 3).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
            AlgebraDescriptor::new(Kind::Spin, 5).unwrap(),
        ] {
            let x = smp.real_element(alg, 1.0);
            let v = element_to_json(&x);
            let y = element_from_json(&v).unwrap();
            assert!(x.dist(&y) < 1e-14);
            assert!(!y.is_complex());
            let z = smp.complex_element(alg, 1.0);
            let v = element_to_json(&z);
            let y = element_from_json(&v).unwrap();
            assert!(z.dist(&y) < 1e-14);
            assert!(y.is_complex());
        }
    }

    #[test]
    fn semigroup_roundtrip() {
        let mut smp = Sampler::new(62);
        let kind = GroupKind::SpR(1);
        let z = smp.tube_point(kind, 0.5);
        let v = tube_point_to_json(&z);
        let z2 = tube_point_from_json(&v).unwrap();
        assert!(z.dist(&z2) < 1e-12);
        let g = crate::semigroup::metaplectic_lift(&crate::semigroup::cayley_c(&z).unwrap(), 1)
            .unwrap();
        let v = semigroup_element_to_json(&g);
        let g2 = semigroup_element_from_json(&v).unwrap();
        assert!(g.dist(&g2) < 1e-12);
        assert!((g.branch().unwrap() - g2.branch().unwrap()).norm() < 1e-12);
    }

    #[test]
    fn boundary_and_covering_roundtrip() {
        let mut smp = Sampler::new(63);
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let s = smp.boundary_point(alg);
        let p = smp.covering_point(&s);
        let v = covering_to_json(&p);
        let p2 = covering_from_json(&v).unwrap();
        assert!(p.sigma().dist(p2.sigma()) < 1e-12);
        assert!((p.theta() - p2.theta()).abs() < 1e-12);
    }

    #[test]
    fn bad_inputs_are_schema_errors() {
        let v = json!({"algebra": {"kind": "nope", "r": 2}, "complex": false, "data": []});
        let e = element_from_json(&v).unwrap_err();
        assert_eq!(e.category(), crate::error::ErrorCategory::Schema);
    }
}
