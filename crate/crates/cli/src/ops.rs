//! Dispatch table: every library operation is reachable as a
//! (module, op) pair with JSON parameters.

use serde_json::{json, Value};

use symcone::algebra::{self, AlgebraDescriptor, Element};
use symcone::boundary::{self, BoundaryPoint};
use symcone::cone::{self, ConePoint};
use symcone::covering::{self, CoveringPoint};
use symcone::error::{Error, Result};
use symcone::indices;
use symcone::json as wire;
use symcone::kkt;
use symcone::linalg::cr;
use symcone::semigroup::{self, WeightFamily};

pub struct Ctx {
    pub seed: u64,
    pub tol: Option<f64>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadRequest(msg.into())
}

fn get<'a>(params: &'a Value, key: &str) -> Result<&'a Value> {
    params.get(key).ok_or_else(|| bad(format!("missing parameter '{key}'")))
}

fn get_f64(params: &Value, key: &str) -> Result<f64> {
    get(params, key)?.as_f64().ok_or_else(|| bad(format!("'{key}' must be a number")))
}

fn get_element(params: &Value, key: &str) -> Result<Element> {
    wire::element_from_json(get(params, key)?)
}

fn get_boundary(params: &Value, key: &str) -> Result<BoundaryPoint> {
    wire::boundary_from_json(get(params, key)?)
}

fn get_covering(params: &Value, key: &str) -> Result<CoveringPoint> {
    wire::covering_from_json(get(params, key)?)
}

fn get_cone_point(params: &Value, key: &str) -> Result<ConePoint> {
    ConePoint::new(get_element(params, key)?)
}

fn get_frame(params: &Value, key: &str) -> Result<Vec<Element>> {
    get(params, key)?
        .as_array()
        .ok_or_else(|| bad(format!("'{key}' must be an array of elements")))?
        .iter()
        .map(wire::element_from_json)
        .collect()
}

fn get_lie_field(params: &Value, key: &str) -> Result<kkt::LieField> {
    let v = get(params, key)?;
    kkt::LieField::new(
        wire::element_from_json(get(v, "u")?)?,
        wire::linop_from_json(get(v, "t")?)?,
        wire::element_from_json(get(v, "v")?)?,
    )
}

fn complex_json(z: symcone::linalg::C64) -> Value {
    json!([z.re, z.im])
}

pub fn dispatch(module: &str, op: &str, params: &Value, ctx: &Ctx) -> Result<Value> {
    match module {
        "algebra" => algebra_ops(op, params),
        "cone" => cone_ops(op, params, ctx),
        "boundary" => boundary_ops(op, params, ctx),
        "indices" => indices_ops(op, params),
        "semigroup" => semigroup_ops(op, params, ctx),
        "cli" => cli_ops(op, params, ctx),
        _ => Err(Error::UnknownOp(format!("{module}/{op}"))),
    }
}

fn algebra_ops(op: &str, params: &Value) -> Result<Value> {
    match op {
        "make_algebra" => {
            let alg = wire::algebra_from_json(params)?;
            Ok(json!({
                "kind": alg.kind().as_str(),
                "r": alg.rank(),
                "n": alg.dim(),
                "d": alg.peirce_d(),
            }))
        }
        "unit" => {
            let alg = wire::algebra_from_json(get(params, "algebra")?)?;
            Ok(wire::element_to_json(&Element::unit(alg)))
        }
        "epsilon_k" => {
            let alg = wire::algebra_from_json(get(params, "algebra")?)?;
            let k = get(params, "k")?.as_u64().ok_or_else(|| bad("k must be an integer"))? as usize;
            if k > alg.rank() {
                return Err(bad(format!("k must be at most the rank {}", alg.rank())));
            }
            Ok(wire::element_to_json(&algebra::epsilon_k(alg, k)))
        }
        "product" => {
            let x = get_element(params, "x")?;
            let y = get_element(params, "y")?;
            Ok(wire::element_to_json(&algebra::product(&x, &y)?))
        }
        "lmul" => Ok(wire::linop_to_json(&algebra::lmul(&get_element(params, "x")?))),
        "quad_rep" => Ok(wire::linop_to_json(&algebra::quad_rep(&get_element(params, "x")?))),
        "quad_apply" => {
            let x = get_element(params, "x")?;
            let y = get_element(params, "y")?;
            Ok(wire::element_to_json(&algebra::quad_apply(&x, &y)?))
        }
        "box" => {
            let x = get_element(params, "x")?;
            let y = get_element(params, "y")?;
            Ok(wire::linop_to_json(&algebra::box_op(&x, &y)?))
        }
        "apply_operator" => {
            let t = wire::linop_from_json(get(params, "operator")?)?;
            let x = get_element(params, "x")?;
            Ok(wire::element_to_json(&t.apply(&x)?))
        }
        "spectral" => {
            let sd = algebra::spectral(&get_element(params, "x")?)?;
            Ok(json!({
                "values": sd.values,
                "frame": sd.frame.iter().map(wire::element_to_json).collect::<Vec<_>>(),
            }))
        }
        "det_tr" => {
            let (d, t) = algebra::det_tr(&get_element(params, "x")?)?;
            Ok(json!({"det": d, "tr": t}))
        }
        "funcalc" => {
            let x = get_element(params, "x")?;
            let f = get(params, "f")?.as_str().ok_or_else(|| bad("f must be a string"))?;
            let y = match f {
                "id" => algebra::funcalc(&x, Ok)?,
                "inverse" => algebra::inverse(&x)?,
                "sqrt" => algebra::power(&x, 0.5)?,
                "exp" => algebra::exp_el(&x)?,
                "log" => algebra::log_el(&x)?,
                "power" => algebra::power(&x, get_f64(params, "p")?)?,
                other => return Err(bad(format!("unknown scalar function '{other}'"))),
            };
            Ok(wire::element_to_json(&y))
        }
        "peirce" => {
            let pd = algebra::peirce(&get_element(params, "c")?)?;
            let dims = pd.dims();
            Ok(json!({
                "e1": wire::linop_to_json(&pd.e1),
                "ehalf": wire::linop_to_json(&pd.ehalf),
                "e0": wire::linop_to_json(&pd.e0),
                "dims": [dims.0, dims.1, dims.2],
            }))
        }
        "cone_classify" => {
            Ok(json!(algebra::cone_classify(&get_element(params, "x")?)?.as_str()))
        }
        "signature_orbit" => Ok(json!(algebra::signature_orbit(&get_element(params, "x")?)?)),
        _ => Err(Error::UnknownOp(format!("algebra/{op}"))),
    }
}

fn cone_ops(op: &str, params: &Value, ctx: &Ctx) -> Result<Value> {
    match op {
        "riemann_metric" => {
            let x = get_cone_point(params, "x")?;
            let u = get_element(params, "u")?;
            let v = get_element(params, "v")?;
            Ok(json!(cone::riemann_metric(&x, &u, &v)?))
        }
        "compound_and_distance" => {
            let x = get_cone_point(params, "x")?;
            let y = get_cone_point(params, "y")?;
            let cd = cone::compound_and_distance(&x, &y)?;
            Ok(json!({"lambdas": cd.lambdas, "mus": cd.mus, "delta": cd.delta}))
        }
        "hilbert_distance" => {
            let x = get_cone_point(params, "x")?;
            let y = get_cone_point(params, "y")?;
            Ok(json!({
                "d": cone::hilbert_distance(&x, &y)?,
                "d_product_form": cone::hilbert_distance_product_form(&x, &y)?,
            }))
        }
        "bushell_solve" => {
            let g = wire::cone_map_from_json(get(params, "g")?)?;
            let p = get_f64(params, "p")?;
            let start = match params.get("start") {
                None | Some(Value::Null) => None,
                Some(v) => Some(ConePoint::new(wire::element_from_json(v)?)?),
            };
            let sol = cone::bushell_solve(&g, p, start.as_ref())?;
            Ok(json!({
                "a": wire::element_to_json(sol.a.element()),
                "iterations": sol.iterations,
                "residual": sol.residual,
            }))
        }
        "compression_apply" => {
            let gamma = wire::compression_from_json(get(params, "gamma")?)?;
            let z = get_element(params, "z")?;
            Ok(wire::element_to_json(&gamma.apply(&z)?))
        }
        "compression_membership" => {
            let gamma = wire::compression_from_json(get(params, "gamma")?)?;
            Ok(json!(cone::compression_membership(&gamma)?.as_str()))
        }
        "compression_factorize" => {
            let gamma = wire::compression_from_json(get(params, "gamma")?)?;
            Ok(wire::factored_to_json(&cone::compression_factorize(&gamma)?))
        }
        "contraction_check" => {
            let gamma = wire::compression_from_json(get(params, "gamma")?)?;
            let x = get_cone_point(params, "x")?;
            let y = get_cone_point(params, "y")?;
            let rep = cone::contraction_check(&gamma, &x, &y)?;
            Ok(json!({
                "membership": rep.membership.as_str(),
                "mus_before": rep.mus_before,
                "mus_after": rep.mus_after,
                "delta_before": rep.delta_before,
                "delta_after": rep.delta_after,
                "weak": rep.weak,
                "strict": rep.strict,
                "delta_ratio": rep.delta_ratio,
            }))
        }
        "contraction_survey" => {
            // uniform-factor estimate over sampled pairs
            let gamma = wire::compression_from_json(get(params, "gamma")?)?;
            let samples = params.get("samples").and_then(Value::as_u64).unwrap_or(100) as usize;
            let mut smp = symcone::sample::Sampler::new(ctx.seed);
            let alg = gamma.algebra();
            let mut kappa: f64 = 0.0;
            let mut weak = true;
            for _ in 0..samples {
                let x = ConePoint::new(smp.interior_point(alg, 0.8))?;
                let y = ConePoint::new(smp.interior_point(alg, 0.8))?;
                let rep = cone::contraction_check(&gamma, &x, &y)?;
                kappa = kappa.max(rep.delta_ratio);
                weak &= rep.weak;
            }
            Ok(json!({"kappa_hat": kappa, "weak_all": weak, "samples": samples}))
        }
        _ => Err(Error::UnknownOp(format!("cone/{op}"))),
    }
}

fn boundary_ops(op: &str, params: &Value, ctx: &Ctx) -> Result<Value> {
    match op {
        "boundary_from_angles" => {
            let frame = get_frame(params, "frame")?;
            let angles: Vec<f64> = get(params, "angles")?
                .as_array()
                .ok_or_else(|| bad("angles must be an array"))?
                .iter()
                .map(|v| v.as_f64().ok_or_else(|| bad("angles must be numbers")))
                .collect::<Result<_>>()?;
            Ok(wire::boundary_to_json(&boundary::boundary_from_angles(&frame, &angles)?))
        }
        "boundary_spectral" => {
            let s = get_boundary(params, "sigma")?;
            let ba = boundary::boundary_spectral(&s)?;
            Ok(json!({
                "frame": ba.frame.iter().map(wire::element_to_json).collect::<Vec<_>>(),
                "angles": ba.angles,
            }))
        }
        "spectral_norm" => {
            let z = get_element(params, "z")?;
            Ok(json!({
                "norm": boundary::spectral_norm(&z),
                "in_disk": boundary::disk_membership(&z),
            }))
        }
        "cayley_p" => Ok(wire::element_to_json(&boundary::cayley_p(&get_element(params, "z")?)?)),
        "cayley_c" => Ok(wire::element_to_json(&boundary::cayley_c(&get_element(params, "w")?)?)),
        "transversal" => {
            let z = get_element(params, "z")?;
            let w = get_element(params, "w")?;
            let result = match ctx.tol {
                // --tol overrides the relative determinant threshold
                Some(t) => {
                    let diff = z.sub(&w)?;
                    let s = boundary::spectral_norm(&diff);
                    let r = z.algebra().rank() as i32;
                    s > 1e-14 && diff.det_c().norm() > t * s.powi(r)
                }
                None => boundary::transversal(&z, &w),
            };
            Ok(json!(result))
        }
        "principal_log" => {
            let s = get_boundary(params, "sigma")?;
            Ok(wire::element_to_json(&boundary::principal_log(&s)?))
        }
        "character_chi" => {
            let g = wire::structure_map_from_json(get(params, "g")?)?;
            Ok(complex_json(boundary::character_chi(&g)))
        }
        "det_cocycle_check" => {
            let g = wire::conformal_from_json(get(params, "g")?)?;
            let s = get_boundary(params, "sigma")?;
            Ok(json!(covering::det_cocycle_check(&g, &s)?))
        }
        "normalize_to_minus_e" => {
            let tau = get_boundary(params, "tau")?;
            let u = boundary::normalize_to_minus_e(&tau)?;
            Ok(wire::structure_map_to_json(&u))
        }
        "apply_structure_map" => {
            let g = wire::structure_map_from_json(get(params, "g")?)?;
            let z = get_element(params, "z")?;
            Ok(wire::element_to_json(&g.apply(&z)?))
        }
        "apply_conformal" => {
            let g = wire::conformal_from_json(get(params, "g")?)?;
            let z = get_element(params, "z")?;
            Ok(wire::element_to_json(&g.apply(&z)?))
        }
        "cover_act" => {
            let lift = wire::lift_from_json(get(params, "lift")?)?;
            let p = get_covering(params, "point")?;
            Ok(wire::covering_to_json(&lift.act(&p)?))
        }
        "lift_compose" => {
            let a = wire::lift_from_json(get(params, "a")?)?;
            let b = wire::lift_from_json(get(params, "b")?)?;
            Ok(wire::lift_to_json(&a.compose(&b)?))
        }
        "kkt_bracket" => {
            let x1 = get_lie_field(params, "x1")?;
            let x2 = get_lie_field(params, "x2")?;
            let b = kkt::kkt_bracket(&x1, &x2)?;
            Ok(json!({
                "u": wire::element_to_json(&b.u),
                "t": wire::linop_to_json(&b.t),
                "v": wire::element_to_json(&b.v),
            }))
        }
        "involutions" => {
            let x = get_lie_field(params, "x")?;
            let s = kkt::involution_sigma_c(&x);
            let t = kkt::involution_theta_c(&x);
            let pack = |f: &kkt::LieField| {
                json!({
                    "u": wire::element_to_json(&f.u),
                    "t": wire::linop_to_json(&f.t),
                    "v": wire::element_to_json(&f.v),
                })
            };
            Ok(json!({"sigma_c": pack(&s), "theta_c": pack(&t)}))
        }
        "cayley_cone_membership" => {
            let x = get_lie_field(params, "x")?;
            Ok(json!(kkt::cayley_cone_membership(&x)?.as_str()))
        }
        _ => Err(Error::UnknownOp(format!("boundary/{op}"))),
    }
}

fn indices_ops(op: &str, params: &Value) -> Result<Value> {
    // index reports echo their inputs
    let mut out = indices_ops_inner(op, params)?;
    if let Some(obj) = out.as_object_mut() {
        obj.insert("inputs".into(), params.clone());
    }
    Ok(out)
}

fn indices_ops_inner(op: &str, params: &Value) -> Result<Value> {
    match op {
        "transversality_index" => {
            let s = get_boundary(params, "sigma")?;
            let t = get_boundary(params, "tau")?;
            let rep = indices::transversality_index(&s, &t)?;
            let rank = indices::transversality_rank(&s, &t)?;
            let mut out = wire::index_report_to_json(&rep);
            out["rank_p"] = json!(rank);
            Ok(out)
        }
        "souriau_index" => {
            let p = get_covering(params, "p")?;
            let q = get_covering(params, "q")?;
            let rep = indices::souriau_index(&p, &q)?;
            let mut out = wire::index_report_to_json(&rep.index);
            out["non_transversal_directions"] = json!(rep.non_transversal_directions);
            Ok(out)
        }
        "maslov_triple" => {
            let s1 = get_boundary(params, "sigma1")?;
            let s2 = get_boundary(params, "sigma2")?;
            let s3 = get_boundary(params, "sigma3")?;
            Ok(wire::index_report_to_json(&indices::maslov_triple(&s1, &s2, &s3)?))
        }
        "arnold_index" => {
            let p = get_covering(params, "p")?;
            let q = get_covering(params, "q")?;
            Ok(wire::index_report_to_json(&indices::arnold_index(&p, &q)?))
        }
        "inertia_index" => {
            let s1 = get_boundary(params, "sigma1")?;
            let s2 = get_boundary(params, "sigma2")?;
            let s3 = get_boundary(params, "sigma3")?;
            Ok(wire::index_report_to_json(&indices::inertia_index(&s1, &s2, &s3)?))
        }
        "arnold_leray_index" => {
            let p = get_covering(params, "p")?;
            let q = get_covering(params, "q")?;
            Ok(wire::index_report_to_json(&indices::arnold_leray_index(&p, &q)?))
        }
        "maslov_stratum" => {
            let s = get_boundary(params, "sigma")?;
            let s0 = get_boundary(params, "sigma0")?;
            let rep = indices::maslov_stratum(&s, &s0)?;
            Ok(json!({"k": rep.k, "codim": rep.codim, "residual": rep.residual}))
        }
        "rotation_number" => {
            let lift = wire::lift_from_json(get(params, "g")?)?;
            let base = get_covering(params, "base")?;
            let k = params.get("k").and_then(Value::as_u64).unwrap_or(1 << 10);
            let rep = indices::rotation_number(&lift, &base, k)?;
            Ok(json!({
                "tau_hat": rep.tau_hat,
                "rho_hat": rep.rho_hat,
                "error_bound": rep.error_bound,
                "c_value": rep.c_value,
            }))
        }
        _ => Err(Error::UnknownOp(format!("indices/{op}"))),
    }
}

fn semigroup_ops(op: &str, params: &Value, ctx: &Ctx) -> Result<Value> {
    match op {
        "kind_info" => {
            let kind = wire::group_kind_from_json(get(params, "kind")?)?;
            Ok(json!({
                "mat_size": kind.mat_size(),
                "hardy_dim": kind.hardy_dim(),
                "hardy_rank": kind.hardy_rank(),
                "kernel_exponent": kind.kernel_exponent(),
                "half_integral": kind.half_integral(),
            }))
        }
        "membership" => {
            let g = wire::semigroup_element_from_json(get(params, "gamma")?)?;
            let rep = semigroup::semigroup_membership(&g)?;
            // --tol overrides the boundary band around zero
            let grade = match ctx.tol {
                Some(t) => {
                    if rep.min_eigenvalue > t {
                        "strict"
                    } else if rep.min_eigenvalue >= -t {
                        "boundary"
                    } else {
                        "outside"
                    }
                }
                None => rep.grade.as_str(),
            };
            Ok(json!({
                "grade": grade,
                "min_eigenvalue": rep.min_eigenvalue,
                "cell_defect": rep.cell_defect,
            }))
        }
        "cayley" => {
            let z = wire::tube_point_from_json(get(params, "z")?)?;
            Ok(wire::semigroup_element_to_json(&semigroup::cayley_c(&z)?))
        }
        "cayley_inverse" => {
            let g = wire::semigroup_element_from_json(get(params, "gamma")?)?;
            Ok(wire::tube_point_to_json(&semigroup::cayley_c_inverse(&g)?))
        }
        "szego_tube" => {
            let z = wire::tube_point_from_json(get(params, "z")?)?;
            let w = wire::tube_point_from_json(get(params, "w")?)?;
            let lam = get_f64(params, "lambda")?;
            Ok(complex_json(semigroup::szego_kernel_tube(&z, &w, lam)?))
        }
        "szego_semigroup" => {
            let g1 = wire::semigroup_element_from_json(get(params, "gamma1")?)?;
            let g2 = wire::semigroup_element_from_json(get(params, "gamma2")?)?;
            Ok(complex_json(semigroup::szego_kernel_semigroup(&g1, &g2)?))
        }
        "bergman" => {
            let g1 = wire::semigroup_element_from_json(get(params, "gamma1")?)?;
            let g2 = wire::semigroup_element_from_json(get(params, "gamma2")?)?;
            Ok(complex_json(semigroup::bergman_kernel(&g1, &g2)?))
        }
        "metaplectic_lift" => {
            let g = wire::semigroup_element_from_json(get(params, "gamma")?)?;
            let sheet = params.get("sheet").and_then(Value::as_i64).unwrap_or(1);
            Ok(wire::semigroup_element_to_json(&semigroup::metaplectic_lift(
                &g,
                if sheet >= 0 { 1 } else { -1 },
            )?))
        }
        "metaplectic_mul" => {
            let a = wire::semigroup_element_from_json(get(params, "a")?)?;
            let b = wire::semigroup_element_from_json(get(params, "b")?)?;
            let prod = semigroup::metaplectic_mul(&a, &b)?;
            let defect = semigroup::branch_defect(&prod)?;
            let mut out = wire::semigroup_element_to_json(&prod);
            out["branch_defect"] = json!(defect);
            Ok(out)
        }
        "intertwiner_pullback" => {
            let z = wire::tube_point_from_json(get(params, "z")?)?;
            let p = get_f64(params, "p")?;
            let fval = match params.get("f") {
                None | Some(Value::Null) => cr(1.0),
                Some(v) => wire::scalar_from_json(v)?,
            };
            let f = move |_: &semigroup::SemigroupElement| Ok(fval);
            Ok(complex_json(semigroup::intertwiner_pullback(&f, p, &z)?))
        }
        "weight_enumerate" => {
            let kind = wire::group_kind_from_json(get(params, "kind")?)?;
            let family = match get(params, "family")?.as_str() {
                Some("sp_even") => WeightFamily::SpEven,
                Some("sp_odd") => WeightFamily::SpOdd,
                Some("so_star_even") => WeightFamily::SoStarEven,
                Some("so_star_odd") => WeightFamily::SoStarOdd,
                Some("upq_dissipative") => WeightFamily::UpqDissipative,
                _ => return Err(bad("unknown weight family")),
            };
            let bound = get(params, "bound")?
                .as_i64()
                .ok_or_else(|| bad("bound must be an integer"))?;
            let weights = semigroup::weight_enumerate(kind, family, bound)?;
            Ok(json!({
                "bracket_lambda": "sum",
                "count": weights.len(),
                "weights": weights.iter().map(wire::weight_to_json).collect::<Vec<_>>(),
            }))
        }
        _ => Err(Error::UnknownOp(format!("semigroup/{op}"))),
    }
}

fn cli_ops(op: &str, params: &Value, ctx: &Ctx) -> Result<Value> {
    match op {
        "list_ops" => Ok(json!(op_catalog()
            .iter()
            .map(|(m, o)| format!("{m}/{o}"))
            .collect::<Vec<_>>())),
        "sample_element" => {
            // deterministic sampled objects, handy for scripting the CLI
            let alg = wire::algebra_from_json(get(params, "algebra")?)?;
            let mut smp = symcone::sample::Sampler::new(ctx.seed);
            let what = params.get("what").and_then(Value::as_str).unwrap_or("real");
            let v = match what {
                "real" => wire::element_to_json(&smp.real_element(alg, 1.0)),
                "interior" => wire::element_to_json(&smp.interior_point(alg, 0.7)),
                "boundary_point" => wire::boundary_to_json(&smp.boundary_point(alg)),
                other => return Err(bad(format!("unknown sample kind '{other}'"))),
            };
            Ok(v)
        }
        "sample_tube_point" => {
            let kind = wire::group_kind_from_json(get(params, "kind")?)?;
            let mut smp = symcone::sample::Sampler::new(ctx.seed);
            Ok(wire::tube_point_to_json(&smp.tube_point(kind, 0.7)))
        }
        _ => Err(Error::UnknownOp(format!("cli/{op}"))),
    }
}

#[allow(dead_code)]
fn unused_type_check(alg: AlgebraDescriptor) -> AlgebraDescriptor {
    alg
}

/// Every (module, op) pair served by [`dispatch`].
pub fn op_catalog() -> Vec<(&'static str, &'static str)> {
    vec![
        ("algebra", "make_algebra"),
        ("algebra", "unit"),
        ("algebra", "epsilon_k"),
        ("algebra", "product"),
        ("algebra", "lmul"),
        ("algebra", "quad_rep"),
        ("algebra", "quad_apply"),
        ("algebra", "box"),
        ("algebra", "apply_operator"),
        ("algebra", "spectral"),
        ("algebra", "det_tr"),
        ("algebra", "funcalc"),
        ("algebra", "peirce"),
        ("algebra", "cone_classify"),
        ("algebra", "signature_orbit"),
        ("cone", "riemann_metric"),
        ("cone", "compound_and_distance"),
        ("cone", "hilbert_distance"),
        ("cone", "bushell_solve"),
        ("cone", "compression_apply"),
        ("cone", "compression_membership"),
        ("cone", "compression_factorize"),
        ("cone", "contraction_check"),
        ("cone", "contraction_survey"),
        ("boundary", "boundary_from_angles"),
        ("boundary", "boundary_spectral"),
        ("boundary", "spectral_norm"),
        ("boundary", "cayley_p"),
        ("boundary", "cayley_c"),
        ("boundary", "transversal"),
        ("boundary", "principal_log"),
        ("boundary", "character_chi"),
        ("boundary", "det_cocycle_check"),
        ("boundary", "normalize_to_minus_e"),
        ("boundary", "apply_structure_map"),
        ("boundary", "apply_conformal"),
        ("boundary", "cover_act"),
        ("boundary", "lift_compose"),
        ("boundary", "kkt_bracket"),
        ("boundary", "involutions"),
        ("boundary", "cayley_cone_membership"),
        ("indices", "transversality_index"),
        ("indices", "souriau_index"),
        ("indices", "maslov_triple"),
        ("indices", "arnold_index"),
        ("indices", "inertia_index"),
        ("indices", "arnold_leray_index"),
        ("indices", "maslov_stratum"),
        ("indices", "rotation_number"),
        ("semigroup", "kind_info"),
        ("semigroup", "membership"),
        ("semigroup", "cayley"),
        ("semigroup", "cayley_inverse"),
        ("semigroup", "szego_tube"),
        ("semigroup", "szego_semigroup"),
        ("semigroup", "bergman"),
        ("semigroup", "metaplectic_lift"),
        ("semigroup", "metaplectic_mul"),
        ("semigroup", "intertwiner_pullback"),
        ("semigroup", "weight_enumerate"),
        ("cli", "list_ops"),
        ("cli", "sample_element"),
        ("cli", "sample_tube_point"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_catalogued_op_is_reachable() {
        let ctx = Ctx { seed: 0, tol: None };
        for (module, op) in op_catalog() {
            match dispatch(module, op, &Value::Null, &ctx) {
                Err(Error::UnknownOp(name)) => panic!("{name} is catalogued but not dispatched"),
                // missing parameters or domain errors are fine here: the
                // route exists
                _ => {}
            }
        }
        // and unknown names are rejected
        assert!(matches!(
            dispatch("algebra", "nope", &Value::Null, &ctx),
            Err(Error::UnknownOp(_))
        ));
    }
}
