//! Seeded invariant suites for every module, with one named check per
//! documented invariant. The CLI `selftest` command and the acceptance test
//! target both run these.

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DMatrix;

use crate::algebra::{self, AlgebraDescriptor, Element, Kind, LinOp};
use crate::boundary::{self, BoundaryPoint};
use crate::cone::{self, CompressionElement, CompressionMembership, ConePoint};
use crate::covering::{self, ConformalMap, CoveringPoint, Lift};
use crate::error::Result;
use crate::indices;
use crate::kkt;
use crate::linalg::{self, cr, C64};
use crate::sample::Sampler;
use crate::semigroup::{self, GroupKind, MembershipGrade, WeightFamily};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Worst residual observed (exact-integer checks report 0 on success).
    pub worst: f64,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed_s: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Algebra,
    Cone,
    Boundary,
    Indices,
    Semigroup,
    All,
}

impl Suite {
    pub fn from_name(name: &str) -> Option<Suite> {
        Some(match name {
            "algebra" => Suite::Algebra,
            "cone" => Suite::Cone,
            "boundary" => Suite::Boundary,
            "indices" => Suite::Indices,
            "semigroup" => Suite::Semigroup,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

pub fn run(suite: Suite, seed: u64) -> Vec<SuiteReport> {
    match suite {
        Suite::Algebra => vec![algebra_suite(seed)],
        Suite::Cone => vec![cone_suite(seed)],
        Suite::Boundary => vec![boundary_suite(seed)],
        Suite::Indices => vec![indices_suite(seed)],
        Suite::Semigroup => vec![semigroup_suite(seed)],
        Suite::All => vec![
            algebra_suite(seed),
            cone_suite(seed),
            boundary_suite(seed),
            indices_suite(seed),
            semigroup_suite(seed),
        ],
    }
}

struct Acc {
    checks: Vec<Check>,
}

impl Acc {
    fn new() -> Self {
        Self { checks: Vec::new() }
    }

    /// Record a residual-style check: pass iff worst <= bound.
    fn residual(&mut self, name: &str, worst: f64, bound: f64) {
        self.checks.push(Check {
            name: name.into(),
            pass: worst.is_finite() && worst <= bound,
            worst,
            detail: format!("worst {worst:.3e}, bound {bound:.1e}"),
        });
    }

    /// Record an exact check (integer identities, classifications).
    fn exact(&mut self, name: &str, failures: usize, total: usize) {
        self.checks.push(Check {
            name: name.into(),
            pass: failures == 0,
            worst: failures as f64,
            detail: format!("{failures} failures out of {total}"),
        });
    }

    fn error(&mut self, name: &str, err: impl std::fmt::Display) {
        self.checks.push(Check {
            name: name.into(),
            pass: false,
            worst: f64::NAN,
            detail: format!("error: {err}"),
        });
    }
}

fn guard(acc: &mut Acc, name: &str, body: impl FnOnce(&mut Acc) -> Result<()>) {
    if let Err(e) = body(acc) {
        acc.error(name, e);
    }
}

fn jordan_algebras() -> Vec<AlgebraDescriptor> {
    let mut v = Vec::new();
    for r in 2..=6 {
        v.push(AlgebraDescriptor::new(Kind::SymReal, r).unwrap());
    }
    for r in 2..=5 {
        v.push(AlgebraDescriptor::new(Kind::HermComplex, r).unwrap());
    }
    for q in [3, 5, 8, 10] {
        v.push(AlgebraDescriptor::new(Kind::Spin, q).unwrap());
    }
    v
}

fn small_algebras() -> Vec<AlgebraDescriptor> {
    vec![
        AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
        AlgebraDescriptor::new(Kind::SymReal, 3).unwrap(),
        AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        AlgebraDescriptor::new(Kind::HermComplex, 3).unwrap(),
        AlgebraDescriptor::new(Kind::Spin, 4).unwrap(),
        AlgebraDescriptor::new(Kind::Spin, 6).unwrap(),
    ]
}

// ---------------------------------------------------------------- algebra

pub fn algebra_suite(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut acc = Acc::new();
    let mut smp = Sampler::new(seed ^ 0xa16e);

    // Jordan identity and associativity of the trace form: 1000 pairs per
    // algebra, residuals relative to the element norms.
    let mut worst_jordan = 0.0f64;
    let mut worst_assoc = 0.0f64;
    for alg in jordan_algebras() {
        for _ in 0..1000 {
            let x = smp.real_element(alg, 1.0);
            let y = smp.real_element(alg, 1.0);
            let x2 = algebra::square(&x);
            let lhs = algebra::product(&x2, &algebra::product(&x, &y).unwrap()).unwrap();
            let rhs = algebra::product(&x, &algebra::product(&x2, &y).unwrap()).unwrap();
            let scale = x.norm().powi(3) * y.norm() + 1e-30;
            worst_jordan = worst_jordan.max(lhs.dist(&rhs) / scale);
            let z = smp.real_element(alg, 1.0);
            let a = algebra::product(&x, &y).unwrap().herm_ip(&z);
            let b = x.herm_ip(&algebra::product(&y, &z).unwrap());
            let s2 = x.norm() * y.norm() * z.norm() + 1e-30;
            worst_assoc = worst_assoc.max((a - b).norm() / s2);
        }
    }
    acc.residual("jordan_identity", worst_jordan, 1e-9);
    acc.residual("trace_form_associativity", worst_assoc, 1e-9);

    // P(x) e = x^2 and P(x^{-1}) = P(x)^{-1} on interior points.
    let mut worst_pe = 0.0f64;
    let mut worst_pinv = 0.0f64;
    for alg in small_algebras() {
        for _ in 0..40 {
            let x = smp.interior_point(alg, 0.7);
            let px = algebra::quad_rep(&x);
            let e = Element::unit(alg);
            worst_pe = worst_pe
                .max(px.apply(&e).unwrap().dist(&algebra::square(&x)) / (1.0 + x.norm().powi(2)));
            let pinv = algebra::quad_rep(&algebra::inverse(&x).unwrap());
            let pxinv = px.try_inverse().unwrap();
            worst_pinv = worst_pinv.max(pinv.dist(&pxinv) / (1.0 + pxinv.norm()));
        }
    }
    acc.residual("quad_rep_unit", worst_pe, 1e-8);
    acc.residual("quad_rep_inverse", worst_pinv, 1e-8);

    // Spectral reconstruction, frame orthogonality and completeness.
    let mut worst_spectral = 0.0f64;
    for alg in jordan_algebras() {
        for _ in 0..50 {
            let x = smp.real_element(alg, 1.2);
            match algebra::spectral(&x) {
                Ok(sd) => {
                    worst_spectral = worst_spectral.max(sd.reconstruct(alg).dist(&x) / (1.0 + x.norm()));
                    if let Err(e) = algebra::check_frame(&sd.frame) {
                        acc.error("spectral_frame", e);
                        break;
                    }
                }
                Err(e) => {
                    acc.error("spectral_reconstruction", e);
                    break;
                }
            }
        }
    }
    acc.residual("spectral_reconstruction", worst_spectral, 1e-9);

    // Peirce: completeness and the Sym block-dimension table.
    guard(&mut acc, "peirce", |acc| {
        let mut worst = 0.0f64;
        let mut dim_failures = 0usize;
        let mut total = 0usize;
        for r in 2..=5usize {
            let alg = AlgebraDescriptor::new(Kind::SymReal, r)?;
            for p in 1..r {
                let q = r - p;
                let frame = algebra::standard_frame(alg);
                let mut c = Element::zero(alg);
                for cj in frame.iter().take(p) {
                    c = c.add(cj)?;
                }
                let pd = algebra::peirce(&c)?;
                let idsum = pd.e1.add(&pd.ehalf).add(&pd.e0);
                worst = worst.max(idsum.dist(&LinOp::identity(alg)));
                for proj in [&pd.e1, &pd.ehalf, &pd.e0] {
                    worst = worst.max(proj.compose(proj).dist(proj));
                }
                total += 1;
                if pd.dims() != (p * (p + 1) / 2, p * q, q * (q + 1) / 2) {
                    dim_failures += 1;
                }
            }
        }
        acc.residual("peirce_projectors", worst, 1e-9);
        acc.exact("peirce_block_dims", dim_failures, total);
        Ok(())
    });

    // Signature orbit invariance under congruences.
    guard(&mut acc, "signature_orbit_invariance", |acc| {
        let mut failures = 0usize;
        let mut total = 0usize;
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 3)?,
            AlgebraDescriptor::new(Kind::HermComplex, 3)?,
        ] {
            for _ in 0..50 {
                let x = smp.real_element(alg, 1.0);
                let Ok(k) = algebra::signature_orbit(&x) else { continue };
                let a = smp.invertible_matrix(alg.storage_size(), alg.kind() == Kind::HermComplex);
                let conj = match alg.kind() {
                    Kind::SymReal => &a * x.raw() * a.transpose(),
                    _ => &a * x.raw() * a.adjoint(),
                };
                let y = Element::from_matrix(alg, &conj, false)?;
                total += 1;
                if algebra::signature_orbit(&y)? != k {
                    failures += 1;
                }
            }
        }
        acc.exact("signature_orbit_invariance", failures, total);
        Ok(())
    });

    SuiteReport { suite: "algebra".into(), checks: acc.checks, elapsed_s: start.elapsed().as_secs_f64() }
}

// ------------------------------------------------------------------- cone

pub fn cone_suite(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut acc = Acc::new();
    let mut smp = Sampler::new(seed ^ 0xc03e);
    let algs = [
        AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
        AlgebraDescriptor::new(Kind::SymReal, 3).unwrap(),
        AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        AlgebraDescriptor::new(Kind::Spin, 5).unwrap(),
    ];

    // Riemannian distance: sqrt(5) oracle, symmetry, invariance under 100
    // sampled congruence-type automorphisms.
    guard(&mut acc, "distance_oracle", |acc| {
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2)?;
        let x = Element::from_matrix(
            alg,
            &DMatrix::from_row_slice(
                2,
                2,
                &[cr(std::f64::consts::E.powi(2)), cr(0.0), cr(0.0), cr(std::f64::consts::E.powi(-1))],
            ),
            false,
        )?;
        let d = cone::compound_and_distance(&ConePoint::new(x)?, &ConePoint::unit(alg))?.delta;
        acc.residual("distance_sqrt5_oracle", (d - 5.0f64.sqrt()).abs(), 1e-10);
        Ok(())
    });

    guard(&mut acc, "distance_invariance", |acc| {
        let mut worst_sym = 0.0f64;
        let mut worst_inv = 0.0f64;
        for _ in 0..100 {
            let alg = algs[smp.usize_below(algs.len())];
            let x = ConePoint::new(smp.interior_point(alg, 0.6))?;
            let y = ConePoint::new(smp.interior_point(alg, 0.6))?;
            let d = cone::compound_and_distance(&x, &y)?.delta;
            let dr = cone::compound_and_distance(&y, &x)?.delta;
            worst_sym = worst_sym.max((d - dr).abs() / (1.0 + d));
            let g = smp.cone_automorphism(alg);
            let gx = ConePoint::new(g.apply(x.element())?)?;
            let gy = ConePoint::new(g.apply(y.element())?)?;
            let dg = cone::compound_and_distance(&gx, &gy)?.delta;
            worst_inv = worst_inv.max((d - dg).abs() / (1.0 + d));
        }
        acc.residual("distance_symmetry", worst_sym, 1e-9);
        acc.residual("distance_invariance", worst_inv, 1e-7);
        Ok(())
    });

    // Hilbert metric properties (a)-(d) on 1000 random triples/pairs and
    // the two formulas of the characterization.
    guard(&mut acc, "hilbert", |acc| {
        let mut worst_tri = 0.0f64;
        let mut worst_sym = 0.0f64;
        let mut worst_two = 0.0f64;
        let mut worst_ray = 0.0f64;
        for _ in 0..1000 {
            let alg = algs[smp.usize_below(algs.len())];
            let x = ConePoint::new(smp.interior_point(alg, 0.6))?;
            let y = ConePoint::new(smp.interior_point(alg, 0.6))?;
            let z = ConePoint::new(smp.interior_point(alg, 0.6))?;
            let dxy = cone::hilbert_distance(&x, &y)?;
            let dyx = cone::hilbert_distance(&y, &x)?;
            let dxz = cone::hilbert_distance(&x, &z)?;
            let dyz = cone::hilbert_distance(&y, &z)?;
            if dxy < 0.0 {
                worst_tri = f64::INFINITY;
            }
            worst_sym = worst_sym.max((dxy - dyx).abs());
            worst_tri = worst_tri.max(dxz - dxy - dyz);
            worst_two =
                worst_two.max((dxy - cone::hilbert_distance_product_form(&x, &y)?).abs());
            let xs = ConePoint::new(x.element().scale(smp.uniform(0.2, 4.0)))?;
            let ys = ConePoint::new(y.element().scale(smp.uniform(0.2, 4.0)))?;
            worst_ray = worst_ray.max((cone::hilbert_distance(&xs, &ys)? - dxy).abs());
            // d = 0 iff proportional
            let lam = smp.uniform(0.5, 2.0);
            let xprop = ConePoint::new(x.element().scale(lam))?;
            worst_ray = worst_ray.max(cone::hilbert_distance(&x, &xprop)?);
        }
        acc.residual("hilbert_symmetry", worst_sym, 1e-9);
        acc.residual("hilbert_triangle_slack", worst_tri, 1e-9);
        acc.residual("hilbert_two_formulas", worst_two, 1e-10);
        acc.residual("hilbert_ray_invariance", worst_ray, 1e-8);
        Ok(())
    });

    // Bushell: 50 random automorphisms, p in {2, 3, -2}; two random starts
    // agree within 1e-7 in the Hilbert metric; diagonal oracle exact.
    guard(&mut acc, "bushell", |acc| {
        let mut worst_gap = 0.0f64;
        let mut worst_resid = 0.0f64;
        for i in 0..50 {
            let alg = algs[i % algs.len()];
            let g = smp.cone_automorphism(alg);
            for p in [2.0, 3.0, -2.0] {
                let s1 = ConePoint::new(smp.interior_point(alg, 0.5))?;
                let s2 = ConePoint::new(smp.interior_point(alg, 0.5))?;
                let a1 = cone::bushell_solve(&g, p, Some(&s1))?;
                let a2 = cone::bushell_solve(&g, p, Some(&s2))?;
                worst_gap = worst_gap.max(cone::hilbert_distance(&a1.a, &a2.a)?);
                worst_resid = worst_resid.max(a1.residual.max(a2.residual));
            }
        }
        acc.residual("bushell_start_independence", worst_gap, 1e-7);
        acc.residual("bushell_residual", worst_resid, 1e-8);
        // diagonal oracle a_i = t_i^2
        let alg = AlgebraDescriptor::new(Kind::SymReal, 3)?;
        let t = DMatrix::from_row_slice(
            3,
            3,
            &[cr(1.4), cr(0.0), cr(0.0), cr(0.0), cr(0.8), cr(0.0), cr(0.0), cr(0.0), cr(0.5)],
        );
        let g = cone::ConeMap::congruence(alg, &t)?;
        let sol = cone::bushell_solve(&g, 2.0, None)?;
        let expect = Element::from_matrix(
            alg,
            &DMatrix::from_row_slice(
                3,
                3,
                &[
                    cr(1.4 * 1.4),
                    cr(0.0),
                    cr(0.0),
                    cr(0.0),
                    cr(0.8 * 0.8),
                    cr(0.0),
                    cr(0.0),
                    cr(0.0),
                    cr(0.5 * 0.5),
                ],
            ),
            false,
        )?;
        acc.residual("bushell_diagonal_oracle", sol.a.element().dist(&expect), 1e-10);
        Ok(())
    });

    // Contraction theorem cases (1)-(3), 100 samples per case.
    guard(&mut acc, "contraction", |acc| {
        let mut weak_failures = 0usize;
        let mut strict_failures = 0usize;
        let mut kappa_hat = 0.0f64;
        for i in 0..100 {
            let alg = [
                AlgebraDescriptor::new(Kind::SymReal, 2)?,
                AlgebraDescriptor::new(Kind::HermComplex, 2)?,
            ][i % 2];
            let x = ConePoint::new(smp.interior_point(alg, 0.8))?;
            let y = ConePoint::new(smp.interior_point(alg, 0.8))?;
            // case 1: general member (boundary translations allowed)
            let u_bd = smp.boundary_psd(alg, 0.6);
            let g1 = CompressionElement::translation_plus(&u_bd)?;
            let rep = cone::contraction_check(&g1, &x, &y)?;
            if !rep.weak {
                weak_failures += 1;
            }
            // case 2: S1 (strict n+), boundary n-
            let u_in = smp.interior_point(alg, 0.5);
            let g2 = CompressionElement::translation_plus(&u_in)?
                .compose(&CompressionElement::translation_minus(&smp.boundary_psd(alg, 0.4))?)?;
            let rep = cone::contraction_check(&g2, &x, &y)?;
            if !(rep.weak && rep.strict) {
                strict_failures += 1;
            }
            // case 3: S1 n S2
            let g3 = CompressionElement::translation_plus(&smp.interior_point(alg, 0.5))?
                .compose(&CompressionElement::linear(
                    alg,
                    &smp.invertible_matrix(alg.storage_size(), alg.kind() == Kind::HermComplex),
                )?)?
                .compose(&CompressionElement::translation_minus(&smp.interior_point(alg, 0.5))?)?;
            if cone::compression_membership(&g3)? != CompressionMembership::InS1andS2 {
                strict_failures += 1;
                continue;
            }
            let rep = cone::contraction_check(&g3, &x, &y)?;
            kappa_hat = kappa_hat.max(rep.delta_ratio);
            if !rep.weak {
                weak_failures += 1;
            }
        }
        acc.exact("contraction_weak", weak_failures, 100);
        acc.exact("contraction_strict", strict_failures, 100);
        acc.residual("contraction_uniform_kappa", kappa_hat, 1.0 - 1e-9);
        Ok(())
    });

    SuiteReport { suite: "cone".into(), checks: acc.checks, elapsed_s: start.elapsed().as_secs_f64() }
}

// --------------------------------------------------------------- boundary

pub fn boundary_suite(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut acc = Acc::new();
    let mut smp = Sampler::new(seed ^ 0xb0d7);
    let algs = small_algebras();

    // Boundary invariant preserved by construction and by unitaries.
    guard(&mut acc, "boundary_invariant", |acc| {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let alg = algs[smp.usize_below(algs.len())];
            let s = smp.boundary_point(alg);
            let u = smp.structure_unitary(alg);
            let img = u.apply(s.element())?;
            let inv = img.jordan_inverse()?;
            worst = worst.max(inv.dist(&img.conj_eta()));
        }
        acc.residual("boundary_invariant_unitaries", worst, 1e-8);
        Ok(())
    });

    // p(V) lies in S with det(e - sigma) != 0, 100 random real elements.
    guard(&mut acc, "cayley_p_image", |acc| {
        let mut failures = 0usize;
        let mut worst_round = 0.0f64;
        for _ in 0..100 {
            let alg = algs[smp.usize_below(algs.len())];
            let x = smp.real_element(alg, 1.0).complexify();
            let sigma = boundary::cayley_p(&x)?;
            if BoundaryPoint::new(sigma.clone()).is_err()
                || !boundary::transversal(&sigma, &Element::unit(alg).complexify())
            {
                failures += 1;
            }
            // roundtrip on tube points
            let y = smp.interior_point(alg, 0.6);
            let z = smp.real_element(alg, 1.0).complexify().add(&y.scale_c(linalg::I))?;
            let w = boundary::cayley_p(&z)?;
            worst_round = worst_round.max(boundary::cayley_c(&w)?.dist(&z) / (1.0 + z.norm()));
        }
        acc.exact("cayley_p_image_in_s", failures, 100);
        acc.residual("cayley_roundtrip", worst_round, 1e-9);
        Ok(())
    });

    // Principal log properties (i)-(iv).
    guard(&mut acc, "principal_log", |acc| {
        let mut worst = 0.0f64;
        for _ in 0..60 {
            let alg = algs[smp.usize_below(algs.len())];
            let frame = smp.frame(alg);
            let angles: Vec<f64> = (0..alg.rank()).map(|_| smp.uniform(-3.0, 3.0)).collect();
            let s = boundary::boundary_from_angles(&frame, &angles)?;
            let l = boundary::principal_log(&s)?;
            // exp(log sigma) = sigma via functional calculus on -i log
            let u = l.scale_c(C64::new(0.0, -1.0)).try_realify()?;
            let back = algebra::funcalc_c(&u, |t| C64::new(0.0, t).exp())?;
            worst = worst.max(back.dist(s.element()));
            // e^{tr log} = det
            worst = worst.max((l.trace_c().exp() - s.det()).norm());
            // log sigma^{-1} = -log sigma
            let sinv = BoundaryPoint::new(s.element().jordan_inverse()?)?;
            worst = worst.max(boundary::principal_log(&sinv)?.add(&l)?.norm());
            // equivariance under the fixed automorphism orthogonal part is
            // covered by the normalizer independence of the indices suite
        }
        acc.residual("principal_log_properties", worst, 1e-7);
        Ok(())
    });

    // KKT bracket: Jacobi identity on 100 random triples.
    guard(&mut acc, "kkt_jacobi", |acc| {
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let alg = algs[smp.usize_below(algs.len())];
            let mk = |smp: &mut Sampler| {
                let a = smp.real_element(alg, 1.0);
                let b = smp.real_element(alg, 1.0);
                let t = algebra::lmul(&a).add(
                    &algebra::lmul(&b)
                        .compose(&algebra::lmul(&a))
                        .sub(&algebra::lmul(&a).compose(&algebra::lmul(&b))),
                );
                kkt::LieField::new(smp.real_element(alg, 1.0), t, smp.real_element(alg, 1.0))
                    .unwrap()
            };
            let x = mk(&mut smp);
            let y = mk(&mut smp);
            let z = mk(&mut smp);
            let j1 = kkt::kkt_bracket(&x, &kkt::kkt_bracket(&y, &z)?)?;
            let j2 = kkt::kkt_bracket(&y, &kkt::kkt_bracket(&z, &x)?)?;
            let j3 = kkt::kkt_bracket(&z, &kkt::kkt_bracket(&x, &y)?)?;
            let scale = (1.0 + x.norm()) * (1.0 + y.norm()) * (1.0 + z.norm());
            worst = worst.max(j1.add(&j2)?.add(&j3)?.norm() / scale);
        }
        acc.residual("kkt_jacobi", worst, 1e-8);
        Ok(())
    });

    // Covering action: composition law and the determinant cocycle.
    guard(&mut acc, "covering", |acc| {
        let mut worst_act = 0.0f64;
        let mut cocycle_failures = 0usize;
        for _ in 0..40 {
            let alg = [
                AlgebraDescriptor::new(Kind::SymReal, 2)?,
                AlgebraDescriptor::new(Kind::HermComplex, 2)?,
            ][smp.usize_below(2)];
            let g1 = random_conformal(&mut smp, alg)?;
            let g2 = random_conformal(&mut smp, alg)?;
            let l1 = Lift::principal(g1.clone())?;
            let l2 = Lift::principal(g2)?;
            let s = smp.boundary_point(alg);
            let p = smp.covering_point(&s);
            let lhs = l1.compose(&l2)?.act(&p)?;
            let rhs = l1.act(&l2.act(&p)?)?;
            worst_act = worst_act
                .max(lhs.sigma().dist(rhs.sigma()) + (lhs.theta() - rhs.theta()).abs());
            if !covering::det_cocycle_check(&g1, &s)? {
                cocycle_failures += 1;
            }
        }
        acc.residual("cover_action_composition", worst_act, 1e-7);
        acc.exact("det_cocycle", cocycle_failures, 40);
        Ok(())
    });

    SuiteReport { suite: "boundary".into(), checks: acc.checks, elapsed_s: start.elapsed().as_secs_f64() }
}

fn random_conformal(smp: &mut Sampler, alg: AlgebraDescriptor) -> Result<ConformalMap> {
    Ok(match smp.usize_below(3) {
        0 => ConformalMap::Linear(smp.structure_unitary(alg)),
        1 => covering::tube_translation(&smp.real_element(alg, 0.7))?,
        _ => {
            let a = smp.invertible_matrix(alg.storage_size(), alg.kind() == Kind::HermComplex);
            covering::tube_congruence(alg, &a)?
        }
    })
}

// ---------------------------------------------------------------- indices

pub fn indices_suite(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut acc = Acc::new();
    let mut smp = Sampler::new(seed ^ 0x1d1c);

    let rep_algs = vec![
        AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
        AlgebraDescriptor::new(Kind::SymReal, 3).unwrap(),
        AlgebraDescriptor::new(Kind::SymReal, 4).unwrap(),
        AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        AlgebraDescriptor::new(Kind::HermComplex, 3).unwrap(),
        AlgebraDescriptor::new(Kind::Spin, 5).unwrap(),
    ];

    // mu(e, eps_k) = k via both routes; rank formula exact.
    guard(&mut acc, "transversality_representatives", |acc| {
        let mut failures = 0usize;
        let mut total = 0usize;
        for alg in &rep_algs {
            let r = alg.rank();
            let d = alg.peirce_d();
            let e = BoundaryPoint::unit(*alg);
            for k in 0..=r {
                let tau = BoundaryPoint::new(algebra::epsilon_k(*alg, k).complexify())?;
                total += 1;
                let mu = indices::transversality_index(&e, &tau)?.value;
                let mu2 = indices::transversality_index_cayley(&e, &tau)?.value;
                let rank = indices::transversality_rank(&e, &tau)?;
                let j = r - k;
                if mu != k as i64 || mu2 != k as i64 || rank != j + j * j.saturating_sub(1) * d / 2
                {
                    failures += 1;
                }
            }
        }
        acc.exact("transversality_representatives", failures, total);
        Ok(())
    });

    // mu symmetric and conformally invariant.
    guard(&mut acc, "transversality_invariance", |acc| {
        let mut failures = 0usize;
        for _ in 0..50 {
            let alg = [
                AlgebraDescriptor::new(Kind::SymReal, 2)?,
                AlgebraDescriptor::new(Kind::HermComplex, 2)?,
            ][smp.usize_below(2)];
            let s = smp.boundary_point(alg);
            let t = smp.boundary_point(alg);
            let m1 = indices::transversality_index(&s, &t)?.value;
            if indices::transversality_index(&t, &s)?.value != m1 {
                failures += 1;
            }
            let g = random_conformal(&mut smp, alg)?;
            let gs = g.apply_boundary(&s)?;
            let gt = g.apply_boundary(&t)?;
            if indices::transversality_index(&gs, &gt)?.value != m1 {
                failures += 1;
            }
        }
        acc.exact("transversality_invariance", failures, 50);
        Ok(())
    });

    // Maslov normal forms i(e, -e, -i eps_k) = 2k - r, exact.
    guard(&mut acc, "maslov_normal_forms", |acc| {
        let mut failures = 0usize;
        let mut total = 0usize;
        for alg in &rep_algs {
            let r = alg.rank();
            let e = BoundaryPoint::unit(*alg);
            let me = BoundaryPoint::minus_unit(*alg);
            for k in 0..=r {
                let s3 = BoundaryPoint::new(
                    algebra::epsilon_k(*alg, k).complexify().scale_c(C64::new(0.0, -1.0)),
                )?;
                total += 1;
                if indices::maslov_triple(&e, &me, &s3)?.value != 2 * k as i64 - r as i64 {
                    failures += 1;
                }
            }
        }
        acc.exact("maslov_normal_forms", failures, total);
        Ok(())
    });

    // Skew symmetry and the cocycle identity on 200 random transversal
    // triples/quadruples in Sym(2) and Sym(3).
    guard(&mut acc, "maslov_skew_cocycle", |acc| {
        let mut failures = 0usize;
        for i in 0..200 {
            let alg = [
                AlgebraDescriptor::new(Kind::SymReal, 2)?,
                AlgebraDescriptor::new(Kind::SymReal, 3)?,
            ][i % 2];
            let s1 = smp.boundary_point(alg);
            let s2 = smp.boundary_point_transversal(alg, &[&s1]);
            let s3 = smp.boundary_point_transversal(alg, &[&s1, &s2]);
            let s4 = smp.boundary_point_transversal(alg, &[&s1, &s2, &s3]);
            let i123 = indices::maslov_triple(&s1, &s2, &s3)?.value;
            if i123.abs() > alg.rank() as i64
                || indices::maslov_triple(&s2, &s1, &s3)?.value != -i123
                || indices::maslov_triple(&s2, &s3, &s1)?.value != i123
            {
                failures += 1;
            }
            let i124 = indices::maslov_triple(&s1, &s2, &s4)?.value;
            let i234 = indices::maslov_triple(&s2, &s3, &s4)?.value;
            let i314 = indices::maslov_triple(&s3, &s1, &s4)?.value;
            if i123 != i124 + i234 + i314 {
                failures += 1;
            }
        }
        acc.exact("maslov_skew_cocycle", failures, 200);
        Ok(())
    });

    // Souriau: integer on 500 random transversal lifted pairs; Leray
    // reproduces the triple index; coordinate formula exact.
    guard(&mut acc, "souriau", |acc| {
        let mut worst_resid = 0.0f64;
        let mut failures = 0usize;
        let algs = [
            AlgebraDescriptor::new(Kind::SymReal, 2)?,
            AlgebraDescriptor::new(Kind::SymReal, 3)?,
            AlgebraDescriptor::new(Kind::HermComplex, 2)?,
            AlgebraDescriptor::new(Kind::Spin, 4)?,
        ];
        for i in 0..500 {
            let alg = algs[i % algs.len()];
            let s = smp.boundary_point(alg);
            let t = smp.boundary_point_transversal(alg, &[&s]);
            let p = smp.covering_point(&s);
            let q = smp.covering_point(&t);
            let m = indices::souriau_index(&p, &q)?;
            worst_resid = worst_resid.max(m.index.residual);
            if indices::souriau_index(&q, &p)?.index.value != -m.index.value {
                failures += 1;
            }
        }
        acc.residual("souriau_integrality", worst_resid, 1e-6);
        acc.exact("souriau_antisymmetry", failures, 500);

        // Leray formula vs an independent lift choice
        let mut leray_failures = 0usize;
        for _ in 0..50 {
            let alg = AlgebraDescriptor::new(Kind::SymReal, 2)?;
            let s1 = smp.boundary_point(alg);
            let s2 = smp.boundary_point_transversal(alg, &[&s1]);
            let s3 = smp.boundary_point_transversal(alg, &[&s1, &s2]);
            let i = indices::maslov_triple(&s1, &s2, &s3)?.value;
            let p1 = smp.covering_point(&s1);
            let p2 = smp.covering_point(&s2);
            let p3 = smp.covering_point(&s3);
            let v = indices::souriau_index(&p1, &p2)?.index.value
                + indices::souriau_index(&p2, &p3)?.index.value
                + indices::souriau_index(&p3, &p1)?.index.value;
            if v != i {
                leray_failures += 1;
            }
        }
        acc.exact("leray_formula", leray_failures, 50);

        // coordinate formula m = 2k + r - l on constructed configurations
        let mut coord_failures = 0usize;
        let mut total = 0usize;
        for alg in &rep_algs {
            let r = alg.rank();
            let frame = algebra::standard_frame(*alg);
            for l in 0..=r.min(2) {
                for k in [-2i64, 0, 1] {
                    let phis: Vec<f64> = (0..r - l).map(|_| smp.uniform(-3.0, 3.0)).collect();
                    let mut angles = vec![PI; l];
                    angles.extend(phis.iter().cloned());
                    let sigma2 = boundary::boundary_from_angles(&frame, &angles)?;
                    let phi = (-(l as f64) * PI + phis.iter().sum::<f64>()
                        + 2.0 * PI * (k as f64))
                        / r as f64;
                    let p2 = CoveringPoint::new(sigma2, phi)?;
                    let p1 = CoveringPoint::new(BoundaryPoint::minus_unit(*alg), -PI)?;
                    total += 2;
                    if indices::souriau_index(&p1, &p2)?.index.value != 2 * k + r as i64 - l as i64
                    {
                        coord_failures += 1;
                    }
                    if indices::arnold_index(&p1, &p2)?.value != k - l as i64 {
                        coord_failures += 1;
                    }
                }
            }
        }
        acc.exact("souriau_arnold_coordinate_formulas", coord_failures, total);
        Ok(())
    });

    // Inertia: integer 2-cocycle; Arnold-Leray a primitive; 200 4-tuples.
    guard(&mut acc, "inertia", |acc| {
        let mut failures = 0usize;
        for i in 0..200 {
            let alg = [
                AlgebraDescriptor::new(Kind::SymReal, 2)?,
                AlgebraDescriptor::new(Kind::HermComplex, 2)?,
            ][i % 2];
            let s1 = smp.boundary_point(alg);
            let s2 = smp.boundary_point_transversal(alg, &[&s1]);
            let s3 = smp.boundary_point_transversal(alg, &[&s1, &s2]);
            let s4 = smp.boundary_point_transversal(alg, &[&s1, &s2, &s3]);
            let j123 = indices::inertia_index(&s1, &s2, &s3)?.value;
            let j124 = indices::inertia_index(&s1, &s2, &s4)?.value;
            let j134 = indices::inertia_index(&s1, &s3, &s4)?.value;
            let j234 = indices::inertia_index(&s2, &s3, &s4)?.value;
            if j123 - j124 + j134 - j234 != 0 {
                failures += 1;
            }
            let p1 = smp.covering_point(&s1);
            let p2 = smp.covering_point(&s2);
            let p3 = smp.covering_point(&s3);
            let n12 = indices::arnold_leray_index(&p1, &p2)?.value;
            let n13 = indices::arnold_leray_index(&p1, &p3)?.value;
            let n23 = indices::arnold_leray_index(&p2, &p3)?.value;
            if j123 != n12 - n13 + n23 {
                failures += 1;
            }
        }
        acc.exact("inertia_cocycle_primitive", failures, 200);
        Ok(())
    });

    // Rotation number: identity, boundary-fixing elements, unitary parts.
    guard(&mut acc, "rotation_number", |acc| {
        let k_budget = 1u64 << 10;
        let mut worst_fix = 0.0f64;
        let mut worst_unitary = 0.0f64;
        for i in 0..20 {
            let alg = [
                AlgebraDescriptor::new(Kind::SymReal, 2)?,
                AlgebraDescriptor::new(Kind::HermComplex, 2)?,
            ][i % 2];
            let s0 = smp.boundary_point(alg);
            let base = smp.covering_point(&s0);
            if i == 0 {
                let rep = indices::rotation_number(&Lift::deck(alg, 0), &base, k_budget)?;
                acc.residual("rotation_identity", rep.rho_hat.abs(), 1e-12);
            }
            // element fixing a boundary point (Cayley image of a translation)
            let g = Lift::principal(covering::tube_translation(&smp.real_element(alg, 0.7))?)?;
            let rep = indices::rotation_number(&g, &base, k_budget)?;
            worst_fix = worst_fix.max(rep.rho_hat.abs() / rep.error_bound);
            // unitary part: e^{2 pi i rho} close to chi(u)
            let u = smp.structure_unitary(alg);
            let chi = boundary::character_chi(&u);
            let lift = Lift::principal(ConformalMap::Linear(u))?;
            let rep = indices::rotation_number(&lift, &base, k_budget)?;
            let pred = C64::new(0.0, 2.0 * PI * rep.rho_hat).exp();
            worst_unitary =
                worst_unitary.max((pred - chi).norm() / (2.0 * PI * rep.error_bound));
        }
        acc.residual("rotation_fixed_point_bound", worst_fix, 1.0);
        acc.residual("rotation_unitary_character", worst_unitary, 1.0);
        Ok(())
    });

    SuiteReport { suite: "indices".into(), checks: acc.checks, elapsed_s: start.elapsed().as_secs_f64() }
}

// -------------------------------------------------------------- semigroup

pub fn semigroup_suite(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut acc = Acc::new();
    let mut smp = Sampler::new(seed ^ 0x5e31);
    let kinds = vec![
        GroupKind::SpR(1),
        GroupKind::SpR(2),
        GroupKind::SpR(3),
        GroupKind::SOStar(2),
        GroupKind::SOStar(3),
        GroupKind::Upq(1, 1),
        GroupKind::Upq(2, 1),
    ];

    // Cayley roundtrip and strictness of the image, 100 points per kind.
    guard(&mut acc, "cayley", |acc| {
        let mut worst_round = 0.0f64;
        let mut strict_failures = 0usize;
        for kind in &kinds {
            for _ in 0..100 {
                let z = smp.tube_point(*kind, 0.7);
                let gamma = semigroup::cayley_c(&z)?;
                if semigroup::semigroup_membership(&gamma)?.grade != MembershipGrade::Strict {
                    strict_failures += 1;
                }
                let back = semigroup::cayley_c_inverse(&gamma)?;
                worst_round =
                    worst_round.max(back.dist(&z) / (1.0 + linalg::fro(z.matrix())));
            }
        }
        acc.residual("cayley_roundtrip", worst_round, 1e-9);
        acc.exact("cayley_image_strict", strict_failures, 100 * kinds.len());
        Ok(())
    });

    // Strict x Strict products are strict, 200 samples.
    guard(&mut acc, "semigroup_closure", |acc| {
        let mut failures = 0usize;
        for i in 0..200 {
            let kind = kinds[i % kinds.len()];
            let a = semigroup::cayley_c(&smp.tube_point(kind, 0.7))?;
            let b = semigroup::cayley_c(&smp.tube_point(kind, 0.7))?;
            let prod = semigroup::SemigroupElement::new(kind, a.matrix() * b.matrix())?;
            if semigroup::semigroup_membership(&prod)?.grade != MembershipGrade::Strict {
                failures += 1;
            }
        }
        acc.exact("strict_products_strict", failures, 200);
        Ok(())
    });

    // Gram matrices of the kernels are PSD (size 8).
    guard(&mut acc, "kernel_gram", |acc| {
        let mut worst = 0.0f64;
        for kind in &kinds {
            let lam = kind.hardy_dim() as f64 / kind.hardy_rank() as f64;
            let pts: Vec<_> = (0..8).map(|_| smp.tube_point(*kind, 0.3)).collect();
            let mut gram = DMatrix::<C64>::zeros(8, 8);
            for i in 0..8 {
                for j in 0..8 {
                    gram[(i, j)] = semigroup::szego_kernel_tube(&pts[i], &pts[j], lam)?;
                }
            }
            let (vals, _) = linalg::herm_eigen(&gram)?;
            let trace: f64 = vals.iter().sum();
            worst = worst.max(-vals.last().unwrap() / trace);
            let els: Vec<_> = pts
                .iter()
                .map(|z| {
                    let g = semigroup::cayley_c(z).unwrap();
                    if kind.half_integral() {
                        semigroup::metaplectic_lift(&g, 1).unwrap()
                    } else {
                        g
                    }
                })
                .collect();
            let mut gram = DMatrix::<C64>::zeros(8, 8);
            for i in 0..8 {
                for j in 0..8 {
                    gram[(i, j)] = semigroup::szego_kernel_semigroup(&els[i], &els[j])?;
                }
            }
            let (vals, _) = linalg::herm_eigen(&gram)?;
            let trace: f64 = vals.iter().sum();
            worst = worst.max(-vals.last().unwrap() / trace);
        }
        acc.residual("kernel_gram_psd", worst, 1e-8);
        Ok(())
    });

    // Bergman kernel is the square of the odd kernel, 50 pairs.
    guard(&mut acc, "bergman_square", |acc| {
        let mut worst = 0.0f64;
        for i in 0..50 {
            let kind = [GroupKind::SpR(1), GroupKind::SpR(2)][i % 2];
            let sheet: i8 = if smp.uniform(0.0, 1.0) < 0.5 { 1 } else { -1 };
            let g1 =
                semigroup::metaplectic_lift(&semigroup::cayley_c(&smp.tube_point(kind, 0.4))?, 1)?;
            let g2 = semigroup::metaplectic_lift(
                &semigroup::cayley_c(&smp.tube_point(kind, 0.4))?,
                sheet,
            )?;
            let odd = semigroup::szego_kernel_semigroup(&g1, &g2)?;
            let berg = semigroup::bergman_kernel(&g1, &g2)?;
            worst = worst.max((odd * odd - berg).norm() / (1.0 + berg.norm()));
        }
        acc.residual("bergman_is_odd_squared", worst, 1e-10);
        Ok(())
    });

    // Metaplectic branch consistency after chains of 10 products.
    guard(&mut acc, "metaplectic_chains", |acc| {
        let mut worst = 0.0f64;
        for kind in [GroupKind::SpR(1), GroupKind::SpR(2), GroupKind::SOStar(2)] {
            for _ in 0..5 {
                let mut accel = semigroup::metaplectic_lift(
                    &semigroup::cayley_c(&smp.tube_point(kind, 0.4))?,
                    1,
                )?;
                for _ in 0..10 {
                    let sheet: i8 = if smp.uniform(0.0, 1.0) < 0.5 { 1 } else { -1 };
                    let g = semigroup::metaplectic_lift(
                        &semigroup::cayley_c(&smp.tube_point(kind, 0.3))?,
                        sheet,
                    )?;
                    accel = semigroup::metaplectic_mul(&accel, &g)?;
                    worst = worst.max(semigroup::branch_defect(&accel)?);
                }
            }
        }
        acc.residual("metaplectic_branch_chains", worst, 1e-8);
        Ok(())
    });

    // Weight sets: Sp(1) odd oracle and antitone bounds.
    guard(&mut acc, "weights", |acc| {
        let w = semigroup::weight_enumerate(GroupKind::SpR(1), WeightFamily::SpOdd, 3)?;
        let got: Vec<Vec<i64>> = w.iter().map(|h| h.two_lambda.clone()).collect();
        let ok = got == vec![vec![-3], vec![-5]];
        acc.exact("sp1_odd_weight_list", usize::from(!ok), 1);
        let mut failures = 0usize;
        for (kind, fam) in [
            (GroupKind::SpR(2), WeightFamily::SpEven),
            (GroupKind::SpR(2), WeightFamily::SpOdd),
            (GroupKind::SOStar(2), WeightFamily::SoStarEven),
            (GroupKind::SOStar(2), WeightFamily::SoStarOdd),
            (GroupKind::Upq(1, 1), WeightFamily::UpqDissipative),
        ] {
            let small = semigroup::weight_enumerate(kind, fam, 4)?;
            let large = semigroup::weight_enumerate(kind, fam, 6)?;
            if !small.iter().all(|h| large.contains(h)) {
                failures += 1;
            }
        }
        acc.exact("weight_lists_antitone", failures, 5);
        Ok(())
    });

    SuiteReport { suite: "semigroup".into(), checks: acc.checks, elapsed_s: start.elapsed().as_secs_f64() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harness_detects_injected_failures() {
        // a corrupted oracle must fail the suite
        let mut acc = Acc::new();
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let x = Element::unit(alg).scale(std::f64::consts::E);
        let d = cone::compound_and_distance(
            &ConePoint::new(x).unwrap(),
            &ConePoint::unit(alg),
        )
        .unwrap()
        .delta;
        // sign-flipped expectation
        acc.residual("corrupted_distance_oracle", (d + 2.0f64.sqrt()).abs(), 1e-10);
        let report = SuiteReport { suite: "corrupt".into(), checks: acc.checks, elapsed_s: 0.0 };
        assert!(!report.passed());
        // the true expectation passes: delta(e^1 e, e) = sqrt(2) for r = 2
        let mut acc = Acc::new();
        acc.residual("distance_oracle", (d - 2.0f64.sqrt()).abs(), 1e-10);
        assert!(acc.checks[0].pass);
    }

    #[test]
    fn all_suites_pass_on_alternate_seed() {
        for rep in run(Suite::All, 7) {
            for c in &rep.checks {
                assert!(c.pass, "[{}] {} failed: {}", rep.suite, c.name, c.detail);
            }
        }
    }
}
