//! Metric geometry of the symmetric cone Omega: the invariant Riemannian
//! metric g_x(u,v) = (P(x)^{-1}u | v) with its geodesic distance, the
//! Hilbert projective metric, the Bushell fixed-point solver for
//! g(a) = a^p, and the compression semigroup S_Omega with its
//! N+ G0 N- factorization and contraction estimates.

use nalgebra::DMatrix;

use crate::algebra::{
    self, cone_classify, inverse, power, quad_apply, spectral, AlgebraDescriptor, ConeLocation,
    Element, Kind, LinOp,
};
use crate::error::{Error, Result};
use crate::linalg::{self, C64};
use crate::tol;

/// An interior point of the symmetric cone.
#[derive(Clone, Debug)]
pub struct ConePoint {
    x: Element,
}

impl ConePoint {
    pub fn new(x: Element) -> Result<Self> {
        x.check_real()?;
        if cone_classify(&x)? != ConeLocation::Interior {
            return Err(Error::NotInterior);
        }
        Ok(Self { x })
    }

    pub fn element(&self) -> &Element {
        &self.x
    }
    pub fn algebra(&self) -> AlgebraDescriptor {
        self.x.algebra()
    }
    pub fn unit(alg: AlgebraDescriptor) -> Self {
        Self { x: Element::unit(alg) }
    }
}

/// The invariant Riemannian metric g_x(u, v) = (P(x)^{-1} u | v).
pub fn riemann_metric(x: &ConePoint, u: &Element, v: &Element) -> Result<f64> {
    u.check_real()?;
    v.check_real()?;
    let xinv = inverse(x.element())?;
    let pu = quad_apply(&xinv, u)?;
    Ok(pu.herm_ip(v).re)
}

/// Compound distances and the Riemannian distance of two interior points.
#[derive(Clone, Debug)]
pub struct Compounds {
    /// Spectral values of P(y^{-1/2}) x, descending.
    pub lambdas: Vec<f64>,
    /// mu_k = log^2 lambda_k, descending.
    pub mus: Vec<f64>,
    /// delta = sqrt(sum mu_k).
    pub delta: f64,
}

/// The angles mu_k(x, y) and the geodesic distance delta(x, y).
pub fn compound_and_distance(x: &ConePoint, y: &ConePoint) -> Result<Compounds> {
    x.element().check_same(y.element())?;
    let ymh = power(y.element(), -0.5)?;
    let z = quad_apply(&ymh, x.element())?;
    let sd = spectral(&z)?;
    let mut mus: Vec<f64> = sd.values.iter().map(|l| l.ln() * l.ln()).collect();
    mus.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let delta = mus.iter().sum::<f64>().sqrt();
    Ok(Compounds { lambdas: sd.values, mus, delta })
}

/// Hilbert's projective metric d(x, y) = log(lambda_max / lambda_min) of
/// the spectrum of P(y^{-1/2}) x.
pub fn hilbert_distance(x: &ConePoint, y: &ConePoint) -> Result<f64> {
    let cd = compound_and_distance(x, y)?;
    let lmax = cd.lambdas.first().unwrap();
    let lmin = cd.lambdas.last().unwrap();
    if *lmin <= 0.0 {
        return Err(Error::NotInterior);
    }
    Ok((lmax / lmin).ln())
}

/// The same metric via d = log[lambda_M(x,y) lambda_M(y,x)].
pub fn hilbert_distance_product_form(x: &ConePoint, y: &ConePoint) -> Result<f64> {
    let cd_xy = compound_and_distance(x, y)?;
    let cd_yx = compound_and_distance(y, x)?;
    let m1 = cd_xy.lambdas.first().unwrap();
    let m2 = cd_yx.lambdas.first().unwrap();
    if *m1 <= 0.0 || *m2 <= 0.0 {
        return Err(Error::NotInterior);
    }
    Ok((m1 * m2).ln())
}

/// A linear map of V intended to preserve the open cone. Stores the inverse
/// so that surjectivity onto the cone can be sampled.
#[derive(Clone, Debug)]
pub struct ConeMap {
    op: LinOp,
    inv: LinOp,
}

impl ConeMap {
    pub fn new(op: LinOp) -> Result<Self> {
        if op.complex {
            return Err(Error::ExpectedReal);
        }
        let inv = op.try_inverse()?;
        Ok(Self { op, inv })
    }

    pub fn identity(alg: AlgebraDescriptor) -> Self {
        Self { op: LinOp::identity(alg), inv: LinOp::identity(alg) }
    }

    /// x -> a x a^T on Sym (a real), x -> a x a^* on Herm (a complex).
    pub fn congruence(alg: AlgebraDescriptor, a: &DMatrix<C64>) -> Result<Self> {
        let op = match alg.kind() {
            Kind::SymReal => {
                if a.iter().any(|z| z.im.abs() > 1e-12) {
                    return Err(Error::ExpectedReal);
                }
                LinOp::from_action(alg, |b| {
                    Element::from_matrix(alg, &(a * b.raw() * a.transpose()), false).unwrap()
                })
            }
            Kind::HermComplex => LinOp::from_action(alg, |b| {
                Element::from_matrix(alg, &(a * b.raw() * a.adjoint()), false).unwrap()
            }),
            Kind::Spin => return Err(Error::NotImplementedForKind("congruence on spin factor")),
        };
        ConeMap::new(op)
    }

    /// The quadratic map P(u), a cone automorphism for interior u.
    pub fn quad(u: &ConePoint) -> Result<Self> {
        ConeMap::new(algebra::quad_rep(u.element()))
    }

    /// Rotation automorphism of a spin factor.
    pub fn spin_rotation(alg: AlgebraDescriptor, rot: &DMatrix<f64>) -> Result<Self> {
        if alg.kind() != Kind::Spin {
            return Err(Error::NotImplementedForKind("spin rotation on matrix kind"));
        }
        let sm = crate::boundary::StructureMap::spin_rotation(alg, rot.clone());
        let op = LinOp::from_action(alg, |b| sm.apply(b).unwrap().try_realify().unwrap());
        ConeMap::new(op)
    }

    pub fn compose(&self, other: &ConeMap) -> ConeMap {
        ConeMap { op: self.op.compose(&other.op), inv: other.inv.compose(&self.inv) }
    }

    pub fn inverse_map(&self) -> ConeMap {
        ConeMap { op: self.inv.clone(), inv: self.op.clone() }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.op.apply(x)
    }

    pub fn op(&self) -> &LinOp {
        &self.op
    }

    /// Sampled check that the map carries Omega onto Omega.
    pub fn is_automorphism_sampled(&self, seed: u64, samples: usize) -> bool {
        let alg = self.op.alg;
        let mut smp = crate::sample::Sampler::new(seed);
        for _ in 0..samples {
            let x = smp.interior_point(alg, 0.8);
            let fwd = self.op.apply(&x).and_then(|y| cone_classify(&y));
            let bwd = self.inv.apply(&x).and_then(|y| cone_classify(&y));
            if !matches!(fwd, Ok(ConeLocation::Interior)) || !matches!(bwd, Ok(ConeLocation::Interior)) {
                return false;
            }
        }
        true
    }
}

/// Result of the Bushell fixed-point iteration.
#[derive(Clone, Debug)]
pub struct BushellSolution {
    pub a: ConePoint,
    pub iterations: usize,
    /// |g(a) - a^p| / |a^p|.
    pub residual: f64,
}

/// Solve g(a) = a^p, |p| > 1, by the Hilbert-contractive iteration
/// a <- (g(a))^{1/p}. Iterates are clipped to the interior; convergence is
/// measured in the Hilbert metric (scale free).
pub fn bushell_solve(g: &ConeMap, p: f64, start: Option<&ConePoint>) -> Result<BushellSolution> {
    if p.abs() <= 1.0 {
        return Err(Error::BadExponent(p));
    }
    let alg = g.op.alg;
    if !g.is_automorphism_sampled(0xb115, 4) {
        return Err(Error::DomainError("map does not preserve the cone".into()));
    }
    let mut a = match start {
        Some(s) => s.element().clone(),
        None => Element::unit(alg),
    };
    let invp = 1.0 / p;
    for it in 0..tol::BUSHELL_MAX_ITER {
        let ga = g.apply(&a)?;
        // clip tiny spectral values so the power stays defined
        let sd = spectral(&ga)?;
        let top = sd.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let floor = 1e-13 * (1.0 + top);
        let mut next = Element::zero(alg);
        for (lam, c) in sd.values.iter().zip(&sd.frame) {
            let l = lam.max(floor);
            next = next.add(&c.scale(l.powf(invp)))?;
        }
        let step = hilbert_distance(&ConePoint::new(next.clone())?, &ConePoint::new(a.clone())?)?;
        let rel = next.dist(&a) / (1.0 + a.norm());
        a = next;
        if step < tol::BUSHELL_HILBERT_TOL && rel < 1e-9 {
            let ap = power(&a, p)?;
            let resid = g.apply(&a)?.dist(&ap) / (1.0 + ap.norm());
            if resid > tol::BUSHELL_RESIDUAL_REL {
                return Err(Error::NoConvergence { iters: it + 1, residual: resid });
            }
            return Ok(BushellSolution { a: ConePoint::new(a)?, iterations: it + 1, residual: resid });
        }
    }
    Err(Error::NoConvergence { iters: tol::BUSHELL_MAX_ITER, residual: f64::NAN })
}

/// An element of the conformal group realization acting on the cone by
/// z -> (Az + B)(Cz + D)^{-1}, stored as the full 2s x 2s block matrix.
/// Matrix kinds only; blocks are real for Sym.
#[derive(Clone, Debug)]
pub struct CompressionElement {
    alg: AlgebraDescriptor,
    m: DMatrix<C64>,
}

impl CompressionElement {
    pub fn from_blocks(
        alg: AlgebraDescriptor,
        a: &DMatrix<C64>,
        b: &DMatrix<C64>,
        c: &DMatrix<C64>,
        d: &DMatrix<C64>,
    ) -> Result<Self> {
        if !alg.is_matrix_kind() {
            return Err(Error::NotImplementedForKind("compressions on spin factors"));
        }
        let s = alg.storage_size();
        for blk in [a, b, c, d] {
            if blk.nrows() != s || blk.ncols() != s {
                return Err(Error::SizeMismatch { got: blk.nrows(), expected: s });
            }
        }
        if alg.kind() == Kind::SymReal {
            for blk in [a, b, c, d] {
                if blk.iter().any(|z| z.im.abs() > 1e-10) {
                    return Err(Error::ExpectedReal);
                }
            }
        }
        let mut m = DMatrix::zeros(2 * s, 2 * s);
        m.view_mut((0, 0), (s, s)).copy_from(a);
        m.view_mut((0, s), (s, s)).copy_from(b);
        m.view_mut((s, 0), (s, s)).copy_from(c);
        m.view_mut((s, s), (s, s)).copy_from(d);
        let el = Self { alg, m };
        let defect = el.conformal_defect();
        if defect > tol::CONSTRUCT_TOL * (1.0 + linalg::fro(&el.m).powi(2)) {
            return Err(Error::NotConformal(format!("relation defect {defect:.3e}")));
        }
        Ok(el)
    }

    /// Defect of the defining relation M^* Omega M = Omega,
    /// Omega = [[0, I], [-I, 0]].
    pub fn conformal_defect(&self) -> f64 {
        let s = self.alg.storage_size();
        let mut omega = DMatrix::<C64>::zeros(2 * s, 2 * s);
        for i in 0..s {
            omega[(i, s + i)] = linalg::cr(1.0);
            omega[(s + i, i)] = linalg::cr(-1.0);
        }
        linalg::fro(&(self.m.adjoint() * &omega * &self.m - omega))
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.alg
    }

    pub fn blocks(&self) -> (DMatrix<C64>, DMatrix<C64>, DMatrix<C64>, DMatrix<C64>) {
        let s = self.alg.storage_size();
        (
            self.m.view((0, 0), (s, s)).clone_owned(),
            self.m.view((0, s), (s, s)).clone_owned(),
            self.m.view((s, 0), (s, s)).clone_owned(),
            self.m.view((s, s), (s, s)).clone_owned(),
        )
    }

    /// gamma^+_v : z -> z + v.
    pub fn translation_plus(v: &Element) -> Result<Self> {
        v.check_real()?;
        let alg = v.algebra();
        let s = alg.storage_size();
        let id = DMatrix::<C64>::identity(s, s);
        let z = DMatrix::<C64>::zeros(s, s);
        Self::from_blocks(alg, &id, v.raw(), &z, &id)
    }

    /// gamma^-_v : z -> (z^{-1} + v)^{-1}.
    pub fn translation_minus(v: &Element) -> Result<Self> {
        v.check_real()?;
        let alg = v.algebra();
        let s = alg.storage_size();
        let id = DMatrix::<C64>::identity(s, s);
        let z = DMatrix::<C64>::zeros(s, s);
        Self::from_blocks(alg, &id, &z, v.raw(), &id)
    }

    /// The linear congruence x -> a x a^(T/*) as a block element.
    pub fn linear(alg: AlgebraDescriptor, a: &DMatrix<C64>) -> Result<Self> {
        let s = alg.storage_size();
        let z = DMatrix::<C64>::zeros(s, s);
        let d = match alg.kind() {
            Kind::SymReal => linalg::inverse_c(&a.transpose())?,
            Kind::HermComplex => linalg::inverse_c(&a.adjoint())?,
            Kind::Spin => return Err(Error::NotImplementedForKind("linear block on spin")),
        };
        Self::from_blocks(alg, a, &z, &z, &d)
    }

    pub fn compose(&self, other: &CompressionElement) -> Result<CompressionElement> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(
                self.alg.describe(),
                other.alg.describe(),
            ));
        }
        Ok(CompressionElement { alg: self.alg, m: &self.m * &other.m })
    }

    /// Apply the fractional action to a (real or complex) element.
    pub fn apply(&self, z: &Element) -> Result<Element> {
        if z.algebra() != self.alg {
            return Err(Error::AlgebraMismatch(self.alg.describe(), z.algebra().describe()));
        }
        let (a, b, c, d) = self.blocks();
        let num = &a * z.raw() + &b;
        let den = &c * z.raw() + &d;
        let sv = linalg::singular_values(&den);
        let smax = sv.first().cloned().unwrap_or(0.0);
        if smax == 0.0 || *sv.last().unwrap() <= 1e-12 * smax {
            return Err(Error::SingularAction);
        }
        let res = num * linalg::inverse_c(&den)?;
        let el = Element::from_matrix(self.alg, &res, true)?;
        if z.is_complex() {
            Ok(el)
        } else {
            el.try_realify()
        }
    }
}

/// Membership of a compression element in S_Omega and its distinguished
/// sub-semigroups S_1 = {n+ interior}, S_2 = {n- interior}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CompressionMembership {
    InS,
    InS1,
    InS2,
    InS1andS2,
    NotInS,
}

impl CompressionMembership {
    pub fn as_str(&self) -> &'static str {
        match self {
            CompressionMembership::InS => "in_s",
            CompressionMembership::InS1 => "in_s1",
            CompressionMembership::InS2 => "in_s2",
            CompressionMembership::InS1andS2 => "in_s1_and_s2",
            CompressionMembership::NotInS => "not_in_s",
        }
    }
}

/// The N+ G0 N- factorization gamma = gamma^+_u . (x -> a x a^(T/*)) .
/// gamma^-_v.
#[derive(Clone, Debug)]
pub struct FactoredCompression {
    pub n_plus: Element,
    pub a: DMatrix<C64>,
    pub n_minus: Element,
}

impl FactoredCompression {
    pub fn linear_map(&self, alg: AlgebraDescriptor) -> Result<ConeMap> {
        ConeMap::congruence(alg, &self.a)
    }

    /// Rebuild the block element gamma^+_u g gamma^-_v.
    pub fn rebuild(&self, alg: AlgebraDescriptor) -> Result<CompressionElement> {
        let t_plus = CompressionElement::translation_plus(&self.n_plus)?;
        let lin = CompressionElement::linear(alg, &self.a)?;
        let t_minus = CompressionElement::translation_minus(&self.n_minus)?;
        t_plus.compose(&lin)?.compose(&t_minus)
    }
}

/// Block factorization: u = B D^{-1}, v = D^{-1} C, a = D^{-T} (resp.
/// D^{-*}); requires the D block to be invertible.
pub fn compression_factorize(gamma: &CompressionElement) -> Result<FactoredCompression> {
    let alg = gamma.algebra();
    let (a, b, c, d) = gamma.blocks();
    let sv = linalg::singular_values(&d);
    let smax = sv.first().cloned().unwrap_or(0.0);
    if smax == 0.0 || *sv.last().unwrap() <= 1e-10 * smax {
        return Err(Error::NotFactorizable("D block is singular".into()));
    }
    let dinv = linalg::inverse_c(&d)?;
    let u_mat = &b * &dinv;
    let v_mat = &dinv * &c;
    let a_lin = dinv.adjoint();
    // consistency: A = D^{-*} + B D^{-1} C
    let defect = linalg::fro(&(&a - &a_lin - &u_mat * &c));
    if defect > tol::CONSTRUCT_TOL * (1.0 + linalg::fro(&a)) {
        return Err(Error::NotFactorizable(format!("block consistency defect {defect:.3e}")));
    }
    let n_plus = Element::from_matrix(alg, &u_mat, false)
        .map_err(|_| Error::NotFactorizable("n+ block is not symmetric".into()))?;
    let n_minus = Element::from_matrix(alg, &v_mat, false)
        .map_err(|_| Error::NotFactorizable("n- block is not symmetric".into()))?;
    Ok(FactoredCompression { n_plus, a: a_lin, n_minus })
}

/// Decide membership in S_Omega from the factorization: both n+ and n- must
/// lie in the closed cone; interiority decides S_1 / S_2.
pub fn compression_membership(gamma: &CompressionElement) -> Result<CompressionMembership> {
    let fac = match compression_factorize(gamma) {
        Ok(f) => f,
        Err(_) => return Ok(CompressionMembership::NotInS),
    };
    let loc_u = cone_classify(&fac.n_plus)?;
    let loc_v = cone_classify(&fac.n_minus)?;
    let closed = |l: ConeLocation| matches!(l, ConeLocation::Interior | ConeLocation::Boundary);
    if !closed(loc_u) || !closed(loc_v) {
        return Ok(CompressionMembership::NotInS);
    }
    Ok(match (loc_u, loc_v) {
        (ConeLocation::Interior, ConeLocation::Interior) => CompressionMembership::InS1andS2,
        (ConeLocation::Interior, _) => CompressionMembership::InS1,
        (_, ConeLocation::Interior) => CompressionMembership::InS2,
        _ => CompressionMembership::InS,
    })
}

/// Per-pair contraction report for a compression element.
#[derive(Clone, Debug)]
pub struct ContractionReport {
    pub membership: CompressionMembership,
    pub mus_before: Vec<f64>,
    pub mus_after: Vec<f64>,
    pub delta_before: f64,
    pub delta_after: f64,
    /// mu_k(gx, gy) <= mu_k(x, y) for every k (weak contraction).
    pub weak: bool,
    /// strict decrease of every nonzero mu_k.
    pub strict: bool,
    /// delta(gx, gy) / delta(x, y); the S1 n S2 uniform factor is the
    /// supremum of this over pairs.
    pub delta_ratio: f64,
}

pub fn contraction_check(
    gamma: &CompressionElement,
    x: &ConePoint,
    y: &ConePoint,
) -> Result<ContractionReport> {
    let membership = compression_membership(gamma)?;
    if membership == CompressionMembership::NotInS {
        return Err(Error::NotInSemigroup);
    }
    let before = compound_and_distance(x, y)?;
    let gx = ConePoint::new(gamma.apply(x.element())?)?;
    let gy = ConePoint::new(gamma.apply(y.element())?)?;
    let after = compound_and_distance(&gx, &gy)?;
    let slack = 1e-9 * (1.0 + before.mus[0]);
    let weak = after
        .mus
        .iter()
        .zip(&before.mus)
        .all(|(a, b)| *a <= *b + slack);
    let strict = after
        .mus
        .iter()
        .zip(&before.mus)
        .all(|(a, b)| *b <= slack || *a < *b - 0.0);
    let delta_ratio = if before.delta > 0.0 { after.delta / before.delta } else { 1.0 };
    Ok(ContractionReport {
        membership,
        mus_before: before.mus,
        mus_after: after.mus,
        delta_before: before.delta,
        delta_after: after.delta,
        weak,
        strict,
        delta_ratio,
    })
}
