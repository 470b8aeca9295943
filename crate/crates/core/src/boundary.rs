//! The complexified algebra V_C, its Shilov boundary S = {sigma : sigma^{-1}
//! = conj(sigma)}, spectral norm and unit ball D, the Cayley transforms
//! p(z) = (z - ie)(z + ie)^{-1} and c(w) = i(e + w)(e - w)^{-1}, principal
//! logarithms, and the structure unitaries used to normalize boundary
//! points.

use nalgebra::{DMatrix, DVector};

use crate::algebra::{self, AlgebraDescriptor, Element, Kind, LinOp};
use crate::error::{Error, Result};
use crate::linalg::{self, c, cr, C64};
use crate::tol;

use std::f64::consts::PI;

/// A point of the Shilov boundary S.
#[derive(Clone, Debug)]
pub struct BoundaryPoint {
    z: Element,
}

impl BoundaryPoint {
    /// Validates sigma^{-1} = conj(sigma).
    pub fn new(z: Element) -> Result<Self> {
        let z = z.complexify();
        let inv = z.jordan_inverse().map_err(|_| {
            Error::DomainError("boundary candidate is singular".into())
        })?;
        let defect = inv.dist(&z.conj_eta());
        if defect > tol::CONSTRUCT_TOL * (1.0 + z.norm()) {
            return Err(Error::DomainError(format!(
                "not a boundary point (defect {defect:.3e})"
            )));
        }
        Ok(Self { z })
    }

    pub fn element(&self) -> &Element {
        &self.z
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        self.z.algebra()
    }

    pub fn unit(alg: AlgebraDescriptor) -> Self {
        Self { z: Element::unit(alg).complexify() }
    }

    pub fn minus_unit(alg: AlgebraDescriptor) -> Self {
        Self { z: Element::unit(alg).neg().complexify() }
    }

    pub fn det(&self) -> C64 {
        self.z.det_c()
    }

    pub fn dist(&self, other: &BoundaryPoint) -> f64 {
        self.z.dist(&other.z)
    }
}

/// Frame-diagonal form of a boundary point: sigma = sum e^{i theta_j} c_j,
/// angles in (-pi, pi].
#[derive(Clone, Debug)]
pub struct BoundaryAngles {
    pub frame: Vec<Element>,
    pub angles: Vec<f64>,
}

impl BoundaryAngles {
    /// The real element u = sum theta_j c_j, so that sigma = exp(iu).
    pub fn angle_element(&self) -> Element {
        let alg = self.frame[0].algebra();
        let mut acc = Element::zero(alg);
        for (t, c) in self.angles.iter().zip(&self.frame) {
            acc = acc.add(&c.scale(*t)).expect("same algebra");
        }
        acc
    }
}

/// sigma = sum e^{i theta_j} c_j over a valid Jordan frame.
pub fn boundary_from_angles(frame: &[Element], angles: &[f64]) -> Result<BoundaryPoint> {
    algebra::check_frame(frame)?;
    let alg = frame[0].algebra();
    if angles.len() != alg.rank() {
        return Err(Error::BadFrame(format!(
            "expected {} angles, got {}",
            alg.rank(),
            angles.len()
        )));
    }
    let mut acc = Element::zero(alg).complexify();
    for (t, cj) in angles.iter().zip(frame) {
        acc = acc.add(&cj.scale_c(C64::new(0.0, *t).exp()))?;
    }
    BoundaryPoint::new(acc)
}

/// Recover a frame-diagonal form of a boundary point.
///
/// For the matrix kinds this jointly diagonalizes the commuting
/// (conjugate-)symmetric real and imaginary parts; for spin factors the
/// rank-2 formulas are explicit.
pub fn boundary_spectral(sigma: &BoundaryPoint) -> Result<BoundaryAngles> {
    let z = sigma.element();
    let alg = z.algebra();
    let (frame, angles) = match alg.kind() {
        Kind::SymReal => {
            let a = z.raw().map(|w| w.re);
            let b = z.raw().map(|w| w.im);
            let (pairs, vecs) = linalg::commuting_real_sym_eigen(&a, &b)?;
            let m = alg.storage_size();
            let mut frame = Vec::with_capacity(m);
            let mut angles = Vec::with_capacity(m);
            for (j, (re, im)) in pairs.iter().enumerate() {
                let v = vecs.column(j);
                let cj = DMatrix::from_fn(m, m, |p, q| cr(v[p] * v[q]));
                frame.push(Element::from_matrix(alg, &cj, false)?);
                angles.push(im.atan2(*re));
            }
            (frame, angles)
        }
        Kind::HermComplex => {
            let h1 = (z.raw() + z.raw().adjoint()).scale(0.5);
            let h2 = (z.raw() - z.raw().adjoint()).map(|w| w / C64::new(0.0, 2.0));
            let (pairs, vecs) = linalg::commuting_herm_eigen(&h1, &h2)?;
            let m = alg.storage_size();
            let mut frame = Vec::with_capacity(m);
            let mut angles = Vec::with_capacity(m);
            for (j, (re, im)) in pairs.iter().enumerate() {
                let v = vecs.column(j).clone_owned();
                let cj = &v * v.adjoint();
                frame.push(Element::from_matrix(alg, &cj, false)?);
                angles.push(im.atan2(*re));
            }
            (frame, angles)
        }
        Kind::Spin => {
            let (t, v) = z.spin_parts();
            let hnorm2: f64 = v.iter().map(|w| w.norm_sqr()).sum();
            let q = alg.storage_size();
            if hnorm2.sqrt() <= 1e-9 {
                // sigma = xi e: any real frame works
                let frame = algebra::standard_frame(alg);
                let ang = t.arg();
                (frame, vec![ang, ang])
            } else {
                let mut vv = cr(0.0);
                for i in 0..v.len() {
                    vv += v[i] * v[i];
                }
                if vv.norm() <= 1e-10 * hnorm2 {
                    return Err(Error::DomainError(
                        "isotropic spin direction is not on the boundary".into(),
                    ));
                }
                let mu = vv.sqrt();
                let dir_c = v.map(|w| w / mu);
                let im_part: f64 = dir_c.iter().map(|w| w.im * w.im).sum::<f64>().sqrt();
                if im_part > tol::CONSTRUCT_TOL * 10.0 {
                    return Err(Error::DomainError(
                        "spin direction is not proportional to a real vector".into(),
                    ));
                }
                let dir = dir_c.map(|w| w.re);
                let mk = |s: f64| {
                    let vd = DVector::from_fn(q - 1, |i, _| cr(0.5 * s * dir[i]));
                    Element::from_spin_parts(alg, cr(0.5), &vd, false).unwrap()
                };
                let xi1 = t + mu;
                let xi2 = t - mu;
                (vec![mk(1.0), mk(-1.0)], vec![xi1.arg(), xi2.arg()])
            }
        }
    };
    // validate reconstruction and modulus-1 spectral values
    let mut acc = Element::zero(alg).complexify();
    for (th, cj) in angles.iter().zip(&frame) {
        acc = acc.add(&cj.scale_c(C64::new(0.0, *th).exp()))?;
    }
    let resid = acc.dist(z);
    if resid > tol::CONSTRUCT_TOL * (1.0 + z.norm()) {
        return Err(Error::NumericalFailure(format!(
            "boundary spectral reconstruction residual {resid:.3e}"
        )));
    }
    Ok(BoundaryAngles { frame, angles })
}

/// Spectral norm |z| = sup lambda_j of z = u(sum lambda_j c_j).
pub fn spectral_norm(z: &Element) -> f64 {
    match z.algebra().kind() {
        Kind::SymReal | Kind::HermComplex => {
            linalg::singular_values(z.raw()).first().cloned().unwrap_or(0.0)
        }
        Kind::Spin => {
            let h2 = z.herm_ip(z).re;
            let dt = z.det_c().norm();
            let disc = (h2 * h2 - 4.0 * dt * dt).max(0.0);
            (0.5 * (h2 + disc.sqrt())).sqrt()
        }
    }
}

/// Membership in the spectral-norm unit ball D.
pub fn disk_membership(z: &Element) -> bool {
    spectral_norm(z) < 1.0
}

/// Cayley transform p(z) = (z - ie)(z + ie)^{-1}, mapping the tube T_Omega
/// onto D and V into S.
pub fn cayley_p(z: &Element) -> Result<Element> {
    let e = Element::unit(z.algebra());
    let num = z.sub(&e.scale_c(linalg::I))?;
    let den = z.add(&e.scale_c(linalg::I))?;
    let inv = den.jordan_inverse().map_err(|_| Error::SingularArgument)?;
    algebra::product(&num, &inv)
}

/// Inverse Cayley transform c(w) = i(e + w)(e - w)^{-1}.
pub fn cayley_c(w: &Element) -> Result<Element> {
    let e = Element::unit(w.algebra());
    let num = e.add(w)?;
    let den = e.sub(w)?;
    let inv = den.jordan_inverse().map_err(|_| Error::SingularArgument)?;
    Ok(algebra::product(&num, &inv)?.scale_c(linalg::I))
}

/// Transversality z T w: det(z - w) != 0, tested relative to the spectral
/// scale of the difference.
pub fn transversal(z: &Element, w: &Element) -> bool {
    let diff = match z.sub(w) {
        Ok(d) => d,
        Err(_) => return false,
    };
    let s = spectral_norm(&diff);
    if s <= 1e-14 {
        return false;
    }
    let r = z.algebra().rank() as i32;
    diff.det_c().norm() > tol::TRANSVERSAL_REL * s.powi(r)
}

/// Principal logarithm of a boundary point transversal to -e: with sigma =
/// sum e^{i theta_j} c_j, theta_j in (-pi, pi), log sigma = sum i theta_j c_j.
pub fn principal_log(sigma: &BoundaryPoint) -> Result<Element> {
    let ba = boundary_spectral(sigma)?;
    let alg = sigma.algebra();
    let mut acc = Element::zero(alg).complexify();
    for (th, cj) in ba.angles.iter().zip(&ba.frame) {
        if (th.abs() - PI).abs() < 1e-9 {
            return Err(Error::NotTransversalToMinusE);
        }
        acc = acc.add(&cj.scale_c(c(0.0, *th)))?;
    }
    Ok(acc)
}

/// A unitary element of the structure group (an element of U = Str(V_C)
/// intersected with the unitary group). These maps preserve the Shilov
/// boundary.
#[derive(Clone, Debug)]
pub enum StructureMap {
    /// z -> a z a^T on Sym, a unitary.
    SymCongruence { alg: AlgebraDescriptor, a: DMatrix<C64> },
    /// z -> a z b on Herm/Mat, a and b unitary.
    HermPair { alg: AlgebraDescriptor, a: DMatrix<C64>, b: DMatrix<C64> },
    /// (t, v) -> (t, R v), R real orthogonal.
    SpinRotation { alg: AlgebraDescriptor, rot: DMatrix<f64> },
    /// Frame torus of the spin factor: multiplies the frame components of
    /// (1/2)(1, +-n) by e^{i alpha_j} and the transverse part by
    /// e^{i(alpha_1+alpha_2)/2}.
    SpinTorus { alg: AlgebraDescriptor, n: DVector<f64>, alpha1: f64, alpha2: f64 },
    /// z -> c z with |c| = 1.
    Scale { alg: AlgebraDescriptor, factor: C64 },
    /// Composition, applied left to right.
    Chain(Vec<StructureMap>),
}

impl StructureMap {
    pub fn sym_congruence(alg: AlgebraDescriptor, a: DMatrix<C64>) -> Self {
        StructureMap::SymCongruence { alg, a }
    }
    pub fn herm_pair(alg: AlgebraDescriptor, a: DMatrix<C64>, b: DMatrix<C64>) -> Self {
        StructureMap::HermPair { alg, a, b }
    }
    pub fn spin_rotation(alg: AlgebraDescriptor, rot: DMatrix<f64>) -> Self {
        StructureMap::SpinRotation { alg, rot }
    }
    pub fn spin_torus(alg: AlgebraDescriptor, n: DVector<f64>, alpha1: f64, alpha2: f64) -> Self {
        StructureMap::SpinTorus { alg, n, alpha1, alpha2 }
    }
    pub fn scale(alg: AlgebraDescriptor, factor: C64) -> Self {
        StructureMap::Scale { alg, factor }
    }
    pub fn chain(maps: Vec<StructureMap>) -> Self {
        StructureMap::Chain(maps)
    }
    pub fn identity(alg: AlgebraDescriptor) -> Self {
        StructureMap::Scale { alg, factor: cr(1.0) }
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        match self {
            StructureMap::SymCongruence { alg, .. }
            | StructureMap::HermPair { alg, .. }
            | StructureMap::SpinRotation { alg, .. }
            | StructureMap::SpinTorus { alg, .. }
            | StructureMap::Scale { alg, .. } => *alg,
            StructureMap::Chain(v) => v[0].algebra(),
        }
    }

    pub fn apply(&self, z: &Element) -> Result<Element> {
        match self {
            StructureMap::SymCongruence { alg, a } => {
                Element::from_matrix(*alg, &(a * z.raw() * a.transpose()), true)
            }
            StructureMap::HermPair { alg, a, b } => {
                Element::from_matrix(*alg, &(a * z.raw() * b), true)
            }
            StructureMap::SpinRotation { alg, rot } => {
                let (t, v) = z.spin_parts();
                let vr = DVector::from_fn(v.len(), |i, _| {
                    let mut acc = cr(0.0);
                    for k in 0..v.len() {
                        acc += cr(rot[(i, k)]) * v[k];
                    }
                    acc
                });
                Element::from_spin_parts(*alg, t, &vr, true)
            }
            StructureMap::SpinTorus { alg, n, alpha1, alpha2 } => {
                let (t, v) = z.spin_parts();
                let mut nv = cr(0.0);
                for i in 0..v.len() {
                    nv += cr(n[i]) * v[i];
                }
                let z1 = t + nv;
                let z2 = t - nv;
                let w = DVector::from_fn(v.len(), |i, _| v[i] - nv * cr(n[i]));
                let f1 = C64::new(0.0, *alpha1).exp();
                let f2 = C64::new(0.0, *alpha2).exp();
                let fh = C64::new(0.0, 0.5 * (alpha1 + alpha2)).exp();
                let z1n = z1 * f1;
                let z2n = z2 * f2;
                let tn = (z1n + z2n) * cr(0.5);
                let vn = DVector::from_fn(v.len(), |i, _| {
                    (z1n - z2n) * cr(0.5 * n[i]) + w[i] * fh
                });
                Element::from_spin_parts(*alg, tn, &vn, true)
            }
            StructureMap::Scale { factor, .. } => Ok(z.scale_c(*factor)),
            StructureMap::Chain(maps) => {
                let mut acc = z.clone();
                for m in maps {
                    acc = m.apply(&acc)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn apply_boundary(&self, sigma: &BoundaryPoint) -> Result<BoundaryPoint> {
        BoundaryPoint::new(self.apply(sigma.element())?)
    }

    /// The character chi with det(g z) = chi(g) det(z).
    pub fn chi(&self) -> C64 {
        match self {
            StructureMap::SymCongruence { a, .. } => {
                let d = linalg::det_c(a);
                d * d
            }
            StructureMap::HermPair { a, b, .. } => linalg::det_c(a) * linalg::det_c(b),
            StructureMap::SpinRotation { .. } => cr(1.0),
            StructureMap::SpinTorus { alpha1, alpha2, .. } => {
                C64::new(0.0, alpha1 + alpha2).exp()
            }
            StructureMap::Scale { alg, factor } => factor.powi(alg.rank() as i32),
            StructureMap::Chain(maps) => maps.iter().map(|m| m.chi()).product(),
        }
    }

    pub fn inverse(&self) -> Result<StructureMap> {
        Ok(match self {
            StructureMap::SymCongruence { alg, a } => {
                StructureMap::SymCongruence { alg: *alg, a: linalg::inverse_c(a)? }
            }
            StructureMap::HermPair { alg, a, b } => StructureMap::HermPair {
                alg: *alg,
                a: linalg::inverse_c(a)?,
                b: linalg::inverse_c(b)?,
            },
            StructureMap::SpinRotation { alg, rot } => {
                StructureMap::SpinRotation { alg: *alg, rot: rot.transpose() }
            }
            StructureMap::SpinTorus { alg, n, alpha1, alpha2 } => StructureMap::SpinTorus {
                alg: *alg,
                n: n.clone(),
                alpha1: -alpha1,
                alpha2: -alpha2,
            },
            StructureMap::Scale { alg, factor } => {
                StructureMap::Scale { alg: *alg, factor: cr(1.0) / factor }
            }
            StructureMap::Chain(maps) => {
                let mut inv: Vec<StructureMap> =
                    maps.iter().rev().map(|m| m.inverse()).collect::<Result<_>>()?;
                if inv.len() == 1 {
                    inv.pop().unwrap()
                } else {
                    StructureMap::Chain(inv)
                }
            }
        })
    }

    /// Dense operator on V_C (used for adjoints and Lie-algebra work).
    pub fn as_linop(&self) -> LinOp {
        LinOp::from_action(self.algebra(), |b| self.apply(b).expect("same algebra"))
    }
}

/// The character chi of a structure element.
pub fn character_chi(g: &StructureMap) -> C64 {
    g.chi()
}

/// A structure unitary u with u(tau) = -e.
pub fn normalize_to_minus_e(tau: &BoundaryPoint) -> Result<StructureMap> {
    let alg = tau.algebra();
    let u = match alg.kind() {
        Kind::SymReal => {
            let ba = boundary_spectral(tau)?;
            let m = alg.storage_size();
            // b^{-1/2}-type square root: a = i sum e^{-i theta_j/2} v_j v_j^T
            let mut a = DMatrix::<C64>::zeros(m, m);
            for (th, cj) in ba.angles.iter().zip(&ba.frame) {
                let f = C64::new(0.0, -0.5 * th).exp();
                a += cj.raw().map(|w| w * f);
            }
            let a = a.map(|w| w * linalg::I);
            StructureMap::SymCongruence { alg, a }
        }
        Kind::HermComplex => {
            let m = alg.storage_size();
            let a = DMatrix::<C64>::identity(m, m).map(|w| -w);
            let b = tau.element().raw().adjoint();
            StructureMap::HermPair { alg, a, b }
        }
        Kind::Spin => {
            let ba = boundary_spectral(tau)?;
            let (_, v1) = ba.frame[0].spin_parts();
            let n = v1.map(|w| 2.0 * w.re);
            StructureMap::SpinTorus {
                alg,
                n,
                alpha1: PI - ba.angles[0],
                alpha2: PI - ba.angles[1],
            }
        }
    };
    let img = u.apply(tau.element())?;
    let target = Element::unit(alg).neg().complexify();
    let defect = img.dist(&target);
    if defect > tol::CONSTRUCT_TOL * (1.0 + alg.rank() as f64) {
        return Err(Error::FactorizationFailure(format!(
            "normalization residual {defect:.3e}"
        )));
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    fn algebras() -> Vec<AlgebraDescriptor> {
        vec![
            AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
            AlgebraDescriptor::new(Kind::SymReal, 3).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 3).unwrap(),
            AlgebraDescriptor::new(Kind::Spin, 4).unwrap(),
            AlgebraDescriptor::new(Kind::Spin, 5).unwrap(),
        ]
    }

    #[test]
    fn boundary_from_angles_basics() {
        for alg in algebras() {
            let frame = algebra::standard_frame(alg);
            let r = alg.rank();
            let s = boundary_from_angles(&frame, &vec![0.0; r]).unwrap();
            assert!(s.element().dist(&Element::unit(alg).complexify()) < 1e-12);
            let s = boundary_from_angles(&frame, &vec![PI; r]).unwrap();
            assert!(s.element().dist(&Element::unit(alg).neg().complexify()) < 1e-12);
        }
        // Sym(2), theta = (pi/2, -pi/2): sigma = diag(i, -i), det = 1
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let frame = algebra::standard_frame(alg);
        let s = boundary_from_angles(&frame, &[PI / 2.0, -PI / 2.0]).unwrap();
        assert!((s.element().raw()[(0, 0)] - c(0.0, 1.0)).norm() < 1e-13);
        assert!((s.element().raw()[(1, 1)] - c(0.0, -1.0)).norm() < 1e-13);
        assert!((s.det() - cr(1.0)).norm() < 1e-13);
    }

    #[test]
    fn boundary_invariant_random() {
        let mut smp = Sampler::new(9);
        for alg in algebras() {
            for _ in 0..10 {
                let s = smp.boundary_point(alg);
                // invariant under structure unitaries
                let u = smp.structure_unitary(alg);
                let img = u.apply(s.element()).unwrap();
                assert!(BoundaryPoint::new(img).is_ok());
                // det has modulus 1
                assert!((s.det().norm() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn boundary_spectral_roundtrip() {
        let mut smp = Sampler::new(29);
        for alg in algebras() {
            for _ in 0..10 {
                let s = smp.boundary_point(alg);
                let ba = boundary_spectral(&s).unwrap();
                algebra::check_frame(&ba.frame).unwrap();
                let rebuilt = boundary_from_angles(&ba.frame, &ba.angles).unwrap();
                assert!(rebuilt.dist(&s) < 1e-8);
            }
        }
    }

    #[test]
    fn spectral_norm_cases() {
        for alg in algebras() {
            let e = Element::unit(alg).complexify();
            assert!((spectral_norm(&e) - 1.0).abs() < 1e-12);
            assert!(!disk_membership(&e));
            let z = Element::zero(alg).complexify();
            assert!(spectral_norm(&z) < 1e-15);
            assert!(disk_membership(&z));
        }
        // Sym(2): z = diag(0.5, 2i) has |z| = 2
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[cr(0.5), cr(0.0), cr(0.0), c(0.0, 2.0)]);
        let z = Element::from_matrix(alg, &m, true).unwrap();
        assert!((spectral_norm(&z) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn spin_spectral_norm_invariant_under_unitaries() {
        let mut smp = Sampler::new(77);
        let alg = AlgebraDescriptor::new(Kind::Spin, 5).unwrap();
        for _ in 0..20 {
            let z = smp.complex_element(alg, 1.0);
            let u = smp.structure_unitary(alg);
            let zu = u.apply(&z).unwrap();
            assert!((spectral_norm(&z) - spectral_norm(&zu)).abs() < 1e-9 * (1.0 + z.norm()));
        }
    }

    #[test]
    fn cayley_transforms() {
        let mut smp = Sampler::new(3);
        for alg in algebras() {
            // p(ie) = 0, c(0) = ie
            let e = Element::unit(alg);
            let ie = e.scale_c(linalg::I);
            assert!(cayley_p(&ie).unwrap().norm() < 1e-13);
            assert!(cayley_c(&Element::zero(alg).complexify()).unwrap().dist(&ie) < 1e-13);
            // roundtrip on tube points
            for _ in 0..20 {
                let x = smp.real_element(alg, 1.0);
                let y = smp.interior_point(alg, 0.7);
                let z = x.complexify().add(&y.scale_c(linalg::I)).unwrap();
                let w = cayley_p(&z).unwrap();
                assert!(disk_membership(&w), "p should map the tube into D");
                let back = cayley_c(&w).unwrap();
                assert!(back.dist(&z) <= 1e-9 * (1.0 + z.norm()));
            }
            // p(V) lies in S with det(e - sigma) != 0
            for _ in 0..20 {
                let x = smp.real_element(alg, 1.0).complexify();
                let sigma = cayley_p(&x).unwrap();
                let bp = BoundaryPoint::new(sigma.clone());
                assert!(bp.is_ok());
                let e = Element::unit(alg).complexify();
                assert!(transversal(&sigma, &e), "det(e - p(x)) must not vanish");
            }
        }
    }

    #[test]
    fn transversal_cases() {
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let e = Element::unit(alg).complexify();
        assert!(transversal(&e, &e.neg()));
        assert!(!transversal(&e, &e));
        let eps1 = algebra::epsilon_k(alg, 1).complexify();
        assert!(!transversal(&e, &eps1));
    }

    #[test]
    fn principal_log_properties() {
        let mut smp = Sampler::new(41);
        for alg in algebras() {
            let e = BoundaryPoint::unit(alg);
            assert!(principal_log(&e).unwrap().norm() < 1e-12);
            assert!(matches!(
                principal_log(&BoundaryPoint::minus_unit(alg)),
                Err(Error::NotTransversalToMinusE)
            ));
            for _ in 0..10 {
                let frame = smp.frame(alg);
                let angles: Vec<f64> =
                    (0..alg.rank()).map(|_| smp.uniform(-3.0, 3.0)).collect();
                let s = boundary_from_angles(&frame, &angles).unwrap();
                let l = principal_log(&s).unwrap();
                // exp(log sigma) = sigma: exp of i*angles via the real angle element
                let ba = boundary_spectral(&s).unwrap();
                let u = ba.angle_element();
                let back = algebra::funcalc_c(&u, |t| C64::new(0.0, t).exp()).unwrap();
                assert!(back.dist(s.element()) < 1e-8);
                // (1/i) tr log sigma = sum of principal angles
                let sum: f64 = ba.angles.iter().sum();
                let tr = l.trace_c();
                assert!((tr.im - sum).abs() < 1e-8);
                assert!(tr.re.abs() < 1e-10);
                // e^{tr log sigma} = det sigma
                assert!((tr.exp() - s.det()).norm() < 1e-8);
                // log sigma^{-1} = -log sigma
                let sinv = BoundaryPoint::new(s.element().jordan_inverse().unwrap()).unwrap();
                let linv = principal_log(&sinv).unwrap();
                assert!(linv.add(&l).unwrap().norm() < 1e-8);
                // equivariance under automorphism-type unitaries (Scale by 1 trivial;
                // use a rotation for spin, congruence by orthogonal for Sym)
            }
        }
    }

    #[test]
    fn principal_log_equivariant_under_automorphisms() {
        // log(k sigma) = k log(sigma) for automorphisms k fixing e
        let mut smp = Sampler::new(47);
        for alg in algebras() {
            let k = match alg.kind() {
                Kind::SymReal => {
                    let q = smp.orthogonal_matrix(alg.storage_size()).map(cr);
                    StructureMap::sym_congruence(alg, q)
                }
                Kind::HermComplex => {
                    let q = smp.unitary_matrix(alg.storage_size());
                    let qa = q.adjoint();
                    StructureMap::herm_pair(alg, q, qa)
                }
                Kind::Spin => StructureMap::spin_rotation(
                    alg,
                    smp.orthogonal_matrix(alg.storage_size() - 1),
                ),
            };
            // k must fix the unit
            let e = Element::unit(alg).complexify();
            assert!(k.apply(&e).unwrap().dist(&e) < 1e-10);
            for _ in 0..5 {
                let frame = smp.frame(alg);
                let angles: Vec<f64> =
                    (0..alg.rank()).map(|_| smp.uniform(-2.8, 2.8)).collect();
                let s = boundary_from_angles(&frame, &angles).unwrap();
                let l = principal_log(&s).unwrap();
                let ks = BoundaryPoint::new(k.apply(s.element()).unwrap()).unwrap();
                let lk = principal_log(&ks).unwrap();
                let kl = k.apply(&l).unwrap();
                assert!(lk.dist(&kl) < 1e-7, "equivariance defect in {}", alg.describe());
            }
        }
    }

    #[test]
    fn normalize_reaches_minus_e() {
        let mut smp = Sampler::new(53);
        for alg in algebras() {
            // tau = -e -> identity-like map works
            let me = BoundaryPoint::minus_unit(alg);
            let u = normalize_to_minus_e(&me).unwrap();
            assert!(u.apply(me.element()).unwrap().dist(&Element::unit(alg).neg().complexify()) < 1e-8);
            // tau = e
            let u = normalize_to_minus_e(&BoundaryPoint::unit(alg)).unwrap();
            assert!(u.apply(&Element::unit(alg).complexify()).unwrap()
                .dist(&Element::unit(alg).neg().complexify()) < 1e-8);
            for _ in 0..10 {
                let tau = smp.boundary_point(alg);
                let u = normalize_to_minus_e(&tau).unwrap();
                let img = u.apply(tau.element()).unwrap();
                assert!(img.dist(&Element::unit(alg).neg().complexify()) < 1e-7);
            }
        }
    }

    #[test]
    fn chi_matches_action_on_unit() {
        let mut smp = Sampler::new(67);
        for alg in algebras() {
            for _ in 0..10 {
                let u = smp.structure_unitary(alg);
                let chi = character_chi(&u);
                let img = u.apply(&Element::unit(alg).complexify()).unwrap();
                let d = img.det_c();
                assert!((chi - d).norm() < 1e-8 * (1.0 + chi.norm()));
                assert!((chi.norm() - 1.0).abs() < 1e-8);
            }
        }
        // Sym congruence: chi = det(a)^2 on z = e
        let alg = AlgebraDescriptor::new(Kind::SymReal, 3).unwrap();
        let a = Sampler::new(5).unitary_matrix(3);
        let da = linalg::det_c(&a);
        let g = StructureMap::sym_congruence(alg, a);
        assert!((character_chi(&g) - da * da).norm() < 1e-10);
        // identity
        let g = StructureMap::identity(alg);
        assert!((character_chi(&g) - cr(1.0)).norm() < 1e-15);
    }
}
