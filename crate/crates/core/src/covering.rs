//! The universal covering of the Shilov boundary, S~ = {(sigma, theta) :
//! det(sigma) = e^{i r theta}}, lifted conformal transformations with
//! continuous argument determinations, and the determinant cocycle.
//!
//! A lifted element stores its underlying map together with the value of the
//! argument determination at the base point e. Values elsewhere are obtained
//! by continuing the argument of det(g(sigma))/det(sigma) along a path
//! inside S, halving steps until each one rotates by less than pi/2.

use nalgebra::DMatrix;

use crate::algebra::{AlgebraDescriptor, Element, Kind};
use crate::boundary::{self, BoundaryPoint, StructureMap};
use crate::error::{Error, Result};
use crate::linalg::{self, cr, C64};

use std::f64::consts::PI;

type Blocks = (DMatrix<C64>, DMatrix<C64>, DMatrix<C64>, DMatrix<C64>);

/// A point of the universal covering: (sigma, theta) with det(sigma) =
/// e^{i r theta}.
#[derive(Clone, Debug)]
pub struct CoveringPoint {
    sigma: BoundaryPoint,
    theta: f64,
}

impl CoveringPoint {
    pub fn new(sigma: BoundaryPoint, theta: f64) -> Result<Self> {
        let r = sigma.algebra().rank() as f64;
        let expected = C64::new(0.0, r * theta).exp();
        let defect = (sigma.det() - expected).norm();
        if defect > 1e-7 {
            return Err(Error::DomainError(format!(
                "det(sigma) != e^(i r theta) (defect {defect:.3e})"
            )));
        }
        Ok(Self { sigma, theta })
    }

    /// The lift with theta = Arg(det sigma)/r + 2 pi k / r.
    pub fn lift(sigma: &BoundaryPoint, k: i64) -> Result<Self> {
        let r = sigma.algebra().rank() as f64;
        let theta = sigma.det().arg() / r + 2.0 * PI * (k as f64) / r;
        Self::new(sigma.clone(), theta)
    }

    pub fn sigma(&self) -> &BoundaryPoint {
        &self.sigma
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn algebra(&self) -> AlgebraDescriptor {
        self.sigma.algebra()
    }
}

/// An element of the conformal group acting on the disk D and its boundary
/// S: either a structure unitary or (matrix kinds) a fractional map
/// z -> (Az + B)(Cz + D)^{-1} stored as the full 2m x 2m block matrix.
#[derive(Clone, Debug)]
pub enum ConformalMap {
    Linear(StructureMap),
    Fractional { alg: AlgebraDescriptor, m: DMatrix<C64> },
}

impl ConformalMap {
    pub fn identity(alg: AlgebraDescriptor) -> Self {
        ConformalMap::Linear(StructureMap::identity(alg))
    }

    /// z -> e^{i alpha} z.
    pub fn rotation(alg: AlgebraDescriptor, alpha: f64) -> Self {
        ConformalMap::Linear(StructureMap::scale(alg, C64::new(0.0, alpha).exp()))
    }

    pub fn algebra(&self) -> AlgebraDescriptor {
        match self {
            ConformalMap::Linear(u) => u.algebra(),
            ConformalMap::Fractional { alg, .. } => *alg,
        }
    }

    /// Conjugate a tube-domain block map [[A, B], [C, D]] (acting on the
    /// tube by fractional transformation) into disk coordinates via the
    /// Cayley transform p.
    pub fn from_tube_blocks(
        alg: AlgebraDescriptor,
        a: &DMatrix<C64>,
        b: &DMatrix<C64>,
        c: &DMatrix<C64>,
        d: &DMatrix<C64>,
    ) -> Result<Self> {
        if !alg.is_matrix_kind() {
            return Err(Error::NotImplementedForKind("fractional maps on spin factors"));
        }
        let s = alg.storage_size();
        for m in [a, b, c, d] {
            if m.nrows() != s || m.ncols() != s {
                return Err(Error::SizeMismatch { got: m.nrows(), expected: s });
            }
        }
        let i = linalg::I;
        let ap = ((a + d) + (b - c).map(|w| w * i)).scale(0.5);
        let bp = ((a - d) - (b + c).map(|w| w * i)).scale(0.5);
        let cp = ((a - d) + (b + c).map(|w| w * i)).scale(0.5);
        let dp = ((a + d) - (b - c).map(|w| w * i)).scale(0.5);
        let mut m = DMatrix::zeros(2 * s, 2 * s);
        m.view_mut((0, 0), (s, s)).copy_from(&ap);
        m.view_mut((0, s), (s, s)).copy_from(&bp);
        m.view_mut((s, 0), (s, s)).copy_from(&cp);
        m.view_mut((s, s), (s, s)).copy_from(&dp);
        Ok(ConformalMap::Fractional { alg, m })
    }

    pub fn blocks(&self) -> Option<Blocks> {
        match self {
            ConformalMap::Fractional { alg, m } => {
                let s = alg.storage_size();
                Some((
                    m.view((0, 0), (s, s)).clone_owned(),
                    m.view((0, s), (s, s)).clone_owned(),
                    m.view((s, 0), (s, s)).clone_owned(),
                    m.view((s, s), (s, s)).clone_owned(),
                ))
            }
            ConformalMap::Linear(_) => None,
        }
    }

    fn to_fractional(&self) -> Result<ConformalMap> {
        let alg = self.algebra();
        let s = alg.storage_size();
        let blocks = |a: DMatrix<C64>, d: DMatrix<C64>| {
            let mut m = DMatrix::zeros(2 * s, 2 * s);
            m.view_mut((0, 0), (s, s)).copy_from(&a);
            m.view_mut((s, s), (s, s)).copy_from(&d);
            ConformalMap::Fractional { alg, m }
        };
        match self {
            ConformalMap::Fractional { .. } => Ok(self.clone()),
            ConformalMap::Linear(u) => match u {
                StructureMap::SymCongruence { a, .. } => {
                    let dinv = linalg::inverse_c(&a.transpose())?;
                    Ok(blocks(a.clone(), dinv))
                }
                StructureMap::HermPair { a, b, .. } => {
                    let dinv = linalg::inverse_c(b)?;
                    Ok(blocks(a.clone(), dinv))
                }
                StructureMap::Scale { factor, .. } => {
                    let id = DMatrix::<C64>::identity(s, s);
                    Ok(blocks(id.map(|w| w * factor), id))
                }
                StructureMap::Chain(maps) => {
                    let mut acc = ConformalMap::identity(alg).to_fractional()?;
                    for m in maps {
                        let f = ConformalMap::Linear(m.clone()).to_fractional()?;
                        acc = f.compose(&acc)?;
                    }
                    Ok(acc)
                }
                _ => Err(Error::NotImplementedForKind("fractional form of spin unitary")),
            },
        }
    }

    /// Apply to a point of V_C (typically of the closed disk or S).
    pub fn apply(&self, z: &Element) -> Result<Element> {
        match self {
            ConformalMap::Linear(u) => u.apply(z),
            ConformalMap::Fractional { alg, .. } => {
                let (a, b, c, d) = self.blocks().unwrap();
                let num = &a * z.raw() + &b;
                let den = &c * z.raw() + &d;
                let sv = linalg::singular_values(&den);
                let smax = sv.first().cloned().unwrap_or(0.0);
                let smin = sv.last().cloned().unwrap_or(0.0);
                if smax == 0.0 || smin <= 1e-12 * smax {
                    return Err(Error::SingularAction);
                }
                let deninv = linalg::inverse_c(&den)?;
                Element::from_matrix(*alg, &(num * deninv), true)
            }
        }
    }

    pub fn apply_boundary(&self, sigma: &BoundaryPoint) -> Result<BoundaryPoint> {
        BoundaryPoint::new(self.apply(sigma.element())?)
    }

    /// self after other: (g1.compose(g2))(z) = g1(g2(z)).
    pub fn compose(&self, other: &ConformalMap) -> Result<ConformalMap> {
        match (self, other) {
            (ConformalMap::Linear(u1), ConformalMap::Linear(u2)) => {
                Ok(ConformalMap::Linear(StructureMap::chain(vec![u2.clone(), u1.clone()])))
            }
            _ => {
                let f1 = self.to_fractional()?;
                let f2 = other.to_fractional()?;
                match (f1, f2) {
                    (
                        ConformalMap::Fractional { alg, m: m1 },
                        ConformalMap::Fractional { m: m2, .. },
                    ) => Ok(ConformalMap::Fractional { alg, m: m1 * m2 }),
                    _ => unreachable!(),
                }
            }
        }
    }

    pub fn inverse(&self) -> Result<ConformalMap> {
        match self {
            ConformalMap::Linear(u) => Ok(ConformalMap::Linear(u.inverse()?)),
            ConformalMap::Fractional { alg, m } => Ok(ConformalMap::Fractional {
                alg: *alg,
                m: linalg::inverse_c(m)?,
            }),
        }
    }

    /// The multiplier j(g, z) = chi(Dg(z)), the structure-character of the
    /// derivative.
    pub fn j_multiplier(&self, z: &Element) -> Result<C64> {
        match self {
            ConformalMap::Linear(u) => Ok(u.chi()),
            ConformalMap::Fractional { .. } => {
                let (a, b, c, d) = self.blocks().unwrap();
                let _ = b;
                let gz = self.apply(z)?;
                let e = &a - gz.raw() * &c;
                let den = &c * z.raw() + &d;
                let det_den = linalg::det_c(&den);
                if det_den.norm() < 1e-300 {
                    return Err(Error::SingularAction);
                }
                Ok(linalg::det_c(&e) / det_den)
            }
        }
    }
}

/// A lifted conformal element: the map together with a value of the
/// argument determination of j(g, .) at the base point e.
#[derive(Clone, Debug)]
pub struct Lift {
    map: ConformalMap,
    phi_base: f64,
}

impl Lift {
    /// Validate that e^{i phi_base} matches the direction of
    /// det(g(e))/det(e).
    pub fn new(map: ConformalMap, phi_base: f64) -> Result<Self> {
        let alg = map.algebra();
        let ge = map.apply(&Element::unit(alg).complexify())?;
        let ratio = ge.det_c();
        let defect = (ratio / ratio.norm() - C64::new(0.0, phi_base).exp()).norm();
        if defect > 1e-6 {
            return Err(Error::BranchTrackingFailure(format!(
                "base determination does not match det(g(e)) (defect {defect:.3e})"
            )));
        }
        Ok(Self { map, phi_base })
    }

    /// The lift with principal base value Arg det(g(e)).
    pub fn principal(map: ConformalMap) -> Result<Self> {
        let alg = map.algebra();
        let ge = map.apply(&Element::unit(alg).complexify())?;
        Ok(Self { map, phi_base: ge.det_c().arg() })
    }

    /// Deck transformation: lift of the identity with phi = 2 pi k.
    pub fn deck(alg: AlgebraDescriptor, k: i64) -> Self {
        Self { map: ConformalMap::identity(alg), phi_base: 2.0 * PI * (k as f64) }
    }

    pub fn map(&self) -> &ConformalMap {
        &self.map
    }
    pub fn phi_base(&self) -> f64 {
        self.phi_base
    }

    /// Continue the determination from e to sigma along the path
    /// t -> exp(i t u), u the principal angle element of sigma.
    pub fn phi_at(&self, sigma: &BoundaryPoint) -> Result<f64> {
        let ba = boundary::boundary_spectral(sigma)?;
        let path = |t: f64| -> Result<C64> {
            let mut acc = Element::zero(sigma.algebra()).complexify();
            for (th, cj) in ba.angles.iter().zip(&ba.frame) {
                acc = acc.add(&cj.scale_c(C64::new(0.0, t * th).exp()))?;
            }
            let img = self.map.apply(&acc)?;
            Ok(img.det_c() * acc.det_c().conj())
        };
        // wrap errors from inside the tracker as failed branch tracking
        let f = |t: f64| path(t).unwrap_or(cr(0.0));
        linalg::track_arg(&f, self.phi_base)
    }

    /// Action on the universal covering:
    /// (g, phi) . (sigma, theta) = (g(sigma), theta + phi(g, sigma)/r).
    pub fn act(&self, p: &CoveringPoint) -> Result<CoveringPoint> {
        let phi = self.phi_at(p.sigma())?;
        let image = self.map.apply_boundary(p.sigma())?;
        let r = p.algebra().rank() as f64;
        CoveringPoint::new(image, p.theta() + phi / r)
    }

    /// Group law: (g1, phi1)(g2, phi2) = (g1 g2, phi1(g2 .) + phi2(.)).
    pub fn compose(&self, other: &Lift) -> Result<Lift> {
        let alg = self.map.algebra();
        let g2e = other.map.apply_boundary(&BoundaryPoint::unit(alg))?;
        let phi = self.phi_at(&g2e)? + other.phi_base;
        Ok(Lift { map: self.map.compose(&other.map)?, phi_base: phi })
    }

    /// n-th power by square and multiply.
    pub fn pow(&self, n: u64) -> Result<Lift> {
        let alg = self.map.algebra();
        let mut result = Lift::deck(alg, 0);
        let mut base = self.clone();
        let mut k = n;
        loop {
            if k & 1 == 1 {
                result = result.compose(&base)?;
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.compose(&base)?;
        }
        Ok(result)
    }
}

/// Numerical check of the determinant cocycle
/// det(g(sigma)) = j(g, sigma)/|j(g, sigma)| det(sigma).
pub fn det_cocycle_check(g: &ConformalMap, sigma: &BoundaryPoint) -> Result<bool> {
    let j = g.j_multiplier(sigma.element())?;
    if j.norm() < 1e-300 {
        return Err(Error::SingularAction);
    }
    let lhs = g.apply(sigma.element())?.det_c();
    let rhs = j / j.norm() * sigma.det();
    Ok((lhs - rhs).norm() <= 1e-7)
}

/// Cayley-conjugated translation z -> z + v on the tube (fixes e in S).
pub fn tube_translation(v: &Element) -> Result<ConformalMap> {
    let alg = v.algebra();
    let s = alg.storage_size();
    let id = DMatrix::<C64>::identity(s, s);
    let z = DMatrix::<C64>::zeros(s, s);
    ConformalMap::from_tube_blocks(alg, &id, v.raw(), &z, &id)
}

/// Cayley-conjugated linear congruence x -> a x a^T (resp. a x a^*) on the
/// tube (fixes e and -e in S).
pub fn tube_congruence(alg: AlgebraDescriptor, a: &DMatrix<C64>) -> Result<ConformalMap> {
    let s = alg.storage_size();
    let z = DMatrix::<C64>::zeros(s, s);
    let dinv = match alg.kind() {
        Kind::SymReal => linalg::inverse_c(&a.transpose())?,
        Kind::HermComplex => linalg::inverse_c(&a.adjoint())?,
        Kind::Spin => return Err(Error::NotImplementedForKind("tube congruence on spin")),
    };
    ConformalMap::from_tube_blocks(alg, a, &z, &z, &dinv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{self, AlgebraDescriptor};
    use crate::sample::Sampler;

    fn algebras() -> Vec<AlgebraDescriptor> {
        vec![
            AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        ]
    }

    #[test]
    fn covering_point_invariant() {
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let e = BoundaryPoint::unit(alg);
        assert!(CoveringPoint::new(e.clone(), 0.0).is_ok());
        assert!(CoveringPoint::new(e.clone(), PI).is_ok()); // e^{2 pi i} = 1
        assert!(CoveringPoint::new(e, 0.3).is_err());
    }

    #[test]
    fn identity_lift_fixes_points() {
        let mut smp = Sampler::new(4);
        for alg in algebras() {
            let s = smp.boundary_point(alg);
            let p = smp.covering_point(&s);
            let id = Lift::deck(alg, 0);
            let q = id.act(&p).unwrap();
            assert!(q.sigma().dist(p.sigma()) < 1e-10);
            assert!((q.theta() - p.theta()).abs() < 1e-10);
            // deck transformation shifts theta by 2 pi k / r
            let k = 2i64;
            let deck = Lift::deck(alg, k);
            let q = deck.act(&p).unwrap();
            let r = alg.rank() as f64;
            assert!((q.theta() - p.theta() - 2.0 * PI * (k as f64) / r).abs() < 1e-9);
        }
    }

    #[test]
    fn rotation_lift_shifts_theta() {
        let mut smp = Sampler::new(8);
        for alg in algebras() {
            let alpha = 0.7;
            let rot = ConformalMap::rotation(alg, alpha);
            let r = alg.rank() as f64;
            let lift = Lift::new(rot, r * alpha).unwrap();
            let s = smp.boundary_point(alg);
            let p = smp.covering_point(&s);
            let q = lift.act(&p).unwrap();
            assert!((q.theta() - p.theta() - alpha).abs() < 1e-8);
            let expected = s.element().scale_c(C64::new(0.0, alpha).exp());
            assert!(q.sigma().element().dist(&expected) < 1e-9);
        }
    }

    #[test]
    fn lift_action_is_action() {
        let mut smp = Sampler::new(15);
        for alg in algebras() {
            for _ in 0..5 {
                let g1 = random_conformal(&mut smp, alg);
                let g2 = random_conformal(&mut smp, alg);
                let l1 = Lift::principal(g1).unwrap();
                let l2 = Lift::principal(g2).unwrap();
                let s = smp.boundary_point(alg);
                let p = smp.covering_point(&s);
                let lhs = l1.compose(&l2).unwrap().act(&p).unwrap();
                let rhs = l1.act(&l2.act(&p).unwrap()).unwrap();
                assert!(lhs.sigma().dist(rhs.sigma()) < 1e-8);
                assert!((lhs.theta() - rhs.theta()).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn cocycle_identity_samples() {
        let mut smp = Sampler::new(16);
        for alg in algebras() {
            for _ in 0..20 {
                let g = random_conformal(&mut smp, alg);
                let s = smp.boundary_point(alg);
                assert!(det_cocycle_check(&g, &s).unwrap());
            }
        }
    }

    #[test]
    fn translations_fix_unit() {
        let mut smp = Sampler::new(21);
        for alg in algebras() {
            let v = smp.real_element(alg, 1.0);
            let g = tube_translation(&v).unwrap();
            let e = BoundaryPoint::unit(alg);
            let img = g.apply_boundary(&e).unwrap();
            assert!(img.dist(&e) < 1e-9);
        }
    }

    pub(super) fn random_conformal(smp: &mut Sampler, alg: AlgebraDescriptor) -> ConformalMap {
        match smp.usize_below(3) {
            0 => ConformalMap::Linear(smp.structure_unitary(alg)),
            1 => tube_translation(&smp.real_element(alg, 0.7)).unwrap(),
            _ => {
                let a = smp.invertible_matrix(alg.storage_size(), alg.kind() == Kind::HermComplex);
                tube_congruence(alg, &a).unwrap()
            }
        }
    }
}
