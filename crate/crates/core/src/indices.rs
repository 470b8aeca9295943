//! Integer invariants of the Shilov boundary: the transversality index mu,
//! the triple Maslov index, the Souriau index on the universal covering with
//! its Leray formula, the Arnold, inertia and Arnold-Leray indices, Maslov
//! cycle strata, and the generalized Poincare rotation number.
//!
//! Every operation returns an [`IndexReport`] carrying the integer together
//! with the distance of the raw floating-point value to it.

use crate::algebra::{self, AlgebraDescriptor, Element, Kind};
use crate::boundary::{self, BoundaryPoint, StructureMap};
use crate::covering::{CoveringPoint, Lift};
use crate::error::{Error, Result};
use crate::linalg;
use crate::tol;

use std::f64::consts::PI;

/// An integer invariant with the rounding residual of its raw value.
#[derive(Clone, Copy, Debug)]
pub struct IndexReport {
    pub value: i64,
    pub residual: f64,
}

impl IndexReport {
    pub fn from_raw(raw: f64) -> Result<Self> {
        let value = raw.round();
        let residual = (raw - value).abs();
        if residual >= tol::INDEX_RESIDUAL_MAX || !raw.is_finite() {
            return Err(Error::IndexResidual { raw, residual });
        }
        Ok(Self { value: value as i64, residual })
    }
}

/// Transversality index mu(sigma, tau) in {0, ..., r}: with j the numerical
/// rank parameter of P(sigma - tau) through rank = j + j(j-1)d/2, the index
/// is mu = r - j; mu = 0 exactly on transversal pairs and mu = r on equal
/// ones.
pub fn transversality_index(sigma: &BoundaryPoint, tau: &BoundaryPoint) -> Result<IndexReport> {
    sigma.element().check_same(tau.element())?;
    let alg = sigma.algebra();
    let diff = sigma.element().sub(tau.element())?;
    let p = algebra::quad_rep(&diff);
    let sv = linalg::singular_values(&p.m);
    let scale = (boundary::spectral_norm(sigma.element()) + boundary::spectral_norm(tau.element())).powi(2);
    let rank = linalg::numerical_rank(&sv, scale)?;
    let j = rank_parameter(alg, rank)?;
    let residual = if rank < sv.len() && sv[0] > 0.0 { sv[rank] / sv[0] } else { 0.0 };
    Ok(IndexReport { value: (alg.rank() - j) as i64, residual })
}

/// Invert rank = j + j(j-1) d / 2 for j in 0..=r.
fn rank_parameter(alg: AlgebraDescriptor, rank: usize) -> Result<usize> {
    let d = alg.peirce_d();
    (0..=alg.rank())
        .find(|&j| j + j * j.saturating_sub(1) * d / 2 == rank)
        .ok_or(Error::AmbiguousRank(rank as f64))
}

/// The rank of P(sigma - tau) (used by the rank-formula route).
pub fn transversality_rank(sigma: &BoundaryPoint, tau: &BoundaryPoint) -> Result<usize> {
    let diff = sigma.element().sub(tau.element())?;
    let p = algebra::quad_rep(&diff);
    let scale = (boundary::spectral_norm(sigma.element()) + boundary::spectral_norm(tau.element())).powi(2);
    linalg::numerical_rank(&linalg::singular_values(&p.m), scale)
}

/// Independent route: rotate both points transversal to e, pull back to V
/// with the Cayley transform c and use mu = r - rank(c(u sigma) - c(u tau)).
pub fn transversality_index_cayley(
    sigma: &BoundaryPoint,
    tau: &BoundaryPoint,
) -> Result<IndexReport> {
    let alg = sigma.algebra();
    let e = Element::unit(alg).complexify();
    let mut chosen = None;
    for k in 0..64 {
        let alpha = 0.231 + (k as f64) * 0.173;
        let f = linalg::C64::new(0.0, alpha).exp();
        let us = sigma.element().scale_c(f);
        let ut = tau.element().scale_c(f);
        if boundary::transversal(&us, &e) && boundary::transversal(&ut, &e) {
            chosen = Some((us, ut));
            break;
        }
    }
    let (us, ut) = chosen.ok_or_else(|| {
        Error::NormalizationFailure("no rotation makes both points transversal to e".into())
    })?;
    let x = boundary::cayley_c(&us)?.realify_tol(1e-6)?;
    let y = boundary::cayley_c(&ut)?.realify_tol(1e-6)?;
    let sd = algebra::spectral(&x.sub(&y)?)?;
    let mut mags: Vec<f64> = sd.values.iter().map(|v| v.abs()).collect();
    mags.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let rank = linalg::numerical_rank(&mags, 1.0)?;
    Ok(IndexReport { value: (alg.rank() - rank) as i64, residual: 0.0 })
}

/// A Souriau index evaluation; `non_transversal_directions` counts the
/// angle directions shared by the two projections (zero on transversal
/// pairs, where the index is the classical one).
#[derive(Clone, Copy, Debug)]
pub struct SouriauReport {
    pub index: IndexReport,
    pub non_transversal_directions: usize,
}

/// The Souriau index m((sigma, theta), (tau, phi)) = (1/pi)[ sum psi_j -
/// r(theta - phi) ], where psi_j in (-pi, pi) are the principal angles of
/// u(sigma) for a structure unitary u with u(tau) = -e.
///
/// Angle directions with psi_j = pi (shared directions of sigma and tau)
/// contribute zero; this extends the index to non-transversal pairs by the
/// midpoint convention and keeps it antisymmetric. The result is validated
/// against a second normalizer.
pub fn souriau_index(p: &CoveringPoint, q: &CoveringPoint) -> Result<SouriauReport> {
    p.sigma().element().check_same(q.sigma().element())?;
    let (raw, skipped) = souriau_raw(p, q, false)?;
    let (raw2, _) = souriau_raw(p, q, true)?;
    let index = IndexReport::from_raw(raw)?;
    let index2 = IndexReport::from_raw(raw2)?;
    if index.value != index2.value {
        return Err(Error::NormalizationFailure(format!(
            "normalizer-dependent Souriau value: {} vs {}",
            index.value, index2.value
        )));
    }
    Ok(SouriauReport { index, non_transversal_directions: skipped })
}

fn souriau_raw(p: &CoveringPoint, q: &CoveringPoint, alt_normalizer: bool) -> Result<(f64, usize)> {
    let alg = p.algebra();
    let mut u = boundary::normalize_to_minus_e(q.sigma())?;
    if alt_normalizer {
        u = StructureMap::chain(vec![u, fixed_minus_e_stabilizer(alg)]);
    }
    let w = BoundaryPoint::new(u.apply(p.sigma().element())?)?;
    let ba = boundary::boundary_spectral(&w)?;
    let mut sum = 0.0;
    let mut skipped = 0;
    for psi in &ba.angles {
        if (psi.abs() - PI).abs() <= 1e-7 {
            skipped += 1;
        } else {
            sum += psi;
        }
    }
    let r = alg.rank() as f64;
    Ok(((sum - r * (p.theta() - q.theta())) / PI, skipped))
}

/// A fixed nontrivial automorphism fixing -e, used to cross-check that the
/// Souriau index does not depend on the normalizer.
fn fixed_minus_e_stabilizer(alg: AlgebraDescriptor) -> StructureMap {
    match alg.kind() {
        Kind::SymReal | Kind::HermComplex => {
            let m = alg.storage_size();
            let mut q = nalgebra::DMatrix::<linalg::C64>::identity(m, m);
            if m >= 2 {
                let (cth, sth) = (0.6f64.cos(), 0.6f64.sin());
                q[(0, 0)] = linalg::cr(cth);
                q[(0, 1)] = linalg::cr(-sth);
                q[(1, 0)] = linalg::cr(sth);
                q[(1, 1)] = linalg::cr(cth);
            }
            match alg.kind() {
                Kind::SymReal => StructureMap::sym_congruence(alg, q),
                _ => {
                    let qa = q.adjoint();
                    StructureMap::herm_pair(alg, q, qa)
                }
            }
        }
        Kind::Spin => {
            let d = alg.storage_size() - 1;
            let mut rot = nalgebra::DMatrix::<f64>::identity(d, d);
            if d >= 2 {
                let (cth, sth) = (0.6f64.cos(), 0.6f64.sin());
                rot[(0, 0)] = cth;
                rot[(0, 1)] = -sth;
                rot[(1, 0)] = sth;
                rot[(1, 1)] = cth;
            }
            StructureMap::spin_rotation(alg, rot)
        }
    }
}

/// Triple Maslov index of a pairwise transversal triple, computed by the
/// Leray formula i = m(s1~, s2~) + m(s2~, s3~) + m(s3~, s1~) with arbitrary
/// lifts.
pub fn maslov_triple(
    s1: &BoundaryPoint,
    s2: &BoundaryPoint,
    s3: &BoundaryPoint,
) -> Result<IndexReport> {
    for (a, b) in [(s1, s2), (s2, s3), (s3, s1)] {
        if !boundary::transversal(a.element(), b.element()) {
            return Err(Error::NotPairwiseTransversal);
        }
    }
    let l1 = CoveringPoint::lift(s1, 0)?;
    let l2 = CoveringPoint::lift(s2, 0)?;
    let l3 = CoveringPoint::lift(s3, 0)?;
    let m12 = souriau_index(&l1, &l2)?;
    let m23 = souriau_index(&l2, &l3)?;
    let m31 = souriau_index(&l3, &l1)?;
    if m12.non_transversal_directions + m23.non_transversal_directions
        + m31.non_transversal_directions
        > 0
    {
        return Err(Error::NotPairwiseTransversal);
    }
    let value = m12.index.value + m23.index.value + m31.index.value;
    let residual = m12.index.residual + m23.index.residual + m31.index.residual;
    let r = s1.algebra().rank() as i64;
    if value.abs() > r {
        return Err(Error::NumericalFailure(format!(
            "triple index {value} exceeds the rank bound {r}"
        )));
    }
    Ok(IndexReport { value, residual })
}

/// Arnold index nu = [m(sigma~, tau~) - mu(sigma, tau) - r] / 2.
pub fn arnold_index(p: &CoveringPoint, q: &CoveringPoint) -> Result<IndexReport> {
    let m = souriau_index(p, q)?;
    let mu = transversality_index(p.sigma(), q.sigma())?;
    let r = p.algebra().rank() as i64;
    let raw = (m.index.value - mu.value - r) as f64 / 2.0;
    IndexReport::from_raw(raw)
}

/// Inertia index j = (i + mu12 - mu13 + mu23 + r)/2 of a pairwise
/// transversal triple; a Z-valued 2-cocycle.
pub fn inertia_index(
    s1: &BoundaryPoint,
    s2: &BoundaryPoint,
    s3: &BoundaryPoint,
) -> Result<IndexReport> {
    let i = maslov_triple(s1, s2, s3)?;
    let mu12 = transversality_index(s1, s2)?;
    let mu13 = transversality_index(s1, s3)?;
    let mu23 = transversality_index(s2, s3)?;
    let r = s1.algebra().rank() as i64;
    let raw = (i.value + mu12.value - mu13.value + mu23.value + r) as f64 / 2.0;
    IndexReport::from_raw(raw)
}

/// Arnold-Leray index n = nu + mu + r, an integer primitive of the inertia
/// cocycle.
pub fn arnold_leray_index(p: &CoveringPoint, q: &CoveringPoint) -> Result<IndexReport> {
    let nu = arnold_index(p, q)?;
    let mu = transversality_index(p.sigma(), q.sigma())?;
    let r = p.algebra().rank() as i64;
    Ok(IndexReport { value: nu.value + mu.value + r, residual: nu.residual + mu.residual })
}

/// Stratum of the Maslov cycle attached to sigma0 that contains sigma, with
/// its codimension k + k(k-1) d / 2.
#[derive(Clone, Copy, Debug)]
pub struct StratumReport {
    pub k: i64,
    pub codim: i64,
    pub residual: f64,
}

pub fn maslov_stratum(sigma: &BoundaryPoint, sigma0: &BoundaryPoint) -> Result<StratumReport> {
    let mu = transversality_index(sigma, sigma0)?;
    let d = sigma.algebra().peirce_d() as i64;
    let k = mu.value;
    Ok(StratumReport { k, codim: k + k * (k - 1) * d / 2, residual: mu.residual })
}

/// Estimate of the generalized Poincare translation and rotation numbers.
#[derive(Clone, Copy, Debug)]
pub struct RotationReport {
    /// c(gamma^K)/K where c(gamma) = m(gamma . o~, o~).
    pub tau_hat: f64,
    /// rho = -tau/2 mod 1, reported in [-1/2, 1/2).
    pub rho_hat: f64,
    /// r / K from the quasi-morphism defect bound.
    pub error_bound: f64,
    pub c_value: i64,
}

/// Estimate the rotation number of a lifted conformal element from the
/// K-th power: tau = lim c(gamma^k)/k with |c(gamma^K)/K - tau| <= r/K.
pub fn rotation_number(gamma: &Lift, base: &CoveringPoint, k_budget: u64) -> Result<RotationReport> {
    if k_budget == 0 {
        return Err(Error::BadRequest("iteration budget must be positive".into()));
    }
    let power = gamma.pow(k_budget)?;
    let moved = power.act(base)?;
    let c = souriau_index(&moved, base)?.index.value;
    let r = base.algebra().rank() as f64;
    let tau_hat = c as f64 / k_budget as f64;
    let mut rho = (-tau_hat / 2.0).rem_euclid(1.0);
    if rho >= 0.5 {
        rho -= 1.0;
    }
    Ok(RotationReport {
        tau_hat,
        rho_hat: rho,
        error_bound: r / k_budget as f64,
        c_value: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::{tube_congruence, tube_translation, ConformalMap};
    use crate::linalg::{cr, C64};
    use crate::sample::Sampler;

    fn algebras() -> Vec<AlgebraDescriptor> {
        vec![
            AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
            AlgebraDescriptor::new(Kind::SymReal, 3).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
            AlgebraDescriptor::new(Kind::Spin, 4).unwrap(),
        ]
    }

    fn eps_boundary(alg: AlgebraDescriptor, k: usize) -> BoundaryPoint {
        BoundaryPoint::new(algebra::epsilon_k(alg, k).complexify()).unwrap()
    }

    #[test]
    fn transversality_on_representatives() {
        for alg in algebras() {
            let r = alg.rank();
            let d = alg.peirce_d();
            let e = BoundaryPoint::unit(alg);
            for k in 0..=r {
                let tau = eps_boundary(alg, k);
                let mu = transversality_index(&e, &tau).unwrap();
                assert_eq!(mu.value, k as i64, "mu(e, eps_{k}) in {}", alg.describe());
                // rank formula with the complementary parameter j = r - k
                let j = r - k;
                let rank = transversality_rank(&e, &tau).unwrap();
                assert_eq!(rank, j + j * j.saturating_sub(1) * d / 2);
                // second route agrees
                let mu2 = transversality_index_cayley(&e, &tau).unwrap();
                assert_eq!(mu2.value, k as i64);
            }
            // mu(sigma, sigma) = r
            assert_eq!(transversality_index(&e, &e).unwrap().value, r as i64);
            // mu = 0 iff transversal
            assert_eq!(
                transversality_index(&e, &BoundaryPoint::minus_unit(alg)).unwrap().value,
                0
            );
        }
        // Sym(2): mu(e, diag(1, -1)) = 1
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let mu = transversality_index(&BoundaryPoint::unit(alg), &eps_boundary(alg, 1)).unwrap();
        assert_eq!(mu.value, 1);
    }

    #[test]
    fn transversality_symmetry_and_invariance() {
        let mut smp = Sampler::new(31);
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        ] {
            for _ in 0..10 {
                let s = smp.boundary_point(alg);
                let t = smp.boundary_point(alg);
                let m1 = transversality_index(&s, &t).unwrap().value;
                let m2 = transversality_index(&t, &s).unwrap().value;
                assert_eq!(m1, m2);
                // invariance under a conformal transformation of both points
                let g = random_conformal(&mut smp, alg);
                let gs = g.apply_boundary(&s).unwrap();
                let gt = g.apply_boundary(&t).unwrap();
                let m3 = transversality_index(&gs, &gt).unwrap().value;
                assert_eq!(m1, m3);
            }
        }
    }

    fn random_conformal(smp: &mut Sampler, alg: AlgebraDescriptor) -> ConformalMap {
        match smp.usize_below(3) {
            0 => ConformalMap::Linear(smp.structure_unitary(alg)),
            1 => tube_translation(&smp.real_element(alg, 0.7)).unwrap(),
            _ => {
                let a = smp.invertible_matrix(alg.storage_size(), alg.kind() == Kind::HermComplex);
                tube_congruence(alg, &a).unwrap()
            }
        }
    }

    #[test]
    fn souriau_coordinate_formula() {
        // sigma~1 = (-e, -pi), sigma~2 = (-sum_{j<=l} c_j + sum_{j>l}
        // e^{i phi_j} c_j, phi) with r phi = -l pi + sum phi_j + 2 k pi:
        // m = 2k + r - l.
        let mut smp = Sampler::new(32);
        for alg in algebras() {
            let r = alg.rank();
            let frame = algebra::standard_frame(alg);
            for l in 0..=r.min(2) {
                for k in [-1i64, 0, 2] {
                    let phis: Vec<f64> =
                        (0..r - l).map(|_| smp.uniform(-3.0, 3.0)).collect();
                    let mut angles = vec![PI; l];
                    angles.extend(phis.iter().cloned());
                    let sigma2 = boundary::boundary_from_angles(&frame, &angles).unwrap();
                    let phi = (-(l as f64) * PI + phis.iter().sum::<f64>()
                        + 2.0 * PI * (k as f64))
                        / r as f64;
                    let p2 = CoveringPoint::new(sigma2, phi).unwrap();
                    let p1 = CoveringPoint::new(BoundaryPoint::minus_unit(alg), -PI).unwrap();
                    let rep = souriau_index(&p1, &p2).unwrap();
                    assert_eq!(
                        rep.index.value,
                        2 * k + r as i64 - l as i64,
                        "m for l={l}, k={k} in {}",
                        alg.describe()
                    );
                    assert_eq!(rep.non_transversal_directions, l);
                    assert!(rep.index.residual < 1e-8);
                    // nu = -l + k via the algebraic relation
                    let nu = arnold_index(&p1, &p2).unwrap();
                    assert_eq!(nu.value, -(l as i64) + k);
                }
            }
        }
    }

    #[test]
    fn souriau_antisymmetry_and_deck_shift() {
        let mut smp = Sampler::new(33);
        for alg in algebras() {
            for _ in 0..8 {
                let s = smp.boundary_point(alg);
                let t = smp.boundary_point_transversal(alg, &[&s]);
                let p = smp.covering_point(&s);
                let q = smp.covering_point(&t);
                let m1 = souriau_index(&p, &q).unwrap();
                let m2 = souriau_index(&q, &p).unwrap();
                assert_eq!(m1.index.value, -m2.index.value);
                assert!(m1.index.residual < 1e-8);
                // deck shift on the first argument: theta + 2 pi/r shifts m by -2
                let r = alg.rank() as f64;
                let shifted =
                    CoveringPoint::new(p.sigma().clone(), p.theta() + 2.0 * PI / r).unwrap();
                let m3 = souriau_index(&shifted, &q).unwrap();
                assert_eq!(m3.index.value, m1.index.value - 2);
            }
        }
    }

    #[test]
    fn souriau_invariance_under_lifted_action() {
        let mut smp = Sampler::new(34);
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        ] {
            for _ in 0..5 {
                let s = smp.boundary_point(alg);
                let t = smp.boundary_point_transversal(alg, &[&s]);
                let p = smp.covering_point(&s);
                let q = smp.covering_point(&t);
                let m = souriau_index(&p, &q).unwrap().index.value;
                let g = Lift::principal(random_conformal(&mut smp, alg)).unwrap();
                let gp = g.act(&p).unwrap();
                let gq = g.act(&q).unwrap();
                let mg = souriau_index(&gp, &gq).unwrap().index.value;
                assert_eq!(m, mg);
            }
        }
    }

    #[test]
    fn maslov_triple_normal_forms() {
        for alg in algebras() {
            let r = alg.rank();
            let e = BoundaryPoint::unit(alg);
            let me = BoundaryPoint::minus_unit(alg);
            for k in 0..=r {
                let s3 = BoundaryPoint::new(
                    algebra::epsilon_k(alg, k).complexify().scale_c(C64::new(0.0, -1.0)),
                )
                .unwrap();
                let i = maslov_triple(&e, &me, &s3).unwrap();
                assert_eq!(
                    i.value,
                    2 * k as i64 - r as i64,
                    "i(e, -e, -i eps_{k}) in {}",
                    alg.describe()
                );
            }
        }
    }

    #[test]
    fn maslov_triple_skew_and_cocycle() {
        let mut smp = Sampler::new(35);
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
            AlgebraDescriptor::new(Kind::SymReal, 3).unwrap(),
        ] {
            for _ in 0..10 {
                let s1 = smp.boundary_point(alg);
                let s2 = smp.boundary_point_transversal(alg, &[&s1]);
                let s3 = smp.boundary_point_transversal(alg, &[&s1, &s2]);
                let s4 = smp.boundary_point_transversal(alg, &[&s1, &s2, &s3]);
                let i123 = maslov_triple(&s1, &s2, &s3).unwrap().value;
                assert!(i123.abs() <= alg.rank() as i64);
                // skew symmetry under transpositions
                assert_eq!(maslov_triple(&s2, &s1, &s3).unwrap().value, -i123);
                assert_eq!(maslov_triple(&s1, &s3, &s2).unwrap().value, -i123);
                assert_eq!(maslov_triple(&s2, &s3, &s1).unwrap().value, i123);
                // cocycle identity
                let i124 = maslov_triple(&s1, &s2, &s4).unwrap().value;
                let i234 = maslov_triple(&s2, &s3, &s4).unwrap().value;
                let i314 = maslov_triple(&s3, &s1, &s4).unwrap().value;
                assert_eq!(i123, i124 + i234 + i314);
                // independence of lift choice: recompute from random lifts
                let p1 = smp.covering_point(&s1);
                let p2 = smp.covering_point(&s2);
                let p3 = smp.covering_point(&s3);
                let v = souriau_index(&p1, &p2).unwrap().index.value
                    + souriau_index(&p2, &p3).unwrap().index.value
                    + souriau_index(&p3, &p1).unwrap().index.value;
                assert_eq!(v, i123);
            }
        }
    }

    #[test]
    fn rank_one_circle_oracles() {
        // For rank 1 the boundary is the unit circle. The Souriau index has
        // the scalar closed form m((e^{ia}, theta), (e^{ib}, phi)) =
        // (1/pi)[wrap(a - b + pi) - (theta - phi)] with wrap into (-pi, pi),
        // and the triple index is the cyclic orientation of three points.
        let mut smp = Sampler::new(39);
        let wrap = |x: f64| {
            let mut y = (x + PI).rem_euclid(2.0 * PI) - PI;
            if y == -PI {
                y = PI;
            }
            y
        };
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 1).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 1).unwrap(),
        ] {
            let point = |a: f64| {
                BoundaryPoint::new(
                    Element::unit(alg).complexify().scale_c(C64::new(0.0, a).exp()),
                )
                .unwrap()
            };
            for _ in 0..40 {
                let a = smp.uniform(-3.0, 3.0);
                let b = smp.uniform(-3.0, 3.0);
                if wrap(a - b).abs() < 0.05 {
                    continue;
                }
                let ka = smp.usize_below(5) as f64 - 2.0;
                let kb = smp.usize_below(5) as f64 - 2.0;
                let theta = a + 2.0 * PI * ka;
                let phi = b + 2.0 * PI * kb;
                let p = CoveringPoint::new(point(a), theta).unwrap();
                let q = CoveringPoint::new(point(b), phi).unwrap();
                let expected = (wrap(a - b + PI) - (theta - phi)) / PI;
                assert!((expected - expected.round()).abs() < 1e-9);
                let m = souriau_index(&p, &q).unwrap();
                assert_eq!(m.index.value, expected.round() as i64);
                // triple index = cyclic orientation
                let c = smp.uniform(-3.0, 3.0);
                if wrap(c - a).abs() < 0.05 || wrap(c - b).abs() < 0.05 {
                    continue;
                }
                let beta = (b - a).rem_euclid(2.0 * PI);
                let gamma = (c - a).rem_euclid(2.0 * PI);
                let orientation = if beta < gamma { 1 } else { -1 };
                let i = maslov_triple(&point(a), &point(b), &point(c)).unwrap();
                assert_eq!(i.value, orientation, "a={a} b={b} c={c}");
            }
        }
    }

    #[test]
    fn non_transversal_triple_rejected() {
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let e = BoundaryPoint::unit(alg);
        let me = BoundaryPoint::minus_unit(alg);
        assert!(matches!(
            maslov_triple(&e, &e, &me),
            Err(Error::NotPairwiseTransversal)
        ));
    }

    #[test]
    fn inertia_cocycle_and_primitive() {
        let mut smp = Sampler::new(36);
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        ] {
            for _ in 0..8 {
                let s1 = smp.boundary_point(alg);
                let s2 = smp.boundary_point_transversal(alg, &[&s1]);
                let s3 = smp.boundary_point_transversal(alg, &[&s1, &s2]);
                let s4 = smp.boundary_point_transversal(alg, &[&s1, &s2, &s3]);
                let j123 = inertia_index(&s1, &s2, &s3).unwrap().value;
                let j124 = inertia_index(&s1, &s2, &s4).unwrap().value;
                let j134 = inertia_index(&s1, &s3, &s4).unwrap().value;
                let j234 = inertia_index(&s2, &s3, &s4).unwrap().value;
                assert_eq!(j123 - j124 + j134 - j234, 0);
                // n is a primitive of j
                let p1 = smp.covering_point(&s1);
                let p2 = smp.covering_point(&s2);
                let p3 = smp.covering_point(&s3);
                let n12 = arnold_leray_index(&p1, &p2).unwrap().value;
                let n13 = arnold_leray_index(&p1, &p3).unwrap().value;
                let n23 = arnold_leray_index(&p2, &p3).unwrap().value;
                assert_eq!(j123, n12 - n13 + n23);
                // n - nu - mu = r identically
                let nu = arnold_index(&p1, &p2).unwrap().value;
                let mu = transversality_index(&s1, &s2).unwrap().value;
                assert_eq!(n12 - nu - mu, alg.rank() as i64);
            }
        }
    }

    #[test]
    fn stratum_report() {
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let e = BoundaryPoint::unit(alg);
        let s = eps_boundary(alg, 1);
        let rep = maslov_stratum(&s, &e).unwrap();
        assert_eq!((rep.k, rep.codim), (1, 1));
        let rep = maslov_stratum(&e, &e).unwrap();
        assert_eq!(rep.k, 2);
        assert_eq!(rep.codim, 2 + 1);
        let rep = maslov_stratum(&BoundaryPoint::minus_unit(alg), &e).unwrap();
        assert_eq!((rep.k, rep.codim), (0, 0));
    }

    #[test]
    fn rotation_number_identity_and_rotation() {
        let mut smp = Sampler::new(37);
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 2).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        ] {
            let s = smp.boundary_point(alg);
            let base = smp.covering_point(&s);
            // identity
            let id = Lift::deck(alg, 0);
            let rep = rotation_number(&id, &base, 64).unwrap();
            assert_eq!(rep.c_value, 0);
            assert!(rep.rho_hat.abs() < 1e-12);
            // rotation by alpha: rho = r alpha / (2 pi) mod 1
            let alpha = 0.37;
            let r = alg.rank() as f64;
            let rot = Lift::new(ConformalMap::rotation(alg, alpha), r * alpha).unwrap();
            let k = 256u64;
            let rep = rotation_number(&rot, &base, k).unwrap();
            let chi = C64::new(0.0, r * alpha).exp();
            let pred = C64::new(0.0, 2.0 * PI * rep.rho_hat).exp();
            assert!(
                (pred - chi).norm() <= 2.0 * PI * rep.error_bound + 1e-9,
                "rotation number mismatch: {:?}",
                rep
            );
        }
    }

    fn smp_boundary(smp: &mut Sampler, alg: AlgebraDescriptor) -> BoundaryPoint {
        smp.boundary_point(alg)
    }

    #[test]
    fn rotation_number_fixed_point_elements() {
        let mut smp = Sampler::new(38);
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let s0 = smp.boundary_point(alg);
        let base = smp.covering_point(&s0);
        // a tube translation fixes e in S, so rho = 0
        let v = smp.real_element(alg, 0.8);
        let g = Lift::principal(tube_translation(&v).unwrap()).unwrap();
        let k = 512u64;
        let rep = rotation_number(&g, &base, k).unwrap();
        assert!(rep.rho_hat.abs() <= rep.error_bound, "{rep:?}");
    }

    #[test]
    fn report_residual_guard() {
        assert!(IndexReport::from_raw(1.0 + 0.2).is_err());
        let r = IndexReport::from_raw(3.0 - 1e-9).unwrap();
        assert_eq!(r.value, 3);
    }
}
