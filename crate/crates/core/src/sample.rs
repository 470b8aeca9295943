//! Seeded random generation of the objects used in property tests and the
//! self-test suites. All sampling is deterministic given the seed.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{self, AlgebraDescriptor, Element, Kind};
use crate::boundary::{BoundaryPoint, StructureMap};
use crate::covering::CoveringPoint;
use crate::linalg::{c, cr, C64};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    pub fn gauss(&mut self) -> f64 {
        // Box-Muller
        let u: f64 = self.rng.gen_range(1e-12..1.0);
        let v: f64 = self.rng.gen_range(0.0..std::f64::consts::TAU);
        (-2.0 * u.ln()).sqrt() * v.cos()
    }

    pub fn cgauss(&mut self) -> C64 {
        c(self.gauss(), self.gauss()) * cr(std::f64::consts::FRAC_1_SQRT_2)
    }

    pub fn usize_below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Random element of V with entries of the given scale.
    pub fn real_element(&mut self, alg: AlgebraDescriptor, scale: f64) -> Element {
        let m = alg.storage_size();
        match alg.kind() {
            Kind::SymReal => {
                let a = DMatrix::from_fn(m, m, |_, _| cr(self.gauss() * scale));
                Element::from_matrix(alg, &a, false).unwrap()
            }
            Kind::HermComplex => {
                let a = DMatrix::from_fn(m, m, |_, _| self.cgauss() * cr(scale));
                Element::from_matrix(alg, &a, false).unwrap()
            }
            Kind::Spin => {
                let t = cr(self.gauss() * scale);
                let v = DVector::from_fn(m - 1, |_, _| cr(self.gauss() * scale));
                Element::from_spin_parts(alg, t, &v, false).unwrap()
            }
        }
    }

    /// Random element of V_C.
    pub fn complex_element(&mut self, alg: AlgebraDescriptor, scale: f64) -> Element {
        let x = self.real_element(alg, scale);
        let y = self.real_element(alg, scale);
        x.add(&y.scale_c(c(0.0, 1.0))).unwrap()
    }

    /// Random interior cone point exp(x).
    pub fn interior_point(&mut self, alg: AlgebraDescriptor, spread: f64) -> Element {
        let x = self.real_element(alg, spread);
        algebra::exp_el(&x).unwrap()
    }

    /// Random real/complex invertible matrix of side m.
    pub fn invertible_matrix(&mut self, m: usize, complex: bool) -> DMatrix<C64> {
        loop {
            let a = DMatrix::from_fn(m, m, |_, _| {
                if complex {
                    self.cgauss()
                } else {
                    cr(self.gauss())
                }
            });
            let sv = crate::linalg::singular_values(&a);
            if sv.last().cloned().unwrap_or(0.0) > 0.1 * sv.first().cloned().unwrap_or(1.0) {
                return a;
            }
        }
    }

    /// Random unitary via Gram-Schmidt on a Gaussian matrix.
    pub fn unitary_matrix(&mut self, m: usize) -> DMatrix<C64> {
        loop {
            let a = DMatrix::from_fn(m, m, |_, _| self.cgauss());
            if let Some(q) = gram_schmidt(&a) {
                return q;
            }
        }
    }

    /// Random real orthogonal matrix.
    pub fn orthogonal_matrix(&mut self, m: usize) -> DMatrix<f64> {
        loop {
            let a = DMatrix::from_fn(m, m, |_, _| cr(self.gauss()));
            if let Some(q) = gram_schmidt(&a) {
                return q.map(|z| z.re);
            }
        }
    }

    /// Random Jordan frame: the eigenframe of a random regular element.
    pub fn frame(&mut self, alg: AlgebraDescriptor) -> Vec<Element> {
        loop {
            let x = self.real_element(alg, 1.0);
            let sd = algebra::spectral(&x).expect("spectral of random element");
            let min_gap = sd
                .values
                .windows(2)
                .map(|w| (w[0] - w[1]).abs())
                .fold(f64::INFINITY, f64::min);
            if min_gap > 1e-3 {
                return sd.frame;
            }
        }
    }

    /// Random point of the Shilov boundary.
    pub fn boundary_point(&mut self, alg: AlgebraDescriptor) -> BoundaryPoint {
        let frame = self.frame(alg);
        let angles: Vec<f64> = (0..alg.rank())
            .map(|_| self.uniform(-std::f64::consts::PI, std::f64::consts::PI))
            .collect();
        crate::boundary::boundary_from_angles(&frame, &angles).expect("valid frame")
    }

    /// Random boundary point transversal to the given ones, with a
    /// quantitative margin so that downstream rank decisions stay out of
    /// the ambiguity band.
    pub fn boundary_point_transversal(
        &mut self,
        alg: AlgebraDescriptor,
        others: &[&BoundaryPoint],
    ) -> BoundaryPoint {
        let r = alg.rank() as i32;
        loop {
            let s = self.boundary_point(alg);
            let margin_ok = |o: &BoundaryPoint| {
                let diff = match s.element().sub(o.element()) {
                    Ok(d) => d,
                    Err(_) => return false,
                };
                let scale = crate::boundary::spectral_norm(&diff);
                scale > 1e-2 && diff.det_c().norm() > 1e-2 * scale.powi(r)
            };
            if others.iter().all(|o| margin_ok(o)) {
                return s;
            }
        }
    }

    /// Random lift of a boundary point (random deck sheet in -3..3).
    pub fn covering_point(&mut self, sigma: &BoundaryPoint) -> CoveringPoint {
        let k = self.rng.gen_range(-3i64..4);
        CoveringPoint::lift(sigma, k).expect("valid boundary point")
    }

    /// Random element of the closed cone with at least one zero spectral
    /// value (boundary of Omega-bar).
    pub fn boundary_psd(&mut self, alg: AlgebraDescriptor, scale: f64) -> Element {
        let x = self.real_element(alg, scale);
        let sd = algebra::spectral(&x).unwrap();
        let kill = self.usize_below(alg.rank());
        let mut acc = Element::zero(alg);
        for (j, (lam, c)) in sd.values.iter().zip(&sd.frame).enumerate() {
            let v = if j == kill { 0.0 } else { lam.abs() };
            acc = acc.add(&c.scale(v)).unwrap();
        }
        acc
    }

    /// Random automorphism of the cone: a product of quadratic maps and
    /// (matrix kinds) congruences or (spin) rotations.
    pub fn cone_automorphism(&mut self, alg: AlgebraDescriptor) -> crate::cone::ConeMap {
        use crate::cone::ConeMap;
        let quad = ConeMap::quad(&crate::cone::ConePoint::new(self.interior_point(alg, 0.4)).unwrap())
            .unwrap();
        let other = match alg.kind() {
            Kind::SymReal => {
                ConeMap::congruence(alg, &self.invertible_matrix(alg.storage_size(), false)).unwrap()
            }
            Kind::HermComplex => {
                ConeMap::congruence(alg, &self.invertible_matrix(alg.storage_size(), true)).unwrap()
            }
            Kind::Spin => {
                ConeMap::spin_rotation(alg, &self.orthogonal_matrix(alg.storage_size() - 1)).unwrap()
            }
        };
        quad.compose(&other)
    }

    /// Random tube point of a semigroup kind: X + iY with X in the real
    /// form and Y positive definite in it (resampled off the singular set).
    pub fn tube_point(&mut self, kind: crate::semigroup::GroupKind, spread: f64) -> crate::semigroup::TubePoint {
        use crate::semigroup::TubePoint;
        let m = kind.mat_size();
        loop {
            let x = self.real_form_matrix(kind, spread);
            let y0 = self.real_form_matrix(kind, spread);
            let y = &y0 * &y0 + DMatrix::<C64>::identity(m, m).map(|w: C64| w * cr(0.3));
            let z = x + y.map(|w| w * crate::linalg::I);
            if let Ok(tp) = TubePoint::new(kind, z) {
                if !tp.on_singular_set() {
                    return tp;
                }
            }
        }
    }

    /// Random Hermitian element of the real form V of the kind's Jordan
    /// algebra.
    pub fn real_form_matrix(&mut self, kind: crate::semigroup::GroupKind, spread: f64) -> DMatrix<C64> {
        use crate::semigroup::GroupKind;
        match kind {
            GroupKind::SpR(r) => {
                let m = 2 * r;
                let a = DMatrix::from_fn(m, m, |_, _| cr(self.gauss() * spread));
                (&a + a.transpose()).scale(0.5)
            }
            GroupKind::Upq(p, q) => {
                let m = p + q;
                let a = DMatrix::from_fn(m, m, |_, _| self.cgauss() * cr(spread));
                (&a + a.adjoint()).scale(0.5)
            }
            GroupKind::SOStar(l) => {
                // [[P, Q], [Q^*, P^T]] with P Hermitian, Q skew
                let p0 = DMatrix::from_fn(l, l, |_, _| self.cgauss() * cr(spread));
                let p = (&p0 + p0.adjoint()).scale(0.5);
                let q0 = DMatrix::from_fn(l, l, |_, _| self.cgauss() * cr(spread));
                let q = (&q0 - q0.transpose()).scale(0.5);
                let mut z = DMatrix::zeros(2 * l, 2 * l);
                z.view_mut((0, 0), (l, l)).copy_from(&p);
                z.view_mut((0, l), (l, l)).copy_from(&q);
                z.view_mut((l, 0), (l, l)).copy_from(&q.adjoint());
                z.view_mut((l, l), (l, l)).copy_from(&p.transpose());
                z
            }
        }
    }

    /// Random structure unitary of the algebra.
    pub fn structure_unitary(&mut self, alg: AlgebraDescriptor) -> StructureMap {
        match alg.kind() {
            Kind::SymReal => StructureMap::sym_congruence(alg, self.unitary_matrix(alg.storage_size())),
            Kind::HermComplex => StructureMap::herm_pair(
                alg,
                self.unitary_matrix(alg.storage_size()),
                self.unitary_matrix(alg.storage_size()),
            ),
            Kind::Spin => {
                let q = alg.storage_size();
                let rot = StructureMap::spin_rotation(alg, self.orthogonal_matrix(q - 1));
                let n = {
                    let v = DVector::from_fn(q - 1, |_, _| self.gauss());
                    v.scale(1.0 / v.norm())
                };
                let torus = StructureMap::spin_torus(
                    alg,
                    n,
                    self.uniform(-3.0, 3.0),
                    self.uniform(-3.0, 3.0),
                );
                StructureMap::chain(vec![rot, torus])
            }
        }
    }
}

fn gram_schmidt(a: &DMatrix<C64>) -> Option<DMatrix<C64>> {
    let m = a.nrows();
    let mut q = a.clone();
    for j in 0..m {
        for k in 0..j {
            let proj = q.column(k).adjoint() * q.column(j);
            let col = q.column(j) - q.column(k).scale(1.0) * proj[(0, 0)];
            q.set_column(j, &col);
        }
        let nrm = q.column(j).norm();
        if nrm < 1e-6 {
            return None;
        }
        let col = q.column(j).unscale(nrm);
        q.set_column(j, &col);
    }
    Some(q)
}
