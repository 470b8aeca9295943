//! Simple Euclidean Jordan algebras: Sym(r, R), Herm(r, C) and spin factors
//! R x R^{q-1}, together with their complexifications.
//!
//! Elements of the matrix algebras are stored as full (conjugate-)symmetric
//! matrices; spin-factor elements as a column (t, v). Linear operators on the
//! algebra are stored as n x n matrices with respect to a fixed orthonormal
//! coordinate basis: for Sym the upper-triangle enumeration e_ii = E_ii,
//! e_ij = (E_ij + E_ji)/sqrt(2); for Herm additionally the imaginary basis
//! i(E_ij - E_ji)/sqrt(2); for spin factors the plain (t, v) coordinates.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg::{self, cr, C64};
use crate::tol;

pub const SQRT2: f64 = std::f64::consts::SQRT_2;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Kind {
    SymReal,
    HermComplex,
    Spin,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::SymReal => "sym_real",
            Kind::HermComplex => "herm_complex",
            Kind::Spin => "spin",
        }
    }
}

/// Identifies a simple Euclidean Jordan algebra: kind, rank r, real dimension
/// n and Peirce invariant d.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct AlgebraDescriptor {
    kind: Kind,
    r: usize,
    n: usize,
    d: usize,
    /// Storage size: matrix side for the matrix kinds, q for spin factors.
    m: usize,
}

impl AlgebraDescriptor {
    /// `size` is the matrix side r for the matrix kinds and q >= 3 for spin.
    pub fn new(kind: Kind, size: usize) -> Result<Self> {
        match kind {
            Kind::SymReal => {
                if size < 1 {
                    return Err(Error::InvalidSize { what: "Sym rank", size, min: 1 });
                }
                Ok(Self { kind, r: size, n: size * (size + 1) / 2, d: 1, m: size })
            }
            Kind::HermComplex => {
                if size < 1 {
                    return Err(Error::InvalidSize { what: "Herm rank", size, min: 1 });
                }
                Ok(Self { kind, r: size, n: size * size, d: 2, m: size })
            }
            Kind::Spin => {
                if size < 3 {
                    return Err(Error::InvalidSize { what: "spin dimension q", size, min: 3 });
                }
                Ok(Self { kind, r: 2, n: size, d: size - 2, m: size })
            }
        }
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }
    pub fn rank(&self) -> usize {
        self.r
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn peirce_d(&self) -> usize {
        self.d
    }
    /// Matrix side for matrix kinds, q for spin factors.
    pub fn storage_size(&self) -> usize {
        self.m
    }
    pub fn is_matrix_kind(&self) -> bool {
        matches!(self.kind, Kind::SymReal | Kind::HermComplex)
    }

    pub fn describe(&self) -> String {
        match self.kind {
            Kind::SymReal => format!("Sym({},R)", self.r),
            Kind::HermComplex => format!("Herm({},C)", self.r),
            Kind::Spin => format!("Spin(q={})", self.m),
        }
    }
}

/// An element of V or of its complexification V_C.
///
/// Matrix kinds keep the full matrix; construction symmetrizes so the stored
/// matrix equals its (conjugate-)transpose bit-exactly. Spin factors store
/// the column (t, v_1, ..., v_{q-1}).
#[derive(Clone, Debug)]
pub struct Element {
    alg: AlgebraDescriptor,
    complex: bool,
    data: DMatrix<C64>,
}

impl Element {
    pub fn algebra(&self) -> AlgebraDescriptor {
        self.alg
    }
    pub fn is_complex(&self) -> bool {
        self.complex
    }
    pub fn raw(&self) -> &DMatrix<C64> {
        &self.data
    }

    pub fn zero(alg: AlgebraDescriptor) -> Self {
        let data = match alg.kind {
            Kind::Spin => DMatrix::zeros(alg.m, 1),
            _ => DMatrix::zeros(alg.m, alg.m),
        };
        Self { alg, complex: false, data }
    }

    pub fn unit(alg: AlgebraDescriptor) -> Self {
        match alg.kind {
            Kind::Spin => {
                let mut d = DMatrix::zeros(alg.m, 1);
                d[(0, 0)] = cr(1.0);
                Self { alg, complex: false, data: d }
            }
            _ => Self { alg, complex: false, data: DMatrix::identity(alg.m, alg.m) },
        }
    }

    /// Build a matrix-kind element from a complex matrix. The matrix is
    /// projected onto the kind's symmetry class: (M + M^T)/2 for Sym,
    /// (M + M^*)/2 for real Herm elements; complex Herm elements are free.
    pub fn from_matrix(alg: AlgebraDescriptor, m: &DMatrix<C64>, complex: bool) -> Result<Self> {
        if !alg.is_matrix_kind() {
            return Err(Error::NotImplementedForKind("from_matrix on spin factor"));
        }
        if m.nrows() != alg.m || m.ncols() != alg.m {
            return Err(Error::SizeMismatch { got: m.nrows(), expected: alg.m });
        }
        let data = match alg.kind {
            Kind::SymReal => (m + m.transpose()).scale(0.5),
            Kind::HermComplex => {
                if complex {
                    m.clone()
                } else {
                    (m + m.adjoint()).scale(0.5)
                }
            }
            Kind::Spin => unreachable!(),
        };
        let el = Self { alg, complex, data };
        if !complex && !el.entries_real_ok() {
            return Err(Error::ExpectedReal);
        }
        Ok(el)
    }

    pub fn from_spin_parts(alg: AlgebraDescriptor, t: C64, v: &DVector<C64>, complex: bool) -> Result<Self> {
        if alg.kind != Kind::Spin {
            return Err(Error::NotImplementedForKind("spin parts on matrix kind"));
        }
        if v.len() != alg.m - 1 {
            return Err(Error::SizeMismatch { got: v.len() + 1, expected: alg.m });
        }
        let mut d = DMatrix::zeros(alg.m, 1);
        d[(0, 0)] = t;
        for i in 0..v.len() {
            d[(i + 1, 0)] = v[i];
        }
        let el = Self { alg, complex, data: d };
        if !complex && !el.entries_real_ok() {
            return Err(Error::ExpectedReal);
        }
        Ok(el)
    }

    fn entries_real_ok(&self) -> bool {
        match self.alg.kind {
            Kind::HermComplex => {
                linalg::fro(&(&self.data - self.data.adjoint())) <= 1e-12 * (1.0 + linalg::fro(&self.data))
            }
            _ => {
                let scale = 1.0 + linalg::max_abs(&self.data);
                self.data.iter().all(|z| z.im.abs() <= 1e-12 * scale)
            }
        }
    }

    pub fn spin_parts(&self) -> (C64, DVector<C64>) {
        let t = self.data[(0, 0)];
        let v = DVector::from_fn(self.alg.m - 1, |i, _| self.data[(i + 1, 0)]);
        (t, v)
    }

    pub fn norm(&self) -> f64 {
        self.herm_ip(self).re.sqrt()
    }

    /// Hermitian inner product (z | w) = tr(z eta(w)); restricts to the trace
    /// form (x | y) = tr(x y) on real elements.
    pub fn herm_ip(&self, other: &Element) -> C64 {
        match self.alg.kind {
            Kind::SymReal => (&self.data * other.data.conjugate()).trace(),
            Kind::HermComplex => (&self.data * other.data.adjoint()).trace(),
            Kind::Spin => {
                let (t, v) = self.spin_parts();
                let (s, w) = other.spin_parts();
                let mut acc = t * s.conj();
                for i in 0..v.len() {
                    acc += v[i] * w[i].conj();
                }
                acc * cr(2.0)
            }
        }
    }

    /// Bilinear trace form (z | w) = tr(z w), complex bilinear.
    pub fn bilinear_ip(&self, other: &Element) -> C64 {
        match self.alg.kind {
            Kind::SymReal | Kind::HermComplex => (&self.data * &other.data).trace(),
            Kind::Spin => {
                let (t, v) = self.spin_parts();
                let (s, w) = other.spin_parts();
                let mut acc = t * s;
                for i in 0..v.len() {
                    acc += v[i] * w[i];
                }
                acc * cr(2.0)
            }
        }
    }

    /// Conjugation eta with respect to the real form V.
    pub fn conj_eta(&self) -> Element {
        let data = match self.alg.kind {
            Kind::HermComplex => self.data.adjoint(),
            _ => self.data.conjugate(),
        };
        Element { alg: self.alg, complex: self.complex, data }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(Element {
            alg: self.alg,
            complex: self.complex || other.complex,
            data: &self.data + &other.data,
        })
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.check_same(other)?;
        Ok(Element {
            alg: self.alg,
            complex: self.complex || other.complex,
            data: &self.data - &other.data,
        })
    }

    pub fn scale(&self, a: f64) -> Element {
        Element { alg: self.alg, complex: self.complex, data: self.data.scale(a) }
    }

    pub fn scale_c(&self, a: C64) -> Element {
        Element { alg: self.alg, complex: true, data: self.data.map(|z| z * a) }
    }

    pub fn neg(&self) -> Element {
        self.scale(-1.0)
    }

    /// Reinterpret as an element of V_C.
    pub fn complexify(&self) -> Element {
        let mut e = self.clone();
        e.complex = true;
        e
    }

    /// Check that the element lies in V (within tolerance) and return the
    /// real-flagged copy.
    pub fn try_realify(&self) -> Result<Element> {
        self.realify_tol(1e-12)
    }

    /// As [`Element::try_realify`] with an explicit relative tolerance on
    /// the imaginary part.
    pub fn realify_tol(&self, tol_rel: f64) -> Result<Element> {
        let mut e = self.clone();
        e.complex = false;
        let defect = match self.alg.kind {
            Kind::HermComplex => {
                linalg::fro(&(&e.data - e.data.adjoint())) / (1.0 + linalg::fro(&e.data))
            }
            _ => {
                let scale = 1.0 + linalg::max_abs(&e.data);
                e.data.iter().map(|z| z.im.abs()).fold(0.0, f64::max) / scale
            }
        };
        if defect > tol_rel {
            return Err(Error::ExpectedReal);
        }
        // re-project to kill rounding in the imaginary part
        e.data = match self.alg.kind {
            Kind::HermComplex => (&e.data + e.data.adjoint()).scale(0.5),
            _ => e.data.map(|z| cr(z.re)),
        };
        Ok(e)
    }

    pub fn check_same(&self, other: &Element) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch(self.alg.describe(), other.alg.describe()));
        }
        Ok(())
    }

    pub fn check_real(&self) -> Result<()> {
        if self.complex {
            return Err(Error::ExpectedReal);
        }
        Ok(())
    }

    pub fn dist(&self, other: &Element) -> f64 {
        linalg::fro(&(&self.data - &other.data))
            * if self.alg.kind == Kind::Spin { SQRT2 } else { 1.0 }
    }

    /// Coordinates in the fixed orthonormal basis (complex for V_C).
    pub fn to_coords(&self) -> DVector<C64> {
        let alg = self.alg;
        match alg.kind {
            Kind::SymReal => {
                let mut v = DVector::zeros(alg.n);
                let mut k = 0;
                for i in 0..alg.m {
                    for j in i..alg.m {
                        v[k] = if i == j { self.data[(i, i)] } else { self.data[(i, j)] * cr(SQRT2) };
                        k += 1;
                    }
                }
                v
            }
            Kind::HermComplex => {
                let mut v = DVector::zeros(alg.n);
                let mut k = 0;
                for i in 0..alg.m {
                    v[k] = self.data[(i, i)];
                    k += 1;
                }
                for i in 0..alg.m {
                    for j in (i + 1)..alg.m {
                        let zij = self.data[(i, j)];
                        let zji = self.data[(j, i)];
                        v[k] = (zij + zji) * cr(1.0 / SQRT2);
                        k += 1;
                        v[k] = (zji - zij) * C64::new(0.0, 1.0 / SQRT2);
                        k += 1;
                    }
                }
                v
            }
            // the trace form gives the plain coordinates squared length 2
            Kind::Spin => DVector::from_fn(alg.n, |i, _| self.data[(i, 0)] * cr(SQRT2)),
        }
    }

    pub fn from_coords(alg: AlgebraDescriptor, v: &DVector<C64>, complex: bool) -> Result<Element> {
        if v.len() != alg.n {
            return Err(Error::SizeMismatch { got: v.len(), expected: alg.n });
        }
        let data = match alg.kind {
            Kind::SymReal => {
                let mut m = DMatrix::zeros(alg.m, alg.m);
                let mut k = 0;
                for i in 0..alg.m {
                    for j in i..alg.m {
                        if i == j {
                            m[(i, i)] = v[k];
                        } else {
                            let x = v[k] * cr(1.0 / SQRT2);
                            m[(i, j)] = x;
                            m[(j, i)] = x;
                        }
                        k += 1;
                    }
                }
                m
            }
            Kind::HermComplex => {
                let mut m = DMatrix::zeros(alg.m, alg.m);
                let mut k = 0;
                for i in 0..alg.m {
                    m[(i, i)] = v[k];
                    k += 1;
                }
                for i in 0..alg.m {
                    for j in (i + 1)..alg.m {
                        let a = v[k];
                        k += 1;
                        let b = v[k];
                        k += 1;
                        // z_ij = (a + i b)/sqrt(2), z_ji = (a - i b)/sqrt(2)
                        m[(i, j)] = (a + b * linalg::I) * cr(1.0 / SQRT2);
                        m[(j, i)] = (a - b * linalg::I) * cr(1.0 / SQRT2);
                    }
                }
                m
            }
            Kind::Spin => DMatrix::from_fn(alg.m, 1, |i, _| v[i] * cr(1.0 / SQRT2)),
        };
        Ok(Element { alg, complex, data })
    }

    /// Jordan determinant: product of the spectral values. Homogeneous of
    /// degree r. Complex valued on V_C.
    pub fn det_c(&self) -> C64 {
        match self.alg.kind {
            Kind::SymReal | Kind::HermComplex => linalg::det_c(&self.data),
            Kind::Spin => {
                let (t, v) = self.spin_parts();
                let mut vv = cr(0.0);
                for i in 0..v.len() {
                    vv += v[i] * v[i];
                }
                t * t - vv
            }
        }
    }

    /// Jordan trace: sum of the spectral values.
    pub fn trace_c(&self) -> C64 {
        match self.alg.kind {
            Kind::SymReal | Kind::HermComplex => self.data.trace(),
            Kind::Spin => self.data[(0, 0)] * cr(2.0),
        }
    }

    /// Jordan inverse (defined whenever det != 0), computed in the
    /// associative span R[x]; on matrix kinds it is the matrix inverse.
    pub fn jordan_inverse(&self) -> Result<Element> {
        match self.alg.kind {
            Kind::SymReal | Kind::HermComplex => {
                let inv = linalg::inverse_c(&self.data).map_err(|_| Error::SingularElement)?;
                Ok(Element { alg: self.alg, complex: self.complex, data: inv })
            }
            Kind::Spin => {
                let det = self.det_c();
                if det.norm() <= 1e-14 * (1.0 + self.norm() * self.norm()) {
                    return Err(Error::SingularElement);
                }
                let (t, v) = self.spin_parts();
                Element::from_spin_parts(self.alg, t / det, &v.map(|z| -z / det), self.complex)
            }
        }
    }
}

/// Jordan product x o y = (xy + yx)/2 on the matrix kinds,
/// (t, v) o (s, w) = (ts + <v, w>, tw + sv) on spin factors.
pub fn product(x: &Element, y: &Element) -> Result<Element> {
    x.check_same(y)?;
    let alg = x.algebra();
    let complex = x.is_complex() || y.is_complex();
    let data = match alg.kind {
        Kind::SymReal | Kind::HermComplex => (x.raw() * y.raw() + y.raw() * x.raw()).scale(0.5),
        Kind::Spin => {
            let (t, v) = x.spin_parts();
            let (s, w) = y.spin_parts();
            let mut vw = cr(0.0);
            for i in 0..v.len() {
                vw += v[i] * w[i];
            }
            let mut d = DMatrix::zeros(alg.m, 1);
            d[(0, 0)] = t * s + vw;
            for i in 0..v.len() {
                d[(i + 1, 0)] = t * w[i] + s * v[i];
            }
            d
        }
    };
    Ok(Element { alg, complex, data })
}

pub fn square(x: &Element) -> Element {
    product(x, x).expect("same algebra")
}

/// A linear operator on V (or V_C), stored in the coordinate basis.
#[derive(Clone, Debug)]
pub struct LinOp {
    pub alg: AlgebraDescriptor,
    pub complex: bool,
    pub m: DMatrix<C64>,
}

impl LinOp {
    pub fn identity(alg: AlgebraDescriptor) -> Self {
        Self { alg, complex: false, m: DMatrix::identity(alg.n, alg.n) }
    }

    pub fn zero(alg: AlgebraDescriptor) -> Self {
        Self { alg, complex: false, m: DMatrix::zeros(alg.n, alg.n) }
    }

    /// Assemble from the action on the coordinate basis.
    pub fn from_action(alg: AlgebraDescriptor, f: impl Fn(&Element) -> Element) -> Self {
        let basis = basis_elements(alg);
        let mut m = DMatrix::zeros(alg.n, alg.n);
        let mut complex = false;
        for (j, b) in basis.iter().enumerate() {
            let img = f(b);
            complex |= img.is_complex();
            m.set_column(j, &img.to_coords());
        }
        Self { alg, complex, m }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        if x.algebra() != self.alg {
            return Err(Error::AlgebraMismatch(self.alg.describe(), x.algebra().describe()));
        }
        let coords = &self.m * x.to_coords();
        let complex = self.complex || x.is_complex();
        let el = Element::from_coords(self.alg, &coords, true)?;
        if complex {
            Ok(el)
        } else {
            el.try_realify()
        }
    }

    pub fn compose(&self, other: &LinOp) -> LinOp {
        LinOp { alg: self.alg, complex: self.complex || other.complex, m: &self.m * &other.m }
    }

    pub fn add(&self, other: &LinOp) -> LinOp {
        LinOp { alg: self.alg, complex: self.complex || other.complex, m: &self.m + &other.m }
    }

    pub fn sub(&self, other: &LinOp) -> LinOp {
        LinOp { alg: self.alg, complex: self.complex || other.complex, m: &self.m - &other.m }
    }

    pub fn scale(&self, a: f64) -> LinOp {
        LinOp { alg: self.alg, complex: self.complex, m: self.m.scale(a) }
    }

    pub fn scale_c(&self, a: C64) -> LinOp {
        LinOp { alg: self.alg, complex: true, m: self.m.map(|z| z * a) }
    }

    /// Adjoint with respect to the Hermitian inner product; equals the plain
    /// transpose for real operators.
    pub fn adjoint(&self) -> LinOp {
        LinOp { alg: self.alg, complex: self.complex, m: self.m.adjoint() }
    }

    pub fn try_inverse(&self) -> Result<LinOp> {
        let inv = linalg::inverse_c(&self.m)?;
        Ok(LinOp { alg: self.alg, complex: self.complex, m: inv })
    }

    pub fn norm(&self) -> f64 {
        linalg::fro(&self.m)
    }

    pub fn dist(&self, other: &LinOp) -> f64 {
        linalg::fro(&(&self.m - &other.m))
    }
}

/// Multiplication operator L(x): y -> x o y.
pub fn lmul(x: &Element) -> LinOp {
    LinOp::from_action(x.algebra(), |b| product(x, b).expect("same algebra"))
}

/// Quadratic representation P(x) = 2 L(x)^2 - L(x^2); on the matrix kinds
/// P(x) y = x y x.
pub fn quad_rep(x: &Element) -> LinOp {
    LinOp::from_action(x.algebra(), |b| quad_apply(x, b).expect("same algebra"))
}

/// P(x) y without assembling the operator.
pub fn quad_apply(x: &Element, y: &Element) -> Result<Element> {
    x.check_same(y)?;
    let alg = x.algebra();
    match alg.kind {
        Kind::SymReal | Kind::HermComplex => {
            let data = x.raw() * y.raw() * x.raw();
            Ok(Element { alg, complex: x.is_complex() || y.is_complex(), data })
        }
        Kind::Spin => {
            let xy = product(x, y)?;
            let x2 = square(x);
            product(x, &xy)?.scale(2.0).sub(&product(&x2, y)?)
        }
    }
}

/// Box operator x [] y = L(x o y) + [L(x), L(y)].
pub fn box_op(x: &Element, y: &Element) -> Result<LinOp> {
    x.check_same(y)?;
    let lx = lmul(x);
    let ly = lmul(y);
    let lxy = lmul(&product(x, y)?);
    Ok(lxy.add(&lx.compose(&ly)).sub(&ly.compose(&lx)))
}

/// Jordan frame plus spectral values, descending.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub values: Vec<f64>,
    pub frame: Vec<Element>,
}

impl SpectralDecomposition {
    pub fn reconstruct(&self, alg: AlgebraDescriptor) -> Element {
        let mut acc = Element::zero(alg);
        for (v, c) in self.values.iter().zip(&self.frame) {
            acc = acc.add(&c.scale(*v)).expect("same algebra");
        }
        acc
    }
}

/// Spectral decomposition of a real element.
pub fn spectral(x: &Element) -> Result<SpectralDecomposition> {
    x.check_real()?;
    let alg = x.algebra();
    let sd = match alg.kind {
        Kind::SymReal => {
            let m = x.raw().map(|z| z.re);
            let (values, vecs) = linalg::real_sym_eigen(&m);
            let frame = (0..alg.m)
                .map(|j| {
                    let v = vecs.column(j);
                    let c = DMatrix::from_fn(alg.m, alg.m, |a, b| cr(v[a] * v[b]));
                    Element { alg, complex: false, data: c }
                })
                .collect();
            SpectralDecomposition { values, frame }
        }
        Kind::HermComplex => {
            let (values, vecs) = linalg::herm_eigen(x.raw())?;
            let frame = (0..alg.m)
                .map(|j| {
                    let v = vecs.column(j).clone_owned();
                    let c = &v * v.adjoint();
                    Element { alg, complex: false, data: c }
                })
                .collect();
            SpectralDecomposition { values, frame }
        }
        Kind::Spin => {
            let (t, v) = x.spin_parts();
            let t = t.re;
            let vr = v.map(|z| z.re);
            let nv = vr.norm();
            let dir = if nv <= 1e-300 {
                DVector::from_fn(alg.m - 1, |i, _| if i == 0 { 1.0 } else { 0.0 })
            } else {
                vr.scale(1.0 / nv)
            };
            let mk = |s: f64| {
                let mut d = DMatrix::zeros(alg.m, 1);
                d[(0, 0)] = cr(0.5);
                for i in 0..alg.m - 1 {
                    d[(i + 1, 0)] = cr(0.5 * s * dir[i]);
                }
                Element { alg, complex: false, data: d }
            };
            SpectralDecomposition { values: vec![t + nv, t - nv], frame: vec![mk(1.0), mk(-1.0)] }
        }
    };
    let recon = sd.reconstruct(alg);
    let resid = recon.dist(x);
    if resid > tol::EIG_REL * (1.0 + x.norm()) * 100.0 {
        return Err(Error::NumericalFailure(format!(
            "spectral reconstruction residual {resid:.3e}"
        )));
    }
    Ok(sd)
}

/// Jordan determinant and trace of a real element.
pub fn det_tr(x: &Element) -> Result<(f64, f64)> {
    x.check_real()?;
    let d = x.det_c();
    let t = x.trace_c();
    Ok((d.re, t.re))
}

/// Functional calculus: x -> sum f(lambda_j) c_j. `f` returns a domain error
/// for spectral values outside the domain of the scalar function.
pub fn funcalc(x: &Element, f: impl Fn(f64) -> Result<f64>) -> Result<Element> {
    let sd = spectral(x)?;
    let alg = x.algebra();
    let mut acc = Element::zero(alg);
    for (lam, c) in sd.values.iter().zip(&sd.frame) {
        acc = acc.add(&c.scale(f(*lam)?))?;
    }
    Ok(acc)
}

/// Functional calculus with complex scalar function (e.g. lambda -> e^{i
/// lambda}); the result lives in V_C.
pub fn funcalc_c(x: &Element, f: impl Fn(f64) -> C64) -> Result<Element> {
    let sd = spectral(x)?;
    let alg = x.algebra();
    let mut acc = Element::zero(alg).complexify();
    for (lam, c) in sd.values.iter().zip(&sd.frame) {
        acc = acc.add(&c.scale_c(f(*lam)))?;
    }
    Ok(acc)
}

pub fn inverse(x: &Element) -> Result<Element> {
    let scale = spectral(x)?.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    funcalc(x, |lam| {
        if lam.abs() <= tol::EIG_REL * (1.0 + scale) {
            Err(Error::DomainError("inverse of a singular element".into()))
        } else {
            Ok(1.0 / lam)
        }
    })
}

pub fn power(x: &Element, p: f64) -> Result<Element> {
    funcalc(x, |lam| {
        if p.fract() == 0.0 && p >= 0.0 {
            Ok(lam.powf(p))
        } else if lam <= 0.0 {
            Err(Error::DomainError(format!("power {p} of non-positive spectral value {lam}")))
        } else {
            Ok(lam.powf(p))
        }
    })
}

pub fn exp_el(x: &Element) -> Result<Element> {
    funcalc(x, |lam| Ok(lam.exp()))
}

pub fn log_el(x: &Element) -> Result<Element> {
    funcalc(x, |lam| {
        if lam <= 0.0 {
            Err(Error::DomainError(format!("log of non-positive spectral value {lam}")))
        } else {
            Ok(lam.ln())
        }
    })
}

/// Peirce projections of V with respect to an idempotent c:
/// E1 = P(c), E0 = P(e - c), E_half = I - E1 - E0.
#[derive(Clone, Debug)]
pub struct PeirceDecomposition {
    pub e1: LinOp,
    pub ehalf: LinOp,
    pub e0: LinOp,
}

impl PeirceDecomposition {
    /// Ranks of the three projections (dimensions of the Peirce spaces).
    pub fn dims(&self) -> (usize, usize, usize) {
        let d1 = self.e1.m.trace().re.round() as usize;
        let dh = self.ehalf.m.trace().re.round() as usize;
        let d0 = self.e0.m.trace().re.round() as usize;
        (d1, dh, d0)
    }
}

pub fn peirce(c: &Element) -> Result<PeirceDecomposition> {
    c.check_real()?;
    let defect = square(c).dist(c);
    if defect > tol::EIG_REL * (1.0 + c.norm()) * 100.0 {
        return Err(Error::NotIdempotent(defect));
    }
    let alg = c.algebra();
    let e = Element::unit(alg);
    let e1 = quad_rep(c);
    let e0 = quad_rep(&e.sub(c)?);
    let ehalf = LinOp::identity(alg).sub(&e1).sub(&e0);
    Ok(PeirceDecomposition { e1, ehalf, e0 })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConeLocation {
    Interior,
    Boundary,
    Exterior,
}

impl ConeLocation {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConeLocation::Interior => "interior",
            ConeLocation::Boundary => "boundary",
            ConeLocation::Exterior => "exterior",
        }
    }
}

pub fn cone_classify(x: &Element) -> Result<ConeLocation> {
    let sd = spectral(x)?;
    let scale = sd.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let eps = tol::EIG_REL * (1.0 + scale);
    let min = sd.values.last().cloned().unwrap_or(0.0);
    if min > eps {
        Ok(ConeLocation::Interior)
    } else if min < -eps {
        Ok(ConeLocation::Exterior)
    } else {
        Ok(ConeLocation::Boundary)
    }
}

/// Number of strictly positive spectral values of an invertible element;
/// identifies the G0-orbit representative epsilon_k.
pub fn signature_orbit(x: &Element) -> Result<usize> {
    let sd = spectral(x)?;
    let scale = sd.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let eps = tol::EIG_REL * (1.0 + scale);
    if sd.values.iter().any(|v| v.abs() <= eps) {
        return Err(Error::SingularElement);
    }
    Ok(sd.values.iter().filter(|&&v| v > 0.0).count())
}

/// The orthonormal coordinate basis of V as elements.
pub fn basis_elements(alg: AlgebraDescriptor) -> Vec<Element> {
    (0..alg.n)
        .map(|k| {
            let mut v = DVector::zeros(alg.n);
            v[k] = cr(1.0);
            Element::from_coords(alg, &v, false).expect("basis size")
        })
        .collect()
}

/// The standard Jordan frame: diagonal matrix units for the matrix kinds,
/// (1/2)(1, +-e_1) for spin factors.
pub fn standard_frame(alg: AlgebraDescriptor) -> Vec<Element> {
    match alg.kind {
        Kind::SymReal | Kind::HermComplex => (0..alg.m)
            .map(|j| {
                let mut m = DMatrix::zeros(alg.m, alg.m);
                m[(j, j)] = cr(1.0);
                Element { alg, complex: false, data: m }
            })
            .collect(),
        Kind::Spin => {
            let e1 = DVector::from_fn(alg.m - 1, |i, _| if i == 0 { cr(0.5) } else { cr(0.0) });
            let t = cr(0.5);
            vec![
                Element::from_spin_parts(alg, t, &e1, false).unwrap(),
                Element::from_spin_parts(alg, t, &e1.map(|z| -z), false).unwrap(),
            ]
        }
    }
}

/// Validate a Jordan frame: primitive idempotents, pairwise orthogonal,
/// summing to the unit.
pub fn check_frame(frame: &[Element]) -> Result<()> {
    if frame.is_empty() {
        return Err(Error::BadFrame("empty frame".into()));
    }
    let alg = frame[0].algebra();
    if frame.len() != alg.rank() {
        return Err(Error::BadFrame(format!(
            "expected {} idempotents, got {}",
            alg.rank(),
            frame.len()
        )));
    }
    let tolv = 100.0 * tol::EIG_REL;
    let mut sum = Element::zero(alg);
    for (i, ci) in frame.iter().enumerate() {
        ci.check_real()?;
        let idem = square(ci).dist(ci);
        if idem > tolv {
            return Err(Error::BadFrame(format!("idempotency defect {idem:.3e}")));
        }
        let (_, tr) = det_tr(ci)?;
        if (tr - 1.0).abs() > tolv {
            return Err(Error::BadFrame(format!("idempotent {i} is not primitive (tr {tr})")));
        }
        for cj in frame.iter().skip(i + 1) {
            let ip = ci.herm_ip(cj).norm();
            if ip > tolv {
                return Err(Error::BadFrame(format!("orthogonality defect {ip:.3e}")));
            }
        }
        sum = sum.add(ci)?;
    }
    let completeness = sum.dist(&Element::unit(alg));
    if completeness > tolv {
        return Err(Error::BadFrame(format!("completeness defect {completeness:.3e}")));
    }
    Ok(())
}

/// Signature representatives epsilon_k = sum_{j<=k} c_j - sum_{j>k} c_j for
/// the standard frame.
pub fn epsilon_k(alg: AlgebraDescriptor, k: usize) -> Element {
    let frame = standard_frame(alg);
    let mut acc = Element::zero(alg);
    for (j, c) in frame.iter().enumerate() {
        acc = acc.add(&c.scale(if j < k { 1.0 } else { -1.0 })).unwrap();
    }
    acc
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
            AlgebraDescriptor::new(Kind::Spin, 3).unwrap(),
            AlgebraDescriptor::new(Kind::Spin, 5).unwrap(),
        ]
    }

    #[test]
    fn descriptor_table() {
        let a = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        assert_eq!((a.dim(), a.rank(), a.peirce_d()), (3, 2, 1));
        let a = AlgebraDescriptor::new(Kind::HermComplex, 3).unwrap();
        assert_eq!((a.dim(), a.rank(), a.peirce_d()), (9, 3, 2));
        let a = AlgebraDescriptor::new(Kind::Spin, 4).unwrap();
        assert_eq!((a.dim(), a.rank(), a.peirce_d()), (4, 2, 2));
        assert!(AlgebraDescriptor::new(Kind::Spin, 2).is_err());
        assert!(AlgebraDescriptor::new(Kind::SymReal, 0).is_err());
    }

    #[test]
    fn product_matches_dense_oracle() {
        // Sym(2): diag(1,2) o [[0,1],[1,0]] = [[0,1.5],[1.5,0]]
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let x = Element::from_matrix(alg, &DMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(2.0)]), false).unwrap();
        let y = Element::from_matrix(alg, &DMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]), false).unwrap();
        let p = product(&x, &y).unwrap();
        assert!((p.raw()[(0, 1)].re - 1.5).abs() < 1e-15);
        assert!(p.raw()[(0, 0)].norm() < 1e-15);
    }

    #[test]
    fn unit_is_neutral() {
        let mut s = Sampler::new(7);
        for alg in algebras() {
            let x = s.real_element(alg, 1.0);
            let e = Element::unit(alg);
            assert!(product(&x, &e).unwrap().dist(&x) < 1e-12 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn jordan_identity_and_assoc_form() {
        let mut s = Sampler::new(42);
        for alg in algebras() {
            for _ in 0..50 {
                let x = s.real_element(alg, 1.0);
                let y = s.real_element(alg, 1.0);
                let z = s.real_element(alg, 1.0);
                let x2 = square(&x);
                let lhs = product(&x2, &product(&x, &y).unwrap()).unwrap();
                let rhs = product(&x, &product(&x2, &y).unwrap()).unwrap();
                let scale = x.norm().powi(3) * y.norm() + 1e-30;
                assert!(lhs.dist(&rhs) <= tol::JORDAN_REL * scale);
                let a = product(&x, &y).unwrap().herm_ip(&z);
                let b = x.herm_ip(&product(&y, &z).unwrap());
                let s2 = x.norm() * y.norm() * z.norm() + 1e-30;
                assert!((a - b).norm() <= tol::JORDAN_REL * s2);
            }
        }
    }

    #[test]
    fn quad_rep_oracle_sym2() {
        // P(diag(1,2)) [[0,1],[1,0]] = x y x = [[0,2],[2,0]]
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let x = Element::from_matrix(alg, &DMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(2.0)]), false).unwrap();
        let y = Element::from_matrix(alg, &DMatrix::from_row_slice(2, 2, &[cr(0.0), cr(1.0), cr(1.0), cr(0.0)]), false).unwrap();
        let p = quad_rep(&x).apply(&y).unwrap();
        assert!((p.raw()[(0, 1)].re - 2.0).abs() < 1e-14);
        // P(e) = Id, L(e) = Id
        let e = Element::unit(alg);
        assert!(quad_rep(&e).dist(&LinOp::identity(alg)) < 1e-13);
        assert!(lmul(&e).dist(&LinOp::identity(alg)) < 1e-13);
    }

    #[test]
    fn quad_rep_properties() {
        let mut s = Sampler::new(5);
        for alg in algebras() {
            let x = s.interior_point(alg, 0.8);
            // P(x) e = x^2
            let e = Element::unit(alg);
            let px = quad_rep(&x);
            assert!(px.apply(&e).unwrap().dist(&square(&x)) < tol::OP_REL * (1.0 + x.norm().powi(2)));
            // P(x^-1) = P(x)^-1
            let pinv = quad_rep(&inverse(&x).unwrap());
            let pxinv = px.try_inverse().unwrap();
            assert!(pinv.dist(&pxinv) <= tol::OP_REL * (1.0 + pinv.norm()));
            // spin-factor P(x) via operator formula agrees with quad_apply
            let y = s.real_element(alg, 1.0);
            let a = quad_apply(&x, &y).unwrap();
            let b = px.apply(&y).unwrap();
            assert!(a.dist(&b) < 1e-10 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn box_op_unit_is_lmul() {
        let mut s = Sampler::new(11);
        for alg in algebras() {
            let x = s.real_element(alg, 1.0);
            let e = Element::unit(alg);
            let b = box_op(&x, &e).unwrap();
            assert!(b.dist(&lmul(&x)) < 1e-12 * (1.0 + x.norm()));
            let b2 = box_op(&e, &x).unwrap();
            assert!(b2.dist(&lmul(&x)) < 1e-12 * (1.0 + x.norm()));
        }
    }

    #[test]
    fn box_op_orthogonal_idempotents() {
        // x = diag(1,0), y = diag(0,1): x o y = 0, so x [] y is the bare
        // commutator [L(x), L(y)] assembled directly
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let frame = standard_frame(alg);
        let b = box_op(&frame[0], &frame[1]).unwrap();
        let lx = lmul(&frame[0]);
        let ly = lmul(&frame[1]);
        let direct = lx.compose(&ly).sub(&ly.compose(&lx));
        assert!(b.dist(&direct) < 1e-14);
        // it annihilates the diagonal part
        let e = Element::unit(alg);
        assert!(b.apply(&e).unwrap().norm() < 1e-14);
    }

    #[test]
    fn spectral_oracles() {
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let x = Element::from_matrix(alg, &DMatrix::from_row_slice(2, 2, &[cr(3.0), cr(0.0), cr(0.0), cr(-1.0)]), false).unwrap();
        let sd = spectral(&x).unwrap();
        assert!((sd.values[0] - 3.0).abs() < 1e-12);
        assert!((sd.values[1] + 1.0).abs() < 1e-12);
        let (d, t) = det_tr(&x).unwrap();
        assert!((d + 3.0).abs() < 1e-12 && (t - 2.0).abs() < 1e-12);

        // spin factor: values t +- |v|
        let alg = AlgebraDescriptor::new(Kind::Spin, 4).unwrap();
        let v = DVector::from_vec(vec![cr(0.3), cr(-0.4), cr(1.2)]);
        let x = Element::from_spin_parts(alg, cr(0.7), &v, false).unwrap();
        let nv = (0.3f64 * 0.3 + 0.4 * 0.4 + 1.2 * 1.2).sqrt();
        let sd = spectral(&x).unwrap();
        assert!((sd.values[0] - (0.7 + nv)).abs() < 1e-12);
        assert!((sd.values[1] - (0.7 - nv)).abs() < 1e-12);
        let (d, t) = det_tr(&x).unwrap();
        assert!((d - (0.7 * 0.7 - nv * nv)).abs() < 1e-12);
        assert!((t - 1.4).abs() < 1e-12);
    }

    #[test]
    fn spectral_invariants_random() {
        let mut s = Sampler::new(23);
        for alg in algebras() {
            for _ in 0..20 {
                let x = s.real_element(alg, 1.3);
                let sd = spectral(&x).unwrap();
                assert_eq!(sd.values.len(), alg.rank());
                check_frame(&sd.frame).unwrap();
                assert!(sd.reconstruct(alg).dist(&x) <= 1e-9 * (1.0 + x.norm()));
                assert!(sd.values.windows(2).all(|w| w[0] >= w[1] - 1e-12));
            }
        }
    }

    #[test]
    fn funcalc_oracles() {
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let x = Element::from_matrix(alg, &DMatrix::from_row_slice(2, 2, &[cr(2.0), cr(0.0), cr(0.0), cr(4.0)]), false).unwrap();
        let xi = inverse(&x).unwrap();
        assert!((xi.raw()[(0, 0)].re - 0.5).abs() < 1e-13);
        assert!((xi.raw()[(1, 1)].re - 0.25).abs() < 1e-13);
        let y = Element::from_matrix(alg, &DMatrix::from_row_slice(2, 2, &[cr(4.0), cr(0.0), cr(0.0), cr(9.0)]), false).unwrap();
        let sq = power(&y, 0.5).unwrap();
        assert!((sq.raw()[(0, 0)].re - 2.0).abs() < 1e-12);
        assert!((sq.raw()[(1, 1)].re - 3.0).abs() < 1e-12);
        let e = Element::unit(alg);
        assert!(power(&e, 0.5).unwrap().dist(&e) < 1e-13);
        // funcalc(x, id) = x
        let mut s = Sampler::new(3);
        for alg in algebras() {
            let x = s.real_element(alg, 1.0);
            assert!(funcalc(&x, Ok).unwrap().dist(&x) < 1e-10 * (1.0 + x.norm()));
            // P(x^{1/2}) e = x on the cone
            let w = s.interior_point(alg, 0.7);
            let h = power(&w, 0.5).unwrap();
            assert!(quad_apply(&h, &Element::unit(alg)).unwrap().dist(&w) < 1e-9 * (1.0 + w.norm()));
        }
        // domain errors
        let z = Element::from_matrix(alg, &DMatrix::from_row_slice(2, 2, &[cr(1.0), cr(0.0), cr(0.0), cr(-1.0)]), false).unwrap();
        assert!(log_el(&z).is_err());
        assert!(matches!(power(&z, 0.5), Err(Error::DomainError(_))));
    }

    #[test]
    fn peirce_blocks_sym() {
        // c = diag(1, 0) in Sym(2): block dims (1, 1, 1)
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let c = standard_frame(alg)[0].clone();
        let pd = peirce(&c).unwrap();
        assert_eq!(pd.dims(), (1, 1, 1));
        let idsum = pd.e1.add(&pd.ehalf).add(&pd.e0);
        assert!(idsum.dist(&LinOp::identity(alg)) < 1e-12);
        // idempotency and mutual annihilation
        for p in [&pd.e1, &pd.ehalf, &pd.e0] {
            assert!(p.compose(p).dist(p) < 1e-10);
        }
        assert!(pd.e1.compose(&pd.e0).norm() < 1e-10);
        // c = e and c = 0
        let pd = peirce(&Element::unit(alg)).unwrap();
        assert_eq!(pd.dims(), (3, 0, 0));
        let pd = peirce(&Element::zero(alg)).unwrap();
        assert_eq!(pd.dims(), (0, 0, 3));
        // block dims p(p+1)/2, pq, q(q+1)/2 for Sym(3), c of rank 1
        let alg = AlgebraDescriptor::new(Kind::SymReal, 3).unwrap();
        let c = standard_frame(alg)[0].clone();
        let pd = peirce(&c).unwrap();
        assert_eq!(pd.dims(), (1, 2, 3));
        // non-idempotent input
        let x = Element::unit(alg).scale(0.5);
        assert!(matches!(peirce(&x), Err(Error::NotIdempotent(_))));
    }

    #[test]
    fn cone_and_orbit() {
        let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
        let e = Element::unit(alg);
        assert_eq!(cone_classify(&e).unwrap(), ConeLocation::Interior);
        assert_eq!(signature_orbit(&e).unwrap(), 2);
        assert_eq!(cone_classify(&e.neg()).unwrap(), ConeLocation::Exterior);
        assert_eq!(signature_orbit(&e.neg()).unwrap(), 0);
        let x = epsilon_k(alg, 1);
        assert_eq!(cone_classify(&x).unwrap(), ConeLocation::Exterior);
        assert_eq!(signature_orbit(&x).unwrap(), 1);
        let c = standard_frame(alg)[0].clone();
        assert_eq!(cone_classify(&c).unwrap(), ConeLocation::Boundary);
        assert!(matches!(signature_orbit(&c), Err(Error::SingularElement)));
    }

    #[test]
    fn signature_invariant_under_congruence() {
        let mut s = Sampler::new(17);
        for alg in [
            AlgebraDescriptor::new(Kind::SymReal, 3).unwrap(),
            AlgebraDescriptor::new(Kind::HermComplex, 2).unwrap(),
        ] {
            for _ in 0..20 {
                let x = s.real_element(alg, 1.0);
                if signature_orbit(&x).is_err() {
                    continue;
                }
                let k = signature_orbit(&x).unwrap();
                let a = s.invertible_matrix(alg.storage_size(), alg.kind() == Kind::HermComplex);
                let conj = match alg.kind() {
                    Kind::SymReal => &a * x.raw() * a.transpose(),
                    _ => &a * x.raw() * a.adjoint(),
                };
                let y = Element::from_matrix(alg, &conj, false).unwrap();
                assert_eq!(signature_orbit(&y).unwrap(), k);
            }
        }
    }

    #[test]
    fn spin_rank2_quadratic_identity() {
        // x^2 - tr(x) x + det(x) e = 0 validates the spin product formula
        let mut s = Sampler::new(19);
        let alg = AlgebraDescriptor::new(Kind::Spin, 6).unwrap();
        for _ in 0..50 {
            let x = s.real_element(alg, 1.5);
            let (d, t) = det_tr(&x).unwrap();
            let resid = square(&x)
                .sub(&x.scale(t))
                .unwrap()
                .add(&Element::unit(alg).scale(d))
                .unwrap();
            assert!(resid.norm() < 1e-12 * (1.0 + x.norm().powi(2)));
        }
    }

    proptest::proptest! {
        #[test]
        fn prop_spin_spectral_consistency(
            t in -10.0f64..10.0,
            v1 in -10.0f64..10.0,
            v2 in -10.0f64..10.0,
            v3 in -10.0f64..10.0,
        ) {
            let alg = AlgebraDescriptor::new(Kind::Spin, 4).unwrap();
            let v = DVector::from_vec(vec![cr(v1), cr(v2), cr(v3)]);
            let x = Element::from_spin_parts(alg, cr(t), &v, false).unwrap();
            let sd = spectral(&x).unwrap();
            let (d, tr) = det_tr(&x).unwrap();
            let scale = 1.0 + x.norm() * x.norm();
            proptest::prop_assert!((sd.values[0] * sd.values[1] - d).abs() < 1e-10 * scale);
            proptest::prop_assert!((sd.values[0] + sd.values[1] - tr).abs() < 1e-10 * scale);
        }

        #[test]
        fn prop_product_commutative(
            a in -5.0f64..5.0,
            b in -5.0f64..5.0,
            c in -5.0f64..5.0,
            d in -5.0f64..5.0,
        ) {
            let alg = AlgebraDescriptor::new(Kind::SymReal, 2).unwrap();
            let x = Element::from_matrix(
                alg,
                &DMatrix::from_row_slice(2, 2, &[cr(a), cr(b), cr(b), cr(-a)]),
                false,
            )
            .unwrap();
            let y = Element::from_matrix(
                alg,
                &DMatrix::from_row_slice(2, 2, &[cr(c), cr(d), cr(d), cr(c)]),
                false,
            )
            .unwrap();
            let xy = product(&x, &y).unwrap();
            let yx = product(&y, &x).unwrap();
            proptest::prop_assert!(xy.dist(&yx) < 1e-12 * (1.0 + xy.norm()));
        }
    }

    #[test]
    fn coords_roundtrip() {
        let mut s = Sampler::new(31);
        for alg in algebras() {
            let x = s.complex_element(alg, 1.0);
            let y = Element::from_coords(alg, &x.to_coords(), true).unwrap();
            assert!(x.dist(&y) < 1e-13 * (1.0 + x.norm()));
            // Hermitian ip = coordinate dot product
            let z = s.complex_element(alg, 1.0);
            let dot = x
                .to_coords()
                .iter()
                .zip(z.to_coords().iter())
                .map(|(a, b)| a * b.conj())
                .fold(cr(0.0), |a, b| a + b);
            assert!((x.herm_ip(&z) - dot).norm() < 1e-11 * (1.0 + x.norm() * z.norm()));
        }
    }
}
