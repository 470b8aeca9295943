//! J-contraction semigroups for Sp(r,R), SO*(2l) and U(p,q): membership via
//! the Hermitian matrix J - gamma^* J gamma, the Cayley map C(Z) =
//! (Z - iJ)(Z + iJ)^{-1} between the tube and the open semigroup, the
//! metaplectic double cover with tracked square-root branches,
//! Cauchy-Szego kernels on the tube and on the semigroup, and enumeration
//! of the highest-weight sets behind the Hardy-space decompositions.
//!
//! Matrix realizations. For Sp(r,R) the tube variable is a complex
//! symmetric 2r x 2r matrix; for U(p,q) a complex n x n matrix (n = p + q);
//! for SO*(2l) the quaternion-Hermitian picture is used: V_C = {Z :
//! Js Z^T Js^{-1} = Z} with Js = [[0, I], [-I, 0]], on which the Jordan
//! determinant is the reduced Pfaffian Pf(Z Js)/Pf(Js). In every case
//! J = diag(-I, I) and a point Z of the tube has positive-definite
//! Hermitian imaginary part (Z - Z^*)/2i, which is equivalent to C(Z)
//! being a strict J-contraction.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, cr, C64};
use crate::tol;

/// One of the three classical groups, with its Jordan-algebra data.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupKind {
    /// Sp(r, R); tube over Sym(2r, R).
    SpR(usize),
    /// SO*(2l); tube over Herm(l, H) in the quaternion-Hermitian picture.
    SOStar(usize),
    /// U(p, q); tube over Herm(n, C), n = p + q.
    Upq(usize, usize),
}

impl GroupKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            GroupKind::SpR(r) if r >= 1 => Ok(()),
            GroupKind::SOStar(l) if l >= 1 => Ok(()),
            GroupKind::Upq(p, q) if p + q >= 1 => Ok(()),
            GroupKind::SpR(r) => Err(Error::InvalidSize { what: "Sp rank", size: r, min: 1 }),
            GroupKind::SOStar(l) => Err(Error::InvalidSize { what: "SO* parameter", size: l, min: 1 }),
            GroupKind::Upq(..) => Err(Error::InvalidSize { what: "U(p,q) size", size: 0, min: 1 }),
        }
    }

    /// Side of the matrix realization.
    pub fn mat_size(&self) -> usize {
        match *self {
            GroupKind::SpR(r) => 2 * r,
            GroupKind::SOStar(l) => 2 * l,
            GroupKind::Upq(p, q) => p + q,
        }
    }

    /// Dimension N of the Jordan algebra.
    pub fn hardy_dim(&self) -> usize {
        match *self {
            GroupKind::SpR(r) => r * (2 * r + 1),
            GroupKind::SOStar(l) => l * (2 * l - 1),
            GroupKind::Upq(p, q) => (p + q) * (p + q),
        }
    }

    /// Rank R of the Jordan algebra.
    pub fn hardy_rank(&self) -> usize {
        match *self {
            GroupKind::SpR(r) => 2 * r,
            GroupKind::SOStar(l) => l,
            GroupKind::Upq(p, q) => p + q,
        }
    }

    /// Exponent of the semigroup Szego kernel on the matrix determinant:
    /// r + 1/2, l - 1/2 and n respectively.
    pub fn kernel_exponent(&self) -> f64 {
        match *self {
            GroupKind::SpR(r) => r as f64 + 0.5,
            GroupKind::SOStar(l) => l as f64 - 0.5,
            GroupKind::Upq(p, q) => (p + q) as f64,
        }
    }

    /// Whether the kernel exponent is half-integral (double cover needed).
    pub fn half_integral(&self) -> bool {
        matches!(self, GroupKind::SpR(_) | GroupKind::SOStar(_))
    }

    /// The signature matrix J = diag(-I, I).
    pub fn j_matrix(&self) -> DMatrix<C64> {
        let (a, b) = match *self {
            GroupKind::SpR(r) => (r, r),
            GroupKind::SOStar(l) => (l, l),
            GroupKind::Upq(p, q) => (p, q),
        };
        let mut j = DMatrix::zeros(a + b, a + b);
        for i in 0..a {
            j[(i, i)] = cr(-1.0);
        }
        for i in 0..b {
            j[(a + i, a + i)] = cr(1.0);
        }
        j
    }

    /// The skew form of the quaternionic structure (SO* only).
    fn j_skew(&self) -> DMatrix<C64> {
        let l = match *self {
            GroupKind::SOStar(l) => l,
            _ => unreachable!(),
        };
        let mut js = DMatrix::zeros(2 * l, 2 * l);
        for i in 0..l {
            js[(i, l + i)] = cr(1.0);
            js[(l + i, i)] = cr(-1.0);
        }
        js
    }

    /// Project onto the complexified Jordan algebra V_C of the kind.
    pub fn project_vc(&self, z: &DMatrix<C64>) -> DMatrix<C64> {
        match self {
            GroupKind::SpR(_) => (z + z.transpose()).scale(0.5),
            GroupKind::Upq(..) => z.clone(),
            GroupKind::SOStar(_) => {
                let js = self.j_skew();
                let jsinv = js.map(|w| -w);
                (z + js * z.transpose() * jsinv).scale(0.5)
            }
        }
    }

    pub fn vc_defect(&self, z: &DMatrix<C64>) -> f64 {
        linalg::fro(&(z - self.project_vc(z))) / (1.0 + linalg::fro(z))
    }

    /// Jordan determinant on V_C: the matrix determinant, except for SO*
    /// where it is the reduced Pfaffian Pf(Z Js)/Pf(Js) (so that det_J(I) =
    /// 1 and det_J^2 = Det).
    pub fn det_jordan(&self, z: &DMatrix<C64>) -> Result<C64> {
        match self {
            GroupKind::SpR(_) | GroupKind::Upq(..) => Ok(linalg::det_c(z)),
            GroupKind::SOStar(_) => {
                let js = self.j_skew();
                let pf = linalg::pfaffian(&(z * &js))?;
                let pf0 = linalg::pfaffian(&js)?;
                Ok(pf / pf0)
            }
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            GroupKind::SpR(r) => format!("Sp({r},R)"),
            GroupKind::SOStar(l) => format!("SO*({})", 2 * l),
            GroupKind::Upq(p, q) => format!("U({p},{q})"),
        }
    }
}

/// A point of the tube domain: Z in V_C with positive-definite Hermitian
/// imaginary part.
#[derive(Clone, Debug)]
pub struct TubePoint {
    kind: GroupKind,
    z: DMatrix<C64>,
}

impl TubePoint {
    pub fn new(kind: GroupKind, z: DMatrix<C64>) -> Result<Self> {
        kind.validate()?;
        let m = kind.mat_size();
        if z.nrows() != m || z.ncols() != m {
            return Err(Error::SizeMismatch { got: z.nrows(), expected: m });
        }
        let defect = kind.vc_defect(&z);
        if defect > tol::CONSTRUCT_TOL {
            return Err(Error::DomainError(format!(
                "matrix is not in the complexified algebra (defect {defect:.3e})"
            )));
        }
        let y = (&z - z.adjoint()).map(|w| w / C64::new(0.0, 2.0));
        let (vals, _) = linalg::herm_eigen(&y)?;
        let min = vals.last().cloned().unwrap_or(0.0);
        if min <= 1e-12 {
            return Err(Error::NotInterior);
        }
        Ok(Self { kind, z: kind.project_vc(&z) })
    }

    /// 2i s I: the reference interior point (off the singular set for
    /// every kind).
    pub fn reference(kind: GroupKind, s: f64) -> Self {
        let m = kind.mat_size();
        Self { kind, z: DMatrix::identity(m, m).map(|w: C64| w * C64::new(0.0, 2.0 * s)) }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }
    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.z
    }

    /// Whether Z lies on the singular set Sigma = {det(Z + iJ) = 0},
    /// relative to the scale of Z + iJ.
    pub fn on_singular_set(&self) -> bool {
        let j = self.kind.j_matrix();
        let m = &self.z + j.map(|w| w * linalg::I);
        let sv = linalg::singular_values(&m);
        let smax = sv.first().cloned().unwrap_or(0.0);
        smax == 0.0 || *sv.last().unwrap() <= 1e-10 * smax
    }

    pub fn dist(&self, other: &TubePoint) -> f64 {
        linalg::fro(&(&self.z - &other.z))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MembershipGrade {
    Strict,
    Boundary,
    Outside,
}

impl MembershipGrade {
    pub fn as_str(&self) -> &'static str {
        match self {
            MembershipGrade::Strict => "strict",
            MembershipGrade::Boundary => "boundary",
            MembershipGrade::Outside => "outside",
        }
    }
}

/// An element of the matrix semigroup, optionally carrying a branch value w
/// of the double cover (w^2 = det(Z + iJ)^{-1} for gamma = C(Z)).
#[derive(Clone, Debug)]
pub struct SemigroupElement {
    kind: GroupKind,
    gamma: DMatrix<C64>,
    w: Option<C64>,
}

impl SemigroupElement {
    pub fn new(kind: GroupKind, gamma: DMatrix<C64>) -> Result<Self> {
        kind.validate()?;
        let m = kind.mat_size();
        if gamma.nrows() != m || gamma.ncols() != m {
            return Err(Error::SizeMismatch { got: gamma.nrows(), expected: m });
        }
        Ok(Self { kind, gamma, w: None })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }
    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.gamma
    }
    pub fn branch(&self) -> Option<C64> {
        self.w
    }

    pub fn dist(&self, other: &SemigroupElement) -> f64 {
        linalg::fro(&(&self.gamma - &other.gamma))
    }

    /// Attach a branch value, validating w^2 det(Z + iJ) = 1.
    pub fn with_branch(mut self, w: C64) -> Result<Self> {
        let check = (w * w * det_z_plus_ij(&self)? - cr(1.0)).norm();
        if check > 1e-6 {
            return Err(Error::BranchMismatch(format!(
                "w^2 det(Z+iJ) - 1 = {check:.3e}"
            )));
        }
        self.w = Some(w);
        Ok(self)
    }
}

/// Membership report for J - gamma^* J gamma >= 0.
#[derive(Clone, Debug)]
pub struct MembershipReport {
    pub grade: MembershipGrade,
    pub min_eigenvalue: f64,
    /// Distance of C^{-1}(gamma) from the kind's conformal cell (None when
    /// I - gamma is singular). A large value flags an element that is a
    /// J-contraction but not of the form C(Z) for Z in V_C.
    pub cell_defect: Option<f64>,
}

pub fn semigroup_membership(gamma: &SemigroupElement) -> Result<MembershipReport> {
    let j = gamma.kind.j_matrix();
    let h = &j - gamma.gamma.adjoint() * &j * &gamma.gamma;
    let (vals, _) = linalg::herm_eigen(&h)?;
    let min = vals.last().cloned().unwrap_or(0.0);
    let grade = if min > tol::MEMBERSHIP_TOL {
        MembershipGrade::Strict
    } else if min >= -tol::MEMBERSHIP_TOL {
        MembershipGrade::Boundary
    } else {
        MembershipGrade::Outside
    };
    let cell_defect = cayley_inverse_raw(gamma).ok().map(|z| gamma.kind.vc_defect(&z));
    Ok(MembershipReport { grade, min_eigenvalue: min, cell_defect })
}

/// The Cayley map C(Z) = (Z - iJ)(Z + iJ)^{-1}.
pub fn cayley_c(z: &TubePoint) -> Result<SemigroupElement> {
    if z.on_singular_set() {
        return Err(Error::OnSingularSet);
    }
    let j = z.kind.j_matrix().map(|w| w * linalg::I);
    let num = z.matrix() - &j;
    let den = z.matrix() + &j;
    let gamma = num * linalg::inverse_c(&den)?;
    SemigroupElement::new(z.kind, gamma)
}

/// Z + iJ = 2 (I - gamma)^{-1} i J, so Z = i (I + gamma)(I - gamma)^{-1} J.
fn cayley_inverse_raw(gamma: &SemigroupElement) -> Result<DMatrix<C64>> {
    let m = gamma.kind.mat_size();
    let id = DMatrix::<C64>::identity(m, m);
    let den = &id - &gamma.gamma;
    let sv = linalg::singular_values(&den);
    let smax = sv.first().cloned().unwrap_or(0.0);
    if smax == 0.0 || *sv.last().unwrap() <= 1e-12 * smax {
        return Err(Error::NotInvertible);
    }
    let num = &id + &gamma.gamma;
    let j = gamma.kind.j_matrix();
    Ok((num * linalg::inverse_c(&den)? * j).map(|w| w * linalg::I))
}

/// Inverse Cayley transform, validated to land in the tube.
pub fn cayley_c_inverse(gamma: &SemigroupElement) -> Result<TubePoint> {
    let z = cayley_inverse_raw(gamma)?;
    TubePoint::new(gamma.kind, z)
}

/// det(Z + iJ) as a function of gamma = C(Z):
/// det(Z + iJ) = (2i)^m det(J) / det(I - gamma).
fn det_z_plus_ij(gamma: &SemigroupElement) -> Result<C64> {
    let m = gamma.kind.mat_size();
    let id = DMatrix::<C64>::identity(m, m);
    let d = linalg::det_c(&(&id - &gamma.gamma));
    if d.norm() < 1e-300 {
        return Err(Error::NotInvertible);
    }
    let two_i = C64::new(0.0, 2.0).powi(m as i32);
    Ok(two_i * linalg::det_c(&gamma.kind.j_matrix()) / d)
}

/// Reference branch of det(Z + iJ)^{-1/2}: the square root continued from
/// the reference element C(2iI) along the straight tube path. The branch is
/// snapped onto det(Z + iJ) computed through (2i)^m det(J)/det(I - gamma),
/// the same expression the branch invariant is checked against.
fn w_reference(gamma: &SemigroupElement) -> Result<C64> {
    let log = log_det_z_plus_ij_tracked(gamma.kind, &cayley_inverse_raw(gamma)?)?;
    let log = linalg::snap_log(log, det_z_plus_ij(gamma)?);
    Ok((-0.5 * log).exp())
}

/// Continuous log det(Z + iJ) from the reference point 2iI, snapped to the
/// exactly computed determinant on the tracked branch.
fn log_det_z_plus_ij_tracked(kind: GroupKind, z: &DMatrix<C64>) -> Result<C64> {
    let base = TubePoint::reference(kind, 1.0);
    let j = kind.j_matrix().map(|w| w * linalg::I);
    let base_det = linalg::det_c(&(base.matrix() + &j));
    let path = |t: f64| {
        let zt = base.matrix().map(|w| w * cr(1.0 - t)) + z.map(|w| w * cr(t));
        zt + &j
    };
    let tracked = linalg::tracked_log_det(&path, base_det.ln())?;
    Ok(linalg::snap_log(tracked, linalg::det_c(&(z + &j))))
}

/// Lift a strict element to the double cover on the given sheet (+1 picks
/// the reference branch).
pub fn metaplectic_lift(gamma: &SemigroupElement, sheet: i8) -> Result<SemigroupElement> {
    if !gamma.kind.half_integral() {
        return Err(Error::NotImplementedForKind("double cover of U(p,q)"));
    }
    let wr = w_reference(gamma)?;
    let w = if sheet >= 0 { wr } else { -wr };
    let mut g = gamma.clone();
    g.w = Some(w);
    // branch invariant: w^2 det(Z + iJ) = 1
    let check = (w * w * det_z_plus_ij(&g)? - cr(1.0)).norm();
    if check > 1e-8 {
        return Err(Error::BranchMismatch(format!("w^2 det(Z+iJ) - 1 = {check:.3e}")));
    }
    Ok(g)
}

/// Residual |w^2 det(Z + iJ) - 1| of the double-cover invariant.
pub fn branch_defect(g: &SemigroupElement) -> Result<f64> {
    let w = g.w.ok_or_else(|| Error::BranchMismatch("missing branch value".into()))?;
    Ok((w * w * det_z_plus_ij(g)? - cr(1.0)).norm())
}

/// Sheet of a covered element relative to the reference branch.
fn sheet_sign(gamma: &SemigroupElement) -> Result<f64> {
    let w = gamma.w.ok_or_else(|| Error::BranchMismatch("missing branch value".into()))?;
    let check = (w * w * det_z_plus_ij(gamma)? - cr(1.0)).norm();
    if check > 1e-6 {
        return Err(Error::BranchMismatch(format!(
            "carried w is not a branch of det(Z+iJ)^(-1/2) (defect {check:.3e})"
        )));
    }
    let eps = w / w_reference(gamma)?;
    if (eps - cr(1.0)).norm() < 1e-4 {
        Ok(1.0)
    } else if (eps + cr(1.0)).norm() < 1e-4 {
        Ok(-1.0)
    } else {
        Err(Error::BranchMismatch(format!("sheet value {eps} is not near +-1")))
    }
}

/// Product on the double cover: matrix part multiplies; the branch of the
/// product is the reference branch flipped by the product of the sheet
/// signs. Exactly associative and deck-equivariant.
pub fn metaplectic_mul(a: &SemigroupElement, b: &SemigroupElement) -> Result<SemigroupElement> {
    if a.kind != b.kind {
        return Err(Error::BadRequest(format!(
            "kind mismatch: {} vs {}",
            a.kind.describe(),
            b.kind.describe()
        )));
    }
    let ea = sheet_sign(a)?;
    let eb = sheet_sign(b)?;
    let prod = SemigroupElement::new(a.kind, &a.gamma * &b.gamma)?;
    let wr = w_reference(&prod).map_err(|e| {
        Error::BranchTrackingFailure(format!("branch of the product: {e}"))
    })?;
    let mut out = prod;
    out.w = Some(cr(ea * eb) * wr);
    Ok(out)
}

/// Continuous log det along the segment from a positive-definite Hermitian
/// anchor S to M; the principal value at S is real.
fn anchored_log_det(m: &DMatrix<C64>, s: &DMatrix<C64>) -> Result<C64> {
    let (svals, _) = linalg::herm_eigen(s)?;
    if svals.last().cloned().unwrap_or(0.0) <= 0.0 {
        return Err(Error::SingularDifference);
    }
    let base = svals.iter().map(|v| v.ln()).sum::<f64>();
    let path = |t: f64| s.map(|w| w * cr(1.0 - t)) + m.map(|w| w * cr(t));
    let tracked =
        linalg::tracked_log_det(&path, cr(base)).map_err(|_| Error::SingularDifference)?;
    Ok(linalg::snap_log(tracked, linalg::det_c(m)))
}

/// Szego kernel of the tube domain, K(Z, W) = det_J((Z - W^*)/2i)^{-lambda}
/// with the kind's Jordan determinant, branch continued from the diagonal.
pub fn szego_kernel_tube(z: &TubePoint, w: &TubePoint, lambda: f64) -> Result<C64> {
    if z.kind != w.kind {
        return Err(Error::BadRequest("kind mismatch".into()));
    }
    let m = (z.matrix() - w.matrix().adjoint()).map(|v| v / C64::new(0.0, 2.0));
    let kind = z.kind;
    match kind {
        GroupKind::SpR(_) | GroupKind::Upq(..) => {
            let id = DMatrix::<C64>::identity(m.nrows(), m.ncols());
            let log = anchored_log_det(&m, &id)?;
            Ok((-lambda * log).exp())
        }
        GroupKind::SOStar(_) => {
            // track log Pf(M(t) Js) from M(0) = I and subtract log Pf(Js)
            let js = kind.j_skew();
            let id = DMatrix::<C64>::identity(m.nrows(), m.ncols());
            let pf0 = linalg::pfaffian(&js)?;
            let f = |t: f64| {
                let mt = id.map(|v| v * cr(1.0 - t)) + m.map(|v| v * cr(t));
                linalg::pfaffian(&(mt * &js)).unwrap_or(cr(0.0))
            };
            let log_pf = linalg::track_log(&f, pf0.ln()).map_err(|_| Error::SingularDifference)?;
            let log_detj = log_pf - pf0.ln();
            Ok((-lambda * log_detj).exp())
        }
    }
}

/// Cauchy-Szego kernel of the semigroup Hardy space:
/// Det(J - gamma2^* J gamma1)^{-p} with p the kind's exponent; on the
/// half-integral kinds the carried branch values fix the sign.
pub fn szego_kernel_semigroup(g1: &SemigroupElement, g2: &SemigroupElement) -> Result<C64> {
    kernel_power(g1, g2, 1.0)
}

/// Bergman kernel: the square of the Szego kernel exponent.
pub fn bergman_kernel(g1: &SemigroupElement, g2: &SemigroupElement) -> Result<C64> {
    let p = g1.kind.kernel_exponent();
    kernel_det_power(g1, g2, 2.0 * p, false)
}

fn kernel_power(g1: &SemigroupElement, g2: &SemigroupElement, mult: f64) -> Result<C64> {
    let p = g1.kind.kernel_exponent() * mult;
    kernel_det_power(g1, g2, p, g1.kind.half_integral())
}

fn kernel_det_power(
    g1: &SemigroupElement,
    g2: &SemigroupElement,
    p: f64,
    use_sheets: bool,
) -> Result<C64> {
    if g1.kind != g2.kind {
        return Err(Error::BadRequest("kind mismatch".into()));
    }
    let j = g1.kind.j_matrix();
    for g in [g1, g2] {
        if semigroup_membership(g)?.grade != MembershipGrade::Strict {
            return Err(Error::NotStrict);
        }
    }
    let m = &j - g2.gamma.adjoint() * &j * &g1.gamma;
    let s1 = &j - g1.gamma.adjoint() * &j * &g1.gamma;
    let s2 = &j - g2.gamma.adjoint() * &j * &g2.gamma;
    let anchor = (s1 + s2).scale(0.5);
    let log = anchored_log_det(&m, &anchor)?;
    let base = (-p * log).exp();
    if use_sheets {
        let e1 = sheet_sign(g1)?;
        let e2 = sheet_sign(g2)?;
        Ok(cr(e1 * e2) * base)
    } else {
        Ok(base)
    }
}

/// The intertwining pullback (C_p F)(Z) = det(Z + iJ)^{-p} F(C(Z)), with
/// the determinant branch continued from the reference element.
pub fn intertwiner_pullback(
    f: &dyn Fn(&SemigroupElement) -> Result<C64>,
    p: f64,
    z: &TubePoint,
) -> Result<C64> {
    if z.on_singular_set() {
        return Err(Error::OnSingularSet);
    }
    let gamma = cayley_c(z)?;
    let log = log_det_z_plus_ij_tracked(z.kind, z.matrix())?;
    Ok((-p * log).exp() * f(&gamma)?)
}

/// A highest weight: the tuple 2 lambda (integers), a half-integrality
/// flag, and for U(p,q) the central charge k.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HighestWeight {
    pub two_lambda: Vec<i64>,
    pub half_integral: bool,
    pub charge: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeightFamily {
    /// Sp(r, R), integral weights: -r > lambda_1 >= ... >= lambda_r.
    SpEven,
    /// Sp(r, R), half-integral: -(r + 1/2) >= lambda_1 >= ... >= lambda_r.
    SpOdd,
    /// SO*(2l), integral: lambda_1 >= ... >= lambda_l, lambda_1 + lambda_2
    /// < -2l + 3.
    SoStarEven,
    /// SO*(2l), half-integral: 0 >= lambda_1 >= ... >= lambda_l and
    /// lambda_1 + lambda_2 <= -2l + 2.
    SoStarOdd,
    /// U(p,q) dissipative pairs (lambda, k). The bracket [lambda] is read
    /// as sum_i lambda_i.
    UpqDissipative,
}

impl WeightFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            WeightFamily::SpEven => "sp_even",
            WeightFamily::SpOdd => "sp_odd",
            WeightFamily::SoStarEven => "so_star_even",
            WeightFamily::SoStarOdd => "so_star_odd",
            WeightFamily::UpqDissipative => "upq_dissipative",
        }
    }
}

/// Descending chains hi >= x_1 >= ... >= x_len >= lo over integers with the
/// given step (1 or 2 in doubled coordinates), lexicographically.
fn descending_chains(hi: i64, lo: i64, len: usize, step: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut first = hi;
    while first >= lo {
        for rest in descending_chains(first, lo, len - 1, step) {
            let mut chain = Vec::with_capacity(len);
            chain.push(first);
            chain.extend(rest);
            out.push(chain);
        }
        first -= step;
    }
    out
}

/// Enumerate all highest weights of the family with every |lambda_i| (and
/// |k| implicitly) bounded by `bound`.
pub fn weight_enumerate(
    kind: GroupKind,
    family: WeightFamily,
    bound: i64,
) -> Result<Vec<HighestWeight>> {
    kind.validate()?;
    if bound < 0 {
        return Err(Error::BadBound(format!("negative bound {bound}")));
    }
    let b2 = 2 * bound;
    match (kind, family) {
        (GroupKind::SpR(r), WeightFamily::SpEven) => {
            // lambda_1 <= -r - 1, integers
            let hi = -2 * (r as i64) - 2;
            Ok(descending_chains(hi, -b2, r, 2)
                .into_iter()
                .map(|c| HighestWeight { two_lambda: c, half_integral: false, charge: None })
                .collect())
        }
        (GroupKind::SpR(r), WeightFamily::SpOdd) => {
            // lambda_1 <= -(r + 1/2), half-integers
            let hi = -2 * (r as i64) - 1;
            Ok(descending_chains(hi, -b2 + 1, r, 2)
                .into_iter()
                .map(|c| HighestWeight { two_lambda: c, half_integral: true, charge: None })
                .collect())
        }
        (GroupKind::SOStar(l), WeightFamily::SoStarEven) => {
            if l < 2 {
                return Err(Error::BadBound("SO* weight conditions need l >= 2".into()));
            }
            let chains = descending_chains(b2, -b2, l, 2);
            Ok(chains
                .into_iter()
                .filter(|c| c[0] + c[1] < 2 * (-2 * (l as i64) + 3))
                .map(|c| HighestWeight { two_lambda: c, half_integral: false, charge: None })
                .collect())
        }
        (GroupKind::SOStar(l), WeightFamily::SoStarOdd) => {
            if l < 2 {
                return Err(Error::BadBound("SO* weight conditions need l >= 2".into()));
            }
            let chains = descending_chains(-1, -b2 + 1, l, 2);
            Ok(chains
                .into_iter()
                .filter(|c| c[0] + c[1] <= 2 * (-2 * (l as i64) + 2))
                .map(|c| HighestWeight { two_lambda: c, half_integral: true, charge: None })
                .collect())
        }
        (GroupKind::Upq(p, q), WeightFamily::UpqDissipative) => {
            let n = (p + q) as i64;
            let mut out = Vec::new();
            // 0 >= lambda_1 >= ... >= lambda_p, lambda_{p+1} >= ... >=
            // lambda_n >= 0, lambda_n - lambda_1 > n - 1,
            // [lambda] - n lambda_n <= k <= [lambda] - n lambda_1.
            for neg in descending_chains(0, -b2, p, 2) {
                for pos in descending_chains(b2, 0, q, 2) {
                    let mut lam = neg.clone();
                    lam.extend(pos.iter().cloned());
                    let l1 = lam.first().cloned().unwrap_or(0);
                    let ln = lam.last().cloned().unwrap_or(0);
                    if ln - l1 <= 2 * (n - 1) {
                        continue;
                    }
                    let total: i64 = lam.iter().sum();
                    // k bounds in doubled coordinates are even: divide by 2
                    let klo2 = total - n * ln;
                    let khi2 = total - n * l1;
                    debug_assert!(klo2 % 2 == 0 && khi2 % 2 == 0);
                    let mut k = klo2 / 2;
                    while k <= khi2 / 2 {
                        out.push(HighestWeight {
                            two_lambda: lam.clone(),
                            half_integral: false,
                            charge: Some(k),
                        });
                        k += 1;
                    }
                }
            }
            Ok(out)
        }
        _ => Err(Error::BadRequest(format!(
            "weight family {} does not match group {}",
            family.as_str(),
            kind.describe()
        ))),
    }
}
