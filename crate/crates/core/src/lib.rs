//! Numerical library for simple Euclidean Jordan algebras and their
//! symmetric cones: spectral and Peirce calculus, the Riemannian and Hilbert
//! metric geometry of the cone with its compression semigroup, the Shilov
//! boundary with its transversality, Maslov, Souriau and Arnold-Leray
//! indices and the generalized Poincare rotation number, and the
//! J-contraction semigroups of Sp(r,R), SO*(2l) and U(p,q) with their
//! Cauchy-Szego kernels.
//!
//! All computations are in f64. Operations are pure functions of immutable
//! inputs and safe to call from multiple threads.

pub mod algebra;
pub mod boundary;
pub mod cone;
pub mod covering;
pub mod error;
pub mod indices;
pub mod json;
pub mod kkt;
pub mod linalg;
pub mod sample;
pub mod selftest;
pub mod semigroup;
pub mod tol;

pub use algebra::{AlgebraDescriptor, Element, Kind};
pub use error::{Error, ErrorCategory, Result};

#[cfg(test)]
mod concurrency_assertions {
    // values are freely shareable across threads
    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_types_are_send_sync() {
        assert_send_sync::<crate::algebra::Element>();
        assert_send_sync::<crate::algebra::LinOp>();
        assert_send_sync::<crate::boundary::BoundaryPoint>();
        assert_send_sync::<crate::boundary::StructureMap>();
        assert_send_sync::<crate::cone::ConePoint>();
        assert_send_sync::<crate::cone::CompressionElement>();
        assert_send_sync::<crate::covering::CoveringPoint>();
        assert_send_sync::<crate::covering::Lift>();
        assert_send_sync::<crate::kkt::LieField>();
        assert_send_sync::<crate::semigroup::SemigroupElement>();
        assert_send_sync::<crate::semigroup::TubePoint>();
    }
}
