//! Proper biharmonic curves of SL(2,R) with the metric family g_tau,
//! realized as explicit curves in the pseudo-Euclidean space R^4_2.
//!
//! The crate exposes the indefinite linear algebra of R^4_2, the quadric
//! model of SL(2,R) with its Hopf fibration, the Levi-Civita connection and
//! curvature of g_tau in the orthonormal frame, a Frenet apparatus, the
//! biharmonicity criteria and closed-form generators for the three helix
//! families, plus the verification machinery behind the CLI.

pub mod biharmonic;
pub mod connection;
pub mod curve;
pub mod error;
pub mod families;
pub mod frenet;
pub mod jet;
pub mod linalg;
pub mod model;
pub mod verify;

pub use error::GeomError;
pub use linalg::{inner22, j1_apply, Matrix4, PseudoVec4};
pub use model::{FrameComponents, ModelParams};
