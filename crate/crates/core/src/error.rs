use thiserror::Error;

/// Errors shared by the geometric primitives and the curve generators.
#[derive(Debug, Error)]
pub enum GeomError {
    #[error("tau must be positive and finite, got {0}")]
    InvalidTau(f64),
    #[error("point is off the unit quadric: <p,p> = {0}")]
    OffManifold(f64),
    #[error("vector is not tangent at the base point: <v,p> = {0}")]
    NotTangent(f64),
    #[error("curve is not unit speed: g_tau(gamma',gamma') = {0}")]
    NotUnitSpeed(f64),
    #[error("geodesic point: k1 = {0:e} is below the cutoff, the normal is undefined")]
    GeodesicPoint(f64),
    #[error("cos^2(theta) = {0} is outside the admissible range [{1}, 1)")]
    InadmissibleAngle(f64, f64),
    #[error("conjugation matrix rejected: {0}")]
    BadConjugation(String),
    #[error("wrong case for this family: {0}")]
    WrongCase(String),
    #[error("sign violation: {0}")]
    SignViolation(String),
    #[error("tangent angle mismatch: component along E1 = {0}, expected {1}")]
    AngleMismatch(f64, f64),
}
