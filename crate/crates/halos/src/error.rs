//! Error type shared by every module.

use thiserror::Error;

/// Everything that can go wrong in exact-arithmetic land.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two halo values from different halos were mixed in one operation.
    #[error("mixed halos: {0}")]
    MixedHalos(String),
    /// Two group elements from different groups were mixed.
    #[error("mixed groups: {0}")]
    MixedGroups(String),
    /// Two ring elements (or completed elements) from different rings were mixed.
    #[error("mixed rings: {0}")]
    MixedRings(String),
    /// A localization denominator was zero.
    #[error("zero denominator in localized comparison")]
    ZeroDenominator,
    /// The convex subgroup generated by the identity is not defined.
    #[error("identity element generates no convex subgroup")]
    IdentityElement,
    /// The place does not support the requested operation.
    #[error("unsupported place: {0}")]
    UnsupportedPlace(String),
    /// Element does not belong to the place's domain ring.
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    /// A value exists but cannot be represented in the chosen exact form.
    #[error("not representable: {0}")]
    NotRepresentable(String),
    /// The supplied disc chain prefix is too short to settle the query.
    #[error("insufficient filter depth: the disc chain prefix never avoids the zero set")]
    InsufficientFilterDepth,
    /// The supplied modulus factors over its prime field.
    #[error("reducible modulus: {0}")]
    ReducibleModulus(String),
    /// The point is not in the non-archimedean disc-filter regime.
    #[error("not non-archimedean: {0}")]
    NotNonArchimedean(String),
    /// The decision procedure ran out of budget or hypotheses.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// The equivalence table has no entry for this pair of places.
    #[error("unsupported pair of places: {0}")]
    UnsupportedPair(String),
    /// A polynomial denominator needs a caller-supplied factor list.
    #[error("factorization required: {0}")]
    FactorizationRequired(String),
    /// A numeric parameter is outside its documented range.
    #[error("range error: {0}")]
    RangeError(String),
    /// The rational is not integral at the completion target.
    #[error("not integral: {0}")]
    NotIntegral(String),
    /// The rational domain is not one of the recognized section shapes.
    #[error("unrecognized domain shape: {0}")]
    UnrecognizedDomainShape(String),
    /// A descriptor failed construction-time validation.
    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),
    /// JSON input did not match the documented schema.
    #[error("parse error: {0}")]
    ParseError(String),
}
