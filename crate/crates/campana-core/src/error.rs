//! Crate-wide error type.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::campana::ContactOrderSet;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A matrix operation was asked for on a 0-row or 0-column matrix.
    EmptyMatrix,
    /// `p` failed the primality check.
    NotPrime(u64),
    /// The all-nonzero span search ran out of its sampling budget without a
    /// definitive answer.
    SpanSearchUndecided { trials: u64 },
    /// No strictly positive integer relation among the matrix columns was
    /// found; the matrix is not the ray matrix of a complete fan.
    NoPositiveRelation,
    /// A mod-p kernel element has no lift to the integer kernel (p divides
    /// an elementary divisor in an obstructing position).
    LiftObstructed,

    /// Ray is zero or its coordinates have a common factor.
    NonPrimitiveRay { ray: usize },
    /// Ray coordinate count disagrees with the fan dimension.
    RayDimensionMismatch { ray: usize },
    /// A maximal cone does not have exactly `dim` distinct rays or its rays
    /// are linearly dependent.
    NonSimplicialCone { cone: usize },
    /// A ray index inside a cone is out of range.
    ConeRayIndex { cone: usize, ray: usize },
    /// Two rays are equal.
    DuplicateRay { first: usize, second: usize },
    /// A ray appears in no maximal cone.
    UnusedRay { ray: usize },
    /// A facet is not shared by exactly two maximal cones.
    IncompleteFan { cone: usize },
    /// Two maximal cones overlap without meeting in a common face.
    OverlappingCones { first: usize, second: usize },
    /// The fan's maximal cones do not cover the space.
    NotComplete,
    /// Fans of different ambient dimension were combined.
    DimensionMismatch { left: usize, right: usize },
    /// Star subdivision at a vector that already generates a ray.
    ExistingRay { ray: usize },
    /// Star subdivision at a vector outside the fan support.
    OutsideSupport,
    /// A blow-down was requested along fans that are not a refinement pair.
    NotARefinement,

    /// Fewer than two weights.
    TooFewWeights,
    /// A weight is zero.
    ZeroWeight,
    /// Some n-element subset of the weights has a common factor.
    NotWellFormed { gcd: u64 },
    /// Weighted projective fan recovery found no strictly positive relation.
    NoPositiveWeights,
    /// Repair requested although the characteristic divides no weight.
    RepairUnnecessary,

    /// Multiplicity list length differs from the ray count.
    MultiplicityCount { expected: usize, got: usize },
    /// A finite multiplicity of zero.
    ZeroMultiplicity { ray: usize },
    /// A contact-order coefficient below one.
    NonPositiveCoefficient { marking: usize },
    /// A marking refers to a ray that does not exist.
    MarkingRayIndex { marking: usize, ray: usize },

    /// Enumeration budget exhausted; carries the witnesses found so far.
    BudgetExhausted {
        examined: u64,
        found: Vec<ContactOrderSet>,
    },

    /// Free-form invariant violation with context.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyMatrix => write!(f, "matrix has no rows or no columns"),
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::SpanSearchUndecided { trials } => {
                write!(f, "span search undecided after {trials} sampled trials")
            }
            Error::NoPositiveRelation => {
                write!(f, "fan not complete / positive relation absent")
            }
            Error::LiftObstructed => {
                write!(
                    f,
                    "mod-p kernel element does not lift to the integer kernel"
                )
            }
            Error::NonPrimitiveRay { ray } => write!(f, "ray {ray} is not primitive"),
            Error::RayDimensionMismatch { ray } => {
                write!(f, "ray {ray} has the wrong number of coordinates")
            }
            Error::NonSimplicialCone { cone } => {
                write!(f, "maximal cone {cone} is not simplicial of full dimension")
            }
            Error::ConeRayIndex { cone, ray } => {
                write!(f, "cone {cone} refers to missing ray {ray}")
            }
            Error::DuplicateRay { first, second } => {
                write!(f, "rays {first} and {second} coincide")
            }
            Error::UnusedRay { ray } => write!(f, "ray {ray} lies in no maximal cone"),
            Error::IncompleteFan { cone } => {
                write!(
                    f,
                    "a facet of cone {cone} is not shared by exactly two cones"
                )
            }
            Error::OverlappingCones { first, second } => {
                write!(f, "cones {first} and {second} overlap improperly")
            }
            Error::NotComplete => write!(f, "fan support does not cover the space"),
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::ExistingRay { ray } => {
                write!(f, "subdivision vector already generates ray {ray}")
            }
            Error::OutsideSupport => write!(f, "subdivision vector outside the fan support"),
            Error::NotARefinement => write!(f, "fine fan does not refine the coarse fan"),
            Error::TooFewWeights => write!(f, "need at least two weights"),
            Error::ZeroWeight => write!(f, "weights must be positive"),
            Error::NotWellFormed { gcd } => {
                write!(f, "weights are not well-formed (subset gcd {gcd})")
            }
            Error::NoPositiveWeights => {
                write!(f, "rays admit no strictly positive relation")
            }
            Error::RepairUnnecessary => {
                write!(
                    f,
                    "characteristic divides no weight; run the verdict instead"
                )
            }
            Error::MultiplicityCount { expected, got } => {
                write!(f, "expected {expected} multiplicities, got {got}")
            }
            Error::ZeroMultiplicity { ray } => {
                write!(f, "multiplicity on ray {ray} must be at least 1 or inf")
            }
            Error::NonPositiveCoefficient { marking } => {
                write!(f, "marking {marking} must have coefficient >= 1")
            }
            Error::MarkingRayIndex { marking, ray } => {
                write!(f, "marking {marking} refers to missing ray {ray}")
            }
            Error::BudgetExhausted { examined, .. } => {
                write!(f, "search budget exhausted after {examined} candidates")
            }
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}
