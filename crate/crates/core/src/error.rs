use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator list is empty")]
    EmptyInput,

    #[error("generators must be positive, got {0}")]
    NonPositiveGenerator(i64),

    #[error("gcd of the generators is {0}, not 1; they do not generate a numerical semigroup")]
    GcdNotOne(u64),

    #[error("{gap} is not a valid gap set: {reason}")]
    InvalidGapSet { gap: String, reason: String },

    #[error("multiplicity must be at least {min}, got {got}")]
    InvalidMultiplicity { min: u32, got: u32 },

    #[error("{0} is not a minimal generator of the semigroup")]
    NotMinimalGenerator(i64),

    #[error("the semigroup is the whole of N and has no Frobenius number")]
    NoFrobenius,

    #[error("element {element} lies outside [{low}, {high}]")]
    ElementOutOfRange { element: u32, low: u32, high: u32 },

    #[error("semigroup has concentration {0}, expected at most 2")]
    ConcentrationTooHigh(u32),

    #[error("semigroup has concentration {0}, expected exactly 2")]
    ConcentrationNotTwo(u32),

    #[error("semigroup is not elementary (Frobenius number {frobenius} >= 2 * multiplicity {multiplicity})")]
    NotElementary { frobenius: i64, multiplicity: u32 },

    #[error("genus {genus} is below multiplicity - 1 = {min} for multiplicity {multiplicity}")]
    InvalidGenusRange {
        multiplicity: u32,
        genus: u32,
        min: u32,
    },

    #[error(
        "the tree for even multiplicity {0} is infinite (there are concentration-2 semigroups of every genus >= m); \
         pass a genus bound"
    )]
    UnboundedEnumeration(u32),

    #[error(
        "the set of concentration-2 semigroups with even multiplicity {0} is infinite; \
         counts and heights exist only for odd multiplicity"
    )]
    EvenMultiplicityInfinite(u32),

    #[error("semigroup is irreducible, alpha is undefined")]
    Irreducible,

    #[error("semigroup is not irreducible")]
    NotIrreducible,

    #[error("oracle genus bound {got} exceeds the ceiling {ceiling}")]
    BoundTooLarge { got: u32, ceiling: u32 },

    #[error("class child check failed for {parent} minus {removed}: {reason}")]
    ClassChildMismatch {
        parent: String,
        removed: u32,
        reason: String,
    },

    #[error("{0}")]
    Parse(String),
}
