use thiserror::Error;

use crate::universe::{Loc, Name, Oid};

/// Every failure a model operation can report.
///
/// Well-formedness violations found by the checkers are not errors; they are
/// returned as [`crate::datastore::Violation`] data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid name {0:?}")]
    InvalidName(String),
    #[error("malformed type: {0}")]
    MalformedType(String),
    #[error("duplicate field `{0}`")]
    DuplicateField(Name),
    #[error("no such field `{0}`")]
    NoSuchField(Name),
    #[error("dereference of nil")]
    NilDereference,
    #[error("unknown object identifier {0}")]
    UnknownOid(Oid),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("name list does not match the record's attribute set")]
    FieldSetMismatch,
    #[error("not a {expected}: {found}")]
    WrongValueKind { expected: &'static str, found: String },

    #[error("class `{0}` is already declared")]
    DuplicateClass(Name),
    #[error("unknown superclass `{0}`")]
    UnknownSuper(Name),
    #[error("class `{0}` would inherit from itself")]
    InheritanceCycle(Name),
    #[error("class `{class}`: attribute `{attr}` is inherited from both `{first}` and `{second}`")]
    NameConflict {
        class: Name,
        attr: Name,
        first: Name,
        second: Name,
    },
    #[error("class `{class}`: attribute `{attr}` {reason} (strict inheritance)")]
    StrictRedefinition {
        class: Name,
        attr: Name,
        reason: &'static str,
    },
    #[error("`{0}` is a reserved attribute name")]
    ReservedName(Name),
    #[error("class `{class}`: constant attribute `{attr}` may not hold a location")]
    PlainLocation { class: Name, attr: Name },
    #[error("unknown class `{0}`")]
    UnknownClass(Name),
    #[error("class `{class}`: no initial value for attribute `{attr}`")]
    MissingInit { class: Name, attr: Name },
    #[error("class `{class}` has no attribute `{attr}`")]
    NoSuchAttr { class: Name, attr: Name },
    #[error("value {value} is not in the carrier of {ty}")]
    CarrierViolation { value: String, ty: String },
    #[error("static attribute `{0}` is already declared")]
    DuplicateStatic(Name),

    #[error("location {0} is not mapped in the store")]
    UnmappedLocation(Loc),
    #[error("attribute `{attr}` of `{class}` is constant")]
    ImmutableAttr { class: Name, attr: Name },
    #[error("object {0} already exists in the store")]
    DuplicateObject(Oid),
    #[error("location assignment for {0} does not cover exactly its location fields")]
    WrongLocationSet(Oid),

    #[error("association `{0}` is already declared")]
    DuplicateAssoc(Name),
    #[error("unknown association `{0}`")]
    UnknownAssoc(Name),
    #[error("association `{assoc}`: {reason}")]
    StrategyShapeMismatch { assoc: Name, reason: String },
    #[error("association `{assoc}` is not realized as {expected}")]
    StrategyMismatch { assoc: Name, expected: &'static str },
    #[error("association `{assoc}` is inconsistent: {detail}")]
    AssocInconsistent { assoc: Name, detail: String },
    #[error("association `{assoc}`: qualifier {qualifier} of {source_oid} identifies both {first} and {second}")]
    QualifierNotUnique {
        assoc: Name,
        source_oid: Oid,
        qualifier: String,
        first: Oid,
        second: Oid,
    },
    #[error("association `{assoc}`: {detail}")]
    MultiplicityViolation { assoc: Name, detail: String },
}

pub type Result<T, E = ModelError> = std::result::Result<T, E>;
