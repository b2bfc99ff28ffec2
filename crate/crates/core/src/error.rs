use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is even; only odd characteristic is supported")]
    EvenCharacteristic(u64),
    #[error("characteristic {0} is not prime")]
    CompositeCharacteristic(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} exceeds the machine bound 2^31")]
    FieldTooLarge { p: u64, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("value {0} does not encode an element of the field")]
    InvalidElement(String),
    #[error("shift parameters coincide (k = l)")]
    EqualShifts,
    #[error("shift parameters are opposite (j + l = 0)")]
    OppositeShifts,
    #[error("tau = -1 has no normalized frame")]
    TauMinusOne,
    #[error("tau lies outside the requested square class")]
    ClassMismatch,
    #[error("element is not in mu_(2q-2) or mu_(2q+2)")]
    NotInUnitGroups,
    #[error("{0} is not invertible in this field")]
    Characteristic(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
