use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("puncture count {n} is too small, need at least 4")]
    DiskTooSmall { n: usize },

    #[error("b{i}_{j}: width and index must have opposite parity")]
    ParityViolation { i: i64, j: i64 },

    #[error("b{i}_{j}: width {j} outside 2..={max} for n={n}")]
    WidthOutOfRange { i: i64, j: i64, n: usize, max: usize },

    #[error("b{i}_{j}: index {i} outside 1..={max} for n={n}")]
    IndexOutOfRange { i: i64, j: i64, n: usize, max: usize },

    #[error("curves live on different disks (n={left} vs n={right})")]
    MismatchedDisk { left: usize, right: usize },

    #[error("invalid pants decomposition: {reason}")]
    InvalidDecomposition { reason: String },

    #[error("interpolation index k={k} outside 0..={max}")]
    InterpolantOutOfRange { k: usize, max: usize },

    #[error("decomposition index {i} outside 1..={max}")]
    DecompositionIndexOutOfRange { i: usize, max: usize },

    #[error("l={l} must be at least 1 and divide n={n}")]
    BadComponentCount { n: usize, l: usize },

    #[error("path step {step} is not an associative move: {reason}")]
    IllegalMove { step: usize, reason: String },

    #[error("no slope assigned to the loop replaced at step {step}")]
    MissingSlope { step: usize },

    #[error("slope 1/0 on {target} is not a filling")]
    ZeroSlope { target: String },

    #[error("loops {first} and {second} share fiber {fiber} but intersect")]
    FiberConflict { fiber: usize, first: String, second: String },

    #[error("loop {curve} does not fit in the braid frame (start {start}, width {width}, n={n})")]
    FrameOverflow { curve: String, start: usize, width: usize, n: usize },

    #[error("DT codes describe knots only; diagram has {components} components")]
    DtRequiresKnot { components: usize },

    #[error("crossing {crossing} is not visited once odd and once even")]
    DtParity { crossing: usize },

    #[error("expanded rendering limited to {limit} crossings, diagram has {crossings}")]
    ExpandTooLarge { crossings: usize, limit: usize },

    #[error("polyline for {curve} is not simple")]
    SelfIntersection { curve: String },

    #[error("polyline realization wraps {curve} incorrectly around puncture {puncture}")]
    BadWinding { curve: String, puncture: usize },

    #[error("degenerate segment configuration between {a} and {b} after {attempts} attempts")]
    Degenerate { a: String, b: String, attempts: usize },

    #[error("braid text: {0}")]
    BraidParse(String),
}
