//! Discrete medial-axis skeletons and skeleton scale-spaces for binary shapes.
//!
//! The crate covers the full pipeline from binary raster input to scale-space
//! evaluation:
//!
//! - [`pixelgrid`]: binary image data model, PBM/PGM/PPM I/O, and grid
//!   symmetry transforms (translation, quarter-turn rotation, mirroring).
//! - [`distfield`]: exact squared Euclidean distance transform and the strict
//!   inscribed-disk predicate derived from it.
//! - [`medialaxis`]: homotopic maximal-disk thinning, skeleton point
//!   classification (endpoints / branching / simple), and arc decomposition.
//! - [`reconstruct`]: shape reconstruction as a union of inscribed disks,
//!   with an incrementally maintained per-pixel coverage map that powers
//!   exact reconstruction-impact queries.
//! - [`scalespace`]: sparsification and densification paths (ordered
//!   partitions of the skeleton or of the whole object) and the four path
//!   strategies: uniform random, branch pruning, greedy compression, and
//!   stiffness enhancement by recursive skeletonisation.
//! - [`metrics`]: reconstruction error, skeleton minimality and complexity,
//!   diameter, and topology measures, plus a per-level trace over a path.
//!
//! All geometry is computed exactly in integer arithmetic on squared
//! distances, so results are bit-identical across platforms. Every greedy
//! strategy breaks ties in row-major order, which makes paths fully
//! deterministic (and, for random paths, deterministic per seed).

pub mod distfield;
pub mod medialaxis;
pub mod metrics;
pub mod pixelgrid;
pub mod reconstruct;
pub mod scalespace;

pub use distfield::{compute_edt, disk_covers, SquaredDistanceField};
pub use medialaxis::{skeletonize, PointClass, Skeleton, SkeletonArc};
pub use pixelgrid::{BinaryImage, GridTransform, PixelPoint};
pub use reconstruct::{build_coverage, reconstruct, CoverageMap};
pub use scalespace::{Direction, RngState, ScaleSpacePath, ScaleState};

/// Largest accepted canvas side length.
///
/// Bounded so that every squared pixel distance, including distances to the
/// virtual background outside the canvas, fits into a `u32`.
pub const MAX_DIM: u32 = 32_767;

/// Failure while parsing one of the text/binary formats (PBM, SKEL2, PATH1).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at byte {offset}: {message}")]
pub struct ParseError {
    /// Byte offset into the input at which the problem was detected.
    pub offset: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(offset: usize, message: impl Into<String>) -> Self {
        ParseError {
            offset,
            message: message.into(),
        }
    }
}

/// Precondition violation on an operation of this crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("dimensions must be in 1..={max}, got {width}x{height}", max = MAX_DIM)]
    BadDimensions { width: u32, height: u32 },
    #[error("bit buffer of length {len} does not match {width}x{height}")]
    BadBufferLength { width: u32, height: u32, len: usize },
    #[error("point ({x}, {y}) is outside the {width}x{height} canvas")]
    OutOfBounds { x: u32, y: u32, width: u32, height: u32 },
    #[error("translation by ({dx}, {dy}) pushes object pixel ({x}, {y}) off the canvas")]
    TranslationOutOfBounds { dx: i32, dy: i32, x: u32, y: u32 },
    #[error("point ({x}, {y}) is not an object pixel")]
    NotObject { x: u32, y: u32 },
    #[error("point ({x}, {y}) is not in the point set")]
    NotInSet { x: u32, y: u32 },
    #[error("point ({x}, {y}) is already present")]
    AlreadyPresent { x: u32, y: u32 },
    #[error("dimensions {found_width}x{found_height} do not match expected {want_width}x{want_height}")]
    DimensionMismatch {
        found_width: u32,
        found_height: u32,
        want_width: u32,
        want_height: u32,
    },
    #[error("skeleton is empty")]
    EmptySkeleton,
    #[error("object is empty")]
    EmptyObject,
    #[error("level {level} is out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("path ground set does not match the supplied skeleton")]
    GroundMismatch,
    #[error("invalid parameter {name}={value}: {reason}")]
    BadParameter {
        name: &'static str,
        value: u64,
        reason: &'static str,
    },
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// Integer square root: the largest `r` with `r*r <= n`.
pub(crate) fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    // Float guess can be off by one in either direction.
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
