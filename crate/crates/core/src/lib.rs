//! Skeletons of maximal trigonal curves, braid monodromy and the fundamental
//! groups of plane sextics with an E₇ point.

pub mod braid;
pub mod error;
pub mod map;
pub mod model;
pub mod monodromy;
pub mod perturb;
pub mod sextic;
pub mod singularity;
pub mod skeleton;
pub mod split;
pub mod word;

pub use error::{BraidError, GroupError, MapError, ParseError, PipelineError, SkeletonError};
pub use word::FreeWord;
pub mod fpgroup;
